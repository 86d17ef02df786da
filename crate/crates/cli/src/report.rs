//! Report objects and their JSON / CSV renderings.

use std::fmt::Write as _;

/// One output value.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Null,
}

impl Cell {
    /// Decimal text; floats carry 17 significant digits so they round-trip.
    fn plain(&self) -> String {
        match self {
            Cell::Num(x) if x.is_finite() => format!("{x:.16e}"),
            Cell::Num(_) | Cell::Null => String::new(),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Num(x) if !x.is_finite() => "null".into(),
            Cell::Null => "null".into(),
            Cell::Text(s) => serde_json::to_string(s).expect("string serialization"),
            other => other.plain(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Null, Into::into)
    }
}

impl From<&[f64]> for Cell {
    fn from(xs: &[f64]) -> Self {
        Cell::Text(xs.iter().map(|x| Cell::Num(*x).plain()).collect::<Vec<_>>().join(" "))
    }
}

/// Rows sharing one set of columns.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, Default)]
pub struct Meta {
    pub trunc: Option<usize>,
    pub residual: Option<f64>,
    pub runtime_ms: Option<f64>,
    /// Where the reported numbers come from: a closed-form expression or the numerical method.
    pub source: String,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub params: Vec<(&'static str, Cell)>,
    pub values: Table,
    pub meta: Meta,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self { command: command.into(), params: Vec::new(), values: Table::default(), meta: Meta::default() }
    }

    pub fn param(&mut self, name: &'static str, value: impl Into<Cell>) -> &mut Self {
        self.params.push((name, value.into()));
        self
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let key = |k: &str| serde_json::to_string(k).expect("string serialization");
        write!(out, "{{\"command\":{},\"params\":{{", key(&self.command)).unwrap();
        for (i, (k, v)) in self.params.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{}:{}", key(k), v.json()).unwrap();
        }
        out.push_str("},\"values\":[");
        for (i, row) in self.values.rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push('{');
            for (j, (c, v)) in self.values.columns.iter().zip(row).enumerate() {
                if j > 0 {
                    out.push(',');
                }
                write!(out, "{}:{}", key(c), v.json()).unwrap();
            }
            out.push('}');
        }
        let m = &self.meta;
        write!(
            out,
            "],\"meta\":{{\"trunc\":{},\"residual\":{},\"runtime_ms\":{},\"source\":{}}}}}",
            Cell::from(m.trunc).json(),
            Cell::from(m.residual).json(),
            Cell::from(m.runtime_ms).json(),
            key(&m.source)
        )
        .unwrap();
        out.push('\n');
        out
    }

    /// The value table with a header row.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.values.columns)?;
        for row in &self.values.rows {
            w.write_record(row.iter().map(Cell::plain))?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo");
        r.param("alpha", 0.0).param("name", "a \"b\"");
        r.values = Table::new(&["x", "y"]);
        r.values.push(vec![67.5.into(), Cell::Null]);
        r.values.push(vec![0.1.into(), f64::NAN.into()]);
        r.meta.trunc = Some(3);
        r
    }

    #[test]
    fn json_shape() {
        let j = sample().to_json();
        assert_eq!(
            j,
            "{\"command\":\"demo\",\"params\":{\"alpha\":0.0000000000000000e0,\"name\":\"a \\\"b\\\"\"},\
             \"values\":[{\"x\":6.7500000000000000e1,\"y\":null},{\"x\":1.0000000000000001e-1,\"y\":null}],\
             \"meta\":{\"trunc\":3,\"residual\":null,\"runtime_ms\":null,\"source\":\"\"}}\n"
        );
        let parsed: serde_json::Value = serde_json::from_str(&j).unwrap();
        assert_eq!(parsed["values"][0]["x"], 67.5);
    }

    #[test]
    fn csv_has_header() {
        let c = sample().to_csv().unwrap();
        assert_eq!(c, "x,y\n6.7500000000000000e1,\n1.0000000000000001e-1,\n");
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1.875, 6.02e23, -1e-300] {
            let s = Cell::Num(x).plain();
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }
}
