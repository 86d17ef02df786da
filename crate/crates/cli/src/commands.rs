//! Subcommand arguments and their evaluation into reports.

use std::f64::consts::PI;
use std::fmt;

use bergman_core::bergman::{
    bergman_norm_sq, dirichlet_norm_sq, disk_quadrature_norm_sq, growth_norm, growth_norm_rational, test_function_asymptotic_constant,
    test_function_norm_sq, NormEstimate,
};
use bergman_core::halfplane::{
    density_norm_sq, halfplane_norm_sq_scaled, hardy_check, hardy_constant, laplace_of_density, DensityFn, LineFunction,
};
use bergman_core::multiplier::{
    claim_boundedness_probe, closed_form_norm_sq, default_lambda_grid, g0_norm_sq, koebe_norm_sq, multiplier_lower_bound,
    test_family_rayleigh, volterra_i_norm_sq, volterra_j_norm_sq, ClaimKind, MultiplierSpec, ProbeGrid, Symbol, TestFamily,
    DEFAULT_R_GRID,
};
use bergman_core::schwarzian::{critical_points_on_circle, laurent_leading, pre_schwarzian, schwarzian_rational, schwarzian_series, CIRCLE_TOL};
use bergman_core::series::{parse_complex, parse_function, rational_derivative, FactoredRational, ParsedFunction};
use bergman_core::spectrum::spectrum_slope;
use bergman_core::{gamma, Error, Polynomial, PowerSeries, RationalMap};
use clap::{Args, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Cell, Report, Table};
use crate::{Command, Global};

const DEFAULT_TRUNC: usize = 2048;
/// Matrix compressions are dense; their default column count is smaller.
const DEFAULT_COLS: usize = 256;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Numeric { .. }) => 3,
            CliError::Core(_) | CliError::Usage(_) => 2,
            CliError::Output(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "invalid parameters: {m}"),
            CliError::Output(m) => write!(f, "could not write output: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}

pub fn run(command: &Command, global: &Global) -> Result<Report> {
    match command {
        Command::Norm(a) => norm(a, global),
        Command::MultNorm(a) => mult_norm(a, global),
        Command::KoebeTable(a) => koebe_table(a),
        Command::G0Table(a) => g0_table(a),
        Command::TestFamily(a) => test_family(a),
        Command::Asymptotics(a) => asymptotics(a),
        Command::Schwarzian(a) => schwarzian(a, global),
        Command::CriticalPoints(a) => critical_points(a, global),
        Command::Laurent(a) => laurent(a),
        Command::Hardy(a) => hardy(a, global),
        Command::LaplaceCheck(a) => laplace_check(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Volterra(a) => volterra(a, global),
        Command::ClaimProbe(a) => claim_probe(a),
    }
}

// ---------------------------------------------------------------- parsing

/// Named maps accepted wherever a function is expected, besides literals.
fn parse_map(text: &str) -> Result<ParsedFunction> {
    let one = Complex64::new(1.0, 0.0);
    Ok(match text.trim() {
        "koebe" => ParsedFunction::Rational(RationalMap::new(Polynomial::z(), Polynomial::from_roots(one, &[one, one]))?),
        "identity" | "z" => ParsedFunction::Poly(Polynomial::z()),
        t => parse_function(t)?,
    })
}

/// A symbol preset (`one`, `koebe-schwarzian`, `g0`..`g3`) or a literal.
fn parse_symbol(text: &str, alpha: f64, beta: f64) -> Result<Symbol> {
    let t = text.trim();
    if ["poly", "rat", "series"].iter().any(|p| t.starts_with(p)) {
        return Ok(match parse_function(t)? {
            ParsedFunction::Poly(p) => Symbol::Rational(RationalMap::from_poly(p)),
            ParsedFunction::Rational(r) => Symbol::Rational(r),
            ParsedFunction::Series(s) => Symbol::Series(s),
        });
    }
    Ok(Symbol::preset(t, alpha, beta)?)
}

fn series_of(f: &ParsedFunction, trunc: usize) -> Result<PowerSeries> {
    Ok(match f {
        ParsedFunction::Poly(p) => {
            let mut c = p.coeffs().to_vec();
            if c.is_empty() {
                c.push(Complex64::new(0.0, 0.0));
            }
            PowerSeries::new(c)
        }
        ParsedFunction::Rational(r) => r.expand(trunc)?,
        ParsedFunction::Series(s) => s.clone(),
    })
}

fn rational_of(f: &ParsedFunction, what: &str) -> Result<RationalMap> {
    match f {
        ParsedFunction::Poly(p) => Ok(RationalMap::from_poly(p.clone())),
        ParsedFunction::Rational(r) => Ok(r.clone()),
        ParsedFunction::Series(_) => usage(format!("{what} needs a rational map or polynomial, not a series")),
    }
}

type Evaluator = Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

fn evaluator_of(f: &ParsedFunction) -> Result<Evaluator> {
    Ok(match f {
        ParsedFunction::Poly(p) => {
            let p = p.clone();
            Box::new(move |z| p.eval(z))
        }
        ParsedFunction::Rational(r) => {
            let fr = FactoredRational::new(r)?;
            Box::new(move |z| fr.eval(z))
        }
        ParsedFunction::Series(s) => {
            let s = s.clone();
            Box::new(move |z| s.eval(z))
        }
    })
}

fn derivative_of(f: &ParsedFunction) -> Result<ParsedFunction> {
    Ok(match f {
        ParsedFunction::Poly(p) => ParsedFunction::Poly(p.derivative()),
        ParsedFunction::Rational(r) => ParsedFunction::Rational(rational_derivative(r)?),
        ParsedFunction::Series(s) => ParsedFunction::Series(s.derivative()),
    })
}

fn list_text(xs: &[f64]) -> Cell {
    Cell::from(xs)
}

fn complex_text(z: Complex64) -> String {
    format!("{:.16e}{:+.16e}i", z.re, z.im)
}

fn poly_text(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.coeffs().iter().map(|c| complex_text(*c)).collect::<Vec<_>>().join(" ")
}

fn worst(ests: &[NormEstimate]) -> Option<f64> {
    ests.iter().map(|e| e.residual).fold(None, |m, r| Some(m.map_or(r, |x: f64| x.max(r))))
}

// ---------------------------------------------------------------- norm

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormMethod {
    Series,
    Dirichlet,
    Quadrature,
    Growth,
}

#[derive(Debug, Args)]
pub struct NormArgs {
    /// Function literal (`poly: ...`, `rat: ... / ...`, `series: ...`), `koebe`, `identity`,
    /// or a symbol preset (presets need --beta).
    #[arg(long)]
    function: String,
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Second weight for symbol presets.
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, value_enum, default_value_t = NormMethod::Series)]
    method: NormMethod,
    /// Growth exponent for --method growth.
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,
}

fn norm(a: &NormArgs, g: &Global) -> Result<Report> {
    let trunc = g.trunc.unwrap_or(DEFAULT_TRUNC);
    let mut rep = Report::new("norm");
    rep.param("function", a.function.as_str()).param("alpha", a.alpha).param("method", format!("{:?}", a.method).to_lowercase());
    let parsed = match (parse_map(&a.function), a.beta) {
        (Ok(f), _) => f,
        (Err(_), Some(beta)) => {
            rep.param("beta", beta);
            ParsedFunction::Series(parse_symbol(&a.function, a.alpha, beta)?.expand(trunc)?)
        }
        (Err(e), None) => return Err(e),
    };
    if a.method == NormMethod::Growth {
        rep.param("gamma", a.gamma);
        let v = match &parsed {
            ParsedFunction::Rational(r) => growth_norm_rational(r, a.gamma)?,
            other => growth_norm(evaluator_of(other)?, a.gamma)?,
        };
        rep.values = Table::new(&["gamma", "growth_norm"]);
        rep.values.push(vec![a.gamma.into(), v.into()]);
        rep.meta.source = "grid supremum of |g|(1-|z|^2)^gamma over r = 1-2^-k (k <= 30), 4096 angles".into();
        return Ok(rep);
    }
    let est = match a.method {
        NormMethod::Series => bergman_norm_sq(&series_of(&parsed, trunc)?, a.alpha)?,
        NormMethod::Dirichlet => dirichlet_norm_sq(&series_of(&parsed, trunc)?, a.alpha)?,
        NormMethod::Quadrature => disk_quadrature_norm_sq(evaluator_of(&parsed)?, a.alpha)?,
        NormMethod::Growth => unreachable!(),
    };
    rep.values = Table::new(&["alpha", "value_sq", "value", "kind"]);
    rep.values.push(vec![a.alpha.into(), est.value_sq.into(), est.value().into(), est.kind.as_str().into()]);
    rep.meta.trunc = Some(est.trunc);
    rep.meta.residual = Some(est.residual);
    rep.meta.source = match a.method {
        NormMethod::Series => "weighted coefficient sum, w_n = n! Gamma(alpha+2)/Gamma(n+alpha+2)",
        NormMethod::Dirichlet => "|a_0|^2 + weighted coefficient sum of the derivative",
        _ => "polar Gauss-Legendre x trapezoid area quadrature",
    }
    .into();
    Ok(rep)
}

// ---------------------------------------------------------------- multipliers

#[derive(Debug, Args)]
pub struct ProbeArgs {
    /// λ grid for the test-family probes (default α/2 + 1 + 10^{-k}, k = 1..4).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda_grid: Option<Vec<f64>>,
    /// r grid for the probes.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = DEFAULT_R_GRID.to_vec())]
    r_grid: Vec<f64>,
    /// Probe angles θ.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![0.0, 0.5 * PI, PI])]
    theta: Vec<f64>,
    /// Skip the test-family probes and report the compression only.
    #[arg(long)]
    no_probes: bool,
}

impl ProbeArgs {
    fn grid(&self, alpha: f64, n_cols: usize) -> ProbeGrid {
        let (lambdas, rs, thetas) = if self.no_probes {
            (Vec::new(), Vec::new(), Vec::new())
        } else {
            (self.lambda_grid.clone().unwrap_or_else(|| default_lambda_grid(alpha)), self.r_grid.clone(), self.theta.clone())
        };
        ProbeGrid { n_cols, lambdas, rs, thetas }
    }

    fn echo(&self, rep: &mut Report, grid: &ProbeGrid) {
        rep.param("lambda_grid", list_text(&grid.lambdas))
            .param("r_grid", list_text(&grid.rs))
            .param("theta", list_text(&grid.thetas));
    }
}

#[derive(Debug, Args)]
pub struct MultNormArgs {
    /// Preset (`one`, `koebe-schwarzian`, `g0`, `g1`, `g2`, `g3`) or literal.
    #[arg(long)]
    symbol: String,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    #[command(flatten)]
    probes: ProbeArgs,
}

const LOWER_BOUND_SOURCE: &str = "max of the operator-matrix compression (power iteration) and test-family Rayleigh quotients";

fn push_lower_bound(rep: &mut Report, alpha: f64, beta: f64, closed: Option<f64>, lb: &bergman_core::multiplier::LowerBound) {
    rep.values = Table::new(&[
        "alpha",
        "beta",
        "closed_form_sq",
        "lower_bound_sq",
        "compression_sq",
        "best_probe_lambda",
        "best_probe_r",
        "best_probe_theta",
        "ratio",
    ]);
    let p = lb.best_probe;
    rep.values.push(vec![
        alpha.into(),
        beta.into(),
        closed.into(),
        lb.estimate.value_sq.into(),
        lb.compression.value_sq.into(),
        p.map(|p| p.lambda).into(),
        p.map(|p| p.r).into(),
        p.map(|p| p.theta).into(),
        closed.map(|c| lb.estimate.value_sq / c).into(),
    ]);
    rep.meta.trunc = Some(lb.estimate.trunc);
    rep.meta.residual = Some(lb.estimate.residual);
}

fn mult_norm(a: &MultNormArgs, g: &Global) -> Result<Report> {
    let n_cols = g.trunc.unwrap_or(DEFAULT_COLS);
    let spec = MultiplierSpec::new(a.alpha, a.beta, parse_symbol(&a.symbol, a.alpha, a.beta)?)?;
    let grid = a.probes.grid(a.alpha, n_cols);
    let mut rep = Report::new("mult-norm");
    rep.param("symbol", a.symbol.as_str()).param("alpha", a.alpha).param("beta", a.beta).param("trunc", n_cols);
    a.probes.echo(&mut rep, &grid);
    let closed = closed_form_norm_sq(&spec);
    let lb = multiplier_lower_bound(&spec, n_cols, &grid.lambdas, &grid.rs, &grid.thetas)?;
    push_lower_bound(&mut rep, a.alpha, a.beta, closed, &lb);
    rep.meta.source = match closed {
        Some(_) => format!("closed form for the recognized symbol family; numeric value is a {LOWER_BOUND_SOURCE}"),
        None => LOWER_BOUND_SOURCE.into(),
    };
    Ok(rep)
}

#[derive(Debug, Args)]
pub struct KoebeTableArgs {
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![0.0, 1.0, 2.0])]
    alpha: Vec<f64>,
}

fn koebe_table(a: &KoebeTableArgs) -> Result<Report> {
    let mut rep = Report::new("koebe-table");
    rep.param("alpha", list_text(&a.alpha));
    rep.values = Table::new(&["alpha", "norm_sq"]);
    for &alpha in &a.alpha {
        rep.values.push(vec![alpha.into(), koebe_norm_sq(alpha)?.into()]);
    }
    rep.meta.source = "closed form 36(alpha+3)(alpha+5)/((alpha+2)(alpha+4)) for S(koebe) = -6/(1-z^2)^2, A2_alpha -> A2_alpha+4".into();
    Ok(rep)
}

#[derive(Debug, Args)]
pub struct G0TableArgs {
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![0.0])]
    alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![4.0])]
    beta: Vec<f64>,
}

fn g0_table(a: &G0TableArgs) -> Result<Report> {
    let mut rep = Report::new("g0-table");
    rep.param("alpha", list_text(&a.alpha)).param("beta", list_text(&a.beta));
    rep.values = Table::new(&["alpha", "beta", "gamma", "norm_sq"]);
    for &alpha in &a.alpha {
        for &beta in &a.beta {
            rep.values.push(vec![alpha.into(), beta.into(), (0.5 * (beta - alpha)).into(), g0_norm_sq(alpha, beta)?.into()]);
        }
    }
    rep.meta.source =
        "closed form 2^-(beta-alpha) Gamma(beta+2)/Gamma(alpha+2) [Gamma(1+alpha/2)/Gamma(1+beta/2)]^2 for g0 = (1-z^2)^-((beta-alpha)/2)".into();
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    /// (1 - r z)^{-λ}
    OneMinusRz,
    /// (1 - r z²)^{-λ}
    OneMinusRzSq,
}

impl FamilyArg {
    fn family(self) -> TestFamily {
        match self {
            FamilyArg::OneMinusRz => TestFamily::OneMinusRz,
            FamilyArg::OneMinusRzSq => TestFamily::OneMinusRzSq,
        }
    }
}

#[derive(Debug, Args)]
pub struct TestFamilyArgs {
    #[arg(long)]
    symbol: String,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda_grid: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![0.9, 0.99, 0.999, 0.9999])]
    r_grid: Vec<f64>,
    #[arg(long, value_enum, default_value_t = FamilyArg::OneMinusRz)]
    family: FamilyArg,
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
}

fn test_family(a: &TestFamilyArgs) -> Result<Report> {
    let spec = MultiplierSpec::new(a.alpha, a.beta, parse_symbol(&a.symbol, a.alpha, a.beta)?)?;
    let lambdas = a.lambda_grid.clone().unwrap_or_else(|| default_lambda_grid(a.alpha));
    let family = a.family.family();
    let mut rep = Report::new("test-family");
    rep.param("symbol", a.symbol.as_str())
        .param("alpha", a.alpha)
        .param("beta", a.beta)
        .param("lambda_grid", list_text(&lambdas))
        .param("r_grid", list_text(&a.r_grid))
        .param("family", family.as_str())
        .param("theta", a.theta);
    let closed = closed_form_norm_sq(&spec);
    rep.values = Table::new(&["lambda", "r", "rayleigh_sq", "closed_form_sq", "ratio", "trunc", "residual"]);
    let (mut max_trunc, mut max_res) = (0, 0.0f64);
    for &lambda in &lambdas {
        for &r in &a.r_grid {
            let p = test_family_rayleigh(&spec, lambda, r, family, a.theta)?;
            max_trunc = max_trunc.max(p.trunc);
            max_res = max_res.max(p.residual);
            rep.values.push(vec![
                lambda.into(),
                r.into(),
                p.rayleigh_sq.into(),
                closed.into(),
                closed.map(|c| p.rayleigh_sq / c).into(),
                p.trunc.into(),
                p.residual.into(),
            ]);
        }
    }
    rep.meta.trunc = Some(max_trunc);
    rep.meta.residual = Some(max_res);
    rep.meta.source = "||g f||^2_beta / ||f||^2_alpha by coefficient sums for f = (1 - r (e^{-i theta} z)^k)^{-lambda}".into();
    Ok(rep)
}

#[derive(Debug, Args)]
pub struct AsymptoticsArgs {
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![2.0, 1.6])]
    lambda: Vec<f64>,
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![0.5, 0.9, 0.99, 0.999, 0.9999])]
    r_grid: Vec<f64>,
    #[arg(long, value_enum, default_value_t = FamilyArg::OneMinusRz)]
    family: FamilyArg,
}

fn asymptotics(a: &AsymptoticsArgs) -> Result<Report> {
    let k = a.family.family().power();
    let mut rep = Report::new("asymptotics");
    rep.param("lambda", list_text(&a.lambda))
        .param("alpha", a.alpha)
        .param("r_grid", list_text(&a.r_grid))
        .param("family", a.family.family().as_str());
    rep.values = Table::new(&["lambda", "r", "norm_sq", "scaled", "constant", "ratio"]);
    let mut ests = Vec::new();
    for &lambda in &a.lambda {
        let c = test_function_asymptotic_constant(lambda, k, a.alpha)?;
        for &r in &a.r_grid {
            let est = test_function_norm_sq(lambda, r, k, a.alpha)?;
            let scaled = est.value_sq * (1.0 - r * r).powf(2.0 * lambda - a.alpha - 2.0);
            rep.values.push(vec![lambda.into(), r.into(), est.value_sq.into(), scaled.into(), c.into(), (scaled / c).into()]);
            ests.push(est);
        }
    }
    rep.meta.trunc = ests.iter().map(|e| e.trunc).max();
    rep.meta.residual = worst(&ests);
    rep.meta.source =
        "coefficient sums; constant = Gamma(alpha+2) Gamma(2 lambda-alpha-2) / (k^(alpha+1) Gamma(lambda)^2), scaled = norm_sq (1-r^2)^(2 lambda-alpha-2)"
            .into();
    Ok(rep)
}

// ---------------------------------------------------------------- Schwarzian

#[derive(Debug, Args)]
pub struct MapArgs {
    /// Rational map, polynomial or series literal, or `koebe` / `identity`.
    #[arg(long)]
    function: String,
}

fn schwarzian(a: &MapArgs, g: &Global) -> Result<Report> {
    let mut rep = Report::new("schwarzian");
    rep.param("function", a.function.as_str());
    match parse_map(&a.function)? {
        ParsedFunction::Series(s) => {
            let s_f = schwarzian_series(&s.derivative())?;
            let n = g.trunc.map_or(s_f.trunc(), |t| t.min(s_f.trunc()));
            rep.values = Table::new(&["n", "re", "im"]);
            for (i, c) in s_f.coeffs().iter().take(n + 1).enumerate() {
                rep.values.push(vec![i.into(), c.re.into(), c.im.into()]);
            }
            rep.meta.trunc = Some(n);
            rep.meta.source = "truncated series of (f''/f')' - (f''/f')^2/2".into();
        }
        f => {
            let r = rational_of(&f, "schwarzian")?;
            let n = pre_schwarzian(&r)?;
            let s = schwarzian_rational(&r)?;
            rep.values = Table::new(&["quantity", "numerator", "denominator"]);
            rep.values.push(vec!["pre_schwarzian".into(), poly_text(n.num()).into(), poly_text(n.den()).into()]);
            rep.values.push(vec!["schwarzian".into(), poly_text(s.num()).into(), poly_text(s.den()).into()]);
            rep.meta.source = "exact rational arithmetic, reduced; coefficients lowest degree first".into();
        }
    }
    Ok(rep)
}

fn critical_points(a: &MapArgs, g: &Global) -> Result<Report> {
    let tol = g.tolerance.unwrap_or(CIRCLE_TOL);
    let r = rational_of(&parse_map(&a.function)?, "critical-points")?;
    let set = critical_points_on_circle(&r, tol)?;
    let mut rep = Report::new("critical-points");
    rep.param("function", a.function.as_str()).param("tolerance", tol);
    rep.values = Table::new(&["re", "im", "abs", "arg"]);
    for z in &set.points {
        rep.values.push(vec![z.re.into(), z.im.into(), z.norm().into(), z.arg().into()]);
    }
    rep.meta.source = "distinct zeros of the reduced numerator of R' within tolerance of |z| = 1".into();
    Ok(rep)
}

#[derive(Debug, Args)]
pub struct LaurentArgs {
    /// The map R; S(R) is formed first unless --direct is given.
    #[arg(long)]
    function: String,
    /// Pole location, e.g. `-1` or `0.6+0.8i`.
    #[arg(long, allow_hyphen_values = true)]
    z0: String,
    /// Treat --function as the rational function to expand, not as R.
    #[arg(long)]
    direct: bool,
}

fn laurent(a: &LaurentArgs) -> Result<Report> {
    let z0 = parse_complex(&a.z0)?;
    let r = rational_of(&parse_map(&a.function)?, "laurent")?;
    let s = if a.direct { r } else { schwarzian_rational(&r)? };
    let c = laurent_leading(&s, z0)?;
    let mut rep = Report::new("laurent");
    rep.param("function", a.function.as_str()).param("z0", complex_text(z0)).param("direct", a.direct);
    rep.values = Table::new(&["z0_re", "z0_im", "re", "im"]);
    rep.values.push(vec![z0.re.into(), z0.im.into(), c.re.into(), c.im.into()]);
    rep.meta.source = "Richardson extrapolation of (z-z0)^2 S(z) along z = z0(1+h), h = 1e-2, 1e-3, 1e-4".into();
    Ok(rep)
}

// ---------------------------------------------------------------- half-plane

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HardyMode {
    /// One piecewise-constant function given by --edges / --values.
    Single,
    /// Seeded random piecewise-constant functions over the (p, r, a) grid.
    Random,
    /// Hardy constant at p = 2, a = -α-1, r = (β-α)/2 against [Γ(1+α/2)/Γ(1+β/2)]².
    Consistency,
}

#[derive(Debug, Args)]
pub struct HardyArgs {
    #[arg(long, value_enum, default_value_t = HardyMode::Single)]
    mode: HardyMode,
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Order r of the fractional integral.
    #[arg(long, default_value_t = 1.0)]
    order: f64,
    /// Weight exponent a.
    #[arg(long, default_value_t = 0.0)]
    a: f64,
    /// Breakpoints 0 = e_0 < e_1 < ... of the step function.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![0.0, 1.0])]
    edges: Vec<f64>,
    /// Step values, one per interval.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![1.0])]
    values: Vec<f64>,
    /// Number of random functions.
    #[arg(long, default_value_t = 200)]
    count: usize,
    /// α list for --mode consistency (paired with --beta).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![0.0, 0.0, 1.0])]
    alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![2.0, 4.0, 5.0])]
    beta: Vec<f64>,
}

fn hardy(a: &HardyArgs, g: &Global) -> Result<Report> {
    let mut rep = Report::new("hardy");
    rep.param("mode", format!("{:?}", a.mode).to_lowercase());
    match a.mode {
        HardyMode::Single => {
            rep.param("p", a.p).param("order", a.order).param("a", a.a).param("edges", list_text(&a.edges)).param("values", list_text(&a.values));
            let f = LineFunction::piecewise_constant(&a.edges, &a.values)?;
            let h = hardy_check(&f, a.p, a.order, a.a)?;
            rep.values = Table::new(&["lhs", "rhs_bound", "constant", "holds"]);
            rep.values.push(vec![h.lhs.into(), h.rhs_bound.into(), h.constant.into(), (h.lhs <= h.rhs_bound * (1.0 + 1e-6)).into()]);
        }
        HardyMode::Random => {
            rep.param("count", a.count).param("seed", g.seed);
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            rep.values = Table::new(&["case", "p", "order", "a", "pieces", "lhs", "rhs_bound", "holds"]);
            for case in 0..a.count {
                let p = [1.5, 2.0, 3.0][case % 3];
                let r = [0.5, 1.0, 2.0][(case / 3) % 3];
                let wa = [-0.5, 0.0, p - 1.5][(case / 9) % 3];
                let pieces = rng.gen_range(1..=8);
                let mut edges: Vec<f64> = (1..pieces).map(|_| rng.gen_range(0.0..4.0)).collect();
                edges.extend([0.0, 4.0]);
                edges.sort_by(f64::total_cmp);
                edges.dedup();
                let values: Vec<f64> = (1..edges.len()).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let f = LineFunction::piecewise_constant(&edges, &values)?;
                let h = hardy_check(&f, p, r, wa)?;
                rep.values.push(vec![
                    case.into(),
                    p.into(),
                    r.into(),
                    wa.into(),
                    values.len().into(),
                    h.lhs.into(),
                    h.rhs_bound.into(),
                    (h.lhs <= h.rhs_bound * (1.0 + 1e-6)).into(),
                ]);
            }
        }
        HardyMode::Consistency => {
            if a.alpha.len() != a.beta.len() {
                return usage("--alpha and --beta must have the same length");
            }
            rep.param("alpha", list_text(&a.alpha)).param("beta", list_text(&a.beta));
            rep.values = Table::new(&["alpha", "beta", "hardy_constant", "gamma_ratio_sq", "rel_diff"]);
            for (&al, &be) in a.alpha.iter().zip(&a.beta) {
                let c = hardy_constant(2.0, 0.5 * (be - al), -al - 1.0)?;
                let expect = (gamma(1.0 + 0.5 * al)?.value / gamma(1.0 + 0.5 * be)?.value).powi(2);
                rep.values.push(vec![al.into(), be.into(), c.into(), expect.into(), ((c - expect).abs() / expect).into()]);
            }
        }
    }
    rep.meta.source = "lhs = int x^a |f_r(x)/x^r|^p dx by tanh-sinh; rhs = [Gamma(1-(a+1)/p)/Gamma(r+1-(a+1)/p)]^p int x^a |f|^p dx".into();
    Ok(rep)
}

#[derive(Debug, Args)]
pub struct LaplaceArgs {
    /// Exponents s of the densities t^s e^{-ct}.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![1.0])]
    s: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![1.0])]
    c: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![0.0, 1.0])]
    alpha: Vec<f64>,
}

fn laplace_check(a: &LaplaceArgs) -> Result<Report> {
    let mut rep = Report::new("laplace-check");
    rep.param("s", list_text(&a.s)).param("c", list_text(&a.c)).param("alpha", list_text(&a.alpha));
    rep.values = Table::new(&["s", "c", "alpha", "halfplane_norm_sq", "density_norm_sq", "residual"]);
    let (mut max_trunc, mut max_res) = (0, 0.0f64);
    for &s in &a.s {
        for &c in &a.c {
            for &alpha in &a.alpha {
                if !(c > 0.0) {
                    return usage(format!("decay rate c must be positive, got {c}"));
                }
                let d = DensityFn::power_exp(s, c);
                let rhs = density_norm_sq(&d, alpha)?;
                let lhs = halfplane_norm_sq_scaled(|w| laplace_of_density(&d, w), alpha, c)?;
                let residual = if rhs.value_sq == 0.0 { 0.0 } else { (lhs.value_sq - rhs.value_sq).abs() / rhs.value_sq };
                max_trunc = max_trunc.max(lhs.trunc);
                max_res = max_res.max(lhs.residual);
                rep.values.push(vec![s.into(), c.into(), alpha.into(), lhs.value_sq.into(), rhs.value_sq.into(), residual.into()]);
            }
        }
    }
    rep.meta.trunc = Some(max_trunc);
    rep.meta.residual = Some(max_res);
    rep.meta.source =
        "half-plane side: trapezoid in log v and asinh u of |L h|^2 v^alpha / pi; density side: Gamma(alpha+1)/2^alpha int |h|^2 t^(-alpha-1) dt".into();
    Ok(rep)
}

// ---------------------------------------------------------------- spectrum, Volterra, claims

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// The map f (its derivative is formed internally).
    #[arg(long)]
    function: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![-2.0, 1.0])]
    t: Vec<f64>,
    #[arg(long, default_value_t = 6)]
    k_min: u32,
    #[arg(long, default_value_t = 14)]
    k_max: u32,
}

fn spectrum(a: &SpectrumArgs) -> Result<Report> {
    if a.k_min >= a.k_max {
        return usage("--k-min must be below --k-max");
    }
    let fp = evaluator_of(&derivative_of(&parse_map(&a.function)?)?)?;
    let ks: Vec<u32> = (a.k_min..=a.k_max).collect();
    let mut rep = Report::new("spectrum");
    rep.param("function", a.function.as_str()).param("t", list_text(&a.t)).param("k_min", a.k_min as usize).param("k_max", a.k_max as usize);
    rep.values = Table::new(&["t", "slope", "stderr"]);
    for &t in &a.t {
        let fit = spectrum_slope(&fp, t, &ks)?;
        rep.values.push(vec![t.into(), fit.slope.into(), fit.stderr.into()]);
    }
    rep.meta.source = "least-squares slope of log int |f'(r e^{i theta})|^t d theta against -log(1-r), r = 1-2^-k".into();
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VolterraOp {
    /// I_g φ = ∫ φ g'
    I,
    /// J_g φ = ∫ φ' g
    J,
}

#[derive(Debug, Args)]
pub struct VolterraArgs {
    #[arg(long)]
    symbol: String,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long, value_enum, default_value_t = VolterraOp::J)]
    op: VolterraOp,
    #[command(flatten)]
    probes: ProbeArgs,
}

fn volterra(a: &VolterraArgs, g: &Global) -> Result<Report> {
    let n_cols = g.trunc.unwrap_or(DEFAULT_COLS);
    let symbol = parse_symbol(&a.symbol, a.alpha, a.beta)?;
    let grid = a.probes.grid(a.alpha, n_cols);
    let mut rep = Report::new("volterra");
    rep.param("symbol", a.symbol.as_str())
        .param("alpha", a.alpha)
        .param("beta", a.beta)
        .param("op", format!("{:?}", a.op).to_lowercase())
        .param("trunc", n_cols);
    a.probes.echo(&mut rep, &grid);
    let v = match a.op {
        VolterraOp::J => volterra_j_norm_sq(&MultiplierSpec::new(a.alpha, a.beta, symbol)?, &grid)?,
        VolterraOp::I => volterra_i_norm_sq(&symbol, a.alpha, a.beta, &grid)?,
    };
    push_lower_bound(&mut rep, a.alpha, a.beta, v.closed_form, &v.lower_bound);
    rep.meta.source = format!(
        "squared multiplier norm of {} between A2_alpha-type spaces; {LOWER_BOUND_SOURCE}",
        if a.op == VolterraOp::J { "g" } else { "g'" }
    );
    Ok(rep)
}

#[derive(Debug, Args)]
pub struct ClaimArgs {
    /// Weight function A (preset or literal); default the constant 1.
    #[arg(long, default_value = "one")]
    symbol: String,
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.2)]
    lambda: f64,
    #[arg(long, default_value_t = PI)]
    theta: f64,
    /// T1, T2, T3 or T4.
    #[arg(long, default_value = "T2")]
    kind: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![0.9, 0.99, 0.999])]
    r_grid: Vec<f64>,
}

fn claim_probe(a: &ClaimArgs) -> Result<Report> {
    let kind = ClaimKind::parse(&a.kind)?;
    let sym = parse_symbol(&a.symbol, a.alpha, a.alpha + 4.0)?;
    sym.check_analytic()?;
    let f = sym.evaluator()?;
    let vals = claim_boundedness_probe(f, a.alpha, a.lambda, a.theta, kind, &a.r_grid)?;
    let mut rep = Report::new("claim-probe");
    rep.param("symbol", a.symbol.as_str())
        .param("alpha", a.alpha)
        .param("lambda", a.lambda)
        .param("theta", a.theta)
        .param("kind", kind.as_str())
        .param("r_grid", list_text(&a.r_grid));
    rep.values = Table::new(&["r", "value"]);
    for (&r, &v) in a.r_grid.iter().zip(&vals) {
        rep.values.push(vec![r.into(), v.into()]);
    }
    rep.meta.source = "disk quadrature of |A| |1-rz|^-p |1-r e^{-i theta} z|^-q (1-|z|^2)^(alpha+4)".into();
    Ok(rep)
}
