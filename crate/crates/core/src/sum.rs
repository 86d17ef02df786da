//! Compensated summation with a fixed accumulation order.

use num_complex::Complex64;

/// Kahan–Babuška (Neumaier) accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = KahanSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of a real sequence, in iteration order.
pub fn kahan_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<KahanSum>().value()
}

/// Compensated complex sum (real and imaginary parts accumulated separately).
pub fn kahan_sum_complex<I: IntoIterator<Item = Complex64>>(iter: I) -> Complex64 {
    let mut re = KahanSum::new();
    let mut im = KahanSum::new();
    for z in iter {
        re.add(z.re);
        im.add(z.im);
    }
    Complex64::new(re.value(), im.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_small_terms() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(kahan_sum(xs), 2.0);
        let naive: f64 = xs.iter().sum();
        assert_eq!(naive, 0.0);
    }

    #[test]
    fn many_tenths() {
        let s = kahan_sum(std::iter::repeat(0.1).take(1_000_000));
        assert!((s - 100_000.0).abs() < 1e-9);
    }
}
