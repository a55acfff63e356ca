use num_complex::Complex64;
use std::f64::consts::PI;

/// `Σ_b c_b ζ^b` for a primitive `p`-th root of unity `ζ`, `p` prime.
///
/// Since the minimal polynomial of `ζ` is `1 + X + … + X^{p-1}`, the value is
/// zero exactly when all `c_b` coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloCoefficients {
    c: Vec<i64>,
}

impl CycloCoefficients {
    pub fn zero(p: usize) -> Self {
        CycloCoefficients { c: vec![0; p] }
    }

    pub fn from_coeffs(c: Vec<i64>) -> Self {
        assert!(!c.is_empty());
        CycloCoefficients { c }
    }

    /// `c·ζ^e`.
    pub fn monomial(p: usize, e: i64, c: i64) -> Self {
        let mut out = Self::zero(p);
        out.c[e.rem_euclid(p as i64) as usize] = c;
        out
    }

    pub fn scalar(p: usize, c: i64) -> Self {
        Self::monomial(p, 0, c)
    }

    pub fn p(&self) -> usize {
        self.c.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.c
    }

    pub fn add_term(&mut self, e: i64, c: i64) {
        let p = self.p() as i64;
        self.c[e.rem_euclid(p) as usize] += c;
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == self.c[0])
    }

    /// Equality as algebraic numbers.
    pub fn equals(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// Value as an integer when it is rational.
    pub fn rational_value(&self) -> Option<i64> {
        // Σ c_b ζ^b = c_0 - c_1 when c_1 = … = c_{p-1}
        let rest = &self.c[1..];
        rest.iter().all(|&x| x == rest[0]).then(|| self.c[0] - rest[0])
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p(), other.p());
        CycloCoefficients { c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.p(), other.p());
        CycloCoefficients { c: self.c.iter().zip(&other.c).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        CycloCoefficients { c: self.c.iter().map(|a| a * k).collect() }
    }

    /// Cyclic convolution.
    pub fn mul(&self, other: &Self) -> Self {
        let p = self.p();
        assert_eq!(p, other.p());
        let mut out = vec![0; p];
        for (i, &a) in self.c.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in other.c.iter().enumerate() {
                out[(i + j) % p] += a * b;
            }
        }
        CycloCoefficients { c: out }
    }

    /// Image under `ζ ↦ ζ^s`; complex conjugation is `s = -1`.
    pub fn galois(&self, s: i64) -> Self {
        let p = self.p() as i64;
        let mut out = Self::zero(self.p());
        for (b, &x) in self.c.iter().enumerate() {
            out.c[(b as i64 * s).rem_euclid(p) as usize] += x;
        }
        out
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn eval(&self) -> Complex64 {
        let p = self.p() as f64;
        self.c
            .iter()
            .enumerate()
            .map(|(b, &x)| Complex64::from_polar(x as f64, 2.0 * PI * b as f64 / p))
            .sum()
    }
}
