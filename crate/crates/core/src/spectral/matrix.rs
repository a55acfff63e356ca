use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::cyclo::CycloCoefficients;
use crate::group_ring::GroupRingElement;
use crate::psl2::{GroupElement, Psl2};

/// Dense square integer matrix indexed by points of the projective line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] += v;
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        assert_eq!(n, other.n);
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut rank = 0;
        let mut prev = BigInt::from(1);
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(rank, piv);
            for r in rank + 1..n {
                for c in col + 1..n {
                    let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                    a[r][c] = v / &prev;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        rank
    }

    pub fn to_complex(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| Complex64::new(self.get(i, j) as f64, 0.0))
    }
}

/// `h^ρ(x, y) = 1` iff `h(y) = x`.
pub fn perm_matrix(psl: &Psl2, h: &GroupElement) -> IntMatrix {
    let mut m = IntMatrix::zeros(psl.num_points());
    for y in psl.points() {
        m.set(psl.apply(h, y).index(), y.index(), 1);
    }
    m
}

/// `x^ρ = Σ c_g g^ρ`; panics if an entry leaves the `i64` range.
pub fn group_ring_matrix(psl: &Psl2, x: &GroupRingElement) -> IntMatrix {
    let mut m = IntMatrix::zeros(psl.num_points());
    for (g, c) in x.terms() {
        let c = c.to_i64().expect("group ring coefficient fits in i64");
        for y in psl.points() {
            m.add_to(psl.apply(g, y).index(), y.index(), c);
        }
    }
    m
}

/// Floating-point `x^ρ`, for coefficients of any size.
pub fn group_ring_matrix_f64(psl: &Psl2, x: &GroupRingElement) -> nalgebra::DMatrix<Complex64> {
    let n = psl.num_points();
    let mut m = nalgebra::DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for (g, c) in x.terms() {
        let c = c.to_f64().unwrap_or(f64::NAN);
        for y in psl.points() {
            m[(psl.apply(g, y).index(), y.index())] += Complex64::new(c, 0.0);
        }
    }
    m
}

/// Square matrix over `Z[ζ]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloMatrix {
    n: usize,
    p: usize,
    data: Vec<CycloCoefficients>,
}

impl CycloMatrix {
    pub fn zeros(n: usize, p: usize) -> Self {
        CycloMatrix { n, p, data: vec![CycloCoefficients::zero(p); n * n] }
    }

    pub fn from_int(m: &IntMatrix, p: usize) -> Self {
        let mut out = Self::zeros(m.n(), p);
        for i in 0..m.n() {
            for j in 0..m.n() {
                out.data[i * m.n() + j] = CycloCoefficients::scalar(p, m.get(i, j));
            }
        }
        out
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloCoefficients {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycloCoefficients) {
        self.data[i * self.n + j] = v;
    }

    pub fn conj(&self) -> Self {
        CycloMatrix { n: self.n, p: self.p, data: self.data.iter().map(|c| c.conj()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n, self.p);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.coeffs().iter().all(|&x| x == 0) {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.coeffs().iter().all(|&x| x == 0) {
                        continue;
                    }
                    out.data[i * n + j] = out.data[i * n + j].add(&a.mul(b));
                }
            }
        }
        out
    }

    /// Whether every entry equals `diag(i)` on the diagonal and vanishes off it.
    pub fn is_diagonal_with(&self, diag: impl Fn(usize) -> CycloCoefficients) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| if i == j { self.get(i, i).equals(&diag(i)) } else { self.get(i, j).is_zero() })
        })
    }
}
