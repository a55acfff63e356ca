//! The block Vandermonde matrix `P` diagonalising `a^ρ`, and the eigenbasis
//! `{h^ρ P̄_{·x}}` of `S_h`.

use nalgebra::DVector;
use num_complex::Complex64;
use std::f64::consts::PI;

use super::cyclo::CycloCoefficients;
use super::matrix::CycloMatrix;
use crate::instance::Instance;
use crate::orbits::OrbitTable;
use crate::psl2::{GroupElement, Point};

/// `P(a^i z, a^j z) = ζ^{ij}` on each `a`-orbit, zero across orbits.
pub fn vandermonde(tab: &OrbitTable) -> CycloMatrix {
    let (n, p) = (tab.num_points(), tab.p());
    let mut m = CycloMatrix::zeros(n, p);
    for (x, cx) in tab.coords().iter().enumerate() {
        for (y, cy) in tab.coords().iter().enumerate() {
            if (cx.i, cx.j) == (cy.i, cy.j) {
                m.set(x, y, CycloCoefficients::monomial(p, (cx.b * cy.b) as i64, 1));
            }
        }
    }
    m
}

/// `ζ^{b(x)}` as the diagonal entry at `x`.
pub fn eigenvalue_exponent(tab: &OrbitTable, x: usize) -> usize {
    tab.coords()[x].b
}

/// `h^ρ P̄_{·x}`: entry `ζ^{-i·b(x)}` at `h(a^i z)`, `z` the representative of
/// the `a`-orbit of `x`.
pub fn eigenvector(inst: &Instance, h: &GroupElement, x: Point) -> DVector<Complex64> {
    let tab = &inst.tab;
    let c = tab.decompose_point(x);
    let p = tab.p();
    let mut v = DVector::from_element(tab.num_points(), Complex64::new(0.0, 0.0));
    for i in 0..p {
        let y = inst.psl.apply(h, tab.point_at(c.i, c.j, i));
        let e = (p - (i * c.b) % p) % p;
        v[y.index()] = Complex64::from_polar(1.0, 2.0 * PI * e as f64 / p as f64);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::matrix::perm_matrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check(q: u64, p: u64) {
        let inst = Instance::new(q, p).unwrap();
        let (n, p) = (inst.tab.num_points(), p as usize);
        let pm = vandermonde(&inst.tab);
        let pbar = pm.conj();
        assert!(pbar.mul(&pm).is_diagonal_with(|_| CycloCoefficients::scalar(p, p as i64)));
        let a = CycloMatrix::from_int(&perm_matrix(&inst.psl, &inst.gens.a), p);
        let d = pm.mul(&a).mul(&pbar);
        assert!(d.is_diagonal_with(|x| CycloCoefficients::monomial(p, eigenvalue_exponent(&inst.tab, x) as i64, p as i64)));
        assert_eq!(n, q as usize + 1);
    }

    #[test]
    fn diagonalises_a() {
        check(13, 7);
        check(16, 17);
        check(27, 7);
    }

    #[test]
    fn eigenvectors_of_conjugate() {
        let inst = Instance::new(13, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let h = inst.psl.random_element(&mut rng);
            let c = inst.psl.conj_by(&h, &inst.gens.a);
            let cm = perm_matrix(&inst.psl, &c).to_complex();
            for x in inst.psl.points() {
                let v = eigenvector(&inst, &h, x);
                let b = eigenvalue_exponent(&inst.tab, x.index());
                let lambda = Complex64::from_polar(1.0, 2.0 * PI * b as f64 / 7.0);
                assert!((&cm * &v - v.map(|e| e * lambda)).norm() < 1e-12);
            }
        }
    }
}
