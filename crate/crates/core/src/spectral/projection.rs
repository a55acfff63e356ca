//! Projections `π_b^h` onto the eigenspaces `V_{h,b}` of `S_h`, along the
//! decomposition `V = ⊕_{0 ≤ b ≤ (p-1)/2} V_{h,b}`.

use nalgebra::DVector;
use num_complex::Complex64;
use std::f64::consts::PI;

use super::cyclo::CycloCoefficients;
use crate::instance::Instance;
use crate::psl2::GroupElement;

/// Point permutations of `c^j`, `c = h a h⁻¹`, for `0 ≤ j < p`.
pub fn conjugate_powers(inst: &Instance, h: &GroupElement) -> Vec<Vec<u32>> {
    let c = inst.psl.conj_by(h, &inst.gens.a);
    let cp = inst.psl.permutation(&c);
    let n = cp.len();
    let mut out: Vec<Vec<u32>> = vec![(0..n as u32).collect()];
    for _ in 1..inst.p() {
        let last = out.last().unwrap();
        out.push(last.iter().map(|&x| cp[x as usize]).collect());
    }
    out
}

/// The sequence `c_b = Σ_x φ_x (w_{c^b x} + w_{c^{-b} x})`, so that
/// `p·φ(π_{b₀}^h(w)) = Σ_b c_b ζ^{b·b₀}` for `b₀ ≢ 0`. Hence
/// `π_{b₀}^h(w) ∈ ker φ` iff the sequence is constant, for any `b₀ ≢ 0`.
pub fn projection_coeffs(inst: &Instance, h: &GroupElement, w: &[i64], phi: &[i64]) -> CycloCoefficients {
    let pw = conjugate_powers(inst, h);
    let p = pw.len();
    let c = (0..p)
        .map(|b| {
            let (fwd, back) = (&pw[b], &pw[(p - b) % p]);
            phi.iter()
                .enumerate()
                .filter(|(_, &f)| f != 0)
                .map(|(x, &f)| f * (w[fwd[x] as usize] + w[back[x] as usize]))
                .sum()
        })
        .collect();
    CycloCoefficients::from_coeffs(c)
}

/// `π_{b₀}^h(w)` in floating point, straight from the averaging formula.
pub fn projection_f64(inst: &Instance, h: &GroupElement, w: &DVector<Complex64>, b0: u64) -> DVector<Complex64> {
    let pw = conjugate_powers(inst, h);
    let p = pw.len();
    let mut out = DVector::from_element(w.len(), Complex64::new(0.0, 0.0));
    for (j, perm) in pw.iter().enumerate() {
        let z = Complex64::from_polar(1.0, 2.0 * PI * ((j as u64 * b0) % p as u64) as f64 / p as f64);
        let coef = if b0 % p as u64 == 0 { Complex64::new(1.0, 0.0) } else { z + z.conj() };
        for x in 0..w.len() {
            out[x] += coef * w[perm[x] as usize];
        }
    }
    out / Complex64::new(p as f64, 0.0)
}

/// `V_{h,b} ⊄ ker φ` for `b ≢ 0`: some `a`-orbit `O` has `φ` non-constant on
/// `h(O)`. The test does not depend on `b`.
pub fn eigenspace_not_in_kernel(inst: &Instance, h: &GroupElement, phi: &[i64]) -> bool {
    let tab = &inst.tab;
    tab.a_orbit_keys().any(|(i, j)| {
        let vals: Vec<i64> = tab.a_orbit(i, j).iter().map(|&y| phi[inst.psl.apply(h, y).index()]).collect();
        vals.iter().any(|&v| v != vals[0])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::compute_counts;
    use crate::group_ring::{BassUnitSpec, GroupRing};
    use crate::spectral::eigen::bass_eigenvalue;
    use crate::spectral::matrix::group_ring_matrix_f64;
    use crate::spectral::tau::{phi_odd, psi_h};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn to_c(w: &[i64]) -> DVector<Complex64> {
        DVector::from_iterator(w.len(), w.iter().map(|&x| Complex64::new(x as f64, 0.0)))
    }

    fn phi_of(phi: &[i64], v: &DVector<Complex64>) -> Complex64 {
        phi.iter().zip(v.iter()).map(|(&f, x)| x * f as f64).sum()
    }

    #[test]
    fn zero_vector() {
        let inst = Instance::new(13, 7).unwrap();
        let c = projection_coeffs(&inst, &inst.gens.sigma, &[0; 14], &phi_odd(&inst));
        assert!(c.coeffs().iter().all(|&x| x == 0));
    }

    #[test]
    fn projections_resolve_identity_and_are_eigenvectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (q, p) in [(13u64, 7u64), (16, 17), (27, 7)] {
            let inst = Instance::new(q, p).unwrap();
            let n = inst.psl.num_points();
            let zg = GroupRing::new(&inst.psl);
            let m = if p == 7 { 21 } else { 272 };
            let u = zg.bass_unit(&BassUnitSpec { base: inst.gens.a, k: 2, m }).unwrap();
            for _ in 0..3 {
                let h = inst.psl.random_element(&mut rng);
                let s = group_ring_matrix_f64(&inst.psl, &zg.conjugate_unit(&u, &h));
                let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
                let wc = to_c(&w);
                let mut total = DVector::from_element(n, Complex64::new(0.0, 0.0));
                let scale = bass_eigenvalue(p, 2, m, 1).norm().max(bass_eigenvalue(p, 2, m, (p - 1) / 2).norm());
                for b0 in 0..=(p - 1) / 2 {
                    let pi = projection_f64(&inst, &h, &wc, b0);
                    let lambda = bass_eigenvalue(p, 2, m, b0);
                    let resid = (&s * &pi - &pi * lambda).norm();
                    assert!(resid <= 1e-9 * scale.max(1.0) * pi.norm().max(1.0), "q={q} b0={b0}");
                    total += pi;
                }
                assert!((total - &wc).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn exact_coefficients_match_float_projection() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let inst = Instance::new(27, 7).unwrap();
        let n = inst.psl.num_points();
        for _ in 0..20 {
            let h = inst.psl.random_element(&mut rng);
            let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            let phi: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            let c = projection_coeffs(&inst, &h, &w, &phi);
            for b0 in 1..=3 {
                let exact = c.galois(b0 as i64).eval() / 7.0;
                let float = phi_of(&phi, &projection_f64(&inst, &h, &to_c(&w), b0));
                assert!((exact - float).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn coefficients_reproduce_intersection_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for (q, p) in [(13u64, 7u64), (27, 7), (37, 19)] {
            let inst = Instance::new(q, p).unwrap();
            let phi = phi_odd(&inst);
            let mut seen = 0;
            while seen < 10 {
                let h = inst.psl.random_element(&mut rng);
                if inst.in_d(&h) {
                    continue;
                }
                let counts = compute_counts(&inst, &h).unwrap();
                let c = projection_coeffs(&inst, &h, &psi_h(&inst, &h), &phi);
                for b in 0..p as i64 {
                    assert_eq!(c.coeffs()[b as usize], 2 * counts.lemma14_difference(0, b));
                }
                assert_eq!(c.coeffs()[0], 0);
                assert!(eigenspace_not_in_kernel(&inst, &h, &phi));
                seen += 1;
            }
        }
    }
}
