//! Exact check of the ping-pong hypotheses for `S̄_h` and `τ̄` on `V/W`.

use serde::Serialize;

use super::eigen::eigen_data;
use super::projection::{eigenspace_not_in_kernel, projection_coeffs};
use super::tau::{phi_even, phi_odd, psi_even, psi_h};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::psl2::{GroupElement, Point};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem10Verdict {
    pub b_plus: u64,
    pub b_minus: u64,
    pub v_plus_not_in_k: bool,
    pub v_minus_not_in_k: bool,
    pub pi_plus_not_in_k: bool,
    pub pi_minus_not_in_k: bool,
    pub verdict: bool,
}

/// `τ = Ψφᵀ` for the pair in play: `τ_h` for odd `q`, the fixed bicyclic unit
/// built from `σ` and `g` for even `q`.
pub fn rank_one_data(inst: &Instance, h: &GroupElement) -> Result<(Vec<i64>, Vec<i64>)> {
    if inst.is_odd() {
        if inst.in_d(h) {
            return Err(Error::HInDihedralizer);
        }
        Ok((psi_h(inst, h), phi_odd(inst)))
    } else {
        Ok((psi_even(inst), phi_even(inst)))
    }
}

/// With `K = ker τ` a hyperplane, `V̄_± ≠ 0` iff `V_± ⊄ K`, and then
/// `Im τ̄ ∩ (V̄_0 + V̄_∓) = 0` iff `π_{b±}(Ψ) ∉ K`; the latter also forces
/// `Ψ ∉ W`, which gives `V̄_± ∩ ker τ̄ = 0`.
pub fn theorem10_check(inst: &Instance, h: &GroupElement, k: u64, m: u64) -> Result<Theorem10Verdict> {
    let eig = eigen_data(inst.p(), k, m)?;
    let (psi, phi) = rank_one_data(inst, h)?;
    let v_not_in_k = eigenspace_not_in_kernel(inst, h, &phi);
    let c = projection_coeffs(inst, h, &psi, &phi);
    let pi_plus = !c.galois(eig.b_plus as i64).is_zero();
    let pi_minus = !c.galois(eig.b_minus as i64).is_zero();
    Ok(Theorem10Verdict {
        b_plus: eig.b_plus,
        b_minus: eig.b_minus,
        v_plus_not_in_k: v_not_in_k,
        v_minus_not_in_k: v_not_in_k,
        pi_plus_not_in_k: pi_plus,
        pi_minus_not_in_k: pi_minus,
        verdict: v_not_in_k && pi_plus && pi_minus,
    })
}

/// The even-`q` choice: `h(x₀) = 0`, `h(a(x₀)) = t⁻¹`, `h(a²(x₀)) = β²t⁻¹`.
/// In characteristic 2 the targets coincide with their negatives.
pub fn even_recipe_h(inst: &Instance, x0: Point) -> Result<GroupElement> {
    let (psl, a) = (&inst.psl, &inst.gens.a);
    let f = psl.field();
    let ti = f.inv(inst.gens.t).expect("t ≠ 0");
    let b2 = f.mul(inst.gens.beta, inst.gens.beta);
    let x1 = psl.apply(a, x0);
    let x2 = psl.apply(a, x1);
    psl.three_point_map([x0, x1, x2], [Point::Finite(f.from_int(0)), Point::Finite(ti), Point::Finite(f.mul(b2, ti))])
}
