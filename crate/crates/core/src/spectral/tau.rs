//! The square-zero matrices `τ = (v - 1)^ρ` of the bicyclic units in play.

use super::matrix::{group_ring_matrix, IntMatrix};
use crate::error::{Error, Result};
use crate::group_ring::{GroupRing, GroupRingElement};
use crate::instance::Instance;
use crate::psl2::{GroupElement, Point};

/// `v = 1 + (1 - σ)·g·σ̂`.
pub fn sigma_bicyclic_unit(inst: &Instance) -> GroupRingElement {
    GroupRing::new(&inst.psl).bicyclic_right(&inst.gens.sigma, &inst.gens.g)
}

/// `v_h = 1 + (1 - g)·h·ĝ`.
pub fn v_h(inst: &Instance, h: &GroupElement) -> GroupRingElement {
    GroupRing::new(&inst.psl).bicyclic_right(&inst.gens.g, h)
}

fn tau_of(inst: &Instance, v: &GroupRingElement) -> IntMatrix {
    let zg = GroupRing::new(&inst.psl);
    group_ring_matrix(&inst.psl, &v.sub(&zg.one()))
}

pub fn build_tau_even(inst: &Instance) -> Result<IntMatrix> {
    if inst.is_odd() {
        return Err(Error::InvalidSpec("build_tau_even needs even q".into()));
    }
    Ok(tau_of(inst, &sigma_bicyclic_unit(inst)))
}

pub fn build_tau_odd_v7(inst: &Instance) -> Result<IntMatrix> {
    if !inst.is_odd() {
        return Err(Error::InvalidSpec("build_tau_odd_v7 needs odd q".into()));
    }
    Ok(tau_of(inst, &sigma_bicyclic_unit(inst)))
}

pub fn build_tau_h(inst: &Instance, h: &GroupElement) -> Result<IntMatrix> {
    if !inst.is_odd() {
        return Err(Error::InvalidSpec("build_tau_h needs odd q".into()));
    }
    if inst.in_d(h) {
        return Err(Error::HInDihedralizer);
    }
    Ok(tau_of(inst, &v_h(inst, h)))
}

/// `τ = Ψ·φᵀ` with `Ψ` a primitive integer vector whose first nonzero entry
/// is positive. `None` unless `τ` has rank exactly one.
pub fn factor_rank_one(tau: &IntMatrix) -> Option<(Vec<i64>, Vec<i64>)> {
    let n = tau.n();
    let y0 = (0..n).find(|&y| (0..n).any(|x| tau.get(x, y) != 0))?;
    let col = tau.column(y0);
    let g = col.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    let sign = col.iter().find(|&&x| x != 0).map_or(1, |x| x.signum());
    let psi: Vec<i64> = col.iter().map(|x| sign * x / g).collect();
    let x0 = psi.iter().position(|&x| x != 0)?;
    let phi: Vec<i64> = tau.row(x0).iter().map(|&t| t / psi[x0]).collect();
    let ok = (0..n).all(|x| (0..n).all(|y| tau.get(x, y) == psi[x] * phi[y]));
    ok.then_some((psi, phi))
}

/// `Ψ^(h)`: `+1` on `h(O_0) ∩ gh(O_1)`, `-1` on `h(O_1) ∩ gh(O_0)`.
pub fn psi_h(inst: &Instance, h: &GroupElement) -> Vec<i64> {
    let psl = &inst.psl;
    let (hi, ghi) = (psl.inv(h), psl.inv(&psl.mul(&inst.gens.g, h)));
    psl.points()
        .map(|x| {
            let i = inst.tab.decompose_point(psl.apply(&hi, x)).i;
            let k = inst.tab.decompose_point(psl.apply(&ghi, x)).i;
            match (i, k) {
                (0, 1) => 1,
                (1, 0) => -1,
                _ => 0,
            }
        })
        .collect()
}

/// `χ_{O_0} - χ_{O_1}`, the functional cutting out `ker τ_h`.
pub fn phi_odd(inst: &Instance) -> Vec<i64> {
    inst.tab.coords().iter().map(|c| if c.i == 0 { 1 } else { -1 }).collect()
}

/// `Ψ = e_{-t⁻¹} - e_{-β²t⁻¹}` for even `q`.
pub fn psi_even(inst: &Instance) -> Vec<i64> {
    let f = inst.psl.field();
    let ti = f.neg(f.inv(inst.gens.t).expect("t ≠ 0"));
    let b2 = f.mul(inst.gens.beta, inst.gens.beta);
    let mut psi = vec![0; inst.psl.num_points()];
    psi[Point::Finite(ti).index()] = 1;
    psi[Point::Finite(f.mul(b2, ti)).index()] = -1;
    psi
}

/// `(q - 1)` at `0`, `0` at `∞`, `-1` on `F_q*`: `K = ker φ`.
pub fn phi_even(inst: &Instance) -> Vec<i64> {
    let q = inst.q() as i64;
    inst.psl
        .points()
        .map(|x| match x {
            Point::Infinity => 0,
            Point::Finite(v) if v.is_zero() => q - 1,
            _ => -1,
        })
        .collect()
}
