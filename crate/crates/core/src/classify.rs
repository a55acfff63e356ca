//! Which `PSL(2,q)` have a dihedral `p`-critical element: the closed-form
//! predicate, and a brute-force check of the definition on small groups.

use std::collections::HashSet;

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{make_field, PrimePower};
use crate::psl2::{GroupElement, Psl2};

pub const DEFAULT_BRUTE_FORCE_BOUND: u64 = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DpcReason {
    /// `PSL(2,q) ≅ PSL(2,5)` and `p = 5`.
    P5Exceptional,
    /// `l ≠ p > 5` and `ord_p(l) = 2r`.
    OrderCondition,
    Fails,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DpcVerdict {
    pub q: u64,
    pub p: u64,
    pub predicate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnessed: Option<bool>,
    pub reason: DpcReason,
}

pub fn multiplicative_order(l: u64, p: u64) -> Result<u64> {
    arith::multiplicative_order(l, p)
}

fn check_prime(p: u64) -> Result<()> {
    if !arith::is_prime(p) {
        return Err(Error::InvalidPrime { p, reason: "not prime".into() });
    }
    if p <= 3 {
        return Err(Error::InvalidPrime { p, reason: "need p > 3".into() });
    }
    Ok(())
}

pub fn has_dpc_predicate(q: u64, p: u64) -> Result<DpcVerdict> {
    check_prime(p)?;
    let pp = PrimePower::from_order(q)?;
    // PSL(2,4) ≅ PSL(2,5): the statement is about the abstract group
    let reason = if p == 5 && (q == 4 || q == 5) {
        DpcReason::P5Exceptional
    } else if pp.l != p && p > 5 && multiplicative_order(pp.l, p)? == 2 * pp.r as u64 {
        DpcReason::OrderCondition
    } else {
        DpcReason::Fails
    };
    Ok(DpcVerdict { q, p, predicate: reason != DpcReason::Fails, witnessed: None, reason })
}

/// `D_G(a) = {x : x a x⁻¹ ∈ {a, a⁻¹}}`.
pub fn dihedralizer(psl: &Psl2, a: &GroupElement) -> Vec<GroupElement> {
    psl.elements().filter(|x| psl.in_dihedralizer(x, a)).collect()
}

/// Whether `⟨gens⟩` is all of the group; stops once past half the order.
fn generates(psl: &Psl2, gens: &[GroupElement]) -> bool {
    let half = psl.order() / 2;
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut frontier = vec![psl.identity()];
    seen.insert(psl.identity());
    while let Some(x) = frontier.pop() {
        for s in gens {
            let y = psl.mul(&x, s);
            if seen.insert(y) {
                if seen.len() as u64 > half {
                    return true;
                }
                frontier.push(y);
            }
        }
    }
    false
}

/// Decides the definition directly: for `a` of order `p`, `D_G(a) ≠ G` and
/// every `x ∉ D_G(a)` generates `G` together with `a`.
pub fn brute_force_dpc(q: u64, p: u64, bound: u64) -> Result<bool> {
    let pp = PrimePower::from_order(q)?;
    let psl = Psl2::new(make_field(pp.l, pp.r)?);
    if psl.order() > bound {
        return Err(Error::GroupTooLarge { order: psl.order(), bound });
    }
    if !arith::is_prime(p) || psl.order() % p != 0 {
        return Err(Error::NoElementOfOrderP { q, p });
    }
    let a = psl
        .elements()
        .find(|x| psl.element_order(x) == p)
        .ok_or(Error::NoElementOfOrderP { q, p })?;
    let d: HashSet<_> = dihedralizer(&psl, &a).into_iter().collect();
    if d.len() as u64 == psl.order() {
        return Ok(false);
    }
    let all = psl.elements().filter(|x| !d.contains(x)).all(|x| generates(&psl, &[a, x]));
    Ok(all)
}

/// Predicate plus, optionally, the brute-force witness.
pub fn classify(q: u64, p: u64, brute_force: bool) -> Result<DpcVerdict> {
    let mut v = has_dpc_predicate(q, p)?;
    if brute_force {
        v.witnessed = Some(brute_force_dpc(q, p, DEFAULT_BRUTE_FORCE_BOUND)?);
    }
    Ok(v)
}
