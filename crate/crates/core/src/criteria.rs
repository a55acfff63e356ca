//! Orbit-intersection counts for odd `q` and the integer criteria built
//! from them.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::orbits::{permute_set, PointSet};
use crate::psl2::GroupElement;

type Cube = [[[usize; 2]; 2]; 2];

/// `m[j][k] = |h(O_j) ∩ g h(O_k)|` and
/// `mb(b)[i][j][k] = |h a^b h⁻¹(O_i) ∩ h(O_j) ∩ g h(O_k)|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionCounts {
    p: usize,
    pub m: [[usize; 2]; 2],
    mb: Vec<Cube>,
}

impl IntersectionCounts {
    /// Counts at exponent `b`, any integer (taken mod `p`).
    pub fn mb(&self, b: i64) -> &Cube {
        &self.mb[b.rem_euclid(self.p as i64) as usize]
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// `b` over `[-(p-1)/2, (p-1)/2]`.
    pub fn window(&self) -> impl Iterator<Item = (i64, &Cube)> {
        let half = (self.p as i64 - 1) / 2;
        (-half..=half).map(move |b| (b, self.mb(b)))
    }

    /// `C_b = m001(b) + m001(-b) - m010(b) - m010(-b)` for orbit index `i`.
    pub fn lemma14_difference(&self, i: usize, b: i64) -> i64 {
        let s = |j: usize, k: usize| (self.mb(b)[i][j][k] + self.mb(-b)[i][j][k]) as i64;
        s(0, 1) - s(1, 0)
    }

    /// Every identity the counts must satisfy; the first violation is returned.
    pub fn check_identities(&self, half_orbit: usize) -> std::result::Result<(), String> {
        let m = &self.m;
        if m[0][1] != m[1][0] || m[0][0] != m[1][1] {
            return Err(format!("m not symmetric: {m:?}"));
        }
        for i in 0..2 {
            if m[i][0] + m[i][1] != half_orbit || m[0][i] + m[1][i] != half_orbit {
                return Err(format!("row/column {i} of m does not sum to {half_orbit}"));
            }
        }
        for (b, c) in self.mb.iter().enumerate() {
            for j in 0..2 {
                for k in 0..2 {
                    if c[0][j][k] + c[1][j][k] != m[j][k] {
                        return Err(format!("mb({b}) does not sum to m at ({j},{k})"));
                    }
                }
            }
        }
        let c0 = &self.mb[0];
        for i in 0..2 {
            if c0[i][0][1] != c0[i][1][0] {
                return Err(format!("mb(0)[{i}][0][1] != mb(0)[{i}][1][0]"));
            }
        }
        Ok(())
    }
}

impl Serialize for IntersectionCounts {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mb: Vec<_> = self.window().map(|(b, c)| (b, *c)).collect();
        let mut st = s.serialize_struct("IntersectionCounts", 2)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("mb", &mb)?;
        st.end()
    }
}

fn require_odd_outside_d(inst: &Instance, h: &GroupElement) -> Result<()> {
    if !inst.is_odd() {
        return Err(Error::InvalidSpec("the orbit criteria need odd q".into()));
    }
    if inst.in_d(h) {
        return Err(Error::HInDihedralizer);
    }
    Ok(())
}

pub fn compute_counts(inst: &Instance, h: &GroupElement) -> Result<IntersectionCounts> {
    require_odd_outside_d(inst, h)?;
    let psl = &inst.psl;
    let tab = &inst.tab;
    let p = tab.p();
    let hp = psl.permutation(h);
    let ghp = psl.permutation(&psl.mul(&inst.gens.g, h));
    let cp = psl.permutation(&psl.conj_by(h, &inst.gens.a));
    let o = [tab.g_orbit_set(0).clone(), tab.g_orbit_set(1).clone()];
    let ho = [permute_set(&hp, &o[0]), permute_set(&hp, &o[1])];
    let gho = [permute_set(&ghp, &o[0]), permute_set(&ghp, &o[1])];
    let mut pair: [[PointSet; 2]; 2] = Default::default();
    let mut m = [[0; 2]; 2];
    for j in 0..2 {
        for k in 0..2 {
            let mut s = ho[j].clone();
            s.intersect_with(&gho[k]);
            m[j][k] = s.count_ones(..);
            pair[j][k] = s;
        }
    }
    let mut mb = Vec::with_capacity(p);
    let mut cur = o;
    for _ in 0..p {
        let mut c: Cube = [[[0; 2]; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    c[i][j][k] = cur[i].intersection_count(&pair[j][k]);
                }
            }
        }
        mb.push(c);
        cur = [permute_set(&cp, &cur[0]), permute_set(&cp, &cur[1])];
    }
    let counts = IntersectionCounts { p, m, mb };
    if let Err(e) = counts.check_identities(tab.g_orbit(0).len()) {
        panic!("orbit count identity violated for h = {:?}: {e}", h.encoding());
    }
    Ok(counts)
}

/// The two sums with orbit roles `first`, `second` (the defining choice is 0, 1).
fn sums(inst: &Instance, h: &GroupElement, gh: &GroupElement, first: usize, second: usize) -> (i64, i64) {
    let psl = &inst.psl;
    let tab = &inst.tab;
    let hp = psl.permutation(h);
    let ghp = psl.permutation(gh);
    let gh_second = permute_set(&ghp, tab.g_orbit_set(second));
    let gh_first = permute_set(&ghp, tab.g_orbit_set(first));
    let target = tab.g_orbit_set(first);
    let term = |i: usize, other: &PointSet| -> i64 {
        (0..tab.d())
            .map(|j| {
                let oij = tab.a_orbit_set(i, j);
                let a = permute_set(&hp, &oij).intersection_count(target);
                let b = oij.intersection_count(other);
                (a * b) as i64
            })
            .sum()
    };
    (term(first, &gh_second), term(second, &gh_first))
}

/// `lhs = Σ_j |h(O_0j) ∩ O_0|·|O_0j ∩ g^h(O_1)|`,
/// `rhs = Σ_j |h(O_1j) ∩ O_0|·|O_1j ∩ g^h(O_0)|`, `g^h = h⁻¹gh`.
pub fn condition3(inst: &Instance, h: &GroupElement) -> Result<(bool, i64, i64)> {
    require_odd_outside_d(inst, h)?;
    let (lhs, rhs) = sums(inst, h, &inst.psl.conj(&inst.gens.g, h), 0, 1);
    Ok((lhs != rhs, lhs, rhs))
}

/// The same sums with `g^h` read as `h g h⁻¹`, the conjugate as it comes out
/// when permutations act on the right. Kept for comparison only: unlike
/// [`condition3`] it does not imply the per-`b` criterion.
pub fn condition3_right_action(inst: &Instance, h: &GroupElement) -> Result<(bool, i64, i64)> {
    require_odd_outside_d(inst, h)?;
    let (lhs, rhs) = sums(inst, h, &inst.psl.conj_by(h, &inst.gens.g), 0, 1);
    Ok((lhs != rhs, lhs, rhs))
}

/// [`condition3`] with the roles of the two `g`-orbits exchanged.
pub fn condition3_swapped(inst: &Instance, h: &GroupElement) -> Result<(bool, i64, i64)> {
    require_odd_outside_d(inst, h)?;
    let (lhs, rhs) = sums(inst, h, &inst.psl.conj(&inst.gens.g, h), 1, 0);
    Ok((lhs != rhs, lhs, rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lemma14Row {
    pub b: i64,
    /// Equality for orbit index 0.
    pub equal0: bool,
    /// Equality for orbit index 1.
    pub equal1: bool,
}

/// Per-`b` equalities `m_i01^(b) + m_i01^(-b) = m_i10^(b) + m_i10^(-b)` for
/// `i = 0, 1`, `0 < b ≤ (p-1)/2`. The two columns always agree.
pub fn lemma14_conditions(counts: &IntersectionCounts) -> Vec<Lemma14Row> {
    let half = (counts.p() as i64 - 1) / 2;
    (1..=half)
        .map(|b| {
            let row = Lemma14Row {
                b,
                equal0: counts.lemma14_difference(0, b) == 0,
                equal1: counts.lemma14_difference(1, b) == 0,
            };
            assert_eq!(row.equal0, row.equal1, "orbit-0 and orbit-1 conditions differ at b = {b}");
            row
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub h: GroupElement,
    pub condition3: bool,
    pub lhs: i64,
    pub rhs: i64,
    /// Some `0 < b ≤ (p-1)/2` breaks the per-`b` equality.
    pub cor15: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_b: Option<i64>,
    pub counts: IntersectionCounts,
}

pub fn evaluate(inst: &Instance, h: &GroupElement) -> Result<CriterionReport> {
    let counts = compute_counts(inst, h)?;
    let (condition3, lhs, rhs) = condition3(inst, h)?;
    let witness_b = lemma14_conditions(&counts).iter().find(|r| !r.equal0).map(|r| r.b);
    Ok(CriterionReport { h: *h, condition3, lhs, rhs, cor15: witness_b.is_some(), witness_b, counts })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub h: Option<GroupElement>,
    /// Sampled candidates outside `D` examined.
    pub tries: u64,
    /// Whether the exhaustive pass ran.
    pub exhausted: bool,
}

/// First sampled `h ∉ D` satisfying [`condition3`]. Draws landing in `D` are
/// redrawn and not counted. With `exhaustive_fallback`, a failed sampling
/// phase is followed by a deterministic pass over all of `G \ D`.
pub fn search_companion<R: Rng + ?Sized>(
    inst: &Instance,
    rng: &mut R,
    max_tries: u64,
    exhaustive_fallback: bool,
) -> Result<SearchOutcome> {
    let mut tries = 0;
    while tries < max_tries {
        let h = inst.psl.random_element(rng);
        if inst.in_d(&h) {
            continue;
        }
        tries += 1;
        if condition3(inst, &h)?.0 {
            return Ok(SearchOutcome { h: Some(h), tries, exhausted: false });
        }
    }
    if !exhaustive_fallback {
        return Ok(SearchOutcome { h: None, tries, exhausted: false });
    }
    let found = inst
        .psl
        .elements()
        .filter(|h| !inst.in_d(h))
        .find(|h| condition3(inst, h).map(|c| c.0).unwrap_or(false));
    Ok(SearchOutcome { h: found, tries, exhausted: true })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustiveCount {
    pub satisfied: u64,
    pub total: u64,
    /// Smallest satisfying `h` in enumeration order.
    pub first: Option<GroupElement>,
}

/// [`condition3`] over every `h ∈ G \ D`, in parallel.
pub fn exhaustive_count(inst: &Instance) -> Result<ExhaustiveCount> {
    let candidates: Vec<GroupElement> = inst.psl.elements().filter(|h| !inst.in_d(h)).collect();
    let flags: Vec<bool> = candidates
        .par_iter()
        .map(|h| condition3(inst, h).map(|c| c.0))
        .collect::<Result<_>>()?;
    let satisfied = flags.iter().filter(|&&f| f).count() as u64;
    let first = candidates.iter().zip(&flags).find(|(_, &f)| f).map(|(h, _)| *h);
    Ok(ExhaustiveCount { satisfied, total: candidates.len() as u64, first })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::image_set;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn outside_d(inst: &Instance, rng: &mut ChaCha8Rng) -> GroupElement {
        loop {
            let h = inst.psl.random_element(rng);
            if !inst.in_d(&h) {
                return h;
            }
        }
    }

    #[test]
    fn q13_every_h_satisfies() {
        let inst = Instance::new(13, 7).unwrap();
        let ex = exhaustive_count(&inst).unwrap();
        assert_eq!(ex.total, 1078);
        assert_eq!(ex.satisfied, 1078);
    }

    #[test]
    fn q13_orbit_images_under_conjugate() {
        let inst = Instance::new(13, 7).unwrap();
        let psl = &inst.psl;
        let (o0, o1) = (inst.tab.g_orbit_set(0), inst.tab.g_orbit_set(1));
        for h in psl.elements().filter(|h| !inst.in_d(h)).step_by(7) {
            let gh = psl.conj(&inst.gens.g, &h);
            let a = image_set(psl, &gh, o1).intersection_count(o0);
            let b = image_set(psl, &gh, o0).intersection_count(o1);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn counts_examples_and_orbit_sum() {
        let inst = Instance::new(27, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let h = outside_d(&inst, &mut rng);
            let c = compute_counts(&inst, &h).unwrap();
            assert_eq!(c.m[0][0] + c.m[0][1], 14);
            let (_, lhs, rhs) = condition3(&inst, &h).unwrap();
            let sum = |j: usize, k: usize| (0..7).map(|b| c.mb(b)[0][j][k] as i64).sum::<i64>();
            assert_eq!(sum(0, 1), lhs);
            assert_eq!(sum(1, 0), rhs);
            // lhs - rhs collects the per-b differences
            let total: i64 = (1..=3).map(|b| c.lemma14_difference(0, b)).sum();
            assert_eq!(lhs - rhs, total);
            let r = evaluate(&inst, &h).unwrap();
            if r.condition3 {
                assert!(r.cor15);
            }
            assert_eq!(r.cor15, r.witness_b.is_some());
        }
        let err = compute_counts(&inst, &inst.gens.g);
        assert!(matches!(err, Err(Error::HInDihedralizer)));
    }

    #[test]
    fn label_swap_preserves_verdict() {
        for (q, p) in [(13, 7), (27, 7), (125, 7)] {
            let inst = Instance::new(q, p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(q);
            for _ in 0..30 {
                let h = outside_d(&inst, &mut rng);
                let a = condition3(&inst, &h).unwrap();
                let b = condition3_swapped(&inst, &h).unwrap();
                assert_eq!(a.0, b.0);
            }
        }
    }

    #[test]
    fn images_avoid_orbits_outside_d() {
        for (q, p) in [(13, 7), (27, 7), (37, 19)] {
            let inst = Instance::new(q, p).unwrap();
            let psl = &inst.psl;
            let (g, a) = (inst.gens.g, inst.gens.a);
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let o = [inst.tab.g_orbit_set(0), inst.tab.g_orbit_set(1)];
            for _ in 0..30 {
                let h = outside_d(&inst, &mut rng);
                let ho: Vec<_> = o.iter().map(|s| image_set(psl, &h, s)).collect();
                let (gh, ah) = (psl.conj(&g, &h), psl.conj(&a, &h));
                for i in 0..2 {
                    for j in 0..2 {
                        assert_ne!(ho[i], *o[j]);
                        assert_ne!(image_set(psl, &g, &ho[i]), ho[j]);
                        assert_ne!(image_set(psl, &a, &ho[i]), ho[j]);
                        assert_ne!(image_set(psl, &gh, o[i]), *o[j]);
                        assert_ne!(image_set(psl, &ah, o[i]), *o[j]);
                    }
                }
            }
        }
    }

    #[test]
    fn search_finds_witness_quickly() {
        let inst = Instance::new(13, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let out = search_companion(&inst, &mut rng, 200, false).unwrap();
        assert!(out.h.is_some());
        assert!(out.tries <= 5);
        assert!(!inst.in_d(&out.h.unwrap()));
    }

    #[test]
    fn even_q_rejected() {
        let inst = Instance::new(16, 17).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let h = outside_d(&inst, &mut rng);
        assert!(matches!(condition3(&inst, &h), Err(Error::InvalidSpec(_))));
    }
}
