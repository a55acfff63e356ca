//! Sparse integral group ring `Z[PSL(2,q)]` with arbitrary-precision
//! coefficients, and the Bass and bicyclic unit constructions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::psl2::{GroupElement, Psl2};

/// Finitely supported `Σ c_x x`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<GroupElement, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(x: GroupElement, c: impl Into<BigInt>) -> Self {
        let mut out = Self::zero();
        out.add_term(x, c.into());
        out
    }

    fn add_term(&mut self, x: GroupElement, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(x).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn coefficient(&self, x: &GroupElement) -> BigInt {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &BigInt)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of coefficients (the augmentation map).
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(*x, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRingElement { terms: self.terms.iter().map(|(x, c)| (*x, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GroupRingElement { terms: self.terms.iter().map(|(x, v)| (*x, v * c)).collect() }
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.terms.iter().map(|(x, c)| (x.encoding(), c.to_string())))
            .finish()
    }
}

/// `u_{k,m}(base)`; requires `k^m ≡ 1 (mod n)` with `n` the order of `base`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BassUnitSpec {
    pub base: GroupElement,
    pub k: u64,
    pub m: u64,
}

/// Ring operations that need the group law.
#[derive(Debug, Clone, Copy)]
pub struct GroupRing<'a> {
    psl: &'a Psl2,
}

impl<'a> GroupRing<'a> {
    pub fn new(psl: &'a Psl2) -> Self {
        GroupRing { psl }
    }

    pub fn group(&self) -> &'a Psl2 {
        self.psl
    }

    pub fn one(&self) -> GroupRingElement {
        GroupRingElement::monomial(self.psl.identity(), 1)
    }

    pub fn element(&self, x: &GroupElement) -> GroupRingElement {
        GroupRingElement::monomial(*x, 1)
    }

    pub fn scalar(&self, c: impl Into<BigInt>) -> GroupRingElement {
        GroupRingElement::monomial(self.psl.identity(), c)
    }

    pub fn mul(&self, x: &GroupRingElement, y: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (gx, cx) in &x.terms {
            for (gy, cy) in &y.terms {
                out.add_term(self.psl.mul(gx, gy), cx * cy);
            }
        }
        out
    }

    pub fn pow(&self, x: &GroupRingElement, mut e: u64) -> GroupRingElement {
        let mut acc = self.one();
        let mut b = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    /// `1 + g + … + g^{k-1}`.
    pub fn geometric_sum(&self, g: &GroupElement, k: u64) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        let mut x = self.psl.identity();
        for _ in 0..k {
            out.add_term(x, BigInt::one());
            x = self.psl.mul(&x, g);
        }
        out
    }

    /// `ĝ = 1 + g + … + g^{n-1}`, `n` the order of `g`.
    pub fn hat(&self, g: &GroupElement) -> GroupRingElement {
        self.geometric_sum(g, self.psl.element_order(g))
    }

    /// `u_{k,m}(g) = (1 + g + … + g^{k-1})^m + ((1 - k^m)/n)·ĝ`.
    pub fn bass_unit(&self, spec: &BassUnitSpec) -> Result<GroupRingElement> {
        let n = self.psl.element_order(&spec.base);
        if spec.k == 0 || spec.m == 0 {
            return Err(Error::InvalidSpec("k and m must be positive".into()));
        }
        let km = BigInt::from(spec.k).pow(spec.m as u32);
        let (quot, rem) = (BigInt::one() - &km).div_rem(&BigInt::from(n));
        if !rem.is_zero() {
            return Err(Error::InvalidSpec(format!(
                "k^m = {}^{} is not 1 modulo the order {n}",
                spec.k, spec.m
            )));
        }
        let power = self.pow(&self.geometric_sum(&spec.base, spec.k), spec.m);
        Ok(power.add(&self.hat(&spec.base).scale(&quot)))
    }

    /// `1 + (1 - g)·h·ĝ`.
    pub fn bicyclic_right(&self, g: &GroupElement, h: &GroupElement) -> GroupRingElement {
        let one_minus_g = self.one().sub(&self.element(g));
        let x = self.mul(&self.mul(&one_minus_g, &self.element(h)), &self.hat(g));
        self.one().add(&x)
    }

    /// `1 + ĝ·h·(1 - g)`.
    pub fn bicyclic_left(&self, g: &GroupElement, h: &GroupElement) -> GroupRingElement {
        let one_minus_g = self.one().sub(&self.element(g));
        let x = self.mul(&self.mul(&self.hat(g), &self.element(h)), &one_minus_g);
        self.one().add(&x)
    }

    /// `h·u·h⁻¹`.
    pub fn conjugate_unit(&self, u: &GroupRingElement, h: &GroupElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (x, c) in &u.terms {
            out.add_term(self.psl.conj_by(h, x), c.clone());
        }
        out
    }

    pub fn is_one(&self, x: &GroupRingElement) -> bool {
        *x == self.one()
    }
}

/// Largest absolute coefficient, handy for bounding float conversions.
pub fn max_abs_coefficient(x: &GroupRingElement) -> BigInt {
    x.terms().map(|(_, c)| c.abs()).max().unwrap_or_default()
}
