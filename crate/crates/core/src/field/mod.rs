//! Finite fields `F_q = F_l[X]/(f)` with table-driven multiplication, plus the
//! quadratic extension `F_{q^2}` and the distinguished elements built on it.
//!
//! Elements are stored by their integer encoding `Σ digit_i · l^i`, where the
//! digits are the coefficients in the power basis of the modulus. The encoding
//! is the ordering, hashing and serialization key everywhere in the crate.

mod ext;
mod setup;

pub use ext::{ExtElement, ExtField};
pub use setup::{build_setup, FieldSetup};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// Largest field order accepted by the table representation.
pub const MAX_FIELD_ORDER: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub l: u64,
    pub r: u32,
    pub q: u64,
}

impl PrimePower {
    pub fn new(l: u64, r: u32) -> Result<Self> {
        if !arith::is_prime(l) {
            return Err(Error::NotPrime(l));
        }
        if r == 0 {
            return Err(Error::ZeroExponent);
        }
        let q = l
            .checked_pow(r)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(Error::FieldTooLarge(l.saturating_pow(r)))?;
        if q < 4 {
            return Err(Error::FieldTooSmall(q));
        }
        Ok(PrimePower { l, r, q })
    }

    pub fn from_order(q: u64) -> Result<Self> {
        let (l, r) = arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(l, r)
    }

    pub fn is_odd(&self) -> bool {
        self.l != 2
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.l, self.r)
    }
}

/// Element of `F_q`, identified by its integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn encoding(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Field context for `F_q`.
#[derive(Debug, Clone)]
pub struct Field {
    pp: PrimePower,
    /// Low coefficients `c_0..c_{r-1}` of the monic modulus.
    modulus: Vec<u32>,
    primitive: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
}

/// Builds `F_{l^r}`; the modulus is the monic irreducible of degree `r` with
/// the smallest coefficient encoding `Σ c_i l^i`.
pub fn make_field(l: u64, r: u32) -> Result<Field> {
    Field::new(PrimePower::new(l, r)?)
}

impl Field {
    pub fn new(pp: PrimePower) -> Result<Self> {
        let modulus = smallest_irreducible(pp.l as u32, pp.r);
        let l = pp.l as u32;
        let q = pp.q as usize;
        let neg = (0..q as u32)
            .map(|x| {
                digits_of(x, l, pp.r)
                    .into_iter()
                    .rev()
                    .fold(0, |acc, d| acc * l + (l - d) % l)
            })
            .collect();

        // first (by encoding) element of order q-1; its powers give the tables
        let mut exp = Vec::with_capacity(q - 1);
        let mut primitive = None;
        for cand in 1..q as u32 {
            exp.clear();
            let g = digits_of(cand, l, pp.r);
            let mut x = vec![0u32; pp.r as usize];
            x[0] = 1;
            loop {
                exp.push(encode(&x, l));
                x = poly_mulmod(&x, &g, &modulus, l);
                if encode(&x, l) == 1 {
                    break;
                }
            }
            if exp.len() == q - 1 {
                primitive = Some(FieldElement(cand));
                break;
            }
        }
        let primitive = primitive.expect("F_q^* is cyclic");
        let mut log = vec![0u32; q];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        Ok(Field { pp, modulus, primitive, exp, log, neg })
    }

    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }

    pub fn q(&self) -> u64 {
        self.pp.q
    }

    pub fn characteristic(&self) -> u64 {
        self.pp.l
    }

    /// Low coefficients of the monic modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The first element of order `q - 1` in encoding order.
    pub fn primitive(&self) -> FieldElement {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.pp.q as u32).map(FieldElement)
    }

    pub fn element(&self, encoding: u64) -> Result<FieldElement> {
        if encoding >= self.pp.q {
            return Err(Error::InvalidElement(format!(
                "encoding {encoding} out of range for F_{}",
                self.pp.q
            )));
        }
        Ok(FieldElement(encoding as u32))
    }

    pub fn digits(&self, x: FieldElement) -> Vec<u32> {
        digits_of(x.0, self.pp.l as u32, self.pp.r)
    }

    pub fn from_digits(&self, digits: &[u32]) -> FieldElement {
        FieldElement(encode(digits, self.pp.l as u32))
    }

    /// Image of an integer under `Z -> F_q`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.pp.l as i64) as u32)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let l = self.pp.l as u32;
        if self.pp.r == 1 {
            return FieldElement((x.0 + y.0) % l);
        }
        let (mut a, mut b) = (x.0, y.0);
        let (mut out, mut place) = (0, 1);
        while a > 0 || b > 0 {
            out += ((a % l + b % l) % l) * place;
            a /= l;
            b /= l;
            place *= l;
        }
        FieldElement(out)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.neg[x.0 as usize])
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.0 == 0 || y.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = self.exp.len();
        let e = self.log[x.0 as usize] as usize + self.log[y.0 as usize] as usize;
        FieldElement(self.exp[if e >= n { e - n } else { e }])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: FieldElement) -> Option<FieldElement> {
        if x.0 == 0 {
            return None;
        }
        let n = self.exp.len();
        let e = self.log[x.0 as usize] as usize;
        Some(FieldElement(self.exp[(n - e) % n]))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Option<FieldElement> {
        self.inv(y).map(|yi| self.mul(x, yi))
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if x.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = self.exp.len() as u64;
        let k = (self.log[x.0 as usize] as u64 * (e % n)) % n;
        FieldElement(self.exp[k as usize])
    }

    /// Discrete logarithm to the base [`Field::primitive`].
    pub fn log(&self, x: FieldElement) -> Option<u64> {
        (x.0 != 0).then(|| self.log[x.0 as usize] as u64)
    }

    pub fn primitive_power(&self, e: u64) -> FieldElement {
        FieldElement(self.exp[(e % self.exp.len() as u64) as usize])
    }

    /// Least `s > 0` with `x^s = 1`, descending through the prime factors of `q - 1`.
    pub fn element_order(&self, x: FieldElement) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(arith::order_by_descent(self.pp.q - 1, |e| self.pow(x, e) == FieldElement::ONE))
    }

    /// `x` is a square in `F_q`; always true in characteristic 2 and for 0.
    pub fn is_square(&self, x: FieldElement) -> bool {
        if !self.pp.is_odd() || x.is_zero() {
            return true;
        }
        self.pow(x, (self.pp.q - 1) / 2) == FieldElement::ONE
    }

    pub fn sqrt(&self, x: FieldElement) -> Option<FieldElement> {
        if x.is_zero() {
            return Some(x);
        }
        let n = self.pp.q - 1;
        let e = self.log[x.0 as usize] as u64;
        if e % 2 == 0 {
            Some(self.primitive_power(e / 2))
        } else if n % 2 == 1 {
            Some(self.primitive_power((e + n) / 2))
        } else {
            None
        }
    }

    /// Absolute trace `F_q -> F_l` as an integer residue.
    pub fn absolute_trace(&self, x: FieldElement) -> u32 {
        let mut acc = FieldElement::ZERO;
        let mut y = x;
        for _ in 0..self.pp.r {
            acc = self.add(acc, y);
            y = self.pow(y, self.pp.l);
        }
        acc.0
    }
}

fn digits_of(mut x: u32, l: u32, r: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(r as usize);
    for _ in 0..r {
        d.push(x % l);
        x /= l;
    }
    d
}

fn encode(digits: &[u32], l: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * l + d)
}

/// Product of two residues modulo `X^r + Σ c_i X^i`.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], l: u32) -> Vec<u32> {
    let r = modulus.len();
    let mut prod = vec![0u64; 2 * r];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % l as u64;
        }
    }
    for k in (r..2 * r).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &mi) in modulus.iter().enumerate() {
            let idx = k - r + i;
            prod[idx] = (prod[idx] + (l as u64 - c) * mi as u64) % l as u64;
        }
    }
    prod.truncate(r);
    prod.into_iter().map(|c| c as u32).collect()
}

/// Remainder of monic `f` (full coefficient list, leading 1 last) by monic `g`.
fn poly_rem(f: &[u32], g: &[u32], l: u32) -> Vec<u32> {
    let mut rem: Vec<u32> = f.to_vec();
    let dg = g.len() - 1;
    while rem.len() > dg {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - dg;
        if lead != 0 {
            for (i, &gi) in g.iter().enumerate() {
                rem[shift + i] = (rem[shift + i] + (l - lead) * gi % l) % l;
            }
        }
        rem.pop();
    }
    rem
}

/// Monic irreducible of degree `r` over `F_l` with the smallest encoding of its
/// low coefficients. Irreducibility is decided by trial division by every monic
/// polynomial of degree `1..=r/2`.
fn smallest_irreducible(l: u32, r: u32) -> Vec<u32> {
    let count = (l as u64).pow(r);
    (0..count)
        .map(|n| digits_of(n as u32, l, r))
        .find(|low| is_irreducible(low, l))
        .expect("irreducible polynomials exist in every degree")
}

pub(crate) fn is_irreducible(low: &[u32], l: u32) -> bool {
    let r = low.len() as u32;
    let mut f = low.to_vec();
    f.push(1);
    for deg in 1..=r / 2 {
        for n in 0..(l as u64).pow(deg) {
            let mut g = digits_of(n as u32, l, deg);
            g.push(1);
            if poly_rem(&f, &g, l).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_uses_trivial_modulus() {
        let f = make_field(13, 1).unwrap();
        assert_eq!(f.modulus(), &[0]);
        assert_eq!(f.digits(FieldElement(7)), vec![7]);
        assert_eq!(f.mul(FieldElement(5), FieldElement(8)), FieldElement(1));
        assert_eq!(f.primitive(), FieldElement(2));
    }

    #[test]
    fn f9_modulus_matches_enumeration() {
        // Oracle: a monic quadratic over F_3 is irreducible iff it has no root.
        let first = (0..9u32)
            .map(|n| (n % 3, n / 3))
            .find(|&(c0, c1)| (0..3).all(|x| (x * x + c1 * x + c0) % 3 != 0))
            .unwrap();
        assert_eq!(first, (1, 0));
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0]);
    }

    #[test]
    fn f16_cardinality() {
        let f = make_field(2, 4).unwrap();
        assert_eq!(f.elements().filter(|x| !x.is_zero()).count(), 15);
        assert_eq!(f.element_order(f.primitive()).unwrap(), 15);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(make_field(12, 1), Err(Error::NotPrime(12))));
        assert!(matches!(make_field(5, 0), Err(Error::ZeroExponent)));
        assert!(matches!(make_field(3, 1), Err(Error::FieldTooSmall(3))));
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (l, r) in [(2u64, 2u32), (2, 3), (3, 2), (5, 2), (2, 4), (3, 3), (7, 1)] {
            let f = make_field(l, r).unwrap();
            for x in f.elements() {
                assert_eq!(f.add(x, f.neg(x)), FieldElement::ZERO);
                let lx = (0..l).fold(FieldElement::ZERO, |acc, _| f.add(acc, x));
                assert_eq!(lx, FieldElement::ZERO);
                if let Some(xi) = f.inv(x) {
                    assert_eq!(f.mul(x, xi), FieldElement::ONE);
                }
                for y in f.elements() {
                    assert_eq!(f.add(x, y), f.add(y, x));
                    for z in f.elements().step_by(3) {
                        let lhs = f.mul(x, f.add(y, z));
                        let rhs = f.add(f.mul(x, y), f.mul(x, z));
                        assert_eq!(lhs, rhs, "distributivity in F_{}", f.q());
                    }
                }
            }
        }
    }

    #[test]
    fn squares() {
        let f = make_field(13, 1).unwrap();
        assert!(f.is_square(FieldElement(4)));
        assert!(f.is_square(FieldElement::ZERO));
        assert!(!f.is_square(f.primitive()));
        let squares: std::collections::BTreeSet<_> =
            f.elements().map(|y| f.mul(y, y)).collect();
        for x in f.elements() {
            assert_eq!(f.is_square(x), squares.contains(&x));
            if let Some(s) = f.sqrt(x) {
                assert_eq!(f.mul(s, s), x);
            }
        }
        let f16 = make_field(2, 4).unwrap();
        assert!(f16.elements().all(|x| f16.is_square(x)));
    }

    #[test]
    fn element_order_identity_and_primitive() {
        let f = make_field(13, 1).unwrap();
        assert_eq!(f.element_order(FieldElement::ONE).unwrap(), 1);
        assert_eq!(f.element_order(f.primitive()).unwrap(), 12);
        assert!(matches!(f.element_order(FieldElement::ZERO), Err(Error::ZeroElement)));
    }
}
