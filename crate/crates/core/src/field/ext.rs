use super::{Field, FieldElement};
use crate::arith;
use crate::error::{Error, Result};

/// Element `lo + hi·ω` of `F_{q^2}` in the construction basis `{1, ω}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtElement {
    pub lo: FieldElement,
    pub hi: FieldElement,
}

impl ExtElement {
    pub const ZERO: ExtElement = ExtElement { lo: FieldElement::ZERO, hi: FieldElement::ZERO };
    pub const ONE: ExtElement = ExtElement { lo: FieldElement::ONE, hi: FieldElement::ZERO };

    pub fn from_base(x: FieldElement) -> Self {
        ExtElement { lo: x, hi: FieldElement::ZERO }
    }

    pub fn is_zero(self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn in_base_field(self) -> bool {
        self.hi.is_zero()
    }
}

/// `F_{q^2} = F_q[ω]` with `ω² = c` (c a non-square, odd q) or `ω² = ω + c`
/// (c of absolute trace 1, even q). `c` is the smallest admissible encoding.
#[derive(Debug, Clone)]
pub struct ExtField<'f> {
    base: &'f Field,
    c: FieldElement,
    odd: bool,
}

impl<'f> ExtField<'f> {
    pub fn new(base: &'f Field) -> Self {
        let odd = base.prime_power().is_odd();
        let c = base
            .elements()
            .find(|&x| {
                if odd {
                    !base.is_square(x)
                } else {
                    base.absolute_trace(x) == 1
                }
            })
            .expect("a quadratic non-residue / trace-one element exists");
        ExtField { base, c, odd }
    }

    pub fn base(&self) -> &'f Field {
        self.base
    }

    /// The constant `c` of the defining polynomial.
    pub fn defining_constant(&self) -> FieldElement {
        self.c
    }

    pub fn order(&self) -> u64 {
        self.base.q() * self.base.q()
    }

    /// Elements in encoding order `lo + q·hi`.
    pub fn elements(&self) -> impl Iterator<Item = ExtElement> + '_ {
        let q = self.base.q();
        (0..q * q).map(move |n| self.from_encoding(n))
    }

    pub fn from_encoding(&self, n: u64) -> ExtElement {
        let q = self.base.q();
        ExtElement { lo: FieldElement((n % q) as u32), hi: FieldElement((n / q) as u32) }
    }

    pub fn encoding(&self, x: ExtElement) -> u64 {
        x.lo.0 as u64 + self.base.q() * x.hi.0 as u64
    }

    pub fn add(&self, x: ExtElement, y: ExtElement) -> ExtElement {
        let f = self.base;
        ExtElement { lo: f.add(x.lo, y.lo), hi: f.add(x.hi, y.hi) }
    }

    pub fn neg(&self, x: ExtElement) -> ExtElement {
        ExtElement { lo: self.base.neg(x.lo), hi: self.base.neg(x.hi) }
    }

    pub fn mul(&self, x: ExtElement, y: ExtElement) -> ExtElement {
        let f = self.base;
        let hh = f.mul(x.hi, y.hi);
        let lo = f.add(f.mul(x.lo, y.lo), f.mul(hh, self.c));
        let mut hi = f.add(f.mul(x.lo, y.hi), f.mul(x.hi, y.lo));
        if !self.odd {
            hi = f.add(hi, hh);
        }
        ExtElement { lo, hi }
    }

    pub fn pow(&self, x: ExtElement, mut e: u64) -> ExtElement {
        let mut acc = ExtElement::ONE;
        let mut b = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// `x ↦ x^q`.
    pub fn frobenius(&self, x: ExtElement) -> ExtElement {
        let f = self.base;
        if self.odd {
            ExtElement { lo: x.lo, hi: f.neg(x.hi) }
        } else {
            ExtElement { lo: f.add(x.lo, x.hi), hi: x.hi }
        }
    }

    /// `T(x) = x + x^q`.
    pub fn trace(&self, x: ExtElement) -> FieldElement {
        let t = self.add(x, self.frobenius(x));
        debug_assert!(t.in_base_field());
        t.lo
    }

    /// `N(x) = x^{1+q}`.
    pub fn norm(&self, x: ExtElement) -> FieldElement {
        let n = self.mul(x, self.frobenius(x));
        debug_assert!(n.in_base_field());
        n.lo
    }

    pub fn inv(&self, x: ExtElement) -> Option<ExtElement> {
        let ni = self.base.inv(self.norm(x))?;
        Some(self.mul(self.frobenius(x), ExtElement::from_base(ni)))
    }

    pub fn element_order(&self, x: ExtElement) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(arith::order_by_descent(self.order() - 1, |e| self.pow(x, e) == ExtElement::ONE))
    }
}
