use super::{ExtElement, ExtField, Field, FieldElement, PrimePower};
use crate::arith;

/// The distinguished elements every construction starts from: `α ∈ F_{q^2}`
/// of order `q + 1`, its trace `t`, and a primitive `β ∈ F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldSetup {
    pub pp: PrimePower,
    pub alpha: ExtElement,
    pub t: FieldElement,
    pub beta: FieldElement,
}

/// Deterministic search: the first `ξ` (encoding order) whose power
/// `ξ^{q-1}` has order exactly `q + 1` supplies `α`.
pub fn build_setup(field: &Field) -> FieldSetup {
    let ext = ExtField::new(field);
    let q = field.q();
    let primes = arith::prime_divisors(q + 1);
    let alpha = ext
        .elements()
        .skip(1)
        .map(|xi| ext.pow(xi, q - 1))
        .find(|&a| primes.iter().all(|&r| ext.pow(a, (q + 1) / r) != ExtElement::ONE))
        .expect("F_{q^2}^* is cyclic of order q^2 - 1");
    FieldSetup { pp: field.prime_power(), alpha, t: ext.trace(alpha), beta: field.primitive() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn alpha_for_q13() {
        let f = make_field(13, 1).unwrap();
        let s = build_setup(&f);
        let e = ExtField::new(&f);
        assert_eq!(e.element_order(s.alpha).unwrap(), 14);
        // t = α + α^{-1} with α^7 = -1 satisfies t^3 - t^2 - 2t + 1 = 0
        let t = s.t.0 as i64;
        assert_eq!((t * t * t - t * t - 2 * t + 1).rem_euclid(13), 0);
        assert_eq!(f.element_order(s.beta).unwrap(), 12);
    }

    #[test]
    fn setup_invariants() {
        for (l, r) in [(2, 2), (2, 4), (3, 2), (5, 2), (3, 3), (7, 1), (13, 1), (37, 1), (2, 6)] {
            let f = make_field(l, r).unwrap();
            let s = build_setup(&f);
            let e = ExtField::new(&f);
            let q = f.q();
            assert_eq!(e.element_order(s.alpha).unwrap(), q + 1);
            assert_eq!(e.norm(s.alpha), FieldElement::ONE);
            // minimal polynomial X^2 - tX + 1
            let a2 = e.mul(s.alpha, s.alpha);
            let ta = e.mul(ExtElement::from_base(s.t), s.alpha);
            let v = e.add(e.add(a2, e.neg(ta)), ExtElement::ONE);
            assert!(v.is_zero());
            if q + 1 >= 8 {
                for bad in [FieldElement::ZERO, FieldElement::ONE, f.neg(FieldElement::ONE)] {
                    assert_ne!(s.t, bad);
                }
            }
            assert_eq!(f.element_order(s.beta).unwrap(), q - 1);
            assert_eq!(build_setup(&f), s);
        }
    }

    #[test]
    fn q16_trace_not_zero_or_one() {
        let f = make_field(2, 4).unwrap();
        let s = build_setup(&f);
        assert!(s.t != FieldElement::ZERO && s.t != FieldElement::ONE);
    }
}
