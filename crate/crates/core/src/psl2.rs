//! `PSL(2,q)` as determinant-one matrices modulo `±1`, acting on the
//! projective line `F_q ∪ {∞}` by Möbius transformations.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, FieldSetup};

/// A point of the projective line. The derived order puts `∞` first and then
/// the field elements by encoding, which is also the order of [`Point::index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Infinity,
    Finite(FieldElement),
}

impl Point {
    pub fn index(self) -> usize {
        match self {
            Point::Infinity => 0,
            Point::Finite(x) => x.0 as usize + 1,
        }
    }

    pub fn from_index(i: usize) -> Self {
        if i == 0 {
            Point::Infinity
        } else {
            Point::Finite(FieldElement(i as u32 - 1))
        }
    }

    /// `[x, y]` homogeneous coordinates: `∞ = [1, 0]`, `x = [x, 1]`.
    pub fn homogeneous(self) -> (FieldElement, FieldElement) {
        match self {
            Point::Infinity => (FieldElement::ONE, FieldElement::ZERO),
            Point::Finite(x) => (x, FieldElement::ONE),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "∞"),
            Point::Finite(x) => write!(f, "{x}"),
        }
    }
}

/// Canonical representative of an element of `PSL(2,q)`: determinant 1 and,
/// for odd `q`, the first nonzero entry (scan order `a11, a12, a21, a22`) has
/// the smaller encoding of its `±` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub a11: FieldElement,
    pub a12: FieldElement,
    pub a21: FieldElement,
    pub a22: FieldElement,
}

impl GroupElement {
    pub fn entries(&self) -> [FieldElement; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }

    /// The four decimal encodings `[a11, a12, a21, a22]`.
    pub fn encoding(&self) -> [u32; 4] {
        self.entries().map(|x| x.0)
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.encoding().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a11, a12, a21, a22] = <[u32; 4]>::deserialize(d)?.map(FieldElement);
        Ok(GroupElement { a11, a12, a21, a22 })
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a11, self.a12, self.a21, self.a22)
    }
}

#[derive(Debug, Clone)]
pub struct Psl2 {
    field: Field,
    dprime: u64,
}

impl Psl2 {
    pub fn new(field: Field) -> Self {
        let dprime = arith::gcd(2, field.q() + 1);
        Psl2 { field, dprime }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    /// `gcd(2, q + 1)`.
    pub fn dprime(&self) -> u64 {
        self.dprime
    }

    /// `|PSL(2,q)| = q(q² - 1)/d′`.
    pub fn order(&self) -> u64 {
        let q = self.q();
        q * (q * q - 1) / self.dprime
    }

    pub fn num_points(&self) -> usize {
        self.q() as usize + 1
    }

    pub fn points(&self) -> impl Iterator<Item = Point> {
        (0..self.num_points()).map(Point::from_index)
    }

    pub fn identity(&self) -> GroupElement {
        let (o, z) = (FieldElement::ONE, FieldElement::ZERO);
        GroupElement { a11: o, a12: z, a21: z, a22: o }
    }

    fn det(&self, m: [FieldElement; 4]) -> FieldElement {
        let f = &self.field;
        f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]))
    }

    fn normalize(&self, m: [FieldElement; 4]) -> GroupElement {
        let f = &self.field;
        let lead = m.iter().find(|x| !x.is_zero()).copied().unwrap_or_default();
        let m = if f.neg(lead) < lead { m.map(|x| f.neg(x)) } else { m };
        GroupElement { a11: m[0], a12: m[1], a21: m[2], a22: m[3] }
    }

    /// Element represented by a determinant-one matrix (either sign).
    pub fn from_matrix(&self, m: [FieldElement; 4]) -> Result<GroupElement> {
        if self.det(m) != FieldElement::ONE {
            return Err(Error::InvalidElement(format!("determinant of {m:?} is not 1")));
        }
        Ok(self.normalize(m))
    }

    /// Element from four integer encodings, as in the external formats.
    pub fn from_encoding(&self, enc: [u64; 4]) -> Result<GroupElement> {
        let mut m = [FieldElement::ZERO; 4];
        for (slot, e) in m.iter_mut().zip(enc) {
            *slot = self.field.element(e)?;
        }
        self.from_matrix(m)
    }

    /// Scales an invertible matrix into `SL(2,q)` when its determinant is a
    /// square (always, for even `q`).
    pub fn from_gl(&self, m: [FieldElement; 4]) -> Option<GroupElement> {
        let f = &self.field;
        let s = f.sqrt(f.inv(self.det(m))?)?;
        Some(self.normalize(m.map(|x| f.mul(s, x))))
    }

    pub fn is_canonical(&self, m: [FieldElement; 4]) -> bool {
        self.det(m) == FieldElement::ONE && self.normalize(m).entries() == m
    }

    /// Matrix product `x·y`.
    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let f = &self.field;
        let dot = |a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement| {
            f.add(f.mul(a, b), f.mul(c, d))
        };
        self.normalize([
            dot(x.a11, y.a11, x.a12, y.a21),
            dot(x.a11, y.a12, x.a12, y.a22),
            dot(x.a21, y.a11, x.a22, y.a21),
            dot(x.a21, y.a12, x.a22, y.a22),
        ])
    }

    pub fn inv(&self, x: &GroupElement) -> GroupElement {
        let f = &self.field;
        self.normalize([x.a22, f.neg(x.a12), f.neg(x.a21), x.a11])
    }

    pub fn pow(&self, x: &GroupElement, n: i64) -> GroupElement {
        let base = if n < 0 { self.inv(x) } else { *x };
        let mut e = n.unsigned_abs();
        let (mut acc, mut b) = (self.identity(), base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// Order in `PSL(2,q)`: least `s` with `x^s = ±I`.
    pub fn element_order(&self, x: &GroupElement) -> u64 {
        let id = self.identity();
        let mut y = *x;
        let mut s = 1;
        while y != id {
            y = self.mul(&y, x);
            s += 1;
        }
        s
    }

    /// `x^h = h⁻¹·x·h`.
    pub fn conj(&self, x: &GroupElement, h: &GroupElement) -> GroupElement {
        self.mul(&self.mul(&self.inv(h), x), h)
    }

    /// `h·x·h⁻¹`, the convention of `u_h`.
    pub fn conj_by(&self, h: &GroupElement, x: &GroupElement) -> GroupElement {
        self.mul(&self.mul(h, x), &self.inv(h))
    }

    /// `h` normalizes `⟨g⟩` via `h g h⁻¹ ∈ {g, g⁻¹}`.
    pub fn in_dihedralizer(&self, h: &GroupElement, g: &GroupElement) -> bool {
        let c = self.conj_by(h, g);
        c == *g || c == self.inv(g)
    }

    /// Möbius action `x ↦ (a11 x + a12)/(a21 x + a22)`.
    pub fn apply(&self, h: &GroupElement, x: Point) -> Point {
        let f = &self.field;
        match x {
            Point::Infinity => match f.inv(h.a21) {
                None => Point::Infinity,
                Some(c) => Point::Finite(f.mul(h.a11, c)),
            },
            Point::Finite(x) => {
                let num = f.add(f.mul(h.a11, x), h.a12);
                let den = f.add(f.mul(h.a21, x), h.a22);
                match f.inv(den) {
                    None => Point::Infinity,
                    Some(di) => Point::Finite(f.mul(num, di)),
                }
            }
        }
    }

    /// The permutation of point indices induced by `h`.
    pub fn permutation(&self, h: &GroupElement) -> Vec<u32> {
        self.points().map(|x| self.apply(h, x).index() as u32).collect()
    }

    /// Every element of the group exactly once, in a fixed order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let f = &self.field;
        let fe = move || f.elements();
        fe().flat_map(move |a11| {
            fe().filter(move |&a21| !(a11.is_zero() && a21.is_zero())).flat_map(move |a21| {
                fe().map(move |free| {
                    if let Some(ai) = f.inv(a11) {
                        // a22 = (1 + a12·a21)/a11 with a12 = free
                        let a22 = f.mul(f.add(FieldElement::ONE, f.mul(free, a21)), ai);
                        [a11, free, a21, a22]
                    } else {
                        let a12 = f.neg(f.inv(a21).unwrap());
                        [a11, a12, a21, free]
                    }
                })
            })
        })
        .filter(move |m| self.normalize(*m).entries() == *m)
        .map(|m| GroupElement { a11: m[0], a12: m[1], a21: m[2], a22: m[3] })
    }

    /// Uniform random element: a uniform invertible matrix with its first row
    /// divided by the determinant is uniform on `SL(2,q)`.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        let f = &self.field;
        let q = self.q() as u32;
        loop {
            let m: [FieldElement; 4] = std::array::from_fn(|_| FieldElement(rng.gen_range(0..q)));
            let Some(di) = f.inv(self.det(m)) else { continue };
            return self.normalize([f.mul(m[0], di), f.mul(m[1], di), m[2], m[3]]);
        }
    }

    /// The unique element sending `xs[i] ↦ ys[i]`. Only available for even
    /// `q`, where `PSL(2,q) = PGL(2,q)` is sharply 3-transitive.
    pub fn three_point_map(&self, xs: [Point; 3], ys: [Point; 3]) -> Result<GroupElement> {
        if self.field.prime_power().is_odd() {
            return Err(Error::ThreePointMap("PSL(2,q) is not 3-transitive for odd q".into()));
        }
        let ax = self.frame(xs)?;
        let ay = self.frame(ys)?;
        let f = &self.field;
        let d = f.inv(self.det(ax)).unwrap();
        let ax_inv = [ax[3], f.neg(ax[1]), f.neg(ax[2]), ax[0]].map(|x| f.mul(x, d));
        let m = mat_mul(f, ay, ax_inv);
        Ok(self.from_gl(m).expect("every determinant is a square in characteristic 2"))
    }

    /// Matrix in `GL(2,q)` sending `∞, 0, 1` to the three given points.
    fn frame(&self, pts: [Point; 3]) -> Result<[FieldElement; 4]> {
        if pts[0] == pts[1] || pts[0] == pts[2] || pts[1] == pts[2] {
            return Err(Error::ThreePointMap("points must be pairwise distinct".into()));
        }
        let f = &self.field;
        let [u0, u1, u2] = pts.map(Point::homogeneous);
        // λ0·u0 + λ1·u1 = u2 by Cramer's rule
        let det = f.sub(f.mul(u0.0, u1.1), f.mul(u1.0, u0.1));
        let di = f.inv(det).unwrap();
        let l0 = f.mul(f.sub(f.mul(u2.0, u1.1), f.mul(u1.0, u2.1)), di);
        let l1 = f.mul(f.sub(f.mul(u0.0, u2.1), f.mul(u2.0, u0.1)), di);
        Ok([f.mul(l0, u0.0), f.mul(l1, u1.0), f.mul(l0, u0.1), f.mul(l1, u1.1)])
    }
}

fn mat_mul(f: &Field, x: [FieldElement; 4], y: [FieldElement; 4]) -> [FieldElement; 4] {
    let dot = |a, b, c, d| f.add(f.mul(a, b), f.mul(c, d));
    [
        dot(x[0], y[0], x[1], y[2]),
        dot(x[0], y[1], x[1], y[3]),
        dot(x[2], y[0], x[3], y[2]),
        dot(x[2], y[1], x[3], y[3]),
    ]
}

/// `g = [[0, -1], [1, t]]` (multiplication by `α` in the basis `{1, α}`),
/// `σ = diag(β, β⁻¹)`, and `a = g^d` of prime order `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalGenerators {
    pub g: GroupElement,
    pub sigma: GroupElement,
    pub a: GroupElement,
    pub p: u64,
    /// `(q + 1)/(p·d′)`.
    pub d: u64,
    /// `gcd(2, q + 1)`.
    pub dprime: u64,
    pub t: FieldElement,
    pub beta: FieldElement,
}

impl CanonicalGenerators {
    pub fn new(psl: &Psl2, setup: &FieldSetup, p: u64) -> Result<Self> {
        Self::with_trace(psl, setup.t, setup.beta, p)
    }

    /// Generators for an explicit trace `t` (e.g. a hand-picked admissible value).
    pub fn with_trace(psl: &Psl2, t: FieldElement, beta: FieldElement, p: u64) -> Result<Self> {
        let f = psl.field();
        let q = psl.q();
        let dprime = psl.dprime();
        let cyc = (q + 1) / dprime;
        if !arith::is_prime(p) || p == 2 || cyc % p != 0 {
            return Err(Error::InvalidPrime {
                p,
                reason: format!("need an odd prime dividing (q+1)/d' = {cyc}"),
            });
        }
        let g = psl.from_matrix([FieldElement::ZERO, f.neg(FieldElement::ONE), FieldElement::ONE, t])?;
        if psl.element_order(&g) != cyc {
            return Err(Error::InvalidSpec(format!("t = {t} does not give g of order {cyc}")));
        }
        if f.element_order(beta)? != q - 1 {
            return Err(Error::InvalidSpec(format!("beta = {beta} is not primitive")));
        }
        let sigma = psl.from_matrix([beta, FieldElement::ZERO, FieldElement::ZERO, f.inv(beta).unwrap()])?;
        let d = cyc / p;
        let a = psl.pow(&g, d as i64);
        Ok(CanonicalGenerators { g, sigma, a, p, d, dprime, t, beta })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{build_setup, make_field};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn group(l: u64, r: u32) -> (Psl2, FieldSetup) {
        let f = make_field(l, r).unwrap();
        let s = build_setup(&f);
        (Psl2::new(f), s)
    }

    fn pt(x: u32) -> Point {
        Point::Finite(FieldElement(x))
    }

    #[test]
    fn generator_images() {
        let (psl, s) = group(13, 1);
        let gens = CanonicalGenerators::new(&psl, &s, 7).unwrap();
        let f = psl.field();
        let t = s.t;
        let g = &gens.g;
        assert_eq!(psl.apply(g, Point::Finite(f.neg(t))), Point::Infinity);
        assert_eq!(psl.apply(g, Point::Infinity), pt(0));
        assert_eq!(psl.apply(g, pt(0)), Point::Finite(f.neg(f.inv(t).unwrap())));
        assert_eq!(psl.apply(&gens.sigma, pt(0)), pt(0));
        assert_eq!(psl.apply(&gens.sigma, Point::Infinity), Point::Infinity);
        for x in psl.points() {
            assert_eq!(psl.apply(&psl.identity(), x), x);
            assert_ne!(psl.apply(g, x), x, "g has no fixed point");
        }
        let sigma_fixed: Vec<_> = psl.points().filter(|&x| psl.apply(&gens.sigma, x) == x).collect();
        assert_eq!(sigma_fixed, vec![Point::Infinity, pt(0)]);
    }

    #[test]
    fn orders_q13() {
        let (psl, s) = group(13, 1);
        let gens = CanonicalGenerators::new(&psl, &s, 7).unwrap();
        assert_eq!(psl.element_order(&gens.g), 7);
        assert_eq!(psl.element_order(&gens.sigma), 6);
        assert_eq!(psl.element_order(&gens.a), 7);
        assert_eq!(gens.d, 1);
        let h = psl.random_element(&mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(psl.mul(&h, &psl.inv(&h)), psl.identity());
    }

    #[test]
    fn element_counts_and_uniqueness() {
        for (l, r, n) in [(13, 1, 1092u64), (2, 4, 4080), (5, 1, 60), (2, 2, 60), (3, 2, 360)] {
            let (psl, _) = group(l, r);
            let all: Vec<_> = psl.elements().collect();
            assert_eq!(all.len() as u64, n);
            assert_eq!(psl.order(), n);
            let set: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(set.len(), all.len());
        }
    }

    #[test]
    fn dihedralizer_q13() {
        let (psl, s) = group(13, 1);
        let gens = CanonicalGenerators::new(&psl, &s, 7).unwrap();
        let dihedral: Vec<_> = psl.elements().filter(|h| psl.in_dihedralizer(h, &gens.g)).collect();
        assert_eq!(dihedral.len(), 14);
        for k in 0..7 {
            assert!(psl.in_dihedralizer(&psl.pow(&gens.g, k), &gens.g));
        }
        // an involution inverting g
        let w = psl
            .elements()
            .find(|w| psl.element_order(w) == 2 && psl.conj_by(w, &gens.g) == psl.inv(&gens.g))
            .expect("D is dihedral");
        assert!(psl.in_dihedralizer(&w, &gens.g));
    }

    #[test]
    fn sigma_conjugate_by_g() {
        for (l, r, p) in [(13, 1, 7), (2, 4, 17), (3, 3, 7)] {
            let (psl, s) = group(l, r);
            let gens = CanonicalGenerators::new(&psl, &s, p).unwrap();
            let f = psl.field();
            let bi = f.inv(gens.beta).unwrap();
            let expect = psl
                .from_matrix([bi, f.mul(gens.t, f.sub(bi, gens.beta)), FieldElement::ZERO, gens.beta])
                .unwrap();
            let sg = psl.conj(&gens.sigma, &gens.g);
            assert_eq!(sg, expect);
            let n = psl.element_order(&gens.sigma) as i64;
            assert!((0..n).all(|k| psl.pow(&gens.sigma, k) != sg));
        }
    }

    #[test]
    fn faithful_action() {
        for (l, r) in [(5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (2, 4), (5, 2), (3, 3)] {
            let (psl, _) = group(l, r);
            let id = psl.identity();
            let fixes_all: Vec<_> = psl
                .elements()
                .filter(|h| psl.points().all(|x| psl.apply(h, x) == x))
                .collect();
            assert_eq!(fixes_all, vec![id]);
        }
    }

    #[test]
    fn three_point_map_even() {
        let (psl, s) = group(2, 4);
        let in0 = [pt(0), pt(1), Point::Infinity];
        assert_eq!(psl.three_point_map(in0, in0).unwrap(), psl.identity());
        let xs = [pt(3), Point::Infinity, pt(9)];
        let ys = [pt(0), Point::Finite(s.t), pt(14)];
        let h = psl.three_point_map(xs, ys).unwrap();
        for i in 0..3 {
            assert_eq!(psl.apply(&h, xs[i]), ys[i]);
        }
        let zs = [pt(5), pt(6), pt(7)];
        let k = psl.three_point_map(ys, zs).unwrap();
        assert_eq!(psl.mul(&k, &h), psl.three_point_map(xs, zs).unwrap());
        assert!(psl.three_point_map([pt(1), pt(1), pt(2)], in0).is_err());
        let (odd, _) = group(13, 1);
        assert!(matches!(odd.three_point_map(in0, in0), Err(Error::ThreePointMap(_))));
    }

    #[test]
    fn seeded_sampling_is_deterministic() {
        let (psl, _) = group(13, 1);
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20).map(|_| psl.random_element(&mut rng)).collect::<Vec<_>>()
        };
        assert_eq!(draw(42), draw(42));
        assert_ne!(draw(42), draw(43));
    }

    #[test]
    fn sampling_is_roughly_uniform() {
        let (psl, _) = group(5, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut counts = std::collections::HashMap::new();
        for _ in 0..60_000 {
            *counts.entry(psl.random_element(&mut rng)).or_insert(0u32) += 1;
        }
        assert_eq!(counts.len(), 60);
        assert!(counts.values().all(|&c| (700..1300).contains(&c)));
    }
}
