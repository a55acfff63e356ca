//! Decomposition of the projective line into `g`-orbits `O_i` and `a`-orbits
//! `O_ij`, with the `(i, j, b)` coordinates `x = a^b(z_ij)`.

use fixedbitset::FixedBitSet;

use crate::psl2::{CanonicalGenerators, GroupElement, Point, Psl2};

/// Subset of the projective line, indexed by [`Point::index`].
pub type PointSet = FixedBitSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coord {
    /// `g`-orbit.
    pub i: usize,
    /// `a`-orbit within `O_i`.
    pub j: usize,
    /// Exponent with `x = a^b(z_ij)`, `0 ≤ b < p`.
    pub b: usize,
}

#[derive(Debug, Clone)]
pub struct OrbitTable {
    p: usize,
    d: usize,
    /// Each `O_i` in `g`-iteration order from its starting point (`∞` for `O_0`).
    g_orbits: Vec<Vec<Point>>,
    /// `O_ij` listed as `z_ij, a(z_ij), …, a^{p-1}(z_ij)`.
    a_orbits: Vec<Vec<Vec<Point>>>,
    coords: Vec<Coord>,
    g_orbit_sets: Vec<PointSet>,
}

pub fn build_orbits(psl: &Psl2, gens: &CanonicalGenerators) -> OrbitTable {
    let n = psl.num_points();
    let p = gens.p as usize;
    let d = gens.d as usize;
    let len = p * d;
    let mut seen = FixedBitSet::with_capacity(n);
    let mut g_orbits = Vec::new();
    let mut a_orbits = Vec::new();
    let mut coords = vec![Coord { i: 0, j: 0, b: 0 }; n];

    while let Some(start) = (0..n).find(|&k| !seen.contains(k)) {
        let i = g_orbits.len();
        let mut orbit = Vec::with_capacity(len);
        let mut x = Point::from_index(start);
        for _ in 0..len {
            seen.insert(x.index());
            orbit.push(x);
            x = psl.apply(&gens.g, x);
        }
        debug_assert_eq!(x, Point::from_index(start));
        // g^s(start) lies in the a-orbit indexed s mod d
        let subs: Vec<Vec<Point>> = (0..d)
            .map(|j| {
                let z = orbit.iter().skip(j).step_by(d).min().copied().unwrap();
                let mut sub = Vec::with_capacity(p);
                let mut y = z;
                for b in 0..p {
                    coords[y.index()] = Coord { i, j, b };
                    sub.push(y);
                    y = psl.apply(&gens.a, y);
                }
                debug_assert_eq!(y, z);
                sub
            })
            .collect();
        g_orbits.push(orbit);
        a_orbits.push(subs);
    }
    let g_orbit_sets = g_orbits.iter().map(|o| point_set(n, o.iter().copied())).collect();
    OrbitTable { p, d, g_orbits, a_orbits, coords, g_orbit_sets }
}

pub fn point_set(n: usize, pts: impl IntoIterator<Item = Point>) -> PointSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.extend(pts.into_iter().map(Point::index));
    s
}

/// `h(S)`.
pub fn image_set(psl: &Psl2, h: &GroupElement, s: &PointSet) -> PointSet {
    let mut out = FixedBitSet::with_capacity(s.len());
    out.extend(s.ones().map(|k| psl.apply(h, Point::from_index(k)).index()));
    out
}

/// Image of a set under a precomputed point permutation.
pub fn permute_set(perm: &[u32], s: &PointSet) -> PointSet {
    let mut out = FixedBitSet::with_capacity(s.len());
    out.extend(s.ones().map(|k| perm[k] as usize));
    out
}

pub fn intersect_count(a: &PointSet, b: &PointSet) -> usize {
    a.intersection_count(b)
}

impl OrbitTable {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn num_points(&self) -> usize {
        self.coords.len()
    }

    /// Number of `g`-orbits, i.e. `d′`.
    pub fn num_g_orbits(&self) -> usize {
        self.g_orbits.len()
    }

    pub fn g_orbit(&self, i: usize) -> &[Point] {
        &self.g_orbits[i]
    }

    pub fn g_orbit_set(&self, i: usize) -> &PointSet {
        &self.g_orbit_sets[i]
    }

    pub fn a_orbit(&self, i: usize, j: usize) -> &[Point] {
        &self.a_orbits[i][j]
    }

    pub fn a_orbit_set(&self, i: usize, j: usize) -> PointSet {
        point_set(self.num_points(), self.a_orbits[i][j].iter().copied())
    }

    /// `z_ij`, the smallest point of `O_ij`.
    pub fn rep(&self, i: usize, j: usize) -> Point {
        self.a_orbits[i][j][0]
    }

    /// All `(i, j)` pairs, `g`-orbit major.
    pub fn a_orbit_keys(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.g_orbits.len()).flat_map(move |i| (0..self.d).map(move |j| (i, j)))
    }

    pub fn decompose_point(&self, x: Point) -> Coord {
        self.coords[x.index()]
    }

    /// The point `a^b(z_ij)`.
    pub fn point_at(&self, i: usize, j: usize, b: usize) -> Point {
        self.a_orbits[i][j][b % self.p]
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }
}
