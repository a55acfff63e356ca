//! Dense floating-point version of the hypothesis check, used as an
//! independent oracle for [`super::theorem10::theorem10_check`].

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::eigen::{bass_eigenvalue, eigen_data};
use super::matrix::group_ring_matrix_f64;
use super::tau::{build_tau_even, build_tau_h};
use super::vandermonde::eigenvector;
use crate::error::{Error, Result};
use crate::group_ring::{BassUnitSpec, GroupRing};
use crate::instance::Instance;
use crate::psl2::GroupElement;

pub const MAX_ORACLE_Q: u64 = 200;
pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericVerdict {
    pub dim_v_plus_bar: usize,
    pub dim_v_minus_bar: usize,
    /// `V̄_+ ∩ ker τ̄ = 0`.
    pub plus_kernel_trivial: bool,
    pub minus_kernel_trivial: bool,
    /// `Im τ̄ ∩ (V̄_0 + V̄_+) = 0`.
    pub image_meets_plus_trivially: bool,
    pub image_meets_minus_trivially: bool,
    /// Largest `‖S_h E - λE‖` over the eigenbasis, relative to the largest `|λ|`.
    pub eigen_residual: f64,
    pub verdict: bool,
}

type CMat = DMatrix<Complex64>;

struct Ranker {
    tol: f64,
}

impl Ranker {
    fn rank(&self, m: &CMat) -> usize {
        if m.ncols() == 0 || m.nrows() == 0 {
            return 0;
        }
        let s = m.clone().singular_values();
        let thr = self.tol * s.max().max(1.0);
        s.iter().filter(|&&x| x > thr).count()
    }

    /// Orthonormal basis of the column space.
    fn range(&self, m: &CMat) -> CMat {
        if m.ncols() == 0 {
            return CMat::zeros(m.nrows(), 0);
        }
        let svd = m.clone().svd(true, false);
        let thr = self.tol * svd.singular_values.max().max(1.0);
        let u = svd.u.unwrap();
        let keep: Vec<usize> = (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] > thr).collect();
        u.select_columns(&keep)
    }

    /// Basis of `{y : m·y = 0}`.
    fn null(&self, m: &CMat) -> CMat {
        let c = m.ncols();
        // pad so the SVD returns a full right factor
        let mut sq = CMat::zeros(m.nrows().max(c), c);
        sq.view_mut((0, 0), (m.nrows(), c)).copy_from(m);
        let svd = sq.svd(false, true);
        let thr = self.tol * svd.singular_values.max().max(1.0);
        let vt = svd.v_t.unwrap();
        let keep: Vec<usize> = (0..c).filter(|&i| svd.singular_values[i] <= thr).collect();
        vt.select_rows(&keep).adjoint()
    }
}

fn hcat(parts: &[&CMat]) -> CMat {
    let n = parts[0].nrows();
    let cols: usize = parts.iter().map(|p| p.ncols()).sum();
    let mut out = CMat::zeros(n, cols);
    let mut at = 0;
    for p in parts {
        out.view_mut((0, at), (n, p.ncols())).copy_from(p);
        at += p.ncols();
    }
    out
}

/// Builds `S_h`, `τ` and the eigenbasis explicitly, forms
/// `W = (V_+ ∩ ker τ) + (V_- ∩ ker τ)`, and tests the four intersections on
/// the orthogonal complement of `W` by ranks, with singular values below
/// `tol·max(σ_max, 1)` treated as zero.
pub fn numeric_oracle(inst: &Instance, h: &GroupElement, k: u64, m: u64, tol: f64) -> Result<NumericVerdict> {
    if inst.q() > MAX_ORACLE_Q {
        return Err(Error::DimensionTooLarge(inst.psl.num_points()));
    }
    let p = inst.p();
    let eig = eigen_data(p, k, m)?;
    let tau = if inst.is_odd() { build_tau_h(inst, h)? } else { build_tau_even(inst)? }.to_complex();
    let zg = GroupRing::new(&inst.psl);
    let u = zg.bass_unit(&BassUnitSpec { base: inst.gens.a, k, m })?;
    let s = group_ring_matrix_f64(&inst.psl, &zg.conjugate_unit(&u, h));
    let n = inst.psl.num_points();
    let r = Ranker { tol };

    let lambda_max = (0..p).map(|b| bass_eigenvalue(p, k, m, b).norm()).fold(0.0, f64::max);
    let (mut plus, mut minus, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    let mut eigen_residual: f64 = 0.0;
    for x in inst.psl.points() {
        let e = eigenvector(inst, h, x);
        let b = inst.tab.decompose_point(x).b as u64;
        let lambda = bass_eigenvalue(p, k, m, b);
        eigen_residual = eigen_residual.max((&s * &e - &e * lambda).norm() / lambda_max);
        let pm = |t: u64| b == t || b == p - t;
        if pm(eig.b_plus) {
            plus.push(e);
        } else if pm(eig.b_minus) {
            minus.push(e);
        } else {
            rest.push(e);
        }
    }
    let cols = |v: &[nalgebra::DVector<Complex64>]| {
        if v.is_empty() {
            CMat::zeros(n, 0)
        } else {
            CMat::from_columns(v)
        }
    };
    let (bp, bm, b0) = (cols(&plus), cols(&minus), cols(&rest));

    let wp = &bp * r.null(&(&tau * &bp));
    let wm = &bm * r.null(&(&tau * &bm));
    let w = r.range(&hcat(&[&wp, &wm]));
    let proj = CMat::identity(n, n) - &w * w.adjoint();

    let pb = |b: &CMat| &proj * b;
    let ptau = &proj * &tau;
    let dim_plus = r.rank(&pb(&bp));
    let dim_minus = r.rank(&pb(&bm));
    let kernel_trivial = |b: &CMat| r.rank(&(&proj * &tau * b)) == r.rank(&pb(b));
    let image_trivial = |b: &CMat| {
        let sum = pb(&hcat(&[&b0, b]));
        r.rank(&hcat(&[&ptau, &sum])) == r.rank(&ptau) + r.rank(&sum)
    };
    let out = NumericVerdict {
        dim_v_plus_bar: dim_plus,
        dim_v_minus_bar: dim_minus,
        plus_kernel_trivial: kernel_trivial(&bp),
        minus_kernel_trivial: kernel_trivial(&bm),
        image_meets_plus_trivially: image_trivial(&bp),
        image_meets_minus_trivially: image_trivial(&bm),
        eigen_residual,
        verdict: false,
    };
    let verdict = out.dim_v_plus_bar > 0
        && out.dim_v_minus_bar > 0
        && out.plus_kernel_trivial
        && out.minus_kernel_trivial
        && out.image_meets_plus_trivially
        && out.image_meets_minus_trivially;
    Ok(NumericVerdict { verdict, ..out })
}
