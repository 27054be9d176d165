//! Checks for CW left regular bands: gradedness, the two-cover condition, the
//! quiver being the Hasse diagram of `Λ(B)`, and the statement that `I` is
//! generated by a signed sum of all length-2 paths.

use num_traits::Zero;
use serde::Serialize;

use crate::band::{GreenData, MulTable};
use crate::error::{Error, Result};
use crate::intlattice::{left_kernel, Int, IntLattice, IntMatrix};
use crate::pathalg::TruncatedPathAlgebra;
use crate::presentation::{ideal_closure, psi_images, Presentation};
use crate::quiver::Quiver;
use crate::support::SupportLattice;
use crate::zalgebra::AlgElem;

/// Largest arrow count the sign search accepts.
pub const MAX_SIGN_ARROWS: usize = 20;

fn r_covers(t: &MulTable, g: &GreenData) -> Vec<(usize, usize)> {
    let n = t.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if g.lt_r(a, b) && !(0..n).any(|c| g.lt_r(a, c) && g.lt_r(c, b)) {
                out.push((a, b));
            }
        }
    }
    out
}

/// `B` under `≤_R` and `Λ(B)` are graded and `σ` preserves rank.
pub fn graded_check(t: &MulTable, lat: &SupportLattice) -> Result<bool> {
    t.require_left_regular()?;
    let g = t.green()?;
    let n = t.n();
    // longest chain below each element, filled in order of principal ideal size
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&b| (0..n).filter(|&a| g.lt_r(a, b)).count());
    let covers = r_covers(t, &g);
    let mut rank = vec![0usize; n];
    for &b in &order {
        rank[b] = covers.iter().filter(|&&(_, c)| c == b).map(|&(a, _)| rank[a] + 1).max().unwrap_or(0);
    }
    let b_graded = covers.iter().all(|&(a, b)| rank[b] == rank[a] + 1);
    let l_graded = lat.hasse_edges().iter().all(|&(x, y)| lat.rank(y) == lat.rank(x) + 1);
    let preserves = (0..n).all(|b| rank[b] == lat.rank(lat.sigma(b)));
    Ok(b_graded && l_graded && preserves)
}

/// Elements of support `x` covered by `b` in the `≤_R` order.
fn covered_in(t: &MulTable, lat: &SupportLattice, g: &GreenData, b: usize, x: usize) -> Vec<usize> {
    lat.class(x)
        .iter()
        .copied()
        .filter(|&a| g.lt_r(a, b) && !(0..t.n()).any(|c| g.lt_r(a, c) && g.lt_r(c, b)))
        .collect()
}

/// Every `b` covers exactly two elements of each support `X ⋖ σ(b)`; also
/// requires [`graded_check`].
pub fn two_cover_check(t: &MulTable, lat: &SupportLattice) -> Result<bool> {
    if !graded_check(t, lat)? {
        return Ok(false);
    }
    let g = t.green()?;
    for b in 0..t.n() {
        let s = lat.sigma(b);
        for x in (0..lat.m()).filter(|&x| lat.covers(x, s)) {
            if covered_in(t, lat, &g, b, x).len() != 2 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One arrow per covering pair, pointing up, and nothing else.
pub fn quiver_is_hasse(q: &Quiver, lat: &SupportLattice) -> bool {
    let mut arrows: Vec<(usize, usize)> = q.arrows.iter().map(|a| (a.source, a.target)).collect();
    arrows.sort_unstable();
    let mut hasse = lat.hasse_edges();
    hasse.sort_unstable();
    arrows == hasse
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CwReport {
    pub graded_ok: bool,
    pub two_cover_ok: bool,
    pub quiver_is_hasse: bool,
    /// Each arrow `X → Y` is labelled by one of the two support-`X` elements
    /// covered by `f_Y`, the other being `f_Y·f_X`.
    pub arrow_pairs_ok: bool,
    /// Sign per arrow, in arrow order.
    pub sign_vector: Option<Vec<i8>>,
    pub length_two_paths: usize,
    pub kernel_rank: usize,
    pub quotient_rank: usize,
    /// The ideal generated by the signed sum of length-2 paths equals `ker ψ_s`.
    pub kernel_equals_r: bool,
}

impl CwReport {
    pub fn passed(&self) -> bool {
        self.graded_ok && self.two_cover_ok && self.quiver_is_hasse && self.arrow_pairs_ok && self.kernel_equals_r
    }
}

fn arrow_pairs_ok(pres: &Presentation) -> Result<bool> {
    let t = &pres.table;
    let lat = &pres.lattice;
    let g = t.green()?;
    Ok(pres.quiver.arrows.iter().all(|a| {
        let fy = lat.basepoint(a.target);
        let covered = covered_in(t, lat, &g, fy, a.source);
        let base = t.mul(fy, lat.basepoint(a.source));
        covered.len() == 2 && covered.contains(&base) && covered.contains(&a.label) && a.label != base
    }))
}

fn sign_of(bits: u64, arrow: usize) -> i8 {
    if arrow > 0 && bits >> (arrow - 1) & 1 == 1 {
        -1
    } else {
        1
    }
}

/// Searches sign vectors (first arrow fixed to `+1`) for which `ψ_s` kills
/// the signed sum `r` of all length-2 paths, then compares the ideal
/// generated by `r` with `ker ψ_s` inside the truncation.
pub fn verify_cw_theorem(pres: &Presentation) -> Result<CwReport> {
    let t = &pres.table;
    let lat = &pres.lattice;
    let q = &pres.quiver;
    let graded_ok = graded_check(t, lat)?;
    let two_cover_ok = graded_ok && two_cover_check(t, lat)?;
    let is_hasse = quiver_is_hasse(q, lat);
    let pairs_ok = arrow_pairs_ok(pres)?;
    let mut report = CwReport {
        graded_ok,
        two_cover_ok,
        quiver_is_hasse: is_hasse,
        arrow_pairs_ok: pairs_ok,
        sign_vector: None,
        length_two_paths: 0,
        kernel_rank: 0,
        quotient_rank: 0,
        kernel_equals_r: false,
    };
    if !(two_cover_ok && is_hasse) {
        return Ok(report);
    }
    let k = q.arrows.len();
    if k > MAX_SIGN_ARROWS {
        return Err(Error::GuardExceeded { arrows: k, max: MAX_SIGN_ARROWS });
    }
    let alg = TruncatedPathAlgebra::new(q.shape(), pres.cutoff().max(3))?;
    let images = psi_images(t, lat, &pres.idems, q, &alg);
    let two: Vec<usize> = alg.paths_of_length(2).collect();
    report.length_two_paths = two.len();
    let n = t.n();
    let d = alg.rank();
    let path_sign = |bits: u64, i: usize| -> i8 { alg.basis()[i].arrows().iter().map(|&a| sign_of(bits, a)).product() };

    let mut r = vec![Int::zero(); d];
    for &i in &two {
        r[i] = Int::from(1);
    }
    let closure = ideal_closure(&alg, &[r])?;

    let mut first_killing = None;
    for bits in 0..(1u64 << k.saturating_sub(1)) {
        let mut sum = AlgElem::zero(n);
        for &i in &two {
            let img = &images[i];
            sum = if path_sign(bits, i) > 0 { &sum + img } else { &sum - img };
        }
        if !sum.is_zero() {
            continue;
        }
        let signed: Vec<AlgElem> = (0..d)
            .map(|i| if path_sign(bits, i) > 0 { images[i].clone() } else { -&images[i] })
            .collect();
        let kernel = signed_kernel(n, &alg, &signed);
        let equal = kernel == closure;
        if first_killing.is_none() || equal {
            first_killing = Some((bits, kernel, equal));
        }
        if equal {
            break;
        }
    }
    let (bits, kernel, equal) = first_killing.ok_or(Error::NoSignWorks)?;
    report.sign_vector = Some((0..k).map(|a| sign_of(bits, a)).collect());
    report.kernel_rank = kernel.rank();
    report.quotient_rank = d - kernel.rank();
    report.kernel_equals_r = equal;
    Ok(report)
}

fn signed_kernel(n: usize, alg: &TruncatedPathAlgebra, images: &[AlgElem]) -> IntLattice {
    let rows: Vec<Vec<Int>> = images.iter().map(|e| e.coeffs().to_vec()).collect();
    let m = IntMatrix::from_rows(n, rows).expect("image width");
    let k = left_kernel(&m);
    debug_assert_eq!(k.dim(), alg.rank());
    k
}
