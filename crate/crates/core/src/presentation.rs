//! `ψ: ℤQ(B) → ℤB`, its kernel `I`, minimal relations and the certificates
//! backing `ℤB ≅ ℤQ(B)/I`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::band::MulTable;
use crate::error::{Error, Result};
use crate::intlattice::{left_kernel, quotient_generators, quotient_rank, Int, IntLattice, IntMatrix, QuotientInfo};
use crate::json;
use crate::pathalg::{is_acyclic, total_path_count, Path, TruncatedPathAlgebra};
use crate::quiver::{arrow_image, peirce_tor1, Quiver};
use crate::support::SupportLattice;
use crate::zalgebra::{mul_unchecked, AlgElem, IdempotentSystem};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Certificates {
    /// `ψ` maps onto all of `ℤB`.
    pub surjective: bool,
    /// Every kernel vector vanishes on lazy paths and arrows.
    pub i_in_j2: bool,
    /// `ψ` kills every path of length `L`.
    pub jn_in_i: bool,
    /// `rank(truncation) − rank(I_L) = |B|`.
    pub rank_match: bool,
    /// Set by [`verify_isomorphism`].
    pub iso_verified: bool,
}

impl Certificates {
    pub fn admissible(&self) -> bool {
        self.surjective && self.i_in_j2 && self.jn_in_i && self.rank_match
    }

    pub fn all(&self) -> bool {
        self.admissible() && self.iso_verified
    }
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub table: MulTable,
    pub lattice: SupportLattice,
    pub idems: IdempotentSystem,
    pub quiver: Quiver,
    /// `ℤQ/J^L` with `L` the cutoff.
    pub algebra: TruncatedPathAlgebra,
    /// `ψ` of each basis path of the truncation.
    pub images: Vec<AlgElem>,
    /// `I_L`, the kernel of `ψ` inside the truncation.
    pub kernel: IntLattice,
    pub certificates: Certificates,
}

/// `ψ` on every basis path: lazy paths go to idempotents, arrows to
/// `e_Y(t − f_Y f_X)e_X`, longer paths to ordered products.
pub fn psi_images(
    t: &MulTable,
    lat: &SupportLattice,
    idems: &IdempotentSystem,
    q: &Quiver,
    alg: &TruncatedPathAlgebra,
) -> Vec<AlgElem> {
    let arrow_images: Vec<AlgElem> =
        q.arrows.iter().map(|a| arrow_image(t, lat, idems, a.source, a.target, a.label)).collect();
    let mut out: Vec<AlgElem> = Vec::with_capacity(alg.rank());
    for p in alg.basis() {
        let img = match p.arrows() {
            [] => idems.e(p.source()).clone(),
            [a] => arrow_images[*a].clone(),
            [first, rest @ ..] => {
                let tail = Path::from_arrows(alg.shape(), rest).expect("subpath of a path");
                let k = alg.index_of(&tail).expect("shorter paths come first");
                mul_unchecked(t, &arrow_images[*first], &out[k])
            }
        };
        out.push(img);
    }
    out
}

/// Endpoint pairs `(source, target)` that carry at least one basis path.
fn endpoint_pairs(alg: &TruncatedPathAlgebra) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = alg.basis().iter().map(|p| (p.source(), p.target())).collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

/// `ker ψ` inside the truncation, assembled from the Peirce pieces
/// `ε_w·ℤQ·ε_v → e_w·ℤB·e_v`, which are independent.
fn kernel_of(n: usize, alg: &TruncatedPathAlgebra, images: &[AlgElem]) -> IntLattice {
    let d = alg.rank();
    let mut gens = Vec::new();
    for (v, w) in endpoint_pairs(alg) {
        let idx = alg.pair_indices(v, w);
        let rows: Vec<Vec<Int>> = idx.iter().map(|&i| images[i].coeffs().to_vec()).collect();
        let m = IntMatrix::from_rows(n, rows).expect("image width");
        for k in left_kernel(&m).basis() {
            let mut g = vec![Int::zero(); d];
            for (c, &i) in k.iter().zip(&idx) {
                g[i] = c.clone();
            }
            gens.push(g);
        }
    }
    IntLattice::from_generators(d, gens).expect("embedded kernel vectors")
}

/// Builds the presentation at cutoff `L = N` (or the override) and computes
/// the admissibility certificates. Failed certificates are reported, not
/// raised; see [`Presentation::require`].
pub fn compute_presentation(
    t: &MulTable,
    lat: &SupportLattice,
    idems: &IdempotentSystem,
    q: &Quiver,
    cutoff_override: Option<usize>,
) -> Result<Presentation> {
    let n = t.n();
    let cutoff = cutoff_override.unwrap_or(idems.nilpotency_index()).max(1);
    let algebra = TruncatedPathAlgebra::new(q.shape(), cutoff)?;
    let images = psi_images(t, lat, idems, q, &algebra);
    let kernel = kernel_of(n, &algebra, &images);

    let image = IntLattice::from_generators(n, images.iter().map(|e| e.coeffs().to_vec()))?;
    let surjective = image.rank() == n && quotient_rank(&IntLattice::full(n), &image)?.divisors.is_empty();
    let low: Vec<usize> = (0..algebra.rank()).filter(|&i| algebra.basis()[i].len() < 2).collect();
    let i_in_j2 = kernel.basis().iter().all(|g| low.iter().all(|&i| g[i].is_zero()));
    let jn_in_i = {
        let arrows: Vec<AlgElem> =
            q.arrows.iter().map(|a| arrow_image(t, lat, idems, a.source, a.target, a.label)).collect();
        algebra.paths_of_length(cutoff - 1).all(|i| {
            let p = &algebra.basis()[i];
            q.arrows
                .iter()
                .enumerate()
                .filter(|(_, a)| a.source == p.target())
                .all(|(k, _)| mul_unchecked(t, &arrows[k], &images[i]).is_zero())
        })
    };
    let rank_match = algebra.rank() - kernel.rank() == n;
    let certificates = Certificates { surjective, i_in_j2, jn_in_i, rank_match, iso_verified: false };
    Ok(Presentation {
        table: t.clone(),
        lattice: lat.clone(),
        idems: idems.clone(),
        quiver: q.clone(),
        algebra,
        images,
        kernel,
        certificates,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoCertificate {
    pub quotient_rank: usize,
    /// Torsion of the truncation modulo `I_L`; empty when free.
    #[serde(serialize_with = "ser_ints")]
    pub divisors: Vec<Int>,
    pub torsion_free: bool,
    pub bijective: bool,
    pub multiplicative: bool,
}

impl IsoCertificate {
    pub fn passed(&self) -> bool {
        self.torsion_free && self.bijective && self.multiplicative
    }
}

fn ser_ints<S: serde::Serializer>(v: &[Int], s: S) -> std::result::Result<S::Ok, S::Error> {
    json::ints(v).serialize(s)
}

/// Checks that `ψ` induces a ring isomorphism from the truncation modulo
/// `I_L` onto `ℤB`, and records the verdict in the certificates.
pub fn verify_isomorphism(pres: &mut Presentation) -> Result<IsoCertificate> {
    let n = pres.table.n();
    let alg = &pres.algebra;
    let info = quotient_rank(&IntLattice::full(alg.rank()), &pres.kernel)?;
    let torsion_free = info.is_free();
    let bijective = info.rank == n && pres.certificates.surjective;
    let zero = AlgElem::zero(n);
    let mut multiplicative = true;
    'outer: for i in 0..alg.rank() {
        for j in 0..alg.rank() {
            let lhs = mul_unchecked(&pres.table, &pres.images[i], &pres.images[j]);
            let rhs = alg.product(i, j).map_or(&zero, |k| &pres.images[k]);
            if &lhs != rhs {
                multiplicative = false;
                break 'outer;
            }
        }
    }
    let cert = IsoCertificate { quotient_rank: info.rank, divisors: info.divisors, torsion_free, bijective, multiplicative };
    pres.certificates.iso_verified = cert.passed();
    Ok(cert)
}

impl Presentation {
    pub fn cutoff(&self) -> usize {
        self.algebra.cutoff()
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn psi(&self, p: &Path) -> Option<&AlgElem> {
        self.algebra.index_of(p).map(|i| &self.images[i])
    }

    /// Raises [`Error::CertificateFailure`] naming the first failed check.
    pub fn require(&self) -> Result<()> {
        let c = &self.certificates;
        for (ok, what) in [
            (c.surjective, "ψ is not surjective"),
            (c.i_in_j2, "kernel not contained in J²"),
            (c.jn_in_i, "ψ does not kill J^L"),
            (c.rank_match, "rank of the quotient differs from |B|"),
        ] {
            if !ok {
                return Err(Error::CertificateFailure(what.into()));
            }
        }
        Ok(())
    }

    /// `I = 0` in the untruncated path algebra: the truncated kernel is zero
    /// and no path reaches the cutoff.
    pub fn ideal_is_zero(&self) -> Result<bool> {
        if !self.kernel.is_zero() {
            return Ok(false);
        }
        let longer = TruncatedPathAlgebra::new(self.quiver.shape(), self.cutoff() + 1)?;
        Ok(longer.rank() == self.algebra.rank())
    }

    pub fn path_name(&self, p: &Path) -> String {
        p.display(&self.quiver.arrow_names(), &self.quiver.vertex_names).to_string()
    }

    /// A coefficient vector over `alg`'s basis as a combination of path names.
    pub fn combination(&self, alg: &TruncatedPathAlgebra, v: &[Int]) -> String {
        let names = self.quiver.arrow_names();
        let mut s = String::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let path = alg.basis()[i].display(&names, &self.quiver.vertex_names).to_string();
            let mag = c.abs();
            match (s.is_empty(), c.is_negative()) {
                (true, false) => {}
                (true, true) => s.push('-'),
                (false, false) => s.push_str(" + "),
                (false, true) => s.push_str(" - "),
            }
            if !mag.is_one() {
                s.push_str(&mag.to_string());
            }
            s.push_str(&path);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

/// Smallest two-sided ideal of `alg` containing `gens`: closes the span under
/// multiplication by lazy paths and arrows on both sides until stable.
pub fn ideal_closure(alg: &TruncatedPathAlgebra, gens: &[Vec<Int>]) -> Result<IntLattice> {
    let d = alg.rank();
    let mut multipliers: Vec<usize> = (0..alg.shape().vertices).collect();
    multipliers.extend((0..alg.shape().arrows.len()).filter_map(|a| alg.arrow_index(a)));
    let mut current = IntLattice::from_generators(d, gens.iter().cloned())?;
    loop {
        let mut extra = Vec::new();
        for g in current.basis() {
            for &m in &multipliers {
                let u = alg.unit_vector(m);
                extra.push(alg.multiply(&u, g)?);
                extra.push(alg.multiply(g, &u)?);
            }
        }
        let next = current.extend(extra)?;
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Relation {
    pub source: usize,
    pub target: usize,
    /// Coefficients over the basis of the `L + 1` truncation.
    #[serde(serialize_with = "ser_ints")]
    pub coeffs: Vec<Int>,
    pub display: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRank {
    pub source: usize,
    pub target: usize,
    pub rank: usize,
    #[serde(serialize_with = "ser_ints")]
    pub divisors: Vec<Int>,
}

#[derive(Clone, Debug)]
pub struct MinimalRelations {
    /// `ℤQ/J^{L+1}`, the ambient of the relation vectors.
    pub algebra: TruncatedPathAlgebra,
    /// `I` inside that truncation.
    pub kernel: IntLattice,
    /// `IJ + JI` inside that truncation.
    pub decomposables: IntLattice,
    pub relations: Vec<Relation>,
    /// Rank of `ε_w(I/(IJ+JI))ε_v` per endpoint pair with a nonzero value.
    pub ranks: Vec<PairRank>,
    /// The ideal generated by the relations equals `I` in the truncation.
    pub generates: bool,
}

fn restrict(l: &IntLattice, idx: &[usize]) -> IntLattice {
    let gens = l.basis().iter().map(|v| idx.iter().map(|&i| v[i].clone()).collect::<Vec<_>>());
    IntLattice::from_generators(idx.len(), gens).expect("restricted width")
}

/// Lifts of a basis of `I/(IJ+JI)`, grouped by endpoint pair, computed in the
/// truncation at `L + 1` where `J^{L+1} ⊆ IJ` makes the quotient exact.
pub fn minimal_relations(pres: &Presentation) -> Result<MinimalRelations> {
    let t = &pres.table;
    let alg = TruncatedPathAlgebra::new(pres.quiver.shape(), pres.cutoff() + 1)?;
    let images = psi_images(t, &pres.lattice, &pres.idems, &pres.quiver, &alg);
    let kernel = kernel_of(t.n(), &alg, &images);
    let d = alg.rank();
    let arrows: Vec<Vec<Int>> =
        (0..pres.quiver.arrows.len()).filter_map(|a| alg.arrow_index(a)).map(|i| alg.unit_vector(i)).collect();
    let mut gens = Vec::new();
    for g in kernel.basis() {
        for a in &arrows {
            gens.push(alg.multiply(g, a)?);
            gens.push(alg.multiply(a, g)?);
        }
    }
    let decomposables = IntLattice::from_generators(d, gens)?;

    let mut relations = Vec::new();
    let mut ranks = Vec::new();
    for (v, w) in endpoint_pairs(&alg) {
        let idx = alg.pair_indices(v, w);
        let big = restrict(&kernel, &idx);
        let small = restrict(&decomposables, &idx);
        let (info, lifts) = quotient_generators(&big, &small)?;
        if info.rank == 0 && info.divisors.is_empty() {
            continue;
        }
        ranks.push(PairRank { source: v, target: w, rank: info.rank, divisors: info.divisors });
        for lift in lifts {
            let mut coeffs = vec![Int::zero(); d];
            for (c, &i) in lift.into_iter().zip(&idx) {
                coeffs[i] = c;
            }
            let display = pres.combination(&alg, &coeffs);
            relations.push(Relation { source: v, target: w, coeffs, display });
        }
    }
    let rel_vecs: Vec<Vec<Int>> = relations.iter().map(|r| r.coeffs.clone()).collect();
    let generates = ideal_closure(&alg, &rel_vecs)? == kernel;
    Ok(MinimalRelations { algebra: alg, kernel, decomposables, relations, ranks, generates })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hereditary {
    pub acyclic: bool,
    /// Untruncated path count, absent for cyclic quivers.
    pub path_count: Option<u128>,
    pub ideal_zero: bool,
    pub hereditary: bool,
}

/// Acyclic quiver with exactly `|B|` paths, cross-checked against `I = 0`.
pub fn hereditary_test(pres: &Presentation) -> Result<Hereditary> {
    let shape = pres.quiver.shape();
    let acyclic = is_acyclic(&shape);
    let path_count = total_path_count(&shape);
    let hereditary = acyclic && path_count == Some(pres.n() as u128);
    let ideal_zero = pres.ideal_is_zero()?;
    if hereditary != ideal_zero {
        return Err(Error::TheoremViolation(format!(
            "hereditary test says {hereditary} but I = 0 is {ideal_zero}"
        )));
    }
    Ok(Hereditary { acyclic, path_count, ideal_zero, hereditary })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tor1Entry {
    pub source: usize,
    pub target: usize,
    /// Components of the local graph minus one.
    pub quiver: usize,
    /// Rank of `e_Y(𝒥/𝒥²)e_X` computed in `ℤB`.
    pub peirce: usize,
    pub peirce_free: bool,
    /// Rank of `ε_w(J/J²)ε_v` in `ℤQ/I`.
    pub path_side: usize,
}

impl Tor1Entry {
    pub fn agrees(&self) -> bool {
        self.quiver == self.peirce && self.peirce == self.path_side && self.peirce_free
    }
}

/// Tor₁ ranks for every ordered pair of supports, three ways.
pub fn tor1_table(pres: &Presentation) -> Result<Vec<Tor1Entry>> {
    let m = pres.lattice.m();
    let alg = TruncatedPathAlgebra::new(pres.quiver.shape(), pres.cutoff().max(2))?;
    let kernel = if alg.cutoff() == pres.cutoff() {
        pres.kernel.clone()
    } else {
        let images = psi_images(&pres.table, &pres.lattice, &pres.idems, &pres.quiver, &alg);
        kernel_of(pres.n(), &alg, &images)
    };
    let j1 = alg.arrow_ideal_power(1).sum(&kernel)?;
    let j2 = alg.arrow_ideal_power(2).sum(&kernel)?;
    let mut out = Vec::new();
    for x in 0..m {
        for y in 0..m {
            let quiver = pres.quiver.local_graph(x, y).map_or(0, |g| g.component_count() - 1);
            let pe: QuotientInfo = peirce_tor1(&pres.table, &pres.idems, x, y)?;
            let idx = alg.pair_indices(x, y);
            let path_side = if idx.is_empty() {
                0
            } else {
                quotient_rank(&restrict(&j1, &idx), &restrict(&j2, &idx))?.rank
            };
            out.push(Tor1Entry { source: x, target: y, quiver, peirce: pe.rank, peirce_free: pe.is_free(), path_side });
        }
    }
    Ok(out)
}
