//! Path algebras of finite quivers and their truncations `ℤQ / J^L`.
//!
//! Paths compose right to left: a path is written `e_k ⋯ e_1` with
//! `t(e_i) = s(e_{i+1})`, and `p·q` is the concatenation when `s(p) = t(q)`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlattice::{Int, IntLattice};

/// Largest basis any truncation will enumerate.
pub const MAX_PATHS: usize = 100_000;

/// Vertices `0..vertices`, arrows as `(source, target)` pairs indexed by id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverShape {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Path {
    source: usize,
    target: usize,
    /// Arrow ids in written order `e_k, …, e_1`.
    arrows: Vec<usize>,
}

impl Path {
    pub fn lazy(v: usize) -> Self {
        Self { source: v, target: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &QuiverShape, id: usize) -> Self {
        let (s, t) = q.arrows[id];
        Self { source: s, target: t, arrows: vec![id] }
    }

    /// Builds a path from arrow ids in written order, checking the chaining.
    pub fn from_arrows(q: &QuiverShape, written: &[usize]) -> Option<Self> {
        let (&last, rest) = written.split_last()?;
        let mut p = Self::arrow(q, last);
        for &a in rest.iter().rev() {
            p = Self::arrow(q, a).compose(&p)?;
        }
        Some(p)
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_lazy(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    /// `self · other`, defined when `s(self) = t(other)`.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.source != other.target {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: other.source, target: self.target, arrows })
    }

    pub fn display<'a>(&'a self, arrow_names: &'a [String], vertex_names: &'a [String]) -> impl fmt::Display + 'a {
        PathDisplay { path: self, arrow_names, vertex_names }
    }
}

struct PathDisplay<'a> {
    path: &'a Path,
    arrow_names: &'a [String],
    vertex_names: &'a [String],
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_lazy() {
            write!(f, "ε[{}]", self.vertex_names[self.path.source])
        } else {
            for &a in &self.path.arrows {
                write!(f, "{}", self.arrow_names[a])?;
            }
            Ok(())
        }
    }
}

/// All paths of length `< cutoff`, ordered by length and then
/// lexicographically by arrow ids (lazy paths by vertex).
pub fn enumerate_paths(q: &QuiverShape, cutoff: usize) -> Result<Vec<Path>> {
    if cutoff == 0 {
        return Err(Error::Malformed("truncation cutoff must be at least 1".into()));
    }
    let mut out: Vec<Path> = (0..q.vertices).map(Path::lazy).collect();
    let mut level: Vec<Path> = out.clone();
    for len in 1..cutoff {
        let mut next = Vec::new();
        for p in &level {
            for (id, &(s, _)) in q.arrows.iter().enumerate() {
                if s == p.target {
                    let a = Path::arrow(q, id);
                    let np = a.compose(p).expect("chained");
                    next.push(np);
                }
            }
            if out.len() + next.len() > MAX_PATHS {
                return Err(Error::Explosion { max: MAX_PATHS });
            }
        }
        if len == 1 {
            next.sort_by_key(|p| p.arrows[0]);
        } else {
            next.sort_by(|a, b| a.arrows.cmp(&b.arrows));
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    Ok(out)
}

pub fn is_acyclic(q: &QuiverShape) -> bool {
    topological_order(q).is_some()
}

fn topological_order(q: &QuiverShape) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; q.vertices];
    for &(_, t) in &q.arrows {
        indeg[t] += 1;
    }
    let mut stack: Vec<usize> = (0..q.vertices).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(q.vertices);
    while let Some(v) = stack.pop() {
        order.push(v);
        for &(s, t) in &q.arrows {
            if s == v {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
    }
    (order.len() == q.vertices).then_some(order)
}

/// Number of paths in the untruncated path algebra; `None` if there is a
/// cycle (infinitely many paths).
pub fn total_path_count(q: &QuiverShape) -> Option<u128> {
    let order = topological_order(q)?;
    let mut from = vec![1u128; q.vertices];
    for &v in order.iter().rev() {
        for &(s, t) in &q.arrows {
            if s == v {
                from[v] = from[v].saturating_add(from[t]);
            }
        }
    }
    Some(from.iter().fold(0u128, |a, &b| a.saturating_add(b)))
}

/// `ℤQ / J^L` on the basis of paths of length `< L`.
#[derive(Clone, Debug)]
pub struct TruncatedPathAlgebra {
    shape: QuiverShape,
    cutoff: usize,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl TruncatedPathAlgebra {
    pub fn new(shape: QuiverShape, cutoff: usize) -> Result<Self> {
        let basis = enumerate_paths(&shape, cutoff)?;
        let index = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(Self { shape, cutoff, basis, index })
    }

    pub fn shape(&self) -> &QuiverShape {
        &self.shape
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn lazy_index(&self, v: usize) -> usize {
        v
    }

    pub fn arrow_index(&self, id: usize) -> Option<usize> {
        self.index_of(&Path::arrow(&self.shape, id))
    }

    /// Product of two basis paths: the index of the concatenation, or `None`
    /// when they do not compose or the result is truncated away.
    pub fn product(&self, i: usize, j: usize) -> Option<usize> {
        let p = self.basis[i].compose(&self.basis[j])?;
        self.index_of(&p)
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Int> {
        let mut v = vec![Int::zero(); self.rank()];
        v[i] = Int::one();
        v
    }

    pub fn identity(&self) -> Vec<Int> {
        let mut v = vec![Int::zero(); self.rank()];
        for x in 0..self.shape.vertices {
            v[x] = Int::one();
        }
        v
    }

    /// Bilinear, truncation-aware product of coefficient vectors.
    pub fn multiply(&self, u: &[Int], v: &[Int]) -> Result<Vec<Int>> {
        for w in [u, v] {
            if w.len() != self.rank() {
                return Err(Error::DimensionMismatch { expected: self.rank(), got: w.len() });
            }
        }
        let mut out = vec![Int::zero(); self.rank()];
        let vs: Vec<(usize, &Int)> = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (i, ci) in u.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for &(j, cj) in &vs {
                if let Some(k) = self.product(i, j) {
                    out[k] += ci * cj;
                }
            }
        }
        Ok(out)
    }

    /// `J^k` in the truncation: span of the paths of length `≥ k`.
    pub fn arrow_ideal_power(&self, k: usize) -> IntLattice {
        let d = self.rank();
        let gens = (0..d).filter(|&i| self.basis[i].len() >= k).map(|i| self.unit_vector(i));
        IntLattice::from_generators(d, gens).expect("unit vectors")
    }

    /// Basis indices of paths from `v` to `w`.
    pub fn pair_indices(&self, v: usize, w: usize) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| self.basis[i].source == v && self.basis[i].target == w)
            .collect()
    }

    pub fn paths_of_length(&self, len: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&i| self.basis[i].len() == len)
    }
}
