//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Every sublattice of `ℤ^d` is stored by its row-style Hermite normal form:
//! rows are nonzero, pivots strictly increase left to right, pivots are
//! positive and the entries above each pivot lie in `[0, pivot)`. Two
//! lattices are equal exactly when their bases are identical.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Int = BigInt;

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Int::zero(); rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Int>>) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols,
            entries,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| to_int_vec(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Int {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Int) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &[Int]) -> Result<Vec<Int>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }
}

pub fn to_int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

fn first_nonzero(v: &[Int]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

/// `dst -= q * src`
fn sub_multiple(dst: &mut [Int], q: &Int, src: &[Int]) {
    if q.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

/// Incrementally maintained echelon basis. Rows are kept sorted by pivot and
/// every row is unimodularly equivalent to the inserted generators.
#[derive(Clone, Debug)]
struct Echelon {
    dim: usize,
    rows: Vec<Vec<Int>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn insert(&mut self, mut v: Vec<Int>) {
        debug_assert_eq!(v.len(), self.dim);
        let mut start = 0;
        loop {
            let Some(p) = v[start..].iter().position(|x| !x.is_zero()).map(|i| i + start) else {
                return;
            };
            match self.pivots.binary_search(&p) {
                Err(pos) => {
                    if v[p].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.rows.insert(pos, v);
                    self.pivots.insert(pos, p);
                    self.reduce_row(pos);
                    return;
                }
                Ok(pos) => {
                    let a = self.rows[pos][p].clone();
                    let c = v[p].clone();
                    let (q, r) = c.div_mod_floor(&a);
                    if r.is_zero() {
                        sub_multiple(&mut v, &q, &self.rows[pos]);
                    } else {
                        let eg = a.extended_gcd(&c);
                        let (ag, cg) = (&a / &eg.gcd, &c / &eg.gcd);
                        let b = &self.rows[pos];
                        let new_b: Vec<Int> = b
                            .iter()
                            .zip(&v)
                            .map(|(bi, vi)| &eg.x * bi + &eg.y * vi)
                            .collect();
                        let new_v: Vec<Int> =
                            b.iter().zip(&v).map(|(bi, vi)| &ag * vi - &cg * bi).collect();
                        self.rows[pos] = new_b;
                        if self.rows[pos][p].is_negative() {
                            self.rows[pos].iter_mut().for_each(|x| *x = -&*x);
                        }
                        self.reduce_row(pos);
                        v = new_v;
                    }
                    start = p + 1;
                    // Keep the remaining vector small against later pivots.
                    for k in pos + 1..self.rows.len() {
                        let pk = self.pivots[k];
                        if !v[pk].is_zero() {
                            let (q, r) = v[pk].div_mod_floor(&self.rows[k][pk]);
                            if r.is_zero() {
                                let row = self.rows[k].clone();
                                sub_multiple(&mut v, &q, &row);
                            }
                        }
                    }
                }
            }
        }
    }

    /// Reduce row `pos` against all rows with a larger pivot.
    fn reduce_row(&mut self, pos: usize) {
        for k in pos + 1..self.rows.len() {
            let pk = self.pivots[k];
            let q = self.rows[pos][pk].div_floor(&self.rows[k][pk]);
            if !q.is_zero() {
                let (head, tail) = self.rows.split_at_mut(k);
                sub_multiple(&mut head[pos], &q, &tail[0]);
            }
        }
    }

    fn finish(mut self) -> IntLattice {
        for j in 0..self.rows.len() {
            let pj = self.pivots[j];
            let (head, tail) = self.rows.split_at_mut(j);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                let q = row[pj].div_floor(&pivot_row[pj]);
                sub_multiple(row, &q, pivot_row);
            }
        }
        IntLattice {
            dim: self.dim,
            basis: self.rows,
        }
    }
}

/// A finitely generated subgroup of `ℤ^d` in canonical Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntLattice {
    dim: usize,
    basis: Vec<Vec<Int>>,
}

/// Rank and torsion of a quotient of lattices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientInfo {
    pub rank: usize,
    /// Elementary divisors greater than one.
    pub divisors: Vec<Int>,
}

impl QuotientInfo {
    pub fn is_free(&self) -> bool {
        self.divisors.is_empty()
    }
}

impl IntLattice {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            basis: Vec::new(),
        }
    }

    pub fn full(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| {
                let mut v = vec![Int::zero(); dim];
                v[i] = Int::one();
                v
            })
            .collect();
        Self { dim, basis }
    }

    pub fn from_generators<I>(dim: usize, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Int>>,
    {
        let mut ech = Echelon::new(dim);
        for g in gens {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: g.len(),
                });
            }
            ech.insert(g);
        }
        Ok(ech.finish())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| first_nonzero(r).expect("HNF rows are nonzero"))
            .collect()
    }

    /// Canonical representative of `v` modulo the lattice: entries at pivot
    /// columns land in `[0, pivot)`.
    pub fn reduce(&self, v: &[Int]) -> Result<Vec<Int>> {
        self.check_dim(v.len())?;
        let mut v = v.to_vec();
        for row in &self.basis {
            let p = first_nonzero(row).unwrap();
            let q = v[p].div_floor(&row[p]);
            sub_multiple(&mut v, &q, row);
        }
        Ok(v)
    }

    /// Integer coordinates of `v` in the HNF basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[Int]) -> Result<Option<Vec<Int>>> {
        self.check_dim(v.len())?;
        let mut v = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let p = first_nonzero(row).unwrap();
            if v[..p].iter().any(|x| !x.is_zero()) {
                return Ok(None);
            }
            let (q, r) = v[p].div_mod_floor(&row[p]);
            if !r.is_zero() {
                return Ok(None);
            }
            sub_multiple(&mut v, &q, row);
            coords.push(q);
        }
        Ok(v.iter().all(Zero::is_zero).then_some(coords))
    }

    pub fn member(&self, v: &[Int]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains(&self, other: &IntLattice) -> Result<bool> {
        self.check_dim(other.dim)?;
        for v in &other.basis {
            if !self.member(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &IntLattice) -> Result<IntLattice> {
        self.check_dim(other.dim)?;
        IntLattice::from_generators(
            self.dim,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    /// Lattice spanned by `self` together with the extra vectors.
    pub fn extend<I>(&self, extra: I) -> Result<IntLattice>
    where
        I: IntoIterator<Item = Vec<Int>>,
    {
        IntLattice::from_generators(self.dim, self.basis.iter().cloned().chain(extra))
    }

    /// Whether `ℤ^d / self` is torsion-free.
    pub fn is_saturated(&self) -> bool {
        let full = IntLattice::full(self.dim);
        quotient_rank(&full, self)
            .map(|q| q.is_free())
            .unwrap_or(false)
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                got,
            })
        }
    }
}

/// Hermite normal form of the row lattice of `m`.
pub fn hnf(m: &IntMatrix) -> IntLattice {
    IntLattice::from_generators(m.cols(), m.row_vecs()).expect("rows have matrix width")
}

/// The right null lattice `{x ∈ ℤ^cols : m·x = 0}`, which is always saturated.
pub fn kernel(m: &IntMatrix) -> IntLattice {
    let (r, c) = (m.rows(), m.cols());
    let mut ech = Echelon::new(r + c);
    for i in 0..c {
        let mut v = vec![Int::zero(); r + c];
        for k in 0..r {
            v[k] = m.get(k, i).clone();
        }
        v[r + i] = Int::one();
        ech.insert(v);
    }
    let gens: Vec<Vec<Int>> = ech
        .rows
        .into_iter()
        .zip(ech.pivots)
        .filter(|(_, p)| *p >= r)
        .map(|(row, _)| row[r..].to_vec())
        .collect();
    IntLattice::from_generators(c, gens).expect("kernel vectors have matrix width")
}

/// The left null lattice `{y ∈ ℤ^rows : y·m = 0}`.
pub fn left_kernel(m: &IntMatrix) -> IntLattice {
    kernel(&m.transpose())
}

/// One integer solution of `m·x = rhs`, if any exists.
pub fn solve(m: &IntMatrix, rhs: &[Int]) -> Result<Option<Vec<Int>>> {
    if rhs.len() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: rhs.len(),
        });
    }
    solve_system(
        m.cols(),
        (0..m.rows()).map(|r| (m.row(r).to_vec(), rhs[r].clone())),
    )
}

/// One integer solution of a system given as `(coefficients, rhs)` rows.
///
/// The rows are first compressed to the Hermite basis of the augmented row
/// lattice, which leaves the integer solution set unchanged, so very tall
/// systems cost no more than square ones afterwards.
pub fn solve_system<I>(cols: usize, equations: I) -> Result<Option<Vec<Int>>>
where
    I: IntoIterator<Item = (Vec<Int>, Int)>,
{
    let mut ech = Echelon::new(cols + 1);
    for (mut row, rhs) in equations {
        if row.len() != cols {
            return Err(Error::DimensionMismatch {
                expected: cols,
                got: row.len(),
            });
        }
        row.push(rhs);
        ech.insert(row);
    }
    let compressed = ech.finish();
    let mut aug = IntMatrix::zeros(compressed.rank(), cols + 1);
    for (r, row) in compressed.basis().iter().enumerate() {
        aug.set(r, 0, -&row[cols]);
        for c in 0..cols {
            aug.set(r, c + 1, row[c].clone());
        }
    }
    let k = kernel(&aug);
    Ok(k.basis()
        .first()
        .filter(|row| row[0].is_one())
        .map(|row| row[1..].to_vec()))
}

/// `(rank(big) - rank(small), torsion divisors of big / small)`.
pub fn quotient_rank(big: &IntLattice, small: &IntLattice) -> Result<QuotientInfo> {
    let coords = coordinate_matrix(big, small)?;
    let diag = smith_diagonal(coords, big.rank());
    Ok(QuotientInfo {
        rank: big.rank() - small.rank(),
        divisors: diag.into_iter().filter(|d| !d.is_one()).collect(),
    })
}

fn coordinate_matrix(big: &IntLattice, small: &IntLattice) -> Result<Vec<Vec<Int>>> {
    big.check_dim(small.dim)?;
    small
        .basis
        .iter()
        .map(|v| big.coordinates(v)?.ok_or(Error::ContainmentViolation))
        .collect()
}

/// Lifts of a minimal generating set of `big / small`, together with the
/// quotient's shape. Lifts are reduced modulo `small`.
pub fn quotient_generators(
    big: &IntLattice,
    small: &IntLattice,
) -> Result<(QuotientInfo, Vec<Vec<Int>>)> {
    let coords = coordinate_matrix(big, small)?;
    let mut snf = Smith::new(coords, big.rank());
    snf.track = Some(big.basis.clone());
    snf.run();
    let r = big.rank();
    let diag = snf.diagonal();
    let g = snf.track.take().unwrap();
    let mut lifts = Vec::new();
    for (i, row) in g.into_iter().enumerate().take(r) {
        let d = diag.get(i).cloned().unwrap_or_else(Int::zero);
        if !d.is_one() {
            let mut v = small.reduce(&row)?;
            if first_nonzero(&v).is_some_and(|p| v[p].is_negative()) {
                v.iter_mut().for_each(|x| *x = -&*x);
            }
            lifts.push(v);
        }
    }
    let info = QuotientInfo {
        rank: r - small.rank(),
        divisors: diag.into_iter().filter(|d| !d.is_one()).collect(),
    };
    Ok((info, lifts))
}

/// Nonzero invariant factors of an integer matrix given by rows.
pub fn smith_diagonal(rows: Vec<Vec<Int>>, cols: usize) -> Vec<Int> {
    let mut snf = Smith::new(rows, cols);
    snf.run();
    snf.diagonal()
}

/// Smith reduction. When `track` is set, column operations on the matrix are
/// mirrored as inverse row operations on the tracked basis, so that the
/// tracked rows stay a basis adapted to the diagonal form.
struct Smith {
    a: Vec<Vec<Int>>,
    cols: usize,
    done: usize,
    track: Option<Vec<Vec<Int>>>,
}

impl Smith {
    fn new(a: Vec<Vec<Int>>, cols: usize) -> Self {
        Self {
            a,
            cols,
            done: 0,
            track: None,
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(g) = &mut self.track {
            g.swap(i, j);
        }
    }

    /// `col_j -= q * col_i`
    fn col_sub(&mut self, j: usize, q: &Int, i: usize) {
        for row in &mut self.a {
            let t = q * &row[i];
            row[j] -= t;
        }
        if let Some(g) = &mut self.track {
            // inverse: row_i += q * row_j
            let rj = g[j].clone();
            for (x, y) in g[i].iter_mut().zip(&rj) {
                *x += q * y;
            }
        }
    }

    fn row_sub(&mut self, j: usize, q: &Int, i: usize) {
        let ri = self.a[i].clone();
        sub_multiple(&mut self.a[j], q, &ri);
    }

    fn run(&mut self) {
        let rows = self.a.len();
        let cols = self.cols;
        while self.done < rows.min(cols) {
            let t = self.done;
            // smallest nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !self.a[i][j].is_zero()
                        && best.map_or(true, |(bi, bj)| {
                            self.a[i][j].abs() < self.a[bi][bj].abs()
                        })
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            self.a.swap(t, bi);
            self.swap_cols(t, bj);
            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&self.a[t][t]);
                        self.row_sub(i, &q, t);
                        if !self.a[i][t].is_zero() {
                            self.a.swap(t, i);
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..cols {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&self.a[t][t]);
                        self.col_sub(j, &q, t);
                        if !self.a[t][j].is_zero() {
                            self.swap_cols(t, j);
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    continue;
                }
                // divisibility of the trailing block
                let mut bad = None;
                'scan: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if !self.a[i][j].is_multiple_of(&self.a[t][t]) {
                            bad = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad {
                    Some(i) => {
                        let q = Int::from(-1);
                        self.row_sub(t, &q, i);
                    }
                    None => break,
                }
            }
            self.done += 1;
        }
    }

    fn diagonal(&self) -> Vec<Int> {
        (0..self.done).map(|i| self.a[i][i].abs()).collect()
    }
}
