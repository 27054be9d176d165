//! Finite semigroups given by Cayley tables, the band axioms, Green's
//! preorders and the standard fixture families.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest table any band operation will accept.
pub const MAX_ELEMENTS: usize = 512;

/// A finite semigroup (or candidate semigroup) on elements `0..n`.
///
/// Construction only checks that every product is in range; the semigroup
/// and band axioms are checked by [`MulTable::validate`] so that malformed
/// inputs can be loaded and diagnosed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulTable {
    n: usize,
    table: Vec<usize>,
    identity: Option<usize>,
    names: Vec<String>,
}

/// On-disk table format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default)]
    pub identity: Option<usize>,
    #[serde(default)]
    pub names: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandReport {
    pub is_semigroup: bool,
    pub is_band: bool,
    pub is_left_regular: bool,
    pub is_monoid: bool,
    /// First axiom failure found, if any.
    pub failure: Option<String>,
}

/// Green's preorders of a band: `a ≤_R b ⟺ ba = a`, `a ≤_L b ⟺ ab = a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenData {
    n: usize,
    leq_r: Vec<bool>,
    leq_l: Vec<bool>,
}

impl GreenData {
    pub fn leq_r(&self, a: usize, b: usize) -> bool {
        self.leq_r[a * self.n + b]
    }

    pub fn leq_l(&self, a: usize, b: usize) -> bool {
        self.leq_l[a * self.n + b]
    }

    pub fn lt_r(&self, a: usize, b: usize) -> bool {
        self.leq_r(a, b) && !self.leq_r(b, a)
    }

    pub fn lt_l(&self, a: usize, b: usize) -> bool {
        self.leq_l(a, b) && !self.leq_l(b, a)
    }
}

/// Fixed-width bitset over band elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet {
    words: Vec<u64>,
}

impl ElemSet {
    pub fn empty(n: usize) -> Self {
        Self {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            (0..64).filter(move |b| w & (1 << b) != 0).map(move |b| k * 64 + b)
        })
    }
}

impl MulTable {
    pub fn new(rows: Vec<Vec<usize>>, identity: Option<usize>, names: Option<Vec<String>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Malformed("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!(
                    "row {r} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (c, v) in row.into_iter().enumerate() {
                if v >= n {
                    return Err(Error::Range { row: r, col: c, value: v, n });
                }
                table.push(v);
            }
        }
        let names = match names {
            Some(names) if names.len() != n => {
                return Err(Error::Malformed(format!("{} names for {n} elements", names.len())))
            }
            Some(names) => names,
            None => (0..n).map(|i| format!("x{i}")).collect(),
        };
        let mut t = Self { n, table, identity: None, names };
        match identity {
            Some(e) if e >= n || !t.is_identity(e) => return Err(Error::InvalidIdentity(e)),
            Some(e) => t.identity = Some(e),
            None => t.identity = (0..n).find(|&e| t.is_identity(e)),
        }
        Ok(t)
    }

    fn from_fn(n: usize, names: Vec<String>, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows = (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
        Self::new(rows, None, Some(names))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: TableJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.n != raw.table.len() {
            return Err(Error::Malformed(format!(
                "n = {} but table has {} rows",
                raw.n,
                raw.table.len()
            )));
        }
        Self::new(raw.table, raw.identity, raw.names)
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            n: self.n,
            table: self.rows(),
            identity: self.identity,
            names: Some(self.names.clone()),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn mul3(&self, a: usize, b: usize, c: usize) -> usize {
        self.mul(self.mul(a, b), c)
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    fn is_identity(&self, e: usize) -> bool {
        (0..self.n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x)
    }

    /// The opposite semigroup, `a ∘ b = b · a`.
    pub fn opposite(&self) -> MulTable {
        let mut t = self.clone();
        for a in 0..self.n {
            for b in 0..self.n {
                t.table[a * self.n + b] = self.mul(b, a);
            }
        }
        t
    }

    /// Checks the semigroup, band, left-regular and monoid conditions.
    pub fn validate(&self) -> BandReport {
        let n = self.n;
        let mut failure = None;
        let mut is_semigroup = true;
        'assoc: for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        is_semigroup = false;
                        failure = Some(format!(
                            "associativity fails at ({}, {}, {})",
                            self.name(a),
                            self.name(b),
                            self.name(c)
                        ));
                        break 'assoc;
                    }
                }
            }
        }
        let non_idem = (0..n).find(|&x| self.mul(x, x) != x);
        if let (Some(x), None) = (non_idem, &failure) {
            failure = Some(format!("{0}·{0} ≠ {0}", self.name(x)));
        }
        let is_band = is_semigroup && non_idem.is_none();
        let is_left_regular = is_band
            && (0..n).all(|x| (0..n).all(|y| self.mul3(x, y, x) == self.mul(x, y)));
        BandReport {
            is_semigroup,
            is_band,
            is_left_regular,
            is_monoid: is_semigroup && self.identity.is_some(),
            failure,
        }
    }

    fn check_size(&self) -> Result<()> {
        if self.n > MAX_ELEMENTS {
            Err(Error::SizeLimit { what: "band elements", got: self.n, max: MAX_ELEMENTS })
        } else {
            Ok(())
        }
    }

    /// Fails with a diagnostic unless the table is a band of admissible size.
    pub fn require_band(&self) -> Result<BandReport> {
        self.check_size()?;
        let report = self.validate();
        if report.is_band {
            Ok(report)
        } else {
            Err(Error::NotABand(report.failure.clone().unwrap_or_default()))
        }
    }

    pub fn require_left_regular(&self) -> Result<()> {
        let report = self.require_band()?;
        if report.is_left_regular {
            Ok(())
        } else {
            Err(Error::NotLeftRegular("xyx ≠ xy for some x, y".into()))
        }
    }

    pub fn is_band(&self) -> bool {
        self.validate().is_band
    }

    pub fn is_left_regular(&self) -> bool {
        self.validate().is_left_regular
    }

    pub fn green(&self) -> Result<GreenData> {
        self.require_band()?;
        let n = self.n;
        let mut leq_r = vec![false; n * n];
        let mut leq_l = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq_r[a * n + b] = self.mul(b, a) == a;
                leq_l[a * n + b] = self.mul(a, b) == a;
            }
        }
        Ok(GreenData { n, leq_r, leq_l })
    }

    /// The two-sided principal ideal `BaB`, by direct closure.
    pub fn principal_ideal(&self, a: usize) -> ElemSet {
        let mut set = ElemSet::empty(self.n);
        for x in 0..self.n {
            let xa = self.mul(x, a);
            for y in 0..self.n {
                set.insert(self.mul(xa, y));
            }
        }
        set
    }

    pub fn principal_ideals(&self) -> Vec<ElemSet> {
        (0..self.n).map(|a| self.principal_ideal(a)).collect()
    }

    /// `BaB ∩ BbB = BabB` for all pairs, by exhaustive ideal enumeration.
    pub fn check_clifford(&self) -> Result<bool> {
        self.require_band()?;
        let ideals = self.principal_ideals();
        Ok((0..self.n).all(|a| {
            (0..self.n).all(|b| ideals[a].intersection(&ideals[b]) == ideals[self.mul(a, b)])
        }))
    }

    /// Swallowing (`a ∈ BbB ⇒ aba = a`) and deletion
    /// (`BaB = BcB ⊆ BbB ⇒ abc = ac`).
    pub fn check_swallow_delete(&self) -> Result<bool> {
        self.require_band()?;
        let ideals = self.principal_ideals();
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                if ideals[b].contains(a) && self.mul3(a, b, a) != a {
                    return Ok(false);
                }
                for c in 0..n {
                    if ideals[a] == ideals[c]
                        && ideals[a].is_subset(&ideals[b])
                        && self.mul3(a, b, c) != self.mul(a, c)
                    {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    // ---- constructors ----

    /// Left-zero band: `a·b = a`.
    pub fn left_zero(n: usize) -> Result<Self> {
        guard("left_zero", n, 1, MAX_ELEMENTS)?;
        Self::from_fn(n, (0..n).map(|i| format!("l{i}")).collect(), |a, _| a)
    }

    /// Right-zero band: `a·b = b`.
    pub fn right_zero(n: usize) -> Result<Self> {
        guard("right_zero", n, 1, MAX_ELEMENTS)?;
        Self::from_fn(n, (0..n).map(|i| format!("r{i}")).collect(), |_, b| b)
    }

    /// Rectangular band on pairs `(i, j)`, index `i·cols + j`, with
    /// `(i, j)·(k, l) = (i, l)`.
    pub fn rectangular(rows: usize, cols: usize) -> Result<Self> {
        guard("rectangular", rows * cols, 1, MAX_ELEMENTS)?;
        let names = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| format!("({i},{j})")))
            .collect();
        Self::from_fn(rows * cols, names, |a, b| (a / cols) * cols + b % cols)
    }

    /// A meet semilattice given by its meet table (must be commutative).
    pub fn semilattice(meet: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let t = Self::new(meet, None, names)?;
        t.check_size()?;
        for a in 0..t.n {
            for b in 0..t.n {
                if t.mul(a, b) != t.mul(b, a) {
                    return Err(Error::Malformed(format!("meet table is not commutative at ({a}, {b})")));
                }
            }
        }
        t.require_band()?;
        Ok(t)
    }

    /// The chain `0 < 1 < … < k-1` with meet = min.
    pub fn chain(k: usize) -> Result<Self> {
        guard("chain", k, 1, MAX_ELEMENTS)?;
        let meet = (0..k).map(|a| (0..k).map(|b| a.min(b)).collect()).collect();
        Self::semilattice(meet, Some((0..k).map(|i| format!("c{i}")).collect()))
    }

    /// The Boolean lattice of subsets of a `k`-set under intersection;
    /// element index = bitmask.
    pub fn boolean(k: usize) -> Result<Self> {
        guard("boolean", k, 0, 8)?;
        let n = 1 << k;
        let meet = (0..n).map(|a| (0..n).map(|b| a & b).collect()).collect();
        let names = (0..n)
            .map(|m: usize| {
                let s: String = (0..k).filter(|i| m & (1 << i) != 0).map(letter).collect();
                format!("{{{s}}}")
            })
            .collect();
        Self::semilattice(meet, Some(names))
    }

    /// The free left regular band with identity on `k` letters: words with
    /// distinct letters ordered by (length, lexicographic), product =
    /// concatenate and keep first occurrences.
    pub fn free_lrb_with_identity(k: usize) -> Result<Self> {
        guard("free_lrb alphabet", k, 0, 4)?;
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut frontier = vec![vec![]];
        for _ in 0..k {
            let mut next = Vec::new();
            for w in &frontier {
                for l in 0..k {
                    if !w.contains(&l) {
                        let mut v: Vec<usize> = w.clone();
                        v.push(l);
                        next.push(v);
                    }
                }
            }
            next.sort();
            words.extend(next.iter().cloned());
            frontier = next;
        }
        let index = |w: &[usize]| words.iter().position(|x| x == w).expect("closed under product");
        let names = words
            .iter()
            .map(|w| if w.is_empty() { "1".to_string() } else { w.iter().map(|&l| letter(l)).collect() })
            .collect();
        let n = words.len();
        let mut rows = vec![vec![0; n]; n];
        for (a, wa) in words.iter().enumerate() {
            for (b, wb) in words.iter().enumerate() {
                let mut w = wa.clone();
                for &l in wb {
                    if !w.contains(&l) {
                        w.push(l);
                    }
                }
                rows[a][b] = index(&w);
            }
        }
        Self::new(rows, Some(0), Some(names))
    }

    /// Face monoid of the coordinate arrangement: `{0,+,-}^k` in
    /// lexicographic order with `0 < + < -`, product
    /// `(x∘y)_i = x_i if x_i ≠ 0 else y_i`. The zero vector (index 0) is the
    /// identity.
    pub fn sign_face_monoid(k: usize) -> Result<Self> {
        guard("sign_face_monoid dimension", k, 1, 3)?;
        let n = 3usize.pow(k as u32);
        let digits = |mut x: usize| {
            let mut d = vec![0; k];
            for i in (0..k).rev() {
                d[i] = x % 3;
                x /= 3;
            }
            d
        };
        let names = (0..n)
            .map(|x| digits(x).into_iter().map(|d| ['0', '+', '-'][d]).collect())
            .collect();
        Self::from_fn(n, names, |a, b| {
            let (da, db) = (digits(a), digits(b));
            da.iter()
                .zip(&db)
                .fold(0, |acc, (&x, &y)| acc * 3 + if x != 0 { x } else { y })
        })
    }

    /// Direct product; `(a, b)` has index `a·n₂ + b`.
    pub fn direct_product(t1: &Self, t2: &Self) -> Result<Self> {
        let n = t1.n * t2.n;
        guard("direct_product", n, 1, MAX_ELEMENTS)?;
        let names = (0..n)
            .map(|i| format!("({},{})", t1.name(i / t2.n), t2.name(i % t2.n)))
            .collect();
        Self::from_fn(n, names, |a, b| {
            t1.mul(a / t2.n, b / t2.n) * t2.n + t2.mul(a % t2.n, b % t2.n)
        })
    }

    /// Adjoins a new identity at index 0, shifting the old elements by one.
    pub fn adjoin_identity(t: &Self) -> Result<Self> {
        let n = t.n + 1;
        guard("adjoin_identity", n, 1, MAX_ELEMENTS)?;
        let mut names = vec!["1".to_string()];
        names.extend(t.names.iter().cloned());
        if t.names.iter().any(|s| s == "1") {
            names[0] = "1'".into();
        }
        Self::from_fn(n, names, |a, b| match (a, b) {
            (0, x) | (x, 0) => x,
            (a, b) => t.mul(a - 1, b - 1) + 1,
        })
    }

    /// The monoid `⟨a, b | a² = a, b² = b, aba = a, bab = b⟩` with elements
    /// in the order `[1, a, b, ab, ba]`.
    pub fn b5_example() -> Self {
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 1, 3, 3, 1],
            vec![2, 4, 2, 2, 4],
            vec![3, 1, 3, 3, 1],
            vec![4, 4, 2, 2, 4],
        ];
        let names = ["1", "a", "b", "ab", "ba"].map(String::from).to_vec();
        Self::new(rows, Some(0), Some(names)).expect("static table")
    }
}

fn letter(i: usize) -> char {
    (b'a' + i as u8) as char
}

fn guard(what: &'static str, got: usize, min: usize, max: usize) -> Result<()> {
    if got > max {
        Err(Error::SizeLimit { what, got, max })
    } else if got < min {
        Err(Error::Malformed(format!("{what} must be at least {min}")))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b5_flags() {
        let r = MulTable::b5_example().validate();
        assert!(r.is_band && !r.is_left_regular && r.is_monoid);
    }

    #[test]
    fn b5_row_of_ab() {
        let t = MulTable::b5_example();
        // ab·1 = ab, ab·a = a, ab·b = ab, ab·ab = ab, ab·ba = a
        assert_eq!(t.rows()[3], vec![3, 1, 3, 3, 1]);
    }

    #[test]
    fn semilattice_is_left_regular() {
        let r = MulTable::boolean(3).unwrap().validate();
        assert!(r.is_band && r.is_left_regular);
        let r = MulTable::chain(4).unwrap().validate();
        assert!(r.is_band && r.is_left_regular);
    }

    #[test]
    fn free_lrb_two_letters() {
        let t = MulTable::free_lrb_with_identity(2).unwrap();
        assert_eq!(t.names(), &["1", "a", "b", "ab", "ba"]);
        let r = t.validate();
        assert!(r.is_band && r.is_left_regular && r.is_monoid);
        // aba = ab
        assert_eq!(t.mul3(1, 2, 1), 3);
    }

    #[test]
    fn green_b5_mutual_r() {
        let t = MulTable::b5_example();
        let g = t.green().unwrap();
        assert!(g.leq_r(1, 3) && g.leq_r(3, 1));
        assert!(!g.lt_r(1, 3));
    }

    #[test]
    fn green_right_zero() {
        let g = MulTable::right_zero(2).unwrap().green().unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert!(g.leq_r(a, b));
                assert_eq!(g.leq_l(a, b), a == b);
            }
        }
    }

    #[test]
    fn identity_is_green_maximum() {
        let t = MulTable::sign_face_monoid(2).unwrap();
        let g = t.green().unwrap();
        let e = t.identity().unwrap();
        assert!((0..t.n()).all(|x| g.leq_r(x, e) && g.leq_l(x, e)));
    }

    #[test]
    fn clifford_and_deletion_on_fixtures() {
        for t in [
            MulTable::b5_example(),
            MulTable::sign_face_monoid(2).unwrap(),
            MulTable::boolean(2).unwrap(),
            MulTable::rectangular(2, 3).unwrap(),
        ] {
            assert!(t.check_clifford().unwrap());
            assert!(t.check_swallow_delete().unwrap());
        }
    }

    #[test]
    fn sign_face_monoid_sizes() {
        let t = MulTable::sign_face_monoid(1).unwrap();
        assert_eq!(t.names(), &["0", "+", "-"]);
        assert_eq!(t.mul(1, 2), 1);
        assert_eq!(t.identity(), Some(0));
        assert_eq!(MulTable::sign_face_monoid(3).unwrap().n(), 27);
        assert!(matches!(MulTable::sign_face_monoid(4), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn rectangular_products() {
        let t = MulTable::rectangular(2, 2).unwrap();
        assert!(t.is_band());
        // (0,1)·(1,0) = (0,0)
        assert_eq!(t.mul(1, 2), 0);
    }

    #[test]
    fn out_of_range_entry_rejected() {
        let err = MulTable::new(vec![vec![0, 2], vec![1, 1]], None, None).unwrap_err();
        assert_eq!(err, Error::Range { row: 0, col: 1, value: 2, n: 2 });
    }

    #[test]
    fn non_band_loads_and_is_diagnosed() {
        // ℤ/2 under addition: a semigroup but not a band
        let t = MulTable::new(vec![vec![0, 1], vec![1, 0]], None, None).unwrap();
        let r = t.validate();
        assert!(r.is_semigroup && !r.is_band);
        assert!(matches!(t.green(), Err(Error::NotABand(_))));
    }

    #[test]
    fn json_roundtrip() {
        let t = MulTable::b5_example();
        let text = serde_json::to_string(&t.to_json()).unwrap();
        assert_eq!(MulTable::from_json(&text).unwrap(), t);
    }

    #[test]
    fn bogus_identity_rejected() {
        let json = r#"{"n":2,"table":[[0,0],[0,1]],"identity":0}"#;
        assert_eq!(MulTable::from_json(json), Err(Error::InvalidIdentity(0)));
    }

    #[test]
    fn adjoin_identity_shifts() {
        let t = MulTable::adjoin_identity(&MulTable::right_zero(2).unwrap()).unwrap();
        assert_eq!(t.identity(), Some(0));
        assert_eq!(t.mul(1, 2), 2);
        assert!(t.is_band());
    }
}
