//! The integral semigroup algebra `ℤB`: products, the kernel `𝒥` of the
//! linearised support map, its nilpotency index, the unit, and a complete
//! system of orthogonal idempotents `{e_X}` with `τ(e_X) = δ_X`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::band::MulTable;
use crate::error::{Error, Result};
use crate::intlattice::{solve_system, Int, IntLattice};
use crate::support::{connectivity, SupportLattice};

/// An element of `ℤB`, as coefficients over the band's canonical basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgElem(Vec<Int>);

impl AlgElem {
    pub fn zero(n: usize) -> Self {
        Self(vec![Int::zero(); n])
    }

    pub fn basis(n: usize, b: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[b] = Int::one();
        v
    }

    pub fn from_coeffs(coeffs: Vec<Int>) -> Self {
        Self(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    /// Sparse constructor: `Σ c·b` over `(b, c)` terms.
    pub fn from_terms(n: usize, terms: &[(usize, i64)]) -> Self {
        let mut v = Self::zero(n);
        for &(b, c) in terms {
            v.0[b] += c;
        }
        v
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<Int> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Int) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    /// Human-readable form such as `b - ba - ab + a`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayElem { elem: self, names }
    }
}

struct DisplayElem<'a> {
    elem: &'a AlgElem,
    names: &'a [String],
}

impl fmt::Display for DisplayElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (b, c) in self.elem.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Int::zero();
            let mag = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            if mag.is_one() {
                write!(f, "{}", self.names[b])?;
            } else {
                write!(f, "{}{}", mag, self.names[b])?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &AlgElem {
    type Output = AlgElem;
    fn add(self, rhs: &AlgElem) -> AlgElem {
        AlgElem(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &AlgElem {
    type Output = AlgElem;
    fn sub(self, rhs: &AlgElem) -> AlgElem {
        AlgElem(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        AlgElem(self.0.iter().map(|a| -a).collect())
    }
}

/// Bilinear extension of the band product.
pub fn multiply(t: &MulTable, u: &AlgElem, v: &AlgElem) -> Result<AlgElem> {
    let n = t.n();
    for w in [u, v] {
        if w.len() != n {
            return Err(Error::BandMismatch(n, w.len()));
        }
    }
    Ok(mul_unchecked(t, u, v))
}

pub(crate) fn mul_unchecked(t: &MulTable, u: &AlgElem, v: &AlgElem) -> AlgElem {
    let n = t.n();
    let mut out = AlgElem::zero(n);
    let vs: Vec<(usize, &Int)> = v.0.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    for (a, ca) in u.0.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for &(b, cb) in &vs {
            out.0[t.mul(a, b)] += ca * cb;
        }
    }
    out
}

fn mul3(t: &MulTable, a: &AlgElem, b: &AlgElem, c: &AlgElem) -> AlgElem {
    mul_unchecked(t, &mul_unchecked(t, a, b), c)
}

/// Linear extension of `τ`: coordinate `Y` collects the coefficients of all
/// `b` with `Y ≤ σ(b)`.
pub fn tau_linear(lat: &SupportLattice, u: &AlgElem) -> Vec<Int> {
    let mut out = vec![Int::zero(); lat.m()];
    for (b, c) in u.0.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let s = lat.sigma(b);
        for (y, o) in out.iter_mut().enumerate() {
            if lat.leq(y, s) {
                *o += c;
            }
        }
    }
    out
}

/// `𝒥 = ker σ`, spanned by the differences `b - f_{σ(b)}`.
pub fn jradical(t: &MulTable, lat: &SupportLattice) -> IntLattice {
    let n = t.n();
    let gens = (0..n).filter_map(|b| {
        let f = lat.basepoint(lat.sigma(b));
        (f != b).then(|| (&AlgElem::basis(n, b) - &AlgElem::basis(n, f)).into_coeffs())
    });
    IntLattice::from_generators(n, gens).expect("vectors of length n")
}

/// Product lattice `span{u·v : u ∈ L, v ∈ M}`.
pub fn lattice_product(t: &MulTable, l: &IntLattice, m: &IntLattice) -> IntLattice {
    let n = t.n();
    let mut gens = Vec::with_capacity(l.rank() * m.rank());
    for u in l.basis() {
        let u = AlgElem(u.clone());
        for v in m.basis() {
            let p = mul_unchecked(t, &u, &AlgElem(v.clone()));
            if !p.is_zero() {
                gens.push(p.0);
            }
        }
    }
    IntLattice::from_generators(n, gens).expect("vectors of length n")
}

/// `ℤB·L` (or `L·ℤB` when `right` is set), spanned by basis-element multiples.
pub fn band_multiples(t: &MulTable, l: &IntLattice, right: bool) -> IntLattice {
    let n = t.n();
    let full = IntLattice::full(n);
    if right {
        lattice_product(t, l, &full)
    } else {
        lattice_product(t, &full, l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nilpotency {
    /// Least `N` with `𝒥^N = 0`; the zero ideal has index 1.
    pub index: usize,
    /// `2^{h+1} + 1`, saturating.
    pub bound: u128,
    /// `𝒥^1, 𝒥^2, …, 𝒥^N` (the last one zero).
    pub powers: Vec<IntLattice>,
}

pub fn brown_bound(height: usize) -> u128 {
    if height + 1 >= 127 {
        u128::MAX
    } else {
        (1u128 << (height + 1)) + 1
    }
}

/// Powers `𝒥^{k+1} = 𝒥^k·𝒥` until zero, checked against `2^{h+1}+1`.
pub fn nilpotency_index(t: &MulTable, lat: &SupportLattice, j: &IntLattice) -> Result<Nilpotency> {
    let bound = brown_bound(lat.height());
    let mut powers = vec![j.clone()];
    while !powers.last().unwrap().is_zero() {
        if powers.len() as u128 >= bound {
            return Err(Error::BoundViolated { index: powers.len() + 1, bound });
        }
        let next = lattice_product(t, powers.last().unwrap(), j);
        powers.push(next);
    }
    Ok(Nilpotency { index: powers.len(), bound, powers })
}

/// Solves `e·b = b = b·e` for all `b ∈ B` over ℤ.
pub fn solve_identity(t: &MulTable) -> Result<Option<AlgElem>> {
    t.require_band()?;
    let n = t.n();
    let mut equations = Vec::with_capacity(2 * n * n);
    for b in 0..n {
        for right in [false, true] {
            // coefficient rows grouped by the product's value
            let mut rows = vec![vec![Int::zero(); n]; n];
            for x in 0..n {
                let z = if right { t.mul(b, x) } else { t.mul(x, b) };
                rows[z][x] = Int::one();
            }
            for (z, row) in rows.into_iter().enumerate() {
                let rhs = if z == b { Int::one() } else { Int::zero() };
                equations.push((row, rhs));
            }
        }
    }
    Ok(solve_system(n, equations)?.map(AlgElem))
}

/// The identity of `ℤB` if one exists, cross-checked against connectivity.
pub fn find_identity(t: &MulTable) -> Result<Option<AlgElem>> {
    let lat = SupportLattice::new(t)?;
    let unit = solve_identity(t)?;
    let connected = connectivity(t, &lat)?.is_none();
    if unit.is_some() != connected {
        return Err(Error::TheoremViolation(format!(
            "unit {} but band is {}connected",
            if unit.is_some() { "exists" } else { "missing" },
            if connected { "" } else { "dis" }
        )));
    }
    Ok(unit)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftMethod {
    Generic,
    LrbFast,
}

/// Which lifting route to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LiftMode {
    /// Fast path for left regular bands, generic otherwise.
    #[default]
    Auto,
    Generic,
    /// Fast path, falling back to the generic route when it does not apply.
    LrbFast,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentSystem {
    pub method: LiftMethod,
    pub basepoints: Vec<usize>,
    pub idems: Vec<AlgElem>,
    pub identity: AlgElem,
    pub nilpotency: Nilpotency,
    pub jbasis: IntLattice,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdempotentSystemJson {
    pub method: LiftMethod,
    pub basepoints: Vec<usize>,
    pub idempotents: Vec<Vec<serde_json::Value>>,
    pub identity: Vec<serde_json::Value>,
    pub nilpotency_index: usize,
}

impl IdempotentSystem {
    pub fn e(&self, x: usize) -> &AlgElem {
        &self.idems[x]
    }

    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency.index
    }

    pub fn to_json(&self) -> IdempotentSystemJson {
        IdempotentSystemJson {
            method: self.method,
            basepoints: self.basepoints.clone(),
            idempotents: self.idems.iter().map(|e| crate::json::ints(e.coeffs())).collect(),
            identity: crate::json::ints(self.identity.coeffs()),
            nilpotency_index: self.nilpotency.index,
        }
    }
}

/// Builds `{e_X}` and verifies: idempotent, pairwise orthogonal, summing to
/// the unit, and `τ(e_X) = δ_X`.
pub fn lift_idempotents(t: &MulTable, lat: &SupportLattice, mode: LiftMode) -> Result<IdempotentSystem> {
    let report = t.require_band()?;
    if let Some(w) = connectivity(t, lat)? {
        return Err(Error::NotConnected(format!(
            "Γ_{:?}(B, {}) has {} components",
            w.side,
            lat.name(w.support),
            w.components.len()
        )));
    }
    let identity = solve_identity(t)?
        .ok_or_else(|| Error::TheoremViolation("connected band without a unit".into()))?;
    let jbasis = jradical(t, lat);
    let nilpotency = nilpotency_index(t, lat, &jbasis)?;
    let use_fast = match mode {
        LiftMode::Generic => false,
        LiftMode::Auto | LiftMode::LrbFast => report.is_left_regular,
    };
    let fast = use_fast.then(|| lrb_fast_idempotents(t, lat)).filter(|idems| {
        check_system(t, lat, idems, &identity).is_ok()
    });
    let (method, idems) = match fast {
        Some(idems) => (LiftMethod::LrbFast, idems),
        None => {
            let idems = generic_idempotents(t, lat, &identity, nilpotency.index)?;
            check_system(t, lat, &idems, &identity)?;
            (LiftMethod::Generic, idems)
        }
    };
    Ok(IdempotentSystem {
        method,
        basepoints: lat.basepoints(),
        idems,
        identity,
        nilpotency,
        jbasis,
    })
}

/// Möbius seed `r_X = Σ_{Y ≤ X} μ(Y, X) f_Y`, which has `τ(r_X) = δ_X`.
pub fn mobius_seed(lat: &SupportLattice, n: usize, x: usize) -> AlgElem {
    let mut r = AlgElem::zero(n);
    for y in 0..lat.m() {
        let mu = lat.mobius(y, x);
        if mu != 0 {
            r.0[lat.basepoint(y)] += mu;
        }
    }
    r
}

fn is_idempotent(t: &MulTable, e: &AlgElem) -> bool {
    &mul_unchecked(t, e, e) == e
}

/// Iterates `e ← 3e² − 2e³` until `e² = e`.
fn refine(t: &MulTable, mut e: AlgElem, nil_index: usize) -> Result<AlgElem> {
    let max_rounds = usize::BITS as usize - nil_index.leading_zeros() as usize + 2;
    for _ in 0..=max_rounds {
        let e2 = mul_unchecked(t, &e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = mul_unchecked(t, &e2, &e);
        e = &e2.scale(&Int::from(3)) - &e3.scale(&Int::from(2));
    }
    Err(Error::LiftFailure(format!("refinement did not converge in {max_rounds} rounds")))
}

fn generic_idempotents(t: &MulTable, lat: &SupportLattice, one: &AlgElem, nil_index: usize) -> Result<Vec<AlgElem>> {
    let n = t.n();
    let m = lat.m();
    let mut idems = Vec::with_capacity(m);
    let mut acc = AlgElem::zero(n);
    for x in 0..m - 1 {
        let mut e = mobius_seed(lat, n, x);
        if !acc.is_zero() {
            let c = one - &acc;
            e = mul3(t, &c, &e, &c);
        }
        let e = refine(t, e, nil_index)?;
        acc = &acc + &e;
        idems.push(e);
    }
    idems.push(one - &acc);
    Ok(idems)
}

/// `e_X = f_X − Σ_{Y < X} f_X·e_Y`, built upward from the bottom support.
fn lrb_fast_idempotents(t: &MulTable, lat: &SupportLattice) -> Vec<AlgElem> {
    let n = t.n();
    let m = lat.m();
    let mut idems: Vec<AlgElem> = Vec::with_capacity(m);
    for x in 0..m {
        let f = AlgElem::basis(n, lat.basepoint(x));
        let mut e = f.clone();
        for y in 0..x {
            if lat.lt(y, x) {
                e = &e - &mul_unchecked(t, &f, &idems[y]);
            }
        }
        idems.push(e);
    }
    idems
}

pub fn check_system(t: &MulTable, lat: &SupportLattice, idems: &[AlgElem], one: &AlgElem) -> Result<()> {
    let n = t.n();
    let mut sum = AlgElem::zero(n);
    for (x, e) in idems.iter().enumerate() {
        if !is_idempotent(t, e) {
            return Err(Error::LiftFailure(format!("e_{x} is not idempotent")));
        }
        let tau = tau_linear(lat, e);
        if tau.iter().enumerate().any(|(y, c)| *c != Int::from(i64::from(y == x))) {
            return Err(Error::LiftFailure(format!("τ(e_{x}) ≠ δ_{x}")));
        }
        for (y, f) in idems.iter().enumerate() {
            if x != y && !mul_unchecked(t, e, f).is_zero() {
                return Err(Error::LiftFailure(format!("e_{x}·e_{y} ≠ 0")));
            }
        }
        sum = &sum + e;
    }
    if &sum != one {
        return Err(Error::LiftFailure("Σ e_X ≠ 1".into()));
    }
    Ok(())
}
