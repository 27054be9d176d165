//! Local graphs `Γ_R(Y,X)`, `Γ_L(X,Y)` and the quiver `Q(B)`.

use serde::Serialize;

use crate::band::MulTable;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::intlattice::{quotient_rank, IntLattice, QuotientInfo};
use crate::pathalg::QuiverShape;
use crate::support::{connectivity, Side, SupportLattice};
use crate::zalgebra::{mul_unchecked, AlgElem, IdempotentSystem};

/// Either `Γ_R(Y,X)` for `X < Y` (kind `R`) or `Γ_L(X,Y)` for `X > Y` (kind
/// `L`). In both cases arrows run from `x` to `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalGraph {
    pub kind: Side,
    pub x: usize,
    pub y: usize,
    pub graph: SimpleGraph,
    /// One element of `f_Y·B·f_X` per component, in component order.
    pub reps: Vec<usize>,
    /// `f_Y·f_X`, the representative that does not yield an arrow.
    pub base: usize,
}

impl LocalGraph {
    pub fn component_count(&self) -> usize {
        self.graph.component_count()
    }

    /// Labels of the arrows `x → y`.
    pub fn arrow_labels(&self) -> impl Iterator<Item = usize> + '_ {
        self.reps.iter().copied().filter(move |&r| r != self.base)
    }
}

fn in_corner(t: &MulTable, fy: usize, fx: usize, a: usize) -> bool {
    t.mul(fy, a) == a && t.mul(a, fx) == a
}

fn choose_reps(t: &MulTable, graph: &SimpleGraph, fy: usize, fx: usize, base: usize) -> Result<Vec<usize>> {
    let base_comp = graph
        .component_of(base)
        .ok_or_else(|| Error::TheoremViolation(format!("f_Y·f_X = {} is not a vertex", t.name(base))))?;
    graph
        .components()
        .iter()
        .enumerate()
        .map(|(c, comp)| {
            if c == base_comp {
                return Ok(base);
            }
            comp.iter()
                .copied()
                .find(|&a| in_corner(t, fy, fx, a))
                .ok_or_else(|| Error::TheoremViolation(format!("component {c} misses f_Y·B·f_X")))
        })
        .collect()
}

/// `Γ_R(Y,X)` for `X < Y`: vertices `L_X = σ⁻¹(X) ∩ B·f_X`.
pub fn local_graph_r(t: &MulTable, lat: &SupportLattice, x: usize, y: usize) -> Result<LocalGraph> {
    lat.check_support(x)?;
    lat.check_support(y)?;
    if !lat.lt(x, y) {
        return Err(Error::BadPair { x, y, reason: "Γ_R(Y,X) needs X < Y" });
    }
    let (fx, fy) = (lat.basepoint(x), lat.basepoint(y));
    let verts: Vec<usize> = lat.class(x).iter().copied().filter(|&a| t.mul(a, fx) == a).collect();
    let local = |a: usize| verts.binary_search(&a).expect("closed under the action");
    let n = t.n();
    let mut edges = Vec::new();
    for (i, &a) in verts.iter().enumerate() {
        for b in (0..n).filter(|&b| lat.leq(y, lat.sigma(b))) {
            edges.push((i, local(t.mul(b, a))));
        }
    }
    for b in (0..n).filter(|&b| !lat.leq(y, lat.sigma(b))) {
        let below: Vec<usize> = (0..verts.len()).filter(|&i| t.mul(b, verts[i]) == verts[i]).collect();
        for w in below.windows(2) {
            edges.push((w[0], w[1]));
        }
    }
    let graph = SimpleGraph::new(verts, edges);
    let base = t.mul(fy, fx);
    let reps = choose_reps(t, &graph, fy, fx, base)?;
    Ok(LocalGraph { kind: Side::R, x, y, graph, reps, base })
}

/// `Γ_L(X,Y)` for `X > Y`: vertices `σ⁻¹(Y) ∩ f_Y·B`, right-multiplication
/// edges by `B_{≥X}` and common `≤_L` upper bounds outside `B_{≥X}`.
pub fn local_graph_l(t: &MulTable, lat: &SupportLattice, x: usize, y: usize) -> Result<LocalGraph> {
    lat.check_support(x)?;
    lat.check_support(y)?;
    if !lat.lt(y, x) {
        return Err(Error::BadPair { x, y, reason: "Γ_L(X,Y) needs X > Y" });
    }
    let (fx, fy) = (lat.basepoint(x), lat.basepoint(y));
    let verts: Vec<usize> = lat.class(y).iter().copied().filter(|&a| t.mul(fy, a) == a).collect();
    let local = |a: usize| verts.binary_search(&a).expect("closed under the action");
    let n = t.n();
    let mut edges = Vec::new();
    for (i, &a) in verts.iter().enumerate() {
        for b in (0..n).filter(|&b| lat.leq(x, lat.sigma(b))) {
            edges.push((i, local(t.mul(a, b))));
        }
    }
    for b in (0..n).filter(|&b| !lat.leq(x, lat.sigma(b))) {
        let below: Vec<usize> = (0..verts.len()).filter(|&i| t.mul(verts[i], b) == verts[i]).collect();
        for w in below.windows(2) {
            edges.push((w[0], w[1]));
        }
    }
    let graph = SimpleGraph::new(verts, edges);
    let base = t.mul(fy, fx);
    let reps = choose_reps(t, &graph, fy, fx, base)?;
    Ok(LocalGraph { kind: Side::L, x, y, graph, reps, base })
}

/// The local graph governing arrows `x → y`, if the supports are comparable.
pub fn local_graph(t: &MulTable, lat: &SupportLattice, x: usize, y: usize) -> Result<Option<LocalGraph>> {
    if lat.lt(x, y) {
        local_graph_r(t, lat, x, y).map(Some)
    } else if lat.lt(y, x) {
        local_graph_l(t, lat, x, y).map(Some)
    } else {
        Ok(None)
    }
}

/// Compares component counts of `Γ_R(Y,X)` with the subgraph on
/// `f_Y·B·f_X ∩ σ⁻¹(X)` joined through common upper bounds strictly
/// `≤_R`-below `f_Y`.
pub fn lrb_shortcut_check(t: &MulTable, lat: &SupportLattice, x: usize, y: usize) -> Result<bool> {
    t.require_left_regular()?;
    let full = local_graph_r(t, lat, x, y)?;
    let (fx, fy) = (lat.basepoint(x), lat.basepoint(y));
    let verts: Vec<usize> = lat.class(x).iter().copied().filter(|&a| in_corner(t, fy, fx, a)).collect();
    let mut edges = Vec::new();
    for b in 0..t.n() {
        // b <_R f_Y
        if t.mul(fy, b) != b || t.mul(b, fy) == fy {
            continue;
        }
        let below: Vec<usize> = (0..verts.len()).filter(|&i| t.mul(b, verts[i]) == verts[i]).collect();
        for w in below.windows(2) {
            edges.push((w[0], w[1]));
        }
    }
    let shortcut = SimpleGraph::new(verts, edges);
    Ok(shortcut.component_count() == full.component_count())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrowKind {
    /// `X < Y`, from `Γ_R(Y,X)`.
    Up,
    /// `X > Y`, from `Γ_L(X,Y)`.
    Down,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: usize,
    pub kind: ArrowKind,
    pub name: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Quiver {
    pub vertices: usize,
    pub vertex_names: Vec<String>,
    pub arrows: Vec<Arrow>,
    #[serde(skip)]
    pub local_graphs: Vec<LocalGraph>,
}

const GREEK: [&str; 19] = [
    "α", "β", "γ", "δ", "ζ", "η", "θ", "ι", "κ", "λ", "ν", "ξ", "ο", "π", "ρ", "υ", "φ", "χ", "ω",
];

pub fn arrow_name(i: usize) -> String {
    match GREEK.get(i) {
        Some(g) => (*g).to_string(),
        None => format!("⟨{i}⟩"),
    }
}

/// Builds `Q(B)` over all ordered comparable pairs. Arrows are ordered by
/// (label, source, target) and named `α, β, γ, …` in that order.
pub fn build_quiver(t: &MulTable, lat: &SupportLattice) -> Result<Quiver> {
    if let Some(w) = connectivity(t, lat)? {
        return Err(Error::NotConnected(format!(
            "Γ_{:?}(B, {}) has {} components",
            w.side,
            lat.name(w.support),
            w.components.len()
        )));
    }
    let m = lat.m();
    let mut local_graphs = Vec::new();
    let mut arrows = Vec::new();
    for x in 0..m {
        for y in 0..m {
            if let Some(g) = local_graph(t, lat, x, y)? {
                let kind = if g.kind == Side::R { ArrowKind::Up } else { ArrowKind::Down };
                for label in g.arrow_labels() {
                    arrows.push(Arrow { source: x, target: y, label, kind, name: String::new() });
                }
                local_graphs.push(g);
            }
        }
    }
    arrows.sort_by_key(|a| (a.label, a.source, a.target));
    for (i, a) in arrows.iter_mut().enumerate() {
        a.name = arrow_name(i);
    }
    Ok(Quiver { vertices: m, vertex_names: lat.names().to_vec(), arrows, local_graphs })
}

impl Quiver {
    pub fn shape(&self) -> QuiverShape {
        QuiverShape { vertices: self.vertices, arrows: self.arrows.iter().map(|a| (a.source, a.target)).collect() }
    }

    pub fn arrow_count(&self, x: usize, y: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == x && a.target == y).count()
    }

    pub fn arrow_names(&self) -> Vec<String> {
        self.arrows.iter().map(|a| a.name.clone()).collect()
    }

    pub fn local_graph(&self, x: usize, y: usize) -> Option<&LocalGraph> {
        self.local_graphs.iter().find(|g| g.x == x && g.y == y)
    }

    pub fn to_dot(&self, t: &MulTable) -> String {
        let mut s = String::from("digraph quiver {\n  rankdir=BT;\n");
        for (v, name) in self.vertex_names.iter().enumerate() {
            s.push_str(&format!("  v{v} [label=\"{name}\"];\n"));
        }
        for a in &self.arrows {
            s.push_str(&format!(
                "  v{} -> v{} [label=\"{}: {}\"];\n",
                a.source,
                a.target,
                a.name,
                t.name(a.label)
            ));
        }
        s.push_str("}\n");
        s
    }
}

/// `e_Y·(t − f_Y·f_X)·e_X`, the image of the arrow labelled `t`.
pub fn arrow_image(t: &MulTable, lat: &SupportLattice, idems: &IdempotentSystem, x: usize, y: usize, label: usize) -> AlgElem {
    let n = t.n();
    let base = t.mul(lat.basepoint(y), lat.basepoint(x));
    let diff = &AlgElem::basis(n, label) - &AlgElem::basis(n, base);
    mul_unchecked(t, &mul_unchecked(t, idems.e(y), &diff), idems.e(x))
}

fn j_squared(idems: &IdempotentSystem) -> IntLattice {
    match idems.nilpotency.powers.get(1) {
        Some(l) => l.clone(),
        None => IntLattice::zero(idems.jbasis.dim()),
    }
}

/// `e_Y·𝒥·e_X + 𝒥²` over `𝒥²`, computed straight from the band algebra.
pub fn peirce_tor1(t: &MulTable, idems: &IdempotentSystem, x: usize, y: usize) -> Result<QuotientInfo> {
    let j2 = j_squared(idems);
    let gens = idems.jbasis.basis().iter().map(|v| {
        let v = AlgElem::from_coeffs(v.clone());
        mul_unchecked(t, &mul_unchecked(t, idems.e(y), &v), idems.e(x)).into_coeffs()
    });
    let big = j2.extend(gens)?;
    quotient_rank(&big, &j2)
}

/// Rank of the arrow images `x → y` modulo `𝒥²`; equals the arrow count when
/// the images are independent in `𝒥/𝒥²`.
pub fn arrow_images_rank(t: &MulTable, lat: &SupportLattice, idems: &IdempotentSystem, q: &Quiver, x: usize, y: usize) -> Result<QuotientInfo> {
    let j2 = j_squared(idems);
    let gens = q
        .arrows
        .iter()
        .filter(|a| a.source == x && a.target == y)
        .map(|a| arrow_image(t, lat, idems, x, y, a.label).into_coeffs());
    let big = j2.extend(gens)?;
    quotient_rank(&big, &j2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zalgebra::{lift_idempotents, LiftMode};

    fn setup(t: &MulTable) -> SupportLattice {
        SupportLattice::new(t).unwrap()
    }

    #[test]
    fn b5_local_graphs() {
        let t = MulTable::b5_example();
        let lat = setup(&t);
        let r = local_graph_r(&t, &lat, 0, 1).unwrap();
        assert_eq!(r.graph.vertices(), &[1, 4]);
        assert!(r.graph.edges().is_empty());
        assert_eq!(r.reps, vec![1, 4]);
        assert_eq!(r.base, 1);
        let l = local_graph_l(&t, &lat, 1, 0).unwrap();
        assert_eq!(l.graph.vertices(), &[1, 3]);
        assert!(l.graph.edges().is_empty());
        assert_eq!(l.component_count(), 2);
        assert!(matches!(local_graph_r(&t, &lat, 1, 0), Err(Error::BadPair { .. })));
        assert!(matches!(local_graph_l(&t, &lat, 0, 1), Err(Error::BadPair { .. })));
    }

    #[test]
    fn b5_quiver_matches_figure() {
        let t = MulTable::b5_example();
        let lat = setup(&t);
        let q = build_quiver(&t, &lat).unwrap();
        assert_eq!(q.vertices, 2);
        assert_eq!(q.arrows.len(), 2);
        let alpha = &q.arrows[0];
        assert_eq!((alpha.name.as_str(), t.name(alpha.label), alpha.source, alpha.target), ("α", "ab", 1, 0));
        assert_eq!(alpha.kind, ArrowKind::Down);
        let beta = &q.arrows[1];
        assert_eq!((beta.name.as_str(), t.name(beta.label), beta.source, beta.target), ("β", "ba", 0, 1));
        assert_eq!(beta.kind, ArrowKind::Up);
    }

    #[test]
    fn free_lrb_single_arrow() {
        let t = MulTable::free_lrb_with_identity(2).unwrap();
        let lat = setup(&t);
        let q = build_quiver(&t, &lat).unwrap();
        assert_eq!(q.vertices, 4);
        assert_eq!(q.arrows.len(), 1);
        let a = &q.arrows[0];
        assert_eq!((lat.rank(a.source), a.target), (0, lat.sigma(t.identity().unwrap())));
        // the mid supports see a connected graph
        let bottom = a.source;
        let mid_a = lat.sigma(1);
        let g = local_graph_r(&t, &lat, bottom, mid_a).unwrap();
        assert_eq!(g.graph.component_count(), 1);
        assert_eq!(g.graph.vertices().len(), 2);
    }

    #[test]
    fn signs1_isolated_vertices() {
        let t = MulTable::sign_face_monoid(1).unwrap();
        let lat = setup(&t);
        let g = local_graph_r(&t, &lat, 0, 1).unwrap();
        assert_eq!(g.graph.vertices().len(), 2);
        assert_eq!(g.component_count(), 2);
    }

    #[test]
    fn semilattice_has_no_arrows() {
        let t = MulTable::boolean(3).unwrap();
        let q = build_quiver(&t, &setup(&t)).unwrap();
        assert!(q.arrows.is_empty());
    }

    #[test]
    fn disconnected_rejected() {
        let t = MulTable::right_zero(2).unwrap();
        assert!(matches!(build_quiver(&t, &setup(&t)), Err(Error::NotConnected(_))));
    }

    #[test]
    fn shortcut_agrees_on_lrbs() {
        for t in [
            MulTable::free_lrb_with_identity(2).unwrap(),
            MulTable::free_lrb_with_identity(3).unwrap(),
            MulTable::sign_face_monoid(2).unwrap(),
            MulTable::chain(3).unwrap(),
        ] {
            let lat = setup(&t);
            for x in 0..lat.m() {
                for y in 0..lat.m() {
                    if lat.lt(x, y) {
                        assert!(lrb_shortcut_check(&t, &lat, x, y).unwrap());
                    }
                }
            }
        }
        let t = MulTable::b5_example();
        assert!(matches!(lrb_shortcut_check(&t, &setup(&t), 0, 1), Err(Error::NotLeftRegular(_))));
    }

    #[test]
    fn lrb_has_no_down_arrows() {
        let t = MulTable::free_lrb_with_identity(3).unwrap();
        let lat = setup(&t);
        for x in 0..lat.m() {
            for y in 0..lat.m() {
                if lat.lt(y, x) {
                    assert_eq!(local_graph_l(&t, &lat, x, y).unwrap().component_count(), 1);
                }
            }
        }
    }

    #[test]
    fn left_graph_is_dual_of_right_graph() {
        let base = MulTable::rectangular(2, 1).unwrap();
        let t = MulTable::adjoin_identity(&base).unwrap();
        let op = t.opposite();
        let (lat, lat_op) = (setup(&t), setup(&op));
        for x in 0..lat.m() {
            for y in 0..lat.m() {
                if lat.lt(x, y) {
                    let r = local_graph_r(&t, &lat, x, y).unwrap();
                    // same ideals, so the support indexing is shared
                    let l = local_graph_l(&op, &lat_op, y, x).unwrap();
                    assert_eq!(r.graph.vertices(), l.graph.vertices());
                    assert_eq!(r.component_count(), l.component_count());
                }
            }
        }
    }

    #[test]
    fn tor1_oracles_agree_on_b5() {
        let t = MulTable::b5_example();
        let lat = setup(&t);
        let idems = lift_idempotents(&t, &lat, LiftMode::Auto).unwrap();
        let q = build_quiver(&t, &lat).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                let info = peirce_tor1(&t, &idems, x, y).unwrap();
                assert!(info.is_free());
                assert_eq!(info.rank, q.arrow_count(x, y));
                assert_eq!(arrow_images_rank(&t, &lat, &idems, &q, x, y).unwrap().rank, q.arrow_count(x, y));
            }
        }
        assert_eq!(arrow_image(&t, &lat, &idems, 1, 0, 3), AlgElem::from_i64(&[0, -1, 0, 1, 0]));
        assert_eq!(arrow_image(&t, &lat, &idems, 0, 1, 4), AlgElem::from_i64(&[0, -1, 0, 0, 1]));
    }
}
