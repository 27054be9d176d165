//! The support semilattice `Λ(B)` of principal two-sided ideals, the support
//! map `σ`, its Solomon image `τ`, Möbius values, and the connectivity graphs
//! `Γ_R(B, X)`, `Γ_L(B, X)`.

use serde::Serialize;

use crate::band::{MulTable, ElemSet};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Supports are indexed `0..m` in the order (rank, least contained element).
/// Each support's basepoint `f_X` is the least element of its class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportLattice {
    m: usize,
    meet: Vec<usize>,
    leq: Vec<bool>,
    rank: Vec<usize>,
    mobius: Vec<i64>,
    sigma: Vec<usize>,
    classes: Vec<Vec<usize>>,
    names: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    R,
    L,
}

/// Why a band fails to be connected: one disconnected graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisconnectionWitness {
    pub support: usize,
    pub side: Side,
    pub components: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportLatticeJson {
    pub m: usize,
    pub names: Vec<String>,
    pub meet: Vec<Vec<usize>>,
    pub rank: Vec<usize>,
    pub mobius: Vec<Vec<i64>>,
    pub sigma: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub basepoints: Vec<usize>,
}

impl SupportLattice {
    pub fn new(t: &MulTable) -> Result<Self> {
        t.require_band()?;
        let n = t.n();
        let ideals = t.principal_ideals();
        // distinct ideals, with their least element
        let mut distinct: Vec<(ElemSet, Vec<usize>)> = Vec::new();
        let mut raw_sigma = vec![0; n];
        for (a, ideal) in ideals.iter().enumerate() {
            match distinct.iter().position(|(s, _)| s == ideal) {
                Some(k) => {
                    distinct[k].1.push(a);
                    raw_sigma[a] = k;
                }
                None => {
                    raw_sigma[a] = distinct.len();
                    distinct.push((ideal.clone(), vec![a]));
                }
            }
        }
        let m = distinct.len();
        let raw_leq = |x: usize, y: usize| distinct[x].0.is_subset(&distinct[y].0);
        // longest chain below, processing by ideal size
        let mut by_size: Vec<usize> = (0..m).collect();
        by_size.sort_by_key(|&x| distinct[x].0.len());
        let mut raw_rank = vec![0usize; m];
        for (i, &x) in by_size.iter().enumerate() {
            raw_rank[x] = by_size[..i]
                .iter()
                .filter(|&&y| y != x && raw_leq(y, x))
                .map(|&y| raw_rank[y] + 1)
                .max()
                .unwrap_or(0);
        }
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&x| (raw_rank[x], distinct[x].1[0]));
        let mut pos = vec![0; m];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let sigma: Vec<usize> = raw_sigma.iter().map(|&k| pos[k]).collect();
        let classes: Vec<Vec<usize>> = order.iter().map(|&old| distinct[old].1.clone()).collect();
        let rank: Vec<usize> = order.iter().map(|&old| raw_rank[old]).collect();
        let mut leq = vec![false; m * m];
        for x in 0..m {
            for y in 0..m {
                leq[x * m + y] = raw_leq(order[x], order[y]);
            }
        }
        let mut meet = vec![0; m * m];
        for x in 0..m {
            for y in 0..m {
                meet[x * m + y] = sigma[t.mul(classes[x][0], classes[y][0])];
            }
        }
        let names = classes.iter().map(|c| format!("σ({})", t.name(c[0]))).collect();
        let mut lat = Self { m, meet, leq, rank, mobius: vec![0; m * m], sigma, classes, names };
        lat.fill_mobius();
        Ok(lat)
    }

    fn fill_mobius(&mut self) {
        let m = self.m;
        // supports are a linear extension, so intervals can be filled upward
        for y in 0..m {
            for x in y..m {
                if !self.leq(y, x) {
                    continue;
                }
                let v = if x == y {
                    1
                } else {
                    -(y..x).filter(|&z| self.leq(y, z) && self.leq(z, x)).map(|z| self.mobius[y * m + z]).sum::<i64>()
                };
                self.mobius[y * m + x] = v;
            }
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.m + y]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.m + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `x ⋖ y`: `x < y` with nothing strictly between.
    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.lt(x, y) && !(0..self.m).any(|z| self.lt(x, z) && self.lt(z, y))
    }

    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    /// Length of the longest chain in `Λ(B)`.
    pub fn height(&self) -> usize {
        self.rank.iter().copied().max().unwrap_or(0)
    }

    /// `μ(y, x)`, zero unless `y ≤ x`.
    pub fn mobius(&self, y: usize, x: usize) -> i64 {
        self.mobius[y * self.m + x]
    }

    pub fn sigma(&self, b: usize) -> usize {
        self.sigma[b]
    }

    pub fn sigma_map(&self) -> &[usize] {
        &self.sigma
    }

    pub fn class(&self, x: usize) -> &[usize] {
        &self.classes[x]
    }

    pub fn basepoint(&self, x: usize) -> usize {
        self.classes[x][0]
    }

    pub fn basepoints(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn check_support(&self, x: usize) -> Result<()> {
        if x < self.m {
            Ok(())
        } else {
            Err(Error::BadSupport(x))
        }
    }

    /// `τ(b)`: coordinate `Y` is 1 iff `Y ≤ σ(b)`.
    pub fn tau_vector(&self, b: usize) -> Vec<i64> {
        let s = self.sigma[b];
        (0..self.m).map(|y| i64::from(self.leq(y, s))).collect()
    }

    /// Hasse diagram edges `(x, y)` with `x ⋖ y`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.m {
            for y in 0..self.m {
                if self.covers(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> SupportLatticeJson {
        let m = self.m;
        SupportLatticeJson {
            m,
            names: self.names.clone(),
            meet: (0..m).map(|x| (0..m).map(|y| self.meet(x, y)).collect()).collect(),
            rank: self.rank.clone(),
            mobius: (0..m).map(|y| (0..m).map(|x| self.mobius(y, x)).collect()).collect(),
            sigma: self.sigma.clone(),
            classes: self.classes.clone(),
            basepoints: self.basepoints(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph support {\n  rankdir=BT;\n");
        for x in 0..self.m {
            s.push_str(&format!("  s{x} [label=\"{}\"];\n", self.names[x]));
        }
        for (x, y) in self.hasse_edges() {
            s.push_str(&format!("  s{x} -> s{y};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// `Γ_R(B, X)` or `Γ_L(B, X)`: vertices `σ⁻¹(X)`, adjacency = common upper
/// bound anywhere in `B` for the chosen Green preorder.
pub fn gamma_global(t: &MulTable, lat: &SupportLattice, x: usize, side: Side) -> Result<SimpleGraph> {
    lat.check_support(x)?;
    let verts = lat.class(x).to_vec();
    let below = |v: usize, y: usize| match side {
        Side::R => t.mul(y, v) == v,
        Side::L => t.mul(v, y) == v,
    };
    let mut edges = Vec::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if (0..t.n()).any(|y| below(verts[i], y) && below(verts[j], y)) {
                edges.push((i, j));
            }
        }
    }
    Ok(SimpleGraph::new(verts, edges))
}

/// Checks every `Γ_R(B, X)` and `Γ_L(B, X)`; returns the first disconnected
/// graph as a witness.
pub fn connectivity(t: &MulTable, lat: &SupportLattice) -> Result<Option<DisconnectionWitness>> {
    for x in 0..lat.m() {
        for side in [Side::R, Side::L] {
            let g = gamma_global(t, lat, x, side)?;
            if !g.is_connected() {
                return Ok(Some(DisconnectionWitness {
                    support: x,
                    side,
                    components: g.components().to_vec(),
                }));
            }
        }
    }
    Ok(None)
}

pub fn is_connected(t: &MulTable) -> Result<bool> {
    let lat = SupportLattice::new(t)?;
    Ok(connectivity(t, &lat)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b5_supports() {
        let t = MulTable::b5_example();
        let lat = SupportLattice::new(&t).unwrap();
        assert_eq!(lat.m(), 2);
        assert_eq!(lat.class(0), &[1, 2, 3, 4]);
        assert_eq!(lat.class(1), &[0]);
        assert_eq!(lat.sigma_map(), &[1, 0, 0, 0, 0]);
        assert_eq!(lat.basepoints(), vec![1, 0]);
        assert_eq!(lat.tau_vector(0), vec![1, 1]);
        assert_eq!(lat.tau_vector(1), vec![1, 0]);
    }

    #[test]
    fn semilattice_is_its_own_support() {
        let t = MulTable::boolean(2).unwrap();
        let lat = SupportLattice::new(&t).unwrap();
        assert_eq!(lat.m(), 4);
        for b in 0..4 {
            assert_eq!(lat.class(lat.sigma(b)), &[b]);
        }
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(lat.basepoint(lat.meet(lat.sigma(a), lat.sigma(b))), t.mul(a, b));
            }
        }
    }

    #[test]
    fn signs2_is_a_diamond() {
        let t = MulTable::sign_face_monoid(2).unwrap();
        let lat = SupportLattice::new(&t).unwrap();
        assert_eq!(lat.m(), 4);
        let sizes: Vec<usize> = (0..4).map(|x| lat.class(x).len()).collect();
        assert_eq!(sizes, vec![4, 2, 2, 1]);
        assert_eq!(lat.hasse_edges().len(), 4);
        assert!(!lat.comparable(1, 2));
        assert_eq!(lat.mobius(0, 3), 1);
        assert_eq!(lat.mobius(0, 1), -1);
        assert_eq!(lat.height(), 2);
    }

    #[test]
    fn signs1_is_two_chain() {
        let lat = SupportLattice::new(&MulTable::sign_face_monoid(1).unwrap()).unwrap();
        assert_eq!(lat.m(), 2);
        assert!(lat.covers(0, 1));
    }

    #[test]
    fn gamma_examples() {
        let t = MulTable::b5_example();
        let lat = SupportLattice::new(&t).unwrap();
        assert!(gamma_global(&t, &lat, 0, Side::R).unwrap().is_connected());

        let t = MulTable::right_zero(2).unwrap();
        let lat = SupportLattice::new(&t).unwrap();
        let g = gamma_global(&t, &lat, 0, Side::L).unwrap();
        assert_eq!(g.component_count(), 2);
        assert!(!is_connected(&t).unwrap());
        assert!(matches!(gamma_global(&t, &lat, 5, Side::L), Err(Error::BadSupport(5))));
    }

    #[test]
    fn connected_fixtures() {
        assert!(is_connected(&MulTable::b5_example()).unwrap());
        for k in 1..=3 {
            assert!(is_connected(&MulTable::sign_face_monoid(k).unwrap()).unwrap());
        }
    }

    #[test]
    fn free_lrb_left_graphs_connected() {
        let t = MulTable::free_lrb_with_identity(3).unwrap();
        let lat = SupportLattice::new(&t).unwrap();
        for x in 0..lat.m() {
            assert!(gamma_global(&t, &lat, x, Side::L).unwrap().is_connected());
        }
    }
}
