//! End-to-end behaviour on the named fixtures, checked against brute-force
//! oracles written directly from the definitions.

use std::collections::BTreeSet;

use bandquiver::band::MulTable;
use bandquiver::construct::{census_up_to, parse_spec, FIXTURES};
use bandquiver::intlattice::{Int, IntLattice};
use bandquiver::pathalg::{enumerate_paths, total_path_count, Path};
use bandquiver::presentation::{minimal_relations, tor1_table, verify_isomorphism};
use bandquiver::quiver::{build_quiver, local_graph_l, local_graph_r};
use bandquiver::report::present_band;
use bandquiver::support::{is_connected, SupportLattice};
use bandquiver::zalgebra::{lift_idempotents, AlgElem, LiftMethod, LiftMode};

/// Components of `Γ_R(Y,X)` by depth-first search over the raw definition.
fn oracle_components_r(t: &MulTable, x_rep: usize, y_rep: usize) -> usize {
    let n = t.n();
    let ideal = |a: usize| -> BTreeSet<usize> {
        (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).map(|(u, v)| t.mul(t.mul(u, a), v)).collect()
    };
    let ix = ideal(x_rep);
    let iy = ideal(y_rep);
    let fx = (0..n).find(|&b| ideal(b) == ix).unwrap();
    let geq_y = |b: usize| iy.is_subset(&ideal(b));
    let verts: Vec<usize> = (0..n).filter(|&a| ideal(a) == ix && t.mul(a, fx) == a).collect();
    let adj = |a: usize, c: usize| {
        (0..n).any(|b| geq_y(b) && (t.mul(b, a) == c || t.mul(b, c) == a))
            || (0..n).any(|b| !geq_y(b) && t.mul(b, a) == a && t.mul(b, c) == c)
    };
    let mut seen = vec![false; verts.len()];
    let mut comps = 0;
    for s in 0..verts.len() {
        if seen[s] {
            continue;
        }
        comps += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(i) = stack.pop() {
            for j in 0..verts.len() {
                if !seen[j] && adj(verts[i], verts[j]) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    comps
}

#[test]
fn right_graph_components_match_oracle() {
    for spec in FIXTURES {
        let t = parse_spec(spec).unwrap();
        let lat = SupportLattice::new(&t).unwrap();
        for x in 0..lat.m() {
            for y in 0..lat.m() {
                if lat.lt(x, y) {
                    let g = local_graph_r(&t, &lat, x, y).unwrap();
                    let expect = oracle_components_r(&t, lat.basepoint(x), lat.basepoint(y));
                    assert_eq!(g.component_count(), expect, "{spec} ({x}, {y})");
                }
            }
        }
    }
}

#[test]
fn free_lrb_mid_graph_has_the_ab_ba_edge() {
    let t = MulTable::free_lrb_with_identity(2).unwrap();
    let lat = SupportLattice::new(&t).unwrap();
    let idx = |w: &str| t.names().iter().position(|s| s == w).unwrap();
    let g = local_graph_r(&t, &lat, lat.sigma(idx("ab")), lat.sigma(idx("a"))).unwrap();
    assert_eq!(g.graph.vertices(), &[idx("ab"), idx("ba")]);
    assert_eq!(g.graph.edges(), vec![(idx("ab"), idx("ba"))]);
    // a·ba = ab
    assert_eq!(t.mul(idx("a"), idx("ba")), idx("ab"));
}

#[test]
fn left_graphs_of_lrbs_are_connected() {
    for spec in ["free_lrb1:3", "signs:3", "prod(free_lrb1:2,signs:1)"] {
        let t = parse_spec(spec).unwrap();
        let lat = SupportLattice::new(&t).unwrap();
        for x in 0..lat.m() {
            for y in 0..lat.m() {
                if lat.lt(y, x) {
                    assert_eq!(local_graph_l(&t, &lat, x, y).unwrap().component_count(), 1);
                }
            }
        }
    }
}

#[test]
fn arrows_come_from_representatives_in_the_corner() {
    for spec in FIXTURES {
        let t = parse_spec(spec).unwrap();
        if !is_connected(&t).unwrap() {
            continue;
        }
        let lat = SupportLattice::new(&t).unwrap();
        let q = build_quiver(&t, &lat).unwrap();
        for a in &q.arrows {
            let (fx, fy) = (lat.basepoint(a.source), lat.basepoint(a.target));
            assert_eq!(t.mul(fy, a.label), a.label, "{spec}");
            assert_eq!(t.mul(a.label, fx), a.label, "{spec}");
            assert_ne!(a.label, t.mul(fy, fx));
        }
        for g in &q.local_graphs {
            assert!(g.reps.contains(&g.base));
        }
    }
}

#[test]
fn path_counts() {
    let b5 = MulTable::b5_example();
    let lat = SupportLattice::new(&b5).unwrap();
    let q = build_quiver(&b5, &lat).unwrap();
    assert_eq!(enumerate_paths(&q.shape(), 3).unwrap().len(), 6);

    let free = MulTable::free_lrb_with_identity(2).unwrap();
    let q = build_quiver(&free, &SupportLattice::new(&free).unwrap()).unwrap();
    assert_eq!(total_path_count(&q.shape()), Some(5));

    // the plane arrangement: 4 lazy paths, 4 arrows, 2 paths of length 2
    let s2 = MulTable::sign_face_monoid(2).unwrap();
    let q = build_quiver(&s2, &SupportLattice::new(&s2).unwrap()).unwrap();
    assert_eq!(total_path_count(&q.shape()), Some(10));

    let s3 = MulTable::sign_face_monoid(3).unwrap();
    let q = build_quiver(&s3, &SupportLattice::new(&s3).unwrap()).unwrap();
    assert_eq!(q.arrows.len(), 12);
    assert_eq!(total_path_count(&q.shape()), Some(8 + 12 + 12 + 6));
}

#[test]
fn b5_images_form_a_basis() {
    let t = MulTable::b5_example();
    let p = present_band(&t, LiftMode::Auto, None).unwrap();
    let shape = p.quiver.shape();
    let img = |arrows: &[usize]| {
        let path = if arrows.is_empty() { Path::lazy(0) } else { Path::from_arrows(&shape, arrows).unwrap() };
        p.psi(&path).unwrap().clone()
    };
    // a, 1 − a, ab − a, ba − a, b − ba − ab + a
    let expected = [
        AlgElem::from_i64(&[0, 1, 0, 0, 0]),
        AlgElem::from_i64(&[1, -1, 0, 0, 0]),
        AlgElem::from_i64(&[0, -1, 0, 1, 0]),
        AlgElem::from_i64(&[0, -1, 0, 0, 1]),
        AlgElem::from_i64(&[0, 1, 1, -1, -1]),
    ];
    assert_eq!(img(&[]), expected[0]);
    assert_eq!(p.psi(&Path::lazy(1)).unwrap(), &expected[1]);
    assert_eq!(img(&[0]), expected[2]);
    assert_eq!(img(&[1]), expected[3]);
    assert_eq!(img(&[1, 0]), expected[4]);
    let l = IntLattice::from_generators(5, expected.iter().map(|e| e.coeffs().to_vec())).unwrap();
    assert_eq!(l, IntLattice::full(5));
}

#[test]
fn generic_and_fast_idempotents_give_the_same_invariants() {
    for spec in ["signs:2", "signs:3", "free_lrb1:3", "prod(free_lrb1:2,signs:1)"] {
        let t = parse_spec(spec).unwrap();
        let mut runs = Vec::new();
        for mode in [LiftMode::Auto, LiftMode::Generic] {
            let mut p = present_band(&t, mode, None).unwrap();
            let iso = verify_isomorphism(&mut p).unwrap();
            let tor1: Vec<usize> = tor1_table(&p).unwrap().iter().map(|e| e.path_side).collect();
            let rel = minimal_relations(&p).unwrap();
            let ranks: Vec<(usize, usize, usize)> = rel.ranks.iter().map(|r| (r.source, r.target, r.rank)).collect();
            runs.push((p.idems.method, p.certificates.clone(), iso.divisors, tor1, ranks));
        }
        assert_eq!(runs[0].0, LiftMethod::LrbFast);
        assert_eq!(runs[1].0, LiftMethod::Generic);
        assert_eq!(runs[0].1, runs[1].1, "{spec}");
        assert_eq!(runs[0].2, runs[1].2);
        assert_eq!(runs[0].3, runs[1].3);
        assert_eq!(runs[0].4, runs[1].4);
    }
}

#[test]
fn census_presentations_pass() {
    for t in census_up_to(3).unwrap() {
        if !is_connected(&t).unwrap() {
            continue;
        }
        let mut p = present_band(&t, LiftMode::Auto, None).unwrap();
        assert!(p.certificates.admissible(), "{:?}", t.rows());
        assert!(verify_isomorphism(&mut p).unwrap().passed());
        assert!(tor1_table(&p).unwrap().iter().all(|e| e.agrees()));
    }
}

#[test]
fn idempotent_lift_is_refused_when_disconnected() {
    let t = MulTable::rectangular(2, 2).unwrap();
    let lat = SupportLattice::new(&t).unwrap();
    assert!(lift_idempotents(&t, &lat, LiftMode::Generic).is_err());
    // a connected band with a non-trivial ℤ-coefficient unit
    let t = parse_spec("prod(b5,chain:2)").unwrap();
    let p = present_band(&t, LiftMode::Generic, None).unwrap();
    let sum = p.idems.idems.iter().fold(AlgElem::zero(t.n()), |acc, e| &acc + e);
    assert_eq!(sum, p.idems.identity);
    assert!(p.idems.identity.coeffs().iter().any(|c| c != &Int::from(0)));
}
