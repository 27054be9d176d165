// The five-element band `⟨a, b | a² = a, b² = b, aba = a, bab = b⟩` with an
// identity: its quiver is a 2-cycle and `ℤB ≅ ℤQ/(αβ)`.

use bandquiver::band::MulTable;
use bandquiver::presentation::{minimal_relations, verify_isomorphism};
use bandquiver::report::present_band;
use bandquiver::zalgebra::LiftMode;

fn main() {
    let t = MulTable::b5_example();
    let mut p = present_band(&t, LiftMode::Auto, None).expect("b5 is connected");

    println!("supports: {:?}", p.quiver.vertex_names);
    for a in &p.quiver.arrows {
        let (s, d) = (&p.quiver.vertex_names[a.source], &p.quiver.vertex_names[a.target]);
        println!("arrow {}: {s} -> {d}, label {}", a.name, t.name(a.label));
    }

    println!("cutoff L = {}, truncation rank {}", p.cutoff(), p.algebra.rank());
    for (path, img) in p.algebra.basis().iter().zip(&p.images) {
        println!("  ψ({}) = {}", p.path_name(path), img.display(t.names()));
    }

    let iso = verify_isomorphism(&mut p).unwrap();
    let rel = minimal_relations(&p).unwrap();
    for r in &rel.relations {
        println!("relation: {} = 0", r.display);
    }
    println!("quotient rank {} (|B| = {}), torsion free: {}", iso.quotient_rank, t.n(), iso.torsion_free);
    assert!(p.certificates.all() && rel.generates);
}
