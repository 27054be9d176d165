// Free left regular bands with identity have tree-shaped Hasse diagrams, so
// their algebras are path algebras of acyclic quivers.

use bandquiver::band::MulTable;
use bandquiver::presentation::hereditary_test;
use bandquiver::report::present_band;
use bandquiver::zalgebra::LiftMode;

fn main() {
    let cases = [
        ("free_lrb1:2", MulTable::free_lrb_with_identity(2).unwrap()),
        ("free_lrb1:3", MulTable::free_lrb_with_identity(3).unwrap()),
        ("b5", MulTable::b5_example()),
        ("signs:2", MulTable::sign_face_monoid(2).unwrap()),
    ];
    for (label, t) in cases {
        let p = present_band(&t, LiftMode::Auto, None).unwrap();
        let h = hereditary_test(&p).unwrap();
        println!(
            "{label:12} |B| = {:2}  arrows {:2}  acyclic {:5}  paths {:?}  hereditary {}",
            t.n(),
            p.quiver.arrows.len(),
            h.acyclic,
            h.path_count,
            h.hereditary
        );
    }
}
