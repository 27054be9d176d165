// Primitive idempotents `e_X` of `ℤB`, computed by the generic lifting and by
// the left regular band shortcut.

use bandquiver::band::MulTable;
use bandquiver::support::SupportLattice;
use bandquiver::zalgebra::{lift_idempotents, LiftMode};

fn main() {
    for (label, t) in [
        ("b5", MulTable::b5_example()),
        ("free_lrb1:2", MulTable::free_lrb_with_identity(2).unwrap()),
    ] {
        let lat = SupportLattice::new(&t).unwrap();
        let generic = lift_idempotents(&t, &lat, LiftMode::Generic).unwrap();
        let auto = lift_idempotents(&t, &lat, LiftMode::Auto).unwrap();
        println!("{label}: N = {} (bound {})", generic.nilpotency.index, generic.nilpotency.bound);
        for x in 0..lat.m() {
            println!(
                "  e[{}]  generic: {}   {:?}: {}",
                lat.name(x),
                generic.e(x).display(t.names()),
                auto.method,
                auto.e(x).display(t.names())
            );
        }
    }
}
