// Face monoids of coordinate arrangements are CW left regular bands: the
// quiver is the Hasse diagram of the intersection lattice and the relations
// are generated by a signed sum of all length-2 paths.

use bandquiver::band::MulTable;
use bandquiver::cw::verify_cw_theorem;
use bandquiver::report::present_band;
use bandquiver::zalgebra::LiftMode;

fn main() {
    for k in 1..=3 {
        let t = MulTable::sign_face_monoid(k).unwrap();
        let p = present_band(&t, LiftMode::Auto, None).unwrap();
        let r = verify_cw_theorem(&p).unwrap();
        println!(
            "signs:{k}  arrows {:2}  2-paths {:2}  kernel rank {:2}  quotient rank {:2}  signs {:?}  I = (r): {}",
            p.quiver.arrows.len(),
            r.length_two_paths,
            r.kernel_rank,
            r.quotient_rank,
            r.sign_vector.as_deref().unwrap_or(&[]),
            r.kernel_equals_r
        );
        assert!(r.passed());
    }
}
