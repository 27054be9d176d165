// Quivers of a few bands in DOT format, with arrows labelled by the band
// elements that span `e_Y(𝒥/𝒥²)e_X`.

use bandquiver::construct::parse_spec;
use bandquiver::quiver::build_quiver;
use bandquiver::support::SupportLattice;

fn main() {
    for spec in ["b5", "free_lrb1:3", "signs:2", "unit(rect:2x2)"] {
        let t = parse_spec(spec).unwrap();
        let lat = SupportLattice::new(&t).unwrap();
        let q = build_quiver(&t, &lat).unwrap();
        println!("// {spec}: {} vertices, {} arrows", q.vertices, q.arrows.len());
        print!("{}", q.to_dot(&t));
    }
}
