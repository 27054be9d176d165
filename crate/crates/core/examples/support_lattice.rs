// Support semilattice of the face monoid of the coordinate arrangement in
// the plane: classes, ranks, Möbius values and a DOT drawing.

use bandquiver::band::MulTable;
use bandquiver::support::SupportLattice;

fn main() {
    let t = MulTable::sign_face_monoid(2).unwrap();
    let lat = SupportLattice::new(&t).unwrap();

    for x in 0..lat.m() {
        let class: Vec<&str> = lat.class(x).iter().map(|&b| t.name(b)).collect();
        println!(
            "{} rank {} basepoint {} class {:?}",
            lat.name(x),
            lat.rank(x),
            t.name(lat.basepoint(x)),
            class
        );
    }

    println!("Möbius μ(Y, X):");
    for y in 0..lat.m() {
        let row: Vec<String> = (0..lat.m()).map(|x| format!("{:>3}", lat.mobius(y, x))).collect();
        println!("  {}", row.join(""));
    }

    // τ is multiplicative: τ(ab) = τ(a)·τ(b) pointwise
    for a in 0..t.n() {
        for b in 0..t.n() {
            let (ta, tb) = (lat.tau_vector(a), lat.tau_vector(b));
            let prod: Vec<i64> = ta.iter().zip(&tb).map(|(x, y)| x * y).collect();
            assert_eq!(lat.tau_vector(t.mul(a, b)), prod);
        }
    }

    print!("{}", lat.to_dot());
}
