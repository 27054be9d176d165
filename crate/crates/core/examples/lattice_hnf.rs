// The exact integer layer: Hermite normal forms, null lattices and quotient
// shapes.

use bandquiver::intlattice::{hnf, kernel, quotient_generators, quotient_rank, IntLattice, IntMatrix};

fn main() {
    let m = IntMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).unwrap();
    let h = hnf(&m);
    println!("HNF rows: {:?}", h.basis());

    let k = kernel(&m);
    println!("kernel basis: {:?}", k.basis());
    for v in k.basis() {
        assert!(m.apply(v).unwrap().iter().all(|x| x == &0.into()));
    }

    let full = IntLattice::full(3);
    let info = quotient_rank(&full, &h).unwrap();
    println!("ℤ³ / rows: free rank {}, torsion {:?}", info.rank, info.divisors);

    let (info, lifts) = quotient_generators(&full, &h).unwrap();
    println!("generators of the quotient: {:?} ({} of them)", lifts, info.rank + info.divisors.len());
}
