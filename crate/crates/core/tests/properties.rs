use num_traits::Zero;
use proptest::prelude::*;

use bandquiver::band::MulTable;
use bandquiver::construct::{census_up_to, parse_spec};
use bandquiver::intlattice::{hnf, kernel, Int, IntLattice, IntMatrix};
use bandquiver::pathalg::{QuiverShape, TruncatedPathAlgebra};
use bandquiver::report::present_band;
use bandquiver::support::SupportLattice;
use bandquiver::zalgebra::{multiply, AlgElem, LiftMode};

fn matrix(rows: &[Vec<i64>]) -> IntMatrix {
    let cols = rows[0].len();
    IntMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect()).unwrap()
}

/// Rank over ℚ by fraction-free elimination on `i128`.
fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let (a, b) = (m[rank][c], m[r][c]);
                for k in 0..cols {
                    m[r][k] = a * m[r][k] - b * m[rank][k];
                }
                let g = m[r].iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
                if g > 1 {
                    m[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..7, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn hnf_is_invariant_under_unimodular_mixing(rows in small_matrix(), i in 0usize..4, j in 0usize..4, k in -5i64..6) {
        let base = hnf(&matrix(&rows));
        let mut mixed = rows.clone();
        let (i, j) = (i % rows.len(), j % rows.len());
        if i != j {
            for c in 0..mixed[0].len() {
                mixed[i][c] += k * rows[j][c];
            }
        }
        mixed.reverse();
        prop_assert_eq!(base, hnf(&matrix(&mixed)));
    }

    #[test]
    fn kernel_is_saturated_and_has_full_rank(rows in small_matrix()) {
        let m = matrix(&rows);
        let k = kernel(&m);
        prop_assert_eq!(k.rank(), m.cols() - rational_rank(&rows));
        prop_assert!(k.is_saturated());
        for v in k.basis() {
            prop_assert!(m.apply(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn membership_after_reduction(rows in small_matrix(), coeffs in prop::collection::vec(-4i64..5, 4)) {
        let m = matrix(&rows);
        let l = hnf(&m);
        let mut v = vec![Int::zero(); m.cols()];
        for (r, c) in rows.iter().zip(&coeffs) {
            for (x, y) in v.iter_mut().zip(r) {
                *x += Int::from(c * y);
            }
        }
        prop_assert!(l.member(&v).unwrap());
        prop_assert!(l.reduce(&v).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn truncated_product_is_associative(
        arrows in prop::collection::vec((0usize..3, 0usize..3), 0..5),
        cutoff in 1usize..5,
        seeds in prop::collection::vec(-2i64..3, 3 * 64),
    ) {
        let alg = TruncatedPathAlgebra::new(QuiverShape { vertices: 3, arrows }, cutoff).unwrap();
        let d = alg.rank();
        prop_assume!(d <= 64);
        let vec_of = |o: usize| -> Vec<Int> { (0..d).map(|i| Int::from(seeds[o * 64 + i])).collect() };
        let (u, v, w) = (vec_of(0), vec_of(1), vec_of(2));
        let left = alg.multiply(&alg.multiply(&u, &v).unwrap(), &w).unwrap();
        let right = alg.multiply(&u, &alg.multiply(&v, &w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let one = alg.identity();
        prop_assert_eq!(alg.multiply(&one, &u).unwrap(), u.clone());
        prop_assert_eq!(alg.multiply(&u, &one).unwrap(), u);
    }

    #[test]
    fn psi_is_multiplicative_on_combinations(
        which in 0usize..4,
        seeds in prop::collection::vec(-3i64..4, 2 * 48),
    ) {
        let spec = ["b5", "signs:2", "free_lrb1:2", "unit(rect:2x2)"][which];
        let t = parse_spec(spec).unwrap();
        let p = present_band(&t, LiftMode::Auto, None).unwrap();
        let d = p.algebra.rank();
        prop_assume!(d <= 48);
        let u: Vec<Int> = (0..d).map(|i| Int::from(seeds[i])).collect();
        let v: Vec<Int> = (0..d).map(|i| Int::from(seeds[48 + i])).collect();
        let psi = |x: &[Int]| {
            x.iter().zip(&p.images).fold(AlgElem::zero(t.n()), |acc, (c, img)| &acc + &img.scale(c))
        };
        let uv = p.algebra.multiply(&u, &v).unwrap();
        prop_assert_eq!(psi(&uv), multiply(&t, &psi(&u), &psi(&v)).unwrap());
    }
}

#[test]
fn tau_is_multiplicative_on_census_and_products() {
    let mut bands = census_up_to(3).unwrap();
    bands.push(MulTable::b5_example());
    bands.push(parse_spec("prod(b5,right_zero:2)").unwrap());
    for t in bands {
        let lat = SupportLattice::new(&t).unwrap();
        for a in 0..t.n() {
            for b in 0..t.n() {
                let prod: Vec<i64> =
                    lat.tau_vector(a).iter().zip(lat.tau_vector(b)).map(|(x, y)| x * y).collect();
                assert_eq!(lat.tau_vector(t.mul(a, b)), prod);
            }
        }
    }
}

#[test]
fn quotient_by_kernel_is_free() {
    for spec in ["b5", "signs:3", "prod(b5,chain:2)"] {
        let p = present_band(&parse_spec(spec).unwrap(), LiftMode::Auto, None).unwrap();
        assert!(p.kernel.is_saturated(), "{spec}");
        let full = IntLattice::full(p.algebra.rank());
        assert!(bandquiver::intlattice::quotient_rank(&full, &p.kernel).unwrap().is_free());
    }
}
