use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;
use tflat_core::lattice::{
    hermite_rows, kernel_basis, quotient_presentation, smith_normal_form, splitting_section, IntMatrix, Lattice,
};
use tflat_core::{Error, Vector};

fn matrix() -> impl Strategy<Value = (usize, Vec<Vector>)> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        (
            Just(c),
            prop::collection::vec(prop::collection::vec(-6i64..=6, c), r),
        )
    })
}

fn subgroup() -> impl Strategy<Value = (usize, Vec<Vector>)> {
    (1usize..=4).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(prop::collection::vec(-5i64..=5, n), 1..=4),
        )
    })
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_transforms((cols, rows) in matrix()) {
        let m = IntMatrix::from_rows(cols, &rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.s.clone());
        prop_assert!(s.s.is_diagonal());
        prop_assert!(s.u.determinant().abs().is_one());
        prop_assert!(s.v.determinant().abs().is_one());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        let d = s.diagonal();
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
        prop_assert!(d.iter().all(|x| x.is_positive()));
        prop_assert_eq!(d.len(), m.rank());
    }

    #[test]
    fn kernel_is_saturated((cols, rows) in matrix()) {
        let m = IntMatrix::from_rows(cols, &rows);
        let k = kernel_basis(&m);
        prop_assert_eq!(k.cols(), cols - m.rank());
        if k.cols() > 0 {
            prop_assert!(m.mul(&k).is_zero());
            let s = smith_normal_form(&k);
            prop_assert!(s.diagonal().iter().all(|x| x.is_one()));
        }
    }

    #[test]
    fn hermite_is_idempotent_and_spans((cols, rows) in matrix()) {
        let h = hermite_rows(cols, &rows);
        prop_assert_eq!(hermite_rows(cols, &h), h.clone());
        let lat = Lattice::spanned_by(cols, &h);
        for r in &rows {
            prop_assert!(lat.contains(r));
        }
        let back = Lattice::spanned_by(cols, &rows);
        for r in &h {
            prop_assert!(back.contains(r));
        }
    }

    #[test]
    fn quotient_kills_subgroup((n, gens) in subgroup(), probe in prop::collection::vec(-9i64..=9, 4)) {
        let q = quotient_presentation(n, &gens);
        for g in &gens {
            prop_assert!(q.project(g).is_zero());
        }
        let v = &probe[..n];
        let back = q.lift(&q.project(v));
        let diff: Vector = v.iter().zip(&back).map(|(a, b)| a - b).collect();
        prop_assert!(q.project(&diff).is_zero());
        let order: i64 = q.group().torsion_orders.iter().product();
        let free = n - q.group().free_rank;
        let lat = Lattice::spanned_by(n, &gens);
        prop_assert_eq!(free, lat.rank());
        // torsion of Z^n / L is the product of the nonunit elementary divisors
        let s = smith_normal_form(&IntMatrix::from_columns(n, &gens));
        let prod: BigInt = s.diagonal().iter().product();
        prop_assert_eq!(BigInt::from(order), prod);
    }

    #[test]
    fn sections_retract((n, gens) in subgroup()) {
        match splitting_section(&gens, n) {
            Ok(sp) => {
                for g in &gens {
                    let c = sp.retract(g);
                    prop_assert_eq!(sp.basis.mul_vec(&c), big(g));
                }
            }
            Err(e) => {
                prop_assert_eq!(e, Error::NoSplit);
                prop_assert!(!quotient_presentation(n, &gens).group().torsion_orders.is_empty());
            }
        }
    }
}

#[test]
fn section_examples() {
    let s = splitting_section(&[vec![1, 0]], 2).unwrap();
    assert_eq!(s.retract(&[5, 7]), vec![5]);
    let s = splitting_section(&[vec![1, 1]], 2).unwrap();
    assert_eq!(s.retract(&[1, 1]), vec![1]);
    assert_eq!(splitting_section(&[vec![0, 2]], 2).unwrap_err(), Error::NoSplit);
}
