mod common;

use common::*;
use proptest::prelude::*;
use tflat_core::ideal::{contract, intersect_shifts, reduce_generators, Inclusion, MonoidIdeal};
use tflat_core::{MonoidPresentation, Vector};

fn add(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn desks() -> Vec<MonoidPresentation> {
    desk_suite().into_iter().map(|d| d.monoid).collect()
}

fn picks() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0usize..4, prop::collection::vec(0usize..40, 1..=3))
}

fn ideal_from(which: usize, picks: &[usize]) -> (MonoidPresentation, Vec<Vector>, MonoidIdeal) {
    let p = desks().swap_remove(which);
    let elems = p.elements_up_to_weight(6);
    let gens: Vec<Vector> = picks.iter().map(|&i| elems[1 + i % (elems.len() - 1)].clone()).collect();
    let k = MonoidIdeal::new(&p, gens.clone()).unwrap();
    (p, gens, k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_idempotent((which, picks) in picks()) {
        let (p, gens, k) = ideal_from(which, &picks);
        let once = reduce_generators(&p, &gens);
        prop_assert_eq!(reduce_generators(&p, &once), once.clone());
        prop_assert_eq!(k.generators(), &once[..]);
        for g in &gens {
            prop_assert!(k.contains(g));
        }
    }

    #[test]
    fn primality_matches_the_definition_in_a_box((which, picks) in picks()) {
        let (p, _, k) = ideal_from(which, &picks);
        let elems = p.elements_up_to_weight(8);
        let violated = elems.iter().any(|a| {
            elems.iter().any(|b| k.contains(&add(a, b)) && !k.contains(a) && !k.contains(b))
        });
        if k.is_prime() {
            prop_assert!(!violated);
        } else {
            prop_assert!(violated || k.face().is_none());
        }
    }

    #[test]
    fn shift_intersections_are_generated((which, picks) in picks()) {
        let (p, gens, _) = ideal_from(which, &picks);
        let a = &gens[0];
        let b = gens.last().unwrap();
        let ms = intersect_shifts(a, b, &p).unwrap();
        for m in &ms {
            prop_assert!(p.contains(&sub(m, a)) && p.contains(&sub(m, b)));
        }
        for x in p.elements_up_to_weight(10) {
            let inside = p.contains(&sub(&x, a)) && p.contains(&sub(&x, b));
            let covered = ms.iter().any(|m| p.contains(&sub(&x, m)));
            prop_assert_eq!(inside, covered, "{:?}", x);
        }
    }
}

#[test]
fn contraction_to_a_numerical_submonoid() {
    let n = MonoidPresentation::free(1);
    let p = MonoidPresentation::numerical(&[2, 3]);
    let inc = Inclusion::identity_on_ambient(&p, &n).unwrap();
    for (k, expected) in [(vec![1], vec![vec![2], vec![3]]), (vec![5], vec![vec![5], vec![6]])] {
        let c = contract(&MonoidIdeal::new(&n, vec![k]).unwrap(), &inc).unwrap();
        let mut want = expected;
        p.sort_degrees(&mut want);
        assert_eq!(c.generators(), &want[..]);
    }
}

#[test]
fn ideal_arithmetic_on_desk_monoids() {
    for p in desks() {
        let max = MonoidIdeal::maximal(&p);
        let sq = max.power_sumset(2);
        assert!(max.contains_ideal(&sq));
        assert!(!sq.contains_ideal(&max));
        assert!(max.union(&sq).unwrap().same_set(&max));
        assert!(max.sumset(&max).unwrap().same_set(&sq));
        for g in p.generators() {
            assert!(!sq.contains(g));
        }
    }
}
