use proptest::prelude::*;
use twistcore::algebra::{check_algebra, check_involution};
use twistcore::catalog::examples::two_sided_smash;
use twistcore::catalog::qplane::{qplane, Theta};
use twistcore::hopf::{action_twisting, regular_action, HopfAlgebra, Side};
use twistcore::iterate::{check_hexagon, split_left, split_right, transfer_t1, triple_product};
use twistcore::scalar::{Gaussian, Q};
use twistcore::twist::{check_twisting, check_unital, invert_twisting, star_lift2, twisted_product, twisted_product_unchecked, TwistingMap};
use twistcore::{LinearMap, Scalar};

fn unital_maps() -> Vec<TwistingMap<Q>> {
    let k2 = HopfAlgebra::<Q>::cyclic(2).unwrap();
    let k3 = HopfAlgebra::<Q>::cyclic(3).unwrap();
    let h4 = HopfAlgebra::<Q>::sweedler().unwrap();
    let qp = qplane::<Q>(&Theta::from_upper(2, &[Q::from_integer(1)]).unwrap(), 2).unwrap();
    vec![
        TwistingMap::flip(&k2.algebra, &k3.algebra),
        TwistingMap::flip(&h4.algebra, &k2.algebra),
        qp.family.map(0, 1).clone(),
        action_twisting(&regular_action(&k3, Side::Left).unwrap()).unwrap(),
        action_twisting(&regular_action(&h4, Side::Left).unwrap()).unwrap(),
    ]
}

/// Adds `delta` at `(row, col)`, with `col` chosen among `b⊗a` with no unit leg.
fn bump(r: &TwistingMap<Q>, pick: (usize, usize), delta: i64) -> TwistingMap<Q> {
    let da = r.a.dim();
    let (ua, ub) = (r.a.unit_basis_index(), r.b.unit_basis_index());
    let cols: Vec<usize> = (0..r.map.dom_dim()).filter(|c| Some(c / da) != ub && Some(c % da) != ua).collect();
    let col = cols[pick.0 % cols.len()];
    let row = pick.1 % r.map.cod_dim();
    let e = LinearMap::from_triplets(r.map.domain().clone(), r.map.codomain().clone(), vec![(row, col, Q::from_integer(delta))]).unwrap();
    r.with_map(r.map.add(&e).unwrap()).unwrap()
}

fn basis_units<S: Scalar>(r: &TwistingMap<S>) -> bool {
    r.a.unit_basis_index().is_some() && r.b.unit_basis_index().is_some()
}

fn qplane_triple() -> [TwistingMap<Q>; 3] {
    let qp = qplane::<Q>(&Theta::from_upper(3, &[Q::from_integer(1); 3]).unwrap(), 1).unwrap();
    let f = &qp.family;
    [f.map(0, 1).clone(), f.map(1, 2).clone(), f.map(0, 2).clone()]
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-3i64..=-1, 1i64..=3]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verified_twists_give_algebras(k in 0usize..5) {
        let r = &unital_maps()[k];
        prop_assert!(check_twisting(r).pass);
        prop_assert!(check_algebra(&twisted_product(r).unwrap().algebra).pass);
    }

    #[test]
    fn unital_perturbations_are_twisting_iff_associative(k in 0usize..5, pick in (0usize..1000, 0usize..1000), delta in nonzero()) {
        let r = &unital_maps()[k];
        prop_assume!(basis_units(r));
        let bad = bump(r, pick, delta);
        prop_assert!(check_unital(&bad).pass);
        let rep = check_algebra(&twisted_product_unchecked(&bad).unwrap().algebra);
        prop_assert_eq!(check_twisting(&bad).pass, rep.pass);
    }

    #[test]
    fn inverse_twist_is_a_two_sided_inverse(k in 0usize..5) {
        let r = &unital_maps()[k];
        let (v, rep) = invert_twisting(r).unwrap();
        prop_assert!(rep.pass, "{}", rep.render());
        prop_assert!(v.map.compose(&r.map).unwrap().is_identity());
        prop_assert!(r.map.compose(&v.map).unwrap().is_identity());
    }

    #[test]
    fn twisting_transfer_forces_the_hexagon(which in 0usize..3, pick in (0usize..1000, 0usize..1000), delta in nonzero()) {
        let [r1, r2, r3] = qplane_triple();
        let (r1, r2, r3) = match which {
            0 => (bump(&r1, pick, delta), r2, r3),
            1 => (r1, bump(&r2, pick, delta), r3),
            _ => (r1, r2, bump(&r3, pick, delta)),
        };
        let hex = check_hexagon(&r1, &r2, &r3).unwrap();
        let t1 = check_twisting(&transfer_t1(&r1, &r2, &r3).unwrap());
        prop_assert!(hex.pass || !t1.pass);
    }

    #[test]
    fn splitting_inverts_the_triple_product(upper in prop::collection::vec(-3i64..=4, 3)) {
        let theta = Theta::from_upper(3, &upper.iter().map(|&k| Q::new(k, 2)).collect::<Vec<_>>()).unwrap();
        let qp = qplane::<Gaussian>(&theta, 1).unwrap();
        let f = &qp.family;
        let (r1, r2, r3) = (f.map(0, 1), f.map(1, 2), f.map(0, 2));
        let t = triple_product(r1, r2, r3).unwrap();
        let right = split_right(&t.t1, &r1.a, &r1.b).unwrap();
        let left = split_left(&t.t2, &r1.b, &r2.b).unwrap();
        prop_assert!(right.first.map.same_as(&r2.map) && right.second.map.same_as(&r3.map));
        prop_assert!(left.first.map.same_as(&r1.map) && left.second.map.same_as(&r3.map));
    }

    #[test]
    fn lifted_involutions_are_involutions(k in -3i64..=4, d in 1u32..=2) {
        let theta = Theta::from_upper(2, &[Q::new(k, 2)]).unwrap();
        let qp = qplane::<Gaussian>(&theta, d).unwrap();
        let (j, rep) = star_lift2(qp.family.map(0, 1), &qp.involutions[0], &qp.involutions[1]).unwrap();
        prop_assert!(rep.pass, "{}", rep.render());
        prop_assert!(check_involution(&j).pass);
        let jj = if j.conjugating { j.matrix.compose(&j.matrix.conj()) } else { j.matrix.compose(&j.matrix) };
        prop_assert!(jj.unwrap().is_identity());
    }
}

#[test]
fn faulted_but_associative_unital_maps_do_not_exist_on_flips() {
    let r = &unital_maps()[0];
    for c in 0..6 {
        for row in 0..6 {
            let bad = bump(r, (c, row), 1);
            let assoc = check_algebra(&twisted_product_unchecked(&bad).unwrap().algebra).pass;
            assert!(!(check_unital(&bad).pass && assoc) || check_twisting(&bad).pass);
        }
    }
}

#[test]
fn every_hexagon_fault_is_caught_by_the_transfer_map() {
    let [r1, r2, r3] = qplane_triple();
    let mut broken = 0;
    for col in 0..4 {
        for row in 0..9 {
            let bad = bump(&r3, (col, row), 1);
            if !check_hexagon(&r1, &r2, &bad).unwrap().pass {
                broken += 1;
                assert!(!check_twisting(&transfer_t1(&r1, &r2, &bad).unwrap()).pass);
            }
        }
    }
    assert!(broken > 0);
}

#[test]
fn two_sided_smash_over_kz2_is_hexagonal() {
    let [r1, r2, r3] = two_sided_smash(&HopfAlgebra::<Q>::cyclic(2).unwrap()).unwrap().maps;
    assert!(check_hexagon(&r1, &r2, &r3).unwrap().pass);
}

#[test]
fn exact_checks_are_repeatable() {
    let r = &unital_maps()[4];
    let bad = bump(r, (3, 7), 2);
    let (a, b) = (check_twisting(&bad), check_twisting(&bad));
    assert_eq!(a, b);
    assert!(a.witness.is_some());
}
