use proptest::prelude::*;
use twistcore::algebra::check_dg;
use twistcore::catalog::qplane::{normal_form_forms, qplane, qplane_forms, Theta};
use twistcore::catalog::{self, Params, CATALOG};
use twistcore::deform::scenarios::{
    cocycle_scenario, dihedral_cocycle, klein_cocycle, majid_scenario, sweedler_cocycle, sweedler_r_matrix,
};
use twistcore::hopf::{drinfeld_double, heisenberg_double, inverse_element, ns_chain, twist_hopf, HopfAlgebra};
use twistcore::lift::{dg_lift2, lift_module3, module_from_compat, restrict_to_factors, ModuleData, ModuleTwistingMap};
use twistcore::scalar::{Gaussian, Q};
use twistcore::twist::twisted_product;

fn halves(n: usize) -> impl Strategy<Value = Theta> {
    prop::collection::vec(-3i64..=4, n * (n - 1) / 2)
        .prop_map(move |ks| Theta::from_upper(n, &ks.iter().map(|&k| Q::new(k, 2)).collect::<Vec<_>>()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn qplane_matches_its_oracle(theta in halves(3), d in 1u32..=2) {
        let qp = qplane::<Gaussian>(&theta, d).unwrap();
        prop_assert!(qp.report.pass, "{}", qp.report.render());
    }

    #[test]
    fn lifted_differentials_square_to_zero(theta in halves(2), d in 1u32..=2) {
        let f = qplane_forms::<Gaussian>(&theta, d).unwrap();
        let (dg, rep) = dg_lift2(&f.factors[0], &f.factors[1], f.family.map(0, 1)).unwrap();
        prop_assert!(rep.pass, "{}", rep.render());
        prop_assert!(check_dg(&dg).pass);
        prop_assert!(dg.d.compose(&dg.d).unwrap().nnz() == 0);
        for (row, col, _) in dg.d.entries() {
            prop_assert_eq!(dg.degrees()[row], dg.degrees()[col] + 1);
        }
        let direct = normal_form_forms::<Gaussian>(&theta, d).unwrap();
        prop_assert!(direct.algebra().mult.same_as(&dg.algebra().mult));
        prop_assert!(direct.d.same_as(&dg.d));
    }

    #[test]
    fn compatible_actions_round_trip(theta in halves(2), d in 1u32..=2) {
        let qp = qplane::<Gaussian>(&theta, d).unwrap();
        let r = qp.family.map(0, 1);
        let reg = ModuleData::regular(&twisted_product(r).unwrap().algebra);
        let (ma, mb, _) = restrict_to_factors(r, &reg).unwrap();
        let (m, rep) = module_from_compat(r, &ma, &mb).unwrap();
        prop_assert!(rep.pass, "{}", rep.render());
        prop_assert!(m.action.same_as(&reg.action));
    }

    #[test]
    fn module_lifting_routes_agree(theta in halves(3)) {
        let qp = qplane::<Gaussian>(&theta, 1).unwrap();
        let f = &qp.family;
        let (r1, r2, r3) = (f.map(0, 1), f.map(1, 2), f.map(0, 2));
        let t = lift_module3(
            &ModuleTwistingMap::regular(r3),
            &ModuleTwistingMap::regular(r1),
            &ModuleTwistingMap::regular(r2),
            &ModuleData::regular(&r1.b),
            &ModuleData::regular(&r2.b),
        )
        .unwrap();
        prop_assert!(t.report.pass, "{}", t.report.render());
        prop_assert!(t.module.action.same_as(&t.triple.algebra.mult));
    }
}

fn hopfs() -> Vec<HopfAlgebra<Q>> {
    vec![HopfAlgebra::cyclic(2).unwrap(), HopfAlgebra::cyclic(3).unwrap(), HopfAlgebra::sweedler().unwrap()]
}

#[test]
fn doubles_match_their_direct_formulas() {
    for h in hopfs() {
        let d = drinfeld_double(&h).unwrap();
        assert!(d.report.pass, "{}", d.report.render());
        let hd = heisenberg_double(&h).unwrap();
        assert!(hd.report.pass, "{}", hd.report.render());
        assert_eq!(d.algebra.dim(), h.dim() * h.dim());
    }
}

#[test]
fn observable_chains_multiply_dimensions() {
    for h in hopfs() {
        for m in 0..=2i64 {
            let c = ns_chain(&h, 0, m).unwrap();
            assert!(c.family.verify().pass);
            assert_eq!(c.product.algebra.dim(), h.dim().pow(m as u32 + 1));
        }
    }
}

#[test]
fn twisting_back_by_the_inverse_cocycle_restores_the_hopf_algebra() {
    let cases: Vec<(HopfAlgebra<Q>, Vec<Q>)> = vec![
        (HopfAlgebra::klein().unwrap(), klein_cocycle()),
        (HopfAlgebra::dihedral(4).unwrap(), dihedral_cocycle()),
        (HopfAlgebra::sweedler().unwrap(), sweedler_cocycle()),
    ];
    for (h, f) in cases {
        let hf = twist_hopf(&h, &f).unwrap();
        let finv = inverse_element(&h.square_algebra(), &f).unwrap();
        let back = twist_hopf(&hf, &finv).unwrap();
        assert!(back.comult.same_as(&h.comult), "{}", h.name());
        assert!(back.antipode.unwrap().same_as(h.antipode.as_ref().unwrap()));
        assert!(back.algebra.mult.same_as(&h.algebra.mult));
    }
}

#[test]
fn deformation_isomorphisms_compose_to_the_identity() {
    let klein = HopfAlgebra::<Q>::klein().unwrap();
    let h4 = HopfAlgebra::<Q>::sweedler().unwrap();
    for s in [cocycle_scenario(&klein, &klein_cocycle()).unwrap(), majid_scenario(&h4, &sweedler_r_matrix()).unwrap()] {
        assert!(s.report.pass, "{}", s.report.render());
        let inv = &s.invariance;
        assert!(inv.iso.compose(&inv.inverse).unwrap().is_identity());
        assert!(inv.inverse.compose(&inv.iso).unwrap().is_identity());
    }
}

#[test]
fn catalog_entries_verify_themselves() {
    for (name, _) in CATALOG {
        let built = catalog::build::<Gaussian>(name, &Params::new()).unwrap();
        let expect = !name.ends_with("counterexample");
        assert_eq!(built.report.pass, expect, "{name}: {}", built.report.render());
        assert_eq!(built.object.is_some(), expect, "{name}");
    }
}

#[test]
fn catalog_builds_are_deterministic() {
    for name in ["qplane", "two-sided-smash", "hexagon-counterexample", "cocycle-deformation"] {
        let a = catalog::build::<Q>(name, &Params::new()).map(|b| (serde_json::to_string(&b.report).unwrap(), b.object));
        let b = catalog::build::<Q>(name, &Params::new()).map(|b| (serde_json::to_string(&b.report).unwrap(), b.object));
        match (a, b) {
            (Ok(a), Ok(b)) => assert_eq!(a, b, "{name}"),
            (Err(a), Err(b)) => assert_eq!(a.to_string(), b.to_string()),
            _ => panic!("{name}: outcomes differ"),
        }
    }
}
