use proptest::prelude::*;
use twistcore::scalar::{Gaussian, Q};
use twistcore::serial::{map_from_json, map_json, SpaceTable};
use twistcore::{Error, LinearMap, Scalar, Signature, Space};

fn sig(name: &str, n: usize) -> Signature {
    Signature::of(Space::new(name, n))
}

/// Dense `rows x cols` map with small rational entries, about half of them zero.
fn map_strategy(dom: usize, cod: usize, dname: &'static str, cname: &'static str) -> impl Strategy<Value = LinearMap<Q>> {
    prop::collection::vec((-3i64..=3, 1i64..=3), dom * cod).prop_map(move |vals| {
        let t = vals
            .into_iter()
            .enumerate()
            .filter(|(_, (n, _))| *n != 0)
            .map(|(k, (n, d))| (k / dom, k % dom, Q::new(n, d)))
            .collect();
        LinearMap::from_triplets(sig(dname, dom), sig(cname, cod), t).unwrap()
    })
}

fn chain() -> impl Strategy<Value = (LinearMap<Q>, LinearMap<Q>, LinearMap<Q>)> {
    (1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3).prop_flat_map(|(a, b, c, d)| {
        (map_strategy(c, d, "C", "D"), map_strategy(b, c, "B", "C"), map_strategy(a, b, "A", "B"))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative((f, g, h) in chain()) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert!(left.same_as(&right));
    }

    #[test]
    fn tensor_is_associative(
        f in map_strategy(2, 1, "A", "A'"),
        g in map_strategy(1, 3, "B", "B'"),
        h in map_strategy(2, 2, "C", "C'"),
    ) {
        let left = f.tensor(&g).tensor(&h);
        let right = f.tensor(&g.tensor(&h));
        prop_assert!(left.same_as(&right));
        prop_assert_eq!(left.domain().dims(), right.domain().dims());
    }

    #[test]
    fn interchange_law(
        (f, f2) in (map_strategy(2, 2, "Y", "Z"), map_strategy(3, 2, "X", "Y")),
        (g, g2) in (map_strategy(1, 3, "V", "W"), map_strategy(2, 1, "U", "V")),
    ) {
        let lhs = f.tensor(&g).compose(&f2.tensor(&g2)).unwrap();
        let rhs = f.compose(&f2).unwrap().tensor(&g.compose(&g2).unwrap());
        prop_assert!(lhs.same_as(&rhs));
    }

    #[test]
    fn inverse_composes_to_identity(f in map_strategy(3, 3, "V", "V")) {
        match f.invert() {
            Ok(inv) => {
                prop_assert!(inv.compose(&f).unwrap().is_identity());
                prop_assert!(f.compose(&inv).unwrap().is_identity());
            }
            Err(Error::NotInvertible) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn exact_operations_repeat_identically((f, g, _) in chain()) {
        let once = f.compose(&g).unwrap().tensor(&f);
        let twice = f.compose(&g).unwrap().tensor(&f);
        prop_assert_eq!(format!("{once:?}"), format!("{twice:?}"));
    }

    #[test]
    fn gaussian_maps_serialize_losslessly(vals in prop::collection::vec((-4i64..=4, -4i64..=4, 1i64..=5), 6)) {
        let t = vals
            .iter()
            .enumerate()
            .map(|(k, &(re, im, d))| (k / 3, k % 3, Gaussian::new(Q::new(re, d), Q::new(im, d))))
            .filter(|(_, _, s)| !s.is_zero())
            .collect();
        let m = LinearMap::from_triplets(sig("V", 3), sig("W", 2), t).unwrap();
        let back: LinearMap<Gaussian> = map_from_json(&map_json(&m), &SpaceTable::new()).unwrap();
        prop_assert!(back.same_as(&m));
    }
}
