//! Hopf-algebraic worked examples: smash products, doubles and the two
//! counterexamples to naive iteration and splitting.

use crate::algebra::Algebra;
use crate::error::Result;
use crate::expr::Wiring;
use crate::hopf::{
    action_twisting, check_action, coaction_twisting, drinfeld_double_hopf, dual_hopf, heisenberg_double,
    regular_action, ActionData, CoactionData, HopfAlgebra, Side,
};
use crate::iterate::{check_hexagon, split_right, triple_product, Splitting, Triple};
use crate::linear::LinearMap;
use crate::report::Report;
use crate::scalar::Scalar;
use crate::twist::{check_twisting, TwistingMap};
use crate::Error;

/// `A = B = H*`, `C = H`; `R₁` the flip and `R₂ = R₃ = h⊗p ↦ h₁⇀p⊗h₂`.
pub fn hexagon_counterexample<S: Scalar>(h: &HopfAlgebra<S>) -> Result<[TwistingMap<S>; 3]> {
    let act = regular_action(h, Side::Left)?;
    let sigma = action_twisting(&act)?;
    let dual = &act.target;
    let r1 = TwistingMap::flip(dual, dual);
    let r2 = TwistingMap::new(dual, &h.algebra, sigma.map.clone())?;
    Ok([r1, r2, sigma])
}

/// Outcome of the hexagon counterexample: the individual twisting checks and the hexagon.
pub fn hexagon_counterexample_report<S: Scalar>(h: &HopfAlgebra<S>) -> Result<Report> {
    let [r1, r2, r3] = hexagon_counterexample(h)?;
    let parts = vec![
        check_twisting(&r1).renamed("R1 twisting"),
        check_twisting(&r2).renamed("R2 twisting"),
        check_twisting(&r3).renamed("R3 twisting"),
        check_hexagon(&r1, &r2, &r3)?,
    ];
    Ok(Report::all(format!("hexagon example over {}", h.name()), parts))
}

/// `D(H)` acting on `ℋ(H) = H⊗H*` by
/// `(p⊗h)⇀(h'⊗q) = p₂(h'₂) q₂(h) h'₁⊗p₃q₁S*⁻¹(p₁)`.
pub fn double_on_heisenberg<S: Scalar>(h: &HopfAlgebra<S>) -> Result<ActionData<S>> {
    let n = h.dim();
    let dual = dual_hopf(h)?;
    let d = drinfeld_double_hopf(h)?;
    let heis = heisenberg_double(h)?.algebra;
    let pair = LinearMap::from_fn(dual.sig().tensor(h.sig()), crate::space::Signature::ground(), |c| {
        if c / n == c % n {
            vec![(0, S::one())]
        } else {
            Vec::new()
        }
    });
    let s_inv = dual.antipode_inverse()?;
    // wires: p, h, h', q
    let e = Wiring::new(&[n, n, n, n])
        .map(0, 1, &dual.comult, &[n, n])
        .map(0, 1, &dual.comult, &[n, n])
        .map(4, 1, &h.comult, &[n, n])
        .map(6, 1, &dual.comult, &[n, n])
        // p1 p2 p3 h h'1 h'2 q1 q2 -> p2 h'2 q2 h h'1 p3 q1 p1
        .permute(&[1, 5, 7, 3, 4, 2, 6, 0])
        .map(0, 2, &pair, &[])
        .map(0, 2, &pair, &[])
        .map(3, 1, &s_inv, &[n])
        .map(2, 2, &dual.algebra.mult, &[n])
        .map(1, 2, &dual.algebra.mult, &[n])
        .build();
    let action = e.materialize(d.sig().tensor(&heis.sig), heis.sig.clone())?;
    ActionData::new(&d, &heis, Side::Left, action)
}

/// `T(x⊗y) = x₁⇀y⊗x₂` from the action of `D(H)` on `ℋ(H)`, with the
/// attempted right splitting over `H⊗H*`.
#[derive(Debug)]
pub struct SplitExample<S> {
    pub t: TwistingMap<S>,
    pub report: Report,
    pub splitting: std::result::Result<Splitting<S>, Error>,
}

pub fn split_counterexample<S: Scalar>(h: &HopfAlgebra<S>) -> Result<SplitExample<S>> {
    let act = double_on_heisenberg(h)?;
    let dual = dual_hopf(h)?;
    let t = action_twisting(&act)?;
    let splitting = split_right(&t, &h.algebra, &dual.algebra);
    let split_rep = match &splitting {
        Ok(s) => s.report.clone(),
        Err(e) => e.report().cloned().unwrap_or_else(|| Report::fail("right splitting", e.to_string())),
    };
    let report = Report::all(
        format!("splitting example over {}", h.name()),
        vec![check_action(&act), check_twisting(&t).renamed("T twisting"), split_rep],
    );
    Ok(SplitExample { t, report, splitting })
}

/// `A⊗_{R₁}H⊗_{R₂}B` with `A = H*` under the left regular action, `B = H*`
/// under the right one, `H` coacting on itself by `Δ`, and `R₃` the flip.
pub struct TwoSidedSmash<S> {
    pub maps: [TwistingMap<S>; 3],
    pub triple: Triple<S>,
}

pub fn two_sided_smash<S: Scalar>(h: &HopfAlgebra<S>) -> Result<TwoSidedSmash<S>> {
    let left = regular_action(h, Side::Left)?;
    let right = regular_action(h, Side::Right)?;
    let co = CoactionData::regular(h)?;
    let r1 = coaction_twisting(&co, &left)?;
    let r2 = coaction_twisting(&co, &right)?;
    let r3 = TwistingMap::flip(&left.target, &right.target);
    let triple = triple_product(&r1, &r2, &r3)?;
    Ok(TwoSidedSmash { maps: [r1, r2, r3], triple })
}

/// Names addressable from the command line.
pub const CATALOG: &[(&str, &str)] = &[
    ("qplane", "noncommutative 2n-plane; params n, theta (multiples of pi, upper triangle), D"),
    ("qplane-forms", "forms on the noncommutative 2n-plane; params n, theta, D"),
    ("ns-chain", "observable chain A[n..m] over a Hopf algebra; params hopf, n, m"),
    ("drinfeld-double", "D(H) as a diagonal crossed product; param hopf"),
    ("heisenberg-double", "H(H) as a smash product; param hopf"),
    ("two-sided-smash", "H* # H # H* with both regular actions; param hopf"),
    ("diagonal-crossed", "H* crossed with H over the regular bicomodule; param hopf"),
    ("hexagon-counterexample", "three twisting maps whose hexagon fails; param hopf (default H4)"),
    ("split-counterexample", "D(H) acting on H(H), not right-splittable; param hopf (default H4)"),
];

/// Factor algebra pairs used by both doubles, for callers that only need them.
pub fn factors<S: Scalar>(h: &HopfAlgebra<S>) -> Result<(Algebra<S>, Algebra<S>)> {
    Ok((h.algebra.clone(), dual_hopf(h)?.algebra))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    #[test]
    fn hexagon_fails_on_sweedler_and_holds_on_kz2() {
        let r = hexagon_counterexample_report(&HopfAlgebra::<Q>::sweedler().unwrap()).unwrap();
        assert!(!r.pass);
        for name in ["R1 twisting", "R2 twisting", "R3 twisting"] {
            assert!(r.find(name).unwrap().pass);
        }
        assert!(r.first_failure().unwrap().witness.is_some());
        assert!(hexagon_counterexample_report(&HopfAlgebra::<Q>::cyclic(2).unwrap()).unwrap().pass);
    }

    #[test]
    fn double_acts_on_heisenberg_and_split_fails() {
        let ex = split_counterexample(&HopfAlgebra::<Q>::sweedler().unwrap()).unwrap();
        assert!(ex.report.find("T twisting").unwrap().pass, "{}", ex.report.render());
        assert!(matches!(ex.splitting, Err(Error::NotSplittable(_))));
    }

    #[test]
    fn two_sided_smash_of_kz2() {
        let s = two_sided_smash(&HopfAlgebra::<Q>::cyclic(2).unwrap()).unwrap();
        assert_eq!(s.triple.algebra.dim(), 8);
        assert!(s.triple.report.pass);
    }
}
