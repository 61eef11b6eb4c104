//! Concrete deformation data over small Hopf algebras.

use super::*;
use crate::hopf::{
    action_twisting, drinfeld_double, inverse_element, regular_action, twist_hopf, ActionData, HopfAlgebra,
    Side,
};
use crate::twist::twisted_product;

/// Invariance data together with comparisons against closed forms.
#[derive(Clone, Debug)]
pub struct Scenario<S> {
    pub invariance: Invariance<S>,
    pub report: Report,
}

fn finish<S: Scalar>(name: &str, invariance: Invariance<S>, extra: Vec<Report>) -> Scenario<S> {
    let mut parts = vec![invariance.report.clone()];
    parts.extend(extra);
    Scenario { invariance, report: Report::all(name, parts) }
}

/// `x ∈ H⊗H` as a map `k → H⊗H`.
fn element<S: Scalar>(h: &HopfAlgebra<S>, x: &[S]) -> LinearMap<S> {
    LinearMap::from_vector(&h.sig().tensor(h.sig()), x)
}

/// `Σ ε_{ij} e_i⊗e_j` from sparse entries.
pub fn two_tensor<S: Scalar>(n: usize, entries: &[(usize, usize, S)]) -> Vec<S> {
    let mut v = vec![S::zero(); n * n];
    for (i, j, s) in entries {
        v[i * n + j] = v[i * n + j].clone() + s.clone();
    }
    v
}

/// `σ(χ, ψ) = (−1)^{s₁t₂}` on characters `χ = (s₁, t₁)`, `ψ = (s₂, t₂)` of
/// a Klein four-group, spread over its primitive idempotents. `klein` holds the
/// indices of `1, a, b, ab` inside a group algebra of dimension `n`.
pub fn klein_cocycle_in<S: Scalar>(n: usize, klein: [usize; 4]) -> Vec<S> {
    let chi = |s: usize, t: usize, g: usize| if (s * (g & 1) + t * (g >> 1)).is_multiple_of(2) { 1 } else { -1 };
    let mut v = vec![S::zero(); n * n];
    for x in 0..4 {
        for y in 0..4 {
            let sign = if (x & 1) * (y >> 1) == 1 { -1 } else { 1 };
            for g in 0..4 {
                for k in 0..4 {
                    let c = sign * chi(x & 1, x >> 1, g) * chi(y & 1, y >> 1, k);
                    let idx = klein[g] * n + klein[k];
                    v[idx] = v[idx].clone() + S::from_ratio(c, 16);
                }
            }
        }
    }
    v
}

pub fn klein_cocycle<S: Scalar>() -> Vec<S> {
    klein_cocycle_in(4, [0, 1, 2, 3])
}

/// The Klein cocycle on `{1, r², s, r²s}` inside `k[D8]`; not invariant under `Δ`.
pub fn dihedral_cocycle<S: Scalar>() -> Vec<S> {
    klein_cocycle_in(8, [0, 2, 4, 6])
}

/// `1⊗1 + ½ gx⊗x` on Sweedler's algebra.
pub fn sweedler_cocycle<S: Scalar>() -> Vec<S> {
    two_tensor(4, &[(0, 0, S::one()), (3, 2, S::from_ratio(1, 2))])
}

/// `½(1⊗1 + 1⊗g + g⊗1 − g⊗g)`.
pub fn sweedler_r_matrix<S: Scalar>() -> Vec<S> {
    let h = S::from_ratio(1, 2);
    two_tensor(4, &[(0, 0, h.clone()), (0, 1, h.clone()), (1, 0, h.clone()), (1, 1, -h)])
}

/// `a ↦ X¹·a⊗X²` for a left action.
fn left_by_element<S: Scalar>(act: &ActionData<S>, x: &[S]) -> Result<LinearMap<S>> {
    let (n, na) = (act.hopf.dim(), act.target.dim());
    let sig = &act.target.sig;
    Wiring::new(&[na])
        .map(1, 0, &element(&act.hopf, x), &[n, n])
        .swap(0)
        .map(0, 2, &act.action, &[na])
        .build()
        .materialize(sig.clone(), sig.tensor(act.hopf.sig()))
}

/// `c ↦ X¹⊗c·X²` for a right action.
fn right_by_element<S: Scalar>(act: &ActionData<S>, x: &[S]) -> Result<LinearMap<S>> {
    let (n, nc) = (act.hopf.dim(), act.target.dim());
    let sig = &act.target.sig;
    Wiring::new(&[nc])
        .map(1, 0, &element(&act.hopf, x), &[n, n])
        .swap(0)
        .map(1, 2, &act.action, &[nc])
        .build()
        .materialize(sig.clone(), act.hopf.sig().tensor(sig))
}

/// Left datum `μ = ·`, `ρ(a) = G¹·a⊗G²`, `λ(a) = F¹·a⊗F²` with `G = F⁻¹`.
pub fn cocycle_datum<S: Scalar>(act: &ActionData<S>, f: &[S]) -> Result<LeftTwistDatum<S>> {
    let h = &act.hopf;
    let g = inverse_element(&h.square_algebra(), f)?;
    let r = action_twisting(act)?;
    LeftTwistDatum::new(&r, act.action.clone(), left_by_element(act, &g)?, left_by_element(act, f)?)
}

/// Right datum `ν = ·`, `θ(c) = F¹⊗c·F²`, `γ(c) = G¹⊗c·G²`.
pub fn cocycle_datum_right<S: Scalar>(act: &ActionData<S>, f: &[S]) -> Result<RightTwistDatum<S>> {
    let h = &act.hopf;
    let g = inverse_element(&h.square_algebra(), f)?;
    let r = action_twisting(act)?;
    RightTwistDatum::new(&r, act.action.clone(), right_by_element(act, f)?, right_by_element(act, &g)?)
}

/// `A_{F⁻¹} # H_F ≅ A # H` for `A = H*` under the left regular action.
pub fn cocycle_scenario<S: Scalar>(h: &HopfAlgebra<S>, f: &[S]) -> Result<Scenario<S>> {
    let act = regular_action(h, Side::Left)?;
    let d = cocycle_datum(&act, f)?;
    let inv = invariance_left(&d)?;
    let hf = twist_hopf(h, f)?;
    let expected = action_twisting(&ActionData::new(&hf, &inv.deformed, Side::Left, act.action.clone())?)?;
    let (n, na) = (h.dim(), act.target.dim());
    let g = inverse_element(&h.square_algebra(), f)?;
    let sig = act.target.sig.tensor(h.sig());
    let iso = Wiring::new(&[na, n])
        .map(2, 0, &element(h, &g), &[n, n])
        .permute(&[2, 0, 3, 1])
        .map(0, 2, &act.action, &[na])
        .map(1, 2, &h.algebra.mult, &[n])
        .build()
        .materialize(sig.clone(), sig)?;
    let extra = vec![
        map_equal("deformed map is the smash twist over H_F", &inv.twist.map, &expected.map),
        map_equal("isomorphism is a#h -> G1·a # G2 h", &inv.iso, &iso),
    ];
    Ok(finish(&format!("cocycle deformation over {}", h.name()), inv, extra))
}

/// `h⇀φ↼S⁻¹(h')` for `h⊗h'` in the outer legs and `φ` in the middle.
fn two_sided<S: Scalar>(h: &HopfAlgebra<S>) -> Result<(ActionData<S>, ActionData<S>, LinearMap<S>)> {
    let left = regular_action(h, Side::Left)?;
    let right = regular_action(h, Side::Right)?;
    let s_inv = h.antipode_inverse()?;
    Ok((left, right, s_inv))
}

/// `H*` deformed inside `D(H)` by a triangular structure `r`:
/// `μ(h⊗φ) = h₁⇀φ↼S⁻¹(h₂)`, `ρ(φ) = φ↼S⁻¹(r¹)⊗r²`, `λ(φ) = φ↼S⁻¹(u¹)⊗u²`, `u = r⁻¹`.
pub fn majid_datum<S: Scalar>(h: &HopfAlgebra<S>, r: &[S]) -> Result<LeftTwistDatum<S>> {
    let n = h.dim();
    let (left, right, s_inv) = two_sided(h)?;
    let dual = &left.target;
    let twist = drinfeld_double(h)?.twist;
    let mu = Wiring::new(&[n, n])
        .map(0, 1, &h.comult, &[n, n])
        .map(1, 1, &s_inv, &[n])
        .swap(1)
        .map(0, 2, &left.action, &[n])
        .map(0, 2, &right.action, &[n])
        .build()
        .materialize(h.sig().tensor(&dual.sig), dual.sig.clone())?;
    let u = inverse_element(&h.square_algebra(), r)?;
    let by = |x: &[S]| {
        Wiring::new(&[n])
            .map(1, 0, &element(h, x), &[n, n])
            .map(1, 1, &s_inv, &[n])
            .map(0, 2, &right.action, &[n])
            .build()
            .materialize(dual.sig.clone(), dual.sig.tensor(h.sig()))
    };
    LeftTwistDatum::new(&twist, mu, by(r)?, by(&u)?)
}

/// `H̲* # H ≅ D(H)` with the deformed map `h⊗φ ↦ h₁·φ⊗h₂`.
pub fn majid_scenario<S: Scalar>(h: &HopfAlgebra<S>, r: &[S]) -> Result<Scenario<S>> {
    let d = majid_datum(h, r)?;
    let inv = invariance_left(&d)?;
    let expected = action_twisting(&ActionData::new(h, &inv.deformed, Side::Left, d.mu.clone())?)?;
    let extra = vec![map_equal("deformed map is h1·φ ⊗ h2", &inv.twist.map, &expected.map)];
    Ok(finish(&format!("braided dual inside D({})", h.name()), inv, extra))
}

/// `h·a = u(h₁)au(S(h₂))` for an algebra map `u: H → A`.
pub fn inner_action<S: Scalar>(h: &HopfAlgebra<S>, a: &Algebra<S>, u: &LinearMap<S>) -> Result<ActionData<S>> {
    let (n, na) = (h.dim(), a.dim());
    let s = h.antipode()?;
    let act = Wiring::new(&[n, na])
        .map(0, 1, &h.comult, &[n, n])
        .map(1, 1, s, &[n])
        .map(0, 1, u, &[na])
        .map(1, 1, u, &[na])
        .permute(&[0, 2, 1])
        .map(0, 2, &a.mult, &[na])
        .map(0, 2, &a.mult, &[na])
        .build()
        .materialize(h.sig().tensor(&a.sig), a.sig.clone())?;
    ActionData::new(h, a, Side::Left, act)
}

/// Decoupling `A # H ≅ A⊗H` for a strongly inner action through `u: H → A`,
/// with `θ(h) = u(S(h₁))⊗h₂` and `γ(h) = u(h₁)⊗h₂`.
pub fn inner_decoupling<S: Scalar>(h: &HopfAlgebra<S>, a: &Algebra<S>, u: &LinearMap<S>) -> Result<Scenario<S>> {
    let (n, na) = (h.dim(), a.dim());
    let u = u.with_signatures(h.sig().clone(), a.sig.clone())?;
    let act = inner_action(h, a, &u)?;
    let r = action_twisting(&act)?;
    let s = h.antipode()?;
    let cod = a.sig.tensor(h.sig());
    let theta = Wiring::new(&[n]).map(0, 1, &h.comult, &[n, n]).map(0, 1, s, &[n]).map(0, 1, &u, &[na]).build();
    let gamma = Wiring::new(&[n]).map(0, 1, &h.comult, &[n, n]).map(0, 1, &u, &[na]).build();
    let theta = theta.materialize(h.sig().clone(), cod.clone())?;
    let gamma = gamma.materialize(h.sig().clone(), cod)?;
    let smash = twisted_product(&r)?;
    let phi = Wiring::new(&[na, n]).map(1, 1, &u, &[na]).map(0, 2, &a.mult, &[na]).build();
    let phi = phi.materialize(smash.algebra.sig.clone(), a.sig.clone())?;
    let phi_rep = violated(check_morphism(&phi, &smash.algebra, a)?.renamed("a#h -> a u(h) is an algebra map"))?;
    let inv = invariance_right_general(&h.algebra, &theta, &gamma, &r)?;
    let flip = inv.twist.is_flip();
    let extra = vec![phi_rep, if flip { Report::pass("deformed map is the flip") } else { Report::fail("deformed map is the flip", "not the flip") }];
    Ok(finish(&format!("inner decoupling of {} # {}", a.name, h.name()), inv, extra))
}

/// Unbraiding over a triangular `(H, r)`: `B = H` under the right adjoint
/// action, `C = H*` under the right regular action,
/// `R(c⊗b) = b·r¹⊗c·r²`, `π(h#b) = hb`, `θ(c) = π(r¹#1)⊗c·r²`.
pub struct Unbraiding<S> {
    pub b_action: ActionData<S>,
    pub c_action: ActionData<S>,
    pub r: TwistingMap<S>,
    /// `H # B → B` for the right smash product.
    pub pi: LinearMap<S>,
}

/// `b·h = S(h₁)bh₂`.
pub fn right_adjoint<S: Scalar>(h: &HopfAlgebra<S>) -> Result<ActionData<S>> {
    let n = h.dim();
    let s = h.antipode()?;
    let act = Wiring::new(&[n, n])
        .map(1, 1, &h.comult, &[n, n])
        .permute(&[1, 0, 2])
        .map(0, 1, s, &[n])
        .map(0, 2, &h.algebra.mult, &[n])
        .map(0, 2, &h.algebra.mult, &[n])
        .build()
        .materialize(h.sig().tensor(h.sig()), h.sig().clone())?;
    ActionData::new(h, &h.algebra, Side::Right, act)
}

pub fn unbraiding<S: Scalar>(h: &HopfAlgebra<S>, r: &[S]) -> Result<Unbraiding<S>> {
    let n = h.dim();
    let b_action = right_adjoint(h)?;
    let c_action = regular_action(h, Side::Right)?;
    let (b, c) = (&b_action.target, &c_action.target);
    let map = Wiring::new(&[n, n])
        .map(2, 0, &element(h, r), &[n, n])
        .permute(&[1, 2, 0, 3])
        .map(0, 2, &b_action.action, &[n])
        .map(1, 2, &c_action.action, &[n])
        .build()
        .materialize(c.sig.tensor(&b.sig), b.sig.tensor(&c.sig))?;
    let r = TwistingMap::new(b, c, map)?;
    let pi = h.algebra.mult.with_signatures(h.sig().tensor(&b.sig), b.sig.clone())?;
    Ok(Unbraiding { b_action, c_action, r, pi })
}

/// `B ⊗_R C ≅ B⊗C`; `π` must be an algebra map out of `H # B`.
pub fn unbraiding_scenario<S: Scalar>(u: &Unbraiding<S>, r: &[S]) -> Result<Scenario<S>> {
    let h = &u.b_action.hopf;
    let (n, nb, nc) = (h.dim(), u.r.a.dim(), u.r.b.dim());
    let smash = twisted_product(&action_twisting(&u.b_action)?)?;
    let pi_rep = violated(check_morphism(&u.pi, &smash.algebra, &u.r.a)?.renamed("pi is an algebra map"))?;
    let pi1 = Wiring::new(&[n]).map(1, 0, &u.r.a.unit, &[nb]).map(0, 2, &u.pi, &[nb]).build();
    let by = |x: &[S]| {
        Wiring::new(&[nc])
            .map(1, 0, &element(h, x), &[n, n])
            .swap(0)
            .map(1, 2, &u.c_action.action, &[nc])
            .apply(0, 1, pi1.clone(), &[nb])
            .build()
            .materialize(u.r.b.sig.clone(), u.r.a.sig.tensor(&u.r.b.sig))
    };
    let inv_r = inverse_element(&h.square_algebra(), r)?;
    let inv = invariance_right_general(&u.r.b, &by(r)?, &by(&inv_r)?, &u.r)?;
    let flip = inv.twist.is_flip();
    let extra = vec![pi_rep, if flip { Report::pass("deformed map is the flip") } else { Report::fail("deformed map is the flip", "not the flip") }];
    Ok(finish(&format!("unbraiding over {}", h.name()), inv, extra))
}

/// Both ends of `H* # H # H*` deformed by a cocycle `F`.
pub fn two_sided_cocycle<S: Scalar>(h: &HopfAlgebra<S>, f: &[S]) -> Result<(LeftTwistDatum<S>, RightTwistDatum<S>, TwistingMap<S>)> {
    let left = regular_action(h, Side::Left)?;
    let right = regular_action(h, Side::Right)?;
    let dl = cocycle_datum(&left, f)?;
    let dr = cocycle_datum_right(&right, f)?;
    let r3 = TwistingMap::flip(&left.target, &right.target);
    Ok((dl, dr, r3))
}

/// The hexagon of `(R₁^d, R₂, R₃)` when only the left end is deformed and the
/// right datum is trivial.
pub fn one_sided_hexagon<S: Scalar>(h: &HopfAlgebra<S>, f: &[S]) -> Result<Report> {
    let left = regular_action(h, Side::Left)?;
    let right = regular_action(h, Side::Right)?;
    let dl = cocycle_datum(&left, f)?;
    let r2 = action_twisting(&right)?;
    let dr = RightTwistDatum::trivial(&r2, &h.counit)?;
    let inv = invariance_left(&dl)?;
    let r3 = TwistingMap::flip(&inv.deformed, &right.target);
    let cross = check_cross_conditions(&dl, &dr);
    let hex = crate::iterate::check_hexagon(&inv.twist, &r2, &r3)?;
    Ok(Report::all(format!("one-sided deformation over {}", h.name()), vec![cross, hex]))
}

/// `kZ2` embedded in Sweedler's algebra by `g ↦ g`.
pub fn kz2_in_sweedler<S: Scalar>() -> Result<(HopfAlgebra<S>, Algebra<S>, LinearMap<S>)> {
    let h = HopfAlgebra::cyclic(2)?;
    let a = HopfAlgebra::<S>::sweedler()?.algebra;
    let u = LinearMap::from_fn(h.sig().clone(), a.sig.clone(), |c| vec![(c, S::one())]);
    Ok((h, a, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{cocycle_check, quasitriangular_check};
    use crate::scalar::Q;

    #[test]
    fn cocycles_and_r_matrix_verify() {
        let d8 = HopfAlgebra::<Q>::dihedral(4).unwrap();
        assert!(cocycle_check(&d8, &dihedral_cocycle()).unwrap().pass);
        assert!(!twist_hopf(&d8, &dihedral_cocycle()).unwrap().comult.same_as(&d8.comult));
        let k = HopfAlgebra::<Q>::klein().unwrap();
        assert!(cocycle_check(&k, &klein_cocycle()).unwrap().pass);
        let h = HopfAlgebra::<Q>::sweedler().unwrap();
        let rep = cocycle_check(&h, &sweedler_cocycle()).unwrap();
        assert!(rep.pass, "{}", rep.render());
        assert!(quasitriangular_check(&h, &sweedler_r_matrix()).unwrap().pass);
    }

    #[test]
    fn trivial_datum_leaves_everything_fixed() {
        let h = HopfAlgebra::<Q>::sweedler().unwrap();
        let act = regular_action(&h, Side::Left).unwrap();
        let r = action_twisting(&act).unwrap();
        let d = LeftTwistDatum::new(&r, act.action.clone(), LinearMap::identity(&r.a.sig).tensor(&r.b.unit), LinearMap::identity(&r.a.sig).tensor(&r.b.unit)).unwrap();
        let inv = invariance_left(&d).unwrap();
        assert!(inv.report.pass, "{}", inv.report.render());
        assert!(inv.deformed.mult.same_as(&r.a.mult));
        assert!(inv.twist.map.same_as(&r.map));
        assert!(inv.iso.is_identity());
    }

    #[test]
    fn klein_cocycle_deformation() {
        let s = cocycle_scenario(&HopfAlgebra::<Q>::klein().unwrap(), &klein_cocycle()).unwrap();
        assert!(s.report.pass, "{}", s.report.render());
        assert!(!s.invariance.deformed.is_commutative());
    }

    #[test]
    fn majid_on_sweedler() {
        let s = majid_scenario(&HopfAlgebra::<Q>::sweedler().unwrap(), &sweedler_r_matrix()).unwrap();
        assert!(s.report.pass, "{}", s.report.render());
    }

    #[test]
    fn inner_and_unbraiding_give_the_flip() {
        let (h, a, u) = kz2_in_sweedler::<Q>().unwrap();
        let s = inner_decoupling(&h, &a, &u).unwrap();
        assert!(s.report.pass, "{}", s.report.render());
        let h = HopfAlgebra::<Q>::sweedler().unwrap();
        let r = sweedler_r_matrix();
        let ub = unbraiding(&h, &r).unwrap();
        let s = unbraiding_scenario(&ub, &r).unwrap();
        assert!(s.report.pass, "{}", s.report.render());
    }

    #[test]
    fn faulty_pi_is_rejected() {
        let h = HopfAlgebra::<Q>::sweedler().unwrap();
        let r = sweedler_r_matrix();
        let mut ub = unbraiding(&h, &r).unwrap();
        let s = h.antipode().unwrap().clone();
        ub.pi = ub.pi.compose(&s.tensor(&LinearMap::identity(h.sig()))).unwrap();
        assert!(matches!(unbraiding_scenario(&ub, &r), Err(Error::DatumViolated(_))));
    }

    #[test]
    fn two_sided_klein_and_one_sided_sweedler() {
        let k = HopfAlgebra::<Q>::klein().unwrap();
        let (dl, dr, r3) = two_sided_cocycle(&k, &klein_cocycle()).unwrap();
        let t = triple_invariance(&dl, &dr, &r3).unwrap();
        assert!(t.report.pass, "{}", t.report.render());
        let h = HopfAlgebra::<Q>::dihedral(4).unwrap();
        let rep = one_sided_hexagon(&h, &dihedral_cocycle()).unwrap();
        let hex = rep.find("hexagon").unwrap();
        assert!(!hex.pass && hex.first_failure().unwrap().witness.is_some(), "{}", rep.render());
    }
}
