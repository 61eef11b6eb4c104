//! Finite-dimensional Hopf algebras, their (co)actions and the twisting maps
//! those induce. Every Sweedler expression is compiled once into a wiring of
//! structure maps.

use std::sync::OnceLock;

use crate::algebra::{check_algebra, check_morphism, Algebra};
use crate::error::{Error, Result};
use crate::expr::{check_equal, Expr, Wiring};
use crate::iterate::{n_fold_product, NFold, TwistFamily};
use crate::linear::{LinearMap, SparseVec};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::space::{Signature, Space};
use crate::twist::{map_equal, twisted_product, TwistingMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct HopfAlgebra<S> {
    pub algebra: Algebra<S>,
    /// `H → H⊗H`.
    pub comult: LinearMap<S>,
    /// `H → k`.
    pub counit: LinearMap<S>,
    pub antipode: Option<LinearMap<S>>,
    antipode_inverse: OnceLock<Option<LinearMap<S>>>,
}

impl<S: Scalar> HopfAlgebra<S> {
    pub fn new(
        algebra: Algebra<S>,
        comult: LinearMap<S>,
        counit: LinearMap<S>,
        antipode: Option<LinearMap<S>>,
    ) -> Result<Self> {
        let sig = algebra.sig.clone();
        let comult = comult.with_signatures(sig.clone(), sig.tensor(&sig))?;
        let counit = counit.with_signatures(sig.clone(), Signature::ground())?;
        let antipode = antipode.map(|s| s.with_signatures(sig.clone(), sig.clone())).transpose()?;
        Ok(HopfAlgebra { algebra, comult, counit, antipode, antipode_inverse: OnceLock::new() })
    }

    pub fn name(&self) -> &str {
        &self.algebra.name
    }

    pub fn sig(&self) -> &Signature {
        &self.algebra.sig
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn delta(&self) -> Expr<S> {
        Expr::Map(self.comult.clone())
    }

    pub fn eps(&self) -> Expr<S> {
        Expr::Map(self.counit.clone())
    }

    pub fn antipode(&self) -> Result<&LinearMap<S>> {
        self.antipode.as_ref().ok_or(Error::NoAntipodeInverse)
    }

    /// `S⁻¹`, computed once.
    pub fn antipode_inverse(&self) -> Result<LinearMap<S>> {
        self.antipode_inverse
            .get_or_init(|| self.antipode.as_ref().and_then(|s| s.invert().ok()))
            .clone()
            .ok_or(Error::NoAntipodeInverse)
    }

    pub fn is_commutative(&self) -> bool {
        self.algebra.is_commutative()
    }

    pub fn is_cocommutative(&self) -> bool {
        let n = self.dim();
        let twisted = Expr::Compose(vec![Expr::flip(n, n), self.delta()]);
        crate::expr::compare(&self.delta(), &twisted).map(|c| c.is_equal()).unwrap_or(false)
    }

    /// `H⊗H` with the componentwise product.
    pub fn square_algebra(&self) -> Algebra<S> {
        power_algebra(&self.algebra, 2)
    }

    /// Group algebra from a multiplication table of group indices; index 0 is the identity.
    pub fn group_algebra(name: &str, labels: &[&str], table: &[Vec<usize>]) -> Result<Self> {
        let n = labels.len();
        let space = Space::labelled(name, labels.iter().map(|s| s.to_string()).collect())?;
        let mut unit = vec![S::zero(); n];
        unit[0] = S::one();
        let algebra = Algebra::from_table(name, space, &unit, |a, b| vec![(table[a][b], S::one())])?;
        let sig = algebra.sig.clone();
        let comult = LinearMap::from_fn(sig.clone(), sig.tensor(&sig), |g| vec![(g * n + g, S::one())]);
        let counit = LinearMap::from_fn(sig.clone(), Signature::ground(), |_| vec![(0, S::one())]);
        let inverse = |g: usize| (0..n).find(|&h| table[g][h] == 0).expect("group table has inverses");
        let antipode = LinearMap::from_fn(sig.clone(), sig, |g| vec![(inverse(g), S::one())]);
        HopfAlgebra::new(algebra, comult, counit, Some(antipode))
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        let labels: Vec<String> = (0..n).map(|i| if i == 0 { "1".into() } else { format!("g{i}") }).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        HopfAlgebra::group_algebra(&format!("kZ{n}"), &refs, &table)
    }

    /// The dihedral group of order `2n` with `r^i s^j` at `i + nj`.
    pub fn dihedral(n: usize) -> Result<Self> {
        let labels: Vec<String> = (0..2 * n)
            .map(|g| {
                let (i, j) = (g % n, g / n);
                match (i, j) {
                    (0, 0) => "1".into(),
                    (0, _) => "s".into(),
                    (_, 0) => format!("r{i}"),
                    _ => format!("r{i}s"),
                }
            })
            .collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let table: Vec<Vec<usize>> = (0..2 * n)
            .map(|x| {
                (0..2 * n)
                    .map(|y| {
                        let (i, j, k, l) = (x % n, x / n, y % n, y / n);
                        let k = if j == 1 { (n - k) % n } else { k };
                        (i + k) % n + n * ((j + l) % 2)
                    })
                    .collect()
            })
            .collect();
        HopfAlgebra::group_algebra(&format!("kD{}", 2 * n), &refs, &table)
    }

    /// `k(Z₂×Z₂)` with basis `1, a, b, ab`.
    pub fn klein() -> Result<Self> {
        let table: Vec<Vec<usize>> = (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect();
        HopfAlgebra::group_algebra("kZ2xZ2", &["1", "a", "b", "ab"], &table)
    }

    /// Sweedler's four-dimensional algebra: `g² = 1`, `x² = 0`, `xg = −gx`,
    /// `Δx = x⊗1 + g⊗x`; basis `1, g, x, gx` with `g^i x^j` at `i + 2j`.
    pub fn sweedler() -> Result<Self> {
        let space = Space::labelled("H4", vec!["1".into(), "g".into(), "x".into(), "gx".into()])?;
        let one = S::one();
        let unit = [one.clone(), S::zero(), S::zero(), S::zero()];
        let algebra = Algebra::from_table("H4", space, &unit, |p, q| {
            let (i, j, k, l) = (p % 2, p / 2, q % 2, q / 2);
            if j + l >= 2 {
                return Vec::new();
            }
            let s = if j * k == 1 { -S::one() } else { S::one() };
            vec![((i + k) % 2 + 2 * (j + l), s)]
        })?;
        let sig = algebra.sig.clone();
        let n = 4;
        let comult = LinearMap::from_fn(sig.clone(), sig.tensor(&sig), |c| match c {
            0 => vec![(0, S::one())],
            1 => vec![(n + 1, S::one())],
            2 => vec![(2 * n, S::one()), (n + 2, S::one())],
            _ => vec![(3 * n + 1, S::one()), (3, S::one())],
        });
        let counit = LinearMap::covector(&sig, &[S::one(), S::one(), S::zero(), S::zero()]);
        let antipode = LinearMap::from_fn(sig.clone(), sig, |c| match c {
            0 => vec![(0, S::one())],
            1 => vec![(1, S::one())],
            2 => vec![(3, -S::one())],
            _ => vec![(2, S::one())],
        });
        HopfAlgebra::new(algebra, comult, counit, Some(antipode))
    }
}

/// `A^{⊗n}` with the componentwise product.
pub fn power_algebra<S: Scalar>(a: &Algebra<S>, n: usize) -> Algebra<S> {
    let d = a.dim();
    let sig = Signature::tensor_all(std::iter::repeat_n(&a.sig, n));
    let mut w = Wiring::new(&vec![d; 2 * n]);
    // Interleave x_1..x_n, y_1..y_n into x_1 y_1 … x_n y_n.
    let perm: Vec<usize> = (0..2 * n).map(|i| if i % 2 == 0 { i / 2 } else { n + i / 2 }).collect();
    w = w.permute(&perm);
    for k in 0..n {
        w = w.map(k, 2, &a.mult, &[d]);
    }
    let mult = w.build().materialize(sig.tensor(&sig), sig.clone()).expect("shapes agree");
    let mut unit = LinearMap::identity(&Signature::ground());
    for _ in 0..n {
        unit = unit.tensor(&a.unit);
    }
    Algebra::new(format!("{}^{n}", a.name), sig, mult, unit).expect("shapes agree")
}

/// Every bialgebra and antipode identity.
pub fn check_hopf<S: Scalar>(h: &HopfAlgebra<S>) -> Report {
    let n = h.dim();
    let sig = h.sig();
    let sq = sig.tensor(sig);
    let (id, d, e) = (Expr::Id(n), h.delta(), h.eps());
    let mu = h.algebra.mu();
    let unit = Expr::Map(h.algebra.unit.clone());
    let mut parts = vec![check_algebra(&h.algebra)];
    parts.push(check_equal(
        "coassociativity",
        &Expr::Compose(vec![Expr::Tensor(vec![d.clone(), id.clone()]), d.clone()]),
        &Expr::Compose(vec![Expr::Tensor(vec![id.clone(), d.clone()]), d.clone()]),
        sig,
        &Signature::tensor_all([sig, sig, sig]),
    ));
    parts.push(check_equal(
        "left counit",
        &Expr::Compose(vec![Expr::Tensor(vec![e.clone(), id.clone()]), d.clone()]),
        &id,
        sig,
        sig,
    ));
    parts.push(check_equal(
        "right counit",
        &Expr::Compose(vec![Expr::Tensor(vec![id.clone(), e.clone()]), d.clone()]),
        &id,
        sig,
        sig,
    ));
    let d_mult = Wiring::new(&[n, n])
        .map(1, 1, &h.comult, &[n, n])
        .map(0, 1, &h.comult, &[n, n])
        .swap(1)
        .map(2, 2, &h.algebra.mult, &[n])
        .map(0, 2, &h.algebra.mult, &[n])
        .build();
    parts.push(check_equal(
        "comultiplication multiplicative",
        &Expr::Compose(vec![d.clone(), mu.clone()]),
        &d_mult,
        &sq,
        &sq,
    ));
    parts.push(check_equal(
        "comultiplication unital",
        &Expr::Compose(vec![d.clone(), unit.clone()]),
        &Expr::Tensor(vec![unit.clone(), unit.clone()]),
        &Signature::ground(),
        &sq,
    ));
    parts.push(check_equal(
        "counit multiplicative",
        &Expr::Compose(vec![e.clone(), mu.clone()]),
        &Expr::Tensor(vec![e.clone(), e.clone()]),
        &sq,
        &Signature::ground(),
    ));
    parts.push(check_equal(
        "counit unital",
        &Expr::Compose(vec![e.clone(), unit.clone()]),
        &Expr::Id(1),
        &Signature::ground(),
        &Signature::ground(),
    ));
    if let Some(s) = &h.antipode {
        let s = Expr::Map(s.clone());
        let ue = Expr::Compose(vec![unit.clone(), e.clone()]);
        parts.push(check_equal(
            "antipode left",
            &Expr::Compose(vec![mu.clone(), Expr::Tensor(vec![s.clone(), id.clone()]), d.clone()]),
            &ue,
            sig,
            sig,
        ));
        parts.push(check_equal(
            "antipode right",
            &Expr::Compose(vec![mu.clone(), Expr::Tensor(vec![id.clone(), s.clone()]), d.clone()]),
            &ue,
            sig,
            sig,
        ));
        if let Ok(si) = h.antipode_inverse() {
            parts.push(check_equal("antipode inverse", &Expr::Compose(vec![s, Expr::Map(si)]), &id, sig, sig));
        }
    }
    Report::all(format!("Hopf algebra {}", h.name()), parts)
}

fn dual_space(sig: &Signature, name: &str) -> Result<Space> {
    let labels = (0..sig.dim()).map(|i| format!("{}*", sig.describe(i))).collect();
    Space::labelled(name, labels)
}

/// The dual Hopf algebra on the dual basis, all structure maps transposed.
pub fn dual_hopf<S: Scalar>(h: &HopfAlgebra<S>) -> Result<HopfAlgebra<S>> {
    let name = if let Some(base) = h.name().strip_suffix('*') { base.to_string() } else { format!("{}*", h.name()) };
    let sig = Signature::of(dual_space(h.sig(), &name)?);
    let sq = sig.tensor(&sig);
    let mult = h.comult.transpose().with_signatures(sq.clone(), sig.clone())?;
    let unit = h.counit.transpose().with_signatures(Signature::ground(), sig.clone())?;
    let algebra = Algebra::new(name, sig.clone(), mult, unit)?;
    let comult = h.algebra.mult.transpose().with_signatures(sig.clone(), sq)?;
    let counit = h.algebra.unit.transpose().with_signatures(sig.clone(), Signature::ground())?;
    let antipode = h.antipode.as_ref().map(LinearMap::transpose);
    HopfAlgebra::new(algebra, comult, counit, antipode)
}

/// `⟨p, h⟩` as a map `H*⊗H → k`.
pub fn pairing<S: Scalar>(dual: &Signature, h: &Signature) -> LinearMap<S> {
    let n = h.dim();
    LinearMap::from_fn(dual.tensor(h), Signature::ground(), |c| if c / n == c % n { vec![(0, S::one())] } else { Vec::new() })
}

/// A Hopf action on an algebra: `H⊗A → A` on the left, `A⊗H → A` on the right.
#[derive(Clone, Debug)]
pub struct ActionData<S> {
    pub hopf: HopfAlgebra<S>,
    pub target: Algebra<S>,
    pub side: Side,
    pub action: LinearMap<S>,
}

impl<S: Scalar> ActionData<S> {
    pub fn new(hopf: &HopfAlgebra<S>, target: &Algebra<S>, side: Side, action: LinearMap<S>) -> Result<Self> {
        let (h, a) = (hopf.sig(), &target.sig);
        let dom = match side {
            Side::Left => h.tensor(a),
            Side::Right => a.tensor(h),
        };
        let action = action.with_signatures(dom, a.clone())?;
        Ok(ActionData { hopf: hopf.clone(), target: target.clone(), side, action })
    }

    /// `h·a = ε(h)a`.
    pub fn trivial(hopf: &HopfAlgebra<S>, target: &Algebra<S>, side: Side) -> Result<Self> {
        let eps = Expr::Map(hopf.counit.clone());
        let (h, a) = (hopf.sig(), &target.sig);
        let (e, dom) = match side {
            Side::Left => (Expr::Tensor(vec![eps, target.id()]), h.tensor(a)),
            Side::Right => (Expr::Tensor(vec![target.id(), eps]), a.tensor(h)),
        };
        ActionData::new(hopf, target, side, e.materialize(dom, a.clone())?)
    }
}

/// Module and module-algebra axioms.
pub fn check_action<S: Scalar>(act: &ActionData<S>) -> Report {
    let (h, a) = (&act.hopf, &act.target);
    let (nh, na) = (h.dim(), a.dim());
    let t = Expr::Map(act.action.clone());
    let (hs, asg) = (h.sig(), &a.sig);
    let ua = Expr::Map(a.unit.clone());
    let uh = Expr::Map(h.algebra.unit.clone());
    let parts = match act.side {
        Side::Left => {
            let ma = Wiring::new(&[nh, na, na])
                .map(0, 1, &h.comult, &[nh, nh])
                .swap(1)
                .map(2, 2, &act.action, &[na])
                .map(0, 2, &act.action, &[na])
                .map(0, 2, &a.mult, &[na])
                .build();
            vec![
                check_equal(
                    "module associativity",
                    &Expr::Compose(vec![t.clone(), Expr::Tensor(vec![h.algebra.mu(), a.id()])]),
                    &Expr::Compose(vec![t.clone(), Expr::Tensor(vec![h.algebra.id(), t.clone()])]),
                    &Signature::tensor_all([hs, hs, asg]),
                    asg,
                ),
                check_equal("module unit", &Expr::Compose(vec![t.clone(), Expr::Tensor(vec![uh, a.id()])]), &a.id(), asg, asg),
                check_equal(
                    "module algebra product",
                    &Expr::Compose(vec![t.clone(), Expr::Tensor(vec![h.algebra.id(), a.mu()])]),
                    &ma,
                    &Signature::tensor_all([hs, asg, asg]),
                    asg,
                ),
                check_equal(
                    "module algebra unit",
                    &Expr::Compose(vec![t, Expr::Tensor(vec![h.algebra.id(), ua.clone()])]),
                    &Expr::Compose(vec![ua, h.eps()]),
                    hs,
                    asg,
                ),
            ]
        }
        Side::Right => {
            let ma = Wiring::new(&[na, na, nh])
                .map(2, 1, &h.comult, &[nh, nh])
                .swap(1)
                .map(2, 2, &act.action, &[na])
                .map(0, 2, &act.action, &[na])
                .map(0, 2, &a.mult, &[na])
                .build();
            vec![
                check_equal(
                    "module associativity",
                    &Expr::Compose(vec![t.clone(), Expr::Tensor(vec![a.id(), h.algebra.mu()])]),
                    &Expr::Compose(vec![t.clone(), Expr::Tensor(vec![t.clone(), h.algebra.id()])]),
                    &Signature::tensor_all([asg, hs, hs]),
                    asg,
                ),
                check_equal("module unit", &Expr::Compose(vec![t.clone(), Expr::Tensor(vec![a.id(), uh])]), &a.id(), asg, asg),
                check_equal(
                    "module algebra product",
                    &Expr::Compose(vec![t.clone(), Expr::Tensor(vec![a.mu(), h.algebra.id()])]),
                    &ma,
                    &Signature::tensor_all([asg, asg, hs]),
                    asg,
                ),
                check_equal(
                    "module algebra unit",
                    &Expr::Compose(vec![t, Expr::Tensor(vec![ua.clone(), h.algebra.id()])]),
                    &Expr::Compose(vec![ua, h.eps()]),
                    hs,
                    asg,
                ),
            ]
        }
    };
    let side = if act.side == Side::Left { "left" } else { "right" };
    Report::all(format!("{side} action of {} on {}", h.name(), a.name), parts)
}

/// `(h⇀p)(h') = p(h'h)` or `(p↼h)(h') = p(hh')` on the dual.
pub fn regular_action<S: Scalar>(h: &HopfAlgebra<S>, side: Side) -> Result<ActionData<S>> {
    let dual = dual_hopf(h)?;
    let n = h.dim();
    let target = dual.algebra.clone();
    let action = match side {
        Side::Left => LinearMap::from_fn(h.sig().tensor(&target.sig), target.sig.clone(), |c| {
            let (a, i) = (c / n, c % n);
            (0..n).map(|b| (b, h.algebra.mult.get(i, b * n + a))).collect()
        }),
        Side::Right => LinearMap::from_fn(target.sig.tensor(h.sig()), target.sig.clone(), |c| {
            let (i, a) = (c / n, c % n);
            (0..n).map(|b| (b, h.algebra.mult.get(i, a * n + b))).collect()
        }),
    };
    ActionData::new(h, &target, side, action)
}

/// `R(h⊗a) = h₁·a⊗h₂` for a left action, `R(c⊗h) = h₁⊗c·h₂` for a right one.
pub fn action_twisting<S: Scalar>(act: &ActionData<S>) -> Result<TwistingMap<S>> {
    let (h, a) = (&act.hopf, &act.target);
    let (nh, na) = (h.dim(), a.dim());
    match act.side {
        Side::Left => {
            let e = Wiring::new(&[nh, na]).map(0, 1, &h.comult, &[nh, nh]).swap(1).map(0, 2, &act.action, &[na]).build();
            TwistingMap::new(a, &h.algebra, e.materialize(h.sig().tensor(&a.sig), a.sig.tensor(h.sig()))?)
        }
        Side::Right => {
            let e = Wiring::new(&[na, nh]).map(1, 1, &h.comult, &[nh, nh]).swap(0).map(1, 2, &act.action, &[na]).build();
            TwistingMap::new(&h.algebra, a, e.materialize(a.sig.tensor(h.sig()), h.sig().tensor(&a.sig))?)
        }
    }
}

/// Coactions on an algebra: `λ: 𝔸 → H⊗𝔸` and/or `ρ: 𝔸 → 𝔸⊗H`.
#[derive(Clone, Debug)]
pub struct CoactionData<S> {
    pub hopf: HopfAlgebra<S>,
    pub target: Algebra<S>,
    pub left: Option<LinearMap<S>>,
    pub right: Option<LinearMap<S>>,
}

impl<S: Scalar> CoactionData<S> {
    pub fn new(
        hopf: &HopfAlgebra<S>,
        target: &Algebra<S>,
        left: Option<LinearMap<S>>,
        right: Option<LinearMap<S>>,
    ) -> Result<Self> {
        let (h, a) = (hopf.sig(), &target.sig);
        let left = left.map(|l| l.with_signatures(a.clone(), h.tensor(a))).transpose()?;
        let right = right.map(|r| r.with_signatures(a.clone(), a.tensor(h))).transpose()?;
        Ok(CoactionData { hopf: hopf.clone(), target: target.clone(), left, right })
    }

    /// `H` over itself with `Δ` on both sides.
    pub fn regular(h: &HopfAlgebra<S>) -> Result<Self> {
        CoactionData::new(h, &h.algebra, Some(h.comult.clone()), Some(h.comult.clone()))
    }
}

/// Comodule, comodule-algebra and bicomodule axioms for whichever sides are present.
pub fn check_coaction<S: Scalar>(co: &CoactionData<S>) -> Report {
    let (h, a) = (&co.hopf, &co.target);
    let (nh, na) = (h.dim(), a.dim());
    let (hs, asg) = (h.sig(), &a.sig);
    let ua = Expr::Map(a.unit.clone());
    let uh = Expr::Map(h.algebra.unit.clone());
    let mut parts = Vec::new();
    if let Some(l) = &co.left {
        let le = Expr::Map(l.clone());
        let ha = hs.tensor(asg);
        parts.push(check_equal(
            "left coassociativity",
            &Expr::Compose(vec![Expr::Tensor(vec![h.delta(), a.id()]), le.clone()]),
            &Expr::Compose(vec![Expr::Tensor(vec![Expr::Id(nh), le.clone()]), le.clone()]),
            asg,
            &Signature::tensor_all([hs, hs, asg]),
        ));
        parts.push(check_equal(
            "left counit",
            &Expr::Compose(vec![Expr::Tensor(vec![h.eps(), a.id()]), le.clone()]),
            &a.id(),
            asg,
            asg,
        ));
        let prod = Wiring::new(&[na, na])
            .map(1, 1, l, &[nh, na])
            .map(0, 1, l, &[nh, na])
            .swap(1)
            .map(0, 2, &h.algebra.mult, &[nh])
            .map(1, 2, &a.mult, &[na])
            .build();
        parts.push(check_equal("left coaction multiplicative", &Expr::Compose(vec![le.clone(), a.mu()]), &prod, &asg.tensor(asg), &ha));
        parts.push(check_equal(
            "left coaction unital",
            &Expr::Compose(vec![le, ua.clone()]),
            &Expr::Tensor(vec![uh.clone(), ua.clone()]),
            &Signature::ground(),
            &ha,
        ));
    }
    if let Some(r) = &co.right {
        let re = Expr::Map(r.clone());
        let ah = asg.tensor(hs);
        parts.push(check_equal(
            "right coassociativity",
            &Expr::Compose(vec![Expr::Tensor(vec![re.clone(), Expr::Id(nh)]), re.clone()]),
            &Expr::Compose(vec![Expr::Tensor(vec![a.id(), h.delta()]), re.clone()]),
            asg,
            &Signature::tensor_all([asg, hs, hs]),
        ));
        parts.push(check_equal(
            "right counit",
            &Expr::Compose(vec![Expr::Tensor(vec![a.id(), h.eps()]), re.clone()]),
            &a.id(),
            asg,
            asg,
        ));
        let prod = Wiring::new(&[na, na])
            .map(1, 1, r, &[na, nh])
            .map(0, 1, r, &[na, nh])
            .swap(1)
            .map(0, 2, &a.mult, &[na])
            .map(1, 2, &h.algebra.mult, &[nh])
            .build();
        parts.push(check_equal("right coaction multiplicative", &Expr::Compose(vec![re.clone(), a.mu()]), &prod, &asg.tensor(asg), &ah));
        parts.push(check_equal(
            "right coaction unital",
            &Expr::Compose(vec![re, ua.clone()]),
            &Expr::Tensor(vec![ua, uh]),
            &Signature::ground(),
            &ah,
        ));
    }
    if let (Some(l), Some(r)) = (&co.left, &co.right) {
        parts.push(check_equal(
            "bicomodule coherence",
            &Expr::Compose(vec![Expr::Tensor(vec![Expr::Map(l.clone()), Expr::Id(nh)]), Expr::Map(r.clone())]),
            &Expr::Compose(vec![Expr::Tensor(vec![Expr::Id(nh), Expr::Map(r.clone())]), Expr::Map(l.clone())]),
            asg,
            &Signature::tensor_all([hs, asg, hs]),
        ));
    }
    Report::all(format!("coaction of {} on {}", h.name(), a.name), parts)
}

/// `R₁(u⊗a) = u₍₋₁₎·a⊗u₍₀₎` from a left coaction and left action, or
/// `R₂(b⊗u) = u₍₀₎⊗b·u₍₁₎` from a right coaction and right action.
pub fn coaction_twisting<S: Scalar>(co: &CoactionData<S>, act: &ActionData<S>) -> Result<TwistingMap<S>> {
    let (nh, nu, na) = (co.hopf.dim(), co.target.dim(), act.target.dim());
    if act.hopf.dim() != nh {
        return Err(Error::DimensionMismatch("coaction and action over different Hopf algebras".into()));
    }
    let (u, a) = (&co.target, &act.target);
    match (act.side, &co.left, &co.right) {
        (Side::Left, Some(l), _) => {
            let e = Wiring::new(&[nu, na]).map(0, 1, l, &[nh, nu]).swap(1).map(0, 2, &act.action, &[na]).build();
            TwistingMap::new(a, u, e.materialize(u.sig.tensor(&a.sig), a.sig.tensor(&u.sig))?)
        }
        (Side::Right, _, Some(r)) => {
            let e = Wiring::new(&[na, nu]).map(1, 1, r, &[nu, nh]).swap(0).map(1, 2, &act.action, &[na]).build();
            TwistingMap::new(u, a, e.materialize(a.sig.tensor(&u.sig), u.sig.tensor(&a.sig))?)
        }
        _ => Err(Error::SideMismatch),
    }
}

/// `R(u⊗φ) = u₍₋₁₎·φ·S⁻¹(u₍₁₎)⊗u₍₀₎` for a bimodule algebra `𝒜` and a
/// bicomodule algebra `𝔸`.
pub fn diagonal_crossed_twisting<S: Scalar>(
    left: &ActionData<S>,
    right: &ActionData<S>,
    co: &CoactionData<S>,
) -> Result<TwistingMap<S>> {
    if left.side != Side::Left || right.side != Side::Right {
        return Err(Error::SideMismatch);
    }
    let (l, r) = match (&co.left, &co.right) {
        (Some(l), Some(r)) => (l, r),
        _ => return Err(Error::SideMismatch),
    };
    let h = &co.hopf;
    let s_inv = h.antipode_inverse()?;
    let (nh, nu, nf) = (h.dim(), co.target.dim(), left.target.dim());
    let e = Wiring::new(&[nu, nf])
        .map(0, 1, r, &[nu, nh])
        .map(0, 1, l, &[nh, nu])
        .map(2, 1, &s_inv, &[nh])
        .permute(&[0, 3, 2, 1])
        .map(0, 2, &left.action, &[nf])
        .map(0, 2, &right.action, &[nf])
        .build();
    let (u, f) = (&co.target, &left.target);
    TwistingMap::new(f, u, e.materialize(u.sig.tensor(&f.sig), f.sig.tensor(&u.sig))?)
}

/// Left and right actions on the same algebra commute.
pub fn check_bimodule<S: Scalar>(left: &ActionData<S>, right: &ActionData<S>) -> Report {
    let (nh, nf) = (left.hopf.dim(), left.target.dim());
    let a = Wiring::new(&[nh, nf, nh]).map(0, 2, &left.action, &[nf]).map(0, 2, &right.action, &[nf]).build();
    let b = Wiring::new(&[nh, nf, nh]).map(1, 2, &right.action, &[nf]).map(0, 2, &left.action, &[nf]).build();
    let hs = left.hopf.sig();
    check_equal("actions commute", &a, &b, &Signature::tensor_all([hs, &left.target.sig, hs]), &left.target.sig)
}

/// A product built two ways, with the comparison.
#[derive(Clone, Debug)]
pub struct Double<S> {
    pub algebra: Algebra<S>,
    pub twist: TwistingMap<S>,
    pub report: Report,
}

/// `D(H)` on `H*⊗H` with `(p⊗h)(p'⊗h') = p(h₁⇀p'↼S⁻¹(h₃))⊗h₂h'`.
pub fn drinfeld_double<S: Scalar>(h: &HopfAlgebra<S>) -> Result<Double<S>> {
    let left = regular_action(h, Side::Left)?;
    let right = regular_action(h, Side::Right)?;
    let twist = diagonal_crossed_twisting(&left, &right, &CoactionData::regular(h)?)?;
    let prod = twisted_product(&twist)?;
    let direct = drinfeld_direct(h, &left.target)?;
    let sig = prod.algebra.sig.clone();
    let cmp = check_equal("direct formula", &prod.algebra.mu(), &Expr::Map(direct), &sig.tensor(&sig), &sig);
    let report = Report::all(format!("Drinfeld double of {}", h.name()), vec![cmp, check_algebra(&prod.algebra)]);
    Ok(Double { algebra: prod.algebra.renamed(format!("D({})", h.name())), twist, report })
}

/// The double's product by explicit sums over Sweedler components.
fn drinfeld_direct<S: Scalar>(h: &HopfAlgebra<S>, dual: &Algebra<S>) -> Result<LinearMap<S>> {
    let n = h.dim();
    let s_inv = h.antipode_inverse()?;
    let d2 = h.comult.tensor(&LinearMap::identity(h.sig())).compose(&h.comult)?;
    let sig = dual.sig.tensor(h.sig());
    let mu = &h.algebra.mult;
    Ok(LinearMap::from_fn(sig.tensor(&sig), sig.clone(), |col| {
        let (x, y) = (col / (n * n), col % (n * n));
        let (p, hh, q, h2) = (x / n, x % n, y / n, y % n);
        let mut out: SparseVec<S> = Vec::new();
        for (t, c) in d2.column_vec(hh) {
            let (a, b, e) = (t / (n * n), (t / n) % n, t % n);
            // (a ⇀ q ↼ S⁻¹(e))(z) = q(S⁻¹(e) z a)
            for (se, sc) in s_inv.column_vec(e) {
                for z in 0..n {
                    let mut coeff = S::zero();
                    for (w, wc) in mu.column_vec(se * n + z) {
                        coeff = coeff + wc * mu.get(q, w * n + a);
                    }
                    if coeff.is_zero() {
                        continue;
                    }
                    let base = c.clone() * sc.clone() * coeff;
                    for (pq, pc) in dual.product(p, z) {
                        for (hb, hc) in h.algebra.product(b, h2) {
                            out.push((pq * n + hb, base.clone() * pc.clone() * hc));
                        }
                    }
                }
            }
        }
        out
    }))
}

/// `ℋ(H) = H⊗_R H*` with `R(p⊗h) = p₁⇀h⊗p₂` and `p⇀h = p(h₂)h₁`.
pub fn heisenberg_double<S: Scalar>(h: &HopfAlgebra<S>) -> Result<Double<S>> {
    let dual = dual_hopf(h)?;
    let act = regular_action(&dual, Side::Left)?;
    let act = ActionData::new(&dual, &h.algebra, Side::Left, act.action)?;
    let twist = action_twisting(&act)?;
    let prod = twisted_product(&twist)?;
    let n = h.dim();
    let sig = prod.algebra.sig.clone();
    let direct = LinearMap::from_fn(sig.tensor(&sig), sig.clone(), |col| {
        let (x, y) = (col / (n * n), col % (n * n));
        let (a, p, b, q) = (x / n, x % n, y / n, y % n);
        let mut out = Vec::new();
        // (a⊗p)(b⊗q) = a(p₁⇀b)⊗p₂q with p⇀b = Σ p(b₂) b₁
        for (t, c) in dual.comult.column_vec(p) {
            let (p1, p2) = (t / n, t % n);
            for (u, uc) in h.comult.column_vec(b) {
                let (b1, b2) = (u / n, u % n);
                if b2 != p1 {
                    continue;
                }
                for (ab, ac) in h.algebra.product(a, b1) {
                    for (pq, pc) in dual.algebra.product(p2, q) {
                        out.push((ab * n + pq, c.clone() * uc.clone() * ac.clone() * pc));
                    }
                }
            }
        }
        out
    });
    let cmp = check_equal("direct formula", &prod.algebra.mu(), &Expr::Map(direct), &sig.tensor(&sig), &sig);
    let report = Report::all(format!("Heisenberg double of {}", h.name()), vec![cmp, check_algebra(&prod.algebra)]);
    Ok(Double { algebra: prod.algebra.renamed(format!("H({})", h.name())), twist, report })
}

/// `D(H)` as a bialgebra with coalgebra `H*ᶜᵒᵖ⊗H`.
pub fn drinfeld_double_hopf<S: Scalar>(h: &HopfAlgebra<S>) -> Result<HopfAlgebra<S>> {
    let dual = dual_hopf(h)?;
    let d = drinfeld_double(h)?;
    let n = h.dim();
    let comult = Wiring::new(&[n, n])
        .map(1, 1, &h.comult, &[n, n])
        .map(0, 1, &dual.comult, &[n, n])
        .permute(&[1, 2, 0, 3])
        .build();
    let sig = d.algebra.sig.clone();
    let comult = comult.materialize(sig.clone(), sig.tensor(&sig))?;
    let counit = dual.counit.tensor(&h.counit);
    HopfAlgebra::new(d.algebra, comult, counit, None)
}

/// The Nill–Szlachányi observable chain on factors `n..=m`.
#[derive(Debug)]
pub struct NsChain<S> {
    pub first: i64,
    pub family: TwistFamily<S>,
    pub product: NFold<S>,
}

/// Factor `i` is `H` for even `i` and `H*` for odd `i`; neighbours twist by the
/// regular actions and factors two or more apart commute.
pub fn ns_family<S: Scalar>(h: &HopfAlgebra<S>, n: i64, m: i64) -> Result<TwistFamily<S>> {
    if m < n {
        return Err(Error::DimensionMismatch(format!("empty chain {n}..={m}")));
    }
    let dual = dual_hopf(h)?;
    let on_h = ActionData::new(&dual, &h.algebra, Side::Left, regular_action(&dual, Side::Left)?.action)?;
    let on_dual = regular_action(h, Side::Left)?;
    let h_then_dual = action_twisting(&on_h)?;
    let dual_then_h = action_twisting(&on_dual)?;
    let algebras: Vec<Algebra<S>> =
        (n..=m).map(|i| if i.rem_euclid(2) == 0 { h.algebra.clone() } else { dual.algebra.clone() }).collect();
    let mut maps = std::collections::BTreeMap::new();
    for i in 0..algebras.len() {
        for j in i + 1..algebras.len() {
            let r = if j == i + 1 {
                if (n + i as i64).rem_euclid(2) == 0 {
                    h_then_dual.clone()
                } else {
                    dual_then_h.clone()
                }
            } else {
                TwistingMap::flip(&algebras[i], &algebras[j])
            };
            maps.insert((i, j), r);
        }
    }
    TwistFamily::new(algebras, maps)
}

pub fn ns_chain<S: Scalar>(h: &HopfAlgebra<S>, n: i64, m: i64) -> Result<NsChain<S>> {
    let family = ns_family(h, n, m)?;
    let product = n_fold_product(&family)?;
    Ok(NsChain { first: n, family, product })
}

/// `A_{n,m} ↪ A_{n',m'}` for `n' ≤ n ≤ m ≤ m'`.
pub fn ns_inclusion<S: Scalar>(inner: &NsChain<S>, outer: &NsChain<S>) -> Result<(LinearMap<S>, Report)> {
    let (n, m) = (inner.first, inner.first + inner.family.len() as i64 - 1);
    let (n2, m2) = (outer.first, outer.first + outer.family.len() as i64 - 1);
    if n2 > n || m > m2 {
        return Err(Error::DimensionMismatch(format!("chain {n}..={m} is not inside {n2}..={m2}")));
    }
    let mut f = LinearMap::identity(&Signature::ground());
    for (k, a) in outer.family.algebras.iter().enumerate() {
        let i = n2 + k as i64;
        f = f.tensor(&if (n..=m).contains(&i) { LinearMap::identity(&a.sig) } else { a.unit.clone() });
    }
    let f = f.with_signatures(inner.product.algebra.sig.clone(), outer.product.algebra.sig.clone())?;
    let rep = check_morphism(&f, &inner.product.algebra, &outer.product.algebra)?
        .renamed(format!("inclusion A[{n},{m}] -> A[{n2},{m2}]"));
    Ok((f, rep))
}

/// Left multiplication by `x` in `a`.
pub fn left_mult<S: Scalar>(a: &Algebra<S>, x: &[S]) -> LinearMap<S> {
    let v = LinearMap::from_vector(&a.sig, x);
    Expr::Compose(vec![a.mu(), Expr::Tensor(vec![Expr::Map(v), a.id()])])
        .materialize(a.sig.clone(), a.sig.clone())
        .expect("shapes agree")
}

/// Inverse of an element, through its left multiplication operator.
pub fn inverse_element<S: Scalar>(a: &Algebra<S>, x: &[S]) -> Result<Vec<S>> {
    let inv = left_mult(a, x).invert()?;
    let v = inv.apply(&a.unit.column_vec(0));
    let mut out = vec![S::zero(); a.dim()];
    for (i, s) in v {
        out[i] = s;
    }
    // Right inverse too: `out·x = 1`.
    let check = mul_elems(a, &out, x);
    if !LinearMap::from_vector(&a.sig, &check).same_as(&a.unit) {
        return Err(Error::NotInvertible);
    }
    Ok(out)
}

pub fn dense<S: Scalar>(v: &[(usize, S)], n: usize) -> Vec<S> {
    let mut out = vec![S::zero(); n];
    for (i, s) in v {
        out[*i] = out[*i].clone() + s.clone();
    }
    out
}

fn mul_elems<S: Scalar>(a: &Algebra<S>, x: &[S], y: &[S]) -> Vec<S> {
    let n = a.dim();
    let mut out = Vec::new();
    for (i, xi) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
        for (j, yj) in y.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (k, c) in a.mult.column_vec(i * n + j) {
                out.push((k, xi.clone() * yj.clone() * c));
            }
        }
    }
    dense(&out, n)
}

fn apply_dense<S: Scalar>(f: &LinearMap<S>, x: &[S]) -> Vec<S> {
    f.apply_dense(x)
}

/// Places the legs of `x ∈ H⊗H` at positions `(i, j)` of `H⊗H⊗H`, unit elsewhere.
fn legs<S: Scalar>(h: &HopfAlgebra<S>, x: &[S], i: usize, j: usize) -> Vec<S> {
    let n = h.dim();
    let one = h.algebra.unit_vector();
    let mut out = vec![S::zero(); n * n * n];
    for (c, s) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
        let (a, b) = (c / n, c % n);
        for (k, ok) in one.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            let mut t = [k; 3];
            t[i] = a;
            t[j] = b;
            let idx = (t[0] * n + t[1]) * n + t[2];
            out[idx] = out[idx].clone() + s.clone() * ok.clone();
        }
    }
    out
}

fn vec_report<S: Scalar>(name: &str, sig: &Signature, lhs: &[S], rhs: &[S]) -> Report {
    let l = LinearMap::from_vector(sig, lhs);
    let r = LinearMap::from_vector(sig, rhs);
    map_equal(name, &l, &r)
}

/// Counitality and the cocycle identity `(1⊗F)(id⊗Δ)(F) = (F⊗1)(Δ⊗id)(F)`.
pub fn cocycle_check<S: Scalar>(h: &HopfAlgebra<S>, f: &[S]) -> Result<Report> {
    let n = h.dim();
    let h2 = h.square_algebra();
    inverse_element(&h2, f)?;
    let h3 = power_algebra(&h.algebra, 3);
    let id = LinearMap::identity(h.sig());
    let eps_id = h.counit.tensor(&id);
    let id_eps = id.tensor(&h.counit);
    let one = h.algebra.unit_vector();
    let mut parts = vec![
        vec_report("left counital", h.sig(), &apply_dense(&eps_id, f), &one),
        vec_report("right counital", h.sig(), &apply_dense(&id_eps, f), &one),
    ];
    let id_delta = id.tensor(&h.comult);
    let delta_id = h.comult.tensor(&id);
    let lhs = mul_elems(&h3, &legs(h, f, 1, 2), &apply_dense(&id_delta, f));
    let rhs = mul_elems(&h3, &legs(h, f, 0, 1), &apply_dense(&delta_id, f));
    parts.push(vec_report("cocycle identity", &h3.sig, &lhs, &rhs));
    let _ = n;
    Ok(Report::all("2-cocycle", parts))
}

/// `H_F` with `Δ_F(h) = FΔ(h)F⁻¹` and `S_F(h) = U S(h) U⁻¹`, `U = F¹S(F²)`.
pub fn twist_hopf<S: Scalar>(h: &HopfAlgebra<S>, f: &[S]) -> Result<HopfAlgebra<S>> {
    let rep = cocycle_check(h, f)?;
    if !rep.pass {
        return Err(Error::CocycleViolated(Box::new(rep)));
    }
    let h2 = h.square_algebra();
    let finv = inverse_element(&h2, f)?;
    let lf = left_mult(&h2, f);
    let rfi = Expr::Compose(vec![h2.mu(), Expr::Tensor(vec![h2.id(), Expr::Map(LinearMap::from_vector(&h2.sig, &finv))])])
        .materialize(h2.sig.clone(), h2.sig.clone())?;
    let comult = rfi.compose(&lf.compose(&h.comult)?)?;
    let antipode = match &h.antipode {
        Some(s) => {
            let u = apply_dense(&h.algebra.mult.compose(&LinearMap::identity(h.sig()).tensor(s))?, f);
            let uinv = inverse_element(&h.algebra, &u)?;
            let lu = left_mult(&h.algebra, &u);
            let ru = Expr::Compose(vec![
                h.algebra.mu(),
                Expr::Tensor(vec![h.algebra.id(), Expr::Map(LinearMap::from_vector(h.sig(), &uinv))]),
            ])
            .materialize(h.sig().clone(), h.sig().clone())?;
            Some(ru.compose(&lu.compose(s)?)?)
        }
        None => None,
    };
    let algebra = h.algebra.clone().renamed(format!("{}_F", h.name()));
    HopfAlgebra::new(algebra, comult, h.counit.clone(), antipode)
}

/// `(Δ⊗id)(r) = r₁₃r₂₃`, `(id⊗Δ)(r) = r₁₃r₁₂`, `Δᶜᵒᵖ(h)r = rΔ(h)`.
pub fn quasitriangular_check<S: Scalar>(h: &HopfAlgebra<S>, r: &[S]) -> Result<Report> {
    let n = h.dim();
    let h2 = h.square_algebra();
    inverse_element(&h2, r)?;
    let h3 = power_algebra(&h.algebra, 3);
    let id = LinearMap::identity(h.sig());
    let (r12, r13, r23) = (legs(h, r, 0, 1), legs(h, r, 0, 2), legs(h, r, 1, 2));
    let qt1 = vec_report(
        "(Δ⊗id)(r) = r13 r23",
        &h3.sig,
        &apply_dense(&h.comult.tensor(&id), r),
        &mul_elems(&h3, &r13, &r23),
    );
    let qt2 = vec_report(
        "(id⊗Δ)(r) = r13 r12",
        &h3.sig,
        &apply_dense(&id.tensor(&h.comult), r),
        &mul_elems(&h3, &r13, &r12),
    );
    let rv = Expr::Map(LinearMap::from_vector(&h2.sig, r));
    let lhs = Expr::Compose(vec![h2.mu(), Expr::Tensor(vec![Expr::Compose(vec![Expr::flip(n, n), h.delta()]), rv.clone()])]);
    let rhs = Expr::Compose(vec![h2.mu(), Expr::Tensor(vec![rv, h.delta()])]);
    let qt3 = check_equal("Δcop(h) r = r Δ(h)", &lhs, &rhs, h.sig(), &h2.sig);
    Ok(Report::all("quasitriangular structure", vec![qt1, qt2, qt3]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    #[test]
    fn catalog_hopf_algebras_verify() {
        for h in [HopfAlgebra::<Q>::cyclic(2), HopfAlgebra::cyclic(3), HopfAlgebra::klein(), HopfAlgebra::sweedler()] {
            let h = h.unwrap();
            assert!(check_hopf(&h).pass, "{}", check_hopf(&h).render());
            let d = dual_hopf(&h).unwrap();
            assert!(check_hopf(&d).pass, "{}", check_hopf(&d).render());
            let dd = dual_hopf(&d).unwrap();
            assert!(dd.algebra.mult.same_as(&h.algebra.mult) && dd.comult.same_as(&h.comult));
        }
    }

    #[test]
    fn sweedler_is_neither_commutative_nor_cocommutative() {
        let h = HopfAlgebra::<Q>::sweedler().unwrap();
        assert!(!h.is_commutative() && !h.is_cocommutative());
        assert!(HopfAlgebra::<Q>::klein().unwrap().is_cocommutative());
    }

    #[test]
    fn dropped_comultiplication_term_breaks_coassociativity() {
        let h = HopfAlgebra::<Q>::sweedler().unwrap();
        let mut t: Vec<_> = h.comult.entries().map(|(r, c, v)| (r, c, *v)).collect();
        for e in t.iter_mut().filter(|e| e.0 == 6 && e.1 == 2) {
            e.2 = Q::from_int(2);
        }
        let bad = LinearMap::from_triplets(h.comult.domain().clone(), h.comult.codomain().clone(), t).unwrap();
        let bad = HopfAlgebra::new(h.algebra.clone(), bad, h.counit.clone(), h.antipode.clone()).unwrap();
        let r = check_hopf(&bad);
        assert!(!r.find("coassociativity").unwrap().pass);
    }

    #[test]
    fn regular_actions_are_module_algebras() {
        for h in [HopfAlgebra::<Q>::cyclic(2).unwrap(), HopfAlgebra::sweedler().unwrap()] {
            for side in [Side::Left, Side::Right] {
                let act = regular_action(&h, side).unwrap();
                assert!(check_action(&act).pass, "{}", check_action(&act).render());
            }
        }
    }

    #[test]
    fn doubles_match_direct_formulas() {
        for h in [HopfAlgebra::<Q>::cyclic(2).unwrap(), HopfAlgebra::sweedler().unwrap()] {
            let d = drinfeld_double(&h).unwrap();
            assert!(d.report.pass, "{}", d.report.render());
            let hd = heisenberg_double(&h).unwrap();
            assert!(hd.report.pass, "{}", hd.report.render());
        }
    }

    #[test]
    fn sweedler_triangular_structure() {
        let h = HopfAlgebra::<Q>::sweedler().unwrap();
        let half = Q::new(1, 2);
        let mut r = vec![Q::from_int(0); 16];
        r[0] = half;
        r[1] = half;
        r[4] = half;
        r[5] = -half;
        assert!(quasitriangular_check(&h, &r).unwrap().pass);
        r[5] = half;
        let bad = quasitriangular_check(&h, &r);
        assert!(bad.map(|b| !b.pass).unwrap_or(true));
    }

    #[test]
    fn drinfeld_double_is_a_bialgebra() {
        let d = drinfeld_double_hopf(&HopfAlgebra::<Q>::sweedler().unwrap()).unwrap();
        let r = check_hopf(&d);
        assert!(r.pass, "{}", r.render());
    }
}
