//! Deforming one factor of a twisted product while keeping the product up to
//! isomorphism, on the left, on the right, and on both ends of a triple.

use crate::algebra::{check_algebra, check_morphism, Algebra};
use crate::error::{Error, Result};
use crate::expr::{check_equal, Expr, Wiring};
use crate::iterate::{check_hexagon, triple_product};
use crate::linear::LinearMap;
use crate::report::Report;
use crate::scalar::Scalar;
use crate::space::Signature;
use crate::twist::{check_twisting, check_unital, map_equal, twisted_product, TwistingMap};

/// `μ: B⊗A → A`, `ρ, λ: A → A⊗B` over `R: B⊗A → A⊗B`.
#[derive(Clone, Debug)]
pub struct LeftTwistDatum<S> {
    pub r: TwistingMap<S>,
    pub mu: LinearMap<S>,
    pub rho: LinearMap<S>,
    pub lambda: LinearMap<S>,
}

/// `ν: C⊗B → C`, `θ, γ: C → B⊗C` over `R: C⊗B → B⊗C`.
#[derive(Clone, Debug)]
pub struct RightTwistDatum<S> {
    pub r: TwistingMap<S>,
    pub nu: LinearMap<S>,
    pub theta: LinearMap<S>,
    pub gamma: LinearMap<S>,
}

impl<S: Scalar> LeftTwistDatum<S> {
    pub fn new(r: &TwistingMap<S>, mu: LinearMap<S>, rho: LinearMap<S>, lambda: LinearMap<S>) -> Result<Self> {
        let (a, b) = (&r.a.sig, &r.b.sig);
        Ok(LeftTwistDatum {
            r: r.clone(),
            mu: mu.with_signatures(b.tensor(a), a.clone())?,
            rho: rho.with_signatures(a.clone(), a.tensor(b))?,
            lambda: lambda.with_signatures(a.clone(), a.tensor(b))?,
        })
    }

    /// `ρ = λ = a ↦ a⊗1` and `b·a = φ(b)a` for a character `φ` of `B`.
    pub fn trivial(r: &TwistingMap<S>, character: &LinearMap<S>) -> Result<Self> {
        let (a, b) = (&r.a, &r.b);
        let coact = LinearMap::identity(&a.sig).tensor(&b.unit);
        let mu = character.tensor(&LinearMap::identity(&a.sig));
        LeftTwistDatum::new(r, mu, coact.clone(), coact)
    }
}

impl<S: Scalar> RightTwistDatum<S> {
    pub fn new(r: &TwistingMap<S>, nu: LinearMap<S>, theta: LinearMap<S>, gamma: LinearMap<S>) -> Result<Self> {
        let (b, c) = (&r.a.sig, &r.b.sig);
        Ok(RightTwistDatum {
            r: r.clone(),
            nu: nu.with_signatures(c.tensor(b), c.clone())?,
            theta: theta.with_signatures(c.clone(), b.tensor(c))?,
            gamma: gamma.with_signatures(c.clone(), b.tensor(c))?,
        })
    }

    /// `θ = γ = c ↦ 1⊗c`, `c·b = φ(b)c`.
    pub fn trivial(r: &TwistingMap<S>, character: &LinearMap<S>) -> Result<Self> {
        let (b, c) = (&r.a, &r.b);
        let coact = b.unit.tensor(&LinearMap::identity(&c.sig));
        let nu = LinearMap::identity(&c.sig).tensor(character);
        RightTwistDatum::new(r, nu, coact.clone(), coact)
    }
}

/// A deformed factor, the transported twisting map, and the comparison isomorphism.
#[derive(Clone, Debug)]
pub struct Invariance<S> {
    pub deformed: Algebra<S>,
    pub twist: TwistingMap<S>,
    pub iso: LinearMap<S>,
    pub inverse: LinearMap<S>,
    pub report: Report,
}

fn m<S: Scalar>(f: &LinearMap<S>) -> Expr<S> {
    Expr::Map(f.clone())
}

fn violated(report: Report) -> Result<Report> {
    if report.pass {
        Ok(report)
    } else {
        Err(Error::DatumViolated(Box::new(report)))
    }
}

/// `a∗a' = a₍₀₎(a₍₁₎·a')`.
fn left_star<S: Scalar>(d: &LeftTwistDatum<S>) -> Expr<S> {
    let (na, nb) = (d.r.a.dim(), d.r.b.dim());
    Wiring::new(&[na, na])
        .map(0, 1, &d.rho, &[na, nb])
        .map(1, 2, &d.mu, &[na])
        .map(0, 2, &d.r.a.mult, &[na])
        .build()
}

/// Unit normalisations plus the two conditions making `∗` associative.
pub fn check_left_product<S: Scalar>(d: &LeftTwistDatum<S>) -> Report {
    let (a, b) = (&d.r.a, &d.r.b);
    let (na, nb) = (a.dim(), b.dim());
    let (ua, ub) = (m(&a.unit), m(&b.unit));
    let star = left_star(d);
    let ab = a.sig.tensor(&b.sig);
    let unit = Report::all(
        "unit",
        vec![
            check_equal("rho(1) = 1⊗1", &Expr::Compose(vec![m(&d.rho), ua.clone()]), &Expr::Tensor(vec![ua.clone(), ub.clone()]), &Signature::ground(), &ab),
            check_equal("1·a = a", &Expr::Compose(vec![m(&d.mu), Expr::Tensor(vec![ub.clone(), a.id()])]), &a.id(), &a.sig, &a.sig),
            check_equal("a∗1 = a", &Expr::Compose(vec![star.clone(), Expr::Tensor(vec![a.id(), ua])]), &a.id(), &a.sig, &a.sig),
        ],
    );
    let act = check_equal(
        "action compatible with the deformed product",
        &Expr::Compose(vec![m(&d.mu), Expr::Tensor(vec![b.id(), star.clone()])]),
        &Wiring::new(&[nb, na, na])
            .map(1, 1, &d.rho, &[na, nb])
            .map(0, 2, &d.r.map, &[na, nb])
            .map(1, 2, &b.mult, &[nb])
            .map(1, 2, &d.mu, &[na])
            .map(0, 2, &a.mult, &[na])
            .build(),
        &Signature::tensor_all([&b.sig, &a.sig, &a.sig]),
        &a.sig,
    );
    let rho = check_equal(
        "rho multiplicative for the deformed product",
        &Expr::Compose(vec![m(&d.rho), star]),
        &Wiring::new(&[na, na])
            .map(1, 1, &d.rho, &[na, nb])
            .map(0, 1, &d.rho, &[na, nb])
            .map(1, 2, &d.r.map, &[na, nb])
            .map(0, 2, &a.mult, &[na])
            .map(1, 2, &b.mult, &[nb])
            .build(),
        &a.sig.tensor(&a.sig),
        &ab,
    );
    Report::all("deformation datum (product)", vec![unit, act, rho])
}

/// `A^d`, the space of `A` with `a∗a' = a₍₀₎(a₍₁₎·a')`.
pub fn deformed_left<S: Scalar>(d: &LeftTwistDatum<S>) -> Result<(Algebra<S>, Report)> {
    let pre = violated(check_left_product(d))?;
    let a = &d.r.a;
    let mult = left_star(d).materialize(a.sig.tensor(&a.sig), a.sig.clone())?;
    let ad = Algebra::new(format!("{}^d", a.name), a.sig.clone(), mult, a.unit.clone())?;
    let report = Report::all("left deformation", vec![pre, check_algebra(&ad)]);
    Ok((ad, report))
}

/// `λ(1) = 1⊗1` and the three conditions tying `λ` to `ρ` and to `∗`.
fn check_left_lambda<S: Scalar>(r: &TwistingMap<S>, a_prime: &Algebra<S>, rho: &LinearMap<S>, lambda: &LinearMap<S>) -> Report {
    let (a, b) = (&r.a, &r.b);
    let (na, nb) = (a.dim(), b.dim());
    let ab = a.sig.tensor(&b.sig);
    let (ua, ub) = (m(&a.unit), m(&b.unit));
    let unit = check_equal("lambda(1) = 1⊗1", &Expr::Compose(vec![m(lambda), ua.clone()]), &Expr::Tensor(vec![ua, ub.clone()]), &Signature::ground(), &ab);
    let mult = check_equal(
        "lambda multiplicative",
        &Expr::Compose(vec![m(lambda), a.mu()]),
        &Wiring::new(&[na, na])
            .map(0, 1, lambda, &[na, nb])
            .map(1, 2, &r.map, &[na, nb])
            .map(1, 1, lambda, &[na, nb])
            .map(0, 2, &a_prime.mult, &[na])
            .map(1, 2, &b.mult, &[nb])
            .build(),
        &a.sig.tensor(&a.sig),
        &ab,
    );
    let a_otimes_1 = Expr::Tensor(vec![a.id(), ub]);
    let lr = check_equal(
        "lambda inverts rho",
        &Wiring::new(&[na]).map(0, 1, rho, &[na, nb]).map(0, 1, lambda, &[na, nb]).map(1, 2, &b.mult, &[nb]).build(),
        &a_otimes_1,
        &a.sig,
        &ab,
    );
    let rl = check_equal(
        "rho inverts lambda",
        &Wiring::new(&[na]).map(0, 1, lambda, &[na, nb]).map(0, 1, rho, &[na, nb]).map(1, 2, &b.mult, &[nb]).build(),
        &a_otimes_1,
        &a.sig,
        &ab,
    );
    Report::all("deformation datum (lambda)", vec![unit, mult, lr, rl])
}

/// `R'(b⊗a) = (a₍₀₎_R)_[0] ⊗ (a₍₀₎_R)_[1] b_R a₍₁₎` with `φ(a⊗b) = a₍₀₎⊗a₍₁₎b`.
fn left_conclusion<S: Scalar>(
    r: &TwistingMap<S>,
    a_prime: &Algebra<S>,
    rho: &LinearMap<S>,
    lambda: &LinearMap<S>,
    mut parts: Vec<Report>,
) -> Result<Invariance<S>> {
    let (a, b) = (&r.a, &r.b);
    let (na, nb) = (a.dim(), b.dim());
    let rd = Wiring::new(&[nb, na])
        .map(1, 1, rho, &[na, nb])
        .map(0, 2, &r.map, &[na, nb])
        .map(0, 1, lambda, &[na, nb])
        .map(1, 2, &b.mult, &[nb])
        .map(1, 2, &b.mult, &[nb])
        .build()
        .materialize(b.sig.tensor(&a.sig), a.sig.tensor(&b.sig))?;
    let twist = TwistingMap::new(a_prime, b, rd)?;
    let tw = check_twisting(&twist).renamed("deformed map is twisting");
    if !tw.pass {
        parts.push(tw);
        return Err(Error::AxiomViolation(Box::new(Report::all("left invariance", parts))));
    }
    parts.push(tw);
    parts.push(check_unital(&twist).renamed("deformed map is unital"));
    let iso = Wiring::new(&[na, nb]).map(0, 1, rho, &[na, nb]).map(1, 2, &b.mult, &[nb]).build();
    let inv = Wiring::new(&[na, nb]).map(0, 1, lambda, &[na, nb]).map(1, 2, &b.mult, &[nb]).build();
    let ab = a.sig.tensor(&b.sig);
    let iso = iso.materialize(ab.clone(), ab.clone())?;
    let inverse = inv.materialize(ab.clone(), ab.clone())?;
    let deformed_prod = twisted_product(&twist)?;
    let original = twisted_product(r)?;
    parts.push(check_morphism(&iso, &deformed_prod.algebra, &original.algebra)?.renamed("isomorphism is multiplicative"));
    parts.push(map_equal("inverse after isomorphism", &inverse.compose(&iso)?, &LinearMap::identity(&ab)));
    parts.push(map_equal("isomorphism after inverse", &iso.compose(&inverse)?, &LinearMap::identity(&ab)));
    Ok(Invariance { deformed: a_prime.clone(), twist, iso, inverse, report: Report::all("left invariance", parts) })
}

/// `A^d⊗_{R^d}B ≅ A⊗_R B`.
pub fn invariance_left<S: Scalar>(d: &LeftTwistDatum<S>) -> Result<Invariance<S>> {
    let (ad, def) = deformed_left(d)?;
    let lam = violated(check_left_lambda(&d.r, &ad, &d.rho, &d.lambda))?;
    left_conclusion(&d.r, &ad, &d.rho, &d.lambda, vec![def, lam])
}

/// Another algebra `A'` on the space of `A`, with `ρ` an algebra map `A' → A⊗_R B`.
pub fn invariance_left_general<S: Scalar>(
    a_prime: &Algebra<S>,
    rho: &LinearMap<S>,
    lambda: &LinearMap<S>,
    r: &TwistingMap<S>,
) -> Result<Invariance<S>> {
    let ab = r.a.sig.tensor(&r.b.sig);
    let a_prime = Algebra::new(a_prime.name.clone(), r.a.sig.clone(), a_prime.mult.clone(), a_prime.unit.clone())?;
    let rho = rho.with_signatures(r.a.sig.clone(), ab.clone())?;
    let lambda = lambda.with_signatures(r.a.sig.clone(), ab)?;
    let product = twisted_product(r)?;
    let morph = check_morphism(&rho, &a_prime, &product.algebra)?.renamed("rho is an algebra map");
    let pre = violated(Report::all("general left datum", vec![morph, check_left_lambda(r, &a_prime, &rho, &lambda)]))?;
    left_conclusion(r, &a_prime, &rho, &lambda, vec![pre])
}

/// `c∗c' = (c·c'₍₋₁₎)c'₍₀₎`.
fn right_star<S: Scalar>(d: &RightTwistDatum<S>) -> Expr<S> {
    let (nb, nc) = (d.r.a.dim(), d.r.b.dim());
    Wiring::new(&[nc, nc])
        .map(1, 1, &d.theta, &[nb, nc])
        .map(0, 2, &d.nu, &[nc])
        .map(0, 2, &d.r.b.mult, &[nc])
        .build()
}

pub fn check_right_product<S: Scalar>(d: &RightTwistDatum<S>) -> Report {
    let (b, c) = (&d.r.a, &d.r.b);
    let (nb, nc) = (b.dim(), c.dim());
    let (ub, uc) = (m(&b.unit), m(&c.unit));
    let star = right_star(d);
    let bc = b.sig.tensor(&c.sig);
    let unit = Report::all(
        "unit",
        vec![
            check_equal("theta(1) = 1⊗1", &Expr::Compose(vec![m(&d.theta), uc.clone()]), &Expr::Tensor(vec![ub.clone(), uc.clone()]), &Signature::ground(), &bc),
            check_equal("c·1 = c", &Expr::Compose(vec![m(&d.nu), Expr::Tensor(vec![c.id(), ub])]), &c.id(), &c.sig, &c.sig),
            check_equal("1∗c = c", &Expr::Compose(vec![star.clone(), Expr::Tensor(vec![uc, c.id()])]), &c.id(), &c.sig, &c.sig),
        ],
    );
    let act = check_equal(
        "action compatible with the deformed product",
        &Expr::Compose(vec![m(&d.nu), Expr::Tensor(vec![star.clone(), b.id()])]),
        &Wiring::new(&[nc, nc, nb])
            .map(1, 1, &d.theta, &[nb, nc])
            .map(2, 2, &d.r.map, &[nb, nc])
            .map(1, 2, &b.mult, &[nb])
            .map(0, 2, &d.nu, &[nc])
            .map(0, 2, &c.mult, &[nc])
            .build(),
        &Signature::tensor_all([&c.sig, &c.sig, &b.sig]),
        &c.sig,
    );
    let theta = check_equal(
        "theta multiplicative for the deformed product",
        &Expr::Compose(vec![m(&d.theta), star]),
        &Wiring::new(&[nc, nc])
            .map(1, 1, &d.theta, &[nb, nc])
            .map(0, 1, &d.theta, &[nb, nc])
            .map(1, 2, &d.r.map, &[nb, nc])
            .map(0, 2, &b.mult, &[nb])
            .map(1, 2, &c.mult, &[nc])
            .build(),
        &c.sig.tensor(&c.sig),
        &bc,
    );
    Report::all("deformation datum (product)", vec![unit, act, theta])
}

/// `^dC`, the space of `C` with `c∗c' = (c·c'₍₋₁₎)c'₍₀₎`.
pub fn deformed_right<S: Scalar>(d: &RightTwistDatum<S>) -> Result<(Algebra<S>, Report)> {
    let pre = violated(check_right_product(d))?;
    let c = &d.r.b;
    let mult = right_star(d).materialize(c.sig.tensor(&c.sig), c.sig.clone())?;
    let cd = Algebra::new(format!("d^{}", c.name), c.sig.clone(), mult, c.unit.clone())?;
    let report = Report::all("right deformation", vec![pre, check_algebra(&cd)]);
    Ok((cd, report))
}

fn check_right_gamma<S: Scalar>(r: &TwistingMap<S>, c_prime: &Algebra<S>, theta: &LinearMap<S>, gamma: &LinearMap<S>) -> Report {
    let (b, c) = (&r.a, &r.b);
    let (nb, nc) = (b.dim(), c.dim());
    let bc = b.sig.tensor(&c.sig);
    let (ub, uc) = (m(&b.unit), m(&c.unit));
    let unit = check_equal("gamma(1) = 1⊗1", &Expr::Compose(vec![m(gamma), uc.clone()]), &Expr::Tensor(vec![ub.clone(), uc]), &Signature::ground(), &bc);
    let mult = check_equal(
        "gamma multiplicative",
        &Expr::Compose(vec![m(gamma), c.mu()]),
        &Wiring::new(&[nc, nc])
            .map(1, 1, gamma, &[nb, nc])
            .map(0, 2, &r.map, &[nb, nc])
            .map(1, 1, gamma, &[nb, nc])
            .map(0, 2, &b.mult, &[nb])
            .map(1, 2, &c_prime.mult, &[nc])
            .build(),
        &c.sig.tensor(&c.sig),
        &bc,
    );
    let one_otimes_c = Expr::Tensor(vec![ub, c.id()]);
    let gt = check_equal(
        "gamma inverts theta",
        &Wiring::new(&[nc]).map(0, 1, theta, &[nb, nc]).map(1, 1, gamma, &[nb, nc]).map(0, 2, &b.mult, &[nb]).build(),
        &one_otimes_c,
        &c.sig,
        &bc,
    );
    let tg = check_equal(
        "theta inverts gamma",
        &Wiring::new(&[nc]).map(0, 1, gamma, &[nb, nc]).map(1, 1, theta, &[nb, nc]).map(0, 2, &b.mult, &[nb]).build(),
        &one_otimes_c,
        &c.sig,
        &bc,
    );
    Report::all("deformation datum (gamma)", vec![unit, mult, gt, tg])
}

/// `R'(c⊗b) = c₍₋₁₎ b_R (c₍₀₎_R)_{−1} ⊗ (c₍₀₎_R)_{0}` with `φ(b⊗c) = bc₍₋₁₎⊗c₍₀₎`.
fn right_conclusion<S: Scalar>(
    r: &TwistingMap<S>,
    c_prime: &Algebra<S>,
    theta: &LinearMap<S>,
    gamma: &LinearMap<S>,
    mut parts: Vec<Report>,
) -> Result<Invariance<S>> {
    let (b, c) = (&r.a, &r.b);
    let (nb, nc) = (b.dim(), c.dim());
    let rd = Wiring::new(&[nc, nb])
        .map(0, 1, theta, &[nb, nc])
        .map(1, 2, &r.map, &[nb, nc])
        .map(2, 1, gamma, &[nb, nc])
        .map(1, 2, &b.mult, &[nb])
        .map(0, 2, &b.mult, &[nb])
        .build()
        .materialize(c.sig.tensor(&b.sig), b.sig.tensor(&c.sig))?;
    let twist = TwistingMap::new(b, c_prime, rd)?;
    let tw = check_twisting(&twist).renamed("deformed map is twisting");
    if !tw.pass {
        parts.push(tw);
        return Err(Error::AxiomViolation(Box::new(Report::all("right invariance", parts))));
    }
    parts.push(tw);
    parts.push(check_unital(&twist).renamed("deformed map is unital"));
    let bc = b.sig.tensor(&c.sig);
    let iso = Wiring::new(&[nb, nc]).map(1, 1, theta, &[nb, nc]).map(0, 2, &b.mult, &[nb]).build().materialize(bc.clone(), bc.clone())?;
    let inverse = Wiring::new(&[nb, nc]).map(1, 1, gamma, &[nb, nc]).map(0, 2, &b.mult, &[nb]).build().materialize(bc.clone(), bc.clone())?;
    let deformed_prod = twisted_product(&twist)?;
    let original = twisted_product(r)?;
    parts.push(check_morphism(&iso, &deformed_prod.algebra, &original.algebra)?.renamed("isomorphism is multiplicative"));
    parts.push(map_equal("inverse after isomorphism", &inverse.compose(&iso)?, &LinearMap::identity(&bc)));
    parts.push(map_equal("isomorphism after inverse", &iso.compose(&inverse)?, &LinearMap::identity(&bc)));
    Ok(Invariance { deformed: c_prime.clone(), twist, iso, inverse, report: Report::all("right invariance", parts) })
}

/// `B⊗_{^dR}{}^dC ≅ B⊗_R C`.
pub fn invariance_right<S: Scalar>(d: &RightTwistDatum<S>) -> Result<Invariance<S>> {
    let (cd, def) = deformed_right(d)?;
    let gam = violated(check_right_gamma(&d.r, &cd, &d.theta, &d.gamma))?;
    right_conclusion(&d.r, &cd, &d.theta, &d.gamma, vec![def, gam])
}

/// Another algebra `C'` on the space of `C`, with `θ` an algebra map `C' → B⊗_R C`.
pub fn invariance_right_general<S: Scalar>(
    c_prime: &Algebra<S>,
    theta: &LinearMap<S>,
    gamma: &LinearMap<S>,
    r: &TwistingMap<S>,
) -> Result<Invariance<S>> {
    let bc = r.a.sig.tensor(&r.b.sig);
    let c_prime = Algebra::new(c_prime.name.clone(), r.b.sig.clone(), c_prime.mult.clone(), c_prime.unit.clone())?;
    let theta = theta.with_signatures(r.b.sig.clone(), bc.clone())?;
    let gamma = gamma.with_signatures(r.b.sig.clone(), bc)?;
    let product = twisted_product(r)?;
    let morph = check_morphism(&theta, &c_prime, &product.algebra)?.renamed("theta is an algebra map");
    let pre = violated(Report::all("general right datum", vec![morph, check_right_gamma(r, &c_prime, &theta, &gamma)]))?;
    right_conclusion(r, &c_prime, &theta, &gamma, vec![pre])
}

/// Both ends of `A⊗_{R₁}B⊗_{R₂}C` deformed at once.
#[derive(Clone, Debug)]
pub struct TripleInvariance<S> {
    pub maps: [TwistingMap<S>; 3],
    pub psi: LinearMap<S>,
    pub psi_inverse: LinearMap<S>,
    pub report: Report,
}

/// The three cross conditions between a left datum on `(A, B)` and a right
/// datum on `(B, C)`, as maps `A⊗C → A⊗B⊗C`.
pub fn check_cross_conditions<S: Scalar>(dl: &LeftTwistDatum<S>, dr: &RightTwistDatum<S>) -> Report {
    let (a, b, c) = (&dl.r.a, &dl.r.b, &dr.r.b);
    let (na, nb, nc) = (a.dim(), b.dim(), c.dim());
    let (r1, r2) = (&dl.r.map, &dr.r.map);
    let dom = a.sig.tensor(&c.sig);
    let cod = Signature::tensor_all([&a.sig, &b.sig, &c.sig]);
    let w = || Wiring::<S>::new(&[na, nc]);
    let t1 = check_equal(
        "rho and gamma pass the twists",
        &w().map(0, 1, &dl.rho, &[na, nb])
            .swap(1)
            .map(1, 2, r2, &[nb, nc])
            .map(2, 1, &dr.gamma, &[nb, nc])
            .map(1, 2, &b.mult, &[nb])
            .build(),
        &w().map(0, 1, &dl.rho, &[na, nb])
            .map(2, 1, &dr.gamma, &[nb, nc])
            .permute(&[2, 0, 1, 3])
            .map(0, 2, r1, &[na, nb])
            .map(1, 2, &b.mult, &[nb])
            .build(),
        &dom,
        &cod,
    );
    let t2 = check_equal(
        "lambda and theta pass the twists",
        &w().map(0, 1, &dl.lambda, &[na, nb])
            .map(2, 1, &dr.theta, &[nb, nc])
            .permute(&[0, 2, 3, 1])
            .map(2, 2, r2, &[nb, nc])
            .map(1, 2, &b.mult, &[nb])
            .build(),
        &w().map(1, 1, &dr.theta, &[nb, nc])
            .swap(0)
            .map(0, 2, r1, &[na, nb])
            .map(0, 1, &dl.lambda, &[na, nb])
            .map(1, 2, &b.mult, &[nb])
            .build(),
        &dom,
        &cod,
    );
    let t3 = check_equal(
        "rho and theta pass the twists",
        &w().map(0, 1, &dl.rho, &[na, nb])
            .map(2, 1, &dr.theta, &[nb, nc])
            .permute(&[2, 0, 3, 1])
            .map(0, 2, r1, &[na, nb])
            .map(2, 2, r2, &[nb, nc])
            .map(1, 2, &b.mult, &[nb])
            .build(),
        &w().map(0, 1, &dl.rho, &[na, nb]).map(2, 1, &dr.theta, &[nb, nc]).map(1, 2, &b.mult, &[nb]).build(),
        &dom,
        &cod,
    );
    Report::all("cross conditions", vec![t1, t2, t3])
}

/// `A^d⊗_{R₁^d}B⊗_{^dR₂}{}^dC ≅ A⊗_{R₁}B⊗_{R₂}C` via
/// `ψ(a⊗b⊗c) = a₍₀₎⊗a₍₁₎bc₍₋₁₎⊗c₍₀₎`.
pub fn triple_invariance<S: Scalar>(
    dl: &LeftTwistDatum<S>,
    dr: &RightTwistDatum<S>,
    r3: &TwistingMap<S>,
) -> Result<TripleInvariance<S>> {
    if !r3.is_flip() {
        return Err(Error::FlipRequired);
    }
    let cross = violated(check_cross_conditions(dl, dr))?;
    let left = invariance_left(dl)?;
    let right = invariance_right(dr)?;
    let (ad, cd) = (&left.deformed, &right.deformed);
    let r3d = TwistingMap::flip(ad, cd);
    let hex = check_hexagon(&left.twist, &right.twist, &r3d)?;
    let deformed = triple_product(&left.twist, &right.twist, &r3d)?;
    let original = triple_product(&dl.r, &dr.r, r3)?;
    let (a, b, c) = (&dl.r.a, &dl.r.b, &dr.r.b);
    let (na, nb, nc) = (a.dim(), b.dim(), c.dim());
    let sig = original.algebra.sig.clone();
    let build = |coa: &LinearMap<S>, cob: &LinearMap<S>| {
        Wiring::new(&[na, nb, nc])
            .map(0, 1, coa, &[na, nb])
            .map(3, 1, cob, &[nb, nc])
            .map(1, 2, &b.mult, &[nb])
            .map(1, 2, &b.mult, &[nb])
            .build()
            .materialize(sig.clone(), sig.clone())
    };
    let psi = build(&dl.rho, &dr.theta)?;
    let psi_inverse = build(&dl.lambda, &dr.gamma)?;
    let report = Report::all(
        "triple invariance",
        vec![
            cross,
            left.report,
            right.report,
            hex,
            check_morphism(&psi, &deformed.algebra, &original.algebra)?.renamed("psi is multiplicative"),
            map_equal("inverse after psi", &psi_inverse.compose(&psi)?, &LinearMap::identity(&sig)),
            map_equal("psi after inverse", &psi.compose(&psi_inverse)?, &LinearMap::identity(&sig)),
        ],
    );
    Ok(TripleInvariance { maps: [left.twist, right.twist, r3d], psi, psi_inverse, report })
}

pub mod scenarios;
