//! Lifting modules, involutions and differentials to twisted products.

use crate::algebra::{check_dg, check_involution, Algebra, DGAlgebra, GradedAlgebra, Involution};
use crate::error::{Error, Result};
use crate::expr::{check_equal, Expr, Wiring};
use crate::iterate::{check_hexagon, triple_product, Triple};
use crate::linear::LinearMap;
use crate::report::Report;
use crate::scalar::Scalar;
use crate::space::Signature;
use crate::twist::{map_equal, star_lift2, twisted_product, TwistingMap};

/// A left module: `λ: A⊗M → M`.
#[derive(Clone, Debug)]
pub struct ModuleData<S> {
    pub algebra: Algebra<S>,
    pub space: Signature,
    pub action: LinearMap<S>,
}

impl<S: Scalar> ModuleData<S> {
    pub fn new(algebra: &Algebra<S>, space: Signature, action: LinearMap<S>) -> Result<Self> {
        let action = action.with_signatures(algebra.sig.tensor(&space), space.clone())?;
        Ok(ModuleData { algebra: algebra.clone(), space, action })
    }

    /// `A` acting on itself by multiplication.
    pub fn regular(a: &Algebra<S>) -> Self {
        ModuleData { algebra: a.clone(), space: a.sig.clone(), action: a.mult.clone() }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn lambda(&self) -> Expr<S> {
        Expr::Map(self.action.clone())
    }

    /// Pulls the action back along an algebra map `f: X → A`.
    pub fn restrict(&self, x: &Algebra<S>, f: &LinearMap<S>) -> Result<Self> {
        let act = self.action.compose(&f.tensor(&LinearMap::identity(&self.space)))?;
        ModuleData::new(x, self.space.clone(), act)
    }
}

pub fn check_module<S: Scalar>(m: &ModuleData<S>) -> Report {
    let a = &m.algebra;
    let l = m.lambda();
    let mid = Expr::Id(m.dim());
    let assoc = check_equal(
        "module associativity",
        &Expr::Compose(vec![l.clone(), Expr::Tensor(vec![a.mu(), mid.clone()])]),
        &Expr::Compose(vec![l.clone(), Expr::Tensor(vec![a.id(), l.clone()])]),
        &Signature::tensor_all([&a.sig, &a.sig, &m.space]),
        &m.space,
    );
    let unit = check_equal(
        "module unit",
        &Expr::Compose(vec![l, Expr::Tensor(vec![Expr::Map(a.unit.clone()), mid.clone()])]),
        &mid,
        &m.space,
        &m.space,
    );
    Report::all(format!("module over {}", a.name), vec![assoc, unit])
}

/// `τ: B⊗M → M⊗B` over a twisting map `R: B⊗A → A⊗B`, `M` an `A`-module.
#[derive(Clone, Debug)]
pub struct ModuleTwistingMap<S> {
    pub module: ModuleData<S>,
    pub r: TwistingMap<S>,
    pub map: LinearMap<S>,
}

impl<S: Scalar> ModuleTwistingMap<S> {
    pub fn new(module: &ModuleData<S>, r: &TwistingMap<S>, map: LinearMap<S>) -> Result<Self> {
        if module.algebra.sig.dims() != r.a.sig.dims() {
            return Err(Error::DimensionMismatch(format!(
                "module is over {} but the twisting map acts on {}",
                module.algebra.name, r.a.name
            )));
        }
        let map = map.with_signatures(r.b.sig.tensor(&module.space), module.space.tensor(&r.b.sig))?;
        Ok(ModuleTwistingMap { module: module.clone(), r: r.clone(), map })
    }

    /// `M = A` with `τ = R`.
    pub fn regular(r: &TwistingMap<S>) -> Self {
        ModuleTwistingMap { module: ModuleData::regular(&r.a), r: r.clone(), map: r.map.clone() }
    }

    pub fn b(&self) -> &Algebra<S> {
        &self.r.b
    }

    pub fn expr(&self) -> Expr<S> {
        Expr::Map(self.map.clone())
    }
}

/// Compatibility of `τ` with `μ_B` and with the action of `A`.
pub fn check_module_twisting<S: Scalar>(t: &ModuleTwistingMap<S>) -> Report {
    let (a, b, m) = (&t.r.a, t.b(), &t.module);
    let (tau, l) = (t.expr(), m.lambda());
    let mid = Expr::Id(m.dim());
    let mb = m.space.tensor(&b.sig);
    let product = check_equal(
        "module twisting: product in B",
        &Expr::Compose(vec![tau.clone(), Expr::Tensor(vec![b.mu(), mid.clone()])]),
        &Expr::Compose(vec![
            Expr::Tensor(vec![mid.clone(), b.mu()]),
            Expr::Tensor(vec![tau.clone(), b.id()]),
            Expr::Tensor(vec![b.id(), tau.clone()]),
        ]),
        &Signature::tensor_all([&b.sig, &b.sig, &m.space]),
        &mb,
    );
    let action = check_equal(
        "module twisting: action of A",
        &Expr::Compose(vec![tau.clone(), Expr::Tensor(vec![b.id(), l.clone()])]),
        &Expr::Compose(vec![
            Expr::Tensor(vec![l, b.id()]),
            Expr::Tensor(vec![a.id(), tau]),
            Expr::Tensor(vec![t.r.expr(), mid]),
        ]),
        &Signature::tensor_all([&b.sig, &a.sig, &m.space]),
        &mb,
    );
    Report::all("module twisting map", vec![product, action])
}

/// `λ = (λ_M⊗λ_N)∘(A⊗τ⊗N)` on `M⊗N` over `A⊗_R B`.
pub fn lift_module2<S: Scalar>(t: &ModuleTwistingMap<S>, n: &ModuleData<S>) -> Result<(ModuleData<S>, Report)> {
    if n.algebra.sig.dims() != t.b().sig.dims() {
        return Err(Error::DimensionMismatch(format!("second module is not over {}", t.b().name)));
    }
    let pre = Report::all(
        "lift preconditions",
        vec![check_module(&t.module), check_module(n), check_module_twisting(t)],
    );
    if !pre.pass {
        return Err(Error::AxiomViolation(Box::new(pre)));
    }
    let prod = twisted_product(&t.r)?;
    let (da, db, dm, dn) = (t.r.a.dim(), t.b().dim(), t.module.dim(), n.dim());
    let act = Wiring::new(&[da, db, dm, dn])
        .map(1, 2, &t.map, &[dm, db])
        .map(0, 2, &t.module.action, &[dm])
        .map(1, 2, &n.action, &[dn])
        .build();
    let space = t.module.space.tensor(&n.space);
    let action = act.materialize(prod.algebra.sig.tensor(&space), space.clone())?;
    let lifted = ModuleData::new(&prod.algebra, space.clone(), action)?;
    let restricted = lifted.restrict(&t.r.a, &prod.i_a)?;
    let expected = t.module.action.tensor(&LinearMap::identity(&n.space));
    let compat = map_equal("compatible with the inclusion of A", &restricted.action, &expected);
    let report = Report::all("lifted module", vec![pre, check_module(&lifted), compat]);
    Ok((lifted, report))
}

/// `(M⊗R₂)∘(τ_{M,C}⊗B)∘(C⊗τ_{M,B}) = (τ_{M,B}⊗C)∘(B⊗τ_{M,C})∘(R₂⊗M)` on `C⊗B⊗M`.
pub fn check_module_hexagon<S: Scalar>(
    tmc: &ModuleTwistingMap<S>,
    tmb: &ModuleTwistingMap<S>,
    r2: &TwistingMap<S>,
) -> Result<Report> {
    let (b, c) = (&r2.a, &r2.b);
    let m = &tmb.module;
    if tmc.module.space.dims() != m.space.dims() || tmb.b().sig.dims() != b.sig.dims() || tmc.b().sig.dims() != c.sig.dims()
    {
        return Err(Error::DimensionMismatch("module hexagon: factors do not line up".into()));
    }
    let mid = Expr::Id(m.dim());
    let lhs = Expr::Compose(vec![
        Expr::Tensor(vec![mid.clone(), r2.expr()]),
        Expr::Tensor(vec![tmc.expr(), b.id()]),
        Expr::Tensor(vec![c.id(), tmb.expr()]),
    ]);
    let rhs = Expr::Compose(vec![
        Expr::Tensor(vec![tmb.expr(), c.id()]),
        Expr::Tensor(vec![b.id(), tmc.expr()]),
        Expr::Tensor(vec![r2.expr(), mid]),
    ]);
    Ok(check_equal(
        "module hexagon",
        &lhs,
        &rhs,
        &Signature::tensor_all([&c.sig, &b.sig, &m.space]),
        &Signature::tensor_all([&m.space, &b.sig, &c.sig]),
    ))
}

/// A module over a triple product, with both association routes compared.
#[derive(Clone, Debug)]
pub struct TripleModule<S> {
    pub module: ModuleData<S>,
    pub triple: Triple<S>,
    pub report: Report,
}

/// `M⊗N⊗P` over `A⊗_{R₁}B⊗_{R₂}C`, via `σ_C` on `(M⊗N)⊗P` and via `σ_{B⊗C}`
/// on `M⊗(N⊗P)`.
pub fn lift_module3<S: Scalar>(
    tmc: &ModuleTwistingMap<S>,
    tmb: &ModuleTwistingMap<S>,
    tnc: &ModuleTwistingMap<S>,
    n: &ModuleData<S>,
    p: &ModuleData<S>,
) -> Result<TripleModule<S>> {
    let (r1, r2, r3) = (&tmb.r, &tnc.r, &tmc.r);
    let hex = check_module_hexagon(tmc, tmb, r2)?;
    if !hex.pass {
        return Err(Error::HexagonViolated(Box::new(hex)));
    }
    let triple = triple_product(r1, r2, r3)?;
    let (dm, dn) = (tmb.module.dim(), n.dim());
    let (db, dc) = (r1.b.dim(), r2.b.dim());

    let (mn, _) = lift_module2(tmb, n)?;
    let sigma_c = Wiring::new(&[dc, dm, dn]).map(0, 2, &tmc.map, &[dm, dc]).map(1, 2, &tnc.map, &[dn, dc]).build();
    let sigma_c = sigma_c.materialize(r2.b.sig.tensor(&mn.space), mn.space.tensor(&r2.b.sig))?;
    let sigma_c = ModuleTwistingMap::new(&mn, &triple.t1, sigma_c)?;
    let (left, left_rep) = lift_module2(&sigma_c, p)?;

    let (np, _) = lift_module2(tnc, p)?;
    let sigma_bc = Wiring::new(&[db, dc, dm]).map(1, 2, &tmc.map, &[dm, dc]).map(0, 2, &tmb.map, &[dm, db]).build();
    let bc = &triple.t2.b;
    let sigma_bc = sigma_bc.materialize(bc.sig.tensor(&tmb.module.space), tmb.module.space.tensor(&bc.sig))?;
    let sigma_bc = ModuleTwistingMap::new(&tmb.module, &triple.t2, sigma_bc)?;
    let (right, right_rep) = lift_module2(&sigma_bc, &np)?;

    let routes = check_equal(
        "both routes agree",
        &left.lambda(),
        &right.lambda(),
        left.action.domain(),
        left.action.codomain(),
    );
    let module = ModuleData::new(&triple.algebra, left.space.clone(), left.action.clone())?;
    let report = Report::all(
        "triple module",
        vec![
            hex,
            left_rep.renamed("route through (M⊗N)⊗P"),
            right_rep.renamed("route through M⊗(N⊗P)"),
            routes,
            check_module(&module),
        ],
    );
    Ok(TripleModule { module, triple, report })
}

/// `b·(a·m) = a_R·(b_R·m)` as a report.
fn compatibility<S: Scalar>(name: &str, r: &TwistingMap<S>, act_a: &ModuleData<S>, act_b: &ModuleData<S>) -> Report {
    let (a, b) = (&r.a, &r.b);
    let mid = Expr::Id(act_a.dim());
    let lhs = Expr::Compose(vec![act_b.lambda(), Expr::Tensor(vec![b.id(), act_a.lambda()])]);
    let rhs = Expr::Compose(vec![
        act_a.lambda(),
        Expr::Tensor(vec![a.id(), act_b.lambda()]),
        Expr::Tensor(vec![r.expr(), mid]),
    ]);
    check_equal(name, &lhs, &rhs, &Signature::tensor_all([&b.sig, &a.sig, &act_a.space]), &act_a.space)
}

/// `A`- and `B`-modules on one space, recombined over `A⊗_R B` as
/// `(a⊗b)·m = a·(b·m)`.
pub fn module_from_compat<S: Scalar>(
    r: &TwistingMap<S>,
    act_a: &ModuleData<S>,
    act_b: &ModuleData<S>,
) -> Result<(ModuleData<S>, Report)> {
    if act_a.space.dims() != act_b.space.dims() {
        return Err(Error::DimensionMismatch("actions live on different spaces".into()));
    }
    let pre = Report::all("factor modules", vec![check_module(act_a), check_module(act_b)]);
    if !pre.pass {
        return Err(Error::AxiomViolation(Box::new(pre)));
    }
    let compat = compatibility("compatibility A-B", r, act_a, act_b);
    if !compat.pass {
        return Err(Error::CompatibilityViolated(Box::new(compat)));
    }
    let prod = twisted_product(r)?;
    let m = &act_a.space;
    let e = Expr::Compose(vec![act_a.lambda(), Expr::Tensor(vec![r.a.id(), act_b.lambda()])]);
    let action = e.materialize(prod.algebra.sig.tensor(m), m.clone())?;
    let module = ModuleData::new(&prod.algebra, m.clone(), action)?;
    let (ra, rb, back) = restrict_to_factors(r, &module)?;
    let round = Report::all(
        "round trip",
        vec![
            map_equal("restriction recovers the A-action", &ra.action, &act_a.action),
            map_equal("restriction recovers the B-action", &rb.action, &act_b.action),
        ],
    );
    let report = Report::all("module from compatible actions", vec![pre, compat, check_module(&module), back, round]);
    Ok((module, report))
}

/// Restricts a module over `A⊗_R B` to both factors and rechecks compatibility.
pub fn restrict_to_factors<S: Scalar>(
    r: &TwistingMap<S>,
    module: &ModuleData<S>,
) -> Result<(ModuleData<S>, ModuleData<S>, Report)> {
    let prod = twisted_product(r)?;
    let ma = module.restrict(&r.a, &prod.i_a)?;
    let mb = module.restrict(&r.b, &prod.i_b)?;
    let rep = Report::all(
        "restricted actions",
        vec![check_module(&ma), check_module(&mb), compatibility("compatibility A-B", r, &ma, &mb)],
    );
    Ok((ma, mb, rep))
}

/// Three compatible actions recombined over the triple product as
/// `(a⊗b⊗c)·m = a·(b·(c·m))`.
pub fn module_from_compat3<S: Scalar>(
    r1: &TwistingMap<S>,
    r2: &TwistingMap<S>,
    r3: &TwistingMap<S>,
    act_a: &ModuleData<S>,
    act_b: &ModuleData<S>,
    act_c: &ModuleData<S>,
) -> Result<(ModuleData<S>, Report)> {
    let pre = Report::all("factor modules", vec![check_module(act_a), check_module(act_b), check_module(act_c)]);
    if !pre.pass {
        return Err(Error::AxiomViolation(Box::new(pre)));
    }
    let compat = Report::all(
        "compatibility",
        vec![
            compatibility("compatibility A-B", r1, act_a, act_b),
            compatibility("compatibility B-C", r2, act_b, act_c),
            compatibility("compatibility A-C", r3, act_a, act_c),
        ],
    );
    if !compat.pass {
        return Err(Error::CompatibilityViolated(Box::new(compat)));
    }
    let triple = triple_product(r1, r2, r3)?;
    let m = &act_a.space;
    let e = Expr::Compose(vec![
        act_a.lambda(),
        Expr::Tensor(vec![r1.a.id(), act_b.lambda()]),
        Expr::Tensor(vec![r1.a.id(), r1.b.id(), act_c.lambda()]),
    ]);
    let action = e.materialize(triple.algebra.sig.tensor(m), m.clone())?;
    let module = ModuleData::new(&triple.algebra, m.clone(), action)?;
    let report = Report::all("module from three compatible actions", vec![pre, compat, check_module(&module)]);
    Ok((module, report))
}

/// `j = (R₁⊗C)∘(B⊗R₃)∘(R₂⊗A)∘(j_C⊗j_B⊗j_A)∘reversal` on the triple product.
pub fn star_lift3<S: Scalar>(
    r1: &TwistingMap<S>,
    r2: &TwistingMap<S>,
    r3: &TwistingMap<S>,
    ja: &Involution<S>,
    jb: &Involution<S>,
    jc: &Involution<S>,
) -> Result<(Involution<S>, Report)> {
    let mut conds = Vec::new();
    for (name, r, x, y) in [("star condition A-B", r1, ja, jb), ("star condition B-C", r2, jb, jc), ("star condition A-C", r3, ja, jc)] {
        match star_lift2(r, x, y) {
            Ok((_, rep)) => conds.push(rep.renamed(name)),
            Err(Error::ConditionViolated(rep)) => {
                return Err(Error::ConditionViolated(Box::new(rep.renamed(name))));
            }
            Err(e) => return Err(e),
        }
    }
    let triple = triple_product(r1, r2, r3)?;
    let (a, b, c) = (&r1.a, &r1.b, &r2.b);
    let (da, db, dc) = (a.dim(), b.dim(), c.dim());
    let m = Wiring::new(&[da, db, dc])
        .permute(&[2, 1, 0])
        .map(0, 1, &jc.matrix, &[dc])
        .map(1, 1, &jb.matrix, &[db])
        .map(2, 1, &ja.matrix, &[da])
        .map(0, 2, &r2.map, &[db, dc])
        .map(1, 2, &r3.map, &[da, dc])
        .map(0, 2, &r1.map, &[da, db])
        .build();
    let abc = triple.algebra.sig.clone();
    let matrix = m.materialize(abc.clone(), abc)?;
    let j = Involution::new(triple.algebra.clone(), matrix, ja.conjugating);
    let report = Report::all("lifted involution on the triple product", vec![Report::all("pairwise", conds), check_involution(&j)]);
    Ok((j, report))
}

/// `R̃∘(d_B⊗Ω_A) = (ε_A⊗d_B)∘R̃`, `R̃∘(Ω_B⊗d_A) = (d_A⊗ε_B)∘R̃`, and `R̃` preserves degree.
pub fn check_diff_compat<S: Scalar>(r: &TwistingMap<S>, oa: &DGAlgebra<S>, ob: &DGAlgebra<S>) -> Report {
    let (a, b) = (oa.algebra(), ob.algebra());
    let (da, db) = (Expr::Map(oa.d.clone()), Expr::Map(ob.d.clone()));
    let (ea, eb) = (Expr::Map(oa.epsilon()), Expr::Map(ob.epsilon()));
    let ba = b.sig.tensor(&a.sig);
    let ab = a.sig.tensor(&b.sig);
    let first = check_equal(
        "twisted differential on B",
        &Expr::Compose(vec![r.expr(), Expr::Tensor(vec![db.clone(), a.id()])]),
        &Expr::Compose(vec![Expr::Tensor(vec![ea, db]), r.expr()]),
        &ba,
        &ab,
    );
    let second = check_equal(
        "twisted differential on A",
        &Expr::Compose(vec![r.expr(), Expr::Tensor(vec![b.id(), da.clone()])]),
        &Expr::Compose(vec![Expr::Tensor(vec![da, eb]), r.expr()]),
        &ba,
        &ab,
    );
    let (ga, gb) = (oa.degrees(), ob.degrees());
    let nb = b.dim();
    let bad = r.map.entries().find(|(row, col, _)| {
        let (x, y) = (col / a.dim(), col % a.dim());
        let (u, v) = (row / nb, row % nb);
        gb[x] + ga[y] != ga[u] + gb[v]
    });
    let degree = match bad {
        None => Report::pass("degree preserving"),
        Some((row, col, _)) => Report::fail(
            "degree preserving",
            format!("{} reaches {}", ba.describe(col), ab.describe(row)),
        ),
    };
    Report::all(format!("differential compatibility of {}⊗{} -> {}⊗{}", b.name, a.name, a.name, b.name), vec![first, second, degree])
}

fn product_dg<S: Scalar>(algebra: Algebra<S>, factors: &[&DGAlgebra<S>]) -> Result<DGAlgebra<S>> {
    let mut degrees = vec![0i32];
    for f in factors {
        degrees = degrees.iter().flat_map(|&x| f.degrees().iter().map(move |&y| x + y)).collect();
    }
    // d = Σ_k ε⊗…⊗ε⊗d_k⊗id⊗…⊗id
    let mut terms = Vec::new();
    for k in 0..factors.len() {
        let parts: Vec<Expr<S>> = factors
            .iter()
            .enumerate()
            .map(|(i, f)| match i.cmp(&k) {
                std::cmp::Ordering::Less => Expr::Map(f.epsilon()),
                std::cmp::Ordering::Equal => Expr::Map(f.d.clone()),
                std::cmp::Ordering::Greater => f.algebra().id(),
            })
            .collect();
        terms.push(Expr::Tensor(parts));
    }
    let sig = algebra.sig.clone();
    let d = Expr::Sum(terms).materialize(sig.clone(), sig)?;
    Ok(DGAlgebra { graded: GradedAlgebra::new(algebra, degrees)?, d })
}

fn require_twisting<S: Scalar>(r: &TwistingMap<S>, oa: &DGAlgebra<S>, ob: &DGAlgebra<S>) -> Result<Report> {
    if !r.is_verified() {
        return Err(Error::UnverifiedTwist(Box::new(r.verification().clone())));
    }
    let rep = check_diff_compat(r, oa, ob);
    if !rep.pass {
        return Err(Error::DiffCompatViolated(Box::new(rep)));
    }
    Ok(rep)
}

/// `Ω_A⊗_R̃ Ω_B` with `d = d_A⊗id + ε_A⊗d_B`.
pub fn dg_lift2<S: Scalar>(oa: &DGAlgebra<S>, ob: &DGAlgebra<S>, r: &TwistingMap<S>) -> Result<(DGAlgebra<S>, Report)> {
    let compat = require_twisting(r, oa, ob)?;
    let prod = twisted_product(r)?;
    let dg = product_dg(prod.algebra, &[oa, ob])?;
    let report = Report::all("differential lift", vec![compat, check_dg(&dg)]);
    Ok((dg, report))
}

/// The triple product of three DG algebras under extended twisting maps.
pub fn dg_lift<S: Scalar>(
    oa: &DGAlgebra<S>,
    ob: &DGAlgebra<S>,
    oc: &DGAlgebra<S>,
    r1: &TwistingMap<S>,
    r2: &TwistingMap<S>,
    r3: &TwistingMap<S>,
) -> Result<(DGAlgebra<S>, Report)> {
    let compat = Report::all(
        "differential compatibility",
        vec![require_twisting(r1, oa, ob)?, require_twisting(r2, ob, oc)?, require_twisting(r3, oa, oc)?],
    );
    let hex = check_hexagon(r1, r2, r3)?;
    if !hex.pass {
        return Err(Error::HexagonViolated(Box::new(hex)));
    }
    let triple = triple_product(r1, r2, r3)?;
    let dg = product_dg(triple.algebra, &[oa, ob, oc])?;
    let report = Report::all("differential lift", vec![compat, hex, check_dg(&dg)]);
    Ok((dg, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{regular_action, HopfAlgebra, Side};
    use crate::scalar::Q;

    fn kz2() -> HopfAlgebra<Q> {
        HopfAlgebra::cyclic(2).unwrap()
    }

    #[test]
    fn regular_and_zero_actions() {
        let a = kz2().algebra;
        assert!(check_module(&ModuleData::regular(&a)).pass);
        let zero = LinearMap::zero(a.sig.tensor(&a.sig), a.sig.clone());
        let r = check_module(&ModuleData::new(&a, a.sig.clone(), zero).unwrap());
        assert!(!r.find("module unit").unwrap().pass);
    }

    #[test]
    fn dual_is_a_module_under_the_regular_action() {
        let act = regular_action(&kz2(), Side::Left).unwrap();
        let m = ModuleData::new(&act.hopf.algebra, act.target.sig.clone(), act.action.clone()).unwrap();
        assert!(check_module(&m).pass);
    }

    #[test]
    fn regular_lift_is_the_regular_module() {
        let h = kz2();
        let d = crate::hopf::heisenberg_double(&h).unwrap();
        let t = ModuleTwistingMap::regular(&d.twist);
        let (lifted, rep) = lift_module2(&t, &ModuleData::regular(&d.twist.b)).unwrap();
        assert!(rep.pass, "{}", rep.render());
        assert!(lifted.action.same_as(&d.algebra.mult));
    }

    #[test]
    fn perturbed_module_twisting_fails() {
        let h = HopfAlgebra::<Q>::sweedler().unwrap();
        let d = crate::hopf::heisenberg_double(&h).unwrap();
        let t = ModuleTwistingMap::regular(&d.twist);
        let bad = ModuleTwistingMap::new(&t.module, &t.r, t.map.scale(&Q::from_int(2))).unwrap();
        assert!(!check_module_twisting(&bad).pass);
        assert!(lift_module2(&bad, &ModuleData::regular(&d.twist.b)).is_err());
    }
}
