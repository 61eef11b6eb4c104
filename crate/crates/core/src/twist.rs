//! Twisting maps `R: B⊗A → A⊗B` and the products they define.

use std::sync::OnceLock;

use crate::algebra::{check_algebra, check_involution, check_morphism, Algebra, Involution};
use crate::error::{Error, Result};
use crate::expr::{check_equal, Expr};
use crate::linear::{canonicalize, ColumnBuilder, LinearMap, SparseVec};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::space::Signature;

#[derive(Clone, Debug)]
pub struct TwistingMap<S> {
    pub a: Algebra<S>,
    pub b: Algebra<S>,
    /// `B⊗A → A⊗B`.
    pub map: LinearMap<S>,
    status: OnceLock<Report>,
}

impl<S: Scalar> TwistingMap<S> {
    pub fn new(a: &Algebra<S>, b: &Algebra<S>, map: LinearMap<S>) -> Result<Self> {
        let map = map.with_signatures(b.sig.tensor(&a.sig), a.sig.tensor(&b.sig))?;
        Ok(TwistingMap { a: a.clone(), b: b.clone(), map, status: OnceLock::new() })
    }

    pub fn flip(a: &Algebra<S>, b: &Algebra<S>) -> Self {
        TwistingMap { a: a.clone(), b: b.clone(), map: LinearMap::flip(&b.sig, &a.sig), status: OnceLock::new() }
    }

    pub fn expr(&self) -> Expr<S> {
        Expr::Map(self.map.clone())
    }

    /// Cached result of [`check_twisting`].
    pub fn verification(&self) -> &Report {
        self.status.get_or_init(|| twisting_report(self))
    }

    pub fn is_verified(&self) -> bool {
        self.verification().pass
    }

    pub fn is_flip(&self) -> bool {
        self.map.same_as(&LinearMap::flip(&self.b.sig, &self.a.sig))
    }

    /// Same map with the verification cache cleared.
    pub fn with_map(&self, map: LinearMap<S>) -> Result<Self> {
        TwistingMap::new(&self.a, &self.b, map)
    }
}

fn twisting_report<S: Scalar>(r: &TwistingMap<S>) -> Report {
    let (a, b) = (&r.a, &r.b);
    let eq1 = check_equal(
        "twisting: product in A",
        &Expr::Compose(vec![r.expr(), Expr::Tensor(vec![b.id(), a.mu()])]),
        &Expr::Compose(vec![
            Expr::Tensor(vec![a.mu(), b.id()]),
            Expr::Tensor(vec![a.id(), r.expr()]),
            Expr::Tensor(vec![r.expr(), a.id()]),
        ]),
        &Signature::tensor_all([&b.sig, &a.sig, &a.sig]),
        &a.sig.tensor(&b.sig),
    );
    let eq2 = check_equal(
        "twisting: product in B",
        &Expr::Compose(vec![r.expr(), Expr::Tensor(vec![b.mu(), a.id()])]),
        &Expr::Compose(vec![
            Expr::Tensor(vec![a.id(), b.mu()]),
            Expr::Tensor(vec![r.expr(), b.id()]),
            Expr::Tensor(vec![b.id(), r.expr()]),
        ]),
        &Signature::tensor_all([&b.sig, &b.sig, &a.sig]),
        &a.sig.tensor(&b.sig),
    );
    Report::all(format!("twisting map {}⊗{} -> {}⊗{}", b.name, a.name, a.name, b.name), vec![eq1, eq2])
}

/// Both compatibility identities with the multiplications, on all basis triples.
pub fn check_twisting<S: Scalar>(r: &TwistingMap<S>) -> Report {
    r.verification().clone()
}

/// `R(1⊗a) = a⊗1` and `R(b⊗1) = 1⊗b`.
pub fn check_unital<S: Scalar>(r: &TwistingMap<S>) -> Report {
    let (a, b) = (&r.a, &r.b);
    let (ua, ub) = (Expr::Map(a.unit.clone()), Expr::Map(b.unit.clone()));
    let ab = a.sig.tensor(&b.sig);
    let left = check_equal(
        "unital in A",
        &Expr::Compose(vec![r.expr(), Expr::Tensor(vec![ub.clone(), a.id()])]),
        &Expr::Tensor(vec![a.id(), ub]),
        &a.sig,
        &ab,
    );
    let right = check_equal(
        "unital in B",
        &Expr::Compose(vec![r.expr(), Expr::Tensor(vec![b.id(), ua.clone()])]),
        &Expr::Tensor(vec![ua, b.id()]),
        &b.sig,
        &ab,
    );
    Report::all("unital twisting map", vec![left, right])
}

/// `(μ_A⊗μ_B)∘(A⊗R⊗B)` on `(A⊗B)⊗(A⊗B)`, assembled column by column.
pub fn twisted_mult<S: Scalar>(a: &Algebra<S>, b: &Algebra<S>, r: &LinearMap<S>) -> LinearMap<S> {
    let (na, nb) = (a.dim(), b.dim());
    let ab = a.sig.tensor(&b.sig);
    let mut out = ColumnBuilder::new(ab.tensor(&ab), ab.clone());
    let mut acc: SparseVec<S> = Vec::new();
    let mut col = 0usize;
    for x in 0..na {
        for y in 0..nb {
            for x2 in 0..na {
                let (rr, rv) = r.column(y * na + x2);
                for y2 in 0..nb {
                    acc.clear();
                    for (&t, tv) in rr.iter().zip(rv) {
                        let (p, q) = (t / nb, t % nb);
                        let (ar, av) = a.mult.column(x * na + p);
                        if ar.is_empty() {
                            continue;
                        }
                        let (br, bv) = b.mult.column(q * nb + y2);
                        for (&i, s) in ar.iter().zip(av) {
                            let si = tv.clone() * s.clone();
                            for (&j, u) in br.iter().zip(bv) {
                                acc.push((i * nb + j, si.clone() * u.clone()));
                            }
                        }
                    }
                    if !acc.is_empty() {
                        canonicalize(&mut acc);
                        out.push(col, &acc);
                    }
                    col += 1;
                }
            }
        }
    }
    out.finish()
}

/// The same multiplication as an unevaluated expression.
pub fn twisted_mult_expr<S: Scalar>(a: &Algebra<S>, b: &Algebra<S>, r: &LinearMap<S>) -> Expr<S> {
    Expr::Compose(vec![
        Expr::Tensor(vec![a.mu(), b.mu()]),
        Expr::Tensor(vec![a.id(), Expr::Map(r.clone()), b.id()]),
    ])
}

#[derive(Clone, Debug)]
pub struct Product<S> {
    pub algebra: Algebra<S>,
    /// `a ↦ a⊗1`.
    pub i_a: LinearMap<S>,
    /// `b ↦ 1⊗b`.
    pub i_b: LinearMap<S>,
}

/// `A⊗_R B`; refuses maps that fail verification.
pub fn twisted_product<S: Scalar>(r: &TwistingMap<S>) -> Result<Product<S>> {
    if !r.is_verified() {
        return Err(Error::UnverifiedTwist(Box::new(r.verification().clone())));
    }
    twisted_product_unchecked(r)
}

/// Builds the candidate product without checking the twisting identities.
pub fn twisted_product_unchecked<S: Scalar>(r: &TwistingMap<S>) -> Result<Product<S>> {
    let (a, b) = (&r.a, &r.b);
    let mult = twisted_mult(a, b, &r.map);
    let unit = a.unit.tensor(&b.unit);
    let algebra = Algebra::new(format!("{}⊗{}", a.name, b.name), a.sig.tensor(&b.sig), mult, unit)?;
    let i_a = LinearMap::identity(&a.sig).tensor(&b.unit);
    let i_b = a.unit.tensor(&LinearMap::identity(&b.sig));
    Ok(Product { algebra, i_a, i_b })
}

/// The inverse `V: A⊗B → B⊗A` with its twisting check and the isomorphism check
/// of `R` between `B⊗_V A` and `A⊗_R B`.
pub fn invert_twisting<S: Scalar>(r: &TwistingMap<S>) -> Result<(TwistingMap<S>, Report)> {
    let v = TwistingMap::new(&r.b, &r.a, r.map.invert()?)?;
    let mut report = Report::all("inverse twisting map", vec![check_twisting(&v)]);
    let (bva, arb) = (twisted_product_unchecked(&v)?, twisted_product_unchecked(r)?);
    report.push(check_morphism(&r.map, &bva.algebra, &arb.algebra)?.renamed("R is a morphism B⊗_V A -> A⊗_R B"));
    Ok((v, report))
}

/// The unique morphism `φ(a⊗b) = u(a)v(b)` out of `A⊗_R B`, when it exists.
pub fn universal_morphism2<S: Scalar>(
    r: &TwistingMap<S>,
    x: &Algebra<S>,
    u: &LinearMap<S>,
    v: &LinearMap<S>,
) -> Result<(LinearMap<S>, Report)> {
    let (ue, ve) = (Expr::Map(u.clone()), Expr::Map(v.clone()));
    let cond = check_equal(
        "universal property condition",
        &Expr::Compose(vec![x.mu(), Expr::Tensor(vec![ve.clone(), ue.clone()])]),
        &Expr::Compose(vec![x.mu(), Expr::Tensor(vec![ue.clone(), ve.clone()]), r.expr()]),
        &r.b.sig.tensor(&r.a.sig),
        &x.sig,
    );
    if !cond.pass {
        return Err(Error::ConditionViolated(Box::new(cond)));
    }
    let prod = twisted_product(r)?;
    let phi = Expr::Compose(vec![x.mu(), Expr::Tensor(vec![ue, ve])])
        .materialize(prod.algebra.sig.clone(), x.sig.clone())?;
    let mut report = Report::all("universal morphism", vec![cond]);
    report.push(check_morphism(&phi, &prod.algebra, x)?);
    report.push(map_equal("restricts to u", &phi.compose(&prod.i_a)?, u));
    report.push(map_equal("restricts to v", &phi.compose(&prod.i_b)?, v));
    Ok((phi, report))
}

pub(crate) fn map_equal<S: Scalar>(check: &str, f: &LinearMap<S>, g: &LinearMap<S>) -> Report {
    check_equal(check, &Expr::Map(f.clone()), &Expr::Map(g.clone()), f.domain(), f.codomain())
}

/// `j = R∘(j_B⊗j_A)∘τ` on `A⊗_R B`.
pub fn star_lift2<S: Scalar>(
    r: &TwistingMap<S>,
    ja: &Involution<S>,
    jb: &Involution<S>,
) -> Result<(Involution<S>, Report)> {
    if ja.conjugating != jb.conjugating {
        return Err(Error::ConditionViolated(Box::new(Report::fail(
            "star condition",
            "factor involutions disagree on scalar conjugation",
        ))));
    }
    let (a, b) = (&r.a, &r.b);
    let m = Expr::Compose(vec![
        r.expr(),
        Expr::Tensor(vec![Expr::Map(jb.matrix.clone()), Expr::Map(ja.matrix.clone())]),
        Expr::flip(a.dim(), b.dim()),
    ]);
    let ab = a.sig.tensor(&b.sig);
    let matrix = m.materialize(ab.clone(), ab.clone())?;
    let inner = if ja.conjugating { matrix.conj() } else { matrix.clone() };
    let cond = check_equal(
        "star condition",
        &Expr::Compose(vec![Expr::Map(matrix.clone()), Expr::Map(inner)]),
        &Expr::Id(ab.dim()),
        &ab,
        &ab,
    );
    if !cond.pass {
        return Err(Error::ConditionViolated(Box::new(cond)));
    }
    let prod = twisted_product(r)?;
    let j = Involution::new(prod.algebra.clone(), matrix, ja.conjugating);
    let mut report = Report::all("lifted involution", vec![cond, check_involution(&j)]);
    if check_unital(r).pass {
        report.push(map_equal("i_A is a star morphism", &j.after(&prod.i_a)?, &prod.i_a.compose(&ja.matrix)?));
        report.push(map_equal("i_B is a star morphism", &j.after(&prod.i_b)?, &prod.i_b.compose(&jb.matrix)?));
    }
    Ok((j, report))
}

/// Twisted product plus its associativity check, for callers that want both.
pub fn checked_product<S: Scalar>(r: &TwistingMap<S>) -> Result<(Product<S>, Report)> {
    let p = twisted_product(r)?;
    let rep = check_algebra(&p.algebra);
    Ok((p, rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;
    use crate::space::Space;

    fn cyclic(n: usize) -> Algebra<Q> {
        let labels = (0..n).map(|i| format!("g{i}")).collect();
        let mut unit = vec![Q::from_int(0); n];
        unit[0] = Q::from_int(1);
        Algebra::from_table(format!("kZ{n}"), Space::labelled(format!("kZ{n}"), labels).unwrap(), &unit, |a, b| {
            vec![((a + b) % n, Q::from_int(1))]
        })
        .unwrap()
    }

    #[test]
    fn flip_gives_tensor_product() {
        let (a, b) = (cyclic(2), cyclic(3));
        let r = TwistingMap::flip(&a, &b);
        assert!(check_twisting(&r).pass && check_unital(&r).pass);
        let p = twisted_product(&r).unwrap();
        assert!(check_algebra(&p.algebra).pass);
        assert!(p.algebra.mult.same_as(&a.mult.tensor(&b.mult).compose(&LinearMap::permutation(
            &[a.sig.clone(), b.sig.clone(), a.sig.clone(), b.sig.clone()],
            &[0, 2, 1, 3]
        )).unwrap()));
    }

    #[test]
    fn kernel_matches_lazy_route() {
        let (a, b) = (cyclic(3), cyclic(2));
        let r = TwistingMap::flip(&a, &b).map.scale(&Q::from_int(3));
        let eager = twisted_mult(&a, &b, &r);
        let ab = a.sig.tensor(&b.sig);
        let lazy = twisted_mult_expr(&a, &b, &r).materialize(ab.tensor(&ab), ab).unwrap();
        assert!(eager.same_as(&lazy));
    }

    #[test]
    fn scaled_flip_fails_unitality_and_is_refused() {
        let (a, b) = (cyclic(2), cyclic(2));
        let r = TwistingMap::new(&a, &b, LinearMap::flip(&b.sig, &a.sig).scale(&Q::from_int(2))).unwrap();
        assert!(!check_unital(&r).pass);
        assert!(matches!(twisted_product(&r), Err(Error::UnverifiedTwist(_))));
    }

    #[test]
    fn universal_morphism_of_inclusions_is_identity() {
        let (a, b) = (cyclic(2), cyclic(2));
        let r = TwistingMap::flip(&a, &b);
        let p = twisted_product(&r).unwrap();
        let (phi, rep) = universal_morphism2(&r, &p.algebra, &p.i_a, &p.i_b).unwrap();
        assert!(rep.pass);
        assert!(phi.is_identity());
    }
}
