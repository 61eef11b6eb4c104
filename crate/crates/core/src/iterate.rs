//! Iterated twisted tensor products: the hexagon condition, three-factor
//! products, splitting, and n-factor coherence.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{check_morphism, Algebra};
use crate::error::{Error, Result};
use crate::expr::{check_equal, compare, Expr, Wiring};
use crate::linear::LinearMap;
use crate::report::Report;
use crate::scalar::Scalar;
use crate::space::Signature;
use crate::twist::{
    check_twisting, invert_twisting, map_equal, twisted_product, twisted_product_unchecked, Product, TwistingMap,
};

fn same_factor<S: Scalar>(x: &Algebra<S>, y: &Algebra<S>, what: &str) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(format!("{what}: algebras of dims {} and {}", x.dim(), y.dim())));
    }
    Ok(())
}

/// `R1: B⊗A→A⊗B`, `R2: C⊗B→B⊗C`, `R3: C⊗A→A⊗C`.
fn check_shapes<S: Scalar>(r1: &TwistingMap<S>, r2: &TwistingMap<S>, r3: &TwistingMap<S>) -> Result<()> {
    same_factor(&r1.a, &r3.a, "A")?;
    same_factor(&r1.b, &r2.a, "B")?;
    same_factor(&r2.b, &r3.b, "C")
}

/// `(A⊗R2)∘(R3⊗B)∘(C⊗R1) = (R1⊗C)∘(B⊗R3)∘(R2⊗A)` on `C⊗B⊗A`.
pub fn check_hexagon<S: Scalar>(r1: &TwistingMap<S>, r2: &TwistingMap<S>, r3: &TwistingMap<S>) -> Result<Report> {
    check_shapes(r1, r2, r3)?;
    let (a, b, c) = (&r1.a, &r1.b, &r2.b);
    let lhs = Expr::Compose(vec![
        Expr::Tensor(vec![a.id(), r2.expr()]),
        Expr::Tensor(vec![r3.expr(), b.id()]),
        Expr::Tensor(vec![c.id(), r1.expr()]),
    ]);
    let rhs = Expr::Compose(vec![
        Expr::Tensor(vec![r1.expr(), c.id()]),
        Expr::Tensor(vec![b.id(), r3.expr()]),
        Expr::Tensor(vec![r2.expr(), a.id()]),
    ]);
    Ok(check_equal(
        "hexagon",
        &lhs,
        &rhs,
        &Signature::tensor_all([&c.sig, &b.sig, &a.sig]),
        &Signature::tensor_all([&a.sig, &b.sig, &c.sig]),
    ))
}

/// `T1 = (A⊗R2)∘(R3⊗B)`: `C⊗(A⊗_{R1}B) → (A⊗_{R1}B)⊗C`.
pub fn transfer_t1<S: Scalar>(r1: &TwistingMap<S>, r2: &TwistingMap<S>, r3: &TwistingMap<S>) -> Result<TwistingMap<S>> {
    let (a, b, c) = (&r1.a, &r1.b, &r2.b);
    let ab = twisted_product_unchecked(r1)?.algebra;
    let e = Expr::Compose(vec![Expr::Tensor(vec![a.id(), r2.expr()]), Expr::Tensor(vec![r3.expr(), b.id()])]);
    let map = e.materialize(c.sig.tensor(&ab.sig), ab.sig.tensor(&c.sig))?;
    TwistingMap::new(&ab, c, map)
}

/// `T2 = (R1⊗C)∘(B⊗R3)`: `(B⊗_{R2}C)⊗A → A⊗(B⊗_{R2}C)`.
pub fn transfer_t2<S: Scalar>(r1: &TwistingMap<S>, r2: &TwistingMap<S>, r3: &TwistingMap<S>) -> Result<TwistingMap<S>> {
    let (a, b, c) = (&r1.a, &r1.b, &r2.b);
    let bc = twisted_product_unchecked(r2)?.algebra;
    let e = Expr::Compose(vec![Expr::Tensor(vec![r1.expr(), c.id()]), Expr::Tensor(vec![b.id(), r3.expr()])]);
    let map = e.materialize(bc.sig.tensor(&a.sig), a.sig.tensor(&bc.sig))?;
    TwistingMap::new(a, &bc, map)
}

/// The three-factor multiplication written directly in the legs of the
/// three twisting maps, on `(A⊗B⊗C)⊗(A⊗B⊗C)`.
pub fn triple_formula<S: Scalar>(r1: &TwistingMap<S>, r2: &TwistingMap<S>, r3: &TwistingMap<S>) -> Expr<S> {
    let (a, b, c) = (&r1.a, &r1.b, &r2.b);
    Expr::Compose(vec![
        Expr::Tensor(vec![a.mu(), b.mu(), c.mu()]),
        Expr::Tensor(vec![a.id(), a.id(), b.id(), r2.expr(), c.id()]),
        Expr::Tensor(vec![a.id(), r1.expr(), c.id(), b.id(), c.id()]),
        Expr::Tensor(vec![a.id(), b.id(), r3.expr(), b.id(), c.id()]),
    ])
}

#[derive(Clone, Debug)]
pub struct Triple<S> {
    pub algebra: Algebra<S>,
    pub t1: TwistingMap<S>,
    pub t2: TwistingMap<S>,
    pub inclusions: [LinearMap<S>; 3],
    pub report: Report,
}

/// `A⊗_{R1}B⊗_{R2}C`, built both ways and checked against the leg formula.
pub fn triple_product<S: Scalar>(r1: &TwistingMap<S>, r2: &TwistingMap<S>, r3: &TwistingMap<S>) -> Result<Triple<S>> {
    for r in [r1, r2, r3] {
        if !r.is_verified() {
            return Err(Error::UnverifiedTwist(Box::new(r.verification().clone())));
        }
    }
    let hex = check_hexagon(r1, r2, r3)?;
    if !hex.pass {
        return Err(Error::HexagonViolated(Box::new(hex)));
    }
    let (t1, t2) = (transfer_t1(r1, r2, r3)?, transfer_t2(r1, r2, r3)?);
    let (c1, c2) = (check_twisting(&t1).renamed("T1 twisting"), check_twisting(&t2).renamed("T2 twisting"));
    if !c1.pass || !c2.pass {
        return Err(Error::AxiomViolation(Box::new(Report::all("transfer maps", vec![c1, c2]))));
    }
    let left = twisted_product(&t1)?;
    let right = twisted_product(&t2)?;
    let abc = left.algebra.sig.clone();
    let orders = check_equal(
        "association orders agree",
        &left.algebra.mu(),
        &right.algebra.mu(),
        &abc.tensor(&abc),
        &abc,
    );
    let formula = check_equal(
        "leg formula",
        &left.algebra.mu(),
        &triple_formula(r1, r2, r3),
        &abc.tensor(&abc),
        &abc,
    );
    let report = Report::all("triple product", vec![hex, c1, c2, orders, formula]);
    if !report.pass {
        return Err(Error::AxiomViolation(Box::new(report)));
    }
    let (a, b, c) = (&r1.a, &r1.b, &r2.b);
    let inclusions = [
        LinearMap::identity(&a.sig).tensor(&b.unit).tensor(&c.unit),
        a.unit.tensor(&LinearMap::identity(&b.sig)).tensor(&c.unit),
        a.unit.tensor(&b.unit).tensor(&LinearMap::identity(&c.sig)),
    ];
    let algebra = left.algebra.renamed(format!("{}⊗{}⊗{}", a.name, b.name, c.name));
    Ok(Triple { algebra, t1, t2, inclusions, report })
}

/// Pivot functional `e_p*/u[p]` with `P∘u = 1`.
fn pivot<S: Scalar>(a: &Algebra<S>) -> Result<LinearMap<S>> {
    let u = a.unit.column_vec(0);
    let (p, s) = u.first().ok_or_else(|| Error::DimensionMismatch(format!("{} has zero unit", a.name)))?;
    let inv = s.inv().ok_or(Error::NotInvertible)?;
    let mut v = vec![S::zero(); a.dim()];
    v[*p] = inv;
    Ok(LinearMap::covector(&a.sig, &v))
}

/// Extracts a factor map and checks that nothing was lost in the projection.
fn extract<S: Scalar>(
    name: &str,
    m: &Expr<S>,
    project: Expr<S>,
    embed: Expr<S>,
    dom: &Signature,
    cod: &Signature,
    full: &Signature,
) -> Result<(LinearMap<S>, Report)> {
    let r = Expr::Compose(vec![project, m.clone()]).materialize(dom.clone(), cod.clone())?;
    let rep = check_equal(name, m, &Expr::Compose(vec![embed, Expr::Map(r.clone())]), dom, full);
    Ok((r, rep))
}

#[derive(Clone, Debug)]
pub struct Splitting<S> {
    pub first: TwistingMap<S>,
    pub second: TwistingMap<S>,
    pub report: Report,
}

/// Splits `T: C⊗(A⊗B) → (A⊗B)⊗C` into `R2: C⊗B→B⊗C` and `R3: C⊗A→A⊗C`;
/// `first` is `R2` and `second` is `R3`.
pub fn split_right<S: Scalar>(t: &TwistingMap<S>, a: &Algebra<S>, b: &Algebra<S>) -> Result<Splitting<S>> {
    let c = &t.b;
    if t.a.dim() != a.dim() * b.dim() {
        return Err(Error::DimensionMismatch("split: inner algebra is not A⊗B".into()));
    }
    let (ua, ub) = (Expr::Map(a.unit.clone()), Expr::Map(b.unit.clone()));
    let (pa, pb) = (Expr::Map(pivot(a)?), Expr::Map(pivot(b)?));
    let full = Signature::tensor_all([&a.sig, &b.sig, &c.sig]);
    let m3 = Expr::Compose(vec![t.expr(), Expr::Tensor(vec![c.id(), a.id(), ub.clone()])]);
    let (r3, s3) = extract(
        "C⊗A lands in A⊗1⊗C",
        &m3,
        Expr::Tensor(vec![a.id(), pb, c.id()]),
        Expr::Tensor(vec![a.id(), ub, c.id()]),
        &c.sig.tensor(&a.sig),
        &a.sig.tensor(&c.sig),
        &full,
    )?;
    let m2 = Expr::Compose(vec![t.expr(), Expr::Tensor(vec![c.id(), ua.clone(), b.id()])]);
    let (r2, s2) = extract(
        "C⊗B lands in 1⊗B⊗C",
        &m2,
        Expr::Tensor(vec![pa, b.id(), c.id()]),
        Expr::Tensor(vec![ua, b.id(), c.id()]),
        &c.sig.tensor(&b.sig),
        &b.sig.tensor(&c.sig),
        &full,
    )?;
    let cond = Report::all("right splitting conditions", vec![s3, s2]);
    if !cond.pass {
        return Err(Error::NotSplittable(Box::new(cond)));
    }
    let (r2, r3) = (TwistingMap::new(b, c, r2)?, TwistingMap::new(a, c, r3)?);
    let recompose = check_equal(
        "T = (A⊗R2)∘(R3⊗B)",
        &t.expr(),
        &Expr::Compose(vec![Expr::Tensor(vec![a.id(), r2.expr()]), Expr::Tensor(vec![r3.expr(), b.id()])]),
        &Signature::tensor_all([&c.sig, &a.sig, &b.sig]),
        &full,
    );
    let report = Report::all(
        "right splitting",
        vec![cond, check_twisting(&r2).renamed("R2 twisting"), check_twisting(&r3).renamed("R3 twisting"), recompose],
    );
    Ok(Splitting { first: r2, second: r3, report })
}

/// Splits `T: (B⊗C)⊗A → A⊗(B⊗C)` into `R1: B⊗A→A⊗B` and `R3: C⊗A→A⊗C`;
/// `first` is `R1` and `second` is `R3`.
pub fn split_left<S: Scalar>(t: &TwistingMap<S>, b: &Algebra<S>, c: &Algebra<S>) -> Result<Splitting<S>> {
    let a = &t.a;
    if t.b.dim() != b.dim() * c.dim() {
        return Err(Error::DimensionMismatch("split: inner algebra is not B⊗C".into()));
    }
    let (ub, uc) = (Expr::Map(b.unit.clone()), Expr::Map(c.unit.clone()));
    let (pb, pc) = (Expr::Map(pivot(b)?), Expr::Map(pivot(c)?));
    let full = Signature::tensor_all([&a.sig, &b.sig, &c.sig]);
    let m1 = Expr::Compose(vec![t.expr(), Expr::Tensor(vec![b.id(), uc.clone(), a.id()])]);
    let (r1, s1) = extract(
        "B⊗A lands in A⊗B⊗1",
        &m1,
        Expr::Tensor(vec![a.id(), b.id(), pc]),
        Expr::Tensor(vec![a.id(), b.id(), uc]),
        &b.sig.tensor(&a.sig),
        &a.sig.tensor(&b.sig),
        &full,
    )?;
    let m3 = Expr::Compose(vec![t.expr(), Expr::Tensor(vec![ub.clone(), c.id(), a.id()])]);
    let (r3, s3) = extract(
        "C⊗A lands in A⊗1⊗C",
        &m3,
        Expr::Tensor(vec![a.id(), pb, c.id()]),
        Expr::Tensor(vec![a.id(), ub, c.id()]),
        &c.sig.tensor(&a.sig),
        &a.sig.tensor(&c.sig),
        &full,
    )?;
    let cond = Report::all("left splitting conditions", vec![s1, s3]);
    if !cond.pass {
        return Err(Error::NotSplittable(Box::new(cond)));
    }
    let (r1, r3) = (TwistingMap::new(a, b, r1)?, TwistingMap::new(a, c, r3)?);
    let recompose = check_equal(
        "T = (R1⊗C)∘(B⊗R3)",
        &t.expr(),
        &Expr::Compose(vec![Expr::Tensor(vec![r1.expr(), c.id()]), Expr::Tensor(vec![b.id(), r3.expr()])]),
        &Signature::tensor_all([&b.sig, &c.sig, &a.sig]),
        &full,
    );
    let report = Report::all(
        "left splitting",
        vec![cond, check_twisting(&r1).renamed("R1 twisting"), check_twisting(&r3).renamed("R3 twisting"), recompose],
    );
    Ok(Splitting { first: r1, second: r3, report })
}

/// Algebras `A_0…A_{n-1}` with `R_ij: A_j⊗A_i → A_i⊗A_j` for all `i < j`.
#[derive(Debug)]
pub struct TwistFamily<S> {
    pub algebras: Vec<Algebra<S>>,
    maps: BTreeMap<(usize, usize), TwistingMap<S>>,
    hexagons: BTreeMap<(usize, usize, usize), OnceLock<Report>>,
}

impl<S: Scalar> TwistFamily<S> {
    pub fn new(algebras: Vec<Algebra<S>>, maps: BTreeMap<(usize, usize), TwistingMap<S>>) -> Result<Self> {
        let n = algebras.len();
        for i in 0..n {
            for j in i + 1..n {
                let r = maps.get(&(i, j)).ok_or_else(|| Error::UnknownObject(format!("twisting map {i},{j}")))?;
                same_factor(&r.a, &algebras[i], "family")?;
                same_factor(&r.b, &algebras[j], "family")?;
            }
        }
        let mut hexagons = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    hexagons.insert((i, j, k), OnceLock::new());
                }
            }
        }
        Ok(TwistFamily { algebras, maps, hexagons })
    }

    /// The family in which every map is the flip.
    pub fn flips(algebras: Vec<Algebra<S>>) -> Self {
        let mut maps = BTreeMap::new();
        for i in 0..algebras.len() {
            for j in i + 1..algebras.len() {
                maps.insert((i, j), TwistingMap::flip(&algebras[i], &algebras[j]));
            }
        }
        TwistFamily::new(algebras, maps).expect("flip family is well shaped")
    }

    pub fn len(&self) -> usize {
        self.algebras.len()
    }

    pub fn is_empty(&self) -> bool {
        self.algebras.is_empty()
    }

    pub fn map(&self, i: usize, j: usize) -> &TwistingMap<S> {
        &self.maps[&(i, j)]
    }

    pub fn hexagon(&self, i: usize, j: usize, k: usize) -> &Report {
        self.hexagons[&(i, j, k)].get_or_init(|| {
            let (rij, rjk, rik) = (self.map(i, j), self.map(j, k), self.map(i, k));
            if rij.is_flip() && rjk.is_flip() || rij.is_flip() && rik.is_flip() || rjk.is_flip() && rik.is_flip() {
                // Two flips always satisfy the hexagon.
                return Report::pass(format!("hexagon ({i},{j},{k})")).with_note("two flips");
            }
            check_hexagon(rij, rjk, rik)
                .unwrap_or_else(|e| Report::fail("hexagon", e.to_string()))
                .renamed(format!("hexagon ({i},{j},{k})"))
        })
    }

    /// Every pair twisting and every triple hexagon, in index order.
    pub fn verify(&self) -> Report {
        let mut parts = Vec::new();
        for ((i, j), r) in &self.maps {
            parts.push(check_twisting(r).renamed(format!("twisting ({i},{j})")));
        }
        for &(i, j, k) in self.hexagons.keys() {
            parts.push(self.hexagon(i, j, k).clone());
        }
        Report::all("twist family", parts)
    }

    fn first_failure(&self) -> Option<Error> {
        let rep = self.verify();
        if rep.pass {
            return None;
        }
        let bad = rep.parts.iter().find(|p| !p.pass).cloned().expect("failing part");
        Some(if bad.check.starts_with("hexagon") {
            Error::HexagonViolated(Box::new(bad))
        } else {
            Error::UnverifiedTwist(Box::new(bad))
        })
    }

    /// Twisting map moving block `[m, r)` past block `[l, m)`: each factor of the
    /// left block travels left through the right block, nearest factor first.
    pub fn block_twist(&self, l: usize, m: usize, r: usize, x: &Algebra<S>, y: &Algebra<S>) -> Result<TwistingMap<S>> {
        let dims: Vec<usize> = self.algebras.iter().map(Algebra::dim).collect();
        let mut order: Vec<usize> = (m..r).chain(l..m).collect();
        let wire_dims: Vec<usize> = order.iter().map(|&i| dims[i]).collect();
        let mut w = Wiring::new(&wire_dims);
        for (placed, i) in (l..m).enumerate() {
            let mut pos = placed + (r - m);
            while pos > placed {
                let j = order[pos - 1];
                w = w.map(pos - 1, 2, &self.map(i, j).map, &[dims[i], dims[j]]);
                order.swap(pos - 1, pos);
                pos -= 1;
            }
        }
        let map = w.build().materialize(y.sig.tensor(&x.sig), x.sig.tensor(&y.sig))?;
        TwistingMap::new(x, y, map)
    }

    /// Builds the product by merging adjacent blocks; `merges[s]` is the index
    /// of the left block of the pair merged at step `s`.
    pub fn product_by_merges(&self, merges: &[usize]) -> Result<Algebra<S>> {
        let mut blocks: Vec<(usize, usize, Algebra<S>)> =
            self.algebras.iter().enumerate().map(|(i, a)| (i, i + 1, a.clone())).collect();
        for &k in merges {
            let (l, m, x) = blocks[k].clone();
            let (_, r, y) = blocks.remove(k + 1);
            let t = self.block_twist(l, m, r, &x, &y)?;
            let p = twisted_product_unchecked(&t)?;
            blocks[k] = (l, r, p.algebra);
        }
        if blocks.len() != 1 {
            return Err(Error::DimensionMismatch("merge sequence leaves several blocks".into()));
        }
        Ok(blocks.pop().expect("one block").2)
    }

    /// `a ↦ 1⊗…⊗a⊗…⊗1` into the full product.
    pub fn inclusion(&self, k: usize) -> LinearMap<S> {
        let mut m = LinearMap::identity(&Signature::ground());
        for (i, a) in self.algebras.iter().enumerate() {
            m = m.tensor(&if i == k { LinearMap::identity(&a.sig) } else { a.unit.clone() });
        }
        m
    }

    /// `𝒮: A_n⊗…⊗A_1 → A_1⊗…⊗A_n`; each factor in turn travels left past the
    /// later ones, nearest first.
    pub fn reversal_map(&self) -> Result<LinearMap<S>> {
        let n = self.len();
        let dims: Vec<usize> = self.algebras.iter().map(Algebra::dim).collect();
        let mut order: Vec<usize> = (0..n).rev().collect();
        let mut w = Wiring::new(&order.iter().map(|&i| dims[i]).collect::<Vec<_>>());
        for k in 0..n {
            let mut pos = order.iter().position(|&x| x == k).expect("present");
            while pos > k {
                let j = order[pos - 1];
                w = w.map(pos - 1, 2, &self.map(k, j).map, &[dims[k], dims[j]]);
                order.swap(pos - 1, pos);
                pos -= 1;
            }
        }
        let rev = Signature::tensor_all(self.algebras.iter().rev().map(|a| &a.sig));
        let fwd = Signature::tensor_all(self.algebras.iter().map(|a| &a.sig));
        w.build().materialize(rev, fwd)
    }
}

/// All merge sequences for up to four factors; five seeded samples beyond.
pub fn merge_orders(n: usize) -> Vec<Vec<usize>> {
    fn all(blocks: usize) -> Vec<Vec<usize>> {
        if blocks <= 1 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in 0..blocks - 1 {
            for rest in all(blocks - 1) {
                let mut v = vec![k];
                v.extend(rest);
                out.push(v);
            }
        }
        out
    }
    let left: Vec<usize> = vec![0; n.saturating_sub(1)];
    if n <= 4 {
        let mut v = all(n);
        v.retain(|o| o != &left);
        v.insert(0, left);
        return v;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7715);
    let mut out = vec![left];
    while out.len() < 6 {
        let o: Vec<usize> = (0..n - 1).map(|s| *(0..n - 1 - s).collect::<Vec<_>>().choose(&mut rng).expect("nonempty")).collect();
        if !out.contains(&o) {
            out.push(o);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct NFold<S> {
    pub algebra: Algebra<S>,
    pub inclusions: Vec<LinearMap<S>>,
    pub report: Report,
}

/// The n-factor product, checked for independence of the association order.
pub fn n_fold_product<S: Scalar>(f: &TwistFamily<S>) -> Result<NFold<S>> {
    if let Some(e) = f.first_failure() {
        return Err(e);
    }
    let orders = merge_orders(f.len());
    let base = f.product_by_merges(&orders[0])?;
    let mut parts = Vec::new();
    let sq = base.sig.tensor(&base.sig);
    for o in &orders[1..] {
        let alt = f.product_by_merges(o)?;
        parts.push(check_equal(&format!("association order {o:?}"), &base.mu(), &alt.mu(), &sq, &base.sig));
    }
    let report = Report::all("association orders agree", parts);
    if !report.pass {
        return Err(Error::AxiomViolation(Box::new(report)));
    }
    let inclusions = (0..f.len()).map(|k| f.inclusion(k)).collect();
    Ok(NFold { algebra: base, inclusions, report })
}

/// `μ_X∘(μ_X⊗X)∘…`, the n-fold product of `X`.
fn iterated_mult<S: Scalar>(x: &Algebra<S>, n: usize) -> Expr<S> {
    let mut e = x.id();
    for _ in 1..n {
        e = Expr::Compose(vec![x.mu(), Expr::Tensor(vec![e, Expr::Id(x.dim())])]);
    }
    e
}

fn universal_core<S: Scalar>(
    product: &Algebra<S>,
    inclusions: &[LinearMap<S>],
    s_map: Expr<S>,
    reversed: &Signature,
    x: &Algebra<S>,
    us: &[LinearMap<S>],
) -> Result<(LinearMap<S>, Report)> {
    let n = us.len();
    let mx = iterated_mult(x, n);
    let fwd: Vec<Expr<S>> = us.iter().map(|u| Expr::Map(u.clone())).collect();
    let rev: Vec<Expr<S>> = fwd.iter().rev().cloned().collect();
    let cond = check_equal(
        "universal property condition",
        &Expr::Compose(vec![mx.clone(), Expr::Tensor(rev)]),
        &Expr::Compose(vec![mx.clone(), Expr::Tensor(fwd.clone()), s_map]),
        reversed,
        &x.sig,
    );
    if !cond.pass {
        return Err(Error::ConditionViolated(Box::new(cond)));
    }
    let phi = Expr::Compose(vec![mx, Expr::Tensor(fwd)]).materialize(product.sig.clone(), x.sig.clone())?;
    let mut report = Report::all("universal morphism", vec![cond]);
    report.push(check_morphism(&phi, product, x)?);
    for (k, (i, u)) in inclusions.iter().zip(us).enumerate() {
        report.push(map_equal(&format!("restricts to u{}", k + 1), &phi.compose(i)?, u));
    }
    Ok((phi, report))
}

/// `φ(a⊗b⊗c) = u(a)v(b)w(c)` out of `A⊗_{R1}B⊗_{R2}C`.
#[allow(clippy::too_many_arguments)]
pub fn universal_morphism3<S: Scalar>(
    r1: &TwistingMap<S>,
    r2: &TwistingMap<S>,
    r3: &TwistingMap<S>,
    x: &Algebra<S>,
    u: &LinearMap<S>,
    v: &LinearMap<S>,
    w: &LinearMap<S>,
) -> Result<(LinearMap<S>, Report)> {
    let (a, b, c) = (&r1.a, &r1.b, &r2.b);
    let s_map = Expr::Compose(vec![
        Expr::Tensor(vec![a.id(), r2.expr()]),
        Expr::Tensor(vec![r3.expr(), b.id()]),
        Expr::Tensor(vec![c.id(), r1.expr()]),
    ]);
    let reversed = Signature::tensor_all([&c.sig, &b.sig, &a.sig]);
    let triple = triple_product(r1, r2, r3)?;
    universal_core(&triple.algebra, &triple.inclusions, s_map, &reversed, x, &[u.clone(), v.clone(), w.clone()])
}

/// The n-factor version with the reversal map `𝒮`.
pub fn universal_morphism_n<S: Scalar>(
    f: &TwistFamily<S>,
    x: &Algebra<S>,
    us: &[LinearMap<S>],
) -> Result<(LinearMap<S>, Report)> {
    if us.len() != f.len() {
        return Err(Error::DimensionMismatch(format!("{} morphisms for {} factors", us.len(), f.len())));
    }
    let nf = n_fold_product(f)?;
    let reversed = Signature::tensor_all(f.algebras.iter().rev().map(|a| &a.sig));
    universal_core(&nf.algebra, &nf.inclusions, Expr::Map(f.reversal_map()?), &reversed, x, us)
}

/// `A⊗R2` as an isomorphism `A⊗_{R3}C⊗_V B → A⊗_{R1}B⊗_{R2}C` with `V = R2⁻¹`.
pub fn swap_middle<S: Scalar>(
    r1: &TwistingMap<S>,
    r2: &TwistingMap<S>,
    r3: &TwistingMap<S>,
) -> Result<(LinearMap<S>, Report)> {
    let original = triple_product(r1, r2, r3)?;
    let (v, vrep) = invert_twisting(r2)?;
    let hex = check_hexagon(r3, &v, r1)?;
    if !hex.pass {
        return Err(Error::HexagonViolated(Box::new(hex)));
    }
    let swapped = triple_product(r3, &v, r1)?;
    let a = &r1.a;
    let iso = LinearMap::identity(&a.sig).tensor(&r2.map);
    let iso = iso.with_signatures(swapped.algebra.sig.clone(), original.algebra.sig.clone())?;
    let mut report = Report::all("middle swap", vec![vrep, hex]);
    report.push(check_morphism(&iso, &swapped.algebra, &original.algebra)?.renamed("A⊗R2 is a morphism"));
    report.push(match iso.invert() {
        Ok(_) => Report::pass("A⊗R2 is bijective"),
        Err(e) => Report::fail("A⊗R2 is bijective", e.to_string()),
    });
    Ok((iso, report))
}

/// Convenience for inclusions of a product.
pub fn product_inclusions<S: Scalar>(p: &Product<S>) -> [LinearMap<S>; 2] {
    [p.i_a.clone(), p.i_b.clone()]
}

/// Compares two maps column by column, as a named report.
pub fn compare_maps<S: Scalar>(name: &str, f: &LinearMap<S>, g: &LinearMap<S>) -> Result<Report> {
    let c = compare(&Expr::Map(f.clone()), &Expr::Map(g.clone()))?;
    Ok(c.report(name, f.domain(), f.codomain()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_orders_enumerate_small_cases() {
        assert_eq!(merge_orders(3).len(), 2);
        assert_eq!(merge_orders(4).len(), 6);
        assert_eq!(merge_orders(4)[0], vec![0, 0, 0]);
        assert_eq!(merge_orders(6).len(), 6);
        assert_eq!(merge_orders(6), merge_orders(6));
    }
}
