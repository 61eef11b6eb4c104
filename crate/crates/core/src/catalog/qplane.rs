//! Noncommutative 2n-planes: truncated commutative factors `ℂ[z, z̄]`, their
//! weight-truncated algebras of forms, the λ-twists between factors, and an
//! independent normal-ordering oracle built straight from the relations.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, DGAlgebra, GradedAlgebra, Involution};
use crate::error::{Error, Result};
use crate::expr::check_equal;
use crate::iterate::{n_fold_product, NFold, TwistFamily};
use crate::linear::LinearMap;
use crate::report::Report;
use crate::scalar::{Scalar, Q};
use crate::space::{decode, encode, Signature, Space};
use crate::twist::TwistingMap;

const DZ: u8 = 1;
const DZB: u8 = 2;

/// `z^a z̄^b` times the form `dz` (bit 0) and/or `dz̄` (bit 1), in that order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub forms: u8,
}

impl Monomial {
    pub fn form_degree(&self) -> u32 {
        self.forms.count_ones()
    }

    pub fn weight(&self) -> u32 {
        self.a + self.b + self.form_degree()
    }

    /// `#z + #dz − #z̄ − #dz̄`.
    pub fn charge(&self) -> i64 {
        self.a as i64 - self.b as i64 + (self.forms & DZ) as i64 - ((self.forms & DZB) >> 1) as i64
    }

    fn label(&self, mu: Option<usize>) -> String {
        let idx = mu.map(|m| m.to_string()).unwrap_or_default();
        let mut parts = Vec::new();
        for (name, e) in [("z", self.a), ("zb", self.b)] {
            match e {
                0 => {}
                1 => parts.push(format!("{name}{idx}")),
                _ => parts.push(format!("{name}{idx}^{e}")),
            }
        }
        if self.forms & DZ != 0 {
            parts.push(format!("dz{idx}"));
        }
        if self.forms & DZB != 0 {
            parts.push(format!("dzb{idx}"));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

/// Basis of one factor: weight at most `d`, ordered by weight, then form
/// degree, then descending power of `z`.
pub fn factor_basis(d: u32, with_forms: bool) -> Vec<Monomial> {
    let masks: &[u8] = if with_forms { &[0, DZ, DZB, DZ | DZB] } else { &[0] };
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            for &forms in masks {
                let m = Monomial { a, b, forms };
                if m.weight() <= d {
                    out.push(m);
                }
            }
        }
    }
    out.sort_by_key(|m| (m.weight(), m.form_degree(), std::cmp::Reverse(m.a), m.forms));
    out
}

/// Product inside one factor: `None` when it leaves the truncation or a form repeats.
fn factor_product(x: &Monomial, y: &Monomial, d: u32) -> Option<(Monomial, i64)> {
    if x.forms & y.forms != 0 {
        return None;
    }
    let sign = if x.forms == DZB && y.forms == DZ { -1 } else { 1 };
    let m = Monomial { a: x.a + y.a, b: x.b + y.b, forms: x.forms | y.forms };
    (m.weight() <= d).then_some((m, sign))
}

struct FactorSpec {
    basis: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl FactorSpec {
    fn new(d: u32, with_forms: bool) -> Self {
        let basis = factor_basis(d, with_forms);
        let index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        FactorSpec { basis, index }
    }
}

fn factor_space(spec: &FactorSpec, mu: Option<usize>, name: &str) -> Result<Space> {
    Space::labelled(name, spec.basis.iter().map(|m| m.label(mu)).collect())
}

fn factor_algebra<S: Scalar>(spec: &FactorSpec, d: u32, mu: Option<usize>, name: &str) -> Result<Algebra<S>> {
    let space = factor_space(spec, mu, name)?;
    let mut unit = vec![S::zero(); spec.basis.len()];
    unit[0] = S::one();
    Algebra::from_table(name, space, &unit, |i, j| match factor_product(&spec.basis[i], &spec.basis[j], d) {
        Some((m, s)) => vec![(spec.index[&m], S::from_int(s))],
        None => Vec::new(),
    })
}

fn factor_name(mu: Option<usize>, forms: bool) -> String {
    let base = if forms { "Omega" } else { "C[z,zb]" };
    match mu {
        Some(m) => format!("{base}_{m}"),
        None => base.to_string(),
    }
}

/// Truncated `ℂ[z, z̄]` with the conjugation `z ↦ z̄`.
pub fn qplane_factor<S: Scalar>(d: u32) -> Result<(Algebra<S>, Involution<S>)> {
    factor_with_involution(d, None)
}

fn factor_with_involution<S: Scalar>(d: u32, mu: Option<usize>) -> Result<(Algebra<S>, Involution<S>)> {
    if d == 0 {
        return Err(Error::DimensionMismatch("truncation degree must be at least 1".into()));
    }
    let spec = FactorSpec::new(d, false);
    let alg = factor_algebra(&spec, d, mu, &factor_name(mu, false))?;
    let matrix = LinearMap::from_fn(alg.sig.clone(), alg.sig.clone(), |i| {
        let m = spec.basis[i];
        vec![(spec.index[&Monomial { a: m.b, b: m.a, forms: 0 }], S::one())]
    });
    let j = Involution::new(alg.clone(), matrix, S::BACKEND != crate::scalar::Backend::Rational);
    Ok((alg, j))
}

/// Forms on one truncated factor, with `d` extending `z ↦ dz`, `z̄ ↦ dz̄`.
pub fn qplane_forms_factor<S: Scalar>(d: u32) -> Result<DGAlgebra<S>> {
    forms_factor(d, None)
}

fn forms_factor<S: Scalar>(d: u32, mu: Option<usize>) -> Result<DGAlgebra<S>> {
    if d == 0 {
        return Err(Error::DimensionMismatch("truncation degree must be at least 1".into()));
    }
    let spec = FactorSpec::new(d, true);
    let alg = factor_algebra(&spec, d, mu, &factor_name(mu, true))?;
    let degrees = spec.basis.iter().map(|m| m.form_degree() as i32).collect();
    let diff = LinearMap::from_fn(alg.sig.clone(), alg.sig.clone(), |i| {
        let m = spec.basis[i];
        let mut out = Vec::new();
        // d(z^a z̄^b ω) = a z^{a-1} z̄^b dz ω + b z^a z̄^{b-1} dz̄ ω
        if m.a > 0 && m.forms & DZ == 0 {
            let t = Monomial { a: m.a - 1, b: m.b, forms: m.forms | DZ };
            out.push((spec.index[&t], S::from_int(m.a as i64)));
        }
        if m.b > 0 && m.forms & DZB == 0 {
            let t = Monomial { a: m.a, b: m.b - 1, forms: m.forms | DZB };
            let sign = if m.forms & DZ != 0 { -1 } else { 1 };
            out.push((spec.index[&t], S::from_int(sign * m.b as i64)));
        }
        out
    });
    Ok(DGAlgebra { graded: GradedAlgebra::new(alg, degrees)?, d: diff })
}

/// `θ` as an antisymmetric matrix of rational multiples of `π`.
#[derive(Clone, Debug, PartialEq)]
pub struct Theta(pub Vec<Vec<Q>>);

impl Theta {
    pub fn zero(n: usize) -> Self {
        Theta(vec![vec![Q::from_integer(0); n]; n])
    }

    /// Fills `θ_{μν}` for `μ < ν` from `upper` in row order, antisymmetrically.
    pub fn from_upper(n: usize, upper: &[Q]) -> Result<Self> {
        if upper.len() != n * (n - 1) / 2 {
            return Err(Error::DimensionMismatch(format!("{n} factors need {} angles", n * (n - 1) / 2)));
        }
        let mut t = Theta::zero(n);
        let mut k = 0;
        for mu in 0..n {
            for nu in mu + 1..n {
                t.0[mu][nu] = upper[k];
                t.0[nu][mu] = -upper[k];
                k += 1;
            }
        }
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.0.len();
        for mu in 0..n {
            if self.0[mu].len() != n {
                return Err(Error::DimensionMismatch("theta must be square".into()));
            }
            for nu in 0..n {
                if self.0[mu][nu] != -self.0[nu][mu] {
                    return Err(Error::Parse(format!("theta is not antisymmetric at ({mu}, {nu})")));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `(λ^{νμ})^k = e^{ikθ_{νμ}}`.
    fn lambda_pow<S: Scalar>(&self, nu: usize, mu: usize, k: i64) -> Result<S> {
        let t = self.0[nu][mu] * Q::from_integer(k);
        S::exp_i_pi(t).ok_or_else(|| {
            Error::BackendUnavailable(format!("e^(i pi {t}) is not exact in the {} backend", S::BACKEND.name()))
        })
    }
}

/// `x⊗y ↦ (−1)^{|x||y|} (λ^{νμ})^{Q(x)Q(y)} y⊗x` from factor `ν` past factor `μ`.
fn lambda_twist<S: Scalar>(
    a_mu: &Algebra<S>,
    a_nu: &Algebra<S>,
    basis: &[Monomial],
    theta: &Theta,
    mu: usize,
    nu: usize,
) -> Result<TwistingMap<S>> {
    let n = basis.len();
    let mut trip = Vec::new();
    for (x, mx) in basis.iter().enumerate() {
        for (y, my) in basis.iter().enumerate() {
            let mut c = theta.lambda_pow::<S>(nu, mu, mx.charge() * my.charge())?;
            if mx.form_degree() % 2 == 1 && my.form_degree() % 2 == 1 {
                c = -c;
            }
            trip.push((y * n + x, x * n + y, c));
        }
    }
    let map = LinearMap::from_triplets(a_nu.sig.tensor(&a_mu.sig), a_mu.sig.tensor(&a_nu.sig), trip)?;
    TwistingMap::new(a_mu, a_nu, map)
}

/// The iterated q-plane and its independent normal-form check.
#[derive(Debug)]
pub struct QPlane<S> {
    pub theta: Theta,
    pub truncation: u32,
    pub factors: Vec<Algebra<S>>,
    pub involutions: Vec<Involution<S>>,
    pub family: TwistFamily<S>,
    pub product: NFold<S>,
    pub report: Report,
}

fn build_family<S: Scalar>(theta: &Theta, factors: &[Algebra<S>], basis: &[Monomial]) -> Result<TwistFamily<S>> {
    let mut maps = BTreeMap::new();
    for mu in 0..factors.len() {
        for nu in mu + 1..factors.len() {
            maps.insert((mu, nu), lambda_twist(&factors[mu], &factors[nu], basis, theta, mu, nu)?);
        }
    }
    TwistFamily::new(factors.to_vec(), maps)
}

pub fn qplane<S: Scalar>(theta: &Theta, d: u32) -> Result<QPlane<S>> {
    theta.validate()?;
    let n = theta.n();
    let mut factors = Vec::new();
    let mut involutions = Vec::new();
    for mu in 0..n {
        let (a, j) = factor_with_involution::<S>(d, Some(mu + 1))?;
        factors.push(a);
        involutions.push(j);
    }
    let basis = factor_basis(d, false);
    let family = build_family(theta, &factors, &basis)?;
    let product = n_fold_product(&family)?;
    let oracle = normal_form_mult::<S>(theta, d, false)?;
    let sig = product.algebra.sig.clone();
    let cmp = check_equal(
        "normal-form oracle",
        &product.algebra.mu(),
        &crate::expr::Expr::Map(oracle),
        &sig.tensor(&sig),
        &sig,
    );
    let report = Report::all(format!("q-plane n={n} D={d}"), vec![family.verify(), product.report.clone(), cmp]);
    Ok(QPlane { theta: theta.clone(), truncation: d, factors, involutions, family, product, report })
}

/// The q-plane forms: one DG factor per coordinate pair and the extended twists.
#[derive(Debug)]
pub struct QForms<S> {
    pub theta: Theta,
    pub truncation: u32,
    pub factors: Vec<DGAlgebra<S>>,
    pub family: TwistFamily<S>,
}

pub fn qplane_forms<S: Scalar>(theta: &Theta, d: u32) -> Result<QForms<S>> {
    theta.validate()?;
    let n = theta.n();
    let factors: Vec<DGAlgebra<S>> = (0..n).map(|mu| forms_factor(d, Some(mu + 1))).collect::<Result<_>>()?;
    let algebras: Vec<Algebra<S>> = factors.iter().map(|f| f.algebra().clone()).collect();
    let basis = factor_basis(d, true);
    let family = build_family(theta, &algebras, &basis)?;
    Ok(QForms { theta: theta.clone(), truncation: d, factors, family })
}

/// Generator of factor `mu`: 0 = z, 1 = z̄, 2 = dz, 3 = dz̄.
type Gen = (usize, u8);

fn gen_charge(g: Gen) -> i64 {
    if g.1.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn gen_odd(g: Gen) -> bool {
    g.1 >= 2
}

fn word(mu: usize, m: &Monomial, out: &mut Vec<Gen>) {
    out.extend(std::iter::repeat_n((mu, 0), m.a as usize));
    out.extend(std::iter::repeat_n((mu, 1), m.b as usize));
    if m.forms & DZ != 0 {
        out.push((mu, 2));
    }
    if m.forms & DZB != 0 {
        out.push((mu, 3));
    }
}

/// Product structure constants by rewriting concatenated generator words into
/// normal order with the defining relations; no twisting map is consulted.
pub fn normal_form_mult<S: Scalar>(theta: &Theta, d: u32, with_forms: bool) -> Result<LinearMap<S>> {
    theta.validate()?;
    let n = theta.n();
    let spec = FactorSpec::new(d, with_forms);
    let dims = vec![spec.basis.len(); n];
    let total: usize = dims.iter().product();
    let name = if with_forms { "Omega" } else { "C[z,zb]" };
    let spaces: Vec<Space> =
        (0..n).map(|mu| factor_space(&spec, Some(mu + 1), &factor_name(Some(mu + 1), with_forms))).collect::<Result<_>>()?;
    let sig = Signature::from_arcs(spaces.into_iter().map(std::sync::Arc::new).collect());
    let _ = name;
    // Reordering past a different factor contributes θ_{νμ}·q(g)q(h) to the phase exponent.
    let mut trip = Vec::new();
    let (mut tx, mut ty) = (vec![0; n], vec![0; n]);
    let mut cache: BTreeMap<Q, S> = BTreeMap::new();
    for x in 0..total {
        decode(x, &dims, &mut tx);
        for y in 0..total {
            decode(y, &dims, &mut ty);
            let mut w: Vec<Gen> = Vec::new();
            for (mu, &i) in tx.iter().enumerate() {
                word(mu, &spec.basis[i], &mut w);
            }
            for (mu, &i) in ty.iter().enumerate() {
                word(mu, &spec.basis[i], &mut w);
            }
            let mut phase = Q::from_integer(0);
            let mut sign = 1i64;
            // Stable bubble sort by factor index.
            let len = w.len();
            for i in 0..len {
                for j in 0..len - 1 - i {
                    let (g, h) = (w[j], w[j + 1]);
                    if g.0 > h.0 {
                        phase += theta.0[g.0][h.0] * Q::from_integer(gen_charge(g) * gen_charge(h));
                        if gen_odd(g) && gen_odd(h) {
                            sign = -sign;
                        }
                        w.swap(j, j + 1);
                    }
                }
            }
            // Inside a factor: functions commute with everything, one-forms anticommute.
            let mut out_tuple = vec![0; n];
            let mut zero = false;
            let mut start = 0;
            for (mu, slot) in out_tuple.iter_mut().enumerate() {
                let end = start + w[start..].iter().take_while(|g| g.0 == mu).count();
                let seg = &w[start..end];
                start = end;
                let (mut a, mut b) = (0, 0);
                let mut odd: Vec<u8> = Vec::new();
                for g in seg {
                    match g.1 {
                        0 => a += 1,
                        1 => b += 1,
                        k => odd.push(k),
                    }
                }
                for i in 0..odd.len() {
                    for j in 0..odd.len().saturating_sub(1 + i) {
                        if odd[j] > odd[j + 1] {
                            odd.swap(j, j + 1);
                            sign = -sign;
                        }
                    }
                }
                if odd.windows(2).any(|p| p[0] == p[1]) {
                    zero = true;
                    break;
                }
                let forms = odd.iter().fold(0u8, |acc, k| acc | if *k == 2 { DZ } else { DZB });
                let m = Monomial { a, b, forms };
                match spec.index.get(&m) {
                    Some(&i) if m.weight() <= d => *slot = i,
                    _ => {
                        zero = true;
                        break;
                    }
                }
            }
            if zero {
                continue;
            }
            let lam = match cache.get(&phase) {
                Some(v) => v.clone(),
                None => {
                    let v = S::exp_i_pi(phase).ok_or_else(|| {
                        Error::BackendUnavailable(format!("e^(i pi {phase}) is not exact in the {} backend", S::BACKEND.name()))
                    })?;
                    cache.insert(phase, v.clone());
                    v
                }
            };
            let c = if sign < 0 { -lam } else { lam };
            trip.push((encode(&out_tuple, &dims), x * total + y, c));
        }
    }
    LinearMap::from_triplets(sig.tensor(&sig), sig, trip)
}

/// The forms algebra built directly from the relations, as a DG algebra.
pub fn normal_form_forms<S: Scalar>(theta: &Theta, d: u32) -> Result<DGAlgebra<S>> {
    let n = theta.n();
    let mult = normal_form_mult::<S>(theta, d, true)?;
    let factors: Vec<DGAlgebra<S>> = (0..n).map(|mu| forms_factor(d, Some(mu + 1))).collect::<Result<_>>()?;
    let sig = mult.codomain().clone();
    let mut unit = LinearMap::identity(&Signature::ground());
    let mut degrees = vec![0i32];
    for f in &factors {
        unit = unit.tensor(&f.algebra().unit);
        degrees = degrees.iter().flat_map(|&x| f.degrees().iter().map(move |&y| x + y)).collect();
    }
    let alg = Algebra::new("Omega(R^2n_theta)", sig.clone(), mult, unit)?;
    // Leibniz forces d(x_1⋯x_n) = Σ_k (−1)^{|x_1|+…+|x_{k−1}|} x_1⋯dx_k⋯x_n on normal-ordered words.
    let dims = vec![factors[0].algebra().dim(); n];
    let mut t = vec![0; n];
    let diff = LinearMap::from_fn(sig.clone(), sig, |col| {
        decode(col, &dims, &mut t);
        let mut out = Vec::new();
        let mut parity = 0;
        for k in 0..n {
            for (row, c) in factors[k].d.column_vec(t[k]) {
                let mut u = t.clone();
                u[k] = row;
                let c = if parity % 2 == 1 { -c } else { c };
                out.push((encode(&u, &dims), c));
            }
            parity += factors[k].degrees()[t[k]];
        }
        out
    });
    Ok(DGAlgebra { graded: GradedAlgebra::new(alg, degrees)?, d: diff })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_algebra, check_dg, check_involution};
    use crate::scalar::Gaussian;

    #[test]
    fn factor_dimensions() {
        assert_eq!(factor_basis(1, false).len(), 3);
        assert_eq!(factor_basis(2, false).len(), 6);
        assert_eq!(factor_basis(2, true).len(), 13);
        let (a, j) = qplane_factor::<Gaussian>(2).unwrap();
        assert!(check_algebra(&a).pass && a.is_commutative());
        assert!(check_involution(&j).pass);
    }

    #[test]
    fn forms_factor_is_dg() {
        let f = qplane_forms_factor::<Q>(3).unwrap();
        let r = check_dg(&f);
        assert!(r.pass, "{}", r.render());
    }

    #[test]
    fn two_planes_match_the_oracle() {
        let theta = Theta::from_upper(2, &[Q::new(1, 2)]).unwrap();
        let p = qplane::<Gaussian>(&theta, 2).unwrap();
        assert!(p.report.pass, "{}", p.report.render());
    }

    #[test]
    fn exact_backend_refuses_irrational_phase() {
        let theta = Theta::from_upper(2, &[Q::new(1, 3)]).unwrap();
        assert!(matches!(qplane::<Gaussian>(&theta, 1), Err(Error::BackendUnavailable(_))));
    }
}
