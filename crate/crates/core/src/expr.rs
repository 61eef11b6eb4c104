//! Lazy map expressions evaluated one basis column at a time.
//!
//! Identities such as `R∘(B⊗μ_A) = (μ_A⊗B)∘(A⊗R)∘(R⊗A)` are compared without
//! materializing the large intermediate tensor maps. Only columns in the
//! support of the innermost factors are visited.

use crate::error::{Error, Result};
use crate::linear::{canonicalize, ColumnBuilder, LinearMap, SparseVec};
use crate::report::{witness_limit, Report, Witness};
use crate::scalar::Scalar;
use crate::space::{decode, encode, Signature};

#[derive(Clone, Debug)]
pub enum Expr<S> {
    Map(LinearMap<S>),
    Id(usize),
    /// Output factor `i` is input factor `perm[i]`.
    Perm { dims: Vec<usize>, perm: Vec<usize> },
    Tensor(Vec<Expr<S>>),
    /// `[f, g, h]` is `f∘g∘h`.
    Compose(Vec<Expr<S>>),
    Sum(Vec<Expr<S>>),
    Scale(S, Box<Expr<S>>),
}

enum Support {
    All(usize),
    List(Vec<usize>),
}

impl Support {
    fn into_vec(self) -> Vec<usize> {
        match self {
            Support::All(n) => (0..n).collect(),
            Support::List(v) => v,
        }
    }
}

fn union(a: Vec<usize>, b: Vec<usize>) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let x = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(_), Some(&y)) => {
                j += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        out.push(x);
    }
    out
}

impl<S: Scalar> Expr<S> {
    pub fn map(m: &LinearMap<S>) -> Self {
        Expr::Map(m.clone())
    }

    pub fn id(sig: &Signature) -> Self {
        Expr::Id(sig.dim())
    }

    pub fn tensor(parts: Vec<Expr<S>>) -> Self {
        Expr::Tensor(parts)
    }

    pub fn compose(parts: Vec<Expr<S>>) -> Self {
        Expr::Compose(parts)
    }

    pub fn perm(dims: Vec<usize>, perm: Vec<usize>) -> Self {
        Expr::Perm { dims, perm }
    }

    pub fn flip(a: usize, b: usize) -> Self {
        Expr::Perm { dims: vec![a, b], perm: vec![1, 0] }
    }

    pub fn dom(&self) -> usize {
        match self {
            Expr::Map(m) => m.dom_dim(),
            Expr::Id(n) => *n,
            Expr::Perm { dims, .. } => dims.iter().product(),
            Expr::Tensor(v) => v.iter().map(Expr::dom).product(),
            Expr::Compose(v) => v.last().map_or(1, Expr::dom),
            Expr::Sum(v) => v.first().map_or(1, Expr::dom),
            Expr::Scale(_, e) => e.dom(),
        }
    }

    pub fn cod(&self) -> usize {
        match self {
            Expr::Map(m) => m.cod_dim(),
            Expr::Id(n) => *n,
            Expr::Perm { dims, .. } => dims.iter().product(),
            Expr::Tensor(v) => v.iter().map(Expr::cod).product(),
            Expr::Compose(v) => v.first().map_or(1, Expr::cod),
            Expr::Sum(v) => v.first().map_or(1, Expr::cod),
            Expr::Scale(_, e) => e.cod(),
        }
    }

    /// Checks that every composition and sum is well-shaped.
    pub fn validate(&self) -> Result<()> {
        match self {
            Expr::Map(_) | Expr::Id(_) => Ok(()),
            Expr::Perm { dims, perm } => {
                let mut sorted = perm.clone();
                sorted.sort_unstable();
                if sorted != (0..dims.len()).collect::<Vec<_>>() {
                    return Err(Error::DimensionMismatch("invalid factor permutation".into()));
                }
                Ok(())
            }
            Expr::Tensor(v) => v.iter().try_for_each(Expr::validate),
            Expr::Compose(v) => {
                v.iter().try_for_each(Expr::validate)?;
                for w in v.windows(2) {
                    if w[0].dom() != w[1].cod() {
                        return Err(Error::DimensionMismatch(format!(
                            "composition: outer domain {} vs inner codomain {}",
                            w[0].dom(),
                            w[1].cod()
                        )));
                    }
                }
                Ok(())
            }
            Expr::Sum(v) => {
                v.iter().try_for_each(Expr::validate)?;
                if v.iter().any(|e| e.dom() != v[0].dom() || e.cod() != v[0].cod()) {
                    return Err(Error::DimensionMismatch("sum of differently shaped maps".into()));
                }
                Ok(())
            }
            Expr::Scale(_, e) => e.validate(),
        }
    }

    fn support(&self) -> Support {
        match self {
            Expr::Map(m) => Support::List(m.nonzero_columns()),
            Expr::Id(_) | Expr::Perm { .. } => Support::All(self.dom()),
            Expr::Scale(_, e) => e.support(),
            Expr::Compose(v) => v.last().map_or(Support::All(1), Expr::support),
            Expr::Sum(v) => {
                let mut acc: Option<Vec<usize>> = None;
                for e in v {
                    match e.support() {
                        Support::All(n) => return Support::All(n),
                        Support::List(l) => acc = Some(match acc { None => l, Some(a) => union(a, l) }),
                    }
                }
                Support::List(acc.unwrap_or_default())
            }
            Expr::Tensor(v) => {
                let parts: Vec<Support> = v.iter().map(Expr::support).collect();
                if parts.iter().all(|p| matches!(p, Support::All(_))) {
                    return Support::All(self.dom());
                }
                let mut acc = vec![0usize];
                for (p, e) in parts.into_iter().zip(v) {
                    let d = e.dom();
                    let l = p.into_vec();
                    let mut next = Vec::with_capacity(acc.len() * l.len());
                    for &a in &acc {
                        next.extend(l.iter().map(|&x| a * d + x));
                    }
                    acc = next;
                }
                Support::List(acc)
            }
        }
    }

    /// Image of the basis vector `col`, canonical.
    pub fn apply(&self, col: usize) -> SparseVec<S> {
        match self {
            Expr::Map(m) => m.column_vec(col),
            Expr::Id(_) => vec![(col, S::one())],
            Expr::Perm { dims, perm } => {
                let mut t = vec![0; dims.len()];
                decode(col, dims, &mut t);
                let u: Vec<usize> = perm.iter().map(|&p| t[p]).collect();
                let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
                vec![(encode(&u, &out_dims), S::one())]
            }
            Expr::Scale(s, e) => {
                let mut v = e.apply(col);
                for x in v.iter_mut() {
                    x.1 = s.clone() * x.1.clone();
                }
                v.retain(|x| !x.1.is_zero());
                v
            }
            Expr::Sum(v) => {
                let mut out: SparseVec<S> = v.iter().flat_map(|e| e.apply(col)).collect();
                canonicalize(&mut out);
                out
            }
            Expr::Compose(v) => {
                let Some((last, rest)) = v.split_last() else {
                    return vec![(col, S::one())];
                };
                let mut cur = last.apply(col);
                for f in rest.iter().rev() {
                    if cur.is_empty() {
                        break;
                    }
                    cur = f.apply_vec(&cur);
                }
                cur
            }
            Expr::Tensor(v) => {
                let dims: Vec<usize> = v.iter().map(Expr::dom).collect();
                let mut sub = vec![0; dims.len()];
                decode(col, &dims, &mut sub);
                let mut acc: SparseVec<S> = vec![(0, S::one())];
                for (e, &c) in v.iter().zip(&sub) {
                    let w = e.apply(c);
                    if w.is_empty() {
                        return Vec::new();
                    }
                    let m = e.cod();
                    let mut next = Vec::with_capacity(acc.len() * w.len());
                    for (r1, s1) in &acc {
                        for (r2, s2) in &w {
                            next.push((r1 * m + r2, s1.clone() * s2.clone()));
                        }
                    }
                    acc = next;
                }
                acc.retain(|x| !x.1.is_zero());
                acc
            }
        }
    }

    pub fn apply_vec(&self, v: &[(usize, S)]) -> SparseVec<S> {
        if let Expr::Map(m) = self {
            return m.apply(v);
        }
        let mut out = Vec::new();
        for (c, s) in v {
            out.extend(self.apply(*c).into_iter().map(|(r, x)| (r, s.clone() * x)));
        }
        canonicalize(&mut out);
        out
    }

    pub fn materialize(&self, domain: Signature, codomain: Signature) -> Result<LinearMap<S>> {
        self.validate()?;
        if domain.dim() != self.dom() || codomain.dim() != self.cod() {
            return Err(Error::DimensionMismatch(format!(
                "materialize: expression is {}x{}, signatures give {}x{}",
                self.cod(),
                self.dom(),
                codomain.dim(),
                domain.dim()
            )));
        }
        let mut b = ColumnBuilder::new(domain, codomain);
        for c in self.support().into_vec() {
            let v = self.apply(c);
            if !v.is_empty() {
                b.push(c, &v);
            }
        }
        Ok(b.finish())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch<S> {
    pub col: usize,
    pub row: usize,
    pub lhs: S,
    pub rhs: S,
}

/// Outcome of a column-by-column comparison.
#[derive(Clone, Debug)]
pub struct Comparison<S> {
    pub mismatches: Vec<Mismatch<S>>,
    /// Number of differing columns.
    pub count: u64,
}

impl<S: Scalar> Comparison<S> {
    pub fn is_equal(&self) -> bool {
        self.count == 0
    }

    pub fn first(&self) -> Option<&Mismatch<S>> {
        self.mismatches.first()
    }

    pub fn report(&self, check: &str, domain: &Signature, codomain: &Signature) -> Report {
        let witnesses = self
            .mismatches
            .iter()
            .map(|m| Witness {
                input: describe(domain, m.col),
                index: m.col,
                output: describe(codomain, m.row),
                lhs: m.lhs.to_string(),
                rhs: m.rhs.to_string(),
            })
            .collect();
        Report::from_witnesses(check, self.count, witnesses)
    }
}

fn describe(sig: &Signature, i: usize) -> String {
    if sig.dim() > i {
        sig.describe(i)
    } else {
        format!("#{i}")
    }
}

fn first_difference<S: Scalar>(a: &[(usize, S)], b: &[(usize, S)]) -> Option<(usize, S, S)> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (row, x, y) = match (a.get(i), b.get(j)) {
            (Some((r, x)), Some((q, y))) if r == q => {
                i += 1;
                j += 1;
                (*r, x.clone(), y.clone())
            }
            (Some((r, x)), Some((q, _))) if r < q => {
                i += 1;
                (*r, x.clone(), S::zero())
            }
            (Some(_), Some((q, y))) | (None, Some((q, y))) => {
                j += 1;
                (*q, S::zero(), y.clone())
            }
            (Some((r, x)), None) => {
                i += 1;
                (*r, x.clone(), S::zero())
            }
            (None, None) => unreachable!(),
        };
        if !x.approx_eq(&y) {
            return Some((row, x, y));
        }
    }
    None
}

/// Compares two expressions on every basis column in canonical order.
pub fn compare<S: Scalar>(lhs: &Expr<S>, rhs: &Expr<S>) -> Result<Comparison<S>> {
    lhs.validate()?;
    rhs.validate()?;
    if lhs.dom() != rhs.dom() || lhs.cod() != rhs.cod() {
        return Err(Error::DimensionMismatch(format!(
            "equality of {}x{} and {}x{} maps",
            lhs.cod(),
            lhs.dom(),
            rhs.cod(),
            rhs.dom()
        )));
    }
    let cols = match (lhs.support(), rhs.support()) {
        (Support::All(n), _) | (_, Support::All(n)) => (0..n).collect(),
        (Support::List(a), Support::List(b)) => union(a, b),
    };
    let limit = witness_limit();
    let mut out = Comparison { mismatches: Vec::new(), count: 0 };
    for c in cols {
        let (a, b) = (lhs.apply(c), rhs.apply(c));
        if let Some((row, x, y)) = first_difference(&a, &b) {
            out.count += 1;
            if out.mismatches.len() < limit {
                out.mismatches.push(Mismatch { col: c, row, lhs: x, rhs: y });
            }
        }
    }
    Ok(out)
}

/// Compares and packages the result; shape errors become failing reports.
pub fn check_equal<S: Scalar>(
    check: &str,
    lhs: &Expr<S>,
    rhs: &Expr<S>,
    domain: &Signature,
    codomain: &Signature,
) -> Report {
    match compare(lhs, rhs) {
        Ok(c) => c.report(check, domain, codomain),
        Err(e) => Report::fail(check, e.to_string()),
    }
}

/// Builds a composite by acting on positions of a row of tensor wires.
///
/// Used to turn leg-notation formulas into explicit compositions.
#[derive(Clone, Debug)]
pub struct Wiring<S> {
    dims: Vec<usize>,
    steps: Vec<Expr<S>>,
}

impl<S: Scalar> Wiring<S> {
    pub fn new(dims: &[usize]) -> Self {
        Wiring { dims: dims.to_vec(), steps: Vec::new() }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Applies `f` to the `arity` wires starting at `pos`; `f` produces wires `out`.
    pub fn apply(mut self, pos: usize, arity: usize, f: Expr<S>, out: &[usize]) -> Self {
        assert!(pos + arity <= self.dims.len(), "wiring: position out of range");
        let pre: usize = self.dims[..pos].iter().product();
        let post: usize = self.dims[pos + arity..].iter().product();
        self.steps.push(Expr::Tensor(vec![Expr::Id(pre), f, Expr::Id(post)]));
        self.dims.splice(pos..pos + arity, out.iter().copied());
        self
    }

    pub fn map(self, pos: usize, arity: usize, f: &LinearMap<S>, out: &[usize]) -> Self {
        self.apply(pos, arity, Expr::Map(f.clone()), out)
    }

    /// New wire `i` is old wire `perm[i]`.
    pub fn permute(mut self, perm: &[usize]) -> Self {
        let new_dims = perm.iter().map(|&p| self.dims[p]).collect();
        self.steps.push(Expr::Perm { dims: self.dims.clone(), perm: perm.to_vec() });
        self.dims = new_dims;
        self
    }

    /// Swaps the adjacent wires at `pos` and `pos + 1`.
    pub fn swap(self, pos: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.dims.len()).collect();
        perm.swap(pos, pos + 1);
        self.permute(&perm)
    }

    pub fn build(self) -> Expr<S> {
        let mut steps = self.steps;
        steps.reverse();
        if steps.is_empty() {
            return Expr::Id(self.dims.iter().product());
        }
        Expr::Compose(steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;
    use crate::space::Space;

    fn sig(id: &str, n: usize) -> Signature {
        Signature::of(Space::new(id, n))
    }

    #[test]
    fn lazy_tensor_matches_kronecker() {
        let a = sig("A", 2);
        let b = sig("B", 3);
        let f = LinearMap::<Q>::from_triplets(a.clone(), a.clone(), vec![(0, 1, Q::from_int(2)), (1, 0, Q::from_int(3))])
            .unwrap();
        let g = LinearMap::<Q>::flip(&b, &a).compose(&LinearMap::flip(&a, &b)).unwrap();
        let g = g.scale(&Q::from_int(5));
        let ab = a.tensor(&b);
        let lazy = Expr::Tensor(vec![Expr::Map(f.clone()), Expr::Map(LinearMap::identity(&b))]);
        let eager = f.tensor(&LinearMap::identity(&b));
        assert!(lazy.materialize(ab.clone(), ab.clone()).unwrap().same_as(&eager));
        let _ = g;
    }

    #[test]
    fn perm_matches_flip() {
        let (a, b) = (sig("A", 2), sig("B", 3));
        let lazy = Expr::<Q>::flip(2, 3).materialize(a.tensor(&b), b.tensor(&a)).unwrap();
        assert!(lazy.same_as(&LinearMap::flip(&a, &b)));
    }

    #[test]
    fn wiring_swaps_compose_to_identity() {
        let e = Wiring::<Q>::new(&[2, 3, 4]).swap(0).swap(1).swap(1).swap(0).build();
        assert!(compare(&e, &Expr::Id(24)).unwrap().is_equal());
    }
}
