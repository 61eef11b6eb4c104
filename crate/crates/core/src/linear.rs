//! Sparse linear maps between tensor products of based spaces.
//!
//! Storage is column-compressed: entries sorted by `(col, row)`, no zeros,
//! no duplicates. Rows index the codomain, columns the domain.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::space::{decode, encode, Signature};

pub type SparseVec<S> = Vec<(usize, S)>;

/// Sorts by index, sums duplicates and drops zeros.
pub fn canonicalize<S: Scalar>(v: &mut SparseVec<S>) {
    if v.len() > 1 {
        v.sort_by_key(|e| e.0);
        let mut w = 0;
        for r in 1..v.len() {
            if v[r].0 == v[w].0 {
                let add = v[r].1.clone();
                v[w].1 = v[w].1.clone() + add;
            } else {
                w += 1;
                v.swap(w, r);
            }
        }
        v.truncate(w + 1);
    }
    v.retain(|e| !e.1.is_zero());
}

struct MapData<S> {
    domain: Signature,
    codomain: Signature,
    col_ptr: Vec<usize>,
    rows: Vec<usize>,
    vals: Vec<S>,
}

/// Immutable and cheap to clone.
#[derive(Clone)]
pub struct LinearMap<S> {
    data: Arc<MapData<S>>,
}

impl<S> fmt::Debug for LinearMap<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap({} -> {}, nnz {})", self.data.domain, self.data.codomain, self.data.vals.len())
    }
}

/// Appends columns in increasing order.
pub struct ColumnBuilder<S> {
    domain: Signature,
    codomain: Signature,
    col_ptr: Vec<usize>,
    rows: Vec<usize>,
    vals: Vec<S>,
}

impl<S: Scalar> ColumnBuilder<S> {
    pub fn new(domain: Signature, codomain: Signature) -> Self {
        ColumnBuilder { domain, codomain, col_ptr: vec![0], rows: Vec::new(), vals: Vec::new() }
    }

    /// `v` must be canonical; `col` must exceed every column pushed so far.
    pub fn push(&mut self, col: usize, v: &[(usize, S)]) {
        debug_assert!(col + 1 >= self.col_ptr.len());
        while self.col_ptr.len() <= col {
            self.col_ptr.push(self.rows.len());
        }
        for (r, s) in v {
            self.rows.push(*r);
            self.vals.push(s.clone());
        }
        self.col_ptr.push(self.rows.len());
    }

    pub fn finish(mut self) -> LinearMap<S> {
        let n = self.domain.dim();
        while self.col_ptr.len() <= n {
            self.col_ptr.push(self.rows.len());
        }
        LinearMap {
            data: Arc::new(MapData {
                domain: self.domain,
                codomain: self.codomain,
                col_ptr: self.col_ptr,
                rows: self.rows,
                vals: self.vals,
            }),
        }
    }
}

impl<S: Scalar> LinearMap<S> {
    pub fn from_triplets(domain: Signature, codomain: Signature, mut t: Vec<(usize, usize, S)>) -> Result<Self> {
        let (nr, nc) = (codomain.dim(), domain.dim());
        if let Some(&(r, c, _)) = t.iter().find(|(r, c, _)| *r >= nr || *c >= nc) {
            return Err(Error::DimensionMismatch(format!("entry ({r},{c}) outside {nr}x{nc}")));
        }
        t.sort_by_key(|e| (e.1, e.0));
        let mut b = ColumnBuilder::new(domain, codomain);
        let mut i = 0;
        let mut col: SparseVec<S> = Vec::new();
        while i < t.len() {
            let c = t[i].1;
            col.clear();
            while i < t.len() && t[i].1 == c {
                col.push((t[i].0, t[i].2.clone()));
                i += 1;
            }
            canonicalize(&mut col);
            b.push(c, &col);
        }
        Ok(b.finish())
    }

    /// Builds column by column; `f` need not return canonical vectors.
    pub fn from_fn(domain: Signature, codomain: Signature, mut f: impl FnMut(usize) -> SparseVec<S>) -> Self {
        let n = domain.dim();
        let mut b = ColumnBuilder::new(domain, codomain);
        for c in 0..n {
            let mut v = f(c);
            canonicalize(&mut v);
            b.push(c, &v);
        }
        b.finish()
    }

    pub fn identity(sig: &Signature) -> Self {
        LinearMap::from_fn(sig.clone(), sig.clone(), |c| vec![(c, S::one())])
    }

    pub fn zero(domain: Signature, codomain: Signature) -> Self {
        ColumnBuilder::new(domain, codomain).finish()
    }

    pub fn diagonal(sig: &Signature, values: &[S]) -> Self {
        LinearMap::from_fn(sig.clone(), sig.clone(), |c| vec![(c, values[c].clone())])
    }

    /// τ: A⊗B → B⊗A.
    pub fn flip(a: &Signature, b: &Signature) -> Self {
        let (na, nb) = (a.dim(), b.dim());
        LinearMap::from_fn(a.tensor(b), b.tensor(a), |c| vec![((c % nb) * na + c / nb, S::one())])
    }

    /// Factor permutation: output factor `i` is input factor `perm[i]`.
    pub fn permutation(factors: &[Signature], perm: &[usize]) -> Self {
        let dims: Vec<usize> = factors.iter().map(Signature::dim).collect();
        let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
        let domain = Signature::tensor_all(factors);
        let codomain = Signature::tensor_all(perm.iter().map(|&p| &factors[p]));
        let mut t = vec![0; dims.len()];
        let mut u = vec![0; dims.len()];
        LinearMap::from_fn(domain, codomain, |c| {
            decode(c, &dims, &mut t);
            for (slot, &p) in u.iter_mut().zip(perm) {
                *slot = t[p];
            }
            vec![(encode(&u, &out_dims), S::one())]
        })
    }

    /// The map k → V sending 1 to `v`.
    pub fn from_vector(sig: &Signature, v: &[S]) -> Self {
        let col: SparseVec<S> = v.iter().cloned().enumerate().filter(|(_, s)| !s.is_zero()).collect();
        let mut b = ColumnBuilder::new(Signature::ground(), sig.clone());
        b.push(0, &col);
        b.finish()
    }

    /// The functional V → k with the given coefficients.
    pub fn covector(sig: &Signature, v: &[S]) -> Self {
        LinearMap::from_fn(sig.clone(), Signature::ground(), |c| vec![(0, v[c].clone())])
    }

    pub fn domain(&self) -> &Signature {
        &self.data.domain
    }

    pub fn codomain(&self) -> &Signature {
        &self.data.codomain
    }

    pub fn dom_dim(&self) -> usize {
        self.data.col_ptr.len() - 1
    }

    pub fn cod_dim(&self) -> usize {
        self.data.codomain.dim()
    }

    pub fn nnz(&self) -> usize {
        self.data.rows.len()
    }

    pub fn column(&self, c: usize) -> (&[usize], &[S]) {
        let d = &self.data;
        let (lo, hi) = (d.col_ptr[c], d.col_ptr[c + 1]);
        (&d.rows[lo..hi], &d.vals[lo..hi])
    }

    pub fn column_vec(&self, c: usize) -> SparseVec<S> {
        let (r, v) = self.column(c);
        r.iter().copied().zip(v.iter().cloned()).collect()
    }

    pub fn column_is_empty(&self, c: usize) -> bool {
        self.data.col_ptr[c] == self.data.col_ptr[c + 1]
    }

    pub fn get(&self, row: usize, col: usize) -> S {
        let (r, v) = self.column(col);
        match r.binary_search(&row) {
            Ok(i) => v[i].clone(),
            Err(_) => S::zero(),
        }
    }

    /// Entries `(row, col, value)` in canonical `(col, row)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> + '_ {
        (0..self.dom_dim()).flat_map(move |c| {
            let (r, v) = self.column(c);
            r.iter().zip(v).map(move |(&r, s)| (r, c, s))
        })
    }

    pub fn nonzero_columns(&self) -> Vec<usize> {
        (0..self.dom_dim()).filter(|&c| !self.column_is_empty(c)).collect()
    }

    /// Same entries with new signatures of equal total dimensions.
    pub fn with_signatures(&self, domain: Signature, codomain: Signature) -> Result<Self> {
        if domain.dim() != self.dom_dim() || codomain.dim() != self.cod_dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot relabel {}x{} as {}x{}",
                self.cod_dim(),
                self.dom_dim(),
                codomain.dim(),
                domain.dim()
            )));
        }
        if &domain == self.domain() && &codomain == self.codomain() {
            return Ok(self.clone());
        }
        let d = &self.data;
        Ok(LinearMap {
            data: Arc::new(MapData {
                domain,
                codomain,
                col_ptr: d.col_ptr.clone(),
                rows: d.rows.clone(),
                vals: d.vals.clone(),
            }),
        })
    }

    pub fn apply(&self, v: &[(usize, S)]) -> SparseVec<S> {
        let mut out = Vec::new();
        for (c, s) in v {
            let (r, vals) = self.column(*c);
            out.extend(r.iter().zip(vals).map(|(&r, x)| (r, s.clone() * x.clone())));
        }
        canonicalize(&mut out);
        out
    }

    pub fn apply_dense(&self, v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.cod_dim()];
        for (c, s) in v.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let (r, vals) = self.column(c);
            for (&r, x) in r.iter().zip(vals) {
                out[r] = out[r].clone() + s.clone() * x.clone();
            }
        }
        out
    }

    /// The image of 1 for a map out of the base field.
    pub fn as_vector(&self) -> Vec<S> {
        let mut out = vec![S::zero(); self.cod_dim()];
        if self.dom_dim() == 1 {
            for (r, _, s) in self.entries() {
                out[r] = s.clone();
            }
        }
        out
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &LinearMap<S>) -> Result<Self> {
        if g.cod_dim() != self.dom_dim() {
            return Err(Error::DimensionMismatch(format!(
                "compose: inner codomain {} ({}) vs outer domain {} ({})",
                g.codomain(),
                g.cod_dim(),
                self.domain(),
                self.dom_dim()
            )));
        }
        let mut b = ColumnBuilder::new(g.domain().clone(), self.codomain().clone());
        for c in 0..g.dom_dim() {
            if g.column_is_empty(c) {
                continue;
            }
            let col = self.apply(&g.column_vec(c));
            b.push(c, &col);
        }
        Ok(b.finish())
    }

    /// Kronecker product `self ⊗ g`.
    pub fn tensor(&self, g: &LinearMap<S>) -> Self {
        let (gn, gm) = (g.dom_dim(), g.cod_dim());
        let mut b = ColumnBuilder::new(self.domain().tensor(g.domain()), self.codomain().tensor(g.codomain()));
        let mut col = Vec::new();
        for cf in self.nonzero_columns() {
            let (fr, fv) = self.column(cf);
            for cg in 0..gn {
                let (gr, gv) = g.column(cg);
                if gr.is_empty() {
                    continue;
                }
                col.clear();
                for (&r1, s1) in fr.iter().zip(fv) {
                    for (&r2, s2) in gr.iter().zip(gv) {
                        col.push((r1 * gm + r2, s1.clone() * s2.clone()));
                    }
                }
                col.retain(|e| !e.1.is_zero());
                b.push(cf * gn + cg, &col);
            }
        }
        b.finish()
    }

    pub fn add(&self, g: &LinearMap<S>) -> Result<Self> {
        self.combine(g, S::one())
    }

    pub fn sub(&self, g: &LinearMap<S>) -> Result<Self> {
        self.combine(g, -S::one())
    }

    fn combine(&self, g: &LinearMap<S>, sign: S) -> Result<Self> {
        if g.dom_dim() != self.dom_dim() || g.cod_dim() != self.cod_dim() {
            return Err(Error::DimensionMismatch("sum of maps with different shapes".into()));
        }
        Ok(LinearMap::from_fn(self.domain().clone(), self.codomain().clone(), |c| {
            let mut v = self.column_vec(c);
            v.extend(g.column_vec(c).into_iter().map(|(r, s)| (r, sign.clone() * s)));
            v
        }))
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map_values(|x| s.clone() * x.clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map_values(|x| x.conj())
    }

    fn map_values(&self, f: impl Fn(&S) -> S) -> Self {
        LinearMap::from_fn(self.domain().clone(), self.codomain().clone(), |c| {
            let (r, v) = self.column(c);
            r.iter().zip(v).map(|(&r, x)| (r, f(x))).collect()
        })
    }

    pub fn transpose(&self) -> Self {
        let t = self.entries().map(|(r, c, s)| (c, r, s.clone())).collect();
        LinearMap::from_triplets(self.codomain().clone(), self.domain().clone(), t).expect("transpose stays in bounds")
    }

    /// Two-sided inverse; exact for exact backends.
    pub fn invert(&self) -> Result<Self> {
        let n = self.dom_dim();
        if n != self.cod_dim() {
            return Err(Error::NotInvertible);
        }
        if let Some(inv) = self.invert_monomial() {
            return Ok(inv);
        }
        // Dense Gauss-Jordan with partial pivoting on [M | I].
        let mut m: Vec<Vec<S>> = vec![vec![S::zero(); 2 * n]; n];
        for (r, c, s) in self.entries() {
            m[r][c] = s.clone();
        }
        for (i, row) in m.iter_mut().enumerate() {
            row[n + i] = S::one();
        }
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !m[r][col].is_zero())
                .max_by(|&a, &b| m[a][col].magnitude().total_cmp(&m[b][col].magnitude()))
                .ok_or(Error::NotInvertible)?;
            m.swap(col, pivot);
            let inv = m[col][col].inv().ok_or(Error::NotInvertible)?;
            for x in m[col].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            let prow = m[col].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    if !p.is_zero() {
                        *x = x.clone() - f.clone() * p.clone();
                    }
                }
            }
        }
        let t = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .filter(|&(r, c)| !m[r][n + c].is_zero())
            .map(|(r, c)| (r, c, m[r][n + c].clone()))
            .collect();
        LinearMap::from_triplets(self.codomain().clone(), self.domain().clone(), t)
    }

    /// Inverse of a scaled permutation matrix, if that is what `self` is.
    fn invert_monomial(&self) -> Option<Self> {
        let n = self.dom_dim();
        let mut seen = vec![false; n];
        let mut t = Vec::with_capacity(n);
        for c in 0..n {
            let (r, v) = self.column(c);
            if r.len() != 1 || std::mem::replace(&mut seen[r[0]], true) {
                return None;
            }
            t.push((c, r[0], v[0].inv()?));
        }
        LinearMap::from_triplets(self.codomain().clone(), self.domain().clone(), t).ok()
    }

    pub fn is_identity(&self) -> bool {
        self.dom_dim() == self.cod_dim()
            && (0..self.dom_dim()).all(|c| {
                let (r, v) = self.column(c);
                r == [c] && v[0].is_one()
            })
    }

    /// Entrywise equality (within ε on floats); `Err` on shape mismatch.
    pub fn equal(&self, g: &LinearMap<S>) -> Result<crate::expr::Comparison<S>> {
        crate::expr::compare(&crate::expr::Expr::Map(self.clone()), &crate::expr::Expr::Map(g.clone()))
    }

    pub fn same_as(&self, g: &LinearMap<S>) -> bool {
        self.equal(g).map(|c| c.is_equal()).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Gaussian, Q};
    use crate::space::Space;

    fn sig(id: &str, n: usize) -> Signature {
        Signature::of(Space::new(id, n))
    }

    #[test]
    fn flip_is_involutive() {
        let (a, b) = (sig("A", 2), sig("B", 3));
        let t = LinearMap::<Q>::flip(&a, &b);
        let back = LinearMap::<Q>::flip(&b, &a);
        assert!(back.compose(&t).unwrap().is_identity());
        assert!(t.compose(&back).unwrap().is_identity());
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let i = LinearMap::<Q>::identity(&sig("A", 2)).tensor(&LinearMap::identity(&sig("B", 3)));
        assert!(i.is_identity());
        assert_eq!(i.dom_dim(), 6);
    }

    #[test]
    fn dense_inverse_round_trips() {
        let a = sig("A", 3);
        let q = |n| Gaussian::from_int(n);
        let m = LinearMap::from_triplets(
            a.clone(),
            a.clone(),
            vec![(0, 0, q(2)), (0, 1, q(1)), (1, 1, Gaussian::i()), (2, 0, q(1)), (2, 2, q(-1))],
        )
        .unwrap();
        let inv = m.invert().unwrap();
        assert!(m.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&m).unwrap().is_identity());
    }

    #[test]
    fn singular_is_rejected() {
        let a = sig("A", 2);
        let m = LinearMap::from_triplets(a.clone(), a, vec![(0, 0, Q::from_int(1)), (0, 1, Q::from_int(1))]).unwrap();
        assert!(matches!(m.invert(), Err(Error::NotInvertible)));
    }

    #[test]
    fn equal_reports_witness() {
        let (a, b) = (sig("A", 2), sig("B", 2));
        let id = LinearMap::<Q>::identity(&a.tensor(&b));
        let t = LinearMap::<Q>::flip(&a, &b);
        let cmp = id.equal(&t).unwrap();
        assert!(!cmp.is_equal());
        assert_eq!(cmp.first().unwrap().col, 1);
    }

    #[test]
    fn compose_rejects_bad_shapes() {
        let f = LinearMap::<Q>::identity(&sig("A", 2));
        let g = LinearMap::<Q>::identity(&sig("B", 3));
        assert!(matches!(f.compose(&g), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn duplicate_triplets_sum() {
        let a = sig("A", 2);
        let m = LinearMap::from_triplets(a.clone(), a, vec![(0, 0, Q::from_int(1)), (0, 0, Q::from_int(-1))]).unwrap();
        assert_eq!(m.nnz(), 0);
    }
}
