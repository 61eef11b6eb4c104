//! Unital associative algebras given by structure constants, plus involutions,
//! gradings and differentials on them.

use crate::error::{Error, Result};
use crate::expr::{check_equal, Expr};
use crate::linear::{LinearMap, SparseVec};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::space::{Signature, Space};

#[derive(Clone, Debug)]
pub struct Algebra<S> {
    pub name: String,
    pub sig: Signature,
    /// `A⊗A → A`.
    pub mult: LinearMap<S>,
    /// `k → A`.
    pub unit: LinearMap<S>,
}

impl<S: Scalar> Algebra<S> {
    pub fn new(name: impl Into<String>, sig: Signature, mult: LinearMap<S>, unit: LinearMap<S>) -> Result<Self> {
        let n = sig.dim();
        if mult.dom_dim() != n * n || mult.cod_dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "multiplication must be {n}x{}, got {}x{}",
                n * n,
                mult.cod_dim(),
                mult.dom_dim()
            )));
        }
        if unit.dom_dim() != 1 || unit.cod_dim() != n {
            return Err(Error::DimensionMismatch(format!("unit must be a vector of length {n}")));
        }
        let mult = mult.with_signatures(sig.tensor(&sig), sig.clone())?;
        let unit = unit.with_signatures(Signature::ground(), sig.clone())?;
        Ok(Algebra { name: name.into(), sig, mult, unit })
    }

    /// Builds from a product table on basis pairs.
    pub fn from_table(
        name: impl Into<String>,
        space: Space,
        unit: &[S],
        mut table: impl FnMut(usize, usize) -> SparseVec<S>,
    ) -> Result<Self> {
        space.validate()?;
        let n = space.dim;
        let sig = Signature::of(space);
        let mult = LinearMap::from_fn(sig.tensor(&sig), sig.clone(), |c| table(c / n, c % n));
        let unit = LinearMap::from_vector(&sig, unit);
        Algebra::new(name, sig, mult, unit)
    }

    pub fn dim(&self) -> usize {
        self.sig.dim()
    }

    pub fn product(&self, a: usize, b: usize) -> SparseVec<S> {
        self.mult.column_vec(a * self.dim() + b)
    }

    pub fn unit_vector(&self) -> Vec<S> {
        self.unit.as_vector()
    }

    /// Index of the unit when it is a basis element.
    pub fn unit_basis_index(&self) -> Option<usize> {
        match self.unit.column_vec(0).as_slice() {
            [(i, s)] if s.is_one() => Some(*i),
            _ => None,
        }
    }

    pub fn mu(&self) -> Expr<S> {
        Expr::Map(self.mult.clone())
    }

    pub fn id(&self) -> Expr<S> {
        Expr::Id(self.dim())
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        let lhs = self.mu();
        let rhs = Expr::Compose(vec![self.mu(), Expr::flip(n, n)]);
        crate::expr::compare(&lhs, &rhs).map(|c| c.is_equal()).unwrap_or(false)
    }

    pub fn same_structure(&self, other: &Algebra<S>) -> bool {
        self.mult.same_as(&other.mult) && self.unit.same_as(&other.unit)
    }

    /// `A⊗A⊗A`.
    pub fn cube_sig(&self) -> Signature {
        Signature::tensor_all([&self.sig, &self.sig, &self.sig])
    }
}

/// Associativity and both unit laws.
pub fn check_algebra<S: Scalar>(a: &Algebra<S>) -> Report {
    let assoc = check_equal(
        "associativity",
        &Expr::Compose(vec![a.mu(), Expr::Tensor(vec![a.mu(), a.id()])]),
        &Expr::Compose(vec![a.mu(), Expr::Tensor(vec![a.id(), a.mu()])]),
        &a.cube_sig(),
        &a.sig,
    );
    let unit = Expr::Map(a.unit.clone());
    let left = check_equal(
        "left unit",
        &Expr::Compose(vec![a.mu(), Expr::Tensor(vec![unit.clone(), a.id()])]),
        &a.id(),
        &a.sig,
        &a.sig,
    );
    let right = check_equal(
        "right unit",
        &Expr::Compose(vec![a.mu(), Expr::Tensor(vec![a.id(), unit])]),
        &a.id(),
        &a.sig,
        &a.sig,
    );
    Report::all(format!("algebra {}", a.name), vec![assoc, left, right])
}

/// Checks `f∘μ_A = μ_X∘(f⊗f)` and `f(1) = 1`.
pub fn check_morphism<S: Scalar>(f: &LinearMap<S>, a: &Algebra<S>, x: &Algebra<S>) -> Result<Report> {
    if f.dom_dim() != a.dim() || f.cod_dim() != x.dim() {
        return Err(Error::DimensionMismatch(format!(
            "morphism {}x{} between algebras of dims {} and {}",
            f.cod_dim(),
            f.dom_dim(),
            a.dim(),
            x.dim()
        )));
    }
    let fe = Expr::Map(f.clone());
    let mult = check_equal(
        "multiplicative",
        &Expr::Compose(vec![fe.clone(), a.mu()]),
        &Expr::Compose(vec![x.mu(), Expr::Tensor(vec![fe.clone(), fe.clone()])]),
        &a.sig.tensor(&a.sig),
        &x.sig,
    );
    let unit = check_equal(
        "unital",
        &Expr::Compose(vec![fe, Expr::Map(a.unit.clone())]),
        &Expr::Map(x.unit.clone()),
        &Signature::ground(),
        &x.sig,
    );
    Ok(Report::all(format!("morphism {} -> {}", a.name, x.name), vec![mult, unit]))
}

/// `j(x) = M·x̄` when conjugating, `M·x` otherwise.
#[derive(Clone, Debug)]
pub struct Involution<S> {
    pub algebra: Algebra<S>,
    pub matrix: LinearMap<S>,
    pub conjugating: bool,
}

impl<S: Scalar> Involution<S> {
    pub fn new(algebra: Algebra<S>, matrix: LinearMap<S>, conjugating: bool) -> Self {
        Involution { algebra, matrix, conjugating }
    }

    /// Applies `j` to an arbitrary map into the algebra: `j∘f`.
    pub fn after(&self, f: &LinearMap<S>) -> Result<LinearMap<S>> {
        let f = if self.conjugating { f.conj() } else { f.clone() };
        self.matrix.compose(&f)
    }
}

pub fn check_involution<S: Scalar>(j: &Involution<S>) -> Report {
    let a = &j.algebra;
    let m = Expr::Map(j.matrix.clone());
    let inner = if j.conjugating { j.matrix.conj() } else { j.matrix.clone() };
    let square = check_equal(
        "involutive",
        &Expr::Compose(vec![m.clone(), Expr::Map(inner)]),
        &a.id(),
        &a.sig,
        &a.sig,
    );
    let unit_img = match j.after(&a.unit) {
        Ok(u) => u,
        Err(e) => return Report::fail("involution", e.to_string()),
    };
    let unit = check_equal("fixes unit", &Expr::Map(unit_img), &Expr::Map(a.unit.clone()), &Signature::ground(), &a.sig);
    let mult = if j.conjugating { a.mult.conj() } else { a.mult.clone() };
    let anti = check_equal(
        "anti-multiplicative",
        &Expr::Compose(vec![m.clone(), Expr::Map(mult)]),
        &Expr::Compose(vec![a.mu(), Expr::Tensor(vec![m.clone(), m]), Expr::flip(a.dim(), a.dim())]),
        &a.sig.tensor(&a.sig),
        &a.sig,
    );
    Report::all(format!("involution on {}", a.name), vec![square, unit, anti])
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra<S> {
    pub algebra: Algebra<S>,
    pub degrees: Vec<i32>,
}

impl<S: Scalar> GradedAlgebra<S> {
    pub fn new(algebra: Algebra<S>, degrees: Vec<i32>) -> Result<Self> {
        if degrees.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} degrees for an algebra of dim {}",
                degrees.len(),
                algebra.dim()
            )));
        }
        Ok(GradedAlgebra { algebra, degrees })
    }

    /// Diagonal `(−1)^deg`.
    pub fn epsilon(&self) -> LinearMap<S> {
        let v: Vec<S> = self.degrees.iter().map(|d| if d % 2 == 0 { S::one() } else { -S::one() }).collect();
        LinearMap::diagonal(&self.algebra.sig, &v)
    }
}

/// Degree additivity of the product and degree zero for the unit.
pub fn check_graded<S: Scalar>(g: &GradedAlgebra<S>) -> Report {
    let a = &g.algebra;
    let n = a.dim();
    let sq = a.sig.tensor(&a.sig);
    let mut bad = Report::pass("degree additive");
    for (row, col, v) in a.mult.entries() {
        let (x, y) = (col / n, col % n);
        if g.degrees[row] != g.degrees[x] + g.degrees[y] {
            bad = Report::fail(
                "degree additive",
                format!("{} has degree {} but lands in {}", sq.describe(col), g.degrees[x] + g.degrees[y], a.sig.describe(row)),
            )
            .with_note(format!("coefficient {v} at {}", a.sig.describe(row)));
            break;
        }
    }
    let unit = match a.unit.column_vec(0).iter().find(|(i, _)| g.degrees[*i] != 0) {
        None => Report::pass("unit degree zero"),
        Some((i, _)) => Report::fail("unit degree zero", format!("unit has a component on {}", a.sig.describe(*i))),
    };
    Report::all(format!("grading on {}", a.name), vec![bad, unit])
}

#[derive(Clone, Debug)]
pub struct DGAlgebra<S> {
    pub graded: GradedAlgebra<S>,
    pub d: LinearMap<S>,
}

impl<S: Scalar> DGAlgebra<S> {
    pub fn algebra(&self) -> &Algebra<S> {
        &self.graded.algebra
    }

    pub fn degrees(&self) -> &[i32] {
        &self.graded.degrees
    }

    pub fn epsilon(&self) -> LinearMap<S> {
        self.graded.epsilon()
    }
}

/// `d² = 0`, `d` of degree one, and the graded Leibniz rule on basis pairs.
pub fn check_dg<S: Scalar>(dg: &DGAlgebra<S>) -> Report {
    let a = dg.algebra();
    let d = Expr::Map(dg.d.clone());
    let squared = check_equal(
        "d squared",
        &Expr::Compose(vec![d.clone(), d.clone()]),
        &Expr::Map(LinearMap::zero(a.sig.clone(), a.sig.clone())),
        &a.sig,
        &a.sig,
    );
    let degree = match dg.d.entries().find(|(r, c, _)| dg.degrees()[*r] != dg.degrees()[*c] + 1) {
        None => Report::pass("degree one"),
        Some((r, c, _)) => Report::fail(
            "degree one",
            format!("d sends {} to {}", a.sig.describe(c), a.sig.describe(r)),
        ),
    };
    let eps = Expr::Map(dg.epsilon());
    let leibniz = check_equal(
        "graded Leibniz",
        &Expr::Compose(vec![d.clone(), a.mu()]),
        &Expr::Sum(vec![
            Expr::Compose(vec![a.mu(), Expr::Tensor(vec![d.clone(), a.id()])]),
            Expr::Compose(vec![a.mu(), Expr::Tensor(vec![eps, d])]),
        ]),
        &a.sig.tensor(&a.sig),
        &a.sig,
    );
    Report::all(format!("differential on {}", a.name), vec![check_graded(&dg.graded), squared, degree, leibniz])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn z2() -> Algebra<Q> {
        let space = Space::labelled("kZ2", vec!["e".into(), "g".into()]).unwrap();
        Algebra::from_table("kZ2", space, &[Q::from_int(1), Q::from_int(0)], |a, b| vec![((a + b) % 2, Q::from_int(1))])
            .unwrap()
    }

    #[test]
    fn group_algebra_passes() {
        assert!(check_algebra(&z2()).pass);
        assert!(z2().is_commutative());
    }

    #[test]
    fn perturbed_constant_names_its_triple() {
        let a = z2();
        let mut t: Vec<_> = a.mult.entries().map(|(r, c, v)| (r, c, *v)).collect();
        t[1].2 += Q::from_int(1);
        let bad = Algebra { mult: LinearMap::from_triplets(a.mult.domain().clone(), a.sig.clone(), t).unwrap(), ..a };
        let r = check_algebra(&bad);
        assert!(!r.pass);
        assert_eq!(r.witness.unwrap().input, "e⊗e⊗g");
    }

    #[test]
    fn zero_differential_is_dg() {
        let a = z2();
        let g = GradedAlgebra::new(a.clone(), vec![0, 0]).unwrap();
        let dg = DGAlgebra { graded: g, d: LinearMap::zero(a.sig.clone(), a.sig.clone()) };
        assert!(check_dg(&dg).pass);
    }

    #[test]
    fn identity_involution_on_commutative_real_algebra() {
        let a = z2();
        let j = Involution::new(a.clone(), LinearMap::identity(&a.sig), true);
        assert!(check_involution(&j).pass);
        assert!(check_morphism(&LinearMap::identity(&a.sig), &a, &a).unwrap().pass);
    }
}
