//! Workbench JSON encoding of spaces, maps, algebras and derived structures.
//!
//! Maps are stored as `[row, col, scalar]` triples in the canonical flat
//! index order of their signatures. Spaces may be referenced by id from a
//! shared table or written inline.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::algebra::{Algebra, DGAlgebra, GradedAlgebra, Involution};
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::linear::LinearMap;
use crate::report::Report;
use crate::scalar::Scalar;
use crate::space::{Signature, Space};
use crate::twist::TwistingMap;

/// Named spaces available to references inside a document.
pub type SpaceTable = BTreeMap<String, Space>;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn space_json(s: &Space) -> Value {
    serde_json::to_value(s).expect("spaces serialize")
}

pub fn space_from_json(v: &Value) -> Result<Space> {
    let s: Space = serde_json::from_value(v.clone()).map_err(|e| parse_err(format!("space: {e}")))?;
    s.validate()?;
    Ok(s)
}

pub fn signature_json(sig: &Signature) -> Value {
    Value::Array(sig.factors().iter().map(|s| space_json(s)).collect())
}

/// A space id, an inline space, or an array of either; `[]` is the ground field.
pub fn signature_from_json(v: &Value, spaces: &SpaceTable) -> Result<Signature> {
    match v {
        Value::String(id) => {
            let s = spaces.get(id).ok_or_else(|| Error::UnknownObject(id.clone()))?;
            Ok(Signature::of(s.clone()))
        }
        Value::Object(_) => Ok(Signature::of(space_from_json(v)?)),
        Value::Array(parts) => {
            let sigs = parts.iter().map(|p| signature_from_json(p, spaces)).collect::<Result<Vec<_>>>()?;
            Ok(Signature::tensor_all(sigs.iter()))
        }
        other => Err(parse_err(format!("expected a space reference, got {other}"))),
    }
}

pub fn entries_json<S: Scalar>(m: &LinearMap<S>) -> Value {
    Value::Array(m.entries().map(|(r, c, s)| json!([r, c, s.to_json()])).collect())
}

pub fn entries_from_json<S: Scalar>(v: &Value, domain: &Signature, codomain: &Signature) -> Result<LinearMap<S>> {
    let arr = v.as_array().ok_or_else(|| parse_err("entries must be an array of [row, col, scalar]"))?;
    let mut triplets = Vec::with_capacity(arr.len());
    for e in arr {
        let t = e.as_array().filter(|t| t.len() == 3).ok_or_else(|| parse_err(format!("bad entry {e}")))?;
        let idx = |x: &Value| x.as_u64().map(|u| u as usize).ok_or_else(|| parse_err(format!("bad index in {e}")));
        let (r, c) = (idx(&t[0])?, idx(&t[1])?);
        if r >= codomain.dim() || c >= domain.dim() {
            return Err(Error::DimensionMismatch(format!("entry {e} outside {} x {}", codomain.dim(), domain.dim())));
        }
        triplets.push((r, c, S::from_json(&t[2])?));
    }
    LinearMap::from_triplets(domain.clone(), codomain.clone(), triplets)
}

pub fn map_json<S: Scalar>(m: &LinearMap<S>) -> Value {
    json!({
        "domain": signature_json(m.domain()),
        "codomain": signature_json(m.codomain()),
        "entries": entries_json(m),
    })
}

pub fn map_from_json<S: Scalar>(v: &Value, spaces: &SpaceTable) -> Result<LinearMap<S>> {
    let dom = signature_from_json(field(v, "domain")?, spaces)?;
    let cod = signature_from_json(field(v, "codomain")?, spaces)?;
    entries_from_json(field(v, "entries")?, &dom, &cod)
}

pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field `{key}`")))
}

pub fn algebra_json<S: Scalar>(a: &Algebra<S>) -> Value {
    json!({
        "name": a.name,
        "space": signature_json(&a.sig),
        "mult_entries": entries_json(&a.mult),
        "unit": entries_json(&a.unit),
    })
}

pub fn algebra_from_json<S: Scalar>(v: &Value, spaces: &SpaceTable) -> Result<Algebra<S>> {
    let sig = signature_from_json(field(v, "space")?, spaces)?;
    let mult = entries_from_json(field(v, "mult_entries")?, &sig.tensor(&sig), &sig)?;
    let unit = entries_from_json(field(v, "unit")?, &Signature::ground(), &sig)?;
    let name = v.get("name").and_then(Value::as_str).unwrap_or("A");
    Algebra::new(name, sig, mult, unit)
}

pub fn graded_json<S: Scalar>(g: &GradedAlgebra<S>) -> Value {
    let mut v = algebra_json(&g.algebra);
    v["degrees"] = json!(g.degrees);
    v
}

pub fn dg_json<S: Scalar>(dg: &DGAlgebra<S>) -> Value {
    let mut v = graded_json(&dg.graded);
    v["differential"] = entries_json(&dg.d);
    v
}

pub fn dg_from_json<S: Scalar>(v: &Value, spaces: &SpaceTable) -> Result<DGAlgebra<S>> {
    let a = algebra_from_json(v, spaces)?;
    let degrees: Vec<i32> =
        serde_json::from_value(field(v, "degrees")?.clone()).map_err(|e| parse_err(format!("degrees: {e}")))?;
    let d = entries_from_json(field(v, "differential")?, &a.sig, &a.sig)?;
    Ok(DGAlgebra { graded: GradedAlgebra::new(a, degrees)?, d })
}

pub fn involution_json<S: Scalar>(j: &Involution<S>) -> Value {
    let mut v = algebra_json(&j.algebra);
    v["matrix"] = entries_json(&j.matrix);
    v["conjugating"] = json!(j.conjugating);
    v
}

pub fn twisting_json<S: Scalar>(r: &TwistingMap<S>) -> Value {
    json!({
        "algebra_A": algebra_json(&r.a),
        "algebra_B": algebra_json(&r.b),
        "map_entries": entries_json(&r.map),
    })
}

pub fn hopf_json<S: Scalar>(h: &HopfAlgebra<S>) -> Value {
    let mut v = algebra_json(&h.algebra);
    v["comult"] = entries_json(&h.comult);
    v["counit"] = entries_json(&h.counit);
    if let Some(s) = &h.antipode {
        v["antipode"] = entries_json(s);
    }
    v
}

pub fn hopf_from_json<S: Scalar>(v: &Value, spaces: &SpaceTable) -> Result<HopfAlgebra<S>> {
    let a: Algebra<S> = algebra_from_json(v, spaces)?;
    let sig = a.sig.clone();
    let comult = entries_from_json(field(v, "comult")?, &sig, &sig.tensor(&sig))?;
    let counit = entries_from_json(field(v, "counit")?, &sig, &Signature::ground())?;
    let antipode = v.get("antipode").map(|s| entries_from_json(s, &sig, &sig)).transpose()?;
    HopfAlgebra::new(a, comult, counit, antipode)
}

pub fn report_json(r: &Report) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

/// Output file for a built algebra together with how it was obtained.
pub fn with_provenance(mut object: Value, construction: &str, inputs: Value, report: &Report) -> Value {
    let mut prov = Map::new();
    prov.insert("construction".into(), json!(construction));
    prov.insert("inputs".into(), inputs);
    prov.insert("verified".into(), json!(report.pass));
    object["provenance"] = Value::Object(prov);
    object
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::HopfAlgebra;
    use crate::scalar::{Gaussian, Q};

    #[test]
    fn algebra_round_trip_is_lossless() {
        let h = HopfAlgebra::<Q>::sweedler().unwrap();
        let v = hopf_json(&h);
        let back: HopfAlgebra<Q> = hopf_from_json(&v, &SpaceTable::new()).unwrap();
        assert!(back.algebra.mult.same_as(&h.algebra.mult));
        assert!(back.comult.same_as(&h.comult));
        assert!(back.antipode.unwrap().same_as(h.antipode.as_ref().unwrap()));
        assert_eq!(back.algebra.sig, h.algebra.sig);
    }

    #[test]
    fn gaussian_scalars_round_trip() {
        let sig = Signature::of(Space::new("V", 2));
        let m = LinearMap::from_triplets(sig.clone(), sig.clone(), vec![(0, 1, Gaussian::i()), (1, 0, Gaussian::from_ratio(-3, 4))]).unwrap();
        let back: LinearMap<Gaussian> = map_from_json(&map_json(&m), &SpaceTable::new()).unwrap();
        assert!(back.same_as(&m));
    }

    #[test]
    fn references_resolve_and_bad_entries_are_rejected() {
        let mut t = SpaceTable::new();
        t.insert("V".into(), Space::new("V", 2));
        let sig = signature_from_json(&json!(["V", "V"]), &t).unwrap();
        assert_eq!(sig.dim(), 4);
        assert!(matches!(signature_from_json(&json!("W"), &t), Err(Error::UnknownObject(_))));
        let bad = entries_from_json::<Q>(&json!([[5, 0, {"num": 1}]]), &sig, &sig);
        assert!(matches!(bad, Err(Error::DimensionMismatch(_))));
    }
}
