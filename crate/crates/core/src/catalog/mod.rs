//! Named constructors for the worked examples.

pub mod examples;
pub mod qplane;

use std::collections::BTreeMap;

use serde_json::{json, Value};

pub use examples::CATALOG;

use crate::algebra::check_algebra;
use crate::deform::scenarios::{
    dihedral_cocycle, inner_decoupling, kz2_in_sweedler, klein_cocycle, majid_scenario, one_sided_hexagon,
    sweedler_cocycle, sweedler_r_matrix, two_sided_cocycle, unbraiding, unbraiding_scenario, Scenario,
};
use crate::deform::{scenarios::cocycle_scenario, triple_invariance};
use crate::error::{Error, Result};
use crate::hopf::{
    diagonal_crossed_twisting, drinfeld_double, heisenberg_double, ns_chain, regular_action, CoactionData,
    HopfAlgebra, Side,
};
use crate::iterate::triple_product;
use crate::lift::{dg_lift, dg_lift2};
use crate::report::Report;
use crate::scalar::{Scalar, Q};
use crate::serial::{algebra_json, dg_json};
use crate::twist::twisted_product;

/// Deformation scenarios, addressable alongside [`CATALOG`].
pub const SCENARIOS: &[(&str, &str)] = &[
    ("cocycle-deformation", "A_{F^-1} # H_F vs A # H for A = H*; param hopf (klein, kD8, H4)"),
    ("braided-dual", "H* deformed inside D(H) by a triangular r; fixed to H4"),
    ("inner-decoupling", "A # kZ2 vs A (x) kZ2 for the inner action through kZ2 -> H4"),
    ("unbraiding", "B (x)_R C vs B (x) C for right module algebras over triangular H4"),
    ("two-sided-deformation", "both ends of H* # H # H* deformed by a cocycle; param hopf (klein, kD8)"),
    ("one-sided-hexagon", "left end deformed, right datum trivial; param hopf (default kD8)"),
];

/// `key=value` parameters of a catalog entry.
pub type Params = BTreeMap<String, String>;

pub fn parse_params<'a>(args: impl IntoIterator<Item = &'a str>) -> Result<Params> {
    let mut p = Params::new();
    for a in args {
        let (k, v) = a.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got `{a}`")))?;
        p.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(p)
}

fn param_u32(p: &Params, key: &str, default: u32) -> Result<u32> {
    p.get(key).map_or(Ok(default), |v| v.parse().map_err(|_| Error::Parse(format!("`{key}` must be a non-negative integer"))))
}

fn param_i64(p: &Params, key: &str, default: i64) -> Result<i64> {
    p.get(key).map_or(Ok(default), |v| v.parse().map_err(|_| Error::Parse(format!("`{key}` must be an integer"))))
}

fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d): (i64, i64) = (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?);
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Upper-triangle angles in units of π, comma separated; one value fills the triangle.
pub fn param_theta(p: &Params, n: usize) -> Result<qplane::Theta> {
    let raw = p.get("theta").map_or("1/2", String::as_str);
    let vals = raw.split(',').map(parse_q).collect::<Result<Vec<_>>>()?;
    let need = n * (n - 1) / 2;
    let upper = if vals.len() == 1 { vec![vals[0]; need] } else { vals };
    qplane::Theta::from_upper(n, &upper)
}

/// `kZn`, `klein`, `H4`, `kD8` and their aliases.
pub fn hopf_by_name<S: Scalar>(name: &str) -> Result<HopfAlgebra<S>> {
    match name {
        "klein" | "kZ2xZ2" => HopfAlgebra::klein(),
        "H4" | "sweedler" => HopfAlgebra::sweedler(),
        "kD8" | "dihedral" => HopfAlgebra::dihedral(4),
        other => match other.strip_prefix("kZ").and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if n >= 1 => HopfAlgebra::cyclic(n),
            _ => Err(Error::UnknownObject(format!("hopf algebra `{other}`"))),
        },
    }
}

fn cocycle_for<S: Scalar>(name: &str) -> Result<Vec<S>> {
    match name {
        "klein" | "kZ2xZ2" => Ok(klein_cocycle()),
        "kD8" | "dihedral" => Ok(dihedral_cocycle()),
        "H4" | "sweedler" => Ok(sweedler_cocycle()),
        other => Err(Error::UnknownObject(format!("no catalog cocycle on `{other}`"))),
    }
}

/// Verification outcome and, when it passed, the constructed object.
#[derive(Clone, Debug)]
pub struct Built {
    pub construction: String,
    pub params: Params,
    pub report: Report,
    pub object: Option<Value>,
}

impl Built {
    fn new(name: &str, params: &Params, report: Report, object: impl FnOnce() -> Result<Value>) -> Result<Self> {
        let object = if report.pass { Some(object()?) } else { None };
        Ok(Built { construction: name.to_string(), params: params.clone(), report, object })
    }

    pub fn inputs(&self) -> Value {
        json!(self.params)
    }
}

fn scenario_built<S: Scalar>(name: &str, p: &Params, s: Result<Scenario<S>>) -> Result<Built> {
    match s {
        Ok(s) => {
            let prod = twisted_product(&s.invariance.twist)?;
            Built::new(name, p, s.report, || Ok(algebra_json(&prod.algebra)))
        }
        Err(e) => failure(name, p, e),
    }
}

/// Mathematical failures become failing reports; input errors propagate.
fn failure(name: &str, p: &Params, e: Error) -> Result<Built> {
    if e.is_input_error() {
        return Err(e);
    }
    let report = e.report().cloned().unwrap_or_else(|| Report::fail(name, e.to_string()));
    Ok(Built { construction: name.to_string(), params: p.clone(), report, object: None })
}

/// Builds and verifies a catalog entry or deformation scenario by name.
pub fn build<S: Scalar>(name: &str, p: &Params) -> Result<Built> {
    let hopf = |default: &str| p.get("hopf").map_or(default.to_string(), Clone::clone);
    match name {
        "qplane" => {
            let n = param_u32(p, "n", 2)? as usize;
            let d = param_u32(p, "D", 1)?;
            match qplane::qplane::<S>(&param_theta(p, n)?, d) {
                Ok(q) => Built::new(name, p, q.report.clone(), || Ok(algebra_json(&q.product.algebra))),
                Err(e) => failure(name, p, e),
            }
        }
        "qplane-forms" => {
            let n = param_u32(p, "n", 2)? as usize;
            let d = param_u32(p, "D", 1)?;
            let f = qplane::qplane_forms::<S>(&param_theta(p, n)?, d)?;
            let fam = &f.family;
            let res = match n {
                2 => dg_lift2(&f.factors[0], &f.factors[1], fam.map(0, 1)),
                3 => dg_lift(&f.factors[0], &f.factors[1], &f.factors[2], fam.map(0, 1), fam.map(1, 2), fam.map(0, 2)),
                _ => return Err(Error::Parse("qplane-forms supports n = 2 or 3".into())),
            };
            match res {
                Ok((dg, rep)) => Built::new(name, p, rep, || Ok(dg_json(&dg))),
                Err(e) => failure(name, p, e),
            }
        }
        "ns-chain" => {
            let h = hopf_by_name::<S>(&hopf("kZ2"))?;
            let (n, m) = (param_i64(p, "n", 0)?, param_i64(p, "m", 2)?);
            match ns_chain(&h, n, m) {
                Ok(c) => {
                    let rep = Report::all(format!("chain A[{n},{m}] over {}", h.name()), vec![c.family.verify(), c.product.report.clone()]);
                    Built::new(name, p, rep, || Ok(algebra_json(&c.product.algebra)))
                }
                Err(e) => failure(name, p, e),
            }
        }
        "drinfeld-double" | "heisenberg-double" => {
            let h = hopf_by_name::<S>(&hopf("kZ2"))?;
            let d = if name == "drinfeld-double" { drinfeld_double(&h) } else { heisenberg_double(&h) };
            match d {
                Ok(d) => Built::new(name, p, d.report.clone(), || Ok(algebra_json(&d.algebra))),
                Err(e) => failure(name, p, e),
            }
        }
        "diagonal-crossed" => {
            let h = hopf_by_name::<S>(&hopf("kZ2"))?;
            let left = regular_action(&h, Side::Left)?;
            let right = regular_action(&h, Side::Right)?;
            let t = diagonal_crossed_twisting(&left, &right, &CoactionData::regular(&h)?)?;
            match twisted_product(&t) {
                Ok(prod) => {
                    let rep = Report::all(format!("diagonal crossed product over {}", h.name()), vec![t.verification().clone(), check_algebra(&prod.algebra)]);
                    Built::new(name, p, rep, || Ok(algebra_json(&prod.algebra)))
                }
                Err(e) => failure(name, p, e),
            }
        }
        "two-sided-smash" => {
            let h = hopf_by_name::<S>(&hopf("kZ2"))?;
            match examples::two_sided_smash(&h) {
                Ok(s) => Built::new(name, p, s.triple.report.clone(), || Ok(algebra_json(&s.triple.algebra))),
                Err(e) => failure(name, p, e),
            }
        }
        "hexagon-counterexample" => {
            let h = hopf_by_name::<S>(&hopf("H4"))?;
            let rep = examples::hexagon_counterexample_report(&h)?;
            Built::new(name, p, rep, || {
                let [r1, r2, r3] = examples::hexagon_counterexample(&h)?;
                Ok(algebra_json(&triple_product(&r1, &r2, &r3)?.algebra))
            })
        }
        "split-counterexample" => {
            let h = hopf_by_name::<S>(&hopf("H4"))?;
            let ex = examples::split_counterexample(&h)?;
            Built::new(name, p, ex.report.clone(), || Ok(algebra_json(&twisted_product(&ex.t)?.algebra)))
        }
        "cocycle-deformation" => {
            let hn = hopf("klein");
            let h = hopf_by_name::<S>(&hn)?;
            scenario_built(name, p, cocycle_scenario(&h, &cocycle_for::<S>(&hn)?))
        }
        "braided-dual" => {
            let h = HopfAlgebra::<S>::sweedler()?;
            scenario_built(name, p, majid_scenario(&h, &sweedler_r_matrix()))
        }
        "inner-decoupling" => {
            let (h, a, u) = kz2_in_sweedler::<S>()?;
            scenario_built(name, p, inner_decoupling(&h, &a, &u))
        }
        "unbraiding" => {
            let h = HopfAlgebra::<S>::sweedler()?;
            let r = sweedler_r_matrix();
            scenario_built(name, p, unbraiding(&h, &r).and_then(|u| unbraiding_scenario(&u, &r)))
        }
        "two-sided-deformation" => {
            let hn = hopf("klein");
            let h = hopf_by_name::<S>(&hn)?;
            let (dl, dr, r3) = two_sided_cocycle(&h, &cocycle_for::<S>(&hn)?)?;
            match triple_invariance(&dl, &dr, &r3) {
                Ok(t) => Built::new(name, p, t.report.clone(), || {
                    let [a, b, c] = &t.maps;
                    Ok(algebra_json(&triple_product(a, b, c)?.algebra))
                }),
                Err(e) => failure(name, p, e),
            }
        }
        "one-sided-hexagon" => {
            let hn = hopf("kD8");
            let h = hopf_by_name::<S>(&hn)?;
            let rep = one_sided_hexagon(&h, &cocycle_for::<S>(&hn)?)?;
            Built::new(name, p, rep, || Ok(Value::Null))
        }
        other => Err(Error::UnknownObject(other.to_string())),
    }
}

/// Every addressable name with its description.
pub fn list() -> impl Iterator<Item = &'static (&'static str, &'static str)> {
    CATALOG.iter().chain(SCENARIOS.iter())
}
