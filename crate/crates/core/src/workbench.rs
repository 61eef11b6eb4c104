//! Workbench documents: named spaces and objects, checked or built by name.
//!
//! ```json
//! { "version": "1", "backend": "rational",
//!   "spaces": { "V": { "id": "V", "dim": 2 } },
//!   "objects": { "A": { "type": "algebra", "space": "V", "mult_entries": [...], "unit": [...] } } }
//! ```

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::{check_algebra, check_dg, Algebra};
use crate::catalog::{self, Built, Params};
use crate::deform::{invariance_left, invariance_right, LeftTwistDatum, RightTwistDatum};
use crate::error::{Error, Result};
use crate::hopf::{check_action, check_hopf, ActionData, HopfAlgebra, Side};
use crate::iterate::{check_hexagon, n_fold_product, triple_product, TwistFamily};
use crate::lift::{check_module, ModuleData};
use crate::report::Report;
use crate::scalar::{Backend, Scalar};
use crate::serial::{algebra_from_json, dg_from_json, entries_from_json, field, hopf_from_json, space_from_json, SpaceTable};
use crate::twist::{check_twisting, twisted_product, TwistingMap};

pub const SCHEMA_VERSION: &str = "1";

/// A parsed document; objects stay as JSON until a backend is chosen.
#[derive(Clone, Debug)]
pub struct Document {
    pub version: String,
    pub backend: Option<Backend>,
    pub epsilon: Option<f64>,
    pub spaces: SpaceTable,
    pub objects: BTreeMap<String, Value>,
    pub tasks: Vec<Task>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaskCommand {
    Check,
    Build,
}

/// One entry of `tasks`; `out` only applies to builds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Task {
    pub command: TaskCommand,
    pub object: String,
    pub out: Option<String>,
}

impl Task {
    fn from_json(v: &Value) -> Result<Self> {
        let command = match str_field(v, "command")? {
            "check" => TaskCommand::Check,
            "build" => TaskCommand::Build,
            c => return Err(Error::Parse(format!("unknown task command `{c}`"))),
        };
        let object = str_field(v, "object")?.to_string();
        let out = v.get("out").map(|o| o.as_str().map(str::to_string).ok_or_else(|| Error::Parse("`out` must be a string".into()))).transpose()?;
        if out.is_some() && command == TaskCommand::Check {
            return Err(Error::Parse("`out` is only meaningful for build tasks".into()));
        }
        Ok(Task { command, object, out })
    }
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        Document::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("document must be a JSON object".into()))?;
        let version = obj.get("version").and_then(Value::as_str).ok_or_else(|| Error::Parse("missing `version`".into()))?;
        if version != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported schema version `{version}`")));
        }
        let backend = obj.get("backend").or_else(|| obj.get("scalar_backend")).and_then(Value::as_str).map(str::parse).transpose()?;
        let epsilon = obj.get("epsilon").and_then(Value::as_f64);
        let mut spaces = SpaceTable::new();
        if let Some(s) = obj.get("spaces") {
            let s = s.as_object().ok_or_else(|| Error::Parse("`spaces` must be an object".into()))?;
            for (name, sv) in s {
                let mut sv = sv.clone();
                if sv.get("id").is_none() {
                    sv["id"] = json!(name);
                }
                spaces.insert(name.clone(), space_from_json(&sv)?);
            }
        }
        let objects = match obj.get("objects") {
            None => BTreeMap::new(),
            Some(Value::Object(o)) => o.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
            Some(_) => return Err(Error::Parse("`objects` must be an object".into())),
        };
        for (name, o) in &objects {
            if o.get("type").and_then(Value::as_str).is_none() {
                return Err(Error::Parse(format!("object `{name}` has no `type`")));
            }
        }
        let tasks = match obj.get("tasks") {
            None => Vec::new(),
            Some(Value::Array(ts)) => ts.iter().map(Task::from_json).collect::<Result<Vec<_>>>()?,
            Some(_) => return Err(Error::Parse("`tasks` must be an array".into())),
        };
        for t in &tasks {
            if !objects.contains_key(&t.object) {
                return Err(Error::UnknownObject(t.object.clone()));
            }
        }
        Ok(Document { version: version.into(), backend, epsilon, spaces, objects, tasks })
    }

    fn object(&self, name: &str) -> Result<&Value> {
        self.objects.get(name).ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    fn kind(&self, name: &str) -> Result<&str> {
        Ok(self.object(name)?["type"].as_str().unwrap_or_default())
    }
}

/// Objects of a document resolved over one scalar backend.
pub struct Resolver<'a, S> {
    doc: &'a Document,
    algebras: std::cell::RefCell<BTreeMap<String, Algebra<S>>>,
}

fn str_field<'v>(v: &'v Value, key: &str) -> Result<&'v str> {
    field(v, key)?.as_str().ok_or_else(|| Error::Parse(format!("`{key}` must be a string")))
}

impl<'a, S: Scalar> Resolver<'a, S> {
    pub fn new(doc: &'a Document) -> Self {
        Resolver { doc, algebras: Default::default() }
    }

    fn expect(&self, name: &str, kinds: &[&str]) -> Result<&'a Value> {
        let kind = self.doc.kind(name)?;
        if !kinds.contains(&kind) {
            return Err(Error::Parse(format!("`{name}` is a {kind}, expected {}", kinds.join(" or "))));
        }
        self.doc.object(name)
    }

    /// Algebras may also be named by the algebra of a Hopf object.
    pub fn algebra(&self, name: &str) -> Result<Algebra<S>> {
        if let Some(a) = self.algebras.borrow().get(name) {
            return Ok(a.clone());
        }
        let v = self.expect(name, &["algebra", "hopf"])?;
        let mut v = v.clone();
        if v.get("name").is_none() {
            v["name"] = json!(name);
        }
        let a = algebra_from_json(&v, &self.doc.spaces)?;
        self.algebras.borrow_mut().insert(name.to_string(), a.clone());
        Ok(a)
    }

    pub fn hopf(&self, name: &str) -> Result<HopfAlgebra<S>> {
        let v = self.expect(name, &["hopf"])?;
        let mut v = v.clone();
        if v.get("name").is_none() {
            v["name"] = json!(name);
        }
        hopf_from_json(&v, &self.doc.spaces)
    }

    pub fn twisting(&self, name: &str) -> Result<TwistingMap<S>> {
        let v = self.expect(name, &["twisting_map"])?;
        let a = self.algebra(str_field(v, "algebra_A")?)?;
        let b = self.algebra(str_field(v, "algebra_B")?)?;
        let map = entries_from_json(field(v, "map_entries")?, &b.sig.tensor(&a.sig), &a.sig.tensor(&b.sig))?;
        TwistingMap::new(&a, &b, map)
    }

    fn names(v: &Value, key: &str) -> Result<Vec<String>> {
        serde_json::from_value(field(v, key)?.clone()).map_err(|e| Error::Parse(format!("`{key}`: {e}")))
    }

    pub fn triple(&self, name: &str) -> Result<[TwistingMap<S>; 3]> {
        let v = self.expect(name, &["triple"])?;
        let maps = Self::names(v, "maps")?;
        if maps.len() != 3 {
            return Err(Error::Parse(format!("triple `{name}` needs three maps")));
        }
        Ok([self.twisting(&maps[0])?, self.twisting(&maps[1])?, self.twisting(&maps[2])?])
    }

    /// `maps` is keyed `"i,j"` for `i < j`.
    pub fn family(&self, name: &str) -> Result<TwistFamily<S>> {
        let v = self.expect(name, &["family"])?;
        let algebras = Self::names(v, "algebras")?.iter().map(|a| self.algebra(a)).collect::<Result<Vec<_>>>()?;
        let mut maps = BTreeMap::new();
        let mo = field(v, "maps")?.as_object().ok_or_else(|| Error::Parse("`maps` must be an object".into()))?;
        for (k, r) in mo {
            let (i, j) = k
                .split_once(',')
                .and_then(|(i, j)| Some((i.trim().parse::<usize>().ok()?, j.trim().parse::<usize>().ok()?)))
                .ok_or_else(|| Error::Parse(format!("bad family key `{k}`")))?;
            let r = r.as_str().ok_or_else(|| Error::Parse("family maps are referenced by name".into()))?;
            maps.insert((i, j), self.twisting(r)?);
        }
        TwistFamily::new(algebras, maps)
    }

    pub fn module(&self, name: &str) -> Result<ModuleData<S>> {
        let v = self.expect(name, &["module"])?;
        let a = self.algebra(str_field(v, "algebra")?)?;
        let space = crate::serial::signature_from_json(field(v, "space")?, &self.doc.spaces)?;
        let action = entries_from_json(field(v, "action")?, &a.sig.tensor(&space), &space)?;
        ModuleData::new(&a, space, action)
    }

    pub fn action(&self, name: &str) -> Result<ActionData<S>> {
        let v = self.expect(name, &["action"])?;
        let h = self.hopf(str_field(v, "hopf")?)?;
        let a = self.algebra(str_field(v, "algebra")?)?;
        let side = match v.get("side").and_then(Value::as_str).unwrap_or("left") {
            "left" => Side::Left,
            "right" => Side::Right,
            s => return Err(Error::Parse(format!("unknown side `{s}`"))),
        };
        let dom = match side {
            Side::Left => h.sig().tensor(&a.sig),
            Side::Right => a.sig.tensor(h.sig()),
        };
        let act = entries_from_json(field(v, "action")?, &dom, &a.sig)?;
        ActionData::new(&h, &a, side, act)
    }

    pub fn left_datum(&self, name: &str) -> Result<LeftTwistDatum<S>> {
        let v = self.expect(name, &["left_datum"])?;
        let r = self.twisting(str_field(v, "twisting_map")?)?;
        let (a, b) = (&r.a.sig, &r.b.sig);
        let mu = entries_from_json(field(v, "mu")?, &b.tensor(a), a)?;
        let rho = entries_from_json(field(v, "rho")?, a, &a.tensor(b))?;
        let lambda = entries_from_json(field(v, "lambda")?, a, &a.tensor(b))?;
        LeftTwistDatum::new(&r, mu, rho, lambda)
    }

    pub fn right_datum(&self, name: &str) -> Result<RightTwistDatum<S>> {
        let v = self.expect(name, &["right_datum"])?;
        let r = self.twisting(str_field(v, "twisting_map")?)?;
        let (b, c) = (&r.a.sig, &r.b.sig);
        let nu = entries_from_json(field(v, "nu")?, &c.tensor(b), c)?;
        let theta = entries_from_json(field(v, "theta")?, c, &b.tensor(c))?;
        let gamma = entries_from_json(field(v, "gamma")?, c, &b.tensor(c))?;
        RightTwistDatum::new(&r, nu, theta, gamma)
    }

    fn catalog_params(v: &Value) -> Result<Params> {
        let mut p = Params::new();
        if let Some(o) = v.get("params") {
            let o = o.as_object().ok_or_else(|| Error::Parse("`params` must be an object".into()))?;
            for (k, x) in o {
                let s = match x {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                p.insert(k.clone(), s);
            }
        }
        Ok(p)
    }

    /// Runs the verifier matching the object's type. Mathematical failures
    /// come back as failing reports; only input problems are errors.
    pub fn check(&self, name: &str) -> Result<Report> {
        let kind = self.doc.kind(name)?.to_string();
        let out = match kind.as_str() {
            "algebra" => self.algebra(name).map(|a| check_algebra(&a)),
            "dg_algebra" => dg_from_json::<S>(self.doc.object(name)?, &self.doc.spaces).map(|d| check_dg(&d)),
            "twisting_map" => self.twisting(name).map(|r| check_twisting(&r).renamed(format!("twisting map {name}"))),
            "triple" => self.triple(name).and_then(|[r1, r2, r3]| {
                let parts = vec![check_twisting(&r1), check_twisting(&r2), check_twisting(&r3), check_hexagon(&r1, &r2, &r3)?];
                Ok(Report::all(format!("triple {name}"), parts))
            }),
            "family" => self.family(name).map(|f| f.verify()),
            "module" => self.module(name).map(|m| check_module(&m)),
            "hopf" => self.hopf(name).map(|h| check_hopf(&h)),
            "action" => self.action(name).map(|a| check_action(&a)),
            "left_datum" => self.left_datum(name).and_then(|d| invariance_left(&d).map(|i| i.report)),
            "right_datum" => self.right_datum(name).and_then(|d| invariance_right(&d).map(|i| i.report)),
            "catalog" => {
                let v = self.doc.object(name)?;
                catalog::build::<S>(str_field(v, "name")?, &Self::catalog_params(v)?).map(|b| b.report)
            }
            other => return Err(Error::Parse(format!("unknown object type `{other}`"))),
        };
        report_or_input_error(out)
    }

    /// Products of twisting maps, triples and families, plus catalog entries.
    pub fn build(&self, name: &str) -> Result<Built> {
        let kind = self.doc.kind(name)?.to_string();
        let params = Params::from([("object".to_string(), name.to_string())]);
        let res: Result<(Report, Option<Algebra<S>>)> = match kind.as_str() {
            "twisting_map" => self.twisting(name).and_then(|r| {
                let rep = check_twisting(&r);
                let alg = if rep.pass { Some(twisted_product(&r)?.algebra) } else { None };
                Ok((rep, alg))
            }),
            "triple" => self.triple(name).and_then(|[r1, r2, r3]| match triple_product(&r1, &r2, &r3) {
                Ok(t) => Ok((t.report.clone(), Some(t.algebra))),
                Err(e) => Err(e),
            }),
            "family" => self.family(name).and_then(|f| {
                let rep = f.verify();
                if !rep.pass {
                    return Ok((rep, None));
                }
                let p = n_fold_product(&f)?;
                Ok((p.report.clone(), Some(p.algebra)))
            }),
            "catalog" => {
                let v = self.doc.object(name)?;
                return catalog::build::<S>(str_field(v, "name")?, &Self::catalog_params(v)?);
            }
            other => return Err(Error::Parse(format!("cannot build a {other}"))),
        };
        match res {
            Ok((report, alg)) => {
                let object = alg.filter(|_| report.pass).map(|a| crate::serial::algebra_json(&a));
                Ok(Built { construction: kind, params, report, object })
            }
            Err(e) if !e.is_input_error() => {
                let report = e.report().cloned().unwrap_or_else(|| Report::fail(name, e.to_string()));
                Ok(Built { construction: kind, params, report, object: None })
            }
            Err(e) => Err(e),
        }
    }
}

fn report_or_input_error(r: Result<Report>) -> Result<Report> {
    match r {
        Ok(rep) => Ok(rep),
        Err(e) if e.is_input_error() => Err(e),
        Err(e) => Ok(e.report().cloned().unwrap_or_else(|| Report::fail("check", e.to_string()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;
    use crate::serial::{algebra_json, twisting_json};

    fn kz2_doc() -> Document {
        let h = HopfAlgebra::<Q>::cyclic(2).unwrap();
        let mut a = algebra_json(&h.algebra);
        a["type"] = json!("algebra");
        let flip = TwistingMap::flip(&h.algebra, &h.algebra);
        let mut r = twisting_json(&flip);
        r["type"] = json!("twisting_map");
        r["algebra_A"] = json!("A");
        r["algebra_B"] = json!("A");
        let mut bad = r.clone();
        bad["map_entries"] = json!([[0, 0, {"num": 1}], [1, 2, {"num": 1}], [2, 1, {"num": 1}], [3, 3, {"num": 2}]]);
        Document::from_value(&json!({
            "version": "1",
            "objects": {
                "A": a, "R": r, "Bad": bad,
                "T": {"type": "triple", "maps": ["R", "R", "R"]},
                "H4hex": {"type": "catalog", "name": "hexagon-counterexample"},
            }
        }))
        .unwrap()
    }

    #[test]
    fn checks_dispatch_by_type() {
        let doc = kz2_doc();
        let res = Resolver::<Q>::new(&doc);
        assert!(res.check("A").unwrap().pass);
        assert!(res.check("R").unwrap().pass);
        assert!(res.check("T").unwrap().pass);
        assert!(!res.check("Bad").unwrap().pass);
        assert!(!res.check("H4hex").unwrap().pass);
        assert!(matches!(res.check("missing"), Err(Error::UnknownObject(_))));
        let built = res.build("R").unwrap();
        assert_eq!(built.object.unwrap()["mult_entries"].as_array().unwrap().len(), 16);
    }

    #[test]
    fn malformed_documents_are_input_errors() {
        assert!(matches!(Document::parse("{"), Err(Error::Parse(_))));
        assert!(matches!(Document::parse(r#"{"version": "9"}"#), Err(Error::Parse(_))));
        assert!(matches!(Document::parse(r#"{"version": "1", "objects": {"x": {}}}"#), Err(Error::Parse(_))));
        assert!(matches!(Document::parse(r#"{"version": "1", "tasks": [{"command": "check", "object": "x"}]}"#), Err(Error::UnknownObject(_))));
        assert!(matches!(Document::parse(r#"{"version": "1", "tasks": [{"command": "prove", "object": "x"}]}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn tasks_keep_their_order() {
        let doc = Document::parse(
            r#"{"version": "1", "scalar_backend": "rational",
                "objects": {"P": {"type": "catalog", "name": "qplane"}},
                "tasks": [{"command": "build", "object": "P", "out": "p.json"}, {"command": "check", "object": "P"}]}"#,
        )
        .unwrap();
        assert_eq!(doc.backend, Some(Backend::Rational));
        assert_eq!(doc.tasks.iter().map(|t| t.command).collect::<Vec<_>>(), [TaskCommand::Build, TaskCommand::Check]);
        assert_eq!(doc.tasks[0].out.as_deref(), Some("p.json"));
    }
}
