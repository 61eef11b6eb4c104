//! The acceptance battery. Each criterion builds its catalog instances and
//! folds every check into one report; runs are deterministic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::check_algebra;
use crate::catalog::examples::{hexagon_counterexample_report, split_counterexample, two_sided_smash};
use crate::catalog::qplane::{normal_form_forms, qplane, qplane_forms, Theta};
use crate::deform::scenarios::{
    dihedral_cocycle, inner_decoupling, klein_cocycle, kz2_in_sweedler, majid_scenario, one_sided_hexagon,
    sweedler_r_matrix, two_sided_cocycle, unbraiding, unbraiding_scenario, cocycle_scenario,
};
use crate::deform::triple_invariance;
use crate::error::{Error, Result};
use crate::hopf::{
    action_twisting, coaction_twisting, diagonal_crossed_twisting, ns_chain, ns_inclusion, regular_action,
    CoactionData, HopfAlgebra, Side,
};
use crate::iterate::{
    compare_maps, split_left, split_right, triple_product, universal_morphism3, universal_morphism_n, TwistFamily,
};
use crate::lift::{
    dg_lift, dg_lift2, lift_module3, module_from_compat, module_from_compat3, restrict_to_factors, star_lift3,
    ModuleData, ModuleTwistingMap,
};
use crate::linear::LinearMap;
use crate::report::Report;
use crate::scalar::{Scalar, Q};
use crate::twist::{check_twisting, check_unital, map_equal, star_lift2, twisted_product, twisted_product_unchecked, universal_morphism2, TwistingMap};

/// `(id, name, summary)` of every criterion.
pub const CRITERIA: &[(u32, &str, &str)] = &[
    (1, "pentagon", "catalog twisting maps give associative products; single-entry faults break associativity"),
    (2, "iteration", "hexagon triples give iterated products; the H4 triple fails with a fixed witness"),
    (3, "splitting", "iterated transfer maps split back into their factors; the double acting on H(H4) does not"),
    (4, "coherence", "all association orders agree for the q-plane and the observable chains"),
    (5, "universal", "universal morphisms exist on catalog instances and reject perturbed inputs"),
    (6, "modules", "compatible actions recombine over double and triple products"),
    (7, "involutions", "lifted involutions on q-plane products"),
    (8, "forms", "differential lifting of the q-plane forms against the direct construction"),
    (9, "deformation", "invariance under twisting scenarios"),
    (10, "oracle", "q-plane products against the normal-form oracle"),
    (11, "determinism", "two runs of criteria 1-10 serialize to identical bytes"),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u32,
    pub name: String,
    pub status: Status,
    pub report: Report,
}

/// Comma-separated ids or names; `all` and the empty filter select everything.
pub fn selection(filter: Option<&str>) -> Result<Vec<u32>> {
    let raw = filter.map(str::trim).unwrap_or("");
    if raw.is_empty() || raw == "all" {
        return Ok(CRITERIA.iter().map(|c| c.0).collect());
    }
    let mut ids = Vec::new();
    for tok in raw.split(',').map(str::trim) {
        let id = match tok {
            "section4" => Some(9),
            _ => CRITERIA.iter().find(|c| c.1 == tok || c.0.to_string() == tok).map(|c| c.0),
        };
        match id {
            Some(id) if !ids.contains(&id) => ids.push(id),
            Some(_) => {}
            None => return Err(Error::Parse(format!("unknown suite filter `{tok}`"))),
        }
    }
    ids.sort_unstable();
    Ok(ids)
}

/// Runs the selected criteria in id order.
pub fn run<S: Scalar>(filter: Option<&str>) -> Result<Vec<Outcome>> {
    let ids = selection(filter)?;
    let mut out: Vec<Outcome> = ids.iter().filter(|&&i| i != 11).map(|&i| run_one::<S>(i)).collect();
    if ids.contains(&11) {
        let mut first = Vec::new();
        for i in 1..=10 {
            match out.iter().find(|o| o.id == i) {
                Some(o) => first.push(o.clone()),
                None => first.push(run_one::<S>(i)),
            }
        }
        let second: Vec<Outcome> = (1..=10).map(run_one::<S>).collect();
        out.push(outcome(11, Ok(determinism(&first, &second))));
    }
    Ok(out)
}

fn run_one<S: Scalar>(id: u32) -> Outcome {
    let r = match id {
        1 => pentagon::<S>(),
        2 => iteration::<S>(),
        3 => splitting::<S>(),
        4 => coherence::<S>(),
        5 => universal::<S>(),
        6 => modules::<S>(),
        7 => involutions::<S>(),
        8 => forms::<S>(),
        9 => deformation::<S>(),
        10 => oracle::<S>(),
        _ => Err(Error::UnknownObject(format!("criterion {id}"))),
    };
    outcome(id, r)
}

fn outcome(id: u32, r: Result<Report>) -> Outcome {
    let name = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1).to_string();
    let (status, report) = match r {
        Ok(rep) => (if rep.pass { Status::Pass } else { Status::Fail }, rep),
        Err(Error::BackendUnavailable(m)) => (Status::Skip, Report::pass(&name).with_note(format!("skipped: {m}"))),
        Err(e) => (Status::Fail, errored(&name, e)),
    };
    let report = report.renamed(name.clone());
    Outcome { id, name, status, report }
}

/// JSON of a list of outcomes; the byte stream compared for determinism.
pub fn outcomes_json(out: &[Outcome]) -> String {
    serde_json::to_string_pretty(out).expect("outcomes serialize")
}

fn determinism(first: &[Outcome], second: &[Outcome]) -> Report {
    let (a, b) = (outcomes_json(first), outcomes_json(second));
    if a == b {
        Report::pass("identical report bytes").with_note(format!("{} bytes", a.len()))
    } else {
        let at = a.bytes().zip(b.bytes()).position(|(x, y)| x != y).unwrap_or(a.len().min(b.len()));
        Report::fail("identical report bytes", format!("runs diverge at byte {at}"))
    }
}

fn errored(name: &str, e: Error) -> Report {
    e.report().cloned().unwrap_or_else(|| Report::fail(name, e.to_string()))
}

/// Folds a fallible check into a report named `name`.
fn attempt(name: &str, r: Result<Report>) -> Report {
    match r {
        Ok(rep) => rep.renamed(name),
        Err(e) => errored(name, e).renamed(name),
    }
}

/// Passes when `r` fails; the note carries the first failing check and its witness.
fn expect_failure(name: &str, r: &Report) -> Report {
    if r.pass {
        return Report::fail(name, "expected a failure, all checks passed");
    }
    let leaf = r.first_failure().unwrap_or(r);
    let note = match &leaf.witness {
        Some(w) => format!("{}: at {} -> {}, lhs {} vs rhs {}", leaf.check, w.input, w.output, w.lhs, w.rhs),
        None => format!("{}: {}", leaf.check, leaf.note.clone().unwrap_or_default()),
    };
    Report::pass(name).with_note(note)
}

/// `θ = π/2` where the backend has `i`, otherwise `θ = π`.
fn phase<S: Scalar>() -> Q {
    if S::exp_i_pi(Q::new(1, 2)).is_some() {
        Q::new(1, 2)
    } else {
        Q::from_integer(1)
    }
}

fn uniform(n: usize, t: Q) -> Result<Theta> {
    Theta::from_upper(n, &vec![t; n * (n - 1) / 2])
}

fn family_triple<S: Scalar>(f: &TwistFamily<S>) -> [TwistingMap<S>; 3] {
    [f.map(0, 1).clone(), f.map(1, 2).clone(), f.map(0, 2).clone()]
}

fn cyclic<S: Scalar>(n: usize) -> Result<HopfAlgebra<S>> {
    HopfAlgebra::cyclic(n)
}

fn twisting_catalog<S: Scalar>() -> Result<Vec<(String, TwistingMap<S>)>> {
    let (k2, k3, h4) = (cyclic::<S>(2)?, cyclic::<S>(3)?, HopfAlgebra::<S>::sweedler()?);
    let mut out = vec![
        ("flip kZ2, kZ3".to_string(), TwistingMap::flip(&k2.algebra, &k3.algebra)),
        ("flip H4, kZ2".to_string(), TwistingMap::flip(&h4.algebra, &k2.algebra)),
    ];
    let mut angles = vec![Q::from_integer(1)];
    if phase::<S>() != angles[0] {
        angles.push(phase::<S>());
    }
    for t in angles {
        let qp = qplane::<S>(&uniform(2, t)?, 2)?;
        out.push((format!("q-plane pair, theta {t} pi, D=2"), qp.family.map(0, 1).clone()));
    }
    for h in [&k2, &k3, &h4] {
        out.push((format!("smash twist over {}", h.name()), action_twisting(&regular_action(h, Side::Left)?)?));
    }
    for h in [&k3, &h4] {
        let co = CoactionData::regular(h)?;
        for side in [Side::Left, Side::Right] {
            let label = if side == Side::Left { "left" } else { "right" };
            out.push((format!("coaction twist over {}, {label} action", h.name()), coaction_twisting(&co, &regular_action(h, side)?)?));
        }
    }
    let (l, r) = (regular_action(&h4, Side::Left)?, regular_action(&h4, Side::Right)?);
    out.push(("diagonal crossed twist over H4".to_string(), diagonal_crossed_twisting(&l, &r, &CoactionData::regular(&h4)?)?));
    Ok(out)
}

/// Adds one to a random entry in a column `b⊗a` with neither leg the unit basis vector.
fn inject_fault<S: Scalar>(r: &TwistingMap<S>, rng: &mut ChaCha8Rng) -> Result<(TwistingMap<S>, usize, usize)> {
    let da = r.a.dim();
    let (ua, ub) = (r.a.unit_basis_index(), r.b.unit_basis_index());
    let cols: Vec<usize> = (0..r.map.dom_dim()).filter(|c| Some(c / da) != ub && Some(c % da) != ua).collect();
    let col = cols[rng.gen_range(0..cols.len())];
    let row = rng.gen_range(0..r.map.cod_dim());
    let bump = LinearMap::from_triplets(r.map.domain().clone(), r.map.codomain().clone(), vec![(row, col, S::one())])?;
    Ok((r.with_map(r.map.add(&bump)?)?, row, col))
}

const FAULTS_PER_MAP: usize = 3;

fn pentagon<S: Scalar>() -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7057);
    let mut sufficiency = Vec::new();
    let mut necessity = Vec::new();
    for (name, r) in twisting_catalog::<S>()? {
        let prod = twisted_product(&r).map(|p| check_algebra(&p.algebra));
        sufficiency.push(Report::all(
            name.clone(),
            vec![check_twisting(&r).renamed("twisting identities"), attempt("product is an algebra", prod)],
        ));
        if !check_unital(&r).pass {
            continue;
        }
        for _ in 0..FAULTS_PER_MAP {
            let (bad, row, col) = inject_fault(&r, &mut rng)?;
            let assoc = check_algebra(&twisted_product_unchecked(&bad)?.algebra);
            let assoc = assoc.find("associativity").cloned().unwrap_or(assoc);
            necessity.push(expect_failure(&format!("{name}: fault at ({row}, {col}) breaks associativity"), &assoc));
        }
    }
    Ok(Report::all(
        "pentagon",
        vec![Report::all("twisted products are algebras", sufficiency), Report::all("faults break associativity", necessity)],
    ))
}

fn triple_catalog<S: Scalar>() -> Result<Vec<(String, [TwistingMap<S>; 3])>> {
    let (k2, k3, h4) = (cyclic::<S>(2)?, cyclic::<S>(3)?, HopfAlgebra::<S>::sweedler()?);
    let mut out = Vec::new();
    for h in [&k2, &h4] {
        let [r1, r2, r3] = two_sided_smash(h)?.maps;
        out.push((format!("two-sided smash over {}", h.name()), [r1, r2, r3]));
    }
    let qp = qplane::<S>(&uniform(3, phase::<S>())?, 1)?;
    out.push((format!("q-plane triple, theta {} pi, D=1", phase::<S>()), family_triple(&qp.family)));
    let (a, b, c) = (&k2.algebra, &k3.algebra, &h4.algebra);
    out.push((
        "flips kZ2, kZ3, H4".to_string(),
        [TwistingMap::flip(a, b), TwistingMap::flip(b, c), TwistingMap::flip(a, c)],
    ));
    Ok(out)
}

fn iteration<S: Scalar>() -> Result<Report> {
    let mut parts = Vec::new();
    for (name, [r1, r2, r3]) in triple_catalog::<S>()? {
        parts.push(attempt(&name, triple_product(&r1, &r2, &r3).map(|t| t.report)));
    }
    let h4 = HopfAlgebra::<S>::sweedler()?;
    let (first, again) = (hexagon_counterexample_report(&h4)?, hexagon_counterexample_report(&h4)?);
    let hex = first.find("hexagon").cloned().unwrap_or(first.clone());
    let mut counter = Report::all(
        "H4 counterexample",
        vec![
            Report::all("factor maps are twisting", first.parts.iter().filter(|p| p.check != "hexagon").cloned().collect()),
            expect_failure("hexagon fails", &hex),
        ],
    );
    let same = hex.witness.is_some() && first == again;
    counter.push(if same {
        Report::pass("first witness is reproducible")
    } else {
        Report::fail("first witness is reproducible", "missing or differing witness")
    });
    parts.push(counter);
    Ok(Report::all("iteration", parts))
}

fn splitting<S: Scalar>() -> Result<Report> {
    let mut parts = Vec::new();
    for (name, [r1, r2, r3]) in triple_catalog::<S>()? {
        let rep = (|| -> Result<Report> {
            let t = triple_product(&r1, &r2, &r3)?;
            let right = split_right(&t.t1, &r1.a, &r1.b)?;
            let left = split_left(&t.t2, &r1.b, &r2.b)?;
            Ok(Report::all(
                name.clone(),
                vec![
                    right.report.clone(),
                    map_equal("right splitting recovers R2", &right.first.map, &r2.map),
                    map_equal("right splitting recovers R3", &right.second.map, &r3.map),
                    left.report.clone(),
                    map_equal("left splitting recovers R1", &left.first.map, &r1.map),
                    map_equal("left splitting recovers R3", &left.second.map, &r3.map),
                ],
            ))
        })();
        parts.push(attempt(&name, rep));
    }
    let ex = split_counterexample(&HopfAlgebra::<S>::sweedler()?)?;
    let refused = match &ex.splitting {
        Err(Error::NotSplittable(rep)) => expect_failure("right splitting is refused", rep),
        Err(e) => Report::fail("right splitting is refused", format!("unexpected error: {e}")),
        Ok(_) => Report::fail("right splitting is refused", "the map split"),
    };
    parts.push(Report::all(
        "D(H4) acting on H(H4)",
        vec![check_twisting(&ex.t).renamed("T twisting"), refused],
    ));
    Ok(Report::all("splitting", parts))
}

fn coherence<S: Scalar>() -> Result<Report> {
    let t = phase::<S>();
    let qp = qplane::<S>(&uniform(3, t)?, 2)?;
    let mut parts = vec![Report::all(
        format!("q-plane n=3 D=2, theta {t} pi"),
        vec![qp.family.verify(), qp.product.report.clone()],
    )];
    let k2 = cyclic::<S>(2)?;
    let mut chains = Vec::new();
    for n in 0..=3i64 {
        for m in n..=3i64 {
            let c = ns_chain(&k2, n, m)?;
            let want = 1usize << (m - n + 1);
            let dim = if c.product.algebra.dim() == want {
                Report::pass(format!("dimension {want}"))
            } else {
                Report::fail(format!("dimension {want}"), format!("got {}", c.product.algebra.dim()))
            };
            parts.push(Report::all(format!("chain A[{n},{m}] over kZ2"), vec![dim, c.product.report.clone()]));
            chains.push(c);
        }
    }
    let mut incl = Vec::new();
    for inner in &chains {
        for outer in &chains {
            let (n, m) = (inner.first, inner.first + inner.family.len() as i64 - 1);
            let (n2, m2) = (outer.first, outer.first + outer.family.len() as i64 - 1);
            if (n2, m2) != (n, m) && n2 <= n && m <= m2 {
                incl.push(ns_inclusion(inner, outer)?.1);
            }
        }
    }
    parts.push(Report::all("chain inclusions are morphisms", incl));
    Ok(Report::all("coherence", parts))
}

/// Adds one at `(row, col)`.
fn perturbed<S: Scalar>(f: &LinearMap<S>, row: usize, col: usize) -> Result<LinearMap<S>> {
    f.add(&LinearMap::from_triplets(f.domain().clone(), f.codomain().clone(), vec![(row, col, S::one())])?)
}

fn expect_condition_violated(name: &str, r: Result<(LinearMap<impl Scalar>, Report)>) -> Report {
    match r {
        Err(Error::ConditionViolated(rep)) => expect_failure(name, &rep),
        Err(e) => Report::fail(name, format!("unexpected error: {e}")),
        Ok(_) => Report::fail(name, "perturbed input was accepted"),
    }
}

fn universal<S: Scalar>() -> Result<Report> {
    let mut parts = Vec::new();
    let (k2, k3, k6) = (cyclic::<S>(2)?, cyclic::<S>(3)?, cyclic::<S>(6)?);
    let flip = TwistingMap::flip(&k2.algebra, &k3.algebra);
    let u = LinearMap::from_fn(k2.sig().clone(), k6.sig().clone(), |c| vec![(3 * c % 6, S::one())]);
    let v = LinearMap::from_fn(k3.sig().clone(), k6.sig().clone(), |c| vec![(2 * c % 6, S::one())]);
    let (phi, rep) = universal_morphism2(&flip, &k6.algebra, &u, &v)?;
    let bij = if phi.invert().is_ok() { Report::pass("kZ2 x kZ3 -> kZ6 is bijective") } else { Report::fail("kZ2 x kZ3 -> kZ6 is bijective", "singular") };
    parts.push(Report::all("flip kZ2, kZ3 into kZ6", vec![rep, bij]));

    let smash = action_twisting(&regular_action(&k2, Side::Left)?)?;
    let prod = twisted_product(&smash)?;
    let (phi, rep) = universal_morphism2(&smash, &prod.algebra, &prod.i_a, &prod.i_b)?;
    let id = if phi.is_identity() { Report::pass("induced map is the identity") } else { Report::fail("induced map is the identity", "not the identity") };
    parts.push(Report::all("smash kZ2 through its own inclusions", vec![rep, id]));
    let bad_v = perturbed(&prod.i_b, 0, 1)?;
    parts.push(expect_condition_violated(
        "perturbed inclusion is rejected",
        universal_morphism2(&smash, &prod.algebra, &prod.i_a, &bad_v),
    ));

    let tss = two_sided_smash(&k2)?;
    let [r1, r2, r3] = &tss.maps;
    let [i1, i2, i3] = &tss.triple.inclusions;
    let x = &tss.triple.algebra;
    parts.push(attempt("two-sided smash over kZ2, three factors", universal_morphism3(r1, r2, r3, x, i1, i2, i3).map(|p| p.1)));
    let bad_w = perturbed(i3, 0, 1)?;
    parts.push(expect_condition_violated("perturbed third inclusion is rejected", universal_morphism3(r1, r2, r3, x, i1, i2, &bad_w)));

    let chain = ns_chain(&k2, 0, 3)?;
    let us = chain.product.inclusions.clone();
    parts.push(attempt("chain A[0,3] over kZ2, four factors", universal_morphism_n(&chain.family, &chain.product.algebra, &us).map(|p| p.1)));
    let mut bad = us.clone();
    bad[1] = perturbed(&us[1], 0, 1)?;
    parts.push(expect_condition_violated("perturbed chain inclusion is rejected", universal_morphism_n(&chain.family, &chain.product.algebra, &bad)));
    Ok(Report::all("universal", parts))
}

fn round_trip<S: Scalar>(name: &str, r: &TwistingMap<S>) -> Result<Report> {
    let prod = twisted_product(r)?;
    let reg = ModuleData::regular(&prod.algebra);
    let (ma, mb, restricted) = restrict_to_factors(r, &reg)?;
    let (m, rep) = module_from_compat(r, &ma, &mb)?;
    Ok(Report::all(
        name,
        vec![restricted, rep, map_equal("recombined action is the regular action", &m.action, &reg.action)],
    ))
}

fn triple_modules<S: Scalar>(name: &str, maps: &[TwistingMap<S>; 3]) -> Result<Report> {
    let [r1, r2, r3] = maps;
    let t = triple_product(r1, r2, r3)?;
    let reg = ModuleData::regular(&t.algebra);
    let acts = [(&r1.a, &t.inclusions[0]), (&r1.b, &t.inclusions[1]), (&r2.b, &t.inclusions[2])]
        .into_iter()
        .map(|(x, i)| reg.restrict(x, i))
        .collect::<Result<Vec<_>>>()?;
    let (m, compat) = module_from_compat3(r1, r2, r3, &acts[0], &acts[1], &acts[2])?;
    let lifted = lift_module3(
        &ModuleTwistingMap::regular(r3),
        &ModuleTwistingMap::regular(r1),
        &ModuleTwistingMap::regular(r2),
        &ModuleData::regular(&r1.b),
        &ModuleData::regular(&r2.b),
    )?;
    Ok(Report::all(
        name,
        vec![
            compat,
            map_equal("recombined action is the regular action", &m.action, &reg.action),
            lifted.report.clone(),
            map_equal("lifted module is the regular module", &lifted.module.action, &t.algebra.mult),
        ],
    ))
}

fn modules<S: Scalar>() -> Result<Report> {
    let (k2, h4) = (cyclic::<S>(2)?, HopfAlgebra::<S>::sweedler()?);
    let mut parts = Vec::new();
    for h in [&k2, &h4] {
        let r = action_twisting(&regular_action(h, Side::Left)?)?;
        parts.push(attempt(&format!("smash over {}", h.name()), round_trip(&format!("smash over {}", h.name()), &r)));
    }
    let qp = qplane::<S>(&uniform(2, phase::<S>())?, 1)?;
    parts.push(attempt("q-plane pair, D=1", round_trip("q-plane pair, D=1", qp.family.map(0, 1))));
    let tss = two_sided_smash(&k2)?;
    parts.push(attempt("two-sided smash over kZ2", triple_modules("two-sided smash over kZ2", &tss.maps)));
    let q3 = qplane::<S>(&uniform(3, phase::<S>())?, 1)?;
    parts.push(attempt("q-plane triple, D=1", triple_modules("q-plane triple, D=1", &family_triple(&q3.family))));
    Ok(Report::all("modules", parts))
}

fn require_i<S: Scalar>() -> Result<()> {
    match S::exp_i_pi(Q::new(1, 2)) {
        Some(_) => Ok(()),
        None => Err(Error::BackendUnavailable(format!("the {} backend has no square root of -1", S::BACKEND.name()))),
    }
}

fn involutions<S: Scalar>() -> Result<Report> {
    require_i::<S>()?;
    let mut parts = Vec::new();
    for t in [Q::new(1, 2), Q::new(-1, 2)] {
        let qp = qplane::<S>(&uniform(2, t)?, 2)?;
        let name = format!("q-plane pair, theta {t} pi, D=2");
        parts.push(attempt(&name, star_lift2(qp.family.map(0, 1), &qp.involutions[0], &qp.involutions[1]).map(|p| p.1)));
    }
    let theta = Theta::from_upper(3, &[Q::new(1, 2), Q::new(-1, 2), Q::new(1, 2)])?;
    let qp = qplane::<S>(&theta, 2)?;
    let [r1, r2, r3] = family_triple(&qp.family);
    let j = &qp.involutions;
    parts.push(attempt("q-plane triple, mixed phases, D=2", star_lift3(&r1, &r2, &r3, &j[0], &j[1], &j[2]).map(|p| p.1)));
    Ok(Report::all("involutions", parts))
}

fn forms<S: Scalar>() -> Result<Report> {
    let t = phase::<S>();
    let mut parts = Vec::new();
    for n in [2usize, 3] {
        let theta = uniform(n, t)?;
        let f = qplane_forms::<S>(&theta, 2)?;
        let fam = &f.family;
        let name = format!("forms n={n} D=2, theta {t} pi");
        let rep = (|| -> Result<Report> {
            let (dg, lift) = match n {
                2 => dg_lift2(&f.factors[0], &f.factors[1], fam.map(0, 1))?,
                _ => dg_lift(&f.factors[0], &f.factors[1], &f.factors[2], fam.map(0, 1), fam.map(1, 2), fam.map(0, 2))?,
            };
            let direct = normal_form_forms::<S>(&theta, 2)?;
            let degrees = if dg.degrees() == direct.degrees() {
                Report::pass("degrees match")
            } else {
                Report::fail("degrees match", "degree vectors differ")
            };
            Ok(Report::all(
                name.clone(),
                vec![
                    lift,
                    compare_maps("product matches the direct construction", &dg.algebra().mult, &direct.algebra().mult)?,
                    compare_maps("differential matches the direct construction", &dg.d, &direct.d)?,
                    degrees,
                ],
            ))
        })();
        parts.push(attempt(&name, rep));
    }
    Ok(Report::all("forms", parts))
}

fn deformation<S: Scalar>() -> Result<Report> {
    let klein = HopfAlgebra::<S>::klein()?;
    let h4 = HopfAlgebra::<S>::sweedler()?;
    let r = sweedler_r_matrix::<S>();
    let mut parts = vec![
        attempt("cocycle deformation over klein", cocycle_scenario(&klein, &klein_cocycle()).map(|s| s.report)),
        attempt("braided dual over H4", majid_scenario(&h4, &r).map(|s| s.report)),
        attempt("inner decoupling through kZ2 -> H4", kz2_in_sweedler::<S>().and_then(|(h, a, u)| inner_decoupling(&h, &a, &u)).map(|s| s.report)),
        attempt("unbraiding over H4", unbraiding(&h4, &r).and_then(|u| unbraiding_scenario(&u, &r)).map(|s| s.report)),
        attempt(
            "two-sided deformation over klein",
            two_sided_cocycle(&klein, &klein_cocycle()).and_then(|(dl, dr, r3)| triple_invariance(&dl, &dr, &r3)).map(|t| t.report),
        ),
    ];
    let d8 = HopfAlgebra::<S>::dihedral(4)?;
    let one = one_sided_hexagon(&d8, &dihedral_cocycle())?;
    let hex = one.find("hexagon").cloned().unwrap_or(one.clone());
    let witnessed = if hex.witness.is_some() { Report::pass("failure has a witness") } else { Report::fail("failure has a witness", "no witness") };
    parts.push(Report::all(
        "one-sided deformation over kD8",
        vec![expect_failure("hexagon of the deformed left map fails", &hex), witnessed],
    ));
    Ok(Report::all("deformation", parts))
}

fn oracle<S: Scalar>() -> Result<Report> {
    let mut parts = Vec::new();
    let t = phase::<S>();
    for n in 1..=3usize {
        let upper: Vec<Q> = (0..n * (n - 1) / 2).map(|k| if k % 2 == 0 { t } else { Q::from_integer(1) - t }).collect();
        let theta = Theta::from_upper(n, &upper)?;
        for d in 1..=3u32 {
            let name = format!("q-plane n={n} D={d}");
            parts.push(attempt(&name, qplane::<S>(&theta, d).map(|q| q.report)));
        }
    }
    Ok(Report::all("oracle", parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filters_select_criteria() {
        assert_eq!(selection(None).unwrap().len(), 11);
        assert_eq!(selection(Some("section4")).unwrap(), vec![9]);
        assert_eq!(selection(Some("forms,2")).unwrap(), vec![2, 8]);
        assert!(selection(Some("nope")).is_err());
    }

    #[test]
    fn rational_backend_skips_involutions() {
        let out = run::<Q>(Some("involutions")).unwrap();
        assert_eq!(out[0].status, Status::Skip);
    }
}
