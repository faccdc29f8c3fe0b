//! One library operation per verb.

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use ppmod_core::constructions::{amalgamate, joint_embed};
use ppmod_core::error::Error;
use ppmod_core::eval::{distinguishing_invariant, invariant, invariant_profile, pp_solution};
use ppmod_core::group::{enumerate_groups, fmt_element, parse_element, Element, FgGroup};
use ppmod_core::hom::Hom;
use ppmod_core::lattice::{InvValue, Lattice};
use ppmod_core::matrix::Int;
use ppmod_core::modelscope::{
    check_ap_at_scale, check_jep_at_scale, model_check, models_report, universal_at_scale,
    universal_over, universal_report, ClassReport, PairFailure, PairSuccess, Scope, Stats, Verdict,
};
use ppmod_core::pp::{parse_pp, parse_pp_with_arity, PpFormula};
use ppmod_core::ppt::{
    certificate_sweep, galois_type_equal_oracle, orbit_witness, parse_elements,
    solve_pp_conditions, Certificate, GaloisVerdict, PpCondition, DEFAULT_BUDGET,
};
use ppmod_core::purity::{complement, is_pure, pure_embeddable, pure_hull, splitting};
use ppmod_core::theory::Theory;

use crate::args::*;
use crate::report::Report;
use crate::theories::load_theory;
use crate::Failure;

type Inputs = Map<String, Value>;
type Outcome = Result<Report, Failure>;

pub fn verb_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Eval(_) => "eval",
        Command::Inv(_) => "inv",
        Command::Equiv(_) => "equiv",
        Command::Profile(_) => "profile",
        Command::Pure(_) => "pure",
        Command::Embed(_) => "embed",
        Command::Hull(_) => "hull",
        Command::Jointembed(_) => "jointembed",
        Command::Amalgamate(_) => "amalgamate",
        Command::Typeeq(_) => "typeeq",
        Command::Solve(_) => "solve",
        Command::Models(_) => "models",
        Command::Jep(_) => "jep",
        Command::Ap(_) => "ap",
        Command::Universal(_) => "universal",
        Command::UniversalOver(_) => "universal-over",
    }
}

/// Runs the command; on failure returns the raw arguments for the report.
pub fn execute(cmd: &Command) -> Result<Report, (Inputs, Failure)> {
    dispatch(cmd).map_err(|f| (raw_inputs(cmd), f))
}

fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::Eval(a) => eval(a),
        Command::Inv(a) => inv(a),
        Command::Equiv(a) => equiv(a),
        Command::Profile(a) => profile(a),
        Command::Pure(a) => pure(a),
        Command::Embed(a) => embed(a),
        Command::Hull(a) => hull(a),
        Command::Jointembed(a) => jointembed(a),
        Command::Amalgamate(a) => amalgamate_verb(a),
        Command::Typeeq(a) => typeeq(a),
        Command::Solve(a) => solve(a),
        Command::Models(a) => models(a),
        Command::Jep(a) => jep(a),
        Command::Ap(a) => ap(a),
        Command::Universal(a) => universal(a),
        Command::UniversalOver(a) => universal_over_verb(a),
    }
}

fn raw_inputs(cmd: &Command) -> Inputs {
    let mut m = Inputs::new();
    let mut put = |k: &str, v: Option<&str>| {
        if let Some(v) = v {
            m.insert(k.into(), v.into());
        }
    };
    match cmd {
        Command::Eval(a) => {
            put("group", Some(&a.group));
            put("phi", Some(&a.phi));
            put("tuple", a.tuple.as_deref());
        }
        Command::Inv(a) => {
            put("group", Some(&a.group));
            put("phi", Some(&a.phi));
            put("psi", Some(&a.psi));
        }
        Command::Equiv(a) | Command::Embed(a) | Command::Jointembed(a) => {
            put("group", Some(&a.group));
            put("other", Some(&a.other));
        }
        Command::Profile(a) => {
            put("group", Some(&a.group));
            put("primes", a.primes.as_deref());
        }
        Command::Pure(a) => {
            put("group", Some(&a.group));
            put("sub", Some(&a.sub));
        }
        Command::Hull(a) => put("group", Some(&a.group)),
        Command::Amalgamate(a) => {
            put("group", Some(&a.group));
            put("left", Some(&a.left));
            put("right", Some(&a.right));
            put("i1", a.i1.as_deref());
            put("i2", a.i2.as_deref());
            put("theory", a.theory.as_deref());
        }
        Command::Typeeq(a) => {
            put("group", Some(&a.group));
            put("params", Some(&a.params));
            put("b1", Some(&a.b1));
            put("b2", Some(&a.b2));
            put("left", a.left.as_deref());
            put("right", a.right.as_deref());
            put("i1", a.i1.as_deref());
            put("i2", a.i2.as_deref());
        }
        Command::Solve(a) => {
            put("group", Some(&a.group));
            m.insert("conditions".into(), a.conditions.clone().into());
        }
        Command::Models(a) => put("theory", Some(&a.theory)),
        Command::Jep(a) => {
            put("theory", Some(&a.theory));
            put("groups", a.groups.as_deref());
        }
        Command::Ap(a) => {
            put("theory", Some(&a.sweep.theory));
            put("groups", a.sweep.groups.as_deref());
            put("base", Some(&a.base));
        }
        Command::Universal(a) => put("theory", Some(&a.theory)),
        Command::UniversalOver(a) => {
            put("theory", Some(&a.theory));
            put("group", Some(&a.group));
            put("universal", a.universal.as_deref());
        }
    }
    m
}

// ---------------------------------------------------------------------------
// parsing and printing helpers

fn group(text: &str) -> Result<FgGroup, Failure> {
    Ok(text.parse::<FgGroup>()?)
}

/// Parses `phi` and `psi` with a common number of free variables.
fn formula_pair(phi: &str, psi: &str) -> Result<(PpFormula, PpFormula), Failure> {
    let arity = parse_pp(phi)?.free_vars().max(parse_pp(psi)?.free_vars());
    Ok((
        parse_pp_with_arity(phi, arity)?,
        parse_pp_with_arity(psi, arity)?,
    ))
}

/// `a,b;c,d` with one row per target coordinate.
pub fn parse_matrix(text: &str, rows: usize, cols: usize) -> Result<Vec<Vec<Int>>, Failure> {
    let mut out = Vec::new();
    let lines: Vec<&str> = if text.trim().is_empty() {
        Vec::new()
    } else {
        text.split(';').collect()
    };
    for line in lines {
        let row = line
            .split([',', ' '])
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<Int>()
                    .map_err(|_| Failure::Usage(format!("bad matrix entry `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(row);
    }
    if out.is_empty() && rows > 0 && cols == 0 {
        out = vec![Vec::new(); rows];
    }
    Ok(out)
}

pub fn matrix_text(m: &[Vec<Int>]) -> String {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn hom_json(h: &Hom) -> Value {
    json!({
        "source": h.source().to_string(),
        "target": h.target().to_string(),
        "matrix": matrix_text(h.matrix()),
    })
}

fn hom_arg(text: Option<&str>, source: &FgGroup, target: &FgGroup) -> Result<Hom, Failure> {
    match text {
        Some(t) => {
            let rows = parse_matrix(t, target.dim(), source.dim())?;
            Ok(Hom::new(source.clone(), target.clone(), rows)?)
        }
        None => pure_embeddable(source, target).ok_or(Failure::Library(Error::NotPure)),
    }
}

fn elements_text(es: &[Element]) -> String {
    es.iter().map(fmt_element).collect::<Vec<_>>().join(" ")
}

fn inv_json(v: &InvValue) -> Value {
    match v.finite().and_then(num_traits_u64) {
        Some(n) => n.into(),
        None => v.to_string().into(),
    }
}

fn num_traits_u64(x: &Int) -> Option<u64> {
    u64::try_from(x).ok()
}

fn strings<T: ToString>(items: &[T]) -> Value {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .into()
}

fn inputs(pairs: &[(&str, Value)]) -> Inputs {
    pairs
        .iter()
        .map(|(k, v)| ((*k).to_owned(), v.clone()))
        .collect()
}

// ---------------------------------------------------------------------------
// algebra verbs

fn eval(a: &EvalArgs) -> Outcome {
    let m = group(&a.group)?;
    let phi = parse_pp(&a.phi)?;
    let k = phi.free_vars();
    let sol = pp_solution(&m, &phi);
    let mut inp = inputs(&[
        ("group", m.to_string().into()),
        ("phi", phi.to_string().into()),
        ("arity", k.into()),
    ]);
    if let Some(t) = &a.tuple {
        let tuple = parse_elements(&m, t)?;
        if tuple.len() != k {
            return Err(Error::Arity(format!(
                "formula has {k} free variables but the tuple has {}",
                tuple.len()
            ))
            .into());
        }
        inp.insert("tuple".into(), elements_text(&tuple).into());
        return Ok(Report::new("eval", inp, sol.contains_tuple(&tuple).into()));
    }
    let index = Lattice::full(&m, k).index(&sol)?;
    Ok(
        Report::new("eval", inp, sol.to_string().into()).with_certificate(json!({
            "index_in_power": inv_json(&index),
            "rank": sol.rank(),
        })),
    )
}

fn inv(a: &InvArgs) -> Outcome {
    let m = group(&a.group)?;
    let (phi, psi) = formula_pair(&a.phi, &a.psi)?;
    let v = invariant(&m, &phi, &psi)?;
    let inp = inputs(&[
        ("group", m.to_string().into()),
        ("phi", phi.to_string().into()),
        ("psi", psi.to_string().into()),
        ("arity", phi.free_vars().into()),
    ]);
    Ok(Report::new("inv", inp, inv_json(&v)))
}

fn equiv(a: &PairArgs) -> Outcome {
    let (m, n) = (group(&a.group)?, group(&a.other)?);
    let inp = inputs(&[
        ("group", m.to_string().into()),
        ("other", n.to_string().into()),
    ]);
    let d = distinguishing_invariant(&m, &n);
    let mut r = Report::new("equiv", inp, d.is_none().into());
    if let Some(d) = d {
        r = r.with_certificate(json!({
            "family": d.family.to_string(),
            "prime": d.prime.to_string(),
            "level": d.level,
            "phi": d.phi.to_string(),
            "psi": d.psi.to_string(),
            "group_value": inv_json(&d.left),
            "other_value": inv_json(&d.right),
        }));
    }
    Ok(r)
}

fn profile(a: &ProfileArgs) -> Outcome {
    let m = group(&a.group)?;
    let primes: Option<Vec<Int>> = match &a.primes {
        Some(list) => Some(
            list.split(',')
                .map(|p| match p.trim().parse::<Int>() {
                    Ok(p) if is_prime(&p) => Ok(p),
                    _ => Err(Failure::Usage(format!("`{}` is not a prime", p.trim()))),
                })
                .collect::<Result<_, _>>()?,
        ),
        None => None,
    };
    let prof = invariant_profile(&m, primes.as_deref());
    let cells: Vec<Value> = prof
        .cells
        .iter()
        .map(|((p, n), (al, be))| json!({"p": p.to_string(), "n": n, "alpha": inv_json(al), "beta": inv_json(be)}))
        .collect();
    let mut inp = inputs(&[("group", m.to_string().into())]);
    if let Some(ps) = &primes {
        inp.insert(
            "primes".into(),
            ps.iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
                .into(),
        );
    }
    Ok(Report::new("profile", inp, cells.into()))
}

fn is_prime(p: &Int) -> bool {
    let Ok(p) = u64::try_from(p) else {
        return false;
    };
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn pure(a: &PureArgs) -> Outcome {
    let m = group(&a.group)?;
    let gens = parse_elements(&m, &a.sub)?;
    let h = Lattice::generated_by(&m, &gens)?;
    let inp = inputs(&[
        ("group", m.to_string().into()),
        ("sub", elements_text(&gens).into()),
    ]);
    let verdict = is_pure(&m, &h)?;
    let mut r = Report::new("pure", inp, verdict.into()).with_stat("subgroup_rank", h.rank());
    if verdict {
        let c = complement(&m, &h)?;
        let e = splitting(&m, &h)?.expect("pure subgroups split");
        r = r.with_certificate(json!({
            "subgroup": h.to_string(),
            "complement": c.to_string(),
            "projection": hom_json(&e),
        }));
    }
    Ok(r)
}

fn embed(a: &PairArgs) -> Outcome {
    let (m, n) = (group(&a.group)?, group(&a.other)?);
    let inp = inputs(&[
        ("group", m.to_string().into()),
        ("other", n.to_string().into()),
    ]);
    let w = pure_embeddable(&m, &n);
    let mut r = Report::new("embed", inp, w.is_some().into());
    if let Some(f) = w {
        r = r.with_certificate(json!({ "embedding": hom_json(&f) }));
    }
    Ok(r)
}

fn hull(a: &GroupArgs) -> Outcome {
    let m = group(&a.group)?;
    let h = pure_hull(&m)?;
    let inp = inputs(&[("group", m.to_string().into())]);
    Ok(
        Report::new("hull", inp, h.to_string().into()).with_certificate(json!({
            "pure_injective": true,
            "embedding": hom_json(&Hom::identity(&m)),
        })),
    )
}

fn jointembed(a: &PairArgs) -> Outcome {
    let (m, n) = (group(&a.group)?, group(&a.other)?);
    let inp = inputs(&[
        ("group", m.to_string().into()),
        ("other", n.to_string().into()),
    ]);
    let (l, f, g) = joint_embed(&m, &n);
    Ok(Report::new("jointembed", inp, l.to_string().into())
        .with_certificate(json!({ "f": hom_json(&f), "g": hom_json(&g) })))
}

fn amalgamate_verb(a: &AmalgamateArgs) -> Outcome {
    let n = group(&a.group)?;
    let (n1, n2) = (group(&a.left)?, group(&a.right)?);
    if n.rank() > 0 {
        return Err(Error::NotPureInjective.into());
    }
    let i1 = hom_arg(a.i1.as_deref(), &n, &n1)?;
    let i2 = hom_arg(a.i2.as_deref(), &n, &n2)?;
    let theory = a.theory.as_deref().map(load_theory).transpose()?;
    let mut inp = inputs(&[
        ("group", n.to_string().into()),
        ("left", n1.to_string().into()),
        ("right", n2.to_string().into()),
        ("i1", matrix_text(i1.matrix()).into()),
        ("i2", matrix_text(i2.matrix()).into()),
    ]);
    if let Some(t) = &theory {
        inp.insert("theory".into(), t.to_string().into());
    }
    let am = amalgamate(&n, &i1, &i2, theory.as_ref())?;
    Ok(
        Report::new("amalgamate", inp, am.group.to_string().into()).with_certificate(json!({
            "f1": hom_json(&am.f1),
            "f2": hom_json(&am.f2),
            "complement_left": am.complements.0.to_string(),
            "complement_right": am.complements.1.to_string(),
            "commutes": am.f1.compose(&i1)? == am.f2.compose(&i2)?,
        })),
    )
}

fn certificate_json(c: &Certificate) -> Value {
    json!({
        "condition": c.condition.to_string(),
        "holds_for": if c.satisfied_by_first { "b1" } else { "b2" },
    })
}

fn typeeq(a: &TypeeqArgs) -> Outcome {
    let m = group(&a.group)?;
    if let (Some(left), Some(right)) = (&a.left, &a.right) {
        return galois(a, m, left, right);
    }
    let params = parse_elements(&m, &a.params)?;
    let (b1, b2) = (parse_element(&m, &a.b1)?, parse_element(&m, &a.b2)?);
    let budget = a.bound.unwrap_or(DEFAULT_BUDGET);
    let inp = inputs(&[
        ("group", m.to_string().into()),
        ("params", elements_text(&params).into()),
        ("b1", fmt_element(&b1).into()),
        ("b2", fmt_element(&b2).into()),
    ]);
    if let Some(aut) = orbit_witness(&m, &params, &b1, &b2, budget)? {
        return Ok(Report::new("typeeq", inp, "EQUAL".into())
            .with_certificate(json!({ "automorphism": hom_json(&aut) })));
    }
    let cert = certificate_sweep(&m, &params, &b1, &b2, budget)?;
    let mut r = Report::new("typeeq", inp, "DISTINGUISHED".into());
    r = r.with_certificate(match &cert {
        Some(c) => certificate_json(c),
        None => json!({ "note": "no automorphism fixes the parameters and maps b1 to b2" }),
    });
    Ok(r)
}

fn galois(a: &TypeeqArgs, base: FgGroup, left: &str, right: &str) -> Outcome {
    let (n1, n2) = (group(left)?, group(right)?);
    if base.rank() > 0 {
        return Err(Error::NotPureInjective.into());
    }
    let i1 = hom_arg(a.i1.as_deref(), &base, &n1)?;
    let i2 = hom_arg(a.i2.as_deref(), &base, &n2)?;
    let (b1, b2) = (parse_element(&n1, &a.b1)?, parse_element(&n2, &a.b2)?);
    let bound = a.bound.unwrap_or(64);
    let inp = inputs(&[
        ("group", base.to_string().into()),
        ("left", n1.to_string().into()),
        ("right", n2.to_string().into()),
        ("i1", matrix_text(i1.matrix()).into()),
        ("i2", matrix_text(i2.matrix()).into()),
        ("b1", fmt_element(&b1).into()),
        ("b2", fmt_element(&b2).into()),
        ("bound", bound.into()),
    ]);
    let v = galois_type_equal_oracle(&i1, &b1, &i2, &b2, bound)?;
    let r = Report::new("typeeq", inp, v.to_string().into());
    Ok(match v {
        GaloisVerdict::Equal { amalgam, g1, g2 } => r.with_certificate(json!({
            "amalgam": amalgam.to_string(),
            "g1": hom_json(&g1),
            "g2": hom_json(&g2),
        })),
        GaloisVerdict::Distinct(Some(c)) => r.with_certificate(json!({
            "inside": "direct-sum amalgam",
            "condition": c.condition.to_string(),
            "holds_for": if c.satisfied_by_first { "b1" } else { "b2" },
        })),
        GaloisVerdict::Distinct(None) => r,
        GaloisVerdict::Unknown => r.with_certificate(
            json!({ "note": format!("no identifying amalgam of order <= {bound}") }),
        ),
    })
}

/// `formula @ p1 p2 ...`; the formula's first variable is the unknown.
pub fn parse_condition(m: &FgGroup, text: &str) -> Result<PpCondition, Failure> {
    let (f, ps) = match text.split_once('@') {
        Some((f, ps)) => (f, ps),
        None => (text, ""),
    };
    let params = parse_elements(m, ps)?;
    let formula = parse_pp_with_arity(f, 1 + params.len())?;
    Ok(PpCondition::new(formula, params)?)
}

fn solve(a: &SolveArgs) -> Outcome {
    let m = group(&a.group)?;
    let conds = a
        .conditions
        .iter()
        .map(|c| parse_condition(&m, c))
        .collect::<Result<Vec<_>, _>>()?;
    let inp = inputs(&[
        ("group", m.to_string().into()),
        ("conditions", strings(&conds)),
    ]);
    let x = solve_pp_conditions(&m, &conds)?;
    Ok(Report::new(
        "solve",
        inp,
        x.as_ref().map(fmt_element).into(),
    ))
}

// ---------------------------------------------------------------------------
// model-class verbs

fn theory_inputs(t: &Theory) -> Inputs {
    inputs(&[
        ("theory", t.to_string().into()),
        ("theory_digest", t.digest().into()),
    ])
}

fn stats_into(r: Report, s: &Stats) -> Report {
    r.with_stat("groups_examined", s.groups_examined)
        .with_stat("pairs_checked", s.pairs_checked)
        .with_stat("candidates_examined", s.candidates_examined)
}

fn models(a: &ModelsArgs) -> Outcome {
    let t = load_theory(&a.theory)?;
    if a.max_order == 0 {
        return Err(Failure::Usage("--max-order must be at least 1".into()));
    }
    let groups = enumerate_groups(a.max_order);
    let examined = groups.len() as u64;
    let verdicts: Vec<Result<bool, Error>> =
        groups.par_iter().map(|g| model_check(g, &t)).collect();
    let mut found = Vec::new();
    for (g, v) in groups.into_iter().zip(verdicts) {
        if v? {
            found.push(g);
        }
    }
    let report = models_report(&t, a.max_order, found, examined);
    let mut inp = theory_inputs(&t);
    inp.insert("max_order".into(), a.max_order.into());
    let Verdict::Models {
        models,
        outside_stated_families,
    } = &report.verdict
    else {
        unreachable!("models report")
    };
    let list: Vec<String> = models.iter().map(|e| e.group.to_string()).collect();
    let mut cert = Map::new();
    let families: Vec<Value> = models
        .iter()
        .filter_map(|e| {
            e.family
                .as_ref()
                .map(|f| json!({"group": e.group.to_string(), "family": f.to_string()}))
        })
        .collect();
    if !families.is_empty() || !outside_stated_families.is_empty() {
        cert.insert("families".into(), families.into());
        cert.insert(
            "outside_stated_families".into(),
            strings(outside_stated_families),
        );
    }
    let mut r = Report::new("models", inp, list.into()).with_stat("models", models.len());
    if !cert.is_empty() {
        r = r.with_certificate(Value::Object(cert));
    }
    Ok(stats_into(r, &report.stats))
}

fn scope(s: &SweepArgs) -> Result<Scope, Failure> {
    match (&s.groups, s.max_order) {
        (Some(list), _) => Ok(Scope::Explicit(
            list.split(';')
                .filter(|x| !x.trim().is_empty())
                .map(group)
                .collect::<Result<_, _>>()?,
        )),
        (None, Some(0)) => Err(Failure::Usage("--max-order must be at least 1".into())),
        (None, Some(b)) => Ok(Scope::MaxOrder(b)),
        (None, None) => Err(Failure::Usage(
            "either --max-order or --groups is required".into(),
        )),
    }
}

fn scope_inputs(inp: &mut Inputs, s: &Scope) {
    match s {
        Scope::MaxOrder(b) => inp.insert("max_order".into(), (*b).into()),
        Scope::Explicit(list) => inp.insert(
            "groups".into(),
            list.iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join("; ")
                .into(),
        ),
    };
}

fn failure_json(f: &PairFailure, bound: u64) -> Value {
    json!({
        "left": f.left.to_string(),
        "right": f.right.to_string(),
        "join": f.join.to_string(),
        "search": format!("no model of order <= {bound} purely contains both"),
        "conclusive": f.obstruction.is_some(),
        "obstruction": f.obstruction.as_ref().map(|o| o.to_string()),
    })
}

fn success_json(s: &PairSuccess) -> Value {
    json!({
        "left": s.left.to_string(),
        "right": s.right.to_string(),
        "witness": s.witness.to_string(),
        "by_construction": s.constructed,
    })
}

fn pair_report(verb: &str, inp: Inputs, report: &ClassReport, bound: u64) -> Report {
    let (successes, failures) = match &report.verdict {
        Verdict::JointEmbedding {
            successes,
            failures,
        }
        | Verdict::Amalgamation {
            successes,
            failures,
            ..
        } => (successes, failures),
        _ => unreachable!("pair sweep"),
    };
    let verdict = if failures.is_empty() {
        "SUCCESS"
    } else {
        "FAILURE"
    };
    let cert = json!({
        "failures": failures.iter().map(|f| failure_json(f, bound)).collect::<Vec<_>>(),
        "successes": successes.iter().map(success_json).collect::<Vec<_>>(),
    });
    stats_into(
        Report::new(verb, inp, verdict.into()).with_certificate(cert),
        &report.stats,
    )
}

fn jep(a: &SweepArgs) -> Outcome {
    let t = load_theory(&a.theory)?;
    let s = scope(a)?;
    let report = check_jep_at_scale(&t, &s, a.bound)?;
    let mut inp = theory_inputs(&t);
    scope_inputs(&mut inp, &s);
    inp.insert("bound".into(), a.bound.into());
    Ok(pair_report("jep", inp, &report, a.bound))
}

fn ap(a: &ApArgs) -> Outcome {
    let t = load_theory(&a.sweep.theory)?;
    let base = group(&a.base)?;
    let s = scope(&a.sweep)?;
    let report = check_ap_at_scale(&t, &base, &s, a.sweep.bound)?;
    let mut inp = theory_inputs(&t);
    inp.insert("base".into(), base.to_string().into());
    scope_inputs(&mut inp, &s);
    inp.insert("bound".into(), a.sweep.bound.into());
    Ok(pair_report("ap", inp, &report, a.sweep.bound))
}

fn universal(a: &UniversalArgs) -> Outcome {
    let t = load_theory(&a.theory)?;
    if a.embed_bound > a.bound {
        return Err(Failure::Usage(
            "--embed-bound must not exceed --bound".into(),
        ));
    }
    let report = universal_report(&t, a.embed_bound, a.bound)?;
    let Verdict::Universal(u) = &report.verdict else {
        unreachable!("universal report")
    };
    let mut inp = theory_inputs(&t);
    inp.insert("embed_bound".into(), a.embed_bound.into());
    inp.insert("bound".into(), a.bound.into());
    let verdict: Value = u.witness.as_ref().map(|w| w.to_string()).into();
    let mut cert = json!({
        "required_summand": u.required.to_string(),
        "models_covered": u.models_covered,
    });
    if let Some(w) = &u.witness {
        cert["order"] = w.order().map(|o| o.to_string()).into();
    } else {
        cert["search"] = format!(
            "no model of order <= {} purely contains {}",
            a.bound, u.required
        )
        .into();
        cert["obstruction"] = u.obstruction.as_ref().map(|o| o.to_string()).into();
    }
    Ok(stats_into(
        Report::new("universal", inp, verdict).with_certificate(cert),
        &report.stats,
    ))
}

fn universal_over_verb(a: &UniversalOverArgs) -> Outcome {
    let t = load_theory(&a.theory)?;
    let m = group(&a.group)?;
    let u = match &a.universal {
        Some(text) => group(text)?,
        None => universal_at_scale(&t, a.embed_bound, a.bound)?
            .witness
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "no universal model of order <= {} at scale {}",
                    a.bound, a.embed_bound
                ))
            })?,
    };
    let report = universal_over(&m, &u, &t, a.embed_bound)?;
    let Verdict::UniversalOver {
        sum,
        covered,
        failures,
        ..
    } = &report.verdict
    else {
        unreachable!("universal-over report")
    };
    let mut inp = theory_inputs(&t);
    inp.insert("group".into(), m.to_string().into());
    inp.insert("universal".into(), u.to_string().into());
    inp.insert("embed_bound".into(), a.embed_bound.into());
    let verdict = if failures.is_empty() {
        "SUCCESS"
    } else {
        "FAILURE"
    };
    let cert = json!({
        "sum": sum.to_string(),
        "covered": strings(covered),
        "failures": strings(failures),
    });
    Ok(stats_into(
        Report::new("universal-over", inp, verdict.into()).with_certificate(cert),
        &report.stats,
    ))
}
