//! Finite model classes of invariant-condition theories.
//!
//! Every finitely generated group that purely contains `M` and `N` is
//! isomorphic to `J ⊕ C`, where the *join* `J` carries, for each prime
//! power, the larger of the two multiplicities. Invariants multiply over
//! direct sums, so membership of `J ⊕ C` can be decided from the invariants
//! of `J` and `C` separately; candidate extensions are scanned in order of
//! size and then canonical form.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, ToPrimitive};

use crate::constructions::amalgamate;
use crate::error::{Error, Result};
use crate::eval::invariant;
use crate::group::{direct_sum, enumerate_groups, groups_of_order, FgGroup};
use crate::hom::Hom;
use crate::lattice::InvValue;
use crate::matrix::Int;
use crate::purity::{complement, is_pure_embedding, pure_embeddable, retraction};
use crate::theory::{Builtin, Relation, Theory};

/// The theory of abelian groups with `Inv(-, x = x, 3x = 0) < 6`.
pub const EXAMPLE_THEORY: &str = "clause: Inv(x = x ; 3x = 0) < 6\n";

/// Invariants of every literal of every clause.
type Values = Vec<Vec<InvValue>>;

fn literal_values(g: &FgGroup, t: &Theory) -> Result<Values> {
    t.clauses
        .iter()
        .map(|clause| {
            clause
                .iter()
                .map(|lit| {
                    invariant(g, &lit.phi, &lit.psi).map_err(|e| match e {
                        Error::NotContained(_) => {
                            Error::NotContained(Some(alloc::format!("literal `{lit}` in {g}")))
                        }
                        other => other,
                    })
                })
                .collect()
        })
        .collect()
}

fn satisfied(t: &Theory, values: &Values, torsion_free: bool) -> bool {
    if t.builtins.contains(&Builtin::TorsionFree) && !torsion_free {
        return false;
    }
    t.clauses.iter().zip(values).all(|(clause, vals)| {
        clause.iter().zip(vals).any(|(lit, v)| match lit.relation {
            Relation::Geq => v.at_least(&lit.k),
            Relation::Lt => !v.at_least(&lit.k),
        })
    })
}

/// Whether `m` satisfies every clause and builtin of `t`.
pub fn model_check(m: &FgGroup, t: &Theory) -> Result<bool> {
    if t.builtins.contains(&Builtin::TorsionFree) && !m.divisors().is_empty() {
        return Ok(false);
    }
    // clauses are evaluated lazily so a satisfied disjunct stops evaluation
    for clause in &t.clauses {
        let mut ok = false;
        for lit in clause {
            let v = invariant(m, &lit.phi, &lit.psi).map_err(|e| match e {
                Error::NotContained(_) => {
                    Error::NotContained(Some(alloc::format!("literal `{lit}` in {m}")))
                }
                other => other,
            })?;
            let holds = match lit.relation {
                Relation::Geq => v.at_least(&lit.k),
                Relation::Lt => !v.at_least(&lit.k),
            };
            if holds {
                ok = true;
                break;
            }
        }
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Models of order at most `max_order`, in enumeration order.
pub fn enumerate_models(t: &Theory, max_order: u64) -> Result<Vec<FgGroup>> {
    let mut out = Vec::new();
    for g in enumerate_groups(max_order) {
        if model_check(&g, t)? {
            out.push(g);
        }
    }
    Ok(out)
}

/// Which groups a sweep ranges over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scope {
    /// All models of order at most the bound.
    MaxOrder(u64),
    /// The models among the listed groups.
    Explicit(Vec<FgGroup>),
}

impl Scope {
    fn models(&self, t: &Theory) -> Result<Vec<FgGroup>> {
        match self {
            Scope::MaxOrder(b) => enumerate_models(t, *b),
            Scope::Explicit(list) => {
                let mut out = Vec::new();
                for g in list {
                    if model_check(g, t)? {
                        out.push(g.clone());
                    }
                }
                out.sort_by(|a, b| (a.rank(), a.order(), a).cmp(&(b.rank(), b.order(), b)));
                out.dedup();
                Ok(out)
            }
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::MaxOrder(b) => write!(f, "order <= {b}"),
            Scope::Explicit(list) => {
                f.write_str("{")?;
                for (i, g) in list.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{g}")?;
                }
                f.write_str("}")
            }
        }
    }
}

/// The smallest group purely containing every listed group.
pub fn join(groups: &[&FgGroup]) -> FgGroup {
    let mut rank = 0;
    let mut counts: BTreeMap<(Int, u32), usize> = BTreeMap::new();
    for g in groups {
        rank = rank.max(g.rank());
        let mut here: BTreeMap<(Int, u32), usize> = BTreeMap::new();
        for s in g.primary_summands() {
            *here.entry((s.prime, s.exponent)).or_default() += 1;
        }
        for (k, c) in here {
            let slot = counts.entry(k).or_default();
            *slot = (*slot).max(c);
        }
    }
    let mut parts: BTreeMap<Int, Vec<u32>> = BTreeMap::new();
    for ((p, e), c) in counts {
        parts
            .entry(p)
            .or_default()
            .extend(core::iter::repeat_n(e, c));
    }
    FgGroup::from_primary(rank, &parts)
}

/// Canonical form of `a ⊕ b`.
pub fn sum_group(a: &FgGroup, b: &FgGroup) -> FgGroup {
    let mut parts = a.primary_decomposition();
    for (p, es) in b.primary_decomposition() {
        parts.entry(p).or_default().extend(es);
    }
    for v in parts.values_mut() {
        v.sort_unstable();
    }
    FgGroup::from_primary(a.rank() + b.rank(), &parts)
}

/// Why no model of any size purely contains a given group `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub join: FgGroup,
    /// The clause all of whose `<` literals already fail at `J`, with the
    /// invariant values of `J`.
    pub clause: Option<(usize, Vec<(String, InvValue)>)>,
    /// A builtin that already fails at `J`.
    pub builtin: Option<Builtin>,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "every finitely generated group purely containing these groups is {} + C for some C, and Inv({} + C) = Inv({})*Inv(C) >= Inv({}); ",
            self.join, self.join, self.join, self.join
        )?;
        if let Some((i, lits)) = &self.clause {
            write!(f, "clause {} fails at {}:", i + 1, self.join)?;
            for (j, (lit, v)) in lits.iter().enumerate() {
                if j > 0 {
                    f.write_str(" and")?;
                }
                write!(f, " {lit} has value {v}")?;
            }
        }
        if let Some(b) = self.builtin {
            write!(
                f,
                "builtin {} fails because {} has torsion",
                b.name(),
                self.join
            )?;
        }
        Ok(())
    }
}

/// An invariant obstruction at `j`, if the theory has one: a clause made of
/// entailed `<` literals that all fail at `j` (they then fail at every
/// `j ⊕ C`), or the torsion-free builtin when `j` has torsion.
pub fn obstruction(j: &FgGroup, t: &Theory) -> Result<Option<Obstruction>> {
    if t.builtins.contains(&Builtin::TorsionFree) && !j.divisors().is_empty() {
        return Ok(Some(Obstruction {
            join: j.clone(),
            clause: None,
            builtin: Some(Builtin::TorsionFree),
        }));
    }
    for (i, clause) in t.clauses.iter().enumerate() {
        if !clause
            .iter()
            .all(|l| l.relation == Relation::Lt && l.entailed)
        {
            continue;
        }
        let mut lits = Vec::new();
        let mut all_fail = true;
        for lit in clause {
            let v = invariant(j, &lit.phi, &lit.psi)?;
            if !v.at_least(&lit.k) {
                all_fail = false;
                break;
            }
            lits.push((lit.to_string(), v));
        }
        if all_fail {
            return Ok(Some(Obstruction {
                join: j.clone(),
                clause: Some((i, lits)),
                builtin: None,
            }));
        }
    }
    Ok(None)
}

/// Deterministic counters; no timings, so reports are reproducible.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stats {
    pub groups_examined: u64,
    pub pairs_checked: u64,
    pub candidates_examined: u64,
}

/// Searches models `J ⊕ C` of order at most `bound` by increasing order,
/// then canonical form.
struct ExtensionSearch<'a> {
    theory: &'a Theory,
    cache: BTreeMap<FgGroup, Values>,
    candidates: u64,
}

impl<'a> ExtensionSearch<'a> {
    fn new(theory: &'a Theory) -> Self {
        ExtensionSearch {
            theory,
            cache: BTreeMap::new(),
            candidates: 0,
        }
    }

    fn values(&mut self, g: &FgGroup) -> Result<Values> {
        if let Some(v) = self.cache.get(g) {
            return Ok(v.clone());
        }
        let v = literal_values(g, self.theory)?;
        self.cache.insert(g.clone(), v.clone());
        Ok(v)
    }

    fn least_model_containing(&mut self, j: &FgGroup, bound: u64) -> Result<Option<FgGroup>> {
        let Some(oj) = j.order_u64() else {
            // positive rank: only the join itself is tried, with no scan
            self.candidates += 1;
            return Ok(if model_check(j, self.theory)? {
                Some(j.clone())
            } else {
                None
            });
        };
        let vj = self.values(j)?;
        let mut c_order = 1u64;
        while oj.saturating_mul(c_order) <= bound {
            let mut level: Vec<(FgGroup, FgGroup)> = groups_of_order(c_order)
                .into_iter()
                .map(|c| (sum_group(j, &c), c))
                .collect();
            level.sort();
            for (l, c) in level {
                self.candidates += 1;
                let vc = self.values(&c)?;
                let combined: Values = vj
                    .iter()
                    .zip(&vc)
                    .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x * y).collect())
                    .collect();
                if satisfied(self.theory, &combined, l.divisors().is_empty()) {
                    return Ok(Some(l));
                }
            }
            c_order += 1;
        }
        Ok(None)
    }
}

/// One pair that has a common pure extension in the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSuccess {
    pub left: FgGroup,
    pub right: FgGroup,
    pub witness: FgGroup,
    /// `true` when the witness came from the explicit amalgam construction
    /// rather than the candidate scan.
    pub constructed: bool,
}

/// One pair with no common pure extension of order within the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairFailure {
    pub left: FgGroup,
    pub right: FgGroup,
    pub join: FgGroup,
    /// Present when the failure is forced at every size, not just within
    /// the bound.
    pub obstruction: Option<Obstruction>,
}

/// Classification of a model of the example theory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExampleFamily {
    /// `A0 ⊕ (Z/3)^k` with `A0` one of `0, Z/2, Z/2 + Z/2, Z/4, Z/5`.
    ElementaryPlus { a0: FgGroup, k: usize },
    /// `Z/9 ⊕ (Z/3)^k`.
    Nine { k: usize },
}

impl ExampleFamily {
    /// The families named in the usual description of the models are
    /// `A0 ⊕ (Z/3)^k` and `Z/9` alone; `Z/9 ⊕ (Z/3)^k` with `k >= 1` also
    /// satisfies the defining condition and is reported separately.
    pub fn in_stated_families(&self) -> bool {
        match self {
            ExampleFamily::ElementaryPlus { .. } => true,
            ExampleFamily::Nine { k } => *k == 0,
        }
    }
}

impl fmt::Display for ExampleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExampleFamily::ElementaryPlus { a0, k } => write!(f, "A0 + (Z/3)^{k} with A0 = {a0}"),
            ExampleFamily::Nine { k } => write!(f, "Z/9 + (Z/3)^{k}"),
        }
    }
}

/// Places a finite group in one of the example families, if it fits one.
pub fn classify_example(g: &FgGroup) -> Option<ExampleFamily> {
    if g.rank() > 0 {
        return None;
    }
    let three = Int::from(3);
    let mut parts = g.primary_decomposition();
    let p3 = parts.remove(&three).unwrap_or_default();
    let rest = FgGroup::from_primary(0, &parts);
    let ones = p3.iter().filter(|&&e| e == 1).count();
    let twos = p3.iter().filter(|&&e| e == 2).count();
    if ones + twos != p3.len() {
        return None;
    }
    let a0_list = ["0", "Z/2", "Z/2 + Z/2", "Z/4", "Z/5"];
    if twos == 0
        && a0_list
            .iter()
            .any(|s| s.parse::<FgGroup>().expect("literal") == rest)
    {
        return Some(ExampleFamily::ElementaryPlus { a0: rest, k: ones });
    }
    if twos == 1 && rest.is_trivial() {
        return Some(ExampleFamily::Nine { k: ones });
    }
    None
}

/// A model with its example-family classification (when the theory is the
/// example theory).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelEntry {
    pub group: FgGroup,
    pub family: Option<ExampleFamily>,
}

/// Result of a universal-model search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalResult {
    /// Join of all models of order at most the embedding bound.
    pub required: FgGroup,
    pub witness: Option<FgGroup>,
    pub obstruction: Option<Obstruction>,
    pub models_covered: usize,
    pub candidates_examined: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Models {
        models: Vec<ModelEntry>,
        /// Models outside the families named in the usual description
        /// (only for the example theory).
        outside_stated_families: Vec<FgGroup>,
    },
    JointEmbedding {
        successes: Vec<PairSuccess>,
        failures: Vec<PairFailure>,
    },
    Amalgamation {
        base: FgGroup,
        successes: Vec<PairSuccess>,
        failures: Vec<PairFailure>,
    },
    Universal(UniversalResult),
    UniversalOver {
        base: FgGroup,
        universal: FgGroup,
        sum: FgGroup,
        /// Models `N = base ⊕ C` that embed into the sum over the base.
        covered: Vec<FgGroup>,
        failures: Vec<FgGroup>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub theory_digest: String,
    /// `(name, value)` pairs describing the bounds used.
    pub scale: Vec<(String, String)>,
    pub verdict: Verdict,
    pub stats: Stats,
}

impl ClassReport {
    /// `true` unless the verdict lists a failure.
    pub fn success(&self) -> bool {
        match &self.verdict {
            Verdict::Models { .. } => true,
            Verdict::JointEmbedding { failures, .. } | Verdict::Amalgamation { failures, .. } => {
                failures.is_empty()
            }
            Verdict::Universal(u) => u.witness.is_some(),
            Verdict::UniversalOver { failures, .. } => failures.is_empty(),
        }
    }
}

fn is_example(t: &Theory) -> bool {
    crate::theory::parse_theory(EXAMPLE_THEORY)
        .map(|e| e == *t)
        .unwrap_or(false)
}

/// Report for an already filtered model list.
pub fn models_report(
    t: &Theory,
    max_order: u64,
    models: Vec<FgGroup>,
    examined: u64,
) -> ClassReport {
    let example = is_example(t);
    let mut outside = Vec::new();
    let models = models
        .into_iter()
        .map(|g| {
            let family = if example { classify_example(&g) } else { None };
            if example
                && !family
                    .as_ref()
                    .is_some_and(ExampleFamily::in_stated_families)
            {
                outside.push(g.clone());
            }
            ModelEntry { group: g, family }
        })
        .collect();
    ClassReport {
        theory_digest: t.digest(),
        scale: alloc::vec![("max_order".into(), max_order.to_string())],
        verdict: Verdict::Models {
            models,
            outside_stated_families: outside,
        },
        stats: Stats {
            groups_examined: examined,
            ..Stats::default()
        },
    }
}

/// Models up to `max_order` with their classification.
pub fn check_models(t: &Theory, max_order: u64) -> Result<ClassReport> {
    let groups = enumerate_groups(max_order);
    let examined = groups.len() as u64;
    let mut models = Vec::new();
    for g in groups {
        if model_check(&g, t)? {
            models.push(g);
        }
    }
    Ok(models_report(t, max_order, models, examined))
}

fn scope_scale(scope: &Scope) -> (String, String) {
    match scope {
        Scope::MaxOrder(b) => ("max_order".into(), b.to_string()),
        Scope::Explicit(_) => ("groups".into(), scope.to_string()),
    }
}

/// Joint embedding within the class, for every pair of models in scope.
pub fn check_jep_at_scale(t: &Theory, scope: &Scope, amalgam_bound: u64) -> Result<ClassReport> {
    let models = scope.models(t)?;
    let mut search = ExtensionSearch::new(t);
    let (mut successes, mut failures) = (Vec::new(), Vec::new());
    let mut pairs = 0;
    for (i, m) in models.iter().enumerate() {
        for n in &models[i..] {
            pairs += 1;
            let j = join(&[m, n]);
            match search.least_model_containing(&j, amalgam_bound)? {
                Some(w) => successes.push(PairSuccess {
                    left: m.clone(),
                    right: n.clone(),
                    witness: w,
                    constructed: false,
                }),
                None => failures.push(PairFailure {
                    left: m.clone(),
                    right: n.clone(),
                    obstruction: obstruction(&j, t)?,
                    join: j,
                }),
            }
        }
    }
    Ok(ClassReport {
        theory_digest: t.digest(),
        scale: alloc::vec![
            scope_scale(scope),
            ("bound".into(), amalgam_bound.to_string())
        ],
        verdict: Verdict::JointEmbedding {
            successes,
            failures,
        },
        stats: Stats {
            groups_examined: models.len() as u64,
            pairs_checked: pairs,
            candidates_examined: search.candidates,
        },
    })
}

/// Explicit pure embeddings `g1: N1 -> L`, `g2: N2 -> L` with
/// `g1 ∘ i1 = g2 ∘ i2`, for any `L` purely containing both `N1` and `N2`.
pub fn embeddings_over_base(i1: &Hom, i2: &Hom, l: &FgGroup) -> Option<(Hom, Hom)> {
    let g1 = pure_embeddable(i1.target(), l)?;
    let base_in_l = g1.compose(i1).ok()?;
    // L = g1(i1(B)) ⊕ K and N2 = i2(B) ⊕ M2; send M2 purely into K
    let k = complement(l, &base_in_l.image()).ok()?;
    let (kg, k_inc) = k.to_group();
    let r2 = retraction(i2)?;
    let (m2g, m2_inc) = r2.kernel().to_group();
    let m2_ret = retraction(&m2_inc)?;
    let n2 = i2.target();
    let id = Hom::identity(n2);
    let minus = Hom::new(
        n2.clone(),
        n2.clone(),
        i2.compose(&r2)
            .ok()?
            .matrix()
            .iter()
            .map(|row| row.iter().map(|x| -x).collect())
            .collect(),
    )
    .ok()?;
    let proj = m2_ret.compose(&id.add(&minus).ok()?).ok()?;
    let h = pure_embeddable(&m2g, &kg)?;
    let g2 = base_in_l
        .compose(&r2)
        .ok()?
        .add(&k_inc.compose(&h).ok()?.compose(&proj).ok()?)
        .ok()?;
    let ok = is_pure_embedding(&g1)
        && is_pure_embedding(&g2)
        && g1.compose(i1).ok()? == g2.compose(i2).ok()?;
    ok.then_some((g1, g2))
}

/// Amalgamation over a finite base for every pair of models in scope that
/// purely extend it: first the explicit construction, then a scan of
/// candidate models.
pub fn check_ap_at_scale(
    t: &Theory,
    base: &FgGroup,
    scope: &Scope,
    bound: u64,
) -> Result<ClassReport> {
    if base.rank() > 0 {
        return Err(Error::NotPureInjective);
    }
    let models: Vec<(FgGroup, Hom)> = scope
        .models(t)?
        .into_iter()
        .filter_map(|n| pure_embeddable(base, &n).map(|i| (n, i)))
        .collect();
    let mut search = ExtensionSearch::new(t);
    let (mut successes, mut failures) = (Vec::new(), Vec::new());
    let mut pairs = 0;
    for (a, (n1, i1)) in models.iter().enumerate() {
        for (n2, i2) in &models[a..] {
            pairs += 1;
            match amalgamate(base, i1, i2, Some(t)) {
                Ok(am) => {
                    successes.push(PairSuccess {
                        left: n1.clone(),
                        right: n2.clone(),
                        witness: am.group,
                        constructed: true,
                    });
                    continue;
                }
                Err(Error::EscapesClass(_)) => {}
                Err(e) => return Err(e),
            }
            let j = join(&[n1, n2]);
            match search.least_model_containing(&j, bound)? {
                Some(l) => {
                    if embeddings_over_base(i1, i2, &l).is_none() {
                        return Err(Error::Unsupported(alloc::format!(
                            "could not build embeddings of {n1} and {n2} into {l} over {base}"
                        )));
                    }
                    successes.push(PairSuccess {
                        left: n1.clone(),
                        right: n2.clone(),
                        witness: l,
                        constructed: false,
                    });
                }
                None => failures.push(PairFailure {
                    left: n1.clone(),
                    right: n2.clone(),
                    obstruction: obstruction(&j, t)?,
                    join: j,
                }),
            }
        }
    }
    Ok(ClassReport {
        theory_digest: t.digest(),
        scale: alloc::vec![
            ("base".into(), base.to_string()),
            scope_scale(scope),
            ("bound".into(), bound.to_string())
        ],
        verdict: Verdict::Amalgamation {
            base: base.clone(),
            successes,
            failures,
        },
        stats: Stats {
            groups_examined: models.len() as u64,
            pairs_checked: pairs,
            candidates_examined: search.candidates,
        },
    })
}

/// Least model of order at most `search_bound` into which every model of
/// order at most `embed_bound` purely embeds.
pub fn universal_at_scale(
    t: &Theory,
    embed_bound: u64,
    search_bound: u64,
) -> Result<UniversalResult> {
    let models = enumerate_models(t, embed_bound)?;
    let refs: Vec<&FgGroup> = models.iter().collect();
    let required = join(&refs);
    let mut search = ExtensionSearch::new(t);
    let witness = search.least_model_containing(&required, search_bound)?;
    let obstruction = if witness.is_none() {
        obstruction(&required, t)?
    } else {
        None
    };
    if let Some(u) = &witness {
        debug_assert!(models.iter().all(|m| pure_embeddable(m, u).is_some()));
    }
    Ok(UniversalResult {
        required,
        witness,
        obstruction,
        models_covered: models.len(),
        candidates_examined: search.candidates,
    })
}

pub fn universal_report(t: &Theory, embed_bound: u64, search_bound: u64) -> Result<ClassReport> {
    let u = universal_at_scale(t, embed_bound, search_bound)?;
    let groups = u.models_covered as u64;
    Ok(ClassReport {
        theory_digest: t.digest(),
        scale: alloc::vec![
            ("embed_bound".into(), embed_bound.to_string()),
            ("search_bound".into(), search_bound.to_string())
        ],
        stats: Stats {
            groups_examined: groups,
            candidates_examined: u.candidates_examined,
            ..Stats::default()
        },
        verdict: Verdict::Universal(u),
    })
}

/// Checks that `M ⊕ U` is universal over `M` at scale `b`: every model
/// `N = M ⊕ C` with `|C| <= b` embeds purely into `M ⊕ U` by a map that is
/// the identity on `M`. The embedding sends a complement of `M` in `N`
/// purely into `U`.
pub fn universal_over(m: &FgGroup, u: &FgGroup, t: &Theory, b: u64) -> Result<ClassReport> {
    if m.rank() > 0 {
        return Err(Error::NotPureInjective);
    }
    if !model_check(u, t)? {
        return Err(Error::EscapesClass(alloc::format!(
            "{u} (the proposed universal model)"
        )));
    }
    let (sum, inl, inr) = direct_sum(m, u);
    let (mut covered, mut failures) = (Vec::new(), Vec::new());
    let mut examined = 0;
    for c in enumerate_groups(b) {
        let n = sum_group(m, &c);
        examined += 1;
        if !model_check(&n, t)? {
            continue;
        }
        let i = pure_embeddable(m, &n).expect("M is a summand of M + C");
        let r = retraction(&i).expect("pure");
        let (cg, c_inc) = r.kernel().to_group();
        let c_ret = retraction(&c_inc).expect("kernel of a retraction is a summand");
        let embedded = pure_embeddable(&cg, u).and_then(|h| {
            // N -> M ⊕ U: (r, h ∘ projection onto the complement)
            let id = Hom::identity(&n);
            let ir = i.compose(&r).ok()?;
            let neg = Hom::new(
                n.clone(),
                n.clone(),
                ir.matrix()
                    .iter()
                    .map(|row| row.iter().map(|x| -x).collect())
                    .collect(),
            )
            .ok()?;
            let proj = c_ret.compose(&id.add(&neg).ok()?).ok()?;
            let g = inl
                .compose(&r)
                .ok()?
                .add(&inr.compose(&h).ok()?.compose(&proj).ok()?)
                .ok()?;
            (is_pure_embedding(&g) && g.compose(&i).ok()? == inl).then_some(g)
        });
        match embedded {
            Some(_) => covered.push(n),
            None => failures.push(n),
        }
    }
    Ok(ClassReport {
        theory_digest: t.digest(),
        scale: alloc::vec![("complement_bound".into(), b.to_string())],
        verdict: Verdict::UniversalOver {
            base: m.clone(),
            universal: u.clone(),
            sum,
            covered,
            failures,
        },
        stats: Stats {
            groups_examined: examined,
            ..Stats::default()
        },
    })
}

/// Pairs of models (up to `max_order`) whose direct sum is not a model.
pub fn closure_probe(t: &Theory, max_order: u64) -> Result<Vec<(FgGroup, FgGroup, FgGroup)>> {
    let models = enumerate_models(t, max_order)?;
    let mut out = Vec::new();
    for (i, a) in models.iter().enumerate() {
        for b in &models[i..] {
            let s = sum_group(a, b);
            if !model_check(&s, t)? {
                out.push((a.clone(), b.clone(), s));
            }
        }
    }
    Ok(out)
}

/// `|G / G[3]|` for a finite group, by counting elements killed by 3.
pub fn example_index(g: &FgGroup) -> Option<u64> {
    let order = g.order_u64()?;
    let killed: u64 = g
        .divisors()
        .iter()
        .map(|d| {
            num_integer::Integer::gcd(d, &Int::from(3))
                .to_u64()
                .expect("small")
        })
        .product();
    debug_assert!(Int::from(killed) >= Int::one());
    Some(order / killed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::parse_theory;

    fn g(s: &str) -> FgGroup {
        s.parse().unwrap()
    }

    fn example() -> Theory {
        parse_theory(EXAMPLE_THEORY).unwrap()
    }

    #[test]
    fn model_check_examples() {
        let t = example();
        assert!(model_check(&g("Z/9"), &t).unwrap());
        assert!(!model_check(&g("Z/7"), &t).unwrap());
        assert!(model_check(&g("Z + Z/7"), &Theory::empty()).unwrap());
        let tf = parse_theory("builtin: torsion-free").unwrap();
        assert!(model_check(&g("Z^2"), &tf).unwrap() && !model_check(&g("Z + Z/2"), &tf).unwrap());
    }

    #[test]
    fn example_models_to_ten() {
        let got = enumerate_models(&example(), 10).unwrap();
        let want: Vec<FgGroup> = [
            "0",
            "Z/2",
            "Z/3",
            "Z/2 + Z/2",
            "Z/4",
            "Z/5",
            "Z/6",
            "Z/3 + Z/3",
            "Z/9",
        ]
        .iter()
        .map(|s| g(s))
        .collect();
        assert_eq!(got, want);
        assert_eq!(enumerate_models(&Theory::empty(), 4).unwrap().len(), 5);
        assert_eq!(
            enumerate_models(&parse_theory("builtin: torsion-free").unwrap(), 50).unwrap(),
            alloc::vec![g("0")]
        );
    }

    #[test]
    fn join_and_sum() {
        assert_eq!(join(&[&g("Z/2"), &g("Z/5")]), g("Z/10"));
        assert_eq!(join(&[&g("Z/2"), &g("Z/2 + Z/2")]), g("Z/2 + Z/2"));
        assert_eq!(join(&[&g("Z/4"), &g("Z + Z/2")]), g("Z + Z/2 + Z/4"));
        assert_eq!(sum_group(&g("Z/2"), &g("Z/4 + Z/3")), g("Z/2 + Z/12"));
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify_example(&g("Z/5 + Z/3 + Z/3")),
            Some(ExampleFamily::ElementaryPlus { a0: g("Z/5"), k: 2 })
        );
        assert_eq!(
            classify_example(&g("Z/9")),
            Some(ExampleFamily::Nine { k: 0 })
        );
        let f = classify_example(&g("Z/9 + Z/3")).unwrap();
        assert!(!f.in_stated_families());
        assert_eq!(classify_example(&g("Z/7")), None);
    }

    #[test]
    fn example_index_counts() {
        assert_eq!(example_index(&g("Z/9")), Some(3));
        assert_eq!(example_index(&g("Z/6 + Z/3")), Some(2));
    }
}
