//! Claim checkers for the four reductions and a seeded fuzz driver.
//!
//! Each verifier builds the gadget graph for an instance, solves the
//! instance with the DPLL oracle, computes the gadget's parameters exactly,
//! and records one [`ClaimCheck`] per property the reduction relies on. A
//! failed check never stops the remaining ones.

use std::fmt::{self, Display, Write as _};

use serde::{Serialize, Serializer};

use crate::cnf::{Assignment, CnfError, CnfInstance};
use crate::domset::{self, Domination};
use crate::graph::{Graph, Label};
use crate::perturb::{self, MaxK, Parameter, PerturbValue};
use crate::reduction::{self, ReductionOutput};

/// Perturbation searches inside the verifiers stop at this witness size.
pub const VERIFY_MAX_K: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub id: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub kind: Parameter,
    pub n: usize,
    pub m: usize,
    pub seed: Option<u64>,
    pub sat: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_t: Option<usize>,
    #[serde(serialize_with = "as_display")]
    pub perturbation: PerturbValue,
    pub perturbation_witness: Vec<(Label, Label)>,
    pub claims: Vec<ClaimCheck>,
    pub deep_checked: bool,
    pub pass: bool,
    pub instance: String,
    pub elapsed_ms: u64,
}

fn as_display<S: Serializer>(v: &PerturbValue, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl VerificationReport {
    /// γ or γ_t of the gadget graph, whichever the kind measures.
    pub fn base_value(&self) -> usize {
        self.gamma.or(self.gamma_t).unwrap_or_default()
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimCheck> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimCheck> {
        self.claims.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Line-oriented rendering; `elapsed_ms` is the only timing-dependent line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let base = match (self.gamma, self.gamma_t) {
            (Some(g), _) => format!("gamma={g}"),
            (_, Some(g)) => format!("gamma_t={g}"),
            _ => String::new(),
        };
        let seed = self.seed.map_or("-".to_string(), |x| x.to_string());
        let _ = writeln!(
            s,
            "report kind={} n={} m={} seed={seed} sat={} {base} {}={} deep={}",
            kind_name(self.kind),
            self.n,
            self.m,
            self.sat,
            self.kind.symbol(),
            self.perturbation,
            self.deep_checked
        );
        for c in &self.claims {
            let _ = writeln!(
                s,
                "claim {} {} expected={} observed={}",
                c.id,
                if c.pass { "pass" } else { "FAIL" },
                c.expected,
                c.observed
            );
        }
        let _ = writeln!(s, "result {}", if self.pass { "PASS" } else { "FAIL" });
        let _ = writeln!(s, "elapsed_ms {}", self.elapsed_ms);
        s
    }
}

pub fn kind_name(kind: Parameter) -> &'static str {
    match kind {
        Parameter::Bondage => "bondage",
        Parameter::TotalBondage => "total-bondage",
        Parameter::Reinforcement => "reinforcement",
        Parameter::TotalReinforcement => "total-reinforcement",
    }
}

pub fn parse_kind(s: &str) -> Option<Parameter> {
    Some(match s {
        "bondage" => Parameter::Bondage,
        "total-bondage" => Parameter::TotalBondage,
        "reinforcement" => Parameter::Reinforcement,
        "total-reinforcement" => Parameter::TotalReinforcement,
        _ => return None,
    })
}

struct Stopwatch {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Stopwatch {
    fn start() -> Self {
        Stopwatch {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    fn elapsed_ms(&self) -> u64 {
        #[cfg(not(target_arch = "wasm32"))]
        {
            self.start.elapsed().as_millis() as u64
        }
        #[cfg(target_arch = "wasm32")]
        {
            0
        }
    }
}

struct Checks(Vec<ClaimCheck>);

impl Checks {
    fn add(&mut self, id: &str, expected: impl Display, observed: impl Display, pass: bool) {
        self.0.push(ClaimCheck {
            id: id.to_string(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            pass,
        });
    }
}

fn show(set: &[Label]) -> String {
    let names: Vec<&str> = set.iter().map(Label::as_str).collect();
    format!("{{{}}}", names.join(","))
}

fn structural(checks: &mut Checks, out: &ReductionOutput) {
    let (n, m) = (out.n(), out.m());
    checks.add(
        "bipartite",
        true,
        out.graph.is_bipartite(),
        out.graph.is_bipartite(),
    );
    let (ev, ee) = (
        reduction::expected_vertex_count(out.kind, n, m),
        reduction::expected_edge_count(out.kind, n, m),
    );
    let (gv, ge) = (out.graph.vertex_count(), out.graph.edge_count());
    checks.add("vertex-count", ev, gv, ev == gv);
    checks.add("edge-count", ee, ge, ee == ge);
}

/// First edge whose removal leaves a graph without a (total) dominating set
/// of size `bound`. Removals that isolate a vertex are skipped in total mode.
fn removal_bound_violation(g: &Graph, mode: Domination, bound: usize) -> Option<(Label, Label)> {
    g.edge_indices().into_iter().find_map(|(i, j)| {
        if mode == Domination::Total && (g.degree(i) == 1 || g.degree(j) == 1) {
            return None;
        }
        let h = g.remove_edge_indices(&[(i, j)]);
        match domset::find_within(&h, mode, bound).expect("no isolated vertex") {
            Some(_) => None,
            None => Some(g.label_pair(i, j)),
        }
    })
}

fn removal_raises(g: &Graph, edge: (&str, &str), mode: Domination, base: usize) -> bool {
    let h = g.remove_edges([edge]).expect("anchor edge exists");
    domset::find_within(&h, mode, base)
        .expect("no isolated vertex")
        .is_none()
}

fn encode_round_trip(checks: &mut Checks, out: &ReductionOutput, t: &Assignment) {
    let size = reduction::encoded_witness_size(out.kind, out.n());
    match reduction::assignment_to_witness(out, t) {
        Ok(w) => {
            let valid = reduction::witness_is_valid(out, &w);
            let decoded = reduction::witness_to_assignment(out, &w.set);
            let target = match &w.added_edge {
                Some((a, b)) => format!(" on G+{a}{b}"),
                None => String::new(),
            };
            checks.add(
                "witness-round-trip",
                format!("dominating set of size {size}, decodes to t"),
                format!("{}{target} valid={valid}", show(&w.set)),
                valid && w.set.len() == size && &decoded == t,
            );
        }
        Err(e) => checks.add("witness-round-trip", "encodable", e, false),
    }
}

fn label_set(names: &[String]) -> Vec<&str> {
    names.iter().map(String::as_str).collect()
}

/// Intersection size of `set` with `names`.
fn hits(set: &[Label], names: &[&str]) -> usize {
    set.iter().filter(|l| names.contains(&l.as_str())).count()
}

/// Shape every minimum set must have in a tight gadget: two vertices per
/// variable gadget, at most one literal of each variable, no clause vertex,
/// and the given anchor requirement.
fn tight_shape(out: &ReductionOutput, set: &[Label], anchor_ok: impl Fn(&[&str]) -> bool) -> bool {
    let anchors = out.anchor_labels();
    let anchor_names: Vec<&str> = anchors.iter().map(Label::as_str).collect();
    let mut in_anchor: Vec<&str> = set
        .iter()
        .map(Label::as_str)
        .filter(|s| anchor_names.contains(s))
        .collect();
    in_anchor.sort_unstable();
    let gadgets_ok = (1..=out.n()).all(|i| {
        let gadget = out.gadget(i);
        let lits = [format!("u{i}"), format!("nu{i}")];
        hits(set, &label_set(&gadget)) == 2 && hits(set, &label_set(&lits)) <= 1
    });
    let no_clause = set
        .iter()
        .all(|l| out.role(l.as_str()) != Some(reduction::Role::ClauseVertex));
    gadgets_ok && no_clause && anchor_ok(&in_anchor)
}

/// Checks every minimum set of `g` against `shape` and against the
/// decoding rule. Returns the first offending set, or the number checked.
fn check_min_sets(
    out: &ReductionOutput,
    g: &Graph,
    mode: Domination,
    shape: impl Fn(&[Label]) -> bool,
) -> Result<usize, String> {
    let sets = domset::enumerate_minimum_sets(g, mode).map_err(|e| e.to_string())?;
    for s in &sets {
        if !shape(s) {
            return Err(format!("shape violated by {}", show(s)));
        }
        let t = reduction::witness_to_assignment(out, s);
        if !out.instance.evaluate(&t).expect("total assignment") {
            return Err(format!(
                "{} decodes to a non-satisfying assignment",
                show(s)
            ));
        }
    }
    Ok(sets.len())
}

struct Prepared {
    out: ReductionOutput,
    sat: Option<Assignment>,
    checks: Checks,
    clock: Stopwatch,
}

fn prepare(kind: Parameter, inst: &CnfInstance) -> Prepared {
    let clock = Stopwatch::start();
    let out = reduction::build(kind, inst);
    let mut checks = Checks(Vec::new());
    structural(&mut checks, &out);
    Prepared {
        sat: inst.solve(),
        out,
        checks,
        clock,
    }
}

fn finish(
    p: Prepared,
    base: usize,
    perturbation: perturb::PerturbResult,
    deep_checked: bool,
) -> VerificationReport {
    let total = p.out.kind.domination() == Domination::Total;
    let pass = p.checks.0.iter().all(|c| c.pass);
    VerificationReport {
        kind: p.out.kind,
        n: p.out.n(),
        m: p.out.m(),
        seed: None,
        sat: p.sat.is_some(),
        gamma: (!total).then_some(base),
        gamma_t: total.then_some(base),
        perturbation: perturbation.value,
        perturbation_witness: perturbation.witness,
        claims: p.checks.0,
        deep_checked,
        pass,
        instance: p.out.instance.to_dimacs(),
        elapsed_ms: p.clock.elapsed_ms(),
    }
}

pub fn verify(kind: Parameter, inst: &CnfInstance, deep: bool) -> VerificationReport {
    verify_with_max_k(kind, inst, deep, VERIFY_MAX_K)
}

/// As [`verify`], with the perturbation search capped at `max_k` edges
/// (at least 1).
pub fn verify_with_max_k(
    kind: Parameter,
    inst: &CnfInstance,
    deep: bool,
    max_k: usize,
) -> VerificationReport {
    let max_k = max_k.max(1);
    match kind {
        Parameter::Bondage => check_bondage(inst, deep, max_k),
        Parameter::TotalBondage => check_total_bondage(inst, deep, max_k),
        Parameter::Reinforcement => check_reinforcement(inst, deep, max_k),
        Parameter::TotalReinforcement => check_total_reinforcement(inst, deep, max_k),
    }
}

pub fn verify_bondage(inst: &CnfInstance, deep: bool) -> VerificationReport {
    check_bondage(inst, deep, VERIFY_MAX_K)
}

fn check_bondage(inst: &CnfInstance, deep: bool, max_k: usize) -> VerificationReport {
    let mut p = prepare(Parameter::Bondage, inst);
    let n = inst.num_vars();
    let g = p.out.graph.clone();
    let sat = p.sat.is_some();
    let tight = 2 * n + 1;
    let gamma = domset::domination_number(&g).value;

    p.checks.add(
        "gamma-lower-bound",
        format!(">={tight}"),
        gamma,
        gamma >= tight,
    );
    p.checks.add(
        "gamma-tight-iff-sat",
        format!("gamma=={tight} <=> sat({sat})"),
        gamma,
        (gamma == tight) == sat,
    );
    let violation = removal_bound_violation(&g, Domination::Plain, tight + 1);
    p.checks.add(
        "edge-removal-bound",
        format!("gamma(G-e)<={} for every edge", tight + 1),
        violation
            .as_ref()
            .map_or("holds".into(), |(a, b)| format!("violated at {a}{b}")),
        violation.is_none(),
    );
    let b = perturb::bondage_number(&g, MaxK::Limit(max_k)).expect("gadget has edges");
    p.checks.add(
        "bondage-one-iff-tight",
        format!("b==1 <=> gamma=={tight}"),
        format!("b={} gamma={gamma}", b.value),
        b.value.is_one() == (gamma == tight),
    );
    p.checks.add(
        "bondage-one-iff-sat",
        format!("b==1 <=> sat({sat})"),
        b.value,
        b.value.is_one() == sat,
    );
    if sat {
        let raises = removal_raises(&g, ("s1", "s2"), Domination::Plain, gamma);
        p.checks
            .add("anchor-edge-raises", "gamma(G-s1s2)>gamma", raises, raises);
    }
    let deep_checked = deep && gamma == tight;
    if deep_checked {
        let out = &p.out;
        let r = check_min_sets(out, &g, Domination::Plain, |s| {
            tight_shape(out, s, |a| a == ["s2"])
        });
        let ok = r.is_ok();
        p.checks.add(
            "min-set-structure",
            "every gamma-set: anchor∩D={s2}, |D∩H_i|=2, <=1 literal, no c_j, decodes to a model",
            r.map_or_else(|e| e, |k| format!("{k} sets ok")),
            ok,
        );
    }
    if let Some(t) = p.sat.clone() {
        encode_round_trip(&mut p.checks, &p.out, &t);
    }
    finish(p, gamma, b, deep_checked)
}

pub fn verify_total_bondage(inst: &CnfInstance, deep: bool) -> VerificationReport {
    check_total_bondage(inst, deep, VERIFY_MAX_K)
}

fn check_total_bondage(inst: &CnfInstance, deep: bool, max_k: usize) -> VerificationReport {
    let mut p = prepare(Parameter::TotalBondage, inst);
    let n = inst.num_vars();
    let g = p.out.graph.clone();
    let sat = p.sat.is_some();
    let tight = 2 * n + 2;
    let gamma_t = domset::total_domination_number(&g)
        .expect("gadget has no isolated vertex")
        .value;

    p.checks.add(
        "gamma_t-lower-bound",
        format!(">={tight}"),
        gamma_t,
        gamma_t >= tight,
    );
    p.checks.add(
        "gamma_t-tight-iff-sat",
        format!("gamma_t=={tight} <=> sat({sat})"),
        gamma_t,
        (gamma_t == tight) == sat,
    );
    let violation = removal_bound_violation(&g, Domination::Total, tight + 1);
    p.checks.add(
        "edge-removal-bound",
        format!("gamma_t(G-e)<={} for every non-isolating edge", tight + 1),
        violation
            .as_ref()
            .map_or("holds".into(), |(a, b)| format!("violated at {a}{b}")),
        violation.is_none(),
    );
    let bt = perturb::total_bondage_number(&g, MaxK::Limit(max_k))
        .expect("gadget has no isolated vertex");
    p.checks.add(
        "total-bondage-one-iff-tight",
        format!("b_t==1 <=> gamma_t=={tight}"),
        format!("b_t={} gamma_t={gamma_t}", bt.value),
        bt.value.is_one() == (gamma_t == tight),
    );
    p.checks.add(
        "total-bondage-one-iff-sat",
        format!("b_t==1 <=> sat({sat})"),
        bt.value,
        bt.value.is_one() == sat,
    );
    if sat {
        let raises = removal_raises(&g, ("s2", "s5"), Domination::Total, gamma_t);
        p.checks.add(
            "anchor-edge-raises",
            "gamma_t(G-s2s5)>gamma_t",
            raises,
            raises,
        );
    }
    if deep {
        let out = &p.out;
        let sets = domset::enumerate_minimum_sets(&g, Domination::Total);
        let always = sets.as_ref().map_err(|e| e.to_string()).and_then(|sets| {
            for s in sets {
                let has = |x: &str| s.iter().any(|l| l.as_str() == x);
                let gadgets = (1..=n).all(|i| has(&format!("v{i}")) || has(&format!("q{i}")));
                if !has("s5") || !gadgets {
                    return Err(format!("violated by {}", show(s)));
                }
            }
            Ok(sets.len())
        });
        let ok = always.is_ok();
        p.checks.add(
            "min-set-forced-vertices",
            "every gamma_t-set contains s5 and one of v_i,q_i per variable",
            always.map_or_else(|e| e, |k| format!("{k} sets ok")),
            ok,
        );
        if gamma_t == tight {
            let r = check_min_sets(out, &g, Domination::Total, |s| {
                tight_shape(out, s, |a| a == ["s2", "s5"] || a == ["s4", "s5"])
            });
            let ok = r.is_ok();
            p.checks.add(
                "min-set-structure",
                "every gamma_t-set: anchor∩D in {{s2,s5},{s4,s5}}, |D∩H_i|=2, <=1 literal, no c_j, decodes to a model",
                r.map_or_else(|e| e, |k| format!("{k} sets ok")),
                ok,
            );
        }
    }
    if let Some(t) = p.sat.clone() {
        encode_round_trip(&mut p.checks, &p.out, &t);
    }
    finish(p, gamma_t, bt, deep)
}

/// Structural check over every complement edge `e` whose addition brings the
/// parameter down to `lowered`.
fn check_lowering_edges(
    out: &ReductionOutput,
    mode: Domination,
    lowered: usize,
    shape: impl Fn(&[Label]) -> bool,
) -> Result<usize, String> {
    let g = &out.graph;
    let mut count = 0;
    for (i, j) in g.complement_edge_indices() {
        let h = g.add_edge_indices(&[(i, j)]);
        if domset::find_within(&h, mode, lowered)
            .expect("no isolated vertex")
            .is_none()
        {
            continue;
        }
        let (a, b) = g.label_pair(i, j);
        count += 1;
        check_min_sets(out, &h, mode, &shape).map_err(|e| format!("G+{a}{b}: {e}"))?;
    }
    Ok(count)
}

pub fn verify_reinforcement(inst: &CnfInstance, deep: bool) -> VerificationReport {
    check_reinforcement(inst, deep, VERIFY_MAX_K)
}

fn check_reinforcement(inst: &CnfInstance, deep: bool, max_k: usize) -> VerificationReport {
    let mut p = prepare(Parameter::Reinforcement, inst);
    let n = inst.num_vars();
    let g = p.out.graph.clone();
    let sat = p.sat.is_some();
    let exact = 2 * n + 1;
    let gamma = domset::domination_number(&g).value;

    p.checks.add("gamma-exact", exact, gamma, gamma == exact);
    let r = perturb::reinforcement_number(&g, MaxK::Limit(max_k)).expect("infallible");
    p.checks.add(
        "reinforcement-one-iff-sat",
        format!("r==1 <=> sat({sat})"),
        r.value,
        r.value.is_one() == sat,
    );
    if deep {
        let out = &p.out;
        let res = check_lowering_edges(out, Domination::Plain, 2 * n, |s| {
            tight_shape(out, s, |a| a.is_empty())
        });
        let ok = res.is_ok();
        p.checks.add(
            "lowered-set-structure",
            "for every e with gamma(G+e)=2n, every gamma-set of G+e avoids s and c_j, |D∩H_i|=2, <=1 literal, decodes to a model",
            res.map_or_else(|e| e, |k| format!("{k} lowering edges ok")),
            ok,
        );
    }
    if let Some(t) = p.sat.clone() {
        encode_round_trip(&mut p.checks, &p.out, &t);
    }
    finish(p, gamma, r, deep)
}

pub fn verify_total_reinforcement(inst: &CnfInstance, deep: bool) -> VerificationReport {
    check_total_reinforcement(inst, deep, VERIFY_MAX_K)
}

fn check_total_reinforcement(inst: &CnfInstance, deep: bool, max_k: usize) -> VerificationReport {
    let mut p = prepare(Parameter::TotalReinforcement, inst);
    let n = inst.num_vars();
    let g = p.out.graph.clone();
    let sat = p.sat.is_some();
    let exact = 2 * n + 2;
    let gamma_t = domset::total_domination_number(&g)
        .expect("gadget has no isolated vertex")
        .value;

    p.checks
        .add("gamma_t-exact", exact, gamma_t, gamma_t == exact);
    let rt = perturb::total_reinforcement_number(&g, MaxK::Limit(max_k))
        .expect("gadget has no isolated vertex");
    p.checks.add(
        "total-reinforcement-one-iff-sat",
        format!("r_t==1 <=> sat({sat})"),
        rt.value,
        rt.value.is_one() == sat,
    );
    if deep {
        let out = &p.out;
        let res = check_lowering_edges(out, Domination::Total, 2 * n + 1, |s| {
            tight_shape(out, s, |a| !a.contains(&"s1"))
        });
        let ok = res.is_ok();
        p.checks.add(
            "lowered-set-structure",
            "for every e with gamma_t(G+e)<2n+2, every gamma_t-set of G+e avoids s1 and c_j, |D∩H_i|=2, <=1 literal, decodes to a model",
            res.map_or_else(|e| e, |k| format!("{k} lowering edges ok")),
            ok,
        );
    }
    if let Some(t) = p.sat.clone() {
        encode_round_trip(&mut p.checks, &p.out, &t);
    }
    finish(p, gamma_t, rt, deep)
}

/// Seed of the instance used in trial `i`.
pub fn trial_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(i as u64)
}

/// Runs the verifier for `kind` on `trials` random instances. Reports come
/// back in trial order.
pub fn fuzz(
    kind: Parameter,
    n: usize,
    m: usize,
    trials: usize,
    seed: u64,
    deep: bool,
) -> Result<Vec<VerificationReport>, CnfError> {
    let instances = (0..trials)
        .map(|i| {
            let s = trial_seed(seed, i);
            CnfInstance::random(n, m, s).map(|inst| (s, inst))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if trials == 0 && n < 3 {
        return Err(CnfError::TooFewVariables(n));
    }
    let run = |(s, inst): &(u64, CnfInstance)| {
        let mut r = verify(kind, inst, deep);
        r.seed = Some(*s);
        r
    };
    #[cfg(feature = "parallel")]
    let reports = {
        use rayon::prelude::*;
        instances.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let reports = instances.iter().map(run).collect();
    Ok(reports)
}

/// Pass/fail totals over a batch of reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub satisfiable: usize,
}

impl FuzzSummary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let passed = reports.iter().filter(|r| r.pass).count();
        FuzzSummary {
            trials: reports.len(),
            passed,
            failed: reports.len() - passed,
            satisfiable: reports.iter().filter(|r| r.sat).count(),
        }
    }
}

impl Display for FuzzSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "trials={} passed={} failed={} sat={}",
            self.trials, self.passed, self.failed, self.satisfiable
        )
    }
}
