//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::*;
use domred_core::domset::{self, Domination};
use domred_core::perturb::{self, MaxK};
use domred_core::reduction::{self, build};
use domred_core::{verify, Assignment, CnfInstance, Parameter, PerturbValue};

fn exact(v: PerturbValue) -> usize {
    v.exact()
        .unwrap_or_else(|| panic!("expected an exact value, got {v}"))
}

fn at_least_two(v: PerturbValue) -> bool {
    match v {
        PerturbValue::Exact(k) => k >= 2,
        PerturbValue::Exceeds(k) => k >= 1,
        PerturbValue::Undefined => true,
        PerturbValue::Zero => false,
    }
}

fn bondage_sample() {
    let out = build(Parameter::Bondage, &instance_a());
    let g = &out.graph;
    assert_eq!(domset::domination_number(g).value, 9);
    assert_eq!(g.edge_count(), 41);
    assert!(g.is_bipartite());
    assert_eq!(
        exact(perturb::bondage_number(g, MaxK::Limit(2)).unwrap().value),
        1
    );
    let known = ["s2", "v1", "q1", "u2", "r2", "u3", "r3", "u4", "r4"];
    assert!(domset::is_dominating_set(g, known).unwrap());
}

fn total_bondage_sample() {
    let out = build(Parameter::TotalBondage, &instance_a());
    let g = &out.graph;
    assert_eq!(domset::total_domination_number(g).unwrap().value, 10);
    assert!(g.is_bipartite());
    let bt = perturb::total_bondage_number(g, MaxK::Limit(2)).unwrap();
    assert_eq!(exact(bt.value), 1);
}

fn reinforcement_sample() {
    let out = build(Parameter::Reinforcement, &instance_a());
    let g = &out.graph;
    assert_eq!(domset::domination_number(g).value, 9);
    let r = perturb::reinforcement_number(g, MaxK::Limit(2)).unwrap();
    assert_eq!(exact(r.value), 1);
}

fn total_reinforcement_sample() {
    let out = build(Parameter::TotalReinforcement, &instance_b());
    let g = &out.graph;
    assert_eq!(domset::total_domination_number(g).unwrap().value, 10);
    let rt = perturb::total_reinforcement_number(g, MaxK::Limit(2)).unwrap();
    assert_eq!(exact(rt.value), 1);
    let h = g.add_edges([("u1", "s2")]).unwrap();
    assert!(domset::find_within(&h, Domination::Total, 9)
        .unwrap()
        .is_some());
}

fn fuzz_equivalence() {
    let mut failures = Vec::new();
    let mut sat = 0;
    for i in 0..100u64 {
        let n = 3 + (i % 2) as usize;
        let m = 1 + (i / 2 % 8) as usize;
        let inst = CnfInstance::random(n, m, 0xACCE_0000 + i).unwrap();
        sat += inst.is_satisfiable() as usize;
        for kind in KINDS {
            let r = verify::verify(kind, &inst, true);
            if !r.pass {
                failures.push(r.to_text());
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
    println!("    100 instances x 4 verifiers, {sat} satisfiable");
}

fn unsat_control() {
    let inst = all_sign_patterns();
    assert!(!inst.is_satisfiable());
    assert!((0..8u32).all(|mask| {
        let t = Assignment::new((0..3).map(|b| mask >> b & 1 == 1).collect());
        !inst.evaluate(&t).unwrap()
    }));
    let n = 3;

    let g = build(Parameter::Bondage, &inst).graph;
    assert!(domset::domination_number(&g).value >= 2 * n + 2);
    assert!(at_least_two(
        perturb::bondage_number(&g, MaxK::Limit(2)).unwrap().value
    ));

    let g = build(Parameter::TotalBondage, &inst).graph;
    assert!(domset::total_domination_number(&g).unwrap().value >= 2 * n + 3);
    assert!(at_least_two(
        perturb::total_bondage_number(&g, MaxK::Limit(2))
            .unwrap()
            .value
    ));

    let g = build(Parameter::Reinforcement, &inst).graph;
    assert_eq!(domset::domination_number(&g).value, 2 * n + 1);
    assert!(at_least_two(
        perturb::reinforcement_number(&g, MaxK::Limit(2))
            .unwrap()
            .value
    ));

    let g = build(Parameter::TotalReinforcement, &inst).graph;
    assert_eq!(
        domset::total_domination_number(&g).unwrap().value,
        2 * n + 2
    );
    assert!(at_least_two(
        perturb::total_reinforcement_number(&g, MaxK::Limit(2))
            .unwrap()
            .value
    ));

    for kind in KINDS {
        let r = verify::verify(kind, &inst, true);
        assert!(r.pass && !r.sat, "{}", r.to_text());
    }
}

fn oracle_equivalence() {
    let mut rng = rng(0x0AC1E);
    let mut compared = [0usize; 6];
    for _ in 0..200 {
        let n = 1 + (rand::Rng::random_range(&mut rng, 0..7usize));
        let p = rand::Rng::random_range(&mut rng, 0.15..0.85);
        let g = random_graph(n, p, &mut rng);
        let s = Small::from_graph(&g);
        assert_eq!(
            domset::domination_number(&g).value,
            s.minimum(false).unwrap()
        );
        compared[0] += 1;
        if g.edge_count() > 0 {
            let b = perturb::bondage_number(&g, MaxK::Unbounded).unwrap().value;
            assert_eq!(
                b,
                perturbation(&g, Parameter::Bondage),
                "b on {}",
                g.to_text()
            );
            compared[2] += 1;
        }
        let r = perturb::reinforcement_number(&g, MaxK::Unbounded)
            .unwrap()
            .value;
        assert_eq!(
            r,
            perturbation(&g, Parameter::Reinforcement),
            "r on {}",
            g.to_text()
        );
        compared[4] += 1;
        if s.has_isolated() {
            assert!(domset::total_domination_number(&g).is_err());
            continue;
        }
        let gt = domset::total_domination_number(&g).unwrap().value;
        assert_eq!(gt, s.minimum(true).unwrap());
        compared[1] += 1;
        let bt = perturb::total_bondage_number(&g, MaxK::Unbounded)
            .unwrap()
            .value;
        assert_eq!(
            bt,
            perturbation(&g, Parameter::TotalBondage),
            "b_t on {}",
            g.to_text()
        );
        compared[3] += 1;
        let rt = perturb::total_reinforcement_number(&g, MaxK::Unbounded)
            .unwrap()
            .value;
        assert_eq!(
            rt,
            perturbation(&g, Parameter::TotalReinforcement),
            "r_t on {}",
            g.to_text()
        );
        compared[5] += 1;
    }
    println!(
        "    compared gamma={} gamma_t={} b={} b_t={} r={} r_t={}",
        compared[0], compared[1], compared[2], compared[3], compared[4], compared[5]
    );
}

fn property_suite() {
    for i in 0..50u64 {
        let n = 3 + (i % 3) as usize;
        let m = (i % 7) as usize;
        let inst = CnfInstance::random(n, m, 0x9A0B + i).unwrap();
        for kind in KINDS {
            let out = build(kind, &inst);
            let g = &out.graph;
            assert!(g.is_bipartite());
            assert_eq!(
                g.vertex_count(),
                reduction::expected_vertex_count(kind, n, m)
            );
            assert_eq!(g.edge_count(), reduction::expected_edge_count(kind, n, m));
            if let Some(t) = inst.solve() {
                let w = reduction::assignment_to_witness(&out, &t).unwrap();
                assert_eq!(w.set.len(), reduction::encoded_witness_size(kind, n));
                let target = w.target_graph(&out);
                let ok = match kind.domination() {
                    Domination::Plain => domset::is_dominating_set(&target, &w.set),
                    Domination::Total => domset::is_total_dominating_set(&target, &w.set),
                };
                assert!(ok.unwrap(), "{kind:?} witness on instance {i}");
                assert_eq!(reduction::witness_to_assignment(&out, &w.set), t);
            }
        }
        // single-edge monotonicity and the gamma_t sandwich
        let g = build(Parameter::TotalBondage, &inst).graph;
        single_edge_monotonicity(&g);
        let mut r = rng(0x5EED + i);
        single_edge_monotonicity(&random_graph(4 + (i % 6) as usize, 0.4, &mut r));
    }
}

fn single_edge_monotonicity(g: &domred_core::Graph) {
    let min = |h: &domred_core::Graph, mode| domset::minimum(h, mode).ok().map(|r| r.value);
    for mode in [Domination::Plain, Domination::Total] {
        let Some(base) = min(g, mode) else { continue };
        // one edge moves gamma by at most 1 and gamma_t by at most 2
        let step = if mode == Domination::Plain { 1 } else { 2 };
        if mode == Domination::Total {
            let gamma = min(g, Domination::Plain).unwrap();
            assert!(gamma <= base && base <= 2 * gamma);
        }
        for (a, b) in g.edges() {
            if let Some(v) = min(&g.remove_edges([(&a, &b)]).unwrap(), mode) {
                assert!(base <= v && v <= base + step, "{mode:?} minus {a}{b}");
            }
        }
        for (a, b) in g.complement_edges() {
            let v = min(&g.add_edges([(&a, &b)]).unwrap(), mode).unwrap();
            assert!(v <= base && base <= v + step, "{mode:?} plus {a}{b}");
        }
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn()); 8] = [
        (
            "bondage gadget on instance A: gamma=9, 41 edges, bipartite, b=1",
            bondage_sample,
        ),
        (
            "total bondage gadget on instance A: gamma_t=10, bipartite, b_t=1",
            total_bondage_sample,
        ),
        (
            "reinforcement gadget on instance A: gamma=9, r=1",
            reinforcement_sample,
        ),
        (
            "total reinforcement gadget on instance B: gamma_t=10, r_t=1, u1s2 lowers to 9",
            total_reinforcement_sample,
        ),
        (
            "fuzz: 100 random instances pass all four verifiers",
            fuzz_equivalence,
        ),
        (
            "unsatisfiable control: bounds and parameters >= 2",
            unsat_control,
        ),
        (
            "solver oracle equivalence on 200 random graphs",
            oracle_equivalence,
        ),
        ("property suite over 50 random instances", property_suite),
    ];
    panic::set_hook(Box::new(|info| eprintln!("    {info}")));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = panic::catch_unwind(AssertUnwindSafe(check)).is_ok();
        failed += !ok as usize;
        println!(
            "criterion {} {} ({:.2?}): {name}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            start.elapsed()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
