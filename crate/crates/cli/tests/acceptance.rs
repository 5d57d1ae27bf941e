//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Criteria:
//!  1. end-to-end fixture reproduction (goldens, re-validation, bfs plan
//!     length against the frozen oracle value) under 5 s
//!  2. 500-case parse/print round-trip with zero failures
//!  3. grounding exactness against the enumeration oracle on 50 models
//!  4. solver–validator agreement on 200 solvable tasks
//!  5. change locality under product growth
//!  6. fault injection over the 12 validator diagnostic codes
//!  7. validator mutation testing against the independent simulator
//!  8. 10-rivet instance solved by greedy search in under 10 s

mod support;

use std::collections::BTreeSet;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::Rng;
use rand::SeedableRng;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use m2pddl_core::pddl::ast::{Ident, PddlDomain, PddlProblem};
use m2pddl_core::pddl::{
    parse_domain, parse_problem, render_domain, render_problem, validate_domain, validate_problem,
};
use m2pddl_core::planner::{
    ground, solve, validate_plan, GroundOptions, PlanStep, SolveOptions, SolveOutcome, Strategy,
};
use m2pddl_testkit::gen::{random_domain, random_problem, GenConfig};
use m2pddl_testkit::grammar;
use m2pddl_testkit::oracle;

use support::{exit_code, fixtures_root, path_str, run, stderr, stdout};

#[derive(Deserialize)]
struct Manifest {
    fixture: Vec<FixtureEntry>,
}

#[derive(Deserialize)]
#[serde(rename_all = "kebab-case")]
struct FixtureEntry {
    name: String,
    #[allow(dead_code)]
    num_rivets: usize,
    #[allow(dead_code)]
    num_types: usize,
    model_path: String,
    product_path: String,
    rules_path: String,
    expected: Expected,
}

#[derive(Deserialize)]
#[serde(rename_all = "kebab-case")]
struct Expected {
    plan_length_bfs: usize,
    ground_actions: usize,
    domain_sha256: Option<String>,
    problem_sha256: Option<String>,
    domain_golden: Option<String>,
    problem_golden: Option<String>,
}

fn manifest() -> Manifest {
    let text = std::fs::read_to_string(fixtures_root().join("aircraft/manifest.toml")).unwrap();
    toml::from_str(&text).unwrap()
}

fn entry(name: &str) -> FixtureEntry {
    manifest()
        .fixture
        .into_iter()
        .find(|f| f.name == name)
        .unwrap_or_else(|| panic!("manifest entry '{name}'"))
}

fn fixture_path(rel: &str) -> String {
    path_str(&fixtures_root().join(rel))
}

fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

fn parse_task(domain_text: &str, problem_text: &str) -> (PddlDomain, PddlProblem) {
    let domain = parse_domain(domain_text).expect("domain parses").value;
    let problem = parse_problem(problem_text).expect("problem parses").value;
    assert!(validate_domain(&domain).is_empty(), "domain re-validates");
    assert!(
        validate_problem(&problem, &domain).is_empty(),
        "problem re-validates"
    );
    (domain, problem)
}

/// Criterion 1: cmd_generate on the (4 rivets, 2 types) fixture emits files
/// that re-parse and re-validate, match the frozen goldens byte-for-byte,
/// and solve under bfs with exactly the manifest plan length. Budget: 5 s.
#[test]
fn criterion_1_end_to_end_workflow_reproduction() {
    let started = Instant::now();
    let fx = entry("aircraft-4");
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");

    let out = run(&[
        "generate",
        &fixture_path(&fx.model_path),
        &fixture_path(&fx.product_path),
        &fixture_path(&fx.rules_path),
        "--out",
        &path_str(&out_dir),
        "--name",
        "aircraft-4",
    ]);
    assert_eq!(exit_code(&out), 0, "generate: {}", stderr(&out));

    let domain_text = std::fs::read_to_string(out_dir.join("aircraft-4.domain.pddl")).unwrap();
    let problem_text = std::fs::read_to_string(out_dir.join("aircraft-4.problem.pddl")).unwrap();

    // (a) re-parse and re-validate with zero errors
    parse_task(&domain_text, &problem_text);

    // goldens are themselves accepted by the independent grammar checker
    grammar::check_domain_text(&domain_text).expect("grammar checker accepts the domain");
    grammar::check_problem_text(&problem_text).expect("grammar checker accepts the problem");

    // (b) byte-for-byte golden match, pinned by the manifest digests
    let golden_domain =
        std::fs::read_to_string(fixtures_root().join(fx.expected.domain_golden.as_ref().unwrap()))
            .unwrap();
    let golden_problem = std::fs::read_to_string(
        fixtures_root().join(fx.expected.problem_golden.as_ref().unwrap()),
    )
    .unwrap();
    assert_eq!(domain_text, golden_domain, "domain bytes match the golden");
    assert_eq!(problem_text, golden_problem, "problem bytes match the golden");
    assert_eq!(
        sha256_hex(domain_text.as_bytes()),
        *fx.expected.domain_sha256.as_ref().unwrap()
    );
    assert_eq!(
        sha256_hex(problem_text.as_bytes()),
        *fx.expected.problem_sha256.as_ref().unwrap()
    );

    // (c) solvable with bfs at exactly the frozen oracle plan length
    let plan_path = dir.path().join("aircraft-4.plan");
    let out = run(&[
        "plan",
        &path_str(&out_dir.join("aircraft-4.domain.pddl")),
        &path_str(&out_dir.join("aircraft-4.problem.pddl")),
        "--strategy",
        "bfs",
        "--out",
        &path_str(&plan_path),
    ]);
    assert_eq!(exit_code(&out), 0, "plan: {}", stderr(&out));
    assert_eq!(
        stdout(&out).trim(),
        format!("plan length {}", fx.expected.plan_length_bfs)
    );

    let out = run(&[
        "check-plan",
        &path_str(&out_dir.join("aircraft-4.domain.pddl")),
        &path_str(&out_dir.join("aircraft-4.problem.pddl")),
        &path_str(&plan_path),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "VALID");

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "budget exceeded: {elapsed:?}");
    println!(
        "[PASS] criterion 1: end-to-end reproduction (goldens byte-equal, bfs length {}, {:.2}s < 5s)",
        fx.expected.plan_length_bfs,
        elapsed.as_secs_f64()
    );
}

/// Criterion 2: 500 randomized well-formed domains and problems satisfy
/// parse . print = identity (structural) and print . parse . print = print
/// (bytes). Zero failures tolerated.
#[test]
fn criterion_2_roundtrip_suite() {
    let cfg = GenConfig::roundtrip();
    for seed in 0..500u64 {
        let mut rng = StdRng::seed_from_u64(seed);
        let domain = random_domain(&mut rng, &cfg);
        let problem = random_problem(&mut rng, &domain, &cfg);

        let d_text = render_domain(&domain);
        let d_back = parse_domain(&d_text).expect("canonical domain parses").value;
        assert_eq!(d_back, domain, "seed {seed}: domain parse.print identity");
        assert_eq!(render_domain(&d_back), d_text, "seed {seed}: domain byte fixed point");

        let p_text = render_problem(&problem);
        let p_back = parse_problem(&p_text).expect("canonical problem parses").value;
        assert_eq!(p_back, problem, "seed {seed}: problem parse.print identity");
        assert_eq!(render_problem(&p_back), p_text, "seed {seed}: problem byte fixed point");
    }
    println!("[PASS] criterion 2: 500/500 round-trips structurally identical and byte-stable");
}

/// Criterion 3: on 50 randomized small models the ground-action count
/// equals the brute-force enumeration oracle exactly.
#[test]
fn criterion_3_grounding_exactness() {
    let cfg = GenConfig::grounding();
    for seed in 0..50u64 {
        let mut rng = StdRng::seed_from_u64(seed);
        let domain = random_domain(&mut rng, &cfg);
        let problem = random_problem(&mut rng, &domain, &cfg);
        let task = ground(&domain, &problem, &GroundOptions::default()).unwrap();
        let expected = oracle::enumerate_ground_actions(&domain, &problem).len();
        assert_eq!(task.actions.len(), expected, "seed {seed}");
    }
    println!("[PASS] criterion 3: 50/50 ground-action counts equal the enumeration oracle");
}

/// Criterion 4: on 200 randomized solvable tasks (reachable space fully
/// enumerated by the oracle), every bfs plan validates and has exactly the
/// oracle's shortest length; every greedy-goalcount plan validates.
#[test]
fn criterion_4_solver_validator_agreement() {
    let cfg = GenConfig::solvable();
    let mut accepted = 0usize;
    let mut seed = 0u64;
    while accepted < 200 {
        seed += 1;
        assert!(seed < 20_000, "not enough solvable tasks generated");
        let mut rng = StdRng::seed_from_u64(seed);
        let domain = random_domain(&mut rng, &cfg);
        let problem = random_problem(&mut rng, &domain, &cfg);
        let shortest = match oracle::shortest_plan_length(&domain, &problem, 10_000) {
            oracle::OracleSearch::Solved { length, .. } => length,
            _ => continue,
        };
        accepted += 1;

        let task = ground(&domain, &problem, &GroundOptions::default()).unwrap();
        let SolveOutcome::Solved(bfs_plan) = solve(&task, Strategy::Bfs, &SolveOptions::default())
        else {
            panic!("seed {seed}: bfs must solve an oracle-solvable task");
        };
        assert_eq!(bfs_plan.cost(), shortest, "seed {seed}: bfs optimality");
        assert!(
            validate_plan(&domain, &problem, &task.plan_steps(&bfs_plan)).valid,
            "seed {seed}: bfs plan validates"
        );

        let SolveOutcome::Solved(greedy_plan) =
            solve(&task, Strategy::GreedyGoalCount, &SolveOptions::default())
        else {
            panic!("seed {seed}: greedy must solve an oracle-solvable task");
        };
        assert!(
            validate_plan(&domain, &problem, &task.plan_steps(&greedy_plan)).valid,
            "seed {seed}: greedy plan validates"
        );
    }
    println!(
        "[PASS] criterion 4: 200/200 solvable tasks — bfs optimal and valid, greedy valid \
         (last seed {seed})"
    );
}

/// Criterion 5: appending one product record changes only the problem file;
/// the domain is byte-identical and the problem gains exactly one object,
/// one init atom, one goal atom.
#[test]
fn criterion_5_change_locality() {
    let fx = entry("aircraft-4");
    let dir = tempfile::tempdir().unwrap();

    let gen = |product_path: &str, name: &str| -> (String, String) {
        let out_dir = dir.path().join(name);
        let out = run(&[
            "generate",
            &fixture_path(&fx.model_path),
            product_path,
            &fixture_path(&fx.rules_path),
            "--out",
            &path_str(&out_dir),
            "--name",
            "aircraft-4",
        ]);
        assert_eq!(exit_code(&out), 0, "generate: {}", stderr(&out));
        (
            std::fs::read_to_string(out_dir.join("aircraft-4.domain.pddl")).unwrap(),
            std::fs::read_to_string(out_dir.join("aircraft-4.problem.pddl")).unwrap(),
        )
    };

    let (domain_before, problem_before) = gen(&fixture_path(&fx.product_path), "before");

    let mut grown = std::fs::read_to_string(fixture_path(&fx.product_path)).unwrap();
    grown.push_str("r5,frame-01,type-a\n");
    let grown_path = dir.path().join("rivets-5.csv");
    std::fs::write(&grown_path, grown).unwrap();
    let (domain_after, problem_after) = gen(&path_str(&grown_path), "after");

    assert_eq!(domain_before, domain_after, "domain file must be byte-identical");

    let before = parse_problem(&problem_before).unwrap().value;
    let after = parse_problem(&problem_after).unwrap().value;

    let objs_before: BTreeSet<_> = before.objects.iter().collect();
    let objs_after: BTreeSet<_> = after.objects.iter().collect();
    assert!(objs_before.is_subset(&objs_after));
    let new_objs: Vec<_> = objs_after.difference(&objs_before).collect();
    assert_eq!(new_objs.len(), 1, "exactly one new object: {new_objs:?}");

    assert!(before.init.is_subset(&after.init));
    assert_eq!(after.init.len(), before.init.len() + 1, "exactly one new init atom");

    let goals_before: BTreeSet<_> = before.goal.iter().collect();
    let goals_after: BTreeSet<_> = after.goal.iter().collect();
    assert!(goals_before.is_subset(&goals_after));
    assert_eq!(goals_after.len(), goals_before.len() + 1, "exactly one new goal atom");

    println!(
        "[PASS] criterion 5: domain byte-identical; problem diff = +1 object, +1 init, +1 goal"
    );
}

/// The 12 documented validator diagnostic codes, each seeded as a single
/// fault into the golden task files.
const FAULTS: &[(&str, bool)] = &[
    // (code, fault is in the domain file)
    ("undeclared-predicate", true),
    ("arity-mismatch", true),
    ("unknown-type", true),
    ("duplicate-name", true),
    ("unbound-variable", true),
    ("contradictory-effect", true),
    ("type-cycle", true),
    ("domain-name-mismatch", false),
    ("unknown-object", false),
    ("unknown-predicate", false),
    ("type-mismatch", false),
    ("non-ground-literal", false),
];

fn seed_fault(code: &str, domain: &str, problem: &str) -> (String, String) {
    let mut d = domain.to_string();
    let mut p = problem.to_string();
    match code {
        "undeclared-predicate" => {
            d = d.replacen("      (rivet-has-type ?v ?t)\n", "      (ghost-pred ?v ?t)\n", 1);
        }
        "arity-mismatch" => {
            d = d.replacen("      (hand-empty ?r)\n", "      (hand-empty ?r ?e)\n", 1);
        }
        "unknown-type" => {
            d = d.replacen("?s - station)", "?s - hangar)", 1);
        }
        "duplicate-name" => {
            d = d.replacen(
                "    (fastened ?v - rivet)\n",
                "    (fastened ?v - rivet)\n    (fastened ?v - rivet)\n",
                1,
            );
        }
        "unbound-variable" => {
            d = d.replacen("      (fastened ?v)\n", "      (fastened ?z)\n", 1);
        }
        "contradictory-effect" => {
            d = d.replacen(
                "      (equipped ?r ?e)\n    )\n  )\n  (:action unequip",
                "      (equipped ?r ?e)\n      (not (equipped ?r ?e))\n    )\n  )\n  (:action unequip",
                1,
            );
        }
        "type-cycle" => {
            d = d
                .replacen("    rivet - object\n", "    rivet - rivet-type\n", 1)
                .replacen("    rivet-type - object\n", "    rivet-type - rivet\n", 1);
        }
        "domain-name-mismatch" => {
            p = p.replacen("(:domain aircraft)", "(:domain spacecraft)", 1);
        }
        "unknown-object" => {
            p = p.replacen("    (fastened r1)\n", "    (fastened r9)\n", 1);
        }
        "unknown-predicate" => {
            p = p.replacen("    (hand-empty robot1)\n", "    (hand-still robot1)\n", 1);
        }
        "type-mismatch" => {
            p = p.replacen("    (hand-empty robot1)\n", "    (fastened robot1)\n", 1);
        }
        "non-ground-literal" => {
            p = p.replacen("    (fastened r2)\n", "    (fastened ?v)\n", 1);
        }
        other => panic!("unknown fault {other}"),
    }
    (d, p)
}

/// Criterion 6: each seeded single-fault fixture exits 1 with exactly the
/// expected diagnostic code among the 12.
#[test]
fn criterion_6_fault_injection() {
    let golden_domain =
        std::fs::read_to_string(fixtures_root().join("pddl/aircraft-4.domain.pddl")).unwrap();
    let golden_problem =
        std::fs::read_to_string(fixtures_root().join("pddl/aircraft-4.problem.pddl")).unwrap();
    let all_codes: BTreeSet<&str> = FAULTS.iter().map(|(c, _)| *c).collect();
    let dir = tempfile::tempdir().unwrap();

    for (code, in_domain) in FAULTS {
        let (d, p) = seed_fault(code, &golden_domain, &golden_problem);
        if *in_domain {
            assert_ne!(d, golden_domain, "{code}: fault must change the domain");
            assert_eq!(p, golden_problem);
        } else {
            assert_ne!(p, golden_problem, "{code}: fault must change the problem");
            assert_eq!(d, golden_domain);
        }
        let d_path = dir.path().join(format!("{code}.domain.pddl"));
        let p_path = dir.path().join(format!("{code}.problem.pddl"));
        std::fs::write(&d_path, &d).unwrap();
        std::fs::write(&p_path, &p).unwrap();

        let out = run(&[
            "plan",
            &path_str(&d_path),
            &path_str(&p_path),
            "--strategy",
            "bfs",
            "--out",
            &path_str(&dir.path().join("x.plan")),
        ]);
        assert_eq!(exit_code(&out), 1, "{code}: must exit 1\n{}", stderr(&out));

        let err = stderr(&out);
        let seen: BTreeSet<&str> = err
            .lines()
            .filter(|l| l.starts_with("error "))
            .filter_map(|l| l.split_whitespace().nth(1))
            .filter(|c| all_codes.contains(c))
            .collect();
        assert_eq!(
            seen,
            BTreeSet::from([*code]),
            "{code}: exactly this code must be reported\n{err}"
        );
    }
    println!("[PASS] criterion 6: 12/12 seeded faults exit 1 with exactly the expected code");
}

/// Criterion 7: 100 random single mutations of valid aircraft plans — step
/// swap, step deletion, argument substitution — judged identically by the
/// validator and the independent simulation oracle.
#[test]
fn criterion_7_validator_mutation_testing() {
    let golden_domain =
        std::fs::read_to_string(fixtures_root().join("pddl/aircraft-4.domain.pddl")).unwrap();
    let golden_problem =
        std::fs::read_to_string(fixtures_root().join("pddl/aircraft-4.problem.pddl")).unwrap();
    let (domain, problem) = parse_task(&golden_domain, &golden_problem);

    let task = ground(&domain, &problem, &GroundOptions::default()).unwrap();
    let SolveOutcome::Solved(plan) = solve(&task, Strategy::Bfs, &SolveOptions::default()) else {
        panic!("the fixture task must solve");
    };
    let base = task.plan_steps(&plan);
    assert!(validate_plan(&domain, &problem, &base).valid);

    let objects: Vec<Ident> = problem.objects.keys().cloned().collect();
    let mut rng = StdRng::seed_from_u64(42);
    let mut still_valid = 0usize;
    for case in 0..100 {
        let mut mutant: Vec<PlanStep> = base.clone();
        match rng.gen_range(0..3) {
            0 => {
                let i = rng.gen_range(0..mutant.len() - 1);
                mutant.swap(i, i + 1);
            }
            1 => {
                let i = rng.gen_range(0..mutant.len());
                mutant.remove(i);
            }
            _ => {
                let i = rng.gen_range(0..mutant.len());
                let step = &mut mutant[i];
                let j = rng.gen_range(0..step.args.len());
                let replacement = loop {
                    let cand = &objects[rng.gen_range(0..objects.len())];
                    if cand != &step.args[j] {
                        break cand.clone();
                    }
                };
                step.args[j] = replacement;
            }
        }

        let verdict = validate_plan(&domain, &problem, &mutant);
        let oracle_steps: Vec<(String, Vec<String>)> = mutant
            .iter()
            .map(|s| {
                (
                    s.action.to_string(),
                    s.args.iter().map(|a| a.to_string()).collect(),
                )
            })
            .collect();
        let oracle_verdict = oracle::simulate_plan(&domain, &problem, &oracle_steps);

        assert_eq!(
            verdict.valid, oracle_verdict.valid,
            "case {case}: validator and oracle disagree on validity of {mutant:?}"
        );
        assert_eq!(
            verdict.failure_step, oracle_verdict.failure_step,
            "case {case}: validator and oracle disagree on the failing step"
        );
        if verdict.valid {
            still_valid += 1;
        }
    }
    println!(
        "[PASS] criterion 7: 100/100 mutations judged identically by validator and oracle \
         ({still_valid} mutants re-verified valid)"
    );
}

/// Criterion 8: the 10-rivet fixture generates and solves under
/// greedy-goalcount with the default node cap in under 10 s, and its
/// ground task matches the manifest oracle count.
#[test]
fn criterion_8_scale_sanity() {
    let started = Instant::now();
    let fx = entry("aircraft-10");
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");

    let out = run(&[
        "generate",
        &fixture_path(&fx.model_path),
        &fixture_path(&fx.product_path),
        &fixture_path(&fx.rules_path),
        "--out",
        &path_str(&out_dir),
        "--name",
        "aircraft-10",
    ]);
    assert_eq!(exit_code(&out), 0, "generate: {}", stderr(&out));

    let domain_text = std::fs::read_to_string(out_dir.join("aircraft-10.domain.pddl")).unwrap();
    let problem_text = std::fs::read_to_string(out_dir.join("aircraft-10.problem.pddl")).unwrap();
    let (domain, problem) = parse_task(&domain_text, &problem_text);
    let task = ground(&domain, &problem, &GroundOptions::default()).unwrap();
    assert_eq!(task.actions.len(), fx.expected.ground_actions);

    let plan_path = dir.path().join("aircraft-10.plan");
    let out = run(&[
        "plan",
        &path_str(&out_dir.join("aircraft-10.domain.pddl")),
        &path_str(&out_dir.join("aircraft-10.problem.pddl")),
        "--strategy",
        "greedy-goalcount",
        "--out",
        &path_str(&plan_path),
    ]);
    assert_eq!(exit_code(&out), 0, "plan: {}", stderr(&out));

    let out = run(&[
        "check-plan",
        &path_str(&out_dir.join("aircraft-10.domain.pddl")),
        &path_str(&out_dir.join("aircraft-10.problem.pddl")),
        &path_str(&plan_path),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "VALID");

    // bfs on the same instance reproduces the frozen optimal length
    let SolveOutcome::Solved(bfs_plan) = solve(&task, Strategy::Bfs, &SolveOptions::default())
    else {
        panic!("bfs must solve aircraft-10");
    };
    assert_eq!(bfs_plan.cost(), fx.expected.plan_length_bfs);

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "budget exceeded: {elapsed:?}");
    println!(
        "[PASS] criterion 8: aircraft-10 greedy plan valid with default node cap \
         ({:.2}s < 10s)",
        elapsed.as_secs_f64()
    );
}
