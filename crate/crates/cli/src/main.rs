//! `m2pddl`: command-line front end for the model-to-PDDL toolkit.
//!
//! One subcommand per workflow stage so each phase is independently
//! scriptable: `validate` (model analysis through domain checks),
//! `generate` (the full generation pipeline), `plan` (ground and solve),
//! `check-plan` (plan simulation), and `roundtrip` (parser/printer fixed
//! point).
//!
//! Exit codes: 0 success, 1 diagnostics with errors, 2 usage error,
//! 3 resource limit. Diagnostics go to stderr, data to stdout.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use m2pddl_core::diag::{Code, Diagnostic, Location};
use m2pddl_core::generator::{generate_domain, run_pipeline, PipelineConfig};
use m2pddl_core::model::{load_model, select_scope};
use m2pddl_core::pddl::ast::Ident;
use m2pddl_core::pddl::{
    parse_domain, parse_problem, render_domain, render_problem, validate_domain, validate_problem,
};
use m2pddl_core::planner::{
    ground, parse_plan, render_plan, solve, validate_plan, GroundOptions, SolveOptions,
    SolveOutcome, Strategy,
};
use m2pddl_core::profile::{bind_actions, bind_static, check_profile, StereotypeCatalog};

const EXIT_OK: u8 = 0;
const EXIT_DIAGNOSTICS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE_LIMIT: u8 = 3;

/// Environment variable overriding the planner node cap.
const NODE_CAP_ENV: &str = "M2PDDL_NODE_CAP";

#[derive(Parser)]
#[command(name = "m2pddl", version, about = "Compile system/product models to PDDL, then solve and validate")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model document: structure, profile conformance, binding,
    /// and domain validity
    Validate {
        /// Path to the .sysmodel document
        model: PathBuf,
        /// Restrict checking to this containment scope root
        #[arg(long)]
        scope: Option<String>,
    },
    /// Run the generation pipeline and write the PDDL artifacts
    Generate {
        /// Path to the .sysmodel document
        model: PathBuf,
        /// Path to the product CSV
        product: PathBuf,
        /// Path to the annotation .rules file
        rules: PathBuf,
        /// Output directory for the generated files
        #[arg(long)]
        out: PathBuf,
        /// Problem name; also names the output files
        #[arg(long)]
        name: String,
        /// Restrict generation to this containment scope root
        #[arg(long)]
        scope: Option<String>,
    },
    /// Ground a generated task and search for a plan
    Plan {
        domain: PathBuf,
        problem: PathBuf,
        /// Search strategy: bfs or greedy-goalcount
        #[arg(long, value_parser = parse_strategy)]
        strategy: Strategy,
        /// Where to write the plan file
        #[arg(long)]
        out: PathBuf,
    },
    /// Simulate a plan file against domain and problem
    CheckPlan {
        domain: PathBuf,
        problem: PathBuf,
        plan: PathBuf,
    },
    /// Parse, reprint, and reparse a PDDL file; verify the fixed point
    Roundtrip {
        /// A domain or problem file
        pddl: PathBuf,
    },
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Validate { model, scope } => cmd_validate(&model, scope.as_deref()),
        Command::Generate {
            model,
            product,
            rules,
            out,
            name,
            scope,
        } => cmd_generate(&model, &product, &rules, &out, &name, scope.as_deref()),
        Command::Plan {
            domain,
            problem,
            strategy,
            out,
        } => cmd_plan(&domain, &problem, strategy, &out),
        Command::CheckPlan { domain, problem, plan } => cmd_check_plan(&domain, &problem, &plan),
        Command::Roundtrip { pddl } => cmd_roundtrip(&pddl),
    };
    ExitCode::from(code)
}

fn report(diags: &[Diagnostic]) {
    for d in diags {
        eprintln!("{d}");
    }
}

fn fail(diags: Vec<Diagnostic>) -> u8 {
    report(&diags);
    EXIT_DIAGNOSTICS
}

fn read_file(path: &Path) -> Result<String, Vec<Diagnostic>> {
    std::fs::read_to_string(path).map_err(|e| {
        vec![Diagnostic::error(
            Code::IoError,
            Location::Path(path.display().to_string()),
            format!("cannot read input: {e}"),
        )]
    })
}

fn cmd_validate(model_path: &Path, scope: Option<&str>) -> u8 {
    let text = match read_file(model_path) {
        Ok(t) => t,
        Err(d) => return fail(d),
    };
    let model = match load_model(&text) {
        Ok(m) => m,
        Err(d) => return fail(d),
    };
    let model = match scope {
        None => model,
        Some(root) => match select_scope(&model, root) {
            Ok(m) => m,
            Err(d) => return fail(d),
        },
    };
    let profile_diags = check_profile(&model, StereotypeCatalog::standard());
    report(&profile_diags);
    if m2pddl_core::diag::has_errors(&profile_diags) {
        return EXIT_DIAGNOSTICS;
    }
    let binding = match bind_static(&model).and_then(|b| bind_actions(&model, b)) {
        Ok(b) => b,
        Err(d) => return fail(d),
    };
    match generate_domain(&binding) {
        Ok(domain) => {
            println!(
                "ok: domain '{}' with {} type(s), {} predicate(s), {} action(s)",
                domain.name,
                domain.types.len(),
                domain.predicates.len(),
                domain.actions.len()
            );
            EXIT_OK
        }
        Err(d) => fail(d),
    }
}

fn cmd_generate(
    model_path: &Path,
    product_path: &Path,
    rules_path: &Path,
    out: &Path,
    name: &str,
    scope: Option<&str>,
) -> u8 {
    let problem_name = match Ident::parse(name) {
        Ok(n) => n,
        Err(e) => {
            eprintln!("error: --name '{name}' is not a PDDL identifier: {e}");
            return EXIT_USAGE;
        }
    };
    let config = PipelineConfig {
        scope_root: scope.map(str::to_string),
        key_column: None,
        rules_path: rules_path.to_path_buf(),
        output_dir: out.to_path_buf(),
        problem_name,
    };
    match run_pipeline(model_path, product_path, &config) {
        Ok(rep) => {
            report(&rep.diagnostics);
            println!("{}", rep.summary());
            EXIT_OK
        }
        Err(d) => fail(d),
    }
}

fn node_cap_from_env() -> Result<usize, String> {
    match std::env::var(NODE_CAP_ENV) {
        Err(_) => Ok(SolveOptions::default().node_cap),
        Ok(raw) => raw
            .parse::<usize>()
            .map_err(|_| format!("{NODE_CAP_ENV}='{raw}' is not a number")),
    }
}

fn cmd_plan(domain_path: &Path, problem_path: &Path, strategy: Strategy, out: &Path) -> u8 {
    let node_cap = match node_cap_from_env() {
        Ok(n) => n,
        Err(msg) => {
            eprintln!("usage error: {msg}");
            return EXIT_USAGE;
        }
    };

    let (domain, problem) = match load_task(domain_path, problem_path) {
        Ok(pair) => pair,
        Err(code) => return code,
    };

    let task = match ground(&domain, &problem, &GroundOptions::default()) {
        Ok(t) => t,
        Err(d) => {
            let limit = d.iter().any(|x| x.code == Code::GroundingExplosion);
            report(&d);
            return if limit { EXIT_RESOURCE_LIMIT } else { EXIT_DIAGNOSTICS };
        }
    };

    match solve(&task, strategy, &SolveOptions { node_cap }) {
        SolveOutcome::Solved(plan) => {
            let steps = task.plan_steps(&plan);
            if let Err(e) = std::fs::write(out, render_plan(&steps)) {
                return fail(vec![Diagnostic::error(
                    Code::IoError,
                    Location::Path(out.display().to_string()),
                    format!("cannot write plan: {e}"),
                )]);
            }
            println!("plan length {}", plan.cost());
            EXIT_OK
        }
        SolveOutcome::Unsolvable => {
            eprintln!("unsolvable");
            EXIT_DIAGNOSTICS
        }
        SolveOutcome::ResourceLimit { expanded } => {
            eprintln!("resource-limit after {expanded} expansions");
            EXIT_RESOURCE_LIMIT
        }
    }
}

/// Parse and cross-validate a domain/problem file pair.
fn load_task(
    domain_path: &Path,
    problem_path: &Path,
) -> Result<(m2pddl_core::pddl::PddlDomain, m2pddl_core::pddl::PddlProblem), u8> {
    let domain_text = read_file(domain_path).map_err(fail)?;
    let problem_text = read_file(problem_path).map_err(fail)?;

    let domain = match parse_domain(&domain_text) {
        Ok(out) => {
            report(&out.warnings);
            out.value
        }
        Err(d) => return Err(fail(d)),
    };
    let domain_diags = validate_domain(&domain);
    report(&domain_diags);
    if m2pddl_core::diag::has_errors(&domain_diags) {
        return Err(EXIT_DIAGNOSTICS);
    }

    let problem = match parse_problem(&problem_text) {
        Ok(out) => {
            report(&out.warnings);
            out.value
        }
        Err(d) => return Err(fail(d)),
    };
    let problem_diags = validate_problem(&problem, &domain);
    report(&problem_diags);
    if m2pddl_core::diag::has_errors(&problem_diags) {
        return Err(EXIT_DIAGNOSTICS);
    }

    Ok((domain, problem))
}

fn cmd_check_plan(domain_path: &Path, problem_path: &Path, plan_path: &Path) -> u8 {
    let (domain, problem) = match load_task(domain_path, problem_path) {
        Ok(pair) => pair,
        Err(code) => return code,
    };
    let plan_text = match read_file(plan_path) {
        Ok(t) => t,
        Err(d) => return fail(d),
    };
    let steps = match parse_plan(&plan_text) {
        Ok(s) => s,
        Err(d) => return fail(d),
    };
    let verdict = validate_plan(&domain, &problem, &steps);
    if verdict.valid {
        println!("VALID");
        EXIT_OK
    } else {
        println!(
            "INVALID at step {}: {}",
            verdict.failure_step.unwrap(),
            verdict.reason.unwrap()
        );
        EXIT_DIAGNOSTICS
    }
}

fn cmd_roundtrip(pddl_path: &Path) -> u8 {
    let text = match read_file(pddl_path) {
        Ok(t) => t,
        Err(d) => return fail(d),
    };

    let form = match m2pddl_core::pddl::sexpr::read_one(&text) {
        Ok(f) => f,
        Err(d) => return fail(vec![d]),
    };
    let file_kind = form
        .list()
        .and_then(|items| items.get(1))
        .and_then(|header| header.head())
        .unwrap_or("");

    let (canonical, reparsed_equal) = match file_kind {
        "domain" => match parse_domain(&text) {
            Err(d) => return fail(d),
            Ok(out) => {
                let canonical = render_domain(&out.value);
                match parse_domain(&canonical) {
                    Err(d) => return fail(d),
                    Ok(second) => (canonical, second.value == out.value),
                }
            }
        },
        "problem" => match parse_problem(&text) {
            Err(d) => return fail(d),
            Ok(out) => {
                let canonical = render_problem(&out.value);
                match parse_problem(&canonical) {
                    Err(d) => return fail(d),
                    Ok(second) => (canonical, second.value == out.value),
                }
            }
        },
        other => {
            eprintln!("error syntax-error - expected (define (domain ...)) or (define (problem ...)), found '{other}'");
            return EXIT_DIAGNOSTICS;
        }
    };

    if !reparsed_equal {
        eprintln!("roundtrip failed: reparsed AST differs from the original parse");
        return EXIT_DIAGNOSTICS;
    }
    if canonical == text {
        println!("roundtrip ok: input is canonical (zero byte diff)");
    } else {
        println!(
            "roundtrip ok: input normalizes to canonical form ({} -> {} bytes)",
            text.len(),
            canonical.len()
        );
    }
    EXIT_OK
}
