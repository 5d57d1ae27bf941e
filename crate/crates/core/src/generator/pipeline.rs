//! The end-to-end generation pipeline.
//!
//! `generate_task` runs the in-memory stages in order and stops at the
//! first stage that reports errors, tagging every diagnostic with its stage
//! name. `run_pipeline` adds file I/O around it and `render` writes the two
//! canonical PDDL artifacts.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use super::assemble::{generate_domain, generate_problem};
use crate::diag::{Code, Diagnostic, Location, Stage};
use crate::model::{load_model, load_product_data, select_scope};
use crate::pddl::ast::{Ident, PddlDomain, PddlProblem};
use crate::pddl::printer::{print_domain, print_problem};
use crate::profile::{annotate_product, bind_actions, bind_static, check_profile, parse_rules, StereotypeCatalog};

/// Configuration for one pipeline run.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    /// Restrict the model to this containment scope before binding.
    pub scope_root: Option<String>,
    /// Product key column; `None` defers to the rules file (default `id`).
    pub key_column: Option<String>,
    pub rules_path: PathBuf,
    pub output_dir: PathBuf,
    pub problem_name: Ident,
}

/// Collection sizes of the generated ASTs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counts {
    pub types: usize,
    pub predicates: usize,
    pub actions: usize,
    pub objects: usize,
    pub init_atoms: usize,
    pub goal_atoms: usize,
}

impl Counts {
    pub fn from_asts(domain: &PddlDomain, problem: &PddlProblem) -> Counts {
        Counts {
            types: domain.types.len(),
            predicates: domain.predicates.len(),
            actions: domain.actions.len(),
            objects: problem.objects.len(),
            init_atoms: problem.init.len(),
            goal_atoms: problem.goal.len(),
        }
    }
}

impl fmt::Display for Counts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "types {}  predicates {}  actions {}  objects {}  init-atoms {}  goal-atoms {}",
            self.types, self.predicates, self.actions, self.objects, self.init_atoms,
            self.goal_atoms
        )
    }
}

/// Result of a successful render/pipeline run.
#[derive(Debug, Clone)]
pub struct GenerationReport {
    pub domain_path: PathBuf,
    pub problem_path: PathBuf,
    pub counts: Counts,
    /// Non-fatal findings collected along the way.
    pub diagnostics: Vec<Diagnostic>,
}

impl GenerationReport {
    /// Stable `key: value` lines for CLI consumption.
    pub fn summary(&self) -> String {
        format!(
            "domain: {}\nproblem: {}\ncounts: {}",
            self.domain_path.display(),
            self.problem_path.display(),
            self.counts
        )
    }
}

/// The in-memory product of the generation stages.
#[derive(Debug, Clone)]
pub struct GeneratedTask {
    pub domain: PddlDomain,
    pub problem: PddlProblem,
    pub domain_text: String,
    pub problem_text: String,
    pub counts: Counts,
    pub warnings: Vec<Diagnostic>,
}

fn tag(stage: Stage, diags: Vec<Diagnostic>) -> Vec<Diagnostic> {
    diags.into_iter().map(|d| d.with_stage(stage)).collect()
}

/// Run every in-memory stage on already-loaded input texts.
pub fn generate_task(
    model_text: &str,
    product_text: &str,
    rules_text: &str,
    scope_root: Option<&str>,
    key_column: Option<&str>,
    problem_name: Ident,
) -> Result<GeneratedTask, Vec<Diagnostic>> {
    let mut warnings: Vec<Diagnostic> = Vec::new();

    let model = load_model(model_text).map_err(|d| tag(Stage::LoadModel, d))?;

    let model = match scope_root {
        None => model,
        Some(root) => select_scope(&model, root).map_err(|d| tag(Stage::SelectScope, d))?,
    };

    let profile_diags = check_profile(&model, StereotypeCatalog::standard());
    if crate::diag::has_errors(&profile_diags) {
        return Err(tag(Stage::CheckProfile, profile_diags));
    }
    warnings.extend(tag(Stage::CheckProfile, profile_diags));

    let binding = bind_static(&model).map_err(|d| tag(Stage::BindStatic, d))?;
    let binding = bind_actions(&model, binding).map_err(|d| tag(Stage::BindActions, d))?;

    let rules = parse_rules(rules_text).map_err(|d| tag(Stage::Annotate, d))?;
    let key = key_column.unwrap_or(&rules.key_column);

    let records =
        load_product_data(product_text, key).map_err(|d| tag(Stage::LoadProduct, d))?;

    let annotations = annotate_product(&records, &rules.rules, &binding)
        .map_err(|d| tag(Stage::Annotate, d))?;

    let domain = generate_domain(&binding).map_err(|d| tag(Stage::GenerateDomain, d))?;
    let problem = generate_problem(&binding, &annotations, &domain, problem_name)
        .map_err(|d| tag(Stage::GenerateProblem, d))?;

    let domain_text = print_domain(&domain).map_err(|d| tag(Stage::GenerateDomain, d))?;
    let problem_text =
        print_problem(&problem, &domain).map_err(|d| tag(Stage::GenerateProblem, d))?;

    let counts = Counts::from_asts(&domain, &problem);
    Ok(GeneratedTask {
        domain,
        problem,
        domain_text,
        problem_text,
        counts,
        warnings,
    })
}

/// Write the two canonical artifacts for an already-generated task.
///
/// File naming is `<problem-name>.domain.pddl` / `<problem-name>.problem.pddl`
/// inside the configured output directory. Identical inputs produce
/// byte-identical files.
pub fn render(
    domain: &PddlDomain,
    problem: &PddlProblem,
    config: &PipelineConfig,
) -> Result<GenerationReport, Vec<Diagnostic>> {
    let domain_text = print_domain(domain).map_err(|d| tag(Stage::GenerateDomain, d))?;
    let problem_text =
        print_problem(problem, domain).map_err(|d| tag(Stage::GenerateProblem, d))?;
    write_artifacts(&domain_text, &problem_text, domain, problem, config, Vec::new())
}

fn write_artifacts(
    domain_text: &str,
    problem_text: &str,
    domain: &PddlDomain,
    problem: &PddlProblem,
    config: &PipelineConfig,
    diagnostics: Vec<Diagnostic>,
) -> Result<GenerationReport, Vec<Diagnostic>> {
    let io_err = |path: &Path, e: std::io::Error| {
        vec![Diagnostic::error(
            Code::IoError,
            Location::Path(path.display().to_string()),
            format!("cannot write output: {e}"),
        )
        .with_stage(Stage::Render)]
    };

    fs::create_dir_all(&config.output_dir).map_err(|e| io_err(&config.output_dir, e))?;
    let domain_path = config
        .output_dir
        .join(format!("{}.domain.pddl", config.problem_name));
    let problem_path = config
        .output_dir
        .join(format!("{}.problem.pddl", config.problem_name));
    fs::write(&domain_path, domain_text).map_err(|e| io_err(&domain_path, e))?;
    fs::write(&problem_path, problem_text).map_err(|e| io_err(&problem_path, e))?;

    Ok(GenerationReport {
        domain_path,
        problem_path,
        counts: Counts::from_asts(domain, problem),
        diagnostics,
    })
}

/// The full file-to-file pipeline:
/// load-model → select-scope → check-profile → bind-static → bind-actions →
/// load-product → annotate → generate-domain → generate-problem → render.
///
/// Stops at the first stage reporting errors; every diagnostic carries its
/// stage tag.
pub fn run_pipeline(
    model_path: &Path,
    product_path: &Path,
    config: &PipelineConfig,
) -> Result<GenerationReport, Vec<Diagnostic>> {
    let read = |path: &Path, stage: Stage| -> Result<String, Vec<Diagnostic>> {
        fs::read_to_string(path).map_err(|e| {
            vec![Diagnostic::error(
                Code::IoError,
                Location::Path(path.display().to_string()),
                format!("cannot read input: {e}"),
            )
            .with_stage(stage)]
        })
    };

    let model_text = read(model_path, Stage::LoadModel)?;
    let rules_text = read(&config.rules_path, Stage::Annotate)?;
    let product_text = read(product_path, Stage::LoadProduct)?;

    let task = generate_task(
        &model_text,
        &product_text,
        &rules_text,
        config.scope_root.as_deref(),
        config.key_column.as_deref(),
        config.problem_name.clone(),
    )?;

    write_artifacts(
        &task.domain_text,
        &task.problem_text,
        &task.domain,
        &task.problem,
        config,
        task.warnings,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::build_aircraft_fixture;

    fn config(dir: &Path, name: &str) -> PipelineConfig {
        PipelineConfig {
            scope_root: None,
            key_column: None,
            rules_path: dir.join("aircraft.rules"),
            output_dir: dir.join("out"),
            problem_name: Ident::parse(name).unwrap(),
        }
    }

    #[test]
    fn pipeline_runs_end_to_end_and_is_deterministic() {
        let fixture = build_aircraft_fixture(4, 2).unwrap();
        let tmp = tempfile::tempdir().unwrap();
        let dir = tmp.path();
        std::fs::write(dir.join("aircraft.sysmodel"), fixture.model_text()).unwrap();
        std::fs::write(dir.join("rivets.csv"), fixture.product_text()).unwrap();
        std::fs::write(dir.join("aircraft.rules"), fixture.rules_text()).unwrap();

        let cfg = config(dir, "aircraft-4");
        let report1 = run_pipeline(
            &dir.join("aircraft.sysmodel"),
            &dir.join("rivets.csv"),
            &cfg,
        )
        .unwrap();
        let domain1 = std::fs::read(&report1.domain_path).unwrap();
        let problem1 = std::fs::read(&report1.problem_path).unwrap();

        let report2 = run_pipeline(
            &dir.join("aircraft.sysmodel"),
            &dir.join("rivets.csv"),
            &cfg,
        )
        .unwrap();
        assert_eq!(domain1, std::fs::read(&report2.domain_path).unwrap());
        assert_eq!(problem1, std::fs::read(&report2.problem_path).unwrap());
        assert_eq!(report1.counts, report2.counts);

        // generated artifacts re-parse and re-validate cleanly
        let domain = crate::pddl::parse_domain(std::str::from_utf8(&domain1).unwrap())
            .unwrap()
            .value;
        let problem = crate::pddl::parse_problem(std::str::from_utf8(&problem1).unwrap())
            .unwrap()
            .value;
        assert!(crate::pddl::validate_domain(&domain).is_empty());
        assert!(crate::pddl::validate_problem(&problem, &domain).is_empty());
        assert_eq!(report1.counts.actions, 4);
        assert_eq!(report1.counts.objects, 9);
    }

    #[test]
    fn key_column_override_reaches_product_loading() {
        let fixture = build_aircraft_fixture(4, 2).unwrap();
        // rivet types repeat across rows, so keying on that column must fail
        let errs = generate_task(
            &fixture.model_text(),
            &fixture.product_text(),
            &fixture.rules_text(),
            None,
            Some("rivet-type"),
            Ident::parse("t").unwrap(),
        )
        .unwrap_err();
        assert_eq!(errs[0].code, Code::DuplicateKey);
        assert_eq!(errs[0].stage, Some(Stage::LoadProduct));
    }

    #[test]
    fn missing_model_file_is_a_staged_io_error() {
        let tmp = tempfile::tempdir().unwrap();
        let dir = tmp.path();
        let fixture = build_aircraft_fixture(1, 1).unwrap();
        std::fs::write(dir.join("rivets.csv"), fixture.product_text()).unwrap();
        std::fs::write(dir.join("aircraft.rules"), fixture.rules_text()).unwrap();
        let errs = run_pipeline(
            &dir.join("nope.sysmodel"),
            &dir.join("rivets.csv"),
            &config(dir, "t"),
        )
        .unwrap_err();
        assert_eq!(errs[0].code, Code::IoError);
        assert_eq!(errs[0].stage, Some(Stage::LoadModel));
    }
}
