//! Print the oracle values recorded in the fixture manifest, computed from
//! the shipped fixture files.
//!
//! Usage: cargo run -p m2pddl-testkit --example freeze_values [fixtures]

use std::path::PathBuf;

use m2pddl_core::generator::generate_task;
use m2pddl_core::pddl::ast::Ident;
use m2pddl_testkit::{grammar, oracle};

fn main() {
    let root: PathBuf = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "fixtures".to_string())
        .into();
    let read = |rel: &str| std::fs::read_to_string(root.join(rel)).expect(rel);

    let model = read("aircraft/aircraft.sysmodel");
    let rules = read("aircraft/aircraft.rules");

    for rivets in [1usize, 4, 10] {
        let product = read(&format!("aircraft/rivets-{rivets}.csv"));
        let task = generate_task(
            &model,
            &product,
            &rules,
            None,
            None,
            Ident::parse(&format!("aircraft-{rivets}")).unwrap(),
        )
        .unwrap();
        let ground_count = oracle::enumerate_ground_actions(&task.domain, &task.problem).len();
        let search = oracle::shortest_plan_length(&task.domain, &task.problem, 100_000);
        println!("aircraft-{rivets}: ground-actions {ground_count}, bfs {search:?}");
    }

    let domain_golden = read("pddl/aircraft-4.domain.pddl");
    let problem_golden = read("pddl/aircraft-4.problem.pddl");
    grammar::check_domain_text(&domain_golden).expect("domain golden rejected by grammar checker");
    grammar::check_problem_text(&problem_golden).expect("problem golden rejected by grammar checker");
    println!("goldens: accepted by the independent grammar checker");
}
