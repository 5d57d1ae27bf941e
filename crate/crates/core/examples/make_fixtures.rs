//! Regenerate the bundled fixture inputs under a target directory.
//!
//! Usage: cargo run -p m2pddl-core --example make_fixtures -- fixtures/aircraft

use std::path::PathBuf;

use m2pddl_core::fixtures::build_aircraft_fixture;

fn main() {
    let dir: PathBuf = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "fixtures/aircraft".to_string())
        .into();
    std::fs::create_dir_all(&dir).expect("create fixture directory");

    let base = build_aircraft_fixture(4, 2).expect("base fixture");
    std::fs::write(dir.join("aircraft.sysmodel"), base.model_text()).unwrap();
    std::fs::write(dir.join("aircraft.rules"), base.rules_text()).unwrap();
    std::fs::write(dir.join("rivets-4.csv"), base.product_text()).unwrap();

    // Smaller and larger product files against the same model.
    let tiny = build_aircraft_fixture(1, 1).expect("tiny fixture");
    std::fs::write(dir.join("rivets-1.csv"), tiny.product_text()).unwrap();
    let scale = build_aircraft_fixture(10, 2).expect("scale fixture");
    std::fs::write(dir.join("rivets-10.csv"), scale.product_text()).unwrap();

    println!("fixture inputs written to {}", dir.display());
}
