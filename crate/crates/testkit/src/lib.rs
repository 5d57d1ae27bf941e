//! Independent oracles and randomized generators backing the test suites.
//!
//! Everything here deliberately avoids the production code paths it checks:
//! the grounding oracle enumerates tuples with itertools over string pools,
//! the search oracle runs BFS over explicit string-atom states, the plan
//! oracle is a second simulator written from the STRIPS definitions, and
//! the grammar checker lexes and parses PDDL text on its own.

pub mod gen;
pub mod grammar;
pub mod oracle;
