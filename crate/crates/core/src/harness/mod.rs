//! Scenario files, synthetic scenarios and mechanism evaluation.

pub mod evaluate;
pub mod format;
pub mod generator;
pub mod records;
pub mod render;

pub use evaluate::{evaluate, EvalOptions, MatchReport, Stratum};
pub use format::{load_scenario, parse_scenario, save_scenario, scenario_to_string};
pub use generator::{generate_scenarios, synthesize_records, GeneratorConfig, RecordConfig};
pub use records::{read_records, write_records, ConcessionRecord};
