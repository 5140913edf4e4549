//! Runs a JSON run descriptor through the library, then prints the constants
//! table the `constants` subcommand emits.
use hardylab::cli::{cmd_constants, RunOptions};
use hardylab::hardy_verify::{run_descriptor, IdentityReport, RunDescriptor};

const DESCRIPTOR: &str = r#"{
    "identity": "thm-3.3-full",
    "domain": {"variant": "ball", "center": [0, 0], "radius": 1.0, "dim": 2},
    "pair": {"family": "power", "p": 2.0, "lambda": 0.0},
    "test_function": {"family": "radial-bump", "center": [0.4, 0.0], "radius": 0.3}
}"#;

fn main() -> Result<(), hardylab::Error> {
    let desc = RunDescriptor::from_json(DESCRIPTOR)?;
    let report = run_descriptor(&desc)?;
    println!("{}\n{}", IdentityReport::CSV_HEADER, report.csv_row());
    println!("{}", serde_json::to_string_pretty(&report)?);

    let code = cmd_constants(&RunOptions::default(), &mut std::io::stdout());
    std::process::exit(code);
}
