use std::process::ExitCode;

use wildwords::cli::{run_command, wants_json};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let result = run_command(&argv);
    if wants_json(&argv) {
        println!(
            "{}",
            serde_json::to_string_pretty(&result.payload).expect("payload serializes")
        );
    } else if result.status == 0 {
        println!("{}", result.summary);
    } else {
        eprintln!("{}", result.summary);
    }
    ExitCode::from(result.status as u8)
}
