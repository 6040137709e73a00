//! Run the full check list in-process and summarise it.
//!
//! Run with `cargo run --release --example verification_report`.

use sho_exceptional::cli::{run_suite, CommandKind, Report, RunConfig};

fn main() -> sho_exceptional::Result<()> {
    let config = RunConfig::new(CommandKind::VerifyAll);
    let report = Report::new(&config, run_suite(&config));
    for r in &report.records {
        let status = match (r.pass, r.informational) {
            (true, _) => "pass",
            (false, true) => "info",
            (false, false) => "FAIL",
        };
        println!("{status}  {:<48} {:<28} {:.3e}", r.check_id, r.paper_anchor, r.value);
    }
    let failed = report.records.iter().filter(|r| r.fails()).count();
    println!("\n{} records, {failed} failing", report.records.len());
    Ok(())
}
