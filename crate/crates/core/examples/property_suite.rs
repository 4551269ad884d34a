//! Run the property suite programmatically.

use uawq::checks::{run_suite, Level};
use uawq::FieldCtx;

fn main() -> uawq::Result<()> {
    for (p, d) in [(13, 3), (29, 7)] {
        let ctx = FieldCtx::new(p, d)?;
        let report = run_suite(&ctx, 7, Level::Smoke)?;
        println!(
            "p = {p}, d = {d}: {}",
            if report.passed() {
                "all pass"
            } else {
                "FAILURES"
            }
        );
        for c in &report.checks {
            println!("  {} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
        }
    }
    Ok(())
}
