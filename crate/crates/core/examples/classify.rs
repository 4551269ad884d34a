//! Sample quintuples and sort the irreducible W into isomorphism classes.

use uawq::classify::{classify_sample, DEFAULT_CAP};
use uawq::FieldCtx;

fn main() -> uawq::Result<()> {
    let ctx = FieldCtx::new(13, 3)?;
    let report = classify_sample(&ctx, 42, 60, DEFAULT_CAP)?;
    println!(
        "{} classes, {} rejected, {} errors",
        report.classes.len(),
        report.rejected.len(),
        report.errors.len()
    );
    for c in report.classes.iter().filter(|c| c.size > 1) {
        println!(
            "{:?}: {} samples, closure {}, verified {}",
            c.representative.to_array(),
            c.size,
            c.closure_size,
            c.isomorphisms_verified
        );
    }
    println!(
        "{} cross-class pairs, {} isomorphic, all verified: {}",
        report.cross_class_pairs_checked,
        report.cross_class_isomorphic.len(),
        report.verified()
    );
    Ok(())
}
