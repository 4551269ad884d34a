//! Weight spaces of B and marginal weights.

use uawq::modules::{build_w, is_marginal_weight, marginal_vectors, weight_spaces, Params5};
use uawq::FieldCtx;

fn main() -> uawq::Result<()> {
    let ctx = FieldCtx::new(37, 6)?;
    let q = ctx.q();
    let b = ctx.int(5);
    // lambda = 1 puts a marginal weight at the bottom of W
    let p = Params5::new(ctx.int(2), b, ctx.int(6), ctx.one(), ctx.zero())?;
    let rep = build_w(&ctx, &p);

    for ws in weight_spaces(&rep)? {
        let marginal = is_marginal_weight(&rep, ws.mu)?;
        println!(
            "mu = {:<8} theta* = {:<8} dim {} marginal {marginal}",
            ws.mu.to_string(),
            ws.theta.to_string(),
            ws.dim()
        );
        if marginal {
            for v in marginal_vectors(&rep, ws.mu)? {
                println!("    vector {v:?}");
            }
        }
    }
    println!("b / lambda = {}, q = {q}", b / p.lambda);
    Ok(())
}
