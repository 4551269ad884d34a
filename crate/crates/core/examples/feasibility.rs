//! Read off the feasible target of a quadruple and solve back for all quadruples.

use uawq::classify::{feasible, feasible_target, s4_orbit, solve_feasible};
use uawq::modules::Params4;
use uawq::FieldCtx;

fn main() -> uawq::Result<()> {
    let ctx = FieldCtx::new(13, 3)?;
    let p = Params4::new(ctx.int(2), ctx.int(5), ctx.int(6), ctx.int(7))?;
    let t = feasible_target(&ctx, &p);
    println!(
        "target: mu = {}, phi = {}, omega* = {}, omega_eps = {}",
        t.mu, t.phi, t.omega_star, t.omega_eps
    );

    let sols = solve_feasible(&ctx, &t)?;
    let orbit = s4_orbit(&ctx, &p)?;
    println!(
        "{} solutions (complete: {})",
        sols.solutions.len(),
        sols.complete
    );
    for s in &sols.solutions {
        println!(
            "  {:?} feasible {} in orbit {}",
            s.to_array(),
            feasible(&ctx, s, &t),
            orbit.contains(s)
        );
    }
    Ok(())
}
