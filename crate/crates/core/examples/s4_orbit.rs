//! The S4 action on sign classes of quadruples.

use uawq::classify::{approx_equiv, s4_orbit};
use uawq::modules::Params4;
use uawq::FieldCtx;

fn main() -> uawq::Result<()> {
    let ctx = FieldCtx::new(37, 6)?;
    let (a, b, l, s) = (ctx.int(2), ctx.int(5), ctx.int(7), ctx.int(3));
    // c is chosen so that sqrt(a b c lambda q) exists
    let c = s * s / (a * b * l * ctx.q());
    let p = Params4::new(a, b, c, l)?;

    let orbit = s4_orbit(&ctx, &p)?;
    for (label, x) in &orbit.images {
        println!("{label:<14} {:?}", x.to_array());
    }
    println!("{} distinct sign classes", orbit.classes.len());

    let swapped = Params4::new(a, b, c.powi(-1), l)?;
    println!(
        "(a, b, 1/c, lambda) equivalent: {}",
        approx_equiv(&ctx, &p, &swapped)?
    );
    let moved = Params4::new(a + ctx.one(), b, c, l)?;
    println!(
        "(a + 1, b, c, lambda) equivalent: {}",
        approx_equiv(&ctx, &p, &moved).unwrap_or(false)
    );
    Ok(())
}
