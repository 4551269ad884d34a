//! Module isomorphisms by solving S A = A' S, S B = B' S.

use uawq::classify::{homomorphism_sending, intertwiner, z2s4_neighbours};
use uawq::linalg::unit_vec;
use uawq::modules::{build_w, Params5};
use uawq::FieldCtx;

fn main() -> uawq::Result<()> {
    let ctx = FieldCtx::new(37, 6)?;
    let (a, b, l, s) = (ctx.int(2), ctx.int(5), ctx.int(7), ctx.int(3));
    let c = s * s / (a * b * l * ctx.q());
    let p = Params5::new(a, b, c, l, ctx.int(4))?;
    let x = build_w(&ctx, &p);
    let e0 = unit_vec(ctx.zero(), ctx.dbar(), 0);

    for (label, nb) in z2s4_neighbours(&ctx, &p)?.into_iter().take(6) {
        let y = build_w(&ctx, &nb);
        let s = intertwiner(&x, &y)?;
        let invertible = s.as_ref().is_some_and(|s| s.is_invertible());
        let sends = homomorphism_sending(&x, &y, &e0, &e0)?.is_some();
        println!("{label:<14} isomorphic {invertible}, w_0 -> w_0 {sends}");
    }

    let other = Params5 {
        delta: p.delta + ctx.one(),
        ..p
    };
    println!(
        "delta + 1: {:?}",
        intertwiner(&x, &build_w(&ctx, &other))?.map(|_| "map found")
    );
    Ok(())
}
