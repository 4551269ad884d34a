//! Build W_lambda^delta(a,b,c) and V_n(a,b,c) and check the defining relations.

use uawq::algebra::verify_rep;
use uawq::modules::{build_vn, build_w, Params5};
use uawq::FieldCtx;

fn main() -> uawq::Result<()> {
    let ctx = FieldCtx::new(13, 3)?;
    let p = Params5::new(ctx.int(2), ctx.int(5), ctx.int(6), ctx.int(7), ctx.int(3))?;

    let w = build_w(&ctx, &p);
    println!("W has dimension {}", w.dim());
    println!("A = {:?}", w.a);
    println!("B = {:?}", w.b);
    println!(
        "omega = {}, omega* = {}, omega_eps = {}",
        w.omega, w.omega_star, w.omega_eps
    );
    println!("relations hold: {}", verify_rep(&w).passed());

    for n in 0..=ctx.dbar() - 2 {
        let v = build_vn(&ctx, p.a, p.b, p.c, n)?;
        println!(
            "V_{n}: dim {}, relations hold: {}",
            v.dim(),
            verify_rep(&v).passed()
        );
    }

    let err = build_vn(&ctx, p.a, p.b, p.c, ctx.dbar()).unwrap_err();
    println!("n too large: {err}");
    Ok(())
}
