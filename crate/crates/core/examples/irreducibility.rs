//! Irreducibility criteria against the Burnside oracle.

use uawq::classify::{
    burnside_irreducible, irr_vn_criterion, irr_w_criterion, irr_w_orbit_criterion,
};
use uawq::modules::{build_vn, build_w, Params5};
use uawq::FieldCtx;

fn main() -> uawq::Result<()> {
    let ctx = FieldCtx::new(13, 3)?;
    let one = ctx.one();

    let cases = [
        Params5::new(ctx.int(2), ctx.int(5), ctx.int(6), ctx.int(7), ctx.int(3))?,
        Params5::new(one, one, one, one, ctx.zero())?,
        Params5::new(ctx.int(2), ctx.int(5), ctx.int(6), one, ctx.zero())?,
    ];
    for p in &cases {
        let crit = irr_w_criterion(&ctx, p);
        let orbit = irr_w_orbit_criterion(&ctx, p)?;
        let oracle = burnside_irreducible(&build_w(&ctx, p));
        println!(
            "W {:?}: criterion {crit}, orbit form {orbit}, oracle {oracle}",
            p.to_array()
        );
    }

    for (a, b, c) in [(2, 3, 5), (2, 5, 6), (1, 1, 1), (3, 3, 3), (4, 7, 11)] {
        let (a, b, c) = (ctx.int(a), ctx.int(b), ctx.int(c));
        let crit = irr_vn_criterion(&ctx, a, b, c, 1)?;
        let oracle = burnside_irreducible(&build_vn(&ctx, a, b, c, 1)?);
        println!("V_1({a}, {b}, {c}): criterion {crit}, oracle {oracle}");
    }
    Ok(())
}
