//! Central elements: T_dbar of the generators and the shifted products.

use uawq::algebra::{central_elements_check, derive_c};
use uawq::modules::{build_w, Params5, SeqData};
use uawq::poly::chebyshev_t;
use uawq::FieldCtx;

fn main() -> uawq::Result<()> {
    let ctx = FieldCtx::new(29, 7)?;
    let p = Params5::new(ctx.int(3), ctx.int(4), ctx.int(10), ctx.int(11), ctx.int(2))?;
    let rep = build_w(&ctx, &p);
    let c = derive_c(&rep);

    let t = chebyshev_t(&ctx, ctx.dbar());
    println!("T_{} = {:?}", ctx.dbar(), t.coeffs());
    for (name, x) in [("A", &rep.a), ("B", &rep.b), ("C", &c)] {
        let tx = x.eval_poly(&t);
        println!("T(A) commutes with {name}: {}", tx.commutator(x).is_zero());
    }

    let report = central_elements_check(&rep, ctx.int(9));
    println!("{report:?}");

    let seq = SeqData::new(&ctx, p.quad());
    println!(
        "prod(A - theta_i) = delta I: {}",
        rep.a.shifted_product(&seq.thetas()).is_scalar(p.delta)
    );
    Ok(())
}
