//! The eigenvectors e_i of A on W and the coefficients L^(i)_{jk}.

use uawq::modules::*;
use uawq::FieldCtx;

fn main() -> uawq::Result<()> {
    let ctx = FieldCtx::new(37, 6)?;
    let d = ctx.dbar() as i64;
    let quad = Params4::new(ctx.int(2), ctx.int(5), ctx.int(6), ctx.int(7))?;

    // choose nu in the value set of the second closed form, then solve for delta
    let p0 = quad.with_delta(ctx.zero());
    let nu = l_case_values(&ctx, &p0, LCase::II)[0];
    let p = quad.with_delta(nu.powi(d) + nu.powi(-d) - p0.delta_invariant(&ctx));
    let nd = NuData::with_nu(&ctx, &p, nu)?;
    println!("nu = {}, delta = {}", nd.nu, p.delta);

    let rep = build_w(&ctx, &p);
    for i in 0..ctx.dbar() {
        let e = e_vector(&ctx, &p, &nd, i)?;
        let ok = rep.a.mul_vec(&e)
            == e.iter()
                .map(|&x| x * nd.vartheta(i as i64))
                .collect::<Vec<_>>();
        println!(
            "e_{i} = {e:?}, eigenvector: {ok}, cases {:?}",
            l_cases(&ctx, &p, &nd, i)
        );
    }

    let l = l_recurrence(&ctx, &p, &nd, 0)?;
    println!(
        "recurrence = matrix action: {}",
        l == l_by_matrix(&ctx, &p, &nd, 0)?
    );
    for (j, row) in l.iter().enumerate() {
        let closed: Vec<_> = (0..ctx.dbar())
            .map(|k| l_closed(&ctx, &p, &nd, 0, j, k))
            .collect::<uawq::Result<_>>()?;
        println!("L_{j}. = {row:?}  closed {closed:?}");
    }
    println!(
        "reducible by e-vectors: {}",
        reducible_by_e_vectors(&ctx, &p)?
    );
    Ok(())
}
