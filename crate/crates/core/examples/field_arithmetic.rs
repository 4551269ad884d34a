//! Arithmetic in F_{p^2} = F_p(sqrt t) and the choice of q.

use uawq::FieldCtx;

fn main() -> uawq::Result<()> {
    let ctx = FieldCtx::new(37, 6)?;
    println!(
        "p = {}, t = {}, d = {}, dbar = {}",
        ctx.p(),
        ctx.t(),
        ctx.d(),
        ctx.dbar()
    );
    println!("q = {}, q^d = {}", ctx.q(), ctx.q_pow(ctx.d() as i64));

    let x = ctx.parse("5+2i")?;
    let y = ctx.parse("-3")?;
    println!("x = {x}, y = {y}");
    println!("x + y = {}, x * y = {}, x / y = {}", x + y, x * y, x / y);
    println!("x^-1 = {}, norm(x) = {}", x.inv()?, x.norm());

    let s = ctx.sqrt(x * x)?;
    println!("sqrt(x^2) = {s}, check {}", s * s == x * x);
    println!("sqrt(x): {:?}", ctx.sqrt(x).err());

    // every element of F_p is a square in F_{p^2}
    let t = ctx.int(ctx.t() as i64);
    println!("sqrt(t) = {}", ctx.sqrt(t)?);

    match FieldCtx::new(13, 5) {
        Ok(_) => unreachable!(),
        Err(e) => println!("(13, 5): {e}"),
    }
    Ok(())
}
