//! The equivalence closure of a quintuple, with labelled edges.

use uawq::classify::{irr_w_criterion, simeq_closure, DEFAULT_CAP};
use uawq::modules::Params5;
use uawq::FieldCtx;

fn main() -> uawq::Result<()> {
    let ctx = FieldCtx::new(13, 3)?;
    let one = ctx.one();
    let p = Params5::new(one, one, one, one, ctx.int(2))?;
    let cl = simeq_closure(&ctx, &p, DEFAULT_CAP)?;
    println!("{} members, {} edges", cl.len(), cl.edges.len());
    for (k, m) in cl.members.iter().enumerate() {
        println!(
            "[{k:>2}] {:?} irreducible {}",
            m.to_array(),
            irr_w_criterion(&ctx, m)
        );
    }
    let mut by_label = std::collections::BTreeMap::<&str, usize>::new();
    for e in &cl.edges {
        *by_label.entry(e.label.as_str()).or_default() += 1;
    }
    println!("edges by label: {by_label:?}");
    Ok(())
}
