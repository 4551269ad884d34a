use std::collections::BTreeSet;

use crate::algebra::PairRep;
use crate::classify::equiv::{in_q_set, z2s4_neighbours};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq2};
use crate::linalg::{EchelonBasis, Matrix};
use crate::modules::Params5;

/// All triples obtained by inverting any subset of the coordinates.
pub fn z2cubed_orbit(a: Fq2, b: Fq2, c: Fq2) -> BTreeSet<(Fq2, Fq2, Fq2)> {
    let mut out = BTreeSet::new();
    for mask in 0..8 {
        let f = |x: Fq2, bit: u32| if mask >> bit & 1 == 1 { x.powi(-1) } else { x };
        out.insert((f(a, 0), f(b, 1), f(c, 2)));
    }
    out
}

pub fn irr_vn_criterion(ctx: &FieldCtx, a: Fq2, b: Fq2, c: Fq2, n: usize) -> Result<bool> {
    if n + 2 > ctx.dbar() {
        return Err(Error::BadRange(format!(
            "need 0 <= n <= {}, got {n}",
            ctx.dbar() as i64 - 2
        )));
    }
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(Error::BadRange("a, b, c must be nonzero".into()));
    }
    let forbidden: Vec<Fq2> = (1..=n as i64)
        .map(|i| ctx.q_pow(n as i64 - 2 * i + 1))
        .collect();
    Ok(z2cubed_orbit(a, b, c)
        .iter()
        .all(|&(x, y, z)| !forbidden.contains(&(x * y * z))))
}

/// The four-clause expanded form of the irreducibility condition for `W`.
pub fn irr_w_criterion(ctx: &FieldCtx, p: &Params5) -> bool {
    let d = ctx.dbar() as i64;
    let q = |e: i64| ctx.q_pow(e);
    let (a, b, c, l, delta) = (p.a, p.b, p.c, p.lambda, p.delta);
    let (ai, bi, ci) = (a.powi(-1), b.powi(-1), c.powi(-1));
    let none_in = |xs: [Fq2; 3]| xs.iter().all(|&x| !in_q_set(ctx, x));
    let pw = |x: Fq2| x.powi(d);
    let r = delta + pw(a) * pw(l).powi(-1) + pw(a).powi(-1) * pw(l);

    let c1 =
        !delta.is_zero() || none_in([l * l, ai * bi * ci * l * q(-1), ai * bi * c * l * q(-1)]);
    let c2 = delta != (pw(a) - pw(a).powi(-1)) * (pw(l) - pw(l).powi(-1))
        || none_in([l * l, a * bi * ci * l * q(-1), a * bi * c * l * q(-1)]);
    let c3 = r != (pw(b) * pw(c) + pw(b).powi(-1) * pw(c).powi(-1)) * q(d)
        || none_in([
            a * bi * ci * l * q(-1),
            ai * bi * ci * l * q(-1),
            bi * bi * q(-2),
        ]);
    let c4 = r != (pw(b) * pw(c).powi(-1) + pw(b).powi(-1) * pw(c)) * q(d)
        || none_in([
            a * bi * c * l * q(-1),
            bi * bi * q(-2),
            ai * bi * c * l * q(-1),
        ]);
    c1 && c2 && c3 && c4
}

/// The orbit form: every `{+-1}.S4` neighbour has `delta != 0` or
/// `lambda^2` outside `{q^{2i}}`.
pub fn irr_w_orbit_criterion(ctx: &FieldCtx, p: &Params5) -> Result<bool> {
    Ok(z2s4_neighbours(ctx, p)?
        .iter()
        .all(|(_, x)| !x.delta.is_zero() || !in_q_set(ctx, x.lambda.square())))
}

/// Dimension of the algebra generated by `A` and `B`.
pub fn generated_algebra_dim(rep: &PairRep) -> usize {
    let n = rep.dim();
    let zero = rep.ctx.zero();
    let mut basis = EchelonBasis::new(n * n);
    let id = Matrix::identity(zero, n);
    basis.insert(id.as_slice());
    let mut frontier = vec![id];
    while !frontier.is_empty() && basis.rank() < n * n {
        let mut next = Vec::new();
        for m in &frontier {
            for g in [&rep.a, &rep.b] {
                let w = g.mul(m);
                if basis.insert(w.as_slice()) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    basis.rank()
}

/// Absolute irreducibility: the words in `A, B` span all `n x n` matrices.
pub fn burnside_irreducible(rep: &PairRep) -> bool {
    let n = rep.dim();
    n > 0 && generated_algebra_dim(rep) == n * n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{build_vn, build_w};

    #[test]
    fn z2cubed_sizes() {
        let ctx = FieldCtx::new(13, 3).unwrap();
        let one = ctx.one();
        assert_eq!(z2cubed_orbit(one, one, one).len(), 1);
        assert_eq!(z2cubed_orbit(ctx.int(2), ctx.int(3), ctx.int(4)).len(), 8);
    }

    #[test]
    fn vn_criterion_examples() {
        let ctx = FieldCtx::new(37, 6).unwrap();
        let one = ctx.one();
        assert!(irr_vn_criterion(&ctx, ctx.int(2), ctx.int(3), ctx.int(5), 0).unwrap());
        assert!(!irr_vn_criterion(&ctx, one, one, one, 1).unwrap());
        assert_eq!(
            irr_vn_criterion(&ctx, one, one, one, 2).unwrap_err().kind(),
            "BadRange"
        );
    }

    #[test]
    fn w_criterion_examples() {
        let ctx = FieldCtx::new(13, 3).unwrap();
        let one = ctx.one();
        let p = Params5::new(ctx.int(2), ctx.int(5), ctx.int(6), one, ctx.zero()).unwrap();
        assert!(!irr_w_criterion(&ctx, &p));
        assert!(!burnside_irreducible(&build_w(&ctx, &p)));
    }

    #[test]
    fn burnside_small_cases() {
        let ctx = FieldCtx::new(13, 3).unwrap();
        let rep = build_vn(&ctx, ctx.int(2), ctx.int(3), ctx.int(5), 0).unwrap();
        assert!(burnside_irreducible(&rep));
        let one = ctx.one();
        assert!(!burnside_irreducible(
            &build_vn(&ctx, one, one, one, 1).unwrap()
        ));
    }

    #[test]
    fn criteria_agree_on_a_slice() {
        let ctx = FieldCtx::new(13, 3).unwrap();
        let units: Vec<Fq2> = (1..13).map(|x| ctx.int(x)).collect();
        for &a in &units[..4] {
            for &l in &units {
                for delta in 0..13 {
                    let p = Params5::new(a, ctx.int(3), ctx.int(7), l, ctx.int(delta)).unwrap();
                    assert_eq!(
                        irr_w_criterion(&ctx, &p),
                        burnside_irreducible(&build_w(&ctx, &p)),
                        "{p:?}"
                    );
                }
            }
        }
    }
}
