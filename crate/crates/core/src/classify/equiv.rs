use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::classify::s4::{s4_orbit, sign_class, S4Orbit};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq2};
use crate::modules::wrap_defect;
use crate::modules::{Params4, Params5};

pub const DEFAULT_CAP: usize = 10_000;

/// Canonical representative of `{(P, delta), (-P, delta)}`.
pub fn sign_class5(p: &Params5) -> Params5 {
    sign_class(&p.quad()).with_delta(p.delta)
}

pub fn approx_equiv(ctx: &FieldCtx, p: &Params4, other: &Params4) -> Result<bool> {
    Ok(s4_orbit(ctx, p)?.contains(other))
}

pub fn simeq_z2s4(ctx: &FieldCtx, p: &Params5, other: &Params5) -> Result<bool> {
    Ok(p.delta_invariant(ctx) == other.delta_invariant(ctx)
        && approx_equiv(ctx, &p.quad(), &other.quad())?)
}

/// The `delta` paired with `quad` so that the invariant `delta + a^d l^-d + a^-d l^d`
/// equals `invariant`.
pub fn delta_for(ctx: &FieldCtx, quad: &Params4, invariant: Fq2) -> Fq2 {
    let d = ctx.dbar() as i64;
    let x = quad.a.powi(d) * quad.lambda.powi(-d);
    invariant - x - x.powi(-1)
}

/// All `{+-1}.S4` neighbours of `p` as sign classes, labelled by row.
pub fn z2s4_neighbours(ctx: &FieldCtx, p: &Params5) -> Result<Vec<(String, Params5)>> {
    let inv = p.delta_invariant(ctx);
    let S4Orbit { images, .. } = s4_orbit(ctx, &p.quad())?;
    Ok(images
        .into_iter()
        .map(|(l, x)| (l, x.with_delta(delta_for(ctx, &x, inv))))
        .collect())
}

/// Whether `x` lies in `{q^{2i} : 0 <= i <= dbar-2}`.
pub fn in_q_set(ctx: &FieldCtx, x: Fq2) -> bool {
    (0..ctx.dbar() as i64 - 1).any(|i| x == ctx.q_pow(2 * i))
}

pub fn move_ii(ctx: &FieldCtx, p: &Params5) -> Params5 {
    let l = p.lambda.powi(-1) * ctx.q_pow(-2);
    Params5 {
        a: p.a.powi(-1),
        lambda: l,
        ..*p
    }
}

pub fn move_iii(ctx: &FieldCtx, p: &Params5) -> Params5 {
    let l = p.lambda.powi(-1) * ctx.q_pow(-2);
    Params5 {
        a: p.a.powi(-1),
        b: p.b.powi(-1),
        lambda: l,
        ..*p
    }
}

pub fn move_ii_allowed(ctx: &FieldCtx, p: &Params5) -> bool {
    in_q_set(ctx, p.lambda.square())
}

pub fn move_iii_allowed(ctx: &FieldCtx, p: &Params5) -> bool {
    let d = ctx.dbar() as i64;
    let x = p.b.square() * p.lambda.powi(-2);
    let cond_a = !(0..d - 1).any(|i| x == ctx.q_pow(2 * (d - i + 1)));
    cond_a && wrap_defect(ctx, p).is_zero()
}

/// Which branch of the generating relation relates `p` to `other`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SimBranch {
    Z2S4,
    Marginal,
    Wrap,
}

/// The branches under which `p ~ other`, in order.
pub fn sim_branches(ctx: &FieldCtx, p: &Params5, other: &Params5) -> Result<Vec<SimBranch>> {
    let target = sign_class5(other);
    let mut out = Vec::new();
    if simeq_z2s4(ctx, p, other)? {
        out.push(SimBranch::Z2S4);
    }
    if move_ii_allowed(ctx, p) && sign_class5(&move_ii(ctx, p)) == target {
        out.push(SimBranch::Marginal);
    }
    if move_iii_allowed(ctx, p) && sign_class5(&move_iii(ctx, p)) == target {
        out.push(SimBranch::Wrap);
    }
    Ok(out)
}

pub fn sim_related(ctx: &FieldCtx, p: &Params5, other: &Params5) -> Result<bool> {
    let target = sign_class5(other);
    if move_ii_allowed(ctx, p) && sign_class5(&move_ii(ctx, p)) == target {
        return Ok(true);
    }
    if move_iii_allowed(ctx, p) && sign_class5(&move_iii(ctx, p)) == target {
        return Ok(true);
    }
    simeq_z2s4(ctx, p, other)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    /// An S4 row label, `"ii"` or `"iii"`.
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Closure {
    /// Members in discovery order; `members[0]` is the input's sign class.
    pub members: Vec<Params5>,
    pub edges: Vec<Edge>,
}

impl Closure {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Params5) -> bool {
        self.members.contains(&sign_class5(p))
    }

    /// Least member under the canonical order.
    pub fn min_member(&self) -> Params5 {
        *self.members.iter().min().expect("closure is never empty")
    }
}

/// Breadth-first closure under the generating relation, in both directions.
pub fn simeq_closure(ctx: &FieldCtx, p: &Params5, cap: usize) -> Result<Closure> {
    if cap == 0 {
        return Err(Error::BadRange("cap must be at least 1".into()));
    }
    let start = sign_class5(p);
    let mut index: BTreeMap<Params5, usize> = BTreeMap::from([(start, 0)]);
    let mut members = vec![start];
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let x = members[k];
        let mut next: Vec<(String, Params5)> = z2s4_neighbours(ctx, &x)?;
        for (label, mv, allowed) in [
            (
                "ii",
                move_ii as fn(&FieldCtx, &Params5) -> Params5,
                move_ii_allowed as fn(&FieldCtx, &Params5) -> bool,
            ),
            ("iii", move_iii, move_iii_allowed),
        ] {
            let y = mv(ctx, &x);
            if allowed(ctx, &x) || allowed(ctx, &y) {
                next.push((label.to_string(), sign_class5(&y)));
            }
        }
        for (label, y) in next {
            let to = match index.get(&y) {
                Some(&j) => j,
                None => {
                    if members.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    let j = members.len();
                    index.insert(y, j);
                    members.push(y);
                    queue.push_back(j);
                    j
                }
            };
            if to != k {
                edges.push(Edge { from: k, to, label });
            }
        }
    }
    Ok(Closure { members, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::s4::apply_row;
    use crate::classify::s4::s4_row;

    fn generic(ctx: &FieldCtx, delta: i64) -> Params5 {
        let (a, b, l, s) = (ctx.int(2), ctx.elem(3, 1), ctx.int(5), ctx.elem(1, 4));
        let c = s * s / (a * b * l * ctx.q());
        Params5::new(a, b, c, l, ctx.int(delta)).unwrap()
    }

    #[test]
    fn simeq_basic() {
        let ctx = FieldCtx::new(37, 6).unwrap();
        let p = generic(&ctx, 3);
        assert!(simeq_z2s4(&ctx, &p, &p).unwrap());
        let bumped = Params5 {
            delta: p.delta + ctx.one(),
            ..p
        };
        assert!(!simeq_z2s4(&ctx, &p, &bumped).unwrap());
        let row = s4_row("(3 4)").unwrap();
        let img = apply_row(&ctx, &p.quad(), row).unwrap();
        let d = ctx.dbar() as i64;
        let (a, l) = (p.a, p.lambda);
        let delta2 = p.delta + a.powi(d) * l.powi(-d) + a.powi(-d) * l.powi(d)
            - (a.powi(-d) * l.powi(-d) + a.powi(d) * l.powi(d));
        assert!(simeq_z2s4(&ctx, &p, &img.with_delta(delta2)).unwrap());
    }

    #[test]
    fn approx_equiv_row_12_and_symmetry() {
        let ctx = FieldCtx::new(37, 6).unwrap();
        let p = generic(&ctx, 0).quad();
        let p12 = Params4::new(p.a, p.b, p.c.powi(-1), p.lambda).unwrap();
        assert!(approx_equiv(&ctx, &p, &p).unwrap());
        assert!(approx_equiv(&ctx, &p, &p12).unwrap());
        assert!(approx_equiv(&ctx, &p12, &p).unwrap());
    }

    #[test]
    fn marginal_move_at_lambda_one() {
        let ctx = FieldCtx::new(37, 6).unwrap();
        let p = Params5 {
            lambda: ctx.one(),
            ..generic(&ctx, 4)
        };
        let other = Params5 {
            a: p.a.powi(-1),
            lambda: ctx.q_pow(-2),
            ..p
        };
        assert!(sim_branches(&ctx, &p, &other)
            .unwrap()
            .contains(&SimBranch::Marginal));
        assert!(sim_related(&ctx, &p, &other).unwrap());
    }

    #[test]
    fn wrap_move_needs_defect_zero() {
        let ctx = FieldCtx::new(37, 6).unwrap();
        let mut p = generic(&ctx, 0);
        let d = ctx.dbar() as i64;
        let coeff = p.b.powi(d) * p.lambda.powi(-d) - p.b.powi(-d) * p.lambda.powi(d);
        assert!(!coeff.is_zero());
        let rest = -wrap_defect(
            &ctx,
            &Params5 {
                delta: ctx.zero(),
                ..p
            },
        );
        p.delta = rest / coeff;
        assert!(wrap_defect(&ctx, &p).is_zero());
        let other = move_iii(&ctx, &p);
        assert_eq!(
            move_iii_allowed(&ctx, &p),
            sim_branches(&ctx, &p, &other)
                .unwrap()
                .contains(&SimBranch::Wrap)
        );
        let bumped = Params5 {
            delta: p.delta + ctx.one(),
            ..p
        };
        assert!(!move_iii_allowed(&ctx, &bumped));
    }

    #[test]
    fn closure_is_connected_and_closed() {
        let ctx = FieldCtx::new(13, 3).unwrap();
        let p = Params5::new(ctx.one(), ctx.one(), ctx.one(), ctx.one(), ctx.int(2)).unwrap();
        let cl = simeq_closure(&ctx, &p, DEFAULT_CAP).unwrap();
        assert!(cl.contains(&p));
        for x in &cl.members {
            for (_, y) in z2s4_neighbours(&ctx, x).unwrap() {
                assert!(cl.contains(&y));
            }
        }
        for k in 1..cl.len() {
            assert!(cl.edges.iter().any(|e| e.to == k));
        }
        assert_eq!(
            simeq_closure(&ctx, &p, 1).unwrap_err().kind(),
            "CapExceeded"
        );
    }
}
