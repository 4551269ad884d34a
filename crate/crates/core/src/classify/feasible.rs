use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq2};
use crate::modules::{Params4, SeqData};
use crate::poly::{factor_roots, quadratic_roots, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Target {
    pub mu: Fq2,
    pub phi: Fq2,
    pub omega_star: Fq2,
    pub omega_eps: Fq2,
}

pub fn feasible_target(ctx: &FieldCtx, p: &Params4) -> Target {
    let seq = SeqData::new(ctx, *p);
    let q = ctx.q();
    let Params4 { a, b, c, lambda: l } = *p;
    Target {
        mu: b / l,
        phi: c.plus_inv() * (l - l.powi(-1)) - a.plus_inv() * (b * q - b.powi(-1) * q.powi(-1)),
        omega_star: seq.omega_star(),
        omega_eps: seq.omega_eps(),
    }
}

pub fn feasible(ctx: &FieldCtx, p: &Params4, t: &Target) -> bool {
    feasible_target(ctx, p) == *t
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibleSet {
    /// Distinct solutions, sorted.
    pub solutions: Vec<Params4>,
    /// False when some root of the quartic, sextic or quadratic lies outside
    /// `F_{p^2}`, so the list may be missing solutions.
    pub complete: bool,
}

/// The quartic whose roots are the admissible `kappa = a lambda^-1`.
pub fn kappa_poly(ctx: &FieldCtx, t: &Target) -> Poly {
    let q = ctx.q();
    let qi = q.powi(-1);
    let s = q + qi;
    Poly::new(vec![
        t.mu * q,
        -(t.omega_eps - q * t.phi) / s,
        t.omega_star - t.mu * qi - t.mu.powi(-1) * q,
        -(t.omega_eps + qi * t.phi) / s,
        (t.mu * q).powi(-1),
    ])
}

/// The sextic in `lambda` for a given `kappa`, written as a cubic in `lambda^2`.
pub fn lambda_sq_poly(ctx: &FieldCtx, t: &Target, kappa: Fq2) -> Poly {
    let q = ctx.q();
    let qi = q.powi(-1);
    let s = q + qi;
    let kmq = kappa * t.mu * q;
    Poly::new(vec![
        -kmq.powi(-1),
        (t.omega_eps + qi * t.phi) / s - kappa * t.mu.powi(-1) * qi,
        kappa.powi(-1) * t.mu * q - (t.omega_eps - q * t.phi) / s,
        kmq,
    ])
}

/// All `(a,b,c,lambda)` over `F_{p^2}` feasible for `t`.
pub fn solve_feasible(ctx: &FieldCtx, t: &Target) -> Result<FeasibleSet> {
    if t.mu.is_zero() {
        return Err(Error::BadRange("mu must be nonzero".into()));
    }
    let q = ctx.q();
    let qi = q.powi(-1);
    let mut complete = true;
    let mut out = Vec::new();
    let kappas = factor_roots(ctx, &kappa_poly(ctx, t))?;
    complete &= kappas.cofactor.degree() == Some(0);
    for &(kappa, _) in &kappas.roots {
        let ys = factor_roots(ctx, &lambda_sq_poly(ctx, t, kappa))?;
        complete &= ys.cofactor.degree() == Some(0);
        for &(y, _) in &ys.roots {
            let Ok(r) = ctx.sqrt(y) else {
                complete = false;
                continue;
            };
            for l in [r, -r] {
                let li = l.powi(-1);
                let kk = kappa * l + (kappa * l).powi(-1);
                let rr = if l * l != ctx.one() {
                    (t.phi + kk * (t.mu * l * q - (t.mu * l).powi(-1) * qi)) / (l - li)
                } else {
                    (t.omega_eps - kk * (t.mu * l + (t.mu * l).powi(-1))) / (l * q + li * qi)
                };
                let Ok(cs) = quadratic_roots(ctx, rr, ctx.one()) else {
                    complete = false;
                    continue;
                };
                for c in cs {
                    let p = Params4::new(kappa * l, t.mu * l, c, l)?;
                    if !feasible(ctx, &p, t) {
                        return Err(Error::InvariantViolation(format!(
                            "solver produced infeasible {p:?}"
                        )));
                    }
                    out.push(p);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(Error::NoSolutionsInField);
    }
    Ok(FeasibleSet {
        solutions: out,
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_read_off() {
        let ctx = FieldCtx::new(13, 3).unwrap();
        let one = ctx.one();
        let p = Params4::new(one, one, one, one).unwrap();
        let t = feasible_target(&ctx, &p);
        let q = ctx.q();
        assert_eq!(t.mu, one);
        assert_eq!(t.phi, -ctx.int(2) * (q - q.powi(-1)));
        assert!(feasible(&ctx, &p, &t));
        assert!(!feasible(&ctx, &p, &Target { mu: -t.mu, ..t }));
    }

    #[test]
    fn round_trip_contains_input() {
        let ctx = FieldCtx::new(13, 3).unwrap();
        let p = Params4::new(ctx.int(2), ctx.int(5), ctx.int(6), ctx.int(7)).unwrap();
        let t = feasible_target(&ctx, &p);
        let sols = solve_feasible(&ctx, &t).unwrap();
        assert!(sols.solutions.contains(&p) || sols.solutions.contains(&p.neg()));
    }
}
