//! Named property checks over seeded samples, grouped by level.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{central_elements_check, verify_rep};
use crate::classify::*;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq2};
use crate::linalg::unit_vec;
use crate::modules::*;
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Smoke,
    Standard,
    Exhaustive,
}

impl Level {
    pub fn parse(s: &str) -> Result<Level> {
        match s {
            "smoke" => Ok(Level::Smoke),
            "standard" => Ok(Level::Standard),
            "exhaustive" => Ok(Level::Exhaustive),
            _ => Err(Error::Parse(format!("unknown level {s:?}"))),
        }
    }

    fn samples(self) -> usize {
        match self {
            Level::Smoke => 10,
            Level::Standard => 100,
            Level::Exhaustive => 500,
        }
    }
}

/// Largest prime admitted by the exhaustive level.
pub const EXHAUSTIVE_MAX_P: u32 = 17;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub skipped: usize,
    /// The first failing instance, for reproduction.
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub p: u32,
    pub d: u32,
    pub seed: u64,
    pub level: Level,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Outcome of one instance: pass, fail with a description, or skip.
enum Case {
    Pass,
    Fail(String),
    Skip,
}

fn tally(name: &str, cases: impl IntoIterator<Item = Case>) -> CheckResult {
    let mut r = CheckResult {
        name: name.into(),
        passed: true,
        cases: 0,
        skipped: 0,
        first_failure: None,
    };
    for c in cases {
        match c {
            Case::Pass => r.cases += 1,
            Case::Skip => r.skipped += 1,
            Case::Fail(s) => {
                r.cases += 1;
                if r.passed {
                    r.first_failure = Some(s);
                }
                r.passed = false;
            }
        }
    }
    r
}

fn case(ok: bool, what: impl FnOnce() -> String) -> Case {
    if ok {
        Case::Pass
    } else {
        Case::Fail(what())
    }
}

fn draws<T>(ctx: &FieldCtx, seed: u64, n: usize, mut f: impl FnMut(&mut Sampler) -> T) -> Vec<T> {
    let mut s = Sampler::new(*ctx, seed);
    (0..n).map(|_| f(&mut s)).collect()
}

fn check_relations(ctx: &FieldCtx, seed: u64, n: usize) -> CheckResult {
    let dbar = ctx.dbar();
    let ps = draws(ctx, seed, n, |s| {
        let k = s.rng().gen_range(0..dbar - 1);
        (s.params5(), k)
    });
    tally(
        "relations hold on W and V_n",
        ps.par_iter()
            .map(|(p, k)| {
                let w = verify_rep(&build_w(ctx, p)).passed();
                let v = build_vn(ctx, p.a, p.b, p.c, *k)
                    .map(|r| verify_rep(&r).passed())
                    .unwrap_or(false);
                case(w && v, || format!("{p:?} n={k}"))
            })
            .collect::<Vec<_>>(),
    )
}

fn check_periodicity(ctx: &FieldCtx, seed: u64, n: usize) -> CheckResult {
    let d = ctx.dbar() as i64;
    tally(
        "theta, theta*, varphi have period dbar",
        draws(ctx, seed, n, |s| s.params4()).into_iter().map(|p| {
            let seq = SeqData::new(ctx, p);
            let ok = (-d..d).all(|i| {
                seq.theta(i) == seq.theta(i + d)
                    && seq.theta_star(i) == seq.theta_star(i + d)
                    && seq.varphi(i) == seq.varphi(i + d)
            });
            case(ok, || format!("{p:?}"))
        }),
    )
}

fn check_char_polys(ctx: &FieldCtx, seed: u64, n: usize) -> Vec<CheckResult> {
    let ps = draws(ctx, seed, n, |s| s.params5());
    let a = ps.iter().map(|p| {
        case(
            build_w(ctx, p).a.char_poly() == w_a_char_poly(ctx, p),
            || format!("{p:?}"),
        )
    });
    let a = tally(
        "char poly of A on W is prod(x - theta_i) - delta",
        a.collect::<Vec<_>>(),
    );
    let b = ps.iter().map(|p| {
        let seq = SeqData::new(ctx, p.quad());
        let want = Poly::from_roots(ctx.one(), &seq.theta_stars());
        case(build_w(ctx, p).b.char_poly() == want, || format!("{p:?}"))
    });
    vec![
        a,
        tally(
            "char poly of B on W is prod(x - theta*_i)",
            b.collect::<Vec<_>>(),
        ),
    ]
}

fn check_centre(ctx: &FieldCtx, seed: u64, n: usize) -> CheckResult {
    let ps = draws(ctx, seed, n, |s| (s.params5(), s.unit()));
    tally(
        "Chebyshev and shifted products are central; prod(A - theta_i) = delta",
        ps.par_iter()
            .map(|(p, mu)| {
                let rep = build_w(ctx, p);
                let seq = SeqData::new(ctx, p.quad());
                let ok = central_elements_check(&rep, *mu).passed()
                    && rep.a.shifted_product(&seq.thetas()).is_scalar(p.delta);
                case(ok, || format!("{p:?} mu={mu}"))
            })
            .collect::<Vec<_>>(),
    )
}

fn check_universal(ctx: &FieldCtx, seed: u64, n: usize) -> CheckResult {
    tally(
        "w_0 generates W with the universal property",
        draws(ctx, seed, n, |s| s.params5()).into_iter().map(|p| {
            let ok = check_w_universal(&build_w(ctx, &p), &unit_vec(ctx.zero(), ctx.dbar(), 0), &p)
                .unwrap_or(false);
            case(ok, || format!("{p:?}"))
        }),
    )
}

fn check_feasible(ctx: &FieldCtx, seed: u64, n: usize) -> CheckResult {
    let ps = draws(ctx, seed, n, |s| s.params4());
    tally(
        "feasibility solutions contain P and lie in its S4 orbit",
        ps.par_iter()
            .map(|p| {
                let t = feasible_target(ctx, p);
                let Ok(sols) = solve_feasible(ctx, &t) else {
                    return Case::Fail(format!("{p:?}: no solutions"));
                };
                let Ok(orbit) = s4_orbit(ctx, p) else {
                    return Case::Skip;
                };
                let has_p = sols
                    .solutions
                    .iter()
                    .any(|x| sign_class(x) == sign_class(p));
                let inside = sols.solutions.iter().all(|x| orbit.contains(x));
                let all_feasible = orbit
                    .classes
                    .iter()
                    .all(|x| feasible(ctx, x, &t) || feasible(ctx, &x.neg(), &t));
                case(has_p && inside && all_feasible, || format!("{p:?}"))
            })
            .collect::<Vec<_>>(),
    )
}

fn check_s4(ctx: &FieldCtx, seed: u64, n: usize) -> CheckResult {
    let gens: Vec<_> = ["(1 2)", "(2 3)", "(3 4)"]
        .iter()
        .map(|g| s4_row(g).expect("generator row"))
        .collect();
    let ps = draws(ctx, seed, n, |s| (s.params4(), s.params4()));
    tally(
        "S4 orbits are closed and the relation is symmetric",
        ps.iter().map(|(p, r)| {
            let Ok(orbit) = s4_orbit(ctx, p) else {
                return Case::Skip;
            };
            let closed = orbit.classes.iter().all(|x| {
                gens.iter().all(|g| {
                    apply_row(ctx, x, g)
                        .map(|y| orbit.contains(&y))
                        .unwrap_or(false)
                })
            });
            let member = orbit.classes[orbit.classes.len() / 2];
            let sym = approx_equiv(ctx, &member, p).unwrap_or(false)
                && approx_equiv(ctx, p, r).ok() == approx_equiv(ctx, r, p).ok();
            case(closed && sym && orbit.classes.len() <= 24, || {
                format!("{p:?} {r:?}")
            })
        }),
    )
}

fn check_neighbour_isomorphisms(ctx: &FieldCtx, seed: u64, n: usize) -> CheckResult {
    let ps = draws(ctx, seed, n, |s| s.params5());
    let e0 = unit_vec(ctx.zero(), ctx.dbar(), 0);
    tally(
        "S4 neighbours give isomorphic W sending w_0 to w_0",
        ps.par_iter()
            .map(|p| {
                let rep = build_w(ctx, p);
                let Ok(nbrs) = z2s4_neighbours(ctx, p) else {
                    return Case::Skip;
                };
                for (label, x) in nbrs {
                    let other = build_w(ctx, &x);
                    let iso = isomorphic(&rep, &other).unwrap_or(false);
                    let univ = check_w_universal(&rep, &e0, &x).unwrap_or(false)
                        && check_w_universal(&other, &e0, p).unwrap_or(false);
                    if !(iso && univ) {
                        return Case::Fail(format!("{p:?} row {label} -> {x:?}"));
                    }
                }
                Case::Pass
            })
            .collect::<Vec<_>>(),
    )
}

/// `lambda = +-q^{k-1}` with `1 <= k <= dbar-1`, and the matching `k`.
fn marginal_instance(s: &mut Sampler) -> (Params5, usize) {
    let ctx = *s.ctx();
    let k = s.rng().gen_range(1..ctx.dbar());
    let sign = if s.rng().gen_bool(0.5) {
        ctx.one()
    } else {
        -ctx.one()
    };
    let p = s.params5();
    (
        Params5 {
            lambda: sign * ctx.q_pow(k as i64 - 1),
            ..p
        },
        k,
    )
}

/// A quintuple whose `delta` makes the wrap defect vanish, when possible.
fn wrap_instance(s: &mut Sampler) -> Option<Params5> {
    let ctx = *s.ctx();
    let d = ctx.dbar() as i64;
    let p = s.params5();
    let coeff = p.b.powi(d) * p.lambda.powi(-d) - p.b.powi(-d) * p.lambda.powi(d);
    if coeff.is_zero() {
        return None;
    }
    let rest = -wrap_defect(
        &ctx,
        &Params5 {
            delta: ctx.zero(),
            ..p
        },
    );
    Some(Params5 {
        delta: rest / coeff,
        ..p
    })
}

fn check_moves(ctx: &FieldCtx, seed: u64, n: usize) -> Vec<CheckResult> {
    let d = ctx.dbar();
    let ii = draws(ctx, seed, n, marginal_instance)
        .into_iter()
        .map(|(p, k)| {
            let ok = move_ii_allowed(ctx, &p)
                && check_w_universal(
                    &build_w(ctx, &p),
                    &unit_vec(ctx.zero(), d, k),
                    &move_ii(ctx, &p),
                )
                .unwrap_or(false);
            case(ok, || format!("{p:?} k={k}"))
        });
    let ii = tally(
        "marginal move: W' -> W sends w'_0 to w_k",
        ii.collect::<Vec<_>>(),
    );
    let iii = draws(ctx, seed ^ 0x5eed, n, wrap_instance)
        .into_iter()
        .map(|p| {
            let Some(p) = p.filter(|p| move_iii_allowed(ctx, p)) else {
                return Case::Skip;
            };
            let Ok(v) = w_ij(ctx, &p, 0, d - 1) else {
                return Case::Fail(format!("{p:?}"));
            };
            case(
                check_w_universal(&build_w(ctx, &p), &v, &move_iii(ctx, &p)).unwrap_or(false),
                || format!("{p:?}"),
            )
        });
    vec![
        ii,
        tally(
            "wrap move: W' -> W sends w'_0 to w_{0,dbar-1}",
            iii.collect::<Vec<_>>(),
        ),
    ]
}

fn check_w_vectors(ctx: &FieldCtx, seed: u64, n: usize) -> CheckResult {
    let d = ctx.dbar();
    let ps = draws(ctx, seed, n, |s| s.params5());
    tally(
        "lowering, raising and wrap scalars on w_{0i}",
        ps.par_iter()
            .map(|p| {
                let rep = build_w(ctx, p);
                let seq = SeqData::new(ctx, p.quad());
                let ts = |i: usize| seq.theta_star(i as i64);
                let apply = |x: usize, y: usize, v: &[Fq2]| {
                    let av = rep.a.mul_vec(v);
                    rep.b
                        .sub_scalar(ts(x))
                        .mul_vec(&rep.b.sub_scalar(ts(y)).mul_vec(&av))
                };
                let w0 = |i: usize| w_ij(ctx, p, 0, i).expect("index in range");
                let scaled = |v: Vec<Fq2>, s: Fq2| v.into_iter().map(|x| x * s).collect::<Vec<_>>();
                let low = (1..d).all(|i| {
                    apply(i + 1, i, &w0(i)) == scaled(w0(i - 1), lowering_scalar(ctx, p, i))
                });
                let raise = (1..d - 1).all(|i| {
                    apply(i - 1, i, &w0(i)) == scaled(w0(i + 1), raising_scalar(ctx, p, i))
                });
                let wrap = apply(d - 2, d - 1, &w0(d - 1)) == scaled(w0(0), wrap_scalar(ctx, p));
                case(low && raise && wrap, || format!("{p:?}"))
            })
            .collect::<Vec<_>>(),
    )
}

/// A quintuple and `nu` placing `nu q^{-2i}` in the value set of `case`.
pub fn l_case_instance(s: &mut Sampler, case: LCase, i: usize) -> (Params5, NuData) {
    let ctx = *s.ctx();
    let d = ctx.dbar() as i64;
    let p0 = s.params4().with_delta(ctx.zero());
    let pick = s.rng().gen_range(0..2);
    let nu = l_case_values(&ctx, &p0, case)[pick] * ctx.q_pow(2 * i as i64);
    let p = Params5 {
        delta: nu.powi(d) + nu.powi(-d) - p0.delta_invariant(&ctx),
        ..p0
    };
    let nd = NuData::with_nu(&ctx, &p, nu).expect("nu solves its equation by construction");
    (p, nd)
}

fn check_l(ctx: &FieldCtx, seed: u64, n: usize) -> CheckResult {
    let d = ctx.dbar();
    let mut s = Sampler::new(*ctx, seed);
    let mut cases = Vec::new();
    for t in 0..n {
        let lc = LCase::ALL[t % 4];
        let i = s.rng().gen_range(0..d);
        let (p, nu) = l_case_instance(&mut s, lc, i);
        let rec = l_recurrence(ctx, &p, &nu, i).expect("index in range");
        let closed = (0..d).all(|j| (0..d).all(|k| l_closed_case(ctx, &p, lc, j, k) == rec[j][k]));
        let mat = l_by_matrix(ctx, &p, &nu, i)
            .map(|m| m == rec)
            .unwrap_or(false);
        cases.push(case(closed && mat, || {
            format!("{p:?} nu={} i={i} case {lc:?}", nu.nu)
        }));
    }
    tally("L closed forms = recurrence = matrix action", cases)
}

fn check_marginal_e(ctx: &FieldCtx, seed: u64, n: usize) -> CheckResult {
    let d = ctx.dbar();
    let mut s = Sampler::new(*ctx, seed);
    let mut cases = Vec::new();
    for t in 0..n {
        let (p, nu) = if t % 2 == 0 {
            let i = s.rng().gen_range(0..d);
            l_case_instance(&mut s, LCase::ALL[t / 2 % 4], i)
        } else {
            let p = s.params5();
            match nu_of(ctx, &p) {
                Ok(nu) => (p, nu),
                Err(_) => {
                    cases.push(Case::Skip);
                    continue;
                }
            }
        };
        let ok = (0..d).all(|i| {
            marginal_test_e(ctx, &p, &nu, i).ok() == marginal_matrix_e(ctx, &p, &nu, i).ok()
        });
        cases.push(case(ok, || format!("{p:?} nu={}", nu.nu)));
    }
    tally(
        "marginal conditions on e_i: membership = matrix form",
        cases,
    )
}

fn check_irr_w(ctx: &FieldCtx, seed: u64, n: usize) -> CheckResult {
    let ps = draws(ctx, seed, n, |s| s.params5());
    tally(
        "W criterion = orbit criterion = Burnside",
        ps.par_iter()
            .map(|p| {
                let crit = irr_w_criterion(ctx, p);
                let orbit = irr_w_orbit_criterion(ctx, p).unwrap_or(crit);
                let oracle = burnside_irreducible(&build_w(ctx, p));
                case(crit == oracle && orbit == crit, || {
                    format!("{p:?} criterion={crit} orbit={orbit} oracle={oracle}")
                })
            })
            .collect::<Vec<_>>(),
    )
}

fn check_irr_vn(ctx: &FieldCtx, seed: u64, n: usize) -> CheckResult {
    let dbar = ctx.dbar();
    let ps = draws(ctx, seed, n, |s| {
        (s.params4(), s.rng().gen_range(0..dbar - 1))
    });
    tally(
        "V_n criterion = Burnside",
        ps.par_iter()
            .map(|(p, k)| {
                let crit = irr_vn_criterion(ctx, p.a, p.b, p.c, *k);
                let oracle = build_vn(ctx, p.a, p.b, p.c, *k).map(|r| burnside_irreducible(&r));
                case(crit.is_ok() && crit == oracle, || format!("{p:?} n={k}"))
            })
            .collect::<Vec<_>>(),
    )
}

fn check_classify(ctx: &FieldCtx, seed: u64, n: usize) -> CheckResult {
    let r = classify_sample(ctx, seed, n, DEFAULT_CAP);
    let ok = matches!(&r, Ok(r) if r.verified() && r.errors.is_empty());
    CheckResult {
        name: "classification: isomorphic within classes, not across".into(),
        passed: ok,
        cases: n,
        skipped: 0,
        first_failure: if ok {
            None
        } else {
            Some(format!("seed={seed} count={n}"))
        },
    }
}

/// Exhaustive sweeps over the base field: `W` over `(F_p^x)^4 x F_p` and
/// `V_n` over `(F_p^x)^3` for every admissible `n`.
pub fn exhaustive_sweeps(ctx: &FieldCtx) -> Vec<CheckResult> {
    let p = ctx.p() as i64;
    let units: Vec<Fq2> = (1..p).map(|x| ctx.int(x)).collect();
    let m = units.len();
    let w: Vec<Case> = (0..m.pow(4))
        .into_par_iter()
        .flat_map_iter(|k| {
            let u = &units;
            let quad = Params4::new(
                u[k % m],
                u[k / m % m],
                u[k / (m * m) % m],
                u[k / (m * m * m)],
            )
            .expect("units");
            (0..p).map(move |dl| {
                let x = quad.with_delta(ctx.int(dl));
                let (c, o) = (
                    irr_w_criterion(ctx, &x),
                    burnside_irreducible(&build_w(ctx, &x)),
                );
                case(c == o, || format!("{x:?} criterion={c} oracle={o}"))
            })
        })
        .collect();
    let v: Vec<Case> = (0..m.pow(3) * (ctx.dbar() - 1))
        .into_par_iter()
        .map(|k| {
            let (a, b, c, n) = (
                units[k % m],
                units[k / m % m],
                units[k / (m * m) % m],
                k / (m * m * m),
            );
            let crit = irr_vn_criterion(ctx, a, b, c, n);
            let oracle = build_vn(ctx, a, b, c, n).map(|r| burnside_irreducible(&r));
            case(crit.is_ok() && crit == oracle, || {
                format!("({a}, {b}, {c}) n={n}")
            })
        })
        .collect();
    vec![
        tally("exhaustive W criterion = Burnside over F_p", w),
        tally("exhaustive V_n criterion = Burnside over F_p", v),
    ]
}

pub fn run_suite(ctx: &FieldCtx, seed: u64, level: Level) -> Result<SuiteReport> {
    if level == Level::Exhaustive && ctx.p() > EXHAUSTIVE_MAX_P {
        return Err(Error::BadRange(format!(
            "exhaustive level needs p <= {EXHAUSTIVE_MAX_P}"
        )));
    }
    let n = level.samples();
    let mut checks = vec![
        check_relations(ctx, seed, n),
        check_periodicity(ctx, seed, n),
    ];
    checks.extend(check_char_polys(ctx, seed, n));
    checks.push(check_centre(ctx, seed, n));
    checks.push(check_universal(ctx, seed, n));
    checks.push(check_feasible(ctx, seed, n));
    checks.push(check_s4(ctx, seed, n));
    checks.push(check_neighbour_isomorphisms(ctx, seed, n.min(100)));
    checks.extend(check_moves(ctx, seed, n));
    checks.push(check_w_vectors(ctx, seed, n));
    checks.push(check_l(ctx, seed, n));
    checks.push(check_marginal_e(ctx, seed, n));
    checks.push(check_irr_w(ctx, seed, n));
    checks.push(check_irr_vn(ctx, seed, n));
    checks.push(check_classify(ctx, seed, n.min(200)));
    if level == Level::Exhaustive {
        checks.extend(exhaustive_sweeps(ctx));
    }
    Ok(SuiteReport {
        schema: 1,
        p: ctx.p(),
        d: ctx.d(),
        seed,
        level,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoke_passes() {
        for (p, d) in [(13, 3), (37, 6)] {
            let ctx = FieldCtx::new(p, d).unwrap();
            let r = run_suite(&ctx, 1, Level::Smoke).unwrap();
            for c in &r.checks {
                assert!(c.passed, "{c:?}");
            }
        }
    }

    #[test]
    fn exhaustive_is_gated() {
        let ctx = FieldCtx::new(37, 6).unwrap();
        assert_eq!(
            run_suite(&ctx, 1, Level::Exhaustive).unwrap_err().kind(),
            "BadRange"
        );
    }
}
