use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::equiv::{sign_class5, simeq_closure, z2s4_neighbours};
use crate::classify::intertwine::{intertwiner, isomorphic};
use crate::classify::irr::irr_w_criterion;
use crate::error::Result;
use crate::field::{FieldCtx, Fq2};
use crate::modules::{build_w, wrap_defect, Params4, Params5};

/// Seeded parameter sampler.
///
/// Draws use `ChaCha8Rng::seed_from_u64(seed)`. A unit is `+-q^k` with
/// probability 1/3, a uniform element of `F_p^x` with probability 1/3 and a
/// uniform element of `F_{p^2}^x` otherwise. A quadruple draws `a, b, lambda, s`
/// as units and sets `c = s^2 / (a b lambda q)`, so `sqrt(abc lambda q)` always
/// exists. `delta` is zero with probability 1/4, one of the boundary values
/// of the irreducibility and wrap conditions with probability 1/4, and a
/// uniform element of `F_{p^2}` otherwise.
pub struct Sampler {
    ctx: FieldCtx,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(ctx: FieldCtx, seed: u64) -> Self {
        Sampler {
            ctx,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn element(&mut self) -> Fq2 {
        let p = self.ctx.p() as i64;
        self.ctx
            .elem(self.rng.gen_range(0..p), self.rng.gen_range(0..p))
    }

    pub fn unit(&mut self) -> Fq2 {
        let p = self.ctx.p() as i64;
        match self.rng.gen_range(0..3) {
            0 => {
                let x = self.ctx.q_pow(self.rng.gen_range(0..self.ctx.d() as i64));
                if self.rng.gen_bool(0.5) {
                    -x
                } else {
                    x
                }
            }
            1 => self.ctx.int(self.rng.gen_range(1..p)),
            _ => loop {
                let x = self.element();
                if !x.is_zero() {
                    break x;
                }
            },
        }
    }

    pub fn params4(&mut self) -> Params4 {
        let (a, b, l, s) = (self.unit(), self.unit(), self.unit(), self.unit());
        let c = s * s / (a * b * l * self.ctx.q());
        Params4::new(a, b, c, l).expect("units are nonzero")
    }

    /// Values of `delta` at which some clause of the irreducibility
    /// criterion or the wrap condition switches.
    pub fn boundary_deltas(&self, p: &Params4) -> Vec<Fq2> {
        let ctx = &self.ctx;
        let d = ctx.dbar() as i64;
        let pw = |x: Fq2| x.powi(d);
        let (a, b, c, l) = (p.a, p.b, p.c, p.lambda);
        let shift = pw(a) * pw(l).powi(-1) + pw(a).powi(-1) * pw(l);
        let qd = ctx.q_pow(d);
        let mut out = vec![
            ctx.zero(),
            (pw(a) - pw(a).powi(-1)) * (pw(l) - pw(l).powi(-1)),
            (pw(b) * pw(c) + pw(b).powi(-1) * pw(c).powi(-1)) * qd - shift,
            (pw(b) * pw(c).powi(-1) + pw(b).powi(-1) * pw(c)) * qd - shift,
        ];
        let coeff = pw(b) * pw(l).powi(-1) - pw(b).powi(-1) * pw(l);
        if !coeff.is_zero() {
            out.push(-wrap_defect(ctx, &p.with_delta(ctx.zero())) / coeff);
        }
        out
    }

    pub fn params5(&mut self) -> Params5 {
        let p = self.params4();
        let delta = match self.rng.gen_range(0..4) {
            0 => self.ctx.zero(),
            1 => {
                let opts = self.boundary_deltas(&p);
                opts[self.rng.gen_range(0..opts.len())]
            }
            _ => self.element(),
        };
        p.with_delta(delta)
    }
}

/// The quintuples used by `classify_sample`. After the first, each draw
/// is, with probability 1/4, a uniformly chosen S4 neighbour of a uniformly
/// chosen earlier draw, and a fresh `params5` otherwise.
pub fn sample_quintuples(ctx: &FieldCtx, seed: u64, count: usize) -> Result<Vec<Params5>> {
    let mut sampler = Sampler::new(*ctx, seed);
    let mut out: Vec<Params5> = Vec::with_capacity(count);
    for i in 0..count {
        if i > 0 && sampler.rng().gen_bool(0.25) {
            let j = sampler.rng().gen_range(0..i);
            let nbrs = z2s4_neighbours(ctx, &out[j])?;
            let k = sampler.rng().gen_range(0..nbrs.len());
            out.push(nbrs[k].1);
        } else {
            out.push(sampler.params5());
        }
    }
    Ok(out)
}

/// Runs `f` on a pool capped by `UAWQ_THREADS` when set.
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let threads = std::env::var("UAWQ_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok());
    match threads {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .unwrap_or_else(|e| panic!("thread pool: {e}")),
        _ => f(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldInfo {
    pub p: u32,
    pub d: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    pub representative: Params5,
    /// Distinct sampled sign classes in this class, sorted.
    pub members: Vec<Params5>,
    pub sample_indices: Vec<usize>,
    pub size: usize,
    pub closure_size: usize,
    pub irreducible: bool,
    /// Every closure member is irreducible by the criterion.
    pub closure_in_pm: bool,
    /// Every closure member is isomorphic to the representative.
    pub isomorphisms_verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejected {
    pub index: usize,
    pub params: Params5,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleError {
    pub index: usize,
    pub params: Params5,
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub schema: u32,
    pub seed: u64,
    pub count: usize,
    pub field: FieldInfo,
    pub classes: Vec<ClassEntry>,
    pub rejected: Vec<Rejected>,
    pub errors: Vec<SampleError>,
    pub cross_class_pairs_checked: usize,
    /// Pairs of class indices whose representatives are isomorphic.
    pub cross_class_isomorphic: Vec<(usize, usize)>,
}

impl ClassReport {
    pub fn verified(&self) -> bool {
        self.cross_class_isomorphic.is_empty()
            && self
                .classes
                .iter()
                .all(|c| c.isomorphisms_verified && c.closure_in_pm)
    }
}

enum Outcome {
    Rejected,
    Closure(Vec<Params5>),
    Failed(crate::error::Error),
}

pub fn classify_sample(ctx: &FieldCtx, seed: u64, count: usize, cap: usize) -> Result<ClassReport> {
    if count == 0 {
        return Err(crate::error::Error::BadRange(
            "count must be at least 1".into(),
        ));
    }
    let samples = sample_quintuples(ctx, seed, count)?;
    let outcomes: Vec<Outcome> = with_pool(|| {
        samples
            .par_iter()
            .map(|p| {
                if !irr_w_criterion(ctx, p) {
                    return Outcome::Rejected;
                }
                match simeq_closure(ctx, p, cap) {
                    Ok(cl) => Outcome::Closure(cl.members),
                    Err(e) => Outcome::Failed(e),
                }
            })
            .collect()
    });

    let mut rejected = Vec::new();
    let mut errors = Vec::new();
    let mut groups: BTreeMap<Params5, (Vec<Params5>, Vec<usize>)> = BTreeMap::new();
    for (i, (p, o)) in samples.iter().zip(outcomes).enumerate() {
        match o {
            Outcome::Rejected => rejected.push(Rejected {
                index: i,
                params: *p,
                reason: "criterion".into(),
            }),
            Outcome::Failed(e) => errors.push(SampleError {
                index: i,
                params: *p,
                kind: e.kind().into(),
                message: e.to_string(),
            }),
            Outcome::Closure(members) => {
                let key = *members.iter().min().expect("closure is never empty");
                groups
                    .entry(key)
                    .or_insert_with(|| (members, Vec::new()))
                    .1
                    .push(i);
            }
        }
    }

    let groups: Vec<(Params5, Vec<Params5>, Vec<usize>)> = groups
        .into_iter()
        .map(|(k, (cl, idx))| (k, cl, idx))
        .collect();
    let classes: Vec<ClassEntry> = with_pool(|| {
        groups
            .par_iter()
            .map(|(rep, closure, idx)| {
                let rep_w = build_w(ctx, rep);
                let closure_in_pm = closure.iter().all(|x| irr_w_criterion(ctx, x));
                let isomorphisms_verified = closure
                    .iter()
                    .all(|x| isomorphic(&rep_w, &build_w(ctx, x)).unwrap_or(false));
                let mut members: Vec<Params5> =
                    idx.iter().map(|&i| sign_class5(&samples[i])).collect();
                members.sort();
                members.dedup();
                ClassEntry {
                    representative: *rep,
                    members,
                    sample_indices: idx.clone(),
                    size: idx.len(),
                    closure_size: closure.len(),
                    irreducible: true,
                    closure_in_pm,
                    isomorphisms_verified,
                }
            })
            .collect()
    });

    let reps: Vec<_> = classes
        .iter()
        .map(|c| build_w(ctx, &c.representative))
        .collect();
    let pairs: Vec<(usize, usize)> = (0..reps.len())
        .flat_map(|i| (i + 1..reps.len()).map(move |j| (i, j)))
        .collect();
    let cross_class_isomorphic: Vec<(usize, usize)> = with_pool(|| {
        pairs
            .par_iter()
            .filter(|&&(i, j)| {
                intertwiner(&reps[i], &reps[j])
                    .map(|s| s.is_some())
                    .unwrap_or(true)
            })
            .copied()
            .collect()
    });

    Ok(ClassReport {
        schema: 1,
        seed,
        count,
        field: FieldInfo {
            p: ctx.p(),
            d: ctx.d(),
        },
        classes,
        rejected,
        errors,
        cross_class_pairs_checked: pairs.len(),
        cross_class_isomorphic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::s4::orbit_sqrt;

    #[test]
    fn sampler_is_deterministic_and_computable() {
        let ctx = FieldCtx::new(13, 3).unwrap();
        let mut s1 = Sampler::new(ctx, 7);
        let mut s2 = Sampler::new(ctx, 7);
        for _ in 0..50 {
            let p = s1.params5();
            assert_eq!(p, s2.params5());
            assert!(orbit_sqrt(&ctx, &p.quad()).is_ok());
        }
    }

    #[test]
    fn small_classification() {
        let ctx = FieldCtx::new(13, 3).unwrap();
        let r1 = classify_sample(&ctx, 1, 20, 10_000).unwrap();
        let r2 = classify_sample(&ctx, 1, 20, 10_000).unwrap();
        assert_eq!(r1, r2);
        assert!(r1.verified());
        assert_eq!(
            r1.classes.iter().map(|c| c.size).sum::<usize>() + r1.rejected.len() + r1.errors.len(),
            20
        );
    }
}
