//! The finite-dimensional modules `V_n(a,b,c)` and `W_lambda^delta(a,b,c)`
//! as explicit matrix pairs, with their weight data, spectral data and
//! distinguished vectors.

mod spectral;
mod universal;
mod weights;
mod wvec;

pub use spectral::*;
pub use universal::*;
pub use weights::*;
pub use wvec::*;

use serde::Serialize;

use crate::algebra::PairRep;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq2};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Params4 {
    pub a: Fq2,
    pub b: Fq2,
    pub c: Fq2,
    pub lambda: Fq2,
}

impl Params4 {
    pub fn new(a: Fq2, b: Fq2, c: Fq2, lambda: Fq2) -> Result<Self> {
        if [a, b, c, lambda].iter().any(|x| x.is_zero()) {
            return Err(Error::BadRange("a, b, c and lambda must be nonzero".into()));
        }
        Ok(Params4 { a, b, c, lambda })
    }

    pub fn with_delta(self, delta: Fq2) -> Params5 {
        Params5 {
            a: self.a,
            b: self.b,
            c: self.c,
            lambda: self.lambda,
            delta,
        }
    }

    pub fn to_array(self) -> [Fq2; 4] {
        [self.a, self.b, self.c, self.lambda]
    }

    pub fn from_array(x: [Fq2; 4]) -> Self {
        Params4 {
            a: x[0],
            b: x[1],
            c: x[2],
            lambda: x[3],
        }
    }

    pub fn neg(self) -> Self {
        Params4 {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            lambda: -self.lambda,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Params5 {
    pub a: Fq2,
    pub b: Fq2,
    pub c: Fq2,
    pub lambda: Fq2,
    pub delta: Fq2,
}

impl Params5 {
    pub fn new(a: Fq2, b: Fq2, c: Fq2, lambda: Fq2, delta: Fq2) -> Result<Self> {
        Ok(Params4::new(a, b, c, lambda)?.with_delta(delta))
    }

    pub fn quad(&self) -> Params4 {
        Params4 {
            a: self.a,
            b: self.b,
            c: self.c,
            lambda: self.lambda,
        }
    }

    pub fn to_array(self) -> [Fq2; 5] {
        [self.a, self.b, self.c, self.lambda, self.delta]
    }

    /// `delta + a^dbar lambda^-dbar + a^-dbar lambda^dbar`, the quantity
    /// preserved by the sign and S4 moves.
    pub fn delta_invariant(&self, ctx: &FieldCtx) -> Fq2 {
        let d = ctx.dbar() as i64;
        let x = self.a.powi(d) * self.lambda.powi(-d);
        self.delta + x + x.powi(-1)
    }
}

/// The sequences `theta_i`, `theta*_i`, `varphi_i` and the central scalars
/// attached to a quadruple.
#[derive(Clone, Copy, Debug)]
pub struct SeqData {
    ctx: FieldCtx,
    p: Params4,
}

impl SeqData {
    pub fn new(ctx: &FieldCtx, p: Params4) -> Self {
        SeqData { ctx: *ctx, p }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn params(&self) -> Params4 {
        self.p
    }

    fn q(&self, e: i64) -> Fq2 {
        self.ctx.q_pow(e)
    }

    pub fn theta(&self, i: i64) -> Fq2 {
        let x = self.p.a / self.p.lambda;
        x * self.q(2 * i) + x.powi(-1) * self.q(-2 * i)
    }

    pub fn theta_star(&self, i: i64) -> Fq2 {
        let x = self.p.b / self.p.lambda;
        x * self.q(2 * i) + x.powi(-1) * self.q(-2 * i)
    }

    pub fn varphi(&self, i: i64) -> Fq2 {
        let Params4 { a, b, c, lambda: l } = self.p;
        let li = l.powi(-1);
        let abcl = a * b * c * li;
        let abcil = a * b * c.powi(-1) * li;
        (a * b).powi(-1)
            * l
            * self.q(1)
            * (self.q(i) - self.q(-i))
            * (li * self.q(i - 1) - l * self.q(1 - i))
            * (self.q(-i) - abcl * self.q(i - 1))
            * (self.q(-i) - abcil * self.q(i - 1))
    }

    pub fn thetas(&self) -> Vec<Fq2> {
        (0..self.ctx.dbar() as i64).map(|i| self.theta(i)).collect()
    }

    pub fn theta_stars(&self) -> Vec<Fq2> {
        (0..self.ctx.dbar() as i64)
            .map(|i| self.theta_star(i))
            .collect()
    }

    fn lq(&self) -> Fq2 {
        let lq = self.p.lambda * self.q(1);
        lq + lq.powi(-1)
    }

    pub fn omega(&self) -> Fq2 {
        let Params4 { a, b, c, .. } = self.p;
        b.plus_inv() * c.plus_inv() + a.plus_inv() * self.lq()
    }

    pub fn omega_star(&self) -> Fq2 {
        let Params4 { a, b, c, .. } = self.p;
        c.plus_inv() * a.plus_inv() + b.plus_inv() * self.lq()
    }

    pub fn omega_eps(&self) -> Fq2 {
        let Params4 { a, b, c, .. } = self.p;
        a.plus_inv() * b.plus_inv() + c.plus_inv() * self.lq()
    }
}

fn lowering_raising(seq: &SeqData, n: usize) -> (Matrix, Matrix) {
    let z = seq.ctx.zero();
    let mut a = Matrix::zeros(z, n, n);
    let mut b = Matrix::zeros(z, n, n);
    for i in 0..n {
        a[(i, i)] = seq.theta(i as i64);
        b[(i, i)] = seq.theta_star(i as i64);
        if i + 1 < n {
            a[(i + 1, i)] = z.one_like();
            b[(i, i + 1)] = seq.varphi(i as i64 + 1);
        }
    }
    (a, b)
}

fn with_scalars(seq: &SeqData, a: Matrix, b: Matrix) -> PairRep {
    PairRep::new(
        seq.ctx,
        a,
        b,
        seq.omega(),
        seq.omega_star(),
        seq.omega_eps(),
    )
}

/// `V_n(a,b,c)`: the `(n+1)`-dimensional quotient with `lambda = q^n`.
pub fn build_vn(ctx: &FieldCtx, a: Fq2, b: Fq2, c: Fq2, n: usize) -> Result<PairRep> {
    if n + 2 > ctx.dbar() {
        return Err(Error::BadRange(format!(
            "n = {n} must lie in [0, {}]",
            ctx.dbar() - 2
        )));
    }
    let p = Params4::new(a, b, c, ctx.q_pow(n as i64))?;
    let seq = SeqData::new(ctx, p);
    let (am, bm) = lowering_raising(&seq, n + 1);
    Ok(with_scalars(&seq, am, bm))
}

/// `W_lambda^delta(a,b,c)`: the `dbar`-dimensional quotient whose `A` carries
/// `delta` in the top-right corner.
pub fn build_w(ctx: &FieldCtx, p: &Params5) -> PairRep {
    let seq = SeqData::new(ctx, p.quad());
    let n = ctx.dbar();
    let (mut am, bm) = lowering_raising(&seq, n);
    am[(0, n - 1)] += p.delta;
    with_scalars(&seq, am, bm)
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleDump {
    pub schema: u32,
    pub p: u32,
    pub d: u32,
    pub dbar: usize,
    pub params: Vec<Fq2>,
    #[serde(rename = "A")]
    pub a: Matrix,
    #[serde(rename = "B")]
    pub b: Matrix,
    pub omega: Fq2,
    pub omega_star: Fq2,
    pub omega_eps: Fq2,
}

impl ModuleDump {
    /// `params` is `[a, b, c, lambda, delta]`; for `V_n` delta is omitted by
    /// the caller's choice.
    pub fn new(rep: &PairRep, params: Vec<Fq2>) -> Self {
        ModuleDump {
            schema: 1,
            p: rep.ctx.p(),
            d: rep.ctx.d(),
            dbar: rep.ctx.dbar(),
            params,
            a: rep.a.clone(),
            b: rep.b.clone(),
            omega: rep.omega,
            omega_star: rep.omega_star,
            omega_eps: rep.omega_eps,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::verify_rep;
    use crate::poly::Poly;

    fn ctx() -> FieldCtx {
        FieldCtx::new(13, 3).unwrap()
    }

    fn p5(ctx: &FieldCtx, v: [i64; 5]) -> Params5 {
        Params5::new(
            ctx.int(v[0]),
            ctx.int(v[1]),
            ctx.int(v[2]),
            ctx.int(v[3]),
            ctx.int(v[4]),
        )
        .unwrap()
    }

    #[test]
    fn omega_at_all_ones() {
        let ctx = ctx();
        let seq = SeqData::new(&ctx, p5(&ctx, [1, 1, 1, 1, 0]).quad());
        assert_eq!(seq.omega(), ctx.int(2));
        assert!(seq.varphi(0).is_zero());
    }

    #[test]
    fn varphi_vanishes_past_vn() {
        let ctx = FieldCtx::new(37, 6).unwrap();
        for n in 0..ctx.dbar() as i64 - 1 {
            let p = Params4::new(ctx.int(2), ctx.int(5), ctx.int(7), ctx.q_pow(n)).unwrap();
            assert!(SeqData::new(&ctx, p).varphi(n + 1).is_zero());
        }
    }

    #[test]
    fn sequences_are_periodic() {
        for (p, d) in [(13, 3), (37, 6), (97, 8)] {
            let ctx = FieldCtx::new(p, d).unwrap();
            let seq = SeqData::new(
                &ctx,
                Params4::new(ctx.int(2), ctx.elem(3, 1), ctx.int(5), ctx.int(7)).unwrap(),
            );
            let db = ctx.dbar() as i64;
            for i in 0..=3 * db {
                assert_eq!(seq.theta(i), seq.theta(i + db));
                assert_eq!(seq.theta_star(i), seq.theta_star(i + db));
                assert_eq!(seq.varphi(i), seq.varphi(i + db));
            }
        }
    }

    #[test]
    fn v0_is_one_by_one() {
        let ctx = ctx();
        let (a, b, c) = (ctx.int(2), ctx.int(5), ctx.int(6));
        let r = build_vn(&ctx, a, b, c, 0).unwrap();
        assert_eq!(r.dim(), 1);
        assert_eq!(r.a[(0, 0)], a.plus_inv());
        assert_eq!(r.b[(0, 0)], b.plus_inv());
        assert!(verify_rep(&r).passed());
    }

    #[test]
    fn vn_range_guard() {
        let ctx = ctx();
        let err = build_vn(&ctx, ctx.one(), ctx.one(), ctx.one(), 2).unwrap_err();
        assert_eq!(err.kind(), "BadRange");
    }

    #[test]
    fn w_passes_and_has_expected_char_polys() {
        let ctx = ctx();
        let p = p5(&ctx, [2, 5, 6, 7, 3]);
        let r = build_w(&ctx, &p);
        assert!(verify_rep(&r).passed());
        let seq = SeqData::new(&ctx, p.quad());
        let pa = Poly::from_roots(ctx.one(), &seq.thetas()).sub(&Poly::constant(p.delta));
        assert_eq!(r.a.char_poly(), pa);
        assert_eq!(
            r.b.char_poly(),
            Poly::from_roots(ctx.one(), &seq.theta_stars())
        );
    }

    #[test]
    fn dump_serializes_rows() {
        let ctx = ctx();
        let p = p5(&ctx, [1, 1, 1, 1, 0]);
        let r = build_w(&ctx, &p);
        let v = serde_json::to_value(ModuleDump::new(&r, p.to_array().to_vec())).unwrap();
        assert_eq!(v["dbar"], 3);
        assert_eq!(v["A"].as_array().unwrap().len(), 3);
        assert_eq!(v["A"][1][0], serde_json::json!([1, 0]));
    }
}
