use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq2};
use crate::linalg::Vector;
use crate::modules::{Params5, SeqData};

/// `w_ij = sum_{h=0}^{j-i} (prod_{k=h}^{j-i-1} varphi_{i+k+1})
/// (prod_{k=0}^{h-1} (theta*_j - theta*_{i+k})) w_{i+h}`.
pub fn w_ij(ctx: &FieldCtx, p: &Params5, i: usize, j: usize) -> Result<Vector> {
    let d = ctx.dbar();
    if i > j || j >= d {
        return Err(Error::BadRange(format!(
            "need 0 <= i <= j <= {}, got ({i}, {j})",
            d - 1
        )));
    }
    let seq = SeqData::new(ctx, p.quad());
    let ts_j = seq.theta_star(j as i64);
    let mut v = vec![ctx.zero(); d];
    for h in 0..=j - i {
        let phis = (h..j - i).fold(ctx.one(), |acc, k| acc * seq.varphi((i + k + 1) as i64));
        let diffs = (0..h).fold(ctx.one(), |acc, k| {
            acc * (ts_j - seq.theta_star((i + k) as i64))
        });
        v[i + h] = phis * diffs;
    }
    Ok(v)
}

/// The scalar with `(B - theta*_{i+1})(B - theta*_i) A w_{0i} = s w_{0,i-1}`,
/// for `1 <= i <= dbar-1`.
pub fn lowering_scalar(ctx: &FieldCtx, p: &Params5, i: usize) -> Fq2 {
    let seq = SeqData::new(ctx, p.quad());
    let q = |e: i64| ctx.q_pow(e);
    let (a, b, c, l) = (p.a, p.b, p.c, p.lambda);
    let (ai, bi, ci, li) = (a.powi(-1), b.powi(-1), c.powi(-1), l.powi(-1));
    let i = i as i64;
    a * bi
        * l
        * q(1)
        * (q(1) - q(-1))
        * (q(2) - q(-2))
        * (q(i) - q(-i))
        * seq.varphi(i)
        * (b * q(i) - bi * q(-i))
        * (q(-i) - ai * b * ci * li * q(i - 1))
        * (q(-i) - ai * b * c * li * q(i - 1))
}

/// The scalar with `(B - theta*_{i-1})(B - theta*_i) A w_{0i} = s w_{0,i+1}`,
/// for `1 <= i <= dbar-2`.
pub fn raising_scalar(ctx: &FieldCtx, p: &Params5, i: usize) -> Fq2 {
    let seq = SeqData::new(ctx, p.quad());
    let q = |e: i64| ctx.q_pow(e);
    let i = i as i64;
    (q(1) - q(-1)) * (q(2) - q(-2)) / ((q(i) - q(-i)) * (q(i + 1) - q(-i - 1)))
        * (seq.theta_star(i) - seq.theta_star(0))
}

/// `delta (b^d lambda^-d - b^-d lambda^d) - a^-d b^-d (lambda^{2d} - 1)
/// (a^d b^d c^d lambda^-d q^d - 1)(a^d b^d c^-d lambda^-d q^d - 1)` with
/// `d = dbar`.
pub fn wrap_defect(ctx: &FieldCtx, p: &Params5) -> Fq2 {
    let d = ctx.dbar() as i64;
    let pw = |x: Fq2, e: i64| x.powi(e);
    let (a, b, c, l) = (p.a, p.b, p.c, p.lambda);
    let qd = ctx.q_pow(d);
    let one = ctx.one();
    p.delta * (pw(b, d) * pw(l, -d) - pw(b, -d) * pw(l, d))
        - pw(a * b, -d)
            * (pw(l, 2 * d) - one)
            * (pw(a * b * c, d) * pw(l, -d) * qd - one)
            * (pw(a * b, d) * pw(c, -d) * pw(l, -d) * qd - one)
}

/// The scalar with
/// `(B - theta*_{dbar-2})(B - theta*_{dbar-1}) A w_{0,dbar-1} = s w_0`.
pub fn wrap_scalar(ctx: &FieldCtx, p: &Params5) -> Fq2 {
    let seq = SeqData::new(ctx, p.quad());
    let d = ctx.dbar() as i64;
    let q = |e: i64| ctx.q_pow(e);
    let qprod = (1..d).fold(ctx.one(), |acc, i| acc * (q(i) - q(-i)));
    q(-(d * (d - 1) / 2))
        * (q(2) - q(-2))
        * qprod
        * (seq.theta_star(0) - seq.theta_star(d - 1))
        * wrap_defect(ctx, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{is_zero_vec, unit_vec, vec_scale};
    use crate::modules::build_w;

    #[test]
    fn w_ii_is_basis_vector() {
        let ctx = FieldCtx::new(37, 6).unwrap();
        let p = Params5::new(ctx.int(2), ctx.int(5), ctx.int(6), ctx.int(7), ctx.int(3)).unwrap();
        for i in 0..ctx.dbar() {
            assert_eq!(
                w_ij(&ctx, &p, i, i).unwrap(),
                unit_vec(ctx.zero(), ctx.dbar(), i)
            );
        }
        assert_eq!(w_ij(&ctx, &p, 2, 1).unwrap_err().kind(), "BadRange");
    }

    #[test]
    fn w_0i_is_eigenvector() {
        let ctx = FieldCtx::new(37, 6).unwrap();
        let p = Params5::new(ctx.int(2), ctx.int(5), ctx.int(6), ctx.int(7), ctx.int(3)).unwrap();
        let rep = build_w(&ctx, &p);
        let seq = SeqData::new(&ctx, p.quad());
        for i in 0..ctx.dbar() {
            let w = w_ij(&ctx, &p, 0, i).unwrap();
            assert!(is_zero_vec(
                &rep.b.sub_scalar(seq.theta_star(i as i64)).mul_vec(&w)
            ));
        }
    }

    #[test]
    fn section_ten_identities() {
        let ctx = FieldCtx::new(37, 6).unwrap();
        let d = ctx.dbar();
        let p = Params5::new(ctx.int(2), ctx.int(5), ctx.int(6), ctx.int(7), ctx.int(3)).unwrap();
        let rep = build_w(&ctx, &p);
        let seq = SeqData::new(&ctx, p.quad());
        let ts = |i: usize| seq.theta_star(i as i64);
        let apply = |x: usize, y: usize, v: &Vector| {
            let av = rep.a.mul_vec(v);
            rep.b
                .sub_scalar(ts(x))
                .mul_vec(&rep.b.sub_scalar(ts(y)).mul_vec(&av))
        };
        let w0 = |i: usize| w_ij(&ctx, &p, 0, i).unwrap();
        for i in 1..d {
            assert_eq!(
                apply(i + 1, i, &w0(i)),
                vec_scale(&w0(i - 1), lowering_scalar(&ctx, &p, i))
            );
        }
        assert_eq!(
            apply(d - 1, 0, &w0(0)),
            vec_scale(&w0(1), ts(1) - ts(d - 1))
        );
        for i in 1..d - 1 {
            assert_eq!(
                apply(i - 1, i, &w0(i)),
                vec_scale(&w0(i + 1), raising_scalar(&ctx, &p, i))
            );
        }
        assert_eq!(
            apply(d - 2, d - 1, &w0(d - 1)),
            vec_scale(&w0(0), wrap_scalar(&ctx, &p))
        );
    }
}
