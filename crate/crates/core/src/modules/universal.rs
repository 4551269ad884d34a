use crate::algebra::PairRep;
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, vec_scale, vec_sub};
use crate::modules::{Params4, Params5, SeqData};

/// Whether `rep` admits a homomorphism from the Verma module with parameters
/// `p` sending `m_0` to `v`.
pub fn check_verma_universal(rep: &PairRep, v: &[crate::field::Fq2], p: &Params4) -> Result<bool> {
    if is_zero_vec(v) {
        return Err(Error::ZeroVector);
    }
    if v.len() != rep.dim() {
        return Err(Error::DimensionMismatch(v.len(), rep.dim()));
    }
    let seq = SeqData::new(&rep.ctx, *p);
    let (t0, ts0, ts1) = (seq.theta(0), seq.theta_star(0), seq.theta_star(1));
    let bv = rep.b.mul_vec(v);
    let first = bv == vec_scale(v, ts0);
    let lhs = rep.b.sub_scalar(ts1).mul_vec(&rep.a.mul_vec(v));
    let second = lhs == vec_scale(v, t0 * (ts0 - ts1) + seq.varphi(1));
    Ok(first && second && rep.omega_star == seq.omega_star() && rep.omega_eps == seq.omega_eps())
}

/// Whether `rep` admits a homomorphism from `W` with parameters `p` sending
/// `w_0` to `v`.
pub fn check_w_universal(rep: &PairRep, v: &[crate::field::Fq2], p: &Params5) -> Result<bool> {
    if !check_verma_universal(rep, v, &p.quad())? {
        return Ok(false);
    }
    let seq = SeqData::new(&rep.ctx, p.quad());
    let pv = rep.a.shifted_product(&seq.thetas()).mul_vec(v);
    Ok(is_zero_vec(&vec_sub(&pv, &vec_scale(v, p.delta))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::linalg::unit_vec;
    use crate::modules::{build_vn, build_w};

    #[test]
    fn w0_is_universal() {
        let ctx = FieldCtx::new(13, 3).unwrap();
        let p = Params5::new(ctx.int(2), ctx.int(5), ctx.int(6), ctx.int(7), ctx.int(3)).unwrap();
        let rep = build_w(&ctx, &p);
        let w0 = unit_vec(ctx.zero(), 3, 0);
        assert!(check_w_universal(&rep, &w0, &p).unwrap());
        let wrong = Params5 {
            delta: p.delta + ctx.one(),
            ..p
        };
        assert!(!check_w_universal(&rep, &w0, &wrong).unwrap());
        assert!(!check_verma_universal(&rep, &unit_vec(ctx.zero(), 3, 1), &p.quad()).unwrap());
        assert_eq!(
            check_verma_universal(&rep, &[ctx.zero(); 3], &p.quad())
                .unwrap_err()
                .kind(),
            "ZeroVector"
        );
    }

    #[test]
    fn v0_is_universal() {
        let ctx = FieldCtx::new(13, 3).unwrap();
        let (a, b, c) = (ctx.int(2), ctx.int(5), ctx.int(6));
        let rep = build_vn(&ctx, a, b, c, 0).unwrap();
        let p = Params4::new(a, b, c, ctx.one()).unwrap();
        assert!(check_verma_universal(&rep, &[ctx.one()], &p).unwrap());
    }
}
