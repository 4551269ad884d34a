//! Matrix pairs as modules of the universal Askey-Wilson algebra: the
//! derived generator `C`, the central elements `alpha`, `beta` (with `gamma`
//! acting as a scalar), the `vee` automorphism and the Chebyshev-type
//! central elements.

use serde::Serialize;

use crate::field::{FieldCtx, Fq2};
use crate::linalg::Matrix;
use crate::poly::chebyshev_t;

/// A concrete finite-dimensional module given by the matrices of `A` and `B`
/// together with the scalars by which `alpha`, `beta`, `gamma` act.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRep {
    pub ctx: FieldCtx,
    pub a: Matrix,
    pub b: Matrix,
    pub omega: Fq2,
    pub omega_star: Fq2,
    pub omega_eps: Fq2,
}

impl PairRep {
    pub fn new(
        ctx: FieldCtx,
        a: Matrix,
        b: Matrix,
        omega: Fq2,
        omega_star: Fq2,
        omega_eps: Fq2,
    ) -> Self {
        assert!(
            a.is_square() && b.is_square() && a.nrows() == b.nrows(),
            "A and B must be square of equal size"
        );
        PairRep {
            ctx,
            a,
            b,
            omega,
            omega_star,
            omega_eps,
        }
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }
}

/// `C = omega_eps/(q+q^-1) I - (qAB - q^-1 BA)/(q^2 - q^-2)`.
pub fn derive_c(rep: &PairRep) -> Matrix {
    let q = rep.ctx.q();
    let qi = q.powi(-1);
    let n = rep.dim();
    let ab = rep.a.mul(&rep.b);
    let ba = rep.b.mul(&rep.a);
    let twisted = ab.scale(q).sub(&ba.scale(qi));
    let denom = (q * q - qi * qi).inv().expect("q^4 != 1");
    Matrix::scalar(rep.omega_eps / (q + qi), n).sub(&twisted.scale(denom))
}

fn alpha_like(ctx: &FieldCtx, x: &Matrix, y: &Matrix, gamma: Fq2) -> Matrix {
    let q = ctx.q();
    let qi = q.powi(-1);
    let q2 = q * q;
    let q2i = qi * qi;
    let yyx = y.mul(y).mul(x);
    let yxy = y.mul(x).mul(y);
    let xyy = x.mul(y).mul(y);
    let num = yyx
        .sub(&yxy.scale(q2 + q2i))
        .add(&xyy)
        .add(&x.scale((q2 - q2i).square()))
        .add(&y.scale((q - qi).square() * gamma));
    let denom = ((q - qi) * (q2 - q2i)).inv().expect("q^4 != 1");
    num.scale(denom)
}

/// Value of the `alpha` expression with `gamma = omega_eps I`.
pub fn alpha_matrix(rep: &PairRep) -> Matrix {
    alpha_like(&rep.ctx, &rep.a, &rep.b, rep.omega_eps)
}

/// Value of the `beta` expression with `gamma = omega_eps I`.
pub fn beta_matrix(rep: &PairRep) -> Matrix {
    alpha_like(&rep.ctx, &rep.b, &rep.a, rep.omega_eps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub alpha_ok: bool,
    pub beta_ok: bool,
    pub c_relation_ok: bool,
    /// `(row, col, expected, got)` for every mismatching entry.
    pub failures: Vec<(usize, usize, Fq2, Fq2)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.alpha_ok && self.beta_ok && self.c_relation_ok
    }
}

/// Checks the defining relations of the algebra on `rep`, with `C` derived
/// from the third relation.
pub fn verify_rep(rep: &PairRep) -> VerifyReport {
    let ctx = &rep.ctx;
    let q = ctx.q();
    let qi = q.powi(-1);
    let denom = (q * q - qi * qi).inv().expect("q^4 != 1");
    let mut failures = Vec::new();

    let alpha_fail = alpha_matrix(rep).scalar_mismatches(rep.omega);
    let beta_fail = beta_matrix(rep).scalar_mismatches(rep.omega_star);

    let c = derive_c(rep);
    let first = rep.a.add(
        &rep.b
            .mul(&c)
            .scale(q)
            .sub(&c.mul(&rep.b).scale(qi))
            .scale(denom),
    );
    let second = rep.b.add(
        &c.mul(&rep.a)
            .scale(q)
            .sub(&rep.a.mul(&c).scale(qi))
            .scale(denom),
    );
    let first_fail = first.scalar_mismatches(rep.omega / (q + qi));
    let second_fail = second.scalar_mismatches(rep.omega_star / (q + qi));

    let report = VerifyReport {
        alpha_ok: alpha_fail.is_empty(),
        beta_ok: beta_fail.is_empty(),
        c_relation_ok: first_fail.is_empty() && second_fail.is_empty(),
        failures: Vec::new(),
    };
    failures.extend(alpha_fail);
    failures.extend(beta_fail);
    failures.extend(first_fail);
    failures.extend(second_fail);
    VerifyReport { failures, ..report }
}

/// The automorphism exchanging `A` with `B` and `alpha` with `beta`.
pub fn vee(rep: &PairRep) -> PairRep {
    PairRep {
        ctx: rep.ctx,
        a: rep.b.clone(),
        b: rep.a.clone(),
        omega: rep.omega_star,
        omega_star: rep.omega,
        omega_eps: rep.omega_eps,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralReport {
    /// `T_dbar(X)` commutes with `A`, `B`, `C` for each `X` in `A`, `B`, `C`.
    pub chebyshev_central: bool,
    /// `prod_i (A - mu q^{2i} - mu^-1 q^{-2i})` commutes with `B`.
    pub a_product_central: bool,
    /// `prod_i (B - mu q^{2i} - mu^-1 q^{-2i})` commutes with `A`.
    pub b_product_central: bool,
}

impl CentralReport {
    pub fn passed(&self) -> bool {
        self.chebyshev_central && self.a_product_central && self.b_product_central
    }
}

/// The shifts `mu q^{2i} + mu^-1 q^{-2i}` for `0 <= i < dbar`.
pub fn mu_shifts(ctx: &FieldCtx, mu: Fq2) -> Vec<Fq2> {
    let mui = mu.powi(-1);
    (0..ctx.dbar() as i64)
        .map(|i| mu * ctx.q_pow(2 * i) + mui * ctx.q_pow(-2 * i))
        .collect()
}

pub fn central_elements_check(rep: &PairRep, mu: Fq2) -> CentralReport {
    assert!(!mu.is_zero(), "mu must be nonzero");
    let ctx = &rep.ctx;
    let c = derive_c(rep);
    let t = chebyshev_t(ctx, ctx.dbar());
    let gens = [&rep.a, &rep.b, &c];
    let chebyshev_central = gens.iter().all(|x| {
        let tx = x.eval_poly(&t);
        gens.iter().all(|y| tx.commutator(y).is_zero())
    });
    let shifts = mu_shifts(ctx, mu);
    let pa = rep.a.shifted_product(&shifts);
    let pb = rep.b.shifted_product(&shifts);
    CentralReport {
        chebyshev_central,
        a_product_central: pa.commutator(&rep.b).is_zero(),
        b_product_central: pb.commutator(&rep.a).is_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx() -> FieldCtx {
        FieldCtx::new(13, 3).unwrap()
    }

    fn one_by_one(ctx: &FieldCtx, x: Fq2, y: Fq2) -> PairRep {
        let m = |v| Matrix::scalar(v, 1);
        let r = PairRep::new(*ctx, m(x), m(y), ctx.zero(), ctx.zero(), ctx.int(5));
        let alpha = alpha_matrix(&r)[(0, 0)];
        let beta = beta_matrix(&r)[(0, 0)];
        PairRep {
            omega: alpha,
            omega_star: beta,
            ..r
        }
    }

    #[test]
    fn c_on_one_by_one() {
        let ctx = ctx();
        let (th, ths) = (ctx.int(4), ctx.int(7));
        let r = one_by_one(&ctx, th, ths);
        let q = ctx.q();
        let qi = q.powi(-1);
        let expected = r.omega_eps / (q + qi) - th * ths * (q - qi) / (q * q - qi * qi);
        assert_eq!(derive_c(&r)[(0, 0)], expected);
        assert_eq!(derive_c(&r), derive_c(&r));
    }

    #[test]
    fn vee_is_an_involution() {
        let ctx = ctx();
        let r = one_by_one(&ctx, ctx.int(2), ctx.int(9));
        assert_eq!(vee(&vee(&r)), r);
        let v = vee(&r);
        assert_eq!((v.a[(0, 0)], v.b[(0, 0)]), (ctx.int(9), ctx.int(2)));
    }

    #[test]
    fn random_pair_fails_verification() {
        let ctx = ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut rand_m = || {
            let rows = (0..3)
                .map(|_| {
                    (0..3)
                        .map(|_| ctx.elem(rng.gen_range(0..13), rng.gen_range(0..13)))
                        .collect()
                })
                .collect();
            Matrix::from_rows(ctx.zero(), rows)
        };
        let r = PairRep::new(ctx, rand_m(), rand_m(), ctx.one(), ctx.one(), ctx.one());
        let report = verify_rep(&r);
        assert!(!report.passed());
        assert!(!report.failures.is_empty());
    }

    #[test]
    fn empty_rep_passes_vacuously() {
        let ctx = ctx();
        let z = Matrix::zeros(ctx.zero(), 0, 0);
        let r = PairRep::new(ctx, z.clone(), z, ctx.one(), ctx.one(), ctx.one());
        assert!(verify_rep(&r).passed());
        assert!(central_elements_check(&r, ctx.int(2)).passed());
    }

    #[test]
    fn one_by_one_is_central() {
        let ctx = ctx();
        let r = one_by_one(&ctx, ctx.int(3), ctx.elem(1, 2));
        assert!(central_elements_check(&r, ctx.int(5)).passed());
    }
}
