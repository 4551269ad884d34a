use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq2};
use crate::linalg::Vector;
use crate::modules::{build_w, Params5, SeqData};
use crate::poly::{poly_roots, Poly};

/// A root `nu` of `z^{2 dbar} - R z^dbar + 1` with
/// `R = delta + a^dbar lambda^-dbar + a^-dbar lambda^dbar`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NuData {
    ctx: FieldCtx,
    pub nu: Fq2,
}

impl NuData {
    /// Uses `nu` as given, after checking the defining equation.
    pub fn with_nu(ctx: &FieldCtx, p: &Params5, nu: Fq2) -> Result<Self> {
        if nu.is_zero() {
            return Err(Error::BadRange("nu must be nonzero".into()));
        }
        let d = ctx.dbar() as i64;
        if nu.powi(d) + nu.powi(-d) != p.delta_invariant(ctx) {
            return Err(Error::BadRange(format!(
                "{nu} does not solve the equation for nu"
            )));
        }
        Ok(NuData { ctx: *ctx, nu })
    }

    pub fn vartheta(&self, i: i64) -> Fq2 {
        self.nu.powi(-1) * self.ctx.q_pow(2 * i) + self.nu * self.ctx.q_pow(-2 * i)
    }
}

/// All roots of the equation for `nu` lying in `F_{p^2}`, in increasing order.
pub fn nu_roots(ctx: &FieldCtx, p: &Params5) -> Result<Vec<Fq2>> {
    let d = ctx.dbar();
    let mut coeffs = vec![ctx.zero(); 2 * d + 1];
    coeffs[0] = ctx.one();
    coeffs[d] = -p.delta_invariant(ctx);
    coeffs[2 * d] = ctx.one();
    Ok(poly_roots(ctx, &Poly::new(coeffs))?
        .into_iter()
        .map(|(r, _)| r)
        .collect())
}

/// The least root of the equation for `nu`.
pub fn nu_of(ctx: &FieldCtx, p: &Params5) -> Result<NuData> {
    let nu = *nu_roots(ctx, p)?.first().ok_or(Error::NuOutsideField)?;
    Ok(NuData { ctx: *ctx, nu })
}

fn check_index(ctx: &FieldCtx, i: usize) -> Result<()> {
    if i >= ctx.dbar() {
        return Err(Error::BadRange(format!(
            "index {i} must lie in [0, {}]",
            ctx.dbar() - 1
        )));
    }
    Ok(())
}

/// `e_i = sum_{h=1}^{dbar} prod_{j=h}^{dbar-1} (vartheta_i - theta_j) w_{h-1}`.
pub fn e_vector(ctx: &FieldCtx, p: &Params5, nu: &NuData, i: usize) -> Result<Vector> {
    check_index(ctx, i)?;
    let seq = SeqData::new(ctx, p.quad());
    let d = ctx.dbar();
    let vt = nu.vartheta(i as i64);
    let mut v = vec![ctx.zero(); d];
    let mut coef = ctx.one();
    for h in (1..=d).rev() {
        v[h - 1] = coef;
        coef *= vt - seq.theta(h as i64 - 1);
    }
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MarginalE {
    pub cond_plus: bool,
    pub cond_minus: bool,
}

/// The membership conditions for `e_i` to be a marginal weight vector of
/// `W^vee` with weight `nu^-1 q^{2i}` (plus) or `nu q^{-2i}` (minus).
pub fn marginal_test_e(ctx: &FieldCtx, p: &Params5, nu: &NuData, i: usize) -> Result<MarginalE> {
    check_index(ctx, i)?;
    let i = i as i64;
    let q = |e: i64| ctx.q_pow(e);
    let (a, b, c, l) = (p.a, p.b, p.c, p.lambda);
    let (ai, bi, ci, li) = (a.powi(-1), b.powi(-1), c.powi(-1), l.powi(-1));
    let plus = [
        a * li * q(2 * (i - 1)),
        ai * li * q(2 * (i - 1)),
        b * c * q(2 * i - 1),
        b * ci * q(2 * i - 1),
    ];
    let minus = [
        a * l * q(2 * (i + 1)),
        ai * l * q(2 * (i + 1)),
        bi * c * q(2 * i + 1),
        bi * ci * q(2 * i + 1),
    ];
    Ok(MarginalE {
        cond_plus: plus.contains(&nu.nu),
        cond_minus: minus.contains(&nu.nu),
    })
}

/// The matrix forms `(A - vartheta_{i+1})(A - vartheta_i) B e_i = 0` and
/// `(A - vartheta_{i-1})(A - vartheta_i) B e_i = 0`.
pub fn marginal_matrix_e(ctx: &FieldCtx, p: &Params5, nu: &NuData, i: usize) -> Result<MarginalE> {
    let e = e_vector(ctx, p, nu, i)?;
    let rep = build_w(ctx, p);
    let i = i as i64;
    let be = rep.b.mul_vec(&e);
    let base = rep.a.sub_scalar(nu.vartheta(i)).mul_vec(&be);
    let test = |j: i64| {
        rep.a
            .sub_scalar(nu.vartheta(j))
            .mul_vec(&base)
            .iter()
            .all(|x| x.is_zero())
    };
    Ok(MarginalE {
        cond_plus: test(i + 1),
        cond_minus: test(i - 1),
    })
}

/// `L^{(i)}` by its recurrence; `l[j][k]`.
pub fn l_recurrence(ctx: &FieldCtx, p: &Params5, nu: &NuData, i: usize) -> Result<Vec<Vec<Fq2>>> {
    check_index(ctx, i)?;
    let seq = SeqData::new(ctx, p.quad());
    let d = ctx.dbar();
    let di = d as i64;
    let vt = nu.vartheta(i as i64);
    let mut l = vec![vec![ctx.zero(); d]; d];
    let mut acc = ctx.one();
    for j in 0..d {
        l[j][0] = acc;
        acc *= vt - seq.theta(di - j as i64 - 1);
    }
    for k in 1..d {
        for j in 1..d {
            let (jj, kk) = (j as i64, k as i64);
            l[j][k] = seq.varphi(di - jj) * l[j - 1][k - 1]
                + (seq.theta_star(di - jj - 1) - seq.theta_star(di - kk)) * l[j][k - 1];
        }
    }
    Ok(l)
}

/// `L^{(i)}` read off from `prod_{h=1}^k (B - theta*_{dbar-h}) e_i` directly.
pub fn l_by_matrix(ctx: &FieldCtx, p: &Params5, nu: &NuData, i: usize) -> Result<Vec<Vec<Fq2>>> {
    let rep = build_w(ctx, p);
    let seq = SeqData::new(ctx, p.quad());
    let d = ctx.dbar();
    let mut v = e_vector(ctx, p, nu, i)?;
    let mut l = vec![vec![ctx.zero(); d]; d];
    for k in 0..d {
        if k > 0 {
            v = rep.b.sub_scalar(seq.theta_star((d - k) as i64)).mul_vec(&v);
        }
        for j in 0..d {
            l[j][k] = v[d - j - 1];
        }
    }
    Ok(l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LCase {
    I,
    II,
    III,
    IV,
}

impl LCase {
    pub const ALL: [LCase; 4] = [LCase::I, LCase::II, LCase::III, LCase::IV];
}

/// The two values of `nu q^{-2i}` selecting each closed form.
pub fn l_case_values(ctx: &FieldCtx, p: &Params5, case: LCase) -> [Fq2; 2] {
    let q = |e: i64| ctx.q_pow(e);
    let (a, b, c, l) = (p.a, p.b, p.c, p.lambda);
    let (ai, bi, ci, li) = (a.powi(-1), b.powi(-1), c.powi(-1), l.powi(-1));
    match case {
        LCase::I => [a * li * q(-2), ai * l * q(2)],
        LCase::II => [a * l * q(2), ai * li * q(-2)],
        LCase::III => [b * c * q(-1), bi * ci * q(1)],
        LCase::IV => [b * ci * q(-1), bi * c * q(1)],
    }
}

/// Every closed-form case whose hypothesis holds for `(nu, i)`.
pub fn l_cases(ctx: &FieldCtx, p: &Params5, nu: &NuData, i: usize) -> Vec<LCase> {
    let x = nu.nu * ctx.q_pow(-2 * i as i64);
    LCase::ALL
        .into_iter()
        .filter(|&c| l_case_values(ctx, p, c).contains(&x))
        .collect()
}

fn prod(ctx: &FieldCtx, n: i64, f: impl Fn(i64) -> Fq2) -> Fq2 {
    (1..=n).fold(ctx.one(), |acc, h| acc * f(h))
}

/// The closed form for `L^{(i)}_{jk}` under the given case, without checking
/// the hypothesis.
pub fn l_closed_case(ctx: &FieldCtx, p: &Params5, case: LCase, j: usize, k: usize) -> Fq2 {
    let q = |e: i64| ctx.q_pow(e);
    let (a, b, c, l) = (p.a, p.b, p.c, p.lambda);
    let (ai, bi, ci, li) = (a.powi(-1), b.powi(-1), c.powi(-1), l.powi(-1));
    let (j, k) = (j as i64, k as i64);
    let d = ctx.dbar() as i64;
    if case == LCase::I {
        if j != k {
            return ctx.zero();
        }
        let seq = SeqData::new(ctx, p.quad());
        return prod(ctx, j, |h| seq.varphi(d - h));
    }
    let common = |h: i64| q(h + j - k) - q(k - h - j);
    match case {
        LCase::II => {
            prod(ctx, k, |h| {
                common(h)
                    * (a * l * q(h + 1) - b * c * q(-h))
                    * (bi * q(h) - ai * ci * li * q(-h - 1))
            }) * prod(ctx, j, |h| l * q(h + 1) - li * q(-h - 1))
                * prod(ctx, j - k, |h| a * q(1 - h) - ai * q(h - 1))
        }
        LCase::III | LCase::IV => {
            let cc = if case == LCase::III { c } else { ci };
            let cci = cc.powi(-1);
            prod(ctx, k, |h| {
                common(h) * (b * q(-h) - bi * q(h)) * (a * l * q(h + 1) - b * cc * q(-h))
            }) * prod(ctx, j, |h| li * q(-h - 1) - ai * bi * cci * q(h))
                * prod(ctx, j - k, |h| b * cc * l * q(h) - a * q(1 - h))
        }
        LCase::I => unreachable!(),
    }
}

/// `L^{(i)}_{jk}` by the closed form of the first applicable case.
pub fn l_closed(
    ctx: &FieldCtx,
    p: &Params5,
    nu: &NuData,
    i: usize,
    j: usize,
    k: usize,
) -> Result<Fq2> {
    check_index(ctx, i)?;
    check_index(ctx, j)?;
    check_index(ctx, k)?;
    let case = *l_cases(ctx, p, nu, i)
        .first()
        .ok_or(Error::CaseNotApplicable)?;
    Ok(l_closed_case(ctx, p, case, j, k))
}

/// Reducibility of `W` via the `e_i`: some `e_i` is a marginal weight vector
/// of `W^vee` and `L^{(i)}_{dbar-1,dbar-1} = 0`.
pub fn reducible_by_e_vectors(ctx: &FieldCtx, p: &Params5) -> Result<bool> {
    let nu = nu_of(ctx, p)?;
    let d = ctx.dbar();
    for i in 0..d {
        let m = marginal_test_e(ctx, p, &nu, i)?;
        if (m.cond_plus || m.cond_minus) && l_recurrence(ctx, p, &nu, i)?[d - 1][d - 1].is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `prod_{j=0}^{dbar-1} (x - theta_j) - delta`, the characteristic polynomial
/// of `A` on `W`.
pub fn w_a_char_poly(ctx: &FieldCtx, p: &Params5) -> Poly {
    let seq = SeqData::new(ctx, p.quad());
    Poly::from_roots(ctx.one(), &seq.thetas()).sub(&Poly::constant(p.delta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_zero_vec;

    fn ctx() -> FieldCtx {
        FieldCtx::new(13, 3).unwrap()
    }

    #[test]
    fn nu_example_from_zero_r() {
        let ctx = ctx();
        let p = Params5::new(ctx.int(2), ctx.int(5), ctx.int(6), ctx.one(), ctx.zero()).unwrap();
        assert!(p.delta_invariant(&ctx).is_zero());
        let nu = nu_of(&ctx, &p).unwrap();
        assert!((nu.nu.pow(6) + ctx.one()).is_zero());
    }

    #[test]
    fn e_vectors_are_eigenvectors() {
        let ctx = ctx();
        let p = Params5::new(ctx.int(2), ctx.int(5), ctx.int(6), ctx.int(7), ctx.zero()).unwrap();
        let nu = nu_of(&ctx, &p).unwrap();
        let rep = build_w(&ctx, &p);
        let seq = SeqData::new(&ctx, p.quad());
        for i in 0..3 {
            let e = e_vector(&ctx, &p, &nu, i).unwrap();
            assert!(e[2].is_one());
            let vt = nu.vartheta(i as i64);
            assert_eq!(e[1], vt - seq.theta(2));
            assert_eq!(e[0], (vt - seq.theta(1)) * (vt - seq.theta(2)));
            assert!(is_zero_vec(&rep.a.sub_scalar(vt).mul_vec(&e)));
        }
    }

    #[test]
    fn recurrence_matches_matrix() {
        let ctx = FieldCtx::new(37, 6).unwrap();
        let p = Params5::new(ctx.int(2), ctx.int(5), ctx.int(6), ctx.int(7), ctx.int(3)).unwrap();
        let Ok(nu) = nu_of(&ctx, &p) else { return };
        for i in 0..ctx.dbar() {
            let l = l_recurrence(&ctx, &p, &nu, i).unwrap();
            assert_eq!(l, l_by_matrix(&ctx, &p, &nu, i).unwrap());
            assert!(l[0][0].is_one());
            for j in 0..ctx.dbar() {
                for k in j + 1..ctx.dbar() {
                    assert!(l[j][k].is_zero());
                }
            }
        }
    }
}
