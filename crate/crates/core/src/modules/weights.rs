use crate::algebra::PairRep;
use crate::error::{Error, Result};
use crate::field::Fq2;
use crate::linalg::{proportionality, Matrix, Vector};
use crate::poly::{factor_roots, quadratic_roots};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpace {
    /// The smaller of `mu` and `mu^-1`.
    pub mu: Fq2,
    /// The eigenvalue `mu + mu^-1` of `B`.
    pub theta: Fq2,
    pub basis: Vec<Vector>,
}

impl WeightSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Canonical weight for the eigenvalue `theta = mu + mu^-1` of `B`.
pub fn weight_of(rep: &PairRep, theta: Fq2) -> Result<Fq2> {
    let [r0, r1] = quadratic_roots(&rep.ctx, theta, rep.ctx.one())
        .map_err(|_| Error::WeightOutsideField(theta.to_string()))?;
    Ok(r0.min(r1))
}

/// Eigenvalues of `B` with their kernels, ordered by eigenvalue.
pub fn weight_spaces(rep: &PairRep) -> Result<Vec<WeightSpace>> {
    if rep.dim() == 0 {
        return Ok(Vec::new());
    }
    let f = factor_roots(&rep.ctx, &rep.b.char_poly())?;
    if f.cofactor.degree() != Some(0) {
        return Err(Error::WeightOutsideField(format!(
            "B has {} eigenvalues outside the field",
            f.cofactor.degree().unwrap_or(0)
        )));
    }
    f.roots
        .iter()
        .map(|&(theta, _)| {
            Ok(WeightSpace {
                mu: weight_of(rep, theta)?,
                theta,
                basis: rep.b.sub_scalar(theta).kernel(),
            })
        })
        .collect()
}

/// The weight space for `mu`, looked up symmetrically in `mu` and `mu^-1`.
pub fn weight_space(rep: &PairRep, mu: Fq2) -> Result<WeightSpace> {
    if mu.is_zero() {
        return Err(Error::NotAWeight(mu.to_string()));
    }
    let theta = mu.plus_inv();
    let basis = rep.b.sub_scalar(theta).kernel();
    if basis.is_empty() {
        return Err(Error::NotAWeight(mu.to_string()));
    }
    Ok(WeightSpace {
        mu: weight_of(rep, theta)?,
        theta,
        basis,
    })
}

fn shift_op(rep: &PairRep, mu: Fq2, k: i64) -> Matrix {
    let ctx = &rep.ctx;
    rep.b
        .sub_scalar(mu * ctx.q_pow(2 * k) + mu.powi(-1) * ctx.q_pow(-2 * k))
}

/// `(B - mu q^2 - mu^-1 q^-2) A`, with `mu` taken literally.
pub fn marginal_operator(rep: &PairRep, mu: Fq2) -> Matrix {
    shift_op(rep, mu, 1).mul(&rep.a)
}

/// Whether `(B - mu q^2 - mu^-1 q^-2)(B - mu - mu^-1) A` kills a nonzero
/// vector of `V(mu)`. The operator depends on `mu` itself, not only on the
/// unordered pair `{mu, mu^-1}`.
pub fn is_marginal_weight(rep: &PairRep, mu: Fq2) -> Result<bool> {
    let ws = weight_space(rep, mu)?;
    let op = shift_op(rep, mu, 1).mul(&shift_op(rep, mu, 0)).mul(&rep.a);
    let images: Vec<Vector> = ws.basis.iter().map(|v| op.mul_vec(v)).collect();
    let m = Matrix::from_columns(rep.ctx.zero(), rep.dim(), &images);
    Ok(m.rank() < ws.dim())
}

/// Vectors `v` of `V(mu)`, up to scalars, whose line is fixed by
/// `(B - mu q^2 - mu^-1 q^-2) A`. When every vector of an eigenspace of the
/// restricted operator qualifies, a basis of that eigenspace is returned.
pub fn marginal_vectors(rep: &PairRep, mu: Fq2) -> Result<Vec<Vector>> {
    let ws = weight_space(rep, mu)?;
    let k = ws.dim();
    if k > 2 {
        return Err(Error::InvariantViolation(format!(
            "weight space of dimension {k} > 2"
        )));
    }
    let n = rep.dim();
    let zero = rep.ctx.zero();
    let op = marginal_operator(rep, mu);
    if k == 1 {
        let v = &ws.basis[0];
        return Ok(proportionality(&op.mul_vec(v), v)
            .map(|_| v.clone())
            .into_iter()
            .collect());
    }
    // Coordinates x with op U x in span U, then the induced map x -> y with op U x = U y.
    let u = Matrix::from_columns(zero, n, &ws.basis);
    let ku = op.mul(&u);
    let mut stacked = Matrix::zeros(zero, n, 2 * k);
    for i in 0..n {
        for j in 0..k {
            stacked[(i, j)] = ku[(i, j)];
            stacked[(i, k + j)] = -u[(i, j)];
        }
    }
    let sols = stacked.kernel();
    let xs: Vec<Vector> = sols.iter().map(|s| s[..k].to_vec()).collect();
    let ys: Vec<Vector> = sols.iter().map(|s| s[k..].to_vec()).collect();
    // U has full column rank, so y is determined by x.
    let xm = Matrix::from_columns(zero, k, &xs);
    let mut out = Vec::new();
    match xm.rank() {
        0 => {}
        1 => {
            let (x, y) = (&xs[0], &ys[0]);
            if proportionality(y, x).is_some() {
                out.push(u.mul_vec(x));
            }
        }
        _ => {
            // Solutions span all of F^k: induced map M with M x = y.
            let inv = xm.inverse().expect("rank k");
            let ym = Matrix::from_columns(zero, k, &ys);
            let m = ym.mul(&inv);
            let cp = m.char_poly();
            let roots = factor_roots(&rep.ctx, &cp)?;
            for (s, _) in roots.roots {
                for x in m.sub_scalar(s).kernel() {
                    out.push(u.mul_vec(&x));
                }
            }
        }
    }
    Ok(out)
}
