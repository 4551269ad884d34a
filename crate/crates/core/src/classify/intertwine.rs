use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::PairRep;
use crate::error::{Error, Result};
use crate::field::Fq2;
use crate::linalg::{Matrix, Vector};

fn same_centre(x: &PairRep, y: &PairRep) -> bool {
    x.omega == y.omega && x.omega_star == y.omega_star && x.omega_eps == y.omega_eps
}

/// Rows of the linear system `S X = Y S` in the row-major entries of `S`.
fn commuting_rows(x: &Matrix, y: &Matrix, rows: &mut Vec<Vector>) {
    let n = x.nrows();
    let zero = x.zero_elem();
    for i in 0..n {
        for j in 0..n {
            let mut r = vec![zero; n * n];
            for k in 0..n {
                r[i * n + k] += x[(k, j)];
                r[k * n + j] -= y[(i, k)];
            }
            rows.push(r);
        }
    }
}

fn system(x: &PairRep, y: &PairRep) -> Vec<Vector> {
    let mut rows = Vec::new();
    commuting_rows(&x.a, &y.a, &mut rows);
    commuting_rows(&x.b, &y.b, &mut rows);
    rows
}

fn to_matrix(zero: Fq2, n: usize, v: &[Fq2]) -> Matrix {
    Matrix::from_rows(zero, v.chunks(n).map(|r| r.to_vec()).collect())
}

fn check_dims(x: &PairRep, y: &PairRep) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(x.dim(), y.dim()));
    }
    Ok(())
}

/// A basis of `{S : S A_x = A_y S, S B_x = B_y S}`.
pub fn intertwiner_space(x: &PairRep, y: &PairRep) -> Result<Vec<Matrix>> {
    check_dims(x, y)?;
    let n = x.dim();
    if n == 0 || !same_centre(x, y) {
        return Ok(Vec::new());
    }
    let zero = x.ctx.zero();
    let sys = Matrix::from_rows(zero, system(x, y));
    Ok(sys.kernel().iter().map(|v| to_matrix(zero, n, v)).collect())
}

/// A nonzero module map from `x` to `y`, preferring an invertible one.
pub fn intertwiner(x: &PairRep, y: &PairRep) -> Result<Option<Matrix>> {
    let space = intertwiner_space(x, y)?;
    if space.is_empty() {
        return Ok(None);
    }
    if let Some(s) = space.iter().find(|s| s.is_invertible()) {
        return Ok(Some(s.clone()));
    }
    let ctx = x.ctx;
    let mut rng = ChaCha8Rng::seed_from_u64(space.len() as u64);
    for _ in 0..32 {
        let mut s = Matrix::zeros(ctx.zero(), x.dim(), x.dim());
        for m in &space {
            let k = ctx.elem(
                rng.gen_range(0..ctx.p() as i64),
                rng.gen_range(0..ctx.p() as i64),
            );
            s = s.add(&m.scale(k));
        }
        if s.is_invertible() {
            return Ok(Some(s));
        }
    }
    Ok(Some(space[0].clone()))
}

/// Whether `x` and `y` are isomorphic through an invertible intertwiner.
pub fn isomorphic(x: &PairRep, y: &PairRep) -> Result<bool> {
    Ok(intertwiner(x, y)?.is_some_and(|s| s.is_invertible()))
}

/// A module map `S: x -> y` with `S v = w`, if one exists.
pub fn homomorphism_sending(
    x: &PairRep,
    y: &PairRep,
    v: &[Fq2],
    w: &[Fq2],
) -> Result<Option<Matrix>> {
    check_dims(x, y)?;
    let n = x.dim();
    if v.len() != n || w.len() != n {
        return Err(Error::DimensionMismatch(v.len(), n));
    }
    if !same_centre(x, y) {
        return Ok(None);
    }
    let zero = x.ctx.zero();
    let mut rows: Vec<Vector> = system(x, y)
        .into_iter()
        .map(|mut r| {
            r.push(zero);
            r
        })
        .collect();
    for i in 0..n {
        let mut r = vec![zero; n * n + 1];
        r[i * n..(i + 1) * n].copy_from_slice(v);
        r[n * n] = w[i];
        rows.push(r);
    }
    let (rref, pivots) = Matrix::from_rows(zero, rows).rref();
    if pivots.contains(&(n * n)) {
        return Ok(None);
    }
    let mut s = vec![zero; n * n];
    for (r, &c) in pivots.iter().enumerate() {
        s[c] = rref[(r, n * n)];
    }
    Ok(Some(to_matrix(zero, n, &s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::linalg::unit_vec;
    use crate::modules::{build_w, Params5};

    #[test]
    fn self_intertwiner_is_scalar() {
        let ctx = FieldCtx::new(37, 6).unwrap();
        let p = Params5::new(ctx.int(2), ctx.int(5), ctx.int(6), ctx.int(7), ctx.int(3)).unwrap();
        let rep = build_w(&ctx, &p);
        let space = intertwiner_space(&rep, &rep).unwrap();
        assert_eq!(space.len(), 1);
        let s = &space[0];
        assert!(s.is_scalar(s[(0, 0)]));
    }

    #[test]
    fn different_delta_not_isomorphic() {
        let ctx = FieldCtx::new(37, 6).unwrap();
        let p = Params5::new(ctx.int(2), ctx.int(5), ctx.int(6), ctx.int(7), ctx.int(3)).unwrap();
        let q = Params5 {
            delta: ctx.int(4),
            ..p
        };
        assert!(intertwiner(&build_w(&ctx, &p), &build_w(&ctx, &q))
            .unwrap()
            .is_none());
    }

    #[test]
    fn sending_constraint() {
        let ctx = FieldCtx::new(37, 6).unwrap();
        let p = Params5::new(ctx.int(2), ctx.int(5), ctx.int(6), ctx.int(7), ctx.int(3)).unwrap();
        let rep = build_w(&ctx, &p);
        let e0 = unit_vec(ctx.zero(), 3, 0);
        let two = e0.iter().map(|&x| x * ctx.int(2)).collect::<Vec<_>>();
        let s = homomorphism_sending(&rep, &rep, &e0, &two)
            .unwrap()
            .unwrap();
        assert!(s.is_scalar(ctx.int(2)));
        let e1 = unit_vec(ctx.zero(), 3, 1);
        assert!(homomorphism_sending(&rep, &rep, &e0, &e1)
            .unwrap()
            .is_none());
    }
}
