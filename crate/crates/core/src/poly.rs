//! Dense univariate polynomials over `F_{p^2}`, exhaustive root extraction and
//! the Chebyshev-type polynomials `T_n(x + x^{-1}) = x^n + x^{-n}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq2};

/// Coefficients in ascending degree order, with no trailing zeros.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Fq2>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Fq2>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Fq2) -> Self {
        Poly::new(vec![c])
    }

    /// The monic linear factor `x - r`.
    pub fn linear(r: Fq2) -> Self {
        Poly::new(vec![-r, r.one_like()])
    }

    /// `prod (x - r)` over the given roots; `one` supplies the modulus when the
    /// root list is empty.
    pub fn from_roots(one: Fq2, roots: &[Fq2]) -> Self {
        roots
            .iter()
            .fold(Poly::constant(one), |acc, &r| acc.mul(&Poly::linear(r)))
    }

    pub fn coeffs(&self) -> &[Fq2] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Option<Fq2> {
        self.coeffs.get(k).copied()
    }

    pub fn leading(&self) -> Option<Fq2> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, x: Fq2) -> Fq2 {
        self.coeffs
            .iter()
            .rev()
            .fold(x.zero_like(), |acc, &c| acc * x + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(&a), Some(&b)) => out.push(a + b),
                (Some(&a), None) => out.push(a),
                (None, Some(&b)) => out.push(b),
                (None, None) => unreachable!(),
            }
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| -c).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: Fq2) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; k];
        out.extend_from_slice(&self.coeffs);
        Poly::new(out)
    }

    /// Synthetic division by `x - r`: returns `(quotient, remainder)`.
    pub fn div_linear(&self, r: Fq2) -> (Poly, Fq2) {
        if self.is_zero() {
            return (Poly::zero(), r.zero_like());
        }
        let n = self.coeffs.len();
        let mut q = vec![r.zero_like(); n - 1];
        let mut acc = r.zero_like();
        for k in (0..n).rev() {
            acc = acc * r + self.coeffs[k];
            if k > 0 {
                q[k - 1] = acc;
            }
        }
        (Poly::new(q), acc)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Roots found in `F_{p^2}` with multiplicities, plus the root-free cofactor.
#[derive(Clone, Debug)]
pub struct RootFactorization {
    pub roots: Vec<(Fq2, usize)>,
    pub cofactor: Poly,
}

impl RootFactorization {
    /// Roots repeated according to multiplicity.
    pub fn multiset(&self) -> Vec<Fq2> {
        self.roots
            .iter()
            .flat_map(|&(r, m)| std::iter::repeat(r).take(m))
            .collect()
    }
}

/// Finds every root of `f` in `F_{p^2}` by evaluating at all `p^2` elements,
/// then strips each root by repeated synthetic division to read off its
/// multiplicity. Roots living only in larger extensions are absent.
pub fn factor_roots(ctx: &FieldCtx, f: &Poly) -> Result<RootFactorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rest = f.clone();
    let mut roots = Vec::new();
    if f.degree() == Some(0) {
        return Ok(RootFactorization {
            roots,
            cofactor: rest,
        });
    }
    for x in ctx.elements() {
        if !f.eval(x).is_zero() {
            continue;
        }
        let mut mult = 0;
        loop {
            let (q, r) = rest.div_linear(x);
            if !r.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        roots.push((x, mult));
        if rest.degree() == Some(0) {
            break;
        }
    }
    Ok(RootFactorization {
        roots,
        cofactor: rest,
    })
}

/// Roots of `f` in `F_{p^2}` with multiplicities, in lexicographic order.
pub fn poly_roots(ctx: &FieldCtx, f: &Poly) -> Result<Vec<(Fq2, usize)>> {
    factor_roots(ctx, f).map(|fr| fr.roots)
}

/// `T_0 = 2`, `T_1 = x`, `T_{n+1} = x T_n - T_{n-1}`.
pub fn chebyshev_t(ctx: &FieldCtx, n: usize) -> Poly {
    let x = Poly::new(vec![ctx.zero(), ctx.one()]);
    let mut prev = Poly::constant(ctx.int(2));
    if n == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..n {
        let next = x.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Roots of `x^2 - s x + pr` in `F_{p^2}` (possibly a repeated root), or
/// `NotASquare` if the discriminant has no square root.
pub fn quadratic_roots(ctx: &FieldCtx, s: Fq2, pr: Fq2) -> Result<[Fq2; 2]> {
    let disc = s * s - ctx.int(4) * pr;
    let r = ctx.sqrt(disc)?;
    let half = ctx.int(2).inv()?;
    Ok([(s - r) * half, (s + r) * half])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f13() -> FieldCtx {
        FieldCtx::new(13, 3).unwrap()
    }

    #[test]
    fn roots_examples() {
        let ctx = f13();
        let x2m1 = Poly::new(vec![ctx.int(-1), ctx.zero(), ctx.one()]);
        assert_eq!(
            poly_roots(&ctx, &x2m1).unwrap(),
            vec![(ctx.int(1), 1), (ctx.int(12), 1)]
        );

        let x2mt = Poly::new(vec![ctx.int(-(ctx.t() as i64)), ctx.zero(), ctx.one()]);
        assert_eq!(
            poly_roots(&ctx, &x2mt).unwrap(),
            vec![(ctx.elem(0, 1), 1), (ctx.elem(0, 12), 1)]
        );

        let sq = Poly::from_roots(ctx.one(), &[ctx.int(3), ctx.int(3)]);
        assert_eq!(poly_roots(&ctx, &sq).unwrap(), vec![(ctx.int(3), 2)]);

        assert_eq!(poly_roots(&ctx, &Poly::zero()), Err(Error::ZeroPolynomial));
        assert!(poly_roots(&ctx, &Poly::constant(ctx.int(5)))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn roots_are_exactly_the_zeros() {
        let ctx = FieldCtx::new(7, 3).unwrap();
        // (x - 2)^3 (x - (1+i)) (x^2 - s) where s has no root in F_49.
        let nonsquare = ctx.nonzero_elements().find(|&x| !ctx.is_square(x)).unwrap();
        let irreducible = Poly::new(vec![-nonsquare, ctx.zero(), ctx.one()]);
        let f = Poly::from_roots(
            ctx.one(),
            &[ctx.int(2), ctx.int(2), ctx.int(2), ctx.elem(1, 1)],
        )
        .mul(&irreducible)
        .scale(ctx.int(3));
        let fr = factor_roots(&ctx, &f).unwrap();
        for x in ctx.elements() {
            let listed = fr.roots.iter().any(|&(r, _)| r == x);
            assert_eq!(listed, f.eval(x).is_zero());
        }
        let total: usize = fr.roots.iter().map(|r| r.1).sum();
        assert_eq!(total, 4);
        assert_eq!(fr.cofactor.degree(), Some(2));
        assert_eq!(f.degree().unwrap() - total, fr.cofactor.degree().unwrap());
    }

    #[test]
    fn chebyshev_examples() {
        let ctx = f13();
        assert_eq!(chebyshev_t(&ctx, 0), Poly::constant(ctx.int(2)));
        assert_eq!(chebyshev_t(&ctx, 1), Poly::new(vec![ctx.zero(), ctx.one()]));
        assert_eq!(
            chebyshev_t(&ctx, 2),
            Poly::new(vec![ctx.int(-2), ctx.zero(), ctx.one()])
        );
        for n in 1..10 {
            assert_eq!(chebyshev_t(&ctx, n).degree(), Some(n));
        }
    }

    #[test]
    fn chebyshev_identity_on_all_units() {
        for &(p, d) in &[(13u64, 3u64), (37, 6), (97, 8)] {
            let ctx = FieldCtx::new(p, d).unwrap();
            for n in 0..=2 * ctx.dbar() {
                let tn = chebyshev_t(&ctx, n);
                for x in ctx.nonzero_elements().step_by(7).take(64) {
                    let lhs = tn.eval(x.plus_inv());
                    let rhs = x.pow(n as u64) + x.powi(-(n as i64));
                    assert_eq!(lhs, rhs, "p={p} n={n} x={x}");
                }
            }
        }
    }

    #[test]
    fn chebyshev_product_form() {
        // T_dbar(x) = prod_i (x - mu q^{2i} - mu^{-1} q^{-2i}) + mu^dbar + mu^{-dbar}
        for &(p, d) in &[(13u64, 3u64), (37, 6), (97, 8), (13, 7)] {
            let ctx = FieldCtx::new(p, d).unwrap();
            let n = ctx.dbar();
            let t = chebyshev_t(&ctx, n);
            for mu in ctx.nonzero_elements().step_by(11).take(20) {
                let roots: Vec<Fq2> = (0..n as i64)
                    .map(|i| mu * ctx.q_pow(2 * i) + mu.powi(-1) * ctx.q_pow(-2 * i))
                    .collect();
                let rhs = Poly::from_roots(ctx.one(), &roots)
                    .add(&Poly::constant(mu.pow(n as u64) + mu.powi(-(n as i64))));
                assert_eq!(t, rhs);
            }
        }
    }

    #[test]
    fn synthetic_division_matches_multiplication() {
        let ctx = f13();
        let f = Poly::new(vec![ctx.int(4), ctx.elem(1, 2), ctx.int(7), ctx.one()]);
        let r = ctx.elem(5, 3);
        let (q, rem) = f.div_linear(r);
        assert_eq!(q.mul(&Poly::linear(r)).add(&Poly::constant(rem)), f);
        assert_eq!(rem, f.eval(r));
    }

    #[test]
    fn quadratic_roots_solve() {
        let ctx = f13();
        let [r1, r2] = quadratic_roots(&ctx, ctx.int(5), ctx.int(6)).unwrap();
        let mut got = [r1, r2];
        got.sort();
        assert_eq!(got, [ctx.int(2), ctx.int(3)]);
    }
}
