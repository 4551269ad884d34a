//! Exact arithmetic in `F_p` and its quadratic extension `F_{p^2} = F_p(sqrt t)`.
//!
//! Every [`Fq2`] carries its modulus, so the usual operators work without a
//! context argument. A [`FieldCtx`] fixes `p`, the non-residue `t`, and the
//! root of unity `q` of order `d` that all module constructions depend on.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The pair `(p, t)` identifying a concrete `F_{p^2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Modulus {
    p: u32,
    t: u32,
}

impl Modulus {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn t(&self) -> u32 {
        self.t
    }
}

/// An element `x0 + x1 * sqrt(t)` of `F_{p^2}` with both residues reduced.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fq2 {
    c0: u32,
    c1: u32,
    m: Modulus,
}

#[inline]
fn mod_add(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= p as u64 { s - p as u64 } else { s }) as u32
}

#[inline]
fn mod_sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

#[inline]
fn mod_mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn mod_pow(mut base: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, base, p);
        }
        base = mod_mul(base, base, p);
        e >>= 1;
    }
    acc
}

impl Fq2 {
    pub fn new(m: Modulus, x0: i64, x1: i64) -> Self {
        let p = m.p as i64;
        Fq2 {
            c0: x0.rem_euclid(p) as u32,
            c1: x1.rem_euclid(p) as u32,
            m,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.m
    }

    /// Residue of the `F_p` part.
    pub fn x0(&self) -> u32 {
        self.c0
    }

    /// Residue of the `sqrt(t)` part.
    pub fn x1(&self) -> u32 {
        self.c1
    }

    pub fn zero_like(&self) -> Self {
        Fq2 {
            c0: 0,
            c1: 0,
            m: self.m,
        }
    }

    pub fn one_like(&self) -> Self {
        Fq2 {
            c0: 1,
            c1: 0,
            m: self.m,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }

    pub fn is_one(&self) -> bool {
        self.c0 == 1 && self.c1 == 0
    }

    pub fn in_base_field(&self) -> bool {
        self.c1 == 0
    }

    pub fn conj(&self) -> Self {
        Fq2 {
            c0: self.c0,
            c1: mod_sub(0, self.c1, self.m.p),
            m: self.m,
        }
    }

    /// `x0^2 - t x1^2`, an element of `F_p`.
    pub fn norm(&self) -> u32 {
        let p = self.m.p;
        let a = mod_mul(self.c0, self.c0, p);
        let b = mod_mul(self.m.t, mod_mul(self.c1, self.c1, p), p);
        mod_sub(a, b, p)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0 {
            return Err(Error::DivisionByZero);
        }
        let p = self.m.p;
        let ninv = mod_pow(n, p as u64 - 2, p);
        let c = self.conj();
        Ok(Fq2 {
            c0: mod_mul(c.c0, ninv, p),
            c1: mod_mul(c.c1, ninv, p),
            m: self.m,
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = self.one_like();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents invert first.
    ///
    /// Panics when `self` is zero and `e < 0`.
    pub fn powi(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow(e as u64)
        } else {
            self.inv()
                .expect("negative power of zero")
                .pow(e.unsigned_abs())
        }
    }

    /// `self + self^{-1}`.
    pub fn plus_inv(&self) -> Self {
        *self + self.powi(-1)
    }

    pub fn square(&self) -> Self {
        *self * *self
    }
}

impl Ord for Fq2 {
    /// Lexicographic on `(x0, x1)`.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.c0, self.c1).cmp(&(other.c0, other.c1))
    }
}

impl PartialOrd for Fq2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fq2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1 == 0 {
            write!(f, "{}", self.c0)
        } else {
            write!(f, "{}+{}i", self.c0, self.c1)
        }
    }
}

impl fmt::Debug for Fq2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Fq2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.c0)?;
        t.serialize_element(&self.c1)?;
        t.end()
    }
}

impl Add for Fq2 {
    type Output = Fq2;
    #[inline]
    fn add(self, rhs: Fq2) -> Fq2 {
        debug_assert_eq!(self.m, rhs.m);
        let p = self.m.p;
        Fq2 {
            c0: mod_add(self.c0, rhs.c0, p),
            c1: mod_add(self.c1, rhs.c1, p),
            m: self.m,
        }
    }
}

impl Sub for Fq2 {
    type Output = Fq2;
    #[inline]
    fn sub(self, rhs: Fq2) -> Fq2 {
        debug_assert_eq!(self.m, rhs.m);
        let p = self.m.p;
        Fq2 {
            c0: mod_sub(self.c0, rhs.c0, p),
            c1: mod_sub(self.c1, rhs.c1, p),
            m: self.m,
        }
    }
}

impl Mul for Fq2 {
    type Output = Fq2;
    #[inline]
    fn mul(self, rhs: Fq2) -> Fq2 {
        debug_assert_eq!(self.m, rhs.m);
        let p = self.m.p as u64;
        let t = self.m.t as u64;
        let (a0, a1, b0, b1) = (self.c0 as u64, self.c1 as u64, rhs.c0 as u64, rhs.c1 as u64);
        let c0 = (a0 * b0 + t * ((a1 * b1) % p)) % p;
        let c1 = (a0 * b1 + a1 * b0) % p;
        Fq2 {
            c0: c0 as u32,
            c1: c1 as u32,
            m: self.m,
        }
    }
}

impl Div for Fq2 {
    type Output = Fq2;
    /// Panics on division by zero; use [`Fq2::inv`] for a fallible inverse.
    fn div(self, rhs: Fq2) -> Fq2 {
        self * rhs.inv().expect("division by zero in F_p^2")
    }
}

impl Neg for Fq2 {
    type Output = Fq2;
    fn neg(self) -> Fq2 {
        self.zero_like() - self
    }
}

impl AddAssign for Fq2 {
    fn add_assign(&mut self, rhs: Fq2) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fq2 {
    fn sub_assign(&mut self, rhs: Fq2) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fq2 {
    fn mul_assign(&mut self, rhs: Fq2) {
        *self = *self * rhs;
    }
}

impl<'a> Sum<&'a Fq2> for Fq2 {
    /// Panics on an empty iterator (there is no modulus to build zero from).
    fn sum<I: Iterator<Item = &'a Fq2>>(iter: I) -> Fq2 {
        let mut it = iter;
        let first = *it
            .next()
            .expect("sum of an empty sequence of field elements");
        it.fold(first, |acc, x| acc + *x)
    }
}

impl<'a> Product<&'a Fq2> for Fq2 {
    /// Panics on an empty iterator.
    fn product<I: Iterator<Item = &'a Fq2>>(iter: I) -> Fq2 {
        let mut it = iter;
        let first = *it
            .next()
            .expect("product of an empty sequence of field elements");
        it.fold(first, |acc, x| acc * *x)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2u64;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            while n % k == 0 {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest prime accepted by [`FieldCtx::new`]; keeps every product inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The field `F_{p^2}` together with a root of unity `q` of exact order `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldCtx {
    m: Modulus,
    d: u32,
    dbar: u32,
    q: Fq2,
    /// A non-square of `F_{p^2}`, used by Tonelli-Shanks.
    qnr: Fq2,
}

impl FieldCtx {
    /// Builds `F_{p^2}` with `t` the least non-square of `F_p`, and picks `q` as
    /// the first element of exact order `d`, scanning `F_p` before the rest of
    /// `F_{p^2}` in lexicographic order.
    pub fn new(p: u64, d: u64) -> Result<Self> {
        if p == 2 || p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if d == 0 {
            return Err(Error::BadRange("order d must be positive".into()));
        }
        if matches!(d, 1 | 2 | 4) {
            return Err(Error::DExcluded(d));
        }
        let group = p * p - 1;
        if group % d != 0 {
            return Err(Error::DOrderUnavailable { p, d });
        }
        let p32 = p as u32;
        let t = (2..p32)
            .find(|&x| mod_pow(x, (p - 1) / 2, p32) == p32 - 1)
            .expect("odd prime has a non-residue");
        let m = Modulus { p: p32, t };

        let factors = prime_factors(d);
        let has_order_d =
            |x: &Fq2| x.pow(d).is_one() && factors.iter().all(|r| !x.pow(d / r).is_one());
        let base = (1..p32 as i64).map(|x0| Fq2::new(m, x0, 0));
        let ext = (0..p32 as i64)
            .flat_map(|x0| (1..p32 as i64).map(move |x1| (x0, x1)))
            .map(|(x0, x1)| Fq2::new(m, x0, x1));
        let q = base
            .chain(ext.clone())
            .find(|x| has_order_d(x))
            .expect("d divides p^2 - 1, so an element of order d exists");

        // Every element of F_p is a square in F_p^2, so a non-square has x1 != 0.
        let half = group / 2;
        let qnr = ext
            .into_iter()
            .find(|x| !x.pow(half).is_one())
            .expect("F_p^2 has non-squares");

        let dbar = if d % 2 == 1 { d } else { d / 2 } as u32;
        Ok(FieldCtx {
            m,
            d: d as u32,
            dbar,
            q,
            qnr,
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.m
    }

    pub fn p(&self) -> u32 {
        self.m.p
    }

    pub fn t(&self) -> u32 {
        self.m.t
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Multiplicative order of `q^2`.
    pub fn dbar(&self) -> usize {
        self.dbar as usize
    }

    pub fn q(&self) -> Fq2 {
        self.q
    }

    pub fn q_pow(&self, e: i64) -> Fq2 {
        self.q.powi(e)
    }

    pub fn elem(&self, x0: i64, x1: i64) -> Fq2 {
        Fq2::new(self.m, x0, x1)
    }

    pub fn int(&self, x: i64) -> Fq2 {
        Fq2::new(self.m, x, 0)
    }

    pub fn zero(&self) -> Fq2 {
        self.int(0)
    }

    pub fn one(&self) -> Fq2 {
        self.int(1)
    }

    /// The adjoined square root of `t`.
    pub fn sqrt_t(&self) -> Fq2 {
        self.elem(0, 1)
    }

    /// Number of elements of `F_{p^2}`.
    pub fn size(&self) -> u64 {
        self.m.p as u64 * self.m.p as u64
    }

    /// All of `F_{p^2}` in lexicographic `(x0, x1)` order.
    pub fn elements(&self) -> impl Iterator<Item = Fq2> + Clone {
        let m = self.m;
        let p = m.p as i64;
        (0..p).flat_map(move |x0| (0..p).map(move |x1| Fq2::new(m, x0, x1)))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fq2> + Clone {
        self.elements().filter(|x| !x.is_zero())
    }

    /// `F_p^x` in increasing order.
    pub fn base_units(&self) -> impl Iterator<Item = Fq2> + Clone {
        let m = self.m;
        (1..m.p as i64).map(move |x| Fq2::new(m, x, 0))
    }

    pub fn is_square(&self, x: Fq2) -> bool {
        x.is_zero() || x.pow((self.size() - 1) / 2).is_one()
    }

    /// Canonical square root: the lexicographically smaller of `{r, -r}`.
    pub fn sqrt(&self, x: Fq2) -> Result<Fq2> {
        if x.is_zero() {
            return Ok(x);
        }
        let n = self.size() - 1;
        if !x.pow(n / 2).is_one() {
            return Err(Error::NotASquare(x.to_string()));
        }
        let s = n.trailing_zeros();
        let odd = n >> s;
        let mut c = self.qnr.pow(odd);
        let mut r = x.pow((odd + 1) / 2);
        let mut tt = x.pow(odd);
        let mut big_m = s;
        while !tt.is_one() {
            let mut i = 0;
            let mut probe = tt;
            while !probe.is_one() {
                probe = probe.square();
                i += 1;
            }
            let mut b = c;
            for _ in 0..(big_m - i - 1) {
                b = b.square();
            }
            big_m = i;
            c = b.square();
            tt *= c;
            r *= b;
        }
        debug_assert_eq!(r.square(), x);
        Ok(r.min(-r))
    }

    /// Parses `x0` or `x0+x1i` (also `x1i`, `-x0`); `i` stands for `sqrt(t)`.
    pub fn parse(&self, s: &str) -> Result<Fq2> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("cannot read field element '{s}'"));
        if s.is_empty() {
            return Err(bad());
        }
        let num = |t: &str| -> Result<i64> { t.parse::<i64>().map_err(|_| bad()) };
        if let Some(body) = s.strip_suffix('i') {
            // split at the last sign that is not the leading one
            let split = body
                .char_indices()
                .skip(1)
                .filter(|(_, c)| *c == '+' || *c == '-')
                .map(|(k, _)| k)
                .last();
            let (re, im) = match split {
                Some(k) => (num(&body[..k])?, &body[k..]),
                None => (0, body),
            };
            let im = match im {
                "" | "+" => 1,
                "-" => -1,
                other => num(other.strip_prefix('+').unwrap_or(other))?,
            };
            Ok(self.elem(re, im))
        } else {
            Ok(self.int(num(&s)?))
        }
    }

    /// Parses a comma-separated list of field elements.
    pub fn parse_list(&self, s: &str) -> Result<Vec<Fq2>> {
        s.split(',').map(|part| self.parse(part)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f13() -> FieldCtx {
        FieldCtx::new(13, 3).unwrap()
    }

    #[test]
    fn ctx_examples() {
        let ctx = f13();
        assert_eq!(ctx.q(), ctx.int(3));
        assert_eq!(ctx.dbar(), 3);
        assert_eq!(ctx.t(), 2);
        assert_eq!(FieldCtx::new(13, 4), Err(Error::DExcluded(4)));
        assert_eq!(
            FieldCtx::new(13, 5),
            Err(Error::DOrderUnavailable { p: 13, d: 5 })
        );
        assert_eq!(FieldCtx::new(15, 3), Err(Error::NotPrime(15)));
        assert_eq!(FieldCtx::new(2, 3), Err(Error::NotPrime(2)));
        assert!(matches!(FieldCtx::new(13, 1), Err(Error::DExcluded(1))));
        assert!(matches!(FieldCtx::new(13, 2), Err(Error::DExcluded(2))));
    }

    #[test]
    fn q_has_exact_order_for_every_supported_d() {
        for &p in &[13u64, 37, 97] {
            for &d in &[3u64, 5, 6, 7, 8, 12, 14] {
                let Ok(ctx) = FieldCtx::new(p, d) else {
                    continue;
                };
                let q = ctx.q();
                assert!(q.pow(d).is_one());
                for k in 1..d {
                    assert!(!q.pow(k).is_one(), "p={p} d={d} k={k}");
                }
                let dbar = ctx.dbar() as u64;
                assert!(dbar >= 3);
                assert!(q.square().pow(dbar).is_one());
                for k in 1..dbar {
                    assert!(!q.square().pow(k).is_one());
                }
            }
        }
    }

    #[test]
    fn extension_order_when_d_does_not_divide_p_minus_1() {
        // 7 | 13^2 - 1 = 168 but 7 does not divide 12, so q must leave F_13.
        let ctx = FieldCtx::new(13, 7).unwrap();
        assert!(!ctx.q().in_base_field());
        assert!(ctx.q().pow(7).is_one());
    }

    #[test]
    fn inverse_examples() {
        let ctx = f13();
        assert_eq!(ctx.one().inv().unwrap(), ctx.one());
        assert_eq!(ctx.int(2).inv().unwrap(), ctx.int(7));
        assert_eq!(ctx.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_is_involutive_everywhere() {
        let ctx = f13();
        for x in ctx.nonzero_elements() {
            let xi = x.inv().unwrap();
            assert!((x * xi).is_one());
            assert_eq!(xi.inv().unwrap(), x);
        }
    }

    #[test]
    fn sqrt_examples() {
        let ctx = f13();
        assert_eq!(ctx.sqrt(ctx.int(4)).unwrap(), ctx.int(2));
        assert_eq!(ctx.sqrt(ctx.int(3)).unwrap(), ctx.int(4));
        assert_eq!(ctx.sqrt(ctx.int(ctx.t() as i64)).unwrap(), ctx.elem(0, 1));
        assert_eq!(ctx.sqrt(ctx.zero()).unwrap(), ctx.zero());
    }

    #[test]
    fn sqrt_matches_square_scan() {
        for &p in &[13u64, 37] {
            let ctx = FieldCtx::new(p, 3).unwrap();
            let mut squares = std::collections::HashSet::new();
            for x in ctx.elements() {
                squares.insert(x.square());
            }
            for x in ctx.elements() {
                match ctx.sqrt(x) {
                    Ok(r) => {
                        assert_eq!(r.square(), x);
                        assert!(r <= -r);
                        assert_eq!(ctx.sqrt(x).unwrap(), r);
                    }
                    Err(Error::NotASquare(_)) => assert!(!squares.contains(&x)),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn parse_round_trip() {
        let ctx = f13();
        assert_eq!(ctx.parse("5").unwrap(), ctx.int(5));
        assert_eq!(ctx.parse("-1").unwrap(), ctx.int(12));
        assert_eq!(ctx.parse("3+4i").unwrap(), ctx.elem(3, 4));
        assert_eq!(ctx.parse("3-4i").unwrap(), ctx.elem(3, -4));
        assert_eq!(ctx.parse("i").unwrap(), ctx.elem(0, 1));
        assert_eq!(ctx.parse("2i").unwrap(), ctx.elem(0, 2));
        assert!(ctx.parse("x").is_err());
        for x in ctx.elements() {
            assert_eq!(ctx.parse(&x.to_string()).unwrap(), x);
        }
        assert_eq!(
            ctx.parse_list("1,2,3+1i").unwrap(),
            vec![ctx.int(1), ctx.int(2), ctx.elem(3, 1)]
        );
    }

    #[test]
    fn serializes_as_pair() {
        let ctx = f13();
        assert_eq!(serde_json::to_string(&ctx.elem(3, 4)).unwrap(), "[3,4]");
    }
}
