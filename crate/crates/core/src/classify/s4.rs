use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq2};
use crate::modules::Params4;

const TABLE: &str = include_str!("s4_table.txt");

/// A permutation of `{1,2,3,4}`; `images[i-1] = sigma(i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Perm {
    pub images: [u8; 4],
}

impl Perm {
    pub const IDENTITY: Perm = Perm {
        images: [1, 2, 3, 4],
    };

    /// Parses cycle notation such as `(1 3)(2 4)` or `()`.
    pub fn parse(s: &str) -> Result<Perm> {
        let mut images = [1, 2, 3, 4];
        for cycle in s.split(')').map(str::trim).filter(|c| !c.is_empty()) {
            let body = cycle
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("bad cycle in {s:?}")))?;
            let pts: Vec<u8> = body
                .split_whitespace()
                .map(|x| {
                    x.parse::<u8>()
                        .map_err(|_| Error::Parse(format!("bad point {x:?}")))
                })
                .collect::<Result<_>>()?;
            if pts.iter().any(|&x| !(1..=4).contains(&x)) {
                return Err(Error::Parse(format!("point out of range in {s:?}")));
            }
            for (k, &x) in pts.iter().enumerate() {
                images[x as usize - 1] = pts[(k + 1) % pts.len()];
            }
        }
        Ok(Perm { images })
    }

    /// `(self then other)(i) = other(self(i))`.
    pub fn then(&self, other: &Perm) -> Perm {
        let mut images = [0; 4];
        for i in 0..4 {
            images[i] = other.images[self.images[i] as usize - 1];
        }
        Perm { images }
    }
}

/// Exponents of `a, b, c, l, q, s`.
type Monomial = [i8; 6];

#[derive(Clone, Debug)]
pub struct S4Row {
    pub label: String,
    pub perm: Perm,
    coords: [Monomial; 4],
}

impl S4Row {
    pub fn uses_sqrt(&self) -> bool {
        self.coords.iter().any(|m| m[5] != 0)
    }
}

fn parse_monomial(s: &str) -> Result<Monomial> {
    let mut m = [0i8; 6];
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, ""),
    };
    for (part, sign) in [(num, 1), (den, -1)] {
        for tok in part.split_whitespace() {
            let idx = match tok {
                "1" => continue,
                "a" => 0,
                "b" => 1,
                "c" => 2,
                "l" => 3,
                "q" => 4,
                "s" => 5,
                _ => return Err(Error::Parse(format!("unknown symbol {tok:?}"))),
            };
            m[idx] += sign;
        }
    }
    Ok(m)
}

fn parse_table() -> Result<Vec<S4Row>> {
    let mut rows = Vec::new();
    for line in TABLE
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        let (label, rest) = line
            .split_once('|')
            .ok_or_else(|| Error::Parse(line.to_string()))?;
        let label = label.trim().to_string();
        let parts: Vec<&str> = rest.split(';').collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "expected four coordinates in {line:?}"
            )));
        }
        let mut coords = [[0; 6]; 4];
        for (k, p) in parts.iter().enumerate() {
            coords[k] = parse_monomial(p)?;
        }
        rows.push(S4Row {
            perm: Perm::parse(&label)?,
            label,
            coords,
        });
    }
    Ok(rows)
}

/// The 24 rows of the action table.
pub fn s4_rows() -> &'static [S4Row] {
    static ROWS: OnceLock<Vec<S4Row>> = OnceLock::new();
    ROWS.get_or_init(|| parse_table().expect("embedded table is well formed"))
}

pub fn s4_row(label: &str) -> Option<&'static S4Row> {
    let perm = Perm::parse(label).ok()?;
    s4_rows().iter().find(|r| r.perm == perm)
}

/// `sqrt(a b c lambda q)`, or `NeedsExtension` when it is not in `F_{p^2}`.
pub fn orbit_sqrt(ctx: &FieldCtx, p: &Params4) -> Result<Fq2> {
    let x = p.a * p.b * p.c * p.lambda * ctx.q();
    ctx.sqrt(x)
        .map_err(|_| Error::NeedsExtension(format!("sqrt(abc lambda q) with abc lambda q = {x}")))
}

fn eval(ctx: &FieldCtx, p: &Params4, s: Fq2, m: &Monomial) -> Fq2 {
    let base = [p.a, p.b, p.c, p.lambda, ctx.q(), s];
    base.iter()
        .zip(m)
        .fold(ctx.one(), |acc, (&x, &e)| acc * x.powi(e as i64))
}

/// Applies one row; `s` is only used by rows that need it.
pub fn apply_row_with(ctx: &FieldCtx, p: &Params4, row: &S4Row, s: Fq2) -> Params4 {
    let c = row.coords.map(|m| eval(ctx, p, s, &m));
    Params4::from_array(c)
}

pub fn apply_row(ctx: &FieldCtx, p: &Params4, row: &S4Row) -> Result<Params4> {
    let s = if row.uses_sqrt() {
        orbit_sqrt(ctx, p)?
    } else {
        ctx.one()
    };
    Ok(apply_row_with(ctx, p, row, s))
}

/// Canonical representative of `{P, -P}`.
pub fn sign_class(p: &Params4) -> Params4 {
    (*p).min(p.neg())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct S4Orbit {
    /// `(row label, sign class of the image)` for all 24 rows.
    pub images: Vec<(String, Params4)>,
    /// Distinct sign classes, sorted.
    pub classes: Vec<Params4>,
}

impl S4Orbit {
    pub fn contains(&self, p: &Params4) -> bool {
        self.classes.binary_search(&sign_class(p)).is_ok()
    }
}

pub fn s4_orbit(ctx: &FieldCtx, p: &Params4) -> Result<S4Orbit> {
    let s = orbit_sqrt(ctx, p)?;
    let images: Vec<(String, Params4)> = s4_rows()
        .iter()
        .map(|r| (r.label.clone(), sign_class(&apply_row_with(ctx, p, r, s))))
        .collect();
    let classes: BTreeSet<Params4> = images.iter().map(|(_, x)| *x).collect();
    Ok(S4Orbit {
        images,
        classes: classes.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic(ctx: &FieldCtx) -> Params4 {
        // c chosen so that a b c lambda q is a square
        let (a, b, l, s) = (ctx.int(2), ctx.elem(3, 1), ctx.int(5), ctx.elem(1, 4));
        let c = s * s / (a * b * l * ctx.q());
        Params4::new(a, b, c, l).unwrap()
    }

    #[test]
    fn table_has_all_permutations() {
        let rows = s4_rows();
        assert_eq!(rows.len(), 24);
        let perms: std::collections::HashSet<_> = rows.iter().map(|r| r.perm.images).collect();
        assert_eq!(perms.len(), 24);
        assert_eq!(rows[0].perm, Perm::IDENTITY);
    }

    #[test]
    fn parse_cycles() {
        assert_eq!(Perm::parse("(1 3)(2 4)").unwrap().images, [3, 4, 1, 2]);
        assert_eq!(Perm::parse("(1 2 3 4)").unwrap().images, [2, 3, 4, 1]);
        assert!(Perm::parse("(1 5)").is_err());
    }

    #[test]
    fn identity_and_simple_rows() {
        let ctx = FieldCtx::new(13, 3).unwrap();
        let p = generic(&ctx);
        let orbit = s4_orbit(&ctx, &p).unwrap();
        assert_eq!(orbit.images[0].1, sign_class(&p));
        let img34 = &orbit.images.iter().find(|(l, _)| l == "(3 4)").unwrap().1;
        assert_eq!(
            *img34,
            sign_class(&Params4::new(p.a.powi(-1), p.b, p.c, p.lambda).unwrap())
        );
        assert!(orbit.classes.len() <= 24);
    }

    /// Applying row `s` then row `t` is the row of `s o t`.
    #[test]
    fn rows_compose_as_a_right_action() {
        for (p_, d) in [(13, 3), (37, 6)] {
            let ctx = FieldCtx::new(p_, d).unwrap();
            let p = generic(&ctx);
            let rows = s4_rows();
            for r1 in rows {
                let x = apply_row(&ctx, &p, r1).unwrap();
                for r2 in rows {
                    let y = sign_class(&apply_row(&ctx, &x, r2).unwrap());
                    let composed = rows
                        .iter()
                        .find(|r| r.perm == r2.perm.then(&r1.perm))
                        .unwrap();
                    assert_eq!(
                        y,
                        sign_class(&apply_row(&ctx, &p, composed).unwrap()),
                        "{} {}",
                        r1.label,
                        r2.label
                    );
                }
            }
        }
    }

    #[test]
    fn orbit_is_closed_under_generators() {
        let ctx = FieldCtx::new(37, 6).unwrap();
        let p = generic(&ctx);
        let orbit = s4_orbit(&ctx, &p).unwrap();
        for g in ["(1 2)", "(2 3)", "(3 4)"] {
            let row = s4_row(g).unwrap();
            for x in &orbit.classes {
                assert!(orbit.contains(&apply_row(&ctx, x, row).unwrap()));
            }
        }
    }
}
