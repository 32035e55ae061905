//! Space expressions: the small language the decomposition theorems are
//! written in, plus wedges of spheres as multisets of dimensions.
//!
//! Text rendering uses `S^d` for spheres, `*` for the point, prefix `Ω`
//! (loop) and `Σ` (suspension), and infix `∧` (smash), `x` (product) and
//! `v` (wedge), in decreasing order of binding strength. The ASCII
//! spellings `O`, `S`, `^` are accepted for `Ω`, `Σ`, `∧`, and `×`, `∨`
//! for `x`, `v`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;
use crate::Series;

/// A space built from spheres by the usual constructions.
///
/// Variant order is the canonical total order used when sorting children:
/// `Point < Sphere < Loop < Suspension < Smash < Wedge < Product`, with
/// ties broken lexicographically on the payload.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpaceExpr {
    Point,
    Sphere(u32),
    Loop(Box<SpaceExpr>),
    Suspension(Box<SpaceExpr>),
    Smash(Vec<SpaceExpr>),
    Wedge(Vec<SpaceExpr>),
    Product(Vec<SpaceExpr>),
}

impl SpaceExpr {
    pub fn sphere(d: u32) -> SpaceExpr {
        SpaceExpr::Sphere(d)
    }

    pub fn loop_of(e: SpaceExpr) -> SpaceExpr {
        SpaceExpr::Loop(Box::new(e))
    }

    pub fn suspension_of(e: SpaceExpr) -> SpaceExpr {
        SpaceExpr::Suspension(Box::new(e))
    }

    pub fn wedge(children: impl IntoIterator<Item = SpaceExpr>) -> SpaceExpr {
        SpaceExpr::Wedge(children.into_iter().collect())
    }

    pub fn product(children: impl IntoIterator<Item = SpaceExpr>) -> SpaceExpr {
        SpaceExpr::Product(children.into_iter().collect())
    }

    pub fn smash(children: impl IntoIterator<Item = SpaceExpr>) -> SpaceExpr {
        SpaceExpr::Smash(children.into_iter().collect())
    }

    /// Rejects `S^0` and empty smashes anywhere in the tree.
    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceExpr::Point => Ok(()),
            SpaceExpr::Sphere(0) => Err(Error::Validation("S^0 is not a valid sphere".into())),
            SpaceExpr::Sphere(_) => Ok(()),
            SpaceExpr::Loop(c) | SpaceExpr::Suspension(c) => c.validate(),
            SpaceExpr::Smash(cs) if cs.is_empty() => {
                Err(Error::Validation("smash of an empty list".into()))
            }
            SpaceExpr::Smash(cs) | SpaceExpr::Wedge(cs) | SpaceExpr::Product(cs) => {
                cs.iter().try_for_each(SpaceExpr::validate)
            }
        }
    }

    /// Unique representative: n-ary constructors flattened, sorted, with
    /// points removed or absorbing as appropriate and singletons unwrapped.
    pub fn canonicalize(&self) -> SpaceExpr {
        match self {
            SpaceExpr::Point | SpaceExpr::Sphere(_) => self.clone(),
            SpaceExpr::Loop(c) => match c.canonicalize() {
                SpaceExpr::Point => SpaceExpr::Point,
                c => SpaceExpr::Loop(Box::new(c)),
            },
            SpaceExpr::Suspension(c) => match c.canonicalize() {
                SpaceExpr::Point => SpaceExpr::Point,
                c => SpaceExpr::Suspension(Box::new(c)),
            },
            SpaceExpr::Wedge(cs) => {
                canonical_nary(cs, SpaceExpr::Wedge, |e| match e {
                    SpaceExpr::Wedge(v) => Some(v),
                    _ => None,
                })
            }
            SpaceExpr::Product(cs) => {
                canonical_nary(cs, SpaceExpr::Product, |e| match e {
                    SpaceExpr::Product(v) => Some(v),
                    _ => None,
                })
            }
            SpaceExpr::Smash(cs) => {
                let flat = flatten(cs, |e| match e {
                    SpaceExpr::Smash(v) => Some(v),
                    _ => None,
                });
                if flat.is_empty() || flat.contains(&SpaceExpr::Point) {
                    return SpaceExpr::Point;
                }
                finish_nary(flat, SpaceExpr::Smash)
            }
        }
    }

    /// Rendering with ASCII operators only.
    pub fn render_ascii(&self) -> String {
        let mut s = String::new();
        self.render(&mut s, &ASCII).expect("writing to a String");
        s
    }

    pub fn parse(text: &str) -> Result<SpaceExpr> {
        Parser::new(text).parse_all()
    }

    fn precedence(&self) -> u8 {
        match self {
            SpaceExpr::Wedge(_) => 1,
            SpaceExpr::Product(_) => 2,
            SpaceExpr::Smash(_) => 3,
            _ => 4,
        }
    }

    fn render<W: fmt::Write>(&self, out: &mut W, ops: &Operators) -> fmt::Result {
        match self {
            SpaceExpr::Point => out.write_str("*"),
            SpaceExpr::Sphere(d) => write!(out, "S^{d}"),
            SpaceExpr::Loop(c) => {
                out.write_str(ops.loop_)?;
                c.render_operand(out, ops, 4)
            }
            SpaceExpr::Suspension(c) => {
                out.write_str(ops.suspension)?;
                c.render_operand(out, ops, 4)
            }
            SpaceExpr::Smash(cs) => render_nary(out, cs, ops.smash, 3, ops),
            SpaceExpr::Wedge(cs) => render_nary(out, cs, ops.wedge, 1, ops),
            SpaceExpr::Product(cs) => render_nary(out, cs, ops.product, 2, ops),
        }
    }

    fn render_operand<W: fmt::Write>(&self, out: &mut W, ops: &Operators, parent: u8) -> fmt::Result {
        let needs_parens = match self {
            SpaceExpr::Wedge(cs) | SpaceExpr::Product(cs) | SpaceExpr::Smash(cs) => {
                cs.len() < 2 || self.precedence() <= parent
            }
            _ => false,
        };
        if needs_parens {
            out.write_char('(')?;
            self.render(out, ops)?;
            out.write_char(')')
        } else {
            self.render(out, ops)
        }
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, &UNICODE)
    }
}

fn flatten(cs: &[SpaceExpr], same: impl Fn(SpaceExpr) -> Option<Vec<SpaceExpr>> + Copy) -> Vec<SpaceExpr> {
    let mut out = Vec::with_capacity(cs.len());
    for c in cs {
        let c = c.canonicalize();
        match same(c.clone()) {
            Some(inner) => out.extend(inner),
            None => out.push(c),
        }
    }
    out
}

fn canonical_nary(
    cs: &[SpaceExpr],
    build: fn(Vec<SpaceExpr>) -> SpaceExpr,
    same: impl Fn(SpaceExpr) -> Option<Vec<SpaceExpr>> + Copy,
) -> SpaceExpr {
    let mut flat = flatten(cs, same);
    flat.retain(|c| *c != SpaceExpr::Point);
    finish_nary(flat, build)
}

fn finish_nary(mut cs: Vec<SpaceExpr>, build: fn(Vec<SpaceExpr>) -> SpaceExpr) -> SpaceExpr {
    cs.sort();
    match cs.len() {
        0 => SpaceExpr::Point,
        1 => cs.pop().unwrap(),
        _ => build(cs),
    }
}

fn render_nary<W: fmt::Write>(
    out: &mut W,
    cs: &[SpaceExpr],
    sep: &str,
    prec: u8,
    ops: &Operators,
) -> fmt::Result {
    if cs.is_empty() {
        return out.write_str("*");
    }
    for (i, c) in cs.iter().enumerate() {
        if i > 0 {
            out.write_str(sep)?;
        }
        c.render_operand(out, ops, prec)?;
    }
    Ok(())
}

struct Operators {
    loop_: &'static str,
    suspension: &'static str,
    smash: &'static str,
    product: &'static str,
    wedge: &'static str,
}

const UNICODE: Operators = Operators {
    loop_: "Ω",
    suspension: "Σ",
    smash: " ∧ ",
    product: " x ",
    wedge: " v ",
};

const ASCII: Operators = Operators {
    loop_: "O",
    suspension: "S",
    smash: " ^ ",
    product: " x ",
    wedge: " v ",
};

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            pos: 0,
            _src: src,
        }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self._src.len(), |&(o, _)| o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn peek2(&self) -> Option<char> {
        self.chars.get(self.pos + 1).map(|&(_, c)| c)
    }

    fn eat(&mut self, options: &[char]) -> bool {
        match self.peek() {
            Some(c) if options.contains(&c) => {
                self.pos += 1;
                true
            }
            _ => false,
        }
    }

    fn parse_all(mut self) -> Result<SpaceExpr> {
        let e = self.wedge()?;
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(e)
    }

    fn wedge(&mut self) -> Result<SpaceExpr> {
        let mut items = vec![self.product()?];
        while self.eat(&['v', '∨']) {
            items.push(self.product()?);
        }
        Ok(single_or(items, SpaceExpr::Wedge))
    }

    fn product(&mut self) -> Result<SpaceExpr> {
        let mut items = vec![self.smash()?];
        while self.eat(&['x', '×']) {
            items.push(self.smash()?);
        }
        Ok(single_or(items, SpaceExpr::Product))
    }

    fn smash(&mut self) -> Result<SpaceExpr> {
        let mut items = vec![self.unary()?];
        while self.eat(&['^', '∧']) {
            items.push(self.unary()?);
        }
        Ok(single_or(items, SpaceExpr::Smash))
    }

    fn unary(&mut self) -> Result<SpaceExpr> {
        match self.peek() {
            Some('Ω') | Some('O') => {
                self.pos += 1;
                Ok(SpaceExpr::loop_of(self.unary()?))
            }
            Some('Σ') => {
                self.pos += 1;
                Ok(SpaceExpr::suspension_of(self.unary()?))
            }
            Some('S') if self.peek2() != Some('^') => {
                self.pos += 1;
                Ok(SpaceExpr::suspension_of(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<SpaceExpr> {
        match self.peek() {
            Some('*') | Some('∗') => {
                self.pos += 1;
                Ok(SpaceExpr::Point)
            }
            Some('(') => {
                self.pos += 1;
                let e = self.wedge()?;
                if !self.eat(&[')']) {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some('S') => {
                self.pos += 2;
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                if start == self.pos {
                    return self.err("expected sphere dimension after 'S^'");
                }
                let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                let d: u32 = match digits.parse() {
                    Ok(d) => d,
                    Err(_) => return self.err("sphere dimension out of range"),
                };
                if d == 0 {
                    return self.err("S^0 is not a valid sphere");
                }
                Ok(SpaceExpr::Sphere(d))
            }
            Some(c) => self.err(format!("unexpected character {c:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn single_or(mut items: Vec<SpaceExpr>, build: fn(Vec<SpaceExpr>) -> SpaceExpr) -> SpaceExpr {
    if items.len() == 1 {
        items.pop().unwrap()
    } else {
        build(items)
    }
}

/// Wedge of simply-connected spheres, as dimension → multiplicity.
///
/// The empty wedge is the point.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SphereWedge {
    dims: BTreeMap<u32, BigUint>,
}

impl SphereWedge {
    pub fn point() -> Self {
        Self::default()
    }

    pub fn from_pairs<C: Into<BigUint>>(pairs: impl IntoIterator<Item = (u32, C)>) -> Result<Self> {
        let mut w = Self::point();
        for (d, c) in pairs {
            w.insert(d, c.into())?;
        }
        Ok(w)
    }

    /// Adds `count` copies of `S^d`.
    pub fn insert(&mut self, d: u32, count: BigUint) -> Result<()> {
        if d < 2 {
            return Err(Error::Validation(format!(
                "sphere wedges are simply connected; dimension {d} < 2"
            )));
        }
        if !count.is_zero() {
            *self.dims.entry(d).or_default() += count;
        }
        Ok(())
    }

    pub fn is_point(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn multiplicity(&self, d: u32) -> BigUint {
        self.dims.get(&d).cloned().unwrap_or_default()
    }

    /// Number of summands.
    pub fn size(&self) -> BigUint {
        self.dims.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigUint)> + '_ {
        self.dims.iter().map(|(&d, c)| (d, c))
    }

    pub fn min_dim(&self) -> Option<u32> {
        self.dims.keys().next().copied()
    }

    pub fn max_dim(&self) -> Option<u32> {
        self.dims.keys().next_back().copied()
    }

    /// Wedge sum (multiset union).
    pub fn union(&self, other: &SphereWedge) -> SphereWedge {
        let mut out = self.clone();
        for (d, c) in other.iter() {
            *out.dims.entry(d).or_default() += c;
        }
        out
    }

    /// Suspension shifts every summand up by `k`.
    pub fn suspend(&self, k: u32) -> SphereWedge {
        SphereWedge {
            dims: self.dims.iter().map(|(&d, c)| (d + k, c.clone())).collect(),
        }
    }

    /// Keeps only summands of dimension at most `max_dim`.
    pub fn truncate(&self, max_dim: u32) -> SphereWedge {
        SphereWedge {
            dims: self.dims.range(..=max_dim).map(|(&d, c)| (d, c.clone())).collect(),
        }
    }

    /// Reduced homology: one generator per summand.
    pub fn reduced_homology_series(&self, cap: usize) -> Series {
        let mut s = Series::zero(cap);
        for (d, c) in self.iter() {
            s.set_coeff(d as usize, BigInt::from(c.clone()));
        }
        s
    }

    /// Reduced homology shifted down one degree: the generators of the
    /// tensor algebra `H_*(ΩW)`.
    pub fn desuspended_series(&self, cap: usize) -> Series {
        let mut s = Series::zero(cap);
        for (d, c) in self.iter() {
            s.set_coeff(d as usize - 1, BigInt::from(c.clone()));
        }
        s
    }

    /// Inverse of [`SphereWedge::reduced_homology_series`]: the wedge with a
    /// summand `S^d` for each unit of the coefficient of `t^d`.
    pub fn from_reduced_series(s: &TruncatedSeries<BigInt>) -> Result<SphereWedge> {
        let mut w = SphereWedge::point();
        for (d, c) in s.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() || d < 2 {
                return Err(Error::Domain(format!(
                    "series coefficient {c} at degree {d} is not the homology of a simply-connected sphere wedge"
                )));
            }
            w.insert(d as u32, c.magnitude().clone())?;
        }
        Ok(w)
    }

    /// Expression `S^{d1} v S^{d1} v ...` listing every summand.
    pub fn to_expr(&self) -> Result<SpaceExpr> {
        let mut spheres = Vec::new();
        for (d, c) in self.iter() {
            let n = c.to_usize().filter(|&n| n <= 1 << 20).ok_or_else(|| {
                Error::Domain(format!("wedge with {c} copies of S^{d} is too large to spell out"))
            })?;
            spheres.extend(std::iter::repeat_n(SpaceExpr::Sphere(d), n));
        }
        Ok(SpaceExpr::Wedge(spheres).canonicalize())
    }

    /// Summands as `(dimension, count)` with machine-size counts.
    pub fn to_map(&self) -> BTreeMap<u32, BigUint> {
        self.dims.clone()
    }
}

impl fmt::Display for SphereWedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return f.write_str("*");
        }
        for (i, (d, c)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" v ")?;
            }
            if c.is_one() {
                write!(f, "S^{d}")?;
            } else {
                write!(f, "{c}·S^{d}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SpaceExpr::*;

    fn s(d: u32) -> SpaceExpr {
        Sphere(d)
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(Wedge(vec![]).canonicalize(), Point);
        assert_eq!(
            Product(vec![SpaceExpr::loop_of(s(2)), Point]).canonicalize(),
            SpaceExpr::loop_of(s(2))
        );
        assert_eq!(
            Wedge(vec![s(3), s(2), s(3)]).canonicalize(),
            Wedge(vec![s(2), s(3), s(3)])
        );
    }

    #[test]
    fn point_rules() {
        assert_eq!(SpaceExpr::loop_of(Point).canonicalize(), Point);
        assert_eq!(SpaceExpr::suspension_of(Point).canonicalize(), Point);
        assert_eq!(Smash(vec![s(2), Point]).canonicalize(), Point);
        assert_eq!(
            Wedge(vec![Wedge(vec![s(4), Point]), s(2), Wedge(vec![s(3)])]).canonicalize(),
            Wedge(vec![s(2), s(3), s(4)])
        );
    }

    #[test]
    fn order_of_constructors() {
        let mut v = [Product(vec![s(1), s(2)]),
            Wedge(vec![s(2), s(3)]),
            Smash(vec![s(2), s(3)]),
            SpaceExpr::suspension_of(s(2)),
            SpaceExpr::loop_of(s(2)),
            s(3),
            s(2),
            Point];
        v.sort();
        assert_eq!(v[0], Point);
        assert_eq!(v[1], s(2));
        assert!(matches!(v[3], Loop(_)));
        assert!(matches!(v[4], Suspension(_)));
        assert!(matches!(v[5], Smash(_)));
        assert!(matches!(v[6], Wedge(_)));
        assert!(matches!(v[7], Product(_)));
    }

    #[test]
    fn validation() {
        assert!(s(0).validate().is_err());
        assert!(Smash(vec![]).validate().is_err());
        assert!(SpaceExpr::loop_of(Wedge(vec![s(0)])).validate().is_err());
        assert!(SpaceExpr::loop_of(Product(vec![s(2), s(3)])).validate().is_ok());
    }

    #[test]
    fn rendering() {
        let e = Product(vec![
            SpaceExpr::loop_of(Product(vec![s(2), s(3)])),
            SpaceExpr::loop_of(Wedge(vec![
                s(2),
                s(3),
                Smash(vec![Wedge(vec![s(2), s(3)]), SpaceExpr::loop_of(Product(vec![s(2), s(3)]))]),
            ])),
        ]);
        assert_eq!(
            e.to_string(),
            "Ω(S^2 x S^3) x Ω(S^2 v S^3 v (S^2 v S^3) ∧ Ω(S^2 x S^3))"
        );
        assert_eq!(
            e.render_ascii(),
            "O(S^2 x S^3) x O(S^2 v S^3 v (S^2 v S^3) ^ O(S^2 x S^3))"
        );
        assert_eq!(SpaceExpr::parse(&e.to_string()).unwrap(), e);
        assert_eq!(SpaceExpr::parse(&e.render_ascii()).unwrap(), e);
    }

    #[test]
    fn parse_ascii_suspension_and_errors() {
        assert_eq!(
            SpaceExpr::parse("SS^2").unwrap(),
            SpaceExpr::suspension_of(s(2))
        );
        assert_eq!(
            SpaceExpr::parse("S^1 × ΩS^5").unwrap(),
            Product(vec![s(1), SpaceExpr::loop_of(s(5))])
        );
        assert!(matches!(SpaceExpr::parse("S^0"), Err(Error::Parse { .. })));
        assert!(matches!(SpaceExpr::parse("(S^2 v S^3"), Err(Error::Parse { .. })));
        assert!(matches!(SpaceExpr::parse("S^2 v"), Err(Error::Parse { .. })));
    }

    #[test]
    fn wedge_series() {
        let one = SphereWedge::from_pairs([(2, 1u32)]).unwrap();
        assert_eq!(
            one.reduced_homology_series(5),
            Series::from_coeffs(5, [0, 0, 1].map(BigInt::from))
        );
        let j = SphereWedge::from_pairs([(2, 2u32), (3, 2)]).unwrap();
        assert_eq!(
            j.reduced_homology_series(5),
            Series::from_coeffs(5, [0, 0, 2, 2].map(BigInt::from))
        );
        assert!(SphereWedge::point().reduced_homology_series(5).is_zero());
        assert!(SphereWedge::from_pairs([(1, 1u32)]).is_err());
    }

    #[test]
    fn wedge_series_roundtrip() {
        let j = SphereWedge::from_pairs([(2, 3u32), (7, 1)]).unwrap();
        let back = SphereWedge::from_reduced_series(&j.reduced_homology_series(9)).unwrap();
        assert_eq!(back, j);
        assert_eq!(
            j.to_expr().unwrap(),
            Wedge(vec![s(2), s(2), s(2), s(7)])
        );
        assert_eq!(j.to_string(), "3·S^2 v S^7");
    }
}
