//! Rational homotopy ranks of products of loops on spheres.
//!
//! Classical inputs: `π_*(S^d) ⊗ Q` is one class in degree `d` for odd `d`
//! and two classes (degrees `d` and `2d-1`) for even `d`. [`free_lie_ranks`]
//! recomputes the same numbers for loops on wedges from the free graded Lie
//! algebra, without using the Hilton–Milnor factors.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hilton::{inverse_power_of_one_minus, FactorList};
use crate::{json as js, Count, Series};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subject {
    /// `π_q(ΩM) ⊗ Q`
    Loop,
    /// `π_q(M) ⊗ Q`
    Base,
}

impl Subject {
    pub fn as_str(self) -> &'static str {
        match self {
            Subject::Loop => "loop",
            Subject::Base => "base",
        }
    }
}

/// Ranks of rational homotopy groups, exact in degrees `≤ cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    pub subject: Subject,
    pub cap: usize,
    pub ranks: BTreeMap<u32, Count>,
    /// Copied from the factor list: the underlying product was infinite.
    pub truncated: bool,
}

impl RankTable {
    pub fn rank(&self, q: u32) -> Count {
        self.ranks.get(&q).cloned().unwrap_or_default()
    }

    /// Table of the base space: `π_q(M) = π_{q-1}(ΩM)`, exact through
    /// `cap + 1`.
    pub fn to_base(&self) -> RankTable {
        match self.subject {
            Subject::Base => self.clone(),
            Subject::Loop => RankTable {
                subject: Subject::Base,
                cap: self.cap + 1,
                ranks: self.ranks.iter().map(|(q, c)| (q + 1, c.clone())).collect(),
                truncated: self.truncated,
            },
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "subject": self.subject.as_str(),
            "cap": self.cap,
            "ranks": js::count_map(&self.ranks),
            "truncated": self.truncated,
        })
    }
}

impl fmt::Display for RankTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ranks (cap {}):", self.subject.as_str(), self.cap)?;
        if self.ranks.is_empty() {
            write!(f, " none")?;
        }
        for (q, c) in &self.ranks {
            write!(f, " π_{q}={c}")?;
        }
        Ok(())
    }
}

/// Loop-space rank table of a product of circles, spheres and loops on
/// spheres.
pub fn rational_ranks(f: &FactorList) -> RankTable {
    let cap = f.cap as u32;
    let mut ranks: BTreeMap<u32, Count> = BTreeMap::new();
    let mut add = |q: u32, c: &Count| {
        if q <= cap && !c.is_zero() {
            *ranks.entry(q).or_default() += c;
        }
    };
    add(1, &Count::from(f.circles));
    for (&d, c) in &f.spheres {
        add(d, c);
        if d % 2 == 0 {
            add(2 * d - 1, c);
        }
    }
    for (&d, c) in &f.loop_spheres {
        add(d - 1, c);
        if d % 2 == 0 {
            add(2 * d - 2, c);
        }
    }
    RankTable {
        subject: Subject::Loop,
        cap: f.cap,
        ranks,
        truncated: f.truncated,
    }
}

/// Ranks of the free graded Lie algebra on generators of the given degrees,
/// from `∏_{j odd}(1+t^j)^{L_j} ∏_{j even}(1-t^j)^{-L_j} = 1/(1 - Σ t^{d_i})`.
pub fn free_lie_ranks(generator_degrees: &[u32], cap: usize) -> Result<BTreeMap<u32, Count>> {
    if generator_degrees.contains(&0) {
        return Err(Error::Domain("free_lie_ranks: generator degrees must be >= 1".into()));
    }
    let mut g = Series::zero(cap);
    for &d in generator_degrees {
        if (d as usize) <= cap {
            g.set_coeff(d as usize, g.coeff(d as usize) + BigInt::one());
        }
    }
    let target = Series::one(cap).sub(&g)?.invert()?;
    let mut acc = Series::one(cap);
    let mut out = BTreeMap::new();
    for j in 1..=cap {
        let l = target.coeff(j) - acc.coeff(j);
        match l.sign() {
            Sign::NoSign => continue,
            Sign::Minus => {
                return Err(Error::Oracle(format!("free_lie_ranks: negative rank {l} in degree {j}")))
            }
            Sign::Plus => {}
        }
        let factor = if j % 2 == 1 {
            binomial_power_of_one_plus(j, &l, cap)
        } else {
            inverse_power_of_one_minus(j, &l, cap)
        };
        acc = acc.mul(&factor)?;
        out.insert(j as u32, l.to_biguint().expect("positive"));
    }
    Ok(out)
}

/// `(1 + t^d)^n` truncated at `cap`.
fn binomial_power_of_one_plus(d: usize, n: &BigInt, cap: usize) -> Series {
    let mut s = Series::zero(cap);
    let mut c = BigInt::one();
    let mut i = 0usize;
    while i * d <= cap && !c.is_zero() {
        s.set_coeff(i * d, c.clone());
        c = c * (n - BigInt::from(i)) / BigInt::from(i + 1);
        i += 1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{hilton_milnor, normal_form, SpaceExpr, SphereWedge};

    fn table(pairs: &[(u32, u32)]) -> BTreeMap<u32, Count> {
        pairs.iter().map(|&(q, c)| (q, Count::from(c))).collect()
    }

    #[test]
    fn cp2_and_s2xs2() {
        let mut f = FactorList::empty(20);
        f.add_circles(1);
        f.add_loop_sphere(5, Count::one());
        assert_eq!(rational_ranks(&f).to_base().ranks, table(&[(2, 1), (5, 1)]));

        let mut f = FactorList::empty(20);
        f.add_loop_sphere(2, Count::from(2u32));
        assert_eq!(rational_ranks(&f).to_base().ranks, table(&[(2, 2), (3, 2)]));

        // S^1 x ΩS^2 x ΩS^3 is the same space up to rational homotopy
        let mut g = FactorList::empty(20);
        g.add_circles(1);
        g.add_loop_sphere(2, Count::one());
        g.add_loop_sphere(3, Count::one());
        assert_eq!(rational_ranks(&g).ranks, rational_ranks(&f).ranks);
    }

    #[test]
    fn loop_s4() {
        let f = normal_form(&SpaceExpr::loop_of(SpaceExpr::Sphere(4)), 20).unwrap();
        let t = rational_ranks(&f);
        assert_eq!(t.ranks, table(&[(3, 1), (6, 1)]));
        assert_eq!(t.to_base().ranks, table(&[(4, 1), (7, 1)]));
        assert_eq!(t.to_base().cap, 21);
    }

    #[test]
    fn free_lie_examples() {
        let l = free_lie_ranks(&[1, 2], 6).unwrap();
        assert_eq!(l.get(&1), Some(&Count::from(1u32)));
        assert_eq!(l.get(&2), Some(&Count::from(2u32)));
        assert_eq!(l.get(&3), Some(&Count::from(1u32)));
        assert_eq!(free_lie_ranks(&[1], 10).unwrap(), table(&[(1, 1), (2, 1)]));
        assert_eq!(free_lie_ranks(&[3], 20).unwrap(), table(&[(3, 1), (6, 1)]));
        assert!(free_lie_ranks(&[0], 3).is_err());
    }

    #[test]
    fn hilton_milnor_matches_free_lie() {
        let cap = 16;
        let w = SphereWedge::from_pairs([(2u32, 1u32), (3, 1), (4, 2)]).unwrap();
        let f = hilton_milnor(&w, cap).unwrap();
        assert_eq!(rational_ranks(&f).ranks, free_lie_ranks(&[1, 2, 3, 3], cap).unwrap());
    }

    #[test]
    fn binomial_series() {
        let s = binomial_power_of_one_plus(2, &BigInt::from(3), 8);
        let expect = [1, 0, 3, 0, 3, 0, 1, 0, 0];
        assert_eq!(s, Series::from_coeffs(8, expect.iter().map(|&c| BigInt::from(c))));
    }
}
