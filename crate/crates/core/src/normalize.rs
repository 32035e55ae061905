//! Rewriting decomposition expressions into a [`FactorList`].
//!
//! The rules used, all valid for the simply-connected wedges produced by
//! the decomposition theorems:
//!
//! - `Ω(X × Y) ≃ ΩX × ΩY`;
//! - `ΣΩS^s ≃ ⋁_{i≥1} S^{(s-1)i+1}` (James), and more generally the
//!   suspension of a product of loops on spheres is a wedge of spheres;
//! - a smash in which one factor is a wedge of spheres is itself a wedge of
//!   spheres whose reduced homology is the product of the reduced series;
//! - `X ⋉ Y ≃ Y ∨ (X ∧ Y)` when `Y` is a suspension;
//! - Hilton–Milnor for the loops on a wedge;
//! - `ΩS^4 ≃ S^3 × ΩS^7` and `ΩS^8 ≃ S^7 × ΩS^15` (Hopf fibrations).
//!
//! Infinite wedges are handled by truncating at the cap; every output is
//! exact in homological degrees up to the cap.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expr::{SpaceExpr, SphereWedge};
use crate::hilton::{hilton_milnor, loop_factor_series, power, FactorList};
use crate::{Count, Series};

/// Summands of `ΣΩS^s` up to dimension `cap + 1`.
pub fn james_split(s: u32, cap: usize) -> Result<SphereWedge> {
    if s < 2 {
        return Err(Error::Domain(format!("james_split: sphere dimension {s} < 2")));
    }
    let mut w = SphereWedge::point();
    let step = (s - 1) as usize;
    let mut d = step + 1;
    while d <= cap + 1 {
        w.insert(d as u32, Count::one())?;
        d += step;
    }
    Ok(w)
}

/// Wedge of spheres equivalent to `X ∧ Y` when `X` and `Y` have reduced
/// homology series `a` and `b` and at least one of them is a suspension.
pub fn smash_desuspendables(a: &Series, b: &Series) -> Result<SphereWedge> {
    if !a.coeff(0).is_zero() || !b.coeff(0).is_zero() {
        return Err(Error::Domain(
            "smash_desuspendables: series must be reduced (zero constant term)".into(),
        ));
    }
    SphereWedge::from_reduced_series(&a.mul(b)?)
}

/// `J ∨ (J ∧ X)`, the wedge form of `X ⋉ J`, where `X` has factor list
/// `q_factors`.
pub fn half_smash_split(q_factors: &FactorList, j: &SphereWedge, cap: usize) -> Result<SphereWedge> {
    let q = factor_series(&q_factors.with_cap(cap)?)?;
    let q_reduced = q.sub(&Series::one(cap))?;
    let smash = smash_desuspendables(&j.reduced_homology_series(cap), &q_reduced)?;
    Ok(j.truncate(cap as u32).union(&smash))
}

/// Poincaré series of the product: `S^1 ↦ 1 + t`, `S^d ↦ 1 + t^d`,
/// `ΩS^d ↦ Σ_k t^{k(d-1)}`.
pub fn factor_series(f: &FactorList) -> Result<Series> {
    let cap = f.cap;
    let mut s = loop_factor_series(f)?;
    if f.circles > 0 {
        let circle = Series::from_coeffs(cap, [BigInt::one(), BigInt::one()]);
        s = s.mul(&power(&circle, &Count::from(f.circles))?)?;
    }
    for (&d, c) in &f.spheres {
        let mut sphere = Series::one(cap);
        sphere.set_coeff(d as usize, BigInt::one());
        s = s.mul(&power(&sphere, c)?)?;
    }
    Ok(s)
}

impl FactorList {
    /// Reinterprets the list at another cap. Raising the cap is only
    /// possible when nothing was dropped.
    pub fn with_cap(&self, cap: usize) -> Result<FactorList> {
        if cap > self.cap && self.truncated {
            return Err(Error::Usage(format!(
                "cannot raise the cap of a truncated factor list from {} to {cap}",
                self.cap
            )));
        }
        let mut out = FactorList::empty(cap);
        out.truncated = self.truncated;
        out.add_circles(self.circles);
        for (&d, c) in &self.spheres {
            out.add_sphere(d, c.clone());
        }
        for (&d, c) in &self.loop_spheres {
            out.add_loop_sphere(d, c.clone());
        }
        Ok(out)
    }
}

/// Normal form of a decomposition expression: a product of circles, odd
/// spheres and loops on spheres, exact through degree `cap`.
///
/// Accepted grammar (after canonicalization): products of `S^1`, odd
/// spheres, and loops; loops of spheres, products, and anything that
/// evaluates to a wedge of spheres (wedges, suspensions of loop products,
/// smashes with a wedge factor).
pub fn normal_form(e: &SpaceExpr, cap: usize) -> Result<FactorList> {
    e.validate()?;
    factors(&e.canonicalize(), cap)
}

fn unsupported(e: &SpaceExpr) -> Error {
    Error::Unsupported {
        subterm: e.to_string(),
    }
}

fn factors(e: &SpaceExpr, cap: usize) -> Result<FactorList> {
    let mut out = FactorList::empty(cap);
    match e {
        SpaceExpr::Point => {}
        SpaceExpr::Sphere(1) => out.add_circles(1),
        SpaceExpr::Sphere(d) if d % 2 == 1 => out.add_sphere(*d, Count::one()),
        SpaceExpr::Product(cs) => {
            for c in cs {
                out.merge(&factors(c, cap)?)?;
            }
        }
        SpaceExpr::Loop(inner) => out = loop_factors(inner, cap)?,
        _ => return Err(unsupported(e)),
    }
    Ok(out)
}

fn loop_factors(inner: &SpaceExpr, cap: usize) -> Result<FactorList> {
    let mut out = FactorList::empty(cap);
    match inner {
        SpaceExpr::Point => {}
        SpaceExpr::Sphere(1) => return Err(unsupported(&SpaceExpr::loop_of(inner.clone()))),
        SpaceExpr::Sphere(d @ (4 | 8)) => {
            out.add_sphere(d - 1, Count::one());
            out.add_loop_sphere(2 * d - 1, Count::one());
        }
        SpaceExpr::Sphere(d) => out.add_loop_sphere(*d, Count::one()),
        SpaceExpr::Product(cs) => {
            for c in cs {
                out.merge(&loop_factors(c, cap)?)?;
            }
        }
        _ => {
            let (w, truncated) = wedge_of(inner, cap).map_err(|err| match err {
                Error::Unsupported { .. } => unsupported(&SpaceExpr::loop_of(inner.clone())),
                other => other,
            })?;
            out = hilton_milnor(&w, cap)?;
            out.truncated |= truncated;
        }
    }
    Ok(out)
}

/// Evaluates a suspension-type expression to a wedge of spheres, keeping
/// summands up to dimension `cap + 1` (those are the ones whose loops
/// affect homology through degree `cap`). The flag reports whether
/// summands were dropped.
fn wedge_of(e: &SpaceExpr, cap: usize) -> Result<(SphereWedge, bool)> {
    let top = cap as u32 + 1;
    match e {
        SpaceExpr::Point => Ok((SphereWedge::point(), false)),
        SpaceExpr::Sphere(d) if *d >= 2 => {
            let w = SphereWedge::from_pairs([(*d, 1u32)])?;
            Ok((w.truncate(top), *d > top))
        }
        SpaceExpr::Wedge(cs) => {
            let mut w = SphereWedge::point();
            let mut truncated = false;
            for c in cs {
                let (cw, ct) = wedge_of(c, cap)?;
                w = w.union(&cw);
                truncated |= ct;
            }
            Ok((w, truncated))
        }
        SpaceExpr::Suspension(inner) => {
            if let SpaceExpr::Loop(s) = inner.as_ref() {
                if let SpaceExpr::Sphere(s) = s.as_ref() {
                    if *s >= 2 {
                        return Ok((james_split(*s, cap)?, true));
                    }
                }
            }
            let (series, truncated) = reduced_series_of(inner, cap + 1)?;
            let w = SphereWedge::from_reduced_series(&series.shift(1))?;
            Ok((w.truncate(top), truncated))
        }
        SpaceExpr::Smash(cs) => {
            // at least one factor must already be a wedge of spheres
            let anchor = cs
                .iter()
                .position(|c| wedge_of(c, cap).is_ok())
                .ok_or_else(|| unsupported(e))?;
            let mut truncated = false;
            let mut acc: Option<Series> = None;
            for (i, c) in cs.iter().enumerate() {
                let (series, t) = if i == anchor {
                    let (w, t) = wedge_of(c, cap)?;
                    (w.reduced_homology_series(cap + 1), t)
                } else {
                    reduced_series_of(c, cap + 1)?
                };
                truncated |= t;
                acc = Some(match acc {
                    None => series,
                    Some(prev) => {
                        let w = smash_desuspendables(&prev, &series)?;
                        w.reduced_homology_series(cap + 1)
                    }
                });
            }
            let series = acc.expect("smash has children");
            let w = SphereWedge::from_reduced_series(&series)?;
            // an infinite-homology factor smashed with a nontrivial wedge is infinite
            let infinite = cs.iter().any(|c| !matches!(c, SpaceExpr::Sphere(_) | SpaceExpr::Wedge(_)))
                && !w.is_point();
            Ok((w.truncate(top), truncated || infinite))
        }
        _ => Err(unsupported(e)),
    }
}

/// Reduced homology series of a space that is either a wedge of spheres or
/// a product of circles, spheres and loops on spheres.
fn reduced_series_of(e: &SpaceExpr, cap: usize) -> Result<(Series, bool)> {
    if let Ok((w, t)) = wedge_of(e, cap) {
        return Ok((w.reduced_homology_series(cap), t));
    }
    let f = factors(e, cap)?;
    let s = factor_series(&f)?;
    let reduced = s.sub(&Series::one(cap))?;
    Ok((reduced, f.truncated || !f.loop_spheres.is_empty()))
}
