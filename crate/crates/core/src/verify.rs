//! Property suites behind `loopcalc verify`.
//!
//! Each check runs a battery of instances (exhaustive where the space is
//! small, seeded-random otherwise) and records the first counterexample.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::decompose::{
    decompose, decompose_config, decompose_four_manifold, decompose_general, loop_equivalent, ConnSumSpec,
    FourManifoldSpec, ManifoldSpec, PDSpec, WallSpec,
};
use crate::error::{Error, Result};
use crate::expr::{SpaceExpr, SphereWedge};
use crate::hilton::{hilton_milnor, lyndon_multiplicities, witt_counts, WeightedAlphabet};
use crate::homotopy::{free_lie_ranks, rational_ranks};
use crate::normalize::{factor_series, james_split, normal_form};
use crate::series::{loop_sphere_series, polynomial_two_var_series, tensor_algebra_series};
use crate::ss_oracle::{p4_e_infinity, p4_prediction, qhlgy_series_check, z_construct, IntersectionForm, SSInput};
use crate::{Count, Series};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Series,
    Hm,
    Ss,
    Ranks,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "series" => Ok(Suite::Series),
            "hm" => Ok(Suite::Hm),
            "ss" => Ok(Suite::Ss),
            "ranks" => Ok(Suite::Ranks),
            "all" => Ok(Suite::All),
            other => Err(Error::Usage(format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub check: String,
    pub instances: u64,
    pub failures: u64,
    pub seed: u64,
    pub first_counterexample: Option<String>,
}

impl CheckReport {
    fn new(check: &str, seed: u64) -> Self {
        CheckReport {
            check: check.to_string(),
            instances: 0,
            failures: 0,
            seed,
            first_counterexample: None,
        }
    }

    /// Records one instance; errors count as failures.
    fn record(&mut self, outcome: Result<bool>, describe: impl FnOnce() -> String) {
        self.instances += 1;
        let failure = match outcome {
            Ok(true) => return,
            Ok(false) => describe(),
            Err(e) => format!("{}: {e}", describe()),
        };
        self.failures += 1;
        self.first_counterexample.get_or_insert(failure);
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "instances": self.instances,
            "failures": self.failures,
            "seed": self.seed,
            "first_counterexample": self.first_counterexample,
        })
    }
}

pub fn run(suite: Suite, seed: u64) -> Vec<CheckReport> {
    match suite {
        Suite::Series => series_suite(seed),
        Suite::Hm => hm_suite(seed),
        Suite::Ss => ss_suite(seed),
        Suite::Ranks => ranks_suite(seed),
        Suite::All => [series_suite(seed), hm_suite(seed), ss_suite(seed), ranks_suite(seed)].concat(),
    }
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// All multisets of size `1..=max_size` drawn from `values`, as sorted vectors.
pub fn multisets(values: &[u32], max_size: usize) -> Vec<Vec<u32>> {
    fn go(values: &[u32], start: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for i in start..values.len() {
            cur.push(values[i]);
            go(values, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(values, 0, max_size, &mut Vec::new(), &mut out);
    out
}

pub fn wedge_of_dims(dims: &[u32]) -> SphereWedge {
    let mut w = SphereWedge::point();
    for &d in dims {
        w.insert(d, Count::from(1u32)).expect("dimensions >= 2");
    }
    w
}

fn random_series(rng: &mut impl Rng, cap: usize, constant: i64) -> Series {
    let mut s = Series::from_coeffs(cap, (0..=cap).map(|_| BigInt::from(rng.gen_range(-5i64..=5))));
    s.set_coeff(0, BigInt::from(constant));
    s
}

// ---------------------------------------------------------------- series

fn series_suite(seed: u64) -> Vec<CheckReport> {
    let cap = 30;
    let mut rng = rng_for(seed, 1);

    let mut ring = CheckReport::new("series.mul_commutative_associative", seed);
    let mut inverse = CheckReport::new("series.invert_two_sided", seed);
    let mut tensor = CheckReport::new("series.tensor_algebra_fixed_point", seed);
    for _ in 0..200 {
        let (a, b, c) = (random_series(&mut rng, cap, 3), random_series(&mut rng, cap, -2), random_series(&mut rng, cap, 1));
        ring.record(
            (|| Ok(a.mul(&b)? == b.mul(&a)? && a.mul(&b)?.mul(&c)? == a.mul(&b.mul(&c)?)?))(),
            || format!("a={a} b={b} c={c}"),
        );
        let constant = if rng.gen_bool(0.5) { 1 } else { -1 };
        let unit = random_series(&mut rng, cap, constant);
        inverse.record(
            (|| {
                let inv = unit.invert()?;
                Ok(unit.mul(&inv)? == Series::one(cap) && inv.mul(&unit)? == Series::one(cap))
            })(),
            || format!("a={unit}"),
        );
        let g = random_series(&mut rng, cap, 0);
        tensor.record(
            (|| {
                let t = tensor_algebra_series(&g)?;
                Ok(t == Series::one(cap).add(&g.mul(&t)?)?)
            })(),
            || format!("g={g}"),
        );
    }

    let mut loops = CheckReport::new("series.loop_sphere_inverse", seed);
    for m in 2..=32u32 {
        loops.record(
            (|| {
                let s: Series = loop_sphere_series(m, cap)?;
                let mut f = Series::one(cap);
                if (m as usize - 1) <= cap {
                    f.set_coeff(m as usize - 1, BigInt::from(-1));
                }
                Ok(s.mul(&f)? == Series::one(cap))
            })(),
            || format!("m={m}"),
        );
    }

    let mut james = CheckReport::new("series.james_suspension", seed);
    for s in 2..=6u32 {
        let cap = 25;
        james.record(
            (|| {
                let lhs = loop_sphere_series::<BigInt>(s, cap)?.sub(&Series::one(cap))?.shift(1);
                Ok(lhs == james_split(s, cap)?.reduced_homology_series(cap))
            })(),
            || format!("s={s}"),
        );
    }
    vec![ring, inverse, tensor, loops, james]
}

// ---------------------------------------------------------------- hm

pub fn lyndon_vs_witt(weights: &[u32], cap: usize) -> Result<bool> {
    let a = WeightedAlphabet::new(weights)?;
    Ok(lyndon_multiplicities(&a, cap) == witt_counts(&a, cap))
}

pub fn hm_series_identity(w: &SphereWedge, cap: usize) -> Result<bool> {
    let f = hilton_milnor(w, cap)?;
    Ok(factor_series(&f)? == tensor_algebra_series(&w.desuspended_series(cap))?)
}

fn hm_suite(seed: u64) -> Vec<CheckReport> {
    let mut exhaustive = CheckReport::new("hm.lyndon_vs_witt_exhaustive", seed);
    for weights in multisets(&[1, 2, 3, 4], 6) {
        exhaustive.record(lyndon_vs_witt(&weights, 20), || format!("weights={weights:?}"));
    }

    let mut random = CheckReport::new("hm.lyndon_vs_witt_random", seed);
    let mut rng = rng_for(seed, 2);
    for _ in 0..100 {
        let size = rng.gen_range(1..=8);
        let weights: Vec<u32> = (0..size).map(|_| rng.gen_range(1..=6)).collect();
        random.record(lyndon_vs_witt(&weights, 20), || format!("weights={weights:?}"));
    }

    let mut identity = CheckReport::new("hm.series_identity", seed);
    for dims in multisets(&[2, 3, 4, 5, 6], 5) {
        let w = wedge_of_dims(&dims);
        identity.record(hm_series_identity(&w, 25), || format!("wedge={w}"));
    }

    let mut canonical = CheckReport::new("hm.normal_form_canonical", seed);
    for _ in 0..100 {
        let dims: Vec<u32> = (0..rng.gen_range(1..=5)).map(|_| rng.gen_range(2..=6)).collect();
        let a = random_grouping(&dims, &mut rng);
        let mut shuffled = dims.clone();
        shuffled.shuffle(&mut rng);
        let b = random_grouping(&shuffled, &mut rng);
        canonical.record(
            (|| {
                let (ea, eb) = (SpaceExpr::loop_of(a.clone()), SpaceExpr::loop_of(b.clone()));
                Ok(ea.canonicalize() == eb.canonicalize() && normal_form(&ea, 15)? == normal_form(&eb, 15)?)
            })(),
            || format!("{a} vs {b}"),
        );
    }
    vec![exhaustive, random, identity, canonical]
}

/// A wedge of the given spheres with random nesting.
fn random_grouping(dims: &[u32], rng: &mut impl Rng) -> SpaceExpr {
    if dims.len() == 1 {
        return SpaceExpr::sphere(dims[0]);
    }
    let cut = rng.gen_range(1..dims.len());
    SpaceExpr::Wedge(vec![random_grouping(&dims[..cut], rng), random_grouping(&dims[cut..], rng)])
}

// ---------------------------------------------------------------- ss

/// `ΩP ≃ ΩQ × ΩF` two ways: normalizing the decomposition (route A), and
/// `series(ΩQ) · T(s⁻¹H̃(F))` with `H̃(F) = g · series(ΩQ)` (route B).
pub fn two_route(p: &PDSpec, cap: usize) -> Result<bool> {
    let route_a = factor_series(&normal_form(&decompose_general(p)?, cap)?)?;
    Ok(route_a == route_b(p, cap)?)
}

pub fn route_b(p: &PDSpec, cap: usize) -> Result<Series> {
    let q = polynomial_two_var_series(p.m - 1, p.n - p.m - 1, cap + 1)?;
    let fibre_reduced = p.j.reduced_homology_series(cap + 1).mul(&q)?;
    let generators = Series::from_coeffs(cap, fibre_reduced.coeffs().iter().skip(1).cloned());
    q.with_cap(cap).mul(&tensor_algebra_series(&generators)?)
}

/// The fibre series from the half-smash description agrees with the
/// replayed spectral sequence for the matching input.
pub fn half_smash_matches_p4(p: &PDSpec, cap: usize, rng: &mut impl Rng) -> Result<bool> {
    let mut degrees = vec![p.m];
    for (d, c) in p.j.iter() {
        let c: usize = c.try_into().map_err(|_| Error::Usage("J too large".into()))?;
        degrees.extend(std::iter::repeat_n(d, c));
    }
    degrees.push(p.n - p.m);
    let l = degrees.len();
    let mut c_col1: Vec<BigInt> = (0..l).map(|_| BigInt::from(rng.gen_range(-2i64..=2))).collect();
    let mut c_col_l: Vec<BigInt> = (0..l).map(|_| BigInt::from(rng.gen_range(-2i64..=2))).collect();
    c_col1[0] = BigInt::from(0);
    c_col1[l - 1] = BigInt::from(1);
    c_col_l[0] = BigInt::from(if (p.m * (p.n - p.m)) % 2 == 1 { -1 } else { 1 });
    c_col_l[l - 1] = BigInt::from(0);
    let input = SSInput {
        degrees,
        n: p.n,
        m: p.m,
        c_col1,
        c_col_l,
        cap,
    };
    let poly = polynomial_two_var_series(p.m - 1, p.n - p.m - 1, cap)?;
    let half_smash = Series::one(cap).add(&p.j.reduced_homology_series(cap).mul(&poly)?)?;
    Ok(p4_e_infinity(&input)?.series() == half_smash)
}

/// PD complexes with `m ≤ 4`, `n - m ≤ 6` and `J` of size at most 4.
pub fn pd_battery() -> Vec<PDSpec> {
    let mut out = Vec::new();
    for m in 2..=4u32 {
        for top in m..=6u32 {
            let dims: Vec<u32> = (m..=top).collect();
            let mut js = vec![Vec::new()];
            js.extend(multisets(&dims, 4));
            for j in js {
                out.push(PDSpec::new(m, m + top, wedge_of_dims(&j)).expect("valid by construction"));
            }
        }
    }
    out
}

fn ss_suite(seed: u64) -> Vec<CheckReport> {
    let mut rng = rng_for(seed, 3);
    let mut p4 = CheckReport::new("ss.p4_e_infinity", seed);
    for i in 0..200 {
        let input = SSInput::random(&mut rng, i % 2 == 1, 25);
        p4.record(
            (|| Ok(p4_e_infinity(&input)?.series() == p4_prediction(&input)?))(),
            || format!("{input:?}"),
        );
    }

    let mut forms = CheckReport::new("ss.z_form_independence", seed);
    for k in 1..=8usize {
        let reference = decompose_four_manifold(&FourManifoldSpec::new(k as u32));
        let mut first = None;
        for _ in 0..100 {
            let f = IntersectionForm::random(k, &mut rng);
            forms.record(
                (|| {
                    let z = z_construct(&f)?;
                    let same_z = first.get_or_insert_with(|| z.clone()) == &z;
                    let same_tree = decompose_four_manifold(&FourManifoldSpec::with_form(f.clone()))? == reference.clone()?;
                    Ok(same_z && same_tree)
                })(),
                || format!("form={}", f.to_json()),
            );
        }
    }

    let mut qh = CheckReport::new("ss.qhlgy_polynomial", seed);
    for m in 2..=8u32 {
        for top in m..=8u32 {
            qh.record(
                (|| Ok(qhlgy_series_check(m, m + top, 12)? == polynomial_two_var_series(m - 1, top - 1, 12)?))(),
                || format!("m={m} n={}", m + top),
            );
        }
    }

    let mut routes = CheckReport::new("ss.two_route_identity", seed);
    let mut ftype = CheckReport::new("ss.half_smash_vs_p4", seed);
    for p in pd_battery() {
        routes.record(two_route(&p, 25), || format!("m={} n={} J={}", p.m, p.n, p.j));
        ftype.record(half_smash_matches_p4(&p, 25, &mut rng), || format!("m={} n={} J={}", p.m, p.n, p.j));
    }

    let mut equiv = CheckReport::new("ss.loop_equivalence_vs_normal_form", seed);
    for (a, b) in equivalence_battery(&mut rng) {
        equiv.record(
            (|| {
                let same = normal_form(&decompose(&a)?, 30)? == normal_form(&decompose(&b)?, 30)?;
                Ok(loop_equivalent(&a, &b)? == same)
            })(),
            || format!("{} vs {}", a.to_json(), b.to_json()),
        );
    }

    let mut config = CheckReport::new("ss.config_monotone", seed);
    for base in config_battery() {
        config.record(config_monotone(&base, 5, 20), || {
            ManifoldSpec::ConnectedSum(base.clone()).to_json().to_string()
        });
    }

    vec![p4, forms, qh, routes, ftype, equiv, config]
}

/// Pairs of comparable specs: at least 50 per class.
pub fn equivalence_battery(rng: &mut impl Rng) -> Vec<(ManifoldSpec, ManifoldSpec)> {
    let mut out = Vec::new();
    for _ in 0..60 {
        let (a, b) = (rng.gen_range(0..=6), rng.gen_range(0..=6));
        out.push((
            ManifoldSpec::FourManifold(FourManifoldSpec::new(a)),
            ManifoldSpec::FourManifold(FourManifoldSpec::new(b)),
        ));
    }
    let walls = [3u32, 5, 6, 7];
    for _ in 0..60 {
        let n = *walls.choose(rng).expect("nonempty");
        let (a, b) = (rng.gen_range(2..=5), rng.gen_range(2..=5));
        out.push((ManifoldSpec::Wall(WallSpec { n, k: a }), ManifoldSpec::Wall(WallSpec { n, k: b })));
    }
    for _ in 0..60 {
        let n = rng.gen_range(4..=9u32);
        let mut side = || {
            let m = rng.gen_range(2..=n / 2);
            let dims: Vec<u32> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(m..=n - m)).collect();
            ManifoldSpec::ConnectedSum(ConnSumSpec {
                m,
                n,
                punctured_skeleton: wedge_of_dims(&dims),
            })
        };
        out.push((side(), side()));
    }
    out
}

pub fn config_battery() -> Vec<ConnSumSpec> {
    let mut out = Vec::new();
    for n in [5u32, 7, 9] {
        for m in 2..=n / 2 {
            for dims in [vec![], vec![m], vec![m, n - m]] {
                out.push(ConnSumSpec {
                    m,
                    n,
                    punctured_skeleton: wedge_of_dims(&dims),
                });
            }
        }
    }
    out
}

/// `decompose_config` has `k + 1` factors and its series grows with `k`.
pub fn config_monotone(base: &ConnSumSpec, max_points: u32, cap: usize) -> Result<bool> {
    let mut prev: Option<Series> = None;
    for k in 1..=max_points {
        let parts = decompose_config(base, k)?;
        if parts.len() != k as usize + 1 {
            return Ok(false);
        }
        let s = factor_series(&normal_form(&SpaceExpr::product(parts), cap)?)?;
        if let Some(p) = &prev {
            if p.coeffs().iter().zip(s.coeffs()).any(|(a, b)| a > b) {
                return Ok(false);
            }
        }
        prev = Some(s);
    }
    Ok(true)
}

// ---------------------------------------------------------------- ranks

pub fn ranks_match_free_lie(w: &SphereWedge, cap: usize) -> Result<bool> {
    let table = rational_ranks(&hilton_milnor(w, cap)?);
    let mut degrees = Vec::new();
    for (d, c) in w.iter() {
        let c: usize = c.try_into().map_err(|_| Error::Usage("wedge too large".into()))?;
        degrees.extend(std::iter::repeat_n(d - 1, c));
    }
    Ok(table.ranks == free_lie_ranks(&degrees, cap)?)
}

fn ranks_suite(seed: u64) -> Vec<CheckReport> {
    let cap = 20;
    let mut lie = CheckReport::new("ranks.free_lie_oracle", seed);
    let mut shift = CheckReport::new("ranks.base_shift", seed);
    for dims in multisets(&[2, 3, 4, 5], 4) {
        let w = wedge_of_dims(&dims);
        lie.record(ranks_match_free_lie(&w, cap), || format!("wedge={w}"));
        shift.record(
            (|| {
                let loops = rational_ranks(&hilton_milnor(&w, cap)?);
                let base = loops.to_base();
                Ok((1..=cap as u32 + 1).all(|q| base.rank(q) == loops.rank(q - 1)))
            })(),
            || format!("wedge={w}"),
        );
    }

    let mut classes = CheckReport::new("ranks.four_manifold_classification", seed);
    let mut rng = rng_for(seed, 4);
    let mut tables = BTreeMap::new();
    for k in 0..=8u32 {
        let plain = four_manifold_ranks(&FourManifoldSpec::new(k), 30);
        for _ in 0..5 {
            let spec = if k == 0 {
                FourManifoldSpec::new(0)
            } else {
                FourManifoldSpec::with_form(IntersectionForm::random(k as usize, &mut rng))
            };
            classes.record(
                (|| Ok(four_manifold_ranks(&spec, 30)? == plain.clone()?))(),
                || format!("k={k}"),
            );
        }
        if let Ok(t) = plain {
            tables.insert(k, t);
        }
    }
    let distinct = tables.values().collect::<std::collections::BTreeSet<_>>().len();
    classes.record(Ok(distinct == 9), || format!("only {distinct} distinct tables for k = 0..8"));
    vec![lie, shift, classes]
}

fn four_manifold_ranks(f: &FourManifoldSpec, cap: usize) -> Result<BTreeMap<u32, Count>> {
    Ok(rational_ranks(&normal_form(&decompose_four_manifold(f)?, cap)?).to_base().ranks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(&[1, 2, 3, 4], 6).len(), 209);
        assert_eq!(multisets(&[2, 3, 4, 5, 6], 5).len(), 251);
        assert_eq!(multisets(&[1, 2], 2), vec![vec![1], vec![1, 1], vec![1, 2], vec![2], vec![2, 2]]);
    }

    #[test]
    fn report_records_first_failure() {
        let mut r = CheckReport::new("x", 1);
        r.record(Ok(true), || unreachable!());
        r.record(Ok(false), || "a".into());
        r.record(Err(Error::Domain("boom".into())), || "b".into());
        assert_eq!((r.instances, r.failures), (3, 2));
        assert_eq!(r.first_counterexample.as_deref(), Some("a"));
    }

    #[test]
    fn series_suite_passes() {
        assert!(series_suite(5).iter().all(CheckReport::passed));
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!("hm".parse::<Suite>().unwrap(), Suite::Hm);
        assert!("nope".parse::<Suite>().is_err());
    }
}
