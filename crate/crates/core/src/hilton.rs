//! Hilton–Milnor expansion of the loops on a wedge of spheres.
//!
//! `Ω(S^{n_1} v ... v S^{n_k})` splits as a weak product of loops on
//! spheres, one factor `ΩS^{w+1}` for each Lyndon word of weight `w` over
//! an alphabet whose letter `j` has weight `n_j - 1`. Only the weights
//! matter downstream, so the expansion is recorded as counts per degree.
//!
//! Counting is done two ways: [`lyndon_multiplicities`] enumerates words
//! (falling back to an aperiodic-necklace count once the enumeration would
//! be astronomically large), while [`witt_counts`] solves the product
//! identity `∏ (1 - t^d)^{-L_d} = 1 / (1 - Σ t^{w_j})` degree by degree.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expr::SphereWedge;
use crate::json;
use crate::series::{loop_sphere_series, TruncatedSeries};
use crate::{Count, Series};

/// Word enumeration is used while the number of words of weight at most the
/// cap stays below this bound.
pub const ENUMERATION_BUDGET: u64 = 2_000_000;

/// Letters grouped by weight: weight → number of letters with that weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedAlphabet {
    classes: BTreeMap<u32, Count>,
}

impl WeightedAlphabet {
    pub fn new(weights: &[u32]) -> Result<Self> {
        let mut classes: BTreeMap<u32, Count> = BTreeMap::new();
        for &w in weights {
            if w == 0 {
                return Err(Error::Validation("letter weights must be >= 1".into()));
            }
            *classes.entry(w).or_default() += 1u32;
        }
        if classes.is_empty() {
            return Err(Error::Validation("alphabet must be nonempty".into()));
        }
        Ok(WeightedAlphabet { classes })
    }

    /// Alphabet of a sphere wedge: one letter of weight `d - 1` per `S^d`.
    pub fn from_wedge(w: &SphereWedge) -> Result<Self> {
        let classes: BTreeMap<u32, Count> = w.iter().map(|(d, c)| (d - 1, c.clone())).collect();
        if classes.is_empty() {
            return Err(Error::Validation("alphabet must be nonempty".into()));
        }
        Ok(WeightedAlphabet { classes })
    }

    pub fn classes(&self) -> &BTreeMap<u32, Count> {
        &self.classes
    }

    pub fn size(&self) -> Count {
        self.classes.values().sum()
    }

    /// Individual letter weights in nondecreasing order, if the alphabet is
    /// small enough to list.
    pub fn weights(&self) -> Option<Vec<u32>> {
        let mut out = Vec::new();
        for (&w, c) in &self.classes {
            let n = c.to_usize().filter(|&n| n <= 1 << 16)?;
            out.extend(std::iter::repeat_n(w, n));
        }
        Some(out)
    }

    /// `Σ_j t^{w_j}`.
    fn letter_series(&self, cap: usize) -> Series {
        let mut s = Series::zero(cap);
        for (&w, c) in &self.classes {
            s.set_coeff(w as usize, BigInt::from(c.clone()));
        }
        s
    }

    /// Number of words of weight at most `cap`, saturating at `u64::MAX`.
    fn word_count_estimate(&self, cap: usize) -> u64 {
        // words of weight d: W_d = Σ_j W_{d - w_j}
        let mut words = vec![0u64; cap + 1];
        words[0] = 1;
        let mut total = 0u64;
        for d in 1..=cap {
            let mut acc = 0u64;
            for (&w, c) in &self.classes {
                let w = w as usize;
                if w <= d {
                    let c = c.to_u64().unwrap_or(u64::MAX);
                    acc = acc.saturating_add(c.saturating_mul(words[d - w]));
                }
            }
            words[d] = acc;
            total = total.saturating_add(acc);
        }
        total
    }
}

/// A product of circles, spheres and loops on spheres, recorded up to the
/// degree where it still affects homology.
///
/// `ΩS^d` is kept iff `d - 1 <= cap` and a plain `S^d` iff `d <= cap`.
/// `truncated` is set whenever the recorded list is not the whole product:
/// the expansion was infinite or some factor lay entirely above the cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorList {
    pub circles: u32,
    pub spheres: BTreeMap<u32, Count>,
    pub loop_spheres: BTreeMap<u32, Count>,
    pub cap: usize,
    pub truncated: bool,
}

impl FactorList {
    /// The point (empty product).
    pub fn empty(cap: usize) -> Self {
        FactorList {
            circles: 0,
            spheres: BTreeMap::new(),
            loop_spheres: BTreeMap::new(),
            cap,
            truncated: false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.circles == 0 && self.spheres.is_empty() && self.loop_spheres.is_empty()
    }

    pub fn add_circles(&mut self, n: u32) {
        self.circles += n;
    }

    pub fn add_sphere(&mut self, d: u32, count: Count) {
        if count.is_zero() {
            return;
        }
        if d as usize > self.cap {
            self.truncated = true;
        } else {
            *self.spheres.entry(d).or_default() += count;
        }
    }

    pub fn add_loop_sphere(&mut self, d: u32, count: Count) {
        if count.is_zero() {
            return;
        }
        debug_assert!(d >= 2);
        if (d - 1) as usize > self.cap {
            self.truncated = true;
        } else {
            *self.loop_spheres.entry(d).or_default() += count;
        }
    }

    /// Product of two factor lists.
    pub fn merge(&mut self, other: &FactorList) -> Result<()> {
        if self.cap != other.cap {
            return Err(Error::Usage(format!(
                "factor lists with different caps ({} vs {})",
                self.cap, other.cap
            )));
        }
        self.circles += other.circles;
        for (&d, c) in &other.spheres {
            *self.spheres.entry(d).or_default() += c;
        }
        for (&d, c) in &other.loop_spheres {
            *self.loop_spheres.entry(d).or_default() += c;
        }
        self.truncated |= other.truncated;
        Ok(())
    }

    pub fn loop_sphere_count(&self, d: u32) -> Count {
        self.loop_spheres.get(&d).cloned().unwrap_or_default()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "circles": self.circles,
            "spheres": json::count_map(&self.spheres),
            "loop_spheres": json::count_map(&self.loop_spheres),
            "cap": self.cap,
            "truncated": self.truncated,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Validation(format!("FactorList JSON: {what}"));
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        let map = |key: &str| -> Result<BTreeMap<u32, Count>> {
            let mut out = BTreeMap::new();
            if let Some(m) = obj.get(key) {
                for (k, c) in m.as_object().ok_or_else(|| bad(key))? {
                    let d: u32 = k.parse().map_err(|_| bad(key))?;
                    out.insert(d, json::parse_uint(c).ok_or_else(|| bad(key))?);
                }
            }
            Ok(out)
        };
        Ok(FactorList {
            circles: obj.get("circles").and_then(Value::as_u64).unwrap_or(0) as u32,
            spheres: map("spheres")?,
            loop_spheres: map("loop_spheres")?,
            cap: obj
                .get("cap")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("missing cap"))? as usize,
            truncated: obj.get("truncated").and_then(Value::as_bool).unwrap_or(false),
        })
    }
}

impl std::fmt::Display for FactorList {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        let pow = |base: String, c: &Count| {
            if c.is_one() {
                base
            } else {
                format!("({base})^{c}")
            }
        };
        if self.circles > 0 {
            parts.push(pow("S^1".into(), &Count::from(self.circles)));
        }
        for (d, c) in &self.spheres {
            parts.push(pow(format!("S^{d}"), c));
        }
        for (d, c) in &self.loop_spheres {
            parts.push(pow(format!("ΩS^{d}"), c));
        }
        if parts.is_empty() {
            parts.push("*".into());
        }
        write!(f, "{}", parts.join(" x "))?;
        if self.truncated {
            write!(f, " x ... (exact through degree {})", self.cap)?;
        }
        Ok(())
    }
}

/// Visits every Lyndon word of weight at most `cap` over the listed letters
/// (letter `i` has weight `weights[i]`, sorted nondecreasing), calling
/// `visit(word, weight)`.
///
/// Walks the tree of prenecklaces in lexicographic order: extending a
/// prenecklace `a_1..a_{t-1}` with longest Lyndon prefix length `p` by
/// `a_{t-p}` keeps `p`, by a larger letter makes the whole word Lyndon.
/// A prenecklace is Lyndon exactly when `p` equals its length. Weights only
/// grow along the tree, so branches past the cap are pruned.
pub fn for_each_lyndon_word(weights: &[u32], cap: usize, mut visit: impl FnMut(&[usize], usize)) {
    fn walk(
        word: &mut Vec<usize>,
        period: usize,
        weight: usize,
        weights: &[u32],
        cap: usize,
        visit: &mut dyn FnMut(&[usize], usize),
    ) {
        let t = word.len();
        if t > 0 && period == t {
            visit(word, weight);
        }
        let first = if t == 0 { 0 } else { word[t - period] };
        for letter in first..weights.len() {
            let w = weight + weights[letter] as usize;
            if w > cap {
                // weights are sorted, later letters are no lighter
                break;
            }
            let next_period = if t > 0 && letter == word[t - period] {
                period
            } else {
                t + 1
            };
            word.push(letter);
            walk(word, next_period, w, weights, cap, visit);
            word.pop();
        }
    }
    let mut sorted = weights.to_vec();
    sorted.sort_unstable();
    walk(&mut Vec::new(), 0, 0, &sorted, cap, &mut visit);
}

/// Counts Lyndon words by enumerating them.
pub fn enumerate_lyndon_counts(weights: &[u32], cap: usize) -> BTreeMap<usize, Count> {
    let mut counts = vec![0u64; cap + 1];
    for_each_lyndon_word(weights, cap, |_, w| counts[w] += 1);
    counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(d, c)| (d, Count::from(c)))
        .collect()
}

/// Counts Lyndon words by weight through primitive necklaces.
///
/// With `N(k, d)` the number of words of length `k` and weight `d`, the
/// aperiodic ones number `A(k, d) = Σ_{e | gcd(k, d)} μ(e) N(k/e, d/e)`;
/// each aperiodic necklace has `k` distinct rotations, exactly one Lyndon.
pub fn necklace_lyndon_counts(alphabet: &WeightedAlphabet, cap: usize) -> BTreeMap<usize, Count> {
    // words[k][d]
    let mut words = vec![vec![BigUint::zero(); cap + 1]; cap + 1];
    words[0][0] = BigUint::one();
    for k in 1..=cap {
        for d in 1..=cap {
            let mut acc = BigUint::zero();
            for (&w, c) in alphabet.classes() {
                let w = w as usize;
                if w <= d && !words[k - 1][d - w].is_zero() {
                    acc += c * &words[k - 1][d - w];
                }
            }
            words[k][d] = acc;
        }
    }
    let mu = mobius_table(cap);
    let mut out = BTreeMap::new();
    for d in 1..=cap {
        let mut total = BigInt::zero();
        for k in 1..=d {
            let g = k.gcd(&d);
            let mut aperiodic = BigInt::zero();
            for e in (1..=g).filter(|e| g % e == 0) {
                match mu[e] {
                    0 => {}
                    s => aperiodic += BigInt::from(words[k / e][d / e].clone()) * s,
                }
            }
            let (q, r) = aperiodic.div_rem(&BigInt::from(k));
            debug_assert!(r.is_zero());
            total += q;
        }
        if total.is_positive() {
            out.insert(d, total.to_biguint().expect("positive"));
        }
    }
    out
}

fn mobius_table(n: usize) -> Vec<i32> {
    let mut mu = vec![1i32; n + 1];
    let mut is_composite = vec![false; n + 1];
    for p in 2..=n {
        if is_composite[p] {
            continue;
        }
        for q in (p..=n).step_by(p) {
            if q > p {
                is_composite[q] = true;
            }
            mu[q] = -mu[q];
        }
        let sq = p * p;
        for q in (sq..=n).step_by(sq) {
            mu[q] = 0;
        }
    }
    mu
}

/// Lyndon words over the alphabet counted by weight, for weights `1..=cap`.
pub fn lyndon_multiplicities(alphabet: &WeightedAlphabet, cap: usize) -> BTreeMap<usize, Count> {
    if alphabet.word_count_estimate(cap) <= ENUMERATION_BUDGET {
        if let Some(weights) = alphabet.weights() {
            return enumerate_lyndon_counts(&weights, cap);
        }
    }
    necklace_lyndon_counts(alphabet, cap)
}

/// Solves `∏_d (1 - t^d)^{-L_d} = 1 / (1 - Σ_j t^{w_j})` for `L_1..L_cap`.
pub fn witt_counts(alphabet: &WeightedAlphabet, cap: usize) -> BTreeMap<usize, Count> {
    let target = crate::series::tensor_algebra_series(&alphabet.letter_series(cap))
        .expect("letter series has no constant term");
    let mut product = Series::one(cap);
    let mut out = BTreeMap::new();
    for d in 1..=cap {
        let l = target.coeff(d) - product.coeff(d);
        assert!(!l.is_negative(), "negative Lyndon count at degree {d}");
        if l.is_zero() {
            continue;
        }
        product = product
            .mul(&inverse_power_of_one_minus(d, &l, cap))
            .expect("same cap");
        out.insert(d, l.to_biguint().expect("nonnegative"));
    }
    out
}

/// `(1 - t^d)^{-n} = Σ_i C(n + i - 1, i) t^{d i}`.
pub(crate) fn inverse_power_of_one_minus(d: usize, n: &BigInt, cap: usize) -> Series {
    let mut s = Series::zero(cap);
    let mut c = BigInt::one();
    let mut i = 0usize;
    while d * i <= cap {
        s.set_coeff(d * i, c.clone());
        i += 1;
        c = c * (n + BigInt::from(i - 1)) / BigInt::from(i);
    }
    s
}

/// Hilton–Milnor factors of `ΩW` that affect homology through degree `cap`.
pub fn hilton_milnor(w: &SphereWedge, cap: usize) -> Result<FactorList> {
    let mut out = FactorList::empty(cap);
    if w.is_point() {
        return Ok(out);
    }
    if cap < 1 {
        return Err(Error::Domain("hilton_milnor: cap must be >= 1".into()));
    }
    let alphabet = WeightedAlphabet::from_wedge(w)?;
    for (d, c) in lyndon_multiplicities(&alphabet, cap) {
        out.add_loop_sphere(d as u32 + 1, c);
    }
    // one summand gives the finite product ΩS^n; two or more never terminate
    if w.size() > Count::one() {
        out.truncated = true;
    } else if let Some(d) = w.min_dim() {
        if (d - 1) as usize > cap {
            out.truncated = true;
        }
    }
    Ok(out)
}

/// Product of `loop_sphere_series(d)` over the loop-sphere factors only.
pub(crate) fn loop_factor_series(f: &FactorList) -> Result<Series> {
    let mut s = Series::one(f.cap);
    for (&d, c) in &f.loop_spheres {
        let base: Series = loop_sphere_series(d, f.cap)?;
        s = s.mul(&power(&base, c)?)?;
    }
    Ok(s)
}

/// `base^e` for a series with unit constant term, by repeated squaring.
pub(crate) fn power(base: &Series, e: &Count) -> Result<Series> {
    let mut result = TruncatedSeries::one(base.cap());
    let mut sq = base.clone();
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            result = result.mul(&sq)?;
        }
        if i + 1 < bits {
            sq = sq.mul(&sq)?;
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(pairs: &[(usize, u64)]) -> BTreeMap<usize, Count> {
        pairs.iter().map(|&(d, c)| (d, Count::from(c))).collect()
    }

    fn alpha(w: &[u32]) -> WeightedAlphabet {
        WeightedAlphabet::new(w).unwrap()
    }

    #[test]
    fn binary_alphabet() {
        let expected = counts(&[(1, 2), (2, 1), (3, 2), (4, 3), (5, 6)]);
        assert_eq!(lyndon_multiplicities(&alpha(&[1, 1]), 5), expected);
        assert_eq!(witt_counts(&alpha(&[1, 1]), 5), expected);
        assert_eq!(necklace_lyndon_counts(&alpha(&[1, 1]), 5), expected);
        // (2^5 - 2) / 5 aperiodic necklaces of length 5
        assert_eq!(expected[&5], Count::from((32u64 - 2) / 5));
    }

    #[test]
    fn one_letter() {
        assert_eq!(lyndon_multiplicities(&alpha(&[4]), 12), counts(&[(4, 1)]));
        assert_eq!(witt_counts(&alpha(&[1]), 5), counts(&[(1, 1)]));
    }

    #[test]
    fn mixed_weights() {
        // a; b; ab; aab
        let expected = counts(&[(1, 1), (2, 1), (3, 1), (4, 1)]);
        assert_eq!(lyndon_multiplicities(&alpha(&[1, 2]), 4), expected);
        let mut words = Vec::new();
        for_each_lyndon_word(&[1, 2], 4, |w, _| words.push(w.to_vec()));
        assert_eq!(words, vec![vec![0], vec![0, 0, 1], vec![0, 1], vec![1]]);
    }

    #[test]
    fn ternary_witt() {
        assert_eq!(
            witt_counts(&alpha(&[1, 1, 1]), 3),
            counts(&[(1, 3), (2, 3), (3, 8)])
        );
    }

    #[test]
    fn enumeration_matches_necklaces() {
        for w in [&[1u32, 1, 2][..], &[2, 3], &[1, 1, 1, 4], &[3, 3, 3]] {
            let a = alpha(w);
            assert_eq!(enumerate_lyndon_counts(w, 12), necklace_lyndon_counts(&a, 12), "{w:?}");
        }
    }

    #[test]
    fn mobius() {
        assert_eq!(&mobius_table(12)[1..], &[1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn hilton_milnor_examples() {
        let f = hilton_milnor(&SphereWedge::from_pairs([(2, 2u32)]).unwrap(), 5).unwrap();
        assert_eq!(f.loop_spheres, counts(&[(2, 2), (3, 1), (4, 2), (5, 3), (6, 6)]).into_iter().map(|(d, c)| (d as u32, c)).collect());
        assert!(f.truncated);

        let f = hilton_milnor(&SphereWedge::from_pairs([(7, 1u32)]).unwrap(), 6).unwrap();
        assert_eq!(f.loop_spheres.len(), 1);
        assert_eq!(f.loop_sphere_count(7), Count::one());
        assert!(!f.truncated);

        let f = hilton_milnor(&SphereWedge::from_pairs([(2, 1u32), (3, 1)]).unwrap(), 4).unwrap();
        let dims: Vec<_> = f.loop_spheres.keys().copied().collect();
        assert_eq!(dims, vec![2, 3, 4, 5]);
        assert!(f.loop_spheres.values().all(|c| c.is_one()));
        assert!(f.truncated);

        assert_eq!(hilton_milnor(&SphereWedge::point(), 5).unwrap(), FactorList::empty(5));
    }

    #[test]
    fn huge_multiplicities_stay_exact() {
        let w = SphereWedge::from_pairs([(2, 40u32)]).unwrap();
        let f = hilton_milnor(&w, 30).unwrap();
        let top = f.loop_sphere_count(31);
        assert!(top.bits() > 64);
        let a = WeightedAlphabet::from_wedge(&w).unwrap();
        assert_eq!(witt_counts(&a, 30)[&30], top);
    }

    #[test]
    fn factor_list_json() {
        let f = hilton_milnor(&SphereWedge::from_pairs([(2, 1u32), (3, 1)]).unwrap(), 25).unwrap();
        let v = f.to_json();
        assert_eq!(v["loop_spheres"]["2"], 1);
        assert_eq!(v["cap"], 25);
        assert_eq!(v["truncated"], true);
        assert_eq!(FactorList::from_json(&v).unwrap(), f);
    }

    #[test]
    fn power_by_squaring() {
        let base: Series = loop_sphere_series(2, 6).unwrap();
        let p = power(&base, &Count::from(3u32)).unwrap();
        let direct = base.mul(&base).unwrap().mul(&base).unwrap();
        assert_eq!(p, direct);
    }
}
