//! Unimodular symmetric forms and the unit-pairing witness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde_json::Value;

use crate::error::{Error, Result};

/// Symmetric integer matrix with determinant ±1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionForm {
    entries: Vec<Vec<BigInt>>,
}

impl IntersectionForm {
    pub fn new(entries: Vec<Vec<BigInt>>) -> Result<Self> {
        let k = entries.len();
        if entries.iter().any(|row| row.len() != k) {
            return Err(Error::Validation("intersection form must be square".into()));
        }
        let asymmetric = (0..k).flat_map(|i| (0..i).map(move |j| (i, j))).find(|&(i, j)| entries[i][j] != entries[j][i]);
        if let Some((i, j)) = asymmetric {
            return Err(Error::Validation(format!(
                "intersection form is not symmetric at ({i},{j})"
            )));
        }
        let det = determinant(&entries);
        if det.abs() != BigInt::one() {
            return Err(Error::Validation(format!(
                "intersection form is not unimodular (determinant {det})"
            )));
        }
        Ok(IntersectionForm { entries })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect())
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|r| Value::Array(r.iter().map(crate::json::exact_int).collect()))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Validation("intersection_form must be an array of integer arrays".into());
        let rows = v.as_array().ok_or_else(bad)?;
        let mut entries = Vec::with_capacity(rows.len());
        for row in rows {
            let mut out = Vec::new();
            for c in row.as_array().ok_or_else(bad)? {
                let n = match c {
                    Value::Number(n) => n.as_i64().map(BigInt::from),
                    Value::String(s) => s.parse().ok(),
                    _ => None,
                };
                out.push(n.ok_or_else(bad)?);
            }
            entries.push(out);
        }
        Self::new(entries)
    }

    /// A random form equivalent to a diagonal or hyperbolic one:
    /// `Uᵀ B U` with `U` a random product of elementary matrices.
    pub fn random(k: usize, rng: &mut impl Rng) -> Self {
        let mut b = vec![vec![BigInt::zero(); k]; k];
        let mut i = 0;
        while i < k {
            if i + 1 < k && rng.gen_bool(0.4) {
                b[i][i + 1] = BigInt::one();
                b[i + 1][i] = BigInt::one();
                i += 2;
            } else {
                b[i][i] = if rng.gen_bool(0.5) { BigInt::one() } else { -BigInt::one() };
                i += 1;
            }
        }
        // congruence by elementary column operations col_j += c * col_i
        // together with the matching row operation
        if k >= 2 {
            for _ in 0..3 * k {
                let i = rng.gen_range(0..k);
                let mut j = rng.gen_range(0..k - 1);
                if j >= i {
                    j += 1;
                }
                let c = BigInt::from(rng.gen_range(-2i64..=2));
                for row in b.iter_mut() {
                    let add = &c * &row[i];
                    row[j] += add;
                }
                let row_i = b[i].clone();
                for (x, y) in b[j].iter_mut().zip(row_i) {
                    *x += &c * y;
                }
            }
        }
        IntersectionForm::new(b).expect("congruent to a unimodular form")
    }
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Integer vector `w` with `⟨row_k, w⟩ = 1` for the last row of the form,
/// by folding extended gcds across the row.
pub fn lpd_normalize(c: &IntersectionForm) -> Result<Vec<BigInt>> {
    let k = c.rank();
    if k == 0 {
        return Err(Error::Validation("lpd_normalize: empty form".into()));
    }
    let row = &c.entries()[k - 1];
    let mut w = vec![BigInt::zero(); k];
    let mut g = BigInt::zero();
    for (j, r) in row.iter().enumerate() {
        let e = g.extended_gcd(r);
        for x in w.iter_mut() {
            *x *= &e.x;
        }
        w[j] = e.y;
        g = e.gcd;
    }
    if g.is_negative() {
        w.iter_mut().for_each(|x| *x = -x.clone());
        g = -g;
    }
    if !g.is_one() {
        return Err(Error::Validation(format!("last row has content {g}, form is not unimodular")));
    }
    let dot: BigInt = row.iter().zip(&w).map(|(a, b)| a * b).sum();
    if !dot.is_one() {
        return Err(Error::Oracle(format!("lpd witness pairs to {dot}, not 1")));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn witness_examples() {
        let h = IntersectionForm::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(lpd_normalize(&h).unwrap(), ints(&[1, 0]));
        let p = IntersectionForm::from_i64(&[&[1]]).unwrap();
        assert_eq!(lpd_normalize(&p).unwrap(), ints(&[1]));
        let f = IntersectionForm::from_i64(&[&[2, 1], &[1, 1]]).unwrap();
        assert_eq!(lpd_normalize(&f).unwrap(), ints(&[0, 1]));
        let m = IntersectionForm::from_i64(&[&[-1]]).unwrap();
        assert_eq!(lpd_normalize(&m).unwrap(), ints(&[-1]));
    }

    #[test]
    fn rejects_bad_forms() {
        assert!(IntersectionForm::from_i64(&[&[2]]).is_err());
        assert!(IntersectionForm::from_i64(&[&[0, 1], &[2, 0]]).is_err());
        assert!(IntersectionForm::from_i64(&[&[1, 2]]).is_err());
        assert!(IntersectionForm::from_i64(&[&[1, 1], &[1, 1]]).is_err());
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[ints(&[0, 1]), ints(&[1, 0])]), BigInt::from(-1));
        assert_eq!(determinant(&[ints(&[2, 1, 0]), ints(&[1, 2, 1]), ints(&[0, 1, 2])]), BigInt::from(4));
        assert_eq!(determinant(&[]), BigInt::one());
    }

    #[test]
    fn random_forms_are_unimodular() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in 1..=8 {
            for _ in 0..20 {
                let f = IntersectionForm::random(k, &mut rng);
                assert_eq!(f.rank(), k);
                let w = lpd_normalize(&f).unwrap();
                assert_eq!(w.len(), k);
            }
        }
    }
}
