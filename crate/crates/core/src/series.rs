//! Truncated power series with exact coefficients.
//!
//! Every homology-level statement in the crate is checked by comparing
//! Poincaré series, so this is the one place where arithmetic happens.
//! A series carries its truncation degree (`cap`) and binary operations
//! refuse to mix caps.

use std::fmt;
use std::ops::Neg;

use num_traits::{Num, Zero};

use crate::error::{Error, Result};

/// Ring of coefficients a series can be built over.
///
/// Any exact signed ring from `num-traits` qualifies (`i64`, `i128`,
/// `BigInt`, rationals). Floating point types satisfy the bounds too but
/// nothing in the crate instantiates them.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Num + Neg<Output = Self> {}

impl<T> Coefficient for T where T: Clone + PartialEq + fmt::Debug + Num + Neg<Output = T> {}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries<T> {
    cap: usize,
    coeffs: Vec<T>,
}

impl<T: Coefficient> TruncatedSeries<T> {
    pub fn zero(cap: usize) -> Self {
        TruncatedSeries {
            cap,
            coeffs: vec![T::zero(); cap + 1],
        }
    }

    pub fn one(cap: usize) -> Self {
        Self::monomial(cap, 0, T::one())
    }

    /// `c * t^degree`, or zero when the degree is above the cap.
    pub fn monomial(cap: usize, degree: usize, c: T) -> Self {
        let mut s = Self::zero(cap);
        if degree <= cap {
            s.coeffs[degree] = c;
        }
        s
    }

    /// Builds a series from leading coefficients; missing ones are zero and
    /// anything past the cap is dropped.
    pub fn from_coeffs(cap: usize, coeffs: impl IntoIterator<Item = T>) -> Self {
        let mut s = Self::zero(cap);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `t^degree`; zero above the cap.
    pub fn coeff(&self, degree: usize) -> T {
        self.coeffs.get(degree).cloned().unwrap_or_else(T::zero)
    }

    pub fn set_coeff(&mut self, degree: usize, c: T) {
        if degree <= self.cap {
            self.coeffs[degree] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Same series viewed at a different cap (truncating or zero-padding).
    pub fn with_cap(&self, cap: usize) -> Self {
        Self::from_coeffs(cap, self.coeffs.iter().cloned())
    }

    fn check_caps(&self, other: &Self, op: &str) -> Result<()> {
        if self.cap != other.cap {
            return Err(Error::Usage(format!(
                "{op}: cap mismatch ({} vs {})",
                self.cap, other.cap
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_caps(other, "add")?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(TruncatedSeries {
            cap: self.cap,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_caps(other, "sub")?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Ok(TruncatedSeries {
            cap: self.cap,
            coeffs,
        })
    }

    /// Cauchy product truncated at the cap.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_caps(other, "mul")?;
        let mut out = Self::zero(self.cap);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=self.cap - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        TruncatedSeries {
            cap: self.cap,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = Self::zero(self.cap);
        for d in k..=self.cap {
            out.coeffs[d] = self.coeffs[d - k].clone();
        }
        out
    }

    /// Multiplicative inverse up to the cap. The constant term must be a unit
    /// (`±1`) so the inverse stays integral.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        let unit = if c0 == T::one() {
            T::one()
        } else if c0 == -T::one() {
            -T::one()
        } else {
            return Err(Error::Domain(format!(
                "invert: constant coefficient {c0:?} is not a unit"
            )));
        };
        let mut inv = Self::zero(self.cap);
        inv.coeffs[0] = unit.clone();
        for n in 1..=self.cap {
            let mut acc = T::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() && !inv.coeffs[n - k].is_zero() {
                    acc = acc + self.coeffs[k].clone() * inv.coeffs[n - k].clone();
                }
            }
            // a0 * b_n = -sum; a0 = unit = unit^{-1}
            inv.coeffs[n] = -(acc * unit.clone());
        }
        Ok(inv)
    }
}

impl<T: Coefficient + fmt::Display> fmt::Debug for TruncatedSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries(cap={}, [", self.cap)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "])")
    }
}

impl<T: Coefficient + fmt::Display> fmt::Display for TruncatedSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}t")?,
                _ => write!(f, "{c}t^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.cap + 1)
    }
}

/// Poincaré series of the tensor algebra on a graded module with reduced
/// series `g`: `1 / (1 - g)`.
pub fn tensor_algebra_series<T: Coefficient>(g: &TruncatedSeries<T>) -> Result<TruncatedSeries<T>> {
    if !g.coeff(0).is_zero() {
        return Err(Error::Domain(
            "tensor_algebra_series: generator series must have zero constant term".into(),
        ));
    }
    TruncatedSeries::one(g.cap()).sub(g)?.invert()
}

/// Series of `H_*(ΩS^m)`: one class in each degree divisible by `m - 1`.
pub fn loop_sphere_series<T: Coefficient>(m: u32, cap: usize) -> Result<TruncatedSeries<T>> {
    if m < 2 {
        return Err(Error::Domain(format!(
            "loop_sphere_series: sphere dimension {m} < 2"
        )));
    }
    let step = (m - 1) as usize;
    let mut s = TruncatedSeries::zero(cap);
    for d in (0..=cap).step_by(step) {
        s.set_coeff(d, T::one());
    }
    Ok(s)
}

/// Series of the polynomial algebra on generators of degrees `d1` and `d2`,
/// counted as a free module on the monomials `u^a v^b` whatever the parities.
pub fn polynomial_two_var_series<T: Coefficient>(
    d1: u32,
    d2: u32,
    cap: usize,
) -> Result<TruncatedSeries<T>> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::Domain(format!(
            "polynomial_two_var_series: generator degrees must be positive (got {d1}, {d2})"
        )));
    }
    let one = TruncatedSeries::<T>::one(cap);
    let a = one.sub(&TruncatedSeries::monomial(cap, d1 as usize, T::one()))?;
    let b = one.sub(&TruncatedSeries::monomial(cap, d2 as usize, T::one()))?;
    a.mul(&b)?.invert()
}
