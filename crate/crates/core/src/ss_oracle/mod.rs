//! Replayed spectral sequences used as independent checks.
//!
//! Three fibrations are covered: the path-loop fibration over
//! `S^m × S^{n-m}` ([`qhlgy_series_check`]), the homotopy fibre of the
//! top-cell pinch of a Poincaré duality complex ([`p4_e_infinity`]), and
//! the circle bundle over a simply-connected four-manifold
//! ([`z_construct`]). Pages are computed as subquotients of `E^2` over the
//! rationals; ranks are all that is compared.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::Series;

pub mod linalg;
pub mod lpd;
pub mod p4;
pub mod pages;
pub mod qhlgy;
pub mod zprops;

pub use lpd::{determinant, lpd_normalize, IntersectionForm};
pub use p4::{p4_e_infinity, p4_prediction, SSInput};
pub use qhlgy::qhlgy_series_check;
pub use zprops::{z_construct, z_skeleton, ZModel};

/// Ranks by degree with one label per basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModule {
    cap: usize,
    labels: BTreeMap<u32, Vec<String>>,
}

impl GradedModule {
    pub fn new(cap: usize) -> Self {
        GradedModule {
            cap,
            labels: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, degree: u32, label: String) {
        self.labels.entry(degree).or_default().push(label);
    }

    pub fn rank(&self, degree: u32) -> usize {
        self.labels.get(&degree).map_or(0, Vec::len)
    }

    pub fn labels(&self, degree: u32) -> &[String] {
        self.labels.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn ranks(&self) -> BTreeMap<u32, usize> {
        self.labels.iter().map(|(&d, l)| (d, l.len())).collect()
    }

    pub fn series(&self) -> Series {
        Series::from_coeffs(self.cap, (0..=self.cap).map(|d| BigInt::from(self.rank(d as u32))))
    }
}
