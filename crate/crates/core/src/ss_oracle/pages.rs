//! Page-by-page replay of a homologically graded spectral sequence.
//!
//! `E_r^{p,q}` is kept as a subquotient `Z_r / B_r` of the `E^2` term, with
//! `d_r : (p, q) → (p - r, q + r - 1)` given on `E^2` basis elements.

use std::collections::BTreeMap;

use super::linalg::{axpy, Echelon, SparseVec};
use crate::error::{Error, Result};
use crate::series::Coefficient;

pub type Bidegree = (u32, u32);

/// Target bidegree of `d_r`, if it exists.
pub fn target(r: u32, (p, q): Bidegree) -> Option<Bidegree> {
    (p >= r).then(|| (p - r, q + r - 1))
}

#[derive(Debug, Clone)]
pub struct Pages<T> {
    dims: BTreeMap<Bidegree, usize>,
    z: BTreeMap<Bidegree, Echelon<T>>,
    b: BTreeMap<Bidegree, Echelon<T>>,
}

impl<T: Coefficient> Pages<T> {
    /// The `E^2` page with the given dimensions (all cycles, no boundaries).
    pub fn new(dims: BTreeMap<Bidegree, usize>) -> Self {
        let mut z = BTreeMap::new();
        let mut b = BTreeMap::new();
        for (&s, &n) in &dims {
            let mut e = Echelon::new();
            for i in 0..n {
                e.insert(&SparseVec::from([(i, T::one())]));
            }
            z.insert(s, e);
            b.insert(s, Echelon::new());
        }
        Pages { dims, z, b }
    }

    pub fn bidegrees(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.dims.keys().copied()
    }

    pub fn rank(&self, s: Bidegree) -> usize {
        match (self.z.get(&s), self.b.get(&s)) {
            (Some(z), Some(b)) => z.dim() - b.dim(),
            _ => 0,
        }
    }

    /// Ranks summed along total degree `p + q`.
    pub fn total_ranks(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for s in self.bidegrees() {
            *out.entry(s.0 + s.1).or_insert(0) += self.rank(s);
        }
        out
    }

    /// Bidegrees where `d_r` could be nonzero: both source and target
    /// survive to `E_r`.
    pub fn candidates(&self, r: u32) -> Vec<Bidegree> {
        self.bidegrees()
            .filter(|&s| {
                target(r, s).is_some_and(|t| self.dims.contains_key(&t) && self.rank(t) > 0)
                    && self.rank(s) > 0
            })
            .collect()
    }

    /// Basis indices labelling a basis of `E_r^{p,q}`: the leading index of
    /// each cycle representative that is independent modulo boundaries.
    pub fn basis_labels(&self, s: Bidegree) -> Vec<usize> {
        let (Some(z), Some(b)) = (self.z.get(&s), self.b.get(&s)) else {
            return Vec::new();
        };
        let mut acc = b.clone();
        let mut labels = Vec::new();
        for v in z.basis() {
            let red = acc.reduce(v);
            if let Some((&i, _)) = red.iter().next() {
                labels.push(i);
                acc.insert(&red);
            }
        }
        labels
    }

    /// Passes from `E_r` to `E_{r+1}`. `d(s, i)` is the image of basis
    /// element `i` of bidegree `s` in coordinates of the target bidegree.
    pub fn turn(&mut self, r: u32, d: impl Fn(Bidegree, usize) -> SparseVec<T>) -> Result<()> {
        let apply = |s: Bidegree, v: &SparseVec<T>| {
            let mut out = SparseVec::new();
            for (&i, c) in v {
                axpy(&mut out, c, &d(s, i));
            }
            out
        };
        let mut new_z = self.z.clone();
        let mut new_b = self.b.clone();
        for s in self.bidegrees() {
            let Some(t) = target(r, s).filter(|t| self.dims.contains_key(t)) else {
                continue;
            };
            let (zs, bs, bt) = (&self.z[&s], &self.b[&s], &self.b[&t]);
            for v in bs.basis() {
                if !bt.contains(&apply(s, v)) {
                    return Err(Error::Oracle(format!(
                        "d_{r} does not preserve boundaries at bidegree {s:?}"
                    )));
                }
            }
            let mut images = bt.clone();
            let mut kernel = Echelon::new();
            let grow_b = new_b.get_mut(&t).expect("target present");
            for v in zs.basis() {
                let image = apply(s, v);
                if let Some(tt) = target(r, t).filter(|tt| self.dims.contains_key(tt)) {
                    if !self.b[&tt].contains(&apply(t, &image)) {
                        return Err(Error::Oracle(format!(
                            "d_{r} ∘ d_{r} ≠ 0 starting at bidegree {s:?}"
                        )));
                    }
                }
                grow_b.insert(&image);
                if let Some(rel) = images.insert_tracked(image, v.clone()) {
                    kernel.insert(&rel);
                }
            }
            new_z.insert(s, kernel);
        }
        self.z = new_z;
        self.b = new_b;
        for s in self.bidegrees() {
            if self.b[&s].basis().any(|v| !self.z[&s].contains(v)) {
                return Err(Error::Oracle(format!("boundaries escape cycles at bidegree {s:?}")));
            }
        }
        Ok(())
    }
}
