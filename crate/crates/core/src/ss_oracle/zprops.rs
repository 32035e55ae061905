//! The circle bundle `S^1 → Z → M` over a simply-connected four-manifold.
//!
//! Cohomology Serre spectral sequence with `E_2 = H^*(M) ⊗ Λ(a)`, `|a| = 1`.
//! The Euler class is arranged to be `x_k`, so `d_2(a) = x_k` and
//! `d_2(a ⊗ x_j) = c_{kj} z`; the spectral sequence collapses at `E_3`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::linalg::{rank, SparseVec};
use super::lpd::{lpd_normalize, IntersectionForm};
use crate::decompose::PDSpec;
use crate::error::{Error, Result};
use crate::expr::SphereWedge;
use crate::Rational;

/// Homotopy model of `Z` read off from its cohomology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZModel {
    /// `k = 1`: `Z ≃ S^5`.
    Sphere5,
    /// `k ≥ 2`: a Poincaré duality complex of dimension 5.
    Complex(PDSpec),
}

/// Ranks of `H^*(Z)` in degrees 0..=5 from the `E_3` page.
pub fn z_cohomology_ranks(c: &IntersectionForm) -> Result<[usize; 6]> {
    let k = c.rank();
    let row = &c.entries()[k - 1];
    let q = |n: &BigInt| Rational::from_integer(n.clone());

    // d_2 : E^{0,1} = <a> → E^{2,0} = <x_1..x_k>, a ↦ x_k
    let d_a = SparseVec::from([(k - 1, Rational::one())]);
    let rank_a = rank([d_a]);
    // d_2 : E^{2,1} = <a x_j> → E^{4,0} = <z>, a x_j ↦ c_{kj} z
    let images: Vec<SparseVec<Rational>> = row
        .iter()
        .map(|c| {
            let mut v = SparseVec::new();
            if !c.is_zero() {
                v.insert(0, q(c));
            }
            v
        })
        .collect();
    let rank_x = rank(images);

    // integrality: the cokernel of d_2 into degree 4 must vanish over Z,
    // witnessed by a preimage of z
    let w = lpd_normalize(c)?;
    let paired: BigInt = row.iter().zip(&w).map(|(a, b)| a * b).sum();
    if !paired.is_one() {
        return Err(Error::Oracle("no integral preimage of z".into()));
    }

    Ok([
        1,             // 1
        1 - rank_a,    // a
        k - rank_a,    // x_j modulo x_k
        k - rank_x,    // cycles among a x_j
        1 - rank_x,    // z modulo image
        1,             // a z
    ])
}

/// Builds the model of `Z` for a rank-`k` form and checks the ranks
/// `(1, 0, k-1, k-1, 0, 1)`.
pub fn z_construct(c: &IntersectionForm) -> Result<ZModel> {
    let k = c.rank();
    if k == 0 {
        return Err(Error::OutOfScope(
            "rank-0 form: M is a homotopy 4-sphere and there is no circle bundle to build".into(),
        ));
    }
    let ranks = z_cohomology_ranks(c)?;
    let expect = [1, 0, k - 1, k - 1, 0, 1];
    if ranks != expect {
        return Err(Error::Oracle(format!("E_3 ranks {ranks:?}, expected {expect:?}")));
    }
    if k == 1 {
        return Ok(ZModel::Sphere5);
    }
    let j = (k - 2) as u32;
    let wedge = if j == 0 {
        SphereWedge::point()
    } else {
        SphereWedge::from_pairs([(2u32, j), (3, j)])?
    };
    Ok(ZModel::Complex(PDSpec::new(2, 5, wedge)?))
}

/// Skeleton ranks of `Z` below the top cell, by degree.
pub fn z_skeleton(c: &IntersectionForm) -> Result<BTreeMap<u32, usize>> {
    let r = z_cohomology_ranks(c)?;
    Ok((1..5u32).filter(|&d| r[d as usize] > 0).map(|d| (d, r[d as usize])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let cp2 = IntersectionForm::from_i64(&[&[1]]).unwrap();
        assert_eq!(z_construct(&cp2).unwrap(), ZModel::Sphere5);

        let h = IntersectionForm::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(z_skeleton(&h).unwrap(), BTreeMap::from([(2, 1), (3, 1)]));
        assert_eq!(
            z_construct(&h).unwrap(),
            ZModel::Complex(PDSpec::new(2, 5, SphereWedge::point()).unwrap())
        );

        let d3 = IntersectionForm::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(z_skeleton(&d3).unwrap(), BTreeMap::from([(2, 2), (3, 2)]));
        let j = SphereWedge::from_pairs([(2u32, 1u32), (3, 1)]).unwrap();
        assert_eq!(z_construct(&d3).unwrap(), ZModel::Complex(PDSpec::new(2, 5, j).unwrap()));
    }

    #[test]
    fn empty_form_is_out_of_scope() {
        let e = IntersectionForm::new(vec![]).unwrap();
        assert!(matches!(z_construct(&e), Err(Error::OutOfScope(_))));
    }
}
