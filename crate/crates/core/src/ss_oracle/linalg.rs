//! Sparse exact linear algebra over a field.

use std::collections::BTreeMap;

use crate::series::Coefficient;

/// Sparse vector: coordinate index to nonzero entry.
pub type SparseVec<T> = BTreeMap<usize, T>;

pub fn axpy<T: Coefficient>(y: &mut SparseVec<T>, a: &T, x: &SparseVec<T>) {
    for (&i, xi) in x {
        let v = y.remove(&i).unwrap_or_else(T::zero) + a.clone() * xi.clone();
        if !v.is_zero() {
            y.insert(i, v);
        }
    }
}

pub fn scaled<T: Coefficient>(a: &T, x: &SparseVec<T>) -> SparseVec<T> {
    let mut out = SparseVec::new();
    axpy(&mut out, a, x);
    out
}

/// A subspace in semi-echelon form: each row is keyed by its smallest
/// index, where it has entry 1, and no other row has that index as pivot.
/// Rows may optionally carry a "shadow" vector that is transformed along
/// with them (used to track preimages).
#[derive(Debug, Clone)]
pub struct Echelon<T> {
    rows: BTreeMap<usize, (SparseVec<T>, SparseVec<T>)>,
}

impl<T: Coefficient> Default for Echelon<T> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<T: Coefficient> Echelon<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec<T>> + '_ {
        self.rows.values().map(|(v, _)| v)
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.rows.contains_key(&i)
    }

    /// Reduces `v` (and its shadow) so that no pivot index remains.
    pub fn reduce_with(&self, v: &mut SparseVec<T>, shadow: &mut SparseVec<T>) {
        let mut cursor = 0usize;
        loop {
            let next = v.range(cursor..).map(|(&i, c)| (i, c.clone())).find(|(i, _)| self.rows.contains_key(i));
            let Some((i, c)) = next else { break };
            let (row, row_shadow) = &self.rows[&i];
            let neg = -c;
            axpy(v, &neg, row);
            axpy(shadow, &neg, row_shadow);
            cursor = i + 1;
        }
    }

    pub fn reduce(&self, v: &SparseVec<T>) -> SparseVec<T> {
        let mut v = v.clone();
        let mut shadow = SparseVec::new();
        self.reduce_with(&mut v, &mut shadow);
        v
    }

    pub fn contains(&self, v: &SparseVec<T>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts a vector that is already reduced. Returns false for zero.
    fn insert_reduced(&mut self, v: SparseVec<T>, shadow: SparseVec<T>) -> bool {
        let Some((&pivot, lead)) = v.iter().next() else {
            return false;
        };
        let inv = T::one() / lead.clone();
        self.rows.insert(pivot, (scaled(&inv, &v), scaled(&inv, &shadow)));
        true
    }

    /// Adds `v` to the span. Returns true when the dimension grew.
    pub fn insert(&mut self, v: &SparseVec<T>) -> bool {
        let mut v = v.clone();
        let mut shadow = SparseVec::new();
        self.reduce_with(&mut v, &mut shadow);
        self.insert_reduced(v, shadow)
    }

    /// Inserts `v` with a shadow; if `v` reduces to zero, returns the
    /// reduced shadow instead (a relation among the inserted shadows).
    pub fn insert_tracked(&mut self, v: SparseVec<T>, shadow: SparseVec<T>) -> Option<SparseVec<T>> {
        let (mut v, mut shadow) = (v, shadow);
        self.reduce_with(&mut v, &mut shadow);
        if v.is_empty() {
            Some(shadow)
        } else {
            self.insert_reduced(v, shadow);
            None
        }
    }
}

/// Rank of a list of vectors.
pub fn rank<T: Coefficient>(vectors: impl IntoIterator<Item = SparseVec<T>>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(&v);
    }
    e.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_bigint::BigInt;

    fn v(entries: &[(usize, i64)]) -> SparseVec<Rational> {
        entries
            .iter()
            .map(|&(i, c)| (i, Rational::from_integer(BigInt::from(c))))
            .collect()
    }

    #[test]
    fn span_and_rank() {
        let mut e = Echelon::new();
        assert!(e.insert(&v(&[(0, 1), (1, 1)])));
        assert!(e.insert(&v(&[(1, 1), (2, 1)])));
        assert!(!e.insert(&v(&[(0, 1), (2, -1)])));
        assert!(e.contains(&v(&[(0, 2), (1, 4), (2, 2)])));
        assert!(!e.contains(&v(&[(2, 1)])));
        assert_eq!(e.dim(), 2);
        assert_eq!(rank(vec![v(&[(0, 2)]), v(&[(0, 3)]), v(&[])]), 1);
    }

    #[test]
    fn tracked_relations() {
        let mut e = Echelon::new();
        assert!(e.insert_tracked(v(&[(0, 1), (1, 1)]), v(&[(10, 1)])).is_none());
        assert!(e.insert_tracked(v(&[(1, 1)]), v(&[(11, 1)])).is_none());
        // (1,2) = row0 + row1
        let rel = e.insert_tracked(v(&[(0, 1), (1, 2)]), v(&[(12, 1)])).unwrap();
        assert_eq!(rel, v(&[(10, -1), (11, -1), (12, 1)]));
    }
}
