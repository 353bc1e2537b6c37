//! Small exact linear algebra over the coefficient field: echelon spans for
//! rank/closure computations and representation of a target in a span.
//!
//! Vectors are sparse maps from an ordered key type to coefficients.

use crate::coeff::Coefficient;
use std::collections::BTreeMap;

pub type SparseVec<K> = BTreeMap<K, Coefficient>;

pub fn vec_sub_scaled<K: Ord + Clone>(
    v: &mut SparseVec<K>,
    factor: &Coefficient,
    row: &SparseVec<K>,
) {
    for (k, c) in row {
        let delta = factor * c;
        match v.entry(k.clone()) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !delta.is_zero() {
                    e.insert(-delta);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let next = e.get() - &delta;
                if next.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = next;
                }
            }
        }
    }
}

/// Row-echelon span with unit pivots, kept sorted by pivot key.
#[derive(Default, Clone)]
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<(K, SparseVec<K>)>,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduces `v` against the span and returns the residual.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        for (pivot, row) in &self.rows {
            if let Some(c) = v.get(pivot).cloned() {
                vec_sub_scaled(&mut v, &c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Inserts `v`; returns `true` when the rank grew.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let mut r = self.reduce(v);
        let Some((pivot, pc)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = pc.inv().expect("pivot nonzero");
        for c in r.values_mut() {
            *c = &*c * &inv;
        }
        // back-substitute into existing rows so lookups stay single-pass
        for (_, row) in &mut self.rows {
            if let Some(c) = row.get(&pivot).cloned() {
                vec_sub_scaled(row, &c, &r);
            }
        }
        let pos = self
            .rows
            .binary_search_by(|(p, _)| p.cmp(&pivot))
            .expect_err("pivot key is new");
        self.rows.insert(pos, (pivot, r));
        true
    }
}

/// Expresses `target` in the span of `gens`: returns one coefficient per
/// generator, or `None` when the target lies outside the span.
pub fn solve_in_span<K: Ord + Clone>(
    gens: &[SparseVec<K>],
    target: &SparseVec<K>,
) -> Option<Vec<Coefficient>> {
    // echelon rows augmented with coordinates in terms of the generators
    let mut rows: Vec<(K, SparseVec<K>, Vec<Coefficient>)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let mut v = g.clone();
        let mut coords = vec![Coefficient::zero(); gens.len()];
        coords[i] = Coefficient::one();
        for (pivot, row, rcoords) in &rows {
            if let Some(c) = v.get(pivot).cloned() {
                vec_sub_scaled(&mut v, &c, row);
                for (acc, rc) in coords.iter_mut().zip(rcoords) {
                    *acc = &*acc - &(&c * rc);
                }
            }
        }
        let Some((pivot, pc)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            continue; // dependent generator
        };
        let inv = pc.inv().expect("pivot nonzero");
        for c in v.values_mut() {
            *c = &*c * &inv;
        }
        for c in coords.iter_mut() {
            *c = &*c * &inv;
        }
        rows.push((pivot, v, coords));
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0));

    let mut v = target.clone();
    let mut solution = vec![Coefficient::zero(); gens.len()];
    loop {
        let Some(lead) = v.keys().next().cloned() else {
            return Some(solution); // fully reduced
        };
        let row = rows.iter().find(|(p, _, _)| *p == lead)?;
        let c = v.get(&lead).cloned().unwrap();
        vec_sub_scaled(&mut v, &c, &row.1);
        for (acc, rc) in solution.iter_mut().zip(&row.2) {
            *acc = &*acc + &(&c * rc);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries
            .iter()
            .map(|(k, n)| (*k, Coefficient::from_int(*n)))
            .collect()
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(v(&[(0, 1), (1, 2)])));
        assert!(e.insert(v(&[(1, 1), (2, 1)])));
        assert!(!e.insert(v(&[(0, 2), (1, 6), (2, 2)]))); // combo of the two
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[(0, 1), (1, 3), (2, 1)])));
        assert!(!e.contains(&v(&[(2, 1), (3, 1)])));
    }

    #[test]
    fn solve_coordinates() {
        let gens = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1)]), v(&[(0, 1), (1, 2)])];
        let target = v(&[(0, 3), (1, 5)]);
        let sol = solve_in_span(&gens, &target).unwrap();
        // reconstruct
        let mut acc: SparseVec<u32> = SparseVec::new();
        for (c, g) in sol.iter().zip(&gens) {
            let neg = -c;
            vec_sub_scaled(&mut acc, &neg, g);
        }
        assert_eq!(acc, target);
        assert!(solve_in_span(&gens, &v(&[(2, 1)])).is_none());
    }
}
