//! Incremental sparse row echelon form.
//!
//! Vectors are inserted one at a time and reduced against the rows stored so
//! far. Every stored row has a distinct leading coordinate (its pivot) with
//! coefficient one. Coordinates are visited in a fixed pivot order supplied at
//! construction; callers pass a sparsity-driven order (least populated
//! coordinates first) to keep fill-in down.
//!
//! Rows may carry a *tag*, a sparse vector in an auxiliary space. Reducing a
//! vector returns the matching combination of tags, which is how homology
//! classes are read off from cycles.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use super::field::Field;

pub(crate) type Entries<F> = Vec<(usize, F)>;

#[derive(Debug)]
pub(crate) struct Echelon<F: Field> {
    dim: usize,
    /// coordinate -> position in pivot order
    position: Vec<usize>,
    /// position -> coordinate
    coordinate: Vec<usize>,
    /// Stored rows in position space, sorted, leading entry equal to one.
    rows: Vec<Entries<F>>,
    tags: Vec<Entries<F>>,
    pivot_row: Vec<Option<usize>>,
    acc: Vec<F>,
    queued: Vec<bool>,
    heap: BinaryHeap<Reverse<usize>>,
}

pub(crate) struct Reduction<F: Field> {
    /// What is left after subtracting stored rows, in position space, sorted.
    pub residual: Entries<F>,
    /// Combination of stored tags that was subtracted.
    pub tag: Entries<F>,
}

impl<F: Field> Echelon<F> {
    /// `order[k]` is the coordinate visited k-th. Must be a permutation of `0..dim`.
    pub fn with_order(dim: usize, order: Vec<usize>) -> Self {
        debug_assert_eq!(order.len(), dim);
        let mut position = vec![0; dim];
        for (p, &c) in order.iter().enumerate() {
            position[c] = p;
        }
        Echelon {
            dim,
            position,
            coordinate: order,
            rows: Vec::new(),
            tags: Vec::new(),
            pivot_row: vec![None; dim],
            acc: vec![F::zero(); dim],
            queued: vec![false; dim],
            heap: BinaryHeap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Reduces `v` (coordinate space) against the stored rows.
    ///
    /// With `stop_at_free` the scan ends at the first coordinate that is not a
    /// pivot, leaving the tail unreduced; enough for rank counting.
    pub fn reduce(&mut self, v: &[(usize, F)], track_tags: bool, stop_at_free: bool) -> Reduction<F> {
        for (c, x) in v {
            if x.is_zero() {
                continue;
            }
            let p = self.position[*c];
            self.acc[p] = x.clone();
            if !self.queued[p] {
                self.queued[p] = true;
                self.heap.push(Reverse(p));
            }
        }
        let mut residual = Vec::new();
        let mut tag_acc: BTreeMap<usize, F> = BTreeMap::new();
        while let Some(Reverse(p)) = self.heap.pop() {
            self.queued[p] = false;
            let x = std::mem::replace(&mut self.acc[p], F::zero());
            if x.is_zero() {
                continue;
            }
            match self.pivot_row[p] {
                Some(r) => {
                    let row = &self.rows[r];
                    for (q, y) in &row[1..] {
                        self.acc[*q].sub_mul(&x, y);
                        if !self.queued[*q] {
                            self.queued[*q] = true;
                            self.heap.push(Reverse(*q));
                        }
                    }
                    if track_tags {
                        for (t, y) in &self.tags[r] {
                            tag_acc.entry(*t).or_insert_with(F::zero).add_mul(&x, y);
                        }
                    }
                }
                None => {
                    residual.push((p, x));
                    if stop_at_free {
                        break;
                    }
                }
            }
        }
        // Drain whatever is left (only non-empty when stopping early).
        while let Some(Reverse(p)) = self.heap.pop() {
            self.queued[p] = false;
            let x = std::mem::replace(&mut self.acc[p], F::zero());
            if !x.is_zero() {
                residual.push((p, x));
            }
        }
        let tag = tag_acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        Reduction { residual, tag }
    }

    /// Inserts `v`; returns `true` when it was independent of the stored rows.
    pub fn insert(&mut self, v: &[(usize, F)]) -> bool {
        let red = self.reduce(v, false, false);
        self.push_residual(red.residual, Vec::new())
    }

    /// Like [`insert`](Self::insert) but only reduces up to the new pivot.
    pub fn insert_lazy(&mut self, v: &[(usize, F)]) -> bool {
        let red = self.reduce(v, false, true);
        self.push_residual(red.residual, Vec::new())
    }

    /// Inserts `v` carrying `tag`; the stored tag is adjusted so that for any
    /// vector `w` in the span, the tag combination returned by `reduce(w)` is
    /// the tag-linear image of `w`.
    pub fn insert_tagged(&mut self, v: &[(usize, F)], tag: Entries<F>) -> bool {
        let red = self.reduce(v, true, false);
        let mut t: BTreeMap<usize, F> = tag.into_iter().collect();
        for (k, x) in red.tag {
            t.entry(k).or_insert_with(F::zero).sub_mul(&x, &F::one());
        }
        let t = t.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        self.push_residual(red.residual, t)
    }

    fn push_residual(&mut self, mut residual: Entries<F>, mut tag: Entries<F>) -> bool {
        if residual.is_empty() {
            return false;
        }
        residual.sort_by_key(|e| e.0);
        let lead = residual[0].0;
        let inv = residual[0].1.inv();
        for e in residual.iter_mut() {
            e.1 = e.1.mul(&inv);
        }
        for e in tag.iter_mut() {
            e.1 = e.1.mul(&inv);
        }
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(residual);
        self.tags.push(tag);
        true
    }

    /// Back-substitutes so that each pivot coordinate appears in exactly one
    /// row. Returns `(pivot coordinate, row)` pairs, rows in coordinate space
    /// and sorted by coordinate, in insertion order.
    pub fn into_reduced_rows(mut self) -> Vec<(usize, Entries<F>)> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| Reverse(self.rows[r][0].0));
        for r in order {
            let row = std::mem::take(&mut self.rows[r]);
            let lead = row[0].clone();
            // Drop this row's pivot while reducing its tail; rows with later
            // pivots have already been processed.
            self.pivot_row[lead.0] = None;
            let tail = self.to_coords(&row[1..]);
            let red = self.reduce(&tail, false, false);
            self.pivot_row[lead.0] = Some(r);
            let mut new_row = vec![lead];
            new_row.extend(red.residual);
            self.rows[r] = new_row;
        }
        let coordinate = &self.coordinate;
        self.rows
            .into_iter()
            .map(|row| {
                let pivot = coordinate[row[0].0];
                let mut out: Entries<F> = row.into_iter().map(|(p, x)| (coordinate[p], x)).collect();
                out.sort_by_key(|e| e.0);
                (pivot, out)
            })
            .collect()
    }

    fn to_coords(&self, entries: &[(usize, F)]) -> Entries<F> {
        entries.iter().map(|(p, x)| (self.coordinate[*p], x.clone())).collect()
    }
}

/// Pivot order putting the least populated coordinates first; ties by index.
pub(crate) fn sparsity_order<'a, F: Field + 'a>(
    dim: usize,
    vectors: impl IntoIterator<Item = &'a [(usize, F)]>,
) -> Vec<usize> {
    let mut count = vec![0usize; dim];
    for v in vectors {
        for (c, _) in v {
            count[*c] += 1;
        }
    }
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by_key(|&c| (count[c], c));
    order
}
