//! Sparse row echelon forms over exact fields.

use std::collections::{BTreeMap, HashMap};

use crate::coeffs::{Ring, Scalar};
use crate::error::{Error, Result};

/// A sparse vector: column index to nonzero entry.
pub type SparseRow = BTreeMap<usize, Scalar>;

/// Incrementally built echelon basis of a row space. Each stored row is
/// scaled so that its largest column (the pivot) has entry 1.
#[derive(Debug, Clone)]
pub struct Echelon {
    ring: Ring,
    pivots: HashMap<usize, SparseRow>,
}

fn axpy(row: &mut SparseRow, factor: &Scalar, other: &SparseRow) {
    for (&c, v) in other {
        let slot = row.entry(c).or_insert_with(|| factor.ring().zero());
        *slot = slot.sub(&factor.mul(v));
        if slot.is_zero() {
            row.remove(&c);
        }
    }
}

impl Echelon {
    pub fn new(ring: Ring) -> Result<Echelon> {
        if !ring.is_field() {
            return Err(Error::NotAField(ring));
        }
        Ok(Echelon {
            ring,
            pivots: HashMap::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Fully reduces `row` against the stored pivots.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        row.retain(|_, v| !v.is_zero());
        let mut cursor = match row.keys().next_back() {
            Some(&c) => c,
            None => return row,
        };
        loop {
            let Some((&c, v)) = row.range(..=cursor).next_back() else {
                return row;
            };
            if let Some(p) = self.pivots.get(&c) {
                let factor = v.clone();
                axpy(&mut row, &factor, p);
            }
            if c == 0 {
                return row;
            }
            cursor = c - 1;
        }
    }

    /// Adds `row` to the span; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        let Some((&lead, lc)) = row.iter().next_back() else {
            return false;
        };
        let inv = lc.inv().expect("nonzero entry in a field");
        for v in row.values_mut() {
            *v = v.mul(&inv);
        }
        debug_assert!(row.values().all(|v| v.ring() == self.ring));
        self.pivots.insert(lead, row);
        true
    }

    /// Whether `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }
}

/// Rank of a family of sparse rows.
pub fn rank(ring: Ring, rows: impl IntoIterator<Item = SparseRow>) -> Result<usize> {
    let mut e = Echelon::new(ring)?;
    for r in rows {
        e.insert(r);
    }
    Ok(e.rank())
}
