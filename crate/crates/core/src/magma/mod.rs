//! Finite magmas given by their multiplication table, and the permutations
//! acting on them.
//!
//! Elements are stored 0-based. Every text format in [`format`] is 1-based,
//! so the table `2 / 1 2 / 2 2` in a file is the magma with `0*0 = 0`,
//! `0*1 = 1`, `1*0 = 1`, `1*1 = 1` in memory.

pub mod format;
pub mod invariant;
mod permutation;

use std::cmp::Ordering;
use std::fmt;

pub use permutation::Permutation;

use crate::error::{Error, Result};

/// Largest order the data model accepts.
pub const MAX_ORDER: usize = 1024;

/// A finite magma `(D, *)` on `D = {0, .., n-1}`, stored as its row-major
/// multiplication table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Magma {
    order: usize,
    cells: Vec<u16>,
}

impl Magma {
    /// Builds a magma from a row-major table of 0-based entries.
    pub fn new(order: usize, cells: Vec<usize>) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::InvalidOrder(order));
        }
        if cells.len() != order * order {
            return Err(Error::ShapeMismatch {
                expected: order * order,
                found: cells.len(),
            });
        }
        if let Some(pos) = cells.iter().position(|&v| v >= order) {
            return Err(Error::DomainViolation {
                row: pos / order,
                col: pos % order,
                value: cells[pos],
                order,
            });
        }
        Ok(Self {
            order,
            cells: cells.into_iter().map(|v| v as u16).collect(),
        })
    }

    /// Builds a magma from 0-based rows.
    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        let mut cells = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != order {
                return Err(Error::RaggedRow {
                    row: r,
                    expected: order,
                    found: row.len(),
                });
            }
            cells.extend_from_slice(row);
        }
        Self::new(order, cells)
    }

    /// Builds a magma from 1-based rows, the way tables are written on paper.
    pub fn from_one_based<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        let mut zero_based = Vec::with_capacity(order);
        for (r, row) in rows.iter().enumerate() {
            let mut out = Vec::with_capacity(row.as_ref().len());
            for (c, &v) in row.as_ref().iter().enumerate() {
                if v == 0 {
                    return Err(Error::DomainViolation {
                        row: r,
                        col: c,
                        value: 0,
                        order,
                    });
                }
                out.push(v - 1);
            }
            zero_based.push(out);
        }
        Self::from_rows(&zero_based)
    }

    /// The magma given by an arbitrary operation on `{0, .., n-1}`.
    pub fn from_fn(order: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let cells = (0..order * order)
            .map(|i| op(i / order, i % order))
            .collect();
        Self::new(order, cells)
    }

    /// `r * c = r` for all `r, c`.
    pub fn left_projection(order: usize) -> Result<Self> {
        Self::from_fn(order, |r, _| r)
    }

    /// Addition modulo `n`.
    pub fn cyclic_group(order: usize) -> Result<Self> {
        Self::from_fn(order, |r, c| (r + c) % order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.order + col] as usize
    }

    pub fn row(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        self.cells[row * self.order..(row + 1) * self.order]
            .iter()
            .map(|&v| v as usize)
    }

    /// Row-major entries.
    pub fn cells(&self) -> impl Iterator<Item = usize> + '_ {
        self.cells.iter().map(|&v| v as usize)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|r| self.row(r).collect()).collect()
    }

    /// Returns a copy with one cell replaced.
    pub fn with_cell(&self, row: usize, col: usize, value: usize) -> Result<Self> {
        if value >= self.order {
            return Err(Error::DomainViolation {
                row,
                col,
                value,
                order: self.order,
            });
        }
        let mut out = self.clone();
        out.cells[row * self.order + col] = value as u16;
        Ok(out)
    }

    /// The isomorphic copy of `self` under `f`: `r <> c = f(f^-1(r) * f^-1(c))`.
    pub fn apply_permutation(&self, f: &Permutation) -> Result<Self> {
        check_order(self.order, f.order())?;
        let n = self.order;
        let inv = f.inverse();
        let mut cells = vec![0u16; n * n];
        for r in 0..n {
            let pr = inv.apply(r);
            for c in 0..n {
                let pc = inv.apply(c);
                cells[r * n + c] = f.apply(self.get(pr, pc)) as u16;
            }
        }
        Ok(Self { order: n, cells })
    }

    /// Row-major lexicographic comparison.
    pub fn lex_compare(&self, other: &Self) -> Result<Ordering> {
        check_order(self.order, other.order)?;
        Ok(self.cells.cmp(&other.cells))
    }

    /// Whether every value occurs exactly once in each row and each column.
    pub fn is_latin_square(&self) -> bool {
        let n = self.order;
        let mut seen = vec![false; n];
        for r in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for v in self.row(r) {
                if std::mem::replace(&mut seen[v], true) {
                    return false;
                }
            }
        }
        for c in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for r in 0..n {
                if std::mem::replace(&mut seen[self.get(r, c)], true) {
                    return false;
                }
            }
        }
        true
    }

    /// Stable 64-bit FNV-1a hash of the order and table.
    pub fn content_hash(&self) -> u64 {
        let mut h = crate::fnv::Fnv64::new();
        h.write_u64(self.order as u64);
        for &v in &self.cells {
            h.write_u64(u64::from(v));
        }
        h.finish()
    }
}

pub(crate) fn check_order(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::OrderMismatch { left, right });
    }
    Ok(())
}

impl fmt::Debug for Magma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Magma({}; ", self.order)?;
        for r in 0..self.order {
            if r > 0 {
                f.write_str(" | ")?;
            }
            for (i, v) in self.row(r).enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", v + 1)?;
            }
        }
        f.write_str(")")
    }
}

impl fmt::Display for Magma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format::to_native(self))
    }
}
