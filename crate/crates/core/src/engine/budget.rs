//! Occurrence budgets.
//!
//! A copy under `f` has, in row `f(r)`, exactly the values of row `r` renamed
//! by `f`, and the same holds for columns and the whole table. So the number
//! of times a value may still appear in a row, column or the table of the
//! copy is bounded by the largest matching count in the input. The bound is
//! split by row class once the row's diagonal is known, and made exact for
//! values whose preimage has been established.

use crate::magma::invariant::{OccurrenceCounts, RowClass};
use crate::magma::Magma;

#[derive(Debug, Clone)]
pub struct BudgetState {
    order: usize,
    counts: OccurrenceCounts,
    idempotent_row: Vec<bool>,
    /// Input rows that can still be the preimage of an unfinished row.
    available: Vec<bool>,
    /// `preimage[v] = Some(k)` when every admissible copy has `f(k) = v`.
    preimage: Vec<Option<usize>>,
    midrow: bool,
    /// Caps per row class (indexed like `RowClass`) and target value.
    row_cap: [Vec<u32>; 3],
    col_cap: Vec<u32>,
    table_cap: Vec<u32>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    table_used: Vec<u32>,
    current_row: usize,
    active: RowClass,
    charge: u32,
}

impl BudgetState {
    pub fn new(m: &Magma, midrow: bool) -> Self {
        let n = m.order();
        let mut state = Self {
            order: n,
            counts: OccurrenceCounts::new(m),
            idempotent_row: (0..n).map(|r| m.get(r, r) == r).collect(),
            available: vec![true; n],
            preimage: vec![None; n],
            midrow,
            row_cap: [vec![0; n], vec![0; n], vec![0; n]],
            col_cap: vec![0; n],
            table_cap: vec![0; n],
            row_used: vec![0; n],
            col_used: vec![0; n * n],
            table_used: vec![0; n],
            current_row: 0,
            active: RowClass::All,
            charge: 1,
        };
        state.rebuild();
        state
    }

    #[doc(hidden)]
    pub fn set_charge(&mut self, charge: u32) {
        self.charge = charge;
    }

    /// Records that input element `k` maps to target value `v`.
    pub fn learn_preimage(&mut self, v: usize, k: usize) {
        self.preimage[v] = Some(k);
    }

    /// Marks input rows as mapped to already completed target rows.
    pub fn exclude_rows(&mut self, rows: &[usize]) {
        for &r in rows {
            self.available[r] = false;
        }
    }

    pub fn preimage(&self, v: usize) -> Option<usize> {
        self.preimage[v]
    }

    pub fn active_class(&self) -> RowClass {
        self.active
    }

    /// Recomputes every cap from the input counts and current knowledge.
    pub fn rebuild(&mut self) {
        let n = self.order;
        let known: Vec<bool> = {
            let mut k = vec![false; n];
            for p in self.preimage.iter().flatten() {
                k[*p] = true;
            }
            k
        };
        for class in RowClass::ALL {
            // most occurrences of input element a in one available row of the class
            let mut by_elem = vec![0u32; n];
            for r in 0..n {
                let in_class = match class {
                    RowClass::All => true,
                    RowClass::Idempotent => self.idempotent_row[r],
                    RowClass::NonIdempotent => !self.idempotent_row[r],
                };
                if !in_class || !self.available[r] {
                    continue;
                }
                for (a, slot) in by_elem.iter_mut().enumerate() {
                    *slot = (*slot).max(self.counts.in_row(r, a));
                }
            }
            let caps = self.split(&by_elem, &known);
            self.row_cap[class as usize] = caps;
        }
        let mut by_elem = vec![0u32; n];
        for c in 0..n {
            for (a, slot) in by_elem.iter_mut().enumerate() {
                *slot = (*slot).max(self.counts.in_col(c, a));
            }
        }
        self.col_cap = self.split(&by_elem, &known);
        let totals: Vec<u32> = (0..n).map(|a| self.counts.in_table(a)).collect();
        self.table_cap = self.split(&totals, &known);
    }

    /// Per target value: the exact statistic of its preimage when known,
    /// otherwise the maximum over input elements without a known image.
    fn split(&self, by_elem: &[u32], known: &[bool]) -> Vec<u32> {
        let unknown_max = by_elem
            .iter()
            .zip(known)
            .filter(|(_, &k)| !k)
            .map(|(&x, _)| x)
            .max()
            .unwrap_or(0);
        self.preimage
            .iter()
            .map(|p| p.map_or(unknown_max, |k| by_elem[k]))
            .collect()
    }

    /// Resets the row counters for a new target row.
    pub fn start_row(&mut self, r: usize) {
        self.current_row = r;
        self.row_used.iter_mut().for_each(|x| *x = 0);
        self.active = RowClass::All;
    }

    /// Narrows the row budget once the diagonal cell of the current row is
    /// known: rows with `r <> r = r` come from idempotent input rows.
    pub fn refine_midrow(&mut self, r: usize, diagonal: usize) {
        if !self.midrow {
            return;
        }
        debug_assert_eq!(r, self.current_row);
        self.active = if diagonal == r {
            RowClass::Idempotent
        } else {
            RowClass::NonIdempotent
        };
    }

    /// Whether `v` may still be placed at column `c` of the current row.
    pub fn allows(&self, c: usize, v: usize) -> bool {
        self.row_remaining(v) > 0 && self.col_remaining(c, v) > 0 && self.table_remaining(v) > 0
    }

    pub fn row_remaining(&self, v: usize) -> u32 {
        self.row_cap[self.active as usize][v].saturating_sub(self.row_used[v])
    }

    pub fn col_remaining(&self, c: usize, v: usize) -> u32 {
        self.col_cap[v].saturating_sub(self.col_used[c * self.order + v])
    }

    pub fn table_remaining(&self, v: usize) -> u32 {
        self.table_cap[v].saturating_sub(self.table_used[v])
    }

    /// Charges one placement of `v` at column `c` of the current row.
    pub fn commit(&mut self, c: usize, v: usize) {
        self.row_used[v] += self.charge;
        self.col_used[c * self.order + v] += self.charge;
        self.table_used[v] += self.charge;
    }
}
