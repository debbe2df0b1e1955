//! Properties of a magma that survive every renaming of its elements.

use std::hash::{Hash, Hasher};

use super::Magma;
use crate::fnv::Fnv64;

/// Elements `a` with `a * a = a`.
pub fn idempotents(m: &Magma) -> Vec<usize> {
    (0..m.order()).filter(|&a| m.get(a, a) == a).collect()
}

/// Number of columns `c` with `r * c = a`.
pub fn occurrence_count(m: &Magma, r: usize, a: usize) -> usize {
    m.row(r).filter(|&v| v == a).count()
}

/// Largest `|{x : e * x = e}|` over idempotents `e`; `None` without
/// idempotents.
pub fn idempotent_apex(m: &Magma) -> Option<usize> {
    idempotents(m)
        .into_iter()
        .map(|e| occurrence_count(m, e, e))
        .max()
}

/// The rows that can be renamed to the first row of the lexmin copy: the
/// idempotents reaching the apex. `None` when there are no idempotents, in
/// which case nothing can be said.
pub fn first_row_candidates(m: &Magma) -> Option<Vec<usize>> {
    let apex = idempotent_apex(m)?;
    Some(
        idempotents(m)
            .into_iter()
            .filter(|&e| occurrence_count(m, e, e) == apex)
            .collect(),
    )
}

/// Fingerprint of a single row `r` of a magma, equal for `r` in `m` and `f(r)`
/// in any copy of `m` under `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowInvariant {
    /// `|{c : r∘c = c}|`
    pub fixed_count: u32,
    /// `|{c : r∘c = r}|`
    pub self_count: u32,
    /// `r∘r = r`
    pub is_idempotent: bool,
    /// Sorted multiset of orbit sizes `m_r(c)` of every `c` under `x ↦ r∘x`.
    pub orbit_profile: Vec<u32>,
}

impl RowInvariant {
    /// Computes the invariant of row `r` given the row's entries.
    pub fn from_row(r: usize, row: &[usize]) -> Self {
        let fixed_count = row.iter().enumerate().filter(|&(c, &v)| v == c).count() as u32;
        let self_count = row.iter().filter(|&&v| v == r).count() as u32;
        let mut orbit_profile = orbit_sizes(row);
        orbit_profile.sort_unstable();
        Self {
            fixed_count,
            self_count,
            is_idempotent: row[r] == r,
            orbit_profile,
        }
    }

    /// 64-bit digest used to bucket invariants before structural comparison.
    pub fn fingerprint(&self) -> u64 {
        let mut h = Fnv64::new();
        h.write_u64(u64::from(self.fixed_count));
        h.write_u64(u64::from(self.self_count));
        h.write_u64(u64::from(self.is_idempotent));
        for &k in &self.orbit_profile {
            h.write_u64(u64::from(k));
        }
        h.finish()
    }
}

impl Hash for RowInvariant {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.fingerprint());
    }
}

pub fn row_invariant(m: &Magma, r: usize) -> RowInvariant {
    let row: Vec<usize> = m.row(r).collect();
    RowInvariant::from_row(r, &row)
}

/// For every `a`, the least `k ≥ 1` such that `g^k(a)` repeats one of
/// `a, g(a), .., g^(k-1)(a)` where `g(x) = row[x]`; this is the number of
/// distinct elements on the forward orbit of `a`.
fn orbit_sizes(row: &[usize]) -> Vec<u32> {
    const UNKNOWN: u32 = 0;
    let n = row.len();
    let mut size = vec![UNKNOWN; n];
    // position of a node on the current walk, usize::MAX when not on it
    let mut on_path = vec![usize::MAX; n];
    let mut path = Vec::with_capacity(n);
    for start in 0..n {
        if size[start] != UNKNOWN {
            continue;
        }
        path.clear();
        let mut x = start;
        while size[x] == UNKNOWN && on_path[x] == usize::MAX {
            on_path[x] = path.len();
            path.push(x);
            x = row[x];
        }
        let len = path.len();
        if size[x] == UNKNOWN {
            // closed a new cycle at path[j..]
            let j = on_path[x];
            let cycle = (len - j) as u32;
            for &y in &path[j..] {
                size[y] = cycle;
            }
            for (i, &y) in path[..j].iter().enumerate() {
                size[y] = cycle + (j - i) as u32;
            }
        } else {
            let base = size[x];
            for (i, &y) in path.iter().enumerate() {
                size[y] = base + (len - i) as u32;
            }
        }
        for &y in &path {
            on_path[y] = usize::MAX;
        }
    }
    size
}

/// Which rows a statistic ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowClass {
    All,
    /// Rows `r` with `r * r = r`.
    Idempotent,
    NonIdempotent,
}

impl RowClass {
    pub const ALL: [RowClass; 3] = [RowClass::All, RowClass::Idempotent, RowClass::NonIdempotent];

    fn index(self) -> usize {
        self as usize
    }

    pub fn contains(self, m: &Magma, r: usize) -> bool {
        match self {
            RowClass::All => true,
            RowClass::Idempotent => m.get(r, r) == r,
            RowClass::NonIdempotent => m.get(r, r) != r,
        }
    }
}

/// Which values a statistic ranges over, relative to a designated
/// first-row element `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueClass {
    /// The value `k` alone.
    FirstRow,
    /// Every value other than `k`; every value when there is no `k`.
    Other,
}

impl ValueClass {
    fn index(self) -> usize {
        self as usize
    }
}

/// Raw occurrence counts of a table.
#[derive(Debug, Clone)]
pub struct OccurrenceCounts {
    order: usize,
    row: Vec<u32>,
    col: Vec<u32>,
    total: Vec<u32>,
}

impl OccurrenceCounts {
    pub fn new(m: &Magma) -> Self {
        let n = m.order();
        let mut row = vec![0u32; n * n];
        let mut col = vec![0u32; n * n];
        let mut total = vec![0u32; n];
        for r in 0..n {
            for c in 0..n {
                let v = m.get(r, c);
                row[r * n + v] += 1;
                col[c * n + v] += 1;
                total[v] += 1;
            }
        }
        Self {
            order: n,
            row,
            col,
            total,
        }
    }

    /// Occurrences of `a` in row `r`.
    pub fn in_row(&self, r: usize, a: usize) -> u32 {
        self.row[r * self.order + a]
    }

    /// Occurrences of `a` in column `c`.
    pub fn in_col(&self, c: usize, a: usize) -> u32 {
        self.col[c * self.order + a]
    }

    pub fn in_table(&self, a: usize) -> u32 {
        self.total[a]
    }
}

/// Maximum occurrence statistics of a table, split by row class and value
/// class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceProfile {
    pub first_row_element: Option<usize>,
    per_row: [[u32; 2]; 3],
    per_col: [[u32; 2]; 3],
    total: [[u32; 2]; 3],
}

impl OccurrenceProfile {
    /// Most occurrences of one value (of the class) within one row (of the
    /// class).
    pub fn per_row(&self, rows: RowClass, values: ValueClass) -> u32 {
        self.per_row[rows.index()][values.index()]
    }

    /// Most occurrences of one value within one column, counting only rows of
    /// the class.
    pub fn per_col(&self, rows: RowClass, values: ValueClass) -> u32 {
        self.per_col[rows.index()][values.index()]
    }

    /// Most occurrences of one value in the whole table, counting only rows of
    /// the class.
    pub fn total(&self, rows: RowClass, values: ValueClass) -> u32 {
        self.total[rows.index()][values.index()]
    }

    /// Unsplit maxima over every row and value.
    pub fn max_per_row(&self) -> u32 {
        self.per_row[0].iter().copied().max().unwrap_or(0)
    }

    pub fn max_per_col(&self) -> u32 {
        self.per_col[0].iter().copied().max().unwrap_or(0)
    }

    pub fn max_total(&self) -> u32 {
        self.total[0].iter().copied().max().unwrap_or(0)
    }
}

pub fn occurrence_profile(m: &Magma, first_row_element: Option<usize>) -> OccurrenceProfile {
    let n = m.order();
    let value_class = |a: usize| {
        if Some(a) == first_row_element {
            ValueClass::FirstRow
        } else {
            ValueClass::Other
        }
    };
    let mut per_row = [[0u32; 2]; 3];
    let mut per_col = [[0u32; 2]; 3];
    let mut total = [[0u32; 2]; 3];
    for class in RowClass::ALL {
        let rows: Vec<usize> = (0..n).filter(|&r| class.contains(m, r)).collect();
        let mut col_counts = vec![0u32; n * n];
        let mut tot_counts = vec![0u32; n];
        let mut row_counts = vec![0u32; n];
        for &r in &rows {
            row_counts.iter_mut().for_each(|x| *x = 0);
            for c in 0..n {
                let v = m.get(r, c);
                row_counts[v] += 1;
                col_counts[c * n + v] += 1;
                tot_counts[v] += 1;
            }
            for (a, &k) in row_counts.iter().enumerate() {
                let slot = &mut per_row[class.index()][value_class(a).index()];
                *slot = (*slot).max(k);
            }
        }
        for (i, &k) in col_counts.iter().enumerate() {
            let slot = &mut per_col[class.index()][value_class(i % n).index()];
            *slot = (*slot).max(k);
        }
        for (a, &k) in tot_counts.iter().enumerate() {
            let slot = &mut total[class.index()][value_class(a).index()];
            *slot = (*slot).max(k);
        }
    }
    OccurrenceProfile {
        first_row_element,
        per_row,
        per_col,
        total,
    }
}
