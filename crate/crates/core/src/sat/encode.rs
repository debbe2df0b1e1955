//! CNF encodings over the permutation variables `x(i→j)`, meaning `f(i) = j`.

use std::collections::HashSet;

use super::{Clause, Lit, Var};
use crate::error::{Error, Result};
use crate::magma::Magma;

/// Orders above this use the sequential (ladder) at-most-one encoding instead
/// of the pairwise one.
pub const PAIRWISE_LIMIT: usize = 32;

/// Largest order accepted by [`build_explicit_encoding`].
pub const EXPLICIT_ENCODING_LIMIT: usize = 8;

/// Numbering of the permutation variables: `x(i→j)` is `i·n + j + 1` for
/// 0-based `i, j`, so ids `1..=n²` are exactly the permutation variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermVarMap {
    order: usize,
}

impl PermVarMap {
    pub fn new(order: usize) -> Self {
        Self { order }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn var(&self, from: usize, to: usize) -> Var {
        debug_assert!(from < self.order && to < self.order);
        Var::new((from * self.order + to + 1) as u32)
    }

    #[inline]
    pub fn lit(&self, from: usize, to: usize) -> Lit {
        self.var(from, to).positive()
    }

    pub fn num_vars(&self) -> u32 {
        (self.order * self.order) as u32
    }

    /// Inverse of [`PermVarMap::var`]; `None` for auxiliary variables.
    pub fn decode(&self, var: Var) -> Option<(usize, usize)> {
        let id = var.id() as usize;
        if id == 0 || id > self.order * self.order {
            return None;
        }
        Some(((id - 1) / self.order, (id - 1) % self.order))
    }
}

/// Allocator for variables beyond a fixed prefix.
#[derive(Debug, Clone)]
pub struct VarPool {
    next: u32,
}

impl VarPool {
    /// A pool whose first fresh variable is `first_free`.
    pub fn starting_at(first_free: u32) -> Self {
        Self { next: first_free }
    }

    pub fn fresh(&mut self) -> Var {
        let v = Var::new(self.next);
        self.next += 1;
        v
    }

    /// Largest id handed out so far (or the prefix size if none).
    pub fn max_var(&self) -> u32 {
        self.next - 1
    }
}

/// Appends clauses stating that exactly one of `lits` holds.
pub fn exactly_one(lits: &[Lit], pool: &mut VarPool, out: &mut Vec<Clause>) {
    out.push(lits.to_vec());
    if lits.len() <= PAIRWISE_LIMIT {
        for (a, &x) in lits.iter().enumerate() {
            for &y in &lits[a + 1..] {
                out.push(vec![!x, !y]);
            }
        }
    } else {
        // sequential counter: s_k ⇔ some of lits[..=k] is true
        let mut prev: Option<Var> = None;
        for (k, &x) in lits.iter().enumerate() {
            if k + 1 == lits.len() {
                if let Some(p) = prev {
                    out.push(vec![!x, p.negative()]);
                }
                break;
            }
            let s = pool.fresh();
            out.push(vec![!x, s.positive()]);
            if let Some(p) = prev {
                out.push(vec![p.negative(), s.positive()]);
                out.push(vec![!x, p.negative()]);
            }
            prev = Some(s);
        }
    }
}

/// `f` is a bijection: every element has exactly one image and exactly one
/// preimage.
pub fn build_bijection_constraints(map: &PermVarMap, pool: &mut VarPool) -> Vec<Clause> {
    let n = map.order();
    let mut out = Vec::new();
    let mut lits = Vec::with_capacity(n);
    for i in 0..n {
        lits.clear();
        lits.extend((0..n).map(|j| map.lit(i, j)));
        exactly_one(&lits, pool, &mut out);
        lits.clear();
        lits.extend((0..n).map(|j| map.lit(j, i)));
        exactly_one(&lits, pool, &mut out);
    }
    out
}

/// Clauses for one cell query together with bookkeeping about what was
/// dropped.
#[derive(Debug, Clone, Default)]
pub struct CellEncoding {
    pub clauses: Vec<Clause>,
    /// One per pair `(i, j)`, before any filtering.
    pub raw: usize,
    pub tautologies: usize,
    pub duplicates: usize,
}

/// `r <> c = v` in every copy `<>` of `m` the permutation variables describe:
/// `x(i→r) ∧ x(j→c) ⇒ x(i*j→v)` for all `i, j`.
pub fn encode_assignment(map: &PermVarMap, m: &Magma, r: usize, c: usize, v: usize) -> CellEncoding {
    encode_value_set(map, m, r, c, &[v])
}

/// `r <> c ∈ values`: `x(i→r) ∧ x(j→c) ⇒ ⋁_{v ∈ values} x(i*j→v)`.
pub fn encode_value_set(
    map: &PermVarMap,
    m: &Magma,
    r: usize,
    c: usize,
    values: &[usize],
) -> CellEncoding {
    assert!(!values.is_empty(), "value set must be nonempty");
    let n = m.order();
    let mut enc = CellEncoding {
        raw: n * n,
        ..Default::default()
    };
    // premises {x(i→r), x(j→c)} are pairwise distinct unless r = c, where
    // (i, j) and (j, i) coincide, so only diagonal cells can repeat clauses
    let mut seen: Option<HashSet<Clause>> = (r == c).then(|| HashSet::with_capacity(n * n));
    enc.clauses.reserve(n * n);
    for i in 0..n {
        for j in 0..n {
            let k = m.get(i, j);
            let mut clause = Vec::with_capacity(2 + values.len());
            clause.push(!map.lit(i, r));
            clause.push(!map.lit(j, c));
            clause.extend(values.iter().map(|&v| map.lit(k, v)));
            match canonicalize(clause) {
                None => enc.tautologies += 1,
                Some(cl) => {
                    let fresh = seen.as_mut().is_none_or(|set| set.insert(cl.clone()));
                    if fresh {
                        enc.clauses.push(cl);
                    } else {
                        enc.duplicates += 1;
                    }
                }
            }
        }
    }
    enc
}

/// Sorts and deduplicates the literals; `None` for a tautology.
pub fn canonicalize(mut clause: Clause) -> Option<Clause> {
    clause.sort_unstable_by_key(|l| (l.var(), l.is_positive()));
    clause.dedup();
    if clause.windows(2).any(|w| w[0].var() == w[1].var()) {
        return None;
    }
    Some(clause)
}

/// The one-hot reference encoding: permutation variables plus a variable
/// `y(a, b, v)` for every cell value of the target copy.
#[derive(Debug, Clone)]
pub struct ExplicitEncoding {
    pub map: PermVarMap,
    pub clauses: Vec<Clause>,
    /// Largest variable id used, auxiliaries included.
    pub num_vars: u32,
}

impl ExplicitEncoding {
    /// `y(a, b, v)`: `a <> b = v` in the target copy.
    pub fn value_var(&self, a: usize, b: usize, v: usize) -> Var {
        let n = self.map.order();
        Var::new((n * n + (a * n + b) * n + v + 1) as u32)
    }

    /// Reads the target table off a model given as a variable valuation.
    pub fn decode_table(&self, value: impl Fn(Var) -> bool) -> Result<Magma> {
        let n = self.map.order();
        let mut cells = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let v = (0..n)
                    .find(|&v| value(self.value_var(a, b, v)))
                    .ok_or_else(|| Error::Solver(format!("cell ({a}, {b}) has no value")))?;
                cells.push(v);
            }
        }
        Magma::new(n, cells)
    }
}

/// Explicit encoding of "the target table is an isomorphic copy of `m`":
/// `x(r→r') ∧ x(c→c') ∧ x(r*c→v') ⇒ y(r', c', v')` for all indices, with
/// every target cell one-hot. Produces Θ(n⁵) clauses, so it is restricted to
/// tiny orders.
pub fn build_explicit_encoding(m: &Magma) -> Result<ExplicitEncoding> {
    let n = m.order();
    if n > EXPLICIT_ENCODING_LIMIT {
        return Err(Error::OrderTooLarge {
            order: n,
            limit: EXPLICIT_ENCODING_LIMIT,
        });
    }
    let map = PermVarMap::new(n);
    let mut enc = ExplicitEncoding {
        map,
        clauses: Vec::new(),
        num_vars: 0,
    };
    let mut pool = VarPool::starting_at((n * n + n * n * n + 1) as u32);
    let mut clauses = build_bijection_constraints(&map, &mut pool);
    for a in 0..n {
        for b in 0..n {
            let cell: Vec<Lit> = (0..n).map(|v| enc.value_var(a, b, v).positive()).collect();
            exactly_one(&cell, &mut pool, &mut clauses);
        }
    }
    for r in 0..n {
        for c in 0..n {
            let k = m.get(r, c);
            for r2 in 0..n {
                for c2 in 0..n {
                    for v2 in 0..n {
                        let clause = vec![
                            !map.lit(r, r2),
                            !map.lit(c, c2),
                            !map.lit(k, v2),
                            enc.value_var(r2, c2, v2).positive(),
                        ];
                        if let Some(cl) = canonicalize(clause) {
                            clauses.push(cl);
                        }
                    }
                }
            }
        }
    }
    enc.clauses = clauses;
    enc.num_vars = pool.max_var();
    Ok(enc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::two_element_example;

    #[test]
    fn variable_numbering_is_row_major() {
        let map = PermVarMap::new(3);
        assert_eq!(map.var(0, 0).id(), 1);
        assert_eq!(map.var(0, 2).id(), 3);
        assert_eq!(map.var(2, 1).id(), 8);
        assert_eq!(map.decode(Var::new(8)), Some((2, 1)));
        assert_eq!(map.decode(Var::new(10)), None);
    }

    #[test]
    fn order_one_bijection_is_a_unit() {
        let map = PermVarMap::new(1);
        let mut pool = VarPool::starting_at(2);
        let cls = build_bijection_constraints(&map, &mut pool);
        assert!(cls.iter().all(|c| c == &vec![map.lit(0, 0)]));
    }

    #[test]
    fn ladder_is_used_above_the_threshold() {
        let map = PermVarMap::new(PAIRWISE_LIMIT + 1);
        let mut pool = VarPool::starting_at(map.num_vars() + 1);
        let cls = build_bijection_constraints(&map, &mut pool);
        assert!(pool.max_var() > map.num_vars());
        assert!(cls.iter().all(|c| c.len() <= PAIRWISE_LIMIT + 1));
    }

    #[test]
    fn assignment_encoding_counts() {
        let m = two_element_example();
        let map = PermVarMap::new(2);
        let enc = encode_assignment(&map, &m, 0, 0, 0);
        assert_eq!(enc.raw, 4);
        assert_eq!(enc.clauses.len() + enc.tautologies + enc.duplicates, enc.raw);
        let mut uniq = enc.clauses.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), enc.clauses.len());
        for cl in &enc.clauses {
            assert!(canonicalize(cl.clone()).is_some());
        }
    }

    #[test]
    fn single_value_set_equals_assignment() {
        let m = crate::fixtures::scrambled_z7();
        let map = PermVarMap::new(7);
        let a = encode_assignment(&map, &m, 2, 5, 3);
        let b = encode_value_set(&map, &m, 2, 5, &[3]);
        assert_eq!(a.clauses, b.clauses);
    }

    #[test]
    fn tautologies_are_dropped() {
        // x(i→0) ∧ x(j→0) ⇒ x(i→0) whenever i * j = i
        let m = Magma::left_projection(3).unwrap();
        let map = PermVarMap::new(3);
        let enc = encode_assignment(&map, &m, 0, 0, 0);
        assert_eq!(enc.tautologies, 9);
        assert!(enc.clauses.is_empty());
    }

    #[test]
    fn commuting_pairs_on_the_diagonal_are_duplicates() {
        let m = Magma::cyclic_group(3).unwrap();
        let map = PermVarMap::new(3);
        let enc = encode_assignment(&map, &m, 0, 0, 1);
        assert_eq!(enc.raw, 9);
        assert_eq!(enc.tautologies, 0);
        assert_eq!(enc.duplicates, 3);
        assert_eq!(enc.clauses.len(), 6);
    }

    #[test]
    fn explicit_encoding_is_quintic_and_bounded() {
        let m = Magma::cyclic_group(3).unwrap();
        let enc = build_explicit_encoding(&m).unwrap();
        assert!(enc.clauses.len() >= 3usize.pow(5));
        let big = Magma::cyclic_group(9).unwrap();
        assert!(matches!(
            build_explicit_encoding(&big),
            Err(Error::OrderTooLarge { .. })
        ));
    }
}
