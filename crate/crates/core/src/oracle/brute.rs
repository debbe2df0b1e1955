use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::magma::{Magma, Permutation};

/// Largest order [`brute_force_lexmin`] accepts (8! = 40320 copies).
pub const BRUTE_FORCE_LIMIT: usize = 8;

const UNSET: usize = usize::MAX;

/// Smallest isomorphic copy of `m` by exhaustive search, with one permutation
/// producing it.
///
/// Candidates are enumerated by fixing preimages `f⁻¹(0), f⁻¹(1), ..` in turn.
/// Once `k` preimages are fixed, the first `k` entries of the copy's first row
/// are bounded: an entry whose value maps to an already-placed element is
/// known exactly, any other is at least `k`. A branch is abandoned as soon as
/// that bounded prefix is already worse than the best copy found.
pub fn brute_force_lexmin(m: &Magma) -> Result<(Magma, Permutation)> {
    let n = m.order();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::OrderTooLarge {
            order: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut search = Search {
        m,
        n,
        preimage: Vec::with_capacity(n),
        image: vec![UNSET; n],
        best: None,
        scratch: vec![0; n * n],
    };
    search.descend();
    let (cells, preimage) = search.best.expect("at least one permutation exists");
    let mut f = vec![0; n];
    for (t, &x) in preimage.iter().enumerate() {
        f[x] = t;
    }
    Ok((
        Magma::new(n, cells)?,
        Permutation::from_images(f).expect("preimages form a permutation"),
    ))
}

struct Search<'a> {
    m: &'a Magma,
    n: usize,
    /// `preimage[t] = f⁻¹(t)` for the placed prefix.
    preimage: Vec<usize>,
    /// `image[x] = f(x)` or `UNSET`.
    image: Vec<usize>,
    best: Option<(Vec<usize>, Vec<usize>)>,
    scratch: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self) {
        let k = self.preimage.len();
        if k == self.n {
            self.complete();
            return;
        }
        for x in 0..self.n {
            if self.image[x] != UNSET {
                continue;
            }
            self.preimage.push(x);
            self.image[x] = k;
            if !self.pruned() {
                self.descend();
            }
            self.image[x] = UNSET;
            self.preimage.pop();
        }
    }

    /// Whether the bounded first-row prefix already loses to the best copy.
    fn pruned(&self) -> bool {
        let Some((best, _)) = &self.best else {
            return false;
        };
        let k = self.preimage.len();
        if k == self.n {
            return false;
        }
        let head = self.preimage[0];
        for c in 0..k {
            let target = self.image[self.m.get(head, self.preimage[c])];
            let b = best[c];
            if target == UNSET {
                // value is some element not yet placed, so at least k
                return b < k;
            }
            if target != b {
                return target > b;
            }
        }
        false
    }

    fn complete(&mut self) {
        let n = self.n;
        for r in 0..n {
            for c in 0..n {
                self.scratch[r * n + c] = self.image[self.m.get(self.preimage[r], self.preimage[c])];
            }
        }
        let better = match &self.best {
            None => true,
            Some((best, _)) => self.scratch < *best,
        };
        if better {
            self.best = Some((self.scratch.clone(), self.preimage.clone()));
        }
    }
}

/// Every permutation of `{0, .., n-1}` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![Permutation::from_images(cur.clone()).unwrap()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Permutation::from_images(cur.clone()).unwrap());
    }
}

/// The set of all isomorphic copies of `m`.
pub fn all_copies(m: &Magma) -> Result<BTreeSet<Vec<usize>>> {
    if m.order() > BRUTE_FORCE_LIMIT {
        return Err(Error::OrderTooLarge {
            order: m.order(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    all_permutations(m.order())
        .iter()
        .map(|f| Ok(m.apply_permutation(f)?.cells().collect()))
        .collect()
}
