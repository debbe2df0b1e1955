use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::magma::Magma;

/// Largest order the Latin square generator accepts.
pub const LATIN_SQUARE_LIMIT: usize = 64;

const REJECTION_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// `n²` independent uniform entries.
    RandomMagma,
    /// Every value once per row and column.
    LatinSquare,
    /// Addition modulo `n`.
    CyclicGroup,
    /// `r * c = r`.
    LeftProjection,
    /// A random magma with no idempotents.
    IdempotentFree,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 5] = [
        GeneratorKind::RandomMagma,
        GeneratorKind::LatinSquare,
        GeneratorKind::CyclicGroup,
        GeneratorKind::LeftProjection,
        GeneratorKind::IdempotentFree,
    ];

    pub fn id(self) -> &'static str {
        match self {
            GeneratorKind::RandomMagma => "random_magma",
            GeneratorKind::LatinSquare => "latin_square",
            GeneratorKind::CyclicGroup => "cyclic_group",
            GeneratorKind::LeftProjection => "left_projection",
            GeneratorKind::IdempotentFree => "idempotent_free",
        }
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|k| k.id() == norm)
            .ok_or_else(|| Error::UnknownGenerator(s.to_string()))
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub order: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, order: usize, seed: u64) -> Self {
        Self { kind, order, seed }
    }
}

/// Builds the instance described by `spec`. The same spec always yields the
/// same table.
pub fn generate(spec: GeneratorSpec) -> Result<Magma> {
    let n = spec.order;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.kind {
        GeneratorKind::RandomMagma => random_magma(n, &mut rng),
        GeneratorKind::LatinSquare => latin_square(n, &mut rng),
        GeneratorKind::CyclicGroup => Magma::cyclic_group(n),
        GeneratorKind::LeftProjection => Magma::left_projection(n),
        GeneratorKind::IdempotentFree => {
            if n == 1 {
                return Err(Error::GeneratorExhausted {
                    attempts: 0,
                    reason: "the only magma of order 1 is idempotent".into(),
                });
            }
            for _ in 0..REJECTION_ATTEMPTS {
                let m = random_magma(n, &mut rng)?;
                if (0..n).all(|a| m.get(a, a) != a) {
                    return Ok(m);
                }
            }
            Err(Error::GeneratorExhausted {
                attempts: REJECTION_ATTEMPTS,
                reason: "no idempotent-free sample".into(),
            })
        }
    }
}

fn random_magma(n: usize, rng: &mut ChaCha8Rng) -> Result<Magma> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    Magma::new(n, (0..n * n).map(|_| rng.gen_range(0..n)).collect())
}

/// Fills rows one at a time. Each row is a perfect matching between columns
/// and the values still missing from those columns, found by augmenting
/// paths over randomly ordered candidates. A Latin rectangle always extends
/// by one row, so this only fails on a bug.
fn latin_square(n: usize, rng: &mut ChaCha8Rng) -> Result<Magma> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    if n > LATIN_SQUARE_LIMIT {
        return Err(Error::OrderTooLarge {
            order: n,
            limit: LATIN_SQUARE_LIMIT,
        });
    }
    let mut col_used = vec![false; n * n];
    let mut cells = vec![0usize; n * n];
    for r in 0..n {
        let candidates: Vec<Vec<usize>> = (0..n)
            .map(|c| {
                let mut vs: Vec<usize> = (0..n).filter(|&v| !col_used[c * n + v]).collect();
                vs.shuffle(rng);
                vs
            })
            .collect();
        let mut cols: Vec<usize> = (0..n).collect();
        cols.shuffle(rng);
        // owner[v] = column currently holding value v in this row
        let mut owner = vec![usize::MAX; n];
        for &c in &cols {
            let mut visited = vec![false; n];
            if !augment(c, &candidates, &mut owner, &mut visited) {
                return Err(Error::GeneratorExhausted {
                    attempts: r + 1,
                    reason: format!("row {} could not be completed", r + 1),
                });
            }
        }
        for (v, &c) in owner.iter().enumerate() {
            cells[r * n + c] = v;
            col_used[c * n + v] = true;
        }
    }
    Magma::new(n, cells)
}

fn augment(c: usize, candidates: &[Vec<usize>], owner: &mut [usize], visited: &mut [bool]) -> bool {
    for &v in &candidates[c] {
        if visited[v] {
            continue;
        }
        visited[v] = true;
        if owner[v] == usize::MAX || augment(owner[v], candidates, owner, visited) {
            owner[v] = c;
            return true;
        }
    }
    false
}
