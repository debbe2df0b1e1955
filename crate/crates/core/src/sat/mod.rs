//! Propositional layer: literals, the permutation encodings, solver backends
//! and the incremental session the engine drives.

pub mod backend;
pub mod dimacs;
pub mod encode;
pub mod enumerate;
pub mod session;

use std::fmt;
use std::ops::Not;

pub use backend::{SatBackend, SolveResult, SolverKind};
pub use encode::{PermVarMap, VarPool};
pub use session::{SolverSession, TrialGuard, TrialOutcome};

/// A propositional variable; ids start at 1 as in DIMACS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    pub fn new(id: u32) -> Self {
        assert!(id >= 1, "variable ids start at 1");
        Self(id)
    }

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn positive(self) -> Lit {
        Lit(self.0 as i32)
    }

    pub fn negative(self) -> Lit {
        Lit(-(self.0 as i32))
    }
}

/// A signed variable, stored in DIMACS form.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(i32);

impl Lit {
    pub fn new(var: Var, positive: bool) -> Self {
        if positive {
            var.positive()
        } else {
            var.negative()
        }
    }

    pub fn from_dimacs(x: i32) -> Self {
        assert!(x != 0, "0 is not a literal");
        Self(x)
    }

    pub fn var(self) -> Var {
        Var(self.0.unsigned_abs())
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(-self.0)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type Clause = Vec<Lit>;
