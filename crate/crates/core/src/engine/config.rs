use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::error::Error;
use crate::sat::SolverKind;

/// How the value of a cell is searched for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// Try candidates in ascending order until one is satisfiable.
    LinearUnsatSat,
    /// Probe the least candidate, then halve the candidate range with
    /// value-set queries.
    #[default]
    ModifiedBinary,
}

impl Strategy {
    pub const ALL: [Strategy; 2] = [Strategy::LinearUnsatSat, Strategy::ModifiedBinary];

    pub fn id(self) -> &'static str {
        match self {
            Strategy::LinearUnsatSat => "lus",
            Strategy::ModifiedBinary => "bin2",
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "lus" | "linear" => Ok(Strategy::LinearUnsatSat),
            "bin2" | "binary" => Ok(Strategy::ModifiedBinary),
            other => Err(Error::UnknownStrategy(other.to_string())),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Deliberate defects for checking that the test harness notices them.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fault {
    /// Charge every committed cell twice against its budgets.
    DoubleBudgetDecrement,
}

impl FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "double-budget-decrement" => Ok(Fault::DoubleBudgetDecrement),
            other => Err(format!("unknown fault {other:?}")),
        }
    }
}

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30 * 60);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    pub strategy: Strategy,
    /// Restrict which elements may become the first row.
    pub first_row: bool,
    /// Skip values whose row, column or table budget is spent.
    pub budgets: bool,
    /// Pin or exclude row images from invariants of completed rows.
    pub row_invariants: bool,
    /// Switch to idempotent / non-idempotent row budgets after the diagonal.
    pub midrow_refinement: bool,
    /// Skip values at or above the best known copy's value.
    pub witness_upper_bound: bool,
    pub solver: SolverKind,
    pub timeout: Option<Duration>,
    /// Keep a clause log so the session can be dumped as DIMACS.
    pub record_clauses: bool,
    #[doc(hidden)]
    pub fault: Option<Fault>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            strategy: Strategy::default(),
            first_row: true,
            budgets: true,
            row_invariants: true,
            midrow_refinement: true,
            witness_upper_bound: true,
            solver: SolverKind::default(),
            timeout: Some(DEFAULT_TIMEOUT),
            record_clauses: false,
            fault: None,
        }
    }
}

impl EngineConfig {
    pub const FIRST_ROW: u8 = 1;
    pub const BUDGETS: u8 = 2;
    pub const ROW_INVARIANTS: u8 = 4;
    pub const MIDROW: u8 = 8;
    pub const WITNESS: u8 = 16;
    pub const ALL_TOGGLES: u8 = 31;

    /// Every propagation technique off: the plain cell-by-cell search.
    pub fn basic() -> Self {
        Self::default().with_toggles(0)
    }

    pub fn toggles(&self) -> u8 {
        let mut mask = 0;
        for (on, bit) in [
            (self.first_row, Self::FIRST_ROW),
            (self.budgets, Self::BUDGETS),
            (self.row_invariants, Self::ROW_INVARIANTS),
            (self.midrow_refinement, Self::MIDROW),
            (self.witness_upper_bound, Self::WITNESS),
        ] {
            if on {
                mask |= bit;
            }
        }
        mask
    }

    pub fn with_toggles(mut self, mask: u8) -> Self {
        self.first_row = mask & Self::FIRST_ROW != 0;
        self.budgets = mask & Self::BUDGETS != 0;
        self.row_invariants = mask & Self::ROW_INVARIANTS != 0;
        self.midrow_refinement = mask & Self::MIDROW != 0;
        self.witness_upper_bound = mask & Self::WITNESS != 0;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_solver(mut self, solver: SolverKind) -> Self {
        self.solver = solver;
        self
    }

    pub fn with_timeout(mut self, timeout: Option<Duration>) -> Self {
        self.timeout = timeout;
        self
    }

    /// All 32 toggle subsets under both strategies.
    pub fn matrix(&self) -> Vec<EngineConfig> {
        Strategy::ALL
            .into_iter()
            .flat_map(|s| {
                (0..=Self::ALL_TOGGLES).map(move |mask| (s, mask))
            })
            .map(|(s, mask)| self.clone().with_strategy(s).with_toggles(mask))
            .collect()
    }
}
