//! Incremental solver backends.
//!
//! The engine only needs three things from a solver: add a clause, solve
//! under assumptions, and read back variable values after a satisfiable
//! answer. Everything else stays inside the backend.

use std::fmt;
use std::str::FromStr;

use batsat::{lbool, BasicSolver, SolverInterface};

use super::{Lit, Var};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveResult {
    Sat,
    Unsat,
}

pub trait SatBackend {
    fn name(&self) -> &'static str;

    /// Makes sure variables `1..=max_var` exist.
    fn reserve_vars(&mut self, max_var: u32);

    fn add_clause(&mut self, clause: &[Lit]);

    fn solve(&mut self, assumptions: &[Lit]) -> Result<SolveResult>;

    /// Value of `var` in the last model. Only meaningful after `Sat`.
    fn value(&self, var: Var) -> Option<bool>;
}

/// Which backend a session should use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum SolverKind {
    /// MiniSat-derived CDCL solver.
    #[default]
    Batsat,
    /// CaDiCaL through its C API.
    Cadical,
}

impl SolverKind {
    pub const ALL: [SolverKind; 2] = [SolverKind::Batsat, SolverKind::Cadical];

    pub fn create(self) -> Box<dyn SatBackend> {
        match self {
            SolverKind::Batsat => Box::new(BatsatBackend::default()),
            SolverKind::Cadical => Box::new(CadicalBackend::default()),
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            SolverKind::Batsat => "batsat",
            SolverKind::Cadical => "cadical",
        }
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "batsat" | "minisat" => Ok(SolverKind::Batsat),
            "cadical" => Ok(SolverKind::Cadical),
            other => Err(Error::UnknownSolver(other.to_string())),
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Default)]
pub struct BatsatBackend {
    solver: BasicSolver,
    scratch: Vec<batsat::Lit>,
}

impl BatsatBackend {
    fn var(&mut self, v: Var) -> batsat::Var {
        self.solver.var_of_int(v.id() - 1)
    }

    fn lit(&mut self, l: Lit) -> batsat::Lit {
        let var = self.var(l.var());
        batsat::Lit::new(var, l.is_positive())
    }
}

impl SatBackend for BatsatBackend {
    fn name(&self) -> &'static str {
        "batsat"
    }

    fn reserve_vars(&mut self, max_var: u32) {
        if max_var > 0 {
            self.solver.var_of_int(max_var - 1);
        }
    }

    fn add_clause(&mut self, clause: &[Lit]) {
        let mut buf = std::mem::take(&mut self.scratch);
        buf.clear();
        for &l in clause {
            buf.push(self.lit(l));
        }
        // false only means the formula is already unsatisfiable at level 0,
        // which the next solve reports
        self.solver.add_clause_reuse(&mut buf);
        self.scratch = buf;
    }

    fn solve(&mut self, assumptions: &[Lit]) -> Result<SolveResult> {
        let assumps: Vec<batsat::Lit> = assumptions.iter().map(|&l| self.lit(l)).collect();
        let r = self.solver.solve_limited(&assumps);
        if r == lbool::TRUE {
            Ok(SolveResult::Sat)
        } else if r == lbool::FALSE {
            Ok(SolveResult::Unsat)
        } else {
            Err(Error::Solver("batsat returned an undetermined result".into()))
        }
    }

    fn value(&self, var: Var) -> Option<bool> {
        let model = self.solver.get_model();
        match model.get(var.id() as usize - 1) {
            Some(&v) if v == lbool::TRUE => Some(true),
            Some(&v) if v == lbool::FALSE => Some(false),
            _ => None,
        }
    }
}

pub struct CadicalBackend {
    solver: cadical::Solver,
}

impl Default for CadicalBackend {
    fn default() -> Self {
        Self {
            solver: cadical::Solver::new(),
        }
    }
}

impl SatBackend for CadicalBackend {
    fn name(&self) -> &'static str {
        "cadical"
    }

    fn reserve_vars(&mut self, max_var: u32) {
        self.solver.reserve(max_var as i32);
    }

    fn add_clause(&mut self, clause: &[Lit]) {
        self.solver.add_clause(clause.iter().map(|l| l.to_dimacs()));
    }

    fn solve(&mut self, assumptions: &[Lit]) -> Result<SolveResult> {
        match self
            .solver
            .solve_with(assumptions.iter().map(|l| l.to_dimacs()))
        {
            Some(true) => Ok(SolveResult::Sat),
            Some(false) => Ok(SolveResult::Unsat),
            None => Err(Error::Solver("cadical was interrupted".into())),
        }
    }

    fn value(&self, var: Var) -> Option<bool> {
        if var.id() as i32 > self.solver.max_variable() {
            return None;
        }
        self.solver.value(var.id() as i32)
    }
}
