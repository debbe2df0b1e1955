use std::fmt;
use std::ops::AddAssign;
use std::time::Duration;

/// Counters of one canonization run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunStats {
    pub sat_calls: u64,
    pub unsat_calls: u64,
    /// Values below the committed one that were never tried because a budget
    /// was spent.
    pub budget_skips: u64,
    /// Cells whose value came from the witness without a confirming call.
    pub witness_skips: u64,
    pub invariant_row_fixes: u64,
    pub invariant_exclusions: u64,
    pub wall: Duration,
}

impl RunStats {
    pub fn solver_calls(&self) -> u64 {
        self.sat_calls + self.unsat_calls
    }
}

impl AddAssign<&RunStats> for RunStats {
    fn add_assign(&mut self, rhs: &RunStats) {
        self.sat_calls += rhs.sat_calls;
        self.unsat_calls += rhs.unsat_calls;
        self.budget_skips += rhs.budget_skips;
        self.witness_skips += rhs.witness_skips;
        self.invariant_row_fixes += rhs.invariant_row_fixes;
        self.invariant_exclusions += rhs.invariant_exclusions;
        self.wall += rhs.wall;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    Ok,
    Timeout,
    Error,
}

impl fmt::Display for RunStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RunStatus::Ok => "ok",
            RunStatus::Timeout => "timeout",
            RunStatus::Error => "error",
        })
    }
}

/// First line of every stats file.
pub const STATS_VERSION_LINE: &str = "# mlex-stats v1";

pub const STATS_HEADER: [&str; 14] = [
    "instance",
    "n",
    "strategy",
    "solver",
    "toggles",
    "sat_calls",
    "unsat_calls",
    "budget_skips",
    "witness_skips",
    "invariant_row_fixes",
    "invariant_exclusions",
    "wall_ms",
    "result_hash",
    "status",
];

/// One CSV row: a single instance under a single configuration.
#[derive(Debug, Clone)]
pub struct StatsRow {
    pub instance: String,
    pub n: usize,
    pub strategy: String,
    pub solver: String,
    pub toggles: u8,
    pub stats: RunStats,
    pub result_hash: Option<u64>,
    pub status: RunStatus,
}

impl StatsRow {
    pub fn fields(&self) -> [String; 14] {
        let s = &self.stats;
        [
            self.instance.clone(),
            self.n.to_string(),
            self.strategy.clone(),
            self.solver.clone(),
            self.toggles.to_string(),
            s.sat_calls.to_string(),
            s.unsat_calls.to_string(),
            s.budget_skips.to_string(),
            s.witness_skips.to_string(),
            s.invariant_row_fixes.to_string(),
            s.invariant_exclusions.to_string(),
            s.wall.as_millis().to_string(),
            self.result_hash.map_or_else(String::new, |h| format!("{h:016x}")),
            self.status.to_string(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_matches_header_width() {
        let row = StatsRow {
            instance: "a".into(),
            n: 3,
            strategy: "lus".into(),
            solver: "batsat".into(),
            toggles: 31,
            stats: RunStats {
                sat_calls: 2,
                unsat_calls: 1,
                ..Default::default()
            },
            result_hash: Some(0xab),
            status: RunStatus::Ok,
        };
        let f = row.fields();
        assert_eq!(f.len(), STATS_HEADER.len());
        assert_eq!(f[12], "00000000000000ab");
        assert_eq!(row.stats.solver_calls(), 3);
    }
}
