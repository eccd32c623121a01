//! Verification reports.

use std::fmt;

use serde::Serialize;

use crate::format::sig;

/// One checked statement: how many instances ran and the worst residual.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub instances: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    /// Instances whose residual exceeded the tolerance, or that failed outright.
    pub failures: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
    pub wall_time_secs: f64,
}

impl VerificationReport {
    pub fn new(suite: &str, seed: u64, trials: usize, checks: Vec<CheckRecord>, wall: f64) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self {
            suite: suite.to_string(),
            seed,
            trials,
            checks,
            pass,
            wall_time_secs: wall,
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.checks {
            writeln!(
                f,
                "{} {:width$}  instances={:<5} max_residual={:<10} tol={}{}",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.instances,
                sig(c.max_residual, 3),
                sig(c.tolerance, 3),
                if c.failures > 0 {
                    format!("  failures={}", c.failures)
                } else {
                    String::new()
                },
            )?;
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        write!(
            f,
            "suite {}: {} ({} checks, {failed} failed, seed {}, {:.2}s)",
            self.suite,
            if self.pass { "pass" } else { "FAIL" },
            self.checks.len(),
            self.seed,
            self.wall_time_secs
        )
    }
}

/// Accumulates residuals for one check.
#[derive(Clone, Debug)]
pub struct Check {
    id: String,
    tolerance: f64,
    instances: usize,
    worst: f64,
    failures: usize,
}

impl Check {
    pub fn new(id: &str, tolerance: f64) -> Self {
        Self {
            id: id.to_string(),
            tolerance,
            instances: 0,
            worst: 0.0,
            failures: 0,
        }
    }

    /// Records one instance; NaN counts as a failure.
    pub fn record(&mut self, residual: f64) {
        self.instances += 1;
        if residual.is_finite() {
            self.worst = self.worst.max(residual);
        }
        if !(residual <= self.tolerance) {
            self.failures += 1;
        }
    }

    /// Records an instance that failed outright (wrong shape, solver error).
    pub fn fail(&mut self) {
        self.instances += 1;
        self.failures += 1;
    }

    pub fn require(&mut self, ok: bool) {
        if ok {
            self.record(0.0);
        } else {
            self.fail();
        }
    }

    pub fn finish(self) -> CheckRecord {
        CheckRecord {
            pass: self.failures == 0 && self.instances > 0,
            id: self.id,
            instances: self.instances,
            max_residual: self.worst,
            tolerance: self.tolerance,
            failures: self.failures,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_passes_within_tolerance() {
        let mut c = Check::new("x", 1e-9);
        c.record(1e-12);
        c.record(5e-10);
        let r = c.finish();
        assert!(r.pass);
        assert_eq!(r.instances, 2);
        assert_eq!(r.max_residual, 5e-10);
    }

    #[test]
    fn check_fails_on_excess_or_nan() {
        let mut c = Check::new("x", 1e-9);
        c.record(1e-3);
        assert!(!c.finish().pass);
        let mut c = Check::new("x", 1e-9);
        c.record(f64::NAN);
        let r = c.finish();
        assert!(!r.pass && r.max_residual == 0.0);
        assert!(!Check::new("empty", 1.0).finish().pass);
    }

    #[test]
    fn report_fails_if_any_check_fails() {
        let mut ok = Check::new("ok", 1.0);
        ok.record(0.0);
        let mut bad = Check::new("bad", 1.0);
        bad.fail();
        let r = VerificationReport::new("s", 1, 10, vec![ok.finish(), bad.finish()], 0.0);
        assert!(!r.pass);
        assert!(r.to_string().contains("FAIL bad"));
    }
}
