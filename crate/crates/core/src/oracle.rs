//! Brute-force reference: enumerate every Motzkin path of a given length and
//! test the restrictions by scanning the step string directly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use crate::sets::{RestrictionSpec, StepSet};

/// Default cap on path length for exhaustive enumeration.
pub const DEFAULT_GUARD: usize = 18;

/// Environment variable overriding [`DEFAULT_GUARD`].
pub const GUARD_ENV: &str = "MOTZKIN_ORACLE_GUARD";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("length {n} exceeds the enumeration guard {guard}")]
    TooLong { n: usize, guard: usize },
    #[error("invalid step `{0}`")]
    BadStep(char),
    #[error("steps do not form a Motzkin path")]
    NotMotzkin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    U,
    D,
    F,
}

impl Step {
    fn letter(self) -> char {
        match self {
            Step::U => 'U',
            Step::D => 'D',
            Step::F => 'F',
        }
    }
}

/// A walk from `(0,0)` to `(n,0)` that never goes below the axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MotzkinPath(Vec<Step>);

impl MotzkinPath {
    pub fn new(steps: Vec<Step>) -> Result<Self, OracleError> {
        let mut height = 0i64;
        for step in &steps {
            height += match step {
                Step::U => 1,
                Step::D => -1,
                Step::F => 0,
            };
            if height < 0 {
                return Err(OracleError::NotMotzkin);
            }
        }
        if height != 0 {
            return Err(OracleError::NotMotzkin);
        }
        Ok(MotzkinPath(steps))
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn features(&self) -> Features {
        features(&self.0)
    }
}

impl fmt::Display for MotzkinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.0 {
            write!(f, "{}", step.letter())?;
        }
        Ok(())
    }
}

impl FromStr for MotzkinPath {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let steps = s
            .chars()
            .map(|c| match c {
                'U' => Ok(Step::U),
                'D' => Ok(Step::D),
                'F' => Ok(Step::F),
                other => Err(OracleError::BadStep(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        MotzkinPath::new(steps)
    }
}

/// Peak/valley heights and run lengths of a path, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Features {
    pub peaks: Vec<u64>,
    pub valleys: Vec<u64>,
    pub up_runs: Vec<u64>,
    pub down_runs: Vec<u64>,
    pub flat_runs: Vec<u64>,
    pub is_flat_only: bool,
}

impl Features {
    /// True iff the path avoids every restriction in `spec`. A path made only
    /// of flat steps (the empty path included) counts as having a peak at
    /// height 0.
    pub fn satisfies(&self, spec: &RestrictionSpec) -> bool {
        let avoids = |values: &[u64], set: &StepSet| values.iter().all(|&v| !set.contains(v));
        !(self.is_flat_only && spec.peaks.contains(0))
            && avoids(&self.peaks, &spec.peaks)
            && avoids(&self.valleys, &spec.valleys)
            && avoids(&self.up_runs, &spec.up_runs)
            && avoids(&self.down_runs, &spec.down_runs)
            && avoids(&self.flat_runs, &spec.flat_runs)
    }
}

fn features(steps: &[Step]) -> Features {
    let mut out = Features {
        is_flat_only: steps.iter().all(|&s| s == Step::F),
        ..Default::default()
    };
    let mut height = 0u64;
    for (i, &step) in steps.iter().enumerate() {
        match step {
            Step::U => height += 1,
            Step::D => height -= 1,
            Step::F => {}
        }
        if step == Step::F {
            continue;
        }
        let next = steps[i + 1..].iter().find(|&&s| s != Step::F);
        match (step, next) {
            (Step::U, Some(Step::D)) => out.peaks.push(height),
            (Step::D, Some(Step::U)) => out.valleys.push(height),
            _ => {}
        }
    }
    let mut i = 0;
    while i < steps.len() {
        let j = steps[i..]
            .iter()
            .position(|&s| s != steps[i])
            .map_or(steps.len(), |k| i + k);
        let len = (j - i) as u64;
        match steps[i] {
            Step::U => out.up_runs.push(len),
            Step::D => out.down_runs.push(len),
            Step::F => out.flat_runs.push(len),
        }
        i = j;
    }
    for v in [
        &mut out.peaks,
        &mut out.valleys,
        &mut out.up_runs,
        &mut out.down_runs,
        &mut out.flat_runs,
    ] {
        v.sort_unstable();
    }
    out
}

/// Reads the enumeration guard from [`GUARD_ENV`], defaulting to [`DEFAULT_GUARD`].
pub fn guard() -> usize {
    std::env::var(GUARD_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_GUARD)
}

fn check_guard(n: usize) -> Result<(), OracleError> {
    let guard = guard();
    if n > guard {
        return Err(OracleError::TooLong { n, guard });
    }
    Ok(())
}

/// Calls `visit` on every Motzkin path of length `n`, in lexicographic order
/// with `U < D < F`.
fn for_each_path(n: usize, visit: &mut dyn FnMut(&[Step])) {
    fn walk(n: usize, height: usize, steps: &mut Vec<Step>, visit: &mut dyn FnMut(&[Step])) {
        let remaining = n - steps.len();
        if remaining == 0 {
            if height == 0 {
                visit(steps);
            }
            return;
        }
        if height < remaining {
            steps.push(Step::U);
            walk(n, height + 1, steps, visit);
            steps.pop();
        }
        if height > 0 {
            steps.push(Step::D);
            walk(n, height - 1, steps, visit);
            steps.pop();
        }
        if height < remaining {
            steps.push(Step::F);
            walk(n, height, steps, visit);
            steps.pop();
        }
    }
    walk(n, 0, &mut Vec::with_capacity(n), visit);
}

pub fn count_restricted(n: usize, spec: &RestrictionSpec) -> Result<BigUint, OracleError> {
    check_guard(n)?;
    let mut count = 0u64;
    for_each_path(n, &mut |steps| {
        if features(steps).satisfies(spec) {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

pub fn list_restricted(n: usize, spec: &RestrictionSpec) -> Result<Vec<MotzkinPath>, OracleError> {
    check_guard(n)?;
    let mut out = Vec::new();
    for_each_path(n, &mut |steps| {
        if features(steps).satisfies(spec) {
            out.push(MotzkinPath(steps.to_vec()));
        }
    });
    Ok(out)
}

/// `count_restricted` for every length `0..=n`.
pub fn sequence(n: usize, spec: &RestrictionSpec) -> Result<Vec<BigUint>, OracleError> {
    (0..=n).map(|m| count_restricted(m, spec)).collect()
}
