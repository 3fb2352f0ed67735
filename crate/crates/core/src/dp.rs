//! Memoized lattice-walk counts by the type of the final run.
//!
//! `d(m,n)`, `u(m,n)`, `f(m,n)` count restricted walks from `(0,0)` to `(m,n)`
//! that stay weakly above the axis and end with a down, up or flat step. The
//! refined tables `u_d`, `d_u`, `f_u`, `f_d` record which walks may still be
//! extended by the opposite vertical step without creating a forbidden peak or
//! valley. The restricted sequence is `a(m) = d(m,0) + f(m,0)`.

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::sets::RestrictionSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DpError {
    #[error("peak height 0 is not supported by the numeric recurrences; use the `fab` route")]
    ZeroPeak,
    #[error("valley height 0 is not supported by the numeric recurrences; use the `fab` route")]
    ZeroValley,
}

/// Which of the seven tables an entry belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Walk {
    /// ends with an up-step
    U,
    /// ends with a down-step
    D,
    /// ends with a flat-step
    F,
    /// ends with an up-step whose height is not a forbidden peak
    UD,
    /// ends with a down-step whose height is not a forbidden valley
    DU,
    /// ends with a flat run that may be followed by an up-step
    FU,
    /// ends with a flat run that may be followed by a down-step
    FD,
}

const KINDS: usize = 7;

fn slot(kind: Walk) -> usize {
    match kind {
        Walk::U => 0,
        Walk::D => 1,
        Walk::F => 2,
        Walk::UD => 3,
        Walk::DU => 4,
        Walk::FU => 5,
        Walk::FD => 6,
    }
}

/// A growable table of restricted counts for one [`RestrictionSpec`].
#[derive(Debug, Clone)]
pub struct DpTable {
    spec: RestrictionSpec,
    // tables[kind][m][n] for 0 <= n <= m
    tables: [Vec<Vec<BigUint>>; KINDS],
}

impl DpTable {
    pub fn new(spec: RestrictionSpec) -> Result<Self, DpError> {
        if spec.peaks.contains(0) {
            return Err(DpError::ZeroPeak);
        }
        if spec.valleys.contains(0) {
            return Err(DpError::ZeroValley);
        }
        let mut table = DpTable {
            spec,
            tables: Default::default(),
        };
        table.push_row_zero();
        Ok(table)
    }

    /// The unrestricted recurrences.
    pub fn unrestricted() -> Self {
        DpTable::new(RestrictionSpec::default()).expect("empty spec is accepted")
    }

    pub fn spec(&self) -> &RestrictionSpec {
        &self.spec
    }

    /// Largest `m` computed so far.
    pub fn max_length(&self) -> usize {
        self.tables[0].len() - 1
    }

    fn push_row_zero(&mut self) {
        for (k, table) in self.tables.iter_mut().enumerate() {
            let start = if k == slot(Walk::D) || k == slot(Walk::DU) {
                BigUint::from(1u32)
            } else {
                BigUint::zero()
            };
            table.push(vec![start]);
        }
    }

    fn at(&self, kind: Walk, m: usize, n: usize) -> &BigUint {
        static ZERO: std::sync::OnceLock<BigUint> = std::sync::OnceLock::new();
        let row = &self.tables[slot(kind)][m];
        row.get(n).unwrap_or_else(|| ZERO.get_or_init(BigUint::zero))
    }

    /// Entry of one table, extending the table as needed.
    pub fn get(&mut self, kind: Walk, m: usize, n: usize) -> BigUint {
        self.extend_to(m);
        self.at(kind, m, n).clone()
    }

    pub fn extend_to(&mut self, length: usize) {
        while self.max_length() < length {
            self.push_row();
        }
    }

    fn push_row(&mut self) {
        let m = self.max_length() + 1;
        let spec = &self.spec;
        let mut rows: [Vec<BigUint>; KINDS] = Default::default();
        let allowed = |set: &crate::sets::StepSet| -> Vec<bool> {
            (0..=m as u64).map(|r| !set.contains(r)).collect()
        };
        let (down_ok, flat_ok, up_ok) = (
            allowed(&spec.down_runs),
            allowed(&spec.flat_runs),
            allowed(&spec.up_runs),
        );
        for n in 0..=m {
            let mut d = BigUint::zero();
            let mut f = BigUint::zero();
            let mut u = BigUint::zero();
            let mut fu = BigUint::zero();
            let mut fd = BigUint::zero();
            for r in 1..=m {
                let prev = m - r;
                if n + r <= prev && down_ok[r] {
                    d += self.at(Walk::UD, prev, n + r);
                    d += self.at(Walk::FD, prev, n + r);
                }
                if n <= prev && flat_ok[r] {
                    f += self.at(Walk::D, prev, n);
                    f += self.at(Walk::U, prev, n);
                    fu += self.at(Walk::U, prev, n);
                    fu += self.at(Walk::DU, prev, n);
                    fd += self.at(Walk::UD, prev, n);
                    fd += self.at(Walk::D, prev, n);
                }
                if r <= n && up_ok[r] {
                    u += self.at(Walk::DU, prev, n - r);
                    u += self.at(Walk::FU, prev, n - r);
                }
            }
            let height = n as u64;
            let ud = if spec.peaks.contains(height) { BigUint::zero() } else { u.clone() };
            let du = if spec.valleys.contains(height) { BigUint::zero() } else { d.clone() };
            for (kind, value) in [
                (Walk::U, u),
                (Walk::D, d),
                (Walk::F, f),
                (Walk::UD, ud),
                (Walk::DU, du),
                (Walk::FU, fu),
                (Walk::FD, fd),
            ] {
                rows[slot(kind)].push(value);
            }
        }
        for (table, row) in self.tables.iter_mut().zip(rows) {
            table.push(row);
        }
    }

    /// `a(m) = d(m,0) + f(m,0)` for `m = 0..=length`.
    pub fn sequence(&mut self, length: usize) -> Vec<BigUint> {
        self.extend_to(length);
        (0..=length)
            .map(|m| self.at(Walk::D, m, 0) + self.at(Walk::F, m, 0))
            .collect()
    }
}

/// The first `length + 1` terms of the restricted counting sequence.
pub fn seq_abcde(spec: &RestrictionSpec, length: usize) -> Result<Vec<BigUint>, DpError> {
    Ok(DpTable::new(spec.clone())?.sequence(length))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::sets::StepSet;

    fn set(s: &str) -> StepSet {
        s.parse().unwrap()
    }

    fn nums(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn initial_conditions() {
        let mut t = DpTable::unrestricted();
        assert_eq!(t.get(Walk::D, 0, 0), BigUint::from(1u32));
        assert_eq!(t.get(Walk::U, 0, 0), BigUint::zero());
        assert_eq!(t.get(Walk::F, 0, 0), BigUint::zero());
        assert_eq!(t.get(Walk::D, 3, 5), BigUint::zero());
    }

    #[test]
    fn length_two_entries() {
        let mut t = DpTable::unrestricted();
        assert_eq!(t.get(Walk::D, 2, 0), BigUint::from(1u32));
        assert_eq!(t.get(Walk::F, 2, 0), BigUint::from(1u32));
        assert_eq!(t.get(Walk::U, 2, 2), BigUint::from(1u32));
    }

    #[test]
    fn motzkin_numbers() {
        let seq = seq_abcde(&RestrictionSpec::default(), 10).unwrap();
        assert_eq!(seq, nums(&[1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188]));
    }

    #[test]
    fn unit_runs_forbidden() {
        let spec = RestrictionSpec::runs(set("{1}"), set("{1}"), set("{1}"));
        assert_eq!(
            seq_abcde(&spec, 11).unwrap(),
            nums(&[1, 0, 1, 1, 2, 1, 5, 4, 12, 13, 34, 38])
        );
    }

    #[test]
    fn odd_peaks_and_valleys_forbidden() {
        let spec = RestrictionSpec::peaks_valleys(set("{2*r+1}"), set("{2*r+1}"));
        assert_eq!(
            seq_abcde(&spec, 11).unwrap(),
            nums(&[1, 1, 1, 1, 2, 6, 16, 36, 73, 145, 301, 661])
        );
    }

    #[test]
    fn peak_height_one_forbidden_at_length_three() {
        let spec = RestrictionSpec::peaks_valleys(set("{1}"), StepSet::empty());
        // Only FFF survives: UFD is a peak of height 1 as well.
        let expected = oracle::count_restricted(3, &spec).unwrap();
        assert_eq!(expected, BigUint::from(1u32));
        assert_eq!(seq_abcde(&spec, 3).unwrap()[3], expected);
    }

    #[test]
    fn no_flat_steps_gives_catalan() {
        let spec = RestrictionSpec::runs(StepSet::empty(), StepSet::empty(), set("{r+1}"));
        let seq = seq_abcde(&spec, 30).unwrap();
        let catalan = nums(&[
            1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012, 742900, 2674440,
            9694845,
        ]);
        for (n, a) in seq.iter().enumerate() {
            if n % 2 == 1 {
                assert!(a.is_zero());
            } else {
                assert_eq!(*a, catalan[n / 2]);
            }
        }
    }

    #[test]
    fn rejects_height_zero() {
        let a0 = RestrictionSpec::peaks_valleys(set("{0}"), StepSet::empty());
        assert_eq!(seq_abcde(&a0, 3).unwrap_err(), DpError::ZeroPeak);
        let b0 = RestrictionSpec::peaks_valleys(StepSet::empty(), set("{2*r}"));
        assert_eq!(seq_abcde(&b0, 3).unwrap_err(), DpError::ZeroValley);
    }

    #[test]
    fn unrestricted_matches_oracle() {
        let spec = RestrictionSpec::default();
        let seq = seq_abcde(&spec, 14).unwrap();
        for (m, a) in seq.iter().enumerate() {
            assert_eq!(*a, oracle::count_restricted(m, &spec).unwrap());
        }
    }

    #[test]
    fn extending_keeps_prefix() {
        let spec = RestrictionSpec::runs(set("{2}"), StepSet::empty(), set("{1,3}"));
        let mut t = DpTable::new(spec).unwrap();
        let short = t.sequence(8);
        let long = t.sequence(20);
        assert_eq!(&long[..9], &short[..]);
    }
}
