//! Run-length states.
//!
//! A state describes paths whose inner runs avoid the global sets `C`, `D`,
//! `E` and whose boundary runs obey their own constraints: `c1` / `e1` are the
//! forbidden remaining lengths of an initial up / flat run, `d1` / `e2` those of
//! a final down / flat run. The flags force the type of the boundary runs
//! (`start_up`, `start_flat`, `end_down`, `end_flat`), which is how a forbidden
//! remaining length 0 is represented.
//!
//! `h` states count all such paths. `H` states count those that leave the
//! axis exactly once; flat-only paths are enumerated in closed form instead,
//! because their single run is the initial and the final run at once.
//!
//! * `h = Flat + H + H(end: down, D) · h_root · H(start: up, C)`
//! * `H` with `start_flat`: peel the first flat step.
//! * `H` with `end_flat`: peel the last flat step.
//! * `H` with `start_up` and `end_down`: `x² · h` of the inside, whose boundary
//!   up/down runs continue the outer ones.
//! * otherwise: split on the type of the missing boundary run.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::{EquationSystem, RawDef, RawTerm, SymbolicError, MAX_STATES};
use crate::sets::StepSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// Any number of returns to the axis.
    Paths,
    /// Exactly one excursion away from the axis.
    Excursion,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RunState {
    pub kind: Kind,
    pub c1: StepSet,
    pub d1: StepSet,
    pub e1: StepSet,
    pub e2: StepSet,
    pub start_up: bool,
    pub start_flat: bool,
    pub end_down: bool,
    pub end_flat: bool,
}

impl RunState {
    /// Clears constraints made irrelevant by the flags.
    fn canonical(mut self) -> Self {
        debug_assert!(!(self.start_up && self.start_flat));
        debug_assert!(!(self.end_down && self.end_flat));
        if self.start_up {
            self.e1 = StepSet::empty();
        }
        if self.start_flat {
            self.c1 = StepSet::empty();
        }
        if self.end_down {
            self.e2 = StepSet::empty();
        }
        if self.end_flat {
            self.d1 = StepSet::empty();
        }
        self
    }

    fn flags(&self) -> String {
        let mut s = String::new();
        for (on, c) in [
            (self.start_up, 'U'),
            (self.start_flat, 'F'),
            (self.end_down, 'D'),
            (self.end_flat, 'f'),
        ] {
            if on {
                s.push(c);
            }
        }
        s
    }
}

impl fmt::Display for RunState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::Paths => 'h',
            Kind::Excursion => 'H',
        };
        write!(
            f,
            "{k}[{};C1={},D1={},E1={},E2={}]",
            self.flags(),
            self.c1,
            self.d1,
            self.e1,
            self.e2
        )
    }
}

/// Boundary flat constraints of the inside of a `U … D` wrapper.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WrapFlats {
    /// The inner boundary flat runs are inner runs of the whole path: `E`.
    #[default]
    Reset,
    /// Keep the outer state's boundary flat constraints (the alternative
    /// reading; it disagrees with brute force and is kept for comparison).
    Inherit,
}

/// How an `H` state decomposes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExcursionCase {
    PeelFirstFlat(RunState),
    PeelLastFlat(RunState),
    Wrap(RunState),
    Split(RunState, RunState),
}

struct Builder {
    c: StepSet,
    d: StepSet,
    e: StepSet,
    wrap: WrapFlats,
}

impl Builder {
    fn root(&self) -> RunState {
        RunState {
            kind: Kind::Paths,
            c1: self.c.clone(),
            d1: self.d.clone(),
            e1: self.e.clone(),
            e2: self.e.clone(),
            start_up: false,
            start_flat: false,
            end_down: false,
            end_flat: false,
        }
    }

    /// `(P1, P3)` of the decomposition `P1 · h_root · P3`.
    fn split_states(&self, s: &RunState) -> (RunState, RunState) {
        let first = RunState {
            kind: Kind::Excursion,
            d1: self.d.clone(),
            end_down: true,
            end_flat: false,
            ..s.clone()
        }
        .canonical();
        let last = RunState {
            kind: Kind::Excursion,
            c1: self.c.clone(),
            start_up: true,
            start_flat: false,
            ..s.clone()
        }
        .canonical();
        (first, last)
    }

    fn excursion_case(&self, s: &RunState) -> ExcursionCase {
        debug_assert_eq!(s.kind, Kind::Excursion);
        if s.start_flat {
            let (one, rest) = s.e1.shift_down();
            ExcursionCase::PeelFirstFlat(
                RunState {
                    c1: self.c.clone(),
                    e1: rest,
                    start_flat: one,
                    ..s.clone()
                }
                .canonical(),
            )
        } else if s.end_flat {
            let (one, rest) = s.e2.shift_down();
            ExcursionCase::PeelLastFlat(
                RunState {
                    d1: self.d.clone(),
                    e2: rest,
                    end_flat: one,
                    ..s.clone()
                }
                .canonical(),
            )
        } else if s.start_up && s.end_down {
            let (c_one, c1) = s.c1.shift_down();
            let (d_one, d1) = s.d1.shift_down();
            let (e1, e2) = match self.wrap {
                WrapFlats::Reset => (self.e.clone(), self.e.clone()),
                WrapFlats::Inherit => (s.e1.clone(), s.e2.clone()),
            };
            ExcursionCase::Wrap(
                RunState {
                    kind: Kind::Paths,
                    c1,
                    d1,
                    e1,
                    e2,
                    start_up: c_one,
                    start_flat: false,
                    end_down: d_one,
                    end_flat: false,
                }
                .canonical(),
            )
        } else if s.start_up {
            ExcursionCase::Split(
                RunState { end_down: true, ..s.clone() }.canonical(),
                RunState { end_flat: true, ..s.clone() }.canonical(),
            )
        } else {
            ExcursionCase::Split(
                RunState { start_up: true, ..s.clone() }.canonical(),
                RunState { start_flat: true, ..s.clone() }.canonical(),
            )
        }
    }

    /// Numerator and denominator of the flat-only paths of an `h` state.
    fn flat_part(&self, s: &RunState) -> (Vec<i64>, Vec<i64>) {
        if s.start_up || s.end_down {
            return (vec![], vec![1]);
        }
        // Lengths a ≥ 1 outside E1 ∪ E2, plus the empty path.
        let banned = s.e1.union(&s.e2).expect("period of a union of canonical sets").remove_zero();
        let period = banned.period() as usize;
        let mut num = vec![1i64; period];
        for (k, c) in banned.generating_numerator().into_iter().enumerate() {
            if k >= num.len() {
                num.resize(k + 1, 0);
            }
            num[k] -= c;
        }
        let mut den = vec![0i64; period + 1];
        den[0] = 1;
        den[period] = -1;
        (num, den)
    }
}

/// Builds the run-length system with the default wrapper convention.
pub fn build_fcde_system(c: &StepSet, d: &StepSet, e: &StepSet) -> Result<EquationSystem, SymbolicError> {
    build_fcde_system_with(c, d, e, WrapFlats::Reset)
}

pub fn build_fcde_system_with(
    c: &StepSet,
    d: &StepSet,
    e: &StepSet,
    wrap: WrapFlats,
) -> Result<EquationSystem, SymbolicError> {
    let b = Builder {
        c: c.remove_zero(),
        d: d.remove_zero(),
        e: e.remove_zero(),
        wrap,
    };
    let root = b.root();
    let mut ids: HashMap<RunState, usize> = HashMap::new();
    let mut states: Vec<RunState> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut intern = |s: RunState, states: &mut Vec<RunState>, queue: &mut VecDeque<usize>| {
        if let Some(&id) = ids.get(&s) {
            return Ok(id);
        }
        let id = states.len();
        if id >= MAX_STATES {
            return Err(SymbolicError::StateCap(MAX_STATES));
        }
        ids.insert(s.clone(), id);
        states.push(s);
        queue.push_back(id);
        Ok(id)
    };
    intern(root, &mut states, &mut queue)?;
    let mut defs: Vec<Option<RawDef>> = Vec::new();
    while let Some(id) = queue.pop_front() {
        let s = states[id].clone();
        let def = match s.kind {
            Kind::Paths => {
                let (flat_num, den) = b.flat_part(&s);
                let excursion = intern(RunState { kind: Kind::Excursion, ..s.clone() }.canonical(), &mut states, &mut queue)?;
                let (first, last) = b.split_states(&s);
                let first = intern(first, &mut states, &mut queue)?;
                let last = intern(last, &mut states, &mut queue)?;
                let mut terms = vec![
                    RawTerm::new(den.clone(), vec![excursion]),
                    RawTerm::new(den.clone(), vec![first, 0, last]),
                ];
                if !flat_num.is_empty() {
                    terms.push(RawTerm::new(flat_num, vec![]));
                }
                RawDef { terms, den }
            }
            Kind::Excursion => {
                let terms = match b.excursion_case(&s) {
                    ExcursionCase::PeelFirstFlat(t) | ExcursionCase::PeelLastFlat(t) => {
                        vec![RawTerm::new(vec![0, 1], vec![intern(t, &mut states, &mut queue)?])]
                    }
                    ExcursionCase::Wrap(t) => {
                        vec![RawTerm::new(vec![0, 0, 1], vec![intern(t, &mut states, &mut queue)?])]
                    }
                    ExcursionCase::Split(t, u) => vec![
                        RawTerm::new(vec![1], vec![intern(t, &mut states, &mut queue)?]),
                        RawTerm::new(vec![1], vec![intern(u, &mut states, &mut queue)?]),
                    ],
                };
                RawDef { terms, den: vec![1] }
            }
        };
        if defs.len() <= id {
            defs.resize(id + 1, None);
        }
        defs[id] = Some(def);
    }
    let names = states.iter().map(ToString::to_string).collect();
    Ok(EquationSystem::from_raw(
        names,
        defs.into_iter().map(|d| d.expect("every state expanded")).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Series;
    use crate::oracle;
    use crate::sets::RestrictionSpec;

    fn set(s: &str) -> StepSet {
        s.parse().unwrap()
    }

    fn check_against_oracle(c: &str, d: &str, e: &str, wrap: WrapFlats) -> bool {
        let (c, d, e) = (set(c), set(d), set(e));
        let sys = build_fcde_system_with(&c, &d, &e, wrap).unwrap();
        let spec = RestrictionSpec::runs(c, d, e);
        let expected = oracle::sequence(12, &spec).unwrap();
        sys.root_series(13).unwrap() == Series::from_counts(&expected)
    }

    #[test]
    fn series_match_oracle() {
        for (c, d, e) in [
            ("{}", "{}", "{}"),
            ("{1}", "{1}", "{1}"),
            ("{1,2,3}", "{}", "{}"),
            ("{}", "{1}", "{1}"),
            ("{2}", "{}", "{1}"),
            ("{2*r+1}", "{2*r+1}", "{2*r+1}"),
            ("{2*r+1}", "{}", "{2*r+2}"),
            ("{}", "{}", "r+1"),
            ("{3}", "{1,2}", "{2,3}"),
        ] {
            assert!(check_against_oracle(c, d, e, WrapFlats::Reset), "C={c} D={d} E={e}");
        }
    }

    #[test]
    fn wrapper_resets_boundary_flats() {
        assert!(check_against_oracle("{2}", "{}", "{1}", WrapFlats::Reset));
        assert!(!check_against_oracle("{2}", "{}", "{1}", WrapFlats::Inherit));
    }

    #[test]
    fn excursion_cases_cover_legal_flags() {
        let b = Builder {
            c: set("{1}"),
            d: set("{2}"),
            e: set("{1,3}"),
            wrap: WrapFlats::Reset,
        };
        let mut seen = 0;
        for (su, sf) in [(false, false), (true, false), (false, true)] {
            for (ed, ef) in [(false, false), (true, false), (false, true)] {
                let s = RunState {
                    kind: Kind::Excursion,
                    start_up: su,
                    start_flat: sf,
                    end_down: ed,
                    end_flat: ef,
                    ..b.root()
                }
                .canonical();
                let case = b.excursion_case(&s);
                let expected = if sf {
                    "first"
                } else if ef {
                    "last"
                } else if su && ed {
                    "wrap"
                } else {
                    "split"
                };
                let got = match case {
                    ExcursionCase::PeelFirstFlat(_) => "first",
                    ExcursionCase::PeelLastFlat(_) => "last",
                    ExcursionCase::Wrap(_) => "wrap",
                    ExcursionCase::Split(..) => "split",
                };
                assert_eq!(got, expected);
                seen += 1;
            }
        }
        assert_eq!(seen, 9);
    }

    #[test]
    fn finitely_many_states() {
        for (c, d, e) in [("{1,2,3,4,5,6,7,8}", "{2,5,8}", "{1,8}"), ("{4*r+3}", "{3*r+1}", "{2*r}")] {
            let sys = build_fcde_system(&set(c), &set(d), &set(e)).unwrap();
            assert!(sys.len() < MAX_STATES);
        }
    }
}
