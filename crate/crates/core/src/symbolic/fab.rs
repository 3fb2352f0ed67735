//! Peak and valley height states.
//!
//! For a state `(A, B)` exactly one rule applies:
//!
//! 1. `0 ∈ A`: `f(A,B) = f(A∖0, B) − 1/(1−x)`; flat runs are exactly the
//!    paths with a peak at height 0.
//! 2. `0 ∈ B`: the path returns to the axis once, so
//!    `f(A,B) = 1/(1−x) + x²/(1−x)² · f(A−1, (B∖0)−1)`.
//! 3. otherwise, splitting at the first return,
//!    `f(A,B) = 1/(1−x) + x²/(1−x) · f(A,B) · f(A−1, B−1)`.

use std::collections::{HashMap, VecDeque};

use super::{EquationSystem, RawDef, RawTerm, SymbolicError, MAX_STATES};
use crate::sets::StepSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PvState {
    pub peaks: StepSet,
    pub valleys: StepSet,
}

impl std::fmt::Display for PvState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "f[A={},B={}]", self.peaks, self.valleys)
    }
}

/// The rule applied to a state, with its unique child.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PvCase {
    RemoveFlat(PvState),
    SingleReturn(PvState),
    FirstReturn(PvState),
}

impl PvState {
    pub fn case(&self) -> PvCase {
        if self.peaks.contains(0) {
            PvCase::RemoveFlat(PvState {
                peaks: self.peaks.remove_zero(),
                valleys: self.valleys.clone(),
            })
        } else if self.valleys.contains(0) {
            PvCase::SingleReturn(PvState {
                peaks: self.peaks.decrement().expect("0 not a peak"),
                valleys: self.valleys.remove_zero().decrement().expect("zero removed"),
            })
        } else {
            PvCase::FirstReturn(PvState {
                peaks: self.peaks.decrement().expect("0 not a peak"),
                valleys: self.valleys.decrement().expect("0 not a valley"),
            })
        }
    }
}

/// Builds the chain of states from `(A, B)`; it ends in a cycle (for example
/// the self-loop at `(∅, ∅)`).
pub fn build_fab_system(a: &StepSet, b: &StepSet) -> Result<EquationSystem, SymbolicError> {
    let root = PvState {
        peaks: a.clone(),
        valleys: b.clone(),
    };
    let mut ids: HashMap<PvState, usize> = HashMap::new();
    let mut states = vec![root.clone()];
    ids.insert(root, 0);
    let mut queue = VecDeque::from([0usize]);
    let mut defs: Vec<Option<RawDef>> = vec![None];
    while let Some(id) = queue.pop_front() {
        let case = states[id].case();
        let child = match &case {
            PvCase::RemoveFlat(c) | PvCase::SingleReturn(c) | PvCase::FirstReturn(c) => c.clone(),
        };
        let cid = match ids.get(&child) {
            Some(&c) => c,
            None => {
                let c = states.len();
                if c >= MAX_STATES {
                    return Err(SymbolicError::StateCap(MAX_STATES));
                }
                ids.insert(child.clone(), c);
                states.push(child);
                defs.push(None);
                queue.push_back(c);
                c
            }
        };
        defs[id] = Some(match case {
            // v = v1 − 1/(1−x)  ⇒  (1−x)v = (1−x)v1 − 1
            PvCase::RemoveFlat(_) => RawDef {
                terms: vec![RawTerm::new(vec![1, -1], vec![cid]), RawTerm::new(vec![-1], vec![])],
                den: vec![1, -1],
            },
            // (1−x)²v = (1−x) + x²v1
            PvCase::SingleReturn(_) => RawDef {
                terms: vec![RawTerm::new(vec![1, -1], vec![]), RawTerm::new(vec![0, 0, 1], vec![cid])],
                den: vec![1, -2, 1],
            },
            // (1−x)v = 1 + x²·v·v1
            PvCase::FirstReturn(_) => RawDef {
                terms: vec![RawTerm::new(vec![1], vec![]), RawTerm::new(vec![0, 0, 1], vec![id, cid])],
                den: vec![1, -1],
            },
        });
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
    use crate::algebra::{parse_bivariate, parse_poly};
    use crate::oracle;
    use crate::sets::RestrictionSpec;

    fn set(s: &str) -> StepSet {
        s.parse().unwrap()
    }

    #[test]
    fn unrestricted_is_a_self_loop() {
        let sys = build_fab_system(&StepSet::empty(), &StepSet::empty()).unwrap();
        assert_eq!(sys.len(), 1);
        assert_eq!(sys.names(), ["f[A={},B={}]"]);
        let eq = parse_poly("(1-x)*f - 1 - x^2*f^2", &["f", "x"]).unwrap();
        assert_eq!(sys.equations(), vec![eq]);
        assert_eq!(
            sys.eliminate().unwrap(),
            parse_bivariate("x^2*P^2 + (x-1)*P + 1").unwrap()
        );
    }

    #[test]
    fn odd_heights_cycle() {
        let odd = set("{2*r+1}");
        let sys = build_fab_system(&odd, &odd).unwrap();
        assert_eq!(sys.len(), 3);
        let root = PvState { peaks: odd.clone(), valleys: odd.clone() };
        let PvCase::FirstReturn(s1) = root.case() else { panic!() };
        assert_eq!(s1, PvState { peaks: set("{2*r}"), valleys: set("{2*r}") });
        let PvCase::RemoveFlat(s2) = s1.case() else { panic!() };
        assert_eq!(s2, PvState { peaks: set("{2*r+2}"), valleys: set("{2*r}") });
        let PvCase::SingleReturn(s3) = s2.case() else { panic!() };
        assert_eq!(s3, root);
    }

    #[test]
    fn exactly_one_case_with_zero_in_both() {
        let s = PvState { peaks: set("{0,2}"), valleys: set("{0}") };
        assert!(matches!(s.case(), PvCase::RemoveFlat(_)));
    }

    #[test]
    fn system_series_matches_oracle_with_zero_heights() {
        for (a, b) in [("{0}", "{}"), ("{0,2}", "{0}"), ("{}", "{0,1}"), ("{2*r}", "{3}")] {
            let (a, b) = (set(a), set(b));
            let sys = build_fab_system(&a, &b).unwrap();
            let spec = RestrictionSpec::peaks_valleys(a, b);
            let expected = oracle::sequence(11, &spec).unwrap();
            let got = sys.root_series(12).unwrap();
            assert_eq!(got, crate::algebra::Series::from_counts(&expected), "{spec}");
        }
    }
}
