//! Forbidden-value sets: finite sets of non-negative integers plus unions of
//! arithmetic progressions `{stride*r + offset : r >= 0}`.
//!
//! Every [`StepSet`] is stored in canonical form, so structural equality is set
//! equality. The canonical form is computed from the periodic structure of the
//! set: past some threshold `T` membership repeats with a minimal period `L`;
//! members below `T` are kept as the finite part and each member in
//! `[T, T + L)` becomes one progression of stride `L`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

/// Largest period accepted when combining progressions of different strides.
pub const MAX_PERIOD: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetError {
    #[error("progression stride must be at least 1")]
    ZeroStride,
    #[error("cannot decrement a set containing 0")]
    ContainsZero,
    #[error("combined period {0} exceeds the supported maximum")]
    PeriodTooLarge(u64),
    #[error("invalid set literal `{literal}`: {reason}")]
    Parse { literal: String, reason: String },
}

/// The progression `{stride*r + offset : r >= 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Progression {
    pub stride: u64,
    pub offset: u64,
}

impl Progression {
    pub fn new(stride: u64, offset: u64) -> Result<Self, SetError> {
        if stride == 0 {
            return Err(SetError::ZeroStride);
        }
        Ok(Progression { stride, offset })
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.offset && (n - self.offset) % self.stride == 0
    }
}

/// A set of non-negative integers in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StepSet {
    finite: Vec<u64>,
    aps: Vec<Progression>,
}

/// Hashable identity of a [`StepSet`]; equal keys iff equal integer sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetKey(Vec<u64>, Vec<(u64, u64)>);

impl StepSet {
    pub fn empty() -> Self {
        StepSet::default()
    }

    pub fn finite<I: IntoIterator<Item = u64>>(items: I) -> Self {
        let mut finite: Vec<u64> = items.into_iter().collect();
        finite.sort_unstable();
        finite.dedup();
        StepSet {
            finite,
            aps: Vec::new(),
        }
    }

    /// Builds the canonical set denoting `finite ∪ ⋃ aps`.
    pub fn new(finite: Vec<u64>, aps: Vec<Progression>) -> Result<Self, SetError> {
        if aps.iter().any(|ap| ap.stride == 0) {
            return Err(SetError::ZeroStride);
        }
        if aps.is_empty() {
            return Ok(StepSet::finite(finite));
        }
        let mut full_period = 1u64;
        for ap in &aps {
            full_period = full_period.lcm(&ap.stride);
            if full_period > MAX_PERIOD {
                return Err(SetError::PeriodTooLarge(full_period));
            }
        }
        let raw = |n: u64| finite.contains(&n) || aps.iter().any(|ap| ap.contains(n));
        let start = finite
            .iter()
            .map(|&f| f + 1)
            .chain(aps.iter().map(|ap| ap.offset))
            .max()
            .unwrap_or(0);

        // Beyond `start` the set repeats with `full_period`; find the smallest
        // divisor of it that is still a period there.
        let period = (1..=full_period)
            .filter(|d| full_period % d == 0)
            .find(|&d| (start..start + full_period).all(|n| raw(n) == raw(n + d)))
            .unwrap_or(full_period);

        let mut threshold = start;
        while threshold > 0 && raw(threshold - 1) == raw(threshold - 1 + period) {
            threshold -= 1;
        }

        let finite = (0..threshold).filter(|&n| raw(n)).collect();
        let aps = (threshold..threshold + period)
            .filter(|&n| raw(n))
            .map(|offset| Progression {
                stride: period,
                offset,
            })
            .collect();
        Ok(StepSet { finite, aps })
    }

    pub fn finite_part(&self) -> &[u64] {
        &self.finite
    }

    pub fn progressions(&self) -> &[Progression] {
        &self.aps
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.aps.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.aps.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.finite.binary_search(&n).is_ok() || self.aps.iter().any(|ap| ap.contains(n))
    }

    /// `self ∖ {0}`.
    pub fn remove_zero(&self) -> StepSet {
        if !self.contains(0) {
            return self.clone();
        }
        let finite = self.finite.iter().copied().filter(|&n| n != 0).collect();
        let aps = self
            .aps
            .iter()
            .map(|ap| {
                if ap.offset == 0 {
                    Progression {
                        stride: ap.stride,
                        offset: ap.stride,
                    }
                } else {
                    *ap
                }
            })
            .collect();
        StepSet::new(finite, aps).expect("strides unchanged")
    }

    /// `{a - 1 : a ∈ self}`; the set must not contain 0.
    pub fn decrement(&self) -> Result<StepSet, SetError> {
        if self.contains(0) {
            return Err(SetError::ContainsZero);
        }
        let finite = self.finite.iter().map(|&n| n - 1).collect();
        let aps = self
            .aps
            .iter()
            .map(|ap| Progression {
                stride: ap.stride,
                offset: ap.offset - 1,
            })
            .collect();
        StepSet::new(finite, aps)
    }

    /// Splits `self - 1` into "was 1 a member" and the remaining positive part.
    /// This is the shift applied to a boundary set after one step is peeled off.
    pub fn shift_down(&self) -> (bool, StepSet) {
        let shifted = self
            .remove_zero()
            .decrement()
            .expect("zero removed before decrement");
        (shifted.contains(0), shifted.remove_zero())
    }

    pub fn canonical_key(&self) -> SetKey {
        SetKey(
            self.finite.clone(),
            self.aps.iter().map(|ap| (ap.stride, ap.offset)).collect(),
        )
    }

    pub fn union(&self, other: &StepSet) -> Result<StepSet, SetError> {
        let finite = self.finite.iter().chain(&other.finite).copied().collect();
        let aps = self.aps.iter().chain(&other.aps).copied().collect();
        StepSet::new(finite, aps)
    }

    /// The common stride of the progressions, or 1 for a finite set.
    pub fn period(&self) -> u64 {
        self.aps.first().map_or(1, |ap| ap.stride)
    }

    /// Numerator of `Σ_{n ∈ self} x^n` over the denominator `1 - x^period()`,
    /// as dense integer coefficients.
    pub fn generating_numerator(&self) -> Vec<i64> {
        let period = self.period() as usize;
        let top = self
            .finite
            .iter()
            .map(|&f| f as usize + period)
            .chain(self.aps.iter().map(|ap| ap.offset as usize))
            .max()
            .unwrap_or(0);
        let mut numer = vec![0i64; top + 1];
        for &f in &self.finite {
            numer[f as usize] += 1;
            numer[f as usize + period] -= 1;
        }
        for ap in &self.aps {
            numer[ap.offset as usize] += 1;
        }
        while numer.last() == Some(&0) {
            numer.pop();
        }
        numer
    }

    /// Largest element that must be inspected to know the set completely.
    pub fn horizon(&self) -> u64 {
        self.finite
            .last()
            .copied()
            .unwrap_or(0)
            .max(self.aps.iter().map(|ap| ap.offset + ap.stride).max().unwrap_or(0))
    }
}

impl fmt::Display for StepSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<String> = self.finite.iter().map(|n| n.to_string()).collect();
        for ap in &self.aps {
            let item = match (ap.stride, ap.offset) {
                (1, 0) => "r".to_string(),
                (1, b) => format!("r+{b}"),
                (a, 0) => format!("{a}*r"),
                (a, b) => format!("{a}*r+{b}"),
            };
            items.push(item);
        }
        write!(f, "{{{}}}", items.join(","))
    }
}

impl FromStr for StepSet {
    type Err = SetError;

    fn from_str(literal: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| SetError::Parse {
            literal: literal.to_string(),
            reason: reason.to_string(),
        };
        let mut body = literal.trim();
        if let Some(rest) = body.strip_prefix('{') {
            body = rest.strip_suffix('}').ok_or_else(|| fail("unbalanced braces"))?;
        }
        let body: String = body.chars().filter(|c| !c.is_whitespace()).collect();
        if body.is_empty() {
            return Ok(StepSet::empty());
        }
        let mut finite = Vec::new();
        let mut aps = Vec::new();
        for item in body.split(',') {
            if item.is_empty() {
                return Err(fail("empty item"));
            }
            if !item.contains('r') {
                finite.push(item.parse::<u64>().map_err(|_| fail("bad integer"))?);
                continue;
            }
            let (head, offset) = match item.split_once('+') {
                Some((h, b)) => (h, b.parse::<u64>().map_err(|_| fail("bad offset"))?),
                None => (item, 0),
            };
            let stride = match head.strip_suffix('r') {
                Some("") => 1,
                Some(coeff) => coeff
                    .strip_suffix('*')
                    .ok_or_else(|| fail("expected `a*r`"))?
                    .parse::<u64>()
                    .map_err(|_| fail("bad stride"))?,
                None => return Err(fail("expected `a*r+b`")),
            };
            aps.push(Progression::new(stride, offset).map_err(|_| fail("stride must be >= 1"))?);
        }
        StepSet::new(finite, aps)
    }
}

/// Forbidden peak heights, valley heights, and up/down/flat run lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RestrictionSpec {
    pub peaks: StepSet,
    pub valleys: StepSet,
    pub up_runs: StepSet,
    pub down_runs: StepSet,
    pub flat_runs: StepSet,
}

impl RestrictionSpec {
    pub fn new(a: StepSet, b: StepSet, c: StepSet, d: StepSet, e: StepSet) -> Self {
        RestrictionSpec {
            peaks: a,
            valleys: b,
            up_runs: c,
            down_runs: d,
            flat_runs: e,
        }
    }

    pub fn peaks_valleys(a: StepSet, b: StepSet) -> Self {
        RestrictionSpec {
            peaks: a,
            valleys: b,
            ..Default::default()
        }
    }

    pub fn runs(c: StepSet, d: StepSet, e: StepSet) -> Self {
        RestrictionSpec {
            up_runs: c,
            down_runs: d,
            flat_runs: e,
            ..Default::default()
        }
    }

    pub fn has_height_restrictions(&self) -> bool {
        !self.peaks.is_empty() || !self.valleys.is_empty()
    }

    pub fn has_run_restrictions(&self) -> bool {
        !self.up_runs.is_empty() || !self.down_runs.is_empty() || !self.flat_runs.is_empty()
    }
}

impl fmt::Display for RestrictionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A={} B={} C={} D={} E={}",
            self.peaks, self.valleys, self.up_runs, self.down_runs, self.flat_runs
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ap(stride: u64, offset: u64) -> Progression {
        Progression::new(stride, offset).unwrap()
    }

    fn set(finite: &[u64], aps: &[(u64, u64)]) -> StepSet {
        StepSet::new(
            finite.to_vec(),
            aps.iter().map(|&(a, b)| ap(a, b)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn membership() {
        assert!(set(&[1, 4], &[]).contains(4));
        assert!(set(&[], &[(2, 1)]).contains(7));
        assert!(!set(&[], &[(2, 1)]).contains(6));
        assert!(!StepSet::empty().contains(0));
    }

    #[test]
    fn remove_zero_examples() {
        assert_eq!(set(&[0, 2], &[]).remove_zero(), set(&[2], &[]));
        assert_eq!(set(&[], &[(2, 0)]).remove_zero().progressions(), &[ap(2, 2)]);
        assert_eq!(set(&[], &[(2, 1)]).remove_zero().progressions(), &[ap(2, 1)]);
    }

    #[test]
    fn decrement_examples() {
        assert_eq!(set(&[1, 3], &[]).decrement().unwrap(), set(&[0, 2], &[]));
        assert_eq!(
            set(&[], &[(2, 1)]).decrement().unwrap().progressions(),
            &[ap(2, 0)]
        );
        assert_eq!(set(&[0], &[]).decrement(), Err(SetError::ContainsZero));
    }

    #[test]
    fn canonical_keys() {
        assert_eq!(
            set(&[2], &[(2, 4)]).canonical_key(),
            set(&[], &[(2, 2)]).canonical_key()
        );
        assert_ne!(StepSet::empty().canonical_key(), set(&[0], &[]).canonical_key());
        assert_eq!(
            set(&[], &[(1, 0)]).canonical_key(),
            set(&[], &[(1, 0), (2, 0)]).canonical_key()
        );
    }

    #[test]
    fn parse_and_display() {
        let odd: StepSet = "{2*r+1}".parse().unwrap();
        assert_eq!(odd, set(&[], &[(2, 1)]));
        assert_eq!(odd.to_string(), "{2*r+1}");
        assert_eq!("{}".parse::<StepSet>().unwrap(), StepSet::empty());
        assert_eq!("{1, 4}".parse::<StepSet>().unwrap(), set(&[1, 4], &[]));
        assert_eq!("r+1".parse::<StepSet>().unwrap(), set(&[], &[(1, 1)]));
        assert_eq!("{3*r}".parse::<StepSet>().unwrap(), set(&[], &[(3, 0)]));
        assert_eq!("{1,r+5}".parse::<StepSet>().unwrap().to_string(), "{1,r+5}");
        assert!("{0*r+1}".parse::<StepSet>().is_err());
        assert!("{1,,2}".parse::<StepSet>().is_err());
        assert!("{x}".parse::<StepSet>().is_err());
        assert!("{1".parse::<StepSet>().is_err());
    }

    #[test]
    fn generating_numerator_matches_membership() {
        for s in [
            set(&[1, 4], &[]),
            set(&[], &[(2, 1)]),
            set(&[3], &[(3, 2), (2, 0)]),
        ] {
            let numer = s.generating_numerator();
            let period = s.period() as usize;
            // Expand numer / (1 - x^period) and compare with membership.
            let mut coeffs = vec![0i64; 40];
            for (i, c) in numer.iter().enumerate() {
                let mut k = i;
                while k < 40 {
                    coeffs[k] += c;
                    k += period;
                }
            }
            for (n, c) in coeffs.iter().enumerate() {
                assert_eq!(*c, s.contains(n as u64) as i64, "{s} at {n}");
            }
        }
    }

    fn arb_set() -> impl Strategy<Value = StepSet> {
        (
            prop::collection::vec(0u64..12, 0..4),
            prop::collection::vec((1u64..5, 0u64..8), 0..3),
        )
            .prop_map(|(finite, aps)| {
                StepSet::new(finite, aps.into_iter().map(|(a, b)| ap(a, b)).collect()).unwrap()
            })
    }

    proptest! {
        #[test]
        fn remove_zero_semantics(s in arb_set()) {
            let r = s.remove_zero();
            for n in 0..=1000u64 {
                prop_assert_eq!(r.contains(n), n != 0 && s.contains(n));
            }
        }

        #[test]
        fn decrement_semantics(s in arb_set()) {
            let s = s.remove_zero();
            let d = s.decrement().unwrap();
            for n in 0..=1000u64 {
                prop_assert_eq!(d.contains(n), s.contains(n + 1));
            }
        }

        #[test]
        fn key_is_a_congruence(
            finite in prop::collection::vec(0u64..12, 0..4),
            aps in prop::collection::vec((1u64..5, 0u64..8), 0..3),
            extra in prop::collection::vec(0u64..40, 0..4),
        ) {
            let aps: Vec<_> = aps.into_iter().map(|(a, b)| ap(a, b)).collect();
            let s = StepSet::new(finite.clone(), aps.clone()).unwrap();
            // Adding members that are already covered must not change the key.
            let covered: Vec<u64> = extra.into_iter().filter(|&n| s.contains(n)).collect();
            let mut finite2 = finite;
            finite2.extend(covered);
            let mut aps2 = aps;
            aps2.reverse();
            let t = StepSet::new(finite2, aps2).unwrap();
            for n in 0..=500u64 {
                prop_assert_eq!(s.contains(n), t.contains(n));
            }
            prop_assert_eq!(s.canonical_key(), t.canonical_key());
        }

        #[test]
        fn repeated_shifts_visit_finitely_many_keys(s in arb_set()) {
            let mut seen = std::collections::HashSet::new();
            let mut cur = s;
            for _ in 0..200 {
                if !seen.insert(cur.canonical_key()) {
                    break;
                }
                cur = cur.remove_zero().decrement().unwrap();
            }
            prop_assert!(seen.len() < 200);
        }

        #[test]
        fn display_round_trips(s in arb_set()) {
            let back: StepSet = s.to_string().parse().unwrap();
            prop_assert_eq!(back, s);
        }
    }
}
