//! Symbolic dynamic programming: restriction states become variables, the
//! grammar decomposition of each state becomes one polynomial equation, and
//! elimination yields `F(x, P)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{self, eliminate_to_root, series_vanishes, AlgebraError, MPoly, Rat, Series};
use crate::dp::{seq_abcde, DpError};
use crate::guess::{GuessConfig, GuessError, Guesser};
use crate::sets::RestrictionSpec;

pub mod fab;
pub mod fcde;

pub use fab::build_fab_system;
pub use fcde::{build_fcde_system, build_fcde_system_with, WrapFlats};

/// Hard bound on the number of states a system may contain.
pub const MAX_STATES: usize = 10_000;

#[derive(Debug, Error)]
pub enum SymbolicError {
    #[error("state expansion exceeded {0} states")]
    StateCap(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Dp(#[from] DpError),
    #[error(transparent)]
    Guess(#[from] GuessError),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// `coeff(x) * Π vars`, with `coeff` dense in ascending powers of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawTerm {
    pub coeff: Vec<i64>,
    pub vars: Vec<usize>,
}

impl RawTerm {
    pub fn new(coeff: Vec<i64>, vars: Vec<usize>) -> Self {
        RawTerm { coeff, vars }
    }
}

/// `v = Σ terms / den(x)` for one state, variables given by discovery id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawDef {
    pub terms: Vec<RawTerm>,
    pub den: Vec<i64>,
}

/// One variable per state, each with an explicit definition
/// `v = numerator / denominator` where the denominator is a polynomial in `x`.
///
/// Variables are ordered `[aux.., root, x]`: the root is second-to-last so that
/// lex order eliminates every auxiliary variable first.
#[derive(Debug, Clone)]
pub struct EquationSystem {
    names: Vec<String>,
    numerators: Vec<MPoly>,
    denominators: Vec<MPoly>,
}

impl EquationSystem {
    /// `names[id]` and `defs[id]` by discovery id; id 0 is the root.
    pub(crate) fn from_raw(names: Vec<String>, defs: Vec<RawDef>) -> Self {
        let n = names.len();
        let nvars = n + 1;
        let index = |id: usize| if id == 0 { n - 1 } else { id - 1 };
        let x_poly = |c: &[i64]| MPoly::univariate(nvars, n, c);
        let mut numerators = vec![MPoly::zero(nvars); n];
        let mut denominators = vec![MPoly::zero(nvars); n];
        let mut ordered_names = vec![String::new(); n];
        for (id, (name, def)) in names.into_iter().zip(defs).enumerate() {
            let mut num = MPoly::zero(nvars);
            for t in &def.terms {
                let mut term = x_poly(&t.coeff);
                for &v in &t.vars {
                    term = &term * &MPoly::var(nvars, index(v));
                }
                num = &num + &term;
            }
            numerators[index(id)] = num;
            denominators[index(id)] = x_poly(&def.den);
            ordered_names[index(id)] = name;
        }
        EquationSystem {
            names: ordered_names,
            numerators,
            denominators,
        }
    }

    /// Number of state variables (the root included, `x` excluded).
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.len() + 1
    }

    pub fn root(&self) -> usize {
        self.len() - 1
    }

    pub fn x_index(&self) -> usize {
        self.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Variable names including `x`, for display.
    pub fn variable_names(&self) -> Vec<String> {
        let mut v = self.names.clone();
        v.push("x".into());
        v
    }

    pub fn numerator(&self, var: usize) -> &MPoly {
        &self.numerators[var]
    }

    pub fn denominator(&self, var: usize) -> &MPoly {
        &self.denominators[var]
    }

    /// `den_v · v − num_v` for every variable.
    pub fn equations(&self) -> Vec<MPoly> {
        (0..self.len())
            .map(|v| {
                let lhs = &self.denominators[v] * &MPoly::var(self.nvars(), v);
                &lhs - &self.numerators[v]
            })
            .collect()
    }

    /// Power series of every variable by fixed-point iteration of the
    /// definitions, to `order` terms.
    pub fn series(&self, order: usize) -> Result<Vec<Series>, SymbolicError> {
        let n = self.len();
        let dens: Vec<Series> = self
            .denominators
            .iter()
            .map(|d| eval_series(d, &[], n, order))
            .collect();
        let mut current = vec![Series::zero(order); n];
        let cap = order * (n + 2) + 8;
        for _ in 0..cap {
            let mut next = Vec::with_capacity(n);
            for v in 0..n {
                let num = eval_series(&self.numerators[v], &current, n, order);
                next.push(num.div(&dens[v])?);
            }
            if next == current {
                return Ok(current);
            }
            current = next;
        }
        Err(SymbolicError::Inconsistent(
            "fixed-point iteration did not converge".into(),
        ))
    }

    /// Series of the root variable.
    pub fn root_series(&self, order: usize) -> Result<Series, SymbolicError> {
        Ok(self.series(order)?.swap_remove(self.root()))
    }

    /// States whose series vanish identically: the largest set `Z` such that
    /// every numerator of a state in `Z` is zero once the states of `Z` are
    /// set to zero. Fixed-point iteration from zero never leaves such a set.
    pub fn zero_states(&self) -> Vec<bool> {
        let n = self.len();
        let mut zero = vec![true; n];
        loop {
            let zero_poly = MPoly::zero(self.nvars());
            let mut changed = false;
            for v in 0..n {
                if !zero[v] {
                    continue;
                }
                let reduced = (0..n)
                    .filter(|&w| zero[w])
                    .fold(self.numerators[v].clone(), |p, w| p.substitute(w, &zero_poly));
                if !reduced.is_zero() {
                    zero[v] = false;
                    changed = true;
                }
            }
            if !changed {
                return zero;
            }
        }
    }

    /// The equations of the states with nonzero series, with the zero states
    /// substituted by 0. `None` when the root itself is a zero state.
    pub fn pruned_equations(&self) -> Option<Vec<MPoly>> {
        let zero = self.zero_states();
        if zero[self.root()] {
            return None;
        }
        let zero_poly = MPoly::zero(self.nvars());
        Some(
            self.equations()
                .into_iter()
                .enumerate()
                .filter(|&(v, _)| !zero[v])
                .map(|(_, e)| {
                    (0..self.len())
                        .filter(|&w| zero[w])
                        .fold(e, |p, w| p.substitute(w, &zero_poly))
                })
                .collect(),
        )
    }

    /// A polynomial in `[P, x]` satisfied by the root variable.
    pub fn eliminate(&self) -> Result<MPoly, SymbolicError> {
        match self.pruned_equations() {
            None => Ok(MPoly::var(2, algebra::P_VAR)),
            Some(equations) => Ok(eliminate_to_root(&equations, self.root())?),
        }
    }
}

/// Evaluates `p` with variable `i < n` set to `values[i]` and variable `n` the
/// series variable `x`.
fn eval_series(p: &MPoly, values: &[Series], n: usize, order: usize) -> Series {
    let mut out = vec![Rat::zero(); order];
    for (m, c) in p.terms() {
        let shift = m[n] as usize;
        if shift >= order {
            continue;
        }
        let mut acc = {
            let mut one = vec![Rat::zero(); order];
            one[0] = Rat::one();
            Series::new(one)
        };
        for (i, &e) in m.iter().enumerate().take(n) {
            for _ in 0..e {
                acc = acc.mul(&values[i]);
            }
        }
        for k in 0..order - shift {
            let v = acc.coeff(k);
            if !v.is_zero() {
                out[k + shift] += c * v;
            }
        }
    }
    Series::new(out)
}

/// Result of solving a system.
#[derive(Debug, Clone)]
pub struct Solution {
    /// Canonical polynomial satisfied by the generating function.
    pub polynomial: MPoly,
    /// The eliminant before factor selection, canonical.
    pub eliminant: MPoly,
    /// False when no proper factor could be certified and `polynomial` is the
    /// eliminant itself, which may carry extraneous factors.
    pub minimal: bool,
    pub states: usize,
}

/// Terms used to cross-check the system against the numeric DP.
const CROSS_CHECK_TERMS: usize = 25;

/// Longest reference series computed while searching for the minimal factor.
pub const MAX_REFERENCE_TERMS: usize = 400;

/// Lazily extended reference series of the root.
struct Reference<'a> {
    system: &'a EquationSystem,
    spec: &'a RestrictionSpec,
    series: Series,
    ints: Vec<BigInt>,
}

impl<'a> Reference<'a> {
    fn new(system: &'a EquationSystem, spec: &'a RestrictionSpec) -> Self {
        Reference {
            system,
            spec,
            series: Series::zero(0),
            ints: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.series.order()
    }

    /// Makes at least `order` terms available, doubling to amortize.
    fn extend(&mut self, order: usize) -> Result<(), SymbolicError> {
        if order <= self.len() {
            return Ok(());
        }
        let order = order.max(2 * self.len()).min(MAX_REFERENCE_TERMS.max(order));
        self.series = match seq_abcde(self.spec, order - 1) {
            Ok(seq) => Series::from_counts(&seq),
            Err(_) => self.system.root_series(order)?,
        };
        self.ints = self
            .series
            .to_integers()
            .ok_or_else(|| SymbolicError::Inconsistent("non-integer series".into()))?;
        Ok(())
    }
}

/// Number of leading terms on which `f` must vanish to prove that it
/// annihilates the root, given that `q` does. `None` when `f` does not
/// divide `q` or shares a factor with the cofactor.
///
/// With `q = f^k·r` and `r` coprime to `f`, the resultant `R = a·f + b·r` in
/// `x` is nonzero. If `r` vanished at the root, `R` would equal `a·f` there,
/// so `f` cannot vanish to an order above the valuation of `R` unless it
/// vanishes identically. The valuation is bounded through a modular image of
/// `R`, which is conclusive whenever that image is nonzero.
pub fn certificate_order(q: &MPoly, f: &MPoly) -> Option<usize> {
    let mut r = q.exact_div(f).ok()?;
    while let Ok(next) = r.exact_div(f) {
        r = next;
    }
    if r.degree(algebra::P_VAR) == 0 {
        return Some(0);
    }
    let valuation =
        algebra::resultant::resultant_valuation_mod_p(f, &r, algebra::P_VAR, algebra::X_VAR)?;
    Some(valuation + 1)
}

/// Eliminates, checks the eliminant against a reference series, and selects
/// the factor vanishing at the root.
///
/// Degree pairs are probed in increasing order on a reference series that
/// grows as needed; the first candidate that divides the eliminant and passes
/// [`certificate_order`] is returned.
pub fn solve(system: &EquationSystem, spec: &RestrictionSpec) -> Result<Solution, SymbolicError> {
    if let Ok(seq) = seq_abcde(spec, CROSS_CHECK_TERMS - 1) {
        let own = system.root_series(CROSS_CHECK_TERMS)?;
        if own != Series::from_counts(&seq) {
            return Err(SymbolicError::Inconsistent(
                "system series disagrees with the numeric DP".into(),
            ));
        }
    }
    let q = algebra::canonical(&system.eliminate()?);
    let (qp, qx) = (
        q.degree(algebra::P_VAR) as usize,
        q.degree(algebra::X_VAR) as usize,
    );
    let states = system.len();
    let mut reference = Reference::new(system, spec);
    reference.extend(CROSS_CHECK_TERMS)?;
    if !series_vanishes(&q, &reference.series) {
        return Err(SymbolicError::Inconsistent(
            "eliminant does not vanish on the reference series".into(),
        ));
    }

    let mut guesser: Option<Guesser> = None;
    for (dp, dx) in GuessConfig::new(qp.max(1), qx).search_order() {
        let need = Guesser::terms_needed(dp, dx);
        if need > MAX_REFERENCE_TERMS {
            continue;
        }
        if need > reference.len() {
            reference.extend(need)?;
            guesser = None;
        }
        let g = guesser.get_or_insert_with(|| Guesser::new(&reference.ints, qp.max(1)));
        let Some(f) = g.probe(dp, dx) else { continue };
        let Some(order) = certificate_order(&q, &f) else { continue };
        if order > MAX_REFERENCE_TERMS {
            continue;
        }
        if order > reference.len() {
            reference.extend(order)?;
            guesser = None;
        }
        if series_vanishes(&f, &reference.series) {
            return Ok(Solution {
                polynomial: f,
                eliminant: q,
                minimal: true,
                states,
            });
        }
    }
    Ok(Solution {
        polynomial: q.clone(),
        eliminant: q,
        minimal: false,
        states,
    })
}

/// The polynomial for peak heights avoiding `A` and valley heights avoiding `B`.
pub fn fab(
    a: &crate::sets::StepSet,
    b: &crate::sets::StepSet,
) -> Result<Solution, SymbolicError> {
    let system = build_fab_system(a, b)?;
    solve(
        &system,
        &RestrictionSpec::peaks_valleys(a.clone(), b.clone()),
    )
}

/// The polynomial for up, down and flat run lengths avoiding `C`, `D`, `E`.
pub fn fcde(
    c: &crate::sets::StepSet,
    d: &crate::sets::StepSet,
    e: &crate::sets::StepSet,
) -> Result<Solution, SymbolicError> {
    let system = build_fcde_system(c, d, e)?;
    solve(&system, &RestrictionSpec::runs(c.clone(), d.clone(), e.clone()))
}

