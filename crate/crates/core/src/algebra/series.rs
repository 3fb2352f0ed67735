//! Truncated power series over Q and algebraic-function expansion.
//!
//! Bivariate polynomials `F(x, P)` use the variable list `[P, x]`, see
//! [`super::P_VAR`] and [`super::X_VAR`].

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::mpoly::MPoly;
use super::{AlgebraError, Rat, P_VAR, X_VAR};

/// `Σ coeffs[k] x^k`, known modulo `x^order` where `order = coeffs.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rat>,
}

impl Series {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Rat::zero(); order],
        }
    }

    pub fn from_counts(counts: &[BigUint]) -> Self {
        Series {
            coeffs: counts
                .iter()
                .map(|c| Rat::from_integer(BigInt::from(c.clone())))
                .collect(),
        }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Series {
            coeffs: values.iter().map(|&v| Rat::from_integer(v.into())).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn truncate(&self, order: usize) -> Series {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order, Rat::zero());
        Series { coeffs }
    }

    /// Integer coefficients, if every coefficient is an integer.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn add(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        Series {
            coeffs: (0..order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let mut out = vec![Rat::zero(); order];
        for (i, a) in self.coeffs.iter().enumerate().take(order) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order - i) {
                out[i + j] += a * b;
            }
        }
        Series { coeffs: out }
    }

    /// `self / other`; `other` must have a nonzero constant term.
    pub fn div(&self, other: &Series) -> Result<Series, AlgebraError> {
        let order = self.order().min(other.order());
        let c0 = other.coeff(0);
        if c0.is_zero() {
            return Err(AlgebraError::Degenerate("series division by non-unit".into()));
        }
        let mut out: Vec<Rat> = Vec::with_capacity(order);
        for k in 0..order {
            let mut acc = self.coeffs[k].clone();
            for (j, o) in out.iter().enumerate() {
                acc -= o * other.coeff(k - j);
            }
            out.push(acc / &c0);
        }
        Ok(Series { coeffs: out })
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }
}

/// Evaluates a polynomial in `[P, x]` at `P = s`, modulo `x^order(s)`.
pub fn evaluate(f: &MPoly, s: &Series) -> Series {
    evaluate_at(f, s, s.order())
}

fn evaluate_at(f: &MPoly, s: &Series, order: usize) -> Series {
    let s = s.truncate(order);
    let mut powers = vec![Series::new({
        let mut one = vec![Rat::zero(); order];
        if order > 0 {
            one[0] = Rat::one();
        }
        one
    })];
    let dp = f.degree(P_VAR) as usize;
    for i in 1..=dp {
        let next = powers[i - 1].mul(&s);
        powers.push(next);
    }
    let mut out = vec![Rat::zero(); order];
    for (m, c) in f.terms() {
        let (i, j) = (m[P_VAR] as usize, m[X_VAR] as usize);
        for k in 0..order.saturating_sub(j) {
            let v = &powers[i].coeffs[k];
            if !v.is_zero() {
                out[k + j] += c * v;
            }
        }
    }
    Series::new(out)
}

/// True iff `F(x, s) ≡ 0 (mod x^order(s))`.
///
/// Every term `q_i(x) s^i` is determined modulo `x^order` by `s` modulo
/// `x^order`, so the check uses the full order without headroom.
pub fn series_vanishes(f: &MPoly, s: &Series) -> bool {
    evaluate(f, s).is_zero()
}

/// Extends `prefix` to the unique power series root of `F(x, P) = 0` up to
/// `order` terms by undetermined-coefficient stepping.
///
/// With `J = ∂F/∂P (x, prefix)` of valuation `v`, the coefficient `c` of `x^k`
/// (for `k` past the prefix) is fixed by the coefficient of `x^(k+v)` in
/// `F(x, known + c x^k)`, which is linear in `c`. The prefix must therefore be
/// longer than `v`.
pub fn series_solve(f: &MPoly, prefix: &[Rat], order: usize) -> Result<Series, AlgebraError> {
    let p = prefix.len();
    if p == 0 {
        return Err(AlgebraError::BranchAmbiguity { prefix: 0 });
    }
    let known = Series::new(prefix.to_vec());
    let jac = evaluate(&f.derivative(P_VAR), &known);
    let v = jac
        .valuation()
        .ok_or(AlgebraError::BranchAmbiguity { prefix: p })?;
    let jv = jac.coeff(v);
    if !evaluate(f, &known).is_zero() {
        return Err(AlgebraError::InconsistentPrefix);
    }
    let mut coeffs = prefix.to_vec();
    coeffs.truncate(order.max(p));
    while coeffs.len() < order {
        let k = coeffs.len();
        let mut trial = coeffs.clone();
        trial.push(Rat::zero());
        let value = evaluate_at(f, &Series::new(trial), k + v + 1);
        let c = -value.coeff(k + v) / &jv;
        coeffs.push(c);
    }
    let s = Series::new(coeffs);
    if !series_vanishes(f, &s) {
        return Err(AlgebraError::InconsistentPrefix);
    }
    Ok(s.truncate(order))
}

/// [`series_solve`] from an integer prefix.
pub fn series_solve_counts(
    f: &MPoly,
    prefix: &[BigUint],
    order: usize,
) -> Result<Series, AlgebraError> {
    let prefix = Series::from_counts(prefix);
    series_solve(f, prefix.coeffs(), order)
}
