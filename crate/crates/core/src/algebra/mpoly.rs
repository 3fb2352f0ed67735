use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, Rat};

/// Exponent vector; index 0 is the most significant variable.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial over Q.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration order
/// is pure lexicographic with variable 0 largest and the leading term is the
/// last entry. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn lcm_monomial(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = MPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        MPoly::constant(nvars, Rat::from_integer(BigInt::from(c)))
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::from_int(nvars, 1)
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        MPoly::monomial(exps, Rat::one())
    }

    pub fn monomial(exps: Monomial, c: Rat) -> Self {
        let mut p = MPoly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// `Σ coeffs[k] * var^k`, with integer coefficients.
    pub fn univariate(nvars: usize, index: usize, coeffs: &[i64]) -> Self {
        let mut p = MPoly::zero(nvars);
        for (k, &c) in coeffs.iter().enumerate() {
            let mut exps = vec![0; nvars];
            exps[index] = k as u32;
            p.add_term(exps, Rat::from_integer(BigInt::from(c)));
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(nvars: usize, terms: I) -> Self {
        let mut p = MPoly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "exponent vector arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, exps: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Leading term under lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rat {
        self.leading().map_or_else(Rat::zero, |(_, c)| c.clone())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.coefficient(&vec![0; self.nvars]))
        } else {
            None
        }
    }

    pub fn degree(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m[var] > 0)
    }

    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.uses_var(v)).collect()
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c * x^shift`.
    pub fn mul_term(&self, shift: &[u32], c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.iter().zip(shift).map(|(x, y)| x + y).collect(), a * c))
                .collect(),
        }
    }

    /// `self -= c * x^shift * other`, in place.
    pub(crate) fn sub_scaled(&mut self, other: &MPoly, shift: &[u32], c: &Rat) {
        for (m, a) in &other.terms {
            let exps = m.iter().zip(shift).map(|(x, y)| x + y).collect();
            self.add_term(exps, -(a * c));
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut result = MPoly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Coefficients with respect to `var`: `self = Σ_k out[k] * var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(self.nvars); self.degree(var) as usize + 1];
        for (m, c) in &self.terms {
            let mut exps = m.clone();
            let k = std::mem::replace(&mut exps[var], 0) as usize;
            out[k].add_term(exps, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(var: usize, coeffs: &[MPoly]) -> MPoly {
        let nvars = coeffs.first().map_or(0, |c| c.nvars);
        let mut p = MPoly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut exps = m.clone();
                exps[var] += k as u32;
                p.add_term(exps, a.clone());
            }
        }
        p
    }

    /// Replaces `var` by `value` everywhere.
    pub fn substitute(&self, var: usize, value: &MPoly) -> MPoly {
        let coeffs = self.coefficients_in(var);
        let mut acc = MPoly::zero(self.nvars);
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> MPoly {
        let mut p = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let mut exps = m.clone();
            exps[var] -= 1;
            p.add_term(exps, c * Rat::from_integer(BigInt::from(m[var])));
        }
        p
    }

    /// Scales by a nonzero rational so all coefficients are coprime integers
    /// and the leading coefficient is positive.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut factor = Rat::new(den, num);
        if self.leading_coefficient().is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    pub fn monic(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coefficient().recip())
    }

    /// Multivariate division by `divisors` under lex order; returns the
    /// quotients and the remainder (no term of which is divisible by any
    /// leading monomial).
    pub fn div_rem(&self, divisors: &[MPoly]) -> (Vec<MPoly>, MPoly) {
        let mut quotients = vec![MPoly::zero(self.nvars); divisors.len()];
        let mut remainder = MPoly::zero(self.nvars);
        let mut p = self.clone();
        let leads: Vec<_> = divisors
            .iter()
            .map(|d| d.leading().map(|(m, c)| (m.clone(), c.clone())))
            .collect();
        while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let hit = leads.iter().enumerate().find_map(|(i, lead)| match lead {
                Some((lm, lc)) if divides(lm, &m) => Some((i, lm, lc)),
                _ => None,
            });
            match hit {
                Some((i, lm, lc)) => {
                    let shift: Monomial = m.iter().zip(lm).map(|(a, b)| a - b).collect();
                    let q = &c / lc;
                    p.sub_scaled(&divisors[i], &shift, &q);
                    quotients[i].add_term(shift, q);
                }
                None => {
                    p.terms.remove(&m);
                    remainder.add_term(m, c);
                }
            }
        }
        (quotients, remainder)
    }

    /// `self / divisor`, failing unless the division is exact.
    pub fn exact_div(&self, divisor: &MPoly) -> Result<MPoly, AlgebraError> {
        if divisor.is_zero() {
            return Err(AlgebraError::NotDivisible);
        }
        let (mut q, r) = self.div_rem(std::slice::from_ref(divisor));
        if !r.is_zero() {
            return Err(AlgebraError::NotDivisible);
        }
        Ok(q.pop().expect("one quotient"))
    }

    /// Rewrites the polynomial over a different variable list; `mapping[i]` is
    /// the new index of old variable `i`, or `None` if it must not occur.
    pub fn remap(&self, new_nvars: usize, mapping: &[Option<usize>]) -> Result<MPoly, AlgebraError> {
        let mut p = MPoly::zero(new_nvars);
        for (m, c) in &self.terms {
            let mut exps = vec![0; new_nvars];
            for (old, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let new = mapping[old].ok_or(AlgebraError::UnexpectedVariable(old))?;
                exps[new] += e;
            }
            p.add_term(exps, c.clone());
        }
        Ok(p)
    }

    pub fn map_coefficients(&self, f: impl Fn(&Rat) -> Rat) -> MPoly {
        let mut p = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), f(c));
        }
        p
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{}", super::format::format_flat(self, &names))
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let (mut big, small) = if self.nterms() >= rhs.nterms() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), -c.clone());
        }
        p
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut p = MPoly::zero(self.nvars.max(rhs.nvars));
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                let exps = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                p.add_term(exps, a * b);
            }
        }
        p
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.map_coefficients(|c| -c.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}
