//! Dense univariate polynomials over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mpoly::MPoly;
use super::Rat;

/// Coefficients in increasing degree, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UPoly(Vec<Rat>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn one() -> Self {
        UPoly(vec![Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.0.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.0.clone();
        let mut quot = vec![Rat::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / &lead;
            for (i, c) in divisor.0.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let lead = self.leading();
        UPoly(self.0.iter().map(|c| c / &lead).collect())
    }

    /// Scales to coprime integer coefficients with positive leading one.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in &self.0 {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut factor = Rat::new(den, num);
        if self.leading().is_negative() {
            factor = -factor;
        }
        UPoly(self.0.iter().map(|c| c * &factor).collect())
    }

    /// Monic greatest common divisor (zero if both inputs are zero), by a
    /// primitive remainder sequence to keep coefficients small.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// The polynomial as univariate in `var`, if no other variable occurs.
    pub fn from_mpoly(p: &MPoly, var: usize) -> Option<UPoly> {
        let mut coeffs = Vec::new();
        for (m, c) in p.terms() {
            if m.iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return None;
            }
            let k = m[var] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rat::zero());
            }
            coeffs[k] = c.clone();
        }
        Some(UPoly::new(coeffs))
    }

    /// Embeds as a polynomial in variable `var` of an `nvars`-variable ring.
    pub fn to_mpoly(&self, nvars: usize, var: usize) -> MPoly {
        MPoly::from_terms(
            nvars,
            self.0.iter().enumerate().map(|(k, c)| {
                let mut exps = vec![0; nvars];
                exps[var] = k as u32;
                (exps, c.clone())
            }),
        )
    }
}

/// Splits `p` into coefficients over Q[var]: pairs of (exponent vector with the
/// `var` entry zeroed, coefficient polynomial in `var`).
pub(crate) fn split_by_var(p: &MPoly, var: usize) -> Vec<(Vec<u32>, UPoly)> {
    let mut groups: std::collections::BTreeMap<Vec<u32>, Vec<Rat>> = Default::default();
    for (m, c) in p.terms() {
        let mut key = m.clone();
        let k = std::mem::replace(&mut key[var], 0) as usize;
        let entry = groups.entry(key).or_default();
        if entry.len() <= k {
            entry.resize(k + 1, Rat::zero());
        }
        entry[k] = c.clone();
    }
    groups.into_iter().map(|(k, v)| (k, UPoly::new(v))).collect()
}

/// Greatest common divisor of the Q[var]-coefficients of `p`.
pub fn content_in(p: &MPoly, var: usize) -> UPoly {
    split_by_var(p, var)
        .iter()
        .fold(UPoly::zero(), |g, (_, c)| g.gcd(c))
}

/// Divides `p` by its Q[var]-content and normalizes to a primitive integer
/// polynomial with positive leading coefficient.
pub fn remove_content_in(p: &MPoly, var: usize) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    let content = content_in(p, var);
    if content.degree() == Some(0) {
        return p.primitive();
    }
    let nvars = p.nvars();
    let mut out = MPoly::zero(nvars);
    for (key, coeff) in split_by_var(p, var) {
        let (q, r) = coeff.div_rem(&content);
        debug_assert!(r.is_zero());
        for (k, c) in q.coeffs().iter().enumerate() {
            let mut exps = key.clone();
            exps[var] = k as u32;
            out.add_term(exps, c.clone());
        }
    }
    out.primitive()
}
