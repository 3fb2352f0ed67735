//! Fitting an algebraic equation `F(x, P) = 0` to a sequence prefix by
//! undetermined coefficients.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{canonical, modp, series_vanishes, MPoly, Rat, Series, P_VAR, X_VAR};
use crate::dp::{seq_abcde, DpError};
use crate::sets::RestrictionSpec;

/// Terms at the end of the prefix kept out of the linear solve.
pub const HELD_OUT: usize = 5;
/// Default number of terms demanded beyond the unknown count.
pub const DEFAULT_MARGIN: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GuessConfig {
    pub max_p_degree: usize,
    pub max_x_degree: usize,
    pub safety_margin: usize,
}

impl GuessConfig {
    pub fn new(max_p_degree: usize, max_x_degree: usize) -> Self {
        GuessConfig {
            max_p_degree,
            max_x_degree,
            safety_margin: DEFAULT_MARGIN,
        }
    }

    /// Prefix length required by the largest probe.
    pub fn required_terms(&self) -> usize {
        (self.max_p_degree + 1) * (self.max_x_degree + 1) + self.safety_margin
    }

    /// Degree pairs in search order: by `dP + dX`, then by `dP`.
    pub fn search_order(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = (1..=self.max_p_degree)
            .flat_map(|dp| (0..=self.max_x_degree).map(move |dx| (dp, dx)))
            .collect();
        pairs.sort_by_key(|&(dp, dx)| (dp + dx, dp));
        pairs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GuessError {
    #[error("insufficient terms: {have} given, {need} needed for the degree bounds")]
    InsufficientTerms { have: usize, need: usize },
    #[error("maximum P-degree must be at least 1")]
    ZeroPDegree,
}

/// Nullspace basis read off the reduced row-echelon form.
fn nullspace(mut m: Vec<Vec<Rat>>, cols: usize) -> Vec<Vec<Rat>> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][c].recip();
        for j in c..cols {
            m[rank][j] = &m[rank][j] * &inv;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in c..cols {
                    let sub = &f * &m[rank][j];
                    m[r][j] -= sub;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rat::zero(); cols];
            v[free] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

/// `powers[i][k]` is the coefficient of `x^k` in `S^i`.
fn series_powers(seq: &[BigInt], max_p: usize) -> Vec<Vec<BigInt>> {
    let n = seq.len();
    let mut powers = vec![{
        let mut one = vec![BigInt::zero(); n];
        one[0] = BigInt::one();
        one
    }];
    for i in 1..=max_p {
        let prev = &powers[i - 1];
        let mut next = vec![BigInt::zero(); n];
        for (a, pa) in prev.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for (b, sb) in seq.iter().enumerate().take(n - a) {
                next[a + b] += pa * sb;
            }
        }
        powers.push(next);
    }
    powers
}

fn probe(powers: &[Vec<BigInt>], n: usize, dp: usize, dx: usize) -> Option<MPoly> {
    let cols = (dp + 1) * (dx + 1);
    let col = |i: usize, j: usize| i * (dx + 1) + j;
    // Row k: coefficient of x^k in sum c_ij x^j S^i.
    let entry = |k: usize, i: usize, j: usize| -> BigInt {
        if j > k {
            BigInt::zero()
        } else {
            powers[i][k - j].clone()
        }
    };
    let build = |rows: std::ops::Range<usize>| -> Vec<Vec<BigInt>> {
        rows.map(|k| {
            let mut row = vec![BigInt::zero(); cols];
            for i in 0..=dp {
                for j in 0..=dx {
                    row[col(i, j)] = entry(k, i, j);
                }
            }
            row
        })
        .collect()
    };
    let solve_rows = build(0..n - HELD_OUT);
    let modular: Vec<Vec<u64>> = solve_rows
        .iter()
        .map(|r| r.iter().map(modp::reduce_int).collect())
        .collect();
    if modp::rank(modular, cols) == cols {
        return None;
    }
    let exact: Vec<Vec<Rat>> = solve_rows
        .into_iter()
        .map(|r| r.into_iter().map(Rat::from_integer).collect())
        .collect();
    let basis = nullspace(exact, cols);
    let best = basis
        .into_iter()
        .min_by_key(|v| v.iter().filter(|c| !c.is_zero()).count())?;
    let mut f = MPoly::zero(2);
    for i in 0..=dp {
        for j in 0..=dx {
            let mut m = vec![0; 2];
            m[P_VAR] = i as u32;
            m[X_VAR] = j as u32;
            f.add_term(m, best[col(i, j)].clone());
        }
    }
    if f.degree(P_VAR) == 0 {
        return None;
    }
    let held_out = build(n - HELD_OUT..n);
    let passes = held_out.iter().all(|row| {
        row.iter()
            .zip(&best)
            .fold(Rat::zero(), |acc, (a, c)| acc + Rat::from_integer(a.clone()) * c)
            .is_zero()
    });
    passes.then(|| canonical(&f))
}

/// Undetermined-coefficient probes over one fixed prefix.
#[derive(Debug, Clone)]
pub struct Guesser {
    powers: Vec<Vec<BigInt>>,
    len: usize,
}

impl Guesser {
    /// Precomputes the powers `S^0..=S^max_p` of the prefix.
    pub fn new(seq: &[BigInt], max_p: usize) -> Self {
        Guesser {
            powers: series_powers(seq, max_p),
            len: seq.len(),
        }
    }

    /// Prefix length needed to probe `(dp, dx)` with the default margin.
    pub fn terms_needed(dp: usize, dx: usize) -> usize {
        ((dp + 1) * (dx + 1) + DEFAULT_MARGIN).max(HELD_OUT + 1)
    }

    /// A canonical polynomial of degrees at most `(dp, dx)` annihilating the
    /// prefix, if one exists. `dp` must not exceed the precomputed power.
    pub fn probe(&self, dp: usize, dx: usize) -> Option<MPoly> {
        assert!(dp < self.powers.len(), "P-degree above the precomputed powers");
        if self.len < HELD_OUT + 1 {
            return None;
        }
        probe(&self.powers, self.len, dp, dx)
    }
}

/// Searches for the first degree pair (in [`GuessConfig::search_order`]) whose
/// undetermined-coefficient system has a nontrivial solution that also
/// annihilates the held-out terms. `Ok(None)` means not found.
pub fn guess_algebraic(seq: &[BigUint], cfg: &GuessConfig) -> Result<Option<MPoly>, GuessError> {
    if cfg.max_p_degree == 0 {
        return Err(GuessError::ZeroPDegree);
    }
    let need = cfg.required_terms().max(HELD_OUT + 1);
    if seq.len() < need {
        return Err(GuessError::InsufficientTerms {
            have: seq.len(),
            need,
        });
    }
    let ints: Vec<BigInt> = seq.iter().map(|c| BigInt::from(c.clone())).collect();
    let guesser = Guesser::new(&ints, cfg.max_p_degree);
    Ok(cfg
        .search_order()
        .into_iter()
        .find_map(|(dp, dx)| guesser.probe(dp, dx)))
}

/// Checks `F` against the DP series of `spec` with `length + extra` terms.
pub fn verify_guess(
    f: &MPoly,
    spec: &RestrictionSpec,
    length: usize,
    extra: usize,
) -> Result<bool, DpError> {
    let total = length + extra;
    if total == 0 {
        return Ok(true);
    }
    let seq = seq_abcde(spec, total - 1)?;
    Ok(series_vanishes(f, &Series::from_counts(&seq)))
}
