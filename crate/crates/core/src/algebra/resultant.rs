//! Sylvester resultants with a fraction-free (Bareiss) determinant.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::modp;
use super::mpoly::MPoly;
use super::{AlgebraError, Rat};

/// Sylvester matrix of `f` and `g` with respect to `var`: `deg g` shifted rows
/// of `f`'s coefficients followed by `deg f` shifted rows of `g`'s, highest
/// degree first.
pub fn sylvester_matrix(f: &MPoly, g: &MPoly, var: usize) -> Vec<Vec<MPoly>> {
    let nvars = f.nvars();
    let fc: Vec<MPoly> = f.coefficients_in(var).into_iter().rev().collect();
    let gc: Vec<MPoly> = g.coefficients_in(var).into_iter().rev().collect();
    let m = fc.len() - 1;
    let n = gc.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (coeffs, count) in [(&fc, n), (&gc, m)] {
        for shift in 0..count {
            let mut row = vec![MPoly::zero(nvars); size];
            for (j, c) in coeffs.iter().enumerate() {
                row[shift + j] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Determinant of a square matrix of polynomials by Bareiss elimination.
pub fn determinant(mut m: Vec<Vec<MPoly>>, nvars: usize) -> MPoly {
    let n = m.len();
    if n == 0 {
        return MPoly::one(nvars);
    }
    let mut negate = false;
    let mut prev = MPoly::one(nvars);
    for k in 0..n - 1 {
        let Some(pivot) = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| m[i][k].nterms())
        else {
            return MPoly::zero(nvars);
        };
        if pivot != k {
            m.swap(pivot, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = MPoly::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Largest evaluation grid for which [`resultant`] interpolates instead of
/// running Bareiss over polynomial entries.
pub const INTERPOLATION_LIMIT: usize = 1 << 16;

/// Resultant of `f` and `g` with respect to `var`.
pub fn resultant(f: &MPoly, g: &MPoly, var: usize) -> Result<MPoly, AlgebraError> {
    if f.degree(var) == 0 || g.degree(var) == 0 {
        return Err(AlgebraError::Degenerate(
            "resultant needs positive degree in the eliminated variable".into(),
        ));
    }
    let bounds = degree_bounds(f, g, var);
    let grid = bounds
        .iter()
        .try_fold(1usize, |acc, &(_, b)| acc.checked_mul(b as usize + 1));
    match grid {
        Some(n) if n <= INTERPOLATION_LIMIT => Ok(resultant_interpolated(f, g, var)),
        _ => Ok(resultant_bareiss(f, g, var)),
    }
}

/// Resultant as the determinant of the Sylvester matrix over polynomials.
pub fn resultant_bareiss(f: &MPoly, g: &MPoly, var: usize) -> MPoly {
    determinant(sylvester_matrix(f, g, var), f.nvars())
}

/// `(w, bound)` for every other variable `w`: the resultant has degree at most
/// `deg_v(g)·deg_w(f) + deg_v(f)·deg_w(g)` in `w`.
fn degree_bounds(f: &MPoly, g: &MPoly, var: usize) -> Vec<(usize, u32)> {
    let (m, n) = (f.degree(var), g.degree(var));
    (0..f.nvars())
        .filter(|&w| w != var && (f.uses_var(w) || g.uses_var(w)))
        .map(|w| (w, n * f.degree(w) + m * g.degree(w)))
        .collect()
}

/// Evaluation points `0, 1, −1, 2, −2, …`.
fn point(i: usize) -> Rat {
    let k = i.div_ceil(2) as i64;
    Rat::from_integer(BigInt::from(if i % 2 == 1 { k } else { -k }))
}

fn evaluate_at(p: &MPoly, var: usize, value: &Rat) -> MPoly {
    let mut powers = vec![Rat::one()];
    for _ in 0..p.degree(var) {
        let next = powers.last().expect("nonempty") * value;
        powers.push(next);
    }
    let mut out = MPoly::zero(p.nvars());
    for (m, c) in p.terms() {
        let mut exps = m.clone();
        let e = std::mem::replace(&mut exps[var], 0);
        out.add_term(exps, c * &powers[e as usize]);
    }
    out
}

/// Fraction-free Gaussian elimination.
fn integer_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if pivot != k {
            m.swap(pivot, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m.pop().and_then(|mut row| row.pop()).unwrap_or_else(BigInt::one);
    if negate {
        -det
    } else {
        det
    }
}

fn rational_determinant(rows: Vec<Vec<Rat>>) -> Rat {
    let mut scale = BigInt::one();
    let ints = rows
        .into_iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |l, c| num_integer::Integer::lcm(&l, c.denom()));
            scale *= &l;
            row.into_iter()
                .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    Rat::new(integer_determinant(ints), scale)
}

/// Newton interpolation through `(xs[i], ys[i])`; dense ascending coefficients.
fn interpolate_dense(xs: &[Rat], ys: Vec<Rat>) -> Vec<Rat> {
    let d = ys.len();
    let mut c = ys;
    for level in 1..d {
        for i in (level..d).rev() {
            c[i] = (&c[i] - &c[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut acc = vec![c[d - 1].clone()];
    for k in (0..d - 1).rev() {
        let mut next = vec![Rat::zero(); acc.len() + 1];
        for (j, a) in acc.iter().enumerate() {
            next[j + 1] += a;
            next[j] -= a * &xs[k];
        }
        next[0] += &c[k];
        acc = next;
    }
    acc
}

/// Interpolates `var` coefficientwise from values at `point(0), point(1), …`.
fn interpolate(values: Vec<MPoly>, var: usize) -> MPoly {
    let nvars = values[0].nvars();
    let xs: Vec<Rat> = (0..values.len()).map(point).collect();
    let monomials: std::collections::BTreeSet<Vec<u32>> = values
        .iter()
        .flat_map(|v| v.terms().map(|(m, _)| m.clone()))
        .collect();
    let mut out = MPoly::zero(nvars);
    for m in monomials {
        let ys = values.iter().map(|v| v.coefficient(&m)).collect();
        for (j, c) in interpolate_dense(&xs, ys).into_iter().enumerate() {
            if !c.is_zero() {
                let mut exps = m.clone();
                exps[var] = j as u32;
                out.add_term(exps, c);
            }
        }
    }
    out
}

/// Resultant by evaluating every other variable at integer points, taking
/// numeric Sylvester determinants, and interpolating. The Sylvester matrix
/// keeps the formal degrees of `f` and `g`, so specializations that lower a
/// leading coefficient are still exact.
pub fn resultant_interpolated(f: &MPoly, g: &MPoly, var: usize) -> MPoly {
    let bounds = degree_bounds(f, g, var);
    let (m, n) = (f.degree(var) as usize, g.degree(var) as usize);
    fn go(f: &MPoly, g: &MPoly, var: usize, m: usize, n: usize, bounds: &[(usize, u32)]) -> MPoly {
        let nvars = f.nvars();
        let Some((&(w, b), rest)) = bounds.split_first() else {
            let coeffs = |p: &MPoly, deg: usize| -> Vec<Rat> {
                let mut c: Vec<Rat> = p
                    .coefficients_in(var)
                    .iter()
                    .map(|q| q.constant_value().expect("fully evaluated"))
                    .collect();
                c.resize(deg + 1, Rat::zero());
                c.reverse();
                c
            };
            let (fc, gc) = (coeffs(f, m), coeffs(g, n));
            let size = m + n;
            let mut rows = Vec::with_capacity(size);
            for (cs, count) in [(&fc, n), (&gc, m)] {
                for shift in 0..count {
                    let mut row = vec![Rat::zero(); size];
                    for (j, c) in cs.iter().enumerate() {
                        row[shift + j] = c.clone();
                    }
                    rows.push(row);
                }
            }
            return MPoly::constant(nvars, rational_determinant(rows));
        };
        let values: Vec<MPoly> = (0..=b as usize)
            .map(|i| {
                let t = point(i);
                go(&evaluate_at(f, w, &t), &evaluate_at(g, w, &t), var, m, n, rest)
            })
            .collect();
        interpolate(values, w)
    }
    go(f, g, var, m, n, &bounds)
}

/// Valuation in `xvar` of the resultant of two polynomials in `var` and
/// `xvar`, reduced modulo [`modp::PRIME`]. `None` when the reduction fails or
/// vanishes. A nonzero reduction proves the resultant nonzero, and its
/// valuation bounds the true valuation from above.
pub fn resultant_valuation_mod_p(f: &MPoly, g: &MPoly, var: usize, xvar: usize) -> Option<usize> {
    let (m, n) = (f.degree(var) as usize, g.degree(var) as usize);
    if m == 0 || n == 0 {
        return None;
    }
    let bound = n * f.degree(xvar) as usize + m * g.degree(xvar) as usize;
    // Dense residues: coeffs[i][j] of var^i x^j.
    let residues = |p: &MPoly| -> Option<Vec<Vec<u64>>> {
        let mut out = vec![vec![0u64; p.degree(xvar) as usize + 1]; p.degree(var) as usize + 1];
        for (mono, c) in p.terms() {
            if mono.iter().enumerate().any(|(v, &e)| e > 0 && v != var && v != xvar) {
                return None;
            }
            out[mono[var] as usize][mono[xvar] as usize] = modp::reduce(c)?;
        }
        Some(out)
    };
    let (fr, gr) = (residues(f)?, residues(g)?);
    let eval = |coeffs: &[Vec<u64>], t: u64| -> Vec<u64> {
        coeffs
            .iter()
            .map(|row| row.iter().rev().fold(0, |acc, &c| modp::add(modp::mul(acc, t), c)))
            .rev()
            .collect()
    };
    let xs: Vec<u64> = (0..=bound as u64).collect();
    let ys = xs
        .iter()
        .map(|&t| {
            let (fc, gc) = (eval(&fr, t), eval(&gr, t));
            let size = m + n;
            let mut rows = Vec::with_capacity(size);
            for (cs, count) in [(&fc, n), (&gc, m)] {
                for shift in 0..count {
                    let mut row = vec![0; size];
                    row[shift..shift + cs.len()].copy_from_slice(cs);
                    rows.push(row);
                }
            }
            modp::determinant(rows)
        })
        .collect();
    modp::interpolate(&xs, ys).iter().position(|&c| c != 0)
}
