//! Reduction of a polynomial system to one equation in the root variable and
//! `x`.
//!
//! Variables are indexed `0..n`; `x` is always the last one. Auxiliary
//! variables are removed one at a time: by substitution when some equation is
//! linear in the variable (every candidate pivot is tried and the smallest
//! resulting system kept), otherwise by pairwise resultants. A lex Gröbner
//! basis is the fallback.

use super::gcd::gcd;
use super::groebner::{groebner_reduced_over, Ground};
use super::mpoly::MPoly;
use super::resultant::resultant;
use super::upoly::remove_content_in;
use super::AlgebraError;

/// Strips monomial factors and content in `x`.
fn tidy(p: &MPoly) -> MPoly {
    let Some(mut low) = p.terms().next().map(|(m, _)| m.clone()) else {
        return p.clone();
    };
    for (m, _) in p.terms() {
        for (l, e) in low.iter_mut().zip(m) {
            *l = (*l).min(*e);
        }
    }
    let stripped = MPoly::from_terms(
        p.nvars(),
        p.terms()
            .map(|(m, c)| (m.iter().zip(&low).map(|(e, l)| e - l).collect(), c.clone())),
    );
    remove_content_in(&stripped, p.nvars() - 1)
}

/// Replaces `var` in `g` by `-b/a`, cleared of the denominator `a^deg`.
fn substitute_linear(g: &MPoly, var: usize, a: &MPoly, b: &MPoly) -> MPoly {
    let gc = g.coefficients_in(var);
    let k = gc.len() - 1;
    let neg_b = -b.clone();
    let mut out = MPoly::zero(g.nvars());
    for (i, gi) in gc.iter().enumerate() {
        if gi.is_zero() {
            continue;
        }
        out = &out + &(&(gi * &neg_b.pow(i as u32)) * &a.pow((k - i) as u32));
    }
    out
}

/// Solves `eqs[idx]` (linear in `var`) for `var` and substitutes into the rest.
fn substitute_pivot(eqs: &[MPoly], var: usize, idx: usize) -> Vec<MPoly> {
    let coeffs = eqs[idx].coefficients_in(var);
    let (b, a) = (&coeffs[0], &coeffs[1]);
    eqs.iter()
        .enumerate()
        .filter(|&(i, _)| i != idx)
        .map(|(_, g)| {
            if g.uses_var(var) {
                tidy(&substitute_linear(g, var, a, b))
            } else {
                g.clone()
            }
        })
        .collect()
}

fn is_auxiliary(var: usize, root: usize, nvars: usize) -> bool {
    var != root && var != nvars - 1
}

fn finish(eqs: &[MPoly], root: usize) -> Result<MPoly, AlgebraError> {
    let candidates: Vec<&MPoly> = eqs.iter().filter(|e| e.uses_var(root)).collect();
    let Some(first) = candidates.first() else {
        return Err(AlgebraError::NoEliminant);
    };
    let common = candidates[1..].iter().fold((*first).clone(), |g, e| gcd(&g, e));
    let chosen = if common.uses_var(root) {
        common
    } else {
        candidates
            .iter()
            .min_by_key(|e| (e.degree(root), e.total_degree(), e.nterms()))
            .map(|e| (*e).clone())
            .expect("nonempty")
    };
    Ok(tidy(&chosen))
}

fn to_bivariate(p: &MPoly, root: usize) -> Result<MPoly, AlgebraError> {
    let n = p.nvars();
    let mapping: Vec<Option<usize>> = (0..n)
        .map(|v| match v {
            v if v == root => Some(0),
            v if v == n - 1 => Some(1),
            _ => None,
        })
        .collect();
    p.remap(2, &mapping)
}

/// Substitution and resultant elimination. Returns a polynomial in the full
/// variable list that only involves `root` and `x`.
pub fn eliminate_by_resultants(system: &[MPoly], root: usize) -> Result<MPoly, AlgebraError> {
    let Some(nvars) = system.first().map(MPoly::nvars) else {
        return Err(AlgebraError::NoEliminant);
    };
    let mut eqs: Vec<MPoly> = system.iter().filter(|e| !e.is_zero()).map(tidy).collect();
    loop {
        // Content removal can leave constants behind; they constrain nothing.
        eqs.retain(|e| !e.is_constant());
        let aux: Vec<usize> = (0..nvars)
            .filter(|&v| is_auxiliary(v, root, nvars) && eqs.iter().any(|e| e.uses_var(v)))
            .collect();
        if aux.is_empty() {
            return finish(&eqs, root);
        }

        let candidates: Vec<(usize, usize)> = aux
            .iter()
            .flat_map(|&v| {
                eqs.iter()
                    .enumerate()
                    .filter(move |(_, e)| e.degree(v) == 1)
                    .map(move |(i, _)| (v, i))
            })
            .collect();
        if let Some(next) = candidates
            .iter()
            .map(|&(var, idx)| substitute_pivot(&eqs, var, idx))
            .min_by_key(|sys| sys.iter().map(MPoly::nterms).sum::<usize>())
        {
            eqs = next;
            continue;
        }

        // No linear occurrence: eliminate the variable of smallest degree.
        let var = *aux
            .iter()
            .min_by_key(|&&v| eqs.iter().map(|e| e.degree(v)).filter(|&d| d > 0).min())
            .expect("nonempty");
        let mut with: Vec<MPoly> = Vec::new();
        let mut without: Vec<MPoly> = Vec::new();
        for e in eqs {
            if e.uses_var(var) {
                with.push(e);
            } else {
                without.push(e);
            }
        }
        with.sort_by_key(|e| (e.degree(var), e.nterms()));
        let pivot = with.remove(0);
        if with.is_empty() {
            // The variable occurs in a single equation; it imposes no
            // constraint on the others.
            eqs = without;
            continue;
        }
        for g in &with {
            let r = resultant(&pivot, g, var)?;
            if !r.is_zero() {
                without.push(tidy(&r));
            }
        }
        eqs = without;
    }
}

/// Removes auxiliary variables that some equation defines linearly with a
/// coefficient in `x` alone. Over `Q(x)` this is an isomorphism of quotient
/// rings, so the elimination ideal in `{root, x}` changes at most by factors
/// in `x`.
pub fn substitute_definitions(system: &[MPoly], root: usize) -> Vec<MPoly> {
    let mut eqs: Vec<MPoly> = system.iter().filter(|e| !e.is_zero()).cloned().collect();
    let Some(nvars) = eqs.first().map(MPoly::nvars) else {
        return eqs;
    };
    let x = nvars - 1;
    loop {
        let pivot = (0..nvars).filter(|&v| is_auxiliary(v, root, nvars)).find_map(|v| {
            eqs.iter().position(|e| {
                e.degree(v) == 1 && {
                    let a = &e.coefficients_in(v)[1];
                    a.vars_used().iter().all(|&w| w == x)
                }
            })
            .map(|i| (v, i))
        });
        let Some((var, idx)) = pivot else {
            return eqs;
        };
        eqs = substitute_pivot(&eqs, var, idx);
        eqs.retain(|e| !e.is_constant());
    }
}

/// Gröbner elimination: the basis element in `{root, x}` of a lex basis over
/// `Q(x)`, after [`substitute_definitions`]. Working over `Q(x)` discards
/// components lying over isolated values of `x`, which never carry the power
/// series solution.
///
/// `root` must be the second-to-last variable so that lex order eliminates
/// every auxiliary variable first.
pub fn eliminate_by_groebner(system: &[MPoly], root: usize) -> Result<MPoly, AlgebraError> {
    let Some(nvars) = system.first().map(MPoly::nvars) else {
        return Err(AlgebraError::NoEliminant);
    };
    let basis = groebner_reduced_over(
        &substitute_definitions(system, root),
        Ground::RationalFunctions(nvars - 1),
    );
    basis
        .iter()
        .find(|g| {
            g.uses_var(root)
                && (0..g.nvars()).all(|v| !is_auxiliary(v, root, g.nvars()) || !g.uses_var(v))
        })
        .map(tidy)
        .ok_or(AlgebraError::NoEliminant)
}

/// Eliminates all auxiliary variables and returns a nonzero polynomial in
/// `[P, x]` (the root variable renamed to `P`) lying in the ideal of the
/// system, up to factors introduced by clearing denominators.
pub fn eliminate_to_root(system: &[MPoly], root: usize) -> Result<MPoly, AlgebraError> {
    let q = match eliminate_by_resultants(system, root) {
        Ok(q) => q,
        Err(_) => eliminate_by_groebner(system, root)?,
    };
    to_bivariate(&q, root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::format::{parse_bivariate, parse_poly};

    #[test]
    fn self_loop() {
        let eq = parse_poly("(1-x)*f - 1 - x^2*f^2", &["f", "x"]).unwrap();
        let q = eliminate_to_root(&[eq], 0).unwrap();
        assert_eq!(q, parse_bivariate("x^2*P^2 + (x-1)*P + 1").unwrap());
    }

    #[test]
    fn triangular_linear() {
        let v = |s: &str| parse_poly(s, &["v", "P", "x"]).unwrap();
        let q = eliminate_to_root(&[v("v - x"), v("P - v")], 1).unwrap();
        assert_eq!(q, parse_bivariate("P - x").unwrap());
    }

    #[test]
    fn nonlinear_cycle() {
        // Q^2 = P, P = 1 + x*Q, so P^2 - 2P + 1 = x^2 P.
        let v = |s: &str| parse_poly(s, &["Q", "P", "x"]).unwrap();
        let sys = [v("Q^2 - P"), v("P - 1 - x*Q")];
        let by_res = eliminate_by_resultants(&sys, 1).unwrap();
        let by_gb = eliminate_by_groebner(&sys, 1).unwrap();
        let expected = v("P^2 - (2 + x^2)*P + 1");
        assert_eq!(by_res, expected);
        assert_eq!(by_gb, expected);
    }
}
