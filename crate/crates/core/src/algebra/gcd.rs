//! Multivariate gcd by recursive primitive polynomial remainder sequences.

use super::mpoly::MPoly;
use super::upoly::UPoly;

fn normalize(p: MPoly) -> MPoly {
    if p.is_zero() {
        p
    } else {
        p.primitive()
    }
}

/// Pseudo-remainder of `a` by `b` with respect to `var`.
pub fn pseudo_rem(a: &MPoly, b: &MPoly, var: usize) -> MPoly {
    let db = b.degree(var);
    let lc_b = b.coefficients_in(var).pop().expect("nonzero divisor");
    let nvars = a.nvars();
    let mut r = a.clone();
    while !r.is_zero() && r.degree(var) >= db {
        let dr = r.degree(var);
        let lc_r = r.coefficients_in(var).pop().unwrap();
        let mut shift = vec![0; nvars];
        shift[var] = dr - db;
        let shifted = &lc_r * &b.mul_term(&shift, &super::Rat::from_integer(1.into()));
        r = &(&lc_b * &r) - &shifted;
    }
    r
}

/// Content of `p` as a polynomial in `var`: gcd of its coefficients.
pub fn content(p: &MPoly, var: usize) -> MPoly {
    p.coefficients_in(var)
        .iter()
        .fold(MPoly::zero(p.nvars()), |g, c| gcd(&g, c))
}

pub fn primitive_part(p: &MPoly, var: usize) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content(p, var);
    normalize(p.exact_div(&c).expect("content divides"))
}

/// Greatest common divisor over Q, normalized to a primitive integer
/// polynomial with positive leading coefficient.
pub fn gcd(f: &MPoly, g: &MPoly) -> MPoly {
    if f.is_zero() {
        return normalize(g.clone());
    }
    if g.is_zero() {
        return normalize(f.clone());
    }
    let nvars = f.nvars();
    let Some(var) = (0..nvars).find(|&v| f.uses_var(v) || g.uses_var(v)) else {
        return MPoly::one(nvars);
    };
    if let (Some(a), Some(b)) = (UPoly::from_mpoly(f, var), UPoly::from_mpoly(g, var)) {
        return normalize(a.gcd(&b).to_mpoly(nvars, var));
    }
    if !f.uses_var(var) {
        return gcd(f, &content(g, var));
    }
    if !g.uses_var(var) {
        return gcd(&content(f, var), g);
    }
    let cf = content(f, var);
    let cg = content(g, var);
    let c = gcd(&cf, &cg);
    let mut a = f.exact_div(&cf).expect("content divides");
    let mut b = g.exact_div(&cg).expect("content divides");
    if a.degree(var) < b.degree(var) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = pseudo_rem(&a, &b, var);
        a = b;
        b = if r.is_zero() { r } else { primitive_part(&r, var) };
    }
    if !a.uses_var(var) {
        return normalize(c);
    }
    normalize(&c * &primitive_part(&a, var))
}

/// Product of the distinct irreducible factors of `p` (up to a constant).
pub fn sqfree_part(p: &MPoly) -> MPoly {
    let f = normalize(p.clone());
    let Some(&var) = f.vars_used().first() else {
        return MPoly::one(p.nvars());
    };
    let c = content(&f, var);
    // Every factor of the primitive part involves `var`.
    let pp = f.exact_div(&c).expect("content divides");
    let g = gcd(&pp, &pp.derivative(var));
    let reduced = pp.exact_div(&g).expect("gcd divides");
    normalize(&reduced * &sqfree_part(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::format::parse_bivariate;

    fn bp(s: &str) -> MPoly {
        parse_bivariate(s).unwrap()
    }

    #[test]
    fn gcd_of_products() {
        let m = bp("x^2*P^2 + (x-1)*P + 1");
        let a = &m * &bp("P - x");
        let b = &m * &bp("x*P + 3");
        assert_eq!(gcd(&a, &b), m);
        assert_eq!(gcd(&bp("P - x"), &bp("P + x")), MPoly::one(2));
        assert_eq!(gcd(&bp("2*x^2 - 2"), &bp("x^2 + 2*x + 1")), bp("x + 1"));
    }

    #[test]
    fn square_free() {
        let m = bp("x^2*P^2 + (x-1)*P + 1");
        let sq = &(&m * &m) * &bp("(1-x)^3*(P+1)");
        assert_eq!(sqfree_part(&sq), (&m * &bp("(x-1)*(P+1)")).primitive());
    }
}
