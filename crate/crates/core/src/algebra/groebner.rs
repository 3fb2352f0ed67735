//! Reduced Gröbner bases under pure lexicographic order (variable 0 largest).
//!
//! Bases are computed over `Q` or over the rational function field `Q(t)` of
//! one variable `t`, which then acts as a parameter rather than a variable.
//! Reduction is fraction-free in both cases: polynomials are kept primitive
//! over `Z` (resp. `Z[t]`) and a reduction step scales the dividend instead of
//! dividing coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mpoly::{divides, lcm_monomial, MPoly, Monomial};
use super::upoly::UPoly;
use super::Rat;

/// Coefficient field of a Gröbner basis computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ground {
    Rationals,
    /// `Q(t)` for the given variable index `t`.
    RationalFunctions(usize),
}

/// A gcd domain whose fraction field is the ground field.
trait Coef: Clone + PartialEq + Debug {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn times(&self, other: &Self) -> Self;
    /// `self -= other`.
    fn sub_assign(&mut self, other: &Self);
    fn negated(&self) -> Self;
    /// Normalized gcd; `gcd(0, 0) = 0`.
    fn gcd_with(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn negative(&self) -> bool;
    fn size(&self) -> u64;
}

impl Coef for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        One::is_one(self)
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_assign(&mut self, other: &Self) {
        *self -= other;
    }
    fn negated(&self) -> Self {
        -self
    }
    fn gcd_with(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn size(&self) -> u64 {
        self.bits()
    }
}

/// Dense polynomial over `Z` in the parameter, ascending, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ZX(Vec<BigInt>);

impl ZX {
    fn trim(mut v: Vec<BigInt>) -> ZX {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        ZX(v)
    }

    fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn to_upoly(&self) -> UPoly {
        UPoly::new(self.0.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }
}

impl Coef for ZX {
    fn nil() -> Self {
        ZX(Vec::new())
    }
    fn unit() -> Self {
        ZX(vec![BigInt::one()])
    }
    fn is_nil(&self) -> bool {
        self.0.is_empty()
    }
    fn is_unit(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }
    fn times(&self, other: &Self) -> Self {
        if self.is_nil() || other.is_nil() {
            return ZX::nil();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZX(out)
    }
    fn sub_assign(&mut self, other: &Self) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), BigInt::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a -= b;
        }
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }
    fn negated(&self) -> Self {
        ZX(self.0.iter().map(|c| -c).collect())
    }
    fn gcd_with(&self, other: &Self) -> Self {
        if self.is_nil() || other.is_nil() {
            let g = if self.is_nil() { other } else { self };
            return if g.negative() { g.negated() } else { g.clone() };
        }
        let c = self.content().gcd(&other.content());
        if self.0.len() <= 1 || other.0.len() <= 1 {
            return ZX(vec![c]);
        }
        let g = self.to_upoly().gcd(&other.to_upoly()).primitive();
        ZX(g.coeffs().iter().map(|r| r.to_integer() * &c).collect())
    }
    fn div_exact(&self, other: &Self) -> Self {
        let d = other.0.len() - 1;
        let lead = &other.0[d];
        let mut rem = self.0.clone();
        let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(d)];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + d] / lead;
            if !q.is_zero() {
                for (i, c) in other.0.iter().enumerate() {
                    rem[k + i] -= &q * c;
                }
            }
            quot[k] = q;
        }
        debug_assert!(rem.iter().all(Zero::is_zero), "inexact division");
        ZX::trim(quot)
    }
    fn negative(&self) -> bool {
        self.0.last().is_some_and(Signed::is_negative)
    }
    fn size(&self) -> u64 {
        self.0.iter().map(BigInt::bits).sum::<u64>() + self.0.len() as u64
    }
}

/// Polynomial with coefficients in `C`; the leading term is the last entry.
#[derive(Debug, Clone, PartialEq)]
struct ZPoly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

fn to_integer_poly(p: &MPoly) -> ZPoly<BigInt> {
    ZPoly {
        nvars: p.nvars(),
        terms: p
            .primitive()
            .terms()
            .map(|(m, c)| (m.clone(), c.to_integer()))
            .collect(),
    }
}

fn from_integer_poly(p: &ZPoly<BigInt>) -> MPoly {
    MPoly::from_terms(
        p.nvars,
        p.terms
            .iter()
            .map(|(m, c)| (m.clone(), Rat::from_integer(c.clone()))),
    )
}

/// Moves `param` into the coefficients; its exponent is zero in every key.
fn to_parametric_poly(p: &MPoly, param: usize) -> ZPoly<ZX> {
    let mut groups: BTreeMap<Monomial, Vec<BigInt>> = BTreeMap::new();
    for (m, c) in p.primitive().terms() {
        let mut key = m.clone();
        let k = std::mem::replace(&mut key[param], 0) as usize;
        let entry = groups.entry(key).or_default();
        if entry.len() <= k {
            entry.resize(k + 1, BigInt::zero());
        }
        entry[k] = c.to_integer();
    }
    let mut out = ZPoly {
        nvars: p.nvars(),
        terms: groups.into_iter().map(|(m, v)| (m, ZX::trim(v))).collect(),
    };
    out.make_primitive();
    out
}

fn from_parametric_poly(p: &ZPoly<ZX>, param: usize) -> MPoly {
    MPoly::from_terms(
        p.nvars,
        p.terms.iter().flat_map(|(m, c)| {
            c.0.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(move |(k, a)| {
                let mut key = m.clone();
                key[param] = k as u32;
                (key, Rat::from_integer(a.clone()))
            })
        }),
    )
}

impl<C: Coef> ZPoly<C> {
    fn empty(nvars: usize) -> Self {
        ZPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self) -> (&Monomial, &C) {
        self.terms.last_key_value().expect("nonzero")
    }

    fn content(&self) -> C {
        let mut g = C::nil();
        for c in self.terms.values() {
            g = g.gcd_with(c);
            if g.is_unit() {
                break;
            }
        }
        g
    }

    fn divide_all(&mut self, g: &C) {
        for c in self.terms.values_mut() {
            *c = c.div_exact(g);
        }
    }

    /// Divides out the content and makes the leading coefficient positive.
    fn make_primitive(&mut self) {
        let Some((_, lc)) = self.terms.last_key_value() else {
            return;
        };
        let negative = lc.negative();
        let g = self.content();
        let g = if negative { g.negated() } else { g };
        if !g.is_unit() {
            self.divide_all(&g);
        }
    }

    /// `self := a·self − b·x^shift·g`.
    fn combine(&mut self, a: &C, b: &C, shift: &[u32], g: &ZPoly<C>) {
        if !a.is_unit() {
            for c in self.terms.values_mut() {
                *c = c.times(a);
            }
        }
        for (m, c) in &g.terms {
            let key: Monomial = m.iter().zip(shift).map(|(x, y)| x + y).collect();
            let entry = self.terms.entry(key).or_insert_with(C::nil);
            entry.sub_assign(&b.times(c));
            if entry.is_nil() {
                let key: Monomial = m.iter().zip(shift).map(|(x, y)| x + y).collect();
                self.terms.remove(&key);
            }
        }
    }
}

fn s_poly<C: Coef>(f: &ZPoly<C>, g: &ZPoly<C>) -> ZPoly<C> {
    let (mf, cf) = f.leading();
    let (mg, cg) = g.leading();
    let l = lcm_monomial(mf, mg);
    let sf: Monomial = l.iter().zip(mf).map(|(a, b)| a - b).collect();
    let sg: Monomial = l.iter().zip(mg).map(|(a, b)| a - b).collect();
    let d = cf.gcd_with(cg);
    let mut out = ZPoly::empty(f.nvars);
    // (cg/d)·x^sf·f − (cf/d)·x^sg·g
    out.combine(&C::unit(), &cg.div_exact(&d).negated(), &sf, f);
    out.combine(&C::unit(), &cf.div_exact(&d), &sg, g);
    out.make_primitive();
    out
}

/// Full fraction-free reduction; the result is primitive.
fn reduce<C: Coef>(p: &ZPoly<C>, basis: &[ZPoly<C>]) -> ZPoly<C> {
    let mut rest = p.clone();
    let mut done = ZPoly::empty(p.nvars);
    let mut steps = 0usize;
    while let Some((m, c)) = rest.terms.pop_last() {
        let Some(g) = basis.iter().find(|g| divides(g.leading().0, &m)) else {
            done.terms.insert(m, c);
            continue;
        };
        let (gm, gc) = g.leading();
        let d = gc.gcd_with(&c);
        let (a, b) = (gc.div_exact(&d), c.div_exact(&d));
        let shift: Monomial = m.iter().zip(gm).map(|(x, y)| x - y).collect();
        let mut tail = g.clone();
        tail.terms.pop_last();
        rest.combine(&a, &b, &shift, &tail);
        if !a.is_unit() {
            for v in done.terms.values_mut() {
                *v = v.times(&a);
            }
        }
        steps += 1;
        if steps % 16 == 0 {
            let mut g = C::nil();
            for c in rest.terms.values().chain(done.terms.values()) {
                g = g.gcd_with(c);
                if g.is_unit() {
                    break;
                }
            }
            if !g.is_nil() && !g.is_unit() {
                rest.divide_all(&g);
                done.divide_all(&g);
            }
        }
    }
    done.make_primitive();
    done
}

/// Full reduction of `p` modulo `basis` over `Q`, up to a nonzero constant
/// factor: no term of the result is divisible by any leading monomial of the
/// basis.
pub fn normal_form(p: &MPoly, basis: &[MPoly]) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    let zb: Vec<ZPoly<BigInt>> = basis.iter().filter(|g| !g.is_zero()).map(to_integer_poly).collect();
    from_integer_poly(&reduce(&to_integer_poly(p), &zb))
}

/// S-polynomial of `f` and `g` over `Q`.
pub fn s_polynomial(f: &MPoly, g: &MPoly) -> MPoly {
    let (mf, cf) = f.leading().expect("nonzero");
    let (mg, cg) = g.leading().expect("nonzero");
    let l = lcm_monomial(mf, mg);
    let sf: Monomial = l.iter().zip(mf).map(|(a, b)| a - b).collect();
    let sg: Monomial = l.iter().zip(mg).map(|(a, b)| a - b).collect();
    let a = f.mul_term(&sf, &cf.recip());
    let b = g.mul_term(&sg, &cg.recip());
    &a - &b
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Pair priority: degree of the lcm, then coefficient size, then the lcm.
type PairKey = (u32, u64, Monomial, usize, usize);

fn pair_key<C: Coef>(basis: &[ZPoly<C>], i: usize, j: usize) -> PairKey {
    let (mi, ci) = basis[i].leading();
    let (mj, cj) = basis[j].leading();
    let l = lcm_monomial(mi, mj);
    (l.iter().sum(), ci.size() + cj.size(), l, i, j)
}

fn pending_has<C: Coef>(pending: &BTreeSet<PairKey>, basis: &[ZPoly<C>], i: usize, j: usize) -> bool {
    pending.contains(&pair_key(basis, i.min(j), i.max(j)))
}

fn buchberger<C: Coef>(mut basis: Vec<ZPoly<C>>) -> Vec<ZPoly<C>> {
    basis.retain(|g| !g.is_zero());
    if basis.is_empty() {
        return basis;
    }
    let mut pending: BTreeSet<PairKey> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert(pair_key(&basis, i, j));
        }
    }
    while let Some(key) = pending.pop_first() {
        let (_, _, lcm, i, j) = key;
        if coprime(basis[i].leading().0, basis[j].leading().0) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].leading().0, &lcm)
                && !pending_has(&pending, &basis, i, k)
                && !pending_has(&pending, &basis, j, k)
        });
        if chain {
            continue;
        }
        let r = reduce(&s_poly(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            pending.insert(pair_key(&basis, k, n));
        }
    }

    // Drop elements whose leading monomial is a multiple of another's.
    let mut minimal: Vec<ZPoly<C>> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let lm = g.leading().0;
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let lh = h.leading().0;
            k != idx && divides(lh, lm) && (lh != lm || k < idx)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<ZPoly<C>> = (0..minimal.len())
        .map(|i| {
            let others: Vec<ZPoly<C>> = minimal
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, g)| g.clone())
                .collect();
            reduce(&minimal[i], &others)
        })
        .collect();
    reduced.sort_by(|a, b| a.leading().0.cmp(b.leading().0));
    reduced
}

fn all_s_polys_reduce<C: Coef>(zb: &[ZPoly<C>]) -> bool {
    (0..zb.len()).all(|j| (0..j).all(|i| reduce(&s_poly(&zb[i], &zb[j]), zb).is_zero()))
}

fn interreduced<C: Coef>(zb: &[ZPoly<C>]) -> bool {
    zb.iter().enumerate().all(|(i, g)| {
        g.terms.keys().all(|m| {
            zb.iter()
                .enumerate()
                .all(|(k, h)| k == i || !divides(h.leading().0, m))
        })
    })
}

/// Buchberger's algorithm with the coprime and chain criteria, followed by
/// minimization and inter-reduction over `Q`. Elements are returned as
/// primitive integer polynomials with positive leading coefficient, sorted by
/// leading monomial ascending (smallest element first).
pub fn groebner_reduced(gens: &[MPoly]) -> Vec<MPoly> {
    groebner_reduced_over(gens, Ground::Rationals)
}

/// [`groebner_reduced`] over the given ground field. Over `Q(t)` the elements
/// are cleared of denominators to primitive polynomials in `Z[t]` and leading
/// terms ignore `t`.
pub fn groebner_reduced_over(gens: &[MPoly], ground: Ground) -> Vec<MPoly> {
    match ground {
        Ground::Rationals => buchberger(gens.iter().filter(|g| !g.is_zero()).map(to_integer_poly).collect())
            .iter()
            .map(from_integer_poly)
            .collect(),
        Ground::RationalFunctions(t) => buchberger(
            gens.iter()
                .filter(|g| !g.is_zero())
                .map(|g| to_parametric_poly(g, t))
                .collect(),
        )
        .iter()
        .map(|g| from_parametric_poly(g, t))
        .collect(),
    }
}

/// True iff every S-polynomial of the basis reduces to zero modulo the basis.
pub fn is_groebner(basis: &[MPoly]) -> bool {
    is_groebner_over(basis, Ground::Rationals)
}

pub fn is_groebner_over(basis: &[MPoly], ground: Ground) -> bool {
    match ground {
        Ground::Rationals => all_s_polys_reduce(&basis.iter().map(to_integer_poly).collect::<Vec<_>>()),
        Ground::RationalFunctions(t) => {
            all_s_polys_reduce(&basis.iter().map(|g| to_parametric_poly(g, t)).collect::<Vec<_>>())
        }
    }
}

/// True iff no monomial of any element lies in the leading-term ideal of the
/// other elements.
pub fn is_interreduced(basis: &[MPoly]) -> bool {
    is_interreduced_over(basis, Ground::Rationals)
}

pub fn is_interreduced_over(basis: &[MPoly], ground: Ground) -> bool {
    match ground {
        Ground::Rationals => interreduced(&basis.iter().map(to_integer_poly).collect::<Vec<_>>()),
        Ground::RationalFunctions(t) => {
            interreduced(&basis.iter().map(|g| to_parametric_poly(g, t)).collect::<Vec<_>>())
        }
    }
}

/// True iff `p` lies in the ideal generated by the Gröbner basis `basis`
/// (over `Q`).
pub fn in_ideal(p: &MPoly, basis: &[MPoly]) -> bool {
    normal_form(p, basis).is_zero()
}
