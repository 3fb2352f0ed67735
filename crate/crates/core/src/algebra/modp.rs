//! Arithmetic modulo the Mersenne prime `2^61 − 1`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::Rat;

pub const PRIME: u64 = (1 << 61) - 1;

pub fn add(a: u64, b: u64) -> u64 {
    (a + b) % PRIME
}

pub fn sub(a: u64, b: u64) -> u64 {
    (a + PRIME - b) % PRIME
}

pub fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue.
pub fn inv(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow(a, PRIME - 2)
}

pub fn reduce_int(v: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    let r = ((v % &p) + &p) % &p;
    r.to_u64().expect("reduced")
}

/// `None` when the denominator vanishes modulo the prime.
pub fn reduce(v: &Rat) -> Option<u64> {
    let d = reduce_int(v.denom());
    (d != 0).then(|| mul(reduce_int(v.numer()), inv(d)))
}

/// Determinant by Gaussian elimination; consumes the matrix.
pub fn determinant(mut m: Vec<Vec<u64>>) -> u64 {
    let n = m.len();
    let mut det = 1;
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&i| m[i][k] != 0) else {
            return 0;
        };
        if pivot != k {
            m.swap(pivot, k);
            det = sub(0, det);
        }
        det = mul(det, m[k][k]);
        let inv_p = inv(m[k][k]);
        for i in k + 1..n {
            if m[i][k] == 0 {
                continue;
            }
            let factor = mul(m[i][k], inv_p);
            for j in k..n {
                let s = mul(factor, m[k][j]);
                m[i][j] = sub(m[i][j], s);
            }
        }
    }
    det
}

/// Rank by Gauss–Jordan elimination.
pub fn rank(mut m: Vec<Vec<u64>>, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv_p = inv(m[rank][c]);
        for j in c..cols {
            m[rank][j] = mul(m[rank][j], inv_p);
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for j in c..cols {
                    let s = mul(f, m[rank][j]);
                    m[r][j] = sub(m[r][j], s);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Newton interpolation through `(xs[i], ys[i])` with distinct `xs`; dense
/// ascending coefficients.
pub fn interpolate(xs: &[u64], ys: Vec<u64>) -> Vec<u64> {
    let d = ys.len();
    if d == 0 {
        return Vec::new();
    }
    let mut c = ys;
    for level in 1..d {
        for i in (level..d).rev() {
            c[i] = mul(sub(c[i], c[i - 1]), inv(sub(xs[i], xs[i - level])));
        }
    }
    let mut acc = vec![c[d - 1]];
    for k in (0..d - 1).rev() {
        let mut next = vec![0; acc.len() + 1];
        for (j, &a) in acc.iter().enumerate() {
            next[j + 1] = add(next[j + 1], a);
            next[j] = sub(next[j], mul(a, xs[k]));
        }
        next[0] = add(next[0], c[k]);
        acc = next;
    }
    while acc.last() == Some(&0) {
        acc.pop();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_reduction() {
        assert_eq!(mul(inv(12345), 12345), 1);
        assert_eq!(reduce(&Rat::new(BigInt::from(-1), BigInt::from(2))), Some(mul(sub(0, 1), inv(2))));
        assert_eq!(reduce(&Rat::from_integer(BigInt::from(PRIME))), Some(0));
        assert!(reduce(&Rat::new(BigInt::from(1), BigInt::from(PRIME))).is_none());
    }

    #[test]
    fn small_determinant_and_rank() {
        assert_eq!(determinant(vec![vec![2, 3], vec![1, 4]]), 5);
        assert_eq!(rank(vec![vec![1, 2], vec![2, 4]], 2), 1);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        // 3 − x + 2x²
        let xs: Vec<u64> = (0..5).collect();
        let ys = xs.iter().map(|&x| sub(add(3, mul(2, mul(x, x))), x)).collect();
        assert_eq!(interpolate(&xs, ys), vec![3, PRIME - 1, 2]);
    }
}
