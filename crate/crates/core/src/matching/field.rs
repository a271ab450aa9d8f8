//! Arithmetic modulo the Mersenne prime `2^61 - 1`.

use rand::Rng;

pub const MODULUS: u64 = (1 << 61) - 1;

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + MODULUS - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    let x = (a as u128) * (b as u128);
    let lo = (x as u64) & MODULUS;
    let hi = (x >> 61) as u64;
    add(lo, hi)
}

pub fn pow(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse; `a` must be nonzero.
pub fn inv(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow(a, MODULUS - 2)
}

pub fn random_nonzero<R: Rng>(rng: &mut R) -> u64 {
    rng.gen_range(1..MODULUS)
}

/// Determinant of a row-major `n x n` matrix; consumes the buffer.
pub fn determinant(mut a: Vec<u64>, n: usize) -> u64 {
    let mut det = 1u64;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| a[r * n + col] != 0) else {
            return 0;
        };
        if pivot != col {
            for k in 0..n {
                a.swap(pivot * n + k, col * n + k);
            }
            det = sub(0, det);
        }
        let p = a[col * n + col];
        det = mul(det, p);
        let p_inv = inv(p);
        for r in col + 1..n {
            let f = mul(a[r * n + col], p_inv);
            if f == 0 {
                continue;
            }
            for k in col..n {
                let v = mul(f, a[col * n + k]);
                a[r * n + k] = sub(a[r * n + k], v);
            }
        }
    }
    det
}

/// Determinant and inverse by Gauss-Jordan; `None` when singular.
pub fn determinant_and_inverse(mut a: Vec<u64>, n: usize) -> Option<(u64, Vec<u64>)> {
    let mut b = vec![0u64; n * n];
    for i in 0..n {
        b[i * n + i] = 1;
    }
    let mut det = 1u64;
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r * n + col] != 0)?;
        if pivot != col {
            for k in 0..n {
                a.swap(pivot * n + k, col * n + k);
                b.swap(pivot * n + k, col * n + k);
            }
            det = sub(0, det);
        }
        let p = a[col * n + col];
        det = mul(det, p);
        let p_inv = inv(p);
        for k in 0..n {
            a[col * n + k] = mul(a[col * n + k], p_inv);
            b[col * n + k] = mul(b[col * n + k], p_inv);
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[r * n + col];
            if f == 0 {
                continue;
            }
            for k in 0..n {
                let va = mul(f, a[col * n + k]);
                a[r * n + k] = sub(a[r * n + k], va);
                let vb = mul(f, b[col * n + k]);
                b[r * n + k] = sub(b[r * n + k], vb);
            }
        }
    }
    Some((det, b))
}

/// Inverse of the Vandermonde matrix `V[k][e] = points[k]^e`, row-major.
///
/// Row `e` of the result maps evaluations at `points` to the coefficient of
/// `t^e`. Points must be distinct.
pub fn inverse_vandermonde(points: &[u64]) -> Vec<u64> {
    let n = points.len();
    let mut v = vec![0u64; n * n];
    for (k, &x) in points.iter().enumerate() {
        let mut p = 1;
        for e in 0..n {
            v[k * n + e] = p;
            p = mul(p, x);
        }
    }
    determinant_and_inverse(v, n).expect("distinct interpolation points").1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        for a in [1u64, 2, 12345, MODULUS - 1] {
            assert_eq!(mul(a, inv(a)), 1);
        }
        assert_eq!(sub(0, 1), MODULUS - 1);
        assert_eq!(mul(MODULUS - 1, MODULUS - 1), 1);
    }

    #[test]
    fn small_determinants() {
        assert_eq!(determinant(vec![2, 3, 1, 4], 2), 5);
        assert_eq!(determinant(vec![1, 2, 2, 4], 2), 0);
        assert_eq!(determinant(vec![0, 1, 1, 0], 2), MODULUS - 1);
        let (d, inv) = determinant_and_inverse(vec![2, 3, 1, 4], 2).unwrap();
        assert_eq!(d, 5);
        // inverse of [[2,3],[1,4]] is [[4,-3],[-1,2]]/5
        let f = super::inv(5);
        assert_eq!(inv, vec![mul(4, f), mul(sub(0, 3), f), mul(sub(0, 1), f), mul(2, f)]);
    }

    #[test]
    fn vandermonde_interpolates() {
        // 3 + 2t + 5t^2 at t = 1, 2, 3
        let pts = [1u64, 2, 3];
        let vals: Vec<u64> = pts.iter().map(|&t| 3 + 2 * t + 5 * t * t).collect();
        let inv = inverse_vandermonde(&pts);
        let coeffs: Vec<u64> = (0..3)
            .map(|e| (0..3).fold(0, |acc, k| add(acc, mul(inv[e * 3 + k], vals[k]))))
            .collect();
        assert_eq!(coeffs, vec![3, 2, 5]);
    }
}
