//! Number-theoretic transform over the prime 998244353, used to multiply large
//! polynomials over small prime fields through an exact integer convolution.

pub const MOD: u64 = 998_244_353;
const ROOT: u64 = 3;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    b %= MOD;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % MOD;
        }
        b = b * b % MOD;
        e >>= 1;
    }
    r
}

/// In-place transform of a power-of-two length vector.
pub fn transform(a: &mut [u64], invert: bool) {
    let n = a.len();
    debug_assert!(n.is_power_of_two());
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let mut w = pow_mod(ROOT, (MOD - 1) / len as u64);
        if invert {
            w = pow_mod(w, MOD - 2);
        }
        let half = len / 2;
        let mut ws = Vec::with_capacity(half);
        let mut cur = 1u64;
        for _ in 0..half {
            ws.push(cur);
            cur = cur * w % MOD;
        }
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let u = a[start + k];
                let v = a[start + k + half] * ws[k] % MOD;
                a[start + k] = if u + v >= MOD { u + v - MOD } else { u + v };
                a[start + k + half] = if u >= v { u - v } else { u + MOD - v };
            }
        }
        len <<= 1;
    }
    if invert {
        let inv_n = pow_mod(n as u64, MOD - 2);
        for x in a.iter_mut() {
            *x = *x * inv_n % MOD;
        }
    }
}

/// Transform length able to hold a product of the given lengths.
pub fn size_for(la: usize, lb: usize) -> usize {
    (la + lb - 1).next_power_of_two()
}

/// Forward transform of `a` zero-padded to `n`.
pub fn forward(a: &[u64], n: usize) -> Vec<u64> {
    let mut v = vec![0u64; n];
    v[..a.len()].copy_from_slice(a);
    transform(&mut v, false);
    v
}

/// Cyclic-free convolution of two non-negative integer vectors, modulo [`MOD`].
/// Exact as an integer convolution whenever every true entry stays below `MOD`.
pub fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = size_for(a.len(), b.len());
    let mut fa = forward(a, n);
    let fb = forward(b, n);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = *x * y % MOD;
    }
    transform(&mut fa, true);
    fa.truncate(a.len() + b.len() - 1);
    fa
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_schoolbook() {
        let a: Vec<u64> = (0..300).map(|i| (i * 7 + 3) % 5).collect();
        let b: Vec<u64> = (0..217).map(|i| (i * i + 1) % 5).collect();
        let mut want = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                want[i + j] += x * y;
            }
        }
        assert_eq!(convolve(&a, &b), want);
    }
}
