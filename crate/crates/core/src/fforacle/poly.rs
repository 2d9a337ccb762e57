//! Dense polynomials over a prime field `F_p`, coefficients low degree first.

use crate::arith::prime_factors;

pub(crate) fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `m`.
fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let m = trim(m.to_vec());
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let f = r[r.len() - 1] * lead_inv % p;
        for (i, &c) in m.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - f * c % p) % p;
        }
        r = trim(r);
    }
    r
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

/// `x^(p^e) mod m`.
fn frobenius_power_of_x(m: &[u64], p: u64, e: u32) -> Vec<u64> {
    let mut cur = rem(&[0, 1], m, p);
    for _ in 0..e {
        // raise to the p-th power by square and multiply
        let mut acc = vec![1u64];
        let mut base = cur.clone();
        let mut k = p;
        while k > 0 {
            if k & 1 == 1 {
                acc = mul_mod(&acc, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            k >>= 1;
        }
        cur = acc;
    }
    cur
}

/// Rabin's test: monic `f` of degree `k` is irreducible over `F_p` iff
/// `x^(p^k) = x mod f` and `gcd(x^(p^(k/l)) - x, f) = 1` for each prime `l | k`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let k = (f.len() - 1) as u32;
    if k == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    if sub(&frobenius_power_of_x(&f, p, k), &x, p) != Vec::<u64>::new() {
        return false;
    }
    prime_factors(k as u64).into_iter().all(|l| {
        let h = sub(&frobenius_power_of_x(&f, p, k / l as u32), &x, p);
        gcd(&f, &h, p).len() == 1
    })
}

/// Least monic irreducible polynomial of degree `k`, ordering candidates by
/// the base-`p` integer `c_0 + c_1 p + ... + c_{k-1} p^(k-1)` of their lower
/// coefficients. For `k = 1` this is `x`.
pub fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
    let total = p.pow(k);
    for code in 0..total {
        let mut f = Vec::with_capacity(k as usize + 1);
        let mut c = code;
        for _ in 0..k {
            f.push(c % p);
            c /= p;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
