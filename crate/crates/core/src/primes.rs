use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::matrix::Int;

/// Prime factorisation by trial division, primes ascending.
pub fn factor(n: &Int) -> Vec<(Int, u32)> {
    let mut n = n.clone();
    if n < Int::zero() {
        n = -n;
    }
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    if let Some(small) = n.to_u64() {
        return factor_u64(small)
            .into_iter()
            .map(|(p, e)| (Int::from(p), e))
            .collect();
    }
    let mut p = Int::from(2u8);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1u8;
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Exponent of `p` in `n` (n non-zero).
pub fn valuation(n: &Int, p: &Int) -> u32 {
    let mut n = n.clone();
    let mut e = 0;
    while !n.is_zero() && n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// Partitions of `n` into non-increasing positive parts, in reverse
/// lexicographic order of the part sequence.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut vec![], &mut out);
    out
}

/// Positive divisors of `n`, ascending.
pub fn divisors_u64(n: u64) -> Vec<u64> {
    let mut ds: Vec<u64> = (1..=n)
        .take_while(|d| d * d <= n)
        .filter(|d| n.is_multiple_of(*d))
        .collect();
    let mut large: Vec<u64> = ds
        .iter()
        .rev()
        .map(|d| n / d)
        .filter(|&q| q * q != n)
        .collect();
    ds.append(&mut large);
    ds
}
