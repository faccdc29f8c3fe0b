//! Brute-force oracles over small finite groups.
//!
//! Everything here works on explicit coordinate vectors modulo the cyclic
//! orders and shares no code with the lattice machinery under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use ppmod_core::group::{Element, FgGroup};
use ppmod_core::hom::Hom;
use ppmod_core::matrix::Int;
use ppmod_core::pp::PpFormula;

pub type Vector = Vec<i64>;

pub fn to_i64(x: &Int) -> i64 {
    i64::try_from(x).expect("small integer")
}

/// A finite group `Z/m1 + ... + Z/mk` with explicit elements.
#[derive(Debug, Clone)]
pub struct Brute {
    pub moduli: Vec<i64>,
}

impl Brute {
    pub fn new(g: &FgGroup) -> Self {
        assert_eq!(g.rank(), 0, "brute force needs a finite group");
        Brute {
            moduli: g.divisors().iter().map(to_i64).collect(),
        }
    }

    pub fn from_moduli(moduli: &[i64]) -> Self {
        Brute {
            moduli: moduli.to_vec(),
        }
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().product::<i64>() as usize
    }

    pub fn exponent(&self) -> i64 {
        self.moduli.iter().fold(1, |a, &b| lcm(a, b))
    }

    pub fn elements(&self) -> Vec<Vector> {
        let mut out = vec![vec![]];
        for &m in &self.moduli {
            out = out
                .into_iter()
                .flat_map(|v: Vector| (0..m).map(move |x| [v.clone(), vec![x]].concat()))
                .collect();
        }
        out
    }

    pub fn reduce(&self, v: &[i64]) -> Vector {
        v.iter()
            .zip(&self.moduli)
            .map(|(x, m)| x.rem_euclid(*m))
            .collect()
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vector {
        self.reduce(&a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>())
    }

    pub fn scale(&self, k: i64, a: &[i64]) -> Vector {
        self.reduce(&a.iter().map(|x| x * k).collect::<Vec<_>>())
    }

    pub fn zero(&self) -> Vector {
        vec![0; self.moduli.len()]
    }

    pub fn is_zero(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Subgroup generated by `gens`.
    pub fn span(&self, gens: &[Vector]) -> BTreeSet<Vector> {
        let mut set: BTreeSet<Vector> = BTreeSet::from([self.zero()]);
        let mut frontier = vec![self.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    pub fn multiples(&self, n: i64, set: &BTreeSet<Vector>) -> BTreeSet<Vector> {
        set.iter().map(|x| self.scale(n, x)).collect()
    }

    pub fn all(&self) -> BTreeSet<Vector> {
        self.elements().into_iter().collect()
    }

    /// Does the tuple (free variables, flattened) satisfy the formula?
    pub fn pp_holds(&self, phi: &PpFormula, tuple: &[Vector]) -> bool {
        let rows: Vec<Vec<i64>> = phi
            .rows()
            .iter()
            .map(|r| r.iter().map(to_i64).collect())
            .collect();
        let free = phi.free_vars();
        let bound = phi.bound_vars();
        let elems = self.elements();
        let mut witness = vec![0usize; bound];
        loop {
            let ok = rows.iter().all(|row| {
                let mut acc = self.zero();
                for (j, &c) in row.iter().enumerate() {
                    let v = if j < free {
                        &tuple[j]
                    } else {
                        &elems[witness[j - free]]
                    };
                    acc = self.add(&acc, &self.scale(c, v));
                }
                self.is_zero(&acc)
            });
            if ok {
                return true;
            }
            // next witness in mixed radix
            let mut k = 0;
            loop {
                if k == bound {
                    return false;
                }
                witness[k] += 1;
                if witness[k] < elems.len() {
                    break;
                }
                witness[k] = 0;
                k += 1;
            }
        }
    }

    /// All tuples of the given arity satisfying the formula.
    pub fn pp_set(&self, phi: &PpFormula) -> BTreeSet<Vec<Vector>> {
        let elems = self.elements();
        let mut tuples: Vec<Vec<Vector>> = vec![vec![]];
        for _ in 0..phi.free_vars() {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    elems
                        .iter()
                        .map(move |e| [t.clone(), vec![e.clone()]].concat())
                })
                .collect();
        }
        tuples
            .into_iter()
            .filter(|t| self.pp_holds(phi, t))
            .collect()
    }

    /// `|phi(M)| / |psi(M)|`, assuming `psi(M) ⊆ phi(M)`.
    pub fn invariant(&self, phi: &PpFormula, psi: &PpFormula) -> u64 {
        let a = self.pp_set(phi);
        let b = self.pp_set(psi);
        assert!(b.is_subset(&a));
        (a.len() / b.len()) as u64
    }

    /// `H` is pure iff `nM ∩ H = nH` for every `n` up to the exponent.
    pub fn is_pure(&self, h: &BTreeSet<Vector>) -> bool {
        let all = self.all();
        (1..=self.exponent()).all(|n| {
            let nm = self.multiples(n, &all);
            let nh = self.multiples(n, h);
            nm.intersection(h).cloned().collect::<BTreeSet<_>>() == nh
        })
    }

    /// Number of elements killed by `k`.
    pub fn killed_by(&self, k: i64) -> usize {
        self.elements()
            .iter()
            .filter(|x| self.is_zero(&self.scale(k, x)))
            .count()
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

pub fn element_vec(e: &Element) -> Vector {
    e.coords().iter().map(to_i64).collect()
}

pub fn prime_factors(mut n: i64) -> Vec<(i64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
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

/// Invariant factors of `Z/m1 + ... + Z/mk`, computed from the counts
/// `|M[p^j]|`: the number of cyclic p-factors of exponent at least `j` is
/// `log_p(|M[p^j]| / |M[p^(j-1)]|)`.
pub fn classify(moduli: &[i64]) -> Vec<i64> {
    let b = Brute::from_moduli(moduli);
    let n = b.order() as i64;
    let mut by_prime: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
    for (p, e) in prime_factors(n) {
        let mut at_least = Vec::new();
        let mut prev = 1usize;
        for j in 1..=e {
            let c = b.killed_by(p.pow(j));
            let mut ratio = c / prev;
            let mut count = 0;
            while ratio > 1 {
                ratio /= p as usize;
                count += 1;
            }
            at_least.push(count);
            prev = c;
        }
        // exponents of the cyclic p-factors, largest first
        let mut exps = Vec::new();
        for j in (1..=e).rev() {
            let more = at_least.get(j as usize).copied().unwrap_or(0);
            for _ in 0..(at_least[j as usize - 1] - more) {
                exps.push(j);
            }
        }
        by_prime.insert(p, exps);
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut divisors = vec![1i64; len];
    for (p, exps) in &by_prime {
        for (i, e) in exps.iter().enumerate() {
            divisors[len - 1 - i] *= p.pow(*e);
        }
    }
    divisors
}

/// Number of partitions of `n`.
pub fn partition_count(n: u32) -> u64 {
    fn go(n: u32, max: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|k| go(n - k, k)).sum()
    }
    go(n, n)
}

/// Number of abelian groups of order `n`.
pub fn abelian_group_count(n: i64) -> u64 {
    prime_factors(n)
        .into_iter()
        .map(|(_, e)| partition_count(e))
        .product()
}

/// The map on explicit elements.
pub fn apply(h: &Hom, x: &[i64]) -> Vector {
    let t = Brute::new(h.target());
    let m: Vec<Vec<i64>> = h
        .matrix()
        .iter()
        .map(|r| r.iter().map(to_i64).collect())
        .collect();
    let image: Vec<i64> = m
        .iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect();
    t.reduce(&image)
}

/// Injective with pure image, by enumeration.
pub fn is_pure_embedding(h: &Hom) -> bool {
    let s = Brute::new(h.source());
    let t = Brute::new(h.target());
    let image: BTreeSet<Vector> = s.elements().iter().map(|x| apply(h, x)).collect();
    image.len() == s.order() && t.is_pure(&image)
}

/// Every automorphism of a finite group, as images of the canonical
/// generators; `None` when more than `limit` combinations of generator
/// images would have to be tried.
pub fn automorphisms(g: &FgGroup, limit: usize) -> Option<Vec<Vec<Vector>>> {
    let b = Brute::new(g);
    let order_of = |x: &Vector| {
        (1..=b.exponent())
            .find(|&n| b.is_zero(&b.scale(n, x)))
            .unwrap()
    };
    // a generator of order m must go to an element of order m
    let candidates: Vec<Vec<Vector>> = b
        .moduli
        .iter()
        .map(|&m| {
            b.elements()
                .into_iter()
                .filter(|y| order_of(y) == m)
                .collect()
        })
        .collect();
    candidates.iter().try_fold(1usize, |acc, c| {
        acc.checked_mul(c.len()).filter(|&n| n <= limit)
    })?;
    let k = b.moduli.len();
    let mut out = Vec::new();
    let mut choice = vec![0usize; k];
    loop {
        let imgs: Vec<Vector> = choice
            .iter()
            .zip(&candidates)
            .map(|(&i, c)| c[i].clone())
            .collect();
        if b.span(&imgs).len() == b.order() {
            out.push(imgs);
        }
        let mut c = 0;
        loop {
            if c == k {
                return Some(out);
            }
            choice[c] += 1;
            if choice[c] < candidates[c].len() {
                break;
            }
            choice[c] = 0;
            c += 1;
        }
    }
}

pub fn apply_images(b: &Brute, images: &[Vector], x: &[i64]) -> Vector {
    let mut acc = b.zero();
    for (c, y) in x.iter().zip(images) {
        acc = b.add(&acc, &b.scale(*c, y));
    }
    acc
}

/// Multiset of primary cyclic factors `(p, e)` of a finite group, read off
/// its invariant factors by trial division.
pub fn primary_parts(moduli: &[i64]) -> Vec<(i64, u32)> {
    let mut out: Vec<(i64, u32)> = classify(moduli)
        .into_iter()
        .flat_map(prime_factors)
        .collect();
    out.sort_unstable();
    out
}

/// Pure embeddability of finite groups: `N ≅ M ⊕ C` exactly when the
/// primary factors of `M` form a sub-multiset of those of `N`.
pub fn embeds_as_summand(m: &[i64], n: &[i64]) -> bool {
    let mut rest = primary_parts(n);
    for part in primary_parts(m) {
        match rest.iter().position(|q| *q == part) {
            Some(i) => {
                rest.remove(i);
            }
            None => return false,
        }
    }
    true
}

/// `|G / G[3]|` by element counting.
pub fn index_mod_three_torsion(b: &Brute) -> usize {
    b.order() / b.killed_by(3)
}

/// `(|p^n M / p^(n+1) M|, |p^n M ∩ M[p]| / |p^(n+1) M ∩ M[p]|)` by
/// enumeration.
pub fn profile_cell(b: &Brute, p: i64, n: u32) -> (usize, usize) {
    let all = b.all();
    let lo = b.multiples(p.pow(n), &all);
    let hi = b.multiples(p.pow(n + 1), &all);
    let socle = |s: &BTreeSet<Vector>| s.iter().filter(|x| b.is_zero(&b.scale(p, x))).count();
    (lo.len() / hi.len(), socle(&lo) / socle(&hi))
}
