//! Element tables for small finite groups.
//!
//! Elements are numbered in mixed radix with the first coordinate most
//! significant, so index order is the lexicographic order of reduced
//! coordinate vectors.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::group::{Element, FgGroup};
use crate::matrix::Int;

#[derive(Debug, Clone)]
pub struct FiniteTable {
    group: FgGroup,
    moduli: Vec<usize>,
    order: usize,
}

impl FiniteTable {
    /// Fails for positive rank, or when the order exceeds `budget`.
    pub fn new(group: &FgGroup, budget: u64) -> Result<Self> {
        if group.rank() > 0 {
            return Err(Error::PositiveRank);
        }
        let order = group.order().expect("finite");
        if order > Int::from(budget) {
            return Err(Error::BudgetExceeded {
                order: alloc::format!("{order}"),
                budget,
            });
        }
        let moduli = group
            .divisors()
            .iter()
            .map(|d| d.to_usize().expect("small"))
            .collect();
        Ok(FiniteTable {
            group: group.clone(),
            moduli,
            order: order.to_usize().expect("small"),
        })
    }

    pub fn group(&self) -> &FgGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.order
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Exponent of the group.
    pub fn exponent(&self) -> usize {
        self.moduli.last().copied().unwrap_or(1)
    }

    pub fn digits(&self, mut i: usize) -> Vec<usize> {
        let mut out = vec![0; self.moduli.len()];
        for (c, m) in self.moduli.iter().enumerate().rev() {
            out[c] = i % m;
            i /= m;
        }
        out
    }

    pub fn from_digits(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.moduli)
            .fold(0, |acc, (d, m)| acc * m + d % m)
    }

    pub fn element(&self, i: usize) -> Element {
        Element(self.digits(i).into_iter().map(Int::from).collect())
    }

    pub fn index(&self, e: &Element) -> usize {
        let digits: Vec<usize> = e
            .coords()
            .iter()
            .zip(&self.moduli)
            .map(|(x, &m)| {
                num_integer::Integer::mod_floor(x, &Int::from(m))
                    .to_usize()
                    .expect("small")
            })
            .collect();
        self.from_digits(&digits)
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        let (a, b) = (self.digits(i), self.digits(j));
        let sum: Vec<usize> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        self.from_digits(&sum)
    }

    pub fn neg(&self, i: usize) -> usize {
        let d: Vec<usize> = self
            .digits(i)
            .iter()
            .zip(&self.moduli)
            .map(|(x, m)| (m - x) % m)
            .collect();
        self.from_digits(&d)
    }

    pub fn sub(&self, i: usize, j: usize) -> usize {
        self.add(i, self.neg(j))
    }

    pub fn scale(&self, k: usize, i: usize) -> usize {
        let d: Vec<usize> = self
            .digits(i)
            .iter()
            .zip(&self.moduli)
            .map(|(x, m)| (x * (k % m)) % m)
            .collect();
        self.from_digits(&d)
    }

    /// Index of the `c`-th canonical generator.
    pub fn generator(&self, c: usize) -> usize {
        let mut d = vec![0; self.moduli.len()];
        d[c] = 1;
        self.from_digits(&d)
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    /// Membership bitmap of the subgroup generated by `gens`.
    pub fn span(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut list = vec![0usize];
        for &g in gens {
            if member[g] {
                continue;
            }
            let base = list.clone();
            let mut mult = g;
            while !member[mult] {
                for &u in &base {
                    let v = self.add(u, mult);
                    member[v] = true;
                    list.push(v);
                }
                mult = self.add(mult, g);
            }
        }
        member
    }

    /// Membership bitmap of `s * M[t] = {s w : t w = 0}`.
    pub fn scaled_torsion(&self, s: usize, t: usize) -> Vec<bool> {
        let mut member = vec![false; self.order];
        for w in 0..self.order {
            if self.scale(t, w) == 0 {
                member[self.scale(s, w)] = true;
            }
        }
        member
    }
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: usize) -> Vec<usize> {
    crate::primes::divisors_u64(n as u64)
        .into_iter()
        .map(|d| d as usize)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_is_lexicographic() {
        let t = FiniteTable::new(&"Z/2 + Z/4".parse().unwrap(), 100).unwrap();
        assert_eq!(t.len(), 8);
        let coords: Vec<Vec<usize>> = (0..8).map(|i| t.digits(i)).collect();
        let mut sorted = coords.clone();
        sorted.sort();
        assert_eq!(coords, sorted);
        for i in 0..8 {
            assert_eq!(t.index(&t.element(i)), i);
            assert_eq!(t.add(i, t.neg(i)), 0);
        }
    }

    #[test]
    fn spans() {
        let t = FiniteTable::new(&"Z/12".parse().unwrap(), 100).unwrap();
        let s = t.span(&[8, 6]);
        assert_eq!(s.iter().filter(|&&b| b).count(), 6);
        assert_eq!(t.scaled_torsion(2, 4).iter().filter(|&&b| b).count(), 2);
    }

    #[test]
    fn budget_and_rank() {
        assert!(matches!(
            FiniteTable::new(&"Z".parse().unwrap(), 10),
            Err(Error::PositiveRank)
        ));
        assert!(matches!(
            FiniteTable::new(&"Z/20".parse().unwrap(), 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
