//! Solution sets of pp-formulas, Baur–Monk invariants and the invariant
//! profile that decides elementary equivalence of finitely generated groups.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{canonicalize_with_iso, Element, FgGroup};
use crate::lattice::{InvValue, Lattice};
use crate::matrix::{self, Int};
use crate::pp::PpFormula;
use crate::primes;

/// `phi(M)` as a subgroup of `M^n`.
///
/// The equations decouple along the cyclic coordinates of `M`: for a
/// coordinate of modulus `d` the values `(v, w)` of that coordinate satisfy
/// `R v + S w = 0 (mod d)`, so the coordinate's share of `phi(M)` is the
/// projection of an integer kernel onto the `v` block.
pub fn pp_solution(m: &FgGroup, phi: &PpFormula) -> Lattice {
    let n = phi.free_vars();
    let width = n + phi.bound_vars();
    let dim = m.dim();
    let mut cache: BTreeMap<Int, Vec<Vec<Int>>> = BTreeMap::new();
    let mut gens = Vec::new();
    for c in 0..dim {
        let d = m.modulus(c);
        let block = cache
            .entry(d.clone())
            .or_insert_with(|| coordinate_solutions(phi.rows(), n, width, &d));
        for v in block.iter() {
            let mut g = vec![Int::zero(); dim * n];
            for (j, x) in v.iter().enumerate() {
                g[j * dim + c] = x.clone();
            }
            gens.push(g);
        }
    }
    Lattice::from_generators(m, n, gens)
}

/// Generators of `{v in Z^n : exists w, R v + S w = 0 (mod d)}`.
fn coordinate_solutions(rows: &[Vec<Int>], n: usize, width: usize, d: &Int) -> Vec<Vec<Int>> {
    if rows.is_empty() {
        return (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Int::one() } else { Int::zero() })
                    .collect()
            })
            .collect();
    }
    let slack = if d.is_zero() { 0 } else { rows.len() };
    let system: Vec<Vec<Int>> = rows
        .iter()
        .enumerate()
        .map(|(j, r)| {
            let mut row = r.clone();
            row.extend((0..slack).map(|k| if k == j { -d.clone() } else { Int::zero() }));
            row
        })
        .collect();
    let mut gens: Vec<Vec<Int>> = matrix::integer_kernel(&system, width + slack)
        .into_iter()
        .map(|k| k[..n].to_vec())
        .collect();
    if !d.is_zero() {
        // d Z^n always solves the system; keeping it makes the projection exact
        gens.extend((0..n).map(|i| {
            (0..n)
                .map(|j| if i == j { d.clone() } else { Int::zero() })
                .collect()
        }));
    }
    gens
}

/// `Inv(M, phi, psi) = [phi(M) : psi(M)]`.
pub fn invariant(m: &FgGroup, phi: &PpFormula, psi: &PpFormula) -> Result<InvValue> {
    if phi.free_vars() != psi.free_vars() {
        return Err(Error::Arity(alloc::format!(
            "formulas have {} and {} free variables",
            phi.free_vars(),
            psi.free_vars()
        )));
    }
    let big = pp_solution(m, phi);
    let small = pp_solution(m, psi);
    big.index(&small).map_err(|e| match e {
        Error::NotContained(_) => Error::NotContained(Some(alloc::format!(
            "psi(M) is not inside phi(M) for M = {m}"
        ))),
        other => other,
    })
}

/// Whether `psi -> phi` holds in every abelian group.
///
/// Evaluated in the free realisation of `psi`: the group generated by the
/// variables subject to the equations of `psi`. The images of the free
/// variables satisfy `phi` there iff the implication is valid.
pub fn pp_entails(psi: &PpFormula, phi: &PpFormula) -> bool {
    let n = psi.free_vars();
    if phi.free_vars() != n {
        return false;
    }
    let width = n + psi.bound_vars();
    let can = canonicalize_with_iso(width, psi.rows());
    let g = &can.group;
    let tuple: Vec<Element> = (0..n)
        .map(|i| g.reduce(can.to_canonical.iter().map(|row| row[i].clone()).collect()))
        .collect();
    pp_solution(g, phi).contains_tuple(&tuple)
}

/// Which of the two one-variable formula pairs a profile cell refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `Inv(-, p^n | x, p^(n+1) | x)`
    Alpha,
    /// `Inv(-, p^n | x & px = 0, p^(n+1) | x & px = 0)`
    Beta,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Alpha => "alpha",
            Family::Beta => "beta",
        })
    }
}

/// The formula pair of a profile cell.
pub fn profile_pair(family: Family, p: &Int, level: u32) -> (PpFormula, PpFormula) {
    let lo = num_traits::pow(p.clone(), level as usize);
    let hi = &lo * p;
    let div = |d: &Int| {
        if d.is_one() {
            PpFormula::truth(1)
        } else {
            PpFormula::divides(1, 0, d)
        }
    };
    let (mut phi, mut psi) = (div(&lo), div(&hi));
    if family == Family::Beta {
        let torsion = PpFormula::annihilated_by(1, 0, p);
        phi = phi.conjoin(&torsion).expect("same arity");
        psi = psi.conjoin(&torsion).expect("same arity");
    }
    (phi, psi)
}

/// Primes and top levels a profile is evaluated on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileDomain {
    /// `(p, max level)`, levels running `0..=max level`.
    pub cells: Vec<(Int, u32)>,
}

impl ProfileDomain {
    /// Every prime dividing an exponent of the groups, plus 2; levels up to
    /// the largest exponent of `p` in any of them.
    pub fn covering(groups: &[&FgGroup]) -> Self {
        let mut top: BTreeMap<Int, u32> = BTreeMap::new();
        top.insert(Int::from(2), 0);
        for g in groups {
            for (p, e) in primes::factor(&g.exponent()) {
                let slot = top.entry(p).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        ProfileDomain {
            cells: top.into_iter().collect(),
        }
    }

    fn for_primes(g: &FgGroup, primes: &[Int]) -> Self {
        let mut cells: Vec<(Int, u32)> = primes
            .iter()
            .map(|p| (p.clone(), primes::valuation(&g.exponent(), p)))
            .collect();
        cells.sort();
        cells.dedup();
        ProfileDomain { cells }
    }
}

/// `(alpha, beta)` for each `(p, level)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantProfile {
    pub cells: BTreeMap<(Int, u32), (InvValue, InvValue)>,
}

impl InvariantProfile {
    pub fn get(&self, p: u64, level: u32) -> Option<&(InvValue, InvValue)> {
        self.cells.get(&(Int::from(p), level))
    }
}

impl fmt::Display for InvariantProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, ((p, n), (a, b))) in self.cells.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "p={p} n={n} alpha={a} beta={b}")?;
        }
        Ok(())
    }
}

fn cell(m: &FgGroup, family: Family, p: &Int, level: u32) -> InvValue {
    let (phi, psi) = profile_pair(family, p, level);
    invariant(m, &phi, &psi).expect("profile pairs are nested in every group")
}

/// Profile of `m`, over the given primes or over the default domain.
pub fn invariant_profile(m: &FgGroup, primes: Option<&[Int]>) -> InvariantProfile {
    let domain = match primes {
        Some(ps) => ProfileDomain::for_primes(m, ps),
        None => ProfileDomain::covering(&[m]),
    };
    invariant_profile_on(m, &domain)
}

pub fn invariant_profile_on(m: &FgGroup, domain: &ProfileDomain) -> InvariantProfile {
    let mut cells = BTreeMap::new();
    for (p, top) in &domain.cells {
        for n in 0..=*top {
            cells.insert(
                (p.clone(), n),
                (cell(m, Family::Alpha, p, n), cell(m, Family::Beta, p, n)),
            );
        }
    }
    InvariantProfile { cells }
}

/// Elementary equivalence, decided by comparing profiles on a common domain.
pub fn elementarily_equivalent(m: &FgGroup, n: &FgGroup) -> bool {
    distinguishing_invariant(m, n).is_none()
}

/// A profile cell on which two groups disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distinction {
    pub family: Family,
    pub prime: Int,
    pub level: u32,
    pub phi: PpFormula,
    pub psi: PpFormula,
    pub left: InvValue,
    pub right: InvValue,
}

/// First differing cell in scan order (p ascending, level ascending, alpha
/// before beta), or `None` when the groups are elementarily equivalent.
pub fn distinguishing_invariant(m: &FgGroup, n: &FgGroup) -> Option<Distinction> {
    let domain = ProfileDomain::covering(&[m, n]);
    for (p, top) in &domain.cells {
        for level in 0..=*top {
            for family in [Family::Alpha, Family::Beta] {
                let (phi, psi) = profile_pair(family, p, level);
                let left = invariant(m, &phi, &psi).expect("profile pairs are nested");
                let right = invariant(n, &phi, &psi).expect("profile pairs are nested");
                if left != right {
                    return Some(Distinction {
                        family,
                        prime: p.clone(),
                        level,
                        phi,
                        psi,
                        left,
                        right,
                    });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pp::parse_pp;

    fn g(s: &str) -> FgGroup {
        s.parse().unwrap()
    }

    fn inv(m: &str, phi: &str, psi: &str) -> InvValue {
        invariant(&g(m), &parse_pp(phi).unwrap(), &parse_pp(psi).unwrap()).unwrap()
    }

    #[test]
    fn index_examples() {
        assert_eq!(inv("Z/9", "0=0", "3*v1=0"), InvValue::from(3));
        assert_eq!(inv("Z", "x=x", "2|x"), InvValue::from(2));
        assert_eq!(inv("Z^2", "x=x", "2|x"), InvValue::from(4));
        assert_eq!(inv("Z", "x=x", "x=0"), InvValue::Infinite);
        assert_eq!(inv("Z/6 + Z", "2|x", "2|x"), InvValue::one());
    }

    #[test]
    fn solution_examples() {
        let s = pp_solution(&g("Z/4"), &parse_pp("2 | v1").unwrap());
        assert_eq!(s.order(), Some(Int::from(2)));
        let s = pp_solution(&g("Z/3"), &parse_pp("2 | v1").unwrap());
        assert_eq!(s, Lattice::full(&g("Z/3"), 1));
    }

    #[test]
    fn not_contained() {
        let r = invariant(
            &g("Z/4"),
            &parse_pp("2|x").unwrap(),
            &parse_pp("x=x").unwrap(),
        );
        assert!(matches!(r, Err(Error::NotContained(Some(_)))));
    }

    #[test]
    fn z4_profile() {
        let p = invariant_profile(&g("Z/4"), Some(&[Int::from(2)]));
        let v = |a: u64, b: u64| (InvValue::from(a), InvValue::from(b));
        assert_eq!(p.get(2, 0), Some(&v(2, 1)));
        assert_eq!(p.get(2, 1), Some(&v(2, 2)));
        assert_eq!(p.get(2, 2), Some(&v(1, 1)));
    }

    #[test]
    fn distinguishing_examples() {
        let d = distinguishing_invariant(&g("Z"), &g("Z^2")).unwrap();
        assert_eq!((d.family, d.level), (Family::Alpha, 0));
        assert_eq!((d.left, d.right), (InvValue::from(2), InvValue::from(4)));
        assert!(d.phi.is_truth());
        assert!(distinguishing_invariant(&g("Z/6"), &g("Z/2 + Z/3")).is_none());
        assert!(!elementarily_equivalent(&g("Z/2 + Z/2"), &g("Z/4")));
    }

    #[test]
    fn entailment() {
        let p = |s: &str| parse_pp(s).unwrap();
        assert!(pp_entails(&p("3x = 0"), &p("x = x")));
        assert!(pp_entails(&p("4 | x"), &p("2 | x")));
        assert!(!pp_entails(&p("2 | x"), &p("4 | x")));
        assert!(pp_entails(&p("x = 0"), &p("6 | x")));
        assert!(!pp_entails(&p("2x = 0"), &p("x = 0")));
    }
}
