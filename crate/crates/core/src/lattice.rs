//! Subgroups of `M^k` as integer lattices.
//!
//! A subgroup `H <= M^k` is stored as the full preimage lattice in
//! `Z^{Dk}`, which always contains the relation lattice of `M^k`. The
//! coordinate of tuple entry `j`, group coordinate `c` is `j * D + c`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Mul;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{canonicalize_with_iso, Element, FgGroup};
use crate::hom::Hom;
use crate::matrix::{self, Int};

/// Value of an index `[A : B]`: a positive integer or infinite.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum InvValue {
    Finite(Int),
    Infinite,
}

impl InvValue {
    pub fn one() -> Self {
        InvValue::Finite(Int::one())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, InvValue::Infinite)
    }

    pub fn finite(&self) -> Option<&Int> {
        match self {
            InvValue::Finite(n) => Some(n),
            InvValue::Infinite => None,
        }
    }

    pub fn at_least(&self, k: &Int) -> bool {
        match self {
            InvValue::Finite(n) => n >= k,
            InvValue::Infinite => true,
        }
    }
}

impl From<u64> for InvValue {
    fn from(n: u64) -> Self {
        InvValue::Finite(Int::from(n))
    }
}

impl Ord for InvValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (InvValue::Finite(a), InvValue::Finite(b)) => a.cmp(b),
            (InvValue::Finite(_), InvValue::Infinite) => Ordering::Less,
            (InvValue::Infinite, InvValue::Finite(_)) => Ordering::Greater,
            (InvValue::Infinite, InvValue::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for InvValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &InvValue {
    type Output = InvValue;

    fn mul(self, rhs: &InvValue) -> InvValue {
        match (self, rhs) {
            (InvValue::Finite(a), InvValue::Finite(b)) => InvValue::Finite(a * b),
            _ => InvValue::Infinite,
        }
    }
}

impl fmt::Display for InvValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvValue::Finite(n) => write!(f, "{n}"),
            InvValue::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    group: FgGroup,
    arity: usize,
    basis: Vec<Vec<Int>>,
}

fn power_relations(group: &FgGroup, arity: usize) -> Vec<Vec<Int>> {
    let d = group.dim();
    let mut out = Vec::new();
    for j in 0..arity {
        for (i, m) in group.divisors().iter().enumerate() {
            let mut v = vec![Int::zero(); d * arity];
            v[j * d + group.rank() + i] = m.clone();
            out.push(v);
        }
    }
    out
}

impl Lattice {
    /// The subgroup of `M^arity` generated by the given vectors of `Z^{D*arity}`.
    pub fn from_generators(group: &FgGroup, arity: usize, mut gens: Vec<Vec<Int>>) -> Self {
        let n = group.dim() * arity;
        debug_assert!(gens.iter().all(|g| g.len() == n));
        gens.extend(power_relations(group, arity));
        Lattice {
            group: group.clone(),
            arity,
            basis: matrix::hermite_rows(gens, n),
        }
    }

    pub fn zero(group: &FgGroup, arity: usize) -> Self {
        Lattice::from_generators(group, arity, vec![])
    }

    pub fn full(group: &FgGroup, arity: usize) -> Self {
        let n = group.dim() * arity;
        let gens = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Int::one() } else { Int::zero() })
                    .collect()
            })
            .collect();
        Lattice::from_generators(group, arity, gens)
    }

    /// Subgroup generated by tuples of elements.
    pub fn subgroup(group: &FgGroup, arity: usize, generators: &[Vec<Element>]) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for tuple in generators {
            if tuple.len() != arity {
                return Err(Error::Arity(alloc::format!(
                    "expected {arity}-tuples, got {}",
                    tuple.len()
                )));
            }
            let mut v = Vec::with_capacity(group.dim() * arity);
            for e in tuple {
                group.check(e)?;
                v.extend(e.coords().iter().cloned());
            }
            gens.push(v);
        }
        Ok(Lattice::from_generators(group, arity, gens))
    }

    /// Subgroup of `M` generated by single elements.
    pub fn generated_by(group: &FgGroup, elements: &[Element]) -> Result<Self> {
        let tuples: Vec<Vec<Element>> = elements.iter().map(|e| vec![e.clone()]).collect();
        Lattice::subgroup(group, 1, &tuples)
    }

    pub fn group(&self) -> &FgGroup {
        &self.group
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.group.dim() * self.arity
    }

    /// Rank of the lattice in `Z^{Dk}`.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    fn same_ambient(&self, other: &Lattice) -> Result<()> {
        if self.group != other.group || self.arity != other.arity {
            return Err(Error::GroupMismatch(
                "subgroups live in different ambients".into(),
            ));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[Int]) -> bool {
        matrix::in_lattice(&self.basis, v)
    }

    pub fn contains_tuple(&self, tuple: &[Element]) -> bool {
        let v: Vec<Int> = tuple
            .iter()
            .flat_map(|e| e.coords().iter().cloned())
            .collect();
        v.len() == self.ambient_dim() && self.contains_vector(&v)
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.contains_tuple(core::slice::from_ref(e))
    }

    pub fn is_subgroup_of(&self, other: &Lattice) -> bool {
        self.group == other.group
            && self.arity == other.arity
            && self.basis.iter().all(|b| other.contains_vector(b))
    }

    /// Canonical representative of `v + self`.
    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        let mut w = v.to_vec();
        matrix::reduce_by(&self.basis, &mut w);
        w
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        self.same_ambient(other)?;
        let gens = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Lattice::from_generators(&self.group, self.arity, gens))
    }

    pub fn intersection(&self, other: &Lattice) -> Result<Lattice> {
        self.same_ambient(other)?;
        let n = self.ambient_dim();
        let mut rows = Vec::new();
        for b in &self.basis {
            let mut r = b.clone();
            r.extend(b.iter().cloned());
            rows.push(r);
        }
        for b in &other.basis {
            let mut r = b.clone();
            r.extend(core::iter::repeat_n(Int::zero(), n));
            rows.push(r);
        }
        let h = matrix::hermite_rows(rows, 2 * n);
        let gens = h
            .into_iter()
            .filter(|r| r[..n].iter().all(Zero::is_zero))
            .map(|r| r[n..].to_vec())
            .collect();
        Ok(Lattice::from_generators(&self.group, self.arity, gens))
    }

    fn pivot_product(&self) -> Int {
        self.basis
            .iter()
            .map(|r| r[matrix::leading(r).expect("non-zero row")].clone())
            .product()
    }

    /// The index `[self : sub]`.
    pub fn index(&self, sub: &Lattice) -> Result<InvValue> {
        self.same_ambient(sub)?;
        if !sub.is_subgroup_of(self) {
            return Err(Error::NotContained(None));
        }
        if self.rank() != sub.rank() {
            return Ok(InvValue::Infinite);
        }
        Ok(InvValue::Finite(sub.pivot_product() / self.pivot_product()))
    }

    /// Number of elements, when the ambient group is finite.
    pub fn order(&self) -> Option<Int> {
        let zero = Lattice::zero(&self.group, self.arity);
        match self.index(&zero).ok()? {
            InvValue::Finite(n) => Some(n),
            InvValue::Infinite => None,
        }
    }

    /// `{x in source : f(x) in self}` for a subgroup `self` of `f.target()`.
    pub fn preimage(&self, f: &Hom) -> Lattice {
        assert_eq!(
            self.arity, 1,
            "preimage is defined for subgroups of the target group"
        );
        let ds = f.source().dim();
        let r = self.basis.len();
        let system: Vec<Vec<Int>> = f
            .matrix()
            .iter()
            .enumerate()
            .map(|(t, row)| {
                let mut out = row.clone();
                out.extend(self.basis.iter().map(|b| -b[t].clone()));
                out
            })
            .collect();
        let ker = matrix::integer_kernel(&system, ds + r);
        let gens = ker.into_iter().map(|v| v[..ds].to_vec()).collect();
        Lattice::from_generators(f.source(), 1, gens)
    }

    /// The subgroup as an abstract group, with its inclusion into the ambient.
    pub fn to_group(&self) -> (FgGroup, Hom) {
        assert_eq!(
            self.arity, 1,
            "only subgroups of M itself are realised as groups"
        );
        let d = self.group.dim();
        let r = self.basis.len();
        // relations: c with sum c_i b_i in the relation lattice of M
        let rel = Lattice::zero(&self.group, 1);
        let system: Vec<Vec<Int>> = (0..d)
            .map(|t| {
                let mut row: Vec<Int> = self.basis.iter().map(|b| b[t].clone()).collect();
                row.extend(rel.basis.iter().map(|b| -b[t].clone()));
                row
            })
            .collect();
        let relations: Vec<Vec<Int>> = matrix::integer_kernel(&system, r + rel.basis.len())
            .into_iter()
            .map(|v| v[..r].to_vec())
            .collect();
        let can = canonicalize_with_iso(r, &relations);
        let bt = matrix::transpose(&self.basis, d);
        let inc = matrix::mat_mul(&bt, &can.from_canonical, r, can.group.dim());
        let hom = Hom::new(can.group.clone(), self.group.clone(), inc)
            .expect("inclusion of a subgroup is well defined");
        (can.group, hom)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("(")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        f.write_str(">")
    }
}
