//! Purity of subgroups and embeddings.
//!
//! For finitely generated groups a subgroup is pure exactly when it is a
//! direct summand, i.e. when its inclusion has a retraction. Retractions are
//! found by solving a small system of congruences per target coordinate.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{Element, FgGroup};
use crate::hom::Hom;
use crate::lattice::Lattice;
use crate::matrix::{Congruences, Int};

/// A homomorphism `r: target -> source` with `r ∘ inc = id`, if one exists.
pub fn retraction(inc: &Hom) -> Option<Hom> {
    let (g, m) = (inc.source(), inc.target());
    let (dg, dm) = (g.dim(), m.dim());
    let mut rows = Vec::with_capacity(dg);
    for t in 0..dg {
        let mt = g.modulus(t);
        let mut sys = Congruences::new(dm);
        // well defined: d_c * x_c = 0 in the target coordinate
        for c in m.rank()..dm {
            let mut coeffs = vec![Int::zero(); dm];
            coeffs[c] = m.modulus(c);
            sys.push(coeffs, Int::zero(), mt.clone());
        }
        // r(inc(e_s)) = e_s
        for s in 0..dg {
            let coeffs: Vec<Int> = (0..dm).map(|c| inc.matrix()[c][s].clone()).collect();
            let rhs = if s == t { Int::one() } else { Int::zero() };
            sys.push(coeffs, rhs, mt.clone());
        }
        rows.push(sys.solve()?);
    }
    Some(Hom::new(m.clone(), g.clone(), rows).expect("solutions respect the relations"))
}

fn check_subgroup(m: &FgGroup, h: &Lattice) -> Result<()> {
    if h.group() != m || h.arity() != 1 {
        return Err(Error::GroupMismatch(
            "subgroup does not live in the given group".into(),
        ));
    }
    Ok(())
}

/// An idempotent endomorphism of `m` with image `h`, if `h` is pure.
pub fn splitting(m: &FgGroup, h: &Lattice) -> Result<Option<Hom>> {
    check_subgroup(m, h)?;
    let (_, inc) = h.to_group();
    Ok(retraction(&inc).map(|r| inc.compose(&r).expect("composable")))
}

pub fn is_pure(m: &FgGroup, h: &Lattice) -> Result<bool> {
    check_subgroup(m, h)?;
    let (_, inc) = h.to_group();
    Ok(retraction(&inc).is_some())
}

/// A subgroup `c` with `h + c = m` and `h ∩ c = 0`: the kernel of the
/// splitting.
pub fn complement(m: &FgGroup, h: &Lattice) -> Result<Lattice> {
    check_subgroup(m, h)?;
    let (_, inc) = h.to_group();
    let r = retraction(&inc).ok_or(Error::NotPure)?;
    Ok(r.kernel())
}

/// Injective with pure image; equivalently, the map has a retraction.
pub fn is_pure_embedding(f: &Hom) -> bool {
    retraction(f).is_some()
}

/// A pure embedding `m -> n`, if one exists.
///
/// `m` embeds purely iff `n ≅ m ⊕ c`, i.e. the rank of `m` is at most that of
/// `n` and for every prime the exponents of the primary cyclic summands of
/// `m` form a sub-multiset of those of `n`. The witness sends each primary
/// summand of `m` to a matching summand of `n`.
pub fn pure_embeddable(m: &FgGroup, n: &FgGroup) -> Option<Hom> {
    if m.rank() > n.rank() {
        return None;
    }
    let mut matrix = vec![vec![Int::zero(); m.dim()]; n.dim()];
    for (i, row) in matrix.iter_mut().enumerate().take(m.rank()) {
        row[i] = Int::one();
    }
    let mut pool: BTreeMap<(Int, u32), Vec<_>> = BTreeMap::new();
    for s in n.primary_summands() {
        pool.entry((s.prime.clone(), s.exponent))
            .or_default()
            .push(s);
    }
    for s in pool.values_mut() {
        s.reverse();
    }
    for s in m.primary_summands() {
        let t = pool.get_mut(&(s.prime.clone(), s.exponent))?.pop()?;
        // e_coord = sum of its primary components, each sent to the generator
        // of the matching summand
        matrix[t.coord][s.coord] += &t.unit;
    }
    for (t, row) in matrix.iter_mut().enumerate() {
        let d = n.modulus(t);
        if !d.is_zero() {
            for x in row.iter_mut() {
                *x = num_integer::Integer::mod_floor(x, &d);
            }
        }
    }
    Some(Hom::new(m.clone(), n.clone(), matrix).expect("summand matching is well defined"))
}

/// Finite groups are pure-injective; no group of positive rank is.
pub fn is_pure_injective(m: &FgGroup) -> bool {
    m.rank() == 0
}

/// The pure hull of a finite group is the group itself.
pub fn pure_hull(m: &FgGroup) -> Result<FgGroup> {
    if m.rank() > 0 {
        return Err(Error::Unsupported(alloc::format!(
            "the pure hull of {m} is not finitely generated"
        )));
    }
    Ok(m.clone())
}

/// A consistent but unrealised system of divisibility conditions in a
/// group of positive rank: `2^n | (x - a_n e_1)` for `n = 1..=levels`, where
/// `a_n` is the inverse of 3 modulo `2^n`. Any finitely many conditions are
/// solved by `a_N e_1`, but a solution of all of them would have first
/// coordinate `x` with `2^n | 3x - 1` for every `n`, forcing `3x = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnrealizedType {
    pub group: FgGroup,
    /// `(n, a_n e_1)`
    pub conditions: Vec<(u32, Element)>,
}

impl UnrealizedType {
    /// `x` satisfies condition `n`.
    pub fn satisfies(&self, x: &Element, level: usize) -> bool {
        let (n, a) = &self.conditions[level];
        let modulus = num_traits::pow(Int::from(2), *n as usize);
        let diff: Vec<Int> = x
            .coords()
            .iter()
            .zip(a.coords())
            .map(|(p, q)| p - q)
            .collect();
        let divisible =
            crate::eval::pp_solution(&self.group, &crate::pp::PpFormula::divides(1, 0, &modulus));
        divisible.contains(&Element(diff))
    }

    /// A realiser of the first `count` conditions.
    pub fn prefix_realizer(&self, count: usize) -> Element {
        match count {
            0 => self.group.zero(),
            _ => self.conditions[count - 1].1.clone(),
        }
    }

    /// The index of a condition `x` violates (every element violates one).
    pub fn refute(&self, x: &Element) -> Option<usize> {
        (0..self.conditions.len()).find(|&i| !self.satisfies(x, i))
    }
}

/// The witness of non-pure-injectivity for groups of positive rank, with
/// enough levels to refute every element whose first coordinate has absolute
/// value below `2^(levels - 2)`.
pub fn unrealized_type(m: &FgGroup, levels: u32) -> Option<UnrealizedType> {
    if m.rank() == 0 {
        return None;
    }
    let mut conditions = Vec::new();
    for n in 1..=levels {
        let q = num_traits::pow(Int::from(2), n as usize);
        let a = num_integer::Integer::extended_gcd(&Int::from(3), &q).x;
        let a = num_integer::Integer::mod_floor(&a, &q);
        let mut coords = vec![Int::zero(); m.dim()];
        coords[0] = a;
        conditions.push((n, m.reduce(coords)));
    }
    Some(UnrealizedType {
        group: m.clone(),
        conditions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgGroup {
        s.parse().unwrap()
    }

    fn sub(m: &FgGroup, gens: &[&[i64]]) -> Lattice {
        let els: Vec<Element> = gens.iter().map(|c| m.element_i64(c).unwrap()).collect();
        Lattice::generated_by(m, &els).unwrap()
    }

    #[test]
    fn purity_examples() {
        let z = g("Z");
        assert!(!is_pure(&z, &sub(&z, &[&[2]])).unwrap());
        let z2 = g("Z^2");
        assert!(is_pure(&z2, &sub(&z2, &[&[1, 1]])).unwrap());
        assert!(is_pure(&z2, &Lattice::full(&z2, 1)).unwrap());
        let z4 = g("Z/4");
        assert!(!is_pure(&z4, &sub(&z4, &[&[2]])).unwrap());
    }

    #[test]
    fn complement_examples() {
        let z2 = g("Z^2");
        let c = complement(&z2, &sub(&z2, &[&[1, 0]])).unwrap();
        assert_eq!(c, sub(&z2, &[&[0, 1]]));
        let z6 = g("Z/6");
        let c = complement(&z6, &sub(&z6, &[&[3]])).unwrap();
        assert_eq!(c, sub(&z6, &[&[2]]));
        assert_eq!(
            complement(&z6, &Lattice::full(&z6, 1)).unwrap(),
            Lattice::zero(&z6, 1)
        );
        assert_eq!(
            complement(&g("Z/4"), &sub(&g("Z/4"), &[&[2]])),
            Err(Error::NotPure)
        );
    }

    #[test]
    fn embedding_examples() {
        assert!(!is_pure_embedding(
            &Hom::from_i64(g("Z/2"), g("Z/4"), &[&[2]]).unwrap()
        ));
        assert!(is_pure_embedding(
            &Hom::from_i64(g("Z/2"), g("Z/6"), &[&[3]]).unwrap()
        ));
        let (_, inl, inr) = crate::group::direct_sum(&g("Z + Z/4"), &g("Z/6"));
        assert!(is_pure_embedding(&inl) && is_pure_embedding(&inr));
    }

    #[test]
    fn embeddability_examples() {
        assert!(pure_embeddable(&g("Z/2"), &g("Z/4")).is_none());
        let w = pure_embeddable(&g("Z/2"), &g("Z/2 + Z/4")).unwrap();
        assert!(is_pure_embedding(&w));
        let m = g("Z + Z/12");
        assert_eq!(pure_embeddable(&m, &m).unwrap(), Hom::identity(&m));
        let w = pure_embeddable(&g("Z/6"), &g("Z^2 + Z/3 + Z/2 + Z/4")).unwrap();
        assert!(is_pure_embedding(&w));
    }

    #[test]
    fn hull_and_injectivity() {
        assert!(
            is_pure_injective(&g("Z/6"))
                && is_pure_injective(&g("0"))
                && !is_pure_injective(&g("Z"))
        );
        assert_eq!(pure_hull(&g("Z/8")).unwrap(), g("Z/8"));
        assert!(matches!(pure_hull(&g("Z")), Err(Error::Unsupported(_))));
    }

    #[test]
    fn divisibility_witness_for_z() {
        let z = g("Z");
        let t = unrealized_type(&z, 12).unwrap();
        for k in 0..=12 {
            let x = t.prefix_realizer(k);
            assert!((0..k).all(|i| t.satisfies(&x, i)));
        }
        for v in -200..=200 {
            assert!(t.refute(&z.element_i64(&[v]).unwrap()).is_some(), "{v}");
        }
        assert!(unrealized_type(&g("Z/6"), 3).is_none());
    }
}
