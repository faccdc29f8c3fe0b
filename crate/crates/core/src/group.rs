//! Finitely generated abelian groups in invariant-factor form.
//!
//! A group `Z^r + Z/d1 + ... + Z/dk` with `d1 | d2 | ... | dk` is stored as
//! its rank and divisor chain. Its elements are integer vectors of length
//! `D = r + k` (free coordinates first), realised as `Z^D` modulo the
//! relation lattice spanned by `d_i * e_{r+i}`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hom::Hom;
use crate::matrix::{self, Int};
use crate::primes;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FgGroup {
    rank: usize,
    divisors: Vec<Int>,
}

/// An element given by its coordinates; torsion coordinates are reduced
/// into `[0, d_i)` so that equality of elements is equality of vectors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub Vec<Int>);

impl Element {
    pub fn coords(&self) -> &[Int] {
        &self.0
    }
}

/// The canonical form of a presentation together with the isomorphism.
#[derive(Debug, Clone)]
pub struct Canonical {
    pub group: FgGroup,
    /// `D x n`: presentation generators to canonical coordinates.
    pub to_canonical: Vec<Vec<Int>>,
    /// `n x D`: canonical coordinates back to the presentation.
    pub from_canonical: Vec<Vec<Int>>,
}

/// One cyclic primary summand `Z/p^e` sitting inside a canonical torsion
/// coordinate; its generator is `unit * e_coord`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimarySummand {
    pub prime: Int,
    pub exponent: u32,
    pub coord: usize,
    pub unit: Int,
}

impl FgGroup {
    /// Builds a group from a rank and a divisor chain that is already canonical.
    pub fn new(rank: usize, divisors: Vec<Int>) -> Result<Self> {
        for (i, d) in divisors.iter().enumerate() {
            if *d < Int::from(2) {
                return Err(Error::InvalidGroup(alloc::format!(
                    "divisor {d} is below 2"
                )));
            }
            if i > 0 && !d.is_multiple_of(&divisors[i - 1]) {
                return Err(Error::InvalidGroup(alloc::format!(
                    "divisors {} and {d} do not form a chain",
                    divisors[i - 1]
                )));
            }
        }
        Ok(FgGroup { rank, divisors })
    }

    /// `Z^rank + Z/t1 + ... + Z/tk` for arbitrary cyclic orders `t_i`
    /// (zero means infinite cyclic, one is dropped).
    pub fn from_cyclic(rank: usize, orders: &[Int]) -> Self {
        let mut free = rank;
        let mut tors: Vec<Int> = Vec::new();
        for t in orders {
            let t = t.abs();
            if t.is_zero() {
                free += 1;
            } else if !t.is_one() {
                tors.push(t);
            }
        }
        if let Ok(g) = FgGroup::new(free, tors.clone()) {
            return g;
        }
        let n = tors.len();
        let relations: Vec<Vec<Int>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { tors[i].clone() } else { Int::zero() })
                    .collect()
            })
            .collect();
        let g = canonicalize(n, &relations);
        FgGroup {
            rank: free + g.rank,
            divisors: g.divisors,
        }
    }

    pub fn trivial() -> Self {
        FgGroup {
            rank: 0,
            divisors: vec![],
        }
    }

    pub fn free(rank: usize) -> Self {
        FgGroup {
            rank,
            divisors: vec![],
        }
    }

    pub fn cyclic(order: u64) -> Self {
        FgGroup::from_cyclic(0, &[Int::from(order)])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn divisors(&self) -> &[Int] {
        &self.divisors
    }

    /// Number of coordinates `D`.
    pub fn dim(&self) -> usize {
        self.rank + self.divisors.len()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.divisors.is_empty()
    }

    pub fn order(&self) -> Option<Int> {
        self.is_finite().then(|| self.divisors.iter().product())
    }

    /// Order as a machine integer, when finite and small enough.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().and_then(|o| o.to_u64())
    }

    /// Largest invariant factor (1 for torsion-free groups).
    pub fn exponent(&self) -> Int {
        self.divisors.last().cloned().unwrap_or_else(Int::one)
    }

    /// Modulus of coordinate `c`: zero for free coordinates.
    pub fn modulus(&self, c: usize) -> Int {
        if c < self.rank {
            Int::zero()
        } else {
            self.divisors[c - self.rank].clone()
        }
    }

    pub fn moduli(&self) -> Vec<Int> {
        (0..self.dim()).map(|c| self.modulus(c)).collect()
    }

    /// Generators `d_i e_{r+i}` of the relation lattice in `Z^D`.
    pub fn relation_vectors(&self) -> Vec<Vec<Int>> {
        let d = self.dim();
        self.divisors
            .iter()
            .enumerate()
            .map(|(i, di)| {
                let mut v = vec![Int::zero(); d];
                v[self.rank + i] = di.clone();
                v
            })
            .collect()
    }

    pub fn zero(&self) -> Element {
        Element(vec![Int::zero(); self.dim()])
    }

    /// Canonical generator `e_c`.
    pub fn generator(&self, c: usize) -> Element {
        let mut v = vec![Int::zero(); self.dim()];
        v[c] = Int::one();
        self.reduce(v)
    }

    /// Reduces an arbitrary coordinate vector into canonical form.
    pub fn reduce(&self, mut v: Vec<Int>) -> Element {
        for (i, d) in self.divisors.iter().enumerate() {
            let x = &mut v[self.rank + i];
            *x = x.mod_floor(d);
        }
        Element(v)
    }

    pub fn element(&self, coords: Vec<Int>) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::GroupMismatch(alloc::format!(
                "expected {} coordinates, got {}",
                self.dim(),
                coords.len()
            )));
        }
        Ok(self.reduce(coords))
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<Element> {
        self.element(coords.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn contains(&self, e: &Element) -> bool {
        e.0.len() == self.dim()
            && self
                .divisors
                .iter()
                .enumerate()
                .all(|(i, d)| !e.0[self.rank + i].is_negative() && e.0[self.rank + i] < *d)
    }

    pub fn check(&self, e: &Element) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(alloc::format!(
                "{} in {}",
                fmt_element(e),
                self
            )))
        }
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn scale(&self, k: &Int, a: &Element) -> Element {
        self.reduce(a.0.iter().map(|x| x * k).collect())
    }

    /// Exponents of the `p`-primary cyclic summands, ascending.
    pub fn primary_exponents(&self, p: &Int) -> Vec<u32> {
        self.divisors
            .iter()
            .map(|d| primes::valuation(d, p))
            .filter(|&e| e > 0)
            .collect()
    }

    /// Primes dividing the order of the torsion part, ascending.
    pub fn torsion_primes(&self) -> Vec<Int> {
        primes::factor(&self.exponent())
            .into_iter()
            .map(|(p, _)| p)
            .collect()
    }

    /// All cyclic primary summands, by coordinate then prime.
    pub fn primary_summands(&self) -> Vec<PrimarySummand> {
        let mut out = Vec::new();
        for (i, d) in self.divisors.iter().enumerate() {
            for (p, e) in primes::factor(d) {
                let q = num_traits::pow(p.clone(), e as usize);
                let rest = d / &q;
                // unit = 1 mod q, 0 mod rest
                let unit = if rest.is_one() {
                    Int::one()
                } else {
                    let inv = mod_inverse(&rest, &q);
                    (&rest * inv).mod_floor(d)
                };
                out.push(PrimarySummand {
                    prime: p,
                    exponent: e,
                    coord: self.rank + i,
                    unit,
                });
            }
        }
        out
    }

    /// Primary decomposition as a map prime -> exponent multiset (ascending).
    pub fn primary_decomposition(&self) -> BTreeMap<Int, Vec<u32>> {
        let mut map: BTreeMap<Int, Vec<u32>> = BTreeMap::new();
        for s in self.primary_summands() {
            map.entry(s.prime).or_default().push(s.exponent);
        }
        for v in map.values_mut() {
            v.sort_unstable();
        }
        map
    }

    /// Rebuilds a group from a rank and primary decomposition.
    pub fn from_primary(rank: usize, parts: &BTreeMap<Int, Vec<u32>>) -> Self {
        let orders: Vec<Int> = parts
            .iter()
            .flat_map(|(p, es)| {
                es.iter()
                    .map(move |&e| num_traits::pow(p.clone(), e as usize))
            })
            .collect();
        FgGroup::from_cyclic(rank, &orders)
    }
}

fn mod_inverse(a: &Int, m: &Int) -> Int {
    let g = a.extended_gcd(m);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(m)
}

/// Canonical form of `Z^n / span(relations)`; each relation is a vector in `Z^n`.
pub fn canonicalize(n: usize, relations: &[Vec<Int>]) -> FgGroup {
    canonicalize_with_iso(n, relations).group
}

pub fn canonicalize_with_iso(n: usize, relations: &[Vec<Int>]) -> Canonical {
    let m = relations.len();
    let a: Vec<Vec<Int>> = (0..n)
        .map(|i| relations.iter().map(|r| r[i].clone()).collect())
        .collect();
    let s = matrix::smith(a, m);
    let free: Vec<usize> = (0..n).filter(|&i| s.diagonal[i].is_zero()).collect();
    let tors: Vec<usize> = (0..n).filter(|&i| s.diagonal[i] > Int::one()).collect();
    let keep: Vec<usize> = free.iter().chain(&tors).copied().collect();
    let group = FgGroup {
        rank: free.len(),
        divisors: tors.iter().map(|&i| s.diagonal[i].clone()).collect(),
    };
    let to_canonical = keep
        .iter()
        .enumerate()
        .map(|(c, &i)| {
            let d = group.modulus(c);
            s.left[i]
                .iter()
                .map(|x| {
                    if d.is_zero() {
                        x.clone()
                    } else {
                        x.mod_floor(&d)
                    }
                })
                .collect()
        })
        .collect();
    let from_canonical = (0..n)
        .map(|r| keep.iter().map(|&i| s.left_inverse[r][i].clone()).collect())
        .collect();
    Canonical {
        group,
        to_canonical,
        from_canonical,
    }
}

/// `M + N` in canonical form with both coordinate embeddings.
pub fn direct_sum(m: &FgGroup, n: &FgGroup) -> (FgGroup, Hom, Hom) {
    let (dm, dn) = (m.dim(), n.dim());
    let mut relations = Vec::new();
    for v in m.relation_vectors() {
        let mut r = v;
        r.resize(dm + dn, Int::zero());
        relations.push(r);
    }
    for v in n.relation_vectors() {
        let mut r = vec![Int::zero(); dm];
        r.extend(v);
        relations.push(r);
    }
    let can = if m.is_trivial() || n.is_trivial() {
        let g = if m.is_trivial() { n.clone() } else { m.clone() };
        let id = (0..g.dim())
            .map(|i| {
                (0..g.dim())
                    .map(|j| if i == j { Int::one() } else { Int::zero() })
                    .collect()
            })
            .collect::<Vec<Vec<Int>>>();
        Canonical {
            group: g,
            to_canonical: id.clone(),
            from_canonical: id,
        }
    } else {
        canonicalize_with_iso(dm + dn, &relations)
    };
    let l = can.group;
    let cols = |range: core::ops::Range<usize>| -> Vec<Vec<Int>> {
        can.to_canonical
            .iter()
            .map(|row| row[range.clone()].to_vec())
            .collect()
    };
    let inl =
        Hom::new(m.clone(), l.clone(), cols(0..dm)).expect("coordinate embedding is well defined");
    let inr = Hom::new(n.clone(), l.clone(), cols(dm..dm + dn))
        .expect("coordinate embedding is well defined");
    (l, inl, inr)
}

/// All finite abelian groups of order at most `max_order`, one per
/// isomorphism class, sorted by order and then by divisor sequence.
pub fn enumerate_groups(max_order: u64) -> Vec<FgGroup> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.extend(groups_of_order(n));
    }
    out
}

/// Groups of order exactly `n`, sorted by divisor sequence.
pub fn groups_of_order(n: u64) -> Vec<FgGroup> {
    let factors = primes::factor_u64(n);
    let mut combos: Vec<Vec<(u64, Vec<u32>)>> = vec![vec![]];
    for &(p, e) in &factors {
        let mut next = Vec::new();
        for c in &combos {
            for part in primes::partitions(e) {
                let mut c2 = c.clone();
                c2.push((p, part));
                next.push(c2);
            }
        }
        combos = next;
    }
    let mut groups: Vec<FgGroup> = combos
        .into_iter()
        .map(|combo| {
            let len = combo.iter().map(|(_, part)| part.len()).max().unwrap_or(0);
            let mut divisors: Vec<Int> = (0..len)
                .map(|k| {
                    combo
                        .iter()
                        .map(|(p, part)| Int::from(p.pow(part.get(k).copied().unwrap_or(0))))
                        .product()
                })
                .collect();
            divisors.reverse();
            FgGroup { rank: 0, divisors }
        })
        .collect();
    groups.sort();
    groups
}

impl fmt::Display for FgGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(alloc::format!("Z^{r}")),
        }
        for d in &self.divisors {
            parts.push(alloc::format!("Z/{d}"));
        }
        f.write_str(&parts.join(" + "))
    }
}

impl FromStr for FgGroup {
    type Err = Error;

    /// `Z^r + Z/d1 + ... + Z/dk`, whitespace-insensitive; `0` is the
    /// trivial group and divisor lists need not form a chain.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::syntax(0, "empty group literal"));
        }
        if compact == "0" || compact == "1" {
            return Ok(FgGroup::trivial());
        }
        let mut rank = 0usize;
        let mut orders = Vec::new();
        let mut offset = 0;
        for term in compact.split('+') {
            let bad = || {
                Error::syntax(
                    offset,
                    alloc::format!("expected Z, Z^r or Z/d, found `{term}`"),
                )
            };
            if term == "Z" {
                rank += 1;
            } else if let Some(r) = term.strip_prefix("Z^") {
                rank += r.parse::<usize>().map_err(|_| bad())?;
            } else if let Some(d) = term.strip_prefix("Z/") {
                let d: Int = d.parse().map_err(|_| bad())?;
                if !d.is_positive() {
                    return Err(bad());
                }
                orders.push(d);
            } else {
                return Err(bad());
            }
            offset += term.len() + 1;
        }
        Ok(FgGroup::from_cyclic(rank, &orders))
    }
}

pub fn fmt_element(e: &Element) -> String {
    let inner: Vec<String> = e.0.iter().map(|x| x.to_string()).collect();
    alloc::format!("({})", inner.join(","))
}

/// Parses `(a,b,...)`, or a bare integer for one-coordinate groups.
pub fn parse_element(group: &FgGroup, s: &str) -> Result<Element> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(t);
    let coords: Vec<Int> = if inner.trim().is_empty() {
        vec![]
    } else {
        inner
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<Int>()
                    .map_err(|_| Error::syntax(0, alloc::format!("bad coordinate `{x}`")))
            })
            .collect::<Result<_>>()?
    };
    group.element(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgGroup {
        s.parse().unwrap()
    }

    #[test]
    fn canonicalize_diag_4_6() {
        let c = canonicalize(2, &[vec![4.into(), 0.into()], vec![0.into(), 6.into()]]);
        assert_eq!(c, FgGroup::new(0, vec![2.into(), 12.into()]).unwrap());
    }

    #[test]
    fn canonicalize_degenerate_presentations() {
        assert_eq!(canonicalize(2, &[]), FgGroup::free(2));
        let id = vec![vec![1.into(), 0.into()], vec![0.into(), 1.into()]];
        assert_eq!(canonicalize(2, &id), FgGroup::trivial());
    }

    #[test]
    fn canonicalize_is_idempotent() {
        for s in ["Z^2 + Z/2 + Z/12", "Z/6", "Z", "0", "Z/2 + Z/2 + Z/4"] {
            let grp = g(s);
            let again = canonicalize(grp.dim(), &grp.relation_vectors());
            assert_eq!(again, grp);
        }
    }

    #[test]
    fn iso_matrices_are_inverse_modulo_relations() {
        let rel = vec![vec![2.into(), 4.into()], vec![6.into(), 8.into()]];
        let c = canonicalize_with_iso(2, &rel);
        assert_eq!(c.group, g("Z/2 + Z/4"));
        let back = matrix::mat_mul(&c.to_canonical, &c.from_canonical, 2, 2);
        for (i, row) in back.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j { Int::one() } else { Int::zero() };
                assert_eq!(x.mod_floor(&c.group.modulus(i)), want);
            }
        }
    }

    #[test]
    fn literal_syntax() {
        assert_eq!(g("Z"), FgGroup::free(1));
        assert_eq!(
            g(" Z^2+Z/3 + Z/2"),
            FgGroup::new(2, vec![6.into()]).unwrap()
        );
        assert_eq!(g("Z/4+Z/6").to_string(), "Z/2 + Z/12");
        assert_eq!(g("Z/1"), FgGroup::trivial());
        assert!("Q".parse::<FgGroup>().is_err());
        assert!("Z/0".parse::<FgGroup>().is_err());
    }

    #[test]
    fn direct_sum_crt() {
        let (l, inl, inr) = direct_sum(&g("Z/2"), &g("Z/5"));
        assert_eq!(l, g("Z/10"));
        assert_eq!(
            inl.apply(&g("Z/2").generator(0)),
            l.element_i64(&[5]).unwrap()
        );
        let image_r = inr.apply(&g("Z/5").generator(0));
        assert_eq!(l.scale(&Int::from(5), &image_r), l.zero());
        assert_ne!(image_r, l.zero());
    }

    #[test]
    fn direct_sum_with_trivial_is_identity() {
        let m = g("Z + Z/4");
        let (l, inl, _) = direct_sum(&m, &FgGroup::trivial());
        assert_eq!(l, m);
        assert_eq!(inl, Hom::identity(&m));
    }

    #[test]
    fn direct_sum_mixed() {
        let (l, _, _) = direct_sum(&g("Z + Z/2"), &g("Z/3"));
        assert_eq!(l, g("Z + Z/6"));
    }

    #[test]
    fn enumerate_small() {
        let got: Vec<String> = enumerate_groups(4).iter().map(|x| x.to_string()).collect();
        assert_eq!(got, ["0", "Z/2", "Z/3", "Z/2 + Z/2", "Z/4"]);
        assert_eq!(enumerate_groups(1), vec![FgGroup::trivial()]);
    }

    #[test]
    fn primary_summand_units() {
        let grp = g("Z/12");
        let s = grp.primary_summands();
        assert_eq!(s.len(), 2);
        // 9 = 1 mod 4, 0 mod 3 ; 4 = 1 mod 3, 0 mod 4
        assert_eq!(s[0].unit, Int::from(9));
        assert_eq!(s[1].unit, Int::from(4));
    }
}
