//! pp-types over finite groups.
//!
//! In a finite group two elements have the same type over a set `A` exactly
//! when an automorphism fixing `A` pointwise maps one to the other. That is
//! decided by a backtracking search for the automorphism; when the types
//! differ, a sweep over simple pp-conditions with parameters from the
//! subgroup generated by `A` produces a separating condition.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::constructions::amalgamate;
use crate::error::{Error, Result};
use crate::eval::pp_solution;
use crate::finite::{divisors, FiniteTable};
use crate::group::{enumerate_groups, fmt_element, Element, FgGroup};
use crate::hom::Hom;
use crate::lattice::Lattice;
use crate::matrix::{self, Int};
use crate::pp::PpFormula;
use crate::purity::{is_pure_embedding, pure_embeddable};

/// Largest group order the automorphism search accepts by default.
pub const DEFAULT_BUDGET: u64 = 512;

/// `phi(x, a)`: a formula in `1 + params.len()` free variables whose later
/// variables are filled with the parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PpCondition {
    pub formula: PpFormula,
    pub params: Vec<Element>,
}

/// `representative + subgroup`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    pub representative: Element,
    pub subgroup: Lattice,
}

impl PpCondition {
    pub fn new(formula: PpFormula, params: Vec<Element>) -> Result<Self> {
        if formula.free_vars() != 1 + params.len() {
            return Err(Error::Arity(alloc::format!(
                "condition has {} free variables but {} parameters",
                formula.free_vars(),
                params.len()
            )));
        }
        Ok(PpCondition { formula, params })
    }

    pub fn check_group(&self, m: &FgGroup) -> Result<()> {
        self.params.iter().try_for_each(|p| m.check(p))
    }

    pub fn holds(&self, m: &FgGroup, x: &Element) -> bool {
        let mut tuple = vec![x.clone()];
        tuple.extend(self.params.iter().cloned());
        pp_solution(m, &self.formula).contains_tuple(&tuple)
    }

    /// The solution set in `m`: empty, or a coset of the solutions of the
    /// formula with all parameters set to zero.
    pub fn solutions(&self, m: &FgGroup) -> Result<Option<Coset>> {
        self.check_group(m)?;
        let d = m.dim();
        let lat = pp_solution(m, &self.formula);
        let basis = lat.basis();
        let r = basis.len();
        let tail_len = d * self.params.len();
        // columns of the tail block, as a (tail_len x r) system
        let system: Vec<Vec<Int>> = (0..tail_len)
            .map(|j| basis.iter().map(|b| b[d + j].clone()).collect())
            .collect();
        let target: Vec<Int> = self
            .params
            .iter()
            .flat_map(|p| p.coords().iter().cloned())
            .collect();
        let Some(c) = matrix::solve(&system, &target, r) else {
            return Ok(None);
        };
        let head = |coeffs: &[Int]| -> Vec<Int> {
            let mut v = vec![Int::zero(); d];
            for (ci, b) in coeffs.iter().zip(basis) {
                for k in 0..d {
                    v[k] += ci * &b[k];
                }
            }
            v
        };
        let kernel_gens: Vec<Vec<Int>> = matrix::integer_kernel(&system, r)
            .iter()
            .map(|k| head(k))
            .collect();
        let subgroup = Lattice::from_generators(m, 1, kernel_gens);
        let representative = m.reduce(subgroup.reduce(&head(&c)));
        Ok(Some(Coset {
            representative,
            subgroup,
        }))
    }
}

impl fmt::Display for PpCondition {
    /// `formula @ p1 p2 ...`, or just the formula without parameters.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.formula)?;
        if !self.params.is_empty() {
            f.write_str(" @")?;
            for p in &self.params {
                write!(f, " {}", fmt_element(p))?;
            }
        }
        Ok(())
    }
}

/// The least element (in lexicographic coordinate order) satisfying every
/// condition, or `None` when they have no common solution.
pub fn solve_pp_conditions(m: &FgGroup, conditions: &[PpCondition]) -> Result<Option<Element>> {
    if m.rank() > 0 {
        return Err(Error::PositiveRank);
    }
    let d = m.dim();
    let mut x: Vec<Int> = vec![Int::zero(); d];
    let mut k = Lattice::full(m, 1);
    for cond in conditions {
        let Some(coset) = cond.solutions(m)? else {
            return Ok(None);
        };
        // x + a = y + b with a in k, b in the new subgroup
        let (ka, kb) = (k.basis(), coset.subgroup.basis());
        let system: Vec<Vec<Int>> = (0..d)
            .map(|row| {
                ka.iter()
                    .map(|v| v[row].clone())
                    .chain(kb.iter().map(|v| -v[row].clone()))
                    .collect()
            })
            .collect();
        let rhs: Vec<Int> = coset
            .representative
            .coords()
            .iter()
            .zip(&x)
            .map(|(y, x0)| y - x0)
            .collect();
        let Some(z) = matrix::solve(&system, &rhs, ka.len() + kb.len()) else {
            return Ok(None);
        };
        for (zi, v) in z.iter().zip(ka) {
            for row in 0..d {
                x[row] += zi * &v[row];
            }
        }
        k = k.intersection(&coset.subgroup)?;
    }
    Ok(Some(m.reduce(k.reduce(&x))))
}

/// Bit signature of an element: for divisors `c`, `s` of a common exponent,
/// whether `c x` lies in `s M`. Pure embeddings and automorphisms preserve
/// it.
fn signatures(t: &FiniteTable, exponent: usize) -> Vec<Vec<u64>> {
    let divs = divisors(exponent);
    let multiples: Vec<Vec<bool>> = divs
        .iter()
        .map(|&s| t.scaled_torsion(s, exponent))
        .collect();
    let bits = divs.len() * divs.len();
    (0..t.len())
        .map(|x| {
            let mut sig = vec![0u64; bits.div_ceil(64)];
            for (ci, &c) in divs.iter().enumerate() {
                let cx = t.scale(c, x);
                for (si, member) in multiples.iter().enumerate() {
                    if member[cx] {
                        let bit = ci * divs.len() + si;
                        sig[bit / 64] |= 1 << (bit % 64);
                    }
                }
            }
            sig
        })
        .collect()
}

const UNSET: usize = usize::MAX;

/// An injective homomorphism from a subgroup of `src` into `dst`, grown one
/// generator at a time. Every mapped element keeps its signature, which
/// prunes most dead ends long before the last generator.
struct PartialIso<'a> {
    src: &'a FiniteTable,
    dst: &'a FiniteTable,
    src_sig: &'a [Vec<u64>],
    dst_sig: &'a [Vec<u64>],
    map: Vec<usize>,
    in_image: Vec<bool>,
    domain: Vec<usize>,
}

impl<'a> PartialIso<'a> {
    fn new(
        src: &'a FiniteTable,
        dst: &'a FiniteTable,
        src_sig: &'a [Vec<u64>],
        dst_sig: &'a [Vec<u64>],
    ) -> Self {
        let mut map = vec![UNSET; src.len()];
        let mut in_image = vec![false; dst.len()];
        map[0] = 0;
        in_image[0] = true;
        PartialIso {
            src,
            dst,
            src_sig,
            dst_sig,
            map,
            in_image,
            domain: vec![0],
        }
    }

    /// Extends by `x -> y`; returns an undo mark on success.
    fn extend(&mut self, x: usize, y: usize) -> Option<usize> {
        let mark = self.domain.len();
        if self.map[x] != UNSET {
            return (self.map[x] == y).then_some(mark);
        }
        // least k with k x already in the domain
        let mut k = 1;
        let mut kx = x;
        while self.map[kx] == UNSET {
            k += 1;
            kx = self.src.add(kx, x);
        }
        if self.dst.scale(k, y) != self.map[kx] {
            return None;
        }
        let mut my = y;
        for _ in 1..k {
            if self.in_image[my] {
                return None;
            }
            my = self.dst.add(my, y);
        }
        let base: Vec<usize> = self.domain.clone();
        let (mut jx, mut jy) = (x, y);
        for _ in 1..k {
            for &u in &base {
                let v = self.src.add(u, jx);
                let w = self.dst.add(self.map[u], jy);
                self.map[v] = w;
                self.in_image[w] = true;
                self.domain.push(v);
                if self.src_sig[v] != self.dst_sig[w] {
                    self.undo(mark);
                    return None;
                }
            }
            jx = self.src.add(jx, x);
            jy = self.dst.add(jy, y);
        }
        Some(mark)
    }

    fn undo(&mut self, mark: usize) {
        for v in self.domain.drain(mark..) {
            self.in_image[self.map[v]] = false;
            self.map[v] = UNSET;
        }
    }

    fn to_hom(&self) -> Hom {
        let (s, t) = (self.src.group(), self.dst.group());
        let cols: Vec<Vec<Int>> = (0..self.src.dim())
            .map(|c| self.dst.element(self.map[self.src.generator(c)]).0)
            .collect();
        Hom::new(s.clone(), t.clone(), matrix::transpose(&cols, t.dim()))
            .expect("extension respects relations")
    }
}

/// Backtracking over the images of `free` generators, after the forced
/// pairs. `accept` is consulted once the map is defined everywhere.
fn search_embedding(
    iso: &mut PartialIso<'_>,
    forced: &[(usize, usize)],
    free: &[usize],
    src_sig: &[Vec<u64>],
    dst_sig: &[Vec<u64>],
    accept: &mut dyn FnMut(&PartialIso<'_>) -> bool,
) -> bool {
    for &(x, y) in forced {
        if src_sig[x] != dst_sig[y] || iso.extend(x, y).is_none() {
            return false;
        }
    }
    fn go(
        iso: &mut PartialIso<'_>,
        free: &[usize],
        src_sig: &[Vec<u64>],
        dst_sig: &[Vec<u64>],
        accept: &mut dyn FnMut(&PartialIso<'_>) -> bool,
    ) -> bool {
        let Some((&x, rest)) = free.split_first() else {
            return accept(iso);
        };
        if iso.map[x] != UNSET {
            return go(iso, rest, src_sig, dst_sig, accept);
        }
        for y in 0..iso.dst.len() {
            if src_sig[x] != dst_sig[y] {
                continue;
            }
            if let Some(mark) = iso.extend(x, y) {
                if go(iso, rest, src_sig, dst_sig, accept) {
                    return true;
                }
                iso.undo(mark);
            }
        }
        false
    }
    go(iso, free, src_sig, dst_sig, accept)
}

fn check_finite(m: &FgGroup, budget: u64, elements: &[&Element]) -> Result<FiniteTable> {
    let table = FiniteTable::new(m, budget)?;
    for e in elements {
        m.check(e)?;
    }
    Ok(table)
}

/// An automorphism of `m` fixing every element of `a` and sending `b1` to
/// `b2`, if one exists.
pub fn orbit_witness(
    m: &FgGroup,
    a: &[Element],
    b1: &Element,
    b2: &Element,
    budget: u64,
) -> Result<Option<Hom>> {
    let mut all: Vec<&Element> = a.iter().collect();
    all.extend([b1, b2]);
    let t = check_finite(m, budget, &all)?;
    let sig = signatures(&t, t.exponent());
    let mut forced: Vec<(usize, usize)> = a.iter().map(|e| (t.index(e), t.index(e))).collect();
    forced.push((t.index(b1), t.index(b2)));
    // largest cyclic factors first: they constrain the most
    let free: Vec<usize> = (0..t.dim()).rev().map(|c| t.generator(c)).collect();
    let mut iso = PartialIso::new(&t, &t, &sig, &sig);
    let mut found = None;
    let ok = search_embedding(&mut iso, &forced, &free, &sig, &sig, &mut |iso| {
        found = Some(iso.to_hom());
        true
    });
    Ok(if ok { found } else { None })
}

/// Whether `b1` and `b2` lie in the same orbit of the automorphisms fixing
/// `a` pointwise.
pub fn orbit_equal(
    m: &FgGroup,
    a: &[Element],
    b1: &Element,
    b2: &Element,
    budget: u64,
) -> Result<bool> {
    Ok(orbit_witness(m, a, b1, b2, budget)?.is_some())
}

/// A condition that holds for exactly one of two elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub condition: PpCondition,
    /// Which element satisfies it.
    pub satisfied_by_first: bool,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (holds for the {} element only)",
            self.condition,
            if self.satisfied_by_first {
                "first"
            } else {
                "second"
            }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeVerdict {
    Equal,
    /// Types differ; the certificate is absent only if the sweep gave up.
    Distinguished(Option<Certificate>),
    Unknown,
}

impl fmt::Display for TypeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeVerdict::Equal => f.write_str("EQUAL"),
            TypeVerdict::Distinguished(_) => f.write_str("DISTINGUISHED"),
            TypeVerdict::Unknown => f.write_str("UNKNOWN"),
        }
    }
}

/// Subgroup shape `s1 M[t1] (+ s2 M[t2])` used by the sweep; `t = exponent`
/// means no torsion constraint.
#[derive(Debug, Clone)]
struct Shape {
    parts: Vec<(usize, usize)>,
    magnitude: usize,
    bound: usize,
    member: Vec<bool>,
}

/// Separating conditions are searched among
///
/// * `c x = a`                    (the subgroup `0`, no bound variable),
/// * `c x - a ∈ s M[t]`           (one bound variable),
/// * `c x - a ∈ s1 M[t1] + s2 M[t2]` (two bound variables),
///
/// with `c`, `s`, `t` dividing or below the exponent and `a` in the subgroup
/// generated by the parameters. Candidates are ordered by the largest
/// coefficient, then by the number of bound variables, then by `c`, the
/// subgroup and the parameter's position in coordinate order.
pub fn certificate_sweep(
    m: &FgGroup,
    a: &[Element],
    b1: &Element,
    b2: &Element,
    budget: u64,
) -> Result<Option<Certificate>> {
    let mut all: Vec<&Element> = a.iter().collect();
    all.extend([b1, b2]);
    let t = check_finite(m, budget, &all)?;
    let e = t.exponent();
    let (x1, x2) = (t.index(b1), t.index(b2));
    let span = t.span(&a.iter().map(|x| t.index(x)).collect::<Vec<_>>());
    let params: Vec<usize> = (0..t.len()).filter(|&i| span[i]).collect();
    let divs = divisors(e);
    let weight = |s: usize, tt: usize| s.max(if tt == e { 1 } else { tt });

    // single shapes, deduplicated by subgroup
    let mut singles: Vec<Shape> = Vec::new();
    let mut raw: Vec<(usize, bool, usize, usize)> = Vec::new();
    for &s in &divs {
        for &tt in &divs {
            raw.push((weight(s, tt), tt != e, s, tt));
        }
    }
    // among equal subgroups, prefer plain divisibility
    raw.sort();
    let zero_member = {
        let mut z = vec![false; t.len()];
        z[0] = true;
        z
    };
    singles.push(Shape {
        parts: vec![],
        magnitude: e.max(1),
        bound: 0,
        member: zero_member,
    });
    for (w, _, s, tt) in raw {
        let member = t.scaled_torsion(s, tt);
        if member.iter().all(|&b| b) || singles.iter().any(|sh| sh.member == member) {
            continue;
        }
        singles.push(Shape {
            parts: vec![(s, tt)],
            magnitude: w,
            bound: 1,
            member,
        });
    }
    let full: Vec<Shape> = singles.clone();
    let single_count = full.len();
    let mut shapes = full;
    let mut pairs_built_to = 0usize;

    let test = |shape: &Shape, c: usize, a: usize| -> Option<bool> {
        let h1 = shape.member[t.sub(t.scale(c, x1), a)];
        let h2 = shape.member[t.sub(t.scale(c, x2), a)];
        (h1 != h2).then_some(h1)
    };

    for mag in 1..=e.max(1) {
        // pair shapes whose magnitude is now reachable
        if mag > pairs_built_to {
            for i in 1..single_count {
                for j in (i + 1)..single_count {
                    let (p, q) = (&shapes[i], &shapes[j]);
                    if p.bound != 1 || q.bound != 1 || p.magnitude.max(q.magnitude) != mag {
                        continue;
                    }
                    let mut member = vec![false; t.len()];
                    for u in (0..t.len()).filter(|&u| p.member[u]) {
                        for v in (0..t.len()).filter(|&v| q.member[v]) {
                            member[t.add(u, v)] = true;
                        }
                    }
                    if member.iter().all(|&b| b) || shapes.iter().any(|sh| sh.member == member) {
                        continue;
                    }
                    let parts = vec![p.parts[0], q.parts[0]];
                    shapes.push(Shape {
                        parts,
                        magnitude: mag,
                        bound: 2,
                        member,
                    });
                }
            }
            pairs_built_to = mag;
        }
        for bound in 0..=2 {
            for c in 1..e.max(2) {
                if c > mag {
                    break;
                }
                for shape in shapes
                    .iter()
                    .filter(|sh| sh.bound == bound && sh.magnitude.max(c) == mag)
                {
                    for &p in &params {
                        if let Some(first) = test(shape, c, p) {
                            let cert = build_certificate(m, &t, shape, c, p, first, e)?;
                            let ok1 = cert.condition.holds(m, b1);
                            let ok2 = cert.condition.holds(m, b2);
                            debug_assert!(
                                ok1 == first && ok2 == !first,
                                "sweep evaluation disagrees with the lattice"
                            );
                            if ok1 == first && ok2 == !first {
                                return Ok(Some(cert));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn build_certificate(
    m: &FgGroup,
    t: &FiniteTable,
    shape: &Shape,
    c: usize,
    a: usize,
    first: bool,
    e: usize,
) -> Result<Certificate> {
    let with_param = a != 0;
    let free = if with_param { 2 } else { 1 };
    let bound = shape.parts.len();
    let width = free + bound;
    let mut main = vec![Int::zero(); width];
    main[0] = Int::from(c as u64);
    if with_param {
        main[1] = Int::from(-1);
    }
    let mut rows = Vec::new();
    for (k, &(s, tt)) in shape.parts.iter().enumerate() {
        main[free + k] = -Int::from(s as u64);
        if tt != e {
            let mut r = vec![Int::zero(); width];
            r[free + k] = Int::from(tt as u64);
            rows.push(r);
        }
    }
    rows.insert(0, main);
    let formula = PpFormula::new(free, bound, rows)?;
    let params = if with_param {
        vec![t.element(a)]
    } else {
        vec![]
    };
    let condition = PpCondition::new(formula, params)?;
    condition.check_group(m)?;
    Ok(Certificate {
        condition,
        satisfied_by_first: first,
    })
}

/// Decides whether `b1` and `b2` have the same pp-type over `a`, with a
/// separating condition when they do not.
pub fn pp_type_equal(
    m: &FgGroup,
    a: &[Element],
    b1: &Element,
    b2: &Element,
) -> Result<TypeVerdict> {
    pp_type_equal_with_budget(m, a, b1, b2, DEFAULT_BUDGET)
}

pub fn pp_type_equal_with_budget(
    m: &FgGroup,
    a: &[Element],
    b1: &Element,
    b2: &Element,
    budget: u64,
) -> Result<TypeVerdict> {
    if orbit_equal(m, a, b1, b2, budget)? {
        return Ok(TypeVerdict::Equal);
    }
    Ok(TypeVerdict::Distinguished(certificate_sweep(
        m, a, b1, b2, budget,
    )?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GaloisVerdict {
    /// Pure embeddings of both extensions into `amalgam`, agreeing on the
    /// base and identifying the two elements.
    Equal {
        amalgam: FgGroup,
        g1: Hom,
        g2: Hom,
    },
    /// The pp-types over the base differ inside the direct-sum amalgam.
    Distinct(Option<Certificate>),
    Unknown,
}

impl fmt::Display for GaloisVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GaloisVerdict::Equal { .. } => "EQUAL",
            GaloisVerdict::Distinct(_) => "DISTINCT",
            GaloisVerdict::Unknown => "UNKNOWN",
        })
    }
}

/// Compares the Galois types of `b1 ∈ N1` and `b2 ∈ N2` over a common
/// finite base `M`, purely embedded by `j1`, `j2`.
///
/// Searches every group `L` of order at most `amalgam_bound` for pure
/// embeddings `g_l: N_l -> L` with `g1 ∘ j1 = g2 ∘ j2` and
/// `g1(b1) = g2(b2)`. Since any two pure embeddings of a finite group into
/// `L` differ by an automorphism of `L`, `g1` is fixed to a canonical one.
/// Without a witness the pp-types are compared inside the direct-sum
/// amalgam: a difference means DISTINCT, otherwise the answer is UNKNOWN.
pub fn galois_type_equal_oracle(
    j1: &Hom,
    b1: &Element,
    j2: &Hom,
    b2: &Element,
    amalgam_bound: u64,
) -> Result<GaloisVerdict> {
    let m = j1.source();
    if j2.source() != m {
        return Err(Error::GroupMismatch(
            "both extensions must share the base".into(),
        ));
    }
    let (n1, n2) = (j1.target(), j2.target());
    for g in [m, n1, n2] {
        if g.rank() > 0 {
            return Err(Error::PositiveRank);
        }
    }
    n1.check(b1)?;
    n2.check(b2)?;
    if !is_pure_embedding(j1) || !is_pure_embedding(j2) {
        return Err(Error::NotPure);
    }
    let gens: Vec<Element> = (0..m.dim()).map(|c| m.generator(c)).collect();
    let t2 = FiniteTable::new(n2, u64::MAX)?;
    for l in enumerate_groups(amalgam_bound) {
        let Some(g1) = pure_embeddable(n1, &l) else {
            continue;
        };
        if pure_embeddable(n2, &l).is_none() {
            continue;
        }
        let tl = FiniteTable::new(&l, u64::MAX)?;
        let e = num_integer::Integer::lcm(&t2.exponent(), &tl.exponent());
        let (s2, sl) = (signatures(&t2, e), signatures(&tl, e));
        let mut forced: Vec<(usize, usize)> = gens
            .iter()
            .map(|x| (t2.index(&j2.apply(x)), tl.index(&g1.apply(&j1.apply(x)))))
            .collect();
        forced.push((t2.index(b2), tl.index(&g1.apply(b1))));
        let free: Vec<usize> = (0..t2.dim()).rev().map(|c| t2.generator(c)).collect();
        let mut iso = PartialIso::new(&t2, &tl, &s2, &sl);
        let mut found = None;
        let ok = search_embedding(&mut iso, &forced, &free, &s2, &sl, &mut |iso| {
            let h = iso.to_hom();
            if is_pure_embedding(&h) {
                found = Some(h);
                true
            } else {
                false
            }
        });
        if ok {
            let g2 = found.expect("set on success");
            return Ok(GaloisVerdict::Equal { amalgam: l, g1, g2 });
        }
    }
    let am = amalgamate(m, j1, j2, None)?;
    let base: Vec<Element> = gens.iter().map(|x| am.f1.apply(&j1.apply(x))).collect();
    let (c1, c2) = (am.f1.apply(b1), am.f2.apply(b2));
    let budget = am.group.order_u64().unwrap_or(u64::MAX).max(DEFAULT_BUDGET);
    match pp_type_equal_with_budget(&am.group, &base, &c1, &c2, budget)? {
        TypeVerdict::Distinguished(cert) => Ok(GaloisVerdict::Distinct(cert)),
        _ => Ok(GaloisVerdict::Unknown),
    }
}

/// Parses `(a,b) (c,d) ...` or `a b ...` as elements of `m`.
pub fn parse_elements(m: &FgGroup, text: &str) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            c if (c.is_whitespace() || c == ';') && depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push(crate::group::parse_element(m, &cur)?);
                }
                cur.clear();
            }
            c => cur.push(c),
        }
    }
    if !cur.trim().is_empty() {
        out.push(crate::group::parse_element(m, &cur)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pp::parse_pp;

    fn g(s: &str) -> FgGroup {
        s.parse().unwrap()
    }

    fn el(m: &FgGroup, c: &[i64]) -> Element {
        m.element_i64(c).unwrap()
    }

    #[test]
    fn solving_examples() {
        let m = g("Z/4");
        let c1 = PpCondition::new(parse_pp("2 | v1").unwrap(), vec![]).unwrap();
        let c2 = PpCondition::new(parse_pp("2*v1 = 0").unwrap(), vec![]).unwrap();
        assert_eq!(
            solve_pp_conditions(&m, &[c1, c2]).unwrap(),
            Some(el(&m, &[0]))
        );
        assert_eq!(solve_pp_conditions(&m, &[]).unwrap(), Some(el(&m, &[0])));
        let odd =
            PpCondition::new(parse_pp("E w (v1 - 2*w = v2)").unwrap(), vec![el(&m, &[1])]).unwrap();
        assert_eq!(
            solve_pp_conditions(&m, core::slice::from_ref(&odd)).unwrap(),
            Some(el(&m, &[1]))
        );
        let even = PpCondition::new(parse_pp("2 | v1").unwrap(), vec![]).unwrap();
        assert_eq!(solve_pp_conditions(&m, &[odd, even]).unwrap(), None);
        assert_eq!(solve_pp_conditions(&g("Z"), &[]), Err(Error::PositiveRank));
    }

    #[test]
    fn type_examples() {
        let m = g("Z/4");
        assert_eq!(
            pp_type_equal(&m, &[], &el(&m, &[1]), &el(&m, &[3])).unwrap(),
            TypeVerdict::Equal
        );
        assert_eq!(
            pp_type_equal(&m, &[], &el(&m, &[2]), &el(&m, &[2])).unwrap(),
            TypeVerdict::Equal
        );
        match pp_type_equal(&m, &[], &el(&m, &[1]), &el(&m, &[2])).unwrap() {
            TypeVerdict::Distinguished(Some(c)) => {
                assert_eq!(c.condition.formula, parse_pp("2 | v1").unwrap());
                assert!(c.condition.params.is_empty());
                assert!(!c.satisfied_by_first);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parameters_break_symmetry() {
        let m = g("Z/2 + Z/2");
        let a = [el(&m, &[1, 0])];
        assert_eq!(
            pp_type_equal(&m, &[], &el(&m, &[1, 0]), &el(&m, &[0, 1])).unwrap(),
            TypeVerdict::Equal
        );
        let v = pp_type_equal(&m, &a, &el(&m, &[1, 0]), &el(&m, &[0, 1])).unwrap();
        assert!(matches!(v, TypeVerdict::Distinguished(Some(_))));
        assert_eq!(
            pp_type_equal(&m, &a, &el(&m, &[0, 1]), &el(&m, &[1, 1])).unwrap(),
            TypeVerdict::Equal
        );
    }

    #[test]
    fn budget() {
        let m = g("Z/1024");
        assert!(matches!(
            pp_type_equal(&m, &[], &el(&m, &[1]), &el(&m, &[3])),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn galois_examples() {
        let base = g("Z/2");
        let n1 = g("Z/2 + Z/2");
        let n2 = g("Z/2 + Z/4");
        let j1 = pure_embeddable(&base, &n1).unwrap();
        let j2 = pure_embeddable(&base, &n2).unwrap();
        let v =
            galois_type_equal_oracle(&j1, &el(&n1, &[0, 1]), &j2, &el(&n2, &[0, 2]), 64).unwrap();
        assert!(matches!(v, GaloisVerdict::Distinct(Some(_))), "{v:?}");

        let v =
            galois_type_equal_oracle(&j1, &el(&n1, &[0, 1]), &j1, &el(&n1, &[1, 1]), 16).unwrap();
        assert!(matches!(v, GaloisVerdict::Equal { .. }), "{v:?}");
        let v =
            galois_type_equal_oracle(&j1, &el(&n1, &[0, 1]), &j1, &el(&n1, &[0, 1]), 16).unwrap();
        assert!(matches!(v, GaloisVerdict::Equal { .. }));
    }

    #[test]
    fn element_lists() {
        let m = g("Z/2 + Z/4");
        assert_eq!(
            parse_elements(&m, "(1,0) (0,3)").unwrap(),
            vec![el(&m, &[1, 0]), el(&m, &[0, 3])]
        );
        assert!(parse_elements(&m, "").unwrap().is_empty());
    }
}
