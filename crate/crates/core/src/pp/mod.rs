//! Positive primitive formulas in the language of abelian groups.
//!
//! A formula with `n` free and `l` bound variables denotes
//! `E w1..wl (R v + S w = 0)`, one equation per row of the `m x (n + l)`
//! matrix `(R | S)`.
//!
//! Formulas are kept in a normal form obtained only by transformations that
//! preserve meaning in every abelian group:
//!
//! * unimodular row operations on `(R | S)` and unimodular changes of the
//!   bound variables diagonalise `S`, so every row is either an equation
//!   `t(v) = 0` or a divisibility row `t(v) - s*w = 0` with its own bound
//!   variable (`s | t(v)`);
//! * rows with `s = 1` are always satisfiable and are dropped;
//! * equation rows are put in Hermite form;
//! * each divisibility term is replaced by the smaller of the canonical
//!   residues of `t` and `-t` modulo the equations and `s Z^n`, trivial ones
//!   dropped, and the rows sorted and deduplicated.

mod parse;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

pub(crate) use parse::inferred_arity;
pub use parse::{parse_pp, parse_pp_with_arity};

use crate::error::{Error, Result};
use crate::matrix::{self, Int};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PpFormula {
    free: usize,
    bound: usize,
    rows: Vec<Vec<Int>>,
}

impl PpFormula {
    /// Builds and normalises a formula from its equation rows; each row has
    /// `free + bound` coefficients.
    pub fn new(free: usize, bound: usize, rows: Vec<Vec<Int>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != free + bound) {
            return Err(Error::Shape(alloc::format!(
                "equation row has {} coefficients, expected {}",
                r.len(),
                free + bound
            )));
        }
        Ok(normalize(free, bound, rows))
    }

    pub fn from_i64(free: usize, bound: usize, rows: &[&[i64]]) -> Result<Self> {
        PpFormula::new(
            free,
            bound,
            rows.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect(),
        )
    }

    /// The empty conjunction (`x = x`).
    pub fn truth(free: usize) -> Self {
        PpFormula {
            free,
            bound: 0,
            rows: Vec::new(),
        }
    }

    /// `d | v_var` (0-based variable index).
    pub fn divides(free: usize, var: usize, d: &Int) -> Self {
        let mut row = alloc::vec![Int::zero(); free + 1];
        row[var] = Int::one();
        row[free] = -d;
        normalize(free, 1, alloc::vec![row])
    }

    /// `k * v_var = 0`.
    pub fn annihilated_by(free: usize, var: usize, k: &Int) -> Self {
        let mut row = alloc::vec![Int::zero(); free];
        row[var] = k.clone();
        normalize(free, 0, alloc::vec![row])
    }

    pub fn free_vars(&self) -> usize {
        self.free
    }

    pub fn bound_vars(&self) -> usize {
        self.bound
    }

    /// Rows of `(R | S)`.
    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }

    pub fn is_truth(&self) -> bool {
        self.rows.is_empty()
    }

    /// Conjunction with disjoint bound variables.
    pub fn conjoin(&self, other: &PpFormula) -> Result<PpFormula> {
        if self.free != other.free {
            return Err(Error::Arity(alloc::format!(
                "cannot conjoin formulas in {} and {} free variables",
                self.free,
                other.free
            )));
        }
        let (n, l1, l2) = (self.free, self.bound, other.bound);
        let mut rows = Vec::with_capacity(self.rows.len() + other.rows.len());
        for r in &self.rows {
            let mut row = r.clone();
            row.extend(core::iter::repeat_n(Int::zero(), l2));
            rows.push(row);
        }
        for r in &other.rows {
            let mut row = r[..n].to_vec();
            row.extend(core::iter::repeat_n(Int::zero(), l1));
            row.extend(r[n..].iter().cloned());
            rows.push(row);
        }
        Ok(normalize(n, l1 + l2, rows))
    }

    /// Same formula viewed with more free variables.
    pub fn widen(&self, free: usize) -> Result<PpFormula> {
        if free < self.free {
            return Err(Error::Arity(alloc::format!(
                "cannot narrow {} free variables to {free}",
                self.free
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut row = r[..self.free].to_vec();
                row.extend(core::iter::repeat_n(Int::zero(), free - self.free));
                row.extend(r[self.free..].iter().cloned());
                row
            })
            .collect();
        Ok(PpFormula {
            free,
            bound: self.bound,
            rows,
        })
    }
}

/// Diagonalises the bound block in place; returns the number of pivots.
/// Pivot `t` sits at row `t`, bound column `t`.
fn diagonalize_bound(free: usize, bound: usize, rows: &mut [Vec<Int>]) -> usize {
    let n = rows.len();
    let mut t = 0;
    while t < bound.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in rows.iter().enumerate().skip(t) {
                for j in t..bound {
                    let x = &row[free + j];
                    if !x.is_zero()
                        && best.is_none_or(|(bi, bj)| x.abs() < rows[bi][free + bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { return t };
            rows.swap(t, bi);
            if bj != t {
                for row in rows.iter_mut() {
                    row.swap(free + t, free + bj);
                }
            }
            let pivot = rows[t][free + t].clone();
            let mut clean = true;
            for i in t + 1..n {
                let q = num_integer::Integer::div_floor(&rows[i][free + t], &pivot);
                if !q.is_zero() {
                    let src = rows[t].clone();
                    for (x, y) in rows[i].iter_mut().zip(&src) {
                        *x -= &q * y;
                    }
                }
                clean &= rows[i][free + t].is_zero();
            }
            for j in t + 1..bound {
                let q = num_integer::Integer::div_floor(&rows[t][free + j], &pivot);
                if !q.is_zero() {
                    for row in rows.iter_mut() {
                        let y = row[free + t].clone();
                        row[free + j] -= &q * y;
                    }
                }
                clean &= rows[t][free + j].is_zero();
            }
            if clean {
                break;
            }
        }
        t += 1;
    }
    t
}

fn normalize(free: usize, bound: usize, rows: Vec<Vec<Int>>) -> PpFormula {
    let mut rows: Vec<Vec<Int>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    rows.sort();
    let pivots = diagonalize_bound(free, bound, &mut rows);

    let equations = matrix::hermite_rows(
        rows[pivots..].iter().map(|r| r[..free].to_vec()).collect(),
        free,
    );

    let mut divisibility: Vec<(Int, Vec<Int>)> = Vec::new();
    for row in &rows[..pivots] {
        let s = row[free + divisibility_index(row, free)].abs();
        if s.is_one() {
            continue;
        }
        let mut gens = equations.clone();
        for i in 0..free {
            let mut g = alloc::vec![Int::zero(); free];
            g[i] = s.clone();
            gens.push(g);
        }
        let modulus = matrix::hermite_rows(gens, free);
        let t: Vec<Int> = row[..free].to_vec();
        let neg: Vec<Int> = t.iter().map(|x| -x).collect();
        let (mut a, mut b) = (t, neg);
        matrix::reduce_by(&modulus, &mut a);
        matrix::reduce_by(&modulus, &mut b);
        let t = if a <= b { a } else { b };
        if t.iter().all(Zero::is_zero) {
            continue;
        }
        divisibility.push((s, t));
    }
    divisibility.sort();
    divisibility.dedup();

    let l = divisibility.len();
    let mut out = Vec::with_capacity(l + equations.len());
    for (k, (s, t)) in divisibility.into_iter().enumerate() {
        let mut row = t;
        row.extend((0..l).map(|j| if j == k { -s.clone() } else { Int::zero() }));
        out.push(row);
    }
    for e in equations {
        let mut row = e;
        row.extend(core::iter::repeat_n(Int::zero(), l));
        out.push(row);
    }
    PpFormula {
        free,
        bound: l,
        rows: out,
    }
}

fn divisibility_index(row: &[Int], free: usize) -> usize {
    row[free..]
        .iter()
        .position(|x| !x.is_zero())
        .expect("pivot row has a bound entry")
}

fn var_name(free: usize, i: usize) -> String {
    if i < free {
        alloc::format!("v{}", i + 1)
    } else {
        alloc::format!("w{}", i - free + 1)
    }
}

fn write_row(f: &mut fmt::Formatter<'_>, free: usize, row: &[Int]) -> fmt::Result {
    let mut first = true;
    for (i, c) in row.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let name = var_name(free, i);
        let mag = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else if c.is_negative() {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        if mag.is_one() {
            f.write_str(&name)?;
        } else {
            write!(f, "{mag}*{name}")?;
        }
        first = false;
    }
    f.write_str(" = 0")
}

impl fmt::Display for PpFormula {
    /// Canonical text: `E w1 .. wl (row & row ...)`, or `0 = 0` for the
    /// empty conjunction.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return f.write_str("0 = 0");
        }
        if self.bound > 0 {
            f.write_str("E")?;
            for k in 0..self.bound {
                write!(f, " w{}", k + 1)?;
            }
            f.write_str(" (")?;
        }
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write_row(f, self.free, row)?;
        }
        if self.bound > 0 {
            f.write_str(")")?;
        }
        Ok(())
    }
}
