//! Exact integer matrix reductions.
//!
//! Matrices are plain row vectors of [`Int`]. Lattices are described by
//! generating rows; [`hermite_rows`] turns any generating set into the
//! unique row-echelon Hermite basis, and everything else (kernels, linear
//! systems, Smith form) is built on top of it.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision integer used throughout the crate.
pub type Int = BigInt;

pub(crate) fn int(v: i64) -> Int {
    Int::from(v)
}

/// `dst -= q * src`
fn sub_scaled(dst: &mut [Int], q: &Int, src: &[Int]) {
    if q.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

fn negate(row: &mut [Int]) {
    for x in row.iter_mut() {
        *x = -core::mem::take(x);
    }
}

/// Row-style Hermite normal form of the lattice generated by `rows`.
///
/// The result is in echelon form with strictly increasing pivot columns,
/// positive pivots, entries above each pivot reduced into `[0, pivot)`, and
/// zero rows removed. Two generating sets of the same lattice give identical
/// output.
pub fn hermite_rows(mut rows: Vec<Vec<Int>>, ncols: usize) -> Vec<Vec<Int>> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let n = rows.len();
    let mut r = 0;
    for col in 0..ncols {
        if r == n {
            break;
        }
        let mut found = false;
        loop {
            let pivot = (r..n)
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(p) = pivot else { break };
            found = true;
            rows.swap(r, p);
            let mut clean = true;
            let (head, tail) = rows.split_at_mut(r + 1);
            let prow = &head[r];
            for row in tail.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let q = row[col].div_floor(&prow[col]);
                sub_scaled(row, &q, prow);
                if !row[col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if rows[r][col].is_negative() {
            negate(&mut rows[r]);
        }
        let (head, tail) = rows.split_at_mut(r);
        let prow = &tail[0];
        for row in head.iter_mut() {
            let q = row[col].div_floor(&prow[col]);
            sub_scaled(row, &q, prow);
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Column index of the leading non-zero entry.
pub fn leading(row: &[Int]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

/// Reduces `v` against a Hermite basis. The result is the canonical coset
/// representative; it is zero iff `v` lies in the lattice.
pub fn reduce_by(basis: &[Vec<Int>], v: &mut [Int]) {
    for row in basis {
        let c = leading(row).expect("hermite basis rows are non-zero");
        let q = v[c].div_floor(&row[c]);
        sub_scaled(v, &q, row);
    }
}

/// Membership test against a Hermite basis.
pub fn in_lattice(basis: &[Vec<Int>], v: &[Int]) -> bool {
    let mut w = v.to_vec();
    reduce_by(basis, &mut w);
    w.iter().all(Zero::is_zero)
}

/// Basis (in Hermite form) of `{x in Z^n : a x = 0}` for an `m x n` matrix `a`.
pub fn integer_kernel(a: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    let m = a.len();
    let rows = (0..n)
        .map(|i| {
            let mut row = Vec::with_capacity(m + n);
            row.extend(a.iter().map(|arow| arow[i].clone()));
            row.extend((0..n).map(|k| if k == i { Int::one() } else { Int::zero() }));
            row
        })
        .collect();
    hermite_rows(rows, m + n)
        .into_iter()
        .filter(|r| r[..m].iter().all(Zero::is_zero))
        .map(|r| r[m..].to_vec())
        .collect()
}

/// One integer solution of `a z = b`, if any.
pub fn solve(a: &[Vec<Int>], b: &[Int], n: usize) -> Option<Vec<Int>> {
    debug_assert_eq!(a.len(), b.len());
    let aug: Vec<Vec<Int>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = Vec::with_capacity(n + 1);
            r.push(-rhs);
            r.extend(row.iter().cloned());
            r
        })
        .collect();
    let ker = integer_kernel(&aug, n + 1);
    let first = ker.first()?;
    if first[0].is_one() {
        Some(first[1..].to_vec())
    } else {
        None
    }
}

/// A system of congruences `sum coeffs[i] * z_i = rhs (mod modulus)` in
/// integer unknowns; modulus zero means exact equality.
#[derive(Debug, Clone, Default)]
pub struct Congruences {
    unknowns: usize,
    rows: Vec<(Vec<Int>, Int, Int)>,
}

impl Congruences {
    pub fn new(unknowns: usize) -> Self {
        Congruences {
            unknowns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, coeffs: Vec<Int>, rhs: Int, modulus: Int) {
        debug_assert_eq!(coeffs.len(), self.unknowns);
        if modulus.is_one() {
            return;
        }
        self.rows.push((coeffs, rhs, modulus));
    }

    pub fn solve(&self) -> Option<Vec<Int>> {
        let slacks: Vec<usize> = self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, (_, _, m))| !m.is_zero())
            .map(|(i, _)| i)
            .collect();
        let width = self.unknowns + slacks.len();
        let mut a = Vec::with_capacity(self.rows.len());
        let mut b = Vec::with_capacity(self.rows.len());
        for (i, (coeffs, rhs, modulus)) in self.rows.iter().enumerate() {
            let mut row = coeffs.clone();
            row.resize(width, Int::zero());
            if let Ok(k) = slacks.binary_search(&i) {
                row[self.unknowns + k] = -modulus;
            }
            a.push(row);
            b.push(rhs.clone());
        }
        let mut z = solve(&a, &b, width)?;
        z.truncate(self.unknowns);
        Some(z)
    }
}

/// Smith normal form `P A Q = D` of an `n x m` matrix, keeping the left
/// transform and its inverse.
#[derive(Debug, Clone)]
pub struct Smith {
    /// Diagonal of `D`, one entry per row of `A` (zero past `min(n, m)`).
    pub diagonal: Vec<Int>,
    pub left: Vec<Vec<Int>>,
    pub left_inverse: Vec<Vec<Int>>,
}

struct SmithState {
    a: Vec<Vec<Int>>,
    p: Vec<Vec<Int>>,
    pinv: Vec<Vec<Int>>,
}

impl SmithState {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.p.swap(i, j);
        for row in self.pinv.iter_mut() {
            row.swap(i, j);
        }
    }

    /// row_i -= q * row_j
    fn sub_row(&mut self, i: usize, j: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        let (src_a, src_p) = (self.a[j].clone(), self.p[j].clone());
        sub_scaled(&mut self.a[i], q, &src_a);
        sub_scaled(&mut self.p[i], q, &src_p);
        for row in self.pinv.iter_mut() {
            let t = &row[i] * q;
            row[j] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        negate(&mut self.a[i]);
        negate(&mut self.p[i]);
        for row in self.pinv.iter_mut() {
            row[i] = -core::mem::take(&mut row[i]);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
    }

    /// col_i -= q * col_j
    fn sub_col(&mut self, i: usize, j: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for row in self.a.iter_mut() {
            let t = &row[j] * q;
            row[i] -= t;
        }
    }
}

fn identity(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect()
}

pub fn smith(a: Vec<Vec<Int>>, m: usize) -> Smith {
    let n = a.len();
    let mut st = SmithState {
        a,
        p: identity(n),
        pinv: identity(n),
    };
    let k = n.min(m);
    let mut t = 0;
    'outer: while t < k {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..m {
                    let x = &st.a[i][j];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < st.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break 'outer };
            st.swap_rows(t, bi);
            st.swap_cols(t, bj);
            let mut clean = true;
            for i in t + 1..n {
                if st.a[i][t].is_zero() {
                    continue;
                }
                let q = st.a[i][t].div_floor(&st.a[t][t]);
                st.sub_row(i, t, &q);
                clean &= st.a[i][t].is_zero();
            }
            for j in t + 1..m {
                if st.a[t][j].is_zero() {
                    continue;
                }
                let q = st.a[t][j].div_floor(&st.a[t][t]);
                st.sub_col(j, t, &q);
                clean &= st.a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = st.a[t][t].clone();
            let bad = (t + 1..n).find(|&i| (t + 1..m).any(|j| !st.a[i][j].is_multiple_of(&pivot)));
            match bad {
                Some(i) => st.sub_row(t, i, &int(-1)),
                None => break,
            }
        }
        if st.a[t][t].is_negative() {
            st.negate_row(t);
        }
        t += 1;
    }
    let diagonal = (0..n)
        .map(|i| {
            if i < k {
                st.a[i][i].clone()
            } else {
                Int::zero()
            }
        })
        .collect();
    Smith {
        diagonal,
        left: st.p,
        left_inverse: st.pinv,
    }
}

/// `a * b` for row-major matrices.
pub fn mat_mul(a: &[Vec<Int>], b: &[Vec<Int>], inner: usize, cols: usize) -> Vec<Vec<Int>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Int::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &row[k] * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<Int>], v: &[Int]) -> Vec<Int> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, _)| !x.is_zero())
                .map(|(x, y)| x * y)
                .sum()
        })
        .collect()
}

pub fn transpose(a: &[Vec<Int>], cols: usize) -> Vec<Vec<Int>> {
    (0..cols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn zeros(rows: usize, cols: usize) -> Vec<Vec<Int>> {
    vec![vec![Int::zero(); cols]; rows]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn hermite_is_canonical() {
        let a = hermite_rows(m(&[&[2, 0], &[0, 3]]), 2);
        let b = hermite_rows(m(&[&[2, 3], &[4, 3], &[0, 6]]), 2);
        assert_eq!(a, m(&[&[2, 0], &[0, 3]]));
        assert_eq!(b, a);
    }

    #[test]
    fn kernel_of_row() {
        let k = integer_kernel(&m(&[&[2, 4, 6]]), 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&m(&[&[2, 4, 6]]), v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_detects_gcd_obstruction() {
        assert!(solve(&m(&[&[2, 4]]), &[int(3)], 2).is_none());
        let z = solve(&m(&[&[2, 3]]), &[int(1)], 2).unwrap();
        assert_eq!(&z[0] * 2 + &z[1] * 3, int(1));
    }

    #[test]
    fn congruences_with_slack() {
        // 2z = 1 mod 5
        let mut c = Congruences::new(1);
        c.push(vec![int(2)], int(1), int(5));
        let z = c.solve().unwrap();
        let r: Int = &z[0] * 2 - 1;
        assert_eq!(r.mod_floor(&int(5)), int(0));
        let mut c = Congruences::new(1);
        c.push(vec![int(2)], int(1), int(4));
        assert!(c.solve().is_none());
    }

    #[test]
    fn smith_diag_4_6() {
        let s = smith(m(&[&[4, 0], &[0, 6]]), 2);
        assert_eq!(s.diagonal, vec![int(2), int(12)]);
        let id = mat_mul(&s.left, &s.left_inverse, 2, 2);
        assert_eq!(id, identity(2));
    }

    #[test]
    fn smith_rectangular_with_zero_rows() {
        let s = smith(m(&[&[2], &[4], &[0]]), 1);
        assert_eq!(s.diagonal, vec![int(2), int(0), int(0)]);
        assert_eq!(mat_mul(&s.left_inverse, &s.left, 3, 3), identity(3));
    }
}
