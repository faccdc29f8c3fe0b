use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{Element, FgGroup};
use crate::lattice::Lattice;
use crate::matrix::{self, Int};

/// A homomorphism between canonical groups, stored as a `D_target x D_source`
/// integer matrix acting on coordinate vectors.
///
/// Rows belonging to torsion coordinates of the target are reduced into
/// `[0, d)`, so two homomorphisms are equal iff their matrices are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hom {
    source: FgGroup,
    target: FgGroup,
    matrix: Vec<Vec<Int>>,
}

impl Hom {
    pub fn new(source: FgGroup, target: FgGroup, matrix: Vec<Vec<Int>>) -> Result<Self> {
        let (ds, dt) = (source.dim(), target.dim());
        if matrix.len() != dt || matrix.iter().any(|r| r.len() != ds) {
            return Err(Error::Shape(alloc::format!("expected a {dt}x{ds} matrix")));
        }
        for (i, d) in source.divisors().iter().enumerate() {
            let col = source.rank() + i;
            for (t, row) in matrix.iter().enumerate() {
                let image = d * &row[col];
                let m = target.modulus(t);
                let ok = if m.is_zero() {
                    image.is_zero()
                } else {
                    image.is_multiple_of(&m)
                };
                if !ok {
                    return Err(Error::IllDefined { column: col });
                }
            }
        }
        let matrix = matrix
            .into_iter()
            .enumerate()
            .map(|(t, row)| {
                let m = target.modulus(t);
                if m.is_zero() {
                    row
                } else {
                    row.into_iter().map(|x| x.mod_floor(&m)).collect()
                }
            })
            .collect();
        Ok(Hom {
            source,
            target,
            matrix,
        })
    }

    pub fn from_i64(source: FgGroup, target: FgGroup, rows: &[&[i64]]) -> Result<Self> {
        let m = rows
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        Hom::new(source, target, m)
    }

    pub fn identity(g: &FgGroup) -> Self {
        let d = g.dim();
        let m = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if i == j { Int::one() } else { Int::zero() })
                    .collect()
            })
            .collect();
        Hom::new(g.clone(), g.clone(), m).expect("identity is well defined")
    }

    pub fn zero(source: &FgGroup, target: &FgGroup) -> Self {
        Hom {
            source: source.clone(),
            target: target.clone(),
            matrix: matrix::zeros(target.dim(), source.dim()),
        }
    }

    pub fn source(&self) -> &FgGroup {
        &self.source
    }

    pub fn target(&self) -> &FgGroup {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<Int>] {
        &self.matrix
    }

    pub fn apply(&self, e: &Element) -> Element {
        self.target
            .reduce(matrix::mat_vec(&self.matrix, e.coords()))
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &Hom) -> Result<Hom> {
        if inner.target != self.source {
            return Err(Error::GroupMismatch(
                "composition of incompatible homomorphisms".into(),
            ));
        }
        let m = matrix::mat_mul(
            &self.matrix,
            &inner.matrix,
            self.source.dim(),
            inner.source.dim(),
        );
        Hom::new(inner.source.clone(), self.target.clone(), m)
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Hom) -> Result<Hom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::GroupMismatch(
                "sum of homomorphisms with different ends".into(),
            ));
        }
        let m = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Hom::new(self.source.clone(), self.target.clone(), m)
    }

    pub fn image(&self) -> Lattice {
        let cols = matrix::transpose(&self.matrix, self.source.dim());
        Lattice::from_generators(&self.target, 1, cols)
    }

    /// `{x : self(x) = 0}` as a subgroup of the source.
    pub fn kernel(&self) -> Lattice {
        Lattice::zero(&self.target, 1).preimage(self)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel() == Lattice::zero(&self.source, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgGroup {
        s.parse().unwrap()
    }

    #[test]
    fn times_two_into_z4() {
        assert!(Hom::from_i64(g("Z/2"), g("Z/4"), &[&[2]]).is_ok());
        assert_eq!(
            Hom::from_i64(g("Z/2"), g("Z/4"), &[&[1]]),
            Err(Error::IllDefined { column: 0 })
        );
    }

    #[test]
    fn torsion_cannot_map_to_free() {
        assert_eq!(
            Hom::from_i64(g("Z/2"), g("Z"), &[&[1]]),
            Err(Error::IllDefined { column: 0 })
        );
        assert!(Hom::from_i64(g("Z/2"), g("Z"), &[&[0]]).is_ok());
    }

    #[test]
    fn identity_and_composition() {
        let m = g("Z + Z/6");
        let id = Hom::identity(&m);
        let f = Hom::from_i64(m.clone(), m.clone(), &[&[1, 0], &[3, 5]]).unwrap();
        assert_eq!(f.compose(&id).unwrap(), f);
        assert_eq!(id.compose(&f).unwrap(), f);
        let e = m.element_i64(&[2, 1]).unwrap();
        assert_eq!(f.apply(&e), m.element_i64(&[2, 5]).unwrap());
    }

    #[test]
    fn kernel_and_injectivity() {
        let f = Hom::from_i64(g("Z/4"), g("Z/2"), &[&[1]]).unwrap();
        assert!(!f.is_injective());
        assert_eq!(f.kernel().order(), Some(Int::from(2)));
        let inc = Hom::from_i64(g("Z/2"), g("Z/4"), &[&[2]]).unwrap();
        assert!(inc.is_injective());
        assert_eq!(inc.image().order(), Some(Int::from(2)));
    }
}
