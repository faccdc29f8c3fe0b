//! Joint embedding by direct sums and amalgamation over finite bases.

use crate::error::{Error, Result};
use crate::group::{direct_sum, FgGroup};
use crate::hom::Hom;
use crate::lattice::Lattice;
use crate::modelscope::model_check;
use crate::purity::{is_pure_embedding, retraction};
use crate::theory::Theory;

/// `M ⊕ N` with its two coordinate embeddings, both pure.
pub fn joint_embed(m: &FgGroup, n: &FgGroup) -> (FgGroup, Hom, Hom) {
    let (l, f, g) = direct_sum(m, n);
    debug_assert!(is_pure_embedding(&f) && is_pure_embedding(&g));
    (l, f, g)
}

/// Result of amalgamating `i1: N -> N1` and `i2: N -> N2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Amalgam {
    pub group: FgGroup,
    pub f1: Hom,
    pub f2: Hom,
    /// Complements of the images of `N` in `N1` and `N2`.
    pub complements: (Lattice, Lattice),
}

/// Amalgamates two pure embeddings of a finite group.
///
/// Writing `N1 = i1(N) ⊕ M1` and `N2 = i2(N) ⊕ M2`, the amalgam is
/// `L = N1 ⊕ N2` with
///
/// ```text
/// f1(n + m1) = (n + m1, n),   f2(n + m2) = (n, n + m2),
/// ```
///
/// i.e. `f1 = inl + inr ∘ i2 ∘ r1` and `f2 = inl ∘ i1 ∘ r2 + inr` where `r_l`
/// is the retraction onto `N` with kernel `M_l`. Then `f1 ∘ i1 = f2 ∘ i2`.
///
/// With a theory, the amalgam must be a model, otherwise the result is
/// [`Error::EscapesClass`].
pub fn amalgamate(n: &FgGroup, i1: &Hom, i2: &Hom, theory: Option<&Theory>) -> Result<Amalgam> {
    if n.rank() > 0 {
        return Err(Error::NotPureInjective);
    }
    if i1.source() != n || i2.source() != n {
        return Err(Error::GroupMismatch(
            "embeddings must start at the base group".into(),
        ));
    }
    let r1 = retraction(i1).ok_or(Error::NotPure)?;
    let r2 = retraction(i2).ok_or(Error::NotPure)?;
    let (l, inl, inr) = direct_sum(i1.target(), i2.target());
    let f1 = inl.add(&inr.compose(&i2.compose(&r1)?)?)?;
    let f2 = inl.compose(&i1.compose(&r2)?)?.add(&inr)?;
    debug_assert_eq!(f1.compose(i1)?, f2.compose(i2)?);
    if let Some(t) = theory {
        if !model_check(&l, t)? {
            return Err(Error::EscapesClass(alloc::format!("{l}")));
        }
    }
    Ok(Amalgam {
        group: l,
        f1,
        f2,
        complements: (r1.kernel(), r2.kernel()),
    })
}
