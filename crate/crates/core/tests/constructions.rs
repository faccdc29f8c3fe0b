mod common;

use common::{apply, is_pure_embedding, Brute};
use ppmod_core::constructions::{amalgamate, joint_embed};
use ppmod_core::group::FgGroup;
use ppmod_core::hom::Hom;
use ppmod_core::matrix::Int;
use ppmod_core::modelscope::sum_group;
use proptest::prelude::*;

fn finite(orders: Vec<u64>) -> FgGroup {
    FgGroup::from_cyclic(0, &orders.into_iter().map(Int::from).collect::<Vec<_>>())
}

/// A random pure embedding of `n` into `n ⊕ c`: random generator images,
/// kept only when the oracle accepts them.
fn random_pure_embedding(n: &FgGroup, c: &FgGroup, entries: &[i64]) -> Option<Hom> {
    let l = sum_group(n, c);
    let rows: Vec<Vec<Int>> = (0..l.dim())
        .map(|t| {
            (0..n.dim())
                .map(|s| Int::from(entries[(t * 4 + s) % entries.len()]))
                .collect()
        })
        .collect();
    Hom::new(n.clone(), l, rows).ok().filter(is_pure_embedding)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    #[test]
    fn amalgams_commute_and_embed_purely(
        base in prop::collection::vec(1u64..=4, 0..=2),
        c1 in prop::collection::vec(1u64..=4, 0..=2),
        c2 in prop::collection::vec(1u64..=4, 0..=2),
        e1 in prop::collection::vec(0i64..12, 16),
        e2 in prop::collection::vec(0i64..12, 16),
    ) {
        let n = finite(base);
        let (c1, c2) = (finite(c1), finite(c2));
        // fall back to the canonical embedding when the random map is not pure
        let pick = |c: &FgGroup, e: &[i64]| random_pure_embedding(&n, c, e)
            .unwrap_or_else(|| ppmod_core::purity::pure_embeddable(&n, &sum_group(&n, c)).unwrap());
        let (i1, i2) = (pick(&c1, &e1), pick(&c2, &e2));
        let am = amalgamate(&n, &i1, &i2, None).unwrap();
        let bn = Brute::new(&n);
        for x in bn.elements() {
            prop_assert_eq!(apply(&am.f1, &apply(&i1, &x)), apply(&am.f2, &apply(&i2, &x)));
        }
        prop_assert!(is_pure_embedding(&am.f1) && is_pure_embedding(&am.f2));
        let sizes = [i1.target(), i2.target()].map(|g| Brute::new(g).order());
        prop_assert_eq!(Brute::new(&am.group).order(), sizes[0] * sizes[1]);
    }

    #[test]
    fn direct_sums_jointly_embed(a in prop::collection::vec(1u64..=6, 0..=2), b in prop::collection::vec(1u64..=6, 0..=2)) {
        let (m, n) = (finite(a), finite(b));
        let (l, f, g) = joint_embed(&m, &n);
        prop_assert!(is_pure_embedding(&f) && is_pure_embedding(&g));
        prop_assert_eq!(Brute::new(&l).order(), Brute::new(&m).order() * Brute::new(&n).order());
    }
}
