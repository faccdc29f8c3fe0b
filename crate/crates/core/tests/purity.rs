mod common;

use std::collections::BTreeSet;

use common::{element_vec, Brute};
use ppmod_core::group::{enumerate_groups, FgGroup};
use ppmod_core::hom::Hom;
use ppmod_core::lattice::Lattice;
use ppmod_core::matrix::Int;
use ppmod_core::purity::{complement, is_pure, is_pure_embedding, pure_embeddable, splitting};
use proptest::prelude::*;

fn small_group() -> impl Strategy<Value = FgGroup> {
    prop::collection::vec(1u64..=8, 0..=3)
        .prop_filter("order at most 64", |o| o.iter().product::<u64>() <= 64)
        .prop_map(|orders| {
            FgGroup::from_cyclic(0, &orders.into_iter().map(Int::from).collect::<Vec<_>>())
        })
}

fn subgroup(m: &FgGroup, gens: &[Vec<i64>]) -> (Lattice, BTreeSet<Vec<i64>>) {
    let els: Vec<_> = gens
        .iter()
        .map(|g| m.reduce(g[..m.dim()].iter().map(|&x| Int::from(x)).collect()))
        .collect();
    let vecs: Vec<Vec<i64>> = els.iter().map(element_vec).collect();
    (
        Lattice::generated_by(m, &els).unwrap(),
        Brute::new(m).span(&vecs),
    )
}

fn lattice_elements(m: &FgGroup, l: &Lattice) -> BTreeSet<Vec<i64>> {
    Brute::new(m)
        .elements()
        .into_iter()
        .filter(|x| l.contains(&m.element_i64(x).unwrap()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn purity_agrees_with_the_divisor_oracle(
        m in small_group(),
        gens in prop::collection::vec(prop::collection::vec(0i64..8, 3), 0..=3),
    ) {
        let (h, span) = subgroup(&m, &gens);
        let b = Brute::new(&m);
        let pure = is_pure(&m, &h).unwrap();
        prop_assert_eq!(pure, b.is_pure(&span));
        prop_assert_eq!(splitting(&m, &h).unwrap().is_some(), pure);
        if pure {
            let c = lattice_elements(&m, &complement(&m, &h).unwrap());
            prop_assert_eq!(span.intersection(&c).count(), 1);
            let mut sum = BTreeSet::new();
            for x in &span {
                for y in &c {
                    sum.insert(b.add(x, y));
                }
            }
            prop_assert_eq!(sum.len(), b.order());
            let e = splitting(&m, &h).unwrap().unwrap();
            for x in b.elements() {
                let ex = common::apply(&e, &x);
                prop_assert!(span.contains(&ex));
                prop_assert_eq!(common::apply(&e, &ex), ex.clone());
                if span.contains(&x) {
                    prop_assert_eq!(ex, x);
                }
            }
        }
    }

    #[test]
    fn random_maps_are_pure_embeddings_exactly_when_the_oracle_says_so(
        src in small_group(),
        dst in small_group(),
        entries in prop::collection::vec(0i64..8, 9),
    ) {
        let rows: Vec<Vec<Int>> = (0..dst.dim())
            .map(|t| (0..src.dim()).map(|s| Int::from(entries[t * 3 + s])).collect())
            .collect();
        if let Ok(f) = Hom::new(src.clone(), dst.clone(), rows) {
            prop_assert_eq!(is_pure_embedding(&f), common::is_pure_embedding(&f));
        }
    }
}

/// `M` embeds purely into `N` iff some homomorphism does, searched over all
/// images of the generators.
fn brute_pure_embeddable(m: &FgGroup, n: &FgGroup) -> bool {
    let bn = Brute::new(n);
    let elems = bn.elements();
    let k = m.dim();
    let mut choice = vec![0usize; k];
    loop {
        let rows: Vec<Vec<Int>> = (0..n.dim())
            .map(|t| (0..k).map(|s| Int::from(elems[choice[s]][t])).collect())
            .collect();
        if let Ok(f) = Hom::new(m.clone(), n.clone(), rows) {
            if common::is_pure_embedding(&f) {
                return true;
            }
        }
        let mut c = 0;
        loop {
            if c == k {
                return false;
            }
            choice[c] += 1;
            if choice[c] < elems.len() {
                break;
            }
            choice[c] = 0;
            c += 1;
        }
    }
}

#[test]
fn pure_embeddability_matches_exhaustive_search() {
    let groups = enumerate_groups(16);
    for m in &groups {
        for n in &groups {
            let found = pure_embeddable(m, n);
            if let Some(f) = &found {
                assert!(
                    common::is_pure_embedding(f),
                    "{m} -> {n}: witness is not a pure embedding"
                );
            }
            let divides = n.order().unwrap() % m.order().unwrap() == Int::from(0);
            if divides {
                assert_eq!(found.is_some(), brute_pure_embeddable(m, n), "{m} -> {n}");
            } else {
                assert!(found.is_none());
            }
        }
    }
}

#[test]
fn mutual_pure_embeddability_forces_isomorphism() {
    for n in 1..=100u64 {
        let level = ppmod_core::group::groups_of_order(n);
        for a in &level {
            for b in &level {
                if pure_embeddable(a, b).is_some() && pure_embeddable(b, a).is_some() {
                    assert_eq!(a, b);
                }
            }
        }
    }
}
