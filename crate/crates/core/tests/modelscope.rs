mod common;

use common::{embeds_as_summand, index_mod_three_torsion, to_i64, Brute};
use ppmod_core::group::{enumerate_groups, FgGroup};
use ppmod_core::modelscope::{
    check_ap_at_scale, check_jep_at_scale, closure_probe, enumerate_models, example_index,
    model_check, universal_at_scale, universal_over, Scope, Verdict, EXAMPLE_THEORY,
};
use ppmod_core::theory::{parse_theory, Theory};

fn g(s: &str) -> FgGroup {
    s.parse().unwrap()
}

fn example() -> Theory {
    parse_theory(EXAMPLE_THEORY).unwrap()
}

fn moduli(g: &FgGroup) -> Vec<i64> {
    g.divisors().iter().map(to_i64).collect()
}

/// Models of the example theory by element counting.
fn brute_example_model(g: &FgGroup) -> bool {
    index_mod_three_torsion(&Brute::new(g)) < 6
}

/// Every model of order at most `bound` that purely contains both groups,
/// found by enumeration.
fn brute_common_models(t: &Theory, a: &FgGroup, b: &FgGroup, bound: u64) -> Vec<FgGroup> {
    enumerate_groups(bound)
        .into_iter()
        .filter(|l| {
            embeds_as_summand(&moduli(a), &moduli(l)) && embeds_as_summand(&moduli(b), &moduli(l))
        })
        .filter(|l| model_check(l, t).unwrap())
        .collect()
}

#[test]
fn example_membership_matches_element_counting() {
    let t = example();
    for m in enumerate_groups(100) {
        assert_eq!(model_check(&m, &t).unwrap(), brute_example_model(&m), "{m}");
        assert_eq!(
            example_index(&m),
            Some(index_mod_three_torsion(&Brute::new(&m)) as u64)
        );
    }
}

#[test]
fn empty_and_torsion_free_theories() {
    assert_eq!(enumerate_models(&Theory::empty(), 4).unwrap().len(), 5);
    let tf = parse_theory("builtin: torsion-free").unwrap();
    assert_eq!(enumerate_models(&tf, 60).unwrap(), vec![g("0")]);
}

#[test]
fn enumeration_is_monotone_in_the_bound() {
    let t = example();
    let mut prev = Vec::new();
    for bound in [1, 5, 10, 30, 81, 120] {
        let now = enumerate_models(&t, bound).unwrap();
        assert!(prev.iter().all(|m| now.contains(m)), "bound {bound}");
        assert!(now.iter().all(|m| m.order_u64().unwrap() <= bound));
        prev = now;
    }
}

#[test]
fn joint_embedding_failures_are_re_verified() {
    let t = example();
    let bound = 200;
    let report = check_jep_at_scale(&t, &Scope::MaxOrder(5), bound).unwrap();
    let Verdict::JointEmbedding {
        successes,
        failures,
    } = &report.verdict
    else {
        panic!("wrong verdict")
    };
    assert!(failures
        .iter()
        .any(|f| f.left == g("Z/2") && f.right == g("Z/5")));
    for f in failures {
        assert!(
            brute_common_models(&t, &f.left, &f.right, bound).is_empty(),
            "{} {}",
            f.left,
            f.right
        );
        if let Some(o) = &f.obstruction {
            // the invariant of the join already reaches the forbidden range
            assert!(!brute_example_model(&o.join));
        }
    }
    for s in successes {
        let common = brute_common_models(&t, &s.left, &s.right, bound);
        assert_eq!(common.first(), Some(&s.witness), "{} {}", s.left, s.right);
    }
    let pair = check_jep_at_scale(&t, &Scope::Explicit(vec![g("Z/2"), g("Z/3")]), 6).unwrap();
    assert!(pair.success());
}

#[test]
fn direct_sums_witness_joint_embedding_without_axioms() {
    let report = check_jep_at_scale(&Theory::empty(), &Scope::MaxOrder(8), 64).unwrap();
    assert!(report.success());
    assert!(closure_probe(&Theory::empty(), 24).unwrap().is_empty());
    let bad = closure_probe(&example(), 10).unwrap();
    assert!(bad
        .iter()
        .any(|(a, b, s)| *a == g("Z/2") && *b == g("Z/5") && *s == g("Z/10")));
    for (a, b, s) in bad {
        assert!(brute_example_model(&a) && brute_example_model(&b) && !brute_example_model(&s));
    }
}

#[test]
fn amalgamation_over_finite_bases() {
    let t = example();
    let trivial = check_ap_at_scale(&t, &g("0"), &Scope::MaxOrder(5), 200).unwrap();
    let Verdict::Amalgamation { failures, .. } = &trivial.verdict else {
        panic!("wrong verdict")
    };
    assert!(failures
        .iter()
        .any(|f| f.left == g("Z/2") && f.right == g("Z/5")));
    let three = check_ap_at_scale(
        &t,
        &g("Z/3"),
        &Scope::Explicit(vec![g("Z/6"), g("Z/15")]),
        200,
    )
    .unwrap();
    let Verdict::Amalgamation { failures, .. } = &three.verdict else {
        panic!("wrong verdict")
    };
    assert!(failures
        .iter()
        .any(|f| f.left == g("Z/6") && f.right == g("Z/15")));
    assert!(brute_common_models(&t, &g("Z/6"), &g("Z/15"), 200).is_empty());
    for base in ["0", "Z/2", "Z/3", "Z/4"] {
        assert!(
            check_ap_at_scale(&Theory::empty(), &g(base), &Scope::MaxOrder(12), 144)
                .unwrap()
                .success(),
            "{base}"
        );
    }
}

#[test]
fn least_universal_model_matches_exhaustive_search() {
    let t = Theory::empty();
    let small = enumerate_groups(4);
    let expect = enumerate_groups(100)
        .into_iter()
        .find(|u| {
            small
                .iter()
                .all(|m| embeds_as_summand(&moduli(m), &moduli(u)))
        })
        .unwrap();
    let got = universal_at_scale(&t, 4, 100).unwrap();
    assert_eq!(got.witness, Some(expect.clone()));
    assert_eq!(expect, g("Z/2 + Z/2 + Z/12"));
    assert_eq!(universal_at_scale(&t, 1, 1).unwrap().witness, Some(g("0")));
    let none = universal_at_scale(&example(), 5, 500).unwrap();
    assert_eq!(none.witness, None);
    assert!(none.obstruction.is_some());
}

#[test]
fn universality_over_a_finite_base() {
    let t = Theory::empty();
    let u = g("Z/2 + Z/2 + Z/12");
    assert!(universal_over(&g("Z/9"), &u, &t, 4).unwrap().success());
    let small = universal_over(&g("Z/9"), &g("Z/3"), &t, 4).unwrap();
    let Verdict::UniversalOver {
        failures, covered, ..
    } = &small.verdict
    else {
        panic!("wrong verdict")
    };
    assert!(failures.contains(&g("Z/4 + Z/9")));
    // `Z/9 + C` is covered exactly when `C` is a summand of `Z/3`
    for n in failures.iter().chain(covered) {
        let c = enumerate_groups(4)
            .into_iter()
            .find(|c| ppmod_core::modelscope::sum_group(&g("Z/9"), c) == *n)
            .unwrap();
        assert_eq!(
            covered.contains(n),
            embeds_as_summand(&moduli(&c), &[3]),
            "{n}"
        );
    }
}
