use std::sync::OnceLock;

use proptest::prelude::*;
use wormcalc_core::calculus::{
    axiom_top, monotonicity, prove_body, prove_drop_head, prove_head, prove_prefix,
    prove_remainder, prove_top_min, reflexivity, transitivity,
};
use wormcalc_core::decide::{Bound, OracleVerdict, Saturation};
use wormcalc_core::rcnorm::worm_conj;
use wormcalc_core::*;

fn nats(k: u64) -> Vec<Ordinal> {
    (0..k).map(Ordinal::nat).collect()
}

fn small_worms() -> &'static [Worm] {
    static W: OnceLock<Vec<Worm>> = OnceLock::new();
    W.get_or_init(|| Worm::enumerate(&nats(3), 4))
}

/// Saturated closure over `{0,1,2}` for worms of length at most 5.
fn oracle() -> &'static Saturation {
    static S: OnceLock<Saturation> = OnceLock::new();
    S.get_or_init(|| Saturation::new(&nats(3), Bound::new(5)).unwrap())
}

fn w(s: &str) -> Worm {
    s.parse().unwrap()
}

/// Derivability: the saturation oracle where it has headroom, otherwise a
/// kernel-checked proof from `decide`.
fn holds(a: &Worm, b: &Worm) -> bool {
    if a.len() <= 4 && b.len() <= 4 {
        oracle().derivable(a, b)
    } else {
        decide(a, b).proof().is_some_and(|p| check_proof(p).is_ok())
    }
}

fn assert_sound(p: &Proof) {
    check_proof(p).unwrap_or_else(|e| panic!("{} rejected: {e}", p.conclusion));
    assert!(
        oracle().derivable(p.antecedent(), p.succedent()),
        "oracle does not confirm {}",
        p.conclusion
    );
}

#[test]
fn builders_produce_checked_and_confirmed_proofs() {
    for a in small_worms() {
        assert_sound(&reflexivity(a));
        assert_sound(&axiom_top(a));
        for alpha in nats(3) {
            if a.len() < 4 {
                assert_sound(&transitivity(&alpha, a));
                for beta in nats(3).into_iter().filter(|b| *b < alpha) {
                    assert_sound(&monotonicity(&alpha, &beta, a));
                }
            }
            assert_sound(&prove_head(&alpha, a));
            assert_sound(&prove_remainder(&alpha, a));
            if !a.is_top() && a.in_worms_at(&alpha) {
                assert_sound(&prove_top_min(&alpha, a).unwrap());
                let body = prove_body(&alpha, a).unwrap();
                assert_sound(&body.forward);
                assert_sound(&body.backward);
                assert_sound(&body.to_body);
            }
        }
        for split in 0..=a.len() {
            let (head, rest) = a.split_at(split);
            assert_sound(&prove_prefix(&head, &rest));
            if let Some(alpha) = rest.first() {
                if head.in_worms_at(&alpha.succ()) {
                    assert_sound(&prove_drop_head(alpha, &head, &rest.tail()).unwrap());
                }
            }
        }
    }
}

#[test]
fn decide_agrees_with_both_oracles_on_the_small_enumeration() {
    let worms = small_worms();
    let menu = wormcalc_core::ignatiev::axis_menu(worms.iter(), 3);
    let model = TruncatedModel::generate(3, &menu).unwrap();
    let sats: Vec<Vec<bool>> = worms.iter().map(|x| model.satisfying(x).unwrap()).collect();
    for (i, a) in worms.iter().enumerate() {
        for (j, b) in worms.iter().enumerate() {
            let verdict = decide(a, b);
            let countermodel = (0..model.len()).any(|x| sats[i][x] && !sats[j][x]);
            match verdict.proof() {
                Some(p) => {
                    assert!(p.proves(&Judgment::new(a.clone(), b.clone())));
                    assert!(oracle().derivable(a, b), "{a} |- {b}");
                    assert!(!countermodel, "{a} |- {b} has a countermodel");
                }
                None => {
                    assert!(!oracle().derivable(a, b), "{a} |- {b} missed");
                    assert!(countermodel, "no countermodel for {a} |- {b}");
                }
            }
        }
    }
}

#[test]
fn oracle_reconstructions_check() {
    for (a, b) in [
        ("<1><0><1>", "<0><1>"),
        ("<2><0>", "<1><1><0>"),
        ("<0><0><0>", "<0><0>"),
    ] {
        match brute_force(&w(a), &w(b), Bound::new(5)).unwrap() {
            OracleVerdict::Derivable(p) => {
                assert!(p.proves(&Judgment::new(w(a), w(b))));
            }
            OracleVerdict::Unknown => panic!("{a} |- {b} should be derivable"),
        }
    }
    assert!(!brute_force(&w("<0>"), &w("<1>"), Bound::new(4))
        .unwrap()
        .is_derivable());
}

#[test]
fn order_properties_on_the_small_enumeration() {
    let worms = small_worms();
    for alpha in nats(3) {
        let in_w: Vec<&Worm> = worms.iter().filter(|x| x.in_worms_at(&alpha)).collect();
        let n = in_w.len();
        let mut lt = vec![false; n * n];
        for (i, a) in in_w.iter().enumerate() {
            assert_eq!(compare_worms(&alpha, a, a).unwrap().verdict(), Verdict::Eqv);
            assert!(
                !decide(a, &a.prefixed(&alpha)).is_provable(),
                "{a} <_{alpha} {a}"
            );
            for (j, b) in in_w.iter().enumerate() {
                let c = compare_worms(&alpha, a, b).unwrap();
                assert!(c.is_witnessed(&alpha, a, b));
                let below = holds(b, &a.prefixed(&alpha));
                let above = holds(a, &b.prefixed(&alpha));
                let same = holds(a, b) && holds(b, a);
                assert_eq!(
                    [below, same, above].iter().filter(|x| **x).count(),
                    1,
                    "trichotomy at {a} {b}"
                );
                let expected = if below {
                    Verdict::Lt
                } else if same {
                    Verdict::Eqv
                } else {
                    Verdict::Gt
                };
                assert_eq!(c.verdict(), expected);
                lt[i * n + j] = below;
                // Downward closure to smaller indices.
                if below {
                    for beta in nats(3).into_iter().filter(|b| *b <= alpha) {
                        assert!(holds(b, &a.prefixed(&beta)));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !lt[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    if lt[j * n + k] {
                        assert!(lt[i * n + k], "transitivity of <_{alpha}");
                    }
                }
            }
        }
    }
}

#[test]
fn conjunction_laws_on_the_small_enumeration() {
    let short: Vec<&Worm> = small_worms().iter().filter(|x| x.len() <= 3).collect();
    let equiv = |x: &Worm, y: &Worm| decide(x, y).is_provable() && decide(y, x).is_provable();
    for a in &short {
        for b in &short {
            let c = worm_conj(a, b);
            assert!(
                decide(&c, a).is_provable() && decide(&c, b).is_provable(),
                "{a} & {b}"
            );
            assert!(equiv(&c, &worm_conj(b, a)), "commutativity at {a} {b}");
        }
    }
    let tiny: Vec<&Worm> = small_worms().iter().filter(|x| x.len() <= 2).collect();
    for a in &tiny {
        for b in &tiny {
            for c in &tiny {
                let left = worm_conj(&worm_conj(a, b), c);
                let right = worm_conj(a, &worm_conj(b, c));
                assert!(equiv(&left, &right), "associativity at {a} {b} {c}");
            }
        }
    }
}

#[test]
fn mutated_conclusions_are_rejected_at_the_right_node() {
    let p = decide(&w("<1><0><1>"), &w("<0><1>"))
        .proof()
        .unwrap()
        .clone();
    for path in p.paths() {
        let mut bad = p.clone();
        let node = bad.node_at_mut(&path).unwrap();
        node.conclusion.succedent = node.conclusion.succedent.prefixed(&Ordinal::nat(7));
        let err = check_proof(&bad).unwrap_err();
        assert!(
            err.path == path || path.starts_with(&err.path),
            "{:?} vs {:?}",
            err.path,
            path
        );
        assert!(!bad.proves(&p.conclusion));
    }
}

fn worm_strategy() -> impl Strategy<Value = Worm> {
    prop::collection::vec(0u64..4, 0..6).prop_map(|v| Worm::from_nats(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decide_emits_checked_proofs(a in worm_strategy(), b in worm_strategy()) {
        if let Some(p) = decide(&a, &b).proof() {
            prop_assert!(p.proves(&Judgment::new(a.clone(), b.clone())));
        }
    }

    #[test]
    fn comparison_evidence_checks(a in worm_strategy(), b in worm_strategy(), alpha in 0u64..3) {
        let alpha = Ordinal::nat(alpha);
        let a = a.head_at(&alpha);
        let b = b.head_at(&alpha);
        let c = compare_worms(&alpha, &a, &b).unwrap();
        prop_assert!(c.is_witnessed(&alpha, &a, &b));
        prop_assert_eq!(compare_worms(&alpha, &b, &a).unwrap().verdict(), c.flip().verdict());
    }
}
