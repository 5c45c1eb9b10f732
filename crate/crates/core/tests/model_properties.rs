use std::sync::OnceLock;

use proptest::prelude::*;
use wormcalc_core::ignatiev::{axis_menu, defining_point, LSequence};
use wormcalc_core::*;

fn nats(k: u64) -> Vec<Ordinal> {
    (0..k).map(Ordinal::nat).collect()
}

fn worms(len: usize) -> Vec<Worm> {
    Worm::enumerate(&nats(3), len)
}

fn axis_model(len: usize) -> &'static TruncatedModel {
    static M: [OnceLock<TruncatedModel>; 6] = [const { OnceLock::new() }; 6];
    M[len].get_or_init(|| TruncatedModel::generate(3, &axis_menu(worms(len).iter(), 3)).unwrap())
}

fn countermodel(m: &TruncatedModel, a: &Worm, b: &Worm) -> bool {
    let (sa, sb) = (m.satisfying(a).unwrap(), m.satisfying(b).unwrap());
    sa.iter().zip(&sb).any(|(x, y)| *x && !*y)
}

#[test]
fn enlarging_the_truncation_never_refutes_a_provable_judgment() {
    let narrow = TruncatedModel::generate(2, &axis_menu(worms(3).iter(), 2)).unwrap();
    let models = [&narrow, axis_model(3), axis_model(4), axis_model(5)];
    let ws = worms(3);
    for a in &ws {
        for b in &ws {
            let provable = decide(a, b).is_provable();
            for m in &models {
                let in_range = [a, b].iter().all(|w| {
                    w.max_modality()
                        .is_none_or(|x| x.as_nat().is_some_and(|k| (k as usize) < m.width()))
                });
                if provable && in_range {
                    assert!(
                        !countermodel(m, a, b),
                        "{a} |- {b} refuted at {} points",
                        m.len()
                    );
                }
            }
            if !provable {
                assert!(
                    countermodel(axis_model(3), a, b),
                    "{a} |- {b} lacks a countermodel"
                );
            }
        }
    }
}

#[test]
fn defined_points_are_least_and_match_the_closed_form() {
    let m = axis_model(4);
    for a in worms(4) {
        let x = m.main_axis_point(&a).unwrap_or_else(|e| panic!("{a}: {e}"));
        assert_eq!(Some(m.point(x)), defining_point(&a).as_ref(), "{a}");
        let sat = m.satisfying(&a).unwrap();
        for (y, s) in sat.iter().enumerate() {
            assert_eq!(
                *s,
                m.point(y).pointwise_geq(m.point(x)),
                "{a} at {}",
                m.point(y)
            );
        }
    }
}

#[test]
fn defining_point_forcing_suffices_for_consequence() {
    let m = axis_model(3);
    let ws = worms(3);
    for a in &ws {
        let x = m.main_axis_point(a).unwrap();
        for b in &ws {
            if m.forces(x, b).unwrap() {
                assert!(!countermodel(m, a, b), "{a} at its point forces {b}");
                assert!(decide(a, b).is_provable());
            }
        }
    }
}

#[test]
fn theories_grow_along_dominance() {
    let m = axis_model(3);
    let menu = worms(3);
    let theories: Vec<Vec<Worm>> = (0..m.len()).map(|x| m.theory(x, &menu).unwrap()).collect();
    for x in 0..m.len() {
        for y in 0..m.len() {
            if m.point(y).pointwise_geq(m.point(x)) {
                assert!(theories[x].iter().all(|w| theories[y].contains(w)));
            }
        }
    }
    assert_eq!(theories[0], vec![Worm::top()]);
}

#[test]
fn splices_stay_in_the_model_and_keep_forcing() {
    let m = axis_model(3);
    let ws = worms(3);
    let sats: Vec<Vec<bool>> = ws.iter().map(|w| m.satisfying(w).unwrap()).collect();
    for alpha in 0..3 {
        let a = Ordinal::nat(alpha as u64);
        for f in 0..m.len() {
            for g in 0..m.len() {
                if m.coords(f)[alpha] <= m.coords(g)[alpha] {
                    continue;
                }
                let Ok(h) = LSequence::splice(&a, m.point(f), m.point(g)) else {
                    continue;
                };
                let h = m.find(&h).expect("valid splice over the menu is a point");
                for s in &sats {
                    assert!(!(s[f] && s[g]) || s[h]);
                }
            }
        }
    }
}

#[test]
fn generated_truncations_are_euclidean() {
    for len in 1..=4 {
        assert!(axis_model(len).check_euclidean());
    }
}

fn worm_strategy() -> impl Strategy<Value = Worm> {
    prop::collection::vec(0u64..3, 0..6).prop_map(|v| Worm::from_nats(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn axis_command_model_finds_the_closed_form(a in worm_strategy()) {
        let m = TruncatedModel::generate(3, &axis_menu([&a], 3)).unwrap();
        let x = m.main_axis_point(&a).unwrap();
        prop_assert_eq!(Some(m.point(x).clone()), defining_point(&a));
    }

    #[test]
    fn defining_points_respect_provability(a in worm_strategy(), b in worm_strategy()) {
        let m = axis_model(5);
        if a.len() <= 5 && b.len() <= 5 {
            let x = m.main_axis_point(&a).unwrap();
            prop_assert_eq!(m.forces(x, &b).unwrap(), decide(&a, &b).is_provable());
        }
    }
}
