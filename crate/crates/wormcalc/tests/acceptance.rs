//! Acceptance suite. Prints one PASS/FAIL line per criterion, followed by
//! INFO lines, and exits nonzero when any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wormcalc::lemmas;
use wormcalc::selftest::rc_formulas;
use wormcalc_core::decide::{Bound, Saturation};
use wormcalc_core::ignatiev::axis_menu;
use wormcalc_core::rcnorm::{normalize, rc_entails};
use wormcalc_core::{
    check_proof, compare_worms, decide, Judgment, Ordinal, Proof, RcFormula, Rule, TruncatedModel,
    Verdict, Worm,
};

struct Suite {
    failed: Vec<usize>,
}

impl Suite {
    fn criterion(
        &mut self,
        n: usize,
        ok: bool,
        elapsed: Duration,
        limit: Option<Duration>,
        detail: String,
    ) {
        let in_time = limit.is_none_or(|l| elapsed <= l);
        let pass = ok && in_time;
        if !pass {
            self.failed.push(n);
        }
        let limit = limit.map_or(String::new(), |l| format!(" (limit {:.0?})", l));
        println!(
            "{} criterion {n}: {detail}; time {:.2?}{limit}",
            if pass { "PASS" } else { "FAIL" },
            elapsed
        );
    }
}

fn info(n: usize, detail: String) {
    println!("INFO criterion {n}: {detail}");
}

fn o(s: &str) -> Ordinal {
    s.parse().expect("ordinal literal")
}

fn alphabet() -> Vec<Ordinal> {
    (0..3).map(Ordinal::nat).collect()
}

/// Truncation of width 3 over the fixed menu `{0, 1, 2, ω, ω², ω^ω}`.
fn literal_truncation() -> TruncatedModel {
    let menu: Vec<Ordinal> = ["0", "1", "2", "w", "w^(2)", "w^(w)"]
        .iter()
        .map(|s| o(s))
        .collect();
    TruncatedModel::generate(3, &menu).expect("menu closed under end_log")
}

/// Truncation of width 3 whose menu holds every defining-point coordinate
/// of the worms of length at most `len`.
fn faithful_truncation(len: usize) -> TruncatedModel {
    let worms = Worm::enumerate(&alphabet(), len);
    TruncatedModel::generate(3, &axis_menu(worms.iter(), 3)).expect("closed menu")
}

fn bits(v: &[bool]) -> Vec<u64> {
    let mut out = vec![0u64; v.len().div_ceil(64)];
    for (i, b) in v.iter().enumerate() {
        if *b {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn sat_bits(model: &TruncatedModel, w: &Worm) -> Vec<u64> {
    bits(&model.satisfying(w).expect("modalities below the width"))
}

/// Random ordinal strictly between 0 and ε_0.
fn small_ordinal(rng: &mut ChaCha8Rng, depth: u32) -> Ordinal {
    let terms = rng.gen_range(1..4);
    let mut exps: Vec<Ordinal> = (0..terms)
        .map(|_| {
            if depth == 0 || rng.gen_bool(0.4) {
                Ordinal::nat(rng.gen_range(0..4))
            } else {
                small_ordinal(rng, depth - 1)
            }
        })
        .collect();
    exps.sort_by(|a, b| b.cmp(a));
    exps.iter()
        .fold(Ordinal::zero(), |acc, e| acc.add(&Ordinal::omega_power(e)))
}

fn criterion_1(s: &mut Suite) {
    let start = Instant::now();
    let w = Ordinal::omega();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let e0 = Ordinal::epsilon(0);
    let mut bad = 0;
    let fixed = [("e0", "1"), ("e1", "2"), ("w^(e0+1)", "0")];
    for (z, want) in fixed {
        bad += usize::from(Ordinal::hyper_log(&w, &o(z)) != o(want));
    }
    let mut sampled = 0;
    for _ in 0..50 {
        let a = small_ordinal(&mut rng, 3);
        assert!(!a.is_zero() && a < e0);
        bad += usize::from(!Ordinal::hyper_log(&w, &a).is_zero());
        bad += usize::from(!Ordinal::hyper_log(&w, &e0.add(&a)).is_zero());
        sampled += 2;
    }
    s.criterion(
        1,
        bad == 0,
        start.elapsed(),
        Some(Duration::from_secs(1)),
        format!(
            "{} fixed and {sampled} sampled hyper-logarithm values, {bad} mismatches",
            fixed.len()
        ),
    );
}

/// Returns the provability table over the enumeration for later criteria.
fn criterion_2(s: &mut Suite, worms: &[Worm]) -> Vec<bool> {
    let start = Instant::now();
    let n = worms.len();
    let sat = Saturation::new(&alphabet(), Bound::new(5)).expect("saturation fits");
    let literal = literal_truncation();
    let sats: Vec<Vec<u64>> = worms.iter().map(|w| sat_bits(&literal, w)).collect();
    let mut provable = vec![false; n * n];
    let (mut bad_proof, mut unconfirmed, mut oracle_extra, mut no_countermodel) = (0, 0, 0, 0);
    for (i, a) in worms.iter().enumerate() {
        for (j, b) in worms.iter().enumerate() {
            let derivable = sat.derivable(a, b);
            match decide(a, b).proof() {
                Some(p) => {
                    provable[i * n + j] = true;
                    bad_proof += usize::from(
                        check_proof(p).is_err()
                            || p.conclusion != Judgment::new(a.clone(), b.clone()),
                    );
                    unconfirmed += usize::from(!derivable);
                }
                None => {
                    oracle_extra += usize::from(derivable);
                    no_countermodel += usize::from(subset(&sats[i], &sats[j]));
                }
            }
        }
    }
    let count = provable.iter().filter(|p| **p).count();
    let disagreements = bad_proof + unconfirmed + oracle_extra + no_countermodel;
    s.criterion(
        2,
        disagreements == 0,
        start.elapsed(),
        Some(Duration::from_secs(300)),
        format!(
            "{} pairs, {count} provable; rejected proofs {bad_proof}, unconfirmed by saturation {unconfirmed}, \
             derivable but refuted {oracle_extra}, refutations without countermodel in the {}-point truncation \
             {no_countermodel}",
            n * n,
            literal.len()
        ),
    );

    let spurious = (0..n * n)
        .filter(|&k| provable[k] && !subset(&sats[k / n], &sats[k % n]))
        .count();
    info(
        2,
        format!("provable pairs with a countermodel in the fixed-menu truncation: {spurious}"),
    );
    let faithful = faithful_truncation(4);
    let fs: Vec<Vec<u64>> = worms.iter().map(|w| sat_bits(&faithful, w)).collect();
    let disagree = (0..n * n)
        .filter(|&k| provable[k] != subset(&fs[k / n], &fs[k % n]))
        .count();
    info(
        2,
        format!(
            "axis-menu truncation with {} points: {disagree} disagreements between decide and countermodels",
            faithful.len()
        ),
    );
    provable
}

fn criterion_3(s: &mut Suite, worms: &[Worm]) {
    let start = Instant::now();
    let (mut not_one, mut refl, mut intrans, mut unwitnessed, mut comparisons) = (0, 0, 0, 0, 0);
    for alpha in alphabet() {
        let in_w: Vec<&Worm> = worms.iter().filter(|w| w.in_worms_at(&alpha)).collect();
        let n = in_w.len();
        let mut lt = vec![false; n * n];
        for (i, a) in in_w.iter().enumerate() {
            for (j, b) in in_w.iter().enumerate() {
                comparisons += 1;
                let c = compare_worms(&alpha, a, b).expect("worms in W_alpha");
                unwitnessed += usize::from(!c.is_witnessed(&alpha, a, b));
                let below = decide(b, &a.prefixed(&alpha)).is_provable();
                let above = decide(a, &b.prefixed(&alpha)).is_provable();
                let same = decide(a, b).is_provable() && decide(b, a).is_provable();
                let holding = [below, same, above];
                let expected = match c.verdict() {
                    Verdict::Lt => [true, false, false],
                    Verdict::Eqv => [false, true, false],
                    Verdict::Gt => [false, false, true],
                };
                not_one += usize::from(holding != expected);
                lt[i * n + j] = below;
                if i == j && below {
                    refl += 1;
                }
            }
        }
        for i in 0..n {
            for j in (0..n).filter(|&j| lt[i * n + j]) {
                intrans += (0..n).filter(|&k| lt[j * n + k] && !lt[i * n + k]).count();
            }
        }
    }
    let bad = not_one + refl + intrans + unwitnessed;
    s.criterion(
        3,
        bad == 0,
        start.elapsed(),
        Some(Duration::from_secs(60)),
        format!(
            "{comparisons} comparisons; trichotomy violations {not_one}, unwitnessed verdicts {unwitnessed}, \
             reflexive instances {refl}, transitivity violations {intrans}"
        ),
    );
}

/// Counts worm pairs and indices where `A ⊢ αB` and its split into the
/// heads and the remainder disagree semantically in `model`.
fn split_failures(model: &TruncatedModel, worms: &[Worm]) -> (usize, usize) {
    let mut cache = std::collections::HashMap::new();
    let mut sat = |w: Worm| -> Vec<u64> {
        cache
            .entry(w.clone())
            .or_insert_with(|| sat_bits(model, &w))
            .clone()
    };
    let (mut checked, mut bad) = (0, 0);
    for alpha in alphabet() {
        for a in worms {
            let sa = sat(a.clone());
            let sha = sat(a.head_at(&alpha));
            for b in worms {
                checked += 1;
                let whole = subset(&sa, &sat(b.prefixed(&alpha)));
                let heads = subset(&sha, &sat(b.head_at(&alpha).prefixed(&alpha)));
                let rest = subset(&sa, &sat(b.remainder_at(&alpha)));
                bad += usize::from(whole != (heads && rest));
            }
        }
    }
    (checked, bad)
}

fn criterion_4(s: &mut Suite, worms: &[Worm]) {
    let start = Instant::now();
    let faithful = faithful_truncation(5);
    let (checked, bad) = split_failures(&faithful, worms);
    let mut syntactic = 0;
    for alpha in alphabet() {
        for a in worms {
            for b in worms {
                let whole = decide(a, &b.prefixed(&alpha)).is_provable();
                let split = decide(&a.head_at(&alpha), &b.head_at(&alpha).prefixed(&alpha))
                    .is_provable()
                    && decide(a, &b.remainder_at(&alpha)).is_provable();
                syntactic += usize::from(whole != split);
            }
        }
    }
    s.criterion(
        4,
        bad == 0 && syntactic == 0,
        start.elapsed(),
        None,
        format!(
            "{checked} instances; semantic counterexamples {bad} in the {}-point axis-menu truncation, \
             decide counterexamples {syntactic}",
            faithful.len()
        ),
    );
    let (_, literal_bad) = split_failures(&literal_truncation(), worms);
    info(
        4,
        format!("semantic counterexamples in the fixed-menu truncation: {literal_bad}"),
    );
}

fn criterion_5(s: &mut Suite) {
    let start = Instant::now();
    let formulas = rc_formulas(3);
    let mut mismatches = 0;
    let models = [literal_truncation(), faithful_truncation(4)];
    for m in &models {
        mismatches += formulas
            .iter()
            .filter(|phi| {
                m.satisfying_rc(phi).expect("in range")
                    != m.satisfying(&normalize(phi)).expect("in range")
            })
            .count();
    }

    let small = rc_formulas(2);
    let tiny = rc_formulas(1);
    let d = |a: &Ordinal, f: &RcFormula| RcFormula::diamond(a.clone(), f.clone());
    let and = |f: &RcFormula, g: &RcFormula| RcFormula::and(f.clone(), g.clone());
    let (mut instances, mut refuted) = (0usize, 0usize);
    let mut expect = |ok: bool| {
        instances += 1;
        refuted += usize::from(!ok);
    };
    for phi in &formulas {
        expect(rc_entails(phi, phi));
        expect(rc_entails(phi, &RcFormula::Top));
    }
    for phi in &small {
        for alpha in alphabet() {
            expect(rc_entails(&d(&alpha, &d(&alpha, phi)), &d(&alpha, phi)));
            for beta in alphabet().into_iter().filter(|b| *b < alpha) {
                expect(rc_entails(&d(&alpha, phi), &d(&beta, phi)));
            }
        }
        for psi in &small {
            expect(rc_entails(&and(phi, psi), phi));
            expect(rc_entails(&and(phi, psi), psi));
            for alpha in alphabet() {
                for beta in alphabet().into_iter().filter(|b| *b < alpha) {
                    let lhs = and(&d(&alpha, phi), &d(&beta, psi));
                    expect(rc_entails(&lhs, &d(&alpha, &and(phi, &d(&beta, psi)))));
                }
            }
        }
    }
    let normal: Vec<Worm> = small.iter().map(normalize).collect();
    let entails = |i: usize, j: usize| decide(&normal[i], &normal[j]).is_provable();
    for i in 0..small.len() {
        for j in 0..small.len() {
            let ij = entails(i, j);
            if ij {
                for alpha in alphabet() {
                    expect(rc_entails(&d(&alpha, &small[i]), &d(&alpha, &small[j])));
                }
            }
            for t in &tiny {
                let kk = small
                    .iter()
                    .position(|f| f == t)
                    .expect("depth one formulas recur");
                if ij && entails(j, kk) {
                    expect(rc_entails(&small[i], t));
                }
                if ij && entails(i, kk) {
                    expect(rc_entails(&small[i], &and(&small[j], t)));
                }
            }
        }
    }
    s.criterion(
        5,
        mismatches == 0 && refuted == 0,
        start.elapsed(),
        Some(Duration::from_secs(120)),
        format!(
            "{} formulas on truncations of {} and {} points, {mismatches} forcing mismatches; \
             {instances} axiom and rule instances, {refuted} refuted",
            formulas.len(),
            models[0].len(),
            models[1].len()
        ),
    );
}

fn lemma_line(c: &lemmas::LemmaCounts, theory: (usize, usize)) -> String {
    format!(
        "monotonicity {}, defining-point characterization {}, splice {}, euclidean {}, absorption {}, \
         conjunction {}, theory correspondence {} over {} axis points",
        c.monotonicity, c.defining, c.splice, c.euclidean, c.absorption, c.conjunction, theory.1, theory.0
    )
}

fn criterion_6(s: &mut Suite, worms: &[Worm]) {
    let start = Instant::now();
    let literal = literal_truncation();
    let faithful = faithful_truncation(4);
    let theory_menu = Worm::enumerate(&alphabet(), 3);
    let mut c = lemmas::check_all(&literal, worms, worms);
    let admissible = std::mem::take(&mut c.admissible);
    let theory = lemmas::theory_correspondence(&literal, &faithful, worms, &theory_menu);
    let generated = [
        TruncatedModel::generate(1, &[o("0"), o("1"), o("2")]).expect("closed"),
        TruncatedModel::generate(2, &[o("0"), o("1"), o("w"), o("w+1")]).expect("closed"),
        faithful.clone(),
    ];
    let non_euclidean = generated.iter().filter(|m| !m.check_euclidean()).count();
    let bad = c.total() + theory.1 + non_euclidean;
    s.criterion(
        6,
        bad == 0,
        start.elapsed(),
        Some(Duration::from_secs(120)),
        format!(
            "{}-point fixed-menu truncation: {}; further generated truncations not euclidean {non_euclidean}",
            literal.len(),
            lemma_line(&c, theory)
        ),
    );
    info(
        6,
        format!("admissible rule violations in the fixed-menu truncation: {admissible}"),
    );
    let short = Worm::enumerate(&alphabet(), 3);
    let fc = lemmas::check_all(&faithful, worms, &short);
    let ft = lemmas::theory_correspondence(&faithful, &faithful_truncation(5), worms, &theory_menu);
    info(
        6,
        format!(
            "{}-point axis-menu truncation: {}, admissible rule {}",
            faithful.len(),
            lemma_line(&fc, ft),
            fc.admissible
        ),
    );
}

/// Replaces one node of `p` by a corrupted copy.
fn mutate(p: &Proof, rng: &mut ChaCha8Rng) -> Proof {
    let paths = p.paths();
    loop {
        let mut m = p.clone();
        let path = paths.choose(rng).expect("nonempty");
        let node = m.node_at_mut(path).expect("path exists");
        let bump = |x: &Ordinal, rng: &mut ChaCha8Rng| -> Ordinal {
            let k = x.as_nat().unwrap_or(0);
            Ordinal::nat(if k > 0 && rng.gen_bool(0.5) {
                k - 1
            } else {
                k + 1
            })
        };
        let edit = |w: &Worm, rng: &mut ChaCha8Rng| -> Worm {
            let mut ms = w.modalities().to_vec();
            match rng.gen_range(0..3) {
                0 if !ms.is_empty() => {
                    let i = rng.gen_range(0..ms.len());
                    ms[i] = bump(&ms[i], rng);
                }
                1 if !ms.is_empty() => {
                    ms.remove(rng.gen_range(0..ms.len()));
                }
                _ => {
                    let i = rng.gen_range(0..=ms.len());
                    ms.insert(i, Ordinal::nat(rng.gen_range(0..4)));
                }
            }
            Worm::new(ms)
        };
        match rng.gen_range(0..5) {
            0 => node.conclusion.antecedent = edit(&node.conclusion.antecedent, rng),
            1 => node.conclusion.succedent = edit(&node.conclusion.succedent, rng),
            2 => match &mut node.rule {
                Rule::Ax1 => continue,
                Rule::AxTransitivity { alpha } | Rule::Necessitation { alpha } => {
                    *alpha = bump(alpha, rng)
                }
                Rule::AxMonotonicity { alpha, beta } => {
                    if rng.gen_bool(0.5) {
                        *alpha = bump(alpha, rng)
                    } else {
                        *beta = bump(beta, rng)
                    }
                }
                Rule::Cut { middle } => *middle = edit(middle, rng),
                Rule::R3 { alpha, split } => {
                    if rng.gen_bool(0.5) {
                        *alpha = bump(alpha, rng)
                    } else {
                        *split = if *split > 0 && rng.gen_bool(0.5) {
                            *split - 1
                        } else {
                            *split + 1
                        }
                    }
                }
            },
            3 => {
                let a = Ordinal::nat(rng.gen_range(0..3));
                node.rule = match rng.gen_range(0..6) {
                    0 => Rule::Ax1,
                    1 => Rule::AxTransitivity { alpha: a },
                    2 => Rule::AxMonotonicity {
                        alpha: a.succ(),
                        beta: a,
                    },
                    3 => Rule::Cut {
                        middle: node.conclusion.succedent.clone(),
                    },
                    4 => Rule::Necessitation { alpha: a },
                    _ => Rule::R3 { alpha: a, split: 0 },
                };
            }
            _ => {
                if node.premises.is_empty() || rng.gen_bool(0.3) {
                    let extra = node.premises.first().cloned().unwrap_or_else(|| Proof {
                        conclusion: node.conclusion.clone(),
                        rule: Rule::Ax1,
                        premises: vec![],
                    });
                    node.premises.push(extra);
                } else if node.premises.len() == 2 && rng.gen_bool(0.5) {
                    node.premises.swap(0, 1);
                } else {
                    let i = rng.gen_range(0..node.premises.len());
                    node.premises.remove(i);
                }
            }
        }
        if m != *p {
            return m;
        }
    }
}

fn criterion_7(s: &mut Suite, worms: &[Worm]) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut proofs = Vec::new();
    while proofs.len() < 200 {
        let a = worms.choose(&mut rng).expect("nonempty");
        let b = worms.choose(&mut rng).expect("nonempty");
        if let Some(p) = decide(a, b).proof() {
            proofs.push(p.clone());
        }
    }
    let mut accepted = Vec::new();
    let (mut same_claim, mut true_claim) = (0, 0);
    for k in 0..1000 {
        let p = &proofs[k % proofs.len()];
        let m = mutate(p, &mut rng);
        if check_proof(&m).is_ok() {
            same_claim += usize::from(m.conclusion == p.conclusion);
            true_claim += usize::from(decide(m.antecedent(), m.succedent()).is_provable());
            accepted.push(m.conclusion.to_string());
        }
    }
    s.criterion(
        7,
        accepted.is_empty(),
        start.elapsed(),
        None,
        format!(
            "1000 single-node mutations of {} proofs, {} accepted",
            proofs.len(),
            accepted.len()
        ),
    );
    if !accepted.is_empty() {
        accepted.sort();
        accepted.dedup();
        info(
            7,
            format!(
                "accepted mutants are well-formed proofs; {true_claim} of {} conclude decide-provable judgments, \
                 {same_claim} keep the original conclusion: {}",
                accepted.len(),
                accepted.join("; ")
            ),
        );
    }
}

fn criterion_8(s: &mut Suite) {
    let start = Instant::now();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_wormcalc"))
            .arg("selftest")
            .output()
            .expect("binary runs")
    };
    let (first, second) = (run(), run());
    let same = first.stdout == second.stdout && !first.stdout.is_empty();
    s.criterion(
        8,
        same && first.status.success(),
        start.elapsed(),
        None,
        format!(
            "two selftest runs, {} report bytes, identical {same}, exit {:?}",
            first.stdout.len(),
            first.status.code()
        ),
    );
}

fn main() -> ExitCode {
    let worms = Worm::enumerate(&alphabet(), 4);
    let mut s = Suite { failed: Vec::new() };
    criterion_1(&mut s);
    criterion_2(&mut s, &worms);
    criterion_3(&mut s, &worms);
    criterion_4(&mut s, &worms);
    criterion_5(&mut s);
    criterion_6(&mut s, &worms);
    criterion_7(&mut s, &worms);
    criterion_8(&mut s);
    if s.failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {:?}", s.failed);
        ExitCode::FAILURE
    }
}
