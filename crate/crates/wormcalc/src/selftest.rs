//! Exhaustive desk-scale consistency suites with a byte-stable report.

use std::fmt::Write;

use wormcalc_core::decide::{Bound, Saturation};
use wormcalc_core::ignatiev::axis_menu;
use wormcalc_core::rcnorm::normalize;
use wormcalc_core::{
    check_proof, compare_worms, decide, Ordinal, RcFormula, TruncatedModel, Verdict, Worm,
};

/// Width of the truncations and size of the modality alphabet.
const WIDTH: usize = 3;

struct Report {
    text: String,
    failures: usize,
}

impl Report {
    fn line(&mut self, name: &str, body: String, failures: usize) {
        self.failures += failures;
        let status = if failures == 0 { "ok" } else { "FAIL" };
        writeln!(self.text, "{name}: {body}, failures={failures} [{status}]").unwrap();
    }
}

fn alphabet() -> Vec<Ordinal> {
    (0..WIDTH as u64).map(Ordinal::nat).collect()
}

/// Closed formulas over the alphabet of nesting depth at most `depth`.
pub fn rc_formulas(depth: usize) -> Vec<RcFormula> {
    if depth == 0 {
        return vec![RcFormula::Top];
    }
    let prev = rc_formulas(depth - 1);
    let mut out = vec![RcFormula::Top];
    for m in alphabet() {
        out.extend(
            prev.iter()
                .map(|p| RcFormula::diamond(m.clone(), p.clone())),
        );
    }
    for p in &prev {
        out.extend(prev.iter().map(|q| RcFormula::and(p.clone(), q.clone())));
    }
    out
}

/// Runs every suite over worms of length at most `max_len`. Returns the
/// report and whether all suites passed.
pub fn run(max_len: usize) -> (String, bool) {
    let mut r = Report {
        text: String::new(),
        failures: 0,
    };
    writeln!(
        r.text,
        "wormcalc selftest: alphabet={{0,1,2}} max-len={max_len}"
    )
    .unwrap();
    let worms = Worm::enumerate(&alphabet(), max_len);

    let o = |s: &str| s.parse::<Ordinal>().expect("literal");
    let samples = [
        ("w", "e0", "1"),
        ("w", "e1", "2"),
        ("w", "w^(e0+1)", "0"),
        ("w", "w^(w)+3", "0"),
        ("0", "w^(2)", "w^(2)"),
        ("1", "w^(2)", "2"),
        ("2", "w^(w^(2))", "2"),
    ];
    let bad = samples
        .iter()
        .filter(|(xi, zeta, want)| Ordinal::hyper_log(&o(xi), &o(zeta)) != o(want))
        .count();
    r.line("hyperlog", format!("values={}", samples.len()), bad);

    let mut provable = vec![false; worms.len() * worms.len()];
    let mut proof_failures = 0;
    for (i, a) in worms.iter().enumerate() {
        for (j, b) in worms.iter().enumerate() {
            if let Some(p) = decide(a, b).proof() {
                provable[i * worms.len() + j] = true;
                if check_proof(p).is_err() || p.antecedent() != a || p.succedent() != b {
                    proof_failures += 1;
                }
            }
        }
    }
    let count = provable.iter().filter(|p| **p).count();
    r.line(
        "decide",
        format!("pairs={} provable={count}", provable.len()),
        proof_failures,
    );

    let bound = max_len + 1;
    let sat = Saturation::new(
        &alphabet(),
        Bound {
            max_len: bound,
            max_judgments: 64_000_000,
        },
    );
    match sat {
        Ok(sat) => {
            let mut disagree = 0;
            for (i, a) in worms.iter().enumerate() {
                for (j, b) in worms.iter().enumerate() {
                    if sat.derivable(a, b) != provable[i * worms.len() + j] {
                        disagree += 1;
                    }
                }
            }
            r.line(
                "oracle",
                format!("saturation-bound={bound} facts={}", sat.fact_count()),
                disagree,
            );
        }
        Err(e) => r.line("oracle", format!("saturation unavailable: {e}"), 1),
    }

    let model =
        TruncatedModel::generate(WIDTH, &axis_menu(worms.iter(), WIDTH)).expect("closed menu");
    let sats: Vec<Vec<bool>> = worms
        .iter()
        .map(|w| model.satisfying(w).expect("modalities below width"))
        .collect();
    let mut disagree = 0;
    for i in 0..worms.len() {
        for j in 0..worms.len() {
            let countermodel = (0..model.len()).any(|x| sats[i][x] && !sats[j][x]);
            if countermodel == provable[i * worms.len() + j] {
                disagree += 1;
            }
        }
    }
    r.line("semantics", format!("points={}", model.len()), disagree);

    let mut violations = 0;
    let mut checked = 0;
    for alpha in alphabet() {
        let in_w: Vec<&Worm> = worms.iter().filter(|w| w.in_worms_at(&alpha)).collect();
        for a in &in_w {
            for b in &in_w {
                checked += 1;
                let c = compare_worms(&alpha, a, b).expect("worms in W_alpha");
                let lt = decide(b, &a.prefixed(&alpha)).is_provable();
                let gt = decide(a, &b.prefixed(&alpha)).is_provable();
                let eqv = decide(a, b).is_provable() && decide(b, a).is_provable();
                let expected = [lt, eqv, gt];
                let got = match c.verdict() {
                    Verdict::Lt => [true, false, false],
                    Verdict::Eqv => [false, true, false],
                    Verdict::Gt => [false, false, true],
                };
                if expected != got || !c.is_witnessed(&alpha, a, b) {
                    violations += 1;
                }
            }
        }
    }
    r.line("trichotomy", format!("comparisons={checked}"), violations);

    let formulas = rc_formulas(max_len.min(2));
    let mismatches = formulas
        .iter()
        .filter(|phi| model.satisfying_rc(phi).ok() != model.satisfying(&normalize(phi)).ok())
        .count();
    r.line(
        "normalize",
        format!("formulas={}", formulas.len()),
        mismatches,
    );

    let mut cone = 0;
    for (i, w) in worms.iter().enumerate() {
        let defining = model.defining_set(w).expect("width at least one");
        for x in (0..model.len()).filter(|&x| defining[x]) {
            cone += (0..model.len())
                .filter(|&y| sats[i][y] != model.point(y).pointwise_geq(model.point(x)))
                .count();
        }
    }
    let euclid = usize::from(!model.check_euclidean());
    r.line("model", format!("euclidean={}", euclid == 0), cone + euclid);

    let pass = r.failures == 0;
    writeln!(r.text, "result: {}", if pass { "PASS" } else { "FAIL" }).unwrap();
    (r.text, pass)
}
