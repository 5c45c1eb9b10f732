//! Exhaustive checks of the structural properties of truncated models.
//!
//! Each check returns a violation count over the points of a model and a
//! finite family of worms.

use wormcalc_core::ignatiev::{LSequence, PointId};
use wormcalc_core::rcnorm::worm_conj;
use wormcalc_core::{Ordinal, TruncatedModel, Worm};

/// Violation counts of the lemma suite on one model.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaCounts {
    pub monotonicity: usize,
    pub defining: usize,
    pub splice: usize,
    pub euclidean: usize,
    pub absorption: usize,
    pub conjunction: usize,
    pub admissible: usize,
}

impl LemmaCounts {
    pub fn total(&self) -> usize {
        self.monotonicity
            + self.defining
            + self.splice
            + self.euclidean
            + self.absorption
            + self.conjunction
            + self.admissible
    }
}

fn sats(model: &TruncatedModel, worms: &[Worm]) -> Vec<Vec<bool>> {
    worms
        .iter()
        .map(|w| model.satisfying(w).expect("modalities below the width"))
        .collect()
}

/// Pairs `(y, x)` with `y ⪰ x`.
fn dominance(model: &TruncatedModel) -> Vec<Vec<bool>> {
    let pts = model.points();
    pts.iter()
        .map(|y| pts.iter().map(|x| y.pointwise_geq(x)).collect())
        .collect()
}

/// Points forcing `A` that have a `⪰`-smaller point failing it.
pub fn monotonicity(model: &TruncatedModel, worms: &[Worm]) -> usize {
    let geq = dominance(model);
    let n = model.len();
    sats(model, worms)
        .iter()
        .map(|s| {
            (0..n)
                .filter(|&x| s[x])
                .map(|x| (0..n).filter(|&y| geq[y][x] && !s[y]).count())
                .sum::<usize>()
        })
        .sum()
}

/// Points where `A ∧ [0]¬A` holds yet the forcing set of `A` differs from
/// their upward cone.
pub fn defining_characterization(model: &TruncatedModel, worms: &[Worm]) -> usize {
    let geq = dominance(model);
    let n = model.len();
    let mut bad = 0;
    for w in worms {
        let s = model.satisfying(w).expect("modalities below the width");
        let d = model.defining_set(w).expect("width at least one");
        for x in (0..n).filter(|&x| d[x]) {
            if (0..n).any(|y| s[y] != geq[y][x]) {
                bad += 1;
            }
        }
    }
    bad
}

/// Valid splices `α(f, g)` with `f_α > g_α` that fail a worm forced at both
/// `f` and `g`, or that fall outside the model.
pub fn splice(model: &TruncatedModel, worms: &[Worm]) -> usize {
    let s = sats(model, worms);
    let n = model.len();
    let mut bad = 0;
    for alpha in 0..model.width() {
        let a = Ordinal::nat(alpha as u64);
        for f in 0..n {
            for g in 0..n {
                if model.coords(f)[alpha] <= model.coords(g)[alpha] {
                    continue;
                }
                let Ok(h) = LSequence::splice(&a, model.point(f), model.point(g)) else {
                    continue;
                };
                match model.find(&h) {
                    Some(h) => bad += s.iter().filter(|s| s[f] && s[g] && !s[h]).count(),
                    None => bad += 1,
                }
            }
        }
    }
    bad
}

/// Triples `(A, α, B)` with `A ∈ W_{α+1}` and a point forcing `A` and `⟨α⟩B`
/// but not `AαB`.
pub fn absorption(model: &TruncatedModel, worms: &[Worm]) -> usize {
    let s = sats(model, worms);
    let n = model.len();
    let mut bad = 0;
    for alpha in 0..model.width() {
        let a = Ordinal::nat(alpha as u64);
        let big = a.succ();
        for (i, wa) in worms
            .iter()
            .enumerate()
            .filter(|(_, w)| w.in_worms_at(&big))
        {
            for wb in worms {
                let diamond = model.satisfying(&wb.prefixed(&a)).expect("in range");
                let joined = model
                    .satisfying(&wa.concat(&wb.prefixed(&a)))
                    .expect("in range");
                bad += (0..n)
                    .filter(|&x| s[i][x] && diamond[x] && !joined[x])
                    .count();
            }
        }
    }
    bad
}

/// Points where `A ∧ B` and the conjunction worm disagree.
pub fn conjunction(model: &TruncatedModel, worms: &[Worm]) -> usize {
    let s = sats(model, worms);
    let n = model.len();
    let mut bad = 0;
    for (i, a) in worms.iter().enumerate() {
        for (j, b) in worms.iter().enumerate() {
            let c = model.satisfying(&worm_conj(a, b)).expect("in range");
            bad += (0..n).filter(|&x| c[x] != (s[i][x] && s[j][x])).count();
        }
    }
    bad
}

/// Pairs `(A, B)` where every defining point of `A` forces `B` but some
/// point forcing `A` does not.
pub fn admissible_rule(model: &TruncatedModel, worms: &[Worm]) -> usize {
    let s = sats(model, worms);
    let n = model.len();
    let mut bad = 0;
    for (i, a) in worms.iter().enumerate() {
        let d = model.defining_set(a).expect("width at least one");
        if !d.iter().any(|x| *x) {
            continue;
        }
        for sb in &s {
            let premise = (0..n).all(|x| !d[x] || sb[x]);
            if premise && (0..n).any(|x| s[i][x] && !sb[x]) {
                bad += 1;
            }
        }
    }
    bad
}

/// Runs every check above.
pub fn check_all(model: &TruncatedModel, worms: &[Worm], pair_worms: &[Worm]) -> LemmaCounts {
    LemmaCounts {
        monotonicity: monotonicity(model, worms),
        defining: defining_characterization(model, worms),
        splice: splice(model, worms),
        euclidean: usize::from(!model.check_euclidean()),
        absorption: absorption(model, pair_worms),
        conjunction: conjunction(model, pair_worms),
        admissible: admissible_rule(model, worms),
    }
}

/// Points whose coordinates satisfy `c_ζ = ℓ^{ζ-ξ}(c_ξ)` for all `ξ < ζ`.
pub fn main_axis(model: &TruncatedModel) -> Vec<PointId> {
    (0..model.len())
        .filter(|&x| {
            let c = model.coords(x);
            (0..c.len()).all(|xi| {
                (xi + 1..c.len())
                    .all(|z| c[z] == Ordinal::hyper_log(&Ordinal::nat((z - xi) as u64), &c[xi]))
            })
        })
        .collect()
}

/// Theory correspondence on the disjoint union of `model` with `extra`.
///
/// For each main-axis point `x` of `model`, a worm `A` from `worms` whose
/// defining set in `model` is exactly `{x}` is chosen. Every point `y` of the
/// union forcing `A ∧ [0]¬A` must have the same theory as `x` over `menu`.
/// Returns the number of axis points checked and the number of violations;
/// an axis point without a defining worm counts as a violation.
pub fn theory_correspondence(
    model: &TruncatedModel,
    extra: &TruncatedModel,
    worms: &[Worm],
    menu: &[Worm],
) -> (usize, usize) {
    let union =
        TruncatedModel::disjoint_union(&[model.clone(), extra.clone()]).expect("equal widths");
    let defining: Vec<Vec<bool>> = worms
        .iter()
        .map(|w| model.defining_set(w).expect("width at least one"))
        .collect();
    let axis = main_axis(model);
    let mut bad = 0;
    for &x in &axis {
        let Some(i) = defining
            .iter()
            .position(|d| d[x] && d.iter().filter(|b| **b).count() == 1)
        else {
            bad += 1;
            continue;
        };
        let want = model.theory(x, menu).expect("in range");
        let d = union.defining_set(&worms[i]).expect("width at least one");
        bad += (0..union.len())
            .filter(|&y| d[y] && union.theory(y, menu).expect("in range") != want)
            .count();
    }
    (axis.len(), bad)
}
