//! ℓ-sequences, Ignatiev's relations and finite truncations of the model.
//!
//! A truncation of width `N` consists of ℓ-sequences supported on the
//! indices `0..N` with values drawn from a menu of ordinals. Worms with
//! modalities below `N` are evaluated by plain enumeration.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write;

use crate::ordinal::Ordinal;
use crate::rcnorm::RcFormula;
use crate::worm::Worm;

/// Index of a point inside a [`TruncatedModel`].
pub type PointId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelError {
    /// The menu contains an ordinal whose end-logarithm is missing.
    MenuNotClosed(Ordinal),
    /// A modality is not a natural number below the truncation width.
    IndexOutOfRange { modality: Ordinal, width: usize },
    /// The spliced sequence is not an ℓ-sequence.
    InvalidSplice,
    /// No point of the truncation satisfies the defining pattern.
    NotFound,
    /// Several points satisfy the defining pattern.
    NotUnique(usize),
    /// The defining point fails one of the main-axis checks.
    AxisCheckFailed(&'static str),
    /// A relation mentions a point that does not exist.
    UnknownPoint(PointId),
    /// Models of different widths cannot be combined.
    WidthMismatch,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::MenuNotClosed(o) => {
                write!(f, "menu is not closed under end_log: missing end_log({o})")
            }
            ModelError::IndexOutOfRange { modality, width } => {
                write!(
                    f,
                    "modality {modality} is out of range for a truncation of width {width}"
                )
            }
            ModelError::InvalidSplice => f.write_str("splice does not yield an l-sequence"),
            ModelError::NotFound => f.write_str("no defining point in this truncation"),
            ModelError::NotUnique(n) => {
                write!(f, "{n} candidate defining points; enlarge the menu")
            }
            ModelError::AxisCheckFailed(what) => write!(f, "main-axis check failed: {what}"),
            ModelError::UnknownPoint(p) => write!(f, "unknown point {p}"),
            ModelError::WidthMismatch => f.write_str("models have different widths"),
        }
    }
}

impl core::error::Error for ModelError {}

/// An ordinal sequence with finite support; indices off the support are 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LSequence {
    values: BTreeMap<Ordinal, Ordinal>,
}

impl LSequence {
    pub fn zero() -> LSequence {
        LSequence::default()
    }

    /// The sequence with `coords[i]` at index `i`.
    pub fn from_coords(coords: &[Ordinal]) -> LSequence {
        LSequence::from_pairs(
            coords
                .iter()
                .enumerate()
                .map(|(i, v)| (Ordinal::nat(i as u64), v.clone())),
        )
    }

    /// Later pairs override earlier ones; zero values are dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Ordinal, Ordinal)>) -> LSequence {
        let mut values = BTreeMap::new();
        for (i, v) in pairs {
            if v.is_zero() {
                values.remove(&i);
            } else {
                values.insert(i, v);
            }
        }
        LSequence { values }
    }

    pub fn get(&self, index: &Ordinal) -> Ordinal {
        self.values.get(index).cloned().unwrap_or_default()
    }

    pub fn get_nat(&self, index: usize) -> Ordinal {
        self.get(&Ordinal::nat(index as u64))
    }

    /// Support indices with their values, in increasing index order.
    pub fn support(&self) -> impl Iterator<Item = (&Ordinal, &Ordinal)> {
        self.values.iter()
    }

    /// The first `width` coordinates.
    pub fn coords(&self, width: usize) -> Vec<Ordinal> {
        (0..width).map(|i| self.get_nat(i)).collect()
    }

    /// Validity as an ℓ-sequence.
    ///
    /// A successor index must not exceed the end-logarithm of its
    /// predecessor. A limit index is measured against the largest support
    /// index below it through the matching hyper-logarithm.
    pub fn is_valid(&self) -> bool {
        self.values.iter().all(|(zeta, value)| {
            if zeta.is_zero() {
                return true;
            }
            if let Some(prev) = zeta.pred() {
                return *value <= self.get(&prev).end_log();
            }
            match self.values.range(..zeta.clone()).next_back() {
                None => false,
                Some((xi, base)) => {
                    let gap = xi.left_subtract(zeta).expect("xi < zeta");
                    *value <= Ordinal::hyper_log(&gap, base)
                }
            }
        })
    }

    /// `self R_xi other`.
    pub fn related(&self, xi: &Ordinal, other: &LSequence) -> bool {
        if self.get(xi) <= other.get(xi) {
            return false;
        }
        let below = |s: &LSequence| {
            s.values
                .range(..xi.clone())
                .map(|(i, _)| i.clone())
                .collect::<Vec<_>>()
        };
        let mut indices = below(self);
        indices.extend(below(other));
        indices.iter().all(|i| self.get(i) == other.get(i))
    }

    /// `self ⪰ other`: at least as large at every index.
    pub fn pointwise_geq(&self, other: &LSequence) -> bool {
        other.values.iter().all(|(i, v)| self.get(i) >= *v)
    }

    /// Agrees with `f` below `alpha` and with `g` from `alpha` on.
    pub fn splice(alpha: &Ordinal, f: &LSequence, g: &LSequence) -> Result<LSequence, ModelError> {
        let low = f.values.range(..alpha.clone());
        let high = g.values.range(alpha.clone()..);
        let out = LSequence {
            values: low
                .chain(high)
                .map(|(i, v)| (i.clone(), v.clone()))
                .collect(),
        };
        if out.is_valid() {
            Ok(out)
        } else {
            Err(ModelError::InvalidSplice)
        }
    }

    /// The first `width` coordinates as `(v0, v1, ...)`.
    pub fn display_width(&self, width: usize) -> String {
        let mut s = String::from("(");
        for (i, v) in self.coords(width.max(1)).iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            let _ = write!(s, "{v}");
        }
        s.push(')');
        s
    }
}

impl fmt::Display for LSequence {
    /// Tuple form when every support index is finite, index map otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let finite: Option<Vec<u64>> = self.values.keys().map(Ordinal::as_nat).collect();
        match finite {
            Some(idx) => {
                let width = idx.last().map_or(1, |&m| m as usize + 1);
                f.write_str(&self.display_width(width))
            }
            None => {
                f.write_str("{")?;
                for (k, (i, v)) in self.values.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{i}: {v}")?;
                }
                f.write_str("}")
            }
        }
    }
}

/// The least point forcing `a` in the full model, computed directly.
///
/// Returns `None` when a modality is not a natural number.
pub fn defining_point(a: &Worm) -> Option<LSequence> {
    let mods: Vec<usize> = a
        .modalities()
        .iter()
        .map(|m| m.as_nat().map(|n| n as usize))
        .collect::<Option<_>>()?;
    let width = mods.iter().max().map_or(0, |m| m + 1);
    let mut c = vec![Ordinal::zero(); width];
    for &xi in mods.iter().rev() {
        let mut x = vec![Ordinal::zero(); width];
        x[xi] = c[xi].succ();
        for i in (0..xi).rev() {
            let need = &x[i + 1];
            x[i] = if c[i].end_log() >= *need {
                c[i].clone()
            } else {
                c[i].add(&Ordinal::omega_power(need))
            };
        }
        c = x;
    }
    Some(LSequence::from_coords(&c))
}

/// A menu making forcing in the truncation of width `width` agree with
/// the full model for every worm in `worms` and its suffixes, and holding
/// the defining point of each of them.
pub fn axis_menu<'a>(worms: impl IntoIterator<Item = &'a Worm>, width: usize) -> Vec<Ordinal> {
    let mut menu = BTreeSet::new();
    menu.insert(Ordinal::zero());
    for w in worms {
        let mods = w.modalities();
        for start in 0..=mods.len() {
            let suffix = Worm::new(mods[start..].to_vec());
            if let Some(p) = defining_point(&suffix) {
                menu.extend(p.coords(width));
            }
        }
    }
    end_log_closure(menu)
}

/// Smallest superset of `menu` closed under `end_log`, sorted.
pub fn end_log_closure(menu: impl IntoIterator<Item = Ordinal>) -> Vec<Ordinal> {
    let mut out = BTreeSet::new();
    for mut o in menu {
        while out.insert(o.clone()) {
            o = o.end_log();
        }
    }
    out.into_iter().collect()
}

/// A finite set of points with materialized relations `R_0, …, R_{N-1}`.
#[derive(Clone, Debug)]
pub struct TruncatedModel {
    width: usize,
    points: Vec<LSequence>,
    coords: Vec<Vec<Ordinal>>,
    /// `succ[xi][x]`: sorted `R_xi`-successors of `x`.
    succ: Vec<Vec<Vec<PointId>>>,
}

impl TruncatedModel {
    /// All ℓ-sequences on `0..width` with values in `menu`.
    pub fn generate(width: usize, menu: &[Ordinal]) -> Result<TruncatedModel, ModelError> {
        let menu: BTreeSet<Ordinal> = menu.iter().cloned().collect();
        if let Some(bad) = menu.iter().find(|m| !menu.contains(&m.end_log())) {
            return Err(ModelError::MenuNotClosed(bad.clone()));
        }
        let menu: Vec<Ordinal> = menu.into_iter().collect();
        let mut all = Vec::new();
        if !menu.is_empty() {
            let mut prefix = Vec::with_capacity(width);
            extend_points(&menu, width, &mut prefix, &mut all);
        }
        let points = all.iter().map(|c| LSequence::from_coords(c)).collect();
        let mut succ = vec![vec![Vec::new(); all.len()]; width];
        for (x, cx) in all.iter().enumerate() {
            for (y, cy) in all.iter().enumerate() {
                if let Some(i) = (0..width).find(|&i| cx[i] != cy[i]) {
                    if cx[i] > cy[i] {
                        succ[i][x].push(y);
                    }
                }
            }
        }
        Ok(TruncatedModel {
            width,
            points,
            coords: all,
            succ,
        })
    }

    /// A model with explicit points and relations, not necessarily
    /// matching Ignatiev's. `relations[xi]` lists the pairs of `R_xi`.
    pub fn from_relations(
        width: usize,
        points: Vec<LSequence>,
        relations: &[Vec<(PointId, PointId)>],
    ) -> Result<TruncatedModel, ModelError> {
        if relations.len() > width {
            return Err(ModelError::WidthMismatch);
        }
        let n = points.len();
        let mut succ = vec![vec![Vec::new(); n]; width];
        for (xi, pairs) in relations.iter().enumerate() {
            for &(x, y) in pairs {
                let bad = if x >= n {
                    Some(x)
                } else if y >= n {
                    Some(y)
                } else {
                    None
                };
                if let Some(p) = bad {
                    return Err(ModelError::UnknownPoint(p));
                }
                succ[xi][x].push(y);
            }
        }
        for row in succ.iter_mut().flatten() {
            row.sort_unstable();
            row.dedup();
        }
        let coords = points.iter().map(|p| p.coords(width)).collect();
        Ok(TruncatedModel {
            width,
            points,
            coords,
            succ,
        })
    }

    /// Side-by-side copies of `models`, with no relations across copies.
    pub fn disjoint_union(models: &[TruncatedModel]) -> Result<TruncatedModel, ModelError> {
        let width = models.first().map_or(0, |m| m.width);
        if models.iter().any(|m| m.width != width) {
            return Err(ModelError::WidthMismatch);
        }
        let mut out = TruncatedModel {
            width,
            points: Vec::new(),
            coords: Vec::new(),
            succ: vec![Vec::new(); width],
        };
        for m in models {
            let offset = out.points.len();
            out.points.extend(m.points.iter().cloned());
            out.coords.extend(m.coords.iter().cloned());
            for xi in 0..width {
                out.succ[xi].extend(
                    m.succ[xi]
                        .iter()
                        .map(|row| row.iter().map(|y| y + offset).collect()),
                );
            }
        }
        Ok(out)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[LSequence] {
        &self.points
    }

    pub fn point(&self, x: PointId) -> &LSequence {
        &self.points[x]
    }

    pub fn coords(&self, x: PointId) -> &[Ordinal] {
        &self.coords[x]
    }

    /// First point equal to `p` on the model's indices.
    pub fn find(&self, p: &LSequence) -> Option<PointId> {
        let c = p.coords(self.width);
        self.coords.iter().position(|d| *d == c)
    }

    pub fn successors(&self, xi: usize, x: PointId) -> &[PointId] {
        &self.succ[xi][x]
    }

    pub fn related(&self, xi: usize, x: PointId, y: PointId) -> bool {
        self.succ[xi][x].binary_search(&y).is_ok()
    }

    /// The pairs of `R_xi` in increasing order.
    pub fn relation(&self, xi: usize) -> Vec<(PointId, PointId)> {
        self.succ[xi]
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().map(move |&y| (x, y)))
            .collect()
    }

    fn index(&self, modality: &Ordinal) -> Result<usize, ModelError> {
        match modality.as_nat() {
            Some(n) if (n as usize) < self.width => Ok(n as usize),
            _ => Err(ModelError::IndexOutOfRange {
                modality: modality.clone(),
                width: self.width,
            }),
        }
    }

    fn diamond(&self, xi: usize, inner: &[bool]) -> Vec<bool> {
        self.succ[xi]
            .iter()
            .map(|row| row.iter().any(|&y| inner[y]))
            .collect()
    }

    /// Membership vector of the points forcing `a`.
    pub fn satisfying(&self, a: &Worm) -> Result<Vec<bool>, ModelError> {
        let mut cur = vec![true; self.len()];
        for m in a.modalities().iter().rev() {
            cur = self.diamond(self.index(m)?, &cur);
        }
        Ok(cur)
    }

    /// Membership vector of the points forcing `phi`.
    pub fn satisfying_rc(&self, phi: &RcFormula) -> Result<Vec<bool>, ModelError> {
        Ok(match phi {
            RcFormula::Top => vec![true; self.len()],
            RcFormula::Diamond(m, body) => {
                let xi = self.index(m)?;
                self.diamond(xi, &self.satisfying_rc(body)?)
            }
            RcFormula::And(l, r) => {
                let l = self.satisfying_rc(l)?;
                let r = self.satisfying_rc(r)?;
                l.iter().zip(&r).map(|(a, b)| *a && *b).collect()
            }
        })
    }

    pub fn forces(&self, x: PointId, a: &Worm) -> Result<bool, ModelError> {
        Ok(self.satisfying(a)?[x])
    }

    /// Points where `A ∧ [0]¬A` holds.
    pub fn defining_set(&self, a: &Worm) -> Result<Vec<bool>, ModelError> {
        let sat = self.satisfying(a)?;
        let zero = self.index(&Ordinal::zero())?;
        let below = self.diamond(zero, &sat);
        Ok(sat.iter().zip(&below).map(|(s, b)| *s && !*b).collect())
    }

    pub fn forces_defining(&self, x: PointId, a: &Worm) -> Result<bool, ModelError> {
        Ok(self.defining_set(a)?[x])
    }

    /// The unique point defined by `a`, checked to be the ⪰-least point
    /// forcing `a` and to lie on the main axis.
    pub fn main_axis_point(&self, a: &Worm) -> Result<PointId, ModelError> {
        let defining = self.defining_set(a)?;
        let found: Vec<PointId> = (0..self.len()).filter(|&x| defining[x]).collect();
        let x = match found.as_slice() {
            [] => return Err(ModelError::NotFound),
            [x] => *x,
            many => return Err(ModelError::NotUnique(many.len())),
        };
        let sat = self.satisfying(a)?;
        if (0..self.len()).any(|y| sat[y] != self.points[y].pointwise_geq(&self.points[x])) {
            return Err(ModelError::AxisCheckFailed(
                "forcing set is not the upward cone",
            ));
        }
        let c = &self.coords[x];
        for xi in 0..self.width {
            for zeta in xi + 1..self.width {
                let gap = Ordinal::nat((zeta - xi) as u64);
                if c[zeta] != Ordinal::hyper_log(&gap, &c[xi]) {
                    return Err(ModelError::AxisCheckFailed("coordinates off the main axis"));
                }
            }
        }
        Ok(x)
    }

    /// The members of `menu` forced at `x`, in menu order.
    pub fn theory(&self, x: PointId, menu: &[Worm]) -> Result<Vec<Worm>, ModelError> {
        let mut out = Vec::new();
        for w in menu {
            if self.forces(x, w)? {
                out.push(w.clone());
            }
        }
        Ok(out)
    }

    /// `x R_α y` and `x R_β z` with `β < α` imply `y R_β z`.
    pub fn check_euclidean(&self) -> bool {
        (0..self.len()).all(|x| {
            (0..self.width).all(|alpha| {
                (0..alpha).all(|beta| {
                    self.succ[alpha][x]
                        .iter()
                        .all(|&y| self.succ[beta][x].iter().all(|&z| self.related(beta, y, z)))
                })
            })
        })
    }
}

fn extend_points(
    menu: &[Ordinal],
    width: usize,
    prefix: &mut Vec<Ordinal>,
    out: &mut Vec<Vec<Ordinal>>,
) {
    if prefix.len() == width {
        out.push(prefix.clone());
        return;
    }
    let cap = prefix.last().map(Ordinal::end_log);
    for v in menu {
        if cap.as_ref().is_some_and(|c| v > c) {
            break;
        }
        prefix.push(v.clone());
        extend_points(menu, width, prefix, out);
        prefix.pop();
    }
}
