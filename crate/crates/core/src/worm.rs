//! Worms: finite strings of modalities `⟨α₁⟩…⟨αₙ⟩⊤`.
//!
//! The text form is `T` or a run of `<ord>` blocks with an optional trailing
//! `T`, e.g. `<1><0>T` or `<w^(e0+1)><e0>`. Printing always emits the
//! trailing `T`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::ordinal::{parse_ordinal, Ordinal};
use crate::syntax::{Cursor, ParseError};

/// A worm, leftmost modality first. The empty worm is `⊤`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Worm(Vec<Ordinal>);

impl Worm {
    pub fn top() -> Worm {
        Worm(Vec::new())
    }

    pub fn new(modalities: Vec<Ordinal>) -> Worm {
        Worm(modalities)
    }

    /// Convenience constructor for worms over natural modalities.
    pub fn from_nats(modalities: &[u64]) -> Worm {
        Worm(modalities.iter().map(|&n| Ordinal::nat(n)).collect())
    }

    pub fn modalities(&self) -> &[Ordinal] {
        &self.0
    }

    pub fn into_modalities(self) -> Vec<Ordinal> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_top(&self) -> bool {
        self.0.is_empty()
    }

    /// Same as [`Worm::is_top`].
    pub fn is_empty(&self) -> bool {
        self.is_top()
    }

    pub fn first(&self) -> Option<&Ordinal> {
        self.0.first()
    }

    /// `⟨alpha⟩self`.
    pub fn prefixed(&self, alpha: &Ordinal) -> Worm {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(alpha.clone());
        v.extend(self.0.iter().cloned());
        Worm(v)
    }

    /// Drops the leftmost modality: `⟨α⟩A` becomes `A`, `⊤` stays `⊤`.
    pub fn tail(&self) -> Worm {
        Worm(self.0.iter().skip(1).cloned().collect())
    }

    pub fn concat(&self, other: &Worm) -> Worm {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Worm(v)
    }

    pub fn split_at(&self, mid: usize) -> (Worm, Worm) {
        let (a, b) = self.0.split_at(mid);
        (Worm(a.to_vec()), Worm(b.to_vec()))
    }

    pub fn min_modality(&self) -> Option<&Ordinal> {
        self.0.iter().min()
    }

    pub fn max_modality(&self) -> Option<&Ordinal> {
        self.0.iter().max()
    }

    /// Membership in `W_alpha`: every modality is at least `alpha`.
    pub fn in_worms_at(&self, alpha: &Ordinal) -> bool {
        self.0.iter().all(|m| m >= alpha)
    }

    fn head_len(&self, alpha: &Ordinal) -> usize {
        self.0.iter().take_while(|m| *m >= alpha).count()
    }

    /// `h_alpha`: the longest prefix lying in `W_alpha`.
    pub fn head_at(&self, alpha: &Ordinal) -> Worm {
        Worm(self.0[..self.head_len(alpha)].to_vec())
    }

    /// `r_alpha`: what is left after removing the `alpha`-head.
    pub fn remainder_at(&self, alpha: &Ordinal) -> Worm {
        Worm(self.0[self.head_len(alpha)..].to_vec())
    }

    /// `b_alpha`: the `(alpha+1)`-remainder without its leftmost modality.
    pub fn body_at(&self, alpha: &Ordinal) -> Worm {
        self.remainder_at(&alpha.succ()).tail()
    }

    /// Number of distinct modalities occurring in `self` followed by `other`.
    pub fn width(&self, other: &Worm) -> usize {
        self.0
            .iter()
            .chain(other.0.iter())
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// All worms over `alphabet` of length at most `max_len`, shortest
    /// first, each length in lexicographic order of alphabet positions.
    pub fn enumerate(alphabet: &[Ordinal], max_len: usize) -> Vec<Worm> {
        let mut out = alloc::vec![Worm::top()];
        let mut layer = alloc::vec![Worm::top()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * alphabet.len());
            for w in &layer {
                for a in alphabet {
                    let mut v = w.0.clone();
                    v.push(a.clone());
                    next.push(Worm(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl fmt::Display for Worm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.0 {
            write!(f, "<{m}>")?;
        }
        f.write_str("T")
    }
}

impl FromStr for Worm {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let worm = parse_worm(&mut cur)?;
        cur.finish()?;
        Ok(worm)
    }
}

pub(crate) fn parse_worm(cur: &mut Cursor<'_>) -> Result<Worm, ParseError> {
    if cur.eat(b'T') {
        return Ok(Worm::top());
    }
    let mut mods = Vec::new();
    while cur.eat(b'<') {
        mods.push(parse_ordinal(cur)?);
        cur.expect(b'>')?;
    }
    if mods.is_empty() {
        return Err(cur.error("expected 'T' or '<'"));
    }
    cur.eat(b'T');
    Ok(Worm(mods))
}
