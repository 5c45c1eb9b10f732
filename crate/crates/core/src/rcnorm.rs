//! Closed reflection-calculus formulas and their worm normal forms.
//!
//! Grammar: `rc ::= "T" | "<" ord ">" rc | "(" rc "&" rc ")"`, with
//! whitespace allowed between tokens.

use alloc::boxed::Box;
use core::fmt;
use core::str::FromStr;

use crate::decide::decide;
use crate::ordinal::{parse_ordinal, Ordinal};
use crate::syntax::{Cursor, ParseError};
use crate::worm::Worm;

/// A variable-free strictly positive formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RcFormula {
    Top,
    Diamond(Ordinal, Box<RcFormula>),
    And(Box<RcFormula>, Box<RcFormula>),
}

impl RcFormula {
    pub fn diamond(alpha: Ordinal, body: RcFormula) -> RcFormula {
        RcFormula::Diamond(alpha, Box::new(body))
    }

    pub fn and(left: RcFormula, right: RcFormula) -> RcFormula {
        RcFormula::And(Box::new(left), Box::new(right))
    }

    /// The formula `⟨α₁⟩…⟨αₙ⟩⊤` spelling out a worm.
    pub fn from_worm(w: &Worm) -> RcFormula {
        w.modalities()
            .iter()
            .rev()
            .fold(RcFormula::Top, |acc, m| RcFormula::diamond(m.clone(), acc))
    }

    /// Nesting depth of diamonds and conjunctions.
    pub fn depth(&self) -> usize {
        match self {
            RcFormula::Top => 0,
            RcFormula::Diamond(_, body) => 1 + body.depth(),
            RcFormula::And(l, r) => 1 + l.depth().max(r.depth()),
        }
    }
}

impl fmt::Display for RcFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RcFormula::Top => f.write_str("T"),
            RcFormula::Diamond(alpha, body) => write!(f, "<{alpha}>{body}"),
            RcFormula::And(l, r) => write!(f, "({l} & {r})"),
        }
    }
}

impl FromStr for RcFormula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        cur.skip_ws();
        let phi = parse_rc(&mut cur)?;
        cur.skip_ws();
        cur.finish()?;
        Ok(phi)
    }
}

fn parse_rc(cur: &mut Cursor<'_>) -> Result<RcFormula, ParseError> {
    if cur.eat(b'T') {
        return Ok(RcFormula::Top);
    }
    if cur.eat(b'<') {
        cur.skip_ws();
        let alpha = parse_ordinal(cur)?;
        cur.skip_ws();
        cur.expect(b'>')?;
        cur.skip_ws();
        let body = parse_rc(cur)?;
        return Ok(RcFormula::diamond(alpha, body));
    }
    if cur.eat(b'(') {
        cur.skip_ws();
        let left = parse_rc(cur)?;
        cur.skip_ws();
        cur.expect(b'&')?;
        cur.skip_ws();
        let right = parse_rc(cur)?;
        cur.skip_ws();
        cur.expect(b')')?;
        return Ok(RcFormula::and(left, right));
    }
    Err(cur.error("expected 'T', '<' or '('"))
}

/// A worm equivalent to the conjunction of `a` and `b`.
///
/// Induction on the number of distinct modalities: with `α` the least
/// modality, conjoin the `(α+1)`-heads recursively and append the stronger
/// of `α b_α(A)` and `α b_α(B)`.
pub fn worm_conj(a: &Worm, b: &Worm) -> Worm {
    if a.is_top() {
        return b.clone();
    }
    if b.is_top() {
        return a.clone();
    }
    let alpha = a
        .modalities()
        .iter()
        .chain(b.modalities())
        .min()
        .expect("nontrivial")
        .clone();
    let up = alpha.succ();
    let heads = worm_conj(&a.head_at(&up), &b.head_at(&up));
    let tail_a = a.body_at(&alpha).prefixed(&alpha);
    let tail_b = b.body_at(&alpha).prefixed(&alpha);
    let stronger = if decide(&tail_a, &tail_b).is_provable() {
        tail_a
    } else {
        debug_assert!(
            decide(&tail_b, &tail_a).is_provable(),
            "bodies are linearly ordered"
        );
        tail_b
    };
    heads.concat(&stronger)
}

/// A worm equivalent to `phi`.
pub fn normalize(phi: &RcFormula) -> Worm {
    match phi {
        RcFormula::Top => Worm::top(),
        RcFormula::Diamond(alpha, body) => normalize(body).prefixed(alpha),
        RcFormula::And(l, r) => worm_conj(&normalize(l), &normalize(r)),
    }
}

/// `phi ⊢ psi` in the closed reflection calculus.
pub fn rc_entails(phi: &RcFormula, psi: &RcFormula) -> bool {
    decide(&normalize(phi), &normalize(psi)).is_provable()
}
