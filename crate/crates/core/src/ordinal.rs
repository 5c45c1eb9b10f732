//! Ordinal notations below ε_ω.
//!
//! A notation is `0`, an epsilon atom `ε_k`, or a Cantor normal form
//! `ω^e₁·c₁ + … + ω^eₙ·cₙ` with strictly decreasing exponents. A lone term
//! `ω^{ε_k}·1` is always stored as the atom `ε_k`, so structural equality is
//! ordinal equality.
//!
//! Text form:
//!
//! ```text
//! ord  ::= "0" | "e" nat | term ("+" term)*
//! term ::= "w" ["^" "(" ord ")"] ["*" nat] | nat
//! ```

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::syntax::{Cursor, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrdinalError {
    /// `left_subtract(ξ, ζ)` with ξ > ζ.
    SubtrahendTooLarge,
    /// A coefficient or epsilon index no longer fits the representation.
    SegmentOverflow,
}

impl fmt::Display for OrdinalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdinalError::SubtrahendTooLarge => f.write_str("subtrahend exceeds the minuend"),
            OrdinalError::SegmentOverflow => f.write_str("result leaves the supported segment"),
        }
    }
}

impl core::error::Error for OrdinalError {}

/// One summand `ω^exponent · coefficient` of a Cantor normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub exponent: Ordinal,
    pub coefficient: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Zero,
    Epsilon(u32),
    Cnf(Box<[Term]>),
}

/// A canonical ordinal notation below ε_ω.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ordinal(Repr);

impl Ordinal {
    pub const ZERO: Ordinal = Ordinal(Repr::Zero);

    pub fn zero() -> Ordinal {
        Ordinal::ZERO
    }

    pub fn nat(n: u64) -> Ordinal {
        if n == 0 {
            Ordinal::ZERO
        } else {
            Ordinal(Repr::Cnf(Box::new([Term {
                exponent: Ordinal::ZERO,
                coefficient: n,
            }])))
        }
    }

    pub fn one() -> Ordinal {
        Ordinal::nat(1)
    }

    pub fn omega() -> Ordinal {
        Ordinal::omega_power(&Ordinal::one())
    }

    pub fn epsilon(k: u32) -> Ordinal {
        Ordinal(Repr::Epsilon(k))
    }

    /// Builds a notation from summands, merging and absorbing as ordinal
    /// addition would, so any list of terms is accepted.
    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Ordinal {
        terms
            .into_iter()
            .filter(|t| t.coefficient > 0)
            .fold(Ordinal::ZERO, |acc, t| {
                let power = Ordinal::omega_power(&t.exponent);
                let summand = power.times(t.coefficient);
                acc.add(&summand)
            })
    }

    /// Canonicalizes a list already in strictly decreasing order.
    fn from_sorted_terms(mut terms: Vec<Term>) -> Ordinal {
        terms.retain(|t| t.coefficient > 0);
        match terms.as_slice() {
            [] => Ordinal::ZERO,
            [Term {
                exponent: Ordinal(Repr::Epsilon(k)),
                coefficient: 1,
            }] => Ordinal::epsilon(*k),
            _ => Ordinal(Repr::Cnf(terms.into_boxed_slice())),
        }
    }

    /// `ω^a`, with `ω^{ε_k}` folded back to `ε_k`.
    pub fn omega_power(a: &Ordinal) -> Ordinal {
        match &a.0 {
            Repr::Epsilon(k) => Ordinal::epsilon(*k),
            _ => Ordinal(Repr::Cnf(Box::new([Term {
                exponent: a.clone(),
                coefficient: 1,
            }]))),
        }
    }

    fn times(&self, n: u64) -> Ordinal {
        // Only used on single powers of ω.
        let mut terms = self.terms();
        if let Some(t) = terms.first_mut() {
            t.coefficient = n;
        }
        Ordinal::from_sorted_terms(terms)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Zero)
    }

    pub fn as_epsilon(&self) -> Option<u32> {
        match self.0 {
            Repr::Epsilon(k) => Some(k),
            _ => None,
        }
    }

    pub fn as_nat(&self) -> Option<u64> {
        match &self.0 {
            Repr::Zero => Some(0),
            Repr::Epsilon(_) => None,
            Repr::Cnf(terms) => match &terms[..] {
                [Term {
                    exponent,
                    coefficient,
                }] if exponent.is_zero() => Some(*coefficient),
                _ => None,
            },
        }
    }

    /// The Cantor normal form summands; `ε_k` unfolds to `ω^{ε_k}`.
    pub fn terms(&self) -> Vec<Term> {
        match &self.0 {
            Repr::Zero => Vec::new(),
            Repr::Epsilon(_) => vec![Term {
                exponent: self.clone(),
                coefficient: 1,
            }],
            Repr::Cnf(terms) => terms.to_vec(),
        }
    }

    fn with_terms<R>(&self, f: impl FnOnce(&[Term]) -> R) -> R {
        match &self.0 {
            Repr::Zero => f(&[]),
            Repr::Epsilon(_) => f(&[Term {
                exponent: self.clone(),
                coefficient: 1,
            }]),
            Repr::Cnf(terms) => f(terms),
        }
    }

    /// Total order on notations.
    pub fn compare(&self, other: &Ordinal) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Zero, Repr::Zero) => Ordering::Equal,
            (Repr::Zero, _) => Ordering::Less,
            (_, Repr::Zero) => Ordering::Greater,
            (Repr::Epsilon(j), Repr::Epsilon(k)) => j.cmp(k),
            _ => {
                if let (Some(a), Some(b)) = (self.as_nat(), other.as_nat()) {
                    return a.cmp(&b);
                }
                self.with_terms(|xs| other.with_terms(|ys| compare_terms(xs, ys)))
            }
        }
    }

    /// Ordinal sum.
    ///
    /// # Panics
    ///
    /// Panics if a coefficient overflows `u64`; see [`Ordinal::checked_add`].
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        self.checked_add(other)
            .expect("ordinal coefficient overflow")
    }

    pub fn checked_add(&self, other: &Ordinal) -> Result<Ordinal, OrdinalError> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let rhs = other.terms();
        let lead = &rhs[0].exponent;
        let mut out: Vec<Term> = Vec::new();
        let mut merged = None;
        self.with_terms(|xs| {
            for t in xs {
                match t.exponent.compare(lead) {
                    Ordering::Greater => out.push(t.clone()),
                    Ordering::Equal => merged = Some(t.coefficient),
                    Ordering::Less => break,
                }
            }
        });
        let mut rest = rhs.into_iter();
        let mut first = rest.next().expect("nonzero");
        if let Some(c) = merged {
            first.coefficient = first
                .coefficient
                .checked_add(c)
                .ok_or(OrdinalError::SegmentOverflow)?;
        }
        out.push(first);
        out.extend(rest);
        Ok(Ordinal::from_sorted_terms(out))
    }

    /// `self + 1`.
    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    pub fn is_successor(&self) -> bool {
        self.with_terms(|ts| ts.last().is_some_and(|t| t.exponent.is_zero()))
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    /// The predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Ordinal> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms();
        let last = terms.last_mut().expect("successor has terms");
        last.coefficient -= 1;
        Some(Ordinal::from_sorted_terms(terms))
    }

    /// The unique η with `self + η = zeta`.
    pub fn left_subtract(&self, zeta: &Ordinal) -> Result<Ordinal, OrdinalError> {
        let xs = self.terms();
        let ys = zeta.terms();
        for (i, y) in ys.iter().enumerate() {
            let Some(x) = xs.get(i) else {
                return Ok(Ordinal::from_sorted_terms(ys[i..].to_vec()));
            };
            match x.exponent.compare(&y.exponent) {
                Ordering::Greater => return Err(OrdinalError::SubtrahendTooLarge),
                Ordering::Less => return Ok(Ordinal::from_sorted_terms(ys[i..].to_vec())),
                Ordering::Equal => match x.coefficient.cmp(&y.coefficient) {
                    Ordering::Greater => return Err(OrdinalError::SubtrahendTooLarge),
                    Ordering::Less => {
                        let mut out = ys[i..].to_vec();
                        out[0].coefficient -= x.coefficient;
                        return Ok(Ordinal::from_sorted_terms(out));
                    }
                    Ordering::Equal => {}
                },
            }
        }
        if xs.len() > ys.len() {
            Err(OrdinalError::SubtrahendTooLarge)
        } else {
            Ok(Ordinal::ZERO)
        }
    }

    /// End-logarithm: `ℓ(0) = 0`, `ℓ(α + ω^β) = β`.
    pub fn end_log(&self) -> Ordinal {
        match &self.0 {
            Repr::Zero => Ordinal::ZERO,
            Repr::Epsilon(_) => self.clone(),
            Repr::Cnf(terms) => terms.last().expect("nonempty").exponent.clone(),
        }
    }

    /// `ℓ^xi(zeta)`, the `xi`-th hyper-logarithm.
    ///
    /// Evaluated by the standard recursion: identity at 0, `ℓ^ξ(0) = 0`,
    /// `ℓ^1 = ℓ`, leading-summand composition, and for `ξ = ω^ρ` with
    /// `ρ > 0` the reduction `ℓ^ξ(ζ) = ℓ^ξ(ℓ^η(ζ))` whenever some `η < ξ`
    /// moves `ζ`. The remaining supremum case only arises at `ρ = 1` and
    /// `ζ = ε_k`; below ε_ω it evaluates to `k + 1`.
    pub fn hyper_log(xi: &Ordinal, zeta: &Ordinal) -> Ordinal {
        if xi.is_zero() {
            return zeta.clone();
        }
        if zeta.is_zero() {
            return Ordinal::ZERO;
        }
        let terms = xi.terms();
        let lead = &terms[0];
        if terms.len() == 1 && lead.coefficient == 1 {
            if lead.exponent.is_zero() {
                return zeta.end_log();
            }
            return power_log(&lead.exponent, zeta.clone());
        }
        let head = Ordinal::omega_power(&lead.exponent);
        let tail = head
            .left_subtract(xi)
            .expect("leading power is a left summand");
        let after_head = Ordinal::hyper_log(&head, zeta);
        Ordinal::hyper_log(&tail, &after_head)
    }
}

/// `ℓ^{ω^ρ}(ζ)` for `ρ > 0`.
fn power_log(rho: &Ordinal, mut zeta: Ordinal) -> Ordinal {
    let rho_is_one = rho.as_nat() == Some(1);
    loop {
        if zeta.is_zero() {
            return Ordinal::ZERO;
        }
        let lowered = zeta.end_log();
        if lowered.compare(&zeta) == Ordering::Less {
            zeta = lowered;
            continue;
        }
        // ζ is a fixpoint of ℓ, hence of every finite iterate.
        let k = zeta
            .as_epsilon()
            .expect("nonzero fixpoint of the end-logarithm is an epsilon atom");
        let omega_value = Ordinal::nat(u64::from(k) + 1);
        if rho_is_one {
            return omega_value;
        }
        // ω < ω^ρ and ℓ^ω(ε_k) < ε_k.
        zeta = omega_value;
    }
}

fn compare_terms(xs: &[Term], ys: &[Term]) -> Ordering {
    for (x, y) in xs.iter().zip(ys) {
        let ord = x
            .exponent
            .compare(&y.exponent)
            .then(x.coefficient.cmp(&y.coefficient));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    xs.len().cmp(&ys.len())
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl Default for Ordinal {
    fn default() -> Self {
        Ordinal::ZERO
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Zero => f.write_str("0"),
            Repr::Epsilon(k) => write!(f, "e{k}"),
            Repr::Cnf(terms) => {
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    if t.exponent.is_zero() {
                        write!(f, "{}", t.coefficient)?;
                        continue;
                    }
                    if let Some(k) = t.exponent.as_epsilon() {
                        write!(f, "e{k}")?;
                    } else if t.exponent.as_nat() == Some(1) {
                        f.write_str("w")?;
                    } else {
                        write!(f, "w^({})", t.exponent)?;
                    }
                    if t.coefficient > 1 {
                        write!(f, "*{}", t.coefficient)?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Ordinal {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let ord = parse_ordinal(&mut cur)?;
        cur.finish()?;
        Ok(ord)
    }
}

pub(crate) fn parse_ordinal(cur: &mut Cursor<'_>) -> Result<Ordinal, ParseError> {
    let mut acc = parse_term(cur)?;
    while cur.eat(b'+') {
        let start = cur.pos();
        let term = parse_term(cur)?;
        acc = acc
            .checked_add(&term)
            .map_err(|_| ParseError::new(start, "coefficient overflow"))?;
    }
    Ok(acc)
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<Ordinal, ParseError> {
    let power = match cur.peek() {
        Some(b'w') => {
            cur.bump();
            if cur.eat(b'^') {
                cur.expect(b'(')?;
                let e = parse_ordinal(cur)?;
                cur.expect(b')')?;
                Ordinal::omega_power(&e)
            } else {
                Ordinal::omega()
            }
        }
        Some(b'e') => {
            cur.bump();
            let start = cur.pos();
            let k = cur.nat()?;
            let k =
                u32::try_from(k).map_err(|_| ParseError::new(start, "epsilon index too large"))?;
            Ordinal::epsilon(k)
        }
        Some(b'0'..=b'9') => return Ok(Ordinal::nat(cur.nat()?)),
        _ => return Err(cur.error("expected 'w', 'e' or a natural number")),
    };
    let coefficient = if cur.eat(b'*') {
        let start = cur.pos();
        let c = cur.nat()?;
        if c == 0 {
            return Err(ParseError::new(start, "coefficient must be positive"));
        }
        c
    } else {
        1
    };
    Ok(power.times(coefficient))
}
