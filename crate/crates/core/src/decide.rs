//! Worm orderings, the trichotomy comparison, the proof-producing decision
//! procedure, and a forward-saturation oracle.
//!
//! `A <_α B` means `B ⊢ αA`. On `W_α` any two worms are comparable or
//! equivalent; [`compare_worms`] returns which, with proofs. [`decide`]
//! splits `A ⊢ αB` into `h_α(A) ⊢ α h_α(B)` and `A ⊢ r_α(B)` while some
//! remainder is nontrivial, and falls back to the comparison otherwise.
//! The recursion is exponential in the worm lengths.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::calculus::{
    axiom_top, cut, monotonicity, necessitation, prove_body, prove_body_intro, prove_head,
    prove_recursive_intro, prove_top_min, transitivity, Judgment, Proof, ProofError, Rule,
};
use crate::ordinal::Ordinal;
use crate::worm::Worm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Lt,
    Eqv,
    Gt,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Lt => "LT",
            Verdict::Eqv => "EQV",
            Verdict::Gt => "GT",
        })
    }
}

/// Outcome of comparing `A` and `B` at level `α`, with evidence.
#[derive(Clone, Debug)]
pub enum Comparison {
    /// `A <_α B`: a proof of `B ⊢ αA`.
    Lt(Proof),
    /// `A ≡ B`: proofs of `A ⊢ B` and `B ⊢ A`.
    Eqv { forward: Proof, backward: Proof },
    /// `B <_α A`: a proof of `A ⊢ αB`.
    Gt(Proof),
}

impl Comparison {
    pub fn verdict(&self) -> Verdict {
        match self {
            Comparison::Lt(_) => Verdict::Lt,
            Comparison::Eqv { .. } => Verdict::Eqv,
            Comparison::Gt(_) => Verdict::Gt,
        }
    }

    /// The comparison of `B` with `A`.
    pub fn flip(self) -> Comparison {
        match self {
            Comparison::Lt(p) => Comparison::Gt(p),
            Comparison::Gt(p) => Comparison::Lt(p),
            Comparison::Eqv { forward, backward } => Comparison::Eqv {
                forward: backward,
                backward: forward,
            },
        }
    }

    pub fn evidence(&self) -> Vec<&Proof> {
        match self {
            Comparison::Lt(p) | Comparison::Gt(p) => vec![p],
            Comparison::Eqv { forward, backward } => vec![forward, backward],
        }
    }

    /// Checks every proof and that it concludes what the verdict claims.
    pub fn is_witnessed(&self, alpha: &Ordinal, a: &Worm, b: &Worm) -> bool {
        match self {
            Comparison::Lt(p) => p.proves(&Judgment::new(b.clone(), a.prefixed(alpha))),
            Comparison::Gt(p) => p.proves(&Judgment::new(a.clone(), b.prefixed(alpha))),
            Comparison::Eqv { forward, backward } => {
                forward.proves(&Judgment::new(a.clone(), b.clone()))
                    && backward.proves(&Judgment::new(b.clone(), a.clone()))
            }
        }
    }
}

/// Trichotomy on `W_alpha`.
pub fn compare_worms(alpha: &Ordinal, a: &Worm, b: &Worm) -> Result<Comparison, ProofError> {
    if !a.in_worms_at(alpha) || !b.in_worms_at(alpha) {
        return Err(ProofError::SideConditionViolated(
            "both worms must lie in W_alpha",
        ));
    }
    Ok(compare_within(alpha, a, b))
}

/// `X ⊢ ξY` weakened to `X ⊢ αY` for `ξ >= α`.
fn lower(xi: &Ordinal, alpha: &Ordinal, proof: Proof) -> Proof {
    if xi == alpha {
        return proof;
    }
    let rest = proof.succedent().tail();
    cut(proof, monotonicity(xi, alpha, &rest))
}

fn compare_within(alpha: &Ordinal, a: &Worm, b: &Worm) -> Comparison {
    match (a.is_top(), b.is_top()) {
        (true, true) => {
            return Comparison::Eqv {
                forward: axiom_top(a),
                backward: axiom_top(b),
            }
        }
        (true, false) => return Comparison::Lt(top_min(alpha, b)),
        (false, true) => return Comparison::Gt(top_min(alpha, a)),
        (false, false) => {}
    }
    let xi = a
        .modalities()
        .iter()
        .chain(b.modalities())
        .min()
        .expect("both worms nontrivial")
        .clone();

    // A ≤_ξ b_ξ(B) gives A <_ξ B.
    let body_b = b.body_at(&xi);
    let decomposed_b = prove_body(&xi, b).expect("B is nontrivial in W_xi");

    let a_over_body_b = match compare_within(&xi, a, &body_b) {
        Comparison::Lt(p) => {
            // B ⊢ ξ b_ξ(B) ⊢ ξξA ⊢ ξA
            let chain = cut(
                cut(decomposed_b.to_body, necessitation(&xi, p)),
                transitivity(&xi, a),
            );
            return Comparison::Lt(lower(&xi, alpha, chain));
        }
        Comparison::Eqv { backward, .. } => {
            let chain = cut(decomposed_b.to_body, necessitation(&xi, backward));
            return Comparison::Lt(lower(&xi, alpha, chain));
        }
        Comparison::Gt(p) => p,
    };

    // B ≤_ξ b_ξ(A) gives B <_ξ A.
    let body_a = a.body_at(&xi);
    let decomposed_a = prove_body(&xi, a).expect("A is nontrivial in W_xi");
    let b_over_body_a = match compare_within(&xi, b, &body_a) {
        Comparison::Lt(p) => {
            let chain = cut(
                cut(decomposed_a.to_body, necessitation(&xi, p)),
                transitivity(&xi, b),
            );
            return Comparison::Gt(lower(&xi, alpha, chain));
        }
        Comparison::Eqv { backward, .. } => {
            let chain = cut(decomposed_a.to_body, necessitation(&xi, backward));
            return Comparison::Gt(lower(&xi, alpha, chain));
        }
        Comparison::Gt(p) => p,
    };

    // Both bodies sit strictly below the other worm; compare the (ξ+1)-heads.
    let up = xi.succ();
    let head_a = a.head_at(&up);
    let head_b = b.head_at(&up);
    match compare_within(&up, &head_a, &head_b) {
        Comparison::Lt(p) => {
            let rem = if a.remainder_at(&up).is_top() {
                axiom_top(b)
            } else {
                b_over_body_a
            };
            let raised = prove_recursive_intro(&up, b, a, p, rem)
                .expect("premises match the (xi+1)-decomposition");
            Comparison::Lt(lower(&up, alpha, raised))
        }
        Comparison::Gt(p) => {
            let rem = if b.remainder_at(&up).is_top() {
                axiom_top(a)
            } else {
                a_over_body_b
            };
            let raised = prove_recursive_intro(&up, a, b, p, rem)
                .expect("premises match the (xi+1)-decomposition");
            Comparison::Gt(lower(&up, alpha, raised))
        }
        Comparison::Eqv { forward, backward } => {
            // B ⊢ h(B) ⊢ h(A), B ⊢ ξ b(A)  ⟹  B ⊢ h(A) ξ b(A) ⊢ A; symmetrically A ⊢ B.
            let b_to_head_a = cut(prove_head(&up, b), backward);
            let b_to_normal_a = prove_body_intro(&xi, a, b_to_head_a, b_over_body_a)
                .expect("premises match the body decomposition of A");
            let b_to_a = cut(b_to_normal_a, decomposed_a.backward);

            let a_to_head_b = cut(prove_head(&up, a), forward);
            let a_to_normal_b = prove_body_intro(&xi, b, a_to_head_b, a_over_body_b)
                .expect("premises match the body decomposition of B");
            let a_to_b = cut(a_to_normal_b, decomposed_b.backward);
            Comparison::Eqv {
                forward: a_to_b,
                backward: b_to_a,
            }
        }
    }
}

fn top_min(alpha: &Ordinal, a: &Worm) -> Proof {
    prove_top_min(alpha, a).expect("nontrivial worm in W_alpha")
}

#[derive(Clone, Debug)]
pub enum Decision {
    Provable(Proof),
    NotProvable,
}

impl Decision {
    pub fn is_provable(&self) -> bool {
        matches!(self, Decision::Provable(_))
    }

    pub fn proof(&self) -> Option<&Proof> {
        match self {
            Decision::Provable(p) => Some(p),
            Decision::NotProvable => None,
        }
    }
}

/// Decides `a ⊢ b`, producing a checkable proof when it holds.
pub fn decide(a: &Worm, b: &Worm) -> Decision {
    let Some(alpha) = b.first() else {
        return Decision::Provable(axiom_top(a));
    };
    let rest = b.tail();
    let rem_a = a.remainder_at(alpha);
    let rem_b = rest.remainder_at(alpha);
    if rem_a.is_top() && rem_b.is_top() {
        return match compare_within(alpha, &rest, a) {
            Comparison::Lt(p) => Decision::Provable(p),
            _ => Decision::NotProvable,
        };
    }
    let head_a = a.head_at(alpha);
    let head_b = rest.head_at(alpha);
    let Decision::Provable(head_proof) = decide(&head_a, &head_b.prefixed(alpha)) else {
        return Decision::NotProvable;
    };
    let Decision::Provable(rem_proof) = decide(a, &rem_b) else {
        return Decision::NotProvable;
    };
    let proof = prove_recursive_intro(alpha, a, &rest, head_proof, rem_proof)
        .expect("subgoal conclusions match the decomposition");
    Decision::Provable(proof)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    /// The judgment table would exceed the configured budget.
    ResourceExceeded { judgments: usize, limit: usize },
    /// The length bound is shorter than one of the queried worms.
    BoundTooSmall,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::ResourceExceeded { judgments, limit } => write!(
                f,
                "saturation needs {judgments} judgments, over the limit of {limit}"
            ),
            OracleError::BoundTooSmall => f.write_str("length bound shorter than the query"),
        }
    }
}

impl core::error::Error for OracleError {}

/// Resource limits for [`brute_force`].
#[derive(Clone, Copy, Debug)]
pub struct Bound {
    /// Longest worm the saturation may mention.
    pub max_len: usize,
    /// Cap on `worms²`, the size of the judgment table.
    pub max_judgments: usize,
}

impl Bound {
    pub fn new(max_len: usize) -> Bound {
        Bound {
            max_len,
            max_judgments: 4_000_000,
        }
    }
}

#[derive(Clone, Debug)]
pub enum OracleVerdict {
    Derivable(Proof),
    Unknown,
}

impl OracleVerdict {
    pub fn is_derivable(&self) -> bool {
        matches!(self, OracleVerdict::Derivable(_))
    }
}

/// Forward saturation of `a ⊢ b` over the modalities of `ab`, restricted to
/// worms no longer than `bound.max_len`. Never claims underivability.
pub fn brute_force(a: &Worm, b: &Worm, bound: Bound) -> Result<OracleVerdict, OracleError> {
    if bound.max_len < a.len().max(b.len()) {
        return Err(OracleError::BoundTooSmall);
    }
    let mut alphabet: Vec<Ordinal> = a
        .modalities()
        .iter()
        .chain(b.modalities())
        .cloned()
        .collect();
    alphabet.sort();
    alphabet.dedup();
    let sat = Saturation::new(&alphabet, bound)?;
    Ok(match sat.derivation(a, b) {
        Some(p) => OracleVerdict::Derivable(p),
        None => OracleVerdict::Unknown,
    })
}

#[derive(Clone, Copy, Debug)]
enum Reason {
    Ax1,
    Transitivity,
    Monotonicity,
    Cut(u32),
    Necessitation,
    R3(u8),
}

/// The closure of the worm calculus over a finite alphabet and length bound.
///
/// Worms are numbered shortest first, then as base-`k` numerals over the
/// alphabet positions, so prefixing and concatenation are arithmetic.
pub struct Saturation {
    alphabet: Vec<Ordinal>,
    max_len: usize,
    /// `offsets[l]` is the id of the first worm of length `l`.
    offsets: Vec<usize>,
    powers: Vec<usize>,
    lens: Vec<u8>,
    /// Smallest alphabet position used, or `k` for `⊤`.
    min_digit: Vec<u8>,
    rows: Vec<BitSet>,
    cols: Vec<BitSet>,
    /// Justification of each derived judgment, indexed `a * n + b`.
    reasons: Vec<Option<Reason>>,
    facts: usize,
}

impl Saturation {
    pub fn new(alphabet: &[Ordinal], bound: Bound) -> Result<Saturation, OracleError> {
        let mut alphabet = alphabet.to_vec();
        alphabet.sort();
        alphabet.dedup();
        let k = alphabet.len();
        let max_len = bound.max_len;
        let mut offsets = vec![0usize];
        let mut powers = vec![1usize];
        for l in 0..=max_len {
            let count = powers[l];
            let next = offsets[l]
                .checked_add(count)
                .ok_or(OracleError::ResourceExceeded {
                    judgments: usize::MAX,
                    limit: bound.max_judgments,
                })?;
            offsets.push(next);
            powers.push(count.saturating_mul(k.max(1)));
        }
        let n = offsets[max_len + 1];
        let judgments = n.saturating_mul(n);
        if judgments > bound.max_judgments || k > u8::MAX as usize {
            return Err(OracleError::ResourceExceeded {
                judgments,
                limit: bound.max_judgments,
            });
        }
        let mut lens = vec![0u8; n];
        let mut min_digit = vec![k as u8; n];
        for l in 1..=max_len {
            for v in 0..powers[l] {
                let id = offsets[l] + v;
                lens[id] = l as u8;
                let mut rest = v;
                let mut m = k as u8;
                for _ in 0..l {
                    m = m.min((rest % k) as u8);
                    rest /= k;
                }
                min_digit[id] = m;
            }
        }
        let mut sat = Saturation {
            alphabet,
            max_len,
            offsets,
            powers,
            lens,
            min_digit,
            rows: vec![BitSet::new(n); n],
            cols: vec![BitSet::new(n); n],
            reasons: vec![None; n * n],
            facts: 0,
        };
        sat.saturate();
        Ok(sat)
    }

    pub fn worm_count(&self) -> usize {
        self.lens.len()
    }

    pub fn fact_count(&self) -> usize {
        self.facts
    }

    fn value(&self, id: usize) -> usize {
        id - self.offsets[self.lens[id] as usize]
    }

    fn id_of(&self, len: usize, value: usize) -> usize {
        self.offsets[len] + value
    }

    fn first_digit(&self, id: usize) -> Option<usize> {
        let l = self.lens[id] as usize;
        (l > 0).then(|| self.value(id) / self.powers[l - 1])
    }

    fn tail_id(&self, id: usize) -> usize {
        let l = self.lens[id] as usize;
        self.id_of(l - 1, self.value(id) % self.powers[l - 1])
    }

    fn prefix_id(&self, digit: usize, id: usize) -> Option<usize> {
        let l = self.lens[id] as usize;
        (l < self.max_len).then(|| self.id_of(l + 1, digit * self.powers[l] + self.value(id)))
    }

    fn concat_id(&self, left: usize, right: usize) -> Option<usize> {
        let (ll, rl) = (self.lens[left] as usize, self.lens[right] as usize);
        (ll + rl <= self.max_len).then(|| {
            self.id_of(
                ll + rl,
                self.value(left) * self.powers[rl] + self.value(right),
            )
        })
    }

    pub fn id(&self, w: &Worm) -> Option<usize> {
        if w.len() > self.max_len {
            return None;
        }
        let mut value = 0;
        for m in w.modalities() {
            let d = self.alphabet.binary_search(m).ok()?;
            value = value * self.alphabet.len() + d;
        }
        Some(self.id_of(w.len(), value))
    }

    pub fn worm(&self, id: usize) -> Worm {
        let l = self.lens[id] as usize;
        let k = self.alphabet.len();
        let mut v = self.value(id);
        let mut mods = vec![Ordinal::zero(); l];
        for slot in mods.iter_mut().rev() {
            *slot = self.alphabet[v % k].clone();
            v /= k;
        }
        Worm::new(mods)
    }

    fn saturate(&mut self) {
        let n = self.worm_count();
        let k = self.alphabet.len();
        let mut queue: Vec<(usize, usize)> = Vec::new();
        for a in 0..n {
            self.add(a, 0, Reason::Ax1, &mut queue);
        }
        for x in 0..n {
            let Some(d) = self.first_digit(x) else {
                continue;
            };
            if let Some(xx) = self.prefix_id(d, x) {
                self.add(xx, x, Reason::Transitivity, &mut queue);
            }
            let rest = self.tail_id(x);
            for lower in 0..d {
                let y = self.id_of(
                    self.lens[x] as usize,
                    lower * self.powers[self.lens[rest] as usize] + self.value(rest),
                );
                self.add(x, y, Reason::Monotonicity, &mut queue);
            }
        }
        while let Some((a, b)) = queue.pop() {
            // Cut with (a, b) on the left.
            let onward: Vec<usize> = self.rows[b].iter().collect();
            for c in onward {
                self.add(a, c, Reason::Cut(b as u32), &mut queue);
            }
            // Cut with (a, b) on the right.
            let backward: Vec<usize> = self.cols[a].iter().collect();
            for x in backward {
                self.add(x, b, Reason::Cut(a as u32), &mut queue);
            }
            for d in 0..k {
                if let (Some(da), Some(db)) = (self.prefix_id(d, a), self.prefix_id(d, b)) {
                    self.add(da, db, Reason::Necessitation, &mut queue);
                }
            }
            // R3 with (a, b) as either premise.
            let row: Vec<usize> = self.rows[a].iter().collect();
            if let Some(alpha) = self.first_digit(b) {
                for &left in &row {
                    if self.min_digit[left] as usize > alpha {
                        if let Some(c) = self.concat_id(left, b) {
                            self.add(a, c, Reason::R3(self.lens[left]), &mut queue);
                        }
                    }
                }
            }
            let floor = self.min_digit[b] as usize;
            for &right in &row {
                match self.first_digit(right) {
                    Some(alpha) if floor > alpha => {
                        if let Some(c) = self.concat_id(b, right) {
                            self.add(a, c, Reason::R3(self.lens[b]), &mut queue);
                        }
                    }
                    _ => {}
                }
            }
        }
    }

    fn add(&mut self, a: usize, b: usize, reason: Reason, queue: &mut Vec<(usize, usize)>) {
        if self.rows[a].insert(b) {
            self.cols[b].insert(a);
            self.reasons[a * self.lens.len() + b] = Some(reason);
            self.facts += 1;
            queue.push((a, b));
        }
    }

    pub fn derivable(&self, a: &Worm, b: &Worm) -> bool {
        match (self.id(a), self.id(b)) {
            (Some(x), Some(y)) => self.rows[x].contains(y),
            _ => false,
        }
    }

    /// Rebuilds a proof object from the recorded justifications.
    pub fn derivation(&self, a: &Worm, b: &Worm) -> Option<Proof> {
        let (x, y) = (self.id(a)?, self.id(b)?);
        self.rows[x].contains(y).then(|| self.rebuild(x, y))
    }

    fn rebuild(&self, a: usize, b: usize) -> Proof {
        let reason = self.reasons[a * self.lens.len() + b].expect("derived judgment");
        let ante = self.worm(a);
        let succ = self.worm(b);
        match reason {
            Reason::Ax1 => axiom_top(&ante),
            Reason::Transitivity => transitivity(&succ.modalities()[0], &succ.tail()),
            Reason::Monotonicity => {
                monotonicity(&ante.modalities()[0], &succ.modalities()[0], &ante.tail())
            }
            Reason::Cut(mid) => cut(self.rebuild(a, mid as usize), self.rebuild(mid as usize, b)),
            Reason::Necessitation => necessitation(
                &ante.modalities()[0],
                self.rebuild(self.tail_id(a), self.tail_id(b)),
            ),
            Reason::R3(split) => {
                let split = split as usize;
                let (left, right) = succ.split_at(split);
                let alpha = right.modalities()[0].clone();
                let lp = self.rebuild(a, self.id(&left).expect("in universe"));
                let rp = self.rebuild(a, self.id(&right).expect("in universe"));
                Proof {
                    conclusion: Judgment::new(ante, succ),
                    rule: Rule::R3 { alpha, split },
                    premises: vec![lp, rp],
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(n: usize) -> BitSet {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut bits = word;
            core::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + t)
            })
        })
    }
}
