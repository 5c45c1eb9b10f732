//! Proof objects for the worm calculus, an independent checker, and builders
//! for the derived lemmas used by the decision procedure.
//!
//! Axioms: `A ⊢ ⊤`, `ααA ⊢ αA`, and `αA ⊢ βA` for `α > β`. Rules: cut,
//! necessitation (`A ⊢ B` gives `αA ⊢ αB`) and R3 (`A ⊢ B` and `A ⊢ αC`
//! give `A ⊢ BαC` when `B ∈ W_{α+1}`).
//!
//! Every node stores its conclusion and the parameters of the rule it
//! instantiates, so [`check_proof`] never searches.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ordinal::Ordinal;
use crate::worm::Worm;

/// A sequent `antecedent ⊢ succedent` between worms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Judgment {
    pub antecedent: Worm,
    pub succedent: Worm,
}

impl Judgment {
    pub fn new(antecedent: Worm, succedent: Worm) -> Self {
        Judgment {
            antecedent,
            succedent,
        }
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |- {}", self.antecedent, self.succedent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Ax1,
    AxTransitivity {
        alpha: Ordinal,
    },
    AxMonotonicity {
        alpha: Ordinal,
        beta: Ordinal,
    },
    Cut {
        middle: Worm,
    },
    Necessitation {
        alpha: Ordinal,
    },
    /// `split` is the length of `B` in the conclusion `A ⊢ BαC`.
    R3 {
        alpha: Ordinal,
        split: usize,
    },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Ax1 => "Ax1",
            Rule::AxTransitivity { .. } => "AxTransitivity",
            Rule::AxMonotonicity { .. } => "AxMonotonicity",
            Rule::Cut { .. } => "Cut",
            Rule::Necessitation { .. } => "Necessitation",
            Rule::R3 { .. } => "R3",
        }
    }

    fn arity(&self) -> usize {
        match self {
            Rule::Ax1 | Rule::AxTransitivity { .. } | Rule::AxMonotonicity { .. } => 0,
            Rule::Necessitation { .. } => 1,
            Rule::Cut { .. } | Rule::R3 { .. } => 2,
        }
    }
}

/// A derivation tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Proof {
    pub conclusion: Judgment,
    pub rule: Rule,
    pub premises: Vec<Proof>,
}

impl Proof {
    pub fn antecedent(&self) -> &Worm {
        &self.conclusion.antecedent
    }

    pub fn succedent(&self) -> &Worm {
        &self.conclusion.succedent
    }

    /// Number of rule applications.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Proof::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(Proof::depth).max().unwrap_or(0)
    }

    /// True when the proof checks and concludes exactly `judgment`.
    pub fn proves(&self, judgment: &Judgment) -> bool {
        self.conclusion == *judgment && check_proof(self).is_ok()
    }

    /// The node reached by following premise indices from the root.
    pub fn node_at(&self, path: &[usize]) -> Option<&Proof> {
        path.iter().try_fold(self, |p, &i| p.premises.get(i))
    }

    pub fn node_at_mut(&mut self, path: &[usize]) -> Option<&mut Proof> {
        path.iter().try_fold(self, |p, &i| p.premises.get_mut(i))
    }

    /// Paths to every node, in preorder.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![(self, Vec::new())];
        while let Some((node, path)) = stack.pop() {
            for (i, p) in node.premises.iter().enumerate().rev() {
                let mut child = path.clone();
                child.push(i);
                stack.push((p, child));
            }
            out.push(path);
        }
        out
    }
}

/// Where and why a proof was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckError {
    /// Premise indices from the root to the offending node.
    pub path: Vec<usize>,
    pub reason: String,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid node at /")?;
        for (i, step) in self.path.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            write!(f, "{step}")?;
        }
        write!(f, ": {}", self.reason)
    }
}

impl core::error::Error for CheckError {}

/// Verifies every node of `proof` against its rule schema.
pub fn check_proof(proof: &Proof) -> Result<(), CheckError> {
    let mut path = Vec::new();
    check_node(proof, &mut path)
}

fn check_node(node: &Proof, path: &mut Vec<usize>) -> Result<(), CheckError> {
    check_local(node).map_err(|reason| CheckError {
        path: path.clone(),
        reason: reason.into(),
    })?;
    for (i, premise) in node.premises.iter().enumerate() {
        path.push(i);
        check_node(premise, path)?;
        path.pop();
    }
    Ok(())
}

fn check_local(node: &Proof) -> Result<(), &'static str> {
    if node.premises.len() != node.rule.arity() {
        return Err("wrong number of premises");
    }
    let ante = node.antecedent().modalities();
    let succ = node.succedent().modalities();
    match &node.rule {
        Rule::Ax1 => {
            if !succ.is_empty() {
                return Err("Ax1 must conclude A |- T");
            }
        }
        Rule::AxTransitivity { alpha } => {
            let ok =
                ante.len() >= 2 && ante[0] == *alpha && ante[1] == *alpha && succ == &ante[1..];
            if !ok {
                return Err("transitivity must conclude <a><a>A |- <a>A");
            }
        }
        Rule::AxMonotonicity { alpha, beta } => {
            if alpha <= beta {
                return Err("monotonicity requires alpha > beta");
            }
            let ok = !ante.is_empty()
                && !succ.is_empty()
                && ante[0] == *alpha
                && succ[0] == *beta
                && ante[1..] == succ[1..];
            if !ok {
                return Err("monotonicity must conclude <a>A |- <b>A");
            }
        }
        Rule::Cut { middle } => {
            let (left, right) = (&node.premises[0], &node.premises[1]);
            if left.antecedent() != node.antecedent()
                || left.succedent() != middle
                || right.antecedent() != middle
                || right.succedent() != node.succedent()
            {
                return Err("cut premises must be A |- B and B |- C");
            }
        }
        Rule::Necessitation { alpha } => {
            let p = &node.premises[0];
            let ok = ante.first() == Some(alpha)
                && succ.first() == Some(alpha)
                && ante[1..] == *p.antecedent().modalities()
                && succ[1..] == *p.succedent().modalities();
            if !ok {
                return Err("necessitation must conclude <a>A |- <a>B from A |- B");
            }
        }
        Rule::R3 { alpha, split } => {
            let (left, right) = (&node.premises[0], &node.premises[1]);
            if succ.len() <= *split || succ[*split] != *alpha {
                return Err("R3 split does not point at alpha");
            }
            let b = &succ[..*split];
            let alpha_c = &succ[*split..];
            if left.antecedent() != node.antecedent() || right.antecedent() != node.antecedent() {
                return Err("R3 premises must share the conclusion's antecedent");
            }
            if left.succedent().modalities() != b || right.succedent().modalities() != alpha_c {
                return Err("R3 premises must be A |- B and A |- <a>C");
            }
            let floor = alpha.succ();
            if !b.iter().all(|m| *m >= floor) {
                return Err("R3 side condition B in W_(alpha+1) fails");
            }
        }
    }
    Ok(())
}

/// Builder failures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofError {
    SideConditionViolated(&'static str),
    PremiseMismatch(&'static str),
}

impl fmt::Display for ProofError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofError::SideConditionViolated(why) => write!(f, "side condition violated: {why}"),
            ProofError::PremiseMismatch(why) => write!(f, "premise mismatch: {why}"),
        }
    }
}

impl core::error::Error for ProofError {}

// Primitive steps. Callers guarantee the schemas; the checker re-verifies.

pub fn axiom_top(a: &Worm) -> Proof {
    Proof {
        conclusion: Judgment::new(a.clone(), Worm::top()),
        rule: Rule::Ax1,
        premises: Vec::new(),
    }
}

/// `ααA ⊢ αA`.
pub fn transitivity(alpha: &Ordinal, rest: &Worm) -> Proof {
    let once = rest.prefixed(alpha);
    Proof {
        conclusion: Judgment::new(once.prefixed(alpha), once),
        rule: Rule::AxTransitivity {
            alpha: alpha.clone(),
        },
        premises: Vec::new(),
    }
}

/// `αA ⊢ βA`; the caller ensures `alpha > beta`.
pub fn monotonicity(alpha: &Ordinal, beta: &Ordinal, rest: &Worm) -> Proof {
    debug_assert!(alpha > beta);
    Proof {
        conclusion: Judgment::new(rest.prefixed(alpha), rest.prefixed(beta)),
        rule: Rule::AxMonotonicity {
            alpha: alpha.clone(),
            beta: beta.clone(),
        },
        premises: Vec::new(),
    }
}

/// `αA ⊢ βA` for `alpha >= beta`, by monotonicity or reflexivity.
fn weaken_first(alpha: &Ordinal, beta: &Ordinal, rest: &Worm) -> Proof {
    if alpha == beta {
        reflexivity(&rest.prefixed(alpha))
    } else {
        monotonicity(alpha, beta, rest)
    }
}

pub fn cut(left: Proof, right: Proof) -> Proof {
    debug_assert_eq!(left.succedent(), right.antecedent());
    let middle = left.succedent().clone();
    Proof {
        conclusion: Judgment::new(left.antecedent().clone(), right.succedent().clone()),
        rule: Rule::Cut { middle },
        premises: vec![left, right],
    }
}

pub fn necessitation(alpha: &Ordinal, premise: Proof) -> Proof {
    Proof {
        conclusion: Judgment::new(
            premise.antecedent().prefixed(alpha),
            premise.succedent().prefixed(alpha),
        ),
        rule: Rule::Necessitation {
            alpha: alpha.clone(),
        },
        premises: vec![premise],
    }
}

/// From `A ⊢ B` and `A ⊢ αC` conclude `A ⊢ BαC`.
pub fn r3(alpha: &Ordinal, left: Proof, right: Proof) -> Result<Proof, ProofError> {
    if left.antecedent() != right.antecedent() {
        return Err(ProofError::PremiseMismatch(
            "R3 premises have different antecedents",
        ));
    }
    if right.succedent().first() != Some(alpha) {
        return Err(ProofError::PremiseMismatch(
            "R3 right premise must start with alpha",
        ));
    }
    if !left.succedent().in_worms_at(&alpha.succ()) {
        return Err(ProofError::SideConditionViolated(
            "B must lie in W_(alpha+1)",
        ));
    }
    Ok(Proof {
        conclusion: Judgment::new(
            left.antecedent().clone(),
            left.succedent().concat(right.succedent()),
        ),
        rule: Rule::R3 {
            alpha: alpha.clone(),
            split: left.succedent().len(),
        },
        premises: vec![left, right],
    })
}

/// `AB ⊢ A`: weakening to `B ⊢ ⊤`, then necessitation through `A`.
pub fn prove_prefix(a: &Worm, b: &Worm) -> Proof {
    a.modalities()
        .iter()
        .rev()
        .fold(axiom_top(b), |p, m| necessitation(m, p))
}

/// `A ⊢ A`.
pub fn reflexivity(a: &Worm) -> Proof {
    prove_prefix(a, &Worm::top())
}

/// `AαB ⊢ αB` for `A ∈ W_{α+1}`.
pub fn prove_drop_head(alpha: &Ordinal, a: &Worm, b: &Worm) -> Result<Proof, ProofError> {
    if !a.in_worms_at(&alpha.succ()) {
        return Err(ProofError::SideConditionViolated(
            "A must lie in W_(alpha+1)",
        ));
    }
    let target = b.prefixed(alpha);
    let mut proof = reflexivity(&target);
    // Invariant: `proof` concludes (suffix of A)αB ⊢ αB.
    for gamma in a.modalities().iter().rev() {
        let lifted = necessitation(gamma, proof);
        let lowered = monotonicity(gamma, alpha, &target);
        let collapsed = transitivity(alpha, b);
        proof = cut(cut(lifted, lowered), collapsed);
    }
    Ok(proof)
}

/// `A ⊢ α` for nontrivial `A ∈ W_α`.
pub fn prove_top_min(alpha: &Ordinal, a: &Worm) -> Result<Proof, ProofError> {
    let mods = a.modalities();
    let Some((last, init)) = mods.split_last() else {
        return Err(ProofError::SideConditionViolated("A must be nontrivial"));
    };
    if !a.in_worms_at(alpha) {
        return Err(ProofError::SideConditionViolated("A must lie in W_alpha"));
    }
    let top = Worm::top();
    let mut proof = weaken_first(last, alpha, &top);
    let mut suffix = Worm::new(vec![last.clone()]);
    for beta in init.iter().rev() {
        // suffix ⊢ α  ⟹  α·suffix ⊢ αα ⊢ α  and  β·suffix ⊢ α·suffix.
        let lifted = necessitation(alpha, proof);
        let squashed = cut(lifted, transitivity(alpha, &top));
        let weakened = weaken_first(beta, alpha, &suffix);
        proof = cut(weakened, squashed);
        suffix = suffix.prefixed(beta);
    }
    Ok(proof)
}

/// `A ⊢ h_α(A)`.
pub fn prove_head(alpha: &Ordinal, a: &Worm) -> Proof {
    prove_prefix(&a.head_at(alpha), &a.remainder_at(alpha))
}

/// `A ⊢ r_α(A)`.
pub fn prove_remainder(alpha: &Ordinal, a: &Worm) -> Proof {
    let head = a.head_at(alpha);
    let rem = a.remainder_at(alpha);
    match rem.first() {
        None => axiom_top(a),
        Some(beta) => prove_drop_head(beta, &head, &rem.tail())
            .expect("the alpha-head lies above every remainder modality"),
    }
}

/// From `B ⊢ h_α(A)` and `B ⊢ r_α(A)` conclude `B ⊢ A`.
pub fn prove_combine(
    alpha: &Ordinal,
    a: &Worm,
    to_head: Proof,
    to_rem: Proof,
) -> Result<Proof, ProofError> {
    let head = a.head_at(alpha);
    let rem = a.remainder_at(alpha);
    if *to_head.succedent() != head || *to_rem.succedent() != rem {
        return Err(ProofError::PremiseMismatch(
            "premises must conclude the head and remainder",
        ));
    }
    if to_head.antecedent() != to_rem.antecedent() {
        return Err(ProofError::PremiseMismatch(
            "premises have different antecedents",
        ));
    }
    match rem.first() {
        None => Ok(to_head),
        Some(beta) => r3(&beta.clone(), to_head, to_rem),
    }
}

/// Proofs relating a worm to its body decomposition `h_{α+1}(A) α b_α(A)`.
#[derive(Clone, Debug)]
pub struct BodyProofs {
    /// `A ⊢ h_{α+1}(A) α b_α(A)`.
    pub forward: Proof,
    /// `h_{α+1}(A) α b_α(A) ⊢ A`.
    pub backward: Proof,
    /// `A ⊢ α b_α(A)`.
    pub to_body: Proof,
}

/// The body decomposition of a nontrivial `A ∈ W_α`.
pub fn prove_body(alpha: &Ordinal, a: &Worm) -> Result<BodyProofs, ProofError> {
    if a.is_top() {
        return Err(ProofError::SideConditionViolated("A must be nontrivial"));
    }
    if !a.in_worms_at(alpha) {
        return Err(ProofError::SideConditionViolated("A must lie in W_alpha"));
    }
    let above = alpha.succ();
    if a.remainder_at(&above).is_top() {
        // b_α(A) = ⊤ and the decomposition is A α.
        let to_body = prove_top_min(alpha, a)?;
        let forward = r3(alpha, reflexivity(a), to_body.clone())?;
        let backward = prove_prefix(a, &Worm::new(vec![alpha.clone()]));
        Ok(BodyProofs {
            forward,
            backward,
            to_body,
        })
    } else {
        // The (α+1)-remainder already starts with α: the decomposition is A itself.
        Ok(BodyProofs {
            forward: reflexivity(a),
            backward: reflexivity(a),
            to_body: prove_remainder(&above, a),
        })
    }
}

/// From `B ⊢ h_{α+1}(A)` and `B ⊢ α b_α(A)` conclude `B ⊢ h_{α+1}(A) α b_α(A)`.
pub fn prove_body_intro(
    alpha: &Ordinal,
    a: &Worm,
    to_head: Proof,
    to_body: Proof,
) -> Result<Proof, ProofError> {
    let above = alpha.succ();
    if *to_head.succedent() != a.head_at(&above) {
        return Err(ProofError::PremiseMismatch(
            "left premise must conclude the (alpha+1)-head",
        ));
    }
    if *to_body.succedent() != a.body_at(alpha).prefixed(alpha) {
        return Err(ProofError::PremiseMismatch(
            "right premise must conclude <alpha> body",
        ));
    }
    r3(alpha, to_head, to_body)
}

/// From `h_α(A) ⊢ α h_α(B)` and `A ⊢ r_α(B)` conclude `A ⊢ αB`.
pub fn prove_recursive_intro(
    alpha: &Ordinal,
    a: &Worm,
    b: &Worm,
    head_proof: Proof,
    rem_proof: Proof,
) -> Result<Proof, ProofError> {
    let a_head = a.head_at(alpha);
    let b_head = b.head_at(alpha);
    let b_rem = b.remainder_at(alpha);
    if head_proof.conclusion != Judgment::new(a_head.clone(), b_head.prefixed(alpha)) {
        return Err(ProofError::PremiseMismatch(
            "head premise must conclude h(A) |- <alpha> h(B)",
        ));
    }
    if rem_proof.conclusion != Judgment::new(a.clone(), b_rem.clone()) {
        return Err(ProofError::PremiseMismatch(
            "remainder premise must conclude A |- r(B)",
        ));
    }
    let lifted = if a_head == *a {
        head_proof
    } else {
        cut(prove_head(alpha, a), head_proof)
    };
    match b_rem.first() {
        None => Ok(lifted),
        Some(beta) => r3(&beta.clone(), lifted, rem_proof),
    }
}
