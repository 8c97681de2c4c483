//! Degree-bounded membership in two-sided ideals of the free Z-rng.
//!
//! A target lies in the ideal generated by facts `f_1 … f_r` within bound `D`
//! when it is an integer combination of shifts `u·f_i·v` (u, v words or
//! empty) of degree at most `D`. The search is exact: all shifts are
//! generated and the resulting integer linear system is solved by lattice
//! elimination.

mod lattice;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

pub use lattice::{solve_integer_combination, LatticeBasis, RowIndex, SparseVec};

use crate::algebra::{Alphabet, CanonicalForm, Word};

/// Default hard cap on generated shifts per check.
pub const DEFAULT_SHIFT_CAP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FactSourceKind {
    Axiom,
    Theorem,
    Local,
    Inline,
}

/// An instantiated hypothesis difference `σ(lhs) - σ(rhs)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactInstance {
    pub kind: FactSourceKind,
    pub name: String,
    /// Rendered substitution, kept for reports; empty for local facts.
    pub substitution: Vec<(String, String)>,
    pub form: CanonicalForm,
}

impl FactInstance {
    pub fn local(name: impl Into<String>, form: CanonicalForm) -> Self {
        FactInstance {
            kind: FactSourceKind::Local,
            name: name.into(),
            substitution: Vec::new(),
            form,
        }
    }
}

/// `u · f · v` for one fact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shift {
    pub left: Option<Word>,
    pub right: Option<Word>,
    pub form: CanonicalForm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessTerm {
    pub coefficient: BigInt,
    pub left: Option<Word>,
    pub fact: usize,
    pub right: Option<Word>,
}

/// Certificate that `Σ c · u·f·v` equals the target.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MembershipWitness {
    pub terms: Vec<WitnessTerm>,
}

impl MembershipWitness {
    /// Recomputes the combination. Panics on an out-of-range fact index.
    pub fn replay(&self, facts: &[FactInstance]) -> CanonicalForm {
        let mut out = CanonicalForm::zero();
        for t in &self.terms {
            let shifted = facts[t.fact].form.shift(t.left.as_ref(), t.right.as_ref());
            out.add_scaled(&t.coefficient, &shifted);
        }
        out
    }

    pub fn max_degree(&self, facts: &[FactInstance]) -> usize {
        self.terms
            .iter()
            .map(|t| t.left.as_ref().map_or(0, Word::len) + facts[t.fact].form.degree() + t.right.as_ref().map_or(0, Word::len))
            .max()
            .unwrap_or(0)
    }

    pub fn to_json(&self, facts: &[FactInstance], alphabet: &Alphabet) -> Vec<WitnessTermJson> {
        self.terms
            .iter()
            .map(|t| WitnessTermJson {
                coefficient: t.coefficient.to_string(),
                left: t.left.as_ref().map(|w| w.display(alphabet)),
                fact: facts[t.fact].name.clone(),
                substitution: facts[t.fact].substitution.clone(),
                right: t.right.as_ref().map(|w| w.display(alphabet)),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessTermJson {
    pub coefficient: String,
    pub left: Option<String>,
    pub fact: String,
    pub substitution: Vec<(String, String)>,
    pub right: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MembershipError {
    #[error("degree bound {bound} is below the target degree {degree}")]
    BoundBelowTarget { bound: usize, degree: usize },
    #[error("{count} shifts exceed the cap of {cap}")]
    ShiftCap { count: usize, cap: usize },
}

#[derive(Debug, Clone)]
pub struct MembershipOutcome {
    pub witness: Option<MembershipWitness>,
    pub bound: usize,
    pub columns: usize,
}

impl MembershipOutcome {
    pub fn is_member(&self) -> bool {
        self.witness.is_some()
    }
}

/// Number of shifts of a degree-`d` fact over `k` letters within bound `bound`:
/// `Σ_{s=0}^{bound-d} (s+1)·k^s`.
pub fn shift_count(k: usize, d: usize, bound: usize) -> usize {
    if bound < d {
        return 0;
    }
    let mut total: usize = 0;
    let mut pow: usize = 1;
    for s in 0..=(bound - d) {
        total = total.saturating_add((s + 1).saturating_mul(pow));
        pow = pow.saturating_mul(k);
    }
    total
}

fn words_over(letters: &[u16], len: usize) -> Vec<Word> {
    Word::all_of_length(letters.len(), len)
        .into_iter()
        .map(|w| Word::new(w.letters().iter().map(|&i| letters[i as usize]).collect()).expect("nonempty"))
        .collect()
}

/// Shifts `u·f·v` with contexts drawn from `letters`. Ordered by total
/// context length, then by left length descending, then lexicographically.
pub fn shifts_over(f: &CanonicalForm, letters: &[u16], bound: usize) -> Vec<Shift> {
    let d = f.degree();
    if f.is_zero() || bound < d {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut by_len: Vec<Vec<Option<Word>>> = vec![vec![None]];
    for len in 1..=(bound - d) {
        by_len.push(words_over(letters, len).into_iter().map(Some).collect());
    }
    for s in 0..=(bound - d) {
        for a in (0..=s).rev() {
            for left in &by_len[a] {
                for right in &by_len[s - a] {
                    out.push(Shift {
                        left: left.clone(),
                        right: right.clone(),
                        form: f.shift(left.as_ref(), right.as_ref()),
                    });
                }
            }
        }
    }
    out
}

/// All shifts of `f` over the whole alphabet within degree `bound`.
pub fn enumerate_shifts(f: &CanonicalForm, alphabet: &Alphabet, bound: usize) -> Vec<Shift> {
    let letters: Vec<u16> = (0..alphabet.len() as u16).collect();
    shifts_over(f, &letters, bound)
}

/// Decides whether `target` is in the ideal generated by `facts` within
/// degree `bound` (default: the largest degree among target and facts).
///
/// Contexts range over the generators that occur in the target or the
/// facts; the retraction sending every other generator to zero shows this
/// loses no solutions.
pub fn check_membership(
    target: &CanonicalForm,
    facts: &[FactInstance],
    bound: Option<usize>,
    shift_cap: usize,
) -> Result<MembershipOutcome, MembershipError> {
    let live: Vec<usize> = facts
        .iter()
        .enumerate()
        .filter_map(|(i, f)| {
            if f.form.is_zero() {
                log::warn!("dropping trivial fact instance `{}`", f.name);
                None
            } else {
                Some(i)
            }
        })
        .collect();
    let default_bound = live
        .iter()
        .map(|&i| facts[i].form.degree())
        .chain(std::iter::once(target.degree()))
        .max()
        .unwrap_or(0);
    let bound = bound.unwrap_or(default_bound);
    if !target.is_zero() && bound < target.degree() {
        return Err(MembershipError::BoundBelowTarget {
            bound,
            degree: target.degree(),
        });
    }
    if target.is_zero() {
        return Ok(MembershipOutcome {
            witness: Some(MembershipWitness::default()),
            bound,
            columns: 0,
        });
    }

    let mut letters: Vec<u16> = target.support_generators();
    for &i in &live {
        letters.extend(facts[i].form.support_generators());
    }
    letters.sort_unstable();
    letters.dedup();

    let count: usize = live
        .iter()
        .map(|&i| shift_count(letters.len(), facts[i].form.degree(), bound))
        .fold(0usize, usize::saturating_add);
    if count > shift_cap {
        return Err(MembershipError::ShiftCap { count, cap: shift_cap });
    }

    let mut origins: Vec<(usize, Option<Word>, Option<Word>)> = Vec::with_capacity(count);
    let mut columns: Vec<CanonicalForm> = Vec::with_capacity(count);
    for &i in &live {
        for s in shifts_over(&facts[i].form, &letters, bound) {
            origins.push((i, s.left, s.right));
            columns.push(s.form);
        }
    }

    let witness = solve_integer_combination(target, &columns).map(|coeffs| MembershipWitness {
        terms: coeffs
            .into_iter()
            .zip(origins)
            .filter(|(c, _)| !c.is_zero())
            .map(|(coefficient, (fact, left, right))| WitnessTerm {
                coefficient,
                left,
                fact,
                right,
            })
            .collect(),
    });
    Ok(MembershipOutcome {
        witness,
        bound,
        columns: columns.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::normalize;
    use crate::syntax::parse_expression;

    fn nf(src: &str, a: &Alphabet) -> CanonicalForm {
        normalize(&parse_expression(src).unwrap(), a).unwrap()
    }

    #[test]
    fn shift_enumeration_order() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let f = nf("x*y", &a);
        let shifts = enumerate_shifts(&f, &a, 3);
        let shown: Vec<String> = shifts.iter().map(|s| s.form.display(&a)).collect();
        assert_eq!(shown, ["x*y", "x^2*y", "y*x*y", "x*y*x", "x*y^2"]);
        assert_eq!(enumerate_shifts(&f, &a, 2).len(), 1);
        assert!(enumerate_shifts(&f, &a, 1).is_empty());
    }

    #[test]
    fn shift_count_closed_form() {
        // Σ_{a+b ≤ 2} 2^a · 2^b, counted by brute force.
        let mut brute = 0;
        for a in 0..=2u32 {
            for b in 0..=(2 - a) {
                brute += 2usize.pow(a) * 2usize.pow(b);
            }
        }
        assert_eq!(brute, 17);
        let a = Alphabet::new(["x", "y"]).unwrap();
        assert_eq!(enumerate_shifts(&nf("x*y", &a), &a, 4).len(), 17);
        assert_eq!(shift_count(2, 2, 4), 17);
    }

    #[test]
    fn nested_commutator_minus_square_bracket() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let target = nf("[x,[x,y]] - [x^2,y]", &a);
        let fact = nf("2*[x,y*x]", &a);
        let cols: Vec<CanonicalForm> = enumerate_shifts(&fact, &a, 3).into_iter().map(|s| s.form).collect();
        let sol = solve_integer_combination(&target, &cols).unwrap();
        assert_eq!(sol[0], BigInt::from(-1));
        assert!(sol[1..].iter().all(Zero::is_zero));
    }

    #[test]
    fn zero_target_needs_nothing() {
        let out = check_membership(&CanonicalForm::zero(), &[], None, DEFAULT_SHIFT_CAP).unwrap();
        assert!(out.witness.unwrap().terms.is_empty());
    }

    #[test]
    fn reversibility_from_cube_potency() {
        // yx = (yx)^3 = y(xy)^2 x once xy = 0.
        let a = Alphabet::new(["x", "y"]).unwrap();
        let facts = vec![
            FactInstance::local("potency", nf("(y*x)^3 - y*x", &a)),
            FactInstance::local("h", nf("x*y", &a)),
        ];
        let target = nf("y*x", &a);
        let out = check_membership(&target, &facts, Some(6), DEFAULT_SHIFT_CAP).unwrap();
        let w = out.witness.expect("member");
        assert_eq!(w.replay(&facts), target);
        assert!(w.max_degree(&facts) <= 6);
        // Too small a bound is a plain failure, not an error.
        let out = check_membership(&target, &facts, Some(4), DEFAULT_SHIFT_CAP).unwrap();
        assert!(out.witness.is_none());
    }

    #[test]
    fn free_ring_is_noncommutative() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let out = check_membership(&nf("x*y - y*x", &a), &[], None, DEFAULT_SHIFT_CAP).unwrap();
        assert!(!out.is_member());
    }

    #[test]
    fn bound_below_target_is_an_error() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let err = check_membership(&nf("x*y*x", &a), &[], Some(2), DEFAULT_SHIFT_CAP).unwrap_err();
        assert_eq!(err, MembershipError::BoundBelowTarget { bound: 2, degree: 3 });
    }

    #[test]
    fn shift_cap_enforced() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let facts = vec![FactInstance::local("f", nf("x", &a))];
        let err = check_membership(&nf("x*y*x*y", &a), &facts, Some(10), 100).unwrap_err();
        assert!(matches!(err, MembershipError::ShiftCap { cap: 100, .. }));
    }

    #[test]
    fn trivial_facts_dropped() {
        let a = Alphabet::new(["x"]).unwrap();
        let facts = vec![FactInstance::local("zero", CanonicalForm::zero()), FactInstance::local("f", nf("2*x", &a))];
        let out = check_membership(&nf("4*x^2", &a), &facts, None, DEFAULT_SHIFT_CAP).unwrap();
        let w = out.witness.unwrap();
        assert!(w.terms.iter().all(|t| t.fact == 1));
    }
}
