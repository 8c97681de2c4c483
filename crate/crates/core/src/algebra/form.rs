use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Alphabet, Word};

/// Normal form of an element of the free Z-rng: an integer combination of
/// nonempty words. No stored coefficient is zero; iteration follows the
/// degree-lexicographic word order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CanonicalForm {
    terms: BTreeMap<Word, BigInt>,
}

impl CanonicalForm {
    pub fn zero() -> Self {
        CanonicalForm::default()
    }

    pub fn monomial(word: Word, coeff: impl Into<BigInt>) -> Self {
        let mut f = CanonicalForm::zero();
        f.add_term(word, coeff.into());
        f
    }

    pub fn generator(g: u16) -> Self {
        CanonicalForm::monomial(Word::letter(g), 1)
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Word, BigInt)>,
    {
        let mut f = CanonicalForm::zero();
        for (w, c) in terms {
            f.add_term(w, c);
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &Word) -> Option<&BigInt> {
        self.terms.get(word)
    }

    /// Maximum word length; 0 for the zero form.
    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, Word::len)
    }

    /// Generators occurring in some word, ascending.
    pub fn support_generators(&self) -> Vec<u16> {
        let mut seen: Vec<u16> = self
            .terms
            .keys()
            .flat_map(|w| w.letters().iter().copied())
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen
    }

    pub fn add_term(&mut self, word: Word, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, k: &BigInt, other: &CanonicalForm) {
        if k.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), k * c);
        }
    }

    pub fn scale(&self, k: &BigInt) -> CanonicalForm {
        if k.is_zero() {
            return CanonicalForm::zero();
        }
        CanonicalForm {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &CanonicalForm) -> CanonicalForm {
        let mut out = CanonicalForm::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }

    /// `self^k` for k >= 1.
    pub fn pow(&self, k: u32) -> CanonicalForm {
        assert!(k >= 1, "no zeroth power in a rng");
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `xy - yx`.
    pub fn commutator(&self, other: &CanonicalForm) -> CanonicalForm {
        let mut out = self.mul(other);
        out.add_scaled(&BigInt::from(-1), &other.mul(self));
        out
    }

    /// `u · self · v` with optional contexts.
    pub fn shift(&self, left: Option<&Word>, right: Option<&Word>) -> CanonicalForm {
        CanonicalForm {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.surround(left, right), c.clone()))
                .collect(),
        }
    }

    /// Evaluates the form under the ring homomorphism sending generator `i`
    /// to `images[i]`.
    pub fn substitute(&self, images: &[CanonicalForm]) -> CanonicalForm {
        let mut out = CanonicalForm::zero();
        for (w, c) in &self.terms {
            let mut letters = w.letters().iter();
            let first = letters.next().expect("words are nonempty");
            let mut prod = images[*first as usize].clone();
            for g in letters {
                if prod.is_zero() {
                    break;
                }
                prod = prod.mul(&images[*g as usize]);
            }
            out.add_scaled(c, &prod);
        }
        out
    }

    /// Equal, or equal after negation.
    pub fn equal_up_to_sign(&self, other: &CanonicalForm) -> bool {
        if self.terms.len() != other.terms.len() {
            return false;
        }
        self == other || self.terms.iter().zip(&other.terms).all(|((wa, ca), (wb, cb))| wa == wb && *ca == -cb)
    }

    /// Rendering in the fixed word order, e.g. `x^2*y - 2*x*y*x + y*x^2`.
    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let word = w.display(alphabet);
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if mag.is_one() {
                out.push_str(&word);
            } else {
                out.push_str(&format!("{mag}*{word}"));
            }
        }
        out
    }
}

impl std::fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl Add for &CanonicalForm {
    type Output = CanonicalForm;
    fn add(self, rhs: &CanonicalForm) -> CanonicalForm {
        let mut out = self.clone();
        out.add_scaled(&BigInt::one(), rhs);
        out
    }
}

impl Sub for &CanonicalForm {
    type Output = CanonicalForm;
    fn sub(self, rhs: &CanonicalForm) -> CanonicalForm {
        let mut out = self.clone();
        out.add_scaled(&BigInt::from(-1), rhs);
        out
    }
}

impl Mul for &CanonicalForm {
    type Output = CanonicalForm;
    fn mul(self, rhs: &CanonicalForm) -> CanonicalForm {
        CanonicalForm::mul(self, rhs)
    }
}

impl Neg for &CanonicalForm {
    type Output = CanonicalForm;
    fn neg(self) -> CanonicalForm {
        self.scale(&BigInt::from(-1))
    }
}

/// Sum of two forms.
pub fn cf_add(a: &CanonicalForm, b: &CanonicalForm) -> CanonicalForm {
    a + b
}

/// Integer multiple of a form.
pub fn cf_scale(k: impl Into<BigInt>, a: &CanonicalForm) -> CanonicalForm {
    a.scale(&k.into())
}

/// Product of two forms (bilinear extension of word concatenation).
pub fn cf_mul(a: &CanonicalForm, b: &CanonicalForm) -> CanonicalForm {
    a.mul(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[u16]) -> Word {
        Word::new(letters.to_vec()).unwrap()
    }

    fn form(terms: &[(&[u16], i64)]) -> CanonicalForm {
        CanonicalForm::from_terms(terms.iter().map(|(l, c)| (w(l), BigInt::from(*c))))
    }

    #[test]
    fn mul_of_monomials() {
        let x = form(&[(&[0], 1)]);
        let y2 = form(&[(&[1], 2)]);
        assert_eq!(cf_mul(&x, &y2), form(&[(&[0, 1], 2)]));
    }

    #[test]
    fn zero_annihilates() {
        let a = form(&[(&[0], 3), (&[1, 0], -1)]);
        assert!(cf_mul(&a, &CanonicalForm::zero()).is_zero());
        assert!(cf_mul(&CanonicalForm::zero(), &a).is_zero());
    }

    #[test]
    fn bilinear_expansion() {
        let a = form(&[(&[0], 1), (&[1], 1)]);
        let b = form(&[(&[0], 1), (&[1], -1)]);
        assert_eq!(
            cf_mul(&a, &b),
            form(&[(&[0, 0], 1), (&[0, 1], -1), (&[1, 0], 1), (&[1, 1], -1)])
        );
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = form(&[(&[0, 1], 1)]);
        assert!(cf_add(&a, &cf_scale(-1, &a)).is_zero());
        assert!(cf_scale(0, &a).is_zero());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(form(&[(&[0, 1, 0], -2)]).degree(), 3);
        assert_eq!(CanonicalForm::zero().degree(), 0);
    }

    #[test]
    fn display_in_word_order() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        assert_eq!(form(&[(&[1, 0], -1), (&[0, 1], 1)]).display(&a), "x*y - y*x");
        assert_eq!(CanonicalForm::zero().display(&a), "0");
        assert_eq!(form(&[(&[0], -3)]).display(&a), "-3*x");
    }

    #[test]
    fn substitute_is_multiplicative() {
        // xy under x -> x + y, y -> y  gives  xy + yy
        let f = form(&[(&[0, 1], 1)]);
        let images = vec![form(&[(&[0], 1), (&[1], 1)]), form(&[(&[1], 1)])];
        assert_eq!(f.substitute(&images), form(&[(&[0, 1], 1), (&[1, 1], 1)]));
    }

    #[test]
    fn sign_equivalence() {
        let a = form(&[(&[0, 1], 1), (&[1, 0], -1)]);
        assert!(a.equal_up_to_sign(&cf_scale(-1, &a)));
        assert!(!a.equal_up_to_sign(&cf_scale(2, &a)));
    }
}
