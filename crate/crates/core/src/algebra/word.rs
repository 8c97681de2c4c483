use std::cmp::Ordering;
use std::fmt;

use super::AlgebraError;

/// A named generator of the free rng. The index fixes its position in the
/// word order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub index: u16,
}

/// Ordered generator list. Names are distinct.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Alphabet {
    gens: Vec<Generator>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::default();
        for name in names {
            alphabet.push(name)?;
        }
        Ok(alphabet)
    }

    /// Appends a generator, returning its index.
    pub fn push(&mut self, name: impl Into<String>) -> Result<u16, AlgebraError> {
        let name = name.into();
        if name.is_empty() {
            return Err(AlgebraError::EmptyGeneratorName);
        }
        if self.index_of(&name).is_some() {
            return Err(AlgebraError::DuplicateGenerator(name));
        }
        let index = u16::try_from(self.gens.len()).map_err(|_| AlgebraError::AlphabetTooLarge)?;
        self.gens.push(Generator { name, index });
        Ok(index)
    }

    pub fn index_of(&self, name: &str) -> Option<u16> {
        self.gens.iter().find(|g| g.name == name).map(|g| g.index)
    }

    pub fn name(&self, index: u16) -> &str {
        &self.gens[index as usize].name
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.gens.iter().map(|g| g.name.as_str())
    }
}

/// A nonempty sequence of generator indices. There is no empty word: the
/// algebra has no unity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<u16>);

impl Word {
    pub fn new(letters: Vec<u16>) -> Option<Word> {
        if letters.is_empty() {
            None
        } else {
            Some(Word(letters))
        }
    }

    pub fn letter(g: u16) -> Word {
        Word(vec![g])
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; present for clippy's sake.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `left · self · right` where either context may be absent.
    pub fn surround(&self, left: Option<&Word>, right: Option<&Word>) -> Word {
        let extra = left.map_or(0, Word::len) + right.map_or(0, Word::len);
        let mut letters = Vec::with_capacity(self.0.len() + extra);
        if let Some(l) = left {
            letters.extend_from_slice(&l.0);
        }
        letters.extend_from_slice(&self.0);
        if let Some(r) = right {
            letters.extend_from_slice(&r.0);
        }
        Word(letters)
    }

    /// Renders as `x^2*y*x`, collapsing runs into powers.
    pub fn display(&self, alphabet: &Alphabet) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == g {
                run += 1;
            }
            let name = alphabet.name(g);
            if run == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{run}"));
            }
            i += run;
        }
        parts.join("*")
    }

    /// All words of exactly `len` letters over `alphabet_size` generators, in
    /// lexicographic order.
    pub fn all_of_length(alphabet_size: usize, len: usize) -> Vec<Word> {
        if len == 0 || alphabet_size == 0 {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(alphabet_size.pow(len as u32));
        let mut current = vec![0u16; len];
        loop {
            out.push(Word(current.clone()));
            let mut pos = len;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if (current[pos] as usize) + 1 < alphabet_size {
                    current[pos] += 1;
                    for slot in current.iter_mut().skip(pos + 1) {
                        *slot = 0;
                    }
                    break;
                }
            }
        }
    }
}

/// Degree-lexicographic: shorter words first, ties broken by generator index.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_word_is_unconstructible() {
        assert!(Word::new(vec![]).is_none());
    }

    #[test]
    fn deglex_order() {
        let x = Word::letter(0);
        let y = Word::letter(1);
        let xy = x.concat(&y);
        let yx = y.concat(&x);
        let xxy = x.concat(&xy);
        assert!(x < y && y < xy && xy < yx && yx < xxy);
    }

    #[test]
    fn display_collapses_runs() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let w = Word::new(vec![0, 0, 1, 0]).unwrap();
        assert_eq!(w.display(&a), "x^2*y*x");
    }

    #[test]
    fn duplicate_generators_rejected() {
        assert!(matches!(
            Alphabet::new(["x", "x"]),
            Err(AlgebraError::DuplicateGenerator(_))
        ));
    }

    #[test]
    fn words_of_length() {
        let ws = Word::all_of_length(2, 3);
        assert_eq!(ws.len(), 8);
        assert!(ws.windows(2).all(|p| p[0] < p[1]));
    }
}
