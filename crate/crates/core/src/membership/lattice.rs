//! Integer solvability of `Σ c_i · column_i = target`.
//!
//! Columns are inserted one at a time into an echelon lattice basis keyed by
//! leading row. When two vectors share a leading row and neither coefficient
//! divides the other, the pair is replaced through the extended-gcd
//! unimodular transform, so the basis always spans exactly the integer
//! lattice of the columns seen so far. Each basis vector carries its
//! combination of original columns, which becomes the witness.

use std::collections::BTreeSet;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{CanonicalForm, Word};

/// Sparse integer vector, sorted by index, no zero entries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseVec(Vec<(u32, BigInt)>);

impl SparseVec {
    pub fn unit(i: u32) -> Self {
        SparseVec(vec![(i, BigInt::one())])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lead(&self) -> Option<(u32, &BigInt)> {
        self.0.last().map(|(i, c)| (*i, c))
    }

    pub fn entries(&self) -> &[(u32, BigInt)] {
        &self.0
    }

    /// `a·x + b·y`
    pub fn lincomb(a: &BigInt, x: &SparseVec, b: &BigInt, y: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(x.0.len() + y.0.len());
        let (mut i, mut j) = (0, 0);
        let push = |out: &mut Vec<(u32, BigInt)>, k: u32, v: BigInt| {
            if !v.is_zero() {
                out.push((k, v));
            }
        };
        while i < x.0.len() || j < y.0.len() {
            match (x.0.get(i), y.0.get(j)) {
                (Some((ki, vi)), Some((kj, vj))) if ki == kj => {
                    push(&mut out, *ki, a * vi + b * vj);
                    i += 1;
                    j += 1;
                }
                (Some((ki, vi)), Some((kj, _))) if ki < kj => {
                    push(&mut out, *ki, a * vi);
                    i += 1;
                }
                (Some((ki, vi)), None) => {
                    push(&mut out, *ki, a * vi);
                    i += 1;
                }
                (_, Some((kj, vj))) => {
                    push(&mut out, *kj, b * vj);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SparseVec(out)
    }

    pub fn negate(&mut self) {
        for (_, c) in &mut self.0 {
            *c = -std::mem::take(c);
        }
    }

    /// `self + k·other`
    pub fn axpy(&self, k: &BigInt, other: &SparseVec) -> SparseVec {
        SparseVec::lincomb(&BigInt::one(), self, k, other)
    }
}

struct Pivot {
    vec: SparseVec,
    combo: SparseVec,
}

/// Echelon basis of an integer lattice with provenance tracking.
pub struct LatticeBasis {
    pivots: HashMap<u32, Pivot>,
}

impl Default for LatticeBasis {
    fn default() -> Self {
        Self::new()
    }
}

impl LatticeBasis {
    pub fn new() -> Self {
        LatticeBasis { pivots: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn insert(&mut self, mut vec: SparseVec, mut combo: SparseVec) {
        loop {
            let Some((lead, b)) = vec.lead() else {
                return;
            };
            let b = b.clone();
            let Some(p) = self.pivots.get_mut(&lead) else {
                self.pivots.insert(lead, Pivot { vec, combo });
                return;
            };
            let a = p.vec.lead().expect("pivots are nonzero").1.clone();
            if b.is_multiple_of(&a) {
                let q = -(&b / &a);
                vec = vec.axpy(&q, &p.vec);
                combo = combo.axpy(&q, &p.combo);
                continue;
            }
            let eg = a.extended_gcd(&b);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let ag = &a / &g;
            let bg = &b / &g;
            // [s t; -b/g a/g] has determinant 1.
            let mut new_vec = SparseVec::lincomb(&s, &p.vec, &t, &vec);
            let mut new_combo = SparseVec::lincomb(&s, &p.combo, &t, &combo);
            let rest_vec = SparseVec::lincomb(&-&bg, &p.vec, &ag, &vec);
            let rest_combo = SparseVec::lincomb(&-&bg, &p.combo, &ag, &combo);
            if new_vec.lead().is_some_and(|(_, c)| c.is_negative()) {
                new_vec.negate();
                new_combo.negate();
            }
            p.vec = new_vec;
            p.combo = new_combo;
            vec = rest_vec;
            combo = rest_combo;
        }
    }

    /// Coefficients on the original columns expressing `target`, if it lies in
    /// the lattice.
    pub fn express(&self, target: &SparseVec) -> Option<SparseVec> {
        let mut rem = target.clone();
        let mut acc = SparseVec::default();
        loop {
            let Some((lead, b)) = rem.lead() else {
                return Some(acc);
            };
            let p = self.pivots.get(&lead)?;
            let a = p.vec.lead().expect("pivots are nonzero").1;
            if !b.is_multiple_of(a) {
                return None;
            }
            let q = b / a;
            rem = rem.axpy(&-&q, &p.vec);
            acc = acc.axpy(&q, &p.combo);
        }
    }
}

/// Row indexing shared by the target and all columns: words sorted in the
/// degree-lexicographic order, so leading rows are highest words.
pub struct RowIndex {
    rows: HashMap<Word, u32>,
}

impl RowIndex {
    pub fn new<'a, I>(forms: I) -> Self
    where
        I: IntoIterator<Item = &'a CanonicalForm>,
    {
        let mut words = BTreeSet::new();
        for f in forms {
            for (w, _) in f.terms() {
                words.insert(w.clone());
            }
        }
        RowIndex {
            rows: words.into_iter().enumerate().map(|(i, w)| (w, i as u32)).collect(),
        }
    }

    pub fn vector(&self, f: &CanonicalForm) -> SparseVec {
        let mut v: Vec<(u32, BigInt)> = f.terms().map(|(w, c)| (self.rows[w], c.clone())).collect();
        v.sort_by_key(|(i, _)| *i);
        SparseVec(v)
    }
}

/// Finds integers `c` with `Σ c_i · columns[i] = target`, or `None` if no
/// integer solution exists.
pub fn solve_integer_combination(target: &CanonicalForm, columns: &[CanonicalForm]) -> Option<Vec<BigInt>> {
    let rows = RowIndex::new(std::iter::once(target).chain(columns));
    let mut basis = LatticeBasis::new();
    for (i, c) in columns.iter().enumerate() {
        basis.insert(rows.vector(c), SparseVec::unit(i as u32));
    }
    let combo = basis.express(&rows.vector(target))?;
    let mut out = vec![BigInt::zero(); columns.len()];
    for (i, c) in combo.entries() {
        out[*i as usize] = c.clone();
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: &[u16]) -> Word {
        Word::new(l.to_vec()).unwrap()
    }

    fn mono(l: &[u16], c: i64) -> CanonicalForm {
        CanonicalForm::monomial(w(l), c)
    }

    #[test]
    fn scalar_multiple() {
        let sol = solve_integer_combination(&mono(&[0, 1], 2), &[mono(&[0, 1], 1)]).unwrap();
        assert_eq!(sol, vec![BigInt::from(2)]);
    }

    #[test]
    fn not_integer_solvable() {
        assert!(solve_integer_combination(&mono(&[0, 1], 1), &[mono(&[0, 1], 2)]).is_none());
    }

    #[test]
    fn gcd_combination() {
        // 6x and 10x generate 2x: 4x is reachable, 3x is not.
        let cols = [mono(&[0], 6), mono(&[0], 10)];
        let sol = solve_integer_combination(&mono(&[0], 4), &cols).unwrap();
        let mut check = CanonicalForm::zero();
        for (c, col) in sol.iter().zip(&cols) {
            check.add_scaled(c, col);
        }
        assert_eq!(check, mono(&[0], 4));
        assert!(solve_integer_combination(&mono(&[0], 3), &cols).is_none());
    }

    #[test]
    fn zero_target_trivial() {
        let sol = solve_integer_combination(&CanonicalForm::zero(), &[mono(&[0], 2)]).unwrap();
        assert!(sol.iter().all(Zero::is_zero));
    }

    #[test]
    fn lincomb_merges() {
        let x = SparseVec(vec![(0, 1.into()), (2, 3.into())]);
        let y = SparseVec(vec![(1, 1.into()), (2, 1.into())]);
        let z = SparseVec::lincomb(&1.into(), &x, &(-3).into(), &y);
        assert_eq!(z, SparseVec(vec![(0, 1.into()), (1, (-3).into())]));
    }
}
