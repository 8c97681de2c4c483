use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::group::AbelianGroupTable;
use super::ModelError;
use crate::algebra::CanonicalForm;
use crate::checker::Statement;

/// lcm(1..=16): every group exponent in range divides it.
const COEFF_MODULUS: u32 = 720_720;

/// Bound on variables in an evaluated statement.
pub const MAX_VARS: usize = 3;

/// A canonical form with coefficients reduced for evaluation in small rings.
#[derive(Debug, Clone)]
pub struct CompiledForm {
    terms: Vec<(Vec<u16>, u32)>,
}

impl CompiledForm {
    pub fn new(form: &CanonicalForm) -> CompiledForm {
        let modulus = BigInt::from(COEFF_MODULUS);
        let terms = form
            .terms()
            .map(|(w, c)| (w.letters().to_vec(), c.mod_floor(&modulus).to_u32().expect("reduced")))
            .filter(|(_, c)| *c != 0)
            .collect();
        CompiledForm { terms }
    }

    pub fn terms(&self) -> &[(Vec<u16>, u32)] {
        &self.terms
    }
}

/// Premise and conclusion differences of a statement, ready to evaluate.
#[derive(Debug, Clone)]
pub struct CompiledStatement {
    pub statement: Statement,
    pub premises: Vec<CompiledForm>,
    pub conclusion: CompiledForm,
}

impl CompiledStatement {
    pub fn new(statement: &Statement) -> Result<CompiledStatement, ModelError> {
        if statement.vars().len() > MAX_VARS {
            return Err(ModelError::TooManyVariables {
                name: statement.name().to_string(),
                count: statement.vars().len(),
            });
        }
        let (premises, conclusion) = statement.forms().map_err(|e| ModelError::Algebra(e.to_string()))?;
        Ok(CompiledStatement {
            statement: statement.clone(),
            premises: premises.iter().map(CompiledForm::new).collect(),
            conclusion: CompiledForm::new(&conclusion),
        })
    }

    pub fn var_count(&self) -> usize {
        self.statement.vars().len()
    }
}

/// A finite associative ring, not necessarily unital.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteRing {
    pub group: AbelianGroupTable,
    #[serde(rename = "multiplication")]
    pub mul: Vec<Vec<u8>>,
}

impl FiniteRing {
    pub fn order(&self) -> usize {
        self.group.order
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    pub fn is_commutative(&self) -> bool {
        let m = self.order();
        (0..m).all(|a| (0..m).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    /// Exhaustive associativity and two-sided distributivity check.
    pub fn verify(&self) -> bool {
        let m = self.order() as u8;
        let g = &self.group;
        for a in 0..m {
            for b in 0..m {
                let ab = self.mul(a, b);
                for c in 0..m {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c))
                        || self.mul(a, g.add(b, c)) != g.add(ab, self.mul(a, c))
                        || self.mul(g.add(a, b), c) != g.add(self.mul(a, c), self.mul(b, c))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn eval(&self, form: &CompiledForm, values: &[u8]) -> u8 {
        let mut acc = 0u8;
        for (word, k) in form.terms() {
            let mut v = values[word[0] as usize];
            for &l in &word[1..] {
                v = self.mul(v, values[l as usize]);
            }
            acc = self.group.add(acc, self.group.scale(*k, v));
        }
        acc
    }

    /// Whether the assignment satisfies the statement (vacuously if a premise fails).
    pub fn holds_at(&self, st: &CompiledStatement, values: &[u8]) -> bool {
        st.premises.iter().any(|p| self.eval(p, values) != 0) || self.eval(&st.conclusion, values) == 0
    }

    /// First assignment, in lexicographic order, violating the statement.
    pub fn counterexample(&self, st: &CompiledStatement) -> Option<Vec<u8>> {
        let n = st.var_count();
        let m = self.order();
        let mut values = vec![0u8; n];
        for idx in 0..m.pow(n as u32) {
            let mut r = idx;
            for slot in values.iter_mut().rev() {
                *slot = (r % m) as u8;
                r /= m;
            }
            if !self.holds_at(st, &values) {
                return Some(values);
            }
        }
        None
    }
}

/// Evaluates `statement` in `ring` over all assignments. Returns the first
/// violating assignment as (variable, element) pairs.
pub fn eval_axiom(ring: &FiniteRing, statement: &Statement) -> Result<Option<Vec<(String, u8)>>, ModelError> {
    let st = CompiledStatement::new(statement)?;
    Ok(ring
        .counterexample(&st)
        .map(|vals| statement.vars().iter().cloned().zip(vals).collect()))
}
