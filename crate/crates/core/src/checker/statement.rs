use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{normalize, AlgebraError, Alphabet, CanonicalForm, Expression};
use crate::syntax::{format_equation, Equation, StatementSyntax};

/// Universally quantified equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub vars: Vec<String>,
    pub eq: Equation,
}

/// Horn clause: equation premises imply an equation, for all values of the
/// variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalRule {
    pub name: String,
    pub vars: Vec<String>,
    pub premises: Vec<Equation>,
    pub conclusion: Equation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Identity(Identity),
    Rule(ConditionalRule),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstitutionError {
    #[error("no binding for variable `{0}`")]
    Missing(String),
    #[error("`{0}` is not a variable of the cited statement")]
    Unknown(String),
    #[error("variable `{0}` is bound twice")]
    Duplicate(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl Statement {
    /// Builds a statement whose variables are those occurring in it, in order
    /// of first occurrence.
    pub fn from_syntax(name: impl Into<String>, st: &StatementSyntax) -> Statement {
        let vars = st.vars();
        Statement::with_vars(name, vars, st.premises.clone(), st.conclusion.clone())
    }

    pub fn with_vars(name: impl Into<String>, vars: Vec<String>, premises: Vec<Equation>, conclusion: Equation) -> Statement {
        let name = name.into();
        if premises.is_empty() {
            Statement::Identity(Identity { name, vars, eq: conclusion })
        } else {
            Statement::Rule(ConditionalRule {
                name,
                vars,
                premises,
                conclusion,
            })
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Statement::Identity(i) => &i.name,
            Statement::Rule(r) => &r.name,
        }
    }

    pub fn vars(&self) -> &[String] {
        match self {
            Statement::Identity(i) => &i.vars,
            Statement::Rule(r) => &r.vars,
        }
    }

    pub fn premises(&self) -> &[Equation] {
        match self {
            Statement::Identity(_) => &[],
            Statement::Rule(r) => &r.premises,
        }
    }

    pub fn conclusion(&self) -> &Equation {
        match self {
            Statement::Identity(i) => &i.eq,
            Statement::Rule(r) => &r.conclusion,
        }
    }

    pub fn is_rule(&self) -> bool {
        matches!(self, Statement::Rule(_))
    }

    pub fn to_syntax(&self) -> StatementSyntax {
        StatementSyntax {
            premises: self.premises().to_vec(),
            conclusion: self.conclusion().clone(),
        }
    }

    pub fn display(&self) -> String {
        let concl = format_equation(self.conclusion());
        if self.premises().is_empty() {
            concl
        } else {
            let ps: Vec<String> = self.premises().iter().map(format_equation).collect();
            format!("{} => {concl}", ps.join(" & "))
        }
    }

    pub fn own_alphabet(&self) -> Alphabet {
        Alphabet::new(self.vars().iter().cloned()).expect("statement variables are distinct")
    }

    /// Canonical differences of premises and conclusion over the statement's
    /// own variables.
    pub fn forms(&self) -> Result<(Vec<CanonicalForm>, CanonicalForm), AlgebraError> {
        let a = self.own_alphabet();
        let premises = self
            .premises()
            .iter()
            .map(|p| normalize(&p.difference(), &a))
            .collect::<Result<Vec<_>, _>>()?;
        let concl = normalize(&self.conclusion().difference(), &a)?;
        Ok((premises, concl))
    }

    /// Instantiates premise and conclusion differences under `sigma`, with
    /// the images normalized over `target`.
    pub fn instantiate(
        &self,
        sigma: &BTreeMap<String, Expression>,
        target: &Alphabet,
    ) -> Result<(Vec<CanonicalForm>, CanonicalForm), SubstitutionError> {
        for k in sigma.keys() {
            if !self.vars().contains(k) {
                return Err(SubstitutionError::Unknown(k.clone()));
            }
        }
        let images = self
            .vars()
            .iter()
            .map(|v| {
                let e = sigma.get(v).ok_or_else(|| SubstitutionError::Missing(v.clone()))?;
                Ok(normalize(e, target)?)
            })
            .collect::<Result<Vec<_>, SubstitutionError>>()?;
        let (premises, concl) = self.forms()?;
        Ok((
            premises.iter().map(|p| p.substitute(&images)).collect(),
            concl.substitute(&images),
        ))
    }

    /// Alpha-equivalence up to a bijective renaming of variables, with each
    /// equation compared by its canonical difference up to sign and premises
    /// compared as a multiset.
    pub fn matches(&self, other: &Statement) -> bool {
        if self.is_rule() != other.is_rule()
            || self.vars().len() != other.vars().len()
            || self.premises().len() != other.premises().len()
        {
            return false;
        }
        let Ok((their_premises, their_concl)) = other.forms() else {
            return false;
        };
        let Ok((my_premises, my_concl)) = self.forms() else {
            return false;
        };
        let n = self.vars().len();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let images: Vec<CanonicalForm> = perm.iter().map(|&j| CanonicalForm::generator(j as u16)).collect();
            let concl = my_concl.substitute(&images);
            if concl.equal_up_to_sign(&their_concl) {
                let mine: Vec<CanonicalForm> = my_premises.iter().map(|p| p.substitute(&images)).collect();
                if multiset_match(&mine, &their_premises) {
                    return true;
                }
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }
}

fn multiset_match(a: &[CanonicalForm], b: &[CanonicalForm]) -> bool {
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        if let Some(j) = (0..b.len()).find(|&j| !used[j] && b[j].equal_up_to_sign(x)) {
            used[j] = true;
            true
        } else {
            false
        }
    })
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
