use std::collections::HashMap;

use thiserror::Error;

use super::statement::Statement;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Checked from the named script.
    Verified { script: String },
    /// Declared without proof, e.g. from the command line.
    Assumed,
}

/// A statement together with the ambient context it was proved under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisteredTheorem {
    pub statement: Statement,
    pub context: Vec<Statement>,
    pub provenance: Provenance,
    pub dependencies: Vec<String>,
}

impl RegisteredTheorem {
    pub fn name(&self) -> &str {
        self.statement.name()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("`{0}` is already registered")]
    Duplicate(String),
}

/// Insertion-ordered table of theorems by name.
#[derive(Debug, Clone, Default)]
pub struct TheoremRegistry {
    entries: Vec<RegisteredTheorem>,
    index: HashMap<String, usize>,
}

impl TheoremRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, thm: RegisteredTheorem) -> Result<(), RegistryError> {
        let name = thm.name().to_string();
        if self.index.contains_key(&name) {
            return Err(RegistryError::Duplicate(name));
        }
        self.index.insert(name, self.entries.len());
        self.entries.push(thm);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&RegisteredTheorem> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &RegisteredTheorem> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
