use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;

/// `K[x_1, …, x_ℓ]` together with the size `n` of the kept subring
/// `K[x_1, …, x_n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<F: Field> {
    field: F,
    names: Vec<String>,
    kept: usize,
}

impl<F: Field> PolyRing<F> {
    pub fn new<S: Into<String>>(field: F, names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        Self::with_kept(field, names.clone(), names.len())
    }

    pub fn with_kept(field: F, names: Vec<String>, kept: usize) -> Result<Arc<Self>> {
        if names.is_empty() {
            return Err(Error::InvalidInput("a ring needs at least one variable".into()));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate variable name {n}")));
            }
        }
        if kept > names.len() {
            return Err(Error::InvalidInput(format!(
                "kept count {kept} exceeds the {} variables",
                names.len()
            )));
        }
        Ok(Arc::new(PolyRing { field, names, kept }))
    }

    /// `K[x1..xn]` with the conventional names.
    pub fn standard(field: F, prefix: &str, nvars: usize) -> Result<Arc<Self>> {
        Self::new(field, (1..=nvars).map(|i| format!("{prefix}{i}")))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn kept(&self) -> usize {
        self.kept
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The subring on the first `keep` variables.
    pub fn subring(&self, keep: usize) -> Result<Arc<Self>> {
        Self::with_kept(self.field.clone(), self.names[..keep].to_vec(), keep)
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }
}
