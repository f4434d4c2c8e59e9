//! Ordered variable lists.
//!
//! A [`VarOrder`] fixes the ambient polynomial ring: variable `0` is the
//! smallest (the free parameter of a one-dimensional chain) and later
//! indices are algebraically "above" earlier ones. Chains, points and all
//! rendered output follow this order.

use std::fmt;

/// An ordered list of distinct variable names, smallest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarOrder {
    names: Vec<String>,
}

/// Error building a [`VarOrder`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarOrderError {
    Empty,
    Duplicate(String),
    BadName(String),
}

impl fmt::Display for VarOrderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarOrderError::Empty => write!(f, "variable list is empty"),
            VarOrderError::Duplicate(n) => write!(f, "duplicate variable `{n}`"),
            VarOrderError::BadName(n) => write!(f, "invalid variable name `{n}`"),
        }
    }
}

impl std::error::Error for VarOrderError {}

impl VarOrder {
    /// Build an order from names listed smallest-first. Names must be
    /// non-empty, start with a letter, and continue with letters, digits or
    /// underscores.
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Self, VarOrderError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(VarOrderError::Empty);
        }
        for n in &names {
            let mut bytes = n.bytes();
            let ok = matches!(bytes.next(), Some(b) if b.is_ascii_alphabetic())
                && bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_');
            if !ok {
                return Err(VarOrderError::BadName(n.clone()));
            }
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(VarOrderError::Duplicate(n.clone()));
            }
        }
        Ok(VarOrder { names })
    }

    /// Number of variables.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Index of `name`, if present.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Name of variable `i`. Panics if out of range.
    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}
