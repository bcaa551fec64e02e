use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Ordered list of distinct variable names. The order fixes the monomial order.
#[derive(Clone)]
pub struct VarSet(Arc<[String]>);

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = HashSet::with_capacity(names.len());
        for n in &names {
            if n.is_empty() {
                return Err(Error::Validation("empty variable name".into()));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        Ok(VarSet(names.into()))
    }

    pub fn empty() -> Self {
        static EMPTY: OnceLock<VarSet> = OnceLock::new();
        EMPTY.get_or_init(|| VarSet(Arc::from(Vec::new()))).clone()
    }

    /// `x, y, z`.
    pub fn xyz() -> Self {
        static XYZ: OnceLock<VarSet> = OnceLock::new();
        XYZ.get_or_init(|| VarSet::new(["x", "y", "z"]).unwrap()).clone()
    }

    /// `X, Y, Z`, standing for `x², y², z²`.
    pub fn squared() -> Self {
        static SQ: OnceLock<VarSet> = OnceLock::new();
        SQ.get_or_init(|| VarSet::new(["X", "Y", "Z"]).unwrap()).clone()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    pub fn same_as(&self, other: &VarSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    /// Joint variable set: `self`'s order followed by `other`'s new names.
    ///
    /// Returns the union together with the position of every variable of
    /// `self` and of `other` inside it. Shared names must appear in the same
    /// relative order in both sets.
    pub fn union(&self, other: &VarSet) -> Result<(VarSet, Vec<usize>, Vec<usize>)> {
        if self.same_as(other) {
            let id: Vec<usize> = (0..self.len()).collect();
            return Ok((self.clone(), id.clone(), id));
        }
        let mut last = None;
        for name in other.names() {
            if let Some(pos) = self.index_of(name) {
                if last.is_some_and(|l| pos < l) {
                    return Err(Error::Ordering {
                        left: self.names().to_vec(),
                        right: other.names().to_vec(),
                    });
                }
                last = Some(pos);
            }
        }
        let mut names = self.names().to_vec();
        let mut right_map = Vec::with_capacity(other.len());
        for name in other.names() {
            match self.index_of(name) {
                Some(pos) => right_map.push(pos),
                None => {
                    right_map.push(names.len());
                    names.push(name.clone());
                }
            }
        }
        let left_map = (0..self.len()).collect();
        let joint = if names.len() == self.len() { self.clone() } else { VarSet(names.into()) };
        Ok((joint, left_map, right_map))
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for VarSet {}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}
