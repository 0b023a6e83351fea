use alloc::{format, string::String, sync::Arc, vec::Vec};
use core::fmt;

/// A polynomial indeterminate.
///
/// The derived `Ord` is the variable ranking: a smaller value ranks higher.
/// Auxiliary variables rank above every matrix entry, and matrix entries are
/// ranked by `(generator, row, col)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VariableId {
    Auxiliary { tag: String, index: u32 },
    /// Entry `(row, col)` of generic matrix `generator`, all 1-based.
    Entry { generator: u32, row: u32, col: u32 },
}

impl VariableId {
    pub fn entry(row: u32, col: u32, generator: u32) -> Self {
        VariableId::Entry {
            generator,
            row,
            col,
        }
    }

    pub fn auxiliary(tag: &str, index: u32) -> Self {
        VariableId::Auxiliary {
            tag: String::from(tag),
            index,
        }
    }

    pub fn is_entry(&self) -> bool {
        matches!(self, VariableId::Entry { .. })
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariableId::Entry {
                generator,
                row,
                col,
            } => write!(f, "x[{row},{col},{generator}]"),
            VariableId::Auxiliary { tag, index: 0 } => f.write_str(tag),
            VariableId::Auxiliary { tag, index } => write!(f, "{tag}{index}"),
        }
    }
}

/// An ordered, duplicate-free set of variables shared by many polynomials.
/// Position 0 holds the highest-ranked variable.
#[derive(Clone, Debug)]
pub struct Variables(Arc<[VariableId]>);

impl Variables {
    pub fn new(vars: impl IntoIterator<Item = VariableId>) -> Self {
        let mut v: Vec<VariableId> = vars.into_iter().collect();
        v.sort();
        v.dedup();
        Variables(v.into())
    }

    pub fn empty() -> Self {
        Variables::new(core::iter::empty())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, index: usize) -> &VariableId {
        &self.0[index]
    }

    pub fn iter(&self) -> core::slice::Iter<'_, VariableId> {
        self.0.iter()
    }

    pub fn index_of(&self, var: &VariableId) -> Option<usize> {
        self.0.binary_search(var).ok()
    }

    pub fn contains(&self, var: &VariableId) -> bool {
        self.index_of(var).is_some()
    }

    /// This set plus `extra`.
    pub fn with(&self, extra: impl IntoIterator<Item = VariableId>) -> Self {
        Variables::new(self.0.iter().cloned().chain(extra))
    }

    /// This set minus `drop`.
    pub fn without(&self, drop: &[VariableId]) -> Self {
        Variables::new(self.0.iter().filter(|v| !drop.contains(v)).cloned())
    }

    /// An auxiliary variable with the given tag that is not yet in the set.
    pub fn fresh_auxiliary(&self, tag: &str) -> VariableId {
        let next = self
            .0
            .iter()
            .filter_map(|v| match v {
                VariableId::Auxiliary { tag: t, index } if t == tag => Some(index + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        VariableId::auxiliary(tag, next)
    }

    /// Comma-separated ranking, highest first. Used in dump headers.
    pub fn ranking(&self) -> String {
        let names: Vec<String> = self.0.iter().map(|v| format!("{v}")).collect();
        names.join(" > ")
    }
}

impl PartialEq for Variables {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Variables {}
