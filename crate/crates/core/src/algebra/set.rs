use std::collections::BTreeSet;
use std::fmt;

use crate::error::{CoreError, Result};

/// Finite set of integers. Complements are taken relative to a [`Universe`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SetValue(pub BTreeSet<i64>);

impl SetValue {
    pub fn of(items: &[i64]) -> SetValue {
        SetValue(items.iter().copied().collect())
    }

    pub fn empty() -> SetValue {
        SetValue::default()
    }

    pub fn union(&self, o: &SetValue) -> SetValue {
        SetValue(self.0.union(&o.0).copied().collect())
    }

    pub fn intersection(&self, o: &SetValue) -> SetValue {
        SetValue(self.0.intersection(&o.0).copied().collect())
    }
}

impl fmt::Display for SetValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "{{}}");
        }
        let items: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// The declared ground set S for set-valued constructs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe(SetValue);

impl Universe {
    pub fn new(items: impl IntoIterator<Item = i64>) -> Universe {
        Universe(SetValue(items.into_iter().collect()))
    }

    /// The integer range lo..=hi.
    pub fn range(lo: i64, hi: i64) -> Universe {
        Universe::new(lo..=hi)
    }

    pub fn all(&self) -> &SetValue {
        &self.0
    }

    pub fn contains(&self, s: &SetValue) -> bool {
        s.0.is_subset(&self.0 .0)
    }

    pub fn complement(&self, s: &SetValue) -> Result<SetValue> {
        if !self.contains(s) {
            return Err(CoreError::Domain(format!("{s} is not a subset of the universe {}", self.0)));
        }
        Ok(SetValue(self.0 .0.difference(&s.0).copied().collect()))
    }
}
