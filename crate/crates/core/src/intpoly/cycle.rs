use std::fmt;

use serde::{Deserialize, Serialize};

/// Multiset of cycle lengths (or irreducible-factor degrees), kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable();
        CycleType(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn contains(&self, len: usize) -> bool {
        self.0.binary_search(&len).is_ok()
    }

    pub fn multiplicity(&self, len: usize) -> usize {
        self.0.iter().filter(|&&p| p == len).count()
    }

    /// Sign of a permutation with this cycle type: even iff the number of
    /// even-length cycles is even.
    pub fn is_even_permutation(&self) -> bool {
        self.0.iter().filter(|&&p| p % 2 == 0).count() % 2 == 0
    }
}

impl From<Vec<usize>> for CycleType {
    fn from(parts: Vec<usize>) -> Self {
        CycleType::new(parts)
    }
}

impl From<CycleType> for Vec<usize> {
    fn from(t: CycleType) -> Self {
        t.0
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_serialized_as_list() {
        let t = CycleType::new(vec![4, 2]);
        assert_eq!(t.parts(), &[2, 4]);
        assert_eq!(t.total(), 6);
        assert_eq!(serde_json::to_string(&t).unwrap(), "[2,4]");
        let back: CycleType = serde_json::from_str("[4,2]").unwrap();
        assert_eq!(back, t);
        assert_eq!(t.to_string(), "[2,4]");
        assert!(t.is_even_permutation());
        assert!(!CycleType::new(vec![6]).is_even_permutation());
    }
}
