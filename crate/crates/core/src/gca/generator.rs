use std::fmt;

/// Where a generator came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    Base,
    /// `s^level parent`, of degree `degree(parent) - level`.
    Suspended {
        level: u32,
        parent: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    pub provenance: Provenance,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        Generator {
            name: name.into(),
            degree,
            provenance: Provenance::Base,
        }
    }

    pub fn suspended(name: impl Into<String>, parent: &Generator, level: u32) -> Self {
        Generator {
            name: name.into(),
            degree: parent.degree - i64::from(level),
            provenance: Provenance::Suspended {
                level,
                parent: parent.name.clone(),
            },
        }
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Generator {
            name: name.into(),
            ..self.clone()
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }

    pub fn is_even(&self) -> bool {
        !self.is_odd()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.degree)
    }
}
