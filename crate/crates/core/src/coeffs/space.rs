use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered list of distinct coordinate names. Cheap to clone; the list is
/// fixed for the lifetime of the value.
#[derive(Clone)]
pub struct Space(Arc<[String]>);

impl Space {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidSpace("at least one coordinate is required".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidSpace(format!("`{name}` is not a valid coordinate name")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidSpace(format!("coordinate `{name}` appears twice")));
            }
        }
        Ok(Space(names.into()))
    }

    /// Parses a comma-separated coordinate list such as `x,y,z`.
    pub fn parse(list: &str) -> Result<Self> {
        Self::new(list.split(',').map(str::trim))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0[index]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownCoordinate(name.to_string()))
    }

    pub(crate) fn ensure_same(&self, other: &Space) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                left: self.0.join(","),
                right: other.0.join(","),
            })
        }
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Space {}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_names() {
        assert!(Space::new(Vec::<String>::new()).is_err());
        assert!(Space::new(["x", "x"]).is_err());
        assert!(Space::new(["1x"]).is_err());
        assert!(Space::new(["x y"]).is_err());
    }

    #[test]
    fn parse_and_lookup() {
        let s = Space::parse("x, y,z").unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(s.index_of("y").unwrap(), 1);
        assert_eq!(s.index_of("w"), Err(Error::UnknownCoordinate("w".into())));
        assert_eq!(s, Space::new(["x", "y", "z"]).unwrap());
        assert_ne!(s, Space::new(["x", "y"]).unwrap());
    }
}
