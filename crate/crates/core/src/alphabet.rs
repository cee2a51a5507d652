//! Terminal alphabets, plain or equipped with a formal-inverse involution.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// An interned terminal symbol.
///
/// In a group alphabet, letter `2k` is the generator `a_k` and `2k + 1` its
/// formal inverse, so the involution is `id ^ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub u32);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    /// Base names. For a group alphabet these are the generators only.
    base: Vec<String>,
    group: bool,
    lookup: HashMap<String, Letter>,
}

fn check_name(name: &str) -> Result<()> {
    let bad = name.is_empty()
        || name.chars().any(|c| c.is_whitespace() || c == '#' || c == ',')
        || name == "eps";
    if bad {
        return Err(Error::InvalidAlphabet(format!("bad letter name `{name}`")));
    }
    Ok(())
}

impl Alphabet {
    /// A plain alphabet with the given distinct letter names.
    pub fn plain<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let base: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut lookup = HashMap::new();
        for (i, name) in base.iter().enumerate() {
            check_name(name)?;
            if lookup.insert(name.clone(), Letter(i as u32)).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate letter `{name}`")));
            }
        }
        Ok(Alphabet {
            base,
            group: false,
            lookup,
        })
    }

    /// The group alphabet `{a_i, a_i'}` on the given generator names.
    pub fn group<I, S>(generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let base: Vec<String> = generators.into_iter().map(Into::into).collect();
        let mut lookup = HashMap::new();
        for (i, name) in base.iter().enumerate() {
            check_name(name)?;
            if name.contains('\'') {
                return Err(Error::InvalidAlphabet(format!(
                    "generator `{name}` may not contain an apostrophe"
                )));
            }
            let dup = lookup.insert(name.clone(), Letter(2 * i as u32)).is_some()
                || lookup
                    .insert(format!("{name}'"), Letter(2 * i as u32 + 1))
                    .is_some();
            if dup {
                return Err(Error::InvalidAlphabet(format!("duplicate generator `{name}`")));
            }
        }
        Ok(Alphabet {
            base,
            group: true,
            lookup,
        })
    }

    /// Group alphabet on generators named `a1 .. am`.
    pub fn numbered_group(rank: usize) -> Self {
        Alphabet::group((1..=rank).map(|i| format!("a{i}"))).expect("generated names are valid")
    }

    pub fn is_group(&self) -> bool {
        self.group
    }

    /// Number of generators of a group alphabet, or letters of a plain one.
    pub fn rank(&self) -> usize {
        self.base.len()
    }

    /// Total number of letters (2m for a group alphabet of rank m).
    pub fn len(&self) -> usize {
        if self.group {
            2 * self.base.len()
        } else {
            self.base.len()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn base_names(&self) -> &[String] {
        &self.base
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.len() as u32).map(Letter)
    }

    pub fn lookup(&self, name: &str) -> Result<Letter> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    pub fn name(&self, letter: Letter) -> String {
        if self.group {
            let base = &self.base[letter.index() / 2];
            if letter.0 % 2 == 1 {
                format!("{base}'")
            } else {
                base.clone()
            }
        } else {
            self.base[letter.index()].clone()
        }
    }

    /// The formal inverse, if this is a group alphabet.
    pub fn bar(&self, letter: Letter) -> Option<Letter> {
        self.group.then_some(Letter(letter.0 ^ 1))
    }

    /// The generator `a_i` (zero-based `i`) of a group alphabet.
    pub fn generator(&self, i: usize) -> Letter {
        debug_assert!(self.group);
        Letter(2 * i as u32)
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.index() < self.len()
    }

    /// Parse a whitespace-separated word of letter names.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>> {
        text.split_whitespace().map(|t| self.lookup(t)).collect()
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        word.iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Smallest alphabet containing both, preserving `self`'s letter ids.
    ///
    /// Returns the union and the translation of `other`'s letters into it.
    pub fn union(&self, other: &Alphabet) -> Result<(Alphabet, Vec<Letter>)> {
        if self.group != other.group {
            return Err(Error::InvalidAlphabet(
                "cannot merge a group alphabet with a plain one".into(),
            ));
        }
        let mut base = self.base.clone();
        for name in &other.base {
            if !base.contains(name) {
                base.push(name.clone());
            }
        }
        let merged = if self.group {
            Alphabet::group(base)?
        } else {
            Alphabet::plain(base)?
        };
        let map = other
            .letters()
            .map(|l| merged.lookup(&other.name(l)))
            .collect::<Result<Vec<_>>>()?;
        Ok((merged, map))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kw = if self.group { "group-alphabet" } else { "alphabet" };
        write!(f, "{kw}")?;
        for name in &self.base {
            write!(f, " {name}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involution_is_fixed_point_free() {
        let a = Alphabet::group(["a", "b"]).unwrap();
        assert_eq!(a.len(), 4);
        for l in a.letters() {
            let b = a.bar(l).unwrap();
            assert_ne!(l, b);
            assert_eq!(a.bar(b), Some(l));
        }
        assert_eq!(a.name(Letter(3)), "b'");
        assert_eq!(a.lookup("a'").unwrap(), Letter(1));
    }

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(Alphabet::plain(["a", "a"]).is_err());
        assert!(Alphabet::plain([""]).is_err());
        assert!(Alphabet::group(["a'"]).is_err());
        assert!(Alphabet::plain(["x y"]).is_err());
    }

    #[test]
    fn union_keeps_left_ids() {
        let a = Alphabet::plain(["a", "b"]).unwrap();
        let b = Alphabet::plain(["c", "a"]).unwrap();
        let (u, map) = a.union(&b).unwrap();
        assert_eq!(u.len(), 3);
        assert_eq!(map, vec![Letter(2), Letter(0)]);
    }
}
