//! Handlebody and Heegaard membership for words in Dehn twist generators
//! acting on `F_2g = <a_1..a_g, b_1..b_g>`.

use std::collections::BTreeMap;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::freegroup::FreeGroup;
use crate::query::project;

use super::endo::{parse_map_line, Endomorphism, LeveledFamily};

type Changes = Vec<(usize, Vec<Letter>)>;

/// Named generator actions over the genus-`g` alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistTable {
    alphabet: Alphabet,
    genus: usize,
    twists: BTreeMap<String, Endomorphism>,
}

/// `a1 .. ag b1 .. bg` as a group alphabet.
pub fn surface_alphabet(genus: usize) -> Alphabet {
    let names: Vec<String> = (1..=genus)
        .map(|i| format!("a{i}"))
        .chain((1..=genus).map(|i| format!("b{i}")))
        .collect();
    Alphabet::group(names).unwrap()
}

impl TwistTable {
    pub fn new(genus: usize) -> Self {
        TwistTable {
            alphabet: surface_alphabet(genus),
            genus,
            twists: BTreeMap::new(),
        }
    }

    /// Sections `twist NAME` followed by `gen -> word` lines.
    pub fn parse(text: &str, genus: usize) -> Result<Self> {
        let mut table = TwistTable::new(genus);
        let mut current: Option<(String, Changes)> = None;
        for (k, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            if let Some(name) = body.strip_prefix("twist ") {
                if let Some((n, changes)) = current.take() {
                    table.insert(n, &changes)?;
                }
                current = Some((name.trim().to_string(), Vec::new()));
                continue;
            }
            let (_, changes) = current.as_mut().ok_or(Error::Parse {
                line: k + 1,
                msg: "action line before any `twist NAME` header".into(),
            })?;
            changes.push(parse_map_line(body, k + 1, &table.alphabet)?);
        }
        if let Some((n, changes)) = current.take() {
            table.insert(n, &changes)?;
        }
        Ok(table)
    }

    fn insert(&mut self, name: String, changes: &[(usize, Vec<Letter>)]) -> Result<()> {
        let phi = Endomorphism::with_changes(self.alphabet.clone(), changes)?;
        self.twists.insert(name, phi);
        Ok(())
    }

    pub fn add(&mut self, name: &str, phi: Endomorphism) -> Result<()> {
        if phi.alphabet() != &self.alphabet {
            return Err(Error::RankMismatch {
                expected: self.alphabet.rank(),
                found: phi.rank(),
            });
        }
        self.twists.insert(name.to_string(), phi);
        Ok(())
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.twists.keys().map(String::as_str)
    }

    pub fn get(&self, name: &str) -> Option<&Endomorphism> {
        self.twists.get(name)
    }

    /// The maps for a whitespace-separated twist word, outermost first.
    pub fn maps(&self, word: &str) -> Result<Vec<Endomorphism>> {
        word.split_whitespace()
            .map(|t| {
                self.twists
                    .get(t)
                    .cloned()
                    .ok_or_else(|| Error::UnknownTwistGenerator(t.to_string()))
            })
            .collect()
    }
}

/// Whether every image of a generator in `images` becomes trivial once all
/// letters outside `keep` are deleted.
fn projections_trivial(
    alphabet: &Alphabet,
    maps: &[Endomorphism],
    images: &[usize],
    keep: &[Letter],
) -> Result<bool> {
    let fam = LeveledFamily::build(alphabet, maps)?;
    let projected = project(fam.program(), keep)?;
    let mut fg = FreeGroup::new(alphabet.clone())?;
    let nodes = fg.embed_all(&projected)?;
    for &i in images {
        let n = nodes[fam.top(i).0];
        if fg.reduce(n).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn letters_of(alphabet: &Alphabet, gens: std::ops::Range<usize>) -> Vec<Letter> {
    gens.flat_map(|i| {
        let g = alphabet.generator(i);
        [g, Letter(g.0 ^ 1)]
    })
    .collect()
}

/// The composed map sends every `b_i` to a word whose `a`-projection is
/// trivial.
pub fn handlebody_maps(genus: usize, maps: &[Endomorphism]) -> Result<bool> {
    let alphabet = surface_alphabet(genus);
    let keep = letters_of(&alphabet, 0..genus);
    projections_trivial(&alphabet, maps, &(genus..2 * genus).collect::<Vec<_>>(), &keep)
}

/// The composed map sends every `a_i` to a word whose `b`-projection is
/// trivial.
pub fn dual_handlebody_maps(genus: usize, maps: &[Endomorphism]) -> Result<bool> {
    let alphabet = surface_alphabet(genus);
    let keep = letters_of(&alphabet, genus..2 * genus);
    projections_trivial(&alphabet, maps, &(0..genus).collect::<Vec<_>>(), &keep)
}

pub fn handlebody_membership(table: Option<&TwistTable>, word: &str) -> Result<bool> {
    let table = table.ok_or(Error::GeneratorTableMissing)?;
    handlebody_maps(table.genus, &table.maps(word)?)
}

/// Both handlebody conditions. With a `dual` table the second condition is
/// the handlebody check on the dual actions; otherwise the `a`-images of
/// the primary table are projected onto the `b` letters.
pub fn heegaard_membership(
    table: Option<&TwistTable>,
    dual: Option<&TwistTable>,
    word: &str,
) -> Result<bool> {
    let table = table.ok_or(Error::GeneratorTableMissing)?;
    let maps = table.maps(word)?;
    if !handlebody_maps(table.genus, &maps)? {
        return Ok(false);
    }
    match dual {
        Some(d) => handlebody_maps(d.genus, &d.maps(word)?),
        None => dual_handlebody_maps(table.genus, &maps),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE: &str = "\
twist M
a1 -> a1 b1
twist M^-1
a1 -> a1 b1'
twist D
b1 -> b1 a1
twist D^-1
b1 -> b1 a1'
";

    fn table() -> TwistTable {
        TwistTable::parse(TABLE, 1).unwrap()
    }

    #[test]
    fn handlebody_examples() {
        let t = table();
        assert!(handlebody_membership(Some(&t), "").unwrap());
        assert!(handlebody_membership(Some(&t), "M").unwrap());
        assert!(!handlebody_membership(Some(&t), "D").unwrap());
        assert!(handlebody_membership(Some(&t), "D D^-1").unwrap());
        assert!(handlebody_membership(Some(&t), "D M D^-1").is_ok());
        assert_eq!(
            handlebody_membership(None, "M"),
            Err(Error::GeneratorTableMissing)
        );
        assert_eq!(
            handlebody_membership(Some(&t), "X"),
            Err(Error::UnknownTwistGenerator("X".into()))
        );
    }

    #[test]
    fn heegaard_examples() {
        let t = table();
        assert!(heegaard_membership(Some(&t), None, "").unwrap());
        assert!(!heegaard_membership(Some(&t), None, "M").unwrap());
        assert!(heegaard_membership(Some(&t), None, "M M^-1").unwrap());
        assert!(!heegaard_membership(Some(&t), None, "D").unwrap());
    }

    #[test]
    fn table_format_errors() {
        assert!(matches!(
            TwistTable::parse("a1 -> a1 b1\n", 1),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            TwistTable::parse("twist X\na3 -> a1\n", 1),
            Err(Error::LetterOutsideAlphabet(_))
        ));
    }
}
