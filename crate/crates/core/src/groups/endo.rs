//! Endomorphisms of free groups, their generator words, and the leveled
//! program family that composes them without expanding any image.

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::program::{valid_name, Grammar, Item, NtId, Production, Program, Ref};

/// Substitution `a_i -> u_i` over a group alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endomorphism {
    alphabet: Alphabet,
    images: Vec<Vec<Letter>>,
}

impl Endomorphism {
    pub fn new(alphabet: Alphabet, images: Vec<Vec<Letter>>) -> Result<Self> {
        if !alphabet.is_group() {
            return Err(Error::NotGroupAlphabet);
        }
        if images.len() != alphabet.rank() {
            return Err(Error::RankMismatch {
                expected: alphabet.rank(),
                found: images.len(),
            });
        }
        for l in images.iter().flatten() {
            if !alphabet.contains(*l) {
                return Err(Error::LetterOutsideAlphabet(format!("#{}", l.0)));
            }
        }
        Ok(Endomorphism { alphabet, images })
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let images = (0..alphabet.rank()).map(|i| vec![alphabet.generator(i)]).collect();
        Endomorphism { alphabet, images }
    }

    /// Identity except for the listed generators.
    pub fn with_changes(alphabet: Alphabet, changes: &[(usize, Vec<Letter>)]) -> Result<Self> {
        let mut images = Self::identity(alphabet.clone()).images;
        for (i, img) in changes {
            let slot = images.get_mut(*i).ok_or(Error::RankMismatch {
                expected: alphabet.rank(),
                found: i + 1,
            })?;
            *slot = img.clone();
        }
        Self::new(alphabet, images)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    /// Image of the generator `a_i` (zero-based).
    pub fn image(&self, i: usize) -> &[Letter] {
        &self.images[i]
    }

    pub fn images(&self) -> &[Vec<Letter>] {
        &self.images
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.images[i] == [self.alphabet.generator(i)]
    }

    /// Explicit substitution, without reduction.
    pub fn apply(&self, w: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::new();
        for &l in w {
            let img = &self.images[l.index() / 2];
            if l.0 % 2 == 0 {
                out.extend_from_slice(img);
            } else {
                out.extend(img.iter().rev().map(|x| Letter(x.0 ^ 1)));
            }
        }
        out
    }
}

/// Parse `a1 -> a1 b1` lines; unlisted generators are fixed.
pub fn parse_map(text: &str, alphabet: &Alphabet) -> Result<Endomorphism> {
    let mut changes = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        changes.push(parse_map_line(body, k + 1, alphabet)?);
    }
    Endomorphism::with_changes(alphabet.clone(), &changes)
}

pub(crate) fn parse_map_line(
    body: &str,
    line: usize,
    alphabet: &Alphabet,
) -> Result<(usize, Vec<Letter>)> {
    let (lhs, rhs) = body.split_once("->").ok_or(Error::Parse {
        line,
        msg: "expected `generator -> word`".into(),
    })?;
    let g = alphabet
        .lookup(lhs.trim())
        .map_err(|_| Error::LetterOutsideAlphabet(lhs.trim().to_string()))?;
    if g.0 % 2 == 1 {
        return Err(Error::Parse {
            line,
            msg: format!("left side `{}` must be a generator", lhs.trim()),
        });
    }
    let word = rhs
        .split_whitespace()
        .map(|t| {
            alphabet
                .lookup(t)
                .map_err(|_| Error::LetterOutsideAlphabet(t.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((g.index() / 2, word))
}

/// Generator names in order of first appearance among `tokens`, with
/// trailing apostrophes stripped.
pub fn infer_generators<'a>(tokens: impl IntoIterator<Item = &'a str>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for t in tokens {
        let base = t.trim_end_matches('\'');
        if !base.is_empty() && !out.iter().any(|g| g == base) {
            out.push(base.to_string());
        }
    }
    out
}

/// A Nielsen generator, zero-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nielsen {
    /// `a_i -> a_i'`
    Inv(usize),
    /// `a_i -> a_i a_j`
    Mul(usize, usize),
    /// `a_i -> a_i a_j'`
    MulInv(usize, usize),
}

impl Nielsen {
    pub fn max_index(self) -> usize {
        match self {
            Nielsen::Inv(i) => i,
            Nielsen::Mul(i, j) | Nielsen::MulInv(i, j) => i.max(j),
        }
    }

    pub fn inverse(self) -> Self {
        match self {
            Nielsen::Inv(i) => Nielsen::Inv(i),
            Nielsen::Mul(i, j) => Nielsen::MulInv(i, j),
            Nielsen::MulInv(i, j) => Nielsen::Mul(i, j),
        }
    }

    pub fn to_endomorphism(self, alphabet: &Alphabet) -> Result<Endomorphism> {
        if self.max_index() >= alphabet.rank() {
            return Err(Error::RankMismatch {
                expected: alphabet.rank(),
                found: self.max_index() + 1,
            });
        }
        let g = |i| alphabet.generator(i);
        let change = match self {
            Nielsen::Inv(i) => (i, vec![Letter(g(i).0 ^ 1)]),
            Nielsen::Mul(i, j) => (i, vec![g(i), g(j)]),
            Nielsen::MulInv(i, j) => (i, vec![g(i), Letter(g(j).0 ^ 1)]),
        };
        Endomorphism::with_changes(alphabet.clone(), &[change])
    }
}

impl std::fmt::Display for Nielsen {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Nielsen::Inv(i) => write!(f, "inv{}", i + 1),
            Nielsen::Mul(i, j) => write!(f, "mul{},{}", i + 1, j + 1),
            Nielsen::MulInv(i, j) => write!(f, "mul{},{}^-1", i + 1, j + 1),
        }
    }
}

fn parse_nielsen_token(tok: &str) -> Result<Nielsen> {
    let bad = || Error::InvalidNielsenToken(tok.to_string());
    let index = |s: &str| -> Result<usize> {
        match s.parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(bad()),
        }
    };
    if let Some(rest) = tok.strip_prefix("inv") {
        return Ok(Nielsen::Inv(index(rest)?));
    }
    let rest = tok.strip_prefix("mul").ok_or_else(bad)?;
    let (pair, inverse) = match rest.strip_suffix("^-1") {
        Some(p) => (p, true),
        None => (rest, false),
    };
    let (i, j) = pair.split_once(',').ok_or_else(bad)?;
    let (i, j) = (index(i)?, index(j)?);
    if i == j {
        return Err(bad());
    }
    Ok(if inverse {
        Nielsen::MulInv(i, j)
    } else {
        Nielsen::Mul(i, j)
    })
}

/// Whitespace-separated tokens `inv3`, `mul2,5`, `mul2,5^-1`.
pub fn parse_nielsen(text: &str) -> Result<Vec<Nielsen>> {
    text.split_whitespace().map(parse_nielsen_token).collect()
}

/// Smallest rank that accommodates every token (at least 1).
pub fn nielsen_rank(word: &[Nielsen]) -> usize {
    word.iter().map(|t| t.max_index() + 1).max().unwrap_or(1)
}

pub fn nielsen_maps(word: &[Nielsen], alphabet: &Alphabet) -> Result<Vec<Endomorphism>> {
    word.iter().map(|t| t.to_endomorphism(alphabet)).collect()
}

/// `sigma_i^{+1}` or `^{-1}`, zero-based `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BraidLetter {
    pub index: usize,
    pub positive: bool,
}

/// Tokens `s1`, `s2^-1`; strand indices checked against `strands`.
pub fn parse_braid(text: &str, strands: usize) -> Result<Vec<BraidLetter>> {
    text.split_whitespace()
        .map(|tok| {
            let bad = || Error::InvalidNielsenToken(tok.to_string());
            let rest = tok.strip_prefix('s').ok_or_else(bad)?;
            let (num, positive) = match rest.strip_suffix("^-1") {
                Some(n) => (n, false),
                None => (rest, true),
            };
            let i: usize = num.parse().map_err(|_| bad())?;
            if i == 0 || i + 1 > strands {
                return Err(Error::StrandIndexOutOfRange { index: i, strands });
            }
            Ok(BraidLetter {
                index: i - 1,
                positive,
            })
        })
        .collect()
}

/// `sigma_i: a_i -> a_i a_{i+1} a_i', a_{i+1} -> a_i`, and its inverse
/// `a_i -> a_{i+1}, a_{i+1} -> a_{i+1}' a_i a_{i+1}`.
pub fn braid_maps(word: &[BraidLetter], strands: usize) -> Result<Vec<Endomorphism>> {
    let alphabet = Alphabet::numbered_group(strands);
    word.iter()
        .map(|b| {
            let i = b.index;
            if i + 1 >= strands {
                return Err(Error::StrandIndexOutOfRange {
                    index: i + 1,
                    strands,
                });
            }
            let (x, y) = (alphabet.generator(i), alphabet.generator(i + 1));
            let inv = |l: Letter| Letter(l.0 ^ 1);
            let changes = if b.positive {
                vec![(i, vec![x, y, inv(x)]), (i + 1, vec![x])]
            } else {
                vec![(i, vec![y]), (i + 1, vec![inv(y), x, y])]
            };
            Endomorphism::with_changes(alphabet.clone(), &changes)
        })
        .collect()
}

/// One program holding `A_{i,p}` for every generator `i` and level
/// `0 <= p <= P`, where `A_{i,0} -> a_i` and `A_{i,p}` is the level-`p`
/// map's image of `a_i` written over level `p - 1`. So `w(A_{i,P})` is
/// `(phi_1 o ... o phi_P)(a_i)`.
#[derive(Debug, Clone)]
pub struct LeveledFamily {
    program: Program,
    ids: Vec<Vec<NtId>>,
}

impl LeveledFamily {
    pub fn build(alphabet: &Alphabet, maps: &[Endomorphism]) -> Result<Self> {
        let (g, ids) = build_grammar(alphabet, maps)?;
        Ok(LeveledFamily {
            program: Program::new(g)?,
            ids,
        })
    }

    pub fn program(&self) -> &Program {
        &self.program
    }

    pub fn levels(&self) -> usize {
        self.ids.len() - 1
    }

    pub fn rank(&self) -> usize {
        self.ids[0].len()
    }

    pub fn id(&self, i: usize, level: usize) -> NtId {
        self.ids[level][i]
    }

    /// `A_{i,p}` for `p = levels()`.
    pub fn top(&self, i: usize) -> NtId {
        self.ids[self.levels()][i]
    }

    /// The family with `A_{i,p}` as root.
    pub fn root(&self, i: usize, level: usize) -> Program {
        self.program.with_root(self.id(i, level)).unwrap()
    }

    /// The family with a new root producing `w` with each generator letter
    /// read at the given level.
    pub fn word_at_levels(&self, w: &[(Letter, usize)]) -> Result<Program> {
        let mut g = self.program.grammar().clone();
        let items = w
            .iter()
            .map(|&(l, p)| {
                let target = self.id(l.index() / 2, p);
                Item::Ref(if l.0 % 2 == 0 {
                    Ref::plain(target)
                } else {
                    Ref::inverse(target)
                })
            })
            .collect();
        g.push_fresh("W", Production::Seq(items));
        Program::new(g)
    }
}

fn build_grammar(alphabet: &Alphabet, maps: &[Endomorphism]) -> Result<(Grammar, Vec<Vec<NtId>>)> {
    if !alphabet.is_group() {
        return Err(Error::NotGroupAlphabet);
    }
    let m = alphabet.rank();
    for phi in maps {
        if phi.alphabet() != alphabet {
            return Err(Error::RankMismatch {
                expected: m,
                found: phi.rank(),
            });
        }
    }
    let mut g = Grammar::new(alphabet.clone());
    let name = |i: usize, p: usize| {
        let n = format!("{}_{}", alphabet.base_names()[i], p);
        if valid_name(&n) {
            n
        } else {
            format!("A{}_{}", i + 1, p)
        }
    };
    let mut ids = vec![(0..m)
        .map(|i| g.push_fresh(&name(i, 0), Production::Terminal(alphabet.generator(i))))
        .collect::<Vec<_>>()];
    for (k, phi) in maps.iter().enumerate() {
        let p = k + 1;
        let prev = ids[k].clone();
        let mut level = Vec::with_capacity(m);
        for i in 0..m {
            let items = phi
                .image(i)
                .iter()
                .map(|&l| {
                    let target = prev[l.index() / 2];
                    Item::Ref(if l.0 % 2 == 0 {
                        Ref::plain(target)
                    } else {
                        Ref::inverse(target)
                    })
                })
                .collect();
            level.push(g.push_fresh(&name(i, p), Production::Seq(items)));
        }
        ids.push(level);
    }
    let top = ids.last().unwrap()[0];
    g.root = top;
    Ok((g, ids))
}

/// Naive composition on explicit words, for small instances and tests:
/// images of the generators under `phi_1 o ... o phi_P`.
pub fn compose_explicit(maps: &[Endomorphism], alphabet: &Alphabet) -> Vec<Vec<Letter>> {
    let mut images: Vec<Vec<Letter>> = (0..alphabet.rank()).map(|i| vec![alphabet.generator(i)]).collect();
    for phi in maps {
        let current = Endomorphism {
            alphabet: alphabet.clone(),
            images: images.clone(),
        };
        images = (0..alphabet.rank()).map(|i| current.apply(phi.image(i))).collect();
    }
    images
}
