//! Straight line programs and composition systems.
//!
//! A [`Grammar`] is the raw, unchecked structure. A [`Program`] is a grammar
//! that passed [`validate`], carrying its length and height tables and the
//! resolved span of every right-hand-side item.

use std::collections::HashSet;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};

/// Dense non-terminal index. Productions only reference smaller indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NtId(pub usize);

/// Truncation bounds `[lo:hi]`; `None` means omitted, negative counts from
/// the end of the word.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trunc {
    pub lo: Option<BigInt>,
    pub hi: Option<BigInt>,
}

impl Trunc {
    pub fn new(lo: Option<BigInt>, hi: Option<BigInt>) -> Self {
        Trunc { lo, hi }
    }

    /// Explicit non-negative bounds.
    pub fn span(lo: &BigUint, hi: &BigUint) -> Self {
        Trunc {
            lo: Some(BigInt::from(lo.clone())),
            hi: Some(BigInt::from(hi.clone())),
        }
    }

    /// Resolve against a word of length `len`: `w[-j:-i] = w[len-j:len-i]`.
    pub fn resolve(&self, len: &BigUint) -> Option<(BigUint, BigUint)> {
        let lo = match &self.lo {
            None => BigUint::zero(),
            Some(v) => resolve_index(v, len)?,
        };
        let hi = match &self.hi {
            None => len.clone(),
            Some(v) => resolve_index(v, len)?,
        };
        (lo <= hi && &hi <= len).then_some((lo, hi))
    }
}

/// Resolve a possibly negative index against `len`; `None` if it falls
/// before the start.
pub fn resolve_index(index: &BigInt, len: &BigUint) -> Option<BigUint> {
    match index.sign() {
        Sign::Minus => {
            let back = index.magnitude();
            (back <= len).then(|| len - back)
        }
        _ => Some(index.magnitude().clone()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ref {
    pub target: NtId,
    /// Use the formal inverse of the target's word. Truncation applies after
    /// inversion: `~B[i:j]` is `inv(w_B)[i:j]`.
    pub inverted: bool,
    pub trunc: Option<Trunc>,
}

impl Ref {
    pub fn plain(target: NtId) -> Self {
        Ref {
            target,
            inverted: false,
            trunc: None,
        }
    }

    pub fn inverse(target: NtId) -> Self {
        Ref {
            target,
            inverted: true,
            trunc: None,
        }
    }

    pub fn cut(target: NtId, trunc: Trunc) -> Self {
        Ref {
            target,
            inverted: false,
            trunc: Some(trunc),
        }
    }

    fn is_plain(&self) -> bool {
        !self.inverted && self.trunc.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Letter(Letter),
    Ref(Ref),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Production {
    Terminal(Letter),
    Empty,
    Seq(Vec<Item>),
}

impl Production {
    fn canonical(self) -> Self {
        match self {
            Production::Seq(items) if items.is_empty() => Production::Empty,
            Production::Seq(items) => match items.as_slice() {
                [Item::Letter(l)] => Production::Terminal(*l),
                _ => Production::Seq(items),
            },
            p => p,
        }
    }
}

/// Unvalidated grammar: alphabet, named productions in topological order,
/// root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    pub alphabet: Alphabet,
    pub names: Vec<String>,
    pub productions: Vec<Production>,
    pub root: NtId,
}

impl Grammar {
    pub fn new(alphabet: Alphabet) -> Self {
        Grammar {
            alphabet,
            names: Vec::new(),
            productions: Vec::new(),
            root: NtId(0),
        }
    }

    /// Append a production; the new non-terminal becomes the root.
    pub fn push(&mut self, name: impl Into<String>, production: Production) -> NtId {
        let id = NtId(self.productions.len());
        self.names.push(name.into());
        self.productions.push(production.canonical());
        self.root = id;
        id
    }

    /// Append with a fresh name derived from `stem`.
    pub fn push_fresh(&mut self, stem: &str, production: Production) -> NtId {
        let name = self.fresh_name(stem);
        self.push(name, production)
    }

    pub fn fresh_name(&self, stem: &str) -> String {
        let taken: HashSet<&str> = self.names.iter().map(String::as_str).collect();
        if !taken.contains(stem) && valid_name(stem) {
            return stem.to_string();
        }
        (0..)
            .map(|i| format!("{stem}_{i}"))
            .find(|n| !taken.contains(n.as_str()))
            .unwrap()
    }

    /// Copy every production of `p` in, renaming with `prefix`; returns the
    /// id of `p`'s root in this grammar. Alphabets must agree.
    pub fn import(&mut self, p: &Program, prefix: &str) -> Result<NtId> {
        if p.alphabet() != &self.alphabet {
            return Err(Error::InvalidAlphabet(
                "imported program uses a different alphabet".into(),
            ));
        }
        let offset = self.productions.len();
        for (i, prod) in p.grammar().productions.iter().enumerate() {
            let shifted = match prod {
                Production::Seq(items) => Production::Seq(
                    items
                        .iter()
                        .map(|it| match it {
                            Item::Ref(r) => Item::Ref(Ref {
                                target: NtId(r.target.0 + offset),
                                ..r.clone()
                            }),
                            other => other.clone(),
                        })
                        .collect(),
                ),
                other => other.clone(),
            };
            let name = self.fresh_name(&format!("{prefix}{}", p.grammar().names[i]));
            self.push(name, shifted);
        }
        Ok(NtId(p.grammar().root.0 + offset))
    }
}

pub fn valid_name(name: &str) -> bool {
    const RESERVED: [&str; 4] = ["eps", "root", "alphabet", "group-alphabet"];
    !name.is_empty()
        && !RESERVED.contains(&name)
        && !name.starts_with(['\'', '~', '-'])
        && name
            .chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '.' | '-' | '$'))
}

/// Lengths `|w_B|` and heights `||B||` of every non-terminal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthTable {
    pub lengths: Vec<BigUint>,
    pub heights: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProgramKind {
    General,
    SlpNormalForm,
    CompositionSystem,
}

/// A right-hand-side item with its truncation resolved to explicit bounds.
/// Letters span `[0:1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub piece: Piece,
    pub lo: BigUint,
    pub hi: BigUint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Piece {
    Letter(Letter),
    Ref { target: NtId, inverted: bool },
}

impl Segment {
    pub fn len(&self) -> BigUint {
        &self.hi - &self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi == self.lo
    }
}

/// Check structure and compute lengths and heights.
pub fn validate(g: &Grammar) -> Result<LengthTable> {
    validate_with_segments(g).map(|(t, _)| t)
}

fn validate_with_segments(g: &Grammar) -> Result<(LengthTable, Vec<Vec<Segment>>)> {
    let n = g.productions.len();
    if g.root.0 >= n {
        return Err(Error::MissingRoot(g.root.0));
    }
    if g.names.len() != n {
        return Err(Error::Parse {
            line: 0,
            msg: "every non-terminal needs a name".into(),
        });
    }
    let mut seen = HashSet::new();
    for name in &g.names {
        if !valid_name(name) || !seen.insert(name.as_str()) {
            return Err(Error::Parse {
                line: 0,
                msg: format!("invalid or duplicate non-terminal name `{name}`"),
            });
        }
    }
    let check_letter = |l: Letter| {
        if g.alphabet.contains(l) {
            Ok(())
        } else {
            Err(Error::LetterOutsideAlphabet(format!("#{}", l.0)))
        }
    };
    let mut lengths: Vec<BigUint> = Vec::with_capacity(n);
    let mut heights: Vec<u32> = Vec::with_capacity(n);
    let mut segments = Vec::with_capacity(n);
    for (i, prod) in g.productions.iter().enumerate() {
        let (len, height, segs) = match prod {
            Production::Terminal(l) => {
                check_letter(*l)?;
                let seg = Segment {
                    piece: Piece::Letter(*l),
                    lo: BigUint::zero(),
                    hi: BigUint::one(),
                };
                (BigUint::one(), 1, vec![seg])
            }
            Production::Empty => (BigUint::zero(), 0, Vec::new()),
            Production::Seq(items) => {
                let mut len = BigUint::zero();
                let mut height = 0u32;
                let mut segs = Vec::with_capacity(items.len());
                for item in items {
                    let seg = match item {
                        Item::Letter(l) => {
                            check_letter(*l)?;
                            Segment {
                                piece: Piece::Letter(*l),
                                lo: BigUint::zero(),
                                hi: BigUint::one(),
                            }
                        }
                        Item::Ref(r) => {
                            let t = r.target.0;
                            if t >= n {
                                return Err(Error::DanglingReference { from: i, to: t });
                            }
                            if t >= i {
                                return Err(Error::CyclicReference { from: i, to: t });
                            }
                            if r.inverted && !g.alphabet.is_group() {
                                return Err(Error::InversionWithoutInvolution(i));
                            }
                            height = height.max(heights[t]);
                            let tl = &lengths[t];
                            let (lo, hi) = match &r.trunc {
                                None => (BigUint::zero(), tl.clone()),
                                Some(tr) => tr.resolve(tl).ok_or_else(|| {
                                    Error::TruncationOutOfRange {
                                        nonterminal: i,
                                        lo: tr.lo.clone().unwrap_or_default(),
                                        hi: tr
                                            .hi
                                            .clone()
                                            .unwrap_or_else(|| BigInt::from(tl.clone())),
                                        len: tl.clone(),
                                    }
                                })?,
                            };
                            Segment {
                                piece: Piece::Ref {
                                    target: r.target,
                                    inverted: r.inverted,
                                },
                                lo,
                                hi,
                            }
                        }
                    };
                    len += seg.len();
                    segs.push(seg);
                }
                let h = if items.is_empty() { 0 } else { height + 1 };
                (len, h, segs)
            }
        };
        lengths.push(len);
        heights.push(height);
        segments.push(segs);
    }
    Ok((LengthTable { lengths, heights }, segments))
}

/// A validated, immutable program with its derived tables.
#[derive(Debug, Clone)]
pub struct Program {
    grammar: Grammar,
    table: LengthTable,
    segments: Vec<Vec<Segment>>,
}

impl PartialEq for Program {
    fn eq(&self, other: &Self) -> bool {
        self.grammar == other.grammar
    }
}

impl Eq for Program {}

impl Program {
    pub fn new(mut grammar: Grammar) -> Result<Self> {
        for p in grammar.productions.iter_mut() {
            *p = std::mem::replace(p, Production::Empty).canonical();
        }
        let (table, segments) = validate_with_segments(&grammar)?;
        Ok(Program {
            grammar,
            table,
            segments,
        })
    }

    /// Program whose root produces exactly `word`.
    pub fn from_word(alphabet: Alphabet, word: &[Letter]) -> Result<Self> {
        let mut g = Grammar::new(alphabet);
        g.push(
            "R",
            Production::Seq(word.iter().map(|&l| Item::Letter(l)).collect()),
        );
        Program::new(g)
    }

    /// Concatenate explicit words and (possibly inverted) programs.
    pub fn concat(alphabet: &Alphabet, parts: &[Part<'_>]) -> Result<Self> {
        let mut g = Grammar::new(alphabet.clone());
        let mut items = Vec::new();
        for (k, part) in parts.iter().enumerate() {
            match part {
                Part::Word(w) => items.extend(w.iter().map(|&l| Item::Letter(l))),
                Part::Program(p, inverted) => {
                    let root = g.import(p, &format!("p{k}_"))?;
                    items.push(Item::Ref(Ref {
                        target: root,
                        inverted: *inverted,
                        trunc: None,
                    }));
                }
            }
        }
        g.push_fresh("R", Production::Seq(items));
        Program::new(g)
    }

    /// The same grammar with another root.
    pub fn with_root(&self, root: NtId) -> Result<Self> {
        if root.0 >= self.grammar.productions.len() {
            return Err(Error::MissingRoot(root.0));
        }
        let mut p = self.clone();
        p.grammar.root = root;
        Ok(p)
    }

    /// New root `R -> root[lo:hi]`.
    pub fn truncated(&self, lo: &BigUint, hi: &BigUint) -> Result<Self> {
        let mut g = self.grammar.clone();
        let root = g.root;
        g.push_fresh(
            "R",
            Production::Seq(vec![Item::Ref(Ref::cut(root, Trunc::span(lo, hi)))]),
        );
        Program::new(g)
    }

    /// Move to a larger alphabet, translating letter `l` to `map[l]`.
    pub fn relabel(&self, alphabet: &Alphabet, map: &[Letter]) -> Result<Self> {
        let mut g = self.grammar.clone();
        g.alphabet = alphabet.clone();
        for prod in g.productions.iter_mut() {
            match prod {
                Production::Terminal(l) => *l = map[l.index()],
                Production::Seq(items) => {
                    for it in items.iter_mut() {
                        if let Item::Letter(l) = it {
                            *l = map[l.index()];
                        }
                    }
                }
                Production::Empty => {}
            }
        }
        Program::new(g)
    }

    /// Bring two programs onto a common alphabet; `self`'s letters keep
    /// their ids.
    pub fn align(&self, other: &Program) -> Result<(Program, Program)> {
        if self.alphabet() == other.alphabet() {
            return Ok((self.clone(), other.clone()));
        }
        let (merged, map) = self.alphabet().union(other.alphabet())?;
        let own: Vec<Letter> = self.alphabet().letters().collect();
        Ok((self.relabel(&merged, &own)?, other.relabel(&merged, &map)?))
    }

    pub fn grammar(&self) -> &Grammar {
        &self.grammar
    }

    pub fn into_grammar(self) -> Grammar {
        self.grammar
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.grammar.alphabet
    }

    pub fn root(&self) -> NtId {
        self.grammar.root
    }

    pub fn table(&self) -> &LengthTable {
        &self.table
    }

    pub fn nonterminal_count(&self) -> usize {
        self.grammar.productions.len()
    }

    pub fn name(&self, nt: NtId) -> &str {
        &self.grammar.names[nt.0]
    }

    pub fn find(&self, name: &str) -> Option<NtId> {
        self.grammar.names.iter().position(|n| n == name).map(NtId)
    }

    pub fn production(&self, nt: NtId) -> &Production {
        &self.grammar.productions[nt.0]
    }

    pub fn segments(&self, nt: NtId) -> &[Segment] {
        &self.segments[nt.0]
    }

    /// `|w_B|`.
    pub fn length(&self, nt: NtId) -> &BigUint {
        &self.table.lengths[nt.0]
    }

    /// Length of the root word.
    pub fn len(&self) -> &BigUint {
        self.length(self.root())
    }

    pub fn is_empty(&self) -> bool {
        self.len().is_zero()
    }

    pub fn height(&self, nt: NtId) -> u32 {
        self.table.heights[nt.0]
    }

    fn refs(&self) -> impl Iterator<Item = &Ref> {
        self.grammar.productions.iter().flat_map(|p| match p {
            Production::Seq(items) => items
                .iter()
                .filter_map(|it| match it {
                    Item::Ref(r) => Some(r),
                    _ => None,
                })
                .collect::<Vec<_>>(),
            _ => Vec::new(),
        })
    }

    pub fn has_truncation(&self) -> bool {
        self.refs().any(|r| r.trunc.is_some())
    }

    pub fn has_inversion(&self) -> bool {
        self.refs().any(|r| r.inverted)
    }

    /// Every Seq has at most two items, so `|w_B| <= 2^height(B)` must hold.
    pub fn is_binary(&self) -> bool {
        self.grammar.productions.iter().all(|p| match p {
            Production::Seq(items) => items.len() <= 2,
            _ => true,
        })
    }

    pub fn kind(&self) -> ProgramKind {
        let prods = &self.grammar.productions;
        let distinguished_empty = prods.len() == 1 && prods[0] == Production::Empty;
        let normal = prods.iter().all(|p| match p {
            Production::Terminal(_) => true,
            Production::Seq(items) => {
                items.len() == 2
                    && items
                        .iter()
                        .all(|it| matches!(it, Item::Ref(r) if r.is_plain()))
            }
            Production::Empty => false,
        });
        if normal || distinguished_empty {
            ProgramKind::SlpNormalForm
        } else if self.has_truncation() {
            ProgramKind::CompositionSystem
        } else {
            ProgramKind::General
        }
    }

    /// Non-terminals reachable from the root, in increasing index order.
    pub fn reachable(&self) -> Vec<NtId> {
        let n = self.nonterminal_count();
        let mut mark = vec![false; n];
        mark[self.root().0] = true;
        for i in (0..n).rev() {
            if !mark[i] {
                continue;
            }
            for seg in &self.segments[i] {
                if let Piece::Ref { target, .. } = seg.piece {
                    mark[target.0] = true;
                }
            }
        }
        (0..n).filter(|&i| mark[i]).map(NtId).collect()
    }

    /// Segments of `nt` as seen through an optional inversion: reversed,
    /// letters barred, windows mirrored.
    pub(crate) fn oriented_segments(&self, nt: NtId, flip: bool) -> Vec<Segment> {
        let segs = &self.segments[nt.0];
        if !flip {
            return segs.clone();
        }
        segs.iter()
            .rev()
            .map(|s| match s.piece {
                Piece::Letter(l) => Segment {
                    piece: Piece::Letter(self.alphabet().bar(l).expect("group alphabet")),
                    ..s.clone()
                },
                Piece::Ref { target, inverted } => {
                    let tl = self.length(target);
                    Segment {
                        piece: Piece::Ref {
                            target,
                            inverted: !inverted,
                        },
                        lo: tl - &s.hi,
                        hi: tl - &s.lo,
                    }
                }
            })
            .collect()
    }
}

/// One operand of [`Program::concat`].
#[derive(Debug, Clone, Copy)]
pub enum Part<'a> {
    Word(&'a [Letter]),
    /// A program, inverted when the flag is set.
    Program(&'a Program, bool),
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::print(self))
    }
}
