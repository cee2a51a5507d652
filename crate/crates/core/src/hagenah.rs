//! Truncation elimination: composition systems to straight line programs.
//!
//! A [`Converter`] owns a hash-consed [`Slp`] arena together with a memo of
//! decorated non-terminals `Y^{[i:j]}`, so each decoration is built once.
//! Prefix and suffix decorations descend one side of the production tree and
//! are computed iteratively; a subword decoration splits into one of each.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::program::{Piece, Production, Program};
use crate::slp::{Node, NodeId, Slp};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Cut {
    Prefix(BigUint),
    Suffix(BigUint),
    Subword(BigUint, BigUint),
}

/// `(base, cut)`, always in canonical form: `Prefix(j)` has `0 < j < |w|`,
/// `Suffix(i)` has `0 < i < |w|`, `Subword(i, j)` has `0 < i < j < |w|`.
pub type DecoratedKey = (NodeId, Cut);

enum Frame {
    Delegate(DecoratedKey),
    PairLeft(DecoratedKey, NodeId),
    PairRight(DecoratedKey, NodeId),
}

#[derive(Debug, Clone)]
pub struct Converter {
    alphabet: Alphabet,
    slp: Slp,
    memo: HashMap<DecoratedKey, NodeId>,
    bars: HashMap<NodeId, NodeId>,
}

impl Converter {
    pub fn new(alphabet: Alphabet) -> Self {
        Converter {
            alphabet,
            slp: Slp::new(),
            memo: HashMap::new(),
            bars: HashMap::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn slp(&self) -> &Slp {
        &self.slp
    }

    pub fn letter(&mut self, l: Letter) -> NodeId {
        self.slp.letter(l)
    }

    pub fn concat(&mut self, u: Option<NodeId>, v: Option<NodeId>) -> Option<NodeId> {
        self.slp.concat(u, v)
    }

    pub fn len(&self, id: Option<NodeId>) -> BigUint {
        id.map_or_else(BigUint::zero, |n| self.slp.len(n).clone())
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Node for the formal inverse of `w_y`. Panics on a plain alphabet.
    pub fn bar(&mut self, y: NodeId) -> NodeId {
        if let Some(&b) = self.bars.get(&y) {
            return b;
        }
        let mut stack = vec![(y, false)];
        while let Some((n, expanded)) = stack.pop() {
            if self.bars.contains_key(&n) {
                continue;
            }
            let b = match self.slp.node(n) {
                Node::Letter(l) => {
                    let inv = self.alphabet.bar(l).expect("inversion needs a group alphabet");
                    self.slp.letter(inv)
                }
                Node::Pair(u, v) if expanded => self.slp.pair(self.bars[&v], self.bars[&u]),
                Node::Pair(u, v) => {
                    stack.push((n, true));
                    stack.push((u, false));
                    stack.push((v, false));
                    continue;
                }
            };
            self.bars.insert(n, b);
            self.bars.insert(b, n);
        }
        self.bars[&y]
    }

    pub fn bar_opt(&mut self, y: Option<NodeId>) -> Option<NodeId> {
        y.map(|n| self.bar(n))
    }

    /// `w_y[:k]`.
    pub fn prefix(&mut self, y: NodeId, k: &BigUint) -> Option<NodeId> {
        if k.is_zero() {
            return None;
        }
        let mut frames = Vec::new();
        let mut y = y;
        let mut k = k.clone();
        let mut r = loop {
            if &k == self.slp.len(y) {
                break y;
            }
            let key = (y, Cut::Prefix(k.clone()));
            if let Some(&hit) = self.memo.get(&key) {
                break hit;
            }
            let Node::Pair(u, v) = self.slp.node(y) else {
                unreachable!("a letter has no proper prefix")
            };
            let ul = self.slp.len(u);
            if &k <= ul {
                frames.push(Frame::Delegate(key));
                y = u;
            } else {
                k -= ul;
                frames.push(Frame::PairLeft(key, u));
                y = v;
            }
        };
        self.unwind(frames, &mut r);
        Some(r)
    }

    /// `w_y[i:]`.
    pub fn suffix(&mut self, y: NodeId, i: &BigUint) -> Option<NodeId> {
        if i >= self.slp.len(y) {
            return None;
        }
        let mut frames = Vec::new();
        let mut y = y;
        let mut i = i.clone();
        let mut r = loop {
            if i.is_zero() {
                break y;
            }
            let key = (y, Cut::Suffix(i.clone()));
            if let Some(&hit) = self.memo.get(&key) {
                break hit;
            }
            let Node::Pair(u, v) = self.slp.node(y) else {
                unreachable!("a letter has no proper suffix")
            };
            let ul = self.slp.len(u);
            if &i >= ul {
                i -= ul;
                frames.push(Frame::Delegate(key));
                y = v;
            } else {
                frames.push(Frame::PairRight(key, v));
                y = u;
            }
        };
        self.unwind(frames, &mut r);
        Some(r)
    }

    fn unwind(&mut self, frames: Vec<Frame>, r: &mut NodeId) {
        for frame in frames.into_iter().rev() {
            let key = match frame {
                Frame::Delegate(key) => key,
                Frame::PairLeft(key, u) => {
                    *r = self.slp.pair(u, *r);
                    key
                }
                Frame::PairRight(key, v) => {
                    *r = self.slp.pair(*r, v);
                    key
                }
            };
            self.memo.insert(key, *r);
        }
    }

    /// `w_y[lo:hi]`, `None` when empty. Requires `lo <= hi <= |w_y|`.
    pub fn decorate(&mut self, y: NodeId, lo: &BigUint, hi: &BigUint) -> Option<NodeId> {
        debug_assert!(lo <= hi && hi <= self.slp.len(y));
        let mut y = y;
        let mut lo = lo.clone();
        let mut hi = hi.clone();
        let mut delegated = Vec::new();
        let r = loop {
            if lo == hi {
                return None;
            }
            if lo.is_zero() {
                break self.prefix(y, &hi).unwrap();
            }
            if &hi == self.slp.len(y) {
                break self.suffix(y, &lo).unwrap();
            }
            let key = (y, Cut::Subword(lo.clone(), hi.clone()));
            if let Some(&hit) = self.memo.get(&key) {
                break hit;
            }
            let Node::Pair(u, v) = self.slp.node(y) else {
                unreachable!("a letter has no proper subword")
            };
            let ul = self.slp.len(u).clone();
            if hi <= ul {
                delegated.push(key);
                y = u;
            } else if lo >= ul {
                delegated.push(key);
                lo -= &ul;
                hi -= &ul;
                y = v;
            } else {
                let left = self.suffix(u, &lo).unwrap();
                let right = self.prefix(v, &(&hi - &ul)).unwrap();
                let r = self.slp.pair(left, right);
                self.memo.insert(key, r);
                break r;
            }
        };
        for key in delegated {
            self.memo.insert(key, r);
        }
        Some(r)
    }

    pub fn decorate_opt(
        &mut self,
        y: Option<NodeId>,
        lo: &BigUint,
        hi: &BigUint,
    ) -> Option<NodeId> {
        y.and_then(|n| self.decorate(n, lo, hi))
    }

    /// Add every non-terminal of `p` to the arena; entry `i` is the node
    /// for non-terminal `i` (`None` for the empty word).
    pub fn embed(&mut self, p: &Program) -> Result<Vec<Option<NodeId>>> {
        if p.alphabet() != &self.alphabet {
            return Err(Error::InvalidAlphabet(
                "program alphabet differs from the converter's".into(),
            ));
        }
        let mut out: Vec<Option<NodeId>> = Vec::with_capacity(p.nonterminal_count());
        for i in 0..p.nonterminal_count() {
            let mut acc = None;
            for seg in p.segments(crate::program::NtId(i)) {
                let piece = match seg.piece {
                    Piece::Letter(l) => Some(self.slp.letter(l)),
                    Piece::Ref { target, inverted } => {
                        let base = out[target.0];
                        let base = if inverted { self.bar_opt(base) } else { base };
                        self.decorate_opt(base, &seg.lo, &seg.hi)
                    }
                };
                acc = self.slp.concat(acc, piece);
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Embed `p` and return its root node.
    pub fn embed_root(&mut self, p: &Program) -> Result<Option<NodeId>> {
        Ok(self.embed(p)?[p.root().0])
    }

    pub fn export(&self, root: Option<NodeId>) -> Program {
        self.slp.to_program(&self.alphabet, root, &HashMap::new())
    }
}

/// Size of `p` after splitting every production into binary pieces: the
/// `n` in the `2n^2 + 4n` output bound.
pub fn binarized_size(p: &Program) -> usize {
    let mut letters = std::collections::HashSet::new();
    let mut n = 0;
    for prod in &p.grammar().productions {
        n += match prod {
            Production::Terminal(l) => {
                letters.insert(*l);
                0
            }
            Production::Empty => 1,
            Production::Seq(items) => {
                for it in items {
                    if let crate::program::Item::Letter(l) = it {
                        letters.insert(*l);
                    }
                }
                items.len().saturating_sub(1).max(1)
            }
        };
    }
    n += letters.len();
    if p.has_inversion() {
        2 * n
    } else {
        n
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConversionStats {
    pub input_size: usize,
    pub output_size: usize,
    pub bound: usize,
}

/// Convert any program (truncations and inversions allowed) into an
/// equivalent straight line program in Chomsky normal form.
pub fn cs_to_slp(p: &Program) -> Result<Program> {
    cs_to_slp_with_stats(p).map(|(q, _)| q)
}

pub fn cs_to_slp_with_stats(p: &Program) -> Result<(Program, ConversionStats)> {
    let mut conv = Converter::new(p.alphabet().clone());
    let nodes = conv.embed(p)?;
    let root = nodes[p.root().0];
    let mut names = HashMap::new();
    for (i, node) in nodes.iter().enumerate() {
        if let Some(n) = node {
            names
                .entry(*n)
                .or_insert_with(|| p.grammar().names[i].clone());
        }
    }
    let out = conv.slp.to_program(&conv.alphabet, root, &names);
    let n = binarized_size(p);
    let stats = ConversionStats {
        input_size: n,
        output_size: out.nonterminal_count(),
        bound: 2 * n * n + 4 * n,
    };
    assert!(
        stats.output_size <= stats.bound.max(1),
        "conversion produced {} non-terminals, above 2n^2+4n = {}",
        stats.output_size,
        stats.bound
    );
    Ok((out, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::query::decompress;

    fn word(p: &Program) -> String {
        p.alphabet()
            .format_word(&decompress(p, 1 << 20).unwrap())
            .replace(' ', "")
    }

    #[test]
    fn truncated_doubling_becomes_normal_form() {
        let b = families::truncated_doubling(8);
        let s = cs_to_slp(&b).unwrap();
        assert_eq!(s.kind(), crate::program::ProgramKind::SlpNormalForm);
        assert_eq!(word(&s), "bababbabbbababbabbababbabbbababbab");
    }

    #[test]
    fn fibonacci_is_a_fixed_point() {
        let f = families::fibonacci(8);
        let s = cs_to_slp(&f).unwrap();
        assert_eq!(s.nonterminal_count(), f.nonterminal_count());
        assert_eq!(word(&s), word(&f));
    }

    #[test]
    fn fibonacci_window() {
        let f = families::fibonacci(8);
        let cut = f.truncated(&1u32.into(), &4u32.into()).unwrap();
        assert_eq!(word(&cs_to_slp(&cut).unwrap()), "baa");
    }

    #[test]
    fn decorations_are_memoized_once() {
        let f = families::fibonacci(12);
        let mut conv = Converter::new(f.alphabet().clone());
        let root = conv.embed_root(&f).unwrap().unwrap();
        let a = conv.decorate(root, &3u32.into(), &100u32.into());
        let before = conv.slp().node_count();
        let b = conv.decorate(root, &3u32.into(), &100u32.into());
        assert_eq!(a, b);
        assert_eq!(conv.slp().node_count(), before);
    }

    #[test]
    fn bar_is_an_involution() {
        let p = families::iterated_automorphism(5);
        let mut conv = Converter::new(p.alphabet().clone());
        let root = conv.embed_root(&p).unwrap().unwrap();
        let b = conv.bar(root);
        assert_eq!(conv.bar(b), root);
        let w = conv.slp().decompress(Some(root), 1000).unwrap();
        let wb = conv.slp().decompress(Some(b), 1000).unwrap();
        let expect: Vec<Letter> = w.iter().rev().map(|l| Letter(l.0 ^ 1)).collect();
        assert_eq!(wb, expect);
    }
}
