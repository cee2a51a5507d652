//! Compressed words in free groups: free reduction, triviality, cyclic
//! reduction and conjugacy.
//!
//! Reduction works bottom-up over a normal-form arena. For a node `U V` with
//! reduced children `x`, `y`, the cancellation depth `k` is the longest
//! common prefix of `inv(x)` and `y`, and the node reduces to
//! `x[:-k] y[k:]`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::hagenah::Converter;
use crate::plandowski::{equal_nodes, lcp_nodes, EqualOptions};
use crate::program::{Grammar, Item, NtId, Piece, Production, Program, Ref, Trunc};
use crate::query::char_at_in;
use crate::slp::{Node, NodeId, Slp};

/// Outcome of a decision procedure, with an optional compressed witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Program>,
}

impl Verdict {
    pub fn no() -> Self {
        Verdict {
            holds: false,
            witness: None,
        }
    }

    pub fn yes(witness: Program) -> Self {
        Verdict {
            holds: true,
            witness: Some(witness),
        }
    }
}

/// Reduction engine over one arena, caching reductions and conversions
/// across calls.
#[derive(Debug, Clone)]
pub struct FreeGroup {
    conv: Converter,
    red: HashMap<NodeId, Option<NodeId>>,
    cancel: HashMap<NodeId, BigUint>,
}

/// `w = conjugator core inv(conjugator)` with the core cyclically reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cyclic {
    pub conjugator: Option<NodeId>,
    pub core: Option<NodeId>,
}

impl FreeGroup {
    pub fn new(alphabet: Alphabet) -> Result<Self> {
        if !alphabet.is_group() {
            return Err(Error::NotGroupAlphabet);
        }
        Ok(FreeGroup {
            conv: Converter::new(alphabet),
            red: HashMap::new(),
            cancel: HashMap::new(),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.conv.alphabet()
    }

    pub fn slp(&self) -> &Slp {
        self.conv.slp()
    }

    pub fn converter(&mut self) -> &mut Converter {
        &mut self.conv
    }

    pub fn embed(&mut self, p: &Program) -> Result<Option<NodeId>> {
        self.conv.embed_root(p)
    }

    pub fn embed_all(&mut self, p: &Program) -> Result<Vec<Option<NodeId>>> {
        self.conv.embed(p)
    }

    pub fn word(&mut self, w: &[Letter]) -> Option<NodeId> {
        w.iter().fold(None, |acc, &l| {
            let x = self.conv.letter(l);
            self.conv.concat(acc, Some(x))
        })
    }

    pub fn len(&self, n: Option<NodeId>) -> BigUint {
        self.conv.len(n)
    }

    pub fn bar(&mut self, n: Option<NodeId>) -> Option<NodeId> {
        self.conv.bar_opt(n)
    }

    pub fn concat(&mut self, parts: &[Option<NodeId>]) -> Option<NodeId> {
        parts
            .iter()
            .fold(None, |acc, &p| self.conv.concat(acc, p))
    }

    pub fn decorate(&mut self, n: Option<NodeId>, lo: &BigUint, hi: &BigUint) -> Option<NodeId> {
        self.conv.decorate_opt(n, lo, hi)
    }

    pub fn lcp(&mut self, a: Option<NodeId>, b: Option<NodeId>) -> BigUint {
        lcp_nodes(&mut self.conv, a, b)
    }

    pub fn equal(&self, a: Option<NodeId>, b: Option<NodeId>) -> bool {
        equal_nodes(self.conv.slp(), a, b, EqualOptions::default()).0
    }

    /// Node for the free reduction of `w_n`.
    pub fn reduce(&mut self, n: Option<NodeId>) -> Option<NodeId> {
        let n = n?;
        if let Some(&r) = self.red.get(&n) {
            return r;
        }
        let order: Vec<NodeId> = self
            .conv
            .slp()
            .reachable(&[n])
            .into_iter()
            .filter(|m| !self.red.contains_key(m))
            .collect();
        for m in order {
            let r = match self.conv.slp().node(m) {
                Node::Letter(_) => Some(m),
                Node::Pair(u, v) => {
                    let (x, y) = (self.red[&u], self.red[&v]);
                    match (x, y) {
                        (None, r) | (r, None) => r,
                        (Some(x), Some(y)) => {
                            let xb = self.conv.bar(x);
                            let k = lcp_nodes(&mut self.conv, Some(xb), Some(y));
                            let xl = self.conv.slp().len(x).clone();
                            let yl = self.conv.slp().len(y).clone();
                            let left = self.conv.decorate(x, &BigUint::zero(), &(&xl - &k));
                            let right = self.conv.decorate(y, &k, &yl);
                            self.cancel.insert(m, k);
                            self.conv.concat(left, right)
                        }
                    }
                }
            };
            self.red.insert(m, r);
        }
        self.red[&n]
    }

    /// Cancellation depth recorded at a pair node by [`FreeGroup::reduce`].
    pub fn cancellation(&self, n: NodeId) -> BigUint {
        self.cancel.get(&n).cloned().unwrap_or_default()
    }

    /// Cyclic decomposition of an already reduced word.
    pub fn cyclic(&mut self, w: Option<NodeId>) -> Cyclic {
        let Some(n) = w else {
            return Cyclic {
                conjugator: None,
                core: None,
            };
        };
        let b = self.conv.bar(n);
        let k = lcp_nodes(&mut self.conv, Some(n), Some(b));
        let len = self.conv.slp().len(n).clone();
        assert!(&k * 2u32 < len, "a reduced non-trivial word has 2k < |w|");
        Cyclic {
            conjugator: self.conv.decorate(n, &BigUint::zero(), &k),
            core: self.conv.decorate(n, &k, &(&len - &k)),
        }
    }

    /// `a^e` for a letter, by repeated doubling.
    pub fn power(&mut self, l: Letter, e: &BigUint) -> Option<NodeId> {
        let mut acc = None;
        let mut sq = Some(self.conv.letter(l));
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = self.conv.concat(acc, sq);
            }
            sq = self.conv.concat(sq, sq);
        }
        acc
    }

    /// The word as an explicit letter sequence, refused beyond `cap`.
    pub fn decompress(&self, n: Option<NodeId>, cap: u64) -> Result<Vec<Letter>> {
        self.conv.slp().decompress(n, cap)
    }

    pub fn export(&self, n: Option<NodeId>) -> Program {
        self.conv.export(n)
    }
}

/// A program certified to produce a freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedProgram {
    pub program: Program,
    pub certified: bool,
}

/// Composition system `X_s -> X_u[:-k] X_v[k:]` for the free reduction.
pub fn free_reduce(p: &Program) -> Result<ReducedProgram> {
    let mut fg = FreeGroup::new(p.alphabet().clone())?;
    let root = fg.embed(p)?;
    fg.reduce(root);
    let mut g = Grammar::new(p.alphabet().clone());
    let Some(root) = root else {
        g.push("X", Production::Empty);
        return Ok(ReducedProgram {
            program: Program::new(g)?,
            certified: true,
        });
    };
    let mut ids: HashMap<NodeId, NtId> = HashMap::new();
    for m in fg.slp().reachable(&[root]) {
        let prod = match fg.slp().node(m) {
            Node::Letter(l) => Production::Terminal(l),
            Node::Pair(u, v) => {
                let (x, y) = (fg.red[&u], fg.red[&v]);
                match (x, y) {
                    (None, None) => Production::Empty,
                    (None, Some(_)) => Production::Seq(vec![Item::Ref(Ref::plain(ids[&v]))]),
                    (Some(_), None) => Production::Seq(vec![Item::Ref(Ref::plain(ids[&u]))]),
                    (Some(_), Some(_)) => {
                        let k = fg.cancellation(m);
                        let (left, right) = if k.is_zero() {
                            (Ref::plain(ids[&u]), Ref::plain(ids[&v]))
                        } else {
                            let kk = BigInt::from(k);
                            (
                                Ref::cut(ids[&u], Trunc::new(None, Some(-kk.clone()))),
                                Ref::cut(ids[&v], Trunc::new(Some(kk), None)),
                            )
                        };
                        Production::Seq(vec![Item::Ref(left), Item::Ref(right)])
                    }
                }
            }
        };
        let id = g.push(format!("X{}", m.0), prod);
        ids.insert(m, id);
    }
    g.root = ids[&root];
    Ok(ReducedProgram {
        program: Program::new(g)?,
        certified: true,
    })
}

/// Whether the word represents the identity.
pub fn is_trivial(p: &Program) -> Result<bool> {
    let mut fg = FreeGroup::new(p.alphabet().clone())?;
    let root = fg.embed(p)?;
    Ok(fg.reduce(root).is_none())
}

/// Non-terminals with a cancelling junction: the last letter of one
/// non-empty segment is the inverse of the first letter of the next.
pub fn junction_violations(p: &Program) -> Vec<NtId> {
    let a = p.alphabet();
    let mut bad = Vec::new();
    for i in 0..p.nonterminal_count() {
        let nt = NtId(i);
        let ends: Vec<(Letter, Letter)> = p
            .segments(nt)
            .iter()
            .filter(|s| !s.is_empty())
            .map(|s| match s.piece {
                Piece::Letter(l) => (l, l),
                Piece::Ref { target, inverted } => (
                    char_at_in(p, target, inverted, &s.lo),
                    char_at_in(p, target, inverted, &(&s.hi - 1u32)),
                ),
            })
            .collect();
        if ends
            .windows(2)
            .any(|w| a.bar(w[0].1) == Some(w[1].0))
        {
            bad.push(nt);
        }
    }
    bad
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicDecomposition {
    pub conjugator: Program,
    pub core: Program,
    pub k: BigUint,
}

/// `w_A` freely reduced to `c x inv(c)` with `x` cyclically reduced:
/// `conjugator = R[:k]` and `core = R[k:-k]` over the reduced program `R`.
pub fn cyclic_reduce(p: &Program) -> Result<CyclicDecomposition> {
    let reduced = free_reduce(p)?.program;
    let mut fg = FreeGroup::new(p.alphabet().clone())?;
    let r = fg.embed(&reduced)?;
    let b = fg.bar(r);
    let k = fg.lcp(r, b);
    let len = reduced.len().clone();
    assert!(len.is_zero() || &k * 2u32 < len);
    Ok(CyclicDecomposition {
        conjugator: reduced.truncated(&BigUint::zero(), &k)?,
        core: reduced.truncated(&k, &(&len - &k))?,
        k,
    })
}

/// Finds a pattern inside a text, both compressed.
pub trait Matcher {
    fn first_occurrence(&self, pattern: &Program, text: &Program) -> Result<Option<BigUint>>;
}

/// Reference matcher: decompresses both words (refusing patterns longer
/// than `cap`) and runs Knuth-Morris-Pratt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecompressingMatcher {
    pub cap: u64,
}

impl Default for DecompressingMatcher {
    fn default() -> Self {
        DecompressingMatcher { cap: 1_000_000 }
    }
}

pub fn kmp_find<T: PartialEq>(pattern: &[T], text: &[T]) -> Option<usize> {
    if pattern.is_empty() {
        return Some(0);
    }
    let mut fail = vec![0usize; pattern.len()];
    let mut k = 0;
    for i in 1..pattern.len() {
        while k > 0 && pattern[i] != pattern[k] {
            k = fail[k - 1];
        }
        if pattern[i] == pattern[k] {
            k += 1;
        }
        fail[i] = k;
    }
    k = 0;
    for (i, c) in text.iter().enumerate() {
        while k > 0 && *c != pattern[k] {
            k = fail[k - 1];
        }
        if *c == pattern[k] {
            k += 1;
        }
        if k == pattern.len() {
            return Some(i + 1 - k);
        }
    }
    None
}

impl Matcher for DecompressingMatcher {
    fn first_occurrence(&self, pattern: &Program, text: &Program) -> Result<Option<BigUint>> {
        let too_long = |len: &BigUint| len.to_u64().is_none_or(|n| n > self.cap);
        if too_long(pattern.len()) {
            return Err(Error::MatcherCapExceeded {
                len: pattern.len().clone(),
                cap: self.cap,
            });
        }
        let p = crate::query::decompress(pattern, self.cap)?;
        let t = crate::query::decompress(text, self.cap.saturating_mul(2))?;
        Ok(kmp_find(&p, &t).map(BigUint::from))
    }
}

/// Whether `w_A = U w_X inv(U)` for some `U`; the witness is reduced and
/// has been verified by compressed equality.
pub fn conjugate(a: &Program, x: &Program, matcher: &dyn Matcher) -> Result<Verdict> {
    let (a, x) = a.align(x)?;
    let mut fg = FreeGroup::new(a.alphabet().clone())?;
    let ra = fg.embed(&a)?;
    let rx = fg.embed(&x)?;
    let ra = fg.reduce(ra);
    let rx = fg.reduce(rx);
    let ca = fg.cyclic(ra);
    let cx = fg.cyclic(rx);
    let la = fg.len(ca.core);
    if la != fg.len(cx.core) {
        return Ok(Verdict::no());
    }
    let bcx = fg.bar(cx.conjugator);
    let u = if la.is_zero() {
        fg.concat(&[ca.conjugator, bcx])
    } else {
        let pattern = fg.export(ca.core);
        let doubled = fg.concat(&[cx.core, cx.core]);
        let text = fg.export(doubled);
        let Some(r) = matcher.first_occurrence(&pattern, &text)? else {
            return Ok(Verdict::no());
        };
        let s = fg.decorate(cx.core, &BigUint::zero(), &r);
        let t = fg.decorate(cx.core, &r, &la);
        if fg.len(t) <= fg.len(s) {
            fg.concat(&[ca.conjugator, t, bcx])
        } else {
            let sb = fg.bar(s);
            fg.concat(&[ca.conjugator, sb, bcx])
        }
    };
    let u = fg.reduce(u);
    let ub = fg.bar(u);
    let check = fg.concat(&[u, rx, ub]);
    let check = fg.reduce(check);
    assert!(fg.equal(check, ra), "conjugacy witness failed verification");
    Ok(Verdict::yes(fg.export(u)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::query::decompress;
    use crate::text::parse;

    fn word(p: &Program) -> String {
        p.alphabet().format_word(&decompress(p, 1 << 20).unwrap())
    }

    fn prog(w: &str) -> Program {
        let a = Alphabet::group(["a", "b"]).unwrap();
        Program::from_word(a.clone(), &a.parse_word(w).unwrap()).unwrap()
    }

    #[test]
    fn reduces_iterated_automorphism() {
        let p = families::iterated_automorphism(5);
        let r = free_reduce(&p).unwrap();
        assert_eq!(r.program.kind(), crate::program::ProgramKind::CompositionSystem);
        assert_eq!(word(&r.program), "b a b a b a' b' a' b'");
        assert!(junction_violations(&r.program).is_empty());
        let p4 = families::iterated_automorphism(4);
        assert_eq!(word(&free_reduce(&p4).unwrap().program), "b a b a b' a' b'");
        assert!(!is_trivial(&p).unwrap());
    }

    #[test]
    fn small_reductions() {
        assert!(is_trivial(&prog("a b b' a'")).unwrap());
        assert!(is_trivial(&prog("a a'")).unwrap());
        assert!(is_trivial(&prog("")).unwrap());
        assert_eq!(word(&free_reduce(&prog("a b a'")).unwrap().program), "a b a'");
        let r = free_reduce(&prog("a b a'")).unwrap().program;
        assert!(!r.has_truncation());
        assert!(matches!(
            is_trivial(&families::fibonacci(3)),
            Err(Error::NotGroupAlphabet)
        ));
    }

    #[test]
    fn cyclic_reductions() {
        let d = cyclic_reduce(&prog("a b a'")).unwrap();
        assert_eq!((word(&d.conjugator), word(&d.core)), ("a".into(), "b".into()));
        let d = cyclic_reduce(&prog("b a b a b' a' b'")).unwrap();
        assert_eq!((word(&d.conjugator), word(&d.core)), ("b a b".into(), "a".into()));
        let d = cyclic_reduce(&prog("a b")).unwrap();
        assert!(d.k.is_zero() && word(&d.conjugator).is_empty());
    }

    #[test]
    fn conjugacy_examples() {
        let m = DecompressingMatcher::default();
        let v = conjugate(&prog("a b"), &prog("b a"), &m).unwrap();
        assert!(v.holds);
        assert_eq!(word(&v.witness.unwrap()), "a");
        assert!(!conjugate(&prog("a b"), &prog("a b'"), &m).unwrap().holds);
        let v = conjugate(&prog("b a b a b' a' b'"), &prog("a"), &m).unwrap();
        assert_eq!(word(&v.witness.unwrap()), "b a b");
        let v = conjugate(&prog("a a'"), &prog(""), &m).unwrap();
        assert!(v.holds && word(&v.witness.unwrap()).is_empty());
        let tight = DecompressingMatcher { cap: 1 };
        assert!(matches!(
            conjugate(&prog("a b"), &prog("b a"), &tight),
            Err(Error::MatcherCapExceeded { .. })
        ));
    }

    #[test]
    fn composition_system_output_reparses() {
        let r = free_reduce(&families::iterated_automorphism(7)).unwrap().program;
        let again = parse(&crate::text::print(&r)).unwrap();
        assert_eq!(again, r);
    }
}
