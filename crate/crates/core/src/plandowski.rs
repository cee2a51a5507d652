//! Equality of compressed words by assertion splitting and compaction, and
//! longest common prefixes by binary search over equality probes.
//!
//! Both programs live in one [`Slp`] arena; [`Side`] tags keep the two
//! copies apart so an assertion always relates one node of each.
//! An assertion `(F, S, i)` states `w_F[i:i+l] = w_S[:l]` with
//! `l = min(|w_F| - i, |w_S|)`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::alphabet::Letter;
use crate::error::{Error, Result};
use crate::hagenah::Converter;
use crate::program::Program;
use crate::slp::{Node, NodeId, Slp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    X,
}

/// A terminal or a node of one side. Letter nodes are always stored as
/// [`Sym::Letter`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    Letter(Letter),
    Node(Side, NodeId),
}

impl Sym {
    pub fn of(slp: &Slp, side: Side, id: NodeId) -> Sym {
        match slp.node(id) {
            Node::Letter(l) => Sym::Letter(l),
            Node::Pair(..) => Sym::Node(side, id),
        }
    }

    fn len(self, slp: &Slp) -> BigUint {
        match self {
            Sym::Letter(_) => BigUint::one(),
            Sym::Node(_, id) => slp.len(id).clone(),
        }
    }

    fn height(self, slp: &Slp) -> u32 {
        match self {
            Sym::Letter(_) => 0,
            Sym::Node(_, id) => slp.height(id),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    Overlap,
    Subword,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assertion {
    pub first: Sym,
    pub second: Sym,
    pub offset: BigUint,
}

impl Assertion {
    pub fn new(first: Sym, second: Sym, offset: impl Into<BigUint>) -> Self {
        Assertion {
            first,
            second,
            offset: offset.into(),
        }
    }

    pub fn class(&self, slp: &Slp) -> Class {
        if self.first.len(slp) <= &self.offset + self.second.len(slp) {
            Class::Overlap
        } else {
            Class::Subword
        }
    }

    /// Checked against explicit words; used by tests and oracles.
    pub fn holds(&self, slp: &Slp) -> bool {
        let word = |s: Sym| match s {
            Sym::Letter(l) => vec![l],
            Sym::Node(_, id) => slp.decompress(Some(id), u64::MAX).unwrap(),
        };
        let f = word(self.first);
        let s = word(self.second);
        let i = usize::try_from(&self.offset).unwrap();
        let l = (f.len() - i).min(s.len());
        f[i..i + l] == s[..l]
    }
}

/// Deduplicated assertions: overlaps grouped by `(first, second)` with
/// sorted offsets, subwords in a set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AssertionSet {
    overlaps: BTreeMap<(Sym, Sym), Vec<BigUint>>,
    subwords: BTreeSet<Assertion>,
}

/// Letter pair that disagrees: the set is unsatisfiable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Contradiction;

impl AssertionSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn overlap_count(&self) -> usize {
        self.overlaps.values().map(Vec::len).sum()
    }

    pub fn subword_count(&self) -> usize {
        self.subwords.len()
    }

    pub fn len(&self) -> usize {
        self.overlap_count() + self.subword_count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Assertion> + '_ {
        self.overlaps
            .iter()
            .flat_map(|(&(f, s), offs)| offs.iter().map(move |i| Assertion::new(f, s, i.clone())))
            .chain(self.subwords.iter().cloned())
    }

    /// Overlap offsets recorded for a pair.
    pub fn overlap_offsets(&self, first: Sym, second: Sym) -> &[BigUint] {
        self.overlaps
            .get(&(first, second))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    fn max_pair_overlaps(&self, slp: &Slp) -> bool {
        self.overlaps
            .iter()
            .all(|(&(f, _), offs)| offs.len() as u64 <= 2 * u64::from(f.height(slp)) + 1)
    }

    /// Insert in canonical form. Letter pairs are decided on the spot; a
    /// subword at offset 0 is stored as the mirrored overlap; with
    /// `shortcut`, a node asserted equal to itself is dropped.
    pub fn insert(
        &mut self,
        slp: &Slp,
        a: Assertion,
        shortcut: bool,
    ) -> std::result::Result<(), Contradiction> {
        let Assertion {
            first,
            second,
            offset,
        } = a;
        debug_assert!(offset < first.len(slp));
        if let (Sym::Letter(x), Sym::Letter(y)) = (first, second) {
            return if x == y { Ok(()) } else { Err(Contradiction) };
        }
        if shortcut && offset.is_zero() {
            if let (Sym::Node(_, u), Sym::Node(_, v)) = (first, second) {
                if u == v {
                    return Ok(());
                }
            }
        }
        let fl = first.len(slp);
        let sl = second.len(slp);
        if &fl - &offset <= sl {
            let offs = self.overlaps.entry((first, second)).or_default();
            if let Err(pos) = offs.binary_search(&offset) {
                offs.insert(pos, offset);
            }
        } else if offset.is_zero() {
            return self.insert(slp, Assertion::new(second, first, 0u32), shortcut);
        } else {
            self.subwords.insert(Assertion {
                first,
                second,
                offset,
            });
        }
        Ok(())
    }

    fn mentioned(&self) -> impl Iterator<Item = Sym> + '_ {
        self.overlaps
            .keys()
            .flat_map(|&(f, s)| [f, s])
            .chain(self.subwords.iter().flat_map(|a| [a.first, a.second]))
    }

    /// The node to split next: longest, side `A` first, then lowest id.
    pub fn split_target(&self, slp: &Slp) -> Option<Sym> {
        self.mentioned()
            .filter(|s| matches!(s, Sym::Node(..)))
            .max_by_key(|&s| {
                let Sym::Node(side, id) = s else { unreachable!() };
                (s.len(slp), Reverse(side), Reverse(id))
            })
    }
}

/// Pieces of one assertion after splitting `p -> c d`.
fn split_one(slp: &Slp, a: &Assertion, p: Sym, c: Sym, d: Sym, out: &mut Vec<Assertion>) {
    let cl = c.len(slp);
    let i = &a.offset;
    if a.first == p {
        let l = (p.len(slp) - i).min(a.second.len(slp));
        if i < &cl {
            out.push(Assertion::new(c, a.second, i.clone()));
        }
        if i + &l > cl {
            if i >= &cl {
                out.push(Assertion::new(d, a.second, i - &cl));
            } else {
                out.push(Assertion::new(a.second, d, &cl - i));
            }
        }
    } else if a.second == p {
        let l = (a.first.len(slp) - i).min(p.len(slp));
        out.push(Assertion::new(a.first, c, i.clone()));
        if l > cl {
            out.push(Assertion::new(a.first, d, i + &cl));
        }
    } else {
        out.push(a.clone());
    }
}

/// Replace every assertion mentioning `p` by its split pieces.
///
/// `p` must be a node of maximal length among those mentioned. Returns
/// `Ok(None)` if a letter comparison fails.
pub fn split(slp: &Slp, gamma: &AssertionSet, p: Sym, shortcut: bool) -> Result<Option<AssertionSet>> {
    let Sym::Node(side, id) = p else {
        return Err(Error::PNotMaximal);
    };
    if gamma.split_target(slp).map(|t| t.len(slp)) != Some(p.len(slp)) {
        return Err(Error::PNotMaximal);
    }
    let Node::Pair(cu, dv) = slp.node(id) else {
        unreachable!("node symbols are pairs")
    };
    let (c, d) = (Sym::of(slp, side, cu), Sym::of(slp, side, dv));
    let mut next = AssertionSet::new();
    let mut pieces = Vec::with_capacity(2);
    for a in gamma.iter() {
        pieces.clear();
        split_one(slp, &a, p, c, d, &mut pieces);
        for piece in pieces.drain(..) {
            if next.insert(slp, piece, shortcut).is_err() {
                return Ok(None);
            }
        }
    }
    Ok(Some(next))
}

/// Apply the periodicity replacement `{i, j, k} -> {i, i + gcd(j-i, k-i)}`
/// to every overlap triple with `(j-i) + (k-i) <= |w_F| - i`, to a fixpoint.
pub fn compact(slp: &Slp, gamma: &AssertionSet) -> AssertionSet {
    let mut out = gamma.clone();
    for (&(f, _), offs) in out.overlaps.iter_mut() {
        let fl = f.len(slp);
        compact_offsets(&fl, offs);
    }
    out
}

fn compact_offsets(fl: &BigUint, offs: &mut Vec<BigUint>) {
    let mut start = 0;
    while start + 2 < offs.len() {
        let (i, j, k) = (&offs[start], &offs[start + 1], &offs[start + 2]);
        let (dj, dk) = (j - i, k - i);
        if &dj + &dk <= fl - i {
            let next = i + dj.gcd(&dk);
            offs.drain(start + 1..start + 3);
            if let Err(pos) = offs.binary_search(&next) {
                offs.insert(pos, next);
            }
        } else {
            start += 1;
        }
    }
}

/// `p` is a period of `u`: `u[i] = u[i + p]` wherever both exist.
pub fn is_period<T: PartialEq>(u: &[T], p: usize) -> Result<bool> {
    if p == 0 || p >= u.len() {
        return Err(Error::POutOfRange { p, len: u.len() });
    }
    Ok(u.iter().zip(&u[p..]).all(|(a, b)| a == b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EqualOptions {
    /// Drop assertions relating a node to itself at offset 0.
    pub shortcut: bool,
    /// Count reachable nodes and audit the size bounds every round.
    pub audit: bool,
}

impl Default for EqualOptions {
    fn default() -> Self {
        EqualOptions {
            shortcut: true,
            audit: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundStats {
    pub round: usize,
    pub split: Sym,
    /// Counts of the previous round's compacted set.
    pub prev_overlaps: usize,
    pub prev_subwords: usize,
    /// Counts straight after splitting.
    pub split_overlaps: usize,
    pub split_subwords: usize,
    /// Counts after compaction.
    pub overlaps: usize,
    pub subwords: usize,
    /// Every overlap group has at most `2 height(first) + 1` offsets.
    pub pair_bound_ok: bool,
}

impl RoundStats {
    pub fn size(&self) -> usize {
        self.overlaps + self.subwords
    }

    /// `o' <= o + 2s` and `s' <= o + s` across the split.
    pub fn growth_as_stated(&self) -> bool {
        self.split_overlaps <= self.prev_overlaps + 2 * self.prev_subwords
            && self.split_subwords <= self.prev_overlaps + self.prev_subwords
    }

    /// Each assertion splits into at most two overlaps and at most one
    /// subword: `o' <= 2(o + s)` and `s' <= o + s`.
    pub fn growth_per_assertion(&self) -> bool {
        let before = self.prev_overlaps + self.prev_subwords;
        self.split_overlaps <= 2 * before && self.split_subwords <= before
    }
}

impl fmt::Display for RoundStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "round {}: o={}, s={}, |Γ|={}",
            self.round,
            self.overlaps,
            self.subwords,
            self.size()
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EqualStats {
    pub rounds: Vec<RoundStats>,
    /// Reachable node counts of the two sides (only with `audit`).
    pub m: usize,
    pub n: usize,
    pub resplit: bool,
}

impl EqualStats {
    /// `|Γ_k| <= (k+1) 4mn(m+n)` after every round.
    pub fn size_bound_holds(&self) -> bool {
        let (m, n) = (self.m as u128, self.n as u128);
        self.rounds
            .iter()
            .all(|r| (r.size() as u128) <= (r.round as u128 + 1) * 4 * m * n * (m + n))
    }

    pub fn pair_bound_holds(&self) -> bool {
        self.rounds.iter().all(|r| r.pair_bound_ok)
    }

    pub fn trace(&self) -> String {
        self.rounds.iter().map(|r| format!("{r}\n")).collect()
    }
}

/// Whether `w_a = w_b` for two nodes of one arena (`None` is the empty word).
pub fn equal_nodes(
    slp: &Slp,
    a: Option<NodeId>,
    b: Option<NodeId>,
    opts: EqualOptions,
) -> (bool, EqualStats) {
    let mut stats = EqualStats::default();
    let (a, b) = match (a, b) {
        (None, None) => return (true, stats),
        (Some(a), Some(b)) => (a, b),
        _ => return (false, stats),
    };
    if slp.len(a) != slp.len(b) {
        return (false, stats);
    }
    if opts.audit {
        stats.m = slp.reachable(&[a]).len();
        stats.n = slp.reachable(&[b]).len();
    }
    let mut gamma = AssertionSet::new();
    let seed = Assertion::new(Sym::of(slp, Side::A, a), Sym::of(slp, Side::X, b), 0u32);
    if gamma.insert(slp, seed, opts.shortcut).is_err() {
        return (false, stats);
    }
    let mut done: HashSet<Sym> = HashSet::new();
    let mut round = 0;
    while let Some(p) = gamma.split_target(slp) {
        round += 1;
        stats.resplit |= !done.insert(p);
        let (o, s) = (gamma.overlap_count(), gamma.subword_count());
        let Some(next) = split(slp, &gamma, p, opts.shortcut).expect("target is maximal") else {
            return (false, stats);
        };
        let (so, ss) = (next.overlap_count(), next.subword_count());
        gamma = compact(slp, &next);
        stats.rounds.push(RoundStats {
            round,
            split: p,
            prev_overlaps: o,
            prev_subwords: s,
            split_overlaps: so,
            split_subwords: ss,
            overlaps: gamma.overlap_count(),
            subwords: gamma.subword_count(),
            pair_bound_ok: !opts.audit || gamma.max_pair_overlaps(slp),
        });
    }
    debug_assert!(gamma.is_empty());
    (true, stats)
}

/// Whether two programs (of any kind) produce the same word.
pub fn equal(a: &Program, x: &Program) -> Result<bool> {
    equal_with_stats(a, x, EqualOptions::default()).map(|(e, _)| e)
}

pub fn equal_with_stats(a: &Program, x: &Program, opts: EqualOptions) -> Result<(bool, EqualStats)> {
    let (a, x) = a.align(x)?;
    let mut conv = Converter::new(a.alphabet().clone());
    let ra = conv.embed_root(&a)?;
    let rx = conv.embed_root(&x)?;
    Ok(equal_nodes(conv.slp(), ra, rx, opts))
}

/// Largest `k` with `w_a[:k] = w_b[:k]`: galloping, then binary search over
/// prefix decorations, each probe decided by [`equal_nodes`].
pub fn lcp_nodes(conv: &mut Converter, a: Option<NodeId>, b: Option<NodeId>) -> BigUint {
    let (Some(a), Some(b)) = (a, b) else {
        return BigUint::zero();
    };
    let max = conv.slp().len(a).min(conv.slp().len(b)).clone();
    let mut memo: HashMap<BigUint, bool> = HashMap::new();
    let mut probe = |conv: &mut Converter, k: &BigUint| -> bool {
        if let Some(&r) = memo.get(k) {
            return r;
        }
        let pa = conv.prefix(a, k);
        let pb = conv.prefix(b, k);
        let r = equal_nodes(conv.slp(), pa, pb, EqualOptions::default()).0;
        memo.insert(k.clone(), r);
        r
    };
    if conv.slp().first_letter(a) != conv.slp().first_letter(b) {
        return BigUint::zero();
    }
    if probe(conv, &max) {
        return max;
    }
    let mut good = BigUint::one();
    let mut bad = max.clone();
    let mut step = BigUint::from(2u32);
    while step < max {
        if probe(conv, &step) {
            good = step.clone();
            step <<= 1;
        } else {
            bad = step;
            break;
        }
    }
    while &good + 1u32 < bad {
        let mid: BigUint = (&good + &bad) >> 1;
        if probe(conv, &mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

/// Longest common prefix of two programs of any kind.
pub fn lcp(a: &Program, x: &Program) -> Result<BigUint> {
    let (a, x) = a.align(x)?;
    let mut conv = Converter::new(a.alphabet().clone());
    let ra = conv.embed_root(&a)?;
    let rx = conv.embed_root(&x)?;
    Ok(lcp_nodes(&mut conv, ra, rx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::text::parse;

    fn no_shortcut() -> EqualOptions {
        EqualOptions {
            shortcut: false,
            audit: true,
        }
    }

    #[test]
    fn fibonacci_equalities() {
        let f8 = families::fibonacci(8);
        let f9 = families::fibonacci(9);
        assert!(equal(&f8, &f8).unwrap());
        assert!(!equal(&f8, &f9).unwrap());
        let (e, stats) = equal_with_stats(&f8, &f8, no_shortcut()).unwrap();
        assert!(e);
        assert!(stats.size_bound_holds() && stats.pair_bound_holds() && !stats.resplit);
        let f7 = f9.with_root(f9.find("F7").unwrap()).unwrap();
        let f6 = f9.with_root(f9.find("F6").unwrap()).unwrap();
        let joined = Program::concat(
            f9.alphabet(),
            &[
                crate::program::Part::Program(&f7, false),
                crate::program::Part::Program(&f6, false),
            ],
        )
        .unwrap();
        assert!(equal_with_stats(&joined, &f8, no_shortcut()).unwrap().0);
    }

    #[test]
    fn truncated_doubling_against_literal() {
        let b = families::truncated_doubling(8);
        let text = "bababbabbbababbabbababbabbbababbab";
        let items: Vec<String> = text.chars().map(|c| format!("'{c}'")).collect();
        let lit = parse(&format!("alphabet a b\nR -> {}\n", items.join(" "))).unwrap();
        assert!(equal_with_stats(&b, &lit, no_shortcut()).unwrap().0);
        let mut wrong = items.clone();
        wrong[17] = "'a'".into();
        let lit = parse(&format!("alphabet a b\nR -> {}\n", wrong.join(" "))).unwrap();
        assert!(!equal(&b, &lit).unwrap());
    }

    #[test]
    fn split_table_rows() {
        // B -> C D with |C| = 3, |D| = 4; Y of length 4
        let mut slp = Slp::new();
        let [a, b] = [slp.letter(Letter(0)), slp.letter(Letter(1))];
        let ab = slp.pair(a, b);
        let c = slp.pair(ab, a);
        let d = slp.pair(ab, ab);
        let bb = slp.pair(c, d);
        let y = slp.pair(ab, ab);
        let (pb, py) = (Sym::Node(Side::A, bb), Sym::Node(Side::X, y));
        let (pc, pd) = (Sym::Node(Side::A, c), Sym::Node(Side::A, d));
        let run = |g: &AssertionSet| split(&slp, g, pb, false).unwrap().unwrap();

        let mut g = AssertionSet::new();
        g.insert(&slp, Assertion::new(pb, py, 1u32), false).unwrap();
        let got: Vec<_> = run(&g).iter().collect();
        assert!(got.contains(&Assertion::new(pc, py, 1u32)));
        assert!(got.contains(&Assertion::new(py, pd, 2u32)));
        assert_eq!(got.len(), 2);

        let mut g = AssertionSet::new();
        g.insert(&slp, Assertion::new(pb, py, 5u32), false).unwrap();
        let got: Vec<_> = run(&g).iter().collect();
        assert_eq!(got, vec![Assertion::new(pd, py, 2u32)]);

        // subword (B, Z, 1) with |Z| = 2 ends exactly at |C| = 3
        let z = Sym::Node(Side::X, ab);
        let mut g = AssertionSet::new();
        g.insert(&slp, Assertion::new(pb, z, 1u32), false).unwrap();
        assert_eq!(g.subword_count(), 1);
        let next = run(&g);
        let got: Vec<_> = next.iter().collect();
        assert_eq!(got, vec![Assertion::new(pc, z, 1u32)]);
        assert_eq!(got[0].class(&slp), Class::Overlap);
    }

    #[test]
    fn compaction_examples() {
        let mut offs: Vec<BigUint> = [0u32, 2, 4].map(BigUint::from).to_vec();
        compact_offsets(&BigUint::from(6u32), &mut offs);
        assert_eq!(offs, [0u32, 2].map(BigUint::from).to_vec());
        let mut offs: Vec<BigUint> = [0u32, 3, 5].map(BigUint::from).to_vec();
        compact_offsets(&BigUint::from(8u32), &mut offs);
        assert_eq!(offs, [0u32, 1].map(BigUint::from).to_vec());
        let mut offs: Vec<BigUint> = [0u32, 3].map(BigUint::from).to_vec();
        compact_offsets(&BigUint::from(8u32), &mut offs);
        assert_eq!(offs.len(), 2);
    }

    #[test]
    fn periods() {
        let u: Vec<char> = "ababab".chars().collect();
        assert!(is_period(&u, 2).unwrap());
        assert!(!is_period(&u, 3).unwrap());
        let c: Vec<char> = "aaaaaa".chars().collect();
        assert!((1..=5).all(|p| is_period(&c, p).unwrap()));
        assert!(is_period(&c, 6).is_err());
    }

    #[test]
    fn lcp_examples() {
        let f8 = families::fibonacci(8);
        let f9 = families::fibonacci(9);
        assert_eq!(lcp(&f8, &f9).unwrap(), BigUint::from(21u32));
        assert_eq!(lcp(&f9, &f9).unwrap(), BigUint::from(34u32));
        let x = parse("alphabet a b c x\nR -> 'a' 'b' 'c'\n").unwrap();
        let y = parse("alphabet a b c x\nR -> 'x' 'b' 'c'\n").unwrap();
        assert_eq!(lcp(&x, &y).unwrap(), BigUint::zero());
    }
}
