//! Seeded random programs, automorphisms and words.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use slpg::groups::Nielsen;
use slpg::program::{Grammar, Item, NtId, Production, Ref, Trunc};
use slpg::{families, Alphabet, Letter, Program};

use crate::naive::{self, Mixed};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Random,
    Fibonacci(usize),
    TruncatedDoubling(usize),
    IteratedAutomorphism(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    /// Number of generators (group) or letters (plain).
    pub rank: usize,
    pub group: bool,
    pub nonterminals: usize,
    pub truncation_prob: f64,
    pub inversion_prob: f64,
    /// Productions preferentially reference the last `target_height`
    /// non-terminals, so heights grow roughly linearly.
    pub target_height: usize,
    /// No non-terminal produces more letters than this.
    pub max_len: usize,
    pub family: Family,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            rank: 2,
            group: true,
            nonterminals: 12,
            truncation_prob: 0.0,
            inversion_prob: 0.0,
            target_height: 6,
            max_len: 10_000,
            family: Family::Random,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn alphabet(rank: usize, group: bool) -> Alphabet {
    if group {
        Alphabet::numbered_group(rank)
    } else {
        Alphabet::plain((0..rank).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
    }
}

pub fn gen_program(cfg: &GeneratorConfig) -> Program {
    match cfg.family {
        Family::Fibonacci(n) => return families::fibonacci(n),
        Family::TruncatedDoubling(n) => return families::truncated_doubling(n),
        Family::IteratedAutomorphism(n) => return families::iterated_automorphism(n),
        Family::Random => {}
    }
    let mut r = rng(cfg.seed);
    let a = alphabet(cfg.rank, cfg.group);
    let mut g = Grammar::new(a.clone());
    let mut lens: Vec<usize> = Vec::new();
    let letters: Vec<Letter> = a.letters().collect();
    let start = r.gen_range(1..=cfg.rank.max(1));
    for (i, &plain) in letters.iter().enumerate().take(start) {
        let l = if cfg.group { a.generator(i) } else { plain };
        g.push(format!("T{i}"), Production::Terminal(l));
        lens.push(1);
    }
    for k in 0..cfg.nonterminals {
        let avail = lens.len();
        let window = cfg.target_height.max(1).min(avail);
        let arity = r.gen_range(1..=3);
        let mut items = Vec::new();
        let mut total = 0usize;
        for _ in 0..arity {
            if r.gen_bool(0.15) {
                items.push(Item::Letter(*letters.choose(&mut r).unwrap()));
                total += 1;
                continue;
            }
            let t = if r.gen_bool(0.7) {
                avail - 1 - r.gen_range(0..window)
            } else {
                r.gen_range(0..avail)
            };
            let n = lens[t];
            let inverted = cfg.group && r.gen_bool(cfg.inversion_prob);
            let (trunc, take) = if n > 0 && r.gen_bool(cfg.truncation_prob) {
                let lo = r.gen_range(0..=n);
                let hi = r.gen_range(lo..=n);
                let neg = r.gen_bool(0.3) && hi > 0 && hi < n;
                let hi_b = if neg { BigInt::from(hi as i64 - n as i64) } else { BigInt::from(hi) };
                (Some(Trunc::new(Some(lo.into()), Some(hi_b))), hi - lo)
            } else {
                (None, n)
            };
            if total + take > cfg.max_len {
                continue;
            }
            total += take;
            items.push(Item::Ref(Ref {
                target: NtId(t),
                inverted,
                trunc,
            }));
        }
        g.push(format!("N{k}"), Production::Seq(items));
        lens.push(total);
    }
    Program::new(g).expect("generated grammar is valid")
}

/// A random grammar for an explicit word: random binary bracketing with
/// fresh names.
pub fn bracket_word(r: &mut impl Rng, a: &Alphabet, w: &[Letter], stem: &str) -> Program {
    let mut g = Grammar::new(a.clone());
    if w.is_empty() {
        g.push(format!("{stem}0"), Production::Empty);
        return Program::new(g).unwrap();
    }
    fn build(r: &mut impl Rng, g: &mut Grammar, w: &[Letter], stem: &str) -> NtId {
        if w.len() <= 2 || r.gen_bool(0.1) {
            let items = w.iter().map(|&l| Item::Letter(l)).collect();
            return g.push_fresh(stem, Production::Seq(items));
        }
        let cut = r.gen_range(1..w.len());
        let x = build(r, g, &w[..cut], stem);
        let y = build(r, g, &w[cut..], stem);
        g.push_fresh(stem, Production::Seq(vec![Item::Ref(Ref::plain(x)), Item::Ref(Ref::plain(y))]))
    }
    build(r, &mut g, w, stem);
    Program::new(g).unwrap()
}

/// A program for the same word as `p`: split at a random point into two
/// truncated copies, optionally with every production re-associated.
pub fn rebracket(r: &mut impl Rng, p: &Program) -> Program {
    let q = if r.gen_bool(0.5) { right_fold(p) } else { p.clone() };
    let n = p.len().clone();
    let mut g = Grammar::new(p.alphabet().clone());
    let root = g.import(&q, "q_").unwrap();
    if n == 0u32.into() {
        g.push("S", Production::Seq(vec![Item::Ref(Ref::plain(root))]));
        return Program::new(g).unwrap();
    }
    let limit = u64::try_from(&n).unwrap_or(u64::MAX);
    let i = BigInt::from(r.gen_range(0..=limit));
    g.push(
        "S",
        Production::Seq(vec![
            Item::Ref(Ref::cut(root, Trunc::new(None, Some(i.clone())))),
            Item::Ref(Ref::cut(root, Trunc::new(Some(i), None))),
        ]),
    );
    Program::new(g).unwrap()
}

/// Every sequence of three or more items nested to the right.
pub fn right_fold(p: &Program) -> Program {
    let src = p.grammar();
    let mut g = Grammar::new(src.alphabet.clone());
    let mut ids = Vec::with_capacity(src.productions.len());
    for (name, prod) in src.names.iter().zip(&src.productions) {
        let remap = |it: &Item| match it {
            Item::Letter(l) => Item::Letter(*l),
            Item::Ref(rf) => Item::Ref(Ref {
                target: ids[rf.target.0],
                ..rf.clone()
            }),
        };
        let prod = match prod {
            Production::Seq(items) if items.len() > 2 => {
                let mut acc = remap(&items[items.len() - 1]);
                for it in items[1..items.len() - 1].iter().rev() {
                    let id = g.push_fresh(&format!("{name}_r"), Production::Seq(vec![remap(it), acc]));
                    acc = Item::Ref(Ref::plain(id));
                }
                Production::Seq(vec![remap(&items[0]), acc])
            }
            Production::Seq(items) => Production::Seq(items.iter().map(remap).collect()),
            other => other.clone(),
        };
        ids.push(g.push_fresh(name, prod));
    }
    g.root = ids[src.root.0];
    Program::new(g).unwrap()
}

/// `p` with the letter at a random position replaced by a different
/// letter; `None` for the empty word or a one-letter alphabet.
pub fn mutate(r: &mut impl Rng, p: &Program) -> Option<Program> {
    let n = u64::try_from(p.len()).ok()?;
    let letters: Vec<Letter> = p.alphabet().letters().collect();
    if n == 0 || letters.len() < 2 {
        return None;
    }
    let i = r.gen_range(0..n);
    let old = slpg::query::char_at(p, &BigInt::from(i)).unwrap();
    let new = *letters.iter().filter(|&&l| l != old).collect::<Vec<_>>().choose(r).unwrap();
    let mut g = Grammar::new(p.alphabet().clone());
    let root = g.import(p, "m_").unwrap();
    g.push(
        "S",
        Production::Seq(vec![
            Item::Ref(Ref::cut(root, Trunc::new(None, Some(i.into())))),
            Item::Letter(*new),
            Item::Ref(Ref::cut(root, Trunc::new(Some((i + 1).into()), None))),
        ]),
    );
    Some(Program::new(g).unwrap())
}

pub fn random_word(r: &mut impl Rng, rank: usize, len: usize) -> Vec<Letter> {
    (0..len).map(|_| Letter(r.gen_range(0..2 * rank as u32))).collect()
}

pub fn random_reduced_word(r: &mut impl Rng, rank: usize, len: usize) -> Vec<Letter> {
    let mut w: Vec<Letter> = Vec::with_capacity(len);
    while w.len() < len {
        let l = Letter(r.gen_range(0..2 * rank as u32));
        if w.last().is_none_or(|x| x.0 ^ 1 != l.0) {
            w.push(l);
        }
    }
    w
}

pub fn random_nielsen(r: &mut impl Rng, rank: usize, len: usize) -> Vec<Nielsen> {
    (0..len)
        .map(|_| {
            let i = r.gen_range(0..rank);
            if rank < 2 || r.gen_bool(0.2) {
                return Nielsen::Inv(i);
            }
            let j = (i + r.gen_range(1..rank)) % rank;
            if r.gen_bool(0.5) {
                Nielsen::Mul(i, j)
            } else {
                Nielsen::MulInv(i, j)
            }
        })
        .collect()
}

/// Explicit generator images of a single Nielsen token.
pub fn nielsen_images(t: Nielsen, rank: usize) -> Vec<Vec<Letter>> {
    let g = |i: usize| Letter(2 * i as u32);
    let mut images: Vec<Vec<Letter>> = (0..rank).map(|i| vec![g(i)]).collect();
    match t {
        Nielsen::Inv(i) => images[i] = vec![Letter(g(i).0 ^ 1)],
        Nielsen::Mul(i, j) => images[i] = vec![g(i), g(j)],
        Nielsen::MulInv(i, j) => images[i] = vec![g(i), Letter(g(j).0 ^ 1)],
    }
    images
}

/// A random automorphism with every image of length at most `max_image`,
/// as explicit images of `phi` and `phi^{-1}`.
pub fn random_automorphism(
    r: &mut impl Rng,
    rank: usize,
    max_image: usize,
) -> (Vec<Vec<Letter>>, Vec<Vec<Letter>>) {
    loop {
        let len = r.gen_range(0..=4);
        let word = random_nielsen(r, rank, len);
        let maps: Vec<_> = word.iter().map(|&t| nielsen_images(t, rank)).collect();
        let inv: Vec<_> = word.iter().rev().map(|&t| nielsen_images(t.inverse(), rank)).collect();
        let phi = naive::compose(&maps, rank).unwrap();
        if phi.iter().all(|u| u.len() <= max_image) {
            return (phi, naive::compose(&inv, rank).unwrap());
        }
    }
}

/// A random word over `F * <t>` of `t`-exponent zero.
pub fn random_mixed_word(r: &mut impl Rng, rank: usize, len: usize) -> Vec<Mixed> {
    let mut w: Vec<Mixed> = (0..len)
        .map(|_| match r.gen_range(0..4) {
            0 => Mixed::T,
            1 => Mixed::TInv,
            _ => Mixed::G(Letter(r.gen_range(0..2 * rank as u32))),
        })
        .collect();
    let mut e: i64 = w
        .iter()
        .map(|m| match m {
            Mixed::T => 1,
            Mixed::TInv => -1,
            _ => 0,
        })
        .sum();
    let mut q = 0;
    while e != 0 && q < w.len() {
        match (w[q], e > 0) {
            (Mixed::T, true) | (Mixed::TInv, false) => {
                w[q] = Mixed::G(Letter(r.gen_range(0..2 * rank as u32)));
                e -= e.signum();
            }
            _ => {}
        }
        q += 1;
    }
    w
}
