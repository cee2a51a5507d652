//! Word problem in the mapping torus `<F, t | t x t' = phi(x)>` of a free
//! group automorphism.

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::freegroup::is_trivial;

use super::endo::{Endomorphism, LeveledFamily};

/// A letter of the free product `F * <t>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MixedLetter {
    Gen(Letter),
    T,
    TInv,
}

impl MixedLetter {
    fn inverse(self) -> Self {
        match self {
            MixedLetter::Gen(l) => MixedLetter::Gen(Letter(l.0 ^ 1)),
            MixedLetter::T => MixedLetter::TInv,
            MixedLetter::TInv => MixedLetter::T,
        }
    }
}

/// Tokens over the alphabet plus `t` and `t'`.
pub fn parse_mixed_word(text: &str, alphabet: &Alphabet) -> Result<Vec<MixedLetter>> {
    text.split_whitespace()
        .map(|tok| match tok {
            "t" => Ok(MixedLetter::T),
            "t'" => Ok(MixedLetter::TInv),
            _ => alphabet
                .lookup(tok)
                .map(MixedLetter::Gen)
                .map_err(|_| Error::LetterOutsideAlphabet(tok.to_string())),
        })
        .collect()
}

pub fn format_mixed_word(w: &[MixedLetter], alphabet: &Alphabet) -> String {
    w.iter()
        .map(|m| match m {
            MixedLetter::Gen(l) => alphabet.name(*l),
            MixedLetter::T => "t".into(),
            MixedLetter::TInv => "t'".into(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Free reduction in `F * <t>`.
pub fn reduce_mixed(w: &[MixedLetter]) -> Vec<MixedLetter> {
    let mut out: Vec<MixedLetter> = Vec::with_capacity(w.len());
    for &m in w {
        if out.last() == Some(&m.inverse()) {
            out.pop();
        } else {
            out.push(m);
        }
    }
    out
}

/// For a word of `t`-exponent zero, push every `t` to the right: each
/// generator letter is paired with the number of `phi` applications it
/// receives. Returns `None` for a non-zero exponent.
pub fn levels(w: &[MixedLetter]) -> Option<Vec<(Letter, usize)>> {
    let exponent: i64 = w
        .iter()
        .map(|m| match m {
            MixedLetter::T => 1,
            MixedLetter::TInv => -1,
            MixedLetter::Gen(_) => 0,
        })
        .sum();
    if exponent != 0 {
        return None;
    }
    let n = w.len();
    let mut matched_open = vec![false; n];
    let mut matched_close = vec![false; n];
    let mut open = Vec::new();
    for (q, m) in w.iter().enumerate() {
        match m {
            MixedLetter::T => open.push(q),
            MixedLetter::TInv => {
                if let Some(o) = open.pop() {
                    matched_open[o] = true;
                    matched_close[q] = true;
                }
            }
            MixedLetter::Gen(_) => {}
        }
    }
    let unmatched_closes_total = w
        .iter()
        .enumerate()
        .filter(|(q, m)| **m == MixedLetter::TInv && !matched_close[*q])
        .count();
    let (mut depth, mut opens_before, mut closes_before) = (0usize, 0usize, 0usize);
    let mut out = Vec::new();
    for (q, m) in w.iter().enumerate() {
        match m {
            MixedLetter::T if matched_open[q] => depth += 1,
            MixedLetter::T => opens_before += 1,
            MixedLetter::TInv if matched_close[q] => depth -= 1,
            MixedLetter::TInv => closes_before += 1,
            MixedLetter::Gen(l) => {
                out.push((*l, depth + opens_before + unmatched_closes_total - closes_before))
            }
        }
    }
    Some(out)
}

/// Whether `w` is the identity of the mapping torus of `phi`.
pub fn fbc_is_trivial(phi: &Endomorphism, w: &[MixedLetter]) -> Result<bool> {
    let alphabet = phi.alphabet();
    for m in w {
        if let MixedLetter::Gen(l) = m {
            if !alphabet.contains(*l) {
                return Err(Error::LetterOutsideAlphabet(format!("#{}", l.0)));
            }
        }
    }
    let w = reduce_mixed(w);
    let Some(lv) = levels(&w) else {
        return Ok(false);
    };
    let top = lv.iter().map(|&(_, p)| p).max().unwrap_or(0);
    let fam = LeveledFamily::build(alphabet, &vec![phi.clone(); top])?;
    is_trivial(&fam.word_at_levels(&lv)?)
}
