//! Polynomial-time queries on programs: indexing, substrings, inversion,
//! projection, normalization and bounded decompression.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::alphabet::Letter;
use crate::error::{Error, Result};
use crate::program::{resolve_index, Grammar, Item, NtId, Piece, Production, Program, Ref, Trunc};

enum Step {
    Letter(Letter),
    Descend(NtId, bool, BigUint),
}

/// Move one level down from position `pos` of `w_nt` (inverted if `flip`).
fn step(p: &Program, nt: NtId, flip: bool, mut pos: BigUint) -> Step {
    let segs = p.segments(nt);
    let order: Box<dyn Iterator<Item = _>> = if flip {
        Box::new(segs.iter().rev())
    } else {
        Box::new(segs.iter())
    };
    for s in order {
        let l = s.len();
        if pos < l {
            return match s.piece {
                Piece::Letter(x) => Step::Letter(if flip {
                    p.alphabet().bar(x).unwrap()
                } else {
                    x
                }),
                Piece::Ref { target, inverted } => {
                    let lo = if flip { p.length(target) - &s.hi } else { s.lo.clone() };
                    Step::Descend(target, inverted ^ flip, lo + pos)
                }
            };
        }
        pos -= l;
    }
    unreachable!("position within the validated length")
}

fn resolve(p: &Program, i: &BigInt) -> Result<BigUint> {
    resolve_index(i, p.len()).ok_or_else(|| Error::IndexOutOfRange {
        index: i.clone(),
        len: p.len().clone(),
    })
}

/// `w[i]`; negative `i` counts from the end.
pub fn char_at(p: &Program, i: &BigInt) -> Result<Letter> {
    let pos = resolve(p, i)?;
    if &pos >= p.len() {
        return Err(Error::IndexOutOfRange {
            index: i.clone(),
            len: p.len().clone(),
        });
    }
    Ok(char_at_in(p, p.root(), false, &pos))
}

/// Letter at `pos` of `w_nt`, or of its inverse when `inverted`.
pub fn char_at_in(p: &Program, nt: NtId, inverted: bool, pos: &BigUint) -> Letter {
    let (mut nt, mut flip, mut pos) = (nt, inverted, pos.clone());
    loop {
        match step(p, nt, flip, pos) {
            Step::Letter(l) => return l,
            Step::Descend(t, f, q) => (nt, flip, pos) = (t, f, q),
        }
    }
}

enum Work {
    Window(NtId, bool, BigUint, BigUint),
    Emit(Letter),
}

fn expand(p: &Program, nt: NtId, lo: BigUint, hi: BigUint, out: &mut Vec<Letter>) {
    let mut stack = vec![Work::Window(nt, false, lo, hi)];
    while let Some(work) = stack.pop() {
        let (nt, flip, lo, hi) = match work {
            Work::Emit(l) => {
                out.push(l);
                continue;
            }
            Work::Window(nt, flip, lo, hi) => (nt, flip, lo, hi),
        };
        let mut children = Vec::new();
        let mut start = BigUint::zero();
        for s in p.oriented_segments(nt, flip) {
            if start >= hi {
                break;
            }
            let end = &start + s.len();
            if end > lo && !s.is_empty() {
                let a = if lo > start { &lo - &start } else { BigUint::zero() };
                let b = if hi < end { &hi - &start } else { s.len() };
                match s.piece {
                    Piece::Letter(l) => children.push(Work::Emit(l)),
                    Piece::Ref { target, inverted } => {
                        children.push(Work::Window(target, inverted, &s.lo + a, &s.lo + b))
                    }
                }
            }
            start = end;
        }
        stack.extend(children.into_iter().rev());
    }
}

/// `w[i:j]` as an explicit word; negative indices count from the end.
pub fn substring(p: &Program, i: &BigInt, j: &BigInt) -> Result<Vec<Letter>> {
    let lo = resolve(p, i)?;
    let hi = resolve(p, j)?;
    if lo > hi || &hi > p.len() {
        return Err(Error::IndexOutOfRange {
            index: if &hi > p.len() { j.clone() } else { i.clone() },
            len: p.len().clone(),
        });
    }
    let mut out = Vec::with_capacity((&hi - &lo).to_usize().unwrap_or(0));
    if lo < hi {
        expand(p, p.root(), lo, hi, &mut out);
    }
    Ok(out)
}

/// The whole word, refused beyond `cap` letters.
pub fn decompress(p: &Program, cap: u64) -> Result<Vec<Letter>> {
    match p.len().to_u64() {
        Some(n) if n <= cap => {}
        _ => return Err(Error::CapExceeded(p.len().clone())),
    }
    let mut out = Vec::new();
    if !p.is_empty() {
        expand(p, p.root(), BigUint::zero(), p.len().clone(), &mut out);
    }
    Ok(out)
}

fn mirror(t: &Trunc, len: &BigUint) -> Trunc {
    let hi = match &t.lo {
        None => None,
        Some(v) if v.is_zero() => None,
        Some(v) => Some(-v),
    };
    let lo = match &t.hi {
        None => None,
        Some(v) if v.is_zero() => Some(BigInt::from(len.clone())),
        Some(v) => Some(-v),
    };
    Trunc::new(lo, hi)
}

/// Program for the group inverse of the word.
///
/// Every non-terminal is replaced by its barred partner under the same
/// name: sequences are reversed, letters barred and windows `[i:j]` mirrored
/// to `[-j:-i]`. Since every referenced non-terminal is barred too, inversion
/// flags on references keep their meaning unchanged.
pub fn invert(p: &Program) -> Result<Program> {
    let a = p.alphabet();
    if !a.is_group() {
        return Err(Error::NotGroupAlphabet);
    }
    let bar = |l: Letter| a.bar(l).unwrap();
    let mut g = p.grammar().clone();
    for prod in g.productions.iter_mut() {
        *prod = match &*prod {
            Production::Terminal(l) => Production::Terminal(bar(*l)),
            Production::Empty => Production::Empty,
            Production::Seq(items) => Production::Seq(
                items
                    .iter()
                    .rev()
                    .map(|it| match it {
                        Item::Letter(l) => Item::Letter(bar(*l)),
                        Item::Ref(r) => Item::Ref(Ref {
                            target: r.target,
                            inverted: r.inverted,
                            trunc: r.trunc.as_ref().map(|t| mirror(t, p.length(r.target))),
                        }),
                    })
                    .collect(),
            ),
        };
    }
    Program::new(g)
}

/// Delete every letter outside `keep`. Truncation-free programs only.
pub fn project(p: &Program, keep: &[Letter]) -> Result<Program> {
    if p.has_truncation() {
        return Err(Error::HasTruncation);
    }
    let a = p.alphabet();
    let keep: HashSet<Letter> = keep.iter().copied().collect();
    for &l in &keep {
        if !a.contains(l) {
            return Err(Error::LetterOutsideAlphabet(format!("#{}", l.0)));
        }
        if let Some(b) = a.bar(l) {
            if !keep.contains(&b) {
                return Err(Error::KeepSetNotInvolutionClosed(a.name(l)));
            }
        }
    }
    let mut g: Grammar = p.grammar().clone();
    for prod in g.productions.iter_mut() {
        *prod = match &*prod {
            Production::Terminal(l) if !keep.contains(l) => Production::Empty,
            Production::Seq(items) => Production::Seq(
                items
                    .iter()
                    .filter(|it| !matches!(it, Item::Letter(l) if !keep.contains(l)))
                    .cloned()
                    .collect(),
            ),
            other => other.clone(),
        };
    }
    Program::new(g)
}

/// Equivalent program in Chomsky normal form, with inverted references
/// materialized. The empty word gives the single production `R -> eps`.
pub fn normalize(p: &Program) -> Result<Program> {
    if p.has_truncation() {
        return Err(Error::HasTruncation);
    }
    crate::hagenah::cs_to_slp(p)
}
