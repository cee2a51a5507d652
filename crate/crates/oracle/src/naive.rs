//! Textbook algorithms on explicit words. Every entry point refuses inputs
//! longer than [`CAP`] letters.

use std::fmt;

use num_traits::ToPrimitive;
use slpg::program::{Item, Production};
use slpg::{Letter, Program};

pub const CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapExceeded(pub usize);

impl fmt::Display for CapExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "oracle refuses a word of {} letters (cap {CAP})", self.0)
    }
}

impl std::error::Error for CapExceeded {}

pub type Checked<T> = Result<T, CapExceeded>;

fn guard(n: usize) -> Checked<()> {
    if n > CAP {
        Err(CapExceeded(n))
    } else {
        Ok(())
    }
}

pub fn inverse(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| Letter(l.0 ^ 1)).collect()
}

/// The word of every non-terminal, bottom up, straight from the
/// productions.
pub fn expand_all(p: &Program) -> Checked<Vec<Vec<Letter>>> {
    let g = p.grammar();
    let mut words: Vec<Vec<Letter>> = Vec::with_capacity(g.productions.len());
    for prod in &g.productions {
        let w = match prod {
            Production::Terminal(l) => vec![*l],
            Production::Empty => Vec::new(),
            Production::Seq(items) => {
                let mut w = Vec::new();
                for it in items {
                    match it {
                        Item::Letter(l) => w.push(*l),
                        Item::Ref(r) => {
                            let mut sub = words[r.target.0].clone();
                            if r.inverted {
                                sub = inverse(&sub);
                            }
                            if let Some(t) = &r.trunc {
                                let (lo, hi) = t.resolve(&sub.len().into()).expect("validated window");
                                sub = sub[lo.to_usize().unwrap()..hi.to_usize().unwrap()].to_vec();
                            }
                            w.extend(sub);
                        }
                    }
                    guard(w.len())?;
                }
                w
            }
        };
        words.push(w);
    }
    Ok(words)
}

pub fn expand(p: &Program) -> Checked<Vec<Letter>> {
    guard(p.len().to_usize().unwrap_or(usize::MAX))?;
    let mut all = expand_all(p)?;
    Ok(all.swap_remove(p.root().0))
}

pub fn naive_free_reduce(w: &[Letter]) -> Checked<Vec<Letter>> {
    guard(w.len())?;
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last().is_some_and(|x| x.0 ^ 1 == l.0) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Ok(out)
}

pub fn naive_equal(u: &[Letter], v: &[Letter]) -> Checked<bool> {
    guard(u.len().max(v.len()))?;
    Ok(u == v)
}

pub fn naive_lcp<T: PartialEq>(u: &[T], v: &[T]) -> Checked<usize> {
    guard(u.len().max(v.len()))?;
    Ok(u.iter().zip(v).take_while(|(a, b)| a == b).count())
}

/// `(conjugator, core)` of the free reduction.
pub fn naive_cyclic_reduce(w: &[Letter]) -> Checked<(Vec<Letter>, Vec<Letter>)> {
    let r = naive_free_reduce(w)?;
    let mut k = 0;
    while 2 * k + 1 < r.len() && r[k].0 ^ 1 == r[r.len() - 1 - k].0 {
        k += 1;
    }
    Ok((r[..k].to_vec(), r[k..r.len() - k].to_vec()))
}

/// Conjugacy via all rotations of the cyclic cores.
pub fn naive_conjugate(u: &[Letter], v: &[Letter]) -> Checked<bool> {
    let (_, cu) = naive_cyclic_reduce(u)?;
    let (_, cv) = naive_cyclic_reduce(v)?;
    if cu.len() != cv.len() {
        return Ok(false);
    }
    if cu.is_empty() {
        return Ok(true);
    }
    guard(2 * cv.len())?;
    let doubled = [cv.clone(), cv].concat();
    Ok(doubled.windows(cu.len()).any(|w| w == cu.as_slice()))
}

/// Whether `u = x v inv(x)` in the free group.
pub fn naive_is_conjugator(u: &[Letter], v: &[Letter], x: &[Letter]) -> Checked<bool> {
    let lhs = naive_free_reduce(u)?;
    let rhs = naive_free_reduce(&[x, v, &inverse(x)].concat())?;
    Ok(lhs == rhs)
}

/// Image of `w` under the substitution `a_i -> images[i]`.
pub fn substitute(images: &[Vec<Letter>], w: &[Letter]) -> Checked<Vec<Letter>> {
    let mut out = Vec::new();
    for &l in w {
        let img = &images[(l.0 / 2) as usize];
        if l.0 % 2 == 0 {
            out.extend_from_slice(img);
        } else {
            out.extend(inverse(img));
        }
        guard(out.len())?;
    }
    Ok(out)
}

/// Generator images of `phi_1 o ... o phi_n`, reduced after every step.
pub fn compose(maps: &[Vec<Vec<Letter>>], rank: usize) -> Checked<Vec<Vec<Letter>>> {
    let mut images: Vec<Vec<Letter>> = (0..rank).map(|i| vec![Letter(2 * i as u32)]).collect();
    for phi in maps {
        images = phi
            .iter()
            .map(|u| substitute(&images, u).and_then(|w| naive_free_reduce(&w)))
            .collect::<Checked<_>>()?;
    }
    Ok(images)
}

pub fn is_identity(images: &[Vec<Letter>]) -> bool {
    images
        .iter()
        .enumerate()
        .all(|(i, u)| u.as_slice() == [Letter(2 * i as u32)])
}

/// Shortest reduced `U` with `images[i] = U a_i inv(U)` for every `i`,
/// searching all reduced words up to `max_len`.
pub fn small_ball_inner(images: &[Vec<Letter>], max_len: usize) -> Checked<Option<Vec<Letter>>> {
    let rank = images.len();
    let targets: Vec<Vec<Letter>> = images.iter().map(|u| naive_free_reduce(u)).collect::<Checked<_>>()?;
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..=max_len {
        for u in &layer {
            let ok = (0..rank).all(|i| {
                naive_free_reduce(&[u.as_slice(), &[Letter(2 * i as u32)], &inverse(u)].concat())
                    .is_ok_and(|w| w == targets[i])
            });
            if ok {
                return Ok(Some(u.clone()));
            }
        }
        layer = layer
            .iter()
            .flat_map(|u| {
                (0..2 * rank as u32).filter_map(move |l| {
                    if u.last().is_some_and(|x| x.0 ^ 1 == l) {
                        None
                    } else {
                        Some([u.as_slice(), &[Letter(l)]].concat())
                    }
                })
            })
            .collect();
    }
    Ok(None)
}

/// Letter of a word in `F * <t>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mixed {
    G(Letter),
    T,
    TInv,
}

fn mixed_reduce(w: Vec<Mixed>) -> Vec<Mixed> {
    let mut out: Vec<Mixed> = Vec::with_capacity(w.len());
    for m in w {
        let cancels = match (out.last(), m) {
            (Some(Mixed::T), Mixed::TInv) | (Some(Mixed::TInv), Mixed::T) => true,
            (Some(Mixed::G(x)), Mixed::G(y)) => x.0 ^ 1 == y.0,
            _ => false,
        };
        if cancels {
            out.pop();
        } else {
            out.push(m);
        }
    }
    out
}

/// Britton reduction in the mapping torus of an automorphism: pinch
/// `t x t'` to `phi(x)` and `t' x t` to `phi^{-1}(x)` until no pinch
/// remains; the word is trivial iff nothing is left.
pub fn britton_is_trivial(
    phi: &[Vec<Letter>],
    phi_inv: &[Vec<Letter>],
    w: &[Mixed],
) -> Checked<bool> {
    let mut w = mixed_reduce(w.to_vec());
    loop {
        guard(w.len())?;
        let ts: Vec<usize> = (0..w.len()).filter(|&q| !matches!(w[q], Mixed::G(_))).collect();
        let pinch = ts.windows(2).find(|p| w[p[0]] != w[p[1]]).map(|p| (p[0], p[1]));
        let Some((i, j)) = pinch else {
            return Ok(w.is_empty());
        };
        let inner: Vec<Letter> = w[i + 1..j]
            .iter()
            .map(|m| match m {
                Mixed::G(l) => *l,
                _ => unreachable!(),
            })
            .collect();
        let table = if w[i] == Mixed::T { phi } else { phi_inv };
        let image = substitute(table, &inner)?;
        let mut next = w[..i].to_vec();
        next.extend(image.into_iter().map(Mixed::G));
        next.extend_from_slice(&w[j + 1..]);
        w = mixed_reduce(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Vec<Letter> {
        let a = slpg::Alphabet::group(["a", "b"]).unwrap();
        a.parse_word(s).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert!(naive_free_reduce(&word("a b b' a'")).unwrap().is_empty());
        assert_eq!(naive_free_reduce(&word("a b a'")).unwrap(), word("a b a'"));
        let (c, core) = naive_cyclic_reduce(&word("b a b a b' a' b'")).unwrap();
        assert_eq!((c, core), (word("b a b"), word("a")));
        assert_eq!(naive_lcp(b"abaab", b"abb").unwrap(), 2);
        assert!(naive_conjugate(&word("a b"), &word("b a")).unwrap());
        assert!(!naive_conjugate(&word("a b"), &word("a b'")).unwrap());
        assert_eq!(naive_free_reduce(&vec![Letter(0); CAP + 1]), Err(CapExceeded(CAP + 1)));
    }

    #[test]
    fn reduction_is_idempotent() {
        let w = word("a b b' a a' b' a b a");
        let r = naive_free_reduce(&w).unwrap();
        assert_eq!(naive_free_reduce(&r).unwrap(), r);
    }

    #[test]
    fn britton_examples() {
        let phi = vec![word("b"), word("b a b'")];
        let inv = vec![word("a' b a"), word("a")];
        let m = |s: &str| -> Vec<Mixed> {
            s.split_whitespace()
                .map(|t| match t {
                    "t" => Mixed::T,
                    "t'" => Mixed::TInv,
                    x => Mixed::G(word(x)[0]),
                })
                .collect()
        };
        assert!(britton_is_trivial(&phi, &inv, &m("t a t' b'")).unwrap());
        assert!(britton_is_trivial(&phi, &inv, &m("t' b t a'")).unwrap());
        assert!(!britton_is_trivial(&phi, &inv, &m("t a t' a'")).unwrap());
        assert!(!britton_is_trivial(&phi, &inv, &m("t a")).unwrap());
    }

    #[test]
    fn small_ball_finds_conjugator() {
        let u = word("a b");
        let images = vec![
            naive_free_reduce(&[u.clone(), word("a"), inverse(&u)].concat()).unwrap(),
            naive_free_reduce(&[u.clone(), word("b"), inverse(&u)].concat()).unwrap(),
        ];
        assert_eq!(small_ball_inner(&images, 4).unwrap(), Some(u));
        assert_eq!(small_ball_inner(&[word("a b"), word("b")], 3).unwrap(), None);
    }
}
