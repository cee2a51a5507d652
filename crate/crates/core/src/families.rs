//! Standard program families with exponentially long words.

use crate::alphabet::{Alphabet, Letter};
use crate::program::{Grammar, Item, NtId, Production, Program, Ref, Trunc};

fn r(id: NtId) -> Item {
    Item::Ref(Ref::plain(id))
}

/// `F_1 -> b`, `F_2 -> a`, `F_i -> F_{i-1} F_{i-2}`; root `F_n`, `n >= 2`.
pub fn fibonacci(n: usize) -> Program {
    assert!(n >= 2, "fibonacci family starts at F_2");
    let mut g = Grammar::new(Alphabet::plain(["a", "b"]).unwrap());
    let mut ids = vec![
        g.push("F1", Production::Terminal(Letter(1))),
        g.push("F2", Production::Terminal(Letter(0))),
    ];
    for i in 3..=n {
        let id = g.push(
            format!("F{i}"),
            Production::Seq(vec![r(ids[i - 2]), r(ids[i - 3])]),
        );
        ids.push(id);
    }
    Program::new(g).unwrap()
}

/// `B_1 -> b`, `B_2 -> a`, `B_3 -> B_2 B_1`, `B_4 -> B_3 B_3`,
/// `B_i -> B_{i-1}[1:] B_{i-1}[1:]`; root `B_n`, `n >= 3`.
pub fn truncated_doubling(n: usize) -> Program {
    assert!(n >= 3, "truncated doubling starts at B_3");
    let mut g = Grammar::new(Alphabet::plain(["a", "b"]).unwrap());
    let b1 = g.push("B1", Production::Terminal(Letter(1)));
    let b2 = g.push("B2", Production::Terminal(Letter(0)));
    let mut prev = g.push("B3", Production::Seq(vec![r(b2), r(b1)]));
    for i in 4..=n {
        let item = if i == 4 {
            r(prev)
        } else {
            Item::Ref(Ref::cut(prev, Trunc::new(Some(1.into()), None)))
        };
        prev = g.push(format!("B{i}"), Production::Seq(vec![item.clone(), item]));
    }
    Program::new(g).unwrap()
}

/// Over the group alphabet `{a, b}`: `A_0 -> a`, `B_0 -> b`,
/// `A_{k+1} -> B_k`, `B_{k+1} -> B_k A_k ~B_k`; root `A_n`.
///
/// `w(A_n)` is the unreduced image of `a` under the `n`-th power of
/// `a -> b, b -> b a b'`.
pub fn iterated_automorphism(n: usize) -> Program {
    let mut g = Grammar::new(Alphabet::group(["a", "b"]).unwrap());
    let mut a = g.push("A0", Production::Terminal(Letter(0)));
    let mut b = g.push("B0", Production::Terminal(Letter(2)));
    for k in 1..=n {
        let na = g.push(format!("A{k}"), Production::Seq(vec![r(b)]));
        let nb = g.push(
            format!("B{k}"),
            Production::Seq(vec![r(b), r(a), Item::Ref(Ref::inverse(b))]),
        );
        a = na;
        b = nb;
    }
    g.root = a;
    Program::new(g).unwrap()
}
