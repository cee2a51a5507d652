use num_bigint::BigInt;
use proptest::prelude::*;
use slpg::freegroup::{cyclic_reduce, free_reduce, junction_violations};
use slpg::hagenah::{binarized_size, cs_to_slp};
use slpg::plandowski::{equal, lcp};
use slpg::query::{char_at, decompress, invert, normalize, project, substring};
use slpg::text::{parse, print};
use slpg::{Letter, Program};

type Spec = Vec<(Vec<(usize, bool, u16, u16)>, u8)>;

/// Random composition system over `a b` (group) together with the explicit
/// word of every non-terminal.
fn build(spec: &Spec) -> (Program, Vec<Vec<Letter>>) {
    let mut text = String::from("group-alphabet a b\n");
    let mut words: Vec<Vec<Letter>> = Vec::new();
    let names = ["a", "a'", "b", "b'"];
    for (k, (items, letter)) in spec.iter().enumerate() {
        let mut rhs = Vec::new();
        let mut w = Vec::new();
        if k == 0 || items.is_empty() {
            let l = (*letter % 4) as u32;
            rhs.push(format!("'{}'", names[l as usize]));
            w.push(Letter(l));
        }
        for &(target, inv, x, y) in items.iter().take(if k == 0 { 0 } else { 4 }) {
            let t = target % k;
            let mut sub = words[t].clone();
            if inv {
                sub = sub.iter().rev().map(|l| Letter(l.0 ^ 1)).collect();
            }
            let n = sub.len();
            let (mut lo, mut hi) = (x as usize % (n + 1), y as usize % (n + 1));
            if lo > hi {
                std::mem::swap(&mut lo, &mut hi);
            }
            let tilde = if inv { "~" } else { "" };
            if x % 3 == 0 {
                rhs.push(format!("{tilde}N{t}"));
            } else {
                let neg = y % 2 == 0 && hi > 0;
                let h = if neg { format!("{}", hi as i64 - n as i64) } else { hi.to_string() };
                let h = if neg && hi == n { String::new() } else { h };
                rhs.push(format!("{tilde}N{t}[{lo}:{h}]"));
                sub = sub[lo..hi].to_vec();
            }
            w.extend(sub);
            if w.len() > 3000 {
                break;
            }
        }
        if rhs.is_empty() {
            rhs.push("eps".into());
        }
        text += &format!("N{k} -> {}\n", rhs.join(" "));
        words.push(w);
    }
    (parse(&text).unwrap_or_else(|e| panic!("{e}\n{text}")), words)
}

fn specs() -> impl Strategy<Value = Spec> {
    prop::collection::vec(
        (
            prop::collection::vec((0usize..100, any::<bool>(), any::<u16>(), any::<u16>()), 0..4),
            any::<u8>(),
        ),
        1..12,
    )
}

fn reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for &l in w {
        if out.last().map(|x| x.0 ^ 1) == Some(l.0) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn lengths_and_queries(spec in specs(), probe in any::<u32>(), span in any::<u32>()) {
        let (p, words) = build(&spec);
        let w = words.last().unwrap();
        prop_assert_eq!(&decompress(&p, 100_000).unwrap(), w);
        prop_assert_eq!(p.len(), &num_bigint::BigUint::from(w.len()));
        if !w.is_empty() {
            let i = probe as usize % w.len();
            prop_assert_eq!(char_at(&p, &BigInt::from(i)).unwrap(), w[i]);
            let neg = BigInt::from(i as i64 - w.len() as i64);
            prop_assert_eq!(char_at(&p, &neg).unwrap(), w[i]);
            let j = i + span as usize % (w.len() - i + 1);
            prop_assert_eq!(substring(&p, &BigInt::from(i), &BigInt::from(j)).unwrap(), w[i..j].to_vec());
        }
        let inv: Vec<Letter> = w.iter().rev().map(|l| Letter(l.0 ^ 1)).collect();
        prop_assert_eq!(decompress(&invert(&p).unwrap(), 100_000).unwrap(), inv);
        prop_assert_eq!(decompress(&parse(&print(&p)).unwrap(), 100_000).unwrap(), w.clone());
    }

    #[test]
    fn conversion_and_reduction(spec in specs()) {
        let (p, words) = build(&spec);
        let w = words.last().unwrap();
        let s = cs_to_slp(&p).unwrap();
        prop_assert!(s.is_binary());
        let n = binarized_size(&p);
        prop_assert!(s.nonterminal_count() <= 2 * n * n + 4 * n);
        prop_assert_eq!(&decompress(&s, 100_000).unwrap(), w);
        prop_assert!(equal(&p, &s).unwrap());
        let r = free_reduce(&p).unwrap();
        prop_assert_eq!(decompress(&r.program, 100_000).unwrap(), reduce(w));
        prop_assert!(junction_violations(&r.program).is_empty());
        let c = cyclic_reduce(&p).unwrap();
        let core = decompress(&c.core, 100_000).unwrap();
        if core.len() > 1 {
            prop_assert_ne!(core[0].0 ^ 1, core[core.len() - 1].0);
        }
        let k = lcp(&p, &s).unwrap();
        prop_assert_eq!(k, num_bigint::BigUint::from(w.len()));
    }

    #[test]
    fn projection_matches_filter(spec in specs()) {
        let (p, words) = build(&spec);
        let p = cs_to_slp(&p).unwrap();
        prop_assert!(normalize(&p).is_ok());
        let w = words.last().unwrap();
        let keep = [Letter(0), Letter(1)];
        let q = project(&p, &keep).unwrap();
        let expect: Vec<Letter> = w.iter().copied().filter(|l| l.0 < 2).collect();
        prop_assert_eq!(decompress(&q, 100_000).unwrap(), expect);
    }
}
