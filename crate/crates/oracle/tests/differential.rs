use proptest::prelude::*;

use slpg::freegroup::{conjugate, cyclic_reduce, DecompressingMatcher};
use slpg::plandowski::lcp;
use slpg_oracle::gen::{self, GeneratorConfig};
use slpg_oracle::naive;

fn program(seed: u64, group: bool, nonterminals: usize) -> slpg::Program {
    gen::gen_program(&GeneratorConfig {
        seed,
        group,
        nonterminals,
        inversion_prob: if group { 0.3 } else { 0.0 },
        truncation_prob: 0.2,
        max_len: 5_000,
        ..Default::default()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lcp_matches_naive(seed in any::<u64>(), nt in 2usize..16, group in any::<bool>()) {
        let p = program(seed, group, nt);
        let mut r = gen::rng(seed);
        let q = match gen::mutate(&mut r, &p) {
            Some(q) => q,
            None => gen::rebracket(&mut r, &p),
        };
        let (wp, wq) = (naive::expand(&p).unwrap(), naive::expand(&q).unwrap());
        let k = lcp(&p, &q).unwrap();
        prop_assert_eq!(k, naive::naive_lcp(&wp, &wq).unwrap().into());
    }

    #[test]
    fn cyclic_reduce_matches_naive(seed in any::<u64>(), nt in 2usize..16) {
        let p = program(seed, true, nt);
        let c = cyclic_reduce(&p).unwrap();
        let (conj, core) = naive::naive_cyclic_reduce(&naive::expand(&p).unwrap()).unwrap();
        prop_assert_eq!(naive::expand(&c.conjugator).unwrap(), conj);
        prop_assert_eq!(naive::expand(&c.core).unwrap(), core);
    }

    #[test]
    fn conjugacy_matches_naive(a in any::<u64>(), b in any::<u64>(), nt in 2usize..10) {
        let (p, q) = (program(a, true, nt), program(b, true, nt));
        let (wp, wq) = (naive::expand(&p).unwrap(), naive::expand(&q).unwrap());
        let v = conjugate(&p, &q, &DecompressingMatcher::default()).unwrap();
        prop_assert_eq!(v.holds, naive::naive_conjugate(&wp, &wq).unwrap());
        let v = conjugate(&p, &p, &DecompressingMatcher::default()).unwrap();
        prop_assert!(v.holds);
    }
}
