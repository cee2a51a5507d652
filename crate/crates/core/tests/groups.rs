use slpg::freegroup::{free_reduce, is_trivial};
use slpg::groups::*;
use slpg::query::decompress;
use slpg::{Alphabet, Letter, Program};

fn reduce_explicit(w: &[Letter]) -> Vec<Letter> {
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

fn humphries() -> TwistTable {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/genus2_humphries.map")).unwrap();
    TwistTable::parse(&text, 2).unwrap()
}

#[test]
fn humphries_table_preserves_relator_and_inverts() {
    let t = humphries();
    let a = t.alphabet().clone();
    let rel = a.parse_word("a1 b1 a1' b1' a2 b2 a2' b2'").unwrap();
    let names: Vec<String> = t.names().map(String::from).collect();
    assert_eq!(names.len(), 10);
    for name in names.iter().filter(|n| !n.ends_with("^-1")) {
        let phi = t.get(name).unwrap();
        assert_eq!(reduce_explicit(&phi.apply(&rel)), rel, "{name}");
        let word = format!("{name} {name}^-1");
        let maps = t.maps(&word).unwrap();
        assert!(is_identity(&a, &maps).unwrap(), "{name}");
        let maps = t.maps(&format!("{name}^-1 {name}")).unwrap();
        assert!(is_identity(&a, &maps).unwrap(), "{name}");
    }
}

#[test]
fn humphries_handlebody_verdicts() {
    let t = humphries();
    assert!(handlebody_membership(Some(&t), "").unwrap());
    assert!(handlebody_membership(Some(&t), "Tb1").unwrap());
    assert!(handlebody_membership(Some(&t), "Tb2 Tb1^-1").unwrap());
    assert!(!handlebody_membership(Some(&t), "Ta1").unwrap());
    assert!(handlebody_membership(Some(&t), "Ta1 Tb1 Ta1^-1").is_ok());
    assert!(handlebody_membership(Some(&t), "Ta2 Ta2^-1").unwrap());
    assert!(!heegaard_membership(Some(&t), None, "Tb1").unwrap());
    assert!(heegaard_membership(Some(&t), None, "Tb1 Tb1^-1").unwrap());
}

#[test]
fn aut_apply_examples() {
    let a = Alphabet::numbered_group(2);
    let w = a.parse_word("a1 a2'").unwrap();
    let p = aut_apply(&[], 2, &w).unwrap();
    assert_eq!(decompress(&p, 10).unwrap(), w);
    let p = aut_apply(&parse_nielsen("inv1").unwrap(), 2, &a.parse_word("a1").unwrap()).unwrap();
    assert_eq!(a.format_word(&decompress(&p, 10).unwrap()), "a1'");
    let p = aut_apply(&parse_nielsen("mul1,2").unwrap(), 2, &w).unwrap();
    assert_eq!(a.format_word(&decompress(&p, 10).unwrap()), "a1 a2 a2'");
}

#[test]
fn fbc_examples() {
    let a = Alphabet::numbered_group(2);
    let id = Endomorphism::identity(a.clone());
    let w = parse_mixed_word("t a1 t' a1'", &a).unwrap();
    assert!(fbc_is_trivial(&id, &w).unwrap());
    let swap = parse_map("a1 -> a2\na2 -> a1\n", &a).unwrap();
    assert!(!fbc_is_trivial(&swap, &w).unwrap());
    let phi = parse_map("a1 -> a1 a2 a1'\na2 -> a2 a2 a1\n", &a).unwrap();
    let w = parse_mixed_word("a1 a2 a1' t a1' t'", &a).unwrap();
    assert!(fbc_is_trivial(&phi, &w).unwrap());
}

#[test]
fn inner_by_a1_a2() {
    let a = Alphabet::numbered_group(3);
    let u = a.parse_word("a1 a2").unwrap();
    let ubar: Vec<Letter> = u.iter().rev().map(|l| Letter(l.0 ^ 1)).collect();
    let images = (0..3)
        .map(|i| [u.clone(), vec![a.generator(i)], ubar.clone()].concat())
        .collect();
    let phi = Endomorphism::new(a.clone(), images).unwrap();
    let v = inn_membership(&a, &[phi]).unwrap();
    assert!(v.holds);
    assert_eq!(decompress(&v.witness.unwrap(), 10).unwrap(), u);
}

#[test]
fn punctured_disk_examples() {
    let a = Alphabet::numbered_group(2);
    let sigma = braid_maps(&parse_braid("s1", 2).unwrap(), 2).unwrap();
    assert!(punctured_disk_membership(&a, &sigma).unwrap());
    assert!(punctured_disk_membership(&a, &[]).unwrap());
    let inv = nielsen_maps(&parse_nielsen("inv1").unwrap(), &a).unwrap();
    assert!(!punctured_disk_membership(&a, &inv).unwrap());
}

#[test]
fn braid_relations_four_strands() {
    let cases = [
        ("s1 s2 s1 s2^-1 s1^-1 s2^-1", true),
        ("s2 s3 s2 s3^-1 s2^-1 s3^-1", true),
        ("s1 s3 s1^-1 s3^-1", true),
        ("s1", false),
        ("s1 s2 s1^-1 s2^-1", false),
    ];
    for (w, expect) in cases {
        assert_eq!(braid_is_trivial(&parse_braid(w, 4).unwrap(), 4).unwrap(), expect, "{w}");
    }
}

#[test]
fn iterated_commutator_is_identity() {
    let a = Alphabet::group(["a", "b"]).unwrap();
    let phi = parse_map("a -> b\nb -> b a b'\n", &a).unwrap();
    let phi_inv = parse_map("a -> a' b a\nb -> a\n", &a).unwrap();
    for n in [1, 5, 30] {
        let mut maps = vec![phi.clone(); n];
        maps.extend(vec![phi_inv.clone(); n]);
        assert!(is_identity(&a, &maps).unwrap());
        maps.pop();
        assert!(!is_identity(&a, &maps).unwrap());
    }
}

#[test]
fn leveled_family_reduces_like_example() {
    let a = Alphabet::group(["a", "b"]).unwrap();
    let phi = parse_map("a -> b\nb -> b a b'\n", &a).unwrap();
    let fam = LeveledFamily::build(&a, &vec![phi; 5]).unwrap();
    let r = free_reduce(&fam.root(0, 5)).unwrap();
    assert_eq!(a.format_word(&decompress(&r.program, 100).unwrap()), "b a b a b a' b' a' b'");
    assert!(!is_trivial(&fam.root(0, 5)).unwrap());
    let _: &Program = fam.program();
}
