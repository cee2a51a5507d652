//! Identity, inner-ness and mapping-class tests for compositions of
//! automorphisms, all run on the leveled family.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::freegroup::{FreeGroup, Verdict};
use crate::slp::NodeId;

use super::endo::{braid_maps, nielsen_maps, BraidLetter, Endomorphism, LeveledFamily, Nielsen};

/// Engine holding the reduced top-level images `Phi(a_i)`.
struct Images {
    fg: FreeGroup,
    images: Vec<Option<NodeId>>,
}

impl Images {
    fn new(alphabet: &Alphabet, maps: &[Endomorphism]) -> Result<Self> {
        let fam = LeveledFamily::build(alphabet, maps)?;
        let mut fg = FreeGroup::new(alphabet.clone())?;
        let nodes = fg.embed_all(fam.program())?;
        let images = (0..alphabet.rank())
            .map(|i| {
                let n = nodes[fam.top(i).0];
                fg.reduce(n)
            })
            .collect();
        Ok(Images { fg, images })
    }

    fn is_letter(&self, n: Option<NodeId>, l: Letter) -> bool {
        match n {
            Some(n) => self.fg.slp().len(n) == &BigUint::from(1u32) && self.fg.slp().first_letter(n) == l,
            None => false,
        }
    }
}

/// Whether `phi_1 o ... o phi_n` is the identity.
pub fn is_identity(alphabet: &Alphabet, maps: &[Endomorphism]) -> Result<bool> {
    let im = Images::new(alphabet, maps)?;
    Ok((0..alphabet.rank()).all(|i| im.is_letter(im.images[i], alphabet.generator(i))))
}

/// Whether the Nielsen word acts trivially on `F_rank`.
pub fn aut_is_identity(word: &[Nielsen], rank: usize) -> Result<bool> {
    let a = Alphabet::numbered_group(rank);
    is_identity(&a, &nielsen_maps(word, &a)?)
}

/// The image of `w` under the Nielsen word, as a program over `F_rank`.
pub fn aut_apply(word: &[Nielsen], rank: usize, w: &[Letter]) -> Result<crate::Program> {
    let a = Alphabet::numbered_group(rank);
    let fam = LeveledFamily::build(&a, &nielsen_maps(word, &a)?)?;
    let top = fam.levels();
    fam.word_at_levels(&w.iter().map(|&l| (l, top)).collect::<Vec<_>>())
}

/// Whether `phi_1 o ... o phi_n` is conjugation `x -> U x U'`; the witness
/// is `U`.
pub fn inn_membership(alphabet: &Alphabet, maps: &[Endomorphism]) -> Result<Verdict> {
    let mut im = Images::new(alphabet, maps)?;
    let m = alphabet.rank();
    let a1 = alphabet.generator(0);
    let c1 = im.fg.cyclic(im.images[0]);
    if !im.is_letter(c1.core, a1) {
        return Ok(Verdict::no());
    }
    let c1_bar = im.fg.bar(c1.conjugator);
    let mut exponent: Option<(BigUint, bool)> = None;
    for i in 1..m {
        let psi = im.fg.concat(&[c1_bar, im.images[i], c1.conjugator]);
        let psi = im.fg.reduce(psi);
        let cy = im.fg.cyclic(psi);
        if !im.is_letter(cy.core, alphabet.generator(i)) {
            return Ok(Verdict::no());
        }
        let power = match cy.conjugator {
            None => (BigUint::zero(), true),
            Some(n) => {
                let len = im.fg.slp().len(n).clone();
                let first = im.fg.slp().first_letter(n);
                if first.index() / 2 != 0 {
                    return Ok(Verdict::no());
                }
                let run = im.fg.power(first, &len);
                if !im.fg.equal(run, cy.conjugator) {
                    return Ok(Verdict::no());
                }
                (len, first == a1)
            }
        };
        let power = if power.0.is_zero() { (power.0, true) } else { power };
        match &exponent {
            None => exponent = Some(power),
            Some(e) if *e == power => {}
            Some(_) => return Ok(Verdict::no()),
        }
    }
    let (e, positive) = exponent.unwrap_or((BigUint::zero(), true));
    let letter = if positive { a1 } else { Letter(a1.0 ^ 1) };
    let run = im.fg.power(letter, &e);
    let u = im.fg.concat(&[c1.conjugator, run]);
    let u = im.fg.reduce(u);
    let u_bar = im.fg.bar(u);
    for i in 0..m {
        let g = im.fg.word(&[alphabet.generator(i)]);
        let conj = im.fg.concat(&[u, g, u_bar]);
        let conj = im.fg.reduce(conj);
        if !im.fg.equal(conj, im.images[i]) {
            return Ok(Verdict::no());
        }
    }
    Ok(Verdict::yes(im.fg.export(u)))
}

/// Whether the composition fixes the boundary word `a_1 ... a_m` and sends
/// every generator to a conjugate of a generator.
pub fn punctured_disk_membership(alphabet: &Alphabet, maps: &[Endomorphism]) -> Result<bool> {
    let mut im = Images::new(alphabet, maps)?;
    let m = alphabet.rank();
    let gens: Vec<Letter> = (0..m).map(|i| alphabet.generator(i)).collect();
    let boundary = im.fg.word(&gens);
    let image = im.fg.concat(&im.images.clone());
    let image = im.fg.reduce(image);
    if !im.fg.equal(image, boundary) {
        return Ok(false);
    }
    for i in 0..m {
        let cy = im.fg.cyclic(im.images[i]);
        if !gens.iter().any(|&g| im.is_letter(cy.core, g)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the braid word acts trivially on `F_strands`.
pub fn braid_is_trivial(word: &[BraidLetter], strands: usize) -> Result<bool> {
    if strands == 0 {
        return Err(Error::StrandIndexOutOfRange { index: 0, strands });
    }
    is_identity(&Alphabet::numbered_group(strands), &braid_maps(word, strands)?)
}
