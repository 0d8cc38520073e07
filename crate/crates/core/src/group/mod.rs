//! Concrete group models with exact normal forms.
//!
//! Five kinds are supported: groups given by a Cayley table, `ℤʳ × C_{o₁} × … `,
//! free groups, the integer Heisenberg group and the Klein-bottle group
//! `⟨a, b | b·a·b⁻¹ = a⁻¹⟩`. Every element has a unique normal form, so
//! equality is decidable and multiplication is exact.

mod ball;
mod finite;
mod hom;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use ball::Ball;
pub use finite::FiniteGroup;
pub use hom::Homomorphism;

/// Integer coordinates of a normal form or a lattice image.
pub type Coords = SmallVec<[i64; 4]>;

/// A generator or its inverse. Stored as `±(index + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        let v = generator as i32 + 1;
        Letter(if inverse { -v } else { v })
    }

    pub fn generator(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }
}

/// A word over generators and their inverses.
pub type Word = SmallVec<[Letter; 16]>;

/// Appends `letter` to `word`, cancelling against the last letter.
pub fn push_reduced(word: &mut Word, letter: Letter) {
    if word.last() == Some(&letter.inverse()) {
        word.pop();
    } else {
        word.push(letter);
    }
}

pub fn inverse_word(word: &[Letter]) -> Word {
    word.iter().rev().map(|l| l.inverse()).collect()
}

fn commutator(u: &[Letter], v: &[Letter]) -> Word {
    let mut w = Word::new();
    for l in u.iter().chain(v).copied().chain(inverse_word(u)).chain(inverse_word(v)) {
        push_reduced(&mut w, l);
    }
    w
}

/// An element in the normal form of its model.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    /// Index into a Cayley table; 0 is the identity.
    Finite(usize),
    /// Free coordinates followed by torsion residues.
    Lattice(Coords),
    /// A freely reduced word.
    Word(Word),
    /// `(x, y, z)` with `(x,y,z)(x',y',z') = (x+x', y+y', z+z'+x·y')`.
    Heisenberg([i64; 3]),
    /// `(m, n)` standing for `bᵐaⁿ`.
    Klein(i64, i64),
}

fn write_power(f: &mut fmt::Formatter<'_>, letter: char, exp: i64) -> fmt::Result {
    match exp {
        0 => Ok(()),
        1 => write!(f, "{letter}"),
        _ => write!(f, "{letter}^{exp}"),
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Finite(i) => write!(f, "{i}"),
            Element::Lattice(c) => {
                f.write_str("(")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
            Element::Word(w) if w.is_empty() => f.write_str("1"),
            Element::Word(w) => {
                for l in w {
                    let c = (b'a' + l.generator() as u8) as char;
                    let c = if l.is_inverse() { c.to_ascii_uppercase() } else { c };
                    write!(f, "{c}")?;
                }
                Ok(())
            }
            Element::Heisenberg([x, y, z]) => write!(f, "({x},{y},{z})"),
            Element::Klein(0, 0) => f.write_str("1"),
            Element::Klein(m, n) => {
                write_power(f, 'b', *m)?;
                write_power(f, 'a', *n)
            }
        }
    }
}

/// A group with exact arithmetic and a finite generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupModel {
    Finite(Arc<FiniteGroup>),
    /// `ℤ^rank × C_{torsion[0]} × …`; generators are the unit vectors.
    Lattice { rank: usize, torsion: Vec<i64> },
    Free { rank: usize },
    /// Generated by `x = (1,0,0)` and `y = (0,1,0)`.
    Heisenberg,
    /// Generated by `a = (0,1)` and `b = (1,0)`.
    KleinBottle,
}

impl GroupModel {
    pub fn finite(group: FiniteGroup) -> Self {
        GroupModel::Finite(Arc::new(group))
    }

    /// The free abelian group `ℤʳ`.
    pub fn lattice(rank: usize) -> Self {
        GroupModel::Lattice { rank, torsion: Vec::new() }
    }

    pub fn num_generators(&self) -> usize {
        match self {
            GroupModel::Finite(g) => g.generators().len(),
            GroupModel::Lattice { rank, torsion } => rank + torsion.len(),
            GroupModel::Free { rank } => *rank,
            GroupModel::Heisenberg | GroupModel::KleinBottle => 2,
        }
    }

    /// Short human-readable name, e.g. `z^1xC2`.
    pub fn name(&self) -> String {
        match self {
            GroupModel::Finite(g) => format!("finite(order {})", g.order()),
            GroupModel::Lattice { rank, torsion } => {
                let mut s = format!("z^{rank}");
                for o in torsion {
                    s.push_str(&format!("xC{o}"));
                }
                s
            }
            GroupModel::Free { rank } => format!("free:{rank}"),
            GroupModel::Heisenberg => "heisenberg".into(),
            GroupModel::KleinBottle => "klein_bottle".into(),
        }
    }

    /// Names used for generators in words.
    pub fn generator_names(&self) -> Vec<String> {
        match self {
            GroupModel::Finite(g) => g.generators().iter().map(|i| format!("g{i}")).collect(),
            GroupModel::Lattice { rank, torsion } => (0..*rank)
                .map(|i| format!("e{}", i + 1))
                .chain((0..torsion.len()).map(|i| format!("t{}", i + 1)))
                .collect(),
            GroupModel::Free { rank } => {
                (0..*rank).map(|i| String::from((b'a' + i as u8) as char)).collect()
            }
            GroupModel::Heisenberg => vec!["x".into(), "y".into()],
            GroupModel::KleinBottle => vec!["a".into(), "b".into()],
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            GroupModel::Finite(g) => g.is_abelian(),
            GroupModel::Lattice { .. } => true,
            GroupModel::Free { rank } => *rank <= 1,
            GroupModel::Heisenberg | GroupModel::KleinBottle => false,
        }
    }

    /// True when every element has finite order.
    pub fn is_torsion(&self) -> bool {
        match self {
            GroupModel::Finite(_) => true,
            GroupModel::Lattice { rank, .. } => *rank == 0,
            GroupModel::Free { rank } => *rank == 0,
            GroupModel::Heisenberg | GroupModel::KleinBottle => false,
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            GroupModel::Finite(_) => Element::Finite(0),
            GroupModel::Lattice { rank, torsion } => {
                Element::Lattice(SmallVec::from_elem(0, rank + torsion.len()))
            }
            GroupModel::Free { .. } => Element::Word(Word::new()),
            GroupModel::Heisenberg => Element::Heisenberg([0; 3]),
            GroupModel::KleinBottle => Element::Klein(0, 0),
        }
    }

    pub fn generator(&self, i: usize) -> Element {
        assert!(i < self.num_generators(), "generator {i} out of range");
        match self {
            GroupModel::Finite(g) => Element::Finite(g.generators()[i]),
            GroupModel::Lattice { rank, torsion } => {
                let mut c: Coords = SmallVec::from_elem(0, rank + torsion.len());
                c[i] = 1;
                Element::Lattice(c)
            }
            GroupModel::Free { .. } => Element::Word(smallvec::smallvec![Letter::new(i, false)]),
            GroupModel::Heisenberg => {
                let mut v = [0; 3];
                v[i] = 1;
                Element::Heisenberg(v)
            }
            GroupModel::KleinBottle => {
                if i == 0 {
                    Element::Klein(0, 1)
                } else {
                    Element::Klein(1, 0)
                }
            }
        }
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.num_generators()).map(|i| self.generator(i)).collect()
    }

    pub fn letter(&self, l: Letter) -> Element {
        let g = self.generator(l.generator());
        if l.is_inverse() {
            self.inv_unchecked(&g)
        } else {
            g
        }
    }

    /// Checks that `x` is a normal form of this model.
    pub fn check(&self, x: &Element) -> Result<()> {
        let ok = match (self, x) {
            (GroupModel::Finite(g), Element::Finite(i)) => *i < g.order(),
            (GroupModel::Lattice { rank, torsion }, Element::Lattice(c)) => {
                c.len() == rank + torsion.len()
                    && torsion.iter().zip(&c[*rank..]).all(|(&o, &r)| (0..o).contains(&r))
            }
            (GroupModel::Free { rank }, Element::Word(w)) => {
                w.iter().all(|l| l.generator() < *rank)
                    && w.windows(2).all(|p| p[0] != p[1].inverse())
            }
            (GroupModel::Heisenberg, Element::Heisenberg(_)) => true,
            (GroupModel::KleinBottle, Element::Klein(..)) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidElement(format!("{x} is not a normal form of {}", self.name())))
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub fn inv(&self, x: &Element) -> Result<Element> {
        self.check(x)?;
        Ok(self.inv_unchecked(x))
    }

    /// Multiplication on elements already known to be valid normal forms.
    pub(crate) fn mul_unchecked(&self, x: &Element, y: &Element) -> Element {
        match (self, x, y) {
            (GroupModel::Finite(g), Element::Finite(i), Element::Finite(j)) => {
                Element::Finite(g.mul(*i, *j))
            }
            (GroupModel::Lattice { rank, torsion }, Element::Lattice(a), Element::Lattice(b)) => {
                let mut c: Coords = a.iter().zip(b).map(|(p, q)| p + q).collect();
                for (k, &o) in torsion.iter().enumerate() {
                    c[rank + k] = c[rank + k].rem_euclid(o);
                }
                Element::Lattice(c)
            }
            (GroupModel::Free { .. }, Element::Word(a), Element::Word(b)) => {
                let mut w = a.clone();
                for &l in b {
                    push_reduced(&mut w, l);
                }
                Element::Word(w)
            }
            (GroupModel::Heisenberg, Element::Heisenberg(a), Element::Heisenberg(b)) => {
                Element::Heisenberg([a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]])
            }
            (GroupModel::KleinBottle, Element::Klein(m, n), Element::Klein(m2, n2)) => {
                let sign = if m2.rem_euclid(2) == 0 { 1 } else { -1 };
                Element::Klein(m + m2, sign * n + n2)
            }
            _ => unreachable!("mul_unchecked on mismatched elements"),
        }
    }

    pub(crate) fn inv_unchecked(&self, x: &Element) -> Element {
        match (self, x) {
            (GroupModel::Finite(g), Element::Finite(i)) => Element::Finite(g.inv(*i)),
            (GroupModel::Lattice { rank, torsion }, Element::Lattice(a)) => {
                let mut c: Coords = a.iter().map(|p| -p).collect();
                for (k, &o) in torsion.iter().enumerate() {
                    c[rank + k] = c[rank + k].rem_euclid(o);
                }
                Element::Lattice(c)
            }
            (GroupModel::Free { .. }, Element::Word(w)) => Element::Word(inverse_word(w)),
            (GroupModel::Heisenberg, Element::Heisenberg([a, b, c])) => {
                Element::Heisenberg([-a, -b, -c + a * b])
            }
            (GroupModel::KleinBottle, Element::Klein(m, n)) => {
                let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
                Element::Klein(-m, -sign * n)
            }
            _ => unreachable!("inv_unchecked on mismatched element"),
        }
    }

    /// `g⁻¹·x·g`.
    pub(crate) fn conj_unchecked(&self, x: &Element, g: &Element) -> Element {
        let gi = self.inv_unchecked(g);
        self.mul_unchecked(&self.mul_unchecked(&gi, x), g)
    }

    pub fn is_identity(&self, x: &Element) -> bool {
        *x == self.identity()
    }

    /// Evaluates a word over the generators.
    pub fn eval_word(&self, word: &[Letter]) -> Result<Element> {
        let n = self.num_generators();
        let mut acc = self.identity();
        for &l in word {
            if l.generator() >= n {
                return Err(Error::InvalidElement(format!(
                    "generator {} out of range for {}",
                    l.generator(),
                    self.name()
                )));
            }
            acc = self.mul_unchecked(&acc, &self.letter(l));
        }
        Ok(acc)
    }

    /// A word over the generators evaluating to `x`.
    pub fn word_of(&self, x: &Element) -> Result<Word> {
        self.check(x)?;
        let mut w = Word::new();
        let power = |w: &mut Word, gen: usize, e: i64| {
            let l = Letter::new(gen, e < 0);
            for _ in 0..e.unsigned_abs() {
                push_reduced(w, l);
            }
        };
        match (self, x) {
            (GroupModel::Finite(g), Element::Finite(i)) => return Ok(g.word(*i).clone()),
            (GroupModel::Lattice { .. }, Element::Lattice(c)) => {
                for (i, &e) in c.iter().enumerate() {
                    power(&mut w, i, e);
                }
            }
            (GroupModel::Free { .. }, Element::Word(word)) => return Ok(word.clone()),
            (GroupModel::Heisenberg, Element::Heisenberg([a, b, c])) => {
                power(&mut w, 0, *a);
                power(&mut w, 1, *b);
                let z = commutator(&[Letter::new(0, false)], &[Letter::new(1, false)]);
                let k = c - a * b;
                let piece = if k >= 0 { z } else { inverse_word(&z) };
                for _ in 0..k.unsigned_abs() {
                    for &l in &piece {
                        push_reduced(&mut w, l);
                    }
                }
            }
            (GroupModel::KleinBottle, Element::Klein(m, n)) => {
                power(&mut w, 1, *m);
                power(&mut w, 0, *n);
            }
            _ => unreachable!("checked above"),
        }
        Ok(w)
    }

    /// Exponent-sum image in the abelianization, one entry per generator.
    ///
    /// `None` for finite tables, whose abelian images into `ℤʳ` are all zero.
    /// For the Klein-bottle group the `a` entry is only meaningful modulo 2.
    pub fn abelian_exponents(&self, x: &Element) -> Option<Coords> {
        match (self, x) {
            (GroupModel::Lattice { .. }, Element::Lattice(c)) => Some(c.clone()),
            (GroupModel::Free { rank }, Element::Word(w)) => {
                let mut c: Coords = SmallVec::from_elem(0, *rank);
                for l in w {
                    c[l.generator()] += if l.is_inverse() { -1 } else { 1 };
                }
                Some(c)
            }
            (GroupModel::Heisenberg, Element::Heisenberg([a, b, _])) => {
                Some(smallvec::smallvec![*a, *b])
            }
            (GroupModel::KleinBottle, Element::Klein(m, n)) => Some(smallvec::smallvec![*n, *m]),
            _ => None,
        }
    }

    /// The raw integer coordinates of a normal form, where the model has them.
    pub fn normal_coords(&self, x: &Element) -> Option<Coords> {
        match (self, x) {
            (GroupModel::Lattice { .. }, Element::Lattice(c)) => Some(c.clone()),
            (GroupModel::Heisenberg, Element::Heisenberg(v)) => Some(SmallVec::from_slice(v)),
            (GroupModel::KleinBottle, Element::Klein(m, n)) => Some(smallvec::smallvec![*m, *n]),
            _ => None,
        }
    }

    /// Number of normal-form coordinates, for models that have them.
    pub fn coord_dim(&self) -> Option<usize> {
        match self {
            GroupModel::Lattice { rank, torsion } => Some(rank + torsion.len()),
            GroupModel::Heisenberg => Some(3),
            GroupModel::KleinBottle => Some(2),
            _ => None,
        }
    }

    /// Defining relators of the built-in presentation. Finite tables have
    /// none listed; homomorphisms out of them are checked on the full table.
    pub fn relators(&self) -> Vec<Word> {
        let l = |i: usize, inv: bool| Letter::new(i, inv);
        match self {
            GroupModel::Finite(_) | GroupModel::Free { .. } => Vec::new(),
            GroupModel::Lattice { rank, torsion } => {
                let n = rank + torsion.len();
                let mut rels = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        rels.push(commutator(&[l(i, false)], &[l(j, false)]));
                    }
                }
                for (k, &o) in torsion.iter().enumerate() {
                    rels.push((0..o).map(|_| l(rank + k, false)).collect());
                }
                rels
            }
            GroupModel::Heisenberg => {
                let z = commutator(&[l(0, false)], &[l(1, false)]);
                vec![commutator(&[l(0, false)], &z), commutator(&[l(1, false)], &z)]
            }
            // b·a·b⁻¹·a
            GroupModel::KleinBottle => {
                vec![smallvec::smallvec![l(1, false), l(0, false), l(1, true), l(0, false)]]
            }
        }
    }

    /// The finite order of `x`, if it has one.
    pub fn element_order(&self, x: &Element) -> Result<Option<u64>> {
        self.check(x)?;
        Ok(match (self, x) {
            (GroupModel::Finite(g), Element::Finite(i)) => Some(g.element_order(*i).0 as u64),
            (GroupModel::Lattice { rank, torsion }, Element::Lattice(c)) => {
                if c[..*rank].iter().any(|&v| v != 0) {
                    None
                } else {
                    let mut lcm = 1i64;
                    for (&o, &r) in torsion.iter().zip(&c[*rank..]) {
                        let ord = o / num_integer::gcd(o, r);
                        lcm = num_integer::lcm(lcm, ord);
                    }
                    Some(lcm as u64)
                }
            }
            _ => {
                if self.is_identity(x) {
                    Some(1)
                } else {
                    // Free, Heisenberg and Klein-bottle groups are torsion-free.
                    None
                }
            }
        })
    }
}

#[cfg(test)]
mod tests;
