use alloc::format;
use alloc::vec::Vec;

use super::{Element, GroupModel, Letter};
use crate::error::{Error, Result};

/// A homomorphism given by the images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    source: GroupModel,
    target: GroupModel,
    images: Vec<Element>,
}

impl Homomorphism {
    /// Checks the images against the target and that every defining relation
    /// of the source maps to the identity.
    pub fn new(source: GroupModel, target: GroupModel, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.num_generators() {
            return Err(Error::NotAHomomorphism(format!(
                "{} images for {} generators",
                images.len(),
                source.num_generators()
            )));
        }
        for x in &images {
            target.check(x)?;
        }
        let hom = Homomorphism { source, target, images };
        match &hom.source {
            GroupModel::Finite(g) => {
                let image: Vec<Element> = (0..g.order())
                    .map(|i| hom.apply_word(g.word(i)))
                    .collect::<Result<_>>()?;
                for i in 0..g.order() {
                    for j in 0..g.order() {
                        let lhs = &image[g.mul(i, j)];
                        let rhs = hom.target.mul_unchecked(&image[i], &image[j]);
                        if *lhs != rhs {
                            return Err(Error::NotAHomomorphism(format!(
                                "image of {i}*{j} is {lhs}, product of images is {rhs}"
                            )));
                        }
                    }
                }
            }
            source => {
                for rel in source.relators() {
                    let v = hom.apply_word(&rel)?;
                    if !hom.target.is_identity(&v) {
                        return Err(Error::NotAHomomorphism(format!(
                            "a relator of {} maps to {v}",
                            source.name()
                        )));
                    }
                }
            }
        }
        Ok(hom)
    }

    /// A homomorphism into `ℤʳ` from integer images.
    pub fn to_lattice(source: GroupModel, images: &[Vec<i64>]) -> Result<Self> {
        let rank = images.first().map_or(0, Vec::len);
        if images.iter().any(|v| v.len() != rank) {
            return Err(Error::NotAHomomorphism("images have different lengths".into()));
        }
        let images = images.iter().map(|v| Element::Lattice(v.iter().copied().collect())).collect();
        Self::new(source, GroupModel::lattice(rank), images)
    }

    pub fn source(&self) -> &GroupModel {
        &self.source
    }

    pub fn target(&self) -> &GroupModel {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    /// Rank `r` when the target is `ℤʳ`.
    pub fn lattice_rank(&self) -> Option<usize> {
        match &self.target {
            GroupModel::Lattice { rank, torsion } if torsion.is_empty() => Some(*rank),
            _ => None,
        }
    }

    /// Generator images as integer vectors, when the target is `ℤʳ`.
    pub fn lattice_images(&self) -> Option<Vec<Vec<i64>>> {
        self.lattice_rank()?;
        Some(
            self.images
                .iter()
                .map(|e| match e {
                    Element::Lattice(c) => c.to_vec(),
                    _ => unreachable!("checked against the lattice target"),
                })
                .collect(),
        )
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.source.check(x)?;
        if self.lattice_rank().is_some() {
            if let Some(exps) = self.source.abelian_exponents(x) {
                return Ok(self.lattice_combination(&exps));
            }
        }
        self.apply_by_substitution(x)
    }

    /// Evaluates through a word for `x`, never using exponent sums.
    pub fn apply_by_substitution(&self, x: &Element) -> Result<Element> {
        let w = self.source.word_of(x)?;
        self.apply_word(&w)
    }

    pub fn apply_word(&self, word: &[Letter]) -> Result<Element> {
        let mut acc = self.target.identity();
        for &l in word {
            let img = self.images.get(l.generator()).ok_or_else(|| {
                Error::InvalidElement(format!("generator {} out of range", l.generator()))
            })?;
            let img = if l.is_inverse() { self.target.inv_unchecked(img) } else { img.clone() };
            acc = self.target.mul_unchecked(&acc, &img);
        }
        Ok(acc)
    }

    fn lattice_combination(&self, exps: &[i64]) -> Element {
        let mut acc = self.target.identity();
        if let Element::Lattice(out) = &mut acc {
            for (e, img) in exps.iter().zip(&self.images) {
                if let Element::Lattice(v) = img {
                    for (o, x) in out.iter_mut().zip(v) {
                        *o += e * x;
                    }
                }
            }
        }
        acc
    }
}
