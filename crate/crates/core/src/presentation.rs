//! Abelianization of finitely presented groups.
//!
//! A positive free rank in the abelianization gives a surjection onto `ℤʳ`,
//! hence a nontrivial left-orderable quotient and an explicit cover. Free
//! rank zero says nothing either way.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cone::{ConeSet, Region};
use crate::cover::CoverPair;
use crate::error::{Error, Result};
use crate::group::{GroupModel, Homomorphism, Word};
use crate::order;
use crate::snf::{smith_normal_form, IntMatrix, Snf};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbelianVerdict {
    /// Surjects onto `ℤʳ` with `r > 0`.
    Witness { rank: usize },
    /// Finite abelianization; the abelian test cannot decide.
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct PresentationData {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    /// Relators × generators exponent sums.
    pub exponent_matrix: IntMatrix,
    pub snf: Snf,
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
    /// Generator images of a surjection onto `ℤ^free_rank`.
    pub z_surjection: Option<Vec<Vec<i64>>>,
}

impl PresentationData {
    pub fn analyze(generators: Vec<String>, relators: Vec<Word>, cap: usize) -> Result<Self> {
        let n = generators.len();
        let mut m = IntMatrix::zeros(relators.len(), n);
        for (i, rel) in relators.iter().enumerate() {
            for l in rel {
                let g = l.generator();
                if g >= n {
                    return Err(Error::InvalidElement(format!("relator {i} uses generator {g}")));
                }
                let step = if l.is_inverse() { -BigInt::one() } else { BigInt::one() };
                m[(i, g)] += step;
            }
        }
        let snf = smith_normal_form(&m, cap)?;
        let k = snf.rank();
        let free_rank = n - k;
        let torsion = snf.invariants().into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect();
        let z_surjection = if free_rank > 0 {
            let rows = snf.right.to_i64_rows().ok_or_else(|| {
                Error::Overflow("surjection coefficients exceed 64 bits".into())
            })?;
            Some(rows.into_iter().map(|r| r[k..].to_vec()).collect())
        } else {
            None
        };
        Ok(PresentationData {
            generators,
            relators,
            exponent_matrix: m,
            snf,
            free_rank,
            torsion,
            z_surjection,
        })
    }

    pub fn verdict(&self) -> AbelianVerdict {
        if self.free_rank > 0 {
            AbelianVerdict::Witness { rank: self.free_rank }
        } else {
            AbelianVerdict::Inconclusive
        }
    }

    /// The free group on the presentation's generators. Every relator lies
    /// in the kernel of the surjection, so covers pulled back to it descend
    /// to the presented group.
    pub fn free_model(&self) -> GroupModel {
        GroupModel::Free { rank: self.generators.len() }
    }

    /// The surjection onto `ℤʳ` as a homomorphism out of `model`, which must
    /// have matching generators and satisfy the relators.
    pub fn surjection(&self, model: &GroupModel) -> Result<Option<Homomorphism>> {
        let Some(images) = &self.z_surjection else { return Ok(None) };
        let hom = Homomorphism::to_lattice(model.clone(), images)?;
        for rel in &self.relators {
            let v = hom.apply_word(rel)?;
            if !hom.target().is_identity(&v) {
                return Err(Error::NotAHomomorphism("a relator survives the surjection".into()));
            }
        }
        Ok(Some(hom))
    }

    /// The cover pulled back from the lexicographic order on `ℤʳ`, or `None`
    /// when the free rank is zero.
    pub fn witness_cover(&self, model: &GroupModel, radius: u32) -> Result<Option<CoverPair>> {
        let Some(hom) = self.surjection(model)? else { return Ok(None) };
        let r = self.free_rank;
        let identity_rows: Vec<Vec<i64>> =
            (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        let lex = ConeSet::pullback(identity_rows, Region::NonNeg);
        order::pullback_cover(model, &hom, &lex, radius).map(Some)
    }
}
