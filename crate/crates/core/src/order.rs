//! Left orders as positive cones, quotient orders pulled back to covers,
//! lexicographic combination of orders and merging of covers.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::cone::{self, closure_witness, subset_witness, ConeSet, Region, Verdict};
use crate::cover::CoverPair;
use crate::error::{Error, Result};
use crate::group::{Ball, Element, GroupModel, Homomorphism};
use crate::DEFAULT_BALL_CAP;

/// A left order on `G/N`, given by a description of the normal subgroup `N`
/// and a cone `P ⊇ N` on `G`: `xN ≤ yN` iff `x⁻¹y ∈ P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftOrderWitness {
    model: GroupModel,
    kernel: ConeSet,
    cone: ConeSet,
}

/// Ball-local checks that a [`LeftOrderWitness`] really describes a left
/// order on the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub kernel_closed: Verdict,
    pub kernel_inverse_closed: Verdict,
    pub kernel_normal: Verdict,
    pub cone_closed: Verdict,
    /// `P ∪ P⁻¹` covers the ball.
    pub total: Verdict,
    /// `P ∩ P⁻¹` equals the kernel on the ball.
    pub antisymmetric: Verdict,
    /// Exactly one of `x < y`, `y < x`, `x⁻¹y ∈ N` for every ball pair.
    pub comparator_total: Verdict,
    /// `x ≤ y ⇔ sx ≤ sy` for every ball pair and generator or inverse `s`.
    pub left_invariant: Verdict,
}

impl WitnessReport {
    pub fn verdicts(&self) -> [(&'static str, &Verdict); 8] {
        [
            ("kernel_closed", &self.kernel_closed),
            ("kernel_inverse_closed", &self.kernel_inverse_closed),
            ("kernel_normal", &self.kernel_normal),
            ("cone_closed", &self.cone_closed),
            ("total", &self.total),
            ("antisymmetric", &self.antisymmetric),
            ("comparator_total", &self.comparator_total),
            ("left_invariant", &self.left_invariant),
        ]
    }

    pub fn is_valid(&self) -> bool {
        self.verdicts().iter().all(|(_, v)| v.is_verified())
    }
}

/// `Equal` on the kernel, `Less` on the rest of the cone.
fn ordering_of(in_kernel: bool, in_cone: bool) -> Ordering {
    if in_kernel {
        Ordering::Equal
    } else if in_cone {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

impl LeftOrderWitness {
    pub fn new(model: GroupModel, kernel: ConeSet, cone: ConeSet) -> Result<Self> {
        kernel.validate(&model)?;
        cone.validate(&model)?;
        Ok(LeftOrderWitness { model, kernel, cone })
    }

    pub fn model(&self) -> &GroupModel {
        &self.model
    }

    pub fn kernel(&self) -> &ConeSet {
        &self.kernel
    }

    pub fn cone(&self) -> &ConeSet {
        &self.cone
    }

    /// `Equal` when `x⁻¹y ∈ N`, `Less` when `x⁻¹y ∈ P − N`.
    pub fn compare(&self, x: &Element, y: &Element) -> Result<Ordering> {
        self.model.check(x)?;
        self.model.check(y)?;
        Ok(self.compare_unchecked(x, y))
    }

    fn compare_unchecked(&self, x: &Element, y: &Element) -> Ordering {
        self.classify(&self.model.mul_unchecked(&self.model.inv_unchecked(x), y))
    }

    /// The comparison of `x` with `y` as a function of `z = x⁻¹y`.
    fn classify(&self, z: &Element) -> Ordering {
        let in_n = self.kernel.eval(&self.model, z);
        ordering_of(in_n, !in_n && self.cone.eval(&self.model, z))
    }

    pub fn le(&self, x: &Element, y: &Element) -> Result<bool> {
        Ok(self.compare(x, y)? != Ordering::Greater)
    }

    pub fn validate(&self, radius: u32) -> Result<WitnessReport> {
        let ball = Ball::for_checks(&self.model, radius.max(1), DEFAULT_BALL_CAP)?;
        self.validate_on(&ball)
    }

    pub fn validate_on(&self, ball: &Ball) -> Result<WitnessReport> {
        let m = &self.model;
        let r = ball.radius();
        let kernel_inv = self.kernel.inverted(m)?;
        let cone_inv = self.cone.inverted(m)?;
        let one = |x: Option<Element>| Verdict::from_witness(x.map(|x| vec![x]), r);
        let total = one(ball.iter().find(|x| !self.cone.eval(m, x) && !cone_inv.eval(m, x)).cloned());
        let antisymmetric = one(
            ball.iter()
                .find(|x| (self.cone.eval(m, x) && cone_inv.eval(m, x)) != self.kernel.eval(m, x))
                .cloned(),
        );
        Ok(WitnessReport {
            kernel_closed: Verdict::from_witness(closure_witness(m, &self.kernel, ball), r),
            kernel_inverse_closed: one(subset_witness(m, &self.kernel, &kernel_inv, ball)),
            kernel_normal: cone::normality_on_ball(m, &self.kernel, ball),
            cone_closed: Verdict::from_witness(closure_witness(m, &self.cone, ball), r),
            total,
            antisymmetric,
            comparator_total: self.comparator_totality(ball),
            left_invariant: self.left_invariance(ball),
        })
    }

    /// Pairwise: `compare(x, y)` and `compare(y, x)` are opposite, and
    /// `Equal` exactly when `x⁻¹y` lies in the kernel.
    pub fn comparator_totality(&self, ball: &Ball) -> Verdict {
        let m = &self.model;
        for x in ball.iter() {
            let xi = m.inv_unchecked(x);
            for y in ball.iter() {
                // y⁻¹x = (x⁻¹y)⁻¹
                let z = m.mul_unchecked(&xi, y);
                let zi = m.inv_unchecked(&z);
                let (in_n, in_p) = (self.kernel.eval(m, &z), self.cone.eval(m, &z));
                let (in_ni, in_pi) = (self.kernel.eval(m, &zi), self.cone.eval(m, &zi));
                let xy = ordering_of(in_n, in_p);
                let yx = ordering_of(in_ni, in_pi);
                // The order must not depend on which of z, z⁻¹ we test.
                let lt = in_p && !in_n;
                let gt = in_pi && !in_ni;
                let exactly_one = usize::from(lt) + usize::from(gt) + usize::from(in_n) == 1;
                if xy != yx.reverse() || !exactly_one || in_n != in_ni {
                    return Verdict::counterexample(vec![x.clone(), y.clone()], ball.radius());
                }
            }
        }
        Verdict::verified(ball.radius())
    }

    /// Invariance under left multiplication by every generator and inverse,
    /// which implies invariance under the whole group.
    pub fn left_invariance(&self, ball: &Ball) -> Verdict {
        let m = &self.model;
        let steps: Vec<Element> = m
            .generators()
            .into_iter()
            .flat_map(|g| {
                let gi = m.inv_unchecked(&g);
                [g, gi]
            })
            .collect();
        // Row x holds sx for each step s, then (sx)⁻¹.
        let shifted: Vec<Vec<Element>> = ball
            .iter()
            .map(|x| {
                let sx: Vec<Element> = steps.iter().map(|s| m.mul_unchecked(s, x)).collect();
                let inv: Vec<Element> = sx.iter().map(|e| m.inv_unchecked(e)).collect();
                sx.into_iter().chain(inv).collect()
            })
            .collect();
        let k = steps.len();
        for (xi, x) in ball.iter().enumerate() {
            let x_inv = m.inv_unchecked(x);
            for (yi, y) in ball.iter().enumerate() {
                let z = m.mul_unchecked(&x_inv, y);
                let base = self.classify(&z);
                for (si, s) in steps.iter().enumerate() {
                    let zs = m.mul_unchecked(&shifted[xi][k + si], &shifted[yi][si]);
                    // Normal forms are unique, so equal products compare equally.
                    if zs != z && self.classify(&zs) != base {
                        return Verdict::counterexample(vec![s.clone(), x.clone(), y.clone()], ball.radius());
                    }
                }
            }
        }
        Verdict::verified(ball.radius())
    }

    /// The cover pulled back from the order: `B = P` and
    /// `A = (P⁻¹ − N) ∪ {1}`.
    pub fn cover(&self, radius: u32) -> Result<CoverPair> {
        let (a, b) = self.cover_sets()?;
        CoverPair::verify(self.model.clone(), a, b, radius)
    }

    pub fn cover_sets(&self) -> Result<(ConeSet, ConeSet)> {
        let a = match (&self.cone, &self.kernel) {
            (
                ConeSet::Pullback { images, region: Region::NonNeg },
                ConeSet::Pullback { images: k, region: Region::Zero },
            ) if images == k => ConeSet::pullback(images.clone(), Region::Neg).with_identity(),
            (
                ConeSet::Pullback { images, region: Region::NonPos },
                ConeSet::Pullback { images: k, region: Region::Zero },
            ) if images == k => ConeSet::pullback(images.clone(), Region::Pos).with_identity(),
            _ => self.cone.inverted(&self.model)?.minus(self.kernel.clone()).with_identity(),
        };
        Ok((a, self.cone.clone()))
    }
}

/// The left order `x ≤ y ⇔ x⁻¹y ∈ P` of a positive cone.
///
/// Fails with [`Error::NotACone`] unless, on the ball, `P` is closed, contains
/// 1, `P ∪ P⁻¹` covers and `P ∩ P⁻¹ = {1}`.
pub fn order_from_cone(model: &GroupModel, cone: &ConeSet, radius: u32) -> Result<LeftOrderWitness> {
    let ball = Ball::for_checks(model, radius.max(1), DEFAULT_BALL_CAP)?;
    cone.validate(model)?;
    let inv = cone.inverted(model)?;
    let not_a_cone = |reason: &str, witness: Vec<Element>| Error::NotACone { reason: reason.into(), witness };
    if !cone.eval(model, &model.identity()) {
        return Err(not_a_cone("identity missing", vec![model.identity()]));
    }
    if let Some(x) = ball.iter().find(|x| !cone.eval(model, x) && !inv.eval(model, x)) {
        return Err(not_a_cone("P ∪ P⁻¹ misses", vec![x.clone()]));
    }
    if let Some(x) = ball
        .iter()
        .find(|x| !model.is_identity(x) && cone.eval(model, x) && inv.eval(model, x))
    {
        return Err(not_a_cone("P ∩ P⁻¹ contains", vec![x.clone()]));
    }
    if let Some(w) = closure_witness(model, cone, &ball) {
        return Err(not_a_cone("not closed at", w));
    }
    LeftOrderWitness::new(model.clone(), ConeSet::Identity, cone.clone())
}

fn lattice_images(hom: &Homomorphism) -> Result<Vec<Vec<i64>>> {
    hom.lattice_images().ok_or_else(|| {
        Error::ModelMismatch(format!("quotient target {} is not ℤʳ", hom.target().name()))
    })
}

fn compose(phi: &[Vec<i64>], psi: &[Vec<i64>]) -> Vec<Vec<i64>> {
    // Source generator i ↦ Σ_j φ_i[j]·ψ_j.
    let s = psi.first().map_or(0, Vec::len);
    phi.iter()
        .map(|v| (0..s).map(|k| v.iter().zip(psi).map(|(a, p)| a * p[k]).sum()).collect())
        .collect()
}

/// Preimage under `hom : G → ℤʳ` of a set described over `ℤʳ`.
pub fn pull_back(hom: &Homomorphism, cone: &ConeSet) -> Result<ConeSet> {
    let phi = lattice_images(hom)?;
    cone.validate(hom.target())?;
    pull_back_inner(hom, &phi, cone)
}

fn pull_back_inner(hom: &Homomorphism, phi: &[Vec<i64>], cone: &ConeSet) -> Result<ConeSet> {
    Ok(match cone {
        ConeSet::Pullback { images, region } => ConeSet::pullback(compose(phi, images), *region),
        ConeSet::Coordinates { weights, region } => {
            let images = phi
                .iter()
                .map(|v| weights.iter().map(|w| w.iter().zip(v).map(|(a, b)| a * b).sum()).collect())
                .collect();
            ConeSet::pullback(images, *region)
        }
        ConeSet::Identity => ConeSet::pullback(phi.to_vec(), Region::Zero),
        ConeSet::Union(cs) => {
            ConeSet::Union(cs.iter().map(|c| pull_back_inner(hom, phi, c)).collect::<Result<_>>()?)
        }
        ConeSet::Intersection(cs) => ConeSet::Intersection(
            cs.iter().map(|c| pull_back_inner(hom, phi, c)).collect::<Result<_>>()?,
        ),
        ConeSet::Complement(c) => pull_back_inner(hom, phi, c)?.complement(),
        ConeSet::Inverse(c) => pull_back_inner(hom, phi, c)?.inverted(hom.source())?,
        ConeSet::Conjugate { arg, .. } => pull_back_inner(hom, phi, arg)?,
        ConeSet::Explicit { .. } | ConeSet::FiniteBits(_) => {
            return Err(Error::UnsupportedPullback("explicit element lists".into()))
        }
    })
}

/// Packages the order pulled back along `hom` from a positive cone on `ℤʳ`.
pub fn cone_from_quotient_order(
    model: &GroupModel,
    hom: &Homomorphism,
    quotient_cone: &ConeSet,
    radius: u32,
) -> Result<LeftOrderWitness> {
    if hom.source() != model {
        return Err(Error::ModelMismatch("homomorphism source differs from the model".into()));
    }
    let phi = lattice_images(hom)?;
    order_from_cone(hom.target(), quotient_cone, radius)?;
    let cone = pull_back(hom, quotient_cone)?;
    LeftOrderWitness::new(model.clone(), ConeSet::pullback(phi, Region::Zero), cone)
}

/// The cover `A = φ⁻¹(P⁻¹ − {0}) ∪ {1}`, `B = φ⁻¹(P)` of a nontrivial
/// left-ordered quotient `φ : G → ℤʳ`.
pub fn pullback_cover(
    model: &GroupModel,
    hom: &Homomorphism,
    quotient_cone: &ConeSet,
    radius: u32,
) -> Result<CoverPair> {
    let target = hom.target();
    quotient_cone.validate(target)?;
    let sym = quotient_cone.symmetric_part(target)?;
    if hom.images().iter().all(|img| sym.eval(target, img)) {
        return Err(Error::TrivialQuotient);
    }
    cone_from_quotient_order(model, hom, quotient_cone, radius)?.cover(radius)
}

/// Lexicographic combination: compare by `w1`, break ties by `w2`.
pub fn lex_combine(w1: &LeftOrderWitness, w2: &LeftOrderWitness) -> Result<LeftOrderWitness> {
    if w1.model != w2.model {
        return Err(Error::ModelMismatch("witnesses over different models".into()));
    }
    let kernel = w1.kernel.clone().and(w2.kernel.clone());
    let strict1 = w1.cone.clone().minus(w1.kernel.clone());
    let cone = strict1.or(w1.kernel.clone().and(w2.cone.clone()));
    LeftOrderWitness::new(w1.model.clone(), kernel, cone)
}

/// Result of [`merge_covers`] with its postcondition checks.
#[derive(Clone, Debug)]
pub struct MergedCover {
    pub cover: CoverPair,
    /// `B′ ⊆ B₁` on the ball.
    pub b_within_b1: Verdict,
    /// `A₁ ⊆ A′` on the ball.
    pub a1_within_a: Verdict,
    /// The maximal subgroup of `B′` equals `N₁ ∩ N₂` on the ball.
    pub kernel_is_intersection: Verdict,
}

impl MergedCover {
    pub fn is_valid(&self) -> bool {
        self.cover.flags.all_verified()
            && self.b_within_b1.is_verified()
            && self.a1_within_a.is_verified()
            && self.kernel_is_intersection.is_verified()
    }
}

/// Merges two normalized covers whose maximal subgroups `N₁`, `N₂` are
/// normal: `B′ = (B₁ − N₁) ∪ (N₁ ∩ B₂)` and `A′ = (G − B′) ∪ {1}`.
pub fn merge_covers(c1: &CoverPair, c2: &CoverPair, radius: u32) -> Result<MergedCover> {
    if c1.model != c2.model {
        return Err(Error::ModelMismatch("covers over different models".into()));
    }
    let model = &c1.model;
    let ball = Ball::for_checks(model, radius.max(1), DEFAULT_BALL_CAP)?;
    let mut kernels = Vec::new();
    for (name, c) in [("first", c1), ("second", c2)] {
        if !c.flags.is_normalized() {
            return Err(Error::NotNormalized(format!("{name} cover")));
        }
        let n = c.b.symmetric_part(model)?;
        let normal = cone::normality_on_ball(model, &n, &ball);
        if !normal.is_verified() {
            return Err(Error::NotNormalized(format!(
                "maximal subgroup of the {name} cover is not normal at {}",
                crate::error::Witness(&normal.witness)
            )));
        }
        kernels.push(n);
    }
    let (n1, n2) = (kernels[0].clone(), kernels[1].clone());
    let b = c1.b.clone().minus(n1.clone()).or(n1.clone().and(c2.b.clone()));
    let a = b.clone().complement().with_identity();
    let b_within_b1 = cone::subset_on_ball(model, &b, &c1.b, &ball)?;
    let a1_within_a = cone::subset_on_ball(model, &c1.a, &a, &ball)?;
    let kernel_is_intersection =
        cone::equal_on_ball(model, &b.symmetric_part(model)?, &n1.and(n2), &ball)?;
    let cover = CoverPair::verify_on(model.clone(), a, b, &ball)?;
    Ok(MergedCover { cover, b_within_b1, a1_within_a, kernel_is_intersection })
}
