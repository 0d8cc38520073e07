//! Decidable subsets of a group model, closed under the operations the
//! cover constructions need: boolean algebra, inversion and conjugation.
//!
//! Membership is always exact. Universally quantified properties such as
//! closure under multiplication are checked on a ball and reported as a
//! [`Verdict`] carrying the radius; on finite groups the ball is the whole
//! group and the verdict is exact.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{Ball, Element, GroupModel, Homomorphism};

/// A sign region of `ℤʳ` under the lexicographic order, most significant
/// coordinate first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Region {
    Pos,
    NonNeg,
    Zero,
    NonPos,
    Neg,
}

impl Region {
    pub fn holds(self, sign: Ordering) -> bool {
        match self {
            Region::Pos => sign == Ordering::Greater,
            Region::NonNeg => sign != Ordering::Less,
            Region::Zero => sign == Ordering::Equal,
            Region::NonPos => sign != Ordering::Greater,
            Region::Neg => sign == Ordering::Less,
        }
    }

    /// The region of `-v` for `v` in `self`.
    pub fn reflect(self) -> Self {
        match self {
            Region::Pos => Region::Neg,
            Region::NonNeg => Region::NonPos,
            Region::Zero => Region::Zero,
            Region::NonPos => Region::NonNeg,
            Region::Neg => Region::Pos,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Region::Pos => "lex_pos",
            Region::NonNeg => "lex_nonneg",
            Region::Zero => "lex_zero",
            Region::NonPos => "lex_nonpos",
            Region::Neg => "lex_neg",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [Region::Pos, Region::NonNeg, Region::Zero, Region::NonPos, Region::Neg]
            .into_iter()
            .find(|r| r.name() == name)
    }
}

/// Sign of the first nonzero entry.
pub fn lex_sign(v: impl IntoIterator<Item = i64>) -> Ordering {
    v.into_iter().map(|x| x.cmp(&0)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExplicitMode {
    /// Exactly the listed elements.
    Include,
    /// Everything except the listed elements.
    Exclude,
}

/// A subset of a group model, as an expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeSet {
    /// A subset of a finite group, by element index.
    FiniteBits(BitSet),
    /// `{x : φ(x) ∈ region}` where `φ` sends generator `i` to `images[i] ∈ ℤʳ`.
    Pullback { images: Vec<Vec<i64>>, region: Region },
    /// `{x : W·c(x) ∈ region}` where `c(x)` are the normal-form coordinates
    /// of `x` and row `j` of `W` is `weights[j]`.
    Coordinates { weights: Vec<Vec<i64>>, region: Region },
    Union(Vec<ConeSet>),
    Intersection(Vec<ConeSet>),
    Complement(Box<ConeSet>),
    /// Kept sorted and deduplicated.
    Explicit { mode: ExplicitMode, elements: Vec<Element> },
    Identity,
    /// `{x : x⁻¹ ∈ S}`, used where inversion cannot be pushed into a leaf.
    Inverse(Box<ConeSet>),
    /// `{x : by⁻¹·x·by ∈ S}`.
    Conjugate { by: Element, arg: Box<ConeSet> },
}

impl ConeSet {
    pub fn pullback(images: Vec<Vec<i64>>, region: Region) -> Self {
        ConeSet::Pullback { images, region }
    }

    pub fn explicit(mode: ExplicitMode, mut elements: Vec<Element>) -> Self {
        elements.sort();
        elements.dedup();
        ConeSet::Explicit { mode, elements }
    }

    pub fn complement(self) -> Self {
        ConeSet::Complement(Box::new(self))
    }

    /// `self − other`.
    pub fn minus(self, other: ConeSet) -> Self {
        ConeSet::Intersection(alloc::vec![self, other.complement()])
    }

    /// `self ∪ {1}`.
    pub fn with_identity(self) -> Self {
        ConeSet::Union(alloc::vec![self, ConeSet::Identity])
    }

    /// `self − {1}`.
    pub fn without_identity(self) -> Self {
        self.minus(ConeSet::Identity)
    }

    pub fn and(self, other: ConeSet) -> Self {
        ConeSet::Intersection(alloc::vec![self, other])
    }

    pub fn or(self, other: ConeSet) -> Self {
        ConeSet::Union(alloc::vec![self, other])
    }

    /// Checks that the tree can be evaluated on `model`.
    pub fn validate(&self, model: &GroupModel) -> Result<()> {
        match self {
            ConeSet::FiniteBits(bits) => match model {
                GroupModel::Finite(g) if g.order() == bits.len() => Ok(()),
                _ => Err(Error::ModelMismatch(format!(
                    "bitset of length {} over {}",
                    bits.len(),
                    model.name()
                ))),
            },
            ConeSet::Pullback { images, .. } => {
                if images.len() != model.num_generators() {
                    return Err(Error::ModelMismatch(format!(
                        "pullback has {} images, {} has {} generators",
                        images.len(),
                        model.name(),
                        model.num_generators()
                    )));
                }
                Homomorphism::to_lattice(model.clone(), images)
                    .map_err(|e| Error::ModelMismatch(format!("{e}")))?;
                Ok(())
            }
            ConeSet::Coordinates { weights, .. } => match model.coord_dim() {
                Some(d) if weights.iter().all(|w| w.len() == d) => Ok(()),
                _ => Err(Error::ModelMismatch(format!(
                    "coordinate weights do not fit {}",
                    model.name()
                ))),
            },
            ConeSet::Union(cs) | ConeSet::Intersection(cs) => {
                cs.iter().try_for_each(|c| c.validate(model))
            }
            ConeSet::Complement(c) | ConeSet::Inverse(c) => c.validate(model),
            ConeSet::Explicit { elements, .. } => elements
                .iter()
                .try_for_each(|e| model.check(e))
                .map_err(|e| Error::ModelMismatch(format!("{e}"))),
            ConeSet::Identity => Ok(()),
            ConeSet::Conjugate { by, arg } => {
                model.check(by).map_err(|e| Error::ModelMismatch(format!("{e}")))?;
                arg.validate(model)
            }
        }
    }

    /// Membership of `x`.
    pub fn contains(&self, model: &GroupModel, x: &Element) -> Result<bool> {
        self.validate(model)?;
        model.check(x)?;
        Ok(self.eval(model, x))
    }

    /// Membership without validation; the tree must fit `model` and `x`
    /// must be a normal form.
    pub(crate) fn eval(&self, model: &GroupModel, x: &Element) -> bool {
        match self {
            ConeSet::FiniteBits(bits) => match x {
                Element::Finite(i) => bits.contains(*i),
                _ => false,
            },
            ConeSet::Pullback { images, region } => {
                let Some(exps) = model.abelian_exponents(x) else {
                    // Images out of a finite group are zero.
                    return region.holds(Ordering::Equal);
                };
                let rank = images.first().map_or(0, Vec::len);
                let sign = lex_sign((0..rank).map(|j| {
                    exps.iter().zip(images).map(|(e, img)| e * img[j]).sum::<i64>()
                }));
                region.holds(sign)
            }
            ConeSet::Coordinates { weights, region } => {
                let c = model.normal_coords(x).unwrap_or_default();
                let sign = lex_sign(
                    weights.iter().map(|w| w.iter().zip(&c).map(|(a, b)| a * b).sum::<i64>()),
                );
                region.holds(sign)
            }
            ConeSet::Union(cs) => cs.iter().any(|c| c.eval(model, x)),
            ConeSet::Intersection(cs) => cs.iter().all(|c| c.eval(model, x)),
            ConeSet::Complement(c) => !c.eval(model, x),
            ConeSet::Explicit { mode, elements } => {
                let listed = elements.binary_search(x).is_ok();
                listed == (*mode == ExplicitMode::Include)
            }
            ConeSet::Identity => model.is_identity(x),
            ConeSet::Inverse(c) => c.eval(model, &model.inv_unchecked(x)),
            ConeSet::Conjugate { by, arg } => arg.eval(model, &model.conj_unchecked(x, by)),
        }
    }

    /// `S⁻¹`, pushed down to the leaves wherever the leaf has a closed form.
    pub fn inverted(&self, model: &GroupModel) -> Result<ConeSet> {
        self.validate(model)?;
        Ok(self.invert_unchecked(model))
    }

    fn invert_unchecked(&self, model: &GroupModel) -> ConeSet {
        match self {
            ConeSet::FiniteBits(bits) => {
                let GroupModel::Finite(g) = model else { unreachable!("validated") };
                ConeSet::FiniteBits(BitSet::from_indices(bits.len(), bits.iter().map(|i| g.inv(i))))
            }
            // φ(x⁻¹) = −φ(x) for an abelian target.
            ConeSet::Pullback { images, region } => {
                ConeSet::Pullback { images: images.clone(), region: region.reflect() }
            }
            ConeSet::Coordinates { weights, region } => match model {
                GroupModel::Lattice { rank, .. } if weights.iter().all(|w| w[*rank..].iter().all(|&v| v == 0)) => {
                    ConeSet::Coordinates { weights: weights.clone(), region: region.reflect() }
                }
                _ => ConeSet::Inverse(Box::new(self.clone())),
            },
            ConeSet::Union(cs) => ConeSet::Union(cs.iter().map(|c| c.invert_unchecked(model)).collect()),
            ConeSet::Intersection(cs) => {
                ConeSet::Intersection(cs.iter().map(|c| c.invert_unchecked(model)).collect())
            }
            ConeSet::Complement(c) => ConeSet::Complement(Box::new(c.invert_unchecked(model))),
            ConeSet::Explicit { mode, elements } => {
                ConeSet::explicit(*mode, elements.iter().map(|e| model.inv_unchecked(e)).collect())
            }
            ConeSet::Identity => ConeSet::Identity,
            ConeSet::Inverse(c) => (**c).clone(),
            ConeSet::Conjugate { by, arg } => {
                ConeSet::Conjugate { by: by.clone(), arg: Box::new(arg.invert_unchecked(model)) }
            }
        }
    }

    /// The conjugate `g·S·g⁻¹ = {x : g⁻¹·x·g ∈ S}`.
    pub fn conjugated(&self, model: &GroupModel, g: &Element) -> Result<ConeSet> {
        self.validate(model)?;
        model.check(g)?;
        Ok(self.conjugate_unchecked(model, g))
    }

    pub(crate) fn conjugate_unchecked(&self, model: &GroupModel, g: &Element) -> ConeSet {
        if model.is_abelian() || model.is_identity(g) {
            return self.clone();
        }
        match self {
            ConeSet::FiniteBits(bits) => {
                let GroupModel::Finite(grp) = model else { unreachable!("validated") };
                let Element::Finite(gi) = g else { unreachable!("validated") };
                let ginv = grp.inv(*gi);
                ConeSet::FiniteBits(BitSet::from_indices(
                    bits.len(),
                    bits.iter().map(|s| grp.mul(grp.mul(*gi, s), ginv)),
                ))
            }
            // Abelian images are conjugation invariant.
            ConeSet::Pullback { .. } | ConeSet::Identity => self.clone(),
            ConeSet::Coordinates { .. } => {
                ConeSet::Conjugate { by: g.clone(), arg: Box::new(self.clone()) }
            }
            ConeSet::Union(cs) => {
                ConeSet::Union(cs.iter().map(|c| c.conjugate_unchecked(model, g)).collect())
            }
            ConeSet::Intersection(cs) => {
                ConeSet::Intersection(cs.iter().map(|c| c.conjugate_unchecked(model, g)).collect())
            }
            ConeSet::Complement(c) => ConeSet::Complement(Box::new(c.conjugate_unchecked(model, g))),
            ConeSet::Explicit { mode, elements } => {
                let gi = model.inv_unchecked(g);
                ConeSet::explicit(
                    *mode,
                    elements.iter().map(|e| model.conj_unchecked(e, &gi)).collect(),
                )
            }
            ConeSet::Inverse(c) => ConeSet::Inverse(Box::new(c.conjugate_unchecked(model, g))),
            ConeSet::Conjugate { by, arg } => ConeSet::Conjugate {
                by: model.mul_unchecked(g, by),
                arg: arg.clone(),
            },
        }
    }

    /// `S ∩ S⁻¹`; the maximal subgroup of `S` when `S` is a subsemigroup
    /// containing the identity.
    pub fn symmetric_part(&self, model: &GroupModel) -> Result<ConeSet> {
        Ok(self.clone().and(self.inverted(model)?))
    }

    /// Indices of ball elements in the set, in BFS order.
    pub fn members(&self, model: &GroupModel, ball: &Ball) -> Vec<usize> {
        (0..ball.len()).filter(|&i| self.eval(model, &ball.elements()[i])).collect()
    }
}

/// Membership of `x` in `cone`.
pub fn contains(model: &GroupModel, cone: &ConeSet, x: &Element) -> Result<bool> {
    cone.contains(model, x)
}

pub fn invert_cone(model: &GroupModel, cone: &ConeSet) -> Result<ConeSet> {
    cone.inverted(model)
}

pub fn symmetric_part(model: &GroupModel, cone: &ConeSet) -> Result<ConeSet> {
    cone.symmetric_part(model)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Verified,
    Counterexample,
    Inconclusive,
}

/// Outcome of a universally quantified check.
///
/// `Verified` means verified on the ball of `radius_checked`; on finite
/// groups that ball is the whole group. A counterexample always carries the
/// elements that exhibit it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub witness: Vec<Element>,
    pub radius_checked: u32,
}

impl Verdict {
    pub fn verified(radius: u32) -> Self {
        Verdict { status: Status::Verified, witness: Vec::new(), radius_checked: radius }
    }

    pub fn counterexample(witness: Vec<Element>, radius: u32) -> Self {
        Verdict { status: Status::Counterexample, witness, radius_checked: radius }
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn from_witness(witness: Option<Vec<Element>>, radius: u32) -> Self {
        match witness {
            Some(w) => Self::counterexample(w, radius),
            None => Self::verified(radius),
        }
    }
}

/// First pair `(x, y)` of members (BFS order) with `xy ∉ cone`.
pub(crate) fn closure_witness(model: &GroupModel, cone: &ConeSet, ball: &Ball) -> Option<Vec<Element>> {
    let members = cone.members(model, ball);
    let els = ball.elements();
    for &i in &members {
        for &j in &members {
            let p = model.mul_unchecked(&els[i], &els[j]);
            if !cone.eval(model, &p) {
                return Some(alloc::vec![els[i].clone(), els[j].clone()]);
            }
        }
    }
    None
}

/// First ball element in `s` but not in `t`.
pub(crate) fn subset_witness(model: &GroupModel, s: &ConeSet, t: &ConeSet, ball: &Ball) -> Option<Element> {
    ball.iter().find(|x| s.eval(model, x) && !t.eval(model, x)).cloned()
}

/// Extensional equality on the ball; the witness is the first element where
/// the two sets differ.
pub fn equal_on_ball(model: &GroupModel, s: &ConeSet, t: &ConeSet, ball: &Ball) -> Result<Verdict> {
    s.validate(model)?;
    t.validate(model)?;
    let w = ball.iter().find(|x| s.eval(model, x) != t.eval(model, x));
    Ok(Verdict::from_witness(w.map(|x| alloc::vec![x.clone()]), ball.radius()))
}

/// `s ⊆ t` on the ball.
pub fn subset_on_ball(model: &GroupModel, s: &ConeSet, t: &ConeSet, ball: &Ball) -> Result<Verdict> {
    s.validate(model)?;
    t.validate(model)?;
    let w = subset_witness(model, s, t, ball);
    Ok(Verdict::from_witness(w.map(|x| alloc::vec![x]), ball.radius()))
}

pub fn closure_on_ball(model: &GroupModel, cone: &ConeSet, ball: &Ball) -> Result<Verdict> {
    cone.validate(model)?;
    Ok(Verdict::from_witness(closure_witness(model, cone, ball), ball.radius()))
}

/// Closure under multiplication: exact on finite groups, on `ball(radius)`
/// otherwise.
pub fn is_subsemigroup(model: &GroupModel, cone: &ConeSet, radius: u32) -> Result<Verdict> {
    let ball = Ball::for_checks(model, radius.max(1), crate::DEFAULT_BALL_CAP)?;
    closure_on_ball(model, cone, &ball)
}

/// The individual checks making up "`A`, `B` is a two-subsemigroup cover".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverVerdicts {
    pub closed_a: Verdict,
    pub closed_b: Verdict,
    pub covers: Verdict,
    pub proper_a: Verdict,
    pub proper_b: Verdict,
    pub trivial_intersection: Option<Verdict>,
}

impl CoverVerdicts {
    /// Closure, covering and properness all verified. The intersection check
    /// is not part of this.
    pub fn is_cover(&self) -> bool {
        [&self.closed_a, &self.closed_b, &self.covers, &self.proper_a, &self.proper_b]
            .iter()
            .all(|v| v.is_verified())
    }

    pub fn all_verified(&self) -> bool {
        self.is_cover() && self.trivial_intersection.as_ref().is_none_or(Verdict::is_verified)
    }

    /// The first failing check, by name.
    pub fn first_failure(&self) -> Option<(&'static str, &Verdict)> {
        [
            ("closed_A", &self.closed_a),
            ("closed_B", &self.closed_b),
            ("covers", &self.covers),
            ("proper_A", &self.proper_a),
            ("proper_B", &self.proper_b),
        ]
        .into_iter()
        .chain(self.trivial_intersection.as_ref().map(|v| ("trivial_intersection", v)))
        .find(|(_, v)| !v.is_verified())
    }
}

/// Properness on the ball. A failure has an empty witness: the set contains
/// every ball element.
pub(crate) fn proper_on_ball(model: &GroupModel, cone: &ConeSet, ball: &Ball) -> Verdict {
    if ball.iter().any(|x| !cone.eval(model, x)) {
        Verdict::verified(ball.radius())
    } else {
        Verdict::counterexample(Vec::new(), ball.radius())
    }
}

pub fn cover_verdicts_on_ball(
    model: &GroupModel,
    a: &ConeSet,
    b: &ConeSet,
    ball: &Ball,
    check_intersection: bool,
) -> Result<CoverVerdicts> {
    a.validate(model)?;
    b.validate(model)?;
    let r = ball.radius();
    let uncovered = ball.iter().find(|x| !a.eval(model, x) && !b.eval(model, x));
    let trivial_intersection = check_intersection.then(|| {
        let w = ball
            .iter()
            .find(|x| !model.is_identity(x) && a.eval(model, x) && b.eval(model, x));
        Verdict::from_witness(w.map(|x| alloc::vec![x.clone()]), r)
    });
    Ok(CoverVerdicts {
        closed_a: Verdict::from_witness(closure_witness(model, a, ball), r),
        closed_b: Verdict::from_witness(closure_witness(model, b, ball), r),
        covers: Verdict::from_witness(uncovered.map(|x| alloc::vec![x.clone()]), r),
        proper_a: proper_on_ball(model, a, ball),
        proper_b: proper_on_ball(model, b, ball),
        trivial_intersection,
    })
}

/// Checks that `A` and `B` are proper subsemigroups whose union is the
/// group, and optionally that `A ∩ B = {1}`.
pub fn is_cover_pair(
    model: &GroupModel,
    a: &ConeSet,
    b: &ConeSet,
    radius: u32,
    check_intersection: bool,
) -> Result<CoverVerdicts> {
    let ball = Ball::for_checks(model, radius.max(1), crate::DEFAULT_BALL_CAP)?;
    cover_verdicts_on_ball(model, a, b, &ball, check_intersection)
}

/// Conjugation stability of `n` on the ball: the first `(g, h)` in BFS
/// order with `h ∈ n` and `g⁻¹·h·g ∉ n` is the witness. The ball is
/// inverse-closed, so both conjugation directions are covered.
pub fn normality_on_ball(model: &GroupModel, n: &ConeSet, ball: &Ball) -> Verdict {
    if model.is_abelian() {
        return Verdict::verified(ball.radius());
    }
    let members = n.members(model, ball);
    let els = ball.elements();
    for g in els {
        for &h in &members {
            if !n.eval(model, &model.conj_unchecked(&els[h], g)) {
                return Verdict::counterexample(alloc::vec![g.clone(), els[h].clone()], ball.radius());
            }
        }
    }
    Verdict::verified(ball.radius())
}
