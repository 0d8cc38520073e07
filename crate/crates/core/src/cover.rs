//! Normalizing two-subsemigroup covers and extracting left orders from them.
//!
//! Starting from proper subsemigroups `A`, `B` with `A ∪ B = G`:
//!
//! 1. orient the pair so the subgroup generated by `I = A ∩ B` lies in `B`;
//! 2. replace `A` by `(A − I) ∪ {1}`, after which `A ∩ B = {1}` and
//!    `(A − {1})⁻¹ = B − H` where `H` is the maximal subgroup of `B`;
//! 3. while `H` is not normal, pick `g` with `g⁻¹Hg ⊄ H`, split
//!    `H = H_A ∪ H_B` along the conjugate and move `H_A` over to `A`;
//! 4. once the maximal subgroup `N` of the `B` side is normal, `B` is the
//!    positive cone of a left order on `G/N`.
//!
//! Step 3 is a bounded descent; every check is made on a ball and reported
//! with its radius.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::cone::{
    self, closure_witness, cover_verdicts_on_ball, proper_on_ball, ConeSet, Verdict,
};
use crate::covering;
use crate::error::{Error, Lemma, Result};
use crate::group::{Ball, Element, GroupModel};
use crate::order::{LeftOrderWitness, WitnessReport};
use crate::DEFAULT_BALL_CAP;

/// Verification status of a cover pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverFlags {
    pub closed_a: Verdict,
    pub closed_b: Verdict,
    pub covers: Verdict,
    pub proper_a: Verdict,
    pub proper_b: Verdict,
    pub trivial_intersection: Verdict,
    pub inverse_duality: Verdict,
}

impl CoverFlags {
    pub fn verdicts(&self) -> [(&'static str, &Verdict); 7] {
        [
            ("closed_A", &self.closed_a),
            ("closed_B", &self.closed_b),
            ("covers", &self.covers),
            ("proper_A", &self.proper_a),
            ("proper_B", &self.proper_b),
            ("trivial_intersection", &self.trivial_intersection),
            ("inverse_duality", &self.inverse_duality),
        ]
    }

    /// Closed, covering and proper.
    pub fn is_cover(&self) -> bool {
        self.verdicts()[..5].iter().all(|(_, v)| v.is_verified())
    }

    pub fn is_normalized(&self) -> bool {
        self.is_cover() && self.trivial_intersection.is_verified() && self.inverse_duality.is_verified()
    }

    pub fn all_verified(&self) -> bool {
        self.verdicts().iter().all(|(_, v)| v.is_verified())
    }

    pub fn first_failure(&self) -> Option<(&'static str, &Verdict)> {
        self.verdicts().into_iter().find(|(_, v)| !v.is_verified())
    }
}

/// A pair `(A, B)` together with its ball-verified properties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverPair {
    pub model: GroupModel,
    pub a: ConeSet,
    pub b: ConeSet,
    pub flags: CoverFlags,
    pub radius: u32,
}

impl CoverPair {
    pub fn verify(model: GroupModel, a: ConeSet, b: ConeSet, radius: u32) -> Result<Self> {
        let ball = Ball::for_checks(&model, radius.max(1), DEFAULT_BALL_CAP)?;
        Self::verify_on(model, a, b, &ball)
    }

    pub fn verify_on(model: GroupModel, a: ConeSet, b: ConeSet, ball: &Ball) -> Result<Self> {
        let v = cover_verdicts_on_ball(&model, &a, &b, ball, true)?;
        let inverse_duality = inverse_duality_on(&model, &a, &b, ball)?;
        let flags = CoverFlags {
            closed_a: v.closed_a,
            closed_b: v.closed_b,
            covers: v.covers,
            proper_a: v.proper_a,
            proper_b: v.proper_b,
            trivial_intersection: v.trivial_intersection.expect("requested"),
            inverse_duality,
        };
        Ok(CoverPair { model, a, b, flags, radius: ball.radius() })
    }

    /// `H = B ∩ B⁻¹`.
    pub fn maximal_subgroup(&self) -> Result<ConeSet> {
        self.b.symmetric_part(&self.model)
    }

    fn ball(&self, radius: u32) -> Result<Ball> {
        Ball::for_checks(&self.model, radius.max(1), DEFAULT_BALL_CAP)
    }
}

/// `x ∈ A − {1} ⇒ x⁻¹ ∈ B − H` and `x ∈ B − H ⇒ x⁻¹ ∈ A − {1}` on the ball.
fn inverse_duality_on(model: &GroupModel, a: &ConeSet, b: &ConeSet, ball: &Ball) -> Result<Verdict> {
    let h = b.symmetric_part(model)?;
    let a_star = |x: &Element| !model.is_identity(x) && a.eval(model, x);
    let b_star = |x: &Element| b.eval(model, x) && !h.eval(model, x);
    let bad = ball.iter().find(|x| {
        let xi = model.inv_unchecked(x);
        (a_star(x) && !b_star(&xi)) || (b_star(x) && !a_star(&xi))
    });
    Ok(Verdict::from_witness(bad.map(|x| vec![x.clone()]), ball.radius()))
}

/// `hx, xh ∈ A − {1}` for `x ∈ A − {1}` and `hx, xh ∈ B − H` for `x ∈ B − H`,
/// for every `h ∈ H`. Witness `(h, x)`.
fn coset_saturation_on(model: &GroupModel, a: &ConeSet, b: &ConeSet, ball: &Ball) -> Result<Verdict> {
    let h = b.symmetric_part(model)?;
    let a_star = a.clone().without_identity();
    let b_star = b.clone().minus(h.clone());
    let hs = h.members(model, ball);
    let els = ball.elements();
    for side in [&a_star, &b_star] {
        let xs = side.members(model, ball);
        for &hi in &hs {
            for &xi in &xs {
                let (h, x) = (&els[hi], &els[xi]);
                let left = model.mul_unchecked(h, x);
                let right = model.mul_unchecked(x, h);
                if !side.eval(model, &left) || !side.eval(model, &right) {
                    return Ok(Verdict::counterexample(vec![h.clone(), x.clone()], ball.radius()));
                }
            }
        }
    }
    Ok(Verdict::verified(ball.radius()))
}

pub fn check_coset_saturation(cover: &CoverPair, radius: u32) -> Result<Verdict> {
    coset_saturation_on(&cover.model, &cover.a, &cover.b, &cover.ball(radius)?)
}

pub fn check_inverse_duality(cover: &CoverPair, radius: u32) -> Result<Verdict> {
    inverse_duality_on(&cover.model, &cover.a, &cover.b, &cover.ball(radius)?)
}

/// Closure of `A − {1}`.
pub fn check_difference_closure(cover: &CoverPair, radius: u32) -> Result<Verdict> {
    let ball = cover.ball(radius)?;
    let a_star = cover.a.clone().without_identity();
    Ok(Verdict::from_witness(closure_witness(&cover.model, &a_star, &ball), ball.radius()))
}

/// The maximal subgroup `B ∩ B⁻¹` with its closure verdict on the ball.
pub fn maximal_subgroup(model: &GroupModel, b: &ConeSet, radius: u32) -> Result<(ConeSet, Verdict)> {
    let ball = Ball::for_checks(model, radius.max(1), DEFAULT_BALL_CAP)?;
    let h = b.symmetric_part(model)?;
    let closed = Verdict::from_witness(closure_witness(model, &h, &ball), ball.radius());
    Ok((h, closed))
}

/// Which side of the cover contains the subgroup generated by `A ∩ B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionClass {
    pub side: Side,
    /// `A ∩ B` on the ball.
    pub intersection: Vec<Element>,
    /// `x ∈ I` with `x⁻¹ ∈ A − B`.
    pub i_a: Vec<Element>,
    /// `y ∈ I` with `y⁻¹ ∈ B − A`.
    pub i_b: Vec<Element>,
}

/// Splits `I = A ∩ B` by where inverses land and decides which side holds
/// `⟨I⟩`; `B` when both splits are empty.
///
/// Both splits nonempty cannot happen for a genuine cover: for `x ∈ I_A`,
/// `y ∈ I_B` the element `x⁻¹y⁻¹` lies in `A` or `B` and either choice breaks
/// closure. The error's witness is `(x, y, x⁻¹y⁻¹)`.
pub fn classify_intersection(
    model: &GroupModel,
    a: &ConeSet,
    b: &ConeSet,
    radius: u32,
) -> Result<IntersectionClass> {
    let ball = Ball::for_checks(model, radius.max(1), DEFAULT_BALL_CAP)?;
    classify_on(model, a, b, &ball)
}

fn classify_on(model: &GroupModel, a: &ConeSet, b: &ConeSet, ball: &Ball) -> Result<IntersectionClass> {
    a.validate(model)?;
    b.validate(model)?;
    if let Some(x) = ball.iter().find(|x| !a.eval(model, x) && !b.eval(model, x)) {
        return Err(Error::NotACover { check: "covers".into(), witness: vec![x.clone()], radius: ball.radius() });
    }
    let intersection: Vec<Element> =
        ball.iter().filter(|x| a.eval(model, x) && b.eval(model, x)).cloned().collect();
    let (mut i_a, mut i_b) = (Vec::new(), Vec::new());
    for x in &intersection {
        let xi = model.inv_unchecked(x);
        match (a.eval(model, &xi), b.eval(model, &xi)) {
            (true, false) => i_a.push(x.clone()),
            (false, true) => i_b.push(x.clone()),
            _ => {}
        }
    }
    if let (Some(x), Some(y)) = (i_a.first(), i_b.first()) {
        let p = model.mul_unchecked(&model.inv_unchecked(x), &model.inv_unchecked(y));
        return Err(Error::LemmaViolation {
            lemma: Lemma::IntersectionSide,
            witness: vec![x.clone(), y.clone(), p],
        });
    }
    let side = if i_a.is_empty() { Side::B } else { Side::A };
    Ok(IntersectionClass { side, intersection, i_a, i_b })
}

/// A normalized cover and the decisions taken to reach it.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub cover: CoverPair,
    pub class: IntersectionClass,
    /// `A` and `B` were exchanged so that `⟨I⟩ ⊆ B`.
    pub oriented_swap: bool,
    /// `A` and `B` were exchanged because `H = I` (see [`reduce_cover`]).
    pub duality_swap: bool,
    pub coset_saturation: Verdict,
    pub difference_closure: Verdict,
}

/// Normalizes a cover to `A ∩ B = {1}` with `(A − {1})⁻¹ = B − H`.
///
/// The identity is first adjoined to both sides. After orienting `⟨I⟩ ⊆ B`,
/// the sides are exchanged once more when `H ∩ ball = I ∩ ball` and either
/// `I ≠ {1}` or `A − I` contains a pair of mutually inverse elements. In that
/// case `(B − I)⁻¹ = A − (A ∩ A⁻¹)` holds, so the exchanged pair normalizes.
/// When `I = {1}` and duality already holds the pair is left alone, which
/// makes already-normalized covers fixed points.
pub fn reduce_cover(model: &GroupModel, a: &ConeSet, b: &ConeSet, radius: u32) -> Result<Reduction> {
    let ball = Ball::for_checks(model, radius.max(1), DEFAULT_BALL_CAP)?;
    a.validate(model)?;
    b.validate(model)?;
    let id = model.identity();
    let adjoin = |s: &ConeSet| if s.eval(model, &id) { s.clone() } else { s.clone().with_identity() };
    let (mut a, mut b) = (adjoin(a), adjoin(b));

    let pre = cover_verdicts_on_ball(model, &a, &b, &ball, false)?;
    if let Some((check, v)) = pre.first_failure() {
        return Err(Error::NotACover { check: check.into(), witness: v.witness.clone(), radius: ball.radius() });
    }

    let class = classify_on(model, &a, &b, &ball)?;
    let oriented_swap = class.side == Side::A;
    if oriented_swap {
        core::mem::swap(&mut a, &mut b);
    }

    let h = b.symmetric_part(model)?;
    let in_i = |x: &Element| a.eval(model, x) && b.eval(model, x);
    let h_is_i = ball.iter().all(|x| h.eval(model, x) == in_i(x));
    let i_trivial = class.intersection.len() == 1;
    let a_minus_i_has_inverse_pair = ball.iter().any(|x| {
        a.eval(model, x) && !b.eval(model, x) && {
            let xi = model.inv_unchecked(x);
            a.eval(model, &xi) && !b.eval(model, &xi)
        }
    });
    let duality_swap = h_is_i && (!i_trivial || a_minus_i_has_inverse_pair);
    if duality_swap {
        core::mem::swap(&mut a, &mut b);
    }

    let a_star = a.minus(b.clone()).with_identity();
    let cover = CoverPair::verify_on(model.clone(), a_star, b, &ball)?;
    let coset_saturation = coset_saturation_on(model, &cover.a, &cover.b, &ball)?;
    let difference_closure = Verdict::from_witness(
        closure_witness(model, &cover.a.clone().without_identity(), &ball),
        ball.radius(),
    );

    let violation = |lemma, v: &Verdict| Error::LemmaViolation { lemma, witness: v.witness.clone() };
    if !difference_closure.is_verified() {
        return Err(violation(Lemma::DifferenceClosure, &difference_closure));
    }
    if !cover.flags.inverse_duality.is_verified() {
        return Err(violation(Lemma::InverseDuality, &cover.flags.inverse_duality));
    }
    if !coset_saturation.is_verified() {
        return Err(violation(Lemma::CosetSaturation, &coset_saturation));
    }
    if let Some((check, v)) = cover.flags.first_failure() {
        return Err(Error::NotACover { check: check.into(), witness: v.witness.clone(), radius: ball.radius() });
    }
    Ok(Reduction { cover, class, oriented_swap, duality_swap, coset_saturation, difference_closure })
}

/// `H = H_A ∪ H_B` along the conjugate by `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateSplit {
    pub h: ConeSet,
    /// `{h ∈ H : g⁻¹hg ∈ A}`.
    pub h_a: ConeSet,
    /// `{h ∈ H : g⁻¹hg ∈ B}`.
    pub h_b: ConeSet,
    /// `H_A ∩ ball = {1}` and `g⁻¹Hg = H` on the ball.
    pub already_normal: bool,
    /// Elements of `H_A − {1}` on the ball.
    pub h_a_ball: Vec<Element>,
}

pub fn conjugate_split(cover: &CoverPair, g: &Element, radius: u32) -> Result<ConjugateSplit> {
    let ball = cover.ball(radius)?;
    split_on(cover, g, &ball)
}

fn split_on(cover: &CoverPair, g: &Element, ball: &Ball) -> Result<ConjugateSplit> {
    let m = &cover.model;
    m.check(g)?;
    let h = cover.maximal_subgroup()?;
    let hs: Vec<&Element> = ball.iter().filter(|x| h.eval(m, x)).collect();
    if hs.iter().all(|x| m.is_identity(x)) {
        return Err(Error::IdentityOnlyH);
    }
    let h_a = h.clone().and(cover.a.conjugate_unchecked(m, g));
    let h_b = h.clone().and(cover.b.conjugate_unchecked(m, g));
    for x in &hs {
        let (in_a, in_b) = (h_a.eval(m, x), h_b.eval(m, x));
        if !(in_a || in_b) || (in_a && in_b && !m.is_identity(x)) {
            return Err(Error::LemmaViolation { lemma: Lemma::ConjugateSplit, witness: vec![(*x).clone(), g.clone()] });
        }
    }
    let h_a_ball: Vec<Element> =
        hs.iter().filter(|x| !m.is_identity(x) && h_a.eval(m, x)).map(|x| (*x).clone()).collect();
    let gi = m.inv_unchecked(g);
    let stable = hs
        .iter()
        .all(|x| h.eval(m, &m.conj_unchecked(x, g)) && h.eval(m, &m.conj_unchecked(x, &gi)));
    let already_normal = h_a_ball.is_empty() && stable;
    Ok(ConjugateSplit { h, h_a, h_b, already_normal, h_a_ball })
}

/// The refined pair `A′ = A ∪ H_A`, `B′ = (B − H_A) ∪ {1}`.
///
/// Checked on the ball: both sides closed, `A ⊊ A′` and `B′ ⊊ B`,
/// `a ∈ A′ ⇒ a⁻¹ ∈ B′`, and `A′` contains no `x ≠ 1` together with `x⁻¹`.
pub fn refine_pair(cover: &CoverPair, g: &Element, radius: u32) -> Result<CoverPair> {
    let ball = cover.ball(radius)?;
    refine_on(cover, g, &ball)
}

fn refine_on(cover: &CoverPair, g: &Element, ball: &Ball) -> Result<CoverPair> {
    let m = &cover.model;
    let split = match split_on(cover, g, ball) {
        Err(Error::IdentityOnlyH) => return Err(Error::NothingToRefine),
        other => other?,
    };
    if split.h_a_ball.is_empty() {
        return Err(Error::NothingToRefine);
    }
    let a2 = cover.a.clone().or(split.h_a.clone());
    let b2 = cover.b.clone().minus(split.h_a.clone()).with_identity();

    if let Some(w) = closure_witness(m, &a2, ball) {
        return Err(Error::ClosureViolation { side: "A'".into(), witness: w });
    }
    if let Some(w) = closure_witness(m, &b2, ball) {
        // Prefer the shape the closure argument rules out: b₁b₂ ∈ H_A.
        let members = b2.members(m, ball);
        let els = ball.elements();
        let into_h_a = members.iter().flat_map(|&i| members.iter().map(move |&j| (i, j))).find(|&(i, j)| {
            let p = m.mul_unchecked(&els[i], &els[j]);
            !m.is_identity(&p) && split.h_a.eval(m, &p)
        });
        let witness = into_h_a.map_or(w, |(i, j)| vec![els[i].clone(), els[j].clone()]);
        return Err(Error::ClosureViolation { side: "B'".into(), witness });
    }
    let refinement = |w: Vec<Element>| Error::LemmaViolation { lemma: Lemma::Refinement, witness: w };
    if let Some(x) = cone::subset_witness(m, &cover.a, &a2, ball) {
        return Err(refinement(vec![x]));
    }
    if cone::subset_witness(m, &a2, &cover.a, ball).is_none() {
        return Err(refinement(Vec::new()));
    }
    if cone::subset_witness(m, &cover.b, &b2, ball).is_none() {
        return Err(refinement(Vec::new()));
    }
    for x in ball.iter().filter(|x| a2.eval(m, x)) {
        let xi = m.inv_unchecked(x);
        if !b2.eval(m, &xi) || (!m.is_identity(x) && a2.eval(m, &xi)) {
            return Err(refinement(vec![x.clone()]));
        }
    }
    CoverPair::verify_on(m.clone(), a2, b2, ball)
}

/// One refinement step of the descent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentStep {
    /// The conjugating element used for the refinement.
    pub g: Element,
    /// An element of `N` with `g⁻¹·h·g ∉ N`.
    pub h: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescentOutcome {
    /// The maximal subgroup of the `B` side is normal on the ball.
    NormalFound(ConeSet),
    DepthExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentState {
    pub current: CoverPair,
    pub step: usize,
    pub history: Vec<DescentStep>,
    pub outcome: DescentOutcome,
}

impl DescentState {
    /// Normal at the very first step, with no refinement needed.
    pub fn already_normal(&self) -> bool {
        self.step == 0 && matches!(self.outcome, DescentOutcome::NormalFound(_))
    }
}

/// Refines a normalized cover until the maximal subgroup `N` of its `B` side
/// is normal on the ball, choosing the first violating `(g, h)` in BFS order
/// at each step. Stops with [`DescentOutcome::DepthExceeded`] after
/// `max_depth` refinements.
pub fn minimal_pair_descent(cover: &CoverPair, max_depth: usize, radius: u32) -> Result<DescentState> {
    let ball = cover.ball(radius)?;
    let m = &cover.model;
    let mut current = cover.clone();
    let mut history = Vec::new();
    loop {
        let n = current.maximal_subgroup()?;
        let normal = cone::normality_on_ball(m, &n, &ball);
        if normal.is_verified() {
            let step = history.len();
            return Ok(DescentState { current, step, history, outcome: DescentOutcome::NormalFound(n) });
        }
        if history.len() >= max_depth {
            let step = history.len();
            return Ok(DescentState { current, step, history, outcome: DescentOutcome::DepthExceeded });
        }
        let (g, h) = (normal.witness[0].clone(), normal.witness[1].clone());
        let next = refine_on(&current, &g, &ball)?;
        history.push(DescentStep { g, h });
        current = next;
    }
}

/// Everything produced on the way from a cover to a left-order witness.
#[derive(Clone, Debug)]
pub struct WitnessDerivation {
    pub reduction: Reduction,
    pub descent: DescentState,
    pub witness: LeftOrderWitness,
    pub report: WitnessReport,
}

/// Reduces the cover, runs the descent and returns the order on `G/N` with
/// positive cone `V`, validated on the ball.
pub fn order_witness_from_cover(
    model: &GroupModel,
    a: &ConeSet,
    b: &ConeSet,
    radius: u32,
    max_depth: usize,
) -> Result<WitnessDerivation> {
    let reduction = reduce_cover(model, a, b, radius)?;
    let descent = minimal_pair_descent(&reduction.cover, max_depth, radius)?;
    let DescentOutcome::NormalFound(n) = &descent.outcome else {
        return Err(Error::DepthExceeded(Box::new(descent)));
    };
    let witness = LeftOrderWitness::new(model.clone(), n.clone(), descent.current.b.clone())?;
    let ball = Ball::for_checks(model, radius.max(1), DEFAULT_BALL_CAP)?;
    let report = witness.validate_on(&ball)?;
    if let Some((_, v)) = report.verdicts().into_iter().find(|(_, v)| !v.is_verified()) {
        return Err(Error::LemmaViolation { lemma: Lemma::OrderWitness, witness: v.witness.clone() });
    }
    Ok(WitnessDerivation { reduction, descent, witness, report })
}

/// One generator's contribution to the torsion argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionStep {
    pub generator: Element,
    pub order: Option<u64>,
    /// `gⁿ⁻¹`, equal to `g⁻¹` when `g` has order `n`.
    pub inverse_witness: Option<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionReport {
    pub steps: Vec<TorsionStep>,
    /// Every generator has finite order, so no two-subsemigroup cover exists.
    pub obstructed: bool,
    /// Two-subsemigroup covers found by exhaustive search, when run.
    pub exhaustive_covers: Option<usize>,
}

/// For a torsion generator `g` of order `n`, `g⁻¹ = gⁿ⁻¹` lies in every
/// subsemigroup containing `g`, so both `g` and `g⁻¹` end up in the maximal
/// subgroup of the `B` side; if the generators all do, `B = G`. Groups of
/// order at most `cap` are also searched exhaustively.
pub fn torsion_obstruction(model: &GroupModel, cap: usize) -> Result<TorsionReport> {
    let mut steps = Vec::new();
    for g in model.generators() {
        let order = model.element_order(&g)?;
        let inverse_witness = order.map(|n| {
            let mut p = model.identity();
            for _ in 1..n {
                p = model.mul_unchecked(&p, &g);
            }
            p
        });
        if let Some(w) = &inverse_witness {
            debug_assert_eq!(*w, model.inv_unchecked(&g));
        }
        steps.push(TorsionStep { generator: g, order, inverse_witness });
    }
    let obstructed = steps.iter().all(|s| s.order.is_some());
    let exhaustive_covers = match model {
        GroupModel::Finite(g) if g.order() <= cap => Some(covering::two_cover_search(g, cap)?.covers.len()),
        _ => None,
    };
    Ok(TorsionReport { steps, obstructed, exhaustive_covers })
}

/// Properness of one side on the ball; used by callers assembling reports.
pub fn proper_at(model: &GroupModel, s: &ConeSet, radius: u32) -> Result<Verdict> {
    let ball = Ball::for_checks(model, radius.max(1), DEFAULT_BALL_CAP)?;
    s.validate(model)?;
    Ok(proper_on_ball(model, s, &ball))
}

#[cfg(test)]
mod tests;
