use alloc::vec;

use super::*;
use crate::cone::{ExplicitMode, Region};
use crate::group::FiniteGroup;

fn zc2() -> GroupModel {
    GroupModel::Lattice { rank: 1, torsion: vec![2] }
}

fn lat(c: &[i64]) -> Element {
    Element::Lattice(c.iter().copied().collect())
}

/// `A = {n ≥ 0} × C₂`, `B = {n ≤ 0} × C₂`.
fn zc2_split() -> (ConeSet, ConeSet) {
    (
        ConeSet::pullback(vec![vec![1], vec![0]], Region::NonNeg),
        ConeSet::pullback(vec![vec![1], vec![0]], Region::NonPos),
    )
}

/// `B = {a > 0} ∪ {a = 0, c ≥ 0}` on the Heisenberg group, with maximal
/// subgroup `⟨y⟩`, which is not normal.
fn heisenberg_cover() -> (ConeSet, ConeSet) {
    let coord = |w: [i64; 3], r| ConeSet::Coordinates { weights: vec![w.to_vec()], region: r };
    let b = coord([1, 0, 0], Region::Pos)
        .or(coord([1, 0, 0], Region::Zero).and(coord([0, 0, 1], Region::NonNeg)));
    let a = b.clone().complement().with_identity();
    (a, b)
}

#[test]
fn torsion_split_swaps_onto_standard_order() {
    let m = zc2();
    let (a, b) = zc2_split();
    let pre = CoverPair::verify(m.clone(), a.clone(), b.clone(), 8).unwrap();
    assert!(pre.flags.is_cover());
    assert_eq!(pre.flags.trivial_intersection.witness, vec![lat(&[0, 1])]);

    let r = reduce_cover(&m, &a, &b, 8).unwrap();
    assert!(r.duality_swap && !r.oriented_swap);
    assert!(r.cover.flags.all_verified());
    assert_eq!(r.class.intersection, vec![lat(&[0, 0]), lat(&[0, 1])]);
    let ball = Ball::new(&m, 8, DEFAULT_BALL_CAP).unwrap();
    for x in ball.iter() {
        let n = match x {
            Element::Lattice(c) => c[0],
            _ => unreachable!(),
        };
        assert_eq!(r.cover.b.eval(&m, x), n >= 0);
        assert_eq!(r.cover.a.eval(&m, x), n < 0 || m.is_identity(x));
    }
}

#[test]
fn normalized_covers_are_fixed_points() {
    let m = GroupModel::lattice(1);
    let b = ConeSet::pullback(vec![vec![1]], Region::NonNeg);
    let a = ConeSet::pullback(vec![vec![1]], Region::Neg).with_identity();
    let r = reduce_cover(&m, &a, &b, 6).unwrap();
    assert!(!r.oriented_swap && !r.duality_swap);
    let ball = Ball::new(&m, 6, DEFAULT_BALL_CAP).unwrap();
    assert!(cone::equal_on_ball(&m, &r.cover.a, &a, &ball).unwrap().is_verified());
    assert!(cone::equal_on_ball(&m, &r.cover.b, &b, &ball).unwrap().is_verified());
}

#[test]
fn oriented_swap_moves_intersection_to_b() {
    // A = {n ≥ 0}, B = {n ≤ 1}: I = {0, 1}, and 1⁻¹ lies in B − A.
    let m = GroupModel::lattice(1);
    let a = ConeSet::pullback(vec![vec![1]], Region::NonNeg);
    let b = ConeSet::pullback(vec![vec![1]], Region::NonPos).or(ConeSet::explicit(ExplicitMode::Include, vec![lat(&[1])]));
    // B is not closed at radius 2: 1 + 1 ∉ B.
    assert!(matches!(reduce_cover(&m, &a, &b, 2), Err(Error::NotACover { .. })));
    let c = classify_intersection(&m, &a, &b, 2).unwrap();
    assert_eq!(c.side, Side::B);
    assert_eq!(c.i_b, vec![lat(&[1])]);
}

#[test]
fn both_sides_nonempty_is_a_violation() {
    let m = GroupModel::lattice(1);
    let a = ConeSet::explicit(ExplicitMode::Include, vec![lat(&[0]), lat(&[1]), lat(&[2]), lat(&[-1])]);
    let b = ConeSet::explicit(ExplicitMode::Exclude, vec![lat(&[-1])]);
    let err = classify_intersection(&m, &a, &b, 2).unwrap_err();
    let Error::LemmaViolation { lemma: Lemma::IntersectionSide, witness } = err else { panic!("{err:?}") };
    assert_eq!(witness, vec![lat(&[1]), lat(&[2]), lat(&[-3])]);
    // The third element multiplies back out of B.
    let back = m.mul(&witness[2], &witness[1]).unwrap();
    assert!(!b.contains(&m, &back).unwrap());
}

#[test]
fn uncovered_input_is_rejected() {
    let m = GroupModel::lattice(1);
    let a = ConeSet::pullback(vec![vec![1]], Region::Pos);
    let b = ConeSet::pullback(vec![vec![1]], Region::Neg);
    // The identity is adjoined, so this is a cover; drop 1 and -1 instead.
    assert!(reduce_cover(&m, &a, &b, 4).is_ok());
    let a = ConeSet::pullback(vec![vec![1]], Region::Pos).minus(ConeSet::explicit(ExplicitMode::Include, vec![lat(&[1])]));
    assert!(matches!(reduce_cover(&m, &a, &b, 4), Err(Error::NotACover { .. })));
}

#[test]
fn heisenberg_split_and_refinement() {
    let m = GroupModel::Heisenberg;
    let (a, b) = heisenberg_cover();
    let cover = CoverPair::verify(m.clone(), a, b, 4).unwrap();
    assert!(cover.flags.all_verified(), "{:?}", cover.flags.first_failure());
    assert!(check_coset_saturation(&cover, 4).unwrap().is_verified());

    let x = m.generator(0);
    let split = conjugate_split(&cover, &x, 4).unwrap();
    assert!(!split.already_normal);
    // x⁻¹·yᵗ·x = (0, t, -t), which lies in A exactly when t ≥ 0.
    for t in -3..=3i64 {
        let yt = Element::Heisenberg([0, t, 0]);
        assert_eq!(split.h_a.contains(&m, &yt).unwrap(), t >= 0);
        assert_eq!(split.h_b.contains(&m, &yt).unwrap(), t <= 0);
    }

    let refined = refine_pair(&cover, &x, 4).unwrap();
    assert!(refined.flags.all_verified());
    let y = m.generator(1);
    assert!(refined.a.contains(&m, &y).unwrap());
    assert!(!refined.b.contains(&m, &y).unwrap());
}

#[test]
fn heisenberg_descent_reaches_trivial_kernel() {
    let m = GroupModel::Heisenberg;
    let (a, b) = heisenberg_cover();
    let d = order_witness_from_cover(&m, &a, &b, 4, 8).unwrap();
    assert_eq!(d.descent.step, 1);
    assert_eq!(d.descent.history[0], DescentStep { g: m.generator(0), h: m.generator(1) });
    let DescentOutcome::NormalFound(n) = &d.descent.outcome else { panic!() };
    let ball = Ball::new(&m, 4, DEFAULT_BALL_CAP).unwrap();
    assert_eq!(n.members(&m, &ball).len(), 1);
    assert!(d.report.is_valid());
}

#[test]
fn depth_zero_reports_depth_exceeded() {
    let m = GroupModel::Heisenberg;
    let (a, b) = heisenberg_cover();
    match order_witness_from_cover(&m, &a, &b, 3, 0) {
        Err(Error::DepthExceeded(state)) => {
            assert_eq!(state.step, 0);
            assert_eq!(state.outcome, DescentOutcome::DepthExceeded);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn abelian_descent_is_immediate() {
    let m = GroupModel::lattice(2);
    let b = ConeSet::pullback(vec![vec![1], vec![0]], Region::NonNeg);
    let a = ConeSet::pullback(vec![vec![1], vec![0]], Region::Neg).with_identity();
    let d = order_witness_from_cover(&m, &a, &b, 4, 8).unwrap();
    assert!(d.descent.already_normal());
    let DescentOutcome::NormalFound(n) = &d.descent.outcome else { panic!() };
    assert!(n.contains(&m, &lat(&[0, 5])).unwrap());
}

#[test]
fn identity_only_h_has_nothing_to_split() {
    let m = GroupModel::lattice(1);
    let b = ConeSet::pullback(vec![vec![1]], Region::NonNeg);
    let a = ConeSet::pullback(vec![vec![1]], Region::Neg).with_identity();
    let cover = CoverPair::verify(m.clone(), a, b, 4).unwrap();
    assert!(matches!(conjugate_split(&cover, &lat(&[1]), 4), Err(Error::IdentityOnlyH)));
    assert!(matches!(refine_pair(&cover, &lat(&[1]), 4), Err(Error::NothingToRefine)));
}

#[test]
fn klein_split_detected_but_refinement_not_closed() {
    // H = ⟨b⟩ inside B = {bᵐaⁿ : n ≥ 0}. The pair only covers; A is not closed.
    let m = GroupModel::KleinBottle;
    let b = ConeSet::Coordinates { weights: vec![vec![0, 1]], region: Region::NonNeg };
    let a = b.clone().complement().with_identity();
    let cover = CoverPair::verify(m.clone(), a, b, 4).unwrap();
    assert!(!cover.flags.closed_a.is_verified());
    assert!(matches!(refine_pair(&cover, &m.generator(0), 4), Err(Error::NothingToRefine)));
    // a·bᵏ·a⁻¹ = bᵏa⁻² for odd k, so the odd powers of b land in A.
    let g = m.inv(&m.generator(0)).unwrap();
    let split = conjugate_split(&cover, &g, 4).unwrap();
    assert!(!split.already_normal);
    for k in -3..=3 {
        assert_eq!(split.h_a_ball.contains(&Element::Klein(k, 0)), k % 2 != 0);
    }
    let err = refine_pair(&cover, &g, 4).unwrap_err();
    assert!(matches!(err, Error::ClosureViolation { .. }), "{err:?}");
}

#[test]
fn torsion_generators_obstruct() {
    let q = GroupModel::finite(FiniteGroup::cyclic(4).direct_product(&FiniteGroup::cyclic(2)));
    let r = torsion_obstruction(&q, 8).unwrap();
    assert!(r.obstructed);
    assert_eq!(r.exhaustive_covers, Some(0));
    for s in &r.steps {
        assert_eq!(s.inverse_witness.as_ref(), Some(&q.inv(&s.generator).unwrap()));
    }
    let z = torsion_obstruction(&GroupModel::lattice(1), 8).unwrap();
    assert!(!z.obstructed && z.exhaustive_covers.is_none());
}

#[test]
fn difference_closure_holds_after_reduction() {
    let m = zc2();
    let (a, b) = zc2_split();
    let r = reduce_cover(&m, &a, &b, 6).unwrap();
    assert!(check_difference_closure(&r.cover, 6).unwrap().is_verified());
    assert!(r.cover.b.contains(&m, &lat(&[0, 1])).unwrap());
}
