use proptest::prelude::*;
use semicover_core::cone::{self, Region};
use semicover_core::cover::{order_witness_from_cover, reduce_cover, refine_pair};
use semicover_core::order::{cone_from_quotient_order, lex_combine, pullback_cover};
use semicover_core::{Ball, ConeSet, CoverPair, Element, GroupModel, Homomorphism, LeftOrderWitness};

const RADIUS: u32 = 3;

fn model(pick: usize) -> GroupModel {
    match pick % 4 {
        0 => GroupModel::lattice(2),
        1 => GroupModel::Heisenberg,
        2 => GroupModel::KleinBottle,
        _ => GroupModel::Free { rank: 2 },
    }
}

fn lex_nonneg(rank: usize) -> ConeSet {
    ConeSet::pullback((0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect(), Region::NonNeg)
}

/// Generator images into `ℤʳ`; `a ↦ 0` on the Klein bottle group.
fn images(m: &GroupModel, raw: &[[i64; 2]], rank: usize) -> Vec<Vec<i64>> {
    (0..m.num_generators())
        .map(|g| {
            if matches!(m, GroupModel::KleinBottle) && g == 0 {
                vec![0; rank]
            } else {
                raw[g][..rank].to_vec()
            }
        })
        .collect()
}

fn witness(m: &GroupModel, imgs: &[Vec<i64>]) -> Option<LeftOrderWitness> {
    let hom = Homomorphism::to_lattice(m.clone(), imgs).ok()?;
    cone_from_quotient_order(m, &hom, &lex_nonneg(imgs[0].len()), RADIUS).ok()
}

fn same(m: &GroupModel, s: &ConeSet, t: &ConeSet, ball: &Ball) -> bool {
    cone::equal_on_ball(m, s, t, ball).unwrap().is_verified()
}

fn nonzero(imgs: &[Vec<i64>]) -> bool {
    imgs.iter().flatten().any(|&x| x != 0)
}

fn raw_images() -> impl Strategy<Value = Vec<[i64; 2]>> {
    prop::collection::vec(prop::array::uniform2(-2i64..=2), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pullback_covers_verify(pick in 0usize..4, rank in 1usize..=2, raw in raw_images()) {
        let m = model(pick);
        let imgs = images(&m, &raw, rank);
        prop_assume!(nonzero(&imgs));
        let hom = Homomorphism::to_lattice(m.clone(), &imgs).unwrap();
        let c = pullback_cover(&m, &hom, &lex_nonneg(rank), RADIUS).unwrap();
        prop_assert!(c.flags.all_verified(), "{:?}", c.flags.first_failure());
    }

    #[test]
    fn reduction_is_idempotent(pick in 0usize..4, raw in raw_images(), swap in any::<bool>()) {
        let m = model(pick);
        let imgs = images(&m, &raw, 1);
        prop_assume!(nonzero(&imgs));
        let p = ConeSet::pullback(imgs.clone(), Region::NonNeg);
        let q = ConeSet::pullback(imgs, Region::NonPos);
        let (a, b) = if swap { (q, p) } else { (p, q) };
        let once = reduce_cover(&m, &a, &b, RADIUS).unwrap().cover;
        let twice = reduce_cover(&m, &once.a, &once.b, RADIUS).unwrap().cover;
        let ball = Ball::for_checks(&m, RADIUS, 1_000_000).unwrap();
        prop_assert!(same(&m, &once.a, &twice.a, &ball) && same(&m, &once.b, &twice.b, &ball));
    }

    #[test]
    fn round_trips_are_extensional(pick in 0usize..4, rank in 1usize..=2, raw in raw_images()) {
        let m = model(pick);
        let imgs = images(&m, &raw, rank);
        prop_assume!(nonzero(&imgs));
        let w = witness(&m, &imgs).unwrap();
        let ball = Ball::for_checks(&m, RADIUS, 1_000_000).unwrap();
        let c = w.cover(RADIUS).unwrap();
        let d = order_witness_from_cover(&m, &c.a, &c.b, RADIUS, 8).unwrap();
        prop_assert!(same(&m, d.witness.kernel(), w.kernel(), &ball));
        prop_assert!(same(&m, d.witness.cone(), w.cone(), &ball));
        let back = d.witness.cover(RADIUS).unwrap();
        prop_assert!(same(&m, &back.a, &c.a, &ball) && same(&m, &back.b, &c.b, &ball));
        // A subgroup inside A would contain some x ≠ 1 with x⁻¹.
        let derived = &d.reduction.cover;
        let pair = ball.iter().find(|x| {
            !m.is_identity(x)
                && cone::contains(&m, &derived.a, x).unwrap()
                && cone::contains(&m, &derived.a, &m.inv(x).unwrap()).unwrap()
        });
        prop_assert!(pair.is_none(), "{:?}", pair);
    }

    #[test]
    fn lex_combine_on_first_kernel_follows_second(raw in prop::collection::vec(prop::array::uniform2(-2i64..=2), 3)) {
        let m = GroupModel::lattice(3);
        let w1 = witness(&m, &[vec![1], vec![0], vec![0]]).unwrap();
        let imgs: Vec<Vec<i64>> = raw.iter().map(|r| r.to_vec()).collect();
        prop_assume!(imgs[1..].iter().flatten().any(|&x| x != 0));
        let w2 = witness(&m, &imgs).unwrap();
        let lex = lex_combine(&w1, &w2).unwrap();
        let ball = Ball::for_checks(&m, RADIUS, 1_000_000).unwrap();
        let kernel: Vec<&Element> =
            ball.iter().filter(|x| cone::contains(&m, w1.kernel(), x).unwrap()).collect();
        for x in &kernel {
            for y in &kernel {
                prop_assert_eq!(lex.compare(x, y).unwrap(), w2.compare(x, y).unwrap());
            }
        }
    }
}

#[test]
fn refinement_moves_the_split_across() {
    let m = GroupModel::Heisenberg;
    let coord = |w: [i64; 3], r| ConeSet::Coordinates { weights: vec![w.to_vec()], region: r };
    let b = coord([1, 0, 0], Region::Pos).or(coord([1, 0, 0], Region::Zero).and(coord([0, 0, 1], Region::NonNeg)));
    let a = b.clone().complement().with_identity();
    let cover = CoverPair::verify(m.clone(), a, b, 4).unwrap();
    let refined = refine_pair(&cover, &m.generator(0), 4).unwrap();
    let ball = Ball::for_checks(&m, 4, 1_000_000).unwrap();
    let count = |s: &ConeSet| ball.iter().filter(|x| cone::contains(&m, s, x).unwrap()).count();
    assert!(count(&refined.b) < count(&cover.b));
    assert!(count(&refined.a) > count(&cover.a));
    assert!(cone::subset_on_ball(&m, &cover.a, &refined.a, &ball).unwrap().is_verified());
    assert!(cone::subset_on_ball(&m, &refined.b, &cover.b, &ball).unwrap().is_verified());
}
