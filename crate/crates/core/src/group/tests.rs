use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::DEFAULT_BALL_CAP;

/// S₃ as permutations of {0,1,2} in lexicographic order, composed as functions.
fn s3_rows() -> Vec<Vec<usize>> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    perms
        .iter()
        .map(|p| perms.iter().map(|q| index([p[q[0]], p[q[1]], p[q[2]]])).collect())
        .collect()
}

fn s3() -> FiniteGroup {
    FiniteGroup::from_rows(&s3_rows()).unwrap()
}

fn w(s: &str) -> Element {
    let mut word = Word::new();
    for c in s.chars() {
        let l = Letter::new((c.to_ascii_lowercase() as u8 - b'a') as usize, c.is_ascii_uppercase());
        push_reduced(&mut word, l);
    }
    Element::Word(word)
}

#[test]
fn loads_small_tables() {
    let t = FiniteGroup::from_rows(&[vec![0]]).unwrap();
    assert_eq!(t.order(), 1);
    let c2 = FiniteGroup::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
    assert_eq!(c2.inverse_table(), &[0, 1]);
    assert!(matches!(FiniteGroup::from_rows(&[vec![0, 1]]), Err(Error::MalformedTable(_))));
    assert!(matches!(FiniteGroup::from_rows(&[vec![0, 1], vec![1, 2]]), Err(Error::MalformedTable(_))));
}

#[test]
fn broken_associativity_reports_first_triple() {
    let mut rows = s3_rows();
    // Swap two entries in a row, keeping it a Latin row but breaking the law.
    rows[3].swap(4, 5);
    let brute = (0..6)
        .flat_map(|a| (0..6).flat_map(move |b| (0..6).map(move |c| (a, b, c))))
        .find(|&(a, b, c)| rows[rows[a][b]][c] != rows[a][rows[b][c]]);
    match FiniteGroup::from_rows(&rows) {
        Err(Error::NotAGroup { triple, .. }) => assert_eq!(triple, brute),
        other => panic!("{other:?}"),
    }
}

#[test]
fn model_arithmetic_examples() {
    let k = GroupModel::KleinBottle;
    assert_eq!(k.mul(&Element::Klein(1, 1), &Element::Klein(1, 0)).unwrap(), Element::Klein(2, -1));
    let f = GroupModel::Free { rank: 2 };
    assert_eq!(f.mul(&w("aB"), &w("b")).unwrap(), w("a"));
    let z = GroupModel::Lattice { rank: 1, torsion: vec![2] };
    let x = Element::Lattice([3, 1].into_iter().collect());
    assert_eq!(z.inv(&x).unwrap(), Element::Lattice([-3, 1].into_iter().collect()));
    assert!(matches!(z.inv(&Element::Lattice([3, 2].into_iter().collect())), Err(Error::InvalidElement(_))));
    assert!(matches!(f.mul(&w("c"), &w("a")), Err(Error::InvalidElement(_))));
}

#[test]
fn ball_sizes() {
    for m in [GroupModel::Free { rank: 2 }, GroupModel::Heisenberg, GroupModel::KleinBottle, GroupModel::lattice(2)] {
        assert_eq!(Ball::new(&m, 0, DEFAULT_BALL_CAP).unwrap().len(), 1);
    }
    let f = GroupModel::Free { rank: 2 };
    for r in 0..=5u32 {
        let expected = 1 + 4 * (3usize.pow(r) - 1) / 2;
        assert_eq!(Ball::new(&f, r, DEFAULT_BALL_CAP).unwrap().len(), expected);
    }
    let b1: Vec<String> = Ball::new(&f, 1, DEFAULT_BALL_CAP).unwrap().iter().map(|x| alloc::format!("{x}")).collect();
    assert_eq!(b1, ["1", "a", "A", "b", "B"]);
    assert!(matches!(Ball::new(&f, 8, 100), Err(Error::BallTooLarge { cap: 100 })));
}

#[test]
fn finite_ball_exhausts_group() {
    let m = GroupModel::finite(s3());
    let b = Ball::for_checks(&m, 1, DEFAULT_BALL_CAP).unwrap();
    assert_eq!(b.len(), 6);
}

#[test]
fn element_orders() {
    let g = s3();
    assert_eq!(g.element_order(0), (1, 0));
    let c2 = FiniteGroup::cyclic(2);
    assert_eq!(c2.element_order(1).0, 2);
    // Index 3 is the 3-cycle (1 2 0).
    let (n, witness) = g.element_order(3);
    assert_eq!(n, 3);
    assert_eq!(witness, g.mul(3, 3));
    assert_eq!(witness, g.inv(3));
}

#[test]
fn homomorphism_examples() {
    let z = GroupModel::Lattice { rank: 1, torsion: vec![2] };
    let phi = Homomorphism::to_lattice(z, &[vec![1], vec![0]]).unwrap();
    let x = Element::Lattice([5, 1].into_iter().collect());
    assert_eq!(phi.apply(&x).unwrap(), Element::Lattice([5].into_iter().collect()));
    let f = GroupModel::Free { rank: 2 };
    let psi = Homomorphism::to_lattice(f.clone(), &[vec![1], vec![0]]).unwrap();
    assert_eq!(psi.apply(&w("abAB")).unwrap(), Element::Lattice([0].into_iter().collect()));
    assert_eq!(psi.apply(&f.identity()).unwrap(), Element::Lattice([0].into_iter().collect()));
    // b ↦ 1 is not defined on the torsion factor.
    let bad = GroupModel::Lattice { rank: 1, torsion: vec![2] };
    assert!(matches!(Homomorphism::to_lattice(bad, &[vec![0], vec![1]]), Err(Error::NotAHomomorphism(_))));
    assert!(matches!(Homomorphism::to_lattice(GroupModel::KleinBottle, &[vec![1], vec![0]]), Err(Error::NotAHomomorphism(_))));
}

#[test]
fn normality_and_quotients() {
    let g = s3();
    let transposition = g.subgroup_generated([1]);
    assert!(!g.is_normal(&transposition).unwrap());
    assert!(matches!(g.quotient(&transposition), Err(Error::NotNormal { .. })));
    let a3 = g.subgroup_generated([3]);
    assert!(g.is_normal(&a3).unwrap());
    assert!(matches!(g.is_normal(&crate::BitSet::from_indices(6, [0, 1, 3])), Err(Error::NotASubgroup)));

    let c4 = FiniteGroup::cyclic(4);
    let (q, proj) = c4.quotient(&c4.subgroup_generated([2])).unwrap();
    assert_eq!(q, FiniteGroup::cyclic(2));
    assert_eq!(proj, vec![0, 1, 0, 1]);
    let v = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
    for s in 0..4 {
        assert!(v.is_normal(&v.subgroup_generated([s])).unwrap());
    }
}

#[test]
fn word_round_trips() {
    for m in [GroupModel::Heisenberg, GroupModel::KleinBottle, GroupModel::finite(s3()), GroupModel::lattice(2)] {
        for x in Ball::new(&m, 3, DEFAULT_BALL_CAP).unwrap().iter() {
            let word = m.word_of(x).unwrap();
            assert_eq!(&m.eval_word(&word).unwrap(), x, "{}", m.name());
        }
    }
}

fn models() -> Vec<GroupModel> {
    vec![
        GroupModel::Lattice { rank: 1, torsion: vec![2] },
        GroupModel::lattice(2),
        GroupModel::Free { rank: 2 },
        GroupModel::Heisenberg,
        GroupModel::KleinBottle,
        GroupModel::finite(s3()),
    ]
}

proptest! {
    #[test]
    fn group_axioms_on_balls(mi in 0usize..6, i in 0usize..400, j in 0usize..400, k in 0usize..400) {
        let m = &models()[mi];
        let ball = Ball::new(m, 3, DEFAULT_BALL_CAP).unwrap();
        let e = ball.elements();
        let (x, y, z) = (&e[i % e.len()], &e[j % e.len()], &e[k % e.len()]);
        let xy_z = m.mul(&m.mul(x, y).unwrap(), z).unwrap();
        let x_yz = m.mul(x, &m.mul(y, z).unwrap()).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        let xi = m.inv(x).unwrap();
        prop_assert!(m.is_identity(&m.mul(x, &xi).unwrap()));
        prop_assert_eq!(&m.inv(&xi).unwrap(), x);
    }

    #[test]
    fn hom_is_multiplicative(i in 0usize..400, j in 0usize..400, a in -3i64..=3, b in -3i64..=3) {
        let m = GroupModel::Free { rank: 2 };
        let phi = Homomorphism::to_lattice(m.clone(), &[vec![a, 1], vec![b, -2]]).unwrap();
        let ball = Ball::new(&m, 3, DEFAULT_BALL_CAP).unwrap();
        let e = ball.elements();
        let (x, y) = (&e[i % e.len()], &e[j % e.len()]);
        let lhs = phi.apply(&m.mul(x, y).unwrap()).unwrap();
        let t = phi.target();
        let rhs = t.mul(&phi.apply(x).unwrap(), &phi.apply(y).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs, phi.apply_by_substitution(&m.mul(x, y).unwrap()).unwrap());
    }
}

#[test]
fn balls_are_nested() {
    for m in models() {
        let b = Ball::new(&m, 4, DEFAULT_BALL_CAP).unwrap();
        let small = Ball::new(&m, 3, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(b.within(3), small.elements());
    }
}
