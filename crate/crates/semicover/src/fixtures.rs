//! Bundled groups, presentations, cones and order witnesses.

use semicover_core::cone::Region;
use semicover_core::order::cone_from_quotient_order;
use semicover_core::{ConeSet, FiniteGroup, GroupModel, Homomorphism, LeftOrderWitness};

use crate::formats::{parse_presentation, parse_table, Presentation};

/// Cayley tables, ordered by group order.
pub const GROUPS: &[(&str, &str)] = &[
    ("trivial", include_str!("../fixtures/groups/trivial.table")),
    ("C2", include_str!("../fixtures/groups/C2.table")),
    ("C3", include_str!("../fixtures/groups/C3.table")),
    ("C4", include_str!("../fixtures/groups/C4.table")),
    ("V4", include_str!("../fixtures/groups/V4.table")),
    ("C5", include_str!("../fixtures/groups/C5.table")),
    ("C6", include_str!("../fixtures/groups/C6.table")),
    ("S3", include_str!("../fixtures/groups/S3.table")),
    ("C7", include_str!("../fixtures/groups/C7.table")),
    ("C8", include_str!("../fixtures/groups/C8.table")),
    ("C4xC2", include_str!("../fixtures/groups/C4xC2.table")),
    ("C2xC2xC2", include_str!("../fixtures/groups/C2xC2xC2.table")),
    ("D4", include_str!("../fixtures/groups/D4.table")),
    ("Q8", include_str!("../fixtures/groups/Q8.table")),
    ("C9", include_str!("../fixtures/groups/C9.table")),
    ("C3xC3", include_str!("../fixtures/groups/C3xC3.table")),
    ("C10", include_str!("../fixtures/groups/C10.table")),
    ("D5", include_str!("../fixtures/groups/D5.table")),
    ("C11", include_str!("../fixtures/groups/C11.table")),
    ("C12", include_str!("../fixtures/groups/C12.table")),
    ("C6xC2", include_str!("../fixtures/groups/C6xC2.table")),
    ("D6", include_str!("../fixtures/groups/D6.table")),
    ("A4", include_str!("../fixtures/groups/A4.table")),
    ("Dic3", include_str!("../fixtures/groups/Dic3.table")),
];

pub const PRESENTATIONS: &[(&str, &str)] = &[
    ("klein_bottle", include_str!("../fixtures/presentations/klein_bottle.fp")),
    ("quaternion", include_str!("../fixtures/presentations/quaternion.fp")),
    ("free2", include_str!("../fixtures/presentations/free2.fp")),
    ("heisenberg", include_str!("../fixtures/presentations/heisenberg.fp")),
];

pub fn group(name: &str) -> Option<FiniteGroup> {
    GROUPS
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, text)| parse_table(text).expect("bundled table is valid"))
}

/// Every bundled group, by name.
pub fn groups() -> Vec<(&'static str, FiniteGroup)> {
    GROUPS.iter().map(|(n, t)| (*n, parse_table(t).expect("bundled table is valid"))).collect()
}

pub fn presentation(name: &str) -> Option<Presentation> {
    PRESENTATIONS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_presentation(text).expect("bundled presentation is valid"))
}

fn lex_nonneg(rank: usize) -> ConeSet {
    let rows = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
    ConeSet::pullback(rows, Region::NonNeg)
}

/// An order pulled back from the lexicographic order on `ℤʳ`.
pub fn quotient_witness(model: &GroupModel, images: &[Vec<i64>]) -> LeftOrderWitness {
    let hom = Homomorphism::to_lattice(model.clone(), images).expect("bundled homomorphism is valid");
    let rank = images.first().map_or(0, Vec::len);
    cone_from_quotient_order(model, &hom, &lex_nonneg(rank), 2).expect("bundled order is valid")
}

/// Bundled order witnesses on the infinite models.
pub fn witnesses() -> Vec<(&'static str, LeftOrderWitness)> {
    let zc2 = GroupModel::Lattice { rank: 1, torsion: vec![2] };
    let z = GroupModel::lattice(1);
    let z2 = GroupModel::lattice(2);
    let free = GroupModel::Free { rank: 2 };
    vec![
        ("z^1xC2/projection", quotient_witness(&zc2, &[vec![1], vec![0]])),
        ("z/identity", quotient_witness(&z, &[vec![1]])),
        ("z^2/first", quotient_witness(&z2, &[vec![1], vec![0]])),
        ("z^2/second", quotient_witness(&z2, &[vec![0], vec![1]])),
        ("z^2/lex", quotient_witness(&z2, &[vec![1, 0], vec![0, 1]])),
        ("heisenberg/xy", quotient_witness(&GroupModel::Heisenberg, &[vec![1, 0], vec![0, 1]])),
        ("klein_bottle/b", quotient_witness(&GroupModel::KleinBottle, &[vec![0], vec![1]])),
        ("free:2/a", quotient_witness(&free, &[vec![1], vec![0]])),
        ("free:2/ab", quotient_witness(&free, &[vec![1, 0], vec![0, 1]])),
    ]
}
