//! Covering numbers of finite groups and the subsemigroup census.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Largest order accepted for subgroup enumeration.
pub const SUBGROUP_CAP: usize = 24;
/// Largest order for which the subsemigroup census is exhaustive.
pub const CENSUS_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    MaximalSetCover,
    ExhaustiveSemigroup,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::MaximalSetCover => "maximal_set_cover",
            Method::ExhaustiveSemigroup => "exhaustive_semigroup",
        }
    }
}

/// Result of the census recomputation of `σ_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub method: Method,
    pub sigma: Option<usize>,
    pub witness_cover: Vec<BitSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringNumberResult {
    pub group_id: String,
    /// `None` when the group is cyclic.
    pub sigma_g: Option<usize>,
    pub sigma_s: Option<usize>,
    pub witness_cover: Vec<BitSet>,
    pub method: Method,
    pub cross_check: Option<CrossCheck>,
}

impl CoveringNumberResult {
    pub fn named(mut self, id: impl Into<String>) -> Self {
        self.group_id = id.into();
        self
    }

    /// The census value agrees with the set-cover value, when computed.
    pub fn methods_agree(&self) -> Option<bool> {
        self.cross_check.as_ref().map(|c| c.sigma == self.sigma_s)
    }
}

fn check_cap(group: &FiniteGroup, cap: usize) -> Result<()> {
    if group.order() > cap {
        return Err(Error::GroupTooLarge { order: group.order(), cap });
    }
    Ok(())
}

fn by_elements(a: &BitSet, b: &BitSet) -> core::cmp::Ordering {
    a.count().cmp(&b.count()).then_with(|| a.to_vec().cmp(&b.to_vec()))
}

/// Every subgroup, ordered by size and then by element list.
pub fn all_subgroups(group: &FiniteGroup, cap: usize) -> Result<Vec<BitSet>> {
    check_cap(group, cap)?;
    let mut seen = BTreeSet::new();
    let trivial = group.subgroup_generated([]);
    seen.insert(trivial.clone());
    let mut queue = alloc::vec![trivial];
    while let Some(s) = queue.pop() {
        for x in 0..group.order() {
            if s.contains(x) {
                continue;
            }
            let t = group.subgroup_generated(s.iter().chain([x]));
            if seen.insert(t.clone()) {
                queue.push(t);
            }
        }
    }
    let mut out: Vec<BitSet> = seen.into_iter().collect();
    out.sort_by(by_elements);
    Ok(out)
}

/// Proper subgroups contained in no larger proper subgroup.
pub fn maximal_subgroups(group: &FiniteGroup, cap: usize) -> Result<Vec<BitSet>> {
    let proper: Vec<BitSet> = all_subgroups(group, cap)?.into_iter().filter(|s| !s.is_full()).collect();
    Ok(maximal_among(&proper))
}

fn maximal_among(sets: &[BitSet]) -> Vec<BitSet> {
    let mut out: Vec<BitSet> = sets
        .iter()
        .filter(|s| !sets.iter().any(|t| t != *s && s.is_subset(t)))
        .cloned()
        .collect();
    out.sort_by_key(BitSet::to_vec);
    out
}

/// Smallest number of `sets` whose union is everything, with the
/// lexicographically first such choice (by index into `sets`).
fn min_cover(universe: usize, sets: &[BitSet]) -> Option<Vec<usize>> {
    fn search(sets: &[BitSet], suffix: &[BitSet], k: usize, start: usize, covered: &BitSet, chosen: &mut Vec<usize>) -> bool {
        if covered.is_full() {
            return true;
        }
        if chosen.len() == k || start == sets.len() {
            return false;
        }
        // Bound: even all remaining sets together cannot finish the cover.
        if !covered.union(&suffix[start]).is_full() {
            return false;
        }
        for i in start..sets.len() {
            chosen.push(i);
            if search(sets, suffix, k, i + 1, &covered.union(&sets[i]), chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut suffix = alloc::vec![BitSet::new(universe); sets.len() + 1];
    for i in (0..sets.len()).rev() {
        suffix[i] = suffix[i + 1].union(&sets[i]);
    }
    if !suffix[0].is_full() {
        return None;
    }
    (1..=sets.len()).find_map(|k| {
        let mut chosen = Vec::new();
        search(sets, &suffix, k, 0, &BitSet::new(universe), &mut chosen).then_some(chosen)
    })
}

/// Whether a single element generates the whole group.
pub fn is_cyclic(group: &FiniteGroup) -> bool {
    (0..group.order()).any(|x| group.element_order(x).0 == group.order())
}

/// The least number of proper subgroups whose union is the group.
///
/// Only maximal subgroups are searched, since any cover can be enlarged to
/// one by maximal subgroups of the same size. Cyclic groups have no such
/// cover and report `None`.
pub fn sigma_g(group: &FiniteGroup, cap: usize) -> Result<CoveringNumberResult> {
    check_cap(group, cap)?;
    let (sigma_g, witness_cover) = if is_cyclic(group) {
        (None, Vec::new())
    } else {
        let maximal = maximal_subgroups(group, cap)?;
        let chosen = min_cover(group.order(), &maximal).expect("non-cyclic groups are covered by cyclic subgroups");
        (Some(chosen.len()), chosen.into_iter().map(|i| maximal[i].clone()).collect())
    };
    Ok(CoveringNumberResult {
        group_id: String::new(),
        sigma_g,
        sigma_s: sigma_g,
        witness_cover,
        method: Method::MaximalSetCover,
        cross_check: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusMode {
    /// Closures of every subset.
    Exhaustive,
    /// Closures of every subset of at most two elements.
    Generated,
}

/// Multiplicatively closed subsets, including the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub mode: CensusMode,
    pub closed: Vec<BitSet>,
}

impl Census {
    /// Closed subsets missing an inverse or the identity.
    pub fn non_subgroups<'a>(&'a self, group: &'a FiniteGroup) -> impl Iterator<Item = &'a BitSet> + 'a {
        self.closed.iter().filter(move |s| !s.is_empty() && !group.is_subgroup(s))
    }
}

/// Enumerates closed subsets. Exhaustive up to `cap`; above it, the
/// generated mode is used unless `exhaustive` is set, which is an error.
pub fn subsemigroup_census(group: &FiniteGroup, cap: usize, exhaustive: bool) -> Result<Census> {
    let n = group.order();
    let mut seen = BTreeSet::new();
    let mode = if n <= cap && n < 64 {
        // Closures of all subsets. A subset whose closure was already
        // produced from a smaller seed adds nothing new, but checking that
        // costs as much as closing, so every seed is closed once.
        for mask in 0..(1u64 << n) {
            seen.insert(group.semigroup_closure(&BitSet::from_mask(n, mask)));
        }
        CensusMode::Exhaustive
    } else if exhaustive {
        return Err(Error::GroupTooLarge { order: n, cap });
    } else {
        seen.insert(BitSet::new(n));
        for x in 0..n {
            for y in x..n {
                seen.insert(group.semigroup_closure(&BitSet::from_indices(n, [x, y])));
            }
        }
        CensusMode::Generated
    };
    let mut closed: Vec<BitSet> = seen.into_iter().collect();
    closed.sort_by(by_elements);
    Ok(Census { mode, closed })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsemigroupReport {
    pub census: Census,
    /// First closed nonempty subset that is not a subgroup.
    pub counterexample: Option<BitSet>,
}

impl SubsemigroupReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks that every nonempty closed subset is a subgroup.
pub fn subsemigroups_are_subgroups(group: &FiniteGroup, cap: usize, exhaustive: bool) -> Result<SubsemigroupReport> {
    let census = subsemigroup_census(group, cap, exhaustive)?;
    let counterexample = census.non_subgroups(group).next().cloned();
    Ok(SubsemigroupReport { census, counterexample })
}

/// `σ_g` together with, when `exhaustive`, the least number of proper closed
/// subsets covering the group computed from the census.
pub fn sigma_s_finite(group: &FiniteGroup, cap: usize, exhaustive: bool, census_cap: usize) -> Result<CoveringNumberResult> {
    let mut result = sigma_g(group, cap)?;
    if exhaustive {
        let census = subsemigroup_census(group, census_cap, true)?;
        let proper: Vec<BitSet> = census.closed.into_iter().filter(|s| !s.is_empty() && !s.is_full()).collect();
        let maximal = maximal_among(&proper);
        let (sigma, witness_cover) = match min_cover(group.order(), &maximal) {
            Some(chosen) => (Some(chosen.len()), chosen.into_iter().map(|i| maximal[i].clone()).collect()),
            None => (None, Vec::new()),
        };
        result.cross_check = Some(CrossCheck { method: Method::ExhaustiveSemigroup, sigma, witness_cover });
    }
    Ok(result)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScorzaCheck {
    pub sigma_is_three: bool,
    pub klein_four_quotient: bool,
    /// A normal subgroup with quotient `C₂ × C₂`, if any.
    pub kernel: Option<BitSet>,
}

impl ScorzaCheck {
    pub fn agrees(&self) -> bool {
        self.sigma_is_three == self.klein_four_quotient
    }
}

/// Compares `σ_g = 3` with the existence of a Klein-four quotient, each
/// computed independently.
pub fn scorza_check(group: &FiniteGroup, cap: usize) -> Result<ScorzaCheck> {
    let sigma_is_three = sigma_g(group, cap)?.sigma_g == Some(3);
    let n = group.order();
    let mut kernel = None;
    for s in all_subgroups(group, cap)? {
        if s.count() * 4 != n || !group.is_normal(&s)? {
            continue;
        }
        if (0..n).all(|g| s.contains(group.mul(g, g))) {
            kernel = Some(s);
            break;
        }
    }
    Ok(ScorzaCheck { sigma_is_three, klein_four_quotient: kernel.is_some(), kernel })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCoverReport {
    pub census_size: usize,
    pub pairs_checked: usize,
    /// Pairs of proper closed subsets whose union is the group.
    pub covers: Vec<(BitSet, BitSet)>,
}

/// Searches all pairs of proper closed subsets for one covering the group.
pub fn two_cover_search(group: &FiniteGroup, cap: usize) -> Result<TwoCoverReport> {
    let census = subsemigroup_census(group, cap, true)?;
    let proper: Vec<&BitSet> = census.closed.iter().filter(|s| !s.is_full()).collect();
    let mut covers = Vec::new();
    let mut pairs_checked = 0;
    for (i, a) in proper.iter().enumerate() {
        for b in &proper[i..] {
            pairs_checked += 1;
            if a.union(b).is_full() {
                covers.push(((*a).clone(), (*b).clone()));
            }
        }
    }
    Ok(TwoCoverReport { census_size: census.closed.len(), pairs_checked, covers })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> FiniteGroup {
        FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2))
    }

    #[test]
    fn cover_search_prefers_lexicographic_choice() {
        let sets = [BitSet::from_indices(3, [0, 1]), BitSet::from_indices(3, [2]), BitSet::from_indices(3, [0, 1, 2])];
        assert_eq!(min_cover(3, &sets), Some(alloc::vec![2]));
        assert_eq!(min_cover(3, &sets[..2]), Some(alloc::vec![0, 1]));
        assert_eq!(min_cover(3, &sets[..1]), None);
    }

    #[test]
    fn klein_four_numbers() {
        let g = klein();
        assert_eq!(maximal_subgroups(&g, SUBGROUP_CAP).unwrap().len(), 3);
        let r = sigma_s_finite(&g, SUBGROUP_CAP, true, CENSUS_CAP).unwrap();
        assert_eq!(r.sigma_g, Some(3));
        assert_eq!(r.methods_agree(), Some(true));
        let census = subsemigroup_census(&g, CENSUS_CAP, true).unwrap();
        assert_eq!(census.closed.iter().filter(|s| !s.is_empty()).count(), 5);
    }

    #[test]
    fn cyclic_is_undefined() {
        for n in 1..=CENSUS_CAP {
            let r = sigma_s_finite(&FiniteGroup::cyclic(n), SUBGROUP_CAP, true, CENSUS_CAP).unwrap();
            assert_eq!((r.sigma_g, r.cross_check.unwrap().sigma), (None, None));
        }
    }

    #[test]
    fn caps_are_enforced() {
        let big = FiniteGroup::cyclic(25);
        assert!(matches!(sigma_g(&big, SUBGROUP_CAP), Err(Error::GroupTooLarge { order: 25, cap: 24 })));
        let nine = FiniteGroup::cyclic(9);
        assert!(matches!(two_cover_search(&nine, CENSUS_CAP), Err(Error::GroupTooLarge { .. })));
        assert_eq!(subsemigroup_census(&nine, CENSUS_CAP, false).unwrap().mode, CensusMode::Generated);
    }
}
