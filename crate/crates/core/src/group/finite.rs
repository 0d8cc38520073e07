use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{push_reduced, Letter, Word};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A group given by its Cayley table. Index 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    words: Vec<Word>,
}

impl FiniteGroup {
    /// Validates a Cayley table given row by row.
    ///
    /// Checks, in order: dimensions and index range, that row and column 0
    /// are identity rows, associativity (the lexicographically first failing
    /// triple is reported), and unique two-sided inverses.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::MalformedTable(format!("row {i}: index {bad} out of range")));
            }
        }
        let table: Vec<usize> = rows.iter().flatten().copied().collect();
        let at = |i: usize, j: usize| table[i * n + j];
        for i in 0..n {
            if at(0, i) != i || at(i, 0) != i {
                return Err(Error::NotAGroup {
                    reason: format!("index 0 is not an identity at {i}"),
                    triple: None,
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = at(i, j);
                for k in 0..n {
                    if at(ij, k) != at(i, at(j, k)) {
                        return Err(Error::NotAGroup {
                            reason: format!("({i}*{j})*{k} != {i}*({j}*{k})"),
                            triple: Some((i, j, k)),
                        });
                    }
                }
            }
        }
        let mut inverse = vec![0; n];
        for (i, slot) in inverse.iter_mut().enumerate() {
            let right: Vec<usize> = (0..n).filter(|&j| at(i, j) == 0).collect();
            match right.as_slice() {
                [j] if at(*j, i) == 0 => *slot = *j,
                _ => {
                    return Err(Error::NotAGroup {
                        reason: format!("element {i} has no unique two-sided inverse"),
                        triple: None,
                    })
                }
            }
        }
        let mut g = FiniteGroup { order: n, table, inverse, generators: Vec::new(), words: Vec::new() };
        g.generators = g.greedy_generators();
        g.words = g.bfs_words();
        Ok(g)
    }

    /// The cyclic group of order `n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_rows(&rows).expect("cyclic table is a group")
    }

    /// Direct product; element `(i, j)` has index `i * |other| + j`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let (n, m) = (self.order, other.order);
        let rows: Vec<Vec<usize>> = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        Self::from_rows(&rows).expect("product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order + j]
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn inverse_table(&self) -> &[usize] {
        &self.inverse
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.table.chunks(self.order)
    }

    /// A generating set chosen greedily in index order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// A shortest word over [`generators`](Self::generators) for element `i`.
    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// Least `n ≥ 1` with `xⁿ = 1`, together with `xⁿ⁻¹`, which is `x⁻¹`.
    pub fn element_order(&self, x: usize) -> (usize, usize) {
        let mut power = x;
        let mut prev = 0;
        let mut n = 1;
        while power != 0 {
            prev = power;
            power = self.mul(power, x);
            n += 1;
        }
        (n, prev)
    }

    pub fn cyclic_subgroup(&self, x: usize) -> BitSet {
        let mut s = BitSet::new(self.order);
        let mut p = 0;
        loop {
            s.insert(p);
            p = self.mul(p, x);
            if p == 0 {
                return s;
            }
        }
    }

    /// Closure of `seed` under multiplication (no identity added).
    pub fn semigroup_closure(&self, seed: &BitSet) -> BitSet {
        let mut s = seed.clone();
        let mut members: Vec<usize> = s.to_vec();
        let mut start = 0;
        while start < members.len() {
            let end = members.len();
            for a in start..end {
                for b in 0..end {
                    let (x, y) = (members[a], members[b]);
                    for p in [self.mul(x, y), self.mul(y, x)] {
                        if s.insert(p) {
                            members.push(p);
                        }
                    }
                }
            }
            start = end;
        }
        s
    }

    /// The subgroup generated by `elements`.
    pub fn subgroup_generated(&self, elements: impl IntoIterator<Item = usize>) -> BitSet {
        let mut seed = BitSet::new(self.order);
        seed.insert(0);
        for e in elements {
            seed.insert(e);
        }
        // In a finite group the closed subsemigroup containing 1 is a subgroup.
        self.semigroup_closure(&seed)
    }

    pub fn is_closed(&self, s: &BitSet) -> bool {
        s.iter().all(|x| s.iter().all(|y| s.contains(self.mul(x, y))))
    }

    pub fn is_subgroup(&self, s: &BitSet) -> bool {
        s.contains(0) && s.iter().all(|x| s.contains(self.inv(x))) && self.is_closed(s)
    }

    /// Whether `g·H·g⁻¹ = H` for every `g`.
    pub fn is_normal(&self, subgroup: &BitSet) -> Result<bool> {
        Ok(self.normality_witness(subgroup)?.is_none())
    }

    /// First `(g, h)` in index order with `g·h·g⁻¹ ∉ H`.
    pub fn normality_witness(&self, subgroup: &BitSet) -> Result<Option<(usize, usize)>> {
        if subgroup.len() != self.order || !self.is_subgroup(subgroup) {
            return Err(Error::NotASubgroup);
        }
        for g in 0..self.order {
            for h in subgroup.iter() {
                if !subgroup.contains(self.mul(self.mul(g, h), self.inv(g))) {
                    return Ok(Some((g, h)));
                }
            }
        }
        Ok(None)
    }

    /// The quotient by a normal subgroup, with the projection as an index map.
    ///
    /// Cosets are numbered by their least element, so the identity coset is 0.
    pub fn quotient(&self, normal: &BitSet) -> Result<(FiniteGroup, Vec<usize>)> {
        if let Some((g, h)) = self.normality_witness(normal)? {
            return Err(Error::NotNormal {
                element: Box::new(super::Element::Finite(h)),
                by: Box::new(super::Element::Finite(g)),
            });
        }
        let mut projection = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if projection[x] != usize::MAX {
                continue;
            }
            let coset = reps.len();
            reps.push(x);
            for h in normal.iter() {
                projection[self.mul(x, h)] = coset;
            }
        }
        let rows: Vec<Vec<usize>> = reps
            .iter()
            .map(|&x| reps.iter().map(|&y| projection[self.mul(x, y)]).collect())
            .collect();
        Ok((FiniteGroup::from_rows(&rows)?, projection))
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.subgroup_generated([]);
        for x in 1..self.order {
            if !span.contains(x) {
                gens.push(x);
                span = self.subgroup_generated(gens.iter().copied());
            }
        }
        gens
    }

    fn bfs_words(&self) -> Vec<Word> {
        let mut words: Vec<Option<Word>> = vec![None; self.order];
        words[0] = Some(Word::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in self.generators.iter().enumerate() {
                for (y, letter) in [(self.mul(x, g), Letter::new(k, false)), (self.mul(x, self.inv(g)), Letter::new(k, true))] {
                    if words[y].is_none() {
                        let mut w = words[x].clone().unwrap();
                        push_reduced(&mut w, letter);
                        words[y] = Some(w);
                        queue.push_back(y);
                    }
                }
            }
        }
        words.into_iter().map(|w| w.expect("generators span the group")).collect()
    }
}
