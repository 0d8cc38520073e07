use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Element, GroupModel, Letter};
use crate::error::{Error, Result};

/// The ball of a given radius in the Cayley graph, in BFS order.
///
/// Neighbours of `x` are visited as `x·g₀, x·g₀⁻¹, x·g₁, x·g₁⁻¹, …`, so the
/// enumeration order is fully determined by the generator order.
#[derive(Clone, Debug)]
pub struct Ball {
    radius: u32,
    elements: Vec<Element>,
    index: BTreeMap<Element, usize>,
    /// `layer_ends[r]` is the number of elements at distance ≤ r.
    layer_ends: Vec<usize>,
}

impl Ball {
    pub fn new(model: &GroupModel, radius: u32, cap: usize) -> Result<Self> {
        Self::grow(model, Some(radius), cap)
    }

    /// The ball used for verification: the whole group for finite models,
    /// the ball of `radius` otherwise.
    pub fn for_checks(model: &GroupModel, radius: u32, cap: usize) -> Result<Self> {
        if model.is_torsion() {
            Self::grow(model, None, cap)
        } else {
            Self::grow(model, Some(radius), cap)
        }
    }

    fn grow(model: &GroupModel, radius: Option<u32>, cap: usize) -> Result<Self> {
        let steps: Vec<Element> = (0..model.num_generators())
            .flat_map(|i| [Letter::new(i, false), Letter::new(i, true)])
            .map(|l| model.letter(l))
            .collect();
        let id = model.identity();
        let mut elements = alloc::vec![id.clone()];
        let mut index = BTreeMap::from([(id, 0)]);
        let mut layer_ends = alloc::vec![1];
        let mut r = 0;
        while radius.is_none_or(|max| r < max) {
            let start = if r == 0 { 0 } else { layer_ends[r as usize - 1] };
            let end = layer_ends[r as usize];
            for i in start..end {
                for s in &steps {
                    let y = model.mul_unchecked(&elements[i], s);
                    if !index.contains_key(&y) {
                        if elements.len() >= cap {
                            return Err(Error::BallTooLarge { cap });
                        }
                        index.insert(y.clone(), elements.len());
                        elements.push(y);
                    }
                }
            }
            if elements.len() == end {
                // Finite group exhausted.
                break;
            }
            layer_ends.push(elements.len());
            r += 1;
        }
        Ok(Ball { radius: r, elements, index, layer_ends })
    }

    /// The radius actually reached; smaller than requested only when a
    /// finite group was exhausted first.
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = &Element> {
        self.elements.iter()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.index.contains_key(x)
    }

    pub fn position(&self, x: &Element) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Elements at distance at most `r`, as a BFS-ordered prefix.
    pub fn within(&self, r: u32) -> &[Element] {
        let r = (r as usize).min(self.layer_ends.len() - 1);
        &self.elements[..self.layer_ends[r]]
    }
}
