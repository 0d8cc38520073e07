use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::cover::DescentState;
use crate::group::Element;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// The structural lemma a failed check belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lemma {
    /// The subgroup generated by `A ∩ B` lies in one side.
    IntersectionSide,
    /// `A − I` and `B − H` are unions of `H`-cosets on both sides.
    CosetSaturation,
    /// `(A − I)⁻¹ = B − H`.
    InverseDuality,
    /// `A − I` is closed under multiplication.
    DifferenceClosure,
    /// `H = H_A ∪ H_B` with `H_A ∩ H_B = {1}`.
    ConjugateSplit,
    /// Properties of the refined pair `(A ∪ H_A, (B − H_A) ∪ {1})`.
    Refinement,
    /// Totality and left invariance of an extracted order.
    OrderWitness,
    /// Postconditions of merging two normalized covers.
    Merge,
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Lemma::IntersectionSide => "intersection-side",
            Lemma::CosetSaturation => "coset-saturation",
            Lemma::InverseDuality => "inverse-duality",
            Lemma::DifferenceClosure => "difference-closure",
            Lemma::ConjugateSplit => "conjugate-split",
            Lemma::Refinement => "refinement",
            Lemma::OrderWitness => "order-witness",
            Lemma::Merge => "merge",
        };
        f.write_str(name)
    }
}

/// Renders a witness tuple as `(x, y, ...)`.
pub struct Witness<'a>(pub &'a [Element]);

impl fmt::Display for Witness<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("not a group: {reason}")]
    NotAGroup { reason: String, triple: Option<(usize, usize, usize)> },
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("ball exceeds the element cap of {cap}")]
    BallTooLarge { cap: usize },
    #[error("subset is not a subgroup")]
    NotASubgroup,
    #[error("subgroup is not normal: conjugating {} by {} leaves it", .element, .by)]
    NotNormal { element: Box<Element>, by: Box<Element> },
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("not a positive cone: {reason} {}", Witness(.witness))]
    NotACone { reason: String, witness: Vec<Element> },
    #[error("the quotient is trivial")]
    TrivialQuotient,
    #[error("cannot pull back this cone: {0}")]
    UnsupportedPullback(String),
    #[error("matrix {rows}x{cols} exceeds the {cap}x{cap} cap")]
    MatrixTooLarge { rows: usize, cols: usize, cap: usize },
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("not a cover pair at radius {radius}: {check} fails at {}", Witness(.witness))]
    NotACover { check: String, witness: Vec<Element>, radius: u32 },
    #[error("covers are not normalized: {0}")]
    NotNormalized(String),
    #[error("{lemma} violated at {}", Witness(.witness))]
    LemmaViolation { lemma: Lemma, witness: Vec<Element> },
    #[error("maximal subgroup is trivial; nothing to split")]
    IdentityOnlyH,
    #[error("conjugation leaves the maximal subgroup in place; nothing to refine")]
    NothingToRefine,
    #[error("refined pair is not closed: {side} at {}", Witness(.witness))]
    ClosureViolation { side: String, witness: Vec<Element> },
    #[error("descent did not reach a normal subgroup within {} steps", .0.step)]
    DepthExceeded(Box<DescentState>),
    #[error("group of order {order} exceeds the cap of {cap}")]
    GroupTooLarge { order: usize, cap: usize },
}
