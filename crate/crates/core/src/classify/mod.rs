//! Closed-form predictions for range sets, to be cross-checked against the
//! brute-force engines in [`crate::ranges`].

mod check;
mod eigen;
mod full_field;
mod subfield;

pub use check::{check_prediction, Observation, Verdict};
pub use eigen::{eigen2, EigenData2, EigenStatus};
pub use full_field::{predict_direct_sum, predict_full_field};
pub use subfield::{predict_subfield, scalar_fiber_formula, SymmetricData};

use serde::{Deserialize, Serialize};

use crate::fields::FieldElem;
use crate::ranges::RangeKind;

/// The statement a prediction makes about its target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum Claim {
    /// The target set equals `values` (sorted).
    ExactSet { values: Vec<FieldElem> },
    ExactCardinality { size: u64 },
    LowerBound { size: u64 },
    UpperBound { size: u64 },
    Membership { value: FieldElem, inside: bool },
    /// The target set contains every element of `values`.
    Superset { values: Vec<FieldElem> },
    Emptiness,
    /// The target equals {t·o : t ∈ F_q} (or t ∈ F_q^* without zero) for
    /// some o ≠ 0; `direction` pins o when it is known in advance.
    LineThroughOrigin { direction: Option<FieldElem>, include_zero: bool },
}

/// What a prediction constrains: a range set or one fibre of u ↦ ⟨u, Mu⟩
/// on the isotropic vectors of F_q^n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum Target {
    Range { kind: RangeKind, k: FieldElem },
    Fiber { value: FieldElem },
}

impl Target {
    pub fn range(kind: RangeKind, k: FieldElem) -> Self {
        Target::Range { kind, k }
    }

    pub fn null_range() -> Self {
        Target::Range { kind: RangeKind::Num0Prime, k: FieldElem::ZERO }
    }

    pub fn subfield_null_range() -> Self {
        Target::Range { kind: RangeKind::Num0PrimeSubfield, k: FieldElem::ZERO }
    }
}

/// The result a prediction rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "null-cone-zero")]
    NullConeZero,
    #[serde(rename = "scalar-null-range")]
    ScalarNullRange,
    #[serde(rename = "diagonal/three-values")]
    DiagonalThreeValues,
    #[serde(rename = "diagonal/zero-criterion")]
    DiagonalZeroCriterion,
    #[serde(rename = "diagonal/two-values")]
    DiagonalTwoValues,
    #[serde(rename = "unitary-diagonal/pair")]
    UnitaryDiagonalPair,
    #[serde(rename = "jordan-block")]
    JordanBlock,
    #[serde(rename = "isotropic-eigenbasis")]
    IsotropicEigenbasis,
    #[serde(rename = "off-diagonal/half")]
    OffDiagonalHalf,
    #[serde(rename = "off-diagonal/full")]
    OffDiagonalFull,
    #[serde(rename = "non-scalar")]
    NonScalar,
    #[serde(rename = "direct-sum/set")]
    DirectSumSet,
    #[serde(rename = "direct-sum/zero")]
    DirectSumZero,
    #[serde(rename = "subfield/nonempty")]
    SubfieldNonempty,
    #[serde(rename = "binary/minus-one-nonsquare")]
    BinaryNonsquare,
    #[serde(rename = "binary/even")]
    BinaryEven,
    #[serde(rename = "binary/cross-term")]
    BinaryCrossTerm,
    #[serde(rename = "binary/diagonal")]
    BinaryDiagonal,
    #[serde(rename = "even/isotropic-zero")]
    EvenIsotropicZero,
    #[serde(rename = "odd/isotropic-zero")]
    OddIsotropicZero,
    #[serde(rename = "one-mod-four/scalar")]
    OneModFourScalar,
    #[serde(rename = "one-mod-four/general")]
    OneModFourGeneral,
    #[serde(rename = "even/nonempty")]
    EvenNonempty,
    #[serde(rename = "even/pair-sums-zero")]
    EvenPairSumsZero,
    #[serde(rename = "even/pair-sums-shape")]
    EvenPairSumsShape,
    #[serde(rename = "scalar/fibre")]
    ScalarFibre,
    #[serde(rename = "scalar/null-range")]
    ScalarSubfieldNull,
    #[serde(rename = "minus-one-nonsquare/nonempty")]
    NonsquareNonempty,
    #[serde(rename = "odd-one-out")]
    OddOneOut,
    #[serde(rename = "odd-one-out/zero")]
    OddOneOutZero,
    #[serde(rename = "skew/diagonal-bound")]
    SkewDiagonalBound,
    #[serde(rename = "skew/diagonal-bound-nonzero")]
    SkewDiagonalBoundNonzero,
    #[serde(rename = "skew/triple-bound")]
    SkewTripleBound,
    #[serde(rename = "affine-law")]
    AffineLaw,
}

impl Basis {
    /// The citation label, as serialized.
    pub fn label(self) -> String {
        serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub claim: Claim,
    pub basis: Basis,
    pub target: Target,
}

impl Prediction {
    pub fn new(basis: Basis, target: Target, claim: Claim) -> Self {
        Prediction { claim, basis, target }
    }
}

pub(crate) fn sorted(mut v: Vec<FieldElem>) -> Vec<FieldElem> {
    v.sort_unstable();
    v.dedup();
    v
}
