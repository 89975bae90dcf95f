use serde::{Deserialize, Serialize};

use super::{Claim, Prediction, Target};
use crate::fields::{FieldCtx, FieldElem};
use crate::ranges::{FiberCount, RangeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Observation<'a> {
    Range(&'a RangeSet),
    Fiber(FiberCount),
}

fn is_line(ctx: &FieldCtx, set: &[FieldElem], o: FieldElem, include_zero: bool) -> bool {
    if o.is_zero() {
        return false;
    }
    let mut line: Vec<FieldElem> = ctx
        .subfield_elements()
        .filter(|t| include_zero || !t.is_zero())
        .map(|t| ctx.mul(t, o))
        .collect();
    line.sort_unstable();
    line == set
}

/// Compares a prediction with an observation of the same target. A sampled
/// range can confirm lower bounds, memberships and supersets but never
/// refute anything.
pub fn check_prediction(ctx: &FieldCtx, pred: &Prediction, observed: Observation<'_>) -> Verdict {
    match (pred.target, observed) {
        (Target::Range { kind, k }, Observation::Range(r)) => {
            if r.kind != kind || r.k != k {
                return Verdict::Inapplicable;
            }
            if r.is_exhaustive() {
                check_exact(ctx, &pred.claim, r)
            } else {
                check_sampled(&pred.claim, r)
            }
        }
        (Target::Fiber { value }, Observation::Fiber(f)) if f.value == value => match pred.claim {
            Claim::ExactCardinality { size } => Verdict::from_bool(f.count == size),
            Claim::LowerBound { size } => Verdict::from_bool(f.count >= size),
            Claim::UpperBound { size } => Verdict::from_bool(f.count <= size),
            _ => Verdict::Inapplicable,
        },
        _ => Verdict::Inapplicable,
    }
}

fn check_exact(ctx: &FieldCtx, claim: &Claim, r: &RangeSet) -> Verdict {
    let size = r.len() as u64;
    let ok = match claim {
        Claim::ExactSet { values } => &r.values == values,
        Claim::ExactCardinality { size: s } => size == *s,
        Claim::LowerBound { size: s } => size >= *s,
        Claim::UpperBound { size: s } => size <= *s,
        Claim::Membership { value, inside } => r.contains(*value) == *inside,
        Claim::Superset { values } => values.iter().all(|&v| r.contains(v)),
        Claim::Emptiness => r.is_empty(),
        Claim::LineThroughOrigin { direction: Some(o), include_zero } => is_line(ctx, &r.values, *o, *include_zero),
        Claim::LineThroughOrigin { direction: None, include_zero } => {
            r.values.iter().any(|&o| is_line(ctx, &r.values, o, *include_zero))
        }
    };
    Verdict::from_bool(ok)
}

fn check_sampled(claim: &Claim, r: &RangeSet) -> Verdict {
    let proven = match claim {
        Claim::LowerBound { size } => r.len() as u64 >= *size,
        Claim::Membership { value, inside: true } => r.contains(*value),
        Claim::Superset { values } => values.iter().all(|&v| r.contains(v)),
        _ => false,
    };
    if proven {
        Verdict::Pass
    } else {
        Verdict::Inapplicable
    }
}
