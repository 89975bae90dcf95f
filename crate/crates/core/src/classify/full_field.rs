use super::{eigen2, sorted, Basis, Claim, Prediction, Target};
use crate::error::{Error, Result};
use crate::fields::{FieldCtx, FieldElem};
use crate::hermitian::HermMatrix;
use crate::ranges::{RangeKind, RangeSet};

fn half_up(q: u64) -> u64 {
    (q + 2) / 2
}

/// {t·o : t ∈ F_q} or {t·o : t ∈ F_q^*}.
fn line(ctx: &FieldCtx, o: FieldElem, include_zero: bool) -> Vec<FieldElem> {
    let ts: Vec<FieldElem> =
        if include_zero { ctx.subfield_elements().collect() } else { ctx.nonzero_subfield_elements().collect() };
    sorted(ts.into_iter().map(|t| ctx.mul(t, o)).collect())
}

/// Predictions for Num_0(M) and Num'_0(M) of a matrix over F_{q²}. The
/// eigenvector cases apply to 2×2 matrices; for larger n only diagonal
/// matrices get more than the universal facts.
pub fn predict_full_field(ctx: &FieldCtx, m: &HermMatrix) -> Result<Vec<Prediction>> {
    let n = m.n();
    if n < 2 {
        return Err(Error::NullRangeUndefined);
    }
    let q = ctx.q() as u64;
    let num0 = Target::range(RangeKind::NumK, FieldElem::ZERO);
    let null = Target::null_range();
    let mut out = vec![Prediction::new(
        Basis::NullConeZero,
        num0,
        Claim::Membership { value: FieldElem::ZERO, inside: true },
    )];

    if m.scalar_value().is_some() {
        out.push(Prediction::new(Basis::ScalarNullRange, null, Claim::ExactSet { values: vec![FieldElem::ZERO] }));
        return Ok(out);
    }
    out.push(Prediction::new(Basis::NonScalar, num0, Claim::LowerBound { size: half_up(q) }));

    if n >= 3 {
        if m.is_diagonal() {
            let distinct = sorted(m.diag());
            match distinct.len() {
                2 => {
                    let o = ctx.sub(distinct[1], distinct[0]);
                    out.push(Prediction::new(Basis::DiagonalTwoValues, null, Claim::ExactSet { values: line(ctx, o, true) }));
                }
                k if k >= 3 => {
                    out.push(Prediction::new(
                        Basis::DiagonalThreeValues,
                        num0,
                        Claim::ExactSet { values: ctx.elements().collect() },
                    ));
                    let inside = if k >= 4 || n >= 4 {
                        true
                    } else {
                        let ratio = ctx.div(ctx.sub(distinct[2], distinct[0]), ctx.sub(distinct[1], distinct[0]))?;
                        ctx.in_subfield(ratio)
                    };
                    out.push(Prediction::new(
                        Basis::DiagonalZeroCriterion,
                        null,
                        Claim::Membership { value: FieldElem::ZERO, inside },
                    ));
                }
                _ => {}
            }
        }
        return Ok(out);
    }

    let eig = eigen2(ctx, m)?;
    if eig.is_unitarily_diagonalizable(ctx) {
        let o = ctx.sub(eig.eigenvalues[1], eig.eigenvalues[0]);
        out.push(Prediction::new(Basis::UnitaryDiagonalPair, null, Claim::ExactSet { values: line(ctx, o, false) }));
    }
    if eig.is_jordan_block() && !eig.isotropic[0] {
        out.push(Prediction::new(Basis::JordanBlock, null, Claim::Membership { value: FieldElem::ZERO, inside: false }));
        let claim = if ctx.is_even() {
            Claim::ExactSet { values: ctx.nonzero_elements().collect() }
        } else {
            Claim::ExactCardinality { size: (q * q - 1) / 2 }
        };
        out.push(Prediction::new(Basis::JordanBlock, null, claim));
    }
    if eig.status == super::EigenStatus::TwoDistinct && eig.isotropic.iter().all(|&b| b) {
        out.push(Prediction::new(
            Basis::IsotropicEigenbasis,
            null,
            Claim::LineThroughOrigin { direction: None, include_zero: true },
        ));
    }
    let (m12, m21) = (m.get(0, 1), m.get(1, 0));
    if !m12.is_zero() && !m21.is_zero() {
        out.push(Prediction::new(Basis::OffDiagonalHalf, null, Claim::LowerBound { size: half_up(q) }));
        let ratio = ctx.neg(ctx.div(m12, m21)?);
        if ctx.norm(ratio) != FieldElem::ONE {
            out.push(Prediction::new(Basis::OffDiagonalFull, null, Claim::LowerBound { size: q + 1 }));
        }
    }
    Ok(out)
}

fn require_kind(r: &RangeSet, kind: RangeKind, k: FieldElem) -> Result<()> {
    r.require_exhaustive()?;
    if r.kind != kind || r.k != k {
        return Err(Error::Input(format!("expected a {} range with k = {}", kind.name(), k)));
    }
    Ok(())
}

/// Num_0(A ⊕ B) assembled from the blocks' ranges, and whether 0 lies in
/// Num'_0(A ⊕ B). `null_a`/`null_b` are the blocks' Num'_0 sets and must be
/// `None` exactly for 1×1 blocks, whose punctured cone is empty.
pub fn predict_direct_sum(
    ctx: &FieldCtx,
    a: &HermMatrix,
    b: &HermMatrix,
    num1_a: &RangeSet,
    num1_b: &RangeSet,
    null_a: Option<&RangeSet>,
    null_b: Option<&RangeSet>,
) -> Result<Vec<Prediction>> {
    require_kind(num1_a, RangeKind::NumK, FieldElem::ONE)?;
    require_kind(num1_b, RangeKind::NumK, FieldElem::ONE)?;
    let nulls = |blk: &HermMatrix, r: Option<&RangeSet>| -> Result<Vec<FieldElem>> {
        match (blk.n(), r) {
            (1, None) => Ok(Vec::new()),
            (_, Some(r)) if blk.n() >= 2 => {
                require_kind(r, RangeKind::Num0Prime, FieldElem::ZERO)?;
                Ok(r.values.clone())
            }
            _ => Err(Error::Input("null ranges are required exactly for blocks with n >= 2".into())),
        }
    };
    let null_a = nulls(a, null_a)?;
    let null_b = nulls(b, null_b)?;
    let with_zero = |v: &[FieldElem]| sorted(v.iter().copied().chain([FieldElem::ZERO]).collect());
    let (num0_a, num0_b) = (with_zero(&null_a), with_zero(&null_b));

    let mut set: Vec<FieldElem> = num0_a.iter().flat_map(|&x| num0_b.iter().map(move |&y| (x, y))).map(|(x, y)| ctx.add(x, y)).collect();
    for k in ctx.nonzero_subfield_elements() {
        for &x in &num1_a.values {
            for &y in &num1_b.values {
                set.push(ctx.mul(k, ctx.sub(x, y)));
            }
        }
    }
    let contains = |v: &[FieldElem], x: FieldElem| v.binary_search(&x).is_ok();
    let zero_inside = num1_a.values.iter().any(|&x| num1_b.contains(x))
        || null_a.iter().any(|&x| contains(&num0_b, ctx.neg(x)))
        || null_b.iter().any(|&y| contains(&num0_a, ctx.neg(y)));
    Ok(vec![
        Prediction::new(
            Basis::DirectSumSet,
            Target::range(RangeKind::NumK, FieldElem::ZERO),
            Claim::ExactSet { values: sorted(set) },
        ),
        Prediction::new(
            Basis::DirectSumZero,
            Target::null_range(),
            Claim::Membership { value: FieldElem::ZERO, inside: zero_inside },
        ),
    ])
}
