use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{FieldCtx, FieldElem};
use crate::hermitian::{inner_raw, HermMatrix, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenStatus {
    TwoDistinct,
    Repeated,
    /// The characteristic polynomial has no root in F_{q²}.
    Irreducible,
}

/// Eigenstructure of a 2×2 matrix. Eigenvectors are normalised so that
/// their first nonzero entry is 1; `eigenvectors[i]` belongs to
/// `eigenvalues[i]` except for a scalar matrix, which lists e_1 and e_2 for
/// its single eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenData2 {
    pub status: EigenStatus,
    pub eigenvalues: Vec<FieldElem>,
    pub eigenvectors: Vec<Vector>,
    pub isotropic: Vec<bool>,
    pub eigenspace_dims: Vec<usize>,
}

impl EigenData2 {
    /// Two distinct eigenvalues with orthogonal, non-isotropic eigenvectors.
    pub fn is_unitarily_diagonalizable(&self, ctx: &FieldCtx) -> bool {
        self.status == EigenStatus::TwoDistinct
            && !self.isotropic[0]
            && !self.isotropic[1]
            && inner_raw(ctx, self.eigenvectors[0].entries(), self.eigenvectors[1].entries()).is_zero()
    }

    /// A single eigenvalue whose eigenspace is a line.
    pub fn is_jordan_block(&self) -> bool {
        self.status == EigenStatus::Repeated && self.eigenspace_dims == [1]
    }
}

fn normalise(ctx: &FieldCtx, v: [FieldElem; 2]) -> Vector {
    let lead = if v[0].is_zero() { v[1] } else { v[0] };
    let inv = ctx.inv(lead).expect("kernel vectors are nonzero");
    Vector::new(vec![ctx.mul(inv, v[0]), ctx.mul(inv, v[1])]).expect("length 2")
}

/// Kernel of M − cI, assumed nonzero.
fn kernel(ctx: &FieldCtx, m: &HermMatrix, c: FieldElem) -> Vec<Vector> {
    let a = ctx.sub(m.get(0, 0), c);
    let b = m.get(0, 1);
    let d = ctx.sub(m.get(1, 1), c);
    let e = m.get(1, 0);
    if !(a.is_zero() && b.is_zero()) {
        vec![normalise(ctx, [ctx.neg(b), a])]
    } else if !(e.is_zero() && d.is_zero()) {
        vec![normalise(ctx, [ctx.neg(d), e])]
    } else {
        vec![Vector::basis(2, 0), Vector::basis(2, 1)]
    }
}

/// Roots of t² − tr·t + det found by scanning F_{q²}, with eigenvectors.
pub fn eigen2(ctx: &FieldCtx, m: &HermMatrix) -> Result<EigenData2> {
    if m.n() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: m.n() });
    }
    let tr = ctx.add(m.get(0, 0), m.get(1, 1));
    let det = ctx.sub(ctx.mul(m.get(0, 0), m.get(1, 1)), ctx.mul(m.get(0, 1), m.get(1, 0)));
    let roots: Vec<FieldElem> = ctx
        .elements()
        .filter(|&t| ctx.add(ctx.sub(ctx.mul(t, t), ctx.mul(tr, t)), det).is_zero())
        .collect();
    let status = match roots.len() {
        0 => EigenStatus::Irreducible,
        1 => EigenStatus::Repeated,
        _ => EigenStatus::TwoDistinct,
    };
    let mut eigenvectors = Vec::new();
    let mut eigenspace_dims = Vec::new();
    for &c in &roots {
        let basis = kernel(ctx, m, c);
        eigenspace_dims.push(basis.len());
        eigenvectors.extend(basis);
    }
    let isotropic = eigenvectors.iter().map(|v| inner_raw(ctx, v.entries(), v.entries()).is_zero()).collect();
    Ok(EigenData2 { status, eigenvalues: roots, eigenvectors, isotropic, eigenspace_dims })
}
