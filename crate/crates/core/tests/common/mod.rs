//! Brute-force reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use nullrange::{FieldCtx, FieldElem, HermMatrix};
use rand::Rng;

/// Σ ū_i v_i with ū = u^q, computed entry by entry.
pub fn herm(ctx: &FieldCtx, u: &[FieldElem], v: &[FieldElem]) -> FieldElem {
    u.iter().zip(v).fold(FieldElem::ZERO, |acc, (&a, &b)| ctx.add(acc, ctx.mul(ctx.pow(a, ctx.q() as u64), b)))
}

pub fn apply(ctx: &FieldCtx, m: &HermMatrix, u: &[FieldElem]) -> Vec<FieldElem> {
    (0..m.n())
        .map(|i| (0..m.n()).fold(FieldElem::ZERO, |acc, j| ctx.add(acc, ctx.mul(m.get(i, j), u[j]))))
        .collect()
}

/// Every vector of length n whose entries have encodings below `order`.
pub fn all_vectors(ctx: &FieldCtx, n: usize, order: u32) -> Vec<Vec<FieldElem>> {
    let mut out = Vec::with_capacity((order as usize).pow(n as u32));
    let mut digits = vec![0u32; n];
    loop {
        out.push(digits.iter().map(|&d| ctx.elem(d as u64).unwrap()).collect());
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            digits[i] += 1;
            if digits[i] < order {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Range by filtering the whole space: `subfield` restricts to F_q^n,
/// `punctured` drops the zero vector.
pub fn naive_range(ctx: &FieldCtx, m: &HermMatrix, k: FieldElem, subfield: bool, punctured: bool) -> Vec<FieldElem> {
    let order = if subfield { ctx.q() } else { ctx.q2() };
    let mut seen = BTreeSet::new();
    for u in all_vectors(ctx, m.n(), order) {
        if punctured && u.iter().all(|x| x.is_zero()) {
            continue;
        }
        if herm(ctx, &u, &u) == k {
            seen.insert(herm(ctx, &u, &apply(ctx, m, &u)));
        }
    }
    seen.into_iter().collect()
}

pub fn random_matrix(ctx: &FieldCtx, rng: &mut impl Rng, n: usize, order: u32) -> HermMatrix {
    let rows: Vec<Vec<u64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..order) as u64).collect()).collect();
    HermMatrix::from_encodings(ctx, &rows).unwrap()
}

/// Every n×n matrix with entries below `order` in the given cells, zero elsewhere.
pub fn all_matrices(ctx: &FieldCtx, n: usize, order: u32, cells: &[(usize, usize)]) -> Vec<HermMatrix> {
    let mut out = Vec::new();
    let mut digits = vec![0u32; cells.len()];
    loop {
        let mut rows = vec![vec![0u64; n]; n];
        for (&(i, j), &d) in cells.iter().zip(&digits) {
            rows[i][j] = d as u64;
        }
        out.push(HermMatrix::from_encodings(ctx, &rows).unwrap());
        let mut i = 0;
        loop {
            if i == cells.len() {
                return out;
            }
            digits[i] += 1;
            if digits[i] < order {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

pub fn full_cells(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
}

pub fn upper_cells(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// Squares of F_q, by direct enumeration.
pub fn squares(ctx: &FieldCtx) -> BTreeSet<FieldElem> {
    ctx.subfield_elements().map(|x| ctx.mul(x, x)).collect()
}

/// All ranges of M by one pass over the whole space: the map k ↦ Num_k and
/// the punctured null-range.
pub fn naive_ranges(
    ctx: &FieldCtx,
    m: &HermMatrix,
    subfield: bool,
) -> (std::collections::BTreeMap<FieldElem, BTreeSet<FieldElem>>, BTreeSet<FieldElem>) {
    let order = if subfield { ctx.q() } else { ctx.q2() };
    let mut by_level: std::collections::BTreeMap<FieldElem, BTreeSet<FieldElem>> = Default::default();
    let mut null = BTreeSet::new();
    for u in all_vectors(ctx, m.n(), order) {
        let level = herm(ctx, &u, &u);
        let value = herm(ctx, &u, &apply(ctx, m, &u));
        by_level.entry(level).or_default().insert(value);
        if level.is_zero() && u.iter().any(|x| !x.is_zero()) {
            null.insert(value);
        }
    }
    (by_level, null)
}
