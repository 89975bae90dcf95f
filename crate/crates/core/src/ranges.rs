//! Brute-force range sets: Num_k(M), Num'_0(M), their F_q-restricted
//! versions, and the fibres of u ↦ ⟨u, Mu⟩ on the isotropic vectors of F_q^n.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{FieldCtx, FieldElem};
use crate::hermitian::{enumerate_cone, form_value, ConeIter, ConeSlice, EnumOptions, HermMatrix};

/// Spaces with at least this many prefixes are scanned in parallel.
const PARALLEL_PREFIXES: u128 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RangeKind {
    /// {⟨u, Mu⟩ : u ∈ F_{q²}^n, ⟨u, u⟩ = k}
    NumK,
    /// {⟨u, Mu⟩ : u ≠ 0, ⟨u, u⟩ = 0}
    Num0Prime,
    /// {⟨u, Mu⟩ : u ∈ F_q^n, ⟨u, u⟩ = k}
    NumKSubfield,
    /// {⟨u, Mu⟩ : 0 ≠ u ∈ F_q^n, ⟨u, u⟩ = 0}
    Num0PrimeSubfield,
}

impl RangeKind {
    pub fn name(self) -> &'static str {
        match self {
            RangeKind::NumK => "num_k",
            RangeKind::Num0Prime => "num0_prime",
            RangeKind::NumKSubfield => "num_k_subfield",
            RangeKind::Num0PrimeSubfield => "num0_prime_subfield",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [RangeKind::NumK, RangeKind::Num0Prime, RangeKind::NumKSubfield, RangeKind::Num0PrimeSubfield]
            .into_iter()
            .find(|k| k.name() == s)
    }

    pub fn is_subfield(self) -> bool {
        matches!(self, RangeKind::NumKSubfield | RangeKind::Num0PrimeSubfield)
    }

    pub fn is_punctured(self) -> bool {
        matches!(self, RangeKind::Num0Prime | RangeKind::Num0PrimeSubfield)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RangeMode {
    Exhaustive,
    Sampled,
}

/// A computed range. Exhaustive sets are exact; sampled sets are subsets of
/// the true range. `values` is sorted by encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeSet {
    pub kind: RangeKind,
    pub k: FieldElem,
    pub values: Vec<FieldElem>,
    pub mode: RangeMode,
    pub witness_count: u64,
}

impl RangeSet {
    pub fn contains(&self, x: FieldElem) -> bool {
        self.values.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_exhaustive(&self) -> bool {
        self.mode == RangeMode::Exhaustive
    }

    pub fn require_exhaustive(&self) -> Result<&Self> {
        if self.is_exhaustive() {
            Ok(self)
        } else {
            Err(Error::SampledInput)
        }
    }

    pub fn encodings(&self) -> Vec<u32> {
        self.values.iter().map(|v| v.enc()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCount {
    pub value: FieldElem,
    pub count: u64,
}

fn check_dim(m: &HermMatrix, slice: &ConeSlice) -> Result<()> {
    if m.n() == slice.n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: slice.n, got: m.n() })
    }
}

fn exhaustive_hits(ctx: &FieldCtx, m: &HermMatrix, slice: ConeSlice) -> Result<(Vec<bool>, u64)> {
    let scan = |start: u128, end: u128| -> Result<(Vec<bool>, u64)> {
        let mut hits = vec![false; ctx.q2() as usize];
        let mut seen = 0u64;
        ConeIter::with_prefix_range(ctx, slice, start, end)?.for_each_raw(|u| {
            hits[form_value(ctx, m, u).enc() as usize] = true;
            seen += 1;
        });
        Ok((hits, seen))
    };
    let prefixes = slice.prefix_count(ctx);
    if prefixes < PARALLEL_PREFIXES {
        return scan(0, prefixes);
    }
    let parts = crate::hermitian::split_range(prefixes, rayon::current_num_threads() * 4);
    parts.into_par_iter().map(|(a, b)| scan(a, b)).try_reduce(
        || (vec![false; ctx.q2() as usize], 0),
        |(mut h1, c1), (h2, c2)| {
            h1.iter_mut().zip(h2).for_each(|(x, y)| *x |= y);
            Ok((h1, c1 + c2))
        },
    )
}

fn collect_range(ctx: &FieldCtx, m: &HermMatrix, kind: RangeKind, slice: ConeSlice, opts: &EnumOptions) -> Result<RangeSet> {
    check_dim(m, &slice)?;
    slice.validate(ctx)?;
    let (hits, witness_count, mode) = if slice.space_size(ctx) <= opts.capacity {
        let (hits, seen) = exhaustive_hits(ctx, m, slice)?;
        (hits, seen, RangeMode::Exhaustive)
    } else {
        let mut hits = vec![false; ctx.q2() as usize];
        let mut seen = 0u64;
        for u in enumerate_cone(ctx, slice, opts)? {
            hits[form_value(ctx, m, u.entries()).enc() as usize] = true;
            seen += 1;
        }
        (hits, seen, RangeMode::Sampled)
    };
    let values = hits
        .iter()
        .enumerate()
        .filter(|(_, &h)| h)
        .map(|(i, _)| FieldElem::from_enc_unchecked(i as u32))
        .collect();
    Ok(RangeSet { kind, k: slice.k, values, mode, witness_count })
}

/// Num_k(M) = {⟨u, Mu⟩ : ⟨u, u⟩ = k}, k ∈ F_q.
pub fn num_k(ctx: &FieldCtx, m: &HermMatrix, k: FieldElem, opts: &EnumOptions) -> Result<RangeSet> {
    collect_range(ctx, m, RangeKind::NumK, ConeSlice::full_field(m.n(), k), opts)
}

/// Num'_0(M), the values on nonzero isotropic vectors. Undefined for n = 1.
pub fn num0_prime(ctx: &FieldCtx, m: &HermMatrix, opts: &EnumOptions) -> Result<RangeSet> {
    if m.n() < 2 {
        return Err(Error::NullRangeUndefined);
    }
    collect_range(ctx, m, RangeKind::Num0Prime, ConeSlice::full_field(m.n(), FieldElem::ZERO).punctured(), opts)
}

fn require_subfield_matrix(ctx: &FieldCtx, m: &HermMatrix) -> Result<()> {
    if m.has_subfield_coeffs(ctx) {
        Ok(())
    } else {
        Err(Error::NotSubfieldMatrix)
    }
}

/// Num_k(M)_q: vectors restricted to F_q^n, M with F_q coefficients.
pub fn num_k_subfield(ctx: &FieldCtx, m: &HermMatrix, k: FieldElem, opts: &EnumOptions) -> Result<RangeSet> {
    require_subfield_matrix(ctx, m)?;
    collect_range(ctx, m, RangeKind::NumKSubfield, ConeSlice::subfield(m.n(), k), opts)
}

/// Num'_0(M)_q; may be empty.
pub fn num0_prime_subfield(ctx: &FieldCtx, m: &HermMatrix, opts: &EnumOptions) -> Result<RangeSet> {
    if m.n() < 2 {
        return Err(Error::NullRangeUndefined);
    }
    require_subfield_matrix(ctx, m)?;
    collect_range(ctx, m, RangeKind::Num0PrimeSubfield, ConeSlice::subfield(m.n(), FieldElem::ZERO).punctured(), opts)
}

/// Dispatches on `kind`; `k` is ignored for the punctured kinds.
pub fn compute_range(ctx: &FieldCtx, m: &HermMatrix, kind: RangeKind, k: FieldElem, opts: &EnumOptions) -> Result<RangeSet> {
    match kind {
        RangeKind::NumK => num_k(ctx, m, k, opts),
        RangeKind::Num0Prime => num0_prime(ctx, m, opts),
        RangeKind::NumKSubfield => num_k_subfield(ctx, m, k, opts),
        RangeKind::Num0PrimeSubfield => num0_prime_subfield(ctx, m, opts),
    }
}

/// Counts of ⟨u, Mu⟩ over all u ∈ F_q^n with ⟨u, u⟩ = 0 (zero included),
/// one row per attained value.
pub fn fiber_table(ctx: &FieldCtx, m: &HermMatrix, opts: &EnumOptions) -> Result<Vec<FiberCount>> {
    require_subfield_matrix(ctx, m)?;
    let slice = ConeSlice::subfield(m.n(), FieldElem::ZERO);
    let needed = slice.space_size(ctx);
    if needed > opts.capacity {
        return Err(Error::CapacityExceeded { needed, capacity: opts.capacity });
    }
    let mut counts = vec![0u64; ctx.q() as usize];
    ConeIter::new(ctx, slice)?.for_each_raw(|u| counts[form_value(ctx, m, u).enc() as usize] += 1);
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .map(|(v, count)| FiberCount { value: FieldElem::from_enc_unchecked(v as u32), count })
        .collect())
}

/// Size of the fibre of u ↦ ⟨u, Mu⟩ over `a` on the isotropic vectors of F_q^n.
pub fn fiber_count(ctx: &FieldCtx, m: &HermMatrix, a: FieldElem, opts: &EnumOptions) -> Result<FiberCount> {
    if !ctx.in_subfield(a) {
        return Err(Error::NotInSubfield(a.enc()));
    }
    let count = fiber_table(ctx, m, opts)?.into_iter().find(|f| f.value == a).map_or(0, |f| f.count);
    Ok(FiberCount { value: a, count })
}

/// Whether Num_k(M) = k·Num_1(M) for every k ∈ F_q^*.
pub fn scaling_law_check(ctx: &FieldCtx, m: &HermMatrix, opts: &EnumOptions) -> Result<bool> {
    let unit = num_k(ctx, m, FieldElem::ONE, opts)?;
    unit.require_exhaustive()?;
    for k in ctx.nonzero_subfield_elements() {
        let range = num_k(ctx, m, k, opts)?;
        let mut scaled: Vec<FieldElem> = unit.values.iter().map(|&v| ctx.mul(k, v)).collect();
        scaled.sort_unstable();
        if range.values != scaled {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every subfield range of M from one pass over F_q^n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubfieldProfile {
    /// Num_k(M)_q for each k ∈ F_q, in encoding order.
    pub ranges: Vec<RangeSet>,
    /// Num'_0(M)_q; `None` for n = 1.
    pub null: Option<RangeSet>,
    /// Fibres over the isotropic vectors, zero included.
    pub fibers: Vec<FiberCount>,
}

impl SubfieldProfile {
    pub fn range(&self, k: FieldElem) -> &RangeSet {
        &self.ranges[k.enc() as usize]
    }

    pub fn fiber(&self, value: FieldElem) -> FiberCount {
        let count = self.fibers.iter().find(|f| f.value == value).map_or(0, |f| f.count);
        FiberCount { value, count }
    }
}

pub fn subfield_profile(ctx: &FieldCtx, m: &HermMatrix, opts: &EnumOptions) -> Result<SubfieldProfile> {
    require_subfield_matrix(ctx, m)?;
    let n = m.n();
    let q = ctx.q() as usize;
    let needed = (q as u128).saturating_pow(n as u32);
    if needed > opts.capacity {
        return Err(Error::CapacityExceeded { needed, capacity: opts.capacity });
    }
    let mut hits = vec![vec![false; q]; q];
    let mut seen = vec![0u64; q];
    let mut null_hits = vec![false; q];
    let mut fibres = vec![0u64; q];
    let mut u = vec![FieldElem::ZERO; n];
    loop {
        let level = crate::hermitian::inner_raw(ctx, &u, &u).enc() as usize;
        let value = form_value(ctx, m, &u).enc() as usize;
        hits[level][value] = true;
        seen[level] += 1;
        if level == 0 {
            fibres[value] += 1;
            if u.iter().any(|x| !x.is_zero()) {
                null_hits[value] = true;
            }
        }
        // odometer over F_q^n, last coordinate fastest
        let mut i = n;
        loop {
            if i == 0 {
                let to_set = |kind: RangeKind, k: usize, h: &[bool], witnesses: u64| RangeSet {
                    kind,
                    k: FieldElem::from_enc_unchecked(k as u32),
                    values: h
                        .iter()
                        .enumerate()
                        .filter(|(_, &b)| b)
                        .map(|(v, _)| FieldElem::from_enc_unchecked(v as u32))
                        .collect(),
                    mode: RangeMode::Exhaustive,
                    witness_count: witnesses,
                };
                let ranges = (0..q).map(|k| to_set(RangeKind::NumKSubfield, k, &hits[k], seen[k])).collect();
                let null = (n >= 2).then(|| to_set(RangeKind::Num0PrimeSubfield, 0, &null_hits, seen[0] - 1));
                let fibers = fibres
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(v, &count)| FiberCount { value: FieldElem::from_enc_unchecked(v as u32), count })
                    .collect();
                return Ok(SubfieldProfile { ranges, null, fibers });
            }
            i -= 1;
            let next = u[i].enc() + 1;
            if (next as usize) < q {
                u[i] = FieldElem::from_enc_unchecked(next);
                break;
            }
            u[i] = FieldElem::ZERO;
        }
    }
}
