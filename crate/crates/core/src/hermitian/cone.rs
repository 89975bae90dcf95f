//! Level sets C_n(k) = {u : ⟨u, u⟩ = k}, over F_{q²} or restricted to F_q.
//!
//! For a fixed prefix (u_1, …, u_{n-1}) the last coordinate must satisfy
//! N(u_n) = k - Σ N(u_i) (resp. u_n² = k - Σ u_i² on F_q), so each prefix has
//! 0, 1 or q + 1 (resp. 0, 1, 2) completions; those are looked up instead of
//! filtering the whole space.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Vector;
use crate::error::{Error, Result};
use crate::fields::{FieldCtx, FieldElem};

/// Default maximum number of vectors in an exhaustively scanned space.
pub const DEFAULT_CAPACITY: u128 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeMode {
    /// Vectors of F_{q²}^n.
    FullField,
    /// Vectors of F_q^n.
    Subfield,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConeSlice {
    pub n: usize,
    pub k: FieldElem,
    pub mode: ConeMode,
    pub exclude_zero: bool,
}

impl ConeSlice {
    pub fn full_field(n: usize, k: FieldElem) -> Self {
        ConeSlice { n, k, mode: ConeMode::FullField, exclude_zero: false }
    }

    pub fn subfield(n: usize, k: FieldElem) -> Self {
        ConeSlice { n, k, mode: ConeMode::Subfield, exclude_zero: false }
    }

    /// Drops the zero vector; only valid on the isotropic cone.
    pub fn punctured(mut self) -> Self {
        self.exclude_zero = true;
        self
    }

    pub fn validate(&self, ctx: &FieldCtx) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Input("cone dimension must be at least 1".into()));
        }
        if !ctx.in_subfield(self.k) {
            return Err(Error::NotInSubfield(self.k.enc()));
        }
        if self.exclude_zero && !self.k.is_zero() {
            return Err(Error::ExcludeZeroNeedsIsotropic);
        }
        Ok(())
    }

    fn radix(&self, ctx: &FieldCtx) -> u32 {
        match self.mode {
            ConeMode::FullField => ctx.q2(),
            ConeMode::Subfield => ctx.q(),
        }
    }

    /// Size of the ambient space, q^{2n} or q^n.
    pub fn space_size(&self, ctx: &FieldCtx) -> u128 {
        (self.radix(ctx) as u128).saturating_pow(self.n as u32)
    }

    /// Number of prefixes (u_1, …, u_{n-1}); the unit of work partitioning.
    pub fn prefix_count(&self, ctx: &FieldCtx) -> u128 {
        (self.radix(ctx) as u128).saturating_pow(self.n as u32 - 1)
    }

    fn level(&self, ctx: &FieldCtx, x: FieldElem) -> FieldElem {
        match self.mode {
            ConeMode::FullField => ctx.norm(x),
            ConeMode::Subfield => ctx.mul(x, x),
        }
    }

    /// For every target t ∈ F_q, the sorted last coordinates with level t.
    fn completion_table(&self, ctx: &FieldCtx) -> Vec<Vec<FieldElem>> {
        ctx.subfield_elements()
            .map(|t| match self.mode {
                ConeMode::FullField => ctx.norm_fiber(t).expect("t in F_q").into_owned(),
                ConeMode::Subfield => ctx.subfield_roots(t).expect("t in F_q").into_owned(),
            })
            .collect()
    }
}

/// Budget and sampling controls shared by every enumerating computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    /// Largest ambient space (in vectors) scanned exhaustively.
    pub capacity: u128,
    /// Number of random draws when the space exceeds `capacity`.
    pub sample_budget: Option<u64>,
    pub seed: u64,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { capacity: DEFAULT_CAPACITY, sample_budget: None, seed: 0 }
    }
}

/// Exhaustive walk over a contiguous range of prefixes, in lexicographic
/// order of entry encodings.
pub struct ConeIter<'a> {
    ctx: &'a FieldCtx,
    slice: ConeSlice,
    completions: Vec<Vec<FieldElem>>,
    prefix: Vec<FieldElem>,
    current: u128,
    end: u128,
    target: usize,
    pos: usize,
}

impl<'a> ConeIter<'a> {
    pub fn new(ctx: &'a FieldCtx, slice: ConeSlice) -> Result<Self> {
        slice.validate(ctx)?;
        let end = slice.prefix_count(ctx);
        Self::with_prefix_range(ctx, slice, 0, end)
    }

    /// Walks only prefixes with index in `start..end`.
    pub fn with_prefix_range(ctx: &'a FieldCtx, slice: ConeSlice, start: u128, end: u128) -> Result<Self> {
        slice.validate(ctx)?;
        let end = end.min(slice.prefix_count(ctx));
        let mut it = ConeIter {
            ctx,
            slice,
            completions: slice.completion_table(ctx),
            prefix: vec![FieldElem::ZERO; slice.n - 1],
            current: start,
            end,
            target: 0,
            pos: 0,
        };
        if start < end {
            it.load_prefix();
        }
        Ok(it)
    }

    fn load_prefix(&mut self) {
        let radix = self.slice.radix(self.ctx) as u128;
        let mut rest = self.current;
        for slot in self.prefix.iter_mut().rev() {
            *slot = FieldElem::from_enc_unchecked((rest % radix) as u32);
            rest /= radix;
        }
        let used = self
            .prefix
            .iter()
            .fold(FieldElem::ZERO, |acc, &x| self.ctx.add(acc, self.slice.level(self.ctx, x)));
        self.target = self.ctx.sub(self.slice.k, used).enc() as usize;
        self.pos = 0;
    }

    /// Writes the next vector into `buf`; returns false when exhausted.
    pub fn next_into(&mut self, buf: &mut Vec<FieldElem>) -> bool {
        loop {
            if self.current >= self.end {
                return false;
            }
            let comps = &self.completions[self.target];
            if self.pos < comps.len() {
                let last = comps[self.pos];
                self.pos += 1;
                if self.slice.exclude_zero && last.is_zero() && self.prefix.iter().all(|x| x.is_zero()) {
                    continue;
                }
                buf.clear();
                buf.extend_from_slice(&self.prefix);
                buf.push(last);
                return true;
            }
            self.current += 1;
            if self.current < self.end {
                self.load_prefix();
            }
        }
    }

    /// Calls `f` on every vector without allocating per vector.
    pub fn for_each_raw(mut self, mut f: impl FnMut(&[FieldElem])) {
        let mut buf = Vec::with_capacity(self.slice.n);
        while self.next_into(&mut buf) {
            debug_assert!(self.ctx.in_subfield(super::inner_raw(self.ctx, &buf, &buf)));
            f(&buf);
        }
    }
}

impl Iterator for ConeIter<'_> {
    type Item = Vector;

    fn next(&mut self) -> Option<Vector> {
        let mut buf = Vec::with_capacity(self.slice.n);
        self.next_into(&mut buf).then(|| Vector::new(buf).expect("n >= 1"))
    }
}

/// Random draws: a uniform prefix followed by a uniform completion.
pub struct ConeSampler<'a> {
    ctx: &'a FieldCtx,
    slice: ConeSlice,
    completions: Vec<Vec<FieldElem>>,
    rng: ChaCha8Rng,
    remaining: u64,
}

impl ConeSampler<'_> {
    fn draw(&mut self) -> Option<Vec<FieldElem>> {
        let radix = self.slice.radix(self.ctx);
        let mut v: Vec<FieldElem> = (0..self.slice.n - 1)
            .map(|_| FieldElem::from_enc_unchecked(self.rng.gen_range(0..radix)))
            .collect();
        let used = v.iter().fold(FieldElem::ZERO, |acc, &x| self.ctx.add(acc, self.slice.level(self.ctx, x)));
        let comps = &self.completions[self.ctx.sub(self.slice.k, used).enc() as usize];
        if comps.is_empty() {
            return None;
        }
        v.push(comps[self.rng.gen_range(0..comps.len())]);
        if self.slice.exclude_zero && v.iter().all(|x| x.is_zero()) {
            return None;
        }
        Some(v)
    }
}

impl Iterator for ConeSampler<'_> {
    type Item = Vector;

    fn next(&mut self) -> Option<Vector> {
        while self.remaining > 0 {
            self.remaining -= 1;
            if let Some(v) = self.draw() {
                return Some(Vector::new(v).expect("n >= 1"));
            }
        }
        None
    }
}

/// Either an exhaustive walk or a sampled under-approximation.
pub enum ConeWalk<'a> {
    Exhaustive(ConeIter<'a>),
    Sampled(Box<ConeSampler<'a>>),
}

impl ConeWalk<'_> {
    pub fn is_sampled(&self) -> bool {
        matches!(self, ConeWalk::Sampled(_))
    }
}

impl Iterator for ConeWalk<'_> {
    type Item = Vector;

    fn next(&mut self) -> Option<Vector> {
        match self {
            ConeWalk::Exhaustive(it) => it.next(),
            ConeWalk::Sampled(it) => it.next(),
        }
    }
}

/// Enumerates the vectors of `slice`: exhaustively when the ambient space fits
/// in `opts.capacity`, otherwise by sampling if a budget is given.
pub fn enumerate_cone<'a>(ctx: &'a FieldCtx, slice: ConeSlice, opts: &EnumOptions) -> Result<ConeWalk<'a>> {
    slice.validate(ctx)?;
    let needed = slice.space_size(ctx);
    if needed <= opts.capacity {
        return Ok(ConeWalk::Exhaustive(ConeIter::new(ctx, slice)?));
    }
    match opts.sample_budget {
        Some(budget) => Ok(ConeWalk::Sampled(Box::new(ConeSampler {
            ctx,
            slice,
            completions: slice.completion_table(ctx),
            rng: ChaCha8Rng::seed_from_u64(opts.seed),
            remaining: budget,
        }))),
        None => Err(Error::CapacityExceeded { needed, capacity: opts.capacity }),
    }
}

/// Splits `0..total` into at most `parts` contiguous ranges.
pub(crate) fn split_range(total: u128, parts: usize) -> Vec<(u128, u128)> {
    let parts = (parts.max(1) as u128).min(total.max(1));
    let chunk = total.div_ceil(parts);
    (0..parts).map(|i| (i * chunk, ((i + 1) * chunk).min(total))).filter(|(a, b)| a < b).collect()
}

/// Exhaustive enumeration fanned out over `workers` prefix ranges. The result
/// is in the same canonical order as [`ConeIter`].
pub fn enumerate_cone_parallel(ctx: &FieldCtx, slice: ConeSlice, workers: usize, opts: &EnumOptions) -> Result<Vec<Vector>> {
    slice.validate(ctx)?;
    let needed = slice.space_size(ctx);
    if needed > opts.capacity {
        return Err(Error::CapacityExceeded { needed, capacity: opts.capacity });
    }
    let ranges = split_range(slice.prefix_count(ctx), workers);
    let chunks: Vec<Vec<Vector>> = ranges
        .into_par_iter()
        .map(|(a, b)| ConeIter::with_prefix_range(ctx, slice, a, b).map(|it| it.collect()))
        .collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}
