//! Verification sweeps: closed-form predictions checked against brute force
//! over named families of matrices.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{
    check_prediction, predict_direct_sum, predict_full_field, predict_subfield, Basis, Claim, Observation, Prediction,
    Target, Verdict,
};
use crate::error::{Error, Result};
use crate::fields::{FieldCtx, FieldElem};
use crate::hermitian::{EnumOptions, HermMatrix};
use crate::ranges::{num0_prime, num_k, subfield_profile, RangeKind, RangeMode, RangeSet, SubfieldProfile};

/// Matrix entries as encodings, row by row.
type Rows = Vec<Vec<u32>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// Every 2×2 matrix over F_{q²}; full-field predictions.
    #[serde(rename = "exhaustive-2x2")]
    Exhaustive2x2,
    /// Every 2×2 matrix over F_q; subfield predictions for every k.
    #[serde(rename = "subfield-2x2")]
    Subfield2x2,
    /// Every upper-triangular n×n pattern over F_q; subfield predictions.
    SubfieldPatterns,
    /// Seeded random n×n matrices over F_q; subfield predictions, plus
    /// full-field ones when the space fits the capacity.
    RandomNxn,
    /// Seeded random diagonal n×n matrices over F_{q²}; full-field predictions.
    RandomDiagonal,
    /// cI for c ∈ F_q^* and n = 2..=n; zero fibre and null-range.
    ScalarFibers,
    /// Seeded random block sums A ⊕ B of total size n over F_{q²}.
    DirectSums,
    /// Num_k(cI + dM) against c·k + d·Num_k(M) and c·k² + d·Num_k(M).
    AffineLaw,
}

impl Scope {
    pub const ALL: [Scope; 8] = [
        Scope::Exhaustive2x2,
        Scope::Subfield2x2,
        Scope::SubfieldPatterns,
        Scope::RandomNxn,
        Scope::RandomDiagonal,
        Scope::ScalarFibers,
        Scope::DirectSums,
        Scope::AffineLaw,
    ];

    pub fn name(self) -> String {
        serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|sc| sc.name() == s)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub scope: Scope,
    /// Matrix size; scope-specific default when `None`.
    pub n: Option<usize>,
    /// Number of random instances; scope-specific default when `None`.
    pub count: Option<usize>,
    pub seed: u64,
    pub opts: EnumOptions,
}

impl VerifyConfig {
    pub fn new(scope: Scope) -> Self {
        VerifyConfig { scope, n: None, count: None, seed: 0, opts: EnumOptions::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum Observed {
    Range { mode: RangeMode, size: usize, values: Vec<FieldElem> },
    Fiber { value: FieldElem, count: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub citation: String,
    pub claim: Claim,
    pub target: Target,
    pub observed: Observed,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixReport {
    pub matrix: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
    pub checks: Vec<CheckRecord>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pass: u64,
    pub fail: u64,
    pub inapplicable: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub scope: Scope,
    pub p: u32,
    pub m: u32,
    pub q: u32,
    pub n: usize,
    pub seed: u64,
    pub matrices: Vec<MatrixReport>,
    pub summary: BTreeMap<String, Tally>,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub resolved_form: Option<String>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    /// Failing checks as (matrix, citation) pairs.
    pub fn failing(&self) -> Vec<(&MatrixReport, &CheckRecord)> {
        self.matrices
            .iter()
            .flat_map(|m| m.checks.iter().filter(|c| c.verdict == Verdict::Fail).map(move |c| (m, c)))
            .collect()
    }
}

fn observed_range(r: &RangeSet) -> Observed {
    Observed::Range { mode: r.mode, size: r.len(), values: r.values.clone() }
}

fn record(ctx: &FieldCtx, pred: Prediction, obs: Observation<'_>) -> CheckRecord {
    let verdict = check_prediction(ctx, &pred, obs);
    let observed = match obs {
        Observation::Range(r) => observed_range(r),
        Observation::Fiber(f) => Observed::Fiber { value: f.value, count: f.count },
    };
    CheckRecord { citation: pred.basis.label(), claim: pred.claim, target: pred.target, observed, verdict }
}

/// Every n×n matrix whose entries at `cells` range over encodings below `radix`.
fn matrices_over(n: usize, radix: u32, cells: &[(usize, usize)]) -> Vec<Vec<Vec<u32>>> {
    let total = (radix as u64).pow(cells.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut rows = vec![vec![0u32; n]; n];
            // first cell is the most significant digit, so codes ascend in
            // row-major encoding order
            for &(i, j) in cells.iter().rev() {
                rows[i][j] = (code % radix as u64) as u32;
                code /= radix as u64;
            }
            rows
        })
        .collect()
}

fn all_cells(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
}

fn upper_cells(n: usize) -> Vec<(usize, usize)> {
    all_cells(n).into_iter().filter(|&(i, j)| i <= j).collect()
}

fn random_rows(rng: &mut ChaCha8Rng, n: usize, radix: u32) -> Vec<Vec<u32>> {
    (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..radix)).collect()).collect()
}

fn to_matrix(ctx: &FieldCtx, rows: &[Vec<u32>]) -> HermMatrix {
    let rows: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&e| e as u64).collect()).collect();
    HermMatrix::from_encodings(ctx, &rows).expect("generated entries lie in the field")
}

fn check_budget(needed: u128, opts: &EnumOptions) -> Result<()> {
    if needed > opts.capacity {
        Err(Error::CapacityExceeded { needed, capacity: opts.capacity })
    } else {
        Ok(())
    }
}

/// Full-field predictions for one matrix.
pub fn full_field_checks(ctx: &FieldCtx, m: &HermMatrix, opts: &EnumOptions) -> Result<Vec<CheckRecord>> {
    let num0 = num_k(ctx, m, FieldElem::ZERO, opts)?;
    let null = num0_prime(ctx, m, opts)?;
    Ok(predict_full_field(ctx, m)?
        .into_iter()
        .map(|p| {
            let obs = if p.target == Target::null_range() { &null } else { &num0 };
            record(ctx, p, Observation::Range(obs))
        })
        .collect())
}

/// Subfield predictions for one matrix against a precomputed profile, for every k.
pub fn subfield_checks_with(ctx: &FieldCtx, m: &HermMatrix, prof: &SubfieldProfile) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for k in ctx.subfield_elements() {
        for p in predict_subfield(ctx, m, k)? {
            let obs = match p.target {
                Target::Fiber { value } => Observation::Fiber(prof.fiber(value)),
                Target::Range { kind: RangeKind::Num0PrimeSubfield, .. } => {
                    Observation::Range(prof.null.as_ref().ok_or(Error::NullRangeUndefined)?)
                }
                Target::Range { k, .. } => Observation::Range(prof.range(k)),
            };
            out.push(record(ctx, p, obs));
        }
    }
    Ok(out)
}

pub fn subfield_checks(ctx: &FieldCtx, m: &HermMatrix, opts: &EnumOptions) -> Result<Vec<CheckRecord>> {
    subfield_checks_with(ctx, m, &subfield_profile(ctx, m, opts)?)
}

fn sweep<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<MatrixReport> + Sync + Send) -> Result<Vec<MatrixReport>> {
    items.par_iter().map(f).collect()
}

pub fn run_verify(ctx: &FieldCtx, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let q = ctx.q();
    let q2 = ctx.q2();
    let opts = cfg.opts;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut notes = Vec::new();
    let mut resolved_form = None;
    let (n, matrices) = match cfg.scope {
        Scope::Exhaustive2x2 => {
            let n = 2;
            check_budget((q2 as u128).pow(4) * (q2 as u128).pow(2), &opts)?;
            let all = matrices_over(n, q2, &all_cells(n));
            let reports = sweep(&all, |rows| {
                let m = to_matrix(ctx, rows);
                Ok(MatrixReport { matrix: rows.clone(), label: None, checks: full_field_checks(ctx, &m, &opts)? })
            })?;
            (n, reports)
        }
        Scope::Subfield2x2 | Scope::SubfieldPatterns => {
            let (n, cells) = if cfg.scope == Scope::Subfield2x2 {
                (2, all_cells(2))
            } else {
                let n = cfg.n.unwrap_or(3);
                (n, upper_cells(n))
            };
            if n < 2 {
                return Err(Error::NullRangeUndefined);
            }
            check_budget((q as u128).pow(cells.len() as u32) * (q as u128).pow(n as u32), &opts)?;
            let all = matrices_over(n, q, &cells);
            let reports = sweep(&all, |rows| {
                let m = to_matrix(ctx, rows);
                Ok(MatrixReport { matrix: rows.clone(), label: None, checks: subfield_checks(ctx, &m, &opts)? })
            })?;
            (n, reports)
        }
        Scope::RandomNxn => {
            let n = cfg.n.unwrap_or(3);
            if n < 2 {
                return Err(Error::NullRangeUndefined);
            }
            let count = cfg.count.unwrap_or(200);
            let all: Vec<_> = (0..count).map(|_| random_rows(&mut rng, n, q)).collect();
            let full = (q2 as u128).pow(n as u32) <= opts.capacity;
            if !full {
                notes.push(format!("full-field checks skipped: q^(2n) exceeds capacity {}", opts.capacity));
            }
            let reports = sweep(&all, |rows| {
                let m = to_matrix(ctx, rows);
                let mut checks = subfield_checks(ctx, &m, &opts)?;
                if full {
                    checks.extend(full_field_checks(ctx, &m, &opts)?);
                }
                Ok(MatrixReport { matrix: rows.clone(), label: None, checks })
            })?;
            (n, reports)
        }
        Scope::RandomDiagonal => {
            let n = cfg.n.unwrap_or(3);
            if n < 2 {
                return Err(Error::NullRangeUndefined);
            }
            check_budget((q2 as u128).pow(n as u32), &opts)?;
            let count = cfg.count.unwrap_or(200);
            let all: Vec<Vec<Vec<u32>>> = (0..count)
                .map(|_| {
                    let mut rows = vec![vec![0u32; n]; n];
                    for (i, row) in rows.iter_mut().enumerate() {
                        row[i] = rng.gen_range(0..q2);
                    }
                    rows
                })
                .collect();
            let reports = sweep(&all, |rows| {
                let m = to_matrix(ctx, rows);
                Ok(MatrixReport { matrix: rows.clone(), label: None, checks: full_field_checks(ctx, &m, &opts)? })
            })?;
            (n, reports)
        }
        Scope::ScalarFibers => {
            let n_max = cfg.n.unwrap_or(4);
            let mut cases = Vec::new();
            for n in 2..=n_max {
                if (q as u128).saturating_pow(n as u32) > opts.capacity {
                    notes.push(format!("n = {n} skipped: q^n exceeds capacity {}", opts.capacity));
                    continue;
                }
                for c in 1..q {
                    let mut rows = vec![vec![0u32; n]; n];
                    for (i, row) in rows.iter_mut().enumerate() {
                        row[i] = c;
                    }
                    cases.push(rows);
                }
            }
            let reports = sweep(&cases, |rows| {
                let m = to_matrix(ctx, rows);
                let prof = subfield_profile(ctx, &m, &opts)?;
                let checks = subfield_checks_with(ctx, &m, &prof)?
                    .into_iter()
                    .filter(|c| c.citation == Basis::ScalarFibre.label() || c.citation == Basis::ScalarSubfieldNull.label())
                    .collect();
                Ok(MatrixReport { matrix: rows.clone(), label: None, checks })
            })?;
            (n_max, reports)
        }
        Scope::DirectSums => {
            let n = cfg.n.unwrap_or(3);
            if n < 2 {
                return Err(Error::Input("direct sums need n >= 2".into()));
            }
            check_budget((q2 as u128).pow(n as u32), &opts)?;
            let count = cfg.count.unwrap_or(50);
            let pairs: Vec<(Rows, Rows)> = (0..count)
                .map(|_| {
                    let x = rng.gen_range(1..n);
                    (random_rows(&mut rng, x, q2), random_rows(&mut rng, n - x, q2))
                })
                .collect();
            let reports = sweep(&pairs, |(ra, rb)| {
                let (a, b) = (to_matrix(ctx, ra), to_matrix(ctx, rb));
                let whole = HermMatrix::direct_sum(&a, &b);
                let n1a = num_k(ctx, &a, FieldElem::ONE, &opts)?;
                let n1b = num_k(ctx, &b, FieldElem::ONE, &opts)?;
                let na = if a.n() >= 2 { Some(num0_prime(ctx, &a, &opts)?) } else { None };
                let nb = if b.n() >= 2 { Some(num0_prime(ctx, &b, &opts)?) } else { None };
                let preds = predict_direct_sum(ctx, &a, &b, &n1a, &n1b, na.as_ref(), nb.as_ref())?;
                let num0 = num_k(ctx, &whole, FieldElem::ZERO, &opts)?;
                let null = num0_prime(ctx, &whole, &opts)?;
                let checks = preds
                    .into_iter()
                    .map(|p| {
                        let obs = if p.target == Target::null_range() { &null } else { &num0 };
                        record(ctx, p, Observation::Range(obs))
                    })
                    .collect();
                Ok(MatrixReport { matrix: whole.encoded_rows(), label: Some(format!("blocks {}+{}", a.n(), b.n())), checks })
            })?;
            (n, reports)
        }
        Scope::AffineLaw => {
            let n = cfg.n.unwrap_or(2);
            check_budget((q2 as u128).pow(n as u32), &opts)?;
            let count = cfg.count.unwrap_or(20);
            let cases: Vec<(Vec<Vec<u32>>, u32, u32)> = (0..count)
                .flat_map(|_| {
                    let rows = random_rows(&mut rng, n, q2);
                    let (c, d) = (rng.gen_range(0..q2), rng.gen_range(0..q2));
                    [(rows.clone(), 1, 1), (rows, c, d)]
                })
                .collect();
            let outcomes: Vec<(MatrixReport, u64, u64, u64)> = cases
                .par_iter()
                .map(|(rows, c, d)| affine_case(ctx, rows, *c, *d, &opts))
                .collect::<Result<_>>()?;
            let (mut linear, mut squared, mut total) = (0, 0, 0);
            let mut reports = Vec::new();
            for (r, l, s, t) in outcomes {
                linear += l;
                squared += s;
                total += t;
                reports.push(r);
            }
            let form = match (linear == total, squared == total) {
                (true, false) => "ck",
                (false, true) => "ck^2",
                (true, true) => "undecided",
                (false, false) => "neither",
            };
            notes.push(format!("c*k form matched {linear}/{total} instances; c*k^2 form matched {squared}/{total}"));
            resolved_form = Some(form.to_string());
            (n, reports)
        }
    };

    let mut summary: BTreeMap<String, Tally> = BTreeMap::new();
    for c in matrices.iter().flat_map(|m| &m.checks) {
        let t = summary.entry(c.citation.clone()).or_default();
        match c.verdict {
            Verdict::Pass => t.pass += 1,
            Verdict::Fail => t.fail += 1,
            Verdict::Inapplicable => t.inapplicable += 1,
        }
    }
    let failures = summary.values().map(|t| t.fail).sum();
    Ok(VerifyReport {
        scope: cfg.scope,
        p: ctx.p(),
        m: ctx.m(),
        q,
        n,
        seed: cfg.seed,
        matrices,
        summary,
        failures,
        resolved_form,
        notes,
    })
}

/// One affine-law instance: returns the report and the numbers of k for
/// which the c·k form, the c·k² form, and anything at all were checked.
fn affine_case(ctx: &FieldCtx, rows: &[Vec<u32>], c: u32, d: u32, opts: &EnumOptions) -> Result<(MatrixReport, u64, u64, u64)> {
    let m = to_matrix(ctx, rows);
    let (c, d) = (ctx.elem(c as u64)?, ctx.elem(d as u64)?);
    let shifted = m.affine(ctx, c, d);
    let mut checks = Vec::new();
    let (mut linear, mut squared, mut total) = (0, 0, 0);
    for k in ctx.subfield_elements() {
        let base = num_k(ctx, &m, k, opts)?;
        let observed = num_k(ctx, &shifted, k, opts)?;
        let image = |offset: FieldElem| {
            let mut v: Vec<FieldElem> = base.values.iter().map(|&x| ctx.add(offset, ctx.mul(d, x))).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let lin = image(ctx.mul(c, k));
        let sq = image(ctx.mul(c, ctx.mul(k, k)));
        total += 1;
        linear += u64::from(lin == observed.values);
        squared += u64::from(sq == observed.values);
        let pred = Prediction::new(Basis::AffineLaw, Target::range(RangeKind::NumK, k), Claim::ExactSet { values: lin });
        checks.push(record(ctx, pred, Observation::Range(&observed)));
    }
    let report = MatrixReport { matrix: rows.to_vec(), label: Some(format!("c={} d={}", c, d)), checks };
    Ok((report, linear, squared, total))
}
