use super::{sorted, Basis, Claim, Prediction, Target};
use crate::error::{Error, Result};
use crate::fields::{FieldCtx, FieldElem};
use crate::hermitian::HermMatrix;
use crate::ranges::RangeKind;

/// The data that determines every range of M restricted to F_q^n: the
/// diagonal and the pair sums m_ij + m_ji.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricData {
    pub diag: Vec<FieldElem>,
    sums: Vec<FieldElem>,
    n: usize,
}

impl SymmetricData {
    pub fn new(ctx: &FieldCtx, m: &HermMatrix) -> Self {
        let n = m.n();
        let mut sums = vec![FieldElem::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    sums[i * n + j] = ctx.add(m.get(i, j), m.get(j, i));
                }
            }
        }
        SymmetricData { diag: m.diag(), sums, n }
    }

    /// m_ij + m_ji for i ≠ j.
    pub fn pair_sum(&self, i: usize, j: usize) -> FieldElem {
        self.sums[i * self.n + j]
    }

    pub fn all_pair_sums_zero(&self) -> bool {
        self.sums.iter().all(|s| s.is_zero())
    }

    pub fn constant_diagonal(&self) -> bool {
        self.diag.windows(2).all(|w| w[0] == w[1])
    }

    /// Upper-triangular representative with the same data.
    pub fn to_matrix(&self) -> HermMatrix {
        let mut m = HermMatrix::diagonal(&self.diag);
        for i in 0..self.n {
            for j in i + 1..self.n {
                m.set(i, j, self.pair_sum(i, j));
            }
        }
        m
    }

    /// The index whose diagonal entry differs from all others, which agree.
    fn odd_one_out(&self) -> Option<(usize, FieldElem)> {
        (0..self.n).find_map(|o| {
            let others: Vec<FieldElem> = (0..self.n).filter(|&i| i != o).map(|i| self.diag[i]).collect();
            let rest = others[0];
            (others.iter().all(|&d| d == rest) && rest != self.diag[o]).then_some((o, rest))
        })
    }

    /// Indices i, j1 < j2 with zero pair sums at (i, j1), (i, j2) and a
    /// nonzero form in the remaining two variables after subtracting m_ii·Σx².
    fn skew_triple(&self) -> bool {
        let n = self.n;
        (0..n).any(|i| {
            (0..n).filter(|&j| j != i).any(|j1| {
                (j1 + 1..n).filter(|&j2| j2 != i).any(|j2| {
                    self.pair_sum(i, j1).is_zero()
                        && self.pair_sum(i, j2).is_zero()
                        && (self.diag[j1] != self.diag[i]
                            || self.diag[j2] != self.diag[i]
                            || !self.pair_sum(j1, j2).is_zero())
                })
            })
        })
    }
}

/// |{u ∈ F_q^n : ⟨u, u⟩ = 0}|, the zero fibre of u ↦ ⟨u, cIu⟩ for c ∈ F_q^*.
pub fn scalar_fiber_formula(q: u64, n: u32) -> u128 {
    let q = q as u128;
    if q.is_multiple_of(2) {
        return q.pow(n - 1);
    }
    let s = n / 2;
    if n % 2 == 1 {
        q.pow(2 * s)
    } else if s.is_multiple_of(2) || q % 4 == 1 {
        q.pow(2 * s - 1) + q.pow(s) - q.pow(s - 1)
    } else {
        q.pow(2 * s - 1) - q.pow(s) + q.pow(s - 1)
    }
}

/// Predictions for Num_k(M)_q, and for Num'_0(M)_q and the zero fibre when
/// k = 0. Only the diagonal and the pair sums of M are inspected.
pub fn predict_subfield(ctx: &FieldCtx, m: &HermMatrix, k: FieldElem) -> Result<Vec<Prediction>> {
    if !m.has_subfield_coeffs(ctx) {
        return Err(Error::NotSubfieldMatrix);
    }
    if !ctx.in_subfield(k) {
        return Err(Error::NotInSubfield(k.enc()));
    }
    let n = m.n();
    if n < 2 {
        return Err(Error::NullRangeUndefined);
    }
    let sym = SymmetricData::new(ctx, m);
    let q = ctx.q() as u64;
    let even = ctx.is_even();
    let one_mod_four = !even && q % 4 == 1;
    let three_mod_four = !even && q % 4 == 3;
    let zero = FieldElem::ZERO;
    let at_zero = k.is_zero();
    let range = Target::range(RangeKind::NumKSubfield, k);
    let null = Target::subfield_null_range();
    let nonzero: Vec<FieldElem> = ctx.nonzero_subfield_elements().collect();
    let all: Vec<FieldElem> = ctx.subfield_elements().collect();
    let half = q.div_ceil(2);
    let d = &sym.diag;

    let mut out = vec![Prediction::new(Basis::SubfieldNonempty, range, Claim::LowerBound { size: 1 })];
    let mut push = |basis, target, claim| out.push(Prediction::new(basis, target, claim));
    if at_zero {
        push(Basis::SubfieldNonempty, range, Claim::Membership { value: zero, inside: true });
    }

    if n == 2 {
        let s12 = sym.pair_sum(0, 1);
        if three_mod_four && at_zero {
            push(Basis::BinaryNonsquare, null, Claim::Emptiness);
        }
        if even {
            let total = ctx.add(ctx.add(d[0], d[1]), s12);
            match (total.is_zero(), at_zero) {
                (false, true) => push(Basis::BinaryEven, null, Claim::ExactSet { values: nonzero.clone() }),
                (false, false) => push(Basis::BinaryEven, range, Claim::LowerBound { size: q / 2 }),
                (true, true) => push(Basis::BinaryEven, null, Claim::ExactSet { values: vec![zero] }),
                (true, false) => {
                    let values = if s12.is_zero() { vec![ctx.mul(d[1], k)] } else { all.clone() };
                    push(Basis::BinaryEven, range, Claim::ExactSet { values });
                }
            }
            if s12.is_zero() && d[0] != d[1] && !at_zero {
                push(Basis::BinaryEven, range, Claim::ExactSet { values: all.clone() });
            }
        }
        if one_mod_four {
            if !s12.is_zero() {
                if at_zero {
                    push(Basis::BinaryCrossTerm, range, Claim::LowerBound { size: half });
                }
            } else if d[0] == d[1] {
                push(Basis::BinaryDiagonal, range, Claim::ExactSet { values: vec![ctx.mul(k, d[0])] });
                if at_zero {
                    push(Basis::BinaryDiagonal, null, Claim::Membership { value: zero, inside: true });
                }
            } else {
                push(Basis::BinaryDiagonal, range, Claim::UpperBound { size: half });
                if at_zero {
                    push(Basis::BinaryDiagonal, range, Claim::ExactCardinality { size: half });
                    push(Basis::BinaryDiagonal, null, Claim::ExactCardinality { size: (q - 1) / 2 });
                }
            }
        }
    }

    if at_zero && ((even && n >= 4) || (!even && n >= 5)) {
        let basis = if even { Basis::EvenIsotropicZero } else { Basis::OddIsotropicZero };
        push(basis, null, Claim::Membership { value: zero, inside: true });
    }

    if one_mod_four {
        if sym.all_pair_sums_zero() && sym.constant_diagonal() {
            push(Basis::OneModFourScalar, range, Claim::ExactSet { values: vec![ctx.mul(k, d[0])] });
            if at_zero {
                push(Basis::OneModFourScalar, null, Claim::Membership { value: zero, inside: true });
            }
        } else if at_zero {
            push(Basis::OneModFourGeneral, range, Claim::LowerBound { size: half });
        }
    }

    if even && at_zero {
        push(Basis::EvenNonempty, null, Claim::LowerBound { size: 1 });
        let pairs_vanish = (0..n).all(|i| {
            (i + 1..n).all(|j| ctx.add(ctx.add(d[i], d[j]), sym.pair_sum(i, j)).is_zero())
        });
        let claim = match (pairs_vanish, n) {
            (true, _) => Claim::ExactSet { values: vec![zero] },
            (false, 2) => Claim::ExactSet { values: nonzero.clone() },
            (false, 3) => Claim::Superset { values: nonzero.clone() },
            (false, _) => Claim::ExactSet { values: all.clone() },
        };
        let basis = if pairs_vanish { Basis::EvenPairSumsZero } else { Basis::EvenPairSumsShape };
        push(basis, null, claim);
    }

    if let Some(c) = m.scalar_value() {
        if !c.is_zero() && at_zero {
            push(
                Basis::ScalarFibre,
                Target::Fiber { value: zero },
                Claim::ExactCardinality { size: scalar_fiber_formula(q, n as u32) as u64 },
            );
            let claim = if n == 2 && three_mod_four { Claim::Emptiness } else { Claim::ExactSet { values: vec![zero] } };
            push(Basis::ScalarSubfieldNull, null, claim);
        }
    }

    if three_mod_four && n >= 3 && at_zero {
        push(Basis::NonsquareNonempty, null, Claim::LowerBound { size: 1 });
    }

    if !even && (n >= 3 || one_mod_four) && sym.all_pair_sums_zero() && at_zero {
        if let Some((o, rest)) = sym.odd_one_out() {
            let gap = ctx.sub(rest, d[o]);
            let mut values = vec![zero];
            for &a in &nonzero {
                if ctx.is_square(ctx.neg(ctx.div(a, gap)?))? {
                    values.push(a);
                }
            }
            push(Basis::OddOneOut, range, Claim::ExactSet { values: sorted(values) });
            let inside = n >= 4 || (n == 3 && one_mod_four);
            push(Basis::OddOneOutZero, null, Claim::Membership { value: zero, inside });
        }
    }

    if !even && n >= 3 {
        if at_zero && sym.all_pair_sums_zero() && !sym.constant_diagonal() {
            push(Basis::SkewDiagonalBound, range, Claim::LowerBound { size: half });
            // the weaker count read off the binary cross-term case
            push(Basis::SkewDiagonalBoundNonzero, range, Claim::LowerBound { size: (q - 1) / 2 });
        }
        if sym.skew_triple() {
            push(Basis::SkewTripleBound, range, Claim::LowerBound { size: half });
        }
    }
    Ok(out)
}
