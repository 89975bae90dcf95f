//! The standard Hermitian form ⟨u, v⟩ = Σ u_i^q v_i on F_{q²}^n, matrices,
//! adjoints and the level sets of u ↦ ⟨u, u⟩.

mod cone;

pub(crate) use cone::split_range;
pub use cone::{enumerate_cone, enumerate_cone_parallel, ConeIter, ConeMode, ConeSlice, ConeWalk, EnumOptions, DEFAULT_CAPACITY};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{FieldCtx, FieldElem};

/// A vector of F_{q²}^n, n ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<FieldElem>);

impl Vector {
    pub fn new(entries: Vec<FieldElem>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Input("vectors need at least one entry".into()));
        }
        Ok(Vector(entries))
    }

    pub fn zero(n: usize) -> Self {
        Vector(vec![FieldElem::ZERO; n])
    }

    /// The standard basis vector e_i (0-based).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![FieldElem::ZERO; n];
        v[i] = FieldElem::ONE;
        Vector(v)
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn in_subfield(&self, ctx: &FieldCtx) -> bool {
        self.0.iter().all(|&x| ctx.in_subfield(x))
    }

    pub fn encodings(&self) -> Vec<u32> {
        self.0.iter().map(|x| x.enc()).collect()
    }
}

impl From<Vector> for Vec<FieldElem> {
    fn from(v: Vector) -> Self {
        v.0
    }
}

/// A square n×n matrix over F_{q²}, row-major.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HermMatrix {
    n: usize,
    entries: Vec<FieldElem>,
}

impl HermMatrix {
    pub fn new(n: usize, entries: Vec<FieldElem>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("matrices need n >= 1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: entries.len() });
        }
        Ok(HermMatrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<FieldElem>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            entries.extend(row);
        }
        Self::new(n, entries)
    }

    /// Builds a matrix from encoded rows, validating every entry against `ctx`.
    pub fn from_encodings(ctx: &FieldCtx, rows: &[Vec<u64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&e| ctx.elem(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn zero(n: usize) -> Self {
        HermMatrix { n, entries: vec![FieldElem::ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, FieldElem::ONE)
    }

    pub fn scalar(n: usize, c: FieldElem) -> Self {
        Self::diagonal(&vec![c; n])
    }

    pub fn diagonal(diag: &[FieldElem]) -> Self {
        let n = diag.len();
        let mut m = Self::zero(n);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Block-diagonal A ⊕ B.
    pub fn direct_sum(a: &HermMatrix, b: &HermMatrix) -> Self {
        let n = a.n + b.n;
        let mut m = Self::zero(n);
        for i in 0..a.n {
            for j in 0..a.n {
                m.set(i, j, a.get(i, j));
            }
        }
        for i in 0..b.n {
            for j in 0..b.n {
                m.set(a.n + i, a.n + j, b.get(i, j));
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<FieldElem>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn encoded_rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.n).map(|r| r.iter().map(|x| x.enc()).collect()).collect()
    }

    /// `Some(c)` when the matrix equals cI.
    pub fn scalar_value(&self) -> Option<FieldElem> {
        let c = self.get(0, 0);
        (0..self.n)
            .all(|i| (0..self.n).all(|j| self.get(i, j) == if i == j { c } else { FieldElem::ZERO }))
            .then_some(c)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diag(&self) -> Vec<FieldElem> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn has_subfield_coeffs(&self, ctx: &FieldCtx) -> bool {
        self.entries.iter().all(|&x| ctx.in_subfield(x))
    }

    /// M·u for a raw coordinate slice.
    pub fn apply(&self, ctx: &FieldCtx, u: &[FieldElem]) -> Vec<FieldElem> {
        (0..self.n)
            .map(|i| {
                let row = &self.entries[i * self.n..(i + 1) * self.n];
                row.iter().zip(u).fold(FieldElem::ZERO, |acc, (&m, &x)| ctx.add(acc, ctx.mul(m, x)))
            })
            .collect()
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &HermMatrix) -> Result<HermMatrix> {
        self.same_size(other)?;
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let v = (0..n).fold(FieldElem::ZERO, |acc, t| ctx.add(acc, ctx.mul(self.get(i, t), other.get(t, j))));
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    pub fn add(&self, ctx: &FieldCtx, other: &HermMatrix) -> Result<HermMatrix> {
        self.same_size(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| ctx.add(a, b)).collect();
        Ok(HermMatrix { n: self.n, entries })
    }

    pub fn scale(&self, ctx: &FieldCtx, c: FieldElem) -> HermMatrix {
        HermMatrix { n: self.n, entries: self.entries.iter().map(|&a| ctx.mul(c, a)).collect() }
    }

    /// cI + dM
    pub fn affine(&self, ctx: &FieldCtx, c: FieldElem, d: FieldElem) -> HermMatrix {
        let mut out = self.scale(ctx, d);
        for i in 0..self.n {
            out.set(i, i, ctx.add(out.get(i, i), c));
        }
        out
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self, ctx: &FieldCtx) -> Result<HermMatrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero()).ok_or(Error::DivisionByZero)?;
            if pivot != col {
                for j in 0..n {
                    a.entries.swap(pivot * n + j, col * n + j);
                    inv.entries.swap(pivot * n + j, col * n + j);
                }
            }
            let scale = ctx.inv(a.get(col, col))?;
            for j in 0..n {
                a.set(col, j, ctx.mul(scale, a.get(col, j)));
                inv.set(col, j, ctx.mul(scale, inv.get(col, j)));
            }
            for r in 0..n {
                let f = a.get(r, col);
                if r == col || f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, ctx.sub(a.get(r, j), ctx.mul(f, a.get(col, j))));
                    inv.set(r, j, ctx.sub(inv.get(r, j), ctx.mul(f, inv.get(col, j))));
                }
            }
        }
        Ok(inv)
    }

    fn same_size(&self, other: &HermMatrix) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.n, got: other.n })
        }
    }
}

/// ⟨u, v⟩ = Σ u_i^q v_i.
pub fn inner(ctx: &FieldCtx, u: &Vector, v: &Vector) -> Result<FieldElem> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch { expected: u.len(), got: v.len() });
    }
    Ok(inner_raw(ctx, u.entries(), v.entries()))
}

#[inline]
pub(crate) fn inner_raw(ctx: &FieldCtx, u: &[FieldElem], v: &[FieldElem]) -> FieldElem {
    u.iter().zip(v).fold(FieldElem::ZERO, |acc, (&a, &b)| ctx.add(acc, ctx.mul(ctx.frobenius(a), b)))
}

/// ⟨u, Mu⟩ without allocation. `u` must have length n.
#[inline]
pub fn form_value(ctx: &FieldCtx, m: &HermMatrix, u: &[FieldElem]) -> FieldElem {
    let n = m.n;
    let mut acc = FieldElem::ZERO;
    for i in 0..n {
        let ui = u[i];
        if ui.is_zero() {
            continue;
        }
        let row = &m.entries[i * n..(i + 1) * n];
        let mu = row.iter().zip(u).fold(FieldElem::ZERO, |s, (&a, &x)| ctx.add(s, ctx.mul(a, x)));
        acc = ctx.add(acc, ctx.mul(ctx.frobenius(ui), mu));
    }
    acc
}

/// M† = (m_ji^q).
pub fn dagger(ctx: &FieldCtx, m: &HermMatrix) -> HermMatrix {
    let n = m.n;
    let mut out = HermMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, ctx.frobenius(m.get(j, i)));
        }
    }
    out
}

pub fn is_unitary(ctx: &FieldCtx, u: &HermMatrix) -> bool {
    let prod = dagger(ctx, u).mul(ctx, u).expect("same size");
    prod == HermMatrix::identity(u.n)
}

/// U†MU for unitary U.
pub fn conj_by_unitary(ctx: &FieldCtx, m: &HermMatrix, u: &HermMatrix) -> Result<HermMatrix> {
    if m.n != u.n {
        return Err(Error::DimensionMismatch { expected: m.n, got: u.n });
    }
    if !is_unitary(ctx, u) {
        return Err(Error::NotUnitary);
    }
    dagger(ctx, u).mul(ctx, m)?.mul(ctx, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(ctx: &FieldCtx, n: usize, rng: &mut ChaCha8Rng) -> HermMatrix {
        let entries = (0..n * n).map(|_| ctx.elem(rng.gen_range(0..ctx.q2()) as u64).unwrap()).collect();
        HermMatrix::new(n, entries).unwrap()
    }

    fn random_vector(ctx: &FieldCtx, n: usize, rng: &mut ChaCha8Rng) -> Vector {
        Vector::new((0..n).map(|_| ctx.elem(rng.gen_range(0..ctx.q2()) as u64).unwrap()).collect()).unwrap()
    }

    #[test]
    fn inner_examples() {
        let f4 = FieldCtx::build_tower(2, 1).unwrap();
        let e1 = Vector::basis(2, 0);
        assert_eq!(inner(&f4, &e1, &e1).unwrap(), FieldElem::ONE);
        let g = f4.elem(2).unwrap();
        let u = Vector::new(vec![g, FieldElem::ONE]).unwrap();
        let v = Vector::new(vec![FieldElem::ONE, g]).unwrap();
        assert_eq!(inner(&f4, &u, &v).unwrap(), FieldElem::ONE);
        assert!(matches!(inner(&f4, &u, &Vector::zero(3)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn self_inner_is_in_subfield_and_form_is_hermitian() {
        let f9 = FieldCtx::build_tower(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let u = random_vector(&f9, 3, &mut rng);
            let w = random_vector(&f9, 3, &mut rng);
            let uu = inner(&f9, &u, &u).unwrap();
            assert_eq!(f9.frobenius(uu), uu);
            assert_eq!(inner(&f9, &u, &w).unwrap(), f9.frobenius(inner(&f9, &w, &u).unwrap()));
        }
    }

    #[test]
    fn dagger_examples_and_adjoint_identity() {
        let f4 = FieldCtx::build_tower(2, 1).unwrap();
        let g = f4.elem(2).unwrap();
        let z = FieldElem::ZERO;
        let m = HermMatrix::from_rows(vec![vec![z, g], vec![z, z]]).unwrap();
        let expected = HermMatrix::from_rows(vec![vec![z, z], vec![f4.elem(3).unwrap(), z]]).unwrap();
        assert_eq!(dagger(&f4, &m), expected);
        let d = HermMatrix::diagonal(&[FieldElem::ONE, z]);
        assert_eq!(dagger(&f4, &d), d);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_matrix(&f4, 2, &mut rng);
        let md = dagger(&f4, &m);
        assert_eq!(dagger(&f4, &md), m);
        for a in 0..16u64 {
            for b in 0..16u64 {
                let u = Vector::new(vec![f4.elem(a % 4).unwrap(), f4.elem(a / 4).unwrap()]).unwrap();
                let v = Vector::new(vec![f4.elem(b % 4).unwrap(), f4.elem(b / 4).unwrap()]).unwrap();
                let mv = Vector::new(m.apply(&f4, v.entries())).unwrap();
                let mdu = Vector::new(md.apply(&f4, u.entries())).unwrap();
                assert_eq!(inner(&f4, &u, &mv).unwrap(), inner(&f4, &mdu, &v).unwrap());
            }
        }
    }

    #[test]
    fn unitary_predicate() {
        let f9 = FieldCtx::build_tower(3, 1).unwrap();
        assert!(is_unitary(&f9, &HermMatrix::identity(3)));
        let z = FieldElem::ZERO;
        let o = FieldElem::ONE;
        let perm = HermMatrix::from_rows(vec![vec![z, o], vec![o, z]]).unwrap();
        assert!(is_unitary(&f9, &perm));
        for c in f9.nonzero_elements() {
            let d = HermMatrix::scalar(2, c);
            assert_eq!(is_unitary(&f9, &d), f9.norm(c) == o);
            assert_eq!(is_unitary(&f9, &dagger(&f9, &d)), is_unitary(&f9, &d));
        }
    }

    #[test]
    fn conjugation() {
        let f9 = FieldCtx::build_tower(3, 1).unwrap();
        let z = FieldElem::ZERO;
        let o = FieldElem::ONE;
        let (a, b) = (f9.elem(4).unwrap(), f9.elem(7).unwrap());
        let m = HermMatrix::diagonal(&[a, b]);
        assert_eq!(conj_by_unitary(&f9, &m, &HermMatrix::identity(2)).unwrap(), m);
        let perm = HermMatrix::from_rows(vec![vec![z, o], vec![o, z]]).unwrap();
        assert_eq!(conj_by_unitary(&f9, &m, &perm).unwrap(), HermMatrix::diagonal(&[b, a]));
        let not_unitary = HermMatrix::scalar(2, f9.elem(4).unwrap());
        assert!(matches!(conj_by_unitary(&f9, &m, &not_unitary), Err(Error::NotUnitary)));
    }

    #[test]
    fn inverse_round_trip() {
        let f = FieldCtx::build_tower(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut done = 0;
        while done < 20 {
            let m = random_matrix(&f, 3, &mut rng);
            if let Ok(inv) = m.inverse(&f) {
                assert_eq!(m.mul(&f, &inv).unwrap(), HermMatrix::identity(3));
                done += 1;
            }
        }
        assert!(HermMatrix::zero(2).inverse(&f).is_err());
    }
}
