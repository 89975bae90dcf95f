//! The field tower F_p ⊂ F_q ⊂ F_{q²}.
//!
//! F_q is F_p[y]/(f(y)) and F_{q²} is F_q[x]/(x² + c₁x + c₀), with both moduli
//! chosen as the lexicographically smallest monic irreducibles so that element
//! encodings are reproducible. An element a₀ + a₁x of F_{q²} is encoded as
//! `enc = enc(a₀) + q·enc(a₁)`, and an element of F_q as the base-p number
//! formed by its F_p coefficients (constant term least significant). With this
//! layout F_q is exactly the set of encodings below q.

mod poly;

use std::borrow::Cow;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default size limit (in elements of F_{q²}) for building lookup tables.
pub const DEFAULT_TABLE_THRESHOLD: u64 = 1 << 20;

/// Full addition and multiplication tables are only built up to this order.
const CAYLEY_LIMIT: u64 = 256;

/// An element of F_{q²}, stored as its canonical encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn enc(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub(crate) fn from_enc_unchecked(enc: u32) -> Self {
        FieldElem(enc)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Defining data of a tower. `base_modulus` has m + 1 coefficients over F_p
/// (low degree first, monic); `ext_modulus` has three F_q coefficients, each
/// given as m coefficients over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub base_modulus: Vec<u32>,
    pub ext_modulus: Vec<Vec<u32>>,
}

impl FieldSpec {
    /// The tower with canonical (smallest irreducible) moduli.
    pub fn canonical(p: u32, m: u32) -> Result<Self> {
        check_parameters(p, m)?;
        let base_modulus = poly::smallest_irreducible(p, m);
        let base = BaseField::new(p, m, base_modulus.clone(), 0);
        let (c0, c1) = smallest_quadratic(&base);
        Ok(FieldSpec {
            p,
            m,
            ext_modulus: vec![base.digits(c0), base.digits(c1), base.digits(1)],
            base_modulus,
        })
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.m)
    }
}

/// Construction knobs for [`FieldCtx`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldOptions {
    /// Lookup tables (discrete logs, norm fibres, square roots, Cayley tables)
    /// are only built when q² is at most this many elements.
    pub table_threshold: u64,
}

impl Default for FieldOptions {
    fn default() -> Self {
        FieldOptions { table_threshold: DEFAULT_TABLE_THRESHOLD }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_parameters(p: u32, m: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    let exponent = 2 * m;
    match (p as u64).checked_pow(exponent) {
        Some(q2) if q2 <= u32::MAX as u64 => Ok(()),
        _ => Err(Error::FieldTooLarge { p, exponent }),
    }
}

/// F_q = F_p[y]/(f), elements as base-p encodings.
#[derive(Clone, Debug)]
struct BaseField {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    add_table: Vec<u32>,
    mul_table: Vec<u32>,
}

impl BaseField {
    fn new(p: u32, m: u32, modulus: Vec<u32>, table_threshold: u64) -> Self {
        let q = p.pow(m);
        let mut base = BaseField { p, m, q, modulus, add_table: Vec::new(), mul_table: Vec::new() };
        let cells = q as u64 * q as u64;
        if cells <= table_threshold.min(CAYLEY_LIMIT * CAYLEY_LIMIT) {
            let mut add = Vec::with_capacity(cells as usize);
            let mut mul = Vec::with_capacity(cells as usize);
            for a in 0..q {
                for b in 0..q {
                    add.push(base.add_slow(a, b));
                    mul.push(base.mul_slow(a, b));
                }
            }
            base.add_table = add;
            base.mul_table = mul;
        }
        base
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        (0..self.m)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn encode_digits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0u32, |acc, &d| acc * self.p + d)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place = place.wrapping_mul(self.p);
            a /= self.p;
            b /= self.p;
        }
        out
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let prod = poly::mul_mod(&self.digits(a), &self.digits(b), &self.modulus, self.p);
        self.encode_digits(&prod)
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        if self.add_table.is_empty() {
            self.add_slow(a, b)
        } else {
            self.add_table[(a * self.q + b) as usize]
        }
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if self.mul_table.is_empty() {
            self.mul_slow(a, b)
        } else {
            self.mul_table[(a * self.q + b) as usize]
        }
    }

    fn neg(&self, a: u32) -> u32 {
        if self.m == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let digits: Vec<u32> = self.digits(a).into_iter().map(|d| (self.p - d) % self.p).collect();
        self.encode_digits(&digits)
    }

    fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.pow(a, self.q as u64 - 2)
    }
}

/// Lexicographically smallest (c₀, c₁) with x² + c₁x + c₀ irreducible over F_q,
/// i.e. without a root in F_q.
fn smallest_quadratic(base: &BaseField) -> (u32, u32) {
    for c0 in 0..base.q {
        for c1 in 0..base.q {
            let has_root = (0..base.q).any(|t| {
                let v = base.add(base.add(base.mul(t, t), base.mul(c1, t)), c0);
                v == 0
            });
            if !has_root {
                return (c0, c1);
            }
        }
    }
    unreachable!("an irreducible quadratic exists over every finite field")
}

#[derive(Clone, Debug)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// An immutable description of the tower together with its lookup tables.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    spec: FieldSpec,
    options: FieldOptions,
    base: BaseField,
    q: u32,
    q2: u32,
    c0: u32,
    c1: u32,
    generator: FieldElem,
    ext_add: Vec<u32>,
    ext_mul: Vec<u32>,
    logs: Option<LogTables>,
    norm_fibers: Option<Vec<Vec<FieldElem>>>,
    base_roots: Option<Vec<Vec<FieldElem>>>,
}

impl FieldCtx {
    /// Builds F_p ⊂ F_{p^m} ⊂ F_{p^{2m}} with canonical moduli.
    pub fn build_tower(p: u32, m: u32) -> Result<Self> {
        Self::with_options(p, m, FieldOptions::default())
    }

    pub fn with_options(p: u32, m: u32, options: FieldOptions) -> Result<Self> {
        Self::from_spec(&FieldSpec::canonical(p, m)?, options)
    }

    /// Builds the tower described by `spec`, validating both moduli.
    pub fn from_spec(spec: &FieldSpec, options: FieldOptions) -> Result<Self> {
        let FieldSpec { p, m, .. } = *spec;
        check_parameters(p, m)?;
        let bm = &spec.base_modulus;
        if bm.len() != m as usize + 1
            || bm[m as usize] != 1
            || bm.iter().any(|&c| c >= p)
            || !poly::is_irreducible(bm, p)
        {
            return Err(Error::BadModulus(format!("{bm:?}")));
        }
        let base = BaseField::new(p, m, bm.clone(), options.table_threshold);
        let em = &spec.ext_modulus;
        let bad_ext = || Error::BadModulus(format!("{em:?}"));
        if em.len() != 3 || em.iter().any(|c| c.len() != m as usize || c.iter().any(|&d| d >= p)) {
            return Err(bad_ext());
        }
        if base.encode_digits(&em[2]) != 1 {
            return Err(bad_ext());
        }
        let c0 = base.encode_digits(&em[0]);
        let c1 = base.encode_digits(&em[1]);
        let reducible = (0..base.q).any(|t| base.add(base.add(base.mul(t, t), base.mul(c1, t)), c0) == 0);
        if reducible {
            return Err(bad_ext());
        }

        let q = base.q;
        let q2 = q * q;
        let mut ctx = FieldCtx {
            spec: spec.clone(),
            options,
            base,
            q,
            q2,
            c0,
            c1,
            generator: FieldElem::ONE,
            ext_add: Vec::new(),
            ext_mul: Vec::new(),
            logs: None,
            norm_fibers: None,
            base_roots: None,
        };
        ctx.generator = ctx.find_generator();
        ctx.build_tables();
        Ok(ctx)
    }

    fn build_tables(&mut self) {
        let q2 = self.q2 as u64;
        if q2 > self.options.table_threshold {
            return;
        }
        if q2 <= CAYLEY_LIMIT {
            let mut add = Vec::with_capacity((q2 * q2) as usize);
            let mut mul = Vec::with_capacity((q2 * q2) as usize);
            for a in 0..self.q2 {
                for b in 0..self.q2 {
                    add.push(self.add_slow(a, b));
                    mul.push(self.mul_slow(a, b));
                }
            }
            self.ext_add = add;
            self.ext_mul = mul;
        }

        let order = self.q2 as usize - 1;
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![0u32; self.q2 as usize];
        let mut x = FieldElem::ONE;
        for i in 0..order {
            exp.push(x.0);
            log[x.0 as usize] = i as u32;
            x = self.mul(x, self.generator);
        }
        self.logs = Some(LogTables { exp, log });

        let mut fibers = vec![Vec::new(); self.q as usize];
        for x in self.elements() {
            fibers[self.norm(x).0 as usize].push(x);
        }
        self.norm_fibers = Some(fibers);

        let mut roots = vec![Vec::new(); self.q as usize];
        for b in self.subfield_elements() {
            roots[self.mul(b, b).0 as usize].push(b);
        }
        self.base_roots = Some(roots);
    }

    fn find_generator(&self) -> FieldElem {
        let order = self.q2 as u64 - 1;
        let primes = prime_factors(order);
        (1..self.q2)
            .map(FieldElem)
            .find(|&g| primes.iter().all(|&r| self.pow_slow(g, order / r) != FieldElem::ONE))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn options(&self) -> FieldOptions {
        self.options
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn m(&self) -> u32 {
        self.spec.m
    }

    /// Order of the subfield F_q.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of F_{q²}.
    pub fn q2(&self) -> u32 {
        self.q2
    }

    pub fn is_even(&self) -> bool {
        self.spec.p == 2
    }

    /// A fixed generator of the cyclic group F_{q²}^*: the one with the
    /// smallest encoding.
    pub fn generator(&self) -> FieldElem {
        self.generator
    }

    pub fn has_log_tables(&self) -> bool {
        self.logs.is_some()
    }

    /// Validated conversion from an encoding.
    pub fn elem(&self, enc: u64) -> Result<FieldElem> {
        if enc < self.q2 as u64 {
            Ok(FieldElem(enc as u32))
        } else {
            Err(Error::OutOfField { enc, order: self.q2 })
        }
    }

    /// Validated conversion of an encoding into the subfield F_q.
    pub fn subfield_elem(&self, enc: u64) -> Result<FieldElem> {
        let x = self.elem(enc)?;
        self.require_subfield(x)?;
        Ok(x)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (0..self.q2).map(FieldElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (1..self.q2).map(FieldElem)
    }

    pub fn subfield_elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (0..self.q).map(FieldElem)
    }

    pub fn nonzero_subfield_elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (1..self.q).map(FieldElem)
    }

    pub fn in_subfield(&self, x: FieldElem) -> bool {
        x.0 < self.q
    }

    fn require_subfield(&self, x: FieldElem) -> Result<()> {
        if self.in_subfield(x) {
            Ok(())
        } else {
            Err(Error::NotInSubfield(x.0))
        }
    }

    /// Splits x = a₀ + a₁·x into its two F_q coordinates.
    pub fn coords(&self, x: FieldElem) -> (FieldElem, FieldElem) {
        (FieldElem(x.0 % self.q), FieldElem(x.0 / self.q))
    }

    pub fn from_coords(&self, a0: FieldElem, a1: FieldElem) -> Result<FieldElem> {
        self.require_subfield(a0)?;
        self.require_subfield(a1)?;
        Ok(FieldElem(a0.0 + self.q * a1.0))
    }

    /// All 2m coefficients over F_p, in encoding order.
    pub fn prime_coeffs(&self, x: FieldElem) -> Vec<u32> {
        let (a0, a1) = self.coords(x);
        let mut out = self.base.digits(a0.0);
        out.extend(self.base.digits(a1.0));
        out
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (a0, a1) = (a % self.q, a / self.q);
        let (b0, b1) = (b % self.q, b / self.q);
        self.base.add(a0, b0) + self.q * self.base.add(a1, b1)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let bf = &self.base;
        let (a0, a1) = (a % self.q, a / self.q);
        let (b0, b1) = (b % self.q, b / self.q);
        let hi = bf.mul(a1, b1);
        // x² = -c₁x - c₀
        let r0 = bf.sub(bf.mul(a0, b0), bf.mul(self.c0, hi));
        let r1 = bf.sub(bf.add(bf.mul(a0, b1), bf.mul(a1, b0)), bf.mul(self.c1, hi));
        r0 + self.q * r1
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.ext_add.is_empty() {
            FieldElem(self.add_slow(a.0, b.0))
        } else {
            FieldElem(self.ext_add[(a.0 * self.q2 + b.0) as usize])
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if !self.ext_mul.is_empty() {
            return FieldElem(self.ext_mul[(a.0 * self.q2 + b.0) as usize]);
        }
        if let Some(t) = &self.logs {
            if a.0 == 0 || b.0 == 0 {
                return FieldElem::ZERO;
            }
            let order = self.q2 as u64 - 1;
            let e = (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % order;
            return FieldElem(t.exp[e as usize]);
        }
        FieldElem(self.mul_slow(a.0, b.0))
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let (a0, a1) = self.coords(a);
        FieldElem(self.base.neg(a0.0) + self.q * self.base.neg(a1.0))
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.logs {
            let order = self.q2 - 1;
            let l = t.log[a.0 as usize];
            return Ok(FieldElem(t.exp[((order - l) % order) as usize]));
        }
        // x⁻¹ = x^q / N(x), with N(x) in F_q
        let n = self.norm(a);
        Ok(self.mul(self.frobenius(a), FieldElem(self.base.inv(n.0))))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    fn pow_slow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut acc = FieldElem::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = FieldElem(self.mul_slow(acc.0, b.0));
            }
            b = FieldElem(self.mul_slow(b.0, b.0));
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if a.is_zero() {
            return if e == 0 { FieldElem::ONE } else { FieldElem::ZERO };
        }
        let order = self.q2 as u64 - 1;
        if let Some(t) = &self.logs {
            let l = t.log[a.0 as usize] as u64;
            let idx = ((l as u128 * e as u128) % order as u128) as usize;
            return FieldElem(t.exp[idx]);
        }
        let mut acc = FieldElem::ONE;
        let mut b = a;
        let mut e = e % order;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// The relative Frobenius t ↦ t^q.
    pub fn frobenius(&self, x: FieldElem) -> FieldElem {
        // x^q is the other root of the modulus: -c₁ - x
        let (a0, a1) = self.coords(x);
        let bf = &self.base;
        let r0 = bf.sub(a0.0, bf.mul(a1.0, self.c1));
        let r1 = bf.neg(a1.0);
        FieldElem(r0 + self.q * r1)
    }

    /// The norm t ↦ t^{q+1} onto F_q.
    pub fn norm(&self, x: FieldElem) -> FieldElem {
        let (a0, a1) = self.coords(x);
        let bf = &self.base;
        let (a0, a1) = (a0.0, a1.0);
        let v = bf.add(bf.sub(bf.mul(a0, a0), bf.mul(self.c1, bf.mul(a0, a1))), bf.mul(self.c0, bf.mul(a1, a1)));
        FieldElem(v)
    }

    /// All t with t^{q+1} = a, sorted by encoding.
    pub fn norm_preimages(&self, a: FieldElem) -> Result<Vec<FieldElem>> {
        Ok(self.norm_fiber(a)?.into_owned())
    }

    /// Borrowing variant of [`norm_preimages`](Self::norm_preimages).
    pub fn norm_fiber(&self, a: FieldElem) -> Result<Cow<'_, [FieldElem]>> {
        self.require_subfield(a)?;
        if let Some(fibers) = &self.norm_fibers {
            return Ok(Cow::Borrowed(&fibers[a.0 as usize]));
        }
        if a.is_zero() {
            return Ok(Cow::Owned(vec![FieldElem::ZERO]));
        }
        // a = γ^{(q+1)j}; the fibre is γ^{j + i(q-1)}, 0 <= i <= q.
        let q = self.q as u64;
        let h = self.pow(self.generator, q + 1);
        let mut power = FieldElem::ONE;
        let mut j = 0u64;
        while power != a {
            power = self.mul(power, h);
            j += 1;
            debug_assert!(j < q);
        }
        let step = self.pow(self.generator, q - 1);
        let mut root = self.pow(self.generator, j);
        let mut out = Vec::with_capacity(self.q as usize + 1);
        for _ in 0..=q {
            out.push(root);
            root = self.mul(root, step);
        }
        out.sort_unstable();
        Ok(Cow::Owned(out))
    }

    /// Θ = {t : t^{q+1} = -1}.
    pub fn theta(&self) -> Vec<FieldElem> {
        self.norm_preimages(self.neg(FieldElem::ONE)).expect("-1 lies in F_q")
    }

    /// Square roots of `a` inside F_q, sorted: one root in characteristic 2,
    /// two or none for odd q (only 0 for a = 0).
    pub fn sqrt_subfield(&self, a: FieldElem) -> Result<Vec<FieldElem>> {
        Ok(self.subfield_roots(a)?.into_owned())
    }

    pub(crate) fn subfield_roots(&self, a: FieldElem) -> Result<Cow<'_, [FieldElem]>> {
        self.require_subfield(a)?;
        if let Some(roots) = &self.base_roots {
            return Ok(Cow::Borrowed(&roots[a.0 as usize]));
        }
        if self.is_even() {
            // squaring is bijective; the inverse is a ↦ a^{q/2}
            return Ok(Cow::Owned(vec![FieldElem(self.base.pow(a.0, self.q as u64 / 2))]));
        }
        Ok(Cow::Owned(self.subfield_elements().filter(|&b| self.base.mul(b.0, b.0) == a.0).collect()))
    }

    /// Whether `a` ∈ F_q is a square in F_q. Always true in characteristic 2.
    pub fn is_square(&self, a: FieldElem) -> Result<bool> {
        Ok(!self.subfield_roots(a)?.is_empty())
    }

    /// Some (x₁, x₂) ∈ F_q² with a₁x₁² + a₂x₂² = k, for odd q.
    pub fn two_square_rep(&self, a1: FieldElem, a2: FieldElem, k: FieldElem) -> Result<(FieldElem, FieldElem)> {
        if self.is_even() {
            return Err(Error::EvenCharacteristic);
        }
        for x in [a1, a2, k] {
            self.require_subfield(x)?;
        }
        if a1.is_zero() || a2.is_zero() {
            return Err(Error::Input("two-square coefficients must be nonzero".into()));
        }
        let a2_inv = self.inv(a2)?;
        for x1 in self.subfield_elements() {
            let rest = self.mul(self.sub(k, self.mul(a1, self.mul(x1, x1))), a2_inv);
            if let Some(&x2) = self.subfield_roots(rest)?.first() {
                let lhs = self.add(self.mul(a1, self.mul(x1, x1)), self.mul(a2, self.mul(x2, x2)));
                assert_eq!(lhs, k, "two-square representation failed substitution");
                return Ok((x1, x2));
            }
        }
        unreachable!("a₁x₁² + a₂x₂² = k is solvable over every finite field of odd order")
    }

    /// Human-readable polynomial form: `x` generates F_{q²} over F_q and, for
    /// m > 1, `y` generates F_q over F_p.
    pub fn format_elem(&self, v: FieldElem) -> String {
        let (a0, a1) = self.coords(v);
        let base = |a: FieldElem| -> String {
            let digits = self.base.digits(a.0);
            let terms: Vec<String> = digits
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, &d)| d != 0)
                .map(|(i, &d)| match (i, d) {
                    (0, d) => d.to_string(),
                    (1, 1) => "y".to_string(),
                    (1, d) => format!("{d}y"),
                    (i, 1) => format!("y^{i}"),
                    (i, d) => format!("{d}y^{i}"),
                })
                .collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join("+")
            }
        };
        let mut parts = Vec::new();
        if !a1.is_zero() {
            let c = base(a1);
            parts.push(if c == "1" {
                "x".to_string()
            } else if c.contains('+') {
                format!("({c})x")
            } else {
                format!("{c}x")
            });
        }
        if !a0.is_zero() || parts.is_empty() {
            parts.push(base(a0));
        }
        parts.join("+")
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
