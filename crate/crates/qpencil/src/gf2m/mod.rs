//! Exact arithmetic in GF(2^m).
//!
//! Elements are bit-packed polynomials over GF(2) reduced modulo an explicit
//! irreducible modulus. For m <= 16 the field carries log/exp tables keyed to
//! a generator; larger fields fall back to carryless multiplication. All
//! values are immutable and every operation is a pure function.

mod binform;
mod poly;
mod truncated;

pub use binform::{BinaryForm, ProjPoint};
pub use poly::UniPoly;
pub use truncated::TruncatedElement;

use crate::error::{Error, Result};
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Largest m for which log/exp tables are built.
const TABLE_MAX_M: u32 = 16;
/// Largest m for which roots are found by exhaustive scan (2^m <= 2^16).
pub(crate) const SCAN_MAX_M: u32 = 16;
/// Hard cap so carryless products stay inside u128.
const MAX_M: u32 = 48;

// ---------------------------------------------------------------------------
// Raw GF(2)[x] polynomials packed into integers.
// ---------------------------------------------------------------------------

/// Degree of the bit-packed polynomial, -1 for the zero polynomial.
fn pdeg(a: u128) -> i32 {
    127 - a.leading_zeros() as i32
}

/// Carryless (XOR) product of two bit-packed polynomials.
fn clmul(a: u64, b: u64) -> u128 {
    let mut acc: u128 = 0;
    let mut b = b;
    let mut shift = 0u32;
    while b != 0 {
        let tz = b.trailing_zeros();
        shift += tz;
        acc ^= (a as u128) << shift;
        b >>= tz + 1;
        shift += 1;
    }
    acc
}

/// Remainder of `a` modulo the degree-m polynomial `modulus` (leading bit set).
fn pmod(mut a: u128, modulus: u64, m: u32) -> u64 {
    let mut d = pdeg(a);
    while d >= m as i32 {
        a ^= (modulus as u128) << (d as u32 - m);
        d = pdeg(a);
    }
    a as u64
}

fn pmulmod(a: u64, b: u64, modulus: u64, m: u32) -> u64 {
    pmod(clmul(a, b), modulus, m)
}

/// Rabin irreducibility test for a degree-m polynomial over GF(2).
fn is_irreducible(modulus: u64, m: u32) -> bool {
    if m == 0 || pdeg(modulus as u128) != m as i32 {
        return false;
    }
    if m == 1 {
        return true;
    }
    // x^(2^k) mod modulus, starting from x.
    let frob_steps = |k: u32| -> u64 {
        let mut h = pmod(2, modulus, m);
        for _ in 0..k {
            h = pmulmod(h, h, modulus, m);
        }
        h
    };
    // x^(2^m) == x (mod modulus)
    if frob_steps(m) != pmod(2, modulus, m) {
        return false;
    }
    // gcd(x^(2^(m/p)) - x, modulus) == 1 for every prime p | m
    let mut primes = Vec::new();
    let mut n = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    for p in primes {
        let h = frob_steps(m / p) ^ pmod(2, modulus, m);
        if pgcd(h, modulus) != 1 {
            return false;
        }
    }
    true
}

/// gcd of two bit-packed polynomials.
fn pgcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = if pdeg(a as u128) >= pdeg(b as u128) {
            pmod_poly(a, b)
        } else {
            a
        };
        a = b;
        b = r;
    }
    a
}

/// Remainder of a mod b for bit-packed polynomials (b != 0).
fn pmod_poly(mut a: u64, b: u64) -> u64 {
    let db = pdeg(b as u128);
    loop {
        let da = pdeg(a as u128);
        if da < db {
            return a;
        }
        a ^= b << (da - db) as u32;
    }
}

/// Smallest-bit-encoding irreducible polynomial of degree m over GF(2).
fn smallest_irreducible(m: u32) -> u64 {
    let lo = 1u64 << m;
    for c in lo..(lo << 1) {
        if is_irreducible(c, m) {
            return c;
        }
    }
    unreachable!("an irreducible polynomial of degree {m} always exists")
}

// ---------------------------------------------------------------------------
// FieldSpec
// ---------------------------------------------------------------------------

struct Tables {
    /// exp[i] = g^i for 0 <= i < 2(q-1); doubled so products skip the mod.
    exp: Vec<u64>,
    /// log[bits] = i with g^i = bits; log[0] is a sentinel.
    log: Vec<u32>,
}

struct SpecInner {
    m: u32,
    modulus: u64,
    tables: Option<Tables>,
}

/// A concrete GF(2^m): extension degree plus irreducible modulus.
///
/// Cheap to clone (shared handle); equality is structural on (m, modulus).
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<SpecInner>,
    // Solver for the F2-linear map U -> U^2 + U, built on first use.
    quad: Arc<OnceLock<QuadSolver>>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.inner.m == other.inner.m && self.inner.modulus == other.inner.modulus
    }
}
impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.m.hash(state);
        self.inner.modulus.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FieldSpec {
    /// GF(2^m) with the canonical (smallest-encoding) irreducible modulus.
    pub fn gf(m: u32) -> FieldSpec {
        Self::with_modulus(m, smallest_irreducible(m)).expect("canonical modulus is irreducible")
    }

    /// GF(2^m) with an explicit modulus; rejects reducible or ill-sized input.
    pub fn with_modulus(m: u32, modulus: u64) -> Result<FieldSpec> {
        if m == 0 || m > MAX_M {
            return Err(Error::Parse(format!("extension degree m={m} out of range 1..={MAX_M}")));
        }
        if pdeg(modulus as u128) != m as i32 {
            return Err(Error::Parse(format!(
                "modulus 0x{modulus:x} does not have degree {m}"
            )));
        }
        if !is_irreducible(modulus, m) {
            return Err(Error::Parse(format!("modulus 0x{modulus:x} is reducible")));
        }
        Ok(Self::build(m, modulus))
    }

    /// Skips the irreducibility check. Exists so selfcheck can demonstrate
    /// that a corrupted modulus is caught by the field-axiom suite.
    pub fn with_modulus_unchecked(m: u32, modulus: u64) -> FieldSpec {
        Self::build(m, modulus)
    }

    fn build(m: u32, modulus: u64) -> FieldSpec {
        let tables = if m <= TABLE_MAX_M && is_irreducible(modulus, m) {
            Some(Self::build_tables(m, modulus))
        } else {
            None
        };
        FieldSpec {
            inner: Arc::new(SpecInner { m, modulus, tables }),
            quad: Arc::new(OnceLock::new()),
        }
    }

    fn build_tables(m: u32, modulus: u64) -> Tables {
        let qm1: u64 = (1u64 << m) - 1;
        // Factor q-1 to certify generator order.
        let mut fac = Vec::new();
        let mut n = qm1;
        let mut p = 2u64;
        while p * p <= n {
            if n % p == 0 {
                fac.push(p);
                while n % p == 0 {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            fac.push(n);
        }
        let powmod = |mut b: u64, mut e: u64| -> u64 {
            let mut acc = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = pmulmod(acc, b, modulus, m);
                }
                b = pmulmod(b, b, modulus, m);
                e >>= 1;
            }
            acc
        };
        let mut gen = 0u64;
        for cand in 2..=qm1 {
            if fac.iter().all(|&p| powmod(cand, qm1 / p) != 1) {
                gen = cand;
                break;
            }
        }
        if gen == 0 {
            gen = 1; // q = 2: trivial group
        }
        let mut exp = Vec::with_capacity(2 * qm1 as usize);
        let mut log = vec![0u32; (qm1 + 1) as usize];
        let mut cur = 1u64;
        for i in 0..qm1 {
            exp.push(cur);
            log[cur as usize] = i as u32;
            cur = pmulmod(cur, gen, modulus, m);
        }
        debug_assert_eq!(cur, 1, "generator order must be q-1");
        for i in 0..qm1 {
            let v = exp[i as usize];
            exp.push(v);
        }
        Tables { exp, log }
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    pub fn modulus(&self) -> u64 {
        self.inner.modulus
    }

    /// Number of field elements, 2^m.
    pub fn order(&self) -> u128 {
        1u128 << self.inner.m
    }

    /// Canonical spec string, e.g. "F2^4/0x13".
    pub fn name(&self) -> String {
        format!("F2^{}/0x{:x}", self.inner.m, self.inner.modulus)
    }

    /// Parses the canonical spec string "F2^m/0x<hex>".
    pub fn parse(s: &str) -> Result<FieldSpec> {
        let rest = s
            .strip_prefix("F2^")
            .ok_or_else(|| Error::Parse(format!("field spec {s:?} must start with \"F2^\"")))?;
        let (m_str, mod_str) = rest
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("field spec {s:?} missing '/'" )))?;
        let m: u32 = m_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad extension degree in {s:?}")))?;
        let hex = mod_str
            .strip_prefix("0x")
            .ok_or_else(|| Error::Parse(format!("modulus in {s:?} must be 0x-hex")))?;
        let modulus = u64::from_str_radix(hex, 16)
            .map_err(|_| Error::Parse(format!("bad modulus hex in {s:?}")))?;
        FieldSpec::with_modulus(m, modulus)
    }

    /// Element from a bitmask; panics if bits do not fit the field.
    pub fn el(&self, bits: u64) -> Fe {
        assert!(
            bits < (1u64 << self.inner.m),
            "bits 0x{bits:x} out of range for {}",
            self.name()
        );
        Fe { spec: self.clone(), bits }
    }

    pub fn checked_el(&self, bits: u64) -> Result<Fe> {
        if bits < (1u64 << self.inner.m) {
            Ok(Fe { spec: self.clone(), bits })
        } else {
            Err(Error::Parse(format!(
                "element 0x{bits:x} out of range for {}",
                self.name()
            )))
        }
    }

    pub fn zero(&self) -> Fe {
        self.el(0)
    }

    pub fn one(&self) -> Fe {
        self.el(1)
    }

    /// All field elements in bit order. Only sensible at desk scale.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..(1u64 << self.inner.m)).map(move |b| self.el(b))
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        self.el(rng.gen_range(0..(1u64 << self.inner.m)))
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        self.el(rng.gen_range(1..(1u64 << self.inner.m)))
    }

    pub(crate) fn mul_bits(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.inner.tables {
            Some(t) => {
                let i = t.log[a as usize] as usize + t.log[b as usize] as usize;
                t.exp[i]
            }
            None => pmulmod(a, b, self.inner.modulus, self.inner.m),
        }
    }

    pub(crate) fn inv_bits(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        match &self.inner.tables {
            Some(t) => {
                let qm1 = (1u64 << self.inner.m) - 1;
                let i = (qm1 as usize - t.log[a as usize] as usize) % qm1 as usize;
                t.exp[i]
            }
            None => {
                // a^(2^m - 2) by square and multiply.
                let mut acc = 1u64;
                let mut base = a;
                let mut e = (1u128 << self.inner.m) - 2;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = self.mul_bits(acc, base);
                    }
                    base = self.mul_bits(base, base);
                    e >>= 1;
                }
                acc
            }
        }
    }

    fn quad_solver(&self) -> &QuadSolver {
        self.quad.get_or_init(|| QuadSolver::build(self))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

// ---------------------------------------------------------------------------
// Field elements
// ---------------------------------------------------------------------------

/// An element of a specific GF(2^m). Carries its field; mixing fields panics
/// in operator form and errors in checked form.
#[derive(Clone)]
pub struct Fe {
    spec: FieldSpec,
    bits: u64,
}

impl PartialEq for Fe {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.bits == other.bits
    }
}
impl Eq for Fe {}

impl std::hash::Hash for Fe {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.spec.m().hash(state);
        self.spec.modulus().hash(state);
        self.bits.hash(state);
    }
}

impl PartialOrd for Fe {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fe {
    /// Bit-encoding order; the canonical order used for all deterministic
    /// sorts of field data.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.spec.m(), self.spec.modulus(), self.bits).cmp(&(
            other.spec.m(),
            other.spec.modulus(),
            other.bits,
        ))
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{:x}", self.bits)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{:x}", self.bits)
    }
}

impl Fe {
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        self.bits == 1
    }

    fn assert_same(&self, other: &Fe) {
        assert!(
            self.spec == other.spec,
            "mixed field specs: {} vs {}",
            self.spec.name(),
            other.spec.name()
        );
    }

    pub fn checked_mul(&self, other: &Fe) -> Result<Fe> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch(self.spec.name(), other.spec.name()));
        }
        Ok(self * other)
    }

    pub fn checked_add(&self, other: &Fe) -> Result<Fe> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch(self.spec.name(), other.spec.name()));
        }
        Ok(self + other)
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Fe> {
        if self.bits == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Fe { spec: self.spec.clone(), bits: self.spec.inv_bits(self.bits) })
    }

    pub fn square(&self) -> Fe {
        Fe { spec: self.spec.clone(), bits: self.spec.mul_bits(self.bits, self.bits) }
    }

    /// The unique square root: Frobenius is bijective, sqrt = x^(2^(m-1)).
    pub fn sqrt(&self) -> Fe {
        let mut r = self.clone();
        for _ in 0..self.spec.m().saturating_sub(1) {
            r = r.square();
        }
        r
    }

    /// Absolute trace to GF(2): sum of x^(2^j) for j < m, always 0 or 1.
    pub fn abs_trace(&self) -> u8 {
        let mut acc = self.bits;
        let mut cur = self.bits;
        for _ in 1..self.spec.m() {
            cur = self.spec.mul_bits(cur, cur);
            acc ^= cur;
        }
        debug_assert!(acc <= 1, "trace must land in the prime field");
        acc as u8
    }

    pub fn pow(&self, mut e: u128) -> Fe {
        let mut acc = self.spec.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order; zero has no order (returns 0).
    pub fn mult_order(&self) -> u128 {
        if self.is_zero() {
            return 0;
        }
        let mut ord = 1u128;
        let mut cur = self.clone();
        while !cur.is_one() {
            cur = &cur * self;
            ord += 1;
        }
        ord
    }
}

macro_rules! fe_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl std::ops::$trait<&Fe> for &Fe {
            type Output = Fe;
            fn $method(self, rhs: &Fe) -> Fe {
                self.assert_same(rhs);
                let f: fn(&FieldSpec, u64, u64) -> u64 = $body;
                Fe { spec: self.spec.clone(), bits: f(&self.spec, self.bits, rhs.bits) }
            }
        }
        impl std::ops::$trait<Fe> for Fe {
            type Output = Fe;
            fn $method(self, rhs: Fe) -> Fe {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl std::ops::$trait<&Fe> for Fe {
            type Output = Fe;
            fn $method(self, rhs: &Fe) -> Fe {
                std::ops::$trait::$method(&self, rhs)
            }
        }
        impl std::ops::$trait<Fe> for &Fe {
            type Output = Fe;
            fn $method(self, rhs: Fe) -> Fe {
                std::ops::$trait::$method(self, &rhs)
            }
        }
    };
}

fe_binop!(Add, add, |_s, a, b| a ^ b);
// Characteristic 2: subtraction is addition.
fe_binop!(Sub, sub, |_s, a, b| a ^ b);
fe_binop!(Mul, mul, |s: &FieldSpec, a, b| s.mul_bits(a, b));
fe_binop!(Div, div, |s: &FieldSpec, a, b| {
    assert!(b != 0, "division by zero in {}", s.name());
    s.mul_bits(a, s.inv_bits(b))
});

// ---------------------------------------------------------------------------
// Quadratic equations T^2 + bT + c = 0
// ---------------------------------------------------------------------------

/// Row-reduced form of the F2-linear map U -> U^2 + U on the bit space.
struct QuadSolver {
    /// Augmented rows (coefficient bits in the low m bits, pivot bookkeeping
    /// done at solve time). rows[r] is the r-th equation row of the map.
    rows: Vec<u64>,
}

impl QuadSolver {
    fn build(spec: &FieldSpec) -> QuadSolver {
        let m = spec.m();
        // Column j of the matrix is L(x^j) = x^(2j) + x^j reduced.
        let mut cols = Vec::with_capacity(m as usize);
        for j in 0..m {
            let e = spec.el(1u64 << j);
            let v = &e.square() + &e;
            cols.push(v.bits());
        }
        // Store as rows: row r bit j = bit r of cols[j].
        let mut rows = vec![0u64; m as usize];
        for (j, c) in cols.iter().enumerate() {
            for r in 0..m {
                if (c >> r) & 1 == 1 {
                    rows[r as usize] |= 1u64 << j;
                }
            }
        }
        QuadSolver { rows }
    }

    /// One solution of U^2 + U = w, if any (the other is U + 1).
    fn solve(&self, spec: &FieldSpec, w: u64) -> Option<u64> {
        let m = spec.m() as usize;
        // Augmented elimination: row = coefficient bits | rhs bit << m.
        let mut aug: Vec<u64> = self
            .rows
            .iter()
            .enumerate()
            .map(|(r, &row)| row | (((w >> r) & 1) << m))
            .collect();
        let mut pivot_col = vec![usize::MAX; m];
        let mut rank = 0;
        for col in 0..m {
            let Some(p) = (rank..m).find(|&r| (aug[r] >> col) & 1 == 1) else {
                continue;
            };
            aug.swap(rank, p);
            for r in 0..m {
                if r != rank && (aug[r] >> col) & 1 == 1 {
                    aug[r] ^= aug[rank];
                }
            }
            pivot_col[rank] = col;
            rank += 1;
        }
        // Inconsistent system: a zero row with nonzero rhs.
        for r in rank..m {
            if (aug[r] >> m) & 1 == 1 {
                return None;
            }
        }
        let mut u = 0u64;
        for r in 0..rank {
            if (aug[r] >> m) & 1 == 1 {
                u |= 1u64 << pivot_col[r];
            }
        }
        Some(u)
    }
}

/// Solves T^2 + bT + c = 0 over the base field.
///
/// Returns both roots (an equal pair when b = 0), or None when the equation
/// has no root in the field, which callers treat as a cue to extend.
/// For b != 0 solvability is exactly the Artin-Schreier condition
/// trace(c / b^2) = 0.
pub fn solve_quadratic(b: &Fe, c: &Fe) -> Option<(Fe, Fe)> {
    b.assert_same(c);
    let spec = b.spec();
    if b.is_zero() {
        let r = c.sqrt();
        return Some((r.clone(), r));
    }
    let w = c / &b.square();
    if w.abs_trace() != 0 {
        return None;
    }
    let u = spec.quad_solver().solve(spec, w.bits())?;
    let r1 = b * &spec.el(u);
    let r2 = &r1 + b;
    debug_assert!((&r1.square() + &(b * &r1) + c).is_zero());
    debug_assert!((&r2.square() + &(b * &r2) + c).is_zero());
    if r1.bits() <= r2.bits() {
        Some((r1, r2))
    } else {
        Some((r2, r1))
    }
}

// ---------------------------------------------------------------------------
// Field extension with explicit embedding
// ---------------------------------------------------------------------------

/// An injective ring map GF(2^m) -> GF(2^(m*d)) commuting with Frobenius,
/// realized by sending the base generator to a root of the base modulus.
#[derive(Clone)]
pub struct FieldEmbedding {
    from: FieldSpec,
    to: FieldSpec,
    /// images[j] = bits of the image of x^j, j < m.
    images: Vec<u64>,
}

impl FieldEmbedding {
    pub fn identity(spec: &FieldSpec) -> FieldEmbedding {
        let images = (0..spec.m()).map(|j| 1u64 << j).collect();
        FieldEmbedding { from: spec.clone(), to: spec.clone(), images }
    }

    pub fn from_spec(&self) -> &FieldSpec {
        &self.from
    }

    pub fn to_spec(&self) -> &FieldSpec {
        &self.to
    }

    pub fn embed(&self, a: &Fe) -> Fe {
        assert!(a.spec() == &self.from, "embedding applied to foreign element");
        let mut bits = 0u64;
        let mut rest = a.bits();
        while rest != 0 {
            let j = rest.trailing_zeros();
            bits ^= self.images[j as usize];
            rest &= rest - 1;
        }
        self.to.el(bits)
    }

    /// Preimage under the embedding, if the element lies in the base image.
    pub fn lift(&self, a: &Fe) -> Option<Fe> {
        assert!(a.spec() == &self.to, "lift applied to foreign element");
        // Solve the F2-linear system images * u = a over the bit spaces.
        let md = self.to.m() as usize;
        let m = self.from.m() as usize;
        let mut aug: Vec<u64> = (0..md)
            .map(|r| {
                let mut row = 0u64;
                for (j, img) in self.images.iter().enumerate() {
                    if (img >> r) & 1 == 1 {
                        row |= 1 << j;
                    }
                }
                row | (((a.bits() >> r) & 1) << m)
            })
            .collect();
        let mut pivot_col = vec![usize::MAX; md];
        let mut rank = 0;
        for col in 0..m {
            let Some(p) = (rank..md).find(|&r| (aug[r] >> col) & 1 == 1) else {
                continue;
            };
            aug.swap(rank, p);
            for r in 0..md {
                if r != rank && (aug[r] >> col) & 1 == 1 {
                    aug[r] ^= aug[rank];
                }
            }
            pivot_col[rank] = col;
            rank += 1;
        }
        for r in rank..md {
            if (aug[r] >> m) & 1 == 1 {
                return None;
            }
        }
        let mut u = 0u64;
        for r in 0..rank {
            if (aug[r] >> m) & 1 == 1 {
                u |= 1u64 << pivot_col[r];
            }
        }
        Some(self.from.el(u))
    }

    /// Composition: first self, then next.
    pub fn then(&self, next: &FieldEmbedding) -> FieldEmbedding {
        assert!(self.to == next.from, "embeddings do not compose");
        let images = self
            .images
            .iter()
            .map(|&b| next.embed(&self.to.el(b)).bits())
            .collect();
        FieldEmbedding { from: self.from.clone(), to: next.to.clone(), images }
    }
}

/// GF(2^m) -> GF(2^(m*d)) with the canonical modulus on the target.
///
/// The embedding sends the base generator to the smallest-encoding root of
/// the base modulus in the target field, so it is deterministic.
pub fn extend_field(spec: &FieldSpec, d: u32) -> Result<FieldEmbedding> {
    if d == 1 {
        return Ok(FieldEmbedding::identity(spec));
    }
    assert!(d >= 2, "extension degree must be positive");
    let md = spec.m() * d;
    if md > MAX_M {
        return Err(Error::FieldTooSmall { field: spec.name(), degree: d });
    }
    let big = FieldSpec::gf(md);
    // The base modulus as a polynomial over the big field.
    let coeffs: Vec<Fe> = (0..=spec.m())
        .map(|j| big.el((spec.modulus() >> j) & 1))
        .collect();
    let modulus_poly = UniPoly::new(&big, coeffs);
    let roots = modulus_poly.roots();
    let rho = roots
        .first()
        .map(|(r, _)| r.clone())
        .ok_or_else(|| Error::InternalVerification("base modulus has no root in extension".into()))?;
    let mut images = Vec::with_capacity(spec.m() as usize);
    let mut cur = big.one();
    for _ in 0..spec.m() {
        images.push(cur.bits());
        cur = &cur * &rho;
    }
    Ok(FieldEmbedding { from: spec.clone(), to: big, images })
}
