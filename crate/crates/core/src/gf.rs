//! Exact arithmetic in GF(p^n), represented as `F_p[t]/(m(t))`.
//!
//! An element is stored as its canonical integer encoding
//! `Σ c_i · p^i`, where `c_0 + c_1 t + … + c_{n-1} t^{n-1}` is its reduced
//! coefficient vector. The encoding is a bijection onto `[0, q)`, and the
//! enumeration order of a field is increasing encoding order.
//!
//! Without an explicit modulus, [`FieldCtx::new`] takes one from a fixed
//! table: for each `(p, n)` with `p ∈ {2, 3, 5, 7, 11, 13}` and `n ≤ 7`, the
//! first monic irreducible polynomial in encoding order of its lower
//! coefficients. For `n = 1` that is `t` for every prime.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::hash::{Hash, Hasher};
use core::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result};

/// Largest supported extension degree (`2^32 > q` bounds it anyway).
pub const MAX_DEGREE: usize = 31;

/// Built-in moduli, coefficients low degree first (the leading 1 included).
static DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (3, 7, &[2, 0, 1, 0, 0, 0, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (5, 3, &[1, 1, 0, 1]),
    (5, 4, &[2, 0, 0, 0, 1]),
    (5, 5, &[1, 4, 0, 0, 0, 1]),
    (5, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (5, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (7, 2, &[1, 0, 1]),
    (7, 3, &[2, 0, 0, 1]),
    (7, 4, &[1, 1, 0, 0, 1]),
    (7, 5, &[3, 1, 0, 0, 0, 1]),
    (7, 6, &[2, 0, 0, 0, 0, 0, 1]),
    (7, 7, &[1, 6, 0, 0, 0, 0, 0, 1]),
    (11, 2, &[1, 0, 1]),
    (11, 3, &[4, 1, 0, 1]),
    (11, 4, &[2, 1, 0, 0, 1]),
    (11, 5, &[2, 0, 0, 0, 0, 1]),
    (11, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (11, 7, &[4, 1, 0, 0, 0, 0, 0, 1]),
    (13, 2, &[2, 0, 1]),
    (13, 3, &[2, 0, 0, 1]),
    (13, 4, &[2, 0, 0, 0, 1]),
    (13, 5, &[2, 4, 0, 0, 0, 1]),
    (13, 6, &[2, 0, 0, 0, 0, 0, 1]),
    (13, 7, &[2, 3, 0, 0, 0, 0, 0, 1]),
];

/// The modulus table entry for `(p, n)`, if any.
pub fn default_modulus(p: u32, n: u32) -> Option<&'static [u32]> {
    DEFAULT_MODULI
        .iter()
        .find(|(tp, tn, _)| *tp == p && *tn == n)
        .map(|(_, _, m)| *m)
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A finite field GF(p^n). Two contexts are interchangeable iff
/// `(p, n, modulus)` agree, which is what `==` compares.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
}

impl FieldCtx {
    /// Builds GF(p^n). `modulus` holds the `n + 1` coefficients of a monic
    /// irreducible polynomial, low degree first; `None` uses the built-in
    /// table.
    pub fn new(p: u32, n: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64)
            .checked_pow(n)
            .filter(|&q| q <= u32::MAX as u64 && n as usize <= MAX_DEGREE)
            .ok_or(Error::FieldTooLarge { p, n })? as u32;
        let modulus: Vec<u32> = match modulus {
            Some(m) => m.to_vec(),
            None if n == 1 => alloc::vec![0, 1],
            None => default_modulus(p, n)
                .ok_or(Error::NoDefaultModulus { p, n })?
                .to_vec(),
        };
        if modulus.len() != n as usize + 1 {
            return Err(Error::ModulusLength {
                expected: n as usize + 1,
                found: modulus.len(),
            });
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::ModulusCoefficient(c));
        }
        if modulus[n as usize] != 1 {
            return Err(Error::ModulusNotMonic);
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::ReducibleModulus);
        }
        Ok(FieldCtx { p, n, q, modulus })
    }

    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, low degree first, leading 1 included.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem<'_> {
        FieldElem { ctx: self, code: 0 }
    }

    pub fn one(&self) -> FieldElem<'_> {
        FieldElem { ctx: self, code: 1 }
    }

    /// Decodes an integer in `[0, q)`.
    pub fn elem(&self, code: u64) -> Result<FieldElem<'_>> {
        if code >= self.q as u64 {
            return Err(Error::CodeOutOfRange { code, q: self.q });
        }
        Ok(FieldElem {
            ctx: self,
            code: code as u32,
        })
    }

    /// Element from a coefficient vector (at most `n` entries, each `< p`).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem<'_>> {
        if coeffs.len() > self.n as usize {
            return Err(Error::ModulusLength {
                expected: self.n as usize,
                found: coeffs.len(),
            });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::CodeOutOfRange {
                code: c as u64,
                q: self.p,
            });
        }
        Ok(FieldElem {
            ctx: self,
            code: self.encode_digits(coeffs),
        })
    }

    /// Image of an integer under Z → F_p ⊂ K.
    pub fn from_int(&self, k: i64) -> FieldElem<'_> {
        FieldElem {
            ctx: self,
            code: k.rem_euclid(self.p as i64) as u32,
        }
    }

    /// Every element, in increasing encoding order starting with 0.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem<'_>> + '_ {
        (0..self.q).map(move |code| FieldElem { ctx: self, code })
    }

    pub fn enumerate(&self) -> Vec<FieldElem<'_>> {
        self.elements().collect()
    }

    /// All F_p-linear combinations of `basis`, deduplicated and sorted by
    /// encoding. A dependent basis is fine; the result has `p^rank` members.
    pub fn span_members<'f>(&'f self, basis: &[FieldElem<'f>]) -> Result<Vec<FieldElem<'f>>> {
        let mut members: BTreeSet<u32> = BTreeSet::new();
        members.insert(0);
        for b in basis {
            if !self.same(b.ctx) {
                return Err(Error::FieldMismatch);
            }
            let mut next = BTreeSet::new();
            for &m in &members {
                let mut acc = m;
                for _ in 0..self.p {
                    next.insert(acc);
                    acc = self.add_codes(acc, b.code);
                }
            }
            members = next;
        }
        Ok(members
            .into_iter()
            .map(|code| FieldElem { ctx: self, code })
            .collect())
    }

    /// A root of `x² + x + 1`, when the field has one and `p ≠ 3`.
    pub fn primitive_cube_root_of_unity(&self) -> Option<FieldElem<'_>> {
        if self.p == 3 {
            return None;
        }
        self.elements()
            .find(|&w| !w.is_one() && (w * w * w).is_one())
    }

    fn same(&self, other: &FieldCtx) -> bool {
        core::ptr::eq(self, other) || self == other
    }

    pub(crate) fn digits(&self, mut code: u32) -> [u32; MAX_DEGREE] {
        let mut out = [0u32; MAX_DEGREE];
        for d in out.iter_mut().take(self.n as usize) {
            *d = code % self.p;
            code /= self.p;
        }
        out
    }

    fn encode_digits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0u32, |acc, &d| acc * self.p + d)
    }

    pub(crate) fn add_codes(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.n == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut sum = [0u32; MAX_DEGREE];
        for i in 0..self.n as usize {
            sum[i] = (da[i] + db[i]) % self.p;
        }
        self.encode_digits(&sum[..self.n as usize])
    }

    pub(crate) fn neg_codes(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let da = self.digits(a);
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..self.n as usize {
            out[i] = (self.p - da[i]) % self.p;
        }
        self.encode_digits(&out[..self.n as usize])
    }

    pub(crate) fn mul_codes(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.n == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let n = self.n as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        // t^n = -(m_0 + m_1 t + ... + m_{n-1} t^{n-1})
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..n {
                let m = self.modulus[i] as u64;
                prod[k - n + i] = (prod[k - n + i] + (p - c) * m) % p;
            }
        }
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..n {
            out[i] = prod[i] as u32;
        }
        self.encode_digits(&out[..n])
    }

    pub(crate) fn pow_codes(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_codes(acc, base);
            }
            base = self.mul_codes(base, base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn inv_codes(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.pow_codes(a, self.q as u64 - 2))
    }
}

impl fmt::Display for FieldCtx {
    /// The field header line, e.g. `field p=3 n=2 modulus=1,0,1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "field p={} n={} modulus=", self.p, self.n)?;
        for (i, c) in self.modulus.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// An element of a [`FieldCtx`]. Mixing elements of different fields in
/// the arithmetic operators panics; the `checked_*` methods report it.
#[derive(Clone, Copy)]
pub struct FieldElem<'f> {
    ctx: &'f FieldCtx,
    code: u32,
}

impl<'f> FieldElem<'f> {
    pub fn ctx(&self) -> &'f FieldCtx {
        self.ctx
    }

    /// Canonical integer encoding `Σ c_i p^i`.
    pub fn encode(&self) -> u32 {
        self.code
    }

    /// Coefficients `c_0, …, c_{n-1}` of the reduced representative.
    pub fn coeffs(&self) -> Vec<u32> {
        self.ctx.digits(self.code)[..self.ctx.n as usize].to_vec()
    }

    /// Coordinates in the additive group (F_p)^n. These are the
    /// coefficients, so the map is additive.
    pub fn additive_coords(&self) -> Vec<u32> {
        self.coeffs()
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }

    pub fn same_field(&self, other: &FieldElem<'_>) -> bool {
        self.ctx.same(other.ctx)
    }

    fn check(&self, other: &FieldElem<'_>) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(self, other: FieldElem<'_>) -> Result<FieldElem<'f>> {
        self.check(&other)?;
        Ok(self.with(self.ctx.add_codes(self.code, other.code)))
    }

    pub fn checked_sub(self, other: FieldElem<'_>) -> Result<FieldElem<'f>> {
        self.check(&other)?;
        let neg = self.ctx.neg_codes(other.code);
        Ok(self.with(self.ctx.add_codes(self.code, neg)))
    }

    pub fn checked_mul(self, other: FieldElem<'_>) -> Result<FieldElem<'f>> {
        self.check(&other)?;
        Ok(self.with(self.ctx.mul_codes(self.code, other.code)))
    }

    pub fn checked_div(self, other: FieldElem<'_>) -> Result<FieldElem<'f>> {
        self.check(&other)?;
        let inv = self
            .ctx
            .inv_codes(other.code)
            .ok_or(Error::DivisionByZero)?;
        Ok(self.with(self.ctx.mul_codes(self.code, inv)))
    }

    pub fn inv(self) -> Result<FieldElem<'f>> {
        self.ctx
            .inv_codes(self.code)
            .map(|c| self.with(c))
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(self, e: u64) -> FieldElem<'f> {
        self.with(self.ctx.pow_codes(self.code, e))
    }

    /// `k · self` for an integer `k`.
    pub fn scale(self, k: i64) -> FieldElem<'f> {
        self * self.ctx.from_int(k)
    }

    fn with(self, code: u32) -> FieldElem<'f> {
        FieldElem {
            ctx: self.ctx,
            code,
        }
    }
}

impl PartialEq for FieldElem<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.same_field(other)
    }
}

impl Eq for FieldElem<'_> {}

impl Hash for FieldElem<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl PartialOrd for FieldElem<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by encoding.
impl Ord for FieldElem<'_> {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.code.cmp(&other.code)
    }
}

impl fmt::Debug for FieldElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

impl fmt::Display for FieldElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'f> $tr for FieldElem<'f> {
            type Output = FieldElem<'f>;
            fn $method(self, rhs: FieldElem<'f>) -> FieldElem<'f> {
                self.$checked(rhs).expect("elements from different fields")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<'f> Neg for FieldElem<'f> {
    type Output = FieldElem<'f>;
    fn neg(self) -> FieldElem<'f> {
        self.with(self.ctx.neg_codes(self.code))
    }
}

/// Remainder of `a` modulo the monic `b` over F_p (coefficients low first).
fn poly_rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = r[r.len() - 1];
        if lead != 0 {
            let shift = r.len() - 1 - db;
            for (i, &bc) in b.iter().enumerate() {
                let idx = shift + i;
                r[idx] = ((r[idx] as u64 + (p - lead) as u64 * bc as u64) % p as u64) as u32;
            }
        }
        r.pop();
    }
    r
}

fn has_root(p: u32, poly: &[u32]) -> bool {
    (0..p).any(|x| {
        poly.iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64)
            == 0
    })
}

/// Irreducibility of a monic polynomial over F_p: a root test up to degree
/// 3, trial division by every monic polynomial of degree `≤ n/2` beyond.
pub fn is_irreducible(p: u32, monic: &[u32]) -> bool {
    let n = monic.len().saturating_sub(1);
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if n <= 3 {
        return !has_root(p, monic);
    }
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                divisor.push((c % p as u64) as u32);
                c /= p as u64;
            }
            divisor.push(1);
            if poly_rem(p, monic, &divisor).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u32, n: u32) -> FieldCtx {
        FieldCtx::new(p, n, None).unwrap()
    }

    #[test]
    fn default_table_is_irreducible() {
        for &(p, n, m) in DEFAULT_MODULI {
            assert_eq!(m.len(), n as usize + 1);
            assert!(is_irreducible(p, m), "p={p} n={n}");
            // exhaustive root check agrees at low degree
            if n <= 3 {
                assert!(!has_root(p, m));
            }
        }
    }

    #[test]
    fn construction_examples() {
        let f3 = f(3, 1);
        assert_eq!(f3.modulus(), &[0, 1]);
        let f9 = FieldCtx::new(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f9.order(), 9);
        let f4 = FieldCtx::new(2, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(f4.order(), 4);
        assert_eq!(f(3, 2), f9);
        assert_eq!(f(2, 3).modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldCtx::new(4, 1, None), Err(Error::NotPrime(4)));
        assert_eq!(FieldCtx::new(3, 0, None), Err(Error::ZeroDegree));
        assert_eq!(
            FieldCtx::new(3, 2, Some(&[2, 0, 1])),
            Err(Error::ReducibleModulus)
        );
        assert_eq!(
            FieldCtx::new(3, 2, Some(&[1, 0, 2])),
            Err(Error::ModulusNotMonic)
        );
        assert_eq!(
            FieldCtx::new(2, 4, Some(&[1, 0, 1, 0, 1])),
            Err(Error::ReducibleModulus)
        );
        assert_eq!(
            FieldCtx::new(17, 2, None),
            Err(Error::NoDefaultModulus { p: 17, n: 2 })
        );
        assert!(FieldCtx::new(17, 2, Some(&[3, 0, 1])).is_ok());
        assert!(matches!(
            FieldCtx::new(2, 40, None),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn arithmetic_examples() {
        let f9 = f(3, 2);
        let t = f9.elem(3).unwrap();
        for x in f9.elements() {
            assert_eq!(f9.zero() + x, x);
        }
        assert_eq!(t * t, f9.from_int(2));
        let f7 = f(7, 1);
        assert_eq!(f7.elem(3).unwrap().inv().unwrap(), f7.elem(5).unwrap());
        assert_eq!(f7.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn cross_field_is_an_error() {
        let (a, b) = (f(3, 2), f(3, 3));
        assert_eq!(a.one().checked_add(b.one()), Err(Error::FieldMismatch));
        assert_eq!(a.one().checked_mul(b.one()), Err(Error::FieldMismatch));
        // equal parameters are interchangeable
        let a2 = f(3, 2);
        assert_eq!(a.one().checked_add(a2.one()), Ok(a.from_int(2)));
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn cross_field_operator_panics() {
        let (a, b) = (f(2, 2), f(2, 3));
        let _ = a.one() + b.one();
    }

    #[test]
    fn enumeration() {
        let codes = |c: &FieldCtx| c.enumerate().iter().map(|e| e.encode()).collect::<Vec<_>>();
        assert_eq!(codes(&f(3, 1)), [0, 1, 2]);
        let f4 = f(2, 2);
        assert_eq!(codes(&f4), [0, 1, 2, 3]);
        assert_eq!(f4.elem(3).unwrap().coeffs(), [1, 1]);
        let f9 = f(3, 2);
        assert_eq!(f9.enumerate().len(), 9);
        assert_eq!(f9.enumerate()[3].coeffs(), [0, 1]);
    }

    #[test]
    fn additive_coordinates() {
        let f9 = f(3, 2);
        assert_eq!(f9.zero().additive_coords(), [0, 0]);
        assert_eq!(f9.elem(4).unwrap().additive_coords(), [1, 1]);
        let f8 = FieldCtx::new(2, 3, Some(&[1, 1, 0, 1])).unwrap();
        assert_eq!(f8.elem(4).unwrap().additive_coords(), [0, 0, 1]);
        for a in f9.elements() {
            for b in f9.elements() {
                let (ca, cb, cs) = (
                    a.additive_coords(),
                    b.additive_coords(),
                    (a + b).additive_coords(),
                );
                for i in 0..2 {
                    assert_eq!((ca[i] + cb[i]) % 3, cs[i]);
                }
            }
        }
    }

    #[test]
    fn spans() {
        let f9 = f(3, 2);
        let s: Vec<u32> = f9
            .span_members(&[f9.one()])
            .unwrap()
            .iter()
            .map(|e| e.encode())
            .collect();
        assert_eq!(s, [0, 1, 2]);
        let f27 = f(3, 3);
        let t = f27.elem(3).unwrap();
        assert_eq!(f27.span_members(&[f27.one(), t]).unwrap().len(), 9);
        // dependent basis
        assert_eq!(
            f27.span_members(&[f27.one(), f27.from_int(2)])
                .unwrap()
                .len(),
            3
        );
        assert_eq!(f27.span_members(&[]).unwrap(), [f27.zero()]);
    }

    #[test]
    fn exhaustive_axioms_small_fields() {
        for (p, n) in [(2, 2), (2, 3), (3, 2), (5, 1), (7, 1), (2, 4), (3, 3)] {
            let k = f(p, n);
            let els = k.enumerate();
            for &a in &els {
                assert_eq!(a + (-a), k.zero());
                if !a.is_zero() {
                    assert_eq!(a * a.inv().unwrap(), k.one());
                }
                for &b in &els {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    // Frobenius
                    assert_eq!((a + b).pow(p as u64), a.pow(p as u64) + b.pow(p as u64));
                }
                if p == 3 {
                    assert_eq!(a.scale(-2), a);
                }
                if p == 2 {
                    assert_eq!(-a, a);
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_order_q_minus_1() {
        for (p, n) in [(2, 4), (3, 4), (2, 6), (5, 2)] {
            let k = f(p, n);
            for a in k.elements().skip(1) {
                assert!(a.pow(k.order() as u64 - 1).is_one());
            }
        }
    }

    fn field_triple() -> impl Strategy<Value = ((u32, u32), u32, u32, u32)> {
        prop_oneof![
            Just((3, 4)),
            Just((2, 6)),
            Just((5, 2)),
            Just((7, 2)),
            Just((3, 2))
        ]
        .prop_flat_map(|(p, n): (u32, u32)| {
            let q = p.pow(n);
            (Just((p, n)), 0..q, 0..q, 0..q)
        })
    }

    proptest! {
        #[test]
        fn ring_axioms((pn, a, b, c) in field_triple()) {
            let k = f(pn.0, pn.1);
            let (a, b, c) = (k.elem(a as u64).unwrap(), k.elem(b as u64).unwrap(), k.elem(c as u64).unwrap());
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a - b + b, a);
            prop_assert_eq!(k.from_coeffs(&a.coeffs()).unwrap(), a);
        }
    }
}
