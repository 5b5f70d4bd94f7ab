//! Finite fields `F_q` (q = p^e), dense polynomials over them, and
//! deterministic polynomial factorization (squarefree splitting,
//! distinct-degree, Cantor-Zassenhaus with a PRNG seeded from the input).
//!
//! Residue fields of primes and places are the quotients `F_q[x]/(g)`,
//! handled uniformly by [`FqQuot`] with baby-step/giant-step discrete logs.

use crate::error::{Error, Result};
use crate::intfactor;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// The field `F_q`, `q = p^e`, as `F_p[y]/(modulus)`. Elements are coefficient
/// vectors of length `e` (little-endian).
#[derive(Clone, PartialEq, Eq)]
pub struct Fq {
    p: u64,
    e: u32,
    /// Monic irreducible over `F_p`, length `e + 1`; for `e = 1` this is `[0, 1]`.
    modulus: Vec<u64>,
}

pub type FqElem = Vec<u64>;

impl std::fmt::Debug for Fq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.e == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.e)
        }
    }
}

impl Fq {
    pub fn prime(p: u64) -> Result<Fq> {
        if !intfactor::is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Fq { p, e: 1, modulus: vec![0, 1] })
    }

    /// `F_{p^e}` with the deterministic modulus: the smallest monic
    /// irreducible of degree `e` over `F_p` in coefficient-encoding order.
    pub fn extension(p: u64, e: u32) -> Result<Fq> {
        if !intfactor::is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::BadInput("extension degree must be positive".into()));
        }
        let q = (p as u128).checked_pow(e).ok_or_else(|| {
            Error::BoundExceeded(format!("field size {p}^{e} overflows"))
        })?;
        if e > 1 && q > 1 << 16 {
            return Err(Error::BoundExceeded(format!(
                "extension field size {q} exceeds the 2^16 limit"
            )));
        }
        if e == 1 {
            return Fq::prime(p);
        }
        let base = Fq::prime(p)?;
        // enumerate monic degree-e polynomials by encoding and take the first
        // irreducible one
        let mut index = 0u128;
        loop {
            let mut coeffs: Vec<FqElem> = Vec::with_capacity(e as usize + 1);
            let mut k = index;
            for _ in 0..e {
                coeffs.push(vec![(k % p as u128) as u64]);
                k /= p as u128;
            }
            if k > 0 {
                return Err(Error::BoundExceeded(format!(
                    "no irreducible of degree {e} over F_{p} found"
                )));
            }
            coeffs.push(vec![1]);
            let cand = FqPoly::new(base.clone(), coeffs);
            if cand.is_irreducible()? {
                let modulus = (0..=e as usize).map(|i| cand.coeffs[i][0]).collect();
                return Ok(Fq { p, e, modulus });
            }
            index += 1;
        }
    }

    /// Extension with an explicitly supplied monic irreducible modulus over `F_p`.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Fq> {
        if !intfactor::is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        let e = (modulus.len() - 1) as u32;
        if e == 0 || modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadInput("modulus must be monic with coefficients in [0,p)".into()));
        }
        if e == 1 {
            if modulus[0] != 0 {
                return Err(Error::BadInput("degree-1 modulus must be the variable itself".into()));
            }
            return Fq::prime(p);
        }
        let base = Fq::prime(p)?;
        let poly =
            FqPoly::new(base, modulus.iter().map(|&c| vec![c]).collect::<Vec<_>>());
        if !poly.is_irreducible()? {
            return Err(Error::BadInput("modulus is not irreducible".into()));
        }
        Ok(Fq { p, e, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn size(&self) -> u128 {
        (self.p as u128).pow(self.e)
    }

    pub fn zero(&self) -> FqElem {
        vec![0; self.e as usize]
    }

    pub fn one(&self) -> FqElem {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    pub fn from_u64(&self, n: u64) -> FqElem {
        let mut v = self.zero();
        v[0] = n % self.p;
        v
    }

    pub fn from_int(&self, n: &BigInt) -> FqElem {
        let m = n.mod_floor_u64(self.p);
        self.from_u64(m)
    }

    pub fn is_zero(&self, a: &FqElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &FqElem) -> bool {
        a[0] == 1 && a[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        a.iter().zip(b).map(|(&x, &y)| (x + self.p - y) % self.p).collect()
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let e = self.e as usize;
        let mut prod = vec![0u64; 2 * e - 1];
        for i in 0..e {
            if a[i] == 0 {
                continue;
            }
            for j in 0..e {
                if b[j] == 0 {
                    continue;
                }
                prod[i + j] =
                    (prod[i + j] + intfactor::mul_mod_u64(a[i], b[j], self.p)) % self.p;
            }
        }
        // reduce modulo the defining polynomial
        for k in (e..2 * e - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..e {
                let m = self.modulus[i];
                if m == 0 {
                    continue;
                }
                let sub = intfactor::mul_mod_u64(c, m, self.p);
                prod[k - e + i] = (prod[k - e + i] + self.p - sub % self.p) % self.p;
            }
        }
        prod.truncate(e);
        prod
    }

    pub fn pow(&self, a: &FqElem, mut n: u128) -> FqElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FqElem) -> Result<FqElem> {
        if self.is_zero(a) {
            return Err(Error::ZeroElement);
        }
        // a^(q-2)
        Ok(self.pow(a, self.size() - 2))
    }

    /// Encode an element as an integer in `[0, q)` for deterministic orderings.
    pub fn encode(&self, a: &FqElem) -> u128 {
        let mut acc = 0u128;
        for &c in a.iter().rev() {
            acc = acc * self.p as u128 + c as u128;
        }
        acc
    }

    pub fn decode(&self, mut idx: u128) -> FqElem {
        let mut v = self.zero();
        for c in v.iter_mut() {
            *c = (idx % self.p as u128) as u64;
            idx /= self.p as u128;
        }
        v
    }

    /// The multiplicative generator with the smallest encoding.
    pub fn generator(&self) -> Result<FqElem> {
        let n = self.size() - 1;
        if n == 1 {
            return Ok(self.one());
        }
        let n_big = BigInt::from(n);
        let fac = intfactor::factor(&n_big)?;
        'cand: for idx in 2..self.size() {
            let g = self.decode(idx);
            for (r, _) in &fac {
                let e = n / *r as u128;
                if self.is_one(&self.pow(&g, e)) {
                    continue 'cand;
                }
            }
            return Ok(g);
        }
        Err(Error::Inconclusive("no multiplicative generator found".into()))
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, m: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, m: u64) -> u64 {
        use num_integer::Integer;
        self.mod_floor(&BigInt::from(m)).to_u64().expect("reduced value fits u64")
    }
}


/// Dense polynomial over `F_q`.
#[derive(Clone, PartialEq, Eq)]
pub struct FqPoly {
    pub field: Fq,
    /// Little-endian coefficients; invariant: no trailing zeros.
    pub coeffs: Vec<FqElem>,
}

impl std::fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.display('t'))
    }
}

impl FqPoly {
    pub fn new(field: Fq, coeffs: Vec<FqElem>) -> Self {
        let mut p = FqPoly { field, coeffs };
        p.normalize();
        p
    }

    pub fn zero(field: Fq) -> Self {
        FqPoly { field, coeffs: vec![] }
    }

    pub fn one(field: Fq) -> Self {
        let one = field.one();
        FqPoly { field, coeffs: vec![one] }
    }

    pub fn constant(field: Fq, c: FqElem) -> Self {
        FqPoly::new(field, vec![c])
    }

    pub fn x(field: Fq) -> Self {
        let z = field.zero();
        let o = field.one();
        FqPoly { field, coeffs: vec![z, o] }
    }

    /// Monic `x + c` style constructors from integer coefficient lists.
    pub fn from_ints(field: Fq, coeffs: &[i64]) -> Self {
        let cs = coeffs.iter().map(|&c| field.from_int(&BigInt::from(c))).collect();
        FqPoly::new(field, cs)
    }

    fn normalize(&mut self) {
        while let Some(last) = self.coeffs.last() {
            if self.field.is_zero(last) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of the zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &FqElem {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.field.is_one(self.leading())
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &FqPoly) -> FqPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect();
        FqPoly::new(f.clone(), coeffs)
    }

    pub fn sub(&self, other: &FqPoly) -> FqPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect();
        FqPoly::new(f.clone(), coeffs)
    }

    pub fn mul(&self, other: &FqPoly) -> FqPoly {
        if self.is_zero() || other.is_zero() {
            return FqPoly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        FqPoly::new(f.clone(), coeffs)
    }

    pub fn scale(&self, c: &FqElem) -> FqPoly {
        let f = &self.field;
        FqPoly::new(f.clone(), self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn divrem(&self, divisor: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        if divisor.is_zero() {
            return Err(Error::ZeroElement);
        }
        let f = &self.field;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let d = divisor.coeffs.len() - 1;
        if rem.len() <= d {
            return Ok((FqPoly::zero(f.clone()), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = f.mul(&rem[i], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            quot[i - d] = c.clone();
            for j in 0..=d {
                let s = f.mul(&c, &divisor.coeffs[j]);
                rem[i - d + j] = f.sub(&rem[i - d + j], &s);
            }
        }
        Ok((FqPoly::new(f.clone(), quot), FqPoly::new(f.clone(), rem)))
    }

    pub fn rem(&self, divisor: &FqPoly) -> Result<FqPoly> {
        Ok(self.divrem(divisor)?.1)
    }

    pub fn monic(&self) -> Result<FqPoly> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let inv = self.field.inv(self.leading())?;
        Ok(self.scale(&inv))
    }

    pub fn gcd(&self, other: &FqPoly) -> Result<FqPoly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    pub fn derivative(&self) -> FqPoly {
        let f = &self.field;
        if self.coeffs.len() <= 1 {
            return FqPoly::zero(f.clone());
        }
        let coeffs = (1..self.coeffs.len())
            .map(|i| {
                let k = f.from_u64((i as u64) % f.p());
                f.mul(&self.coeffs[i], &k)
            })
            .collect();
        FqPoly::new(f.clone(), coeffs)
    }

    pub fn eval(&self, x: &FqElem) -> FqElem {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// `self^n mod m` with an arbitrary-precision exponent.
    pub fn pow_mod(&self, n: &BigInt, m: &FqPoly) -> Result<FqPoly> {
        assert!(!n.is_negative());
        let mut acc = FqPoly::one(self.field.clone());
        let mut base = self.rem(m)?;
        let (_, digits) = n.to_u32_digits();
        let bits = n.bits();
        let _ = digits;
        for i in (0..bits).rev() {
            acc = acc.mul(&acc).rem(m)?;
            if n.bit(i) {
                acc = acc.mul(&base).rem(m)?;
            }
        }
        let _ = &mut base;
        Ok(acc)
    }

    /// Deterministic coefficient encoding for orderings: degree first, then
    /// coefficients from the constant term up.
    pub fn sort_key(&self) -> (usize, Vec<u128>) {
        let deg = if self.is_zero() { 0 } else { self.degree() };
        (deg, self.coeffs.iter().map(|c| self.field.encode(c)).collect())
    }

    pub fn display(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let cs = if f.degree() == 1 {
                format!("{}", c[0])
            } else {
                format!("({})", c.iter().enumerate().map(|(k, &v)| format!("{v}*a^{k}")).collect::<Vec<_>>().join("+"))
            };
            let term = match i {
                0 => cs,
                1 => {
                    if cs == "1" {
                        format!("{var}")
                    } else {
                        format!("{cs}*{var}")
                    }
                }
                _ => {
                    if cs == "1" {
                        format!("{var}^{i}")
                    } else {
                        format!("{cs}*{var}^{i}")
                    }
                }
            };
            terms.push(term);
        }
        terms.join("+")
    }

    fn seed(&self) -> u64 {
        // FNV-1a over the structure, for the deterministic CZ PRNG
        let mut h: u64 = 0xcbf29ce484222325;
        let mut feed = |x: u64| {
            h ^= x;
            h = h.wrapping_mul(0x100000001b3);
        };
        feed(self.field.p());
        feed(self.field.degree() as u64);
        for c in &self.coeffs {
            for &v in c {
                feed(v);
            }
        }
        h
    }

    /// Full factorization into monic irreducibles with multiplicities,
    /// sorted by (degree, coefficients). Deterministic.
    pub fn factor(&self) -> Result<Vec<(FqPoly, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut out: Vec<(FqPoly, u32)> = Vec::new();
        let monic = self.monic()?;
        if monic.degree() == 0 {
            return Ok(out);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed());
        for (g, mult) in squarefree_decomposition(&monic)? {
            for (h, d) in distinct_degree_split(&g)? {
                for irr in equal_degree_split(&h, d, &mut rng)? {
                    out.push((irr, mult));
                }
            }
        }
        out.sort_by(|a, b| a.0.sort_key().cmp(&b.0.sort_key()));
        Ok(out)
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        if self.is_zero() || self.degree() == 0 {
            return Ok(false);
        }
        let f = self.factor()?;
        Ok(f.len() == 1 && f[0].1 == 1)
    }

    /// Roots in the base field.
    pub fn roots(&self) -> Result<Vec<FqElem>> {
        let mut roots = Vec::new();
        for (g, _) in self.factor()? {
            if g.degree() == 1 {
                roots.push(self.field.neg(&g.coeffs[0]));
            }
        }
        Ok(roots)
    }
}

/// Squarefree decomposition over `F_q`, handling the char-p degeneration
/// `f = g(x^p)` via p-th roots of coefficients.
fn squarefree_decomposition(f: &FqPoly) -> Result<Vec<(FqPoly, u32)>> {
    let mut out = Vec::new();
    squarefree_inner(f, 1, &mut out)?;
    Ok(out)
}

fn squarefree_inner(f: &FqPoly, mult: u32, out: &mut Vec<(FqPoly, u32)>) -> Result<()> {
    if f.degree() == 0 {
        return Ok(());
    }
    let field = f.field.clone();
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f = g(x^p); take p-th roots of the surviving coefficients
        let p = field.p() as usize;
        let root_exp = field.size() / field.p() as u128;
        let mut coeffs = Vec::new();
        for i in (0..f.coeffs.len()).step_by(p) {
            coeffs.push(field.pow(&f.coeffs[i], root_exp));
        }
        let g = FqPoly::new(field, coeffs);
        return squarefree_inner(&g, mult * field_p(f), out);
    }
    let mut c = f.gcd(&deriv)?;
    let mut w = f.divrem(&c)?.0;
    let mut i = 1u32;
    while w.degree() > 0 {
        let y = w.gcd(&c)?;
        let fac = w.divrem(&y)?.0;
        if fac.degree() > 0 {
            out.push((fac.monic()?, mult * i));
        }
        w = y.clone();
        c = c.divrem(&y)?.0;
        i += 1;
    }
    if c.degree() > 0 {
        squarefree_inner(&c, mult, out)?;
    }
    Ok(())
}

fn field_p(f: &FqPoly) -> u32 {
    u32::try_from(f.field.p()).expect("characteristic fits u32 for p-th power splitting")
}

/// Distinct-degree split of a squarefree monic polynomial: returns pairs
/// (product of the irreducible factors of degree d, d).
fn distinct_degree_split(f: &FqPoly) -> Result<Vec<(FqPoly, usize)>> {
    let field = f.field.clone();
    let q = BigInt::from(field.size());
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FqPoly::x(field.clone());
    let mut h = x.clone();
    let mut d = 0usize;
    while rest.degree() >= 1 {
        d += 1;
        if rest.degree() < 2 * d {
            out.push((rest.clone(), rest.degree()));
            break;
        }
        h = h.pow_mod(&q, &rest)?;
        let g = h.sub(&x).gcd(&rest)?;
        if !g.is_zero() && g.degree() > 0 {
            out.push((g.clone(), d));
            rest = rest.divrem(&g)?.0;
            h = h.rem(&rest)?;
        }
    }
    Ok(out)
}

/// Cantor-Zassenhaus equal-degree splitting.
fn equal_degree_split(f: &FqPoly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<FqPoly>> {
    let field = f.field.clone();
    if f.degree() == d {
        return Ok(vec![f.monic()?]);
    }
    let n = f.degree();
    loop {
        // random polynomial of degree < n
        let coeffs: Vec<FqElem> = (0..n)
            .map(|_| field.decode(rng.gen_range(0..field.size())))
            .collect();
        let a = FqPoly::new(field.clone(), coeffs);
        if a.is_zero() || a.degree() == 0 {
            continue;
        }
        let g0 = a.gcd(f)?;
        let split = if !g0.is_zero() && g0.degree() > 0 && g0.degree() < f.degree() {
            Some(g0)
        } else if field.p() == 2 {
            // trace map over F_2: T(a) = a + a^2 + ... + a^(2^(k-1))
            let k = (field.degree() as usize) * d;
            let mut t = a.rem(f)?;
            let mut sq = a.rem(f)?;
            for _ in 1..k {
                sq = sq.mul(&sq).rem(f)?;
                t = t.add(&sq);
            }
            let g = t.gcd(f)?;
            if !g.is_zero() && g.degree() > 0 && g.degree() < f.degree() {
                Some(g)
            } else {
                None
            }
        } else {
            let exp = (BigInt::from(field.size()).pow(d as u32) - 1) / 2;
            let b = a.pow_mod(&exp, f)?;
            let g = b.sub(&FqPoly::one(field.clone())).gcd(f)?;
            if !g.is_zero() && g.degree() > 0 && g.degree() < f.degree() {
                Some(g)
            } else {
                None
            }
        };
        if let Some(g) = split {
            let h = f.divrem(&g)?.0;
            let mut out = equal_degree_split(&g, d, rng)?;
            out.extend(equal_degree_split(&h, d, rng)?);
            return Ok(out);
        }
    }
}

/// The residue field `F_q[x]/(modulus)` of a prime or place, with
/// deterministic generator choice and BSGS discrete logarithms.
#[derive(Clone)]
pub struct FqQuot {
    pub base: Fq,
    pub modulus: FqPoly,
}

pub const DLOG_ORDER_CAP: u128 = 100_000_000;

impl FqQuot {
    pub fn new(modulus: FqPoly) -> Self {
        assert!(modulus.is_monic() && modulus.degree() >= 1);
        FqQuot { base: modulus.field.clone(), modulus }
    }

    pub fn size(&self) -> u128 {
        self.base.size().pow(self.modulus.degree() as u32)
    }

    /// Order of the unit group, `q^d - 1`.
    pub fn unit_order(&self) -> u128 {
        self.size() - 1
    }

    pub fn reduce(&self, a: &FqPoly) -> FqPoly {
        a.rem(&self.modulus).expect("modulus is nonzero")
    }

    pub fn one(&self) -> FqPoly {
        FqPoly::one(self.base.clone())
    }

    pub fn is_one(&self, a: &FqPoly) -> bool {
        !a.is_zero() && a.degree() == 0 && self.base.is_one(&a.coeffs[0])
    }

    pub fn mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.reduce(&a.mul(b))
    }

    pub fn inv(&self, a: &FqPoly) -> Result<FqPoly> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let exp = BigInt::from(self.unit_order()) - 1;
        a.pow_mod(&exp, &self.modulus)
    }

    pub fn pow(&self, a: &FqPoly, n: &BigInt) -> Result<FqPoly> {
        if n.is_negative() {
            let inv = self.inv(a)?;
            return inv.pow_mod(&(-n), &self.modulus);
        }
        a.pow_mod(n, &self.modulus)
    }

    pub fn elem_from_index(&self, mut idx: u128) -> FqPoly {
        let mut coeffs = Vec::new();
        let q = self.base.size();
        for _ in 0..self.modulus.degree() {
            coeffs.push(self.base.decode(idx % q));
            idx /= q;
        }
        FqPoly::new(self.base.clone(), coeffs)
    }

    pub fn index_of(&self, a: &FqPoly) -> u128 {
        let q = self.base.size();
        let mut acc = 0u128;
        for i in (0..self.modulus.degree()).rev() {
            acc = acc * q + self.base.encode(&a.coeff(i));
        }
        acc
    }

    fn elem_key(&self, a: &FqPoly) -> Vec<u64> {
        let mut key = Vec::new();
        for i in 0..self.modulus.degree() {
            key.extend(a.coeff(i));
        }
        key
    }

    pub fn element_order(&self, a: &FqPoly) -> Result<u128> {
        let n = self.unit_order();
        let fac = intfactor::factor(&BigInt::from(n))?;
        let mut order = n;
        for (r, _) in &fac {
            let r = *r as u128;
            while order % r == 0 {
                let cand = order / r;
                if self.is_one(&self.pow(a, &BigInt::from(cand))?) {
                    order = cand;
                } else {
                    break;
                }
            }
        }
        Ok(order)
    }

    /// The generator of the unit group with the smallest element index.
    pub fn generator(&self) -> Result<FqPoly> {
        let n = self.unit_order();
        if n == 1 {
            return Ok(self.one());
        }
        for idx in 1..self.size() {
            let cand = self.elem_from_index(idx);
            if self.element_order(&cand)? == n {
                return Ok(cand);
            }
        }
        Err(Error::Inconclusive("no generator in residue field".into()))
    }

    /// Baby-step/giant-step discrete log of `x` to base `g` of order `n`.
    pub fn dlog(&self, g: &FqPoly, x: &FqPoly, n: u128) -> Result<u128> {
        if n > DLOG_ORDER_CAP {
            return Err(Error::BoundExceeded(format!(
                "discrete log order {n} exceeds the cap {DLOG_ORDER_CAP}"
            )));
        }
        if self.is_one(x) || n == 1 {
            return Ok(0);
        }
        let m = (n as f64).sqrt().ceil() as u128 + 1;
        let mut table: HashMap<Vec<u64>, u128> = HashMap::new();
        let mut cur = self.one();
        for j in 0..m {
            table.entry(self.elem_key(&cur)).or_insert(j);
            cur = self.mul(&cur, g);
        }
        // giant factor g^(-m)
        let gm = self.pow(g, &BigInt::from(m))?;
        let giant = self.inv(&gm)?;
        let mut gamma = self.reduce(x);
        for i in 0..=m {
            if let Some(&j) = table.get(&self.elem_key(&gamma)) {
                return Ok((i * m + j) % n);
            }
            gamma = self.mul(&gamma, &giant);
        }
        Err(Error::Inconclusive("dlog not found; element outside the cyclic group".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_x2_plus_1_mod_5() {
        // oracle: exhaustive root search mod 5 gives roots 2 and 3
        let f5 = Fq::prime(5).unwrap();
        let f = FqPoly::from_ints(f5.clone(), &[1, 0, 1]);
        let mut roots: Vec<u64> = (0..5)
            .filter(|&r| {
                let v = f.eval(&f5.from_u64(r));
                f5.is_zero(&v)
            })
            .map(|r| r)
            .collect();
        roots.sort_unstable();
        assert_eq!(roots, vec![2, 3]);
        let fac = f.factor().unwrap();
        assert_eq!(fac.len(), 2);
        assert!(fac.iter().all(|(g, m)| g.degree() == 1 && *m == 1));
    }

    #[test]
    fn factor_x2_plus_1_mod_2_is_square() {
        let f2 = Fq::prime(2).unwrap();
        let f = FqPoly::from_ints(f2.clone(), &[1, 0, 1]);
        let fac = f.factor().unwrap();
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].1, 2);
        assert_eq!(fac[0].0, FqPoly::from_ints(f2, &[1, 1]));
    }

    #[test]
    fn x2_plus_1_mod_3_is_irreducible() {
        let f3 = Fq::prime(3).unwrap();
        // oracle: no roots mod 3 and degree 2
        let f = FqPoly::from_ints(f3.clone(), &[1, 0, 1]);
        for r in 0..3 {
            assert!(!f3.is_zero(&f.eval(&f3.from_u64(r))));
        }
        assert!(f.is_irreducible().unwrap());
    }

    #[test]
    fn extension_field_arithmetic() {
        let f4 = Fq::extension(2, 2).unwrap();
        assert_eq!(f4.size(), 4);
        let g = f4.generator().unwrap();
        assert!(f4.is_one(&f4.pow(&g, 3)));
        assert!(!f4.is_one(&f4.pow(&g, 1)));
        // x^2+x+1 is the deterministic modulus over F_2
        assert_eq!(f4.modulus, vec![1, 1, 1]);
    }

    #[test]
    fn quotient_field_dlog_roundtrip() {
        let f3 = Fq::prime(3).unwrap();
        let pi = FqPoly::from_ints(f3.clone(), &[1, 0, 1]); // x^2+1 irreducible mod 3
        let rf = FqQuot::new(pi);
        assert_eq!(rf.unit_order(), 8);
        let g = rf.generator().unwrap();
        for k in 0..8u128 {
            let x = rf.pow(&g, &BigInt::from(k)).unwrap();
            assert_eq!(rf.dlog(&g, &x, 8).unwrap(), k);
        }
    }

    #[test]
    fn smallest_primitive_root_mod_7_is_3() {
        let f7 = Fq::prime(7).unwrap();
        let g = f7.generator().unwrap();
        assert_eq!(g, f7.from_u64(3));
    }

    #[test]
    fn factor_big_mixed() {
        // (x+1)^2 (x^2+x+2) over F_3: reassemble and compare
        let f3 = Fq::prime(3).unwrap();
        let a = FqPoly::from_ints(f3.clone(), &[1, 1]);
        let b = FqPoly::from_ints(f3.clone(), &[2, 1, 1]);
        let f = a.mul(&a).mul(&b);
        let fac = f.factor().unwrap();
        let mut rebuilt = FqPoly::one(f3);
        for (g, m) in &fac {
            for _ in 0..*m {
                rebuilt = rebuilt.mul(g);
            }
        }
        assert_eq!(rebuilt, f);
        assert_eq!(fac.len(), 2);
    }
}
