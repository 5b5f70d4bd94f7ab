//! Places, divisors and modulus class groups for open subschemes of the
//! projective line over a finite field.
//!
//! `ff_h0` presents the relative Picard group of (P^1, Sigma) on one
//! residue generator per place of Sigma plus a degree-1 class, with the
//! constant-field diagonal as the only extra relation; `class_of` factors
//! divisors through a canonical rational function. The degree-zero part is
//! cross-checkable against brute-force enumeration of the residue quotient.

use crate::abgrp::{FGAbelianGroup, GroupHom};
use crate::error::{Error, Result};
use crate::finfield::{Fq, FqElem, FqPoly, FqQuot};
use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// A closed point of P^1: a monic irreducible polynomial or infinity.
#[derive(Clone, PartialEq, Eq)]
pub enum PlaceOfP1 {
    Infinity,
    Finite(FqPoly),
}

impl PlaceOfP1 {
    pub fn finite(poly: FqPoly) -> Result<PlaceOfP1> {
        if poly.is_zero() || poly.degree() == 0 {
            return Err(Error::BadInput("a finite place needs a nonconstant polynomial".into()));
        }
        if !poly.is_monic() {
            return Err(Error::BadInput("place polynomial must be monic".into()));
        }
        if !poly.is_irreducible()? {
            return Err(Error::BadInput(format!(
                "place polynomial {} is not irreducible",
                poly.display('t')
            )));
        }
        Ok(PlaceOfP1::Finite(poly))
    }

    pub fn degree(&self) -> usize {
        match self {
            PlaceOfP1::Infinity => 1,
            PlaceOfP1::Finite(p) => p.degree(),
        }
    }

    fn sort_key(&self) -> (usize, u8, Vec<u128>) {
        match self {
            PlaceOfP1::Infinity => (1, 1, vec![]),
            PlaceOfP1::Finite(p) => {
                let (d, enc) = p.sort_key();
                (d, 0, enc)
            }
        }
    }
}

impl PartialOrd for PlaceOfP1 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for PlaceOfP1 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl std::fmt::Debug for PlaceOfP1 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PlaceOfP1::Infinity => write!(f, "inf"),
            PlaceOfP1::Finite(p) => write!(f, "{}", p.display('t')),
        }
    }
}

impl std::fmt::Display for PlaceOfP1 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

/// A finitely supported integer combination of places.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FFDivisor {
    pub coeffs: BTreeMap<PlaceOfP1, BigInt>,
}

impl FFDivisor {
    pub fn zero() -> FFDivisor {
        FFDivisor { coeffs: BTreeMap::new() }
    }

    pub fn single(place: PlaceOfP1, n: i64) -> FFDivisor {
        let mut d = FFDivisor::zero();
        d.add_place(place, BigInt::from(n));
        d
    }

    pub fn add_place(&mut self, place: PlaceOfP1, n: BigInt) {
        if n.is_zero() {
            return;
        }
        let e = self.coeffs.entry(place).or_insert_with(BigInt::zero);
        *e += n;
        if e.is_zero() {
            let dead: Vec<PlaceOfP1> =
                self.coeffs.iter().filter(|(_, v)| v.is_zero()).map(|(k, _)| k.clone()).collect();
            for k in dead {
                self.coeffs.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &FFDivisor) -> FFDivisor {
        let mut out = self.clone();
        for (p, n) in &other.coeffs {
            out.add_place(p.clone(), n.clone());
        }
        out
    }

    pub fn scale(&self, n: &BigInt) -> FFDivisor {
        let mut out = FFDivisor::zero();
        for (p, c) in &self.coeffs {
            out.add_place(p.clone(), c * n);
        }
        out
    }

    pub fn neg(&self) -> FFDivisor {
        self.scale(&BigInt::from(-1))
    }

    pub fn degree(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|(p, n)| n * BigInt::from(p.degree() as u64))
            .fold(BigInt::zero(), |a, b| a + b)
    }

    pub fn supported_away_from(&self, sigma: &[PlaceOfP1]) -> bool {
        self.coeffs.keys().all(|p| !sigma.contains(p))
    }
}

/// A nonzero rational function num/den over F_q(t).
#[derive(Clone, Debug)]
pub struct RationalFn {
    pub num: FqPoly,
    pub den: FqPoly,
}

impl RationalFn {
    pub fn new(num: FqPoly, den: FqPoly) -> Result<RationalFn> {
        if num.is_zero() || den.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(RationalFn { num, den })
    }

    pub fn from_poly(p: FqPoly) -> Result<RationalFn> {
        let one = FqPoly::one(p.field.clone());
        RationalFn::new(p, one)
    }

    /// Valuation at a place (minus pole order at infinity).
    pub fn valuation(&self, place: &PlaceOfP1) -> Result<i64> {
        match place {
            PlaceOfP1::Infinity => Ok(self.den.degree() as i64 - self.num.degree() as i64),
            PlaceOfP1::Finite(pi) => {
                Ok(poly_valuation(&self.num, pi)? as i64 - poly_valuation(&self.den, pi)? as i64)
            }
        }
    }

    /// Residue at a place where the valuation is zero, as an element of the
    /// residue field (a polynomial mod pi; a constant at infinity).
    pub fn residue(&self, place: &PlaceOfP1) -> Result<FqPoly> {
        match place {
            PlaceOfP1::Infinity => {
                if self.num.degree() != self.den.degree() {
                    return Err(Error::BadInput("function has a zero or pole at infinity".into()));
                }
                let field = self.num.field.clone();
                let c = field.mul(
                    self.num.leading(),
                    &field.inv(self.den.leading())?,
                );
                Ok(FqPoly::constant(field, c))
            }
            PlaceOfP1::Finite(pi) => {
                let rf = FqQuot::new(pi.clone());
                let (n, a) = strip_factor(&self.num, pi)?;
                let (d, b) = strip_factor(&self.den, pi)?;
                if a != b {
                    return Err(Error::BadInput(format!(
                        "function has a zero or pole at {}",
                        pi.display('t')
                    )));
                }
                let r = rf.mul(&rf.reduce(&n), &rf.inv(&rf.reduce(&d))?);
                Ok(r)
            }
        }
    }

    /// Is `v_P(f - 1) >= 1`?
    pub fn is_one_at(&self, place: &PlaceOfP1) -> Result<bool> {
        let diff = self.num.sub(&self.den);
        if diff.is_zero() {
            return Ok(true);
        }
        match place {
            PlaceOfP1::Infinity => {
                Ok((self.den.degree() as i64 - diff.degree() as i64) >= 1)
            }
            PlaceOfP1::Finite(pi) => {
                let vd = poly_valuation(&self.den, pi)? as i64;
                let vdiff = poly_valuation(&diff, pi)? as i64;
                Ok(vdiff - vd >= 1)
            }
        }
    }

    /// The principal divisor of the function.
    pub fn divisor(&self) -> Result<FFDivisor> {
        let mut d = FFDivisor::zero();
        for (pi, m) in self.num.factor()? {
            d.add_place(PlaceOfP1::Finite(pi), BigInt::from(m));
        }
        for (pi, m) in self.den.factor()? {
            d.add_place(PlaceOfP1::Finite(pi), -BigInt::from(m));
        }
        d.add_place(
            PlaceOfP1::Infinity,
            BigInt::from(self.den.degree() as i64 - self.num.degree() as i64),
        );
        debug_assert!(d.degree().is_zero(), "principal divisors have degree zero");
        Ok(d)
    }
}

fn poly_valuation(f: &FqPoly, pi: &FqPoly) -> Result<u32> {
    Ok(strip_factor(f, pi)?.1)
}

fn strip_factor(f: &FqPoly, pi: &FqPoly) -> Result<(FqPoly, u32)> {
    let mut cur = f.clone();
    let mut v = 0u32;
    loop {
        let (q, r) = cur.divrem(pi)?;
        if r.is_zero() {
            cur = q;
            v += 1;
        } else {
            return Ok((cur, v));
        }
    }
}

/// The divisor of a function required to be 1 at every place of Sigma.
/// Reports the first failing place otherwise.
pub fn ff_div(f: &RationalFn, sigma: &[PlaceOfP1]) -> Result<FFDivisor> {
    for place in sigma {
        if !f.is_one_at(place)? {
            return Err(Error::InvalidWitness {
                place: format!("{place}"),
                reason: "function is not congruent to 1 there".into(),
            });
        }
    }
    let d = f.divisor()?;
    assert!(d.supported_away_from(sigma), "one-units have support away from the modulus");
    Ok(d)
}


/// Parse a place string: `inf` or a monic polynomial in `t` with integer
/// coefficients reduced into the field.
pub fn parse_place(fq: &Fq, spec: &str) -> Result<PlaceOfP1> {
    let s = spec.trim();
    if s.eq_ignore_ascii_case("inf") || s == "oo" {
        return Ok(PlaceOfP1::Infinity);
    }
    let coeffs = crate::numfield::parse_zpoly(s, 't')?;
    let poly = FqPoly::new(
        fq.clone(),
        coeffs.iter().map(|c| fq.from_int(c)).collect::<Vec<_>>(),
    );
    PlaceOfP1::finite(poly)
}

/// All monic irreducibles of a given degree, in encoding order.
pub fn irreducible_monics(fq: &Fq, degree: usize) -> Result<Vec<FqPoly>> {
    if degree == 0 || degree > 4 {
        return Err(Error::BoundExceeded(format!(
            "place enumeration limited to degrees 1..4, got {degree}"
        )));
    }
    let q = fq.size();
    let count = q.checked_pow(degree as u32).ok_or_else(|| {
        Error::BoundExceeded("too many candidate polynomials".into())
    })?;
    if count > 1 << 20 {
        return Err(Error::BoundExceeded("too many candidate polynomials".into()));
    }
    let mut out = Vec::new();
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut k = idx;
        for _ in 0..degree {
            coeffs.push(fq.decode(k % q));
            k /= q;
        }
        coeffs.push(fq.one());
        let cand = FqPoly::new(fq.clone(), coeffs);
        if cand.is_irreducible()? {
            out.push(cand);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// h0 of P^1 - Sigma
// ---------------------------------------------------------------------------

#[derive(Clone)]
pub struct FFResidueFactor {
    pub place: PlaceOfP1,
    /// q^deg - 1.
    pub order: BigInt,
    /// Deterministic generator of the residue field units (a polynomial
    /// mod pi; a constant for infinity).
    pub generator: FqPoly,
}

impl FFResidueFactor {
    fn dlog(&self, x: &FqPoly) -> Result<BigInt> {
        let n = self.order.to_u128().ok_or_else(|| {
            Error::BoundExceeded("residue order exceeds the discrete log range".into())
        })?;
        if n <= 1 {
            return Ok(BigInt::zero());
        }
        match &self.place {
            PlaceOfP1::Infinity => {
                // constants: dlog in the base field
                let field = self.generator.field.clone();
                let rf = FqQuot::new(FqPoly::x(field));
                Ok(BigInt::from(rf.dlog(&self.generator, x, n)?))
            }
            PlaceOfP1::Finite(pi) => {
                let rf = FqQuot::new(pi.clone());
                Ok(BigInt::from(rf.dlog(&self.generator, x, n)?))
            }
        }
    }
}

/// The group `Pic(P^1, Sigma)` with its degree map and divisor evaluation.
#[derive(Clone)]
pub struct FfH0 {
    pub fq: Fq,
    pub sigma: Vec<PlaceOfP1>,
    /// Generators: one residue generator per place of sigma, then the
    /// degree-one class z.
    pub group: FGAbelianGroup,
    pub factors: Vec<FFResidueFactor>,
    /// A degree-1 divisor away from sigma representing z.
    pub z_divisor: FFDivisor,
    /// Representative divisors of the generators (principal one-unit twists
    /// for the residue generators, z_divisor for z).
    pub gen_reps: Vec<FFDivisor>,
}

impl std::fmt::Debug for FfH0 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FfH0(q={}, sigma={:?}, {:?})", self.fq.size(), self.sigma, self.group)
    }
}

pub fn ff_h0(fq: &Fq, sigma: &[PlaceOfP1]) -> Result<FfH0> {
    let mut sigma: Vec<PlaceOfP1> = sigma.to_vec();
    sigma.sort();
    for w in sigma.windows(2) {
        if w[0] == w[1] {
            return Err(Error::NonSquarefreeModulus(format!("place {} repeated", w[0])));
        }
    }
    let s = sigma.len();
    // residue factors
    let mut factors = Vec::with_capacity(s);
    for place in &sigma {
        let (order, generator) = match place {
            PlaceOfP1::Infinity => {
                let n = fq.size() - 1;
                let g = if n == 0 { fq.one() } else { fq.generator()? };
                (BigInt::from(n), FqPoly::constant(fq.clone(), g))
            }
            PlaceOfP1::Finite(pi) => {
                let rf = FqQuot::new(pi.clone());
                (BigInt::from(rf.unit_order()), rf.generator()?)
            }
        };
        factors.push(FFResidueFactor { place: place.clone(), order, generator });
    }
    // degree-one divisor away from sigma
    let z_divisor = degree_one_divisor(fq, &sigma)?;
    // relations: residue orders and the constant-field diagonal
    let ngens = s + 1;
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        let mut col = vec![BigInt::zero(); ngens];
        col[i] = f.order.clone();
        cols.push(col);
    }
    if fq.size() > 2 && s > 0 {
        let c = fq.generator()?;
        let cpoly = FqPoly::constant(fq.clone(), c);
        let mut col = vec![BigInt::zero(); ngens];
        for (i, f) in factors.iter().enumerate() {
            col[i] = f.dlog(&match &f.place {
                PlaceOfP1::Infinity => cpoly.clone(),
                PlaceOfP1::Finite(pi) => FqQuot::new(pi.clone()).reduce(&cpoly),
            })?;
        }
        cols.push(col);
    }
    let group = FGAbelianGroup::from_relations(ngens, IntMatrix::from_cols(ngens, &cols));
    let mut h0 = FfH0 { fq: fq.clone(), sigma, group, factors, z_divisor, gen_reps: vec![] };
    // representative divisors
    let mut reps = Vec::with_capacity(ngens);
    for i in 0..s {
        let f = h0.residue_rep_function(i)?;
        reps.push(f.divisor()?);
    }
    reps.push(h0.z_divisor.clone());
    h0.gen_reps = reps;
    // self-consistency: representatives evaluate to their own generators
    for (i, rep) in h0.gen_reps.iter().enumerate() {
        let c = h0.class_of(rep)?;
        let mut e = vec![BigInt::zero(); h0.group.ngens()];
        e[i] = BigInt::one();
        if !h0.group.elements_equal(&c, &e) {
            return Err(Error::Inconclusive(format!(
                "generator representative {i} does not evaluate to itself"
            )));
        }
    }
    Ok(h0)
}

/// A degree-1 divisor supported away from sigma: a rational place when one
/// is free, otherwise a Bezout combination of higher-degree places.
fn degree_one_divisor(fq: &Fq, sigma: &[PlaceOfP1]) -> Result<FFDivisor> {
    let mut chosen: Vec<(PlaceOfP1, i64)> = Vec::new();
    let mut g = 0i64;
    for d in 1..=4usize {
        let mut places: Vec<PlaceOfP1> = Vec::new();
        if d == 1 {
            places.push(PlaceOfP1::Infinity);
        }
        for pi in irreducible_monics(fq, d)? {
            places.push(PlaceOfP1::Finite(pi));
        }
        places.sort();
        for place in places {
            if sigma.contains(&place) {
                continue;
            }
            let nd = gcd_i64(g, d as i64);
            if nd < g || g == 0 {
                chosen.push((place, d as i64));
                g = nd;
                break;
            }
        }
        if g == 1 {
            break;
        }
    }
    if g != 1 {
        return Err(Error::EmptyScheme(
            "no degree-one combination of places outside the modulus".into(),
        ));
    }
    // Bezout: sum a_i d_i = 1 over the chosen degrees
    let mut coeffs = vec![0i64; chosen.len()];
    let mut acc = chosen[0].1;
    coeffs[0] = 1;
    for i in 1..chosen.len() {
        let (gg, x, y) = ext_gcd_i64(acc, chosen[i].1);
        for c in coeffs.iter_mut().take(i) {
            *c *= x;
        }
        coeffs[i] = y;
        acc = gg;
    }
    assert_eq!(acc, 1);
    let mut div = FFDivisor::zero();
    for ((place, _), a) in chosen.into_iter().zip(coeffs) {
        div.add_place(place, BigInt::from(a));
    }
    assert_eq!(div.degree(), BigInt::one());
    Ok(div)
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i64(b, a % b)
    }
}

fn ext_gcd_i64(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd_i64(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl FfH0 {
    pub fn ngens(&self) -> usize {
        self.group.ngens()
    }

    fn z_index(&self) -> usize {
        self.factors.len()
    }

    /// The degree map to Z as a homomorphism onto the free group of rank 1.
    pub fn degree_map(&self) -> GroupHom {
        let mut mat = IntMatrix::zero(1, self.ngens());
        mat.set(0, self.z_index(), BigInt::one());
        GroupHom::new(self.group.clone(), FGAbelianGroup::free(1), mat)
            .expect("degree map kills all relations")
    }

    /// The degree-zero subgroup with its inclusion.
    pub fn degree_zero_part(&self) -> (FGAbelianGroup, GroupHom) {
        self.degree_map().kernel()
    }

    /// Class of a divisor supported away from sigma.
    pub fn class_of(&self, d: &FFDivisor) -> Result<Vec<BigInt>> {
        if !d.supported_away_from(&self.sigma) {
            let bad = d.coeffs.keys().find(|p| self.sigma.contains(p)).unwrap();
            return Err(Error::SupportMeetsModulus(format!("{bad}")));
        }
        let deg = d.degree();
        let e = d.add(&self.z_divisor.scale(&(-deg.clone())));
        // canonical function with divisor e (degree zero on P^1)
        let f = function_with_divisor(&self.fq, &e)?;
        debug_assert_eq!(f.divisor()?, e);
        let mut coords = vec![BigInt::zero(); self.ngens()];
        for (i, fac) in self.factors.iter().enumerate() {
            let r = f.residue(&fac.place)?;
            coords[i] = fac.dlog(&r)?;
        }
        coords[self.z_index()] = deg;
        Ok(self.group.reduce(&coords))
    }

    /// The connecting building block: residue data alpha at one modulus
    /// place (1 elsewhere) maps to dlog(alpha) times that generator.
    pub fn class_of_residue_at(&self, place: &PlaceOfP1, alpha: &FqPoly) -> Result<Vec<BigInt>> {
        let i = self
            .factors
            .iter()
            .position(|f| &f.place == place)
            .ok_or_else(|| Error::BadInput(format!("place {place} is not in the modulus")))?;
        let mut coords = vec![BigInt::zero(); self.ngens()];
        coords[i] = self.factors[i].dlog(alpha)?;
        Ok(self.group.reduce(&coords))
    }

    /// A rational function congruent to the residue generator at the i-th
    /// modulus place and to 1 at every other place of sigma (including
    /// infinity when present).
    fn residue_rep_function(&self, i: usize) -> Result<RationalFn> {
        let fq = &self.fq;
        let one = FqPoly::one(fq.clone());
        // CRT data over the finite places; infinity handled by degrees
        let mut finite: Vec<(FqPoly, FqPoly)> = Vec::new(); // (pi, target)
        let mut inf_target: Option<FqElem> = None;
        for (j, fac) in self.factors.iter().enumerate() {
            let target_here = i == j;
            match &fac.place {
                PlaceOfP1::Infinity => {
                    let c = if target_here { fac.generator.coeff(0) } else { fq.one() };
                    inf_target = Some(c);
                }
                PlaceOfP1::Finite(pi) => {
                    let t = if target_here { fac.generator.clone() } else { one.clone() };
                    finite.push((pi.clone(), t));
                }
            }
        }
        let modulus: FqPoly =
            finite.iter().fold(one.clone(), |acc, (pi, _)| acc.mul(pi));
        let crt = fqpoly_crt(fq, &finite)?;
        let dd = if modulus.is_zero() { 0 } else { modulus.degree() };
        let m = dd + 1;
        let lead = inf_target.unwrap_or_else(|| fq.one());
        // numerator: crt + lead * modulus * t^(m - dd), monic of degree m up
        // to the chosen leading coefficient
        let mut shift_coeffs = vec![fq.zero(); m - dd];
        shift_coeffs.push(lead.clone());
        let shift = FqPoly::new(fq.clone(), shift_coeffs);
        let num = crt.add(&modulus.mul(&shift));
        // denominator: t^m adjusted to be 1 mod the modulus
        let mut tm_coeffs = vec![fq.zero(); m];
        tm_coeffs.push(fq.one());
        let tm = FqPoly::new(fq.clone(), tm_coeffs);
        let r = tm.rem(&modulus)?;
        let den = tm.sub(&r).add(&one);
        RationalFn::new(num, den)
    }

    /// Natural map to the h0 of a smaller modulus, via representative
    /// divisors; well-definedness is checked on every relation.
    pub fn natural_map_to(&self, other: &FfH0) -> Result<GroupHom> {
        let mut cols = Vec::with_capacity(self.ngens());
        for rep in &self.gen_reps {
            cols.push(other.class_of(rep)?);
        }
        GroupHom::new(
            self.group.clone(),
            other.group.clone(),
            IntMatrix::from_cols(other.ngens(), &cols),
        )
    }
}

/// CRT over F_q[t] for pairwise coprime moduli.
fn fqpoly_crt(fq: &Fq, parts: &[(FqPoly, FqPoly)]) -> Result<FqPoly> {
    let one = FqPoly::one(fq.clone());
    let mut acc = FqPoly::zero(fq.clone());
    for (i, (pi, target)) in parts.iter().enumerate() {
        let mut others = one.clone();
        for (j, (pj, _)) in parts.iter().enumerate() {
            if i != j {
                others = others.mul(pj);
            }
        }
        // invert `others` modulo pi
        let rf = FqQuot::new(pi.clone());
        let inv = rf.inv(&rf.reduce(&others))?;
        let term = target.mul(&others).mul(&inv);
        acc = acc.add(&term);
    }
    // reduce modulo the product
    let modulus = parts.iter().fold(one, |a, (pi, _)| a.mul(pi));
    if modulus.degree() == 0 {
        return Ok(FqPoly::zero(fq.clone()));
    }
    acc.rem(&modulus)
}

/// Canonical rational function with a given degree-zero divisor.
fn function_with_divisor(fq: &Fq, d: &FFDivisor) -> Result<RationalFn> {
    let mut num = FqPoly::one(fq.clone());
    let mut den = FqPoly::one(fq.clone());
    for (place, n) in &d.coeffs {
        if let PlaceOfP1::Finite(pi) = place {
            let e = n.to_i64().ok_or_else(|| {
                Error::BoundExceeded("divisor coefficient too large".into())
            })?;
            for _ in 0..e.abs() {
                if e > 0 {
                    num = num.mul(pi);
                } else {
                    den = den.mul(pi);
                }
            }
        }
    }
    let f = RationalFn::new(num, den)?;
    // the infinity coefficient must close the degree
    let implied = BigInt::from(f.den.degree() as i64 - f.num.degree() as i64);
    let stated = d.coeffs.get(&PlaceOfP1::Infinity).cloned().unwrap_or_else(BigInt::zero);
    if implied != stated {
        return Err(Error::BadInput("divisor does not have degree zero".into()));
    }
    Ok(f)
}

/// h1 of P^1 - Sigma: trivial when Sigma is nonempty, the constant units
/// otherwise.
pub fn ff_h1(fq: &Fq, sigma: &[PlaceOfP1]) -> FGAbelianGroup {
    if sigma.is_empty() {
        let n = (fq.size() - 1) as u64;
        FGAbelianGroup::cyclic(n.max(1))
    } else {
        FGAbelianGroup::trivial()
    }
}

/// Brute-force model of the degree-zero part: the quotient of the product
/// of residue-field unit groups by the diagonal constants. Returns, for
/// each divisor n of the order, the number of solutions of x^n = 1.
pub fn degree_zero_brute_counts(fq: &Fq, sigma: &[PlaceOfP1]) -> Result<BTreeMap<u64, u64>> {
    let mut sigma: Vec<PlaceOfP1> = sigma.to_vec();
    sigma.sort();
    let quots: Vec<FqQuot> = sigma
        .iter()
        .map(|p| match p {
            PlaceOfP1::Infinity => FqQuot::new(FqPoly::x(fq.clone())),
            PlaceOfP1::Finite(pi) => FqQuot::new(pi.clone()),
        })
        .collect();
    let sizes: Vec<u128> = quots.iter().map(|r| r.unit_order()).collect();
    let total: u128 = sizes.iter().product();
    if total > 1 << 22 {
        return Err(Error::BoundExceeded("brute-force quotient too large".into()));
    }
    // enumerate unit tuples by mixed radix over generator exponents
    let gens: Vec<FqPoly> = quots.iter().map(|r| r.generator()).collect::<Result<Vec<_>>>()?;
    let mut canonical: std::collections::BTreeSet<Vec<u128>> = Default::default();
    let mut idx = vec![0u128; sigma.len()];
    let consts: Vec<FqElem> = {
        let mut v = Vec::new();
        let mut c = fq.one();
        let g = if fq.size() > 2 { fq.generator()? } else { fq.one() };
        loop {
            v.push(c.clone());
            c = fq.mul(&c, &g);
            if fq.is_one(&c) {
                break;
            }
        }
        v
    };
    loop {
        // the tuple of residue elements
        let tuple: Vec<FqPoly> = idx
            .iter()
            .zip(&quots)
            .zip(&gens)
            .map(|((&e, r), g)| r.pow(g, &BigInt::from(e)).expect("power"))
            .collect();
        // canonical representative of the diagonal orbit
        let mut best: Option<Vec<u128>> = None;
        for c in &consts {
            let scaled: Vec<u128> = tuple
                .iter()
                .zip(&quots)
                .map(|(x, r)| {
                    let cp = FqPoly::constant(fq.clone(), c.clone());
                    r.index_of(&r.mul(x, &cp))
                })
                .collect();
            match &best {
                Some(b) if *b <= scaled => {}
                _ => best = Some(scaled),
            }
        }
        canonical.insert(best.unwrap());
        // odometer
        let mut i = 0;
        loop {
            if i == idx.len() {
                break;
            }
            idx[i] += 1;
            if idx[i] < sizes[i] {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == idx.len() {
            break;
        }
        if sigma.is_empty() {
            break;
        }
    }
    let order = canonical.len() as u64;
    // represent the group elements as exponent tuples again for powering
    let elements: Vec<Vec<u128>> = canonical.into_iter().collect();
    let mut counts = BTreeMap::new();
    for n in 1..=order {
        if order % n != 0 {
            continue;
        }
        let mut c = 0u64;
        for el in &elements {
            // el is an index tuple; recover elements and raise to n
            let powed: Vec<u128> = el
                .iter()
                .zip(&quots)
                .map(|(&ix, r)| {
                    let x = r.elem_from_index(ix);
                    r.index_of(&r.pow(&x, &BigInt::from(n)).expect("power"))
                })
                .collect();
            // is the result diagonal (a constant tuple)?
            let mut is_diag = false;
            for cc in &consts {
                let diag: Vec<u128> = quots
                    .iter()
                    .map(|r| r.index_of(&r.reduce(&FqPoly::constant(fq.clone(), cc.clone()))))
                    .collect();
                if diag == powed {
                    is_diag = true;
                    break;
                }
            }
            if is_diag {
                c += 1;
            }
        }
        counts.insert(n, c);
    }
    counts.insert(order, order);
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fq {
        Fq::prime(3).unwrap()
    }

    fn place_t(fq: &Fq) -> PlaceOfP1 {
        PlaceOfP1::finite(FqPoly::from_ints(fq.clone(), &[0, 1])).unwrap()
    }

    #[test]
    fn affine_line_h0_is_z() {
        let fq = f3();
        let h0 = ff_h0(&fq, &[PlaceOfP1::Infinity]).unwrap();
        assert_eq!(h0.group.invariants(), &[BigInt::zero()]);
        assert_eq!(h0.group.free_rank(), 1);
    }

    #[test]
    fn gm_over_f3_is_z_plus_z2() {
        let fq = f3();
        let h0 = ff_h0(&fq, &[place_t(&fq), PlaceOfP1::Infinity]).unwrap();
        assert_eq!(h0.group.invariants_i64(), vec![2]);
        assert_eq!(h0.group.free_rank(), 1);
    }

    #[test]
    fn proper_line_h0_is_z() {
        let fq = Fq::prime(5).unwrap();
        let h0 = ff_h0(&fq, &[]).unwrap();
        assert_eq!(h0.group.invariants(), &[BigInt::zero()]);
    }

    #[test]
    fn h1_branches() {
        let f5 = Fq::prime(5).unwrap();
        assert!(ff_h1(&f5, &[PlaceOfP1::Infinity]).is_trivial());
        assert_eq!(ff_h1(&f5, &[]).invariants_i64(), vec![4]);
        let f2 = Fq::prime(2).unwrap();
        assert!(ff_h1(&f2, &[]).is_trivial());
    }

    #[test]
    fn divisor_of_t_over_f2() {
        let fq = Fq::prime(2).unwrap();
        let t = RationalFn::from_poly(FqPoly::from_ints(fq.clone(), &[0, 1])).unwrap();
        let d = ff_div(&t, &[]).unwrap();
        assert_eq!(d.coeffs.len(), 2);
        assert_eq!(d.coeffs.get(&place_t(&fq)).unwrap(), &BigInt::one());
        assert_eq!(d.coeffs.get(&PlaceOfP1::Infinity).unwrap(), &BigInt::from(-1));
        // f = 1 has the zero divisor
        let one = RationalFn::from_poly(FqPoly::one(fq.clone())).unwrap();
        assert_eq!(ff_div(&one, &[]).unwrap(), FFDivisor::zero());
    }

    #[test]
    fn one_unit_condition_is_enforced_and_reported() {
        let fq = f3();
        let sigma = [place_t(&fq), PlaceOfP1::Infinity];
        // f = (t^2+2t+1)/(t^2+t+1): f(0) = 1/1 = 1, equal degrees, monic
        let f = RationalFn::new(
            FqPoly::from_ints(fq.clone(), &[1, 2, 1]),
            FqPoly::from_ints(fq.clone(), &[1, 1, 1]),
        )
        .unwrap();
        let d = ff_div(&f, &sigma).unwrap();
        // direct factorization over F_3: (t+1)^2 / (t+2)^2
        let tp1 = PlaceOfP1::finite(FqPoly::from_ints(fq.clone(), &[1, 1])).unwrap();
        let tp2 = PlaceOfP1::finite(FqPoly::from_ints(fq.clone(), &[2, 1])).unwrap();
        assert_eq!(d.coeffs.get(&tp1).unwrap(), &BigInt::from(2));
        assert_eq!(d.coeffs.get(&tp2).unwrap(), &BigInt::from(-2));
        assert!(d.degree().is_zero());
        // a function with f(0) != 1 is rejected with the failing place
        let bad = RationalFn::new(
            FqPoly::from_ints(fq.clone(), &[2, 2, 1]),
            FqPoly::from_ints(fq.clone(), &[1, 1, 1]),
        )
        .unwrap();
        match ff_div(&bad, &sigma) {
            Err(Error::InvalidWitness { place, .. }) => assert_eq!(place, "t"),
            other => panic!("expected witness rejection, got {other:?}"),
        }
    }

    #[test]
    fn class_of_kills_one_unit_divisors() {
        let fq = f3();
        let sigma = [place_t(&fq), PlaceOfP1::Infinity];
        let h0 = ff_h0(&fq, &sigma).unwrap();
        let f = RationalFn::new(
            FqPoly::from_ints(fq.clone(), &[1, 2, 1]),
            FqPoly::from_ints(fq.clone(), &[1, 1, 1]),
        )
        .unwrap();
        let d = ff_div(&f, &sigma).unwrap();
        let c = h0.class_of(&d).unwrap();
        assert!(h0.group.is_identity(&c));
    }

    #[test]
    fn degree_zero_part_matches_brute_force() {
        let fq = f3();
        let configs: Vec<Vec<PlaceOfP1>> = vec![
            vec![place_t(&fq), PlaceOfP1::Infinity],
            vec![
                place_t(&fq),
                PlaceOfP1::finite(FqPoly::from_ints(fq.clone(), &[2, 1])).unwrap(),
                PlaceOfP1::Infinity,
            ],
        ];
        for sigma in configs {
            let h0 = ff_h0(&fq, &sigma).unwrap();
            let (k, _) = h0.degree_zero_part();
            let brute = degree_zero_brute_counts(&fq, &sigma).unwrap();
            let order = k.order().unwrap().to_u64().unwrap();
            assert_eq!(order, *brute.keys().last().unwrap());
            for (n, count) in &brute {
                let expect = k.count_order_dividing(&BigInt::from(*n)).to_u64().unwrap();
                assert_eq!(*count, expect, "order-dividing count mismatch at n={n}");
            }
        }
    }

    #[test]
    fn degree_zero_order_divides_product_bound() {
        for q in [2u64, 3, 5] {
            let fq = Fq::prime(q).unwrap();
            for sigma in [
                vec![PlaceOfP1::Infinity],
                vec![place_t(&fq), PlaceOfP1::Infinity],
            ] {
                let h0 = ff_h0(&fq, &sigma).unwrap();
                let (k, _) = h0.degree_zero_part();
                let order = k.order().unwrap().to_u64().unwrap();
                let bound: u64 = sigma
                    .iter()
                    .map(|p| q.pow(p.degree() as u32) - 1)
                    .product::<u64>()
                    / (q - 1);
                assert_eq!(bound % order, 0);
            }
        }
    }

    #[test]
    fn class_of_random_one_units_vanishes() {
        // random numerators over the modulus lattice: f = a/b with a = b mod m
        let fq = f3();
        let sigma = [place_t(&fq), PlaceOfP1::Infinity];
        let h0 = ff_h0(&fq, &sigma).unwrap();
        let mut found = 0;
        for code in 0..3u64.pow(4) {
            let mut cs = Vec::new();
            let mut k = code;
            for _ in 0..4 {
                cs.push((k % 3) as i64);
                k /= 3;
            }
            let num = FqPoly::from_ints(fq.clone(), &[cs[0], cs[1], 1]);
            let den = FqPoly::from_ints(fq.clone(), &[cs[2], cs[3], 1]);
            let Ok(f) = RationalFn::new(num, den) else { continue };
            let Ok(d) = ff_div(&f, &sigma) else { continue };
            let c = h0.class_of(&d).unwrap();
            assert!(h0.group.is_identity(&c));
            found += 1;
        }
        assert!(found >= 3, "expected several admissible test functions");
    }

    #[test]
    fn q2_all_rational_places_removed_still_has_degree_one() {
        let fq = Fq::prime(2).unwrap();
        let sigma = vec![
            place_t(&fq),
            PlaceOfP1::finite(FqPoly::from_ints(fq.clone(), &[1, 1])).unwrap(),
            PlaceOfP1::Infinity,
        ];
        let h0 = ff_h0(&fq, &sigma).unwrap();
        assert_eq!(h0.z_divisor.degree(), BigInt::one());
        assert_eq!(h0.group.free_rank(), 1);
    }
}
