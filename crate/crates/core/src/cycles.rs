//! Zero-cycles, one-unit relation witnesses, and the degree-1 simplicial
//! cycle enumeration over the rationals: an independent generators-and-
//! relations presentation of h0, compared against the ray-class closed form.
//!
//! A horizontal one-cycle is a primitive irreducible `g(t)` whose reduction
//! at every modulus prime is a nonzero constant (so the cycle misses the
//! modulus fibers) and which is not a face; its boundary is
//! `div(g(0)) - div(g(1))`. Vertical cycles bound nothing. The oracle
//! quotients the free group on small primes by every boundary within the
//! given degree/height bounds; for degree <= 2 the enumeration is exhaustive
//! (organized by the value pair `(g(0), g(1))`, which determines the
//! relation).

use crate::abgrp::{FGAbelianGroup, GroupHom};
use crate::error::{Error, Result};
use crate::intfactor;
use crate::matrix::IntMatrix;
use crate::numfield::{zpoly_eval, zpoly_trim, FieldElement, NumberField, PrimeKey};
use crate::rayclass::{Modulus, RayClassGroup};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// A finite integer combination of closed points away from the modulus.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZeroCycle {
    pub entries: BTreeMap<PrimeKey, BigInt>,
}

impl ZeroCycle {
    pub fn zero() -> ZeroCycle {
        ZeroCycle { entries: BTreeMap::new() }
    }

    pub fn single(key: PrimeKey, n: i64) -> ZeroCycle {
        let mut c = ZeroCycle::zero();
        c.add_point(key, BigInt::from(n));
        c
    }

    pub fn add_point(&mut self, key: PrimeKey, n: BigInt) {
        if n.is_zero() {
            return;
        }
        let e = self.entries.entry(key).or_insert_with(BigInt::zero);
        *e += n;
        if e.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn add(&self, other: &ZeroCycle) -> ZeroCycle {
        let mut out = self.clone();
        for (k, n) in &other.entries {
            out.add_point(*k, n.clone());
        }
        out
    }

    pub fn neg(&self) -> ZeroCycle {
        let mut out = ZeroCycle::zero();
        for (k, n) in &self.entries {
            out.add_point(*k, -n);
        }
        out
    }

    pub fn supported_away_from(&self, m: &Modulus) -> bool {
        self.entries.keys().all(|k| !m.contains_key(*k))
    }

    /// Parse a comma list of `selector` or `selector*coeff` entries, e.g.
    /// `2*1,11:0*-3`.
    pub fn parse(spec: &str) -> Result<ZeroCycle> {
        let mut c = ZeroCycle::zero();
        for part in spec.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (sel, coeff) = match part.split_once('*') {
                Some((s, n)) => (
                    s.trim(),
                    n.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::BadInput(format!("bad cycle coefficient in {part}")))?,
                ),
                None => (part, 1),
            };
            let key = parse_prime_selector(sel)?;
            c.add_point(key, BigInt::from(coeff));
        }
        Ok(c)
    }
}

/// `"p"` or `"p:i"` selecting the i-th prime above p.
pub fn parse_prime_selector(sel: &str) -> Result<PrimeKey> {
    let (p, i) = match sel.split_once(':') {
        Some((p, i)) => (
            p.trim().parse::<u64>().map_err(|_| Error::BadInput(format!("bad prime {sel}")))?,
            i.trim().parse::<usize>().map_err(|_| Error::BadInput(format!("bad index {sel}")))?,
        ),
        None => (
            sel.trim().parse::<u64>().map_err(|_| Error::BadInput(format!("bad prime {sel}")))?,
            0,
        ),
    };
    Ok(PrimeKey { p, index: i })
}

/// A rational function witnessing a relation: nonzero and congruent to 1 at
/// every modulus prime (checked by exact valuations).
#[derive(Clone, Debug)]
pub struct RelationWitness {
    pub element: FieldElement,
}

impl RelationWitness {
    pub fn new(k: &NumberField, element: FieldElement, m: &Modulus) -> Result<RelationWitness> {
        if k.is_zero_elem(&element) {
            return Err(Error::ZeroElement);
        }
        for p in m.primes() {
            if !k.is_one_mod_prime(&element, p)? {
                return Err(Error::InvalidWitness {
                    place: p.selector(),
                    reason: "element is not congruent to 1 there".into(),
                });
            }
        }
        Ok(RelationWitness { element })
    }
}

/// The divisor of a relation witness: support automatically avoids the
/// modulus.
pub fn div_of_element(k: &NumberField, w: &RelationWitness, m: &Modulus) -> Result<ZeroCycle> {
    let ideal = k.principal_ideal(&w.element)?;
    let mut c = ZeroCycle::zero();
    for (prime, v) in k.ideal_factor(&ideal)? {
        if m.contains_key(prime.key()) {
            return Err(Error::SupportMeetsModulus(prime.selector()));
        }
        c.add_point(prime.key(), BigInt::from(v));
    }
    Ok(c)
}

/// Class of a zero-cycle in the ray class group.
pub fn class_of_cycle(rcg: &RayClassGroup, c: &ZeroCycle) -> Result<Vec<BigInt>> {
    let k = &rcg.field;
    let mut acc = vec![BigInt::zero(); rcg.ngens()];
    for (key, n) in &c.entries {
        if rcg.modulus.contains_key(*key) {
            return Err(Error::SupportMeetsModulus(format!("{key}")));
        }
        let prime = k.prime_by_key(*key)?;
        let coords = rcg.prime_coords(&prime)?;
        for (i, ci) in coords.iter().enumerate() {
            acc[i] += ci * n;
        }
    }
    Ok(rcg.group.reduce(&acc))
}

// ---------------------------------------------------------------------------
// simplicial one-cycles over the rationals
// ---------------------------------------------------------------------------

/// A height-one prime of Z[t] away from the modulus fibers and the faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplicialOneCycle {
    /// Primitive irreducible with positive leading coefficient.
    Horizontal(Vec<BigInt>),
    Vertical(u64),
}

impl SimplicialOneCycle {
    pub fn horizontal(coeffs: &[i64], sigma: &[u64]) -> Result<SimplicialOneCycle> {
        let g: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        let z = SimplicialOneCycle::Horizontal(g);
        z.validate(sigma)?;
        Ok(z)
    }

    pub fn validate(&self, sigma: &[u64]) -> Result<()> {
        match self {
            SimplicialOneCycle::Vertical(p) => {
                if !intfactor::is_prime_u64(*p) {
                    return Err(Error::NotPrime(*p));
                }
                if sigma.contains(p) {
                    return Err(Error::InvalidOneCycle(format!(
                        "vertical cycle at {p} meets the modulus"
                    )));
                }
                Ok(())
            }
            SimplicialOneCycle::Horizontal(g) => {
                let mut g = g.clone();
                zpoly_trim(&mut g);
                if g.len() < 2 {
                    return Err(Error::InvalidOneCycle(
                        "horizontal cycle needs a nonconstant polynomial".into(),
                    ));
                }
                if g.last().unwrap().is_negative() {
                    return Err(Error::InvalidOneCycle(
                        "normalize to a positive leading coefficient".into(),
                    ));
                }
                let content = g.iter().fold(BigInt::zero(), |a, c| a.gcd(c));
                if !content.is_one() {
                    return Err(Error::InvalidOneCycle("polynomial is not primitive".into()));
                }
                let g0 = zpoly_eval(&g, &BigInt::zero());
                let g1 = zpoly_eval(&g, &BigInt::one());
                if g0.is_zero() || g1.is_zero() {
                    return Err(Error::InvalidOneCycle(
                        "cycle contains a face (t or t-1 divides it)".into(),
                    ));
                }
                if !zpoly_irreducible_primitive(&g)? {
                    return Err(Error::InvalidOneCycle("polynomial is reducible".into()));
                }
                for &p in sigma {
                    // reduction mod p must be a nonzero constant
                    let pb = BigInt::from(p);
                    for c in &g[1..] {
                        if !(c % &pb).is_zero() {
                            return Err(Error::InvalidOneCycle(format!(
                                "cycle meets the fiber over {p}: reduction is nonconstant"
                            )));
                        }
                    }
                    if (&g[0] % &pb).is_zero() {
                        return Err(Error::InvalidOneCycle(format!(
                            "cycle meets the fiber over {p}: reduction vanishes"
                        )));
                    }
                }
                Ok(())
            }
        }
    }
}

/// Irreducibility over Q for primitive polynomials, without the monic
/// restriction (used by the cycle enumeration).
fn zpoly_irreducible_primitive(g: &[BigInt]) -> Result<bool> {
    let n = g.len() - 1;
    if n == 1 {
        return Ok(true);
    }
    if n == 2 {
        let disc = &g[1] * &g[1] - BigInt::from(4) * &g[2] * &g[0];
        if disc.is_negative() {
            return Ok(true);
        }
        let s = disc.sqrt();
        return Ok(&s * &s != disc);
    }
    // rational root test then a crude factor search via evaluation gcds is
    // enough at desk scale; degrees above 2 are outside the oracle bounds
    Err(Error::BoundExceeded("irreducibility beyond degree 2 is not needed here".into()))
}

/// Boundary of a one-cycle: restriction to t=0 minus restriction to t=1.
pub fn boundary_d1(z: &SimplicialOneCycle, sigma: &[u64]) -> Result<ZeroCycle> {
    z.validate(sigma)?;
    match z {
        SimplicialOneCycle::Vertical(_) => Ok(ZeroCycle::zero()),
        SimplicialOneCycle::Horizontal(g) => {
            let g0 = zpoly_eval(g, &BigInt::zero());
            let g1 = zpoly_eval(g, &BigInt::one());
            let mut c = ZeroCycle::zero();
            for (p, e) in intfactor::factor(&g0)? {
                c.add_point(PrimeKey { p, index: 0 }, BigInt::from(e));
            }
            for (p, e) in intfactor::factor(&g1)? {
                c.add_point(PrimeKey { p, index: 0 }, -BigInt::from(e));
            }
            Ok(c)
        }
    }
}

// ---------------------------------------------------------------------------
// the truncated h0 oracle
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct OracleH0 {
    pub group: FGAbelianGroup,
    /// Primes indexing the oracle generators.
    pub generators: Vec<u64>,
    pub relations_used: usize,
    pub stable: bool,
    pub matches_rayclass: bool,
    /// Comparison map onto the ray class group.
    pub comparison: GroupHom,
}

impl OracleH0 {
    pub fn to_json(&self) -> serde_json::Value {
        let mut j = self.group.to_json();
        let o = j.as_object_mut().unwrap();
        o.insert("relations_used".into(), serde_json::json!(self.relations_used));
        o.insert("stable".into(), serde_json::json!(self.stable));
        o.insert("matches_rayclass".into(), serde_json::json!(self.matches_rayclass));
        j
    }
}

/// Quotient of the free group on the primes up to `prime_bound` (away from
/// sigma) by every boundary relation of degree <= `deg_bound` and height <=
/// `height_bound`, compared with the ray class group.
pub fn oracle_h0(
    sigma: &[u64],
    deg_bound: u32,
    height_bound: i64,
    prime_bound: u64,
) -> Result<OracleH0> {
    let k = NumberField::rationals();
    let m = Modulus::from_rational_primes(&k, sigma)?;
    let rcg = crate::rayclass::ray_class_group(&k, &m)?;
    let relations = enumerate_relations(sigma, deg_bound, height_bound, prime_bound)?;
    let (group, generators) = oracle_group(sigma, prime_bound, &relations)?;
    // stability: halving the height must give the same invariants
    let half = enumerate_relations(sigma, deg_bound, height_bound / 2, prime_bound)?;
    let (group_half, _) = oracle_group(sigma, prime_bound, &half)?;
    let stable = group_half.invariants() == group.invariants();
    // comparison with the ray class group; constructing the map verifies
    // that every truncated relation dies in C_m
    let mut cols = Vec::with_capacity(generators.len());
    for &p in &generators {
        let prime = k.prime_by_key(PrimeKey { p, index: 0 })?;
        cols.push(rcg.prime_coords(&prime)?);
    }
    let comparison = GroupHom::new(
        group.clone(),
        rcg.group.clone(),
        IntMatrix::from_cols(rcg.ngens(), &cols),
    )?;
    let matches_rayclass = comparison.is_isomorphism();
    Ok(OracleH0 {
        group,
        generators,
        relations_used: relations.len(),
        stable,
        matches_rayclass,
        comparison,
    })
}

fn oracle_group(
    sigma: &[u64],
    prime_bound: u64,
    relations: &BTreeSet<Vec<i64>>,
) -> Result<(FGAbelianGroup, Vec<u64>)> {
    let generators: Vec<u64> = (2..=prime_bound)
        .filter(|&p| intfactor::is_prime_u64(p) && !sigma.contains(&p))
        .collect();
    let cols: Vec<Vec<BigInt>> = relations
        .iter()
        .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
        .collect();
    let group = FGAbelianGroup::from_relations(
        generators.len(),
        IntMatrix::from_cols(generators.len(), &cols),
    );
    Ok((group, generators))
}

/// Exhaustive boundary relations for degrees 1 and 2. The relation of a
/// cycle depends only on the value pair (g(0), g(1)); the loops run over
/// all admissible coefficient tuples.
fn enumerate_relations(
    sigma: &[u64],
    deg_bound: u32,
    height_bound: i64,
    prime_bound: u64,
) -> Result<BTreeSet<Vec<i64>>> {
    if deg_bound < 1 || deg_bound > 2 {
        return Err(Error::BoundExceeded(
            "the cycle enumeration supports degree bounds 1 and 2".into(),
        ));
    }
    if height_bound < 1 || prime_bound < 2 {
        return Err(Error::BoundExceeded("bounds must be positive".into()));
    }
    let h = height_bound;
    let generators: Vec<u64> = (2..=prime_bound)
        .filter(|&p| intfactor::is_prime_u64(p) && !sigma.contains(&p))
        .collect();
    let gen_index: BTreeMap<u64, usize> =
        generators.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let m: i64 = sigma.iter().map(|&p| p as i64).product();
    // smallest-prime-factor sieve up to the largest |g(0)|, |g(1)|
    let max_val = (3 * h) as usize;
    let mut spf = vec![0u32; max_val + 1];
    for i in 2..=max_val {
        if spf[i] == 0 {
            let mut j = i;
            while j <= max_val {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    // smoothness over the generator set, by table lookup in the hot loop
    let smooth: Vec<bool> = {
        let mut t = vec![false; max_val + 1];
        t[1] = true;
        for (x, slot) in t.iter_mut().enumerate().skip(2) {
            let mut n = x;
            let mut ok = true;
            while n > 1 {
                let p = spf[n] as u64;
                if !gen_index.contains_key(&p) {
                    ok = false;
                    break;
                }
                n /= p as usize;
            }
            *slot = ok;
        }
        t
    };
    // the relation of a cycle depends only on (|g(0)|, |g(1)|); collect the
    // admissible value pairs first and factor them once
    let mut pairs: std::collections::HashSet<(u32, u32)> = Default::default();
    let mut push_pair = |g0: i64, g1: i64| {
        let (u, v) = (g0.unsigned_abs() as usize, g1.unsigned_abs() as usize);
        if smooth[u] && smooth[v] {
            pairs.insert((u as u32, v as u32));
        }
    };
    // degree 1: g = a t + c with a a nonzero multiple of every sigma prime
    let mut a = m;
    while a <= h {
        let mut c = -h;
        while c <= h {
            let g0 = c;
            let g1 = a + c;
            if g0 != 0 && g1 != 0 && gcd_i64(a, c) == 1 && gcd_i64(c, m) == 1 {
                push_pair(g0, g1);
            }
            c += 1;
        }
        a += m;
    }
    // degree 2: g = a t^2 + b t + c with a, b multiples of every sigma prime
    if deg_bound >= 2 {
        let mut a = m;
        while a <= h {
            let mut b = -(h / m) * m;
            while b <= h {
                let mut c = -h;
                while c <= h {
                    let g0 = c;
                    let g1 = a + b + c;
                    if g0 != 0
                        && g1 != 0
                        && smooth[g0.unsigned_abs() as usize]
                        && smooth[g1.unsigned_abs() as usize]
                        && gcd_i64(gcd_i64(a, b), c) == 1
                        && gcd_i64(c, m) == 1
                    {
                        // irreducible over Q iff the discriminant is not a square
                        let disc = (b as i128) * (b as i128) - 4 * (a as i128) * (c as i128);
                        if !is_square_i128(disc) {
                            push_pair(g0, g1);
                        }
                    }
                    c += 1;
                }
                b += m;
            }
            a += m;
        }
    }
    // factor the surviving pairs into relation vectors
    let factor_vec = |x: u32| -> Vec<i64> {
        let mut v = vec![0i64; generators.len()];
        let mut n = x as usize;
        while n > 1 {
            let p = spf[n] as u64;
            v[gen_index[&p]] += 1;
            n /= p as usize;
        }
        v
    };
    let mut relations: BTreeSet<Vec<i64>> = BTreeSet::new();
    for (u, v) in pairs {
        let v0 = factor_vec(u);
        let v1 = factor_vec(v);
        let rel: Vec<i64> = v0.iter().zip(&v1).map(|(a, b)| a - b).collect();
        if rel.iter().any(|&e| e != 0) {
            relations.insert(rel);
        }
    }
    Ok(relations)
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i64(b, a % b)
    }
}

fn is_square_i128(x: i128) -> bool {
    if x < 0 {
        return false;
    }
    let s = (x as f64).sqrt() as i128;
    for t in s.saturating_sub(2)..=s + 2 {
        if t * t == x {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn modulus(ps: &[u64]) -> Modulus {
        Modulus::from_rational_primes(&q(), ps).unwrap()
    }

    #[test]
    fn div_of_six_mod_5() {
        let k = q();
        let m = modulus(&[5]);
        let w = RelationWitness::new(&k, k.from_int(6), &m).unwrap();
        let c = div_of_element(&k, &w, &m).unwrap();
        let mut expect = ZeroCycle::zero();
        expect.add_point(PrimeKey { p: 2, index: 0 }, BigInt::one());
        expect.add_point(PrimeKey { p: 3, index: 0 }, BigInt::one());
        assert_eq!(c, expect);
    }

    #[test]
    fn witness_must_be_one_mod_modulus() {
        let k = q();
        let m = modulus(&[5]);
        let r = RelationWitness::new(&k, k.from_int(7), &m);
        assert!(matches!(r, Err(Error::InvalidWitness { .. })));
        // f = 1 gives the zero cycle
        let w = RelationWitness::new(&k, k.one(), &Modulus::empty()).unwrap();
        let c = div_of_element(&k, &w, &Modulus::empty()).unwrap();
        assert_eq!(c, ZeroCycle::zero());
    }

    #[test]
    fn div_of_one_plus_i_is_the_ramified_prime() {
        let k = NumberField::new(&[BigInt::one(), BigInt::zero(), BigInt::one()]).unwrap();
        let w = RelationWitness::new(&k, k.add(&k.one(), &k.theta()), &Modulus::empty()).unwrap();
        let c = div_of_element(&k, &w, &Modulus::empty()).unwrap();
        assert_eq!(c, ZeroCycle::single(PrimeKey { p: 2, index: 0 }, 1));
    }

    #[test]
    fn cycle_classes_mod_5() {
        let k = q();
        let m = modulus(&[5]);
        let rcg = crate::rayclass::ray_class_group(&k, &m).unwrap();
        let c2 = class_of_cycle(&rcg, &ZeroCycle::single(PrimeKey { p: 2, index: 0 }, 1)).unwrap();
        assert!(!rcg.group.is_identity(&c2));
        let c11 = class_of_cycle(&rcg, &ZeroCycle::single(PrimeKey { p: 11, index: 0 }, 1)).unwrap();
        assert!(rcg.group.is_identity(&c11));
        // div(6) has trivial class
        let w = RelationWitness::new(&k, k.from_int(6), &m).unwrap();
        let d = div_of_element(&k, &w, &m).unwrap();
        let cd = class_of_cycle(&rcg, &d).unwrap();
        assert!(rcg.group.is_identity(&cd));
    }

    #[test]
    fn boundary_of_t_plus_2() {
        let z = SimplicialOneCycle::horizontal(&[2, 1], &[]).unwrap();
        let b = boundary_d1(&z, &[]).unwrap();
        let mut expect = ZeroCycle::zero();
        expect.add_point(PrimeKey { p: 2, index: 0 }, BigInt::one());
        expect.add_point(PrimeKey { p: 3, index: 0 }, -BigInt::one());
        assert_eq!(b, expect);
    }

    #[test]
    fn vertical_cycles_bound_nothing() {
        let z = SimplicialOneCycle::Vertical(7);
        assert_eq!(boundary_d1(&z, &[]).unwrap(), ZeroCycle::zero());
    }

    #[test]
    fn sigma_conditions_reject_bad_cycles() {
        // 2t+3 mod 5 is nonconstant
        assert!(SimplicialOneCycle::horizontal(&[3, 2], &[5]).is_err());
        // 5t^2+5t+3 reduces to the constant 3 mod 5
        let z = SimplicialOneCycle::horizontal(&[3, 5, 5], &[5]).unwrap();
        let b = boundary_d1(&z, &[5]).unwrap();
        // g(0)=3, g(1)=13
        let mut expect = ZeroCycle::zero();
        expect.add_point(PrimeKey { p: 3, index: 0 }, BigInt::one());
        expect.add_point(PrimeKey { p: 13, index: 0 }, -BigInt::one());
        assert_eq!(b, expect);
        // faces are rejected
        assert!(SimplicialOneCycle::horizontal(&[0, 1], &[]).is_err());
        assert!(SimplicialOneCycle::horizontal(&[-1, 1], &[]).is_err());
    }

    #[test]
    fn boundaries_die_in_the_ray_class_group() {
        let k = q();
        let m = modulus(&[5]);
        let rcg = crate::rayclass::ray_class_group(&k, &m).unwrap();
        for coeffs in [[3i64, 5, 5], [7, 5, 10], [1, 10, 5], [9, 5, 5]] {
            let Ok(z) = SimplicialOneCycle::horizontal(&coeffs, &[5]) else { continue };
            let b = boundary_d1(&z, &[5]).unwrap();
            let c = class_of_cycle(&rcg, &b).unwrap();
            assert!(rcg.group.is_identity(&c), "boundary {coeffs:?} survives in C_m");
        }
    }

    #[test]
    fn oracle_mod_5_is_z2_and_matches() {
        let o = oracle_h0(&[5], 2, 200, 50).unwrap();
        assert_eq!(o.group.invariants_i64(), vec![2]);
        assert!(o.stable);
        assert!(o.matches_rayclass);
    }

    #[test]
    fn oracle_empty_sigma_small_bounds_is_trivial() {
        let o = oracle_h0(&[], 1, 20, 20).unwrap();
        assert!(o.group.is_trivial());
        assert!(o.matches_rayclass);
    }

    #[test]
    fn oracle_is_monotone_under_height_increase() {
        let mut last: Option<BigInt> = None;
        for h in [60i64, 120, 240] {
            let o = oracle_h0(&[5], 2, h, 30).unwrap();
            let order = o
                .group
                .order()
                .unwrap_or_else(|| BigInt::from(-1));
            if let (Some(prev), true) = (&last, order.is_positive()) {
                if prev.is_positive() {
                    assert!(
                        (prev % &order).is_zero(),
                        "quotient grew when the height bound increased"
                    );
                }
            }
            last = Some(order);
        }
    }
}
