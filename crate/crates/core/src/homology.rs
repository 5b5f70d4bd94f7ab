//! Homology of the supported arithmetic schemes, and machine checks of the
//! structural exact sequences: Mayer-Vietoris in both variables, the Gysin
//! sequence with residue-field-unit twists, the norm/extension composition
//! law, and dense-open surjectivity.
//!
//! Every check assembles honest group presentations and maps and hands them
//! to the exactness checker; failures carry witnesses and are hard errors
//! at the caller's discretion.

use crate::abgrp::{direct_sum, express_through, is_exact, quotient_by, DirectSum, ExactnessWitness, FGAbelianGroup, GroupHom};
use crate::classunit::s_unit_group;
use crate::error::{Error, Result};
use crate::ffcurve::{ff_h0, ff_h1, PlaceOfP1};
use crate::finfield::{Fq, FqPoly, FqQuot};
use crate::matrix::IntMatrix;
use crate::numfield::{FieldElement, NumberField, PrimeIdealRec};
use crate::rayclass::{ray_class_group, relative_units, residue_units, Modulus};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A supported one-dimensional arithmetic scheme.
#[derive(Clone)]
pub enum ArithScheme {
    /// Spec of the Sigma-integers of a number field.
    NumberRing { field: NumberField, sigma: Modulus },
    /// The projective line over F_q minus a finite set of places.
    FfCurve { fq: Fq, sigma: Vec<PlaceOfP1> },
}

impl std::fmt::Debug for ArithScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ArithScheme::NumberRing { field, sigma } => {
                write!(f, "NumberRing(deg {}, {:?})", field.degree(), sigma)
            }
            ArithScheme::FfCurve { fq, sigma } => {
                write!(f, "FfCurve(q={}, {:?})", fq.size(), sigma)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct HomologyResult {
    pub h0: FGAbelianGroup,
    pub h1: FGAbelianGroup,
    /// The groups vanish outside degrees 0 and 1 for every supported scheme.
    pub vanishing_outside_01: bool,
}

pub fn homology(x: &ArithScheme) -> Result<HomologyResult> {
    match x {
        ArithScheme::NumberRing { field, sigma } => {
            let rcg = ray_class_group(field, sigma)?;
            assert!(rcg.group.is_finite(), "h0 of a number ring is finite");
            let rel = relative_units(field, sigma)?;
            Ok(HomologyResult { h0: rcg.group, h1: rel.group, vanishing_outside_01: true })
        }
        ArithScheme::FfCurve { fq, sigma } => {
            let h0 = ff_h0(fq, sigma)?;
            Ok(HomologyResult {
                h0: h0.group,
                h1: ff_h1(fq, sigma),
                vanishing_outside_01: true,
            })
        }
    }
}

/// JSON-able verdict of one exactness check.
#[derive(Clone, Debug, Serialize)]
pub struct ExactReport {
    pub check: String,
    pub config: String,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ExactnessWitness>,
}

fn seq_report(check: &str, config: String, seq: &[GroupHom]) -> Result<ExactReport> {
    let rep = is_exact(seq)?;
    Ok(ExactReport { check: check.into(), config, exact: rep.exact, witness: rep.witness })
}

/// `(f, g) : A -> B + C` from components.
fn pair_into_sum(f: &GroupHom, g: &GroupHom, ds: &DirectSum) -> Result<GroupHom> {
    let a = f.source().clone();
    let rows = ds.group.ngens();
    let mut m = IntMatrix::zero(rows, a.ngens());
    for c in 0..a.ngens() {
        for r in 0..f.target().ngens() {
            m.set(r, c, f.matrix().at(r, c).clone());
        }
        for r in 0..g.target().ngens() {
            m.set(f.target().ngens() + r, c, g.matrix().at(r, c).clone());
        }
    }
    GroupHom::new(a, ds.group.clone(), m)
}

/// `B + C -> D`, `(b, c) |-> f(b) - g(c)`.
fn difference_from_sum(f: &GroupHom, g: &GroupHom, ds: &DirectSum) -> Result<GroupHom> {
    let d = f.target().clone();
    let mut m = IntMatrix::zero(d.ngens(), ds.group.ngens());
    for c in 0..f.source().ngens() {
        for r in 0..d.ngens() {
            m.set(r, c, f.matrix().at(r, c).clone());
        }
    }
    for c in 0..g.source().ngens() {
        for r in 0..d.ngens() {
            m.set(r, f.source().ngens() + c, -g.matrix().at(r, c).clone());
        }
    }
    GroupHom::new(ds.group.clone(), d, m)
}

fn cap_ends(seq: Vec<GroupHom>) -> Vec<GroupHom> {
    let zero = FGAbelianGroup::trivial();
    let first = seq.first().expect("nonempty sequence").source().clone();
    let last = seq.last().expect("nonempty sequence").target().clone();
    let mut out = vec![GroupHom::zero(&zero, &first)];
    out.extend(seq);
    out.push(GroupHom::zero(&last, &zero));
    out
}

// ---------------------------------------------------------------------------
// Mayer-Vietoris for an open cover of the scheme
// ---------------------------------------------------------------------------

/// Exactness of
/// `0 -> h1(X1 ^ X2) -> h1(X1) + h1(X2) -> h1(X) -> h0(X1 ^ X2) -> h0(X1) + h0(X2) -> h0(X) -> 0`
/// for `X_i = Spec O_{k, Sigma_i}`, intersecting along the union of the
/// Sigma's and covering the scheme of their intersection.
pub fn check_mv_open_cover(k: &NumberField, s1: &Modulus, s2: &Modulus) -> Result<ExactReport> {
    let s_union = s1.union(s2);
    let s_int = s1.intersection(s2);
    // h1 groups as subgroups of the global units
    let r_union = relative_units(k, &s_union)?;
    let r1 = relative_units(k, s1)?;
    let r2 = relative_units(k, s2)?;
    let r_int = relative_units(k, &s_int)?;
    let to1 = express_through(&r_union.inclusion, &r1.inclusion)?;
    let to2 = express_through(&r_union.inclusion, &r2.inclusion)?;
    let h1ds = direct_sum(&r1.group, &r2.group);
    let h1_in = pair_into_sum(&to1, &to2, &h1ds)?;
    let from1 = express_through(&r1.inclusion, &r_int.inclusion)?;
    let from2 = express_through(&r2.inclusion, &r_int.inclusion)?;
    let h1_out = difference_from_sum(&from1, &from2, &h1ds)?;
    // h0 groups
    let c_union = ray_class_group(k, &s_union)?;
    let c1 = ray_class_group(k, s1)?;
    let c2 = ray_class_group(k, s2)?;
    let c_int = ray_class_group(k, &s_int)?;
    // connecting map: a unit congruent to 1 on the intersection maps to the
    // class of a lift that carries it on Sigma_1 and is 1 on Sigma_2 - Sigma_1
    let mut cols = Vec::with_capacity(r_int.group.ngens());
    for eps in &r_int.generators {
        let a = if s_union.is_empty() {
            eps.clone()
        } else {
            let targets: Vec<FieldElement> = s_union
                .primes()
                .iter()
                .map(|p| if s1.contains_key(p.key()) { eps.clone() } else { k.one() })
                .collect();
            k.crt(s_union.primes(), &targets)?
        };
        cols.push(c_union.class_of_element(&a)?);
    }
    let connecting = GroupHom::new(
        r_int.group.clone(),
        c_union.group.clone(),
        IntMatrix::from_cols(c_union.ngens(), &cols),
    )?;
    let p1 = c_union.natural_map_to(&c1)?;
    let p2 = c_union.natural_map_to(&c2)?;
    let h0ds = direct_sum(&c1.group, &c2.group);
    let h0_in = pair_into_sum(&p1, &p2, &h0ds)?;
    let q1 = c1.natural_map_to(&c_int)?;
    let q2 = c2.natural_map_to(&c_int)?;
    let h0_out = difference_from_sum(&q1, &q2, &h0ds)?;
    let seq = cap_ends(vec![h1_in, h1_out, connecting, h0_in, h0_out]);
    let config = format!(
        "field x^{}ish deg {}, sigma1 {:?}, sigma2 {:?}",
        k.degree(),
        k.degree(),
        s1.selectors(),
        s2.selectors()
    );
    seq_report("mv-cover", config, &seq)
}

// ---------------------------------------------------------------------------
// Mayer-Vietoris in the base variable
// ---------------------------------------------------------------------------

/// Exactness of the second-variable sequence for `X = Spec O_{k,Sigma}` and
/// base opens `U, V` given by the rational primes they omit. The omitted
/// primes must avoid the residue characteristics of Sigma.
pub fn check_mv_second_variable(
    k: &NumberField,
    sigma: &Modulus,
    omit_u: &[u64],
    omit_v: &[u64],
) -> Result<ExactReport> {
    let sigma_chars: Vec<u64> = sigma.primes().iter().map(|p| p.residue_char).collect();
    for p in omit_u.iter().chain(omit_v) {
        if sigma_chars.contains(p) {
            return Err(Error::BadInput(format!(
                "omitted prime {p} shares a residue characteristic with the scheme's missing points"
            )));
        }
    }
    let mut all: Vec<u64> = omit_u.to_vec();
    all.extend_from_slice(omit_v);
    all.sort_unstable();
    all.dedup();
    let both: Vec<u64> =
        omit_u.iter().filter(|p| omit_v.contains(p)).cloned().collect();
    let primes_above = |ps: &[u64]| -> Result<Vec<PrimeIdealRec>> {
        let mut out = Vec::new();
        for &p in ps {
            out.extend(k.split_prime(p)?);
        }
        Ok(out)
    };
    let t_all = primes_above(&all)?;
    let t_u = primes_above(omit_u)?;
    let t_v = primes_above(omit_v)?;
    let t_both = primes_above(&both)?;
    // the ambient S-unit group at every omitted prime
    let w = s_unit_group(k, &t_all)?;
    let res = residue_units(k, sigma)?;
    // h1 of (X, open): S-units allowed poles only inside the open's
    // complement, congruent to 1 at all of Sigma
    let sub = |allowed: &[PrimeIdealRec]| -> Result<(FGAbelianGroup, GroupHom)> {
        let excluded: Vec<PrimeIdealRec> =
            t_all.iter().filter(|p| !allowed.iter().any(|q| q == *p)).cloned().collect();
        let rows = excluded.len() + res.factors.len();
        let mut orders = vec![BigInt::zero(); excluded.len()];
        for f in &res.factors {
            orders.push(f.order.clone());
        }
        let target = FGAbelianGroup::from_orders(&orders);
        let mut cols = Vec::with_capacity(w.generators.len());
        for g in &w.generators {
            let mut col = Vec::with_capacity(rows);
            for p in &excluded {
                col.push(BigInt::from(k.valuation(g, p)?));
            }
            col.extend(res.dlog(k, g)?);
            cols.push(col);
        }
        let hom = GroupHom::new(w.group.clone(), target, IntMatrix::from_cols(rows, &cols))?;
        Ok(hom.kernel())
    };
    let (h1_uv, inc_uv) = sub(&t_both)?; // U union V: poles only above both-omitted primes
    let (h1_u, inc_u) = sub(&t_u)?;
    let (h1_v, inc_v) = sub(&t_v)?;
    let (h1_int, inc_int) = sub(&t_all)?; // U \cap V: poles anywhere omitted
    let to_u = express_through(&inc_uv, &inc_u)?;
    let to_v = express_through(&inc_uv, &inc_v)?;
    let h1ds = direct_sum(&h1_u, &h1_v);
    let h1_in = pair_into_sum(&to_u, &to_v, &h1ds)?;
    let from_u = express_through(&inc_u, &inc_int)?;
    let from_v = express_through(&inc_v, &inc_int)?;
    let h1_out = difference_from_sum(&from_u, &from_v, &h1ds)?;
    // h0 of (X, open): the ray class group of Sigma with the omitted primes
    // inside the open forced to die
    let c = ray_class_group(k, sigma)?;
    let quot = |killed: &[PrimeIdealRec]| -> Result<(FGAbelianGroup, Vec<Vec<BigInt>>)> {
        let mut cols = Vec::new();
        for p in killed {
            cols.push(c.prime_coords(p)?);
        }
        let extra = IntMatrix::from_cols(c.ngens(), &cols);
        let (q, _) = quotient_by(&c.group, &extra);
        Ok((q, cols))
    };
    let (h0_uv, _) = quot(&t_both)?;
    let (h0_u, _) = quot(&t_u)?;
    let (h0_v, _) = quot(&t_v)?;
    let (h0_int, _) = quot(&t_all)?;
    let id = |a: &FGAbelianGroup, b: &FGAbelianGroup| -> Result<GroupHom> {
        GroupHom::new(a.clone(), b.clone(), IntMatrix::identity(a.ngens()))
    };
    // connecting: valuations on the V-side-only primes
    let v_only: Vec<PrimeIdealRec> =
        t_v.iter().filter(|p| !t_u.iter().any(|q| q == *p)).cloned().collect();
    let mut cols = Vec::with_capacity(h1_int.ngens());
    for j in 0..h1_int.ngens() {
        let coords = inc_int.matrix().col(j);
        let elem = w_element(k, &w.generators, &coords)?;
        let mut ideal = k.unit_ideal();
        for p in &v_only {
            let vp = k.valuation(&elem, p)?;
            ideal = k.ideal_mul(&ideal, &k.ideal_pow(&k.prime_to_ideal(p), vp));
        }
        cols.push(c.class_of_ideal(&ideal)?);
    }
    let connecting = GroupHom::new(
        h1_int.clone(),
        h0_uv.clone(),
        IntMatrix::from_cols(h0_uv.ngens(), &cols),
    )?;
    let h0ds = direct_sum(&h0_u, &h0_v);
    let h0_in = pair_into_sum(&id(&h0_uv, &h0_u)?, &id(&h0_uv, &h0_v)?, &h0ds)?;
    let h0_out = difference_from_sum(&id(&h0_u, &h0_int)?, &id(&h0_v, &h0_int)?, &h0ds)?;
    let seq = cap_ends(vec![h1_in, h1_out, connecting, h0_in, h0_out]);
    let config = format!(
        "sigma {:?}, omit_u {:?}, omit_v {:?}",
        sigma.selectors(),
        omit_u,
        omit_v
    );
    let _ = (h1_uv.clone(), h1_u, h1_v);
    seq_report("mv-base", config, &seq)
}

fn w_element(k: &NumberField, gens: &[FieldElement], coords: &[BigInt]) -> Result<FieldElement> {
    let mut acc = k.one();
    for (g, c) in gens.iter().zip(coords) {
        let e = c.to_i64().ok_or_else(|| Error::BoundExceeded("exponent too large".into()))?;
        acc = k.mul(&acc, &k.pow_i64(g, e)?);
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// the Gysin sequence
// ---------------------------------------------------------------------------

/// Exactness of
/// `0 -> h1(U) -> h1(X) -> (+) k(P)^x -> h0(U) -> h0(X) -> 0`
/// where `U` removes the finite point set `D` from `X` and the twist group
/// is the sum of the residue-field unit groups at `D`.
pub fn check_gysin(x: &ArithScheme, removed: &GysinData) -> Result<ExactReport> {
    match (x, removed) {
        (ArithScheme::NumberRing { field: k, sigma }, GysinData::Primes(d_primes)) => {
            for p in d_primes {
                if sigma.contains_key(p.key()) {
                    return Err(Error::BadInput(format!(
                        "removed prime {} is not on the scheme",
                        p.selector()
                    )));
                }
            }
            let d_mod = Modulus::new(d_primes.clone())?;
            let union = sigma.union(&d_mod);
            let r_u = relative_units(k, &union)?;
            let r_x = relative_units(k, sigma)?;
            let twist = residue_units(k, &d_mod)?;
            let c_u = ray_class_group(k, &union)?;
            let c_x = ray_class_group(k, sigma)?;
            let incl = express_through(&r_u.inclusion, &r_x.inclusion)?;
            // evaluation of units at the removed points
            let mut cols = Vec::with_capacity(r_x.group.ngens());
            for eps in &r_x.generators {
                cols.push(twist.dlog(k, eps)?);
            }
            let eval = GroupHom::new(
                r_x.group.clone(),
                twist.group.clone(),
                IntMatrix::from_cols(twist.factors.len(), &cols),
            )?;
            // connecting: residue data at one removed point, lifted to a
            // principal class with trivial data elsewhere
            let mut cols = Vec::with_capacity(twist.factors.len());
            for f in &twist.factors {
                cols.push(c_u.class_of_residue_at(f.prime.key(), &f.generator)?);
            }
            let connecting = GroupHom::new(
                twist.group.clone(),
                c_u.group.clone(),
                IntMatrix::from_cols(c_u.ngens(), &cols),
            )?;
            let proj = c_u.natural_map_to(&c_x)?;
            let seq = cap_ends(vec![incl, eval, connecting, proj]);
            let config = format!(
                "number ring sigma {:?}, removed {:?}",
                sigma.selectors(),
                d_mod.selectors()
            );
            seq_report("gysin", config, &seq)
        }
        (ArithScheme::FfCurve { fq, sigma }, GysinData::Places(d_places)) => {
            for p in d_places {
                if sigma.contains(p) {
                    return Err(Error::BadInput(format!("removed place {p} is not on the curve")));
                }
            }
            let mut union = sigma.clone();
            union.extend(d_places.iter().cloned());
            let h0_u = ff_h0(fq, &union)?;
            let h0_x = ff_h0(fq, sigma)?;
            let h1_u = ff_h1(fq, &union);
            let h1_x = ff_h1(fq, sigma);
            // twist: residue units at the removed places, taken with the
            // same deterministic generators as in h0_u
            let twist_factors: Vec<_> = h0_u
                .factors
                .iter()
                .filter(|f| d_places.contains(&f.place))
                .cloned()
                .collect();
            let orders: Vec<BigInt> = twist_factors.iter().map(|f| f.order.clone()).collect();
            let twist = FGAbelianGroup::from_orders(&orders);
            let incl = GroupHom::zero(&h1_u, &h1_x); // h1(U) is trivial (union nonempty)
            let mut cols = Vec::with_capacity(h1_x.ngens());
            if h1_x.ngens() > 0 {
                // constants evaluated at the removed places
                let c = if fq.size() > 2 { fq.generator()? } else { fq.one() };
                let cpoly = FqPoly::constant(fq.clone(), c);
                let mut col = Vec::new();
                for f in &twist_factors {
                    let reduced = match &f.place {
                        PlaceOfP1::Infinity => cpoly.clone(),
                        PlaceOfP1::Finite(pi) => FqQuot::new(pi.clone()).reduce(&cpoly),
                    };
                    col.push(ff_factor_dlog(f, &reduced)?);
                }
                cols.push(col);
            }
            let eval = GroupHom::new(
                h1_x.clone(),
                twist.clone(),
                IntMatrix::from_cols(twist_factors.len(), &cols),
            )?;
            let mut cols = Vec::with_capacity(twist_factors.len());
            for f in &twist_factors {
                cols.push(h0_u.class_of_residue_at(&f.place, &f.generator)?);
            }
            let connecting = GroupHom::new(
                twist,
                h0_u.group.clone(),
                IntMatrix::from_cols(h0_u.ngens(), &cols),
            )?;
            let proj = h0_u.natural_map_to(&h0_x)?;
            let seq = cap_ends(vec![incl, eval, connecting, proj]);
            let config = format!("curve q={} sigma {:?}, removed {:?}", fq.size(), sigma, d_places);
            seq_report("gysin", config, &seq)
        }
        _ => Err(Error::BadInput("scheme kind and removed-set kind do not match".into())),
    }
}

fn ff_factor_dlog(f: &crate::ffcurve::FFResidueFactor, x: &FqPoly) -> Result<BigInt> {
    let n = f.order.to_u128().ok_or_else(|| {
        Error::BoundExceeded("residue order exceeds the discrete log range".into())
    })?;
    if n <= 1 {
        return Ok(BigInt::zero());
    }
    match &f.place {
        PlaceOfP1::Infinity => {
            let field = f.generator.field.clone();
            let rf = FqQuot::new(FqPoly::x(field));
            Ok(BigInt::from(rf.dlog(&f.generator, x, n)?))
        }
        PlaceOfP1::Finite(pi) => {
            let rf = FqQuot::new(pi.clone());
            Ok(BigInt::from(rf.dlog(&f.generator, x, n)?))
        }
    }
}

/// The removed point set of a Gysin configuration.
#[derive(Clone, Debug)]
pub enum GysinData {
    Primes(Vec<PrimeIdealRec>),
    Places(Vec<PlaceOfP1>),
}

// ---------------------------------------------------------------------------
// pushforward / pullback composition
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct CompositionReport {
    pub config: String,
    pub composite_is_multiplication_by_degree: bool,
}

/// For a quadratic extension over the rationals: the norm-induced
/// pushforward and the extension-of-ideals pullback between the ray class
/// groups, with the check `f_* . f^* = x2`.
pub fn pushforward_norm(kp: &NumberField, sigma_rational: &[u64]) -> Result<CompositionReport> {
    if kp.degree() != 2 {
        return Err(Error::UnsupportedField(
            "the composition check runs over quadratic extensions of the rationals".into(),
        ));
    }
    let q = NumberField::rationals();
    let m = Modulus::from_rational_primes(&q, sigma_rational)?;
    let mp = Modulus::from_rational_primes(kp, sigma_rational)?;
    let c = ray_class_group(&q, &m)?;
    let cp = ray_class_group(kp, &mp)?;
    // f_*: norms of representative ideals
    let mut cols = Vec::with_capacity(cp.ngens());
    for rep in &cp.gen_reps {
        let n = kp.ideal_norm(rep);
        let ideal = q.principal_ideal(&q.from_rational(n))?;
        cols.push(c.class_of_ideal(&ideal)?);
    }
    let f_star =
        GroupHom::new(cp.group.clone(), c.group.clone(), IntMatrix::from_cols(c.ngens(), &cols))?;
    // f^*: extension of representative ideals
    let mut cols = Vec::with_capacity(c.ngens());
    for rep in &c.gen_reps {
        let g = num_rational::BigRational::new(rep.num.at(0, 0).clone(), rep.den.clone());
        let ideal = kp.principal_ideal(&kp.from_rational(g))?;
        cols.push(cp.class_of_ideal(&ideal)?);
    }
    let f_pull =
        GroupHom::new(c.group.clone(), cp.group.clone(), IntMatrix::from_cols(cp.ngens(), &cols))?;
    let composite = f_pull.then(&f_star)?;
    let ok = composite.equals(&GroupHom::scalar(&c.group, 2));
    Ok(CompositionReport {
        config: format!("quadratic disc {} over Q, sigma {:?}", kp.discriminant(), sigma_rational),
        composite_is_multiplication_by_degree: ok,
    })
}

// ---------------------------------------------------------------------------
// dense-open surjectivity
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct SurjectivityReport {
    pub config: String,
    pub surjective: bool,
}

/// The map h0(U) -> h0(X) for a dense open U removing finitely many points.
pub fn check_dense_open_surjectivity(
    x: &ArithScheme,
    extra: &GysinData,
) -> Result<SurjectivityReport> {
    match (x, extra) {
        (ArithScheme::NumberRing { field: k, sigma }, GysinData::Primes(extra)) => {
            let extra_mod = Modulus::new(extra.clone())?;
            let union = sigma.union(&extra_mod);
            let c_u = ray_class_group(k, &union)?;
            let c_x = ray_class_group(k, sigma)?;
            let map = c_u.natural_map_to(&c_x)?;
            Ok(SurjectivityReport {
                config: format!("sigma {:?}, extra {:?}", sigma.selectors(), extra_mod.selectors()),
                surjective: map.is_surjective(),
            })
        }
        (ArithScheme::FfCurve { fq, sigma }, GysinData::Places(extra)) => {
            let mut union = sigma.clone();
            union.extend(extra.iter().cloned());
            let h_u = ff_h0(fq, &union)?;
            let h_x = ff_h0(fq, sigma)?;
            let map = h_u.natural_map_to(&h_x)?;
            Ok(SurjectivityReport {
                config: format!("q={} sigma {:?}, extra {:?}", fq.size(), sigma, extra),
                surjective: map.is_surjective(),
            })
        }
        _ => Err(Error::BadInput("scheme kind and extra-set kind do not match".into())),
    }
}

// ---------------------------------------------------------------------------
// seeded random configurations for the verification batteries
// ---------------------------------------------------------------------------

pub const MV_TEST_FIELDS: [&str; 3] = ["Q", "x^2+1", "x^2+5"];

fn test_field(spec: &str) -> Result<NumberField> {
    match spec {
        "Q" => Ok(NumberField::rationals()),
        "x^2+1" => NumberField::new(&[BigInt::from(1), BigInt::zero(), BigInt::from(1)]),
        "x^2+5" => NumberField::new(&[BigInt::from(5), BigInt::zero(), BigInt::from(1)]),
        other => Err(Error::BadInput(format!("unknown test field {other}"))),
    }
}

const SMALL_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn random_prime_subset(rng: &mut ChaCha8Rng, max_len: usize) -> Vec<u64> {
    let len = rng.gen_range(0..=max_len);
    let mut out: Vec<u64> = Vec::new();
    while out.len() < len {
        let p = SMALL_PRIMES[rng.gen_range(0..SMALL_PRIMES.len())];
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out.sort_unstable();
    out
}

/// Seeded batch of open-cover Mayer-Vietoris checks.
pub fn mv_cover_battery(seed: u64, per_field: usize) -> Result<Vec<ExactReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for spec in MV_TEST_FIELDS {
        let k = test_field(spec)?;
        for _ in 0..per_field {
            let s1 = Modulus::from_rational_primes(&k, &random_prime_subset(&mut rng, 2))?;
            let s2 = Modulus::from_rational_primes(&k, &random_prime_subset(&mut rng, 2))?;
            out.push(check_mv_open_cover(&k, &s1, &s2)?);
        }
    }
    Ok(out)
}

/// Seeded batch of second-variable Mayer-Vietoris checks.
pub fn mv_base_battery(seed: u64, per_field: usize) -> Result<Vec<ExactReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for spec in MV_TEST_FIELDS {
        let k = test_field(spec)?;
        for _ in 0..per_field {
            let sigma_ps = random_prime_subset(&mut rng, 1);
            let sigma = Modulus::from_rational_primes(&k, &sigma_ps)?;
            let avail: Vec<u64> =
                SMALL_PRIMES.iter().filter(|p| !sigma_ps.contains(p)).cloned().collect();
            let pick = |rng: &mut ChaCha8Rng| -> Vec<u64> {
                let len = rng.gen_range(0..=2usize);
                let mut v: Vec<u64> = Vec::new();
                while v.len() < len {
                    let p = avail[rng.gen_range(0..avail.len())];
                    if !v.contains(&p) {
                        v.push(p);
                    }
                }
                v.sort_unstable();
                v
            };
            let omit_u = pick(&mut rng);
            let omit_v = pick(&mut rng);
            out.push(check_mv_second_variable(&k, &sigma, &omit_u, &omit_v)?);
        }
    }
    Ok(out)
}

/// Seeded batch of dense-open surjectivity checks.
pub fn surjectivity_battery(seed: u64, count: usize) -> Result<Vec<SurjectivityReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..count {
        let spec = MV_TEST_FIELDS[i % MV_TEST_FIELDS.len()];
        let k = test_field(spec)?;
        let sigma_ps = random_prime_subset(&mut rng, 1);
        let sigma = Modulus::from_rational_primes(&k, &sigma_ps)?;
        let avail: Vec<u64> =
            SMALL_PRIMES.iter().filter(|p| !sigma_ps.contains(p)).cloned().collect();
        let p = avail[rng.gen_range(0..avail.len())];
        let extra = k.split_prime(p)?;
        let x = ArithScheme::NumberRing { field: k, sigma };
        out.push(check_dense_open_surjectivity(&x, &GysinData::Primes(extra))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn gaussian() -> NumberField {
        NumberField::new(&[BigInt::from(1), BigInt::zero(), BigInt::from(1)]).unwrap()
    }

    #[test]
    fn homology_of_spec_z() {
        let x = ArithScheme::NumberRing { field: q(), sigma: Modulus::empty() };
        let h = homology(&x).unwrap();
        assert!(h.h0.is_trivial());
        assert_eq!(h.h1.invariants_i64(), vec![2]);
    }

    #[test]
    fn homology_of_spec_z_one_sixth() {
        let sigma = Modulus::from_rational_primes(&q(), &[2, 3]).unwrap();
        let x = ArithScheme::NumberRing { field: q(), sigma };
        let h = homology(&x).unwrap();
        assert!(h.h0.is_trivial());
        assert!(h.h1.is_trivial());
    }

    #[test]
    fn homology_of_gaussian_integers() {
        let x = ArithScheme::NumberRing { field: gaussian(), sigma: Modulus::empty() };
        let h = homology(&x).unwrap();
        assert!(h.h0.is_trivial());
        assert_eq!(h.h1.invariants_i64(), vec![4]);
    }

    #[test]
    fn mv_cover_fixed_cases() {
        let k = q();
        let s1 = Modulus::from_rational_primes(&k, &[2]).unwrap();
        let s2 = Modulus::from_rational_primes(&k, &[3]).unwrap();
        let rep = check_mv_open_cover(&k, &s1, &s2).unwrap();
        assert!(rep.exact, "witness {:?}", rep.witness);
        // degenerate: both empty
        let rep = check_mv_open_cover(&k, &Modulus::empty(), &Modulus::empty()).unwrap();
        assert!(rep.exact);
        // over Q(sqrt-5) with the primes above 2 and 3
        let k5 = NumberField::new(&[BigInt::from(5), BigInt::zero(), BigInt::from(1)]).unwrap();
        let s1 = Modulus::from_rational_primes(&k5, &[2]).unwrap();
        let s2 = Modulus::from_rational_primes(&k5, &[3]).unwrap();
        let rep = check_mv_open_cover(&k5, &s1, &s2).unwrap();
        assert!(rep.exact, "witness {:?}", rep.witness);
    }

    #[test]
    fn mv_base_fixed_cases() {
        let k = q();
        let sigma = Modulus::from_rational_primes(&k, &[5]).unwrap();
        let rep = check_mv_second_variable(&k, &sigma, &[2], &[3]).unwrap();
        assert!(rep.exact, "witness {:?}", rep.witness);
        // degenerate: full base on both sides
        let rep = check_mv_second_variable(&k, &sigma, &[], &[]).unwrap();
        assert!(rep.exact);
        // gaussian integers with overlapping omissions
        let kg = gaussian();
        let rep =
            check_mv_second_variable(&kg, &Modulus::empty(), &[2, 5], &[5, 13]).unwrap();
        assert!(rep.exact, "witness {:?}", rep.witness);
    }

    #[test]
    fn gysin_spec_z_remove_5_matches_hand_computation() {
        let k = q();
        let x = ArithScheme::NumberRing { field: k.clone(), sigma: Modulus::empty() };
        let d = k.split_prime(5).unwrap();
        let rep = check_gysin(&x, &GysinData::Primes(d)).unwrap();
        assert!(rep.exact, "witness {:?}", rep.witness);
        // the groups in the hand-checkable instance:
        // 0 -> 0 -> Z/2 -> Z/4 -> Z/2 -> 0 -> 0
        let sigma5 = Modulus::from_rational_primes(&k, &[5]).unwrap();
        assert!(relative_units(&k, &sigma5).unwrap().group.is_trivial());
        assert_eq!(relative_units(&k, &Modulus::empty()).unwrap().group.invariants_i64(), vec![2]);
        let twist = residue_units(&k, &sigma5).unwrap();
        assert_eq!(twist.group.invariants_i64(), vec![4]);
        let c5 = ray_class_group(&k, &sigma5).unwrap();
        assert_eq!(c5.group.invariants_i64(), vec![2]);
        assert!(ray_class_group(&k, &Modulus::empty()).unwrap().group.is_trivial());
    }

    #[test]
    fn gysin_gaussian_remove_prime_above_5() {
        let k = gaussian();
        let x = ArithScheme::NumberRing { field: k.clone(), sigma: Modulus::empty() };
        let d = vec![k.split_prime(5).unwrap().remove(0)];
        let rep = check_gysin(&x, &GysinData::Primes(d)).unwrap();
        assert!(rep.exact, "witness {:?}", rep.witness);
    }

    #[test]
    fn gysin_ff_affine_line_remove_origin() {
        let fq = Fq::prime(3).unwrap();
        let x = ArithScheme::FfCurve { fq: fq.clone(), sigma: vec![PlaceOfP1::Infinity] };
        let origin = PlaceOfP1::finite(FqPoly::from_ints(fq, &[0, 1])).unwrap();
        let rep = check_gysin(&x, &GysinData::Places(vec![origin])).unwrap();
        assert!(rep.exact, "witness {:?}", rep.witness);
    }

    #[test]
    fn pushforward_norm_fixed_cases() {
        let rep = pushforward_norm(&gaussian(), &[5]).unwrap();
        assert!(rep.composite_is_multiplication_by_degree);
        let k5 = NumberField::new(&[BigInt::from(5), BigInt::zero(), BigInt::from(1)]).unwrap();
        let rep = pushforward_norm(&k5, &[]).unwrap();
        assert!(rep.composite_is_multiplication_by_degree);
    }

    #[test]
    fn dense_open_surjectivity_fixed_cases() {
        let k = q();
        let sigma = Modulus::from_rational_primes(&k, &[5]).unwrap();
        let x = ArithScheme::NumberRing { field: k.clone(), sigma };
        let extra = k.split_prime(7).unwrap();
        let rep = check_dense_open_surjectivity(&x, &GysinData::Primes(extra)).unwrap();
        assert!(rep.surjective);
        // identity map
        let x2 = ArithScheme::NumberRing { field: k, sigma: Modulus::empty() };
        let rep = check_dense_open_surjectivity(&x2, &GysinData::Primes(vec![])).unwrap();
        assert!(rep.surjective);
        // gaussian with a prime above 13
        let kg = gaussian();
        let extra = vec![kg.split_prime(13).unwrap().remove(0)];
        let xg = ArithScheme::NumberRing { field: kg, sigma: Modulus::empty() };
        let rep = check_dense_open_surjectivity(&xg, &GysinData::Primes(extra)).unwrap();
        assert!(rep.surjective);
    }

    #[test]
    fn relative_unit_inclusion_tower() {
        // for sigma inside sigma', the relative units of sigma' include into
        // those of sigma (generator-level membership)
        let k = q();
        let small = Modulus::from_rational_primes(&k, &[5]).unwrap();
        let big = Modulus::from_rational_primes(&k, &[5, 7]).unwrap();
        let r_small = relative_units(&k, &small).unwrap();
        let r_big = relative_units(&k, &big).unwrap();
        let h = express_through(&r_big.inclusion, &r_small.inclusion);
        assert!(h.is_ok());
    }

    #[test]
    fn seeded_batteries_smoke() {
        for rep in mv_cover_battery(7, 2).unwrap() {
            assert!(rep.exact, "{:?}", rep);
        }
        for rep in mv_base_battery(7, 1).unwrap() {
            assert!(rep.exact, "{:?}", rep);
        }
        for rep in surjectivity_battery(7, 3).unwrap() {
            assert!(rep.surjective, "{:?}", rep);
        }
    }
}
