//! Residue unit groups, ray class groups and relative unit groups: the
//! closed forms for h0 and h1 of rings of S-integers.
//!
//! The ray class group of a squarefree modulus is presented through the
//! exact sequence  E_k -> (O/m)^x -> C_m -> Cl(k) -> 0 : generators are the
//! residue-unit generators plus fresh class-group generator primes coprime
//! to the modulus, and every relation carries a principal witness. Each
//! generator stores a representative ideal, so natural maps between ray
//! class groups of different moduli (projections, norms, extensions) are
//! evaluation of `class_of` on representatives.

use crate::abgrp::{FGAbelianGroup, GroupHom};
use crate::classunit::{class_group, is_principal, unit_group, ClassGroup, UnitGroup};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::numfield::{FieldElement, IdealRec, NumberField, PrimeIdealRec, PrimeKey};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// A squarefree modulus: a finite set of distinct prime ideals.
#[derive(Clone)]
pub struct Modulus {
    primes: Vec<PrimeIdealRec>,
}

impl std::fmt::Debug for Modulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let keys: Vec<String> = self.primes.iter().map(|p| p.selector()).collect();
        write!(f, "Modulus[{}]", keys.join(","))
    }
}

impl Modulus {
    pub fn new(mut primes: Vec<PrimeIdealRec>) -> Result<Modulus> {
        primes.sort_by_key(|p| p.key());
        for w in primes.windows(2) {
            if w[0].key() == w[1].key() {
                return Err(Error::NonSquarefreeModulus(format!(
                    "prime {} appears twice",
                    w[0].selector()
                )));
            }
        }
        Ok(Modulus { primes })
    }

    pub fn empty() -> Modulus {
        Modulus { primes: vec![] }
    }

    /// All primes of `k` above the given rational primes.
    pub fn from_rational_primes(k: &NumberField, ps: &[u64]) -> Result<Modulus> {
        let mut primes = Vec::new();
        let mut sorted: Vec<u64> = ps.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != ps.len() {
            return Err(Error::NonSquarefreeModulus("repeated rational prime".into()));
        }
        for &p in &sorted {
            primes.extend(k.split_prime(p)?);
        }
        Modulus::new(primes)
    }

    pub fn primes(&self) -> &[PrimeIdealRec] {
        &self.primes
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn contains_key(&self, key: PrimeKey) -> bool {
        self.primes.iter().any(|p| p.key() == key)
    }

    /// The product ideal of the modulus primes.
    pub fn ideal(&self, k: &NumberField) -> IdealRec {
        let mut acc = k.unit_ideal();
        for p in &self.primes {
            acc = k.ideal_mul(&acc, &k.prime_to_ideal(p));
        }
        acc
    }

    /// Union of two moduli (primes deduplicated).
    pub fn union(&self, other: &Modulus) -> Modulus {
        let mut primes = self.primes.clone();
        for p in &other.primes {
            if !self.contains_key(p.key()) {
                primes.push(p.clone());
            }
        }
        Modulus::new(primes).expect("union of valid moduli is valid")
    }

    /// Intersection of two moduli.
    pub fn intersection(&self, other: &Modulus) -> Modulus {
        let primes =
            self.primes.iter().filter(|p| other.contains_key(p.key())).cloned().collect();
        Modulus::new(primes).expect("intersection of valid moduli is valid")
    }

    pub fn selectors(&self) -> Vec<String> {
        self.primes.iter().map(|p| p.selector()).collect()
    }
}

// ---------------------------------------------------------------------------
// residue units
// ---------------------------------------------------------------------------

#[derive(Clone)]
pub struct ResidueFactor {
    pub prime: PrimeIdealRec,
    /// N(P) - 1.
    pub order: BigInt,
    /// Lift of the deterministic residue-field generator.
    pub generator: FieldElement,
}

/// `(O/m)^x` for a squarefree modulus: one cyclic factor per prime.
#[derive(Clone)]
pub struct ResidueUnitGroup {
    pub factors: Vec<ResidueFactor>,
    pub group: FGAbelianGroup,
}

impl ResidueUnitGroup {
    /// Discrete logarithm of an element coprime to the modulus, one
    /// coordinate per factor.
    pub fn dlog(&self, k: &NumberField, a: &FieldElement) -> Result<Vec<BigInt>> {
        let mut out = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            let rf = f.prime.residue_field()?;
            let x = k.reduce_mod_prime(a, &f.prime)?;
            if x.is_zero() {
                return Err(Error::SupportMeetsModulus(f.prime.selector()));
            }
            let g = k.reduce_mod_prime(&f.generator, &f.prime)?;
            let n = f.order.to_u128().ok_or_else(|| {
                Error::BoundExceeded("residue order exceeds the discrete log range".into())
            })?;
            let d = rf.dlog(&g, &x, n.max(1))?;
            out.push(BigInt::from(d));
        }
        Ok(out)
    }
}

pub fn residue_units(k: &NumberField, m: &Modulus) -> Result<ResidueUnitGroup> {
    let mut factors = Vec::new();
    let mut orders = Vec::new();
    for prime in m.primes() {
        let rf = prime.residue_field()?;
        let gen_fq = rf.generator()?;
        // lift the generator polynomial to an element of the order
        let mut coords = vec![BigInt::zero(); k.degree()];
        for i in 0..prime.residue_degree.min(k.degree()) {
            coords[i] = BigInt::from(gen_fq.coeff(i).first().copied().unwrap_or(0));
        }
        let generator = k.from_integer_coords(&coords);
        let order = BigInt::from(rf.unit_order());
        factors.push(ResidueFactor { prime: prime.clone(), order: order.clone(), generator });
        orders.push(order);
    }
    let group = FGAbelianGroup::from_relations(orders.len(), IntMatrix::diagonal(&orders));
    Ok(ResidueUnitGroup { factors, group })
}

// ---------------------------------------------------------------------------
// ray class groups
// ---------------------------------------------------------------------------

/// A witnessed lifted relation among the ray generators.
#[derive(Clone, Debug)]
pub struct RelationLift {
    pub column: Vec<BigInt>,
    pub witness: FieldElement,
}

/// The ray class group `C_m(k)`, presented on residue-unit generators and
/// class-group generator primes, with representative ideals per generator.
#[derive(Clone)]
pub struct RayClassGroup {
    pub field: NumberField,
    pub modulus: Modulus,
    pub group: FGAbelianGroup,
    pub residue: ResidueUnitGroup,
    pub class_group: ClassGroup,
    pub units: UnitGroup,
    /// Fresh class-group generator primes, coprime to the modulus.
    pub class_gens: Vec<PrimeIdealRec>,
    /// Their classes on the class-group generator basis.
    class_gen_coords: Vec<Vec<BigInt>>,
    /// Representative ideal of each group generator.
    pub gen_reps: Vec<IdealRec>,
    pub relation_witnesses: Vec<RelationLift>,
}

impl std::fmt::Debug for RayClassGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RayClassGroup({:?}, {:?})", self.modulus, self.group)
    }
}

pub fn ray_class_group(k: &NumberField, m: &Modulus) -> Result<RayClassGroup> {
    let residue = residue_units(k, m)?;
    let cl = class_group(k)?;
    let units = unit_group(k)?;
    let s = residue.factors.len();

    // fresh class generators coprime to m
    let mut class_gens: Vec<PrimeIdealRec> = Vec::new();
    let mut class_gen_coords: Vec<Vec<BigInt>> = Vec::new();
    if !cl.group.is_trivial() {
        let target_order = cl.group.order().expect("class group is finite");
        let mut subgroup_order = BigInt::one();
        let mut p = 2u64;
        'search: while p < 1000 {
            if crate::intfactor::is_prime_u64(p) {
                for prime in k.split_prime(p)? {
                    if m.contains_key(prime.key()) {
                        continue;
                    }
                    let c = cl.class_of_prime(k, &prime)?;
                    // does adding this prime enlarge the generated subgroup?
                    let mut cols = class_gen_coords.clone();
                    cols.push(c.clone());
                    let span = GroupHom::new(
                        FGAbelianGroup::free(cols.len()),
                        cl.group.clone(),
                        IntMatrix::from_cols(cl.generators.len(), &cols),
                    )?;
                    let (im, _) = span.image();
                    let new_order = im.order().expect("subgroup of finite group");
                    if new_order > subgroup_order {
                        subgroup_order = new_order.clone();
                        class_gens.push(prime);
                        class_gen_coords.push(c);
                        if new_order == target_order {
                            break 'search;
                        }
                    }
                }
            }
            p += 1;
        }
        if subgroup_order != target_order {
            return Err(Error::BoundExceeded(
                "no coprime generating set for the class group below the prime cap".into(),
            ));
        }
    }
    let t = class_gens.len();
    let ngens = s + t;

    let mut rel_cols: Vec<Vec<BigInt>> = Vec::new();
    let mut witnesses: Vec<RelationLift> = Vec::new();
    // residue factor orders
    for (i, f) in residue.factors.iter().enumerate() {
        let mut col = vec![BigInt::zero(); ngens];
        col[i] = f.order.clone();
        rel_cols.push(col);
    }
    // global units die in the ray class group
    for u in units.generators() {
        let d = residue.dlog(k, &u)?;
        let mut col = vec![BigInt::zero(); ngens];
        col[..s].clone_from_slice(&d);
        rel_cols.push(col.clone());
        witnesses.push(RelationLift { column: col, witness: u });
    }
    // lifted class-group relations on the fresh generators
    if t > 0 {
        let class_map = GroupHom::new(
            FGAbelianGroup::free(t),
            cl.group.clone(),
            IntMatrix::from_cols(cl.generators.len(), &class_gen_coords),
        )?;
        let (kernel, inclusion) = class_map.kernel();
        for j in 0..kernel.ngens() {
            let r = inclusion.matrix().col(j);
            let mut ideal = k.unit_ideal();
            for (i, e) in r.iter().enumerate() {
                let ei = e
                    .to_i64()
                    .ok_or_else(|| Error::BoundExceeded("relation exponent too large".into()))?;
                ideal = k.ideal_mul(&ideal, &k.ideal_pow(&k.prime_to_ideal(&class_gens[i]), ei));
            }
            let alpha = is_principal(k, &ideal)?.ok_or_else(|| {
                Error::Inconclusive("class relation lost its principal witness".into())
            })?;
            let d = residue.dlog(k, &alpha)?;
            let mut col = vec![BigInt::zero(); ngens];
            for i in 0..s {
                col[i] = -&d[i];
            }
            col[s..].clone_from_slice(&r);
            rel_cols.push(col.clone());
            witnesses.push(RelationLift { column: col, witness: alpha });
        }
    }
    let group = FGAbelianGroup::from_relations(ngens, IntMatrix::from_cols(ngens, &rel_cols));

    // representative ideals per generator
    let mut gen_reps: Vec<IdealRec> = Vec::new();
    for (i, _f) in residue.factors.iter().enumerate() {
        let targets: Vec<FieldElement> = residue
            .factors
            .iter()
            .enumerate()
            .map(|(j, g)| if i == j { g.generator.clone() } else { k.one() })
            .collect();
        let a = k.crt(m.primes(), &targets)?;
        gen_reps.push(k.principal_ideal(&a)?);
    }
    for q in &class_gens {
        gen_reps.push(k.prime_to_ideal(q));
    }

    let rcg = RayClassGroup {
        field: k.clone(),
        modulus: m.clone(),
        group,
        residue,
        class_group: cl,
        units,
        class_gens,
        class_gen_coords,
        gen_reps,
        relation_witnesses: witnesses,
    };
    // self-consistency: each representative evaluates to its own generator
    for (i, rep) in rcg.gen_reps.iter().enumerate() {
        let c = rcg.class_of_ideal(rep)?;
        let mut e = vec![BigInt::zero(); rcg.group.ngens()];
        e[i] = BigInt::one();
        if !rcg.group.elements_equal(&c, &e) {
            return Err(Error::Inconclusive(format!(
                "generator representative {i} does not evaluate to itself"
            )));
        }
    }
    Ok(rcg)
}

impl RayClassGroup {
    pub fn ngens(&self) -> usize {
        self.group.ngens()
    }

    fn residue_count(&self) -> usize {
        self.residue.factors.len()
    }

    /// Class of a fractional ideal coprime to the modulus, in generator
    /// coordinates: factor, express each prime through the class-group
    /// part, and correct by the discrete log of the principal witness.
    pub fn class_of_ideal(&self, ideal: &IdealRec) -> Result<Vec<BigInt>> {
        let k = &self.field;
        let fac = k.ideal_factor(ideal)?;
        let mut acc = vec![BigInt::zero(); self.ngens()];
        for (prime, v) in fac {
            if self.modulus.contains_key(prime.key()) {
                return Err(Error::SupportMeetsModulus(prime.selector()));
            }
            let c = self.prime_coords(&prime)?;
            for (i, ci) in c.iter().enumerate() {
                acc[i] += ci * BigInt::from(v);
            }
        }
        Ok(self.group.reduce(&acc))
    }

    /// Coordinates of a prime ideal coprime to the modulus.
    pub fn prime_coords(&self, prime: &PrimeIdealRec) -> Result<Vec<BigInt>> {
        let k = &self.field;
        let s = self.residue_count();
        let t = self.class_gens.len();
        if let Some(j) = self.class_gens.iter().position(|q| q == prime) {
            let mut e = vec![BigInt::zero(); self.ngens()];
            e[s + j] = BigInt::one();
            return Ok(e);
        }
        // solve [prime] = sum c_j [q_j] in the class group
        let r = self.class_group.class_of_prime(k, prime)?;
        let c: Vec<BigInt> = if t == 0 {
            vec![]
        } else {
            let stacked = IntMatrix::from_cols(
                self.class_group.generators.len(),
                &self.class_gen_coords,
            )
            .hstack(self.class_group.group.relations());
            let sol = stacked
                .solve(&r)
                .ok_or_else(|| Error::Inconclusive("class generators do not span".into()))?;
            sol[..t].to_vec()
        };
        // witness: prime * prod q_j^{-c_j} principal
        let mut cand = k.prime_to_ideal(prime);
        for (j, cj) in c.iter().enumerate() {
            let e = cj.to_i64().ok_or_else(|| Error::BoundExceeded("exponent too large".into()))?;
            cand = k.ideal_mul(&cand, &k.ideal_pow(&k.prime_to_ideal(&self.class_gens[j]), -e));
        }
        let gamma = is_principal(k, &cand)?.ok_or_else(|| {
            Error::Inconclusive("prime class witness search failed".into())
        })?;
        let d = self.residue.dlog(k, &gamma)?;
        let mut coords = vec![BigInt::zero(); self.ngens()];
        coords[..s].clone_from_slice(&d);
        for (j, cj) in c.iter().enumerate() {
            coords[s + j] = cj.clone();
        }
        Ok(self.group.reduce(&coords))
    }

    /// Class of the principal ideal generated by an element coprime to m.
    pub fn class_of_element(&self, a: &FieldElement) -> Result<Vec<BigInt>> {
        self.class_of_ideal(&self.field.principal_ideal(a)?)
    }

    /// The image of residue data placed at one modulus prime (all other
    /// components 1): the connecting-map building block. Returns the class
    /// of `(a)` for a CRT lift `a`.
    pub fn class_of_residue_at(&self, key: PrimeKey, residue: &FieldElement) -> Result<Vec<BigInt>> {
        let k = &self.field;
        let targets: Vec<FieldElement> = self
            .modulus
            .primes()
            .iter()
            .map(|p| if p.key() == key { residue.clone() } else { k.one() })
            .collect();
        if !self.modulus.contains_key(key) {
            return Err(Error::BadInput(format!("prime {key} is not in the modulus")));
        }
        let a = k.crt(self.modulus.primes(), &targets)?;
        self.class_of_element(&a)
    }

    /// Natural map to the ray class group of a divisor modulus (or any
    /// modulus all generator representatives are coprime to). Constructing
    /// the homomorphism checks well-definedness on every relation.
    pub fn natural_map_to(&self, other: &RayClassGroup) -> Result<GroupHom> {
        let mut cols = Vec::with_capacity(self.ngens());
        for rep in &self.gen_reps {
            cols.push(other.class_of_ideal(rep)?);
        }
        GroupHom::new(
            self.group.clone(),
            other.group.clone(),
            IntMatrix::from_cols(other.ngens(), &cols),
        )
    }

    /// The inclusion-of-residue-generators map `(O/m)^x -> C_m`.
    pub fn residue_map(&self) -> GroupHom {
        let s = self.residue_count();
        let mut mat = IntMatrix::zero(self.ngens(), s);
        for i in 0..s {
            mat.set(i, i, BigInt::one());
        }
        GroupHom::new(self.residue.group.clone(), self.group.clone(), mat)
            .expect("residue generators include into the ray class group")
    }

    /// The forgetful surjection `C_m -> Cl(k)`.
    pub fn to_class_group_map(&self) -> GroupHom {
        let s = self.residue_count();
        let rows = self.class_group.generators.len();
        let mut mat = IntMatrix::zero(rows, self.ngens());
        for (j, c) in self.class_gen_coords.iter().enumerate() {
            for (r, v) in c.iter().enumerate() {
                mat.set(r, s + j, v.clone());
            }
        }
        GroupHom::new(self.group.clone(), self.class_group.group.clone(), mat)
            .expect("forgetting the ray condition is well defined")
    }

    /// The unit-reduction map `E_k -> (O/m)^x`.
    pub fn unit_reduction_map(&self) -> Result<GroupHom> {
        let k = &self.field;
        let gens = self.units.generators();
        let mut cols = Vec::with_capacity(gens.len());
        for u in &gens {
            cols.push(self.residue.dlog(k, u)?);
        }
        GroupHom::new(
            self.units.group(),
            self.residue.group.clone(),
            IntMatrix::from_cols(self.residue_count(), &cols),
        )
    }
}

// ---------------------------------------------------------------------------
// relative units
// ---------------------------------------------------------------------------

/// Global units congruent to 1 at every modulus prime: the h1 closed form.
#[derive(Clone)]
pub struct RelativeUnitGroup {
    pub group: FGAbelianGroup,
    pub generators: Vec<FieldElement>,
    /// Inclusion into the unit-group presentation.
    pub inclusion: GroupHom,
    pub units: UnitGroup,
}

impl std::fmt::Debug for RelativeUnitGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RelativeUnitGroup({:?})", self.group)
    }
}

pub fn relative_units(k: &NumberField, m: &Modulus) -> Result<RelativeUnitGroup> {
    let units = unit_group(k)?;
    let residue = residue_units(k, m)?;
    let gens = units.generators();
    let mut cols = Vec::with_capacity(gens.len());
    for u in &gens {
        cols.push(residue.dlog(k, u)?);
    }
    let hom = GroupHom::new(
        units.group(),
        residue.group.clone(),
        IntMatrix::from_cols(residue.factors.len(), &cols),
    )?;
    let (kernel, inclusion) = hom.kernel();
    assert_eq!(
        kernel.free_rank(),
        k.unit_rank(),
        "relative units must keep the full free rank"
    );
    let mut generators = Vec::new();
    for j in 0..kernel.ngens() {
        let coords = inclusion.matrix().col(j);
        let g = units.element(k, &coords)?;
        for p in m.primes() {
            if !k.is_one_mod_prime(&g, p)? {
                return Err(Error::Inconclusive(format!(
                    "relative unit generator is not 1 at {}",
                    p.selector()
                )));
            }
        }
        generators.push(g);
    }
    Ok(RelativeUnitGroup { group: kernel, generators, inclusion, units })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgrp::is_exact;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn modulus_q(ps: &[u64]) -> Modulus {
        Modulus::from_rational_primes(&q(), ps).unwrap()
    }

    #[test]
    fn residue_units_mod_5_is_cyclic_4_generated_by_2() {
        let k = q();
        let m = modulus_q(&[5]);
        let r = residue_units(&k, &m).unwrap();
        assert_eq!(r.factors.len(), 1);
        assert_eq!(r.factors[0].order, BigInt::from(4));
        assert_eq!(r.factors[0].generator, k.from_int(2));
    }

    #[test]
    fn residue_units_mod_6_orders() {
        let r = residue_units(&q(), &modulus_q(&[2, 3])).unwrap();
        let orders: Vec<BigInt> = r.factors.iter().map(|f| f.order.clone()).collect();
        assert_eq!(orders, vec![BigInt::one(), BigInt::from(2)]);
    }

    #[test]
    fn residue_units_trivial_for_ramified_2_in_gaussian() {
        let k = NumberField::new(&[BigInt::one(), BigInt::zero(), BigInt::one()]).unwrap();
        let p2 = k.split_prime(2).unwrap();
        let m = Modulus::new(p2).unwrap();
        let r = residue_units(&k, &m).unwrap();
        assert!(r.group.is_trivial());
    }

    #[test]
    fn ray_class_group_of_q_mod_5_is_z2() {
        let rcg = ray_class_group(&q(), &modulus_q(&[5])).unwrap();
        assert_eq!(rcg.group.invariants_i64(), vec![2]);
        assert_eq!(rcg.group.free_rank(), 0);
    }

    #[test]
    fn ray_class_group_of_q_empty_modulus_is_trivial() {
        let rcg = ray_class_group(&q(), &Modulus::empty()).unwrap();
        assert!(rcg.group.is_trivial());
    }

    #[test]
    fn ray_class_group_of_sqrt_minus5_empty_modulus_is_class_group() {
        let k = NumberField::new(&[BigInt::from(5), BigInt::zero(), BigInt::one()]).unwrap();
        let rcg = ray_class_group(&k, &Modulus::empty()).unwrap();
        assert_eq!(rcg.group.invariants_i64(), vec![2]);
    }

    #[test]
    fn duplicate_modulus_prime_is_rejected() {
        let k = q();
        let p = k.split_prime(5).unwrap().remove(0);
        let r = Modulus::new(vec![p.clone(), p]);
        assert!(matches!(r, Err(Error::NonSquarefreeModulus(_))));
    }

    #[test]
    fn ray_class_order_matches_residue_enumeration_up_to_60() {
        // independent oracle: |(Z/m)^x / <-1>| by direct modular arithmetic
        let squarefree = |m: u64| {
            let mut m = m;
            let mut d = 2;
            while d * d <= m {
                if m % (d * d) == 0 {
                    return false;
                }
                if m % d == 0 {
                    m /= d;
                }
                d += 1;
            }
            true
        };
        for m in 2u64..=60 {
            if !squarefree(m) {
                continue;
            }
            let units: Vec<u64> = (1..m).filter(|a| gcd(*a, m) == 1).collect();
            let mut classes = std::collections::BTreeSet::new();
            for &u in &units {
                let neg = (m - u) % m;
                classes.insert(u.min(if neg == 0 { u } else { neg }));
            }
            let expected = classes.len() as u64;
            let ps: Vec<u64> =
                crate::intfactor::factor(&BigInt::from(m)).unwrap().iter().map(|(p, _)| *p).collect();
            let rcg = ray_class_group(&q(), &modulus_q(&ps)).unwrap();
            let got = rcg.group.order().unwrap().to_u64().unwrap();
            assert_eq!(got, expected, "ray class order mismatch at m={m}");
        }
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
    }

    #[test]
    fn class_of_principal_one_mod_m_is_identity() {
        let k = q();
        let m = modulus_q(&[5]);
        let rcg = ray_class_group(&k, &m).unwrap();
        for t in 1..=50i64 {
            let a = k.from_int(1 + 5 * t);
            let c = rcg.class_of_element(&a).unwrap();
            assert!(rcg.group.is_identity(&c), "class of {} not trivial", 1 + 5 * t);
        }
    }

    #[test]
    fn class_of_two_mod_5_is_the_nontrivial_element() {
        let rcg = ray_class_group(&q(), &modulus_q(&[5])).unwrap();
        let c = rcg.class_of_element(&q().from_int(2)).unwrap();
        assert!(!rcg.group.is_identity(&c));
        let c11 = rcg.class_of_element(&q().from_int(11)).unwrap();
        assert!(rcg.group.is_identity(&c11));
    }

    #[test]
    fn ray_sequence_is_exact() {
        // E_k -> (O/m)^x -> C_m -> Cl(k) -> 0 checked at every node
        for (poly, ps) in [
            (vec![0i64, 1], vec![5u64]),
            (vec![0, 1], vec![2, 3]),
            (vec![5, 0, 1], vec![3]),
            (vec![1, 0, 1], vec![5]),
        ] {
            let coeffs: Vec<BigInt> = poly.iter().map(|&c| BigInt::from(c)).collect();
            let k = NumberField::new(&coeffs).unwrap();
            let m = Modulus::from_rational_primes(&k, &ps).unwrap();
            let rcg = ray_class_group(&k, &m).unwrap();
            let phi = rcg.unit_reduction_map().unwrap();
            let psi = rcg.residue_map();
            let pi = rcg.to_class_group_map();
            let end = GroupHom::zero(&rcg.class_group.group, &FGAbelianGroup::trivial());
            let rep = is_exact(&[phi, psi, pi, end]).unwrap();
            assert!(rep.exact, "ray sequence witness: {:?}", rep.witness);
        }
    }

    #[test]
    fn relative_units_fixed_cases() {
        let k = q();
        // empty modulus: E_Q = Z/2
        let r = relative_units(&k, &Modulus::empty()).unwrap();
        assert_eq!(r.group.invariants_i64(), vec![2]);
        // {2,3}: -1 is not 1 mod 3
        let r = relative_units(&k, &modulus_q(&[2, 3])).unwrap();
        assert!(r.group.is_trivial());
        // Z[sqrt2], empty: Z/2 + Z
        let k2 = NumberField::new(&[BigInt::from(-2), BigInt::zero(), BigInt::one()]).unwrap();
        let r = relative_units(&k2, &Modulus::empty()).unwrap();
        assert_eq!(r.group.invariants_i64(), vec![2]);
        assert_eq!(r.group.free_rank(), 1);
    }

    #[test]
    fn natural_projection_between_moduli_is_surjective() {
        let k = q();
        let big = ray_class_group(&k, &modulus_q(&[5, 7])).unwrap();
        let small = ray_class_group(&k, &modulus_q(&[5])).unwrap();
        let proj = big.natural_map_to(&small).unwrap();
        assert!(proj.is_surjective());
    }
}
