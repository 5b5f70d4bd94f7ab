//! Finitely generated abelian groups presented by integer relation matrices.
//!
//! A group is `Z^ngens` modulo the column lattice of its relation matrix.
//! Smith normal form gives canonical invariants and a change of basis into
//! cyclic coordinates; every group-theoretic question (kernels, images,
//! exactness, surjectivity) is answered by exact lattice arithmetic on the
//! presentations. Unit invariants (d = 1) are dropped from the public
//! invariant list so the list is an isomorphism invariant.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

#[derive(Clone, PartialEq, Eq)]
pub struct FGAbelianGroup {
    ngens: usize,
    relations: IntMatrix,
    /// Full SNF diagonal padded with zeros to length `ngens` (units kept).
    snf_diag: Vec<BigInt>,
    /// Unimodular map from generator coordinates to SNF coordinates.
    transform: IntMatrix,
    transform_inv: IntMatrix,
    /// Nonunit invariants, finite part first, zeros (free rank) last.
    invariants: Vec<BigInt>,
}

impl std::fmt::Debug for FGAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FGAbelianGroup(ngens={}, invariants={:?})", self.ngens, self.invariants)
    }
}

impl FGAbelianGroup {
    /// Present `Z^ngens` modulo the columns of `relations`. Wide relation
    /// matrices are first collapsed to an HNF basis of the same lattice.
    pub fn from_relations(ngens: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.rows(), ngens, "relations must have ngens rows");
        let relations = if relations.cols() > ngens {
            relations.lattice_column_basis()
        } else {
            relations
        };
        let snf = relations.snf();
        let mut diag = snf.diagonal();
        diag.resize(ngens, BigInt::zero());
        let transform = snf.u;
        let transform_inv = transform.inverse_unimodular();
        let invariants: Vec<BigInt> = diag.iter().filter(|d| !d.is_one()).cloned().collect();
        FGAbelianGroup { ngens, relations, snf_diag: diag, transform, transform_inv, invariants }
    }

    pub fn trivial() -> Self {
        Self::from_relations(0, IntMatrix::zero(0, 0))
    }

    pub fn free(rank: usize) -> Self {
        Self::from_relations(rank, IntMatrix::zero(rank, 0))
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_relations(1, IntMatrix::new(1, 1, vec![BigInt::from(order)]))
    }

    /// Direct sum of cyclic groups of the given orders (0 meaning `Z`).
    pub fn from_orders(orders: &[BigInt]) -> Self {
        Self::from_relations(orders.len(), IntMatrix::diagonal(orders))
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn invariants(&self) -> &[BigInt] {
        &self.invariants
    }

    pub fn transform(&self) -> &IntMatrix {
        &self.transform
    }

    pub fn free_rank(&self) -> usize {
        self.snf_diag.iter().filter(|d| d.is_zero()).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// Group order; `None` when the free rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.snf_diag.iter().fold(BigInt::one(), |acc, d| acc * d))
    }

    /// Finite invariants and free rank as small integers, for reports.
    pub fn invariants_i64(&self) -> Vec<i64> {
        self.invariants
            .iter()
            .filter(|d| !d.is_zero())
            .map(|d| i64::try_from(d).expect("invariant exceeds i64"))
            .collect()
    }

    /// Canonical coordinates of an element: SNF coordinates reduced modulo
    /// the diagonal.
    pub fn canonical_form(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.ngens, "coordinate length mismatch");
        let mut y = self.transform.mul_vec(coords);
        for (yi, d) in y.iter_mut().zip(&self.snf_diag) {
            if d.is_zero() {
                continue;
            }
            *yi = yi.mod_floor(d);
        }
        y
    }

    pub fn is_identity(&self, coords: &[BigInt]) -> bool {
        self.canonical_form(coords).iter().all(|c| c.is_zero())
    }

    pub fn elements_equal(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        self.canonical_form(a) == self.canonical_form(b)
    }

    /// Generator coordinates of the canonical representative of an element.
    pub fn reduce(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.transform_inv.mul_vec(&self.canonical_form(coords))
    }

    /// Is the vector in the relation lattice (i.e. zero in the group)?
    pub fn in_relation_lattice(&self, v: &[BigInt]) -> bool {
        self.is_identity(v)
    }

    /// All elements in generator coordinates. Errors on infinite groups or
    /// more than `cap` elements.
    pub fn elements(&self, cap: usize) -> Result<Vec<Vec<BigInt>>> {
        let order = self
            .order()
            .ok_or_else(|| Error::BoundExceeded("cannot enumerate an infinite group".into()))?;
        if order > BigInt::from(cap) {
            return Err(Error::BoundExceeded(format!(
                "group of order {order} exceeds enumeration cap {cap}"
            )));
        }
        let mut out = Vec::new();
        let mut y = vec![BigInt::zero(); self.ngens];
        loop {
            out.push(self.transform_inv.mul_vec(&y));
            // odometer over the SNF box
            let mut i = 0;
            loop {
                if i == self.ngens {
                    return Ok(out);
                }
                y[i] += 1;
                if y[i] < self.snf_diag[i] {
                    break;
                }
                y[i] = BigInt::zero();
                i += 1;
            }
        }
    }

    /// Number of solutions of `n.x = 0`; a complete isomorphism invariant
    /// family for finite abelian groups as `n` ranges over divisors.
    pub fn count_order_dividing(&self, n: &BigInt) -> BigInt {
        assert!(n.is_positive());
        self.snf_diag
            .iter()
            .map(|d| if d.is_zero() { BigInt::one() } else { n.gcd(d) })
            .product()
    }

    /// The same group presented in SNF coordinates, with the isomorphism in
    /// both directions.
    pub fn snf_presentation(&self) -> (FGAbelianGroup, GroupHom, GroupHom) {
        let snf_group =
            FGAbelianGroup::from_relations(self.ngens, IntMatrix::diagonal(&self.snf_diag));
        let fwd = GroupHom::new(self.clone(), snf_group.clone(), self.transform.clone())
            .expect("SNF change of basis is a homomorphism");
        let bwd = GroupHom::new(snf_group.clone(), self.clone(), self.transform_inv.clone())
            .expect("SNF change of basis is a homomorphism");
        (snf_group, fwd, bwd)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let finite: Vec<serde_json::Value> = self
            .invariants
            .iter()
            .filter(|d| !d.is_zero())
            .map(|d| serde_json::json!(i64::try_from(d).expect("invariant exceeds i64")))
            .collect();
        serde_json::json!({ "invariants": finite, "free_rank": self.free_rank() })
    }
}

/// Direct sum with the four canonical maps (inclusions and projections).
pub fn direct_sum(a: &FGAbelianGroup, b: &FGAbelianGroup) -> DirectSum {
    let n = a.ngens + b.ngens;
    let mut rel = IntMatrix::zero(n, a.relations.cols() + b.relations.cols());
    for r in 0..a.ngens {
        for c in 0..a.relations.cols() {
            rel.set(r, c, a.relations.at(r, c).clone());
        }
    }
    for r in 0..b.ngens {
        for c in 0..b.relations.cols() {
            rel.set(a.ngens + r, a.relations.cols() + c, b.relations.at(r, c).clone());
        }
    }
    let sum = FGAbelianGroup::from_relations(n, rel);
    let mut inc_a = IntMatrix::zero(n, a.ngens);
    for i in 0..a.ngens {
        inc_a.set(i, i, BigInt::one());
    }
    let mut inc_b = IntMatrix::zero(n, b.ngens);
    for i in 0..b.ngens {
        inc_b.set(a.ngens + i, i, BigInt::one());
    }
    let mut pr_a = IntMatrix::zero(a.ngens, n);
    for i in 0..a.ngens {
        pr_a.set(i, i, BigInt::one());
    }
    let mut pr_b = IntMatrix::zero(b.ngens, n);
    for i in 0..b.ngens {
        pr_b.set(i, a.ngens + i, BigInt::one());
    }
    DirectSum {
        include_left: GroupHom::new(a.clone(), sum.clone(), inc_a).expect("inclusion"),
        include_right: GroupHom::new(b.clone(), sum.clone(), inc_b).expect("inclusion"),
        project_left: GroupHom::new(sum.clone(), a.clone(), pr_a).expect("projection"),
        project_right: GroupHom::new(sum.clone(), b.clone(), pr_b).expect("projection"),
        group: sum,
    }
}

pub struct DirectSum {
    pub group: FGAbelianGroup,
    pub include_left: GroupHom,
    pub include_right: GroupHom,
    pub project_left: GroupHom,
    pub project_right: GroupHom,
}

/// Quotient of `g` by the subgroup generated by extra relation columns, with
/// the projection map.
pub fn quotient_by(g: &FGAbelianGroup, extra: &IntMatrix) -> (FGAbelianGroup, GroupHom) {
    assert_eq!(extra.rows(), g.ngens());
    let rel = g.relations().hstack(extra);
    let q = FGAbelianGroup::from_relations(g.ngens(), rel);
    let proj = GroupHom::new(g.clone(), q.clone(), IntMatrix::identity(g.ngens()))
        .expect("quotient projection");
    (q, proj)
}

/// A homomorphism between presented groups, as a matrix on generator
/// coordinates. Well-definedness (relators map into the target relation
/// lattice) is checked eagerly at construction.
#[derive(Clone)]
pub struct GroupHom {
    source: FGAbelianGroup,
    target: FGAbelianGroup,
    matrix: IntMatrix,
}

impl std::fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupHom({:?} -> {:?})", self.source, self.target)
    }
}

impl GroupHom {
    pub fn new(source: FGAbelianGroup, target: FGAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        assert_eq!(matrix.rows(), target.ngens(), "hom matrix row mismatch");
        assert_eq!(matrix.cols(), source.ngens(), "hom matrix col mismatch");
        for j in 0..source.relations().cols() {
            let image = matrix.mul_vec(&source.relations().col(j));
            if !target.in_relation_lattice(&image) {
                return Err(Error::IllDefinedHom { relator: j });
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn identity(g: &FGAbelianGroup) -> Self {
        GroupHom::new(g.clone(), g.clone(), IntMatrix::identity(g.ngens())).expect("identity")
    }

    pub fn zero(source: &FGAbelianGroup, target: &FGAbelianGroup) -> Self {
        GroupHom::new(source.clone(), target.clone(), IntMatrix::zero(target.ngens(), source.ngens()))
            .expect("zero map")
    }

    /// Multiplication by an integer as an endomorphism.
    pub fn scalar(g: &FGAbelianGroup, n: i64) -> Self {
        let mut m = IntMatrix::zero(g.ngens(), g.ngens());
        for i in 0..g.ngens() {
            m.set(i, i, BigInt::from(n));
        }
        GroupHom::new(g.clone(), g.clone(), m).expect("scalar map")
    }

    pub fn source(&self) -> &FGAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FGAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(coords)
    }

    /// `other` after `self` (so `self.then(g) = g . self`).
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.target != other.source {
            return Err(Error::NotComposable(0));
        }
        GroupHom::new(self.source.clone(), other.target.clone(), other.matrix.mul(&self.matrix))
    }

    /// Pointwise difference of two maps with the same source and target.
    pub fn sub(&self, other: &GroupHom) -> GroupHom {
        assert!(self.source == other.source && self.target == other.target);
        let mut m = IntMatrix::zero(self.matrix.rows(), self.matrix.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                m.set(r, c, self.matrix.at(r, c) - other.matrix.at(r, c));
            }
        }
        GroupHom::new(self.source.clone(), self.target.clone(), m).expect("difference map")
    }

    /// Do the two maps agree as homomorphisms of presented groups?
    pub fn equals(&self, other: &GroupHom) -> bool {
        if self.source != other.source || self.target != other.target {
            return false;
        }
        (0..self.matrix.cols()).all(|c| {
            let d: Vec<BigInt> = (0..self.matrix.rows())
                .map(|r| self.matrix.at(r, c) - other.matrix.at(r, c))
                .collect();
            self.target.in_relation_lattice(&d)
        })
    }

    /// The lattice in `Z^{target.ngens}` of coordinates that vanish in the
    /// image group: preimages of the target relation lattice.
    fn kernel_lattice(&self) -> IntMatrix {
        let mut neg_rel = self.target.relations().clone();
        for c in 0..neg_rel.cols() {
            for r in 0..neg_rel.rows() {
                let v = -neg_rel.at(r, c).clone();
                neg_rel.set(r, c, v);
            }
        }
        let stacked = self.matrix.hstack(&neg_rel);
        let k = stacked.kernel_basis();
        // project kernel pairs (x, z) onto the x part
        let cols: Vec<Vec<BigInt>> =
            (0..k.cols()).map(|c| k.col(c)[..self.source.ngens()].to_vec()).collect();
        IntMatrix::from_cols(self.source.ngens(), &cols).hnf()
    }

    /// Kernel subgroup with its inclusion into the source.
    pub fn kernel(&self) -> (FGAbelianGroup, GroupHom) {
        let lat = self.kernel_lattice();
        let rank = lat.hnf_pivots().len();
        let basis_cols: Vec<Vec<BigInt>> = (0..rank).map(|c| lat.col(c)).collect();
        let basis = IntMatrix::from_cols(self.source.ngens(), &basis_cols);
        // express each source relator in the kernel basis
        let mut rel_cols = Vec::new();
        for j in 0..self.source.relations().cols() {
            let r = self.source.relations().col(j);
            let y = basis.solve(&r).expect("source relations lie in the kernel lattice");
            rel_cols.push(y);
        }
        let group = FGAbelianGroup::from_relations(rank, IntMatrix::from_cols(rank, &rel_cols));
        let inclusion = GroupHom::new(group.clone(), self.source.clone(), basis)
            .expect("kernel inclusion is well defined");
        (group, inclusion)
    }

    /// Image subgroup, presented on the images of the source generators,
    /// with its inclusion into the target.
    pub fn image(&self) -> (FGAbelianGroup, GroupHom) {
        let relations = self.kernel_lattice_of_presentation();
        let group = FGAbelianGroup::from_relations(self.source.ngens(), relations);
        let inclusion = GroupHom::new(group.clone(), self.target.clone(), self.matrix.clone())
            .expect("image inclusion is well defined");
        (group, inclusion)
    }

    fn kernel_lattice_of_presentation(&self) -> IntMatrix {
        // identical to kernel_lattice but named for its role in image()
        self.kernel_lattice()
    }

    pub fn cokernel(&self) -> (FGAbelianGroup, GroupHom) {
        quotient_by(&self.target, self.matrix())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Factor `f : A -> W` through an inclusion-like `g : B -> W`, producing
/// `h : A -> B` with `g . h = f`. Errors when the image of `f` does not lie
/// in the image of `g`.
pub fn express_through(f: &GroupHom, g: &GroupHom) -> Result<GroupHom> {
    if f.target() != g.target() {
        return Err(Error::NotComposable(0));
    }
    let ambient = f.target();
    let stacked = g.matrix().hstack(ambient.relations());
    let mut cols = Vec::new();
    for j in 0..f.source().ngens() {
        let target_col = f.matrix().col(j);
        let sol = stacked.solve(&target_col).ok_or_else(|| {
            Error::BadInput(format!("generator {j} does not factor through the given subgroup"))
        })?;
        cols.push(sol[..g.source().ngens()].to_vec());
    }
    GroupHom::new(
        f.source().clone(),
        g.source().clone(),
        IntMatrix::from_cols(g.source().ngens(), &cols),
    )
}

/// Outcome of an exactness check, with a witness on failure.
#[derive(Debug, Clone, Serialize)]
pub struct ExactnessReport {
    pub exact: bool,
    pub witness: Option<ExactnessWitness>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind")]
pub enum ExactnessWitness {
    /// A generator of the node's incoming source with nonzero composite.
    NonzeroComposite { node: usize, generator: usize, composite: Vec<String> },
    /// An element of the kernel at the node that is not in the image.
    KernelNotImage { node: usize, element: Vec<String> },
}

/// Check exactness (image = kernel) at every interior node of a composable
/// sequence of maps.
pub fn is_exact(seq: &[GroupHom]) -> Result<ExactnessReport> {
    for i in 0..seq.len().saturating_sub(1) {
        if seq[i].target() != seq[i + 1].source() {
            return Err(Error::NotComposable(i));
        }
    }
    for i in 0..seq.len().saturating_sub(1) {
        let f = &seq[i];
        let g = &seq[i + 1];
        let node_group = f.target();
        // composite must vanish (image inside kernel)
        let comp = g.matrix().mul(f.matrix());
        for j in 0..comp.cols() {
            if !g.target().is_identity(&comp.col(j)) {
                return Ok(ExactnessReport {
                    exact: false,
                    witness: Some(ExactnessWitness::NonzeroComposite {
                        node: i,
                        generator: j,
                        composite: comp.col(j).iter().map(|x| x.to_string()).collect(),
                    }),
                });
            }
        }
        // kernel inside image
        let kernel_lat = g.kernel_lattice();
        let image_lat = f.matrix().hstack(node_group.relations());
        let image_hnf = image_lat.hnf();
        for c in 0..kernel_lat.cols() {
            let col = kernel_lat.col(c);
            if image_hnf.solve(&col).is_none() {
                return Ok(ExactnessReport {
                    exact: false,
                    witness: Some(ExactnessWitness::KernelNotImage {
                        node: i,
                        element: node_group.reduce(&col).iter().map(|x| x.to_string()).collect(),
                    }),
                });
            }
        }
    }
    Ok(ExactnessReport { exact: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(n: u64) -> FGAbelianGroup {
        FGAbelianGroup::cyclic(n)
    }

    #[test]
    fn invariants_of_diag_2_3() {
        let g = FGAbelianGroup::from_relations(
            2,
            IntMatrix::diagonal(&[BigInt::from(2), BigInt::from(3)]),
        );
        assert_eq!(g.invariants_i64(), vec![6]);
        assert_eq!(g.free_rank(), 0);
        assert_eq!(g.order(), Some(BigInt::from(6)));
    }

    #[test]
    fn invariants_of_free_cyclic() {
        let g = FGAbelianGroup::from_relations(1, IntMatrix::zero(1, 0));
        assert_eq!(g.invariants(), &[BigInt::zero()]);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.order(), None);
    }

    #[test]
    fn invariants_of_z2_plus_z() {
        let g = FGAbelianGroup::from_relations(2, IntMatrix::from_i64(2, 1, &[2, 0]));
        assert_eq!(g.invariants(), &[BigInt::from(2), BigInt::zero()]);
        assert_eq!(g.invariants_i64(), vec![2]);
        assert_eq!(g.free_rank(), 1);
    }

    #[test]
    fn kernel_of_multiplication_by_two_on_z4() {
        let z4 = zmod(4);
        let h = GroupHom::scalar(&z4, 2);
        let (k, inc) = h.kernel();
        assert_eq!(k.invariants_i64(), vec![2]);
        // the inclusion composed with the map is zero
        let comp = inc.then(&h).unwrap();
        assert!(comp.equals(&GroupHom::zero(&k, &z4)));
    }

    #[test]
    fn kernel_of_identity_on_z6() {
        let z6 = zmod(6);
        let h = GroupHom::identity(&z6);
        assert!(h.kernel().0.is_trivial());
    }

    #[test]
    fn kernel_of_projection_z_to_z5() {
        // brute-force oracle: residues of k in 0..5 vanish iff 5 | k
        for k in 1..=20i64 {
            let expected = k.rem_euclid(5) == 0;
            assert_eq!((k % 5) == 0, expected);
        }
        let z = FGAbelianGroup::free(1);
        let z5 = zmod(5);
        let h = GroupHom::new(z.clone(), z5, IntMatrix::identity(1)).unwrap();
        let (k, inc) = h.kernel();
        assert_eq!(k.invariants(), &[BigInt::zero()]);
        // generated by 5
        assert_eq!(inc.matrix().at(0, 0).abs(), BigInt::from(5));
    }

    #[test]
    fn exact_four_term_sequence() {
        // 0 -> Z/2 -(x2)-> Z/4 -(mod 2)-> Z/2 -> 0
        let zero = FGAbelianGroup::trivial();
        let z2 = zmod(2);
        let z4 = zmod(4);
        let f0 = GroupHom::zero(&zero, &z2);
        let f1 = GroupHom::new(z2.clone(), z4.clone(), IntMatrix::from_i64(1, 1, &[2])).unwrap();
        let f2 = GroupHom::new(z4.clone(), z2.clone(), IntMatrix::identity(1)).unwrap();
        let f3 = GroupHom::zero(&z2, &zero);
        let rep = is_exact(&[f0, f1, f2, f3]).unwrap();
        assert!(rep.exact, "witness: {:?}", rep.witness);
    }

    #[test]
    fn non_exact_identity_chain_has_witness() {
        let z2 = zmod(2);
        let id = GroupHom::identity(&z2);
        let rep = is_exact(&[id.clone(), id]).unwrap();
        assert!(!rep.exact);
        match rep.witness {
            Some(ExactnessWitness::NonzeroComposite { node: 0, .. }) => {}
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn ill_defined_hom_is_rejected() {
        let z2 = zmod(2);
        let z3 = zmod(3);
        let r = GroupHom::new(z2, z3, IntMatrix::identity(1));
        assert!(matches!(r, Err(Error::IllDefinedHom { relator: 0 })));
    }

    #[test]
    fn image_and_cokernel() {
        let z = FGAbelianGroup::free(1);
        let h = GroupHom::new(z.clone(), z.clone(), IntMatrix::from_i64(1, 1, &[3])).unwrap();
        let (im, _) = h.image();
        assert_eq!(im.invariants(), &[BigInt::zero()]);
        let (cok, _) = h.cokernel();
        assert_eq!(cok.invariants_i64(), vec![3]);
        assert!(!h.is_surjective());
        assert!(h.is_injective());
    }

    #[test]
    fn direct_sum_shapes() {
        let s = direct_sum(&zmod(2), &FGAbelianGroup::free(1));
        assert_eq!(s.group.invariants(), &[BigInt::from(2), BigInt::zero()]);
        let e = s.include_left.apply(&[BigInt::one()]);
        assert_eq!(s.project_left.apply(&e), vec![BigInt::one()]);
        assert_eq!(s.project_right.apply(&e), vec![BigInt::zero()]);
    }

    #[test]
    fn express_through_subgroup() {
        // 2Z inside Z contains 6Z
        let z = FGAbelianGroup::free(1);
        let sub2 = GroupHom::new(z.clone(), z.clone(), IntMatrix::from_i64(1, 1, &[2])).unwrap();
        let sub6 = GroupHom::new(z.clone(), z.clone(), IntMatrix::from_i64(1, 1, &[6])).unwrap();
        let h = express_through(&sub6, &sub2).unwrap();
        assert_eq!(h.matrix().at(0, 0), &BigInt::from(3));
        assert!(express_through(&sub2, &sub6).is_err());
    }

    #[test]
    fn element_enumeration_and_counts() {
        let g = FGAbelianGroup::from_relations(
            2,
            IntMatrix::diagonal(&[BigInt::from(2), BigInt::from(4)]),
        );
        let els = g.elements(100).unwrap();
        assert_eq!(els.len(), 8);
        assert_eq!(g.count_order_dividing(&BigInt::from(2)), BigInt::from(4));
        assert_eq!(g.count_order_dividing(&BigInt::from(4)), BigInt::from(8));
    }
}
