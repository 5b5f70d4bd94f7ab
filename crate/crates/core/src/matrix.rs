//! Dense integer matrices with exact arithmetic.
//!
//! Everything downstream (group presentations, ideal lattices, exactness
//! checks) reduces to column-style Hermite and Smith normal forms over the
//! integers. Entries are arbitrary-precision; there is no fixed-width fast
//! path. Pivots are normalized positive and entries left of a pivot are
//! reduced into `[0, pivot)`, so normal forms are canonical and suitable as
//! golden outputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A rows x cols integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        IntMatrix { rows, cols, entries }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::new(rows, cols, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn diagonal(diag: &[BigInt]) -> Self {
        let n = diag.len();
        let mut m = Self::zero(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn col(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn from_cols(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    pub fn hstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = Self::zero(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.at(r, c).clone());
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.at(r, c).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "mul dimension mismatch");
        let mut m = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = m.at(r, c) + a * other.at(k, c);
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "mul_vec dimension mismatch");
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c) * &v[c]).sum())
            .collect()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -self.at(r, c).clone();
            self.set(r, c, v);
        }
    }

    /// col[dst] += q * col[src]
    fn addmul_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.at(r, dst) + q * self.at(r, src);
            self.set(r, dst, v);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            self.set(r, c, v);
        }
    }

    fn addmul_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.at(dst, c) + q * self.at(src, c);
            self.set(dst, c, v);
        }
    }

    /// Column-style Hermite normal form. The column span over the integers is
    /// preserved exactly; pivots are positive, entries left of a pivot lie in
    /// `[0, pivot)`, zero columns are pushed to the right.
    pub fn hnf(&self) -> IntMatrix {
        self.hnf_with_transform().0
    }

    /// Returns `(h, v)` with `h = self * v`, `v` unimodular and `h` the
    /// column HNF of `self`.
    pub fn hnf_with_transform(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut v = IntMatrix::identity(self.cols);
        let mut pivot_col = 0usize;
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        for row in 0..h.rows {
            if pivot_col == h.cols {
                break;
            }
            // gcd out the active part of this row by column operations
            loop {
                // locate column with minimal nonzero |entry| in this row
                let mut best: Option<(usize, BigInt)> = None;
                for c in pivot_col..h.cols {
                    let e = h.at(row, c);
                    if e.is_zero() {
                        continue;
                    }
                    let a = e.abs();
                    match &best {
                        Some((_, b)) if *b <= a => {}
                        _ => best = Some((c, a)),
                    }
                }
                let Some((bc, _)) = best else { break };
                h.swap_cols(pivot_col, bc);
                v.swap_cols(pivot_col, bc);
                let mut done = true;
                let p = h.at(row, pivot_col).clone();
                for c in pivot_col + 1..h.cols {
                    let e = h.at(row, c).clone();
                    if e.is_zero() {
                        continue;
                    }
                    let q = -e.div_floor(&p);
                    h.addmul_col(c, pivot_col, &q);
                    v.addmul_col(c, pivot_col, &q);
                    if !h.at(row, c).is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if h.at(row, pivot_col).is_zero() {
                continue;
            }
            if h.at(row, pivot_col).is_negative() {
                h.negate_col(pivot_col);
                v.negate_col(pivot_col);
            }
            // reduce entries left of the pivot into [0, pivot)
            let p = h.at(row, pivot_col).clone();
            for c in 0..pivot_col {
                let e = h.at(row, c).clone();
                let q = -e.div_floor(&p);
                h.addmul_col(c, pivot_col, &q);
                v.addmul_col(c, pivot_col, &q);
            }
            pivots.push((row, pivot_col));
            pivot_col += 1;
        }
        (h, v)
    }

    /// Pivot positions `(row, col)` of a matrix already in column HNF.
    pub fn hnf_pivots(&self) -> Vec<(usize, usize)> {
        let mut pivots = Vec::new();
        let mut col = 0usize;
        for row in 0..self.rows {
            if col == self.cols {
                break;
            }
            if !self.at(row, col).is_zero() {
                pivots.push((row, col));
                col += 1;
            }
        }
        pivots
    }

    /// Basis of the integer kernel `{ x : self * x = 0 }`, as matrix columns.
    pub fn kernel_basis(&self) -> IntMatrix {
        let (h, v) = self.hnf_with_transform();
        let rank = h.hnf_pivots().len();
        let cols: Vec<Vec<BigInt>> = (rank..h.cols).map(|c| v.col(c)).collect();
        IntMatrix::from_cols(self.cols, &cols)
    }

    /// One integer solution of `self * x = b`, if any. Free coordinates are
    /// set to zero.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows, "solve dimension mismatch");
        let (h, v) = self.hnf_with_transform();
        let pivots = h.hnf_pivots();
        let mut residual: Vec<BigInt> = b.to_vec();
        let mut y = vec![BigInt::zero(); h.cols];
        for &(r, c) in &pivots {
            let p = h.at(r, c);
            let (q, rem) = residual[r].div_rem(p);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for i in 0..h.rows {
                    let upd = &residual[i] - &q * h.at(i, c);
                    residual[i] = upd;
                }
            }
            y[c] = q;
        }
        if residual.iter().any(|e| !e.is_zero()) {
            return None;
        }
        Some(v.mul_vec(&y))
    }

    /// Does the integer column span of `self` contain `b`?
    pub fn lattice_contains(&self, b: &[BigInt]) -> bool {
        self.solve(b).is_some()
    }

    /// Does the column lattice of `self` contain every column of `other`?
    pub fn lattice_contains_all(&self, other: &IntMatrix) -> bool {
        let h = self.hnf();
        (0..other.cols()).all(|c| h.solve(&other.col(c)).is_some())
    }

    /// Lattice equality of column spans.
    pub fn lattice_eq(&self, other: &IntMatrix) -> bool {
        assert_eq!(self.rows, other.rows);
        self.hnf_nonzero_part() == other.hnf_nonzero_part()
    }

    fn hnf_nonzero_part(&self) -> IntMatrix {
        let h = self.hnf();
        let rank = h.hnf_pivots().len();
        let cols: Vec<Vec<BigInt>> = (0..rank).map(|c| h.col(c)).collect();
        IntMatrix::from_cols(self.rows, &cols)
    }

    /// Smith normal form: `u * self * v = d` with `u`, `v` unimodular and a
    /// nonnegative diagonal `d` where each entry divides the next.
    pub fn snf(&self) -> SnfDecomposition {
        let mut d = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        let n = self.rows.min(self.cols);
        let mut t = 0usize;
        while t < n {
            // pick the minimal nonzero |entry| in the trailing submatrix
            let mut best: Option<(usize, usize, BigInt)> = None;
            for r in t..d.rows {
                for c in t..d.cols {
                    let e = d.at(r, c);
                    if e.is_zero() {
                        continue;
                    }
                    let a = e.abs();
                    match &best {
                        Some((_, _, b)) if *b <= a => {}
                        _ => best = Some((r, c, a)),
                    }
                }
            }
            let Some((br, bc, _)) = best else { break };
            d.swap_rows(t, br);
            u.swap_rows(t, br);
            d.swap_cols(t, bc);
            v.swap_cols(t, bc);
            // clear row t and column t
            let mut clean = true;
            let p = d.at(t, t).clone();
            for c in t + 1..d.cols {
                let e = d.at(t, c).clone();
                if e.is_zero() {
                    continue;
                }
                let q = -e.div_floor(&p);
                d.addmul_col(c, t, &q);
                v.addmul_col(c, t, &q);
                if !d.at(t, c).is_zero() {
                    clean = false;
                }
            }
            for r in t + 1..d.rows {
                let e = d.at(r, t).clone();
                if e.is_zero() {
                    continue;
                }
                let q = -e.div_floor(&p);
                d.addmul_row(r, t, &q);
                u.addmul_row(r, t, &q);
                if !d.at(r, t).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the trailing submatrix; if not, fold the
            // offending row in and redo this step
            let p = d.at(t, t).clone();
            let mut offender = None;
            'scan: for r in t + 1..d.rows {
                for c in t + 1..d.cols {
                    if !(d.at(r, c) % &p).is_zero() {
                        offender = Some(r);
                        break 'scan;
                    }
                }
            }
            if let Some(r) = offender {
                let one = BigInt::one();
                d.addmul_row(t, r, &one);
                u.addmul_row(t, r, &one);
                continue;
            }
            if d.at(t, t).is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
            t += 1;
        }
        SnfDecomposition { d, u, v }
    }

    /// A column basis of the column lattice, built incrementally: each
    /// incoming column is merged into a staircase basis by two-column gcd
    /// steps. Linear in the number of columns, unlike full HNF.
    pub fn lattice_column_basis(&self) -> IntMatrix {
        let n = self.rows;
        // basis[r] = column with its topmost nonzero entry at row r
        let mut basis: Vec<Option<Vec<BigInt>>> = vec![None; n];
        for j in 0..self.cols {
            let mut v = self.col(j);
            for r in 0..n {
                if v[r].is_zero() {
                    continue;
                }
                match &mut basis[r] {
                    slot @ None => {
                        if v[r].is_negative() {
                            for e in v.iter_mut() {
                                *e = -std::mem::take(e);
                            }
                        }
                        *slot = Some(v);
                        break;
                    }
                    Some(b) => {
                        let (g, x, y) = ext_gcd(&b[r], &v[r]);
                        let bq = &b[r] / &g;
                        let vq = &v[r] / &g;
                        for i in 0..n {
                            let nb = &x * &b[i] + &y * &v[i];
                            let nv = &bq * &v[i] - &vq * &b[i];
                            b[i] = nb;
                            v[i] = nv;
                        }
                        debug_assert!(v[r].is_zero());
                    }
                }
            }
        }
        let cols: Vec<Vec<BigInt>> = basis.into_iter().flatten().collect();
        IntMatrix::from_cols(n, &cols)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let Some(sw) = (k + 1..n).find(|&r| !m.at(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, sw);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                    m.set(i, j, &num / &prev);
                }
            }
            for i in k + 1..n {
                m.set(i, k, BigInt::zero());
            }
            prev = m.at(k, k).clone();
        }
        let d = m.at(n - 1, n - 1).clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    /// Inverse of a unimodular matrix (exact, integer entries).
    pub fn inverse_unimodular(&self) -> IntMatrix {
        assert!(self.is_unimodular(), "matrix is not unimodular");
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            cols.push(self.solve(&e).expect("unimodular solve must succeed"));
        }
        IntMatrix::from_cols(n, &cols)
    }
}


/// Extended gcd: returns (g, x, y) with g = x*a + y*b, g > 0 for nonzero inputs.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Result of [`IntMatrix::snf`]: `u * m * v = d`.
pub struct SnfDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// The diagonal entries, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.at(i, i).clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(r: usize, c: usize, e: &[i64]) -> IntMatrix {
        IntMatrix::from_i64(r, c, e)
    }

    #[test]
    fn hnf_identity_fixed() {
        let id = IntMatrix::identity(2);
        assert_eq!(id.hnf(), id);
    }

    #[test]
    fn hnf_single_pivot_gcd() {
        let a = m(2, 2, &[2, 4, 0, 0]);
        assert_eq!(a.hnf(), m(2, 2, &[2, 0, 0, 0]));
    }

    #[test]
    fn hnf_preserves_lattice_mutual_membership() {
        // brute-force membership of each generator in the other's span
        let a = m(2, 2, &[1, 3, 2, 4]);
        let h = a.hnf();
        for c in 0..2 {
            assert!(h.lattice_contains(&a.col(c)));
            assert!(a.lattice_contains(&h.col(c)));
        }
    }

    #[test]
    fn hnf_transform_is_unimodular() {
        let a = m(3, 4, &[2, -3, 5, 7, 0, 4, -6, 1, 9, 9, 0, -2]);
        let (h, v) = a.hnf_with_transform();
        assert!(v.is_unimodular());
        assert_eq!(a.mul(&v), h);
    }

    #[test]
    fn snf_diag_2_3() {
        let a = IntMatrix::diagonal(&[BigInt::from(2), BigInt::from(3)]);
        let s = a.snf();
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
    }

    #[test]
    fn snf_zero_matrix() {
        let a = IntMatrix::zero(2, 2);
        let s = a.snf();
        assert_eq!(s.diagonal(), vec![BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn snf_rank_one() {
        let a = m(2, 2, &[2, 4, 4, 8]);
        let s = a.snf();
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::zero()]);
    }

    #[test]
    fn snf_is_idempotent() {
        let a = m(3, 3, &[6, 4, 2, 4, 4, 0, 2, 0, 8]);
        let s = a.snf();
        let s2 = s.d.snf();
        assert_eq!(s.diagonal(), s2.diagonal());
    }

    #[test]
    fn solve_finds_integer_solutions() {
        let a = m(2, 2, &[2, 0, 0, 3]);
        assert_eq!(
            a.solve(&[BigInt::from(4), BigInt::from(9)]),
            Some(vec![BigInt::from(2), BigInt::from(3)])
        );
        assert_eq!(a.solve(&[BigInt::from(1), BigInt::from(0)]), None);
    }

    #[test]
    fn kernel_of_projection() {
        let a = m(1, 2, &[2, 4]);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero_matrix());
    }

    #[test]
    fn det_matches_cofactor_small() {
        let a = m(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 10]);
        assert_eq!(a.det(), BigInt::from(-3));
        assert_eq!(IntMatrix::identity(4).det(), BigInt::one());
    }

    #[test]
    fn empty_dimensions_are_handled() {
        let a = IntMatrix::zero(0, 3);
        let h = a.hnf();
        assert_eq!(h.rows(), 0);
        assert_eq!(h.cols(), 3);
        let b = IntMatrix::zero(2, 0);
        assert!(b.solve(&[BigInt::zero(), BigInt::zero()]).is_some());
        assert!(b.solve(&[BigInt::one(), BigInt::zero()]).is_none());
        let s = b.snf();
        assert_eq!(s.diagonal(), Vec::<BigInt>::new());
    }
}
