//! Finitely generated abelian groups, Smith normal form and cokernels.
//!
//! Class groups are presented as `Z^l ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with every
//! `d_i ≥ 2`. A [`Projection`] is the explicit surjection from the free group
//! on the rays onto such a presentation, together with a section used to lift
//! classes back to integer vectors.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("GroupMismatch: degree classes belong to different groups")]
    GroupMismatch,
    #[error("NotFullRank: relation matrix has column rank {rank} < {cols}")]
    NotFullRank { rank: usize, cols: usize },
    #[error("Overflow: integer entry does not fit in 64 bits")]
    Overflow,
}

impl GroupError {
    pub fn name(&self) -> &'static str {
        match self {
            GroupError::GroupMismatch => "GroupMismatch",
            GroupError::NotFullRank { .. } => "NotFullRank",
            GroupError::Overflow => "Overflow",
        }
    }
}

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must share a length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Exact determinant by cofactor-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// `left · original · right = diag(diag)` with unimodular `left`, `right`.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub diag: Vec<BigInt>,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    /// The diagonal as a full `rows × cols` matrix.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows(), self.right.cols());
        for (i, v) in self.diag.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }

    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let v = &a[(i, j)];
                    if v.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| v.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row(i, t, &q);
                left.add_row(i, t, &q);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col(j, t, &q);
                right.add_col(j, t, &q);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row and retry.
            let piv = a[(t, t)].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&piv)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let diag = (0..steps).map(|i| a[(i, i)].clone()).collect();
    SmithDecomposition { left, diag, right }
}

/// Integral solution of `a · x = b`, if one exists.
pub fn solve_integral(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "dimension mismatch");
    let snf = smith_normal_form(a);
    // D y = L b, x = R y
    let lb = snf.left.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, rhs) in lb.iter().enumerate() {
        let d = snf.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !rhs.is_zero() {
                return None;
            }
        } else {
            if !rhs.is_multiple_of(&d) {
                return None;
            }
            y[i] = rhs / &d;
        }
    }
    Some(snf.right.mul_vec(&y))
}

/// Inverse of a unimodular matrix.
fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let snf = smith_normal_form(m);
    debug_assert!(snf.diag.iter().all(|d| d.is_one()));
    // L M R = I  ⇒  M⁻¹ = R L
    let inv = snf.right.mul(&snf.left);
    debug_assert_eq!(m.mul(&inv), IntMatrix::identity(n));
    inv
}

/// `Z^free_rank ⊕ ⊕ Z/torsion_orders[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedGroup {
    free_rank: usize,
    torsion_orders: Vec<i64>,
}

impl GradedGroup {
    /// Orders equal to one are dropped; the rest are sorted.
    pub fn new(free_rank: usize, torsion_orders: impl IntoIterator<Item = i64>) -> Self {
        let mut t: Vec<i64> = torsion_orders.into_iter().map(i64::abs).filter(|&d| d > 1).collect();
        t.sort_unstable();
        GradedGroup { free_rank, torsion_orders: t }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[i64] {
        &self.torsion_orders
    }

    pub fn zero(&self) -> DegreeClass {
        DegreeClass {
            free: vec![0; self.free_rank],
            torsion: vec![0; self.torsion_orders.len()],
            moduli: self.torsion_orders.clone(),
        }
    }

    /// Canonical element with the given coordinates; torsion residues are reduced.
    pub fn element(&self, free: Vec<i64>, torsion: Vec<i64>) -> Result<DegreeClass, GroupError> {
        if free.len() != self.free_rank || torsion.len() != self.torsion_orders.len() {
            return Err(GroupError::GroupMismatch);
        }
        Ok(DegreeClass { free, torsion, moduli: self.torsion_orders.clone() }.normalized())
    }

    pub fn contains(&self, d: &DegreeClass) -> bool {
        d.free.len() == self.free_rank && d.moduli == self.torsion_orders
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            l => parts.push(format!("Z^{l}")),
        }
        parts.extend(self.torsion_orders.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// An element of a [`GradedGroup`], torsion residues kept in `[0, d_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeClass {
    free: Vec<i64>,
    torsion: Vec<i64>,
    moduli: Vec<i64>,
}

impl DegreeClass {
    pub fn free_part(&self) -> &[i64] {
        &self.free
    }

    pub fn torsion_part(&self) -> &[i64] {
        &self.torsion
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn group(&self) -> GradedGroup {
        GradedGroup { free_rank: self.free.len(), torsion_orders: self.moduli.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|&v| v == 0) && self.torsion.iter().all(|&v| v == 0)
    }

    pub fn normalized(mut self) -> Self {
        for (t, &d) in self.torsion.iter_mut().zip(&self.moduli) {
            *t = t.rem_euclid(d);
        }
        self
    }

    fn check_same(&self, other: &DegreeClass) -> Result<(), GroupError> {
        if self.free.len() != other.free.len() || self.moduli != other.moduli {
            Err(GroupError::GroupMismatch)
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &DegreeClass) -> Result<DegreeClass, GroupError> {
        self.check_same(other)?;
        Ok(DegreeClass {
            free: self.free.iter().zip(&other.free).map(|(a, b)| a + b).collect(),
            torsion: self.torsion.iter().zip(&other.torsion).map(|(a, b)| a + b).collect(),
            moduli: self.moduli.clone(),
        }
        .normalized())
    }

    pub fn try_sub(&self, other: &DegreeClass) -> Result<DegreeClass, GroupError> {
        self.check_same(other)?;
        Ok(DegreeClass {
            free: self.free.iter().zip(&other.free).map(|(a, b)| a - b).collect(),
            torsion: self.torsion.iter().zip(&other.torsion).map(|(a, b)| a - b).collect(),
            moduli: self.moduli.clone(),
        }
        .normalized())
    }

    pub fn scale(&self, k: i64) -> DegreeClass {
        DegreeClass {
            free: self.free.iter().map(|a| a * k).collect(),
            torsion: self.torsion.iter().map(|a| a * k).collect(),
            moduli: self.moduli.clone(),
        }
        .normalized()
    }
}

impl fmt::Display for DegreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let all: Vec<String> = self.free.iter().chain(&self.torsion).map(i64::to_string).collect();
        if all.len() == 1 {
            write!(f, "{}", all[0])
        } else {
            write!(f, "({})", all.join(","))
        }
    }
}

/// Surjection `Z^n → G` given by an integer matrix with residue reduction,
/// plus a section: one preimage vector per generator of `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    group: GradedGroup,
    /// `(free_rank + #torsion) × source_dim`; torsion rows already reduced.
    matrix: Vec<Vec<i64>>,
    /// Preimage of each generator, in the same order as the rows of `matrix`.
    section: Vec<Vec<i64>>,
    source_dim: usize,
}

impl Projection {
    pub fn group(&self) -> &GradedGroup {
        &self.group
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn project(&self, x: &[i64]) -> DegreeClass {
        let l = self.group.free_rank;
        let vals: Vec<i64> =
            self.matrix.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect();
        DegreeClass {
            free: vals[..l].to_vec(),
            torsion: vals[l..].to_vec(),
            moduli: self.group.torsion_orders.clone(),
        }
        .normalized()
    }

    /// Image of the `i`-th standard basis vector.
    pub fn project_unit(&self, i: usize) -> DegreeClass {
        let mut e = vec![0; self.source_dim()];
        e[i] = 1;
        self.project(&e)
    }

    /// A deterministic preimage of `d`.
    pub fn lift(&self, d: &DegreeClass) -> Vec<i64> {
        let coords = d.free.iter().chain(&d.torsion);
        let mut out = vec![0i64; self.source_dim()];
        for (c, sec) in coords.zip(&self.section) {
            for (o, s) in out.iter_mut().zip(sec) {
                *o += c * s;
            }
        }
        out
    }

    /// Re-expresses the free part in a basis of generator classes when possible.
    ///
    /// Among the subsets of `free_rank` source generators whose classes form a
    /// basis of the free quotient, the lexicographically first one under which
    /// every generator has a nonnegative free part is chosen (falling back to
    /// the first basis subset). The splitting of the torsion is then fixed by
    /// giving those generators zero torsion part, and each cyclic factor is
    /// rescaled by a unit so that the first generator with an invertible
    /// residue maps to 1.
    pub fn with_generator_basis(&self) -> Projection {
        const MAX_SUBSETS: usize = 200_000;
        let l = self.group.free_rank;
        let n = self.source_dim();
        let k = self.group.torsion_orders.len();
        let free_rows: Vec<Vec<i64>> = self.matrix[..l].to_vec();

        let mut chosen: Option<(Vec<usize>, IntMatrix)> = None;
        let mut fallback: Option<(Vec<usize>, IntMatrix)> = None;
        if l > 0 && l <= n {
            let mut seen = 0usize;
            for subset in Combinations::new(n, l) {
                seen += 1;
                if seen > MAX_SUBSETS {
                    break;
                }
                let b = IntMatrix::from_rows(
                    &free_rows.iter().map(|r| subset.iter().map(|&j| r[j]).collect::<Vec<_>>()).collect::<Vec<_>>(),
                );
                if !b.determinant().abs().is_one() {
                    continue;
                }
                let binv = unimodular_inverse(&b);
                let converted = binv.mul(&IntMatrix::from_rows(&free_rows));
                let nonneg = (0..l).all(|i| (0..n).all(|j| !converted[(i, j)].is_negative()));
                if nonneg {
                    chosen = Some((subset, binv));
                    break;
                }
                if fallback.is_none() {
                    fallback = Some((subset, binv));
                }
            }
        }
        let Some((subset, binv)) = chosen.or(fallback) else {
            return self.clone();
        };

        let big_free = binv.mul(&IntMatrix::from_rows(&free_rows));
        let new_free: Vec<Vec<i64>> = (0..l)
            .map(|i| (0..n).map(|j| big_free[(i, j)].to_i64().expect("free degree overflow")).collect())
            .collect();

        let mut matrix = new_free.clone();
        let mut section: Vec<Vec<i64>> = subset
            .iter()
            .map(|&j| {
                let mut e = vec![0; n];
                e[j] = 1;
                e
            })
            .collect();

        for t in 0..k {
            let d = self.group.torsion_orders[t];
            let old = &self.matrix[l + t];
            let mut row: Vec<i64> = (0..n)
                .map(|c| {
                    let shift: i64 = (0..l).map(|i| new_free[i][c] * old[subset[i]]).sum();
                    (old[c] - shift).rem_euclid(d)
                })
                .collect();
            let mut sec = self.section[l + t].clone();
            if let Some(&unit) = row.iter().find(|&&v| v != 0 && v.gcd(&d) == 1) {
                let inv = mod_inverse(unit, d);
                for v in row.iter_mut() {
                    *v = (*v * inv).rem_euclid(d);
                }
                for s in sec.iter_mut() {
                    *s *= unit;
                }
            }
            matrix.push(row);
            section.push(sec);
        }

        Projection { group: self.group.clone(), matrix, section, source_dim: n }
    }
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    let e = a.extended_gcd(&m);
    e.x.rem_euclid(m)
}

/// Lexicographic `k`-subsets of `0..n`.
pub(crate) struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        let current = if k <= n { Some((0..k).collect()) } else { None };
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Cokernel of `m : Z^cols → Z^rows` with its projection from `Z^rows`.
///
/// The projection reads coordinates off `left · x`, where `left` comes from
/// the Smith decomposition; the section is given by the columns of `left⁻¹`.
pub fn cokernel(m: &IntMatrix) -> Result<(GradedGroup, Projection), GroupError> {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    if rank < m.cols() {
        return Err(GroupError::NotFullRank { rank, cols: m.cols() });
    }
    let rows = m.rows();
    let left_inv = unimodular_inverse(&snf.left);
    let to_i64 = |v: &BigInt| v.to_i64().ok_or(GroupError::Overflow);

    let mut free_matrix = Vec::new();
    let mut free_section = Vec::new();
    let mut tors_matrix = Vec::new();
    let mut tors_section = Vec::new();
    let mut orders = Vec::new();

    for i in 0..rows {
        let d = snf.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_one() {
            continue;
        }
        let row: Vec<i64> = snf.left.row(i).iter().map(to_i64).collect::<Result<_, _>>()?;
        let sec: Vec<i64> = (0..rows).map(|r| to_i64(&left_inv[(r, i)])).collect::<Result<_, _>>()?;
        if d.is_zero() {
            free_matrix.push(row);
            free_section.push(sec);
        } else {
            let d = to_i64(&d)?;
            orders.push(d);
            tors_matrix.push(row.into_iter().map(|v| v.rem_euclid(d)).collect());
            tors_section.push(sec);
        }
    }
    // Smith divisors come out sorted, matching GradedGroup's ordering.
    let group = GradedGroup::new(free_matrix.len(), orders.iter().copied());
    debug_assert_eq!(group.torsion_orders, orders);
    let mut matrix = free_matrix;
    matrix.extend(tors_matrix);
    let mut section = free_section;
    section.extend(tors_section);
    Ok((group.clone(), Projection { group, matrix, section, source_dim: m.rows() }))
}

impl serde::Serialize for DegreeClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl serde::Serialize for GradedGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn snf_identity() {
        let m = IntMatrix::identity(2);
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, vec![int(1), int(1)]);
        assert_eq!(s.left, IntMatrix::identity(2));
        assert_eq!(s.right, IntMatrix::identity(2));
    }

    #[test]
    fn hirzebruch_cokernel_is_free_rank_two() {
        let m = IntMatrix::from_rows(&[[1, 0], [-1, -1], [0, 1], [0, -1]]);
        let (g, _) = cokernel(&m).unwrap();
        assert_eq!(g, GradedGroup::new(2, []));
    }

    #[test]
    fn fake_plane_cokernel_has_three_torsion() {
        let m = IntMatrix::from_rows(&[[-1, -1], [2, -1], [-1, 2]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, vec![int(1), int(3)]);
        let (g, _) = cokernel(&m).unwrap();
        assert_eq!(g, GradedGroup::new(1, [3]));
        assert_eq!(g.to_string(), "Z x Z/3");
    }

    #[test]
    fn weighted_plane_degrees() {
        let m = IntMatrix::from_rows(&[[-1, -4], [1, 0], [0, 1]]);
        let (g, p) = cokernel(&m).unwrap();
        assert_eq!(g, GradedGroup::new(1, []));
        let p = p.with_generator_basis();
        let degs: Vec<i64> = (0..3).map(|i| p.project_unit(i).free_part()[0]).collect();
        assert_eq!(degs, vec![1, 1, 4]);
    }

    #[test]
    fn torus_factor_rejected() {
        let m = IntMatrix::from_rows(&[[1, 0], [-1, 0]]);
        assert!(matches!(cokernel(&m), Err(GroupError::NotFullRank { rank: 1, cols: 2 })));
    }

    #[test]
    fn residue_arithmetic() {
        let g = GradedGroup::new(1, [3]);
        let a = g.element(vec![1], vec![2]).unwrap();
        assert_eq!(a.try_add(&a).unwrap(), g.element(vec![2], vec![1]).unwrap());
        assert_eq!(a.try_add(&g.zero()).unwrap(), a);
        assert_eq!(a.scale(3), g.element(vec![3], vec![0]).unwrap());
        let z2 = GradedGroup::new(2, []);
        let f = z2.element(vec![3, 2], vec![]).unwrap();
        let b = z2.element(vec![2, 1], vec![]).unwrap();
        assert_eq!(f.try_sub(&b).unwrap(), z2.element(vec![1, 1], vec![]).unwrap());
        assert_eq!(a.try_add(&f), Err(GroupError::GroupMismatch));
    }

    #[test]
    fn orders_of_one_are_dropped() {
        let g = GradedGroup::new(1, [1, 4, 2, 1]);
        assert_eq!(g.torsion_orders(), &[2, 4]);
    }

    #[test]
    fn integral_solver() {
        let a = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        assert_eq!(solve_integral(&a, &[int(4), int(9)]), Some(vec![int(2), int(3)]));
        assert_eq!(solve_integral(&a, &[int(1), int(9)]), None);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r)
        })
    }

    proptest! {
        #[test]
        fn snf_decomposition_invariants(rows in small_matrix()) {
            let m = IntMatrix::from_rows(&rows);
            let s = smith_normal_form(&m);
            prop_assert_eq!(s.left.mul(&m).mul(&s.right), s.diagonal_matrix());
            prop_assert!(s.left.determinant().abs().is_one());
            prop_assert!(s.right.determinant().abs().is_one());
            for w in s.diag.windows(2) {
                if w[0].is_zero() {
                    prop_assert!(w[1].is_zero());
                } else {
                    prop_assert!(w[1].is_multiple_of(&w[0]));
                }
            }
            prop_assert!(s.diag.iter().all(|d| !d.is_negative()));
        }

        #[test]
        fn cokernel_kills_columns_and_lifts(rows in small_matrix()) {
            let m = IntMatrix::from_rows(&rows);
            if let Ok((g, p)) = cokernel(&m) {
                for p in [p.clone(), p.with_generator_basis()] {
                    for j in 0..m.cols() {
                        let col: Vec<i64> = (0..m.rows()).map(|i| rows[i][j]).collect();
                        prop_assert!(p.project(&col).is_zero());
                    }
                    for i in 0..m.rows() {
                        let d = p.project_unit(i);
                        prop_assert_eq!(p.project(&p.lift(&d)), d);
                    }
                    let z = g.zero();
                    prop_assert_eq!(p.project(&p.lift(&z)), z);
                }
            }
        }

        #[test]
        fn normalization_is_idempotent(free in proptest::collection::vec(-20i64..20, 2), t in -10i64..10) {
            let g = GradedGroup::new(2, [6]);
            let d = g.element(free, vec![t]).unwrap();
            prop_assert_eq!(d.clone().normalized(), d);
        }
    }
}
