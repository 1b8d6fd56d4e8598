//! Exact linear algebra over Q and Z/p.
//!
//! Rank and determinant use fraction-free (Bareiss) elimination on integer
//! rows obtained by clearing denominators row by row. Kernels and spans use
//! reduced echelon forms over the rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Prime used for mod-p prescreens and probes unless told otherwise.
pub const DEFAULT_PRIME: u64 = 101;

/// Scales a rational row to a primitive integer row with the same span.
pub fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Rank of an integer matrix given as rows, by Bareiss elimination.
pub fn bareiss_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..m {
            for j in col + 1..n {
                let v = &a[i][j] * &a[rank][col] - &a[i][col] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank of a rational matrix.
pub fn rank_q(rows: &[Vec<Rational>]) -> usize {
    let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    bareiss_rank(&ints)
}

/// Determinant of a square rational matrix, via Bareiss on the cleared rows.
pub fn determinant_q(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for r in rows {
        let lcm = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        a.push(r.iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
        scale *= lcm;
    }
    if n == 0 {
        return Rational::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Rational::zero(),
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
    Rational::new(sign * &a[n - 1][n - 1], scale)
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for j in col..n {
                if rows[r][j].is_zero() {
                    continue;
                }
                let v = &f * &rows[r][j];
                rows[i][j] -= v;
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}` for `A` given by rows with `cols` columns.
pub fn kernel_q(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a = rows.to_vec();
    let pivots = rref(&mut a);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &p) in a.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Basis of `{c : cᵀ A = 0}` (left kernel).
pub fn left_kernel_q(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let m = rows.len();
    let transposed: Vec<Vec<Rational>> =
        (0..cols).map(|j| (0..m).map(|i| rows[i][j].clone()).collect()).collect();
    kernel_q(&transposed, m)
}

pub type SparseVec = BTreeMap<usize, Rational>;

/// Incrementally built echelon basis of a subspace of `Q^n` with sparse rows.
///
/// Every stored row is monic at its pivot (its smallest column), and pivots
/// are distinct, so reduction against the basis is well defined.
#[derive(Debug, Clone, Default)]
pub struct SparseEchelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` until none of its columns is a pivot column.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0usize;
        loop {
            let next = v.range(cursor..).map(|(&c, _)| c).find(|c| self.rows.contains_key(c));
            let Some(col) = next else { break };
            let f = v.remove(&col).expect("present");
            for (&c, x) in self.rows[&col].iter().skip(1) {
                let e = v.entry(c).or_insert_with(Rational::zero);
                *e -= &f * x;
                if e.is_zero() {
                    v.remove(&c);
                }
            }
            cursor = col + 1;
        }
        v
    }

    /// Adds `v` to the span; returns `false` if it was already contained.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&pivot, lead)) = v.iter().next() else { return false };
        let inv = lead.recip();
        let v: SparseVec = v.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        self.rows.insert(pivot, v);
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Fully reduced basis rows, ordered by pivot.
    pub fn basis(&self) -> Vec<SparseVec> {
        let mut out: Vec<SparseVec> = Vec::with_capacity(self.rows.len());
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        for (&p, row) in &self.rows {
            let mut r = row.clone();
            let lead = r.remove(&p).expect("pivot");
            let mut tail = SparseEchelon { rows: self.rows.clone() };
            tail.rows.remove(&p);
            let mut reduced = tail.reduce(r);
            reduced.insert(p, lead);
            out.push(reduced);
        }
        debug_assert_eq!(out.len(), pivots.len());
        out
    }
}

pub fn dense_to_sparse(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn sparse_to_dense(v: &SparseVec, n: usize) -> Vec<Rational> {
    let mut d = vec![Rational::zero(); n];
    for (&i, x) in v {
        d[i] = x.clone();
    }
    d
}

/// Arithmetic in Z/p for a word-sized prime.
pub mod modp {
    use super::*;

    pub fn is_prime(p: u64) -> bool {
        if p < 2 {
            return false;
        }
        let mut d = 2u64;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    pub fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1u64 % p;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b, p);
            }
            b = mul(b, b, p);
            e >>= 1;
        }
        acc
    }

    pub fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    /// Reduces a rational mod `p`; `None` if `p` divides the denominator.
    pub fn reduce(x: &Rational, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let den = x.denom().mod_floor(&pb).to_u64()?;
        if den == 0 {
            return None;
        }
        let num = x.numer().mod_floor(&pb).to_u64()?;
        Some(mul(num, inv(den, p), p))
    }

    pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
        let mut a = rows.to_vec();
        let m = a.len();
        let n = a.first().map_or(0, Vec::len);
        let mut r = 0;
        for col in 0..n {
            if r == m {
                break;
            }
            let Some(piv) = (r..m).find(|&i| a[i][col] != 0) else { continue };
            a.swap(r, piv);
            let inv_p = inv(a[r][col], p);
            for i in r + 1..m {
                if a[i][col] == 0 {
                    continue;
                }
                let f = mul(a[i][col], inv_p, p);
                for j in col..n {
                    let sub = mul(f, a[r][j], p);
                    a[i][j] = (a[i][j] + p - sub) % p;
                }
            }
            r += 1;
        }
        r
    }

    pub fn determinant(rows: &[Vec<u64>], p: u64) -> u64 {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
        let mut a = rows.to_vec();
        let mut det = 1u64 % p;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&i| a[i][col] != 0) else { return 0 };
            if piv != col {
                a.swap(col, piv);
                det = (p - det) % p;
            }
            det = mul(det, a[col][col], p);
            let inv_p = inv(a[col][col], p);
            for i in col + 1..n {
                if a[i][col] == 0 {
                    continue;
                }
                let f = mul(a[i][col], inv_p, p);
                for j in col..n {
                    let sub = mul(f, a[col][j], p);
                    a[i][j] = (a[i][j] + p - sub) % p;
                }
            }
        }
        det
    }
}

/// Exact rank over Q, optionally short-circuited by a mod-p rank that
/// already reaches `min(rows, cols)`. A mod-p rank can only drop relative
/// to Q, so a full mod-p rank certifies the rational rank.
pub fn rank_with_prescreen(rows: &[Vec<Rational>], cols: usize, prescreen: Option<u64>) -> usize {
    let full = rows.len().min(cols);
    if let Some(p) = prescreen {
        let reduced: Option<Vec<Vec<u64>>> =
            rows.iter().map(|r| r.iter().map(|x| modp::reduce(x, p)).collect()).collect();
        if let Some(red) = reduced {
            if modp::rank(&red, p) == full {
                return full;
            }
        }
    }
    rank_q(rows)
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| rational(v)).collect()).collect()
    }

    /// Permutation-expansion determinant, an independent oracle.
    fn leibniz(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = 0i64;
        fn rec(k: usize, perm: &mut Vec<usize>, m: &[Vec<i64>], total: &mut i64) {
            let n = perm.len();
            if k == n {
                let mut inv = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if perm[i] > perm[j] {
                            inv += 1;
                        }
                    }
                }
                let prod: i64 = (0..n).map(|i| m[i][perm[i]]).product();
                *total += if inv % 2 == 0 { prod } else { -prod };
                return;
            }
            for i in k..n {
                perm.swap(k, i);
                rec(k + 1, perm, m, total);
                perm.swap(k, i);
            }
        }
        rec(0, &mut perm, m, &mut total);
        total
    }

    #[test]
    fn rank_of_known_matrices() {
        assert_eq!(rank_q(&q(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_q(&q(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank_q(&q(&[&[1, 0, 0], &[0, 1, 0]])), 2);
        assert_eq!(rank_q(&[]), 0);
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = q(&[&[1, 2, 3]]);
        let k = kernel_q(&a, 3);
        assert_eq!(k.len(), 2);
        for v in k {
            let s: Rational = a[0].iter().zip(&v).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn sparse_echelon_membership() {
        let mut e = SparseEchelon::new();
        assert!(e.insert(dense_to_sparse(&[rational(1), rational(1), rational(0)])));
        assert!(e.insert(dense_to_sparse(&[rational(0), rational(1), rational(1)])));
        assert!(!e.insert(dense_to_sparse(&[rational(1), rational(2), rational(1)])));
        assert!(e.contains(dense_to_sparse(&[rational(1), rational(0), rational(-1)])));
        assert!(!e.contains(dense_to_sparse(&[rational(0), rational(0), rational(1)])));
        assert_eq!(e.dim(), 2);
    }

    #[test]
    fn modp_determinant_small() {
        assert_eq!(modp::determinant(&[vec![1, 2], vec![3, 4]], 101), 99);
        assert!(modp::is_prime(101));
        assert!(!modp::is_prime(100));
    }

    proptest! {
        #[test]
        fn determinant_matches_leibniz(entries in proptest::collection::vec(-5i64..=5, 16)) {
            let m: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            let rq: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&v| rational(v)).collect()).collect();
            prop_assert_eq!(determinant_q(&rq), rational(leibniz(&m)));
            let p = 101u64;
            let mp: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect()).collect();
            prop_assert_eq!(modp::determinant(&mp, p) as i64, leibniz(&m).rem_euclid(p as i64));
        }

        #[test]
        fn rank_agrees_with_sparse_echelon(entries in proptest::collection::vec(-3i64..=3, 20)) {
            let m: Vec<Vec<Rational>> = entries.chunks(5).map(|c| c.iter().map(|&v| rational(v)).collect()).collect();
            let mut e = SparseEchelon::new();
            for r in &m {
                e.insert(dense_to_sparse(r));
            }
            prop_assert_eq!(rank_q(&m), e.dim());
            let k = kernel_q(&m, 5);
            prop_assert_eq!(k.len() + rank_q(&m), 5);
            prop_assert_eq!(rank_with_prescreen(&m, 5, Some(101)), rank_q(&m));
        }
    }
}
