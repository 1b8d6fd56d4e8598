#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use toric_apolarity::apolarity::ApolarForm;
use toric_apolarity::ring::GradedRing;
use toric_apolarity::{fixtures, FanModel, MultiPoly, Rational, Side};

pub fn ring(fan: FanModel) -> Arc<GradedRing> {
    Arc::new(GradedRing::new(Arc::new(fan)).expect("certificate"))
}

pub fn f1() -> Arc<GradedRing> {
    ring(fixtures::hirzebruch())
}

pub fn p114() -> Arc<GradedRing> {
    ring(fixtures::weighted_plane())
}

pub fn fake() -> Arc<GradedRing> {
    ring(fixtures::fake_plane())
}

pub fn form(ring: &Arc<GradedRing>, text: &str) -> ApolarForm {
    ApolarForm::parse(Arc::clone(ring), text).expect("form")
}

pub fn deg(ring: &GradedRing, text: &str) -> toric_apolarity::DegreeClass {
    ring.fan().parse_degree(text).expect("degree")
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn qq(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Contraction by a plain nested loop over exponent maps.
pub fn oracle_contract(g: &MultiPoly, f: &MultiPoly) -> HashMap<Vec<u32>, Rational> {
    let mut out: HashMap<Vec<u32>, Rational> = HashMap::new();
    for (a, ca) in g.terms() {
        'next: for (b, cb) in f.terms() {
            let mut d = Vec::new();
            for (x, y) in a.0.iter().zip(&b.0) {
                if x > y {
                    continue 'next;
                }
                d.push(y - x);
            }
            *out.entry(d).or_insert_with(|| q(0)) += ca * cb;
        }
    }
    out.retain(|_, c| *c != q(0));
    out
}

pub fn as_map(p: &MultiPoly) -> HashMap<Vec<u32>, Rational> {
    p.terms().iter().map(|(m, c)| (m.0.clone(), c.clone())).collect()
}

/// Exponent vectors `(a0, a1, b0, b1)` of degree `(d1, d2)` on the
/// Hirzebruch surface, where `deg b0 = (1,1)`: `a0 + a1 + b0 = d1`, `b0 + b1 = d2`.
pub fn oracle_f1_basis(d1: i64, d2: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    for b0 in 0..=d2.max(0) {
        let b1 = d2 - b0;
        let rest = d1 - b0;
        if b1 < 0 || rest < 0 {
            continue;
        }
        for a0 in 0..=rest {
            out.push([a0, rest - a0, b0, b1]);
        }
    }
    out
}

/// Whether the Weil divisor `Σ a_i D_i` is Cartier, by brute-force search
/// for the local characters `m_σ` in a box.
pub fn oracle_cartier(fan: &FanModel, a: &[i64], bound: i64) -> bool {
    fan.max_cones().iter().all(|cone| {
        let n = fan.ambient_rank();
        let mut m = vec![-bound; n];
        loop {
            if cone.iter().all(|&i| fan.rays()[i].iter().zip(&m).map(|(u, v)| u * v).sum::<i64>() == -a[i]) {
                return true;
            }
            let mut k = 0;
            while k < n {
                if m[k] < bound {
                    m[k] += 1;
                    break;
                }
                m[k] = -bound;
                k += 1;
            }
            if k == n {
                return false;
            }
        }
    })
}

/// Rank over Q by plain Gaussian elimination on rationals.
pub fn oracle_rank(rows: &[Vec<Rational>]) -> usize {
    let mut a = rows.to_vec();
    let n = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != q(0)) else { continue };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && a[i][c] != q(0) {
                let f = &a[i][c] / &a[r][c];
                for j in c..n {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn dual(ring: &GradedRing, text: &str) -> MultiPoly {
    ring.parse(Side::Dual, text).expect("dual polynomial")
}

pub fn primal(ring: &GradedRing, text: &str) -> MultiPoly {
    ring.parse(Side::Primal, text).expect("polynomial")
}
