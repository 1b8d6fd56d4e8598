//! The monomial parametrization of `X` in `P(T_α)`, decompositions, limit
//! families and Terracini rank probes.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::abelian::DegreeClass;
use crate::apolarity::ApolarForm;
use crate::fan::FanModel;
use crate::linalg::{self, modp, Rational};
use crate::ring::{display_order, GradedRing, Monomial, MultiPoly, Side};
use crate::syntax::{self, Terms};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SecantError {
    #[error("PointInIrrelevantLocus: point {index} lies in the vanishing set of the irrelevant ideal")]
    PointInIrrelevantLocus { index: usize },
    #[error("WrongArity: expected {expected} coordinates, found {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("BadPrime: {0}")]
    BadPrime(String),
    #[error("DegenerateSample: all {trials} trials drew repeated points")]
    DegenerateSample { trials: usize },
    #[error("NonSquare: matrix is {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("BadChart: {0}")]
    BadChart(String),
}

impl SecantError {
    pub fn name(&self) -> &'static str {
        match self {
            SecantError::PointInIrrelevantLocus { .. } => "PointInIrrelevantLocus",
            SecantError::WrongArity { .. } => "WrongArity",
            SecantError::BadPrime(_) => "BadPrime",
            SecantError::DegenerateSample { .. } => "DegenerateSample",
            SecantError::NonSquare { .. } => "NonSquare",
            SecantError::BadChart(_) => "BadChart",
        }
    }
}

/// Cox coordinates of a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPoint(pub Vec<Rational>);

impl ParamPoint {
    pub fn from_ints(v: &[i64]) -> Self {
        ParamPoint(v.iter().map(|&x| linalg::rational(x)).collect())
    }
}

fn check_point(fan: &FanModel, p: &ParamPoint, index: usize) -> Result<(), SecantError> {
    if p.0.len() != fan.num_rays() {
        return Err(SecantError::WrongArity { expected: fan.num_rays(), found: p.0.len() });
    }
    if fan.irrelevant_ideal().is_zero_at(&p.0) {
        return Err(SecantError::PointInIrrelevantLocus { index });
    }
    Ok(())
}

fn power(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

/// `φ(p) = Σ_b p^b y^b` over the monomial basis of `T_α`.
pub fn parametrize(ring: &GradedRing, alpha: &DegreeClass, p: &ParamPoint) -> Result<MultiPoly, SecantError> {
    check_point(ring.fan(), p, 0)?;
    Ok(parametrize_unchecked(ring, alpha, p))
}

fn parametrize_unchecked(ring: &GradedRing, alpha: &DegreeClass, p: &ParamPoint) -> MultiPoly {
    let basis = ring.basis(alpha);
    let terms = basis.monomials().iter().map(|m| {
        let c = m.0.iter().zip(&p.0).fold(Rational::one(), |acc, (&e, x)| acc * power(x, e));
        (m.clone(), c)
    });
    MultiPoly::from_terms(ring.fan(), Side::Dual, terms).expect("basis monomials")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCheck {
    pub holds: bool,
    /// `Σ c_i φ(p_i) - F`.
    pub residual: MultiPoly,
}

pub fn verify_decomposition(f: &ApolarForm, terms: &[(Rational, ParamPoint)]) -> Result<DecompositionCheck, SecantError> {
    let ring = f.ring();
    let mut acc = f.form().scale(&-Rational::one());
    for (i, (c, p)) in terms.iter().enumerate() {
        check_point(ring.fan(), p, i)?;
        let phi = parametrize_unchecked(ring, f.degree(), p);
        acc = acc.add(&phi.scale(c)).expect("same side");
    }
    Ok(DecompositionCheck { holds: acc.is_zero(), residual: acc })
}

/// One summand `coefficient · φ(point)` of a family; every entry is a
/// Laurent polynomial in the parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyTerm {
    pub coefficient: Terms,
    pub point: Vec<Terms>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentFamily {
    pub params: Vec<String>,
    pub terms: Vec<FamilyTerm>,
}

fn laurent_mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InvalidReason {
    /// The family does not reach `F` at parameter zero.
    DegreeZeroPartNonzero,
    /// Some residue term blows up as the parameters go to zero.
    NegativeExponentResidue,
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvalidReason::DegreeZeroPartNonzero => "DegreeZeroPartNonzero",
            InvalidReason::NegativeExponentResidue => "NegativeExponentResidue",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitCertificate {
    pub valid: bool,
    pub reason: Option<InvalidReason>,
    /// Keys are parameter exponents followed by dual exponents.
    pub residue: Terms,
    pub residue_text: String,
    /// `br(F) ≤ points` when valid.
    pub points: usize,
}

/// Expands `Σ c_i φ(p_i) - F` in the parameters. Valid when nothing is left
/// in parameter degree zero and no term has a negative exponent, so the
/// residue tends to zero with the parameters.
pub fn limit_certificate(f: &ApolarForm, fam: &LaurentFamily) -> Result<LimitCertificate, SecantError> {
    let ring = f.ring();
    let fan = ring.fan();
    let np = fam.params.len();
    let basis = ring.basis(f.degree());
    // dual monomial -> Laurent polynomial coefficient
    let mut total: BTreeMap<Monomial, Terms> = BTreeMap::new();
    for t in &fam.terms {
        if t.point.len() != fan.num_rays() {
            return Err(SecantError::WrongArity { expected: fan.num_rays(), found: t.point.len() });
        }
        for m in basis.monomials() {
            let mut c = t.coefficient.clone();
            for (&e, x) in m.0.iter().zip(&t.point) {
                for _ in 0..e {
                    c = laurent_mul(&c, x);
                }
            }
            let slot = total.entry(m.clone()).or_default();
            for (k, v) in c {
                *slot.entry(k).or_insert_with(Rational::zero) += v;
            }
        }
    }
    for (m, c) in f.form().terms() {
        let slot = total.entry(m.clone()).or_default();
        *slot.entry(vec![0; np]).or_insert_with(Rational::zero) -= c;
    }

    let mut residue = Terms::new();
    let mut ordered: Vec<(&Monomial, &Terms)> = total.iter().collect();
    ordered.sort_by(|a, b| display_order(a.0, b.0));
    let mut rendered: Vec<(Vec<i64>, Rational)> = Vec::new();
    for (m, poly) in ordered {
        let mut keys: Vec<(&Vec<i64>, &Rational)> = poly.iter().filter(|(_, c)| !c.is_zero()).collect();
        keys.sort_by(|a, b| b.0.cmp(a.0));
        for (pe, c) in keys {
            let mut key = pe.clone();
            key.extend(m.0.iter().map(|&e| e as i64));
            residue.insert(key.clone(), c.clone());
            rendered.push((key, c.clone()));
        }
    }
    let degree_zero = residue.keys().any(|k| k[..np].iter().all(|&e| e == 0));
    let negative = residue.keys().any(|k| k[..np].iter().any(|&e| e < 0));
    let reason = if degree_zero {
        Some(InvalidReason::DegreeZeroPartNonzero)
    } else if negative {
        Some(InvalidReason::NegativeExponentResidue)
    } else {
        None
    };
    let names: Vec<String> = fam.params.iter().chain(fan.dual_names()).cloned().collect();
    let residue_text = syntax::format_terms(rendered.iter().map(|(e, c)| (e.as_slice(), c)), &names);
    Ok(LimitCertificate { valid: reason.is_none(), reason, residue, residue_text, points: fam.terms.len() })
}

/// Which Cox coordinates are pinned to 1; the rest are chart parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chart {
    pub free: Vec<usize>,
}

impl Chart {
    /// Pins the complement of the first smooth maximal cone, or of the first
    /// cone when none is smooth.
    pub fn default_for(fan: &FanModel) -> Chart {
        let cone = fan
            .max_cones()
            .iter()
            .find(|c| fan.cone_is_smooth(c))
            .unwrap_or(&fan.max_cones()[0]);
        let mut free = cone.clone();
        free.sort_unstable();
        Chart { free }
    }

    pub fn pinning(fan: &FanModel, pinned: &[&str]) -> Result<Chart, SecantError> {
        let mut idx = Vec::new();
        for name in pinned {
            let i = fan
                .var_names()
                .iter()
                .chain(fan.dual_names())
                .position(|n| n == name)
                .ok_or_else(|| SecantError::BadChart(format!("unknown coordinate {name:?}")))?;
            idx.push(i % fan.num_rays());
        }
        Ok(Chart { free: (0..fan.num_rays()).filter(|i| !idx.contains(i)).collect() })
    }

    /// Monomials of `T_α` sorted by their exponents in the free parameters,
    /// last parameter most significant.
    pub fn column_order(&self, monomials: &[Monomial]) -> Vec<Monomial> {
        let key = |m: &Monomial| -> Vec<u32> { self.free.iter().rev().map(|&i| m.0[i]).collect() };
        let mut out = monomials.to_vec();
        out.sort_by(|a, b| key(a).cmp(&key(b)).then_with(|| a.cmp(b)));
        out
    }
}

/// Value row and derivative rows at one chart point, over Q.
fn tangent_rows(chart: &Chart, cols: &[Monomial], params: &[Rational]) -> Vec<Vec<Rational>> {
    let value = |m: &Monomial, drop: Option<usize>| -> Rational {
        let mut c = Rational::one();
        for (k, &i) in chart.free.iter().enumerate() {
            let mut e = m.0[i];
            if drop == Some(k) {
                if e == 0 {
                    return Rational::zero();
                }
                c *= linalg::rational(e as i64);
                e -= 1;
            }
            c *= power(&params[k], e);
        }
        c
    };
    let mut rows = vec![cols.iter().map(|m| value(m, None)).collect()];
    for k in 0..chart.free.len() {
        rows.push(cols.iter().map(|m| value(m, Some(k))).collect());
    }
    rows
}

/// Same rows over `Z/p`.
fn tangent_rows_modp(chart: &Chart, cols: &[Monomial], params: &[u64], p: u64) -> Vec<Vec<u64>> {
    let value = |m: &Monomial, drop: Option<usize>| -> u64 {
        let mut c = 1 % p;
        for (k, &i) in chart.free.iter().enumerate() {
            let mut e = m.0[i] as u64;
            if drop == Some(k) {
                if e == 0 {
                    return 0;
                }
                c = modp::mul(c, e % p, p);
                e -= 1;
            }
            c = modp::mul(c, modp::pow(params[k], e, p), p);
        }
        c
    };
    let mut rows = vec![cols.iter().map(|m| value(m, None)).collect()];
    for k in 0..chart.free.len() {
        rows.push(cols.iter().map(|m| value(m, Some(k))).collect());
    }
    rows
}

pub const DEFAULT_TRIALS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TerraciniReport {
    pub prime: u64,
    pub seed: u64,
    pub points: usize,
    pub chart: Chart,
    pub trial_ranks: Vec<usize>,
    /// Best rank over Z/p, a lower bound for the rank over Q.
    pub rank: usize,
    /// Lower bound for `dim σ_r`.
    pub dim_estimate: i64,
    /// `dim P(T_α) + 1`.
    pub ambient: usize,
    /// `min(dim P(T_α), r·(dim X + 1) - 1)`.
    pub expected_dim: i64,
    pub fills_space: bool,
}

/// Random torus points over `Z/p`; the stacked tangent matrix rank bounds
/// `dim σ_r + 1` from below.
pub fn terracini_probe(
    ring: &GradedRing,
    alpha: &DegreeClass,
    r: usize,
    prime: u64,
    seed: u64,
    trials: usize,
    chart: Option<Chart>,
) -> Result<TerraciniReport, SecantError> {
    if !modp::is_prime(prime) {
        return Err(SecantError::BadPrime(format!("{prime} is not prime")));
    }
    let fan = ring.fan();
    let chart = chart.unwrap_or_else(|| Chart::default_for(fan));
    let cols = chart.column_order(ring.basis(alpha).monomials());
    let np = chart.free.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trial_ranks = Vec::with_capacity(trials);
    let mut degenerate = 0;
    for _ in 0..trials {
        let pts: Vec<Vec<u64>> = (0..r).map(|_| (0..np).map(|_| rng.gen_range(1..prime)).collect()).collect();
        let mut distinct = pts.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() < pts.len() {
            degenerate += 1;
        }
        let rows: Vec<Vec<u64>> = pts.iter().flat_map(|t| tangent_rows_modp(&chart, &cols, t, prime)).collect();
        trial_ranks.push(if cols.is_empty() { 0 } else { modp::rank(&rows, prime) });
    }
    if trials > 0 && degenerate == trials {
        return Err(SecantError::DegenerateSample { trials });
    }
    let rank = trial_ranks.iter().copied().max().unwrap_or(0);
    let ambient = cols.len();
    let dim_x = fan.ambient_rank() as i64;
    Ok(TerraciniReport {
        prime,
        seed,
        points: r,
        chart,
        trial_ranks,
        rank,
        dim_estimate: rank as i64 - 1,
        ambient,
        expected_dim: (ambient as i64 - 1).min(r as i64 * (dim_x + 1) - 1),
        fills_space: rank == ambient && ambient > 0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FieldScalar {
    Rational(String),
    Modular { value: u64, prime: u64 },
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(s) => f.write_str(s),
            FieldScalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

/// The stacked tangent matrix of `r` chart points, parameters given point
/// by point.
pub fn terracini_matrix(
    ring: &GradedRing,
    alpha: &DegreeClass,
    r: usize,
    assignment: &[Rational],
    chart: Option<Chart>,
) -> Result<Vec<Vec<Rational>>, SecantError> {
    let chart = chart.unwrap_or_else(|| Chart::default_for(ring.fan()));
    let np = chart.free.len();
    if assignment.len() != r * np {
        return Err(SecantError::WrongArity { expected: r * np, found: assignment.len() });
    }
    let cols = chart.column_order(ring.basis(alpha).monomials());
    Ok(assignment.chunks(np.max(1)).take(r).flat_map(|t| tangent_rows(&chart, &cols, t)).collect())
}

/// Determinant of the stacked tangent matrix, over Q or over `Z/p`.
pub fn terracini_determinant_check(
    ring: &GradedRing,
    alpha: &DegreeClass,
    r: usize,
    assignment: &[Rational],
    prime: Option<u64>,
    chart: Option<Chart>,
) -> Result<FieldScalar, SecantError> {
    let m = terracini_matrix(ring, alpha, r, assignment, chart)?;
    let cols = ring.dim(alpha);
    if m.len() != cols {
        return Err(SecantError::NonSquare { rows: m.len(), cols });
    }
    match prime {
        None => Ok(FieldScalar::Rational(syntax::format_rational(&linalg::determinant_q(&m)))),
        Some(p) => {
            if !modp::is_prime(p) {
                return Err(SecantError::BadPrime(format!("{p} is not prime")));
            }
            let reduced: Option<Vec<Vec<u64>>> =
                m.iter().map(|row| row.iter().map(|x| modp::reduce(x, p)).collect()).collect();
            let reduced =
                reduced.ok_or_else(|| SecantError::BadPrime(format!("{p} divides a denominator of the assignment")))?;
            Ok(FieldScalar::Modular { value: modp::determinant(&reduced, p), prime: p })
        }
    }
}

/// Parses `coefficient | c1, c2, ...` lines; `#` starts a comment.
pub fn parse_terms_file(fan: &FanModel, text: &str) -> Result<Vec<(Rational, ParamPoint)>, crate::Error> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (c, pt) = line
            .split_once('|')
            .ok_or_else(|| crate::Error::Input(format!("line {}: expected `coefficient | point`", lineno + 1)))?;
        let scalar = |s: &str| -> Result<Rational, crate::Error> {
            let t = syntax::parse_terms(s, &[], false)?;
            Ok(t.get(&Vec::new()).cloned().unwrap_or_else(Rational::zero))
        };
        let coords = pt.split([',', ';']).map(scalar).collect::<Result<Vec<_>, _>>()?;
        if coords.len() != fan.num_rays() {
            return Err(crate::Error::Input(format!(
                "line {}: expected {} coordinates, found {}",
                lineno + 1,
                fan.num_rays(),
                coords.len()
            )));
        }
        out.push((scalar(c)?, ParamPoint(coords)));
    }
    Ok(out)
}

/// Parses a family: a `params: l, m` header, then `coefficient | point`
/// lines whose entries may use negative powers of the parameters.
pub fn parse_family_file(fan: &FanModel, text: &str) -> Result<LaurentFamily, crate::Error> {
    let mut params: Option<Vec<String>> = None;
    let mut terms = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |msg: String| crate::Error::Input(format!("line {}: {msg}", lineno + 1));
        if let Some(rest) = line.strip_prefix("params:") {
            if params.is_some() {
                return Err(at("duplicate params header".into()));
            }
            let p: Vec<String> = rest.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
            if let Some(bad) = p.iter().find(|n| fan.dual_names().contains(n)) {
                return Err(at(format!("parameter {bad:?} clashes with a coordinate name")));
            }
            params = Some(p);
            continue;
        }
        let names = params.as_ref().ok_or_else(|| at("missing `params:` header".into()))?;
        let (c, pt) = line.split_once('|').ok_or_else(|| at("expected `coefficient | point`".into()))?;
        let laurent = |s: &str| -> Result<Terms, crate::Error> { Ok(syntax::parse_terms(s, names, true)?) };
        let point = pt.split([',', ';']).map(laurent).collect::<Result<Vec<_>, _>>()?;
        if point.len() != fan.num_rays() {
            return Err(at(format!("expected {} coordinates, found {}", fan.num_rays(), point.len())));
        }
        terms.push(FamilyTerm { coefficient: laurent(c)?, point });
    }
    let params = params.ok_or_else(|| crate::Error::Input("missing `params:` header".into()))?;
    if terms.is_empty() {
        return Err(crate::Error::Input("family has no terms".into()));
    }
    Ok(LaurentFamily { params, terms })
}

/// Family from already-parsed entries, for callers that build it in code.
pub fn family(params: &[&str], terms: &[(&str, &[&str])]) -> Result<LaurentFamily, crate::Error> {
    let names: Vec<String> = params.iter().map(|s| s.to_string()).collect();
    let parse = |s: &str| -> Result<Terms, crate::Error> { Ok(syntax::parse_terms(s, &names, true)?) };
    let terms = terms
        .iter()
        .map(|(c, pt)| Ok(FamilyTerm { coefficient: parse(c)?, point: pt.iter().map(|s| parse(s)).collect::<Result<_, crate::Error>>()? }))
        .collect::<Result<Vec<_>, crate::Error>>()?;
    Ok(LaurentFamily { params: names, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::sync::Arc;

    fn ring(fan: FanModel) -> Arc<GradedRing> {
        Arc::new(GradedRing::new(Arc::new(fan)).unwrap())
    }

    #[test]
    fn parametrize_special_points() {
        let r = ring(fixtures::hirzebruch());
        let alpha = r.fan().parse_degree("3,2").unwrap();
        let phi = parametrize(&r, &alpha, &ParamPoint::from_ints(&[1, 0, 1, 0])).unwrap();
        assert_eq!(phi, r.parse(Side::Dual, "x0*y0^2").unwrap());
        let ones = parametrize(&r, &alpha, &ParamPoint::from_ints(&[1, 1, 1, 1])).unwrap();
        assert_eq!(ones.terms().len(), 9);
        assert!(ones.terms().values().all(|c| c.is_one()));
        assert!(matches!(
            parametrize(&r, &alpha, &ParamPoint::from_ints(&[0, 0, 1, 1])),
            Err(SecantError::PointInIrrelevantLocus { .. })
        ));
    }

    #[test]
    fn chart_columns_follow_parameters() {
        let r = ring(fixtures::hirzebruch());
        let alpha = r.fan().parse_degree("3,2").unwrap();
        let chart = Chart::default_for(r.fan());
        assert_eq!(chart.free, vec![1, 2]);
        let lm: Vec<(u32, u32)> =
            chart.column_order(r.basis(&alpha).monomials()).iter().map(|m| (m.0[1], m.0[2])).collect();
        assert_eq!(lm, vec![(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (1, 1), (2, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn torus_scaling() {
        let r = ring(fixtures::hirzebruch());
        let alpha = r.fan().parse_degree("3,2").unwrap();
        let p = ParamPoint::from_ints(&[2, -3, 5, 7]);
        let (t1, t2) = (linalg::rational(3), Rational::new(2.into(), 5.into()));
        let scaled: Vec<Rational> = r
            .fan()
            .var_degrees()
            .iter()
            .zip(&p.0)
            .map(|(d, x)| {
                let f = d.free_part();
                x * num_traits::pow(t1.clone(), f[0] as usize) * num_traits::pow(t2.clone(), f[1] as usize)
            })
            .collect();
        let a = parametrize(&r, &alpha, &p).unwrap();
        let b = parametrize(&r, &alpha, &ParamPoint(scaled)).unwrap();
        let k = num_traits::pow(t1, 3) * num_traits::pow(t2, 2);
        assert_eq!(a.scale(&k), b);
    }

    #[test]
    fn degenerate_and_bad_primes() {
        let r = ring(fixtures::hirzebruch());
        let alpha = r.fan().parse_degree("3,2").unwrap();
        assert!(matches!(terracini_probe(&r, &alpha, 3, 100, 1, 5, None), Err(SecantError::BadPrime(_))));
        assert!(matches!(terracini_probe(&r, &alpha, 2, 2, 1, 5, None), Err(SecantError::DegenerateSample { .. })));
        let one = terracini_probe(&r, &alpha, 1, 101, 7, 5, None).unwrap();
        assert_eq!(one.rank, 3);
    }

    #[test]
    fn family_file_round_trip() {
        let fan = fixtures::hirzebruch();
        let text = "params: l, m\n# comment\nl^-1*m^-1 | l, 1, 1, m\n-1/2 | 1; 0; 1; 0\n";
        let fam = parse_family_file(&fan, text).unwrap();
        assert_eq!(fam.terms.len(), 2);
        assert_eq!(fam.terms[0].coefficient[&vec![-1, -1]], linalg::rational(1));
        assert!(parse_family_file(&fan, "l | 1,1,1,1").is_err());
        assert!(parse_family_file(&fan, "params: l\n1 | 1,1,1").is_err());
    }
}
