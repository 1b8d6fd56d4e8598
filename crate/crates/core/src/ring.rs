//! The Cox ring `S` and its dual module `T`.
//!
//! Both sides use the same sparse representation; the [`Side`] tag keeps
//! primal polynomials (which multiply) apart from dual forms (which are only
//! contracted against).

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::abelian::{DegreeClass, GroupError};
use crate::fan::FanModel;
use crate::linalg::Rational;
use crate::syntax::{self, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("SideMismatch: {0}")]
    SideMismatch(&'static str),
    #[error("NoCertificate: no positive weight with coordinates in [-{bound}, {bound}]")]
    NoCertificate { bound: i64 },
    #[error("InvalidCertificate: weight {0:?} does not make every variable degree positive")]
    InvalidCertificate(Vec<i64>),
    #[error("VariableCount: expected {expected} exponents, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl RingError {
    pub fn name(&self) -> &'static str {
        match self {
            RingError::SideMismatch(_) => "SideMismatch",
            RingError::NoCertificate { .. } => "NoCertificate",
            RingError::InvalidCertificate(_) => "InvalidCertificate",
            RingError::VariableCount { .. } => "VariableCount",
            RingError::Parse(_) => "ParseError",
            RingError::Group(g) => g.name(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    /// The Cox ring `S`.
    Primal,
    /// The dual module `T`.
    Dual,
}

/// Exponent vector, one entry per ray.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Monomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

/// Graded-lex order for display: larger total degree first, then lex descending.
pub fn display_order(a: &Monomial, b: &Monomial) -> Ordering {
    b.total_degree().cmp(&a.total_degree()).then_with(|| b.0.cmp(&a.0))
}

/// Sparse polynomial in `S` or `T` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    side: Side,
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
    degree: Option<DegreeClass>,
}

impl MultiPoly {
    pub fn zero(side: Side, nvars: usize) -> Self {
        MultiPoly { side, nvars, terms: BTreeMap::new(), degree: None }
    }

    /// Builds a polynomial and tags it with its degree when homogeneous.
    pub fn from_terms(
        fan: &FanModel,
        side: Side,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self, RingError> {
        let nvars = fan.num_rays();
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            if m.0.len() != nvars {
                return Err(RingError::VariableCount { expected: nvars, found: m.0.len() });
            }
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut p = MultiPoly { side, nvars, terms: map, degree: None };
        p.degree = p.compute_degree(fan);
        Ok(p)
    }

    pub fn monomial(fan: &FanModel, side: Side, exps: Vec<u32>) -> Result<Self, RingError> {
        Self::from_terms(fan, side, [(Monomial(exps), Rational::one())])
    }

    pub fn constant(fan: &FanModel, side: Side, c: Rational) -> Self {
        Self::from_terms(fan, side, [(Monomial::one(fan.num_rays()), c)]).expect("constant")
    }

    fn compute_degree(&self, fan: &FanModel) -> Option<DegreeClass> {
        let mut it = self.terms.keys().map(|m| fan.degree_of(&m.0));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn degree(&self) -> Option<&DegreeClass> {
        self.degree.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree.is_some()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly, RingError> {
        if self.side != other.side {
            return Err(RingError::SideMismatch("cannot add elements of S and T"));
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(m.clone()).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        let degree = if terms.is_empty() {
            None
        } else if self.is_zero() {
            other.degree.clone()
        } else if other.is_zero() || self.degree == other.degree {
            self.degree.clone()
        } else {
            None
        };
        Ok(MultiPoly { side: self.side, nvars: self.nvars, terms, degree })
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly, RingError> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero(self.side, self.nvars);
        }
        MultiPoly {
            side: self.side,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
            degree: self.degree.clone(),
        }
    }

    /// Ring multiplication in `S`. `T` is only a module, so dual operands are refused.
    pub fn multiply(&self, other: &MultiPoly) -> Result<MultiPoly, RingError> {
        if self.side != Side::Primal || other.side != Side::Primal {
            return Err(RingError::SideMismatch("multiplication is only defined in S"));
        }
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *terms.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        let degree = match (&self.degree, &other.degree) {
            (Some(a), Some(b)) if !terms.is_empty() => Some(a.try_add(b)?),
            _ => None,
        };
        Ok(MultiPoly { side: Side::Primal, nvars: self.nvars, terms, degree })
    }

    pub fn parse(fan: &FanModel, side: Side, text: &str) -> Result<MultiPoly, RingError> {
        let names = match side {
            Side::Primal => fan.var_names(),
            Side::Dual => fan.dual_names(),
        };
        let parsed = syntax::parse_terms(text, names, false)?;
        let terms = parsed.into_iter().map(|(e, c)| (Monomial(e.into_iter().map(|v| v as u32).collect()), c));
        MultiPoly::from_terms(fan, side, terms)
    }

    /// Canonical text form; `parse` inverts it.
    pub fn to_text(&self, fan: &FanModel) -> String {
        let names = match self.side {
            Side::Primal => fan.var_names(),
            Side::Dual => fan.dual_names(),
        };
        let mut ordered: Vec<(Vec<i64>, &Rational)> =
            self.terms.iter().map(|(m, c)| (m.0.iter().map(|&e| e as i64).collect(), c)).collect();
        ordered.sort_by(|a, b| {
            let ma = Monomial(a.0.iter().map(|&e| e as u32).collect());
            let mb = Monomial(b.0.iter().map(|&e| e as u32).collect());
            display_order(&ma, &mb)
        });
        syntax::format_terms(ordered.iter().map(|(e, c)| (e.as_slice(), *c)), names)
    }

    /// Coefficient vector over an ordered monomial basis. Terms outside the
    /// basis are reported as `None`.
    pub fn coordinates(&self, basis: &Basis) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); basis.len()];
        for (m, c) in &self.terms {
            v[basis.index_of(m)?] = c.clone();
        }
        Some(v)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars)
            .map(|i| match self.side {
                Side::Primal => format!("s{i}"),
                Side::Dual => format!("t{i}"),
            })
            .collect();
        let terms: Vec<(Vec<i64>, &Rational)> =
            self.terms.iter().rev().map(|(m, c)| (m.0.iter().map(|&e| e as i64).collect(), c)).collect();
        f.write_str(&syntax::format_terms(terms.iter().map(|(e, c)| (e.as_slice(), *c)), &names))
    }
}

/// Weight `w` with `w · free(deg x_i) ≥ 1` for every variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PositivityCertificate {
    pub weight: Vec<i64>,
}

impl PositivityCertificate {
    pub fn grade(&self, d: &DegreeClass) -> i64 {
        self.weight.iter().zip(d.free_part()).map(|(a, b)| a * b).sum()
    }

    pub fn validate(&self, fan: &FanModel) -> Result<(), RingError> {
        let ok = self.weight.len() == fan.class_group().free_rank()
            && fan.var_degrees().iter().all(|d| self.grade(d) >= 1);
        if ok {
            Ok(())
        } else {
            Err(RingError::InvalidCertificate(self.weight.clone()))
        }
    }
}

pub const DEFAULT_CERTIFICATE_BOUND: i64 = 16;

/// Searches weights by increasing max-norm, lexicographically within a norm.
pub fn find_certificate(fan: &FanModel, bound: i64) -> Result<PositivityCertificate, RingError> {
    let l = fan.class_group().free_rank();
    if l == 0 {
        return Err(RingError::NoCertificate { bound });
    }
    for norm in 1..=bound {
        let mut w = vec![-norm; l];
        loop {
            if w.iter().any(|v| v.abs() == norm) {
                let cert = PositivityCertificate { weight: w.clone() };
                if cert.validate(fan).is_ok() {
                    return Ok(cert);
                }
            }
            // odometer over [-norm, norm]^l
            let mut i = l;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if w[i] < norm {
                    w[i] += 1;
                    for v in w.iter_mut().skip(i + 1) {
                        *v = -norm;
                    }
                    break;
                }
                if i == 0 {
                    w[0] = norm + 1;
                }
            }
            if w[0] > norm {
                break;
            }
        }
    }
    Err(RingError::NoCertificate { bound })
}

/// Ordered monomial basis of one graded piece.
#[derive(Debug, Clone)]
pub struct Basis {
    degree: DegreeClass,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    fn new(degree: DegreeClass, monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Basis { degree, monomials, index }
    }

    pub fn degree(&self) -> &DegreeClass {
        &self.degree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// All monomials of degree `alpha`, graded-lex descending.
///
/// Exponents are bounded by `grade(alpha) / grade(deg x_i)` and filtered by
/// exact degree equality, torsion included.
pub fn monomial_basis(fan: &FanModel, cert: &PositivityCertificate, alpha: &DegreeClass) -> Vec<Monomial> {
    let total = cert.grade(alpha);
    if total < 0 || !fan.class_group().contains(alpha) {
        return Vec::new();
    }
    let weights: Vec<i64> = fan.var_degrees().iter().map(|d| cert.grade(d)).collect();
    let r = weights.len();
    let mut out = Vec::new();
    let mut current = vec![0u32; r];

    fn rec(
        i: usize,
        remaining: i64,
        weights: &[i64],
        current: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
        fan: &FanModel,
        alpha: &DegreeClass,
    ) {
        if i == weights.len() {
            if remaining == 0 && fan.degree_of(current) == *alpha {
                out.push(Monomial(current.clone()));
            }
            return;
        }
        // Descending exponents produce lex-descending output directly.
        let max = remaining / weights[i];
        for e in (0..=max).rev() {
            current[i] = e as u32;
            rec(i + 1, remaining - e * weights[i], weights, current, out, fan, alpha);
        }
        current[i] = 0;
    }

    rec(0, total, &weights, &mut current, &mut out, fan, alpha);
    out
}

/// A fan together with a positivity certificate and a cache of graded pieces.
#[derive(Debug)]
pub struct GradedRing {
    fan: Arc<FanModel>,
    cert: PositivityCertificate,
    cache: RwLock<HashMap<DegreeClass, Arc<Basis>>>,
}

impl GradedRing {
    pub fn new(fan: Arc<FanModel>) -> Result<Self, RingError> {
        let cert = find_certificate(&fan, DEFAULT_CERTIFICATE_BOUND)?;
        Ok(Self::with_certificate_unchecked(fan, cert))
    }

    pub fn with_certificate(fan: Arc<FanModel>, cert: PositivityCertificate) -> Result<Self, RingError> {
        cert.validate(&fan)?;
        Ok(Self::with_certificate_unchecked(fan, cert))
    }

    fn with_certificate_unchecked(fan: Arc<FanModel>, cert: PositivityCertificate) -> Self {
        GradedRing { fan, cert, cache: RwLock::new(HashMap::new()) }
    }

    pub fn fan(&self) -> &FanModel {
        &self.fan
    }

    pub fn fan_arc(&self) -> Arc<FanModel> {
        Arc::clone(&self.fan)
    }

    pub fn certificate(&self) -> &PositivityCertificate {
        &self.cert
    }

    pub fn basis(&self, alpha: &DegreeClass) -> Arc<Basis> {
        if let Some(b) = self.cache.read().expect("basis cache").get(alpha) {
            return Arc::clone(b);
        }
        let b = Arc::new(Basis::new(alpha.clone(), monomial_basis(&self.fan, &self.cert, alpha)));
        self.cache.write().expect("basis cache").insert(alpha.clone(), Arc::clone(&b));
        b
    }

    pub fn dim(&self, alpha: &DegreeClass) -> usize {
        self.basis(alpha).len()
    }

    pub fn parse(&self, side: Side, text: &str) -> Result<MultiPoly, RingError> {
        MultiPoly::parse(&self.fan, side, text)
    }

    /// Graded-lex comparison of degree classes: certificate grade, then coordinates.
    pub fn degree_order(&self, a: &DegreeClass, b: &DegreeClass) -> Ordering {
        self.cert.grade(a).cmp(&self.cert.grade(b)).then_with(|| a.cmp(b))
    }

    /// Polynomial from a coefficient vector over the basis of `alpha`.
    pub fn from_coordinates(&self, side: Side, alpha: &DegreeClass, coords: &[Rational]) -> MultiPoly {
        let basis = self.basis(alpha);
        let terms = basis
            .monomials()
            .iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), c.clone()));
        MultiPoly::from_terms(&self.fan, side, terms).expect("basis monomials have the right arity")
    }
}
