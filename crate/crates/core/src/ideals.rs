//! Graded pieces of homogeneous ideals, colons against the irrelevant ideal,
//! and lengths of zero-dimensional schemes from Hilbert functions.

use serde::Serialize;
use thiserror::Error;

use crate::abelian::DegreeClass;
use crate::apolarity::ApolarForm;
use crate::fan::IrrelevantIdeal;
use crate::linalg::{self, Rational, SparseEchelon, SparseVec};
use crate::ring::{Basis, GradedRing, Monomial, MultiPoly, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("NonHomogeneousGenerator: generator {index} is not homogeneous")]
    NonHomogeneousGenerator { index: usize },
    #[error("NotCartier: {0} is not a Cartier class")]
    NotCartier(DegreeClass),
    #[error("BadWindow: window {window} must be between 1 and max_k {max_k}")]
    BadWindow { window: usize, max_k: usize },
    #[error("ContainmentFailed: generator {index} does not annihilate the form")]
    ContainmentFailed { index: usize },
}

impl IdealError {
    pub fn name(&self) -> &'static str {
        match self {
            IdealError::NonHomogeneousGenerator { .. } => "NonHomogeneousGenerator",
            IdealError::NotCartier(_) => "NotCartier",
            IdealError::BadWindow { .. } => "BadWindow",
            IdealError::ContainmentFailed { .. } => "ContainmentFailed",
        }
    }
}

/// Generators of an ideal of `S`. Zero generators are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealGens {
    generators: Vec<MultiPoly>,
}

impl IdealGens {
    pub fn new(generators: Vec<MultiPoly>) -> Result<Self, crate::Error> {
        if generators.iter().any(|g| g.side() != Side::Primal) {
            return Err(crate::Error::Input("ideal generators must be elements of S".into()));
        }
        Ok(IdealGens { generators: generators.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn parse<S: AsRef<str>>(ring: &GradedRing, gens: &[S]) -> Result<Self, crate::Error> {
        let polys = gens.iter().map(|g| ring.parse(Side::Primal, g.as_ref())).collect::<Result<Vec<_>, _>>()?;
        IdealGens::new(polys)
    }

    /// Splits a comma-separated generator list.
    pub fn parse_list(ring: &GradedRing, text: &str) -> Result<Self, crate::Error> {
        let parts: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        if parts.is_empty() {
            return Err(crate::Error::Input("empty generator list".into()));
        }
        IdealGens::parse(ring, &parts)
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn first_inhomogeneous(&self) -> Option<usize> {
        self.generators.iter().position(|g| !g.is_homogeneous())
    }

    fn check(&self) -> Result<(), IdealError> {
        match self.first_inhomogeneous() {
            Some(index) => Err(IdealError::NonHomogeneousGenerator { index }),
            None => Ok(()),
        }
    }
}

fn product_coords(basis: &Basis, m: &Monomial, g: &MultiPoly) -> SparseVec {
    g.terms()
        .iter()
        .map(|(t, c)| (basis.index_of(&m.mul(t)).expect("product has the target degree"), c.clone()))
        .collect()
}

/// Echelon basis of `I_δ` in the monomial coordinates of `S_δ`.
pub fn ideal_echelon(ring: &GradedRing, ideal: &IdealGens, delta: &DegreeClass) -> Result<SparseEchelon, IdealError> {
    ideal.check()?;
    let target = ring.basis(delta);
    let mut ech = SparseEchelon::new();
    if target.is_empty() {
        return Ok(ech);
    }
    for g in ideal.generators() {
        let Ok(rest) = delta.try_sub(g.degree().expect("checked")) else { continue };
        for m in ring.basis(&rest).monomials() {
            ech.insert(product_coords(&target, m, g));
            if ech.dim() == target.len() {
                return Ok(ech);
            }
        }
    }
    Ok(ech)
}

/// Basis of `I_δ` as coefficient vectors over the monomial basis of `S_δ`.
pub fn ideal_piece(ring: &GradedRing, ideal: &IdealGens, delta: &DegreeClass) -> Result<Vec<Vec<Rational>>, IdealError> {
    let n = ring.dim(delta);
    Ok(ideal_echelon(ring, ideal, delta)?.basis().iter().map(|v| linalg::sparse_to_dense(v, n)).collect())
}

/// Basis of `(I : B)_δ`: elements `x` of `S_δ` with `x·b ∈ I` for every
/// monomial generator `b` of `B`.
pub fn colon_piece(
    ring: &GradedRing,
    ideal: &IdealGens,
    irrelevant: &IrrelevantIdeal,
    delta: &DegreeClass,
) -> Result<Vec<Vec<Rational>>, IdealError> {
    ideal.check()?;
    let fan = ring.fan();
    let source = ring.basis(delta);
    let mut rows: Vec<Vec<Rational>> = vec![Vec::new(); source.len()];
    for b in &irrelevant.generators {
        let bmon = Monomial(b.clone());
        let target_deg = delta.try_add(&fan.degree_of(b)).expect("same group");
        let target = ring.basis(&target_deg);
        let ech = ideal_echelon(ring, ideal, &target_deg)?;
        for (i, m) in source.monomials().iter().enumerate() {
            let mut v = SparseVec::new();
            v.insert(target.index_of(&m.mul(&bmon)).expect("product has the target degree"), linalg::rational(1));
            let residual = linalg::sparse_to_dense(&ech.reduce(v), target.len());
            rows[i].extend(residual);
        }
    }
    let cols = rows.first().map_or(0, Vec::len);
    if cols == 0 {
        return Ok((0..source.len())
            .map(|i| (0..source.len()).map(|j| linalg::rational(i64::from(i == j))).collect())
            .collect());
    }
    Ok(linalg::left_kernel_q(&rows, cols))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaturationGap {
    pub degree: DegreeClass,
    pub ideal_dim: usize,
    pub colon_dim: usize,
    pub gap: usize,
    /// Agreement with the saturation is only expected in Cartier degrees.
    pub cartier: bool,
}

pub fn saturation_gap(
    ring: &GradedRing,
    ideal: &IdealGens,
    irrelevant: &IrrelevantIdeal,
    delta: &DegreeClass,
) -> Result<SaturationGap, IdealError> {
    let ideal_dim = ideal_echelon(ring, ideal, delta)?.dim();
    let colon_dim = colon_piece(ring, ideal, irrelevant, delta)?.len();
    Ok(SaturationGap {
        degree: delta.clone(),
        ideal_dim,
        colon_dim,
        gap: colon_dim - ideal_dim,
        cartier: ring.fan().is_cartier(delta),
    })
}

pub const DEFAULT_WINDOW: usize = 3;
pub const DEFAULT_MAX_K: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthEstimate {
    pub value: usize,
    pub stabilized: bool,
    pub window: usize,
    /// `(k, dim (S/I)_{k·α0})` for `k = 1..=max_k`.
    pub samples: Vec<(usize, usize)>,
}

/// `dim (S/I)_{k·α0}` for `k = 1..=max_k`; stabilized when the last `window`
/// values agree. Meaningful when `I` cuts out a zero-dimensional scheme and
/// is saturated in high degrees.
pub fn length_estimate(
    ring: &GradedRing,
    ideal: &IdealGens,
    ample: &DegreeClass,
    window: usize,
    max_k: usize,
) -> Result<LengthEstimate, IdealError> {
    ideal.check()?;
    if window == 0 || window > max_k {
        return Err(IdealError::BadWindow { window, max_k });
    }
    if !ring.fan().is_cartier(ample) {
        return Err(IdealError::NotCartier(ample.clone()));
    }
    let mut samples = Vec::with_capacity(max_k);
    for k in 1..=max_k {
        let d = ample.scale(k as i64);
        let quotient = ring.dim(&d) - ideal_echelon(ring, ideal, &d)?.dim();
        samples.push((k, quotient));
    }
    let tail = &samples[max_k - window..];
    let value = samples[max_k - 1].1;
    let stabilized = tail.iter().all(|&(_, v)| v == value);
    Ok(LengthEstimate { value, stabilized, window, samples })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CactusCertificate {
    pub length: LengthEstimate,
    /// `cr(F) ≤ value`, present when the length estimate stabilized.
    pub cactus_bound: Option<usize>,
    /// `r(F) ≤ value`, present when the scheme is also asserted reduced.
    pub rank_bound: Option<usize>,
    pub reduced_asserted: bool,
}

/// Checks `I ⊆ F^⊥` generator by generator, then estimates the length of
/// the scheme cut out by `I`.
pub fn cactus_certificate(
    form: &ApolarForm,
    ideal: &IdealGens,
    ample: &DegreeClass,
    window: usize,
    max_k: usize,
    reduced: bool,
) -> Result<CactusCertificate, IdealError> {
    ideal.check()?;
    for (index, g) in ideal.generators().iter().enumerate() {
        if !form.contract_by(g).expect("S acts on T").is_zero() {
            return Err(IdealError::ContainmentFailed { index });
        }
    }
    let length = length_estimate(form.ring(), ideal, ample, window, max_k)?;
    let bound = length.stabilized.then_some(length.value);
    Ok(CactusCertificate { cactus_bound: bound, rank_bound: bound.filter(|_| reduced), reduced_asserted: reduced, length })
}
