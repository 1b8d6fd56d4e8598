//! Contraction, annihilators and Hilbert functions of apolar algebras.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::abelian::{DegreeClass, GradedGroup};
use crate::fan::FanModel;
use crate::ideals::IdealGens;
use crate::linalg::{self, Rational};
use crate::ring::{GradedRing, Monomial, MultiPoly, RingError, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApolarityError {
    #[error("ZeroForm: the form must be nonzero")]
    ZeroForm,
    #[error("NonHomogeneousForm: the form has terms of different degrees")]
    NonHomogeneousForm,
    #[error("WrongSide: {0}")]
    WrongSide(&'static str),
    #[error("NonHomogeneousGenerator: generator {index} is not homogeneous")]
    NonHomogeneousGenerator { index: usize },
}

impl ApolarityError {
    pub fn name(&self) -> &'static str {
        match self {
            ApolarityError::ZeroForm => "ZeroForm",
            ApolarityError::NonHomogeneousForm => "NonHomogeneousForm",
            ApolarityError::WrongSide(_) => "SideMismatch",
            ApolarityError::NonHomogeneousGenerator { .. } => "NonHomogeneousGenerator",
        }
    }
}

/// `g ⌟ F`: bilinear extension of `x^a ⌟ y^b = y^(b-a)` when `b ≥ a`, else 0.
pub fn contract(fan: &FanModel, g: &MultiPoly, f: &MultiPoly) -> Result<MultiPoly, RingError> {
    if g.side() != Side::Primal || f.side() != Side::Dual {
        return Err(RingError::SideMismatch("contraction takes an element of S and an element of T"));
    }
    let mut out: Vec<(Monomial, Rational)> = Vec::new();
    for (a, ca) in g.terms() {
        for (b, cb) in f.terms() {
            if let Some(d) = b.checked_div(a) {
                out.push((d, ca * cb));
            }
        }
    }
    MultiPoly::from_terms(fan, Side::Dual, out)
}

/// A nonzero homogeneous element of `T_α` together with its ring.
#[derive(Debug, Clone)]
pub struct ApolarForm {
    ring: Arc<GradedRing>,
    form: MultiPoly,
    degree: DegreeClass,
}

impl ApolarForm {
    pub fn new(ring: Arc<GradedRing>, form: MultiPoly) -> Result<Self, ApolarityError> {
        if form.side() != Side::Dual {
            return Err(ApolarityError::WrongSide("apolar forms live in T"));
        }
        if form.is_zero() {
            return Err(ApolarityError::ZeroForm);
        }
        let degree = form.degree().cloned().ok_or(ApolarityError::NonHomogeneousForm)?;
        Ok(ApolarForm { ring, form, degree })
    }

    pub fn parse(ring: Arc<GradedRing>, text: &str) -> Result<Self, crate::Error> {
        let form = ring.parse(Side::Dual, text)?;
        Ok(ApolarForm::new(ring, form)?)
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn fan(&self) -> &FanModel {
        self.ring.fan()
    }

    pub fn form(&self) -> &MultiPoly {
        &self.form
    }

    pub fn degree(&self) -> &DegreeClass {
        &self.degree
    }

    pub fn contract_by(&self, g: &MultiPoly) -> Result<MultiPoly, RingError> {
        contract(self.fan(), g, &self.form)
    }

    /// Matrix of `S_β → T_{α-β}`, `g ↦ g ⌟ F`, in the monomial bases of both
    /// pieces. Rows follow `S_β`, columns `T_{α-β}`.
    pub fn catalecticant_entries(&self, beta: &DegreeClass) -> Vec<Vec<Rational>> {
        let rows = self.ring.basis(beta);
        let Ok(gamma) = self.degree.try_sub(beta) else { return Vec::new() };
        let cols = self.ring.basis(&gamma);
        let mut m = vec![vec![Rational::zero(); cols.len()]; rows.len()];
        for (i, a) in rows.monomials().iter().enumerate() {
            for (b, c) in self.form.terms() {
                if let Some(d) = b.checked_div(a) {
                    let j = cols.index_of(&d).expect("quotient lies in the complementary degree");
                    m[i][j] = c.clone();
                }
            }
        }
        m
    }

    /// Basis of `(F^⊥)_β` as coefficient vectors over the monomial basis of `S_β`.
    pub fn annihilator_in_degree(&self, beta: &DegreeClass) -> Vec<Vec<Rational>> {
        let m = self.catalecticant_entries(beta);
        let nrows = self.ring.dim(beta);
        if m.is_empty() {
            return Vec::new();
        }
        let ncols = m[0].len();
        if ncols == 0 {
            return (0..nrows)
                .map(|i| (0..nrows).map(|j| if i == j { linalg::rational(1) } else { Rational::zero() }).collect())
                .collect();
        }
        linalg::left_kernel_q(&m, ncols)
    }

    /// `dim (A_F)_β`, the rank of the catalecticant in degree β.
    pub fn hilbert_value(&self, beta: &DegreeClass) -> usize {
        let m = self.catalecticant_entries(beta);
        let cols = m.first().map_or(0, Vec::len);
        linalg::rank_with_prescreen(&m, cols, Some(linalg::DEFAULT_PRIME))
    }

    pub fn hilbert_grid(&self, degrees: &DegreeBox) -> HilbertGrid {
        let values = degrees.iter().map(|b| {
            let v = self.hilbert_value(&b);
            (b, v)
        });
        HilbertGrid { values: values.collect() }
    }

    /// Compares `H(β)` with `H(α-β)` for every β in the box.
    pub fn check_symmetry(&self, degrees: &DegreeBox) -> SymmetryVerdict {
        let mut checked = 0;
        for beta in degrees.iter() {
            let dual = self.degree.try_sub(&beta).expect("same group");
            let (h, hd) = (self.hilbert_value(&beta), self.hilbert_value(&dual));
            checked += 1;
            if h != hd {
                return SymmetryVerdict { symmetric: false, checked, witness: Some((beta, h, hd)) };
            }
        }
        SymmetryVerdict { symmetric: true, checked, witness: None }
    }

    /// Whether every generator of `ideal` annihilates the form, which is
    /// equivalent to `ideal ⊆ F^⊥`.
    pub fn apolar_contains(&self, ideal: &IdealGens) -> Result<bool, ApolarityError> {
        if let Some(index) = ideal.first_inhomogeneous() {
            return Err(ApolarityError::NonHomogeneousGenerator { index });
        }
        Ok(ideal.generators().iter().all(|g| self.contract_by(g).map(|r| r.is_zero()).unwrap_or(false)))
    }
}

/// A finite box of degree classes: inclusive ranges on every free
/// coordinate and on every torsion residue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeBox {
    group: GradedGroup,
    free: Vec<(i64, i64)>,
    torsion: Vec<(i64, i64)>,
}

impl DegreeBox {
    /// Box over all torsion residues.
    pub fn new(group: &GradedGroup, free: Vec<(i64, i64)>) -> Self {
        let torsion = group.torsion_orders().iter().map(|&d| (0, d - 1)).collect();
        DegreeBox { group: group.clone(), free, torsion }
    }

    /// Parses `0..3,0..2` with an optional torsion part `;0..2`. A torsion
    /// part that is left out covers every residue.
    pub fn parse(group: &GradedGroup, text: &str) -> Result<Self, crate::Error> {
        let bad = |msg: &str| crate::Error::Input(format!("box {text:?}: {msg}"));
        let range = |s: &str| -> Result<(i64, i64), crate::Error> {
            let s = s.trim();
            let (lo, hi) = match s.split_once("..") {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (s, s),
            };
            let lo: i64 = lo.parse().map_err(|_| bad("expected lo..hi"))?;
            let hi: i64 = hi.parse().map_err(|_| bad("expected lo..hi"))?;
            if lo > hi {
                return Err(bad("empty range"));
            }
            Ok((lo, hi))
        };
        let list = |s: &str| -> Result<Vec<(i64, i64)>, crate::Error> {
            if s.trim().is_empty() {
                return Ok(Vec::new());
            }
            s.split(',').map(range).collect()
        };
        let (f, t) = match text.split_once(';') {
            Some((a, b)) => (a, Some(b)),
            None => (text, None),
        };
        let free = list(f)?;
        if free.len() != group.free_rank() {
            return Err(bad(&format!("expected {} free ranges", group.free_rank())));
        }
        let mut b = DegreeBox::new(group, free);
        if let Some(t) = t {
            let torsion = list(t)?;
            if torsion.len() != group.torsion_orders().len() {
                return Err(bad("torsion ranges do not match the class group"));
            }
            b.torsion = torsion;
        }
        Ok(b)
    }

    pub fn free_ranges(&self) -> &[(i64, i64)] {
        &self.free
    }

    /// Degrees in lexicographic order of (free, torsion) coordinates.
    pub fn iter(&self) -> impl Iterator<Item = DegreeClass> + '_ {
        let ranges: Vec<(i64, i64)> = self.free.iter().chain(&self.torsion).copied().collect();
        let total: usize = ranges.iter().map(|(a, b)| (b - a + 1) as usize).product();
        let l = self.free.len();
        (0..total).map(move |mut idx| {
            let mut coords = vec![0i64; ranges.len()];
            for (k, (lo, hi)) in ranges.iter().enumerate().rev() {
                let w = (hi - lo + 1) as usize;
                coords[k] = lo + (idx % w) as i64;
                idx /= w;
            }
            let torsion = coords.split_off(l);
            self.group.element(coords, torsion).expect("box coordinates fit the group")
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertGrid {
    pub values: BTreeMap<DegreeClass, usize>,
}

impl HilbertGrid {
    pub fn get(&self, d: &DegreeClass) -> Option<usize> {
        self.values.get(d).copied()
    }

    /// Rows of a two-coordinate free grid: one row per value of the second
    /// coordinate, first coordinate increasing. Torsion must be trivial.
    pub fn rows_2d(&self, degrees: &DegreeBox) -> Vec<Vec<usize>> {
        let r = degrees.free_ranges();
        assert_eq!(r.len(), 2, "two free coordinates expected");
        (r[1].0..=r[1].1)
            .map(|j| {
                (r[0].0..=r[0].1)
                    .map(|i| {
                        self.values
                            .iter()
                            .find(|(d, _)| d.free_part() == [i, j] && d.torsion_part().iter().all(|&t| t == 0))
                            .map_or(0, |(_, &v)| v)
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryVerdict {
    pub symmetric: bool,
    pub checked: usize,
    /// First degree where `H(β) ≠ H(α-β)`, with both values.
    pub witness: Option<(DegreeClass, usize, usize)>,
}
