//! Simplicial fans, their class groups and Cartier classes.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{self, DegreeClass, GradedGroup, GroupError, IntMatrix, Projection};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("EmptyFan: at least one ray is required")]
    EmptyFan,
    #[error("BadRay: ray {index} has {found} coordinates, expected {expected}")]
    BadRay { index: usize, found: usize, expected: usize },
    #[error("NonPrimitiveRay: ray {index} {ray:?} is not primitive")]
    NonPrimitiveRay { index: usize, ray: Vec<i64> },
    #[error("BadCone: cone {cone} refers to missing or repeated ray indices")]
    BadCone { cone: usize },
    #[error("NonSimplicialCone: the rays of cone {cone} are linearly dependent")]
    NonSimplicialCone { cone: usize },
    #[error("TorusFactor: rays span a sublattice of rank {rank} < {ambient}")]
    TorusFactor { rank: usize, ambient: usize },
    #[error("BadNames: {0}")]
    BadNames(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl FanError {
    pub fn name(&self) -> &'static str {
        match self {
            FanError::EmptyFan => "EmptyFan",
            FanError::BadRay { .. } => "BadRay",
            FanError::NonPrimitiveRay { .. } => "NonPrimitiveRay",
            FanError::BadCone { .. } => "BadCone",
            FanError::NonSimplicialCone { .. } => "NonSimplicialCone",
            FanError::TorusFactor { .. } => "TorusFactor",
            FanError::BadNames(_) => "BadNames",
            FanError::Group(g) => g.name(),
        }
    }
}

/// On-disk fan description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanSpec {
    pub ambient_rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub var_names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub assert_complete: bool,
}

impl FanSpec {
    pub fn from_toml(text: &str) -> Result<FanSpec, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("fan spec serializes")
    }
}

/// Square-free monomial generators `x^σ̂`, one per maximal cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrrelevantIdeal {
    pub generators: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Completeness {
    Complete,
    NotComplete,
    CompleteLikely,
    Unverified,
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Completeness::Complete => "Complete",
            Completeness::NotComplete => "NotComplete",
            Completeness::CompleteLikely => "CompleteLikely",
            Completeness::Unverified => "Unverified",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct FanModel {
    ambient_rank: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
    class_group: GradedGroup,
    projection: Projection,
    var_degrees: Vec<DegreeClass>,
    var_names: Vec<String>,
    dual_names: Vec<String>,
    assert_complete: bool,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FanModel {
    pub fn build(rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<FanModel, FanError> {
        let n = rays.first().map(Vec::len).ok_or(FanError::EmptyFan)?;
        FanModel::from_spec(&FanSpec {
            ambient_rank: n,
            rays,
            max_cones,
            var_names: None,
            dual_names: None,
            assert_complete: false,
        })
    }

    pub fn from_spec(spec: &FanSpec) -> Result<FanModel, FanError> {
        let n = spec.ambient_rank;
        let rays = spec.rays.clone();
        if rays.is_empty() {
            return Err(FanError::EmptyFan);
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != n {
                return Err(FanError::BadRay { index: i, found: r.len(), expected: n });
            }
            let g = r.iter().fold(0i64, |acc, &v| acc.gcd(&v));
            if g != 1 {
                return Err(FanError::NonPrimitiveRay { index: i, ray: r.clone() });
            }
        }
        let mut cones = Vec::with_capacity(spec.max_cones.len());
        for (ci, cone) in spec.max_cones.iter().enumerate() {
            let mut sorted = cone.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != cone.len() || cone.iter().any(|&i| i >= rays.len()) || cone.is_empty() {
                return Err(FanError::BadCone { cone: ci });
            }
            let m = IntMatrix::from_rows(&cone.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>());
            if abelian::smith_normal_form(&m).rank() < cone.len() {
                return Err(FanError::NonSimplicialCone { cone: ci });
            }
            cones.push(cone.clone());
        }

        let relation = IntMatrix::from_rows(&rays);
        let (group, raw) = abelian::cokernel(&relation).map_err(|e| match e {
            GroupError::NotFullRank { rank, .. } => FanError::TorusFactor { rank, ambient: n },
            other => FanError::Group(other),
        })?;
        let projection = raw.with_generator_basis();
        let var_degrees = (0..rays.len()).map(|i| projection.project_unit(i)).collect();

        let r = rays.len();
        let var_names = match &spec.var_names {
            Some(v) => v.clone(),
            None => (0..r).map(|i| format!("a{i}")).collect(),
        };
        let dual_names = match &spec.dual_names {
            Some(v) => v.clone(),
            None => (0..r).map(|i| format!("x{i}")).collect(),
        };
        for names in [&var_names, &dual_names] {
            if names.len() != r {
                return Err(FanError::BadNames(format!("expected {r} names, got {}", names.len())));
            }
            if let Some(bad) = names.iter().find(|s| !valid_identifier(s)) {
                return Err(FanError::BadNames(format!("invalid identifier {bad:?}")));
            }
            let mut s = names.clone();
            s.sort();
            s.dedup();
            if s.len() != r {
                return Err(FanError::BadNames("duplicate variable name".into()));
            }
        }

        Ok(FanModel {
            ambient_rank: n,
            rays,
            max_cones: cones,
            class_group: group,
            projection,
            var_degrees,
            var_names,
            dual_names,
            assert_complete: spec.assert_complete,
        })
    }

    pub fn from_toml(text: &str) -> Result<FanModel, crate::Error> {
        let spec = FanSpec::from_toml(text).map_err(|e| crate::Error::Input(e.to_string()))?;
        Ok(FanModel::from_spec(&spec)?)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn class_group(&self) -> &GradedGroup {
        &self.class_group
    }

    pub fn projection(&self) -> &Projection {
        &self.projection
    }

    pub fn var_degrees(&self) -> &[DegreeClass] {
        &self.var_degrees
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn dual_names(&self) -> &[String] {
        &self.dual_names
    }

    pub fn assert_complete(&self) -> bool {
        self.assert_complete
    }

    /// Degree of the monomial with the given exponent vector.
    pub fn degree_of(&self, exponents: &[u32]) -> DegreeClass {
        let x: Vec<i64> = exponents.iter().map(|&e| e as i64).collect();
        self.projection.project(&x)
    }

    pub fn irrelevant_ideal(&self) -> IrrelevantIdeal {
        let r = self.rays.len();
        let generators = self
            .max_cones
            .iter()
            .map(|cone| (0..r).map(|i| u32::from(!cone.contains(&i))).collect())
            .collect();
        IrrelevantIdeal { generators }
    }

    /// Whether a maximal cone's rays extend to a lattice basis.
    pub fn cone_is_smooth(&self, cone: &[usize]) -> bool {
        let m = IntMatrix::from_rows(&cone.iter().map(|&i| self.rays[i].clone()).collect::<Vec<_>>());
        let s = abelian::smith_normal_form(&m);
        s.rank() == cone.len() && s.diag.iter().take(cone.len()).all(|d| *d == BigInt::from(1))
    }

    pub fn is_smooth(&self) -> bool {
        self.max_cones.iter().all(|c| self.cone_is_smooth(c))
    }

    pub fn check_complete(&self) -> Completeness {
        match self.ambient_rank {
            0 => Completeness::Complete,
            1 => {
                let pos = self.max_cones.iter().any(|c| c.iter().any(|&i| self.rays[i][0] > 0));
                let neg = self.max_cones.iter().any(|c| c.iter().any(|&i| self.rays[i][0] < 0));
                if pos && neg {
                    Completeness::Complete
                } else {
                    Completeness::NotComplete
                }
            }
            2 => self.check_complete_plane(),
            n => {
                if self.max_cones.iter().any(|c| c.len() != n) {
                    return Completeness::Unverified;
                }
                let mut faces: std::collections::BTreeMap<Vec<usize>, usize> = Default::default();
                for cone in &self.max_cones {
                    for skip in 0..n {
                        let mut face: Vec<usize> =
                            cone.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &i)| i).collect();
                        face.sort_unstable();
                        *faces.entry(face).or_default() += 1;
                    }
                }
                if faces.values().all(|&c| c == 2) {
                    Completeness::CompleteLikely
                } else {
                    Completeness::Unverified
                }
            }
        }
    }

    fn check_complete_plane(&self) -> Completeness {
        if self.max_cones.iter().any(|c| c.len() != 2) || self.rays.len() < 3 {
            return Completeness::NotComplete;
        }
        let mut order: Vec<usize> = (0..self.rays.len()).collect();
        order.sort_by(|&a, &b| angular_cmp(&self.rays[a], &self.rays[b]));
        let k = order.len();
        let mut expected: Vec<(usize, usize)> = Vec::with_capacity(k);
        for i in 0..k {
            let (a, b) = (order[i], order[(i + 1) % k]);
            let (u, v) = (&self.rays[a], &self.rays[b]);
            // Consecutive rays must turn strictly counter-clockwise by less than π.
            if u[0] * v[1] - u[1] * v[0] <= 0 {
                return Completeness::NotComplete;
            }
            expected.push((a.min(b), a.max(b)));
        }
        let mut got: Vec<(usize, usize)> =
            self.max_cones.iter().map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
        expected.sort_unstable();
        got.sort_unstable();
        if expected == got {
            Completeness::Complete
        } else {
            Completeness::NotComplete
        }
    }

    pub fn weil_representative(&self, class: &DegreeClass) -> Vec<i64> {
        self.projection.lift(class)
    }

    /// Whether `class` is Cartier: on every maximal cone σ the system
    /// `⟨m_σ, u_ρ⟩ = -a_ρ` (ρ ∈ σ) has an integral solution.
    pub fn is_cartier(&self, class: &DegreeClass) -> bool {
        let a = self.weil_representative(class);
        self.is_cartier_representative(&a)
    }

    pub fn is_cartier_representative(&self, a: &[i64]) -> bool {
        self.max_cones.iter().all(|cone| {
            let m = IntMatrix::from_rows(&cone.iter().map(|&i| self.rays[i].clone()).collect::<Vec<_>>());
            let rhs: Vec<BigInt> = cone.iter().map(|&i| BigInt::from(-a[i])).collect();
            abelian::solve_integral(&m, &rhs).is_some()
        })
    }

    /// Degree class from textual coordinates: free part comma-separated,
    /// torsion residues after a semicolon (`6;0`).
    pub fn parse_degree(&self, text: &str) -> Result<DegreeClass, crate::Error> {
        parse_degree(&self.class_group, text)
    }
}

pub fn parse_degree(group: &GradedGroup, text: &str) -> Result<DegreeClass, crate::Error> {
    let bad = |msg: &str| crate::Error::Input(format!("degree {text:?}: {msg}"));
    let (free_txt, tors_txt) = match text.split_once(';') {
        Some((a, b)) => (a, Some(b)),
        None => (text, None),
    };
    let parse_list = |s: &str| -> Result<Vec<i64>, crate::Error> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Vec::new());
        }
        s.split(',').map(|t| t.trim().parse::<i64>().map_err(|_| bad("expected integers"))).collect()
    };
    let free = parse_list(free_txt)?;
    let torsion = match tors_txt {
        Some(t) => parse_list(t)?,
        None if group.torsion_orders().is_empty() => Vec::new(),
        None => return Err(bad("torsion part required after ';'")),
    };
    if free.len() != group.free_rank() || torsion.len() != group.torsion_orders().len() {
        return Err(bad(&format!("does not match class group {group}")));
    }
    if torsion.iter().zip(group.torsion_orders()).any(|(&t, &d)| t < 0 || t >= d) {
        return Err(bad("torsion residues must be canonical"));
    }
    Ok(group.element(free, torsion)?)
}

/// Counter-clockwise angle order starting from the positive x-axis.
fn angular_cmp(u: &[i64], v: &[i64]) -> Ordering {
    let half = |w: &[i64]| if w[1] > 0 || (w[1] == 0 && w[0] > 0) { 0 } else { 1 };
    half(u).cmp(&half(v)).then_with(|| (v[0] * u[1] - v[1] * u[0]).cmp(&0))
}

impl IrrelevantIdeal {
    pub fn is_zero_at<T: Zero>(&self, point: &[T]) -> bool {
        self.generators.iter().all(|g| g.iter().zip(point).any(|(&e, x)| e > 0 && x.is_zero()))
    }
}
