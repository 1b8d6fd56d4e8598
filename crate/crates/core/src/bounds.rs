//! Catalecticant matrices and the lower bounds they give.

use serde::Serialize;

use crate::abelian::DegreeClass;
use crate::apolarity::{ApolarForm, DegreeBox};
use crate::linalg::{self, Rational};
use crate::ring::Monomial;

/// `C_F^β` with its row and column monomials.
#[derive(Debug, Clone)]
pub struct CatMatrix {
    pub beta: DegreeClass,
    pub rows: Vec<Monomial>,
    pub cols: Vec<Monomial>,
    pub entries: Vec<Vec<Rational>>,
    pub rank: usize,
}

/// Builds `C_F^β`. Rank is exact; a mod-p prescreen is used only when it
/// already reaches the maximum possible rank.
pub fn catalecticant(f: &ApolarForm, beta: &DegreeClass, prescreen: Option<u64>) -> CatMatrix {
    let ring = f.ring();
    let rows = ring.basis(beta).monomials().to_vec();
    let cols = match f.degree().try_sub(beta) {
        Ok(g) => ring.basis(&g).monomials().to_vec(),
        Err(_) => Vec::new(),
    };
    let entries = if cols.is_empty() { vec![Vec::new(); rows.len()] } else { f.catalecticant_entries(beta) };
    let rank = if cols.is_empty() { 0 } else { linalg::rank_with_prescreen(&entries, cols.len(), prescreen) };
    CatMatrix { beta: beta.clone(), rows, cols, entries, rank }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub beta: DegreeClass,
    pub rank: usize,
    pub cartier: bool,
    /// Lower bound for the border rank.
    pub border: usize,
    /// Lower bound for the rank.
    pub rank_bound: usize,
    /// Lower bound for the cactus rank; only for Cartier β.
    pub cactus: Option<usize>,
}

pub fn bound_report(f: &ApolarForm, beta: &DegreeClass) -> BoundReport {
    let rank = catalecticant(f, beta, Some(linalg::DEFAULT_PRIME)).rank;
    let cartier = f.fan().is_cartier(beta);
    BoundReport { beta: beta.clone(), rank, cartier, border: rank, rank_bound: rank, cactus: cartier.then_some(rank) }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BestBound {
    pub value: usize,
    pub beta: DegreeClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BestBounds {
    pub border: Option<BestBound>,
    pub rank: Option<BestBound>,
    pub cactus: Option<BestBound>,
    pub reports: Vec<BoundReport>,
}

/// Maxima over a degree box. Ties go to the first β in graded-lex order.
pub fn best_bounds(f: &ApolarForm, degrees: &DegreeBox) -> BestBounds {
    let ring = f.ring();
    let mut betas: Vec<DegreeClass> = degrees.iter().collect();
    betas.sort_by(|a, b| ring.degree_order(a, b));
    let reports: Vec<BoundReport> = betas.iter().map(|b| bound_report(f, b)).collect();

    fn best(reports: &[BoundReport], key: impl Fn(&BoundReport) -> Option<usize>) -> Option<BestBound> {
        let mut out: Option<BestBound> = None;
        for r in reports {
            if let Some(v) = key(r) {
                if out.as_ref().is_none_or(|b| v > b.value) {
                    out = Some(BestBound { value: v, beta: r.beta.clone() });
                }
            }
        }
        out
    }

    BestBounds {
        border: best(&reports, |r| Some(r.border)),
        rank: best(&reports, |r| Some(r.rank_bound)),
        cactus: best(&reports, |r| r.cactus),
        reports,
    }
}
