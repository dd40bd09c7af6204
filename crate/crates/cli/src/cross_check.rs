//! Checks of the treewidth bounds on concrete hosts: if
//! `tw(host) >= bound(family, k)` the family's pattern must be a minor.

use serde::Serialize;
use thiserror::Error;

use minorkit::budget::{Budget, Outcome};
use minorkit::constructions::bounds::{bound, BoundError, Family};
use minorkit::patterns::{cycle_graph, double_wheel, path_graph, wheel, yurt};
use minorkit::solvers::minor::is_minor_within;
use minorkit::solvers::treewidth::exact_treewidth_within;
use minorkit::solvers::SolverError;
use minorkit::Graph;

/// The pattern checked for `family` at parameter `k`. Wheels and double
/// wheels need order 3 at least, so smaller `k` use order 3; the pw2
/// family is represented by the cycle `C_k` (the path `P_k` for `k < 3`),
/// whose bound parameter is its vertex count `k`.
pub fn family_pattern(family: Family, k: usize) -> Graph {
    let g = match family {
        Family::Wheel => wheel(k.max(3)),
        Family::DoubleWheel => double_wheel(k.max(3)),
        Family::Yurt => yurt(k.max(1)),
        Family::Pw2 if k >= 3 => cycle_graph(k),
        Family::Pw2 => Ok(path_graph(k)),
    };
    g.expect("parameters are in range")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossCheckError {
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinorStatus {
    Present,
    Absent,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub family: Family,
    pub k: usize,
    /// `None` when the budget ran out.
    pub treewidth: Option<usize>,
    pub bound: i128,
    pub minor: MinorStatus,
    /// The treewidth is known to be below the bound.
    pub vacuous: bool,
    /// False only for a verified `tw >= bound` with the minor absent.
    pub consistent: bool,
}

/// Runs every `(family, k)` query against one host, computing its
/// treewidth once. Hosts beyond the exact solvers are an error.
pub fn cross_check_all(host: &Graph, queries: &[(Family, usize)], budget: &Budget) -> Result<Vec<CrossCheck>, CrossCheckError> {
    let tw = match exact_treewidth_within(host, budget) {
        Ok(r) => Some(r.width),
        Err(SolverError::BudgetExceeded) => None,
        Err(e) => return Err(e.into()),
    };
    queries
        .iter()
        .map(|&(family, k)| {
            let b = bound(family, k as u64)?;
            let minor = match is_minor_within(&family_pattern(family, k), host, budget)? {
                Outcome::Found(_) => MinorStatus::Present,
                Outcome::Absent => MinorStatus::Absent,
                Outcome::Unknown => MinorStatus::Unknown,
            };
            let forced = tw.map(|t| t as i128 >= b);
            Ok(CrossCheck {
                family,
                k,
                treewidth: tw,
                bound: b,
                minor,
                vacuous: forced == Some(false),
                consistent: !(forced == Some(true) && minor == MinorStatus::Absent),
            })
        })
        .collect()
}

pub fn cross_check(family: Family, k: usize, host: &Graph, budget: &Budget) -> Result<CrossCheck, CrossCheckError> {
    Ok(cross_check_all(host, &[(family, k)], budget)?.remove(0))
}
