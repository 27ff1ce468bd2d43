//! Bondage, total bondage, reinforcement and total reinforcement numbers.
//!
//! All four are found by ascending-cardinality search: edge subsets of size
//! k are tried in lexicographic order of their normalized edge index, and
//! each candidate is decided exactly by the cover solver with the parameter's
//! base value as the size bound.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{with_bits, Bits};
use crate::domset::{self, Cover, DomError, Domination};
use crate::graph::{Graph, Label};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PerturbError {
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("vertex {0} is isolated; total parameters are undefined")]
    IsolatedVertex(String),
}

impl From<DomError> for PerturbError {
    fn from(e: DomError) -> Self {
        match e {
            DomError::IsolatedVertex(v) => PerturbError::IsolatedVertex(v),
            other => unreachable!("solver error on a validated graph: {other}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parameter {
    Bondage,
    TotalBondage,
    Reinforcement,
    TotalReinforcement,
}

impl Parameter {
    pub fn domination(self) -> Domination {
        match self {
            Parameter::Bondage | Parameter::Reinforcement => Domination::Plain,
            Parameter::TotalBondage | Parameter::TotalReinforcement => Domination::Total,
        }
    }

    pub fn removes_edges(self) -> bool {
        matches!(self, Parameter::Bondage | Parameter::TotalBondage)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Parameter::Bondage => "b",
            Parameter::TotalBondage => "b_t",
            Parameter::Reinforcement => "r",
            Parameter::TotalReinforcement => "r_t",
        }
    }
}

/// Upper limit on the witness size explored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MaxK {
    /// Unbounded on graphs with at most 12 edges, 2 otherwise.
    #[default]
    Default,
    Unbounded,
    Limit(usize),
}

impl MaxK {
    fn resolve(self, g: &Graph) -> Option<usize> {
        match self {
            MaxK::Default if g.edge_count() <= 12 => None,
            MaxK::Default => Some(2),
            MaxK::Unbounded => None,
            MaxK::Limit(k) => Some(k),
        }
    }
}

impl From<Option<usize>> for MaxK {
    fn from(k: Option<usize>) -> Self {
        k.map_or(MaxK::Default, MaxK::Limit)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "k", rename_all = "kebab-case")]
pub enum PerturbValue {
    /// Minimum witness size.
    Exact(usize),
    /// Reinforcement with γ = 1, or total reinforcement with γ_t = 2.
    Zero,
    /// No edge set of any size qualifies.
    Undefined,
    /// No witness of size ≤ k; the value is at least k + 1.
    Exceeds(usize),
}

impl PerturbValue {
    pub fn exact(self) -> Option<usize> {
        match self {
            PerturbValue::Exact(k) => Some(k),
            _ => None,
        }
    }

    pub fn is_one(self) -> bool {
        self == PerturbValue::Exact(1)
    }
}

impl fmt::Display for PerturbValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PerturbValue::Exact(k) => write!(f, "{k}"),
            PerturbValue::Zero => write!(f, "0"),
            PerturbValue::Undefined => write!(f, "undefined"),
            PerturbValue::Exceeds(k) => write!(f, ">={}", k + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbResult {
    pub parameter: Parameter,
    pub value: PerturbValue,
    /// Present iff `value` is `Exact`; normalized label pairs.
    pub witness: Vec<(Label, Label)>,
    /// γ or γ_t of the unperturbed graph.
    pub base: usize,
}

pub fn bondage_number(g: &Graph, max_k: MaxK) -> Result<PerturbResult, PerturbError> {
    compute(g, Parameter::Bondage, max_k)
}

pub fn total_bondage_number(g: &Graph, max_k: MaxK) -> Result<PerturbResult, PerturbError> {
    compute(g, Parameter::TotalBondage, max_k)
}

pub fn reinforcement_number(g: &Graph, max_k: MaxK) -> Result<PerturbResult, PerturbError> {
    compute(g, Parameter::Reinforcement, max_k)
}

pub fn total_reinforcement_number(g: &Graph, max_k: MaxK) -> Result<PerturbResult, PerturbError> {
    compute(g, Parameter::TotalReinforcement, max_k)
}

pub fn compute(g: &Graph, param: Parameter, max_k: MaxK) -> Result<PerturbResult, PerturbError> {
    let mode = param.domination();
    if param == Parameter::Bondage && g.edge_count() == 0 {
        return Err(PerturbError::EmptyGraph);
    }
    let base = domset::minimum(g, mode)?.value;
    let floor = match mode {
        Domination::Plain => 1,
        Domination::Total => 2,
    };
    if !param.removes_edges() && base <= floor {
        return Ok(PerturbResult {
            parameter: param,
            value: PerturbValue::Zero,
            witness: Vec::new(),
            base,
        });
    }
    let candidates = if param.removes_edges() {
        g.edge_indices()
    } else {
        g.complement_edge_indices()
    };
    let limit = max_k
        .resolve(g)
        .map_or(candidates.len(), |k| k.min(candidates.len()));

    let found = with_bits!(g.vertex_count(), B => {
        let probe = Probe::<B> {
            open: g.open_sets::<B>(),
            param,
            base,
        };
        search(&candidates, limit, |edges| probe.succeeds(edges))
    });

    let (value, witness) = match found {
        Some(set) => (
            PerturbValue::Exact(set.len()),
            set.iter().map(|&(i, j)| g.label_pair(i, j)).collect(),
        ),
        None if limit == candidates.len() => (PerturbValue::Undefined, Vec::new()),
        None => (PerturbValue::Exceeds(limit), Vec::new()),
    };
    Ok(PerturbResult {
        parameter: param,
        value,
        witness,
        base,
    })
}

/// Decides whether one candidate edge set moves the parameter.
struct Probe<B> {
    open: Vec<B>,
    param: Parameter,
    base: usize,
}

impl<B: Bits> Probe<B> {
    fn succeeds(&self, edges: &[(usize, usize)]) -> bool {
        let mut open = self.open.clone();
        for &(i, j) in edges {
            if self.param.removes_edges() {
                open[i].remove(j);
                open[j].remove(i);
            } else {
                open[i].insert(j);
                open[j].insert(i);
            }
        }
        let mode = self.param.domination();
        if mode == Domination::Total && open.iter().any(Bits::is_empty) {
            // only reachable by removal; such sets are skipped
            return false;
        }
        let cover = Cover::new(&open, mode);
        if self.param.removes_edges() {
            cover.find_within(self.base).is_none()
        } else {
            cover.find_within(self.base - 1).is_some()
        }
    }
}

/// First k-subset of `candidates` (k ascending, lexicographic within k) that
/// satisfies `ok`.
fn search<F>(candidates: &[(usize, usize)], limit: usize, ok: F) -> Option<Vec<(usize, usize)>>
where
    F: Fn(&[(usize, usize)]) -> bool + Sync,
{
    const BATCH: usize = 2048;
    for k in 1..=limit {
        let mut combos = Combinations::new(candidates.len(), k);
        loop {
            let batch: Vec<Vec<(usize, usize)>> = combos
                .by_ref()
                .take(BATCH)
                .map(|c| c.iter().map(|&x| candidates[x]).collect())
                .collect();
            if batch.is_empty() {
                break;
            }
            if let Some(hit) = first_success(&batch, &ok) {
                return Some(hit);
            }
        }
    }
    None
}

#[cfg(feature = "parallel")]
fn first_success<F>(batch: &[Vec<(usize, usize)>], ok: &F) -> Option<Vec<(usize, usize)>>
where
    F: Fn(&[(usize, usize)]) -> bool + Sync,
{
    use rayon::prelude::*;
    batch.par_iter().find_first(|c| ok(c)).cloned()
}

#[cfg(not(feature = "parallel"))]
fn first_success<F>(batch: &[Vec<(usize, usize)>], ok: &F) -> Option<Vec<(usize, usize)>>
where
    F: Fn(&[(usize, usize)]) -> bool + Sync,
{
    batch.iter().find(|c| ok(c)).cloned()
}

/// k-subsets of 0..n in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    fresh: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            fresh: k <= n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.fresh {
            self.fresh = false;
            return Some(self.idx.clone());
        }
        let k = self.idx.len();
        if k > self.n {
            return None;
        }
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(self.idx.clone());
            }
        }
        None
    }
}
