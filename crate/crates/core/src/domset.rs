//! Exact domination and total domination numbers.
//!
//! Both parameters are solved as a set cover over the vertex set: choosing
//! vertex `u` covers its closed neighborhood N[u] (domination) or its open
//! neighborhood N(u) (total domination). The search branches on the uncovered
//! vertex with the fewest remaining candidate dominators, bounded below by a
//! greedy packing of uncovered vertices with pairwise disjoint candidate sets.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{with_bits, Bits};
use crate::graph::{Graph, GraphError, Label};

/// Default cap on the number of sets returned by [`enumerate_minimum_sets`].
pub const DEFAULT_ENUMERATION_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DomError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {0} is isolated; total domination is undefined")]
    IsolatedVertex(String),
    #[error("more than {0} minimum sets")]
    BudgetExceeded(usize),
}

/// Which neighborhood a chosen vertex covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domination {
    /// Closed neighborhoods: γ.
    Plain,
    /// Open neighborhoods: γ_t.
    Total,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomResult {
    pub value: usize,
    /// Witness set in vertex order.
    pub witness: Vec<Label>,
}

pub fn is_dominating_set<S: AsRef<str>>(
    g: &Graph,
    set: impl IntoIterator<Item = S>,
) -> Result<bool, DomError> {
    let idx = g.to_indices(set)?;
    Ok(covers(g, &idx, Domination::Plain))
}

pub fn is_total_dominating_set<S: AsRef<str>>(
    g: &Graph,
    set: impl IntoIterator<Item = S>,
) -> Result<bool, DomError> {
    let idx = g.to_indices(set)?;
    Ok(covers(g, &idx, Domination::Total))
}

/// Index-level membership predicate.
pub fn covers(g: &Graph, set: &[usize], mode: Domination) -> bool {
    let n = g.vertex_count();
    let mut hit = vec![false; n];
    for &u in set {
        if mode == Domination::Plain {
            hit[u] = true;
        }
        for w in g.neighbor_indices(u) {
            hit[w] = true;
        }
    }
    hit.into_iter().all(|h| h)
}

pub fn domination_number(g: &Graph) -> DomResult {
    minimum(g, Domination::Plain).expect("domination is always defined")
}

pub fn total_domination_number(g: &Graph) -> Result<DomResult, DomError> {
    minimum(g, Domination::Total)
}

/// γ or γ_t with a witness.
pub fn minimum(g: &Graph, mode: Domination) -> Result<DomResult, DomError> {
    check_mode(g, mode)?;
    let idx = with_bits!(g.vertex_count(), B => {
        let cover = Cover::<B>::new(&g.open_sets::<B>(), mode);
        cover.minimum()
    });
    Ok(DomResult {
        value: idx.len(),
        witness: g.to_labels(idx),
    })
}

/// Finds a (total) dominating set of size at most `k`, if one exists.
pub fn find_within(g: &Graph, mode: Domination, k: usize) -> Result<Option<Vec<Label>>, DomError> {
    check_mode(g, mode)?;
    let found = with_bits!(g.vertex_count(), B => {
        Cover::<B>::new(&g.open_sets::<B>(), mode).find_within(k)
    });
    Ok(found.map(|idx| g.to_labels(idx)))
}

/// Every minimum (total) dominating set, sorted by vertex index sequence.
pub fn enumerate_minimum_sets(g: &Graph, mode: Domination) -> Result<Vec<Vec<Label>>, DomError> {
    enumerate_minimum_sets_capped(g, mode, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_minimum_sets_capped(
    g: &Graph,
    mode: Domination,
    cap: usize,
) -> Result<Vec<Vec<Label>>, DomError> {
    check_mode(g, mode)?;
    let sets = with_bits!(g.vertex_count(), B => {
        let cover = Cover::<B>::new(&g.open_sets::<B>(), mode);
        let k = cover.minimum().len();
        cover.enumerate(k, cap)
    })
    .ok_or(DomError::BudgetExceeded(cap))?;
    Ok(sets.into_iter().map(|s| g.to_labels(s)).collect())
}

fn check_mode(g: &Graph, mode: Domination) -> Result<(), DomError> {
    if mode == Domination::Total {
        if let Some(&i) = g.isolated_indices().first() {
            return Err(DomError::IsolatedVertex(g.label(i).to_string()));
        }
    }
    Ok(())
}

/// Set cover instance where element `v` is covered by any member of
/// `cands[v]`, and choosing `u` covers `sets[u]`. Both families are
/// neighborhood systems, hence symmetric: `cands == sets`.
pub(crate) struct Cover<B> {
    n: usize,
    sets: Vec<B>,
}

struct Search<'a, B> {
    cover: &'a Cover<B>,
    chosen: Vec<usize>,
    // exclusive upper limit on accepted solution size
    limit: usize,
    best: Option<Vec<usize>>,
    stop_at_first: bool,
    collect: Option<(Vec<Vec<usize>>, usize)>,
    overflow: bool,
}

impl<B: Bits> Cover<B> {
    pub(crate) fn new(open: &[B], mode: Domination) -> Self {
        let n = open.len();
        let sets = open
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut s = s.clone();
                if mode == Domination::Plain {
                    s.insert(i);
                }
                s
            })
            .collect();
        Cover { n, sets }
    }

    /// Greedy max-coverage solution, or `None` if some element is uncoverable.
    fn greedy(&self) -> Option<Vec<usize>> {
        let mut uncovered = B::full(self.n);
        let mut picked = Vec::new();
        while !uncovered.is_empty() {
            let (gain, u) = (0..self.n)
                .map(|u| (self.sets[u].count_common(&uncovered), u))
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))?;
            if gain == 0 {
                return None;
            }
            picked.push(u);
            uncovered.difference_with(&self.sets[u]);
        }
        Some(picked)
    }

    pub(crate) fn minimum(&self) -> Vec<usize> {
        let incumbent = self.greedy().expect("every element has a candidate");
        let mut s = Search {
            cover: self,
            chosen: Vec::new(),
            limit: incumbent.len(),
            best: None,
            stop_at_first: false,
            collect: None,
            overflow: false,
        };
        s.run();
        let mut best = s.best.unwrap_or(incumbent);
        best.sort_unstable();
        best
    }

    pub(crate) fn find_within(&self, k: usize) -> Option<Vec<usize>> {
        let mut s = Search {
            cover: self,
            chosen: Vec::new(),
            limit: k + 1,
            best: None,
            stop_at_first: true,
            collect: None,
            overflow: false,
        };
        s.run();
        s.best.map(|mut b| {
            b.sort_unstable();
            b
        })
    }

    /// All covers of size at most `k`; `None` if more than `cap` exist.
    fn enumerate(&self, k: usize, cap: usize) -> Option<Vec<Vec<usize>>> {
        let mut s = Search {
            cover: self,
            chosen: Vec::new(),
            limit: k + 1,
            best: None,
            stop_at_first: false,
            collect: Some((Vec::new(), cap)),
            overflow: false,
        };
        s.run();
        if s.overflow {
            return None;
        }
        let mut all = s.collect.map(|c| c.0).unwrap_or_default();
        all.sort();
        Some(all)
    }
}

impl<B: Bits> Search<'_, B> {
    fn run(&mut self) {
        let n = self.cover.n;
        self.recurse(B::empty(n), B::full(n));
    }

    fn done(&self) -> bool {
        self.overflow || (self.stop_at_first && self.best.is_some())
    }

    fn recurse(&mut self, covered: B, mut allowed: B) {
        let n = self.cover.n;
        let mut uncovered = B::full(n);
        uncovered.difference_with(&covered);
        if uncovered.is_empty() {
            self.record();
            return;
        }
        if self.chosen.len() + 1 >= self.limit {
            return;
        }

        // Branch vertex: fewest allowed candidates; ties to the lowest index.
        let mut branch = None;
        let mut fewest = usize::MAX;
        let mut dead = false;
        uncovered.for_each(|v| {
            if dead {
                return;
            }
            let c = self.cover.sets[v].count_common(&allowed);
            if c == 0 {
                dead = true;
            } else if c < fewest {
                fewest = c;
                branch = Some(v);
            }
        });
        if dead {
            return;
        }
        let branch = branch.expect("uncovered is nonempty");

        if self.chosen.len() + self.packing_bound(&uncovered, &allowed) >= self.limit {
            return;
        }

        let mut cands = self.cover.sets[branch].clone();
        cands.intersect_with(&allowed);
        // Larger fresh coverage first; index breaks ties.
        let mut order: Vec<(usize, usize)> = cands
            .members()
            .into_iter()
            .map(|u| (self.cover.sets[u].count_common(&uncovered), u))
            .collect();
        order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        for (_, u) in order {
            let mut next_cov = covered.clone();
            next_cov.union_with(&self.cover.sets[u]);
            allowed.remove(u);
            self.chosen.push(u);
            self.recurse(next_cov, allowed.clone());
            self.chosen.pop();
            if self.done() || self.chosen.len() + 1 >= self.limit {
                return;
            }
        }
    }

    /// Number of uncovered elements with pairwise disjoint candidate sets;
    /// each needs its own chosen vertex.
    fn packing_bound(&self, uncovered: &B, allowed: &B) -> usize {
        let mut used = B::empty(self.cover.n);
        let mut count = 0;
        uncovered.for_each(|v| {
            let mut c = self.cover.sets[v].clone();
            c.intersect_with(allowed);
            if !c.intersects(&used) {
                used.union_with(&c);
                count += 1;
            }
        });
        count
    }

    fn record(&mut self) {
        if let Some((sets, cap)) = &mut self.collect {
            if sets.len() >= *cap {
                self.overflow = true;
                return;
            }
            let mut s = self.chosen.clone();
            s.sort_unstable();
            sets.push(s);
        } else {
            self.limit = self.chosen.len();
            self.best = Some(self.chosen.clone());
        }
    }
}
