//! Brute-force oracles and generators shared by the integration tests.
#![allow(dead_code)]

use domred_core::{CnfInstance, Graph, Parameter, PerturbValue};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Adjacency as bitmasks; vertex i is labelled `i`.
#[derive(Clone, Debug)]
pub struct Small {
    pub n: usize,
    pub adj: Vec<u32>,
}

impl Small {
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut adj = vec![0u32; n];
        for (i, j) in g.edge_indices() {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        Small { n, adj }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.adj[i] >> j & 1 == 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.adj[i] >> j & 1 == 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn toggled(&self, edges: &[(usize, usize)], mask: u64) -> Small {
        let mut h = self.clone();
        for (b, &(i, j)) in edges.iter().enumerate() {
            if mask >> b & 1 == 1 {
                h.adj[i] ^= 1 << j;
                h.adj[j] ^= 1 << i;
            }
        }
        h
    }

    pub fn has_isolated(&self) -> bool {
        self.adj.contains(&0)
    }

    fn dominates(&self, set: u32, total: bool) -> bool {
        (0..self.n).all(|v| {
            let own = if total { 0 } else { 1 << v };
            (self.adj[v] | own) & set != 0
        })
    }

    /// Smallest (total) dominating set size by ascending subset size.
    pub fn minimum(&self, total: bool) -> Option<usize> {
        (0..=self.n).find(|&k| {
            (0u32..1 << self.n)
                .filter(|s| s.count_ones() as usize == k)
                .any(|s| self.dominates(s, total))
        })
    }
}

/// Perturbation value by ascending-size enumeration over every subset of the
/// candidate edges.
pub fn perturbation(g: &Graph, param: Parameter) -> PerturbValue {
    let s = Small::from_graph(g);
    let total = matches!(
        param,
        Parameter::TotalBondage | Parameter::TotalReinforcement
    );
    let removal = matches!(param, Parameter::Bondage | Parameter::TotalBondage);
    let base = s.minimum(total).expect("no isolated vertex in total mode");
    if !removal && base <= if total { 2 } else { 1 } {
        return PerturbValue::Zero;
    }
    let cand = if removal { s.edges() } else { s.non_edges() };
    for k in 1..=cand.len() {
        let hit = (0u64..1 << cand.len())
            .filter(|m| m.count_ones() as usize == k)
            .any(|m| {
                let h = s.toggled(&cand, m);
                if total && h.has_isolated() {
                    return false;
                }
                let v = h.minimum(total).unwrap();
                if removal {
                    v > base
                } else {
                    v < base
                }
            });
        if hit {
            return PerturbValue::Exact(k);
        }
    }
    PerturbValue::Undefined
}

/// Random graph on `n` vertices labelled 0..n with edge probability `p`.
pub fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i.to_string(), j.to_string()));
            }
        }
    }
    let vertices: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    Graph::from_edge_list(&vertices, edges).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// C1={u1,u2,¬u3}, C2={¬u1,u2,u4}, C3={¬u2,u3,u4}.
pub fn instance_a() -> CnfInstance {
    CnfInstance::new(4, &[[1, 2, -3], [-1, 2, 4], [-2, 3, 4]]).unwrap()
}

/// C1={u1,u2,¬u3}, C2={u1,¬u2,u4}, C3={¬u2,¬u3,u4}.
pub fn instance_b() -> CnfInstance {
    CnfInstance::new(4, &[[1, 2, -3], [1, -2, 4], [-2, -3, 4]]).unwrap()
}

/// Every sign pattern over three variables; unsatisfiable.
pub fn all_sign_patterns() -> CnfInstance {
    let clauses: Vec<[i32; 3]> = (0..8)
        .map(|mask| {
            let lit = |b: i32, v: i32| if mask >> b & 1 == 1 { -v } else { v };
            [lit(0, 1), lit(1, 2), lit(2, 3)]
        })
        .collect();
    CnfInstance::new(3, &clauses).unwrap()
}

pub const KINDS: [Parameter; 4] = [
    Parameter::Bondage,
    Parameter::TotalBondage,
    Parameter::Reinforcement,
    Parameter::TotalReinforcement,
];
