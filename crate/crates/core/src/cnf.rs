//! 3SAT instances: DIMACS ingestion, evaluation, and a DPLL oracle.

use std::fmt;
use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("clause {clause} must have exactly 3 literals over distinct variables")]
    ClauseArity { clause: usize },
    #[error("clause {clause} contains a variable and its negation")]
    TautologicalClause { clause: usize },
    #[error("variable {var} outside 1..={n}")]
    VariableOutOfRange { var: u32, n: usize },
    #[error("need at least 3 variables, got {0}")]
    TooFewVariables(usize),
    #[error("assignment covers {got} variables, instance has {expected}")]
    PartialAssignment { expected: usize, got: usize },
}

/// Signed variable index: `+i` is u_i, `-i` is its negation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Literal(i32);

impl Literal {
    pub fn new(var: u32, positive: bool) -> Self {
        let v = var as i32;
        Literal(if positive { v } else { -v })
    }

    pub fn from_dimacs(x: i32) -> Self {
        assert!(x != 0, "literal 0 is the clause terminator");
        Literal(x)
    }

    /// 1-based variable index.
    pub fn var(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn negated(self) -> Self {
        Literal(-self.0)
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }

    pub fn is_true_under(self, t: &Assignment) -> bool {
        t.value(self.var()) == self.is_positive()
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "u{}", self.var())
        } else {
            write!(f, "~u{}", self.var())
        }
    }
}

/// Three literals over three distinct variables, stored ascending by variable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Clause([Literal; 3]);

impl Clause {
    pub fn literals(&self) -> &[Literal; 3] {
        &self.0
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CnfInstance {
    n: usize,
    clauses: Vec<Clause>,
}

/// Total truth assignment; index 0 holds variable 1.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment(values)
    }

    pub fn all_false(n: usize) -> Self {
        Assignment(vec![false; n])
    }

    /// Assignment with exactly the listed (1-based) variables true.
    pub fn with_true(n: usize, vars: &[u32]) -> Self {
        let mut t = Self::all_false(n);
        for &v in vars {
            t.0[v as usize - 1] = true;
        }
        t
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn value(&self, var: u32) -> bool {
        self.0[var as usize - 1]
    }

    pub fn set(&mut self, var: u32, value: bool) {
        self.0[var as usize - 1] = value;
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    pub fn true_vars(&self) -> Vec<u32> {
        (1..=self.0.len() as u32)
            .filter(|&v| self.value(v))
            .collect()
    }
}

impl CnfInstance {
    /// Validates raw DIMACS-style clauses.
    pub fn new(n: usize, raw: &[[i32; 3]]) -> Result<Self, CnfError> {
        let clauses = raw
            .iter()
            .enumerate()
            .map(|(k, c)| make_clause(n, k + 1, c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CnfInstance { n, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn evaluate(&self, t: &Assignment) -> Result<bool, CnfError> {
        if t.len() != self.n {
            return Err(CnfError::PartialAssignment {
                expected: self.n,
                got: t.len(),
            });
        }
        Ok(self
            .clauses
            .iter()
            .all(|c| c.0.iter().any(|l| l.is_true_under(t))))
    }

    /// Canonical DIMACS: header, one clause per line, literals ascending by
    /// variable.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.n, self.clauses.len());
        for c in &self.clauses {
            for l in c.0 {
                let _ = write!(out, "{} ", l.to_dimacs());
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn parse_dimacs(text: &str) -> Result<Self, CnfError> {
        let mut header: Option<(usize, usize)> = None;
        let mut raw: Vec<(Vec<i32>, usize)> = Vec::new();
        let mut current: Vec<i32> = Vec::new();
        let mut current_line = 0;
        for (k, line) in text.lines().enumerate() {
            let line_no = k + 1;
            let t = line.trim();
            if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
                continue;
            }
            let syntax = |msg: String| CnfError::Syntax { line: line_no, msg };
            if t.starts_with('p') {
                let f: Vec<&str> = t.split_whitespace().collect();
                if header.is_some() {
                    return Err(syntax("duplicate header".into()));
                }
                match f.as_slice() {
                    ["p", "cnf", n, m] => {
                        let n = n
                            .parse()
                            .map_err(|_| syntax(format!("bad variable count {n}")))?;
                        let m = m
                            .parse()
                            .map_err(|_| syntax(format!("bad clause count {m}")))?;
                        header = Some((n, m));
                    }
                    _ => return Err(syntax("expected `p cnf <n> <m>`".into())),
                }
                continue;
            }
            if header.is_none() {
                return Err(syntax("clause before `p cnf` header".into()));
            }
            for tok in t.split_whitespace() {
                let x: i32 = tok
                    .parse()
                    .map_err(|_| syntax(format!("bad literal {tok:?}")))?;
                if current.is_empty() {
                    current_line = line_no;
                }
                if x == 0 {
                    raw.push((std::mem::take(&mut current), current_line));
                } else {
                    current.push(x);
                }
            }
        }
        let (n, m) = header.ok_or(CnfError::Syntax {
            line: 0,
            msg: "missing `p cnf` header".into(),
        })?;
        if !current.is_empty() {
            return Err(CnfError::Syntax {
                line: current_line,
                msg: "clause not terminated by 0".into(),
            });
        }
        if raw.len() != m {
            return Err(CnfError::Syntax {
                line: 0,
                msg: format!("header declares {m} clauses, found {}", raw.len()),
            });
        }
        let mut clauses = Vec::with_capacity(m);
        for (k, (lits, _)) in raw.iter().enumerate() {
            let arr: [i32; 3] = lits
                .as_slice()
                .try_into()
                .map_err(|_| CnfError::ClauseArity { clause: k + 1 })?;
            clauses.push(make_clause(n, k + 1, &arr)?);
        }
        Ok(CnfInstance { n, clauses })
    }

    /// Uniform random instance: each clause picks 3 distinct variables and
    /// independent uniform signs. Deterministic in `seed`.
    pub fn random(n: usize, m: usize, seed: u64) -> Result<Self, CnfError> {
        if n < 3 {
            return Err(CnfError::TooFewVariables(n));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut raw = Vec::with_capacity(m);
        for _ in 0..m {
            let vars = sample(&mut rng, n, 3);
            let mut c = [0i32; 3];
            for (slot, v) in c.iter_mut().zip(vars.iter()) {
                let v = v as i32 + 1;
                *slot = if rng.random_bool(0.5) { v } else { -v };
            }
            raw.push(c);
        }
        Self::new(n, &raw)
    }

    /// Complete DPLL search; `None` iff unsatisfiable.
    pub fn solve(&self) -> Option<Assignment> {
        let mut state = vec![None; self.n + 1];
        if dpll(&self.clauses, &mut state) {
            Some(Assignment(
                state[1..].iter().map(|v| v.unwrap_or(false)).collect(),
            ))
        } else {
            None
        }
    }

    pub fn is_satisfiable(&self) -> bool {
        self.solve().is_some()
    }
}

fn make_clause(n: usize, index: usize, c: &[i32; 3]) -> Result<Clause, CnfError> {
    for &x in c {
        if x == 0 {
            return Err(CnfError::ClauseArity { clause: index });
        }
        let var = x.unsigned_abs();
        if var as usize > n {
            return Err(CnfError::VariableOutOfRange { var, n });
        }
    }
    let mut lits = c.map(Literal::from_dimacs);
    lits.sort_by_key(|l| (l.var(), !l.is_positive()));
    for w in lits.windows(2) {
        if w[0].var() == w[1].var() {
            return Err(if w[0] == w[1] {
                CnfError::ClauseArity { clause: index }
            } else {
                CnfError::TautologicalClause { clause: index }
            });
        }
    }
    Ok(Clause(lits))
}

enum Status {
    Satisfied,
    Conflict,
    Unit(Literal),
    Open,
}

fn clause_status(c: &Clause, state: &[Option<bool>]) -> Status {
    let mut free = None;
    let mut free_count = 0;
    for &l in &c.0 {
        match state[l.var() as usize] {
            Some(v) if v == l.is_positive() => return Status::Satisfied,
            Some(_) => {}
            None => {
                free = Some(l);
                free_count += 1;
            }
        }
    }
    match (free_count, free) {
        (0, _) => Status::Conflict,
        (1, Some(l)) => Status::Unit(l),
        _ => Status::Open,
    }
}

fn dpll(clauses: &[Clause], state: &mut Vec<Option<bool>>) -> bool {
    // unit propagation to fixpoint
    loop {
        let mut changed = false;
        for c in clauses {
            match clause_status(c, state) {
                Status::Conflict => return false,
                Status::Unit(l) => {
                    state[l.var() as usize] = Some(l.is_positive());
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }

    // pure literals among clauses not yet satisfied
    let n = state.len() - 1;
    let mut polarity = vec![(false, false); n + 1];
    let mut open = false;
    for c in clauses {
        if let Status::Satisfied = clause_status(c, state) {
            continue;
        }
        open = true;
        for &l in &c.0 {
            if state[l.var() as usize].is_none() {
                let p = &mut polarity[l.var() as usize];
                if l.is_positive() {
                    p.0 = true;
                } else {
                    p.1 = true;
                }
            }
        }
    }
    if !open {
        return true;
    }
    let mut pure = false;
    for v in 1..=n {
        match polarity[v] {
            (true, false) => {
                state[v] = Some(true);
                pure = true;
            }
            (false, true) => {
                state[v] = Some(false);
                pure = true;
            }
            _ => {}
        }
    }
    if pure {
        return dpll(clauses, state);
    }

    let Some(var) = (1..=n).find(|&v| state[v].is_none() && polarity[v] != (false, false)) else {
        return false;
    };
    for value in [true, false] {
        let mut next = state.clone();
        next[var] = Some(value);
        if dpll(clauses, &mut next) {
            *state = next;
            return true;
        }
    }
    false
}
