use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use super::group::{enumerate_abelian_groups, AbelianGroupTable};
use super::ring::{CompiledForm, CompiledStatement, FiniteRing};
use super::{ModelError, MAX_ORDER};
use crate::checker::Statement;

const UNKNOWN: u8 = u8::MAX;

/// Identities and conditional rules a model must satisfy.
#[derive(Debug, Clone, Default)]
pub struct AxiomSet {
    compiled: Vec<CompiledStatement>,
}

impl AxiomSet {
    pub fn new(statements: &[Statement]) -> Result<AxiomSet, ModelError> {
        let compiled = statements.iter().map(CompiledStatement::new).collect::<Result<_, _>>()?;
        Ok(AxiomSet { compiled })
    }

    pub fn statements(&self) -> impl Iterator<Item = &Statement> {
        self.compiled.iter().map(|c| &c.statement)
    }

    pub fn compiled(&self) -> &[CompiledStatement] {
        &self.compiled
    }

    pub fn is_empty(&self) -> bool {
        self.compiled.is_empty()
    }

    pub fn satisfied_by(&self, ring: &FiniteRing) -> bool {
        self.compiled.iter().all(|st| ring.counterexample(st).is_none())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Count,
    Collect,
    FirstNoncommutative,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub mode: SearchMode,
    pub count: u64,
    pub rings: Vec<FiniteRing>,
}

/// Backtracking state: structure constants `c[i*g + j] = e_i * e_j`.
struct Search<'a> {
    group: &'a AbelianGroupTable,
    axioms: &'a AxiomSet,
    rank: usize,
    pairs: Vec<(usize, usize)>,
    choices: Vec<Vec<u8>>,
    consts: Vec<u8>,
}

impl<'a> Search<'a> {
    fn new(group: &'a AbelianGroupTable, axioms: &'a AxiomSet) -> Search<'a> {
        let g = group.rank();
        let mut pairs: Vec<(usize, usize)> = (0..g).flat_map(|i| (0..g).map(move |j| (i, j))).collect();
        pairs.sort_by_key(|&(i, j)| (i.max(j), i, j));
        let choices = pairs
            .iter()
            .map(|&(i, j)| group.torsion((group.moduli[i] as u32).gcd(&(group.moduli[j] as u32))))
            .collect();
        Search {
            group,
            axioms,
            rank: g,
            pairs,
            choices,
            consts: vec![UNKNOWN; g * g],
        }
    }

    /// Products determined by the constants assigned so far.
    fn partial_table(&self) -> Vec<Vec<u8>> {
        let m = self.group.order;
        let mut t = vec![vec![UNKNOWN; m]; m];
        for (a, row) in t.iter_mut().enumerate() {
            let ca = self.group.coords(a as u8);
            'cell: for (b, cell) in row.iter_mut().enumerate() {
                let cb = self.group.coords(b as u8);
                let mut acc = 0u8;
                for i in 0..self.rank {
                    if ca[i] == 0 {
                        continue;
                    }
                    for j in 0..self.rank {
                        if cb[j] == 0 {
                            continue;
                        }
                        let c = self.consts[i * self.rank + j];
                        if c == UNKNOWN {
                            continue 'cell;
                        }
                        acc = self.group.add(acc, self.group.scale(ca[i] as u32 * cb[j] as u32, c));
                    }
                }
                *cell = acc;
            }
        }
        t
    }

    fn consistent(&self, t: &[Vec<u8>]) -> bool {
        let m = self.group.order;
        for a in 0..m {
            for b in 0..m {
                let ab = t[a][b];
                if ab == UNKNOWN {
                    continue;
                }
                for c in 0..m {
                    let bc = t[b][c];
                    if bc == UNKNOWN {
                        continue;
                    }
                    let l = t[ab as usize][c];
                    let r = t[a][bc as usize];
                    if l != UNKNOWN && r != UNKNOWN && l != r {
                        return false;
                    }
                }
            }
        }
        self.axioms.compiled().iter().all(|st| probe(self.group, t, st))
    }

    fn ring(&self) -> FiniteRing {
        FiniteRing {
            group: self.group.clone(),
            mul: self.partial_table(),
        }
    }

    /// Depth-first over the remaining pairs; `visit` returns true to stop.
    fn dfs(&mut self, depth: usize, visit: &mut dyn FnMut(FiniteRing) -> bool) -> bool {
        if depth == self.pairs.len() {
            let ring = self.ring();
            if ring.verify() && self.axioms.satisfied_by(&ring) {
                return visit(ring);
            }
            return false;
        }
        let (i, j) = self.pairs[depth];
        for k in 0..self.choices[depth].len() {
            self.consts[i * self.rank + j] = self.choices[depth][k];
            if self.consistent(&self.partial_table()) && self.dfs(depth + 1, visit) {
                self.consts[i * self.rank + j] = UNKNOWN;
                return true;
            }
        }
        self.consts[i * self.rank + j] = UNKNOWN;
        false
    }

    /// Runs the subtree where the first pair takes its `k`-th value.
    fn subtree(&mut self, k: usize, visit: &mut dyn FnMut(FiniteRing) -> bool) -> bool {
        if self.pairs.is_empty() {
            return k == 0 && self.dfs(0, visit);
        }
        let (i, j) = self.pairs[0];
        self.consts[i * self.rank + j] = self.choices[0][k];
        let stop = self.consistent(&self.partial_table()) && self.dfs(1, visit);
        self.consts[i * self.rank + j] = UNKNOWN;
        stop
    }

    fn branches(&self) -> usize {
        self.choices.first().map_or(1, Vec::len)
    }
}

/// Evaluates the statement at every assignment whose value is already
/// determined; false if some determined assignment violates it.
fn probe(group: &AbelianGroupTable, t: &[Vec<u8>], st: &CompiledStatement) -> bool {
    let m = group.order;
    let n = st.var_count();
    let mut values = vec![0u8; n];
    'assign: for idx in 0..m.pow(n as u32) {
        let mut r = idx;
        for slot in values.iter_mut().rev() {
            *slot = (r % m) as u8;
            r /= m;
        }
        for p in &st.premises {
            if partial_eval(group, t, p, &values) != Some(0) {
                continue 'assign;
            }
        }
        if let Some(v) = partial_eval(group, t, &st.conclusion, &values) {
            if v != 0 {
                return false;
            }
        }
    }
    true
}

fn partial_eval(group: &AbelianGroupTable, t: &[Vec<u8>], form: &CompiledForm, values: &[u8]) -> Option<u8> {
    let mut acc = 0u8;
    for (word, k) in form.terms() {
        let mut v = values[word[0] as usize];
        for &l in &word[1..] {
            v = t[v as usize][values[l as usize] as usize];
            if v == UNKNOWN {
                return None;
            }
        }
        acc = group.add(acc, group.scale(*k, v));
    }
    Some(acc)
}

/// Every ring on `group` satisfying `axioms`, in enumeration order.
pub fn collect_rings(group: &AbelianGroupTable, axioms: &AxiomSet) -> Vec<FiniteRing> {
    let branches = Search::new(group, axioms).branches();
    (0..branches)
        .into_par_iter()
        .map(|k| {
            let mut found = Vec::new();
            Search::new(group, axioms).subtree(k, &mut |r| {
                found.push(r);
                false
            });
            found
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Number of rings on `group` satisfying `axioms`.
pub fn count_rings(group: &AbelianGroupTable, axioms: &AxiomSet) -> u64 {
    let branches = Search::new(group, axioms).branches();
    (0..branches)
        .into_par_iter()
        .map(|k| {
            let mut n = 0u64;
            Search::new(group, axioms).subtree(k, &mut |_| {
                n += 1;
                false
            });
            n
        })
        .sum()
}

/// First ring in enumeration order satisfying `axioms` and `accept`.
pub fn find_ring<F>(group: &AbelianGroupTable, axioms: &AxiomSet, accept: F) -> Option<FiniteRing>
where
    F: Fn(&FiniteRing) -> bool + Sync,
{
    let branches = Search::new(group, axioms).branches();
    (0..branches).into_par_iter().find_map_first(|k| {
        let mut hit = None;
        Search::new(group, axioms).subtree(k, &mut |r| {
            if accept(&r) {
                hit = Some(r);
                true
            } else {
                false
            }
        });
        hit
    })
}

pub fn search_rings(group: &AbelianGroupTable, axioms: &AxiomSet, mode: SearchMode) -> SearchResult {
    let (count, rings) = match mode {
        SearchMode::Count => (count_rings(group, axioms), Vec::new()),
        SearchMode::Collect => {
            let rings = collect_rings(group, axioms);
            (rings.len() as u64, rings)
        }
        SearchMode::FirstNoncommutative => {
            let rings: Vec<FiniteRing> = find_ring(group, axioms, |r| !r.is_commutative()).into_iter().collect();
            (rings.len() as u64, rings)
        }
    };
    SearchResult { mode, count, rings }
}

/// A ring and an assignment of its elements to the goal's variables.
pub type Counterexample = (FiniteRing, Vec<(String, u8)>);

/// Smallest-order ring satisfying `axioms` in which `goal` fails, with the
/// violating assignment.
pub fn find_counterexample(axioms: &AxiomSet, goal: &Statement, max_order: usize) -> Result<Option<Counterexample>, ModelError> {
    if max_order > MAX_ORDER {
        return Err(ModelError::OrderOutOfRange(max_order));
    }
    let compiled = CompiledStatement::new(goal)?;
    for m in 1..=max_order {
        for group in enumerate_abelian_groups(m)? {
            if let Some(ring) = find_ring(&group, axioms, |r| r.counterexample(&compiled).is_some()) {
                let vals = ring.counterexample(&compiled).expect("accepted");
                let witness = goal.vars().iter().cloned().zip(vals).collect();
                return Ok(Some((ring, witness)));
            }
        }
    }
    Ok(None)
}
