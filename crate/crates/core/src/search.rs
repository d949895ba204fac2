//! Exhaustive depth-first search over the binary decision tree.
//!
//! Every decision is tried with `α` first, then `β`. A solution is
//! recorded whenever a freshly labelled row has no `0`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::grid::VertexSet;
use crate::initial::InitialCondition;
use crate::label::LabelRow;
use crate::solution::{PdsSolution, SolutionJson};
use crate::theta::{expand_level, tau, Choice, Decision};

/// Search parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest grid height `n` considered.
    pub n_max: usize,
    /// Keep descending below a completed row. A completed row followed by
    /// more levels can complete again, giving a taller PDS on the same branch.
    pub continue_past_completion: bool,
    /// Explore the top of the tree on the rayon pool.
    pub parallel: bool,
}

impl SearchOptions {
    pub fn new(n_max: usize) -> Self {
        SearchOptions { n_max, continue_past_completion: true, parallel: false }
    }
}

/// A vertex of the decision tree: the path so far and the rows it produced.
#[derive(Debug, Clone)]
pub struct SearchNode {
    pub path: Vec<Decision>,
    pub rows: Vec<LabelRow>,
}

impl SearchNode {
    pub fn level(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn choices(&self) -> Vec<Choice> {
        self.path.iter().map(|d| d.choice).collect()
    }
}

/// Result of an exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub m: usize,
    pub n_max: usize,
    /// Distinct solutions in discovery order, each with its first trace.
    pub solutions: Vec<PdsSolution>,
    /// Further traces reaching `solutions[k]`, indexed like `solutions`.
    pub alternate_traces: Vec<Vec<Vec<Decision>>>,
    /// Decision-tree vertices visited, counting the root.
    pub nodes_expanded: usize,
    /// Largest number of decisions on any explored path.
    pub max_depth: usize,
}

impl EnumerationReport {
    /// Solutions ordered by `(n, vertex set)`.
    pub fn canonical(&self) -> Vec<&PdsSolution> {
        let mut v: Vec<&PdsSolution> = self.solutions.iter().collect();
        v.sort_by(|a, b| (a.n(), &a.vertices).cmp(&(b.n(), &b.vertices)));
        v
    }

    pub fn vertex_sets(&self) -> Vec<VertexSet> {
        let mut v: Vec<VertexSet> = self.solutions.iter().map(|s| s.vertices.clone()).collect();
        v.sort();
        v
    }

    pub fn to_json(&self) -> ReportJson {
        ReportJson {
            m: self.m,
            n_max: self.n_max,
            nodes_expanded: self.nodes_expanded,
            max_depth: self.max_depth,
            counts: count_by_n(self),
            solutions: self.solutions.iter().map(PdsSolution::to_json).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportJson {
    pub m: usize,
    pub n_max: usize,
    pub nodes_expanded: usize,
    pub max_depth: usize,
    pub counts: BTreeMap<usize, usize>,
    pub solutions: Vec<SolutionJson>,
}

#[derive(Default)]
struct Partial {
    found: Vec<PdsSolution>,
    nodes: usize,
    max_depth: usize,
}

impl Partial {
    fn absorb(&mut self, other: Partial) {
        self.found.extend(other.found);
        self.nodes += other.nodes;
        self.max_depth = self.max_depth.max(other.max_depth);
    }
}

/// Levels near the root handed to the thread pool.
const PARALLEL_LEVELS: usize = 3;

fn explore(node: SearchNode, opts: &SearchOptions) -> Partial {
    let mut part = Partial { max_depth: node.path.len(), ..Partial::default() };
    if node.rows.len() >= opts.n_max {
        return part;
    }
    let last = node.rows.len() - 1;
    let prev = last.checked_sub(1).map(|p| &node.rows[p]);
    let (expansions, nodes) = expand_level(&node.rows[last], prev);
    part.nodes += nodes;

    let mut children = Vec::with_capacity(expansions.len());
    for adv in expansions {
        let complete = tau(&adv.next) == 0;
        let mut child = SearchNode { path: node.path.clone(), rows: node.rows.clone() };
        child.path.extend(adv.decisions);
        child.rows.push(adv.next);
        part.max_depth = part.max_depth.max(child.path.len());
        if complete {
            let sol = PdsSolution::from_rows(&child.rows, child.path.clone()).expect("rows are nonempty");
            part.found.push(sol);
            if !opts.continue_past_completion {
                continue;
            }
        }
        children.push(child);
    }

    let results: Vec<Partial> = if opts.parallel && node.rows.len() <= PARALLEL_LEVELS {
        children.into_par_iter().map(|c| explore(c, opts)).collect()
    } else {
        children.into_iter().map(|c| explore(c, opts)).collect()
    };
    for r in results {
        part.absorb(r);
    }
    part
}

/// All PDSs of `Γ(m,j)`, `2 ≤ j ≤ n_max`, whose top row is the IAVS.
pub fn enumerate_all(initial: &InitialCondition, n_max: usize) -> EnumerationReport {
    enumerate_from_row(initial.row(), &SearchOptions::new(n_max))
}

/// Search seeded by an arbitrary level-0 row, such as a complete slice.
pub fn enumerate_from_row(row0: LabelRow, opts: &SearchOptions) -> EnumerationReport {
    let m = row0.m();
    let root = SearchNode { path: Vec::new(), rows: vec![row0.with_level(0)] };
    let part = explore(root, opts);

    let mut index: HashMap<VertexSet, usize> = HashMap::new();
    let mut solutions = Vec::new();
    let mut alternate_traces: Vec<Vec<Vec<Decision>>> = Vec::new();
    for sol in part.found {
        match index.get(&sol.vertices) {
            Some(&k) => alternate_traces[k].push(sol.trace),
            None => {
                index.insert(sol.vertices.clone(), solutions.len());
                solutions.push(sol);
                alternate_traces.push(Vec::new());
            }
        }
    }
    EnumerationReport {
        m,
        n_max: opts.n_max,
        solutions,
        alternate_traces,
        nodes_expanded: part.nodes + 1,
        max_depth: part.max_depth,
    }
}

/// Number of distinct solutions per grid height.
pub fn count_by_n(report: &EnumerationReport) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for s in &report.solutions {
        *out.entry(s.n()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::is_pds;
    use crate::theta::{run_theta, Strategy};

    #[test]
    fn four_column_example_has_both_heights() {
        let init = InitialCondition::new(4, &[1]).unwrap();
        let report = enumerate_all(&init, 4);
        let counts = count_by_n(&report);
        assert!(counts[&3] >= 1 && counts[&4] >= 1, "{counts:?}");
        assert!(report.solutions.iter().all(|s| is_pds(&s.vertices)));
    }

    #[test]
    fn first_solution_is_greedy() {
        let init = InitialCondition::new(4, &[1]).unwrap();
        let report = enumerate_all(&init, 6);
        let greedy = run_theta(&init, &Strategy::AllAlpha, 6);
        assert_eq!(Some(&report.solutions[0]), greedy.solution());
    }

    #[test]
    fn empty_report_counts_nothing() {
        let init = InitialCondition::new(4, &[1]).unwrap();
        let report = enumerate_all(&init, 1);
        assert!(report.solutions.is_empty());
        assert!(count_by_n(&report).is_empty());
        assert_eq!(report.nodes_expanded, 1);
    }

    #[test]
    fn parallel_matches_sequential() {
        let init = InitialCondition::new(7, &[2, 3]).unwrap();
        let seq = enumerate_from_row(init.row(), &SearchOptions::new(9));
        let par = enumerate_from_row(init.row(), &SearchOptions { parallel: true, ..SearchOptions::new(9) });
        assert_eq!(seq, par);
    }

    #[test]
    fn node_bound() {
        let init = InitialCondition::new(6, &[0, 4]).unwrap();
        let report = enumerate_all(&init, 8);
        assert!(report.nodes_expanded <= 1 << (report.max_depth + 1));
    }
}
