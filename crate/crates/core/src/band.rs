//! Band graphs `Γ(m,∞)`: greedy runs, periods, and the memoized transition
//! graph standing in for the pruned threaded decision tree.
//!
//! A row word fully determines every later row once the decisions are
//! fixed, so the tree can be folded onto its distinct words. An edge that
//! reaches an already discovered word is a thread.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::initial::InitialCondition;
use crate::label::LabelRow;
use crate::solution::PdsSolution;
use crate::theta::{advance_level, expand_level, label_table_from_row, tau, Choice, Decision, Strategy};

/// A repetition `row(k) = row(k+ℓ)` in a run, with the slices of one period.
#[derive(Debug, Clone)]
pub struct PeriodCertificate {
    pub k: usize,
    pub period: usize,
    /// Rows `k .. k+ℓ`.
    pub slices: Vec<LabelRow>,
    /// Strategy that produced the run.
    pub strategy: Strategy,
}

#[derive(Debug, Clone)]
pub enum BandOutcome {
    Finite(PdsSolution),
    Periodic(PeriodCertificate),
}

impl BandOutcome {
    pub fn is_finite(&self) -> bool {
        matches!(self, BandOutcome::Finite(_))
    }
}

/// Runs the all-`α` strategy until `τ = 0` or the first repeated row word.
///
/// The word set is finite, so the run always stops; `row_cap` is a safety
/// net and [`Error::RowCap`] is returned if it is reached.
pub fn greedy_band(initial: &InitialCondition, row_cap: usize) -> Result<BandOutcome> {
    greedy_band_from_row(initial.row(), row_cap)
}

pub fn greedy_band_from_row(row0: LabelRow, row_cap: usize) -> Result<BandOutcome> {
    let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut rows = vec![row0.with_level(0)];
    let mut trace = Vec::new();
    seen.insert(rows[0].labels().to_vec(), 0);
    let mut alpha = |_: &_| Some(Choice::Alpha);
    while rows.len() < row_cap {
        let adv = advance_level(rows.last().expect("nonempty"), None, &mut alpha).expect("α always answers");
        trace.extend(adv.decisions);
        let complete = tau(&adv.next) == 0;
        let level = adv.next.level;
        let key = adv.next.labels().to_vec();
        rows.push(adv.next);
        if complete {
            return Ok(BandOutcome::Finite(PdsSolution::from_rows(&rows, trace)?));
        }
        if let Some(&k) = seen.get(&key) {
            let slices = rows[k..level].to_vec();
            return Ok(BandOutcome::Periodic(PeriodCertificate {
                k,
                period: level - k,
                slices,
                strategy: Strategy::AllAlpha,
            }));
        }
        seen.insert(key, level);
    }
    Err(Error::RowCap(row_cap))
}

/// Replays the certificate's strategy from `row0` and checks that the words
/// at levels `k` and `k+ℓ` agree.
pub fn verify_period(cert: &PeriodCertificate, row0: &LabelRow) -> bool {
    if cert.period == 0 {
        return false;
    }
    let needed = cert.k + cert.period + 1;
    match label_table_from_row(row0.clone(), &cert.strategy, needed) {
        Ok((rows, _)) => rows[cert.k].labels() == rows[cert.k + cert.period].labels(),
        Err(_) => false,
    }
}

/// Outcome of scanning every IAVS of one width with [`greedy_band`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyScan {
    pub m: usize,
    pub finite: usize,
    /// IAVS (as column lists) whose greedy run never completes.
    pub periodic: Vec<Vec<usize>>,
}

/// Greedy runs for every IAVS of width `m`, spread over the rayon pool.
pub fn greedy_scan(m: usize) -> Result<GreedyScan> {
    let inits = InitialCondition::all(m);
    let cap = usize::MAX;
    let outcomes: Vec<(Vec<usize>, bool)> = inits
        .par_iter()
        .map(|init| greedy_band(init, cap).map(|o| (init.columns().to_vec(), o.is_finite())))
        .collect::<Result<_>>()?;
    let finite = outcomes.iter().filter(|(_, f)| *f).count();
    let periodic = outcomes.into_iter().filter(|(_, f)| !*f).map(|(c, _)| c).collect();
    Ok(GreedyScan { m, finite, periodic })
}

/// A distinct row word of the band.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphNode {
    /// The word, carrying the level at which it was first reached.
    pub row: LabelRow,
    /// The word has no `0`: a finite PDS ends here.
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    /// Decisions taken during this one-level advance, possibly none.
    pub decisions: Vec<Decision>,
    /// Reaches a word discovered earlier (a back, forward or cross edge of
    /// the depth-first exploration).
    pub thread: bool,
}

impl GraphEdge {
    pub fn choices(&self) -> Vec<Choice> {
        self.decisions.iter().map(|d| d.choice).collect()
    }
}

/// The memoized decision graph of a band run.
#[derive(Debug, Clone)]
pub struct TransitionGraph {
    pub m: usize,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
    /// Outgoing edge indices per node, `α`-first.
    pub out: Vec<Vec<usize>>,
    pub root: usize,
    /// `false` when exploration stopped at the state cap.
    pub complete: bool,
}

impl TransitionGraph {
    pub fn node_words(&self) -> BTreeSet<String> {
        self.nodes.iter().map(|n| n.row.word()).collect()
    }

    pub fn threads(&self) -> impl Iterator<Item = &GraphEdge> {
        self.edges.iter().filter(|e| e.thread)
    }

    /// Words lying on at least one directed cycle.
    pub fn cycle_words(&self) -> BTreeSet<String> {
        let scc = strongly_connected(self.nodes.len(), &self.out, &self.edges);
        let mut size = vec![0usize; self.nodes.len()];
        for &c in &scc {
            size[c] += 1;
        }
        let self_loop: BTreeSet<usize> = self.edges.iter().filter(|e| e.from == e.to).map(|e| e.from).collect();
        (0..self.nodes.len())
            .filter(|&v| size[scc[v]] > 1 || self_loop.contains(&v))
            .map(|v| self.nodes[v].row.word())
            .collect()
    }

    /// Graphviz rendering: solid tree edges, dashed threads.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph band {\n  node [shape=box, fontname=monospace];\n");
        for (k, n) in self.nodes.iter().enumerate() {
            let style = if n.complete { ", peripheries=2" } else { "" };
            let _ = writeln!(s, "  n{k} [label=\"{}\"{style}];", n.row.word());
        }
        for e in &self.edges {
            let label: String = e.choices().iter().map(|c| if *c == Choice::Alpha { 'α' } else { 'β' }).collect();
            let style = if e.thread { "dashed" } else { "solid" };
            let _ = writeln!(s, "  n{} -> n{} [label=\"{label}\", style={style}];", e.from, e.to);
        }
        s.push_str("}\n");
        s
    }
}

/// Tarjan's algorithm, iterative; returns a component id per node.
fn strongly_connected(n: usize, out: &[Vec<usize>], edges: &[GraphEdge]) -> Vec<usize> {
    const UNSET: usize = usize::MAX;
    let mut index = vec![UNSET; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSET; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    for start in 0..n {
        if index[start] != UNSET {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(start, 0)];
        index[start] = next_index;
        low[start] = next_index;
        next_index += 1;
        stack.push(start);
        on_stack[start] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < out[v].len() {
                let w = edges[out[v][*pos]].to;
                *pos += 1;
                if index[w] == UNSET {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

/// Explores both options at every decision from the IAVS, depth-first and
/// `α`-first, expanding each distinct word once.
pub fn build_transition_graph(initial: &InitialCondition, state_cap: usize) -> TransitionGraph {
    build_transition_graph_from_row(initial.row(), state_cap)
}

pub fn build_transition_graph_from_row(row0: LabelRow, state_cap: usize) -> TransitionGraph {
    let m = row0.m();
    let mut g = TransitionGraph { m, nodes: Vec::new(), edges: Vec::new(), out: Vec::new(), root: 0, complete: true };
    let mut ids: HashMap<Vec<u8>, usize> = HashMap::new();
    let row0 = row0.with_level(0);
    ids.insert(row0.labels().to_vec(), 0);
    g.nodes.push(GraphNode { complete: tau(&row0) == 0, row: row0 });
    g.out.push(Vec::new());

    // Explicit stack of (node, pending expansions) keeps the order depth-first.
    let mut stack: Vec<(usize, std::vec::IntoIter<crate::theta::Advance>)> = Vec::new();
    let (exp, _) = expand_level(&g.nodes[0].row, None);
    stack.push((0, exp.into_iter()));
    while let Some((u, iter)) = stack.last_mut() {
        let u = *u;
        let Some(adv) = iter.next() else {
            stack.pop();
            continue;
        };
        let key = adv.next.labels().to_vec();
        let edge_id = g.edges.len();
        match ids.get(&key) {
            Some(&v) => {
                g.edges.push(GraphEdge { from: u, to: v, decisions: adv.decisions, thread: true });
                g.out[u].push(edge_id);
            }
            None => {
                if g.nodes.len() >= state_cap {
                    g.complete = false;
                    continue;
                }
                let v = g.nodes.len();
                ids.insert(key, v);
                g.nodes.push(GraphNode { complete: tau(&adv.next) == 0, row: adv.next });
                g.out.push(Vec::new());
                g.edges.push(GraphEdge { from: u, to: v, decisions: adv.decisions, thread: false });
                g.out[u].push(edge_id);
                let (exp, _) = expand_level(&g.nodes[v].row, None);
                stack.push((v, exp.into_iter()));
            }
        }
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    /// Follow a tree edge to a newly visited word.
    Descend,
    /// Follow a thread.
    Thread,
    /// Re-walk tree edges from a thread's target back to its source.
    Replay,
    /// Back up a tree edge.
    Ascend,
    /// Back up a thread whose target is not an ancestor.
    Return,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkStep {
    pub kind: StepKind,
    pub edge: usize,
}

/// A closed itinerary through the threaded tree starting and ending at the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedWalk {
    pub steps: Vec<WalkStep>,
}

impl ClosedWalk {
    /// Node sequence of the itinerary, starting at the root.
    pub fn positions(&self, g: &TransitionGraph) -> Vec<usize> {
        let mut pos = vec![g.root];
        for s in &self.steps {
            let e = &g.edges[s.edge];
            pos.push(match s.kind {
                StepKind::Descend | StepKind::Thread | StepKind::Replay => e.to,
                StepKind::Ascend | StepKind::Return => e.from,
            });
        }
        pos
    }

    pub fn visited_words(&self, g: &TransitionGraph) -> BTreeSet<String> {
        self.positions(g).into_iter().map(|v| g.nodes[v].row.word()).collect()
    }
}

/// Lexicographic (`α` before `β`) traversal of the threaded tree.
///
/// Every thread is followed when met. A thread back to an ancestor closes a
/// cycle that the descent has just covered, and the walk replays the tree
/// path to resume at the thread's source. Trailing moves that only bring
/// the walk home without covering anything new are dropped.
pub fn closed_walk(g: &TransitionGraph) -> Result<ClosedWalk> {
    if !g.complete {
        return Err(Error::IncompleteGraph(g.nodes.len()));
    }
    let mut parent_edge: Vec<Option<usize>> = vec![None; g.nodes.len()];
    for (k, e) in g.edges.iter().enumerate() {
        if !e.thread {
            parent_edge[e.to] = Some(k);
        }
    }
    let mut steps = Vec::new();
    let mut on_path = vec![false; g.nodes.len()];
    walk_from(g, g.root, &parent_edge, &mut on_path, &mut steps);

    // Drop the tail after the last return to the root that adds no new edge.
    let mut cut = steps.len();
    let mut useful_since_root = false;
    for (k, s) in steps.iter().enumerate() {
        let e = &g.edges[s.edge];
        if matches!(s.kind, StepKind::Descend | StepKind::Thread) {
            useful_since_root = true;
        }
        let pos = match s.kind {
            StepKind::Descend | StepKind::Thread | StepKind::Replay => e.to,
            StepKind::Ascend | StepKind::Return => e.from,
        };
        if pos == g.root && useful_since_root {
            cut = k + 1;
            useful_since_root = false;
        }
    }
    if !useful_since_root {
        steps.truncate(cut);
    }
    Ok(ClosedWalk { steps })
}

fn walk_from(
    g: &TransitionGraph,
    u: usize,
    parent_edge: &[Option<usize>],
    on_path: &mut [bool],
    steps: &mut Vec<WalkStep>,
) {
    on_path[u] = true;
    for &k in &g.out[u] {
        let e = &g.edges[k];
        if !e.thread {
            steps.push(WalkStep { kind: StepKind::Descend, edge: k });
            walk_from(g, e.to, parent_edge, on_path, steps);
            steps.push(WalkStep { kind: StepKind::Ascend, edge: k });
        } else {
            steps.push(WalkStep { kind: StepKind::Thread, edge: k });
            if on_path[e.to] {
                let mut path = Vec::new();
                let mut v = u;
                while v != e.to {
                    let pe = parent_edge[v].expect("non-root nodes have a tree parent");
                    path.push(pe);
                    v = g.edges[pe].from;
                }
                steps.extend(path.into_iter().rev().map(|edge| WalkStep { kind: StepKind::Replay, edge }));
            } else {
                steps.push(WalkStep { kind: StepKind::Return, edge: k });
            }
        }
    }
    on_path[u] = false;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_run_agrees_with_theta_prefix() {
        let init = InitialCondition::new(7, &[3]).unwrap();
        let out = greedy_band(&init, 1000).unwrap();
        let reference = crate::theta::run_theta(&init, &Strategy::AllAlpha, 1000);
        match out {
            BandOutcome::Finite(sol) => assert_eq!(Some(&sol), reference.solution()),
            BandOutcome::Periodic(cert) => {
                assert!(verify_period(&cert, &init.row()));
                let rows = reference.rows();
                assert_eq!(rows[cert.k].labels(), rows[cert.k + cert.period].labels());
            }
        }
    }

    #[test]
    fn small_widths_terminate() {
        for m in 3..=4 {
            for init in InitialCondition::all(m) {
                let cap = 5usize.pow(m as u32) + 2;
                assert!(greedy_band(&init, cap).is_ok());
            }
        }
    }

    #[test]
    fn graph_is_finite_and_walk_covers_it() {
        let init = InitialCondition::new(3, &[0]).unwrap();
        let g = build_transition_graph(&init, 10_000);
        assert!(g.complete);
        let walk = closed_walk(&g).unwrap();
        assert_eq!(walk.visited_words(&g), g.node_words());
        assert_eq!(*walk.positions(&g).last().unwrap(), g.root);
    }

    #[test]
    fn single_cycle_is_walked_once() {
        // "22" alternates with "44" under α/β; restrict to a hand-made graph instead.
        let a = LabelRow::parse(0, "22").unwrap();
        let b = LabelRow::parse(1, "44").unwrap();
        let g = TransitionGraph {
            m: 2,
            nodes: vec![GraphNode { row: a, complete: true }, GraphNode { row: b, complete: true }],
            edges: vec![
                GraphEdge { from: 0, to: 1, decisions: vec![], thread: false },
                GraphEdge { from: 1, to: 0, decisions: vec![], thread: true },
            ],
            out: vec![vec![0], vec![1]],
            root: 0,
            complete: true,
        };
        let walk = closed_walk(&g).unwrap();
        assert_eq!(
            walk.steps,
            vec![WalkStep { kind: StepKind::Descend, edge: 0 }, WalkStep { kind: StepKind::Thread, edge: 1 }]
        );
    }

    #[test]
    fn capped_graph_is_refused() {
        let init = InitialCondition::new(5, &[2]).unwrap();
        let g = build_transition_graph(&init, 2);
        assert!(!g.complete);
        assert_eq!(closed_walk(&g), Err(Error::IncompleteGraph(2)));
    }

    #[test]
    fn perturbed_period_fails() {
        let init = InitialCondition::new(6, &[0, 1]).unwrap();
        let row0 = init.row();
        if let BandOutcome::Periodic(mut cert) = greedy_band(&init, 10_000).unwrap() {
            assert!(verify_period(&cert, &row0));
            cert.period += 1;
            assert!(!verify_period(&cert, &row0));
        }
    }

    #[test]
    fn dot_marks_threads() {
        let init = InitialCondition::new(3, &[0]).unwrap();
        let dot = build_transition_graph(&init, 100).to_dot();
        assert!(dot.starts_with("digraph band"));
        assert!(dot.contains("style=dashed"));
    }
}
