//! Forward state-space search over a ground task.
//!
//! Two strategies: breadth-first search, which returns a shortest plan or
//! proves unsolvability over the reachable space, and greedy best-first
//! search on the goal-count heuristic, which returns some valid plan.
//! Successors are generated in ground-action index order and tie-broken
//! first-in-first-out, so plans are reproducible.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet, VecDeque};
use std::str::FromStr;

use super::ground::{GroundAction, GroundTask};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Bfs,
    GreedyGoalCount,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bfs" => Ok(Strategy::Bfs),
            "greedy-goalcount" => Ok(Strategy::GreedyGoalCount),
            other => Err(format!(
                "unknown strategy '{other}' (expected bfs or greedy-goalcount)"
            )),
        }
    }
}

/// Search limits.
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Maximum number of node expansions before giving up.
    pub node_cap: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { node_cap: 1_000_000 }
    }
}

/// A plan: ordered ground-action indices into the task. Cost is step count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plan {
    steps: Vec<usize>,
}

impl Plan {
    pub fn new(steps: Vec<usize>) -> Self {
        Plan { steps }
    }

    pub fn steps(&self) -> &[usize] {
        &self.steps
    }

    pub fn cost(&self) -> usize {
        self.steps.len()
    }

    pub fn actions<'t>(&self, task: &'t GroundTask) -> Vec<&'t GroundAction> {
        self.steps.iter().map(|&i| &task.actions[i]).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(Plan),
    Unsolvable,
    ResourceLimit { expanded: usize },
}

type State = Vec<u32>;

fn is_applicable(state: &State, action: &GroundAction) -> bool {
    subset(&action.pre_pos, state) && disjoint(&action.pre_neg, state)
}

fn subset(needle: &[u32], hay: &[u32]) -> bool {
    let mut it = hay.iter();
    'outer: for n in needle {
        for h in it.by_ref() {
            match h.cmp(n) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

fn disjoint(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

/// `(state - del) + add`, all slices sorted.
fn apply(state: &State, action: &GroundAction) -> State {
    let mut out = Vec::with_capacity(state.len() + action.add.len());
    for &s in state {
        if action.del.binary_search(&s).is_err() {
            out.push(s);
        }
    }
    for &a in &action.add {
        if let Err(pos) = out.binary_search(&a) {
            out.insert(pos, a);
        }
    }
    out
}

fn satisfies_goal(task: &GroundTask, state: &State) -> bool {
    subset(&task.goal_pos, state) && disjoint(&task.goal_neg, state)
}

/// Unsatisfied goal literal count.
fn goal_distance(task: &GroundTask, state: &State) -> u32 {
    let mut h = 0;
    for g in &task.goal_pos {
        if state.binary_search(g).is_err() {
            h += 1;
        }
    }
    for g in &task.goal_neg {
        if state.binary_search(g).is_ok() {
            h += 1;
        }
    }
    h
}

struct Node {
    state: State,
    parent: usize,
    action: usize,
}

fn reconstruct(nodes: &[Node], mut idx: usize) -> Plan {
    let mut steps = Vec::new();
    while nodes[idx].parent != usize::MAX {
        steps.push(nodes[idx].action);
        idx = nodes[idx].parent;
    }
    steps.reverse();
    Plan::new(steps)
}

/// Solve a ground task with the chosen strategy.
pub fn solve(task: &GroundTask, strategy: Strategy, opts: &SolveOptions) -> SolveOutcome {
    match strategy {
        Strategy::Bfs => bfs(task, opts),
        Strategy::GreedyGoalCount => greedy(task, opts),
    }
}

fn bfs(task: &GroundTask, opts: &SolveOptions) -> SolveOutcome {
    let init: State = task.init.clone();
    if satisfies_goal(task, &init) {
        return SolveOutcome::Solved(Plan::new(Vec::new()));
    }

    let mut nodes = vec![Node { state: init.clone(), parent: usize::MAX, action: 0 }];
    let mut visited: HashSet<State> = HashSet::from([init]);
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    let mut expanded = 0usize;

    while let Some(idx) = queue.pop_front() {
        if expanded >= opts.node_cap {
            return SolveOutcome::ResourceLimit { expanded };
        }
        expanded += 1;
        for (ai, action) in task.actions.iter().enumerate() {
            if !is_applicable(&nodes[idx].state, action) {
                continue;
            }
            let next = apply(&nodes[idx].state, action);
            if visited.contains(&next) {
                continue;
            }
            let node_idx = nodes.len();
            nodes.push(Node { state: next.clone(), parent: idx, action: ai });
            if satisfies_goal(task, &next) {
                return SolveOutcome::Solved(reconstruct(&nodes, node_idx));
            }
            visited.insert(next);
            queue.push_back(node_idx);
        }
    }
    SolveOutcome::Unsolvable
}

fn greedy(task: &GroundTask, opts: &SolveOptions) -> SolveOutcome {
    let init: State = task.init.clone();
    let mut nodes = vec![Node { state: init.clone(), parent: usize::MAX, action: 0 }];
    let mut visited: HashSet<State> = HashSet::from([init.clone()]);
    let mut heap: BinaryHeap<Reverse<(u32, u64, usize)>> = BinaryHeap::new();
    let mut seq = 0u64;
    heap.push(Reverse((goal_distance(task, &init), seq, 0)));
    let mut expanded = 0usize;

    while let Some(Reverse((h, _, idx))) = heap.pop() {
        if h == 0 && satisfies_goal(task, &nodes[idx].state) {
            return SolveOutcome::Solved(reconstruct(&nodes, idx));
        }
        if expanded >= opts.node_cap {
            return SolveOutcome::ResourceLimit { expanded };
        }
        expanded += 1;
        for (ai, action) in task.actions.iter().enumerate() {
            if !is_applicable(&nodes[idx].state, action) {
                continue;
            }
            let next = apply(&nodes[idx].state, action);
            if visited.contains(&next) {
                continue;
            }
            visited.insert(next.clone());
            let node_idx = nodes.len();
            let h = goal_distance(task, &next);
            nodes.push(Node { state: next, parent: idx, action: ai });
            seq += 1;
            heap.push(Reverse((h, seq, node_idx)));
        }
    }
    SolveOutcome::Unsolvable
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pddl::ast::*;
    use crate::planner::ground::{ground, GroundOptions};

    fn id(s: &str) -> Ident {
        Ident::parse(s).unwrap()
    }

    /// A chain domain: `step i` moves a token from slot i to slot i+1.
    fn chain_task(len: usize) -> GroundTask {
        let mut d = PddlDomain::empty(id("chain"));
        d.predicates.push(Predicate {
            name: id("tok"),
            params: vec![Param { var: id("s"), ty: Ident::object() }],
        });
        let mut p = PddlProblem::new(id("p"), id("chain"));
        for i in 0..=len {
            p.objects.insert(id(&format!("s{i}")), Ident::object());
        }
        for i in 0..len {
            d.actions.push(ActionSchema {
                name: id(&format!("step{i}")),
                params: vec![],
                precondition: vec![Literal::positive(
                    id("tok"),
                    vec![Term::Const(id(&format!("s{i}")))],
                )],
                effect: vec![
                    Literal::negative(id("tok"), vec![Term::Const(id(&format!("s{i}")))]),
                    Literal::positive(id("tok"), vec![Term::Const(id(&format!("s{}", i + 1)))]),
                ],
            });
        }
        p.init.insert(GroundAtom { predicate: id("tok"), args: vec![id("s0")] });
        p.goal.push(Literal::positive(
            id("tok"),
            vec![Term::Const(id(&format!("s{len}")))],
        ));
        ground(&d, &p, &GroundOptions::default()).unwrap()
    }

    #[test]
    fn satisfied_goal_yields_empty_plan() {
        let task = chain_task(0);
        match solve(&task, Strategy::Bfs, &SolveOptions::default()) {
            SolveOutcome::Solved(plan) => assert_eq!(plan.cost(), 0),
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn bfs_finds_the_shortest_chain() {
        let task = chain_task(5);
        match solve(&task, Strategy::Bfs, &SolveOptions::default()) {
            SolveOutcome::Solved(plan) => assert_eq!(plan.cost(), 5),
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn greedy_also_solves_the_chain() {
        let task = chain_task(5);
        match solve(&task, Strategy::GreedyGoalCount, &SolveOptions::default()) {
            SolveOutcome::Solved(plan) => assert_eq!(plan.cost(), 5),
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn unreachable_goal_is_unsolvable() {
        let mut task = chain_task(3);
        // a goal atom no action adds and init lacks
        let ghost = task.atoms.len() as u32;
        task.atoms.push(GroundAtom { predicate: id("tok"), args: vec![id("ghost")] });
        task.goal_pos = vec![ghost];
        assert_eq!(
            solve(&task, Strategy::Bfs, &SolveOptions::default()),
            SolveOutcome::Unsolvable
        );
    }

    #[test]
    fn node_cap_stops_search() {
        let task = chain_task(8);
        match solve(&task, Strategy::Bfs, &SolveOptions { node_cap: 2 }) {
            SolveOutcome::ResourceLimit { expanded } => assert_eq!(expanded, 2),
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn plans_are_reproducible() {
        let task = chain_task(4);
        let a = solve(&task, Strategy::Bfs, &SolveOptions::default());
        let b = solve(&task, Strategy::Bfs, &SolveOptions::default());
        assert_eq!(a, b);
    }
}
