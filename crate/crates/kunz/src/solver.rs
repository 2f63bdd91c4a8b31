//! Exact branch-and-bound for small bounded integer linear programs.
//!
//! The solver is self-contained: depth-first search over variable domains
//! with incremental activity-based bound propagation, an objective cut from
//! the incumbent, and three entry points:
//!
//! * [`solve`] — one optimum with proof of optimality;
//! * [`enumerate_optima`] — the complete set of optimal solutions, found by
//!   re-running the search with the objective pinned to the optimal value
//!   and collecting every feasible leaf;
//! * [`solve_lex_max`] — the optimum whose full variable vector is
//!   lexicographically greatest, used as the canonical tie-break by the
//!   decomposition pipelines.
//!
//! All arithmetic is integer-exact (activities in `i128`), branching is
//! smallest-domain-first with ties by lowest index and values ascending, so
//! runs are deterministic. Every returned vector is re-checked against the
//! original constraints before it leaves the solver.

use crate::model::{IntegerProgram, Relation, Sense, VarKind};
use std::collections::HashMap;
use std::time::{Duration, Instant};

/// Search budgets. `max_nodes` counts value assignments across all phases
/// of one call; `max_optima` caps the enumeration phase.
#[derive(Debug, Clone)]
pub struct SolveLimits {
    pub max_nodes: u64,
    pub max_optima: usize,
    pub time_limit: Option<Duration>,
}

impl Default for SolveLimits {
    fn default() -> Self {
        SolveLimits { max_nodes: 10_000_000, max_optima: 100_000, time_limit: None }
    }
}

impl SolveLimits {
    pub fn with_max_nodes(max_nodes: u64) -> Self {
        SolveLimits { max_nodes, ..SolveLimits::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    /// The node, time, or enumeration budget ran out before the search
    /// finished. Never silently reported as infeasible.
    AbortedLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Result of a solver call. `objective` and `witness` are present exactly
/// when the status is `Optimal`; `all_optima` only after enumeration.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub objective: Option<i64>,
    pub witness: Option<Vec<i64>>,
    pub all_optima: Option<Vec<Vec<i64>>>,
    pub stats: SolveStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverError {
    /// Dangling variable index or a binary variable with bounds outside
    /// `[0, 1]`.
    MalformedModel(String),
}

impl std::fmt::Display for SolverError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolverError::MalformedModel(msg) => write!(f, "malformed model: {msg}"),
        }
    }
}

impl std::error::Error for SolverError {}

/// Exact feasibility check of a full assignment against the original
/// program, in integer arithmetic.
pub fn check_feasible(ip: &IntegerProgram, point: &[i64]) -> bool {
    if point.len() != ip.num_vars {
        return false;
    }
    for v in 0..ip.num_vars {
        if point[v] < ip.lower[v] || point[v] > ip.upper[v] {
            return false;
        }
    }
    ip.constraints.iter().all(|c| {
        let lhs: i128 = c.terms.iter().map(|&(v, a)| a as i128 * point[v] as i128).sum();
        match c.relation {
            Relation::Le => lhs <= c.rhs as i128,
            Relation::Ge => lhs >= c.rhs as i128,
            Relation::Eq => lhs == c.rhs as i128,
        }
    })
}

/// Objective value of a full assignment, in the program's own sense.
pub fn objective_value(ip: &IntegerProgram, point: &[i64]) -> i64 {
    let v: i128 = ip.objective.iter().map(|&(v, a)| a as i128 * point[v] as i128).sum();
    i64::try_from(v).expect("objective value fits i64")
}

fn validate(ip: &IntegerProgram) -> Result<(), SolverError> {
    let n = ip.num_vars;
    if ip.lower.len() != n || ip.upper.len() != n || ip.kinds.len() != n {
        return Err(SolverError::MalformedModel("bound or kind vectors have wrong length".into()));
    }
    for v in 0..n {
        if ip.kinds[v] == VarKind::Binary && (ip.lower[v] < 0 || ip.upper[v] > 1) {
            return Err(SolverError::MalformedModel(format!(
                "binary variable {v} has bounds [{}, {}]",
                ip.lower[v], ip.upper[v]
            )));
        }
    }
    for c in &ip.constraints {
        for &(v, _) in &c.terms {
            if v >= n {
                return Err(SolverError::MalformedModel(format!("constraint references x{v}")));
            }
        }
    }
    for &(v, _) in &ip.objective {
        if v >= n {
            return Err(SolverError::MalformedModel(format!("objective references x{v}")));
        }
    }
    Ok(())
}

const INACTIVE_RHS: i128 = i128::MAX / 4;

/// A normalized row `sum(a_v * x_v) <= rhs`. `rhs` is `i128` so the
/// objective cut can start deactivated.
struct Row {
    terms: Vec<(usize, i64)>,
    rhs: i128,
}

enum Abort {
    Nodes,
    Time,
    Optima,
}

#[derive(Clone, Copy)]
enum TrailEntry {
    Lb(usize, i64),
    Ub(usize, i64),
}

enum BranchOrder {
    /// Unfixed binaries first (by index), then smallest domain with ties by
    /// lowest index; values ascending. Deciding the selection binaries
    /// before the offset variables is what makes the block-structured
    /// models propagate.
    SmallestDomain,
    /// Lowest index first, values descending; the first leaf is the
    /// lexicographically greatest feasible point.
    IndexDescending,
}

struct Search {
    n: usize,
    rows: Vec<Row>,
    var_rows: Vec<Vec<usize>>,
    binary: Vec<bool>,
    /// Binaries try their objective-preferred polarity first: 0 when the
    /// (minimize-form) objective charges for them, otherwise 1, so that
    /// selection variables commit-then-propagate.
    first_high: Vec<bool>,
    lb: Vec<i64>,
    ub: Vec<i64>,
    min_act: Vec<i128>,
    trail: Vec<TrailEntry>,
    queue: Vec<usize>,
    in_queue: Vec<bool>,
    obj_terms: Vec<(usize, i64)>,
    obj_row: Option<usize>,
    nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
}

fn aggregate(terms: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut map: HashMap<usize, i64> = HashMap::new();
    for &(v, a) in terms {
        *map.entry(v).or_insert(0) += a;
    }
    let mut out: Vec<(usize, i64)> = map.into_iter().filter(|&(_, a)| a != 0).collect();
    out.sort_unstable_by_key(|&(v, _)| v);
    out
}

impl Search {
    /// Builds the search state. `pin_objective` adds `obj == value` rows;
    /// otherwise a deactivated `obj <= rhs` cut row is installed for the
    /// incumbent to tighten.
    fn new(ip: &IntegerProgram, pin_objective: Option<i64>, limits: &SolveLimits) -> Search {
        let n = ip.num_vars;
        // Internally always minimize.
        let obj_terms: Vec<(usize, i64)> = match ip.sense {
            Sense::Minimize => aggregate(&ip.objective),
            Sense::Maximize => {
                aggregate(&ip.objective.iter().map(|&(v, a)| (v, -a)).collect::<Vec<_>>())
            }
        };
        let mut rows = Vec::new();
        for c in &ip.constraints {
            let terms = aggregate(&c.terms);
            match c.relation {
                Relation::Le => rows.push(Row { terms, rhs: c.rhs as i128 }),
                Relation::Ge => rows.push(Row {
                    terms: terms.iter().map(|&(v, a)| (v, -a)).collect(),
                    rhs: -(c.rhs as i128),
                }),
                Relation::Eq => {
                    rows.push(Row { terms: terms.clone(), rhs: c.rhs as i128 });
                    rows.push(Row {
                        terms: terms.iter().map(|&(v, a)| (v, -a)).collect(),
                        rhs: -(c.rhs as i128),
                    });
                }
            }
        }
        let mut obj_row = None;
        match pin_objective {
            Some(v) => {
                rows.push(Row { terms: obj_terms.clone(), rhs: v as i128 });
                rows.push(Row {
                    terms: obj_terms.iter().map(|&(v, a)| (v, -a)).collect(),
                    rhs: -(v as i128),
                });
            }
            None => {
                if !obj_terms.is_empty() {
                    obj_row = Some(rows.len());
                    rows.push(Row { terms: obj_terms.clone(), rhs: INACTIVE_RHS });
                }
            }
        }
        let mut var_rows = vec![Vec::new(); n];
        for (r, row) in rows.iter().enumerate() {
            for &(v, _) in &row.terms {
                var_rows[v].push(r);
            }
        }
        let lb = ip.lower.clone();
        let ub = ip.upper.clone();
        let min_act = rows
            .iter()
            .map(|row| {
                row.terms
                    .iter()
                    .map(|&(v, a)| {
                        a as i128 * if a > 0 { lb[v] as i128 } else { ub[v] as i128 }
                    })
                    .sum()
            })
            .collect();
        let num_rows = rows.len();
        let binary: Vec<bool> = ip.kinds.iter().map(|&k| k == VarKind::Binary).collect();
        let mut first_high = binary.clone();
        for &(v, a) in &obj_terms {
            if a > 0 {
                first_high[v] = false;
            }
        }
        Search {
            n,
            rows,
            var_rows,
            binary,
            first_high,
            lb,
            ub,
            min_act,
            trail: Vec::new(),
            queue: (0..num_rows).collect(),
            in_queue: vec![true; num_rows],
            obj_terms,
            obj_row,
            nodes: 0,
            max_nodes: limits.max_nodes,
            deadline: limits.time_limit.map(|d| Instant::now() + d),
        }
    }

    fn enqueue_rows_of(&mut self, v: usize) {
        for i in 0..self.var_rows[v].len() {
            let r = self.var_rows[v][i];
            if !self.in_queue[r] {
                self.in_queue[r] = true;
                self.queue.push(r);
            }
        }
    }

    /// The objective cut tightens globally mid-search, so unlike the static
    /// rows it must be re-examined at every node, not only when one of its
    /// variables changes.
    fn requeue_objective(&mut self) {
        if let Some(r) = self.obj_row {
            if self.rows[r].rhs != INACTIVE_RHS && !self.in_queue[r] {
                self.in_queue[r] = true;
                self.queue.push(r);
            }
        }
    }

    /// Tightens a lower bound; returns false on an empty domain.
    fn set_lb(&mut self, v: usize, new: i64) -> bool {
        let old = self.lb[v];
        debug_assert!(new > old);
        self.trail.push(TrailEntry::Lb(v, old));
        self.lb[v] = new;
        let delta = (new - old) as i128;
        for i in 0..self.var_rows[v].len() {
            let r = self.var_rows[v][i];
            let a = coeff_of(&self.rows[r].terms, v);
            if a > 0 {
                self.min_act[r] += a as i128 * delta;
            }
        }
        self.enqueue_rows_of(v);
        new <= self.ub[v]
    }

    /// Tightens an upper bound; returns false on an empty domain.
    fn set_ub(&mut self, v: usize, new: i64) -> bool {
        let old = self.ub[v];
        debug_assert!(new < old);
        self.trail.push(TrailEntry::Ub(v, old));
        self.ub[v] = new;
        let delta = (old - new) as i128;
        for i in 0..self.var_rows[v].len() {
            let r = self.var_rows[v][i];
            let a = coeff_of(&self.rows[r].terms, v);
            if a < 0 {
                self.min_act[r] += (-a) as i128 * delta;
            }
        }
        self.enqueue_rows_of(v);
        new >= self.lb[v]
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                TrailEntry::Lb(v, old) => {
                    let delta = (self.lb[v] - old) as i128;
                    for i in 0..self.var_rows[v].len() {
                        let r = self.var_rows[v][i];
                        let a = coeff_of(&self.rows[r].terms, v);
                        if a > 0 {
                            self.min_act[r] -= a as i128 * delta;
                        }
                    }
                    self.lb[v] = old;
                }
                TrailEntry::Ub(v, old) => {
                    let delta = (old - self.ub[v]) as i128;
                    for i in 0..self.var_rows[v].len() {
                        let r = self.var_rows[v][i];
                        let a = coeff_of(&self.rows[r].terms, v);
                        if a < 0 {
                            self.min_act[r] -= (-a) as i128 * delta;
                        }
                    }
                    self.ub[v] = old;
                }
            }
        }
    }

    /// Runs bound propagation to a fixpoint. Returns false on conflict.
    fn propagate(&mut self) -> bool {
        while let Some(r) = self.queue.pop() {
            self.in_queue[r] = false;
            let rhs = self.rows[r].rhs;
            let slack = rhs - self.min_act[r];
            if slack < 0 {
                self.clear_queue();
                return false;
            }
            for t in 0..self.rows[r].terms.len() {
                let (v, a) = self.rows[r].terms[t];
                if a > 0 {
                    let room = self.lb[v] as i128 + slack / a as i128;
                    if room < self.ub[v] as i128 {
                        if !self.set_ub(v, room as i64) {
                            self.clear_queue();
                            return false;
                        }
                    }
                } else {
                    let room = self.ub[v] as i128 - slack / (-a) as i128;
                    if room > self.lb[v] as i128 {
                        if !self.set_lb(v, room as i64) {
                            self.clear_queue();
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn clear_queue(&mut self) {
        for &r in &self.queue {
            self.in_queue[r] = false;
        }
        self.queue.clear();
    }

    fn pick_branch(&self, order: &BranchOrder) -> Option<usize> {
        match order {
            BranchOrder::SmallestDomain => {
                // Binaries first: deciding selection variables early is what
                // lets the block-structured models propagate. Integers then
                // go in index order, which keeps the search inside one
                // variable block until it is finished instead of
                // interleaving independent blocks.
                let mut first_integer = None;
                for v in 0..self.n {
                    if self.lb[v] == self.ub[v] {
                        continue;
                    }
                    if self.binary[v] {
                        return Some(v);
                    }
                    if first_integer.is_none() {
                        first_integer = Some(v);
                    }
                }
                first_integer
            }
            BranchOrder::IndexDescending => (0..self.n).find(|&v| self.lb[v] < self.ub[v]),
        }
    }

    fn assignment(&self) -> Vec<i64> {
        debug_assert!((0..self.n).all(|v| self.lb[v] == self.ub[v]));
        self.lb.clone()
    }

    fn tick(&mut self) -> Result<(), Abort> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Abort::Nodes);
        }
        if self.nodes % 1024 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    return Err(Abort::Time);
                }
            }
        }
        if std::env::var_os("KUNZ_SOLVER_TRACE").is_some() && self.nodes % 200_000 == 0 {
            let fixed: Vec<(usize, i64)> = (0..self.n)
                .filter(|&v| self.lb[v] == self.ub[v] && self.binary[v])
                .map(|v| (v, self.lb[v]))
                .collect();
            eprintln!(
                "trace: nodes {} trail {} fixed-binaries {:?}",
                self.nodes,
                self.trail.len(),
                &fixed[..fixed.len().min(40)]
            );
        }
        Ok(())
    }

    /// Depth-first search. `on_leaf` sees every fully fixed feasible point
    /// reached under the current rows; it may tighten the objective row or
    /// report completion by returning `Done`.
    fn dfs(
        &mut self,
        order: &BranchOrder,
        on_leaf: &mut dyn FnMut(&mut Search) -> Result<LeafSignal, Abort>,
    ) -> Result<LeafSignal, Abort> {
        let Some(v) = self.pick_branch(order) else {
            return on_leaf(self);
        };
        // General integers run ascending; binaries start at their preferred
        // polarity. The lexicographic mode always descends.
        let descending = match order {
            BranchOrder::SmallestDomain => self.first_high[v],
            BranchOrder::IndexDescending => true,
        };
        let node_mark = self.trail.len();
        loop {
            // Current endpoint of the (possibly re-tightened) domain.
            let (lo, hi) = (self.lb[v], self.ub[v]);
            let val = if descending { hi } else { lo };
            self.tick()?;
            let mark = self.trail.len();
            let ok = (val == lo || self.set_lb(v, val)) && (val == hi || self.set_ub(v, val));
            if ok {
                self.requeue_objective();
            }
            if ok && self.propagate() {
                match self.dfs(order, on_leaf) {
                    Ok(LeafSignal::Done) => return Ok(LeafSignal::Done),
                    Ok(LeafSignal::Continue) => {}
                    Err(e) => {
                        self.undo_to(node_mark);
                        return Err(e);
                    }
                }
            } else {
                self.clear_queue();
            }
            self.undo_to(mark);
            // The value is exhausted: exclude it for the rest of this node
            // and re-propagate, so runs of hopeless values are skipped by
            // bound arithmetic instead of being enumerated one by one.
            if lo == hi {
                break;
            }
            let shrunk =
                if descending { self.set_ub(v, val - 1) } else { self.set_lb(v, val + 1) };
            if !shrunk {
                self.clear_queue();
                break;
            }
            self.requeue_objective();
            if !self.propagate() {
                break;
            }
            if self.lb[v] > self.ub[v] {
                break;
            }
        }
        self.undo_to(node_mark);
        Ok(LeafSignal::Continue)
    }

    fn objective_of(&self, point: &[i64]) -> i128 {
        self.obj_terms.iter().map(|&(v, a)| a as i128 * point[v] as i128).sum()
    }
}

#[derive(PartialEq, Eq, Clone, Copy)]
enum LeafSignal {
    Continue,
    Done,
}

fn coeff_of(terms: &[(usize, i64)], v: usize) -> i64 {
    terms[terms.binary_search_by_key(&v, |&(w, _)| w).unwrap()].1
}

fn outcome(
    status: SolveStatus,
    objective: Option<i64>,
    witness: Option<Vec<i64>>,
    all_optima: Option<Vec<Vec<i64>>>,
    nodes: u64,
    start: Instant,
) -> SolveOutcome {
    SolveOutcome { status, objective, witness, all_optima, stats: SolveStats { nodes, elapsed: start.elapsed() } }
}

/// Internal minimize-form optimum: value and one witness.
fn solve_min(
    ip: &IntegerProgram,
    limits: &SolveLimits,
    budget: u64,
) -> Result<(Option<(i128, Vec<i64>)>, u64, Option<Abort>), SolverError> {
    validate(ip)?;
    if (0..ip.num_vars).any(|v| ip.lower[v] > ip.upper[v]) {
        return Ok((None, 0, None));
    }
    let mut search = Search::new(ip, None, &SolveLimits { max_nodes: budget, ..limits.clone() });
    if !search.propagate() {
        return Ok((None, search.nodes, None));
    }
    let mut best: Option<(i128, Vec<i64>)> = None;
    let result = {
        let best_ref = &mut best;
        search.dfs(&BranchOrder::SmallestDomain, &mut |s: &mut Search| {
            let point = s.assignment();
            let value = s.objective_of(&point);
            debug_assert!(best_ref.as_ref().map_or(true, |(v, _)| value < *v));
            if let Some(r) = s.obj_row {
                s.rows[r].rhs = value - 1;
                // Re-examine the tightened cut everywhere in the tree.
                if !s.in_queue[r] {
                    s.in_queue[r] = true;
                    s.queue.push(r);
                }
            }
            *best_ref = Some((value, point));
            if s.obj_row.is_none() {
                // Pure feasibility: the first point is already optimal.
                return Ok(LeafSignal::Done);
            }
            Ok(LeafSignal::Continue)
        })
    };
    match result {
        Ok(_) => Ok((best, search.nodes, None)),
        Err(abort) => Ok((best, search.nodes, Some(abort))),
    }
}

/// Finds one optimal solution of a bounded integer program, or proves
/// infeasibility, within the given budgets.
pub fn solve(ip: &IntegerProgram, limits: &SolveLimits) -> Result<SolveOutcome, SolverError> {
    let start = Instant::now();
    let (best, nodes, abort) = solve_min(ip, limits, limits.max_nodes)?;
    if abort.is_some() {
        return Ok(outcome(SolveStatus::AbortedLimit, None, None, None, nodes, start));
    }
    match best {
        None => Ok(outcome(SolveStatus::Infeasible, None, None, None, nodes, start)),
        Some((value, point)) => {
            assert!(check_feasible(ip, &point), "witness failed the integer re-check");
            let signed = match ip.sense {
                Sense::Minimize => value,
                Sense::Maximize => -value,
            };
            Ok(outcome(
                SolveStatus::Optimal,
                Some(i64::try_from(signed).expect("objective fits i64")),
                Some(point),
                None,
                nodes,
                start,
            ))
        }
    }
}

/// Finds the optimal value and the complete set of optimal solutions,
/// sorted lexicographically. The first pass proves the optimal value; the
/// second re-runs the search with the objective pinned to it, pruning only
/// on infeasibility and collecting every leaf.
pub fn enumerate_optima(
    ip: &IntegerProgram,
    limits: &SolveLimits,
) -> Result<SolveOutcome, SolverError> {
    let start = Instant::now();
    let (best, nodes1, abort) = solve_min(ip, limits, limits.max_nodes)?;
    if abort.is_some() {
        return Ok(outcome(SolveStatus::AbortedLimit, None, None, None, nodes1, start));
    }
    let Some((internal, _)) = best else {
        return Ok(outcome(SolveStatus::Infeasible, None, None, None, nodes1, start));
    };
    let remaining = limits.max_nodes.saturating_sub(nodes1);
    // The pinned rows are built from the internally minimized objective.
    let mut search = Search::new(
        ip,
        Some(i64::try_from(internal).expect("objective fits i64")),
        &SolveLimits { max_nodes: remaining, ..limits.clone() },
    );
    let mut found: Vec<Vec<i64>> = Vec::new();
    let max_optima = limits.max_optima;
    let result = if search.propagate() {
        let found_ref = &mut found;
        search.dfs(&BranchOrder::SmallestDomain, &mut |s: &mut Search| {
            found_ref.push(s.assignment());
            if found_ref.len() > max_optima {
                return Err(Abort::Optima);
            }
            Ok(LeafSignal::Continue)
        })
    } else {
        Ok(LeafSignal::Continue)
    };
    let nodes = nodes1 + search.nodes;
    if result.is_err() {
        return Ok(outcome(SolveStatus::AbortedLimit, None, None, None, nodes, start));
    }
    let reported = match ip.sense {
        Sense::Minimize => internal,
        Sense::Maximize => -internal,
    };
    found.sort_unstable();
    debug_assert!(found.windows(2).all(|w| w[0] != w[1]), "duplicate optima");
    for point in &found {
        assert!(check_feasible(ip, point), "enumerated point failed the integer re-check");
        assert_eq!(objective_value(ip, point) as i128, reported);
    }
    assert!(!found.is_empty(), "optimal value proved but no optimum re-found");
    let witness = found[0].clone();
    Ok(outcome(
        SolveStatus::Optimal,
        Some(i64::try_from(reported).expect("objective fits i64")),
        Some(witness),
        Some(found),
        nodes,
        start,
    ))
}

/// Node allowance for the canonical tie-breaking pass of
/// [`solve_lex_max`]. The optimum is already proved when the pass starts;
/// if the pass cannot finish within the allowance, the deterministic
/// first-found optimum is returned instead of the lexicographic one.
const LEX_PASS_BUDGET: u64 = 60_000;

/// Finds the optimum whose variable vector is lexicographically greatest:
/// first proves the optimal value, then searches in index order with values
/// descending under the pinned objective and returns the first leaf. The
/// tie-breaking pass runs under [`LEX_PASS_BUDGET`]; when it runs out, the
/// (equally optimal, equally deterministic) witness of the first pass is
/// kept.
pub fn solve_lex_max(
    ip: &IntegerProgram,
    limits: &SolveLimits,
) -> Result<SolveOutcome, SolverError> {
    let start = Instant::now();
    let (best, nodes1, abort) = solve_min(ip, limits, limits.max_nodes)?;
    if abort.is_some() {
        return Ok(outcome(SolveStatus::AbortedLimit, None, None, None, nodes1, start));
    }
    let Some((internal, fallback)) = best else {
        return Ok(outcome(SolveStatus::Infeasible, None, None, None, nodes1, start));
    };
    let remaining = limits.max_nodes.saturating_sub(nodes1).min(LEX_PASS_BUDGET);
    let mut search = Search::new(
        ip,
        Some(i64::try_from(internal).expect("objective fits i64")),
        &SolveLimits { max_nodes: remaining, ..limits.clone() },
    );
    let mut leaf: Option<Vec<i64>> = None;
    let _ = if search.propagate() {
        let leaf_ref = &mut leaf;
        search.dfs(&BranchOrder::IndexDescending, &mut |s: &mut Search| {
            *leaf_ref = Some(s.assignment());
            Ok(LeafSignal::Done)
        })
    } else {
        Ok(LeafSignal::Continue)
    };
    let nodes = nodes1 + search.nodes;
    let point = leaf.unwrap_or(fallback);
    assert!(check_feasible(ip, &point), "witness failed the integer re-check");
    let signed = match ip.sense {
        Sense::Minimize => internal,
        Sense::Maximize => -internal,
    };
    Ok(outcome(
        SolveStatus::Optimal,
        Some(i64::try_from(signed).expect("objective fits i64")),
        Some(point),
        None,
        nodes,
        start,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{per_gap_model, LinearConstraint};
    use crate::semigroup::KunzCoordinates;

    fn box_ip(bounds: &[(i64, i64)]) -> IntegerProgram {
        IntegerProgram {
            num_vars: bounds.len(),
            lower: bounds.iter().map(|&(l, _)| l).collect(),
            upper: bounds.iter().map(|&(_, u)| u).collect(),
            kinds: vec![VarKind::Integer; bounds.len()],
            constraints: Vec::new(),
            objective: Vec::new(),
            sense: Sense::Minimize,
            var_names: (0..bounds.len()).map(|i| format!("x{}", i + 1)).collect(),
        }
    }

    #[test]
    fn per_gap_optimum_matches_known_value() {
        let x = KunzCoordinates::new(5, vec![2, 2, 3, 4]).unwrap();
        let model = per_gap_model(&x, 13).unwrap();
        let got = solve(&model.ip, &SolveLimits::default()).unwrap();
        assert_eq!(got.status, SolveStatus::Optimal);
        assert_eq!(got.objective, Some(4));
    }

    #[test]
    fn infeasible_constant_row() {
        let mut ip = box_ip(&[(0, 3)]);
        // 0 * y >= 1 can never hold.
        ip.constraints.push(LinearConstraint {
            terms: vec![(0, 0)],
            relation: Relation::Ge,
            rhs: 1,
        });
        let got = solve(&ip, &SolveLimits::default()).unwrap();
        assert_eq!(got.status, SolveStatus::Infeasible);
        assert!(got.objective.is_none());
    }

    #[test]
    fn zero_objective_over_box() {
        let ip = box_ip(&[(0, 2), (1, 4)]);
        let got = solve(&ip, &SolveLimits::default()).unwrap();
        assert_eq!(got.status, SolveStatus::Optimal);
        assert_eq!(got.objective, Some(0));
        assert!(check_feasible(&ip, got.witness.as_ref().unwrap()));
    }

    #[test]
    fn enumerates_known_optimum_sets() {
        let x = KunzCoordinates::new(5, vec![2, 2, 3, 4]).unwrap();
        let model = per_gap_model(&x, 13).unwrap();
        let got = enumerate_optima(&model.ip, &SolveLimits::default()).unwrap();
        assert_eq!(got.status, SolveStatus::Optimal);
        assert_eq!(
            got.all_optima.as_deref().unwrap(),
            &[vec![0, 1, 0, 3], vec![1, 0, 0, 3]]
        );
        assert!(got.all_optima.as_ref().unwrap().contains(got.witness.as_ref().unwrap()));

        // The corresponding parts are (2,2,2,4) and (1,2,3,4); every
        // optimum keeps y_4 = 0 so that 19 stays a gap.
        let model = per_gap_model(&x, 19).unwrap();
        let got = enumerate_optima(&model.ip, &SolveLimits::default()).unwrap();
        assert_eq!(
            got.all_optima.as_deref().unwrap(),
            &[vec![0, 0, 1, 0], vec![1, 0, 0, 0]]
        );
    }

    #[test]
    fn enumerate_on_infeasible_model() {
        let mut ip = box_ip(&[(0, 1), (0, 1)]);
        ip.constraints.push(LinearConstraint {
            terms: vec![(0, 1), (1, 1)],
            relation: Relation::Ge,
            rhs: 5,
        });
        let got = enumerate_optima(&ip, &SolveLimits::default()).unwrap();
        assert_eq!(got.status, SolveStatus::Infeasible);
        assert!(got.all_optima.is_none());
    }

    #[test]
    fn maximize_sense_round_trips() {
        let mut ip = box_ip(&[(0, 5), (0, 5)]);
        ip.sense = Sense::Maximize;
        ip.objective = vec![(0, 2), (1, 3)];
        ip.constraints.push(LinearConstraint {
            terms: vec![(0, 1), (1, 1)],
            relation: Relation::Le,
            rhs: 6,
        });
        let got = solve(&ip, &SolveLimits::default()).unwrap();
        assert_eq!(got.objective, Some(17)); // x = (1, 5)
    }

    #[test]
    fn empty_domain_is_infeasible() {
        let ip = box_ip(&[(3, 1)]);
        let got = solve(&ip, &SolveLimits::default()).unwrap();
        assert_eq!(got.status, SolveStatus::Infeasible);
    }

    #[test]
    fn node_budget_aborts() {
        // 10 variables over [0, 9] with an awkward equality: exhausting
        // with a tiny budget must abort, not claim infeasibility.
        let mut ip = box_ip(&(0..10).map(|_| (0i64, 9i64)).collect::<Vec<_>>());
        ip.constraints.push(LinearConstraint {
            terms: (0..10).map(|v| (v, 1)).collect(),
            relation: Relation::Eq,
            rhs: 45,
        });
        ip.objective = (0..10).map(|v| (v, 1)).collect();
        let got = solve(&ip, &SolveLimits { max_nodes: 3, ..Default::default() }).unwrap();
        assert_eq!(got.status, SolveStatus::AbortedLimit);
        assert!(got.objective.is_none());
    }

    #[test]
    fn malformed_models_are_rejected() {
        let mut ip = box_ip(&[(0, 1)]);
        ip.constraints.push(LinearConstraint {
            terms: vec![(7, 1)],
            relation: Relation::Le,
            rhs: 0,
        });
        assert!(matches!(
            solve(&ip, &SolveLimits::default()),
            Err(SolverError::MalformedModel(_))
        ));
        let mut ip = box_ip(&[(0, 3)]);
        ip.kinds[0] = VarKind::Binary;
        assert!(matches!(
            solve(&ip, &SolveLimits::default()),
            Err(SolverError::MalformedModel(_))
        ));
    }

    #[test]
    fn lex_max_picks_greatest_optimum() {
        // min x + y over x + y >= 2, x,y in [0,2]: optima are (0,2), (1,1),
        // (2,0); the lexicographically greatest is (2,0).
        let mut ip = box_ip(&[(0, 2), (0, 2)]);
        ip.objective = vec![(0, 1), (1, 1)];
        ip.constraints.push(LinearConstraint {
            terms: vec![(0, 1), (1, 1)],
            relation: Relation::Ge,
            rhs: 2,
        });
        let got = solve_lex_max(&ip, &SolveLimits::default()).unwrap();
        assert_eq!(got.witness, Some(vec![2, 0]));
        assert_eq!(got.objective, Some(2));
    }

    #[test]
    fn determinism_of_enumeration() {
        let x = KunzCoordinates::new(12, vec![4, 2, 3, 2, 1, 1, 3, 3, 2, 2, 1]).unwrap();
        let model = per_gap_model(&x, 37).unwrap();
        let a = enumerate_optima(&model.ip, &SolveLimits::default()).unwrap();
        let b = enumerate_optima(&model.ip, &SolveLimits::default()).unwrap();
        assert_eq!(a.all_optima, b.all_optima);
        assert_eq!(a.stats.nodes, b.stats.nodes);
    }
}
