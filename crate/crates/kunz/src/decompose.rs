//! Decomposition of a Kunz vector into m-irreducible parts.
//!
//! Four pipelines produce a [`Decomposition`] whose parts intersect back to
//! the input (componentwise maximum of the Kunz vectors):
//!
//! * [`decompose_exact`] — per special gap, enumerate every optimum of the
//!   per-gap program (or take the closed-form part when `m < h < 2m`), then
//!   pick a minimum subset with a set-covering program. Always minimal.
//! * [`decompose_heuristic`] — per special gap, take a single well-chosen
//!   optimum (the big-M coverage model), then set-cover. Fast, valid, not
//!   guaranteed minimal.
//! * [`decompose_compact`] — one integer program selects the whole minimal
//!   decomposition at once; optionally restricted to parts with odd
//!   Frobenius number (decomposition into m-symmetric semigroups).
//! * [`decompose_oracle`] — breadth-first enumeration of all
//!   multiplicity-preserving oversemigroups followed by exhaustive
//!   minimum-cover search. Ground truth for small inputs.
//!
//! [`verify`] re-checks any decomposition from first principles.

use crate::model::{
    compact_model, coverage_heuristic_model, genus_m_part, per_gap_model, set_cover_model,
    ModelError,
};
use crate::semigroup::{KunzCoordinates, SemigroupError};
use crate::solver::{enumerate_optima, solve_lex_max, SolveLimits, SolveStatus, SolverError};
use std::collections::HashSet;
use std::collections::VecDeque;
use std::fmt;

/// Which pipeline produced a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    Heuristic,
    Compact,
    CompactSymmetric,
    Oracle,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Heuristic => "heuristic",
            Method::Compact => "compact",
            Method::CompactSymmetric => "compact-symmetric",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Per-part evidence: its Frobenius number and which special gaps of the
/// input it keeps among its own gaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartCertificate {
    pub frobenius: i64,
    pub covered_special_gaps: Vec<i64>,
}

/// A decomposition of `input` into m-irreducible parts. Parts are ordered
/// by Frobenius number, then lexicographically, and `certificates[i]`
/// belongs to `parts[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub input: KunzCoordinates,
    pub method: Method,
    pub parts: Vec<KunzCoordinates>,
    pub certificates: Vec<PartCertificate>,
    /// Whether the pipeline guarantees minimal cardinality.
    pub minimal: bool,
}

impl Decomposition {
    pub fn size(&self) -> usize {
        self.parts.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    Model(ModelError),
    Solver(SolverError),
    /// A search budget ran out; the message says where and what to try.
    SolverLimit(String),
    /// The symmetric-only model is infeasible: the input is not an
    /// intersection of m-symmetric numerical semigroups.
    NotSymmetricallyDecomposable,
    /// The oracle's enumeration outgrew its node budget.
    OracleTooLarge { visited: u64, budget: u64 },
    /// An invariant the underlying theory guarantees was violated.
    Internal(String),
}

impl fmt::Display for DecomposeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecomposeError::Model(e) => write!(f, "{e}"),
            DecomposeError::Solver(e) => write!(f, "{e}"),
            DecomposeError::SolverLimit(msg) => write!(f, "solver limit reached: {msg}"),
            DecomposeError::NotSymmetricallyDecomposable => {
                write!(f, "not decomposable into m-symmetric numerical semigroups")
            }
            DecomposeError::OracleTooLarge { visited, budget } => {
                write!(f, "oracle enumeration exceeded budget ({visited} of {budget} nodes)")
            }
            DecomposeError::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl std::error::Error for DecomposeError {}

impl From<ModelError> for DecomposeError {
    fn from(e: ModelError) -> Self {
        DecomposeError::Model(e)
    }
}

impl From<SolverError> for DecomposeError {
    fn from(e: SolverError) -> Self {
        DecomposeError::Solver(e)
    }
}

impl From<SemigroupError> for DecomposeError {
    fn from(e: SemigroupError) -> Self {
        DecomposeError::Internal(e.to_string())
    }
}

/// Whether `part` keeps the special gap `h` of `x` among its own gaps.
/// For a special gap, this is exactly `part_{k(h)} = x_{k(h)}`.
fn covers(x: &KunzCoordinates, part: &KunzCoordinates, h: i64) -> bool {
    let k = x.residue(h);
    part.coord(k) == x.coord(k)
}

/// Orders parts canonically and attaches certificates.
fn finish(
    input: &KunzCoordinates,
    method: Method,
    minimal: bool,
    mut parts: Vec<KunzCoordinates>,
) -> Decomposition {
    let sg = input.special_gaps_above_m();
    parts.sort_by_key(|p| (p.frobenius(), p.coords().to_vec()));
    parts.dedup();
    let certificates = parts
        .iter()
        .map(|p| PartCertificate {
            frobenius: p.frobenius(),
            covered_special_gaps: sg.iter().copied().filter(|&h| covers(input, p, h)).collect(),
        })
        .collect();
    Decomposition { input: input.clone(), method, parts, certificates, minimal }
}

fn part_from_offsets(x: &KunzCoordinates, y: &[i64]) -> Result<KunzCoordinates, DecomposeError> {
    let coords: Vec<i64> = x.coords().iter().zip(y).map(|(&a, &b)| a - b).collect();
    KunzCoordinates::new(x.multiplicity(), coords)
        .map_err(|e| DecomposeError::Internal(format!("solver produced an invalid part: {e}")))
}

fn dedupe(parts: Vec<KunzCoordinates>) -> Vec<KunzCoordinates> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(parts.len());
    for p in parts {
        if seen.insert(p.coords().to_vec()) {
            out.push(p);
        }
    }
    out
}

/// Lexicographically greatest optimum under a variable priority order:
/// columns are permuted so that `priority` leads, the canonical search runs
/// there, and the witness is mapped back. Used for the compact model, where
/// the canonical choice should decide the selection binaries before the
/// offset blocks.
fn lex_max_with_priority(
    ip: &crate::model::IntegerProgram,
    priority: &[usize],
    limits: &SolveLimits,
) -> Result<crate::solver::SolveOutcome, crate::solver::SolverError> {
    let n = ip.num_vars;
    let mut order: Vec<usize> = priority.to_vec();
    let in_priority: HashSet<usize> = priority.iter().copied().collect();
    order.extend((0..n).filter(|v| !in_priority.contains(v)));
    debug_assert_eq!(order.len(), n);
    let mut position = vec![0usize; n]; // old index -> new index
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let remap = |terms: &[(usize, i64)]| -> Vec<(usize, i64)> {
        terms.iter().map(|&(v, a)| (position[v], a)).collect()
    };
    let permuted = crate::model::IntegerProgram {
        num_vars: n,
        lower: order.iter().map(|&v| ip.lower[v]).collect(),
        upper: order.iter().map(|&v| ip.upper[v]).collect(),
        kinds: order.iter().map(|&v| ip.kinds[v]).collect(),
        constraints: ip
            .constraints
            .iter()
            .map(|c| crate::model::LinearConstraint {
                terms: remap(&c.terms),
                relation: c.relation,
                rhs: c.rhs,
            })
            .collect(),
        objective: remap(&ip.objective),
        sense: ip.sense,
        var_names: order.iter().map(|&v| ip.var_names[v].clone()).collect(),
    };
    let mut out = solve_lex_max(&permuted, limits)?;
    if let Some(w) = out.witness.take() {
        let mut unpermuted = vec![0i64; n];
        for (new, &old) in order.iter().enumerate() {
            unpermuted[old] = w[new];
        }
        out.witness = Some(unpermuted);
    }
    Ok(out)
}

/// Runs the set-covering selector over a candidate pool and returns the
/// selected parts. Ties between minimum covers are broken toward the
/// lexicographically greatest selection vector, i.e. candidates earlier in
/// the pool are preferred.
///
/// Candidates whose coverage is contained in that of an earlier candidate
/// are dropped first. The canonical (lexicographically greatest) minimum
/// cover never selects such a candidate — swapping it for the earlier
/// dominator keeps the cover feasible and the same size while moving a 1
/// to an earlier position — so the filter changes nothing about the result
/// while keeping the selector small even when per-gap enumeration returns
/// thousands of optima.
fn select_cover(
    x: &KunzCoordinates,
    sg: &[i64],
    candidates: Vec<KunzCoordinates>,
    limits: &SolveLimits,
) -> Result<Vec<KunzCoordinates>, DecomposeError> {
    let coverage = |c: &KunzCoordinates| -> Vec<bool> {
        sg.iter().map(|&h| covers(x, c, h)).collect()
    };
    let mut kept: Vec<KunzCoordinates> = Vec::new();
    let mut kept_cov: Vec<Vec<bool>> = Vec::new();
    'next: for c in candidates {
        let cov = coverage(&c);
        for earlier in &kept_cov {
            if cov.iter().zip(earlier).all(|(a, b)| !a || *b) {
                continue 'next; // dominated by an earlier candidate
            }
        }
        kept.push(c);
        kept_cov.push(cov);
    }
    let (model, pool) = set_cover_model(x, sg, &kept)?;
    let out = solve_lex_max(&model.ip, limits)?;
    match out.status {
        SolveStatus::Optimal => {
            let z = out.witness.expect("optimal outcome carries a witness");
            Ok(pool
                .into_iter()
                .zip(z)
                .filter(|(_, zi)| *zi == 1)
                .map(|(p, _)| p)
                .collect())
        }
        SolveStatus::AbortedLimit => {
            Err(DecomposeError::SolverLimit("set covering over the candidate pool".into()))
        }
        SolveStatus::Infeasible => Err(DecomposeError::Internal(
            "set cover infeasible although every gap has a covering candidate".into(),
        )),
    }
}

/// Minimal decomposition by full enumeration of per-gap optima plus set
/// covering. For every special gap `h > 2m` all optima of the per-gap
/// program enter the candidate pool; for `m < h < 2m` the closed-form part
/// does. May be expensive: enumeration can explode combinatorially, in
/// which case the budget aborts with a pointer to the compact method.
pub fn decompose_exact(
    x: &KunzCoordinates,
    limits: &SolveLimits,
) -> Result<Decomposition, DecomposeError> {
    let sg = x.special_gaps_above_m();
    if sg.len() <= 1 {
        return Ok(finish(x, Method::Exact, true, vec![x.clone()]));
    }
    let m = x.multiplicity();
    let mut pool = Vec::new();
    for &h in &sg {
        if h < 2 * m {
            pool.push(genus_m_part(x, h)?);
        } else {
            let model = per_gap_model(x, h)?;
            let out = enumerate_optima(&model.ip, limits)?;
            match out.status {
                SolveStatus::Optimal => {
                    for y in out.all_optima.expect("enumeration carries the optimum set") {
                        pool.push(part_from_offsets(x, &y)?);
                    }
                }
                SolveStatus::AbortedLimit => {
                    return Err(DecomposeError::SolverLimit(format!(
                        "enumerating all optima for gap {h}; the compact method avoids \
                         full enumeration"
                    )))
                }
                SolveStatus::Infeasible => {
                    return Err(DecomposeError::Internal(format!(
                        "per-gap program for special gap {h} is infeasible"
                    )))
                }
            }
        }
    }
    let parts = select_cover(x, &sg, dedupe(pool), limits)?;
    Ok(finish(x, Method::Exact, true, parts))
}

/// Valid (not necessarily minimal) decomposition from one optimum per
/// special gap. For `h > 2m` the big-M coverage model picks, among the
/// per-gap optima, one covering as many special gaps as possible; ties go
/// to the part that is lexicographically least. With exactly two special
/// gaps the two per-gap parts already form the decomposition and no
/// covering step is needed.
pub fn decompose_heuristic(
    x: &KunzCoordinates,
    limits: &SolveLimits,
) -> Result<Decomposition, DecomposeError> {
    let sg = x.special_gaps_above_m();
    if sg.len() <= 1 {
        return Ok(finish(x, Method::Heuristic, false, vec![x.clone()]));
    }
    let m = x.multiplicity();
    let n = x.coords().len();
    let mut pool = Vec::new();
    for &h in &sg {
        if h < 2 * m {
            pool.push(genus_m_part(x, h)?);
        } else {
            let model = coverage_heuristic_model(x, h, &sg)?;
            let out = solve_lex_max(&model.ip, limits)?;
            match out.status {
                SolveStatus::Optimal => {
                    let w = out.witness.expect("optimal outcome carries a witness");
                    pool.push(part_from_offsets(x, &w[..n])?);
                }
                SolveStatus::AbortedLimit => {
                    return Err(DecomposeError::SolverLimit(format!(
                        "coverage model for gap {h}"
                    )))
                }
                SolveStatus::Infeasible => {
                    return Err(DecomposeError::Internal(format!(
                        "coverage model for special gap {h} is infeasible"
                    )))
                }
            }
        }
    }
    let pool = dedupe(pool);
    let parts =
        if sg.len() == 2 { pool } else { select_cover(x, &sg, pool, limits)? };
    Ok(finish(x, Method::Heuristic, false, parts))
}

/// Minimal decomposition from a single compact integer program. With
/// `symmetric_only`, parts are restricted to odd Frobenius numbers
/// (m-symmetric); infeasibility of that restriction is reported as
/// [`DecomposeError::NotSymmetricallyDecomposable`], which is a property of
/// the input, not a solver failure.
pub fn decompose_compact(
    x: &KunzCoordinates,
    symmetric_only: bool,
    limits: &SolveLimits,
) -> Result<Decomposition, DecomposeError> {
    let method = if symmetric_only { Method::CompactSymmetric } else { Method::Compact };
    let sg = x.special_gaps_above_m();
    if sg.len() <= 1 {
        if symmetric_only && x.frobenius() % 2 == 0 {
            return Err(DecomposeError::NotSymmetricallyDecomposable);
        }
        return Ok(finish(x, method, true, vec![x.clone()]));
    }
    let model = compact_model(x, &sg, symmetric_only)?;
    // Canonical witness: decide the selection binaries first, then the
    // offset blocks in order, then the coverage binaries.
    let w_offset = model.meta.w_offset.expect("compact model has selection binaries");
    let blocks = model.meta.y_block_offsets.len();
    let mut priority: Vec<usize> = (w_offset..w_offset + blocks).collect();
    priority.extend(0..w_offset);
    let out = lex_max_with_priority(&model.ip, &priority, limits)?;
    match out.status {
        SolveStatus::Optimal => {
            let witness = out.witness.expect("optimal outcome carries a witness");
            let n = x.coords().len();
            let w_offset = model.meta.w_offset.expect("compact model has selection binaries");
            let mut parts = Vec::new();
            for (l, &base) in model.meta.y_block_offsets.iter().enumerate() {
                if witness[w_offset + l] == 1 {
                    parts.push(part_from_offsets(x, &witness[base..base + n])?);
                }
            }
            Ok(finish(x, method, true, parts))
        }
        SolveStatus::AbortedLimit => {
            Err(DecomposeError::SolverLimit("compact decomposition model".into()))
        }
        SolveStatus::Infeasible => {
            if symmetric_only {
                Err(DecomposeError::NotSymmetricallyDecomposable)
            } else {
                Err(DecomposeError::Internal(
                    "compact model infeasible although a decomposition always exists".into(),
                ))
            }
        }
    }
}

/// Ground-truth minimal decomposition by exhaustive search; intended for
/// small multiplicities and coordinates.
///
/// Starting from the input, repeatedly adjoin one special gap (decrement
/// the coordinate at its residue) — breadth-first, so every
/// multiplicity-preserving oversemigroup is visited. The m-irreducible ones
/// (at most one special gap) are the candidates; iterative deepening over
/// the subset size then finds a smallest subset whose gaps cover the
/// special gaps of the input. The chosen subset is checked to reconstruct
/// the input as a componentwise maximum.
pub fn decompose_oracle(
    x: &KunzCoordinates,
    limits: &SolveLimits,
) -> Result<Decomposition, DecomposeError> {
    let sg = x.special_gaps_above_m();
    if sg.len() <= 1 {
        return Ok(finish(x, Method::Oracle, true, vec![x.clone()]));
    }
    let budget = limits.max_nodes;
    let mut visited: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<KunzCoordinates> = VecDeque::new();
    let mut candidates: Vec<KunzCoordinates> = Vec::new();
    visited.insert(x.coords().to_vec());
    queue.push_back(x.clone());
    let mut steps: u64 = 0;
    while let Some(v) = queue.pop_front() {
        steps += 1;
        if steps > budget {
            return Err(DecomposeError::OracleTooLarge { visited: steps, budget });
        }
        let sg_v = v.special_gaps_above_m();
        if sg_v.len() <= 1 {
            candidates.push(v.clone());
        }
        for &h in &sg_v {
            let k = v.residue(h);
            let mut coords = v.coords().to_vec();
            coords[k - 1] -= 1;
            if !visited.contains(&coords) {
                // Adjoining a special gap preserves the Kunz system.
                let child = KunzCoordinates::new(v.multiplicity(), coords.clone())?;
                visited.insert(coords);
                queue.push_back(child);
            }
        }
    }
    candidates.sort();

    // Coverage masks over the special gaps, through the raw membership test.
    let masks: Vec<u64> = candidates
        .iter()
        .map(|c| {
            sg.iter()
                .enumerate()
                .filter(|&(_, &h)| !c.contains(h))
                .fold(0u64, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    // One representative per coverage mask (the lexicographically least,
    // since candidates are sorted) keeps the subset search small.
    let mut by_mask: Vec<(u64, usize)> = Vec::new();
    let mut seen_masks = HashSet::new();
    for (i, &mask) in masks.iter().enumerate() {
        if mask != 0 && seen_masks.insert(mask) {
            by_mask.push((mask, i));
        }
    }
    let full: u64 = if sg.len() == 64 { u64::MAX } else { (1 << sg.len()) - 1 };
    let mut chosen: Vec<usize> = Vec::new();
    let mut steps = 0u64;
    for size in 1..=sg.len() {
        chosen.clear();
        if cover_search(&by_mask, full, size, &mut chosen, &mut steps, budget)? {
            let parts: Vec<KunzCoordinates> =
                chosen.iter().map(|&i| candidates[i].clone()).collect();
            let max: Vec<i64> = (0..x.coords().len())
                .map(|i| parts.iter().map(|p| p.coords()[i]).max().unwrap())
                .collect();
            assert_eq!(
                max,
                x.coords(),
                "minimum cover does not reconstruct the input coordinates"
            );
            return Ok(finish(x, Method::Oracle, true, parts));
        }
    }
    Err(DecomposeError::Internal(
        "no cover of the special gaps among the enumerated candidates".into(),
    ))
}

/// Depth-limited exhaustive cover search: branch on the lowest uncovered
/// gap, trying every candidate that covers it.
fn cover_search(
    by_mask: &[(u64, usize)],
    uncovered: u64,
    depth: usize,
    chosen: &mut Vec<usize>,
    steps: &mut u64,
    budget: u64,
) -> Result<bool, DecomposeError> {
    if uncovered == 0 {
        return Ok(true);
    }
    if depth == 0 {
        return Ok(false);
    }
    let lowest = uncovered & uncovered.wrapping_neg();
    for &(mask, idx) in by_mask {
        if mask & lowest == 0 {
            continue;
        }
        *steps += 1;
        if *steps > budget {
            return Err(DecomposeError::OracleTooLarge { visited: *steps, budget });
        }
        chosen.push(idx);
        if cover_search(by_mask, uncovered & !mask, depth - 1, chosen, steps, budget)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

/// Outcome of re-checking a decomposition from first principles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    /// Every part is a valid Kunz vector of the input's multiplicity and is
    /// componentwise at most the input.
    pub parts_valid: bool,
    /// Every part is m-irreducible (genus in `{m-1, m, ceil((F+1)/2)}`).
    pub parts_m_irreducible: bool,
    /// The componentwise maximum of the parts equals the input.
    pub reconstructs_input: bool,
    /// Every special gap of the input is a gap of some part.
    pub covers_special_gaps: bool,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.parts_valid
            && self.parts_m_irreducible
            && self.reconstructs_input
            && self.covers_special_gaps
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tick = |b: bool| if b { "pass" } else { "FAIL" };
        writeln!(f, "parts valid undercoordinates: {}", tick(self.parts_valid))?;
        writeln!(f, "parts m-irreducible:          {}", tick(self.parts_m_irreducible))?;
        writeln!(f, "reconstructs input:           {}", tick(self.reconstructs_input))?;
        write!(f, "special gaps covered:         {}", tick(self.covers_special_gaps))?;
        for msg in &self.failures {
            write!(f, "\n  - {msg}")?;
        }
        Ok(())
    }
}

/// Re-checks a decomposition: parts are valid undercoordinates, each is
/// m-irreducible, their componentwise maximum reconstructs the input, and
/// every special gap of the input is kept as a gap by some part.
pub fn verify(d: &Decomposition) -> VerifyReport {
    let x = &d.input;
    let mut failures = Vec::new();

    let mut parts_valid = !d.parts.is_empty();
    if d.parts.is_empty() {
        failures.push("decomposition has no parts".to_string());
    }
    for (i, p) in d.parts.iter().enumerate() {
        if p.multiplicity() != x.multiplicity() {
            parts_valid = false;
            failures.push(format!("part {i} has multiplicity {}", p.multiplicity()));
            continue;
        }
        match crate::semigroup::is_kunz_vector(p.multiplicity(), p.coords()) {
            Ok(true) => {}
            _ => {
                parts_valid = false;
                failures.push(format!("part {i} is not a Kunz vector"));
            }
        }
        if !p.coords().iter().zip(x.coords()).all(|(a, b)| a <= b) {
            parts_valid = false;
            failures.push(format!("part {i} is not an undercoordinate of the input"));
        }
    }

    let mut parts_m_irreducible = true;
    for (i, p) in d.parts.iter().enumerate() {
        if !p.is_m_irreducible() {
            parts_m_irreducible = false;
            failures.push(format!(
                "part {i} has genus {} with Frobenius {}, not m-irreducible",
                p.genus(),
                p.frobenius()
            ));
        }
    }

    let reconstructs_input = if d.parts.is_empty() {
        false
    } else {
        let max: Vec<i64> = (0..x.coords().len())
            .map(|i| d.parts.iter().map(|p| p.coords()[i]).max().unwrap())
            .collect();
        if max != x.coords() {
            failures.push("componentwise maximum of parts differs from the input".to_string());
            false
        } else {
            true
        }
    };

    let mut covers_special_gaps = true;
    for &h in &x.special_gaps_above_m() {
        if !d.parts.iter().any(|p| covers(x, p, h)) {
            covers_special_gaps = false;
            failures.push(format!("special gap {h} is not a gap of any part"));
        }
    }

    VerifyReport { parts_valid, parts_m_irreducible, reconstructs_input, covers_special_gaps, failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kz(m: i64, x: &[i64]) -> KunzCoordinates {
        KunzCoordinates::new(m, x.to_vec()).unwrap()
    }

    fn limits() -> SolveLimits {
        SolveLimits::default()
    }

    fn coords_of(d: &Decomposition) -> Vec<Vec<i64>> {
        d.parts.iter().map(|p| p.coords().to_vec()).collect()
    }

    #[test]
    fn worked_example_exact() {
        let x = kz(5, &[2, 2, 3, 4]);
        let d = decompose_exact(&x, &limits()).unwrap();
        assert_eq!(coords_of(&d), vec![vec![2, 1, 1, 1], vec![1, 2, 3, 4]]);
        assert!(d.minimal);
        assert!(verify(&d).all_pass());
    }

    #[test]
    fn worked_example_heuristic_matches_exact() {
        let x = kz(5, &[2, 2, 3, 4]);
        let d = decompose_heuristic(&x, &limits()).unwrap();
        assert_eq!(coords_of(&d), vec![vec![2, 1, 1, 1], vec![1, 2, 3, 4]]);
        assert!(!d.minimal);
        assert!(verify(&d).all_pass());
    }

    #[test]
    fn worked_example_compact() {
        let x = kz(5, &[2, 2, 3, 4]);
        let d = decompose_compact(&x, false, &limits()).unwrap();
        assert_eq!(coords_of(&d), vec![vec![2, 1, 1, 1], vec![1, 2, 3, 4]]);
        assert!(verify(&d).all_pass());
    }

    #[test]
    fn worked_example_oracle() {
        let x = kz(5, &[2, 2, 3, 4]);
        let d = decompose_oracle(&x, &limits()).unwrap();
        assert_eq!(d.size(), 2);
        assert!(verify(&d).all_pass());
    }

    #[test]
    fn all_ones_decomposes_to_itself() {
        let x = kz(5, &[1, 1, 1, 1]);
        for d in [
            decompose_exact(&x, &limits()).unwrap(),
            decompose_heuristic(&x, &limits()).unwrap(),
            decompose_compact(&x, false, &limits()).unwrap(),
            decompose_oracle(&x, &limits()).unwrap(),
        ] {
            assert_eq!(d.parts, vec![x.clone()]);
            assert!(verify(&d).all_pass());
        }
    }

    #[test]
    fn certificates_record_frobenius_and_coverage() {
        let x = kz(5, &[2, 2, 3, 4]);
        let d = decompose_exact(&x, &limits()).unwrap();
        assert_eq!(d.certificates[0].frobenius, 6);
        assert_eq!(d.certificates[0].covered_special_gaps, vec![6]);
        assert_eq!(d.certificates[1].frobenius, 19);
        assert_eq!(d.certificates[1].covered_special_gaps, vec![13, 19]);
    }

    #[test]
    fn verify_flags_broken_decompositions() {
        let x = kz(5, &[2, 2, 3, 4]);
        let good = decompose_exact(&x, &limits()).unwrap();

        // Dropping a part loses a special gap or the reconstruction.
        let mut broken = good.clone();
        broken.parts.truncate(1);
        broken.certificates.truncate(1);
        let report = verify(&broken);
        assert!(!report.all_pass());
        assert!(!report.reconstructs_input || !report.covers_special_gaps);

        // Replacing a part with the all-ones vector breaks reconstruction.
        let mut broken = good.clone();
        broken.parts[1] = kz(5, &[1, 1, 1, 1]);
        assert!(!verify(&broken).reconstructs_input);

        // A non-m-irreducible part is caught.
        let mut broken = good;
        broken.parts[1] = x.clone();
        assert!(!verify(&broken).parts_m_irreducible);
    }

    #[test]
    fn symmetric_variant() {
        // The even gap 6 of (2,2,3,4) is covered by the odd-Frobenius part
        // (2,1,3,1), so a decomposition into 5-symmetric parts exists.
        let x = kz(5, &[2, 2, 3, 4]);
        let d = decompose_compact(&x, true, &limits()).unwrap();
        assert_eq!(d.size(), 2);
        assert!(d.parts.iter().all(|p| p.frobenius() % 2 == 1));
        assert!(verify(&d).all_pass());

        // An even Frobenius number is hopeless: the largest special gap can
        // only be covered by a part with that even Frobenius number.
        let even_f = kz(5, &[2, 2, 2, 3]);
        assert_eq!(even_f.frobenius(), 14);
        assert_eq!(even_f.special_gaps_above_m(), vec![6, 8, 14]);
        assert_eq!(
            decompose_compact(&even_f, true, &limits()).unwrap_err(),
            DecomposeError::NotSymmetricallyDecomposable
        );

        // Same for an m-irreducible input with even Frobenius (trivial branch).
        let trivial = kz(5, &[2, 1, 1, 1]);
        assert_eq!(trivial.frobenius(), 6);
        assert_eq!(
            decompose_compact(&trivial, true, &limits()).unwrap_err(),
            DecomposeError::NotSymmetricallyDecomposable
        );
    }

    #[test]
    fn oracle_budget_is_enforced() {
        let x = kz(12, &[4, 2, 3, 2, 1, 1, 3, 3, 2, 2, 1]);
        match decompose_oracle(&x, &SolveLimits::with_max_nodes(5)) {
            Err(DecomposeError::OracleTooLarge { .. }) => {}
            other => panic!("expected OracleTooLarge, got {other:?}"),
        }
    }
}
