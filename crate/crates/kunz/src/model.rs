//! Builders for the integer programs behind the decomposition pipelines.
//!
//! Every model is produced as a plain [`IntegerProgram`] value (bounded
//! integer variables, sparse linear constraints, a linear objective) so the
//! backing solver is interchangeable. A [`ModelMeta`] travels with each
//! model and records the variable layout and any big-M constant, which the
//! pipelines use to decode solutions.
//!
//! The common building block is the offset polytope of a Kunz vector `x`:
//! integer vectors `y >= 0` such that `x - y` is again a Kunz vector, i.e.
//!
//! ```text
//! y_i <= x_i - 1
//! y_i + y_j - y_{i+j}   <= x_i + x_j - x_{i+j}        i <= j, i+j <= m-1
//! y_i + y_j - y_{i+j-m} <= x_i + x_j - x_{i+j-m} + 1  i <= j, i+j >  m
//! ```
//!
//! The per-residue models add two inequalities that pin the genus of
//! `x - y` to `ceil((F(x-y)+1)/2)` when its Frobenius number is attained at
//! residue `k`; writing `T = m(x_k - y_k) + k - m + 1`, the integer points
//! with `sum(x-y) = ceil(T/2)` are exactly those with
//!
//! ```text
//! 2 sum(y) - m y_k >= 2 sum(x) - m x_k - k + m - 2
//! 2 sum(y) - m y_k <= 2 sum(x) - m x_k - k + m - 1
//! ```

use crate::semigroup::KunzCoordinates;
use std::collections::HashMap;
use std::fmt;

/// Constraint sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// One sparse linear constraint `sum(coeff * var) REL rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    /// `(variable index, coefficient)`, sorted by index, no duplicates.
    pub terms: Vec<(usize, i64)>,
    pub relation: Relation,
    pub rhs: i64,
}

/// Variable integrality class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Integer,
    Binary,
}

/// Optimization direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// A bounded integer linear program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerProgram {
    pub num_vars: usize,
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
    pub kinds: Vec<VarKind>,
    pub constraints: Vec<LinearConstraint>,
    /// Sparse objective; empty means the zero objective (feasibility).
    pub objective: Vec<(usize, i64)>,
    pub sense: Sense,
    pub var_names: Vec<String>,
}

impl IntegerProgram {
    fn new(sense: Sense) -> Self {
        IntegerProgram {
            num_vars: 0,
            lower: Vec::new(),
            upper: Vec::new(),
            kinds: Vec::new(),
            constraints: Vec::new(),
            objective: Vec::new(),
            sense,
            var_names: Vec::new(),
        }
    }

    fn add_var(&mut self, name: String, lower: i64, upper: i64, kind: VarKind) -> usize {
        let idx = self.num_vars;
        self.num_vars += 1;
        self.lower.push(lower);
        self.upper.push(upper);
        self.kinds.push(kind);
        self.var_names.push(name);
        idx
    }

    fn add_constraint(&mut self, terms: &[(usize, i64)], relation: Relation, rhs: i64) {
        self.constraints.push(LinearConstraint { terms: aggregate(terms), relation, rhs });
    }
}

/// Sums duplicate indices, drops zero coefficients, sorts by index.
fn aggregate(terms: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut map: HashMap<usize, i64> = HashMap::new();
    for &(v, c) in terms {
        *map.entry(v).or_insert(0) += c;
    }
    let mut out: Vec<(usize, i64)> = map.into_iter().filter(|&(_, c)| c != 0).collect();
    out.sort_unstable_by_key(|&(v, _)| v);
    out
}

/// Which model a program encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// Offset polytope sliced at residue `k` (feasibility only).
    IrreducibleOffsets,
    /// Minimum-length offsets pinning one special gap `h > 2m`.
    PerGap,
    /// Genus-m offsets pinning one special gap `m < h < 2m`.
    GenusM,
    /// Big-M model maximizing how many special gaps one part covers.
    CoverageHeuristic,
    /// Minimum selection of candidate parts covering all special gaps.
    SetCover,
    /// Single model selecting a minimal decomposition outright.
    Compact,
    /// Compact model restricted to parts with odd Frobenius number.
    CompactSymmetric,
}

/// Variable layout and constants of a built model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelMeta {
    pub kind: ModelKind,
    pub m: i64,
    /// The fixed special gap, for the per-gap kinds.
    pub h: Option<i64>,
    /// Start index of each block of offset variables.
    pub y_block_offsets: Vec<usize>,
    /// Start index of the selection binaries, when present.
    pub w_offset: Option<usize>,
    /// Start index of the coverage binaries, when present.
    pub z_offset: Option<usize>,
    /// Big-M constant, when the model uses one.
    pub big_m: Option<i64>,
}

/// An [`IntegerProgram`] together with its layout metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    pub ip: IntegerProgram,
    pub meta: ModelMeta,
}

/// Errors from model construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    IndexOutOfRange { k: usize, m: i64 },
    /// `h` is not a special gap above the multiplicity of the input.
    NotSpecialGap { h: i64 },
    /// `h` lies in the wrong regime for the requested model.
    WrongRegime { h: i64, m: i64, expected: &'static str },
    /// A special gap that no candidate covers; the upstream candidate pool
    /// is incomplete (complete pools always cover every special gap).
    Uncoverable { h: i64 },
    EmptySpecialGaps,
    InvalidCandidate { index: usize, reason: String },
    TooLarge(String),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::IndexOutOfRange { k, m } => {
                write!(f, "residue {k} out of range 1..={}", m - 1)
            }
            ModelError::NotSpecialGap { h } => write!(f, "{h} is not a special gap above m"),
            ModelError::WrongRegime { h, m, expected } => {
                write!(f, "gap {h} outside regime {expected} for multiplicity {m}")
            }
            ModelError::Uncoverable { h } => {
                write!(f, "no candidate covers special gap {h}")
            }
            ModelError::EmptySpecialGaps => write!(f, "the special-gap list is empty"),
            ModelError::InvalidCandidate { index, reason } => {
                write!(f, "candidate {index} invalid: {reason}")
            }
            ModelError::TooLarge(msg) => write!(f, "model coefficients overflow: {msg}"),
        }
    }
}

impl std::error::Error for ModelError {}

fn checked(v: i128, what: &str) -> Result<i64, ModelError> {
    i64::try_from(v).map_err(|_| ModelError::TooLarge(what.to_string()))
}

/// Adds the offset-polytope rows for one block of `m - 1` offset variables
/// starting at `base`.
fn add_offset_rows(ip: &mut IntegerProgram, x: &KunzCoordinates, base: usize) {
    let n = x.coords().len();
    let var = |i: usize| base + i - 1; // 1-based residue -> variable index
    for i in 1..=n {
        for j in i..=n {
            if i + j <= n {
                let rhs = x.coord(i) + x.coord(j) - x.coord(i + j);
                ip.add_constraint(
                    &[(var(i), 1), (var(j), 1), (var(i + j), -1)],
                    Relation::Le,
                    rhs,
                );
            } else if i + j > n + 1 {
                let t = i + j - n - 1; // i + j - m
                let rhs = x.coord(i) + x.coord(j) - x.coord(t) + 1;
                ip.add_constraint(&[(var(i), 1), (var(j), 1), (var(t), -1)], Relation::Le, rhs);
            }
        }
    }
}

/// Adds the two genus-pinning inequalities for residue `k` to one block.
fn add_ceiling_rows(
    ip: &mut IntegerProgram,
    x: &KunzCoordinates,
    base: usize,
    k: usize,
) -> Result<(), ModelError> {
    let n = x.coords().len();
    let m = x.multiplicity();
    let mut terms = Vec::with_capacity(n);
    for i in 1..=n {
        let c = if i == k { 2 - m } else { 2 };
        terms.push((base + i - 1, c));
    }
    let sum_x: i128 = x.coords().iter().map(|&v| v as i128).sum();
    let base_rhs = 2 * sum_x - (m as i128) * (x.coord(k) as i128) - k as i128 + m as i128;
    ip.add_constraint(&terms, Relation::Ge, checked(base_rhs - 2, "genus row")?);
    ip.add_constraint(&terms, Relation::Le, checked(base_rhs - 1, "genus row")?);
    Ok(())
}

/// Adds the rows pinning the Frobenius number of `x - y` to residue `k`:
/// `m (x_i - y_i) + i <= m (x_k - y_k) + k` for every other residue. These
/// rows are part of the residue slice by definition (the slice is the
/// intersection of the offset polytope with the set where the maximum is
/// attained at `k`); they also hand the solver tight per-variable bounds.
/// When `gate` is set, the rows are relaxed by `M' (1 - w)` so they only
/// bind while the selection binary `w` is 1 (`M'` = the Frobenius number of
/// `x` always suffices).
fn add_frobenius_rows(
    ip: &mut IntegerProgram,
    x: &KunzCoordinates,
    base: usize,
    k: usize,
    gate: Option<usize>,
) -> Result<(), ModelError> {
    let n = x.coords().len();
    let m = x.multiplicity();
    let prime_m = x.frobenius();
    for i in 1..=n {
        if i == k {
            continue;
        }
        let mut terms = vec![(base + i - 1, -m), (base + k - 1, m)];
        let mut rhs = m as i128 * (x.coord(k) as i128 - x.coord(i) as i128) + k as i128
            - i as i128;
        if let Some(w) = gate {
            terms.push((w, prime_m));
            rhs += prime_m as i128;
        }
        ip.add_constraint(&terms, Relation::Le, checked(rhs, "Frobenius row")?);
    }
    Ok(())
}

/// Adds the gap-pairing equalities that hold on a per-gap slice once
/// `y_{k(h)} = 0` is pinned: every feasible part is then an irreducible
/// semigroup with Frobenius number exactly `h`, so it is symmetric (odd
/// `h`) or pseudo-symmetric (even `h`), and its Apéry elements pair up as
/// `w_i + w_{(k-i) mod m} = h + m` (with `w_{k(h/2)} = h/2 + m` in the even
/// case). In offset variables the pairing reads
///
/// ```text
/// y_i + y_p = x_i + x_p - x_k       if i + p = k      (p = (k-i) mod m)
/// y_i + y_p = x_i + x_p - x_k + 1   if i + p = k + m
/// ```
///
/// These rows are implied by the slice, so they change no solution set;
/// they exist to hand the solver the halved dimension directly. When
/// `gate` is set the rows are relaxed by `M'' (1 - w)` on both sides.
fn add_pairing_rows(
    ip: &mut IntegerProgram,
    x: &KunzCoordinates,
    base: usize,
    h: i64,
    gate: Option<usize>,
) -> Result<(), ModelError> {
    let n = x.coords().len();
    let m = x.multiplicity();
    let k = x.residue(h);
    let half_residue = if h % 2 == 0 { Some(x.residue(h / 2)) } else { None };
    let add_eq = |ip: &mut IntegerProgram, terms: Vec<(usize, i64)>, rhs: i128, span: i128| {
        match gate {
            None => {
                ip.add_constraint(&terms, Relation::Eq, checked(rhs, "pairing row")?);
            }
            Some(w) => {
                let big = checked(span + rhs.abs(), "pairing gate")?;
                let mut upper = terms.clone();
                upper.push((w, big));
                ip.add_constraint(&upper, Relation::Le, checked(rhs + big as i128, "pairing")?);
                let mut lower = terms;
                lower.push((w, -big));
                ip.add_constraint(&lower, Relation::Ge, checked(rhs - big as i128, "pairing")?);
            }
        }
        Ok::<(), ModelError>(())
    };
    for i in 1..=n {
        if i == k || Some(i) == half_residue {
            continue;
        }
        let p = (k + n + 1 - i) % (n + 1); // (k - i) mod m, nonzero since i != k
        if p < i || Some(p) == half_residue {
            continue; // each unordered pair once; the half residue is pinned below
        }
        let correction = if i + p == k { 0 } else { 1 };
        let rhs = x.coord(i) as i128 + x.coord(p) as i128 - x.coord(k) as i128
            + correction as i128;
        let terms = if i == p {
            vec![(base + i - 1, 2)]
        } else {
            vec![(base + i - 1, 1), (base + p - 1, 1)]
        };
        let span = x.coord(i) as i128 + x.coord(p) as i128;
        add_eq(ip, terms, rhs, span)?;
    }
    if let Some(j) = half_residue {
        // w_j = h/2 + m, i.e. the offset at the half residue is fixed.
        let rhs = x.coord(j) as i128 - (h / 2 + m - j as i64) as i128 / m as i128;
        add_eq(ip, vec![(base + j - 1, 1)], rhs, x.coord(j) as i128)?;
    }
    Ok(())
}

fn offset_bounds(ip: &mut IntegerProgram, x: &KunzCoordinates, label: Option<usize>) -> usize {
    let base = ip.num_vars;
    for (i, &v) in x.coords().iter().enumerate() {
        let name = match label {
            Some(l) => format!("y{}_{}", l, i + 1),
            None => format!("y{}", i + 1),
        };
        ip.add_var(name, 0, v - 1, VarKind::Integer);
    }
    base
}

/// The offset polytope of `x` sliced at residue `k`: integer points are the
/// offsets `y` for which `x - y` is a Kunz vector whose genus equals
/// `ceil((m(x_k - y_k) + k - m + 1) / 2)`, the genus of an irreducible
/// semigroup whose Frobenius number is attained at residue `k`. Feasibility
/// form, no objective.
pub fn irreducible_offsets_model(x: &KunzCoordinates, k: usize) -> Result<Model, ModelError> {
    let m = x.multiplicity();
    if k == 0 || k as i64 > m - 1 {
        return Err(ModelError::IndexOutOfRange { k, m });
    }
    let mut ip = IntegerProgram::new(Sense::Minimize);
    let base = offset_bounds(&mut ip, x, None);
    add_offset_rows(&mut ip, x, base);
    add_ceiling_rows(&mut ip, x, base, k)?;
    add_frobenius_rows(&mut ip, x, base, k, None)?;
    Ok(Model {
        ip,
        meta: ModelMeta {
            kind: ModelKind::IrreducibleOffsets,
            m,
            h: None,
            y_block_offsets: vec![base],
            w_offset: None,
            z_offset: None,
            big_m: None,
        },
    })
}

fn require_special_gap(x: &KunzCoordinates, h: i64) -> Result<(), ModelError> {
    if x.special_gaps_above_m().contains(&h) {
        Ok(())
    } else {
        Err(ModelError::NotSpecialGap { h })
    }
}

/// The per-gap problem for a special gap `h > 2m`: minimize `sum(y)` over
/// the residue-`k(h)` slice with `y_{k(h)} = 0`, so that `h` stays a gap of
/// `x - y`. Its optima are the largest-genus irreducible undercoordinates
/// whose Frobenius number is `h`.
pub fn per_gap_model(x: &KunzCoordinates, h: i64) -> Result<Model, ModelError> {
    let m = x.multiplicity();
    require_special_gap(x, h)?;
    if h <= 2 * m {
        return Err(ModelError::WrongRegime { h, m, expected: "h > 2m" });
    }
    let k = x.residue(h);
    let mut model = irreducible_offsets_model(x, k)?;
    model.ip.upper[k - 1] = 0; // pin y_{k(h)} = 0
    add_pairing_rows(&mut model.ip, x, 0, h, None)?;
    model.ip.objective = (0..model.ip.num_vars).map(|v| (v, 1)).collect();
    model.ip.sense = Sense::Minimize;
    model.meta.kind = ModelKind::PerGap;
    model.meta.h = Some(h);
    Ok(model)
}

/// Closed form of the genus-m problem for a special gap `m < h < 2m`: the
/// unique m-irreducible undercoordinate with Frobenius number `h` and genus
/// `m` is the all-ones vector plus a unit at residue `k(h) = h - m`.
pub fn genus_m_part(x: &KunzCoordinates, h: i64) -> Result<KunzCoordinates, ModelError> {
    let m = x.multiplicity();
    require_special_gap(x, h)?;
    if h <= m || h >= 2 * m {
        return Err(ModelError::WrongRegime { h, m, expected: "m < h < 2m" });
    }
    let k = x.residue(h);
    debug_assert_eq!(k as i64, h - m);
    debug_assert!(x.coord(k) >= 2);
    let mut coords = vec![1i64; x.coords().len()];
    coords[k - 1] = 2;
    Ok(KunzCoordinates::new(m, coords).expect("all-ones plus a unit is always a Kunz vector"))
}

/// The genus-m problem for `m < h < 2m` as a literal integer program:
/// offsets with `sum(y) = sum(x) - m` and `y_{k(h)} = x_{k(h)} - 2`. Used
/// to cross-check [`genus_m_part`] and for model export; the program has
/// exactly one feasible point, `x - 1 - e_{k(h)}`.
pub fn genus_m_model(x: &KunzCoordinates, h: i64) -> Result<Model, ModelError> {
    let m = x.multiplicity();
    require_special_gap(x, h)?;
    if h <= m || h >= 2 * m {
        return Err(ModelError::WrongRegime { h, m, expected: "m < h < 2m" });
    }
    let k = x.residue(h);
    let mut ip = IntegerProgram::new(Sense::Minimize);
    let base = offset_bounds(&mut ip, x, None);
    add_offset_rows(&mut ip, x, base);
    let sum_x: i128 = x.coords().iter().map(|&v| v as i128).sum();
    let terms: Vec<(usize, i64)> = (0..ip.num_vars).map(|v| (v, 1)).collect();
    ip.add_constraint(&terms, Relation::Eq, checked(sum_x - m as i128, "genus-m row")?);
    ip.lower[k - 1] = x.coord(k) - 2;
    ip.upper[k - 1] = x.coord(k) - 2;
    ip.objective = terms;
    Ok(Model {
        ip,
        meta: ModelMeta {
            kind: ModelKind::GenusM,
            m,
            h: Some(h),
            y_block_offsets: vec![base],
            w_offset: None,
            z_offset: None,
            big_m: None,
        },
    })
}

/// The big-M heuristic model for a special gap `h > 2m`: over the per-gap
/// feasible region, maximize the number of special gaps `h_i` in `sg` that
/// remain gaps of `x - y`. Binary `w_i` may be 1 only when
/// `m (x_{k(h_i)} - y_{k(h_i)}) + k(h_i) >= h_i + 1`, deactivated through
/// `M = m * max(x) + m` otherwise.
pub fn coverage_heuristic_model(
    x: &KunzCoordinates,
    h: i64,
    sg: &[i64],
) -> Result<Model, ModelError> {
    let m = x.multiplicity();
    require_special_gap(x, h)?;
    if h <= 2 * m {
        return Err(ModelError::WrongRegime { h, m, expected: "h > 2m" });
    }
    let k = x.residue(h);
    let mut ip = IntegerProgram::new(Sense::Maximize);
    let base = offset_bounds(&mut ip, x, None);
    add_offset_rows(&mut ip, x, base);
    add_ceiling_rows(&mut ip, x, base, k)?;
    add_frobenius_rows(&mut ip, x, base, k, None)?;
    add_pairing_rows(&mut ip, x, base, h, None)?;
    ip.upper[k - 1] = 0;
    let max_x = x.coords().iter().copied().max().unwrap_or(1);
    let big_m = checked(m as i128 * max_x as i128 + m as i128, "big-M")?;
    let w_offset = ip.num_vars;
    for (i, &hi) in sg.iter().enumerate() {
        debug_assert!(hi > m, "special gaps above m expected");
        // A part with Frobenius number h cannot keep a larger gap.
        let upper = if hi > h { 0 } else { 1 };
        let w = ip.add_var(format!("w{}", i + 1), 0, upper, VarKind::Binary);
        let ki = x.residue(hi);
        // m(x_ki - y_ki) + ki - hi - 1 + M(1 - w) >= 0
        let rhs = checked(
            -(m as i128 * x.coord(ki) as i128 + ki as i128 - hi as i128 - 1 + big_m as i128),
            "big-M row",
        )?;
        ip.add_constraint(&[(base + ki - 1, -m), (w, -big_m)], Relation::Ge, rhs);
    }
    ip.objective = (w_offset..ip.num_vars).map(|v| (v, 1)).collect();
    Ok(Model {
        ip,
        meta: ModelMeta {
            kind: ModelKind::CoverageHeuristic,
            m,
            h: Some(h),
            y_block_offsets: vec![base],
            w_offset: Some(w_offset),
            z_offset: None,
            big_m: Some(big_m),
        },
    })
}

/// The set-covering selector: one binary per candidate part, one covering
/// row per special gap, minimizing the number of selected parts. Candidates
/// are deduplicated (stable) before the model is built; the returned pool
/// maps variable `c` to `pool[c]`. A candidate covers `h` iff
/// `m * c_{k(h)} + k(h) >= h + 1`, i.e. `h` is one of its gaps.
pub fn set_cover_model(
    x: &KunzCoordinates,
    sg: &[i64],
    candidates: &[KunzCoordinates],
) -> Result<(Model, Vec<KunzCoordinates>), ModelError> {
    let m = x.multiplicity();
    let mut pool: Vec<KunzCoordinates> = Vec::new();
    for (idx, c) in candidates.iter().enumerate() {
        match c.is_undercoordinate_of(x) {
            Ok(true) => {}
            Ok(false) => {
                return Err(ModelError::InvalidCandidate {
                    index: idx,
                    reason: "not an undercoordinate of the input".into(),
                })
            }
            Err(e) => {
                return Err(ModelError::InvalidCandidate { index: idx, reason: e.to_string() })
            }
        }
        if !pool.contains(c) {
            pool.push(c.clone());
        }
    }
    let mut ip = IntegerProgram::new(Sense::Minimize);
    for c in 0..pool.len() {
        ip.add_var(format!("z{}", c + 1), 0, 1, VarKind::Binary);
    }
    for &h in sg {
        let k = x.residue(h);
        let terms: Vec<(usize, i64)> = pool
            .iter()
            .enumerate()
            .filter(|(_, c)| m * c.coord(k) + k as i64 >= h + 1)
            .map(|(i, _)| (i, 1))
            .collect();
        if terms.is_empty() {
            return Err(ModelError::Uncoverable { h });
        }
        ip.add_constraint(&terms, Relation::Ge, 1);
    }
    ip.objective = (0..ip.num_vars).map(|v| (v, 1)).collect();
    let model = Model {
        ip,
        meta: ModelMeta {
            kind: ModelKind::SetCover,
            m,
            h: None,
            y_block_offsets: Vec::new(),
            w_offset: None,
            z_offset: Some(0),
            big_m: None,
        },
    };
    Ok((model, pool))
}

/// The compact decomposition model: blocks of offset variables tied to the
/// special gaps, a selection binary `w` per block, and coverage binaries
/// `z_{b,k}` recording whether block `b` keeps `h_k` among its gaps.
/// Minimizing `sum(w)` yields a minimal decomposition outright; the parts
/// are `x - y^b` for the selected blocks.
///
/// A single block per gap is not enough: a minimal decomposition may need
/// several parts sharing one Frobenius number (each uniquely covering a
/// different smaller gap), and with one block apiece the model can only
/// overshoot. Since a part with Frobenius `h_l` covers only gaps `<= h_l`
/// and distinct same-Frobenius parts of a minimal decomposition uniquely
/// cover distinct such gaps, `l` copies of the block for the l-th smallest
/// gap are always sufficient. Copies are interchangeable, so a chain
/// `w_{l,c} >= w_{l,c+1}` breaks the symmetry.
///
/// Block `(l, c)` carries the offset-polytope rows, `y_{k(h_l)} = 0`, the
/// Frobenius and gap-pairing rows gated by its selection binary, and the
/// genus link `sum(y) = c_l * w` with `c_l = sum(x) - ceil((h_l+1)/2)` when
/// `h_l > 2m` and `c_l = sum(x) - m` when `h_l < 2m` (`h_l = 2m` is
/// impossible since `2m` is never a gap). Coverage is wired with
/// `M = max(x)`:
///
/// ```text
/// sum_b z_{b,k} >= 1
/// z_{b,k} >= 1 - y^b_{k(h_k)} - M (1 - w_b)
/// y^b_{k(h_k)} <= M (1 - z_{b,k})
/// z_{b,k} <= w_b
/// ```
///
/// With `symmetric_only`, blocks whose gap is even are forced off, so any
/// solution decomposes into parts with odd Frobenius number only; the model
/// is then infeasible exactly when no such decomposition exists.
pub fn compact_model(
    x: &KunzCoordinates,
    sg: &[i64],
    symmetric_only: bool,
) -> Result<Model, ModelError> {
    let m = x.multiplicity();
    if sg.is_empty() {
        return Err(ModelError::EmptySpecialGaps);
    }
    let special = x.special_gaps_above_m();
    for &h in sg {
        if !special.contains(&h) {
            return Err(ModelError::NotSpecialGap { h });
        }
        assert_ne!(h, 2 * m, "2m is in the semigroup and can never be a gap");
    }
    // Distinct special gaps lie in distinct residue classes, so indexing
    // coverage variables by gap or by residue is the same thing.
    {
        let mut residues: Vec<usize> = sg.iter().map(|&h| x.residue(h)).collect();
        residues.sort_unstable();
        residues.dedup();
        assert_eq!(residues.len(), sg.len(), "special gaps share a residue class");
    }
    assert!(sg.windows(2).all(|w| w[0] < w[1]), "special gaps sorted ascending");

    let s = sg.len();
    let n = x.coords().len();
    let sum_x: i128 = x.coords().iter().map(|&v| v as i128).sum();
    let big_m = x.coords().iter().copied().max().unwrap();

    // Blocks in gap-ascending, copy-ascending order.
    let mut block_gap: Vec<usize> = Vec::new(); // block -> gap index
    let mut block_copy: Vec<usize> = Vec::new();
    for l in 0..s {
        for c in 0..=l {
            block_gap.push(l);
            block_copy.push(c);
        }
    }
    let blocks = block_gap.len();

    let mut ip = IntegerProgram::new(Sense::Minimize);
    let mut y_block_offsets = Vec::with_capacity(blocks);
    for b in 0..blocks {
        let base = offset_bounds(&mut ip, x, Some(b + 1));
        y_block_offsets.push(base);
    }
    let w_offset = ip.num_vars;
    for b in 0..blocks {
        let hl = sg[block_gap[b]];
        let upper = if symmetric_only && hl % 2 == 0 { 0 } else { 1 };
        ip.add_var(format!("w{}", b + 1), 0, upper, VarKind::Binary);
    }
    let z_offset = ip.num_vars;
    for b in 0..blocks {
        for k in 0..s {
            // A part with Frobenius number h_l cannot keep a larger gap, so
            // the block never covers h_k > h_l.
            let upper = if sg[block_gap[b]] < sg[k] { 0 } else { 1 };
            ip.add_var(format!("z{}_{}", b + 1, k + 1), 0, upper, VarKind::Binary);
        }
    }
    let zvar = |b: usize, k: usize| z_offset + b * s + k;

    for b in 0..blocks {
        let hl = sg[block_gap[b]];
        let base = y_block_offsets[b];
        add_offset_rows(&mut ip, x, base);
        add_frobenius_rows(&mut ip, x, base, x.residue(hl), Some(w_offset + b))?;
        if hl > 2 * m {
            add_pairing_rows(&mut ip, x, base, hl, Some(w_offset + b))?;
        }
        ip.upper[base + x.residue(hl) - 1] = 0;
        let c_l = if hl > 2 * m {
            sum_x - ((hl as i128 + 1) + 1) / 2
        } else {
            sum_x - m as i128
        };
        let mut terms: Vec<(usize, i64)> = (base..base + n).map(|v| (v, 1)).collect();
        terms.push((w_offset + b, -checked(c_l, "genus link")?));
        ip.add_constraint(&terms, Relation::Eq, 0);
        if block_copy[b] > 0 {
            // Use copy c+1 only when copy c is in use.
            ip.add_constraint(
                &[(w_offset + b, 1), (w_offset + b - 1, -1)],
                Relation::Le,
                0,
            );
        }
    }
    for k in 0..s {
        let terms: Vec<(usize, i64)> = (0..blocks).map(|b| (zvar(b, k), 1)).collect();
        ip.add_constraint(&terms, Relation::Ge, 1);
    }
    for b in 0..blocks {
        for (k, &hk) in sg.iter().enumerate() {
            let y = y_block_offsets[b] + x.residue(hk) - 1;
            ip.add_constraint(
                &[(zvar(b, k), 1), (y, 1), (w_offset + b, -big_m)],
                Relation::Ge,
                1 - big_m,
            );
            ip.add_constraint(&[(y, 1), (zvar(b, k), big_m)], Relation::Le, big_m);
            ip.add_constraint(&[(zvar(b, k), 1), (w_offset + b, -1)], Relation::Le, 0);
        }
    }
    ip.objective = (w_offset..w_offset + blocks).map(|v| (v, 1)).collect();
    Ok(Model {
        ip,
        meta: ModelMeta {
            kind: if symmetric_only { ModelKind::CompactSymmetric } else { ModelKind::Compact },
            m,
            h: None,
            y_block_offsets,
            w_offset: Some(w_offset),
            z_offset: Some(z_offset),
            big_m: Some(big_m),
        },
    })
}

/// Renders a program in LP-format text (objective, constraints, bounds,
/// integrality sections) for cross-checking against external solvers.
pub fn to_lp_format(ip: &IntegerProgram) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    out.push_str(match ip.sense {
        Sense::Minimize => "Minimize\n obj:",
        Sense::Maximize => "Maximize\n obj:",
    });
    if ip.objective.is_empty() {
        out.push_str(" 0");
    } else {
        write_terms(&mut out, &ip.objective, &ip.var_names);
    }
    out.push_str("\nSubject To\n");
    for (i, c) in ip.constraints.iter().enumerate() {
        let _ = write!(out, " c{}:", i + 1);
        write_terms(&mut out, &c.terms, &ip.var_names);
        let rel = match c.relation {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        };
        let _ = writeln!(out, " {} {}", rel, c.rhs);
    }
    out.push_str("Bounds\n");
    for v in 0..ip.num_vars {
        let _ = writeln!(out, " {} <= {} <= {}", ip.lower[v], ip.var_names[v], ip.upper[v]);
    }
    let generals: Vec<&str> = (0..ip.num_vars)
        .filter(|&v| ip.kinds[v] == VarKind::Integer)
        .map(|v| ip.var_names[v].as_str())
        .collect();
    if !generals.is_empty() {
        out.push_str("Generals\n ");
        out.push_str(&generals.join(" "));
        out.push('\n');
    }
    let binaries: Vec<&str> = (0..ip.num_vars)
        .filter(|&v| ip.kinds[v] == VarKind::Binary)
        .map(|v| ip.var_names[v].as_str())
        .collect();
    if !binaries.is_empty() {
        out.push_str("Binaries\n ");
        out.push_str(&binaries.join(" "));
        out.push('\n');
    }
    out.push_str("End\n");
    out
}

fn write_terms(out: &mut String, terms: &[(usize, i64)], names: &[String]) {
    use std::fmt::Write;
    for (pos, &(v, c)) in terms.iter().enumerate() {
        let sign = if c < 0 {
            " -"
        } else if pos == 0 {
            " "
        } else {
            " +"
        };
        let mag = c.abs();
        if mag == 1 {
            let _ = write!(out, "{sign} {}", names[v]);
        } else {
            let _ = write!(out, "{sign} {mag} {}", names[v]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::KunzCoordinates;

    fn kz(m: i64, x: &[i64]) -> KunzCoordinates {
        KunzCoordinates::new(m, x.to_vec()).unwrap()
    }

    fn example26() -> KunzCoordinates {
        kz(5, &[2, 2, 3, 4])
    }

    fn satisfies(ip: &IntegerProgram, point: &[i64]) -> bool {
        point.iter().enumerate().all(|(v, &p)| ip.lower[v] <= p && p <= ip.upper[v])
            && ip.constraints.iter().all(|c| {
                let lhs: i64 = c.terms.iter().map(|&(v, coef)| coef * point[v]).sum();
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    }

    #[test]
    fn offsets_model_admits_known_points() {
        let x = example26();
        let model = irreducible_offsets_model(&x, 3).unwrap();
        assert!(satisfies(&model.ip, &[1, 0, 0, 3]));
        assert!(satisfies(&model.ip, &[0, 1, 0, 3]));
        let model = irreducible_offsets_model(&x, 4).unwrap();
        assert!(satisfies(&model.ip, &[1, 0, 0, 0]));
        assert!(satisfies(&model.ip, &[0, 0, 1, 0]));
        assert!(irreducible_offsets_model(&x, 0).is_err());
        assert!(irreducible_offsets_model(&x, 5).is_err());
    }

    #[test]
    fn offsets_model_degenerates_on_all_ones() {
        let ones = kz(5, &[1, 1, 1, 1]);
        let model = irreducible_offsets_model(&ones, 4).unwrap();
        assert!(model.ip.upper.iter().all(|&u| u == 0));
    }

    #[test]
    fn per_gap_model_regimes() {
        let x = example26();
        assert!(per_gap_model(&x, 13).is_ok());
        assert!(matches!(per_gap_model(&x, 6), Err(ModelError::WrongRegime { .. })));
        assert!(matches!(per_gap_model(&x, 14), Err(ModelError::NotSpecialGap { h: 14 })));
        let model = per_gap_model(&x, 13).unwrap();
        assert_eq!(model.ip.upper[2], 0); // y_3 pinned, k(13) = 3
        assert_eq!(model.meta.h, Some(13));
    }

    #[test]
    fn genus_m_closed_form() {
        let x = example26();
        assert_eq!(genus_m_part(&x, 6).unwrap(), kz(5, &[2, 1, 1, 1]));
        assert!(matches!(genus_m_part(&x, 13), Err(ModelError::WrongRegime { .. })));
        let big = kz(12, &[4, 2, 3, 2, 1, 1, 3, 3, 2, 2, 1]);
        assert_eq!(
            genus_m_part(&big, 21).unwrap(),
            kz(12, &[1, 1, 1, 1, 1, 1, 1, 1, 2, 1, 1])
        );
        assert_eq!(
            genus_m_part(&big, 22).unwrap(),
            kz(12, &[1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 1])
        );
    }

    #[test]
    fn genus_m_literal_model_has_unique_point() {
        let x = example26();
        let model = genus_m_model(&x, 6).unwrap();
        // y = x - 1 - e_1 = (0,1,2,3) is the unique feasible point.
        assert!(satisfies(&model.ip, &[0, 1, 2, 3]));
        assert!(!satisfies(&model.ip, &[1, 0, 2, 3]));
    }

    #[test]
    fn heuristic_model_layout() {
        let x = example26();
        let sg = x.special_gaps_above_m();
        let model = coverage_heuristic_model(&x, 19, &sg).unwrap();
        assert_eq!(model.ip.num_vars, 4 + 3);
        assert_eq!(model.meta.w_offset, Some(4));
        assert_eq!(model.meta.big_m, Some(5 * 4 + 5));
        // y = (1,0,0,0) covers 13 and 19 but not 6.
        assert!(satisfies(&model.ip, &[1, 0, 0, 0, 0, 1, 1]));
        assert!(!satisfies(&model.ip, &[1, 0, 0, 0, 1, 1, 1]));
        // Optimal objective can never exceed the number of special gaps.
        assert!(model.ip.objective.len() == sg.len());
    }

    #[test]
    fn set_cover_example() {
        let x = example26();
        let pool = vec![
            kz(5, &[2, 1, 1, 1]),
            kz(5, &[2, 1, 3, 1]),
            kz(5, &[1, 2, 3, 1]),
            kz(5, &[1, 2, 3, 4]),
            kz(5, &[2, 2, 2, 4]),
        ];
        let (model, dedup) = set_cover_model(&x, &[6, 13, 19], &pool).unwrap();
        assert_eq!(dedup.len(), 5);
        assert_eq!(model.ip.constraints.len(), 3);
        // The selection from the worked example covers all three gaps.
        assert!(satisfies(&model.ip, &[1, 0, 0, 1, 0]));
        // Dropping one of them leaves a gap uncovered.
        assert!(!satisfies(&model.ip, &[1, 0, 0, 0, 0]));
        // Empty gap list: trivially feasible with nothing selected.
        let (empty, _) = set_cover_model(&x, &[], &pool).unwrap();
        assert!(satisfies(&empty.ip, &[0, 0, 0, 0, 0]));
        // A pool that cannot cover some gap is an upstream bug.
        match set_cover_model(&x, &[6, 13, 19], &pool[..1]) {
            Err(ModelError::Uncoverable { h }) => assert_eq!(h, 13),
            other => panic!("expected Uncoverable, got {other:?}"),
        }
    }

    #[test]
    fn set_cover_dedupes_candidates() {
        let x = example26();
        let pool = vec![kz(5, &[2, 1, 1, 1]), kz(5, &[2, 1, 1, 1]), kz(5, &[1, 2, 3, 4])];
        let (model, dedup) = set_cover_model(&x, &[6, 13, 19], &pool).unwrap();
        assert_eq!(dedup.len(), 2);
        assert_eq!(model.ip.num_vars, 2);
    }

    #[test]
    fn compact_model_layout() {
        let x = example26();
        let sg = x.special_gaps_above_m();
        let model = compact_model(&x, &sg, false).unwrap();
        // One block for the smallest gap, two for the next, three for the
        // largest: six blocks of four offset variables.
        let blocks = 6;
        let n = 4;
        let s = sg.len();
        assert_eq!(model.ip.num_vars, blocks * n + blocks + blocks * s);
        assert_eq!(model.meta.y_block_offsets, vec![0, 4, 8, 12, 16, 20]);
        assert_eq!(model.meta.w_offset, Some(24));
        assert_eq!(model.meta.z_offset, Some(30));
        assert_eq!(model.meta.big_m, Some(4));
        assert!(matches!(compact_model(&x, &[], false), Err(ModelError::EmptySpecialGaps)));
    }

    #[test]
    fn compact_symmetric_disables_even_blocks() {
        let x = example26();
        let sg = x.special_gaps_above_m(); // 6, 13, 19
        let model = compact_model(&x, &sg, true).unwrap();
        let w = model.meta.w_offset.unwrap();
        assert_eq!(model.ip.upper[w], 0); // the single block for the even gap 6
        for b in 1..6 {
            assert_eq!(model.ip.upper[w + b], 1); // gap 13 and 19 copies
        }
        assert_eq!(model.meta.kind, ModelKind::CompactSymmetric);
    }

    #[test]
    fn all_models_reference_valid_variables() {
        let x = kz(12, &[4, 2, 3, 2, 1, 1, 3, 3, 2, 2, 1]);
        let sg = x.special_gaps_above_m();
        let small = example26();
        let cover_pool =
            vec![kz(5, &[2, 1, 1, 1]), kz(5, &[1, 2, 3, 4]), kz(5, &[2, 2, 2, 4])];
        let models = vec![
            per_gap_model(&x, 27).unwrap(),
            coverage_heuristic_model(&x, 37, &sg).unwrap(),
            compact_model(&x, &sg, false).unwrap(),
            genus_m_model(&x, 21).unwrap(),
            set_cover_model(&small, &[6, 13, 19], &cover_pool).unwrap().0,
        ];
        for model in &models {
            let ip = &model.ip;
            assert_eq!(ip.lower.len(), ip.num_vars);
            assert_eq!(ip.upper.len(), ip.num_vars);
            assert_eq!(ip.var_names.len(), ip.num_vars);
            for c in &ip.constraints {
                assert!(!c.terms.is_empty());
                for &(v, _) in &c.terms {
                    assert!(v < ip.num_vars);
                }
                assert!(c.terms.windows(2).all(|w| w[0].0 < w[1].0));
            }
            for &(v, _) in &ip.objective {
                assert!(v < ip.num_vars);
            }
        }
    }

    #[test]
    fn lp_export_mentions_all_sections() {
        let x = example26();
        let model = compact_model(&x, &x.special_gaps_above_m(), false).unwrap();
        let text = to_lp_format(&model.ip);
        for needle in ["Minimize", "Subject To", "Bounds", "Generals", "Binaries", "End"] {
            assert!(text.contains(needle), "missing {needle} in LP export");
        }
        assert!(text.contains("y1_1"));
        assert!(text.contains("w1"));
        assert!(text.contains("z1_1"));
    }
}
