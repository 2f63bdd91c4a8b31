//! Exact arithmetic of numerical semigroups in Kunz coordinates.
//!
//! The central type is [`KunzCoordinates`]: a multiplicity `m >= 2` together
//! with a vector `x` of length `m - 1` whose entry `x_i` counts how many
//! positive multiples of `m` must be added to the residue `i` before the
//! class enters the semigroup. Validity is characterized by a system of
//! diophantine inequalities (the Kunz polytope):
//!
//! ```text
//! x_i >= 1                                   1 <= i <= m-1
//! x_i + x_j - x_{i+j}   >= 0                 i <= j, i+j <= m-1
//! x_i + x_j - x_{i+j-m} >= -1                i <= j, i+j >  m
//! ```
//!
//! All operations are pure functions over immutable values.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

/// Multiplicities above this are rejected so that `m * x_i + i` stays well
/// inside `i64` range.
pub const MAX_MULTIPLICITY: i64 = 1_000_000;
/// Bound on Kunz coordinates and on generator values, for the same reason.
pub const MAX_COORDINATE: i64 = 1_000_000_000_000;

/// Errors produced by semigroup construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    /// The generators have a common divisor greater than one, so the
    /// complement of the generated monoid is infinite.
    GcdNotOne,
    /// The semigroup is all of the non-negative integers (multiplicity 1);
    /// Apéry sets and Kunz coordinates require multiplicity at least 2.
    TrivialSemigroup,
    /// No generators were given.
    EmptyGenerators,
    /// A generator was zero or negative.
    NonPositiveGenerator(i64),
    /// The vector violates the Kunz polytope system; the message names the
    /// first violated inequality.
    InvalidKunz(String),
    /// A coordinate vector has the wrong length for its multiplicity.
    DimensionMismatch { expected: usize, got: usize },
    /// Two coordinate vectors with different multiplicities were combined.
    MultiplicityMismatch { left: i64, right: i64 },
    /// An index outside `1..=m-1` was used.
    IndexOutOfRange { index: usize, m: i64 },
    /// Input exceeds the fixed-width arithmetic guards.
    InputTooLarge(String),
}

impl fmt::Display for SemigroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemigroupError::GcdNotOne => write!(f, "generators must have gcd 1"),
            SemigroupError::TrivialSemigroup => {
                write!(f, "multiplicity 1 semigroup has no Kunz coordinates")
            }
            SemigroupError::EmptyGenerators => write!(f, "generator list is empty"),
            SemigroupError::NonPositiveGenerator(g) => {
                write!(f, "generator {g} is not a positive integer")
            }
            SemigroupError::InvalidKunz(msg) => write!(f, "not a Kunz coordinates vector: {msg}"),
            SemigroupError::DimensionMismatch { expected, got } => {
                write!(f, "expected vector of length {expected}, got {got}")
            }
            SemigroupError::MultiplicityMismatch { left, right } => {
                write!(f, "multiplicity mismatch: {left} vs {right}")
            }
            SemigroupError::IndexOutOfRange { index, m } => {
                write!(f, "index {index} out of range 1..={}", m - 1)
            }
            SemigroupError::InputTooLarge(msg) => write!(f, "input too large: {msg}"),
        }
    }
}

impl std::error::Error for SemigroupError {}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A numerical semigroup given by a system of generators.
///
/// The generator list is kept sorted and deduplicated but is not forced to
/// be minimal; [`KunzCoordinates::to_semigroup`] produces minimal lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<i64>,
}

impl NumericalSemigroup {
    /// Builds a semigroup from generators. Sorts and deduplicates; rejects
    /// empty lists, non-positive values, and lists with gcd other than 1.
    /// A list containing 1 collapses to `<1>`, the whole of the
    /// non-negative integers.
    pub fn new(generators: &[i64]) -> Result<Self, SemigroupError> {
        if generators.is_empty() {
            return Err(SemigroupError::EmptyGenerators);
        }
        let mut gens = generators.to_vec();
        for &g in &gens {
            if g < 1 {
                return Err(SemigroupError::NonPositiveGenerator(g));
            }
            if g > MAX_COORDINATE {
                return Err(SemigroupError::InputTooLarge(format!(
                    "generator {g} exceeds {MAX_COORDINATE}"
                )));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        if gens[0] == 1 {
            return Ok(NumericalSemigroup { generators: vec![1] });
        }
        let g = gens.iter().fold(0, |acc, &v| gcd(acc, v));
        if g != 1 {
            return Err(SemigroupError::GcdNotOne);
        }
        Ok(NumericalSemigroup { generators: gens })
    }

    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    /// The multiplicity: the smallest nonzero element, which is always the
    /// smallest generator.
    pub fn multiplicity(&self) -> i64 {
        self.generators[0]
    }

    /// Computes the Apéry set with respect to the multiplicity: for each
    /// residue `i` modulo `m`, the least element of the semigroup congruent
    /// with `i`. This is a single-source shortest-path problem on the `m`
    /// residue classes with one weighted edge per generator, solved with
    /// Dijkstra's algorithm.
    pub fn apery_set(&self) -> Result<AperySet, SemigroupError> {
        let m = self.multiplicity();
        if m == 1 {
            return Err(SemigroupError::TrivialSemigroup);
        }
        if m > MAX_MULTIPLICITY {
            return Err(SemigroupError::InputTooLarge(format!(
                "multiplicity {m} exceeds {MAX_MULTIPLICITY}"
            )));
        }
        let mu = m as usize;
        let mut w = vec![i64::MAX; mu];
        w[0] = 0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0i64, 0usize)));
        while let Some(Reverse((d, r))) = heap.pop() {
            if d > w[r] {
                continue;
            }
            for &g in &self.generators {
                let nd = d.checked_add(g).ok_or_else(|| {
                    SemigroupError::InputTooLarge("Apéry element overflows i64".into())
                })?;
                let nr = (r + (g % m) as usize) % mu;
                if nd < w[nr] {
                    w[nr] = nd;
                    heap.push(Reverse((nd, nr)));
                }
            }
        }
        debug_assert!(w.iter().all(|&v| v != i64::MAX), "gcd 1 guarantees reachability");
        Ok(AperySet { m, w })
    }

    /// The Kunz coordinates of the semigroup, `x_i = (w_i - i) / m`.
    pub fn kunz_coordinates(&self) -> Result<KunzCoordinates, SemigroupError> {
        let ap = self.apery_set()?;
        let m = ap.m;
        let x: Vec<i64> = (1..m as usize).map(|i| (ap.w[i] - i as i64) / m).collect();
        debug_assert!((1..m as usize).all(|i| (ap.w[i] - i as i64) % m == 0));
        KunzCoordinates::new(m, x)
    }

    /// Tests whether two generator lists present the same semigroup, by
    /// comparing Kunz coordinates (the paper-facing examples print
    /// non-minimal generator lists, so literal list equality is too strict).
    pub fn same_semigroup(&self, other: &NumericalSemigroup) -> Result<bool, SemigroupError> {
        if self.multiplicity() == 1 || other.multiplicity() == 1 {
            return Ok(self.multiplicity() == other.multiplicity());
        }
        Ok(self.kunz_coordinates()? == other.kunz_coordinates()?)
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

/// The Apéry set of a semigroup with respect to its multiplicity.
///
/// `w[0] = 0` and `w[i]` is the least element congruent with `i` modulo `m`;
/// every `w[i]` with `i >= 1` is at least `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AperySet {
    m: i64,
    w: Vec<i64>,
}

impl AperySet {
    pub fn multiplicity(&self) -> i64 {
        self.m
    }

    /// The elements `w_0 = 0, w_1, ..., w_{m-1}`, indexed by residue.
    pub fn elements(&self) -> &[i64] {
        &self.w
    }
}

/// Kunz coordinates of a numerical semigroup of multiplicity `m`.
///
/// Construction validates the full Kunz polytope system, so a value of this
/// type always corresponds to an actual numerical semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KunzCoordinates {
    m: i64,
    x: Vec<i64>,
}

/// Checks whether `x` is the Kunz coordinates vector of some numerical
/// semigroup of multiplicity `m`, i.e. whether it satisfies all three
/// inequality families of the Kunz polytope. `x` must have length `m - 1`.
pub fn is_kunz_vector(m: i64, x: &[i64]) -> Result<bool, SemigroupError> {
    Ok(kunz_violation(m, x)?.is_none())
}

/// Like [`is_kunz_vector`] but reports the first violated inequality.
fn kunz_violation(m: i64, x: &[i64]) -> Result<Option<String>, SemigroupError> {
    if m < 2 {
        return Err(SemigroupError::TrivialSemigroup);
    }
    if m > MAX_MULTIPLICITY {
        return Err(SemigroupError::InputTooLarge(format!(
            "multiplicity {m} exceeds {MAX_MULTIPLICITY}"
        )));
    }
    let n = (m - 1) as usize;
    if x.len() != n {
        return Err(SemigroupError::DimensionMismatch { expected: n, got: x.len() });
    }
    for (i, &v) in x.iter().enumerate() {
        if v > MAX_COORDINATE {
            return Err(SemigroupError::InputTooLarge(format!(
                "coordinate x_{} = {v} exceeds {MAX_COORDINATE}",
                i + 1
            )));
        }
        if v < 1 {
            return Ok(Some(format!("x_{} = {} < 1", i + 1, v)));
        }
    }
    // 1-based indexing below mirrors the inequality families.
    let xi = |i: usize| x[i - 1];
    for i in 1..=n {
        for j in i..=n {
            if i + j <= n {
                if xi(i) + xi(j) - xi(i + j) < 0 {
                    return Ok(Some(format!("x_{i} + x_{j} - x_{} < 0", i + j)));
                }
            } else if i + j > n + 1 {
                // i + j > m; the case i + j == m has no constraint.
                if xi(i) + xi(j) - xi(i + j - n - 1) < -1 {
                    return Ok(Some(format!("x_{i} + x_{j} - x_{} < -1", i + j - n - 1)));
                }
            }
        }
    }
    Ok(None)
}

impl KunzCoordinates {
    /// Validates and wraps a coordinate vector of length `m - 1`.
    pub fn new(m: i64, x: Vec<i64>) -> Result<Self, SemigroupError> {
        match kunz_violation(m, &x)? {
            None => Ok(KunzCoordinates { m, x }),
            Some(msg) => Err(SemigroupError::InvalidKunz(msg)),
        }
    }

    pub fn multiplicity(&self) -> i64 {
        self.m
    }

    /// The coordinates `x_1, ..., x_{m-1}` (slice index `i - 1` holds `x_i`).
    pub fn coords(&self) -> &[i64] {
        &self.x
    }

    /// 1-based coordinate access.
    pub fn coord(&self, i: usize) -> i64 {
        self.x[i - 1]
    }

    /// `n mod m` as a usize.
    pub fn residue(&self, n: i64) -> usize {
        (n.rem_euclid(self.m)) as usize
    }

    /// The i-th Apéry element `m * x_i + i`; index 0 gives 0.
    pub fn apery_element(&self, i: usize) -> i64 {
        if i == 0 {
            0
        } else {
            self.m * self.x[i - 1] + i as i64
        }
    }

    /// The genus (number of gaps): `sum_i x_i`.
    pub fn genus(&self) -> i64 {
        self.x.iter().sum()
    }

    /// The Frobenius number (largest gap): `max_i (m x_i + i) - m`.
    /// Residues differ, so the maximum is attained exactly once.
    pub fn frobenius(&self) -> i64 {
        (1..=self.x.len()).map(|i| self.apery_element(i)).max().unwrap() - self.m
    }

    /// Membership test: a non-negative `n` lies in the semigroup iff the
    /// least element of its residue class, `m x_{n mod m} + (n mod m)`, does
    /// not exceed it. Multiples of `m` are always members.
    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let r = self.residue(n);
        if r == 0 {
            return true;
        }
        self.apery_element(r) <= n
    }

    /// All gaps, sorted ascending. The gaps congruent with `i` are exactly
    /// `i, i + m, ..., i + (x_i - 1) m`, so there are `genus` of them.
    pub fn gaps(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.genus().max(0) as usize);
        for i in 1..=self.x.len() {
            let mut n = i as i64;
            while n < self.apery_element(i) {
                out.push(n);
                n += self.m;
            }
        }
        out.sort_unstable();
        out
    }

    /// The special gaps greater than the multiplicity, sorted ascending:
    /// gaps `h > m` such that adjoining `h` leaves the set closed under
    /// addition. Runs in O(m^2).
    ///
    /// A candidate `z = m (x_i - 1) + i` qualifies iff
    /// `x_i + x_j > x_{i+j}` for every `j` with `i + j < m`, and
    /// `x_i + x_j > x_{i+j-m} - 1` for every `j` with `i + j > m`, and
    /// `z > m`, and `2z >= m x_{k} + k` for `k = 2z mod m` (satisfied
    /// outright when `k = 0`, since multiples of `m` are members).
    pub fn special_gaps_above_m(&self) -> Vec<i64> {
        let n = self.x.len();
        let xi = |i: usize| self.x[i - 1];
        let mut out = Vec::new();
        'cand: for i in 1..=n {
            let z = self.m * (xi(i) - 1) + i as i64;
            if z <= self.m {
                continue;
            }
            for j in 1..=n {
                if i + j < n + 1 {
                    if xi(i) + xi(j) <= xi(i + j) {
                        continue 'cand;
                    }
                } else if i + j > n + 1 && xi(i) + xi(j) <= xi(i + j - n - 1) - 1 {
                    continue 'cand;
                }
            }
            let k = self.residue(2 * z);
            if k != 0 && 2 * z < self.apery_element(k) {
                continue;
            }
            out.push(z);
        }
        out.sort_unstable();
        out
    }

    /// m-irreducibility: the semigroup is not an intersection of two
    /// strictly larger semigroups of the same multiplicity. Characterized by
    /// `genus in { m-1, m, ceil((F+1)/2) }`.
    pub fn is_m_irreducible(&self) -> bool {
        let g = self.genus();
        // ceil((F + 1) / 2) with F >= 1
        g == self.m - 1 || g == self.m || g == (self.frobenius() + 2) / 2
    }

    /// Whether `self <= x` componentwise and both share the multiplicity;
    /// such vectors encode the oversemigroups of `x`'s semigroup that keep
    /// multiplicity `m`.
    pub fn is_undercoordinate_of(&self, x: &KunzCoordinates) -> Result<bool, SemigroupError> {
        if self.m != x.m {
            return Err(SemigroupError::MultiplicityMismatch { left: self.m, right: x.m });
        }
        Ok(self.x.iter().zip(&x.x).all(|(a, b)| a <= b))
    }

    /// Reconstructs a minimal generator list. The semigroup is generated by
    /// `m` together with its Apéry elements; an Apéry element `w_i` is
    /// redundant exactly when `w_j + w_{(i-j) mod m} <= w_i` for some other
    /// pair of nonzero residues.
    pub fn to_semigroup(&self) -> NumericalSemigroup {
        let n = self.x.len();
        let mut gens = vec![self.m];
        for i in 1..=n {
            let wi = self.apery_element(i);
            let mut minimal = true;
            for j in 1..=n {
                if j == i {
                    continue;
                }
                let other = (i + n + 1 - j) % (n + 1); // (i - j) mod m, nonzero since j != i
                if self.apery_element(j) as i128 + self.apery_element(other) as i128 <= wi as i128
                {
                    minimal = false;
                    break;
                }
            }
            if minimal {
                gens.push(wi);
            }
        }
        gens.sort_unstable();
        NumericalSemigroup { generators: gens }
    }
}

impl fmt::Display for KunzCoordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:(", self.m)?;
        for (i, v) in self.x.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Componentwise maximum of Kunz vectors sharing a multiplicity: the Kunz
/// coordinates of the intersection of the corresponding semigroups. The
/// least element of the intersection congruent with `i` is the largest of
/// the individual least elements, hence the maximum.
pub fn intersect(xs: &[KunzCoordinates]) -> Result<KunzCoordinates, SemigroupError> {
    let first = xs.first().ok_or(SemigroupError::EmptyGenerators)?;
    let m = first.m;
    let mut acc = first.x.clone();
    for x in &xs[1..] {
        if x.m != m {
            return Err(SemigroupError::MultiplicityMismatch { left: m, right: x.m });
        }
        for (a, &b) in acc.iter_mut().zip(&x.x) {
            *a = (*a).max(b);
        }
    }
    // Intersections of semigroups containing m stay valid; new() re-checks.
    KunzCoordinates::new(m, acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns(gens: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::new(gens).unwrap()
    }

    fn kz(m: i64, x: &[i64]) -> KunzCoordinates {
        KunzCoordinates::new(m, x.to_vec()).unwrap()
    }

    #[test]
    fn apery_set_of_small_semigroups() {
        assert_eq!(ns(&[5, 11, 12, 18]).apery_set().unwrap().elements(), &[0, 11, 12, 18, 24]);
        assert_eq!(ns(&[2, 3]).apery_set().unwrap().elements(), &[0, 3]);
        assert_eq!(ns(&[5, 6, 7, 8, 9]).apery_set().unwrap().elements(), &[0, 6, 7, 8, 9]);
    }

    #[test]
    fn apery_set_errors() {
        assert_eq!(NumericalSemigroup::new(&[4, 6]).unwrap_err(), SemigroupError::GcdNotOne);
        assert_eq!(ns(&[1]).apery_set().unwrap_err(), SemigroupError::TrivialSemigroup);
        assert_eq!(NumericalSemigroup::new(&[]).unwrap_err(), SemigroupError::EmptyGenerators);
        assert_eq!(
            NumericalSemigroup::new(&[0, 3]).unwrap_err(),
            SemigroupError::NonPositiveGenerator(0)
        );
    }

    #[test]
    fn kunz_coordinates_from_generators() {
        assert_eq!(ns(&[5, 11, 12, 18]).kunz_coordinates().unwrap(), kz(5, &[2, 2, 3, 4]));
        assert_eq!(
            ns(&[12, 17, 18, 23, 26, 28, 33, 39]).kunz_coordinates().unwrap(),
            kz(12, &[4, 2, 3, 2, 1, 1, 3, 3, 2, 2, 1])
        );
        assert_eq!(ns(&[5, 6, 7, 8, 9]).kunz_coordinates().unwrap(), kz(5, &[1, 1, 1, 1]));
    }

    #[test]
    fn generators_from_kunz_are_minimal() {
        assert_eq!(kz(5, &[2, 1, 1, 1]).to_semigroup(), ns(&[5, 7, 8, 9, 11]));
        // <5,6,12,18,24> is a valid but non-minimal presentation of the
        // same semigroup: 12, 18 and 24 are multiples of 6.
        assert_eq!(kz(5, &[1, 2, 3, 4]).to_semigroup(), ns(&[5, 6]));
        assert!(ns(&[5, 6, 12, 18, 24])
            .same_semigroup(&kz(5, &[1, 2, 3, 4]).to_semigroup())
            .unwrap());
        assert_eq!(kz(5, &[1, 1, 1, 1]).to_semigroup(), ns(&[5, 6, 7, 8, 9]));
        assert!(ns(&[5, 11, 7, 8, 9]).same_semigroup(&kz(5, &[2, 1, 1, 1]).to_semigroup()).unwrap());
    }

    #[test]
    fn kunz_vector_membership_in_polytope() {
        assert!(is_kunz_vector(5, &[2, 2, 3, 4]).unwrap());
        assert!(is_kunz_vector(5, &[1, 1, 1, 1]).unwrap());
        // x_1 + x_2 - x_3 = -1 < 0 violates the first family.
        assert!(!is_kunz_vector(5, &[1, 1, 3, 1]).unwrap());
        assert!(!is_kunz_vector(5, &[1, 0, 1, 1]).unwrap());
        assert_eq!(
            is_kunz_vector(5, &[1, 1, 1]).unwrap_err(),
            SemigroupError::DimensionMismatch { expected: 4, got: 3 }
        );
    }

    #[test]
    fn genus_counts_gaps() {
        assert_eq!(kz(5, &[2, 2, 3, 4]).genus(), 11);
        assert_eq!(kz(5, &[1, 1, 1, 1]).genus(), 4);
        assert_eq!(kz(12, &[4, 2, 3, 2, 1, 1, 3, 3, 2, 2, 1]).genus(), 24);
    }

    #[test]
    fn frobenius_number() {
        assert_eq!(kz(5, &[2, 2, 3, 4]).frobenius(), 19);
        assert_eq!(kz(5, &[1, 1, 1, 1]).frobenius(), 4);
        assert_eq!(kz(5, &[1, 2, 3, 4]).frobenius(), 19);
    }

    #[test]
    fn membership() {
        let x = kz(5, &[2, 2, 3, 4]);
        assert!(x.contains(11));
        assert!(!x.contains(19));
        assert!(x.contains(20));
        assert!(x.contains(0));
        assert!(!x.contains(-5));
    }

    #[test]
    fn gaps_enumeration() {
        assert_eq!(kz(5, &[1, 1, 1, 1]).gaps(), vec![1, 2, 3, 4]);
        let x = kz(5, &[2, 2, 3, 4]);
        let gaps = x.gaps();
        assert_eq!(gaps.len() as i64, x.genus());
        for h in [6, 13, 19] {
            assert!(gaps.contains(&h));
        }
        assert_eq!(kz(5, &[1, 2, 3, 4]).gaps(), vec![1, 2, 3, 4, 7, 8, 9, 13, 14, 19]);
        assert_eq!(*x.gaps().last().unwrap(), x.frobenius());
    }

    #[test]
    fn special_gaps() {
        assert_eq!(kz(5, &[2, 2, 3, 4]).special_gaps_above_m(), vec![6, 13, 19]);
        assert_eq!(
            kz(12, &[4, 2, 3, 2, 1, 1, 3, 3, 2, 2, 1]).special_gaps_above_m(),
            vec![21, 22, 27, 31, 32, 37]
        );
        assert!(kz(5, &[1, 1, 1, 1]).special_gaps_above_m().is_empty());
        assert!(kz(7, &[1, 1, 1, 1, 1, 1]).special_gaps_above_m().is_empty());
    }

    #[test]
    fn m_irreducibility() {
        assert!(kz(5, &[1, 2, 3, 4]).is_m_irreducible());
        assert!(kz(5, &[1, 1, 1, 1]).is_m_irreducible());
        assert!(!kz(5, &[2, 2, 3, 4]).is_m_irreducible());
        // Cross-check against the special-gap criterion: <= 1 special gap.
        for (m, x) in [
            (5i64, vec![1, 2, 3, 4]),
            (5, vec![1, 1, 1, 1]),
            (5, vec![2, 2, 3, 4]),
            (12, vec![4, 2, 3, 2, 1, 1, 3, 3, 2, 2, 1]),
        ] {
            let x = kz(m, &x);
            assert_eq!(x.is_m_irreducible(), x.special_gaps_above_m().len() <= 1, "{x}");
        }
    }

    #[test]
    fn intersection_is_componentwise_max() {
        let a = kz(5, &[2, 1, 1, 1]);
        let b = kz(5, &[1, 2, 3, 4]);
        assert_eq!(intersect(&[a.clone(), b.clone()]).unwrap(), kz(5, &[2, 2, 3, 4]));
        assert_eq!(intersect(&[a.clone(), a.clone()]).unwrap(), a);
        let ones = kz(5, &[1, 1, 1, 1]);
        assert_eq!(intersect(&[ones, b.clone()]).unwrap(), b);
        assert_eq!(
            intersect(&[kz(5, &[1, 1, 1, 1]), kz(4, &[1, 1, 1])]).unwrap_err(),
            SemigroupError::MultiplicityMismatch { left: 5, right: 4 }
        );
    }

    #[test]
    fn undercoordinate_order() {
        let x = kz(5, &[2, 2, 3, 4]);
        let u = kz(5, &[1, 2, 3, 4]);
        assert!(u.is_undercoordinate_of(&x).unwrap());
        assert!(x.is_undercoordinate_of(&x).unwrap());
        assert!(!x.is_undercoordinate_of(&u).unwrap());
    }

    #[test]
    fn round_trip_generators_kunz() {
        for (m, x) in [
            (5i64, vec![2, 2, 3, 4]),
            (5, vec![1, 1, 1, 1]),
            (12, vec![4, 2, 3, 2, 1, 1, 3, 3, 2, 2, 1]),
            (7, vec![3, 1, 2, 1, 1, 2]),
        ] {
            if !is_kunz_vector(m, &x).unwrap() {
                continue;
            }
            let k = kz(m, &x);
            assert_eq!(k.to_semigroup().kunz_coordinates().unwrap(), k);
        }
    }
}
