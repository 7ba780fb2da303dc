//! Monomial curves `{n1, n2, n3}`: Herzog data, closed-form Markov bases of
//! the curve and of its Lawrence liftings, complexities, and lower bounds.
//!
//! Indices are 0-based internally; `c[i]` is the least positive multiplier
//! of `n[i]` expressible as a nonnegative combination of the other two.

use std::fmt;

use crate::config::{integer_coordinates, Configuration};
use crate::error::{Error, Result};
use crate::graver::{graver_basis, graver_basis_with, max_norm_element, CompletionLimits};
use crate::lawrence::Tableau;
use crate::markov::{is_semiconformal_split, is_strongly_semiconformal, markov_bases, MarkovBasis, MarkovKind};
use crate::matrix::IntMatrix;
use crate::vector::{canonical_set, IntVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Curve {
    n: [i64; 3],
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Curve {
    pub fn new(n1: i64, n2: i64, n3: i64) -> Result<Self> {
        if n1 <= 0 || n2 <= 0 || n3 <= 0 {
            return Err(Error::domain("curve entries must be positive"));
        }
        if gcd(gcd(n1, n2), n3) != 1 {
            return Err(Error::domain(format!("gcd({n1},{n2},{n3}) ≠ 1")));
        }
        Ok(Curve { n: [n1, n2, n3] })
    }

    pub fn entries(&self) -> [i64; 3] {
        self.n
    }

    pub fn config(&self) -> Configuration {
        Configuration::row(&self.n).expect("three columns")
    }

    /// Pairwise gcds removed: `n_i / (d_ij d_ik)`.
    pub fn reduce(&self) -> Curve {
        let [a, b, c] = self.n;
        let (d12, d13, d23) = (gcd(a, b), gcd(a, c), gcd(b, c));
        Curve { n: [a / (d12 * d13), b / (d12 * d23), c / (d13 * d23)] }
    }

    /// `Σ n_i / (d_ij d_ik)`, a lower bound for the Graver complexity.
    pub fn graver_lower_bound(&self) -> i64 {
        self.reduce().n.iter().sum()
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.n[0], self.n[1], self.n[2])
    }
}

pub fn reduce(curve: &Curve) -> Curve {
    curve.reduce()
}

pub fn graver_lower_bound(curve: &Curve) -> i64 {
    curve.graver_lower_bound()
}

/// `(j, k)`, the other two indices of `i` in cyclic order.
fn others(i: usize) -> (usize, usize) {
    ((i + 1) % 3, (i + 2) % 3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    /// `c_j n_j = c_k n_k` for the critical pair `(j, k)`; `odd` is the third index.
    CompleteIntersection { odd: usize },
    NonCompleteIntersection,
}

impl Classification {
    pub fn is_complete_intersection(&self) -> bool {
        matches!(self, Classification::CompleteIntersection { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HerzogData {
    pub curve: Curve,
    pub c: [i64; 3],
    /// `reps[i] = (r_ij, r_ik)` with `(j, k)` the cyclic successors of `i`,
    /// choosing the least `r_ij` when several exist.
    pub reps: [(i64, i64); 3],
    /// Every nonnegative representation of `c_i n_i`.
    pub all_reps: [Vec<(i64, i64)>; 3],
    pub classification: Classification,
}

/// All `(a, b) ≥ 0` with `a·n_j + b·n_k = target`, ordered by `a`.
fn representations(target: i64, nj: i64, nk: i64) -> Vec<(i64, i64)> {
    (0..=target / nj)
        .filter_map(|a| {
            let rest = target - a * nj;
            (rest % nk == 0).then_some((a, rest / nk))
        })
        .collect()
}

pub fn herzog_data(curve: &Curve) -> Result<HerzogData> {
    let n = curve.n;
    let mut c = [0i64; 3];
    let mut all_reps: [Vec<(i64, i64)>; 3] = Default::default();
    for i in 0..3 {
        let (j, k) = others(i);
        // c_i ≤ n_j since n_j·n_i = n_i·n_j.
        let found = (1..=n[j]).find_map(|ci| {
            let target = ci.checked_mul(n[i])?;
            let reps = representations(target, n[j], n[k]);
            (!reps.is_empty()).then_some((ci, reps))
        });
        let (ci, reps) = found.ok_or_else(|| Error::Consistency(format!("no multiplier found for n{}", i + 1)))?;
        c[i] = ci;
        all_reps[i] = reps;
    }
    let reps = [all_reps[0][0], all_reps[1][0], all_reps[2][0]];

    let critical = (0..3).find(|&i| {
        let (j, k) = others(i);
        c[j] * n[j] == c[k] * n[k]
    });
    let zero_rep = all_reps.iter().flatten().any(|&(a, b)| a == 0 || b == 0);
    if zero_rep != critical.is_some() {
        return Err(Error::Consistency(format!(
            "{curve}: zero representation ({zero_rep}) disagrees with critical relation ({})",
            critical.is_some()
        )));
    }
    let classification = match critical {
        Some(odd) => Classification::CompleteIntersection { odd },
        None => {
            if let Some(i) = (0..3).find(|&i| all_reps[i].len() != 1) {
                return Err(Error::Consistency(format!(
                    "{curve}: representation of c{}·n{} is not unique",
                    i + 1,
                    i + 1
                )));
            }
            Classification::NonCompleteIntersection
        }
    };
    Ok(HerzogData { curve: *curve, c, reps, all_reps, classification })
}

impl HerzogData {
    /// The vector `-c_i e_i + r_ij e_j + r_ik e_k` for a chosen representation.
    fn relation(&self, i: usize, rep: (i64, i64)) -> IntVec {
        let (j, k) = others(i);
        let mut v = [0i64; 3];
        v[i] = -self.c[i];
        v[j] = rep.0;
        v[k] = rep.1;
        IntVec::from(v)
    }

    /// `u_1, u_2, u_3` with `u_i = -c_i e_i + r_ij e_j + r_ik e_k`.
    pub fn relations(&self) -> [IntVec; 3] {
        [0, 1, 2].map(|i| self.relation(i, self.reps[i]))
    }

    /// In the complete-intersection case, the critical vector `-c_j e_j + c_k e_k`.
    pub fn critical_vector(&self) -> Option<IntVec> {
        match self.classification {
            Classification::CompleteIntersection { odd } => {
                let (j, k) = others(odd);
                let mut v = [0i64; 3];
                v[j] = -self.c[j];
                v[k] = self.c[k];
                Some(IntVec::from(v))
            }
            Classification::NonCompleteIntersection => None,
        }
    }

    /// Basis `(u, u_crit)` of the lattice used by the complete-intersection
    /// formulas; `u` is the relation of the odd index.
    fn ci_pair(&self, odd: usize, rep: (i64, i64)) -> (IntVec, IntVec) {
        (self.relation(odd, rep), self.critical_vector().expect("complete intersection"))
    }
}

/// The closed-form universal Markov basis of a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormMarkov {
    pub universal: MarkovBasis,
    /// Number of distinct minimal Markov bases.
    pub minimal_count: usize,
    /// The indispensable vectors, in the orientation of the closed form.
    pub indispensable: Vec<IntVec>,
}

fn ci_universal(h: &HerzogData, odd: usize, rep: (i64, i64)) -> Result<Vec<IntVec>> {
    let (j, k) = others(odd);
    let (u, crit) = h.ci_pair(odd, rep);
    let lo = -(rep.1 / h.c[k]);
    let hi = rep.0 / h.c[j];
    let mut out = vec![crit.clone()];
    for d in lo..=hi {
        out.push(crit.checked_scale(d)?.checked_add(&u)?);
    }
    Ok(out)
}

pub fn closed_form_markov(curve: &Curve) -> Result<ClosedFormMarkov> {
    let h = herzog_data(curve)?;
    let config = curve.config();
    let (elements, minimal_count, indispensable) = match h.classification {
        Classification::NonCompleteIntersection => {
            let u = h.relations();
            let sum = u[0].checked_add(&u[1])?.checked_add(&u[2])?;
            if !sum.is_zero() {
                return Err(Error::Consistency(format!("{curve}: u1 + u2 + u3 = {sum} ≠ 0")));
            }
            (u.to_vec(), 1, u.to_vec())
        }
        Classification::CompleteIntersection { odd } => {
            let all = ci_universal(&h, odd, h.reps[odd])?;
            let count = all.len() - 1;
            (all, count, vec![h.critical_vector().expect("complete intersection")])
        }
    };
    for e in &elements {
        config.check_kernel(e)?;
    }
    Ok(ClosedFormMarkov {
        universal: MarkovBasis { config, kind: MarkovKind::Universal, elements: canonical_set(elements)? },
        minimal_count,
        indispensable,
    })
}

/// The complete-intersection universal set built from an explicit choice of
/// representation for the odd index; the result does not depend on it.
pub fn closed_form_markov_with_rep(curve: &Curve, rep: (i64, i64)) -> Result<Vec<IntVec>> {
    let h = herzog_data(curve)?;
    match h.classification {
        Classification::CompleteIntersection { odd } => {
            if !h.all_reps[odd].contains(&rep) {
                return Err(Error::domain(format!("{rep:?} is not a representation of c·n for index {}", odd + 1)));
            }
            canonical_set(ci_universal(&h, odd, rep)?)
        }
        Classification::NonCompleteIntersection => Err(Error::domain("curve is not a complete intersection")),
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The universal Markov basis of `A^(r)` in closed form, as canonical tableaux.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormLawrence {
    pub r: usize,
    /// Canonical flat vectors, sorted.
    pub elements: Vec<IntVec>,
    pub tableaux: Vec<Tableau>,
    /// `|G(A)|` used in the count.
    pub k: usize,
    pub expected_count: usize,
    pub max_type: usize,
}

pub fn closed_form_lawrence_markov(curve: &Curve, r: usize) -> Result<ClosedFormLawrence> {
    if r < 2 {
        return Err(Error::domain(format!("lifting order must be at least 2, got {r}")));
    }
    let h = herzog_data(curve)?;
    let g = graver_basis(&curve.config())?;
    let k = g.len();
    let zero = IntVec::zeros(3);
    let mut flats = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            for u in &g.elements {
                let mut rows = vec![zero.clone(); r];
                rows[a] = u.clone();
                rows[b] = u.checked_neg()?;
                flats.push(Tableau { rows }.flatten());
            }
        }
    }
    let mut expected_count = k * binomial(r, 2);
    if h.classification == Classification::NonCompleteIntersection {
        let u = h.relations();
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for a in 0..r {
            for b in a + 1..r {
                for c in b + 1..r {
                    for p in PERMS {
                        let mut rows = vec![zero.clone(); r];
                        rows[a] = u[p[0]].clone();
                        rows[b] = u[p[1]].clone();
                        rows[c] = u[p[2]].clone();
                        flats.push(Tableau { rows }.flatten());
                    }
                }
            }
        }
        expected_count += 6 * binomial(r, 3);
    }
    let elements = canonical_set(flats)?;
    if elements.len() != expected_count {
        return Err(Error::Consistency(format!(
            "{curve}, r={r}: closed form has {} classes, formula gives {expected_count}",
            elements.len()
        )));
    }
    let tableaux = elements
        .iter()
        .map(|e| Tableau::from_flat(e, r, 3))
        .collect::<Result<Vec<_>>>()?;
    let max_type = tableaux.iter().map(Tableau::type_).max().unwrap_or(0);
    Ok(ClosedFormLawrence { r, elements, tableaux, k, expected_count, max_type })
}

/// 3 when the curve is not a complete intersection, 2 when it is.
pub fn markov_complexity(curve: &Curve) -> Result<usize> {
    Ok(match herzog_data(curve)?.classification {
        Classification::NonCompleteIntersection => 3,
        Classification::CompleteIntersection { .. } => 2,
    })
}

/// Maximum 1-norm in the Graver basis of the matrix with columns `B·s`,
/// `s` running over the indispensable vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsBound {
    pub bound: i64,
    pub witness: Option<IntVec>,
    /// The matrix `B·S(A)`.
    pub matrix: IntMatrix,
    pub graver: Vec<IntVec>,
}

pub fn hs_lower_bound(curve: &Curve, coupling: &Configuration, limits: &CompletionLimits) -> Result<HsBound> {
    if coupling.n() != 3 {
        return Err(Error::domain(format!("coupling must have 3 columns, has {}", coupling.n())));
    }
    let closed = closed_form_markov(curve)?;
    // Cross-check the closed-form indispensable set against the fiber criterion.
    let brute = markov_bases(&curve.config(), limits)?.indispensable.elements;
    if canonical_set(closed.indispensable.clone())? != brute {
        return Err(Error::Consistency(format!("{curve}: indispensable set disagrees with brute force")));
    }
    let columns = closed
        .indispensable
        .iter()
        .map(|s| coupling.matrix().mul_vec(s))
        .collect::<Result<Vec<_>>>()?;
    let matrix = IntMatrix::from_columns(coupling.matrix().rows(), &columns)?;
    let g = graver_basis_with(&Configuration::new(matrix.clone())?, limits)?;
    let (bound, witness) = max_norm_element(&g.elements)?;
    Ok(HsBound { bound, witness, matrix, graver: g.elements })
}

/// Where a lattice vector sits relative to the distinguished relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanPosition {
    /// `v = alpha · (sign · u_index)`.
    Ray { alpha: i64, index: usize, sign: i64 },
    /// `v = alpha·(-u_i) + beta·u_j` with `alpha, beta > 0` (not a complete intersection).
    Cone { alpha: i64, i: usize, beta: i64, j: usize, ssc: bool },
    /// Complete intersection: `v = alpha·(-u) + beta·(sign·u_crit)` when
    /// `negative_first`, else `v = beta·(sign·u_crit) + alpha·u`.
    CompleteIntersection {
        alpha: i64,
        beta: i64,
        sign: i64,
        negative_first: bool,
        semiconformal: bool,
        ssc: bool,
    },
}

impl FanPosition {
    pub fn is_ssc(&self) -> bool {
        match self {
            FanPosition::Ray { .. } => false,
            FanPosition::Cone { ssc, .. } | FanPosition::CompleteIntersection { ssc, .. } => *ssc,
        }
    }
}

/// For the complete-intersection case the pair `(u, u_crit)` used by
/// [`fan_position`]: `u` is the relation of the odd index (least `r_ij`).
pub fn ci_basis(curve: &Curve) -> Result<(IntVec, IntVec)> {
    let h = herzog_data(curve)?;
    match h.classification {
        Classification::CompleteIntersection { odd } => Ok(h.ci_pair(odd, h.reps[odd])),
        Classification::NonCompleteIntersection => Err(Error::domain("curve is not a complete intersection")),
    }
}

pub fn fan_position(curve: &Curve, v: &IntVec) -> Result<FanPosition> {
    let config = curve.config();
    config.check_nonzero_kernel(v)?;
    let h = herzog_data(curve)?;
    match h.classification {
        Classification::NonCompleteIntersection => {
            let u = h.relations();
            let coords = integer_coordinates(&u[..2], v)?
                .ok_or_else(|| Error::Consistency(format!("{v} not spanned by u1, u2")))?;
            // Coordinates of u1, u2, u3 in the basis (u1, u2).
            let basis: [[i64; 2]; 3] = [[1, 0], [0, 1], [-1, -1]];
            let (a, b) = (coords[0], coords[1]);
            for (idx, e) in basis.iter().enumerate() {
                for sign in [1, -1] {
                    let (x, y) = (sign * e[0], sign * e[1]);
                    // v = alpha·(x, y) with alpha > 0
                    let det = a * y - b * x;
                    if det == 0 {
                        let alpha = if x != 0 { a / x } else { b / y };
                        if alpha > 0 {
                            return Ok(FanPosition::Ray { alpha, index: idx, sign });
                        }
                    }
                }
            }
            for i in 0..3 {
                for j in 0..3 {
                    if i == j {
                        continue;
                    }
                    let (p, q) = ([-basis[i][0], -basis[i][1]], basis[j]);
                    let det = p[0] * q[1] - p[1] * q[0];
                    // Any two of u1, u2, u3 form a lattice basis, so det = ±1.
                    let alpha = (a * q[1] - b * q[0]) * det;
                    let beta = (p[0] * b - p[1] * a) * det;
                    if alpha > 0 && beta > 0 {
                        let first = u[i].checked_neg()?.checked_scale(alpha)?;
                        let second = u[j].checked_scale(beta)?;
                        let ssc = is_strongly_semiconformal(v, &[first, second])?;
                        return Ok(FanPosition::Cone { alpha, i, beta, j, ssc });
                    }
                }
            }
            Err(Error::Consistency(format!("{v} lies in no cone of the fan")))
        }
        Classification::CompleteIntersection { odd } => {
            let (u, crit) = h.ci_pair(odd, h.reps[odd]);
            let coords = integer_coordinates(&[u.clone(), crit.clone()], v)?
                .ok_or_else(|| Error::Consistency(format!("{v} not spanned by u, u_crit")))?;
            let (a, b) = (coords[0], coords[1]);
            let sign = if b < 0 { -1 } else { 1 };
            let beta = b.abs();
            let crit_part = crit.checked_scale(b)?;
            let (alpha, negative_first, first, second) = if a <= 0 {
                (-a, true, u.checked_scale(a)?, crit_part)
            } else {
                (a, false, crit_part, u.checked_scale(a)?)
            };
            let proper = alpha > 0 && beta > 0;
            let semiconformal = proper && is_semiconformal_split(v, &first, &second)?;
            let ssc = proper && is_strongly_semiconformal(v, &[first, second])?;
            Ok(FanPosition::CompleteIntersection { alpha, beta, sign, negative_first, semiconformal, ssc })
        }
    }
}

/// Brute-force cross-check of the closed forms for a curve; lifting orders
/// in `lawrence` are checked against the Markov engine on `A^(r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveVerification {
    pub curve: Curve,
    pub markov_ok: bool,
    pub lawrence: Vec<(usize, usize, usize)>,
}

pub fn verify_curve(curve: &Curve, lawrence: &[usize], limits: &CompletionLimits) -> Result<CurveVerification> {
    let closed = closed_form_markov(curve)?;
    let brute = markov_bases(&curve.config(), limits)?;
    if closed.universal.elements != brute.universal.elements {
        return Err(Error::Consistency(format!(
            "{curve}: closed-form universal basis {:?} ≠ brute force {:?}",
            closed.universal.elements, brute.universal.elements
        )));
    }
    let choices = crate::markov::count_minimal_markov_bases(&brute.graver)?;
    if choices != closed.minimal_count as u128 {
        return Err(Error::Consistency(format!(
            "{curve}: closed form counts {} minimal bases, fibers give {choices}",
            closed.minimal_count
        )));
    }
    let mut rows = Vec::new();
    for &r in lawrence {
        let cf = closed_form_lawrence_markov(curve, r)?;
        let lifted = crate::lawrence::lift(&curve.config(), r)?;
        let b = markov_bases(&lifted, limits)?;
        if b.universal.elements != cf.elements || b.indispensable.elements != cf.elements {
            return Err(Error::Consistency(format!(
                "{curve}, r={r}: closed form ({}) vs universal ({}) / indispensable ({})",
                cf.elements.len(),
                b.universal.len(),
                b.indispensable.len()
            )));
        }
        rows.push((r, cf.elements.len(), cf.max_type));
    }
    Ok(CurveVerification { curve: *curve, markov_ok: true, lawrence: rows })
}
