//! Graver bases by normal-form completion.
//!
//! Starting from a lattice basis, pairwise sums are reduced by conformal
//! reduction (subtract any stored `v` with `v ⊑ w`) and every nonzero normal
//! form is added, until all sums reduce to zero. Elements are stored up to
//! sign; for every stored pair `{f, g}` both `f + g` and `f - g` are examined.
//! Pairs are processed in insertion order: the pairs created by the `k`-th
//! stored element are handled after those of every earlier element.

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::vector::IntVec;

/// Caps for the completion procedure. Exceeding either yields
/// [`Error::ResourceLimit`]; output is never truncated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompletionLimits {
    /// Maximum number of critical pairs enqueued.
    pub max_pairs: usize,
    /// Maximum number of elements stored at any time.
    pub max_elements: usize,
    /// Skip pairs whose sum is a conformal sum (it always reduces to zero).
    pub skip_conformal_pairs: bool,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits {
            max_pairs: 1_000_000,
            max_elements: 1_000_000,
            skip_conformal_pairs: true,
        }
    }
}

impl CompletionLimits {
    pub fn unlimited() -> Self {
        CompletionLimits {
            max_pairs: usize::MAX,
            max_elements: usize::MAX,
            skip_conformal_pairs: true,
        }
    }
}

/// The Graver basis of a configuration: one canonical representative per
/// sign class, sorted graded-lex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraverBasis {
    pub config: Configuration,
    pub elements: Vec<IntVec>,
}

impl GraverBasis {
    /// Number of sign classes.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, u: &IntVec) -> bool {
        u.canonicalize()
            .map(|c| self.elements.binary_search(&c).is_ok())
            .unwrap_or(false)
    }
}

pub fn graver_basis(config: &Configuration) -> Result<GraverBasis> {
    graver_basis_with(config, &CompletionLimits::default())
}

pub fn graver_basis_with(config: &Configuration, limits: &CompletionLimits) -> Result<GraverBasis> {
    let seed = config.kernel_basis()?.to_vec();
    let elements = complete(config.n(), &seed, limits)?;
    Ok(GraverBasis { config: config.clone(), elements })
}

/// Runs the completion from an arbitrary generating set of a lattice in
/// `Z^n` and returns the ⊑-minimal elements, canonical-signed and sorted.
pub fn complete(n: usize, seed: &[IntVec], limits: &CompletionLimits) -> Result<Vec<IntVec>> {
    let mut store = Store::new(n);
    for s in seed {
        if s.len() != n {
            return Err(Error::domain("seed vector of wrong length"));
        }
        let f = store.normal_form(s.clone())?;
        if !f.is_zero() {
            store.push(f.canonicalize()?, limits)?;
        }
    }

    let mut pairs = 0usize;
    let mut k = 1;
    while k < store.len() {
        for j in 0..k {
            pairs += 1;
            if pairs > limits.max_pairs {
                return Err(Error::ResourceLimit {
                    what: "critical pairs",
                    limit: limits.max_pairs,
                    progress: format!("{} elements stored, processing element {k}", store.len()),
                });
            }
            for negate in [false, true] {
                let (f, g) = (&store.elems[k], &store.elems[j]);
                let g = if negate { g.checked_neg()? } else { g.clone() };
                if limits.skip_conformal_pairs && f.sign_compatible(&g) {
                    continue;
                }
                let s = f.checked_add(&g)?;
                if s.is_zero() {
                    continue;
                }
                let nf = store.normal_form(s)?;
                if !nf.is_zero() {
                    store.push(nf.canonicalize()?, limits)?;
                }
            }
        }
        k += 1;
    }
    store.into_minimal()
}

#[derive(Clone, Debug)]
struct Support {
    pos: Box<[u64]>,
    neg: Box<[u64]>,
    norm: i64,
}

impl Support {
    fn of(v: &IntVec) -> Result<Self> {
        let words = v.len().div_ceil(64).max(1);
        let mut pos = vec![0u64; words];
        let mut neg = vec![0u64; words];
        for (i, &x) in v.iter().enumerate() {
            if x > 0 {
                pos[i / 64] |= 1 << (i % 64);
            } else if x < 0 {
                neg[i / 64] |= 1 << (i % 64);
            }
        }
        Ok(Support { pos: pos.into(), neg: neg.into(), norm: v.one_norm()? })
    }

    fn subset(a: &[u64], b: &[u64]) -> bool {
        a.iter().zip(b).all(|(x, y)| x & !y == 0)
    }

    /// Necessary condition for `self ⊑ other` (or `-self ⊑ other` when `flip`).
    fn may_reduce(&self, other: &Support, flip: bool) -> bool {
        if self.norm > other.norm {
            return false;
        }
        if flip {
            Support::subset(&self.pos, &other.neg) && Support::subset(&self.neg, &other.pos)
        } else {
            Support::subset(&self.pos, &other.pos) && Support::subset(&self.neg, &other.neg)
        }
    }
}

struct Store {
    n: usize,
    elems: Vec<IntVec>,
    supports: Vec<Support>,
}

impl Store {
    fn new(n: usize) -> Self {
        Store { n, elems: Vec::new(), supports: Vec::new() }
    }

    fn len(&self) -> usize {
        self.elems.len()
    }

    fn push(&mut self, v: IntVec, limits: &CompletionLimits) -> Result<()> {
        if self.elems.len() >= limits.max_elements {
            return Err(Error::ResourceLimit {
                what: "stored elements",
                limit: limits.max_elements,
                progress: format!("{} elements stored in dimension {}", self.elems.len(), self.n),
            });
        }
        self.supports.push(Support::of(&v)?);
        self.elems.push(v);
        Ok(())
    }

    fn find_reducer(&self, w: &IntVec, ws: &Support, skip: Option<usize>) -> Option<(usize, bool)> {
        for (i, (v, s)) in self.elems.iter().zip(&self.supports).enumerate() {
            if Some(i) == skip {
                continue;
            }
            if s.may_reduce(ws, false) && v.conformal_le(w) {
                return Some((i, false));
            }
            if s.may_reduce(ws, true) && reduces_negated(v, w) {
                return Some((i, true));
            }
        }
        None
    }

    fn normal_form(&self, mut w: IntVec) -> Result<IntVec> {
        loop {
            if w.is_zero() {
                return Ok(w);
            }
            let ws = Support::of(&w)?;
            match self.find_reducer(&w, &ws, None) {
                Some((i, false)) => w = w.checked_sub(&self.elems[i])?,
                Some((i, true)) => w = w.checked_add(&self.elems[i])?,
                None => return Ok(w),
            }
        }
    }

    /// Drops every element that has a proper reducer among the others.
    fn into_minimal(self) -> Result<Vec<IntVec>> {
        let mut keep = Vec::with_capacity(self.elems.len());
        for (i, (w, ws)) in self.elems.iter().zip(&self.supports).enumerate() {
            if self.find_reducer(w, ws, Some(i)).is_none() {
                keep.push(w.clone());
            }
        }
        keep.sort();
        keep.dedup();
        Ok(keep)
    }
}

/// `-v ⊑ w`.
fn reduces_negated(v: &IntVec, w: &IntVec) -> bool {
    v.iter().zip(w.iter()).all(|(&a, &b)| {
        if a > 0 {
            b <= -a
        } else if a < 0 {
            b >= -a
        } else {
            true
        }
    })
}

/// Reduces `u` by the basis (both signs) until no element is ⊑ the
/// remainder, taking the first match in sorted order at each step.
pub fn conformal_normal_form(u: &IntVec, basis: &GraverBasis) -> Result<IntVec> {
    basis.config.check_kernel(u)?;
    normal_form_by(u, &basis.elements)
}

pub(crate) fn normal_form_by(u: &IntVec, elements: &[IntVec]) -> Result<IntVec> {
    let mut w = u.clone();
    'outer: loop {
        if w.is_zero() {
            return Ok(w);
        }
        for v in elements {
            if v.conformal_le(&w) {
                w = w.checked_sub(v)?;
                continue 'outer;
            }
            if reduces_negated(v, &w) {
                w = w.checked_add(v)?;
                continue 'outer;
            }
        }
        return Ok(w);
    }
}

/// Default cap on the number of integer points a box scan may visit.
pub const DEFAULT_MAX_BOX: u128 = 10_000_000;

/// Exhaustive primitivity test: scans every `v` with `v ⊑ u` (the box
/// between `-u-` and `u+`) for a kernel vector other than `0` and `u`.
pub fn is_primitive(config: &Configuration, u: &IntVec) -> Result<bool> {
    config.check_nonzero_kernel(u)?;
    let ranges: Vec<(i64, i64)> = u.iter().map(|&x| (x.min(0), x.max(0))).collect();
    let size = box_size(&ranges);
    if size > DEFAULT_MAX_BOX {
        return Err(Error::ResourceLimit {
            what: "primitivity box points",
            limit: DEFAULT_MAX_BOX as usize,
            progress: format!("box has {size} points"),
        });
    }
    let mut found = false;
    scan_box(config.matrix(), &ranges, &mut |v| {
        if !v.iter().all(|&x| x == 0) && v != u.entries() {
            found = true;
            return false;
        }
        true
    })?;
    Ok(!found)
}

/// Every nonzero kernel vector with all `|entries| ≤ bound`, canonical-signed, sorted.
pub fn box_kernel_oracle(config: &Configuration, bound: i64, max_box: u128) -> Result<Vec<IntVec>> {
    if bound < 1 {
        return Err(Error::domain("box bound must be at least 1"));
    }
    let ranges = vec![(-bound, bound); config.n()];
    let size = box_size(&ranges);
    if size > max_box {
        return Err(Error::ResourceLimit {
            what: "oracle box points",
            limit: max_box.min(usize::MAX as u128) as usize,
            progress: format!("box has {size} points"),
        });
    }
    let mut out = Vec::new();
    scan_box(config.matrix(), &ranges, &mut |v| {
        let first = v.iter().find(|&&x| x != 0);
        if matches!(first, Some(&x) if x > 0) {
            out.push(IntVec::from(v));
        }
        true
    })?;
    out.sort();
    Ok(out)
}

/// The ⊑-minimal elements of a sign-closed set given by canonical representatives.
pub fn conformal_minimal(set: &[IntVec]) -> Vec<IntVec> {
    let mut out: Vec<IntVec> = set
        .iter()
        .enumerate()
        .filter(|&(i, w)| {
            !set.iter().enumerate().any(|(j, v)| {
                j != i && v != w && (v.conformal_le(w) || reduces_negated(v, w))
            })
        })
        .map(|(_, w)| w.clone())
        .collect();
    out.sort();
    out.dedup();
    out
}

fn box_size(ranges: &[(i64, i64)]) -> u128 {
    ranges
        .iter()
        .map(|&(lo, hi)| (hi as i128 - lo as i128 + 1) as u128)
        .try_fold(1u128, |acc, x| acc.checked_mul(x))
        .unwrap_or(u128::MAX)
}

/// Visits every kernel vector in the box; `visit` returns `false` to stop.
fn scan_box(a: &IntMatrix, ranges: &[(i64, i64)], visit: &mut dyn FnMut(&[i64]) -> bool) -> Result<()> {
    let m = a.rows();
    let n = a.cols();
    // Remaining reach of columns j.. per row, used to prune partial sums that
    // can no longer return to zero.
    let mut reach = vec![vec![(0i128, 0i128); m]; n + 1];
    for j in (0..n).rev() {
        for i in 0..m {
            let c = a.get(i, j) as i128;
            let (lo, hi) = (ranges[j].0 as i128 * c, ranges[j].1 as i128 * c);
            let (mn, mx) = (lo.min(hi), lo.max(hi));
            reach[j][i] = (reach[j + 1][i].0 + mn, reach[j + 1][i].1 + mx);
        }
    }
    let mut v = vec![0i64; n];
    let mut acc = vec![0i128; m];
    descend_box(a, ranges, &reach, 0, &mut v, &mut acc, visit);
    Ok(())
}

fn descend_box(
    a: &IntMatrix,
    ranges: &[(i64, i64)],
    reach: &[Vec<(i128, i128)>],
    j: usize,
    v: &mut [i64],
    acc: &mut [i128],
    visit: &mut dyn FnMut(&[i64]) -> bool,
) -> bool {
    let m = a.rows();
    for i in 0..m {
        let (lo, hi) = reach[j][i];
        if acc[i] + lo > 0 || acc[i] + hi < 0 {
            return true;
        }
    }
    if j == v.len() {
        return visit(v);
    }
    for x in ranges[j].0..=ranges[j].1 {
        v[j] = x;
        for i in 0..m {
            acc[i] += a.get(i, j) as i128 * x as i128;
        }
        let go = descend_box(a, ranges, reach, j + 1, v, acc, visit);
        for i in 0..m {
            acc[i] -= a.get(i, j) as i128 * x as i128;
        }
        if !go {
            v[j] = 0;
            return false;
        }
    }
    v[j] = 0;
    true
}

/// The Graver complexity value and one element attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraverComplexity {
    pub value: i64,
    /// A Graver element of the Graver matrix with maximum 1-norm (empty if none).
    pub witness: Option<IntVec>,
    /// Number of sign classes in the Graver basis of the Graver matrix.
    pub inner_size: usize,
}

/// The matrix whose columns are the canonical Graver representatives.
pub fn graver_matrix(basis: &GraverBasis) -> Result<Configuration> {
    Configuration::new(IntMatrix::from_columns(basis.config.n(), &basis.elements)?)
}

/// Maximum 1-norm over the Graver basis of the Graver matrix of `config`.
pub fn graver_complexity(config: &Configuration, limits: &CompletionLimits) -> Result<GraverComplexity> {
    let g = graver_basis_with(config, limits)?;
    if g.is_empty() {
        return Err(Error::domain("Graver basis is empty"));
    }
    let gg = graver_basis_with(&graver_matrix(&g)?, limits)?;
    max_norm_element(&gg.elements).map(|(value, witness)| GraverComplexity {
        value,
        witness,
        inner_size: gg.len(),
    })
}

/// Largest 1-norm and the first element (in sorted order) attaining it.
pub fn max_norm_element(elements: &[IntVec]) -> Result<(i64, Option<IntVec>)> {
    let mut best: Option<(i64, &IntVec)> = None;
    for e in elements {
        let n = e.one_norm()?;
        if best.is_none_or(|(b, _)| n > b) {
            best = Some((n, e));
        }
    }
    Ok(best.map_or((0, None), |(n, e)| (n, Some(e.clone()))))
}
