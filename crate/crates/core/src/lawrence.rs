//! Lawrence liftings `A^(r)`, generalized liftings `Λ(A, B, r)`, tableaux,
//! and type scans.
//!
//! Flat vectors of a lifting are block-major: the `n` coordinates of copy 1,
//! then copy 2, and so on. Row `i` of the tableau view is block `i`.

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graver::{graver_basis_with, CompletionLimits};
use crate::markov::markov_bases_from;
use crate::matrix::IntMatrix;
use crate::vector::IntVec;

/// The `r`-th Lawrence lifting: `r` diagonal copies of `A` above `r`
/// horizontal copies of `I_n`.
pub fn lift(config: &Configuration, r: usize) -> Result<Configuration> {
    generalized_lift(config, &Configuration::new(IntMatrix::identity(config.n()))?, r)
}

/// Like [`lift`], with the coupling matrix `B` in place of `I_n`.
pub fn generalized_lift(config: &Configuration, coupling: &Configuration, r: usize) -> Result<Configuration> {
    if r < 2 {
        return Err(Error::domain(format!("lifting order must be at least 2, got {r}")));
    }
    let a = config.matrix();
    let b = coupling.matrix();
    if b.cols() != a.cols() {
        return Err(Error::domain(format!(
            "coupling has {} columns, configuration has {}",
            b.cols(),
            a.cols()
        )));
    }
    if b.entries().iter().any(|&x| x < 0) {
        return Err(Error::domain("coupling matrix must be nonnegative"));
    }
    let mut heights = vec![a.rows(); r];
    heights.push(b.rows());
    let widths = vec![a.cols(); r];
    let mut grid: Vec<Vec<Option<&IntMatrix>>> = (0..r)
        .map(|i| (0..r).map(|j| (i == j).then_some(a)).collect())
        .collect();
    grid.push(vec![Some(b); r]);
    Configuration::new(IntMatrix::block(&heights, &widths, &grid)?)
}

/// An element of a lifting viewed as an `r × n` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    pub rows: Vec<IntVec>,
}

impl Tableau {
    /// Reshapes a flat block-major vector.
    pub fn from_flat(flat: &IntVec, r: usize, n: usize) -> Result<Self> {
        if n == 0 || flat.len() != r * n {
            return Err(Error::domain(format!(
                "vector of length {} cannot be viewed as a {r}×{n} tableau",
                flat.len()
            )));
        }
        Ok(Tableau { rows: flat.chunks(n).map(IntVec::from).collect() })
    }

    pub fn flatten(&self) -> IntVec {
        IntVec::new(self.rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    pub fn r(&self) -> usize {
        self.rows.len()
    }

    /// Number of nonzero rows.
    pub fn type_(&self) -> usize {
        self.rows.iter().filter(|r| !r.is_zero()).count()
    }

    /// Rows in `ker(A)` summing to zero, i.e. membership in `L(A^(r))`.
    pub fn is_valid_for(&self, base: &Configuration) -> Result<bool> {
        let n = base.n();
        let mut sum = IntVec::zeros(n);
        for row in &self.rows {
            if row.len() != n || !base.in_kernel(row)? {
                return Ok(false);
            }
            sum = sum.checked_add(row)?;
        }
        Ok(sum.is_zero())
    }

    /// Embeds into `r' ≥ r` rows by appending zero rows.
    pub fn padded(&self, r: usize) -> Tableau {
        let n = self.rows.first().map_or(0, |x| x.len());
        let mut rows = self.rows.clone();
        rows.resize(r.max(rows.len()), IntVec::zeros(n));
        Tableau { rows }
    }

    /// Rearranges rows: row `i` of the result is row `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Tableau {
        Tableau { rows: perm.iter().map(|&i| self.rows[i].clone()).collect() }
    }
}

pub fn tableau_view(flat: &IntVec, r: usize, n: usize) -> Result<Tableau> {
    Tableau::from_flat(flat, r, n)
}

pub fn flatten(t: &Tableau) -> IntVec {
    t.flatten()
}

/// Type of a flat lifting vector.
pub fn type_of(flat: &IntVec, n: usize) -> Result<usize> {
    if n == 0 || !flat.len().is_multiple_of(n) {
        return Err(Error::domain("length is not a multiple of n"));
    }
    Ok(Tableau::from_flat(flat, flat.len() / n, n)?.type_())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovScanRow {
    pub r: usize,
    pub max_type: usize,
    /// Size of the universal Markov basis (sign classes).
    pub universal_size: usize,
    pub indispensable_size: usize,
    pub graver_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraverScanRow {
    pub r: usize,
    pub max_type: usize,
    pub graver_size: usize,
}

fn check_scan(config: &Configuration, r_max: usize) -> Result<()> {
    if r_max < 2 {
        return Err(Error::domain("r_max must be at least 2"));
    }
    if !config.nonneg_pointed() {
        return Err(Error::Unsupported(
            "scans need a nonnegative matrix without zero columns".into(),
        ));
    }
    Ok(())
}

fn max_type(elements: &[IntVec], n: usize) -> Result<usize> {
    elements.iter().map(|e| type_of(e, n)).try_fold(0, |m, t| Ok(m.max(t?)))
}

/// Universal Markov bases of `A^(r)` (or `Λ(A, B, r)`) for `r = 2..=r_max`,
/// each recomputed from scratch.
pub fn markov_complexity_scan(
    config: &Configuration,
    coupling: Option<&Configuration>,
    r_max: usize,
    limits: &CompletionLimits,
) -> Result<Vec<MarkovScanRow>> {
    check_scan(config, r_max)?;
    (2..=r_max)
        .map(|r| {
            let lifted = match coupling {
                Some(b) => generalized_lift(config, b, r)?,
                None => lift(config, r)?,
            };
            let bases = markov_bases_from(&graver_basis_with(&lifted, limits)?)?;
            Ok(MarkovScanRow {
                r,
                max_type: max_type(&bases.universal.elements, config.n())?,
                universal_size: bases.universal.len(),
                indispensable_size: bases.indispensable.len(),
                graver_size: bases.graver.len(),
            })
        })
        .collect()
}

/// Largest type in the Graver bases of `A^(r)` for `r = 2..=r_max`.
pub fn graver_type_scan(
    config: &Configuration,
    coupling: Option<&Configuration>,
    r_max: usize,
    limits: &CompletionLimits,
) -> Result<Vec<GraverScanRow>> {
    if r_max < 2 {
        return Err(Error::domain("r_max must be at least 2"));
    }
    (2..=r_max)
        .map(|r| {
            let lifted = match coupling {
                Some(b) => generalized_lift(config, b, r)?,
                None => lift(config, r)?,
            };
            let g = graver_basis_with(&lifted, limits)?;
            Ok(GraverScanRow { r, max_type: max_type(&g.elements, config.n())?, graver_size: g.len() })
        })
        .collect()
}
