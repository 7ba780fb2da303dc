//! Integer configurations, their lattices and fibers.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::vector::IntVec;

/// Default cap on the number of points a single fiber enumeration may produce.
pub const DEFAULT_MAX_FIBER_POINTS: usize = 1_000_000;

/// An integer matrix whose columns are the configuration vectors. The
/// lattice `L(A)` is its integer kernel, computed lazily and cached.
#[derive(Clone, Debug)]
pub struct Configuration {
    matrix: IntMatrix,
    kernel: OnceLock<Vec<IntVec>>,
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for Configuration {}

impl Configuration {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if matrix.cols() == 0 {
            return Err(Error::domain("configuration needs at least one column"));
        }
        Ok(Configuration { matrix, kernel: OnceLock::new() })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Configuration::new(IntMatrix::from_rows(rows)?)
    }

    /// A 1×n configuration.
    pub fn row(entries: &[i64]) -> Result<Self> {
        Configuration::from_rows(&[entries.to_vec()])
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Number of columns (ambient dimension of the lattice).
    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    /// All entries nonnegative and no zero column; fibers are then finite.
    pub fn nonneg_pointed(&self) -> bool {
        let m = &self.matrix;
        m.entries().iter().all(|&x| x >= 0)
            && (0..m.cols()).all(|j| (0..m.rows()).any(|i| m.get(i, j) != 0))
    }

    /// Z-basis of the integer kernel, canonical-signed and sorted graded-lex.
    pub fn kernel_basis(&self) -> Result<&[IntVec]> {
        if let Some(k) = self.kernel.get() {
            return Ok(k);
        }
        let k = compute_kernel_basis(&self.matrix)?;
        Ok(self.kernel.get_or_init(|| k))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.n() - self.kernel_basis()?.len())
    }

    pub fn in_kernel(&self, u: &IntVec) -> Result<bool> {
        if u.len() != self.n() {
            return Ok(false);
        }
        Ok(self.matrix.mul_vec(u)?.is_zero())
    }

    pub(crate) fn check_kernel(&self, u: &IntVec) -> Result<()> {
        if !self.in_kernel(u)? {
            return Err(Error::domain(format!("{u} is not in the kernel")));
        }
        Ok(())
    }

    pub(crate) fn check_nonzero_kernel(&self, u: &IntVec) -> Result<()> {
        if u.is_zero() {
            return Err(Error::domain("zero vector"));
        }
        self.check_kernel(u)
    }

    /// The A-degree `A·u+` of a kernel vector.
    pub fn a_degree(&self, u: &IntVec) -> Result<IntVec> {
        self.check_kernel(u)?;
        self.matrix.mul_vec(&u.pos_part())
    }

    pub fn fiber(&self, degree: &IntVec) -> Result<Fiber> {
        self.fiber_with_limit(degree, DEFAULT_MAX_FIBER_POINTS)
    }

    /// All `t ∈ N^n` with `A·t = degree`, sorted graded-lex.
    pub fn fiber_with_limit(&self, degree: &IntVec, max_points: usize) -> Result<Fiber> {
        if !self.nonneg_pointed() {
            return Err(Error::Unsupported(
                "fiber enumeration needs a nonnegative matrix without zero columns".into(),
            ));
        }
        if degree.len() != self.matrix.rows() {
            return Err(Error::domain("degree length does not match row count"));
        }
        let mut points = Vec::new();
        if degree.is_nonnegative() {
            FiberSearch::new(&self.matrix, max_points).run(degree, &mut points)?;
        }
        points.sort();
        Ok(Fiber { degree: degree.clone(), points })
    }
}

/// The lattice points of one fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub degree: IntVec,
    /// Sorted graded-lex, pairwise distinct.
    pub points: Vec<IntVec>,
}

impl Fiber {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, t: &IntVec) -> Option<usize> {
        self.points.binary_search(t).ok()
    }
}

struct FiberSearch<'a> {
    matrix: &'a IntMatrix,
    /// `live[j][i]`: some column `≥ j` has a positive entry in row `i`.
    live: Vec<Vec<bool>>,
    max_points: usize,
}

impl<'a> FiberSearch<'a> {
    fn new(matrix: &'a IntMatrix, max_points: usize) -> Self {
        let (m, n) = (matrix.rows(), matrix.cols());
        let mut live = vec![vec![false; m]; n + 1];
        for j in (0..n).rev() {
            for i in 0..m {
                live[j][i] = live[j + 1][i] || matrix.get(i, j) > 0;
            }
        }
        FiberSearch { matrix, live, max_points }
    }

    fn run(&self, degree: &IntVec, out: &mut Vec<IntVec>) -> Result<()> {
        let mut t = vec![0i64; self.matrix.cols()];
        let mut rem = degree.to_vec();
        self.descend(0, &mut t, &mut rem, out)
    }

    fn descend(&self, j: usize, t: &mut [i64], rem: &mut [i64], out: &mut Vec<IntVec>) -> Result<()> {
        let m = self.matrix.rows();
        if (0..m).any(|i| rem[i] > 0 && !self.live[j][i]) {
            return Ok(());
        }
        if j == self.matrix.cols() {
            if out.len() >= self.max_points {
                return Err(Error::ResourceLimit {
                    what: "fiber points",
                    limit: self.max_points,
                    progress: format!("{} points enumerated", out.len()),
                });
            }
            out.push(IntVec::from(&t[..]));
            return Ok(());
        }
        let bound = (0..m)
            .filter(|&i| self.matrix.get(i, j) > 0)
            .map(|i| rem[i] / self.matrix.get(i, j))
            .min()
            .unwrap_or(0);
        for k in 0..=bound {
            if k > 0 {
                for (i, r) in rem.iter_mut().enumerate() {
                    *r -= self.matrix.get(i, j);
                }
            }
            t[j] = k;
            self.descend(j + 1, t, rem, out)?;
        }
        for (i, r) in rem.iter_mut().enumerate() {
            *r += bound * self.matrix.get(i, j);
        }
        t[j] = 0;
        Ok(())
    }
}

fn to_i64(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow("kernel basis"))
}

/// Row-reduces `[Aᵀ | I]` with unimodular row operations; the rows whose
/// left block vanishes span the kernel. The result is then brought into row
/// Hermite normal form so the basis is canonical for a given matrix.
fn compute_kernel_basis(a: &IntMatrix) -> Result<Vec<IntVec>> {
    let (m, n) = (a.rows(), a.cols());
    let width = m + n;
    let mut rows: Vec<Vec<i128>> = (0..n)
        .map(|k| {
            let mut r = vec![0i128; width];
            for i in 0..m {
                r[i] = a.get(i, k) as i128;
            }
            r[m + k] = 1;
            r
        })
        .collect();

    let pivot_rows = echelonize(&mut rows, 0..m)?;
    let mut kernel: Vec<Vec<i128>> = rows.split_off(pivot_rows).into_iter().map(|r| r[m..].to_vec()).collect();

    // Hermite form of the kernel basis itself.
    let k = echelonize(&mut kernel, 0..n)?;
    debug_assert_eq!(k, kernel.len());
    reduce_above_pivots(&mut kernel)?;

    let mut basis = kernel
        .into_iter()
        .map(|r| r.into_iter().map(to_i64).collect::<Result<Vec<_>>>().map(IntVec::new))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .map(|v| v.canonicalize())
        .collect::<Result<Vec<_>>>()?;
    basis.sort();
    Ok(basis)
}

fn row_combine(target: &mut [i128], src: &[i128], q: i128) -> Result<()> {
    for (t, &s) in target.iter_mut().zip(src) {
        *t = q
            .checked_mul(s)
            .and_then(|p| t.checked_sub(p))
            .ok_or(Error::Overflow("kernel basis"))?;
    }
    Ok(())
}

/// Echelonizes `rows` on the given columns by extended-gcd row operations.
/// Pivots are made positive. Returns the number of pivot rows.
fn echelonize(rows: &mut [Vec<i128>], cols: std::ops::Range<usize>) -> Result<usize> {
    let mut pr = 0;
    for c in cols {
        if pr == rows.len() {
            break;
        }
        loop {
            // Smallest nonzero |entry| in column c at or below pr; ties by row index.
            let Some(best) = (pr..rows.len())
                .filter(|&r| rows[r][c] != 0)
                .min_by_key(|&r| (rows[r][c].abs(), r))
            else {
                break;
            };
            rows.swap(pr, best);
            let mut done = true;
            for r in pr + 1..rows.len() {
                if rows[r][c] != 0 {
                    let q = rows[r][c].div_euclid(rows[pr][c]);
                    let (head, tail) = rows.split_at_mut(r);
                    row_combine(&mut tail[0], &head[pr], q)?;
                    if rows[r][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[pr][c] != 0 {
            if rows[pr][c] < 0 {
                for x in rows[pr].iter_mut() {
                    *x = -*x;
                }
            }
            pr += 1;
        }
    }
    Ok(pr)
}

fn reduce_above_pivots(rows: &mut [Vec<i128>]) -> Result<()> {
    for p in 0..rows.len() {
        let Some(c) = rows[p].iter().position(|&x| x != 0) else { continue };
        let pivot = rows[p][c];
        for r in 0..p {
            let q = rows[r][c].div_euclid(pivot);
            if q != 0 {
                let (head, tail) = rows.split_at_mut(p);
                row_combine(&mut head[r], &tail[0], q)?;
            }
        }
    }
    Ok(())
}

/// Integer solution of `basis-combination = v`, if `v` is in the integer
/// span of `basis`. Used for lattice membership checks.
pub fn integer_coordinates(basis: &[IntVec], v: &IntVec) -> Result<Option<Vec<i64>>> {
    let n = v.len();
    let d = basis.len();
    // Rows: [b_i | e_i] ; reduce on first n columns, then solve by back-substitution.
    let mut rows: Vec<Vec<i128>> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let mut r: Vec<i128> = b.iter().map(|&x| x as i128).collect();
            r.extend((0..d).map(|k| (k == i) as i128));
            r
        })
        .collect();
    let p = echelonize(&mut rows, 0..n)?;
    let mut rest: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    let mut coeffs = vec![0i128; d];
    for row in rows.iter().take(p) {
        let c = row.iter().position(|&x| x != 0).unwrap();
        if rest[c] % row[c] != 0 {
            return Ok(None);
        }
        let q = rest[c] / row[c];
        for j in 0..n {
            rest[j] = q
                .checked_mul(row[j])
                .and_then(|x| rest[j].checked_sub(x))
                .ok_or(Error::Overflow("lattice coordinates"))?;
        }
        for k in 0..d {
            coeffs[k] = q
                .checked_mul(row[n + k])
                .and_then(|x| coeffs[k].checked_add(x))
                .ok_or(Error::Overflow("lattice coordinates"))?;
        }
    }
    if rest.iter().any(|&x| x != 0) {
        return Ok(None);
    }
    coeffs.into_iter().map(to_i64).collect::<Result<Vec<_>>>().map(Some)
}
