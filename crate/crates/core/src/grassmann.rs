//! Canonical `k`-subspaces of `F_q^n` and the machinery built on them:
//! exhaustive enumeration, intersection dimensions and generalised
//! Johnson graphs.
//!
//! A subspace is identified with the reduced row echelon form of any
//! basis, so equality and hashing are plain byte comparisons of the
//! canonical basis matrix.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::gf::{Field, MatF};

/// A `k`-dimensional subspace of `F_q^n`, stored as its RREF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: MatF,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace[{}]", self.basis)
    }
}

impl Subspace {
    /// Canonical subspace spanned by the given row vectors.
    pub fn span(field: &Field, vectors: &[Vec<u32>]) -> Result<Subspace> {
        if vectors.is_empty() {
            return Err(Error::EmptySpan);
        }
        let m = MatF::from_rows(field, vectors)?;
        let red = m.rref();
        if red.rank == 0 {
            return Err(Error::EmptySpan);
        }
        let rows: Vec<Vec<u32>> = (0..red.rank).map(|r| red.mat.row(r).to_vec()).collect();
        Ok(Subspace {
            basis: MatF::from_rows(field, &rows)?,
        })
    }

    /// Subspace spanned by the standard basis vectors at the given
    /// 0-based coordinates.
    pub fn coordinate(field: &Field, n: usize, indices: &[usize]) -> Result<Subspace> {
        let mut rows = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= n {
                return Err(Error::BadParameters(format!(
                    "coordinate {i} out of range for ambient dimension {n}"
                )));
            }
            let mut v = vec![0u32; n];
            v[i] = 1;
            rows.push(v);
        }
        Subspace::span(field, &rows)
    }

    fn from_canonical(basis: MatF) -> Subspace {
        debug_assert!(basis.rref().mat == basis);
        Subspace { basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    /// The canonical (RREF) basis matrix.
    pub fn basis(&self) -> &MatF {
        &self.basis
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient() != other.ambient() || self.field().q() != other.field().q() {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    /// `dim(self /\ other) = dim self + dim other - rank(stacked bases)`.
    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        self.same_ambient(other)?;
        let stacked = self.basis.stack(&other.basis)?;
        Ok(self.dim() + other.dim() - stacked.rank())
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.same_ambient(other)?;
        let stacked = self.basis.stack(&other.basis)?;
        Ok(stacked.rank() == self.dim())
    }

    /// Image under an invertible matrix acting on row vectors.
    pub fn apply(&self, m: &MatF) -> Result<Subspace> {
        if m.rows() != self.ambient() || m.cols() != self.ambient() {
            return Err(Error::DimensionMismatch(format!(
                "action of a {}x{} matrix on an ambient dimension {}",
                m.rows(),
                m.cols(),
                self.ambient()
            )));
        }
        if !m.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(self.apply_invertible_unchecked(m))
    }

    /// Same as [`apply`](Self::apply) but skips the invertibility check;
    /// callers must have validated `m` (orbit loops do it once up front).
    pub(crate) fn apply_invertible_unchecked(&self, m: &MatF) -> Subspace {
        let image = self.basis.multiply(m).expect("validated dimensions");
        let red = image.rref();
        debug_assert_eq!(red.rank, self.dim(), "invertible action preserves dimension");
        let rows: Vec<Vec<u32>> = (0..red.rank).map(|r| red.mat.row(r).to_vec()).collect();
        Subspace {
            basis: MatF::from_rows(self.field(), &rows).expect("canonical rows"),
        }
    }

    /// Text form: basis rows separated by `;`, codes by `,`.
    pub fn text(&self) -> String {
        self.basis.to_string()
    }
}

/// Number of `k`-subspaces of `F_q^n` as an exact integer.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> Result<u128> {
    if k > n {
        return Err(Error::BadParameters(format!(
            "gaussian binomial needs k <= n, got ({n}, {k})"
        )));
    }
    // Evaluate as a product of integer ratios; each prefix product of
    // (q^{n-i} - 1) terms is divisible by the matching denominator.
    let mut acc: u128 = 1;
    let q = q as u128;
    for i in 0..k {
        let num = q
            .checked_pow(n - i)
            .ok_or(Error::Overflow)?
            .checked_sub(1)
            .ok_or(Error::Overflow)?;
        let den = q
            .checked_pow(k - i)
            .ok_or(Error::Overflow)?
            .checked_sub(1)
            .ok_or(Error::Overflow)?;
        acc = acc.checked_mul(num).ok_or(Error::Overflow)?;
        debug_assert_eq!(acc % den, 0);
        acc /= den;
    }
    Ok(acc)
}

/// Deterministic stream of all `k`-subspaces of `F_q^n`.
///
/// Order: pivot-column sets ascending lexicographically, then free
/// entries ascending as base-`q` counters read row-major (first free
/// cell most significant).
pub struct SubspaceEnumerator {
    field: Field,
    n: usize,
    k: usize,
    pivots: Vec<usize>,
    free_cells: Vec<(usize, usize)>,
    digits: Vec<u64>,
    exhausted: bool,
    fresh_pivots: bool,
}

fn free_cells_for(pivots: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    for (r, &pc) in pivots.iter().enumerate() {
        for c in pc + 1..n {
            if !pivots.contains(&c) {
                cells.push((r, c));
            }
        }
    }
    cells
}

impl SubspaceEnumerator {
    fn new(field: &Field, n: usize, k: usize) -> SubspaceEnumerator {
        let pivots: Vec<usize> = (0..k).collect();
        let free_cells = free_cells_for(&pivots, n);
        SubspaceEnumerator {
            field: field.clone(),
            n,
            k,
            digits: vec![0; free_cells.len()],
            free_cells,
            pivots,
            exhausted: false,
            fresh_pivots: true,
        }
    }

    fn build_current(&self) -> Subspace {
        let mut basis = MatF::zero(&self.field, self.k, self.n);
        for (r, &pc) in self.pivots.iter().enumerate() {
            basis.set(r, pc, 1);
        }
        for (idx, &(r, c)) in self.free_cells.iter().enumerate() {
            basis.set(r, c, self.digits[idx] as u32);
        }
        Subspace::from_canonical(basis)
    }

    // Advance the free-entry counter; on wraparound move to the next
    // pivot set (lexicographic successor of a k-combination of 0..n).
    fn advance(&mut self) {
        let q = self.field.q();
        for idx in (0..self.digits.len()).rev() {
            self.digits[idx] += 1;
            if self.digits[idx] < q {
                return;
            }
            self.digits[idx] = 0;
        }
        let n = self.n;
        let k = self.k;
        let mut i = k;
        loop {
            if i == 0 {
                self.exhausted = true;
                return;
            }
            i -= 1;
            if self.pivots[i] < n - (k - i) {
                self.pivots[i] += 1;
                for j in i + 1..k {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                break;
            }
        }
        self.free_cells = free_cells_for(&self.pivots, n);
        self.digits = vec![0; self.free_cells.len()];
    }
}

impl Iterator for SubspaceEnumerator {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.exhausted {
            return None;
        }
        if self.fresh_pivots {
            self.fresh_pivots = false;
        }
        let out = self.build_current();
        self.advance();
        Some(out)
    }
}

/// Enumerate all `k`-subspaces of `F_q^n`, checking the count against the
/// budget up front.
pub fn enumerate_subspaces(
    field: &Field,
    n: usize,
    k: usize,
    budget: u64,
) -> Result<SubspaceEnumerator> {
    if k == 0 || k > n {
        return Err(Error::BadParameters(format!(
            "enumeration needs 1 <= k <= n, got ({n}, {k})"
        )));
    }
    let count = gaussian_binomial(n as u32, k as u32, field.q())?;
    if count > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: count,
            budget,
        });
    }
    Ok(SubspaceEnumerator::new(field, n, k))
}

/// Generalised Johnson graph: vertices are all `k`-subspaces of `F_q^n`,
/// edges join pairs meeting in dimension exactly `i`.
pub struct JohnsonGraph {
    vertices: Vec<Subspace>,
    i: usize,
}

impl JohnsonGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Subspace] {
        &self.vertices
    }

    pub fn intersection_parameter(&self) -> usize {
        self.i
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a != b
            && self.vertices[a]
                .intersection_dim(&self.vertices[b])
                .expect("same ambient")
                == self.i
    }

    /// Breadth-first connectivity over the full vertex set.
    pub fn is_connected(&self) -> bool {
        let v = self.vertices.len();
        if v == 0 {
            return true;
        }
        let mut seen = vec![false; v];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0);
        let mut visited = 1;
        while let Some(cur) = queue.pop_front() {
            for next in 0..v {
                if !seen[next] && self.adjacent(cur, next) {
                    seen[next] = true;
                    visited += 1;
                    queue.push_back(next);
                }
            }
        }
        visited == v
    }
}

pub fn johnson_graph(
    field: &Field,
    n: usize,
    k: usize,
    i: usize,
    budget: u64,
) -> Result<JohnsonGraph> {
    if k == 0 || i >= k {
        return Err(Error::BadParameters(format!(
            "Johnson graph needs 0 <= i <= k-1, got (k, i) = ({k}, {i})"
        )));
    }
    let vertices: Vec<Subspace> = enumerate_subspaces(field, n, k, budget)?.collect();
    Ok(JohnsonGraph { vertices, i })
}
