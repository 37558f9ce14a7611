//! Dense square complex matrices and the handful of multilinear operations
//! the rest of the crate is built on.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A square complex matrix stored row-major.
///
/// Entries are addressed by `(row, col)` with 0-based indices. Equality is
/// never structural; use [`ComplexMatrix::approx_eq`] with an explicit
/// absolute tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix from a row-major slice of length `dim * dim`.
    pub fn from_rows(dim: usize, rows: &[Complex64]) -> Self {
        assert_eq!(rows.len(), dim * dim, "row-major slice has wrong length");
        Self {
            dim,
            entries: rows.to_vec(),
        }
    }

    /// Builds a matrix from a row-major slice of real values.
    pub fn from_real_rows(dim: usize, rows: &[f64]) -> Self {
        assert_eq!(rows.len(), dim * dim, "row-major slice has wrong length");
        Self {
            dim,
            entries: rows.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, Complex64::new(v, 0.0));
        }
        m
    }

    /// Rank-1 projector |psi><psi| of a (not necessarily normalized) vector.
    pub fn outer(psi: &[Complex64]) -> Self {
        let dim = psi.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, psi[i] * psi[j].conj());
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, self.get(j, i));
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&e| e * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.set(i, j, out.get(i, j) + aik * other.get(k, j));
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Quadratic form <psi| self |psi>.
    pub fn expectation(&self, psi: &[Complex64]) -> Complex64 {
        let applied = self.apply(psi);
        psi.iter().zip(&applied).map(|(a, b)| a.conj() * b).sum()
    }

    /// Largest absolute entry difference against `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise comparison with an explicit absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && self.max_abs_diff(other) <= tol
    }

    /// max |a(i,j) - conj(a(j,i))| over all index pairs.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Determinant by LU decomposition with partial pivoting.
    pub fn determinant(&self) -> Complex64 {
        let n = self.dim;
        let mut lu = self.entries.clone();
        let at = |m: &Vec<Complex64>, i: usize, j: usize| m[i * n + j];
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..n {
            let mut pivot = col;
            let mut best = at(&lu, col, col).norm();
            for row in (col + 1)..n {
                let mag = at(&lu, row, col).norm();
                if mag > best {
                    best = mag;
                    pivot = row;
                }
            }
            if best == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if pivot != col {
                for j in 0..n {
                    lu.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            let diag = at(&lu, col, col);
            det *= diag;
            for row in (col + 1)..n {
                let factor = at(&lu, row, col) / diag;
                for j in col..n {
                    let v = at(&lu, col, j);
                    lu[row * n + j] -= factor * v;
                }
            }
        }
        det
    }

    /// Principal submatrix over the given (sorted, unique) index set.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        let k = indices.len();
        let mut out = Self::zeros(k);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }
}

/// Kronecker product. The row/column index of the first factor varies
/// slowest: `(a ⊗ b)(i1*db+i2, j1*db+j2) = a(i1,j1) * b(i2,j2)`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(da * db);
    for i1 in 0..da {
        for j1 in 0..da {
            let f = a.get(i1, j1);
            if f.norm_sqr() == 0.0 {
                continue;
            }
            for i2 in 0..db {
                for j2 in 0..db {
                    out.set(i1 * db + i2, j1 * db + j2, f * b.get(i2, j2));
                }
            }
        }
    }
    out
}

/// Kronecker product of state vectors, first factor slowest.
pub fn tensor_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

fn check_subsystems(
    context: &'static str,
    total_dim: usize,
    dims: &[usize],
    keep: &[usize],
) -> Result<()> {
    let product: usize = dims.iter().product();
    if product != total_dim {
        return Err(Error::DimensionMismatch {
            context,
            expected: total_dim,
            actual: product,
        });
    }
    if keep.is_empty() {
        return Err(Error::InvalidSubsystems {
            context,
            reason: "the set of kept subsystems is empty".into(),
        });
    }
    let mut seen = vec![false; dims.len()];
    for &k in keep {
        if k >= dims.len() {
            return Err(Error::InvalidSubsystems {
                context,
                reason: format!(
                    "subsystem index {k} out of range for {} factors",
                    dims.len()
                ),
            });
        }
        if seen[k] {
            return Err(Error::InvalidSubsystems {
                context,
                reason: format!("subsystem index {k} repeated"),
            });
        }
        seen[k] = true;
    }
    Ok(())
}

/// Decomposes a flat index into per-subsystem indices, first factor slowest.
fn unpack_index(mut flat: usize, dims: &[usize], out: &mut [usize]) {
    for pos in (0..dims.len()).rev() {
        out[pos] = flat % dims[pos];
        flat /= dims[pos];
    }
}

fn pack_index(parts: &[usize], dims: &[usize]) -> usize {
    let mut flat = 0;
    for (pos, &d) in dims.iter().enumerate() {
        flat = flat * d + parts[pos];
    }
    flat
}

/// Partial trace of `rho` over the subsystems *not* listed in `keep`.
///
/// `dims` lists the dimension of each tensor factor, first factor slowest.
/// The result is indexed over the kept subsystems in their original order.
pub fn partial_trace(rho: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    check_subsystems("partial_trace", rho.dim(), dims, keep)?;
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    let traced: Vec<usize> = (0..dims.len())
        .filter(|i| !keep_sorted.contains(i))
        .collect();
    let keep_dims: Vec<usize> = keep_sorted.iter().map(|&i| dims[i]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&i| dims[i]).collect();
    let out_dim: usize = keep_dims.iter().product();
    let traced_total: usize = traced_dims.iter().product();

    let mut out = ComplexMatrix::zeros(out_dim);
    let mut row_parts = vec![0usize; keep_sorted.len()];
    let mut col_parts = vec![0usize; keep_sorted.len()];
    let mut env_parts = vec![0usize; traced.len()];
    let mut full_row = vec![0usize; dims.len()];
    let mut full_col = vec![0usize; dims.len()];

    for a in 0..out_dim {
        unpack_index(a, &keep_dims, &mut row_parts);
        for b in 0..out_dim {
            unpack_index(b, &keep_dims, &mut col_parts);
            let mut sum = Complex64::new(0.0, 0.0);
            for e in 0..traced_total {
                unpack_index(e, &traced_dims, &mut env_parts);
                for (slot, &sys) in keep_sorted.iter().enumerate() {
                    full_row[sys] = row_parts[slot];
                    full_col[sys] = col_parts[slot];
                }
                for (slot, &sys) in traced.iter().enumerate() {
                    full_row[sys] = env_parts[slot];
                    full_col[sys] = env_parts[slot];
                }
                sum += rho.get(pack_index(&full_row, dims), pack_index(&full_col, dims));
            }
            out.set(a, b, sum);
        }
    }
    Ok(out)
}

/// Reduced density matrix of a pure state over the kept subsystems,
/// without ever forming the full |psi><psi| matrix.
pub fn reduced_from_pure(
    psi: &[Complex64],
    dims: &[usize],
    keep: &[usize],
) -> Result<ComplexMatrix> {
    check_subsystems("reduced_from_pure", psi.len(), dims, keep)?;
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    let traced: Vec<usize> = (0..dims.len())
        .filter(|i| !keep_sorted.contains(i))
        .collect();
    let keep_dims: Vec<usize> = keep_sorted.iter().map(|&i| dims[i]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&i| dims[i]).collect();
    let out_dim: usize = keep_dims.iter().product();
    let traced_total: usize = traced_dims.iter().product();

    // Gather psi into a (kept x traced) table, then contract over the
    // traced axis: rho(a,b) = sum_e table(a,e) * conj(table(b,e)).
    let mut table = vec![Complex64::new(0.0, 0.0); out_dim * traced_total];
    let mut parts = vec![0usize; dims.len()];
    let mut kept_parts = vec![0usize; keep_sorted.len()];
    let mut env_parts = vec![0usize; traced.len()];
    for (flat, &amp) in psi.iter().enumerate() {
        unpack_index(flat, dims, &mut parts);
        for (slot, &sys) in keep_sorted.iter().enumerate() {
            kept_parts[slot] = parts[sys];
        }
        for (slot, &sys) in traced.iter().enumerate() {
            env_parts[slot] = parts[sys];
        }
        let a = pack_index(&kept_parts, &keep_dims);
        let e = if traced.is_empty() {
            0
        } else {
            pack_index(&env_parts, &traced_dims)
        };
        table[a * traced_total.max(1) + e] = amp;
    }

    let cols = traced_total.max(1);
    let mut out = ComplexMatrix::zeros(out_dim);
    for a in 0..out_dim {
        for b in 0..out_dim {
            let mut sum = Complex64::new(0.0, 0.0);
            for e in 0..cols {
                sum += table[a * cols + e] * table[b * cols + e].conj();
            }
            out.set(a, b, sum);
        }
    }
    Ok(out)
}

/// Partial transpose of a two-qubit density matrix over the second qubit:
/// `rho^{T2}(m*2+mu, n*2+nu) = rho(m*2+nu, n*2+mu)`.
///
/// The operation is an involution and preserves trace and Hermiticity.
pub fn partial_transpose(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            context: "partial_transpose",
            expected: 4,
            actual: rho.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(4);
    for m in 0..2 {
        for mu in 0..2 {
            for n in 0..2 {
                for nu in 0..2 {
                    out.set(2 * m + mu, 2 * n + nu, rho.get(2 * m + nu, 2 * n + mu));
                }
            }
        }
    }
    Ok(out)
}
