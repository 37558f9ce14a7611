//! Cyclic Jacobi eigensolver for small dense complex Hermitian matrices.
//!
//! Each rotation annihilates one off-diagonal pair: the complex phase of
//! the pivot entry is absorbed into the rotation, after which the angle is
//! chosen exactly as in the real symmetric case. Sweeps repeat until the
//! off-diagonal Frobenius norm falls below `JACOBI_TOL` relative to the
//! matrix scale.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;

/// Relative off-diagonal norm at which a sweep is declared converged.
pub const JACOBI_TOL: f64 = 1e-13;

const MAX_SWEEPS: usize = 60;

/// Full eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues in ascending order and a unitary matrix whose k-th
/// column is the eigenvector of the k-th eigenvalue. The input is
/// symmetrized as `(A + A')/2` first; callers are responsible for checking
/// Hermiticity to whatever tolerance their contract demands.
pub fn hermitian_eigen_unchecked(m: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = m.dim();
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a.set(i, j, (m.get(i, j) + m.get(j, i).conj()) * 0.5);
        }
    }
    let mut v = ComplexMatrix::identity(n);

    let scale = frobenius(&a).max(1.0);
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= JACOBI_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.partial_cmp(&a.get(j, j).re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, col, v.get(row, src));
        }
    }
    (values, vectors)
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues_unchecked(m: &ComplexMatrix) -> Vec<f64> {
    hermitian_eigen_unchecked(m).0
}

fn frobenius(a: &ComplexMatrix) -> f64 {
    a.entries().iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            sum += a.get(p, q).norm_sqr();
        }
    }
    (2.0 * sum).sqrt()
}

/// One Jacobi rotation in the (p, q) plane, applied to `a` and accumulated
/// into `v`. Keeps `a` exactly Hermitian by writing conjugate pairs.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r; // e^{i phi}
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;

    // Annihilation condition r*(c^2 - s^2) + c*s*(aqq - app) = 0, i.e.
    // t^2 - 2*tau*t - 1 = 0 in t = s/c; take the smaller-magnitude root.
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        -1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.dim();
    for i in 0..n {
        if i == p || i == q {
            continue;
        }
        let aip = a.get(i, p);
        let aiq = a.get(i, q);
        let new_ip = aip * c + aiq * s * phase.conj();
        let new_iq = aiq * c - aip * s * phase;
        a.set(i, p, new_ip);
        a.set(i, q, new_iq);
        a.set(p, i, new_ip.conj());
        a.set(q, i, new_iq.conj());
    }
    let new_pp = app * c * c + 2.0 * r * s * c + aqq * s * s;
    let new_qq = app * s * s - 2.0 * r * s * c + aqq * c * c;
    a.set(p, p, Complex64::new(new_pp, 0.0));
    a.set(q, q, Complex64::new(new_qq, 0.0));
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));

    for i in 0..n {
        let vip = v.get(i, p);
        let viq = v.get(i, q);
        v.set(i, p, vip * c + viq * s * phase.conj());
        v.set(i, q, viq * c - vip * s * phase);
    }
}
