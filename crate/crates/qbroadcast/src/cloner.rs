//! The state-dependent symmetric qubit cloning machine: parameters,
//! machine-state Gram matrix, explicit isometry, single-qubit outputs,
//! distortions and the distortion-minimizing machine parameter.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen_unchecked, ComplexMatrix, DensityMatrix};

/// |lambda - 1/6| below which the machine counts as universal.
pub const UNIVERSAL_TOL: f64 = 1e-12;

/// Gram eigenvalues above this (negative) floor are treated as numerical
/// noise and clipped to zero during factorization; anything lower is a hard
/// infeasibility.
pub const GRAM_CLIP: f64 = -1e-12;

/// Machine parameters. `mu` is always derived as `1 - 2*lambda`; it is
/// never an independent input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MachineParams {
    lambda: f64,
    mu: f64,
}

impl MachineParams {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// True iff lambda is 1/6 (within 1e-12): the copy quality then no
    /// longer depends on the input state.
    pub fn is_universal(&self) -> bool {
        (self.lambda - 1.0 / 6.0).abs() <= UNIVERSAL_TOL
    }
}

/// Validates `0 < lambda < 1/2` and fixes `mu = 1 - 2*lambda`.
pub fn make_machine(lambda: f64) -> Result<MachineParams> {
    if !(lambda > 0.0 && lambda < 0.5) {
        return Err(Error::LambdaOutOfRange { lambda });
    }
    Ok(MachineParams {
        lambda,
        mu: 1.0 - 2.0 * lambda,
    })
}

/// A pure qubit alpha|0> + beta|1> with real alpha and complex beta.
#[derive(Debug, Clone, Copy)]
pub struct PureQubit {
    alpha: f64,
    beta: Complex64,
}

impl PureQubit {
    /// Requires alpha^2 + |beta|^2 = 1 within 1e-12.
    pub fn new(alpha: f64, beta: Complex64) -> Result<Self> {
        let deviation = (alpha * alpha + beta.norm_sqr() - 1.0).abs();
        if deviation > 1e-12 {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { alpha, beta })
    }

    /// Real-amplitude qubit with <0|psi>^2 = alpha2.
    pub fn from_alpha2(alpha2: f64) -> Self {
        assert!((0.0..=1.0).contains(&alpha2), "alpha2 must lie in [0, 1]");
        Self {
            alpha: alpha2.sqrt(),
            beta: Complex64::new((1.0 - alpha2).sqrt(), 0.0),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }
}

/// Gram matrix of the machine states in the basis order (Q0, Q1, Y0, Y1):
/// diagonal (1-2L, 1-2L, L, L), the only nonzero off-diagonal inner
/// products being <Q0|Y1> = <Q1|Y0> = mu/2.
pub fn gram_matrix(p: MachineParams) -> ComplexMatrix {
    let l = p.lambda();
    let half_mu = p.mu() / 2.0;
    let mut g = ComplexMatrix::diagonal(&[1.0 - 2.0 * l, 1.0 - 2.0 * l, l, l]);
    g.set(0, 3, Complex64::new(half_mu, 0.0));
    g.set(3, 0, Complex64::new(half_mu, 0.0));
    g.set(1, 2, Complex64::new(half_mu, 0.0));
    g.set(2, 1, Complex64::new(half_mu, 0.0));
    g
}

/// Minimum eigenvalue of the machine-state Gram matrix.
///
/// The machine states exist as actual vectors iff this is nonnegative.
/// In closed form the 2x2 blocks have determinant (1-2L)(6L-1)/4, so the
/// machine is realizable iff lambda >= 1/6.
pub fn gram_feasibility(p: MachineParams) -> f64 {
    hermitian_eigen_unchecked(&gram_matrix(p)).0[0]
}

/// Closed-form determinant (1-2L)(6L-1)/4 of each 2x2 Gram block; changes
/// sign exactly where [`gram_feasibility`] does.
pub fn gram_block_closed_form(lambda: f64) -> f64 {
    (1.0 - 2.0 * lambda) * (6.0 * lambda - 1.0) / 4.0
}

/// The explicit input-qubit -> copy (x) copy (x) machine embedding.
///
/// The machine space keeps its full dimension 4 even when the Gram matrix
/// is rank-deficient (lambda = 1/6); zero-norm directions stay as exact
/// zeros. Columns are the images of |0> and |1>, each of length
/// 2*2*4 = 16 with the machine index varying fastest.
#[derive(Debug, Clone)]
pub struct ClonerIsometry {
    col0: Vec<Complex64>,
    col1: Vec<Complex64>,
}

/// Subsystem dimensions of one cloner output: copy, copy, machine.
pub const ISOMETRY_DIMS: [usize; 3] = [2, 2, 4];

impl ClonerIsometry {
    /// Image of the basis state |b>, b in {0, 1}.
    pub fn column(&self, b: usize) -> &[Complex64] {
        match b {
            0 => &self.col0,
            1 => &self.col1,
            _ => panic!("qubit basis index must be 0 or 1"),
        }
    }

    /// Image of a0|0> + a1|1>.
    pub fn apply_amplitudes(&self, a0: Complex64, a1: Complex64) -> Vec<Complex64> {
        self.col0
            .iter()
            .zip(&self.col1)
            .map(|(&x, &y)| a0 * x + a1 * y)
            .collect()
    }

    pub fn apply(&self, psi: &PureQubit) -> Vec<Complex64> {
        self.apply_amplitudes(Complex64::new(psi.alpha(), 0.0), psi.beta())
    }

    /// max deviation of the column Gram matrix from the 2x2 identity.
    pub fn orthonormality_deviation(&self) -> f64 {
        let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
            a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
        };
        let n0 = (dot(&self.col0, &self.col0) - Complex64::new(1.0, 0.0)).norm();
        let n1 = (dot(&self.col1, &self.col1) - Complex64::new(1.0, 0.0)).norm();
        let cross = dot(&self.col0, &self.col1).norm();
        n0.max(n1).max(cross)
    }
}

/// Builds concrete machine vectors by factoring the Gram matrix and
/// assembles the isometry columns.
///
/// Gram eigenvalues in [-1e-12, 0) are clipped to zero (numerical noise at
/// the rank-deficient point lambda = 1/6); anything more negative means no
/// set of machine vectors exists and is a hard error carrying the minimum
/// eigenvalue. The lambda < 1/6 regime is mathematically infeasible and is
/// never silently patched.
pub fn build_isometry(p: MachineParams) -> Result<ClonerIsometry> {
    let (eigs, vecs) = hermitian_eigen_unchecked(&gram_matrix(p));
    if eigs[0] < GRAM_CLIP {
        return Err(Error::InfeasibleMachine {
            min_eigenvalue: eigs[0],
        });
    }
    // Machine vector for Gram row j: v_j[k] = sqrt(w_k) * U(j, k), so that
    // <v_i|v_j> reproduces the Gram entries.
    let vector = |j: usize| -> Vec<Complex64> {
        (0..4)
            .map(|k| vecs.get(j, k) * eigs[k].max(0.0).sqrt())
            .collect()
    };
    let (q0, q1, y0, y1) = (vector(0), vector(1), vector(2), vector(3));

    // Copy-pair index (c1, c2) packs as (c1*2 + c2)*4 + machine index.
    let mut col0 = vec![Complex64::new(0.0, 0.0); 16];
    let mut col1 = vec![Complex64::new(0.0, 0.0); 16];
    col0[0..4].copy_from_slice(&q0); // |00>|Q0>
    col0[4..8].copy_from_slice(&y0); // |01>|Y0>
    col0[8..12].copy_from_slice(&y0); // |10>|Y0>
    col1[12..16].copy_from_slice(&q1); // |11>|Q1>
    col1[4..8].copy_from_slice(&y1); // |01>|Y1>
    col1[8..12].copy_from_slice(&y1); // |10>|Y1>
    Ok(ClonerIsometry { col0, col1 })
}

/// Reduced single-copy output of cloning `psi`, in closed form:
/// diagonal alpha^2 + L(|beta|^2 - alpha^2) / its complement, off-diagonal
/// alpha * conj(beta) * mu.
pub fn clone_reduced(psi: &PureQubit, p: MachineParams) -> DensityMatrix {
    let (l, mu) = (p.lambda(), p.mu());
    let a2 = psi.alpha() * psi.alpha();
    let b2 = psi.beta().norm_sqr();
    let shift = l * (b2 - a2);
    let off = psi.beta().conj() * psi.alpha() * mu;
    let mut m = ComplexMatrix::zeros(2);
    m.set(0, 0, Complex64::new(a2 + shift, 0.0));
    m.set(0, 1, off);
    m.set(1, 0, off.conj());
    m.set(1, 1, Complex64::new(b2 - shift, 0.0));
    DensityMatrix::new(m).expect("closed-form clone output is Hermitian")
}

/// Single-copy distortion 2L^2(4a^4 - 4a^2 + 1) + 2a^2(1-a^2)(mu-1)^2,
/// which collapses to the input-independent value 2L^2 once mu = 1 - 2L.
pub fn distortion_a(alpha2: f64, p: MachineParams) -> f64 {
    assert!((0.0..=1.0).contains(&alpha2), "alpha2 must lie in [0, 1]");
    let (l, mu) = (p.lambda(), p.mu());
    2.0 * l * l * (4.0 * alpha2 * alpha2 - 4.0 * alpha2 + 1.0)
        + 2.0 * alpha2 * (1.0 - alpha2) * (mu - 1.0) * (mu - 1.0)
}

/// Two-copy distortion: the six-term expansion with mu = 1 - 2*lambda
/// already substituted. Quadratic in lambda with second derivative 16.
pub fn distortion_ab(alpha2: f64, lambda: f64) -> f64 {
    assert!((0.0..=1.0).contains(&alpha2), "alpha2 must lie in [0, 1]");
    assert!(
        lambda > 0.0 && lambda < 0.5,
        "lambda must lie in the open interval (0, 0.5)"
    );
    let a2 = alpha2;
    let b2 = 1.0 - alpha2;
    let half_mu = (1.0 - 2.0 * lambda) / 2.0;
    let t1 = a2 * a2 - a2 * (1.0 - 2.0 * lambda);
    let t2 = 4.0 * a2 * b2 * (a2 - half_mu) * (a2 - half_mu);
    let t3 = 2.0 * a2 * a2 * b2 * b2;
    let t4 = 2.0 * a2 * b2 - 2.0 * lambda;
    let t5 = 4.0 * a2 * b2 * (b2 - half_mu) * (b2 - half_mu);
    let t6 = b2 * b2 * (2.0 * lambda - a2) * (2.0 * lambda - a2);
    t1 * t1 + t2 + t3 + t4 * t4 + t5 + t6
}

/// The machine parameter minimizing the two-copy distortion at fixed
/// input: 3 * alpha2 * (1 - alpha2) / 4.
pub fn optimal_lambda(alpha2: f64) -> f64 {
    assert!((0.0..=1.0).contains(&alpha2), "alpha2 must lie in [0, 1]");
    3.0 * alpha2 * (1.0 - alpha2) / 4.0
}

/// One row of the copy-quality table, carrying both readings of the
/// table's first column (`x` taken as the amplitude alpha, and `x` taken
/// as the probability alpha^2).
///
/// Only the alpha reading reproduces the published machine-parameter
/// column; `readings_divergence` quantifies how far apart the two readings
/// are. The printed distortion column corresponds to 2*lambda^2 of the
/// 3-decimal rounded lambda, so both the rounded and unrounded values are
/// reported.
#[derive(Debug, Clone, Copy)]
pub struct Table1Row {
    pub x: f64,
    pub lambda_alpha_reading: f64,
    pub lambda_alpha2_reading: f64,
    pub lambda_rounded: f64,
    pub d_a_of_rounded: f64,
    pub d_a_exact: f64,
    pub readings_divergence: f64,
    pub universal_lambda: f64,
    pub universal_d_a: f64,
}

/// The nine-row copy-quality table for x = 0.1 .. 0.9.
pub fn table1() -> Vec<Table1Row> {
    (1..=9)
        .map(|i| {
            let x = f64::from(i) / 10.0;
            let lambda_alpha_reading = optimal_lambda(x * x);
            let lambda_alpha2_reading = optimal_lambda(x);
            let lambda_rounded = (lambda_alpha_reading * 1e3).round() / 1e3;
            Table1Row {
                x,
                lambda_alpha_reading,
                lambda_alpha2_reading,
                lambda_rounded,
                d_a_of_rounded: 2.0 * lambda_rounded * lambda_rounded,
                d_a_exact: 2.0 * lambda_alpha_reading * lambda_alpha_reading,
                readings_divergence: (lambda_alpha_reading - lambda_alpha2_reading).abs(),
                universal_lambda: 1.0 / 6.0,
                universal_d_a: 2.0 / 36.0,
            }
        })
        .collect()
}
