//! Two-sided local cloning of a shared two-qubit state: closed-form output
//! density matrices for the general input, the Schmidt-form specialization,
//! the universal-machine baseline, and an independent full-Hilbert-space
//! oracle built from the explicit cloner isometry.
//!
//! The oracle is ground truth wherever it exists (lambda >= 1/6). The
//! closed forms are evaluated as published even where they misbehave: the
//! general-state local coefficients carry a trace surplus of
//! 2*(a00*a01 + a11*a10), which is recorded on the returned matrices, not
//! repaired.

use num_complex::Complex64;

use crate::cloner::{build_isometry, MachineParams};
use crate::error::{Error, Result};
use crate::linalg::{reduced_from_pure, tensor_vec, ComplexMatrix, DensityMatrix};
use crate::separability::{self, SeparabilityVerdict, Verdict};

/// A pure two-qubit state a00|00> + a11|11> + a10|10> + a01|01>.
///
/// Only the |11> amplitude may be complex; the other three are real, as in
/// the coefficient formulas this feeds.
#[derive(Debug, Clone, Copy)]
pub struct PureTwoQubit {
    a00: f64,
    a11: Complex64,
    a10: f64,
    a01: f64,
}

impl PureTwoQubit {
    /// Requires the squared amplitudes to sum to 1 within 1e-12.
    pub fn new(a00: f64, a11: Complex64, a10: f64, a01: f64) -> Result<Self> {
        let deviation = (a00 * a00 + a11.norm_sqr() + a10 * a10 + a01 * a01 - 1.0).abs();
        if deviation > 1e-12 {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { a00, a11, a10, a01 })
    }

    /// Real-amplitude constructor.
    pub fn from_reals(a00: f64, a11: f64, a10: f64, a01: f64) -> Result<Self> {
        Self::new(a00, Complex64::new(a11, 0.0), a10, a01)
    }

    /// The Schmidt-form state sqrt(alpha1_sq)|00> + sqrt(1-alpha1_sq)|11>.
    pub fn schmidt(alpha1_sq: f64) -> Self {
        assert!(
            (0.0..=1.0).contains(&alpha1_sq),
            "alpha1_sq must lie in [0, 1]"
        );
        Self {
            a00: alpha1_sq.sqrt(),
            a11: Complex64::new((1.0 - alpha1_sq).sqrt(), 0.0),
            a10: 0.0,
            a01: 0.0,
        }
    }

    pub fn alpha1(&self) -> f64 {
        self.a00
    }

    pub fn beta1(&self) -> Complex64 {
        self.a11
    }

    pub fn gamma1(&self) -> f64 {
        self.a10
    }

    pub fn delta1(&self) -> f64 {
        self.a01
    }

    /// True when the |01> and |10> amplitudes vanish.
    pub fn is_schmidt_form(&self) -> bool {
        self.a10 == 0.0 && self.a01 == 0.0
    }

    pub fn has_real_amplitudes(&self) -> bool {
        self.a11.im == 0.0
    }

    /// Amplitudes in basis order |00>, |01>, |10>, |11>.
    pub fn amplitudes(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.a00, 0.0),
            Complex64::new(self.a01, 0.0),
            Complex64::new(self.a10, 0.0),
            self.a11,
        ]
    }
}

fn density(m: ComplexMatrix) -> DensityMatrix {
    DensityMatrix::new(m).expect("closed-form output matrices are Hermitian by construction")
}

/// Nonlocal output rho_AB' = rho_A'B for the general real-amplitude input,
/// assembled from the sixteen coefficient placements. Trace is exactly 1.
pub fn nonlocal_output_general(chi: &PureTwoQubit, p: MachineParams) -> DensityMatrix {
    assert!(
        chi.has_real_amplitudes(),
        "the general-state coefficient formulas assume real amplitudes"
    );
    let (l, mu) = (p.lambda(), p.mu());
    let (a, b, g, d) = (chi.alpha1(), chi.beta1().re, chi.gamma1(), chi.delta1());
    let (a2, b2, g2, d2) = (a * a, b * b, g * g, d * d);
    let om = 1.0 - l;

    let c11 = a2 * om * om + b2 * l * l + l * om * (d2 + g2);
    let c12 = b * g * l * mu + d * a * mu * om;
    let c13 = b * d * l * mu + a * g * mu * om;
    let c14 = mu * mu * d * g;
    let c22 = d2 * om * om + g2 * l * l + l * om * (a2 + b2);
    let c23 = mu * mu * a * b;
    let c24 = a * g * l * mu + b * d * mu * om;
    let c33 = g2 * om * om + d2 * l * l + l * om * (a2 + b2);
    let c34 = d * a * mu * l + b * g * mu * om;
    let c44 = a2 * l * l + b2 * om * om + l * om * (d2 + g2);

    density(ComplexMatrix::from_real_rows(
        4,
        &[
            c11, c12, c13, c23, //
            c12, c22, c14, c24, //
            c13, c14, c33, c34, //
            c23, c24, c34, c44,
        ],
    ))
}

fn schmidt_nonlocal(alpha1: f64, beta1: Complex64, p: MachineParams) -> DensityMatrix {
    let (l, mu) = (p.lambda(), p.mu());
    let mid = l * (1.0 - l);
    let corner = beta1.conj() * (alpha1 * mu * mu);
    let mut m = ComplexMatrix::diagonal(&[
        alpha1 * alpha1 * (1.0 - 2.0 * l) + l * l,
        mid,
        mid,
        beta1.norm_sqr() * (1.0 - 2.0 * l) + l * l,
    ]);
    m.set(0, 3, corner);
    m.set(3, 0, corner.conj());
    density(m)
}

/// Nonlocal output for the Schmidt-form input:
/// diag(a^2(1-2L)+L^2, L(1-L), L(1-L), b^2(1-2L)+L^2) with corner
/// coherences a*b*mu^2.
pub fn nonlocal_output_schmidt(alpha1_sq: f64, p: MachineParams) -> DensityMatrix {
    assert!(
        (0.0..=1.0).contains(&alpha1_sq),
        "alpha1_sq must lie in [0, 1]"
    );
    schmidt_nonlocal(
        alpha1_sq.sqrt(),
        Complex64::new((1.0 - alpha1_sq).sqrt(), 0.0),
        p,
    )
}

/// Local output rho_AA' = rho_BB' for the Schmidt-form input:
/// a^2(1-2L)|00><00| + L * (|01>+|10>)(<01|+<10|) + b^2(1-2L)|11><11|.
pub fn local_output_schmidt(alpha1_sq: f64, p: MachineParams) -> DensityMatrix {
    assert!(
        (0.0..=1.0).contains(&alpha1_sq),
        "alpha1_sq must lie in [0, 1]"
    );
    let l = p.lambda();
    let w = 1.0 - 2.0 * l;
    let mut m = ComplexMatrix::diagonal(&[alpha1_sq * w, l, l, (1.0 - alpha1_sq) * w]);
    m.set(1, 2, Complex64::new(l, 0.0));
    m.set(2, 1, Complex64::new(l, 0.0));
    density(m)
}

/// Local outputs (rho_AA', rho_BB') for the general real-amplitude input,
/// assembled from the published coefficient formulas as printed.
///
/// As printed these coefficients sum to 1 + 2*(a00*a01 + a11*a10), not 1;
/// the surplus shows up in each returned matrix's `trace_deviation`. The
/// oracle provides the correctly normalized reductions where the machine
/// is realizable.
pub fn local_outputs_general(
    chi: &PureTwoQubit,
    p: MachineParams,
) -> (DensityMatrix, DensityMatrix) {
    assert!(
        chi.has_real_amplitudes(),
        "the general-state coefficient formulas assume real amplitudes"
    );
    let (l, mu) = (p.lambda(), p.mu());
    let w = 1.0 - 2.0 * l;
    let (a, b, g, d) = (chi.alpha1(), chi.beta1().re, chi.gamma1(), chi.delta1());

    let assemble = |k11: f64, k12: f64, k14: f64, k44: f64| -> DensityMatrix {
        density(ComplexMatrix::from_real_rows(
            4,
            &[
                k11, k12, k12, 0.0, //
                k12, k14, k14, k12, //
                k12, k14, k14, k12, //
                0.0, k12, k12, k44,
            ],
        ))
    };

    let rho_aa = assemble(
        w * (a + d) * (a + d),
        (mu / 2.0) * (a + d) * (b + g),
        l + 2.0 * l * (b * g + d * a),
        w * (b + g) * (b + g),
    );
    let rho_bb = assemble(
        w * (a + g) * (a + g),
        (mu / 2.0) * (a + g) * (b + d),
        l + 2.0 * l * (a * g + d * b),
        w * (b + d) * (b + d),
    );
    (rho_aa, rho_bb)
}

/// The universal-machine baseline outputs at lambda = 1/6, coded directly
/// from their fixed closed forms rather than by specializing the
/// lambda-dependent expressions:
/// local  = 2a^2/3 |00><00| + 1/3 |+><+| + 2b^2/3 |11><11|,
/// nonlocal = (24a^2+1)/36 |00><00| + (24b^2+1)/36 |11><11|
///          + 5/36 (|01><01| + |10><10|) + 4ab/9 (|00><11| + |11><00|).
pub fn buzek_outputs(alpha1_sq: f64) -> (DensityMatrix, DensityMatrix) {
    assert!(
        (0.0..=1.0).contains(&alpha1_sq),
        "alpha1_sq must lie in [0, 1]"
    );
    let a2 = alpha1_sq;
    let b2 = 1.0 - alpha1_sq;
    let ab = (a2 * b2).sqrt();

    // |+> = (|01> + |10>)/sqrt(2), so 1/3 |+><+| fills the central 2x2
    // block with 1/6.
    let mut local =
        ComplexMatrix::diagonal(&[2.0 * a2 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 2.0 * b2 / 3.0]);
    local.set(1, 2, Complex64::new(1.0 / 6.0, 0.0));
    local.set(2, 1, Complex64::new(1.0 / 6.0, 0.0));

    let mut nonlocal = ComplexMatrix::diagonal(&[
        (24.0 * a2 + 1.0) / 36.0,
        5.0 / 36.0,
        5.0 / 36.0,
        (24.0 * b2 + 1.0) / 36.0,
    ]);
    nonlocal.set(0, 3, Complex64::new(4.0 * ab / 9.0, 0.0));
    nonlocal.set(3, 0, Complex64::new(4.0 * ab / 9.0, 0.0));

    (density(local), density(nonlocal))
}

/// All pairwise reductions of the joint state after both sides clone.
#[derive(Debug, Clone)]
pub struct OracleOutputs {
    /// Nonlocal pair: original A with B's second copy.
    pub rho_ab_prime: DensityMatrix,
    /// Nonlocal pair: A's second copy with original B.
    pub rho_a_prime_b: DensityMatrix,
    /// Local pair on A's side.
    pub rho_aa_prime: DensityMatrix,
    /// Local pair on B's side.
    pub rho_bb_prime: DensityMatrix,
    /// The other nonlocal pairing, for which no closed form is published.
    pub rho_ab: DensityMatrix,
    /// Second-copy nonlocal pairing, likewise oracle-only.
    pub rho_a_prime_b_prime: DensityMatrix,
}

/// Joint-space subsystem layout used by the oracle:
/// copyA, copyA', machineA, copyB, copyB', machineB.
const ORACLE_DIMS: [usize; 6] = [2, 2, 4, 2, 2, 4];

/// Applies the explicit cloner isometry independently on both qubits of
/// `chi` and reduces the resulting 256-amplitude pure state to every named
/// pair. This is the full-Hilbert-space route against which the
/// closed-form matrices are adjudicated.
///
/// Fails with `InfeasibleMachine` when the machine-state Gram matrix is
/// indefinite (lambda < 1/6).
pub fn broadcast_oracle(chi: &PureTwoQubit, p: MachineParams) -> Result<OracleOutputs> {
    let iso = build_isometry(p)?;
    let amps = chi.amplitudes();

    let mut joint = vec![Complex64::new(0.0, 0.0); 256];
    for a_bit in 0..2 {
        for b_bit in 0..2 {
            let c = amps[2 * a_bit + b_bit];
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let side_a = iso.column(a_bit);
            let side_b = iso.column(b_bit);
            let product = tensor_vec(side_a, side_b);
            for (acc, term) in joint.iter_mut().zip(&product) {
                *acc += c * term;
            }
        }
    }

    let reduce = |keep: &[usize]| -> Result<DensityMatrix> {
        let m = reduced_from_pure(&joint, &ORACLE_DIMS, keep)?;
        let rho = DensityMatrix::new(m)?;
        debug_assert!(rho.trace_deviation().abs() < 1e-10);
        debug_assert!(rho.is_positive_semidefinite(1e-10));
        Ok(rho)
    };

    let rho_ab_prime = reduce(&[0, 4])?;
    let rho_a_prime_b = reduce(&[1, 3])?;
    assert!(
        rho_ab_prime
            .matrix()
            .approx_eq(rho_a_prime_b.matrix(), 1e-10),
        "the two nonlocal reductions must agree by copy symmetry"
    );
    Ok(OracleOutputs {
        rho_ab_prime,
        rho_a_prime_b,
        rho_aa_prime: reduce(&[0, 1])?,
        rho_bb_prime: reduce(&[3, 4])?,
        rho_ab: reduce(&[0, 3])?,
        rho_a_prime_b_prime: reduce(&[1, 4])?,
    })
}

/// Output matrices and verdicts for one broadcasting attempt.
///
/// `broadcast_success` holds iff the nonlocal output is inseparable while
/// both local outputs are separable.
#[derive(Debug, Clone)]
pub struct BroadcastReport {
    pub rho_nonlocal: DensityMatrix,
    pub rho_local_a: DensityMatrix,
    pub rho_local_b: DensityMatrix,
    pub nonlocal_verdict: SeparabilityVerdict,
    pub local_a_verdict: SeparabilityVerdict,
    pub local_b_verdict: SeparabilityVerdict,
    pub broadcast_success: bool,
}

/// Which route produces the output matrices of a [`BroadcastReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BroadcastRoute {
    /// Published closed forms: the Schmidt-form expressions when the |01>
    /// and |10> amplitudes vanish, the general coefficient formulas
    /// otherwise.
    ClosedForm,
    /// Full-Hilbert-space reduction (requires a realizable machine).
    Oracle,
}

/// Builds the three output matrices for `chi`, tests each for
/// separability with the given decision threshold, and combines the
/// verdicts into the broadcast-success flag.
pub fn broadcast_report(
    chi: &PureTwoQubit,
    p: MachineParams,
    route: BroadcastRoute,
    threshold: f64,
) -> Result<BroadcastReport> {
    let (rho_nonlocal, rho_local_a, rho_local_b) = match route {
        BroadcastRoute::Oracle => {
            let outputs = broadcast_oracle(chi, p)?;
            (
                outputs.rho_ab_prime,
                outputs.rho_aa_prime,
                outputs.rho_bb_prime,
            )
        }
        BroadcastRoute::ClosedForm => {
            if chi.is_schmidt_form() {
                let nonlocal = schmidt_nonlocal(chi.alpha1(), chi.beta1(), p);
                let local = local_output_schmidt(chi.alpha1() * chi.alpha1(), p);
                (nonlocal, local.clone(), local)
            } else {
                let nonlocal = nonlocal_output_general(chi, p);
                let (local_a, local_b) = local_outputs_general(chi, p);
                (nonlocal, local_a, local_b)
            }
        }
    };

    let nonlocal_verdict = separability::test_with_threshold(&rho_nonlocal, threshold)?;
    let local_a_verdict = separability::test_with_threshold(&rho_local_a, threshold)?;
    let local_b_verdict = separability::test_with_threshold(&rho_local_b, threshold)?;
    let broadcast_success = nonlocal_verdict.verdict == Verdict::Inseparable
        && local_a_verdict.verdict == Verdict::Separable
        && local_b_verdict.verdict == Verdict::Separable;

    Ok(BroadcastReport {
        rho_nonlocal,
        rho_local_a,
        rho_local_b,
        nonlocal_verdict,
        local_a_verdict,
        local_b_verdict,
        broadcast_success,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cloner::{clone_reduced, make_machine, PureQubit};
    use crate::linalg::tensor;
    use crate::separability::PT_DECISION_TOL;

    fn machine(lambda: f64) -> MachineParams {
        make_machine(lambda).unwrap()
    }

    #[test]
    fn general_reduces_to_schmidt_on_subfamily() {
        for lambda in [0.12, 1.0 / 6.0, 0.3] {
            let p = machine(lambda);
            for alpha1_sq in [0.0, 0.2, 0.5, 0.9, 1.0] {
                let chi = PureTwoQubit::schmidt(alpha1_sq);
                let general = nonlocal_output_general(&chi, p);
                let schmidt = nonlocal_output_schmidt(alpha1_sq, p);
                assert!(
                    general.matrix().approx_eq(schmidt.matrix(), 1e-14),
                    "lambda = {lambda}, alpha1_sq = {alpha1_sq}"
                );
            }
        }
    }

    #[test]
    fn nonlocal_entry_matches_universal_form() {
        let rho = nonlocal_output_general(&PureTwoQubit::schmidt(0.3), machine(1.0 / 6.0));
        assert!((rho.entry(0, 0).re - (24.0 * 0.3 + 1.0) / 36.0).abs() < 1e-14);
    }

    #[test]
    fn nonlocal_general_matches_oracle_at_feasible_lambda() {
        let chi = PureTwoQubit::from_reals(0.5, 0.5, 0.5, 0.5).unwrap();
        let p = machine(0.25);
        let closed = nonlocal_output_general(&chi, p);
        let oracle = broadcast_oracle(&chi, p).unwrap();
        assert!(closed
            .matrix()
            .approx_eq(oracle.rho_ab_prime.matrix(), 1e-10));
        assert!(closed.trace_deviation().abs() < 1e-12);
    }

    #[test]
    fn schmidt_nonlocal_universal_corner() {
        let rho = nonlocal_output_schmidt(0.5, machine(1.0 / 6.0));
        assert!((rho.entry(0, 3).re - 2.0 / 9.0).abs() < 1e-14);
        assert!((rho.entry(0, 0).re - 13.0 / 36.0).abs() < 1e-14);
        assert!((rho.entry(1, 1).re - 5.0 / 36.0).abs() < 1e-14);
    }

    #[test]
    fn schmidt_nonlocal_product_input() {
        let lambda = 0.2;
        let rho = nonlocal_output_schmidt(1.0, machine(lambda));
        assert!(rho.entry(0, 3).norm() < 1e-15);
        assert!((rho.entry(0, 0).re - (1.0 - 2.0 * lambda + lambda * lambda)).abs() < 1e-14);
        assert!((rho.entry(3, 3).re - lambda * lambda).abs() < 1e-14);
    }

    #[test]
    fn schmidt_nonlocal_separable_at_quarter() {
        // Central-block PT eigenvalues are L(1-L) -/+ a*b*mu^2; at
        // lambda = 1/4, alpha1_sq = 1/2 the minimum is 0.1875 - 0.125 > 0.
        let rho = nonlocal_output_schmidt(0.5, machine(0.25));
        let verdict = separability::test(&rho).unwrap();
        assert!((verdict.min_pt_eigenvalue - 0.0625).abs() < 1e-12);
        assert_eq!(verdict.verdict, Verdict::Separable);
    }

    #[test]
    fn schmidt_nonlocal_verdicts_around_universal_interval() {
        // The universal broadcastable interval starts at 0.10969; points
        // below it give separable nonlocal outputs, points inside do not.
        let p = machine(1.0 / 6.0);
        let below = separability::test(&nonlocal_output_schmidt(0.05, p)).unwrap();
        assert_eq!(below.verdict, Verdict::Separable);
        let inside = separability::test(&nonlocal_output_schmidt(0.5, p)).unwrap();
        assert_eq!(inside.verdict, Verdict::Inseparable);
    }

    #[test]
    fn local_schmidt_universal_central_block() {
        let rho = local_output_schmidt(0.5, machine(1.0 / 6.0));
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            assert!((rho.entry(i, j).re - 1.0 / 6.0).abs() < 1e-14);
        }
        assert!((rho.entry(0, 0).re - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn local_schmidt_zero_weight_input() {
        let rho = local_output_schmidt(0.0, machine(0.3));
        assert!(rho.entry(0, 0).norm() < 1e-15);
        assert!((rho.entry(3, 3).re - 0.4).abs() < 1e-14);
        assert!(rho.trace_deviation().abs() < 1e-14);
    }

    #[test]
    fn local_schmidt_separability_boundary_row() {
        // At lambda = 0.187 the local outputs are separable exactly for
        // alpha1_sq inside (0.09904, 0.90095).
        let p = machine(0.187);
        let inside = separability::test(&local_output_schmidt(0.5, p)).unwrap();
        assert_eq!(inside.verdict, Verdict::Separable);
        let outside = separability::test(&local_output_schmidt(0.05, p)).unwrap();
        assert_eq!(outside.verdict, Verdict::Inseparable);
    }

    #[test]
    fn local_general_reduces_on_subfamily_except_printed_coherences() {
        // (0.6, 0.8, 0, 0) has zero trace surplus; the diagonal and the
        // central block match the Schmidt form, while the printed
        // coefficient (mu/2)(a+d)(b+g) leaves a spurious mu*a*b/2
        // coherence that the Schmidt form (and the oracle) do not have.
        let p = machine(0.2);
        let chi = PureTwoQubit::from_reals(0.6, 0.8, 0.0, 0.0).unwrap();
        let (rho_aa, rho_bb) = local_outputs_general(&chi, p);
        let schmidt = local_output_schmidt(0.36, p);
        assert!(rho_aa.trace_deviation().abs() < 1e-12);
        assert!(rho_bb.trace_deviation().abs() < 1e-12);
        for (i, j) in [(0, 0), (1, 1), (2, 2), (3, 3), (1, 2), (2, 1), (0, 3)] {
            assert!((rho_aa.entry(i, j) - schmidt.entry(i, j)).norm() < 1e-14);
        }
        let spurious = p.mu() / 2.0 * 0.6 * 0.8;
        assert!((rho_aa.entry(0, 1).re - spurious).abs() < 1e-14);
        let oracle = broadcast_oracle(&chi, p).unwrap();
        assert!(oracle
            .rho_aa_prime
            .matrix()
            .approx_eq(schmidt.matrix(), 1e-10));
    }

    #[test]
    fn local_general_trace_surplus() {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let chi = PureTwoQubit::from_reals(inv, 0.0, 0.0, inv).unwrap();
        let (rho_aa, _) = local_outputs_general(&chi, machine(0.25));
        assert!((rho_aa.trace_deviation() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn local_general_can_be_indefinite_and_is_flagged_not_rejected() {
        // At small lambda the printed coefficients produce an indefinite
        // matrix; it flows through with input_valid = false on the verdict.
        let chi = PureTwoQubit::from_reals(0.5, 0.5, 0.5, 0.5).unwrap();
        let (rho_aa, _) = local_outputs_general(&chi, machine(0.05));
        assert!(rho_aa.min_eigenvalue() < -1e-6);
        let report = broadcast_report(
            &chi,
            machine(0.05),
            BroadcastRoute::ClosedForm,
            crate::separability::PT_DECISION_TOL,
        )
        .unwrap();
        assert!(!report.local_a_verdict.input_valid);
    }

    #[test]
    fn buzek_baseline_values() {
        let (local, nonlocal) = buzek_outputs(0.5);
        assert!((nonlocal.entry(0, 0).re - 13.0 / 36.0).abs() < 1e-15);
        assert!((nonlocal.entry(1, 1).re - 5.0 / 36.0).abs() < 1e-15);
        assert!((nonlocal.entry(0, 3).re - 2.0 / 9.0).abs() < 1e-15);
        assert!((local.entry(0, 0).re - 1.0 / 3.0).abs() < 1e-15);

        let (local, _) = buzek_outputs(1.0);
        assert!((local.entry(0, 0).re - 2.0 / 3.0).abs() < 1e-15);
        assert!(local.entry(3, 3).norm() < 1e-15);
    }

    #[test]
    fn buzek_equals_schmidt_forms_at_universal_lambda() {
        let p = machine(1.0 / 6.0);
        for i in 0..=10 {
            let alpha1_sq = f64::from(i) / 10.0;
            let (local, nonlocal) = buzek_outputs(alpha1_sq);
            assert!(local
                .matrix()
                .approx_eq(local_output_schmidt(alpha1_sq, p).matrix(), 1e-12));
            assert!(nonlocal
                .matrix()
                .approx_eq(nonlocal_output_schmidt(alpha1_sq, p).matrix(), 1e-12));
        }
    }

    #[test]
    fn oracle_matches_schmidt_closed_forms() {
        for lambda in [1.0 / 6.0, 0.2, 0.25, 0.3, 0.4] {
            let p = machine(lambda);
            for i in 0..=10 {
                let alpha1_sq = f64::from(i) / 10.0;
                let chi = PureTwoQubit::schmidt(alpha1_sq);
                let oracle = broadcast_oracle(&chi, p).unwrap();
                assert!(
                    oracle
                        .rho_ab_prime
                        .matrix()
                        .approx_eq(nonlocal_output_schmidt(alpha1_sq, p).matrix(), 1e-10),
                    "nonlocal lambda={lambda} alpha1_sq={alpha1_sq}"
                );
                let local = local_output_schmidt(alpha1_sq, p);
                assert!(oracle
                    .rho_aa_prime
                    .matrix()
                    .approx_eq(local.matrix(), 1e-10));
                assert!(oracle
                    .rho_bb_prime
                    .matrix()
                    .approx_eq(local.matrix(), 1e-10));
            }
        }
    }

    #[test]
    fn oracle_factorizes_product_input() {
        let p = machine(0.25);
        let chi = PureTwoQubit::from_reals(1.0, 0.0, 0.0, 0.0).unwrap();
        let oracle = broadcast_oracle(&chi, p).unwrap();
        let single = clone_reduced(&PureQubit::new(1.0, Complex64::new(0.0, 0.0)).unwrap(), p);
        let product = tensor(single.matrix(), single.matrix());
        assert!(oracle.rho_ab_prime.matrix().approx_eq(&product, 1e-12));
        assert!(oracle.rho_ab.matrix().approx_eq(&product, 1e-12));
    }

    #[test]
    fn oracle_rejects_infeasible_machine() {
        let chi = PureTwoQubit::schmidt(0.49);
        assert!(matches!(
            broadcast_oracle(&chi, machine(0.007)),
            Err(Error::InfeasibleMachine { .. })
        ));
    }

    #[test]
    fn oracle_extra_pairings_are_valid_states() {
        let chi = PureTwoQubit::from_reals(0.5, 0.5, 0.5, 0.5).unwrap();
        let oracle = broadcast_oracle(&chi, machine(0.2)).unwrap();
        for rho in [&oracle.rho_ab, &oracle.rho_a_prime_b_prime] {
            assert!(rho.trace_deviation().abs() < 1e-10);
            assert!(rho.is_positive_semidefinite(1e-10));
        }
    }

    #[test]
    fn oracle_handles_complex_beta1() {
        let p = machine(0.2);
        let beta = Complex64::new(0.6, 0.4);
        let alpha = (1.0 - beta.norm_sqr()).sqrt();
        let chi = PureTwoQubit::new(alpha, beta, 0.0, 0.0).unwrap();
        let oracle = broadcast_oracle(&chi, p).unwrap();
        let closed = schmidt_nonlocal(alpha, beta, p);
        assert!(oracle
            .rho_ab_prime
            .matrix()
            .approx_eq(closed.matrix(), 1e-10));
    }

    #[test]
    fn report_success_inside_universal_interval() {
        let chi = PureTwoQubit::schmidt(0.5);
        let report = broadcast_report(
            &chi,
            machine(1.0 / 6.0),
            BroadcastRoute::ClosedForm,
            PT_DECISION_TOL,
        )
        .unwrap();
        assert!(report.broadcast_success);
        assert_eq!(report.nonlocal_verdict.verdict, Verdict::Inseparable);
        assert_eq!(report.local_a_verdict.verdict, Verdict::Separable);
    }

    #[test]
    fn report_fails_for_product_input() {
        let chi = PureTwoQubit::from_reals(1.0, 0.0, 0.0, 0.0).unwrap();
        let report = broadcast_report(
            &chi,
            machine(0.2),
            BroadcastRoute::ClosedForm,
            PT_DECISION_TOL,
        )
        .unwrap();
        assert!(!report.broadcast_success);
        assert_eq!(report.nonlocal_verdict.verdict, Verdict::Separable);
    }

    #[test]
    fn report_oracle_route_agrees_with_closed_forms_on_schmidt_inputs() {
        let chi = PureTwoQubit::schmidt(0.5);
        let p = machine(0.2);
        let closed =
            broadcast_report(&chi, p, BroadcastRoute::ClosedForm, PT_DECISION_TOL).unwrap();
        let oracle = broadcast_report(&chi, p, BroadcastRoute::Oracle, PT_DECISION_TOL).unwrap();
        assert_eq!(closed.broadcast_success, oracle.broadcast_success);
        assert!(closed
            .rho_nonlocal
            .matrix()
            .approx_eq(oracle.rho_nonlocal.matrix(), 1e-10));
    }
}
