//! Broadcastability intervals in closed form, a numeric interval scanner,
//! broadcasting fidelity, its average, and the machine-parameter range in
//! which the state-dependent machine beats the universal one on average
//! fidelity.

use crate::broadcast::{local_output_schmidt, nonlocal_output_schmidt};
use crate::cloner::{gram_feasibility, make_machine, GRAM_CLIP};
use crate::separability::{self, Verdict};

/// A closed subinterval of [0, 1] in the squared amplitude, or nothing.
#[derive(Debug, Clone, Copy)]
pub struct Interval {
    lo: f64,
    hi: f64,
    empty: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo} > {hi}");
        Self {
            lo,
            hi,
            empty: false,
        }
    }

    pub fn empty() -> Self {
        Self {
            lo: f64::NAN,
            hi: f64::NAN,
            empty: true,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    /// Endpoints, when the interval is nonempty.
    pub fn bounds(&self) -> Option<(f64, f64)> {
        if self.empty {
            None
        } else {
            Some((self.lo, self.hi))
        }
    }

    pub fn lo(&self) -> Option<f64> {
        self.bounds().map(|(lo, _)| lo)
    }

    pub fn hi(&self) -> Option<f64> {
        self.bounds().map(|(_, hi)| hi)
    }

    pub fn length(&self) -> f64 {
        if self.empty {
            0.0
        } else {
            self.hi - self.lo
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        !self.empty && self.lo <= x && x <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        if self.empty || other.empty {
            return Interval::empty();
        }
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi {
            Interval::new(lo, hi)
        } else {
            Interval::empty()
        }
    }
}

fn assert_lambda(lambda: f64) {
    assert!(
        lambda > 0.0 && lambda < 0.5,
        "lambda must lie in the open interval (0, 0.5)"
    );
}

/// Squared-amplitude interval on which the nonlocal outputs are
/// inseparable: 1/2 -/+ sqrt((1-2L)^4 - 4L^2(1-L)^2) / (2(1-2L)^2).
/// Empty once the radicand turns negative, i.e. for L >= (3-sqrt(3))/6.
pub fn nonlocal_interval(lambda: f64) -> Interval {
    assert_lambda(lambda);
    let mu2 = (1.0 - 2.0 * lambda) * (1.0 - 2.0 * lambda);
    let radicand = mu2 * mu2 - 4.0 * lambda * lambda * (1.0 - lambda) * (1.0 - lambda);
    if radicand < 0.0 {
        return Interval::empty();
    }
    let half_width = radicand.sqrt() / (2.0 * mu2);
    Interval::new(0.5 - half_width, 0.5 + half_width)
}

/// Squared-amplitude interval on which the local outputs are separable:
/// 1/2 -/+ sqrt(1-4L) / (2(1-2L)). Empty for L > 1/4; the point {1/2} at
/// L = 1/4 exactly.
pub fn local_interval(lambda: f64) -> Interval {
    assert_lambda(lambda);
    let radicand = 1.0 - 4.0 * lambda;
    if radicand < 0.0 {
        return Interval::empty();
    }
    let half_width = radicand.sqrt() / (2.0 * (1.0 - 2.0 * lambda));
    Interval::new(0.5 - half_width, 0.5 + half_width)
}

/// Both intervals, their intersection, and whether the machine at this
/// lambda is realizable at all.
#[derive(Debug, Clone, Copy)]
pub struct IntervalReport {
    pub lambda: f64,
    /// I1: nonlocal outputs inseparable.
    pub nonlocal_inseparable: Interval,
    /// I2: local outputs separable.
    pub local_separable: Interval,
    /// Intersection of I1 and I2: broadcasting succeeds.
    pub broadcastable: Interval,
    /// Machine-state Gram matrix positive semidefinite.
    pub feasible: bool,
}

pub fn broadcast_interval(lambda: f64) -> IntervalReport {
    let nonlocal = nonlocal_interval(lambda);
    let local = local_interval(lambda);
    let feasible = match make_machine(lambda) {
        Ok(p) => gram_feasibility(p) >= GRAM_CLIP,
        Err(_) => false,
    };
    IntervalReport {
        lambda,
        nonlocal_inseparable: nonlocal,
        local_separable: local,
        broadcastable: nonlocal.intersect(&local),
        feasible,
    }
}

/// Numeric oracle for the closed-form intervals: sweeps the squared
/// amplitude over a uniform grid, builds both Schmidt-form outputs, tests
/// separability of each, and returns the observed broadcastable range.
/// Endpoints land within one grid step of [`broadcast_interval`].
pub fn scan_interval(lambda: f64, grid_size: usize) -> Interval {
    assert_lambda(lambda);
    assert!(grid_size >= 101, "grid must have at least 101 points");
    let p = make_machine(lambda).expect("lambda range checked above");
    let mut lo = None;
    let mut hi = None;
    for i in 0..grid_size {
        let alpha1_sq = i as f64 / (grid_size - 1) as f64;
        let nonlocal = separability::test(&nonlocal_output_schmidt(alpha1_sq, p))
            .expect("4x4 Hermitian by construction");
        if nonlocal.verdict != Verdict::Inseparable {
            continue;
        }
        let local = separability::test(&local_output_schmidt(alpha1_sq, p))
            .expect("4x4 Hermitian by construction");
        if local.verdict != Verdict::Separable {
            continue;
        }
        if lo.is_none() {
            lo = Some(alpha1_sq);
        }
        hi = Some(alpha1_sq);
    }
    match (lo, hi) {
        (Some(lo), Some(hi)) => Interval::new(lo, hi),
        _ => Interval::empty(),
    }
}

/// Length of the universal-machine broadcastable interval, sqrt(39)/8.
pub fn universal_interval_length() -> f64 {
    39.0_f64.sqrt() / 8.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WidthComparison {
    Wider,
    Narrower,
    Equal,
}

impl WidthComparison {
    pub fn as_str(&self) -> &'static str {
        match self {
            WidthComparison::Wider => "wider",
            WidthComparison::Narrower => "narrower",
            WidthComparison::Equal => "equal",
        }
    }
}

/// Compares the nonlocal-inseparability interval length at this lambda
/// against the universal baseline, with ties broken at 1e-12.
pub fn compare_with_universal(lambda: f64) -> WidthComparison {
    let diff = nonlocal_interval(lambda).length() - universal_interval_length();
    if diff.abs() <= 1e-12 {
        WidthComparison::Equal
    } else if diff > 0.0 {
        WidthComparison::Wider
    } else {
        WidthComparison::Narrower
    }
}

/// The machine parameter (other than trivially the universal point) at
/// which the nonlocal interval length equals the universal baseline,
/// located numerically by bisection. The length is strictly decreasing in
/// lambda, so the crossover is unique and sits at the universal point.
pub fn interval_length_crossover() -> f64 {
    let f = |l: f64| nonlocal_interval(l).length() - universal_interval_length();
    let (mut a, mut b) = (0.05, 0.21);
    debug_assert!(f(a) > 0.0 && f(b) < 0.0);
    while b - a > 1e-13 {
        let mid = 0.5 * (a + b);
        if f(mid) > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Broadcasting fidelity <chi| rho_AB' |chi> in closed form:
/// (1-L)^2 - 4 a^2 (1-a^2) L (1-2L).
pub fn fidelity(alpha1_sq: f64, lambda: f64) -> f64 {
    assert!(
        (0.0..=1.0).contains(&alpha1_sq),
        "alpha1_sq must lie in [0, 1]"
    );
    assert_lambda(lambda);
    (1.0 - lambda) * (1.0 - lambda)
        - 4.0 * alpha1_sq * (1.0 - alpha1_sq) * lambda * (1.0 - 2.0 * lambda)
}

/// Average of [`fidelity`] over the squared amplitude: (7L^2 - 8L + 3)/3.
pub fn average_fidelity(lambda: f64) -> f64 {
    assert_lambda(lambda);
    (7.0 * lambda * lambda - 8.0 * lambda + 3.0) / 3.0
}

/// Where the state-dependent machine's average fidelity beats the
/// universal machine's 67/108.
#[derive(Debug, Clone, Copy)]
pub struct DominanceReport {
    /// Accepted range of machine parameters, within the admissible domain.
    pub accepted: Interval,
    /// The second root of the quadratic, outside the admissible domain and
    /// therefore rejected.
    pub rejected_root: f64,
    /// The universal average fidelity the comparison is made against.
    pub universal_average: f64,
}

/// Solves average_fidelity(L) > 67/108 over the admissible domain
/// (0, 1/2): the quadratic 7L^2 - 8L + 41/36 > 0 holds below its smaller
/// root 1/6; the larger root ~0.97619 lies outside the domain and is
/// reported as rejected.
pub fn dominance_range() -> DominanceReport {
    let universal_average = 67.0 / 108.0;
    let (a, b, c) = (7.0_f64, -8.0_f64, 3.0 - 3.0 * universal_average);
    let disc = (b * b - 4.0 * a * c).sqrt();
    let lower = (-b - disc) / (2.0 * a);
    let upper = (-b + disc) / (2.0 * a);
    DominanceReport {
        accepted: Interval::new(0.0, lower),
        rejected_root: upper,
        universal_average,
    }
}

/// Machine parameters tabulated in the published interval table. These are
/// the nine distortion-minimizing lambdas of the copy-quality table.
pub const TABLE2_LAMBDAS: [f64; 9] = [
    0.007, 0.029, 0.061, 0.101, 0.115, 0.141, 0.159, 0.173, 0.187,
];

/// Interval reports for every tabulated machine parameter, feasibility
/// flag attached.
pub fn table2() -> Vec<IntervalReport> {
    TABLE2_LAMBDAS
        .iter()
        .map(|&l| broadcast_interval(l))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::broadcast::PureTwoQubit;

    fn round5(x: f64) -> f64 {
        (x * 1e5).round() / 1e5
    }

    #[test]
    fn nonlocal_interval_universal_point() {
        let half = 39.0_f64.sqrt() / 16.0;
        let (lo, hi) = nonlocal_interval(1.0 / 6.0).bounds().unwrap();
        assert!((lo - (0.5 - half)).abs() < 1e-15);
        assert!((hi - (0.5 + half)).abs() < 1e-15);
    }

    #[test]
    fn nonlocal_interval_table_rows() {
        let (lo, hi) = nonlocal_interval(0.007).bounds().unwrap();
        assert!((round5(lo) - 0.00005).abs() <= 1e-4);
        assert!((round5(hi) - 0.99994).abs() <= 1e-4);

        let (lo, hi) = nonlocal_interval(0.187).bounds().unwrap();
        assert!((round5(lo) - 0.18458).abs() <= 1e-4);
        assert!((round5(hi) - 0.81541).abs() <= 1e-4);
    }

    #[test]
    fn nonlocal_interval_emptiness_threshold() {
        let threshold = (3.0 - 3.0_f64.sqrt()) / 6.0;
        assert!(!nonlocal_interval(threshold - 1e-6).is_empty());
        assert!(nonlocal_interval(threshold + 1e-6).is_empty());
        assert!(nonlocal_interval(0.22).is_empty());
    }

    #[test]
    fn local_interval_values() {
        let (lo, hi) = local_interval(0.101).bounds().unwrap();
        assert!((round5(lo) - 0.01628).abs() <= 1e-4);
        assert!((round5(hi) - 0.98371).abs() <= 1e-4);

        let half = 48.0_f64.sqrt() / 16.0;
        let (lo, _) = local_interval(1.0 / 6.0).bounds().unwrap();
        assert!((lo - (0.5 - half)).abs() < 1e-15);

        // Degenerate point interval at lambda = 1/4.
        let (lo, hi) = local_interval(0.25).bounds().unwrap();
        assert!((lo - 0.5).abs() < 1e-15);
        assert!((hi - 0.5).abs() < 1e-15);
        assert!(local_interval(0.2500001).is_empty());
    }

    #[test]
    fn broadcast_interval_common_rows() {
        let report = broadcast_interval(0.029);
        let (lo, hi) = report.broadcastable.bounds().unwrap();
        assert!((round5(lo) - 0.00101).abs() <= 1e-4);
        assert!((round5(hi) - 0.99899).abs() <= 1e-4);
        assert!(!report.feasible);

        let report = broadcast_interval(0.159);
        let (lo, hi) = report.broadcastable.bounds().unwrap();
        assert!((round5(lo) - 0.09091).abs() <= 1e-4);
        assert!((round5(hi) - 0.90908).abs() <= 1e-4);

        assert!(broadcast_interval(0.22).broadcastable.is_empty());
    }

    #[test]
    fn intervals_are_symmetric_about_half() {
        for lambda in [0.007, 0.05, 0.12, 1.0 / 6.0, 0.2, 0.21] {
            for interval in [nonlocal_interval(lambda), local_interval(lambda)] {
                if let Some((lo, hi)) = interval.bounds() {
                    assert!((lo + hi - 1.0).abs() < 1e-12, "lambda = {lambda}");
                }
            }
        }
    }

    #[test]
    fn scan_matches_closed_form_at_universal_point() {
        let scanned = scan_interval(1.0 / 6.0, 10001);
        let closed = nonlocal_interval(1.0 / 6.0);
        let (slo, shi) = scanned.bounds().unwrap();
        let (clo, chi) = closed.bounds().unwrap();
        assert!((slo - clo).abs() <= 1e-4);
        assert!((shi - chi).abs() <= 1e-4);
    }

    #[test]
    fn scan_empty_when_local_interval_empty() {
        assert!(scan_interval(0.26, 501).is_empty());
    }

    #[test]
    fn scan_fine_grid_against_table_row_nine() {
        // One grid step of agreement with the closed form, whose 5-decimal
        // rounding is the printed row (0.18458, 0.81541).
        let scanned = scan_interval(0.187, 100001);
        let (lo, hi) = scanned.bounds().unwrap();
        let (clo, chi) = nonlocal_interval(0.187).bounds().unwrap();
        assert!((lo - clo).abs() <= 1e-5);
        assert!((hi - chi).abs() <= 1e-5);
        assert_eq!(round5(clo), 0.18458);
        assert_eq!(round5(chi), 0.81542);
    }

    #[test]
    fn width_comparisons() {
        assert_eq!(compare_with_universal(0.101), WidthComparison::Wider);
        assert_eq!(compare_with_universal(0.187), WidthComparison::Narrower);
        assert_eq!(compare_with_universal(1.0 / 6.0), WidthComparison::Equal);
    }

    #[test]
    fn crossover_sits_at_the_universal_point() {
        assert!((interval_length_crossover() - 1.0 / 6.0).abs() < 1e-9);
    }

    #[test]
    fn fidelity_closed_form_values() {
        assert!((fidelity(0.5, 1.0 / 6.0) - 21.0 / 36.0).abs() < 1e-15);
        for i in 0..=10 {
            let a2 = f64::from(i) / 10.0;
            let universal = 25.0 / 36.0 - 4.0 * a2 * (1.0 - a2) / 9.0;
            assert!((fidelity(a2, 1.0 / 6.0) - universal).abs() < 1e-15);
        }
        let lambda = 0.3;
        assert!((fidelity(0.0, lambda) - (1.0 - lambda) * (1.0 - lambda)).abs() < 1e-15);
    }

    #[test]
    fn fidelity_equals_overlap_with_nonlocal_output() {
        for lambda in [0.05, 1.0 / 6.0, 0.22, 0.4] {
            let p = make_machine(lambda).unwrap();
            for i in 0..=20 {
                let a2 = f64::from(i) / 20.0;
                let rho = nonlocal_output_schmidt(a2, p);
                let chi = PureTwoQubit::schmidt(a2);
                let overlap = rho.matrix().expectation(&chi.amplitudes());
                assert!(
                    (fidelity(a2, lambda) - overlap.re).abs() < 1e-12,
                    "lambda = {lambda}, alpha1_sq = {a2}"
                );
                assert!(overlap.im.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn average_fidelity_values() {
        assert!((average_fidelity(1.0 / 6.0) - 67.0 / 108.0).abs() < 1e-15);
        assert!((average_fidelity(0.1) - 2.27 / 3.0).abs() < 1e-12);
        // Perfect copying limit.
        assert!((average_fidelity(1e-12) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn average_fidelity_matches_trapezoid_quadrature() {
        for lambda in [0.05, 1.0 / 6.0, 0.3, 0.45] {
            let n = 10001;
            let h = 1.0 / (n - 1) as f64;
            let mut sum = 0.5 * (fidelity(0.0, lambda) + fidelity(1.0, lambda));
            for i in 1..n - 1 {
                sum += fidelity(i as f64 * h, lambda);
            }
            let integral = sum * h;
            assert!(
                (integral - average_fidelity(lambda)).abs() < 1e-8,
                "lambda = {lambda}"
            );
        }
    }

    #[test]
    fn dominance_report_roots() {
        let report = dominance_range();
        let (lo, hi) = report.accepted.bounds().unwrap();
        assert!(lo.abs() < 1e-15);
        assert!((hi - 1.0 / 6.0).abs() < 1e-12);
        assert!((report.rejected_root - 41.0 / 42.0).abs() < 1e-12);
        assert!(average_fidelity(0.15) > report.universal_average);
        assert!(average_fidelity(0.18) < report.universal_average);
    }

    #[test]
    fn table2_shape_and_feasibility() {
        let rows = table2();
        assert_eq!(rows.len(), 9);
        for row in &rows {
            assert_eq!(row.feasible, row.lambda > 1.0 / 6.0);
            // In every tabulated row the common interval equals I1.
            let (blo, bhi) = row.broadcastable.bounds().unwrap();
            let (nlo, nhi) = row.nonlocal_inseparable.bounds().unwrap();
            assert!((blo - nlo).abs() < 1e-15 && (bhi - nhi).abs() < 1e-15);
        }
        // Spot checks against printed values.
        let (lo, hi) = rows[2].nonlocal_inseparable.bounds().unwrap();
        assert!((round5(lo) - 0.00555).abs() <= 1e-4);
        assert!((round5(hi) - 0.99444).abs() <= 1e-4);
        let (lo, hi) = rows[5].local_separable.bounds().unwrap();
        assert!((round5(lo) - 0.04017).abs() <= 1e-4);
        assert!((round5(hi) - 0.95982).abs() <= 1e-4);
    }
}
