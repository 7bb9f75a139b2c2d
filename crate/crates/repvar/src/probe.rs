//! Numerical verification of the dimension claims: points sampled on the
//! asserted 4-dimensional components should probe at local dimension 4, and
//! generic points away from the central locus at local dimension 3.
//!
//! The probe evaluates the defining system F(m1, m2) =
//! (det m1 − 1, det m2 − 1, entries of m1^p − m2^t) : C^8 → C^6, forms its
//! Jacobian analytically, and estimates the local dimension as 8 minus the
//! complex rank. Rank decisions use a relative singular-value threshold
//! plus an explicit rank-gap quality ratio; an ambiguous spectrum yields an
//! inconclusive report rather than a wrong dimension.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::counting::{four_dim_components, FourDimComponent, GroupParams};
use crate::omega::{sample_point, solve_power, FiberSolutions};
use crate::sl2::{random_sl2, Mat2C, Sign, Tolerances};

type C64 = Complex64;

/// A candidate representation: images of the two generators.
#[derive(Clone, Copy, Debug)]
pub struct RepPoint {
    pub m1: Mat2C,
    pub m2: Mat2C,
}

impl RepPoint {
    pub fn new(m1: Mat2C, m2: Mat2C) -> Self {
        Self { m1, m2 }
    }

    /// The 16 real coordinates backing the 8 complex matrix entries,
    /// interleaved as (re, im) in row-major entry order, m1 first.
    fn coordinates(&self) -> [f64; 16] {
        let mut out = [0.0; 16];
        for (i, z) in self
            .m1
            .entries()
            .iter()
            .chain(self.m2.entries().iter())
            .enumerate()
        {
            out[2 * i] = z.re;
            out[2 * i + 1] = z.im;
        }
        out
    }

    fn from_coordinates(coords: &[f64; 16]) -> Self {
        let entry = |i: usize| C64::new(coords[2 * i], coords[2 * i + 1]);
        Self {
            m1: Mat2C::new(entry(0), entry(1), entry(2), entry(3)),
            m2: Mat2C::new(entry(4), entry(5), entry(6), entry(7)),
        }
    }
}

/// Knobs of the numerical probe.
#[derive(Clone, Copy, Debug)]
pub struct ProbeSettings {
    /// Relative singular-value cutoff: keep σ ≥ rank_rel_tol · σ_max.
    pub rank_rel_tol: f64,
    /// Required ratio (smallest kept σ) / (largest dropped σ) for a report
    /// to count as conclusive.
    pub gap_threshold: f64,
    /// Residual bound for a point to be accepted as on-variety.
    pub on_variety_tol: f64,
    /// Step for the central-difference Jacobian check.
    pub fd_step: f64,
    /// Redraws allowed per sample when a probe comes back inconclusive.
    pub retries: u32,
    /// Generic sampling rejects m1 whenever tr(m1^p) is this close to ±2
    /// (covers both the near-central and near-parabolic power cases).
    pub trace_reject_band: f64,
}

impl Default for ProbeSettings {
    fn default() -> Self {
        Self {
            rank_rel_tol: 1e-8,
            gap_threshold: 1e4,
            on_variety_tol: 1e-6,
            fd_step: 1e-6,
            retries: 3,
            trace_reject_band: 1e-6,
        }
    }
}

#[derive(Debug, Error)]
pub enum ProbeError {
    #[error(
        "point is off-variety: relator residual {relator:.3e}, det residuals \
         {det1:.3e} / {det2:.3e} exceed tolerance {tol:.3e}"
    )]
    OffVariety {
        relator: f64,
        det1: f64,
        det2: f64,
        tol: f64,
    },
}

/// What a conclusive spectrum said about the point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Local dimension 4: the point sits on an asserted 4-dim component.
    OnFourDimComponent,
    /// Local dimension 3: the generic value away from the central locus.
    OffCentralGeneric,
    /// Ambiguous rank gap, odd real rank, or an estimate matching neither
    /// expected value.
    Inconclusive,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::OnFourDimComponent => "on-4dim-component",
            Classification::OffCentralGeneric => "off-central-generic",
            Classification::Inconclusive => "inconclusive",
        }
    }
}

/// Everything the probe measured at one point.
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub point: RepPoint,
    pub relator_residual: f64,
    pub det_residuals: (f64, f64),
    /// Complex rank of the 6x8 Jacobian (half the real embedded rank).
    pub jacobian_rank: u32,
    /// 8 − jacobian_rank, a complex dimension.
    pub local_dim_estimate: u32,
    /// Singular values of the real 12x16 embedding, descending.
    pub singular_values: Vec<f64>,
    /// (smallest kept σ) / (largest dropped σ); infinite when nothing
    /// was dropped.
    pub rank_gap: f64,
    /// Whether the spectrum supports any rank decision at all.
    pub conclusive: bool,
    pub classification: Classification,
}

/// n-th power by repeated multiplication: the honest polynomial map on all
/// 2x2 matrices. The probe differentiates and finite-differences the system
/// off the unit-det surface, where the det-1 trace-recursion shortcut is a
/// different function, so everything here sticks to the product form.
fn matrix_power(a: &Mat2C, n: u32) -> Mat2C {
    let mut acc = Mat2C::identity();
    for _ in 0..n {
        acc = acc * *a;
    }
    acc
}

/// Residuals of the defining system at a point:
/// (‖m1^p − m2^t‖_F, |det m1 − 1|, |det m2 − 1|).
pub fn residual(point: &RepPoint, params: GroupParams) -> (f64, f64, f64) {
    let relator = matrix_power(&point.m1, params.p()).dist(&matrix_power(&point.m2, params.t()));
    let one = C64::new(1.0, 0.0);
    (
        relator,
        (point.m1.det() - one).norm(),
        (point.m2.det() - one).norm(),
    )
}

/// Analytic Jacobian of the defining system: 6 complex rows (both
/// determinant conditions, then the four entries of m1^p − m2^t) by 8
/// complex columns (the entries of m1, then of m2).
///
/// The power-map differential is d(A^n)\[H\] = Σ_{i=0}^{n−1} A^i · H · A^{n−1−i},
/// evaluated per coordinate direction.
pub fn jacobian(point: &RepPoint, params: GroupParams) -> [[C64; 8]; 6] {
    let zero = C64::new(0.0, 0.0);
    let mut rows = [[zero; 8]; 6];

    // d(det M) in the entry directions (a, b, c, d) is (d, −c, −b, a)
    let m1 = &point.m1;
    let m2 = &point.m2;
    rows[0][0] = m1.d;
    rows[0][1] = -m1.c;
    rows[0][2] = -m1.b;
    rows[0][3] = m1.a;
    rows[1][4] = m2.d;
    rows[1][5] = -m2.c;
    rows[1][6] = -m2.b;
    rows[1][7] = m2.a;

    let left = power_differentials(m1, params.p());
    let right = power_differentials(m2, params.t());
    for k in 0..4 {
        let dl = left[k].entries();
        let dr = right[k].entries();
        for row in 0..4 {
            rows[2 + row][k] = dl[row];
            rows[2 + row][4 + k] = -dr[row];
        }
    }
    rows
}

/// d(A^n) applied to each of the four unit entry directions.
fn power_differentials(a: &Mat2C, n: u32) -> [Mat2C; 4] {
    let powers: Vec<Mat2C> = (0..n).map(|i| matrix_power(a, i)).collect();
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let units = [
        Mat2C::new(one, zero, zero, zero),
        Mat2C::new(zero, one, zero, zero),
        Mat2C::new(zero, zero, one, zero),
        Mat2C::new(zero, zero, zero, one),
    ];
    units.map(|unit| {
        let mut acc = Mat2C::new(zero, zero, zero, zero);
        for i in 0..n as usize {
            let term = (powers[i] * unit) * powers[n as usize - 1 - i];
            acc = acc + term;
        }
        acc
    })
}

/// The Jacobian as a real 12x16 matrix: each complex entry x + iy becomes
/// the block [[x, −y], [y, x]], so complex rank r shows up as real rank 2r.
pub fn jacobian_real_embedding(point: &RepPoint, params: GroupParams) -> DMatrix<f64> {
    let rows = jacobian(point, params);
    let mut out = DMatrix::zeros(12, 16);
    for (r, row) in rows.iter().enumerate() {
        for (c, z) in row.iter().enumerate() {
            out[(2 * r, 2 * c)] = z.re;
            out[(2 * r, 2 * c + 1)] = -z.im;
            out[(2 * r + 1, 2 * c)] = z.im;
            out[(2 * r + 1, 2 * c + 1)] = z.re;
        }
    }
    out
}

/// The defining system as a real 12-vector, for the finite-difference check.
fn system_real(point: &RepPoint, params: GroupParams) -> [f64; 12] {
    let one = C64::new(1.0, 0.0);
    let gap = matrix_power(&point.m1, params.p()) - matrix_power(&point.m2, params.t());
    let values = [
        point.m1.det() - one,
        point.m2.det() - one,
        gap.a,
        gap.b,
        gap.c,
        gap.d,
    ];
    let mut out = [0.0; 12];
    for (i, z) in values.iter().enumerate() {
        out[2 * i] = z.re;
        out[2 * i + 1] = z.im;
    }
    out
}

/// Central-difference Jacobian over the 16 real coordinates. Independent of
/// the analytic path: it only evaluates the system itself.
pub fn jacobian_finite_difference(
    point: &RepPoint,
    params: GroupParams,
    step: f64,
) -> DMatrix<f64> {
    let base = point.coordinates();
    let mut out = DMatrix::zeros(12, 16);
    for col in 0..16 {
        let mut fwd = base;
        let mut bwd = base;
        fwd[col] += step;
        bwd[col] -= step;
        let f_fwd = system_real(&RepPoint::from_coordinates(&fwd), params);
        let f_bwd = system_real(&RepPoint::from_coordinates(&bwd), params);
        for row in 0..12 {
            out[(row, col)] = (f_fwd[row] - f_bwd[row]) / (2.0 * step);
        }
    }
    out
}

/// Probe the local dimension at an on-variety point.
///
/// Singular values of the real embedding are cut at
/// rank_rel_tol · σ_max; the complex rank is half the real rank and the
/// estimate is 8 minus that. A report is conclusive only when the real rank
/// is even and the spectrum shows a clear gap at the cut.
pub fn local_dimension(
    point: &RepPoint,
    params: GroupParams,
    settings: &ProbeSettings,
) -> Result<ProbeReport, ProbeError> {
    let (relator, det1, det2) = residual(point, params);
    let tol = settings.on_variety_tol;
    if relator > tol || det1 > tol || det2 > tol {
        return Err(ProbeError::OffVariety {
            relator,
            det1,
            det2,
            tol,
        });
    }

    let embedded = jacobian_real_embedding(point, params);
    let mut sv: Vec<f64> = embedded
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    sv.sort_unstable_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));

    let sigma_max = sv[0];
    let cutoff = settings.rank_rel_tol * sigma_max;
    let real_rank = sv.iter().filter(|&&s| s >= cutoff).count();
    let rank_gap = if real_rank == 0 {
        0.0
    } else if real_rank == sv.len() || sv[real_rank] == 0.0 {
        f64::INFINITY
    } else {
        sv[real_rank - 1] / sv[real_rank]
    };

    let conclusive = real_rank % 2 == 0 && rank_gap >= settings.gap_threshold && real_rank > 0;
    let jacobian_rank = (real_rank / 2) as u32;
    let local_dim_estimate = 8 - jacobian_rank;
    let classification = if !conclusive {
        Classification::Inconclusive
    } else {
        match local_dim_estimate {
            4 => Classification::OnFourDimComponent,
            3 => Classification::OffCentralGeneric,
            _ => Classification::Inconclusive,
        }
    };

    Ok(ProbeReport {
        point: *point,
        relator_residual: relator,
        det_residuals: (det1, det2),
        jacobian_rank,
        local_dim_estimate,
        singular_values: sv,
        rank_gap,
        conclusive,
        classification,
    })
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministic per-(component, sample, retry, lane) seed stream, so
/// concurrent execution orders cannot change any draw.
pub fn derive_seed(base: u64, lanes: &[u64]) -> u64 {
    let mut h = splitmix64(base);
    for &lane in lanes {
        h = splitmix64(h ^ splitmix64(lane.wrapping_add(0xa5a5_a5a5_a5a5_a5a5)));
    }
    h
}

/// Probe results for one asserted 4-dimensional component.
#[derive(Clone, Debug)]
pub struct ComponentCheck {
    pub component: FourDimComponent,
    pub samples: u32,
    pub conclusive: u32,
    /// Local-dimension estimates of the conclusive probes.
    pub estimates: Vec<u32>,
}

/// Sweep over every asserted 4-dimensional component: sample points on each,
/// probe, and demand that every conclusive estimate is 4.
#[derive(Clone, Debug)]
pub struct ComponentSweep {
    pub params: GroupParams,
    pub expected_components: u64,
    pub per_component: Vec<ComponentCheck>,
    pub total_samples: u32,
    pub total_conclusive: u32,
    pub all_conclusive_dim4: bool,
    pub pass: bool,
}

impl ComponentSweep {
    pub fn conclusive_rate(&self) -> f64 {
        if self.total_samples == 0 {
            0.0
        } else {
            self.total_conclusive as f64 / self.total_samples as f64
        }
    }
}

/// Sample each asserted 4-dimensional component and probe the local
/// dimension there. Passes when every conclusive probe reports 4 and at
/// least 80% of all probes are conclusive. Inconclusive probes are redrawn
/// with fresh derived seeds up to the configured retry count.
pub fn verify_component_dimensions(
    params: GroupParams,
    samples_per_component: u32,
    seed: u64,
    settings: &ProbeSettings,
) -> ComponentSweep {
    let components = four_dim_components(params);
    let mut per_component = Vec::with_capacity(components.len());
    let mut total_conclusive = 0u32;
    let mut all_dim4 = true;

    for (ci, component) in components.iter().enumerate() {
        let mut conclusive = 0u32;
        let mut estimates = Vec::new();
        for si in 0..samples_per_component {
            let mut last: Option<ProbeReport> = None;
            for retry in 0..=settings.retries {
                let lanes = [ci as u64, si as u64, retry as u64];
                let m1 = sample_point(
                    &component.left,
                    derive_seed(seed, &[lanes[0], lanes[1], lanes[2], 0]),
                );
                let m2 = sample_point(
                    &component.right,
                    derive_seed(seed, &[lanes[0], lanes[1], lanes[2], 1]),
                );
                let point = RepPoint::new(m1, m2);
                let report = local_dimension(&point, params, settings)
                    .expect("component samples satisfy the defining equations");
                let done = report.conclusive;
                last = Some(report);
                if done {
                    break;
                }
            }
            let report = last.expect("at least one probe attempt ran");
            if report.conclusive {
                conclusive += 1;
                estimates.push(report.local_dim_estimate);
                if report.local_dim_estimate != 4 {
                    all_dim4 = false;
                }
            }
        }
        total_conclusive += conclusive;
        per_component.push(ComponentCheck {
            component: *component,
            samples: samples_per_component,
            conclusive,
            estimates,
        });
    }

    let total_samples = samples_per_component * components.len() as u32;
    let rate_ok = total_conclusive as f64 >= 0.8 * total_samples as f64;
    ComponentSweep {
        params,
        expected_components: components.len() as u64,
        per_component,
        total_samples,
        total_conclusive,
        all_conclusive_dim4: all_dim4,
        pass: all_dim4 && rate_ok && total_samples > 0,
    }
}

/// Sweep of generic points away from the central locus: random m1 with
/// m1^p well clear of ±I and of trace ±2, paired with every solution of
/// x^t = m1^p.
#[derive(Clone, Debug)]
pub struct GenericSweep {
    pub params: GroupParams,
    pub requested_samples: u32,
    /// One probe per fiber solution of each accepted draw.
    pub probes: u32,
    pub conclusive: u32,
    pub all_conclusive_dim3: bool,
    /// Distinct fiber sizes observed, ascending.
    pub observed_fiber_sizes: Vec<usize>,
    pub fiber_sizes_within_bound: bool,
    pub rejected_draws: u32,
    pub pass: bool,
}

impl GenericSweep {
    pub fn conclusive_rate(&self) -> f64 {
        if self.probes == 0 {
            0.0
        } else {
            self.conclusive as f64 / self.probes as f64
        }
    }
}

/// Draw generic off-locus points and check they probe at local dimension 3,
/// and that every fiber of the power map there is finite with at most t + 1
/// points. Draws whose p-th power lands near ±I or near trace ±2 are
/// rejected outright, so the solver below only ever sees diagonalizable
/// bases.
pub fn verify_generic_dimension(
    params: GroupParams,
    samples: u32,
    seed: u64,
    settings: &ProbeSettings,
) -> GenericSweep {
    let tol = Tolerances::default();
    let two = C64::new(2.0, 0.0);
    let mut probes = 0u32;
    let mut conclusive = 0u32;
    let mut all_dim3 = true;
    let mut sizes = Vec::new();
    let mut sizes_ok = true;
    let mut rejected = 0u32;

    for si in 0..samples {
        let mut attempt = 0u64;
        let (m1, fiber) = loop {
            let m1 = random_sl2(derive_seed(seed, &[si as u64, attempt]), 1.0);
            let mp = matrix_power(&m1, params.p());
            let tau = mp.trace();
            let near_central = mp.dist(&Sign::Plus.center()) <= settings.trace_reject_band
                || mp.dist(&Sign::Minus.center()) <= settings.trace_reject_band;
            let near_parabolic_trace = (tau - two).norm() <= settings.trace_reject_band
                || (tau + two).norm() <= settings.trace_reject_band;
            if !near_central && !near_parabolic_trace {
                let fiber = solve_power(&mp, params.t(), &tol)
                    .expect("trace-rejected bases are cleanly diagonalizable");
                break (m1, fiber);
            }
            rejected += 1;
            attempt += 1;
            assert!(
                attempt < 10_000,
                "rejection loop failed to find a generic draw"
            );
        };

        let FiberSolutions::Finite(solutions) = &fiber.solutions else {
            panic!("fiber over a non-central base must be finite");
        };
        if !sizes.contains(&solutions.len()) {
            sizes.push(solutions.len());
        }
        if solutions.len() > params.t() as usize + 1 {
            sizes_ok = false;
        }
        for x in solutions {
            let point = RepPoint::new(m1, *x);
            let report = local_dimension(&point, params, settings)
                .expect("fiber solutions satisfy the defining equations");
            probes += 1;
            if report.conclusive {
                conclusive += 1;
                if report.local_dim_estimate != 3 {
                    all_dim3 = false;
                }
            }
        }
    }

    sizes.sort_unstable();
    let rate_ok = conclusive as f64 >= 0.8 * probes as f64;
    GenericSweep {
        params,
        requested_samples: samples,
        probes,
        conclusive,
        all_conclusive_dim3: all_dim3,
        observed_fiber_sizes: sizes,
        fiber_sizes_within_bound: sizes_ok,
        rejected_draws: rejected,
        pass: all_dim3 && sizes_ok && rate_ok && probes > 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u32, t: u32) -> GroupParams {
        GroupParams::new(p, t).unwrap()
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// An on-variety point away from the central locus: random m1 with a
    /// generic power, m2 one fiber solution.
    fn generic_point(p: u32, t: u32, seed: u64) -> RepPoint {
        let tol = Tolerances::default();
        let mut attempt = 0u64;
        loop {
            let m1 = random_sl2(seed.wrapping_add(attempt.wrapping_mul(7919)), 1.0);
            let mp = matrix_power(&m1, p);
            let tau = mp.trace();
            if (tau - c(2.0, 0.0)).norm() > 1e-3 && (tau + c(2.0, 0.0)).norm() > 1e-3 {
                let fiber = solve_power(&mp, t, &tol).unwrap();
                if let FiberSolutions::Finite(xs) = fiber.solutions {
                    return RepPoint::new(m1, xs[(seed % t as u64) as usize]);
                }
            }
            attempt += 1;
        }
    }

    #[test]
    fn residual_vanishes_at_the_trivial_representation() {
        let point = RepPoint::new(Mat2C::identity(), Mat2C::identity());
        let (rel, d1, d2) = residual(&point, params(3, 4));
        assert_eq!((rel, d1, d2), (0.0, 0.0, 0.0));
    }

    #[test]
    fn residual_of_solver_output_is_small() {
        for seed in 0..20u64 {
            let point = generic_point(2, 3, seed);
            let (rel, d1, d2) = residual(&point, params(2, 3));
            assert!(rel <= 1e-8, "relator residual {rel:.3e} at seed {seed}");
            assert!(d1 <= 1e-10 && d2 <= 1e-10);
        }
    }

    #[test]
    fn residual_of_random_pairs_is_large() {
        let mut large = 0;
        for seed in 0..50u64 {
            let point = RepPoint::new(random_sl2(seed, 1.0), random_sl2(seed + 5000, 1.0));
            let (rel, _, _) = residual(&point, params(2, 3));
            if rel > 0.1 {
                large += 1;
            }
        }
        assert!(
            large >= 49,
            "only {large}/50 random pairs had a large residual"
        );
    }

    #[test]
    fn det_differential_at_identity_is_the_trace() {
        let point = RepPoint::new(Mat2C::identity(), Mat2C::identity());
        let rows = jacobian(&point, params(2, 2));
        // row 0 against direction H picks out tr(H): coefficients (1, 0, 0, 1)
        assert_eq!(
            rows[0][..4],
            [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]
        );
        assert_eq!(
            rows[1][4..],
            [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]
        );
    }

    #[test]
    fn power_differential_at_exponent_one_is_the_identity_map() {
        let a = random_sl2(11, 1.0);
        let diffs = power_differentials(&a, 1);
        let units = [
            Mat2C::from_real(1.0, 0.0, 0.0, 0.0),
            Mat2C::from_real(0.0, 1.0, 0.0, 0.0),
            Mat2C::from_real(0.0, 0.0, 1.0, 0.0),
            Mat2C::from_real(0.0, 0.0, 0.0, 1.0),
        ];
        for (diff, unit) in diffs.iter().zip(units.iter()) {
            assert!(diff.dist(unit) == 0.0);
        }
    }

    #[test]
    fn jacobian_matches_finite_differences_on_generic_points() {
        let settings = ProbeSettings::default();
        for (p, t) in [(2, 3), (3, 3), (4, 6), (3, 4)] {
            for seed in 0..25u64 {
                let point = generic_point(p, t, seed);
                let gp = params(p, t);
                let analytic = jacobian_real_embedding(&point, gp);
                let fd = jacobian_finite_difference(&point, gp, settings.fd_step);
                let rel = (&analytic - &fd).norm() / analytic.norm();
                assert!(
                    rel <= 1e-5,
                    "fd mismatch {rel:.3e} at (p, t) = ({p}, {t}), seed {seed}"
                );
            }
        }
    }

    #[test]
    fn local_dimension_rejects_off_variety_points() {
        let settings = ProbeSettings::default();
        let point = RepPoint::new(random_sl2(1, 1.0), random_sl2(2, 1.0));
        match local_dimension(&point, params(2, 3), &settings) {
            Err(ProbeError::OffVariety { .. }) => {}
            other => panic!("expected OffVariety, got {other:?}"),
        }
    }

    #[test]
    fn component_samples_probe_at_dimension_four() {
        let settings = ProbeSettings::default();
        for (p, t) in [(2u32, 2u32), (2, 3), (3, 3)] {
            let gp = params(p, t);
            for (ci, component) in four_dim_components(gp).iter().enumerate() {
                for seed in 0..5u64 {
                    let m1 = sample_point(&component.left, derive_seed(seed, &[ci as u64, 0]));
                    let m2 = sample_point(&component.right, derive_seed(seed, &[ci as u64, 1]));
                    let report = local_dimension(&RepPoint::new(m1, m2), gp, &settings).unwrap();
                    assert!(report.conclusive, "inconclusive at ({p}, {t}), seed {seed}");
                    assert_eq!(
                        report.local_dim_estimate, 4,
                        "estimate {} at ({p}, {t}) component {ci}, seed {seed}",
                        report.local_dim_estimate
                    );
                    assert_eq!(report.classification, Classification::OnFourDimComponent);
                }
            }
        }
    }

    #[test]
    fn generic_points_probe_at_dimension_three() {
        let settings = ProbeSettings::default();
        for (p, t) in [(2u32, 3u32), (3, 3), (5, 4)] {
            let gp = params(p, t);
            for seed in 0..10u64 {
                let point = generic_point(p, t, seed);
                let report = local_dimension(&point, gp, &settings).unwrap();
                assert!(report.conclusive, "inconclusive at ({p}, {t}), seed {seed}");
                assert_eq!(
                    report.local_dim_estimate, 3,
                    "estimate {} at ({p}, {t}), seed {seed}",
                    report.local_dim_estimate
                );
                assert_eq!(report.classification, Classification::OffCentralGeneric);
            }
        }
    }

    #[test]
    fn probe_report_fields_are_internally_consistent() {
        let settings = ProbeSettings::default();
        let point = generic_point(3, 4, 7);
        let report = local_dimension(&point, params(3, 4), &settings).unwrap();
        assert_eq!(report.local_dim_estimate, 8 - report.jacobian_rank);
        assert!(report.jacobian_rank <= 6);
        assert_eq!(report.singular_values.len(), 12);
        for pair in report.singular_values.windows(2) {
            assert!(pair[0] >= pair[1], "singular values must be descending");
        }
    }

    #[test]
    fn trivial_representation_probe_measures_the_tangent_space() {
        // (I, I) with p = t = 2 is a singular isolated point, not a smooth
        // one, and the probe reports the Zariski tangent dimension there.
        // By hand: the relator rows are [2E_k | −2E_k] (rank 4) and each det
        // row is the sum of the two diagonal relator rows plus the other det
        // row, so exactly one det row is independent: rank 5, estimate 3.
        // No dimension claim attaches to such points; the verification
        // sweeps only ever sample orbit products and generic draws.
        let settings = ProbeSettings::default();
        let point = RepPoint::new(Mat2C::identity(), Mat2C::identity());
        let report = local_dimension(&point, params(2, 2), &settings).unwrap();
        assert_eq!(report.jacobian_rank, 5);
        assert_eq!(report.local_dim_estimate, 3);
    }

    #[test]
    fn component_sweep_passes_on_small_cases() {
        let settings = ProbeSettings::default();
        for ((p, t), expected) in [((2u32, 3u32), 1u64), ((3, 3), 2), ((4, 6), 8)] {
            let sweep = verify_component_dimensions(params(p, t), 5, 7, &settings);
            assert_eq!(sweep.expected_components, expected);
            assert!(sweep.pass, "component sweep failed at ({p}, {t})");
            assert!(sweep.conclusive_rate() >= 0.8);
        }
    }

    #[test]
    fn generic_sweep_passes_and_sees_full_fibers() {
        let settings = ProbeSettings::default();
        for (p, t) in [(2u32, 3u32), (5, 4)] {
            let sweep = verify_generic_dimension(params(p, t), 10, 11, &settings);
            assert!(sweep.pass, "generic sweep failed at ({p}, {t})");
            assert_eq!(
                sweep.observed_fiber_sizes,
                vec![t as usize],
                "diagonalizable bases must have exactly t fiber points"
            );
            assert_eq!(sweep.probes, 10 * t);
        }
    }

    #[test]
    fn every_parameter_pair_up_to_six_probes_correctly() {
        let settings = ProbeSettings::default();
        for p in 2..=6u32 {
            for t in 2..=6u32 {
                let gp = params(p, t);
                let comp = verify_component_dimensions(gp, 4, 31, &settings);
                assert!(comp.pass, "component sweep failed at ({p}, {t})");
                let gen = verify_generic_dimension(gp, 4, 31, &settings);
                assert!(gen.pass, "generic sweep failed at ({p}, {t})");
            }
        }
    }

    #[test]
    fn sweeps_are_deterministic_in_the_seed() {
        let settings = ProbeSettings::default();
        let a = verify_component_dimensions(params(3, 3), 4, 42, &settings);
        let b = verify_component_dimensions(params(3, 3), 4, 42, &settings);
        assert_eq!(a.total_conclusive, b.total_conclusive);
        for (x, y) in a.per_component.iter().zip(b.per_component.iter()) {
            assert_eq!(x.estimates, y.estimates);
        }
        let g1 = verify_generic_dimension(params(3, 4), 6, 42, &settings);
        let g2 = verify_generic_dimension(params(3, 4), 6, 42, &settings);
        assert_eq!(g1.conclusive, g2.conclusive);
        assert_eq!(g1.rejected_draws, g2.rejected_draws);
    }

    #[test]
    fn derive_seed_separates_lanes() {
        let base = 7;
        assert_ne!(
            derive_seed(base, &[0, 0, 0, 0]),
            derive_seed(base, &[0, 0, 0, 1])
        );
        assert_ne!(derive_seed(base, &[1, 2]), derive_seed(base, &[2, 1]));
        assert_eq!(derive_seed(base, &[3, 4]), derive_seed(base, &[3, 4]));
    }
}
