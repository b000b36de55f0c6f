//! Mechanical checks of the centroid behaviour of iterated midpoint polygons.
//!
//! Hexagon checks run on the exact path and use no tolerance. The `m = 5` and
//! `m ≥ 7` counterexamples live in floating point and are compared against a
//! trigonometric closed form.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::error::GeometryError;
use crate::exact_poly::{self, PlanePoint, Polygon};
use crate::rational::Rational;
use crate::spectral::{self, FloatPolygon, ModeVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("expected a {expected}-gon, got {got} vertices")]
    WrongSize { expected: usize, got: usize },
    #[error("fewer than two defined centroids; no line to check")]
    InsufficientData,
    #[error("no counterexample exists for m = {0}; need m = 5 or m >= 7")]
    UnsupportedM(usize),
    #[error("iterate {iterate} has zero area")]
    AreaZero { iterate: usize },
    #[error("need at least {min} steps, got {got}")]
    TooFewSteps { min: usize, got: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl From<GeometryError> for VerifyError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::WrongSize { expected, got } => VerifyError::WrongSize { expected, got },
            GeometryError::AreaZero => VerifyError::AreaZero { iterate: 0 },
            GeometryError::EmptyPolygon => VerifyError::WrongSize { expected: 1, got: 0 },
        }
    }
}

fn require_size(p: &Polygon, m: usize) -> Result<(), VerifyError> {
    if p.len() != m {
        return Err(VerifyError::WrongSize { expected: m, got: p.len() });
    }
    Ok(())
}

/// Outcome of [`exact_colinear`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Colinearity {
    pub colinear: bool,
    /// First index whose point leaves the line, when not colinear.
    pub violation: Option<usize>,
}

/// Decides whether all points lie on one line using exact cross products.
/// The line runs through the first point and the first point distinct from it.
pub fn exact_colinear(points: &[PlanePoint]) -> Colinearity {
    let ok = Colinearity { colinear: true, violation: None };
    let Some(first) = points.first() else {
        return ok;
    };
    let Some(offset) = points.iter().position(|p| p != first) else {
        return ok;
    };
    let direction = &points[offset] - first;
    for (i, p) in points.iter().enumerate().skip(offset + 1) {
        if !direction.cross(&(p - first)).is_zero() {
            return Colinearity { colinear: false, violation: Some(i) };
        }
    }
    ok
}

/// `G_n = centroid(Mⁿp)` for `n = 0..=steps`, `None` where the iterate has zero area.
pub fn centroid_sequence(p: &Polygon, steps: usize) -> Vec<Option<PlanePoint>> {
    exact_poly::iterate(p, steps).iter().map(|q| exact_poly::centroid(q).ok()).collect()
}

/// Exact colinearity verdict for `G_1 … G_N` of a hexagon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColinearityReport {
    /// `G_0 … G_N`; `null` marks a zero-area iterate.
    pub centroids: Vec<Option<PlanePoint>>,
    pub line_anchor: PlanePoint,
    /// Zero only when every defined centroid coincides.
    pub line_direction: PlanePoint,
    pub all_colinear: bool,
    pub first_violation: Option<usize>,
    /// `None` when `G_0` itself is undefined.
    pub g0_on_line: Option<bool>,
    pub limit_point: PlanePoint,
    pub limit_on_line: bool,
}

impl ColinearityReport {
    /// Exact membership test against the fitted line.
    pub fn contains(&self, point: &PlanePoint) -> bool {
        on_line(&self.line_anchor, &self.line_direction, point)
    }

    pub fn undefined_count(&self) -> usize {
        self.centroids.iter().filter(|g| g.is_none()).count()
    }

    /// Both the centroid line and the limit point check out.
    pub fn passed(&self) -> bool {
        self.all_colinear && self.limit_on_line
    }
}

fn on_line(anchor: &PlanePoint, direction: &PlanePoint, point: &PlanePoint) -> bool {
    if direction.is_origin() {
        point == anchor
    } else {
        direction.cross(&(point - anchor)).is_zero()
    }
}

/// Checks that the centroids `G_1 … G_N` of the iterated hexagon `p` lie on one
/// line which also contains the vertex centroid.
pub fn verify_hexagon_theorem(p: &Polygon, steps: usize) -> Result<ColinearityReport, VerifyError> {
    require_size(p, 6)?;
    if steps < 3 {
        return Err(VerifyError::TooFewSteps { min: 3, got: steps });
    }
    let centroids = centroid_sequence(p, steps);
    let mut defined = centroids.iter().enumerate().skip(1).filter_map(|(n, g)| g.as_ref().map(|g| (n, g)));

    let (_, anchor) = defined.next().ok_or(VerifyError::InsufficientData)?;
    let anchor = anchor.clone();
    let direction = defined.find(|(_, g)| **g != anchor).map(|(_, g)| g - &anchor).unwrap_or_default();

    let first_violation = centroids
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, g)| g.as_ref().is_some_and(|g| !on_line(&anchor, &direction, g)))
        .map(|(n, _)| n);
    let g0_on_line = centroids[0].as_ref().map(|g| on_line(&anchor, &direction, g));
    let limit_point = exact_poly::vertex_centroid(p);
    let limit_on_line = on_line(&anchor, &direction, &limit_point);

    Ok(ColinearityReport {
        centroids,
        line_anchor: anchor,
        line_direction: direction,
        all_colinear: first_violation.is_none(),
        first_violation,
        g0_on_line,
        limit_point,
        limit_on_line,
    })
}

/// Exact check of `Z(Mv) = (3/8) Z(v)` after removing modes 0 and 3.
pub fn verify_z_scaling(p: &Polygon) -> Result<bool, VerifyError> {
    require_size(p, 6)?;
    let v = exact_poly::project_out_modes_0_3(p)?;
    Ok(z_scaling_holds(&v))
}

/// `Z(Mv) == (3/8) Z(v)` with no projection applied.
pub fn z_scaling_holds(v: &Polygon) -> bool {
    let three_eighths = Rational::new(3, 8).expect("non-zero");
    exact_poly::z_moment(&exact_poly::midpoint_map(v)) == exact_poly::z_moment(v).scale(&three_eighths)
}

/// Exact centroid invariance for triangles (`G_n = ξ₀` for all `n ≥ 0`) and
/// quadrilaterals (`G_n = G_1` for all `n ≥ 1`).
pub fn verify_small_m_invariance(p: &Polygon, steps: usize) -> Result<bool, VerifyError> {
    let m = p.len();
    if !(3..=4).contains(&m) {
        return Err(VerifyError::UnsupportedM(m));
    }
    let start = if m == 3 { 0 } else { 1 };
    let centroids = centroid_sequence(p, steps.max(start));
    let mut required = Vec::with_capacity(centroids.len());
    for (n, g) in centroids.into_iter().enumerate().skip(start) {
        required.push(g.ok_or(VerifyError::AreaZero { iterate: n })?);
    }
    let reference = if m == 3 { exact_poly::vertex_centroid(p) } else { required[0].clone() };
    Ok(required.iter().all(|g| *g == reference))
}

/// Modes of `v_* = i·e⁽¹⁾ − e⁽²⁾ + e⁽³⁾`.
pub fn counterexample_modes(m: usize) -> Result<ModeVector, VerifyError> {
    if m < 5 || m == 6 {
        return Err(VerifyError::UnsupportedM(m));
    }
    let mut xs = vec![Complex64::new(0.0, 0.0); m];
    xs[1] = Complex64::new(0.0, 1.0);
    xs[2] = Complex64::new(-1.0, 0.0);
    xs[3] = Complex64::new(1.0, 0.0);
    Ok(ModeVector::new(xs).expect("m >= 5"))
}

/// The `m`-gon `v_*` with vertex `k` at `i·ω^k − ω^{2k} + ω^{3k}`.
pub fn build_counterexample(m: usize) -> Result<FloatPolygon, VerifyError> {
    if m < 5 || m == 6 {
        return Err(VerifyError::UnsupportedM(m));
    }
    let i = Complex64::new(0.0, 1.0);
    let vertices = (0..m)
        .map(|k| {
            i * spectral::root_of_unity(m, k) - spectral::root_of_unity(m, 2 * k) + spectral::root_of_unity(m, 3 * k)
        })
        .collect();
    Ok(FloatPolygon::new(vertices).expect("m >= 5"))
}

/// `ν/μ = 2cos(2π/m) − 1`, the per-step slope ratio of the counterexample.
pub fn expected_slope_ratio(m: usize) -> f64 {
    2.0 * (2.0 * PI / m as f64).cos() - 1.0
}

/// Initial slope of `Z(v_*)`: `θ = −Im(ω + ω² + 2ω³) / Im(ω + ω²)` for `m ≥ 7`,
/// and `θ̃ = −2 Im(ω + ω³) / Im(ω + ω²)` for `m = 5`.
pub fn expected_initial_slope(m: usize) -> f64 {
    let im = |j: usize| spectral::root_of_unity(m, j).im;
    let denom = im(1) + im(2);
    if m == 5 {
        -2.0 * (im(1) + im(3)) / denom
    } else {
        -(im(1) + im(2) + 2.0 * im(3)) / denom
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleReport {
    pub m: usize,
    pub steps: usize,
    pub tolerance: f64,
    /// `Im Z(Mⁿv_*) / Re Z(Mⁿv_*)` for `n = 0..=steps`.
    pub slopes: Vec<f64>,
    /// `s_{n+1} / s_n`.
    pub ratios: Vec<f64>,
    pub measured_ratio: f64,
    pub expected_ratio: f64,
    pub max_ratio_error: f64,
    pub ratios_match: bool,
    pub initial_slope: f64,
    pub expected_initial_slope: f64,
    pub initial_slope_matches: bool,
    pub lines_pairwise_distinct: bool,
    /// `|G(Mⁿv_*)|` from direct float iteration; only an overlay.
    pub centroid_distances: Vec<Option<f64>>,
    pub centroids_approach_origin: bool,
}

impl CounterexampleReport {
    /// No two centroids are colinear with the limit point.
    pub fn passed(&self) -> bool {
        self.ratios_match && self.initial_slope_matches && self.lines_pairwise_distinct
    }
}

fn rel_err(measured: f64, expected: f64) -> f64 {
    (measured - expected).abs() / expected.abs().max(f64::MIN_POSITIVE)
}

/// Slopes of `Z(Mⁿv_*)` through the origin, their ratios and distinctness.
pub fn verify_proposition(m: usize, steps: usize, tolerance: f64) -> Result<CounterexampleReport, VerifyError> {
    let modes = counterexample_modes(m)?;
    if steps < 3 {
        return Err(VerifyError::TooFewSteps { min: 3, got: steps });
    }
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(VerifyError::InvalidConfig(format!("tolerance must be positive, got {tolerance}")));
    }
    let slopes: Vec<f64> = (0..=steps)
        .map(|n| {
            let z = spectral::z_after_steps(&modes, n as u32);
            z.im / z.re
        })
        .collect();
    let ratios: Vec<f64> = slopes.windows(2).map(|w| w[1] / w[0]).collect();
    let expected_ratio = expected_slope_ratio(m);
    let max_ratio_error = ratios.iter().map(|r| rel_err(*r, expected_ratio)).fold(0.0, f64::max);

    let expected_initial = expected_initial_slope(m);
    let initial_slope = slopes[0];

    let lines_pairwise_distinct = slopes.iter().enumerate().all(|(i, a)| {
        a.is_finite() && slopes[i + 1..].iter().all(|b| (a - b).abs() > tolerance * a.abs().max(b.abs()))
    });

    let mut polygon = build_counterexample(m)?;
    let mut centroid_distances = Vec::with_capacity(steps + 1);
    for _ in 0..=steps {
        centroid_distances.push(polygon.centroid().map(|g| g.norm()));
        polygon = polygon.midpoint_map();
    }
    let centroids_approach_origin = match (centroid_distances.first(), centroid_distances.last()) {
        (Some(Some(a)), Some(Some(b))) => b < a,
        _ => false,
    };

    Ok(CounterexampleReport {
        m,
        steps,
        tolerance,
        measured_ratio: *ratios.last().expect("steps >= 3"),
        ratios_match: max_ratio_error <= tolerance,
        max_ratio_error,
        ratios,
        expected_ratio,
        initial_slope_matches: rel_err(initial_slope, expected_initial) <= tolerance,
        initial_slope,
        expected_initial_slope: expected_initial,
        lines_pairwise_distinct,
        slopes,
        centroid_distances,
        centroids_approach_origin,
    })
}

/// Parameters of a randomized hexagon campaign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: usize,
    /// Coordinates are drawn uniformly from `[-B, B]`.
    pub coordinate_bound: i64,
    pub steps: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self { seed: 42, trials: 1000, coordinate_bound: 9, steps: 12 }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if self.trials < 1 {
            return Err(VerifyError::InvalidConfig("trials must be at least 1".into()));
        }
        if self.coordinate_bound < 1 {
            return Err(VerifyError::InvalidConfig("coordinate bound must be at least 1".into()));
        }
        if self.steps < 3 {
            return Err(VerifyError::InvalidConfig("steps must be at least 3".into()));
        }
        Ok(())
    }
}

/// Independent ChaCha stream for one trial of a seeded campaign.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Random integer `m`-gon with coordinates in `[-bound, bound]`.
pub fn random_integer_polygon(rng: &mut impl Rng, m: usize, bound: i64) -> Polygon {
    let coords: Vec<(i64, i64)> =
        (0..m).map(|_| (rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))).collect();
    Polygon::from_ints(&coords).expect("m >= 1")
}

/// Everything measured on one hexagon.
#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub trial: usize,
    pub hexagon: Polygon,
    pub theorem: Result<ColinearityReport, VerifyError>,
    pub z_scaling: bool,
    pub undefined_centroids: usize,
}

pub fn evaluate_trial(trial: usize, hexagon: Polygon, steps: usize) -> TrialOutcome {
    let theorem = verify_hexagon_theorem(&hexagon, steps);
    let undefined_centroids = match &theorem {
        Ok(report) => report.undefined_count(),
        Err(_) => centroid_sequence(&hexagon, steps).iter().filter(|g| g.is_none()).count(),
    };
    let z_scaling = verify_z_scaling(&hexagon).unwrap_or(false);
    TrialOutcome { trial, hexagon, theorem, z_scaling, undefined_centroids }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailurePayload {
    pub trial: usize,
    pub reason: String,
    pub vertices: Vec<PlanePoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub config: FuzzConfig,
    pub colinear_passes: usize,
    pub colinear_failures: usize,
    pub limit_off_line: usize,
    pub insufficient_data: usize,
    pub undefined_centroids: usize,
    pub g0_on_line: usize,
    pub g0_off_line: usize,
    /// Lowest trial index whose `G_0` misses the line.
    pub first_g0_off_line: Option<usize>,
    pub z_scaling_passes: usize,
    pub z_scaling_failures: usize,
    pub first_failure: Option<FailurePayload>,
}

impl FuzzSummary {
    pub fn failures(&self) -> usize {
        self.colinear_failures + self.limit_off_line + self.z_scaling_failures
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    /// Reduces outcomes in trial order so the result is independent of how
    /// the trials were scheduled.
    pub fn from_outcomes(config: FuzzConfig, mut outcomes: Vec<TrialOutcome>) -> Self {
        outcomes.sort_by_key(|o| o.trial);
        let mut s = FuzzSummary {
            config,
            colinear_passes: 0,
            colinear_failures: 0,
            limit_off_line: 0,
            insufficient_data: 0,
            undefined_centroids: 0,
            g0_on_line: 0,
            g0_off_line: 0,
            first_g0_off_line: None,
            z_scaling_passes: 0,
            z_scaling_failures: 0,
            first_failure: None,
        };
        for o in outcomes {
            s.undefined_centroids += o.undefined_centroids;
            let mut reasons = Vec::new();
            match &o.theorem {
                Ok(r) => {
                    if r.all_colinear {
                        s.colinear_passes += 1;
                    } else {
                        s.colinear_failures += 1;
                        reasons.push(format!("centroid {} leaves the line", r.first_violation.unwrap_or(0)));
                    }
                    if !r.limit_on_line {
                        s.limit_off_line += 1;
                        reasons.push("vertex centroid off the line".to_string());
                    }
                    match r.g0_on_line {
                        Some(true) => s.g0_on_line += 1,
                        Some(false) => {
                            s.g0_off_line += 1;
                            s.first_g0_off_line.get_or_insert(o.trial);
                        }
                        None => {}
                    }
                }
                Err(VerifyError::InsufficientData) => s.insufficient_data += 1,
                Err(e) => {
                    s.colinear_failures += 1;
                    reasons.push(e.to_string());
                }
            }
            if o.z_scaling {
                s.z_scaling_passes += 1;
            } else {
                s.z_scaling_failures += 1;
                reasons.push("Z(Mv) != 3/8 Z(v) after projection".to_string());
            }
            if !reasons.is_empty() && s.first_failure.is_none() {
                s.first_failure = Some(FailurePayload {
                    trial: o.trial,
                    reason: reasons.join("; "),
                    vertices: o.hexagon.into_vertices(),
                });
            }
        }
        s
    }
}

/// Seeded random hexagon campaign. Trials run in parallel; each draws from its
/// own stream, so the summary depends only on the configuration.
pub fn fuzz_hexagons(config: &FuzzConfig) -> Result<FuzzSummary, VerifyError> {
    config.validate()?;
    let outcomes: Vec<TrialOutcome> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(config.seed, trial);
            let hexagon = random_integer_polygon(&mut rng, 6, config.coordinate_bound);
            evaluate_trial(trial, hexagon, config.steps)
        })
        .collect();
    Ok(FuzzSummary::from_outcomes(*config, outcomes))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    /// `(n, t_n)`: signed position of `G_n − ξ₀` along the line direction.
    pub projections: Vec<(usize, f64)>,
    /// First `n` from which successive projection differences keep one sign.
    pub stable_from: Option<usize>,
    /// Sign changes of `t_n` over the horizon.
    pub sign_changes: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub monotonicity: MonotonicityReport,
    /// `(n, |G_{n+1} − ξ₀| / |G_n − ξ₀|)` for consecutive defined centroids.
    pub distance_ratios: Vec<(usize, f64)>,
    /// `(|ξ₁|² − |ξ₅|²) / Σ_{j≠0,3} |ξ_j|²` of the input hexagon. The ratios
    /// tend to 1/2 only when this is non-zero.
    pub d1_normalized: f64,
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.filter(|s| *s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Position, direction and rate of the centroids along the hexagon's line.
pub fn convergence_diagnostics(p: &Polygon, steps: usize) -> Result<ConvergenceReport, VerifyError> {
    let report = verify_hexagon_theorem(p, steps)?;
    let limit = &report.limit_point;
    let direction = &report.line_direction;
    let defined: Vec<(usize, &PlanePoint)> =
        report.centroids.iter().enumerate().skip(1).filter_map(|(n, g)| g.as_ref().map(|g| (n, g))).collect();
    if defined.len() < 3 || direction.is_origin() {
        return Err(VerifyError::InsufficientData);
    }

    let dir_len = direction.dot(direction).to_f64().sqrt();
    let offsets: Vec<(usize, PlanePoint)> = defined.iter().map(|(n, g)| (*n, *g - limit)).collect();
    let projections: Vec<(usize, f64)> =
        offsets.iter().map(|(n, d)| (*n, d.dot(direction).to_f64() / dir_len)).collect();
    let signs = offsets.iter().map(|(_, d)| d.dot(direction).signum());

    let steps_signs: Vec<i8> = defined.windows(2).map(|w| (w[1].1 - w[0].1).dot(direction).signum()).collect();
    let stable_from = match steps_signs.last() {
        Some(&last) if last != 0 => {
            let tail = steps_signs.iter().rev().take_while(|s| **s == last).count();
            Some(defined[steps_signs.len() - tail].0)
        }
        _ => None,
    };

    let distance_ratios = offsets
        .windows(2)
        .filter(|w| w[1].0 == w[0].0 + 1)
        .filter_map(|w| {
            let ratio = w[1].1.dot(&w[1].1).checked_div(&w[0].1.dot(&w[0].1))?;
            Some((w[0].0, ratio.to_f64().sqrt()))
        })
        .collect();

    let mv = spectral::decompose(&FloatPolygon::from_exact(p));
    let (d1, _) = spectral::mode_imbalances(&mv);
    let total: f64 = [1, 2, 4, 5].iter().map(|&j| mv.xi(j).norm_sqr()).sum();
    let d1_normalized = if total > 0.0 { d1 / total } else { 0.0 };

    Ok(ConvergenceReport {
        monotonicity: MonotonicityReport { projections, stable_from, sign_changes: sign_changes(signs) },
        distance_ratios,
        d1_normalized,
    })
}
