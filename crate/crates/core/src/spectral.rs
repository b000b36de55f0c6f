//! Discrete Fourier analysis of polygons in floating point.
//!
//! An `m`-gon `v` decomposes as `v = Σ_j ξ_j e⁽ʲ⁾` where `e⁽ʲ⁾_k = ω^{jk}` and
//! `ω = e^{2πi/m}`. The midpoint map is circulant, so each `e⁽ʲ⁾` is an
//! eigenvector with eigenvalue `λ_j = (1 + ω^j) / 2`.
//!
//! The transform is a direct O(m²) sum; sizes here stay small.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::exact_poly::Polygon;

pub type ComplexValue = Complex64;

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Absolute tolerance for round trips and eigen-relations.
pub const ROUNDTRIP_TOLERANCE: f64 = 1e-12;
/// Relative tolerance for cubic quantities such as `Z` and centroids.
pub const CUBIC_RELATIVE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("area of the iterate vanishes; closed-form centroid undefined")]
    DegenerateDenominator,
    #[error("expected {expected} modes, got {got}")]
    WrongSize { expected: usize, got: usize },
    #[error("modes 0 and 3 must vanish (|ξ0| = {xi0:e}, |ξ3| = {xi3:e})")]
    ModesNotProjected { xi0: f64, xi3: f64 },
}

/// `ω^j = e^{2πij/m}`, with `j` reduced modulo `m`. Quarter turns are exact.
pub fn root_of_unity(m: usize, j: usize) -> ComplexValue {
    assert!(m >= 1, "root_of_unity needs m >= 1");
    let r = j % m;
    if (4 * r).is_multiple_of(m) {
        return match 4 * r / m {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let theta = 2.0 * PI * r as f64 / m as f64;
    Complex64::new(theta.cos(), theta.sin())
}

/// `λ_j = (1 + ω^j) / 2`.
pub fn eigenvalue(m: usize, j: usize) -> ComplexValue {
    (Complex64::new(1.0, 0.0) + root_of_unity(m, j)) * 0.5
}

/// Floating-point mirror of an exact polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatPolygon {
    vertices: Vec<ComplexValue>,
}

impl FloatPolygon {
    /// Returns `None` for an empty vertex list.
    pub fn new(vertices: Vec<ComplexValue>) -> Option<Self> {
        (!vertices.is_empty()).then_some(Self { vertices })
    }

    /// One-way conversion off the exact path.
    pub fn from_exact(p: &Polygon) -> Self {
        Self { vertices: p.vertices().iter().map(|v| Complex64::new(v.x.to_f64(), v.y.to_f64())).collect() }
    }

    pub fn vertices(&self) -> &[ComplexValue] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn midpoint_map(&self) -> Self {
        let m = self.vertices.len();
        Self { vertices: (0..m).map(|k| (self.vertices[k] + self.vertices[(k + 1) % m]) * 0.5).collect() }
    }

    pub fn signed_area(&self) -> f64 {
        0.5 * self.edge_crosses().sum::<f64>()
    }

    pub fn z_moment(&self) -> ComplexValue {
        let m = self.vertices.len();
        (0..m)
            .map(|k| {
                let (a, b) = (self.vertices[k], self.vertices[(k + 1) % m]);
                (a + b) * (a.conj() * b).im
            })
            .sum()
    }

    /// `Z / 6A`, or `None` when the area is exactly zero.
    pub fn centroid(&self) -> Option<ComplexValue> {
        let a = self.signed_area();
        (a != 0.0).then(|| self.z_moment() / (6.0 * a))
    }

    /// `max_k |self_k − other_k|`; infinite when the sizes differ.
    pub fn max_distance(&self, other: &Self) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        self.vertices.iter().zip(&other.vertices).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    fn edge_crosses(&self) -> impl Iterator<Item = f64> + '_ {
        let m = self.vertices.len();
        (0..m).map(move |k| (self.vertices[k].conj() * self.vertices[(k + 1) % m]).im)
    }
}

/// Fourier coefficients `ξ_0 … ξ_{m−1}` of an `m`-gon.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeVector {
    coefficients: Vec<ComplexValue>,
}

impl ModeVector {
    pub fn new(coefficients: Vec<ComplexValue>) -> Option<Self> {
        (!coefficients.is_empty()).then_some(Self { coefficients })
    }

    /// Polygon size `m`.
    pub fn m(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[ComplexValue] {
        &self.coefficients
    }

    /// `ξ_{j mod m}`.
    pub fn xi(&self, j: usize) -> ComplexValue {
        self.coefficients[j % self.coefficients.len()]
    }
}

/// `e⁽ʲ⁾`, the polygon with vertex `k` at `ω^{jk}`.
pub fn mode_basis(m: usize, j: usize) -> FloatPolygon {
    FloatPolygon { vertices: (0..m).map(|k| root_of_unity(m, (j % m) * k)).collect() }
}

/// `ξ_j = (1/m) Σ_k v_k ω^{−jk}`.
pub fn decompose(p: &FloatPolygon) -> ModeVector {
    let m = p.len();
    let scale = 1.0 / m as f64;
    let coefficients = (0..m)
        .map(|j| {
            p.vertices.iter().enumerate().map(|(k, v)| v * root_of_unity(m, (j * k) % m).conj()).sum::<Complex64>()
                * scale
        })
        .collect();
    ModeVector { coefficients }
}

/// `v_k = Σ_j ξ_j ω^{jk}`.
pub fn reconstruct(mv: &ModeVector) -> FloatPolygon {
    let m = mv.m();
    let vertices = (0..m)
        .map(|k| mv.coefficients.iter().enumerate().map(|(j, xi)| xi * root_of_unity(m, (j * k) % m)).sum())
        .collect();
    FloatPolygon { vertices }
}

/// Modes of `Mⁿv`: each `ξ_j` becomes `λ_jⁿ ξ_j`.
pub fn advance_modes(mv: &ModeVector, n: u32) -> ModeVector {
    let m = mv.m();
    ModeVector {
        coefficients: mv.coefficients.iter().enumerate().map(|(j, xi)| xi * eigenvalue(m, j).powu(n)).collect(),
    }
}

/// `Im(ω^p + ω^q)`.
fn im_sum(m: usize, p: usize, q: usize) -> f64 {
    root_of_unity(m, p).im + root_of_unity(m, q).im
}

/// `Z(v) = m Σ_{p,q} ξ_p ξ̄_q ξ_{q−p} Im(ω^p + ω^q)`, indices mod m.
pub fn z_from_modes(mv: &ModeVector) -> ComplexValue {
    z_after_steps(mv, 0)
}

/// `Z(Mⁿv)` from the modes of `v`. Each `(p, q)` term picks up the real
/// factor `(λ_p λ̄_q λ_{q−p})ⁿ`, which keeps the phase of every term exact.
pub fn z_after_steps(mv: &ModeVector, n: u32) -> ComplexValue {
    let m = mv.m();
    let mut z = Complex64::new(0.0, 0.0);
    for p in 0..m {
        let xp = mv.coefficients[p];
        if xp == Complex64::new(0.0, 0.0) {
            continue;
        }
        for q in 0..m {
            let r = (q + m - p) % m;
            let weight = im_sum(m, p, q);
            if weight == 0.0 {
                continue;
            }
            let factor = if n == 0 { 1.0 } else { triple_product(m, p, q).powi(n as i32) };
            z += xp * mv.coefficients[q].conj() * mv.coefficients[r] * (weight * factor);
        }
    }
    z * m as f64
}

/// `A(v) = (m/2) Σ_j |ξ_j|² Im(ω^j)`.
pub fn area_from_modes(mv: &ModeVector) -> f64 {
    let m = mv.m();
    0.5 * m as f64
        * mv.coefficients.iter().enumerate().map(|(j, xi)| xi.norm_sqr() * root_of_unity(m, j).im).sum::<f64>()
}

/// Tolerance on `|ξ₀|`, `|ξ₃|` accepted by [`closed_form_centroid`].
pub const PROJECTED_MODE_TOLERANCE: f64 = 1e-12;

/// Closed-form centroid of the `n`-th midpoint iterate of a hexagon whose
/// modes 0 and 3 vanish:
///
/// `G(Mⁿv) = 2⁻ⁿ · [9√3 (d₁ + 3⁻ⁿ d₂)]⁻¹ · Z(v)`,
/// with `d₁ = |ξ₁|² − |ξ₅|²` and `d₂ = |ξ₂|² − |ξ₄|²`.
pub fn closed_form_centroid(mv: &ModeVector, n: u32) -> Result<ComplexValue, SpectralError> {
    let coefficient = closed_form_coefficient(mv, n)?;
    Ok(z_from_modes(mv) * coefficient)
}

/// The real factor multiplying `Z(v)` in [`closed_form_centroid`].
pub fn closed_form_coefficient(mv: &ModeVector, n: u32) -> Result<f64, SpectralError> {
    if mv.m() != 6 {
        return Err(SpectralError::WrongSize { expected: 6, got: mv.m() });
    }
    let (xi0, xi3) = (mv.xi(0).norm(), mv.xi(3).norm());
    if xi0 > PROJECTED_MODE_TOLERANCE || xi3 > PROJECTED_MODE_TOLERANCE {
        return Err(SpectralError::ModesNotProjected { xi0, xi3 });
    }
    let (d1, d2) = mode_imbalances(mv);
    let shrink = 3f64.powi(-(n as i32));
    let bracket = d1 + shrink * d2;
    // Treat cancellation down to rounding noise as an exact zero.
    let scale = d1.abs().max(shrink * d2.abs());
    if bracket == 0.0 || bracket.abs() <= 1e-12 * scale {
        return Err(SpectralError::DegenerateDenominator);
    }
    Ok(0.5f64.powi(n as i32) / (9.0 * SQRT_3 * bracket))
}

/// `(d₁, d₂) = (|ξ₁|² − |ξ₅|², |ξ₂|² − |ξ₄|²)` for a hexagon's modes.
pub fn mode_imbalances(mv: &ModeVector) -> (f64, f64) {
    (mv.xi(1).norm_sqr() - mv.xi(5).norm_sqr(), mv.xi(2).norm_sqr() - mv.xi(4).norm_sqr())
}

/// `λ_p λ̄_q λ_{q−p}`, which is real and equals `¼ Re(1 + ω^p + ω^q + ω^{q−p})`.
pub fn triple_product(m: usize, p: usize, q: usize) -> f64 {
    let r = (q % m + m - p % m) % m;
    (eigenvalue(m, p) * eigenvalue(m, q).conj() * eigenvalue(m, r)).re
}

/// `|a − b| ≤ rel · max(|a|, |b|)` with an absolute floor.
pub fn close_relative(a: ComplexValue, b: ComplexValue, rel: f64, abs_floor: f64) -> bool {
    let diff = (a - b).norm();
    diff <= abs_floor || diff <= rel * a.norm().max(b.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::{self, Polygon};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn modes(xs: &[Complex64]) -> ModeVector {
        ModeVector::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(root_of_unity(6, 0), c(1.0, 0.0));
        assert_eq!(root_of_unity(6, 3), c(-1.0, 0.0));
        assert_eq!(root_of_unity(6, 9), c(-1.0, 0.0));
        let w = root_of_unity(6, 1);
        assert!((w - c(0.5, 0.8660254037844386)).norm() <= 1e-15);
        for m in 1..=64 {
            for j in 0..m {
                assert!((root_of_unity(m, j).norm() - 1.0).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn hexagon_eigenvalues() {
        assert_eq!(eigenvalue(6, 0), c(1.0, 0.0));
        assert_eq!(eigenvalue(6, 3), c(0.0, 0.0));
        assert!((eigenvalue(6, 1).norm() - 3f64.sqrt() / 2.0).abs() <= 1e-15);
        assert!((eigenvalue(6, 5).norm() - 3f64.sqrt() / 2.0).abs() <= 1e-15);
        assert!((eigenvalue(6, 2).norm() - 0.5).abs() <= 1e-15);
    }

    #[test]
    fn basis_examples() {
        assert!(mode_basis(6, 0).vertices().iter().all(|v| *v == c(1.0, 0.0)));
        let e3: Vec<_> = mode_basis(6, 3).vertices().to_vec();
        assert_eq!(e3, vec![c(1.0, 0.), c(-1.0, 0.), c(1.0, 0.), c(-1.0, 0.), c(1.0, 0.), c(-1.0, 0.)]);
        let e1 = mode_basis(4, 1);
        assert_eq!(e1.vertices(), &[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]);
    }

    #[test]
    fn decompose_examples() {
        let mv = decompose(&mode_basis(6, 1));
        for (j, xi) in mv.coefficients().iter().enumerate() {
            let want = if j == 1 { c(1.0, 0.0) } else { c(0.0, 0.0) };
            assert!((xi - want).norm() <= 1e-12, "j={j}: {xi}");
        }
        let k = c(2.5, -1.25);
        let mv = decompose(&FloatPolygon::new(vec![k; 7]).unwrap());
        assert!((mv.xi(0) - k).norm() <= 1e-12);
        assert!(mv.coefficients()[1..].iter().all(|x| x.norm() <= 1e-12));
    }

    #[test]
    fn reconstruct_examples() {
        let k = c(-3.0, 4.0);
        let p = reconstruct(&modes(&[k, c(0., 0.), c(0., 0.)]));
        assert!(p.vertices().iter().all(|v| (v - k).norm() <= 1e-15));

        let mut xs = vec![c(0.0, 0.0); 6];
        xs[1] = c(1.0, 0.0);
        let hex = reconstruct(&modes(&xs));
        assert!(hex.max_distance(&mode_basis(6, 1)) <= 1e-15);
    }

    #[test]
    fn mode_three_dies_in_one_step() {
        let mv = modes(&[c(0.3, 0.1), c(1.0, 2.0), c(-1.0, 0.5), c(4.0, -2.0), c(0.0, 1.0), c(2.0, 2.0)]);
        assert_eq!(advance_modes(&mv, 0), mv);
        let next = advance_modes(&mv, 1);
        assert_eq!(next.xi(3), c(0.0, 0.0));
        assert!(close_relative(
            reconstruct(&next).vertices()[2],
            reconstruct(&mv).midpoint_map().vertices()[2],
            0.0,
            1e-12
        ));
    }

    #[test]
    fn z_from_modes_examples() {
        assert_eq!(z_from_modes(&modes(&[c(0., 0.); 6])), c(0.0, 0.0));

        let mut xs = vec![c(0.0, 0.0); 6];
        xs[1] = c(1.0, 0.0);
        xs[2] = c(1.0, 0.0);
        let mv = modes(&xs);
        let z = z_from_modes(&mv);
        assert!((z - c(6.0 * SQRT_3, 0.0)).norm() <= 1e-12);
        assert!((z.re - 10.392305).abs() < 1e-6);
        // Cross-check against the shoelace sum on reconstructed vertices.
        assert!(close_relative(z, reconstruct(&mv).z_moment(), 1e-12, 1e-12));
    }

    #[test]
    fn area_from_modes_examples() {
        let mut xs = vec![c(0.0, 0.0); 6];
        xs[1] = c(1.0, 0.0);
        let a = area_from_modes(&modes(&xs));
        assert!((a - 1.5 * SQRT_3).abs() <= 1e-12);
        assert!((mode_basis(6, 1).signed_area() - a).abs() <= 1e-12);

        xs[5] = c(1.0, 0.0);
        assert!(area_from_modes(&modes(&xs)).abs() <= 1e-12);
    }

    #[test]
    fn closed_form_examples() {
        let mut xs = vec![c(0.0, 0.0); 6];
        xs[1] = c(1.0, 0.0);
        xs[2] = c(1.0, 0.0);
        let mv = modes(&xs);
        let g0 = closed_form_centroid(&mv, 0).unwrap();
        assert!((g0 - c(1.0 / 3.0, 0.0)).norm() <= 1e-12);
        let g1 = closed_form_centroid(&mv, 1).unwrap();
        assert!((g1 - c(0.25, 0.0)).norm() <= 1e-12);
        // Direct route: iterate the reconstructed hexagon.
        let direct = reconstruct(&mv).midpoint_map().centroid().unwrap();
        assert!((g1 - direct).norm() <= 1e-12);
    }

    #[test]
    fn closed_form_guards() {
        let mut xs = vec![c(0.0, 0.0); 6];
        xs[1] = c(1.0, 0.0);
        xs[5] = c(1.0, 0.0);
        assert_eq!(closed_form_centroid(&modes(&xs), 0), Err(SpectralError::DegenerateDenominator));

        xs[3] = c(0.1, 0.0);
        assert!(matches!(closed_form_centroid(&modes(&xs), 0), Err(SpectralError::ModesNotProjected { .. })));
        assert!(matches!(
            closed_form_centroid(&modes(&[c(1.0, 0.0); 5]), 0),
            Err(SpectralError::WrongSize { expected: 6, got: 5 })
        ));

        // d₁ = -1, d₂ = 3: bracket vanishes at n = 1 only.
        let mut xs = vec![c(0.0, 0.0); 6];
        xs[5] = c(1.0, 0.0);
        xs[2] = c(3f64.sqrt(), 0.0);
        let mv = modes(&xs);
        assert_eq!(closed_form_centroid(&mv, 1), Err(SpectralError::DegenerateDenominator));
        assert!(closed_form_centroid(&mv, 0).is_ok());
        assert!(closed_form_centroid(&mv, 2).is_ok());
    }

    #[test]
    fn hexagon_triple_products() {
        for (p, q) in [(1, 2), (5, 4), (4, 5), (2, 1)] {
            assert!((triple_product(6, p, q) - 0.375).abs() <= 1e-15, "({p},{q})");
        }
        for m in 1..=12 {
            for p in 0..m {
                let want = (1.0 + (2.0 * PI * p as f64 / m as f64).cos()) / 2.0;
                assert!((triple_product(m, p, p) - want).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn triple_product_identity_and_reality() {
        for m in 1..=20 {
            for p in 0..m {
                for q in 0..m {
                    let r = (q + m - p) % m;
                    let full = eigenvalue(m, p) * eigenvalue(m, q).conj() * eigenvalue(m, r);
                    assert!(full.im.abs() <= 1e-15);
                    let identity =
                        0.25 * (1.0 + root_of_unity(m, p).re + root_of_unity(m, q).re + root_of_unity(m, r).re);
                    assert!((triple_product(m, p, q) - identity).abs() <= 1e-15);
                }
            }
        }
    }

    fn float_polygon(m: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = FloatPolygon> {
        prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), m)
            .prop_map(|v| FloatPolygon::new(v.into_iter().map(|(x, y)| c(x, y)).collect()).unwrap())
    }

    fn int_hexagon() -> impl Strategy<Value = Polygon> {
        prop::collection::vec((-9i64..=9, -9i64..=9), 6).prop_map(|v| Polygon::from_ints(&v).unwrap())
    }

    proptest! {
        #[test]
        fn dft_round_trip(p in float_polygon(1..=64)) {
            let back = reconstruct(&decompose(&p));
            prop_assert!(back.max_distance(&p) <= ROUNDTRIP_TOLERANCE);
        }

        #[test]
        fn coefficient_round_trip(p in float_polygon(1..=64)) {
            let mv = decompose(&p);
            let again = decompose(&reconstruct(&mv));
            for (a, b) in mv.coefficients().iter().zip(again.coefficients()) {
                prop_assert!((a - b).norm() <= ROUNDTRIP_TOLERANCE);
            }
        }

        #[test]
        fn advance_matches_midpoint_map(p in float_polygon(1..=24)) {
            let modal = reconstruct(&advance_modes(&decompose(&p), 1));
            prop_assert!(modal.max_distance(&p.midpoint_map()) <= ROUNDTRIP_TOLERANCE);
        }

        #[test]
        fn fourier_formulas_match_exact_shoelace(h in int_hexagon()) {
            let mv = decompose(&FloatPolygon::from_exact(&h));
            let z = exact_poly::z_moment(&h);
            let z_exact = c(z.x.to_f64(), z.y.to_f64());
            prop_assert!(close_relative(z_from_modes(&mv), z_exact, CUBIC_RELATIVE_TOLERANCE, 1e-12));
            let a = exact_poly::signed_area(&h).to_f64();
            prop_assert!(close_relative(c(area_from_modes(&mv), 0.0), c(a, 0.0), CUBIC_RELATIVE_TOLERANCE, 1e-12));
        }

        #[test]
        fn z_scales_by_three_eighths(xs in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 6)) {
            let mut xs: Vec<_> = xs.into_iter().map(|(a, b)| c(a, b)).collect();
            xs[0] = c(0.0, 0.0);
            xs[3] = c(0.0, 0.0);
            let mv = modes(&xs);
            let z0 = z_from_modes(&mv);
            let z1 = z_from_modes(&advance_modes(&mv, 1));
            prop_assert!(close_relative(z1, z0 * 0.375, 1e-12, 1e-12));
            prop_assert!(close_relative(z_after_steps(&mv, 1), z1, 1e-12, 1e-12));
        }

        #[test]
        fn closed_form_is_real_multiple_of_z(xs in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 6), n in 0u32..20) {
            let mut xs: Vec<_> = xs.into_iter().map(|(a, b)| c(a, b)).collect();
            xs[0] = c(0.0, 0.0);
            xs[3] = c(0.0, 0.0);
            let mv = modes(&xs);
            let z = z_from_modes(&mv);
            if let Ok(g) = closed_form_centroid(&mv, n) {
                if z.norm() > 1e-9 {
                    let ratio = g / z;
                    prop_assert!(ratio.im.abs() <= 1e-12 * ratio.re.abs().max(1.0));
                }
            }
        }
    }
}
