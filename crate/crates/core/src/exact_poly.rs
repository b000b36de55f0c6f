//! Exact polygons and the midpoint map.
//!
//! Vertices are points `x + iy` with rational coordinates. Indices wrap modulo
//! the vertex count; nothing here assumes the polygon is simple, convex or
//! non-degenerate.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::error::GeometryError;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PlanePoint {
    pub x: Rational,
    pub y: Rational,
}

impl PlanePoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(x.into(), y.into())
    }

    pub fn origin() -> Self {
        Self::default()
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(&self.x * s, &self.y * s)
    }

    /// z-component of the planar cross product `self × other`.
    pub fn cross(&self, other: &Self) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Self) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn midpoint(&self, other: &Self) -> Self {
        Self::new((&self.x + &other.x).half(), (&self.y + &other.y).half())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Debug for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

/// Serialized as a two-element array of fraction strings.
impl Serialize for PlanePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.x)?;
        t.serialize_element(&self.y)?;
        t.end()
    }
}

impl Add<&PlanePoint> for &PlanePoint {
    type Output = PlanePoint;
    fn add(self, rhs: &PlanePoint) -> PlanePoint {
        PlanePoint::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub<&PlanePoint> for &PlanePoint {
    type Output = PlanePoint;
    fn sub(self, rhs: &PlanePoint) -> PlanePoint {
        PlanePoint::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &PlanePoint {
    type Output = PlanePoint;
    fn neg(self) -> PlanePoint {
        PlanePoint::new(-&self.x, -&self.y)
    }
}

/// An ordered, non-empty vertex list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polygon {
    vertices: Vec<PlanePoint>,
}

impl Polygon {
    pub fn new(vertices: Vec<PlanePoint>) -> Result<Self, GeometryError> {
        if vertices.is_empty() {
            return Err(GeometryError::EmptyPolygon);
        }
        Ok(Self { vertices })
    }

    /// Convenience constructor from integer coordinate pairs.
    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self, GeometryError> {
        Self::new(coords.iter().map(|&(x, y)| PlanePoint::from_ints(x, y)).collect())
    }

    pub fn vertices(&self) -> &[PlanePoint] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<PlanePoint> {
        self.vertices
    }

    /// Number of vertices `m`.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Vertex `k mod m`.
    pub fn vertex(&self, k: usize) -> &PlanePoint {
        &self.vertices[k % self.vertices.len()]
    }

    /// `(v_k, v_{k+1})` for every k, wrapping at the end.
    pub fn edges(&self) -> impl Iterator<Item = (&PlanePoint, &PlanePoint)> {
        let m = self.vertices.len();
        (0..m).map(move |k| (&self.vertices[k], &self.vertices[(k + 1) % m]))
    }

    pub fn translate(&self, by: &PlanePoint) -> Self {
        Self { vertices: self.vertices.iter().map(|v| v + by).collect() }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { vertices: self.vertices.iter().map(|v| v.scale(s)).collect() }
    }

    pub fn reversed(&self) -> Self {
        Self { vertices: self.vertices.iter().rev().cloned().collect() }
    }

    /// Applies `v ↦ A v + b` with `A = [[a, b], [c, d]]` to every vertex.
    pub fn affine(&self, matrix: [&Rational; 4], shift: &PlanePoint) -> Self {
        let [a, b, c, d] = matrix;
        Self {
            vertices: self
                .vertices
                .iter()
                .map(|v| PlanePoint::new(a * &v.x + b * &v.y + &shift.x, c * &v.x + d * &v.y + &shift.y))
                .collect(),
        }
    }

    /// Vertex-wise linear combination `a·self + b·other`.
    pub fn combine(&self, a: &Rational, other: &Polygon, b: &Rational) -> Result<Self, GeometryError> {
        if other.len() != self.len() {
            return Err(GeometryError::WrongSize { expected: self.len(), got: other.len() });
        }
        Ok(Self {
            vertices: self.vertices.iter().zip(&other.vertices).map(|(u, v)| &u.scale(a) + &v.scale(b)).collect(),
        })
    }
}

impl fmt::Debug for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.vertices).finish()
    }
}

/// `(Mv)_k = (v_k + v_{k+1}) / 2`.
pub fn midpoint_map(p: &Polygon) -> Polygon {
    Polygon { vertices: p.edges().map(|(a, b)| a.midpoint(b)).collect() }
}

/// `[p, Mp, …, Mⁿp]`.
pub fn iterate(p: &Polygon, n: usize) -> Vec<Polygon> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(p.clone());
    for _ in 0..n {
        let next = midpoint_map(out.last().expect("non-empty"));
        out.push(next);
    }
    out
}

fn twice_area(p: &Polygon) -> Rational {
    p.edges().map(|(a, b)| a.cross(b)).sum()
}

/// Shoelace area; positive for counter-clockwise orientation.
pub fn signed_area(p: &Polygon) -> Rational {
    twice_area(p).half()
}

/// `(2A, Z)` from one pass over the edge cross products.
fn shoelace(p: &Polygon) -> (Rational, PlanePoint) {
    let mut twice = Rational::zero();
    let mut zx = Rational::zero();
    let mut zy = Rational::zero();
    for (a, b) in p.edges() {
        let c = a.cross(b);
        if c.is_zero() {
            continue;
        }
        zx += &((&a.x + &b.x) * &c);
        zy += &((&a.y + &b.y) * &c);
        twice += &c;
    }
    (twice, PlanePoint::new(zx, zy))
}

/// `Z = Σ_k (v_k + v_{k+1}) · (v_k × v_{k+1})`, so that the centroid is `Z / 6A`.
pub fn z_moment(p: &Polygon) -> PlanePoint {
    shoelace(p).1
}

/// Algebraic polygon centroid `Z / 6A`. For simple polygons this is the
/// centroid of the filled region.
pub fn centroid(p: &Polygon) -> Result<PlanePoint, GeometryError> {
    let (twice, z) = shoelace(p);
    // 6A = 3 · (2A)
    let inv = (&twice * &Rational::from(3)).recip().ok_or(GeometryError::AreaZero)?;
    Ok(z.scale(&inv))
}

/// Arithmetic mean of the vertices (`ξ₀`), which the midpoint map preserves.
pub fn vertex_centroid(p: &Polygon) -> PlanePoint {
    let m = Rational::from(p.len() as i64);
    let inv = m.recip().expect("m >= 1");
    let sx: Rational = p.vertices().iter().map(|v| &v.x).sum();
    let sy: Rational = p.vertices().iter().map(|v| &v.y).sum();
    PlanePoint::new(sx * &inv, sy * &inv)
}

/// `ξ₃ = (1/6) Σ_k (-1)^k v_k` of a hexagon.
pub fn alternating_mode(p: &Polygon) -> Result<PlanePoint, GeometryError> {
    expect_size(p, 6)?;
    let mut sx = Rational::zero();
    let mut sy = Rational::zero();
    for (k, v) in p.vertices().iter().enumerate() {
        if k % 2 == 0 {
            sx += &v.x;
            sy += &v.y;
        } else {
            sx -= &v.x;
            sy -= &v.y;
        }
    }
    let sixth = Rational::new(1, 6).expect("non-zero");
    Ok(PlanePoint::new(sx * &sixth, sy * &sixth))
}

/// Removes the constant (`e⁽⁰⁾`) and alternating (`e⁽³⁾`) Fourier components
/// of a hexagon. Both coefficients are rational, so this is exact.
pub fn project_out_modes_0_3(p: &Polygon) -> Result<Polygon, GeometryError> {
    expect_size(p, 6)?;
    let xi0 = vertex_centroid(p);
    let xi3 = alternating_mode(p)?;
    let plus = &xi0 + &xi3;
    let minus = &xi0 - &xi3;
    let vertices =
        p.vertices().iter().enumerate().map(|(k, v)| if k % 2 == 0 { v - &plus } else { v - &minus }).collect();
    Ok(Polygon { vertices })
}

pub(crate) fn expect_size(p: &Polygon, m: usize) -> Result<(), GeometryError> {
    if p.len() != m {
        return Err(GeometryError::WrongSize { expected: m, got: p.len() });
    }
    Ok(())
}


#[cfg(test)]
mod tests {
    use super::test_support::*;
    use super::*;
    use proptest::prelude::*;

    fn poly(points: Vec<(Rational, Rational)>) -> Polygon {
        Polygon::new(points.into_iter().map(|(x, y)| PlanePoint::new(x, y)).collect()).unwrap()
    }

    fn constant_hexagon() -> Polygon {
        Polygon::from_ints(&[(1, 1); 6]).unwrap()
    }

    #[test]
    fn empty_polygon_rejected() {
        assert_eq!(Polygon::new(vec![]).unwrap_err(), GeometryError::EmptyPolygon);
    }

    #[test]
    fn midpoint_map_examples() {
        assert_eq!(midpoint_map(&constant_hexagon()), constant_hexagon());

        let sq = Polygon::from_ints(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap();
        assert_eq!(midpoint_map(&sq), Polygon::from_ints(&[(1, 0), (2, 1), (1, 2), (0, 1)]).unwrap());

        let expected = poly(vec![
            (q(1, 1), q(0, 1)),
            (q(2, 1), q(1, 2)),
            (q(3, 2), q(1, 1)),
            (q(1, 1), q(3, 2)),
            (q(1, 2), q(2, 1)),
            (q(0, 1), q(1, 1)),
        ]);
        assert_eq!(midpoint_map(&l_hexagon()), expected);
    }

    #[test]
    fn midpoint_map_single_vertex() {
        let p = Polygon::from_ints(&[(3, -4)]).unwrap();
        assert_eq!(midpoint_map(&p), p);
    }

    #[test]
    fn iterate_examples() {
        let p = l_hexagon();
        assert_eq!(iterate(&p, 0), vec![p.clone()]);

        let c = constant_hexagon();
        let seq = iterate(&c, 5);
        assert_eq!(seq.len(), 6);
        assert!(seq.iter().all(|h| *h == c));

        let sq = Polygon::from_ints(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap();
        let seq = iterate(&sq, 2);
        let expected = poly(vec![(q(3, 2), q(1, 2)), (q(3, 2), q(3, 2)), (q(1, 2), q(3, 2)), (q(1, 2), q(1, 2))]);
        assert_eq!(seq[2], expected);
    }

    #[test]
    fn signed_area_examples() {
        assert_eq!(signed_area(&unit_square()), Rational::from(1));
        assert_eq!(signed_area(&unit_square().reversed()), Rational::from(-1));
        assert_eq!(signed_area(&l_hexagon()), Rational::from(3));
        assert!(signed_area(&Polygon::from_ints(&[(1, 2), (3, 4)]).unwrap()).is_zero());
    }

    #[test]
    fn z_moment_examples() {
        assert_eq!(z_moment(&unit_square()), PlanePoint::from_ints(3, 3));
        assert!(z_moment(&constant_hexagon()).is_origin());
        // Centroid (5/6, 5/6) times 6·A = 18.
        assert_eq!(z_moment(&l_hexagon()), PlanePoint::from_ints(15, 15));
    }

    #[test]
    fn centroid_examples() {
        assert_eq!(centroid(&unit_square()).unwrap(), pt(q(1, 2), q(1, 2)));
        // Rectangle decomposition: (2·(1, 1/2) + 1·(1/2, 3/2)) / 3.
        let rect_oracle =
            pt((q(2, 1) * q(1, 1) + q(1, 1) * q(1, 2)) / q(3, 1), (q(2, 1) * q(1, 2) + q(1, 1) * q(3, 2)) / q(3, 1));
        assert_eq!(rect_oracle, pt(q(5, 6), q(5, 6)));
        assert_eq!(centroid(&l_hexagon()).unwrap(), rect_oracle);

        let flat = Polygon::from_ints(&[(0, 0), (1, 1), (2, 2), (3, 3), (-1, -1), (5, 5)]).unwrap();
        assert_eq!(centroid(&flat), Err(GeometryError::AreaZero));
    }

    #[test]
    fn small_m_has_no_centroid() {
        for p in [Polygon::from_ints(&[(1, 1)]).unwrap(), Polygon::from_ints(&[(0, 0), (4, 7)]).unwrap()] {
            assert_eq!(centroid(&p), Err(GeometryError::AreaZero));
        }
    }

    #[test]
    fn vertex_centroid_examples() {
        let p = Polygon::from_ints(&[(1, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)]).unwrap();
        assert_eq!(vertex_centroid(&p), pt(q(-1, 6), q(0, 1)));
        assert_eq!(vertex_centroid(&constant_hexagon()), PlanePoint::from_ints(1, 1));
        assert_eq!(vertex_centroid(&midpoint_map(&p)), vertex_centroid(&p));
    }

    #[test]
    fn projection_examples() {
        let c = constant_hexagon();
        assert!(project_out_modes_0_3(&c).unwrap().vertices().iter().all(PlanePoint::is_origin));

        let e3 = Polygon::from_ints(&[(1, 0), (-1, 0), (1, 0), (-1, 0), (1, 0), (-1, 0)]).unwrap();
        assert!(project_out_modes_0_3(&e3).unwrap().vertices().iter().all(PlanePoint::is_origin));

        let once = project_out_modes_0_3(&l_hexagon()).unwrap();
        assert_eq!(project_out_modes_0_3(&once).unwrap(), once);
        assert!(vertex_centroid(&once).is_origin());
        assert!(alternating_mode(&once).unwrap().is_origin());

        assert_eq!(project_out_modes_0_3(&unit_square()), Err(GeometryError::WrongSize { expected: 6, got: 4 }));
    }

    #[test]
    fn fan_oracle_matches_on_l_hexagon() {
        assert_eq!(fan_centroid(&l_hexagon()).unwrap(), centroid(&l_hexagon()).unwrap());
    }

    fn small_q() -> impl Strategy<Value = Rational> {
        (-40i64..=40, 1i64..=12).prop_map(|(n, d)| q(n, d))
    }

    fn polygon(m: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Polygon> {
        prop::collection::vec((small_q(), small_q()), m).prop_map(poly)
    }

    fn point() -> impl Strategy<Value = PlanePoint> {
        (small_q(), small_q()).prop_map(|(x, y)| PlanePoint::new(x, y))
    }

    proptest! {
        #[test]
        fn midpoint_map_is_linear(u in polygon(6..=6), v in polygon(6..=6), a in small_q(), b in small_q()) {
            let lhs = midpoint_map(&u.combine(&a, &v, &b).unwrap());
            let rhs = midpoint_map(&u).combine(&a, &midpoint_map(&v), &b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn translation_equivariance(p in polygon(1..=9), c in point()) {
            let moved = p.translate(&c);
            prop_assert_eq!(signed_area(&moved), signed_area(&p));
            let shift = c.scale(&(signed_area(&p) * Rational::from(6)));
            prop_assert_eq!(z_moment(&moved), &z_moment(&p) + &shift);
            if let Ok(g) = centroid(&p) {
                prop_assert_eq!(centroid(&moved).unwrap(), &g + &c);
            }
        }

        #[test]
        fn scaling_equivariance(p in polygon(3..=9), s in small_q()) {
            prop_assume!(!s.is_zero());
            if let Ok(g) = centroid(&p) {
                prop_assert_eq!(centroid(&p.scale(&s)).unwrap(), g.scale(&s));
            }
        }

        #[test]
        fn vertex_centroid_is_conserved(p in polygon(1..=12)) {
            prop_assert_eq!(vertex_centroid(&midpoint_map(&p)), vertex_centroid(&p));
        }

        #[test]
        fn reversal_negates_area_and_moment(p in polygon(1..=9)) {
            let r = p.reversed();
            prop_assert_eq!(signed_area(&r), -signed_area(&p));
            prop_assert_eq!(z_moment(&r), -&z_moment(&p));
            prop_assert_eq!(centroid(&r).ok(), centroid(&p).ok());
        }

        #[test]
        fn centroid_matches_fan_decomposition(p in polygon(3..=9)) {
            // The fan identity is algebraic, so it holds for every polygon
            // with non-zero area, simple or not.
            prop_assert_eq!(centroid(&p).ok(), fan_centroid(&p));
        }
    }
}
