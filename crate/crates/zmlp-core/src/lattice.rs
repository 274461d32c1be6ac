//! Lattice points, convex lattice polygons, and integral affine maps in
//! rank two, together with canonical forms under `GL_2(Z) ⋉ Z^2`.

use alloc::vec::Vec;
use core::fmt;
use num_integer::Integer;

/// Lattice coordinate. Products go through 128-bit intermediates and are
/// checked on conversion back, so overflow is an explicit failure instead
/// of a silent wrap.
pub type Coord = i64;

fn narrow(v: i128) -> Coord {
    Coord::try_from(v).expect("lattice coordinate overflow")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    EmptyInput,
    NotConvex,
    NotUnimodular,
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::EmptyInput => write!(f, "empty input"),
            LatticeError::NotConvex => write!(f, "vertices are not in strictly convex position"),
            LatticeError::NotUnimodular => write!(f, "matrix determinant is not ±1"),
        }
    }
}

impl core::error::Error for LatticeError {}

/// A point of the rank-two lattice `M ≅ Z^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticePoint {
    pub x: Coord,
    pub y: Coord,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0 };

    pub const fn new(x: Coord, y: Coord) -> Self {
        LatticePoint { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Pairing of a covector with a vector.
    pub fn dot(&self, other: &LatticePoint) -> Coord {
        narrow(self.x as i128 * other.x as i128 + self.y as i128 * other.y as i128)
    }

    /// Determinant of the 2x2 matrix with columns `self`, `other`.
    pub fn det(&self, other: &LatticePoint) -> Coord {
        narrow(self.x as i128 * other.y as i128 - self.y as i128 * other.x as i128)
    }

    pub fn scale(&self, k: Coord) -> LatticePoint {
        LatticePoint::new(narrow(self.x as i128 * k as i128), narrow(self.y as i128 * k as i128))
    }

    /// Counterclockwise rotation by 90 degrees.
    pub fn rot_left(&self) -> LatticePoint {
        LatticePoint::new(-self.y, self.x)
    }

    /// Writes a nonzero vector as `length * direction` with `direction`
    /// primitive and `length > 0`.
    pub fn primitive(&self) -> Option<(LatticePoint, Coord)> {
        if self.is_zero() {
            return None;
        }
        let g = self.x.gcd(&self.y);
        Some((LatticePoint::new(self.x / g, self.y / g), g))
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.x.gcd(&self.y) == 1
    }
}

impl core::ops::Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl core::ops::Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl core::ops::Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(-self.x, -self.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An integral affine linear function `m ↦ ⟨normal, m⟩ + constant`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineFunctional {
    pub normal: LatticePoint,
    pub constant: Coord,
}

impl AffineFunctional {
    pub const fn new(normal: LatticePoint, constant: Coord) -> Self {
        AffineFunctional { normal, constant }
    }

    pub fn eval(&self, p: &LatticePoint) -> Coord {
        self.normal.dot(p) + self.constant
    }

    pub fn negated(&self) -> AffineFunctional {
        AffineFunctional::new(-self.normal, -self.constant)
    }
}

/// An element of `GL_2(Z) ⋉ Z^2`, acting as `p ↦ matrix·p + translation`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnimodularAffineMap {
    matrix: [[Coord; 2]; 2],
    translation: LatticePoint,
}

impl UnimodularAffineMap {
    pub fn new(matrix: [[Coord; 2]; 2], translation: LatticePoint) -> Result<Self, LatticeError> {
        let det = matrix[0][0] as i128 * matrix[1][1] as i128
            - matrix[0][1] as i128 * matrix[1][0] as i128;
        if det != 1 && det != -1 {
            return Err(LatticeError::NotUnimodular);
        }
        Ok(UnimodularAffineMap { matrix, translation })
    }

    pub fn identity() -> Self {
        UnimodularAffineMap { matrix: [[1, 0], [0, 1]], translation: LatticePoint::ORIGIN }
    }

    pub fn translation_by(t: LatticePoint) -> Self {
        UnimodularAffineMap { matrix: [[1, 0], [0, 1]], translation: t }
    }

    pub fn matrix(&self) -> [[Coord; 2]; 2] {
        self.matrix
    }

    pub fn translation(&self) -> LatticePoint {
        self.translation
    }

    pub fn det(&self) -> Coord {
        narrow(
            self.matrix[0][0] as i128 * self.matrix[1][1] as i128
                - self.matrix[0][1] as i128 * self.matrix[1][0] as i128,
        )
    }

    pub fn apply(&self, p: &LatticePoint) -> LatticePoint {
        self.apply_vector(p) + self.translation
    }

    /// Applies only the linear part, for tangent vectors.
    pub fn apply_vector(&self, p: &LatticePoint) -> LatticePoint {
        LatticePoint::new(
            narrow(self.matrix[0][0] as i128 * p.x as i128 + self.matrix[0][1] as i128 * p.y as i128),
            narrow(self.matrix[1][0] as i128 * p.x as i128 + self.matrix[1][1] as i128 * p.y as i128),
        )
    }

    /// `self ∘ other`, the map applying `other` first.
    pub fn compose(&self, other: &UnimodularAffineMap) -> UnimodularAffineMap {
        let a = self.matrix;
        let b = other.matrix;
        let mut m = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = narrow(
                    a[i][0] as i128 * b[0][j] as i128 + a[i][1] as i128 * b[1][j] as i128,
                );
            }
        }
        UnimodularAffineMap { matrix: m, translation: self.apply(&other.translation) }
    }

    pub fn inverse(&self) -> UnimodularAffineMap {
        let [[a, b], [c, d]] = self.matrix;
        let det = self.det();
        let inv = [[d / det, -b / det], [-c / det, a / det]];
        let m = UnimodularAffineMap { matrix: inv, translation: LatticePoint::ORIGIN };
        let t = -m.apply_vector(&self.translation);
        UnimodularAffineMap { matrix: inv, translation: t }
    }
}

/// An edge of a lattice polygon, oriented counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: LatticePoint,
    pub to: LatticePoint,
    /// Primitive tangent vector pointing from `from` to `to`.
    pub tangent: LatticePoint,
    /// Primitive inner normal.
    pub normal: LatticePoint,
    /// Lattice length: one less than the number of lattice points on the edge.
    pub length: Coord,
}

/// A two-dimensional convex lattice polygon. Vertices are stored in strictly
/// convex counterclockwise order starting at the lexicographically smallest
/// vertex, so equal polygons compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

impl LatticePolygon {
    pub fn from_vertices(vertices: Vec<LatticePoint>) -> Result<Self, LatticeError> {
        if vertices.len() < 3 {
            return Err(LatticeError::NotConvex);
        }
        let n = vertices.len();
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            if (b - a).det(&(c - b)) <= 0 {
                return Err(LatticeError::NotConvex);
            }
        }
        let start = (0..n).min_by_key(|&i| vertices[i]).unwrap();
        let mut vs = Vec::with_capacity(n);
        vs.extend_from_slice(&vertices[start..]);
        vs.extend_from_slice(&vertices[..start]);
        Ok(LatticePolygon { vertices: vs })
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn edges(&self) -> Vec<Edge> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let from = self.vertices[i];
                let to = self.vertices[(i + 1) % n];
                let (tangent, length) = (to - from).primitive().unwrap();
                Edge { from, to, tangent, normal: tangent.rot_left(), length }
            })
            .collect()
    }

    /// Twice the Euclidean area (shoelace formula).
    pub fn double_area(&self) -> Coord {
        let n = self.vertices.len();
        (0..n).map(|i| self.vertices[i].det(&self.vertices[(i + 1) % n])).sum()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.edges().iter().all(|e| e.normal.dot(&(*p - e.from)) >= 0)
    }

    /// All lattice points of the polygon, sorted.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        let xs: Vec<Coord> = self.vertices.iter().map(|v| v.x).collect();
        let ys: Vec<Coord> = self.vertices.iter().map(|v| v.y).collect();
        let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
        let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
        let edges = self.edges();
        let mut pts = Vec::new();
        for x in x0..=x1 {
            for y in y0..=y1 {
                let p = LatticePoint::new(x, y);
                if edges.iter().all(|e| e.normal.dot(&(p - e.from)) >= 0) {
                    pts.push(p);
                }
            }
        }
        pts
    }

    pub fn apply_map(&self, map: &UnimodularAffineMap) -> LatticePolygon {
        let mut vs: Vec<LatticePoint> = self.vertices.iter().map(|v| map.apply(v)).collect();
        if map.det() < 0 {
            vs.reverse();
        }
        LatticePolygon::from_vertices(vs).expect("unimodular image of a polygon is a polygon")
    }

    pub fn translate(&self, t: LatticePoint) -> LatticePolygon {
        self.apply_map(&UnimodularAffineMap::translation_by(t))
    }
}

/// Convex hull of a finite point set, with the dimension made explicit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hull {
    Point(LatticePoint),
    /// Endpoints in lexicographic order.
    Segment(LatticePoint, LatticePoint),
    Polygon(LatticePolygon),
}

impl Hull {
    pub fn dim(&self) -> usize {
        match self {
            Hull::Point(_) => 0,
            Hull::Segment(_, _) => 1,
            Hull::Polygon(_) => 2,
        }
    }

    pub fn as_polygon(&self) -> Option<&LatticePolygon> {
        match self {
            Hull::Polygon(p) => Some(p),
            _ => None,
        }
    }

    pub fn vertices(&self) -> Vec<LatticePoint> {
        match self {
            Hull::Point(p) => [*p].into(),
            Hull::Segment(a, b) => [*a, *b].into(),
            Hull::Polygon(p) => p.vertices().into(),
        }
    }

    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        match self {
            Hull::Point(p) => [*p].into(),
            Hull::Segment(a, b) => {
                let (dir, len) = (*b - *a).primitive().unwrap();
                (0..=len).map(|k| *a + dir.scale(k)).collect()
            }
            Hull::Polygon(p) => p.lattice_points(),
        }
    }

    pub fn contains(&self, q: &LatticePoint) -> bool {
        match self {
            Hull::Point(p) => p == q,
            Hull::Segment(a, b) => {
                let (dir, len) = (*b - *a).primitive().unwrap();
                let d = *q - *a;
                d.det(&dir) == 0 && {
                    let t = if dir.x != 0 { d.x / dir.x } else { d.y / dir.y };
                    (0..=len).contains(&t) && dir.scale(t) == d
                }
            }
            Hull::Polygon(p) => p.contains(q),
        }
    }
}

/// Convex hull by monotone chain. Collinear inputs collapse to a segment,
/// a single repeated point to that point.
pub fn convex_hull(points: &[LatticePoint]) -> Result<Hull, LatticeError> {
    if points.is_empty() {
        return Err(LatticeError::EmptyInput);
    }
    let mut pts: Vec<LatticePoint> = points.into();
    pts.sort();
    pts.dedup();
    if pts.len() == 1 {
        return Ok(Hull::Point(pts[0]));
    }
    if pts.iter().all(|p| (*p - pts[0]).det(&(pts[pts.len() - 1] - pts[0])) == 0) {
        return Ok(Hull::Segment(pts[0], pts[pts.len() - 1]));
    }
    let chain = |iter: &mut dyn Iterator<Item = &LatticePoint>| {
        let mut hull: Vec<LatticePoint> = Vec::new();
        for &p in iter {
            while hull.len() >= 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                if (b - a).det(&(p - b)) <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull
    };
    let mut lower = chain(&mut pts.iter());
    let mut upper = chain(&mut pts.iter().rev());
    lower.pop();
    upper.pop();
    lower.append(&mut upper);
    Ok(Hull::Polygon(LatticePolygon::from_vertices(lower)?))
}

/// Recognizes a triangle equivalent to `Conv{(0,0),(a,0),(0,b)}` under
/// `GL_2(Z) ⋉ Z^2` and returns `(a, b)` with `a ≤ b` together with a map
/// carrying the input onto that triangle. A triangle qualifies exactly when
/// some vertex has outgoing primitive edge directions of determinant `±1`.
pub fn classify_rectangular(
    poly: &LatticePolygon,
) -> Option<(Coord, Coord, UnimodularAffineMap)> {
    let vs = poly.vertices();
    if vs.len() != 3 {
        return None;
    }
    for i in 0..3 {
        let v = vs[i];
        let p = vs[(i + 1) % 3];
        let q = vs[(i + 2) % 3];
        let (d1, l1) = (p - v).primitive().unwrap();
        let (d2, l2) = (q - v).primitive().unwrap();
        if d1.det(&d2).abs() != 1 {
            continue;
        }
        let (da, db, a, b) = if l1 <= l2 { (d1, d2, l1, l2) } else { (d2, d1, l2, l1) };
        let det = da.det(&db);
        let matrix = [[db.y / det, -db.x / det], [-da.y / det, da.x / det]];
        let linear = UnimodularAffineMap::new(matrix, LatticePoint::ORIGIN)
            .expect("inverse of a unimodular matrix is unimodular");
        let t = -linear.apply_vector(&v);
        let map = UnimodularAffineMap { translation: t, ..linear };
        debug_assert_eq!(map.apply(&v), LatticePoint::ORIGIN);
        debug_assert_eq!(map.apply(&(v + da.scale(a))), LatticePoint::new(a, 0));
        debug_assert_eq!(map.apply(&(v + db.scale(b))), LatticePoint::new(0, b));
        return Some((a, b, map));
    }
    None
}

fn reflect_x_axis(poly: &LatticePolygon) -> LatticePolygon {
    let mut vs: Vec<LatticePoint> =
        poly.vertices().iter().map(|v| LatticePoint::new(v.x, -v.y)).collect();
    vs.reverse();
    LatticePolygon::from_vertices(vs).expect("reflection preserves convexity")
}

/// The frame maps used by `canonical_form`: for each edge of each
/// orientation of the polygon, the unique unimodular affine map taking the
/// edge's start to the origin, its tangent to `(1,0)`, the interior into the
/// upper half plane, and the shear-reduced previous vertex into `0 ≤ x < y`.
fn frame_candidates(poly: &LatticePolygon) -> Vec<Vec<LatticePoint>> {
    let mut out = Vec::new();
    for oriented in [poly.clone(), reflect_x_axis(poly)] {
        let vs = oriented.vertices();
        let n = vs.len();
        for i in 0..n {
            let v = vs[i];
            let (t, _) = (vs[(i + 1) % n] - v).primitive().unwrap();
            let eg = t.x.extended_gcd(&t.y);
            debug_assert_eq!(eg.gcd, 1);
            let base = UnimodularAffineMap::new([[eg.x, eg.y], [-t.y, t.x]], LatticePoint::ORIGIN)
                .expect("Bezout frame is unimodular");
            let mut imgs: Vec<LatticePoint> =
                (0..n).map(|j| base.apply_vector(&(vs[(i + j) % n] - v))).collect();
            let last = imgs[n - 1];
            debug_assert!(last.y > 0);
            let k = -last.x.div_euclid(last.y);
            for p in imgs.iter_mut() {
                *p = LatticePoint::new(p.x + k * p.y, p.y);
            }
            out.push(imgs);
        }
    }
    out
}

/// A unique representative of the `GL_2(Z) ⋉ Z^2` orbit of a polygon,
/// chosen as the lexicographically smallest flattened vertex list over all
/// edge frames of both orientations.
pub fn canonical_form(poly: &LatticePolygon) -> LatticePolygon {
    let best = frame_candidates(poly)
        .into_iter()
        .min()
        .expect("polygon has at least one edge");
    LatticePolygon::from_vertices(best).expect("frame image is a polygon")
}

/// The affine maps producing the images considered by [`canonical_form`]:
/// for each edge of each orientation, the composition of the optional
/// reflection, the translation of the edge start to the origin, the Bezout
/// frame, and the shear. The candidate set depends only on the orbit of the
/// polygon, so minimizing any orbit-independent key over the mapped images
/// yields a canonical representative.
pub fn canonical_maps(poly: &LatticePolygon) -> Vec<UnimodularAffineMap> {
    let reflect = UnimodularAffineMap::new([[1, 0], [0, -1]], LatticePoint::ORIGIN)
        .expect("reflection is unimodular");
    let mut out = Vec::new();
    for flip in [false, true] {
        let oriented = if flip { reflect_x_axis(poly) } else { poly.clone() };
        let vs = oriented.vertices();
        let n = vs.len();
        for i in 0..n {
            let v = vs[i];
            let (t, _) = (vs[(i + 1) % n] - v).primitive().unwrap();
            let eg = t.x.extended_gcd(&t.y);
            let base = UnimodularAffineMap::new([[eg.x, eg.y], [-t.y, t.x]], LatticePoint::ORIGIN)
                .expect("Bezout frame is unimodular");
            let last = base.apply_vector(&(vs[(i + n - 1) % n] - v));
            debug_assert!(last.y > 0);
            let k = -last.x.div_euclid(last.y);
            let shear = UnimodularAffineMap::new([[1, k], [0, 1]], LatticePoint::ORIGIN)
                .expect("shear is unimodular");
            let to_origin = UnimodularAffineMap::translation_by(-v);
            let mut map = shear.compose(&base).compose(&to_origin);
            if flip {
                map = map.compose(&reflect);
            }
            out.push(map);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(x: Coord, y: Coord) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    fn triangle(a: Coord, b: Coord) -> LatticePolygon {
        LatticePolygon::from_vertices([pt(0, 0), pt(a, 0), pt(0, b)].into()).unwrap()
    }

    #[test]
    fn hull_of_single_point() {
        assert_eq!(convex_hull(&[pt(0, 0)]).unwrap(), Hull::Point(pt(0, 0)));
    }

    #[test]
    fn hull_of_collinear_points_is_segment() {
        let h = convex_hull(&[pt(0, 0), pt(1, 0), pt(2, 0)]).unwrap();
        assert_eq!(h, Hull::Segment(pt(0, 0), pt(2, 0)));
    }

    #[test]
    fn hull_drops_interior_points() {
        let h = convex_hull(&[pt(0, 0), pt(3, 0), pt(0, 2), pt(1, 1)]).unwrap();
        let p = h.as_polygon().unwrap();
        assert_eq!(p.vertices(), &[pt(0, 0), pt(3, 0), pt(0, 2)]);
    }

    #[test]
    fn hull_rejects_empty_input() {
        assert_eq!(convex_hull(&[]), Err(LatticeError::EmptyInput));
    }

    #[test]
    fn edges_carry_primitive_data() {
        let p = triangle(3, 2);
        let e = &p.edges()[0];
        assert_eq!(e.tangent, pt(1, 0));
        assert_eq!(e.normal, pt(0, 1));
        assert_eq!(e.length, 3);
        let hyp = &p.edges()[1];
        assert_eq!(hyp.tangent, pt(-3, 2).primitive().unwrap().0);
        assert_eq!(hyp.length, 1);
    }

    #[test]
    fn boundary_closes() {
        let p = LatticePolygon::from_vertices([pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 3)].into())
            .unwrap();
        let sum = p
            .edges()
            .iter()
            .fold(LatticePoint::ORIGIN, |acc, e| acc + e.tangent.scale(e.length));
        assert_eq!(sum, LatticePoint::ORIGIN);
    }

    #[test]
    fn classify_standard_triangle_of_ratio_two_three() {
        let p = LatticePolygon::from_vertices([pt(0, 0), pt(3, 0), pt(0, 2)].into()).unwrap();
        let (a, b, map) = classify_rectangular(&p).unwrap();
        assert_eq!((a, b), (2, 3));
        assert_eq!(p.apply_map(&map), triangle(2, 3));
    }

    #[test]
    fn classify_unit_triangle() {
        let p = triangle(1, 1);
        let (a, b, map) = classify_rectangular(&p).unwrap();
        assert_eq!((a, b), (1, 1));
        assert_eq!(p.apply_map(&map), triangle(1, 1));
    }

    #[test]
    fn classify_rejects_non_rectangular_triangle() {
        let p = LatticePolygon::from_vertices([pt(0, 0), pt(2, 0), pt(1, 2)].into()).unwrap();
        assert!(classify_rectangular(&p).is_none());
    }

    #[test]
    fn classify_matches_all_small_standard_triangles() {
        for a in 1..=20 {
            for b in 1..=20 {
                let p = triangle(a, b);
                let (x, y, map) = classify_rectangular(&p).unwrap();
                assert_eq!((x, y), (a.min(b), a.max(b)));
                assert_eq!(p.apply_map(&map), triangle(a.min(b), a.max(b)));
            }
        }
    }

    #[test]
    fn canonical_form_translates_to_origin() {
        let p = LatticePolygon::from_vertices([pt(5, 5), pt(8, 5), pt(5, 7)].into()).unwrap();
        let q = LatticePolygon::from_vertices([pt(0, 0), pt(3, 0), pt(0, 2)].into()).unwrap();
        assert_eq!(canonical_form(&p), canonical_form(&q));
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let p = LatticePolygon::from_vertices([pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 3)].into())
            .unwrap();
        let c = canonical_form(&p);
        assert_eq!(canonical_form(&c), c);
    }

    #[test]
    fn canonical_form_identifies_axis_swapped_triangles() {
        assert_eq!(canonical_form(&triangle(2, 3)), canonical_form(&triangle(3, 2)));
    }

    #[test]
    fn canonical_maps_realize_the_canonical_form() {
        let p = LatticePolygon::from_vertices([pt(2, 1), pt(5, 2), pt(3, 4)].into()).unwrap();
        let images: Vec<LatticePolygon> =
            canonical_maps(&p).iter().map(|m| p.apply_map(m)).collect();
        assert!(images.contains(&canonical_form(&p)));
        for (m, img) in canonical_maps(&p).iter().zip(&images) {
            assert_eq!(&p.apply_map(m), img);
            assert_eq!(img.apply_map(&m.inverse()), p);
        }
    }

    #[test]
    fn lattice_point_count_matches_closed_formula_for_coprime_sides() {
        for a in 1..=12i64 {
            for b in 1..=12i64 {
                if a.gcd(&b) != 1 {
                    continue;
                }
                let n = triangle(a, b).lattice_points().len() as i64;
                assert_eq!(n, (a * b + a + b + 3) / 2, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn map_inverse_roundtrips() {
        let m = UnimodularAffineMap::new([[2, 1], [1, 1]], pt(3, -4)).unwrap();
        let inv = m.inverse();
        let p = pt(7, -9);
        assert_eq!(inv.apply(&m.apply(&p)), p);
        assert_eq!(m.compose(&inv).apply(&p), p);
    }

    prop_compose! {
        fn arb_unimodular()(
            a in -10i64..=10, b in -10i64..=10, c in -10i64..=10, d in -10i64..=10,
            tx in -20i64..=20, ty in -20i64..=20,
        ) -> Option<UnimodularAffineMap> {
            UnimodularAffineMap::new([[a, b], [c, d]], pt(tx, ty)).ok()
        }
    }

    proptest! {
        #[test]
        fn canonical_form_is_orbit_invariant(
            map in arb_unimodular().prop_filter_map("unimodular", |m| m),
            a in 1i64..=5, b in 1i64..=5, shift in 0i64..=3,
        ) {
            let p = LatticePolygon::from_vertices(
                [pt(0, 0), pt(a, 0), pt(a, b + shift), pt(0, b)].into(),
            ).unwrap();
            prop_assert_eq!(canonical_form(&p.apply_map(&map)), canonical_form(&p));
        }

        #[test]
        fn hull_contains_its_input(points in proptest::collection::vec((-8i64..=8, -8i64..=8), 1..12)) {
            let pts: Vec<LatticePoint> = points.iter().map(|&(x, y)| pt(x, y)).collect();
            let h = convex_hull(&pts).unwrap();
            for p in &pts {
                prop_assert!(h.contains(p));
            }
        }
    }
}
