//! Divisibility tuples along polygon edges, required divisibility tuples,
//! divisibility steps, dual partitions, and reconstruction of a polynomial
//! from its required divisibility data.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{Coord, Edge, Hull, LatticePoint, LatticePolygon};
use crate::laurent::{binomial_multiplicity, LaurentPoly, Multiplicity};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisibilityError {
    NotTwoDimensional,
    BadEdgeIndex,
    EmptyPolynomial,
    InvalidPartition,
    ReducibleInput,
    InvalidFactorization,
    TupleMismatch,
}

impl fmt::Display for DivisibilityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisibilityError::NotTwoDimensional => {
                write!(f, "Newton polytope is not two-dimensional")
            }
            DivisibilityError::BadEdgeIndex => write!(f, "edge index out of range"),
            DivisibilityError::EmptyPolynomial => write!(f, "empty polynomial"),
            DivisibilityError::InvalidPartition => {
                write!(f, "parts do not form a partition of positive integers")
            }
            DivisibilityError::ReducibleInput => {
                write!(f, "reducible input, factorization required")
            }
            DivisibilityError::InvalidFactorization => {
                write!(f, "supplied factors do not multiply to the input")
            }
            DivisibilityError::TupleMismatch => {
                write!(f, "tuples do not match the edges of the polygon")
            }
        }
    }
}

impl core::error::Error for DivisibilityError {}

/// A weakly decreasing tuple of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Builds a partition from parts in any order; zero parts are rejected.
    pub fn new<I: IntoIterator<Item = u64>>(parts: I) -> Result<Self, DivisibilityError> {
        let mut parts: Vec<u64> = parts.into_iter().collect();
        if parts.contains(&0) {
            return Err(DivisibilityError::InvalidPartition);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// `|p|`, the sum of the parts.
    pub fn degree(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// `ℓ(p)`, the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn max_part(&self) -> u64 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Young-diagram transpose.
    pub fn conjugate(&self) -> Partition {
        let max = self.max_part();
        let parts = (1..=max)
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u64)
            .collect();
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Young-diagram transpose of a partition.
pub fn conjugate(p: &Partition) -> Partition {
    p.conjugate()
}

/// The pair of dual partitions of a polynomial on a standard triangle:
/// `a_part` is a partition of the length of the shorter leg labelled `a`,
/// `b_part` of the other leg.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualPair {
    pub a_part: Partition,
    pub b_part: Partition,
}

impl DualPair {
    pub fn new(a_part: Partition, b_part: Partition) -> Self {
        DualPair { a_part, b_part }
    }

    pub fn a(&self) -> u64 {
        self.a_part.degree()
    }

    pub fn b(&self) -> u64 {
        self.b_part.degree()
    }

    pub fn swap(&self) -> DualPair {
        DualPair { a_part: self.b_part.clone(), b_part: self.a_part.clone() }
    }
}

impl fmt::Display for DualPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a_part, self.b_part)
    }
}

/// Divisibility orders of a polynomial along the level sets of one edge's
/// inner normal, indexed by consecutive absolute levels starting at the
/// edge itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivTuple {
    pub edge: usize,
    pub k_min: Coord,
    pub values: Vec<Multiplicity>,
}

impl DivTuple {
    pub fn k_max(&self) -> Coord {
        self.k_min + self.values.len() as Coord - 1
    }

    pub fn value_at(&self, k: Coord) -> Option<Multiplicity> {
        if k < self.k_min || k > self.k_max() {
            return None;
        }
        Some(self.values[(k - self.k_min) as usize])
    }

    pub fn min_value(&self) -> Option<Multiplicity> {
        self.values.iter().min().copied()
    }
}

/// Static slice data for one polygon: lattice points, and for every edge
/// the level decomposition along its inner normal.
struct Layout {
    poly: LatticePolygon,
    points: Vec<LatticePoint>,
    edges: Vec<Edge>,
    /// For each edge: levels in increasing order; each level lists
    /// `(point index, offset along the primitive tangent from the slice
    /// minimum)`.
    levels: Vec<Vec<LevelSlice>>,
    /// For each edge, the smallest edge index with the same inner normal up
    /// to sign; parallel edges share their constraint data.
    parallel_rep: Vec<usize>,
}

struct LevelSlice {
    k: Coord,
    pts: Vec<(usize, u64)>,
}

impl Layout {
    fn new(f: &LaurentPoly) -> Result<Layout, DivisibilityError> {
        if f.is_zero() {
            return Err(DivisibilityError::EmptyPolynomial);
        }
        let hull = f.newton().expect("nonzero polynomial");
        let poly = match hull {
            Hull::Polygon(p) => p,
            _ => return Err(DivisibilityError::NotTwoDimensional),
        };
        Ok(Layout::from_polygon(poly))
    }

    fn from_polygon(poly: LatticePolygon) -> Layout {
        let points = poly.lattice_points();
        let edges = poly.edges();
        let mut levels = Vec::with_capacity(edges.len());
        for e in &edges {
            let values: Vec<Coord> = points.iter().map(|p| e.normal.dot(p)).collect();
            let k_min = *values.iter().min().unwrap();
            let k_max = *values.iter().max().unwrap();
            let norm2 = e.tangent.dot(&e.tangent);
            let mut slices = Vec::new();
            for k in k_min..=k_max {
                let mut pts: Vec<(usize, Coord)> = points
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| values[*i] == k)
                    .map(|(i, p)| (i, e.tangent.dot(p)))
                    .collect();
                pts.sort_by_key(|&(_, t)| t);
                let base = pts.first().map(|&(_, t)| t).unwrap_or(0);
                // Slice points sit at p_min + t * tangent, so raw dot
                // products are spaced by |tangent|^2.
                let pts = pts
                    .into_iter()
                    .map(|(i, t)| {
                        debug_assert_eq!((t - base) % norm2, 0);
                        (i, ((t - base) / norm2) as u64)
                    })
                    .collect();
                slices.push(LevelSlice { k, pts });
            }
            levels.push(slices);
        }
        let parallel_rep = (0..edges.len())
            .map(|i| {
                (0..=i)
                    .find(|&j| {
                        edges[j].normal == edges[i].normal || edges[j].normal == -edges[i].normal
                    })
                    .unwrap()
            })
            .collect();
        Layout { poly, points, edges, levels, parallel_rep }
    }

    fn point_index(&self, p: &LatticePoint) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    /// The coefficient-space row of the constraint "the slice polynomial of
    /// edge `e` at level index `li` vanishes at -1 to derivative order `j`".
    fn functional_row(&self, e: usize, li: usize, j: u64) -> Vec<BigInt> {
        let mut row = alloc::vec![BigInt::zero(); self.points.len()];
        for &(pi, t) in &self.levels[e][li].pts {
            if t >= j {
                let sign = if (t - j).is_multiple_of(2) { 1 } else { -1 };
                row[pi] = binomial(t, j) * sign;
            }
        }
        row
    }

    fn div_profile(&self, f: &LaurentPoly, e: usize) -> DivTuple {
        let tangent = self.edges[e].tangent;
        let values = self.levels[e]
            .iter()
            .map(|slice| {
                let g = LaurentPoly::from_terms(
                    slice.pts.iter().map(|&(pi, _)| {
                        (self.points[pi], f.coeff(&self.points[pi]))
                    }),
                );
                if g.is_zero() {
                    Multiplicity::Infinite
                } else {
                    binomial_multiplicity(&g, &tangent).expect("slice support is collinear")
                }
            })
            .collect();
        DivTuple { edge: e, k_min: self.levels[e][0].k, values }
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Reduced row echelon form over the rationals; returns pivot columns.
fn rref(rows: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    let sub = &factor * y;
                    *x = &*x - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Basis of the right nullspace of an integer matrix.
fn nullspace(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let pivots = rref(&mut m, cols);
    let pivot_of_col: BTreeMap<usize, usize> =
        pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col.contains_key(&free) {
            continue;
        }
        let mut v = alloc::vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (&c, &r) in &pivot_of_col {
            v[c] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Divisibility tuple of `f` with respect to edge `edge` of its Newton
/// polygon: for each level of the edge's inner normal, the multiplicity of
/// `1 + z^{m_e}` in the slice, with `∞` for vanishing slices.
pub fn div_tuple(f: &LaurentPoly, edge: usize) -> Result<DivTuple, DivisibilityError> {
    let layout = Layout::new(f)?;
    if edge >= layout.edges.len() {
        return Err(DivisibilityError::BadEdgeIndex);
    }
    Ok(layout.div_profile(f, edge))
}

/// The required divisibility tuples of `f` over all edges. The maximal
/// convex minorant below is unique, so `unique` is always true; the field
/// stays so callers can surface the claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReqDiv {
    pub tuples: Vec<DivTuple>,
    pub unique: bool,
}

/// The componentwise-largest integer sequence `c` with `c <= div` and
/// `2 c_k <= c_{k-1} + c_{k+1}` at interior levels. Infinite entries do not
/// constrain; the boundary entries are finite because edge vertices carry
/// nonzero coefficients.
fn convex_minorant(div: &[Multiplicity]) -> Vec<u64> {
    let first = div.first().and_then(|v| v.finite()).expect("edge level is finite");
    let last = div.last().and_then(|v| v.finite()).expect("edge level is finite");
    let cap = first.max(last);
    let mut c: Vec<u64> = div
        .iter()
        .map(|v| match v {
            Multiplicity::Finite(d) => *d,
            Multiplicity::Infinite => cap,
        })
        .collect();
    loop {
        let mut changed = false;
        for k in 1..c.len().saturating_sub(1) {
            let bound = (c[k - 1] + c[k + 1]) / 2;
            if c[k] > bound {
                c[k] = bound;
                changed = true;
            }
        }
        if !changed {
            return c;
        }
    }
}

/// Required divisibility tuples: per edge, the componentwise-largest convex
/// tuple below the divisibility tuple. All entries are finite, and tuples of
/// parallel edges are reverses of each other.
pub fn reqdiv(f: &LaurentPoly) -> Result<ReqDiv, DivisibilityError> {
    let layout = Layout::new(f)?;
    let tuples = (0..layout.edges.len())
        .map(|e| {
            let div = layout.div_profile(f, e);
            let values = convex_minorant(&div.values)
                .into_iter()
                .map(Multiplicity::Finite)
                .collect();
            DivTuple { edge: e, k_min: div.k_min, values }
        })
        .collect();
    Ok(ReqDiv { tuples, unique: true })
}

/// The required divisibility tuple of one edge; see [`reqdiv`].
pub fn reqdiv_tuple(f: &LaurentPoly, edge: usize) -> Result<DivTuple, DivisibilityError> {
    let all = reqdiv(f)?;
    all.tuples.into_iter().nth(edge).ok_or(DivisibilityError::BadEdgeIndex)
}

fn divstep_of_tuple(t: &DivTuple) -> Result<Partition, DivisibilityError> {
    let finite: Vec<u64> = t
        .values
        .iter()
        .map(|v| v.finite().ok_or(DivisibilityError::ReducibleInput))
        .collect::<Result<_, _>>()?;
    let Some(zero_at) = finite.iter().position(|&d| d == 0) else {
        return Err(DivisibilityError::ReducibleInput);
    };
    let mut parts = Vec::with_capacity(zero_at);
    for k in 0..zero_at {
        let step = finite[k]
            .checked_sub(finite[k + 1])
            .ok_or(DivisibilityError::InvalidPartition)?;
        parts.push(step);
    }
    Partition::new(parts)
}

/// Divisibility steps of `f` with respect to edge `edge`: successive
/// differences of the required divisibility tuple up to its first zero.
/// Reducible input needs an explicit factorization into irreducibles;
/// factors with less than two-dimensional Newton polytope, or whose minimal
/// face in the edge direction is a vertex, contribute nothing.
pub fn divstep(
    f: &LaurentPoly,
    edge: usize,
    factorization: Option<&[LaurentPoly]>,
) -> Result<Partition, DivisibilityError> {
    let layout = Layout::new(f)?;
    if edge >= layout.edges.len() {
        return Err(DivisibilityError::BadEdgeIndex);
    }
    let normal = layout.edges[edge].normal;
    match factorization {
        None => {
            let tuple = reqdiv_tuple(f, edge)?;
            divstep_of_tuple(&tuple)
        }
        Some(factors) => {
            let product = factors
                .iter()
                .fold(LaurentPoly::one(), |acc, g| &acc * g);
            if product != *f {
                return Err(DivisibilityError::InvalidFactorization);
            }
            let mut parts: Vec<u64> = Vec::new();
            for g in factors {
                let hull = g.newton().map_err(|_| DivisibilityError::InvalidFactorization)?;
                let Hull::Polygon(gp) = hull else { continue };
                let Some(gedge) = gp.edges().iter().position(|ge| ge.normal == normal) else {
                    continue;
                };
                let tuple = reqdiv_tuple(g, gedge)?;
                let step = divstep_of_tuple(&tuple)?;
                parts.extend_from_slice(step.parts());
            }
            Partition::new(parts)
        }
    }
}

/// Locates the standard-position data of a triangle `Conv{(0,0),(A,0),(0,B)}`
/// and returns `(A, B, bottom edge index, left edge index)`.
pub(crate) fn standard_triangle_edges(
    poly: &LatticePolygon,
) -> Option<(Coord, Coord, usize, usize)> {
    let vs = poly.vertices();
    if vs.len() != 3 || vs[0] != LatticePoint::ORIGIN {
        return None;
    }
    let edges = poly.edges();
    let bottom = edges
        .iter()
        .position(|e| e.from.y == 0 && e.to.y == 0 && e.from.x.min(e.to.x) == 0)?;
    let left = edges
        .iter()
        .position(|e| e.from.x == 0 && e.to.x == 0 && e.from.y.min(e.to.y) == 0)?;
    let a = edges[bottom].length;
    let b = edges[left].length;
    if vs.contains(&LatticePoint::new(a, 0)) && vs.contains(&LatticePoint::new(0, b)) {
        Some((a, b, bottom, left))
    } else {
        None
    }
}

/// The dual pair of a polynomial supported on a standard triangle
/// `Conv{(0,0),(a,0),(0,b)}`: conjugates of the divisibility steps of the
/// two legs, the horizontal leg contributing the partition of `a`.
pub fn dual_pair(f: &LaurentPoly) -> Result<DualPair, DivisibilityError> {
    let layout = Layout::new(f)?;
    let (_, _, bottom, left) = standard_triangle_edges(&layout.poly)
        .ok_or(DivisibilityError::NotTwoDimensional)?;
    let a_part = divstep(f, bottom, None)?.conjugate();
    let b_part = divstep(f, left, None)?.conjugate();
    Ok(DualPair { a_part, b_part })
}

/// Total of the required divisibility entries over all edges, counting each
/// parallel class once.
pub fn reqdiv_total(f: &LaurentPoly) -> Result<u64, DivisibilityError> {
    let layout = Layout::new(f)?;
    let req = reqdiv(f)?;
    let mut total = 0;
    for (e, tuple) in req.tuples.iter().enumerate() {
        if layout.parallel_rep[e] != e {
            continue;
        }
        total += tuple
            .values
            .iter()
            .map(|v| v.finite().expect("required divisibility is finite"))
            .sum::<u64>();
    }
    Ok(total)
}

/// Per-edge convexity of the required divisibility tuples and the
/// comparison of their total with the lattice point count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroMutReport {
    pub convex_per_edge: Vec<bool>,
    pub reqdiv_total: u64,
    pub lattice_point_count: u64,
    pub totals_match: bool,
}

pub fn verify_zeromut_props(f: &LaurentPoly) -> Result<ZeroMutReport, DivisibilityError> {
    let layout = Layout::new(f)?;
    let req = reqdiv(f)?;
    let convex_per_edge = req
        .tuples
        .iter()
        .map(|t| {
            let d: Vec<i128> = t
                .values
                .iter()
                .map(|v| v.finite().expect("finite") as i128)
                .collect();
            (1..d.len().saturating_sub(1))
                .all(|k| d[k] - d[k - 1] <= d[k + 1] - d[k])
        })
        .collect();
    let total = reqdiv_total(f)?;
    let count = layout.points.len() as u64;
    Ok(ZeroMutReport {
        convex_per_edge,
        reqdiv_total: total,
        lattice_point_count: count,
        totals_match: total == count,
    })
}

/// Reconstructs the polynomial with the given required divisibility tuples
/// on the given polygon: the solution space of all derivative-vanishing
/// constraints must be one-dimensional, integral after normalizing the
/// first vertex coefficient to one, and supported on the full polygon.
pub fn reconstruct_from_reqdiv(
    polygon: &LatticePolygon,
    tuples: &[DivTuple],
) -> Result<Option<LaurentPoly>, DivisibilityError> {
    let layout = Layout::from_polygon(polygon.clone());
    if tuples.len() != layout.edges.len() {
        return Err(DivisibilityError::TupleMismatch);
    }
    let mut rows = Vec::new();
    for (e, tuple) in tuples.iter().enumerate() {
        if tuple.values.len() != layout.levels[e].len()
            || tuple.k_min != layout.levels[e][0].k
        {
            return Err(DivisibilityError::TupleMismatch);
        }
        for (li, v) in tuple.values.iter().enumerate() {
            let order = v.finite().ok_or(DivisibilityError::TupleMismatch)?;
            for j in 0..order {
                rows.push(layout.functional_row(e, li, j));
            }
        }
    }
    let basis = nullspace(&rows, layout.points.len());
    if basis.len() != 1 {
        return Ok(None);
    }
    let v = &basis[0];
    let first_vertex = layout
        .point_index(&layout.poly.vertices()[0])
        .expect("vertex is a lattice point");
    if v[first_vertex].is_zero() {
        return Ok(None);
    }
    let scale = v[first_vertex].clone();
    let mut terms = Vec::new();
    for (pi, p) in layout.points.iter().enumerate() {
        let c = &v[pi] / &scale;
        if !c.denom().is_one() || c.numer().is_negative() {
            return Ok(None);
        }
        if !c.numer().is_zero() {
            terms.push((*p, c.numer().clone()));
        }
    }
    let f = LaurentPoly::from_terms(terms);
    for vert in layout.poly.vertices() {
        if f.coeff(vert).is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::AffineFunctional;

    fn pt(x: Coord, y: Coord) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    fn poly(terms: &[(Coord, Coord, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(x, y, c)| (pt(x, y), BigInt::from(c))))
    }

    /// `(1+x)^3 + 2y(1+x) + y^2`, drawn with the length-3 leg horizontal.
    fn tom_wide() -> LaurentPoly {
        poly(&[(0, 0, 1), (1, 0, 3), (2, 0, 3), (3, 0, 1), (0, 1, 2), (1, 1, 2), (0, 2, 1)])
    }

    /// Tom in standard position on `Conv{(0,0),(2,0),(0,3)}`.
    fn tom() -> LaurentPoly {
        tom_wide().transpose()
    }

    /// `(1+x)^3 + y(2+3x) + y^2`, drawn with the length-3 leg horizontal.
    fn jerry_wide() -> LaurentPoly {
        poly(&[(0, 0, 1), (1, 0, 3), (2, 0, 3), (3, 0, 1), (0, 1, 2), (1, 1, 3), (0, 2, 1)])
    }

    fn jerry() -> LaurentPoly {
        jerry_wide().transpose()
    }

    fn fin(vals: &[u64]) -> Vec<Multiplicity> {
        vals.iter().map(|&v| Multiplicity::Finite(v)).collect()
    }

    fn edge_index_with_normal(f: &LaurentPoly, normal: LatticePoint) -> usize {
        let Hull::Polygon(p) = f.newton().unwrap() else { panic!("not a polygon") };
        p.edges().iter().position(|e| e.normal == normal).unwrap()
    }

    #[test]
    fn tom_divisibility_tuples() {
        let f = tom_wide();
        let bottom = edge_index_with_normal(&f, pt(0, 1));
        let t = div_tuple(&f, bottom).unwrap();
        assert_eq!(t.values, fin(&[3, 1, 0]));
        let left = edge_index_with_normal(&f, pt(1, 0));
        let t = div_tuple(&f, left).unwrap();
        assert_eq!(t.values, fin(&[2, 0, 0, 0]));
    }

    #[test]
    fn infinite_divisibility_at_an_empty_level() {
        // (1+x)^2 + x y^2 on Conv{(0,0),(2,0),(1,2)}: the middle row is empty.
        let f = poly(&[(0, 0, 1), (1, 0, 2), (2, 0, 1), (1, 2, 1)]);
        let bottom = edge_index_with_normal(&f, pt(0, 1));
        let t = div_tuple(&f, bottom).unwrap();
        assert_eq!(
            t.values,
            alloc::vec![
                Multiplicity::Finite(2),
                Multiplicity::Infinite,
                Multiplicity::Finite(0)
            ]
        );
    }

    #[test]
    fn tom_required_divisibility_equals_divisibility() {
        // Equal on every populated level; levels without lattice points have
        // trivially infinite divisibility and required order zero.
        let f = tom_wide();
        let req = reqdiv(&f).unwrap();
        assert!(req.unique);
        for (e, tuple) in req.tuples.iter().enumerate() {
            let div = div_tuple(&f, e).unwrap();
            for (r, d) in tuple.values.iter().zip(div.values.iter()) {
                match d {
                    Multiplicity::Finite(_) => assert_eq!(r, d, "edge {e}"),
                    Multiplicity::Infinite => {
                        assert_eq!(*r, Multiplicity::Finite(0), "edge {e}")
                    }
                }
            }
        }
    }

    #[test]
    fn infinite_level_forces_one_required_order() {
        let f = poly(&[(0, 0, 1), (1, 0, 2), (2, 0, 1), (1, 2, 1)]);
        let bottom = edge_index_with_normal(&f, pt(0, 1));
        let t = reqdiv_tuple(&f, bottom).unwrap();
        assert_eq!(t.values, fin(&[2, 1, 0]));
    }

    #[test]
    fn tom_divisibility_steps() {
        let f = tom_wide();
        let bottom = edge_index_with_normal(&f, pt(0, 1));
        let left = edge_index_with_normal(&f, pt(1, 0));
        let hyp = 3 - bottom - left;
        assert_eq!(divstep(&f, bottom, None).unwrap(), Partition::new([2, 1]).unwrap());
        assert_eq!(divstep(&f, left, None).unwrap(), Partition::new([2]).unwrap());
        assert_eq!(divstep(&f, hyp, None).unwrap(), Partition::new([1]).unwrap());
    }

    #[test]
    fn jerry_divisibility_steps() {
        let f = jerry_wide();
        let bottom = edge_index_with_normal(&f, pt(0, 1));
        let left = edge_index_with_normal(&f, pt(1, 0));
        let hyp = 3 - bottom - left;
        assert_eq!(divstep(&f, bottom, None).unwrap(), Partition::new([3]).unwrap());
        assert_eq!(divstep(&f, left, None).unwrap(), Partition::new([1, 1]).unwrap());
        assert_eq!(divstep(&f, hyp, None).unwrap(), Partition::new([1]).unwrap());
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(
            Partition::new([2, 1]).unwrap().conjugate(),
            Partition::new([2, 1]).unwrap()
        );
        assert_eq!(
            Partition::new([3]).unwrap().conjugate(),
            Partition::new([1, 1, 1]).unwrap()
        );
        let p = Partition::new([4, 2, 1]).unwrap();
        assert_eq!(p.conjugate().conjugate(), p);
    }

    #[test]
    fn tom_and_jerry_dual_pairs() {
        let tom_pair = dual_pair(&tom()).unwrap();
        assert_eq!(tom_pair.a_part, Partition::new([1, 1]).unwrap());
        assert_eq!(tom_pair.b_part, Partition::new([2, 1]).unwrap());
        let jerry_pair = dual_pair(&jerry()).unwrap();
        assert_eq!(jerry_pair.a_part, Partition::new([2]).unwrap());
        assert_eq!(jerry_pair.b_part, Partition::new([1, 1, 1]).unwrap());
    }

    #[test]
    fn tom_reqdiv_total_is_lattice_point_count() {
        let report = verify_zeromut_props(&tom()).unwrap();
        assert_eq!(report.reqdiv_total, 7);
        assert_eq!(report.lattice_point_count, 7);
        assert!(report.totals_match);
        assert!(report.convex_per_edge.iter().all(|&c| c));
    }

    #[test]
    fn reducible_input_requires_factorization() {
        // (1 + x + y(1+x)) * (1+x) has a binomial factor along x.
        let g = poly(&[(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]);
        let h = LaurentPoly::one_plus(pt(1, 0));
        let f = &g * &h;
        let bottom = edge_index_with_normal(&f, pt(0, 1));
        assert_eq!(divstep(&f, bottom, None), Err(DivisibilityError::ReducibleInput));
    }

    #[test]
    fn quad_product_divisibility_steps_concatenate_factors() {
        // g on Conv{(0,0),(2,0),(2,1),(0,2)} times the segment factor 1+y.
        let g = poly(&[(0, 0, 1), (1, 0, 2), (2, 0, 1), (0, 1, 2), (1, 1, 3), (2, 1, 1), (0, 2, 1)]);
        let seg = LaurentPoly::one_plus(pt(0, 1));
        let f = &g * &seg;
        let left = edge_index_with_normal(&f, pt(1, 0));
        let right = edge_index_with_normal(&f, pt(-1, 0));
        assert_eq!(div_tuple(&f, left).unwrap().values, fin(&[3, 1, 2]));
        assert_eq!(div_tuple(&f, right).unwrap().values, fin(&[2, 1, 3]));
        let factors = [g.clone(), seg.clone()];
        assert_eq!(
            divstep(&f, left, Some(&factors)).unwrap(),
            Partition::new([2]).unwrap()
        );
        assert_eq!(
            divstep(&f, right, Some(&factors)).unwrap(),
            Partition::new([1]).unwrap()
        );
        // The irreducible factor alone: required divisibility past the first
        // zero is ignored by the step computation.
        let gleft = edge_index_with_normal(&g, pt(1, 0));
        assert_eq!(reqdiv_tuple(&g, gleft).unwrap().values, fin(&[2, 0, 1]));
        assert_eq!(divstep(&g, gleft, None).unwrap(), Partition::new([2]).unwrap());
    }

    /// A degree (5,7) zero mutable Laurent polynomial whose bottom edge has
    /// required divisibility strictly below divisibility.
    fn big_triangle_example() -> LaurentPoly {
        let rows: [&[i64]; 6] = [
            &[1, 7, 21, 35, 35, 21, 7, 1],
            &[5, 25, 50, 50, 25, 5],
            &[10, 33, 37, 15, 1],
            &[10, 19, 8],
            &[5, 4],
            &[1],
        ];
        LaurentPoly::from_terms(rows.iter().enumerate().flat_map(|(y, row)| {
            row.iter()
                .enumerate()
                .map(move |(x, &c)| (pt(x as Coord, y as Coord), BigInt::from(c)))
        }))
    }

    #[test]
    fn big_triangle_required_divisibility_drops_below_divisibility() {
        let f = big_triangle_example();
        let bottom = edge_index_with_normal(&f, pt(0, 1));
        let left = edge_index_with_normal(&f, pt(1, 0));
        assert_eq!(div_tuple(&f, bottom).unwrap().values, fin(&[7, 5, 2, 0, 0, 0]));
        assert_eq!(
            reqdiv_tuple(&f, bottom).unwrap().values,
            fin(&[7, 4, 2, 0, 0, 0])
        );
        assert_eq!(div_tuple(&f, left).unwrap().values, fin(&[5, 3, 2, 1, 0, 0, 0, 0]));
        assert_eq!(
            reqdiv_tuple(&f, left).unwrap().values,
            fin(&[5, 3, 2, 1, 0, 0, 0, 0])
        );
        assert_eq!(
            divstep(&f, bottom, None).unwrap(),
            Partition::new([3, 2, 2]).unwrap()
        );
        assert_eq!(
            divstep(&f, left, None).unwrap(),
            Partition::new([2, 1, 1, 1]).unwrap()
        );
        let report = verify_zeromut_props(&f).unwrap();
        assert_eq!(report.reqdiv_total, 25);
        assert!(report.totals_match);
    }

    #[test]
    fn reconstruct_big_triangle_from_tuples() {
        let f = big_triangle_example();
        let Hull::Polygon(p) = f.newton().unwrap() else { panic!() };
        let req = reqdiv(&f).unwrap();
        assert_eq!(reconstruct_from_reqdiv(&p, &req.tuples).unwrap(), Some(f));
    }

    #[test]
    fn reconstruct_tom_and_jerry_from_tuples() {
        for f in [tom(), jerry()] {
            let Hull::Polygon(p) = f.newton().unwrap() else { panic!() };
            let req = reqdiv(&f).unwrap();
            let rebuilt = reconstruct_from_reqdiv(&p, &req.tuples).unwrap();
            assert_eq!(rebuilt, Some(f));
        }
    }

    #[test]
    fn reqdiv_of_parallel_edges_are_reverses() {
        let g = poly(&[(0, 0, 1), (1, 0, 2), (2, 0, 1), (0, 1, 2), (1, 1, 3), (2, 1, 1), (0, 2, 1)]);
        let f = &g * &LaurentPoly::one_plus(pt(0, 1));
        let req = reqdiv(&f).unwrap();
        let left = edge_index_with_normal(&f, pt(1, 0));
        let right = edge_index_with_normal(&f, pt(-1, 0));
        let mut rev = req.tuples[left].values.clone();
        rev.reverse();
        assert_eq!(req.tuples[right].values, rev);
    }

    #[test]
    fn suffix_sums_of_divsteps_recover_reqdiv_on_legs() {
        for f in [tom(), jerry()] {
            let Hull::Polygon(p) = f.newton().unwrap() else { panic!() };
            let (_, _, bottom, left) = standard_triangle_edges(&p).unwrap();
            for e in [bottom, left] {
                let req = reqdiv_tuple(&f, e).unwrap();
                let step = divstep(&f, e, None).unwrap();
                let levels = req.values.len();
                // d_k is the sum of the steps s_l for l >= k.
                let expect: Vec<u64> = (0..levels)
                    .map(|k| step.parts().iter().skip(k).sum())
                    .collect();
                let got: Vec<u64> = req.values.iter().map(|v| v.finite().unwrap()).collect();
                assert_eq!(got, expect, "edge {e}");
            }
        }
    }

    #[test]
    fn slices_and_tuples_agree_on_levels() {
        let f = tom();
        let Hull::Polygon(p) = f.newton().unwrap() else { panic!() };
        for (e, edge) in p.edges().iter().enumerate() {
            let t = div_tuple(&f, e).unwrap();
            let phi = AffineFunctional::new(edge.normal, 0);
            for k in t.k_min..=t.k_max() {
                let slice = f.slice_at(&phi, k);
                let expected = if slice.is_zero() {
                    Multiplicity::Infinite
                } else {
                    binomial_multiplicity(&slice, &edge.tangent).unwrap()
                };
                assert_eq!(t.value_at(k).unwrap(), expected);
            }
        }
    }

    #[test]
    fn reconstruct_rejects_inconsistent_tuples() {
        let f = tom();
        let Hull::Polygon(p) = f.newton().unwrap() else { panic!() };
        let mut tuples = reqdiv(&f).unwrap().tuples;
        // Demand full vanishing orders everywhere: only 0 survives.
        for t in tuples.iter_mut() {
            for v in t.values.iter_mut() {
                *v = Multiplicity::Finite(4);
            }
        }
        assert_eq!(reconstruct_from_reqdiv(&p, &tuples).unwrap(), None);
    }

    #[test]
    fn partition_rejects_zero_parts() {
        assert_eq!(Partition::new([2, 0]), Err(DivisibilityError::InvalidPartition));
        assert!(Partition::new([]).unwrap().is_empty());
    }

    #[test]
    fn degenerate_support_is_rejected() {
        assert_eq!(reqdiv_total(&LaurentPoly::one()), Err(DivisibilityError::NotTwoDimensional));
        let seg = LaurentPoly::one_plus(pt(1, 0));
        assert_eq!(reqdiv(&seg), Err(DivisibilityError::NotTwoDimensional));
    }
}
