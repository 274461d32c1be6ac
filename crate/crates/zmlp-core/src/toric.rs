//! Cones over lattice polygons and the toric data attached to zero mutable
//! Laurent polynomials: dual cones, central and star subdivisions, cyclic
//! quotient singularity types, wall functions, and divisorial-extraction
//! certificates for dual pairs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::divisibility::{divstep, DivisibilityError, DualPair, Partition};
use crate::lattice::{LatticePoint, LatticePolygon};
use crate::laurent::LaurentPoly;
use crate::mutation::{alpha_inv_pair, beta_pair};
use crate::zmlp::TriangularMove;

/// An integer vector in the rank three lattice of a toric threefold.
pub type Vector3 = [i64; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToricError {
    DegenerateCone,
    NotFullDimensional,
    NotPointed,
    NotSimplicial,
    NonCyclicQuotient,
    ApexNotInterior,
    RayOutsideSupport,
    OverlappingCones,
    NonPositiveSection,
}

impl fmt::Display for ToricError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToricError::DegenerateCone => write!(f, "degenerate cone"),
            ToricError::NotFullDimensional => write!(f, "cone is not full-dimensional"),
            ToricError::NotPointed => write!(f, "cone contains a line"),
            ToricError::NotSimplicial => write!(f, "cone is not simplicial"),
            ToricError::NonCyclicQuotient => write!(f, "non-cyclic quotient"),
            ToricError::ApexNotInterior => write!(f, "apex is not interior to the cone"),
            ToricError::RayOutsideSupport => write!(f, "ray lies outside the fan support"),
            ToricError::OverlappingCones => write!(f, "cones overlap in their interiors"),
            ToricError::NonPositiveSection => {
                write!(f, "section functional is not positive on every ray")
            }
        }
    }
}

impl core::error::Error for ToricError {}

fn dot3(u: &Vector3, v: &Vector3) -> i64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

fn cross3(u: &Vector3, v: &Vector3) -> Vector3 {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn neg3(v: &Vector3) -> Vector3 {
    [-v[0], -v[1], -v[2]]
}

/// The triple product, equal to the determinant of the matrix with rows
/// (equivalently columns) `u`, `v`, `w`.
fn det3(u: &Vector3, v: &Vector3, w: &Vector3) -> i64 {
    dot3(u, &cross3(v, w))
}

fn primitive3(v: &Vector3) -> Option<Vector3> {
    let g = v[0].abs().gcd(&v[1].abs()).gcd(&v[2].abs());
    if g == 0 {
        None
    } else {
        Some([v[0] / g, v[1] / g, v[2] / g])
    }
}

fn rank3<'a, I: IntoIterator<Item = &'a Vector3>>(vs: I) -> usize {
    let mut basis: Vec<Vector3> = Vec::new();
    for v in vs {
        let ok = match basis.len() {
            0 => *v != [0, 0, 0],
            1 => cross3(&basis[0], v) != [0, 0, 0],
            2 => det3(&basis[0], &basis[1], v) != 0,
            _ => return 3,
        };
        if ok {
            basis.push(*v);
        }
    }
    basis.len()
}

/// A rational polyhedral cone in rank three, stored by a sorted list of
/// primitive ray generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone3 {
    rays: Vec<Vector3>,
}

impl Cone3 {
    pub fn new<I: IntoIterator<Item = Vector3>>(rays: I) -> Result<Self, ToricError> {
        let mut out: Vec<Vector3> = Vec::new();
        for r in rays {
            let p = primitive3(&r).ok_or(ToricError::DegenerateCone)?;
            out.push(p);
        }
        if out.is_empty() {
            return Err(ToricError::DegenerateCone);
        }
        out.sort();
        out.dedup();
        Ok(Cone3 { rays: out })
    }

    pub fn rays(&self) -> &[Vector3] {
        &self.rays
    }

    pub fn rank(&self) -> usize {
        rank3(self.rays.iter())
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.rank()
    }

    /// Primitive inner normals of the facets. Requires a full-dimensional
    /// pointed cone.
    pub fn facet_normals(&self) -> Result<Vec<Vector3>, ToricError> {
        if self.rank() < 3 {
            return Err(ToricError::NotFullDimensional);
        }
        let mut normals: Vec<Vector3> = Vec::new();
        for (i, u) in self.rays.iter().enumerate() {
            for v in self.rays.iter().skip(i + 1) {
                let Some(n) = primitive3(&cross3(u, v)) else {
                    continue;
                };
                let n = if self.rays.iter().all(|r| dot3(&n, r) >= 0) {
                    n
                } else if self.rays.iter().all(|r| dot3(&n, r) <= 0) {
                    neg3(&n)
                } else {
                    continue;
                };
                let on: Vec<&Vector3> = self.rays.iter().filter(|r| dot3(&n, r) == 0).collect();
                if rank3(on) == 2 {
                    normals.push(n);
                }
            }
        }
        normals.sort();
        normals.dedup();
        if rank3(normals.iter()) < 3 {
            return Err(ToricError::NotPointed);
        }
        Ok(normals)
    }

    /// Whether the cone contains the vector. Requires a full-dimensional
    /// pointed cone.
    pub fn contains(&self, v: &Vector3) -> Result<bool, ToricError> {
        let normals = self.facet_normals()?;
        Ok(normals.iter().all(|n| dot3(n, v) >= 0))
    }

    /// The generators that span extreme rays, in sorted order.
    pub fn extreme_rays(&self) -> Result<Vec<Vector3>, ToricError> {
        let normals = self.facet_normals()?;
        Ok(self
            .rays
            .iter()
            .filter(|r| {
                let on: Vec<Vector3> = normals
                    .iter()
                    .filter(|n| dot3(n, r) == 0)
                    .copied()
                    .collect();
                rank3(on.iter()) == 2
            })
            .copied()
            .collect())
    }

    /// Facets as pairs of extreme rays with their inner normals.
    fn facets(&self) -> Result<Vec<(Vector3, [Vector3; 2])>, ToricError> {
        let normals = self.facet_normals()?;
        let extreme = self.extreme_rays()?;
        let mut out = Vec::new();
        for n in normals {
            let on: Vec<Vector3> = extreme
                .iter()
                .filter(|r| dot3(&n, r) == 0)
                .copied()
                .collect();
            if on.len() != 2 {
                return Err(ToricError::DegenerateCone);
            }
            out.push((n, [on[0], on[1]]));
        }
        Ok(out)
    }

    /// Extreme rays in cyclic order around the cone.
    fn ordered_extreme_rays(&self) -> Result<Vec<Vector3>, ToricError> {
        let extreme = self.extreme_rays()?;
        let facets = self.facets()?;
        let mut neighbors: BTreeMap<Vector3, Vec<Vector3>> = BTreeMap::new();
        for (_, [u, v]) in &facets {
            neighbors.entry(*u).or_default().push(*v);
            neighbors.entry(*v).or_default().push(*u);
        }
        let start = extreme[0];
        let mut order = alloc::vec![start];
        let mut prev = start;
        let mut cur = neighbors[&start][0];
        while cur != start {
            order.push(cur);
            let next = *neighbors[&cur]
                .iter()
                .find(|r| **r != prev)
                .ok_or(ToricError::DegenerateCone)?;
            prev = cur;
            cur = next;
        }
        if order.len() != extreme.len() {
            return Err(ToricError::DegenerateCone);
        }
        Ok(order)
    }

    /// Determinant of the generators of a simplicial full-dimensional cone.
    pub fn det(&self) -> Option<i64> {
        match self.rays.as_slice() {
            [u, v, w] => Some(det3(u, v, w)),
            _ => None,
        }
    }
}

impl fmt::Display for Cone3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{},{},{}", r[0], r[1], r[2])?;
        }
        Ok(())
    }
}

/// The cone over a polygon placed at height one.
pub fn cone_over(poly: &LatticePolygon) -> Cone3 {
    Cone3::new(poly.vertices().iter().map(|v| [v.x, v.y, 1]))
        .expect("height-one rays are nonzero")
}

/// The dual cone of a full-dimensional pointed cone, generated by the facet
/// normals.
pub fn dual_cone(cone: &Cone3) -> Result<Cone3, ToricError> {
    Cone3::new(cone.facet_normals()?)
}

/// A fan stored by its maximal cones. Construction checks that the cones are
/// full-dimensional, pointed, and pairwise separated by a hyperplane, so no
/// two of them overlap in their interiors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan3 {
    cones: Vec<Cone3>,
}

impl Fan3 {
    pub fn new(cones: Vec<Cone3>) -> Result<Self, ToricError> {
        if cones.is_empty() {
            return Err(ToricError::DegenerateCone);
        }
        let mut sorted = cones.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != cones.len() {
            return Err(ToricError::OverlappingCones);
        }
        for c in &cones {
            c.facet_normals()?;
        }
        for (i, s) in cones.iter().enumerate() {
            for t in cones.iter().skip(i + 1) {
                if !separated(s, t)? {
                    return Err(ToricError::OverlappingCones);
                }
            }
        }
        Ok(Fan3 { cones })
    }

    pub fn cones(&self) -> &[Cone3] {
        &self.cones
    }

    pub fn support_contains(&self, v: &Vector3) -> Result<bool, ToricError> {
        for c in &self.cones {
            if c.contains(v)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Whether some hyperplane has `s` on its nonnegative side and `t` on its
/// nonpositive side.
fn separated(s: &Cone3, t: &Cone3) -> Result<bool, ToricError> {
    let mut candidates: Vec<Vector3> = Vec::new();
    for n in s.facet_normals()? {
        candidates.push(n);
    }
    for n in t.facet_normals()? {
        candidates.push(neg3(&n));
    }
    for u in s.rays() {
        for v in t.rays() {
            if let Some(n) = primitive3(&cross3(u, v)) {
                candidates.push(n);
                candidates.push(neg3(&n));
            }
        }
    }
    Ok(candidates.iter().any(|n| {
        s.rays().iter().all(|r| dot3(n, r) >= 0) && t.rays().iter().all(|r| dot3(n, r) <= 0)
    }))
}

/// The central subdivision of a full-dimensional pointed cone: one maximal
/// cone per facet, spanned by the facet and the interior apex.
pub fn central_subdivision(dual: &Cone3, apex: Vector3) -> Result<Fan3, ToricError> {
    let normals = dual.facet_normals()?;
    if !normals.iter().all(|n| dot3(n, &apex) > 0) {
        return Err(ToricError::ApexNotInterior);
    }
    let mut cones = Vec::new();
    for (_, [u, v]) in dual.facets()? {
        cones.push(Cone3::new([apex, u, v])?);
    }
    Fan3::new(cones)
}

/// The star subdivision of a fan along a ray in its support: every maximal
/// cone containing the ray is replaced by the cones spanned by the ray and
/// the facets not containing it.
pub fn star_subdivision(fan: &Fan3, ray: Vector3) -> Result<Fan3, ToricError> {
    let ray = primitive3(&ray).ok_or(ToricError::DegenerateCone)?;
    if !fan.support_contains(&ray)? {
        return Err(ToricError::RayOutsideSupport);
    }
    let mut cones = Vec::new();
    for c in fan.cones() {
        if !c.contains(&ray)? {
            cones.push(c.clone());
            continue;
        }
        for (n, [u, v]) in c.facets()? {
            if dot3(&n, &ray) > 0 {
                cones.push(Cone3::new([ray, u, v])?);
            }
        }
    }
    cones.sort();
    cones.dedup();
    Fan3::new(cones)
}

/// The area of the cross-section of the cone cut out by the plane where the
/// functional `w` equals one, in doubled lattice units. The functional must
/// be positive on every ray.
pub fn cross_section_volume(cone: &Cone3, w: &Vector3) -> Result<BigRational, ToricError> {
    let order = cone.ordered_extreme_rays()?;
    let heights: Vec<i64> = order.iter().map(|r| dot3(w, r)).collect();
    if heights.iter().any(|&h| h <= 0) {
        return Err(ToricError::NonPositiveSection);
    }
    let mut total = BigRational::zero();
    for i in 1..order.len() - 1 {
        let d = det3(&order[0], &order[i], &order[i + 1]).abs();
        let denom = heights[0] * heights[i] * heights[i + 1];
        total += BigRational::new(BigInt::from(d), BigInt::from(denom));
    }
    Ok(total)
}

/// A cyclic quotient singularity of the form `1/r (w1, w2, w3)`. Equality is
/// tested on the normalized representative: the lexicographically smallest
/// sorted weight triple over all multiplications by a unit modulo `r`.
#[derive(Debug, Clone)]
pub struct QuotientSingularity {
    r: u64,
    weights: [u64; 3],
    normalized: [u64; 3],
}

impl QuotientSingularity {
    pub fn new(r: u64, weights: [i64; 3]) -> Self {
        assert!(r > 0, "quotient order must be positive");
        let weights = weights.map(|w| w.rem_euclid(r as i64) as u64);
        let normalized = normalize_weights(r, weights);
        QuotientSingularity {
            r,
            weights,
            normalized,
        }
    }

    pub fn order(&self) -> u64 {
        self.r
    }

    pub fn weights(&self) -> [u64; 3] {
        self.weights
    }

    pub fn normalized(&self) -> [u64; 3] {
        self.normalized
    }

    pub fn is_smooth(&self) -> bool {
        self.r == 1
    }
}

impl PartialEq for QuotientSingularity {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.normalized == other.normalized
    }
}

impl Eq for QuotientSingularity {}

impl fmt::Display for QuotientSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 1 {
            write!(f, "smooth")
        } else {
            write!(
                f,
                "1/{}({},{},{})",
                self.r, self.weights[0], self.weights[1], self.weights[2]
            )
        }
    }
}

fn normalize_weights(r: u64, weights: [u64; 3]) -> [u64; 3] {
    if r == 1 {
        return [0, 0, 0];
    }
    let mut best: Option<[u64; 3]> = None;
    for u in 1..r {
        if u.gcd(&r) != 1 {
            continue;
        }
        let mut c = weights.map(|w| ((w as u128 * u as u128) % r as u128) as u64);
        c.sort_unstable();
        if best.is_none_or(|b| c < b) {
            best = Some(c);
        }
    }
    best.expect("the unit one is always available")
}

/// Whether two quotient singularity types agree up to permuting the weights
/// and multiplying by a unit modulo the order.
pub fn sing_equivalent(s: &QuotientSingularity, t: &QuotientSingularity) -> bool {
    s == t
}

/// Diagonalizes the matrix with the given columns by unimodular row and
/// column operations, returning the diagonal and a matrix whose columns
/// generate the preimages of the standard generators of the cokernel.
fn diagonalize(cols: [Vector3; 3]) -> Result<([i64; 3], [[i64; 3]; 3]), ToricError> {
    let mut a = [
        [cols[0][0], cols[1][0], cols[2][0]],
        [cols[0][1], cols[1][1], cols[2][1]],
        [cols[0][2], cols[1][2], cols[2][2]],
    ];
    let mut uinv = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
    for p in 0..3 {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in p..3 {
                for j in p..3 {
                    if a[i][j] != 0
                        && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return Err(ToricError::DegenerateCone);
            };
            if pi != p {
                a.swap(pi, p);
                for row in &mut uinv {
                    row.swap(pi, p);
                }
            }
            if pj != p {
                for row in &mut a {
                    row.swap(pj, p);
                }
            }
            let mut dirty = false;
            for i in 0..3 {
                if i == p || a[i][p] == 0 {
                    continue;
                }
                let q = a[i][p].div_euclid(a[p][p]);
                let pivot_row = a[p];
                for (x, y) in a[i].iter_mut().zip(pivot_row) {
                    *x -= q * y;
                }
                for row in &mut uinv {
                    row[p] += q * row[i];
                }
                if a[i][p] != 0 {
                    dirty = true;
                }
            }
            for j in 0..3 {
                if j == p || a[p][j] == 0 {
                    continue;
                }
                let q = a[p][j].div_euclid(a[p][p]);
                for row in &mut a {
                    row[j] -= q * row[p];
                }
                if a[p][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty && (0..3).all(|i| i == p || (a[i][p] == 0 && a[p][i] == 0)) {
                break;
            }
        }
    }
    Ok(([a[0][0], a[1][1], a[2][2]], uinv))
}

/// The cyclic quotient singularity defined by a simplicial full-dimensional
/// cone: the order is the index of the sublattice spanned by the primitive
/// generators, and the weights express a generator of the quotient in the
/// generator basis.
pub fn singularity_type(cone: &Cone3) -> Result<QuotientSingularity, ToricError> {
    if cone.rank() < 3 {
        return Err(ToricError::DegenerateCone);
    }
    let extreme = cone.extreme_rays()?;
    let [g0, g1, g2] = extreme.as_slice() else {
        return Err(ToricError::NotSimplicial);
    };
    let det = det3(g0, g1, g2);
    if det == 0 {
        return Err(ToricError::DegenerateCone);
    }
    let (diag, uinv) = diagonalize([*g0, *g1, *g2])?;
    let d: Vec<i64> = diag.iter().map(|x| x.abs()).collect();
    if d[0].gcd(&d[1]) != 1 || d[0].gcd(&d[2]) != 1 || d[1].gcd(&d[2]) != 1 {
        return Err(ToricError::NonCyclicQuotient);
    }
    let r = det.unsigned_abs();
    let n = [
        uinv[0][0] + uinv[0][1] + uinv[0][2],
        uinv[1][0] + uinv[1][1] + uinv[1][2],
        uinv[2][0] + uinv[2][1] + uinv[2][2],
    ];
    let sign = det.signum();
    let weights = [
        sign * dot3(&cross3(g1, g2), &n),
        sign * dot3(&cross3(g2, g0), &n),
        sign * dot3(&cross3(g0, g1), &n),
    ];
    Ok(QuotientSingularity::new(r, weights))
}

/// One parameter of a wall function factor, either symbolic or pinned to a
/// sample value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallParameter {
    pub label: String,
    pub value: Option<i64>,
}

/// How the wall function parameters are assigned: kept pairwise-distinct
/// symbols, or pinned to the sample values `0, -1, 1` in positional order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaPolicy {
    Distinct,
    Sample,
}

/// The wall function attached to an edge: the product of the factors
/// `u^{d_i} - lambda_i z` over the parts of the dual divisibility-step
/// partition. Its degree equals the lattice length of the edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallFunction {
    pub edge: usize,
    pub exponents: Partition,
    pub parameters: Vec<WallParameter>,
}

impl WallFunction {
    pub fn degree(&self) -> u64 {
        self.exponents.degree()
    }
}

impl fmt::Display for WallFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, p) in self.exponents.parts().iter().zip(&self.parameters) {
            let u = if *d == 1 {
                String::from("u")
            } else {
                format!("u^{d}")
            };
            match p.value {
                None => write!(f, "({u} - {} z)", p.label)?,
                Some(0) => write!(f, "{u}")?,
                Some(1) => write!(f, "({u} - z)")?,
                Some(-1) => write!(f, "({u} + z)")?,
                Some(v) if v > 0 => write!(f, "({u} - {v} z)")?,
                Some(v) => write!(f, "({u} + {} z)", -v)?,
            }
        }
        Ok(())
    }
}

/// The sum of the primitive edge directions weighted by lattice length. It
/// vanishes for every closed polygon.
pub fn closing_sum(poly: &LatticePolygon) -> LatticePoint {
    let mut total = LatticePoint::ORIGIN;
    for e in poly.edges() {
        total = total + e.tangent.scale(e.length);
    }
    total
}

/// The wall functions of a polynomial with two-dimensional Newton polytope,
/// one per edge, with exponents the conjugate of the divisibility steps.
/// Parameters are labelled per edge (`a1, a2, ...` on the first edge, `b1,
/// ...` on the second, and so on); the sample policy pins the first three of
/// each edge to `0, -1, 1`.
pub fn wall_functions(
    f: &LaurentPoly,
    policy: LambdaPolicy,
) -> Result<Vec<WallFunction>, DivisibilityError> {
    let hull = f
        .newton()
        .map_err(|_| DivisibilityError::EmptyPolynomial)?;
    let poly = match hull {
        crate::lattice::Hull::Polygon(p) => p,
        _ => return Err(DivisibilityError::NotTwoDimensional),
    };
    debug_assert_eq!(closing_sum(&poly), LatticePoint::ORIGIN);
    let edges = poly.edges();
    let mut out = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        let exponents = divstep(f, i, None)?.conjugate();
        if exponents.degree() != e.length as u64 {
            return Err(DivisibilityError::TupleMismatch);
        }
        let letter = (b'a' + (i % 26) as u8) as char;
        let parameters = (0..exponents.len())
            .map(|j| WallParameter {
                label: format!("{letter}{}", j + 1),
                value: match policy {
                    LambdaPolicy::Distinct => None,
                    LambdaPolicy::Sample => match j {
                        0 => Some(0),
                        1 => Some(-1),
                        2 => Some(1),
                        _ => None,
                    },
                },
            })
            .collect();
        out.push(WallFunction {
            edge: i,
            exponents,
            parameters,
        });
    }
    Ok(out)
}

/// Which of the two collections of divisorial extractions a certificate
/// uses: `Direct` reduces the second partition with the first one fixed,
/// `Transposed` works on the swapped pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtractionVariant {
    Direct,
    Transposed,
}

impl fmt::Display for ExtractionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtractionVariant::Direct => write!(f, "direct"),
            ExtractionVariant::Transposed => write!(f, "transposed"),
        }
    }
}

/// The terminal configuration a reduction ends in: a single line below an
/// all-ones partition, a transverse star of `a + 1` lines, or the four-branch
/// star with multiplicities `(2, 1, 1, 1)` over `(3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtractionBase {
    Chain,
    Lines,
    Tangent,
}

impl fmt::Display for ExtractionBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtractionBase::Chain => write!(f, "chain"),
            ExtractionBase::Lines => write!(f, "lines"),
            ExtractionBase::Tangent => write!(f, "tangent"),
        }
    }
}

/// A reduction of a dual pair to a proved base configuration, together with
/// the cyclic quotient type the corresponding divisorial extraction carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionCertificate {
    pub variant: ExtractionVariant,
    pub moves: Vec<TriangularMove>,
    pub base: ExtractionBase,
    pub singularity: QuotientSingularity,
}

fn extraction_base(q: &DualPair) -> Option<ExtractionBase> {
    let a = q.a();
    if q.a_part.parts() == [3] && q.b_part.parts() == [2, 1, 1, 1] {
        return Some(ExtractionBase::Tangent);
    }
    if q.a_part.len() == 1
        && q.b_part.parts().iter().all(|&p| p == 1)
        && q.b_part.len() as u64 == a + 1
    {
        return Some(ExtractionBase::Lines);
    }
    if q.a_part.parts().iter().all(|&p| p == 1) && q.b_part.parts() == [1] {
        return Some(ExtractionBase::Chain);
    }
    None
}

fn search_reduction(start: &DualPair) -> Option<(Vec<TriangularMove>, ExtractionBase)> {
    let parts = start.a_part.parts();
    if parts.is_empty() || (parts.len() > 1 && parts.iter().any(|&p| p != 1)) {
        return None;
    }
    let mut nodes: Vec<(DualPair, usize, Option<TriangularMove>)> =
        alloc::vec![(start.clone(), usize::MAX, None)];
    let mut seen: BTreeSet<DualPair> = BTreeSet::new();
    seen.insert(start.clone());
    let bound = 4 * (start.a() + start.b()) + 8;
    let mut head = 0;
    while head < nodes.len() && nodes.len() < 4096 {
        let (q, _, _) = nodes[head].clone();
        if let Some(base) = extraction_base(&q) {
            let mut moves = Vec::new();
            let mut at = head;
            while at != 0 {
                moves.push(nodes[at].2.expect("non-root nodes record their move"));
                at = nodes[at].1;
            }
            moves.reverse();
            return Some((moves, base));
        }
        let mut push = |next: DualPair, mv: TriangularMove| {
            if next.a() + next.b() <= bound && seen.insert(next.clone()) {
                nodes.push((next, head, Some(mv)));
            }
        };
        if let Some(next) = alpha_inv_pair(&q) {
            push(next, TriangularMove::AlphaInv);
        }
        if let Ok(next) = beta_pair(&q) {
            push(next, TriangularMove::Beta);
        }
        head += 1;
    }
    None
}

/// Searches for a reduction of the pair to a proved base configuration,
/// first with the first partition fixed, then on the swapped pair. The
/// returned singularity type is `1/a (1, -1, b)` for the direct variant and
/// `1/b (1, -1, a)` for the transposed one.
pub fn extraction_certificate(pair: &DualPair) -> Option<ExtractionCertificate> {
    let (a, b) = (pair.a(), pair.b());
    if a == 0 || b == 0 {
        return None;
    }
    if let Some((moves, base)) = search_reduction(pair) {
        return Some(ExtractionCertificate {
            variant: ExtractionVariant::Direct,
            moves,
            base,
            singularity: QuotientSingularity::new(a, [1, -1, b as i64]),
        });
    }
    if let Some((moves, base)) = search_reduction(&pair.swap()) {
        return Some(ExtractionCertificate {
            variant: ExtractionVariant::Transposed,
            moves,
            base,
            singularity: QuotientSingularity::new(b, [1, -1, a as i64]),
        });
    }
    None
}

/// The quotient data of an equal-multiplicity branch star: the sequence
/// satisfies `Q_0 = 0`, `Q_1 = 1`, `Q_{j+1} = m Q_j - Q_{j-1}`, and a star of
/// `m + 2` branches of multiplicity `Q_k` produces the type `1/r (1, -1, a)`
/// with `a = Q_k + Q_{k-1}` and `r = Q_k + Q_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceType {
    pub q: Vec<i64>,
    pub a: i64,
    pub r: i64,
}

impl RecurrenceType {
    pub fn quotient(&self) -> QuotientSingularity {
        QuotientSingularity::new(self.r.unsigned_abs(), [1, -1, self.a])
    }
}

pub fn recurrence_type(m: u64, k: usize) -> RecurrenceType {
    assert!(m >= 1 && k >= 1, "parameters must be positive");
    let mut q = alloc::vec![0i64, 1];
    while q.len() <= k + 1 {
        let j = q.len() - 1;
        q.push(m as i64 * q[j] - q[j - 1]);
    }
    let a = q[k] + q[k - 1];
    let r = q[k] + q[k + 1];
    RecurrenceType { q, a, r }
}
