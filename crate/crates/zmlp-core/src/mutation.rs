//! Mutations of Laurent polynomials and their Newton polytopes, the induced
//! maps on vertices and edges, mutation certificates, and the triangular
//! operations on polynomials and dual pairs.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::divisibility::{divstep, standard_triangle_edges, DivisibilityError, DualPair, Partition};
use crate::lattice::{
    convex_hull, AffineFunctional, Coord, Hull, LatticePoint, LatticePolygon, UnimodularAffineMap,
};
use crate::laurent::{binomial_multiplicity, exact_divide, slices, LaurentPoly, Multiplicity};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MutationError {
    EmptyPolynomial,
    ZeroNormal,
    InvalidH,
    NotOrthogonal,
    NotMutable { level: Coord },
    NotApplicable { level: Coord },
    NotStandardTriangle,
    NotInDomain,
    Divisibility(DivisibilityError),
}

impl fmt::Display for MutationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MutationError::EmptyPolynomial => write!(f, "empty polynomial"),
            MutationError::ZeroNormal => write!(f, "the normal of phi is zero"),
            MutationError::InvalidH => {
                write!(f, "h is not a power of z^m times a power of 1 + z^m")
            }
            MutationError::NotOrthogonal => {
                write!(f, "h is not constant on the level sets of phi")
            }
            MutationError::NotMutable { level } => {
                write!(f, "slice at level {level} is not divisible by the required power of h")
            }
            MutationError::NotApplicable { level } => {
                write!(
                    f,
                    "spec not applicable to any f with this Newton polygon (level {level})"
                )
            }
            MutationError::NotStandardTriangle => {
                write!(f, "support is not a standard triangle Conv{{(0,0),(a,0),(0,b)}}")
            }
            MutationError::NotInDomain => write!(f, "not in the domain of the operation"),
            MutationError::Divisibility(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for MutationError {}

impl From<DivisibilityError> for MutationError {
    fn from(e: DivisibilityError) -> Self {
        MutationError::Divisibility(e)
    }
}

/// A mutation datum `(phi, h)` with `h = z^{l m} (1 + z^m)^s` for a
/// primitive `m` orthogonal to the normal of `phi` and `s >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationSpec {
    phi: AffineFunctional,
    h: LaurentPoly,
    m: LatticePoint,
    l: Coord,
    s: u32,
}

impl MutationSpec {
    pub fn new(phi: AffineFunctional, h: LaurentPoly) -> Result<Self, MutationError> {
        if phi.normal.is_zero() {
            return Err(MutationError::ZeroNormal);
        }
        let (m, l, s) = decompose_h(&h).ok_or(MutationError::InvalidH)?;
        if phi.normal.dot(&m) != 0 {
            return Err(MutationError::NotOrthogonal);
        }
        Ok(MutationSpec { phi, h, m, l, s })
    }

    pub fn phi(&self) -> &AffineFunctional {
        &self.phi
    }

    pub fn h(&self) -> &LaurentPoly {
        &self.h
    }

    /// The primitive direction of `h`.
    pub fn direction(&self) -> LatticePoint {
        self.m
    }

    /// Exponent of the monomial prefactor `z^{l m}`.
    pub fn prefactor(&self) -> Coord {
        self.l
    }

    /// Exponent of the binomial factor `(1 + z^m)^s`.
    pub fn binomial_power(&self) -> u32 {
        self.s
    }

    /// The spec of the inverse mutation.
    pub fn inverse(&self) -> MutationSpec {
        MutationSpec {
            phi: self.phi.negated(),
            h: self.h.clone(),
            m: self.m,
            l: self.l,
            s: self.s,
        }
    }
}

/// Writes `h` as `z^{l m} (1 + z^m)^s` with `m` primitive and `s >= 1`.
fn decompose_h(h: &LaurentPoly) -> Option<(LatticePoint, Coord, u32)> {
    let support = h.support();
    if support.len() < 2 {
        return None;
    }
    let first = support[0];
    let last = support[support.len() - 1];
    let (m, len) = (last - first).primitive()?;
    let s = u32::try_from(len).ok()?;
    if support.len() as Coord != len + 1 {
        return None;
    }
    for (i, p) in support.iter().enumerate() {
        if *p != first + m.scale(i as Coord) {
            return None;
        }
        if h.coeff(p) != binomial_coeff(s, i as u32) {
            return None;
        }
    }
    // The prefactor exponent must itself be a multiple of m.
    let l = if first.is_zero() {
        0
    } else {
        let (d, k) = first.primitive()?;
        if d == m {
            k
        } else if d == -m {
            -k
        } else {
            return None;
        }
    };
    Some((m, l, s))
}

fn binomial_coeff(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Whether every slice of `f` at a negative level of `phi` is divisible by
/// the matching power of `h`.
pub fn is_mutable(f: &LaurentPoly, spec: &MutationSpec) -> bool {
    let Ok(slcs) = slices(f, &spec.phi) else { return false };
    slcs.iter().all(|slice| {
        if slice.level >= 0 {
            return true;
        }
        let need = (-slice.level) as u64 * spec.s as u64;
        match binomial_multiplicity(&slice.poly, &spec.m) {
            Ok(Multiplicity::Finite(d)) => d >= need,
            Ok(Multiplicity::Infinite) => true,
            Err(_) => false,
        }
    })
}

/// The mutation `sum_k h^k f_k` of `f` with respect to `spec`, where `f_k`
/// is the slice of `f` at level `k` of `phi`.
pub fn mutate(f: &LaurentPoly, spec: &MutationSpec) -> Result<LaurentPoly, MutationError> {
    if f.is_zero() {
        return Err(MutationError::EmptyPolynomial);
    }
    let mut out = LaurentPoly::zero();
    for slice in slices(f, &spec.phi).expect("nonzero polynomial") {
        let k = slice.level;
        let exp = u32::try_from(k.unsigned_abs()).expect("level fits in u32");
        let part = if k >= 0 {
            &slice.poly * &spec.h.pow(exp)
        } else {
            exact_divide(&slice.poly, &spec.h.pow(exp))
                .expect("h is nonzero")
                .ok_or(MutationError::NotMutable { level: k })?
        };
        out = &out + &part;
    }
    Ok(out)
}

/// Image of a vertex under the mutation: either a vertex or an edge segment
/// of the mutated polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexImage {
    Vertex(LatticePoint),
    Segment(LatticePoint, LatticePoint),
}

impl VertexImage {
    fn contains(&self, p: &LatticePoint) -> bool {
        match self {
            VertexImage::Vertex(v) => v == p,
            VertexImage::Segment(a, b) => {
                let d = *b - *a;
                let r = *p - *a;
                d.det(&r) == 0 && r.dot(&d) >= 0 && r.dot(&r) <= d.dot(&r)
            }
        }
    }
}

/// Image of an edge under the mutation: an edge of the mutated polytope, or
/// a single vertex when the whole edge contracts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeImage {
    Vertex(LatticePoint),
    Edge(LatticePoint, LatticePoint),
}

/// Lattice points of the polygon on the level set `phi = k`, ordered along
/// the direction `m`.
fn level_points(
    poly: &LatticePolygon,
    phi: &AffineFunctional,
    m: &LatticePoint,
    k: Coord,
) -> Vec<LatticePoint> {
    let mut pts: Vec<LatticePoint> = poly
        .lattice_points()
        .into_iter()
        .filter(|p| phi.eval(p) == k)
        .collect();
    pts.sort_by_key(|p| m.dot(p));
    pts
}

/// Endpoints of the image of the level-`k` slice `[u, v]` (ordered along
/// `m`): `u` moves by `k l m` and `v` by `k (l + s) m`.
fn slice_image(
    u: LatticePoint,
    v: LatticePoint,
    k: Coord,
    spec: &MutationSpec,
) -> Result<(LatticePoint, LatticePoint), MutationError> {
    let len = (v - u).primitive().map_or(0, |(_, n)| n);
    if (len as i128) + (k as i128) * (spec.s as i128) < 0 {
        return Err(MutationError::NotApplicable { level: k });
    }
    let a = u + spec.m.scale(k * spec.l);
    let b = v + spec.m.scale(k * (spec.l + spec.s as Coord));
    Ok((a, b))
}

/// The mutated Newton polytope: the hull of the images of all level slices.
/// Fails when some negative level erodes below a point, in which case no
/// polynomial with this Newton polytope is mutable.
pub fn mutate_polytope(hull: &Hull, spec: &MutationSpec) -> Result<Hull, MutationError> {
    let pts = hull.lattice_points();
    let mut levels: Vec<Coord> = pts.iter().map(|p| spec.phi.eval(p)).collect();
    levels.sort_unstable();
    levels.dedup();
    let mut images = Vec::new();
    for &k in &levels {
        let mut on_level: Vec<LatticePoint> =
            pts.iter().copied().filter(|p| spec.phi.eval(p) == k).collect();
        on_level.sort_by_key(|p| spec.m.dot(p));
        let u = *on_level.first().expect("level is populated");
        let v = *on_level.last().expect("level is populated");
        let (a, b) = slice_image(u, v, k, spec)?;
        images.push(a);
        images.push(b);
    }
    convex_hull(&images).map_err(|_| MutationError::EmptyPolynomial)
}

/// The image of the vertex `v` of `poly` under the mutation, following the
/// case analysis on the slice through `v`.
pub fn mutate_vertex(
    v: &LatticePoint,
    poly: &LatticePolygon,
    spec: &MutationSpec,
) -> Result<VertexImage, MutationError> {
    assert!(poly.vertices().contains(v), "not a vertex of the polygon");
    let k = spec.phi.eval(v);
    let pts = level_points(poly, &spec.phi, &spec.m, k);
    if pts.len() == 1 {
        if k == 0 {
            return Ok(VertexImage::Vertex(*v));
        }
        let (a, b) = slice_image(*v, *v, k, spec)?;
        return Ok(VertexImage::Segment(a, b));
    }
    let u = pts[0];
    let w = pts[pts.len() - 1];
    debug_assert!(*v == u || *v == w, "vertex is extremal on its slice");
    let (a, b) = slice_image(u, w, k, spec)?;
    if a == b {
        return Ok(VertexImage::Vertex(a));
    }
    Ok(VertexImage::Vertex(if *v == u { a } else { b }))
}

/// The image of edge `edge` of `poly` under the mutation: the unique edge of
/// the mutated polytope whose endpoints lie in the images of the edge's
/// endpoints, or a vertex when the edge contracts.
pub fn mutate_edge(
    edge: usize,
    poly: &LatticePolygon,
    spec: &MutationSpec,
) -> Result<EdgeImage, MutationError> {
    let edges = poly.edges();
    let e = edges.get(edge).expect("edge index in range");
    let mv = mutate_vertex(&e.from, poly, spec)?;
    let mw = mutate_vertex(&e.to, poly, spec)?;
    if let (VertexImage::Vertex(p), VertexImage::Vertex(q)) = (&mv, &mw) {
        if p == q {
            return Ok(EdgeImage::Vertex(*p));
        }
        return Ok(EdgeImage::Edge(*p, *q));
    }
    let image = mutate_polytope(&Hull::Polygon(poly.clone()), spec)?;
    let candidates: Vec<(LatticePoint, LatticePoint)> = match &image {
        Hull::Point(_) => unreachable!("a segment image forces a positive-dimensional polytope"),
        Hull::Segment(a, b) => alloc::vec![(*a, *b)],
        Hull::Polygon(q) => q.edges().iter().map(|e| (e.from, e.to)).collect(),
    };
    for (p, q) in candidates {
        if mv.contains(&p) && mw.contains(&q) {
            return Ok(EdgeImage::Edge(p, q));
        }
        if mv.contains(&q) && mw.contains(&p) {
            return Ok(EdgeImage::Edge(q, p));
        }
    }
    unreachable!("the mutated polytope has an edge between the vertex images")
}

/// A chain of mutations `polys[0] -> polys[1] -> ... -> polys[n]` with
/// `polys[i+1] = mutate(polys[i], steps[i])`, ending in a monomial with
/// coefficient one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationCertificate {
    pub steps: Vec<MutationSpec>,
    pub polys: Vec<LaurentPoly>,
}

impl MutationCertificate {
    /// Replays every step and checks the chain ends in a unit monomial.
    pub fn verify(&self) -> bool {
        if self.polys.len() != self.steps.len() + 1 {
            return false;
        }
        for (i, step) in self.steps.iter().enumerate() {
            match mutate(&self.polys[i], step) {
                Ok(g) => {
                    if g != self.polys[i + 1] {
                        return false;
                    }
                }
                Err(_) => return false,
            }
        }
        let last = self.polys.last().expect("chain is nonempty");
        last.num_terms() == 1 && last.terms().all(|(_, c)| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Side lengths `(a, b)` and leg edge indices of a polynomial supported on
/// the standard triangle `Conv{(0,0),(a,0),(0,b)}`.
fn standard_sides(f: &LaurentPoly) -> Result<(Coord, Coord, usize, usize), MutationError> {
    let hull = f.newton().map_err(|_| MutationError::EmptyPolynomial)?;
    let Hull::Polygon(poly) = hull else {
        return Err(MutationError::NotStandardTriangle);
    };
    standard_triangle_edges(&poly).ok_or(MutationError::NotStandardTriangle)
}

/// Swaps the two legs: `tau(f)(x, y) = f(y, x)`.
pub fn tau(f: &LaurentPoly) -> Result<LaurentPoly, MutationError> {
    standard_sides(f)?;
    Ok(f.transpose())
}

/// The mutation taking the standard triangle of sides `(a, b)` to the one
/// of sides `(a, a + b)`; always defined.
pub fn alpha(f: &LaurentPoly) -> Result<LaurentPoly, MutationError> {
    let (a, _, _, _) = standard_sides(f)?;
    let spec = MutationSpec::new(
        AffineFunctional::new(LatticePoint::new(-1, 0), a),
        LaurentPoly::one_plus(LatticePoint::new(0, 1)),
    )
    .expect("valid spec");
    mutate(f, &spec)
}

/// Inverse of [`alpha`], taking sides `(a, b)` to `(a, b - a)`; `None` when
/// the required divisibility fails.
pub fn alpha_inv(f: &LaurentPoly) -> Result<Option<LaurentPoly>, MutationError> {
    let (a, _, _, _) = standard_sides(f)?;
    let spec = MutationSpec::new(
        AffineFunctional::new(LatticePoint::new(1, 0), -a),
        LaurentPoly::one_plus(LatticePoint::new(0, 1)),
    )
    .expect("valid spec");
    if !is_mutable(f, &spec) {
        return Ok(None);
    }
    mutate(f, &spec).map(Some)
}

/// The involution-style mutation taking sides `(a, b)` to
/// `(a, l a - b)` where `l` is the number of parts of the dual partition of
/// the length-`b` leg; the image is reflected back into standard position.
pub fn beta(f: &LaurentPoly) -> Result<LaurentPoly, MutationError> {
    let (a, b, _, left) = standard_sides(f)?;
    let l = divstep(f, left, None)?.max_part() as Coord;
    let spec = MutationSpec::new(
        AffineFunctional::new(LatticePoint::new(l, 0), -b),
        LaurentPoly::one_plus(LatticePoint::new(0, 1)),
    )
    .expect("valid spec");
    let g = mutate(f, &spec)?;
    let reflect = UnimodularAffineMap::new([[-1, 0], [0, 1]], LatticePoint::new(a, 0))
        .expect("reflection is unimodular");
    Ok(g.apply_map(&reflect))
}

/// `tau` on dual pairs: swap the two partitions.
pub fn tau_pair(p: &DualPair) -> DualPair {
    p.swap()
}

/// `alpha` on dual pairs: append a part equal to `a = |a_part|` to the
/// second partition.
pub fn alpha_pair(p: &DualPair) -> Result<DualPair, MutationError> {
    let a = p.a();
    if a == 0 {
        return Err(MutationError::NotInDomain);
    }
    let parts = p.b_part.parts().iter().copied().chain([a]);
    let b_part = Partition::new(parts).expect("positive parts");
    Ok(DualPair::new(p.a_part.clone(), b_part))
}

/// Inverse of [`alpha_pair`]: remove one part equal to `a` from the second
/// partition, when present.
pub fn alpha_inv_pair(p: &DualPair) -> Option<DualPair> {
    let a = p.a();
    let pos = p.b_part.parts().iter().position(|&x| x == a)?;
    let parts = p
        .b_part
        .parts()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pos)
        .map(|(_, &x)| x);
    let b_part = Partition::new(parts).expect("positive parts");
    Some(DualPair::new(p.a_part.clone(), b_part))
}

/// `beta` on dual pairs: replace each part `b_i` by `a - b_i`, dropping
/// zeros. Errors when a part exceeds `a` or all parts vanish.
pub fn beta_pair(p: &DualPair) -> Result<DualPair, MutationError> {
    let a = p.a();
    if a == 0 {
        return Err(MutationError::NotInDomain);
    }
    let mut parts = Vec::new();
    for &b_i in p.b_part.parts() {
        if b_i > a {
            return Err(MutationError::NotInDomain);
        }
        if a - b_i > 0 {
            parts.push(a - b_i);
        }
    }
    if parts.is_empty() {
        return Err(MutationError::NotInDomain);
    }
    let b_part = Partition::new(parts).expect("positive parts");
    Ok(DualPair::new(p.a_part.clone(), b_part))
}
