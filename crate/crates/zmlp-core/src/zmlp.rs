//! Zero mutable Laurent polynomials: enumeration of the combinatorial pair
//! data, classification into the named families, reduction by the triangular
//! moves, certified mutation search, and the mutation graph.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use num_integer::Integer;
use num_traits::One;

use crate::divisibility::{
    reconstruct_from_reqdiv, standard_triangle_edges, DivTuple, DivisibilityError, DualPair,
    Partition,
};
use crate::laurent::{LaurentPoly, Multiplicity};
use crate::lattice::{
    canonical_maps, AffineFunctional, Coord, Hull, LatticePoint, LatticePolygon,
    UnimodularAffineMap,
};
use crate::mutation::{
    alpha_inv, alpha_inv_pair, beta, beta_pair, is_mutable, mutate, tau, tau_pair,
    MutationCertificate, MutationError, MutationSpec,
};

/// Named families of zero mutable Laurent polynomials on rectangular
/// triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyLabel {
    Tom,
    Jerry,
    Spike,
    Tyke,
    Unnamed,
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyLabel::Tom => "Tom",
            FamilyLabel::Jerry => "Jerry",
            FamilyLabel::Spike => "Spike",
            FamilyLabel::Tyke => "Tyke",
            FamilyLabel::Unnamed => "unnamed",
        };
        write!(f, "{s}")
    }
}

/// Calls `f` for every decreasing partition of `n` with parts at most
/// `max_part`.
fn partitions_each<F: FnMut(&[u64])>(n: u64, max_part: u64, f: &mut F) {
    fn rec<F: FnMut(&[u64])>(n: u64, max_part: u64, acc: &mut Vec<u64>, f: &mut F) {
        if n == 0 {
            f(acc);
            return;
        }
        let mut p = max_part.min(n);
        while p >= 1 {
            acc.push(p);
            rec(n - p, p, acc, f);
            acc.pop();
            p -= 1;
        }
    }
    let mut acc = Vec::new();
    rec(n, max_part, &mut acc, f);
}

/// Calls `f` for every decreasing partition of `n` with parts at most
/// `max_part` and squared part sum exactly `sq`. Branches whose remaining
/// squared sum is out of the reachable range `[n, n * max_part]` are pruned.
fn partitions_square_each<F: FnMut(&[u64])>(n: u64, max_part: u64, sq: u64, f: &mut F) {
    fn rec<F: FnMut(&[u64])>(n: u64, max_part: u64, sq: u64, acc: &mut Vec<u64>, f: &mut F) {
        if n == 0 {
            if sq == 0 {
                f(acc);
            }
            return;
        }
        let mut p = max_part.min(n);
        while p >= 1 {
            let p2 = p * p;
            if p2 <= sq {
                let (rn, rs) = (n - p, sq - p2);
                if rs >= rn && rs <= rn * p {
                    acc.push(p);
                    rec(rn, p, rs, acc, f);
                    acc.pop();
                }
            }
            p -= 1;
        }
    }
    let mut acc = Vec::new();
    rec(n, max_part, sq, &mut acc, f);
}

/// Whether the pair satisfies the combinatorial conditions: squared parts
/// summing to `ab + 1`, `max(a_part) <= b`, `max(b_part) <= a`, and
/// `max(a_part) + max(b_part) <= max(a, b)`. The last bound comes from a
/// mutation argument that needs the triangle to be at least one level tall,
/// so it is waived on the unit triangle, whose single pair `((1), (1))`
/// belongs to the trivial polynomial `1 + x + y`.
pub fn satisfies_comb(pair: &DualPair) -> bool {
    let (a, b) = (pair.a(), pair.b());
    if a == 0 || b == 0 {
        return false;
    }
    let sq: u64 = pair
        .a_part
        .parts()
        .iter()
        .chain(pair.b_part.parts())
        .map(|&p| p * p)
        .sum();
    let longer = a.max(b);
    sq == a * b + 1
        && pair.a_part.max_part() <= b
        && pair.b_part.max_part() <= a
        && (longer == 1 || pair.a_part.max_part() + pair.b_part.max_part() <= longer)
}

/// All dual pairs on the `(a, b)` rectangular triangle satisfying the
/// combinatorial conditions, in sorted order.
pub fn enumerate_comb(a: u64, b: u64) -> Vec<DualPair> {
    let mut pairs = Vec::new();
    if a == 0 || b == 0 {
        return pairs;
    }
    let target = a * b + 1;
    let longer = a.max(b);
    let mut outer = |ap: &[u64]| {
        let sq_a: u64 = ap.iter().map(|&p| p * p).sum();
        let Some(need) = target.checked_sub(sq_a) else {
            return;
        };
        let max_a = ap[0];
        let cap = if longer == 1 { a } else { a.min(longer - max_a) };
        let a_part = Partition::new(ap.iter().copied()).expect("parts are positive");
        let mut inner = |bp: &[u64]| {
            let b_part = Partition::new(bp.iter().copied()).expect("parts are positive");
            pairs.push(DualPair::new(a_part.clone(), b_part));
        };
        partitions_square_each(b, cap, need, &mut inner);
    };
    partitions_each(a, a.min(b), &mut outer);
    pairs.sort();
    pairs
}

pub fn count_comb(a: u64, b: u64) -> usize {
    enumerate_comb(a, b).len()
}

fn part(parts: &[u64]) -> Option<Partition> {
    Partition::new(parts.iter().copied()).ok()
}

/// `(base^r, tail...)` where `r` makes the parts sum to `total`.
fn rep_for(base: u64, tail: &[u64], total: u64) -> Option<Partition> {
    let tail_sum: u64 = tail.iter().sum();
    let rest = total.checked_sub(tail_sum)?;
    if rest % base != 0 {
        return None;
    }
    let mut parts = vec![base; (rest / base) as usize];
    parts.extend_from_slice(tail);
    Partition::new(parts).ok()
}

/// The family templates applicable to the `(a, b)` triangle with `a <= b`,
/// in label priority order.
fn family_candidates(a: u64, b: u64) -> Vec<(FamilyLabel, DualPair)> {
    let mut out = Vec::new();
    let mut push = |label, ap: Option<Partition>, bp: Option<Partition>| {
        if let (Some(ap), Some(bp)) = (ap, bp) {
            out.push((label, DualPair::new(ap, bp)));
        }
    };
    if a == 1 {
        push(FamilyLabel::Tom, part(&[1]), rep_for(1, &[], b));
    }
    if a == 2 {
        push(FamilyLabel::Tom, part(&[1, 1]), rep_for(2, &[1], b));
        push(FamilyLabel::Jerry, part(&[2]), rep_for(2, &[1, 1, 1], b));
    }
    if a == 3 {
        match b % 3 {
            1 => {
                push(FamilyLabel::Tom, part(&[1, 1, 1]), rep_for(3, &[1], b));
                push(FamilyLabel::Jerry, part(&[3]), rep_for(3, &[1, 1, 1, 1], b));
                push(FamilyLabel::Spike, part(&[2, 1]), rep_for(3, &[2, 2], b));
                push(FamilyLabel::Tyke, part(&[3]), rep_for(3, &[2, 2, 2, 1], b));
            }
            2 => {
                push(FamilyLabel::Tom, part(&[1, 1, 1]), rep_for(3, &[2], b));
                push(FamilyLabel::Jerry, part(&[3]), rep_for(3, &[2, 2, 2, 2], b));
                push(FamilyLabel::Spike, part(&[2, 1]), rep_for(3, &[1, 1], b));
                push(FamilyLabel::Tyke, part(&[3]), rep_for(3, &[2, 1, 1, 1], b));
            }
            _ => {}
        }
    }
    if b == a + 1 {
        let k = a;
        push(FamilyLabel::Tom, part(&vec![1; k as usize]), part(&[k, 1]));
        push(FamilyLabel::Jerry, part(&[k]), part(&vec![1; (k + 1) as usize]));
        if k.is_multiple_of(2) {
            push(FamilyLabel::Spike, part(&[k / 2, k / 2]), part(&[k / 2 + 1, k / 2]));
        } else {
            push(
                FamilyLabel::Spike,
                part(&[k.div_ceil(2), (k - 1) / 2]),
                part(&[k.div_ceil(2), k.div_ceil(2)]),
            );
        }
    }
    out
}

/// Matches the pair against the family templates for the `(a, b)` triangle.
/// The orientation is normalized first, so swapped pairs classify alike.
pub fn classify_family(pair: &DualPair, a: u64, b: u64) -> FamilyLabel {
    debug_assert_eq!((pair.a(), pair.b()), (a, b));
    if a > b {
        return classify_family(&pair.swap(), b, a);
    }
    family_candidates(a, b)
        .into_iter()
        .find(|(_, cand)| cand == pair)
        .map(|(label, _)| label)
        .unwrap_or(FamilyLabel::Unnamed)
}

/// The moves available on standard triangles: leg transposition and the two
/// size-decreasing triangular mutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TriangularMove {
    Tau,
    AlphaInv,
    Beta,
}

impl fmt::Display for TriangularMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TriangularMove::Tau => "tau",
            TriangularMove::AlphaInv => "alpha_inv",
            TriangularMove::Beta => "beta",
        };
        write!(f, "{s}")
    }
}

/// The action of a triangular move on dual pairs; `None` when the move is
/// not defined on the pair.
pub fn apply_pair_move(pair: &DualPair, mv: TriangularMove) -> Option<DualPair> {
    match mv {
        TriangularMove::Tau => Some(tau_pair(pair)),
        TriangularMove::AlphaInv => alpha_inv_pair(pair),
        TriangularMove::Beta => beta_pair(pair).ok(),
    }
}

/// The action of a triangular move on a polynomial in standard position;
/// `Ok(None)` when the inverse triangular mutation is not defined.
pub fn apply_poly_move(
    f: &LaurentPoly,
    mv: TriangularMove,
) -> Result<Option<LaurentPoly>, MutationError> {
    match mv {
        TriangularMove::Tau => tau(f).map(Some),
        TriangularMove::AlphaInv => alpha_inv(f),
        TriangularMove::Beta => beta(f).map(Some),
    }
}

/// A shortest sequence of triangular moves taking the pair to `((1), (1))`,
/// where every non-transposition move strictly decreases `a + b`; `None`
/// when no such sequence exists.
pub fn triangular_reduce(pair: &DualPair) -> Option<Vec<TriangularMove>> {
    let target = DualPair::new(
        Partition::new([1]).expect("valid partition"),
        Partition::new([1]).expect("valid partition"),
    );
    if *pair == target {
        return Some(Vec::new());
    }
    struct State {
        pair: DualPair,
        after_tau: bool,
        parent: usize,
        step: Option<TriangularMove>,
    }
    let mut states =
        vec![State { pair: pair.clone(), after_tau: false, parent: usize::MAX, step: None }];
    let mut visited: BTreeSet<(DualPair, bool)> = BTreeSet::new();
    visited.insert((pair.clone(), false));
    let mut head = 0;
    while head < states.len() {
        let p = states[head].pair.clone();
        let after_tau = states[head].after_tau;
        for mv in [TriangularMove::Tau, TriangularMove::AlphaInv, TriangularMove::Beta] {
            if mv == TriangularMove::Tau && after_tau {
                continue;
            }
            let Some(q) = apply_pair_move(&p, mv) else {
                continue;
            };
            if mv != TriangularMove::Tau && q.a() + q.b() >= p.a() + p.b() {
                continue;
            }
            if q == target {
                let mut moves = vec![mv];
                let mut at = head;
                while let Some(step) = states[at].step {
                    moves.push(step);
                    at = states[at].parent;
                }
                moves.reverse();
                return Some(moves);
            }
            let is_tau = mv == TriangularMove::Tau;
            if visited.insert((q.clone(), is_tau)) {
                states.push(State { pair: q, after_tau: is_tau, parent: head, step: Some(mv) });
            }
        }
        head += 1;
    }
    None
}

/// Reconstructs the polynomial on the standard triangle whose leg
/// divisibility steps are the conjugates of the pair, by imposing the suffix
/// sums of the steps on the legs and simple vanishing on the hypotenuse.
pub fn pair_polynomial(pair: &DualPair) -> Result<Option<LaurentPoly>, DivisibilityError> {
    let (a, b) = (pair.a(), pair.b());
    if a == 0 || b == 0 {
        return Ok(None);
    }
    let tri = LatticePolygon::from_vertices(vec![
        LatticePoint::ORIGIN,
        LatticePoint::new(a as Coord, 0),
        LatticePoint::new(0, b as Coord),
    ])
    .expect("standard triangle is a polygon");
    let points = tri.lattice_points();
    let edges = tri.edges();
    let (_, _, bottom, left) =
        standard_triangle_edges(&tri).expect("triangle is in standard position");
    let mut tuples = Vec::with_capacity(edges.len());
    for (i, e) in edges.iter().enumerate() {
        let k_min = points.iter().map(|p| e.normal.dot(p)).min().expect("triangle has points");
        let k_max = points.iter().map(|p| e.normal.dot(p)).max().expect("triangle has points");
        let mut values = vec![Multiplicity::Finite(0); (k_max - k_min + 1) as usize];
        if i == bottom || i == left {
            let step =
                if i == bottom { pair.a_part.conjugate() } else { pair.b_part.conjugate() };
            for (j, v) in values.iter_mut().enumerate() {
                *v = Multiplicity::Finite(step.parts().iter().skip(j).sum());
            }
        } else {
            values[0] = Multiplicity::Finite(1);
        }
        tuples.push(DivTuple { edge: i, k_min, values });
    }
    reconstruct_from_reqdiv(&tri, &tuples)
}

fn segment_frame(from: &LatticePoint, dir: &LatticePoint) -> UnimodularAffineMap {
    let eg = dir.x.extended_gcd(&dir.y);
    let lin = UnimodularAffineMap::new([[eg.x, eg.y], [-dir.y, dir.x]], LatticePoint::ORIGIN)
        .expect("Bezout frame is unimodular");
    lin.compose(&UnimodularAffineMap::translation_by(-*from))
}

/// A unique representative of the orbit of `f` under `GL_2(Z) ⋉ Z^2` acting
/// on exponents, keyed on both the Newton polytope and the coefficients.
pub fn canonical_poly(f: &LaurentPoly) -> Result<LaurentPoly, MutationError> {
    let hull = f.newton().map_err(|_| MutationError::EmptyPolynomial)?;
    Ok(match hull {
        Hull::Point(p) => f.monomial_mul(&-p),
        Hull::Segment(a, b) => {
            let (u, _) = (b - a).primitive().expect("segment has a direction");
            let fwd = f.apply_map(&segment_frame(&a, &u));
            let bwd = f.apply_map(&segment_frame(&b, &-u));
            fwd.min(bwd)
        }
        Hull::Polygon(p) => canonical_maps(&p)
            .iter()
            .map(|m| f.apply_map(m))
            .min()
            .expect("polygon has at least one frame"),
    })
}

fn is_unit_monomial(f: &LaurentPoly) -> bool {
    f.num_terms() == 1 && f.terms().all(|(_, c)| c.is_one())
}

fn hull_point_count(f: &LaurentPoly) -> usize {
    f.newton().map(|h| h.lattice_points().len()).unwrap_or(0)
}

/// The largest binomial exponent worth trying on `f`: the maximal lattice
/// length of an edge of its Newton polytope.
fn growth_cap(hull: &Hull) -> u32 {
    match hull {
        Hull::Point(_) => 1,
        Hull::Segment(a, b) => (*b - *a).primitive().expect("segment has a direction").1 as u32,
        Hull::Polygon(p) => {
            p.edges().iter().map(|e| e.length).max().expect("polygon has edges") as u32
        }
    }
}

/// The candidate mutations considered from `f`: for two-dimensional support,
/// binomial powers along each edge tangent against both signs of the edge
/// normal at every occupied level; for segments, parallel division and
/// multiplication plus transverse growth; for points, growth only.
fn candidate_specs(f: &LaurentPoly, s_cap: u32) -> Vec<MutationSpec> {
    let Ok(hull) = f.newton() else {
        return Vec::new();
    };
    let mut specs = Vec::new();
    let mut push = |normal: LatticePoint, c: Coord, m: LatticePoint, s: u32| {
        let h = LaurentPoly::one_plus(m).pow(s);
        if let Ok(spec) = MutationSpec::new(AffineFunctional::new(normal, -c), h) {
            specs.push(spec);
        }
    };
    match hull {
        Hull::Point(p) => {
            for s in 1..=s_cap {
                push(LatticePoint::new(0, 1), p.y - 1, LatticePoint::new(1, 0), s);
            }
        }
        Hull::Segment(a, b) => {
            let (u, len) = (b - a).primitive().expect("segment has a direction");
            let nu = u.rot_left();
            let k0 = nu.dot(&a);
            for c in [k0 + 1, k0 - 1] {
                for s in 1..=s_cap {
                    push(nu, c, u, s);
                }
            }
            let eg = u.x.extended_gcd(&u.y);
            let mu = LatticePoint::new(eg.x, eg.y);
            let w = LatticePoint::new(-mu.y, mu.x);
            for (normal, c) in [(mu, mu.dot(&a)), (-mu, -mu.dot(&a) - len)] {
                for wdir in [w, -w] {
                    for s in 1..=s_cap {
                        push(normal, c, wdir, s);
                    }
                }
            }
        }
        Hull::Polygon(p) => {
            let pts = p.lattice_points();
            for e in p.edges() {
                for normal in [e.normal, -e.normal] {
                    let k_min = pts.iter().map(|q| normal.dot(q)).min().expect("points");
                    let k_max = pts.iter().map(|q| normal.dot(q)).max().expect("points");
                    for c in k_min..=k_max {
                        for s in 1..=s_cap {
                            push(normal, c, e.tangent, s);
                        }
                    }
                }
            }
        }
    }
    specs
}

struct SearchNode {
    poly: LaurentPoly,
    parent: usize,
    step: Option<MutationSpec>,
    depth: usize,
}

fn extract_chain(nodes: &[SearchNode], mut at: usize) -> MutationCertificate {
    let mut steps = Vec::new();
    let mut polys = Vec::new();
    loop {
        polys.push(nodes[at].poly.clone());
        match &nodes[at].step {
            Some(s) => steps.push(s.clone()),
            None => break,
        }
        at = nodes[at].parent;
    }
    steps.reverse();
    polys.reverse();
    MutationCertificate { steps, polys }
}

/// Searches for a chain of mutations from `f` to a unit monomial, expanding
/// at most `node_bound` states of chain length below `depth_bound` in order
/// of increasing lattice point count. `None` means no chain was found within
/// the bounds, not that none exists.
pub fn verify_zmlp(
    f: &LaurentPoly,
    depth_bound: usize,
    node_bound: usize,
) -> Result<Option<MutationCertificate>, MutationError> {
    if f.is_zero() {
        return Err(MutationError::EmptyPolynomial);
    }
    if is_unit_monomial(f) {
        return Ok(Some(MutationCertificate { steps: Vec::new(), polys: vec![f.clone()] }));
    }
    let mut nodes =
        vec![SearchNode { poly: f.clone(), parent: usize::MAX, step: None, depth: 0 }];
    let mut visited: BTreeSet<LaurentPoly> = BTreeSet::new();
    visited.insert(canonical_poly(f)?);
    let mut heap: BinaryHeap<Reverse<(usize, u64, usize)>> = BinaryHeap::new();
    heap.push(Reverse((hull_point_count(f), 0, 0)));
    let mut seq = 1u64;
    let mut expanded = 0usize;
    while let Some(Reverse((_, _, idx))) = heap.pop() {
        if expanded >= node_bound {
            break;
        }
        expanded += 1;
        let depth = nodes[idx].depth;
        if depth >= depth_bound {
            continue;
        }
        let g = nodes[idx].poly.clone();
        let cap = growth_cap(&g.newton().expect("search states are nonzero"));
        for spec in candidate_specs(&g, cap) {
            if !is_mutable(&g, &spec) {
                continue;
            }
            let Ok(next) = mutate(&g, &spec) else {
                continue;
            };
            let key = canonical_poly(&next)?;
            if !visited.insert(key) {
                continue;
            }
            let node =
                SearchNode { poly: next.clone(), parent: idx, step: Some(spec), depth: depth + 1 };
            nodes.push(node);
            if is_unit_monomial(&next) {
                return Ok(Some(extract_chain(&nodes, nodes.len() - 1)));
            }
            heap.push(Reverse((hull_point_count(&next), seq, nodes.len() - 1)));
            seq += 1;
        }
    }
    Ok(None)
}

/// The graph of mutation classes reachable from the unit monomial within a
/// size budget. Nodes are canonical polynomial representatives; edges
/// connect classes related by a single mutation.
#[derive(Debug, Clone)]
pub struct MutationGraph {
    nodes: Vec<LaurentPoly>,
    edges: BTreeSet<(usize, usize)>,
    index: BTreeMap<LaurentPoly, usize>,
}

impl MutationGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[LaurentPoly] {
        &self.nodes
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn index_of(&self, f: &LaurentPoly) -> Option<usize> {
        canonical_poly(f).ok().and_then(|c| self.index.get(&c).copied())
    }

    pub fn contains(&self, f: &LaurentPoly) -> bool {
        self.index_of(f).is_some()
    }
}

/// Side of the smallest axis-aligned square containing the Newton polygon,
/// zero for monomials and for the zero polynomial. The value depends on the
/// representative, not just its mutation class: a mutation can move a
/// polynomial into a larger square even when an equivalent small one exists.
pub fn polygon_size(f: &LaurentPoly) -> u32 {
    let mut points = f.terms().map(|(p, _)| p);
    let Some(first) = points.next() else {
        return 0;
    };
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (first.x, first.x, first.y, first.y);
    for p in points {
        xmin = xmin.min(p.x);
        xmax = xmax.max(p.x);
        ymin = ymin.min(p.y);
        ymax = ymax.max(p.y);
    }
    (xmax - xmin).max(ymax - ymin) as u32
}

fn build_graph_bounded(
    keep: impl Fn(&LaurentPoly) -> bool,
    s_cap: u32,
    include_products: bool,
) -> MutationGraph {
    let mut graph =
        MutationGraph { nodes: Vec::new(), edges: BTreeSet::new(), index: BTreeMap::new() };
    let one = LaurentPoly::one();
    if !keep(&one) {
        return graph;
    }
    graph.index.insert(one.clone(), 0);
    graph.nodes.push(one);
    let mut head = 0;
    loop {
        while head < graph.nodes.len() {
            let g = graph.nodes[head].clone();
            for spec in candidate_specs(&g, s_cap) {
                if !is_mutable(&g, &spec) {
                    continue;
                }
                let Ok(next) = mutate(&g, &spec) else {
                    continue;
                };
                if !keep(&next) {
                    continue;
                }
                let key = canonical_poly(&next).expect("mutation images are nonzero");
                let j = match graph.index.get(&key) {
                    Some(&j) => j,
                    None => {
                        let j = graph.nodes.len();
                        graph.index.insert(key.clone(), j);
                        graph.nodes.push(key);
                        j
                    }
                };
                if j != head {
                    graph.edges.insert((head.min(j), head.max(j)));
                }
            }
            head += 1;
        }
        if !include_products {
            break;
        }
        let n = graph.nodes.len();
        let mut added = false;
        for i in 0..n {
            for j in i..n {
                let prod = &graph.nodes[i].clone() * &graph.nodes[j].clone();
                if prod.is_zero() || !keep(&prod) {
                    continue;
                }
                let key = canonical_poly(&prod).expect("product of nonzero is nonzero");
                if !graph.index.contains_key(&key) {
                    graph.index.insert(key.clone(), graph.nodes.len());
                    graph.nodes.push(key);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    graph
}

/// Breadth-first closure of the unit monomial under candidate mutations with
/// at most `max_points` lattice points in the Newton polytope. With
/// `include_products`, products of reached classes are added as extra seeds
/// until no new class appears.
pub fn build_mutation_graph(max_points: usize, include_products: bool) -> MutationGraph {
    build_graph_bounded(
        |f| hull_point_count(f) <= max_points,
        max_points as u32,
        include_products,
    )
}

/// Breadth-first closure of the unit monomial under candidate mutations whose
/// images fit in an axis-aligned square of side `max_size`. The bound applies
/// to each image as produced, before canonical relabeling, so a class whose
/// small representative is only reachable through a larger one is left out.
pub fn build_mutation_graph_by_size(max_size: u32, include_products: bool) -> MutationGraph {
    build_graph_bounded(|f| polygon_size(f) <= max_size, max_size.max(1), include_products)
}

/// The start of the longest suffix of `counts` that is periodic with the
/// given period, provided the suffix covers at least two full cycles.
pub fn stable_tail_start(counts: &[usize], period: usize) -> Option<usize> {
    let n = counts.len();
    let mut start = 0;
    for j in period..n {
        if counts[j] != counts[j - period] {
            start = j + 1 - period;
        }
    }
    if n >= start + 2 * period {
        Some(start)
    } else {
        None
    }
}

/// Stabilized pair counts for fixed `a`, scanning `b` from `a + 1` to
/// `b_limit`: the count per residue of `b` modulo `a` once the counts are
/// periodic through the end of the scan. `None` if the scan window shows no
/// stable cycle.
pub fn large_b_counts(a: u64, b_limit: u64) -> Option<BTreeMap<u64, usize>> {
    if a == 0 || b_limit <= a {
        return None;
    }
    let start = a + 1;
    let counts: Vec<usize> = (start..=b_limit).map(|b| count_comb(a, b)).collect();
    let i = stable_tail_start(&counts, a as usize)?;
    let mut map = BTreeMap::new();
    for d in 0..a as usize {
        let b = start + (i + d) as u64;
        map.insert(b % a, counts[i + d]);
    }
    Some(map)
}

/// Stabilized pair counts along the diagonal `b = a + k`, scanning `a` up to
/// `a_limit`: the count per residue of `a` modulo `k` once the counts are
/// periodic through the end of the scan.
pub fn large_offset_counts(k: u64, a_limit: u64) -> Option<BTreeMap<u64, usize>> {
    if k == 0 || a_limit == 0 {
        return None;
    }
    let counts: Vec<usize> = (1..=a_limit).map(|a| count_comb(a, a + k)).collect();
    let i = stable_tail_start(&counts, k as usize)?;
    let mut map = BTreeMap::new();
    for d in 0..k as usize {
        let a = 1 + (i + d) as u64;
        map.insert(a % k, counts[i + d]);
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisibility::dual_pair;
    use num_bigint::BigInt;

    fn pt(x: Coord, y: Coord) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    fn poly(terms: &[(Coord, Coord, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(x, y, c)| (pt(x, y), BigInt::from(c))))
    }

    fn partition(parts: &[u64]) -> Partition {
        Partition::new(parts.iter().copied()).unwrap()
    }

    fn pair(a: &[u64], b: &[u64]) -> DualPair {
        DualPair::new(partition(a), partition(b))
    }

    /// `(1+y)^3 + 2x(1+y) + x^2` on `Conv{(0,0),(2,0),(0,3)}`.
    fn tom() -> LaurentPoly {
        poly(&[(0, 0, 1), (0, 1, 3), (0, 2, 3), (0, 3, 1), (1, 0, 2), (1, 1, 2), (2, 0, 1)])
    }

    /// `(1+y)^3 + x(2+3y) + x^2` on `Conv{(0,0),(2,0),(0,3)}`.
    fn jerry() -> LaurentPoly {
        poly(&[(0, 0, 1), (0, 1, 3), (0, 2, 3), (0, 3, 1), (1, 0, 2), (1, 1, 3), (2, 0, 1)])
    }

    #[test]
    fn enumerates_the_two_pairs_on_the_two_three_triangle() {
        let pairs = enumerate_comb(2, 3);
        assert_eq!(pairs, vec![pair(&[1, 1], &[2, 1]), pair(&[2], &[1, 1, 1])]);
    }

    #[test]
    fn enumerates_small_triangles() {
        assert_eq!(count_comb(3, 4), 3);
        assert_eq!(
            enumerate_comb(3, 5),
            vec![
                pair(&[1, 1, 1], &[3, 2]),
                pair(&[2, 1], &[3, 1, 1]),
                pair(&[3], &[2, 1, 1, 1]),
            ]
        );
        assert_eq!(count_comb(3, 7), 4);
        for k in 1..=6 {
            assert_eq!(count_comb(1, k), 1, "k={k}");
        }
    }

    #[test]
    fn enumeration_output_is_sorted_and_satisfies_the_conditions() {
        for (a, b) in [(4, 7), (5, 6), (5, 7), (6, 7)] {
            let pairs = enumerate_comb(a, b);
            for p in &pairs {
                assert_eq!((p.a(), p.b()), (a, b));
                assert!(satisfies_comb(p), "({a},{b}): {p}");
            }
            let mut sorted = pairs.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(pairs, sorted);
        }
    }

    #[test]
    fn enumeration_is_symmetric_under_swapping_the_legs() {
        for (a, b) in [(2, 3), (3, 5), (4, 7), (5, 6)] {
            let mut swapped: Vec<DualPair> =
                enumerate_comb(b, a).iter().map(DualPair::swap).collect();
            swapped.sort();
            assert_eq!(enumerate_comb(a, b), swapped, "({a},{b})");
        }
    }

    #[test]
    fn classifies_the_named_families() {
        assert_eq!(classify_family(&pair(&[1, 1], &[2, 1]), 2, 3), FamilyLabel::Tom);
        assert_eq!(classify_family(&pair(&[2], &[1, 1, 1]), 2, 3), FamilyLabel::Jerry);
        assert_eq!(classify_family(&pair(&[3, 2], &[3, 3]), 5, 6), FamilyLabel::Spike);
        assert_eq!(classify_family(&pair(&[2, 2], &[3, 2]), 4, 5), FamilyLabel::Spike);
        assert_eq!(classify_family(&pair(&[1, 1, 1], &[3, 2]), 3, 5), FamilyLabel::Tom);
        assert_eq!(classify_family(&pair(&[2, 1], &[3, 1, 1]), 3, 5), FamilyLabel::Spike);
        assert_eq!(classify_family(&pair(&[3], &[2, 1, 1, 1]), 3, 5), FamilyLabel::Tyke);
        assert_eq!(classify_family(&pair(&[4, 1], &[3, 3, 1]), 5, 7), FamilyLabel::Unnamed);
    }

    #[test]
    fn classification_normalizes_the_orientation() {
        assert_eq!(classify_family(&pair(&[2, 1], &[1, 1]), 3, 2), FamilyLabel::Tom);
        assert_eq!(classify_family(&pair(&[1, 1, 1], &[2]), 3, 2), FamilyLabel::Jerry);
    }

    #[test]
    fn every_enumerated_pair_in_the_advertised_ranges_is_named() {
        for (a, b) in [(2, 5), (3, 7), (3, 8), (4, 5), (5, 6)] {
            for p in enumerate_comb(a, b) {
                assert_ne!(classify_family(&p, a, b), FamilyLabel::Unnamed, "({a},{b}): {p}");
            }
        }
    }

    #[test]
    fn reduces_the_trivial_pair_with_no_moves() {
        assert_eq!(triangular_reduce(&pair(&[1], &[1])), Some(vec![]));
    }

    #[test]
    fn reduces_tom_in_three_moves() {
        let tom_pair = pair(&[1, 1], &[2, 1]);
        let moves = triangular_reduce(&tom_pair).unwrap();
        assert_eq!(moves.len(), 3);
        let mut p = tom_pair;
        for mv in moves {
            p = apply_pair_move(&p, mv).unwrap();
        }
        assert_eq!(p, pair(&[1], &[1]));
    }

    #[test]
    fn reduction_replays_on_all_small_coprime_pairs() {
        for a in 1..=8u64 {
            for b in 1..=8u64 {
                if a + b > 9 || a.gcd(&b) != 1 {
                    continue;
                }
                for p in enumerate_comb(a, b) {
                    let moves = triangular_reduce(&p)
                        .unwrap_or_else(|| panic!("({a},{b}): {p} does not reduce"));
                    let mut q = p.clone();
                    for mv in &moves {
                        let next = apply_pair_move(&q, *mv).unwrap();
                        if *mv != TriangularMove::Tau {
                            assert!(next.a() + next.b() < q.a() + q.b());
                        }
                        q = next;
                    }
                    assert_eq!(q, pair(&[1], &[1]), "({a},{b}): {p}");
                }
            }
        }
    }

    #[test]
    fn the_unnamed_five_seven_pair_does_not_reduce() {
        assert_eq!(triangular_reduce(&pair(&[4, 1], &[3, 3, 1])), None);
    }

    #[test]
    fn a_non_coprime_pair_can_be_stuck() {
        let p = pair(&[2, 1], &[3, 2, 1]);
        assert!(satisfies_comb(&p));
        assert_eq!(triangular_reduce(&p), None);
    }

    #[test]
    fn rebuilds_tom_from_its_pair() {
        let f = pair_polynomial(&pair(&[1, 1], &[2, 1])).unwrap().unwrap();
        assert_eq!(f, tom());
    }

    #[test]
    fn rebuilds_jerry_from_its_pair() {
        let f = pair_polynomial(&pair(&[2], &[1, 1, 1])).unwrap().unwrap();
        assert_eq!(f, jerry());
    }

    #[test]
    fn pair_reconstruction_roundtrips_through_dual_pairs() {
        for a in 1..=7u64 {
            for b in 1..=7u64 {
                if a + b > 8 || a.gcd(&b) != 1 {
                    continue;
                }
                for p in enumerate_comb(a, b) {
                    let f = pair_polynomial(&p)
                        .unwrap()
                        .unwrap_or_else(|| panic!("({a},{b}): {p} has no polynomial"));
                    assert_eq!(dual_pair(&f).unwrap(), p, "({a},{b})");
                }
            }
        }
    }

    #[test]
    fn canonical_poly_is_invariant_under_monomial_maps() {
        let f = tom();
        let maps = [
            UnimodularAffineMap::new([[1, 2], [0, 1]], pt(3, -1)).unwrap(),
            UnimodularAffineMap::new([[0, 1], [1, 0]], pt(-2, 5)).unwrap(),
            UnimodularAffineMap::new([[2, 1], [1, 1]], pt(0, 4)).unwrap(),
        ];
        let base = canonical_poly(&f).unwrap();
        for m in &maps {
            assert_eq!(canonical_poly(&f.apply_map(m)).unwrap(), base);
        }
        assert_eq!(canonical_poly(&base).unwrap(), base);
    }

    #[test]
    fn canonical_poly_normalizes_points_and_segments() {
        let point = poly(&[(3, -2, 5)]);
        assert_eq!(canonical_poly(&point).unwrap(), poly(&[(0, 0, 5)]));
        let segment = poly(&[(1, 1, 2), (2, 2, 1)]);
        assert_eq!(canonical_poly(&segment).unwrap(), poly(&[(0, 0, 1), (1, 0, 2)]));
        let symmetric = poly(&[(0, 0, 1), (1, 0, 1)]);
        assert_eq!(canonical_poly(&symmetric).unwrap(), symmetric);
    }

    #[test]
    fn verifies_tom_down_to_a_unit_monomial() {
        let cert = verify_zmlp(&tom(), 8, 500).unwrap().expect("Tom is zero mutable");
        assert!(cert.verify());
        assert_eq!(cert.polys.first().unwrap(), &tom());
        assert!(cert.len() >= 3);
    }

    #[test]
    fn verifies_jerry_down_to_a_unit_monomial() {
        let cert = verify_zmlp(&jerry(), 8, 500).unwrap().expect("Jerry is zero mutable");
        assert!(cert.verify());
    }

    #[test]
    fn verify_respects_the_bounds() {
        assert_eq!(verify_zmlp(&tom(), 1, 500).unwrap(), None);
        assert_eq!(verify_zmlp(&tom(), 8, 1).unwrap(), None);
    }

    #[test]
    fn verify_rejects_a_non_mutable_polynomial() {
        let f = poly(&[(0, 0, 2), (1, 0, 1), (0, 1, 1)]);
        assert_eq!(verify_zmlp(&f, 4, 200).unwrap(), None);
    }

    #[test]
    fn verify_accepts_a_unit_monomial_immediately() {
        let one = LaurentPoly::one();
        let cert = verify_zmlp(&one, 0, 0).unwrap().unwrap();
        assert!(cert.is_empty());
        assert!(cert.verify());
    }

    #[test]
    fn builds_the_three_point_graph() {
        let g = build_mutation_graph(3, false);
        assert_eq!(g.nodes()[0], LaurentPoly::one());
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert!(g.contains(&poly(&[(0, 0, 1), (1, 0, 1), (0, 1, 1)])));
        assert!(g.contains(&poly(&[(0, 0, 1), (1, 0, 2), (2, 0, 1)])));
        assert!(!g.contains(&poly(&[(0, 0, 1), (1, 0, 1), (2, 0, 1)])));
    }

    #[test]
    fn the_seven_point_graph_reaches_tom_and_jerry() {
        let g = build_mutation_graph(7, false);
        assert!(g.contains(&tom()));
        assert!(g.contains(&jerry()));
        assert!(g.edge_count() >= g.node_count() - 1);
    }

    #[test]
    fn measures_the_bounding_square() {
        assert_eq!(polygon_size(&LaurentPoly::zero()), 0);
        assert_eq!(polygon_size(&LaurentPoly::one()), 0);
        assert_eq!(polygon_size(&poly(&[(0, 0, 1), (3, 0, 3), (0, 2, 1)])), 3);
        assert_eq!(polygon_size(&poly(&[(-1, 0, 1), (1, 0, 1)])), 2);
        assert_eq!(polygon_size(&tom()), 3);
    }

    #[test]
    fn the_size_three_graph_reaches_tom_and_jerry_and_stays_connected() {
        let g = build_mutation_graph_by_size(3, false);
        assert_eq!(g.nodes()[0], LaurentPoly::one());
        assert!(g.contains(&tom()));
        assert!(g.contains(&jerry()));
        let mut seen = alloc::vec![false; g.node_count()];
        seen[0] = true;
        let mut frontier = alloc::vec![0];
        while let Some(i) = frontier.pop() {
            for (u, v) in g.edges() {
                for (from, to) in [(u, v), (v, u)] {
                    if from == i && !seen[to] {
                        seen[to] = true;
                        frontier.push(to);
                    }
                }
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn product_closure_only_adds_nodes() {
        let plain = build_mutation_graph(4, false);
        let with_products = build_mutation_graph(4, true);
        assert!(with_products.node_count() >= plain.node_count());
        for f in plain.nodes() {
            assert!(with_products.contains(f));
        }
    }

    #[test]
    fn stabilized_counts_for_thin_triangles() {
        assert_eq!(large_b_counts(1, 20), Some([(0, 1)].into()));
        assert_eq!(large_b_counts(2, 30), Some([(0, 0), (1, 2)].into()));
    }

    #[test]
    fn stabilized_counts_along_the_first_diagonal() {
        assert_eq!(large_offset_counts(1, 12), Some([(0, 3)].into()));
    }
}
