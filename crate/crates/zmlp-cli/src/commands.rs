//! One function per subcommand. Each returns the rendered output plus a
//! pass flag; the binary prints the text and turns a failed golden check
//! into a nonzero exit code.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{anyhow, bail, ensure, Result};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use zmlp_core::divisibility::{div_tuple, dual_pair, reqdiv, DualPair, Partition};
use zmlp_core::lattice::{Hull, LatticePoint, LatticePolygon};
use zmlp_core::mutation::MutationSpec;
use zmlp_core::toric::{
    central_subdivision, closing_sum, cone_over, dual_cone, extraction_certificate,
    singularity_type, wall_functions, LambdaPolicy, ToricError,
};
use zmlp_core::zmlp::{
    apply_pair_move, apply_poly_move, build_mutation_graph, build_mutation_graph_by_size,
    classify_family, count_comb, enumerate_comb, pair_polynomial, stable_tail_start,
    triangular_reduce, verify_zmlp, FamilyLabel, MutationGraph,
};

use crate::io::{
    coefficient_grid, parse_cone, parse_pair, read_poly_file, to_json_pretty, CertificateRec,
    DivTupleRec, PairRec, PolyRec,
};
use crate::par::par_map;

/// Rendered subcommand output. `passed` is false exactly when a golden
/// comparison or a verification matrix failed.
pub struct Report {
    pub text: String,
    pub passed: bool,
}

fn ok(text: String) -> Report {
    Report { text, passed: true }
}

fn format_functional(spec: &MutationSpec) -> String {
    let n = spec.phi().normal;
    let c = spec.phi().constant;
    match c {
        0 => format!("<({},{}),m>", n.x, n.y),
        c if c > 0 => format!("<({},{}),m> + {c}", n.x, n.y),
        c => format!("<({},{}),m> - {}", n.x, n.y, -c),
    }
}

pub fn cmd_enum(a: u64, b: u64, json: bool) -> Result<Report> {
    ensure!(a >= 1 && b >= 1, "triangle sides must be positive");
    let pairs = enumerate_comb(a, b);
    if json {
        #[derive(Serialize)]
        struct Out {
            a: u64,
            b: u64,
            count: usize,
            pairs: Vec<PairRec>,
        }
        let out = Out {
            a,
            b,
            count: pairs.len(),
            pairs: pairs.iter().map(PairRec::from_pair).collect(),
        };
        return Ok(ok(to_json_pretty(&out)?));
    }
    let mut text = String::new();
    for p in &pairs {
        writeln!(text, "{p}")?;
    }
    writeln!(text, "{} pair(s) on the ({a},{b}) triangle", pairs.len())?;
    Ok(ok(text))
}

pub fn cmd_classify(a: u64, b: u64, json: bool) -> Result<Report> {
    ensure!(a >= 1 && b >= 1, "triangle sides must be positive");
    let pairs = enumerate_comb(a, b);
    let labelled: Vec<(DualPair, FamilyLabel)> =
        pairs.into_iter().map(|p| (p.clone(), classify_family(&p, a, b))).collect();
    if json {
        #[derive(Serialize)]
        struct Row {
            pair: PairRec,
            family: String,
        }
        let rows: Vec<Row> = labelled
            .iter()
            .map(|(p, f)| Row { pair: PairRec::from_pair(p), family: f.to_string() })
            .collect();
        return Ok(ok(to_json_pretty(&rows)?));
    }
    let mut text = String::new();
    for (p, f) in &labelled {
        writeln!(text, "{p}  {f}")?;
    }
    writeln!(text, "{} pair(s) on the ({a},{b}) triangle", labelled.len())?;
    Ok(ok(text))
}

pub fn cmd_verify(poly_path: &str, depth: usize, nodes: usize, json: bool) -> Result<Report> {
    let f = read_poly_file(poly_path)?;
    let found = verify_zmlp(&f, depth, nodes).map_err(|e| anyhow!("{e}"))?;
    let Some(cert) = found else {
        let msg = format!("no certificate found within depth {depth} and {nodes} nodes\n");
        return Ok(ok(msg));
    };
    ensure!(cert.verify(), "internal error: certificate failed to replay");
    if json {
        return Ok(ok(to_json_pretty(&CertificateRec::from_certificate(&cert))?));
    }
    let mut text = String::new();
    writeln!(text, "f = {f}")?;
    writeln!(text, "certificate with {} step(s):", cert.len())?;
    for (i, step) in cert.steps.iter().enumerate() {
        writeln!(
            text,
            "  step {}: phi = {}, h = {}  ->  {}",
            i + 1,
            format_functional(step),
            step.h(),
            cert.polys[i + 1]
        )?;
    }
    Ok(ok(text))
}

/// DOT rendering of the graph: one box per canonical class labelled with its
/// coefficient grid, undirected edges for single mutations.
pub fn dot_graph(g: &MutationGraph) -> String {
    let mut out = String::from("graph mutations {\n  node [shape=box fontname=\"monospace\"];\n");
    for (i, f) in g.nodes().iter().enumerate() {
        let label = coefficient_grid(f).join("\\n");
        let _ = writeln!(out, "  n{i} [label=\"{label}\"];");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  n{u} -- n{v};");
    }
    out.push_str("}\n");
    out
}

pub fn cmd_graph(
    max_size: Option<u32>,
    max_points: Option<usize>,
    include_products: bool,
    dot_path: Option<&str>,
    json: bool,
) -> Result<Report> {
    let g = match (max_size, max_points) {
        (Some(_), Some(_)) => bail!("choose one of --max-size and --max-points"),
        (Some(s), None) => build_mutation_graph_by_size(s, include_products),
        (None, Some(n)) => build_mutation_graph(n, include_products),
        (None, None) => bail!("one of --max-size or --max-points is required"),
    };
    if let Some(path) = dot_path {
        std::fs::write(path, dot_graph(&g))?;
    }
    if json {
        #[derive(Serialize)]
        struct Out {
            nodes: Vec<PolyRec>,
            edges: Vec<[usize; 2]>,
        }
        let out = Out {
            nodes: g.nodes().iter().map(PolyRec::from_poly).collect(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        };
        return Ok(ok(to_json_pretty(&out)?));
    }
    let mut text = String::new();
    writeln!(text, "{} node(s), {} edge(s)", g.node_count(), g.edge_count())?;
    if let Some(path) = dot_path {
        writeln!(text, "DOT written to {path}")?;
    }
    Ok(ok(text))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub k: u64,
    pub a: u64,
    pub b: u64,
    pub family: String,
    pub pair: PairRec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyTable {
    pub rows: Vec<FamilyRow>,
}

const FAMILY_GOLDEN: &str = include_str!("../fixtures/family_rows.json");

/// The four triangle shapes the classification table covers at a given `k`.
fn table_triangles(k: u64) -> Vec<(u64, u64)> {
    let mut t = Vec::new();
    if k >= 1 {
        t.push((1, k));
    }
    if k >= 3 && !k.is_multiple_of(2) {
        t.push((2, k));
    }
    if k >= 4 && !k.is_multiple_of(3) {
        t.push((3, k));
    }
    if k >= 3 {
        t.push((k, k + 1));
    }
    t
}

/// Enumerates and classifies every pair on the table triangles for `k`.
pub fn family_rows(k: u64) -> Vec<FamilyRow> {
    let mut rows = Vec::new();
    for (a, b) in table_triangles(k) {
        for p in enumerate_comb(a, b) {
            let family = classify_family(&p, a, b).to_string();
            rows.push(FamilyRow { k, a, b, family, pair: PairRec::from_pair(&p) });
        }
    }
    rows
}

fn golden_family_table() -> Result<FamilyTable> {
    serde_json::from_str(FAMILY_GOLDEN).map_err(|e| anyhow!("bad built-in family table: {e}"))
}

pub fn cmd_table1(ks: &[u64], json: bool) -> Result<Report> {
    let golden = golden_family_table()?;
    let golden_ks: Vec<u64> = {
        let mut seen = Vec::new();
        for r in &golden.rows {
            if !seen.contains(&r.k) {
                seen.push(r.k);
            }
        }
        seen
    };
    let ks: Vec<u64> = if ks.is_empty() { golden_ks.clone() } else { ks.to_vec() };
    let mut text = String::new();
    let mut passed = true;
    let mut all_rows = Vec::new();
    for &k in &ks {
        let rows = family_rows(k);
        writeln!(text, "k = {k}")?;
        for r in &rows {
            let pair = r.pair.to_pair()?;
            writeln!(text, "  ({},{}): {} {}", r.a, r.b, r.family, pair)?;
        }
        if golden_ks.contains(&k) {
            let expected: Vec<&FamilyRow> = golden.rows.iter().filter(|r| r.k == k).collect();
            let live: Vec<&FamilyRow> = rows.iter().collect();
            let matches = expected.len() == live.len()
                && expected.iter().zip(&live).all(|(e, l)| **e == **l);
            if !matches {
                passed = false;
                writeln!(text, "  MISMATCH against the built-in table:")?;
                for e in &expected {
                    writeln!(text, "    expected ({},{}): {} {}", e.a, e.b, e.family, e.pair.to_pair()?)?;
                }
            }
        } else {
            writeln!(text, "  (no built-in rows for k = {k})")?;
        }
        all_rows.extend(rows);
    }
    writeln!(text, "golden check: {}", if passed { "ok" } else { "MISMATCH" })?;
    if json {
        #[derive(Serialize)]
        struct Out {
            rows: Vec<FamilyRow>,
            golden_ok: bool,
        }
        let out = Out { rows: all_rows, golden_ok: passed };
        return Ok(Report { text: to_json_pretty(&out)?, passed });
    }
    Ok(Report { text, passed })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StableCounts {
    pub left: BTreeMap<String, BTreeMap<String, usize>>,
    pub right: BTreeMap<String, BTreeMap<String, usize>>,
}

const COUNT_GOLDEN: &str = include_str!("../fixtures/stable_counts.json");

/// Stabilized counts for fixed `a`, with `b` scanned to `a + scan`; the scan
/// is spread over the worker threads. Matches the library's sequential scan.
pub fn left_counts(a: u64, scan: u64, jobs: usize) -> Option<BTreeMap<u64, usize>> {
    if a == 0 || scan == 0 {
        return None;
    }
    let bs: Vec<u64> = (a + 1..=a + scan).collect();
    let counts = par_map(jobs, &bs, |&b| count_comb(a, b));
    let i = stable_tail_start(&counts, a as usize)?;
    Some((0..a as usize).map(|d| (bs[i + d] % a, counts[i + d])).collect())
}

/// Stabilized counts along `b = a + k`, with `a` scanned to `a_limit`.
pub fn right_counts(k: u64, a_limit: u64, jobs: usize) -> Option<BTreeMap<u64, usize>> {
    if k == 0 || a_limit == 0 {
        return None;
    }
    let avals: Vec<u64> = (1..=a_limit).collect();
    let counts = par_map(jobs, &avals, |&a| count_comb(a, a + k));
    let i = stable_tail_start(&counts, k as usize)?;
    Some((0..k as usize).map(|d| (avals[i + d] % k, counts[i + d])).collect())
}

fn render_residues(map: &BTreeMap<u64, usize>) -> String {
    map.iter()
        .map(|(r, c)| format!("{r} -> {c}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn cmd_table2(
    a_max: u64,
    k_max: u64,
    scan: u64,
    right_scan: u64,
    jobs: usize,
    json: bool,
) -> Result<Report> {
    ensure!((1..=8).contains(&a_max), "--a-max must lie in 1..=8");
    ensure!((1..=5).contains(&k_max), "--k-max must lie in 1..=5");
    let golden: StableCounts =
        serde_json::from_str(COUNT_GOLDEN).map_err(|e| anyhow!("bad built-in counts: {e}"))?;
    let mut text = String::new();
    let mut passed = true;
    let mut live = StableCounts { left: BTreeMap::new(), right: BTreeMap::new() };
    writeln!(text, "counts for b large against a (b scanned to a + {scan}):")?;
    for a in 1..=a_max {
        match left_counts(a, scan, jobs) {
            Some(map) => {
                writeln!(text, "  a = {a}: {}", render_residues(&map))?;
                live.left.insert(
                    a.to_string(),
                    map.iter().map(|(r, c)| (r.to_string(), *c)).collect(),
                );
            }
            None => {
                writeln!(text, "  a = {a}: not stabilized within the scan window")?;
            }
        }
    }
    writeln!(text, "counts for b = a + k, a large (a scanned to {right_scan}):")?;
    for k in 1..=k_max {
        match right_counts(k, right_scan, jobs) {
            Some(map) => {
                writeln!(text, "  k = {k}: {}", render_residues(&map))?;
                live.right.insert(
                    k.to_string(),
                    map.iter().map(|(r, c)| (r.to_string(), *c)).collect(),
                );
            }
            None => {
                writeln!(text, "  k = {k}: not stabilized within the scan window")?;
            }
        }
    }
    for (key, map) in &live.left {
        if let Some(expected) = golden.left.get(key) {
            if expected != map {
                passed = false;
                writeln!(text, "MISMATCH at a = {key}: expected {expected:?}")?;
            }
        }
    }
    for (key, map) in &live.right {
        if let Some(expected) = golden.right.get(key) {
            if expected != map {
                passed = false;
                writeln!(text, "MISMATCH at k = {key}: expected {expected:?}")?;
            }
        }
    }
    writeln!(text, "golden check: {}", if passed { "ok" } else { "MISMATCH" })?;
    if json {
        return Ok(Report { text: to_json_pretty(&live)?, passed });
    }
    Ok(Report { text, passed })
}

struct TriangleCheck {
    a: u64,
    b: u64,
    pairs: usize,
    nontriangular: Vec<String>,
    failures: Vec<String>,
}

/// Reduces every pair on the `(a, b)` triangle, replaying each certificate
/// on the pair and on the reconstructed polynomial.
fn check_triangle(a: u64, b: u64) -> TriangleCheck {
    let unit = DualPair::new(
        Partition::new([1]).expect("valid"),
        Partition::new([1]).expect("valid"),
    );
    let pairs = enumerate_comb(a, b);
    let mut out = TriangleCheck {
        a,
        b,
        pairs: pairs.len(),
        nontriangular: Vec::new(),
        failures: Vec::new(),
    };
    for p in pairs {
        let Some(moves) = triangular_reduce(&p) else {
            out.nontriangular.push(p.to_string());
            continue;
        };
        let mut q = p.clone();
        let mut f = match pair_polynomial(&p) {
            Ok(Some(f)) => f,
            Ok(None) => {
                out.failures.push(format!("{p}: no polynomial realizes the pair"));
                continue;
            }
            Err(e) => {
                out.failures.push(format!("{p}: reconstruction failed: {e}"));
                continue;
            }
        };
        let mut broke = false;
        for mv in &moves {
            let Some(nq) = apply_pair_move(&q, *mv) else {
                out.failures.push(format!("{p}: move {mv} undefined on {q}"));
                broke = true;
                break;
            };
            let nf = match apply_poly_move(&f, *mv) {
                Ok(Some(nf)) => nf,
                Ok(None) | Err(_) => {
                    out.failures.push(format!("{p}: move {mv} undefined on the polynomial"));
                    broke = true;
                    break;
                }
            };
            match dual_pair(&nf) {
                Ok(d) if d == nq => {}
                _ => {
                    out.failures.push(format!("{p}: pair and polynomial disagree after {mv}"));
                    broke = true;
                    break;
                }
            }
            q = nq;
            f = nf;
        }
        if broke {
            continue;
        }
        if q != unit {
            out.failures.push(format!("{p}: replay ended at {q}, not (1),(1)"));
        }
    }
    out
}

pub fn cmd_verify_small(limit: u64, jobs: usize, json: bool) -> Result<Report> {
    ensure!(limit >= 2, "--limit must be at least 2");
    ensure!(limit <= 13, "--limit is capped at 13 to keep the matrix tractable");
    let mut triangles = Vec::new();
    for a in 1..=limit {
        for b in a..=limit {
            if a + b <= limit && a.gcd(&b) == 1 {
                triangles.push((a, b));
            }
        }
    }
    let checks = par_map(jobs, &triangles, |&(a, b)| check_triangle(a, b));
    let base = pair_polynomial(&DualPair::new(
        Partition::new([1]).expect("valid"),
        Partition::new([1]).expect("valid"),
    ))?
    .expect("the unit triangle has a polynomial");
    let base_cert = verify_zmlp(&base, 4, 1000)
        .map_err(|e| anyhow!("{e}"))?
        .filter(|c| c.verify());
    let mut text = String::new();
    let mut passed = base_cert.is_some();
    writeln!(
        text,
        "base {base}: {}",
        if base_cert.is_some() { "mutates to 1" } else { "FAILED to mutate to 1" }
    )?;
    let mut total_pairs = 0;
    for c in &checks {
        total_pairs += c.pairs;
        let mut status = String::from("ok");
        if !c.nontriangular.is_empty() {
            if c.a + c.b <= 11 {
                passed = false;
                status = format!("FAILED, no triangular certificate: {}", c.nontriangular.join("; "));
            } else {
                status =
                    format!("needs non-triangular search: {}", c.nontriangular.join("; "));
            }
        }
        if !c.failures.is_empty() {
            passed = false;
            status = format!("FAILED: {}", c.failures.join("; "));
        }
        writeln!(text, "({},{}): {} pair(s), {status}", c.a, c.b, c.pairs)?;
    }
    writeln!(
        text,
        "checked {} triangle(s), {} pair(s): {}",
        checks.len(),
        total_pairs,
        if passed { "all certificates replayed" } else { "FAILURES above" }
    )?;
    if json {
        #[derive(Serialize)]
        struct Row {
            a: u64,
            b: u64,
            pairs: usize,
            nontriangular: Vec<String>,
            failures: Vec<String>,
        }
        #[derive(Serialize)]
        struct Out {
            rows: Vec<Row>,
            passed: bool,
        }
        let out = Out {
            rows: checks
                .iter()
                .map(|c| Row {
                    a: c.a,
                    b: c.b,
                    pairs: c.pairs,
                    nontriangular: c.nontriangular.clone(),
                    failures: c.failures.clone(),
                })
                .collect(),
            passed,
        };
        return Ok(Report { text: to_json_pretty(&out)?, passed });
    }
    Ok(Report { text, passed })
}

fn standard_triangle(a: u64, b: u64) -> LatticePolygon {
    LatticePolygon::from_vertices(vec![
        LatticePoint::ORIGIN,
        LatticePoint::new(a as i64, 0),
        LatticePoint::new(0, b as i64),
    ])
    .expect("standard triangle is a polygon")
}

pub fn cmd_toric(a: u64, b: u64, json: bool) -> Result<Report> {
    ensure!(a >= 1 && b >= 1, "triangle sides must be positive");
    let tri = standard_triangle(a, b);
    let sigma = cone_over(&tri);
    let dual = dual_cone(&sigma).map_err(|e| anyhow!("{e}"))?;
    let fan = central_subdivision(&dual, [0, 0, 1]).map_err(|e| anyhow!("{e}"))?;
    let mut components = Vec::new();
    for cone in fan.cones() {
        let t = singularity_type(cone).map_err(|e| anyhow!("{e}"))?;
        components.push((cone.to_string(), t.to_string()));
    }
    if json {
        #[derive(Serialize)]
        struct Out {
            cone: String,
            dual: String,
            components: Vec<(String, String)>,
        }
        let out = Out { cone: sigma.to_string(), dual: dual.to_string(), components };
        return Ok(ok(to_json_pretty(&out)?));
    }
    let mut text = String::new();
    writeln!(text, "cone over the ({a},{b}) triangle: {sigma}")?;
    writeln!(text, "dual cone: {dual}")?;
    writeln!(text, "central subdivision at 0,0,1:")?;
    for (cone, t) in &components {
        writeln!(text, "  {cone}  ->  {t}")?;
    }
    Ok(ok(text))
}

pub fn cmd_sing(cone_text: &str, json: bool) -> Result<Report> {
    let cone = parse_cone(cone_text)?;
    let rendered = match singularity_type(&cone) {
        Ok(t) => t.to_string(),
        Err(ToricError::NonCyclicQuotient) => String::from("non-cyclic quotient"),
        Err(e) => bail!("{e}"),
    };
    if json {
        #[derive(Serialize)]
        struct Out {
            cone: String,
            singularity: String,
        }
        return Ok(ok(to_json_pretty(&Out { cone: cone.to_string(), singularity: rendered })?));
    }
    Ok(ok(format!("{rendered}\n")))
}

pub fn cmd_walls(poly_path: &str, distinct: bool, json: bool) -> Result<Report> {
    let f = read_poly_file(poly_path)?;
    let policy = if distinct { LambdaPolicy::Distinct } else { LambdaPolicy::Sample };
    let walls = wall_functions(&f, policy).map_err(|e| anyhow!("{e}"))?;
    let Hull::Polygon(poly) = f.newton().map_err(|e| anyhow!("{e:?}"))? else {
        bail!("the Newton polytope is not two-dimensional");
    };
    let closes = closing_sum(&poly);
    if json {
        #[derive(Serialize)]
        struct Wall {
            edge: usize,
            exponents: Vec<u64>,
            function: String,
        }
        #[derive(Serialize)]
        struct Out {
            walls: Vec<Wall>,
            closing_sum: [i64; 2],
        }
        let out = Out {
            walls: walls
                .iter()
                .map(|w| Wall {
                    edge: w.edge,
                    exponents: w.exponents.parts().to_vec(),
                    function: w.to_string(),
                })
                .collect(),
            closing_sum: [closes.x, closes.y],
        };
        return Ok(ok(to_json_pretty(&out)?));
    }
    let mut text = String::new();
    writeln!(text, "f = {f}")?;
    for w in &walls {
        writeln!(text, "edge {}: exponents {}, wall {w}", w.edge, w.exponents)?;
    }
    writeln!(text, "closing sum: ({}, {})", closes.x, closes.y)?;
    Ok(ok(text))
}

pub fn cmd_extract(a: u64, b: u64, pair_text: &str, json: bool) -> Result<Report> {
    let pair = parse_pair(pair_text)?;
    ensure!(
        pair.a() == a && pair.b() == b,
        "the pair {pair} has legs ({},{}), not ({a},{b})",
        pair.a(),
        pair.b()
    );
    ensure!(
        zmlp_core::zmlp::satisfies_comb(&pair),
        "the pair {pair} violates the dual-pair constraints on the ({a},{b}) triangle"
    );
    let family = classify_family(&pair, a, b);
    let found = extraction_certificate(&pair);
    if json {
        #[derive(Serialize)]
        struct Out {
            pair: PairRec,
            family: String,
            certificate: Option<CertOut>,
        }
        #[derive(Serialize)]
        struct CertOut {
            variant: String,
            moves: Vec<String>,
            base: String,
            singularity: String,
        }
        let out = Out {
            pair: PairRec::from_pair(&pair),
            family: family.to_string(),
            certificate: found.as_ref().map(|c| CertOut {
                variant: c.variant.to_string(),
                moves: c.moves.iter().map(|m| m.to_string()).collect(),
                base: c.base.to_string(),
                singularity: c.singularity.to_string(),
            }),
        };
        return Ok(ok(to_json_pretty(&out)?));
    }
    let mut text = String::new();
    writeln!(text, "pair {pair} on the ({a},{b}) triangle  [{family}]")?;
    match found {
        Some(c) => {
            writeln!(text, "variant: {}", c.variant)?;
            let moves = if c.moves.is_empty() {
                String::from("none")
            } else {
                c.moves.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ")
            };
            writeln!(text, "moves: {moves}")?;
            writeln!(text, "base: {}", c.base)?;
            writeln!(text, "singularity: {}", c.singularity)?;
        }
        None => {
            writeln!(
                text,
                "no reduction found; the known reductions only cover pairs whose \
                 first leg is all ones or a single part"
            )?;
        }
    }
    Ok(ok(text))
}

/// Text summary of the divisibility data of a polynomial: raw and required
/// tuples per edge plus the dual pair when the triangle is standard.
pub fn cmd_div(poly_path: &str, json: bool) -> Result<Report> {
    let f = read_poly_file(poly_path)?;
    let hull = f.newton().map_err(|e| anyhow!("{e:?}"))?;
    let Hull::Polygon(_) = hull else {
        bail!("the Newton polytope is not two-dimensional");
    };
    let req = reqdiv(&f).map_err(|e| anyhow!("{e}"))?;
    let mut raw = Vec::new();
    for e in 0..req.tuples.len() {
        raw.push(div_tuple(&f, e).map_err(|err| anyhow!("{err}"))?);
    }
    if json {
        #[derive(Serialize)]
        struct Out {
            div: Vec<DivTupleRec>,
            reqdiv: Vec<DivTupleRec>,
            unique: bool,
        }
        let out = Out {
            div: raw.iter().map(DivTupleRec::from_tuple).collect(),
            reqdiv: req.tuples.iter().map(DivTupleRec::from_tuple).collect(),
            unique: req.unique,
        };
        return Ok(ok(to_json_pretty(&out)?));
    }
    let mut text = String::new();
    writeln!(text, "f = {f}")?;
    for (d, r) in raw.iter().zip(&req.tuples) {
        let vals =
            |t: &zmlp_core::divisibility::DivTuple| {
                t.values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            };
        writeln!(
            text,
            "edge {}: levels {}..{}, div ({}), reqdiv ({})",
            d.edge,
            d.k_min,
            d.k_max(),
            vals(d),
            vals(r)
        )?;
    }
    if let Ok(p) = dual_pair(&f) {
        writeln!(text, "dual pair: {p}")?;
    }
    Ok(ok(text))
}
