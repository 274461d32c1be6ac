//! JSON and text wire formats shared by the subcommands.
//!
//! Polynomials travel as `{"terms": [{"exp": [i, j], "coeff": n}, ...]}`
//! sorted by exponent, polygons as `{"vertices": [[x, y], ...]}`, partitions
//! as plain arrays, and cones as semicolon-separated integer triples.

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use zmlp_core::divisibility::{DivTuple, DualPair, Partition};
use zmlp_core::lattice::{AffineFunctional, LatticePoint, LatticePolygon};
use zmlp_core::laurent::{LaurentPoly, Multiplicity};
use zmlp_core::mutation::{MutationCertificate, MutationSpec};
use zmlp_core::toric::{Cone3, Vector3};

/// One JSON coefficient: a plain integer when it fits, a decimal string
/// otherwise, accepted interchangeably on input.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffRec {
    Small(i64),
    Big(String),
}

impl CoeffRec {
    fn from_bigint(c: &BigInt) -> CoeffRec {
        match c.to_i64() {
            Some(n) => CoeffRec::Small(n),
            None => CoeffRec::Big(c.to_string()),
        }
    }

    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            CoeffRec::Small(n) => Ok(BigInt::from(*n)),
            CoeffRec::Big(s) => {
                s.parse().map_err(|e| anyhow::anyhow!("bad coefficient {s:?}: {e}"))
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermRec {
    pub exp: Vec<i64>,
    pub coeff: CoeffRec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyRec {
    pub terms: Vec<TermRec>,
}

impl PolyRec {
    pub fn from_poly(f: &LaurentPoly) -> PolyRec {
        let univariate = f.terms().all(|(p, _)| p.y == 0);
        let terms = f
            .terms()
            .map(|(p, c)| TermRec {
                exp: if univariate { vec![p.x] } else { vec![p.x, p.y] },
                coeff: CoeffRec::from_bigint(c),
            })
            .collect();
        PolyRec { terms }
    }

    pub fn to_poly(&self) -> Result<LaurentPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let exp = match t.exp[..] {
                [x] => LatticePoint::new(x, 0),
                [x, y] => LatticePoint::new(x, y),
                _ => bail!("exponent must have one or two entries, got {:?}", t.exp),
            };
            terms.push((exp, t.coeff.to_bigint()?));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

pub fn read_poly_file(path: &str) -> Result<LaurentPoly> {
    let data = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let rec: PolyRec = serde_json::from_str(&data).with_context(|| format!("parsing {path}"))?;
    let f = rec.to_poly()?;
    if f.is_zero() {
        bail!("{path} holds the zero polynomial");
    }
    Ok(f)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolygonRec {
    pub vertices: Vec<[i64; 2]>,
}

impl PolygonRec {
    pub fn from_polygon(p: &LatticePolygon) -> PolygonRec {
        PolygonRec { vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect() }
    }

    pub fn to_polygon(&self) -> Result<LatticePolygon> {
        let vertices =
            self.vertices.iter().map(|&[x, y]| LatticePoint::new(x, y)).collect::<Vec<_>>();
        LatticePolygon::from_vertices(vertices).map_err(|e| anyhow::anyhow!("bad polygon: {e:?}"))
    }
}

/// One divisibility value: a level order, or `"inf"` on the zero slice.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueRec {
    Finite(u64),
    Infinite(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivTupleRec {
    pub edge: usize,
    pub levels: [i64; 2],
    pub values: Vec<ValueRec>,
}

impl DivTupleRec {
    pub fn from_tuple(t: &DivTuple) -> DivTupleRec {
        DivTupleRec {
            edge: t.edge,
            levels: [t.k_min, t.k_max()],
            values: t
                .values
                .iter()
                .map(|v| match v.finite() {
                    Some(d) => ValueRec::Finite(d),
                    None => ValueRec::Infinite("inf".into()),
                })
                .collect(),
        }
    }

    pub fn to_tuple(&self) -> Result<DivTuple> {
        let mut values = Vec::with_capacity(self.values.len());
        for v in &self.values {
            values.push(match v {
                ValueRec::Finite(d) => Multiplicity::Finite(*d),
                ValueRec::Infinite(s) if s == "inf" => Multiplicity::Infinite,
                ValueRec::Infinite(s) => bail!("bad divisibility value {s:?}"),
            });
        }
        if self.levels[1] - self.levels[0] + 1 != self.values.len() as i64 {
            bail!("levels {:?} do not span {} values", self.levels, self.values.len());
        }
        Ok(DivTuple { edge: self.edge, k_min: self.levels[0], values })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionalRec {
    pub normal: [i64; 2],
    pub constant: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MutationSpecRec {
    pub phi: FunctionalRec,
    pub h: PolyRec,
}

impl MutationSpecRec {
    pub fn from_spec(s: &MutationSpec) -> MutationSpecRec {
        MutationSpecRec {
            phi: FunctionalRec {
                normal: [s.phi().normal.x, s.phi().normal.y],
                constant: s.phi().constant,
            },
            h: PolyRec::from_poly(s.h()),
        }
    }

    pub fn to_spec(&self) -> Result<MutationSpec> {
        let phi = AffineFunctional::new(
            LatticePoint::new(self.phi.normal[0], self.phi.normal[1]),
            self.phi.constant,
        );
        MutationSpec::new(phi, self.h.to_poly()?)
            .map_err(|e| anyhow::anyhow!("bad mutation data: {e}"))
    }
}

/// A certificate as an ordered list of steps plus every intermediate
/// polynomial, so a reader can audit the replay offline.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateRec {
    pub steps: Vec<MutationSpecRec>,
    pub polys: Vec<PolyRec>,
}

impl CertificateRec {
    pub fn from_certificate(c: &MutationCertificate) -> CertificateRec {
        CertificateRec {
            steps: c.steps.iter().map(MutationSpecRec::from_spec).collect(),
            polys: c.polys.iter().map(PolyRec::from_poly).collect(),
        }
    }

    pub fn to_certificate(&self) -> Result<MutationCertificate> {
        Ok(MutationCertificate {
            steps: self.steps.iter().map(|s| s.to_spec()).collect::<Result<_>>()?,
            polys: self.polys.iter().map(|p| p.to_poly()).collect::<Result<_>>()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRec {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
}

impl PairRec {
    pub fn from_pair(p: &DualPair) -> PairRec {
        PairRec { a: p.a_part.parts().to_vec(), b: p.b_part.parts().to_vec() }
    }

    pub fn to_pair(&self) -> Result<DualPair> {
        let a = Partition::new(self.a.iter().copied())
            .map_err(|e| anyhow::anyhow!("bad partition: {e}"))?;
        let b = Partition::new(self.b.iter().copied())
            .map_err(|e| anyhow::anyhow!("bad partition: {e}"))?;
        Ok(DualPair::new(a, b))
    }
}

/// Parses `"2,1|3,1,1"` into the dual pair `(2,1),(3,1,1)`.
pub fn parse_pair(text: &str) -> Result<DualPair> {
    let Some((a, b)) = text.split_once('|') else {
        bail!("pair must look like \"2,1|3,1,1\", got {text:?}");
    };
    let parse = |s: &str| -> Result<Partition> {
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<u64>().with_context(|| format!("bad part {x:?}")))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|e| anyhow::anyhow!("bad partition {s:?}: {e}"))
    };
    Ok(DualPair::new(parse(a)?, parse(b)?))
}

/// Parses `"x,y,z;x,y,z;..."` into a cone.
pub fn parse_cone(text: &str) -> Result<Cone3> {
    let mut rays: Vec<Vector3> = Vec::new();
    for chunk in text.split(';') {
        let coords = chunk
            .split(',')
            .map(|x| x.trim().parse::<i64>().with_context(|| format!("bad coordinate {x:?}")))
            .collect::<Result<Vec<_>>>()?;
        let [x, y, z] = coords[..] else {
            bail!("each ray needs three coordinates, got {chunk:?}");
        };
        rays.push([x, y, z]);
    }
    Cone3::new(rays).map_err(|e| anyhow::anyhow!("bad cone: {e}"))
}

/// Coefficient grid of a polynomial, rows running from the top of its
/// bounding box down, with `.` at unused lattice points. This is the node
/// label shape used by the DOT export.
pub fn coefficient_grid(f: &LaurentPoly) -> Vec<String> {
    let support = f.support();
    if support.is_empty() {
        return vec!["0".into()];
    }
    let xmin = support.iter().map(|p| p.x).min().expect("nonempty");
    let xmax = support.iter().map(|p| p.x).max().expect("nonempty");
    let ymin = support.iter().map(|p| p.y).min().expect("nonempty");
    let ymax = support.iter().map(|p| p.y).max().expect("nonempty");
    let mut rows = Vec::new();
    for y in (ymin..=ymax).rev() {
        let mut cells = Vec::new();
        for x in xmin..=xmax {
            let c = f.coeff(&LatticePoint::new(x, y));
            if c == BigInt::from(0) {
                cells.push(".".to_string());
            } else {
                cells.push(c.to_string());
            }
        }
        while cells.last().is_some_and(|c| c == ".") {
            cells.pop();
        }
        rows.push(cells.join(" "));
    }
    rows
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}
