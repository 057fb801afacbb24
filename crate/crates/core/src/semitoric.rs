//! Richardson point sets as unions of faces, in string, Nakashima-Zelevinsky
//! and cluster coordinates, with per-pair reports and exhaustive scans.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use crate::cluster::{cluster_polytope, transport_points, transport_polytope, ExchangeMatrix, Upsilon};
use crate::error::{Error, Result};
use crate::linalg;
use crate::par::{self, Execution};
use crate::polytope::{
    minkowski_check_sets, nz_polytope, string_polytope, FaceUnion, RationalPolytope,
};
use crate::rootdata::{Weight, WeylGroup};
use crate::zcrystal::{LambdaCrystal, WordContext};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoordinateSystem {
    String,
    Nz,
    /// g-vectors at the seed reached from the word's seed by `mutation`.
    Cluster { mutation: Vec<usize> },
}

impl CoordinateSystem {
    fn label(&self) -> String {
        match self {
            CoordinateSystem::String => "string".into(),
            CoordinateSystem::Nz => "nz".into(),
            CoordinateSystem::Cluster { mutation } => {
                let w: Vec<String> = mutation.iter().map(ToString::to_string).collect();
                format!("cluster[{}]", w.join(","))
            }
        }
    }
}

/// Maps crystal elements to points in a coordinate system.
#[derive(Clone, Debug)]
struct CoordMap {
    coords: CoordinateSystem,
    cluster: Option<(Upsilon, ExchangeMatrix)>,
}

impl CoordMap {
    fn points(&self, crystal: &LambdaCrystal) -> Result<Vec<Vec<i64>>> {
        match (&self.coords, &self.cluster) {
            (CoordinateSystem::String, _) => Ok(crystal.all_phi()),
            (CoordinateSystem::Nz, _) => Ok(crystal.all_psi()),
            (CoordinateSystem::Cluster { mutation }, Some((u, e))) => {
                let g: Vec<Vec<i64>> = crystal.all_phi().iter().map(|b| u.invert(b)).collect();
                Ok(transport_points(&g, e, mutation)?.0)
            }
            (CoordinateSystem::Cluster { .. }, None) => unreachable!("cluster data is set for cluster charts"),
        }
    }

    /// Coordinates at the word's own seed, before any mutation.
    fn seed_points(&self, crystal: &LambdaCrystal) -> Option<Vec<Vec<i64>>> {
        self.cluster.as_ref().map(|(u, _)| crystal.all_phi().iter().map(|b| u.invert(b)).collect())
    }
}

/// Everything about one weight that does not depend on the pair `(v, w)`.
#[derive(Clone, Debug)]
pub struct Chart {
    pub ctx: WordContext,
    pub lambda: Weight,
    pub coords: CoordinateSystem,
    pub crystal: LambdaCrystal,
    /// Point of each crystal element, indexed like `crystal.elements`.
    pub points: Vec<Vec<i64>>,
    pub polytope: RationalPolytope,
    pub saturated: bool,
    /// `B(2 lambda)` and its points, for the Minkowski conditions.
    pub double: (LambdaCrystal, Vec<Vec<i64>>),
    /// Cluster charts only: polytope and points at the word's seed.
    pub seed_chart: Option<(RationalPolytope, Vec<Vec<i64>>)>,
}

impl Chart {
    pub fn new(ctx: &WordContext, lambda: &Weight, coords: CoordinateSystem, k_max: usize) -> Result<Chart> {
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.0.clone()));
        }
        let crystal = LambdaCrystal::generate(ctx, lambda)?;
        let (polytope, saturated, map, seed_polytope) = match &coords {
            CoordinateSystem::String => {
                let p = string_polytope(ctx, lambda, k_max)?;
                (p.polytope, p.saturated, CoordMap { coords: coords.clone(), cluster: None }, None)
            }
            CoordinateSystem::Nz => {
                let p = nz_polytope(ctx, lambda, k_max)?;
                (p.polytope, p.saturated, CoordMap { coords: coords.clone(), cluster: None }, None)
            }
            CoordinateSystem::Cluster { mutation } => {
                let cp = cluster_polytope(ctx, lambda, k_max)?;
                let t = transport_polytope(&cp.polytope, &cp.matrix, mutation)?;
                let map = CoordMap { coords: coords.clone(), cluster: Some((cp.upsilon, cp.matrix)) };
                (t.polytope, cp.saturated, map, Some(cp.polytope))
            }
        };
        let points = map.points(&crystal)?;
        let seed_chart = seed_polytope.map(|p| (p, map.seed_points(&crystal).expect("cluster chart")));
        let dc = LambdaCrystal::generate(ctx, &lambda.scale(2))?;
        let dp = map.points(&dc)?;
        Ok(Chart {
            ctx: ctx.clone(),
            lambda: lambda.clone(),
            coords,
            crystal,
            points,
            polytope,
            saturated,
            double: (dc, dp),
            seed_chart,
        })
    }

    fn richardson_set(crystal: &LambdaCrystal, pts: &[Vec<i64>], group: &WeylGroup, v: usize, w: usize) -> Result<BTreeSet<Vec<i64>>> {
        let r = crystal.richardson_subset(group, v, w)?;
        Ok(r.members.iter().map(|&b| pts[b].clone()).collect())
    }

    /// Full report for the pair `(v, w)` given as group indices.
    pub fn report(&self, group: &WeylGroup, v: usize, w: usize) -> Result<DegenerationReport> {
        let rich = Self::richardson_set(&self.crystal, &self.points, group, v, w)?;
        let mut checks: BTreeMap<String, Check> = BTreeMap::new();
        let (certificate, violation) = match self.polytope.union_of_faces(&rich)? {
            FaceUnion::Certificate(c) => {
                let faces: Vec<CertificateFace> = c
                    .faces
                    .iter()
                    .zip(&c.face_points)
                    .map(|(f, pts)| CertificateFace {
                        tight: f.tight.clone(),
                        dim: f.dim,
                        vertices: f
                            .vertices
                            .iter()
                            .map(|&i| self.polytope.vertices[i].iter().map(linalg::fmt_rat).collect())
                            .collect(),
                        lattice_points: pts.clone(),
                    })
                    .collect();
                (faces, None)
            }
            FaceUnion::NotAFaceUnion { witness } => (Vec::new(), Some(witness)),
        };
        checks.insert("face_union".into(), Check::from_witness(violation.clone().map(|w| json!(w))));
        if violation.is_none() {
            let covered: BTreeSet<Vec<i64>> =
                certificate.iter().flat_map(|f| f.lattice_points.iter().cloned()).collect();
            checks.insert("certificate_covers".into(), Check::new(covered == rich));
        }

        let rich2 = Self::richardson_set(&self.double.0, &self.double.1, group, v, w)?;
        let mk = minkowski_check_sets(&self.points, &self.points, &rich, &rich2, &rich, &rich2);
        checks.insert("minkowski_i".into(), Check::from_witness(mk.witness_i.map(|p| json!(p))));
        checks.insert("minkowski_ii".into(), Check::from_witness(mk.witness_ii.map(|p| json!(p))));

        if v == w {
            let expected = group.element(w).apply(&self.lambda);
            let r = self.crystal.richardson_subset(group, v, w)?;
            let weights: Vec<&Weight> = r.members.iter().map(|&b| &self.crystal.wt[b]).collect();
            let ok = weights.len() == 1 && *weights[0] == expected;
            checks.insert("extremal_weight".into(), Check::new(ok));
        }

        if let Some((p0, pts0)) = &self.seed_chart {
            let rich0 = Self::richardson_set(&self.crystal, pts0, group, v, w)?;
            checks.insert("cardinality_preserved".into(), Check::new(rich0.len() == rich.len()));
            let start = p0.union_of_faces(&rich0)?;
            let witness = match start {
                FaceUnion::Certificate(_) => None,
                FaceUnion::NotAFaceUnion { witness } => Some(json!(witness)),
            };
            checks.insert("face_union_at_seed".into(), Check::from_witness(witness));
        }

        Ok(DegenerationReport {
            series: self.ctx.datum.series.to_string(),
            rank: self.ctx.datum.rank,
            word: self.ctx.word.clone(),
            lambda: self.lambda.clone(),
            v: group.element(v).word.clone(),
            w: group.element(w).word.clone(),
            coords: self.coords.clone(),
            polytope: self.polytope.to_json(None),
            inequalities: self.polytope.inequality_text(),
            saturated: self.saturated,
            richardson: rich.into_iter().collect(),
            certificate,
            violation,
            checks,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl Check {
    fn new(passed: bool) -> Self {
        Check { passed, witness: None }
    }

    fn from_witness(witness: Option<serde_json::Value>) -> Self {
        Check { passed: witness.is_none(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateFace {
    pub tight: Vec<usize>,
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    pub lattice_points: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegenerationReport {
    pub series: String,
    pub rank: usize,
    pub word: Vec<usize>,
    pub lambda: Weight,
    pub v: Vec<usize>,
    pub w: Vec<usize>,
    pub coords: CoordinateSystem,
    pub polytope: serde_json::Value,
    pub inequalities: String,
    pub saturated: bool,
    pub richardson: Vec<Vec<i64>>,
    /// Inclusion-maximal faces whose lattice points make up the Richardson set.
    pub certificate: Vec<CertificateFace>,
    /// A Richardson point on no face inside the set, if the decomposition fails.
    pub violation: Option<Vec<i64>>,
    pub checks: BTreeMap<String, Check>,
}

fn word_text(w: &[usize]) -> String {
    if w.is_empty() {
        return "e".into();
    }
    w.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ")
}

impl DegenerationReport {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{}{} word {:?} lambda {} coords {}",
            self.series,
            self.rank,
            self.word,
            self.lambda,
            self.coords.label()
        );
        let _ = writeln!(s, "v = {}, w = {}", word_text(&self.v), word_text(&self.w));
        let _ = writeln!(s, "richardson points: {}", self.richardson.len());
        match &self.violation {
            None => {
                let _ = writeln!(s, "certificate: {} maximal face(s)", self.certificate.len());
                for f in &self.certificate {
                    let verts: Vec<String> = f.vertices.iter().map(|v| format!("({})", v.join(","))).collect();
                    let _ = writeln!(s, "  dim {} vertices {}", f.dim, verts.join(" "));
                }
            }
            Some(w) => {
                let _ = writeln!(s, "NOT a union of faces; witness {w:?}");
            }
        }
        for (name, c) in &self.checks {
            let _ = writeln!(s, "{name}: {}", if c.passed { "pass" } else { "FAIL" });
        }
        s
    }
}

pub fn semi_toric_report_string(
    ctx: &WordContext,
    group: &WeylGroup,
    lambda: &Weight,
    v: usize,
    w: usize,
    k_max: usize,
) -> Result<DegenerationReport> {
    Chart::new(ctx, lambda, CoordinateSystem::String, k_max)?.report(group, v, w)
}

pub fn semi_toric_report_nz(
    ctx: &WordContext,
    group: &WeylGroup,
    lambda: &Weight,
    v: usize,
    w: usize,
    k_max: usize,
) -> Result<DegenerationReport> {
    Chart::new(ctx, lambda, CoordinateSystem::Nz, k_max)?.report(group, v, w)
}

pub fn semi_toric_report_cluster(
    ctx: &WordContext,
    group: &WeylGroup,
    lambda: &Weight,
    v: usize,
    w: usize,
    mutation: &[usize],
    k_max: usize,
) -> Result<DegenerationReport> {
    Chart::new(ctx, lambda, CoordinateSystem::Cluster { mutation: mutation.to_vec() }, k_max)?.report(group, v, w)
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub v: Vec<usize>,
    pub w: Vec<usize>,
    pub richardson_points: usize,
    pub certified: bool,
    pub face_dims: Vec<usize>,
    pub passed: bool,
    pub failed_checks: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanSummary {
    pub series: String,
    pub rank: usize,
    pub word: Vec<usize>,
    pub lambda: Weight,
    pub coords: CoordinateSystem,
    pub pairs: usize,
    pub certified: usize,
    pub passed: usize,
    /// Number of certificate faces of each dimension, over all pairs.
    pub face_dimensions: BTreeMap<usize, usize>,
    pub rows: Vec<ScanRow>,
}

impl ScanSummary {
    pub fn violations(&self) -> impl Iterator<Item = &ScanRow> {
        self.rows.iter().filter(|r| !r.passed)
    }

    pub fn all_passed(&self) -> bool {
        self.passed == self.pairs
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{}{} word {:?} lambda {} coords {}: {} pairs, {} certified, {} passed all checks",
            self.series,
            self.rank,
            self.word,
            self.lambda,
            self.coords.label(),
            self.pairs,
            self.certified,
            self.passed
        );
        let hist: Vec<String> = self.face_dimensions.iter().map(|(d, n)| format!("dim {d}: {n}")).collect();
        let _ = writeln!(s, "certificate faces by dimension: {}", hist.join(", "));
        for r in &self.rows {
            let dims: Vec<String> = r.face_dims.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                s,
                "  v = {:<12} w = {:<16} points {:>3}  faces [{}]  {}",
                word_text(&r.v),
                word_text(&r.w),
                r.richardson_points,
                dims.join(","),
                if r.passed { "ok".to_string() } else { format!("FAIL {}", r.failed_checks.join(",")) }
            );
        }
        s
    }
}

/// Runs the report for every Bruhat pair `v <= w`, ordered by lengths then words.
pub fn all_pairs_scan(chart: &Chart, group: &WeylGroup, exec: Execution) -> Result<ScanSummary> {
    let mut pairs = group.bruhat_pairs();
    pairs.sort_by(|&(v1, w1), &(v2, w2)| {
        let key = |v: usize, w: usize| (group.length(v), group.length(w), group.element(v).word.clone(), group.element(w).word.clone());
        key(v1, w1).cmp(&key(v2, w2))
    });
    let reports: Vec<Result<DegenerationReport>> = par::map(&pairs, exec, |&(v, w)| chart.report(group, v, w));
    let mut rows = Vec::with_capacity(reports.len());
    let mut face_dimensions: BTreeMap<usize, usize> = BTreeMap::new();
    for r in reports {
        let r = r?;
        for f in &r.certificate {
            *face_dimensions.entry(f.dim).or_default() += 1;
        }
        rows.push(ScanRow {
            v: r.v.clone(),
            w: r.w.clone(),
            richardson_points: r.richardson.len(),
            certified: r.violation.is_none(),
            face_dims: r.certificate.iter().map(|f| f.dim).collect(),
            passed: r.passed(),
            failed_checks: r.checks.iter().filter(|(_, c)| !c.passed).map(|(n, _)| n.clone()).collect(),
        });
    }
    Ok(ScanSummary {
        series: chart.ctx.datum.series.to_string(),
        rank: chart.ctx.datum.rank,
        word: chart.ctx.word.clone(),
        lambda: chart.lambda.clone(),
        coords: chart.coords.clone(),
        pairs: rows.len(),
        certified: rows.iter().filter(|r| r.certified).count(),
        passed: rows.iter().filter(|r| r.passed).count(),
        face_dimensions,
        rows,
    })
}
