use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use dancewalk::dance::{analyze_dance, omega_finite, spectral_gap};
use dancewalk::group::{Element, QuotientInvariants};
use dancewalk::intlinalg::{twist_to_coordinates, AffinePointSet};
use dancewalk::llt::{build_attractor, classify, tv_to_uniform_coset, Attractor};
use dancewalk::measure::{convolution_power, sample_path_stream, Distribution};

use crate::error::{CliError, CliResult};
use crate::output::{big, coords, rational, sig12};
use crate::spec::WalkSpecDocument;

#[derive(Serialize)]
pub struct SubgroupReport {
    pub generators: Vec<Vec<i64>>,
    pub index: String,
    pub rank: usize,
    pub order: Option<String>,
}

#[derive(Serialize)]
pub struct OmegaReport {
    pub description: String,
    pub torsion_invariants: Vec<String>,
    pub torus_rank: usize,
    /// Generators inside the dual, identified with `G` itself; finite `G` only.
    pub generators: Option<Vec<Vec<i64>>>,
}

#[derive(Serialize)]
pub struct GapReport {
    pub rho: Option<f64>,
    pub achieved_at: Option<String>,
    pub error: Option<String>,
}

#[derive(Serialize)]
pub struct ClassificationReport {
    pub irreducible: String,
    pub aperiodic: String,
    pub period: String,
    pub dance_cosets: String,
    pub reason: Option<String>,
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub group: String,
    pub spec: WalkSpecDocument,
    pub walk_subgroup: SubgroupReport,
    pub base_point: Vec<i64>,
    pub rank_d: usize,
    pub normalization_c: String,
    pub omega: OmegaReport,
    pub spectral_gap: GapReport,
    pub classification: ClassificationReport,
}

/// `Ω(p) ≅ Tor(G/G_p)^ × T^r` written out as a product.
pub fn describe_omega(inv: &QuotientInvariants) -> String {
    let mut parts: Vec<String> = inv
        .torsion
        .iter()
        .filter(|m| *m > &BigInt::from(1))
        .map(|m| format!("Z_{m}"))
        .collect();
    if inv.free_rank > 0 {
        parts.push(format!("T^{}", inv.free_rank));
    }
    if parts.is_empty() {
        "{0}".to_string()
    } else {
        parts.join(" x ")
    }
}

fn element_rows(xs: &[Element]) -> Vec<Vec<i64>> {
    xs.iter().map(coords).collect()
}

pub fn analyze(p: &Distribution) -> CliResult<AnalyzeReport> {
    let data = analyze_dance(p)?;
    let omega_generators = if p.group().is_finite() {
        Some(element_rows(&omega_finite(&data)?.generators()))
    } else {
        None
    };
    let gap = match spectral_gap(p) {
        Ok(g) => GapReport {
            rho: Some(sig12(g.rho)),
            achieved_at: g.achieved_at.map(|xi| xi.to_string()),
            error: None,
        },
        Err(dancewalk::Error::InvariantViolation(m)) => return Err(CliError::Invariant(m)),
        Err(e) => GapReport {
            rho: None,
            achieved_at: None,
            error: Some(e.to_string()),
        },
    };
    let class = classify(p)?;
    let h = &data.walk_subgroup;
    Ok(AnalyzeReport {
        group: p.group().to_string(),
        spec: WalkSpecDocument::from_distribution(p),
        walk_subgroup: SubgroupReport {
            generators: element_rows(&h.generators()),
            index: data.index().to_string(),
            rank: h.rank(),
            order: h.order().map(|o| big(&o)),
        },
        base_point: coords(&data.base_point),
        rank_d: data.rank_d,
        normalization_c: big(&data.normalization_c),
        omega: OmegaReport {
            description: describe_omega(&data.omega_invariants),
            torsion_invariants: data.omega_invariants.torsion.iter().map(big).collect(),
            torus_rank: data.omega_invariants.free_rank,
            generators: omega_generators,
        },
        spectral_gap: gap,
        classification: ClassificationReport {
            irreducible: class.irreducible.to_string(),
            aperiodic: class.aperiodic.to_string(),
            period: class.period.to_string(),
            dance_cosets: class.dance_cosets,
            reason: class.reason,
        },
    })
}

#[derive(Serialize)]
pub struct MassRecord {
    pub x: Vec<i64>,
    pub p: String,
    pub p_float: f64,
}

#[derive(Serialize)]
pub struct ConvolveReport {
    pub n: u64,
    pub group: String,
    pub support_size: usize,
    pub distribution: Vec<MassRecord>,
}

pub fn convolve(p: &Distribution, n: u64) -> ConvolveReport {
    let pn = convolution_power(p, n);
    ConvolveReport {
        n,
        group: p.group().to_string(),
        support_size: pn.support_len(),
        distribution: pn
            .iter()
            .map(|(x, w)| MassRecord {
                x: coords(x),
                p: rational(w),
                p_float: sig12(pn.get_f64(x)),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRecord {
    pub n: u64,
    pub x: Vec<i64>,
    pub p_exact: String,
    pub p_float: f64,
    pub theta: String,
    pub attractor: f64,
    pub abs_error: f64,
}

fn records_at(p: &Distribution, a: &Attractor, n: u64) -> CliResult<Vec<ReportRecord>> {
    let pn = convolution_power(p, n);
    let mut points: BTreeSet<Element> = a.window(n)?.into_iter().collect();
    points.extend(pn.support().cloned());
    points
        .into_iter()
        .map(|x| {
            let exact = pn.get(&x);
            let p_float = pn.get_f64(&x);
            let attractor = a.eval(n, &x)?;
            Ok(ReportRecord {
                n,
                x: coords(&x),
                p_exact: rational(&exact),
                p_float: sig12(p_float),
                theta: big(&a.dance.theta(n, &x)?),
                attractor: sig12(attractor),
                abs_error: sig12((p_float - attractor).abs()),
            })
        })
        .collect()
}

/// Records for every requested `n`, ordered by `n` and then by `x`.
pub fn compare(p: &Distribution, ns: &[u64]) -> CliResult<Vec<ReportRecord>> {
    if ns.is_empty() {
        return Err(CliError::Usage("compare needs at least one value of n".into()));
    }
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let a = build_attractor(p)?;
    let chunks: Vec<CliResult<Vec<ReportRecord>>> =
        ns.par_iter().map(|&n| records_at(p, &a, n)).collect();
    let mut out = Vec::new();
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

pub fn compare_csv(records: &[ReportRecord], dim: usize) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["n".to_string()];
    header.extend((1..=dim).map(|i| format!("x{i}")));
    header.extend(
        ["p_num", "p_den", "p_float", "theta", "attractor", "abs_error"].map(String::from),
    );
    let csv_err = |e: csv::Error| CliError::Invariant(format!("csv output: {e}"));
    w.write_record(&header).map_err(csv_err)?;
    for r in records {
        let (num, den) = r.p_exact.split_once('/').unwrap_or((&r.p_exact, "1"));
        let mut row = vec![r.n.to_string()];
        row.extend(r.x.iter().map(i64::to_string));
        row.extend([
            num.to_string(),
            den.to_string(),
            r.p_float.to_string(),
            r.theta.clone(),
            r.attractor.to_string(),
            r.abs_error.to_string(),
        ]);
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Invariant(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Invariant(e.to_string()))
}

#[derive(Serialize)]
pub struct AttractorRecord {
    pub x: Vec<i64>,
    pub theta: String,
    pub attractor: f64,
}

#[derive(Serialize)]
pub struct AttractorReport {
    pub n: u64,
    pub dim: usize,
    pub mean: Option<Vec<String>>,
    pub covariance: Option<Vec<Vec<String>>>,
    pub phi: Option<Vec<Vec<i64>>>,
    pub window: Vec<AttractorRecord>,
}

pub fn attractor(p: &Distribution, n: u64) -> CliResult<AttractorReport> {
    let a = build_attractor(p)?;
    let mut window = a.window(n)?;
    window.sort();
    let records = window
        .iter()
        .map(|x| {
            Ok(AttractorRecord {
                x: coords(x),
                theta: big(&a.dance.theta(n, x)?),
                attractor: sig12(a.eval(n, x)?),
            })
        })
        .collect::<CliResult<_>>()?;
    let moments = a.moments();
    Ok(AttractorReport {
        n,
        dim: a.dim(),
        mean: moments.map(|m| m.mean.iter().map(rational).collect()),
        covariance: moments.map(|m| {
            m.covariance
                .iter()
                .map(|r| r.iter().map(rational).collect())
                .collect()
        }),
        phi: a.phi().and_then(|f| f.matrix().to_i64_rows()),
        window: records,
    })
}

#[derive(Serialize)]
pub struct TvReport {
    pub n: u64,
    pub tv_exact: String,
    pub tv_float: f64,
    pub tv_bound: f64,
    pub sup_error: f64,
    pub sup_error_exact: Option<String>,
}

pub fn tv(p: &Distribution, n: u64) -> CliResult<TvReport> {
    let r = tv_to_uniform_coset(p, n)?;
    let exact = r
        .tv_exact
        .ok_or_else(|| CliError::Invariant("total variation missing".into()))?;
    Ok(TvReport {
        n,
        tv_float: sig12(exact.to_f64().unwrap_or(f64::NAN)),
        tv_exact: rational(&exact),
        tv_bound: r.tv_bound.map(sig12).unwrap_or(f64::NAN),
        sup_error: sig12(r.sup_error),
        sup_error_exact: r.sup_error_exact.as_ref().map(rational),
    })
}

#[derive(Serialize)]
pub struct TwistReport {
    pub ambient_dim: usize,
    pub dim: usize,
    pub phi: Vec<Vec<String>>,
    pub offset: Vec<String>,
}

/// Parses `[[1,0],[0,1]]` and straightens the point set.
pub fn twist(points: &str) -> CliResult<TwistReport> {
    let pts: Vec<Vec<i64>> = serde_json::from_str(points)
        .map_err(|e| CliError::Usage(format!("points must be a JSON list of integer lists: {e}")))?;
    let Some(first) = pts.first() else {
        return Err(CliError::Usage("twist needs at least one point".into()));
    };
    let k = first.len();
    let set = AffinePointSet::new(
        k,
        pts.iter()
            .map(|p| p.iter().map(|&v| BigInt::from(v)).collect())
            .collect(),
    )?;
    let t = twist_to_coordinates(&set)?;
    Ok(TwistReport {
        ambient_dim: k,
        dim: t.dim,
        phi: t
            .phi
            .matrix()
            .row_vecs()
            .iter()
            .map(|r| r.iter().map(big).collect())
            .collect(),
        offset: t.offset.iter().map(big).collect(),
    })
}

#[derive(Serialize)]
pub struct SampledPath {
    pub stream: u64,
    pub positions: Vec<Vec<i64>>,
}

#[derive(Serialize)]
pub struct SampleReport {
    pub n: usize,
    pub seed: u64,
    pub paths: Vec<SampledPath>,
}

/// Path `i` uses stream `i` of the seeded generator, so the output does not
/// depend on the thread count.
pub fn sample(p: &Distribution, n: usize, seed: u64, paths: u64) -> SampleReport {
    let paths = (0..paths)
        .into_par_iter()
        .map(|stream| SampledPath {
            stream,
            positions: sample_path_stream(p, n, seed, stream)
                .positions
                .iter()
                .map(coords)
                .collect(),
        })
        .collect();
    SampleReport { n, seed, paths }
}
