//! Serialized forms of constructions, integrals and convergence tables.
//!
//! Numbers are written in shortest round-trip decimal in both JSON and CSV,
//! so the two formats carry identical values and re-reading a file restores
//! every coefficient bit for bit.

use serde::{Deserialize, Serialize};

use crate::antiderivative::{PiecewiseQuadratic, QuadraticSegment};
use crate::engine::{ConvergenceCertificate, LevelRow};
use crate::error::{Error, Result};
use crate::partition::{DyadicPartition, MAX_SUPPORTED_LEVEL};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub interval: [f64; 2],
    pub level: u32,
    pub omega: f64,
    pub error_bound: f64,
    pub tolerance: f64,
    /// `"sampled"` or `"lipschitz"`.
    pub rigor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lipschitz: Option<f64>,
    /// `"certified"` or `"heuristic"`.
    pub guarantee: String,
    pub met: bool,
    pub samples: usize,
    pub evaluations: u64,
}

impl From<&ConvergenceCertificate> for CertificateRecord {
    fn from(c: &ConvergenceCertificate) -> Self {
        Self {
            interval: [c.interval.0, c.interval.1],
            level: c.level,
            omega: c.omega,
            error_bound: c.error_bound,
            tolerance: c.tolerance,
            rigor: c.rigor.label().to_string(),
            lipschitz: c.rigor.lipschitz(),
            guarantee: guarantee(c.is_certified()).to_string(),
            met: c.met,
            samples: c.samples_per_interval,
            evaluations: c.evaluations,
        }
    }
}

pub(crate) fn guarantee(certified: bool) -> &'static str {
    if certified {
        "certified"
    } else {
        "heuristic"
    }
}

/// One member `[lo, hi]` with `Phi(x) = a2 x^2 + a1 x + a0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentRecord {
    pub lo: f64,
    pub hi: f64,
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
    /// `Phi(lo)`; recomputed from the raw coefficients when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_lo: Option<f64>,
    /// `Phi'(lo)`; recomputed from the raw coefficients when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope_lo: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub x: f64,
    pub value: f64,
    pub error_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructRecord {
    pub expression: String,
    #[serde(flatten)]
    pub certificate: CertificateRecord,
    pub segments: Vec<SegmentRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<PointRecord>,
}

impl ConstructRecord {
    pub fn new(expression: &str, pq: &PiecewiseQuadratic, cert: &ConvergenceCertificate) -> Self {
        let p = pq.partition();
        let segments = pq
            .segments()
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let (lo, hi) = p.member(i);
                SegmentRecord {
                    lo,
                    hi,
                    a2: s.a2,
                    a1: s.a1,
                    a0: s.a0,
                    value_lo: Some(s.value_at_lo),
                    slope_lo: Some(s.slope_at_lo),
                }
            })
            .collect();
        Self {
            expression: expression.to_string(),
            certificate: cert.into(),
            segments,
            points: Vec::new(),
        }
    }

    /// Rebuilds the antiderivative described by this record.
    pub fn to_piecewise_quadratic(&self) -> Result<PiecewiseQuadratic> {
        let [a, b] = self.certificate.interval;
        let level = self.certificate.level;
        let partition = DyadicPartition::build_capped(a, b, level, MAX_SUPPORTED_LEVEL.max(level))?;
        if self.segments.len() != partition.len() {
            return Err(Error::InvalidArgument(format!(
                "level {level} needs {} segments, file has {}",
                partition.len(),
                self.segments.len()
            )));
        }
        let segments = self
            .segments
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let (lo, hi) = partition.member(i);
                if lo.to_bits() != s.lo.to_bits() || hi.to_bits() != s.hi.to_bits() {
                    return Err(Error::InvalidArgument(format!(
                        "segment {i} spans [{}, {}], expected [{lo}, {hi}]",
                        s.lo, s.hi
                    )));
                }
                let seg = QuadraticSegment {
                    a2: s.a2,
                    a1: s.a1,
                    a0: s.a0,
                    value_at_lo: 0.0,
                    slope_at_lo: 0.0,
                };
                Ok(QuadraticSegment {
                    value_at_lo: s.value_lo.unwrap_or_else(|| seg.eval_raw(lo)),
                    slope_at_lo: s.slope_lo.unwrap_or_else(|| seg.slope_raw(lo)),
                    ..seg
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PiecewiseQuadratic::from_parts(partition, segments)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegrateRecord {
    pub expression: String,
    pub value: f64,
    #[serde(flatten)]
    pub certificate: CertificateRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowRecord {
    pub level: u32,
    pub omega: f64,
    pub error_bound: f64,
    pub value: f64,
    pub met: bool,
}

impl From<&LevelRow> for RowRecord {
    fn from(r: &LevelRow) -> Self {
        Self {
            level: r.level,
            omega: r.omega,
            error_bound: r.error_bound,
            value: r.value,
            met: r.met,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRecord {
    pub expression: String,
    pub interval: [f64; 2],
    pub tolerance: f64,
    pub rigor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lipschitz: Option<f64>,
    pub guarantee: String,
    pub samples: usize,
    pub rows: Vec<RowRecord>,
}

/// Shortest round-trip decimal, exactly as written into JSON output.
pub fn number(v: f64) -> String {
    if v.is_finite() {
        serde_json::to_string(&v).expect("finite floats serialize")
    } else {
        // Not produced by the engine; kept readable rather than panicking.
        v.to_string()
    }
}

fn csv_meta(out: &mut String, key: &str, value: &str) {
    out.push_str(&format!("# {key}={value}\n"));
}

fn csv_certificate_meta(out: &mut String, expression: &str, c: &CertificateRecord) {
    csv_meta(out, "expression", expression);
    csv_meta(
        out,
        "interval",
        &format!("{},{}", number(c.interval[0]), number(c.interval[1])),
    );
    csv_meta(out, "level", &c.level.to_string());
    csv_meta(out, "omega", &number(c.omega));
    csv_meta(out, "error_bound", &number(c.error_bound));
    csv_meta(out, "tolerance", &number(c.tolerance));
    csv_meta(out, "rigor", &c.rigor);
    if let Some(l) = c.lipschitz {
        csv_meta(out, "lipschitz", &number(l));
    }
    csv_meta(out, "guarantee", &c.guarantee);
    csv_meta(out, "met", &c.met.to_string());
    csv_meta(out, "samples", &c.samples.to_string());
    csv_meta(out, "evaluations", &c.evaluations.to_string());
}

/// `#`-prefixed certificate lines, the segment table and, if present, a
/// second table of evaluation points after a blank line.
pub fn construct_csv(r: &ConstructRecord) -> String {
    let mut out = String::new();
    csv_certificate_meta(&mut out, &r.expression, &r.certificate);
    out.push_str("lo,hi,a2,a1,a0,value_lo,slope_lo\n");
    for s in &r.segments {
        let opt = |v: Option<f64>| v.map(number).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            number(s.lo),
            number(s.hi),
            number(s.a2),
            number(s.a1),
            number(s.a0),
            opt(s.value_lo),
            opt(s.slope_lo),
        ));
    }
    if !r.points.is_empty() {
        out.push_str("\nx,value,error_bound\n");
        for p in &r.points {
            out.push_str(&format!(
                "{},{},{}\n",
                number(p.x),
                number(p.value),
                number(p.error_bound)
            ));
        }
    }
    out
}

pub fn integrate_csv(r: &IntegrateRecord) -> String {
    let mut out = String::new();
    csv_certificate_meta(&mut out, &r.expression, &r.certificate);
    out.push_str("value,error_bound,met\n");
    out.push_str(&format!(
        "{},{},{}\n",
        number(r.value),
        number(r.certificate.error_bound),
        r.certificate.met
    ));
    out
}

pub fn table_csv(r: &TableRecord) -> String {
    let mut out = String::new();
    csv_meta(&mut out, "expression", &r.expression);
    csv_meta(
        &mut out,
        "interval",
        &format!("{},{}", number(r.interval[0]), number(r.interval[1])),
    );
    csv_meta(&mut out, "tolerance", &number(r.tolerance));
    csv_meta(&mut out, "rigor", &r.rigor);
    if let Some(l) = r.lipschitz {
        csv_meta(&mut out, "lipschitz", &number(l));
    }
    csv_meta(&mut out, "guarantee", &r.guarantee);
    csv_meta(&mut out, "samples", &r.samples.to_string());
    out.push_str("level,omega,error_bound,value,met\n");
    for row in &r.rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.level,
            number(row.omega),
            number(row.error_bound),
            number(row.value),
            row.met
        ));
    }
    out
}
