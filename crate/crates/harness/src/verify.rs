//! Catalog-wide verification of `beta^n Vol <= (n+1)^n` and the empirical gap report.

use std::io::Write;

use serde::Serialize;
use torifan_core::rational::{decimal, format_rational, serde_exact};
use torifan_core::Rational;

use crate::catalog::Catalog;
use crate::error::{HarnessError, Result};
use crate::sweep::{sweep_ample_cone, SweepResult};

#[derive(Clone, Debug, Serialize)]
pub struct VerifyRow {
    pub variety: String,
    pub n: usize,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub max_score: Rational,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub gap: Rational,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub max_delta_score: Rational,
    pub ample_points: u64,
    pub classes: usize,
    pub argmax: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub resolution: u32,
    pub rows: Vec<VerifyRow>,
}

impl VerifyReport {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "variety",
            "n",
            "max_score",
            "decimal",
            "gap",
            "max_delta_score",
            "ample_points",
            "classes",
            "argmax",
        ])?;
        for r in &self.rows {
            w.write_record([
                r.variety.clone(),
                r.n.to_string(),
                format_rational(&r.max_score),
                decimal(&r.max_score),
                format_rational(&r.gap),
                format_rational(&r.max_delta_score),
                r.ample_points.to_string(),
                r.classes.to_string(),
                r.argmax.join(" "),
            ])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

/// The verdicts that `sweep_ample_cone` does not already enforce: the gap is
/// zero exactly on projective spaces.
pub fn check_sweep(s: &SweepResult) -> Result<()> {
    let zero = s.gap == Rational::from_integer(0.into());
    if s.is_projective_space && !zero {
        return Err(HarnessError::Assertion(format!(
            "{} is projective space but its grid maximum {} misses the bound {}",
            s.variety_name,
            format_rational(&s.max_score),
            format_rational(&s.bound)
        )));
    }
    if !s.is_projective_space && zero {
        let a = s.argmax_sample();
        return Err(HarnessError::Assertion(format!(
            "{} is not projective space but sample #{} {:?} reaches the bound {}",
            s.variety_name,
            a.index,
            a.coeffs.iter().map(format_rational).collect::<Vec<_>>(),
            format_rational(&s.bound)
        )));
    }
    Ok(())
}

pub fn verify_sweeps(resolution: u32, sweeps: &[SweepResult]) -> Result<VerifyReport> {
    let mut rows = Vec::with_capacity(sweeps.len());
    for s in sweeps {
        check_sweep(s)?;
        rows.push(VerifyRow {
            variety: s.variety_name.clone(),
            n: s.dim,
            max_score: s.max_score.clone(),
            gap: s.gap.clone(),
            max_delta_score: s.max_delta_score.clone(),
            ample_points: s.ample_points,
            classes: s.samples.len(),
            argmax: s
                .argmax_sample()
                .coeffs
                .iter()
                .map(format_rational)
                .collect(),
        });
    }
    Ok(VerifyReport { resolution, rows })
}

pub fn sweep_catalog(catalog: &Catalog, resolution: u32) -> Result<Vec<SweepResult>> {
    catalog
        .entries()
        .iter()
        .map(|e| sweep_ample_cone(&e.variety, resolution))
        .collect()
}

pub fn verify_theorem(catalog: &Catalog, resolution: u32) -> Result<VerifyReport> {
    verify_sweeps(resolution, &sweep_catalog(catalog, resolution)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct GapEntry {
    pub variety: String,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub max_score: Rational,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub gap: Rational,
}

/// `eps_toric(n)`: the smallest gap `(n+1)^n - max score` over the non-projective
/// entries of dimension `n`.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionGap {
    pub n: usize,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub bound: Rational,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub eps_toric: Rational,
    pub achieving_variety: String,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub achieving_score: Rational,
    pub entries: Vec<GapEntry>,
}

pub const GAP_LABEL: &str = "empirical: grid maxima over the toric catalog at this resolution; \
    the true gap over all ample classes and all Fano manifolds can only be smaller. Not a proof.";

#[derive(Clone, Debug, Serialize)]
pub struct GapReport {
    pub label: &'static str,
    pub resolution: u32,
    pub dimensions: Vec<DimensionGap>,
}

impl GapReport {
    pub fn dimension(&self, n: usize) -> Option<&DimensionGap> {
        self.dimensions.iter().find(|d| d.n == n)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "n",
            "resolution",
            "eps_toric",
            "decimal",
            "achieving_variety",
            "achieving_score",
            "bound",
        ])?;
        for d in &self.dimensions {
            w.write_record([
                d.n.to_string(),
                self.resolution.to_string(),
                format_rational(&d.eps_toric),
                decimal(&d.eps_toric),
                d.achieving_variety.clone(),
                format_rational(&d.achieving_score),
                format_rational(&d.bound),
            ])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

/// Dimensions with no non-projective entry are left out.
pub fn gap_report_from_sweeps(resolution: u32, sweeps: &[SweepResult]) -> GapReport {
    let mut dims: Vec<usize> = sweeps.iter().map(|s| s.dim).collect();
    dims.sort_unstable();
    dims.dedup();
    let dimensions = dims
        .into_iter()
        .filter_map(|n| {
            let entries: Vec<GapEntry> = sweeps
                .iter()
                .filter(|s| s.dim == n && !s.is_projective_space)
                .map(|s| GapEntry {
                    variety: s.variety_name.clone(),
                    max_score: s.max_score.clone(),
                    gap: s.gap.clone(),
                })
                .collect();
            let best = entries.iter().min_by(|a, b| a.gap.cmp(&b.gap))?.clone();
            let bound = sweeps
                .iter()
                .find(|s| s.dim == n)
                .expect("dimension present")
                .bound
                .clone();
            Some(DimensionGap {
                n,
                bound,
                eps_toric: best.gap,
                achieving_variety: best.variety,
                achieving_score: best.max_score,
                entries,
            })
        })
        .collect();
    GapReport {
        label: GAP_LABEL,
        resolution,
        dimensions,
    }
}

pub fn gap_report(catalog: &Catalog, resolution: u32) -> Result<GapReport> {
    Ok(gap_report_from_sweeps(
        resolution,
        &sweep_catalog(catalog, resolution)?,
    ))
}
