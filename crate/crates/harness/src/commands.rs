//! Reports behind the `blowup` and `okounkov` subcommands.

use std::io::Write;

use num_traits::{Signed, Zero};
use serde::Serialize;
use torifan_core::invariants::{exceptional_chain, fujita_profile, ExceptionalChain};
use torifan_core::okounkov::{
    bm_concavity_check, okounkov_body, pseff_threshold, slice_profile, translation_identity_check,
    FlagSpec,
};
use torifan_core::rational::{
    decimal, format_rational, serde_exact, serde_rational, serde_rational_vec,
};
use torifan_core::{int, Blowup, Rational, TDivisor};

use crate::error::{HarnessError, Result};

/// `[lo, hi]` split into `samples` equal steps, merged with `extra` points inside it.
fn sample_points(lo: &Rational, hi: &Rational, samples: u32, extra: &[Rational]) -> Vec<Rational> {
    let steps = i64::from(samples.max(1));
    let width = hi - lo;
    let mut xs: Vec<Rational> = (0..=steps)
        .map(|j| lo + &width * Rational::new(j.into(), steps.into()))
        .collect();
    xs.extend(extra.iter().filter(|x| *x >= lo && *x <= hi).cloned());
    xs.sort();
    xs.dedup();
    xs
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileRow {
    #[serde(with = "serde_rational")]
    pub x: Rational,
    /// `Vol(sigma^* xi - x E)`.
    #[serde(with = "serde_rational")]
    pub vol: Rational,
    /// `Vol(xi) - x^n`.
    #[serde(with = "serde_rational")]
    pub model: Rational,
    #[serde(with = "serde_rational")]
    pub margin: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlowupReport {
    pub variety: String,
    pub blown_up: String,
    pub cone: usize,
    #[serde(with = "serde_rational_vec")]
    pub divisor: Vec<Rational>,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub vol: Rational,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub threshold: Rational,
    pub inequality_holds: bool,
    pub equality_intervals: Vec<[String; 2]>,
    pub rows: Vec<ProfileRow>,
    pub chain: ExceptionalChain,
}

impl BlowupReport {
    /// Ok when every margin is nonnegative and the chain holds.
    pub fn verdict(&self) -> Result<()> {
        if let Some(r) = self.rows.iter().find(|r| r.margin.is_negative()) {
            return Err(HarnessError::Assertion(format!(
                "{} cone {}: margin {} < 0 at x = {}",
                self.variety,
                self.cone,
                format_rational(&r.margin),
                format_rational(&r.x)
            )));
        }
        if !self.inequality_holds {
            return Err(HarnessError::Assertion(format!(
                "{} cone {}: Vol(sigma^* xi - xE) < Vol(xi) - x^n somewhere on [0, {}]",
                self.variety,
                self.cone,
                format_rational(&self.threshold)
            )));
        }
        if !self.chain.holds() {
            return Err(HarnessError::Assertion(format!(
                "{} cone {}: inequality chain fails",
                self.variety, self.cone
            )));
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["x", "vol", "model", "margin", "margin_decimal"])?;
        for r in &self.rows {
            w.write_record([
                format_rational(&r.x),
                format_rational(&r.vol),
                format_rational(&r.model),
                format_rational(&r.margin),
                decimal(&r.margin),
            ])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

/// Profile of `sigma^* xi - x E` at the fixed point of `cone`, sampled at
/// its breakpoints and `samples + 1` equally spaced points of `[0, threshold]`.
pub fn blowup_command(xi: &TDivisor, cone: usize, samples: u32) -> Result<BlowupReport> {
    xi.require_ample()?;
    let blowup = Blowup::new(xi.variety(), cone)?;
    let profile = fujita_profile(xi, cone)?;
    let chain = exceptional_chain(xi, cone)?;
    let rows = sample_points(
        &Rational::zero(),
        &profile.threshold,
        samples,
        profile.profile.breakpoints(),
    )
    .into_iter()
    .map(|x| ProfileRow {
        vol: profile.eval(&x),
        model: profile.lower_model(&x),
        margin: profile.margin(&x),
        x,
    })
    .collect();
    Ok(BlowupReport {
        variety: xi.variety().name().to_string(),
        blown_up: blowup.variety().name().to_string(),
        cone,
        divisor: xi.coeffs().to_vec(),
        vol: profile.vol.clone(),
        threshold: profile.threshold.clone(),
        inequality_holds: profile.inequality_holds,
        equality_intervals: profile
            .equality_intervals
            .iter()
            .map(|(a, b)| [format_rational(a), format_rational(b)])
            .collect(),
        rows,
        chain,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TranslationVerdict {
    #[serde(with = "serde_rational")]
    pub t: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceRow {
    #[serde(with = "serde_rational")]
    pub r: Rational,
    #[serde(with = "serde_rational")]
    pub area: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct OkounkovReport {
    pub variety: String,
    #[serde(with = "serde_rational_vec")]
    pub divisor: Vec<Rational>,
    pub cone: usize,
    pub order: Vec<usize>,
    pub vertices: Vec<Vec<String>>,
    /// `n! vol(body)`.
    #[serde(serialize_with = "serde_exact::serialize")]
    pub body_volume: Rational,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub vol: Rational,
    pub volume_identity: bool,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub threshold: Rational,
    pub translations: Vec<TranslationVerdict>,
    pub slices: Vec<SliceRow>,
    pub concave: bool,
}

impl OkounkovReport {
    pub fn verdict(&self) -> Result<()> {
        if !self.volume_identity {
            return Err(HarnessError::Assertion(format!(
                "n! vol(body) = {} but Vol = {}",
                format_rational(&self.body_volume),
                format_rational(&self.vol)
            )));
        }
        if let Some(t) = self.translations.iter().find(|t| !t.holds) {
            return Err(HarnessError::Assertion(format!(
                "translation identity fails at t = {}",
                format_rational(&t.t)
            )));
        }
        if !self.concave {
            return Err(HarnessError::Assertion(
                "slice areas violate Brunn-Minkowski concavity".into(),
            ));
        }
        Ok(())
    }

    /// Human-readable verdict lines.
    pub fn summary(&self) -> Vec<String> {
        let ok = |b: bool| if b { "OK" } else { "FAIL" };
        let mut lines = vec![
            format!(
                "vertices: {}",
                self.vertices
                    .iter()
                    .map(|v| format!("({})", v.join(", ")))
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
            format!(
                "volume identity: {} = {} {}",
                format_rational(&self.body_volume),
                format_rational(&self.vol),
                ok(self.volume_identity)
            ),
        ];
        lines.extend(
            self.translations
                .iter()
                .map(|t| format!("translation t={}: {}", t.t, ok(t.holds))),
        );
        lines.push(format!("concavity: {}", ok(self.concave)));
        lines
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["r", "area", "decimal"])?;
        for s in &self.slices {
            w.write_record([
                format_rational(&s.r),
                format_rational(&s.area),
                decimal(&s.area),
            ])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

pub fn okounkov_command(
    xi: &TDivisor,
    flag: &FlagSpec,
    translations: &[Rational],
    samples: u32,
) -> Result<OkounkovReport> {
    let body = okounkov_body(xi, flag)?;
    let body_volume = body.normalized_volume()?;
    let vol = xi.vol()?;
    let threshold = pseff_threshold(xi, flag)?;
    let translations = translations
        .iter()
        .map(|t| {
            Ok(TranslationVerdict {
                t: t.clone(),
                holds: translation_identity_check(xi, flag, t)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let profile = slice_profile(body.body())?;
    let (lo, hi) = match profile.profile.support() {
        Some((a, b)) => (a.clone(), b.clone()),
        None => (int(0), int(0)),
    };
    let slices = sample_points(&lo, &hi, samples, profile.profile.breakpoints())
        .into_iter()
        .map(|r| SliceRow {
            area: profile.eval(&r),
            r,
        })
        .collect();
    Ok(OkounkovReport {
        variety: xi.variety().name().to_string(),
        divisor: xi.coeffs().to_vec(),
        cone: flag.cone(),
        order: flag.order().to_vec(),
        vertices: body
            .body()
            .vertices()?
            .iter()
            .map(|v| v.to_strings())
            .collect(),
        volume_identity: body_volume == vol,
        body_volume,
        vol,
        threshold,
        translations,
        slices,
        concave: bm_concavity_check(&profile),
    })
}
