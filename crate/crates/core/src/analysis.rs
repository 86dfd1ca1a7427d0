//! Dimensions, growth ratios and scaling laws of the model families.
//!
//! Exponents are derived from exact per-step growth factors and then checked
//! against least-squares fits over the canonical Wiener sequences. The values
//! usually quoted for the same laws are carried alongside as
//! `printed_exponent`, since several of them describe diameter scaling
//! rather than scaling in `|V|`.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{star_fractal_cases, step_subdivision, wiener_sequence, SequencePoint};
use crate::error::{Error, Result};
use crate::exact::{exact_log, int, ln_big, ln_ratio, pow, ratio_to_f64, to_ratio, ExactRatio};
use crate::growth::{Family, ModelSpec};
use crate::tree::{degree_stats, wiener_oracle, Tree};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum FractalDimension {
    Finite(f64),
    Infinite,
    NotFractal,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionTriple {
    pub fractal: FractalDimension,
    pub walk: Option<f64>,
    pub spectral: Option<f64>,
}

/// Exact per-step growth factors of a self-similar edge family: mass
/// (vertices), length (diameter) and mean first-passage time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthFactors {
    pub mass: u64,
    pub length: u64,
    /// Leading coefficient of the one-step Wiener map, `S' ≈ g·S`.
    pub wiener: BigInt,
    /// `wiener / mass`.
    pub mfpt: ExactRatio,
}

/// Growth factors of an edge-rewriting family, read off the canonical
/// one-step map (the coefficient of `S`, computed numerically).
pub fn growth_factors(family: &Family) -> Option<GrowthFactors> {
    let (w, m) = family.edge_operation()?;
    let (w, m) = (w as u64, m as u64);
    let n = int(7);
    let step = |s: i64| {
        if m == 0 {
            step_subdivision(&int(s), &n, w).expect("valid").0
        } else {
            star_fractal_cases(&int(s), &n, w, m).total()
        }
    };
    let wiener = step(1) - step(0);
    let mass = w * (m + 1) + 1;
    Some(GrowthFactors {
        mass,
        length: w + 1,
        mfpt: ExactRatio::new(wiener.clone(), BigInt::from(mass)),
        wiener,
    })
}

/// `d_w = 1 + d_f` as an exact statement about growth factors: the MFPT
/// factor equals the product of the mass and length factors.
pub fn walk_dimension_identity(family: &Family) -> Option<bool> {
    let g = growth_factors(family)?;
    Some(g.mfpt == ExactRatio::from_integer(BigInt::from(g.mass * g.length)))
}

pub fn model_dimensions(family: &Family) -> DimensionTriple {
    match family {
        Family::Cayley { .. } | Family::Exponential { .. } => DimensionTriple {
            fractal: FractalDimension::Infinite,
            walk: None,
            spectral: None,
        },
        f if f.is_subdivision() => DimensionTriple {
            fractal: FractalDimension::NotFractal,
            walk: None,
            spectral: None,
        },
        f => {
            let g = growth_factors(f).expect("edge family");
            let ln_len = (g.length as f64).ln();
            let d_f = (g.mass as f64).ln() / ln_len;
            let d_w = ln_ratio(&g.mfpt) / ln_len;
            DimensionTriple {
                fractal: FractalDimension::Finite(d_f),
                walk: Some(d_w),
                spectral: Some(2.0 * d_f / d_w),
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Persistence {
    Persistent,
    NotPersistent,
    NotApplicable,
}

/// A walk is persistent when the spectral dimension is below 2.
pub fn persistence(family: &Family) -> Persistence {
    match model_dimensions(family).spectral {
        Some(d) if d < 2.0 => Persistence::Persistent,
        Some(_) => Persistence::NotPersistent,
        None => Persistence::NotApplicable,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaV {
    /// `lim (|V_t| - |V_{t-1}|) / |V_{t-1}|`.
    pub analytic: ExactRatio,
    /// The same ratio at the spec's last step; `None` before any growth.
    pub empirical: Option<ExactRatio>,
    /// The value usually quoted for the family.
    pub as_printed: ExactRatio,
}

pub fn delta_v(spec: &ModelSpec) -> Result<DeltaV> {
    spec.validate()?;
    let (analytic, as_printed) = match spec.family {
        Family::Cayley { n } => (n as i64 - 2, n as i64 - 2),
        Family::Exponential { m } => (m as i64, m as i64),
        Family::TGraph => (2, 3),
        Family::FirstOrderSubdivision => (1, 1),
        Family::MthSubdivision { m } => (m as i64, m as i64),
        Family::StarFractal1m { m } => (m as i64 + 1, m as i64 + 1),
        Family::StarFractalWm { w, m } => ((w * (m + 1)) as i64, (w * (m + 1)) as i64),
    };
    let counts = crate::growth::predicted_counts(spec)?.corrected.steps;
    let empirical = (counts.len() >= 2).then(|| {
        let (prev, last) = (
            &counts[counts.len() - 2].vertices,
            &counts[counts.len() - 1].vertices,
        );
        ExactRatio::new(last - prev, prev.clone())
    });
    Ok(DeltaV {
        analytic: ExactRatio::from_integer(BigInt::from(analytic)),
        empirical,
        as_printed: ExactRatio::from_integer(BigInt::from(as_printed)),
    })
}

/// Which exact identity makes `ln(m+2)/ln 2 = ln(w(n+1)+1)/ln(w+1)` hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionClass {
    /// `m + 2 = 2^k` and `w(n+1) + 1 = (w+1)^k`.
    SharedExponent,
    /// `w + 1 = 2^c` and `w(n+1) + 1 = (m+2)^c`.
    PowerOfTwoLength,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimSolution {
    pub w: u64,
    pub n: u64,
    pub m: u64,
    /// The common fractal dimension.
    pub dimension: f64,
    pub classes: Vec<SolutionClass>,
}

/// All `(w, n, m)` within the bounds for which a (1, m)-star-fractal and a
/// (w, n)-star-fractal have the same fractal dimension. Decided in integer
/// arithmetic only.
pub fn dim_equality_scan(w_max: u64, m_max: u64, n_max: u64) -> Vec<DimSolution> {
    let two = int(2);
    let mut out = Vec::new();
    for w in 1..=w_max {
        let d = BigInt::from(w + 1);
        let c_pow = exact_log(&d, &two);
        for n in 1..=n_max {
            let c = BigInt::from(w * (n + 1) + 1);
            for m in 1..=m_max {
                let a = BigInt::from(m + 2);
                let mut classes = BTreeSet::new();
                if let Some(k) = exact_log(&a, &two) {
                    if pow(w as i64 + 1, k) == c {
                        classes.insert(SolutionClass::SharedExponent);
                    }
                }
                if let Some(j) = c_pow {
                    if crate::exact::pow_big(&a, j) == c {
                        classes.insert(SolutionClass::PowerOfTwoLength);
                    }
                }
                if !classes.is_empty() {
                    out.push(DimSolution {
                        w,
                        n,
                        m,
                        dimension: ((m + 2) as f64).ln() / 2f64.ln(),
                        classes: classes.into_iter().collect(),
                    });
                }
            }
        }
    }
    out
}

/// Ordinary least squares; returns `(slope, intercept, r²)`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64)> {
    if xs.len() != ys.len() {
        return Err(Error::BadParam("x and y lengths differ".into()));
    }
    if xs.len() < 3 {
        return Err(Error::InsufficientPoints(xs.len()));
    }
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::BadParam("x values are all equal".into()));
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
    };
    Ok((slope, my - slope * mx, r2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitKind {
    /// Slope of `ln MFPT` against `ln |V|`.
    PowerLaw,
    /// Slope of `MFPT / |V|` against `t`.
    LinearInSteps,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub kind: FitKind,
    pub exponent: f64,
    pub r_squared: f64,
    pub analytic_exponent: f64,
    /// The exponent (or slope coefficient) usually quoted for this family.
    pub printed_exponent: Option<f64>,
    /// MFPT exponent against the diameter instead of `|V|`.
    pub diameter_exponent: Option<f64>,
    /// `(x, y)` pairs that were fitted.
    pub points: Vec<(f64, f64)>,
}

fn printed_exponent(family: &Family) -> f64 {
    let ln2 = 2f64.ln();
    match *family {
        Family::FirstOrderSubdivision | Family::MthSubdivision { .. } => 2.0,
        Family::StarFractal1m { m } => (2.0 * (m as f64 + 2.0)).ln() / ln2,
        Family::StarFractalWm { w, m } => {
            let (w, m) = (w as f64, m as f64);
            ((w + 1.0) * (m * (w + 1.0) + 1.0)).ln() / (w + 1.0).ln()
        }
        Family::TGraph => 6f64.ln() / ln2,
        Family::Cayley { n } => {
            let n = n as f64;
            (n / (n - 2.0)).powi(2)
        }
        Family::Exponential { m } => 4.0 * m as f64 / (m as f64 + 1.0),
    }
}

fn mfpt_of(p: &SequencePoint) -> ExactRatio {
    ExactRatio::new(BigInt::from(2) * &p.wiener, p.vertices.clone())
}

/// Fits the MFPT scaling law of `spec.family` over `t_range`, using
/// `MFPT = 2S/|V|` from the canonical Wiener sequence of `spec`'s seed.
pub fn scaling_fit(spec: &ModelSpec, t_range: RangeInclusive<u32>) -> Result<ScalingFit> {
    let (lo, hi) = (*t_range.start(), *t_range.end());
    let count = if hi >= lo { (hi - lo + 1) as usize } else { 0 };
    if count < 3 {
        return Err(Error::InsufficientPoints(count));
    }
    let seq = wiener_sequence(&spec.with_steps(hi))?;
    let pts: Vec<&SequencePoint> = seq.iter().filter(|p| p.step >= lo).collect();
    if pts.len() < 3 {
        return Err(Error::InsufficientPoints(pts.len()));
    }
    let family = spec.family;
    let (kind, points, analytic, diameter) = match family {
        Family::Cayley { .. } | Family::Exponential { .. } => {
            let points: Vec<(f64, f64)> = pts
                .iter()
                .map(|p| (p.step as f64, ratio_to_f64(&(mfpt_of(p) / to_ratio(&p.vertices)))))
                .collect();
            let analytic = match family {
                Family::Exponential { m } => 2.0 * m as f64 / (m as f64 + 1.0),
                _ => 2.0,
            };
            (FitKind::LinearInSteps, points, analytic, None)
        }
        _ => {
            let points = pts
                .iter()
                .map(|p| (ln_big(&p.vertices), ln_ratio(&mfpt_of(p))))
                .collect();
            let g = growth_factors(&family).expect("edge family");
            let ln_mfpt = ln_ratio(&g.mfpt);
            (
                FitKind::PowerLaw,
                points,
                ln_mfpt / (g.mass as f64).ln(),
                Some(ln_mfpt / (g.length as f64).ln()),
            )
        }
    };
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    let (slope, _, r2) = least_squares(&xs, &ys)?;
    Ok(ScalingFit {
        kind,
        exponent: slope,
        r_squared: r2,
        analytic_exponent: analytic,
        printed_exponent: Some(printed_exponent(&family)),
        diameter_exponent: diameter,
        points,
    })
}

/// Mean distance `S / (n(n-1)/2)`.
pub fn avg_distance(t: &Tree) -> Result<ExactRatio> {
    if t.len() < 2 {
        return Err(Error::BadParam("mean distance needs at least 2 vertices".into()));
    }
    let n = t.len() as i64;
    Ok(ExactRatio::new(wiener_oracle(t) * 2, BigInt::from(n * (n - 1))))
}

/// `⟨S⟩ / ln|V|` along the canonical sequence of `spec` for `t` in range.
pub fn log_distance_ratios(spec: &ModelSpec, t_range: RangeInclusive<u32>) -> Result<Vec<f64>> {
    let seq = wiener_sequence(&spec.with_steps(*t_range.end()))?;
    Ok(seq
        .iter()
        .filter(|p| t_range.contains(&p.step))
        .map(|p| {
            let v = &p.vertices;
            let mean = ExactRatio::new(&p.wiener * 2, v * (v - 1));
            ratio_to_f64(&mean) / ln_big(v)
        })
        .collect())
}

/// Relative spread `(max - min) / max` of a set of ratios.
pub fn relative_spread(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::MIN, f64::max);
    let min = values.iter().cloned().fold(f64::MAX, f64::min);
    (max - min) / max
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeTailFit {
    /// Decay rate of `P(K ≥ k) ≈ C e^{-αk}`.
    pub alpha: f64,
    /// Smallest `C` for which `P(K ≥ k) ≤ C e^{-αk}` holds at every observed `k`.
    pub c: f64,
    pub r_squared: f64,
    /// `(k, P(K ≥ k))`.
    pub cumulative: Vec<(usize, f64)>,
}

/// Exponential fit to the cumulative degree distribution.
pub fn degree_tail_fit(t: &Tree) -> Result<DegreeTailFit> {
    let degrees = degree_stats(t).degrees;
    let n = degrees.len() as f64;
    let max = degrees.iter().copied().max().unwrap_or(0);
    let mut counts = vec![0usize; max + 2];
    for d in degrees {
        counts[d] += 1;
    }
    let mut cumulative = Vec::new();
    let mut above = 0usize;
    for k in (1..=max).rev() {
        above += counts[k];
        if counts[k] > 0 {
            cumulative.push((k, above as f64 / n));
        }
    }
    cumulative.reverse();
    let xs: Vec<f64> = cumulative.iter().map(|c| c.0 as f64).collect();
    let ys: Vec<f64> = cumulative.iter().map(|c| c.1.ln()).collect();
    let (slope, _, r2) = least_squares(&xs, &ys)?;
    let alpha = -slope;
    let c = cumulative
        .iter()
        .map(|&(k, p)| p * (alpha * k as f64).exp())
        .fold(0.0, f64::max);
    Ok(DegreeTailFit {
        alpha,
        c,
        r_squared: r2,
        cumulative,
    })
}
