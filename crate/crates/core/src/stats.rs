//! Numerical helpers shared by the metric and simulation code.

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        if self.sum.is_finite() {
            self.sum + self.compensation
        } else {
            self.sum
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

pub fn sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// Weighted Pearson correlation over `(x, y, weight)` triples.
///
/// Returns `None` when either marginal is constant. Constancy is detected on
/// the raw values rather than on the computed variance, so exactly regular
/// inputs never slip through as rounding noise.
pub fn weighted_pearson(points: &[(f64, f64, f64)]) -> Option<f64> {
    let first = points.first()?;
    if points.iter().all(|p| p.0 == first.0) || points.iter().all(|p| p.1 == first.1) {
        return None;
    }
    let w = sum(points.iter().map(|p| p.2));
    let mx = sum(points.iter().map(|p| p.2 * p.0)) / w;
    let my = sum(points.iter().map(|p| p.2 * p.1)) / w;
    let mut sxx = CompensatedSum::new();
    let mut syy = CompensatedSum::new();
    let mut sxy = CompensatedSum::new();
    for &(x, y, wt) in points {
        let dx = x - mx;
        let dy = y - my;
        sxx.add(wt * dx * dx);
        syy.add(wt * dy * dy);
        sxy.add(wt * dx * dy);
    }
    let r = sxy.value() / (sxx.value().sqrt() * syy.value().sqrt());
    Some(r.clamp(-1.0, 1.0))
}

/// Mean and sample standard deviation. The deviation is 0 for fewer than two values.
pub fn mean_sd(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = sum(values.iter().copied()) / n;
    if values.len() < 2 || !mean.is_finite() {
        return (mean, 0.0);
    }
    let ss = sum(values.iter().map(|v| (v - mean) * (v - mean)));
    (mean, (ss / (n - 1.0)).sqrt())
}

/// Two-sided normal quantiles used for confidence intervals.
pub const Z95: f64 = 1.959_963_984_540_054;
pub const Z99: f64 = 2.575_829_303_548_901;

/// Normal-approximation confidence interval for the mean.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Summary {
    #[serde(with = "float_or_inf")]
    pub mean: f64,
    #[serde(with = "float_or_inf")]
    pub sd: f64,
    #[serde(with = "float_or_inf")]
    pub ci_low: f64,
    #[serde(with = "float_or_inf")]
    pub ci_high: f64,
    pub n: usize,
}

impl Summary {
    pub fn from_values(values: &[f64], z: f64) -> Self {
        let (mean, sd) = mean_sd(values);
        let half = if values.len() > 1 && sd.is_finite() {
            z * sd / (values.len() as f64).sqrt()
        } else {
            0.0
        };
        let (ci_low, ci_high) = if mean.is_infinite() { (mean, mean) } else { (mean - half, mean + half) };
        Summary { mean, sd, ci_low, ci_high, n: values.len() }
    }
}

/// Serde adapter writing non-finite floats as the strings `"inf"`, `"-inf"`
/// and `"nan"`, since JSON numbers cannot carry them.
pub mod float_or_inf {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Number(f64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else if x.is_nan() {
            s.serialize_str("nan")
        } else if *x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Number(x) => Ok(x),
            Repr::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(serde::de::Error::custom(format!("expected a number or \"inf\", got {other:?}"))),
            },
        }
    }

    /// Text form used in CSV cells.
    pub fn to_text(x: f64) -> String {
        if x.is_finite() {
            format!("{x}")
        } else if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    }
}
