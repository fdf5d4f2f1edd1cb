//! Per-iteration run records.

use serde::{Deserialize, Serialize};

/// Bounds and bookkeeping at the start of outer iteration `k`, after the
/// lower-bound solve. Values are in the original (unregularized) scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub k: usize,
    /// Wall-clock seconds since the run started.
    pub t: f64,
    pub ub: f64,
    #[serde(with = "nonfinite")]
    pub lb: f64,
    pub n_cuts: usize,
    #[serde(with = "nonfinite")]
    pub tau: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub config_name: String,
    pub instance_name: String,
    /// Objective at the common starting point.
    pub f0: f64,
    pub records: Vec<TraceRecord>,
}

impl RunTrace {
    pub fn new(config_name: impl Into<String>, instance_name: impl Into<String>, f0: f64) -> Self {
        RunTrace {
            config_name: config_name.into(),
            instance_name: instance_name.into(),
            f0,
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, record: TraceRecord) {
        self.records.push(record);
    }

    pub fn last(&self) -> Option<&TraceRecord> {
        self.records.last()
    }

    /// Lowest upper bound seen, or `f0` for an empty trace.
    pub fn best_value(&self) -> f64 {
        self.records.iter().map(|r| r.ub).fold(self.f0, f64::min)
    }

    /// Checks `k` strictly increasing, `t` nondecreasing, `ub` nonincreasing.
    pub fn is_well_formed(&self) -> bool {
        self.records.windows(2).all(|w| {
            w[0].k < w[1].k && w[0].t <= w[1].t && w[1].ub <= w[0].ub
        })
    }
}

/// Serializes non-finite floats as the strings `"inf"`, `"-inf"`, `"nan"`
/// so JSON round trips are exact.
pub(crate) mod nonfinite {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(s) => s
                .parse::<f64>()
                .map_err(|_| serde::de::Error::custom(format!("invalid float {s:?}"))),
        }
    }
}
