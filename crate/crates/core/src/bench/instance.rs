//! Instance files and synthetic generators.
//!
//! Three on-disk formats are understood:
//!
//! * **MDPLIB triplet** text: a header line `n` or `n m`, then one line
//!   `i j d_ij` per distance. Indices are 0-based if any index is 0, else
//!   1-based. The distance matrix `D` is symmetrized with a zero diagonal and
//!   the objective matrix is `Q = -D`, so `1/2 x^T Q x = -sum_{i<j} d_ij x_i x_j`
//!   and optima are the negated diversity values.
//! * **Dense** text: header `n` or `n m`, then `n*n` reals taken as `Q`
//!   row by row.
//! * **Canonical JSON**: `{"name", "n", "m", "q": [row-major n*n],
//!   "best_known"?, "constraints"?: [{"coeffs", "sense", "rhs"}]}`.

use std::collections::HashMap;
use std::path::Path;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::milp::{self, MilpBackend};
use crate::model::{BinaryPoint, FeasibleDomain, LinearRow, QuadraticObjective};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceSource {
    MdplibTriplet,
    DenseMatrix,
    CanonicalJson,
    Synthetic,
}

/// Requested input format; `Auto` picks by extension (`.json` canonical,
/// `.dense`/`.mat` dense, anything else triplet).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InstanceFormat {
    #[default]
    Auto,
    MdplibTriplet,
    DenseMatrix,
    CanonicalJson,
}

impl std::str::FromStr for InstanceFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(InstanceFormat::Auto),
            "mdplib" | "triplet" => Ok(InstanceFormat::MdplibTriplet),
            "dense" => Ok(InstanceFormat::DenseMatrix),
            "json" => Ok(InstanceFormat::CanonicalJson),
            other => Err(Error::Usage(format!("unknown instance format {other:?}"))),
        }
    }
}

impl InstanceFormat {
    fn resolve(self, path: &Path) -> InstanceFormat {
        if self != InstanceFormat::Auto {
            return self;
        }
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => InstanceFormat::CanonicalJson,
            Some("dense") | Some("mat") => InstanceFormat::DenseMatrix,
            _ => InstanceFormat::MdplibTriplet,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub name: String,
    pub obj: QuadraticObjective,
    pub dom: FeasibleDomain,
    /// Best known objective in the original scale.
    pub best_known: Option<f64>,
    pub source: InstanceSource,
}

impl Instance {
    /// First `m` entries set to one, or any feasible point when extra rows
    /// exclude that.
    pub fn default_start<B: MilpBackend + ?Sized>(&self, backend: &mut B) -> Result<BinaryPoint> {
        let x0 = BinaryPoint::leading_ones(self.dom.dim(), self.dom.cardinality());
        if self.dom.contains(&x0) {
            return Ok(x0);
        }
        let res = milp::find_feasible(backend, &self.dom, &[], Duration::from_secs(60))?;
        res.x
            .ok_or_else(|| Error::Data(format!("instance {} has no feasible point", self.name)))
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CanonicalInstance {
    name: String,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    q: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    best_known: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    constraints: Vec<LinearRow>,
}

/// Reads an instance file. `m_override` takes precedence over any
/// cardinality stored in the file.
pub fn parse_instance(
    path: &Path,
    fmt: InstanceFormat,
    m_override: Option<usize>,
) -> Result<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("instance")
        .to_string();
    parse_instance_str(&text, fmt.resolve(path), &name, m_override)
}

/// Parses instance text in a concrete format (`Auto` is treated as triplet).
pub fn parse_instance_str(
    text: &str,
    fmt: InstanceFormat,
    name: &str,
    m_override: Option<usize>,
) -> Result<Instance> {
    match fmt {
        InstanceFormat::CanonicalJson => parse_canonical(text, m_override),
        InstanceFormat::DenseMatrix => parse_dense(text, name, m_override),
        InstanceFormat::MdplibTriplet | InstanceFormat::Auto => {
            parse_triplet(text, name, m_override)
        }
    }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        message: format!("cannot parse {tok:?}"),
    })
}

fn parse_header(line: usize, content: &str) -> Result<(usize, Option<usize>)> {
    let toks: Vec<&str> = content.split_whitespace().collect();
    match toks.as_slice() {
        [n] => Ok((parse_num(n, line)?, None)),
        [n, m] => Ok((parse_num(n, line)?, Some(parse_num(m, line)?))),
        _ => Err(Error::Parse {
            line,
            message: format!("expected header `n` or `n m`, got {content:?}"),
        }),
    }
}

fn cardinality(file_m: Option<usize>, m_override: Option<usize>) -> Result<usize> {
    m_override.or(file_m).ok_or_else(|| {
        Error::Usage("instance has no cardinality; pass an override".into())
    })
}

fn parse_triplet(text: &str, name: &str, m_override: Option<usize>) -> Result<Instance> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty file".into(),
    })?;
    let (n, file_m) = parse_header(hline, header)?;
    let mut entries = Vec::new();
    for (line, content) in lines {
        let toks: Vec<&str> = content.split_whitespace().collect();
        let [i, j, d] = toks.as_slice() else {
            return Err(Error::Parse {
                line,
                message: format!("expected `i j d`, got {content:?}"),
            });
        };
        let d: f64 = parse_num(d, line)?;
        if !d.is_finite() {
            return Err(Error::Parse {
                line,
                message: format!("non-finite distance {d}"),
            });
        }
        entries.push((line, parse_num::<usize>(i, line)?, parse_num::<usize>(j, line)?, d));
    }
    let zero_based = entries.iter().any(|&(_, i, j, _)| i == 0 || j == 0);
    let offset = usize::from(!zero_based);
    let mut dist: Vec<Option<f64>> = vec![None; n * n];
    for (line, i, j, d) in entries {
        let (i, j) = (i - offset, j - offset);
        if i >= n || j >= n {
            return Err(Error::Parse {
                line,
                message: format!("index out of range for n={n}"),
            });
        }
        if i == j {
            continue;
        }
        for (a, b) in [(i, j), (j, i)] {
            match dist[a * n + b] {
                Some(prev) if (prev - d).abs() > 1e-9 => {
                    return Err(Error::Data(format!(
                        "conflicting distances for pair ({i},{j}): {prev} and {d}"
                    )))
                }
                _ => dist[a * n + b] = Some(d),
            }
        }
    }
    let q = dist.into_iter().map(|d| -d.unwrap_or(0.0)).collect();
    let m = cardinality(file_m, m_override)?;
    Ok(Instance {
        name: name.to_string(),
        obj: QuadraticObjective::new(n, q)?,
        dom: FeasibleDomain::new(n, m)?,
        best_known: None,
        source: InstanceSource::MdplibTriplet,
    })
}

fn parse_dense(text: &str, name: &str, m_override: Option<usize>) -> Result<Instance> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty file".into(),
    })?;
    let (n, file_m) = parse_header(hline, header)?;
    let mut q = Vec::with_capacity(n * n);
    let mut last_line = hline;
    for (line, content) in lines {
        last_line = line;
        for tok in content.split_whitespace() {
            q.push(parse_num::<f64>(tok, line)?);
        }
    }
    if q.len() != n * n {
        return Err(Error::Parse {
            line: last_line,
            message: format!("expected {} matrix entries, found {}", n * n, q.len()),
        });
    }
    let m = cardinality(file_m, m_override)?;
    Ok(Instance {
        name: name.to_string(),
        obj: QuadraticObjective::new(n, q)?,
        dom: FeasibleDomain::new(n, m)?,
        best_known: None,
        source: InstanceSource::DenseMatrix,
    })
}

fn parse_canonical(text: &str, m_override: Option<usize>) -> Result<Instance> {
    let raw: CanonicalInstance = serde_json::from_str(text)?;
    let m = cardinality(raw.m, m_override)?;
    Ok(Instance {
        obj: QuadraticObjective::new(raw.n, raw.q)?,
        dom: FeasibleDomain::new(raw.n, m)?.with_rows(raw.constraints)?,
        name: raw.name,
        best_known: raw.best_known,
        source: InstanceSource::CanonicalJson,
    })
}

/// Canonical JSON text for an instance.
pub fn to_canonical_json(inst: &Instance) -> Result<String> {
    let raw = CanonicalInstance {
        name: inst.name.clone(),
        n: inst.dom.dim(),
        m: Some(inst.dom.cardinality()),
        q: inst.obj.matrix().to_vec(),
        best_known: inst.best_known,
        constraints: inst.dom.extra_rows().to_vec(),
    };
    Ok(serde_json::to_string_pretty(&raw)?)
}

pub fn write_canonical_json(inst: &Instance, path: &Path) -> Result<()> {
    std::fs::write(path, to_canonical_json(inst)?).map_err(|e| Error::io(path, e))
}

/// Sidecar mapping instance names to best-known objective values.
pub fn load_best_known(path: &Path) -> Result<HashMap<String, f64>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SynthKind {
    /// `Q = A^T A / n` with `A` uniform in `[-1, 1]`.
    PsdRandom,
    /// Negated Euclidean distances between uniform points of `[0, 10]^2`.
    MdpLike,
    /// Symmetric `Q` with entries uniform in `[-1, 1]`.
    NonconvexRandom,
}

impl SynthKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SynthKind::PsdRandom => "psd_random",
            SynthKind::MdpLike => "mdp_like",
            SynthKind::NonconvexRandom => "nonconvex_random",
        }
    }
}

impl std::str::FromStr for SynthKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psd_random" => Ok(SynthKind::PsdRandom),
            "mdp_like" => Ok(SynthKind::MdpLike),
            "nonconvex_random" => Ok(SynthKind::NonconvexRandom),
            other => Err(Error::Usage(format!("unknown synthetic kind {other:?}"))),
        }
    }
}

/// Deterministic synthetic instance for a given seed.
pub fn synth_instance(n: usize, m: usize, kind: SynthKind, seed: u64) -> Result<Instance> {
    let dom = FeasibleDomain::new(n, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = vec![0.0; n * n];
    match kind {
        SynthKind::PsdRandom => {
            let a: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            for i in 0..n {
                for j in i..n {
                    let v: f64 = (0..n).map(|r| a[r * n + i] * a[r * n + j]).sum::<f64>() / n as f64;
                    q[i * n + j] = v;
                    q[j * n + i] = v;
                }
            }
        }
        SynthKind::MdpLike => {
            let pts: Vec<(f64, f64)> = (0..n)
                .map(|_| (rng.gen_range(0.0..=10.0), rng.gen_range(0.0..=10.0)))
                .collect();
            for i in 0..n {
                for j in (i + 1)..n {
                    let d = ((pts[i].0 - pts[j].0).powi(2) + (pts[i].1 - pts[j].1).powi(2)).sqrt();
                    q[i * n + j] = -d;
                    q[j * n + i] = -d;
                }
            }
        }
        SynthKind::NonconvexRandom => {
            for i in 0..n {
                for j in i..n {
                    let v = rng.gen_range(-1.0..=1.0);
                    q[i * n + j] = v;
                    q[j * n + i] = v;
                }
            }
        }
    }
    Ok(Instance {
        name: format!("{}-n{n}-m{m}-s{seed}", kind.as_str()),
        obj: QuadraticObjective::new(n, q)?,
        dom,
        best_known: None,
        source: InstanceSource::Synthetic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplet_one_based() {
        let inst = parse_instance_str("3 1\n1 2 5.0\n1 3 2.0\n2 3 1.0\n", InstanceFormat::MdplibTriplet, "t", None)
            .unwrap();
        assert_eq!(inst.dom.dim(), 3);
        assert_eq!(inst.dom.cardinality(), 1);
        assert_eq!(inst.obj.entry(0, 1), -5.0);
        assert_eq!(inst.obj.entry(1, 0), -5.0);
        assert_eq!(inst.obj.entry(0, 2), -2.0);
        assert_eq!(inst.obj.entry(1, 2), -1.0);
        assert_eq!(inst.obj.entry(1, 1), 0.0);
    }

    #[test]
    fn triplet_zero_based_and_override() {
        let inst = parse_instance_str("3\n0 1 5\n0 2 2\n1 2 1\n", InstanceFormat::MdplibTriplet, "t", Some(2))
            .unwrap();
        assert_eq!(inst.obj.entry(0, 1), -5.0);
        assert_eq!(inst.dom.cardinality(), 2);
        let x = BinaryPoint::parse("110").unwrap();
        assert_eq!(inst.obj.value(&x).unwrap(), -5.0);
    }

    #[test]
    fn triplet_errors() {
        let missing_m = parse_instance_str("3\n1 2 5\n", InstanceFormat::MdplibTriplet, "t", None);
        assert!(matches!(missing_m, Err(Error::Usage(_))));
        let bad = parse_instance_str("3 1\n1 2\n", InstanceFormat::MdplibTriplet, "t", None);
        assert!(matches!(bad, Err(Error::Parse { line: 2, .. })));
        let bad = parse_instance_str("3 1\n1 2 5\n1 x 5\n", InstanceFormat::MdplibTriplet, "t", None);
        assert!(matches!(bad, Err(Error::Parse { line: 3, .. })));
        let range = parse_instance_str("3 1\n1 4 5\n", InstanceFormat::MdplibTriplet, "t", None);
        assert!(matches!(range, Err(Error::Parse { .. })));
    }

    #[test]
    fn dense_matrix() {
        let inst = parse_instance_str("3 1\n2 0 0\n0 4 0\n0 0 6\n", InstanceFormat::DenseMatrix, "d", None)
            .unwrap();
        assert_eq!(inst.obj, QuadraticObjective::diagonal(&[2.0, 4.0, 6.0]));
        let asym = parse_instance_str("2 1\n1 0.1\n0 1\n", InstanceFormat::DenseMatrix, "d", None);
        assert!(matches!(asym, Err(Error::Data(_))));
        let short = parse_instance_str("2 1\n1 0\n0\n", InstanceFormat::DenseMatrix, "d", None);
        assert!(matches!(short, Err(Error::Parse { .. })));
    }

    #[test]
    fn canonical_roundtrip() {
        let text = r#"{"name":"e1","n":3,"m":1,"q":[2,0,0,0,4,0,0,0,6]}"#;
        let inst = parse_instance_str(text, InstanceFormat::CanonicalJson, "ignored", None).unwrap();
        assert_eq!(inst.name, "e1");
        assert_eq!(inst.obj, QuadraticObjective::diagonal(&[2.0, 4.0, 6.0]));
        assert_eq!(inst.dom, FeasibleDomain::new(3, 1).unwrap());
        let again = parse_instance_str(&to_canonical_json(&inst).unwrap(), InstanceFormat::CanonicalJson, "", None)
            .unwrap();
        assert_eq!(again, inst);
    }

    #[test]
    fn synthetic_determinism_and_shape() {
        let a = synth_instance(5, 2, SynthKind::PsdRandom, 7).unwrap();
        let b = synth_instance(5, 2, SynthKind::PsdRandom, 7).unwrap();
        assert_eq!(a.obj, b.obj);
        assert!(a.obj.is_psd());

        let mdp = synth_instance(8, 3, SynthKind::MdpLike, 1).unwrap();
        for i in 0..8 {
            assert_eq!(mdp.obj.entry(i, i), 0.0);
            for j in 0..8 {
                assert!(mdp.obj.entry(i, j) <= 0.0);
            }
        }
        assert!(!mdp.obj.is_psd());

        let nc = synth_instance(6, 2, SynthKind::NonconvexRandom, 3).unwrap();
        assert!(nc.obj.gershgorin_rho() > 0.0);
    }
}
