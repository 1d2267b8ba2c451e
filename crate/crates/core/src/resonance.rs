//! Pole classification, bound/antibound pairing across a coupling sweep, and
//! the exponential fit of the symmetry defect.

use crate::potential::{PotentialError, PotentialSpec, ScaleParams};
use crate::spectral::{self, SpectralError};
use crate::transfer::{self, AxisKind, TransferError};
use crate::util::fmt_g17;
use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ResonanceError {
    #[error("lambda = {0} is within tol_axis of the origin; class is ambiguous")]
    Ambiguous(Complex64),
    #[error("need at least 3 usable (q, defect) points for the decay fit, got {0}")]
    InsufficientData(usize),
    #[error("invalid scan configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    Bound,
    Antibound,
    Resonance,
}

impl Class {
    pub fn as_str(&self) -> &'static str {
        match self {
            Class::Bound => "bound",
            Class::Antibound => "antibound",
            Class::Resonance => "resonance",
        }
    }

    pub fn parse(s: &str) -> Result<Self, ResonanceError> {
        match s {
            "bound" => Ok(Class::Bound),
            "antibound" => Ok(Class::Antibound),
            "resonance" => Ok(Class::Resonance),
            other => Err(ResonanceError::Parse(format!("unknown class `{other}`"))),
        }
    }
}

/// Classify a pole by its position relative to the imaginary axis.
pub fn classify(lambda: Complex64, tol_axis: f64) -> Result<Class, ResonanceError> {
    assert!(tol_axis > 0.0);
    if lambda.norm() <= tol_axis {
        return Err(ResonanceError::Ambiguous(lambda));
    }
    if lambda.re.abs() <= tol_axis {
        if lambda.im > tol_axis {
            return Ok(Class::Bound);
        }
        if lambda.im < -tol_axis {
            return Ok(Class::Antibound);
        }
    }
    Ok(Class::Resonance)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceEntry {
    pub re: f64,
    pub im: f64,
    pub class: Class,
    pub accuracy: f64,
}

/// Classified eigenvalues from one engine run.
#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceSet {
    pub engine: String,
    pub potential_hash: String,
    pub entries: Vec<ResonanceEntry>,
}

impl ResonanceSet {
    /// Fixed-field-order JSON with 17-significant-digit floats.
    pub fn to_json(&self) -> String {
        let mut s = String::new();
        s.push_str("{\"engine\":\"");
        s.push_str(&self.engine);
        s.push_str("\",\"potential_hash\":\"");
        s.push_str(&self.potential_hash);
        s.push_str("\",\"entries\":[");
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&format!(
                "{{\"re\":{},\"im\":{},\"class\":\"{}\",\"accuracy\":{}}}",
                fmt_g17(e.re),
                fmt_g17(e.im),
                e.class.as_str(),
                fmt_g17(e.accuracy)
            ));
        }
        s.push_str("]}\n");
        s
    }

    pub fn from_json(text: &str) -> Result<Self, ResonanceError> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| ResonanceError::Parse(e.to_string()))?;
        let engine = v["engine"]
            .as_str()
            .ok_or_else(|| ResonanceError::Parse("missing engine".into()))?
            .to_string();
        let potential_hash = v["potential_hash"]
            .as_str()
            .ok_or_else(|| ResonanceError::Parse("missing potential_hash".into()))?
            .to_string();
        let mut entries = Vec::new();
        for e in v["entries"]
            .as_array()
            .ok_or_else(|| ResonanceError::Parse("missing entries".into()))?
        {
            entries.push(ResonanceEntry {
                re: e["re"]
                    .as_f64()
                    .ok_or_else(|| ResonanceError::Parse("bad re".into()))?,
                im: e["im"]
                    .as_f64()
                    .ok_or_else(|| ResonanceError::Parse("bad im".into()))?,
                class: Class::parse(e["class"].as_str().unwrap_or(""))?,
                accuracy: e["accuracy"].as_f64().unwrap_or(0.0),
            });
        }
        Ok(ResonanceSet {
            engine,
            potential_hash,
            entries,
        })
    }

    /// Three-column CSV `(re, im, class)`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("re,im,class\n");
        for e in &self.entries {
            s.push_str(&format!(
                "{},{},{}\n",
                fmt_g17(e.re),
                fmt_g17(e.im),
                e.class.as_str()
            ));
        }
        s
    }

    pub fn csv_rows(text: &str) -> Result<Vec<(f64, f64, Class)>, ResonanceError> {
        let mut out = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if i == 0 || line.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 3 {
                return Err(ResonanceError::Parse(format!(
                    "line {}: want 3 columns",
                    i + 1
                )));
            }
            let re: f64 = cols[0]
                .parse()
                .map_err(|e| ResonanceError::Parse(format!("line {}: {e}", i + 1)))?;
            let im: f64 = cols[1]
                .parse()
                .map_err(|e| ResonanceError::Parse(format!("line {}: {e}", i + 1)))?;
            out.push((re, im, Class::parse(cols[2])?));
        }
        Ok(out)
    }
}

/// One bound/antibound pair and its symmetry defect `|k_+ - k_-|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefectPair {
    pub k_bound: f64,
    pub k_antibound: f64,
    pub defect: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PairOutcome {
    pub pairs: Vec<DefectPair>,
    pub unpaired_bounds: Vec<f64>,
    pub unpaired_antibounds: Vec<f64>,
}

/// Greedy nearest-neighbor injective pairing among entries with `k >= k0`.
pub fn pair_defects(bounds: &[f64], antibounds: &[f64], k0: f64) -> PairOutcome {
    let b: Vec<f64> = bounds.iter().copied().filter(|k| *k >= k0).collect();
    let a: Vec<f64> = antibounds.iter().copied().filter(|k| *k >= k0).collect();
    let mut cand: Vec<(f64, usize, usize)> = Vec::with_capacity(b.len() * a.len());
    for (i, kb) in b.iter().enumerate() {
        for (j, ka) in a.iter().enumerate() {
            cand.push(((kb - ka).abs(), i, j));
        }
    }
    cand.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut used_b = vec![false; b.len()];
    let mut used_a = vec![false; a.len()];
    let mut pairs = Vec::new();
    for (d, i, j) in cand {
        if !used_b[i] && !used_a[j] {
            used_b[i] = true;
            used_a[j] = true;
            pairs.push(DefectPair {
                k_bound: b[i],
                k_antibound: a[j],
                defect: d,
            });
        }
    }
    pairs.sort_by(|x, y| x.k_bound.partial_cmp(&y.k_bound).unwrap());
    PairOutcome {
        pairs,
        unpaired_bounds: b
            .iter()
            .zip(&used_b)
            .filter(|(_, u)| !**u)
            .map(|(k, _)| *k)
            .collect(),
        unpaired_antibounds: a
            .iter()
            .zip(&used_a)
            .filter(|(_, u)| !**u)
            .map(|(k, _)| *k)
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Transfer,
    Spectral,
}

impl Engine {
    pub fn as_str(&self) -> &'static str {
        match self {
            Engine::Transfer => "transfer",
            Engine::Spectral => "spectral",
        }
    }
}

/// Per-coupling result of a symmetry scan.
#[derive(Debug, Clone, PartialEq)]
pub struct QScanEntry {
    pub q: f64,
    pub bounds: Vec<f64>,
    pub antibounds: Vec<f64>,
    pub pairing: PairOutcome,
}

impl QScanEntry {
    pub fn max_defect(&self) -> Option<f64> {
        self.pairing
            .pairs
            .iter()
            .map(|p| p.defect)
            .fold(None, |m, d| Some(m.map_or(d, |x: f64| x.max(d))))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    pub c_hat: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// One parsed scan-CSV row: `(q, kind, k, im_lambda, paired_defect)`.
pub type ScanCsvRow = (f64, String, f64, f64, Option<f64>);

/// Bound/antibound `k` lists per coupling, paired defects, and the fitted
/// decay rate of the per-q maximum defect.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryScan {
    pub k0: f64,
    pub defect_floor: f64,
    pub entries: Vec<QScanEntry>,
    pub fit: Option<DecayFit>,
    /// Smallest scanned q from which the floor-clamped maximum defect is
    /// non-increasing through the end of the grid.
    pub monotone_from: Option<f64>,
}

impl SymmetryScan {
    pub fn q_values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.q).collect()
    }

    /// `(q, max defect)` for every q that has at least one pair.
    pub fn max_defects(&self) -> Vec<(f64, f64)> {
        self.entries
            .iter()
            .filter_map(|e| e.max_defect().map(|d| (e.q, d)))
            .collect()
    }

    /// Scan CSV: `q, q_squared, kind, k, im_lambda, paired_defect`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("q,q_squared,kind,k,im_lambda,paired_defect\n");
        for e in &self.entries {
            let defect_of = |k: f64, bound: bool| -> Option<f64> {
                e.pairing.pairs.iter().find_map(|p| {
                    let kk = if bound { p.k_bound } else { p.k_antibound };
                    (kk == k).then_some(p.defect)
                })
            };
            for &k in &e.bounds {
                let d = defect_of(k, true).map(fmt_g17).unwrap_or_default();
                s.push_str(&format!(
                    "{},{},bound,{},{},{}\n",
                    fmt_g17(e.q),
                    fmt_g17(e.q * e.q),
                    fmt_g17(k),
                    fmt_g17(k),
                    d
                ));
            }
            for &k in &e.antibounds {
                let d = defect_of(k, false).map(fmt_g17).unwrap_or_default();
                s.push_str(&format!(
                    "{},{},antibound,{},{},{}\n",
                    fmt_g17(e.q),
                    fmt_g17(e.q * e.q),
                    fmt_g17(k),
                    fmt_g17(-k),
                    d
                ));
            }
        }
        s
    }

    pub fn csv_rows(text: &str) -> Result<Vec<ScanCsvRow>, ResonanceError> {
        let mut out = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if i == 0 || line.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 6 {
                return Err(ResonanceError::Parse(format!(
                    "line {}: want 6 columns",
                    i + 1
                )));
            }
            let q: f64 = cols[0]
                .parse()
                .map_err(|e| ResonanceError::Parse(format!("line {}: {e}", i + 1)))?;
            let k: f64 = cols[3]
                .parse()
                .map_err(|e| ResonanceError::Parse(format!("line {}: {e}", i + 1)))?;
            let im: f64 = cols[4]
                .parse()
                .map_err(|e| ResonanceError::Parse(format!("line {}: {e}", i + 1)))?;
            let defect = if cols[5].is_empty() {
                None
            } else {
                Some(
                    cols[5]
                        .parse()
                        .map_err(|e| ResonanceError::Parse(format!("line {}: {e}", i + 1)))?,
                )
            };
            out.push((q, cols[2].to_string(), k, im, defect));
        }
        Ok(out)
    }
}

pub const DEFAULT_K0: f64 = 0.5;
pub const DEFECT_FLOOR: f64 = 1e-12;
pub const DEFAULT_TOL_AXIS: f64 = 1e-6;

/// Search ceiling: bound/antibound moduli are bounded by the potential scale,
/// `k <= sqrt(max |V0|) q` up to a safety margin.
pub fn default_k_ceiling(v0: &PotentialSpec, q: f64) -> f64 {
    v0.bound().sqrt() * q * 1.1 + 5.0
}

/// Axis states of `H_{q^2 V}` for one engine, as `(bound ks, antibound ks)`.
fn axis_states_for(
    p: &PotentialSpec,
    q: f64,
    k0: f64,
    engine: Engine,
    spectral_order: usize,
) -> Result<(Vec<f64>, Vec<f64>), ResonanceError> {
    let k_lo = (0.5 * k0).max(1e-3);
    let k_hi = default_k_ceiling(&p.inner(), q).max(k_lo * 2.0);
    match engine {
        Engine::Transfer => {
            let b: Vec<f64> = transfer::find_axis_states(p, q, (k_lo, k_hi), AxisKind::Bound)
                .into_iter()
                .map(|s| s.k)
                .filter(|k| *k >= k0)
                .collect();
            let a: Vec<f64> = transfer::find_axis_states(p, q, (k_lo, k_hi), AxisKind::Antibound)
                .into_iter()
                .map(|s| s.k)
                .filter(|k| *k >= k0)
                .collect();
            Ok((b, a))
        }
        Engine::Spectral => {
            let scaled = p.scale(ScaleParams::new(q).expect("q > 0"));
            // Resolve oscillations up to sqrt(q^2 C): grow the order with q.
            let order = spectral_order.max(12 + (2.2 * q * p.bound().sqrt()).ceil() as usize);
            let mesh = spectral::Mesh::for_potential(&scaled, order);
            let set = spectral::filtered_eigenvalues(
                &scaled,
                &mesh,
                spectral::BoundaryScheme::Outgoing,
                spectral::FilterOptions::default(),
            )?;
            let mut b = Vec::new();
            let mut a = Vec::new();
            for e in &set.entries {
                let k = e.im.abs();
                if k < k0 || k > k_hi {
                    continue;
                }
                match e.class {
                    Class::Bound => b.push(k),
                    Class::Antibound => a.push(k),
                    Class::Resonance => {}
                }
            }
            b.sort_by(|x, y| x.partial_cmp(y).unwrap());
            a.sort_by(|x, y| x.partial_cmp(y).unwrap());
            Ok((b, a))
        }
    }
}

/// Sweep the coupling grid, collect bound/antibound states of `H_{q^2 V}`,
/// pair them and fit the defect decay. `barrier = (A, B, V1)` composes the
/// step barrier onto `v0` first.
pub fn q_scan(
    v0: &PotentialSpec,
    barrier: Option<(f64, f64, f64)>,
    q_grid: &[f64],
    k0: f64,
    engine: Engine,
) -> Result<SymmetryScan, ResonanceError> {
    if q_grid.len() < 2 {
        return Err(ResonanceError::InvalidConfig(
            "need at least 2 coupling values".into(),
        ));
    }
    if q_grid.windows(2).any(|w| w[1] <= w[0]) || q_grid[0] <= 0.0 {
        return Err(ResonanceError::InvalidConfig(
            "coupling grid must be positive and ascending".into(),
        ));
    }
    let p = match barrier {
        Some((a, b, v1)) => v0.add_barrier(a, b, v1)?,
        None => v0.clone(),
    };

    let entries: Vec<QScanEntry> = q_grid
        .par_iter()
        .map(|&q| -> Result<QScanEntry, ResonanceError> {
            let (bounds, antibounds) = axis_states_for(&p, q, k0, engine, 24)?;
            let pairing = pair_defects(&bounds, &antibounds, k0);
            Ok(QScanEntry {
                q,
                bounds,
                antibounds,
                pairing,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let maxes: Vec<(f64, f64)> = entries
        .iter()
        .filter_map(|e| e.max_defect().map(|d| (e.q, d)))
        .collect();
    let fit = fit_log_defects(&maxes, DEFECT_FLOOR).ok();

    // First q from which the floor-clamped max defect never increases again.
    let clamped: Vec<(f64, f64)> = maxes
        .iter()
        .map(|&(q, d)| (q, d.max(DEFECT_FLOOR)))
        .collect();
    let mut monotone_from = None;
    for start in 0..clamped.len() {
        if clamped[start..].windows(2).all(|w| w[1].1 <= w[0].1) {
            monotone_from = Some(clamped[start].0);
            break;
        }
    }

    Ok(SymmetryScan {
        k0,
        defect_floor: DEFECT_FLOOR,
        entries,
        fit,
        monotone_from,
    })
}

/// Least-squares fit `log(defect) = -c q + b` over points above `floor`.
pub fn fit_log_defects(points: &[(f64, f64)], floor: f64) -> Result<DecayFit, ResonanceError> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, d)| *d > floor)
        .map(|&(q, d)| (q, d.ln()))
        .collect();
    if usable.len() < 3 {
        return Err(ResonanceError::InsufficientData(usable.len()));
    }
    let n = usable.len() as f64;
    let sx: f64 = usable.iter().map(|p| p.0).sum();
    let sy: f64 = usable.iter().map(|p| p.1).sum();
    let sxx: f64 = usable.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = usable.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return Err(ResonanceError::InsufficientData(usable.len()));
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let mean_y = sy / n;
    let ss_tot: f64 = usable.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let ss_res: f64 = usable
        .iter()
        .map(|p| (p.1 - (slope * p.0 + intercept)).powi(2))
        .sum();
    let r2 = if ss_tot <= 1e-30 {
        0.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(DecayFit {
        c_hat: -slope,
        intercept,
        r2,
    })
}

/// Decay fit of a finished scan (per-q maximum defects above the floor).
pub fn fit_decay_rate(scan: &SymmetryScan) -> Result<(f64, f64), ResonanceError> {
    let fit = fit_log_defects(&scan.max_defects(), scan.defect_floor)?;
    Ok((fit.c_hat, fit.r2))
}
