use serde::Serialize;

use super::resolvent::eval_representation;
use super::spec::RepresentationSpec;
use crate::error::{Error, Result};
use crate::matcore::{c64, hermitian_eigen, imag_part, CMat, MatrixTuple, Sampler, C64};

/// Largest grid point by default, `2^20`.
pub const DEFAULT_SMAX: f64 = 1_048_576.0;

/// Relative agreement of the last three grid values that counts as converged.
const AGREEMENT: f64 = 1e-3;
/// Magnitude below which a sequence counts as zero.
const ZERO: f64 = 1e-9;
/// Successive ratios at most this small count as geometric decay.
const DECAY_RATIO: f64 = 0.75;
/// A geometrically decaying sequence must also have fallen this far below its
/// peak before it counts as tending to zero.
const DECAY_FLOOR: f64 = 1e-3;

#[derive(Debug, Clone, Serialize)]
pub struct ProbeSequence {
    pub values: Vec<f64>,
    /// Value at the largest grid point.
    pub limit: f64,
    pub converged: bool,
    /// Converged to zero, either below the absolute floor or by geometric
    /// decay.
    pub tends_to_zero: bool,
}

impl ProbeSequence {
    fn from_values(values: Vec<f64>) -> Self {
        let tail = &values[values.len().saturating_sub(3)..];
        let all_small = tail.iter().all(|v| v.abs() < ZERO);
        let hi = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = tail.iter().cloned().fold(f64::INFINITY, f64::min);
        let scale = tail.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let agree = tail.len() == 3 && tail.iter().all(|v| v.is_finite()) && hi - lo <= AGREEMENT * scale;
        let peak = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let decaying = tail.len() == 3
            && tail.windows(2).all(|w| w[1].abs() <= DECAY_RATIO * w[0].abs())
            && tail[2].abs() <= DECAY_FLOOR * peak;
        let tends_to_zero = all_small || decaying;
        let limit = if tends_to_zero { 0.0 } else { *values.last().unwrap_or(&f64::NAN) };
        ProbeSequence {
            limit,
            converged: agree || tends_to_zero,
            tends_to_zero,
            values,
        }
    }
}

/// Samples of `h(isχ)` on the geometric grid `s = 2^j`.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticProbe {
    pub s: Vec<f64>,
    pub h: Vec<[f64; 2]>,
    /// `(1/s)·Im h(isχ)`.
    pub inv_s_im: ProbeSequence,
    /// `s·Im h(isχ)`.
    pub s_im: ProbeSequence,
    /// `s·|h(isχ)|`.
    pub s_abs: ProbeSequence,
}

/// Evaluates a scalar-level free function along `is·χ` for `s = 1, 2, 4, …,
/// ≤ smax`. `direction` replaces the all-ones `χ` when given; its entries
/// must be positive.
pub fn asymptotic_probe<F>(h: F, d: usize, smax: f64, direction: Option<&[f64]>) -> Result<AsymptoticProbe>
where
    F: Fn(&MatrixTuple) -> Result<CMat>,
{
    let chi: Vec<f64> = match direction {
        Some(dir) => {
            if dir.len() != d || dir.iter().any(|&c| !(c > 0.0)) {
                return Err(Error::DimensionMismatch(format!("direction must have {d} positive entries")));
            }
            dir.to_vec()
        }
        None => vec![1.0; d],
    };
    if !(smax >= 1.0) {
        return Err(Error::DimensionMismatch("smax must be at least 1".into()));
    }
    let mut s_grid = Vec::new();
    let mut s = 1.0f64;
    while s <= smax {
        s_grid.push(s);
        s *= 2.0;
    }
    let mut hs = Vec::with_capacity(s_grid.len());
    for &s in &s_grid {
        let z: Vec<C64> = chi.iter().map(|&c| c64(0.0, s * c)).collect();
        let out = h(&MatrixTuple::scalars(&z))?;
        if out.nrows() != 1 || out.ncols() != 1 {
            return Err(Error::Evaluation(format!("scalar-level output is {}x{}", out.nrows(), out.ncols())));
        }
        hs.push(out[(0, 0)]);
    }
    let seq = |f: &dyn Fn(f64, C64) -> f64| ProbeSequence::from_values(s_grid.iter().zip(&hs).map(|(&s, &h)| f(s, h)).collect());
    Ok(AsymptoticProbe {
        inv_s_im: seq(&|s, h| h.im / s),
        s_im: seq(&|s, h| s * h.im),
        s_abs: seq(&|s, h| s * h.norm()),
        h: hs.iter().map(|z| [z.re, z.im]).collect(),
        s: s_grid,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Limits {
    pub inv_s_im: f64,
    pub s_im: f64,
    pub s_abs: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    #[serde(rename = "type")]
    pub kind: u8,
    /// The probe did not settle, so the reported type is only the fallback.
    pub inconclusive: bool,
    pub limits: Limits,
    pub converged: [bool; 3],
}

/// Strongest representation type whose asymptotic criterion holds:
/// bounded `s|h|` gives 1, bounded `s·Im h` gives 2, `(1/s)·Im h → 0` gives
/// 3, and every free Pick function has type 4.
pub fn classify_type(probe: &AsymptoticProbe) -> Classification {
    let kind = if probe.s_abs.converged {
        1
    } else if probe.s_im.converged {
        2
    } else if probe.inv_s_im.tends_to_zero {
        3
    } else {
        4
    };
    Classification {
        kind,
        inconclusive: kind == 4 && !probe.inv_s_im.converged,
        limits: Limits {
            inv_s_im: probe.inv_s_im.limit,
            s_im: probe.s_im.limit,
            s_abs: probe.s_abs.limit,
        },
        converged: [probe.inv_s_im.converged, probe.s_im.converged, probe.s_abs.converged],
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PickReport {
    pub samples: usize,
    /// Smallest eigenvalue of `Im h(Z)` over all samples.
    pub min_im_eig: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Samples `Π^d` points at levels 1, 2, 3 in turn and records the smallest
/// eigenvalue of `Im h(Z)`; passes when it is at least `−tol`.
pub fn pick_positivity_check(spec: &RepresentationSpec, samples: usize, seed: u64, tol: f64) -> Result<PickReport> {
    let mut s = Sampler::new(seed);
    let mut min = f64::INFINITY;
    for i in 0..samples {
        let z = s.pi_point(1 + i % 3, spec.d());
        let h = eval_representation(spec, &z)?;
        min = min.min(hermitian_eigen(&imag_part(&h)?)?.min());
    }
    Ok(PickReport {
        samples,
        min_im_eig: min,
        tol,
        pass: min >= -tol,
    })
}
