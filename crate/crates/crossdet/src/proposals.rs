//! Candidate region generation: deterministic multi-scale sliding-window
//! grids, an optional jittered variant, and a from-file loader for externally
//! computed proposals.

use std::io::BufRead;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{iou_valid, BBox};
use crate::synthdata::DataError;
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProposalSource {
    Grid,
    Jitter,
    File,
}

impl ProposalSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProposalSource::Grid => "grid",
            ProposalSource::Jitter => "jitter",
            ProposalSource::File => "file",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProposalSet<F: Scalar> {
    pub boxes: Vec<BBox<F>>,
    pub source: ProposalSource,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    pub scales: Vec<f64>,
    pub aspect_ratios: Vec<f64>,
    pub stride_fraction: f64,
    /// Extra randomly jittered copies per grid box (the `jitter` source).
    pub jitter_copies: usize,
    pub jitter_seed: u64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            scales: vec![20.0, 26.0, 34.0, 44.0, 56.0],
            aspect_ratios: vec![0.6, 1.0, 1.4],
            stride_fraction: 0.5,
            jitter_copies: 0,
            jitter_seed: 17,
        }
    }
}

/// Deterministic multi-scale sliding-window boxes.
///
/// For each (scale s, ratio a) the window is `w = s*sqrt(a)`, `h = s/sqrt(a)`
/// placed on a grid with stride `stride_fraction * s`; windows larger than
/// the image skip that scale/ratio. Aspect ratio is width over height.
pub fn grid_proposals<F: Scalar>(image_w: usize, image_h: usize, cfg: &GridConfig) -> ProposalSet<F> {
    assert!(!cfg.scales.is_empty() && !cfg.aspect_ratios.is_empty());
    assert!(cfg.stride_fraction > 0.0 && cfg.stride_fraction <= 1.0);
    let (iw, ih) = (image_w as f64, image_h as f64);
    let mut boxes: Vec<BBox<f64>> = Vec::new();
    for &s in &cfg.scales {
        let stride = (s * cfg.stride_fraction).max(1.0);
        for &a in &cfg.aspect_ratios {
            let w = s * a.sqrt();
            let h = s / a.sqrt();
            if w > iw || h > ih {
                continue;
            }
            let nx = ((iw - w) / stride).floor() as usize + 1;
            let ny = ((ih - h) / stride).floor() as usize + 1;
            for gy in 0..ny {
                for gx in 0..nx {
                    let x1 = gx as f64 * stride;
                    let y1 = gy as f64 * stride;
                    boxes.push(BBox::of(x1, y1, x1 + w, y1 + h));
                }
            }
        }
    }

    if cfg.jitter_copies > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.jitter_seed);
        let n = boxes.len();
        for i in 0..n {
            let b = boxes[i];
            for _ in 0..cfg.jitter_copies {
                let dx = rng.gen_range(-0.15..0.15) * b.width();
                let dy = rng.gen_range(-0.15..0.15) * b.height();
                let sw = rng.gen_range(0.85..1.18);
                let sh = rng.gen_range(0.85..1.18);
                let w = b.width() * sw;
                let h = b.height() * sh;
                let cx = b.cx() + dx;
                let cy = b.cy() + dy;
                let cand = BBox {
                    x1: cx - w / 2.0,
                    y1: cy - h / 2.0,
                    x2: cx + w / 2.0,
                    y2: cy + h / 2.0,
                };
                if let Some(clipped) = cand.clip(iw, ih) {
                    boxes.push(clipped);
                }
            }
        }
    }

    let source = if cfg.jitter_copies > 0 {
        ProposalSource::Jitter
    } else {
        ProposalSource::Grid
    };
    ProposalSet {
        boxes: boxes.into_iter().map(BBox::<F>::from_f64).collect(),
        source,
    }
}

/// Fraction of ground-truth boxes covered by at least one proposal with
/// IoU >= `iou_thr`. Empty ground truth counts as fully covered.
pub fn recall_audit<F: Scalar>(proposals: &ProposalSet<F>, gt: &[BBox<F>], iou_thr: F) -> f64 {
    assert!(iou_thr > F::zero() && iou_thr < F::one());
    if gt.is_empty() {
        return 1.0;
    }
    let covered = gt
        .iter()
        .filter(|g| proposals.boxes.iter().any(|p| iou_valid(p, g) >= iou_thr))
        .count();
    covered as f64 / gt.len() as f64
}

/// Load proposals from the annotation record format
/// (`image_id class_id x1 y1 x2 y2 tier`); class id and tier are ignored.
/// Boxes are clipped to the image and degenerate leftovers dropped.
pub fn proposals_from_file<F: Scalar>(
    path: &Path,
    image_id: &str,
    image_w: usize,
    image_h: usize,
) -> Result<ProposalSet<F>, DataError> {
    let file = std::fs::File::open(path)?;
    let mut boxes = Vec::new();
    for (ln, line) in std::io::BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() < 6 {
            return Err(DataError::Parse {
                path: path.display().to_string(),
                line: ln + 1,
                msg: "expected at least 6 fields".into(),
            });
        }
        if parts[0] != image_id {
            continue;
        }
        let coords: Vec<f64> = parts[2..6]
            .iter()
            .map(|s| s.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| DataError::Parse {
                path: path.display().to_string(),
                line: ln + 1,
                msg: "bad coordinate".into(),
            })?;
        let raw = BBox {
            x1: coords[0],
            y1: coords[1],
            x2: coords[2],
            y2: coords[3],
        };
        if let Some(clipped) = raw.clip(image_w as f64, image_h as f64) {
            boxes.push(BBox::from_f64(clipped));
        }
    }
    if boxes.is_empty() {
        return Err(DataError::Config(format!(
            "no usable proposals for image {image_id} in {}",
            path.display()
        )));
    }
    Ok(ProposalSet {
        boxes,
        source: ProposalSource::File,
    })
}
