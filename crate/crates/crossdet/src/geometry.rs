//! Axis-aligned box arithmetic shared by every other module.
//!
//! Boxes are half-open continuous rectangles in pixel coordinates with the
//! image origin at the top left; area is `(x2 - x1) * (y2 - y1)` with no
//! legacy +1 pixel convention.

use crate::Scalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("degenerate box ({0}, {1}, {2}, {3}): requires x1 < x2 and y1 < y2")]
    DegenerateBox(f64, f64, f64, f64),
}

/// Axis-aligned rectangle, `x1 < x2` and `y1 < y2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox<F: Scalar> {
    pub x1: F,
    pub y1: F,
    pub x2: F,
    pub y2: F,
}

impl<F: Scalar> BBox<F> {
    /// Validating constructor; rejects zero or negative area.
    pub fn new(x1: F, y1: F, x2: F, y2: F) -> Result<Self, GeometryError> {
        if x1 < x2 && y1 < y2 {
            Ok(Self { x1, y1, x2, y2 })
        } else {
            Err(GeometryError::DegenerateBox(
                x1.to_f64(),
                y1.to_f64(),
                x2.to_f64(),
                y2.to_f64(),
            ))
        }
    }

    pub fn of(x1: f64, y1: f64, x2: f64, y2: f64) -> Self {
        Self::new(F::cast(x1), F::cast(y1), F::cast(x2), F::cast(y2))
            .expect("valid box coordinates")
    }

    pub fn is_valid(&self) -> bool {
        self.x1 < self.x2 && self.y1 < self.y2
    }

    pub fn width(&self) -> F {
        self.x2 - self.x1
    }

    pub fn height(&self) -> F {
        self.y2 - self.y1
    }

    pub fn area(&self) -> F {
        self.width() * self.height()
    }

    pub fn cx(&self) -> F {
        (self.x1 + self.x2) / F::cast(2.0)
    }

    pub fn cy(&self) -> F {
        (self.y1 + self.y2) / F::cast(2.0)
    }

    /// Clip to an image of size `w` x `h`. Returns `None` when nothing with
    /// positive area remains inside.
    pub fn clip(&self, w: F, h: F) -> Option<Self> {
        let x1 = self.x1.max(F::zero());
        let y1 = self.y1.max(F::zero());
        let x2 = self.x2.min(w);
        let y2 = self.y2.min(h);
        BBox::new(x1, y1, x2, y2).ok()
    }

    pub fn contains_point(&self, x: F, y: F) -> bool {
        self.x1 <= x && x < self.x2 && self.y1 <= y && y < self.y2
    }

    /// Shift by `(dx, dy)`.
    pub fn translate(&self, dx: F, dy: F) -> Self {
        Self {
            x1: self.x1 + dx,
            y1: self.y1 + dy,
            x2: self.x2 + dx,
            y2: self.y2 + dy,
        }
    }

    pub fn to_f64(&self) -> BBox<f64> {
        BBox {
            x1: self.x1.to_f64(),
            y1: self.y1.to_f64(),
            x2: self.x2.to_f64(),
            y2: self.y2.to_f64(),
        }
    }

    pub fn from_f64(b: BBox<f64>) -> Self {
        Self {
            x1: F::cast(b.x1),
            y1: F::cast(b.y1),
            x2: F::cast(b.x2),
            y2: F::cast(b.y2),
        }
    }
}

/// Scored, classified box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detection<F: Scalar> {
    pub bbox: BBox<F>,
    pub class_id: usize,
    pub score: F,
}

impl<F: Scalar> Detection<F> {
    pub fn new(bbox: BBox<F>, class_id: usize, score: F) -> Self {
        Self {
            bbox,
            class_id,
            score,
        }
    }
}

/// Intersection area of two boxes (zero when disjoint).
pub(crate) fn intersection<F: Scalar>(a: &BBox<F>, b: &BBox<F>) -> F {
    let iw = (a.x2.min(b.x2) - a.x1.max(b.x1)).max(F::zero());
    let ih = (a.y2.min(b.y2) - a.y1.max(b.y1)).max(F::zero());
    iw * ih
}

/// Intersection over union for validated boxes.
pub(crate) fn iou_valid<F: Scalar>(a: &BBox<F>, b: &BBox<F>) -> F {
    debug_assert!(a.is_valid() && b.is_valid());
    let inter = intersection(a, b);
    let union = a.area() + b.area() - inter;
    inter / union
}

/// Intersection over union. Symmetric, in `[0, 1]`, zero for disjoint boxes.
pub fn iou<F: Scalar>(a: &BBox<F>, b: &BBox<F>) -> Result<F, GeometryError> {
    for bb in [a, b] {
        if !bb.is_valid() {
            return Err(GeometryError::DegenerateBox(
                bb.x1.to_f64(),
                bb.y1.to_f64(),
                bb.x2.to_f64(),
                bb.y2.to_f64(),
            ));
        }
    }
    Ok(iou_valid(a, b))
}

/// Greedy class-wise non-maximum suppression.
///
/// Survivors are returned sorted by descending score; within a class no two
/// survivors overlap above `iou_threshold`. Score ties break toward the lower
/// input index so outputs are deterministic.
pub fn nms<F: Scalar>(dets: &[Detection<F>], iou_threshold: F) -> Vec<Detection<F>> {
    assert!(
        iou_threshold > F::zero() && iou_threshold < F::one(),
        "iou_threshold must lie in (0, 1)"
    );
    let mut order: Vec<usize> = (0..dets.len()).collect();
    // descending score, ties by lower index
    order.sort_by(|&i, &j| {
        dets[j]
            .score
            .partial_cmp(&dets[i].score)
            .expect("finite scores")
            .then(i.cmp(&j))
    });

    let mut keep: Vec<usize> = Vec::new();
    for &i in &order {
        let suppressed = keep.iter().any(|&k| {
            dets[k].class_id == dets[i].class_id
                && iou_valid(&dets[k].bbox, &dets[i].bbox) > iou_threshold
        });
        if !suppressed {
            keep.push(i);
        }
    }
    keep.into_iter().map(|i| dets[i]).collect()
}

/// Encode `target` relative to `proposal` as `(dx, dy, dw, dh)`:
/// center offsets normalized by the proposal size and log size ratios.
pub fn encode_delta<F: Scalar>(proposal: &BBox<F>, target: &BBox<F>) -> [F; 4] {
    let pw = proposal.width();
    let ph = proposal.height();
    [
        (target.cx() - proposal.cx()) / pw,
        (target.cy() - proposal.cy()) / ph,
        (target.width() / pw).ln(),
        (target.height() / ph).ln(),
    ]
}

/// Inverse of [`encode_delta`].
pub fn decode_delta<F: Scalar>(proposal: &BBox<F>, delta: &[F; 4]) -> BBox<F> {
    let pw = proposal.width();
    let ph = proposal.height();
    let cx = proposal.cx() + delta[0] * pw;
    let cy = proposal.cy() + delta[1] * ph;
    let w = delta[2].exp() * pw;
    let h = delta[3].exp() * ph;
    let half = F::cast(0.5);
    BBox {
        x1: cx - w * half,
        y1: cy - h * half,
        x2: cx + w * half,
        y2: cy + h * half,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn b(x1: f64, y1: f64, x2: f64, y2: f64) -> BBox<f64> {
        BBox::of(x1, y1, x2, y2)
    }

    #[test]
    fn iou_identity() {
        let a = b(0.0, 0.0, 10.0, 10.0);
        assert_eq!(iou(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn iou_disjoint() {
        let a = b(0.0, 0.0, 10.0, 10.0);
        let c = b(20.0, 20.0, 30.0, 30.0);
        assert_eq!(iou(&a, &c).unwrap(), 0.0);
    }

    #[test]
    fn iou_partial_overlap() {
        // intersection 5x5 = 25, union 100 + 100 - 25 = 175
        let a = b(0.0, 0.0, 10.0, 10.0);
        let c = b(5.0, 5.0, 15.0, 15.0);
        let expect = 25.0 / 175.0;
        assert!((iou(&a, &c).unwrap() - expect).abs() < 1e-12);
        assert_eq!(iou(&a, &c).unwrap(), iou(&c, &a).unwrap());
    }

    #[test]
    fn iou_rejects_degenerate() {
        let good = b(0.0, 0.0, 1.0, 1.0);
        let bad = BBox {
            x1: 0.0,
            y1: 0.0,
            x2: 0.0,
            y2: 1.0,
        };
        assert!(iou(&good, &bad).is_err());
        assert!(BBox::<f64>::new(0.0, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn nms_single_detection_passes_through() {
        let d = Detection::new(b(0.0, 0.0, 4.0, 4.0), 0, 0.7);
        assert_eq!(nms(&[d], 0.5), vec![d]);
    }

    #[test]
    fn nms_identical_boxes_keep_higher_score() {
        let hi = Detection::new(b(0.0, 0.0, 10.0, 10.0), 1, 0.9);
        let lo = Detection::new(b(0.0, 0.0, 10.0, 10.0), 1, 0.8);
        assert_eq!(nms(&[lo, hi], 0.5), vec![hi]);
    }

    #[test]
    fn nms_is_class_wise() {
        let a = Detection::new(b(0.0, 0.0, 10.0, 10.0), 0, 0.9);
        let c = Detection::new(b(0.0, 0.0, 10.0, 10.0), 1, 0.8);
        assert_eq!(nms(&[a, c], 0.5), vec![a, c]);
    }

    #[test]
    fn nms_empty_input() {
        assert_eq!(nms::<f64>(&[], 0.5), vec![]);
    }

    fn random_dets(rng: &mut ChaCha8Rng, n: usize) -> Vec<Detection<f64>> {
        (0..n)
            .map(|_| {
                let x1 = rng.gen_range(0.0..20.0);
                let y1 = rng.gen_range(0.0..20.0);
                let w = rng.gen_range(1.0..15.0);
                let h = rng.gen_range(1.0..15.0);
                Detection::new(
                    b(x1, y1, x1 + w, y1 + h),
                    rng.gen_range(0..2),
                    rng.gen_range(0.0..1.0),
                )
            })
            .collect()
    }

    /// Oracle: re-verify the greedy suppression definition pairwise.
    fn check_nms_against_definition(dets: &[Detection<f64>], thr: f64) {
        let out = nms(dets, thr);
        // survivors are a subset with non-increasing scores
        for w in out.windows(2) {
            assert!(w[0].score >= w[1].score);
        }
        for d in &out {
            assert!(dets.iter().any(|x| x == d));
        }
        // no surviving same-class pair overlaps above threshold
        for i in 0..out.len() {
            for j in (i + 1)..out.len() {
                if out[i].class_id == out[j].class_id {
                    assert!(iou(&out[i].bbox, &out[j].bbox).unwrap() <= thr);
                }
            }
        }
        // every suppressed det overlaps some higher-scored survivor
        for (idx, d) in dets.iter().enumerate() {
            if out.contains(d) {
                continue;
            }
            let dominated = out.iter().any(|k| {
                k.class_id == d.class_id
                    && iou(&k.bbox, &d.bbox).unwrap() > thr
                    && (k.score > d.score
                        || (k.score == d.score
                            && dets.iter().position(|x| x == k).unwrap() < idx))
            });
            assert!(dominated, "suppressed det {idx} has no dominating survivor");
        }
    }

    #[test]
    fn nms_matches_pairwise_oracle_on_random_boxes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let dets = random_dets(&mut rng, 5);
            check_nms_against_definition(&dets, 0.5);
        }
    }

    #[test]
    fn nms_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let dets = random_dets(&mut rng, 8);
            let once = nms(&dets, 0.4);
            let twice = nms(&once, 0.4);
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn delta_identity() {
        let p = b(2.0, 3.0, 10.0, 9.0);
        assert_eq!(encode_delta(&p, &p), [0.0; 4]);
    }

    #[test]
    fn delta_hand_case() {
        // doubling the width: dw = ln 2, center moves by half the proposal width
        let p = b(0.0, 0.0, 10.0, 10.0);
        let t = b(0.0, 0.0, 20.0, 10.0);
        let d = encode_delta(&p, &t);
        assert!((d[0] - 0.5).abs() < 1e-12);
        assert_eq!(d[1], 0.0);
        assert!((d[2] - 2.0f64.ln()).abs() < 1e-12);
        assert_eq!(d[3], 0.0);
    }

    #[test]
    fn delta_round_trip_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut max_err: f64 = 0.0;
        for _ in 0..100 {
            let p = random_dets(&mut rng, 1)[0].bbox;
            let t = random_dets(&mut rng, 1)[0].bbox;
            let back = decode_delta(&p, &encode_delta(&p, &t));
            for (a, b) in [
                (back.x1, t.x1),
                (back.y1, t.y1),
                (back.x2, t.x2),
                (back.y2, t.y2),
            ] {
                max_err = max_err.max((a - b).abs());
            }
        }
        assert!(max_err < 1e-5, "round-trip error {max_err}");
    }

    proptest! {
        #[test]
        fn iou_symmetric_and_bounded(
            ax in 0.0..50.0f64, ay in 0.0..50.0f64, aw in 0.5..30.0f64, ah in 0.5..30.0f64,
            bx in 0.0..50.0f64, by in 0.0..50.0f64, bw in 0.5..30.0f64, bh in 0.5..30.0f64,
        ) {
            let a = b(ax, ay, ax + aw, ay + ah);
            let c = b(bx, by, bx + bw, by + bh);
            let ab = iou(&a, &c).unwrap();
            let ba = iou(&c, &a).unwrap();
            prop_assert!((ab - ba).abs() < 1e-12);
            prop_assert!((0.0..=1.0).contains(&ab));
            // equals 1 iff identical
            if ab == 1.0 {
                prop_assert_eq!(a, c);
            }
        }

        #[test]
        fn clip_respects_bounds(
            x1 in -30.0..120.0f64, y1 in -30.0..120.0f64,
            w in 0.5..80.0f64, h in 0.5..80.0f64,
        ) {
            let bx = b(x1, y1, x1 + w, y1 + h);
            if let Some(c) = bx.clip(96.0, 96.0) {
                prop_assert!(c.x1 >= 0.0 && c.y1 >= 0.0);
                prop_assert!(c.x2 <= 96.0 && c.y2 <= 96.0);
                prop_assert!(c.is_valid());
            }
        }
    }

    #[test]
    fn nms_tie_break_prefers_lower_index() {
        let a = Detection::new(b(0.0, 0.0, 10.0, 10.0), 0, 0.5);
        let c = Detection::new(b(1.0, 1.0, 11.0, 11.0), 0, 0.5);
        let out = nms(&[a, c], 0.3);
        assert_eq!(out, vec![a]);
    }
}
