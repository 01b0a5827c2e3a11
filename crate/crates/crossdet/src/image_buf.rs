//! Small owned RGB raster with lossless PNG round-tripping and the couple of
//! drawing primitives the synthetic scene generator and the visualizer need.

use std::path::Path;

use crate::geometry::BBox;
use crate::Scalar;

/// H x W x 3 image, row-major, 8-bit channels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageBuf {
    pub h: usize,
    pub w: usize,
    data: Vec<u8>,
}

impl ImageBuf {
    pub fn new(h: usize, w: usize) -> Self {
        Self {
            h,
            w,
            data: vec![0; h * w * 3],
        }
    }

    pub fn filled(h: usize, w: usize, rgb: [u8; 3]) -> Self {
        let mut img = Self::new(h, w);
        for y in 0..h {
            for x in 0..w {
                img.put(x, y, rgb);
            }
        }
        img
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> [u8; 3] {
        let i = (y * self.w + x) * 3;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    #[inline]
    pub fn put(&mut self, x: usize, y: usize, rgb: [u8; 3]) {
        let i = (y * self.w + x) * 3;
        self.data[i..i + 3].copy_from_slice(&rgb);
    }

    pub fn put_clipped(&mut self, x: i64, y: i64, rgb: [u8; 3]) {
        if x >= 0 && y >= 0 && (x as usize) < self.w && (y as usize) < self.h {
            self.put(x as usize, y as usize, rgb);
        }
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    /// Channel value as a float in [0, 1], channel-first indexing.
    pub fn pixel_norm<F: Scalar>(&self, c: usize, y: usize, x: usize) -> F {
        F::cast(self.data[(y * self.w + x) * 3 + c] as f64 / 255.0)
    }

    /// One-pixel-wide rectangle outline, clipped to the image.
    pub fn draw_rect<F: Scalar>(&mut self, bbox: &BBox<F>, rgb: [u8; 3]) {
        let x1 = bbox.x1.to_f64().round() as i64;
        let y1 = bbox.y1.to_f64().round() as i64;
        let x2 = (bbox.x2.to_f64().round() as i64 - 1).max(x1);
        let y2 = (bbox.y2.to_f64().round() as i64 - 1).max(y1);
        for x in x1..=x2 {
            self.put_clipped(x, y1, rgb);
            self.put_clipped(x, y2, rgb);
        }
        for y in y1..=y2 {
            self.put_clipped(x1, y, rgb);
            self.put_clipped(x2, y, rgb);
        }
    }

    pub fn save_png(&self, path: &Path) -> std::io::Result<()> {
        let img = image::RgbImage::from_raw(self.w as u32, self.h as u32, self.data.clone())
            .expect("buffer size matches dimensions");
        img.save_with_format(path, image::ImageFormat::Png)
            .map_err(|e| std::io::Error::other(format!("png encode {}: {e}", path.display())))
    }

    pub fn load_png(path: &Path) -> std::io::Result<Self> {
        let img = image::open(path)
            .map_err(|e| std::io::Error::other(format!("png decode {}: {e}", path.display())))?
            .into_rgb8();
        let (w, h) = (img.width() as usize, img.height() as usize);
        Ok(Self {
            h,
            w,
            data: img.into_raw(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn png_round_trip_is_lossless() {
        let mut img = ImageBuf::filled(20, 24, [10, 20, 30]);
        img.put(3, 4, [200, 100, 50]);
        img.draw_rect(&BBox::<f64>::of(2.0, 2.0, 10.0, 8.0), [255, 0, 0]);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("img.png");
        img.save_png(&path).unwrap();
        let back = ImageBuf::load_png(&path).unwrap();
        assert_eq!(img, back);
    }
}
