//! Basin-of-attraction images for the fixed-point and Pseudo-Newton iterations.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::norm::{compute_norm, orbit_endpoint, Iteration, NormOptions};
use crate::poly::Polynomial;

pub const CAPTURE_RADIUS: f64 = 1e-6;
pub const DEFAULT_HALF_WIDTH: f64 = 1.5;
pub const DEFAULT_SIZE: usize = 600;
/// Iteration count at the cap darkens a pixel to this fraction of its color.
pub const MIN_SHADE: f64 = 0.4;

pub fn default_max_iter(iteration: Iteration) -> usize {
    match iteration {
        Iteration::FixedPoint => 500,
        Iteration::PseudoNewton | Iteration::BasicFamily3 => 100,
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BasinError {
    #[error("palette has {got} colors but {needed} are required")]
    PaletteTooShort { got: usize, needed: usize },
    #[error("invalid color '{0}', expected six hex digits")]
    BadColor(String),
}

/// A square-pixel window of the plane. Pixel `(col, row)` covers the cell
/// whose top-left corner is `(re0 + col*s, im0 - row*s)` with
/// `(re0, im0) = (center.re - half_width, center.im + half_width)` and is
/// sampled at the cell center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub center: Complex64,
    pub half_width: f64,
    pub width_px: usize,
    pub height_px: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self::square(DEFAULT_SIZE)
    }
}

impl GridSpec {
    /// `size × size` over `[-1.5, 1.5]²`.
    pub fn square(size: usize) -> Self {
        Self {
            center: Complex64::new(0.0, 0.0),
            half_width: DEFAULT_HALF_WIDTH,
            width_px: size,
            height_px: size,
        }
    }

    pub fn pixel_size(&self) -> f64 {
        2.0 * self.half_width / self.width_px.max(1) as f64
    }

    pub fn pixel_to_plane(&self, col: usize, row: usize) -> Complex64 {
        let s = self.pixel_size();
        Complex64::new(
            self.center.re - self.half_width + (col as f64 + 0.5) * s,
            self.center.im + self.half_width - (row as f64 + 0.5) * s,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasinImage {
    pub spec: GridSpec,
    /// Row-major from the top-left; `-1` for pixels not captured.
    pub labels: Vec<i32>,
    pub iter_counts: Vec<u32>,
    pub attractors: Vec<Complex64>,
    pub max_iter: usize,
}

impl BasinImage {
    pub fn label_at(&self, col: usize, row: usize) -> i32 {
        self.labels[row * self.spec.width_px + col]
    }

    /// Pixel counts per attractor, plus the uncaptured count.
    pub fn label_counts(&self) -> (Vec<usize>, usize) {
        let mut counts = vec![0; self.attractors.len()];
        let mut none = 0;
        for &label in &self.labels {
            match usize::try_from(label) {
                Ok(k) => counts[k] += 1,
                Err(_) => none += 1,
            }
        }
        (counts, none)
    }
}

/// Renders with attractors taken from the certified maxima of `p`.
pub fn render_basins(p: &Polynomial, iteration: Iteration, spec: GridSpec, max_iter: usize) -> BasinImage {
    let attractors = compute_norm(p, &NormOptions::default())
        .map(|report| report.candidates.iter().map(|c| c.point).collect())
        .unwrap_or_default();
    render_basins_with(p, iteration, spec, max_iter, attractors)
}

pub fn render_basins_with(
    p: &Polynomial,
    iteration: Iteration,
    spec: GridSpec,
    max_iter: usize,
    attractors: Vec<Complex64>,
) -> BasinImage {
    let width = spec.width_px;
    let rows: Vec<Vec<(i32, u32)>> = (0..spec.height_px)
        .into_par_iter()
        .map(|row| {
            (0..width)
                .map(|col| {
                    let seed = spec.pixel_to_plane(col, row);
                    let (outcome, iterations) = orbit_endpoint(p, iteration, seed, max_iter);
                    outcome
                        .attractor()
                        .and_then(|z| nearest_within(&attractors, z, CAPTURE_RADIUS))
                        .map_or((-1, max_iter as u32), |k| (k as i32, iterations as u32))
                })
                .collect()
        })
        .collect();
    let (labels, iter_counts) = rows.into_iter().flatten().unzip();
    BasinImage {
        spec,
        labels,
        iter_counts,
        attractors,
        max_iter,
    }
}

fn nearest_within(points: &[Complex64], z: Complex64, radius: f64) -> Option<usize> {
    points
        .iter()
        .enumerate()
        .map(|(k, &a)| (k, (a - z).norm()))
        .filter(|&(_, d)| d <= radius)
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(k, _)| k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl Rgb {
    pub fn parse_hex(text: &str) -> Result<Self, BasinError> {
        let hex = text.trim().trim_start_matches('#');
        let bad = || BasinError::BadColor(text.to_string());
        if hex.len() != 6 || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(bad());
        }
        let channel = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).map_err(|_| bad());
        Ok(Rgb(channel(0)?, channel(2)?, channel(4)?))
    }

    fn shaded(self, factor: f64) -> [u8; 3] {
        let s = |c: u8| (c as f64 * factor).round() as u8;
        [s(self.0), s(self.1), s(self.2)]
    }
}

pub fn parse_palette(text: &str) -> Result<Vec<Rgb>, BasinError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(Rgb::parse_hex)
        .collect()
}

/// `attractors` evenly spaced hues followed by black for uncaptured pixels.
pub fn default_palette(attractors: usize) -> Vec<Rgb> {
    let mut colors: Vec<Rgb> = (0..attractors)
        .map(|k| hsv_to_rgb(360.0 * k as f64 / attractors as f64, 0.85, 0.95))
        .collect();
    colors.push(Rgb(0, 0, 0));
    colors
}

fn hsv_to_rgb(hue: f64, saturation: f64, value: f64) -> Rgb {
    let c = value * saturation;
    let h = hue / 60.0;
    let x = c * (1.0 - (h % 2.0 - 1.0).abs());
    let (r, g, b) = match h as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = value - c;
    let to_byte = |v: f64| ((v + m) * 255.0).round() as u8;
    Rgb(to_byte(r), to_byte(g), to_byte(b))
}

/// Binary PPM (P6). Attractor `k` is `palette[k]`, darkened linearly with the
/// iteration count down to [`MIN_SHADE`] at the cap; uncaptured pixels use the
/// last palette entry.
pub fn write_ppm(image: &BasinImage, palette: &[Rgb]) -> Result<Vec<u8>, BasinError> {
    let needed = image.attractors.len() + 1;
    if palette.len() < needed {
        return Err(BasinError::PaletteTooShort {
            got: palette.len(),
            needed,
        });
    }
    let header = format!("P6\n{} {}\n255\n", image.spec.width_px, image.spec.height_px);
    let mut out = Vec::with_capacity(header.len() + 3 * image.labels.len());
    out.extend_from_slice(header.as_bytes());
    let background = palette[palette.len() - 1];
    for (&label, &iters) in image.labels.iter().zip(&image.iter_counts) {
        let rgb = match usize::try_from(label) {
            Ok(k) => {
                let frac = if image.max_iter == 0 {
                    0.0
                } else {
                    (iters as f64 / image.max_iter as f64).min(1.0)
                };
                palette[k].shaded(1.0 - (1.0 - MIN_SHADE) * frac)
            }
            Err(_) => background.shaded(1.0),
        };
        out.extend_from_slice(&rgb);
    }
    Ok(out)
}
