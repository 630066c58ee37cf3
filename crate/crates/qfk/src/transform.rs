//! Multilevel framelet transform on a periodic W×H grid.
//!
//! Level j works on the points of the lattice M^j Z² taken modulo the torus; one
//! step maps a level-j signal to |bank| bands on M^{j+1} Z². Analysis uses
//! v(k) = Σ_n c(n) conj(b(n − Mk)) and synthesis c(n) = |det M| Σ_ℓ Σ_k v_ℓ(k) b_ℓ(n − Mk).

use crate::construct::FilterBank;
use crate::lattice::Dilation;
use crate::scalar::C64;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Row-major samples; sample (row r, column c) sits at lattice point (c, r).
#[derive(Clone, Debug, PartialEq)]
pub struct ImageGrid {
    pub width: usize,
    pub height: usize,
    pub samples: Vec<C64>,
}

impl ImageGrid {
    pub fn new(width: usize, height: usize, samples: Vec<C64>) -> Result<Self> {
        if samples.len() != width * height {
            return Err(Error::BadDimensions(format!(
                "{} samples for a {width}x{height} grid",
                samples.len()
            )));
        }
        Ok(ImageGrid { width, height, samples })
    }

    pub fn from_real(width: usize, height: usize, samples: &[f64]) -> Result<Self> {
        Self::new(width, height, samples.iter().map(|v| C64::new(*v, 0.0)).collect())
    }

    pub fn constant(width: usize, height: usize, v: f64) -> Self {
        ImageGrid { width, height, samples: vec![C64::new(v, 0.0); width * height] }
    }

    pub fn at(&self, row: usize, col: usize) -> C64 {
        self.samples[row * self.width + col]
    }

    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn max_abs_diff(&self, other: &ImageGrid) -> f64 {
        self.samples.iter().zip(&other.samples).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.samples.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    /// Cyclic shift by `s` in lattice coordinates (column, row).
    pub fn shifted(&self, s: [i64; 2]) -> ImageGrid {
        let (w, h) = (self.width as i64, self.height as i64);
        let mut out = vec![C64::new(0.0, 0.0); self.samples.len()];
        for r in 0..h {
            for c in 0..w {
                let nc = (c + s[0]).rem_euclid(w);
                let nr = (r + s[1]).rem_euclid(h);
                out[(nr * w + nc) as usize] = self.samples[(r * w + c) as usize];
            }
        }
        ImageGrid { width: self.width, height: self.height, samples: out }
    }
}

/// Points of M^j Z² on the torus, in row-major order of the full grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelInfo {
    /// M^j, generating the lattice the level's bands live on.
    pub lattice: [[i64; 2]; 2],
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoeffPyramid {
    pub width: usize,
    pub height: usize,
    pub dilation: [[i64; 2]; 2],
    pub n_filters: usize,
    /// `levels[j][ℓ]` is band ℓ − 1 of level j + 1 for the high-pass filters ℓ ≥ 1.
    pub levels: Vec<Vec<Vec<C64>>>,
    pub info: Vec<LevelInfo>,
    /// Low-pass band at the deepest level.
    pub lowpass: Vec<C64>,
}

impl CoeffPyramid {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Stored coefficients over input samples.
    pub fn redundancy(&self) -> f64 {
        let total: usize =
            self.levels.iter().flatten().map(|b| b.len()).sum::<usize>() + self.lowpass.len();
        total as f64 / (self.width * self.height) as f64
    }

    /// Weighted energy Σ_j |det|^{j+1} Σ_ℓ ‖v_{j,ℓ}‖² + |det|^J ‖low‖².
    pub fn weighted_energy(&self) -> f64 {
        let mut e = 0.0;
        let mut w = 1.0;
        for lvl in &self.levels {
            w *= 2.0;
            e += w * lvl.iter().flatten().map(|v| v.norm_sqr()).sum::<f64>();
        }
        e + w * self.lowpass.iter().map(|v| v.norm_sqr()).sum::<f64>()
    }

    pub fn high_band_max_abs(&self) -> f64 {
        self.levels.iter().flatten().flatten().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

struct Torus {
    w: i64,
    h: i64,
}

impl Torus {
    fn lin(&self, p: [i64; 2]) -> usize {
        (p[1].rem_euclid(self.h) * self.w + p[0].rem_euclid(self.w)) as usize
    }

    /// Full-grid indices of the points of the lattice `m`.
    fn points(&self, m: &Dilation<2>) -> Vec<usize> {
        let mut out = Vec::new();
        for r in 0..self.h {
            for c in 0..self.w {
                if m.in_lattice([c, r]) {
                    out.push((r * self.w + c) as usize);
                }
            }
        }
        out
    }
}

fn check_bank(bank: &FilterBank<C64>) -> Result<()> {
    let d = bank.dilation;
    if d != Dilation::quincunx_m() && d != Dilation::quincunx_n() {
        return Err(Error::InvalidParameter("transform needs the M_√2 or N_√2 dilation".into()));
    }
    Ok(())
}

fn check_dims(width: usize, height: usize, levels: usize, d: &Dilation<2>) -> Result<()> {
    if width == 0 || height == 0 || width % 2 == 1 || height % 2 == 1 {
        return Err(Error::BadDimensions(format!("{width}x{height} must be even and positive")));
    }
    let deep = Dilation { m: d.pow(levels as u32) };
    if !deep.in_lattice([width as i64, 0]) || !deep.in_lattice([0, height as i64]) {
        let q = 1usize << levels.div_ceil(2);
        return Err(Error::BadDimensions(format!(
            "{width}x{height} is not divisible by {q} as {levels} levels require"
        )));
    }
    Ok(())
}

/// Tap offsets M^j t on the torus, with the matching coefficients.
fn offsets(bank: &FilterBank<C64>, mj: &Dilation<2>) -> Vec<Vec<([i64; 2], C64)>> {
    bank.filters()
        .iter()
        .map(|f| f.taps().map(|(t, v)| (mj.apply(t), *v)).filter(|(_, v)| *v != C64::new(0.0, 0.0)).collect())
        .collect()
}

/// One analysis step: level-j signal (full-grid layout) to bands on M^{j+1}Z².
fn analyze_step(
    torus: &Torus,
    offs: &[Vec<([i64; 2], C64)>],
    coarse: &[usize],
    signal: &[C64],
) -> Vec<Vec<C64>> {
    offs.iter()
        .map(|taps| {
            coarse
                .iter()
                .map(|&p| {
                    let base = [(p as i64) % torus.w, (p as i64) / torus.w];
                    taps.iter()
                        .map(|(o, b)| signal[torus.lin([base[0] + o[0], base[1] + o[1]])] * b.conj())
                        .sum()
                })
                .collect()
        })
        .collect()
}

fn synthesize_step(
    torus: &Torus,
    offs: &[Vec<([i64; 2], C64)>],
    coarse: &[usize],
    bands: &[&[C64]],
) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); (torus.w * torus.h) as usize];
    for (taps, band) in offs.iter().zip(bands) {
        for (&p, v) in coarse.iter().zip(band.iter()) {
            if *v == C64::new(0.0, 0.0) {
                continue;
            }
            let base = [(p as i64) % torus.w, (p as i64) / torus.w];
            for (o, b) in taps {
                out[torus.lin([base[0] + o[0], base[1] + o[1]])] += 2.0 * v * b;
            }
        }
    }
    out
}

pub fn analyze(bank: &FilterBank<C64>, img: &ImageGrid, levels: usize) -> Result<CoeffPyramid> {
    check_bank(bank)?;
    check_dims(img.width, img.height, levels, &bank.dilation)?;
    let torus = Torus { w: img.width as i64, h: img.height as i64 };
    let mut signal = img.samples.clone();
    let mut out_levels = Vec::new();
    let mut info = Vec::new();
    let mut lowpass = Vec::new();
    for j in 0..levels {
        let mj = Dilation { m: bank.dilation.pow(j as u32) };
        let next = Dilation { m: bank.dilation.pow(j as u32 + 1) };
        let coarse = torus.points(&next);
        let mut bands = analyze_step(&torus, &offsets(bank, &mj), &coarse, &signal);
        lowpass = bands.remove(0);
        signal = vec![C64::new(0.0, 0.0); img.samples.len()];
        for (&p, v) in coarse.iter().zip(&lowpass) {
            signal[p] = *v;
        }
        info.push(LevelInfo { lattice: next.m, count: coarse.len() });
        out_levels.push(bands);
    }
    if levels == 0 {
        lowpass = img.samples.clone();
    }
    Ok(CoeffPyramid {
        width: img.width,
        height: img.height,
        dilation: bank.dilation.m,
        n_filters: bank.len(),
        levels: out_levels,
        info,
        lowpass,
    })
}

pub fn synthesize(bank: &FilterBank<C64>, pyr: &CoeffPyramid) -> Result<ImageGrid> {
    check_bank(bank)?;
    if pyr.dilation != bank.dilation.m {
        return Err(Error::MetadataMismatch("dilation differs".into()));
    }
    if pyr.n_filters != bank.len() {
        return Err(Error::MetadataMismatch(format!(
            "pyramid has {} filters, bank has {}",
            pyr.n_filters,
            bank.len()
        )));
    }
    let levels = pyr.depth();
    check_dims(pyr.width, pyr.height, levels, &bank.dilation)
        .map_err(|e| Error::MetadataMismatch(e.to_string()))?;
    let torus = Torus { w: pyr.width as i64, h: pyr.height as i64 };
    if levels == 0 {
        return ImageGrid::new(pyr.width, pyr.height, pyr.lowpass.clone());
    }
    let mut low = pyr.lowpass.clone();
    for j in (0..levels).rev() {
        let mj = Dilation { m: bank.dilation.pow(j as u32) };
        let next = Dilation { m: bank.dilation.pow(j as u32 + 1) };
        let coarse = torus.points(&next);
        let highs = &pyr.levels[j];
        if low.len() != coarse.len()
            || highs.len() + 1 != bank.len()
            || highs.iter().any(|b| b.len() != coarse.len())
        {
            return Err(Error::MetadataMismatch(format!("level {} band sizes", j + 1)));
        }
        let mut bands: Vec<&[C64]> = vec![&low];
        bands.extend(highs.iter().map(|b| b.as_slice()));
        let full = synthesize_step(&torus, &offsets(bank, &mj), &coarse, &bands);
        low = if j == 0 {
            full
        } else {
            torus.points(&mj).into_iter().map(|p| full[p]).collect()
        };
    }
    ImageGrid::new(pyr.width, pyr.height, low)
}

/// Relative residual of ‖c‖² = Σ_j |det|^{j+1} Σ_ℓ ‖v_{j,ℓ}‖² + |det|^J ‖low‖².
pub fn frame_energy_check(bank: &FilterBank<C64>, img: &ImageGrid, levels: usize) -> Result<f64> {
    let pyr = analyze(bank, img, levels)?;
    let e = img.energy();
    let r = (pyr.weighted_energy() - e).abs();
    Ok(if e == 0.0 { r } else { r / e })
}
