//! FFT evaluation of `D_mu^H h` for half-wavelength arrays.
//!
//! With `d = λ/2`, `D_mu[n, k] = b_n e^{jπ n (2k + 1 - N)/N} / sqrt(N)`, so
//! `D_mu^H h` is a length-`N` forward DFT of `conj(b) ∘ h` after a linear
//! phase ramp. Other spacings fall back to the dense product.

use std::sync::Arc;

use nearfield_core::dictionary::build_dmu;
use nearfield_core::geometry::{b_vector, ArrayConfig, Distance};
use nearfield_core::C64;
use rustfft::{Fft, FftPlanner};

use crate::error::Result;

pub struct DmuAnalyzer {
    cfg: ArrayConfig,
    fft: Option<Arc<dyn Fft<f64>>>,
    ramp: Vec<C64>,
}

impl DmuAnalyzer {
    pub fn new(cfg: &ArrayConfig) -> Self {
        let n = cfg.n_antennas();
        let half_wave = (2.0 * cfg.spacing() / cfg.wavelength() - 1.0).abs() < 1e-12;
        let fft = half_wave.then(|| FftPlanner::new().plan_fft_forward(n));
        let scale = 1.0 / (n as f64).sqrt();
        let ramp = (0..n)
            .map(|i| {
                let phase = -std::f64::consts::PI * i as f64 * (1.0 - n as f64) / n as f64;
                C64::from_polar(scale, phase)
            })
            .collect();
        DmuAnalyzer {
            cfg: *cfg,
            fft,
            ramp,
        }
    }

    /// `D_mu^H h`, in dictionary column order.
    pub fn analyze(&self, mu: Distance, h: &[C64]) -> Result<Vec<C64>> {
        let Some(fft) = &self.fft else {
            return Ok(build_dmu(&self.cfg, mu).analyze(h)?.beta);
        };
        let n = self.cfg.n_antennas();
        if h.len() != n {
            return Err(nearfield_core::Error::DimensionMismatch {
                what: "channel length",
                expected: n,
                found: h.len(),
            }
            .into());
        }
        let b = b_vector(&self.cfg, mu);
        let mut buf: Vec<C64> = h
            .iter()
            .zip(&b)
            .zip(&self.ramp)
            .map(|((x, w), r)| x * w.conj() * r)
            .collect();
        fft.process(&mut buf);
        Ok(buf)
    }
}
