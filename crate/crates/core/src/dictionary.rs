//! Sparsifying dictionaries for ULA channels.
//!
//! * [`build_dmu`]: `D_mu = diag(b(mu)) · D`, where `D` is the DFT matrix with
//!   columns `a(theta_n)`, `sin(theta_n) = (2n - N - 1) / N`. Unitary for any
//!   `mu`; column `n` is the Taylor near-field steering vector at
//!   `(theta_n, r = mu cos^2 theta_n)`.
//! * [`build_dft`]: the far-field special case `mu = ∞`.
//! * [`build_polar_baseline`]: an overcomplete angle × distance-ring
//!   dictionary. This is an approximation of the usual polar-domain
//!   codebook: rings are uniform in `1/r` over a distance range, plus a
//!   far-field ring.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::geometry::{b_vector, far_steering_sin, ArrayConfig, Distance};
use crate::linalg::{dot, norm};
use crate::{CMatrix, Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DictionaryKind {
    Dmu,
    Dft,
    Polar,
}

impl DictionaryKind {
    pub fn is_unitary(self) -> bool {
        matches!(self, DictionaryKind::Dmu | DictionaryKind::Dft)
    }
}

/// Per-column parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomMeta {
    pub sin_theta: f64,
    /// Effective distance `mu` for `Dmu`/`Dft`; ring distance `r` for `Polar`.
    pub distance: Distance,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dictionary {
    matrix: CMatrix,
    kind: DictionaryKind,
    atoms: Vec<AtomMeta>,
}

/// Coefficients of a channel on a dictionary.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseRep {
    pub beta: Vec<C64>,
    pub kind: DictionaryKind,
}

impl Dictionary {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> DictionaryKind {
        self.kind
    }

    pub fn atoms(&self) -> &[AtomMeta] {
        &self.atoms
    }

    /// Effective distance of a `Dmu`/`Dft` dictionary.
    pub fn mu(&self) -> Option<Distance> {
        match self.kind {
            DictionaryKind::Polar => None,
            _ => self.atoms.first().map(|a| a.distance),
        }
    }

    pub fn n_rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n_atoms(&self) -> usize {
        self.matrix.cols()
    }

    /// `beta = D^H h`; the exact inverse of [`Dictionary::synthesize`] for
    /// unitary kinds.
    pub fn analyze(&self, h: &[C64]) -> Result<SparseRep> {
        Ok(SparseRep {
            beta: self.matrix.adjoint_mul_vec(h)?,
            kind: self.kind,
        })
    }

    /// `h = D beta`.
    pub fn synthesize(&self, beta: &[C64]) -> Result<Vec<C64>> {
        self.matrix.mul_vec(beta)
    }
}

fn grid(cfg: &ArrayConfig) -> impl Iterator<Item = f64> + '_ {
    (0..cfg.n_antennas()).map(|k| cfg.grid_sine(k))
}

/// DFT dictionary with columns `a(theta_n)`.
pub fn build_dft(cfg: &ArrayConfig) -> Dictionary {
    let n = cfg.n_antennas();
    let matrix = CMatrix::from_columns(n, grid(cfg).map(|s| far_steering_sin(cfg, s)))
        .expect("steering vectors have N entries");
    Dictionary {
        matrix,
        kind: DictionaryKind::Dft,
        atoms: grid(cfg)
            .map(|sin_theta| AtomMeta {
                sin_theta,
                distance: Distance::Infinite,
            })
            .collect(),
    }
}

/// `D_mu = diag(b(mu)) · DFT`. With `mu = ∞` the matrix is the DFT matrix.
pub fn build_dmu(cfg: &ArrayConfig, mu: Distance) -> Dictionary {
    let mut dict = build_dft(cfg);
    dict.kind = DictionaryKind::Dmu;
    if let Distance::Finite(_) = mu {
        let b = b_vector(cfg, mu);
        for j in 0..dict.matrix.cols() {
            for (v, w) in dict.matrix.col_mut(j).iter_mut().zip(&b) {
                *v *= w;
            }
        }
        for atom in &mut dict.atoms {
            atom.distance = mu;
        }
    }
    dict
}

/// Ring distances of the polar baseline, ordered far to near; the first ring
/// is always the far-field ring.
pub fn polar_rings(n_rings: usize, range: (f64, f64)) -> Result<Vec<Distance>> {
    if n_rings < 1 {
        return Err(Error::invalid("n_rings", n_rings as f64, "need at least one ring"));
    }
    let (lo, hi) = range;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::invalid("range", lo, "distance range must satisfy 0 < min < max"));
    }
    let finite = n_rings - 1;
    let (inv_far, inv_near) = (1.0 / hi, 1.0 / lo);
    let mut rings = Vec::with_capacity(n_rings);
    rings.push(Distance::Infinite);
    for i in 0..finite {
        let inv = if finite == 1 {
            inv_near
        } else {
            inv_far + (inv_near - inv_far) * i as f64 / (finite - 1) as f64
        };
        rings.push(Distance::Finite(1.0 / inv));
    }
    Ok(rings)
}

/// Angle-major polar dictionary: for each grid angle, one Taylor near-field
/// atom per ring (far-field ring first). `M = N · n_rings`.
pub fn build_polar_baseline(
    cfg: &ArrayConfig,
    n_rings: usize,
    range: (f64, f64),
) -> Result<Dictionary> {
    let rings = polar_rings(n_rings, range)?;
    let n = cfg.n_antennas();
    let mut columns = Vec::with_capacity(n * rings.len());
    let mut atoms = Vec::with_capacity(n * rings.len());
    for sin_theta in grid(cfg) {
        let far = far_steering_sin(cfg, sin_theta);
        let cos_sq = 1.0 - sin_theta * sin_theta;
        for &ring in &rings {
            // Taylor atom at range r: effective distance r / cos^2(theta).
            let mu = match ring {
                Distance::Finite(r) => Distance::new(r / cos_sq)?,
                Distance::Infinite => Distance::Infinite,
            };
            let b = b_vector(cfg, mu);
            columns.push(far.iter().zip(&b).map(|(x, y)| x * y).collect::<Vec<_>>());
            atoms.push(AtomMeta {
                sin_theta,
                distance: ring,
            });
        }
    }
    Ok(Dictionary {
        matrix: CMatrix::from_columns(n, columns)?,
        kind: DictionaryKind::Polar,
        atoms,
    })
}

/// Largest normalized inner product between two distinct columns.
pub fn mutual_coherence(matrix: &CMatrix) -> Result<f64> {
    if matrix.cols() < 2 {
        return Err(Error::invalid(
            "columns",
            matrix.cols() as f64,
            "mutual coherence needs at least two columns",
        ));
    }
    let norms: Vec<f64> = matrix.columns().map(norm).collect();
    if let Some(j) = norms.iter().position(|&v| v == 0.0) {
        return Err(Error::invalid("column", j as f64, "zero column"));
    }
    let mut best: f64 = 0.0;
    for j in 1..matrix.cols() {
        let cj = matrix.col(j);
        for i in 0..j {
            let c = dot(matrix.col(i), cj).norm() / (norms[i] * norms[j]);
            best = best.max(c);
        }
    }
    Ok(best.min(1.0))
}
