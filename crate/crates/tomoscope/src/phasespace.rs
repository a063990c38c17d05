//! Wigner functions: forward transform from a density matrix and the
//! inverse transform back.
//!
//! Conventions (`hbar = 1`):
//!   `W(q, p) = \int rho(q + u/2, q - u/2) e^{-ipu} du`, so
//!   `\int\int W dq dp = 2 pi` and the `p`-marginal `\int W dp / 2 pi`
//!   recovers the position density `rho(q, q)`.
//!
//! The chord variable `u` is sampled at `u_k = 2 k dx`, which lands
//! `(q + u/2, q - u/2)` exactly on density-matrix lattice points: the
//! anti-diagonal sections need no interpolation at all.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Result, TomoError};
use crate::numgrid::{self, Grid1D};
use crate::states::DensityMatrix;

#[derive(Debug, Clone)]
pub struct WignerFunction {
    qgrid: Grid1D,
    pgrid: Grid1D,
    /// `w[(j, l)] = W(q_j, p_l)`
    w: Array2<f64>,
}

impl WignerFunction {
    pub fn from_values(qgrid: Grid1D, pgrid: Grid1D, w: Array2<f64>) -> Result<Self> {
        if w.dim() != (qgrid.len(), pgrid.len()) {
            return Err(TomoError::DimensionMismatch {
                expected: qgrid.len() * pgrid.len(),
                got: w.dim().0 * w.dim().1,
            });
        }
        Ok(Self { qgrid, pgrid, w })
    }

    pub fn qgrid(&self) -> Grid1D {
        self.qgrid
    }

    pub fn pgrid(&self) -> Grid1D {
        self.pgrid
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.w
    }

    /// `\int\int W dq dp` (equals `2 pi` for a unit-trace state).
    pub fn total_mass(&self) -> f64 {
        let per_q: Vec<f64> = (0..self.qgrid.len())
            .map(|j| numgrid::integrate(&self.pgrid, self.w.row(j).as_slice().unwrap()))
            .collect();
        numgrid::integrate(&self.qgrid, &per_q)
    }

    /// Checks the normalization `\int\int W = 2 pi` within `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let mass = self.total_mass() / (2.0 * std::f64::consts::PI);
        if (mass - 1.0).abs() > tol {
            return Err(TomoError::Invariant(format!(
                "Wigner normalization off by {:.3e}",
                mass - 1.0
            )));
        }
        Ok(())
    }

    /// Position density `\int W(q, p) dp / 2 pi`.
    pub fn q_marginal(&self) -> Vec<f64> {
        (0..self.qgrid.len())
            .map(|j| {
                numgrid::integrate(&self.pgrid, self.w.row(j).as_slice().unwrap())
                    / (2.0 * std::f64::consts::PI)
            })
            .collect()
    }
}

/// Forward Wigner transform.
pub fn wigner_from_density(rho: &DensityMatrix, pgrid: Grid1D) -> Result<WignerFunction> {
    let qgrid = rho.grid();
    let n = qgrid.len();
    let dx = qgrid.dx();
    let du = 2.0 * dx;
    let p_band = std::f64::consts::PI / du;
    let p_extent = pgrid.x_min().abs().max(pgrid.x_max().abs());
    if p_extent > p_band {
        return Err(TomoError::Resolution(format!(
            "momentum grid reaches {p_extent:.2}, beyond the resolvable band {p_band:.2}"
        )));
    }

    // phases e^{-i p_l u_k}, k = -(n-1)..=(n-1)
    let np = pgrid.len();
    let ps = pgrid.points();
    let phases: Vec<Vec<C64>> = (0..2 * n - 1)
        .map(|ki| {
            let u = (ki as f64 - (n - 1) as f64) * du;
            ps.iter().map(|&p| C64::from_polar(1.0, -p * u)).collect()
        })
        .collect();

    let m = rho.matrix();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let reach = j.min(n - 1 - j);
            let mut acc = vec![C64::new(0.0, 0.0); np];
            for k in 0..=2 * reach {
                let koff = k as i64 - reach as i64;
                let g = m[((j as i64 + koff) as usize, (j as i64 - koff) as usize)];
                let ph = &phases[(koff + (n - 1) as i64) as usize];
                for (a, &e) in acc.iter_mut().zip(ph) {
                    *a += g * e;
                }
            }
            acc.iter().map(|v| v.re * du).collect()
        })
        .collect();

    // imaginary residue of the chord transform must be negligible
    let mut max_re = 0.0_f64;
    let mut max_im = 0.0_f64;
    for j in 0..n {
        let reach = j.min(n - 1 - j);
        let mut acc_im = 0.0;
        for k in 0..=2 * reach {
            let koff = k as i64 - reach as i64;
            let g = m[((j as i64 + koff) as usize, (j as i64 - koff) as usize)];
            acc_im += (g - m[((j as i64 - koff) as usize, (j as i64 + koff) as usize)].conj())
                .norm();
        }
        max_im = max_im.max(acc_im);
        max_re = max_re.max(rows[j].iter().fold(0.0_f64, |a, &v| a.max(v.abs())));
    }
    if max_im * du > 1e-10 * max_re.max(1e-300) {
        return Err(TomoError::Invariant(
            "Wigner transform of a non-Hermitian matrix".into(),
        ));
    }

    let mut w = Array2::<f64>::zeros((n, np));
    for (j, row) in rows.into_iter().enumerate() {
        for (l, v) in row.into_iter().enumerate() {
            w[(j, l)] = v;
        }
    }
    WignerFunction::from_values(qgrid, pgrid, w)
}

/// Spectral half-pixel shift along `q` (axis 0): returns `W(q_j + dx/2, p_l)`.
fn half_shift_q(w: &Array2<f64>, qgrid: &Grid1D) -> Array2<f64> {
    let (n, np) = w.dim();
    let ks = numgrid::wavenumbers(n, qgrid.period());
    let h = 0.5 * qgrid.dx();
    let mut out = Array2::<f64>::zeros((n, np));
    for l in 0..np {
        let mut buf: Vec<C64> = (0..n).map(|j| C64::new(w[(j, l)], 0.0)).collect();
        numgrid::fft_forward(&mut buf);
        for (j, v) in buf.iter_mut().enumerate() {
            *v *= C64::from_polar(1.0, ks[j] * h);
        }
        numgrid::fft_inverse(&mut buf);
        for j in 0..n {
            out[(j, l)] = buf[j].re;
        }
    }
    out
}

/// Inverse Wigner transform. Returns the reconstructed density matrix and
/// the Hermiticity deviation absorbed by the symmetrization step
/// (relative to the matrix peak).
pub fn density_from_wigner(w: &WignerFunction) -> Result<(DensityMatrix, f64)> {
    w.validate(1e-2)?;
    let qgrid = w.qgrid();
    let pgrid = w.pgrid();
    let n = qgrid.len();
    let np = pgrid.len();
    let dx = qgrid.dx();
    let dp = pgrid.dx();
    let two_pi = 2.0 * std::f64::consts::PI;

    // W at the midpoint centers (q_j + q_k)/2: even sums hit grid points,
    // odd sums the spectrally shifted half-grid.
    let shifted = half_shift_q(w.values(), &qgrid);
    let center_row = |s: usize| -> ndarray::ArrayView1<'_, f64> {
        if s % 2 == 0 {
            w.values().row(s / 2)
        } else {
            shifted.row((s - 1) / 2)
        }
    };

    // phases e^{i p_l d dx}, d = j - k
    let ps = pgrid.points();
    let phases: Vec<Vec<C64>> = (0..2 * n - 1)
        .map(|di| {
            let d = (di as f64 - (n - 1) as f64) * dx;
            ps.iter().map(|&p| C64::from_polar(1.0, p * d)).collect()
        })
        .collect();

    let rows: Vec<Vec<C64>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut row = vec![C64::new(0.0, 0.0); n];
            for k in 0..n {
                let wc = center_row(j + k);
                let ph = &phases[(j as i64 - k as i64 + (n - 1) as i64) as usize];
                let mut acc = C64::new(0.0, 0.0);
                for l in 0..np {
                    acc += wc[l] * ph[l];
                }
                row[k] = acc * dp / two_pi;
            }
            row
        })
        .collect();

    let mut rho = Array2::<C64>::zeros((n, n));
    for (j, row) in rows.into_iter().enumerate() {
        for (k, v) in row.into_iter().enumerate() {
            rho[(j, k)] = v;
        }
    }

    // symmetrize and report how much that changed
    let peak = rho.iter().fold(0.0_f64, |m, v| m.max(v.norm())).max(1e-300);
    let mut dev = 0.0_f64;
    for j in 0..n {
        for k in j..n {
            let a = rho[(j, k)];
            let b = rho[(k, j)].conj();
            dev = dev.max((a - b).norm());
            let h = 0.5 * (a + b);
            rho[(j, k)] = h;
            rho[(k, j)] = h.conj();
        }
    }
    let rel_dev = dev / peak;
    if rel_dev > 1e-8 {
        return Err(TomoError::Invariant(format!(
            "inverse Wigner transform not Hermitian: deviation {rel_dev:.3e}"
        )));
    }
    Ok((DensityMatrix::from_matrix(qgrid, rho)?, rel_dev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::WaveFunction;
    use std::f64::consts::PI;

    fn grids() -> (Grid1D, Grid1D) {
        (Grid1D::default_quadrature(), Grid1D::default_quadrature())
    }

    #[test]
    fn vacuum_wigner_closed_form() {
        let (qg, pg) = grids();
        let rho = DensityMatrix::from_pure(&WaveFunction::fock(qg, 0).unwrap());
        let w = wigner_from_density(&rho, pg).unwrap();
        let mut err = 0.0_f64;
        for (j, &q) in qg.points().iter().enumerate() {
            for (l, &p) in pg.points().iter().enumerate() {
                err = err.max((w.values()[(j, l)] - 2.0 * (-q * q - p * p).exp()).abs());
            }
        }
        assert!(err < 1e-10, "err {err:.3e}");
        w.validate(1e-8).unwrap();
    }

    #[test]
    fn fock1_wigner_is_negative_at_origin() {
        let (qg, pg) = grids();
        let rho = DensityMatrix::from_pure(&WaveFunction::fock(qg, 1).unwrap());
        let w = wigner_from_density(&rho, pg).unwrap();
        let mut err = 0.0_f64;
        for (j, &q) in qg.points().iter().enumerate() {
            for (l, &p) in pg.points().iter().enumerate() {
                let r2 = q * q + p * p;
                err = err.max((w.values()[(j, l)] - 2.0 * (2.0 * r2 - 1.0) * (-r2).exp()).abs());
            }
        }
        assert!(err < 1e-9, "err {err:.3e}");
        // deepest value on the lattice (the origin itself sits mid-cell)
        let min = w.values().iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(min < -1.99 && min > -2.0 - 1e-9, "min {min}");
        w.validate(1e-8).unwrap();
    }

    #[test]
    fn coherent_wigner_is_displaced_gaussian() {
        let (qg, pg) = grids();
        let alpha = C64::new(1.0, -0.7);
        let rho = DensityMatrix::from_pure(&WaveFunction::coherent(qg, alpha).unwrap());
        let w = wigner_from_density(&rho, pg).unwrap();
        let (q0, p0) = (2.0_f64.sqrt() * alpha.re, 2.0_f64.sqrt() * alpha.im);
        let mut err = 0.0_f64;
        for (j, &q) in qg.points().iter().enumerate() {
            for (l, &p) in pg.points().iter().enumerate() {
                let exact = 2.0 * (-(q - q0).powi(2) - (p - p0).powi(2)).exp();
                err = err.max((w.values()[(j, l)] - exact).abs());
            }
        }
        assert!(err < 1e-9, "err {err:.3e}");
    }

    #[test]
    fn wigner_marginal_matches_position_density() {
        let (qg, pg) = grids();
        let rho = DensityMatrix::from_pure(&WaveFunction::fock(qg, 2).unwrap());
        let w = wigner_from_density(&rho, pg).unwrap();
        let marg = w.q_marginal();
        let mut err = 0.0_f64;
        for j in 0..qg.len() {
            err = err.max((marg[j] - rho.matrix()[(j, j)].re).abs());
        }
        assert!(err < 1e-10, "err {err:.3e}");
    }

    #[test]
    fn wigner_roundtrip_recovers_density() {
        let (qg, pg) = grids();
        let f2 = DensityMatrix::from_pure(&WaveFunction::fock(qg, 2).unwrap());
        let coh =
            DensityMatrix::from_pure(&WaveFunction::coherent(qg, C64::new(0.9, 0.4)).unwrap());
        let mixed = DensityMatrix::mix(&[(0.3, f2), (0.7, coh)]).unwrap();
        let w = wigner_from_density(&mixed, pg).unwrap();
        let (back, dev) = density_from_wigner(&w).unwrap();
        assert!(dev < 1e-10, "hermiticity deviation {dev:.3e}");
        let mut num = 0.0_f64;
        let mut den = 0.0_f64;
        for j in 0..qg.len() {
            for k in 0..qg.len() {
                num += (back.matrix()[(j, k)] - mixed.matrix()[(j, k)]).norm_sqr();
                den += mixed.matrix()[(j, k)].norm_sqr();
            }
        }
        let rel = (num / den).sqrt();
        assert!(rel < 1e-6, "relative Frobenius error {rel:.3e}");
        assert!((back.trace().re - 1.0).abs() < 1e-8);
    }

    #[test]
    fn total_mass_is_two_pi() {
        let (qg, pg) = grids();
        let rho = DensityMatrix::from_pure(&WaveFunction::coherent(qg, C64::new(0.5, 1.1)).unwrap());
        let w = wigner_from_density(&rho, pg).unwrap();
        assert!((w.total_mass() - 2.0 * PI).abs() < 1e-8);
    }

    #[test]
    fn out_of_band_momentum_grid_is_rejected() {
        let qg = Grid1D::default_quadrature();
        let pg = Grid1D::new(-80.0, 80.0, 512).unwrap();
        let rho = DensityMatrix::from_pure(&WaveFunction::fock(qg, 0).unwrap());
        assert!(matches!(
            wigner_from_density(&rho, pg),
            Err(TomoError::Resolution(_))
        ));
    }
}
