//! Reference states: Fock and coherent wavefunctions on a grid, density
//! matrices built from them, and coordinate-representation expectation
//! values `Tr(A rho)` used as an independent check on every tomographic
//! route.
//!
//! Conventions: `hbar = m = omega = 1` unless a [`ModeParams`] says
//! otherwise, and `<q> + i<p> = sqrt(2) alpha` for coherent states.

use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Result, TomoError};
use crate::numgrid::{self, Grid1D};

/// Single-mode scale parameters. Only the combination
/// `gamma = m * omega / hbar` enters the quadrature kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeParams {
    pub hbar: f64,
    pub mass: f64,
    pub omega: f64,
}

impl Default for ModeParams {
    fn default() -> Self {
        Self { hbar: 1.0, mass: 1.0, omega: 1.0 }
    }
}

impl ModeParams {
    pub fn new(hbar: f64, mass: f64, omega: f64) -> Result<Self> {
        if hbar <= 0.0 || mass <= 0.0 || omega <= 0.0 {
            return Err(TomoError::InvalidArgument(
                "mode parameters must be positive".into(),
            ));
        }
        Ok(Self { hbar, mass, omega })
    }

    pub fn gamma(&self) -> f64 {
        self.mass * self.omega / self.hbar
    }
}

/// Orthonormal oscillator eigenfunctions `h_0..h_nmax` sampled on the grid,
/// by the stable three-term recurrence; row `n` holds `h_n`.
/// `gamma` rescales the length: `h~_n(x) = gamma^(1/4) h_n(sqrt(gamma) x)`.
pub fn hermite_functions(grid: &Grid1D, nmax: usize, gamma: f64) -> Array2<f64> {
    let n = grid.len();
    let mut h = Array2::<f64>::zeros((nmax + 1, n));
    let root = gamma.sqrt();
    for (j, &x) in grid.points().iter().enumerate() {
        let xi = root * x;
        h[(0, j)] = gamma.powf(0.25) * PI.powf(-0.25) * (-0.5 * xi * xi).exp();
        if nmax >= 1 {
            h[(1, j)] = 2.0_f64.sqrt() * xi * h[(0, j)];
        }
        for m in 2..=nmax {
            h[(m, j)] = (2.0 / m as f64).sqrt() * xi * h[(m - 1, j)]
                - ((m - 1) as f64 / m as f64).sqrt() * h[(m - 2, j)];
        }
    }
    h
}

/// Normalized single-mode wavefunction on a grid.
#[derive(Debug, Clone)]
pub struct WaveFunction {
    grid: Grid1D,
    psi: Vec<C64>,
}

impl WaveFunction {
    /// Wraps raw samples: checks the grid resolves the state (edge values
    /// below `1e-6` of the peak) and normalizes to unit quadrature norm.
    pub fn from_samples(grid: Grid1D, psi: Vec<C64>) -> Result<Self> {
        if psi.len() != grid.len() {
            return Err(TomoError::DimensionMismatch { expected: grid.len(), got: psi.len() });
        }
        let peak = psi.iter().fold(0.0_f64, |m, v| m.max(v.norm()));
        if peak == 0.0 {
            return Err(TomoError::InvalidArgument("zero wavefunction".into()));
        }
        let edge = psi[0].norm().max(psi[psi.len() - 1].norm());
        if edge > 1e-6 * peak {
            return Err(TomoError::Resolution(format!(
                "state does not fit the window: edge amplitude {:.2e} of peak",
                edge / peak
            )));
        }
        let abs2: Vec<f64> = psi.iter().map(|v| v.norm_sqr()).collect();
        let norm = numgrid::integrate(&grid, &abs2).sqrt();
        let psi = psi.into_iter().map(|v| v / norm).collect();
        Ok(Self { grid, psi })
    }

    /// `n`-th Fock state.
    pub fn fock(grid: Grid1D, n: usize) -> Result<Self> {
        let h = hermite_functions(&grid, n, 1.0);
        let psi: Vec<C64> = h.row(n).iter().map(|&v| C64::new(v, 0.0)).collect();
        Self::from_samples(grid, psi)
    }

    /// Coherent state `|alpha>` with `<q> + i<p> = sqrt(2) alpha`.
    pub fn coherent(grid: Grid1D, alpha: C64) -> Result<Self> {
        let (re, im) = (alpha.re, alpha.im);
        let q0 = 2.0_f64.sqrt() * re;
        let psi: Vec<C64> = grid
            .points()
            .iter()
            .map(|&q| {
                let phase = 2.0_f64.sqrt() * im * q - re * im;
                let amp = PI.powf(-0.25) * (-0.5 * (q - q0) * (q - q0)).exp();
                C64::from_polar(amp, phase)
            })
            .collect();
        Self::from_samples(grid, psi)
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn samples(&self) -> &[C64] {
        &self.psi
    }
}

/// Density matrix `rho(q, q')` sampled on `grid x grid`.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    grid: Grid1D,
    rho: Array2<C64>,
}

impl DensityMatrix {
    pub fn from_pure(psi: &WaveFunction) -> Self {
        let n = psi.grid.len();
        let mut rho = Array2::<C64>::zeros((n, n));
        for j in 0..n {
            for k in 0..n {
                rho[(j, k)] = psi.psi[j] * psi.psi[k].conj();
            }
        }
        Self { grid: psi.grid, rho }
    }

    /// Convex mixture. Weights must be nonnegative and sum to one.
    pub fn mix(parts: &[(f64, DensityMatrix)]) -> Result<Self> {
        if parts.is_empty() {
            return Err(TomoError::InvalidArgument("empty mixture".into()));
        }
        let grid = parts[0].1.grid;
        let wsum: f64 = parts.iter().map(|(w, _)| w).sum();
        if parts.iter().any(|(w, _)| *w < 0.0) || (wsum - 1.0).abs() > 1e-12 {
            return Err(TomoError::InvalidArgument(format!(
                "mixture weights must be nonnegative and sum to 1 (sum = {wsum})"
            )));
        }
        let n = grid.len();
        let mut rho = Array2::<C64>::zeros((n, n));
        for (w, part) in parts {
            if part.grid != grid {
                return Err(TomoError::GridMismatch);
            }
            rho.scaled_add(C64::new(*w, 0.0), &part.rho);
        }
        Ok(Self { grid, rho })
    }

    pub fn from_matrix(grid: Grid1D, rho: Array2<C64>) -> Result<Self> {
        if rho.dim() != (grid.len(), grid.len()) {
            return Err(TomoError::DimensionMismatch { expected: grid.len(), got: rho.dim().0 });
        }
        Ok(Self { grid, rho })
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.rho
    }

    /// `Tr rho` by trapezoid over the diagonal.
    pub fn trace(&self) -> C64 {
        let diag: Vec<C64> = (0..self.grid.len()).map(|j| self.rho[(j, j)]).collect();
        numgrid::integrate_c(&self.grid, &diag)
    }

    /// `Tr rho^2` (1 for pure states).
    pub fn purity(&self) -> f64 {
        let dx = self.grid.dx();
        self.rho.iter().map(|v| v.norm_sqr()).sum::<f64>() * dx * dx
    }

    /// Largest Hermiticity deviation `max |rho - rho^H|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.grid.len();
        let mut dev = 0.0_f64;
        for j in 0..n {
            for k in j..n {
                dev = dev.max((self.rho[(j, k)] - self.rho[(k, j)].conj()).norm());
            }
        }
        dev
    }

    /// Eigenvalues of the trace-normalized discretization `rho * dx`,
    /// descending. Sum equals the trace up to quadrature edge weights.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let n = self.grid.len();
        let dx = self.grid.dx();
        let m = nalgebra::DMatrix::<C64>::from_fn(n, n, |j, k| self.rho[(j, k)] * dx);
        let sym = nalgebra::SymmetricEigen::new(m);
        let mut ev: Vec<f64> = sym.eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
        ev
    }

    /// Checks Hermiticity, unit trace and positive semi-definiteness.
    pub fn validate(&self) -> Result<()> {
        let dev = self.hermiticity_deviation();
        if dev > 1e-10 {
            return Err(TomoError::Invariant(format!(
                "density matrix not Hermitian: deviation {dev:.3e}"
            )));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-12 {
            return Err(TomoError::Invariant(format!("trace {tr} != 1")));
        }
        let min_ev = self.eigenvalues().last().copied().unwrap_or(0.0);
        if min_ev < -1e-8 {
            return Err(TomoError::Invariant(format!(
                "density matrix not positive: min eigenvalue {min_ev:.3e}"
            )));
        }
        Ok(())
    }

    /// Overlap `<psi| rho |psi>`.
    pub fn fidelity_with_pure(&self, psi: &WaveFunction) -> f64 {
        let n = self.grid.len();
        let dx = self.grid.dx();
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..n {
            for k in 0..n {
                acc += psi.psi[j].conj() * self.rho[(j, k)] * psi.psi[k];
            }
        }
        (acc * dx * dx).re
    }
}

/// Observables with a coordinate-representation matrix route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    One,
    Q,
    P,
    Q2,
    P2,
    QP,
    N,
    A,
    Adag,
}

impl Observable {
    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "one" | "1" => Self::One,
            "q" => Self::Q,
            "p" => Self::P,
            "q2" | "qq" => Self::Q2,
            "p2" | "pp" => Self::P2,
            "qp" => Self::QP,
            "N" | "n" => Self::N,
            "a" => Self::A,
            "adag" | "a+" => Self::Adag,
            other => return Err(TomoError::UnknownName(other.into())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::One => "one",
            Self::Q => "q",
            Self::P => "p",
            Self::Q2 => "q2",
            Self::P2 => "p2",
            Self::QP => "qp",
            Self::N => "N",
            Self::A => "a",
            Self::Adag => "adag",
        }
    }
}

/// Applies the coordinate-space operator to the first argument of
/// `rho(q, q')`: multiplications are diagonal, `p = -i d/dq` is spectral.
pub fn apply_left(obs: Observable, rho: &DensityMatrix) -> Array2<C64> {
    let grid = rho.grid;
    let n = grid.len();
    let xs = grid.points();
    let mul_x = |m: &Array2<C64>| {
        let mut out = m.clone();
        for j in 0..n {
            for k in 0..n {
                out[(j, k)] *= xs[j];
            }
        }
        out
    };
    let d_q = |m: &Array2<C64>, order: u32| {
        let mut out = Array2::<C64>::zeros((n, n));
        for k in 0..n {
            let col: Vec<C64> = (0..n).map(|j| m[(j, k)]).collect();
            let d = numgrid::deriv_x_c(&grid, &col, order);
            for j in 0..n {
                out[(j, k)] = d[j];
            }
        }
        out
    };
    let i = C64::new(0.0, 1.0);
    match obs {
        Observable::One => rho.rho.clone(),
        Observable::Q => mul_x(&rho.rho),
        Observable::P => d_q(&rho.rho, 1).mapv(|v| -i * v),
        Observable::Q2 => mul_x(&mul_x(&rho.rho)),
        Observable::P2 => d_q(&rho.rho, 2).mapv(|v| -v),
        Observable::QP => mul_x(&d_q(&rho.rho, 1)).mapv(|v| -i * v),
        Observable::N => {
            // N = (q^2 + p^2 - 1) / 2
            let mut out = mul_x(&mul_x(&rho.rho));
            out -= &d_q(&rho.rho, 2);
            out -= &rho.rho;
            out.mapv(|v| 0.5 * v)
        }
        Observable::A => {
            // a = (q + ip) / sqrt(2), and ip = d/dq
            let mut out = mul_x(&rho.rho);
            out += &d_q(&rho.rho, 1);
            out.mapv(|v| v / 2.0_f64.sqrt())
        }
        Observable::Adag => {
            let mut out = mul_x(&rho.rho);
            out -= &d_q(&rho.rho, 1);
            out.mapv(|v| v / 2.0_f64.sqrt())
        }
    }
}

/// Matrix-route expectation `Tr(A rho)`.
pub fn matrix_expectation(obs: Observable, rho: &DensityMatrix) -> C64 {
    let m = apply_left(obs, rho);
    let diag: Vec<C64> = (0..rho.grid.len()).map(|j| m[(j, j)]).collect();
    numgrid::integrate_c(&rho.grid, &diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid1D {
        Grid1D::default_quadrature()
    }

    #[test]
    fn vacuum_matches_closed_form() {
        let g = grid();
        let f = WaveFunction::fock(g, 0).unwrap();
        let mut err = 0.0_f64;
        for (j, &x) in g.points().iter().enumerate() {
            let exact = PI.powf(-0.25) * (-0.5 * x * x).exp();
            err = err.max((f.psi[j] - exact).norm());
        }
        assert!(err < 1e-12, "err {err:.3e}");
    }

    #[test]
    fn fock_states_are_orthonormal() {
        let g = grid();
        for n in 0..6 {
            for m in n..6 {
                let a = WaveFunction::fock(g, n).unwrap();
                let b = WaveFunction::fock(g, m).unwrap();
                let prod: Vec<C64> = a
                    .psi
                    .iter()
                    .zip(&b.psi)
                    .map(|(u, v)| u.conj() * v)
                    .collect();
                let ip = numgrid::integrate_c(&g, &prod);
                let want = if n == m { 1.0 } else { 0.0 };
                assert!((ip.re - want).abs() < 1e-10 && ip.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn unresolvable_fock_state_is_rejected() {
        assert!(matches!(
            WaveFunction::fock(grid(), 60),
            Err(TomoError::Resolution(_))
        ));
    }

    #[test]
    fn displaced_coherent_state_is_rejected() {
        assert!(matches!(
            WaveFunction::coherent(grid(), C64::new(6.0, 0.0)),
            Err(TomoError::Resolution(_))
        ));
    }

    #[test]
    fn coherent_first_moments() {
        let g = grid();
        let alpha = C64::new(0.8, -0.6);
        let psi = WaveFunction::coherent(g, alpha).unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        let q = matrix_expectation(Observable::Q, &rho);
        let p = matrix_expectation(Observable::P, &rho);
        assert!((q.re - 2.0_f64.sqrt() * alpha.re).abs() < 1e-10);
        assert!((p.re - 2.0_f64.sqrt() * alpha.im).abs() < 1e-10);
        assert!(q.im.abs() < 1e-10 && p.im.abs() < 1e-10);
        let a = matrix_expectation(Observable::A, &rho);
        assert!((a - alpha).norm() < 1e-10);
        let nn = matrix_expectation(Observable::N, &rho);
        assert!((nn.re - alpha.norm_sqr()).abs() < 1e-9);
    }

    #[test]
    fn fock_matrix_expectations() {
        let g = grid();
        for n in 0..4 {
            let rho = DensityMatrix::from_pure(&WaveFunction::fock(g, n).unwrap());
            let e_n = matrix_expectation(Observable::N, &rho);
            assert!((e_n.re - n as f64).abs() < 1e-9, "N on fock {n}: {e_n}");
            let e_q2 = matrix_expectation(Observable::Q2, &rho);
            assert!((e_q2.re - (n as f64 + 0.5)).abs() < 1e-9);
            let e_qp = matrix_expectation(Observable::QP, &rho);
            // qp = (qp + pq)/2 + i/2 and the symmetric part vanishes
            assert!((e_qp - C64::new(0.0, 0.5)).norm() < 1e-9);
        }
    }

    #[test]
    fn pure_density_invariants() {
        let g = grid();
        let rho = DensityMatrix::from_pure(&WaveFunction::coherent(g, C64::new(1.0, 0.5)).unwrap());
        rho.validate().unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn balanced_mixture_spectrum() {
        let g = grid();
        let f0 = DensityMatrix::from_pure(&WaveFunction::fock(g, 0).unwrap());
        let f1 = DensityMatrix::from_pure(&WaveFunction::fock(g, 1).unwrap());
        let mixed = DensityMatrix::mix(&[(0.5, f0), (0.5, f1)]).unwrap();
        mixed.validate().unwrap();
        assert!((mixed.purity() - 0.5).abs() < 1e-10);
        let ev = mixed.eigenvalues();
        assert!((ev[0] - 0.5).abs() < 5e-3 && (ev[1] - 0.5).abs() < 5e-3);
        assert!(ev[2].abs() < 1e-8);
    }

    #[test]
    fn bad_mixture_weights_are_rejected() {
        let g = grid();
        let f0 = DensityMatrix::from_pure(&WaveFunction::fock(g, 0).unwrap());
        let f1 = DensityMatrix::from_pure(&WaveFunction::fock(g, 1).unwrap());
        assert!(DensityMatrix::mix(&[(0.7, f0), (0.5, f1)]).is_err());
    }
}
