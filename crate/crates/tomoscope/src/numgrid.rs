//! Uniform grids and the 1D spectral calculus used everywhere else:
//! trapezoid quadrature, FFT derivatives `d/dX`, inverse derivatives
//! `[d/dX]^-1`, `[d/dX]^-2`, and the angle derivative with ghost slices
//! from the tomographic symmetry `w(X, theta + pi) = w(-X, theta)`.
//!
//! Functions handled here are assumed to decay at the grid edges (all
//! quadrature states do); plane waves at grid-resolved frequencies are
//! also exact because the calculus is a plain periodic Fourier multiplier.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Result, TomoError};

/// Uniform grid on `[x_min, x_max]`, both endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min {
            return Err(TomoError::InvalidArgument(format!(
                "bad grid range [{x_min}, {x_max}]"
            )));
        }
        if n < 16 {
            return Err(TomoError::InvalidArgument(format!(
                "grid needs at least 16 points, got {n}"
            )));
        }
        Ok(Self { x_min, x_max, n })
    }

    /// Default quadrature window used throughout: `[-8, 8]` with 512 points.
    pub fn default_quadrature() -> Self {
        Self { x_min: -8.0, x_max: 8.0, n: 512 }
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n - 1) as f64
    }

    /// Period of the implied periodic extension (one spacing past `x_max`).
    pub fn period(&self) -> f64 {
        self.dx() * self.n as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.point(j)).collect()
    }
}

/// Half-open angle grid `theta_k = k * pi / n_theta`, `k = 0..n_theta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AngleGrid {
    n_theta: usize,
}

impl AngleGrid {
    pub fn new(n_theta: usize) -> Result<Self> {
        if n_theta < 8 {
            return Err(TomoError::InvalidArgument(format!(
                "angle grid needs at least 8 slices, got {n_theta}"
            )));
        }
        Ok(Self { n_theta })
    }

    pub fn default_quadrature() -> Self {
        Self { n_theta: 180 }
    }

    pub fn len(&self) -> usize {
        self.n_theta
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dtheta(&self) -> f64 {
        PI / self.n_theta as f64
    }

    pub fn theta(&self, k: usize) -> f64 {
        k as f64 * self.dtheta()
    }

    pub fn thetas(&self) -> Vec<f64> {
        (0..self.n_theta).map(|k| self.theta(k)).collect()
    }

    /// Index of the slice closest to `theta0`, together with the interpolation
    /// weight toward the next slice (wrapping through the symmetry sheet is
    /// left to callers).
    pub fn locate(&self, theta0: f64) -> (usize, f64) {
        let t = theta0.rem_euclid(PI) / self.dtheta();
        let k = (t.floor() as usize).min(self.n_theta - 1);
        (k, t - k as f64)
    }
}

/// What to do with the `k = 0` Fourier mode of an inverse derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroModePolicy {
    /// Drop the mode (the operand is expected to be mean-free).
    SetZero,
    /// Error out if the operand mean exceeds `tol * ||f||_1 / period`.
    RejectAboveTol(f64),
}

/// Ramp filter used by filtered backprojection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterSpec {
    /// Fraction of the grid Nyquist frequency where the cosine rolloff ends.
    /// `>= 1.0` means a bare `|eta|` ramp with no apodization.
    pub k_cutoff_fraction: f64,
}

impl Default for FilterSpec {
    fn default() -> Self {
        Self { k_cutoff_fraction: 1.0 }
    }
}

impl FilterSpec {
    /// Filter response at wavenumber `k` for a grid with Nyquist `k_nyq`.
    pub fn response(&self, k: f64, k_nyq: f64) -> f64 {
        k.abs() * self.apodization(k, k_nyq)
    }

    /// The rolloff window alone (the ramp factored out).
    pub fn apodization(&self, k: f64, k_nyq: f64) -> f64 {
        let a = k.abs();
        if self.k_cutoff_fraction >= 1.0 {
            return 1.0;
        }
        let cut = self.k_cutoff_fraction * k_nyq;
        if a >= cut {
            0.0
        } else {
            (0.5 * PI * a / cut).cos()
        }
    }
}

// ---------------------------------------------------------------------------
// FFT plumbing

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(n)
        } else {
            p.plan_fft_forward(n)
        }
    })
}

pub(crate) fn fft_forward(buf: &mut [C64]) {
    plan(buf.len(), false).process(buf);
}

pub(crate) fn fft_inverse(buf: &mut [C64]) {
    let n = buf.len();
    plan(n, true).process(buf);
    let s = 1.0 / n as f64;
    for v in buf.iter_mut() {
        *v *= s;
    }
}

/// Signed wavenumbers `2*pi*j/period` in FFT bin order.
pub(crate) fn wavenumbers(n: usize, period: f64) -> Vec<f64> {
    let base = 2.0 * PI / period;
    (0..n)
        .map(|j| {
            let j = if j <= n / 2 { j as i64 } else { j as i64 - n as i64 };
            base * j as f64
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Quadrature

/// Trapezoid rule over the grid.
pub fn integrate(grid: &Grid1D, f: &[f64]) -> f64 {
    assert_eq!(f.len(), grid.len(), "integrate: length mismatch");
    let inner: f64 = f[1..f.len() - 1].iter().sum();
    (inner + 0.5 * (f[0] + f[f.len() - 1])) * grid.dx()
}

pub fn integrate_c(grid: &Grid1D, f: &[C64]) -> C64 {
    assert_eq!(f.len(), grid.len(), "integrate: length mismatch");
    let inner: C64 = f[1..f.len() - 1].iter().sum();
    (inner + 0.5 * (f[0] + f[f.len() - 1])) * grid.dx()
}

/// Trapezoid rule with the leading Euler-Maclaurin endpoint correction
/// `-dx^2/12 * (f'(b) - f'(a))` (one-sided 4-point slopes). Used for
/// integrands that do not decay at the window edges.
pub fn integrate_em(grid: &Grid1D, f: &[f64]) -> f64 {
    assert_eq!(f.len(), grid.len(), "integrate: length mismatch");
    let n = f.len();
    let dx = grid.dx();
    let d_lo = (-11.0 * f[0] + 18.0 * f[1] - 9.0 * f[2] + 2.0 * f[3]) / (6.0 * dx);
    let d_hi =
        (11.0 * f[n - 1] - 18.0 * f[n - 2] + 9.0 * f[n - 3] - 2.0 * f[n - 4]) / (6.0 * dx);
    integrate(grid, f) - dx * dx / 12.0 * (d_hi - d_lo)
}

pub fn integrate_em_c(grid: &Grid1D, f: &[C64]) -> C64 {
    let re: Vec<f64> = f.iter().map(|v| v.re).collect();
    let im: Vec<f64> = f.iter().map(|v| v.im).collect();
    C64::new(integrate_em(grid, &re), integrate_em(grid, &im))
}

// ---------------------------------------------------------------------------
// Spectral derivatives

fn spectral_multiplier(grid: &Grid1D, f: &[C64], pow: i32) -> Vec<C64> {
    assert_eq!(f.len(), grid.len(), "spectral op: length mismatch");
    let n = grid.len();
    let mut buf = f.to_vec();
    fft_forward(&mut buf);
    let ks = wavenumbers(n, grid.period());
    for (j, v) in buf.iter_mut().enumerate() {
        if j == 0 {
            *v = C64::new(0.0, 0.0); // zero mode handled by callers
            continue;
        }
        // Unpaired Nyquist bin: an odd power of ik has no real-signal
        // counterpart there, so drop it.
        if n % 2 == 0 && j == n / 2 && pow.rem_euclid(2) == 1 {
            *v = C64::new(0.0, 0.0);
            continue;
        }
        let ik = C64::new(0.0, ks[j]);
        *v *= ik.powi(pow);
    }
    fft_inverse(&mut buf);
    buf
}

/// Spectral derivative of integer `order >= 1` for complex data.
pub fn deriv_x_c(grid: &Grid1D, f: &[C64], order: u32) -> Vec<C64> {
    assert!(order >= 1, "derivative order must be >= 1");
    spectral_multiplier(grid, f, order as i32)
}

/// Spectral derivative for real data. The imaginary residue of the inverse
/// transform must stay below `1e-10 * max|f|`.
pub fn deriv_x(grid: &Grid1D, f: &[f64], order: u32) -> Result<Vec<f64>> {
    let fc: Vec<C64> = f.iter().map(|&v| C64::new(v, 0.0)).collect();
    let out = deriv_x_c(grid, &fc, order);
    let scale = f.iter().fold(0.0_f64, |a, &v| a.max(v.abs())).max(1e-300);
    let resid = out.iter().fold(0.0_f64, |a, v| a.max(v.im.abs()));
    if resid > 1e-10 * scale {
        return Err(TomoError::Invariant(format!(
            "derivative imaginary residue {resid:.3e} exceeds 1e-10 * max|f|"
        )));
    }
    Ok(out.into_iter().map(|v| v.re).collect())
}

/// Inverse derivative `[d/dX]^-power` as a plain Fourier multiplier
/// `(ik)^-power`; the zero mode is dropped or rejected per `policy`.
pub fn antideriv_x_c(
    grid: &Grid1D,
    f: &[C64],
    power: u32,
    policy: ZeroModePolicy,
) -> Result<Vec<C64>> {
    assert!(power >= 1, "inverse-derivative power must be >= 1");
    if let ZeroModePolicy::RejectAboveTol(tol) = policy {
        let mean = integrate_c(grid, f) / grid.period();
        let norm1: f64 = f.iter().map(|v| v.norm()).sum::<f64>() * grid.dx() / grid.period();
        if mean.norm() > tol * norm1.max(1e-300) {
            return Err(TomoError::ZeroMode { mean: mean.norm(), tol });
        }
    }
    Ok(spectral_multiplier(grid, f, -(power as i32)))
}

pub fn antideriv_x(
    grid: &Grid1D,
    f: &[f64],
    power: u32,
    policy: ZeroModePolicy,
) -> Result<Vec<f64>> {
    let fc: Vec<C64> = f.iter().map(|&v| C64::new(v, 0.0)).collect();
    let out = antideriv_x_c(grid, &fc, power, policy)?;
    Ok(out.into_iter().map(|v| v.re).collect())
}

/// Principal-value inverse derivative for decaying operands, the convention
/// under which the operator identities of the tomographic calculus hold
/// pointwise even when the operand carries a nonzero integral:
///
/// * power 1: `F(X) = (1/2) \int sgn(X - Y) f(Y) dY`
/// * power 2: `G(X) = (1/2) \int |X - Y| f(Y) dY`
///
/// Computed as a spectral antiderivative of the mean-free part plus the
/// exact polynomial continuation of the mean, pinned to the closed-form
/// kernel values at the window edges.
pub fn antideriv_pv_c(grid: &Grid1D, f: &[C64], power: u32) -> Vec<C64> {
    assert!(
        (1..=2).contains(&power),
        "principal-value inverse derivative supports powers 1 and 2"
    );
    let n = grid.len();
    let m: C64 = f.iter().sum::<C64>() / n as f64; // exact DFT zero mode
    let f0: Vec<C64> = f.iter().map(|&v| v - m).collect();
    let s = spectral_multiplier(grid, &f0, -(power as i32));

    let xs = grid.points();
    let total = integrate_c(grid, f);
    match power {
        1 => {
            // F(x_min) = -I/2: all mass sits to the right of the window edge.
            let c = -0.5 * total - s[0] - m * xs[0];
            s.iter()
                .zip(&xs)
                .map(|(&sv, &x)| sv + m * x + c)
                .collect()
        }
        2 => {
            let xf: Vec<C64> = f.iter().zip(&xs).map(|(&v, &x)| v * x).collect();
            let m1 = integrate_c(grid, &xf);
            let (lo, hi) = (xs[0], xs[n - 1]);
            let g_lo = 0.5 * (m1 - lo * total);
            let g_hi = 0.5 * (hi * total - m1);
            let v_lo = s[0] + m * (0.5 * lo * lo);
            let v_hi = s[n - 1] + m * (0.5 * hi * hi);
            // Affine correction fixed by the kernel values at both edges.
            let a = ((g_hi - v_hi) - (g_lo - v_lo)) / (hi - lo);
            let b = (g_lo - v_lo) - a * lo;
            s.iter()
                .zip(&xs)
                .map(|(&sv, &x)| sv + m * (0.5 * x * x) + a * x + b)
                .collect()
        }
        _ => unreachable!(),
    }
}

pub fn antideriv_pv(grid: &Grid1D, f: &[f64], power: u32) -> Vec<f64> {
    let fc: Vec<C64> = f.iter().map(|&v| C64::new(v, 0.0)).collect();
    antideriv_pv_c(grid, &fc, power)
        .into_iter()
        .map(|v| v.re)
        .collect()
}

// ---------------------------------------------------------------------------
// Angle derivative

/// Row of values at the reflected abscissas `-x_j`, by linear interpolation
/// (exact index reversal on a symmetric grid); points outside the window
/// are taken as zero.
pub fn reflect_x_c(grid: &Grid1D, row: &[C64]) -> Vec<C64> {
    assert_eq!(row.len(), grid.len(), "reflect: length mismatch");
    let n = grid.len();
    let dx = grid.dx();
    (0..n)
        .map(|j| {
            let t = (-grid.point(j) - grid.x_min()) / dx;
            if t < 0.0 || t > (n - 1) as f64 {
                return C64::new(0.0, 0.0);
            }
            let i = (t.floor() as usize).min(n - 2);
            let frac = t - i as f64;
            row[i] * (1.0 - frac) + row[i + 1] * frac
        })
        .collect()
}

/// Fourth-order central finite difference in theta (`order` 1 or 2) on a
/// `[n_theta, n_x]` array, with ghost slices obtained from the period-pi
/// symmetry extension `w(X, theta + pi) = w(-X, theta)`.
pub fn deriv_theta_c(
    agrid: &AngleGrid,
    xgrid: &Grid1D,
    w: &ndarray::Array2<C64>,
    order: u32,
) -> ndarray::Array2<C64> {
    assert!((1..=2).contains(&order), "theta derivative supports orders 1 and 2");
    let (nt, nx) = w.dim();
    assert_eq!(nt, agrid.len(), "theta derivative: angle count mismatch");
    assert_eq!(nx, xgrid.len(), "theta derivative: x count mismatch");
    assert!(nt >= 5, "theta derivative needs at least 5 slices");

    // Extend to the full 2 pi period via w(theta + pi, X) = w(theta, -X),
    // then differentiate spectrally; exact for resolvable harmonics, and
    // (crucially) consistent under repeated application.
    let nt2 = 2 * nt;
    let mut ext = ndarray::Array2::<C64>::zeros((nt2, nx));
    for k in 0..nt {
        let refl = reflect_x_c(xgrid, &w.row(k).to_vec());
        for j in 0..nx {
            ext[(k, j)] = w[(k, j)];
            ext[(nt + k, j)] = refl[j];
        }
    }
    let mult: Vec<C64> = (0..nt2)
        .map(|k| {
            let f = if k <= nt2 / 2 { k as i64 } else { k as i64 - nt2 as i64 };
            if order == 1 {
                if k == nt2 / 2 {
                    C64::new(0.0, 0.0) // odd-power multiplier: drop the Nyquist mode
                } else {
                    C64::new(0.0, f as f64)
                }
            } else {
                C64::new(-((f * f) as f64), 0.0)
            }
        })
        .collect();
    let mut out = ndarray::Array2::<C64>::zeros((nt, nx));
    let mut col = vec![C64::new(0.0, 0.0); nt2];
    for j in 0..nx {
        for k in 0..nt2 {
            col[k] = ext[(k, j)];
        }
        fft_forward(&mut col);
        for (c, m) in col.iter_mut().zip(&mult) {
            *c *= m;
        }
        fft_inverse(&mut col);
        for k in 0..nt {
            out[(k, j)] = col[k];
        }
    }
    out
}

pub fn deriv_theta(
    agrid: &AngleGrid,
    xgrid: &Grid1D,
    w: &ndarray::Array2<f64>,
    order: u32,
) -> ndarray::Array2<f64> {
    let wc = w.mapv(|v| C64::new(v, 0.0));
    deriv_theta_c(agrid, xgrid, &wc, order).mapv(|v| v.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array2;

    fn grid() -> Grid1D {
        Grid1D::default_quadrature()
    }

    fn gaussian(grid: &Grid1D) -> Vec<f64> {
        grid.points().iter().map(|&x| (-x * x).exp()).collect()
    }

    fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .fold(0.0_f64, |m, (&x, &y)| m.max((x - y).abs()))
    }

    #[test]
    fn integrate_gaussian_matches_sqrt_pi() {
        let g = grid();
        let val = integrate(&g, &gaussian(&g));
        assert!((val - PI.sqrt()).abs() < 1e-12, "got {val}");
    }

    #[test]
    fn integrate_em_is_exact_for_cubics() {
        let g = grid();
        let f: Vec<f64> = g.points().iter().map(|&x| x * x * x + 2.0 * x * x).collect();
        let exact = (g.x_max().powi(4) - g.x_min().powi(4)) / 4.0
            + 2.0 * (g.x_max().powi(3) - g.x_min().powi(3)) / 3.0;
        assert!((integrate_em(&g, &f) - exact).abs() < 1e-9 * exact.abs());
    }

    #[test]
    fn deriv_gaussian_first_order() {
        let g = grid();
        let out = deriv_x(&g, &gaussian(&g), 1).unwrap();
        let exact: Vec<f64> = g
            .points()
            .iter()
            .map(|&x| -2.0 * x * (-x * x).exp())
            .collect();
        // interior 80% of the window
        let lo = g.len() / 10;
        let hi = g.len() - lo;
        let err = max_abs_diff(&out[lo..hi], &exact[lo..hi]);
        assert!(err < 1e-8, "err {err:.3e}");
    }

    #[test]
    fn deriv_gaussian_second_order() {
        let g = grid();
        let out = deriv_x(&g, &gaussian(&g), 2).unwrap();
        let exact: Vec<f64> = g
            .points()
            .iter()
            .map(|&x| (4.0 * x * x - 2.0) * (-x * x).exp())
            .collect();
        let lo = g.len() / 10;
        let hi = g.len() - lo;
        let err = max_abs_diff(&out[lo..hi], &exact[lo..hi]);
        assert!(err < 1e-6, "err {err:.3e}");
    }

    #[test]
    fn antideriv_of_resolved_cosine() {
        let g = grid();
        let k = 2.0 * PI * 10.0 / g.period();
        let f: Vec<f64> = g.points().iter().map(|&x| (k * x).cos()).collect();
        let out = antideriv_x(&g, &f, 1, ZeroModePolicy::SetZero).unwrap();
        let exact: Vec<f64> = g.points().iter().map(|&x| (k * x).sin() / k).collect();
        let err = max_abs_diff(&out, &exact);
        assert!(err < 1e-8, "err {err:.3e}");
    }

    #[test]
    fn antideriv_inverts_derivative_up_to_mean() {
        let g = grid();
        let f = gaussian(&g);
        let mean = f.iter().sum::<f64>() / f.len() as f64;
        let df = deriv_x(&g, &f, 1).unwrap();
        let back = antideriv_x(&g, &df, 1, ZeroModePolicy::RejectAboveTol(1e-8)).unwrap();
        let exact: Vec<f64> = f.iter().map(|&v| v - mean).collect();
        let err = max_abs_diff(&back, &exact);
        assert!(err < 1e-7, "err {err:.3e}");
    }

    #[test]
    fn deriv_after_antideriv_is_identity_minus_mean() {
        // band-limited pseudo-random input, fixed coefficients
        let g = grid();
        let mut f = vec![0.0_f64; g.len()];
        let mut state = 0x9e3779b97f4a7c15_u64;
        let mut rnd = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for m in 1..=20 {
            let (a, b) = (rnd(), rnd());
            let k = 2.0 * PI * m as f64 / g.period();
            for (j, &x) in g.points().iter().enumerate() {
                f[j] += a * (k * x).cos() + b * (k * x).sin();
            }
        }
        let anti = antideriv_x(&g, &f, 1, ZeroModePolicy::SetZero).unwrap();
        let back = deriv_x(&g, &anti, 1).unwrap();
        let mean = f.iter().sum::<f64>() / f.len() as f64;
        let exact: Vec<f64> = f.iter().map(|&v| v - mean).collect();
        let err = max_abs_diff(&back, &exact);
        assert!(err < 1e-8, "err {err:.3e}");
    }

    #[test]
    fn antideriv_second_power_is_square_of_first() {
        let g = grid();
        let f = gaussian(&g);
        let df = deriv_x(&g, &f, 2).unwrap(); // zero-mean operand
        let twice = antideriv_x(
            &g,
            &antideriv_x(&g, &df, 1, ZeroModePolicy::SetZero).unwrap(),
            1,
            ZeroModePolicy::SetZero,
        )
        .unwrap();
        let once = antideriv_x(&g, &df, 2, ZeroModePolicy::SetZero).unwrap();
        assert!(max_abs_diff(&twice, &once) < 1e-10);
    }

    #[test]
    fn zero_mode_rejection_fires_on_gaussian() {
        let g = grid();
        let err = antideriv_x(&g, &gaussian(&g), 1, ZeroModePolicy::RejectAboveTol(1e-6));
        assert!(matches!(err, Err(TomoError::ZeroMode { .. })));
    }

    #[test]
    fn spectral_ops_are_linear() {
        let g = grid();
        let f = gaussian(&g);
        let h: Vec<f64> = g
            .points()
            .iter()
            .map(|&x| x * (-0.5 * x * x).exp())
            .collect();
        let (a, b) = (1.37, -0.52);
        let combo: Vec<f64> = f.iter().zip(&h).map(|(&u, &v)| a * u + b * v).collect();
        let lhs = deriv_x(&g, &combo, 1).unwrap();
        let rhs: Vec<f64> = deriv_x(&g, &f, 1)
            .unwrap()
            .iter()
            .zip(deriv_x(&g, &h, 1).unwrap())
            .map(|(&u, v)| a * u + b * v)
            .collect();
        assert!(max_abs_diff(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn pv_antideriv_gaussian_cdf_like() {
        let g = grid();
        // unit-mass density
        let f: Vec<f64> = g
            .points()
            .iter()
            .map(|&x| (-x * x).exp() / PI.sqrt())
            .collect();
        let cdf = antideriv_pv(&g, &f, 1);
        assert!((cdf[0] + 0.5).abs() < 1e-10);
        assert!((cdf[g.len() - 1] - 0.5).abs() < 1e-10);
        // centered antiderivative of an even density is odd
        for j in 0..g.len() {
            assert!((cdf[j] + cdf[g.len() - 1 - j]).abs() < 1e-10);
        }
        // d/dX of the result recovers the mean-free part plus the mass slope
        let slope = f.iter().sum::<f64>() / f.len() as f64;
        let df: Vec<f64> = cdf
            .iter()
            .zip(g.points())
            .map(|(&v, x)| v - slope * x)
            .collect();
        let back = deriv_x(&g, &df, 1).unwrap();
        let exact: Vec<f64> = f.iter().map(|&v| v - slope).collect();
        assert!(max_abs_diff(&back, &exact) < 1e-9);
    }

    #[test]
    fn pv_antideriv_second_power_gaussian_identity() {
        // For f = exp(-X^2)/sqrt(pi): G = X F + f/2 with F the centered CDF.
        let g = grid();
        let f: Vec<f64> = g
            .points()
            .iter()
            .map(|&x| (-x * x).exp() / PI.sqrt())
            .collect();
        let cdf = antideriv_pv(&g, &f, 1);
        let gg = antideriv_pv(&g, &f, 2);
        for (j, &x) in g.points().iter().enumerate() {
            let expect = x * cdf[j] + 0.5 * f[j];
            assert!(
                (gg[j] - expect).abs() < 1e-9,
                "j={j} got {} want {expect}",
                gg[j]
            );
        }
    }

    #[test]
    fn reflect_is_involution_on_symmetric_grid() {
        let g = grid();
        let f: Vec<C64> = g
            .points()
            .iter()
            .map(|&x| C64::new((-(x - 1.0) * (x - 1.0)).exp(), 0.3 * x.sin()))
            .collect();
        let r = reflect_x_c(&g, &f);
        let rr = reflect_x_c(&g, &r);
        let err = f
            .iter()
            .zip(&rr)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).norm()));
        assert!(err < 1e-12);
    }

    #[test]
    fn theta_derivative_orders_on_second_harmonic() {
        let g = grid();
        let a = AngleGrid::default_quadrature();
        let gauss = gaussian(&g);
        let mut w = Array2::<f64>::zeros((a.len(), g.len()));
        for (k, theta) in a.thetas().iter().enumerate() {
            for j in 0..g.len() {
                w[(k, j)] = (2.0 * theta).cos() * gauss[j];
            }
        }
        let d1 = deriv_theta(&a, &g, &w, 1);
        let d2 = deriv_theta(&a, &g, &w, 2);
        let mut e1 = 0.0_f64;
        let mut e2 = 0.0_f64;
        for (k, theta) in a.thetas().iter().enumerate() {
            for j in 0..g.len() {
                e1 = e1.max((d1[(k, j)] + 2.0 * (2.0 * theta).sin() * gauss[j]).abs());
                e2 = e2.max((d2[(k, j)] + 4.0 * (2.0 * theta).cos() * gauss[j]).abs());
            }
        }
        assert!(e1 < 1e-5, "first order err {e1:.3e}");
        assert!(e2 < 1e-4, "second order err {e2:.3e}");
    }

    #[test]
    fn theta_derivative_honours_symmetry_extension() {
        // w = cos(theta) * x * exp(-x^2) changes sign across theta -> theta+pi
        // together with X -> -X, which is exactly the tomographic extension.
        let g = grid();
        let a = AngleGrid::default_quadrature();
        let mut w = Array2::<f64>::zeros((a.len(), g.len()));
        for (k, theta) in a.thetas().iter().enumerate() {
            for (j, &x) in g.points().iter().enumerate() {
                w[(k, j)] = theta.cos() * x * (-x * x).exp();
            }
        }
        let d1 = deriv_theta(&a, &g, &w, 1);
        let mut err = 0.0_f64;
        for (k, theta) in a.thetas().iter().enumerate() {
            for (j, &x) in g.points().iter().enumerate() {
                err = err.max((d1[(k, j)] + theta.sin() * x * (-x * x).exp()).abs());
            }
        }
        assert!(err < 1e-5, "err {err:.3e}");
    }
}
