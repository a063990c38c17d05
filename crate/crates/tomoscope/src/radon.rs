//! Optical tomograms and the transforms connecting them with density
//! matrices and Wigner functions.
//!
//! The direct route evaluates `w(X, theta) = <X,theta| rho |X,theta>` with
//! the quadrature eigenvector kernel
//! `<q|X,theta> = (gamma / 2 pi |sin|)^(1/2) exp(i gamma (X q - q^2 cos/2) / sin)`
//! (`gamma = m omega / hbar`). Rearranged over matrix diagonals this is a
//! single chirped sum per angle. Near `sin(theta) = 0` the kernel phase is
//! not resolvable on a fixed grid; there the state is rotated through the
//! spectral decomposition of the fractional Fourier transform (oscillator
//! eigenbasis, eigenvalues `e^{-i n theta}`) and the diagonal read off.
//!
//! `tomogram_from_wigner` is the Radon line integral (prefactor `1/2 pi`),
//! `wigner_from_tomogram` the filtered backprojection with the `|eta|` ramp.

use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Result, TomoError};
use crate::numgrid::{self, AngleGrid, FilterSpec, Grid1D};
use crate::phasespace::WignerFunction;
use crate::states::{hermite_functions, DensityMatrix, ModeParams};

/// Quadrature histogram `w(X, theta)` on `[n_theta, n_x]`.
#[derive(Debug, Clone)]
pub struct OpticalTomogram {
    agrid: AngleGrid,
    xgrid: Grid1D,
    w: Array2<f64>,
}

impl OpticalTomogram {
    pub fn from_values(agrid: AngleGrid, xgrid: Grid1D, w: Array2<f64>) -> Result<Self> {
        if w.dim() != (agrid.len(), xgrid.len()) {
            return Err(TomoError::DimensionMismatch {
                expected: agrid.len() * xgrid.len(),
                got: w.dim().0 * w.dim().1,
            });
        }
        Ok(Self { agrid, xgrid, w })
    }

    pub fn agrid(&self) -> AngleGrid {
        self.agrid
    }

    pub fn xgrid(&self) -> Grid1D {
        self.xgrid
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.w
    }

    /// Worst per-slice deviation of `\int w dX` from one.
    pub fn normalization_error(&self) -> f64 {
        (0..self.agrid.len())
            .map(|k| {
                (numgrid::integrate(&self.xgrid, self.w.row(k).as_slice().unwrap()) - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn min_value(&self) -> f64 {
        self.w.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Normalization and nonnegativity of every slice. Quadrature noise may
    /// dip to `-1e-9`; anything lower is a genuine violation.
    pub fn validate(&self) -> Result<()> {
        let norm = self.normalization_error();
        if norm > 1e-8 {
            return Err(TomoError::Invariant(format!(
                "tomogram slice normalization off by {norm:.3e}"
            )));
        }
        let min = self.min_value();
        if min < -1e-9 {
            return Err(TomoError::Invariant(format!(
                "tomogram negative beyond noise floor: min {min:.3e}"
            )));
        }
        Ok(())
    }

    /// Values on the sheet `theta + pi k`, using
    /// `w(X, theta + pi k) = w((-1)^k X, theta)`.
    pub fn symmetry_extend(&self, k: i64) -> Array2<f64> {
        if k.rem_euclid(2) == 0 {
            return self.w.clone();
        }
        let mut out = Array2::<f64>::zeros(self.w.dim());
        for t in 0..self.agrid.len() {
            let row: Vec<C64> = self
                .w
                .row(t)
                .iter()
                .map(|&v| C64::new(v, 0.0))
                .collect();
            let refl = numgrid::reflect_x_c(&self.xgrid, &row);
            for (j, v) in refl.into_iter().enumerate() {
                out[(t, j)] = v.re;
            }
        }
        out
    }

    /// Slice at an off-grid angle by linear interpolation between
    /// neighbouring slices (wrapping through the symmetry sheet).
    pub fn slice_at(&self, theta0: f64) -> Vec<f64> {
        let (k, frac) = self.agrid.locate(theta0);
        let lo = self.w.row(k).to_vec();
        let hi: Vec<f64> = if k + 1 < self.agrid.len() {
            self.w.row(k + 1).to_vec()
        } else {
            // theta = pi wraps to the reflected theta = 0 slice
            let row: Vec<C64> = self.w.row(0).iter().map(|&v| C64::new(v, 0.0)).collect();
            numgrid::reflect_x_c(&self.xgrid, &row)
                .into_iter()
                .map(|v| v.re)
                .collect()
        };
        lo.iter()
            .zip(&hi)
            .map(|(&a, &b)| a * (1.0 - frac) + b * frac)
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Direct kernel route

/// Smallest `|sin(theta)|` at which the chirped kernel sum stays below the
/// grid Nyquist frequency (with margin); slides up with `gamma` and the
/// window size.
fn kernel_sin_floor(grid: &Grid1D, gamma: f64) -> f64 {
    let reach = grid.x_min().abs().max(grid.x_max().abs());
    (1.2 * gamma * 2.0 * reach * grid.dx() / PI).max(0.25)
}

/// Oscillator eigenbasis rows `h_0..`, with length scale `gamma`, truncated
/// where the classical turning point nears the window edge (edge amplitude
/// above 1e-4; beyond that the functions are not contained in the window,
/// below it their out-of-window tails integrate to < 1e-9).
fn oscillator_basis(grid: &Grid1D, gamma: f64) -> Result<Array2<f64>> {
    const CAP: usize = 256;
    let all = hermite_functions(grid, CAP, gamma);
    let n = grid.len();
    let mut keep = 0;
    for m in 0..=CAP {
        let edge = all[(m, 0)].abs().max(all[(m, n - 1)].abs());
        if edge > 1e-4 {
            break;
        }
        keep = m + 1;
    }
    if keep < 8 {
        return Err(TomoError::Resolution(
            "grid too small for the oscillator-basis rotation".into(),
        ));
    }
    Ok(all.slice_move(ndarray::s![..keep, ..]))
}

/// Symbol slice by the chirped diagonal sum (valid for
/// `|sin theta| >= kernel_sin_floor`). `kernel` holds sampled kernel values
/// `A(q, q')`.
fn slice_chirped(
    kernel: &Array2<C64>,
    grid: &Grid1D,
    theta: f64,
    gamma: f64,
) -> Vec<C64> {
    let n = grid.len();
    let dx = grid.dx();
    let (s, c) = theta.sin_cos();
    let s = if s == 0.0 { f64::MIN_POSITIVE } else { s };
    let xs = grid.points();

    // chirp u(q) = exp(-i gamma q^2 c / 2 s)
    let u: Vec<C64> = xs
        .iter()
        .map(|&q| C64::from_polar(1.0, -gamma * q * q * c / (2.0 * s)))
        .collect();

    // diagonal sums S(d) = sum_q conj(u_q) A[q, q+d] u_{q+d} dx^2
    let mut sums = vec![C64::new(0.0, 0.0); 2 * n - 1];
    for (di, sum) in sums.iter_mut().enumerate() {
        let d = di as i64 - (n - 1) as i64;
        let (q_lo, q_hi) = if d >= 0 {
            (0, n - d as usize)
        } else {
            ((-d) as usize, n)
        };
        let mut acc = C64::new(0.0, 0.0);
        for q in q_lo..q_hi {
            let qp = (q as i64 + d) as usize;
            acc += u[q].conj() * kernel[(q, qp)] * u[qp];
        }
        *sum = acc * dx * dx;
    }

    // w(X) = gamma/(2 pi |s|) * sum_d S(d) exp(i gamma X d dx / s)
    let pref = gamma / (2.0 * PI * s.abs());
    xs.iter()
        .map(|&x| {
            let step = C64::from_polar(1.0, gamma * x * dx / s);
            let mut ph = C64::from_polar(1.0, -gamma * x * dx / s * (n - 1) as f64);
            let mut acc = C64::new(0.0, 0.0);
            for sum in &sums {
                acc += sum * ph;
                ph *= step;
            }
            acc * pref
        })
        .collect()
}

/// Symbol of a sampled kernel `A(q, q')` on the whole `(theta, X)` lattice.
pub fn kernel_symbol(
    kernel: &Array2<C64>,
    grid: &Grid1D,
    agrid: &AngleGrid,
    gamma: f64,
) -> Result<Array2<C64>> {
    let n = grid.len();
    if kernel.dim() != (n, n) {
        return Err(TomoError::DimensionMismatch { expected: n, got: kernel.dim().0 });
    }
    let floor = kernel_sin_floor(grid, gamma);
    let needs_rotation = agrid.thetas().iter().any(|t| t.sin().abs() < floor);

    // Fock-basis projection used by the rotation route.
    let rotation = if needs_rotation {
        let basis = oscillator_basis(grid, gamma)?;
        let nf = basis.dim().0;
        let dx = grid.dx();
        // a_nm = sum h_n(q) A(q,q') h_m(q') dx^2
        let mut half = Array2::<C64>::zeros((nf, n));
        for m in 0..nf {
            for qp in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for q in 0..n {
                    acc += basis[(m, q)] * kernel[(q, qp)];
                }
                half[(m, qp)] = acc * dx;
            }
        }
        let mut proj = Array2::<C64>::zeros((nf, nf));
        for a in 0..nf {
            for b in 0..nf {
                let mut acc = C64::new(0.0, 0.0);
                for qp in 0..n {
                    acc += half[(a, qp)] * basis[(b, qp)];
                }
                proj[(a, b)] = acc * dx;
            }
        }
        Some((basis, proj))
    } else {
        None
    };

    let slices: Vec<Vec<C64>> = agrid
        .thetas()
        .par_iter()
        .map(|&theta| {
            let s = theta.sin();
            if s.abs() < 1e-12 {
                // exact theta = 0 limit: the diagonal of the kernel
                return (0..n).map(|j| kernel[(j, j)]).collect();
            }
            if s.abs() >= floor {
                return slice_chirped(kernel, grid, theta, gamma);
            }
            let (basis, proj) = rotation.as_ref().expect("rotation route prepared");
            let nf = basis.dim().0;
            // v = D proj D^H with D = diag(e^{-i n theta})
            let mut v = Array2::<C64>::zeros((nf, nf));
            for a in 0..nf {
                for b in 0..nf {
                    let ph = C64::from_polar(1.0, -(a as f64 - b as f64) * theta);
                    v[(a, b)] = ph * proj[(a, b)];
                }
            }
            // slice_j = sum_ab h_a(x_j) v_ab h_b(x_j)
            let mut m = Array2::<C64>::zeros((nf, n));
            for a in 0..nf {
                for j in 0..n {
                    let mut acc = C64::new(0.0, 0.0);
                    for b in 0..nf {
                        acc += v[(a, b)] * basis[(b, j)];
                    }
                    m[(a, j)] = acc;
                }
            }
            (0..n)
                .map(|j| {
                    let mut acc = C64::new(0.0, 0.0);
                    for a in 0..nf {
                        acc += basis[(a, j)] * m[(a, j)];
                    }
                    acc
                })
                .collect()
        })
        .collect();

    let mut out = Array2::<C64>::zeros((agrid.len(), n));
    for (k, row) in slices.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            out[(k, j)] = v;
        }
    }
    Ok(out)
}

/// Tomogram of a density matrix; `params` sets `gamma = m omega / hbar`
/// of the measured quadrature `X_theta = q cos + (p / m omega) sin`.
pub fn tomogram_from_density(
    rho: &DensityMatrix,
    agrid: &AngleGrid,
    params: &ModeParams,
) -> Result<OpticalTomogram> {
    let grid = rho.grid();
    let sym = kernel_symbol(rho.matrix(), &grid, agrid, params.gamma())?;
    let peak = sym.iter().fold(0.0_f64, |m, v| m.max(v.re.abs())).max(1e-300);
    let resid = sym.iter().fold(0.0_f64, |m, v| m.max(v.im.abs()));
    if resid > 1e-9 * peak {
        return Err(TomoError::Invariant(format!(
            "tomogram imaginary residue {resid:.3e}"
        )));
    }
    let tomo = OpticalTomogram::from_values(*agrid, grid, sym.mapv(|v| v.re))?;
    tomo.validate()?;
    Ok(tomo)
}

// ---------------------------------------------------------------------------
// Radon line integrals and filtered backprojection

fn catmull_rom(f: [f64; 4], u: f64) -> f64 {
    0.5 * (2.0 * f[1]
        + (-f[0] + f[2]) * u
        + (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * u * u
        + (-f[0] + 3.0 * f[1] - 3.0 * f[2] + f[3]) * u * u * u)
}

/// Separable cubic sample of a 2D field; zero outside the stencil range
/// (fields here decay at the window edges).
fn sample2(values: &Array2<f64>, ga: &Grid1D, gb: &Grid1D, a: f64, b: f64) -> f64 {
    let ta = (a - ga.x_min()) / ga.dx();
    let tb = (b - gb.x_min()) / gb.dx();
    let ia = ta.floor() as i64;
    let ib = tb.floor() as i64;
    if ia < 1 || ia + 2 >= ga.len() as i64 || ib < 1 || ib + 2 >= gb.len() as i64 {
        return 0.0;
    }
    let (ua, ub) = (ta - ia as f64, tb - ib as f64);
    let mut rows = [0.0_f64; 4];
    for (r, row) in rows.iter_mut().enumerate() {
        let j = (ia - 1 + r as i64) as usize;
        let f = [
            values[(j, (ib - 1) as usize)],
            values[(j, ib as usize)],
            values[(j, (ib + 1) as usize)],
            values[(j, (ib + 2) as usize)],
        ];
        *row = catmull_rom(f, ub);
    }
    catmull_rom(rows, ua)
}

fn sample1_circular(values: &[f64], x_min: f64, dx: f64, x: f64) -> f64 {
    let m = values.len() as i64;
    let t = (x - x_min) / dx;
    let i = t.floor() as i64;
    let u = t - i as f64;
    let f = [
        values[(i - 1).rem_euclid(m) as usize],
        values[i.rem_euclid(m) as usize],
        values[(i + 1).rem_euclid(m) as usize],
        values[(i + 2).rem_euclid(m) as usize],
    ];
    catmull_rom(f, u)
}

/// Radon transform of a Wigner function:
/// `w(X, theta) = (1/2 pi) \int W(X cos - t sin, X sin + t cos) dt`.
pub fn tomogram_from_wigner(
    w: &WignerFunction,
    agrid: &AngleGrid,
    xgrid: &Grid1D,
) -> Result<OpticalTomogram> {
    let qg = w.qgrid();
    let pg = w.pgrid();
    let reach_q = qg.x_min().abs().max(qg.x_max().abs());
    let reach_p = pg.x_min().abs().max(pg.x_max().abs());
    let t_max = (reach_q * reach_q + reach_p * reach_p).sqrt();
    let dt = qg.dx().min(pg.dx());
    let steps = (2.0 * t_max / dt).ceil() as usize + 1;

    let rows: Vec<Vec<f64>> = agrid
        .thetas()
        .par_iter()
        .map(|&theta| {
            let (s, c) = theta.sin_cos();
            xgrid
                .points()
                .iter()
                .map(|&x| {
                    let mut acc = 0.0;
                    for i in 0..steps {
                        let t = -t_max + i as f64 * dt;
                        acc += sample2(w.values(), &qg, &pg, x * c - t * s, x * s + t * c);
                    }
                    acc * dt / (2.0 * PI)
                })
                .collect()
        })
        .collect();

    let mut out = Array2::<f64>::zeros((agrid.len(), xgrid.len()));
    for (k, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            out[(k, j)] = v;
        }
    }
    OpticalTomogram::from_values(*agrid, *xgrid, out)
}

/// Filtered backprojection:
/// `W(q, p) = (pi / n_theta) sum_theta Q_theta(q cos + p sin)` with
/// `Q_theta` the `|eta|`-filtered slice (zero-padded to twice the window
/// to avoid circular wrap).
pub fn wigner_from_tomogram(
    tomo: &OpticalTomogram,
    qgrid: &Grid1D,
    pgrid: &Grid1D,
    filter: &FilterSpec,
) -> Result<WignerFunction> {
    let xg = tomo.xgrid();
    let n = xg.len();
    let npad = 4 * n;
    let dx = xg.dx();
    let k_nyq = PI / dx;
    let ks = numgrid::wavenumbers(npad, npad as f64 * dx);

    // Band-limited ramp assembled in the spatial domain; its DFT carries the
    // finite-window DC weight that a frequency-sampled |eta| misses (the
    // classic backprojection cupping bias).
    let mut ramp = vec![C64::new(0.0, 0.0); npad];
    for (j, v) in ramp.iter_mut().enumerate() {
        let k = if j <= npad / 2 { j as i64 } else { j as i64 - npad as i64 };
        *v = C64::new(
            if k == 0 {
                PI / (2.0 * dx * dx)
            } else if k % 2 != 0 {
                -2.0 / (PI * (k * k) as f64 * dx * dx)
            } else {
                0.0
            },
            0.0,
        );
    }
    numgrid::fft_forward(&mut ramp);
    let response: Vec<f64> = ramp
        .iter()
        .zip(&ks)
        .map(|(r, &k)| r.re * dx * filter.apodization(k, k_nyq))
        .collect();

    let filtered: Vec<Vec<f64>> = (0..tomo.agrid().len())
        .map(|t| {
            let mut buf = vec![C64::new(0.0, 0.0); npad];
            for j in 0..n {
                buf[j] = C64::new(tomo.values()[(t, j)], 0.0);
            }
            numgrid::fft_forward(&mut buf);
            for (v, &r) in buf.iter_mut().zip(&response) {
                *v *= r;
            }
            numgrid::fft_inverse(&mut buf);
            // keep the pad: the convolution tails there (~ -1/(pi xi^2)) are
            // real signal needed where |xi| exceeds the measured window
            buf.iter().map(|v| v.re).collect()
        })
        .collect();

    let thetas = tomo.agrid().thetas();
    let weight = PI / tomo.agrid().len() as f64;
    let rows: Vec<Vec<f64>> = qgrid
        .points()
        .par_iter()
        .map(|&q| {
            pgrid
                .points()
                .iter()
                .map(|&p| {
                    let mut acc = 0.0;
                    for (t, &theta) in thetas.iter().enumerate() {
                        let (s, c) = theta.sin_cos();
                        acc += sample1_circular(&filtered[t], xg.x_min(), xg.dx(), q * c + p * s);
                    }
                    acc * weight
                })
                .collect()
        })
        .collect();

    let mut out = Array2::<f64>::zeros((qgrid.len(), pgrid.len()));
    for (j, row) in rows.into_iter().enumerate() {
        for (l, v) in row.into_iter().enumerate() {
            out[(j, l)] = v;
        }
    }
    WignerFunction::from_values(*qgrid, *pgrid, out)
}

/// Full reconstruction chain tomogram -> Wigner -> density matrix.
/// Returns the density matrix and the Hermiticity deviation absorbed on
/// the way.
pub fn density_from_tomogram(
    tomo: &OpticalTomogram,
    pgrid: &Grid1D,
    filter: &FilterSpec,
) -> Result<(DensityMatrix, f64)> {
    let xg = tomo.xgrid();
    let w = wigner_from_tomogram(tomo, &xg, pgrid, filter)?;
    crate::phasespace::density_from_wigner(&w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phasespace::wigner_from_density;
    use crate::states::WaveFunction;

    fn setup() -> (Grid1D, AngleGrid, ModeParams) {
        (
            Grid1D::default_quadrature(),
            AngleGrid::new(180).unwrap(),
            ModeParams::default(),
        )
    }

    fn fock_rho(n: usize) -> DensityMatrix {
        let grid = Grid1D::default_quadrature();
        DensityMatrix::from_pure(&WaveFunction::fock(grid, n).unwrap())
    }

    #[test]
    fn vacuum_tomogram_is_angle_independent_gaussian() {
        let (grid, agrid, params) = setup();
        let tomo = tomogram_from_density(&fock_rho(0), &agrid, &params).unwrap();
        let xs = grid.points();
        let mut worst = 0.0_f64;
        for t in 0..agrid.len() {
            for (j, &x) in xs.iter().enumerate() {
                let exact = PI.powf(-0.5) * (-x * x).exp();
                worst = worst.max((tomo.values()[(t, j)] - exact).abs());
            }
        }
        // exercises both the chirped-kernel and rotation regimes
        assert!(worst < 1e-6, "vacuum tomogram deviation {worst:.3e}");
    }

    #[test]
    fn coherent_tomogram_is_shifted_gaussian() {
        let (grid, agrid, params) = setup();
        let alpha = C64::new(0.8, 0.6);
        let psi = WaveFunction::coherent(grid, alpha).unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        let tomo = tomogram_from_density(&rho, &agrid, &params).unwrap();
        let xs = grid.points();
        let mut worst = 0.0_f64;
        for (t, &theta) in agrid.thetas().iter().enumerate() {
            let mu = 2.0_f64.sqrt() * (alpha.re * theta.cos() + alpha.im * theta.sin());
            for (j, &x) in xs.iter().enumerate() {
                let exact = PI.powf(-0.5) * (-(x - mu) * (x - mu)).exp();
                worst = worst.max((tomo.values()[(t, j)] - exact).abs());
            }
        }
        assert!(worst < 1e-6, "coherent tomogram deviation {worst:.3e}");
    }

    #[test]
    fn theta_zero_slice_is_position_density() {
        let (grid, agrid, params) = setup();
        let rho = fock_rho(2);
        let tomo = tomogram_from_density(&rho, &agrid, &params).unwrap();
        let mut worst = 0.0_f64;
        for j in 0..grid.len() {
            worst = worst.max((tomo.values()[(0, j)] - rho.matrix()[(j, j)].re).abs());
        }
        assert!(worst < 1e-12, "theta=0 slice deviation {worst:.3e}");
    }

    #[test]
    fn tomogram_invariants_hold_for_fock_states() {
        let (_, agrid, params) = setup();
        for n in [1usize, 3] {
            let tomo = tomogram_from_density(&fock_rho(n), &agrid, &params).unwrap();
            assert!(tomo.normalization_error() < 1e-9);
            assert!(tomo.min_value() > -1e-10);
        }
    }

    #[test]
    fn symmetry_extension_reflects_and_involutes() {
        let (_, agrid, params) = setup();
        let alpha = C64::new(1.0, 0.5);
        let psi = WaveFunction::coherent(Grid1D::default_quadrature(), alpha).unwrap();
        let tomo =
            tomogram_from_density(&DensityMatrix::from_pure(&psi), &agrid, &params).unwrap();
        let once = tomo.symmetry_extend(1);
        let back = OpticalTomogram::from_values(tomo.agrid(), tomo.xgrid(), once.clone())
            .unwrap()
            .symmetry_extend(1);
        let n = tomo.xgrid().len();
        let mut worst = 0.0_f64;
        for t in 0..agrid.len() {
            for j in 0..n {
                worst = worst.max((back[(t, j)] - tomo.values()[(t, j)]).abs());
                // odd sheet is the X-reflection of the principal one
                worst = worst.max((once[(t, j)] - tomo.values()[(t, n - 1 - j)]).abs());
            }
        }
        assert!(worst < 1e-12);
        assert_eq!(tomo.symmetry_extend(2), *tomo.values());
    }

    #[test]
    fn radon_of_wigner_matches_kernel_route() {
        let (grid, agrid, params) = setup();
        let alpha = C64::new(0.7, -0.4);
        let psi = WaveFunction::coherent(grid, alpha).unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        let direct = tomogram_from_density(&rho, &agrid, &params).unwrap();
        let wig = wigner_from_density(&rho, grid).unwrap();
        let via_wigner = tomogram_from_wigner(&wig, &agrid, &grid).unwrap();
        let mut worst = 0.0_f64;
        for t in 0..agrid.len() {
            for j in 0..grid.len() {
                worst =
                    worst.max((direct.values()[(t, j)] - via_wigner.values()[(t, j)]).abs());
            }
        }
        assert!(worst < 1e-5, "route disagreement {worst:.3e}");
    }

    #[test]
    fn backprojection_recovers_vacuum_peak() {
        let (grid, agrid, params) = setup();
        let tomo = tomogram_from_density(&fock_rho(0), &agrid, &params).unwrap();
        let wig = wigner_from_tomogram(&tomo, &grid, &grid, &FilterSpec::default()).unwrap();
        let mid = grid.len() / 2;
        // even grid: origin sits half a cell off the lattice
        let q = grid.point(mid);
        let exact = 2.0 * (-2.0 * q * q).exp();
        let got = wig.values()[(mid, mid)];
        assert!((got - exact).abs() < 2e-3, "W near origin {got} vs {exact}");
        assert!((wig.total_mass() - 2.0 * PI).abs() < 1e-2);
    }

    #[test]
    fn reconstruction_roundtrip_on_fock_one() {
        let (grid, agrid, params) = setup();
        let rho = fock_rho(1);
        let tomo = tomogram_from_density(&rho, &agrid, &params).unwrap();
        let (rec, herm) = density_from_tomogram(&tomo, &grid, &FilterSpec::default()).unwrap();
        assert!(herm < 1e-6);
        let mut num = 0.0_f64;
        let mut den = 0.0_f64;
        for j in 0..grid.len() {
            for k in 0..grid.len() {
                num += (rec.matrix()[(j, k)] - rho.matrix()[(j, k)]).norm_sqr();
                den += rho.matrix()[(j, k)].norm_sqr();
            }
        }
        let rel = (num / den).sqrt();
        assert!(rel < 1e-2, "roundtrip relative error {rel:.3e}");
        let psi = WaveFunction::fock(grid, 1).unwrap();
        assert!(rec.fidelity_with_pure(&psi) > 0.999);
    }

    #[test]
    fn scaled_mode_parameters_shift_the_quadrature_mean() {
        let grid = Grid1D::default_quadrature();
        let agrid = AngleGrid::new(64).unwrap();
        // gamma = 6 pushes every angle onto the rotation route
        let params = ModeParams { hbar: 1.0, mass: 2.0, omega: 3.0 };
        let alpha = C64::new(0.5, 0.5);
        let psi = WaveFunction::coherent(grid, alpha).unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        let tomo = tomogram_from_density(&rho, &agrid, &params).unwrap();
        let xs = grid.points();
        let g = params.gamma();
        let mut worst = 0.0_f64;
        for (t, &theta) in agrid.thetas().iter().enumerate() {
            let mean: f64 = numgrid::integrate(
                &grid,
                &xs.iter()
                    .zip(tomo.values().row(t))
                    .map(|(&x, &w)| x * w)
                    .collect::<Vec<_>>(),
            );
            // X_theta = q cos + (p / m omega) sin on a gamma = 1 state
            let exact = 2.0_f64.sqrt() * (alpha.re * theta.cos() + alpha.im * theta.sin() / g);
            worst = worst.max((mean - exact).abs());
        }
        assert!(worst < 1e-7, "scaled-mode mean deviation {worst:.3e}");
    }
}
