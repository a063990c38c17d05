//! Symbols and dual symbols of operators on optical tomograms.
//!
//! An operator `A` with coordinate kernel `A(q, q')` has the symbol
//! `w_A(X, theta) = <X,theta| A |X,theta>`; a density matrix's symbol is its
//! tomogram. A *dual* symbol `w_A^(d)` is any function (or distribution)
//! with `Tr(A rho) = iint w_A^(d) w dX dtheta` for every tomogram `w`. Dual
//! symbols are equivalence classes of functionals: a smooth ("regular")
//! representative and a delta-concentrated ("singular") one coexist for the
//! same operator, and both are provided here for a small catalogue of
//! observables, together with the rewrite rules that turn an operator's
//! tomogram-domain form into its regular dual.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Result, TomoError};
use crate::numgrid::{self, AngleGrid, Grid1D};
use crate::radon::{self, OpticalTomogram};
use crate::tomops::{MultimodeTomogram, SymTerm, ThetaFn, TomogramOperator, XOp};

// ---------------------------------------------------------------------------
// Operator kernels and their symbols

/// Coordinate-representation kernel `A(q, q')` sampled on a grid, used only
/// under trace pairings.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    grid: Grid1D,
    a: Array2<C64>,
}

impl OperatorMatrix {
    pub fn new(grid: Grid1D, a: Array2<C64>) -> Result<Self> {
        let n = grid.len();
        if a.dim() != (n, n) {
            return Err(TomoError::DimensionMismatch { expected: n * n, got: a.len() });
        }
        if a.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(TomoError::InvalidArgument(
                "operator kernel has non-finite entries".into(),
            ));
        }
        Ok(Self { grid, a })
    }

    /// Discretized `delta(q - q')`: `1/dx` on the diagonal.
    pub fn identity(grid: Grid1D) -> Self {
        let n = grid.len();
        let v = C64::new(1.0 / grid.dx(), 0.0);
        let a = Array2::from_shape_fn((n, n), |(i, j)| if i == j { v } else { C64::default() });
        Self { grid, a }
    }

    /// Position operator `q delta(q - q')`.
    pub fn position(grid: Grid1D) -> Self {
        let n = grid.len();
        let xs = grid.points();
        let dx = grid.dx();
        let a = Array2::from_shape_fn((n, n), |(i, j)| {
            if i == j { C64::new(xs[i] / dx, 0.0) } else { C64::default() }
        });
        Self { grid, a }
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn kernel(&self) -> &Array2<C64> {
        &self.a
    }
}

/// Symbol `w_A(X, theta)` of an arbitrary kernel on the full `(theta, X)`
/// lattice, by the same quadrature-eigenfunction machinery that produces
/// tomograms of density matrices.
pub fn symbol_of(op: &OperatorMatrix, agrid: &AngleGrid, gamma: f64) -> Result<Array2<C64>> {
    radon::kernel_symbol(&op.a, &op.grid, agrid, gamma)
}

// ---------------------------------------------------------------------------
// Regular dual symbols

/// Sum of `coeff * f(theta) * X^k` monomials; the building block of regular
/// dual symbols.
#[derive(Debug, Clone)]
pub struct AngleXPoly(Vec<(C64, ThetaFn, u32)>);

impl AngleXPoly {
    pub fn new(terms: Vec<(C64, ThetaFn, u32)>) -> Self {
        Self(terms)
    }

    fn one() -> Self {
        Self(vec![(C64::new(1.0, 0.0), ThetaFn::One, 0)])
    }

    pub fn eval(&self, theta: f64, x: f64) -> C64 {
        self.0
            .iter()
            .map(|(c, f, k)| c * f.eval(theta) * x.powi(*k as i32))
            .sum()
    }

    pub fn sample(&self, agrid: &AngleGrid, grid: &Grid1D) -> Array2<C64> {
        let xs = grid.points();
        let thetas = agrid.thetas();
        Array2::from_shape_fn((agrid.len(), grid.len()), |(t, j)| self.eval(thetas[t], xs[j]))
    }
}

/// Smooth dual symbol: a sum of products of per-mode polynomials in
/// `(X, theta)`, evaluated with one factor `1/pi` per mode (an untouched
/// mode's flat factor then pairs to exactly 1 on a normalized tomogram).
#[derive(Debug, Clone)]
pub struct RegularDualSymbol {
    label: String,
    n_modes: usize,
    terms: Vec<(C64, Vec<AngleXPoly>)>,
}

impl RegularDualSymbol {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Value at one point per mode, including the `1/pi^n` normalization.
    pub fn eval(&self, thetas: &[f64], xs: &[f64]) -> Result<C64> {
        if thetas.len() != self.n_modes || xs.len() != self.n_modes {
            return Err(TomoError::ModeCount { symbol: self.n_modes, state: thetas.len() });
        }
        let norm = PI.powi(self.n_modes as i32);
        Ok(self
            .terms
            .iter()
            .map(|(c, fs)| {
                c * fs
                    .iter()
                    .enumerate()
                    .map(|(m, f)| f.eval(thetas[m], xs[m]))
                    .product::<C64>()
            })
            .sum::<C64>()
            / norm)
    }

    /// Sampled values of a single-mode symbol, including the `1/pi` factor.
    pub fn sample_single(&self, agrid: &AngleGrid, grid: &Grid1D) -> Result<Array2<C64>> {
        if self.n_modes != 1 {
            return Err(TomoError::ModeCount { symbol: self.n_modes, state: 1 });
        }
        let mut acc = Array2::<C64>::zeros((agrid.len(), grid.len()));
        for (c, fs) in &self.terms {
            let s = fs[0].sample(agrid, grid);
            acc.zip_mut_with(&s, |a, &b| *a += c * b / PI);
        }
        Ok(acc)
    }
}

fn single_mode_dual(label: &str, n_modes: usize, poly: Vec<(C64, ThetaFn, u32)>) -> RegularDualSymbol {
    let mut factors = vec![AngleXPoly::one(); n_modes];
    factors[0] = AngleXPoly::new(poly);
    RegularDualSymbol {
        label: label.into(),
        n_modes,
        terms: vec![(C64::new(1.0, 0.0), factors)],
    }
}

/// Angular-momentum dual `l_axis`: `4 X_a X_b sin(theta_b - theta_a) / pi^n`
/// on the same zero-based mode pair `(axis % 3, (axis + 1) % 3)` as the
/// two-mode tomogram operator. The per-mode `1/pi` convention makes the
/// prefactor `4 / pi^n` for `n` total modes; each inactive mode pairs to 1.
fn l_dual(axis: usize, n_modes: usize) -> Result<RegularDualSymbol> {
    if !(1..=3).contains(&axis) {
        return Err(TomoError::InvalidArgument(format!(
            "angular momentum axis {axis} not in 1..=3"
        )));
    }
    let (ma, mb) = (axis % 3, (axis + 1) % 3);
    if n_modes <= ma.max(mb) {
        return Err(TomoError::ModeCount { symbol: ma.max(mb) + 1, state: n_modes });
    }
    let one = C64::new(1.0, 0.0);
    let xcos = AngleXPoly::new(vec![(one, ThetaFn::Cos, 1)]);
    let xsin = AngleXPoly::new(vec![(one, ThetaFn::Sin, 1)]);
    // sin(theta_b - theta_a) = sin_b cos_a - cos_b sin_a
    let mut t1 = vec![AngleXPoly::one(); n_modes];
    t1[ma] = xcos.clone();
    t1[mb] = xsin.clone();
    let mut t2 = vec![AngleXPoly::one(); n_modes];
    t2[ma] = xsin;
    t2[mb] = xcos;
    Ok(RegularDualSymbol {
        label: format!("l{axis}"),
        n_modes,
        terms: vec![(C64::new(4.0, 0.0), t1), (C64::new(-4.0, 0.0), t2)],
    })
}

/// Catalogue of smooth dual symbols. Single-mode observables act on mode 0
/// of an `n_modes`-mode product; `l1`, `l2`, `l3` act on their fixed mode
/// pair.
pub fn dual_regular(name: &str, n_modes: usize) -> Result<RegularDualSymbol> {
    if n_modes == 0 {
        return Err(TomoError::InvalidArgument("need at least one mode".into()));
    }
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let sm = |poly| Ok(single_mode_dual(name, n_modes, poly));
    match name {
        "one" => sm(vec![(one, ThetaFn::One, 0)]),
        "q" => sm(vec![(2.0 * one, ThetaFn::Cos, 1)]),
        "p" => sm(vec![(2.0 * one, ThetaFn::Sin, 1)]),
        "q2" => sm(vec![(one, ThetaFn::One, 2), (2.0 * one, ThetaFn::CosTwo, 2)]),
        "p2" => sm(vec![(one, ThetaFn::One, 2), (-2.0 * one, ThetaFn::CosTwo, 2)]),
        "qp" => sm(vec![(2.0 * one, ThetaFn::SinTwo, 2), (0.5 * i, ThetaFn::One, 0)]),
        "a" => sm(vec![(SQRT_2 * one, ThetaFn::ExpPlus, 1)]),
        "adag" => sm(vec![(SQRT_2 * one, ThetaFn::ExpMinus, 1)]),
        "N" => sm(vec![(one, ThetaFn::One, 2), (-0.5 * one, ThetaFn::One, 0)]),
        "l1" => l_dual(1, n_modes),
        "l2" => l_dual(2, n_modes),
        "l3" => l_dual(3, n_modes),
        _ => Err(TomoError::UnknownName(name.into())),
    }
}

// ---------------------------------------------------------------------------
// Singular dual symbols

/// Delta-concentrated dual symbol: a list of `(theta0, g(X))` slice
/// functionals plus a flat constant term `c` that pairs as
/// `c * (1/pi) iint w = c` on a normalized single-mode tomogram.
#[derive(Debug, Clone)]
pub struct SingularDualSymbol {
    label: String,
    delta_terms: Vec<(f64, Vec<(C64, u32)>)>,
    constant_term: C64,
}

impl SingularDualSymbol {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn delta_terms(&self) -> &[(f64, Vec<(C64, u32)>)] {
        &self.delta_terms
    }

    pub fn constant_term(&self) -> C64 {
        self.constant_term
    }
}

/// Catalogue of delta-form dual symbols with the default reference angle 0.
pub fn dual_singular(name: &str) -> Result<SingularDualSymbol> {
    dual_singular_at(name, 0.0)
}

/// Same catalogue with a configurable reference angle for the identity (its
/// slice functional may sit at any angle because every slice integrates
/// to 1).
pub fn dual_singular_at(name: &str, theta0: f64) -> Result<SingularDualSymbol> {
    let one = C64::new(1.0, 0.0);
    let half = C64::new(0.5, 0.0);
    match name {
        "one" => Ok(SingularDualSymbol {
            label: name.into(),
            delta_terms: vec![(theta0, vec![(one, 0)])],
            constant_term: C64::default(),
        }),
        "q" => Ok(SingularDualSymbol {
            label: name.into(),
            delta_terms: vec![(0.0, vec![(one, 1)])],
            constant_term: C64::default(),
        }),
        "p" => Ok(SingularDualSymbol {
            label: name.into(),
            delta_terms: vec![(FRAC_PI_2, vec![(one, 1)])],
            constant_term: C64::default(),
        }),
        "qp" => Ok(SingularDualSymbol {
            label: name.into(),
            delta_terms: vec![
                (FRAC_PI_4, vec![(one, 2)]),
                (0.0, vec![(-half, 2)]),
                (FRAC_PI_2, vec![(-half, 2)]),
            ],
            constant_term: C64::new(0.0, 0.5),
        }),
        _ => Err(TomoError::UnknownName(name.into())),
    }
}

// ---------------------------------------------------------------------------
// Pairings

/// `(1/pi) iint f w dX dtheta` with a rectangle rule in theta and the
/// trapezoid rule in X.
fn pair_mode(poly: &AngleXPoly, w: &OpticalTomogram) -> C64 {
    let grid = w.xgrid();
    let agrid = w.agrid();
    let xs = grid.points();
    let mut acc = C64::default();
    for (t, &theta) in agrid.thetas().iter().enumerate() {
        let row: Vec<C64> = w
            .values()
            .row(t)
            .iter()
            .zip(&xs)
            .map(|(&v, &x)| poly.eval(theta, x) * v)
            .collect();
        acc += numgrid::integrate_c(&grid, &row);
    }
    acc * agrid.dtheta() / PI
}

/// Expectation of a single-mode regular dual symbol against a tomogram.
pub fn expect_regular(sym: &RegularDualSymbol, w: &OpticalTomogram) -> Result<C64> {
    if sym.n_modes != 1 {
        return Err(TomoError::ModeCount { symbol: sym.n_modes, state: 1 });
    }
    Ok(sym.terms.iter().map(|(c, fs)| c * pair_mode(&fs[0], w)).sum())
}

/// Expectation of a multimode regular dual symbol against a product state;
/// every tensor term factorizes into per-mode pairings.
pub fn expect_regular_multi(sym: &RegularDualSymbol, w: &MultimodeTomogram) -> Result<C64> {
    if sym.n_modes != w.n_modes() {
        return Err(TomoError::ModeCount { symbol: sym.n_modes, state: w.n_modes() });
    }
    let mut acc = C64::default();
    for (c, fs) in &sym.terms {
        let mut prod = *c;
        for (m, f) in fs.iter().enumerate() {
            prod *= pair_mode(f, w.mode(m)?);
        }
        acc += prod;
    }
    Ok(acc)
}

/// Expectation of a singular dual symbol: slice evaluations plus the flat
/// constant functional.
pub fn expect_singular(sym: &SingularDualSymbol, w: &OpticalTomogram) -> C64 {
    let grid = w.xgrid();
    let xs = grid.points();
    let mut acc = C64::default();
    for (theta0, gs) in &sym.delta_terms {
        let slice = w.slice_at(*theta0);
        let row: Vec<C64> = slice
            .iter()
            .zip(&xs)
            .map(|(&v, &x)| {
                gs.iter().map(|(c, k)| c * x.powi(*k as i32)).sum::<C64>() * v
            })
            .collect();
        acc += numgrid::integrate_c(&grid, &row);
    }
    if sym.constant_term != C64::default() {
        let mass: f64 = (0..w.agrid().len())
            .map(|t| numgrid::integrate(&grid, w.values().row(t).as_slice().unwrap()))
            .sum::<f64>()
            * w.agrid().dtheta();
        acc += sym.constant_term * mass / PI;
    }
    acc
}

/// Dual-symbol route to `<A B>`: pair the dual of `A` against the
/// tomogram-domain action of `B`, `iint w_A^(d) (B w) dX dtheta`.
pub fn dual_of_product(
    sym_a: &RegularDualSymbol,
    op_b: &TomogramOperator,
    w: &OpticalTomogram,
) -> Result<C64> {
    if sym_a.n_modes != 1 {
        return Err(TomoError::ModeCount { symbol: sym_a.n_modes, state: 1 });
    }
    let grid = w.xgrid();
    let agrid = w.agrid();
    let bw = op_b.apply_tomogram(w)?;
    let xs = grid.points();
    let thetas = agrid.thetas();
    let mut acc = C64::default();
    for (c, fs) in &sym_a.terms {
        let mut term = C64::default();
        for (t, &theta) in thetas.iter().enumerate() {
            let row: Vec<C64> = bw
                .row(t)
                .iter()
                .zip(&xs)
                .map(|(&v, &x)| fs[0].eval(theta, x) * v)
                .collect();
            term += numgrid::integrate_c(&grid, &row);
        }
        acc += c * term * agrid.dtheta() / PI;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Rewrite of operator forms into regular duals

/// Rewrites an elementary tomogram-domain operator into the smooth dual
/// symbol of the same expectation functional, by integrating each term by
/// parts in X and theta under `iint (.) w dX dtheta`:
///
/// - `X^m d^k/dX^k -> (-1)^k m!/(m-k)! X^{m-k}` (operands vanish at the
///   window edge);
/// - `X^m [d/dX]^{-1} -> -X^{m+1}/(m+1)` and
///   `X^m [d/dX]^{-2} -> X^{m+2}/((m+1)(m+2))`;
/// - `f(theta) d^d/dtheta^d -> (-1)^d f^(d)(theta)`.
///
/// Boundary functionals produced along the way (window-edge values of
/// inverse derivatives, slice differences at theta = 0 and pi) are dropped:
/// they cancel on symmetric X-grids by the tomogram reflection symmetry,
/// which the tests assert through expectation values. The result can differ
/// from the printed closed form by a null functional (a pure-theta term
/// whose angle integral vanishes on every tomogram).
pub fn derive_regular_dual(op: &TomogramOperator) -> Result<RegularDualSymbol> {
    let terms = op.terms().ok_or_else(|| {
        TomoError::Representation(format!(
            "operator `{}` is not elementary; rewrite applies to single factors only",
            op.label()
        ))
    })?;
    let mut poly: Vec<(C64, ThetaFn, u32)> = Vec::new();
    for term in terms {
        let m = term.xpow;
        // X-stage: weight multiplier and new power of X.
        let (xfac, xpow) = match term.xop {
            XOp::Id => (1.0, m),
            XOp::Dx(k) => {
                if m < k {
                    continue;
                }
                let falling: u32 = (m - k + 1..=m).product();
                (if k % 2 == 0 { falling as f64 } else { -(falling as f64) }, m - k)
            }
            XOp::Inv(1) => (-1.0 / f64::from(m + 1), m + 1),
            XOp::Inv(2) => (1.0 / f64::from((m + 1) * (m + 2)), m + 2),
            XOp::Inv(k) => {
                return Err(TomoError::InvalidArgument(format!(
                    "unsupported inverse-derivative order {k}"
                )));
            }
        };
        // theta-stage: repeated integration by parts.
        let mut fs = vec![(term.coeff * xfac, term.theta)];
        for _ in 0..term.thetad {
            let mut next = Vec::new();
            for (c, f) in &fs {
                for (dc, df) in f.derivative() {
                    next.push((-c * dc, df));
                }
            }
            fs = next;
        }
        for (c, f) in fs {
            poly.push((c, f, xpow));
        }
    }
    Ok(single_mode_dual(&format!("dual({})", op.label()), 1, poly))
}

// ---------------------------------------------------------------------------
// Regularization rules

/// Finite-grid residue of a rule: the boundary functional that the formal
/// continuum identity discards, evaluated exactly so the rule can be
/// asserted on a finite window.
#[derive(Debug, Clone, Copy)]
enum Residue {
    None,
    /// `X [d/dX]^{-1}`: the principal-value antiderivative reaches
    /// `+-(iint w)/2` at the window edges, leaving
    /// `(x_max^2 + x_min^2)/4 * iint w`.
    XInv1,
    /// `[d/dX]^{-2}`: two integrations by parts leave
    /// `(x_max^2 + x_min^2)/4 * iint w - (x_max + x_min)/2 * iint X w`.
    Inv2,
    /// `cos theta d/dtheta`: slice values at theta = 0 and pi survive; by
    /// the reflection symmetry both integrate to the slice mass, giving
    /// `-2 int w(X, 0) dX`.
    CosBoundary,
}

/// One functional rewrite rule: `iint (lhs w) dX dtheta` equals
/// `iint rhs w dX dtheta` plus the rule's finite-grid residue.
pub struct RegRule {
    label: &'static str,
    lhs: TomogramOperator,
    rhs: AngleXPoly,
    residue: Residue,
    /// Whether the per-angle slice functional flips sign under
    /// `theta -> theta + pi` (odd harmonics only). Such integrands need the
    /// exact odd-harmonic quadrature; the plain rectangle rule is already
    /// exact for the periodic ones.
    anti: bool,
}

/// Exact `int_0^pi s dtheta` for a smooth `s` containing only odd
/// harmonics `e^{i(2k+1)theta}`, sampled at `theta_j = j pi / n`:
/// demodulating by `e^{-i theta}` leaves a pi-periodic function whose
/// Fourier coefficients pair with `int_0^pi e^{i(2k+1)theta} dtheta
/// = 2i/(2k+1)`.
fn integrate_theta_anti(s: &[C64]) -> C64 {
    let n = s.len();
    let mut buf: Vec<C64> = s
        .iter()
        .enumerate()
        .map(|(j, &v)| v * C64::from_polar(1.0, -(j as f64) * PI / n as f64))
        .collect();
    let mut planner = rustfft::FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut buf);
    let mut acc = C64::default();
    for (m, c) in buf.iter().enumerate() {
        let k = if m <= n / 2 { m as i64 } else { m as i64 - n as i64 };
        acc += c / n as f64 * C64::new(0.0, 2.0 / (2 * k + 1) as f64);
    }
    acc
}

impl RegRule {
    pub fn label(&self) -> &'static str {
        self.label
    }

    /// `iint (lhs w) dX dtheta` minus the finite-grid residue. Inverse
    /// derivatives leave integrands with non-vanishing edge slope, so the
    /// X-integral uses the endpoint-corrected trapezoid rule.
    pub fn lhs_value(&self, w: &OpticalTomogram) -> Result<C64> {
        let grid = w.xgrid();
        let agrid = w.agrid();
        let a = self.lhs.apply_tomogram(w)?;
        let slices: Vec<C64> = (0..agrid.len())
            .map(|t| numgrid::integrate_em_c(&grid, a.row(t).as_slice().unwrap()))
            .collect();
        Ok(self.sum_theta(&agrid, &slices) - self.residue_value(w))
    }

    /// `iint rhs w dX dtheta`.
    pub fn rhs_value(&self, w: &OpticalTomogram) -> C64 {
        let grid = w.xgrid();
        let agrid = w.agrid();
        let xs = grid.points();
        let slices: Vec<C64> = agrid
            .thetas()
            .iter()
            .enumerate()
            .map(|(t, &theta)| {
                let row: Vec<C64> = w
                    .values()
                    .row(t)
                    .iter()
                    .zip(&xs)
                    .map(|(&v, &x)| self.rhs.eval(theta, x) * v)
                    .collect();
                numgrid::integrate_c(&grid, &row)
            })
            .collect();
        self.sum_theta(&agrid, &slices)
    }

    fn sum_theta(&self, agrid: &AngleGrid, slices: &[C64]) -> C64 {
        if self.anti {
            integrate_theta_anti(slices)
        } else {
            slices.iter().sum::<C64>() * agrid.dtheta()
        }
    }

    fn residue_value(&self, w: &OpticalTomogram) -> C64 {
        let grid = w.xgrid();
        let agrid = w.agrid();
        let xs = grid.points();
        let slice_int = |weight: &dyn Fn(f64) -> f64| -> f64 {
            (0..agrid.len())
                .map(|t| {
                    let row: Vec<f64> = w
                        .values()
                        .row(t)
                        .iter()
                        .zip(&xs)
                        .map(|(&v, &x)| weight(x) * v)
                        .collect();
                    numgrid::integrate(&grid, &row)
                })
                .sum::<f64>()
                * agrid.dtheta()
        };
        match self.residue {
            Residue::None => C64::default(),
            Residue::XInv1 => {
                let mass = slice_int(&|_| 1.0);
                let c = (grid.x_max().powi(2) + grid.x_min().powi(2)) / 4.0;
                C64::new(c * mass, 0.0)
            }
            Residue::Inv2 => {
                let mass = slice_int(&|_| 1.0);
                let m1 = slice_int(&|x| x);
                let c2 = (grid.x_max().powi(2) + grid.x_min().powi(2)) / 4.0;
                let c1 = (grid.x_max() + grid.x_min()) / 2.0;
                C64::new(c2 * mass - c1 * m1, 0.0)
            }
            Residue::CosBoundary => {
                let slice0 = numgrid::integrate(&grid, w.values().row(0).as_slice().unwrap());
                C64::new(-2.0 * slice0, 0.0)
            }
        }
    }
}

fn rule(
    label: &'static str,
    lhs: Vec<SymTerm>,
    rhs: Vec<(C64, ThetaFn, u32)>,
    residue: Residue,
    anti: bool,
) -> RegRule {
    RegRule {
        label,
        lhs: TomogramOperator::from_terms(label, lhs),
        rhs: AngleXPoly::new(rhs),
        residue,
        anti,
    }
}

/// The functional rewrite table used in intermediate calculations: each
/// entry states that the operator on the left, integrated against any
/// tomogram over the full `(X, theta)` window, equals plain integration
/// against the weight on the right (up to the entry's finite-window
/// residue). One printed source lists `(sin 2t / 2) d/dt -> -cos t`; the
/// derivative of `sin 2t / 2` is `cos 2t`, so the correct weight is
/// `-cos 2t`, which is what the numerical check confirms.
pub fn regularization_table() -> Vec<RegRule> {
    let one = C64::new(1.0, 0.0);
    let t = |c: f64, f: ThetaFn, xpow: u32, xop: XOp, d: u32| SymTerm {
        coeff: C64::new(c, 0.0),
        theta: f,
        xpow,
        xop,
        thetad: d,
    };
    vec![
        rule(
            "d/dX -> 0",
            vec![t(1.0, ThetaFn::One, 0, XOp::Dx(1), 0)],
            vec![],
            Residue::None,
            true,
        ),
        rule(
            "X d/dX -> -1",
            vec![t(1.0, ThetaFn::One, 1, XOp::Dx(1), 0)],
            vec![(-one, ThetaFn::One, 0)],
            Residue::None,
            false,
        ),
        rule(
            "d2/dX2 -> 0",
            vec![t(1.0, ThetaFn::One, 0, XOp::Dx(2), 0)],
            vec![],
            Residue::None,
            false,
        ),
        rule(
            "X^2 d2/dX2 -> 2",
            vec![t(1.0, ThetaFn::One, 2, XOp::Dx(2), 0)],
            vec![(2.0 * one, ThetaFn::One, 0)],
            Residue::None,
            false,
        ),
        rule(
            "[d/dX]^{-1} -> -X",
            vec![t(1.0, ThetaFn::One, 0, XOp::Inv(1), 0)],
            vec![(-one, ThetaFn::One, 1)],
            Residue::None,
            true,
        ),
        rule(
            "X [d/dX]^{-1} -> -X^2/2",
            vec![t(1.0, ThetaFn::One, 1, XOp::Inv(1), 0)],
            vec![(-0.5 * one, ThetaFn::One, 2)],
            Residue::XInv1,
            false,
        ),
        rule(
            "[d/dX]^{-2} -> X^2/2",
            vec![t(1.0, ThetaFn::One, 0, XOp::Inv(2), 0)],
            vec![(0.5 * one, ThetaFn::One, 2)],
            Residue::Inv2,
            false,
        ),
        rule(
            "d2/dt2 -> 0",
            vec![t(1.0, ThetaFn::One, 0, XOp::Id, 2)],
            vec![],
            Residue::None,
            false,
        ),
        rule(
            "sin t d/dt -> -cos t",
            vec![t(1.0, ThetaFn::Sin, 0, XOp::Id, 1)],
            vec![(-one, ThetaFn::Cos, 0)],
            Residue::None,
            true,
        ),
        rule(
            "sin^2 t d/dt -> -sin 2t",
            vec![t(1.0, ThetaFn::SinSq, 0, XOp::Id, 1)],
            vec![(-one, ThetaFn::SinTwo, 0)],
            Residue::None,
            false,
        ),
        rule(
            "(sin 2t)/2 d/dt -> -cos 2t",
            vec![t(0.5, ThetaFn::SinTwo, 0, XOp::Id, 1)],
            vec![(-one, ThetaFn::CosTwo, 0)],
            Residue::None,
            false,
        ),
        rule(
            "sin^2 t d2/dt2 -> 2 cos 2t",
            vec![t(1.0, ThetaFn::SinSq, 0, XOp::Id, 2)],
            vec![(2.0 * one, ThetaFn::CosTwo, 0)],
            Residue::None,
            false,
        ),
        rule(
            "(sin 2t)/2 d2/dt2 -> -2 sin 2t",
            vec![t(0.5, ThetaFn::SinTwo, 0, XOp::Id, 2)],
            vec![(-2.0 * one, ThetaFn::SinTwo, 0)],
            Residue::None,
            false,
        ),
        rule(
            "cos t d/dt -> sin t - boundary",
            vec![t(1.0, ThetaFn::Cos, 0, XOp::Id, 1)],
            vec![(one, ThetaFn::Sin, 0)],
            Residue::CosBoundary,
            true,
        ),
    ]
}
