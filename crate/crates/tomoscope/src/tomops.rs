//! Quantum operators acting directly on optical tomograms.
//!
//! Every operator here is the tomographic image of left multiplication by
//! the corresponding coordinate-representation operator: if `w` is the
//! tomogram of `rho`, then `op.apply(w)` is the (generally complex) symbol
//! of `A rho` on the same `(theta, X)` grid. Sums of products of such
//! operators map to sums of products of their tomographic forms, so
//! composition is plain chaining.
//!
//! Expectations follow from `Tr(A rho) = (1/pi) \iint (A w) dX dtheta`,
//! the X-integral of a symbol being theta-independent.

use std::f64::consts::{PI, SQRT_2};

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Result, TomoError};
use crate::numgrid::{self, AngleGrid, Grid1D};
use crate::radon::OpticalTomogram;
use crate::states::ModeParams;

// ---------------------------------------------------------------------------
// Symbolic term layer

/// Angle-dependent coefficient of a term, kept symbolic so downstream code
/// can differentiate it and read off boundary values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaFn {
    One,
    Cos,
    Sin,
    CosSq,
    SinSq,
    /// sin(2 theta)
    SinTwo,
    /// cos(2 theta)
    CosTwo,
    /// e^{+i theta}
    ExpPlus,
    /// e^{-i theta}
    ExpMinus,
}

impl ThetaFn {
    pub fn eval(&self, theta: f64) -> C64 {
        match self {
            Self::One => C64::new(1.0, 0.0),
            Self::Cos => C64::new(theta.cos(), 0.0),
            Self::Sin => C64::new(theta.sin(), 0.0),
            Self::CosSq => C64::new(theta.cos().powi(2), 0.0),
            Self::SinSq => C64::new(theta.sin().powi(2), 0.0),
            Self::SinTwo => C64::new((2.0 * theta).sin(), 0.0),
            Self::CosTwo => C64::new((2.0 * theta).cos(), 0.0),
            Self::ExpPlus => C64::from_polar(1.0, theta),
            Self::ExpMinus => C64::from_polar(1.0, -theta),
        }
    }

    /// d/dtheta as a weighted list of catalogue functions.
    pub fn derivative(&self) -> Vec<(C64, ThetaFn)> {
        let r = |v: f64, f: ThetaFn| (C64::new(v, 0.0), f);
        match self {
            Self::One => vec![],
            Self::Cos => vec![r(-1.0, Self::Sin)],
            Self::Sin => vec![r(1.0, Self::Cos)],
            Self::CosSq => vec![r(-1.0, Self::SinTwo)],
            Self::SinSq => vec![r(1.0, Self::SinTwo)],
            Self::SinTwo => vec![r(2.0, Self::CosTwo)],
            Self::CosTwo => vec![r(-2.0, Self::SinTwo)],
            Self::ExpPlus => vec![(C64::new(0.0, 1.0), Self::ExpPlus)],
            Self::ExpMinus => vec![(C64::new(0.0, -1.0), Self::ExpMinus)],
        }
    }
}

/// X-direction primitive of a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XOp {
    Id,
    /// spectral d^p/dX^p, p in {1, 2}
    Dx(u32),
    /// principal-value [d/dX]^{-p}, p in {1, 2}
    Inv(u32),
}

/// One elementary term `coeff * f(theta) * X^xpow * XOp * (d/dtheta)^thetad`,
/// applied right to left.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymTerm {
    pub coeff: C64,
    pub theta: ThetaFn,
    pub xpow: u32,
    pub xop: XOp,
    pub thetad: u32,
}

impl SymTerm {
    fn new(coeff: C64, theta: ThetaFn, xpow: u32, xop: XOp, thetad: u32) -> Self {
        Self { coeff, theta, xpow, xop, thetad }
    }
}

fn apply_term(
    term: &SymTerm,
    agrid: &AngleGrid,
    grid: &Grid1D,
    w: &Array2<C64>,
) -> Array2<C64> {
    let mut v = match term.thetad {
        0 => w.clone(),
        d => numgrid::deriv_theta_c(agrid, grid, w, d),
    };
    let n = grid.len();
    if term.xop != XOp::Id {
        for t in 0..agrid.len() {
            let row: Vec<C64> = v.row(t).to_vec();
            let out = match term.xop {
                XOp::Dx(p) => numgrid::deriv_x_c(grid, &row, p),
                XOp::Inv(p) => numgrid::antideriv_pv_c(grid, &row, p),
                XOp::Id => unreachable!(),
            };
            for (j, val) in out.into_iter().enumerate() {
                v[(t, j)] = val;
            }
        }
    }
    let xs = grid.points();
    for (t, &theta) in agrid.thetas().iter().enumerate() {
        let f = term.coeff * term.theta.eval(theta);
        for j in 0..n {
            v[(t, j)] *= f * xs[j].powi(term.xpow as i32);
        }
    }
    v
}

// ---------------------------------------------------------------------------
// Operators

/// A linear map on tomogram arrays: a sum `sum_i C_i prod_k A_ik` where each
/// elementary factor is a list of [`SymTerm`]s.
#[derive(Debug, Clone)]
pub struct TomogramOperator {
    label: String,
    sum: Vec<(C64, Vec<Vec<SymTerm>>)>,
}

impl TomogramOperator {
    fn elementary(label: &str, terms: Vec<SymTerm>) -> Self {
        Self { label: label.into(), sum: vec![(C64::new(1.0, 0.0), vec![terms])] }
    }

    /// Builds an elementary operator from explicit terms.
    pub(crate) fn from_terms(label: &str, terms: Vec<SymTerm>) -> Self {
        Self::elementary(label, terms)
    }

    pub fn identity() -> Self {
        Self { label: "1".into(), sum: vec![(C64::new(1.0, 0.0), vec![])] }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Terms of a purely elementary operator (one product of one factor),
    /// as consumed by the functional-rewrite machinery.
    pub fn terms(&self) -> Option<&[SymTerm]> {
        match self.sum.as_slice() {
            [(c, factors)] if factors.len() == 1 && *c == C64::new(1.0, 0.0) => {
                Some(&factors[0])
            }
            _ => None,
        }
    }

    /// Apply to a complex array on the `(theta, X)` lattice.
    pub fn apply(
        &self,
        agrid: &AngleGrid,
        grid: &Grid1D,
        w: &Array2<C64>,
    ) -> Result<Array2<C64>> {
        if w.dim() != (agrid.len(), grid.len()) {
            return Err(TomoError::DimensionMismatch {
                expected: agrid.len() * grid.len(),
                got: w.dim().0 * w.dim().1,
            });
        }
        let mut acc = Array2::<C64>::zeros(w.dim());
        for (c, factors) in &self.sum {
            let mut v = w.clone();
            for factor in factors.iter().rev() {
                let mut next = Array2::<C64>::zeros(w.dim());
                for term in factor {
                    next += &apply_term(term, agrid, grid, &v);
                }
                v = next;
            }
            acc.zip_mut_with(&v, |a, &b| *a += c * b);
        }
        Ok(acc)
    }

    pub fn apply_tomogram(&self, w: &OpticalTomogram) -> Result<Array2<C64>> {
        let c = w.values().mapv(|v| C64::new(v, 0.0));
        self.apply(&w.agrid(), &w.xgrid(), &c)
    }

    pub fn scale(mut self, c: C64) -> Self {
        for (w, _) in &mut self.sum {
            *w *= c;
        }
        self
    }
}

/// Product `ops[0] ops[1] ...` applied right to left; empty input is the
/// identity.
pub fn compose(ops: &[TomogramOperator]) -> TomogramOperator {
    let mut sum = vec![(C64::new(1.0, 0.0), Vec::<Vec<SymTerm>>::new())];
    let mut label = String::new();
    for op in ops {
        let mut next = Vec::new();
        for (c1, f1) in &sum {
            for (c2, f2) in &op.sum {
                let mut fs = f1.clone();
                fs.extend(f2.iter().cloned());
                next.push((c1 * c2, fs));
            }
        }
        sum = next;
        if !label.is_empty() {
            label.push('*');
        }
        label.push_str(&op.label);
    }
    if label.is_empty() {
        label = "1".into();
    }
    TomogramOperator { label, sum }
}

/// Weighted sum of operators.
pub fn linear_combination(terms: &[(C64, TomogramOperator)]) -> TomogramOperator {
    let mut sum = Vec::new();
    let mut label = String::new();
    for (c, op) in terms {
        for (c2, fs) in &op.sum {
            sum.push((c * c2, fs.clone()));
        }
        if !label.is_empty() {
            label.push('+');
        }
        label.push_str(&op.label);
    }
    TomogramOperator { label, sum }
}

/// Position quadrature: `sin t [d/dX]^{-1} d/dt + X cos t + (i hbar / 2 m w) sin t d/dX`.
pub fn op_q(params: &ModeParams) -> TomogramOperator {
    let r = params.hbar / (params.mass * params.omega);
    TomogramOperator::elementary(
        "q",
        vec![
            SymTerm::new(C64::new(1.0, 0.0), ThetaFn::Sin, 0, XOp::Inv(1), 1),
            SymTerm::new(C64::new(1.0, 0.0), ThetaFn::Cos, 1, XOp::Id, 0),
            SymTerm::new(C64::new(0.0, 0.5 * r), ThetaFn::Sin, 0, XOp::Dx(1), 0),
        ],
    )
}

/// Momentum: `m w (-cos t [d/dX]^{-1} d/dt + X sin t) - (i hbar / 2) cos t d/dX`.
pub fn op_p(params: &ModeParams) -> TomogramOperator {
    let mw = params.mass * params.omega;
    TomogramOperator::elementary(
        "p",
        vec![
            SymTerm::new(C64::new(-mw, 0.0), ThetaFn::Cos, 0, XOp::Inv(1), 1),
            SymTerm::new(C64::new(mw, 0.0), ThetaFn::Sin, 1, XOp::Id, 0),
            SymTerm::new(C64::new(0.0, -0.5 * params.hbar), ThetaFn::Cos, 0, XOp::Dx(1), 0),
        ],
    )
}

/// Squared position, written out term by term.
pub fn op_q2(params: &ModeParams) -> TomogramOperator {
    let r = params.hbar / (params.mass * params.omega);
    let one = C64::new(1.0, 0.0);
    TomogramOperator::elementary(
        "q2",
        vec![
            SymTerm::new(one, ThetaFn::SinSq, 0, XOp::Inv(2), 2),
            SymTerm::new(one, ThetaFn::SinSq, 0, XOp::Inv(2), 0),
            SymTerm::new(one, ThetaFn::SinTwo, 1, XOp::Inv(1), 1),
            SymTerm::new(-one, ThetaFn::SinSq, 1, XOp::Inv(1), 0),
            SymTerm::new(one, ThetaFn::CosSq, 2, XOp::Id, 0),
            SymTerm::new(C64::new(0.0, r), ThetaFn::SinSq, 0, XOp::Id, 1),
            SymTerm::new(C64::new(0.0, 0.5 * r), ThetaFn::SinTwo, 0, XOp::Id, 0),
            SymTerm::new(C64::new(0.0, 0.5 * r), ThetaFn::SinTwo, 1, XOp::Dx(1), 0),
            SymTerm::new(C64::new(-0.25 * r * r, 0.0), ThetaFn::SinSq, 0, XOp::Dx(2), 0),
        ],
    )
}

/// Squared momentum.
pub fn op_p2(params: &ModeParams) -> TomogramOperator {
    let mw = params.mass * params.omega;
    let m2 = C64::new(mw * mw, 0.0);
    let hb = params.hbar;
    TomogramOperator::elementary(
        "p2",
        vec![
            SymTerm::new(m2, ThetaFn::CosSq, 0, XOp::Inv(2), 2),
            SymTerm::new(m2, ThetaFn::CosSq, 0, XOp::Inv(2), 0),
            SymTerm::new(-m2, ThetaFn::SinTwo, 1, XOp::Inv(1), 1),
            SymTerm::new(-m2, ThetaFn::CosSq, 1, XOp::Inv(1), 0),
            SymTerm::new(m2, ThetaFn::SinSq, 2, XOp::Id, 0),
            SymTerm::new(C64::new(0.0, -hb * mw), ThetaFn::CosSq, 0, XOp::Id, 1),
            SymTerm::new(C64::new(0.0, 0.5 * hb * mw), ThetaFn::SinTwo, 0, XOp::Id, 0),
            SymTerm::new(C64::new(0.0, 0.5 * hb * mw), ThetaFn::SinTwo, 1, XOp::Dx(1), 0),
            SymTerm::new(C64::new(-0.25 * hb * hb, 0.0), ThetaFn::CosSq, 0, XOp::Dx(2), 0),
        ],
    )
}

/// Ordered product `q p`, built as the composition of the two quadratures
/// (left multiplications compose exactly).
pub fn op_qp(params: &ModeParams) -> TomogramOperator {
    let mut op = compose(&[op_q(params), op_p(params)]);
    op.label = "qp".into();
    op
}

/// Annihilation operator (oscillator units).
pub fn op_a() -> TomogramOperator {
    let s = 1.0 / SQRT_2;
    TomogramOperator::elementary(
        "a",
        vec![
            SymTerm::new(C64::new(0.5 * s, 0.0), ThetaFn::ExpPlus, 0, XOp::Dx(1), 0),
            SymTerm::new(C64::new(s, 0.0), ThetaFn::ExpPlus, 1, XOp::Id, 0),
            SymTerm::new(C64::new(0.0, -s), ThetaFn::ExpPlus, 0, XOp::Inv(1), 1),
        ],
    )
}

/// Creation operator. Like every operator in this module it is the image of
/// LEFT multiplication; the mirror image of [`op_a`] (i -> -i everywhere)
/// would instead be right multiplication by the adjoint, which has the same
/// trace pairings but a different pointwise action. The two differ only in
/// the sign of the d/dX term.
pub fn op_adag() -> TomogramOperator {
    let s = 1.0 / SQRT_2;
    TomogramOperator::elementary(
        "adag",
        vec![
            SymTerm::new(C64::new(-0.5 * s, 0.0), ThetaFn::ExpMinus, 0, XOp::Dx(1), 0),
            SymTerm::new(C64::new(s, 0.0), ThetaFn::ExpMinus, 1, XOp::Id, 0),
            SymTerm::new(C64::new(0.0, s), ThetaFn::ExpMinus, 0, XOp::Inv(1), 1),
        ],
    )
}

/// Number operator
/// `(1/2){[d/dX]^{-2}(d2/dt2 + 1) + X^2 - X [d/dX]^{-1} - (1/4) d2/dX2 + i d/dt - 1}`.
pub fn op_n() -> TomogramOperator {
    let h = C64::new(0.5, 0.0);
    TomogramOperator::elementary(
        "N",
        vec![
            SymTerm::new(h, ThetaFn::One, 0, XOp::Inv(2), 2),
            SymTerm::new(h, ThetaFn::One, 0, XOp::Inv(2), 0),
            SymTerm::new(h, ThetaFn::One, 2, XOp::Id, 0),
            SymTerm::new(-h, ThetaFn::One, 1, XOp::Inv(1), 0),
            SymTerm::new(C64::new(-0.125, 0.0), ThetaFn::One, 0, XOp::Dx(2), 0),
            SymTerm::new(C64::new(0.0, 0.5), ThetaFn::One, 0, XOp::Id, 1),
            SymTerm::new(-h, ThetaFn::One, 0, XOp::Id, 0),
        ],
    )
}

// ---------------------------------------------------------------------------
// Correspondence rules on real tomograms

fn rule(op: &TomogramOperator, w: &OpticalTomogram) -> Result<Array2<f64>> {
    Ok(op.apply_tomogram(w)?.mapv(|v| v.re))
}

/// Image of `dW/dq`: `cos t dw/dX`.
pub fn rule_dq(w: &OpticalTomogram) -> Result<Array2<f64>> {
    rule(
        &TomogramOperator::elementary(
            "dq",
            vec![SymTerm::new(C64::new(1.0, 0.0), ThetaFn::Cos, 0, XOp::Dx(1), 0)],
        ),
        w,
    )
}

/// Image of `dW/dp`: `sin t dw/dX`.
pub fn rule_dp(w: &OpticalTomogram) -> Result<Array2<f64>> {
    rule(
        &TomogramOperator::elementary(
            "dp",
            vec![SymTerm::new(C64::new(1.0, 0.0), ThetaFn::Sin, 0, XOp::Dx(1), 0)],
        ),
        w,
    )
}

/// Image of `q W`: `sin t [d/dX]^{-1} d/dt + X cos t`.
pub fn rule_qmul(w: &OpticalTomogram) -> Result<Array2<f64>> {
    rule(
        &TomogramOperator::elementary(
            "qmul",
            vec![
                SymTerm::new(C64::new(1.0, 0.0), ThetaFn::Sin, 0, XOp::Inv(1), 1),
                SymTerm::new(C64::new(1.0, 0.0), ThetaFn::Cos, 1, XOp::Id, 0),
            ],
        ),
        w,
    )
}

/// Image of `p W`: `-cos t [d/dX]^{-1} d/dt + X sin t`.
pub fn rule_pmul(w: &OpticalTomogram) -> Result<Array2<f64>> {
    rule(
        &TomogramOperator::elementary(
            "pmul",
            vec![
                SymTerm::new(C64::new(-1.0, 0.0), ThetaFn::Cos, 0, XOp::Inv(1), 1),
                SymTerm::new(C64::new(1.0, 0.0), ThetaFn::Sin, 1, XOp::Id, 0),
            ],
        ),
        w,
    )
}

// ---------------------------------------------------------------------------
// Expectations

/// `Tr(A rho) = (1/pi) \iint (A w) dX dtheta`.
pub fn expectation(op: &TomogramOperator, w: &OpticalTomogram) -> Result<C64> {
    Ok(slice_integrals(op, w)?.iter().sum::<C64>() * w.agrid().dtheta() / PI)
}

/// Per-slice integrals `\int (A w)(X, theta) dX`.
pub fn slice_integrals(op: &TomogramOperator, w: &OpticalTomogram) -> Result<Vec<C64>> {
    let a = op.apply_tomogram(w)?;
    let grid = w.xgrid();
    Ok((0..w.agrid().len())
        .map(|t| numgrid::integrate_c(&grid, a.row(t).as_slice().unwrap()))
        .collect())
}

/// Relative spread of the per-slice integrals around their mean
/// (they are theta-independent for an exact symbol).
pub fn theta_spread(op: &TomogramOperator, w: &OpticalTomogram) -> Result<(C64, f64)> {
    let s = slice_integrals(op, w)?;
    let mean = s.iter().sum::<C64>() / s.len() as f64;
    let spread = s
        .iter()
        .map(|v| (v - mean).norm())
        .fold(0.0, f64::max);
    Ok((mean, spread / mean.norm().max(1.0)))
}

// ---------------------------------------------------------------------------
// Two-mode operators on product states

/// Product-form multimode tomogram. Entangled joint arrays are not
/// representable; operations needing one report a representation error.
#[derive(Debug, Clone)]
pub struct MultimodeTomogram {
    modes: Vec<OpticalTomogram>,
}

impl MultimodeTomogram {
    pub fn product(modes: Vec<OpticalTomogram>) -> Self {
        Self { modes }
    }

    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn mode(&self, i: usize) -> Result<&OpticalTomogram> {
        self.modes.get(i).ok_or(TomoError::ModeCount {
            symbol: i + 1,
            state: self.modes.len(),
        })
    }
}

/// `sum_i C_i A_i (x) B_i` acting on modes `(mode_a, mode_b)`.
#[derive(Debug, Clone)]
pub struct TwoModeOperator {
    pub label: String,
    pub mode_a: usize,
    pub mode_b: usize,
    sum: Vec<(C64, TomogramOperator, TomogramOperator)>,
}

/// Angular momentum component `l_axis` (axis in 1..=3): for axis 1,
/// `q_2 p_3 - p_2 q_3` on zero-based modes (1, 2); other axes by cyclic
/// replacement.
pub fn op_l(axis: usize) -> Result<TwoModeOperator> {
    if !(1..=3).contains(&axis) {
        return Err(TomoError::InvalidArgument(format!(
            "angular momentum axis {axis} not in 1..=3"
        )));
    }
    let params = ModeParams::default();
    let one = C64::new(1.0, 0.0);
    Ok(TwoModeOperator {
        label: format!("l{axis}"),
        mode_a: axis % 3,
        mode_b: (axis + 1) % 3,
        sum: vec![
            (one, op_q(&params), op_p(&params)),
            (-one, op_p(&params), op_q(&params)),
        ],
    })
}

/// Expectation of a two-mode operator on a product state: each tensor term
/// factorizes into single-mode expectations.
pub fn expectation_two(op: &TwoModeOperator, w: &MultimodeTomogram) -> Result<C64> {
    let wa = w.mode(op.mode_a)?;
    let wb = w.mode(op.mode_b)?;
    let mut acc = C64::new(0.0, 0.0);
    for (c, oa, ob) in &op.sum {
        acc += c * expectation(oa, wa)? * expectation(ob, wb)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::{self, CatalogueState};
    use crate::phasespace::wigner_from_density;
    use crate::radon::{tomogram_from_density, tomogram_from_wigner};
    use crate::states::{matrix_expectation, Observable};
    use rand::{Rng, SeedableRng};

    fn sup(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn operators_are_linear_on_random_arrays() {
        let agrid = catalogue::angles();
        let grid = catalogue::grid();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let dims = (agrid.len(), grid.len());
        let u = Array2::from_shape_fn(dims, |_| C64::new(rng.gen(), rng.gen()));
        let v = Array2::from_shape_fn(dims, |_| C64::new(rng.gen(), rng.gen()));
        let (a, b) = (C64::new(0.3, -0.7), C64::new(-1.1, 0.2));
        for op in [op_n(), op_qp(&ModeParams::default())] {
            let mixed = op.apply(&agrid, &grid, &(&u * a + &v * b)).unwrap();
            let split = op.apply(&agrid, &grid, &u).unwrap() * a
                + op.apply(&agrid, &grid, &v).unwrap() * b;
            let scale = mixed.iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(sup(&mixed, &split) < 1e-10 * scale.max(1.0));
        }
    }

    #[test]
    fn vacuum_first_and_second_moments() {
        let params = ModeParams::default();
        let w0 = catalogue::tomogram(CatalogueState::Fock(0));
        let eq = expectation(&op_q(&params), &w0).unwrap();
        assert!(eq.norm() < 1e-8, "vacuum <q> = {eq}");
        let eq2 = expectation(&op_q2(&params), &w0).unwrap();
        assert!((eq2.re - 0.5).abs() < 1e-4, "vacuum <q2> = {eq2}");
        assert!(eq2.im.abs() < 1e-8);
        let w1 = catalogue::tomogram(CatalogueState::Fock(1));
        let ep2 = expectation(&op_p2(&params), &w1).unwrap();
        assert!((ep2.re - 1.5).abs() < 1e-4, "fock1 <p2> = {ep2}");
    }

    #[test]
    fn expectations_match_matrix_traces_across_catalogue() {
        let params = ModeParams::default();
        let ops: Vec<(TomogramOperator, Observable)> = vec![
            (op_q(&params), Observable::Q),
            (op_p(&params), Observable::P),
            (op_q2(&params), Observable::Q2),
            (op_p2(&params), Observable::P2),
            (op_qp(&params), Observable::QP),
            (op_n(), Observable::N),
            (op_a(), Observable::A),
            (op_adag(), Observable::Adag),
        ];
        for state in [
            CatalogueState::Coherent(0.8, 0.6),
            CatalogueState::Fock(2),
            CatalogueState::Mixture,
        ] {
            let rho = catalogue::density(state);
            let w = catalogue::tomogram(state);
            for (op, obs) in &ops {
                let via_tomo = expectation(op, &w).unwrap();
                let via_matrix = matrix_expectation(*obs, &rho);
                assert!(
                    (via_tomo - via_matrix).norm() < 1e-3,
                    "{} on {}: {via_tomo} vs {via_matrix}",
                    op.label(),
                    state.label()
                );
            }
        }
    }

    #[test]
    fn number_operator_has_fock_eigenvalues() {
        let op = op_n();
        for n in 0..=3usize {
            let w = catalogue::tomogram(CatalogueState::Fock(n));
            let img = op.apply_tomogram(&w).unwrap();
            let mut num = 0.0;
            let mut den = 0.0;
            for (v, &t) in img.iter().zip(w.values().iter()) {
                num += (v - C64::new(n as f64 * t, 0.0)).norm_sqr();
                den += t * t;
            }
            let rel = (num / den).sqrt();
            assert!(rel < 1e-3, "fock {n} eigenvalue residual {rel:.3e}");
        }
        let e = expectation(&op, &catalogue::tomogram(CatalogueState::Coherent(0.8, 0.6)))
            .unwrap();
        assert!((e.re - 1.0).abs() < 1e-3, "coherent <N> = {e}");
    }

    #[test]
    fn ladder_operators_compose_to_the_number_operator() {
        let w = catalogue::tomogram(CatalogueState::Coherent(1.0, 0.0));
        let prod = compose(&[op_adag(), op_a()]);
        let lhs = prod.apply_tomogram(&w).unwrap();
        let rhs = op_n().apply_tomogram(&w).unwrap();
        assert!(sup(&lhs, &rhs) < 1e-6);
        // canonical commutator [a, a+] = 1 exercised on the vacuum
        let comm = linear_combination(&[
            (C64::new(1.0, 0.0), compose(&[op_a(), op_adag()])),
            (C64::new(-1.0, 0.0), compose(&[op_adag(), op_a()])),
        ]);
        let w0 = catalogue::tomogram(CatalogueState::Fock(0));
        let img = comm.apply_tomogram(&w0).unwrap();
        let back = w0.values().mapv(|v| C64::new(v, 0.0));
        assert!(sup(&img, &back) < 1e-3);
        let e = expectation(&op_a(), &catalogue::tomogram(CatalogueState::Fock(2))).unwrap();
        assert!(e.norm() < 1e-6, "<a> on a number state = {e}");
        let ec = expectation(&op_a(), &catalogue::tomogram(CatalogueState::Coherent(1.0, 0.0)))
            .unwrap();
        assert!((ec - C64::new(1.0, 0.0)).norm() < 1e-4, "<a> coherent = {ec}");
    }

    #[test]
    fn squared_quadrature_equals_self_composition() {
        let params = ModeParams::default();
        let w = catalogue::tomogram(CatalogueState::Coherent(1.2, -0.9));
        let direct = op_q2(&params).apply_tomogram(&w).unwrap();
        let squared = compose(&[op_q(&params), op_q(&params)])
            .apply_tomogram(&w)
            .unwrap();
        assert!(sup(&direct, &squared) < 1e-4);
        let empty = compose(&[]);
        let id = empty.apply_tomogram(&w).unwrap();
        assert!(sup(&id, &w.values().mapv(|v| C64::new(v, 0.0))) < 1e-15);
    }

    #[test]
    fn explicit_mode_parameters_match_matrix_traces() {
        let params = ModeParams { hbar: 1.0, mass: 2.0, omega: 3.0 };
        let rho = catalogue::density(CatalogueState::Coherent(0.8, 0.6));
        let w = tomogram_from_density(&rho, &catalogue::angles(), &params).unwrap();
        for (op, obs) in [(op_q(&params), Observable::Q), (op_p(&params), Observable::P)] {
            let via_tomo = expectation(&op, &w).unwrap();
            let via_matrix = matrix_expectation(obs, &rho);
            assert!(
                (via_tomo - via_matrix).norm() < 1e-3,
                "{}: {via_tomo} vs {via_matrix}",
                op.label()
            );
        }
    }

    #[test]
    fn slice_integrals_are_angle_independent() {
        let params = ModeParams::default();
        let w = catalogue::tomogram(CatalogueState::Mixture);
        for op in [op_q(&params), op_p2(&params), op_n()] {
            let (_, spread) = theta_spread(&op, &w).unwrap();
            assert!(spread < 1e-4, "{} spread {spread:.3e}", op.label());
        }
    }

    #[test]
    fn correspondence_rules_match_wigner_routes() {
        let grid = catalogue::grid();
        let agrid = catalogue::angles();
        let w0 = catalogue::tomogram(CatalogueState::Fock(0));
        // d/dq of the vacuum Wigner function radon-transforms to
        // -2 X cos(t) w_0(X)
        let img = rule_dq(&w0).unwrap();
        let mut worst = 0.0_f64;
        for (t, &theta) in agrid.thetas().iter().enumerate() {
            for (j, &x) in grid.points().iter().enumerate() {
                let exact = -2.0 * x * theta.cos() * PI.powf(-0.5) * (-x * x).exp();
                worst = worst.max((img[(t, j)] - exact).abs());
            }
        }
        assert!(worst < 1e-6, "rule_dq deviation {worst:.3e}");

        // multiplication rule against the explicit q-weighted Wigner route
        let state = CatalogueState::Coherent(1.0, 0.0);
        let rho = catalogue::density(state);
        let w = catalogue::tomogram(state);
        let wig = wigner_from_density(&rho, grid).unwrap();
        let mut weighted = wig.values().clone();
        for (j, &q) in grid.points().iter().enumerate() {
            for l in 0..grid.len() {
                weighted[(j, l)] *= q;
            }
        }
        let via_wigner = tomogram_from_wigner(
            &crate::phasespace::WignerFunction::from_values(grid, grid, weighted).unwrap(),
            &agrid,
            &grid,
        )
        .unwrap();
        let direct = rule_qmul(&w).unwrap();
        let mut worst = 0.0_f64;
        for t in 0..agrid.len() {
            for j in 0..grid.len() {
                worst = worst.max((direct[(t, j)] - via_wigner.values()[(t, j)]).abs());
            }
        }
        assert!(worst < 1e-4, "rule_qmul route deviation {worst:.3e}");
        let mean: C64 = {
            let arr = direct.mapv(|v| C64::new(v, 0.0));
            let sums: Vec<C64> = (0..agrid.len())
                .map(|t| {
                    numgrid::integrate_c(
                        &grid,
                        arr.row(t).to_vec().as_slice(),
                    )
                })
                .collect();
            sums.iter().sum::<C64>() * agrid.dtheta() / PI
        };
        assert!((mean.re - SQRT_2).abs() < 1e-5, "<q> via rule_qmul = {mean}");
    }

    #[test]
    fn angular_momentum_on_coherent_products() {
        let l1 = op_l(1).unwrap();
        let w = MultimodeTomogram::product(vec![
            catalogue::tomogram(CatalogueState::Fock(0)).as_ref().clone(),
            catalogue::tomogram(CatalogueState::Coherent(1.0, 0.0)).as_ref().clone(),
            catalogue::tomogram(CatalogueState::Coherent(0.0, 1.0)).as_ref().clone(),
        ]);
        let e = expectation_two(&l1, &w).unwrap();
        // <q2><p3> - <p2><q3> = sqrt2 * sqrt2 - 0 = 2
        assert!((e - C64::new(2.0, 0.0)).norm() < 1e-3, "l1 = {e}");

        let vac = MultimodeTomogram::product(vec![
            catalogue::tomogram(CatalogueState::Fock(0)).as_ref().clone(),
            catalogue::tomogram(CatalogueState::Fock(0)).as_ref().clone(),
            catalogue::tomogram(CatalogueState::Fock(0)).as_ref().clone(),
        ]);
        let e0 = expectation_two(&l1, &vac).unwrap();
        assert!(e0.norm() < 1e-6, "vacuum l1 = {e0}");
        assert!(op_l(4).is_err());
    }
}
