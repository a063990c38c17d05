//! Cross-route verification suite: nine numeric checks covering the
//! eigenvalue relation of the tomographic number operator, dual-symbol
//! pairings, reconstruction round trips, correspondence rules, the
//! regularization table, angular momentum on product states, and the ladder
//! algebra. Each check reports a pass/fail flag and its worst
//! deviation-to-tolerance ratio.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::catalogue::{self, CatalogueState};
use crate::error::{Result, TomoError};
use crate::numgrid::{self, FilterSpec};
use crate::phasespace::{wigner_from_density, WignerFunction};
use crate::radon::{density_from_tomogram, tomogram_from_wigner};
use crate::states::{matrix_expectation, Observable, WaveFunction};
use crate::symbols::{
    dual_regular, dual_singular, expect_regular, expect_regular_multi, expect_singular,
    regularization_table,
};
use crate::tomops::{
    self, compose, expectation, op_a, op_adag, op_n, op_p, op_p2, op_q, op_q2, op_qp,
    rule_dp, rule_dq, rule_pmul, rule_qmul, theta_spread, MultimodeTomogram,
};

/// Outcome of one verification check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed deviation divided by its tolerance; < 1 means pass.
    pub margin: f64,
    pub detail: String,
}

impl CheckResult {
    fn from_deviations(name: &'static str, devs: &[(f64, f64, String)]) -> Self {
        let mut margin = 0.0_f64;
        let mut detail = String::new();
        for (dev, tol, what) in devs {
            let r = dev / tol;
            if r > margin {
                margin = r;
                detail = format!("{what}: deviation {dev:.3e} vs tolerance {tol:.1e}");
            }
        }
        CheckResult { name, passed: margin <= 1.0, margin, detail }
    }
}

fn l2(a: &Array2<C64>) -> f64 {
    a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Number-operator eigenvalue relation on Fock tomograms:
/// `|op_N w_n - n w_n| / |w_n| <= 1e-3` for n in 0..=3.
pub fn criterion_1() -> Result<CheckResult> {
    let mut devs = Vec::new();
    let op = op_n();
    for n in 0..=3usize {
        let w = catalogue::tomogram(CatalogueState::Fock(n));
        let img = op.apply_tomogram(&w)?;
        let wc = w.values().mapv(|v| C64::new(v, 0.0));
        let diff = &img - &wc.mapv(|v| v * n as f64);
        devs.push((l2(&diff) / l2(&wc), 1e-3, format!("fock {n}")));
    }
    Ok(CheckResult::from_deviations(
        "1: number operator eigenvalue relation on Fock tomograms",
        &devs,
    ))
}

/// Regular dual of the number operator pairs to n on Fock tomograms
/// within 1e-4.
pub fn criterion_2() -> Result<CheckResult> {
    let sym = dual_regular("N", 1)?;
    let mut devs = Vec::new();
    for n in 0..=3usize {
        let w = catalogue::tomogram(CatalogueState::Fock(n));
        let v = expect_regular(&sym, &w)?;
        devs.push(((v - n as f64).norm(), 1e-4, format!("fock {n}")));
    }
    Ok(CheckResult::from_deviations(
        "2: dual number symbol pairs to n on Fock tomograms",
        &devs,
    ))
}

/// Singular and regular position duals agree within 1e-5 on coherent
/// states, and both give sqrt(2) Re(alpha) within 1e-4.
pub fn criterion_3() -> Result<CheckResult> {
    let sing = dual_singular("q")?;
    let reg = dual_regular("q", 1)?;
    let mut devs = Vec::new();
    for state in catalogue::all_states() {
        let CatalogueState::Coherent(re, im) = state else { continue };
        if re.hypot(im) > 2.0 {
            continue;
        }
        let w = catalogue::tomogram(state);
        let s = expect_singular(&sing, &w);
        let r = expect_regular(&reg, &w)?;
        let exact = 2.0_f64.sqrt() * re;
        let label = state.label();
        devs.push(((s - r).norm(), 1e-5, format!("{label} routes")));
        devs.push(((s - exact).norm(), 1e-4, format!("{label} singular vs exact")));
        devs.push(((r - exact).norm(), 1e-4, format!("{label} regular vs exact")));
    }
    Ok(CheckResult::from_deviations(
        "3: singular and regular position duals agree on coherent states",
        &devs,
    ))
}

/// Reconstruction round trip: relative Frobenius error <= 1e-3 on the whole
/// catalogue, and fidelity >= 0.999 for Fock inputs n <= 2.
pub fn criterion_4() -> Result<CheckResult> {
    let grid = catalogue::grid();
    let filter = FilterSpec::default();
    let mut devs = Vec::new();
    for state in catalogue::all_states() {
        let rho = catalogue::density(state);
        let w = catalogue::tomogram(state);
        let (back, _) = density_from_tomogram(&w, &grid, &filter)?;
        let diff = back.matrix() - rho.matrix();
        let rel = l2(&diff) / l2(rho.matrix());
        devs.push((rel, 1e-3, format!("{} frobenius", state.label())));
        if let CatalogueState::Fock(n) = state {
            if n <= 2 {
                let fid = back.fidelity_with_pure(&WaveFunction::fock(grid, n)?);
                devs.push(((1.0 - fid).max(0.0), 1e-3, format!("fock {n} fidelity")));
            }
        }
    }
    Ok(CheckResult::from_deviations(
        "4: density reconstruction round trip on the catalogue",
        &devs,
    ))
}

/// Correspondence rules: tomogram-operator images of d/dq, d/dp, q*, p*
/// match the Radon transform of the equivalent phase-space operation within
/// 1e-4 sup-norm on the catalogue.
pub fn criterion_5() -> Result<CheckResult> {
    let grid = catalogue::grid();
    let agrid = catalogue::angles();
    let points = grid.points();
    let n = grid.len();
    let mut devs = Vec::new();
    for state in catalogue::all_states() {
        let rho = catalogue::density(state);
        let w = catalogue::tomogram(state);
        let wig = wigner_from_density(&rho, grid)?;

        let deriv_q = |vals: &Array2<f64>| -> Result<Array2<f64>> {
            let mut out = Array2::<f64>::zeros((n, n));
            for l in 0..n {
                let col: Vec<f64> = (0..n).map(|j| vals[(j, l)]).collect();
                let d = numgrid::deriv_x(&grid, &col, 1)?;
                for j in 0..n {
                    out[(j, l)] = d[j];
                }
            }
            Ok(out)
        };
        let deriv_p = |vals: &Array2<f64>| -> Result<Array2<f64>> {
            let mut out = Array2::<f64>::zeros((n, n));
            for j in 0..n {
                let row: Vec<f64> = (0..n).map(|l| vals[(j, l)]).collect();
                let d = numgrid::deriv_x(&grid, &row, 1)?;
                for l in 0..n {
                    out[(j, l)] = d[l];
                }
            }
            Ok(out)
        };
        let weight_q = |vals: &Array2<f64>| {
            let mut out = vals.clone();
            for (j, &q) in points.iter().enumerate() {
                for l in 0..n {
                    out[(j, l)] *= q;
                }
            }
            out
        };
        let weight_p = |vals: &Array2<f64>| {
            let mut out = vals.clone();
            for j in 0..n {
                for (l, &p) in points.iter().enumerate() {
                    out[(j, l)] *= p;
                }
            }
            out
        };

        let routes: Vec<(&str, Array2<f64>, Array2<f64>)> = vec![
            ("d/dq", rule_dq(&w)?, deriv_q(wig.values())?),
            ("d/dp", rule_dp(&w)?, deriv_p(wig.values())?),
            ("q*", rule_qmul(&w)?, weight_q(wig.values())),
            ("p*", rule_pmul(&w)?, weight_p(wig.values())),
        ];
        for (rule_name, direct, modified) in routes {
            let via = tomogram_from_wigner(
                &WignerFunction::from_values(grid, grid, modified)?,
                &agrid,
                &grid,
            )?;
            let mut worst = 0.0_f64;
            for t in 0..agrid.len() {
                for j in 0..n {
                    worst = worst.max((direct[(t, j)] - via.values()[(t, j)]).abs());
                }
            }
            devs.push((worst, 1e-4, format!("{} {rule_name}", state.label())));
        }
    }
    Ok(CheckResult::from_deviations(
        "5: correspondence rules match the phase-space routes",
        &devs,
    ))
}

/// Matrix trace, tomogram operator, and regular dual expectations agree
/// within 1e-3 for q, p, q2, p2, N, and symmetrized qp; per-slice integrals
/// are angle-independent to 1e-4 relative.
pub fn criterion_6() -> Result<CheckResult> {
    let params = crate::states::ModeParams::default();
    let obs_list: Vec<(Observable, &str, tomops::TomogramOperator)> = vec![
        (Observable::Q, "q", op_q(&params)),
        (Observable::P, "p", op_p(&params)),
        (Observable::Q2, "q2", op_q2(&params)),
        (Observable::P2, "p2", op_p2(&params)),
        (Observable::N, "N", op_n()),
        (Observable::QP, "qp", op_qp(&params)),
    ];
    let mut devs = Vec::new();
    for state in catalogue::all_states() {
        let rho = catalogue::density(state);
        let w = catalogue::tomogram(state);
        for (obs, name, op) in &obs_list {
            // Real parts: for qp the real part of the ordered expectation is
            // the symmetrized product (qp + pq)/2; the rest are Hermitian.
            let m = matrix_expectation(*obs, &rho).re;
            let t = expectation(op, &w)?.re;
            let d = expect_regular(&dual_regular(name, 1)?, &w)?.re;
            let label = format!("{} {name}", state.label());
            devs.push(((m - t).abs(), 1e-3, format!("{label} matrix vs tomops")));
            devs.push(((m - d).abs(), 1e-3, format!("{label} matrix vs dual")));
            devs.push(((t - d).abs(), 1e-3, format!("{label} tomops vs dual")));
            let (_, spread) = theta_spread(op, &w)?;
            devs.push((spread, 1e-4, format!("{label} angle spread")));
        }
    }
    Ok(CheckResult::from_deviations(
        "6: three expectation routes agree on the catalogue",
        &devs,
    ))
}

/// Every regularization-table identity holds within 1e-4 against every
/// catalogue tomogram.
pub fn criterion_7() -> Result<CheckResult> {
    let mut devs = Vec::new();
    for state in catalogue::all_states() {
        let w = catalogue::tomogram(state);
        for rule in regularization_table() {
            let lhs = rule.lhs_value(&w)?;
            let rhs = rule.rhs_value(&w);
            devs.push((
                (lhs - rhs).norm(),
                1e-4,
                format!("{} `{}`", state.label(), rule.label()),
            ));
        }
    }
    Ok(CheckResult::from_deviations(
        "7: regularization table holds on the catalogue",
        &devs,
    ))
}

/// Angular-momentum dual on coherent product states matches
/// 2 (Re a2 Im a3 - Im a2 Re a3) within 1e-3.
pub fn criterion_8() -> Result<CheckResult> {
    let sym = dual_regular("l1", 3)?;
    let vac = catalogue::tomogram(CatalogueState::Fock(0));
    let mut devs = Vec::new();
    for (a2, a3) in [
        (C64::new(1.0, 0.0), C64::new(0.0, 1.0)),
        (C64::new(0.8, 0.6), C64::new(1.2, -0.9)),
    ] {
        let w2 = catalogue::tomogram(CatalogueState::Coherent(a2.re, a2.im));
        let w3 = catalogue::tomogram(CatalogueState::Coherent(a3.re, a3.im));
        let w = MultimodeTomogram::product(vec![
            (*vac).clone(),
            (*w2).clone(),
            (*w3).clone(),
        ]);
        let got = expect_regular_multi(&sym, &w)?;
        let exact = 2.0 * (a2.re * a3.im - a2.im * a3.re);
        devs.push(((got - exact).norm(), 1e-3, format!("a2={a2}, a3={a3}")));
    }
    Ok(CheckResult::from_deviations(
        "8: angular momentum dual on coherent product states",
        &devs,
    ))
}

/// Ladder algebra on the catalogue: the commutator [a, a+] has expectation 1
/// within 1e-3, and the a+a route matches the number-operator route.
pub fn criterion_9() -> Result<CheckResult> {
    let a_adag = compose(&[op_a(), op_adag()]);
    let adag_a = compose(&[op_adag(), op_a()]);
    let number = op_n();
    let mut devs = Vec::new();
    for state in catalogue::all_states() {
        let w = catalogue::tomogram(state);
        let lower_first = expectation(&a_adag, &w)?;
        let raise_first = expectation(&adag_a, &w)?;
        let n_route = expectation(&number, &w)?;
        let label = state.label();
        devs.push((
            (lower_first - raise_first - 1.0).norm(),
            1e-3,
            format!("{label} commutator"),
        ));
        devs.push((
            (raise_first - n_route).norm(),
            1e-3,
            format!("{label} a+a vs N"),
        ));
    }
    Ok(CheckResult::from_deviations(
        "9: ladder commutator and number route on the catalogue",
        &devs,
    ))
}

/// All nine checks in order.
pub fn acceptance_suite() -> Result<Vec<CheckResult>> {
    Ok(vec![
        criterion_1()?,
        criterion_2()?,
        criterion_3()?,
        criterion_4()?,
        criterion_5()?,
        criterion_6()?,
        criterion_7()?,
        criterion_8()?,
        criterion_9()?,
    ])
}

/// Named suites: `all` runs everything, `quick` skips the two
/// backprojection-heavy round-trip checks (4 and 5).
pub fn suite(name: &str) -> Result<Vec<CheckResult>> {
    match name {
        "all" => acceptance_suite(),
        "quick" => Ok(vec![
            criterion_1()?,
            criterion_2()?,
            criterion_3()?,
            criterion_6()?,
            criterion_7()?,
            criterion_8()?,
            criterion_9()?,
        ]),
        other => Err(TomoError::UnknownName(format!("suite `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_is_green() {
        for check in suite("quick").unwrap() {
            assert!(
                check.passed,
                "{} failed (margin {:.3}): {}",
                check.name, check.margin, check.detail
            );
        }
        assert!(suite("bogus").is_err());
    }
}
