//! Reference states and cached tomograms shared by tests, benchmarks, and
//! the verification suite: Fock states 0-3, a handful of coherent states,
//! and an even Fock-0/1 mixture, all on the default grids.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_complex::Complex64 as C64;
use once_cell::sync::Lazy;

use crate::numgrid::{AngleGrid, Grid1D};
use crate::radon::{tomogram_from_density, OpticalTomogram};
use crate::states::{DensityMatrix, ModeParams, WaveFunction};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CatalogueState {
    Fock(usize),
    Coherent(f64, f64),
    /// 50/50 mixture of the two lowest Fock states.
    Mixture,
}

impl CatalogueState {
    pub fn label(&self) -> String {
        match self {
            Self::Fock(n) => format!("fock{n}"),
            Self::Coherent(re, im) => format!("coherent:{re},{im}"),
            Self::Mixture => "mix01".into(),
        }
    }
}

/// Every state exercised by the cross-route agreement tests.
pub fn all_states() -> Vec<CatalogueState> {
    vec![
        CatalogueState::Fock(0),
        CatalogueState::Fock(1),
        CatalogueState::Fock(2),
        CatalogueState::Fock(3),
        CatalogueState::Coherent(1.0, 0.0),
        CatalogueState::Coherent(0.0, 1.0),
        CatalogueState::Coherent(0.8, 0.6),
        CatalogueState::Coherent(1.2, -0.9),
        CatalogueState::Mixture,
    ]
}

pub fn grid() -> Grid1D {
    Grid1D::default_quadrature()
}

pub fn angles() -> AngleGrid {
    AngleGrid::new(180).expect("default angle grid")
}

static DENSITIES: Lazy<Mutex<HashMap<String, Arc<DensityMatrix>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));
static TOMOGRAMS: Lazy<Mutex<HashMap<String, Arc<OpticalTomogram>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

pub fn density(state: CatalogueState) -> Arc<DensityMatrix> {
    let key = state.label();
    if let Some(hit) = DENSITIES.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let g = grid();
    let rho = match state {
        CatalogueState::Fock(n) => {
            DensityMatrix::from_pure(&WaveFunction::fock(g, n).expect("fock state"))
        }
        CatalogueState::Coherent(re, im) => DensityMatrix::from_pure(
            &WaveFunction::coherent(g, C64::new(re, im)).expect("coherent state"),
        ),
        CatalogueState::Mixture => {
            let zero = DensityMatrix::from_pure(&WaveFunction::fock(g, 0).unwrap());
            let one = DensityMatrix::from_pure(&WaveFunction::fock(g, 1).unwrap());
            DensityMatrix::mix(&[(0.5, zero), (0.5, one)]).expect("mixture")
        }
    };
    let rho = Arc::new(rho);
    DENSITIES.lock().unwrap().insert(key, rho.clone());
    rho
}

/// Tomogram of a catalogue state at default mode parameters, computed once.
pub fn tomogram(state: CatalogueState) -> Arc<OpticalTomogram> {
    let key = state.label();
    if let Some(hit) = TOMOGRAMS.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let tomo = Arc::new(
        tomogram_from_density(&density(state), &angles(), &ModeParams::default())
            .expect("catalogue tomogram"),
    );
    TOMOGRAMS.lock().unwrap().insert(key, tomo.clone());
    tomo
}
