//! Built-in (model, trial) pairs so the standard curves are a one-flag
//! command, plus the double-well exploration case.

use num::BigRational;

use crate::poly::Poly;
use crate::reference::{exact_c2_ho, exact_e_ho};
use crate::scalar::rational;
use crate::state::{GaussianPolyState, PolynomialHamiltonian};

/// A named Hamiltonian/trial pair with any closed-form references attached.
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub hamiltonian: PolynomialHamiltonian,
    pub trial: GaussianPolyState,
    /// exact E(t), when the generating function has a closed form
    pub exact_e: Option<fn(f64) -> f64>,
    /// exact |C(τ)|², when the correlation has a closed form
    pub exact_c2: Option<fn(f64) -> f64>,
    /// suggested starting basis truncation for the diagonalization oracle
    pub oracle_m_start: usize,
}

fn ho_hamiltonian() -> PolynomialHamiltonian {
    PolynomialHamiltonian::new(Poly::from_terms(1, [(vec![2], rational(1, 1))]))
}

fn gauss_trial_1d() -> GaussianPolyState {
    GaussianPolyState::gaussian_1d(rational(1, 1))
}

/// The four standard pairs (`ho`, `ho_gauss`, `quartic`, `coupled2d`) plus
/// the `double_well` exploration entry.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "ho",
            description: "harmonic oscillator V = x², trial (x² − 1/2) e^(−2x²/5)",
            hamiltonian: ho_hamiltonian(),
            trial: GaussianPolyState::new(
                Poly::from_terms(1, [(vec![2], rational(1, 1)), (vec![0], rational(-1, 2))]),
                vec![rational(2, 5)],
                vec![rational(0, 1)],
            )
            .expect("valid trial"),
            exact_e: Some(exact_e_ho),
            exact_c2: None,
            oracle_m_start: 16,
        },
        CatalogEntry {
            name: "ho_gauss",
            description: "harmonic oscillator V = x², trial e^(−x²)",
            hamiltonian: ho_hamiltonian(),
            trial: gauss_trial_1d(),
            exact_e: None,
            exact_c2: Some(exact_c2_ho),
            oracle_m_start: 16,
        },
        CatalogEntry {
            name: "quartic",
            description: "anharmonic oscillator V = x⁴, trial e^(−x²)",
            hamiltonian: PolynomialHamiltonian::new(Poly::from_terms(
                1,
                [(vec![4], rational(1, 1))],
            )),
            trial: gauss_trial_1d(),
            exact_e: None,
            exact_c2: None,
            oracle_m_start: 32,
        },
        CatalogEntry {
            name: "coupled2d",
            description: "V = x² + y² + x²y²/2, trial e^(−x²−y²)",
            hamiltonian: PolynomialHamiltonian::new(Poly::from_terms(
                2,
                [
                    (vec![2, 0], rational(1, 1)),
                    (vec![0, 2], rational(1, 1)),
                    (vec![2, 2], rational(1, 2)),
                ],
            )),
            trial: GaussianPolyState::new(
                Poly::constant(2, BigRational::from_integer(1.into())),
                vec![rational(1, 1), rational(1, 1)],
                vec![rational(0, 1), rational(0, 1)],
            )
            .expect("valid trial"),
            exact_e: None,
            exact_c2: None,
            oracle_m_start: 12,
        },
        CatalogEntry {
            name: "double_well",
            description: "double well V = (x² − 1)², trial e^(−(x−1)²) localized in one well",
            hamiltonian: PolynomialHamiltonian::new(Poly::from_terms(
                1,
                [
                    (vec![4], rational(1, 1)),
                    (vec![2], rational(-2, 1)),
                    (vec![0], rational(1, 1)),
                ],
            )),
            // e^(−x²+2x) ∝ e^(−(x−1)²); the constant is irrelevant
            trial: GaussianPolyState::new(
                Poly::constant(1, BigRational::from_integer(1.into())),
                vec![rational(1, 1)],
                vec![rational(2, 1)],
            )
            .expect("valid trial"),
            exact_e: None,
            exact_c2: None,
            oracle_m_start: 32,
        },
    ]
}

/// The four standard pairs, without the double-well exploration entry.
pub fn standard_catalog() -> Vec<CatalogEntry> {
    catalog().into_iter().filter(|e| e.name != "double_well").collect()
}

pub fn find(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}
