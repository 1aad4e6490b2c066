//! Initial state preparation: spin coherent states, their superpositions,
//! and density matrices.
//!
//! The simulated initial state is a two-branch superposition. Each branch is
//! a product of SU(2) coherent states, the qubit one parameterized by `beta`
//! and the qutrit one by `alpha`:
//!
//! ```text
//! |psi(0)> = cos(theta) |beta_1>|alpha_1> + e^{i phi} sin(theta) |beta_2>|alpha_2>
//! ```
//!
//! followed by normalization, which is always computed rather than assumed:
//! the branches are generally not orthogonal.

use crate::linalg::{hermitian_eig, ComplexMatrix, LinalgError};
use crate::model::{BasisIndex, DIM};
use num_complex::Complex64;
use thiserror::Error;

/// Norm below which a superposition is rejected as degenerate.
pub const DEGENERATE_NORM_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum StateError {
    #[error("state parameter {field} is not finite")]
    NonFinite { field: &'static str },
    #[error("branches cancel: superposition norm {norm:.3e} is below {DEGENERATE_NORM_TOL:.0e}")]
    Degenerate { norm: f64 },
    #[error("density matrix has trace {trace}, expected 1")]
    Unnormalized { trace: f64 },
    #[error("density matrix has eigenvalue {value:.3e} below -1e-10")]
    NegativeWeight { value: f64 },
    #[error(transparent)]
    Matrix(#[from] LinalgError),
}

/// Spin quantum number of one subsystem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    /// s = 1/2: the qubit.
    Half,
    /// s = 1: the qutrit.
    One,
}

/// SU(2) coherent state with stereographic parameter `alpha`, expanded in the
/// S_z basis ordered from m = +s downward (matching [`crate::model`]).
///
/// For s = 1/2 this is `(1, alpha)` and for s = 1 it is
/// `(1, sqrt(2) alpha, alpha^2)`, each normalized; `alpha = 0` is the m = +s
/// pole and `|alpha| -> inf` approaches m = -s.
pub fn spin_coherent(spin: Spin, alpha: Complex64) -> Vec<Complex64> {
    let n = alpha.norm_sqr();
    match spin {
        Spin::Half => {
            let scale = 1.0 / (1.0 + n).sqrt();
            vec![Complex64::new(scale, 0.0), alpha * scale]
        }
        Spin::One => {
            let scale = 1.0 / (1.0 + n);
            vec![
                Complex64::new(scale, 0.0),
                alpha * (2.0_f64.sqrt() * scale),
                alpha * alpha * scale,
            ]
        }
    }
}

/// Parameters of the two-branch coherent superposition.
///
/// `alpha` parameters steer the qutrit coherent states, `beta` the qubit
/// ones; `theta` and `phi` set the mixing angle and relative phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialStateSpec {
    pub alpha1: Complex64,
    pub alpha2: Complex64,
    pub beta1: Complex64,
    pub beta2: Complex64,
    pub theta: f64,
    pub phi: f64,
}

impl InitialStateSpec {
    /// Equal-weight, opposite-pole superposition: both branches share the
    /// magnitude `alpha`, with the second branch at the antipodal parameter.
    /// This is the family the reference results use; `from_alpha(1)` is the
    /// standard maximally mixed-marginal state.
    pub fn from_alpha(alpha: Complex64) -> Self {
        InitialStateSpec {
            alpha1: alpha,
            alpha2: -alpha,
            beta1: alpha,
            beta2: -alpha,
            theta: std::f64::consts::FRAC_PI_4,
            phi: 0.0,
        }
    }

    fn validate(&self) -> Result<(), StateError> {
        let complex_fields: [(&'static str, Complex64); 4] = [
            ("alpha1", self.alpha1),
            ("alpha2", self.alpha2),
            ("beta1", self.beta1),
            ("beta2", self.beta2),
        ];
        for (field, value) in complex_fields {
            if !value.re.is_finite() || !value.im.is_finite() {
                return Err(StateError::NonFinite { field });
            }
        }
        if !self.theta.is_finite() {
            return Err(StateError::NonFinite { field: "theta" });
        }
        if !self.phi.is_finite() {
            return Err(StateError::NonFinite { field: "phi" });
        }
        Ok(())
    }
}

impl Default for InitialStateSpec {
    fn default() -> Self {
        InitialStateSpec::from_alpha(Complex64::new(1.0, 0.0))
    }
}

/// Normalized pure state of the joint system.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: [Complex64; DIM],
}

impl StateVector {
    /// Normalizes `raw` into a state vector; fails if the vector is too close
    /// to zero for the direction to be meaningful.
    pub fn from_unnormalized(raw: [Complex64; DIM]) -> Result<Self, StateError> {
        for z in &raw {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(StateError::NonFinite {
                    field: "amplitudes",
                });
            }
        }
        let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm <= DEGENERATE_NORM_TOL {
            return Err(StateError::Degenerate { norm });
        }
        let mut amplitudes = raw;
        for z in &mut amplitudes {
            *z /= norm;
        }
        Ok(StateVector { amplitudes })
    }

    pub fn amplitudes(&self) -> &[Complex64; DIM] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: BasisIndex) -> Complex64 {
        self.amplitudes[index.flat()]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// Builds the normalized two-branch superposition described by `spec`.
pub fn build_initial_state(spec: &InitialStateSpec) -> Result<StateVector, StateError> {
    spec.validate()?;

    let branch = |beta: Complex64, alpha: Complex64| -> [Complex64; DIM] {
        let qb = spin_coherent(Spin::Half, beta);
        let qt = spin_coherent(Spin::One, alpha);
        let mut out = [Complex64::new(0.0, 0.0); DIM];
        for (q, amp_q) in qb.iter().enumerate() {
            for (t, amp_t) in qt.iter().enumerate() {
                out[3 * q + t] = amp_q * amp_t;
            }
        }
        out
    };

    let first = branch(spec.beta1, spec.alpha1);
    let second = branch(spec.beta2, spec.alpha2);
    let w1 = Complex64::new(spec.theta.cos(), 0.0);
    let w2 = Complex64::from_polar(spec.theta.sin(), spec.phi);

    let mut raw = [Complex64::new(0.0, 0.0); DIM];
    for k in 0..DIM {
        raw[k] = w1 * first[k] + w2 * second[k];
    }
    StateVector::from_unnormalized(raw)
}

/// Density matrix of the joint system: Hermitian, unit trace, positive
/// semidefinite (within numerical tolerance).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates an arbitrary 6x6 matrix as a density matrix.
    pub fn new(matrix: ComplexMatrix) -> Result<Self, StateError> {
        matrix.check_hermitian(1e-12)?;
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > 1e-12 || trace.im.abs() > 1e-12 {
            return Err(StateError::Unnormalized { trace: trace.re });
        }
        let spectrum = hermitian_eig(&matrix)?;
        if let Some(&lowest) = spectrum.values().first() {
            if lowest < -1e-10 {
                return Err(StateError::NegativeWeight { value: lowest });
            }
        }
        Ok(DensityMatrix { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Projector |psi><psi| of a normalized pure state. The result is Hermitian
/// bit for bit, so no validation pass is needed.
pub fn density_from_state(state: &StateVector) -> DensityMatrix {
    let amps = state.amplitudes();
    let mut matrix = ComplexMatrix::zeros(DIM, DIM);
    for i in 0..DIM {
        for j in 0..DIM {
            matrix[(i, j)] = amps[i] * amps[j].conj();
        }
    }
    DensityMatrix { matrix }
}
