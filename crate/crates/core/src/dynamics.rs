//! Exact time evolution through the spectral decomposition.
//!
//! The Hamiltonian is diagonalized once; every later time sample is then a
//! rotation into the eigenbasis, a phase multiplication, and a rotation back.
//! No time stepping and no accumulation of integration error: the state at
//! t = 1000 is as accurate as at t = 0.01.

use crate::linalg::{
    hermitian_eig, unitary_from_spectrum, ComplexMatrix, EigenSystem, LinalgError,
};
use crate::model::{build_hamiltonian, ModelError, ModelParams, DIM};
use crate::states::StateVector;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("time grid needs t_end > t_start, got [{t_start}, {t_end}]")]
    EmptyWindow { t_start: f64, t_end: f64 },
    #[error("time step {step} must be positive and finite")]
    BadStep { step: f64 },
    #[error("grid bound {value} is not finite")]
    NonFiniteBound { value: f64 },
    #[error("grid would hold about {approx:.1e} samples; the cap is 1e8")]
    TooManySamples { approx: f64 },
}

/// Uniform sampling grid `t_k = t_start + k * step`.
///
/// The number of samples is `floor((t_end - t_start) / step) + 1`, computed
/// with a small relative guard so a window that is an exact multiple of the
/// step keeps its endpoint despite binary rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_start: f64,
    t_end: f64,
    step: f64,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, step: f64) -> Result<Self, DynamicsError> {
        for value in [t_start, t_end] {
            if !value.is_finite() {
                return Err(DynamicsError::NonFiniteBound { value });
            }
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(DynamicsError::BadStep { step });
        }
        if t_end <= t_start {
            return Err(DynamicsError::EmptyWindow { t_start, t_end });
        }
        let ratio = (t_end - t_start) / step;
        if ratio > 1e8 {
            return Err(DynamicsError::TooManySamples { approx: ratio });
        }
        Ok(TimeGrid {
            t_start,
            t_end,
            step,
        })
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        let ratio = (self.t_end - self.t_start) / self.step;
        (ratio + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees at least one sample
    }

    pub fn time_at(&self, k: usize) -> f64 {
        self.t_start + k as f64 * self.step
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.time_at(k)).collect()
    }
}

/// Diagonalized Hamiltonian ready to evolve states to arbitrary times.
#[derive(Debug, Clone)]
pub struct Propagator {
    params: ModelParams,
    eigen: EigenSystem,
}

impl Propagator {
    /// Builds and diagonalizes the Hamiltonian for `params`.
    pub fn new(params: &ModelParams) -> Result<Self, DynamicsError> {
        let hamiltonian = build_hamiltonian(params)?;
        let eigen = hermitian_eig(&hamiltonian)?;
        Ok(Propagator {
            params: *params,
            eigen,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// Energy eigenvalues, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        self.eigen.values()
    }

    /// The unitary U(t) = exp(-i H t) as an explicit matrix.
    pub fn matrix_at(&self, t: f64) -> ComplexMatrix {
        unitary_from_spectrum(&self.eigen, |lambda| (-Complex64::i() * lambda * t).exp())
            .expect("complex exponential phases have unit modulus")
    }

    /// Evolves `state` to time `t`.
    pub fn evolve(&self, state: &StateVector, t: f64) -> StateVector {
        let coeffs = self.eigenbasis_coefficients(state);
        self.state_from_coefficients(&coeffs, t)
    }

    /// States at every sample of `grid`, in grid order.
    ///
    /// The projection onto the eigenbasis happens once for the whole
    /// trajectory, so each sample costs one phase rotation.
    pub fn trajectory(&self, state: &StateVector, grid: &TimeGrid) -> Vec<StateVector> {
        let coeffs = self.eigenbasis_coefficients(state);
        (0..grid.len())
            .map(|k| self.state_from_coefficients(&coeffs, grid.time_at(k)))
            .collect()
    }

    /// Coefficients of `state` in the eigenbasis: c = V^dagger psi.
    fn eigenbasis_coefficients(&self, state: &StateVector) -> [Complex64; DIM] {
        let v = self.eigen.vectors();
        let amps = state.amplitudes();
        let mut coeffs = [Complex64::new(0.0, 0.0); DIM];
        for (k, coeff) in coeffs.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..DIM {
                acc += v[(i, k)].conj() * amps[i];
            }
            *coeff = acc;
        }
        coeffs
    }

    /// psi(t) = V diag(e^{-i lambda t}) c, renormalized against phase-sum
    /// roundoff so downstream density matrices keep unit trace.
    fn state_from_coefficients(&self, coeffs: &[Complex64; DIM], t: f64) -> StateVector {
        let v = self.eigen.vectors();
        let mut rotated = [Complex64::new(0.0, 0.0); DIM];
        for (k, coeff) in coeffs.iter().enumerate() {
            rotated[k] = coeff * (-Complex64::i() * self.eigen.values()[k] * t).exp();
        }
        let mut amps = [Complex64::new(0.0, 0.0); DIM];
        for (i, amp) in amps.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..DIM {
                acc += v[(i, k)] * rotated[k];
            }
            *amp = acc;
        }
        StateVector::from_unnormalized(amps).expect("unitary evolution preserves the norm")
    }
}
