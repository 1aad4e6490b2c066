//! Hamiltonian of the coupled qubit-qutrit pair.
//!
//! Conventions, fixed once here and relied on everywhere else:
//!
//! * The qubit is spin 1/2 with basis (|0>, |1>) ordered so that
//!   `sigma_z = diag(1, -1)`; the qutrit is spin 1 with basis (|0>, |1>, |2>)
//!   ordered so that `S_z = diag(1, 0, -1)`.
//! * Product states |q t> are flattened as `3 * q + t`, i.e. the joint basis
//!   is |00>, |01>, |02>, |10>, |11>, |12>.
//! * hbar = 1; fields and couplings carry dimensions of frequency.
//!
//! The Hamiltonian combines anisotropic Heisenberg exchange, a z-axis
//! Dzyaloshinskii-Moriya (DM) term, and local z fields:
//!
//! ```text
//! H = (b_qb/2) sigma_z x I + b_qt I x S_z
//!   + (d_z/2) (sigma_x x S_y - sigma_y x S_x)
//!   + (1/2) (j_x sigma_x x S_x + j_y sigma_y x S_y + j_z sigma_z x S_z)
//! ```

use crate::linalg::ComplexMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Joint Hilbert space dimension (2 x 3).
pub const DIM: usize = 6;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("parameter {field} is {value}, expected a finite number")]
    NonFinite { field: &'static str, value: f64 },
}

/// Cartesian axis selector for the spin operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Couplings and fields of the pair Hamiltonian.
///
/// `d_x` and `d_y` are carried so configurations can state them explicitly,
/// but the model only includes the z component of the DM vector; the front
/// end warns when they are nonzero. Defaults are the isotropic unit point:
/// unit exchange on all axes, unit DM strength along z, unit fields.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelParams {
    pub j_x: f64,
    pub j_y: f64,
    pub j_z: f64,
    pub d_x: f64,
    pub d_y: f64,
    pub d_z: f64,
    /// Zeeman field on the qubit, along z.
    pub b_qb: f64,
    /// Zeeman field on the qutrit, along z.
    pub b_qt: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            j_x: 1.0,
            j_y: 1.0,
            j_z: 1.0,
            d_x: 0.0,
            d_y: 0.0,
            d_z: 1.0,
            b_qb: 1.0,
            b_qt: 1.0,
        }
    }
}

impl ModelParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        let fields: [(&'static str, f64); 8] = [
            ("j_x", self.j_x),
            ("j_y", self.j_y),
            ("j_z", self.j_z),
            ("d_x", self.d_x),
            ("d_y", self.d_y),
            ("d_z", self.d_z),
            ("b_qb", self.b_qb),
            ("b_qt", self.b_qt),
        ];
        for (field, value) in fields {
            if !value.is_finite() {
                return Err(ModelError::NonFinite { field, value });
            }
        }
        Ok(())
    }

    /// True when the in-plane exchange couplings match exactly; the two-level
    /// closed form for the negativity only holds in that case.
    pub fn exchange_xy_symmetric(&self) -> bool {
        self.j_x == self.j_y
    }

    /// True when the configuration requests DM components the model ignores.
    pub fn has_transverse_dm(&self) -> bool {
        self.d_x != 0.0 || self.d_y != 0.0
    }
}

/// Position of a product basis state |q t>.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisIndex {
    qubit: u8,
    qutrit: u8,
}

impl BasisIndex {
    pub fn new(qubit: u8, qutrit: u8) -> Option<Self> {
        (qubit < 2 && qutrit < 3).then_some(BasisIndex { qubit, qutrit })
    }

    pub fn from_flat(flat: usize) -> Option<Self> {
        (flat < DIM).then_some(BasisIndex {
            qubit: (flat / 3) as u8,
            qutrit: (flat % 3) as u8,
        })
    }

    pub fn qubit(&self) -> u8 {
        self.qubit
    }

    pub fn qutrit(&self) -> u8 {
        self.qutrit
    }

    /// Row/column of this state in the flattened joint space.
    pub fn flat(&self) -> usize {
        3 * self.qubit as usize + self.qutrit as usize
    }
}

impl std::fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "|{}{}>", self.qubit, self.qutrit)
    }
}

/// Pauli matrix along `axis` (eigenvalues +-1).
pub fn pauli(axis: Axis) -> ComplexMatrix {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    match axis {
        Axis::X => ComplexMatrix::from_rows(&[&[z, one], &[one, z]]),
        Axis::Y => ComplexMatrix::from_rows(&[&[z, -i], &[i, z]]),
        Axis::Z => ComplexMatrix::from_rows(&[&[one, z], &[z, -one]]),
    }
}

/// Spin-1 operator along `axis` in the S_z eigenbasis (+1, 0, -1), with the
/// standard ladder normalization: the transverse operators have off-diagonal
/// entries 1/sqrt(2).
pub fn spin1(axis: Axis) -> ComplexMatrix {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let ri = Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
    match axis {
        Axis::X => ComplexMatrix::from_rows(&[&[z, r, z], &[r, z, r], &[z, r, z]]),
        Axis::Y => ComplexMatrix::from_rows(&[&[z, -ri, z], &[ri, z, -ri], &[z, ri, z]]),
        Axis::Z => ComplexMatrix::from_rows(&[&[one, z, z], &[z, z, z], &[z, z, -one]]),
    }
}

/// Kronecker product with the left factor indexing the slow (qubit) slot, so
/// that `kron(a, b)` acts on states flattened as `3 * q + t`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a[(i, j)];
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out[(i * b.rows() + k, j * b.cols() + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Builds the 6x6 pair Hamiltonian for the given parameters.
///
/// The result is Hermitian to the last bit: every term is a Kronecker product
/// of Hermitian factors with a real coefficient, and the entrywise sums run
/// in the same order on both sides of the diagonal.
pub fn build_hamiltonian(params: &ModelParams) -> Result<ComplexMatrix, ModelError> {
    params.validate()?;

    let id2 = ComplexMatrix::identity(2);
    let id3 = ComplexMatrix::identity(3);
    let re = |x: f64| Complex64::new(x, 0.0);

    let mut h = kron(&pauli(Axis::Z), &id3).scale(re(0.5 * params.b_qb));
    h = h.add(&kron(&id2, &spin1(Axis::Z)).scale(re(params.b_qt)));
    h = h.add(&kron(&pauli(Axis::X), &spin1(Axis::Y)).scale(re(0.5 * params.d_z)));
    h = h.add(&kron(&pauli(Axis::Y), &spin1(Axis::X)).scale(re(-0.5 * params.d_z)));
    h = h.add(&kron(&pauli(Axis::X), &spin1(Axis::X)).scale(re(0.5 * params.j_x)));
    h = h.add(&kron(&pauli(Axis::Y), &spin1(Axis::Y)).scale(re(0.5 * params.j_y)));
    h = h.add(&kron(&pauli(Axis::Z), &spin1(Axis::Z)).scale(re(0.5 * params.j_z)));
    Ok(h)
}
