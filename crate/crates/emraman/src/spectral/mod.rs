//! The hyperbolic symbol `A(i zeta)` and its spectral data.
//!
//! Components are ordered `(B, E, v_e, n_e, v_i, n_i)`, 14 complex entries.
//! Eigenvalues are reported as real frequencies `mu`, the eigenvalue of the
//! symbol being `i mu`.

mod decomposition;
mod eigen;
mod symbol;
mod vectors;

pub use decomposition::{spectral_decomposition, split_mode_three, SpectralDecomposition, SpectralEntry};
pub use eigen::{acoustic_asymptote, branch, branch_gradient_factor, eigenvalues, gradient, Eigenvalues, Quartic};
pub use symbol::symbol_matrix;
pub use vectors::{
    acoustic_vector, eigenbasis, kernel_basis, longitudinal_direction, longitudinal_vector, transverse_basis,
    transverse_vector, Eigenbasis,
};

use crate::C64;
use nalgebra::{SMatrix, SVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Mat14 = SMatrix<C64, 14, 14>;
pub type Vec14 = SVector<C64, 14>;

/// Offsets of each block inside a 14-vector.
pub mod idx {
    pub const B: usize = 0;
    pub const E: usize = 3;
    pub const VE: usize = 6;
    pub const NE: usize = 9;
    pub const VI: usize = 10;
    pub const NI: usize = 13;
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("longitudinal quadratic in mu^2 has a repeated root (discriminant {disc:e}); parameters outside the small-epsilon regime")]
    DegenerateDiscriminant { disc: f64 },
    #[error("the kernel basis is only defined for a non-zero frequency")]
    ZeroFrequency,
    #[error("acoustic eigenvector is singular at these parameters (theta_e^2 = epsilon * mu_hat^2)")]
    SingularAcoustic,
}

/// Branch labels. At `epsilon = 0` only `One..Five` occur; for `epsilon > 0`
/// label 3 splits into the kernel (`Three`) and the acoustic pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModeLabel {
    One,
    Two,
    ThreePlus,
    Three,
    ThreeMinus,
    Four,
    Five,
}

impl ModeLabel {
    /// The five limiting labels in order.
    pub const LIMIT: [ModeLabel; 5] = [ModeLabel::One, ModeLabel::Two, ModeLabel::Three, ModeLabel::Four, ModeLabel::Five];

    /// Index 1..=5 of the limiting branch this label refines.
    pub fn branch(self) -> u8 {
        match self {
            ModeLabel::One => 1,
            ModeLabel::Two => 2,
            ModeLabel::ThreePlus | ModeLabel::Three | ModeLabel::ThreeMinus => 3,
            ModeLabel::Four => 4,
            ModeLabel::Five => 5,
        }
    }

    pub fn from_branch(j: u8) -> Option<Self> {
        match j {
            1 => Some(ModeLabel::One),
            2 => Some(ModeLabel::Two),
            3 => Some(ModeLabel::Three),
            4 => Some(ModeLabel::Four),
            5 => Some(ModeLabel::Five),
            _ => None,
        }
    }
}

impl std::fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ModeLabel::One => "1",
            ModeLabel::Two => "2",
            ModeLabel::ThreePlus => "3+",
            ModeLabel::Three => "3",
            ModeLabel::ThreeMinus => "3-",
            ModeLabel::Four => "4",
            ModeLabel::Five => "5",
        };
        f.write_str(s)
    }
}

/// Structured view of a 14-component plasma state.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct StateVector {
    pub b: [C64; 3],
    pub e: [C64; 3],
    pub v_e: [C64; 3],
    pub n_e: C64,
    pub v_i: [C64; 3],
    pub n_i: C64,
}

impl StateVector {
    pub fn to_vec(&self) -> Vec14 {
        let mut v = Vec14::zeros();
        for a in 0..3 {
            v[idx::B + a] = self.b[a];
            v[idx::E + a] = self.e[a];
            v[idx::VE + a] = self.v_e[a];
            v[idx::VI + a] = self.v_i[a];
        }
        v[idx::NE] = self.n_e;
        v[idx::NI] = self.n_i;
        v
    }

    pub fn from_vec(v: &Vec14) -> Self {
        let tri = |o: usize| [v[o], v[o + 1], v[o + 2]];
        Self { b: tri(idx::B), e: tri(idx::E), v_e: tri(idx::VE), n_e: v[idx::NE], v_i: tri(idx::VI), n_i: v[idx::NI] }
    }

    /// `<self, w>`: linear in `self`, conjugate-linear in `w`.
    pub fn inner(&self, w: &StateVector) -> C64 {
        inner(&self.to_vec(), &w.to_vec())
    }
}

/// `<u, w> = sum u_i conj(w_i)`.
pub fn inner(u: &Vec14, w: &Vec14) -> C64 {
    u.iter().zip(w.iter()).map(|(a, b)| a * b.conj()).sum()
}

/// Rank-one orthogonal projector `e e^* / |e|^2`.
pub fn rank_one_projector(e: &Vec14) -> Mat14 {
    let n2 = e.norm_squared();
    e * e.adjoint() / crate::c(n2)
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_vector_roundtrip() {
        let mut v = Vec14::zeros();
        for i in 0..14 {
            v[i] = C64::new(i as f64, -(i as f64));
        }
        let s = StateVector::from_vec(&v);
        assert_eq!(s.n_e, v[9]);
        assert_eq!(s.v_i[2], v[12]);
        assert_eq!(s.to_vec(), v);
    }

    #[test]
    fn inner_is_linear_left_antilinear_right() {
        let mut u = Vec14::zeros();
        let mut w = Vec14::zeros();
        u[0] = C64::new(1.0, 2.0);
        w[0] = C64::new(0.5, -1.0);
        let a = C64::new(0.0, 3.0);
        assert!((inner(&(u * a), &w) - a * inner(&u, &w)).norm() < 1e-15);
        assert!((inner(&u, &(w * a)) - a.conj() * inner(&u, &w)).norm() < 1e-15);
    }
}
