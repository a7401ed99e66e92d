use super::vectors::{acoustic_vector, kernel_basis, longitudinal_vector, transverse_basis, transverse_vector};
use super::{rank_one_projector, symbol_matrix, Mat14, ModeLabel, SpectralError};
use crate::{c, Frequency, PlasmaParams, C64, I};
use nalgebra::{DMatrix, SMatrix};

#[derive(Debug, Clone)]
pub struct SpectralEntry {
    pub label: ModeLabel,
    pub eigenvalue: f64,
    pub projector: Mat14,
}

/// Limiting eigenvalues and orthogonal projectors at one frequency, with the
/// remainder `R_A = (A(i zeta) - sum i lambda_j Pi_j) / sqrt(eps)`. When
/// `eps = 0` the remainder is left unscaled (and vanishes up to rounding).
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub frequency: Frequency,
    pub entries: Vec<SpectralEntry>,
    pub remainder: Mat14,
}

impl SpectralDecomposition {
    pub fn projector(&self, label: ModeLabel) -> &Mat14 {
        &self
            .entries
            .iter()
            .find(|e| e.label == label)
            .unwrap_or_else(|| panic!("no projector for label {label}"))
            .projector
    }

    pub fn eigenvalue(&self, label: ModeLabel) -> f64 {
        self.entries.iter().find(|e| e.label == label).map(|e| e.eigenvalue).unwrap_or(0.0)
    }

    /// `sum_j i lambda_j Pi_j`.
    pub fn reconstruction(&self) -> Mat14 {
        self.entries.iter().fold(Mat14::zeros(), |acc, e| acc + e.projector * (I * e.eigenvalue))
    }
}

/// Orthogonal projectors of the limiting symbol. Branches 1 and 5 carry
/// rank-2 projectors, 2 and 4 rank-1, and branch 3 is the rank-8 complement.
/// At `zeta = 0` the projectors are the limits along `xi -> 0+`.
pub fn spectral_decomposition(params: &PlasmaParams, zeta: &Frequency) -> SpectralDecomposition {
    let th2 = params.theta_e().powi(2);
    let n2 = zeta.norm().powi(2);
    let l1 = (1.0 + n2).sqrt();
    let l2 = (1.0 + th2 * n2).sqrt();
    let [w1, w2] = transverse_basis(zeta);
    let tv = |mu: f64, w| transverse_vector(params, zeta, mu, w, false);
    let p1 = rank_one_projector(&tv(l1, w1)) + rank_one_projector(&tv(l1, w2));
    let p5 = rank_one_projector(&tv(-l1, w1)) + rank_one_projector(&tv(-l1, w2));
    let p2 = rank_one_projector(&longitudinal_vector(params, zeta, l2, false));
    let p4 = rank_one_projector(&longitudinal_vector(params, zeta, -l2, false));
    let p3 = Mat14::identity() - p1 - p2 - p4 - p5;
    let entries = vec![
        SpectralEntry { label: ModeLabel::One, eigenvalue: l1, projector: p1 },
        SpectralEntry { label: ModeLabel::Two, eigenvalue: l2, projector: p2 },
        SpectralEntry { label: ModeLabel::Three, eigenvalue: 0.0, projector: p3 },
        SpectralEntry { label: ModeLabel::Four, eigenvalue: -l2, projector: p4 },
        SpectralEntry { label: ModeLabel::Five, eigenvalue: -l1, projector: p5 },
    ];
    let mut dec = SpectralDecomposition { frequency: *zeta, entries, remainder: Mat14::zeros() };
    let eps = params.epsilon();
    let a = symbol_matrix(params, zeta, eps > 0.0);
    let diff = a - dec.reconstruction();
    dec.remainder = if eps > 0.0 { diff / c(eps.sqrt()) } else { diff };
    dec
}

/// Splits the branch-3 projector of the limiting symbol into a kernel part
/// (spanned by the six kernel vectors) and an acoustic part (spanned by the
/// limits of the two acoustic eigenvectors). The split is oblique; the two
/// parts are idempotent, annihilate each other and sum to `Pi_3`.
pub fn split_mode_three(params: &PlasmaParams, zeta: &Frequency) -> Result<(Mat14, Mat14), SpectralError> {
    let kernel = kernel_basis(params, zeta, false)?;
    let (_, a_plus) = acoustic_vector(params, zeta, 1.0, false)?;
    let (_, a_minus) = acoustic_vector(params, zeta, -1.0, false)?;
    let mut v = SMatrix::<C64, 14, 8>::zeros();
    for (j, col) in kernel.iter().chain([a_plus, a_minus].iter()).enumerate() {
        v.set_column(j, col);
    }
    let vd = DMatrix::from_iterator(14, 8, v.iter().cloned());
    let pinv = vd.pseudo_inverse(1e-12).map_err(|_| SpectralError::ZeroFrequency)?;
    let p3 = spectral_decomposition(params, zeta).projector(ModeLabel::Three).to_owned();
    let part = |cols: std::ops::Range<usize>| {
        let mut m = Mat14::zeros();
        for j in cols {
            let row = pinv.row(j);
            for a in 0..14 {
                for b in 0..14 {
                    m[(a, b)] += v[(a, j)] * row[b];
                }
            }
        }
        m * p3
    };
    Ok((part(0..6), part(6..8)))
}
