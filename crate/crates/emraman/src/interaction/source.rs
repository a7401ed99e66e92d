use crate::spectral::{idx, spectral_decomposition, Mat14, ModeLabel, StateVector};
use crate::{c, Frequency, PlasmaParams, I};

/// Matrix of the leading source `B_p` at frequency `zeta`. Only the electronic
/// rows are non-zero. For `eta_1 != 0` the convective term `-theta_e (i eta_1) v_e`
/// is added; the result is then approximate.
pub fn source_matrix(params: &PlasmaParams, p: i8, zeta: &Frequency) -> Mat14 {
    let th = params.theta_e();
    let ipk = I * (p as f64 * params.k());
    let mut m = Mat14::zeros();
    // E-row: n_e y^
    m[(idx::E + 1, idx::NE)] = c(1.0);
    // v_e-row: -theta (y^ x B + ipk v_e x z^ + ipk v_e,x y^)
    // y^ x B = (B_z, 0, -B_x)
    m[(idx::VE, idx::B + 2)] += c(-th);
    m[(idx::VE + 2, idx::B)] += c(th);
    // v_e x z^ = (v_y, -v_x, 0); its y-part cancels against ipk v_e,x y^
    m[(idx::VE, idx::VE + 1)] += -th * ipk;
    if zeta.eta[0] != 0.0 {
        for a in 0..3 {
            m[(idx::VE + a, idx::VE + a)] += -th * I * zeta.eta[0];
        }
    }
    m
}

/// `B_p u` on the axis.
pub fn source_action(params: &PlasmaParams, p: i8, u: &StateVector) -> StateVector {
    StateVector::from_vec(&(source_matrix(params, p, &Frequency::axis(0.0)) * u.to_vec()))
}

/// `Pi_j(xi + p k, eta) B_p Pi_j'(xi, eta)` with the limiting projectors.
pub fn interaction_matrix(params: &PlasmaParams, p: i8, j: u8, jp: u8, zeta: &Frequency) -> Mat14 {
    let lj = ModeLabel::from_branch(j).expect("branch index 1..=5");
    let ljp = ModeLabel::from_branch(jp).expect("branch index 1..=5");
    let left = spectral_decomposition(params, &zeta.shifted(p as f64 * params.k()));
    let right = spectral_decomposition(params, zeta);
    left.projector(lj) * source_matrix(params, p, zeta) * right.projector(ljp)
}
