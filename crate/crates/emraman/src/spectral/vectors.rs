use super::eigen::{eigenvalues, Eigenvalues, Quartic};
use super::{cross, dot, idx, SpectralError, Vec14};
use crate::{c, Frequency, PlasmaParams, C64, I};

const AXIS_TOL: f64 = 1e-12;

fn eps_used(params: &PlasmaParams, with_epsilon: bool) -> f64 {
    if with_epsilon {
        params.epsilon()
    } else {
        0.0
    }
}

fn put3(v: &mut Vec14, off: usize, a: [C64; 3]) {
    for i in 0..3 {
        v[off + i] = a[i];
    }
}

fn scale3(s: C64, w: [f64; 3]) -> [C64; 3] {
    [s * w[0], s * w[1], s * w[2]]
}

/// Orthonormal basis `(w, w')` of the plane orthogonal to `zeta`, obtained by
/// Gram-Schmidt on `(0,1,0)` and `(0,0,1)` projected off `zeta`. At `zeta = 0`
/// or on the `xi` axis this is exactly `((0,1,0), (0,0,1))`.
pub fn transverse_basis(zeta: &Frequency) -> [[f64; 3]; 2] {
    let z = zeta.as_array();
    let n = zeta.norm();
    let zh = if n > 0.0 { [z[0] / n, z[1] / n, z[2] / n] } else { [1.0, 0.0, 0.0] };
    let mut basis: Vec<[f64; 3]> = Vec::with_capacity(2);
    for cand in [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]] {
        let mut v = cand;
        let a = dot(v, zh);
        for i in 0..3 {
            v[i] -= a * zh[i];
        }
        for b in &basis {
            let a = dot(v, *b);
            for i in 0..3 {
                v[i] -= a * b[i];
            }
        }
        let nv = dot(v, v).sqrt();
        if nv > 1e-6 {
            basis.push([v[0] / nv, v[1] / nv, v[2] / nv]);
        }
        if basis.len() == 2 {
            break;
        }
    }
    [basis[0], basis[1]]
}

/// Unit direction `d` of longitudinal vectors and the signed modulus
/// `rho = zeta . d`. On the axis `d = (1,0,0)` and `rho = xi`; elsewhere `d` is
/// `zeta/|zeta|` oriented so that its first component is non-negative.
pub fn longitudinal_direction(zeta: &Frequency) -> ([f64; 3], f64) {
    let n = zeta.norm();
    if zeta.r() <= AXIS_TOL * n.max(1.0) || n == 0.0 {
        return ([1.0, 0.0, 0.0], zeta.xi);
    }
    let z = zeta.as_array();
    let s = if zeta.xi < 0.0 { -1.0 } else { 1.0 };
    ([s * z[0] / n, s * z[1] / n, s * z[2] / n], s * n)
}

/// Transverse eigenvector `(i zeta x w, i mu w, w, 0, -(sqrt(eps)/theta) w, 0)`
/// for eigenvalue `i mu`, `w` a unit vector orthogonal to `zeta`.
pub fn transverse_vector(params: &PlasmaParams, zeta: &Frequency, mu: f64, w: [f64; 3], with_epsilon: bool) -> Vec14 {
    let se = eps_used(params, with_epsilon).sqrt();
    let mut v = Vec14::zeros();
    put3(&mut v, idx::B, scale3(I, cross(zeta.as_array(), w)));
    put3(&mut v, idx::E, scale3(I * mu, w));
    put3(&mut v, idx::VE, scale3(c(1.0), w));
    put3(&mut v, idx::VI, scale3(c(-se / params.theta_e()), w));
    v
}

/// Longitudinal eigenvector normalised by `v_e = d`, for a non-zero
/// eigenvalue `i mu` of the Klein-Gordon type.
pub fn longitudinal_vector(params: &PlasmaParams, zeta: &Frequency, mu: f64, with_epsilon: bool) -> Vec14 {
    let eps = eps_used(params, with_epsilon);
    let se = eps.sqrt();
    let th = params.theta_e();
    let a2 = params.alpha_ie().powi(2);
    let (d, rho) = longitudinal_direction(zeta);
    let num = mu * mu - th * th * rho * rho;
    let e = I * (num / mu);
    let n_e = c(th * rho / mu);
    let v_i = -(se / th) * num / (mu * mu - a2 * eps * rho * rho);
    let n_i = se * rho * v_i / mu;
    let mut v = Vec14::zeros();
    put3(&mut v, idx::E, scale3(e, d));
    put3(&mut v, idx::VE, scale3(c(1.0), d));
    v[idx::NE] = n_e;
    put3(&mut v, idx::VI, scale3(c(v_i), d));
    v[idx::NI] = c(n_i);
    v
}

/// Acoustic eigenvector for the branch `sign * lambda_3` (sign = +1 or -1),
/// scaled so that it stays regular at `zeta = 0` and in the limit, then
/// normalised to unit length. Returns `(mu, vector)`.
pub fn acoustic_vector(
    params: &PlasmaParams,
    zeta: &Frequency,
    sign: f64,
    with_epsilon: bool,
) -> Result<(f64, Vec14), SpectralError> {
    let eps = eps_used(params, with_epsilon);
    let se = eps.sqrt();
    let th = params.theta_e();
    let a2 = params.alpha_ie().powi(2);
    let (d, rho) = longitudinal_direction(zeta);
    let pe = params.with_epsilon(eps).expect("epsilon already validated");
    let quartic = Quartic::new(&pe, rho * rho)?;
    let mhat_abs = ((a2 * (1.0 + th * th * rho * rho) + 1.0) / quartic.s_fast).sqrt();
    let rho_sign = if rho < 0.0 { -1.0 } else { 1.0 };
    let mhat = sign.signum() * rho_sign * mhat_abs;
    let den_e = th * th - eps * mhat * mhat;
    let den_i = a2 - mhat * mhat;
    if den_e.abs() < 1e-12 || den_i.abs() < 1e-14 {
        return Err(SpectralError::SingularAcoustic);
    }
    let mut v = Vec14::zeros();
    put3(&mut v, idx::E, scale3(c(rho), d));
    put3(&mut v, idx::VE, scale3(I * (se * mhat / den_e), d));
    v[idx::NE] = I * (th / den_e);
    put3(&mut v, idx::VI, scale3(-I * (mhat / (th * den_i)), d));
    v[idx::NI] = -I * (1.0 / (th * den_i));
    let n = v.norm();
    Ok((se * mhat * rho, v / c(n)))
}

/// Six independent kernel vectors of `A(i zeta)`, `zeta != 0`.
pub fn kernel_basis(params: &PlasmaParams, zeta: &Frequency, with_epsilon: bool) -> Result<[Vec14; 6], SpectralError> {
    let n = zeta.norm();
    if n == 0.0 {
        return Err(SpectralError::ZeroFrequency);
    }
    let se = eps_used(params, with_epsilon).sqrt();
    let th = params.theta_e();
    let a2 = params.alpha_ie().powi(2);
    let z = zeta.as_array();
    let [w1, w2] = transverse_basis(zeta);

    let mut e1 = Vec14::zeros();
    put3(&mut e1, idx::B, scale3(c(1.0 / n), z));

    let electron_transverse = |w: [f64; 3]| {
        let mut v = Vec14::zeros();
        put3(&mut v, idx::VE, scale3(c(1.0), w));
        put3(&mut v, idx::B, scale3(-I / (n * n), cross(z, w)));
        v
    };
    let ion_transverse = |w: [f64; 3]| {
        let mut v = Vec14::zeros();
        put3(&mut v, idx::VI, scale3(c(1.0), w));
        put3(&mut v, idx::VE, scale3(c(se / th), w));
        v
    };
    let mut e6 = Vec14::zeros();
    e6[idx::NI] = c(1.0);
    e6[idx::NE] = c(-a2);
    put3(&mut e6, idx::E, scale3(I * (th * a2), z));

    Ok([e1, electron_transverse(w1), electron_transverse(w2), ion_transverse(w1), ion_transverse(w2), e6])
}

/// Explicit eigenvectors at one frequency. With `epsilon > 0` these are exact
/// eigenvectors of the full symbol, otherwise of the limiting one.
#[derive(Debug, Clone)]
pub struct Eigenbasis {
    pub eigenvalues: Eigenvalues,
    /// Branch 1, polarisations `w` and `w'`.
    pub e_perp: [Vec14; 2],
    /// Branch 5, polarisations `w` and `w'`.
    pub e_perp_minus: [Vec14; 2],
    /// Branch 2.
    pub e_par_plus: Vec14,
    /// Branch 4.
    pub e_par_minus: Vec14,
    /// Acoustic pair `(+lambda_3, -lambda_3)` with their frequencies.
    pub acoustic: [(f64, Vec14); 2],
    /// Kernel vectors, absent at `zeta = 0`.
    pub kernel: Option<[Vec14; 6]>,
}

impl Eigenbasis {
    /// Every vector with its frequency `mu` (eigenvalue `i mu`).
    pub fn pairs(&self) -> Vec<(f64, Vec14)> {
        let ev = &self.eigenvalues;
        let mut out = vec![
            (ev.lambda1, self.e_perp[0]),
            (ev.lambda1, self.e_perp[1]),
            (-ev.lambda1, self.e_perp_minus[0]),
            (-ev.lambda1, self.e_perp_minus[1]),
            (ev.lambda2, self.e_par_plus),
            (-ev.lambda2, self.e_par_minus),
            self.acoustic[0],
            self.acoustic[1],
        ];
        if let Some(k) = &self.kernel {
            out.extend(k.iter().map(|v| (0.0, *v)));
        }
        out
    }
}

/// Eigenvectors of `A(i zeta)` for the symbol selected by `params.epsilon()`.
pub fn eigenbasis(params: &PlasmaParams, zeta: &Frequency) -> Result<Eigenbasis, SpectralError> {
    let with_eps = params.epsilon() > 0.0;
    let ev = eigenvalues(params, zeta, with_eps)?;
    let [w1, w2] = transverse_basis(zeta);
    let tv = |mu: f64, w| transverse_vector(params, zeta, mu, w, with_eps);
    let kernel = match kernel_basis(params, zeta, with_eps) {
        Ok(k) => Some(k),
        Err(SpectralError::ZeroFrequency) => None,
        Err(e) => return Err(e),
    };
    Ok(Eigenbasis {
        eigenvalues: ev,
        e_perp: [tv(ev.lambda1, w1), tv(ev.lambda1, w2)],
        e_perp_minus: [tv(-ev.lambda1, w1), tv(-ev.lambda1, w2)],
        e_par_plus: longitudinal_vector(params, zeta, ev.lambda2, with_eps),
        e_par_minus: longitudinal_vector(params, zeta, -ev.lambda2, with_eps),
        acoustic: [acoustic_vector(params, zeta, 1.0, with_eps)?, acoustic_vector(params, zeta, -1.0, with_eps)?],
        kernel,
    })
}

#[cfg(test)]
mod tests {
    use super::super::symbol_matrix;
    use super::*;

    fn residual(params: &PlasmaParams, zeta: &Frequency, with_eps: bool, mu: f64, v: &Vec14) -> f64 {
        let a = symbol_matrix(params, zeta, with_eps);
        (a * v - v * (I * mu)).norm() / v.norm()
    }

    #[test]
    fn axis_transverse_vector_matches_explicit_form() {
        let p = PlasmaParams::new(0.0, 0.1, 0.0, 3.0).unwrap();
        let z = Frequency::axis(3.0);
        let b = eigenbasis(&p, &z).unwrap();
        let e = b.e_perp[0];
        // i zeta x (0,1,0) = (0,0,3i)
        assert!((e[2] - I * 3.0).norm() < 1e-15);
        assert!((e[4] - I * 10f64.sqrt()).norm() < 1e-15);
        assert!((e[7] - c(1.0)).norm() < 1e-15);
        assert!((e.norm() - 2f64.sqrt() * 10f64.sqrt()).abs() < 1e-13);
        assert!(residual(&p, &z, false, b.eigenvalues.lambda1, &e) < 1e-12);
    }

    #[test]
    fn longitudinal_norm_is_sqrt_two_on_axis() {
        let p = PlasmaParams::new(0.0, 0.3, 0.0, 3.0).unwrap();
        for xi in [-4.0, -0.5, 0.0, 1.7] {
            let b = eigenbasis(&p, &Frequency::axis(xi)).unwrap();
            assert!((b.e_par_plus.norm() - 2f64.sqrt()).abs() < 1e-14);
            assert!((b.e_par_minus.norm() - 2f64.sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn all_vectors_are_eigenvectors() {
        for eps in [0.0, 1e-3, 0.2] {
            let p = PlasmaParams::new(eps, 0.15, 0.4, 3.0).unwrap();
            for z in [Frequency::new(0.4, [1.0, -2.5]), Frequency::axis(-2.0), Frequency::new(0.0, [0.0, 3.0]), Frequency::axis(0.0)] {
                let b = eigenbasis(&p, &z).unwrap();
                for (mu, v) in b.pairs() {
                    let r = residual(&p, &z, eps > 0.0, mu, &v);
                    assert!(r < 1e-10, "eps={eps} zeta={z:?} mu={mu} residual={r}");
                }
            }
        }
    }

    #[test]
    fn kernel_first_vector_is_b_parallel_to_zeta() {
        let p = PlasmaParams::new(1e-2, 0.1, 0.5, 2.0).unwrap();
        let z = Frequency::new(1.0, [2.0, -2.0]);
        let k = kernel_basis(&p, &z, true).unwrap();
        let a = symbol_matrix(&p, &z, true);
        assert_eq!((a * k[0]).norm(), 0.0);
        assert!((k[0][0] - c(1.0 / 3.0)).norm() < 1e-15);
        for i in 3..14 {
            assert_eq!(k[0][i], c(0.0));
        }
        assert!(matches!(kernel_basis(&p, &Frequency::axis(0.0), true), Err(SpectralError::ZeroFrequency)));
    }

    #[test]
    fn transverse_basis_is_orthonormal_and_orthogonal_to_zeta() {
        for z in [Frequency::new(0.3, [1.0, 2.0]), Frequency::new(0.0, [1.0, 0.0]), Frequency::axis(-1.0)] {
            let [a, b] = transverse_basis(&z);
            assert!((dot(a, a) - 1.0).abs() < 1e-14);
            assert!((dot(b, b) - 1.0).abs() < 1e-14);
            assert!(dot(a, b).abs() < 1e-14);
            assert!(dot(a, z.as_array()).abs() < 1e-14);
            assert!(dot(b, z.as_array()).abs() < 1e-14);
        }
    }
}
