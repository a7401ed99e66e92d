use super::phase::phase;
use super::roots::{default_xi_window, find_axis_resonances};
use super::{PairLabel, ResonanceError};
use crate::{Frequency, PlasmaParams};
use serde::{Deserialize, Serialize};

/// Width constants of the four nested cut-offs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CutoffVariant {
    Flat,
    Base,
    Sharp,
    Tilde,
}

impl CutoffVariant {
    pub fn constant(self) -> f64 {
        match self {
            CutoffVariant::Flat => 4.0,
            CutoffVariant::Base => 2.0,
            CutoffVariant::Sharp => 1.0,
            CutoffVariant::Tilde => 0.5,
        }
    }
}

impl std::str::FromStr for CutoffVariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "flat" => Ok(Self::Flat),
            "base" => Ok(Self::Base),
            "sharp" => Ok(Self::Sharp),
            "tilde" => Ok(Self::Tilde),
            other => Err(format!("unknown cut-off variant '{other}'")),
        }
    }
}

fn smooth_step_part(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

/// Plateau profile: 1 on `|x| <= 1`, 0 on `|x| >= 2`, smooth and monotone in between.
pub fn chi0(x: f64) -> f64 {
    let a = x.abs();
    if a <= 1.0 {
        1.0
    } else if a >= 2.0 {
        0.0
    } else {
        let up = smooth_step_part(2.0 - a);
        up / (up + smooth_step_part(a - 1.0))
    }
}

/// Whether `(j, j')` is a resonant pair at these parameters. The pair (1,5)
/// never is; (1,4), (2,4), (2,5) are only above the threshold, which is
/// detected by the presence of axis roots (these phases are minimal on the axis).
pub fn is_resonant_pair(params: &PlasmaParams, pair: PairLabel) -> bool {
    match (pair.j(), pair.jp()) {
        (1, 5) => false,
        (1, 4) | (2, 4) | (2, 5) => find_axis_resonances(params, pair, default_xi_window(params, pair), 1e-6)
            .map(|r| !r.is_empty())
            .unwrap_or(false),
        _ => true,
    }
}

/// Cut-offs for all pairs at fixed parameters, with resonance of each pair
/// decided once.
#[derive(Debug, Clone)]
pub struct CutoffFamily {
    params: PlasmaParams,
    resonant: Vec<(PairLabel, bool)>,
}

impl CutoffFamily {
    pub fn new(params: &PlasmaParams) -> Self {
        let resonant = PairLabel::all().into_iter().map(|p| (p, is_resonant_pair(params, p))).collect();
        Self { params: *params, resonant }
    }

    pub fn is_resonant(&self, pair: PairLabel) -> bool {
        self.resonant.iter().any(|&(p, r)| p == pair && r)
    }

    /// `chi0(C sqrt(Phi^2 + (delta/6)^2) / delta)`; 0 for non-resonant pairs.
    pub fn chi(&self, pair: PairLabel, delta_res: f64, variant: CutoffVariant, zeta: &Frequency) -> Result<f64, ResonanceError> {
        if !(delta_res > 0.0) {
            return Err(ResonanceError::InvalidDelta(delta_res));
        }
        if !self.is_resonant(pair) {
            return Ok(0.0);
        }
        let phi = phase(&self.params, pair, zeta.xi, zeta.r());
        let s = (phi * phi + (delta_res / 6.0).powi(2)).sqrt();
        Ok(chi0(variant.constant() * s / delta_res))
    }
}

/// One-off evaluation of a cut-off; use [`CutoffFamily`] for repeated calls.
pub fn cutoff_chi(
    params: &PlasmaParams,
    pair: PairLabel,
    delta_res: f64,
    variant: CutoffVariant,
    zeta: &Frequency,
) -> Result<f64, ResonanceError> {
    CutoffFamily::new(params).chi(pair, delta_res, variant, zeta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_plateaus_and_monotonicity() {
        assert_eq!(chi0(0.0), 1.0);
        assert_eq!(chi0(1.0), 1.0);
        assert_eq!(chi0(-2.0), 0.0);
        assert!((chi0(1.5) - 0.5).abs() < 1e-15);
        let mut prev = 1.0;
        for i in 0..=100 {
            let v = chi0(1.0 + i as f64 / 100.0);
            assert!(v <= prev + 1e-15);
            prev = v;
        }
    }

    #[test]
    fn equals_one_on_the_resonant_set() {
        let p = PlasmaParams::new(0.0, 0.1, 0.0, 3.0).unwrap();
        let fam = CutoffFamily::new(&p);
        for v in [CutoffVariant::Flat, CutoffVariant::Base, CutoffVariant::Sharp, CutoffVariant::Tilde] {
            assert_eq!(fam.chi(PairLabel::of(1, 3), 1e-2, v, &Frequency::axis(0.0)).unwrap(), 1.0);
        }
    }

    #[test]
    fn non_resonant_pairs_vanish() {
        let p = PlasmaParams::new(0.0, 0.1, 0.0, 1.0).unwrap();
        let fam = CutoffFamily::new(&p);
        assert!(!fam.is_resonant(PairLabel::of(1, 5)));
        assert!(!fam.is_resonant(PairLabel::of(1, 4)));
        assert_eq!(fam.chi(PairLabel::of(1, 4), 0.1, CutoffVariant::Tilde, &Frequency::axis(-1.0)).unwrap(), 0.0);
        assert!(fam.chi(PairLabel::of(1, 2), 0.0, CutoffVariant::Base, &Frequency::axis(0.0)).is_err());
    }
}
