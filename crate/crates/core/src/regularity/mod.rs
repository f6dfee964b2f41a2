//! Hölder-exponent machinery: wavelet transform, scale scans, slope fits and
//! the exponent predictions they are checked against.

mod cone;
mod fit;
mod growth;
mod local;
mod oscillation;
mod point;
mod predict;
mod vertical;
mod wavelet;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub use cone::{cone_scan, fixture_cone_scan, leader_scan, ConeParams, LeaderParams};
pub use fit::{fit_linear, fit_slope, ExponentEstimate, LinearFit};
pub use growth::{l2_energy_check, partial_sum_growth, EnergyBand, GrowthEstimate};
pub use local::{estimate_beta_starstar, local_pair_scan, LocalEstimate, LocalParams};
pub use oscillation::{
    estimate_beta_oscillation, estimate_beta_star, oscillation_scan, OscillationParams, RestrictedEstimate,
};
pub use point::{IrrationalTag, ProbePoint};
pub use predict::{predict_exponents, predict_spectrum, RegularityPrediction, Spectrum};
pub use vertical::{vertical_scan, DecayFit, DecayModel};
pub use wavelet::{
    wavelet_constant, wavelet_psi, wavelet_transform_function, wavelet_transform_quadrature,
    wavelet_transform_series,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScanKind {
    Cone,
    /// Supremum of the wavelet modulus over the box `|x − x₀| ≤ 2^{−j}`,
    /// `y ≤ 2^{−j}` (a continuous-wavelet leader).
    Leader,
    Oscillation,
    Vertical,
    PartialSum,
    LocalPair,
}

impl ScanKind {
    pub fn name(self) -> &'static str {
        match self {
            ScanKind::Cone => "cone",
            ScanKind::Leader => "leader",
            ScanKind::Oscillation => "oscillation",
            ScanKind::Vertical => "vertical",
            ScanKind::PartialSum => "partial_sum",
            ScanKind::LocalPair => "local_pair",
        }
    }
}

/// One row of a scan. `log2_modulus` is `None` for a sentinel (zero or
/// below the numerical floor), which fits skip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint {
    pub j: i32,
    pub log2_scale: f64,
    pub log2_modulus: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScaleScan {
    pub kind: ScanKind,
    pub points: Vec<ScanPoint>,
    pub params: BTreeMap<String, String>,
}

impl ScaleScan {
    pub fn new(kind: ScanKind) -> Self {
        Self { kind, points: Vec::new(), params: BTreeMap::new() }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// Appends a row; moduli that are zero, non-finite or below `1e−300`
    /// become sentinels.
    pub fn push(&mut self, j: i32, log2_scale: f64, modulus: f64) {
        let log2_modulus = (modulus.is_finite() && modulus > 1e-300).then(|| modulus.log2());
        self.points.push(ScanPoint { j, log2_scale, log2_modulus });
    }

    pub fn push_sentinel(&mut self, j: i32, log2_scale: f64) {
        self.points.push(ScanPoint { j, log2_scale, log2_modulus: None });
    }

    pub fn usable(&self) -> usize {
        self.points.iter().filter(|p| p.log2_modulus.is_some()).count()
    }

    /// Refuses scans without a single usable row, and checks the ordering
    /// invariant (scales strictly decreasing).
    pub(crate) fn finish(self) -> Result<Self> {
        if self.usable() == 0 {
            return Err(Error::DegenerateScan(format!(
                "{} scan: every modulus is zero or below the numerical floor",
                self.kind.name()
            )));
        }
        if self.points.windows(2).any(|w| w[1].log2_scale >= w[0].log2_scale) {
            return Err(Error::Numerical("scan scales are not strictly decreasing".into()));
        }
        Ok(self)
    }

    /// `j,log2_scale,log2_modulus` with `nan` for sentinels.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,log2_scale,log2_modulus\n");
        for p in &self.points {
            let m = p.log2_modulus.map_or_else(|| "nan".to_string(), |m| format!("{m:.16e}"));
            let _ = writeln!(out, "{},{:.16e},{}", p.j, p.log2_scale, m);
        }
        out
    }
}

/// Inclusive range of scale indices `j` (scales `2^{−j}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScaleRange {
    pub start: i32,
    pub end: i32,
}

impl ScaleRange {
    pub fn new(start: i32, end: i32) -> Result<Self> {
        if start > end {
            return Err(Error::Input(format!("empty scale range {start}:{end}")));
        }
        Ok(Self { start, end })
    }

    pub fn iter(self) -> impl Iterator<Item = i32> {
        self.start..=self.end
    }

    pub fn contains(self, j: i32) -> bool {
        (self.start..=self.end).contains(&j)
    }
}

impl std::str::FromStr for ScaleRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("scale range must look like j0:j1, got `{s}`"));
        let (a, b) = s.split_once(':').ok_or_else(bad)?;
        Self::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
    }
}

impl std::fmt::Display for ScaleRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.start, self.end)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sentinels_and_csv() {
        let mut scan = ScaleScan::new(ScanKind::Cone).param("x0", 0.5);
        scan.push(1, -1.0, 0.5);
        scan.push(2, -2.0, 0.0);
        assert_eq!(scan.usable(), 1);
        let csv = scan.to_csv();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.lines().nth(2).unwrap().ends_with(",nan"));
        assert!(scan.finish().is_ok());
    }

    #[test]
    fn degenerate_scan_refused() {
        let mut scan = ScaleScan::new(ScanKind::Oscillation);
        scan.push(1, -1.0, 0.0);
        assert!(matches!(scan.finish(), Err(Error::DegenerateScan(_))));
    }

    #[test]
    fn scale_range_parse() {
        let r: ScaleRange = "6:16".parse().unwrap();
        assert_eq!((r.start, r.end), (6, 16));
        assert!("7:3".parse::<ScaleRange>().is_err());
        assert!("7".parse::<ScaleRange>().is_err());
    }
}
