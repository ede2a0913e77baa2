use alloc::format;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Mean Earth radius (IUGG), kilometres.
pub const EARTH_RADIUS_KM: f64 = 6371.0088;

/// WGS84 coordinate in decimal degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatLon {
    pub lat: f64,
    pub lon: f64,
}

impl LatLon {
    pub fn new(lat: f64, lon: f64) -> Result<Self> {
        let p = Self { lat, lon };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(-90.0..=90.0).contains(&self.lat) || !(-180.0..=180.0).contains(&self.lon) {
            return Err(Error::arg(format!(
                "coordinate ({}, {}) out of range: lat must be in [-90, 90], lon in [-180, 180]",
                self.lat, self.lon
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoPair {
    pub gold: LatLon,
    pub pred: LatLon,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoSummary {
    pub median_km: f64,
    pub mean_km: f64,
}

/// Great-circle distance on the mean-radius sphere.
pub fn haversine_km(a: LatLon, b: LatLon) -> Result<f64> {
    a.validate()?;
    b.validate()?;
    let phi1 = a.lat.to_radians();
    let phi2 = b.lat.to_radians();
    let half_dphi = (phi2 - phi1) / 2.0;
    let half_dlambda = (b.lon - a.lon).to_radians() / 2.0;
    let s1 = libm::sin(half_dphi);
    let s2 = libm::sin(half_dlambda);
    let h = s1 * s1 + libm::cos(phi1) * libm::cos(phi2) * s2 * s2;
    let h = h.clamp(0.0, 1.0);
    Ok(2.0 * EARTH_RADIUS_KM * libm::asin(libm::sqrt(h)))
}

/// Median with the even-n rule (mean of the two middle order statistics).
pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_unstable_by(f64::total_cmp);
    let n = values.len();
    Some(if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    })
}

pub fn geo_eval(pairs: &[GeoPair]) -> Result<GeoSummary> {
    if pairs.is_empty() {
        return Err(Error::arg("geo_eval needs at least one pair"));
    }
    let mut distances = pairs
        .iter()
        .map(|p| haversine_km(p.gold, p.pred))
        .collect::<Result<Vec<_>>>()?;
    let mean_km = distances.iter().sum::<f64>() / distances.len() as f64;
    let median_km = median(&mut distances).expect("non-empty");
    Ok(GeoSummary { median_km, mean_km })
}

/// Arithmetic mean of latitudes and of longitudes.
pub fn centroid(train: &[LatLon]) -> Result<LatLon> {
    if train.is_empty() {
        return Err(Error::arg("centroid needs at least one training point"));
    }
    let n = train.len() as f64;
    let lat = train.iter().map(|p| p.lat).sum::<f64>() / n;
    let lon = train.iter().map(|p| p.lon).sum::<f64>() / n;
    LatLon::new(lat, lon)
}

/// Scores the constant training-centroid prediction against gold test points.
pub fn centroid_baseline(train: &[LatLon], test_gold: &[LatLon]) -> Result<GeoSummary> {
    if test_gold.is_empty() {
        return Err(Error::arg("centroid baseline needs at least one test point"));
    }
    let c = centroid(train)?;
    let pairs: Vec<GeoPair> = test_gold.iter().map(|&gold| GeoPair { gold, pred: c }).collect();
    geo_eval(&pairs)
}
