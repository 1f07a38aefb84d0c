use serde::{Deserialize, Serialize};

use crate::complex::Face;
use crate::error::{Error, Result};
use crate::metric::{euclidean, sphere_angle, FiniteMetricSample};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodomainMetric {
    Euclidean,
    /// Great-circle distance; values must be unit vectors.
    Geodesic,
}

impl CodomainMetric {
    pub fn distance(self, u: &[f64], v: &[f64]) -> f64 {
        match self {
            CodomainMetric::Euclidean => euclidean(u, v),
            CodomainMetric::Geodesic => sphere_angle(u, v),
        }
    }
}

/// Evaluation table of a (possibly discontinuous) function on a finite sample.
///
/// `carriers[i]`, when present, is the smallest face of the underlying
/// simplicial complex containing sample point `i`; disjointness of
/// configurations is decided from these labels, never from coordinates.
#[derive(Clone, Debug)]
pub struct SampledFunction {
    domain: FiniteMetricSample,
    values: Vec<Vec<f64>>,
    value_dim: usize,
    resolution: f64,
    carriers: Option<Vec<Face>>,
    hot_spots: Vec<usize>,
}

impl SampledFunction {
    pub fn new(domain: FiniteMetricSample, values: Vec<Vec<f64>>, resolution: f64) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::invalid(format!("{} values for {} sample points", values.len(), domain.len())));
        }
        if !(resolution > 0.0) {
            return Err(Error::invalid("resolution must be positive"));
        }
        let value_dim = values.first().map_or(0, Vec::len);
        if values.iter().any(|v| v.len() != value_dim || v.iter().any(|x| !x.is_finite())) {
            return Err(Error::invalid("values must be finite vectors of one common dimension"));
        }
        Ok(Self { domain, values, value_dim, resolution, carriers: None, hot_spots: Vec::new() })
    }

    pub fn with_carriers(mut self, carriers: Vec<Face>) -> Result<Self> {
        if carriers.len() != self.values.len() {
            return Err(Error::invalid("one carrier face per sample point required"));
        }
        if carriers.iter().any(|c| c.is_empty() || c.windows(2).any(|w| w[0] >= w[1])) {
            return Err(Error::invalid("carrier faces must be nonempty and strictly increasing"));
        }
        self.carriers = Some(carriers);
        Ok(self)
    }

    pub fn with_hot_spots(mut self, hot_spots: Vec<usize>) -> Result<Self> {
        if hot_spots.iter().any(|&h| h >= self.values.len()) {
            return Err(Error::invalid("hot spot index out of range"));
        }
        self.hot_spots = hot_spots;
        Ok(self)
    }

    pub fn domain(&self) -> &FiniteMetricSample {
        &self.domain
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &[f64] {
        &self.values[i]
    }

    pub fn value_dim(&self) -> usize {
        self.value_dim
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Covering radius of the sample in its domain.
    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn carriers(&self) -> Option<&[Face]> {
        self.carriers.as_deref()
    }

    pub fn hot_spots(&self) -> &[usize] {
        &self.hot_spots
    }

    /// Precomposition with a map of samples: value `i` of the result is
    /// `self.value(map[i])` on the given domain.
    pub fn precompose(&self, domain: FiniteMetricSample, map: &[usize], resolution: f64) -> Result<Self> {
        if map.len() != domain.len() || map.iter().any(|&m| m >= self.len()) {
            return Err(Error::invalid("precomposition map does not fit the domains"));
        }
        SampledFunction::new(domain, map.iter().map(|&m| self.values[m].clone()).collect(), resolution)
    }

    /// Writes `index,x0..,y0..` rows (domain coordinates, then values).
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let dim = self.domain.points().first().map_or(0, Vec::len);
        let mut header = vec!["index".to_string()];
        header.extend((0..dim).map(|k| format!("x{k}")));
        header.extend((0..self.value_dim).map(|k| format!("y{k}")));
        w.write_record(&header)?;
        for i in 0..self.len() {
            let mut rec = vec![i.to_string()];
            if dim > 0 {
                rec.extend(self.domain.point(i).iter().map(|x| format!("{x:?}")));
            }
            rec.extend(self.values[i].iter().map(|x| format!("{x:?}")));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}
