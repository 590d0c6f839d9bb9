//! Configuration files for `evaluate`.

use std::path::Path;

use anyhow::{bail, Context, Result};
use pentacc::equations::{Exponent, MassVector};
use pentacc::geometry::{DistanceTable, DistanceVector, PlanarConfiguration, Point2};
use serde::Deserialize;

/// `{"points": [[x, y] × 5]}` or `{"distances": [6 classes]}`, with optional
/// `"masses"` and `"A"` (number or `"p/q"` string).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub points: Option<Vec<[f64; 2]>>,
    pub distances: Option<Vec<f64>>,
    pub masses: Option<Vec<f64>>,
    #[serde(rename = "A")]
    pub a: Option<ExponentValue>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum ExponentValue {
    Number(f64),
    Text(String),
}

pub enum Geometry {
    Points(PlanarConfiguration),
    Distances(DistanceVector),
}

pub struct Configuration {
    pub geometry: Geometry,
    pub masses: MassVector,
    pub exponent: Option<Exponent>,
}

impl Geometry {
    pub fn table(&self) -> pentacc::Result<DistanceTable> {
        match self {
            Geometry::Points(c) => Ok(pentacc::geometry::mutual_distances(c)?.table),
            Geometry::Distances(d) => Ok(DistanceTable::from_classes(d)),
        }
    }
}

pub fn read_configuration(path: &Path) -> Result<Configuration> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_configuration(&text)
}

pub fn parse_configuration(text: &str) -> Result<Configuration> {
    let file: ConfigFile = serde_json::from_str(text).context("parsing configuration JSON")?;
    let geometry = match (file.points, file.distances) {
        (Some(p), None) => {
            if p.len() != 5 {
                bail!("expected 5 points, got {}", p.len());
            }
            let pts: [Point2; 5] = std::array::from_fn(|i| Point2::new(p[i][0], p[i][1]));
            if pts.iter().any(|q| !(q.x.is_finite() && q.y.is_finite())) {
                bail!("non-finite coordinate");
            }
            Geometry::Points(PlanarConfiguration::new(pts))
        }
        (None, Some(d)) => {
            let d: [f64; 6] = d
                .try_into()
                .map_err(|d: Vec<f64>| anyhow::anyhow!("expected 6 distance classes, got {}", d.len()))?;
            Geometry::Distances(DistanceVector::new(d)?)
        }
        _ => bail!("configuration needs exactly one of \"points\" or \"distances\""),
    };
    let masses = match file.masses {
        Some(m) => {
            let m: [f64; 5] = m
                .try_into()
                .map_err(|m: Vec<f64>| anyhow::anyhow!("expected 5 masses, got {}", m.len()))?;
            MassVector::new(m)?
        }
        None => MassVector::equal(),
    };
    let exponent = match file.a {
        None => None,
        Some(ExponentValue::Number(v)) => Some(Exponent::new(v)?),
        Some(ExponentValue::Text(s)) => Some(s.parse::<Exponent>()?),
    };
    Ok(Configuration {
        geometry,
        masses,
        exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_points_and_distances() {
        let c = parse_configuration(r#"{"distances": [1, 1.6, 1.6, 1.6, 1.6, 1.6], "A": "5/2"}"#).unwrap();
        assert!(matches!(c.geometry, Geometry::Distances(_)));
        assert_eq!(c.exponent.unwrap().rational, Some((5, 2)));
        let c = parse_configuration(
            r#"{"points": [[0,0],[1,0],[1,1],[0,1],[0.5,2]], "masses": [1,2,3,4,5]}"#,
        )
        .unwrap();
        assert_eq!(c.masses.get(5), 5.0);
    }

    #[test]
    fn rejects_malformed_inputs() {
        assert!(parse_configuration(r#"{"points": [[0,0]]}"#).is_err());
        assert!(parse_configuration(r#"{"distances": [1, 1, 1, 1, 1, -1]}"#).is_err());
        assert!(parse_configuration(r#"{"distances": [1, 1, 1, 1, 1, 1], "A": 1.5}"#).is_err());
        assert!(parse_configuration(r#"{"distances": [1,1,1,1,1,1], "points": []}"#).is_err());
        assert!(parse_configuration(r#"{"distances": [1,1,1,1,1,1], "extra": 1}"#).is_err());
    }
}
