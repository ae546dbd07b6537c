//! On-disk network description.

use std::path::Path;

use coverage_repair::complex::ComplexKind;
use coverage_repair::geometry::{Domain, Point2, TaggedPoint};
use serde::{Deserialize, Serialize};

use crate::Failure;

pub const DEFAULT_SIDE: f64 = 1.0;
pub const DEFAULT_RADIUS: f64 = 0.25;

fn default_side() -> f64 {
    DEFAULT_SIDE
}

fn default_radius() -> f64 {
    DEFAULT_RADIUS
}

/// A damaged network: the square `[0, a]^2`, the coverage radius, the
/// complex used to judge coverage, the surviving vertices and, optionally,
/// the perimeter vertices to use instead of the generated ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkFile {
    #[serde(default = "default_side")]
    pub a: f64,
    #[serde(default = "default_radius")]
    pub r: f64,
    #[serde(default)]
    pub kind: ComplexKind,
    #[serde(default)]
    pub existing: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<[f64; 2]>>,
}

impl Default for NetworkFile {
    fn default() -> Self {
        NetworkFile {
            a: DEFAULT_SIDE,
            r: DEFAULT_RADIUS,
            kind: ComplexKind::default(),
            existing: Vec::new(),
            boundary: None,
        }
    }
}

impl NetworkFile {
    pub fn from_json(text: &str) -> Result<Self, Failure> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: NetworkFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            if path == "." {
                Failure::Input(e.inner().to_string())
            } else {
                Failure::Input(format!("field `{path}`: {}", e.inner()))
            }
        })?;
        file.validate()?;
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("network files always serialize")
    }

    pub fn validate(&self) -> Result<(), Failure> {
        if !(self.a.is_finite() && self.a > 0.0) {
            return Err(Failure::Input(format!("field `a`: must be finite and > 0, got {}", self.a)));
        }
        if !(self.r.is_finite() && self.r > 0.0) {
            return Err(Failure::Input(format!("field `r`: must be finite and > 0, got {}", self.r)));
        }
        let lists = [("existing", Some(&self.existing)), ("boundary", self.boundary.as_ref())];
        for (name, list) in lists {
            for (i, [x, y]) in list.into_iter().flatten().enumerate() {
                let inside = |c: &f64| c.is_finite() && (0.0..=self.a).contains(c);
                if !(inside(x) && inside(y)) {
                    return Err(Failure::Input(format!(
                        "field `{name}[{i}]`: point ({x}, {y}) lies outside [0, {}]^2",
                        self.a
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> Domain {
        Domain::new(self.a).expect("validated side")
    }

    pub fn existing_points(&self) -> Vec<Point2> {
        self.existing.iter().map(|&p| p.into()).collect()
    }

    pub fn existing_tagged(&self) -> Vec<TaggedPoint> {
        self.existing.iter().map(|&p| TaggedPoint::existing(p.into())).collect()
    }

    pub fn boundary_points(&self) -> Option<Vec<Point2>> {
        self.boundary.as_ref().map(|b| b.iter().map(|&p| p.into()).collect())
    }
}
