//! TSPLIB instance model and parser.
//!
//! Handles the EUC_2D subset of the TSPLIB format: `KEY : VALUE` header
//! lines, a `NODE_COORD_SECTION` with one `<id> <x> <y>` line per city, and
//! an optional `EOF` terminator. City ids are 1-based and must cover exactly
//! `{1..N}`; file order is preserved. Anything outside that subset is
//! rejected loudly rather than guessed at.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

/// Distance interpretation for EUC_2D coordinates.
///
/// `Rounded` is the TSPLIB convention (nearest integer, halves away from
/// zero); `Real` keeps the exact Euclidean value. Costs are carried as `f64`
/// in both modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Euc2dRounded,
    Euc2dReal,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Euc2dRounded => "rounded",
            Metric::Euc2dReal => "real",
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rounded" => Ok(Metric::Euc2dRounded),
            "real" => Ok(Metric::Euc2dReal),
            other => Err(format!("unknown metric {other:?}, expected rounded|real")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct City {
    pub id: u32,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("missing required header {0}")]
    MissingHeader(&'static str),
    #[error("DIMENSION says {expected} cities but the coordinate section has {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported EDGE_WEIGHT_TYPE {0:?}, only EUC_2D is handled")]
    UnsupportedEdgeWeightType(String),
    #[error("duplicate node id {0}")]
    DuplicateNodeId(u32),
    #[error("node id {id} outside 1..={n}")]
    InvalidNodeId { id: u32, n: usize },
    #[error("need at least 3 cities, got {0}")]
    TooFewCities(usize),
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
}

/// An immutable symmetric TSP instance over 2-D coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    name: String,
    cities: Vec<City>,
    by_id: Vec<u32>,
    metric: Metric,
    known_optimal: Option<f64>,
}

impl Instance {
    /// Builds an instance from parts, enforcing the type invariants:
    /// at least 3 cities, ids exactly `{1..N}`, finite coordinates.
    pub fn new(
        name: impl Into<String>,
        cities: Vec<City>,
        metric: Metric,
        known_optimal: Option<f64>,
    ) -> Result<Instance, ParseError> {
        let n = cities.len();
        if n < 3 {
            return Err(ParseError::TooFewCities(n));
        }
        let mut by_id = vec![u32::MAX; n];
        for (idx, city) in cities.iter().enumerate() {
            if city.id < 1 || city.id as usize > n {
                return Err(ParseError::InvalidNodeId { id: city.id, n });
            }
            if !city.x.is_finite() || !city.y.is_finite() {
                return Err(ParseError::Malformed {
                    line: 0,
                    msg: format!("non-finite coordinate for node {}", city.id),
                });
            }
            let slot = &mut by_id[city.id as usize - 1];
            if *slot != u32::MAX {
                return Err(ParseError::DuplicateNodeId(city.id));
            }
            *slot = idx as u32;
        }
        Ok(Instance {
            name: name.into(),
            cities,
            by_id,
            metric,
            known_optimal,
        })
    }

    pub fn from_file(
        path: impl AsRef<Path>,
        metric_override: Option<Metric>,
    ) -> Result<Instance, LoadError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        parse_instance(&text, metric_override).map_err(|source| LoadError::Parse {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of cities N.
    pub fn dimension(&self) -> usize {
        self.cities.len()
    }

    /// Cities in file order.
    pub fn cities(&self) -> &[City] {
        &self.cities
    }

    /// Looks up a city by its 1-based id.
    pub fn city(&self, id: u32) -> &City {
        assert!(
            id >= 1 && id as usize <= self.cities.len(),
            "city id {id} outside 1..={}",
            self.cities.len()
        );
        &self.cities[self.by_id[id as usize - 1] as usize]
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    /// Best known tour cost, if the instance is in the bundled table or one
    /// was supplied explicitly.
    pub fn known_optimal(&self) -> Option<f64> {
        self.known_optimal
    }

    pub fn set_known_optimal(&mut self, value: Option<f64>) {
        self.known_optimal = value;
    }

    /// Renders the instance back to TSPLIB text. Re-parsing the output (with
    /// the same metric override) reproduces the instance field by field.
    pub fn to_tsplib(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "NAME : {}", self.name);
        let _ = writeln!(out, "TYPE : TSP");
        let _ = writeln!(out, "DIMENSION : {}", self.cities.len());
        let _ = writeln!(out, "EDGE_WEIGHT_TYPE : EUC_2D");
        let _ = writeln!(out, "NODE_COORD_SECTION");
        for c in &self.cities {
            let _ = writeln!(out, "{} {} {}", c.id, c.x, c.y);
        }
        out.push_str("EOF\n");
        out
    }
}

/// Parses TSPLIB text. The metric defaults to [`Metric::Euc2dRounded`];
/// `metric_override` replaces it. The known optimum is filled from the
/// bundled table keyed by instance name.
pub fn parse_instance(
    text: &str,
    metric_override: Option<Metric>,
) -> Result<Instance, ParseError> {
    let mut name: Option<String> = None;
    let mut dimension: Option<usize> = None;
    let mut edge_weight_type: Option<String> = None;
    let mut cities: Vec<City> = Vec::new();
    let mut in_coords = false;
    let mut finished = false;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if finished {
            break;
        }
        if !in_coords {
            if line == "NODE_COORD_SECTION" {
                in_coords = true;
                continue;
            }
            let (key, value) = line.split_once(':').ok_or_else(|| ParseError::Malformed {
                line: lineno + 1,
                msg: format!("expected KEY : VALUE, got {line:?}"),
            })?;
            let value = value.trim();
            match key.trim().to_ascii_uppercase().as_str() {
                "NAME" => name = Some(value.to_string()),
                "DIMENSION" => {
                    dimension = Some(value.parse().map_err(|_| ParseError::Malformed {
                        line: lineno + 1,
                        msg: format!("bad DIMENSION {value:?}"),
                    })?)
                }
                "EDGE_WEIGHT_TYPE" => edge_weight_type = Some(value.to_string()),
                _ => {} // COMMENT, TYPE, ... are irrelevant here
            }
        } else if line == "EOF" {
            finished = true;
        } else {
            let mut it = line.split_whitespace();
            let (id, x, y) = match (it.next(), it.next(), it.next(), it.next()) {
                (Some(id), Some(x), Some(y), None) => (id, x, y),
                _ => {
                    return Err(ParseError::Malformed {
                        line: lineno + 1,
                        msg: format!("expected <id> <x> <y>, got {line:?}"),
                    })
                }
            };
            let parse_err = |what: &str| ParseError::Malformed {
                line: lineno + 1,
                msg: format!("bad {what} in {line:?}"),
            };
            cities.push(City {
                id: id.parse().map_err(|_| parse_err("node id"))?,
                x: x.parse().map_err(|_| parse_err("x coordinate"))?,
                y: y.parse().map_err(|_| parse_err("y coordinate"))?,
            });
        }
    }

    let name = name.ok_or(ParseError::MissingHeader("NAME"))?;
    let dimension = dimension.ok_or(ParseError::MissingHeader("DIMENSION"))?;
    if !in_coords {
        return Err(ParseError::MissingHeader("NODE_COORD_SECTION"));
    }
    match edge_weight_type.as_deref() {
        Some("EUC_2D") => {}
        Some(other) => return Err(ParseError::UnsupportedEdgeWeightType(other.to_string())),
        None => return Err(ParseError::UnsupportedEdgeWeightType("<missing>".to_string())),
    }
    if cities.len() != dimension {
        return Err(ParseError::DimensionMismatch {
            expected: dimension,
            found: cities.len(),
        });
    }

    let metric = metric_override.unwrap_or(Metric::Euc2dRounded);
    let optimal = known_optimum(&name);
    Instance::new(name, cities, metric, optimal)
}

/// Best known tour costs (rounded EUC_2D) for the classic benchmark
/// instances this toolkit targets, keyed case-insensitively by name.
pub fn known_optimum(name: &str) -> Option<f64> {
    const TABLE: &[(&str, f64)] = &[
        ("eil51", 426.0),
        ("berlin52", 7542.0),
        ("st70", 675.0),
        ("kroA100", 21282.0),
        ("bier127", 118282.0),
        ("ch150", 6528.0),
        ("pr152", 73682.0),
        ("rat195", 2323.0),
        ("kroA200", 29368.0),
        ("pr226", 80369.0),
        ("a280", 2579.0),
        ("lin318", 42029.0),
    ];
    TABLE
        .iter()
        .find(|(k, _)| k.eq_ignore_ascii_case(name))
        .map(|&(_, v)| v)
}
