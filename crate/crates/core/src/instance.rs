//! Parsing of TSPLIB-style CVRP files (Augerat dialect) and distance matrices.
//!
//! Internally the depot is always node 0 and clients are `1..n_clients`,
//! so file node `i` maps to internal node `i - 1`.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed header line `{text}`")]
    MalformedHeader { line: usize, text: String },
    #[error("missing header field {0}")]
    MissingField(&'static str),
    #[error("missing section {0}")]
    MissingSection(&'static str),
    #[error("line {line}: DIMENSION is {expected} but {section} lists {found} nodes")]
    DimensionMismatch {
        line: usize,
        section: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: unsupported EDGE_WEIGHT_TYPE `{value}` (only EUC_2D)")]
    UnsupportedEdgeWeight { line: usize, value: String },
    #[error("line {line}: depot demand must be 0, found {demand}")]
    DepotDemandNonzero { line: usize, demand: u32 },
    #[error("line {line}: depot must be node 1, found `{text}`")]
    UnexpectedDepot { line: usize, text: String },
    #[error("line {line}: invalid number in `{text}`")]
    InvalidNumber { line: usize, text: String },
    #[error("line {line}: node id {found} out of sequence (expected {expected})")]
    NodeOutOfOrder { line: usize, expected: usize, found: usize },
    #[error("line {line}: client demand {demand} outside 1..={capacity}")]
    InvalidClientDemand { line: usize, demand: u32, capacity: u32 },
    #[error("instance must contain a depot and at least one client")]
    TooSmall,
    #[error("coords and demands lengths differ ({coords} vs {demands})")]
    LengthMismatch { coords: usize, demands: usize },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

/// One CVRP instance. Node 0 is the depot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CvrpInstance {
    name: String,
    capacity: u32,
    coords: Vec<(i64, i64)>,
    demands: Vec<u32>,
    declared_vehicles: Option<u32>,
}

impl CvrpInstance {
    /// Builds an instance from in-memory data, checking every invariant.
    pub fn new(
        name: impl Into<String>,
        capacity: u32,
        coords: Vec<(i64, i64)>,
        demands: Vec<u32>,
    ) -> Result<Self, ParseError> {
        let name = name.into();
        if coords.len() != demands.len() {
            return Err(ParseError::LengthMismatch {
                coords: coords.len(),
                demands: demands.len(),
            });
        }
        if coords.len() < 2 {
            return Err(ParseError::TooSmall);
        }
        if demands[0] != 0 {
            return Err(ParseError::DepotDemandNonzero {
                line: 0,
                demand: demands[0],
            });
        }
        if let Some(&demand) = demands[1..].iter().find(|&&d| d == 0 || d > capacity) {
            return Err(ParseError::InvalidClientDemand {
                line: 0,
                demand,
                capacity,
            });
        }
        let declared_vehicles = vehicles_from_name(&name);
        Ok(Self {
            name,
            capacity,
            coords,
            demands,
            declared_vehicles,
        })
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, ParseError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| ParseError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        parse_instance(&text)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn capacity(&self) -> u32 {
        self.capacity
    }

    /// Node count including the depot.
    pub fn n_nodes(&self) -> usize {
        self.coords.len()
    }

    pub fn n_clients(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[(i64, i64)] {
        &self.coords
    }

    pub fn demands(&self) -> &[u32] {
        &self.demands
    }

    pub fn demand(&self, node: usize) -> u32 {
        self.demands[node]
    }

    /// The `k` in `P-n16-k8`; informational only.
    pub fn declared_vehicles(&self) -> Option<u32> {
        self.declared_vehicles
    }

    /// Dumps the node data in the same layout `parse_instance` reads.
    pub fn to_vrp_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "NAME : {}", self.name);
        let _ = writeln!(out, "TYPE : CVRP");
        let _ = writeln!(out, "DIMENSION : {}", self.n_nodes());
        let _ = writeln!(out, "EDGE_WEIGHT_TYPE : EUC_2D");
        let _ = writeln!(out, "CAPACITY : {}", self.capacity);
        let _ = writeln!(out, "NODE_COORD_SECTION");
        for (i, (x, y)) in self.coords.iter().enumerate() {
            let _ = writeln!(out, "{} {} {}", i + 1, x, y);
        }
        let _ = writeln!(out, "DEMAND_SECTION");
        for (i, d) in self.demands.iter().enumerate() {
            let _ = writeln!(out, "{} {}", i + 1, d);
        }
        let _ = writeln!(out, "DEPOT_SECTION\n1\n-1\nEOF");
        out
    }
}

fn vehicles_from_name(name: &str) -> Option<u32> {
    let idx = name.rfind("-k")?;
    name[idx + 2..].parse().ok()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    Coords,
    Demands,
    Depot,
    Done,
}

fn parse_numbers<const N: usize>(line: usize, text: &str) -> Result<[i64; N], ParseError> {
    let bad = || ParseError::InvalidNumber {
        line,
        text: text.trim().to_string(),
    };
    let mut out = [0i64; N];
    let mut fields = text.split_whitespace();
    for slot in out.iter_mut() {
        let field = fields.next().ok_or_else(bad)?;
        *slot = match field.parse::<i64>() {
            Ok(v) => v,
            // Some distributions write integral coordinates as `12.0`.
            Err(_) => {
                let f: f64 = field.parse().map_err(|_| bad())?;
                if f.fract() != 0.0 {
                    return Err(bad());
                }
                f as i64
            }
        };
    }
    if fields.next().is_some() {
        return Err(bad());
    }
    Ok(out)
}

/// Parses the full contents of a `.vrp` file.
pub fn parse_instance(text: &str) -> Result<CvrpInstance, ParseError> {
    let mut name = None;
    let mut dimension: Option<(usize, usize)> = None;
    let mut capacity = None;
    let mut edge_weight_seen = false;
    let mut coords: Vec<(i64, i64)> = Vec::new();
    let mut demands: Vec<u32> = Vec::new();
    let mut demand_lines: Vec<usize> = Vec::new();
    let mut seen_coords = false;
    let mut seen_demands = false;
    let mut section = Section::Header;
    let mut last_line = 0;

    let check_dim = |line: usize,
                     section: &'static str,
                     found: usize,
                     dimension: Option<(usize, usize)>|
     -> Result<usize, ParseError> {
        let (expected, _) = dimension.ok_or(ParseError::MissingField("DIMENSION"))?;
        if found != expected {
            return Err(ParseError::DimensionMismatch {
                line,
                section,
                expected,
                found,
            });
        }
        Ok(expected)
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        match trimmed {
            "NODE_COORD_SECTION" => {
                section = Section::Coords;
                seen_coords = true;
                continue;
            }
            "DEMAND_SECTION" => {
                if seen_coords {
                    check_dim(line, "NODE_COORD_SECTION", coords.len(), dimension)?;
                }
                section = Section::Demands;
                seen_demands = true;
                continue;
            }
            "DEPOT_SECTION" => {
                if seen_demands {
                    check_dim(line, "DEMAND_SECTION", demands.len(), dimension)?;
                }
                section = Section::Depot;
                continue;
            }
            "EOF" => {
                section = Section::Done;
                continue;
            }
            _ => {}
        }
        match section {
            Section::Header => {
                let Some((key, value)) = trimmed.split_once(':') else {
                    return Err(ParseError::MalformedHeader {
                        line,
                        text: trimmed.to_string(),
                    });
                };
                let key = key.trim();
                let value = value.trim();
                if key.is_empty() || !key.chars().all(|c| c.is_ascii_uppercase() || c == '_') {
                    return Err(ParseError::MalformedHeader {
                        line,
                        text: trimmed.to_string(),
                    });
                }
                let number = |v: &str| {
                    v.parse::<usize>().map_err(|_| ParseError::InvalidNumber {
                        line,
                        text: trimmed.to_string(),
                    })
                };
                match key {
                    "NAME" => name = Some(value.to_string()),
                    "DIMENSION" => dimension = Some((number(value)?, line)),
                    "CAPACITY" => capacity = Some(number(value)? as u32),
                    "EDGE_WEIGHT_TYPE" => {
                        if value != "EUC_2D" {
                            return Err(ParseError::UnsupportedEdgeWeight {
                                line,
                                value: value.to_string(),
                            });
                        }
                        edge_weight_seen = true;
                    }
                    // COMMENT, TYPE and other informational keys.
                    _ => {}
                }
            }
            Section::Coords => {
                let [id, x, y] = parse_numbers::<3>(line, trimmed)?;
                let expected = coords.len() + 1;
                if id != expected as i64 {
                    return Err(ParseError::NodeOutOfOrder {
                        line,
                        expected,
                        found: id.max(0) as usize,
                    });
                }
                coords.push((x, y));
            }
            Section::Demands => {
                let [id, demand] = parse_numbers::<2>(line, trimmed)?;
                let expected = demands.len() + 1;
                if id != expected as i64 {
                    return Err(ParseError::NodeOutOfOrder {
                        line,
                        expected,
                        found: id.max(0) as usize,
                    });
                }
                if demand < 0 {
                    return Err(ParseError::InvalidNumber {
                        line,
                        text: trimmed.to_string(),
                    });
                }
                demands.push(demand as u32);
                demand_lines.push(line);
            }
            Section::Depot => {
                let [id] = parse_numbers::<1>(line, trimmed)?;
                if id != 1 && id != -1 {
                    return Err(ParseError::UnexpectedDepot {
                        line,
                        text: trimmed.to_string(),
                    });
                }
            }
            Section::Done => {}
        }
    }

    let name = name.ok_or(ParseError::MissingField("NAME"))?;
    dimension.ok_or(ParseError::MissingField("DIMENSION"))?;
    let capacity = capacity.ok_or(ParseError::MissingField("CAPACITY"))?;
    if !edge_weight_seen {
        return Err(ParseError::MissingField("EDGE_WEIGHT_TYPE"));
    }
    if !seen_coords {
        return Err(ParseError::MissingSection("NODE_COORD_SECTION"));
    }
    if !seen_demands {
        return Err(ParseError::MissingSection("DEMAND_SECTION"));
    }
    check_dim(last_line, "NODE_COORD_SECTION", coords.len(), dimension)?;
    check_dim(last_line, "DEMAND_SECTION", demands.len(), dimension)?;

    if demands[0] != 0 {
        return Err(ParseError::DepotDemandNonzero {
            line: demand_lines[0],
            demand: demands[0],
        });
    }
    for (i, &d) in demands.iter().enumerate().skip(1) {
        if d == 0 || d > capacity {
            return Err(ParseError::InvalidClientDemand {
                line: demand_lines[i],
                demand: d,
                capacity,
            });
        }
    }
    CvrpInstance::new(name, capacity, coords, demands)
}

/// Symmetric matrix of rounded Euclidean distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    size: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.d[i * self.size..(i + 1) * self.size]
    }
}

/// TSPLIB `nint`: round half up.
pub fn euc_2d(a: (i64, i64), b: (i64, i64)) -> u32 {
    let dx = (a.0 - b.0) as f64;
    let dy = (a.1 - b.1) as f64;
    ((dx * dx + dy * dy).sqrt() + 0.5).floor() as u32
}

pub fn build_distance_matrix(instance: &CvrpInstance) -> DistanceMatrix {
    let n = instance.n_nodes();
    let coords = instance.coords();
    let mut d = vec![0u32; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = euc_2d(coords[i], coords[j]);
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    }
    DistanceMatrix { size: n, d }
}
