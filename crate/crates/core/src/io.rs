//! JSON documents for the shared types. Rationals are `"p/q"` strings, sets
//! are sorted, and object keys come out in a fixed order, so equal values
//! always serialize to identical bytes.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::dyadic::Refinement;
use crate::lattice_core::{
    format_rational, parse_rational, BoxUnion, GridTiling, Interval, LatticeError, LatticeSet,
    LatticeVector, LineFamily, RationalBox,
};
use crate::search::{Outcome, RealizeSweep, SearchReport, Violation};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("{0}")]
    Schema(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TilingDoc {
    pub n: usize,
    pub m: usize,
    pub u: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxUnionDoc {
    pub n: usize,
    pub boxes: Vec<Vec<[String; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSetDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub points: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinesDoc {
    pub dirs: Vec<Vec<i64>>,
}

fn nonempty(c: &[i64], what: &str) -> Result<(), IoError> {
    if c.is_empty() {
        Err(IoError::Schema(format!("{what} has no coordinates")))
    } else {
        Ok(())
    }
}

impl TilingDoc {
    pub fn from_tiling(t: &GridTiling) -> Self {
        TilingDoc {
            n: t.dim(),
            m: t.resolution(),
            u: t.translations()
                .iter()
                .map(|v| v.coords().to_vec())
                .collect(),
        }
    }

    pub fn to_tiling(&self) -> Result<GridTiling, IoError> {
        for c in &self.u {
            nonempty(c, "translation")?;
        }
        Ok(GridTiling::new(
            self.n,
            self.m,
            self.u
                .iter()
                .map(|c| LatticeVector::new(c.clone()))
                .collect(),
        )?)
    }
}

impl BoxUnionDoc {
    pub fn from_union(k: &BoxUnion) -> Self {
        BoxUnionDoc {
            n: k.dim(),
            boxes: k
                .boxes()
                .iter()
                .map(|b| {
                    b.sides()
                        .iter()
                        .map(|s| [format_rational(&s.lo), format_rational(&s.hi)])
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_union(&self) -> Result<BoxUnion, IoError> {
        let boxes = self
            .boxes
            .iter()
            .map(|b| {
                let sides = b
                    .iter()
                    .map(|[lo, hi]| Interval::new(parse_rational(lo)?, parse_rational(hi)?))
                    .collect::<Result<Vec<_>, _>>()?;
                RationalBox::new(sides)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BoxUnion::new(self.n, boxes)?)
    }
}

impl LatticeSetDoc {
    pub fn from_set(a: &LatticeSet) -> Self {
        LatticeSetDoc {
            n: Some(a.dim()),
            points: a.iter().map(|p| p.coords().to_vec()).collect(),
        }
    }

    pub fn to_set(&self) -> Result<LatticeSet, IoError> {
        let n = match (self.n, self.points.first()) {
            (Some(n), _) => n,
            (None, Some(p)) => p.len(),
            (None, None) => {
                return Err(IoError::Schema(
                    "empty point list needs an explicit \"n\"".into(),
                ))
            }
        };
        if n == 0 {
            return Err(LatticeError::ZeroDimension.into());
        }
        for p in &self.points {
            nonempty(p, "point")?;
        }
        Ok(LatticeSet::from_points(
            n,
            self.points.iter().map(|c| LatticeVector::new(c.clone())),
        )?)
    }
}

impl LinesDoc {
    pub fn from_lines(l: &LineFamily) -> Self {
        LinesDoc {
            dirs: l.dirs().iter().map(|d| d.coords().to_vec()).collect(),
        }
    }

    pub fn to_lines(&self) -> Result<LineFamily, IoError> {
        for d in &self.dirs {
            nonempty(d, "direction")?;
        }
        Ok(LineFamily::new(
            self.dirs
                .iter()
                .map(|c| LatticeVector::new(c.clone()))
                .collect(),
        )?)
    }
}

pub fn parse_tiling(s: &str) -> Result<GridTiling, IoError> {
    serde_json::from_str::<TilingDoc>(s)?.to_tiling()
}

pub fn parse_box_union(s: &str) -> Result<BoxUnion, IoError> {
    serde_json::from_str::<BoxUnionDoc>(s)?.to_union()
}

pub fn parse_lattice_set(s: &str) -> Result<LatticeSet, IoError> {
    serde_json::from_str::<LatticeSetDoc>(s)?.to_set()
}

pub fn parse_lines(s: &str) -> Result<LineFamily, IoError> {
    serde_json::from_str::<LinesDoc>(s)?.to_lines()
}

fn to_value<T: Serialize>(doc: T) -> Value {
    serde_json::to_value(doc).expect("documents serialize")
}

pub fn tiling_json(t: &GridTiling) -> Value {
    to_value(TilingDoc::from_tiling(t))
}

pub fn box_union_json(k: &BoxUnion) -> Value {
    to_value(BoxUnionDoc::from_union(k))
}

pub fn lattice_set_json(a: &LatticeSet) -> Value {
    to_value(LatticeSetDoc::from_set(a))
}

pub fn lines_json(l: &LineFamily) -> Value {
    to_value(LinesDoc::from_lines(l))
}

pub fn points_json(a: &LatticeSet) -> Value {
    json!(a.iter().map(|p| p.coords().to_vec()).collect::<Vec<_>>())
}

pub fn refinement_json(r: &Refinement) -> Value {
    json!({
        "N0": r.stable_level,
        "levels": r.levels.iter().map(|l| json!({
            "N": l.level,
            "cells": u64::try_from(l.cells).map_or_else(|_| json!(l.cells.to_string()), Value::from),
            "diffset": points_json(&l.diffset),
        })).collect::<Vec<_>>(),
        "exact_diffset": points_json(&r.exact),
    })
}

fn violation_json(n: usize, m: usize, v: &Violation) -> Value {
    let coords = |c: usize| crate::lattice_core::cell_coords(n, m, c);
    json!({ "cells": [coords(v.cells.0), coords(v.cells.1)], "point": v.point.coords() })
}

/// `elapsed_ms` is included only on request, since it varies between runs.
pub fn search_report_json(r: &SearchReport, timing: bool) -> Value {
    let mut doc = json!({
        "outcome": outcome_name(&r.outcome),
        "witness": r.witness().map(tiling_json),
        "n": r.n,
        "m": r.m,
        "bound": r.bound,
        "value_range": r.value_range,
        "bound_complete": r.bound_complete,
        "nodes": r.nodes,
        "pruned": r.pruned,
        "first_violation": r.first_violation.as_ref().map(|v| violation_json(r.n, r.m, v)),
    });
    if timing {
        doc["elapsed_ms"] = json!(r.elapsed.as_secs_f64() * 1e3);
    }
    doc
}

pub fn sweep_json(s: &RealizeSweep, timing: bool) -> Value {
    json!({
        "outcome": if s.witness().is_some() { "Witness" } else { "ExhaustedUnsat" },
        "witness": s.witness().map(tiling_json),
        "bound_complete": s.bound_complete(),
        "nodes": s.nodes(),
        "levels": s.reports.iter().map(|r| search_report_json(r, timing)).collect::<Vec<_>>(),
    })
}

fn outcome_name(o: &Outcome) -> &'static str {
    match o {
        Outcome::Witness(_) => "Witness",
        Outcome::ExhaustedUnsat => "ExhaustedUnsat",
    }
}

pub const SCHEMA_NAMES: [&str; 4] = ["tiling", "boxes", "lattice-set", "lines"];

fn int_vectors(description: &str) -> Value {
    json!({
        "type": "array",
        "description": description,
        "items": { "type": "array", "minItems": 1, "items": { "type": "integer" } },
    })
}

/// JSON Schema (draft 2020-12) for an input document type.
pub fn schema(name: &str) -> Option<Value> {
    let (title, properties, required) = match name {
        "tiling" => (
            "GridTiling",
            json!({
                "n": { "type": "integer", "minimum": 1 },
                "m": { "type": "integer", "minimum": 1 },
                "u": int_vectors("m^n translations in row-major cell order, last coordinate fastest"),
            }),
            json!(["n", "m", "u"]),
        ),
        "boxes" => (
            "BoxUnion",
            json!({
                "n": { "type": "integer", "minimum": 1 },
                "boxes": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "array",
                        "description": "one [lo, hi] pair per axis",
                        "items": {
                            "type": "array", "minItems": 2, "maxItems": 2,
                            "items": { "type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$" },
                        },
                    },
                },
            }),
            json!(["n", "boxes"]),
        ),
        "lattice-set" => (
            "LatticeSet",
            json!({
                "n": { "type": "integer", "minimum": 1 },
                "points": int_vectors("lattice points, sorted lexicographically on output"),
            }),
            json!(["points"]),
        ),
        "lines" => (
            "LineFamily",
            json!({ "dirs": int_vectors("n linearly independent nonzero directions") }),
            json!(["dirs"]),
        ),
        _ => return None,
    };
    Some(json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": title,
        "type": "object",
        "properties": properties,
        "required": required,
        "additionalProperties": false,
    }))
}
