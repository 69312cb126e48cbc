//! Reading JSON documents and turning them into validated domain values.
//!
//! Shape errors (not JSON, missing fields, wrong types) are `Malformed`; a document with
//! the right shape that violates a gaf or morphism condition is a domain error.

use std::io::Read;

use grcob::grading::RawColoredMorphism;
use grcob::{ColoredMorphism, Gaf, GafMorphism, RawGaf};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

pub enum Failure {
    Malformed(String),
    Domain(grcob::Error),
}

impl From<grcob::Error> for Failure {
    fn from(e: grcob::Error) -> Self {
        Failure::Domain(e)
    }
}

pub type Outcome<T> = Result<T, Failure>;

/// Reads a path, or standard input for `-`.
pub fn read_value(path: &str) -> Outcome<Value> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Malformed(format!("standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("{path}: {e}")))
}

fn shape<T: DeserializeOwned>(value: &Value) -> Outcome<T> {
    T::deserialize(value).map_err(|e| Failure::Malformed(e.to_string()))
}

pub fn gaf(value: &Value) -> Outcome<Gaf> {
    Ok(Gaf::validate(shape::<RawGaf>(value)?)?)
}

#[derive(Deserialize)]
struct MorphismShape {
    source: Value,
    target: Value,
    map_a: Vec<usize>,
    map_b: Vec<usize>,
    map_v: Vec<usize>,
    map_h: Vec<usize>,
}

pub fn morphism(value: &Value) -> Outcome<GafMorphism> {
    let m: MorphismShape = shape(value)?;
    Ok(GafMorphism::new(gaf(&m.source)?, gaf(&m.target)?, m.map_a, m.map_b, m.map_v, m.map_h)?)
}

#[derive(Deserialize)]
struct ColoredShape {
    morphism: Value,
    palette: usize,
    mark: Vec<usize>,
}

pub fn colored(value: &Value) -> Outcome<ColoredMorphism> {
    let c: ColoredShape = shape(value)?;
    let raw = RawColoredMorphism {
        morphism: morphism(&c.morphism)?,
        palette: c.palette,
        mark: c.mark,
    };
    Ok(ColoredMorphism::try_from(raw)?)
}

/// What a document looks like, judged by its keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Gaf,
    Morphism,
    ColoredMorphism,
    Coloring,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Gaf => "gaf",
            Kind::Morphism => "morphism",
            Kind::ColoredMorphism => "colored_morphism",
            Kind::Coloring => "coloring",
        }
    }
}

pub fn kind(value: &Value) -> Outcome<Kind> {
    let Some(obj) = value.as_object() else {
        return Err(Failure::Malformed("expected a JSON object".into()));
    };
    Ok(if obj.contains_key("source") {
        Kind::Morphism
    } else if obj.contains_key("morphism") {
        Kind::ColoredMorphism
    } else if obj.contains_key("gaf") {
        Kind::Coloring
    } else {
        Kind::Gaf
    })
}

#[derive(Deserialize)]
struct ColoringShape {
    gaf: Value,
    palette: usize,
    color_v: Vec<usize>,
    color_e: Vec<usize>,
}

pub fn coloring(value: &Value) -> Outcome<grcob::Coloring> {
    let c: ColoringShape = shape(value)?;
    Ok(grcob::Coloring::new(gaf(&c.gaf)?, c.palette, c.color_v, c.color_e)?)
}
