//! JSON file schemas for sequences, measures, measure pairs, realizations
//! and slice measures.
//!
//! Each schema is a plain serde struct; conversion into the domain type runs
//! the same validation as the domain constructor. Parse errors carry the
//! line and column reported by `serde_json`.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{DiscreteQPositiveMeasure, MeasureAtom, MixedMeasurePair};
use crate::moments::HermitianSequence;
use crate::qmatrix::QMatrix;
use crate::quat::ImaginaryUnit;
use crate::realize::{PontryaginRealization, SignatureGram};
use crate::slicefn::{SliceAtom, SliceMeasure};

/// `{"s": int, "N": int, "values": [QMatrix for n = 0..N]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceFile {
    pub s: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub values: Vec<QMatrix>,
}

impl From<&HermitianSequence> for SequenceFile {
    fn from(seq: &HermitianSequence) -> Self {
        SequenceFile { s: seq.block_size(), n: seq.support(), values: seq.values().to_vec() }
    }
}

impl TryFrom<SequenceFile> for HermitianSequence {
    type Error = Error;

    fn try_from(f: SequenceFile) -> Result<Self> {
        if f.values.len() != f.n + 1 {
            return Err(Error::Invalid(format!("N = {} but {} values given", f.n, f.values.len())));
        }
        let seq = HermitianSequence::new(f.values)?;
        if seq.block_size() != f.s {
            return Err(Error::Shape(format!("s = {} but blocks are {0}x{0}", seq.block_size())));
        }
        Ok(seq)
    }
}

/// `{"s": int, "atoms": [{"t", "nu1", "nu2"}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureFile {
    pub s: usize,
    pub atoms: Vec<MeasureAtom>,
}

impl From<&DiscreteQPositiveMeasure> for MeasureFile {
    fn from(m: &DiscreteQPositiveMeasure) -> Self {
        MeasureFile { s: m.block_size(), atoms: m.atoms().to_vec() }
    }
}

impl TryFrom<MeasureFile> for DiscreteQPositiveMeasure {
    type Error = Error;

    fn try_from(f: MeasureFile) -> Result<Self> {
        DiscreteQPositiveMeasure::new(f.s, f.atoms)
    }
}

/// `{"plus": measure, "minus": measure}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairFile {
    pub plus: MeasureFile,
    pub minus: MeasureFile,
}

impl From<&MixedMeasurePair> for PairFile {
    fn from(p: &MixedMeasurePair) -> Self {
        PairFile { plus: p.plus().into(), minus: p.minus().into() }
    }
}

impl TryFrom<PairFile> for MixedMeasurePair {
    type Error = Error;

    fn try_from(f: PairFile) -> Result<Self> {
        MixedMeasurePair::new(f.plus.try_into()?, f.minus.try_into()?)
    }
}

/// `{"J": [±1, …], "U": QMatrix, "C": QMatrix}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizationFile {
    #[serde(rename = "J")]
    pub j: Vec<i32>,
    #[serde(rename = "U")]
    pub u: QMatrix,
    #[serde(rename = "C")]
    pub c: QMatrix,
}

impl From<&PontryaginRealization> for RealizationFile {
    fn from(r: &PontryaginRealization) -> Self {
        RealizationFile { j: r.gram().signs().to_vec(), u: r.u().clone(), c: r.c().clone() }
    }
}

impl TryFrom<RealizationFile> for PontryaginRealization {
    type Error = Error;

    fn try_from(f: RealizationFile) -> Result<Self> {
        PontryaginRealization::new(SignatureGram::new(f.j)?, f.u, f.c)
    }
}

/// `{"I", "J", "imag0F", "imag0G", "atoms": [{"t", "mu1", "mu2"}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SliceMeasureFile {
    #[serde(rename = "I")]
    pub i: ImaginaryUnit,
    #[serde(rename = "J")]
    pub j: ImaginaryUnit,
    #[serde(rename = "imag0F")]
    pub imag0_f: f64,
    #[serde(rename = "imag0G")]
    pub imag0_g: f64,
    pub atoms: Vec<SliceAtom>,
}

impl TryFrom<SliceMeasureFile> for SliceMeasure {
    type Error = Error;

    fn try_from(f: SliceMeasureFile) -> Result<Self> {
        SliceMeasure::new(f.i, f.j, f.imag0_f, f.imag0_g, f.atoms)
    }
}

/// Parses a schema and converts it into its validated domain type.
pub fn parse<F, T>(text: &str) -> Result<T>
where
    F: DeserializeOwned,
    T: TryFrom<F, Error = Error>,
{
    let raw: F = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("parse error: {e}")))?;
    T::try_from(raw)
}

pub fn parse_sequence(text: &str) -> Result<HermitianSequence> {
    parse::<SequenceFile, _>(text)
}

pub fn parse_measure(text: &str) -> Result<DiscreteQPositiveMeasure> {
    parse::<MeasureFile, _>(text)
}

pub fn parse_pair(text: &str) -> Result<MixedMeasurePair> {
    parse::<PairFile, _>(text)
}

pub fn parse_realization(text: &str) -> Result<PontryaginRealization> {
    parse::<RealizationFile, _>(text)
}

pub fn parse_slice_measure(text: &str) -> Result<SliceMeasure> {
    parse::<SliceMeasureFile, _>(text)
}

/// Pretty-printed JSON for any schema.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("schemas serialize infallibly")
}
