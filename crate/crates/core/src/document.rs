//! JSON documents exchanged by the command line front end.
//!
//! Output is deterministic: object keys are sorted and multisets are in
//! canonical order. Integers above `2^53 - 1` are written as decimal strings.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::constructions::{AuditReport, ConstructionSpec};
use crate::curves::CurveDatum;
use crate::error::{Error, Result};
use crate::fpgroup::Word;
use crate::meridians::{run_schedule, FiberLabel};
use crate::zariski::ZariskiPairRecord;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberWord {
    pub fiber: FiberLabel,
    pub word: Word,
}

/// Meridian words after replaying a construction schedule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeridianReport {
    pub spec: ConstructionSpec,
    pub max_index: u64,
    pub exceptional: Word,
    pub words: Vec<FiberWord>,
    /// One line per elementary transformation, e.g. `F2 type1 Q1`.
    pub steps: Vec<String>,
}

impl MeridianReport {
    pub fn of_spec(spec: &ConstructionSpec) -> Result<Self> {
        let run = run_schedule(spec)?;
        Ok(MeridianReport {
            spec: spec.clone(),
            max_index: run.max_index,
            exceptional: run.state.exceptional_meridian().clone(),
            words: run
                .words()
                .iter()
                .map(|(fiber, word)| FiberWord {
                    fiber: *fiber,
                    word: word.clone(),
                })
                .collect(),
            steps: run.state.log().iter().map(ToString::to_string).collect(),
        })
    }

    /// The line-oriented text form: steps, then `label = word` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(s);
            out.push('\n');
        }
        out.push_str(&format!("E = {}\n", self.exceptional));
        for fw in &self.words {
            out.push_str(&format!("{} = {}\n", fw.fiber, fw.word));
        }
        out
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Reports {
    pub audit: Option<AuditReport>,
    pub meridians: Option<MeridianReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDocument {
    pub schema_version: String,
    pub curve: CurveDatum,
    pub reports: Option<Reports>,
}

impl CurveDocument {
    pub fn new(curve: CurveDatum) -> Self {
        CurveDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            curve,
            reports: None,
        }
    }

    pub fn with_reports(mut self, reports: Reports) -> Self {
        self.reports = Some(reports);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDocument {
    pub schema_version: String,
    pub pairs: Vec<ZariskiPairRecord>,
}

impl PairDocument {
    pub fn new(pairs: Vec<ZariskiPairRecord>) -> Self {
        PairDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            pairs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditDocument {
    pub schema_version: String,
    pub audit: AuditReport,
}

impl AuditDocument {
    pub fn new(audit: AuditReport) -> Self {
        AuditDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            audit,
        }
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Document(e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Document(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Parses a document and checks its schema version.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    match v.get("schema_version").and_then(|s| s.as_str()) {
        Some(SCHEMA_VERSION) => {}
        Some(other) => {
            return Err(Error::Document(format!(
                "unsupported schema_version `{other}` (expected `{SCHEMA_VERSION}`)"
            )))
        }
        None => return Err(Error::Document("missing schema_version".into())),
    }
    serde_json::from_value(v).map_err(|e| Error::Document(e.to_string()))
}
