//! JSON formats for tilting candidates, classifications and missing-part reports.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::missing::MissingPart;
use crate::tilting::{ClassifiedForm, MinusTag, PlusTag, TiltingCandidate};
use crate::wpl::Wpl;

/// `{"n": ..., "summands": [...]}` with points in text syntax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltingFile {
    pub n: i64,
    pub summands: Vec<String>,
}

impl TiltingFile {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum FormJson {
    CanonicalTwist {
        #[serde(rename = "L")]
        l: String,
    },
    Triple {
        i: u32,
        j: u32,
        plus: String,
        sub_slice: Vec<String>,
        minus: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorHoms {
    pub order: Vec<String>,
    pub matrix: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingReport {
    pub tilting: TiltingFile,
    pub form: FormJson,
    pub size: usize,
    #[serde(rename = "C")]
    pub all: Vec<String>,
    #[serde(rename = "C1", skip_serializing_if = "Option::is_none", default)]
    pub c1: Option<Vec<String>>,
    #[serde(rename = "C2", skip_serializing_if = "Option::is_none", default)]
    pub c2: Option<Vec<String>>,
    pub factor_homs: FactorHoms,
}

impl PlusTag {
    pub fn from_name(s: &str) -> Result<Self> {
        PlusTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown Br+ tag '{s}'")))
    }
}

impl MinusTag {
    pub fn from_name(s: &str) -> Result<Self> {
        MinusTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown Br- tag '{s}'")))
    }
}

impl Wpl {
    fn names(&self, pts: &[crate::arq::BundlePoint]) -> Vec<String> {
        pts.iter().map(|&p| self.format_point(p)).collect()
    }

    pub fn tilting_file(&self, t: &TiltingCandidate) -> TiltingFile {
        TiltingFile { n: i64::from(self.n()), summands: self.names(t.summands()) }
    }

    pub fn candidate_from_file(&self, f: &TiltingFile) -> Result<TiltingCandidate> {
        if f.n != i64::from(self.n()) {
            return Err(Error::MixedWeights { left: self.n(), right: u32::try_from(f.n).unwrap_or(0) });
        }
        let pts = f.summands.iter().map(|s| self.parse_point(s)).collect::<Result<Vec<_>>>()?;
        TiltingCandidate::new(self.weight(), pts)
    }

    pub fn form_json(&self, form: &ClassifiedForm) -> FormJson {
        match form {
            ClassifiedForm::CanonicalTwist { l } => FormJson::CanonicalTwist { l: self.format_point(self.line_point(*l)) },
            ClassifiedForm::Triple { i, j, plus, sub_slice, minus } => FormJson::Triple {
                i: *i,
                j: *j,
                plus: plus.name().to_string(),
                sub_slice: self.names(sub_slice),
                minus: minus.name().to_string(),
            },
        }
    }

    pub fn form_from_json(&self, f: &FormJson) -> Result<ClassifiedForm> {
        Ok(match f {
            FormJson::CanonicalTwist { l } => {
                let p = self.parse_point(l)?;
                let l = self.line_element(p).ok_or_else(|| Error::parse(0, "CanonicalTwist needs a line bundle"))?;
                ClassifiedForm::CanonicalTwist { l }
            }
            FormJson::Triple { i, j, plus, sub_slice, minus } => ClassifiedForm::Triple {
                i: *i,
                j: *j,
                plus: PlusTag::from_name(plus)?,
                sub_slice: sub_slice.iter().map(|s| self.parse_point(s)).collect::<Result<_>>()?,
                minus: MinusTag::from_name(minus)?,
            },
        })
    }

    pub fn missing_report(&self, mp: &MissingPart) -> Result<MissingReport> {
        let (order, matrix) = self.factor_hom_matrix(mp)?;
        Ok(MissingReport {
            tilting: self.tilting_file(&mp.tilting),
            form: self.form_json(&mp.form),
            size: mp.len(),
            all: self.names(&mp.all),
            c1: mp.split.as_ref().map(|(c1, _)| self.names(c1)),
            c2: mp.split.as_ref().map(|(_, c2)| self.names(c2)),
            factor_homs: FactorHoms { order: self.names(&order), matrix },
        })
    }
}
