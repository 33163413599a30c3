//! File formats: JSON code descriptors and text matrices with a field header.
//!
//! Field elements are written as `0`, `1` or `z^i`, `z` being the field's
//! primitive element, and the field itself as its literal (see [`FieldSpec`]).
//!
//! [`FieldSpec`]: crate::gf::FieldSpec

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf::{parse_field, Field};
use crate::lrc::{LocalityProfile, LrcCode};
use crate::matrix::MatrixGF;

type Rows = Vec<Vec<String>>;

fn rows_of(m: &MatrixGF) -> Rows {
    (0..m.rows()).map(|r| m.row(r).iter().map(|&v| m.field().format_elem(v)).collect()).collect()
}

fn matrix_of(field: &Field, cols: usize, rows: &Rows) -> Result<MatrixGF> {
    let parsed = rows
        .iter()
        .map(|row| row.iter().map(|s| field.parse_elem(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    MatrixGF::from_rows(field, cols, &parsed)
}

/// `{field, n, k, r, delta, P_blocks, M_blocks}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrcDescriptor {
    pub field: String,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub delta: usize,
    #[serde(rename = "P_blocks")]
    pub p_blocks: Vec<Rows>,
    #[serde(rename = "M_blocks")]
    pub m_blocks: Vec<Rows>,
}

impl LrcDescriptor {
    pub fn from_code(lrc: &LrcCode) -> Self {
        let p = lrc.profile();
        LrcDescriptor {
            field: lrc.field().to_string(),
            n: p.n,
            k: p.k,
            r: p.r,
            delta: p.delta,
            p_blocks: lrc.local_blocks().iter().map(rows_of).collect(),
            m_blocks: lrc.global_blocks().iter().map(rows_of).collect(),
        }
    }

    pub fn to_code(&self) -> Result<LrcCode> {
        let field = parse_field(&self.field)?;
        let profile = LocalityProfile::new(self.n, self.k, self.r, self.delta)?;
        let p = self.p_blocks.iter().map(|b| matrix_of(&field, self.r, b)).collect::<Result<Vec<_>>>()?;
        let m = self.m_blocks.iter().map(|b| matrix_of(&field, self.r, b)).collect::<Result<Vec<_>>>()?;
        LrcCode::from_blocks(&field, profile, p, m)
    }
}

/// `{field, n, k, H, G?}`, optionally with locality parameters `r`, `delta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub field: String,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "H")]
    pub h: Rows,
    #[serde(rename = "G", default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
}

impl CodeDescriptor {
    pub fn from_code(code: &LinearCode) -> Self {
        CodeDescriptor {
            field: code.field().to_string(),
            n: code.n(),
            k: code.k(),
            h: rows_of(code.parity_check()),
            g: Some(rows_of(code.generator())),
            r: None,
            delta: None,
        }
    }

    pub fn to_code(&self) -> Result<LinearCode> {
        let field = parse_field(&self.field)?;
        let h = matrix_of(&field, self.n, &self.h)?;
        let code = match &self.g {
            Some(g) => LinearCode::from_matrices(matrix_of(&field, self.n, g)?, h)?,
            None => LinearCode::from_parity_check(h)?,
        };
        if code.n() != self.n || code.k() != self.k {
            return Err(Error::ParameterMismatch(format!(
                "descriptor says [{}, {}], matrices give [{}, {}]",
                self.n,
                self.k,
                code.n(),
                code.k()
            )));
        }
        Ok(code)
    }
}

/// A code loaded from either descriptor.
#[derive(Clone, Debug)]
pub enum LoadedCode {
    Lrc(LrcCode),
    Linear(LinearCode),
}

impl LoadedCode {
    pub fn linear(&self) -> &LinearCode {
        match self {
            LoadedCode::Lrc(l) => l.code(),
            LoadedCode::Linear(c) => c,
        }
    }

    pub fn into_lrc(self) -> Result<LrcCode> {
        match self {
            LoadedCode::Lrc(l) => Ok(l),
            LoadedCode::Linear(_) => Err(Error::InvalidParameter(
                "an LRC is required: give P_blocks/M_blocks, or r and delta with H".into(),
            )),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AnyDescriptor {
    Lrc(LrcDescriptor),
    Code(CodeDescriptor),
}

/// Accepts an LRC descriptor, or a code descriptor (an LRC when it carries `r` and `delta`).
pub fn load_code(json: &str) -> Result<LoadedCode> {
    let desc: AnyDescriptor = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    match desc {
        AnyDescriptor::Lrc(d) => d.to_code().map(LoadedCode::Lrc),
        AnyDescriptor::Code(d) => {
            let code = d.to_code()?;
            match (d.r, d.delta) {
                (Some(r), Some(delta)) => LrcCode::from_parity_check(code.parity_check().clone(), r, delta).map(LoadedCode::Lrc),
                (None, None) => Ok(LoadedCode::Linear(code)),
                _ => Err(Error::Parse("r and delta must be given together".into())),
            }
        }
    }
}

pub fn lrc_to_json(lrc: &LrcCode) -> String {
    serde_json::to_string_pretty(&LrcDescriptor::from_code(lrc)).expect("descriptor serializes")
}

pub fn code_to_json(code: &LinearCode) -> String {
    serde_json::to_string_pretty(&CodeDescriptor::from_code(code)).expect("descriptor serializes")
}

/// Matrix text preceded by a `# <field literal>` line.
pub fn write_gf_matrix(m: &MatrixGF) -> String {
    format!("# {}\n{}", m.field(), m.to_text())
}

/// Reads [`write_gf_matrix`] output, taking the field from the header.
pub fn read_gf_matrix(text: &str) -> Result<MatrixGF> {
    let header = text
        .lines()
        .map(str::trim)
        .find_map(|l| l.strip_prefix('#').map(str::trim).filter(|h| h.starts_with("GF(")))
        .ok_or_else(|| Error::Parse("missing '# GF(...)' header".into()))?;
    MatrixGF::from_text(&parse_field(header)?, text)
}
