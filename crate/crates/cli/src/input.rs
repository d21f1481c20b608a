use crate::error::CliError;
use nilrigid::analysis::{check_automorphism, validate_automorphism, Automorphism, AutomorphismCheck};
use nilrigid::examples;
use nilrigid::lie::LieAlgebra;
use nilrigid::rational::{format_rational, parse_rational, RatMatrix, Rational};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

/// A rational entry, written either as an integer or as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatValue {
    Int(i64),
    Text(String),
}

impl RatValue {
    fn parse(&self, at: &str) -> Result<Rational, CliError> {
        match self {
            RatValue::Int(n) => Ok(Rational::from_integer((*n).into())),
            RatValue::Text(s) => parse_rational(s).map_err(|e| CliError::Parse(format!("{at}: {e}"))),
        }
    }
}

/// `[left, right] = Σ result[name] · name`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub result: BTreeMap<String, RatValue>,
}

/// File form of an algebra and automorphism. The matrix is row-major and
/// acts on column vectors, so column `j` holds the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    pub dim: usize,
    pub basis: Vec<String>,
    pub matrix: Vec<Vec<RatValue>>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Toml,
    Json,
}

impl InputDocument {
    pub fn parse(text: &str, format: Format) -> Result<Self, CliError> {
        match format {
            Format::Toml => toml::from_str(text).map_err(|e| CliError::Parse(e.to_string().trim_end().to_string())),
            Format::Json => serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string())),
        }
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let format = match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Toml,
        };
        Self::parse(&text, format).map_err(|e| match e {
            CliError::Parse(m) => CliError::Parse(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn from_automorphism(a: &Automorphism, name: Option<String>, notes: Option<String>) -> Self {
        let alg = a.algebra();
        let names = alg.basis_names();
        let brackets = alg
            .brackets()
            .map(|(i, j, v)| BracketEntry {
                left: names[i].clone(),
                right: names[j].clone(),
                result: v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .map(|(k, c)| (names[k].clone(), text(c)))
                    .collect(),
            })
            .collect();
        let m = a.matrix();
        let matrix = (0..m.rows()).map(|i| (0..m.cols()).map(|j| text(&m[(i, j)])).collect()).collect();
        Self { name, notes, dim: alg.dim(), basis: names.to_vec(), matrix, brackets }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("input documents serialise")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("input documents serialise")
    }

    /// The algebra and matrix, checked for shape but not yet validated as an
    /// automorphism.
    pub fn resolve(&self) -> Result<(LieAlgebra, RatMatrix), CliError> {
        if self.basis.len() != self.dim {
            return Err(CliError::Parse(format!("basis has {} names, dim is {}", self.basis.len(), self.dim)));
        }
        let index = |name: &str, at: &str| {
            self.basis
                .iter()
                .position(|b| b == name)
                .ok_or_else(|| CliError::Parse(format!("{at}: unknown basis name {name:?}")))
        };
        let mut brackets = Vec::new();
        for (n, entry) in self.brackets.iter().enumerate() {
            let at = format!("brackets[{n}]");
            let i = index(&entry.left, &format!("{at}.left"))?;
            let j = index(&entry.right, &format!("{at}.right"))?;
            let mut v = vec![Rational::from_integer(0.into()); self.dim];
            for (name, c) in &entry.result {
                let k = index(name, &format!("{at}.result"))?;
                v[k] = c.parse(&format!("{at}.result.{name}"))?;
            }
            brackets.push((i, j, v));
        }
        let alg = LieAlgebra::new(self.basis.clone(), brackets).map_err(|e| CliError::Invalid(e.to_string()))?;
        if self.matrix.len() != self.dim || self.matrix.iter().any(|r| r.len() != self.dim) {
            return Err(CliError::Parse(format!("matrix must be {0}x{0}", self.dim)));
        }
        let mut rows = Vec::with_capacity(self.dim);
        for (i, row) in self.matrix.iter().enumerate() {
            let parsed: Result<Vec<Rational>, CliError> =
                row.iter().enumerate().map(|(j, c)| c.parse(&format!("matrix[{i}][{j}]"))).collect();
            rows.push(parsed?);
        }
        let m = RatMatrix::from_rows(&rows, self.dim).map_err(|e| CliError::Parse(e.to_string()))?;
        Ok((alg, m))
    }
}

fn text(q: &Rational) -> RatValue {
    RatValue::Text(format_rational(q))
}

/// Input named either by a file path or by a builder.
#[derive(Clone, Debug)]
pub enum Source<'a> {
    File(&'a Path),
    Example(&'a str),
}

/// A parsed input whose automorphism may still be invalid.
pub struct Loaded {
    pub name: String,
    pub algebra: Arc<LieAlgebra>,
    pub matrix: RatMatrix,
}

impl Loaded {
    pub fn load(source: Source<'_>) -> Result<Self, CliError> {
        match source {
            Source::Example(name) => {
                let a = examples::example(name).map_err(|e| CliError::Parse(e.to_string()))?;
                Ok(Self { name: name.to_string(), algebra: a.algebra().clone(), matrix: a.matrix().clone() })
            }
            Source::File(path) => {
                let doc = InputDocument::read(path)?;
                let (alg, matrix) = doc.resolve()?;
                let name = doc.name.clone().unwrap_or_else(|| {
                    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
                });
                Ok(Self { name, algebra: Arc::new(alg), matrix })
            }
        }
    }

    pub fn check(&self) -> Result<AutomorphismCheck, CliError> {
        check_automorphism(&self.algebra, &self.matrix).map_err(CliError::from)
    }

    pub fn automorphism(&self) -> Result<Automorphism, CliError> {
        validate_automorphism(self.algebra.clone(), self.matrix.clone()).map_err(CliError::from)
    }
}
