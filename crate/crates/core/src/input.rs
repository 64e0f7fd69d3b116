//! Ideal files.
//!
//! ```text
//! ring x,y,z,w
//! field fp 4611686018427387847   # or: field q
//! gens
//! x*z - y^2
//! y*w - z^2
//! x*w - y*z
//! ```
//!
//! An optional `mu` section after the generators lists the equations of the
//! cycle to run on; without it the cycle is the whole ambient space.

use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::groebner::Budget;
use crate::poly::{PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Line {
    number: usize,
    column: usize,
    text: String,
}

/// A parsed ideal file whose polynomials are kept as text until a field is
/// chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputFile {
    vars: Vec<String>,
    field: Option<FieldSpec>,
    gens: Vec<Line>,
    mu: Option<Vec<Line>>,
}

/// Ring, generators and optional cycle equations over a concrete field.
#[derive(Debug, Clone)]
pub struct Parsed<F: Field> {
    pub ring: Arc<PolyRing<F>>,
    pub gens: Vec<Polynomial<F>>,
    pub mu: Option<Vec<Polynomial<F>>>,
}

#[derive(PartialEq)]
enum Section {
    Header,
    Gens,
    Mu,
}

impl InputFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))
        })?;
        text.parse()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Field declared in the file.
    pub fn field(&self) -> Option<FieldSpec> {
        self.field
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn has_mu(&self) -> bool {
        self.mu.is_some()
    }

    /// Builds the ring over `field` and parses every polynomial.
    pub fn build<F: Field>(&self, field: F) -> Result<Parsed<F>> {
        self.build_with_budget(field, Budget::default())
    }

    pub fn build_with_budget<F: Field>(&self, field: F, budget: Budget) -> Result<Parsed<F>> {
        let ring = PolyRing::new(&self.vars, field)?.with_budget(budget);
        let parse_all = |lines: &[Line]| -> Result<Vec<Polynomial<F>>> {
            lines.iter().map(|l| parse_line(&ring, l)).collect()
        };
        let gens = parse_all(&self.gens)?;
        let mu = self.mu.as_deref().map(parse_all).transpose()?;
        Ok(Parsed { ring, gens, mu })
    }
}

fn parse_line<F: Field>(ring: &Arc<PolyRing<F>>, l: &Line) -> Result<Polynomial<F>> {
    ring.parse(&l.text).map_err(|e| match e {
        Error::Parse { column, message, .. } => Error::Parse {
            line: l.number,
            column: l.column + column - 1,
            message,
        },
        other => other,
    })
}

/// Strips a `#` comment and surrounding blanks, returning the 1-based column
/// of the first kept character.
fn content(raw: &str) -> (usize, &str) {
    let body = raw.split('#').next().unwrap_or("");
    let trimmed = body.trim_start();
    let column = body[..body.len() - trimmed.len()].chars().count() + 1;
    (column, trimmed.trim_end())
}

fn parse_field(number: usize, column: usize, rest: &str) -> Result<FieldSpec> {
    let words: Vec<&str> = rest.split_whitespace().collect();
    let spec = match words.as_slice() {
        [one] => one.to_string(),
        ["fp", p] => format!("fp:{p}"),
        _ => return Err(Error::parse(number, column, format!("bad field spec `{rest}`"))),
    };
    spec.parse::<FieldSpec>()
        .map_err(|e| Error::parse(number, column, e.to_string()))
}

impl std::str::FromStr for InputFile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut vars = None;
        let mut field = None;
        let mut gens = Vec::new();
        let mut mu: Option<Vec<Line>> = None;
        let mut section = Section::Header;
        for (i, raw) in text.lines().enumerate() {
            let number = i + 1;
            let (column, line) = content(raw);
            if line.is_empty() {
                continue;
            }
            let (word, rest) = match line.split_once(char::is_whitespace) {
                Some((w, r)) => (w, r.trim()),
                None => (line, ""),
            };
            let rest_col = column + line[..line.len() - rest.len()].chars().count();
            match (word, &section) {
                ("ring", Section::Header) => {
                    if vars.is_some() {
                        return Err(Error::parse(number, column, "duplicate `ring` line"));
                    }
                    let names: Vec<String> = rest
                        .split(',')
                        .map(|v| v.trim().to_string())
                        .collect();
                    if let Some(bad) = names.iter().find(|v| !is_identifier(v)) {
                        return Err(Error::parse(
                            number,
                            rest_col,
                            format!("bad variable name `{bad}`"),
                        ));
                    }
                    vars = Some(names);
                }
                ("field", Section::Header) => {
                    field = Some(parse_field(number, rest_col, rest)?);
                }
                ("gens", Section::Header) if rest.is_empty() => section = Section::Gens,
                ("mu", Section::Gens) if rest.is_empty() => {
                    section = Section::Mu;
                    mu = Some(Vec::new());
                }
                (_, Section::Header) => {
                    return Err(Error::parse(
                        number,
                        column,
                        format!("expected `ring`, `field` or `gens`, found `{word}`"),
                    ))
                }
                _ => {
                    let l = Line {
                        number,
                        column,
                        text: line.to_string(),
                    };
                    match section {
                        Section::Gens => gens.push(l),
                        _ => mu.as_mut().expect("mu section").push(l),
                    }
                }
            }
        }
        let Some(vars) = vars else {
            return Err(Error::parse(1, 1, "missing `ring` line"));
        };
        if section == Section::Header {
            return Err(Error::parse(text.lines().count().max(1), 1, "missing `gens` section"));
        }
        Ok(InputFile {
            vars,
            field,
            gens,
            mu,
        })
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
