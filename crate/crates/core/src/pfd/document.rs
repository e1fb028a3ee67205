//! PFD documents: a line-oriented text format and a JSON mirror.
//!
//! ```text
//! mode: projective
//! vars: x y
//! degree: 1
//! method: linear
//! certification: maximal
//! iterative: false
//! terms: 1
//!
//! term 1
//!   numerator: 2
//!   denominator: 1 3
//!   forms: (y - 3*x)*(x - 2*y)
//! ```
//!
//! Denominator indices are 1-based positions in the problem file. The
//! `forms` line is informational and ignored when reading.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Certification, Method, PfdResult, PfdTerm, RationalFunction};
use crate::error::{Error, Result};
use crate::matroid::Mode;
use crate::parse::parse_polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub numerator: String,
    pub denominator: Vec<usize>,
    pub forms: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfdDocument {
    pub mode: Mode,
    pub vars: Vec<String>,
    pub degree: usize,
    pub method: Method,
    pub certification: Certification,
    pub iterative: bool,
    pub term_count: usize,
    pub terms: Vec<TermRecord>,
}

impl PfdDocument {
    pub fn new(result: &PfdResult, rf: &RationalFunction) -> Self {
        let terms = result
            .terms
            .iter()
            .map(|t| TermRecord {
                numerator: t.numerator.to_string(),
                denominator: t.denominator.iter().map(|i| i + 1).collect(),
                forms: t.denominator.iter().map(|&i| rf.forms()[i].to_string()).collect(),
            })
            .collect();
        PfdDocument {
            mode: rf.mode(),
            vars: rf.vars().to_vec(),
            degree: result.degree,
            method: result.method,
            certification: result.certification,
            iterative: result.iterative,
            term_count: result.terms.len(),
            terms,
        }
    }

    /// Reads the terms back against the problem they decompose.
    pub fn to_result(&self, rf: &RationalFunction) -> Result<PfdResult> {
        if self.vars.as_slice() != &rf.vars()[..] {
            return Err(Error::Problem(format!(
                "document variables `{}` differ from the problem's `{}`",
                self.vars.join(" "),
                rf.vars().join(" ")
            )));
        }
        if self.mode != rf.mode() {
            return Err(Error::Problem("document mode differs from the problem's".into()));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (k, t) in self.terms.iter().enumerate() {
            let numerator = parse_polynomial(&t.numerator, rf.vars())?;
            let mut denominator = Vec::with_capacity(t.denominator.len());
            for &i in &t.denominator {
                if i == 0 {
                    return Err(Error::Problem(format!("term {}: denominator indices start at 1", k + 1)));
                }
                denominator.push(i - 1);
            }
            terms.push(PfdTerm { numerator, denominator });
        }
        Ok(PfdResult {
            degree: self.degree,
            terms,
            method: self.method,
            certification: self.certification,
            iterative: self.iterative,
        })
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "mode: {}", self.mode);
        let _ = writeln!(s, "vars: {}", self.vars.join(" "));
        let _ = writeln!(s, "degree: {}", self.degree);
        let _ = writeln!(s, "method: {}", self.method);
        let _ = writeln!(s, "certification: {}", self.certification);
        let _ = writeln!(s, "iterative: {}", self.iterative);
        let _ = writeln!(s, "terms: {}", self.term_count);
        for (k, t) in self.terms.iter().enumerate() {
            let _ = writeln!(s, "\nterm {}", k + 1);
            let _ = writeln!(s, "  numerator: {}", t.numerator);
            let idx: Vec<String> = t.denominator.iter().map(|i| i.to_string()).collect();
            let _ = writeln!(s, "  denominator: {}", idx.join(" ").trim_end());
            let forms = if t.forms.is_empty() {
                "1".to_string()
            } else {
                t.forms.iter().map(|f| format!("({f})")).collect::<Vec<_>>().join("*")
            };
            let _ = writeln!(s, "  forms: {forms}");
        }
        s
    }
}

pub fn render_document(result: &PfdResult, rf: &RationalFunction) -> String {
    PfdDocument::new(result, rf).render()
}

pub fn render_json(result: &PfdResult, rf: &RationalFunction) -> String {
    let mut s = serde_json::to_string_pretty(&PfdDocument::new(result, rf)).expect("serializable");
    s.push('\n');
    s
}

fn header<'a>(fields: &'a [(usize, String, String)], key: &str) -> Result<&'a str> {
    fields
        .iter()
        .find(|(_, k, _)| k == key)
        .map(|(_, _, v)| v.as_str())
        .ok_or_else(|| Error::Problem(format!("missing `{key}`")))
}

fn parse_field<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<T> {
    v.trim().parse().map_err(|_| Error::Problem(format!("line {line}: bad value for `{key}`: `{v}`")))
}

/// Reads either format; JSON is recognized by a leading `{`.
pub fn parse_document(text: &str) -> Result<PfdDocument> {
    if text.trim_start().starts_with('{') {
        let doc: PfdDocument =
            serde_json::from_str(text).map_err(|e| Error::Problem(format!("malformed JSON document: {e}")))?;
        if doc.term_count != doc.terms.len() {
            return Err(Error::Problem(format!("declared {} terms, found {}", doc.term_count, doc.terms.len())));
        }
        return Ok(doc);
    }
    let mut head: Vec<(usize, String, String)> = Vec::new();
    let mut terms: Vec<TermRecord> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("term ") {
            let k: usize = parse_field(ln, "term", rest)?;
            if k != terms.len() + 1 {
                return Err(Error::Problem(format!("line {ln}: expected term {}", terms.len() + 1)));
            }
            terms.push(TermRecord { numerator: String::new(), denominator: Vec::new(), forms: Vec::new() });
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(Error::Problem(format!("line {ln}: expected `key: value`")));
        };
        let (key, value) = (key.trim(), value.trim());
        match terms.last_mut() {
            Some(t) => match key {
                "numerator" => t.numerator = value.to_string(),
                "denominator" => {
                    t.denominator = value
                        .split_whitespace()
                        .map(|v| parse_field(ln, key, v))
                        .collect::<Result<Vec<usize>>>()?
                }
                "forms" => {}
                _ => return Err(Error::Problem(format!("line {ln}: unknown term field `{key}`"))),
            },
            None => head.push((ln, key.to_string(), value.to_string())),
        }
    }
    if let Some(k) = terms.iter().position(|t| t.numerator.is_empty()) {
        return Err(Error::Problem(format!("term {} has no numerator", k + 1)));
    }
    let mode = match header(&head, "mode")? {
        "affine" => Mode::Affine,
        "projective" => Mode::Projective,
        m => return Err(Error::Problem(format!("unknown mode `{m}`"))),
    };
    let vars = header(&head, "vars")?.split_whitespace().map(str::to_string).collect();
    let degree = parse_field(0, "degree", header(&head, "degree")?)?;
    let method = header(&head, "method")?.parse()?;
    let certification = header(&head, "certification")?.parse()?;
    let iterative = parse_field(0, "iterative", header(&head, "iterative").unwrap_or("false"))?;
    let term_count: usize = parse_field(0, "terms", header(&head, "terms")?)?;
    if term_count != terms.len() {
        return Err(Error::Problem(format!("declared {term_count} terms, found {}", terms.len())));
    }
    Ok(PfdDocument { mode, vars, degree, method, certification, iterative, term_count, terms })
}
