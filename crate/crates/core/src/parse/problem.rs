//! Problem files.
//!
//! ```text
//! mode: affine
//! vars: x y
//! numerator: 13*y - 6*x
//! denominators:
//!   y - 3*x
//!   x + y
//! ```
//!
//! `#` starts a comment. The numerator may be omitted for inputs used only
//! for decompositions and flats, and `allow-zero-forms: true` admits zero
//! denominators there.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matroid::{Arrangement, Mode};
use crate::parse::parse_polynomial_at;
use crate::poly::{Degree, Polynomial, Vars};

#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub vars: Vars,
    pub mode: Mode,
    pub numerator: Option<Polynomial>,
    pub denominators: Vec<Polynomial>,
    pub allow_zero_forms: bool,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn problem_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Problem(format!("line {line}: {}", msg.into()))
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let mut mode = None;
    let mut vars: Option<Vars> = None;
    let mut numerator_src: Option<(String, usize, usize)> = None;
    let mut denominator_src: Vec<(String, usize, usize)> = Vec::new();
    let mut allow_zero = false;
    let mut in_denominators = false;

    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let indented = line.starts_with(' ') || line.starts_with('\t');
        if in_denominators && indented {
            let col = line.len() - line.trim_start().len() + 1;
            denominator_src.push((line.trim().to_string(), line_no, col));
            continue;
        }
        in_denominators = false;
        let Some((key, value)) = line.split_once(':') else {
            return Err(problem_err(line_no, format!("expected `key: value`, found `{}`", line.trim())));
        };
        let value_col = key.len() + 2 + (value.len() - value.trim_start().len());
        let value = value.trim();
        match key.trim() {
            "mode" => {
                mode = Some(match value {
                    "affine" => Mode::Affine,
                    "projective" => Mode::Projective,
                    other => return Err(problem_err(line_no, format!("unknown mode `{other}`"))),
                })
            }
            "vars" => {
                let names: Vec<String> = value.split_whitespace().map(str::to_string).collect();
                if names.is_empty() {
                    return Err(problem_err(line_no, "no variables declared"));
                }
                for (i, n) in names.iter().enumerate() {
                    if !is_identifier(n) {
                        return Err(problem_err(line_no, format!("`{n}` is not a valid variable name")));
                    }
                    if names[..i].contains(n) {
                        return Err(problem_err(line_no, format!("variable `{n}` declared twice")));
                    }
                }
                vars = Some(names.into());
            }
            "numerator" => numerator_src = Some((value.to_string(), line_no, value_col)),
            "denominators" => {
                in_denominators = true;
                if !value.is_empty() {
                    return Err(problem_err(line_no, "list denominators on the following indented lines"));
                }
            }
            "allow-zero-forms" => {
                allow_zero = match value {
                    "true" => true,
                    "false" => false,
                    other => return Err(problem_err(line_no, format!("expected true or false, found `{other}`"))),
                }
            }
            other => return Err(problem_err(line_no, format!("unknown key `{other}`"))),
        }
    }

    let mode = mode.ok_or_else(|| Error::Problem("missing `mode:`".into()))?;
    let vars = vars.ok_or_else(|| Error::Problem("missing `vars:`".into()))?;
    if denominator_src.is_empty() {
        return Err(Error::Problem("at least one denominator is required".into()));
    }
    let numerator = match numerator_src {
        Some((src, line, col)) => Some(parse_polynomial_at(&src, &vars, line, col)?),
        None => None,
    };
    let mut denominators = Vec::with_capacity(denominator_src.len());
    for (i, (src, line, col)) in denominator_src.iter().enumerate() {
        let f = parse_polynomial_at(src, &vars, *line, *col)?;
        if f.is_zero() {
            if !allow_zero {
                return Err(Error::DenominatorDegree { index: i + 1, degree: "-inf (zero form)".into() });
            }
        } else if f.total_degree() != Degree::Finite(1) {
            return Err(Error::DenominatorDegree { index: i + 1, degree: f.total_degree().to_string() });
        }
        denominators.push(f);
    }
    let problem = ProblemFile { vars, mode, numerator, denominators, allow_zero_forms: allow_zero };
    problem.arrangement()?;
    if let (Mode::Projective, Some(f)) = (problem.mode, &problem.numerator) {
        if !f.is_homogeneous() {
            return Err(Error::Problem("projective mode requires a homogeneous numerator".into()));
        }
    }
    Ok(problem)
}

impl ProblemFile {
    pub fn arrangement(&self) -> Result<Arrangement> {
        Arrangement::new(&self.vars, self.denominators.clone(), self.mode, self.allow_zero_forms)
    }

    pub fn numerator(&self) -> Result<&Polynomial> {
        self.numerator.as_ref().ok_or_else(|| Error::Problem("this command needs a numerator".into()))
    }

    /// Canonical text form, parseable by [`parse_problem`].
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "mode: {}", self.mode);
        let _ = writeln!(s, "vars: {}", self.vars.join(" "));
        if self.allow_zero_forms {
            let _ = writeln!(s, "allow-zero-forms: true");
        }
        if let Some(f) = &self.numerator {
            let _ = writeln!(s, "numerator: {f}");
        }
        let _ = writeln!(s, "denominators:");
        for d in &self.denominators {
            let _ = writeln!(s, "  {d}");
        }
        s
    }
}
