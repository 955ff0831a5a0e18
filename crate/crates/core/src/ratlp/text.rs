//! Plain-text LP format.
//!
//! ```text
//! \ switchform lp
//! minimize
//!   obj: 1/2*u1 + -1/2*u2 + 0
//! variables
//!   u1 0 1
//!   z1 0 inf
//! binary
//!   u1
//! subject to
//!   mono1: 1*z1 + -1*u1 >= 0
//! end
//! ```
//!
//! Terms are `coef*name` joined by ` + `; the objective ends with its constant.
//! Zero coefficients are omitted and a row without terms is written `0`.
//! `parse_lp(&export_lp(m)) == m` holds for every valid model.

use std::fmt::Write;

use num_traits::Zero;

use super::{LpModel, Relation, Row, Variable};
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

const HEADER: &str = "\\ switchform lp";

fn write_terms(out: &mut String, coeffs: &[Rational], vars: &[Variable]) -> usize {
    let mut written = 0;
    for (c, v) in coeffs.iter().zip(vars) {
        if c.is_zero() {
            continue;
        }
        if written > 0 {
            out.push_str(" + ");
        }
        let _ = write!(out, "{}*{}", format_rational(c), v.name);
        written += 1;
    }
    written
}

fn bound_text(b: &Option<Rational>, infinite: &str) -> String {
    b.as_ref().map_or_else(|| infinite.to_string(), format_rational)
}

pub fn export_lp(model: &LpModel) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push_str("\nminimize\n  obj: ");
    if write_terms(&mut out, &model.objective, &model.vars) > 0 {
        out.push_str(" + ");
    }
    out.push_str(&format_rational(&model.offset));
    out.push_str("\nvariables\n");
    for v in &model.vars {
        let _ = writeln!(out, "  {} {} {}", v.name, bound_text(&v.lower, "-inf"), bound_text(&v.upper, "inf"));
    }
    let binaries: Vec<&str> = model.vars.iter().filter(|v| v.binary_intended).map(|v| v.name.as_str()).collect();
    if !binaries.is_empty() {
        out.push_str("binary\n");
        let _ = writeln!(out, "  {}", binaries.join(" "));
    }
    out.push_str("subject to\n");
    for row in &model.rows {
        let _ = write!(out, "  {}: ", row.name);
        if write_terms(&mut out, &row.coeffs, &model.vars) == 0 {
            out.push('0');
        }
        let _ = writeln!(out, " {} {}", row.relation, format_rational(&row.rhs));
    }
    out.push_str("end\n");
    out
}

#[derive(PartialEq, Clone, Copy)]
enum Section {
    Start,
    Objective,
    Variables,
    Binary,
    Rows,
    End,
}

struct Term {
    coef: Rational,
    name: Option<String>,
}

fn parse_terms(text: &str, line: usize) -> Result<Vec<Term>> {
    let err = |msg: String| Error::LpParse { line, msg };
    text.split(" + ")
        .map(|piece| {
            let piece = piece.trim();
            match piece.split_once('*') {
                Some((c, name)) => Ok(Term {
                    coef: parse_rational(c).map_err(|e| err(e.to_string()))?,
                    name: Some(name.trim().to_string()),
                }),
                None => Ok(Term { coef: parse_rational(piece).map_err(|e| err(e.to_string()))?, name: None }),
            }
        })
        .collect()
}

fn parse_bound(text: &str, line: usize) -> Result<Option<Rational>> {
    match text {
        "inf" | "-inf" => Ok(None),
        _ => parse_rational(text).map(Some).map_err(|e| Error::LpParse { line, msg: e.to_string() }),
    }
}

pub fn parse_lp(text: &str) -> Result<LpModel> {
    let mut model = LpModel::new();
    let mut section = Section::Start;
    let mut objective_line: Option<(usize, String)> = None;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |msg: &str| Error::LpParse { line: line_no, msg: msg.to_string() };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('\\') {
            continue;
        }
        match line {
            "minimize" => {
                section = Section::Objective;
                continue;
            }
            "variables" => {
                section = Section::Variables;
                continue;
            }
            "binary" => {
                section = Section::Binary;
                continue;
            }
            "subject to" => {
                section = Section::Rows;
                continue;
            }
            "end" => {
                section = Section::End;
                continue;
            }
            _ => {}
        }
        match section {
            Section::Start | Section::End => return Err(err("content outside a section")),
            Section::Objective => {
                let body = line.strip_prefix("obj:").ok_or_else(|| err("expected `obj:`"))?;
                if objective_line.is_some() {
                    return Err(err("duplicate objective"));
                }
                objective_line = Some((line_no, body.trim().to_string()));
            }
            Section::Variables => {
                let parts: Vec<&str> = line.split_whitespace().collect();
                let [name, lo, hi] = parts[..] else {
                    return Err(err("expected `name lower upper`"));
                };
                if lo == "inf" || hi == "-inf" {
                    return Err(err("bound infinity on the wrong side"));
                }
                model
                    .add_var(name, parse_bound(lo, line_no)?, parse_bound(hi, line_no)?)
                    .map_err(|e| err(&e.to_string()))?;
            }
            Section::Binary => {
                for name in line.split_whitespace() {
                    let idx = model.var_index(name).ok_or_else(|| err(&format!("unknown variable {name}")))?;
                    model.vars[idx].binary_intended = true;
                }
            }
            Section::Rows => {
                let (name, body) = line.split_once(':').ok_or_else(|| err("expected `name: ...`"))?;
                let (lhs, relation, rhs) = [(" <= ", Relation::Le), (" >= ", Relation::Ge), (" = ", Relation::Eq)]
                    .iter()
                    .find_map(|(sym, rel)| body.split_once(sym).map(|(l, r)| (l, *rel, r)))
                    .ok_or_else(|| err("missing relation"))?;
                let rhs = parse_rational(rhs).map_err(|e| err(&e.to_string()))?;
                let mut coeffs = vec![Rational::zero(); model.num_vars()];
                for term in parse_terms(lhs, line_no)? {
                    match term.name {
                        Some(var) => {
                            let idx = model.var_index(&var).ok_or_else(|| err(&format!("unknown variable {var}")))?;
                            coeffs[idx] += term.coef;
                        }
                        None if term.coef.is_zero() => {}
                        None => return Err(err("constant term in a row")),
                    }
                }
                let row = Row { name: name.trim().to_string(), coeffs, relation, rhs };
                if model.rows.iter().any(|r| r.name == row.name) {
                    return Err(err("duplicate row name"));
                }
                model.rows.push(row);
            }
        }
    }
    if section != Section::End {
        return Err(Error::LpParse { line: text.lines().count(), msg: "missing `end`".into() });
    }
    let (line_no, body) = objective_line.ok_or(Error::LpParse { line: 0, msg: "missing objective".into() })?;
    let mut objective = vec![Rational::zero(); model.num_vars()];
    let mut offset = Rational::zero();
    for term in parse_terms(&body, line_no)? {
        match term.name {
            Some(var) => {
                let idx = model
                    .var_index(&var)
                    .ok_or_else(|| Error::LpParse { line: line_no, msg: format!("unknown variable {var}") })?;
                objective[idx] += term.coef;
            }
            None => offset += term.coef,
        }
    }
    model.objective = objective;
    model.offset = offset;
    Ok(model)
}
