//! Exact linear programs over [`Rational`].
//!
//! [`LpModel`] is a dense minimisation model: named variables with optional
//! bounds, named rows `coeffs · x (<=|=|>=) rhs`, and a linear objective with
//! a constant offset. [`lp_solve`] runs a two-phase dense simplex with Bland's
//! rule, so it always terminates and never rounds. Every optimal point is
//! re-checked against the original model before it is returned.

mod simplex;
mod text;

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

pub use text::{export_lp, parse_lp};

/// Prefix that marks the control variables `u1..uN` of a formulation.
pub const CONTROL_PREFIX: &str = "u";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }

    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    /// `None` is an unbounded side.
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
    /// Marker only; the LP itself is always solved as a continuous relaxation.
    pub binary_intended: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub name: String,
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Row {
    pub fn activity(&self, point: &[Rational]) -> Rational {
        dot(&self.coeffs, point)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LpModel {
    pub vars: Vec<Variable>,
    pub rows: Vec<Row>,
    pub objective: Vec<Rational>,
    pub offset: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpResult {
    pub fn status_label(&self) -> &'static str {
        match self {
            LpResult::Optimal { .. } => "Optimal",
            LpResult::Infeasible => "Infeasible",
            LpResult::Unbounded => "Unbounded",
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpResult::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpResult::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

pub(crate) fn dot(coeffs: &[Rational], point: &[Rational]) -> Rational {
    coeffs
        .iter()
        .zip(point)
        .filter(|(c, _)| !c.is_zero())
        .fold(Rational::zero(), |acc, (c, x)| acc + c * x)
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

impl LpModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Append a variable; existing rows and the objective get a zero column.
    pub fn add_var(
        &mut self,
        name: impl Into<String>,
        lower: Option<Rational>,
        upper: Option<Rational>,
    ) -> Result<usize> {
        let name = name.into();
        if !valid_name(&name) {
            return Err(Error::malformed(format!("invalid variable name {name:?}")));
        }
        if self.var_index(&name).is_some() {
            return Err(Error::malformed(format!("duplicate variable name {name:?}")));
        }
        for row in &mut self.rows {
            row.coeffs.push(Rational::zero());
        }
        self.objective.resize(self.vars.len() + 1, Rational::zero());
        self.vars.push(Variable { name, lower, upper, binary_intended: false });
        Ok(self.vars.len() - 1)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn var(&self, name: &str) -> Result<usize> {
        self.var_index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Add a row from sparse terms. Repeated indices are summed, so terms
    /// that cancel leave a zero coefficient.
    pub fn add_row<I>(&mut self, name: impl Into<String>, terms: I, relation: Relation, rhs: Rational) -> Result<usize>
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let name = name.into();
        if !valid_name(&name) {
            return Err(Error::malformed(format!("invalid row name {name:?}")));
        }
        let mut coeffs = vec![Rational::zero(); self.vars.len()];
        for (idx, coef) in terms {
            let slot = coeffs
                .get_mut(idx)
                .ok_or_else(|| Error::malformed(format!("row {name}: variable index {idx} out of range")))?;
            *slot += coef;
        }
        self.rows.push(Row { name, coeffs, relation, rhs });
        Ok(self.rows.len() - 1)
    }

    pub fn set_objective<I>(&mut self, terms: I, offset: Rational) -> Result<()>
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut objective = vec![Rational::zero(); self.vars.len()];
        for (idx, coef) in terms {
            let slot = objective
                .get_mut(idx)
                .ok_or_else(|| Error::malformed(format!("objective: variable index {idx} out of range")))?;
            *slot += coef;
        }
        self.objective = objective;
        self.offset = offset;
        Ok(())
    }

    /// Indices of the control variables `u1..uN`, in cell order. Errors if
    /// the model does not carry a contiguous `u1..uN` block.
    pub fn control_vars(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for k in 1.. {
            match self.var_index(&format!("{CONTROL_PREFIX}{k}")) {
                Some(idx) => out.push(idx),
                None => break,
            }
        }
        if out.is_empty() {
            return Err(Error::malformed("model has no control variables u1..uN"));
        }
        Ok(out)
    }

    /// Structural checks: unique valid names, row/objective lengths.
    pub fn validate(&self) -> Result<()> {
        let n = self.vars.len();
        let mut seen = std::collections::HashSet::new();
        for v in &self.vars {
            if !valid_name(&v.name) || !seen.insert(v.name.as_str()) {
                return Err(Error::malformed(format!("invalid or duplicate variable name {:?}", v.name)));
            }
        }
        if self.objective.len() != n {
            return Err(Error::malformed(format!(
                "objective has {} coefficients for {n} variables",
                self.objective.len()
            )));
        }
        for row in &self.rows {
            if row.coeffs.len() != n {
                return Err(Error::malformed(format!(
                    "row {} has {} coefficients for {n} variables",
                    row.name,
                    row.coeffs.len()
                )));
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, point: &[Rational]) -> Rational {
        dot(&self.objective, point) + &self.offset
    }

    /// Exact feasibility check of `point` against bounds and rows. The error
    /// names the first violated item.
    pub fn check_point(&self, point: &[Rational]) -> std::result::Result<(), String> {
        if point.len() != self.vars.len() {
            return Err(format!("point has {} entries for {} variables", point.len(), self.vars.len()));
        }
        for (v, x) in self.vars.iter().zip(point) {
            if v.lower.as_ref().is_some_and(|lo| x < lo) || v.upper.as_ref().is_some_and(|hi| x > hi) {
                return Err(format!("{} = {} violates its bounds", v.name, format_rational(x)));
            }
        }
        for row in &self.rows {
            let lhs = row.activity(point);
            if !row.relation.holds(&lhs, &row.rhs) {
                return Err(format!(
                    "row {}: {} {} {} fails",
                    row.name,
                    format_rational(&lhs),
                    row.relation,
                    format_rational(&row.rhs)
                ));
            }
        }
        Ok(())
    }

    /// Copy of the model with the named variables pinned to the given values.
    /// Returns `None` when a value lies outside the variable's own bounds.
    pub fn with_fixed(&self, fixed: &[(&str, Rational)]) -> Result<Option<LpModel>> {
        let mut model = self.clone();
        for (name, value) in fixed {
            let idx = model.var(name)?;
            let var = &mut model.vars[idx];
            if var.lower.as_ref().is_some_and(|lo| value < lo) || var.upper.as_ref().is_some_and(|hi| value > hi) {
                return Ok(None);
            }
            var.lower = Some(value.clone());
            var.upper = Some(value.clone());
        }
        Ok(Some(model))
    }
}

/// Minimise the model's objective exactly.
pub fn lp_solve(model: &LpModel) -> Result<LpResult> {
    model.validate()?;
    let result = simplex::solve(model, true);
    if let LpResult::Optimal { value, point } = &result {
        model
            .check_point(point)
            .map_err(|e| Error::Verification(format!("simplex returned an infeasible point: {e}")))?;
        if model.objective_value(point) != *value {
            return Err(Error::Verification("simplex objective does not match its point".into()));
        }
    }
    Ok(result)
}

/// True iff the feasible region is nonempty. Runs phase one only.
pub fn lp_feasible(model: &LpModel) -> Result<bool> {
    model.validate()?;
    Ok(feasible_point(model)?.is_some())
}

/// A feasible point if one exists (phase one only), re-checked exactly.
pub fn feasible_point(model: &LpModel) -> Result<Option<Vec<Rational>>> {
    model.validate()?;
    match simplex::solve(model, false) {
        LpResult::Optimal { point, .. } => {
            model
                .check_point(&point)
                .map_err(|e| Error::Verification(format!("phase one returned an infeasible point: {e}")))?;
            Ok(Some(point))
        }
        LpResult::Infeasible => Ok(None),
        LpResult::Unbounded => Err(Error::Verification("phase one reported unbounded".into())),
    }
}

/// Membership of a partial assignment in the projection of the model: pin
/// the listed variables and test feasibility of the rest.
pub fn lp_fix_and_check(model: &LpModel, fixed: &[(&str, Rational)]) -> Result<bool> {
    model.validate()?;
    match model.with_fixed(fixed)? {
        Some(pinned) => lp_feasible(&pinned),
        None => Ok(false),
    }
}
