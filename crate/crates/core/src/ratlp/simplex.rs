//! Two-phase dense tableau simplex over exact rationals, Bland's rule.

use num_traits::{One, Signed, Zero};

use super::{LpModel, LpResult, Relation};
use crate::rational::Rational;

/// How an original variable is expressed through nonnegative columns.
enum VarRep {
    Fixed(Rational),
    /// x = lower + col
    Shift { col: usize, lower: Rational },
    /// x = upper - col
    Reflect { col: usize, upper: Rational },
    /// x = pos - neg
    Split { pos: usize, neg: usize },
}

struct StdRow {
    coeffs: Vec<Rational>,
    relation: Relation,
    rhs: Rational,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    /// Reduced costs; the last entry is minus the current objective value.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs_col(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let inv = self.rows[pr][pc].recip();
        if !inv.is_one() {
            for v in self.rows[pr].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let nz: Vec<usize> = (0..=self.width).filter(|&j| !self.rows[pr][j].is_zero()).collect();
        let prow = std::mem::take(&mut self.rows[pr]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == pr || row[pc].is_zero() {
                continue;
            }
            let f = row[pc].clone();
            for &j in &nz {
                row[j] -= &f * &prow[j];
            }
        }
        if !self.obj[pc].is_zero() {
            let f = self.obj[pc].clone();
            for &j in &nz {
                self.obj[j] -= &f * &prow[j];
            }
        }
        self.rows[pr] = prow;
        self.basis[pr] = pc;
    }

    /// Iterate to optimality over columns `< allowed`. Returns false when the
    /// objective is unbounded below.
    fn run(&mut self, allowed: usize) -> bool {
        let rhs = self.rhs_col();
        loop {
            let Some(pc) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[pc].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[pc];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((pr, _)) => self.pivot(pr, pc),
                None => return false,
            }
        }
    }

    fn column_values(&self, ncols: usize) -> Vec<Rational> {
        let mut values = vec![Rational::zero(); ncols];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < ncols {
                values[b] = self.rows[i][self.width].clone();
            }
        }
        values
    }
}

/// Solve `model` exactly. With `optimize == false` only phase one runs and
/// the objective is ignored; the returned value is then meaningless.
pub(super) fn solve(model: &LpModel, optimize: bool) -> LpResult {
    let mut reps = Vec::with_capacity(model.vars.len());
    let mut ncols = 0usize;
    let mut rows: Vec<StdRow> = Vec::new();
    let mut bound_rows: Vec<(usize, Rational)> = Vec::new();

    for v in &model.vars {
        let rep = match (&v.lower, &v.upper) {
            (Some(lo), Some(hi)) if lo > hi => return LpResult::Infeasible,
            (Some(lo), Some(hi)) if lo == hi => VarRep::Fixed(lo.clone()),
            (Some(lo), hi) => {
                let col = ncols;
                ncols += 1;
                if let Some(hi) = hi {
                    bound_rows.push((col, hi - lo));
                }
                VarRep::Shift { col, lower: lo.clone() }
            }
            (None, Some(hi)) => {
                let col = ncols;
                ncols += 1;
                VarRep::Reflect { col, upper: hi.clone() }
            }
            (None, None) => {
                ncols += 2;
                VarRep::Split { pos: ncols - 2, neg: ncols - 1 }
            }
        };
        reps.push(rep);
    }

    // Substitute the representation into a linear form; returns the column
    // coefficients and the constant part.
    let substitute = |coeffs: &[Rational]| -> (Vec<Rational>, Rational) {
        let mut out = vec![Rational::zero(); ncols];
        let mut constant = Rational::zero();
        for (a, rep) in coeffs.iter().zip(&reps) {
            if a.is_zero() {
                continue;
            }
            match rep {
                VarRep::Fixed(value) => constant += a * value,
                VarRep::Shift { col, lower } => {
                    constant += a * lower;
                    out[*col] += a;
                }
                VarRep::Reflect { col, upper } => {
                    constant += a * upper;
                    out[*col] -= a;
                }
                VarRep::Split { pos, neg } => {
                    out[*pos] += a;
                    out[*neg] -= a;
                }
            }
        }
        (out, constant)
    };

    for (col, width) in bound_rows {
        let mut coeffs = vec![Rational::zero(); ncols];
        coeffs[col] = Rational::one();
        rows.push(StdRow { coeffs, relation: Relation::Le, rhs: width });
    }
    for row in &model.rows {
        let (coeffs, constant) = substitute(&row.coeffs);
        let rhs = &row.rhs - constant;
        if coeffs.iter().all(Zero::is_zero) {
            if !row.relation.holds(&Rational::zero(), &rhs) {
                return LpResult::Infeasible;
            }
            continue;
        }
        rows.push(StdRow { coeffs, relation: row.relation, rhs });
    }

    // Normalise to rhs >= 0; a `>= 0` row flips to `<= 0` so its slack can
    // start in the basis.
    for row in &mut rows {
        let flip = row.rhs.is_negative() || (row.relation == Relation::Ge && row.rhs.is_zero());
        if flip {
            for c in &mut row.coeffs {
                *c = -&*c;
            }
            row.rhs = -&row.rhs;
            row.relation = match row.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    let nslack = rows.iter().filter(|r| r.relation != Relation::Eq).count();
    let nart = rows.iter().filter(|r| r.relation != Relation::Le).count();
    let art_start = ncols + nslack;
    let width = art_start + nart;

    let mut tab = Tableau {
        rows: Vec::with_capacity(rows.len()),
        obj: vec![Rational::zero(); width + 1],
        basis: Vec::with_capacity(rows.len()),
        width,
    };
    let (mut slack, mut art) = (ncols, art_start);
    for row in rows {
        let mut t = row.coeffs;
        t.resize(width + 1, Rational::zero());
        t[width] = row.rhs;
        match row.relation {
            Relation::Le => {
                t[slack] = Rational::one();
                tab.basis.push(slack);
                slack += 1;
            }
            Relation::Ge => {
                t[slack] = -Rational::one();
                slack += 1;
                t[art] = Rational::one();
                tab.basis.push(art);
                art += 1;
            }
            Relation::Eq => {
                t[art] = Rational::one();
                tab.basis.push(art);
                art += 1;
            }
        }
        tab.rows.push(t);
    }

    if nart > 0 {
        // Phase one: minimise the sum of artificials.
        for j in art_start..width {
            tab.obj[j] = Rational::one();
        }
        for i in 0..tab.rows.len() {
            if tab.basis[i] >= art_start {
                for j in 0..=width {
                    if !tab.rows[i][j].is_zero() {
                        let v = &tab.obj[j] - &tab.rows[i][j];
                        tab.obj[j] = v;
                    }
                }
            }
        }
        tab.run(width);
        if !tab.obj[width].is_zero() {
            return LpResult::Infeasible;
        }
        // Drive remaining (zero-level) artificials out of the basis; rows
        // where that is impossible are redundant.
        let mut keep = vec![true; tab.rows.len()];
        for i in 0..tab.rows.len() {
            if tab.basis[i] < art_start {
                continue;
            }
            match (0..art_start).find(|&j| !tab.rows[i][j].is_zero()) {
                Some(j) => tab.pivot(i, j),
                None => keep[i] = false,
            }
        }
        let mut idx = 0;
        tab.rows.retain(|_| {
            idx += 1;
            keep[idx - 1]
        });
        let mut idx = 0;
        tab.basis.retain(|_| {
            idx += 1;
            keep[idx - 1]
        });
        for row in &mut tab.rows {
            let rhs = row[width].clone();
            row.truncate(art_start);
            row.push(rhs);
        }
        tab.width = art_start;
    }
    let width = tab.width;

    if optimize {
        let (cost, _) = substitute(&model.objective);
        tab.obj = vec![Rational::zero(); width + 1];
        tab.obj[..ncols].clone_from_slice(&cost);
        for i in 0..tab.rows.len() {
            let b = tab.basis[i];
            if b < ncols && !cost[b].is_zero() {
                let cb = cost[b].clone();
                for j in 0..=width {
                    if !tab.rows[i][j].is_zero() {
                        let v = &tab.obj[j] - &cb * &tab.rows[i][j];
                        tab.obj[j] = v;
                    }
                }
            }
        }
        if !tab.run(width) {
            return LpResult::Unbounded;
        }
    }

    let cols = tab.column_values(ncols);
    let point: Vec<Rational> = reps
        .iter()
        .map(|rep| match rep {
            VarRep::Fixed(v) => v.clone(),
            VarRep::Shift { col, lower } => lower + &cols[*col],
            VarRep::Reflect { col, upper } => upper - &cols[*col],
            VarRep::Split { pos, neg } => &cols[*pos] - &cols[*neg],
        })
        .collect();
    let value = model.objective_value(&point);
    LpResult::Optimal { value, point }
}
