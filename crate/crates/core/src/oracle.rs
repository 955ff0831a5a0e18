//! Brute-force referees: enumerate the binary members of each class on an
//! `N`-cell grid, decide membership under switching-point constraints, and
//! minimise linear objectives over explicit pattern lists.

use std::fmt::{self, Write as _};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::formulations::{dwell_cells, SwitchConstraints};
use crate::ratlp::{lp_solve, LpModel, LpResult, Relation};
use crate::rational::{format_rational, from_usize, int, is_binary, Rational};
use crate::stepfn::StepFunction;

/// A `{0,1}`-valued step function on the `N`-cell grid over `[0, T]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryPattern {
    horizon: Rational,
    bits: Vec<bool>,
}

impl BinaryPattern {
    pub fn new(horizon: Rational, bits: Vec<bool>) -> Result<Self> {
        StepFunction::zeros(horizon.clone(), bits.len())?;
        Ok(BinaryPattern { horizon, bits })
    }

    /// Parse `"0110"`-style labels.
    pub fn parse(horizon: Rational, label: &str) -> Result<Self> {
        let bits = label
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::malformed(format!("pattern {label:?} is not a 0/1 string"))),
            })
            .collect::<Result<_>>()?;
        Self::new(horizon, bits)
    }

    pub fn from_step_function(f: &StepFunction) -> Result<Self> {
        if !f.values().iter().all(is_binary) {
            return Err(Error::domain("step function is not {0,1}-valued"));
        }
        Self::new(f.horizon().clone(), f.values().iter().map(|v| v.is_one()).collect())
    }

    pub fn horizon(&self) -> &Rational {
        &self.horizon
    }

    pub fn cells(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn values(&self) -> Vec<Rational> {
        self.bits.iter().map(|&b| if b { Rational::one() } else { Rational::zero() }).collect()
    }

    pub fn to_step_function(&self) -> StepFunction {
        StepFunction::new(self.horizon.clone(), self.values()).expect("validated on construction")
    }

    /// Number of jumps, counting a jump out of the zero history at 0.
    pub fn switches(&self) -> usize {
        let mut prev = false;
        let mut count = 0;
        for &b in &self.bits {
            count += usize::from(b != prev);
            prev = b;
        }
        count
    }

    /// Times of the jumps with their sign (`true` = up), in order.
    pub fn jumps(&self) -> Vec<(Rational, bool)> {
        let width = &self.horizon / from_usize(self.cells());
        let mut prev = false;
        let mut out = Vec::new();
        for (k, &b) in self.bits.iter().enumerate() {
            if b != prev {
                out.push((&width * from_usize(k), b));
            }
            prev = b;
        }
        out
    }

    pub fn refine(&self, factor: usize) -> BinaryPattern {
        assert!(factor >= 1, "refinement factor must be positive");
        let bits = self.bits.iter().flat_map(|&b| std::iter::repeat_n(b, factor)).collect();
        BinaryPattern { horizon: self.horizon.clone(), bits }
    }
}

impl fmt::Display for BinaryPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_char(if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl Serialize for BinaryPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.bits.iter().map(|&b| u8::from(b)))
    }
}

/// Depth-first enumeration in lexicographic order (0 before 1). `step`
/// extends a prefix state by one bit or rejects it; `accept` judges
/// complete patterns. The top few levels fan out across threads.
fn enumerate<S, F, A>(horizon: &Rational, cells: usize, init: S, step: F, accept: A) -> Vec<BinaryPattern>
where
    S: Clone + Send + Sync,
    F: Fn(&S, bool) -> Option<S> + Sync,
    A: Fn(&S) -> bool + Sync,
{
    fn walk<S: Clone, F: Fn(&S, bool) -> Option<S>, A: Fn(&S) -> bool>(
        prefix: &mut Vec<bool>,
        state: &S,
        cells: usize,
        step: &F,
        accept: &A,
        out: &mut Vec<Vec<bool>>,
    ) {
        if prefix.len() == cells {
            if accept(state) {
                out.push(prefix.clone());
            }
            return;
        }
        for bit in [false, true] {
            if let Some(next) = step(state, bit) {
                prefix.push(bit);
                walk(prefix, &next, cells, step, accept, out);
                prefix.pop();
            }
        }
    }

    let split = cells.min(4);
    let mut seeds: Vec<(Vec<bool>, S)> = vec![(Vec::new(), init)];
    for _ in 0..split {
        let mut next_seeds = Vec::with_capacity(seeds.len() * 2);
        for (prefix, state) in seeds {
            for bit in [false, true] {
                if let Some(next) = step(&state, bit) {
                    let mut p = prefix.clone();
                    p.push(bit);
                    next_seeds.push((p, next));
                }
            }
        }
        seeds = next_seeds;
    }
    let chunks: Vec<Vec<Vec<bool>>> = seeds
        .into_par_iter()
        .map(|(mut prefix, state)| {
            let mut out = Vec::new();
            walk(&mut prefix, &state, cells, &step, &accept, &mut out);
            out
        })
        .collect();
    chunks
        .into_iter()
        .flatten()
        .map(|bits| BinaryPattern { horizon: horizon.clone(), bits })
        .collect()
}

fn check_grid(horizon: &Rational, cells: usize) -> Result<()> {
    StepFunction::zeros(horizon.clone(), cells).map(|_| ())
}

/// All binary patterns with at most `σ` jumps.
pub fn enum_bv(sigma: usize, horizon: &Rational, cells: usize, caps: &Caps) -> Result<Vec<BinaryPattern>> {
    check_grid(horizon, cells)?;
    Caps::check("N", cells, caps.max_cells)?;
    Ok(enumerate(
        horizon,
        cells,
        (false, 0usize),
        |&(prev, count), bit| {
            let count = count + usize::from(bit != prev);
            (count <= sigma).then_some((bit, count))
        },
        |_| true,
    ))
}

#[derive(Clone)]
struct RunState {
    bit: bool,
    len: usize,
    /// The current zero-run was entered by a down-switch.
    after_down: bool,
}

/// All binary patterns obeying minimum up-time `L` and down-time `l`. Runs
/// that reach `T` are exempt, and the leading zero-run of the history has
/// no down-time requirement.
pub fn enum_dwell(
    up: &Rational,
    down: &Rational,
    horizon: &Rational,
    cells: usize,
    caps: &Caps,
) -> Result<Vec<BinaryPattern>> {
    let (lu, ld) = dwell_cells(up, down, horizon, cells)?;
    Caps::check("N", cells, caps.max_cells)?;
    Ok(enumerate(
        horizon,
        cells,
        RunState { bit: false, len: 0, after_down: false },
        |s, bit| {
            if bit == s.bit {
                return Some(RunState { len: s.len + 1, ..s.clone() });
            }
            let ok = if s.bit { s.len >= lu } else { !s.after_down || s.len >= ld };
            ok.then_some(RunState { bit, len: 1, after_down: s.bit })
        },
        |_| true,
    ))
}

/// Where a block of consecutive switching-point indices sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    /// On the `k`-th real jump of the pattern (0-based).
    RealJump(usize),
    /// At a free position inside `[0, T]`, effects cancelling.
    FreeInterior,
    AtT,
}

/// Consecutive index range `start..=end` (0-based) bound to a location.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub start: usize,
    pub end: usize,
    pub location: Location,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockAssignment {
    pub blocks: Vec<Block>,
}

/// Every way of placing `σ` ordered switching points so that they realise
/// `jumps` real jumps, alternating and starting with an up-switch.
///
/// A real jump takes a single index of the right parity; longer blocks with
/// the same net effect split into that index plus coincident cancelling
/// pairs, which the pair blocks already cover. Left-over indices form free
/// pairs, and an odd remainder parks its last index at `T`.
pub fn block_assignments(sigma: usize, jumps: usize) -> Vec<BlockAssignment> {
    fn fill_pairs(blocks: &mut Vec<Block>, from: usize, to: usize) {
        let mut a = from;
        while a + 1 < to {
            blocks.push(Block { start: a, end: a + 1, location: Location::FreeInterior });
            a += 2;
        }
    }

    fn rec(sigma: usize, jumps: usize, next: usize, k: usize, blocks: &mut Vec<Block>, out: &mut Vec<BlockAssignment>) {
        if k == jumps {
            let mut done = blocks.clone();
            let rest = sigma - next;
            fill_pairs(&mut done, next, sigma - rest % 2);
            if rest % 2 == 1 {
                done.push(Block { start: sigma - 1, end: sigma - 1, location: Location::AtT });
            }
            out.push(BlockAssignment { blocks: done });
            return;
        }
        // index of jump k has parity k (0-based indices), gaps stay even
        let mut i = next;
        while i < sigma {
            if sigma - i >= jumps - k {
                let mark = blocks.len();
                fill_pairs(blocks, next, i);
                blocks.push(Block { start: i, end: i, location: Location::RealJump(k) });
                rec(sigma, jumps, i + 1, k + 1, blocks, out);
                blocks.truncate(mark);
            }
            i += 2;
        }
    }

    let mut out = Vec::new();
    if jumps <= sigma {
        rec(sigma, jumps, 0, 0, &mut Vec::new(), &mut out);
    }
    out
}

fn check_constraints(cons: &SwitchConstraints) -> Result<()> {
    SwitchConstraints::new(cons.a.clone(), cons.b.clone(), cons.sigma).map(|_| ())
}

/// `t1..tσ` as free LP variables with the rows `A t ≤ b`.
fn switch_model(cons: &SwitchConstraints) -> Result<LpModel> {
    let mut m = LpModel::new();
    for i in 1..=cons.sigma {
        m.add_var(format!("t{i}"), None, None)?;
    }
    for (j, (row, bj)) in cons.a.iter().zip(&cons.b).enumerate() {
        m.add_row(format!("a{}", j + 1), row.iter().cloned().enumerate(), Relation::Le, bj.clone())?;
    }
    Ok(m)
}

/// Switching points realising `u` under `A t ≤ b`, or `None`.
pub fn uab_witness(u: &BinaryPattern, cons: &SwitchConstraints) -> Result<Option<Vec<Rational>>> {
    check_constraints(cons)?;
    let sigma = cons.sigma;
    let jumps = u.jumps();
    if jumps.len() > sigma {
        return Ok(None);
    }
    let horizon = u.horizon();
    let mut base = switch_model(cons)?;
    for i in 0..sigma {
        base.vars[i].lower = Some(Rational::zero());
        base.vars[i].upper = Some(horizon.clone());
        if i + 1 < sigma {
            base.add_row(format!("order{}", i + 1), [(i, int(1)), (i + 1, int(-1))], Relation::Le, int(0))?;
        }
    }
    for assignment in block_assignments(sigma, jumps.len()) {
        let mut m = base.clone();
        for block in &assignment.blocks {
            match block.location {
                Location::RealJump(k) => {
                    m.vars[block.start].lower = Some(jumps[k].0.clone());
                    m.vars[block.start].upper = Some(jumps[k].0.clone());
                }
                Location::AtT => {
                    for i in block.start..=block.end {
                        m.vars[i].lower = Some(horizon.clone());
                    }
                }
                Location::FreeInterior => {
                    for i in block.start..block.end {
                        m.add_row(format!("pair{}", i + 1), [(i, int(1)), (i + 1, int(-1))], Relation::Eq, int(0))?;
                    }
                }
            }
        }
        if let Some(point) = crate::ratlp::feasible_point(&m)? {
            return Ok(Some(point));
        }
    }
    Ok(None)
}

/// Whether some ordered `t ∈ [0,T]^σ` with `A t ≤ b` induces `u`.
pub fn membership_uab(u: &BinaryPattern, cons: &SwitchConstraints) -> Result<bool> {
    Ok(uab_witness(u, cons)?.is_some())
}

/// All members of `U(A,b)` on the grid, lexicographically.
pub fn enum_uab(cons: &SwitchConstraints, horizon: &Rational, cells: usize, caps: &Caps) -> Result<Vec<BinaryPattern>> {
    check_constraints(cons)?;
    check_grid(horizon, cells)?;
    Caps::check("N", cells, caps.max_uab_cells)?;
    Caps::check("σ", cons.sigma, caps.max_sigma)?;
    let sigma = cons.sigma;
    let candidates = enumerate(
        horizon,
        cells,
        (false, 0usize),
        |&(prev, count), bit| {
            let count = count + usize::from(bit != prev);
            (count <= sigma).then_some((bit, count))
        },
        |_| true,
    );
    let verdicts: Vec<bool> =
        candidates.par_iter().map(|u| membership_uab(u, cons)).collect::<Result<_>>()?;
    Ok(candidates.into_iter().zip(verdicts).filter_map(|(u, ok)| ok.then_some(u)).collect())
}

/// Exact minimum of `∫ c u` over `patterns`; the first minimiser in list
/// order wins ties, so lexicographic input gives the lexicographic argmin.
pub fn brute_min(patterns: &[BinaryPattern], c: &StepFunction) -> Result<(Rational, BinaryPattern)> {
    let width = c.cell_width();
    let mut best: Option<(Rational, &BinaryPattern)> = None;
    for u in patterns {
        if u.horizon() != c.horizon() {
            return Err(Error::HorizonMismatch {
                left: format_rational(u.horizon()),
                right: format_rational(c.horizon()),
            });
        }
        if u.cells() != c.cells() {
            return Err(Error::GridMismatch(format!("pattern has {} cells, objective {}", u.cells(), c.cells())));
        }
        let value = u
            .bits()
            .iter()
            .zip(c.values())
            .filter(|(b, _)| **b)
            .fold(Rational::zero(), |acc, (_, ck)| acc + ck)
            * &width;
        if best.as_ref().is_none_or(|(v, _)| value < *v) {
            best = Some((value, u));
        }
    }
    best.map(|(v, u)| (v, u.clone())).ok_or(Error::Empty)
}

/// Members of `family` that are constant on every cell of the `N`-grid.
pub fn discretize_explicit(family: &[StepFunction], cells: usize) -> Result<Vec<StepFunction>> {
    if let Some(first) = family.first() {
        if let Some(other) = family.iter().find(|f| f.horizon() != first.horizon()) {
            return Err(Error::HorizonMismatch {
                left: format_rational(first.horizon()),
                right: format_rational(other.horizon()),
            });
        }
    }
    if cells == 0 {
        return Err(Error::domain("grid needs at least one cell"));
    }
    Ok(family.iter().filter(|f| f.on_grid(cells).is_some()).cloned().collect())
}

/// Whether `A t ≤ b` implies `0 ≤ t1 ≤ … ≤ tσ ≤ T`. Each implied form is
/// maximised by LP; an empty constraint set implies everything.
pub fn validate_uab(cons: &SwitchConstraints, horizon: &Rational) -> Result<bool> {
    check_constraints(cons)?;
    let sigma = cons.sigma;
    if sigma == 0 {
        return Ok(true);
    }
    let base = switch_model(cons)?;
    // form · t + constant ≤ 0, maximised as min −form
    let mut forms: Vec<(Vec<(usize, Rational)>, Rational)> = vec![(vec![(0, int(-1))], Rational::zero())];
    for i in 0..sigma - 1 {
        forms.push((vec![(i, int(1)), (i + 1, int(-1))], Rational::zero()));
    }
    forms.push((vec![(sigma - 1, int(1))], -horizon.clone()));
    for (form, constant) in forms {
        let mut m = base.clone();
        m.set_objective(form.into_iter().map(|(i, a)| (i, -a)), Rational::zero())?;
        match lp_solve(&m)? {
            LpResult::Infeasible => return Ok(true),
            LpResult::Unbounded => return Ok(false),
            LpResult::Optimal { value, .. } => {
                if -value + constant > Rational::zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Pattern list as a JSON array of 0/1 rows.
pub fn patterns_json(patterns: &[BinaryPattern]) -> serde_json::Value {
    serde_json::to_value(patterns).expect("patterns serialise")
}

/// CSV report: `pattern,tv` followed by one column per named flag vector.
pub fn enumeration_csv(patterns: &[BinaryPattern], flags: &[(&str, Vec<bool>)]) -> Result<String> {
    if let Some((name, _)) = flags.iter().find(|(_, v)| v.len() != patterns.len()) {
        return Err(Error::malformed(format!("flag column {name} has the wrong length")));
    }
    let mut out = String::from("pattern,tv");
    for (name, _) in flags {
        let _ = write!(out, ",{name}");
    }
    out.push('\n');
    for (row, u) in patterns.iter().enumerate() {
        let _ = write!(out, "{u},{}", u.switches());
        for (_, column) in flags {
            let _ = write!(out, ",{}", column[row]);
        }
        out.push('\n');
    }
    Ok(out)
}
