//! Seeded LP-versus-oracle suites and the averaging convergence table.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::formulations::{attach_objective, fix_controls};
use crate::instance::{HullClaim, Instance};
use crate::oracle::{brute_min, BinaryPattern};
use crate::ratlp::{lp_solve, LpModel, LpResult};
use crate::rational::{from_usize, is_binary, Rational};
use crate::stepfn::StepFunction;

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Random objective for trial `trial`: cell values `p/q` with `1 ≤ q ≤ 6`
/// and `|p/q| ≤ 2`. Independent of how many trials run or in which order.
pub fn random_objective(seed: u64, trial: u64, horizon: &Rational, cells: usize) -> StepFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let values = (0..cells)
        .map(|_| {
            let q: i64 = rng.gen_range(1..=6);
            let p: i64 = rng.gen_range(-2 * q..=2 * q);
            Rational::new(p.into(), q.into())
        })
        .collect();
    StepFunction::new(horizon.clone(), values).expect("valid grid")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialStatus {
    Equal,
    /// LP strictly below the oracle; allowed for relaxations only.
    Below,
    Mismatch,
}

impl TrialStatus {
    pub fn label(self) -> &'static str {
        match self {
            TrialStatus::Equal => "equal",
            TrialStatus::Below => "lp_below",
            TrialStatus::Mismatch => "mismatch",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Trial {
    pub index: u64,
    pub lp_value: Rational,
    pub oracle_value: Rational,
    pub status: TrialStatus,
    /// Whether the LP's control part is binary. Only judged when the oracle
    /// minimiser is unique.
    pub binary_vertex: Option<bool>,
}

/// LP optimum and oracle minimum for one objective.
pub fn compare_objective(
    model: &LpModel,
    patterns: &[BinaryPattern],
    c: &StepFunction,
    claim: HullClaim,
) -> Result<Trial> {
    let priced = attach_objective(model, c)?;
    let (lp_value, point) = match lp_solve(&priced)? {
        LpResult::Optimal { value, point } => (value, point),
        other => {
            return Err(Error::Verification(format!("LP over a nonempty class is {}", other.status_label())));
        }
    };
    let (oracle_value, _) = brute_min(patterns, c)?;
    let status = if lp_value == oracle_value {
        TrialStatus::Equal
    } else if claim == HullClaim::Contains && lp_value < oracle_value {
        TrialStatus::Below
    } else {
        TrialStatus::Mismatch
    };
    let width = c.cell_width();
    let value_of = |u: &BinaryPattern| {
        u.bits().iter().zip(c.values()).filter(|(b, _)| **b).fold(Rational::zero(), |a, (_, v)| a + v) * &width
    };
    let minimisers = patterns.iter().filter(|u| value_of(u) == oracle_value).count();
    let binary_vertex = (minimisers == 1).then(|| {
        model.control_vars().map(|idx| idx.iter().all(|&k| is_binary(&point[k]))).unwrap_or(false)
    });
    Ok(Trial { index: 0, lp_value, oracle_value, status, binary_vertex })
}

/// Grids up to this many cells get every binary point checked; finer grids
/// only check the class members.
pub const FULL_MEMBERSHIP_CELLS: usize = 12;

/// How the model treats binary grid points.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MembershipSummary {
    pub members: usize,
    pub members_admitted: usize,
    /// `None` when the grid was too fine for the full sweep.
    pub outsiders: Option<usize>,
    pub outsiders_admitted: usize,
}

fn indicator(bits: &[bool]) -> Vec<Rational> {
    bits.iter().map(|&b| if b { Rational::one() } else { Rational::zero() }).collect()
}

pub fn membership_summary(model: &LpModel, patterns: &[BinaryPattern], cells: usize) -> Result<MembershipSummary> {
    let admitted: Vec<bool> =
        patterns.par_iter().map(|p| fix_controls(model, &indicator(p.bits()), &[])).collect::<Result<_>>()?;
    let mut s = MembershipSummary {
        members: patterns.len(),
        members_admitted: admitted.iter().filter(|&&a| a).count(),
        ..MembershipSummary::default()
    };
    if cells <= FULL_MEMBERSHIP_CELLS {
        let outsiders: Vec<bool> = (0u64..1 << cells)
            .into_par_iter()
            .filter_map(|mask| {
                let bits: Vec<bool> = (0..cells).map(|i| mask >> (cells - 1 - i) & 1 == 1).collect();
                let member = patterns.binary_search_by(|p| p.bits().cmp(&bits[..])).is_ok();
                (!member).then(|| fix_controls(model, &indicator(&bits), &[]))
            })
            .collect::<Result<_>>()?;
        s.outsiders = Some(outsiders.len());
        s.outsiders_admitted = outsiders.iter().filter(|&&a| a).count();
    }
    Ok(s)
}

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub trials: Vec<Trial>,
    pub membership: MembershipSummary,
    pub claim: HullClaim,
    /// Verdict on an extra point: `Some(true)` if the model admits it.
    pub point_admitted: Option<bool>,
    pub failures: Vec<String>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Hull-equality suite for `inst` on `trials` seeded objectives, plus the
/// binary membership cross-check and an optional point to test.
pub fn verify_instance(
    inst: &Instance,
    trials: u64,
    seed: u64,
    point: Option<&StepFunction>,
    caps: &Caps,
) -> Result<VerifyOutcome> {
    let model = inst.build()?;
    let patterns = inst.oracle_class(caps)?;
    let claim = inst.hull_claim();
    let cells = inst.cells();
    let mut failures = Vec::new();

    let membership = membership_summary(&model, &patterns, cells)?;
    if membership.members_admitted != membership.members {
        failures.push(format!(
            "{} of {} class members are cut off by the model",
            membership.members - membership.members_admitted,
            membership.members
        ));
    }
    if claim == HullClaim::Exact && membership.outsiders_admitted > 0 {
        failures.push(format!("{} binary points outside the class are admitted", membership.outsiders_admitted));
    }

    let trials: Vec<Trial> = if patterns.is_empty() {
        Vec::new()
    } else {
        (0..trials)
            .into_par_iter()
            .map(|k| {
                let c = random_objective(seed, k, inst.horizon(), cells);
                compare_objective(&model, &patterns, &c, claim).map(|t| Trial { index: k, ..t })
            })
            .collect::<Result<_>>()?
    };
    for t in &trials {
        if t.status == TrialStatus::Mismatch {
            failures.push(format!("trial {}: LP {} vs oracle {}", t.index, t.lp_value, t.oracle_value));
        }
        if claim == HullClaim::Exact && t.binary_vertex == Some(false) {
            failures.push(format!("trial {}: unique optimum but fractional LP vertex", t.index));
        }
    }
    if patterns.is_empty() && !matches!(lp_solve(&model)?, LpResult::Infeasible) && claim == HullClaim::Exact {
        failures.push("empty class but feasible model".into());
    }

    let point_admitted = match point {
        Some(u) => {
            if u.cells() != cells || u.horizon() != inst.horizon() {
                return Err(Error::GridMismatch("point does not live on the instance grid".into()));
            }
            Some(fix_controls(&model, u.values(), &[])?)
        }
        None => None,
    };
    Ok(VerifyOutcome { trials, membership, claim, point_admitted, failures })
}

/// One line of the averaging table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergeRow {
    pub cells: usize,
    pub dist_sq: Rational,
    pub bound: Rational,
}

impl ConvergeRow {
    pub fn within_bound(&self) -> bool {
        self.dist_sq <= self.bound
    }
}

/// `‖u − u_[N]‖²` against `(T/N)·TV(u)²` for each requested `N` dividing
/// the fine grid; all divisors when `divisors` is empty.
pub fn converge(u: &StepFunction, divisors: &[usize]) -> Result<Vec<ConvergeRow>> {
    let m = u.cells();
    let list: Vec<usize> = if divisors.is_empty() { (1..=m).filter(|n| m.is_multiple_of(*n)).collect() } else { divisors.to_vec() };
    let tv = u.total_variation();
    list.into_iter()
        .map(|n| {
            let coarse = u.coarsen(n)?;
            let dist_sq = u.l2_dist_sq(&coarse)?;
            let bound = u.horizon() / from_usize(n) * &tv * &tv;
            Ok(ConvergeRow { cells: n, dist_sq, bound })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use num_traits::Signed;

    #[test]
    fn objectives_are_reproducible() {
        let a = random_objective(7, 3, &int(2), 5);
        assert_eq!(a, random_objective(7, 3, &int(2), 5));
        assert_ne!(a, random_objective(7, 4, &int(2), 5));
        assert!(a.values().iter().all(|v| v.denom() <= &6.into() && v.abs() <= int(2)));
    }

    #[test]
    fn verify_bv_exact_passes() {
        let inst = Instance::BvExact { sigma: 2, horizon: int(6), cells: 6 };
        let out = verify_instance(&inst, 25, DEFAULT_SEED, None, &Caps::default()).unwrap();
        assert!(out.passed(), "{:?}", out.failures);
        assert_eq!(out.trials.len(), 25);
        assert!(out.trials.iter().all(|t| t.status == TrialStatus::Equal));
    }

    #[test]
    fn verify_dwell_reports_cut_off_point() {
        let inst = Instance::Dwell {
            up: int(2),
            down: int(0),
            horizon: int(4),
            cells: 4,
            variant: crate::formulations::DwellVariant::Rt,
        };
        let u = StepFunction::new(int(4), vec![int(0), int(1), rat(1, 2), rat(1, 2)]).unwrap();
        let out = verify_instance(&inst, 5, DEFAULT_SEED, Some(&u), &Caps::default()).unwrap();
        assert!(out.passed());
        assert_eq!(out.point_admitted, Some(false));
    }

    #[test]
    fn relaxed_bv_never_exceeds_oracle() {
        let inst = Instance::BvRelaxed { sigma: 2, horizon: int(5), cells: 5 };
        let out = verify_instance(&inst, 30, 1, None, &Caps::default()).unwrap();
        assert!(out.passed());
        assert!(out.trials.iter().all(|t| t.lp_value <= t.oracle_value));
    }

    #[test]
    fn converge_examples() {
        let stair = StepFunction::new(int(1), (0..8).map(|k| rat(k, 8)).collect()).unwrap();
        let rows = converge(&stair, &[2, 4, 8]).unwrap();
        assert!(rows.iter().all(ConvergeRow::within_bound));
        assert!(rows.windows(2).all(|w| w[0].dist_sq >= w[1].dist_sq));
        assert!(rows[2].dist_sq.is_zero());
        let alt = StepFunction::new(int(1), (0..16).map(|k| int((k + 1) % 2)).collect()).unwrap();
        assert!(converge(&alt, &[4]).unwrap()[0].within_bound());
        assert!(converge(&alt, &[3]).is_err());
    }
}
