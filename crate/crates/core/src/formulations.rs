//! Builders for the discretised (extended) switching formulations.
//!
//! Every builder names its controls `u1..uN` (see
//! [`crate::ratlp::CONTROL_PREFIX`]) so that projections can be tested by
//! pinning exactly those variables. Auxiliary controls are `z1..zN` for the
//! single-chain models and `z{i}_{k}` (chain `i`, cell `k`) for the
//! linearisation of switching-point constraints. Indices `0` and below read
//! as the zero history.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratlp::{LpModel, Relation};
use crate::rational::{ceil_to_bigint, from_usize, int, to_usize, Rational};
use crate::stepfn::StepFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DwellVariant {
    /// The cell-indexed Rajan–Takriti model.
    #[serde(rename = "rt")]
    Rt,
    /// Additionally the boundary rows from shifting with zero history and the
    /// redundant bound `z_N <= ceil(2T/(L+l))`.
    #[serde(rename = "rt-with-boundary")]
    RtWithBoundary,
}

impl std::str::FromStr for DwellVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rt" => Ok(DwellVariant::Rt),
            "rt-with-boundary" => Ok(DwellVariant::RtWithBoundary),
            _ => Err(Error::malformed(format!("unknown dwell variant {s:?}"))),
        }
    }
}

fn u_name(k: usize) -> String {
    format!("u{k}")
}

fn z_name(k: usize) -> String {
    format!("z{k}")
}

/// Name of cell `k` of chain `i` in the linearised models.
pub fn chain_name(i: usize, k: usize) -> String {
    format!("z{i}_{k}")
}

fn check_cells(cells: usize) -> Result<()> {
    if cells == 0 {
        return Err(Error::domain("grid needs at least one cell"));
    }
    Ok(())
}

fn check_horizon(horizon: &Rational) -> Result<()> {
    if !horizon.is_positive() {
        return Err(Error::domain("horizon T must be positive"));
    }
    Ok(())
}

/// Adds `u1..uN` in `[0,1]` and returns their indices.
fn add_controls(model: &mut LpModel, cells: usize) -> Result<Vec<usize>> {
    (1..=cells).map(|k| model.add_var(u_name(k), Some(int(0)), Some(int(1)))).collect()
}

/// Relaxation of the bounded-variation class: `u ∈ [0,1]`, `z ∈ [0,σ]`,
/// `D(z−u) ≥ 0`, `D(z+u) ≥ 0` cellwise.
pub fn build_bv_relaxed(sigma: usize, horizon: &Rational, cells: usize) -> Result<LpModel> {
    check_cells(cells)?;
    check_horizon(horizon)?;
    let mut m = LpModel::new();
    let u = add_controls(&mut m, cells)?;
    let z: Vec<usize> = (1..=cells)
        .map(|k| m.add_var(z_name(k), Some(int(0)), Some(from_usize(sigma))))
        .collect::<Result<_>>()?;
    for k in 0..cells {
        for (tag, sign) in [("minus", -1), ("plus", 1)] {
            let mut terms = vec![(z[k], int(1)), (u[k], int(sign))];
            if k > 0 {
                terms.push((z[k - 1], int(-1)));
                terms.push((u[k - 1], int(-sign)));
            }
            m.add_row(format!("var_{tag}{}", k + 1), terms, Relation::Ge, int(0))?;
        }
    }
    Ok(m)
}

/// Exact hull formulation of the bounded-variation class. For even `σ` the
/// chain `z` counts up-switches and is capped at `σ/2`; for odd `σ` it counts
/// down-switches and is capped at `(σ−1)/2`.
pub fn build_bv_exact(sigma: usize, horizon: &Rational, cells: usize) -> Result<LpModel> {
    check_cells(cells)?;
    check_horizon(horizon)?;
    let even = sigma.is_multiple_of(2);
    let cap = from_usize(sigma / 2);
    let mut m = LpModel::new();
    let u = add_controls(&mut m, cells)?;
    let z: Vec<usize> = (1..=cells)
        .map(|k| m.add_var(z_name(k), Some(int(0)), Some(cap.clone())))
        .collect::<Result<_>>()?;
    // even: z_k - z_{k-1} >= u_k - u_{k-1};  odd: z_k - z_{k-1} >= u_{k-1} - u_k
    let usign = if even { -1 } else { 1 };
    for k in 0..cells {
        let mut terms = vec![(z[k], int(1)), (u[k], int(usign))];
        if k > 0 {
            terms.push((z[k - 1], int(-1)));
            terms.push((u[k - 1], int(-usign)));
        }
        m.add_row(format!("count{}", k + 1), terms, Relation::Ge, int(0))?;
    }
    for k in 0..cells {
        let mut terms = vec![(z[k], int(1))];
        if k > 0 {
            terms.push((z[k - 1], int(-1)));
        }
        m.add_row(format!("mono{}", k + 1), terms, Relation::Ge, int(0))?;
    }
    Ok(m)
}

/// Least `ℓ ≥ 1` with `ℓL/T` and `ℓl/T` integral.
pub fn dwell_grid_factor(up: &Rational, down: &Rational, horizon: &Rational) -> Result<usize> {
    check_horizon(horizon)?;
    if up.is_negative() || down.is_negative() || (up.is_zero() && down.is_zero()) {
        return Err(Error::domain("dwell times need L, l >= 0 and L + l > 0"));
    }
    let a = (up / horizon).denom().clone();
    let b = (down / horizon).denom().clone();
    let l = num_integer::Integer::lcm(&a, &b);
    usize::try_from(l).map_err(|_| Error::Capability("grid factor does not fit in usize".into()))
}

/// Dwell times measured in cells: `(NL/T, Nl/T)`, or a grid-incompatibility
/// error naming the required factor.
pub fn dwell_cells(up: &Rational, down: &Rational, horizon: &Rational, cells: usize) -> Result<(usize, usize)> {
    check_cells(cells)?;
    let factor = dwell_grid_factor(up, down, horizon)?;
    let n = from_usize(cells);
    let lu = to_usize(&(&n * up / horizon));
    let ld = to_usize(&(&n * down / horizon));
    match (lu, ld) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::GridIncompatible { cells, factor }),
    }
}

/// Minimum dwell-time formulation on the `N`-cell grid.
///
/// The up-window rows `z_i − z_{i−L̂} ≤ u_i` run over `i = min(L̂,N)..N` and
/// the down-window rows `z_i − z_{i−l̂} + u_{i−l̂} ≤ 1` over `i = min(l̂,N)..N`,
/// reading `z_j = u_j = 0` for `j ≤ 0`. Each window is thus also checked
/// where it first reaches back to the start of the horizon. The boundary
/// variant adds every shorter window, plus the bound `z_N ≤ ⌈2T/(L+l)⌉`.
pub fn build_dwell(
    up: &Rational,
    down: &Rational,
    horizon: &Rational,
    cells: usize,
    variant: DwellVariant,
) -> Result<LpModel> {
    check_horizon(horizon)?;
    let (lu, ld) = dwell_cells(up, down, horizon, cells)?;
    // A zero-cell window constrains nothing on the grid; a one-cell window
    // describes the same binary class and keeps z tied to the switches.
    let (lu, ld) = (lu.max(1), ld.max(1));
    let mut m = LpModel::new();
    let u = add_controls(&mut m, cells)?;
    let z: Vec<usize> = (1..=cells).map(|k| m.add_var(z_name(k), Some(int(0)), None)).collect::<Result<_>>()?;
    for k in 0..cells {
        let mut count = vec![(z[k], int(1)), (u[k], int(-1))];
        let mut mono = vec![(z[k], int(1))];
        if k > 0 {
            count.extend([(z[k - 1], int(-1)), (u[k - 1], int(1))]);
            mono.push((z[k - 1], int(-1)));
        }
        m.add_row(format!("count{}", k + 1), count, Relation::Ge, int(0))?;
        m.add_row(format!("mono{}", k + 1), mono, Relation::Ge, int(0))?;
    }
    // Cell i (1-based) is index i-1.
    let first_up = match variant {
        DwellVariant::Rt => lu.min(cells),
        DwellVariant::RtWithBoundary => 1,
    };
    for i in first_up..=cells {
        let mut terms = vec![(z[i - 1], int(1)), (u[i - 1], int(-1))];
        if i > lu {
            terms.push((z[i - 1 - lu], int(-1)));
        }
        m.add_row(format!("up{i}"), terms, Relation::Le, int(0))?;
    }
    let first_down = match variant {
        DwellVariant::Rt => ld.min(cells),
        DwellVariant::RtWithBoundary => 1,
    };
    for i in first_down..=cells {
        let mut terms = vec![(z[i - 1], int(1))];
        if i > ld {
            terms.push((z[i - 1 - ld], int(-1)));
            terms.push((u[i - 1 - ld], int(1)));
        }
        m.add_row(format!("down{i}"), terms, Relation::Le, int(1))?;
    }
    if variant == DwellVariant::RtWithBoundary {
        let bound = Rational::from_integer(ceil_to_bigint(&(int(2) * horizon / (up + down))));
        m.add_row("zcap", [(z[cells - 1], int(1))], Relation::Le, bound)?;
    }
    Ok(m)
}

/// Linear switching-point constraints `A t ≤ b` on `σ` switching points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchConstraints {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub sigma: usize,
}

impl SwitchConstraints {
    pub fn new(a: Vec<Vec<Rational>>, b: Vec<Rational>, sigma: usize) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::malformed(format!("A has {} rows but b has {} entries", a.len(), b.len())));
        }
        if let Some(row) = a.iter().find(|r| r.len() != sigma) {
            return Err(Error::malformed(format!("A row has {} columns, expected σ = {sigma}", row.len())));
        }
        Ok(SwitchConstraints { a, b, sigma })
    }

    pub fn unconstrained(sigma: usize) -> Self {
        SwitchConstraints { a: Vec::new(), b: Vec::new(), sigma }
    }

    pub fn num_rows(&self) -> usize {
        self.a.len()
    }
}

/// Chains `z^(1) ≥ … ≥ z^(σ)`, each nondecreasing in `[0,1]`, coupled to
/// `u = Σ (−1)^{i+1} z^(i)`. Returns the model and `chains[i][k]` indices.
fn linearized_core(sigma: usize, cells: usize, binary_u: bool) -> Result<(LpModel, Vec<usize>, Vec<Vec<usize>>)> {
    check_cells(cells)?;
    let mut m = LpModel::new();
    let u = add_controls(&mut m, cells)?;
    if binary_u {
        for &k in &u {
            m.vars[k].binary_intended = true;
        }
    }
    let mut chains = Vec::with_capacity(sigma);
    for i in 1..=sigma {
        let chain: Vec<usize> = (1..=cells)
            .map(|k| m.add_var(chain_name(i, k), Some(int(0)), Some(int(1))))
            .collect::<Result<_>>()?;
        chains.push(chain);
    }
    for (i, chain) in chains.iter().enumerate() {
        for k in 1..cells {
            m.add_row(
                format!("mono{}_{}", i + 1, k + 1),
                [(chain[k], int(1)), (chain[k - 1], int(-1))],
                Relation::Ge,
                int(0),
            )?;
        }
    }
    for i in 1..sigma {
        for k in 0..cells {
            m.add_row(
                format!("order{}_{}", i + 1, k + 1),
                [(chains[i][k], int(1)), (chains[i - 1][k], int(-1))],
                Relation::Le,
                int(0),
            )?;
        }
    }
    for k in 0..cells {
        let mut terms = vec![(u[k], int(1))];
        for (i, chain) in chains.iter().enumerate() {
            terms.push((chain[k], if i % 2 == 0 { int(-1) } else { int(1) }));
        }
        m.add_row(format!("couple{}", k + 1), terms, Relation::Eq, int(0))?;
    }
    Ok((m, u, chains))
}

/// Linearisation of `U(A,b)`. Row `j` of `A t ≤ b` becomes
/// `Σ_i a_ji (T − (T/N) Σ_k z^(i)_k) ≤ b_j`. With `relaxed == false` the
/// controls are only marked binary; the LP stays continuous.
pub fn build_linearized(
    constraints: &SwitchConstraints,
    horizon: &Rational,
    cells: usize,
    relaxed: bool,
) -> Result<LpModel> {
    check_horizon(horizon)?;
    let sigma = constraints.sigma;
    SwitchConstraints::new(constraints.a.clone(), constraints.b.clone(), sigma)?;
    let (mut m, _, chains) = linearized_core(sigma, cells, !relaxed)?;
    let width = horizon / from_usize(cells);
    for (j, (row, bj)) in constraints.a.iter().zip(&constraints.b).enumerate() {
        let mut terms = Vec::new();
        let mut constant = Rational::zero();
        for (a, chain) in row.iter().zip(&chains) {
            if a.is_zero() {
                continue;
            }
            constant += a * horizon;
            let coef = -(a * &width);
            terms.extend(chain.iter().map(|&idx| (idx, coef.clone())));
        }
        m.add_row(format!("switch{}", j + 1), terms, Relation::Le, bj - constant)?;
    }
    Ok(m)
}

/// Dwell-time constraints written in the chain variables of the
/// linearisation: even chains below the `L̂`-shifted odd chains, odd chains
/// below one plus the `l̂`-shifted even chains.
pub fn build_dwell_in_z(
    up: &Rational,
    down: &Rational,
    sigma: usize,
    horizon: &Rational,
    cells: usize,
) -> Result<LpModel> {
    check_horizon(horizon)?;
    let (lu, ld) = dwell_cells(up, down, horizon, cells)?;
    let (mut m, _, chains) = linearized_core(sigma, cells, false)?;
    for k in 0..cells {
        let mut terms = Vec::new();
        for (i, chain) in chains.iter().enumerate() {
            if i % 2 == 1 {
                terms.push((chain[k], int(1)));
            } else if k >= lu {
                terms.push((chain[k - lu], int(-1)));
            }
        }
        m.add_row(format!("dwell_up{}", k + 1), terms, Relation::Le, int(0))?;
        let mut terms = Vec::new();
        for (i, chain) in chains.iter().enumerate() {
            if i % 2 == 0 {
                terms.push((chain[k], int(1)));
            } else if k >= ld {
                terms.push((chain[k - ld], int(-1)));
            }
        }
        m.add_row(format!("dwell_down{}", k + 1), terms, Relation::Le, int(1))?;
    }
    Ok(m)
}

/// Set the objective to `∫ c u dt = (T/N) Σ c_k u_k`.
pub fn attach_objective(model: &LpModel, c: &StepFunction) -> Result<LpModel> {
    let controls = model.control_vars()?;
    if controls.len() != c.cells() {
        return Err(Error::GridMismatch(format!(
            "objective has {} cells, model has {} controls",
            c.cells(),
            controls.len()
        )));
    }
    let width = c.cell_width();
    let mut out = model.clone();
    out.set_objective(
        controls.iter().zip(c.values()).map(|(&idx, ck)| (idx, ck * &width)),
        Rational::zero(),
    )?;
    Ok(out)
}

/// `[("u1", v1), ..]` for pinning a control vector.
pub fn control_assignment(values: &[Rational]) -> Vec<(String, Rational)> {
    values.iter().enumerate().map(|(k, v)| (u_name(k + 1), v.clone())).collect()
}

/// Pin controls (and optionally further named variables) and test feasibility.
pub fn fix_controls(model: &LpModel, values: &[Rational], extra: &[(String, Rational)]) -> Result<bool> {
    let all: Vec<(String, Rational)> = control_assignment(values).into_iter().chain(extra.iter().cloned()).collect();
    let refs: Vec<(&str, Rational)> = all.iter().map(|(n, v)| (n.as_str(), v.clone())).collect();
    crate::ratlp::lp_fix_and_check(model, &refs)
}

/// Witness chains `z^(i) = χ_(t_i, T)` on the grid for grid-aligned switching
/// points, as named assignments.
pub fn chain_witness(points: &[Rational], horizon: &Rational, cells: usize) -> Result<Vec<(String, Rational)>> {
    let width = horizon / from_usize(cells);
    let mut out = Vec::new();
    for (i, t) in points.iter().enumerate() {
        let start = t / &width;
        let start = to_usize(&start).ok_or_else(|| Error::domain("switching point is not a grid point"))?;
        for k in 1..=cells {
            let v = if k > start { Rational::one() } else { Rational::zero() };
            out.push((chain_name(i + 1, k), v));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlp::{lp_solve, LpResult};
    use crate::rational::rat;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn fracs(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    fn zs(name: &str, v: &[Rational]) -> Vec<(String, Rational)> {
        v.iter().enumerate().map(|(k, x)| (format!("{name}{}", k + 1), x.clone())).collect()
    }

    #[test]
    fn bv_relaxed_examples() {
        let m = build_bv_relaxed(0, &int(3), 3).unwrap();
        assert!(fix_controls(&m, &ints(&[0, 0, 0]), &[]).unwrap());
        assert!(!fix_controls(&m, &fracs(&[(0, 1), (1, 3), (0, 1)]), &[]).unwrap());

        let m = build_bv_relaxed(2, &int(2), 2).unwrap();
        assert!(fix_controls(&m, &ints(&[1, 0]), &zs("z", &ints(&[1, 2]))).unwrap());

        let m = build_bv_relaxed(1, &int(2), 2).unwrap();
        assert!(!fix_controls(&m, &ints(&[1, 0]), &[]).unwrap());
    }

    #[test]
    fn bv_exact_examples() {
        let m = build_bv_exact(2, &int(2), 2).unwrap();
        assert!(fix_controls(&m, &ints(&[1, 1]), &zs("z", &ints(&[1, 1]))).unwrap());
        assert!(fix_controls(&m, &ints(&[1, 0]), &zs("z", &ints(&[1, 1]))).unwrap());

        let m = build_bv_exact(2, &int(3), 3).unwrap();
        assert!(fix_controls(&m, &ints(&[0, 1, 0]), &zs("z", &ints(&[0, 1, 1]))).unwrap());

        let m = build_bv_exact(2, &int(4), 4).unwrap();
        assert!(!fix_controls(&m, &ints(&[1, 0, 1, 0]), &[]).unwrap());

        let m = build_bv_exact(1, &int(2), 2).unwrap();
        assert!(fix_controls(&m, &ints(&[1, 1]), &zs("z", &ints(&[0, 0]))).unwrap());
        assert!(!fix_controls(&m, &ints(&[1, 0]), &[]).unwrap());
    }

    #[test]
    fn bv_exact_counts() {
        let m = build_bv_exact(2, &int(4), 4).unwrap();
        assert_eq!(m.num_vars(), 8);
        assert_eq!(m.rows.iter().filter(|r| r.name.starts_with("mono")).count(), 4);
        assert_eq!(m.num_rows(), 8);
    }

    #[test]
    fn grid_factor_examples() {
        assert_eq!(dwell_grid_factor(&int(2), &int(1), &int(4)).unwrap(), 4);
        assert_eq!(dwell_grid_factor(&int(1), &int(1), &int(1)).unwrap(), 1);
        assert_eq!(dwell_grid_factor(&int(2), &int(0), &int(4)).unwrap(), 2);
        assert_eq!(dwell_grid_factor(&rat(1, 3), &rat(1, 2), &rat(5, 2)).unwrap(), 15);
        assert!(dwell_grid_factor(&int(0), &int(0), &int(4)).is_err());
    }

    #[test]
    fn dwell_examples() {
        for variant in [DwellVariant::Rt, DwellVariant::RtWithBoundary] {
            let m = build_dwell(&int(2), &int(1), &int(4), 4, variant).unwrap();
            assert!(fix_controls(&m, &ints(&[1, 1, 0, 0]), &zs("z", &ints(&[1, 1, 1, 1]))).unwrap());
            assert!(!fix_controls(&m, &ints(&[0, 1, 0, 0]), &[]).unwrap());
            let m = build_dwell(&int(2), &int(0), &int(4), 4, variant).unwrap();
            assert!(!fix_controls(&m, &fracs(&[(0, 1), (1, 1), (1, 2), (1, 2)]), &[]).unwrap());
        }
    }

    #[test]
    fn dwell_switch_on_at_zero_is_covered() {
        // A switch-on in cell 1 followed by a switch-off before L̂ cells.
        for variant in [DwellVariant::Rt, DwellVariant::RtWithBoundary] {
            let m = build_dwell(&int(2), &int(0), &int(4), 4, variant).unwrap();
            assert!(!fix_controls(&m, &ints(&[1, 0, 0, 0]), &[]).unwrap());
        }
        // Dropping the i = L̂ window row re-admits it.
        let mut m = build_dwell(&int(2), &int(0), &int(4), 4, DwellVariant::Rt).unwrap();
        m.rows.retain(|r| r.name != "up2");
        assert!(fix_controls(&m, &ints(&[1, 0, 0, 0]), &zs("z", &ints(&[1, 1, 1, 1]))).unwrap());
    }

    #[test]
    fn dwell_down_window_reaching_the_start_is_covered() {
        // Off after one cell, back on before l̂ = N cells have passed.
        let m = build_dwell(&int(0), &int(4), &int(4), 4, DwellVariant::Rt).unwrap();
        assert!(!fix_controls(&m, &ints(&[1, 0, 1, 0]), &[]).unwrap());
        assert!(fix_controls(&m, &ints(&[0, 1, 1, 0]), &[]).unwrap());
        let mut m = m;
        m.rows.retain(|r| r.name != "down4");
        assert!(fix_controls(&m, &ints(&[1, 0, 1, 0]), &zs("z", &ints(&[1, 1, 2, 2]))).unwrap());
    }

    #[test]
    fn dwell_grid_incompatibility() {
        let err = build_dwell(&int(2), &int(1), &int(4), 3, DwellVariant::Rt).unwrap_err();
        assert!(matches!(err, Error::GridIncompatible { cells: 3, factor: 4 }));
        for k in 1..=3 {
            assert!(build_dwell(&int(2), &int(1), &int(4), 4 * k, DwellVariant::Rt).is_ok());
        }
    }

    #[test]
    fn boundary_variant_carries_cap() {
        let m = build_dwell(&int(2), &int(1), &int(4), 4, DwellVariant::RtWithBoundary).unwrap();
        let cap = m.rows.iter().find(|r| r.name == "zcap").unwrap();
        assert_eq!(cap.rhs, int(3)); // ceil(8/3)
    }

    fn counterexample() -> (Vec<Rational>, Vec<(String, Rational)>) {
        let u = fracs(&[(0, 1), (1, 1), (1, 2), (1, 2)]);
        let mut z = zs("z1_", &ints(&[0, 1, 1, 1]));
        z.extend(zs("z2_", &fracs(&[(0, 1), (0, 1), (1, 2), (1, 2)])));
        (u, z)
    }

    #[test]
    fn linearized_counterexample_is_feasible() {
        // ∫ (z1 − z2) ≥ 2  ⇔  t1 − t2 ≤ −2
        let cons = SwitchConstraints::new(vec![vec![int(1), int(-1)]], vec![int(-2)], 2).unwrap();
        let m = build_linearized(&cons, &int(4), 4, true).unwrap();
        let (u, z) = counterexample();
        assert!(fix_controls(&m, &u, &z).unwrap());
    }

    #[test]
    fn linearized_fixed_switch_points() {
        // t1 = 0, t2 = 1 on T = 1, N = 1
        let cons = SwitchConstraints::new(
            vec![vec![int(1), int(0)], vec![int(-1), int(0)], vec![int(0), int(1)], vec![int(0), int(-1)]],
            ints(&[0, 0, 1, -1]),
            2,
        )
        .unwrap();
        let m = build_linearized(&cons, &int(1), 1, false).unwrap();
        assert!(m.vars[0].binary_intended);
        assert!(fix_controls(&m, &ints(&[1]), &[]).unwrap());
        assert!(!fix_controls(&m, &ints(&[0]), &[]).unwrap());
    }

    #[test]
    fn linearized_single_up_switch() {
        let m = build_linearized(&SwitchConstraints::unconstrained(1), &int(2), 2, true).unwrap();
        let feasible: Vec<[i64; 2]> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .into_iter()
            .filter(|p| fix_controls(&m, &ints(p), &[]).unwrap())
            .collect();
        assert_eq!(feasible, vec![[0, 0], [0, 1], [1, 1]]);
    }

    #[test]
    fn linearized_counts_and_dimension_errors() {
        let cons = SwitchConstraints::new(vec![vec![int(1), int(0)]], vec![int(1)], 2).unwrap();
        let m = build_linearized(&cons, &int(4), 4, true).unwrap();
        assert_eq!(m.num_vars(), 12);
        assert!(SwitchConstraints::new(vec![vec![int(1)]], vec![int(1)], 2).is_err());
        assert!(SwitchConstraints::new(vec![vec![int(1), int(1)]], vec![], 2).is_err());
    }

    #[test]
    fn dwell_in_z_examples() {
        let m = build_dwell_in_z(&int(2), &int(0), 2, &int(4), 4).unwrap();
        let (u, z) = counterexample();
        assert!(!fix_controls(&m, &u, &z).unwrap());
        assert!(!fix_controls(&m, &u, &[]).unwrap());
        let zero = ints(&[0, 0, 0, 0]);
        let mut z0 = zs("z1_", &zero);
        z0.extend(zs("z2_", &zero));
        assert!(fix_controls(&m, &zero, &z0).unwrap());
        let mut z = zs("z1_", &ints(&[1, 1, 1, 1]));
        z.extend(zs("z2_", &ints(&[0, 0, 1, 1])));
        assert!(fix_controls(&m, &ints(&[1, 1, 0, 0]), &z).unwrap());
        assert!(build_dwell_in_z(&int(2), &int(0), 2, &int(4), 3).is_err());
    }

    #[test]
    fn objective_examples() {
        let m = build_bv_exact(2, &int(2), 2).unwrap();
        let zero = StepFunction::zeros(int(2), 2).unwrap();
        assert_eq!(lp_solve(&attach_objective(&m, &zero).unwrap()).unwrap().value(), Some(&int(0)));
        let ones = StepFunction::new(int(2), ints(&[1, 1])).unwrap();
        assert_eq!(lp_solve(&attach_objective(&m, &ones).unwrap()).unwrap().value(), Some(&int(0)));
        let c = StepFunction::new(int(2), ints(&[1, -1])).unwrap();
        match lp_solve(&attach_objective(&m, &c).unwrap()).unwrap() {
            LpResult::Optimal { value, point } => {
                assert_eq!(value, int(-1));
                assert_eq!(&point[..2], &ints(&[0, 1])[..]);
            }
            other => panic!("{other:?}"),
        }
        let wrong = StepFunction::zeros(int(2), 3).unwrap();
        assert!(matches!(attach_objective(&m, &wrong), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn chain_witness_matches_indicators() {
        let w = chain_witness(&[int(1), int(4)], &int(4), 4).unwrap();
        let values: Vec<Rational> = w.into_iter().map(|(_, v)| v).collect();
        assert_eq!(values, ints(&[0, 1, 1, 1, 0, 0, 0, 0]));
    }
}
