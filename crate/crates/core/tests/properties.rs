use num_traits::{One, Zero};
use proptest::prelude::*;

use switchform::caps::Caps;
use switchform::formulations::{attach_objective, build_bv_exact, build_bv_relaxed, fix_controls, SwitchConstraints};
use switchform::oracle::{brute_min, enum_bv, enum_dwell, enum_uab, membership_uab, BinaryPattern};
use switchform::ratlp::{lp_solve, LpResult};
use switchform::rational::{from_usize, int, rat};
use switchform::reductions::{bpf_switch_points, bpf_to_uab, min_gamma_cover, BpfInstance, SimpleGraph};
use switchform::stepfn::StepFunction;
use switchform::Rational;

fn small_rational() -> impl Strategy<Value = Rational> {
    (1i64..=6).prop_flat_map(|q| (-2 * q..=2 * q).prop_map(move |p| rat(p, q)))
}

fn objective(cells: usize) -> impl Strategy<Value = StepFunction> {
    prop::collection::vec(small_rational(), cells)
        .prop_map(move |values| StepFunction::new(from_usize(cells), values).unwrap())
}

fn optimum(model: &switchform::ratlp::LpModel, c: &StepFunction) -> Rational {
    match lp_solve(&attach_objective(model, c).unwrap()).unwrap() {
        LpResult::Optimal { value, .. } => value,
        other => panic!("LP ended {}", other.status_label()),
    }
}

fn constraints(sigma: usize) -> impl Strategy<Value = SwitchConstraints> {
    let row = prop::collection::vec((-2i64..=2).prop_map(int), sigma);
    prop::collection::vec((row, (-2i64..=6).prop_map(int)), 0..=2).prop_map(move |rows| {
        let (a, b) = rows.into_iter().unzip();
        SwitchConstraints::new(a, b, sigma).unwrap()
    })
}

fn pattern(cells: usize) -> impl Strategy<Value = BinaryPattern> {
    prop::collection::vec(any::<bool>(), cells).prop_map(move |bits| BinaryPattern::new(from_usize(cells), bits).unwrap())
}

fn graph() -> impl Strategy<Value = SimpleGraph> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..=2 * n).prop_map(move |pairs| {
            let edges: Vec<(usize, usize)> = pairs.into_iter().filter(|(v, w)| v != w).collect();
            SimpleGraph::from_edges(n, &edges).unwrap()
        })
    })
}

#[test]
fn relaxed_bounded_variation_is_strictly_larger() {
    let u: Vec<Rational> = vec![rat(2, 3), Rational::zero(), rat(2, 3)];
    let relaxed = build_bv_relaxed(2, &int(3), 3).unwrap();
    let exact = build_bv_exact(2, &int(3), 3).unwrap();
    assert!(fix_controls(&relaxed, &u, &[]).unwrap());
    assert!(!fix_controls(&exact, &u, &[]).unwrap());
    // In the hull every member with u2 = 0 has u1 + u3 ≤ 1.
    let patterns = enum_bv(2, &int(3), 3, &Caps::default()).unwrap();
    assert!(patterns.iter().filter(|p| !p.bits()[1]).all(|p| !(p.bits()[0] && p.bits()[2])));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relaxation_never_beats_exact_and_exact_matches_oracle(
        sigma in 0usize..=4,
        c in (2usize..=7).prop_flat_map(objective),
    ) {
        let cells = c.cells();
        let horizon = from_usize(cells);
        let relaxed = optimum(&build_bv_relaxed(sigma, &horizon, cells).unwrap(), &c);
        let exact = optimum(&build_bv_exact(sigma, &horizon, cells).unwrap(), &c);
        let patterns = enum_bv(sigma, &horizon, cells, &Caps::default()).unwrap();
        let (brute, _) = brute_min(&patterns, &c).unwrap();
        prop_assert!(relaxed <= exact);
        prop_assert_eq!(exact, brute);
    }

    #[test]
    fn switching_point_membership_ignores_refinement(
        cons in (1usize..=3).prop_flat_map(constraints),
        u in (1usize..=4).prop_flat_map(pattern),
        factor in 2usize..=3,
    ) {
        prop_assert_eq!(membership_uab(&u, &cons).unwrap(), membership_uab(&u.refine(factor), &cons).unwrap());
    }

    #[test]
    fn refined_classes_are_contained(sigma in 0usize..=3, cells in 1usize..=4, factor in 2usize..=3) {
        let caps = Caps::default();
        let horizon = from_usize(cells);
        let fine = enum_bv(sigma, &horizon, cells * factor, &caps).unwrap();
        for p in enum_bv(sigma, &horizon, cells, &caps).unwrap() {
            prop_assert!(fine.contains(&p.refine(factor)));
        }
    }

    #[test]
    fn larger_budgets_admit_more(sigma in 0usize..=4, cells in 1usize..=8) {
        let caps = Caps::default();
        let horizon = from_usize(cells);
        let small = enum_bv(sigma, &horizon, cells, &caps).unwrap();
        let large = enum_bv(sigma + 1, &horizon, cells, &caps).unwrap();
        prop_assert!(small.iter().all(|p| large.contains(p)));
        prop_assert!(small.iter().all(|p| p.switches() <= sigma));
    }

    #[test]
    fn longer_dwell_times_admit_less(up in 0i64..=4, down in 0i64..=4, cells in 1usize..=9) {
        prop_assume!(up + down > 0);
        let caps = Caps::default();
        let horizon = from_usize(cells);
        let base = enum_dwell(&int(up), &int(down), &horizon, cells, &caps).unwrap();
        let longer_up = enum_dwell(&int(up + 1), &int(down), &horizon, cells, &caps).unwrap();
        let longer_down = enum_dwell(&int(up), &int(down + 1), &horizon, cells, &caps).unwrap();
        prop_assert!(longer_up.iter().all(|p| base.contains(p)));
        prop_assert!(longer_down.iter().all(|p| base.contains(p)));
    }

    #[test]
    fn even_grids_reach_the_half_integral_optimum(g in graph(), half in 1usize..=3) {
        let caps = Caps::default();
        let (at_half, x) = min_gamma_cover(&g, 2, &caps).unwrap();
        let (even, _) = min_gamma_cover(&g, 2 * half, &caps).unwrap();
        prop_assert_eq!(&even, &at_half);
        prop_assert!((at_half.clone() * int(2)).is_integer());
        prop_assert!(x.iter().all(|v| v.is_zero() || v.is_one() || *v == rat(1, 2)));
        for (v, w) in g.edges() {
            prop_assert!(&x[v] + &x[w] >= Rational::one());
        }
    }

    #[test]
    fn reduction_members_project_to_bpf_solutions(
        n in 1usize..=3,
        rows in prop::collection::vec((prop::collection::vec(-2i64..=2, 3), -2i64..=2), 0..=3),
    ) {
        let b: Vec<Vec<Rational>> = rows.iter().map(|(r, _)| r[..n].iter().map(|&v| int(v)).collect()).collect();
        let d: Vec<Rational> = rows.iter().map(|(_, v)| int(*v)).collect();
        let inst = BpfInstance { b, d, n: Some(n) };
        let bundle = bpf_to_uab(&inst).unwrap();
        let members = enum_uab(&bundle.constraints(), bundle.horizon(), n, &Caps::default()).unwrap();
        for u in &members {
            let t = bpf_switch_points(u, n).unwrap();
            let x: Vec<bool> = (0..n).map(|i| t[2 * i + 1] > from_usize(i)).collect();
            prop_assert!(inst.satisfied_by(&x));
        }
        for mask in 0u32..1 << n {
            let x: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            if inst.satisfied_by(&x) {
                let u = BinaryPattern::new(from_usize(n), x.clone()).unwrap();
                prop_assert!(membership_uab(&u, &bundle.constraints()).unwrap());
                prop_assert!(members.contains(&u));
            }
        }
    }
}
