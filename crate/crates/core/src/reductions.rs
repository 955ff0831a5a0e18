//! Hardness constructions with brute-force referees: binary program
//! feasibility as switching-point constraints, the sawtooth objective, and
//! the fractional vertex-cover gadget.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::formulations::SwitchConstraints;
use crate::instance::Instance;
use crate::oracle::{membership_uab, BinaryPattern};
use crate::rational::{from_usize, int, rat, serde_rational_matrix, serde_rational_vec, Rational};
use crate::stepfn::StepFunction;

/// Binary program feasibility: is there `x ∈ {0,1}^n` with `B x ≤ d`?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BpfInstance {
    #[serde(rename = "B", with = "serde_rational_matrix")]
    pub b: Vec<Vec<Rational>>,
    #[serde(with = "serde_rational_vec")]
    pub d: Vec<Rational>,
    /// Column count, needed when `B` has no rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

impl BpfInstance {
    pub fn new(b: Vec<Vec<Rational>>, d: Vec<Rational>) -> Result<Self> {
        let inst = BpfInstance { b, d, n: None };
        inst.validate()?;
        Ok(inst)
    }

    pub fn vars(&self) -> usize {
        self.n.unwrap_or_else(|| self.b.first().map_or(0, Vec::len))
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.vars();
        if n == 0 {
            return Err(Error::domain("BPF instance needs n >= 1"));
        }
        if self.b.len() != self.d.len() {
            return Err(Error::malformed(format!("B has {} rows but d has {}", self.b.len(), self.d.len())));
        }
        if self.b.iter().any(|row| row.len() != n) {
            return Err(Error::malformed("rows of B differ in length"));
        }
        Ok(())
    }

    pub fn satisfied_by(&self, x: &[bool]) -> bool {
        self.b.iter().zip(&self.d).all(|(row, dj)| {
            let lhs = row.iter().zip(x).filter(|(_, &xi)| xi).fold(Rational::zero(), |acc, (a, _)| acc + a);
            lhs <= *dj
        })
    }

    /// Exhaustive search over `{0,1}^n`.
    pub fn brute_feasible(&self, caps: &Caps) -> Result<Option<Vec<bool>>> {
        self.validate()?;
        let n = self.vars();
        Caps::check("n", n, caps.max_graph_vertices)?;
        Ok((0u64..1 << n)
            .map(|mask| (0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect::<Vec<bool>>())
            .find(|x| self.satisfied_by(x)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum Provenance {
    Bpf {
        #[serde(rename = "B", with = "serde_rational_matrix")]
        b: Vec<Vec<Rational>>,
        #[serde(with = "serde_rational_vec")]
        d: Vec<Rational>,
        n: usize,
    },
}

/// A linearised switching-point instance produced by a reduction, with the
/// source it was generated from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionBundle {
    #[serde(flatten)]
    pub instance: Instance,
    pub provenance: Provenance,
}

impl ReductionBundle {
    pub fn constraints(&self) -> SwitchConstraints {
        match &self.instance {
            Instance::Linearized { a, b, sigma, .. } => SwitchConstraints { a: a.clone(), b: b.clone(), sigma: *sigma },
            _ => unreachable!("reductions only emit linearized instances"),
        }
    }

    pub fn horizon(&self) -> &Rational {
        self.instance.horizon()
    }

    /// Same instance on a grid `factor` times finer.
    pub fn refined(&self, factor: usize) -> ReductionBundle {
        let mut out = self.clone();
        if let Instance::Linearized { cells, .. } = &mut out.instance {
            *cells *= factor;
        }
        out
    }
}

/// `T = n`, `σ = 2n`, `t_{2i−1} = i−1`, `i−1 ≤ t_{2i} ≤ i`, the ordering
/// rows, and `B` applied to `x_i = t_{2i} − (i−1)`.
pub fn bpf_to_uab(inst: &BpfInstance) -> Result<ReductionBundle> {
    inst.validate()?;
    let n = inst.vars();
    let sigma = 2 * n;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut row = |terms: &[(usize, i64)], rhs: Rational| {
        let mut coeffs = vec![Rational::zero(); sigma];
        for &(k, c) in terms {
            coeffs[k] = int(c);
        }
        a.push(coeffs);
        b.push(rhs);
    };
    for i in 1..=n {
        let (odd, even) = (2 * i - 2, 2 * i - 1);
        let base = from_usize(i - 1);
        row(&[(odd, 1)], base.clone());
        row(&[(odd, -1)], -base.clone());
        row(&[(even, -1)], -base.clone());
        row(&[(even, 1)], from_usize(i));
    }
    for k in 0..sigma - 1 {
        row(&[(k, 1), (k + 1, -1)], Rational::zero());
    }
    for (brow, dj) in inst.b.iter().zip(&inst.d) {
        let mut coeffs = vec![Rational::zero(); sigma];
        let mut rhs = dj.clone();
        for (i, bji) in brow.iter().enumerate() {
            coeffs[2 * i + 1] = bji.clone();
            rhs += bji * from_usize(i);
        }
        a.push(coeffs);
        b.push(rhs);
    }
    Ok(ReductionBundle {
        instance: Instance::Linearized { a, b, sigma, horizon: from_usize(n), cells: n, relaxed: true },
        provenance: Provenance::Bpf { b: inst.b.clone(), d: inst.d.clone(), n },
    })
}

/// Cell averages of `c(t) = ½ − (t − ⌊t⌋)` on `N = ℓn` cells over `[0, n]`.
pub fn sawtooth_objective(n: usize, ell: usize) -> Result<StepFunction> {
    if n == 0 || ell == 0 {
        return Err(Error::domain("sawtooth needs n, ℓ >= 1"));
    }
    let half = rat(1, 2);
    let period: Vec<Rational> =
        (1..=ell).map(|j| &half - from_usize(2 * j - 1) / from_usize(2 * ell)).collect();
    let values = std::iter::repeat_n(period, n).flatten().collect();
    StepFunction::new(from_usize(n), values)
}

/// `x_i = t_{2i} − (i−1)`, after checking the reduction's pattern.
fn induced_x(t: &[Rational]) -> Result<Vec<Rational>> {
    if t.is_empty() || !t.len().is_multiple_of(2) {
        return Err(Error::domain(format!("expected 2n switching points, got {}", t.len())));
    }
    t.chunks(2)
        .enumerate()
        .map(|(i, pair)| {
            let base = from_usize(i);
            if pair[0] != base {
                return Err(Error::domain(format!("t{} must equal {i}", 2 * i + 1)));
            }
            let x = &pair[1] - &base;
            if x.is_negative() || x > Rational::one() {
                return Err(Error::domain(format!("t{} must lie in [{i}, {}]", 2 * i + 2, i + 1)));
            }
            Ok(x)
        })
        .collect()
}

/// `½ Σ x_i (1 − x_i)` with `x_i = t_{2i} − (i−1)`.
pub fn switch_value_closed_form(t: &[Rational]) -> Result<Rational> {
    let half = rat(1, 2);
    Ok(induced_x(t)?.iter().fold(Rational::zero(), |acc, x| acc + &half * x * (Rational::one() - x)))
}

/// Switching points of a member of a BPF bundle on `N = ℓn` cells: each unit
/// interval must be a run of ones followed by zeros.
pub fn bpf_switch_points(u: &BinaryPattern, n: usize) -> Result<Vec<Rational>> {
    if n == 0 || !u.cells().is_multiple_of(n) {
        return Err(Error::GridMismatch(format!("{} cells are not a multiple of n = {n}", u.cells())));
    }
    let ell = u.cells() / n;
    let mut t = Vec::with_capacity(2 * n);
    for (i, unit) in u.bits().chunks(ell).enumerate() {
        let ones = unit.iter().take_while(|&&b| b).count();
        if unit[ones..].iter().any(|&b| b) {
            return Err(Error::domain(format!("pattern {u} is not of reduction form on [{i}, {}]", i + 1)));
        }
        t.push(from_usize(i));
        t.push(from_usize(i) + from_usize(ones) / from_usize(ell));
    }
    Ok(t)
}

/// `((T/N)·Σ c_k u_k, ½ Σ x(1−x))` for a member `u` of the bundle refined
/// to `N = ℓn`; the two agree exactly.
pub fn integral_identity_check(bundle: &ReductionBundle, u: &BinaryPattern, ell: usize) -> Result<(Rational, Rational)> {
    let n = match &bundle.provenance {
        Provenance::Bpf { n, .. } => *n,
    };
    if u.cells() != n * ell || u.horizon() != bundle.horizon() {
        return Err(Error::GridMismatch(format!("pattern does not live on the N = {} grid over [0, {n}]", n * ell)));
    }
    if !membership_uab(u, &bundle.constraints())? {
        return Err(Error::domain(format!("pattern {u} is not a member of the instance")));
    }
    let c = sawtooth_objective(n, ell)?;
    let integral = u
        .bits()
        .iter()
        .zip(c.values())
        .filter(|(b, _)| **b)
        .fold(Rational::zero(), |acc, (_, ck)| acc + ck)
        * c.cell_width();
    let closed = switch_value_closed_form(&bpf_switch_points(u, n)?)?;
    if integral != closed {
        return Err(Error::Verification(format!("sawtooth integral {integral} differs from closed form {closed}")));
    }
    Ok((integral, closed))
}

/// Undirected simple graph on labelled vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimpleGraph {
    labels: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
}

/// Wire form: `{"vertices": [...], "adj": {"v": ["w", ...]}}`. Listing an
/// edge from either endpoint is enough.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: Vec<String>,
    #[serde(default)]
    adj: BTreeMap<String, Vec<String>>,
}

impl Serialize for SimpleGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut adj: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for v in 0..self.labels.len() {
            adj.insert(self.labels[v].clone(), self.neighbors(v).map(|w| self.labels[w].clone()).collect());
        }
        GraphJson { vertices: self.labels.clone(), adj }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimpleGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = GraphJson::deserialize(d)?;
        let mut g = SimpleGraph::new(json.vertices).map_err(serde::de::Error::custom)?;
        for (v, ws) in &json.adj {
            for w in ws {
                g.add_edge_by_label(v, w).map_err(serde::de::Error::custom)?;
            }
        }
        Ok(g)
    }
}

impl SimpleGraph {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let unique: BTreeSet<&String> = labels.iter().collect();
        if unique.len() != labels.len() {
            return Err(Error::malformed("duplicate vertex label"));
        }
        Ok(SimpleGraph { labels, edges: BTreeSet::new() })
    }

    /// Vertices `0..n` labelled by their index.
    pub fn anonymous(n: usize) -> Self {
        SimpleGraph::new((0..n).map(|v| v.to_string())).expect("labels are distinct")
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SimpleGraph::anonymous(n);
        for &(v, w) in edges {
            g.add_edge(v, w)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, v: usize, w: usize) -> Result<()> {
        let n = self.labels.len();
        if v >= n || w >= n {
            return Err(Error::malformed(format!("edge ({v}, {w}) references a missing vertex")));
        }
        if v == w {
            return Err(Error::malformed(format!("loop at vertex {}", self.labels[v])));
        }
        self.edges.insert((v.min(w), v.max(w)));
        Ok(())
    }

    pub fn add_edge_by_label(&mut self, v: &str, w: &str) -> Result<()> {
        let find = |label: &str| {
            self.labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| Error::malformed(format!("unknown vertex {label:?}")))
        };
        let (v, w) = (find(v)?, find(w)?);
        self.add_edge(v, w)
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        SimpleGraph::from_edges(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = SimpleGraph::path(n);
        g.add_edge(n - 1, 0).expect("n >= 3");
        g
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|v| (v + 1..n).map(move |w| (v, w))).collect();
        SimpleGraph::from_edges(n, &edges).expect("valid clique")
    }

    /// Edge, path on three vertices, triangle, 4-cycle and `K4` minus an edge.
    pub fn desk_suite() -> Vec<(&'static str, SimpleGraph)> {
        vec![
            ("edge", SimpleGraph::path(2)),
            ("path3", SimpleGraph::path(3)),
            ("triangle", SimpleGraph::complete(3)),
            ("cycle4", SimpleGraph::cycle(4)),
            ("k4_minus_edge", SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()),
        ]
    }
}

/// Attach a triangle `v¹v²v³` with the edge `v v¹` to every vertex and set
/// `K = K'/γ + 2|V'|`. Only odd `γ` is accepted.
pub fn vc_gadget(g: &SimpleGraph, k_prime: usize, gamma: usize) -> Result<(SimpleGraph, Rational)> {
    if gamma.is_multiple_of(2) {
        return Err(Error::domain(format!("the gadget is stated for odd γ, got {gamma}")));
    }
    let n = g.num_vertices();
    let mut labels = g.labels().to_vec();
    for v in g.labels() {
        labels.extend((1..=3).map(|j| format!("{v}^{j}")));
    }
    let mut out = SimpleGraph::new(labels)?;
    for (v, w) in g.edges() {
        out.add_edge(v, w)?;
    }
    for v in 0..n {
        let t = n + 3 * v;
        for (a, b) in [(v, t), (t, t + 1), (t + 1, t + 2), (t + 2, t)] {
            out.add_edge(a, b)?;
        }
    }
    let k = from_usize(k_prime) / from_usize(gamma) + from_usize(2 * n);
    Ok((out, k))
}

/// Minimum of `Σ x_v` over `x ∈ {0, 1/γ, …, 1}^V` covering every edge,
/// with a minimiser. Exact branch and bound over integer levels `γ x_v`,
/// splitting into connected components and memoising subproblems.
pub fn min_gamma_cover(g: &SimpleGraph, gamma: usize, caps: &Caps) -> Result<(Rational, Vec<Rational>)> {
    if gamma == 0 {
        return Err(Error::domain("γ must be positive"));
    }
    let n = g.num_vertices();
    Caps::check("|V|", n, caps.max_graph_vertices.min(63))?;
    Caps::check("γ", gamma, caps.max_gamma)?;
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v).fold(0u64, |m, w| m | 1 << w)).collect();
    let mut solver = CoverSolver { adj, gamma, memo: HashMap::new() };
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let (total, levels) = solver.solve(full, &vec![0; n]);
    let mut x = vec![Rational::zero(); n];
    for (v, level) in levels {
        x[v] = from_usize(level) / from_usize(gamma);
    }
    Ok((from_usize(total) / from_usize(gamma), x))
}

struct CoverSolver {
    adj: Vec<u64>,
    gamma: usize,
    memo: HashMap<(u64, Vec<usize>), (usize, Vec<(usize, usize)>)>,
}

impl CoverSolver {
    fn component(&self, mask: u64, start: usize) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & mask & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen
    }

    /// `lower[v]` is the level forced on `v` by already fixed neighbours.
    fn solve(&mut self, mask: u64, lower: &[usize]) -> (usize, Vec<(usize, usize)>) {
        if mask == 0 {
            return (0, Vec::new());
        }
        let comp = self.component(mask, mask.trailing_zeros() as usize);
        if comp != mask {
            let (a, mut wa) = self.solve(comp, lower);
            let (b, wb) = self.solve(mask & !comp, lower);
            wa.extend(wb);
            return (a + b, wa);
        }
        let key_lower: Vec<usize> = bits(mask).map(|v| lower[v]).collect();
        let key = (mask, key_lower);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let v = bits(mask).max_by_key(|&v| ((self.adj[v] & mask).count_ones(), std::cmp::Reverse(v))).unwrap();
        let rest = mask & !(1 << v);
        let mut best: Option<(usize, Vec<(usize, usize)>)> = None;
        for level in lower[v]..=self.gamma {
            let mut next = lower.to_vec();
            for w in bits(self.adj[v] & rest) {
                next[w] = next[w].max(self.gamma - level);
            }
            let (sub, mut witness) = self.solve(rest, &next);
            let total = level + sub;
            if best.as_ref().is_none_or(|(b, _)| total < *b) {
                witness.push((v, level));
                best = Some((total, witness));
            }
        }
        let best = best.expect("level range is nonempty");
        self.memo.insert(key, best.clone());
        best
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// Whether a `1/γ`-grid fractional vertex cover of weight at most `K` exists.
pub fn brute_gamma_vc(g: &SimpleGraph, k: &Rational, gamma: usize, caps: &Caps) -> Result<bool> {
    Ok(min_gamma_cover(g, gamma, caps)?.0 <= *k)
}

/// Whether a vertex cover with at most `K'` vertices exists, by trying every
/// subset.
pub fn brute_vertex_cover(g: &SimpleGraph, k_prime: usize, caps: &Caps) -> Result<bool> {
    let n = g.num_vertices();
    Caps::check("|V|", n, caps.max_graph_vertices.min(30))?;
    let edges: Vec<u64> = g.edges().map(|(v, w)| 1u64 << v | 1u64 << w).collect();
    Ok((0u64..1 << n).any(|s| s.count_ones() as usize <= k_prime && edges.iter().all(|e| e & s != 0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enum_uab;

    fn caps() -> Caps {
        Caps::default()
    }

    fn bpf(b: &[&[i64]], d: &[i64]) -> BpfInstance {
        BpfInstance::new(b.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect(), d.iter().map(|&v| int(v)).collect())
            .unwrap()
    }

    fn members(bundle: &ReductionBundle, ell: usize) -> Vec<String> {
        let r = bundle.refined(ell);
        enum_uab(&r.constraints(), r.horizon(), r.instance.cells(), &caps())
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    #[test]
    fn bpf_examples() {
        assert!(members(&bpf_to_uab(&bpf(&[&[1]], &[-1])).unwrap(), 1).is_empty());
        assert_eq!(members(&bpf_to_uab(&bpf(&[&[1]], &[0])).unwrap(), 1), ["0"]);
        assert_eq!(members(&bpf_to_uab(&bpf(&[&[1, 1]], &[1])).unwrap(), 1), ["00", "01", "10"]);
    }

    #[test]
    fn bundle_shape() {
        let bundle = bpf_to_uab(&bpf(&[&[1, -2]], &[0])).unwrap();
        let cons = bundle.constraints();
        assert_eq!(cons.sigma, 4);
        assert_eq!(bundle.horizon(), &int(2));
        assert_eq!(bundle.instance.cells(), 2);
        assert!(crate::oracle::validate_uab(&cons, bundle.horizon()).unwrap());
        let text = serde_json::to_string(&bundle).unwrap();
        assert!(text.starts_with(r#"{"kind":"linearized""#));
        assert_eq!(serde_json::from_str::<ReductionBundle>(&text).unwrap(), bundle);
        assert_eq!(Instance::from_json(&text).unwrap(), bundle.instance);
    }

    #[test]
    fn bpf_validation() {
        assert!(BpfInstance::new(vec![vec![int(1)]], vec![]).is_err());
        assert!(BpfInstance::new(vec![], vec![]).is_err());
        assert!(BpfInstance::new(vec![vec![int(1)], vec![int(1), int(2)]], vec![int(0), int(0)]).is_err());
    }

    #[test]
    fn sawtooth_examples() {
        assert_eq!(sawtooth_objective(3, 1).unwrap().values(), &[int(0), int(0), int(0)]);
        assert_eq!(sawtooth_objective(1, 2).unwrap().values(), &[rat(1, 4), rat(-1, 4)]);
        assert_eq!(sawtooth_objective(2, 2).unwrap().values(), &[rat(1, 4), rat(-1, 4), rat(1, 4), rat(-1, 4)]);
        let c = sawtooth_objective(2, 5).unwrap();
        for unit in c.values().chunks(5) {
            assert!(unit.iter().fold(Rational::zero(), |a, v| a + v).is_zero());
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(switch_value_closed_form(&[int(0), int(1), int(1), int(1)]).unwrap(), int(0));
        assert_eq!(switch_value_closed_form(&[int(0), rat(1, 2)]).unwrap(), rat(1, 8));
        assert_eq!(switch_value_closed_form(&[int(0), rat(1, 2), int(1), rat(3, 2)]).unwrap(), rat(1, 4));
        assert!(switch_value_closed_form(&[int(1), int(1)]).is_err());
        assert!(switch_value_closed_form(&[int(0), int(2)]).is_err());
        assert!(switch_value_closed_form(&[int(0)]).is_err());
    }

    #[test]
    fn identity_examples() {
        let bundle = bpf_to_uab(&bpf(&[&[0]], &[0])).unwrap();
        let at = |label: &str| BinaryPattern::parse(int(1), label).unwrap();
        assert_eq!(integral_identity_check(&bundle, &at("00"), 2).unwrap(), (int(0), int(0)));
        assert_eq!(integral_identity_check(&bundle, &at("10"), 2).unwrap(), (rat(1, 8), rat(1, 8)));
        assert_eq!(integral_identity_check(&bundle, &at("11"), 2).unwrap(), (int(0), int(0)));
        assert!(integral_identity_check(&bundle, &at("01"), 2).is_err());
        let tight = bpf_to_uab(&bpf(&[&[1]], &[0])).unwrap();
        assert!(matches!(integral_identity_check(&tight, &at("10"), 2), Err(Error::Domain(_))));
    }

    #[test]
    fn gadget_examples() {
        let (g, k) = vc_gadget(&SimpleGraph::path(2), 1, 3).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges(), k.clone()), (8, 9, rat(13, 3)));
        let (value, x) = min_gamma_cover(&g, 3, &caps()).unwrap();
        assert_eq!(value, rat(13, 3));
        assert_eq!(x.iter().fold(Rational::zero(), |a, v| a + v), rat(13, 3));
        for (v, w) in g.edges() {
            assert!(&x[v] + &x[w] >= Rational::one());
        }
        assert!(brute_gamma_vc(&g, &k, 3, &caps()).unwrap());

        let (g, k) = vc_gadget(&SimpleGraph::anonymous(1), 0, 1).unwrap();
        assert_eq!(k, int(2));
        assert!(brute_gamma_vc(&g, &k, 1, &caps()).unwrap());

        let (_, k) = vc_gadget(&SimpleGraph::complete(3), 2, 3).unwrap();
        assert_eq!(k, rat(20, 3));
        assert!(matches!(vc_gadget(&SimpleGraph::path(2), 1, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn referee_examples() {
        let tri = SimpleGraph::complete(3);
        assert!(brute_gamma_vc(&tri, &rat(3, 2), 2, &caps()).unwrap());
        assert!(!brute_gamma_vc(&tri, &int(1), 1, &caps()).unwrap());
        assert!(brute_gamma_vc(&SimpleGraph::path(2), &int(1), 1, &caps()).unwrap());
        assert!(brute_vertex_cover(&SimpleGraph::path(3), 1, &caps()).unwrap());
        assert!(!brute_vertex_cover(&tri, 1, &caps()).unwrap());
        assert!(brute_vertex_cover(&SimpleGraph::cycle(4), 2, &caps()).unwrap());
        assert!(matches!(brute_vertex_cover(&SimpleGraph::anonymous(21), 0, &caps()), Err(Error::Capability(_))));
    }

    #[test]
    fn cover_search_matches_exhaustion() {
        // exhaustive enumeration of levels on small graphs
        for (_, g) in SimpleGraph::desk_suite() {
            for gamma in 1..=4 {
                let n = g.num_vertices();
                let mut best = usize::MAX;
                let mut levels = vec![0usize; n];
                loop {
                    if g.edges().all(|(v, w)| levels[v] + levels[w] >= gamma) {
                        best = best.min(levels.iter().sum());
                    }
                    let mut i = 0;
                    while i < n && levels[i] == gamma {
                        levels[i] = 0;
                        i += 1;
                    }
                    if i == n {
                        break;
                    }
                    levels[i] += 1;
                }
                assert_eq!(min_gamma_cover(&g, gamma, &caps()).unwrap().0, from_usize(best) / from_usize(gamma));
            }
        }
    }

    #[test]
    fn graph_json() {
        let g: SimpleGraph = serde_json::from_str(r#"{"vertices":["a","b","c"],"adj":{"a":["b"],"c":["b"]}}"#).unwrap();
        assert_eq!(g.num_edges(), 2);
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"vertices":["a","b","c"],"adj":{"a":["b"],"b":["a","c"],"c":["b"]}}"#);
        assert!(serde_json::from_str::<SimpleGraph>(r#"{"vertices":["a"],"adj":{"a":["a"]}}"#).is_err());
        assert!(serde_json::from_str::<SimpleGraph>(r#"{"vertices":["a"],"adj":{"a":["z"]}}"#).is_err());
        assert!(serde_json::from_str::<SimpleGraph>(r#"{"vertices":["a","a"]}"#).is_err());
    }
}
