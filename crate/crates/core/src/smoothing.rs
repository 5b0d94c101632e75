//! Smoothing data for immersed special Lagrangian configurations: the
//! dual graph of a component/intersection list, positive solutions of
//! the neck-matching linear system (the topological smoothing
//! criterion) computed exactly over the rationals, the residual of the
//! phase-weighted matching condition at a moduli point, the lift of an
//! attractor trajectory to neck scales, and first Betti numbers of the
//! glued manifold.
//!
//! Orientation conventions: an intersection point is stored as
//! `(tail, head)`, the tail component holding the positive end. The
//! incidence matrix has `+1` at the tail and `-1` at the head, so all
//! its columns sum to zero. The matching targets pair each component
//! class on the left of the intersection form, `c_j = <Gamma_j,
//! Gamma>`, which is the orientation the flow's linear evolution law
//! realizes.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
#[allow(unused_imports)]
use num_traits::Float; // float intrinsics on no_std builds

use num_complex::Complex64;

use crate::flow::Trajectory;
use crate::homology::{intersection, HomologyClass};
use crate::moduli::{central_charge, phase, ModuliError, ModuliPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothingError {
    /// An intersection references a missing component.
    DanglingEndpoint,
    /// The matching targets do not sum to zero or have the wrong
    /// length.
    MalformedTargets,
    /// The neck assignment does not solve the matching system.
    CriterionUnsatisfied,
    /// The trajectory does not start on the configuration's wall.
    NotAnchored,
    /// A central charge degenerated.
    Moduli(ModuliError),
}

impl fmt::Display for SmoothingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmoothingError::DanglingEndpoint => write!(f, "intersection endpoint out of range"),
            SmoothingError::MalformedTargets => {
                write!(f, "matching targets must sum to zero, one per component")
            }
            SmoothingError::CriterionUnsatisfied => {
                write!(f, "assignment does not solve the matching system")
            }
            SmoothingError::NotAnchored => {
                write!(f, "trajectory does not start on the configuration wall")
            }
            SmoothingError::Moduli(e) => write!(f, "degenerate moduli data: {e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SmoothingError {}

impl From<ModuliError> for SmoothingError {
    fn from(e: ModuliError) -> Self {
        SmoothingError::Moduli(e)
    }
}

/// One immersed component: a name, its homology class and its first
/// Betti number.
#[derive(Debug, Clone, PartialEq)]
pub struct SLComponent {
    pub label: String,
    pub class: HomologyClass,
    pub b1: usize,
}

/// A transverse intersection point; the tail component holds the
/// positive end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntersectionPoint {
    pub tail: usize,
    pub head: usize,
}

/// Components plus intersection points of an immersed configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SLConfiguration {
    pub components: Vec<SLComponent>,
    pub intersections: Vec<IntersectionPoint>,
}

/// Directed multigraph on the components, one edge per intersection.
#[derive(Debug, Clone, PartialEq)]
pub struct DualGraph {
    pub vertices: usize,
    /// `(tail, head)` per edge, in intersection order.
    pub edges: Vec<(usize, usize)>,
}

impl DualGraph {
    /// Incidence matrix, row-major `vertices x edges`: `+1` at the
    /// tail, `-1` at the head, `0` elsewhere; self-loop columns are
    /// zero.
    pub fn incidence(&self) -> Vec<i64> {
        let mut b = vec![0i64; self.vertices * self.edges.len()];
        for (e, &(tail, head)) in self.edges.iter().enumerate() {
            if tail != head {
                b[tail * self.edges.len() + e] = 1;
                b[head * self.edges.len() + e] = -1;
            }
        }
        b
    }

    /// Number of connected components, self-loops included, edges
    /// taken as undirected.
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(parent: &mut Vec<usize>, mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for &(tail, head) in &self.edges {
            let a = find(&mut parent, tail);
            let b = find(&mut parent, head);
            if a != b {
                parent[a] = b;
            }
        }
        (0..self.vertices)
            .filter(|&v| find(&mut parent, v) == v)
            .count()
    }
}

/// Positive neck sizes, one per edge of the dual graph.
#[derive(Debug, Clone, PartialEq)]
pub struct NeckAssignment {
    pub sizes: Vec<f64>,
}

/// Builds the dual graph of a configuration.
pub fn dual_graph(config: &SLConfiguration) -> Result<DualGraph, SmoothingError> {
    let n = config.components.len();
    let mut edges = Vec::with_capacity(config.intersections.len());
    for p in &config.intersections {
        if p.tail >= n || p.head >= n {
            return Err(SmoothingError::DanglingEndpoint);
        }
        edges.push((p.tail, p.head));
    }
    Ok(DualGraph { vertices: n, edges })
}

/// Matching targets of a configuration against a total class:
/// `c_j = <Gamma_j, Gamma>`.
pub fn pairing_targets(config: &SLConfiguration, class: &HomologyClass) -> Vec<i64> {
    config
        .components
        .iter()
        .map(|comp| intersection(&comp.class, class))
        .collect()
}

// --- exact linear programming over the rationals ---------------------

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Minimizes `obj . x` over `a x = b, x >= 0` (row-major `a`), exactly.
/// Bland's rule, artificial-variable start. Returns the optimum and an
/// optimal vertex, or `None` when the polyhedron is empty. All the
/// programs solved here are bounded below by zero.
fn simplex_min(
    rows: usize,
    cols: usize,
    a: &[BigRational],
    b: &[BigRational],
    obj: &[BigRational],
) -> Option<(BigRational, Vec<BigRational>)> {
    let width = cols + rows + 1; // variables, artificials, rhs
    let mut t = vec![BigRational::zero(); rows * width];
    for i in 0..rows {
        let flip = b[i].is_negative();
        for j in 0..cols {
            t[i * width + j] = if flip { -&a[i * cols + j] } else { a[i * cols + j].clone() };
        }
        t[i * width + cols + i] = rat(1);
        t[i * width + cols + rows] = if flip { -&b[i] } else { b[i].clone() };
    }
    let mut basis: Vec<usize> = (cols..cols + rows).collect();

    let pivot = |t: &mut Vec<BigRational>, basis: &mut Vec<usize>, row: usize, col: usize| {
        let div = t[row * width + col].clone();
        for j in 0..width {
            t[row * width + j] = &t[row * width + j] / &div;
        }
        for i in 0..rows {
            if i == row || t[i * width + col].is_zero() {
                continue;
            }
            let factor = t[i * width + col].clone();
            for j in 0..width {
                let sub = &factor * &t[row * width + j];
                t[i * width + j] = &t[i * width + j] - sub;
            }
        }
        basis[row] = col;
    };

    // runs Bland-rule iterations for the restricted cost vector; the
    // cost of column j is costs[j], columns >= costs.len() forbidden
    let optimize = |t: &mut Vec<BigRational>,
                    basis: &mut Vec<usize>,
                    costs: &[BigRational]| {
        loop {
            // reduced profit z_j - c_j of each admissible column
            let mut entering = None;
            for j in 0..costs.len() {
                if basis.contains(&j) {
                    continue;
                }
                let mut z = BigRational::zero();
                for i in 0..rows {
                    if basis[i] < costs.len() {
                        z += &costs[basis[i]] * &t[i * width + j];
                    }
                }
                if z - &costs[j] > BigRational::zero() {
                    entering = Some(j);
                    break; // smallest index: Bland's rule
                }
            }
            let Some(col) = entering else { break };
            let mut leaving: Option<(usize, BigRational)> = None;
            for i in 0..rows {
                if t[i * width + col] > BigRational::zero() {
                    let ratio = &t[i * width + cols + rows] / &t[i * width + col];
                    let better = match &leaving {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && basis[i] < basis[*li])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leaving else { return false }; // unbounded
            pivot(t, basis, row, col);
        }
        true
    };

    // phase 1: minimize the artificial sum
    let mut phase1_costs = vec![BigRational::zero(); cols + rows];
    for c in phase1_costs.iter_mut().skip(cols) {
        *c = rat(1);
    }
    if !optimize(&mut t, &mut basis, &phase1_costs) {
        return None;
    }
    let mut infeasibility = BigRational::zero();
    for i in 0..rows {
        if basis[i] >= cols {
            infeasibility += &t[i * width + cols + rows];
        }
    }
    if !infeasibility.is_zero() {
        return None;
    }
    // drive surviving artificials out of the basis where possible
    for i in 0..rows {
        if basis[i] >= cols {
            if let Some(col) = (0..cols).find(|&j| !t[i * width + j].is_zero()) {
                pivot(&mut t, &mut basis, i, col);
            }
        }
    }

    // phase 2 on the original columns; a basic artificial left over
    // sits at zero in a redundant row and never re-enters
    let phase2_costs: Vec<BigRational> = obj.to_vec();
    if !optimize(&mut t, &mut basis, &phase2_costs) {
        return None;
    }

    let mut x = vec![BigRational::zero(); cols];
    for i in 0..rows {
        if basis[i] < cols {
            x[basis[i]] = t[i * width + cols + rows].clone();
        }
    }
    let mut value = BigRational::zero();
    for j in 0..cols {
        value += &obj[j] * &x[j];
    }
    Some((value, x))
}

/// Exact solution of the matching system `B A = c` with all `A_e > 0`,
/// when one exists: among solutions maximizing the smallest entry
/// (capped at 1), the one of least total size. Returns `None` when the
/// open polyhedron is empty; for homogeneous targets the result is
/// rescaled to smallest entry exactly 1.
pub fn topological_criterion_solve_exact(
    g: &DualGraph,
    c: &[i64],
) -> Result<Option<Vec<BigRational>>, SmoothingError> {
    if c.len() != g.vertices || c.iter().sum::<i64>() != 0 {
        return Err(SmoothingError::MalformedTargets);
    }
    let n = g.edges.len();
    let v = g.vertices;
    if n == 0 {
        return Ok(if c.iter().all(|&x| x == 0) {
            Some(Vec::new())
        } else {
            None
        });
    }
    let b_mat = g.incidence();
    // row sums of the incidence matrix
    let degree: Vec<i64> = (0..v)
        .map(|j| (0..n).map(|e| b_mat[j * n + e]).sum())
        .collect();

    // substitute A = t 1 + s, t = 1 - r: maximize t = minimize r over
    // B s - d r = c - d with s, r >= 0
    let cols = n + 1;
    let mut a1 = vec![BigRational::zero(); v * cols];
    let mut b1 = vec![BigRational::zero(); v];
    for j in 0..v {
        for e in 0..n {
            a1[j * cols + e] = rat(b_mat[j * n + e]);
        }
        a1[j * cols + n] = rat(-degree[j]);
        b1[j] = rat(c[j] - degree[j]);
    }
    let mut obj1 = vec![BigRational::zero(); cols];
    obj1[n] = rat(1);
    let Some((r_star, _)) = simplex_min(v, cols, &a1, &b1, &obj1) else {
        return Ok(None);
    };
    let t_star = rat(1) - r_star;
    if t_star <= BigRational::zero() {
        return Ok(None);
    }

    // least total size at the optimal slack level: minimize sum s over
    // B s = c - t* d, s >= 0, then A = t* + s
    let mut a3 = vec![BigRational::zero(); v * n];
    let mut b3 = vec![BigRational::zero(); v];
    for j in 0..v {
        for e in 0..n {
            a3[j * n + e] = rat(b_mat[j * n + e]);
        }
        b3[j] = rat(c[j]) - rat(degree[j]) * &t_star;
    }
    let obj3 = vec![rat(1); n];
    let (_, s) = simplex_min(v, n, &a3, &b3, &obj3)
        .expect("slack system is feasible at the optimal level");
    let mut sizes: Vec<BigRational> = s.iter().map(|si| si + &t_star).collect();
    if c.iter().all(|&x| x == 0) {
        let smallest = sizes.iter().min().expect("at least one edge").clone();
        for a in sizes.iter_mut() {
            *a = &*a / &smallest;
        }
    }
    Ok(Some(sizes))
}

/// Floating-point view of [`topological_criterion_solve_exact`].
pub fn topological_criterion_solve(
    g: &DualGraph,
    c: &[i64],
) -> Result<Option<NeckAssignment>, SmoothingError> {
    let exact = topological_criterion_solve_exact(g, c)?;
    Ok(exact.map(|sizes| NeckAssignment {
        sizes: sizes
            .iter()
            .map(|r| r.to_f64().expect("solver outputs are modest rationals"))
            .collect(),
    }))
}

/// Per-component residual of the phase-weighted matching condition at
/// a moduli point: `Im(e^{-i alpha} Z_j) - t^3 (B A)_j`, with `alpha`
/// the phase of the total class there.
pub fn joyce_criterion_residual(
    point: &ModuliPoint,
    t: f64,
    assignment: &NeckAssignment,
    config: &SLConfiguration,
    class: &HomologyClass,
    vol_y: f64,
) -> Result<Vec<f64>, SmoothingError> {
    assert!(t >= 0.0);
    let g = dual_graph(config)?;
    let b = g.incidence();
    let n = g.edges.len();
    assert_eq!(assignment.sizes.len(), n);
    let alpha = phase(central_charge(point, class, vol_y))?;
    let rot = Complex64::from_polar(1.0, -alpha);
    let mut out = Vec::with_capacity(config.components.len());
    for (j, comp) in config.components.iter().enumerate() {
        let zj = central_charge(point, &comp.class, vol_y);
        let flow: f64 = (0..n)
            .map(|e| b[j * n + e] as f64 * assignment.sizes[e])
            .sum();
        out.push((rot * zj).im - t * t * t * flow);
    }
    Ok(out)
}

/// Whether `(s_dist, t)` lies in the admissible neighborhood with
/// profile `C t^{kappa + 3/2}` and scale cap `eps`.
pub fn admissible_check(s_dist: f64, t: f64, eps: f64, kappa: f64, c: f64) -> bool {
    debug_assert!(eps > 0.0 && eps < 1.0 && kappa > 1.0 && c > 0.0);
    t > 0.0 && t <= eps && s_dist <= c * t.powf(kappa + 1.5)
}

/// The lift of one trajectory node to a neck scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LiftOutcome {
    /// A neck scale exists; `within_profile` says whether
    /// `|mu - mu0| <= C t^{kappa + 3/2}` holds at this node.
    Lifted { t: f64, within_profile: bool },
    /// Below the anchor the cube would be negative: the configuration
    /// decays instead of smoothing.
    Decay,
}

#[derive(Debug, Clone)]
pub struct LiftPoint {
    pub mu: f64,
    pub outcome: LiftOutcome,
}

#[derive(Debug, Clone)]
pub struct LiftReport {
    pub points: Vec<LiftPoint>,
}

/// Lifts a wall-anchored trajectory to neck scales,
/// `t(mu) = (-4 vol_y mu tau(mu))^{1/3}`, for samples above the
/// anchor; samples below it are reported as decay. Requires the
/// assignment to solve the matching system for the configuration's
/// targets against the trajectory class, and the start point to lie on
/// the wall (all component phases aligned with the total phase).
pub fn lift_flow(
    traj: &Trajectory,
    config: &SLConfiguration,
    assignment: &NeckAssignment,
    kappa: f64,
    c_profile: f64,
) -> Result<LiftReport, SmoothingError> {
    assert!(kappa > 1.0 && c_profile > 0.0);
    let g = dual_graph(config)?;
    let n = g.edges.len();
    if assignment.sizes.len() != n {
        return Err(SmoothingError::CriterionUnsatisfied);
    }
    let b = g.incidence();
    let targets = pairing_targets(config, &traj.class);
    for j in 0..g.vertices {
        let flow: f64 = (0..n)
            .map(|e| b[j * n + e] as f64 * assignment.sizes[e])
            .sum();
        if (flow - targets[j] as f64).abs() > 1e-9 {
            return Err(SmoothingError::CriterionUnsatisfied);
        }
    }
    let start = traj.start();
    let rot = Complex64::from_polar(1.0, -start.alpha);
    for comp in &config.components {
        let zj = central_charge(&start.point, &comp.class, traj.vol_y);
        if (rot * zj).im.abs() > 1e-8 {
            return Err(SmoothingError::NotAnchored);
        }
    }

    let mut points = Vec::with_capacity(traj.samples.len());
    for s in &traj.samples {
        let outcome = if s.mu < traj.mu0 {
            LiftOutcome::Decay
        } else {
            let cube = -4.0 * traj.vol_y * s.mu * s.tau_of_mu;
            let t = cube.max(0.0).cbrt();
            LiftOutcome::Lifted {
                t,
                within_profile: (s.mu - traj.mu0).abs() <= c_profile * t.powf(kappa + 1.5),
            }
        };
        points.push(LiftPoint { mu: s.mu, outcome });
    }
    Ok(LiftReport { points })
}

/// Betti numbers `(b0, b1)` of the manifold glued along the graph:
/// components by union-find, and
/// `b1 = sum_v b1(v) + |E| - |V| + b0`.
pub fn connected_sum_betti(g: &DualGraph, b1_per_vertex: &[usize]) -> (usize, usize) {
    assert_eq!(b1_per_vertex.len(), g.vertices);
    let b0 = g.component_count();
    let vertex_sum: usize = b1_per_vertex.iter().sum();
    (b0, vertex_sum + g.edges.len() + b0 - g.vertices)
}

/// The same Betti numbers from the chain model: the boundary matrix of
/// the graph (one column per edge, `head - tail`) has
/// `b0 = |V| - rank` and the glued `b1` adds the vertex cycles to the
/// kernel dimension `|E| - rank`. Exact integer elimination; serves as
/// an independent cross-check of [`connected_sum_betti`].
pub fn boundary_rank_betti(g: &DualGraph, b1_per_vertex: &[usize]) -> (usize, usize) {
    assert_eq!(b1_per_vertex.len(), g.vertices);
    let v = g.vertices;
    let n = g.edges.len();
    let mut m = vec![0i128; v * n];
    for (e, &(tail, head)) in g.edges.iter().enumerate() {
        if tail != head {
            m[head * n + e] += 1;
            m[tail * n + e] -= 1;
        }
    }
    let rank = integer_rank(v, n, &mut m);
    let vertex_sum: usize = b1_per_vertex.iter().sum();
    (v - rank, vertex_sum + n - rank)
}

/// Rank by fraction-free row elimination; consumes the buffer.
fn integer_rank(rows: usize, cols: usize, m: &mut [i128]) -> usize {
    let mut rank = 0;
    let mut row = 0;
    let mut prev = 1i128;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| m[r * cols + col] != 0) else {
            continue;
        };
        if p != row {
            for j in 0..cols {
                m.swap(row * cols + j, p * cols + j);
            }
        }
        let pivot = m[row * cols + col];
        for r in row + 1..rows {
            let factor = m[r * cols + col];
            for j in 0..cols {
                m[r * cols + j] = (pivot * m[r * cols + j] - factor * m[row * cols + j]) / prev;
            }
        }
        prev = pivot;
        rank += 1;
        row += 1;
    }
    rank
}

/// Dimension of the unobstructed deformation space of a smoothed
/// configuration moving in a `d`-parameter family.
pub fn moduli_dimension(b1_n: usize, d: usize) -> usize {
    d + b1_n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{integrate, FlowState};
    use crate::necklace;
    use alloc::string::ToString;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn necklace_config() -> SLConfiguration {
        let classes = necklace::component_classes();
        SLConfiguration {
            components: classes
                .iter()
                .enumerate()
                .map(|(j, class)| SLComponent {
                    label: alloc::format!("L{}", j + 1),
                    class: class.clone(),
                    b1: 3,
                })
                .collect(),
            intersections: vec![
                IntersectionPoint { tail: 0, head: 1 },
                IntersectionPoint { tail: 1, head: 2 },
                IntersectionPoint { tail: 2, head: 0 },
            ],
        }
    }

    #[test]
    fn dual_graph_shapes() {
        let g = dual_graph(&necklace_config()).unwrap();
        assert_eq!(g.vertices, 3);
        assert_eq!(g.edges, vec![(0, 1), (1, 2), (2, 0)]);
        let b = g.incidence();
        for e in 0..3 {
            let col: i64 = (0..3).map(|j| b[j * 3 + e]).sum();
            assert_eq!(col, 0);
        }
        let loopy = SLConfiguration {
            components: vec![SLComponent {
                label: "only".to_string(),
                class: necklace::total_class(),
                b1: 3,
            }],
            intersections: vec![IntersectionPoint { tail: 0, head: 0 }],
        };
        let lg = dual_graph(&loopy).unwrap();
        assert_eq!(lg.incidence(), vec![0]);
        let dangling = SLConfiguration {
            components: loopy.components.clone(),
            intersections: vec![IntersectionPoint { tail: 0, head: 1 }],
        };
        assert_eq!(
            dual_graph(&dangling).unwrap_err(),
            SmoothingError::DanglingEndpoint
        );
    }

    #[test]
    fn necklace_matching_is_equal_necks() {
        let g = dual_graph(&necklace_config()).unwrap();
        let sol = topological_criterion_solve(&g, &[0, 0, 0]).unwrap().unwrap();
        assert_eq!(sol.sizes, vec![1.0, 1.0, 1.0]);
        let exact = topological_criterion_solve_exact(&g, &[0, 0, 0])
            .unwrap()
            .unwrap();
        for a in &exact {
            assert_eq!(*a, rat(1));
        }
    }

    #[test]
    fn acyclic_graphs_admit_no_positive_homogeneous_necks() {
        // a directed path: only the zero assignment balances
        let g = DualGraph {
            vertices: 3,
            edges: vec![(0, 1), (1, 2)],
        };
        assert!(topological_criterion_solve(&g, &[0, 0, 0]).unwrap().is_none());
        // brute-force confirmation on a positive grid
        let b = g.incidence();
        let mut found = false;
        for a0 in 1..=6 {
            for a1 in 1..=6 {
                let balanced = (0..3).all(|j| b[j * 2] * a0 + b[j * 2 + 1] * a1 == 0);
                found |= balanced;
            }
        }
        assert!(!found);
    }

    #[test]
    fn inhomogeneous_targets_are_met_exactly() {
        let g = DualGraph {
            vertices: 2,
            edges: vec![(0, 1)],
        };
        let sol = topological_criterion_solve(&g, &[2, -2]).unwrap().unwrap();
        assert_eq!(sol.sizes, vec![2.0]);
        // scaling the targets scales the assignment
        let four = topological_criterion_solve(&g, &[4, -4]).unwrap().unwrap();
        assert_eq!(four.sizes, vec![4.0]);
        // reversed sign is infeasible for a positive neck
        assert!(topological_criterion_solve(&g, &[-2, 2]).unwrap().is_none());
        // malformed inputs are rejected
        assert_eq!(
            topological_criterion_solve(&g, &[1, 0]).unwrap_err(),
            SmoothingError::MalformedTargets
        );
        let empty = DualGraph {
            vertices: 1,
            edges: vec![],
        };
        assert_eq!(
            topological_criterion_solve(&empty, &[0]).unwrap().unwrap().sizes,
            Vec::<f64>::new()
        );
    }

    #[test]
    fn exact_solutions_balance_the_incidence_exactly() {
        let mut rng = StdRng::seed_from_u64(211);
        for _ in 0..25 {
            let v = rng.gen_range(2..6);
            let n = rng.gen_range(1..8);
            let edges: Vec<(usize, usize)> = (0..n)
                .map(|_| (rng.gen_range(0..v), rng.gen_range(0..v)))
                .collect();
            let g = DualGraph { vertices: v, edges };
            // targets in the image lattice: push a random integer flow
            let flow: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..4)).collect();
            let b = g.incidence();
            let c: Vec<i64> = (0..v)
                .map(|j| (0..n).map(|e| b[j * n + e] * flow[e]).sum())
                .collect();
            if let Some(sizes) = topological_criterion_solve_exact(&g, &c).unwrap() {
                for j in 0..v {
                    let mut lhs = BigRational::zero();
                    for e in 0..n {
                        lhs += rat(b[j * n + e]) * &sizes[e];
                    }
                    assert_eq!(lhs, rat(c[j]), "row {j} of B A = c");
                    for a in &sizes {
                        assert!(*a > BigRational::zero());
                    }
                }
            }
        }
    }

    #[test]
    fn residual_vanishes_at_the_wall_and_reduces_off_it() {
        let config = necklace_config();
        let class = necklace::total_class();
        let assignment = NeckAssignment {
            sizes: vec![1.0, 1.0, 1.0],
        };
        let wall = necklace::symmetric_wall_point();
        let at_wall =
            joyce_criterion_residual(&wall, 0.0, &assignment, &config, &class, 1.0).unwrap();
        for r in &at_wall {
            assert!(r.abs() < 1e-14);
        }
        // off the wall with t = 0 the residual is the raw imaginary part
        let off = ModuliPoint::new([
            Complex64::new(0.4, 1.2),
            Complex64::new(-0.3, 0.9),
            Complex64::new(0.2, 1.5),
        ])
        .unwrap();
        let raw = joyce_criterion_residual(&off, 0.0, &assignment, &config, &class, 1.0).unwrap();
        let alpha = phase(central_charge(&off, &class, 1.0)).unwrap();
        let rot = Complex64::from_polar(1.0, -alpha);
        for (j, comp) in config.components.iter().enumerate() {
            let expect = (rot * central_charge(&off, &comp.class, 1.0)).im;
            assert!((raw[j] - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn lift_reports_decay_below_the_anchor_and_scales_above_it() {
        let config = necklace_config();
        let class = necklace::total_class();
        let wall = FlowState {
            mu: 1.0,
            point: necklace::generic_wall_point(1.3).unwrap(),
        };
        let assignment = NeckAssignment {
            sizes: vec![1.0, 1.0, 1.0],
        };
        let up = integrate(&wall, &class, 1.0, 1.4, 1e-3).unwrap();
        let report = lift_flow(&up, &config, &assignment, 1.2, 5.0).unwrap();
        assert_eq!(report.points.len(), up.samples.len());
        let mut previous = 0.0;
        for (p, s) in report.points.iter().zip(up.samples.iter()).skip(1) {
            match p.outcome {
                LiftOutcome::Lifted { t, within_profile } => {
                    assert!(t > previous, "neck scale grows with mu");
                    assert!(within_profile, "profile holds near the anchor");
                    // residual of the matching condition stays tiny
                    let res = joyce_criterion_residual(
                        &s.point, t, &assignment, &config, &class, 1.0,
                    )
                    .unwrap();
                    for r in &res {
                        assert!(r.abs() < 1e-6, "residual {r}");
                    }
                    previous = t;
                }
                LiftOutcome::Decay => panic!("no decay above the anchor"),
            }
        }
        let down = integrate(&wall, &class, 1.0, 0.8, 1e-2).unwrap();
        let refused = lift_flow(&down, &config, &assignment, 1.2, 5.0).unwrap();
        assert!(refused
            .points
            .iter()
            .skip(1)
            .all(|p| p.outcome == LiftOutcome::Decay));
        // an assignment failing the matching system is rejected
        let bad = NeckAssignment {
            sizes: vec![2.0, 1.0, 1.0],
        };
        assert_eq!(
            lift_flow(&up, &config, &bad, 1.2, 5.0).unwrap_err(),
            SmoothingError::CriterionUnsatisfied
        );
        // a trajectory anchored off the wall is rejected
        let off = FlowState {
            mu: 1.0,
            point: ModuliPoint::new([
                Complex64::new(0.4, 1.2),
                Complex64::new(-0.3, 0.9),
                Complex64::new(0.2, 1.5),
            ])
            .unwrap(),
        };
        let stray = integrate(&off, &class, 1.0, 1.1, 1e-2).unwrap();
        assert_eq!(
            lift_flow(&stray, &config, &assignment, 1.2, 5.0).unwrap_err(),
            SmoothingError::NotAnchored
        );
    }

    #[test]
    fn admissibility_is_a_literal_window() {
        assert!(admissible_check(0.0, 0.5, 0.5, 1.2, 2.0));
        let edge = 2.0 * 0.5f64.powf(1.2 + 1.5);
        assert!(admissible_check(edge, 0.5, 0.5, 1.2, 2.0));
        assert!(!admissible_check(2.0 * edge, 0.5, 0.5, 1.2, 2.0));
        assert!(!admissible_check(0.0, 0.6, 0.5, 1.2, 2.0));
        assert!(!admissible_check(0.0, 0.0, 0.5, 1.2, 2.0));
    }

    #[test]
    fn necklace_betti_numbers() {
        let g = dual_graph(&necklace_config()).unwrap();
        assert_eq!(connected_sum_betti(&g, &[3, 3, 3]), (1, 10));
        let apart = DualGraph {
            vertices: 3,
            edges: vec![],
        };
        assert_eq!(connected_sum_betti(&apart, &[3, 3, 3]), (3, 9));
    }

    #[test]
    fn cover_formula_instances() {
        // connected graphs with 3r edges on tori: b1 = 3r + 2|V| + 1
        for (r, v) in [(2usize, 3usize), (3, 5), (4, 12)] {
            let mut edges = Vec::new();
            for i in 0..v - 1 {
                edges.push((i, i + 1)); // spanning path keeps it connected
            }
            let mut k = 0;
            while edges.len() < 3 * r {
                edges.push((k % v, (k * 2 + 1) % v));
                k += 1;
            }
            let g = DualGraph { vertices: v, edges };
            let (b0, b1) = connected_sum_betti(&g, &vec![3; v]);
            assert_eq!(b0, 1);
            assert_eq!(b1, 3 * r + 2 * v + 1);
            assert_eq!(boundary_rank_betti(&g, &vec![3; v]), (b0, b1));
        }
    }

    #[test]
    fn betti_formula_matches_the_rank_oracle_on_random_graphs() {
        let mut rng = StdRng::seed_from_u64(223);
        for _ in 0..50 {
            let v = rng.gen_range(1..9);
            let n = rng.gen_range(0..13);
            let edges: Vec<(usize, usize)> = (0..n)
                .map(|_| (rng.gen_range(0..v), rng.gen_range(0..v)))
                .collect();
            let b1s: Vec<usize> = (0..v).map(|_| rng.gen_range(0..4)).collect();
            let g = DualGraph { vertices: v, edges };
            assert_eq!(
                connected_sum_betti(&g, &b1s),
                boundary_rank_betti(&g, &b1s),
                "graph {:?}",
                g.edges
            );
        }
    }

    #[test]
    fn dimension_is_additive() {
        assert_eq!(moduli_dimension(10, 3), 13);
        assert_eq!(moduli_dimension(10, 0), 10);
        assert_eq!(moduli_dimension(0, 7), 7);
    }
}
