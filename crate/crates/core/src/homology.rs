//! The middle homology lattice of a product of three two-tori.
//!
//! Third homology of the sixfold splits over the factors: a basis cycle
//! is a product of one cycle from each factor with total degree three.
//! That gives eight products of three one-cycles (shape `(1,1,1)`) and
//! twelve cycles using a full factor and a point (shapes permuting
//! `(2,1,0)`), twenty in all.
//!
//! Canonical order: the `(1,1,1)` cycles come first, indexed by reading
//! `(g1, g2, g3)` as a binary number with `alpha -> 0`, `beta -> 1` and
//! `g1` as the most significant digit; the `(2,1,0)` cycles follow,
//! sorted by their degree triple lexicographically and then `alpha`
//! before `beta` in the degree-one slot.
//!
//! The intersection form pairs per-factor intersections with a sign
//! from reordering the product frames; the per-factor conventions are
//! `<alpha, beta> = +1` and `<torus, point> = <point, torus> = +1`, and
//! the reordering sign is derived below, not chosen. Orientations of
//! basis cycles are the product orientations of their factors, with the
//! ambient orientation induced by the complex structure.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

/// Generators of first homology of a single torus factor: `Alpha` is
/// the unit horizontal cycle, `Beta` the cycle along the modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OneCycle {
    Alpha,
    Beta,
}

/// A cycle in one torus factor, graded by dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorCycle {
    /// A positively oriented point (degree 0).
    Point,
    /// A one-cycle (degree 1).
    One(OneCycle),
    /// The full factor with its complex orientation (degree 2).
    Torus,
}

impl FactorCycle {
    pub fn degree(self) -> usize {
        match self {
            FactorCycle::Point => 0,
            FactorCycle::One(_) => 1,
            FactorCycle::Torus => 2,
        }
    }
}

/// A product basis cycle of total degree three.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KunnethCycle {
    pub factors: [FactorCycle; 3],
}

impl KunnethCycle {
    pub fn shape(&self) -> [usize; 3] {
        [
            self.factors[0].degree(),
            self.factors[1].degree(),
            self.factors[2].degree(),
        ]
    }
}

/// Rank of the middle homology lattice.
pub const BASIS_RANK: usize = 20;

use FactorCycle::{One, Point, Torus};
use OneCycle::{Alpha, Beta};

const fn prod(a: FactorCycle, b: FactorCycle, c: FactorCycle) -> KunnethCycle {
    KunnethCycle { factors: [a, b, c] }
}

/// The canonical ordered basis described in the module docs.
pub const BASIS: [KunnethCycle; BASIS_RANK] = [
    prod(One(Alpha), One(Alpha), One(Alpha)),
    prod(One(Alpha), One(Alpha), One(Beta)),
    prod(One(Alpha), One(Beta), One(Alpha)),
    prod(One(Alpha), One(Beta), One(Beta)),
    prod(One(Beta), One(Alpha), One(Alpha)),
    prod(One(Beta), One(Alpha), One(Beta)),
    prod(One(Beta), One(Beta), One(Alpha)),
    prod(One(Beta), One(Beta), One(Beta)),
    prod(Point, One(Alpha), Torus),
    prod(Point, One(Beta), Torus),
    prod(Point, Torus, One(Alpha)),
    prod(Point, Torus, One(Beta)),
    prod(One(Alpha), Point, Torus),
    prod(One(Beta), Point, Torus),
    prod(One(Alpha), Torus, Point),
    prod(One(Beta), Torus, Point),
    prod(Torus, Point, One(Alpha)),
    prod(Torus, Point, One(Beta)),
    prod(Torus, One(Alpha), Point),
    prod(Torus, One(Beta), Point),
];

/// Index of a cycle in the canonical basis.
pub fn basis_index(c: &KunnethCycle) -> Option<usize> {
    BASIS.iter().position(|b| b == c)
}

/// An integral class, stored as coefficients over the canonical basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomologyClass {
    pub coeffs: [i64; BASIS_RANK],
}

impl HomologyClass {
    pub const ZERO: HomologyClass = HomologyClass {
        coeffs: [0; BASIS_RANK],
    };

    pub fn from_basis(index: usize, n: i64) -> Self {
        let mut coeffs = [0; BASIS_RANK];
        coeffs[index] = n;
        HomologyClass { coeffs }
    }

    pub fn from_cycle(c: &KunnethCycle) -> Self {
        Self::from_basis(basis_index(c).expect("cycle not in canonical basis"), 1)
    }

    /// Expands a product of factor one-cycles `(c_i alpha + d_i beta)`
    /// into basis coefficients; the result lives in the `(1,1,1)` block.
    pub fn one_cycle_product(f: [(i64, i64); 3]) -> Self {
        let mut coeffs = [0; BASIS_RANK];
        for bits in 0..8usize {
            let mut n = 1i64;
            for (i, fi) in f.iter().enumerate() {
                let take_beta = (bits >> (2 - i)) & 1 == 1;
                n *= if take_beta { fi.1 } else { fi.0 };
            }
            coeffs[bits] = n;
        }
        HomologyClass { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&n| n == 0)
    }
}

impl Add for HomologyClass {
    type Output = HomologyClass;
    fn add(self, rhs: HomologyClass) -> HomologyClass {
        let mut coeffs = [0; BASIS_RANK];
        for k in 0..BASIS_RANK {
            coeffs[k] = self.coeffs[k] + rhs.coeffs[k];
        }
        HomologyClass { coeffs }
    }
}

impl Sub for HomologyClass {
    type Output = HomologyClass;
    fn sub(self, rhs: HomologyClass) -> HomologyClass {
        let mut coeffs = [0; BASIS_RANK];
        for k in 0..BASIS_RANK {
            coeffs[k] = self.coeffs[k] - rhs.coeffs[k];
        }
        HomologyClass { coeffs }
    }
}

impl Neg for HomologyClass {
    type Output = HomologyClass;
    fn neg(self) -> HomologyClass {
        let mut coeffs = [0; BASIS_RANK];
        for k in 0..BASIS_RANK {
            coeffs[k] = -self.coeffs[k];
        }
        HomologyClass { coeffs }
    }
}

impl Mul<i64> for HomologyClass {
    type Output = HomologyClass;
    fn mul(self, rhs: i64) -> HomologyClass {
        let mut coeffs = [0; BASIS_RANK];
        for k in 0..BASIS_RANK {
            coeffs[k] = self.coeffs[k] * rhs;
        }
        HomologyClass { coeffs }
    }
}

/// Intersection number of two factor cycles inside one torus, with the
/// conventions from the module docs. Zero unless the degrees are
/// complementary.
fn factor_pairing(c: FactorCycle, d: FactorCycle) -> i64 {
    match (c, d) {
        (One(Alpha), One(Beta)) => 1,
        (One(Beta), One(Alpha)) => -1,
        (Torus, Point) | (Point, Torus) => 1,
        _ => 0,
    }
}

/// Sign from interleaving the two product frames `(c1, c2, c3, d1, d2,
/// d3) -> (c1, d1, c2, d2, c3, d3)`: each `d_i` moves left past the
/// later `c_j`, contributing `deg(d_i) * (deg(c_{i+1}) + ... )`
/// transpositions.
fn koszul_sign(c: &KunnethCycle, d: &KunnethCycle) -> i64 {
    let a = c.shape();
    let b = d.shape();
    let swaps = b[0] * (a[1] + a[2]) + b[1] * a[2];
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Intersection number of two basis cycles.
pub fn intersection_cycles(c: &KunnethCycle, d: &KunnethCycle) -> i64 {
    let mut n = koszul_sign(c, d);
    for i in 0..3 {
        n *= factor_pairing(c.factors[i], d.factors[i]);
    }
    n
}

/// The full intersection matrix `Q` over the canonical basis.
pub fn intersection_matrix() -> [[i64; BASIS_RANK]; BASIS_RANK] {
    let mut q = [[0; BASIS_RANK]; BASIS_RANK];
    for (i, c) in BASIS.iter().enumerate() {
        for (j, d) in BASIS.iter().enumerate() {
            q[i][j] = intersection_cycles(c, d);
        }
    }
    q
}

/// Intersection number of two classes.
pub fn intersection(a: &HomologyClass, b: &HomologyClass) -> i64 {
    let mut n = 0;
    for (i, c) in BASIS.iter().enumerate() {
        if a.coeffs[i] == 0 {
            continue;
        }
        for (j, d) in BASIS.iter().enumerate() {
            if b.coeffs[j] == 0 {
                continue;
            }
            n += a.coeffs[i] * b.coeffs[j] * intersection_cycles(c, d);
        }
    }
    n
}

/// Pairing vector of a class: entry `b` is the intersection of `gamma`
/// with the `b`-th basis cycle. These are the periods of the dual
/// three-form of `gamma` over the basis.
pub fn pairing_vector(gamma: &HomologyClass) -> [i64; BASIS_RANK] {
    let mut v = [0; BASIS_RANK];
    for (j, d) in BASIS.iter().enumerate() {
        let mut s = 0;
        for (i, c) in BASIS.iter().enumerate() {
            if gamma.coeffs[i] != 0 {
                s += gamma.coeffs[i] * intersection_cycles(c, d);
            }
        }
        v[j] = s;
    }
    v
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
/// Used to certify unimodularity of the intersection form.
pub fn bareiss_det(n: usize, a: &[i64]) -> i128 {
    assert_eq!(a.len(), n * n);
    let mut m: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k * n + k] == 0 {
            let swap = (k + 1..n).find(|&r| m[r * n + k] != 0);
            match swap {
                Some(r) => {
                    for c in 0..n {
                        m.swap(k * n + c, r * n + c);
                    }
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
            }
            m[i * n + k] = 0;
        }
        prev = m[k * n + k];
    }
    sign * m[(n - 1) * n + (n - 1)]
}
