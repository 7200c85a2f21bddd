//! Linear systems over subrings of ℚ.
//!
//! Two exact entry points:
//! * [`solve_over`] takes a dense matrix and works through the Smith normal form.
//! * [`solve_sparse`] takes a list of sparse equations (typically thousands of
//!   duplicated coefficient-matching rows), eliminates over ℚ, then intersects
//!   the rational solution set with `A^N` using saturated lattices.
//!
//! Both return the complete solution set over the ring.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{primitive_integer_vector, Lattice};
use crate::matrix::{IntMatrix, ScalarMatrix};
use crate::rings::{BaseRing, RingScalar};
use crate::snf::smith_normal_form;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Solution {
    NoSolution,
    /// `x0 + Σ a_i basis_i` with `a_i` in the ring.
    AffineSet { x0: Vec<RingScalar>, basis: Vec<Vec<RingScalar>> },
}

impl Solution {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Solution::AffineSet { .. })
    }
}

fn lcm_of_denominators<'a>(it: impl Iterator<Item = &'a RingScalar>) -> BigInt {
    it.fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()))
}

fn int_entry(x: &RingScalar, scale: &BigInt) -> BigInt {
    x.numer() * (scale / x.denom())
}

/// Solve `M x = b` with `x ∈ ring^N` via the Smith normal form.
pub fn solve_over(ring: &BaseRing, m: &ScalarMatrix, b: &[RingScalar]) -> Result<Solution> {
    if m.rows() != b.len() {
        return Err(Error::Dimension(format!("{}x{} system with right-hand side of length {}", m.rows(), m.cols(), b.len())));
    }
    let (r, n) = (m.rows(), m.cols());
    let mut mi = IntMatrix::zeros(r, n);
    let mut bi = Vec::with_capacity(r);
    for i in 0..r {
        let scale = lcm_of_denominators(m.row(i).iter().chain(std::iter::once(&b[i])));
        for j in 0..n {
            mi[(i, j)] = int_entry(&m[(i, j)], &scale);
        }
        bi.push(int_entry(&b[i], &scale));
    }
    let s = smith_normal_form(&mi);
    let rank = s.rank();
    let y = s.u.mul_vec(&bi)?;
    if y[rank..].iter().any(|v| !v.is_zero()) {
        return Ok(Solution::NoSolution);
    }
    let mut z = vec![RingScalar::zero(); n];
    for i in 0..rank {
        let zi = RingScalar::from_parts(y[i].clone(), s.d[(i, i)].clone())?;
        if !ring.contains(&zi) {
            return Ok(Solution::NoSolution);
        }
        z[i] = zi;
    }
    let v = s.v.to_scalar();
    let x0 = v.mul_vec(&z)?;
    let basis = (rank..n).map(|j| v.col(j)).collect();
    Ok(Solution::AffineSet { x0, basis })
}

/// Sparse equation `Σ coeffs · x = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub coeffs: Vec<(usize, RingScalar)>,
    pub rhs: RingScalar,
}

impl Equation {
    pub fn homogeneous(coeffs: Vec<(usize, RingScalar)>) -> Self {
        Equation { coeffs, rhs: RingScalar::zero() }
    }

    /// Primitive integer form with sorted columns and positive leading entry.
    fn normalized(mut self) -> Option<Equation> {
        self.coeffs.retain(|(_, c)| !c.is_zero());
        self.coeffs.sort_by_key(|(j, _)| *j);
        self.coeffs.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 = &a.1 + &b.1;
                true
            } else {
                false
            }
        });
        self.coeffs.retain(|(_, c)| !c.is_zero());
        if self.coeffs.is_empty() && self.rhs.is_zero() {
            return None;
        }
        let mut all: Vec<RingScalar> = self.coeffs.iter().map(|(_, c)| c.clone()).collect();
        all.push(self.rhs.clone());
        let prim = primitive_integer_vector(&all)?;
        let k = self.coeffs.len();
        let coeffs = self.coeffs.iter().zip(&prim[..k]).map(|((j, _), v)| (*j, RingScalar::from(v))).collect();
        Some(Equation { coeffs, rhs: RingScalar::from(&prim[k]) })
    }

    pub fn evaluate(&self, x: &[RingScalar]) -> RingScalar {
        let mut acc = RingScalar::zero();
        for (j, c) in &self.coeffs {
            acc += &(c * &x[*j]);
        }
        acc
    }
}

type SparseRow = Vec<(usize, RingScalar)>;

/// `a - f * b` for sorted sparse rows.
fn axpy(a: &SparseRow, f: &RingScalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(f * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rational solution set: particular point and kernel basis in RREF form.
struct RationalSolution {
    x: Vec<RingScalar>,
    kernel: Vec<Vec<RingScalar>>,
    free: Vec<usize>,
}

fn rational_solve(n: usize, eqs: Vec<Equation>) -> Option<RationalSolution> {
    // pivots[c] = (row with leading 1 at column c, rhs)
    let mut pivots: Vec<Option<(SparseRow, RingScalar)>> = vec![None; n];
    for eq in eqs {
        let mut row = eq.coeffs;
        let mut rhs = eq.rhs;
        loop {
            let Some(&(c, ref lead)) = row.first() else {
                if !rhs.is_zero() {
                    return None;
                }
                break;
            };
            match &pivots[c] {
                Some((prow, prhs)) => {
                    let f = lead.clone();
                    row = axpy(&row, &f, prow);
                    rhs = &rhs - &(&f * prhs);
                }
                None => {
                    let inv = lead.recip().expect("nonzero");
                    let row: SparseRow = row.into_iter().map(|(j, v)| (j, &v * &inv)).collect();
                    pivots[c] = Some((row, &rhs * &inv));
                    break;
                }
            }
        }
    }
    // back substitution to reduced form, last pivot first
    for c in (0..n).rev() {
        let Some((mut row, mut rhs)) = pivots[c].take() else { continue };
        loop {
            let next = row.iter().skip(1).find(|(j, _)| pivots[*j].is_some()).map(|(j, v)| (*j, v.clone()));
            let Some((j, f)) = next else { break };
            let (prow, prhs) = pivots[j].as_ref().expect("pivot");
            row = axpy(&row, &f, prow);
            rhs = &rhs - &(&f * prhs);
        }
        pivots[c] = Some((row, rhs));
    }
    let free: Vec<usize> = (0..n).filter(|&j| pivots[j].is_none()).collect();
    let mut x = vec![RingScalar::zero(); n];
    for c in 0..n {
        if let Some((_, rhs)) = &pivots[c] {
            x[c] = rhs.clone();
        }
    }
    let kernel = free
        .iter()
        .map(|&f| {
            let mut k = vec![RingScalar::zero(); n];
            k[f] = RingScalar::one();
            for c in 0..n {
                if let Some((row, _)) = &pivots[c] {
                    if let Ok(pos) = row.binary_search_by_key(&f, |(j, _)| *j) {
                        k[c] = -row[pos].1.clone();
                    }
                }
            }
            k
        })
        .collect();
    Some(RationalSolution { x, kernel, free })
}

fn extended_gcd_list(vals: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(vals.len());
    for v in vals {
        let e = g.extended_gcd(v);
        for c in coeffs.iter_mut() {
            *c *= &e.x;
        }
        coeffs.push(e.y);
        g = e.gcd;
    }
    if g.is_negative() {
        g = -g;
        for c in coeffs.iter_mut() {
            *c = -&*c;
        }
    }
    (g, coeffs)
}

fn to_scalars(v: &[BigInt]) -> Vec<RingScalar> {
    v.iter().map(RingScalar::from).collect()
}

/// Intersect the rational affine set `x + span(kernel)` with `ring^N`.
fn restrict_to_ring(ring: &BaseRing, n: usize, sol: RationalSolution) -> Result<Solution> {
    let kernel_ints: Vec<Vec<BigInt>> = sol.kernel.iter().filter_map(|k| primitive_integer_vector(k)).collect();
    let h = Lattice::new(n, kernel_ints.clone())?.saturate();
    let basis: Vec<Vec<RingScalar>> = h.basis().iter().map(|b| to_scalars(b)).collect();
    let Some(xp) = primitive_integer_vector(&sol.x) else {
        return Ok(Solution::AffineSet { x0: sol.x, basis });
    };
    if ring.is_field() || sol.x.iter().all(|v| ring.contains(v)) {
        return Ok(Solution::AffineSet { x0: sol.x, basis });
    }
    // L = ℤ^N ∩ span(kernel, x); affine points are v ∈ A·L with φ(v) = 1,
    // where φ is the x-coordinate.
    let mut gens = kernel_ints;
    gens.push(xp);
    let l = Lattice::new(n, gens)?.saturate();
    let c = sol.x.iter().position(|v| !v.is_zero()).expect("nonzero x");
    let phi = |v: &[BigInt]| -> RingScalar {
        // subtract the kernel part (determined by the free coordinates)
        let mut at_c = RingScalar::from(&v[c]);
        for (k, &f) in sol.kernel.iter().zip(&sol.free) {
            if !v[f].is_zero() {
                at_c -= &(&RingScalar::from(&v[f]) * &k[c]);
            }
        }
        &at_c / &sol.x[c]
    };
    let ts: Vec<RingScalar> = l.basis().iter().map(|b| phi(b)).collect();
    let den = lcm_of_denominators(ts.iter());
    let nums: Vec<BigInt> = ts.iter().map(|t| int_entry(t, &den)).collect();
    let (g, us) = extended_gcd_list(&nums);
    if g.is_zero() {
        return Err(Error::Internal("affine functional vanishes on its own lattice".into()));
    }
    let gq = RingScalar::from_parts(g, den)?;
    let inv = gq.recip().expect("nonzero");
    if !ring.contains(&inv) {
        return Ok(Solution::NoSolution);
    }
    let mut x0 = vec![RingScalar::zero(); n];
    for (u, b) in us.iter().zip(l.basis()) {
        if u.is_zero() {
            continue;
        }
        for (xi, bi) in x0.iter_mut().zip(b) {
            *xi += &RingScalar::from(u * bi);
        }
    }
    let x0 = x0.iter().map(|v| v * &inv).collect();
    Ok(Solution::AffineSet { x0, basis })
}

/// Solve a sparse system in `n` unknowns over `ring`. Duplicate equations
/// (up to scaling) are dropped before elimination.
pub fn solve_sparse(ring: &BaseRing, n: usize, eqs: impl IntoIterator<Item = Equation>) -> Result<Solution> {
    let mut seen = HashSet::new();
    let mut unique = Vec::new();
    for eq in eqs {
        if let Some((j, _)) = eq.coeffs.iter().find(|(j, _)| *j >= n) {
            return Err(Error::Dimension(format!("equation references unknown {j} of {n}")));
        }
        if let Some(e) = eq.normalized() {
            if seen.insert(e.clone()) {
                unique.push(e);
            }
        }
    }
    let Some(sol) = rational_solve(n, unique) else {
        return Ok(Solution::NoSolution);
    };
    restrict_to_ring(ring, n, sol)
}

/// Dense convenience wrapper over [`solve_sparse`].
pub fn solve_dense_sparse(ring: &BaseRing, m: &ScalarMatrix, b: &[RingScalar]) -> Result<Solution> {
    if m.rows() != b.len() {
        return Err(Error::Dimension(format!("{} rows vs right-hand side {}", m.rows(), b.len())));
    }
    let eqs = (0..m.rows()).map(|i| Equation {
        coeffs: m.row(i).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect(),
        rhs: b[i].clone(),
    });
    solve_sparse(ring, m.cols(), eqs)
}

/// Check that `x` solves `M x = b` and lies in `ring^N`.
pub fn is_solution(ring: &BaseRing, m: &ScalarMatrix, b: &[RingScalar], x: &[RingScalar]) -> bool {
    x.iter().all(|v| ring.contains(v)) && m.mul_vec(x).map(|mx| mx == b).unwrap_or(false)
}
