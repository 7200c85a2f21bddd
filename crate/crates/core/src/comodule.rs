//! Comodules of finite rank over R, stored as structure matrices.
//!
//! Convention: for a right-coefficient comodule `Δ(e_i) = Σ_j M[i][j] ⊗ e_j`,
//! for a left-coefficient one `Δ(e_i) = Σ_j e_j ⊗ M[i][j]`. The side and the
//! Hopf variant together decide which matrix identity expresses
//! coassociativity; see [`Comodule::effective_variant`].

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopf::{HopfPoly, HopfVariant, Mono, TensorPoly};
use crate::lattice::Lattice;
use crate::matrix::{Matrix, ScalarMatrix};
use crate::par;
use crate::rings::{BaseRing, RingScalar};

pub type PolyMatrix = Matrix<HopfPoly>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// `Δ: V → R ⊗ V`
    Right,
    /// `Δ: V → V ⊗ R`
    Left,
}

impl Side {
    pub fn flipped(self) -> Self {
        match self {
            Side::Right => Side::Left,
            Side::Left => Side::Right,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Comodule {
    pub ring: BaseRing,
    pub side: Side,
    pub variant: HopfVariant,
    pub matrix: PolyMatrix,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomWitness {
    pub axiom: String,
    pub row: usize,
    pub col: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComoduleReport {
    pub passed: bool,
    pub rank: usize,
    pub failure: Option<AxiomWitness>,
}

impl Comodule {
    /// Build and run the axiom gate.
    pub fn new(ring: BaseRing, side: Side, variant: HopfVariant, matrix: PolyMatrix, labels: Vec<String>) -> Result<Self> {
        let c = Self::new_unchecked(ring, side, variant, matrix, labels)?;
        let r = c.verify();
        match r.failure {
            None => Ok(c),
            Some(w) => Err(Error::AxiomFailure(format!("{} at ({}, {}): {}", w.axiom, w.row, w.col, w.detail))),
        }
    }

    /// Build without checking the comodule axioms (shapes are still checked).
    pub fn new_unchecked(
        ring: BaseRing,
        side: Side,
        variant: HopfVariant,
        matrix: PolyMatrix,
        labels: Vec<String>,
    ) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::Dimension(format!("structure matrix is {}x{}", matrix.rows(), matrix.cols())));
        }
        if labels.len() != matrix.rows() {
            return Err(Error::Dimension(format!("{} labels for rank {}", labels.len(), matrix.rows())));
        }
        Ok(Comodule { ring, side, variant, matrix, labels })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn entry(&self, i: usize, j: usize) -> &HopfPoly {
        &self.matrix[(i, j)]
    }

    /// Standard: `Δ(M_ik) = Σ_j M_ij ⊗ M_jk`. Opposite: the same with `σΔ`.
    /// A left-coefficient comodule over R behaves like a right one over R^op.
    pub fn effective_variant(&self) -> HopfVariant {
        match self.side {
            Side::Right => self.variant,
            Side::Left => self.variant.flipped(),
        }
    }

    pub fn same_tags(&self, other: &Comodule) -> bool {
        self.ring == other.ring && self.side == other.side && self.variant == other.variant
    }

    pub fn check_compatible(&self, other: &Comodule) -> Result<()> {
        if !self.same_tags(other) {
            return Err(Error::Incompatible(format!(
                "({}, {:?}, {:?}) vs ({}, {:?}, {:?})",
                self.ring, self.side, self.variant, other.ring, other.side, other.variant
            )));
        }
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.rank() {
            return Err(Error::Dimension(format!("{} labels for rank {}", labels.len(), self.rank())));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Check coassociativity, the counit law and coefficient membership.
    pub fn verify(&self) -> ComoduleReport {
        let n = self.rank();
        let m = &self.matrix;
        let variant = self.effective_variant();
        let failure = par::find_first(n * n, |idx| {
            let (i, k) = (idx / n, idx % n);
            let p = &m[(i, k)];
            if !p.coefficients_in(&self.ring) {
                return Some(AxiomWitness {
                    axiom: "coefficients".into(),
                    row: i,
                    col: k,
                    detail: format!("entry {p} is not defined over {}", self.ring),
                });
            }
            let expect = if i == k { RingScalar::one() } else { RingScalar::zero() };
            if p.counit() != expect {
                return Some(AxiomWitness {
                    axiom: "counit".into(),
                    row: i,
                    col: k,
                    detail: format!("ε({p}) = {} (expected {expect})", p.counit()),
                });
            }
            let lhs = p.comultiply(variant);
            let mut rhs = TensorPoly::zero();
            for j in 0..n {
                rhs.add_product(&m[(i, j)], &m[(j, k)]);
            }
            if lhs != rhs {
                let diff = &lhs - &rhs;
                let first = diff.terms().next().map(|((a, b), c)| format!("{c}·({a} ⊗ {b})")).unwrap_or_default();
                return Some(AxiomWitness {
                    axiom: "coassociativity".into(),
                    row: i,
                    col: k,
                    detail: format!("Δ(M[{i}][{k}]) − Σ_j M[{i}][j] ⊗ M[j][{k}] has term {first}"),
                });
            }
            None
        })
        .map(|(_, w)| w);
        ComoduleReport { passed: failure.is_none(), rank: n, failure }
    }
}

impl fmt::Debug for Comodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Comodule(rank {}, {}, {:?}, {:?})", self.rank(), self.ring, self.side, self.variant)?;
        for i in 0..self.rank() {
            let row: Vec<String> = (0..self.rank()).map(|j| self.matrix[(i, j)].to_string()).collect();
            writeln!(f, "  {}: [{}]", self.labels[i], row.join(", "))?;
        }
        Ok(())
    }
}

fn std_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

/// The rank-2 standard comodule. Right side: matrix `[[x11, x12], [x21, x22]]`;
/// left side: its transpose, i.e. `Δ(e_i) = Σ_j e_j ⊗ x_ji`.
pub fn standard(ring: BaseRing, side: Side) -> Comodule {
    let m = match side {
        Side::Right => Matrix::from_fn(2, 2, HopfPoly::x),
        Side::Left => Matrix::from_fn(2, 2, |i, j| HopfPoly::x(j, i)),
    };
    Comodule::new_unchecked(ring, side, HopfVariant::Standard, m, std_labels(2)).expect("shape")
}

/// Rank-1 comodule with `Δ(v) = 1 ⊗ v`.
pub fn trivial(ring: BaseRing, side: Side, variant: HopfVariant) -> Comodule {
    Comodule::new_unchecked(ring, side, variant, PolyMatrix::identity(1), vec!["1".into()]).expect("shape")
}

pub fn tensor(c1: &Comodule, c2: &Comodule) -> Result<Comodule> {
    c1.check_compatible(c2)?;
    let (n1, n2) = (c1.rank(), c2.rank());
    let n = n1 * n2;
    let entries = par::map_range(n * n, |idx| {
        let (r, s) = (idx / n, idx % n);
        &c1.matrix[(r / n2, s / n2)] * &c2.matrix[(r % n2, s % n2)]
    });
    let m = PolyMatrix::from_rows(entries.chunks(n.max(1)).map(|r| r.to_vec()).collect(), n)?;
    let m = if n == 0 { PolyMatrix::zeros(0, 0) } else { m };
    let labels = c1.labels.iter().flat_map(|a| c2.labels.iter().map(move |b| format!("{a}⊗{b}"))).collect();
    Comodule::new_unchecked(c1.ring, c1.side, c1.variant, m, labels)
}

pub fn direct_sum(c1: &Comodule, c2: &Comodule) -> Result<Comodule> {
    c1.check_compatible(c2)?;
    let m = PolyMatrix::block_diag(&[&c1.matrix, &c2.matrix]);
    let labels = c1.labels.iter().cloned().chain(c2.labels.iter().cloned()).collect();
    Comodule::new_unchecked(c1.ring, c1.side, c1.variant, m, labels)
}

/// Exponent vectors of total degree `n` in `r` variables, descending lex.
pub fn exponent_vectors(r: usize, n: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in exponent_vectors(r - 1, n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn monomial_label(labels: &[String], e: &[u32]) -> String {
    let parts: Vec<String> = labels
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(l, &k)| if k == 1 { l.clone() } else { format!("{l}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("·")
    }
}

/// `n`-th symmetric power of `c`, in the monomial basis ordered descending lex.
/// For the standard comodule the basis is `v_i = e1^{n−i} e2^i`.
pub fn sym_power_of(c: &Comodule, n: u32) -> Comodule {
    let r = c.rank();
    let basis = exponent_vectors(r, n);
    let index: HashMap<Vec<u32>, usize> = basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let rows = par::map_slice(&basis, |alpha| {
        // expand Π_k (Σ_j M[k][j] e_j)^{α_k}
        let mut acc: HashMap<Vec<u32>, HopfPoly> = HashMap::from([(vec![0; r], HopfPoly::one())]);
        for (k, &ak) in alpha.iter().enumerate() {
            for _ in 0..ak {
                let mut next: HashMap<Vec<u32>, HopfPoly> = HashMap::new();
                for (e, p) in &acc {
                    for j in 0..r {
                        let q = &c.matrix[(k, j)];
                        if q.is_zero() {
                            continue;
                        }
                        let mut e2 = e.clone();
                        e2[j] += 1;
                        let slot = next.entry(e2).or_insert_with(HopfPoly::zero);
                        *slot = &*slot + &(p * q);
                    }
                }
                acc = next;
            }
        }
        let mut row = vec![HopfPoly::zero(); basis.len()];
        for (e, p) in acc {
            row[index[&e]] = p;
        }
        row
    });
    let labels = basis.iter().map(|e| monomial_label(&c.labels, e)).collect();
    let m = PolyMatrix::from_rows(rows, basis.len()).expect("square");
    Comodule::new_unchecked(c.ring, c.side, c.variant, m, labels).expect("shape")
}

/// `Sym^n` of the right standard comodule.
pub fn sym_power(ring: BaseRing, n: u32) -> Comodule {
    let mut c = sym_power_of(&standard(ring, Side::Right), n);
    if n == 0 {
        c.labels = vec!["1".into()];
    }
    c
}

/// Exterior square in the basis `e_i ∧ e_j`, `i < j`.
pub fn exterior_square(c: &Comodule) -> Comodule {
    let r = c.rank();
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect();
    let m = &c.matrix;
    let pm = PolyMatrix::from_fn(pairs.len(), pairs.len(), |a, b| {
        let ((i, j), (k, l)) = (pairs[a], pairs[b]);
        &(&m[(i, k)] * &m[(j, l)]) - &(&m[(i, l)] * &m[(j, k)])
    });
    let labels = pairs.iter().map(|&(i, j)| format!("{}∧{}", c.labels[i], c.labels[j])).collect();
    Comodule::new_unchecked(c.ring, c.side, c.variant, pm, labels).expect("shape")
}

fn antipode_transpose(m: &PolyMatrix) -> PolyMatrix {
    PolyMatrix::from_fn(m.cols(), m.rows(), |i, j| m[(j, i)].antipode())
}

fn star_labels(labels: &[String]) -> Vec<String> {
    labels.iter().map(|l| format!("{l}*")).collect()
}

/// Classical dual `W*` in the dual basis: matrix `S(Mᵀ)`, same side and variant.
/// For the standard comodule this is `Δ(x1) = x22 ⊗ x1 − x21 ⊗ x2`,
/// `Δ(x2) = −x12 ⊗ x1 + x11 ⊗ x2`.
pub fn classical_dual(c: &Comodule) -> Comodule {
    let labels = if c.labels == std_labels(2) { vec!["x1".into(), "x2".into()] } else { star_labels(&c.labels) };
    Comodule::new_unchecked(c.ring, c.side, c.variant, antipode_transpose(&c.matrix), labels).expect("shape")
}

/// The isomorphism `φ: V → V*`, `φ(e1) = x2`, `φ(e2) = −x1` (columns are images).
pub fn classical_dual_iso() -> ScalarMatrix {
    crate::matrix::scalar_matrix(&[&[0, -1], &[1, 0]])
}

/// Transpose comodule: `T̃ = T∘S` applied entrywise, same tags.
pub fn transpose(c: &Comodule) -> Comodule {
    let m = c.matrix.map(|p| p.ttilde());
    Comodule::new_unchecked(c.ring, c.side, c.variant, m, star_labels(&c.labels)).expect("shape")
}

/// The first structure on the dual basis, reusing the coefficients of `c`:
/// `Δ₁(x_i) = Σ_l a(i)_l ⊗ x_l`.
pub fn transpose_delta1(c: &Comodule) -> Comodule {
    Comodule::new_unchecked(c.ring, c.side, c.variant, c.matrix.clone(), star_labels(&c.labels)).expect("shape")
}

/// Dual functor: matrix `S(Mᵀ)`, side and variant both flipped.
pub fn dual(c: &Comodule) -> Comodule {
    Comodule::new_unchecked(
        c.ring,
        c.side.flipped(),
        c.variant.flipped(),
        antipode_transpose(&c.matrix),
        star_labels(&c.labels),
    )
    .expect("shape")
}

/// Side-flip functor: same coefficients, side and variant swapped.
pub fn flip_side(c: &Comodule) -> Comodule {
    Comodule { side: c.side.flipped(), variant: c.variant.flipped(), ..c.clone() }
}

pub fn base_change(c: &Comodule, target: BaseRing) -> Result<Comodule> {
    if !c.ring.embeds_in(&target) {
        return Err(Error::NoCanonicalMap { from: c.ring, to: target });
    }
    Ok(Comodule { ring: target, ..c.clone() })
}

/// Re-express `c` in the basis given by the rows of `p` (invertible over the ring):
/// new matrix `P M P⁻¹`.
pub fn change_basis(c: &Comodule, p: &ScalarMatrix, labels: Vec<String>) -> Result<Comodule> {
    let n = c.rank();
    if p.rows() != n || p.cols() != n {
        return Err(Error::Dimension(format!("basis change {}x{} for rank {n}", p.rows(), p.cols())));
    }
    let det = p.det()?;
    if !c.ring.is_unit(&det) || !p.entries_in(&c.ring) {
        return Err(Error::Dimension(format!("basis change with determinant {det} is not invertible over {}", c.ring)));
    }
    let pinv = p.inverse()?;
    let lift = |s: &ScalarMatrix| s.map(|x| HopfPoly::constant(x.clone()));
    let m = lift(p).mul(&c.matrix)?.mul(&lift(&pinv))?;
    Comodule::new_unchecked(c.ring, c.side, c.variant, m, labels)
}

/// Coordinates of rational vectors in the row span of an independent basis.
pub(crate) struct RowCoordinates {
    basis: ScalarMatrix,
    pivots: Vec<usize>,
    inv: ScalarMatrix,
}

impl RowCoordinates {
    pub(crate) fn new(basis: ScalarMatrix) -> Result<Self> {
        let k = basis.rows();
        // choose k independent columns greedily
        let mut pivots = Vec::new();
        for j in 0..basis.cols() {
            let mut cols = pivots.clone();
            cols.push(j);
            let sub = ScalarMatrix::from_fn(k, cols.len(), |i, t| basis[(i, cols[t])].clone());
            if sub.rank() == cols.len() {
                pivots = cols;
                if pivots.len() == k {
                    break;
                }
            }
        }
        if pivots.len() != k {
            return Err(Error::Dimension("basis rows are linearly dependent".into()));
        }
        let sub = ScalarMatrix::from_fn(k, k, |i, t| basis[(i, pivots[t])].clone());
        let inv = sub.inverse()?;
        Ok(RowCoordinates { basis, pivots, inv })
    }

    /// `c` with `c · B = v`, if `v` lies in the rational row span.
    pub(crate) fn solve(&self, v: &[RingScalar]) -> Option<Vec<RingScalar>> {
        let k = self.basis.rows();
        let restricted: Vec<RingScalar> = self.pivots.iter().map(|&j| v[j].clone()).collect();
        let coords: Vec<RingScalar> = (0..k)
            .map(|t| {
                let mut acc = RingScalar::zero();
                for (s, r) in restricted.iter().enumerate() {
                    if !r.is_zero() {
                        acc += &(r * &self.inv[(s, t)]);
                    }
                }
                acc
            })
            .collect();
        let back = self.basis.transpose().mul_vec(&coords).ok()?;
        (back.as_slice() == v).then_some(coords)
    }
}

/// Group the coefficient vectors of a row of polynomials by monomial.
fn by_monomial(row: &[HopfPoly]) -> Vec<(Mono, Vec<RingScalar>)> {
    let mut map: std::collections::BTreeMap<Mono, Vec<RingScalar>> = std::collections::BTreeMap::new();
    for (j, p) in row.iter().enumerate() {
        for (m, c) in p.terms() {
            map.entry(*m).or_insert_with(|| vec![RingScalar::zero(); row.len()])[j] = c.clone();
        }
    }
    map.into_iter().collect()
}

/// Structure matrix induced on the span of `basis` (rows), if that span is a
/// subcomodule over the ring. `Err(NotSubcomodule)` names the obstruction.
pub fn restrict(c: &Comodule, basis: &ScalarMatrix) -> Result<PolyMatrix> {
    let k = basis.rows();
    if basis.cols() != c.rank() {
        return Err(Error::Dimension(format!("basis vectors of length {} in rank {}", basis.cols(), c.rank())));
    }
    let coords = RowCoordinates::new(basis.clone())?;
    let lifted = basis.map(|x| HopfPoly::constant(x.clone()));
    let bm = lifted.mul(&c.matrix)?;
    let rows: Vec<Result<Vec<HopfPoly>>> = par::map_range(k, |i| {
        let mut out = vec![HopfPoly::zero(); k];
        for (mono, v) in by_monomial(bm.row(i)) {
            let Some(x) = coords.solve(&v) else {
                return Err(Error::NotSubcomodule(format!("coefficient of {mono} in Δ(b{i}) leaves the span")));
            };
            if let Some(bad) = x.iter().find(|s| !c.ring.contains(s)) {
                return Err(Error::NotSubcomodule(format!(
                    "coefficient of {mono} in Δ(b{i}) needs {bad} ∉ {}",
                    c.ring
                )));
            }
            for (t, s) in x.iter().enumerate() {
                if !s.is_zero() {
                    out[t] = &out[t] + &HopfPoly::monomial(mono, s.clone());
                }
            }
        }
        Ok(out)
    });
    let rows: Vec<Vec<HopfPoly>> = rows.into_iter().collect::<Result<_>>()?;
    PolyMatrix::from_rows(rows, k)
}

/// Whether the structure map sends `L` into `R ⊗ L` (membership over the ring).
pub fn is_subcomodule(c: &Comodule, l: &Lattice) -> Result<bool> {
    if l.ambient_rank() != c.rank() {
        return Err(Error::Dimension(format!("lattice in ℤ^{} for rank {}", l.ambient_rank(), c.rank())));
    }
    if l.is_zero() {
        return Ok(true);
    }
    let b = l.basis_matrix().to_scalar();
    match restrict(c, &b) {
        Ok(_) => Ok(true),
        Err(Error::NotSubcomodule(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Comodule induced on a sublattice, with labels `b1, b2, …`.
pub fn subcomodule(c: &Comodule, basis: &ScalarMatrix, labels: Vec<String>) -> Result<Comodule> {
    let m = restrict(c, basis)?;
    Comodule::new_unchecked(c.ring, c.side, c.variant, m, labels)
}

/// Symmetric tensors: the sublattice of `c^{⊗d}` fixed by all permutations of
/// the factors. The basis is the orbit sums of basis tensors, ordered like the
/// monomial basis of `Sym^d` (so for the standard comodule and `d = 2`:
/// `e11, e12 = e1⊗e2 + e2⊗e1, e22`).
pub fn sym_tensors(c: &Comodule, d: u32) -> Result<Comodule> {
    if d == 0 {
        return Ok(trivial(c.ring, c.side, c.variant));
    }
    let r = c.rank();
    let mut t = c.clone();
    for _ in 1..d {
        t = tensor(&t, c)?;
    }
    let big_n = t.rank();
    let multi = |mut idx: usize| -> Vec<usize> {
        let mut out = vec![0; d as usize];
        for k in (0..d as usize).rev() {
            out[k] = idx % r;
            idx /= r;
        }
        out
    };
    let exps = exponent_vectors(r, d);
    let mut basis = ScalarMatrix::zeros(exps.len(), big_n);
    for idx in 0..big_n {
        let mut e = vec![0u32; r];
        for k in multi(idx) {
            e[k] += 1;
        }
        let row = exps.iter().position(|x| *x == e).expect("exponent");
        basis[(row, idx)] = RingScalar::one();
    }
    // the orbit sums must span exactly the invariant lattice
    let mut rows = Vec::new();
    for k in 0..d as usize - 1 {
        for idx in 0..big_n {
            let mut m = multi(idx);
            m.swap(k, k + 1);
            let swapped = m.iter().fold(0, |acc, &x| acc * r + x);
            if swapped != idx {
                let mut row = vec![BigInt::zero(); big_n];
                row[idx] += 1;
                row[swapped] -= 1;
                rows.push(row);
            }
        }
    }
    let invariant = if rows.is_empty() {
        Lattice::full(big_n)
    } else {
        Lattice::kernel(&crate::matrix::IntMatrix::from_rows(rows, big_n)?)
    };
    let orbit = Lattice::new(big_n, basis.to_int().expect("integral").to_rows())?;
    if orbit != invariant {
        return Err(Error::Internal("orbit sums do not span the invariant lattice".into()));
    }
    let m = restrict(&t, &basis).map_err(|e| Error::Internal(format!("symmetric tensors not preserved: {e}")))?;
    let labels = exps
        .iter()
        .map(|e| {
            let idx: String = e.iter().enumerate().flat_map(|(k, &n)| std::iter::repeat_n(k + 1, n as usize)).map(|k| k.to_string()).collect();
            format!("e{idx}")
        })
        .collect();
    Comodule::new_unchecked(c.ring, c.side, c.variant, m, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &[([u32; 4], i64)]) -> HopfPoly {
        HopfPoly::from_raw(s.iter().map(|(e, c)| (*e, RingScalar::from_int(*c))))
    }

    fn x(i: usize, j: usize) -> HopfPoly {
        HopfPoly::x(i, j)
    }

    const Z: BaseRing = BaseRing::Integers;

    #[test]
    fn standard_both_sides() {
        let v = standard(Z, Side::Right);
        assert_eq!(v.matrix, Matrix::from_fn(2, 2, x));
        assert!(v.verify().passed);
        let l = standard(Z, Side::Left);
        assert!(l.verify().passed);
        for i in 0..2 {
            for j in 0..2 {
                let e = if i == j { RingScalar::one() } else { RingScalar::zero() };
                assert_eq!(v.matrix[(i, j)].counit(), e);
            }
        }
    }

    #[test]
    fn broken_comodule_is_caught() {
        let mut v = standard(Z, Side::Right);
        v.matrix[(0, 0)] = x(1, 1);
        let r = v.verify();
        assert!(!r.passed);
        assert_eq!(r.failure.unwrap().axiom, "coassociativity");
    }

    #[test]
    fn tensor_basics() {
        let v = standard(Z, Side::Right);
        let vv = tensor(&v, &v).unwrap();
        assert_eq!(vv.rank(), 4);
        assert_eq!(vv.matrix[(0, 0)], &x(0, 0) * &x(0, 0));
        assert!(vv.verify().passed);
        assert!(tensor(&v, &standard(Z, Side::Left)).is_err());
    }

    #[test]
    fn sym_power_small_cases() {
        let s0 = sym_power(Z, 0);
        assert_eq!(s0.matrix, PolyMatrix::identity(1));
        assert_eq!(sym_power(Z, 1).matrix, standard(Z, Side::Right).matrix);
        let s2 = sym_power(Z, 2);
        let want = [
            [p(&[([2, 0, 0, 0], 1)]), p(&[([1, 1, 0, 0], 2)]), p(&[([0, 2, 0, 0], 1)])],
            [p(&[([1, 0, 1, 0], 1)]), p(&[([1, 0, 0, 1], 1), ([0, 1, 1, 0], 1)]), p(&[([0, 1, 0, 1], 1)])],
            [p(&[([0, 0, 2, 0], 1)]), p(&[([0, 0, 1, 1], 2)]), p(&[([0, 0, 0, 2], 1)])],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(s2.matrix[(i, j)], want[i][j], "({i},{j})");
            }
        }
        assert_eq!(s2.labels, vec!["e1^2", "e1·e2", "e2^2"]);
        for n in 0..=5 {
            assert!(sym_power(Z, n).verify().passed, "Sym^{n}");
        }
    }

    #[test]
    fn exterior_square_is_trivial() {
        let e = exterior_square(&standard(Z, Side::Right));
        assert_eq!(e.matrix, PolyMatrix::identity(1));
        assert!(e.verify().passed);
        assert_eq!(e.matrix, sym_power(Z, 0).matrix);
    }

    #[test]
    fn classical_dual_of_v() {
        let v = standard(Z, Side::Right);
        let d = classical_dual(&v);
        assert_eq!(d.matrix[(0, 1)], -&x(1, 0));
        assert_eq!(d.matrix[(0, 0)], x(1, 1));
        assert!(d.verify().passed);
        assert_eq!(classical_dual_iso().det().unwrap(), RingScalar::one());
    }

    #[test]
    fn dual_of_left_standard() {
        let d = dual(&standard(Z, Side::Left));
        assert_eq!((d.side, d.variant), (Side::Right, HopfVariant::Opposite));
        // Δ(x1) = x22 ⊗ x1 − x12 ⊗ x2
        assert_eq!(d.matrix[(0, 0)], x(1, 1));
        assert_eq!(d.matrix[(0, 1)], -&x(0, 1));
        assert!(d.verify().passed);
        let dd = dual(&d);
        assert_eq!(dd.matrix, standard(Z, Side::Left).matrix);
    }

    #[test]
    fn flip_side_round_trip() {
        let v = standard(Z, Side::Right);
        let f = flip_side(&v);
        assert_eq!((f.side, f.variant), (Side::Left, HopfVariant::Opposite));
        assert!(f.verify().passed);
        assert_eq!(flip_side(&f), v);
    }

    #[test]
    fn transpose_of_sym2() {
        let t = transpose(&sym_power(Z, 2));
        assert!(t.verify().passed);
        assert_eq!(t.matrix[(0, 0)], p(&[([0, 0, 0, 2], 1)]));
        assert_eq!(t.matrix[(0, 1)], p(&[([0, 0, 1, 1], -2)]));
        assert_eq!(t.matrix[(1, 0)], p(&[([0, 1, 0, 1], -1)]));
        assert_eq!(transpose(&t).matrix, sym_power(Z, 2).matrix);
        assert_eq!(transpose(&sym_power(Z, 0)).matrix, PolyMatrix::identity(1));
        assert!(transpose_delta1(&sym_power(Z, 2)).verify().passed);
    }

    #[test]
    fn base_change_rules() {
        let s = sym_power(Z, 2);
        let q = base_change(&s, BaseRing::Rationals).unwrap();
        assert_eq!(q.rank(), 3);
        assert!(q.verify().passed);
        assert!(base_change(&q, Z).is_err());
        assert!(base_change(&s, BaseRing::InvertedInteger(2)).is_ok());
    }

    #[test]
    fn symmetric_tensors_of_left_v() {
        let s = sym_tensors(&standard(Z, Side::Left), 2).unwrap();
        assert_eq!(s.labels, vec!["e11", "e12", "e22"]);
        // Δ(e11) = e11 ⊗ x11² + e12 ⊗ x11 x21 + e22 ⊗ x21²
        assert_eq!(s.matrix[(0, 0)], p(&[([2, 0, 0, 0], 1)]));
        assert_eq!(s.matrix[(0, 1)], p(&[([1, 0, 1, 0], 1)]));
        assert_eq!(s.matrix[(0, 2)], p(&[([0, 0, 2, 0], 1)]));
        assert_eq!(s.matrix[(1, 0)], p(&[([1, 1, 0, 0], 2)]));
        assert!(s.verify().passed);
        let one = trivial(Z, Side::Right, HopfVariant::Standard);
        assert_eq!(sym_tensors(&one, 2).unwrap().matrix, one.matrix);
    }

    #[test]
    fn subcomodule_membership() {
        let s = sym_power(Z, 3);
        assert!(is_subcomodule(&s, &Lattice::full(4).scale(5)).unwrap());
        assert!(is_subcomodule(&s, &Lattice::full(4)).unwrap());
        let v = standard(Z, Side::Right);
        assert!(!is_subcomodule(&v, &Lattice::from_i64(2, &[&[1, 0]]).unwrap()).unwrap());
        let err = restrict(&v, &crate::matrix::scalar_matrix(&[&[1, 0]])).unwrap_err();
        assert!(err.to_string().contains("x12"), "{err}");
    }

    #[test]
    fn change_basis_preserves_axioms() {
        let s = sym_power(Z, 2);
        let p = crate::matrix::scalar_matrix(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let c = change_basis(&s, &p, s.labels.clone()).unwrap();
        assert!(c.verify().passed);
        let bad = crate::matrix::scalar_matrix(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(change_basis(&s, &bad, s.labels.clone()).is_err());
    }
}

/// First entry of `Symⁿ` violating `T̃(M[i][l]) = (−1)^{i+l} M[n−i][n−l]`, if any.
pub fn symmetry_lemma_violation(n: u32) -> Option<(usize, usize)> {
    let s = sym_power(BaseRing::Integers, n);
    let d = n as usize;
    (0..=d).flat_map(|i| (0..=d).map(move |l| (i, l))).find(|&(i, l)| {
        let lhs = s.matrix[(i, l)].ttilde();
        let rhs = s.matrix[(d - i, d - l)].scale(&RingScalar::from_int(if (i + l) % 2 == 0 { 1 } else { -1 }));
        lhs != rhs
    })
}
