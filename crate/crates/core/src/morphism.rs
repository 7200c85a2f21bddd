//! Comodule maps, as scalar matrices acting on columns.
//!
//! A matrix `A` (target rank × source rank) represents `φ(e_j) = Σ_i A[i][j] f_i`.
//! It is a comodule map iff `A · M_sourceᵀ = M_targetᵀ · A` entrywise in R.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::comodule::{Comodule, PolyMatrix};
use crate::error::{Error, Result};
use crate::hopf::{HopfPoly, Mono};
use crate::lattice::Lattice;
use crate::matrix::{IntMatrix, ScalarMatrix};
use crate::par;
use crate::rings::{BaseRing, RingScalar};
use crate::snf::smith_normal_form;
use crate::solve::Equation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismWitness {
    pub row: usize,
    pub col: usize,
    pub monomial: String,
    pub lhs: RingScalar,
    pub rhs: RingScalar,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismCheck {
    pub passed: bool,
    pub witness: Option<MorphismWitness>,
}

fn lift(a: &ScalarMatrix) -> PolyMatrix {
    a.map(|x| HopfPoly::constant(x.clone()))
}

/// Expand the intertwining identity and compare exactly.
pub fn morphism_check(a: &ScalarMatrix, c1: &Comodule, c2: &Comodule) -> Result<MorphismCheck> {
    c1.check_compatible(c2)?;
    if a.rows() != c2.rank() || a.cols() != c1.rank() {
        return Err(Error::Dimension(format!(
            "map matrix is {}x{}, expected {}x{}",
            a.rows(),
            a.cols(),
            c2.rank(),
            c1.rank()
        )));
    }
    if let Some(pos) = a.iter().position(|x| !c1.ring.contains(x)) {
        let (r, c) = (pos / a.cols(), pos % a.cols());
        return Ok(MorphismCheck {
            passed: false,
            witness: Some(MorphismWitness {
                row: r,
                col: c,
                monomial: "1".into(),
                lhs: a[(r, c)].clone(),
                rhs: a[(r, c)].clone(),
                detail: format!("entry {} is not in {}", a[(r, c)], c1.ring),
            }),
        });
    }
    let la = lift(a);
    let lhs = la.mul(&c1.matrix.transpose())?;
    let rhs = c2.matrix.transpose().mul(&la)?;
    let cols = a.cols();
    let found = par::find_first(a.rows() * cols, |idx| {
        let (r, c) = (idx / cols, idx % cols);
        let (l, rr) = (&lhs[(r, c)], &rhs[(r, c)]);
        if l == rr {
            return None;
        }
        let diff = l - rr;
        let (m, _) = diff.terms().next().expect("nonzero difference");
        Some(MorphismWitness {
            row: r,
            col: c,
            monomial: m.to_string(),
            lhs: l.coefficient(*m),
            rhs: rr.coefficient(*m),
            detail: format!("(A·M1ᵀ)[{r}][{c}] and (M2ᵀ·A)[{r}][{c}] differ at {m}"),
        })
    });
    Ok(MorphismCheck { passed: found.is_none(), witness: found.map(|(_, w)| w) })
}

/// A verified comodule map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleMorphism {
    pub source: Comodule,
    pub target: Comodule,
    pub matrix: ScalarMatrix,
}

impl ComoduleMorphism {
    pub fn new(source: Comodule, target: Comodule, matrix: ScalarMatrix) -> Result<Self> {
        let check = morphism_check(&matrix, &source, &target)?;
        if let Some(w) = check.witness {
            return Err(Error::AxiomFailure(format!("not a comodule map: {}", w.detail)));
        }
        Ok(ComoduleMorphism { source, target, matrix })
    }

    pub fn new_unchecked(source: Comodule, target: Comodule, matrix: ScalarMatrix) -> Self {
        ComoduleMorphism { source, target, matrix }
    }

    pub fn ring(&self) -> BaseRing {
        self.source.ring
    }

    pub fn check(&self) -> Result<MorphismCheck> {
        morphism_check(&self.matrix, &self.source, &self.target)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ComoduleMorphism) -> Result<ComoduleMorphism> {
        if self.target != other.source {
            return Err(Error::Incompatible("maps are not composable".into()));
        }
        Ok(ComoduleMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: other.matrix.mul(&self.matrix)?,
        })
    }

    pub fn scaled(&self, k: i64) -> ComoduleMorphism {
        let k = RingScalar::from_int(k);
        ComoduleMorphism { matrix: self.matrix.map(|x| x * &k), ..self.clone() }
    }

    /// Integer matrix obtained by clearing denominators, with the scale used.
    pub fn integer_matrix(&self) -> (IntMatrix, BigInt) {
        let den = self.matrix.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
        let m = self.matrix.map(|x| x.numer() * (&den / x.denom()));
        (m, den)
    }

    /// Image lattice in ℤ^target (of the integer-scaled matrix).
    pub fn image(&self) -> Lattice {
        Lattice::column_span(&self.integer_matrix().0)
    }

    pub fn kernel(&self) -> Lattice {
        Lattice::kernel(&self.integer_matrix().0)
    }

    /// Surjective over the ring: all elementary divisors present and units.
    pub fn is_surjective(&self) -> bool {
        let (m, den) = self.integer_matrix();
        let s = smith_normal_form(&m);
        let ring = self.ring();
        ring.is_unit(&RingScalar::from(den))
            && s.rank() == m.rows()
            && s.divisors().iter().all(|d| ring.is_unit(&RingScalar::from(d)))
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.matrix.cols()
    }
}

/// Linear equations in the entries of `A` (index `r * n1 + c`) expressing
/// `A · M1ᵀ = M2ᵀ · A`, one per entry and monomial.
pub fn intertwining_equations(c1: &Comodule, c2: &Comodule) -> Vec<Equation> {
    let (n1, n2) = (c1.rank(), c2.rank());
    let per_entry = par::map_range(n2 * n1, |idx| {
        let (r, c) = (idx / n1, idx % n1);
        let mut by_mono: BTreeMap<Mono, Vec<(usize, RingScalar)>> = BTreeMap::new();
        // (A M1ᵀ)[r][c] = Σ_l A[r][l] M1[c][l]
        for l in 0..n1 {
            for (m, v) in c1.matrix[(c, l)].terms() {
                by_mono.entry(*m).or_default().push((r * n1 + l, v.clone()));
            }
        }
        // (M2ᵀ A)[r][c] = Σ_i M2[i][r] A[i][c]
        for i in 0..n2 {
            for (m, v) in c2.matrix[(i, r)].terms() {
                by_mono.entry(*m).or_default().push((i * n1 + c, -v.clone()));
            }
        }
        by_mono.into_values().map(Equation::homogeneous).collect::<Vec<_>>()
    });
    per_entry.into_iter().flatten().collect()
}

/// Reshape an unknown vector (row-major) into a `rows × cols` matrix.
pub fn reshape(v: &[RingScalar], rows: usize, cols: usize) -> ScalarMatrix {
    ScalarMatrix::from_fn(rows, cols, |i, j| v[i * cols + j].clone())
}

/// Kronecker product of two scalar matrices (map on tensor products).
pub fn kronecker(a: &ScalarMatrix, b: &ScalarMatrix) -> ScalarMatrix {
    ScalarMatrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        &a[(i / b.rows(), j / b.cols())] * &b[(i % b.rows(), j % b.cols())]
    })
}

/// Whether a square matrix is invertible over the ring.
pub fn is_invertible_over(ring: &BaseRing, a: &ScalarMatrix) -> bool {
    a.rows() == a.cols() && a.entries_in(ring) && a.det().map(|d| ring.is_unit(&d)).unwrap_or(false)
}

pub fn zero_map(source: &Comodule, target: &Comodule) -> ComoduleMorphism {
    ComoduleMorphism::new_unchecked(source.clone(), target.clone(), ScalarMatrix::zeros(target.rank(), source.rank()))
}

pub fn identity_map(c: &Comodule) -> ComoduleMorphism {
    ComoduleMorphism::new_unchecked(c.clone(), c.clone(), ScalarMatrix::identity(c.rank()))
}
