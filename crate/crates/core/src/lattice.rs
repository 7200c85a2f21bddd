//! Finitely generated subgroups of ℤⁿ in Hermite normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::rings::RingScalar;
use crate::snf::smith_normal_form;

/// A sublattice of ℤⁿ. Generators are kept in row Hermite normal form:
/// positive pivots, strictly increasing pivot columns, entries above a pivot
/// reduced into `[0, pivot)`. The form is unique, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
}

/// Row Hermite normal form of the given rows (zero rows dropped).
pub fn hermite_normal_form(rows: Vec<Vec<BigInt>>, n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if r == rows.len() {
            break;
        }
        // Euclid down the column until one nonzero remains
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows.len() {
                if !rows[i][c].is_zero() && best.is_none_or(|b| rows[i][c].abs() < rows[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (top, rest) = rows.split_at_mut(i);
                for (x, y) in rest[0].iter_mut().zip(top[r].iter()) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
                done &= rows[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -&*x;
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    rows.truncate(r);
    // reduce above pivots
    for (k, &c) in pivots.iter().enumerate() {
        for i in 0..k {
            let q = rows[i][c].div_floor(&rows[k][c]);
            if q.is_zero() {
                continue;
            }
            let (top, rest) = rows.split_at_mut(k);
            for (x, y) in top[i].iter_mut().zip(rest[0].iter()) {
                if !y.is_zero() {
                    *x -= &q * y;
                }
            }
        }
    }
    rows
}

impl Lattice {
    pub fn new(ambient: usize, generators: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient) {
            return Err(Error::Dimension(format!("generator of length {} in ambient rank {ambient}", g.len())));
        }
        Ok(Lattice { ambient, basis: hermite_normal_form(generators, ambient) })
    }

    pub fn from_i64(ambient: usize, generators: &[&[i64]]) -> Result<Self> {
        Self::new(ambient, generators.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn zero(ambient: usize) -> Self {
        Lattice { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        Lattice { ambient, basis }
    }

    /// Row span of a matrix.
    pub fn row_span(m: &IntMatrix) -> Self {
        Lattice { ambient: m.cols(), basis: hermite_normal_form(m.to_rows(), m.cols()) }
    }

    /// Column span of a matrix.
    pub fn column_span(m: &IntMatrix) -> Self {
        Self::row_span(&m.transpose())
    }

    /// `{x ∈ ℤⁿ : M x = 0}` for an `r × n` matrix.
    pub fn kernel(m: &IntMatrix) -> Self {
        let s = smith_normal_form(m);
        let k = s.rank();
        let gens = (k..m.cols()).map(|j| s.v.col(j)).collect();
        Lattice { ambient: m.cols(), basis: hermite_normal_form(gens, m.cols()) }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.basis.clone(), self.ambient).expect("rectangular")
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// `span_ℚ(L) ∩ ℤⁿ`.
    pub fn saturate(&self) -> Self {
        if self.basis.is_empty() {
            return self.clone();
        }
        let s = smith_normal_form(&self.basis_matrix());
        let k = s.rank();
        let gens = (0..k).map(|i| s.v_inv.row(i).to_vec()).collect();
        Lattice { ambient: self.ambient, basis: hermite_normal_form(gens, self.ambient) }
    }

    /// `[saturate(L) : L]`.
    pub fn saturation_index(&self) -> BigInt {
        if self.basis.is_empty() {
            return BigInt::one();
        }
        smith_normal_form(&self.basis_matrix()).divisors().into_iter().product()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation_index().is_one()
    }

    fn check_ambient(&self, n: usize) -> Result<()> {
        if self.ambient != n {
            return Err(Error::Dimension(format!("ambient rank {} vs {n}", self.ambient)));
        }
        Ok(())
    }

    pub fn equal(&self, other: &Lattice) -> Result<bool> {
        self.check_ambient(other.ambient)?;
        Ok(self == other)
    }

    /// Integer coordinates of `v` in the HNF basis, if `v ∈ L`.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        self.check_ambient(v.len())?;
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let c = b.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
            // entries left of this pivot must already be cleared
            if rest[..c].iter().any(|x| !x.is_zero()) {
                return Ok(None);
            }
            let (q, r) = rest[c].div_rem(&b[c]);
            if !r.is_zero() {
                return Ok(None);
            }
            for (x, y) in rest.iter_mut().zip(b) {
                *x -= &q * y;
            }
            coords.push(q);
        }
        Ok(if rest.iter().all(|x| x.is_zero()) { Some(coords) } else { None })
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool> {
        self.check_ambient(other.ambient)?;
        for b in &other.basis {
            if !self.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Lattice) -> Result<Self> {
        self.check_ambient(other.ambient)?;
        let mut g = self.basis.clone();
        g.extend(other.basis.iter().cloned());
        Lattice::new(self.ambient, g)
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        let g = self.basis.iter().map(|r| r.iter().map(|x| x * &k).collect()).collect();
        Lattice { ambient: self.ambient, basis: hermite_normal_form(g, self.ambient) }
    }

    /// Image under `x ↦ A x` for a `m × n` integer matrix.
    pub fn image_under(&self, a: &IntMatrix) -> Result<Self> {
        self.check_ambient(a.cols())?;
        let mut g = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            g.push(a.mul_vec(b)?);
        }
        Lattice::new(a.rows(), g)
    }

    /// Basis rows as exact scalars.
    pub fn scalar_basis(&self) -> Vec<Vec<RingScalar>> {
        self.basis.iter().map(|r| r.iter().map(RingScalar::from).collect()).collect()
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(n={}, [", self.ambient)?;
        for (i, r) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        write!(f, "])")
    }
}

/// Primitive integer multiple of a rational vector (sign normalized so the
/// first nonzero entry is positive). Returns `None` for the zero vector.
pub fn primitive_integer_vector(v: &[RingScalar]) -> Option<Vec<BigInt>> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    let first_neg = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if first_neg { -g } else { g };
    Some(ints.into_iter().map(|x| x / &g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int_matrix;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_example() {
        let k = Lattice::kernel(&int_matrix(&[&[1, 1]]));
        assert_eq!(k, Lattice::from_i64(2, &[&[1, -1]]).unwrap());
    }

    #[test]
    fn saturate_examples() {
        let l = Lattice::from_i64(2, &[&[2, 0], &[0, 2]]).unwrap();
        assert_eq!(l.saturate(), Lattice::full(2));
        assert_eq!(l.saturation_index(), BigInt::from(4));
        let p = Lattice::from_i64(2, &[&[1, 2]]).unwrap();
        assert_eq!(p.saturate(), p);
        assert!(p.is_saturated());
    }

    #[test]
    fn hnf_is_canonical() {
        let a = Lattice::from_i64(3, &[&[1, 2, 3], &[4, 5, 6]]).unwrap();
        let b = Lattice::from_i64(3, &[&[5, 7, 9], &[-3, -3, -3], &[1, 2, 3]]).unwrap();
        assert!(a.equal(&b).unwrap());
        assert!(a.contains(&big(&[2, 1, 0])).unwrap());
        assert!(!a.contains(&big(&[1, 0, 0])).unwrap());
        assert!(a.equal(&Lattice::zero(2)).is_err());
    }

    #[test]
    fn coordinates_reconstruct() {
        let l = Lattice::from_i64(3, &[&[2, 1, 0], &[0, 3, 1]]).unwrap();
        let v = big(&[4, 5, 1]);
        let c = l.coordinates(&v).unwrap().unwrap();
        let mut w = vec![BigInt::zero(); 3];
        for (ci, b) in c.iter().zip(l.basis()) {
            for (x, y) in w.iter_mut().zip(b) {
                *x += ci * y;
            }
        }
        assert_eq!(w, v);
    }

    proptest! {
        #[test]
        fn saturation_laws(gens in proptest::collection::vec(proptest::collection::vec(-6i64..7, 3), 0..4)) {
            let g: Vec<Vec<BigInt>> = gens.iter().map(|r| big(r)).collect();
            let l = Lattice::new(3, g).unwrap();
            let s = l.saturate();
            prop_assert_eq!(s.saturate(), s.clone());
            prop_assert!(s.contains_lattice(&l).unwrap());
            prop_assert_eq!(s.rank(), l.rank());
            // index equals the determinant ratio of the two bases (via divisors)
            let idx = l.saturation_index();
            prop_assert!(idx >= BigInt::one());
            prop_assert_eq!(s.saturation_index(), BigInt::one());
        }

        #[test]
        fn kernel_is_annihilated(entries in proptest::collection::vec(-5i64..6, 8)) {
            let m = IntMatrix::from_fn(2, 4, |i, j| BigInt::from(entries[i * 4 + j]));
            let k = Lattice::kernel(&m);
            for b in k.basis() {
                prop_assert!(m.mul_vec(b).unwrap().iter().all(|x| x.is_zero()));
            }
            prop_assert!(k.is_saturated());
            let rank = m.to_scalar().rank();
            prop_assert_eq!(k.rank(), 4 - rank);
        }
    }
}
