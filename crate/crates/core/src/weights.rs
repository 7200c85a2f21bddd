//! Lie algebra action, weight spaces and characters.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::comodule::Comodule;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::{IntMatrix, ScalarMatrix};
use crate::rings::RingScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LieGen {
    X,
    H,
    Y,
}

impl LieGen {
    /// Tangent direction at the identity. The pairing with `X`/`Y` is chosen so
    /// that on the standard comodule `x·e2 = e1` and `y·e1 = e2`.
    fn direction(self) -> [[i64; 2]; 2] {
        match self {
            LieGen::X => [[0, 0], [1, 0]],
            LieGen::H => [[1, 0], [0, -1]],
            LieGen::Y => [[0, 1], [0, 0]],
        }
    }
}

/// Matrix of the generator acting on columns: `X·e_j = Σ_i A[i][j] e_i`.
pub fn dist_action(c: &Comodule, g: LieGen) -> ScalarMatrix {
    let xi = g.direction();
    let n = c.rank();
    ScalarMatrix::from_fn(n, n, |i, j| c.matrix[(j, i)].derivative_at_identity(&xi))
}

/// Weight → rank of the weight sublattice.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightTable(pub BTreeMap<i64, usize>);

#[derive(Clone, Debug)]
pub struct WeightDecomposition {
    pub table: WeightTable,
    pub spaces: BTreeMap<i64, Lattice>,
}

fn integer_scaled(m: &ScalarMatrix) -> IntMatrix {
    let den = m.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    m.map(|x| x.numer() * (&den / x.denom()))
}

/// Eigen-sublattices of H; they must give a direct-sum decomposition of the
/// whole lattice (over the base ring).
pub fn weight_decomposition(c: &Comodule) -> Result<WeightDecomposition> {
    let h = dist_action(c, LieGen::H);
    let n = c.rank();
    // |λ| is at most the largest absolute row sum
    let bound = (0..n)
        .map(|i| h.row(i).iter().fold(RingScalar::zero(), |acc, x| &acc + &x.abs()))
        .max()
        .unwrap_or_else(RingScalar::zero);
    let bound = bound.numer().div_ceil(&bound.denom());
    let bound: i64 = bound.try_into().map_err(|_| Error::NoWeightDecomposition("weight bound overflow".into()))?;
    let mut spaces = BTreeMap::new();
    let mut total = 0;
    for lambda in -bound..=bound {
        let shifted = ScalarMatrix::from_fn(n, n, |i, j| {
            if i == j {
                &h[(i, j)] - &RingScalar::from_int(lambda)
            } else {
                h[(i, j)].clone()
            }
        });
        let k = Lattice::kernel(&integer_scaled(&shifted));
        if !k.is_zero() {
            total += k.rank();
            spaces.insert(lambda, k);
        }
    }
    if total != n {
        return Err(Error::NoWeightDecomposition(format!(
            "integer eigenspaces of H have total rank {total}, expected {n}"
        )));
    }
    let rows: Vec<Vec<BigInt>> = spaces.values().flat_map(|l| l.basis().iter().cloned()).collect();
    let det = if n == 0 {
        RingScalar::one()
    } else {
        IntMatrix::from_rows(rows, n)?.to_scalar().det()?
    };
    if !c.ring.is_unit(&det) {
        return Err(Error::NoWeightDecomposition(format!("weight lattices have index {} in the full lattice", det.abs())));
    }
    let table = WeightTable(spaces.iter().map(|(w, l)| (*w, l.rank())).collect());
    Ok(WeightDecomposition { table, spaces })
}

/// Laurent polynomial `Σ c_j q^j` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character(pub BTreeMap<i64, i64>);

impl Character {
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut m = BTreeMap::new();
        for (e, c) in terms {
            *m.entry(e).or_insert(0) += c;
        }
        m.retain(|_, c| *c != 0);
        Character(m)
    }

    /// `q^{−d} + q^{−d+2} + … + q^d`.
    pub fn of_sym(d: u32) -> Self {
        Self::from_terms((0..=d as i64).map(|i| (-(d as i64) + 2 * i, 1)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, e: i64) -> i64 {
        self.0.get(&e).copied().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().all(|(e, c)| self.coefficient(-e) == *c)
    }

    pub fn top_degree(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.0.iter().map(|(e, c)| (*e, c * k)))
    }

    pub fn rank(&self) -> i64 {
        self.0.values().sum()
    }
}

impl Add for &Character {
    type Output = Character;
    fn add(self, rhs: &Character) -> Character {
        Character::from_terms(self.0.iter().chain(rhs.0.iter()).map(|(e, c)| (*e, *c)))
    }
}

impl Neg for &Character {
    type Output = Character;
    fn neg(self) -> Character {
        self.scale(-1)
    }
}

impl Sub for &Character {
    type Output = Character;
    fn sub(self, rhs: &Character) -> Character {
        self + &(-rhs)
    }
}

impl Mul for &Character {
    type Output = Character;
    fn mul(self, rhs: &Character) -> Character {
        Character::from_terms(self.0.iter().flat_map(|(e1, c1)| rhs.0.iter().map(move |(e2, c2)| (e1 + e2, c1 * c2))))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.0 {
            let sign = if *c < 0 { "-" } else { "+" };
            if first {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let mono = match e {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{e}"),
            };
            match (a, mono.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (1, false) => write!(f, "{mono}")?,
                (_, false) => write!(f, "{a}{mono}")?,
            }
        }
        Ok(())
    }
}

pub fn character(c: &Comodule) -> Result<Character> {
    let w = weight_decomposition(c)?;
    Ok(Character::from_terms(w.table.0.iter().map(|(e, r)| (*e, *r as i64))))
}

impl WeightTable {
    pub fn total_rank(&self) -> usize {
        self.0.values().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodule::{base_change, standard, sym_power, sym_tensors, tensor, Side};
    use crate::rings::BaseRing;

    const Z: BaseRing = BaseRing::Integers;

    #[test]
    fn standard_values() {
        let v = standard(Z, Side::Right);
        assert_eq!(dist_action(&v, LieGen::H), crate::matrix::scalar_matrix(&[&[1, 0], &[0, -1]]));
        let x = dist_action(&v, LieGen::X);
        assert_eq!(x[(0, 1)], RingScalar::one()); // x·e2 = e1
        let y = dist_action(&v, LieGen::Y);
        assert_eq!(y[(1, 0)], RingScalar::one()); // y·e1 = e2
    }

    #[test]
    fn quoted_values_on_sym() {
        for d in 0..=6u32 {
            let s = sym_power(Z, d);
            let h = dist_action(&s, LieGen::H);
            let last = d as usize;
            assert_eq!(h[(last, last)], RingScalar::from_int(-(d as i64)));
        }
        for n in 0..=5u32 {
            // x(e2^{n+1}) = (n+1) e1 e2^n
            let s = sym_power(Z, n + 1);
            let x = dist_action(&s, LieGen::X);
            let col = x.col(n as usize + 1);
            let mut want = vec![RingScalar::zero(); n as usize + 2];
            want[n as usize] = RingScalar::from_int(n as i64 + 1);
            assert_eq!(col, want);
        }
    }

    #[test]
    fn characters() {
        let c = character(&sym_power(Z, 3)).unwrap();
        assert_eq!(c, Character::from_terms([(-3, 1), (-1, 1), (1, 1), (3, 1)]));
        assert_eq!(c.to_string(), "q^-3 + q^-1 + q + q^3");
        let v = standard(Z, Side::Right);
        let vv = tensor(&v, &v).unwrap();
        assert_eq!(character(&vv).unwrap(), &character(&v).unwrap() * &character(&v).unwrap());
        let s2 = sym_tensors(&v, 2).unwrap();
        assert_eq!(weight_decomposition(&s2).unwrap().table, weight_decomposition(&sym_power(Z, 2)).unwrap().table);
        let q = base_change(&sym_power(Z, 2), BaseRing::Rationals).unwrap();
        assert_eq!(character(&q).unwrap(), Character::of_sym(2));
    }

    #[test]
    fn leibniz_on_sym() {
        // H on Sym^n is the derivation induced from V: weight of e1^{n-i} e2^i is n − 2i
        for n in 0..=6u32 {
            let h = dist_action(&sym_power(Z, n), LieGen::H);
            for i in 0..=n as usize {
                for j in 0..=n as usize {
                    let want = if i == j { n as i64 - 2 * i as i64 } else { 0 };
                    assert_eq!(h[(i, j)], RingScalar::from_int(want));
                }
            }
        }
    }
}
