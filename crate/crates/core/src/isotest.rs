//! Homomorphism lattices and isomorphism decisions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::comodule::{base_change, Comodule};
use crate::error::{Error, Result};
use crate::matrix::ScalarMatrix;
use crate::morphism::{intertwining_equations, is_invertible_over, morphism_check, reshape};
use crate::par;
use crate::rings::{BaseRing, RingScalar};
use crate::solve::{solve_sparse, Solution};

/// Basis of `Hom(c1, c2)` over the ring (integer matrices, target × source).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomLattice {
    pub ring: BaseRing,
    pub rows: usize,
    pub cols: usize,
    pub basis: Vec<ScalarMatrix>,
}

impl HomLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn combination(&self, coeffs: &[RingScalar]) -> ScalarMatrix {
        let mut out = ScalarMatrix::zeros(self.rows, self.cols);
        for (t, b) in coeffs.iter().zip(&self.basis) {
            if t.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                for j in 0..self.cols {
                    out[(i, j)] = &out[(i, j)] + &(t * &b[(i, j)]);
                }
            }
        }
        out
    }
}

pub fn intertwiner_lattice(c1: &Comodule, c2: &Comodule) -> Result<HomLattice> {
    c1.check_compatible(c2)?;
    let (n1, n2) = (c1.rank(), c2.rank());
    let eqs = intertwining_equations(c1, c2);
    let basis = match solve_sparse(&c1.ring, n1 * n2, eqs)? {
        Solution::AffineSet { basis, .. } => basis.iter().map(|v| reshape(v, n2, n1)).collect(),
        Solution::NoSolution => return Err(Error::Internal("homogeneous system without solutions".into())),
    };
    Ok(HomLattice { ring: c1.ring, rows: n2, cols: n1, basis })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum IsoVerdict {
    Isomorphic {
        witness: ScalarMatrix,
    },
    /// `fixed_divisor` is the gcd of det over all integer combinations of the
    /// hom basis; when it is not a unit, no combination is invertible.
    NotIsomorphic {
        hom_rank: usize,
        fixed_divisor: Option<RingScalar>,
        reason: String,
    },
    Unknown {
        hom_rank: usize,
        bound: u32,
        reason: String,
    },
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic { .. })
    }

    pub fn is_not_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::NotIsomorphic { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            IsoVerdict::Isomorphic { .. } => "Isomorphic",
            IsoVerdict::NotIsomorphic { .. } => "NotIsomorphic",
            IsoVerdict::Unknown { .. } => "Unknown",
        }
    }
}

pub const DEFAULT_BOUND: u32 = 3;
const GRID_LIMIT: usize = 4096;

/// Visit integer vectors of `{lo..=hi}^k` in lexicographic order until `f` returns `Some`.
fn scan_box<T>(k: usize, lo: i64, hi: i64, mut f: impl FnMut(&[i64]) -> Option<T>) -> Option<T> {
    let mut t = vec![lo; k];
    loop {
        if let Some(r) = f(&t) {
            return Some(r);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if t[i] < hi {
                t[i] += 1;
                break;
            }
            t[i] = lo;
        }
    }
}

fn to_scalars(t: &[i64]) -> Vec<RingScalar> {
    t.iter().map(|&v| RingScalar::from_int(v)).collect()
}

pub fn find_isomorphism(c1: &Comodule, c2: &Comodule) -> Result<IsoVerdict> {
    find_isomorphism_bounded(c1, c2, DEFAULT_BOUND)
}

/// Decide whether an invertible intertwiner exists.
///
/// The determinant of `Σ t_i S_i` is a form of degree `n` in `t`, so the gcd of
/// its values on `ℤ^k` equals the gcd over the grid `{0..n}^k`. A non-unit gcd
/// is a certificate of non-isomorphism. Over `ℚ` and `ℤ₍ₚ₎` a unit gcd forces a
/// unit value on that grid; over `ℤ` and `ℤ[1/m]` a bounded search follows.
pub fn find_isomorphism_bounded(c1: &Comodule, c2: &Comodule, bound: u32) -> Result<IsoVerdict> {
    c1.check_compatible(c2)?;
    let ring = c1.ring;
    let n = c1.rank();
    if n != c2.rank() {
        return Ok(IsoVerdict::NotIsomorphic {
            hom_rank: 0,
            fixed_divisor: None,
            reason: format!("ranks differ ({} vs {})", n, c2.rank()),
        });
    }
    if c1.matrix == c2.matrix {
        return Ok(IsoVerdict::Isomorphic { witness: ScalarMatrix::identity(n) });
    }
    let hom = intertwiner_lattice(c1, c2)?;
    let k = hom.rank();
    if k == 0 {
        return Ok(IsoVerdict::NotIsomorphic {
            hom_rank: 0,
            fixed_divisor: None,
            reason: "no nonzero comodule maps".into(),
        });
    }
    let det_at = |t: &[i64]| -> Result<RingScalar> { hom.combination(&to_scalars(t)).det() };
    let accept = |t: &[i64]| -> Option<ScalarMatrix> {
        let a = hom.combination(&to_scalars(t));
        (is_invertible_over(&ring, &a) && morphism_check(&a, c1, c2).map(|r| r.passed).unwrap_or(false)).then_some(a)
    };

    let grid_size = (n + 1).checked_pow(k as u32).unwrap_or(usize::MAX);
    if grid_size <= GRID_LIMIT {
        let mut g = BigInt::zero();
        let found = scan_box(k, 0, n as i64, |t| {
            if t.iter().all(|v| *v == 0) {
                return None;
            }
            let d = match det_at(t) {
                Ok(d) => d,
                Err(_) => return None,
            };
            g = g.gcd(&d.to_bigint().unwrap_or_else(|| d.numer()));
            if ring.is_unit(&d) {
                accept(t)
            } else {
                None
            }
        });
        if let Some(w) = found {
            return Ok(IsoVerdict::Isomorphic { witness: w });
        }
        let gs = RingScalar::from(g.abs());
        if g.is_zero() {
            return Ok(IsoVerdict::NotIsomorphic {
                hom_rank: k,
                fixed_divisor: Some(gs),
                reason: "every comodule map is singular".into(),
            });
        }
        if !ring.is_unit(&gs) {
            let reason = if k == 1 {
                format!("Hom is generated by S with det(S) = ±{gs}; det(tS) = t^{n}·det(S) is never a unit in {ring}")
            } else {
                format!("every determinant of a comodule map is divisible by {gs}, not a unit in {ring}")
            };
            return Ok(IsoVerdict::NotIsomorphic { hom_rank: k, fixed_divisor: Some(gs), reason });
        }
    }
    let b = bound as i64;
    let found = scan_box(k, -b, b, |t| if t.iter().all(|v| *v == 0) { None } else { accept(t) });
    Ok(match found {
        Some(w) => IsoVerdict::Isomorphic { witness: w },
        None => IsoVerdict::Unknown {
            hom_rank: k,
            bound,
            reason: format!("no unit-determinant combination with coefficients in [-{bound}, {bound}]"),
        },
    })
}

/// Re-check an Isomorphic verdict independently.
pub fn validate_verdict(v: &IsoVerdict, c1: &Comodule, c2: &Comodule) -> Result<bool> {
    Ok(match v {
        IsoVerdict::Isomorphic { witness } => {
            is_invertible_over(&c1.ring, witness) && morphism_check(witness, c1, c2)?.passed
        }
        IsoVerdict::NotIsomorphic { fixed_divisor, hom_rank, .. } => {
            if c1.rank() != c2.rank() {
                true
            } else {
                let hom = intertwiner_lattice(c1, c2)?;
                hom.rank() == *hom_rank
                    && match fixed_divisor {
                        None => *hom_rank == 0,
                        Some(g) => !c1.ring.is_unit(g),
                    }
            }
        }
        IsoVerdict::Unknown { .. } => true,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub ring: BaseRing,
    pub labels: Vec<String>,
    pub verdicts: Vec<Vec<IsoVerdict>>,
    /// Classes under proven isomorphism; Unknown pairs stay separate.
    pub classes: Vec<Vec<usize>>,
}

pub fn pairwise_classification(cs: &[Comodule], ring: BaseRing) -> Result<Classification> {
    let cs: Vec<Comodule> = cs.iter().map(|c| base_change(c, ring)).collect::<Result<_>>()?;
    let n = cs.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let results = par::map_slice(&pairs, |&(i, j)| find_isomorphism(&cs[i], &cs[j]));
    let mut verdicts: Vec<Vec<Option<IsoVerdict>>> = vec![vec![None; n]; n];
    for i in 0..n {
        verdicts[i][i] = Some(IsoVerdict::Isomorphic { witness: ScalarMatrix::identity(cs[i].rank()) });
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for (&(i, j), v) in pairs.iter().zip(results) {
        let v = v?;
        let back = match &v {
            IsoVerdict::Isomorphic { witness } => {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[b.max(a)] = a.min(b);
                IsoVerdict::Isomorphic { witness: witness.inverse()? }
            }
            other => other.clone(),
        };
        verdicts[i][j] = Some(v);
        verdicts[j][i] = Some(back);
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut seen = std::collections::BTreeMap::new();
    for i in 0..n {
        let r = root(&mut parent, i);
        let idx = *seen.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[idx].push(i);
    }
    Ok(Classification {
        ring,
        labels: Vec::new(),
        verdicts: verdicts.into_iter().map(|r| r.into_iter().map(|v| v.expect("filled")).collect()).collect(),
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodule::{classical_dual, classical_dual_iso, standard, sym_power, sym_tensors, transpose, Side};
    use crate::matrix::scalar_matrix;

    const Z: BaseRing = BaseRing::Integers;

    #[test]
    fn v_and_its_dual() {
        let v = standard(Z, Side::Right);
        let h = intertwiner_lattice(&v, &classical_dual(&v)).unwrap();
        assert_eq!(h.rank(), 1);
        let g = &h.basis[0];
        assert!(*g == classical_dual_iso() || *g == classical_dual_iso().map(|x| -x.clone()));
        assert!(find_isomorphism(&v, &classical_dual(&v)).unwrap().is_isomorphic());
    }

    #[test]
    fn distinct_weights_have_no_maps() {
        let h = intertwiner_lattice(&sym_power(Z, 1), &sym_power(Z, 2)).unwrap();
        assert_eq!(h.rank(), 0);
        assert!(find_isomorphism(&sym_power(Z, 1), &sym_power(Z, 2)).unwrap().is_not_isomorphic());
    }

    #[test]
    fn sym_powers_and_symmetric_tensors() {
        let v = standard(Z, Side::Right);
        let s2 = sym_power(Z, 2);
        let t2 = sym_tensors(&v, 2).unwrap();
        let v_z = find_isomorphism(&s2, &t2).unwrap();
        assert!(v_z.is_not_isomorphic(), "{v_z:?}");
        assert!(validate_verdict(&v_z, &s2, &t2).unwrap());
        for ring in [BaseRing::inverting(2).unwrap(), BaseRing::Rationals] {
            let a = base_change(&s2, ring).unwrap();
            let b = base_change(&t2, ring).unwrap();
            let v = find_isomorphism(&a, &b).unwrap();
            assert!(v.is_isomorphic(), "{ring}: {v:?}");
            assert!(validate_verdict(&v, &a, &b).unwrap());
        }
    }

    #[test]
    fn self_iso_is_identity() {
        let s = sym_power(Z, 3);
        assert_eq!(find_isomorphism(&s, &s).unwrap(), IsoVerdict::Isomorphic { witness: ScalarMatrix::identity(4) });
        let t = transpose(&s);
        let v = find_isomorphism(&s, &t).unwrap();
        assert!(validate_verdict(&v, &s, &t).unwrap());
    }

    #[test]
    fn classification_table_is_symmetric() {
        let v = standard(Z, Side::Right);
        let cs = vec![sym_power(Z, 2), sym_tensors(&v, 2).unwrap()];
        let t = pairwise_classification(&cs, Z).unwrap();
        assert_eq!(t.classes.len(), 2);
        let tq = pairwise_classification(&cs, BaseRing::Rationals).unwrap();
        assert_eq!(tq.classes, vec![vec![0, 1]]);
        let IsoVerdict::Isomorphic { witness } = &tq.verdicts[1][0] else { panic!() };
        let csq: Vec<_> = cs.iter().map(|c| base_change(c, BaseRing::Rationals).unwrap()).collect();
        assert!(morphism_check(witness, &csq[1], &csq[0]).unwrap().passed);
        let single = pairwise_classification(&cs[..1], Z).unwrap();
        assert_eq!(single.verdicts.len(), 1);
        assert!(single.verdicts[0][0].is_isomorphic());
    }

    #[test]
    fn scan_order() {
        let mut seen = Vec::new();
        scan_box::<()>(2, 0, 1, |t| {
            seen.push(t.to_vec());
            None
        });
        assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let _ = scalar_matrix(&[&[1]]);
    }
}
