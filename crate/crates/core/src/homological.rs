//! Exact sequences, sub/quotient comodules, Clebsch-Gordan filtrations and sections.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::comodule::{
    base_change, change_basis, classical_dual, direct_sum, is_subcomodule, standard, subcomodule, sym_power,
    sym_power_of, tensor, transpose, Comodule, Side,
};
use crate::error::{Error, Result};
use crate::isotest::{find_isomorphism, IsoVerdict};
use crate::lattice::Lattice;
use crate::matrix::{IntMatrix, ScalarMatrix};
use crate::morphism::{
    intertwining_equations, is_invertible_over, kronecker, morphism_check, reshape, ComoduleMorphism,
};
use crate::par;
use crate::rings::{BaseRing, RingScalar};
use crate::snf::smith_normal_form;
use crate::solve::{solve_sparse, Equation, Solution};

fn sym_index(n: u32, e2_power: u32) -> usize {
    debug_assert!(e2_power <= n);
    e2_power as usize
}

/// `g_{n,m}: Symⁿ ⊗ Symᵐ → Sym^{n+m}` over ℤ.
pub fn mult_map(n: u32, m: u32) -> Result<ComoduleMorphism> {
    mult_map_over(BaseRing::Integers, n, m)
}

pub fn mult_map_over(ring: BaseRing, n: u32, m: u32) -> Result<ComoduleMorphism> {
    let src = tensor(&sym_power(ring, n), &sym_power(ring, m))?;
    let tgt = sym_power(ring, n + m);
    let (w, cols) = (m as usize + 1, src.rank());
    let a = ScalarMatrix::from_fn(tgt.rank(), cols, |r, c| {
        if (c / w) + (c % w) == r {
            RingScalar::one()
        } else {
            RingScalar::zero()
        }
    });
    ComoduleMorphism::new(src, tgt, a)
}

/// `f_{n,m}: Sym^{n−1} ⊗ Sym^{m−1} → Symⁿ ⊗ Symᵐ`, multiplication by `e1⊗e2 − e2⊗e1`.
pub fn z_map(n: u32, m: u32) -> Result<ComoduleMorphism> {
    z_map_over(BaseRing::Integers, n, m)
}

pub fn z_map_over(ring: BaseRing, n: u32, m: u32) -> Result<ComoduleMorphism> {
    if n == 0 || m == 0 {
        return Err(Error::Dimension("z-map needs n, m ≥ 1".into()));
    }
    let src = tensor(&sym_power(ring, n - 1), &sym_power(ring, m - 1))?;
    let tgt = tensor(&sym_power(ring, n), &sym_power(ring, m))?;
    let mut a = ScalarMatrix::zeros(tgt.rank(), src.rank());
    let (ws, wt) = (m as usize, m as usize + 1);
    for q in 0..n {
        for t in 0..m {
            let col = sym_index(n - 1, q) * ws + t as usize;
            // e1^{p+1} e2^q ⊗ e1^s e2^{t+1}
            a[(sym_index(n, q) * wt + t as usize + 1, col)] += &RingScalar::one();
            // − e1^p e2^{q+1} ⊗ e1^{s+1} e2^t
            a[(sym_index(n, q + 1) * wt + t as usize, col)] -= &RingScalar::one();
        }
    }
    ComoduleMorphism::new(src, tgt, a)
}

/// The surjection `π_n = g_{1,n}: V ⊗ Symⁿ → Sym^{n+1}`.
pub fn pi_map(ring: BaseRing, n: u32) -> Result<ComoduleMorphism> {
    mult_map_over(ring, 1, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Junction {
    /// Index of the comodule between map `position` and `position + 1`.
    pub position: usize,
    pub image_rank: usize,
    pub kernel_rank: usize,
    pub image_in_kernel: bool,
    /// `[ker : Im]` when the ranks agree (saturation index of the image).
    pub index: Option<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub first_injective: bool,
    pub last_surjective: bool,
    pub junctions: Vec<Junction>,
    pub exact: bool,
}

/// Check `0 → C0 → C1 → … → Ck → 0` for the given maps.
pub fn check_exact(maps: &[ComoduleMorphism]) -> Result<ExactnessReport> {
    if maps.is_empty() {
        return Err(Error::Dimension("empty chain".into()));
    }
    for w in maps.windows(2) {
        if w[0].target.matrix != w[1].source.matrix || !w[0].target.same_tags(&w[1].source) {
            return Err(Error::Incompatible("chain is not composable".into()));
        }
    }
    let ring = maps[0].ring();
    let first_injective = maps[0].is_injective();
    let last_surjective = maps[maps.len() - 1].is_surjective();
    let junctions = par::map_range(maps.len() - 1, |j| {
        let (f, g) = (&maps[j], &maps[j + 1]);
        let im = f.image();
        let ker = g.kernel();
        let inside = ker.contains_lattice(&im).unwrap_or(false);
        let same_rank = im.rank() == ker.rank();
        let index = (inside && same_rank).then(|| im.saturation_index());
        let passed = index.as_ref().is_some_and(|i| ring.is_unit(&RingScalar::from(i)));
        Junction {
            position: j + 1,
            image_rank: im.rank(),
            kernel_rank: ker.rank(),
            image_in_kernel: inside,
            index: index.map(|i| i.to_string()),
            passed,
        }
    });
    let exact = first_injective && last_surjective && junctions.iter().all(|j| j.passed);
    Ok(ExactnessReport { first_injective, last_surjective, junctions, exact })
}

#[derive(Clone, Debug)]
pub struct SubQuotient {
    pub sub: Comodule,
    pub quot: Comodule,
    /// Rows: basis of `L` followed by a complement; unimodular.
    pub basis: ScalarMatrix,
    /// Column-convention projection `c → quot`.
    pub projection: ScalarMatrix,
}

/// Sub- and quotient comodule for a saturated subcomodule lattice.
pub fn sub_quotient(c: &Comodule, l: &Lattice) -> Result<SubQuotient> {
    let n = c.rank();
    if l.ambient_rank() != n {
        return Err(Error::Dimension(format!("lattice in ℤ^{} for rank {n}", l.ambient_rank())));
    }
    if !l.is_saturated() {
        return Err(Error::NotSaturated { index: l.saturation_index().to_string() });
    }
    if !is_subcomodule(c, l)? {
        return Err(Error::NotSubcomodule("lattice is not stable under the coaction".into()));
    }
    let k = l.rank();
    let p: IntMatrix = if k == 0 {
        IntMatrix::identity(n)
    } else {
        let b = l.basis_matrix();
        let s = smith_normal_form(&b);
        b.vstack(&s.v_inv.row_block(k, n))?
    };
    let p = p.to_scalar();
    let labels: Vec<String> = (0..n).map(|i| format!("f{}", i + 1)).collect();
    let changed = change_basis(c, &p, labels)?;
    let m = &changed.matrix;
    for i in 0..k {
        for j in k..n {
            if !m[(i, j)].is_zero() {
                return Err(Error::Internal(format!("complement mixes into the subcomodule at ({i}, {j})")));
            }
        }
    }
    let block = |r0: usize, r1: usize| m.row_block(r0, r1).col_block(r0, r1);
    let sub = Comodule::new_unchecked(c.ring, c.side, c.variant, block(0, k), (0..k).map(|i| format!("f{}", i + 1)).collect())?;
    let quot = Comodule::new_unchecked(c.ring, c.side, c.variant, block(k, n), (k..n).map(|i| format!("q{}", i - k + 1)).collect())?;
    // y = Σ c_j P_j  ⇒  c = y P⁻¹; the quotient keeps coordinates k..n
    let pinv = p.inverse()?;
    let projection = ScalarMatrix::from_fn(n - k, n, |a, b| pinv[(b, k + a)].clone());
    Ok(SubQuotient { sub, quot, basis: p, projection })
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationStep {
    /// `F_i` as a sublattice of the ambient comodule.
    pub lattice: Lattice,
    pub quotient: Comodule,
    pub degree: u32,
    /// Isomorphism `F_i/F_{i+1} → Sym^degree`.
    pub witness: ScalarMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct Filtration {
    pub comodule: Comodule,
    pub steps: Vec<FiltrationStep>,
    /// Over a field: an isomorphism `⊕ Sym^{d_i} → W` assembled from sections.
    pub splitting: Option<ScalarMatrix>,
}

impl Filtration {
    pub fn degrees(&self) -> Vec<u32> {
        self.steps.iter().map(|s| s.degree).collect()
    }

    /// Re-check every claimed property from scratch.
    pub fn verify(&self) -> Result<bool> {
        let ring = self.comodule.ring;
        let n = self.comodule.rank();
        let mut total = 0;
        for (i, s) in self.steps.iter().enumerate() {
            if !s.lattice.is_saturated() || !is_subcomodule(&self.comodule, &s.lattice)? {
                return Ok(false);
            }
            if let Some(next) = self.steps.get(i + 1) {
                if !s.lattice.contains_lattice(&next.lattice)? {
                    return Ok(false);
                }
            }
            if !s.quotient.verify().passed {
                return Ok(false);
            }
            let target = sym_like(&self.comodule, s.degree);
            if !is_invertible_over(&ring, &s.witness) || !morphism_check(&s.witness, &s.quotient, &target)?.passed {
                return Ok(false);
            }
            total += s.quotient.rank();
        }
        if total != n || self.steps.first().map(|s| s.lattice.rank()) != Some(n) {
            return Ok(false);
        }
        if let Some(phi) = &self.splitting {
            let sum = split_source(&self.comodule, &self.degrees())?;
            if !is_invertible_over(&ring, phi) || !morphism_check(phi, &sum, &self.comodule)?.passed {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `Sym^d` with the same tags as `c`.
fn sym_like(c: &Comodule, d: u32) -> Comodule {
    sym_power(c.ring, d)
}

fn split_source(c: &Comodule, degrees: &[u32]) -> Result<Comodule> {
    let mut it = degrees.iter();
    let first = it.next().ok_or_else(|| Error::Dimension("empty filtration".into()))?;
    let mut acc = sym_like(c, *first);
    for d in it {
        acc = direct_sum(&acc, &sym_like(c, *d))?;
    }
    Ok(acc)
}

/// Build filtration data from a descending chain of saturated subcomodule
/// lattices, finding quotient witnesses with the isomorphism tester.
pub fn filtration_from_chain(w: &Comodule, lattices: Vec<Lattice>, degrees: &[u32]) -> Result<Filtration> {
    let ring = w.ring;
    let n = w.rank();
    let steps = par::map_range(lattices.len(), |i| -> Result<(FiltrationStep, ScalarMatrix, ScalarMatrix)> {
        let fi = &lattices[i];
        if !fi.is_saturated() {
            return Err(Error::Internal(format!("F_{i} has saturation index {}", fi.saturation_index())));
        }
        let basis = fi.basis_matrix().to_scalar();
        let sub = subcomodule(w, &basis, (0..fi.rank()).map(|j| format!("b{}", j + 1)).collect())?;
        let next = match lattices.get(i + 1) {
            None => Lattice::zero(fi.rank()),
            Some(l) => {
                let coords = l
                    .basis()
                    .iter()
                    .map(|v| fi.coordinates(v)?.ok_or_else(|| Error::Internal(format!("F_{} ⊄ F_{i}", i + 1))))
                    .collect::<Result<Vec<_>>>()?;
                Lattice::new(fi.rank(), coords)?
            }
        };
        let sq = sub_quotient(&sub, &next)?;
        let target = sym_like(w, degrees[i]);
        let witness = match find_isomorphism(&sq.quot, &target)? {
            IsoVerdict::Isomorphic { witness } => witness,
            other => {
                return Err(Error::Internal(format!("F_{i}/F_{} is not isomorphic to Sym^{}: {other:?}", i + 1, degrees[i])))
            }
        };
        let to_sym = witness.mul(&sq.projection)?;
        let step = FiltrationStep { lattice: fi.clone(), quotient: sq.quot, degree: degrees[i], witness };
        Ok((step, basis, to_sym))
    });
    let steps = steps.into_iter().collect::<Result<Vec<_>>>()?;
    let splitting = if ring.is_field() {
        let blocks = par::map_slice(&steps, |(step, basis, to_sym)| -> Result<ScalarMatrix> {
            let sub = subcomodule(w, basis, (0..basis.rows()).map(|j| format!("b{}", j + 1)).collect())?;
            let p = ComoduleMorphism::new(sub, sym_like(w, step.degree), to_sym.clone())?;
            match find_section(&p)? {
                SectionResult::Section { matrix, .. } => Ok(basis.transpose().mul(&matrix)?),
                SectionResult::NoSection { certificate } => {
                    Err(Error::Internal(format!("filtration does not split over a field: {}", certificate.reason)))
                }
            }
        });
        let blocks = blocks.into_iter().collect::<Result<Vec<_>>>()?;
        let phi = ScalarMatrix::from_fn(n, n, |r, c| {
            let mut c = c;
            for b in &blocks {
                if c < b.cols() {
                    return b[(r, c)].clone();
                }
                c -= b.cols();
            }
            unreachable!()
        });
        Some(phi)
    } else {
        None
    };
    let f = Filtration { comodule: w.clone(), steps: steps.into_iter().map(|(s, _, _)| s).collect(), splitting };
    if let Some(phi) = &f.splitting {
        let sum = split_source(w, &f.degrees())?;
        if !is_invertible_over(&ring, phi) || !morphism_check(phi, &sum, w)?.passed {
            return Err(Error::Internal("assembled splitting is not an isomorphism".into()));
        }
    }
    Ok(f)
}

/// Lattices `F_0 ⊇ F_1 ⊇ … ⊇ F_n` of `Symⁿ ⊗ Symᵐ` given by images of the composed z-maps.
pub fn cg_lattices(n: u32, m: u32) -> Result<Vec<Lattice>> {
    let total = ((n + 1) * (m + 1)) as usize;
    let mut out = vec![Lattice::full(total)];
    let mut composite: Option<ScalarMatrix> = None;
    for i in 1..=n {
        let z = z_map(n - i + 1, m - i + 1)?.matrix;
        let next = match &composite {
            None => z,
            Some(c) => c.mul(&z)?,
        };
        let int = next.to_int().ok_or_else(|| Error::Internal("z-maps are integral".into()))?;
        out.push(Lattice::column_span(&int));
        composite = Some(next);
    }
    Ok(out)
}

/// The universal Clebsch-Gordan filtration of `Symⁿ ⊗ Symᵐ` (`n ≤ m`).
pub fn cg_filtration(n: u32, m: u32, ring: BaseRing) -> Result<Filtration> {
    if n > m {
        return Err(Error::Dimension(format!("need n ≤ m, got ({n}, {m})")));
    }
    let w = tensor(&sym_power(ring, n), &sym_power(ring, m))?;
    let lattices = cg_lattices(n, m)?;
    let degrees: Vec<u32> = (0..=n).map(|i| n + m - 2 * i).collect();
    filtration_from_chain(&w, lattices, &degrees)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionCertificate {
    /// A rational section, when one exists.
    pub rational_section: Option<ScalarMatrix>,
    /// Rank of the affine family of rational sections.
    pub rational_family_rank: usize,
    /// Denominators of the rational section that are not units in the ring.
    pub bad_denominators: Vec<String>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result")]
pub enum SectionResult {
    Section { matrix: ScalarMatrix, family_rank: usize },
    NoSection { certificate: SectionCertificate },
}

impl SectionResult {
    pub fn exists(&self) -> bool {
        matches!(self, SectionResult::Section { .. })
    }
}

fn section_system(p: &ComoduleMorphism) -> (usize, Vec<Equation>) {
    let (nv, nw) = (p.source.rank(), p.target.rank());
    let mut eqs = intertwining_equations(&p.target, &p.source);
    // p ∘ s = id
    for r in 0..nw {
        for c in 0..nw {
            let coeffs = (0..nv)
                .filter(|&a| !p.matrix[(r, a)].is_zero())
                .map(|a| (a * nw + c, p.matrix[(r, a)].clone()))
                .collect();
            let rhs = if r == c { RingScalar::one() } else { RingScalar::zero() };
            eqs.push(Equation { coeffs, rhs });
        }
    }
    (nv * nw, eqs)
}

/// Find a comodule map `s` with `p ∘ s = id`, or certify that none exists over the ring.
pub fn find_section(p: &ComoduleMorphism) -> Result<SectionResult> {
    if !p.is_surjective() {
        return Err(Error::NotSurjective("map has a non-unit elementary divisor".into()));
    }
    let ring = p.ring();
    let (nv, nw) = (p.source.rank(), p.target.rank());
    let (unknowns, eqs) = section_system(p);
    match solve_sparse(&ring, unknowns, eqs.clone())? {
        Solution::AffineSet { x0, basis } => {
            let s = reshape(&x0, nv, nw);
            let ok = morphism_check(&s, &p.target, &p.source)?.passed
                && p.matrix.mul(&s)? == ScalarMatrix::identity(nw);
            if !ok {
                return Err(Error::Internal("solver returned an invalid section".into()));
            }
            Ok(SectionResult::Section { matrix: s, family_rank: basis.len() })
        }
        Solution::NoSolution => {
            let certificate = match solve_sparse(&BaseRing::Rationals, unknowns, eqs)? {
                Solution::NoSolution => SectionCertificate {
                    rational_section: None,
                    rational_family_rank: 0,
                    bad_denominators: Vec::new(),
                    reason: "no section exists even over Q".into(),
                },
                Solution::AffineSet { x0, basis } => {
                    let mut bad: Vec<BigInt> =
                        x0.iter().filter(|v| !ring.contains(v)).map(|v| v.denom()).collect();
                    bad.sort();
                    bad.dedup();
                    let reason = if basis.is_empty() {
                        let list: Vec<String> = bad.iter().map(|d| d.to_string()).collect();
                        format!(
                            "the rational section is unique and has denominators {{{}}}, not units in {ring}",
                            list.join(", ")
                        )
                    } else {
                        format!("no member of the rank-{} family of rational sections has entries in {ring}", basis.len())
                    };
                    SectionCertificate {
                        rational_section: Some(reshape(&x0, nv, nw)),
                        rational_family_rank: basis.len(),
                        bad_denominators: bad.iter().map(|d| d.to_string()).collect(),
                        reason,
                    }
                }
            };
            Ok(SectionResult::NoSection { certificate })
        }
    }
}

/// Check that a section splits `p`: `W ≅ ker p ⊕ target` through `[ker basis | s]`.
pub fn splitting_from_section(p: &ComoduleMorphism, s: &ScalarMatrix) -> Result<bool> {
    let ring = p.ring();
    let ker = p.kernel();
    let kb = ker.basis_matrix().to_scalar();
    let kernel_comodule = subcomodule(&p.source, &kb, (0..ker.rank()).map(|i| format!("k{}", i + 1)).collect())?;
    let sum = direct_sum(&kernel_comodule, &p.target)?;
    let n = p.source.rank();
    let phi = ScalarMatrix::from_fn(n, n, |r, c| if c < ker.rank() { kb[(c, r)].clone() } else { s[(r, c - ker.rank())].clone() });
    Ok(is_invertible_over(&ring, &phi) && morphism_check(&phi, &sum, &p.source)?.passed)
}

/// Factor of a tensor product with a known isomorphism from `Sym^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TensorFactor {
    /// `Symⁿ(V)`
    Sym(u32),
    /// `Symᵐ(V*)`, built from the classical dual.
    SymDual(u32),
    /// Transpose of `Symᵏ(V)`.
    SymTranspose(u32),
}

impl TensorFactor {
    pub fn degree(self) -> u32 {
        match self {
            TensorFactor::Sym(d) | TensorFactor::SymDual(d) | TensorFactor::SymTranspose(d) => d,
        }
    }

    pub fn comodule(self, ring: BaseRing) -> Comodule {
        match self {
            TensorFactor::Sym(d) => sym_power(ring, d),
            TensorFactor::SymDual(d) => sym_power_of(&classical_dual(&standard(ring, Side::Right)), d),
            TensorFactor::SymTranspose(d) => transpose(&sym_power(ring, d)),
        }
    }

    /// Isomorphism `Sym^d → self`. Both non-trivial cases send
    /// `e1^{d−i} e2^i` to `(−1)^i` times the basis vector in position `d − i`.
    pub fn iso_from_sym(self) -> ScalarMatrix {
        let d = self.degree() as usize;
        match self {
            TensorFactor::Sym(_) => ScalarMatrix::identity(d + 1),
            TensorFactor::SymDual(_) | TensorFactor::SymTranspose(_) => ScalarMatrix::from_fn(d + 1, d + 1, |r, c| {
                if r + c == d {
                    RingScalar::from_int(if c % 2 == 0 { 1 } else { -1 })
                } else {
                    RingScalar::zero()
                }
            }),
        }
    }
}

impl std::fmt::Display for TensorFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TensorFactor::Sym(d) => write!(f, "Sym^{d}(V)"),
            TensorFactor::SymDual(d) => write!(f, "Sym^{d}(V*)"),
            TensorFactor::SymTranspose(d) => write!(f, "Sym^{d}(V)^T"),
        }
    }
}

impl std::str::FromStr for TensorFactor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (kind, d) = s.split_once(':').ok_or_else(|| Error::Parse(format!("expected kind:degree, got {s:?}")))?;
        let d: u32 = d.parse().map_err(|_| Error::Parse(format!("bad degree in {s:?}")))?;
        match kind {
            "sym" => Ok(TensorFactor::Sym(d)),
            "symdual" => Ok(TensorFactor::SymDual(d)),
            "symt" => Ok(TensorFactor::SymTranspose(d)),
            _ => Err(Error::Parse(format!("unknown tensor factor {kind:?} (sym, symdual, symt)"))),
        }
    }
}

/// Good filtration of `W1 ⊗ W2`, transported from the Clebsch-Gordan filtration
/// along explicit isomorphisms of the factors.
pub fn good_filtration_of_tensor(f1: TensorFactor, f2: TensorFactor, ring: BaseRing) -> Result<Filtration> {
    let (w1, w2) = (f1.comodule(ring), f2.comodule(ring));
    let (a1, a2) = (f1.iso_from_sym(), f2.iso_from_sym());
    for (a, w, f) in [(&a1, &w1, f1), (&a2, &w2, f2)] {
        let s = sym_power(ring, f.degree());
        if !morphism_check(a, &s, w)?.passed {
            return Err(Error::Internal(format!("explicit isomorphism Sym^{} → {f} fails", f.degree())));
        }
    }
    let w = tensor(&w1, &w2)?;
    let (d1, d2) = (f1.degree(), f2.degree());
    let mut phi = kronecker(&a1, &a2);
    let (n, m) = (d1.min(d2), d1.max(d2));
    if d1 > d2 {
        // Sym^{d2} ⊗ Sym^{d1} → Sym^{d1} ⊗ Sym^{d2}
        let (r1, r2) = (d1 as usize + 1, d2 as usize + 1);
        let swap = ScalarMatrix::from_fn(r1 * r2, r1 * r2, |r, c| {
            let (j, i) = (c / r1, c % r1);
            if r == i * r2 + j {
                RingScalar::one()
            } else {
                RingScalar::zero()
            }
        });
        phi = phi.mul(&swap)?;
    }
    let base = tensor(&sym_power(ring, n), &sym_power(ring, m))?;
    if !morphism_check(&phi, &base, &w)?.passed || !is_invertible_over(&ring, &phi) {
        return Err(Error::Internal("composed tensor isomorphism fails".into()));
    }
    let phi_int = phi.to_int().ok_or_else(|| Error::Internal("non-integral isomorphism".into()))?;
    let lattices = cg_lattices(n, m)?
        .iter()
        .map(|l| l.image_under(&phi_int))
        .collect::<Result<Vec<_>>>()?;
    let degrees: Vec<u32> = (0..=n).map(|i| n + m - 2 * i).collect();
    filtration_from_chain(&w, lattices, &degrees)
}

/// Base-change helper for callers holding a ℤ-filtration.
pub fn rational_filtration(n: u32, m: u32) -> Result<Filtration> {
    let f = cg_filtration(n, m, BaseRing::Rationals)?;
    debug_assert!(base_change(&f.comodule, BaseRing::Rationals).is_ok());
    Ok(f)
}
