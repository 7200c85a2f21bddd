//! The coordinate ring of SL₂: `A[x11, x12, x21, x22] / (x11 x22 − x12 x21 − 1)`.
//!
//! Polynomials are stored in the normal form where no monomial contains both
//! `x11` and `x22`. Because the determinant relation is a single generator
//! whose leading term is `x11 x22`, every residue class has exactly one such
//! representative.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::rings::{BaseRing, RingScalar};

/// Monomial `x11^a x12^b x21^c x22^d`, packed 16 bits per exponent so that
/// integer order equals lexicographic order on `(a, b, c, d)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        assert!(a < 1 << 16 && b < 1 << 16 && c < 1 << 16 && d < 1 << 16, "exponent overflow");
        Mono(((a as u64) << 48) | ((b as u64) << 32) | ((c as u64) << 16) | d as u64)
    }

    pub fn from_exps(e: [u32; 4]) -> Self {
        Self::new(e[0], e[1], e[2], e[3])
    }

    pub fn exps(self) -> [u32; 4] {
        let v = self.0;
        [(v >> 48) as u32, ((v >> 32) & 0xffff) as u32, ((v >> 16) & 0xffff) as u32, (v & 0xffff) as u32]
    }

    pub fn degree(self) -> u32 {
        self.exps().iter().sum()
    }

    pub fn is_normal(self) -> bool {
        let [a, _, _, d] = self.exps();
        a == 0 || d == 0
    }

    /// Raw product, possibly outside normal form.
    fn times(self, other: Mono) -> [u32; 4] {
        let (x, y) = (self.exps(), other.exps());
        [x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]]
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["x11", "x12", "x21", "x22"];
        let mut first = true;
        for (name, e) in names.iter().zip(self.exps()) {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Serialize for Mono {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.exps().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mono {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let e = <[u32; 4]>::deserialize(d)?;
        if e.iter().any(|&x| x >= 1 << 16) {
            return Err(serde::de::Error::custom("exponent too large"));
        }
        Ok(Mono::from_exps(e))
    }
}

fn binomial(n: u32, k: u32) -> RingScalar {
    let mut acc = RingScalar::one();
    for i in 0..k {
        acc = &(&acc * &RingScalar::from_int((n - i) as i64)) / &RingScalar::from_int((i + 1) as i64);
    }
    acc
}

/// Rewrite `x11^a x12^b x21^c x22^d` into normal form, adding `coef` times
/// the result into `out`. Uses `x11^k x22^k = (x12 x21 + 1)^k`.
fn add_normalized(out: &mut BTreeMap<Mono, RingScalar>, e: [u32; 4], coef: &RingScalar) {
    let k = e[0].min(e[3]);
    if k == 0 {
        *out.entry(Mono::from_exps(e)).or_insert_with(RingScalar::zero) += coef;
        return;
    }
    for j in 0..=k {
        let m = Mono::new(e[0] - k, e[1] + j, e[2] + j, e[3] - k);
        let c = coef * &binomial(k, j);
        *out.entry(m).or_insert_with(RingScalar::zero) += &c;
    }
}

fn prune<K: Ord>(mut m: BTreeMap<K, RingScalar>) -> BTreeMap<K, RingScalar> {
    m.retain(|_, v| !v.is_zero());
    m
}

/// Generator names, in index order `x11, x12, x21, x22`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    X11,
    X12,
    X21,
    X22,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::X11, Gen::X12, Gen::X21, Gen::X22];

    pub fn at(i: usize, j: usize) -> Gen {
        match (i, j) {
            (0, 0) => Gen::X11,
            (0, 1) => Gen::X12,
            (1, 0) => Gen::X21,
            (1, 1) => Gen::X22,
            _ => panic!("generator index out of range"),
        }
    }

    pub fn index(self) -> (usize, usize) {
        match self {
            Gen::X11 => (0, 0),
            Gen::X12 => (0, 1),
            Gen::X21 => (1, 0),
            Gen::X22 => (1, 1),
        }
    }

    fn mono(self) -> Mono {
        match self {
            Gen::X11 => Mono::new(1, 0, 0, 0),
            Gen::X12 => Mono::new(0, 1, 0, 0),
            Gen::X21 => Mono::new(0, 0, 1, 0),
            Gen::X22 => Mono::new(0, 0, 0, 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HopfVariant {
    Standard,
    Opposite,
}

impl HopfVariant {
    pub fn flipped(self) -> Self {
        match self {
            HopfVariant::Standard => HopfVariant::Opposite,
            HopfVariant::Opposite => HopfVariant::Standard,
        }
    }
}

/// Algebra maps `R → R` (and the counit `R → A`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HopfMap {
    Antipode,
    Counit,
    Transpose,
    Ttilde,
}

/// Element of R in normal form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HopfPoly {
    terms: BTreeMap<Mono, RingScalar>,
}

impl HopfPoly {
    pub fn zero() -> Self {
        HopfPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(RingScalar::one())
    }

    pub fn constant(c: RingScalar) -> Self {
        Self::monomial(Mono::ONE, c)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(RingScalar::from_int(c))
    }

    pub fn gen(g: Gen) -> Self {
        Self::monomial(g.mono(), RingScalar::one())
    }

    pub fn x(i: usize, j: usize) -> Self {
        Self::gen(Gen::at(i, j))
    }

    /// `c · m`, normalizing `m` if needed.
    pub fn monomial(m: Mono, c: RingScalar) -> Self {
        Self::from_raw([(m.exps(), c)])
    }

    /// Normalize an arbitrary polynomial given as (exponents, coefficient) pairs.
    pub fn from_raw(terms: impl IntoIterator<Item = ([u32; 4], RingScalar)>) -> Self {
        let mut out = BTreeMap::new();
        for (e, c) in terms {
            if !c.is_zero() {
                add_normalized(&mut out, e, &c);
            }
        }
        HopfPoly { terms: prune(out) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Mono::ONE).is_some_and(|c| c.is_one())
    }

    /// Terms in ascending lex order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &RingScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: Mono) -> RingScalar {
        self.terms.get(&m).cloned().unwrap_or_else(RingScalar::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &RingScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        HopfPoly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Whether every coefficient lies in `ring`.
    pub fn coefficients_in(&self, ring: &BaseRing) -> bool {
        self.terms.values().all(|c| ring.contains(c))
    }

    pub fn apply(&self, map: HopfMap) -> Self {
        let f = |m: &Mono, c: &RingScalar| -> (Mono, RingScalar) {
            let [a, b, cc, d] = m.exps();
            let sign = if (b + cc) % 2 == 1 { -c.clone() } else { c.clone() };
            match map {
                HopfMap::Antipode => (Mono::new(d, b, cc, a), sign),
                HopfMap::Transpose => (Mono::new(a, cc, b, d), c.clone()),
                HopfMap::Ttilde => (Mono::new(d, cc, b, a), sign),
                HopfMap::Counit => unreachable!(),
            }
        };
        if map == HopfMap::Counit {
            return Self::constant(self.counit());
        }
        // all three maps send normal monomials to normal monomials bijectively
        HopfPoly { terms: self.terms.iter().map(|(m, c)| f(m, c)).collect() }
    }

    pub fn antipode(&self) -> Self {
        self.apply(HopfMap::Antipode)
    }

    pub fn transpose(&self) -> Self {
        self.apply(HopfMap::Transpose)
    }

    pub fn ttilde(&self) -> Self {
        self.apply(HopfMap::Ttilde)
    }

    /// Evaluation at the identity matrix.
    pub fn counit(&self) -> RingScalar {
        let mut acc = RingScalar::zero();
        for (m, c) in &self.terms {
            let [_, b, cc, _] = m.exps();
            if b == 0 && cc == 0 {
                acc += c;
            }
        }
        acc
    }

    /// Evaluate at a 2×2 matrix `g` (rows `[[g11, g12], [g21, g22]]`).
    pub fn eval(&self, g: &[[RingScalar; 2]; 2]) -> RingScalar {
        let vals = [&g[0][0], &g[0][1], &g[1][0], &g[1][1]];
        let mut acc = RingScalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in vals.iter().zip(m.exps()) {
                if e > 0 {
                    t = &t * &v.pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Derivative at the identity along the traceless direction `xi`.
    pub fn derivative_at_identity(&self, xi: &[[i64; 2]; 2]) -> RingScalar {
        let mut acc = RingScalar::zero();
        for (m, c) in &self.terms {
            let [a, b, cc, d] = m.exps();
            let dir = match (b, cc) {
                (0, 0) => a as i64 * xi[0][0] + d as i64 * xi[1][1],
                (1, 0) => xi[0][1],
                (0, 1) => xi[1][0],
                _ => 0,
            };
            if dir != 0 {
                acc += &(c * &RingScalar::from_int(dir));
            }
        }
        acc
    }

    pub fn comultiply(&self, variant: HopfVariant) -> TensorPoly {
        let mut cache: HashMap<(Gen, u32), TensorPoly> = HashMap::new();
        let mut out = TensorPoly::zero();
        for (m, c) in &self.terms {
            let mut t = TensorPoly::one().scale(c);
            for (g, e) in Gen::ALL.iter().zip(m.exps()) {
                if e == 0 {
                    continue;
                }
                let p = cache.entry((*g, e)).or_insert_with(|| delta_gen(*g).pow(e));
                t = &t * p;
            }
            out = &out + &t;
        }
        match variant {
            HopfVariant::Standard => out,
            HopfVariant::Opposite => out.flip(),
        }
    }
}

/// `Δ(x_ij) = Σ_k x_ik ⊗ x_kj`.
fn delta_gen(g: Gen) -> TensorPoly {
    let (i, j) = g.index();
    let mut t = TensorPoly::zero();
    for k in 0..2 {
        t = &t + &TensorPoly::pure(&HopfPoly::x(i, k), &HopfPoly::x(k, j));
    }
    t
}

impl fmt::Display for HopfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if *m == Mono::ONE {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}·{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HopfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &HopfPoly {
    type Output = HopfPoly;
    fn add(self, rhs: &HopfPoly) -> HopfPoly {
        let mut out = self.terms.clone();
        for (m, c) in &rhs.terms {
            *out.entry(*m).or_insert_with(RingScalar::zero) += c;
        }
        HopfPoly { terms: prune(out) }
    }
}

impl Sub for &HopfPoly {
    type Output = HopfPoly;
    fn sub(self, rhs: &HopfPoly) -> HopfPoly {
        let mut out = self.terms.clone();
        for (m, c) in &rhs.terms {
            *out.entry(*m).or_insert_with(RingScalar::zero) -= c;
        }
        HopfPoly { terms: prune(out) }
    }
}

impl Mul for &HopfPoly {
    type Output = HopfPoly;
    fn mul(self, rhs: &HopfPoly) -> HopfPoly {
        let mut out = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                add_normalized(&mut out, m1.times(*m2), &(c1 * c2));
            }
        }
        HopfPoly { terms: prune(out) }
    }
}

impl Neg for &HopfPoly {
    type Output = HopfPoly;
    fn neg(self) -> HopfPoly {
        HopfPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

macro_rules! forward_poly_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Zero for $t {
            fn zero() -> Self {
                <$t>::zero()
            }
            fn is_zero(&self) -> bool {
                <$t>::is_zero(self)
            }
        }
        impl One for $t {
            fn one() -> Self {
                <$t>::one()
            }
        }
    };
}

forward_poly_ops!(HopfPoly);

/// Element of R ⊗ R, both legs in normal form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TensorPoly {
    terms: BTreeMap<(Mono, Mono), RingScalar>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        TensorPoly::default()
    }

    pub fn one() -> Self {
        TensorPoly { terms: BTreeMap::from([((Mono::ONE, Mono::ONE), RingScalar::one())]) }
    }

    /// `p ⊗ q`.
    pub fn pure(p: &HopfPoly, q: &HopfPoly) -> Self {
        let mut terms = BTreeMap::new();
        for (m1, c1) in &p.terms {
            for (m2, c2) in &q.terms {
                terms.insert((*m1, *m2), c1 * c2);
            }
        }
        TensorPoly { terms: prune(terms) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Mono, Mono), &RingScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &RingScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TensorPoly { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// σ: swap the legs.
    pub fn flip(&self) -> Self {
        TensorPoly { terms: self.terms.iter().map(|((a, b), c)| ((*b, *a), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Apply `f ⊗ g` where both are linear maps on monomials.
    pub fn map_legs(&self, f: impl Fn(&HopfPoly) -> HopfPoly, g: impl Fn(&HopfPoly) -> HopfPoly) -> Self {
        let mut out = TensorPoly::zero();
        for ((a, b), c) in &self.terms {
            let l = f(&HopfPoly::monomial(*a, RingScalar::one()));
            let r = g(&HopfPoly::monomial(*b, RingScalar::one()));
            out = &out + &TensorPoly::pure(&l, &r).scale(c);
        }
        out
    }

    /// Multiplication map `R ⊗ R → R`.
    pub fn multiply_legs(&self) -> HopfPoly {
        let mut out = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            add_normalized(&mut out, a.times(*b), c);
        }
        HopfPoly { terms: prune(out) }
    }

    /// `(ε ⊗ 1)` when `left` is true, otherwise `(1 ⊗ ε)`.
    pub fn counit_leg(&self, left: bool) -> HopfPoly {
        let mut out = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            let (gone, kept) = if left { (a, b) } else { (b, a) };
            let e = HopfPoly::monomial(*gone, RingScalar::one()).counit();
            if !e.is_zero() {
                *out.entry(*kept).or_insert_with(RingScalar::zero) += &(c * &e);
            }
        }
        HopfPoly { terms: prune(out) }
    }

    /// Accumulate `c · (p ⊗ q)` in place.
    pub fn add_product(&mut self, p: &HopfPoly, q: &HopfPoly) {
        for (m1, c1) in &p.terms {
            for (m2, c2) in &q.terms {
                let v = c1 * c2;
                let e = self.terms.entry((*m1, *m2)).or_insert_with(RingScalar::zero);
                *e += &v;
                if e.is_zero() {
                    self.terms.remove(&(*m1, *m2));
                }
            }
        }
    }
}

impl Add for &TensorPoly {
    type Output = TensorPoly;
    fn add(self, rhs: &TensorPoly) -> TensorPoly {
        let mut out = self.terms.clone();
        for (k, c) in &rhs.terms {
            *out.entry(*k).or_insert_with(RingScalar::zero) += c;
        }
        TensorPoly { terms: prune(out) }
    }
}

impl Sub for &TensorPoly {
    type Output = TensorPoly;
    fn sub(self, rhs: &TensorPoly) -> TensorPoly {
        let mut out = self.terms.clone();
        for (k, c) in &rhs.terms {
            *out.entry(*k).or_insert_with(RingScalar::zero) -= c;
        }
        TensorPoly { terms: prune(out) }
    }
}

impl Mul for &TensorPoly {
    type Output = TensorPoly;
    fn mul(self, rhs: &TensorPoly) -> TensorPoly {
        // normalize each leg product separately, then combine
        let mut out: BTreeMap<(Mono, Mono), RingScalar> = BTreeMap::new();
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                left.clear();
                right.clear();
                add_normalized(&mut left, a1.times(*a2), &RingScalar::one());
                add_normalized(&mut right, b1.times(*b2), &RingScalar::one());
                let c = c1 * c2;
                for (l, lc) in &left {
                    for (r, rc) in &right {
                        *out.entry((*l, *r)).or_insert_with(RingScalar::zero) += &(&c * &(lc * rc));
                    }
                }
            }
        }
        TensorPoly { terms: prune(out) }
    }
}

forward_poly_ops!(TensorPoly);

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((a, b), c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·({a} ⊗ {b})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

type Triple = BTreeMap<(Mono, Mono, Mono), RingScalar>;

/// `(Δ ⊗ 1)` (`left = true`) or `(1 ⊗ Δ)` applied to a tensor.
fn expand_leg(t: &TensorPoly, variant: HopfVariant, left: bool) -> Triple {
    let mut out = Triple::new();
    for ((a, b), c) in &t.terms {
        let target = if left { a } else { b };
        let d = HopfPoly::monomial(*target, c.clone()).comultiply(variant);
        for ((x, y), v) in &d.terms {
            let key = if left { (*x, *y, *b) } else { (*a, *x, *y) };
            *out.entry(key).or_insert_with(RingScalar::zero) += v;
        }
    }
    prune(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopfCheck {
    pub name: String,
    pub passed: bool,
    /// First polynomial on which the law failed, rendered.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfReport {
    pub variant: HopfVariant,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<HopfCheck>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The four generators followed by `count` seeded random products of degree ≤ 4.
pub fn sample_polynomials(count: usize, seed: u64) -> Vec<HopfPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<HopfPoly> = Gen::ALL.iter().map(|g| HopfPoly::gen(*g)).collect();
    for _ in 0..count {
        let deg = rng.gen_range(0..=4);
        let mut p = HopfPoly::int(rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 });
        for _ in 0..deg {
            // each factor is a generator or a small combination, so normalization is exercised
            let g = HopfPoly::gen(Gen::ALL[rng.gen_range(0..4)]);
            let factor = if rng.gen_bool(0.3) {
                &g + &HopfPoly::gen(Gen::ALL[rng.gen_range(0..4)])
            } else {
                g
            };
            p = &p * &factor;
        }
        out.push(p);
    }
    out
}

fn first_failure(samples: &[HopfPoly], law: impl Fn(&HopfPoly) -> bool + Sync + Send) -> Option<String> {
    crate::par::find_first(samples.len(), |i| if law(&samples[i]) { None } else { Some(samples[i].to_string()) })
        .map(|(_, s)| s)
}

/// Check the Hopf algebra axioms on generators plus `count` random products.
pub fn verify_hopf(variant: HopfVariant, count: usize, seed: u64) -> HopfReport {
    let samples = sample_polynomials(count, seed);
    let mut checks = Vec::new();
    let mut push = |name: &str, law: &(dyn Fn(&HopfPoly) -> bool + Sync + Send)| {
        let ce = first_failure(&samples, law);
        checks.push(HopfCheck { name: name.to_string(), passed: ce.is_none(), counterexample: ce });
    };
    push("coassociativity", &|p| {
        let d = p.comultiply(variant);
        expand_leg(&d, variant, true) == expand_leg(&d, variant, false)
    });
    push("counit", &|p| {
        let d = p.comultiply(variant);
        d.counit_leg(true) == *p && d.counit_leg(false) == *p
    });
    push("antipode", &|p| {
        let d = p.comultiply(variant);
        let e = HopfPoly::constant(p.counit());
        d.map_legs(|x| x.antipode(), |x| x.clone()).multiply_legs() == e
            && d.map_legs(|x| x.clone(), |x| x.antipode()).multiply_legs() == e
    });
    push("multiplicativity", &|p| {
        let q = HopfPoly::x(0, 1) + HopfPoly::x(1, 1);
        (p * &q).comultiply(variant) == &p.comultiply(variant) * &q.comultiply(variant)
    });
    push("antipode involution", &|p| p.antipode().antipode() == *p);
    push("transpose involution", &|p| p.transpose().transpose() == *p);
    push("ttilde involution", &|p| p.ttilde().ttilde() == *p);
    push("T and S commute", &|p| p.transpose().antipode() == p.antipode().transpose());
    push("ttilde is a coalgebra map", &|p| {
        p.comultiply(variant).map_legs(|x| x.ttilde(), |x| x.ttilde()) == p.ttilde().comultiply(variant)
    });
    HopfReport { variant, samples: samples.len(), seed, checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x11() -> HopfPoly {
        HopfPoly::x(0, 0)
    }
    fn x12() -> HopfPoly {
        HopfPoly::x(0, 1)
    }
    fn x21() -> HopfPoly {
        HopfPoly::x(1, 0)
    }
    fn x22() -> HopfPoly {
        HopfPoly::x(1, 1)
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(&x11() * &x22(), &(&x12() * &x21()) + &HopfPoly::one());
        let lhs = HopfPoly::from_raw([([2, 0, 0, 1], RingScalar::one())]);
        assert_eq!(lhs, &(&x11() * &(&x12() * &x21())) + &x11());
        assert_eq!(x12().num_terms(), 1);
        assert_eq!(x12().to_string(), "1·x12");
    }

    #[test]
    fn comultiply_examples() {
        let d = x11().comultiply(HopfVariant::Standard);
        let want = &TensorPoly::pure(&x11(), &x11()) + &TensorPoly::pure(&x12(), &x21());
        assert_eq!(d, want);
        let d = x12().comultiply(HopfVariant::Opposite);
        let want = &TensorPoly::pure(&x12(), &x11()) + &TensorPoly::pure(&x22(), &x12());
        assert_eq!(d, want);
        assert_eq!(HopfPoly::one().comultiply(HopfVariant::Opposite), TensorPoly::one());
    }

    #[test]
    fn opposite_is_flip_on_generators() {
        for g in Gen::ALL {
            let p = HopfPoly::gen(g);
            assert_eq!(p.comultiply(HopfVariant::Opposite), p.comultiply(HopfVariant::Standard).flip());
        }
    }

    #[test]
    fn hopf_map_examples() {
        assert_eq!(x12().antipode(), -&x12());
        assert_eq!(x11().counit(), RingScalar::one());
        assert_eq!(x11().ttilde(), x22());
        assert_eq!(x12().ttilde(), -&x21());
        assert_eq!(x12().transpose(), x21());
    }

    #[test]
    fn axioms_hold() {
        for v in [HopfVariant::Standard, HopfVariant::Opposite] {
            let r = verify_hopf(v, 30, 7);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn broken_law_is_reported() {
        // the transpose is not an antipode: m(T ⊗ 1)Δ(x12) = x11 x21 + x21 x22 ≠ 0
        let d = x12().comultiply(HopfVariant::Standard);
        assert!(!d.map_legs(|x| x.transpose(), |x| x.clone()).multiply_legs().is_zero());
    }

    fn arb_poly() -> impl Strategy<Value = HopfPoly> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3, 0u32..3), -4i64..5), 0..5).prop_map(|ts| {
            HopfPoly::from_raw(ts.into_iter().map(|((a, b, c, d), k)| ([a, b, c, d], RingScalar::from_int(k))))
        })
    }

    fn arb_sl2() -> impl Strategy<Value = [[RingScalar; 2]; 2]> {
        // products of elementary matrices have determinant 1
        proptest::collection::vec((0usize..2, -3i64..4), 1..5).prop_map(|ops| {
            let mut g = [[1i64, 0], [0, 1]];
            for (kind, t) in ops {
                g = if kind == 0 {
                    [[g[0][0] + t * g[1][0], g[0][1] + t * g[1][1]], g[1]]
                } else {
                    [g[0], [g[1][0] + t * g[0][0], g[1][1] + t * g[0][1]]]
                };
            }
            g.map(|r| r.map(RingScalar::from_int))
        })
    }

    proptest! {
        #[test]
        fn normal_form_is_multiplicative(p in arb_poly(), q in arb_poly()) {
            for (m, _) in (&p * &q).terms() {
                prop_assert!(m.is_normal());
            }
            let raw: Vec<([u32; 4], RingScalar)> = p
                .terms()
                .flat_map(|(m1, c1)| q.terms().map(move |(m2, c2)| (m1.times(*m2), c1 * c2)))
                .collect();
            prop_assert_eq!(HopfPoly::from_raw(raw), &p * &q);
        }

        #[test]
        fn evaluation_respects_the_relation(
            raw in proptest::collection::vec(((0u32..4, 0u32..3, 0u32..3, 0u32..4), -4i64..5), 0..5),
            g in arb_sl2(),
        ) {
            let raw: Vec<([u32; 4], RingScalar)> =
                raw.into_iter().map(|((a, b, c, d), k)| ([a, b, c, d], RingScalar::from_int(k))).collect();
            let vals = [&g[0][0], &g[0][1], &g[1][0], &g[1][1]];
            let mut direct = RingScalar::zero();
            for (e, c) in &raw {
                let mut t = c.clone();
                for (v, k) in vals.iter().zip(e) {
                    t = &t * &v.pow(*k);
                }
                direct += &t;
            }
            prop_assert_eq!(HopfPoly::from_raw(raw).eval(&g), direct);
        }

        #[test]
        fn involutions(p in arb_poly()) {
            prop_assert_eq!(p.antipode().antipode(), p.clone());
            prop_assert_eq!(p.transpose().transpose(), p.clone());
            prop_assert_eq!(p.ttilde().ttilde(), p.clone());
            prop_assert_eq!(p.transpose().antipode(), p.antipode().transpose());
        }

        #[test]
        fn comultiplication_is_an_algebra_map(p in arb_poly(), q in arb_poly()) {
            let v = HopfVariant::Standard;
            prop_assert_eq!((&p * &q).comultiply(v), &p.comultiply(v) * &q.comultiply(v));
        }
    }
}
