//! Classes in the Grothendieck group, written in the basis `[Sym^d]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::comodule::{sym_power, tensor, Comodule};
use crate::error::{Error, Result};
use crate::rings::BaseRing;
use crate::weights::{character, Character};

/// Degree → multiplicity; negative multiplicities are virtual.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KClass(pub BTreeMap<u32, i64>);

impl KClass {
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, i64)>) -> Self {
        let mut m = BTreeMap::new();
        for (d, c) in terms {
            *m.entry(d).or_insert(0) += c;
        }
        m.retain(|_, c| *c != 0);
        KClass(m)
    }

    pub fn sym(d: u32) -> Self {
        Self::from_terms([(d, 1)])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rank(&self) -> i64 {
        self.0.iter().map(|(d, c)| c * (*d as i64 + 1)).sum()
    }

    pub fn to_character(&self) -> Character {
        self.0.iter().fold(Character::default(), |acc, (d, c)| &acc + &Character::of_sym(*d).scale(*c))
    }

    pub fn add(&self, other: &KClass) -> KClass {
        Self::from_terms(self.0.iter().chain(&other.0).map(|(d, c)| (*d, *c)))
    }

    pub fn sub(&self, other: &KClass) -> KClass {
        Self::from_terms(self.0.iter().map(|(d, c)| (*d, *c)).chain(other.0.iter().map(|(d, c)| (*d, -c))))
    }

    /// Product in K, computed through characters.
    pub fn mul(&self, other: &KClass) -> KClass {
        character_peel(&(&self.to_character() * &other.to_character())).expect("products of symmetric characters are symmetric")
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .rev()
            .map(|(d, c)| if *c == 1 { format!("[Sym^{d}]") } else { format!("{c}[Sym^{d}]") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Write a symmetric character as an integer combination of `χ(Sym^d)`.
pub fn character_peel(chi: &Character) -> Result<KClass> {
    if !chi.is_symmetric() {
        return Err(Error::NonSymmetricCharacter(chi.to_string()));
    }
    let mut rest = chi.clone();
    let mut out = BTreeMap::new();
    while let Some(top) = rest.top_degree() {
        if top < 0 {
            return Err(Error::Internal(format!("symmetric remainder with negative top degree: {rest}")));
        }
        let c = rest.coefficient(top);
        out.insert(top as u32, c);
        rest = &rest - &Character::of_sym(top as u32).scale(c);
    }
    Ok(KClass(out))
}

pub fn k_class(c: &Comodule) -> Result<KClass> {
    character_peel(&character(c)?)
}

/// Class of `Symⁿ ⊗ Symᵐ` against `Σ_{i=0}^{n} [Sym^{n+m−2i}]`.
pub fn virtual_cg_check(n: u32, m: u32) -> Result<bool> {
    let w = tensor(&sym_power(BaseRing::Integers, n), &sym_power(BaseRing::Integers, m))?;
    let (lo, hi) = (n.min(m), n.max(m));
    let want = KClass::from_terms((0..=lo).map(|i| (lo + hi - 2 * i, 1)));
    Ok(k_class(&w)? == want)
}
