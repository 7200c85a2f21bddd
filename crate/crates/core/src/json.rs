//! JSON interchange for comodules and lattices.
//!
//! A comodule is stored as
//! ```json
//! {"ring": {"kind": "Z_p", "p": 5}, "rank": 2, "side": "right", "variant": "std",
//!  "labels": ["e1", "e2"],
//!  "matrix": [[[[[1, 1], [1, 0, 0, 0]]], ...], ...]}
//! ```
//! where each matrix entry is a list of `[[num, den], [a, b, c, d]]` terms for
//! `num/den · x11^a x12^b x21^c x22^d`, sorted by exponent vector. Integers that
//! do not fit in 64 bits are written as decimal strings.

use std::path::Path;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::comodule::{Comodule, PolyMatrix, Side};
use crate::error::{Error, Result};
use crate::hopf::{HopfPoly, HopfVariant, Mono};
use crate::lattice::Lattice;
use crate::rings::{BaseRing, RingScalar};

fn int_value(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
        other => Err(Error::Parse(format!("expected integer, got {other}"))),
    }
}

pub fn ring_to_json(r: &BaseRing) -> Value {
    match r {
        BaseRing::Integers => json!({"kind": "Z"}),
        BaseRing::Rationals => json!({"kind": "Q"}),
        BaseRing::LocalizedAtPrime(p) => json!({"kind": "Z_p", "p": p}),
        BaseRing::InvertedInteger(m) => json!({"kind": "Z_inv", "m": m}),
    }
}

pub fn ring_from_json(v: &Value) -> Result<BaseRing> {
    let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| Error::Parse("ring.kind missing".into()))?;
    let num = |key: &str| {
        v.get(key).and_then(Value::as_u64).ok_or_else(|| Error::Parse(format!("ring.{key} missing for {kind}")))
    };
    match kind {
        "Z" => Ok(BaseRing::Integers),
        "Q" => Ok(BaseRing::Rationals),
        "Z_p" => BaseRing::localized_at(num("p")?),
        "Z_inv" => BaseRing::inverting(num("m")?),
        other => Err(Error::Parse(format!("unknown ring kind {other:?}"))),
    }
}

fn poly_to_json(p: &HopfPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| json!([[int_value(&c.numer()), int_value(&c.denom())], m.exps()]))
            .collect(),
    )
}

fn poly_from_json(v: &Value) -> Result<HopfPoly> {
    let terms = v.as_array().ok_or_else(|| Error::Parse("matrix entry must be a list of terms".into()))?;
    let mut out = HopfPoly::zero();
    let mut last: Option<Mono> = None;
    for t in terms {
        let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::Parse(format!("bad term {t}")))?;
        let coef = pair[0].as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::Parse(format!("bad coefficient {}", pair[0])))?;
        let c = RingScalar::from_parts(parse_int(&coef[0])?, parse_int(&coef[1])?)?;
        let e: Vec<u32> = serde_json::from_value(pair[1].clone())?;
        let e: [u32; 4] = e.try_into().map_err(|_| Error::Parse("exponent vector needs 4 entries".into()))?;
        let m = Mono::from_exps(e);
        if !m.is_normal() {
            return Err(Error::Parse(format!("monomial {m} is not in normal form (x11 and x22 together)")));
        }
        if last.is_some_and(|l| l >= m) {
            return Err(Error::Parse("terms must be sorted and distinct".into()));
        }
        last = Some(m);
        out = &out + &HopfPoly::monomial(m, c);
    }
    Ok(out)
}

pub fn comodule_to_json(c: &Comodule) -> Value {
    let matrix: Vec<Value> = (0..c.rank())
        .map(|i| Value::Array((0..c.rank()).map(|j| poly_to_json(&c.matrix[(i, j)])).collect()))
        .collect();
    json!({
        "ring": ring_to_json(&c.ring),
        "rank": c.rank(),
        "side": match c.side { Side::Right => "right", Side::Left => "left" },
        "variant": match c.variant { HopfVariant::Standard => "std", HopfVariant::Opposite => "op" },
        "labels": c.labels,
        "matrix": matrix,
    })
}

/// Parse without running the axiom gate.
pub fn comodule_from_json_unchecked(v: &Value) -> Result<Comodule> {
    let field = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing field {k:?}")));
    let ring = ring_from_json(field("ring")?)?;
    let rank = field("rank")?.as_u64().ok_or_else(|| Error::Parse("rank must be a non-negative integer".into()))? as usize;
    let side = match field("side")?.as_str() {
        Some("right") => Side::Right,
        Some("left") => Side::Left,
        _ => return Err(Error::Parse("side must be \"right\" or \"left\"".into())),
    };
    let variant = match field("variant")?.as_str() {
        Some("std") => HopfVariant::Standard,
        Some("op") => HopfVariant::Opposite,
        _ => return Err(Error::Parse("variant must be \"std\" or \"op\"".into())),
    };
    let labels: Vec<String> = serde_json::from_value(field("labels")?.clone())?;
    let rows = field("matrix")?.as_array().ok_or_else(|| Error::Parse("matrix must be a list of rows".into()))?;
    if rows.len() != rank {
        return Err(Error::Parse(format!("matrix has {} rows for rank {rank}", rows.len())));
    }
    let mut data = Vec::with_capacity(rank);
    for r in rows {
        let r = r.as_array().filter(|r| r.len() == rank).ok_or_else(|| Error::Parse(format!("each row needs {rank} entries")))?;
        data.push(r.iter().map(poly_from_json).collect::<Result<Vec<_>>>()?);
    }
    Comodule::new_unchecked(ring, side, variant, PolyMatrix::from_rows(data, rank)?, labels)
}

/// Parse and require the comodule axioms to hold.
pub fn comodule_from_json(v: &Value) -> Result<Comodule> {
    let c = comodule_from_json_unchecked(v)?;
    let r = c.verify();
    match r.failure {
        None => Ok(c),
        Some(w) => Err(Error::AxiomFailure(format!("{} at ({}, {}): {}", w.axiom, w.row, w.col, w.detail))),
    }
}

pub fn comodule_to_string(c: &Comodule) -> String {
    serde_json::to_string(&comodule_to_json(c)).expect("serializable")
}

pub fn store_comodule(c: &Comodule, path: impl AsRef<Path>) -> Result<()> {
    let mut s = serde_json::to_string_pretty(&comodule_to_json(c))?;
    s.push('\n');
    std::fs::write(path, s)?;
    Ok(())
}

pub fn load_comodule(path: impl AsRef<Path>) -> Result<Comodule> {
    let text = std::fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&text)?;
    comodule_from_json(&v)
}

impl Serialize for Comodule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        comodule_to_json(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Comodule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        comodule_from_json(&v).map_err(D::Error::custom)
    }
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let basis: Vec<Vec<Value>> = self.basis().iter().map(|r| r.iter().map(int_value).collect()).collect();
        json!({"ambient": self.ambient_rank(), "basis": basis}).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        let ambient = v.get("ambient").and_then(Value::as_u64).ok_or_else(|| D::Error::custom("ambient missing"))? as usize;
        let rows = v.get("basis").and_then(Value::as_array).ok_or_else(|| D::Error::custom("basis missing"))?;
        let mut gens = Vec::new();
        for r in rows {
            let r = r.as_array().ok_or_else(|| D::Error::custom("basis rows must be lists"))?;
            gens.push(r.iter().map(parse_int).collect::<Result<Vec<_>>>().map_err(D::Error::custom)?);
        }
        Lattice::new(ambient, gens).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodule::{base_change, standard, sym_power, transpose};

    #[test]
    fn round_trip_is_exact() {
        for c in [
            standard(BaseRing::Integers, Side::Right),
            standard(BaseRing::Integers, Side::Left),
            transpose(&sym_power(BaseRing::Integers, 3)),
            base_change(&sym_power(BaseRing::Integers, 2), BaseRing::inverting(6).unwrap()).unwrap(),
        ] {
            let s = comodule_to_string(&c);
            let back = comodule_from_json(&serde_json::from_str(&s).unwrap()).unwrap();
            assert_eq!(back, c);
            assert_eq!(comodule_to_string(&back), s);
        }
    }

    #[test]
    fn corrupted_entry_is_rejected() {
        let mut v = comodule_to_json(&standard(BaseRing::Integers, Side::Right));
        v["matrix"][0][0] = json!([[[2, 1], [1, 0, 0, 0]]]);
        let err = comodule_from_json(&v).unwrap_err();
        assert!(matches!(err, Error::AxiomFailure(_)), "{err}");
        v["matrix"][0][0] = json!([[[1, 1], [1, 0, 0, 1]]]);
        assert!(matches!(comodule_from_json(&v), Err(Error::Parse(_))));
    }

    #[test]
    fn lattice_round_trip() {
        let l = Lattice::from_i64(3, &[&[2, 0, 1], &[0, 3, 0]]).unwrap();
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(serde_json::from_str::<Lattice>(&s).unwrap(), l);
    }
}
