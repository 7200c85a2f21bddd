//! Named end-to-end checks with JSON evidence.

use std::collections::BTreeMap;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use sl2comod::comodule::{
    base_change, classical_dual, dual, exterior_square, flip_side, standard, sym_power, sym_tensors,
    symmetry_lemma_violation, tensor, transpose, Comodule, Side,
};
use sl2comod::homological::{
    cg_filtration, check_exact, find_section, good_filtration_of_tensor, mult_map, pi_map, z_map, TensorFactor,
};
use sl2comod::hopf::{verify_hopf, HopfVariant};
use sl2comod::isotest::{find_isomorphism, pairwise_classification, validate_verdict, IsoVerdict};
use sl2comod::ktheory::{k_class, virtual_cg_check, KClass};
use sl2comod::par;
use sl2comod::weights::{character, weight_decomposition};
use sl2comod::{BaseRing, RingScalar};

pub const SCENARIOS: [&str; 12] = [
    "hopf-axioms",
    "comodule-axioms",
    "exact-sequence",
    "cg-filtration",
    "virtual-cg",
    "section-table",
    "weights",
    "symmetry-lemma",
    "good-filtration-tensor",
    "sym2-iso",
    "descent-classification",
    "no-good-filtration",
];

/// `key=value` parameters with typed accessors and defaults.
#[derive(Clone, Debug, Default)]
pub struct Params(pub BTreeMap<String, String>);

impl Params {
    pub fn parse(items: &[String]) -> Result<Self> {
        let mut m = BTreeMap::new();
        for it in items {
            let (k, v) = it.split_once('=').ok_or_else(|| anyhow!("parameter {it:?} is not key=value"))?;
            m.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Params(m))
    }

    fn u32(&self, key: &str, default: u32) -> Result<u32> {
        match self.0.get(key) {
            None => Ok(default),
            Some(v) => v.parse().with_context(|| format!("parameter {key}={v} is not a non-negative integer")),
        }
    }

    fn str<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.0.get(key).map(String::as_str).unwrap_or(default)
    }

    /// `ring=Z_inv:2`, or `ring=Z_inv m=2` / `ring=Z_p p=5`.
    fn ring(&self, default: &str) -> Result<BaseRing> {
        let r = self.str("ring", default);
        let full = match r {
            "Z_inv" => format!("Z_inv:{}", self.0.get("m").ok_or_else(|| anyhow!("ring=Z_inv needs m=<int>"))?),
            "Z_p" => format!("Z_p:{}", self.0.get("p").ok_or_else(|| anyhow!("ring=Z_p needs p=<prime>"))?),
            other => other.to_string(),
        };
        full.parse::<BaseRing>().map_err(|e| anyhow!("{e}"))
    }

    fn check_known(&self, scenario: &str, allowed: &[&str]) -> Result<()> {
        for k in self.0.keys() {
            if !allowed.contains(&k.as_str()) {
                bail!("scenario {scenario} does not take parameter {k:?} (allowed: {})", allowed.join(", "));
            }
        }
        Ok(())
    }

    fn to_json(&self) -> Value {
        json!(self.0)
    }
}

#[derive(Clone, Debug)]
pub struct ScenarioReport {
    pub scenario: String,
    pub parameters: Value,
    pub passed: bool,
    pub evidence: Value,
    pub duration_ms: u128,
}

impl ScenarioReport {
    pub fn to_json(&self, timing: bool) -> Value {
        let mut v = json!({
            "scenario": self.scenario,
            "parameters": self.parameters,
            "verdict": if self.passed { "pass" } else { "fail" },
            "evidence": self.evidence,
        });
        if timing {
            v["duration_ms"] = json!(self.duration_ms as u64);
        }
        v
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Run a scenario. Errors are usage problems (unknown name, bad parameters).
pub fn run_scenario(name: &str, params: &Params, seed: u64) -> Result<ScenarioReport> {
    let start = Instant::now();
    let (passed, evidence) = match name {
        "hopf-axioms" => hopf_axioms(params, seed)?,
        "comodule-axioms" => comodule_axioms(params)?,
        "exact-sequence" => exact_sequence(params)?,
        "cg-filtration" => cg(params)?,
        "virtual-cg" => virtual_cg(params)?,
        "section-table" => section_table(params)?,
        "weights" => weights(params)?,
        "symmetry-lemma" => symmetry(params)?,
        "good-filtration-tensor" => good_tensor(params)?,
        "sym2-iso" => sym2_iso(params)?,
        "descent-classification" => descent(params)?,
        "no-good-filtration" => no_good(params)?,
        other => bail!("unknown scenario {other:?}; known: {}", SCENARIOS.join(", ")),
    };
    Ok(ScenarioReport {
        scenario: name.to_string(),
        parameters: params.to_json(),
        passed,
        evidence,
        duration_ms: start.elapsed().as_millis(),
    })
}

fn hopf_axioms(p: &Params, seed: u64) -> Result<(bool, Value)> {
    p.check_known("hopf-axioms", &["samples"])?;
    let samples = p.u32("samples", 100)? as usize;
    let reports: Vec<_> = [HopfVariant::Standard, HopfVariant::Opposite].iter().map(|v| verify_hopf(*v, samples, seed)).collect();
    let ok = reports.iter().all(|r| r.passed());
    Ok((ok, json!({"seed": seed, "reports": to_value(&reports)})))
}

fn comodule_axioms(p: &Params) -> Result<(bool, Value)> {
    p.check_known("comodule-axioms", &["nmax", "dmax"])?;
    let (nmax, dmax) = (p.u32("nmax", 8)?, p.u32("dmax", 4)?);
    let z = BaseRing::Integers;
    let vr = standard(z, Side::Right);
    let mut list: Vec<(String, Comodule)> = vec![
        ("V".into(), vr.clone()),
        ("V(left)".into(), standard(z, Side::Left)),
        ("V*".into(), classical_dual(&vr)),
        ("wedge2".into(), exterior_square(&vr)),
    ];
    let mut base = Vec::new();
    for n in 0..=nmax {
        base.push((format!("Sym^{n}"), sym_power(z, n)));
    }
    for d in 1..=dmax {
        base.push((format!("Sym_{d}"), sym_tensors(&vr, d)?));
    }
    for (name, c) in &base {
        list.push((format!("{name}^T"), transpose(c)));
        list.push((format!("{name}*"), dual(c)));
    }
    list.extend(base);
    for n in 0..=nmax {
        for m in 0..=(nmax - n) {
            list.push((format!("Sym^{n}⊗Sym^{m}"), tensor(&sym_power(z, n), &sym_power(z, m))?));
        }
    }
    let reports = par::map_slice(&list, |(_, c)| c.verify());
    let failures: Vec<Value> = list
        .iter()
        .zip(&reports)
        .filter(|(_, r)| !r.passed)
        .map(|((n, _), r)| json!({"comodule": n, "report": to_value(r)}))
        .collect();
    Ok((failures.is_empty(), json!({"checked": list.len(), "failures": failures})))
}

fn exact_sequence(p: &Params) -> Result<(bool, Value)> {
    p.check_known("exact-sequence", &["n", "m", "nmax"])?;
    let cells: Vec<(u32, u32)> = match (p.0.get("n"), p.0.get("m")) {
        (Some(_), Some(_)) => vec![(p.u32("n", 1)?, p.u32("m", 1)?)],
        _ => {
            let nmax = p.u32("nmax", 6)?;
            (1..=nmax).flat_map(|n| (n..=nmax).map(move |m| (n, m))).collect()
        }
    };
    if cells.iter().any(|(n, m)| *n == 0 || n > m) {
        bail!("exact-sequence needs 1 ≤ n ≤ m");
    }
    let reports = par::map_slice(&cells, |&(n, m)| -> sl2comod::Result<_> { check_exact(&[z_map(n, m)?, mult_map(n, m)?]) });
    let mut ok = true;
    let mut rows = Vec::new();
    for ((n, m), r) in cells.iter().zip(reports) {
        let r = r?;
        ok &= r.exact;
        rows.push(json!({"n": n, "m": m, "report": to_value(&r)}));
    }
    Ok((ok, json!({"sequences": rows})))
}

fn cg(p: &Params) -> Result<(bool, Value)> {
    p.check_known("cg-filtration", &["n", "m", "ring", "p"])?;
    let (n, m) = (p.u32("n", 2)?, p.u32("m", 3)?);
    let ring = p.ring("Z")?;
    if n == 0 || n > m {
        bail!("cg-filtration needs 1 ≤ n ≤ m");
    }
    let f = cg_filtration(n, m, ring)?;
    let want: Vec<u32> = (0..=n).map(|i| n + m - 2 * i).collect();
    let ok = f.verify()? && f.degrees() == want && (!ring.is_field() || f.splitting.is_some());
    Ok((ok, json!({"degrees": f.degrees(), "filtration": to_value(&f)})))
}

fn virtual_cg(p: &Params) -> Result<(bool, Value)> {
    p.check_known("virtual-cg", &["n", "m"])?;
    let (n, m) = (p.u32("n", 2)?, p.u32("m", 3)?);
    if n == 0 || n > m {
        bail!("virtual-cg needs 1 ≤ n ≤ m");
    }
    let w = tensor(&sym_power(BaseRing::Integers, n), &sym_power(BaseRing::Integers, m))?;
    let class = k_class(&w)?;
    let holds = virtual_cg_check(n, m)?;
    Ok((holds, json!({"class": to_value(&class), "rendered": class.to_string()})))
}

fn section_table(p: &Params) -> Result<(bool, Value)> {
    p.check_known("section-table", &["nmax", "ring", "p", "m"])?;
    let nmax = p.u32("nmax", 5)?;
    let ring = p.ring("Z")?;
    let results = par::map_range(nmax as usize, |k| -> sl2comod::Result<_> {
        let n = k as u32 + 1;
        let r = find_section(&pi_map(ring, n)?)?;
        // a section exists exactly when n + 1 is invertible
        let predicted = ring.is_unit(&RingScalar::from_int(n as i64 + 1));
        Ok((n, predicted, r))
    });
    let mut ok = true;
    let mut rows = Vec::new();
    for r in results {
        let (n, predicted, res) = r?;
        ok &= predicted == res.exists();
        rows.push(json!({"n": n, "section": res.exists(), "predicted": predicted, "result": to_value(&res)}));
    }
    Ok((ok, json!({"ring": ring.to_string(), "rows": rows})))
}

fn weights(p: &Params) -> Result<(bool, Value)> {
    p.check_known("weights", &["dmax"])?;
    let dmax = p.u32("dmax", 8)?;
    let mut ok = true;
    let mut rows = Vec::new();
    for d in 0..=dmax {
        let s = sym_power(BaseRing::Integers, d);
        let w = weight_decomposition(&s)?;
        let want: Vec<(i64, usize)> = (0..=d as i64).map(|i| (-(d as i64) + 2 * i, 1)).collect();
        ok &= w.table.0.clone().into_iter().collect::<Vec<_>>() == want;
        rows.push(json!({"d": d, "character": character(&s)?.to_string(), "table": to_value(&w.table)}));
    }
    Ok((ok, json!({"sym": rows})))
}

fn symmetry(p: &Params) -> Result<(bool, Value)> {
    p.check_known("symmetry-lemma", &["nmax"])?;
    let nmax = p.u32("nmax", 6)?;
    let v: Vec<Value> = (0..=nmax)
        .filter_map(|n| symmetry_lemma_violation(n).map(|(i, l)| json!({"n": n, "i": i, "l": l})))
        .collect();
    Ok((v.is_empty(), json!({"nmax": nmax, "violations": v})))
}

fn good_tensor(p: &Params) -> Result<(bool, Value)> {
    p.check_known("good-filtration-tensor", &["dmax", "left", "right"])?;
    let pairs: Vec<(TensorFactor, TensorFactor)> = match (p.0.get("left"), p.0.get("right")) {
        (Some(a), Some(b)) => vec![(a.parse().map_err(|e| anyhow!("{e}"))?, b.parse().map_err(|e| anyhow!("{e}"))?)],
        _ => {
            let dmax = p.u32("dmax", 3)?;
            let fs: Vec<TensorFactor> = (0..=dmax)
                .flat_map(|d| [TensorFactor::Sym(d), TensorFactor::SymDual(d), TensorFactor::SymTranspose(d)])
                .collect();
            fs.iter().flat_map(|a| fs.iter().map(move |b| (*a, *b))).collect()
        }
    };
    let results = par::map_slice(&pairs, |&(a, b)| -> sl2comod::Result<(bool, Vec<u32>)> {
        let f = good_filtration_of_tensor(a, b, BaseRing::Integers)?;
        Ok((f.verify()?, f.degrees()))
    });
    let mut ok = true;
    let mut rows = Vec::new();
    for ((a, b), r) in pairs.iter().zip(results) {
        let row = match r {
            Ok((verified, degrees)) => {
                ok &= verified;
                json!({"pair": format!("{a} ⊗ {b}"), "verified": verified, "quotients": degrees})
            }
            Err(e) => {
                ok = false;
                json!({"pair": format!("{a} ⊗ {b}"), "error": e.to_string()})
            }
        };
        rows.push(row);
    }
    Ok((ok, json!({"pairs": rows})))
}

/// `against=transpose` compares with the transpose, `against=dual` with the module dual.
fn partner(c: &Comodule, against: &str) -> Result<Comodule> {
    match against {
        "transpose" => Ok(transpose(c)),
        "dual" => Ok(flip_side(&dual(c))),
        other => bail!("against must be transpose or dual, got {other:?}"),
    }
}

fn verdict_json(v: &IsoVerdict) -> Value {
    to_value(v)
}

fn sym2_iso(p: &Params) -> Result<(bool, Value)> {
    p.check_known("sym2-iso", &["ring", "p", "m", "against"])?;
    let ring = p.ring("Z")?;
    let against = p.str("against", "transpose");
    let sym2 = match against {
        // the dual of a left comodule is a right comodule; start from the left one
        "dual" => flip_side(&sym_tensors(&standard(BaseRing::Integers, Side::Left), 2)?),
        _ => sym_tensors(&standard(BaseRing::Integers, Side::Right), 2)?,
    };
    let other = match against {
        "dual" => dual(&sym_tensors(&standard(BaseRing::Integers, Side::Left), 2)?),
        _ => partner(&sym2, against)?,
    };
    let (a, b) = (base_change(&sym2, ring)?, base_change(&other, ring)?);
    let v = find_isomorphism(&a, &b)?;
    let valid = validate_verdict(&v, &a, &b)?;
    let two_is_unit = ring.is_unit(&RingScalar::from_int(2));
    let expected = if two_is_unit { "Isomorphic" } else { "NotIsomorphic" };
    let same_weights = weight_decomposition(&a)?.table == weight_decomposition(&b)?.table;
    let ok = valid && v.label() == expected && same_weights;
    Ok((
        ok,
        json!({"ring": ring.to_string(), "against": against, "expected": expected, "verdict": verdict_json(&v),
               "verdict_revalidated": valid, "equal_weight_tables": same_weights}),
    ))
}

fn descent(p: &Params) -> Result<(bool, Value)> {
    p.check_known("descent-classification", &["against"])?;
    let against = p.str("against", "transpose");
    let z = BaseRing::Integers;
    let s2 = sym_power(z, 2);
    let t2 = sym_tensors(&standard(z, Side::Right), 2)?;
    let cs = vec![s2.clone(), partner(&s2, against)?, t2.clone(), partner(&t2, against)?];
    let mark = if against == "dual" { "*" } else { "^T" };
    let names = vec!["Sym^2".to_string(), format!("Sym^2{mark}"), "Sym_2".to_string(), format!("Sym_2{mark}")];
    let cz = pairwise_classification(&cs, z)?;
    let distinct = cz.classes.len() == cs.len();
    let q = BaseRing::Rationals;
    let s2q = base_change(&s2, q)?;
    let over_q: Vec<bool> = cs
        .iter()
        .map(|c| find_isomorphism(&base_change(c, q)?, &s2q).map(|v| v.is_isomorphic()))
        .collect::<sl2comod::Result<_>>()?;
    let ok = distinct && over_q.iter().all(|b| *b);
    let classes: Vec<Vec<&String>> = cz.classes.iter().map(|c| c.iter().map(|i| &names[*i]).collect()).collect();
    Ok((
        ok,
        json!({"comodules": names, "classes_over_Z": classes, "table": to_value(&cz.verdicts),
               "isomorphic_to_sym2_over_Q": over_q, "completeness": "not machine-checked"}),
    ))
}

fn no_good(p: &Params) -> Result<(bool, Value)> {
    p.check_known("no-good-filtration", &[])?;
    let s2 = sym_power(BaseRing::Integers, 2);
    let t = transpose(&s2);
    let class = k_class(&t)?;
    let v = find_isomorphism(&t, &s2)?;
    let ok = class == KClass::sym(2) && v.is_not_isomorphic();
    Ok((ok, json!({"class": to_value(&class), "verdict": verdict_json(&v)})))
}

/// Run every scenario with default parameters.
pub fn reproduce_all(seed: u64) -> Vec<Result<ScenarioReport>> {
    let empty = Params::default();
    par::map_slice(&SCENARIOS, |name| run_scenario(name, &empty, seed))
}
