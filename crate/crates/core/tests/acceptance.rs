//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::time::Instant;

use sl2comod::comodule::{
    base_change, classical_dual, dual, exterior_square, flip_side, standard, sym_power, sym_tensors,
    symmetry_lemma_violation, tensor, transpose, Comodule, Side,
};
use sl2comod::homological::{
    cg_filtration, check_exact, find_section, good_filtration_of_tensor, mult_map, pi_map, splitting_from_section,
    z_map, SectionResult, TensorFactor,
};
use sl2comod::hopf::{verify_hopf, HopfVariant};
use sl2comod::isotest::{find_isomorphism, intertwiner_lattice, pairwise_classification, validate_verdict, IsoVerdict};
use sl2comod::ktheory::{k_class, virtual_cg_check, KClass};
use sl2comod::matrix::{scalar_matrix, ScalarMatrix};
use sl2comod::morphism::{is_invertible_over, morphism_check};
use sl2comod::par;
use sl2comod::rings::prime_factors;
use sl2comod::weights::{dist_action, weight_decomposition, LieGen};
use sl2comod::{BaseRing, RingScalar};

const Z: BaseRing = BaseRing::Integers;
const Q: BaseRing = BaseRing::Rationals;

struct Outcome {
    passed: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome { passed, detail: detail.into(), notes: Vec::new() }
    }
}

fn seed() -> u64 {
    sl2comod::seed_from_env()
}

fn c1_hopf() -> Outcome {
    let s = seed();
    let mut failed = Vec::new();
    let mut total = 0;
    for v in [HopfVariant::Standard, HopfVariant::Opposite] {
        let r = verify_hopf(v, 100, s);
        total += r.checks.len();
        for c in r.checks.iter().filter(|c| !c.passed) {
            failed.push(format!("{v:?}/{}: {:?}", c.name, c.counterexample));
        }
    }
    Outcome::new(failed.is_empty(), format!("{total} law checks on generators + 100 products (seed {s}); failures: {failed:?}"))
}

fn c2_comodules() -> Outcome {
    let vr = standard(Z, Side::Right);
    let vl = standard(Z, Side::Left);
    let mut list: Vec<(String, Comodule)> = vec![
        ("V (right)".into(), vr.clone()),
        ("V (left)".into(), vl.clone()),
        ("V*".into(), classical_dual(&vr)),
        ("Λ²V".into(), exterior_square(&vr)),
    ];
    let mut base: Vec<(String, Comodule)> = Vec::new();
    for n in 0..=8 {
        base.push((format!("Sym^{n}"), sym_power(Z, n)));
    }
    for d in 1..=4 {
        base.push((format!("Sym_{d}(right V)"), sym_tensors(&vr, d).unwrap()));
        base.push((format!("Sym_{d}(left V)"), sym_tensors(&vl, d).unwrap()));
    }
    for (name, c) in &base {
        list.push((format!("{name}^T"), transpose(c)));
        list.push((format!("{name}*"), dual(c)));
    }
    list.extend(base);
    for n in 0..=8 {
        for m in 0..=(8 - n) {
            list.push((format!("Sym^{n}⊗Sym^{m}"), tensor(&sym_power(Z, n), &sym_power(Z, m)).unwrap()));
        }
    }
    let reports = par::map_slice(&list, |(_, c)| c.verify());
    let bad: Vec<String> =
        list.iter().zip(&reports).filter(|(_, r)| !r.passed).map(|((n, _), r)| format!("{n}: {:?}", r.failure)).collect();
    Outcome::new(bad.is_empty(), format!("{} comodules verified; failures: {bad:?}", list.len()))
}

fn c3_exactness() -> Outcome {
    let cells: Vec<(u32, u32)> = (1..=6).flat_map(|n| (n..=6).map(move |m| (n, m))).collect();
    let results = par::map_slice(&cells, |&(n, m)| {
        let r = check_exact(&[z_map(n, m).unwrap(), mult_map(n, m).unwrap()]).unwrap();
        r.exact && r.junctions.iter().all(|j| j.index.as_deref() == Some("1"))
    });
    let bad: Vec<_> = cells.iter().zip(&results).filter(|(_, ok)| !**ok).map(|(c, _)| *c).collect();
    Outcome::new(bad.is_empty(), format!("{} sequences over Z, lattice equality Im f = ker g; failures: {bad:?}", cells.len()))
}

fn c4_filtrations() -> (Outcome, Vec<((u32, u32), Vec<u32>)>) {
    let cells: Vec<(u32, u32)> = (1..=5).flat_map(|n| (n..=5).map(move |m| (n, m))).collect();
    let results = par::map_slice(&cells, |&(n, m)| -> Result<Vec<u32>, String> {
        let fz = cg_filtration(n, m, Z).map_err(|e| format!("Z: {e}"))?;
        if !fz.verify().map_err(|e| e.to_string())? {
            return Err("Z filtration does not re-verify".into());
        }
        let want: Vec<u32> = (0..=n).map(|i| n + m - 2 * i).collect();
        if fz.degrees() != want {
            return Err(format!("degrees {:?}", fz.degrees()));
        }
        for s in &fz.steps {
            let det = s.witness.det().map_err(|e| e.to_string())?;
            if !Z.is_unit(&det) {
                return Err(format!("witness det {det}"));
            }
        }
        let fq = cg_filtration(n, m, Q).map_err(|e| format!("Q: {e}"))?;
        if fq.splitting.is_none() || !fq.verify().map_err(|e| e.to_string())? {
            return Err("Q filtration does not split".into());
        }
        Ok(fz.degrees())
    });
    let mut bad = Vec::new();
    let mut degrees = Vec::new();
    for (c, r) in cells.iter().zip(results) {
        match r {
            Ok(d) => degrees.push((*c, d)),
            Err(e) => bad.push(format!("{c:?}: {e}")),
        }
    }
    (
        Outcome::new(
            bad.is_empty(),
            format!("{} cells: unimodular quotient witnesses over Z, split over Q; failures: {bad:?}", cells.len()),
        ),
        degrees,
    )
}

fn c5_virtual_cg(filtration_degrees: &[((u32, u32), Vec<u32>)]) -> Outcome {
    let cells: Vec<(u32, u32)> = (1..=6).flat_map(|n| (n..=6).map(move |m| (n, m))).collect();
    let ok = par::map_slice(&cells, |&(n, m)| virtual_cg_check(n, m).unwrap());
    let bad: Vec<_> = cells.iter().zip(&ok).filter(|(_, b)| !**b).map(|(c, _)| *c).collect();
    let mut mismatched = Vec::new();
    for ((n, m), degs) in filtration_degrees {
        let w = tensor(&sym_power(Z, *n), &sym_power(Z, *m)).unwrap();
        let from_filtration = KClass::from_terms(degs.iter().map(|d| (*d, 1)));
        if k_class(&w).unwrap() != from_filtration {
            mismatched.push((*n, *m));
        }
    }
    Outcome::new(
        bad.is_empty() && mismatched.is_empty() && !filtration_degrees.is_empty(),
        format!(
            "{} identities; {} cross-checked with filtration quotients; failures: {bad:?}, mismatches: {mismatched:?}",
            cells.len(),
            filtration_degrees.len()
        ),
    )
}

fn c6_sections() -> Outcome {
    let localized: Vec<BaseRing> = [2, 3, 5].iter().map(|p| BaseRing::localized_at(*p).unwrap()).collect();
    let inverted: Vec<BaseRing> = [2, 6].iter().map(|m| BaseRing::inverting(*m).unwrap()).collect();
    let rows = par::map_range(10, |k| -> Result<String, String> {
        let n = k as u32 + 1;
        let mut row = format!("n={n}:");
        let q = pi_map(Q, n).unwrap();
        match find_section(&q).unwrap() {
            SectionResult::Section { matrix, .. } => {
                let ok = q.matrix.mul(&matrix).unwrap() == ScalarMatrix::identity(n as usize + 2)
                    && morphism_check(&matrix, &q.target, &q.source).unwrap().passed
                    && splitting_from_section(&q, &matrix).unwrap();
                if !ok {
                    return Err(format!("n={n}: Q section does not re-verify"));
                }
                let a = RingScalar::from_parts((n as i64).into(), (n as i64 + 1).into()).unwrap();
                if !matrix.iter().any(|x| *x == a) {
                    return Err(format!("n={n}: Q section lacks the entry {a}"));
                }
                row.push_str(" Q:S");
            }
            SectionResult::NoSection { .. } => return Err(format!("n={n}: no section over Q")),
        }
        let mut expect = vec![(Z, false)];
        let primes = prime_factors(n as u64 + 1);
        for r in &localized {
            let BaseRing::LocalizedAtPrime(p) = r else { unreachable!() };
            expect.push((*r, !(n as u64 + 1).is_multiple_of(*p)));
        }
        for r in &inverted {
            let BaseRing::InvertedInteger(m) = r else { unreachable!() };
            expect.push((*r, primes.iter().all(|p| m % p == 0)));
        }
        for (ring, want) in expect {
            let got = find_section(&pi_map(ring, n).unwrap()).unwrap();
            if got.exists() != want {
                return Err(format!("n={n} over {ring}: expected section={want}, got {got:?}"));
            }
            if let SectionResult::Section { matrix, .. } = &got {
                let p = pi_map(ring, n).unwrap();
                if p.matrix.mul(matrix).unwrap() != ScalarMatrix::identity(n as usize + 2)
                    || !matrix.entries_in(&ring)
                {
                    return Err(format!("n={n} over {ring}: section does not re-verify"));
                }
            }
            row.push_str(&format!(" {ring}:{}", if got.exists() { "S" } else { "-" }));
        }
        Ok(row)
    });
    let mut bad = Vec::new();
    let mut table = Vec::new();
    for r in rows {
        match r {
            Ok(s) => table.push(s),
            Err(e) => bad.push(e),
        }
    }
    let mut o = Outcome::new(bad.is_empty(), format!("π_n for n=1..10 over Q, Z, Z_(2,3,5), Z[1/2], Z[1/6]; failures: {bad:?}"));
    o.notes = table;
    o
}

fn c7_weights() -> Outcome {
    let mut bad = Vec::new();
    for d in 0..=8u32 {
        let s = sym_power(Z, d);
        let t = weight_decomposition(&s).unwrap().table;
        let want: Vec<(i64, usize)> = (0..=d as i64).map(|i| (-(d as i64) + 2 * i, 1)).collect();
        if t.0.into_iter().collect::<Vec<_>>() != want {
            bad.push(format!("Sym^{d} weights"));
        }
        let h = dist_action(&s, LieGen::H);
        let last = d as usize;
        if h.col(last) != (0..=last).map(|i| RingScalar::from_int(if i == last { -(d as i64) } else { 0 })).collect::<Vec<_>>() {
            bad.push(format!("H(e2^{d})"));
        }
        if d >= 1 {
            let x = dist_action(&s, LieGen::X);
            let want: Vec<RingScalar> =
                (0..=last).map(|i| RingScalar::from_int(if i + 1 == last { d as i64 } else { 0 })).collect();
            if x.col(last) != want {
                bad.push(format!("x(e2^{d})"));
            }
        }
    }
    Outcome::new(bad.is_empty(), format!("Sym^d, d ≤ 8: weights -d..d step 2 of rank 1, H(e2^d) = -d e2^d, x(e2^(n+1)) = (n+1) e1 e2^n; failures: {bad:?}"))
}

fn c8_symmetry() -> Outcome {
    let bad: Vec<_> = (0..=6).filter_map(|n| symmetry_lemma_violation(n).map(|e| (n, e))).collect();
    Outcome::new(bad.is_empty(), format!("T̃(a(i)_l) = (-1)^(i+l) a(n-i)_(n-l) for all entries, n ≤ 6; failures: {bad:?}"))
}

fn paper_a() -> ScalarMatrix {
    scalar_matrix(&[&[0, 0, -2], &[0, 1, 0], &[-2, 0, 0]])
}

fn fmt_matrix(m: &ScalarMatrix) -> String {
    let rows: Vec<String> = m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect();
    format!("({})", rows.join(" / "))
}

fn hom_summary(c1: &Comodule, c2: &Comodule) -> (usize, Option<ScalarMatrix>, Option<RingScalar>) {
    let h = intertwiner_lattice(c1, c2).unwrap();
    let g = h.basis.first().cloned();
    let det = g.as_ref().map(|g| g.det().unwrap());
    (h.rank(), g, det)
}

fn is_pm(a: &ScalarMatrix, b: &ScalarMatrix) -> bool {
    a == b || *a == b.map(|x| -x.clone())
}

fn c9_sym2_iso() -> Outcome {
    let z2 = BaseRing::inverting(2).unwrap();
    let n = sym_tensors(&standard(Z, Side::Right), 2).unwrap();
    let t = transpose(&n);
    let (rank, gen, det) = hom_summary(&n, &t);
    let v_z = find_isomorphism(&n, &t).unwrap();
    let v_2 = find_isomorphism(&base_change(&n, z2).unwrap(), &base_change(&t, z2).unwrap()).unwrap();
    let same_weights = weight_decomposition(&n).unwrap().table == weight_decomposition(&t).unwrap().table;
    let gen_ok = gen.as_ref().is_some_and(|g| is_pm(g, &paper_a()));
    let det_abs = det.as_ref().map(|d| d.abs());
    let passed = rank == 1
        && gen_ok
        && det_abs == Some(RingScalar::from_int(4))
        && v_z.is_not_isomorphic()
        && v_2.is_isomorphic()
        && same_weights;
    let mut o = Outcome::new(
        passed,
        format!(
            "Hom(Sym_2, Sym_2^T) over Z: rank {rank}, generator {}, det {}; verdict Z: {}, Z[1/2]: {}; equal weight tables: {same_weights}",
            gen.as_ref().map(fmt_matrix).unwrap_or_default(),
            det.map(|d| d.to_string()).unwrap_or_default(),
            v_z.label(),
            v_2.label()
        ),
    );
    if let IsoVerdict::Isomorphic { witness } = &v_z {
        o.notes.push(format!(
            "transpose is an inner twist: unimodular intertwiner Sym_2 → Sym_2^T {} (det {})",
            fmt_matrix(witness),
            witness.det().unwrap()
        ));
    }
    // the same test with the module dual in place of the transpose
    let nl = sym_tensors(&standard(Z, Side::Left), 2).unwrap();
    let d = dual(&nl);
    let nf = flip_side(&nl);
    for (label, a, b) in [("Sym_2 → Sym_2*", &nf, &d), ("Sym_2* → Sym_2", &d, &nf)] {
        let (r, g, det) = hom_summary(a, b);
        let vz = find_isomorphism(a, b).unwrap();
        let v2 = find_isomorphism(&base_change(a, z2).unwrap(), &base_change(b, z2).unwrap()).unwrap();
        o.notes.push(format!(
            "dual reading, {label}: rank {r}, generator {}{}, det {}; verdict Z: {}, Z[1/2]: {}",
            g.as_ref().map(fmt_matrix).unwrap_or_default(),
            if g.as_ref().is_some_and(|g| is_pm(g, &paper_a())) { " (= ±A)" } else { "" },
            det.map(|d| d.to_string()).unwrap_or_default(),
            vz.label(),
            v2.label()
        ));
    }
    o
}

fn c10_descent() -> Outcome {
    let vr = standard(Z, Side::Right);
    let s2 = sym_power(Z, 2);
    let t2 = sym_tensors(&vr, 2).unwrap();
    let cs = vec![s2.clone(), transpose(&s2), t2.clone(), transpose(&t2)];
    let names = ["Sym^2", "Sym^2^T", "Sym_2", "Sym_2^T"];
    let cz = pairwise_classification(&cs, Z).unwrap();
    let mut certified = true;
    for i in 0..4 {
        for j in 0..4 {
            if i != j && cz.verdicts[i][j].is_not_isomorphic() {
                certified &= validate_verdict(&cz.verdicts[i][j], &cs[i], &cs[j]).unwrap();
            }
        }
    }
    let distinct = (0..4).all(|i| (0..4).all(|j| i == j || cz.verdicts[i][j].is_not_isomorphic()));
    let with_sym2: Vec<Comodule> = cs.iter().map(|c| base_change(c, Q).unwrap()).collect();
    let q_ok = with_sym2.iter().all(|c| find_isomorphism(c, &base_change(&s2, Q).unwrap()).unwrap().is_isomorphic());
    let classes: Vec<Vec<&str>> = cz.classes.iter().map(|c| c.iter().map(|i| names[*i]).collect()).collect();
    let mut o = Outcome::new(
        distinct && certified && q_ok,
        format!(
            "classes over Z: {classes:?}; pairwise distinct: {distinct}; all ≅ Sym^2 over Q: {q_ok}; completeness of the list: not machine-checked"
        ),
    );
    for i in 0..4 {
        for j in i + 1..4 {
            let v = &cz.verdicts[i][j];
            let extra = match v {
                IsoVerdict::Isomorphic { witness } => format!(" witness {}", fmt_matrix(witness)),
                IsoVerdict::NotIsomorphic { reason, .. } => format!(" ({reason})"),
                IsoVerdict::Unknown { reason, .. } => format!(" ({reason})"),
            };
            o.notes.push(format!("{} vs {}: {}{extra}", names[i], names[j], v.label()));
        }
    }
    let duals: Vec<Comodule> = vec![s2.clone(), flip_side(&dual(&s2)), t2.clone(), flip_side(&dual(&t2))];
    let cd = pairwise_classification(&duals, Z).unwrap();
    let dn = ["Sym^2", "Sym^2*", "Sym_2", "Sym_2*"];
    let dc: Vec<Vec<&str>> = cd.classes.iter().map(|c| c.iter().map(|i| dn[*i]).collect()).collect();
    o.notes.push(format!("dual reading: classes over Z: {dc:?}"));
    o
}

fn c11_good_filtrations() -> Outcome {
    let mut factors = Vec::new();
    for d in 0..=3 {
        factors.extend([TensorFactor::Sym(d), TensorFactor::SymDual(d), TensorFactor::SymTranspose(d)]);
    }
    let pairs: Vec<(TensorFactor, TensorFactor)> =
        factors.iter().flat_map(|a| factors.iter().map(move |b| (*a, *b))).collect();
    let results = par::map_slice(&pairs, |&(a, b)| -> Result<(), String> {
        let f = good_filtration_of_tensor(a, b, Z).map_err(|e| e.to_string())?;
        let (n, m) = (a.degree().min(b.degree()), a.degree().max(b.degree()));
        let want: Vec<u32> = (0..=n).map(|i| n + m - 2 * i).collect();
        if f.degrees() != want {
            return Err(format!("degrees {:?}", f.degrees()));
        }
        if !f.verify().map_err(|e| e.to_string())? {
            return Err("does not re-verify".into());
        }
        if !f.steps.iter().all(|s| is_invertible_over(&Z, &s.witness)) {
            return Err("non-unimodular witness".into());
        }
        Ok(())
    });
    let bad: Vec<String> =
        pairs.iter().zip(results).filter_map(|((a, b), r)| r.err().map(|e| format!("{a}⊗{b}: {e}"))).collect();
    Outcome::new(bad.is_empty(), format!("{} tensor pairs with degrees ≤ 3; failures: {bad:?}", pairs.len()))
}

fn c12_no_good_filtration() -> Outcome {
    let s2 = sym_power(Z, 2);
    let t = transpose(&s2);
    let class = k_class(&t).unwrap();
    let v = find_isomorphism(&t, &s2).unwrap();
    let mut o = Outcome::new(
        class == KClass::sym(2) && v.is_not_isomorphic(),
        format!("k_class(Sym^2^T) = {class}; find_isomorphism(Sym^2^T, Sym^2) over Z: {}", v.label()),
    );
    if let IsoVerdict::Isomorphic { witness } = &v {
        o.notes.push(format!(
            "unimodular witness {} (det {}) gives Sym^2^T a one-step good filtration",
            fmt_matrix(witness),
            witness.det().unwrap()
        ));
    }
    o
}

fn main() {
    let start = Instant::now();
    let mut results: Vec<(usize, &str, Outcome, f64)> = Vec::new();
    let mut run = |k: usize, name: &'static str, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let o = f();
        results.push((k, name, o, t.elapsed().as_secs_f64()));
    };
    run(1, "Hopf axioms", &c1_hopf);
    run(2, "comodule axioms", &c2_comodules);
    run(3, "exactness", &c3_exactness);
    let (o4, degrees) = {
        let t = Instant::now();
        let (o, d) = c4_filtrations();
        ((o, t.elapsed().as_secs_f64()), d)
    };
    results.push((4, "universal CG filtration", o4.0, o4.1));
    let mut run = |k: usize, name: &'static str, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let o = f();
        results.push((k, name, o, t.elapsed().as_secs_f64()));
    };
    run(5, "virtual CG formula", &|| c5_virtual_cg(&degrees));
    run(6, "complete-reducibility table", &c6_sections);
    run(7, "weights", &c7_weights);
    run(8, "symmetry lemma", &c8_symmetry);
    run(9, "Sym_2 vs transpose", &c9_sym2_iso);
    run(10, "descent classification", &c10_descent);
    run(11, "good filtration of tensors", &c11_good_filtrations);
    run(12, "no-good-filtration example", &c12_no_good_filtration);

    let mut failed = 0;
    for (k, name, o, secs) in &results {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        if !o.passed {
            failed += 1;
        }
        println!("criterion {k:>2} [{tag}] {name} ({secs:.2}s): {}", o.detail);
        for n in &o.notes {
            println!("      {n}");
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed, {:.1}s total ({} build)",
        results.len() - failed,
        start.elapsed().as_secs_f64(),
        if par::is_parallel() { "parallel" } else { "sequential" }
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
