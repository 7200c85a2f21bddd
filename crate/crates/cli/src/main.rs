use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sl2comod::comodule::{
    base_change, classical_dual, dual, exterior_square, standard, sym_power, sym_tensors, tensor, transpose, Comodule,
    Side,
};
use sl2comod::homological::{cg_filtration, find_section, pi_map};
use sl2comod::hopf::{verify_hopf, HopfVariant};
use sl2comod::isotest::{find_isomorphism_bounded, validate_verdict};
use sl2comod::json::{comodule_from_json_unchecked, comodule_to_json, load_comodule};
use sl2comod::ktheory::{k_class, virtual_cg_check};
use sl2comod::weights::{character, weight_decomposition};
use sl2comod::{BaseRing, RingScalar};

mod render;
mod scenarios;

use scenarios::{reproduce_all, run_scenario, Params, SCENARIOS};

#[derive(Parser, Debug)]
#[command(name = "sl2comod", version, about = "Exact comodule computations for SL2 over Z and its localizations")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Leave wall-clock durations out of reports.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Std,
    Op,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Right,
    Left,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Right => Side::Right,
            SideArg::Left => Side::Left,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hopf algebra checks.
    Hopf {
        #[command(subcommand)]
        action: HopfCmd,
    },
    /// Load, check and build comodules.
    Comodule {
        #[command(subcommand)]
        action: ComoduleCmd,
    },
    /// Universal Clebsch-Gordan filtration of Sym^n ⊗ Sym^m.
    CgFiltration {
        n: u32,
        m: u32,
        #[arg(long, default_value = "Z")]
        ring: BaseRing,
    },
    /// Check [Sym^n][Sym^m] = Σ [Sym^(n+m-2i)] through characters.
    VirtualCg { n: u32, m: u32 },
    /// Section of V ⊗ Sym^n → Sym^(n+1) over a ring.
    Section {
        n: u32,
        #[arg(long, default_value = "Z")]
        ring: BaseRing,
    },
    /// Weight table, character and class of a comodule file.
    Weights { file: PathBuf },
    /// Decide whether two comodule files are isomorphic over a ring.
    Iso {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long)]
        ring: Option<BaseRing>,
        #[arg(long, default_value_t = sl2comod::isotest::DEFAULT_BOUND)]
        bound: u32,
    },
    /// Run one named scenario with key=value parameters.
    Scenario {
        name: String,
        params: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run every scenario at default parameters.
    Reproduce {
        #[arg(long)]
        all: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum HopfCmd {
    Verify {
        #[arg(long, value_enum, default_value = "std")]
        variant: VariantArg,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum ComoduleCmd {
    /// Check the comodule axioms for a file (exit 1 with a witness on failure).
    Verify { file: PathBuf },
    /// Build a comodule and print (or store) it as JSON.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
        /// Write to this file instead of stdout.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        /// Base-change the result to this ring.
        #[arg(long, global = true)]
        ring: Option<BaseRing>,
    },
}

#[derive(Subcommand, Debug)]
enum BuildKind {
    /// Standard comodule V.
    Standard {
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
    },
    /// Symmetric power Sym^n(V).
    Sym { n: u32 },
    /// Symmetric tensors Sym_d(V) inside V^{⊗d}.
    Symt {
        d: u32,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
    },
    /// Module dual (flips side and Hopf variant).
    Dual { file: PathBuf },
    /// Classical dual with the same side and variant.
    ClassicalDual { file: PathBuf },
    /// Transpose comodule.
    Transpose { file: PathBuf },
    /// Exterior square.
    Wedge2 { file: PathBuf },
    /// Tensor product of two files.
    Tensor { file1: PathBuf, file2: PathBuf },
    /// Re-read a file (use with --ring to base-change).
    Load { file: PathBuf },
}

/// Exit status: 0 verified, 1 refuted, 2 usage or input error.
struct Outcome {
    value: Value,
    ok: bool,
}

fn seed_or_env(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(sl2comod::seed_from_env)
}

fn load(path: &PathBuf) -> Result<Comodule> {
    load_comodule(path).with_context(|| format!("loading {}", path.display()))
}

fn build(kind: &BuildKind) -> Result<Comodule> {
    let z = BaseRing::Integers;
    Ok(match kind {
        BuildKind::Standard { side } => standard(z, (*side).into()),
        BuildKind::Sym { n } => sym_power(z, *n),
        BuildKind::Symt { d, side } => sym_tensors(&standard(z, (*side).into()), *d)?,
        BuildKind::Dual { file } => dual(&load(file)?),
        BuildKind::ClassicalDual { file } => classical_dual(&load(file)?),
        BuildKind::Transpose { file } => transpose(&load(file)?),
        BuildKind::Wedge2 { file } => exterior_square(&load(file)?),
        BuildKind::Tensor { file1, file2 } => tensor(&load(file1)?, &load(file2)?)?,
        BuildKind::Load { file } => load(file)?,
    })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn run(cli: &Cli) -> Result<Outcome> {
    let timing = !cli.no_timing;
    Ok(match &cli.command {
        Command::Hopf { action: HopfCmd::Verify { variant, samples, seed } } => {
            let v = match variant {
                VariantArg::Std => HopfVariant::Standard,
                VariantArg::Op => HopfVariant::Opposite,
            };
            let r = verify_hopf(v, *samples, seed_or_env(*seed));
            Outcome { ok: r.passed(), value: to_value(&r) }
        }
        Command::Comodule { action: ComoduleCmd::Verify { file } } => {
            let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let v: Value = serde_json::from_str(&text).context("parsing JSON")?;
            let c = comodule_from_json_unchecked(&v)?;
            let r = c.verify();
            Outcome { ok: r.passed, value: to_value(&r) }
        }
        Command::Comodule { action: ComoduleCmd::Build { kind, out, ring } } => {
            let mut c = build(kind)?;
            if let Some(r) = ring {
                c = base_change(&c, *r)?;
            }
            let value = comodule_to_json(&c);
            if let Some(path) = out {
                sl2comod::json::store_comodule(&c, path)?;
                Outcome { ok: true, value: json!({"stored": path.display().to_string(), "rank": c.rank()}) }
            } else {
                Outcome { ok: true, value }
            }
        }
        Command::CgFiltration { n, m, ring } => {
            if *n == 0 || n > m {
                bail!("cg-filtration needs 1 ≤ n ≤ m");
            }
            let f = cg_filtration(*n, *m, *ring)?;
            let ok = f.verify()?;
            Outcome { ok, value: json!({"degrees": f.degrees(), "verified": ok, "filtration": to_value(&f)}) }
        }
        Command::VirtualCg { n, m } => {
            if *n == 0 || n > m {
                bail!("virtual-cg needs 1 ≤ n ≤ m");
            }
            let w = tensor(&sym_power(BaseRing::Integers, *n), &sym_power(BaseRing::Integers, *m))?;
            let class = k_class(&w)?;
            let holds = virtual_cg_check(*n, *m)?;
            Outcome { ok: holds, value: json!({"n": n, "m": m, "class": to_value(&class), "rendered": class.to_string(), "holds": holds}) }
        }
        Command::Section { n, ring } => {
            if *n == 0 {
                bail!("section needs n ≥ 1");
            }
            let r = find_section(&pi_map(*ring, *n)?)?;
            let predicted = ring.is_unit(&RingScalar::from_int(*n as i64 + 1));
            Outcome {
                ok: predicted == r.exists(),
                value: json!({"n": n, "ring": ring.to_string(), "predicted_section": predicted, "result": to_value(&r)}),
            }
        }
        Command::Weights { file } => {
            let c = load(file)?;
            let w = weight_decomposition(&c)?;
            let chi = character(&c)?;
            let class = k_class(&c)?;
            Outcome {
                ok: true,
                value: json!({"table": to_value(&w.table), "character": chi.to_string(), "class": to_value(&class)}),
            }
        }
        Command::Iso { file1, file2, ring, bound } => {
            let (mut a, mut b) = (load(file1)?, load(file2)?);
            if let Some(r) = ring {
                a = base_change(&a, *r)?;
                b = base_change(&b, *r)?;
            }
            let v = find_isomorphism_bounded(&a, &b, *bound)?;
            let valid = validate_verdict(&v, &a, &b)?;
            Outcome { ok: valid, value: json!({"ring": a.ring.to_string(), "verdict": to_value(&v)}) }
        }
        Command::Scenario { name, params, seed } => {
            let p = Params::parse(params)?;
            let r = run_scenario(name, &p, seed_or_env(*seed))?;
            Outcome { ok: r.passed, value: r.to_json(timing) }
        }
        Command::Reproduce { all, seed } => {
            if !all {
                bail!("use `reproduce --all` (scenarios: {})", SCENARIOS.join(", "));
            }
            let mut ok = true;
            let mut reports = Vec::new();
            for r in reproduce_all(seed_or_env(*seed)) {
                let r = r?;
                ok &= r.passed;
                reports.push(r.to_json(timing));
            }
            let failed: Vec<&Value> = reports.iter().filter(|r| r["verdict"] == "fail").map(|r| &r["scenario"]).collect();
            Outcome { ok, value: json!({"all_passed": ok, "failed": failed, "reports": reports}) }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.pretty {
                print!("{}", render::render(&out.value));
            } else {
                println!("{}", out.value);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {}", format_error(&e));
            ExitCode::from(2)
        }
    }
}

fn format_error(e: &anyhow::Error) -> String {
    e.chain().map(|c| c.to_string()).collect::<Vec<_>>().join(": ")
}
