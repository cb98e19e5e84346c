use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use knotgenus::bounds::{analyze, sig_arf_obstruction, Options, RuleSet, SignConvention};
use knotgenus::exactalg::{det, signature, smith_normal_form};
use knotgenus::knotio::{load_certificates, load_dataset, parse_pd, KnotRecord, PdCode};
use knotgenus::linkform::{generator_values, linking_form, Verdict};
use knotgenus::planar::{goeritz_with, Convention, OuterChoice};
use knotgenus::report::{Inputs, Report};
use knotgenus::Status;

/// Bounds on the non-orientable 4-genus of knots.
#[derive(Parser)]
#[command(name = "knotgenus", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Which of ±G⁻¹ is the linking form.
    #[arg(long, global = true, value_enum, default_value_t = SignArg::Auto)]
    sign_convention: SignArg,
    /// Let the Klein bottle discriminant raise lower bounds from 2 to 3.
    #[arg(long, global = true)]
    enable_klein: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Auto,
    #[value(name = "fixed+")]
    FixedPlus,
    #[value(name = "fixed-")]
    FixedMinus,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print G′, G, μ, det G and the Smith form of G.
    Goeritz(KnotArgs),
    /// Print H₁ of the double branched cover and its linking form.
    Linkform(KnotArgs),
    /// Run every obstruction on one knot.
    Obstruct(KnotArgs),
    /// Classify a dataset and write a JSON report.
    Classify(ClassifyArgs),
    /// Classify and check the 121 / 58 / 6 split of the 11-crossing table.
    VerifyTheorem(ClassifyArgs),
}

#[derive(Args)]
struct KnotArgs {
    /// Inline PD code, e.g. "PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]".
    #[arg(long, conflicts_with = "knot")]
    pd: Option<String>,
    /// File holding a PD code.
    #[arg(long, conflicts_with_all = ["pd", "knot"])]
    pd_file: Option<PathBuf>,
    /// Knot name to look up in --dataset.
    #[arg(long, requires = "dataset")]
    knot: Option<String>,
    #[arg(long)]
    dataset: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, required_unless_present = "replay")]
    dataset: Option<PathBuf>,
    #[arg(long, required_unless_present = "replay")]
    certificates: Option<PathBuf>,
    /// Where to write the JSON report.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write a one-row-per-knot CSV summary.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Re-run from the inputs echoed in an earlier report.
    #[arg(long, conflicts_with_all = ["dataset", "certificates"])]
    replay: Option<PathBuf>,
}

/// Failure with its exit code.
#[derive(Debug)]
struct Fail {
    code: u8,
    err: anyhow::Error,
}

impl Fail {
    fn diagram(err: impl Into<anyhow::Error>) -> Self {
        Fail {
            code: 2,
            err: err.into(),
        }
    }
    fn lookup(err: impl Into<anyhow::Error>) -> Self {
        Fail {
            code: 3,
            err: err.into(),
        }
    }
    fn inconsistent(err: impl Into<anyhow::Error>) -> Self {
        Fail {
            code: 4,
            err: err.into(),
        }
    }
}

impl From<anyhow::Error> for Fail {
    fn from(err: anyhow::Error) -> Self {
        Fail { code: 1, err }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        convention: Convention::CALIBRATED,
        sign: match cli.sign_convention {
            SignArg::Auto => SignConvention::Auto,
            SignArg::FixedPlus => SignConvention::FixedPlus,
            SignArg::FixedMinus => SignConvention::FixedMinus,
        },
        rules: RuleSet {
            klein: cli.enable_klein,
        },
    };
    let res = match &cli.cmd {
        Cmd::Goeritz(a) => cmd_goeritz(a),
        Cmd::Linkform(a) => cmd_linkform(a, &opts),
        Cmd::Obstruct(a) => cmd_obstruct(a, &opts),
        Cmd::Classify(a) => cmd_classify(a, &opts).map(|_| ()),
        Cmd::VerifyTheorem(a) => cmd_verify(a, &opts),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}

fn read_dataset(path: &Path) -> Result<Vec<KnotRecord>, Fail> {
    load_dataset(path)
        .with_context(|| format!("loading {}", path.display()))
        .map_err(Fail::inconsistent)
}

/// The diagram named by the arguments, plus its record when looked up.
fn knot_input(a: &KnotArgs) -> Result<(PdCode, Option<KnotRecord>), Fail> {
    if let Some(text) = &a.pd {
        return Ok((parse_pd(text).map_err(Fail::diagram)?, None));
    }
    if let Some(path) = &a.pd_file {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok((parse_pd(&text).map_err(Fail::diagram)?, None));
    }
    let (Some(name), Some(ds)) = (&a.knot, &a.dataset) else {
        return Err(anyhow::anyhow!("give --pd, --pd-file or --knot with --dataset").into());
    };
    let rec = read_dataset(ds)?
        .into_iter()
        .find(|r| &r.name == name)
        .ok_or_else(|| Fail::lookup(anyhow::anyhow!("no knot named {name} in {}", ds.display())))?;
    let pd = rec
        .pd
        .clone()
        .ok_or_else(|| Fail::lookup(anyhow::anyhow!("{name} has no PD code")))?;
    Ok((pd, Some(rec)))
}

fn cmd_goeritz(a: &KnotArgs) -> Result<(), Fail> {
    let (pd, _) = knot_input(a)?;
    let gd = goeritz_with(&pd, OuterChoice::Auto, Convention::CALIBRATED).map_err(Fail::diagram)?;
    let d = det(&gd.g).map_err(Fail::diagram)?;
    let snf = smith_normal_form(&gd.g);
    let diag: Vec<String> = snf.diagonal().iter().map(|x| x.to_string()).collect();
    println!("G' =\n{}", gd.gfull);
    println!("G =\n{}", gd.g);
    println!("mu = {}", gd.mu);
    println!("det G = {d}");
    println!("SNF(G) = diag({})", diag.join(", "));
    if let Ok(s) = signature(&gd.g) {
        println!("sig(G) - mu = {}", s - gd.mu);
    }
    Ok(())
}

fn cmd_linkform(a: &KnotArgs, opts: &Options) -> Result<(), Fail> {
    let (pd, _) = knot_input(a)?;
    let gd = goeritz_with(&pd, OuterChoice::Auto, opts.convention).map_err(Fail::diagram)?;
    let sign = match opts.sign {
        SignConvention::Auto => 1,
        SignConvention::FixedPlus => opts.convention.eta_sign,
        SignConvention::FixedMinus => -opts.convention.eta_sign,
    };
    let f = linking_form(&gd.g).map_err(Fail::diagram)?.with_sign(sign);
    println!("H1 = {}", f.group());
    for row in f.values() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        println!("  [{}]", cells.join(", "));
    }
    if f.group().is_cyclic() && f.group().order() > 1 {
        let orbit: Vec<String> = generator_values(&f)
            .map_err(Fail::diagram)?
            .iter()
            .map(|v| v.to_string())
            .collect();
        println!("generator self-linkings: {{{}}}", orbit.join(", "));
    }
    Ok(())
}

fn cmd_obstruct(a: &KnotArgs, opts: &Options) -> Result<(), Fail> {
    let (pd, rec) = knot_input(a)?;
    let rec = match rec {
        Some(r) => r,
        None => {
            return Err(Fail::lookup(anyhow::anyhow!(
                "obstruct needs --knot with --dataset for σ and Arf"
            )));
        }
    };
    let rec = KnotRecord { pd: Some(pd), ..rec };
    let an = analyze(&rec, opts).map_err(Fail::diagram)?;
    if let Some(f) = &an.form {
        println!("{}: H1 = {}", rec.name, f.group());
    }
    for v in &an.verdicts {
        let shown = match v.result {
            Verdict::Obstructed => "Obstructed",
            Verdict::NotObstructed => "NotObstructed",
            Verdict::Inapplicable => "Inapplicable",
        };
        println!("{}: {shown} ({})", v.test.id(), v.detail);
    }
    let sa = sig_arf_obstruction(rec.signature, rec.arf).map_err(Fail::inconsistent)?;
    println!(
        "sig-arf: σ = {}, Arf = {}, σ + 4Arf {} 4 (mod 8)",
        rec.signature,
        rec.arf,
        if sa { "≡" } else { "≢" }
    );
    Ok(())
}

fn build_report(a: &ClassifyArgs, opts: &Options) -> Result<Report, Fail> {
    let report = if let Some(path) = &a.replay {
        let json = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Report::replay(&json).map_err(Fail::inconsistent)?
    } else {
        let ds = a.dataset.as_ref().expect("clap enforces --dataset");
        let cs = a.certificates.as_ref().expect("clap enforces --certificates");
        let records = read_dataset(ds)?;
        let certificates = load_certificates(cs)
            .with_context(|| format!("loading {}", cs.display()))
            .map_err(Fail::inconsistent)?;
        Report::build(Inputs {
            options: *opts,
            records,
            certificates,
        })
        .map_err(Fail::inconsistent)?
    };
    if let Some(out) = &a.out {
        fs::write(out, report.to_json()).with_context(|| format!("writing {}", out.display()))?;
    }
    if let Some(out) = &a.csv {
        fs::write(out, report.summary_csv()).with_context(|| format!("writing {}", out.display()))?;
    }
    Ok(report)
}

fn print_summary(r: &Report) {
    let s = &r.summary;
    println!("knots: {}", s.total);
    for (v, n) in &s.determined {
        println!("determined gamma4 = {v}: {n}");
    }
    println!("undetermined: {}", s.undetermined);
    println!("inconsistent: {}", s.inconsistent);
    for u in &r.unresolved {
        println!(
            "unresolved certificate {} -> {}: {}",
            u.cert.source, u.cert.target, u.why
        );
    }
}

fn cmd_classify(a: &ClassifyArgs, opts: &Options) -> Result<Report, Fail> {
    let report = build_report(a, opts)?;
    print_summary(&report);
    let slice_bad: Vec<&str> = report
        .inputs
        .records
        .iter()
        .filter(|r| r.slice)
        .filter_map(|r| report.entry(&r.name))
        .filter(|e| (e.lower, e.upper) != (1, Some(1)))
        .map(|e| e.name.as_str())
        .collect();
    let bad: Vec<String> = report
        .inconsistent()
        .map(|e| {
            format!(
                "{} [{}, {}]",
                e.name,
                e.lower,
                e.upper.map_or("?".into(), |u| u.to_string())
            )
        })
        .chain(slice_bad.iter().map(|n| format!("{n} is slice but not [1, 1]")))
        .collect();
    if !bad.is_empty() {
        return Err(Fail::inconsistent(anyhow::anyhow!(
            "inconsistent bounds: {}",
            bad.join("; ")
        )));
    }
    Ok(report)
}

const THEOREM: [(&str, usize); 3] = [("gamma4 = 1", 121), ("gamma4 = 2", 58), ("undetermined", 6)];

fn cmd_verify(a: &ClassifyArgs, opts: &Options) -> Result<(), Fail> {
    let report = cmd_classify(a, opts)?;
    let s = &report.summary;
    let got = [s.determined_at(1), s.determined_at(2), s.undetermined];
    let mut ok = s.total == 185;
    println!("total: {} (expected 185)", s.total);
    for ((label, want), got) in THEOREM.iter().zip(got) {
        let mark = if got == *want { "ok" } else { "MISMATCH" };
        ok &= got == *want;
        println!("{label}: {got} (expected {want}) {mark}");
    }
    let open: Vec<&str> = report
        .entries
        .iter()
        .filter(|e| e.status == Status::Undetermined)
        .map(|e| e.name.as_str())
        .collect();
    println!("undetermined knots: {}", open.join(", "));
    if ok {
        Ok(())
    } else {
        Err(anyhow::anyhow!("classification does not match 121 / 58 / 6").into())
    }
}
