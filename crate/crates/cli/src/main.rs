//! `delpezzo`: exact computations on degree-one del Pezzo surfaces, printed as JSON.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on malformed input.

mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use delpezzo::alpha::{
    alpha_conjecture, alpha_del_pezzo, alpha_theorem, cylinder_range_contains, kstable_range_contains,
    upper_bound_witnesses, SurfaceFlag,
};
use delpezzo::binary_form::BinaryForm;
use delpezzo::cone::{engine, Membership};
use delpezzo::counterexample::counterexample_report;
use delpezzo::error::{AlphaError, ConeError, ProverError, SurfaceError};
use delpezzo::lattice::{enumerate, CurveKind, PicardClass};
use delpezzo::prover::{lemma_ids, relaxation_probe, verify_lemma, ProofOutcome};
use delpezzo::rational::{parse_rational, Q};
use delpezzo::weierstrass::WeierstrassSurface;

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "delpezzo", version, about = "Exact α-invariant computations for degree-one del Pezzo surfaces")]
struct Cli {
    /// Add a `<key>_decimal` rendering with this many digits next to every rational.
    #[arg(long, global = true, value_name = "K")]
    decimal: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// (−1)-curves and conics of the blow-up of P2 in eight points.
    Curves {
        #[command(subcommand)]
        action: CurvesAction,
    },
    /// Ampleness and pseudo-effectivity of a class.
    Ample(ClassArg),
    /// Pseudo-effective threshold, Mori-cone face and polarization type of an ample class.
    Classify(ClassArg),
    /// Closed-form α values.
    Alpha {
        #[command(subcommand)]
        action: AlphaAction,
    },
    /// Weierstrass surfaces w^2 = z^3 + a z + b.
    Surface {
        #[command(subcommand)]
        action: SurfaceAction,
    },
    /// The surface w^2 = z^3 + x^4 z + y^6 polarized by -K + λC.
    Counterexample(LambdaArg),
    /// λ-interval tests.
    Range {
        which: RangeKind,
        #[command(flatten)]
        lambda: LambdaArg,
    },
    /// Certified local lemmas.
    Lemma {
        #[command(subcommand)]
        action: LemmaAction,
    },
}

#[derive(Subcommand, Debug)]
enum CurvesAction {
    /// List every class of the given kind.
    Enumerate {
        #[arg(long, value_enum, default_value = "minus-one")]
        kind: KindArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    MinusOne,
    Conic,
}

#[derive(Subcommand, Debug)]
#[allow(clippy::large_enum_variant)]
enum AlphaAction {
    /// α_c of an ample class.
    Conjecture(ClassArg),
    /// α(S, -K + λC) with n = |C ∩ C~| and α(S).
    Theorem {
        #[command(flatten)]
        lambda: LambdaArg,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
        n: u32,
        #[arg(long = "alpha-s", value_parser = rational_arg, allow_hyphen_values = true)]
        alpha_s: Q,
        /// Accept λ in (-1/3, 0).
        #[arg(long)]
        allow_negative_lambda: bool,
    },
    /// α(S) of a smooth del Pezzo surface of the given degree.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=9))]
        degree: u32,
        #[arg(long, value_delimiter = ',', value_parser = flag_arg)]
        flags: Vec<SurfaceFlag>,
    },
}

#[derive(Subcommand, Debug)]
enum SurfaceAction {
    /// Smoothness, cuspidal anticanonical curves, α(S) and section pairs.
    Analyze {
        #[arg(long, value_parser = form_arg, allow_hyphen_values = true)]
        a: BinaryForm,
        #[arg(long, value_parser = form_arg, allow_hyphen_values = true)]
        b: BinaryForm,
        #[arg(long, value_parser = form_arg, allow_hyphen_values = true, requires = "g")]
        q: Option<BinaryForm>,
        #[arg(long, value_parser = form_arg, allow_hyphen_values = true, requires = "q")]
        g: Option<BinaryForm>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RangeKind {
    Kstable,
    Cylinder,
}

#[derive(Subcommand, Debug)]
enum LemmaAction {
    /// Prove every case of a lemma infeasible (`all` for the whole bank).
    Verify {
        id: String,
        /// Drop the constraints with this tag and report a witness instead.
        #[arg(long)]
        probe: Option<String>,
    },
}

#[derive(Args, Debug)]
struct ClassArg {
    /// Nine comma-separated rationals: the coefficients of H, e1, ..., e8.
    #[arg(long, value_parser = class_arg, allow_hyphen_values = true)]
    class: PicardClass,
}

#[derive(Args, Debug)]
struct LambdaArg {
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    lambda: Q,
}

fn rational_arg(s: &str) -> Result<Q, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn class_arg(s: &str) -> Result<PicardClass, String> {
    s.parse().map_err(|e: delpezzo::error::ParseError| e.to_string())
}

fn form_arg(s: &str) -> Result<BinaryForm, String> {
    s.parse().map_err(|e: delpezzo::error::ParseError| e.to_string())
}

fn flag_arg(s: &str) -> Result<SurfaceFlag, String> {
    s.parse()
}

/// A failed command: exit code and message for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure { code: 2, message: message.to_string() }
    }
}

impl From<AlphaError> for Failure {
    fn from(e: AlphaError) -> Self {
        match e {
            AlphaError::Cone(c) => c.into(),
            other => Failure::input(other),
        }
    }
}

impl From<ConeError> for Failure {
    fn from(e: ConeError) -> Self {
        match e {
            ConeError::NotAmple | ConeError::NotPseudoEffective => Failure::input(e),
            other => Failure { code: 1, message: other.to_string() },
        }
    }
}

impl From<SurfaceError> for Failure {
    fn from(e: SurfaceError) -> Self {
        Failure::input(e)
    }
}

impl From<ProverError> for Failure {
    fn from(e: ProverError) -> Self {
        match e {
            ProverError::ProbeStillInfeasible { .. } => Failure { code: 1, message: e.to_string() },
            other => Failure::input(other),
        }
    }
}

/// The report and whether every check in it passed.
type Outcome = Result<(Value, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Report::new(cli.decimal);
    match run(&cli.command, &out) {
        Ok((value, passed)) => {
            let text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
            // A closed pipe is not an error for the caller.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: &Command, out: &Report) -> Outcome {
    match command {
        Command::Curves { action: CurvesAction::Enumerate { kind } } => curves(*kind),
        Command::Ample(ClassArg { class }) => ample(class, out),
        Command::Classify(ClassArg { class }) => {
            let profile = engine().classify(class)?;
            let recomposed = profile.recompose() == delpezzo::lattice::canonical_class() + &profile.mu * class;
            let mut v = out.command("classify", json!({ "class": class.to_string() }));
            out.profile(&mut v, &profile);
            v["recomposition_ok"] = json!(recomposed);
            Ok((v, recomposed))
        }
        Command::Alpha { action } => alpha(action, out),
        Command::Surface { action: SurfaceAction::Analyze { a, b, q, g } } => surface(a, b, q.as_ref().zip(g.as_ref()), out),
        Command::Counterexample(LambdaArg { lambda }) => {
            let r = counterexample_report(lambda)?;
            let mut v = out.command("counterexample", json!({ "lambda": out.exact(lambda) }));
            out.rational(&mut v, "lambda", &r.lambda);
            out.rational(&mut v, "alpha", &r.alpha);
            out.rational(&mut v, "alpha_c", &r.alpha_c);
            out.rational(&mut v, "alpha_s", &r.alpha_s);
            v["conjecture_violated"] = json!(r.conjecture_violated);
            v["smooth"] = json!(r.smooth);
            v["cuspidal_member"] = json!(r.cuspidal);
            v["n_intersections"] = json!(r.n_intersections);
            v["polarization"] = json!(delpezzo::counterexample::polarization(lambda).to_string());
            let mut profile = json!({});
            out.profile(&mut profile, &r.profile);
            v["profile"] = profile;
            Ok((v, true))
        }
        Command::Range { which, lambda: LambdaArg { lambda } } => {
            let (name, contains) = match which {
                RangeKind::Kstable => ("range kstable", kstable_range_contains(lambda)),
                RangeKind::Cylinder => ("range cylinder", cylinder_range_contains(lambda)),
            };
            let mut v = out.command(name, json!({ "lambda": out.exact(lambda) }));
            v["contains"] = json!(contains);
            Ok((v, true))
        }
        Command::Lemma { action: LemmaAction::Verify { id, probe } } => lemma(id, probe.as_deref(), out),
    }
}

fn curves(kind: KindArg) -> Outcome {
    let kind = match kind {
        KindArg::MinusOne => CurveKind::MinusOne,
        KindArg::Conic => CurveKind::Conic,
    };
    let set = enumerate(kind);
    let stable = set.iter().all(|v| set.contains(&v.bertini()));
    let v = json!({
        "command": "curves enumerate",
        "inputs": { "kind": kind.name() },
        "count": set.len(),
        "bertini_stable": stable,
        "classes": set.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    });
    Ok((v, stable))
}

fn ample(class: &PicardClass, out: &Report) -> Outcome {
    let e = engine();
    let mut v = out.command("ample", json!({ "class": class.to_string() }));
    v["ample"] = json!(e.is_ample(class));
    match e.membership(class) {
        Membership::Inside(_) => v["pseudoeffective"] = json!(true),
        Membership::Outside(nef) => {
            v["pseudoeffective"] = json!(false);
            v["separating_nef_class"] = json!(nef.to_string());
        }
    }
    Ok((v, true))
}

fn alpha(action: &AlphaAction, out: &Report) -> Outcome {
    match action {
        AlphaAction::Conjecture(ClassArg { class }) => {
            let profile = engine().classify(class)?;
            let mut v = out.command("alpha conjecture", json!({ "class": class.to_string() }));
            out.rational(&mut v, "alpha_c", &alpha_conjecture(&profile));
            v["type"] = json!(profile.type_tag.name());
            out.rational(&mut v, "mu", &profile.mu);
            Ok((v, true))
        }
        AlphaAction::Theorem { lambda: LambdaArg { lambda }, n, alpha_s, allow_negative_lambda } => {
            if *lambda < Q::from_integer(0.into()) && !allow_negative_lambda {
                return Err(Failure::input(format!(
                    "lambda = {} is negative; pass --allow-negative-lambda for the range (-1/3, 0)",
                    out.exact(lambda)
                )));
            }
            let value = alpha_theorem(lambda, *n, alpha_s)?;
            let inputs = json!({ "lambda": out.exact(lambda), "n": n, "alpha_s": out.exact(alpha_s) });
            let mut v = out.command("alpha theorem", inputs);
            out.rational(&mut v, "alpha", &value);
            let mut passed = true;
            if *lambda >= Q::from_integer(0.into()) {
                let witnesses = upper_bound_witnesses(lambda, *n, alpha_s)?;
                let mut list = Vec::new();
                for w in &witnesses {
                    let mut item = json!({ "kind": w.kind.name(), "description": w.description, "valid": w.is_valid() });
                    out.rational(&mut item, "bound", &w.bound);
                    passed &= w.is_valid();
                    list.push(item);
                }
                let min = witnesses.iter().map(|w| &w.bound).min().cloned();
                passed &= min.as_ref() == Some(&value);
                v["upper_bound_witnesses"] = Value::Array(list);
            }
            Ok((v, passed))
        }
        AlphaAction::Table { degree, flags } => {
            let value = alpha_del_pezzo(*degree, flags)?;
            let names: Vec<&str> = flags.iter().map(|f| f.name()).collect();
            let mut v = out.command("alpha table", json!({ "degree": degree, "flags": names }));
            out.rational(&mut v, "alpha", &value);
            Ok((v, true))
        }
    }
}

fn surface(a: &BinaryForm, b: &BinaryForm, pair: Option<(&BinaryForm, &BinaryForm)>, out: &Report) -> Outcome {
    let s = WeierstrassSurface::new(a.clone(), b.clone())?;
    let mut inputs = json!({ "a": a.to_string(), "b": b.to_string() });
    if let Some((q, g)) = pair {
        inputs["q"] = json!(q.to_string());
        inputs["g"] = json!(g.to_string());
    }
    let mut v = out.command("surface analyze", inputs);
    v["discriminant"] = json!(s.discriminant().to_string());
    let smooth = s.is_smooth();
    v["smooth"] = json!(smooth);
    if smooth {
        v["cuspidal_member"] = json!(s.has_cuspidal_member()?);
        out.rational(&mut v, "alpha_s", &s.alpha()?);
    } else {
        v["cuspidal_member"] = Value::Null;
        v["alpha_s"] = Value::Null;
    }
    let sections: Vec<Value> = s.find_square_sections().iter().map(section_json).collect();
    v["section_pairs"] = Value::Array(sections);
    let mut passed = true;
    if let Some((q, g)) = pair {
        match s.section_pair(q, g) {
            Ok(p) => v["given_pair"] = section_json(&p),
            Err(SurfaceError::NotASection(residual)) => {
                passed = false;
                v["given_pair"] = json!({ "valid": false, "residual": residual });
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok((v, passed))
}

fn section_json(p: &delpezzo::weierstrass::SectionPair) -> Value {
    json!({
        "valid": true,
        "q": p.q.to_string(),
        "g": p.g.to_string(),
        "n_intersections": p.n_intersections,
        "multiplicities": p.multiplicities,
    })
}

fn lemma(id: &str, probe: Option<&str>, out: &Report) -> Outcome {
    let ids: Vec<String> = if id == "all" {
        if probe.is_some() {
            return Err(Failure::input("--probe needs a single lemma id"));
        }
        lemma_ids().into_iter().map(str::to_string).collect()
    } else {
        vec![id.to_string()]
    };
    if let Some(tag) = probe {
        let p = relaxation_probe(id, tag)?;
        let mut v = out.command("lemma verify", json!({ "id": id, "probe": tag }));
        v["status"] = json!("feasible");
        v["case"] = json!(p.case);
        let mut witness = json!({});
        for (name, value) in &p.witness {
            out.rational(&mut witness, name, value);
        }
        v["witness"] = witness;
        return Ok((v, true));
    }
    let mut lemmas = Vec::new();
    let mut all_ok = true;
    let mut certificates = 0usize;
    for id in &ids {
        let report = verify_lemma(id)?;
        let mut cases = Vec::new();
        for case in &report.cases {
            let mut item = json!({ "name": case.name, "certificate_checked": case.checked });
            match &case.outcome {
                ProofOutcome::Infeasible(cert) => {
                    certificates += 1;
                    item["multipliers"] = json!(cert.multipliers.iter().map(|m| out.exact(m)).collect::<Vec<_>>());
                    item["strict"] = json!(cert.strict);
                }
                ProofOutcome::Feasible(point) => {
                    item["witness"] = json!(point.iter().map(|m| out.exact(m)).collect::<Vec<_>>());
                }
            }
            cases.push(item);
        }
        let verified = report.verified();
        all_ok &= verified;
        lemmas.push(json!({
            "id": id,
            "status": if verified { "verified" } else { "failed" },
            "cases": cases,
        }));
    }
    let mut v = out.command("lemma verify", json!({ "id": id }));
    v["status"] = json!(if all_ok { "verified" } else { "failed" });
    v["certificates"] = json!(certificates);
    v["lemmas"] = Value::Array(lemmas);
    Ok((v, all_ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
