use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{bail, Result};
use sbbd_core::estimator::{simulate_with, Execution};
use sbbd_core::io::{parse_vector, read_symbol_csv, write_matrix_csv, write_symbol_csv};
use sbbd_core::{
    a_optimality, check_sbbd, classify_blocks, export_masks, information_matrix, matrix_to_blocks, permute_extension,
    random_effects, spectrum, EffectVector, Error, SbBlockFile, CATALOG,
};
use serde_json::{json, Value};

use crate::input::{load_block_design, load_design_matrix, load_ordered_design, parse_perms, read_text, write_output};
use crate::{AnalyzeArgs, ComposeArgs, DesignFormat, EstimateArgs, MaskArgs, MaskFormat, SimulateArgs};

const VERIFICATION_FAILED: u8 = 1;
const USAGE_ERROR: u8 = 2;

/// 1 when the input was read but fails a design property, 2 otherwise.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::NotRegular { .. }
            | Error::NotPairBalanced { .. }
            | Error::NotADifferenceSet { .. }
            | Error::RepeatedSymbolInRow { .. }
            | Error::PairCountMismatch { .. }
            | Error::ViolatedConditions(_)
            | Error::MissingDcs
            | Error::DegenerateDesign
            | Error::ContrastsNotEstimable { .. }
            | Error::SpanningViolation { .. },
        ) => VERIFICATION_FAILED,
        _ => USAGE_ERROR,
    }
}

/// Command output is assembled in memory and written once, so a closed pipe
/// surfaces as an error instead of a panic.
#[derive(Default)]
struct Out(String);

impl Out {
    fn line(&mut self, args: std::fmt::Arguments<'_>) {
        self.0.write_fmt(args).expect("writing to a String cannot fail");
        self.0.push('\n');
    }

    fn json(&mut self, value: &Value) {
        self.0
            .push_str(&serde_json::to_string_pretty(value).expect("JSON values serialize"));
        self.0.push('\n');
    }

    fn finish(self, code: ExitCode) -> Result<ExitCode> {
        write_output(None, self.0.as_bytes())?;
        Ok(code)
    }
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        $out.line(format_args!($($arg)*))
    };
}

fn spectrum_json(multiset: &[(i64, usize)]) -> Vec<Value> {
    multiset
        .iter()
        .map(|(v, m)| json!({"value": v.to_string(), "mult": m}))
        .collect()
}

pub fn design_verify(file: &str, as_json: bool) -> Result<ExitCode> {
    let d = load_block_design(file)?;
    let mut out = Out::default();
    if as_json {
        out.json(&json!({
            "v": d.v(),
            "b": d.b(),
            "r": d.r(),
            "lambda": d.lambda(),
            "k": d.k().map_or(json!("variable"), |k| json!(k)),
            "bibd": d.is_bibd(),
            "symmetric": d.is_symmetric(),
        }));
    } else {
        let k = d.k().map_or("variable".to_string(), |k| k.to_string());
        say!(
            out,
            "(r, λ)-design: v = {}, b = {}, r = {}, λ = {}, k = {k}",
            d.v(),
            d.b(),
            d.r(),
            d.lambda()
        );
        if d.is_symmetric() {
            say!(out, "symmetric BIBD");
        } else if d.is_bibd() {
            say!(out, "BIBD");
        }
    }
    out.finish(ExitCode::SUCCESS)
}

pub fn design_catalog(as_json: bool) -> Result<ExitCode> {
    let mut out = Out::default();
    if as_json {
        let entries: Vec<Value> = CATALOG
            .iter()
            .map(
                |e| json!({"id": e.id, "v": e.v, "b": e.b, "r": e.r, "k": e.k, "lambda": e.lambda, "remark": e.remark}),
            )
            .collect();
        out.json(&Value::Array(entries));
    } else {
        say!(
            out,
            "{:<6} {:>4} {:>4} {:>4} {:>4} {:>4}  remark",
            "id",
            "v",
            "b",
            "r",
            "k",
            "λ"
        );
        for e in CATALOG {
            say!(
                out,
                "{:<6} {:>4} {:>4} {:>4} {:>4} {:>4}  {}",
                e.id,
                e.v,
                e.b,
                e.r,
                e.k,
                e.lambda,
                e.remark
            );
        }
    }
    out.finish(ExitCode::SUCCESS)
}

pub fn design_show(id: &str) -> Result<ExitCode> {
    let d = sbbd_core::catalog_by_id(id.strip_prefix("catalog:").unwrap_or(id))?;
    let mut out = Out::default();
    say!(out, "{}", serde_json::to_string(&d.to_file())?);
    out.finish(ExitCode::SUCCESS)
}

pub fn od_construct(q: usize) -> Result<ExitCode> {
    let od = sbbd_core::construct_od1(q)?;
    write_output(None, write_symbol_csv(od.rows()).as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

pub fn od_verify(file: &str, n: Option<usize>, as_json: bool) -> Result<ExitCode> {
    let rows = read_symbol_csv(&read_text(file)?)?;
    let n = n.unwrap_or_else(|| rows.iter().flatten().copied().max().unwrap_or(0));
    let s = rows.first().map_or(0, Vec::len);
    let od = sbbd_core::verify_od(&rows, n, s)?;
    let mut out = Out::default();
    if as_json {
        out.json(&json!({"n": od.n(), "s": od.s(), "eta": od.eta(), "rows": od.rows().len()}));
    } else {
        say!(
            out,
            "OD_{}({}, {}): {} rows; each ordered pair of distinct symbols appears {} time(s) in every column pair",
            od.eta(),
            od.s(),
            od.n(),
            od.rows().len(),
            od.eta()
        );
    }
    out.finish(ExitCode::SUCCESS)
}

pub fn compose(args: &ComposeArgs) -> Result<ExitCode> {
    let design = load_block_design(&args.design)?;
    let od = load_ordered_design(&args.od, design.b())?;
    let composed = sbbd_core::compose(&design, &od)?;
    let perms = match &args.perms {
        Some(spec) => parse_perms(spec, design.v())?,
        None => Vec::new(),
    };
    let x = permute_extension(&composed.design, &perms)?;
    let predicted = sbbd_core::compose::predicted_parameters(&design, od.eta(), perms.len() + 1, od.s());
    let format = args.format.unwrap_or(match &args.out {
        Some(p) if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) => DesignFormat::Json,
        _ => DesignFormat::Csv,
    });
    let body = match format {
        DesignFormat::Csv => write_matrix_csv(x.matrix()),
        DesignFormat::Json => {
            let file = SbBlockFile::from_blocks(x.v1(), x.v2(), &matrix_to_blocks(&x));
            serde_json::to_string(&file)? + "\n"
        }
    };
    write_output(args.out.as_deref(), body.as_bytes())?;
    eprintln!(
        "composed {predicted}; spanning {}",
        if composed.spanning_guaranteed {
            "guaranteed"
        } else {
            "not guaranteed"
        }
    );
    Ok(ExitCode::SUCCESS)
}

pub fn analyze(args: &AnalyzeArgs) -> Result<ExitCode> {
    let x = load_design_matrix(&args.design, &args.dims)?;
    let mut out = Out::default();
    let check = match check_sbbd(&x) {
        Ok(c) => c,
        Err(Error::ViolatedConditions(violations)) => {
            if args.json {
                out.json(&json!({
                    "sbbd": false,
                    "v1": x.v1(),
                    "v2": x.v2(),
                    "n": x.n(),
                    "violations": violations.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
                }));
            } else {
                say!(out, "not an SBBD: {} violation(s)", violations.len());
                for v in &violations {
                    say!(out, "  {v}");
                }
            }
            return out.finish(ExitCode::from(VERIFICATION_FAILED));
        }
        Err(e) => return Err(e.into()),
    };
    match a_optimality(&x) {
        Ok(report) => {
            if args.json {
                let mut value = report.to_json();
                value["sbbd"] = json!(true);
                value["spanning_witness"] = check.spanning_violation.map_or(Value::Null, |v| v.to_json());
                out.json(&value);
            } else {
                say!(out, "{report}");
                if let Some(v) = &check.spanning_violation {
                    say!(out, "non-spanning witness: {v}");
                }
            }
        }
        Err(Error::ContrastsNotEstimable { alpha }) => {
            let s = spectrum(&information_matrix(&x))?;
            let p = check.params;
            let classes = classify_blocks(&x);
            if args.json {
                out.json(&json!({
                    "sbbd": true,
                    "v1": p.v1,
                    "v2": p.v2,
                    "n": p.n,
                    "lambda": [p.mu, p.lambda12, p.lambda21, p.lambda22],
                    "spanning": check.spanning,
                    "spectrum": spectrum_json(&s.multiset()),
                    "a_criterion": Value::Null,
                    "a_lower_bound": Value::Null,
                    "semi_regular": classes.semi_regular,
                    "regular": classes.regular,
                    "a_optimal_in_omega": false,
                }));
            } else {
                say!(out, "{p}");
                say!(out, "spanning: {}", check.spanning);
                let parts: Vec<String> = s.multiset().iter().map(|(v, m)| format!("{v} (x{m})")).collect();
                say!(out, "spectrum: {}", parts.join(", "));
                say!(out, "basic contrasts are not estimable (alpha = {alpha})");
            }
        }
        Err(e) => return Err(e.into()),
    }
    out.finish(ExitCode::SUCCESS)
}

fn effects_for(args: &SimulateArgs, v1: usize, v2: usize) -> Result<EffectVector> {
    match &args.tau {
        Some(path) => Ok(EffectVector::new(
            v1,
            v2,
            parse_vector(&read_text(&path.to_string_lossy())?)?,
        )?),
        None => Ok(random_effects(v1, v2, args.tau_scale, args.seed)?),
    }
}

pub fn simulate(args: &SimulateArgs) -> Result<ExitCode> {
    let x = load_design_matrix(&args.design, &args.dims)?;
    let tau = effects_for(args, x.v1(), x.v2())?;
    let execution = if args.serial {
        Execution::Serial
    } else {
        Execution::Parallel
    };
    let report = simulate_with(&x, &tau, args.sigma, args.runs, args.seed, execution)?;
    let mut out = Out::default();
    if args.json {
        out.json(&report.to_json());
    } else {
        say!(out, "{report}");
    }
    out.finish(ExitCode::SUCCESS)
}

pub fn estimate(args: &EstimateArgs) -> Result<ExitCode> {
    let x = load_design_matrix(&args.design, &args.dims)?;
    let y = parse_vector(&read_text(&args.y.to_string_lossy())?)?;
    let fit = sbbd_core::estimate(&x, &y)?;
    let v2m1 = x.v2() - 1;
    let mut out = Out::default();
    if args.json {
        out.json(&json!({
            "grand_mean": fit.grand_mean,
            "tau_hat": fit.tau_hat,
            "contrasts": fit.contrasts.iter().enumerate().map(|(k, c)| json!({
                "i": k / v2m1 + 1,
                "j": k % v2m1 + 1,
                "estimate": c,
            })).collect::<Vec<_>>(),
        }));
    } else {
        say!(out, "grand mean removed: {:.6}", fit.grand_mean);
        say!(out, "{:>4} {:>4} {:>14}", "i", "j", "estimate");
        for (k, c) in fit.contrasts.iter().enumerate() {
            say!(out, "{:>4} {:>4} {:>14.6}", k / v2m1 + 1, k % v2m1 + 1, c);
        }
    }
    out.finish(ExitCode::SUCCESS)
}

pub fn mask(args: &MaskArgs) -> Result<ExitCode> {
    let x = load_design_matrix(&args.design, &args.dims)?;
    let masks = export_masks(&x)?;
    let bytes = match args.format {
        MaskFormat::Json => (serde_json::to_string(&masks.to_json())? + "\n").into_bytes(),
        MaskFormat::Bin => {
            if args.out.is_none() {
                bail!("binary masks need --out");
            }
            masks.to_bytes()
        }
    };
    write_output(args.out.as_deref(), &bytes)?;
    if args.out.is_some() {
        eprintln!("wrote {} masks of shape {}x{}", masks.len(), masks.v1(), masks.v2());
    }
    Ok(ExitCode::SUCCESS)
}
