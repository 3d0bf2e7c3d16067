use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use certain_trust::fuzzy::{surface_grid_with, RuleBaseFile};
use certain_trust::pipeline::{normalize_name, MODULE_ARITY, MODULE_COUNT};
use certain_trust::store::{DirectAssessment, EvidenceRecord, Outcome};
use certain_trust::{
    compare_merchants, Error, EvidenceStore, LogEntry, ModuleName, Pipeline, PipelineConfig,
    RuleBase, TrustReport,
};
use serde_json::json;

use crate::args::{CompareArgs, EvaluateArgs, Format, IngestArgs, RulesCommand, SurfaceArgs};
use crate::error::CliError;
use crate::render;

pub type CmdResult = Result<(), CliError>;

const MONOTONICITY_NOISE: f64 = 1e-9;

pub fn load_config(path: Option<&Path>) -> Result<PipelineConfig, CliError> {
    let Some(path) = path else {
        return Ok(PipelineConfig::default());
    };
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    PipelineConfig::from_json(&text)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn now() -> i64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs() as i64)
        .unwrap_or(0)
}

pub fn ingest(args: IngestArgs, cfg: PipelineConfig, format: Format) -> CmdResult {
    let store = EvidenceStore::new(&args.store, cfg).permissive(args.permissive);
    let entries = match &args.from_file {
        Some(path) => read_records(path)?,
        None => build_records(&args)?,
    };
    let written = store.append_all(entries)?;
    match format {
        Format::Human => println!(
            "appended {} record(s) to {}",
            written.len(),
            args.store.display()
        ),
        Format::Json => println!("{}", json!({ "appended": written.len() })),
    }
    Ok(())
}

fn read_records(path: &Path) -> Result<Vec<LogEntry>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(n, line)| {
            serde_json::from_str(line).map_err(|e| {
                CliError::Store(certain_trust::store::StoreError::InvalidRecord(format!(
                    "{}:{}: {e}",
                    path.display(),
                    n + 1
                )))
            })
        })
        .collect()
}

fn build_records(args: &IngestArgs) -> Result<Vec<LogEntry>, CliError> {
    // clap guarantees both are present without --from-file.
    let merchant = args.merchant.clone().unwrap_or_default();
    let variable = args.variable.clone().unwrap_or_default();
    let timestamp = args.timestamp.unwrap_or_else(now);

    if let Some((c, t_scaled)) = args.assessment {
        return Ok(vec![LogEntry::Assessment(DirectAssessment {
            merchant,
            variable,
            c,
            t_scaled,
            timestamp,
        })]);
    }
    let (positive, negative) = (args.positive.unwrap_or(0), args.negative.unwrap_or(0));
    if positive + negative == 0 {
        return Err(CliError::usage(
            "nothing to ingest: give --positive/--negative counts, --assessment or --from-file",
        ));
    }
    let record = |outcome| {
        LogEntry::Evidence(EvidenceRecord {
            merchant: merchant.clone(),
            variable: variable.clone(),
            outcome,
            timestamp,
        })
    };
    let mut entries = Vec::with_capacity((positive + negative) as usize);
    entries.extend((0..positive).map(|_| record(Outcome::Positive)));
    entries.extend((0..negative).map(|_| record(Outcome::Negative)));
    Ok(entries)
}

fn report_for(
    store: &EvidenceStore,
    pipeline: &Pipeline,
    merchant: &str,
) -> Result<TrustReport, CliError> {
    let inputs = store.load_profile(merchant)?.to_inputs();
    Ok(pipeline.evaluate(merchant, &inputs)?)
}

pub fn evaluate(args: EvaluateArgs, cfg: PipelineConfig, format: Format) -> CmdResult {
    let pipeline = Pipeline::new(cfg.clone())?;
    let store = EvidenceStore::new(&args.store, cfg);
    let mut inputs = store.load_profile(&args.merchant)?.to_inputs();
    for (module, trust) in args.module_trust {
        inputs = inputs.with_module_override(module, trust);
    }
    let report = pipeline.evaluate(&args.merchant, &inputs)?;
    match format {
        Format::Human => print!("{}", render::report(&report)),
        Format::Json => println!("{}", report.to_json()),
    }
    Ok(())
}

pub fn compare(args: CompareArgs, cfg: PipelineConfig, format: Format) -> CmdResult {
    if args.merchant.len() < 2 {
        return Err(CliError::usage(
            "compare needs at least two --merchant values",
        ));
    }
    if args.store.len() != 1 && args.store.len() != args.merchant.len() {
        return Err(CliError::usage(format!(
            "give one --store, or one per merchant ({} stores for {} merchants)",
            args.store.len(),
            args.merchant.len()
        )));
    }
    let pipeline = Pipeline::new(cfg.clone())?;
    let mut reports = Vec::with_capacity(args.merchant.len());
    for (i, merchant) in args.merchant.iter().enumerate() {
        let path = &args.store[i.min(args.store.len() - 1)];
        let store = EvidenceStore::new(path, cfg.clone());
        let report = report_for(&store, &pipeline, merchant)
            .inspect_err(|_| log::error!("cannot evaluate {merchant} from {}", path.display()))?;
        reports.push(report);
    }
    let ranked = compare_merchants(reports);
    match format {
        Format::Human => print!("{}", render::ranking(&ranked)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&ranked).expect("reports serialize")
        ),
    }
    Ok(())
}

pub fn rules(command: RulesCommand, format: Format) -> CmdResult {
    match command {
        RulesCommand::Generate {
            inputs,
            out,
            lo,
            hi,
        } => {
            if inputs == 0 {
                return Err(CliError::usage("--inputs must be at least 1"));
            }
            let rb = RuleBase::generate_uniform(inputs, lo, hi)
                .map_err(|e| CliError::usage(e.to_string()))?;
            let text = RuleBaseFile::from_rulebase(&rb).to_json();
            fs::write(&out, text).map_err(|e| CliError::io(&out, e))?;
            match format {
                Format::Human => println!("wrote {} rules to {}", rb.rules().len(), out.display()),
                Format::Json => println!("{}", json!({ "rules": rb.rules().len(), "out": out })),
            }
        }
        RulesCommand::Validate { path } => {
            let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
            let file = RuleBaseFile::parse_and_validate(&text).map_err(|issues| {
                CliError::InvalidRules {
                    path: path.clone(),
                    issues,
                }
            })?;
            let count = file.rules.len();
            match format {
                Format::Human => println!("{}: {count} rules, valid", path.display()),
                Format::Json => println!("{}", json!({ "valid": true, "rules": count })),
            }
        }
    }
    Ok(())
}

fn load_rules(path: &Path) -> Result<RuleBase, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let file =
        RuleBaseFile::parse_and_validate(&text).map_err(|issues| CliError::InvalidRules {
            path: path.to_path_buf(),
            issues,
        })?;
    Ok(file.into_rulebase()?)
}

/// Axis labels of a surface module: its three variables, or the four module
/// names for the merchant module.
fn module_axes(module: &str, cfg: &PipelineConfig) -> Result<Vec<String>, CliError> {
    if module.trim().eq_ignore_ascii_case("merchant") {
        return Ok(ModuleName::ALL.iter().map(|m| m.to_string()).collect());
    }
    let name: ModuleName = module.parse().map_err(CliError::usage)?;
    let spec = cfg
        .module(name)
        .ok_or_else(|| CliError::usage(format!("module {name} is not configured")))?;
    Ok(spec.variables.clone())
}

fn axis_index(axes: &[String], wanted: &str) -> Result<usize, CliError> {
    let key = normalize_name(wanted);
    axes.iter()
        .position(|a| normalize_name(a) == key)
        .ok_or_else(|| CliError::usage(format!("{wanted:?} is not one of {axes:?}")))
}

pub fn surface(args: SurfaceArgs, cfg: PipelineConfig, format: Format) -> CmdResult {
    let axes = module_axes(&args.module, &cfg)?;
    let x = axis_index(&axes, &args.x)?;
    let y = axis_index(&axes, &args.y)?;
    if x == y {
        return Err(CliError::usage("--x and --y must name different inputs"));
    }
    if args.resolution < 2 {
        return Err(CliError::usage("--resolution must be at least 2"));
    }
    if let Some(fixed) = &args.fixed {
        if fixed.len() != axes.len() {
            return Err(CliError::usage(format!(
                "--fixed needs {} values, got {}",
                axes.len(),
                fixed.len()
            )));
        }
    }
    let rb = match &args.rules {
        Some(path) => load_rules(path)?,
        None => RuleBase::generate_uniform(axes.len(), 0.0, 100.0)?,
    };
    if rb.arity() != axes.len() {
        return Err(CliError::usage(format!(
            "rulebase has {} inputs but the module has {}",
            rb.arity(),
            axes.len()
        )));
    }
    debug_assert!(axes.len() == MODULE_ARITY || axes.len() == MODULE_COUNT);

    let grid = surface_grid_with(&rb, x, y, args.fixed.as_deref(), args.resolution, cfg.tnorm)
        .map_err(|e| match e {
            Error::InvalidParameter { .. } | Error::ArityMismatch { .. } => {
                CliError::usage(e.to_string())
            }
            other => other.into(),
        })?;
    fs::write(&args.out, grid.to_csv()).map_err(|e| CliError::io(&args.out, e))?;

    let drops = grid.monotonicity_violations();
    let largest = drops.iter().map(|v| v.drop).fold(0.0, f64::max);
    // Rounding alone produces drops around 1e-14; only count real dips.
    let violations: Vec<_> = drops
        .iter()
        .filter(|v| v.drop > MONOTONICITY_NOISE)
        .collect();
    let rows = grid.z.len();
    match format {
        Format::Human => {
            println!("wrote {rows} rows to {}", args.out.display());
            println!(
                "monotonicity violations above {MONOTONICITY_NOISE:e}: {} (largest drop {largest:.3e})",
                violations.len()
            );
        }
        Format::Json => println!(
            "{}",
            json!({
                "out": args.out,
                "rows": rows,
                "violations": violations.len(),
                "largest_drop": largest,
            })
        ),
    }
    Ok(())
}
