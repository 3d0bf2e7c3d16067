use std::path::PathBuf;

use certain_trust::{ModuleName, TrustPercent};
use clap::{Args, Parser, Subcommand, ValueEnum};

const STORE_ENV: &str = "CERTAIN_TRUST_STORE";

#[derive(Debug, Parser)]
#[command(
    name = "certain-trust",
    version,
    about = "Evidence-based merchant trust scoring"
)]
pub struct Cli {
    /// Pipeline configuration (JSON). Built-in defaults when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Append evidence or a direct assessment to the store.
    Ingest(IngestArgs),
    /// Print the trust report for one merchant.
    Evaluate(EvaluateArgs),
    /// Rank two or more merchants by trust.
    Compare(CompareArgs),
    /// Generate or validate rulebase files.
    #[command(subcommand)]
    Rules(RulesCommand),
    /// Export a two-input inference surface as CSV.
    Surface(SurfaceArgs),
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[arg(long, env = STORE_ENV, value_name = "PATH")]
    pub store: PathBuf,

    #[arg(
        long,
        required_unless_present = "from_file",
        conflicts_with = "from_file"
    )]
    pub merchant: Option<String>,

    #[arg(
        long,
        required_unless_present = "from_file",
        conflicts_with = "from_file"
    )]
    pub variable: Option<String>,

    /// Number of positive outcomes to record.
    #[arg(long, value_name = "N", conflicts_with_all = ["assessment", "from_file"])]
    pub positive: Option<u64>,

    /// Number of negative outcomes to record.
    #[arg(long, value_name = "N", conflicts_with_all = ["assessment", "from_file"])]
    pub negative: Option<u64>,

    /// Direct assessment as certainty and scaled rating, e.g. `0.6,3.5`.
    #[arg(long, value_name = "C,T", value_parser = parse_assessment, conflicts_with = "from_file")]
    pub assessment: Option<(f64, f64)>,

    /// JSON-lines file of complete log records.
    #[arg(long, value_name = "PATH")]
    pub from_file: Option<PathBuf>,

    /// Unix timestamp for the new records. Defaults to now.
    #[arg(long)]
    pub timestamp: Option<i64>,

    /// Accept variable names outside the configured catalogue.
    #[arg(long)]
    pub permissive: bool,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long, env = STORE_ENV, value_name = "PATH")]
    pub store: PathBuf,

    #[arg(long)]
    pub merchant: String,

    /// Use a fixed module trust instead of aggregating its variables,
    /// e.g. `affiliation=39`. Repeatable.
    #[arg(long = "module-trust", value_name = "MODULE=PERCENT", value_parser = parse_module_trust)]
    pub module_trust: Vec<(ModuleName, TrustPercent)>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// One store shared by every merchant, or one store per merchant in
    /// the same order.
    #[arg(long, env = STORE_ENV, value_name = "PATH", required = true)]
    pub store: Vec<PathBuf>,

    #[arg(long, required = true)]
    pub merchant: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum RulesCommand {
    /// Write the generated 5^n-rule file.
    Generate {
        #[arg(long, value_name = "N")]
        inputs: usize,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        lo: f64,
        #[arg(long, default_value_t = 100.0, allow_negative_numbers = true)]
        hi: f64,
    },
    /// Check arity, term indices and duplicate antecedents.
    Validate { path: PathBuf },
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    /// existence, affiliation, fulfillment, policy, or merchant.
    #[arg(long)]
    pub module: String,

    /// Variable on the x axis (a module name for the merchant module).
    #[arg(long)]
    pub x: String,

    #[arg(long)]
    pub y: String,

    #[arg(long, default_value_t = 51)]
    pub resolution: usize,

    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,

    /// Rulebase file to use instead of the generated one.
    #[arg(long, value_name = "PATH")]
    pub rules: Option<PathBuf>,

    /// Values for the inputs that are not swept, one per input in module
    /// order, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub fixed: Option<Vec<f64>>,
}

fn parse_assessment(raw: &str) -> Result<(f64, f64), String> {
    let (c, t) = raw.split_once(',').ok_or("expected C,T")?;
    let c: f64 = c.trim().parse().map_err(|e| format!("certainty: {e}"))?;
    let t: f64 = t.trim().parse().map_err(|e| format!("rating: {e}"))?;
    Ok((c, t))
}

fn parse_module_trust(raw: &str) -> Result<(ModuleName, TrustPercent), String> {
    let (name, value) = raw.split_once('=').ok_or("expected MODULE=PERCENT")?;
    let module: ModuleName = name.trim().parse()?;
    let value: f64 = value.trim().parse().map_err(|e| format!("{e}"))?;
    let trust = TrustPercent::new(value).map_err(|e| e.to_string())?;
    Ok((module, trust))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn assessment_parsing() {
        assert_eq!(parse_assessment("0.6,3.5"), Ok((0.6, 3.5)));
        assert_eq!(parse_assessment(" 0.6 , 3.5 "), Ok((0.6, 3.5)));
        assert!(parse_assessment("0.6").is_err());
        assert!(parse_assessment("x,1").is_err());
    }

    #[test]
    fn module_trust_parsing() {
        let (m, t) = parse_module_trust("Affiliation=39").unwrap();
        assert_eq!(m, ModuleName::Affiliation);
        assert_eq!(t.value(), 39.0);
        assert!(parse_module_trust("affiliation=139").is_err());
        assert!(parse_module_trust("nowhere=1").is_err());
    }
}
