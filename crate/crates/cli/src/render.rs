use std::fmt::Write as _;

use certain_trust::opinion::Direction;
use certain_trust::pipeline::MODULE_ARITY;
use certain_trust::{ModuleName, TrustReport};

fn direction(d: Direction) -> &'static str {
    match d {
        Direction::AboveBase => "above base",
        Direction::Balanced => "at base",
        Direction::BelowBase => "below base",
    }
}

fn signed(value: f64) -> String {
    format!("{value:+.4}%")
}

/// Module-by-module breakdown of one report.
pub fn report(r: &TrustReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "merchant {}", r.merchant);
    let width = r
        .variable_trusts
        .keys()
        .map(String::len)
        .max()
        .unwrap_or(0)
        .max(12);
    let mut variables = r.variable_trusts.iter();
    for (module, trust) in &r.module_trusts {
        let pinned = if r.pinned_modules.contains(module) {
            "  (pinned)"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  {:<w$}  {trust:>9}{pinned}",
            module.as_str(),
            w = width + 2
        );
        for (name, trust) in variables.by_ref().take(MODULE_ARITY) {
            let _ = writeln!(out, "    {name:<width$}  {trust:>9}");
        }
    }
    let _ = writeln!(
        out,
        "  {:<w$}  {:>9}",
        "Merchant trust",
        r.merchant_trust,
        w = width + 2
    );
    let _ = writeln!(
        out,
        "  {:<w$}  {}",
        "Trust class",
        r.trust_class,
        w = width + 2
    );
    let _ = writeln!(
        out,
        "  {:<w$}  {} ({})",
        "Behavioral",
        signed(r.behavioral.value),
        direction(r.behavioral.direction),
        w = width + 2
    );
    out
}

/// Ranked table, one merchant per line.
pub fn ranking(reports: &[TrustReport]) -> String {
    let width = reports
        .iter()
        .map(|r| r.merchant.len())
        .max()
        .unwrap_or(0)
        .max(8);
    let mut out = String::new();
    let _ = write!(
        out,
        "{:<4}  {:<width$}  {:>9}  {:>11}  {:<9}",
        "rank", "merchant", "trust", "behavioral", "class"
    );
    for module in ModuleName::ALL {
        let _ = write!(out, "  {:>11}", module.as_str());
    }
    out.push('\n');
    for (i, r) in reports.iter().enumerate() {
        let _ = write!(
            out,
            "{:<4}  {:<width$}  {:>9}  {:>11}  {:<9}",
            i + 1,
            r.merchant,
            r.merchant_trust,
            signed(r.behavioral.value),
            r.trust_class.label()
        );
        for module in ModuleName::ALL {
            match r.module_trusts.get(&module) {
                Some(t) => {
                    let _ = write!(out, "  {:>11}", t.to_string());
                }
                None => out.push_str("             "),
            }
        }
        out.push('\n');
    }
    out
}
