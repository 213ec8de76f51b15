//! Human-readable tables.

use std::fmt::Write;

use mjzero::api::{AdviseResponse, AnalyzeResponse};
use mjzero::oracle::{BfsOutcome, CensusReport};

pub fn analysis(r: &AnalyzeResponse) -> String {
    let mut out = String::new();
    writeln!(out, "hand: {}", r.hand).unwrap();
    if r.complete {
        writeln!(out, "deficiency: {}, complete", r.deficiency).unwrap();
    } else {
        writeln!(out, "deficiency: {}", r.deficiency).unwrap();
    }
    let parts: String = r.witness.parts.iter().map(|p| format!("({})", p.concat())).collect();
    write!(out, "witness: {parts}").unwrap();
    if !r.witness.remainder.is_empty() {
        write!(out, " + {}", r.witness.remainder.concat()).unwrap();
    }
    write!(out, " (cost {})", r.witness.cost).unwrap();
    out
}

pub fn advice(r: &AdviseResponse) -> String {
    let mut out = String::new();
    writeln!(out, "hand: {}", r.hand).unwrap();
    writeln!(out, "kb:   {}", r.kb).unwrap();
    writeln!(out, "k:    {}", r.k).unwrap();
    let with_delta = r.entries.iter().any(|e| e.delta.is_some());
    write!(out, "\n   #  tile  {:>12}  {:>9}", "value", "decimal").unwrap();
    if with_delta {
        write!(out, "  delta").unwrap();
    }
    out.push('\n');
    for (i, e) in r.entries.iter().enumerate() {
        let mark = if i == r.recommended_index { '*' } else { ' ' };
        let frac = format!("{}/{}", e.value_numerator, e.value_denominator);
        write!(out, "{mark} {i:>2}  {:<4}  {frac:>12}  {:>9.6}", e.tile, e.value_decimal).unwrap();
        if let Some(d) = e.delta {
            write!(out, "  {d:>5}").unwrap();
        }
        out.push('\n');
    }
    write!(out, "\nrecommended: discard {} (index {})", r.recommended_tile, r.recommended_index).unwrap();
    out
}

pub fn census(r: &CensusReport) -> String {
    let mut lines = vec![format!("pure 14-tiles:  {:>6}", r.total)];
    for (d, n) in r.by_deficiency.iter().enumerate() {
        lines.push(format!("deficiency {d}:   {n:>6}"));
    }
    lines.join("\n")
}

pub fn census_csv(r: &CensusReport) -> String {
    let mut lines = vec!["deficiency,count".to_string()];
    for (d, n) in r.by_deficiency.iter().enumerate() {
        lines.push(format!("{d},{n}"));
    }
    lines.join("\n")
}

pub fn outcome(o: BfsOutcome) -> String {
    match o {
        BfsOutcome::Exact(d) => d.to_string(),
        BfsOutcome::Unknown => "unknown".into(),
    }
}
