//! Scan a directory of graphs and print the table plus the summary.
//!
//! cargo run --release --example catalog_scan -- DIR T

use circflow::harness::{render_table, scan_catalog, AnalyzeOptions};

fn main() -> circflow::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/cubic_n10").into());
    let t: usize = args.next().map_or(1, |s| s.parse().expect("t is a number"));
    let rep = scan_catalog(dir.as_ref(), t, &AnalyzeOptions::default(), 4)?;
    print!("{}", render_table(&rep.reports));
    let phi = &rep.summary.phi_estimate;
    println!(
        "Φ estimate: {} ({})",
        phi.value.map_or("-".into(), |v| v.to_string()),
        phi.note
    );
    println!("pairs: {:?}", rep.summary.conjecture_findings.equal_value_pairs);
    println!("inconsistent: {:?}", rep.summary.inconsistent);
    Ok(())
}
