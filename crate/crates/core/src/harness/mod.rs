//! Whole-graph analysis, catalog scans and the report format.

mod analyze;
mod scan;

pub use analyze::{
    analyze, bipartite_value, class1_ceiling, factor_bound, AnalysisReport, AnalyzeOptions,
    OddCutField, OddCutStatus, Timings, Work,
};
pub use scan::{
    conjecture_checks, phi_estimate, read_catalog, render_table, scan_catalog, scan_entries,
    Candidate, CatalogEntry, ConjectureFindings, OptionsRecord, PairRecord, PhiEstimate,
    ScanReport, ScanSummary, SkipRecord,
};
