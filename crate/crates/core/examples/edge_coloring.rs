//! Chromatic index and class 1 / class 2 classification.
//!
//! cargo run --release --example edge_coloring

use circflow::coloring::{chromatic_index, classify, ChromaticIndex};
use circflow::constructions::{complete_graph, glue_gadgets, k2_multi, petersen, petersen_family};

fn main() -> circflow::Result<()> {
    let graphs = [
        ("K4", complete_graph(4)),
        ("K5", complete_graph(5)),
        ("K6", complete_graph(6)),
        ("Petersen", petersen()),
        ("Petersen family t = 2", petersen_family(2)?),
        ("glued gadgets t = 2", glue_gadgets(&k2_multi(1)?, 2)?.0),
    ];
    for (name, g) in graphs {
        let c = classify(&g, 1_000_000_000, 20)?;
        print!("{name:<24} {:?} ({:?} witness, {} nodes)", c.class, kind(&c.witness), c.nodes);
        if let (ChromaticIndex::Exact { chi, coloring }, _) = chromatic_index(&g, 1_000_000_000)? {
            assert!(coloring.is_proper(&g));
            print!(", chi' = {chi}");
        }
        println!();
    }
    Ok(())
}

fn kind(w: &circflow::coloring::ClassWitness) -> &'static str {
    use circflow::coloring::ClassWitness::*;
    match w {
        Coloring(_) => "coloring",
        OddCut(_) => "odd cut",
        Exhausted => "exhaustive",
        Budget => "budget",
    }
}
