//! Circular flow numbers of small standard graphs, with a certificate.
//!
//! cargo run --release --example flow_number

use circflow::constructions::{complete_bipartite, complete_graph, k2_multi, petersen};
use circflow::flows::{circular_flow_number, verify_flow, Budget};

fn main() -> circflow::Result<()> {
    let graphs = [
        ("K4", complete_graph(4)),
        ("K6", complete_graph(6)),
        ("K3,3", complete_bipartite(3, 3)),
        ("K2 with 3 parallel edges", k2_multi(1)?),
        ("K2 with 5 parallel edges", k2_multi(2)?),
        ("Petersen", petersen()),
    ];
    for (name, g) in graphs {
        let fc = circular_flow_number(&g, g.n() as i64, &Budget::default())?;
        let value = fc.value.expect("bridgeless");
        let refused = fc.refused.map_or("-".to_string(), |r| r.to_string());
        println!(
            "{name:<26} F_c = {value:<4} refused {refused:<6} nodes {}",
            fc.stats.nodes
        );
        let w = fc.witness.expect("exact result carries a flow");
        assert!(verify_flow(&g, &w)?);
    }
    Ok(())
}
