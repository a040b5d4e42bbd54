//! Perfect matchings whose removal leaves a bipartite graph, compared with
//! the flow value `2 + 2/(2t-1)`.
//!
//! cargo run --release --example bipartizing_factor

use circflow::coloring::{bipartizing_one_factor, check_bipartizing_flow_equivalence, enumerate_perfect_matchings};
use circflow::constructions::{complete_bipartite, complete_graph, petersen};
use circflow::flows::Budget;

fn main() -> circflow::Result<()> {
    for (name, g) in [
        ("K4", complete_graph(4)),
        ("K3,3", complete_bipartite(3, 3)),
        ("K6", complete_graph(6)),
        ("Petersen", petersen()),
    ] {
        let count = enumerate_perfect_matchings(&g).count();
        let factor = bipartizing_one_factor(&g)?;
        let rep = check_bipartizing_flow_equivalence(&g, &Budget::default())?;
        println!(
            "{name:<9} {count:>3} perfect matchings, bipartizing factor {:<24} flow at {}: {:?}, {:?}",
            factor.map_or("none".to_string(), |(m, _)| format!("{:?}", m.0)),
            rep.bound,
            rep.flow_at_bound,
            rep.agreement
        );
    }
    Ok(())
}
