//! Parse a multigraph (MG or graph6), print its basic structure and re-emit it.
//!
//! cargo run --example inspect_graph -- [FILE]

use circflow::graph::{bridges, is_bipartite, odd_cut_obstruction, parse_graph_file, serialize, to_graph6};
use circflow::constructions::petersen;

fn main() -> circflow::Result<()> {
    let graphs = match std::env::args().nth(1) {
        Some(path) => {
            let text = std::fs::read_to_string(&path).expect("readable file");
            parse_graph_file(&text)?
        }
        None => vec![("petersen".to_string(), petersen())],
    };
    for (label, g) in graphs {
        println!("== {label}");
        println!("n = {}, m = {}, degrees = {:?}", g.n(), g.m(), g.degrees());
        println!("max multiplicity = {}", g.max_multiplicity());
        println!("bipartite = {}", is_bipartite(&g).is_bipartite());
        println!("bridges = {:?}", bridges(&g));
        if g.regular_degree().is_some_and(|d| d % 2 == 1) {
            match odd_cut_obstruction(&g, 20)?.found() {
                Some(cut) => println!("odd cut {:?} of size {}", cut.source.to_vec(), cut.size()),
                None => println!("no odd cut below the degree"),
            }
        }
        if g.max_multiplicity() <= 1 {
            println!("graph6: {}", to_graph6(&g)?);
        }
        print!("{}", serialize(&g));
    }
    Ok(())
}
