//! Balanced valuations: checking, the flow correspondence and refutation.
//!
//! cargo run --release --example valuations

use circflow::constructions::{complete_bipartite, petersen, petersen_data};
use circflow::flows::{circular_flow_number, Budget};
use circflow::graph::is_bipartite;
use circflow::rational::rat;
use circflow::valuations::{
    flow_to_valuation, is_balanced_brute, is_balanced_mincut, max_uniform_weight,
    refute_flow_by_valuation, BalancedValuation,
};

fn main() -> circflow::Result<()> {
    let g = petersen();
    let data = petersen_data();
    println!("Petersen classes A = {:?}, B = {:?}", data.a, data.b);
    let w = BalancedValuation::uniform(&data.bipartition(), rat(5, 3));
    println!("±5/3 brute: {:?}", is_balanced_brute(&g, &w.0, 20)?);
    println!("±5/3 min-cut: {:?}", is_balanced_mincut(&g, &w.0)?);
    let too_big = BalancedValuation::uniform(&data.bipartition(), rat(2, 1));
    println!("±2 min-cut: {:?}", is_balanced_mincut(&g, &too_big.0)?);

    let fc = circular_flow_number(&g, 10, &Budget::default())?;
    let (val, form) = flow_to_valuation(&g, fc.witness.as_ref().expect("exact"))?;
    println!("valuation of a {}-flow: k = {:?}", form.r, form.k);
    print!("{}", val.to_text());

    println!("refute 9/2: {:?}", refute_flow_by_valuation(&g, rat(9, 2), 12)?.is_refuted());
    println!("refute 5: {:?}", refute_flow_by_valuation(&g, rat(5, 1), 12)?.is_refuted());

    let k33 = complete_bipartite(3, 3);
    let bip = is_bipartite(&k33).bipartition().cloned().expect("bipartite");
    println!("K3,3 largest uniform weight: {}", max_uniform_weight(&k33, &bip, 20)?);
    Ok(())
}
