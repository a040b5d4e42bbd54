//! Gadgets and families: parallel-edge K2, the subdivided gadget, gluing
//! onto a base graph and the Petersen family.
//!
//! cargo run --release --example constructions

use circflow::coloring::classify;
use circflow::constructions::{glue_gadgets, h_gadget, k2_multi, petersen_family};
use circflow::flows::{circular_flow_number, has_nwz_flow, Budget};
use circflow::graph::odd_cut_obstruction;
use circflow::rational::rat;

fn main() -> circflow::Result<()> {
    let (h, labels) = h_gadget(2)?;
    println!("h_gadget(2): degrees {:?}, labels {labels:?}", h.degrees());

    let (glued, gadgets) = glue_gadgets(&k2_multi(1)?, 2)?;
    let cut = odd_cut_obstruction(&glued, 20)?;
    let fc = circular_flow_number(&glued, glued.n() as i64, &Budget::default())?;
    println!(
        "glued: n = {}, m = {}, gadgets {gadgets:?}, odd cut size {:?}, class {:?}, F_c = {}",
        glued.n(),
        glued.m(),
        cut.found().map(|c| c.size()),
        classify(&glued, 1_000_000_000, 20)?.class,
        fc.value.expect("bridgeless")
    );

    let p5 = petersen_family(2)?;
    println!("petersen_family(2): degree {:?}, m = {}", p5.regular_degree(), p5.m());
    println!("  class {:?}", classify(&p5, 1_000_000_000, 20)?.class);
    println!(
        "  flow at 11/4: {:?}",
        has_nwz_flow(&p5, rat(11, 4), &Budget::default()).verdict
    );
    Ok(())
}
