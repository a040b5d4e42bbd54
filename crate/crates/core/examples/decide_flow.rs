//! Decide single flow questions and print a checked certificate.
//!
//! cargo run --release --example decide_flow

use circflow::constructions::petersen;
use circflow::flows::{has_nwz_flow, normalize_positive, verify_flow, Budget, Verdict};
use circflow::rational::rat;

fn main() -> circflow::Result<()> {
    let g = petersen();
    for r in [rat(5, 1), rat(9, 2)] {
        let d = has_nwz_flow(&g, r, &Budget::default());
        println!("Petersen, r = {r}: {:?} after {} nodes", d.verdict, d.stats.nodes);
        if d.verdict == Verdict::Yes {
            let f = d.certificate.expect("yes carries a flow");
            assert!(verify_flow(&g, &f)?);
            print!("{}", f.to_text());
            let (orient, values) = normalize_positive(&g, &f)?;
            println!("positive form: net out-degrees {:?}", orient.net_out_degree(&g));
            println!("values {:?}", values.iter().map(|v| v.to_string()).collect::<Vec<_>>());
        }
    }
    Ok(())
}
