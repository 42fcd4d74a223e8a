//! Build Lie algebras from structure constants, validate them, and look at
//! their adjoint matrices.
//!
//!     cargo run --example structure_constants

use lie_duflo::exactlin::{format_rational, q};
use lie_duflo::liealg::{self, StructureConstants};
use lie_duflo::Result;

pub fn run() -> Result<()> {
    for name in liealg::CATALOG {
        let sc = liealg::catalog(name)?;
        println!("{:<16} dim {}  {}", sc.name(), sc.dim(), sc.validate().describe(&sc));
    }

    // the standard sl2 triple, basis order e < h < f
    let sl2 = liealg::sl2();
    let ad_h = sl2.ad_matrix(sl2.index_of("h").unwrap())?.matrix;
    println!("\nad h in sl2:");
    for r in 0..ad_h.rows() {
        let row: Vec<String> = ad_h.row(r).iter().map(format_rational).collect();
        println!("  [{}]", row.join(", "));
    }

    // an algebra with the wrong sign on [e, h] is rejected by validate
    let broken = StructureConstants::new(
        "broken",
        vec!["e".into(), "h".into(), "f".into()],
        [(0, 1, vec![(0, q(2))]), (0, 2, vec![(1, q(1))]), (1, 2, vec![(2, q(-2))])],
    )?;
    println!("\n{}", broken.validate().describe(&broken));

    // JSON round trip
    let json = sl2.to_json_string();
    assert_eq!(StructureConstants::from_json_str(&json)?.to_json_string(), json);
    println!("\n{json}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
