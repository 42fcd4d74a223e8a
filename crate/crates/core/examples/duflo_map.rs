//! The Duflo map: coefficients, trace elements, the strange map and the
//! homomorphism property on sl2 invariants.
//!
//!     cargo run --example duflo_map

use lie_duflo::exactlin::{format_rational, q};
use lie_duflo::{duflo_coefficients, liealg, Monomial, Result, SymPolynomial, Workbench};

pub fn run() -> Result<()> {
    let coeffs = duflo_coefficients(8)?;
    for (k, a) in &coeffs.alpha {
        println!("alpha_{k} = {}", format_rational(a));
    }

    let wb = Workbench::new(liealg::sl2());
    let names = wb.names();
    println!("\nTr_2 = {}", wb.trace(2)?.display(names));
    println!("Tr_4 = {}", wb.trace(4)?.display(names));

    let casimir = SymPolynomial::from_terms(3, [(Monomial::new(vec![0, 2, 0]), q(1)), (Monomial::new(vec![1, 0, 1]), q(4))])?;
    println!("\nstrange(Omega) = {}", wb.strange_map(&casimir)?.display(names));
    println!("pbw(Omega)     = {}", wb.pbw_map(&casimir)?.display(names));
    println!("duflo(Omega)   = {}", wb.duflo_map(&casimir)?.display(names));

    // the Duflo map is multiplicative on invariants, symmetrization is not
    let sq = casimir.pow(2);
    let env = wb.enveloping();
    let d = env.product(&wb.duflo_map(&casimir)?, &wb.duflo_map(&casimir)?)?;
    let p = env.product(&wb.pbw_map(&casimir)?, &wb.pbw_map(&casimir)?)?;
    println!("\nduflo(Omega)^2 == duflo(Omega^2): {}", d == wb.duflo_map(&sq)?);
    println!("pbw(Omega)^2   == pbw(Omega^2):   {}", p == wb.pbw_map(&sq)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
