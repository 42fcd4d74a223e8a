//! The defect c(a, b) = a * b - a.b of the Duflo star product for an
//! invariant a, with the bracket witness that puts it in {g, S(g)}.
//!
//!     cargo run --example defect_witness [algebra]

use lie_duflo::exactlin::{format_rational, q};
use lie_duflo::{liealg, Containment, Monomial, Result, SymPolynomial, Workbench};

pub fn run_on(algebra: &str) -> Result<()> {
    let wb = Workbench::new(liealg::catalog(algebra)?);
    let names = wb.names();
    let n = wb.dim();
    let alphas: Vec<SymPolynomial> = (1..=2).flat_map(|k| wb.subspaces().invariants(2 * k).map(|s| s.basis_polynomials())).flatten().collect();

    for alpha in alphas.iter().take(2) {
        for beta in Monomial::all_of_degree(n, 2).into_iter().take(3) {
            let beta = SymPolynomial::from_monomial(beta, q(1));
            let defect = wb.extract_c(alpha, &beta)?;
            println!("alpha = {}, beta = {}", alpha.display(names), beta.display(names));
            println!("  c = {}", defect.c.display(names));
            for comp in &defect.components {
                let terms: Vec<String> = comp
                    .witness
                    .iter()
                    .flat_map(|w| w.terms.iter())
                    .map(|t| format!("{} {}", format_rational(&t.coeff), t.label))
                    .collect();
                println!("  degree {}: {:?} via {}", comp.degree, comp.containment, terms.join(" + "));
            }
            assert_eq!(defect.containment(), Containment::GSpan);
            assert!(defect.reconstructs());
        }
    }
    Ok(())
}

pub fn run() -> Result<()> {
    run_on("sl2")
}

#[allow(dead_code)]
fn main() -> Result<()> {
    match std::env::args().nth(1) {
        Some(name) => run_on(&name),
        None => run(),
    }
}
