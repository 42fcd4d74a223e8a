//! The symmetric algebra with its linear Poisson bracket: brackets,
//! invariants and coinvariants.
//!
//!     cargo run --example symmetric_algebra

use lie_duflo::exactlin::{frac, q};
use lie_duflo::liealg;
use lie_duflo::sympoly::{component_dim, poisson_bracket};
use lie_duflo::{Result, SymPolynomial, Workbench};

pub fn run() -> Result<()> {
    let wb = Workbench::new(liealg::sl2());
    let names = wb.names();
    let (e, h, f) = (SymPolynomial::var(3, 0), SymPolynomial::var(3, 1), SymPolynomial::var(3, 2));

    let sc = wb.structure();
    println!("{{e, f}} = {}", poisson_bracket(sc, &e, &f)?.display(names));
    println!("{{h, e^2}} = {}", poisson_bracket(sc, &h, &e.pow(2))?.display(names));

    let casimir = h.pow(2).add(&e.mul(&f)?.scale(&q(4)))?;
    for x in [&e, &h, &f] {
        assert!(poisson_bracket(sc, x, &casimir)?.is_zero());
    }
    println!("Casimir {} is Poisson-central", casimir.display(names));

    println!("\n k  dim S^k  invariants  {{g,S}}  coinvariants");
    for k in 0..=6 {
        let inv = wb.subspaces().invariants(k)?;
        let span = wb.subspaces().g_span(k)?;
        let total = component_dim(3, k);
        println!("{k:>2}  {total:>7}  {:>10}  {:>5}  {:>12}", inv.dim(), span.dim(), total - span.dim());
    }

    // {e, h*f} = h^2 - 2*e*f, so e*f and h^2/2 have the same class in the coinvariants
    let a = wb.subspaces().coinvariant_class(&e.mul(&f)?, 2)?;
    let b = wb.subspaces().coinvariant_class(&h.pow(2).scale(&frac(1, 2)), 2)?;
    println!("\n[e*f] = [h^2/2] in coinvariants: {}", a == b);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
