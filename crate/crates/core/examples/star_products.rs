//! Star products on S(g) transported from U(g) along symmetrization (Gutt)
//! and along the Duflo map.
//!
//!     cargo run --example star_products

use lie_duflo::exactlin::q;
use lie_duflo::sympoly::poisson_bracket;
use lie_duflo::{liealg, Result, StarFlavor, SymPolynomial, Workbench};

pub fn run() -> Result<()> {
    let wb = Workbench::new(liealg::heisenberg3());
    let names = wb.names();
    let (x, y) = (SymPolynomial::var(3, 0), SymPolynomial::var(3, 1));

    for flavor in [StarFlavor::Gutt, StarFlavor::Duflo] {
        let xy = wb.star_product(&x, &y, flavor)?;
        let comm = wb.star_commutator(&x.pow(2), &y, flavor)?;
        println!("{flavor:?}: x*y = {}   [x^2, y]_* = {}", xy.display(names), comm.display(names));
    }
    println!("{{x^2, y}} = {}", poisson_bracket(wb.structure(), &x.pow(2), &y)?.display(names));

    // on sl2 the two flavors differ in lower order terms
    let wb = Workbench::new(liealg::sl2());
    let names = wb.names();
    let (e, h, f) = (SymPolynomial::var(3, 0), SymPolynomial::var(3, 1), SymPolynomial::var(3, 2));
    let omega = h.pow(2).add(&e.mul(&f)?.scale(&q(4)))?;
    for flavor in [StarFlavor::Gutt, StarFlavor::Duflo] {
        let p = wb.star_product(&omega, &e, flavor)?;
        println!("sl2 {flavor:?}: Omega * e = {}", p.display(names));
        let left = wb.star_product(&wb.star_product(&e, &h, flavor)?, &f, flavor)?;
        let right = wb.star_product(&e, &wb.star_product(&h, &f, flavor)?, flavor)?;
        assert_eq!(left, right);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
