//! Normal forms in the enveloping algebra and PBW symmetrization.
//!
//!     cargo run --example enveloping_algebra

use lie_duflo::envalg::{Enveloping, FreeWordExpression, RewriteStrategy};
use lie_duflo::{liealg, Result, SymPolynomial};
use std::sync::Arc;

pub fn run() -> Result<()> {
    let sc = Arc::new(liealg::sl2());
    let names = sc.basis_names().to_vec();
    let env = Enveloping::new(sc);

    // f h e in the ordered basis e < h < f
    let word = FreeWordExpression::word(3, &[2, 1, 0])?;
    let left = env.rewrite(&word, RewriteStrategy::LeftmostInversion)?;
    let right = env.rewrite(&word, RewriteStrategy::RightmostInversion)?;
    assert_eq!(left, right);
    println!("f*h*e = {}", env.normal_form(&word)?.display(&names));

    let e = env.generator(0)?;
    let f = env.generator(2)?;
    println!("[e, f] = {}", env.commutator(&e, &f)?.display(&names));

    let ef = SymPolynomial::var(3, 0).mul(&SymPolynomial::var(3, 2))?;
    let sym = env.pbw_symmetrize(&ef)?;
    println!("sym(e*f) = {}", sym.display(&names));
    println!("back to S(g): {}", env.pbw_inverse(&sym)?.display(&names));

    let cube = SymPolynomial::var(3, 0).mul(&SymPolynomial::var(3, 1))?.mul(&SymPolynomial::var(3, 2))?;
    println!("sym(e*h*f) = {}", env.pbw_symmetrize(&cube)?.display(&names));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
