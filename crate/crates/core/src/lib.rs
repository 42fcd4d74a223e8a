//! Exact symbolic workbench for the Duflo map.
//!
//! Given a finite-dimensional Lie algebra by its rational structure
//! constants, this crate builds the symmetric algebra `S(g)` with its linear
//! Poisson bracket, the enveloping algebra `U(g)` on the PBW basis, PBW
//! symmetrization, the trace operators `Tr_k`, the Duflo map
//! `φ_D = φ_PBW ∘ φ_strange`, and the star products obtained by transporting
//! the product of `U(g)` back to `S(g)`. On top of that sits a catalogue of
//! exact checks: the Duflo homomorphism on invariants, the defect
//! `c(α, β) = α ⋆ β − α·β` and its membership in the bracket span
//! `{g, S(g)}`, the semisimple decomposition of `S(sl2)`, and so on.
//!
//! All arithmetic is over arbitrary-precision rationals; there are no
//! tolerances anywhere.
//!
//! ```
//! use lie_duflo::{liealg, SymPolynomial, Workbench};
//!
//! let wb = Workbench::new(liealg::sl2());
//! let casimir = SymPolynomial::from_json_str(3, r#"{"terms":[
//!     {"exps":[0,2,0],"coeff":"1"}, {"exps":[1,0,1],"coeff":"4"}]}"#).unwrap();
//! let image = wb.duflo_map(&casimir).unwrap();
//! assert_eq!(image.display(wb.names()), "h^2 + 4*e*f - 2*h + 1");
//! ```

pub mod cli;
pub mod duflo;
pub mod envalg;
pub mod error;
pub mod exactlin;
pub mod liealg;
pub mod sympoly;
pub mod verify;

pub use duflo::{duflo_coefficients, trace_element, Containment, Defect, StarFlavor, Workbench};
pub use envalg::{EnvElement, Enveloping, FreeWordExpression, RewriteStrategy};
pub use error::{Error, Result};
pub use exactlin::{RationalMatrix, SubspaceBasis, Q};
pub use liealg::StructureConstants;
pub use sympoly::{DualPolynomial, GradedSubspace, Monomial, SymPolynomial};
