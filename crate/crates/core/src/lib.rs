//! Khovanov's diagram algebra and its generalisations.
//!
//! For a finite block `Λ` of weights this crate builds the quasi-hereditary
//! algebra `K_Λ`, whose basis is the set of oriented circle diagrams `(aλb)`,
//! and its subalgebra `H_Λ` spanned by diagrams whose cup and cap weights have
//! maximal defect. Products are computed by surgery on stacked diagrams; a
//! second, independent route through closed diagrams of a larger block is
//! kept for cross-checking. On top of that sit the graded decomposition and
//! Cartan matrices, cell modules, standard filtrations and the symmetrising
//! form of `H_Λ`.
//!
//! Coefficients are generic over [`Coefficient`]; the aliases below fix them
//! to `i64`, which is ample for every block this crate can enumerate, while
//! `BigInt` and rationals are available when needed.
//!
//! ```
//! use khovanov::{algebra, BasisDiagram, IntElement};
//!
//! let b: BasisDiagram = "(1,2)|^v|".parse().unwrap();
//! let a: BasisDiagram = "|^v|(1,2)".parse().unwrap();
//! let ba = algebra::multiply(&IntElement::from_basis(b), &IntElement::from_basis(a)).unwrap();
//! assert_eq!(ba.to_string(), "+1·((1,2)|^v|(1,2))");
//! ```

pub mod algebra;
pub mod basis;
pub mod block;
pub mod closure;
pub mod coeff;
pub mod diagram;
pub mod element;
pub mod error;
pub mod laurent;
pub mod render;
pub mod rep;
pub mod surgery;
pub mod verify;
pub mod weight;

pub use basis::BasisDiagram;
pub use block::Block;
pub use coeff::Coefficient;
pub use diagram::{CapDiagram, CupDiagram};
pub use element::Element;
pub use error::{Error, Result};
pub use laurent::{LaurentPoly, PolyMatrix};
pub use weight::{Label, Weight};

pub type IntElement = Element<i64>;
pub type BigElement = Element<num_bigint::BigInt>;
pub type IntPoly = LaurentPoly<i64>;
pub type IntPolyMatrix = PolyMatrix<i64>;
