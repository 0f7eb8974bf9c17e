//! Exact-arithmetic workbench for completions of modules and complexes:
//! Smith-normal-form linear algebra over computable commutative rings,
//! finitely presented modules, bounded complexes up to homotopy, Koszul
//! torsion/completion towers, Matlis duality over artinian local rings, and
//! a sequential-completion engine with horizon-bounded certificates.

pub mod complex;
pub mod error;
pub mod koszul;
pub mod linalg;
pub mod matlis;
pub mod matrix;
pub mod module;
pub mod ring;
pub mod seq;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use module::{Ideal, ModuleMorphism, PresentedModule};
pub use ring::{Elem, Ring};
