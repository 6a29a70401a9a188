//! Local entropy of finite-length endomorphisms of local rings presented as
//! quotients of polynomial rings over prime fields.
//!
//! The crate is layered bottom-up:
//!
//! * [`polyring`]: exact polynomial arithmetic over `F_p`;
//! * [`groebner`]: reduced Gröbner bases, normal forms, staircases, dimension;
//! * [`ideals`]: local colength at the origin, certified by truncation;
//! * [`dynamics`]: endomorphisms, iteration, morphisms of dynamical systems;
//! * [`entropy`]: length sequences and entropy estimators;
//! * [`harness`]: exact per-iterate checks of additivity and subadditivity;
//! * [`oracle`]: an independent linear-algebra colength used for cross-checks;
//! * [`dsl`]: the `.lad` fixture language.

pub mod dsl;
pub mod dynamics;
pub mod entropy;
pub mod error;
pub mod groebner;
pub mod harness;
pub mod ideals;
pub mod oracle;
pub mod polyring;

pub use error::{Error, ErrorKind, Result};
