//! Silting objects, their mutations and partial order in the homotopy
//! category of projectives over a finite-dimensional bound quiver algebra,
//! cross-checked against support τ-tilting pairs and torsion classes.

pub mod algebra;
pub mod algmat;
pub mod error;
pub mod field;
pub mod fz;
pub mod homotopy;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod rep;
pub mod silting;
pub mod tau_tilt;

pub use error::{Error, Result};
