//! Thick subcategory lattices of derived categories of representation-finite
//! type-A path algebras, their centres, spatial frames, and machine checks of
//! localization and Mayer-Vietoris sequences.

pub mod bousfield;
pub mod centre;
pub mod complexes;
pub mod derived;
pub mod dot;
pub mod field;
pub mod frames;
pub mod ind;
pub mod mv;
pub mod nc;
pub mod quiver;
pub mod rep;
pub mod report;
pub mod tensor;
pub mod thick;
pub mod verdier;

// The guide chapters under book/src are attached here as hidden modules so
// that their code examples run as doc-tests and stay in sync with the API.
#[doc = include_str!("../../../book/src/introduction.md")]
#[doc(hidden)]
pub mod _guide_introduction {}
#[doc = include_str!("../../../book/src/model.md")]
#[doc(hidden)]
pub mod _guide_model {}
#[doc = include_str!("../../../book/src/lattice.md")]
#[doc(hidden)]
pub mod _guide_lattice {}
#[doc = include_str!("../../../book/src/centre.md")]
#[doc(hidden)]
pub mod _guide_centre {}
#[doc = include_str!("../../../book/src/frames.md")]
#[doc(hidden)]
pub mod _guide_frames {}
#[doc = include_str!("../../../book/src/verification.md")]
#[doc(hidden)]
pub mod _guide_verification {}
#[doc = include_str!("../../../book/src/tensor.md")]
#[doc(hidden)]
pub mod _guide_tensor {}
#[doc = include_str!("../../../book/src/cli.md")]
#[doc(hidden)]
pub mod _guide_cli {}
