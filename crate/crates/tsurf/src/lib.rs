//! Exact computations with translation surfaces over cyclotomic fields.
//!
//! Coordinates are elements of `Q(ζ_N)` ([`numfield::CycNum`]) so every
//! geometric predicate is decided exactly. The modules build on each other:
//! [`surface`] for the data model, [`flow`] for straight-line flow and
//! cylinders, [`veech`] for affine symmetries and trace fields, [`homology`]
//! for the action on first homology and [`hodge`] for the Wiman family.

pub mod flow;
pub mod hodge;
pub mod homology;
pub mod numfield;
pub mod par;
pub mod surface;
pub mod veech;
