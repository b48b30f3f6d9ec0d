//! A combinatorial calculus for circular generalized Heegaard splittings
//! of knot and link exteriors.
//!
//! The library models splittings as incidence structures of abstract
//! surfaces (thin, thick, ambient boundary) and A/B-labeled compression
//! bodies, tracks handle numbers and handle indices exactly, and rewrites
//! splittings by amalgamation, weak reduction, inflation, stabilization
//! and annulus chops. On top of that sits an evaluator for Morse-Novikov
//! numbers of knots presented as expressions in connected sums, cables and
//! satellites over a table of base-knot facts.

pub mod body;
pub mod complex;
pub mod construct;
pub mod format;
pub mod fuzz;
pub mod knot;
pub mod moves;
pub mod scenario;
pub mod surface;

pub use body::{BodyId, BodyShape, CompressionBody, Label};
pub use complex::{Assumption, BodyCensus, Role, SplittingComplex, Violation};
pub use moves::{MoveOutcome, MoveRecord, WeakReductionMove};
pub use surface::{
    ComponentId, Surface, SurfaceComponent, SutureId, SutureKind,
};
