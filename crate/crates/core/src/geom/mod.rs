//! Geometric models: circular arcs, real intervals, chords, and the symbolic
//! point line used to lay out chord models.

pub mod arc;
pub mod chord;
pub mod interval;
pub mod symbolic;

pub use arc::{ring_model, Arc, CircularArcModel};
pub use chord::ChordModel;
pub use interval::{Interval, IntervalModel};
pub use symbolic::{Handle, SymbolicLine};
