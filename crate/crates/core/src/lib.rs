//! Dominating-set reconfiguration under token sliding.
//!
//! * [`graph`]: graphs, multiset token configurations, slides, sequence validation.
//! * [`geom`]: circular-arc, interval and chord models.
//! * [`interval_dom`]: domination primitives on interval graphs.
//! * [`carc`]: the polynomial decision procedure on circular-arc graphs.
//! * [`reduction`]: SAT reconfiguration to circle-graph token sliding.
//! * [`oracle`]: brute-force reconfiguration and SAT-reconfiguration search.
//! * [`cli`]: the `dsr` command line.

pub mod carc;
pub mod cli;
pub mod error;
pub mod generate;
pub mod geom;
pub mod graph;
pub mod interval_dom;
mod io;

pub use error::{Error, Result};
pub use graph::{
    apply_slide, is_dominating, validate_sequence, Graph, ReconfSequence, SlideMove, TokenConfig,
    VertexId,
};
pub mod oracle;
pub mod reduction;
