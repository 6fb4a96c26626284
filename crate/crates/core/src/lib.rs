//! Model checking and proof checking for graded similarity modalities
//! over finite ultra-metric spaces.

pub mod error;
pub mod formula;
pub mod grade;
pub mod model;
pub mod pointset;
pub mod semantics;
pub mod validity;
pub mod io;
pub mod generate;
pub mod constructions;
pub mod dendrogram;
pub mod space;

pub use error::Error;
pub use formula::{parse, Formula};
pub use grade::Grade;
pub use model::{Model, Valuation};
pub use pointset::PointSet;
pub use space::UltrametricSpace;
