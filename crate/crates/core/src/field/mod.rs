//! Exact formally real field towers over ℚ: quadratic extensions, Euclidean
//! hulls and Laurent series fields, with orderings and square classes.

mod element;
mod format;
mod ordering;
mod squares;
mod tower;

pub use element::Element;
pub use ordering::{Ordering, OrderingStep, Sign};
pub use squares::{SquareClassRep, SquareTest};
pub use tower::{FieldTower, TowerKind};
