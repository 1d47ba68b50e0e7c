mod balance;
mod codegree_graph;
mod collection;
mod dichotomy;
mod driver;
mod expand;
mod extend;

pub use balance::*;
pub use codegree_graph::*;
pub use collection::*;
pub use dichotomy::*;
pub use driver::*;
pub use expand::*;
pub use extend::*;
