//! A relational algebra whose only primitive operators are natural join and
//! generalized union.
//!
//! Relations ordered by `a ≤ b ⟺ b = a ⋈ b` form a lattice with join `⋈`
//! and meet `∪̄`. Selection, projection, renaming, difference, tensor
//! product and transitive closure are all derived from the two primitives,
//! with selection and renaming going through possibly infinite
//! [symbolic relations](symbolic).
//!
//! ```
//! use relattice::{natural_join, generalized_union, Relation};
//!
//! let a = Relation::from_table(&["x", "y"], [[1, 2], [1, 3]]).unwrap();
//! let b = Relation::from_table(&["y", "z"], [[1, 3], [2, 4]]).unwrap();
//! assert_eq!(natural_join(&a, &b).len(), 1);
//! assert_eq!(generalized_union(&a, &b).len(), 3);
//! ```

pub mod closure;
pub mod derived;
pub mod error;
pub mod fca;
pub mod fixtures;
pub mod format;
pub mod io;
pub mod kernel;
pub mod laws;
pub mod query;
pub mod relation;
pub mod symbolic;
pub mod value;

pub use closure::{
    find_distributivity_violation, find_modularity_violation, find_n5, lattice_closure,
    LatticeClosure, Pentagon,
};
pub use derived::{
    cartesian, compose, difference, difference_literal, projection, rename, select,
    tensor_product, tensor_product_on, transitive_closure, RenameSpec,
};
pub use error::{Error, Result};
pub use format::format_relation;
pub use kernel::{generalized_union, leq_by_join, leq_by_union, natural_join};
pub use laws::{check_distributivity, check_laws, check_modularity, Law, LawReport, RandomRelations, Sampler, Witness};
pub use relation::{dee, dum, empty, kernel_project, make_relation, relation_equal, Header, Relation, Tuple};
pub use symbolic::{
    const_cmp_rel, cmp_rel, eq_rel, join_with_symbolic, neq_rel, restrict, RelOp, RestrictResult,
    SymbolicRelation,
};
pub use value::{attr, Attr, Value};
