//! The small relations used throughout the examples and tests.

use crate::relation::Relation;

/// `A(x, y) = {(1, 2), (1, 3)}`
pub fn example_a() -> Relation {
    Relation::from_table(&["x", "y"], [[1, 2], [1, 3]]).expect("fixture")
}

/// `B(y, z) = {(1, 3), (2, 4)}`
pub fn example_b() -> Relation {
    Relation::from_table(&["y", "z"], [[1, 3], [2, 4]]).expect("fixture")
}

/// `C(z) = {3, 7}`
pub fn example_c() -> Relation {
    Relation::from_table(&["z"], [[3], [7]]).expect("fixture")
}

/// The named fixtures `A`, `B` and `C`.
pub fn named() -> Vec<(&'static str, Relation)> {
    vec![("A", example_a()), ("B", example_b()), ("C", example_c())]
}

/// The "famous animals" formal context as a cross table.
pub const FAMOUS_ANIMALS: &str = "\
,cartoon,real,tortoise,dog,cat,mammal
Garfield,x,,,,x,x
Snoopy,x,,,x,,x
Socks,,x,,,x,x
Bobby,,x,,x,,x
Harriet,,x,x,,,
";
