//! Bundled matrices of the worked examples.

use quatrange_core::QMatrix;

use crate::io::parse_matrix;

pub const EX3_6: &str = include_str!("../fixtures/ex3_6.json");
pub const EX3_8: &str = include_str!("../fixtures/ex3_8.json");
pub const EX4_4_K1: &str = include_str!("../fixtures/ex4_4_k1.json");
pub const EX4_4_K2: &str = include_str!("../fixtures/ex4_4_k2.json");
pub const EX4_4_K5: &str = include_str!("../fixtures/ex4_4_k5.json");
pub const EX5_4: &str = include_str!("../fixtures/ex5_4.json");

/// `(name, json)` for every bundled fixture.
pub const ALL: [(&str, &str); 6] = [
    ("ex3_6", EX3_6),
    ("ex3_8", EX3_8),
    ("ex4_4_k1", EX4_4_K1),
    ("ex4_4_k2", EX4_4_K2),
    ("ex4_4_k5", EX4_4_K5),
    ("ex5_4", EX5_4),
];

pub fn load(json: &str) -> QMatrix {
    parse_matrix(json).expect("bundled fixture parses")
}

/// The `D + N` fixtures with `k = |q12|² + |q13|²`.
pub fn ex4_4() -> [(f64, QMatrix); 3] {
    [(1.0, load(EX4_4_K1)), (2.0, load(EX4_4_K2)), (5.0, load(EX4_4_K5))]
}
