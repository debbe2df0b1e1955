//! Small named tables used throughout the tests and documentation.

use crate::magma::Magma;

/// An order-7 quasigroup whose lexmin copy is addition modulo 7. Row 4
/// (1-based) is the identity row.
pub fn scrambled_z7() -> Magma {
    Magma::from_one_based(&[
        [7, 5, 6, 1, 4, 2, 3],
        [5, 3, 1, 2, 6, 7, 4],
        [6, 1, 5, 3, 7, 4, 2],
        [1, 2, 3, 4, 5, 6, 7],
        [4, 6, 7, 5, 2, 3, 1],
        [2, 7, 4, 6, 3, 1, 5],
        [3, 4, 2, 7, 1, 5, 6],
    ])
    .expect("valid table")
}

/// `1*1 = 1`, everything else `2`; its lexmin swaps the two elements.
pub fn two_element_example() -> Magma {
    Magma::from_one_based(&[[1, 2], [2, 2]]).expect("valid table")
}
