//! Ground truth independent of the SAT engine: exhaustive search over all
//! permutations, seeded instance generators, and certificate checks.

mod brute;
mod generate;

pub use brute::{all_copies, all_permutations, brute_force_lexmin, BRUTE_FORCE_LIMIT};
pub use generate::{generate, GeneratorKind, GeneratorSpec};

use crate::magma::{Magma, Permutation};

/// Whether `f` carries `m` onto `claimed`. Says nothing about minimality.
pub fn verify_lexmin_certificate(m: &Magma, claimed: &Magma, f: &Permutation) -> bool {
    m.order() == claimed.order()
        && f.order() == m.order()
        && m.apply_permutation(f).is_ok_and(|copy| &copy == claimed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::scrambled_z7;

    #[test]
    fn certificate_checks() {
        let m = scrambled_z7();
        let (lexmin, f) = brute_force_lexmin(&m).unwrap();
        assert!(verify_lexmin_certificate(&m, &lexmin, &f));
        assert!(verify_lexmin_certificate(&m, &m, &Permutation::identity(7)));
        let tampered = lexmin.with_cell(6, 6, 0).unwrap();
        assert!(!verify_lexmin_certificate(&m, &tampered, &f));
        assert!(!verify_lexmin_certificate(&m, &lexmin, &Permutation::identity(3)));
    }
}
