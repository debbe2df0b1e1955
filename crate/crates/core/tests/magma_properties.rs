use std::cmp::Ordering;

use mlex::magma::format::{parse_table, parse_tables, serialize, Format};
use mlex::magma::invariant::{
    idempotent_apex, idempotents, occurrence_count, occurrence_profile, row_invariant, RowClass, ValueClass,
};
use mlex::{Magma, Permutation};
use proptest::prelude::*;

fn magma(max: usize) -> impl Strategy<Value = Magma> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n * n).prop_map(move |cells| Magma::new(n, cells).unwrap())
    })
}

fn magma_with_perms(max: usize) -> impl Strategy<Value = (Magma, Permutation, Permutation)> {
    (1..=max).prop_flat_map(|n| {
        let perm = || Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap());
        (
            proptest::collection::vec(0..n, n * n).prop_map(move |cells| Magma::new(n, cells).unwrap()),
            perm(),
            perm(),
        )
    })
}

proptest! {
    #[test]
    fn inverse_undoes_a_relabeling((m, f, _) in magma_with_perms(7)) {
        let copy = m.apply_permutation(&f).unwrap();
        prop_assert_eq!(copy.apply_permutation(&f.inverse()).unwrap(), m);
    }

    #[test]
    fn relabelings_compose((m, f, g) in magma_with_perms(7)) {
        let gf = g.compose(&f).unwrap();
        let stepwise = m.apply_permutation(&f).unwrap().apply_permutation(&g).unwrap();
        prop_assert_eq!(m.apply_permutation(&gf).unwrap(), stepwise);
    }

    #[test]
    fn lex_order_is_a_total_order(a in magma(1), b in magma(1), c in magma(1)) {
        prop_assert_eq!(a.lex_compare(&b).unwrap(), b.lex_compare(&a).unwrap().reverse());
        prop_assert_eq!(a.lex_compare(&a).unwrap(), Ordering::Equal);
        if a.lex_compare(&b).unwrap().is_le() && b.lex_compare(&c).unwrap().is_le() {
            prop_assert!(a.lex_compare(&c).unwrap().is_le());
        }
    }

    #[test]
    fn lex_order_agrees_with_cell_sequences(n in 1usize..5, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = Magma::new(n, (0..n * n).map(|_| rng.gen_range(0..n)).collect()).unwrap();
        let b = Magma::new(n, (0..n * n).map(|_| rng.gen_range(0..n)).collect()).unwrap();
        let ca: Vec<usize> = a.cells().collect();
        let cb: Vec<usize> = b.cells().collect();
        prop_assert_eq!(a.lex_compare(&b).unwrap(), ca.cmp(&cb));
        prop_assert_eq!(a.lex_compare(&b).unwrap() == Ordering::Equal, a == b);
    }

    #[test]
    fn row_invariants_follow_relabeling((m, f, _) in magma_with_perms(6)) {
        let copy = m.apply_permutation(&f).unwrap();
        for r in 0..m.order() {
            prop_assert_eq!(row_invariant(&m, r), row_invariant(&copy, f.apply(r)));
        }
    }

    #[test]
    fn idempotent_statistics_are_invariant((m, f, _) in magma_with_perms(6)) {
        let copy = m.apply_permutation(&f).unwrap();
        prop_assert_eq!(idempotent_apex(&m), idempotent_apex(&copy));
        prop_assert_eq!(idempotents(&m).len(), idempotents(&copy).len());
    }

    #[test]
    fn occurrence_profile_is_invariant((m, f, _) in magma_with_perms(6), k in 0usize..6) {
        let k = k % m.order();
        let copy = m.apply_permutation(&f).unwrap();
        let a = occurrence_profile(&m, Some(k));
        let b = occurrence_profile(&copy, Some(f.apply(k)));
        for rows in RowClass::ALL {
            for values in [ValueClass::FirstRow, ValueClass::Other] {
                prop_assert_eq!(a.per_row(rows, values), b.per_row(rows, values));
                prop_assert_eq!(a.per_col(rows, values), b.per_col(rows, values));
                prop_assert_eq!(a.total(rows, values), b.total(rows, values));
            }
        }
    }

    #[test]
    fn profile_maxima_match_a_recount(m in magma(6)) {
        let n = m.order();
        let p = occurrence_profile(&m, None);
        let row_max = (0..n).flat_map(|r| (0..n).map(move |a| (r, a)))
            .map(|(r, a)| occurrence_count(&m, r, a)).max().unwrap();
        let col_max = (0..n).flat_map(|c| (0..n).map(move |a| (c, a)))
            .map(|(c, a)| (0..n).filter(|&r| m.get(r, c) == a).count()).max().unwrap();
        let total_max = (0..n).map(|a| m.cells().filter(|&v| v == a).count()).max().unwrap();
        prop_assert_eq!(p.max_per_row() as usize, row_max);
        prop_assert_eq!(p.max_per_col() as usize, col_max);
        prop_assert_eq!(p.max_total() as usize, total_max);
    }

    #[test]
    fn formats_round_trip(m in magma(9)) {
        for format in [Format::Native, Format::Csv] {
            prop_assert_eq!(parse_table(&serialize(&m, format), format).unwrap(), m.clone());
        }
    }

    #[test]
    fn batches_round_trip(ms in proptest::collection::vec(magma(5), 0..5)) {
        let text: Vec<String> = ms.iter().map(|m| serialize(m, Format::Native)).collect();
        let parsed: Vec<Magma> = parse_tables(&text.join("\n"), Format::Native)
            .into_iter().map(Result::unwrap).collect();
        prop_assert_eq!(parsed, ms);
    }
}

#[test]
fn parse_examples() {
    let m = parse_table("2\n1 2\n2 2\n", Format::Native).unwrap();
    assert_eq!(m, Magma::from_one_based(&[[1, 2], [2, 2]]).unwrap());
    assert_eq!(parse_table("1\n1\n", Format::Native).unwrap().order(), 1);
    assert!(parse_table("2\n1 3\n2 2\n", Format::Native).is_err());
    let lexmin = Magma::from_one_based(&[[1, 1], [1, 2]]).unwrap();
    assert_eq!(serialize(&lexmin, Format::Native), "2\n1 1\n1 2\n");
}
