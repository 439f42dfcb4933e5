//! Values computed once by the library, cross-checked by hand where small,
//! and frozen here so regressions show up as exact diffs.

use flagk_core::idemkit::{build_pair, Family};
use flagk_core::loopgen::op_psi;
use flagk_core::loopgen::PsiSign;
use flagk_core::shapes::{box_partitions, Composition, Partition};
use flagk_core::sodlab::{
    component_split, gram, label, verify_diagonal_action, verify_duality, verify_exceptionality, Collection,
};
use flagk_core::IntMatrix;

fn rows(m: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

#[test]
fn grassmannian_gr_2_4_gram_matrices() {
    let g = gram(2, 4, Collection::Kapranov).unwrap();
    let order: Vec<String> = g.order.iter().map(label).collect();
    assert_eq!(order, ["(2,2)", "(2,1)", "(2)", "(1,1)", "(1)", "()"]);
    assert_eq!(
        g.entries,
        rows(&[
            &[1, 0, 0, 0, 0, 0],
            &[4, 1, 0, 0, 0, 0],
            &[10, 4, 1, 0, 0, 0],
            &[6, 4, 0, 1, 0, 0],
            &[20, 16, 4, 4, 1, 0],
            &[20, 20, 10, 6, 4, 1],
        ])
    );
    let d = gram(2, 4, Collection::Dual).unwrap();
    let order: Vec<String> = d.order.iter().map(label).collect();
    assert_eq!(order, ["()", "(1)", "(1,1)", "(2)", "(2,1)", "(2,2)"]);
    assert!(d.entries.is_lower_unitriangular());
    assert_eq!(d.entries.get(5, 0), 20);
    assert_eq!(d.entries.get(1, 0), -4);
}

#[test]
fn both_collections_are_exceptional_in_the_listed_order() {
    for n in 2..=6 {
        for k in 1..n {
            for which in [Collection::Kapranov, Collection::Dual] {
                let r = verify_exceptionality(k, n, which);
                assert!(r.passed(), "{which:?} k={k} N={n}");
                assert_eq!(r.params["order"], "default", "{which:?} k={k} N={n}");
            }
        }
    }
}

#[test]
fn duality_pairs_each_partition_with_its_transpose() {
    for n in 2..=6 {
        for k in 1..n {
            let r = verify_duality(k, n);
            assert!(r.passed());
            assert_eq!(r.params["matching"], "transpose", "k={k} N={n}");
            let signs: Vec<i64> = serde_json::from_value(r.params["signs"].clone()).unwrap();
            assert!(signs.iter().all(|&s| s == 1), "k={k} N={n}");
        }
    }
    let r = verify_duality(1, 3);
    let pairs: Vec<String> = serde_json::from_value(r.params["bijection"].clone()).unwrap();
    assert_eq!(pairs, ["()->()", "(1)->(1)", "(1,1)->(2)"]);
}

#[test]
fn diagonal_action_on_gr_2_4() {
    let r = verify_diagonal_action(2, 4);
    assert!(r.passed());
    // Kapranov order (2,2),(2,1),(2),(1,1),(1),(); dual order (),(1),(1,1),(2),(2,1),(2,2).
    assert_eq!(r.params["t_prime_diagonal"], serde_json::json!([0, 0, 0, 1, 1, 1]));
    assert_eq!(
        r.params["t_double_prime_diagonal"],
        serde_json::json!([1, 1, 1, 0, 0, 0])
    );
    let split = component_split(2, 4).unwrap();
    assert_eq!(split.ranks, (3, 3));
    let part = |v: &[usize]| Partition::new(v.to_vec()).unwrap();
    assert_eq!(split.t_generators, vec![part(&[1, 1]), part(&[1]), part(&[])]);
    assert_eq!(split.s_generators, vec![part(&[2, 2]), part(&[2, 1]), part(&[2])]);
}

#[test]
fn component_ranks_up_to_n_6() {
    let expected = [
        (2, vec![(1, 1)]),
        (3, vec![(2, 1), (1, 2)]),
        (4, vec![(3, 1), (3, 3), (1, 3)]),
        (5, vec![(4, 1), (6, 4), (4, 6), (1, 4)]),
        (6, vec![(5, 1), (10, 5), (10, 10), (5, 10), (1, 5)]),
    ];
    for (n, ranks) in expected {
        for (k, want) in (1..n).zip(ranks) {
            assert_eq!(component_split(k, n).unwrap().ranks, want, "k={k} N={n}");
        }
    }
}

#[test]
fn idempotent_on_the_projective_plane() {
    // Gr(1,3), basis (2),(1),(): T' fixes O and O(-1) and kills O(-2).
    let k = Composition::new(vec![1, 2]).unwrap();
    let p = build_pair(Family::Prime, 1, &k).unwrap();
    assert_eq!(p.t.matrix().unwrap(), &rows(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
    assert_eq!(p.s.matrix().unwrap(), &rows(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]));
    assert_eq!(box_partitions(2, 1).len(), 3);
}

#[test]
fn psi_plus_on_the_projective_line() {
    // Multiplication by [Q] with the [-1] shift: [O] -> -(2[O] - [O(-1)]).
    let k = Composition::new(vec![1, 1]).unwrap();
    let m = op_psi(1, PsiSign::Plus, 1, &k).unwrap();
    let m = m.matrix().unwrap();
    assert_eq!(m.column(1).iter().map(|v| v.abs()).collect::<Vec<_>>(), vec![1, 2]);
}
