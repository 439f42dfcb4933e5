//! Property tests for the structural invariants of each module.

use flagk_core::hecke0::{borel_reduce, borel_standard_monomials};
use flagk_core::idemkit::{build_pair, build_shifted_pair, conjugated_pair, shift_range, verify_complementary, Family};
use flagk_core::kgr::{euler_pairing, kclass_of_sym, kring, reduce_to_basis, sym_of_kclass, KClass};
use flagk_core::loopgen::{
    compose, eval_word, standard_model, verify_cat_shadows, Condition, Gen, GeneratorModel, KOperator, PsiSign, Weight,
};
use flagk_core::polycore::{act_transposition, demazure, mul, rat};
use flagk_core::shapes::{
    binomial, bott_straighten, box_partitions, compositions, gl_dim, lr_expand, straighten_weight, Composition,
    Partition,
};
use flagk_core::sodlab::{component_split, gram, verify_diagonal_action, Collection};
use flagk_core::LaurentPoly;
use proptest::prelude::*;

fn poly(n: usize, window: i32) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-window..=window, n), -4i64..=4), 1..6)
        .prop_map(move |terms| LaurentPoly::from_terms(n, terms.into_iter().map(|(e, c)| (e, rat(c)))).unwrap())
}

/// Number of variables and a Demazure index.
fn vars_and_index() -> impl Strategy<Value = (usize, usize)> {
    (2usize..=4).prop_flat_map(|n| (Just(n), 1..n))
}

fn partition(max_part: usize, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn grassmannian(max_n: usize) -> impl Strategy<Value = (usize, usize)> {
    (2..=max_n).prop_flat_map(|n| (1..n, Just(n)))
}

fn weight(n: usize, max_total: usize) -> impl Strategy<Value = Composition> {
    (1..=max_total).prop_flat_map(move |total| prop::sample::select(compositions(n, total)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn demazure_is_idempotent(((_n, i), seed) in vars_and_index().prop_flat_map(|(n, i)| (Just((n, i)), poly(n, 3)))) {
        let once = demazure(i, &seed).unwrap();
        prop_assert_eq!(demazure(i, &once).unwrap(), once);
    }

    #[test]
    fn demazure_output_is_invariant(((_n, i), p) in vars_and_index().prop_flat_map(|(n, i)| (Just((n, i)), poly(n, 3)))) {
        prop_assert!(demazure(i, &p).unwrap().is_invariant(i));
    }

    #[test]
    fn demazure_is_linear_over_invariants(
        ((_n, i), g, p) in vars_and_index().prop_flat_map(|(n, i)| (Just((n, i)), poly(n, 2), poly(n, 2)))
    ) {
        let f = &g + &act_transposition(i, &g).unwrap();
        let lhs = demazure(i, &mul(&f, &p).unwrap()).unwrap();
        let rhs = mul(&f, &demazure(i, &p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn transposition_is_an_involution(((_n, i), p) in vars_and_index().prop_flat_map(|(n, i)| (Just((n, i)), poly(n, 3)))) {
        let twice = act_transposition(i, &act_transposition(i, &p).unwrap()).unwrap();
        prop_assert_eq!(twice, p);
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in poly(3, 2), b in poly(3, 2), c in poly(3, 2)) {
        prop_assert_eq!(mul(&a, &b).unwrap(), mul(&b, &a).unwrap());
        let left = mul(&mul(&a, &b).unwrap(), &c).unwrap();
        let right = mul(&a, &mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn box_sizes_are_binomial(a in 0usize..=6, b in 0usize..=6) {
        prop_assert_eq!(box_partitions(a, b).len() as i64, binomial((a + b) as i64, b as i64));
    }

    #[test]
    fn dominant_weights_straighten_to_themselves(p in partition(5, 4), extra in 0usize..=2) {
        let seq = p.padded(p.len() + extra);
        let r = bott_straighten(&seq);
        prop_assert_eq!(r.sign, 1);
        prop_assert_eq!(r.shape, Some(p));
    }

    #[test]
    fn dot_action_swap_flips_the_sign(seq in prop::collection::vec(-4i64..=4, 2..=5), j in 0usize..4) {
        let j = j % (seq.len() - 1);
        let mut swapped = seq.clone();
        swapped[j] = seq[j + 1] - 1;
        swapped[j + 1] = seq[j] + 1;
        match (straighten_weight(&seq), straighten_weight(&swapped)) {
            (None, None) => {}
            (Some((s, w)), Some((t, v))) => {
                prop_assert_eq!(s, -t);
                prop_assert_eq!(w, v);
            }
            (a, b) => prop_assert!(false, "singularity differs: {:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn littlewood_richardson_symmetry_and_dimension(l in partition(3, 3), m in partition(3, 3), extra in 0usize..=1) {
        let len = (l.len() + m.len()).max(1);
        let lm = lr_expand(&l, &m, len);
        prop_assert_eq!(&lm, &lr_expand(&m, &l, len));
        let dim_n = len + extra;
        let total: u64 = lm.iter().map(|(nu, c)| c * gl_dim(&nu.padded(dim_n), dim_n).unwrap()).sum();
        let product = gl_dim(&l.padded(dim_n), dim_n).unwrap() * gl_dim(&m.padded(dim_n), dim_n).unwrap();
        prop_assert_eq!(total, product);
    }

    #[test]
    fn kapranov_basis_has_binomial_rank((k, n) in grassmannian(7)) {
        prop_assert_eq!(kring(k, n).rank() as i64, binomial(n as i64, k as i64));
    }

    #[test]
    fn reduction_is_idempotent_and_linear(
        (k, n) in grassmannian(5),
        e1 in prop::collection::vec((partition(5, 4), -3i64..=3), 0..4),
        e2 in prop::collection::vec((partition(5, 4), -3i64..=3), 0..4),
    ) {
        let keep = |e: Vec<(Partition, i64)>| -> Vec<(Partition, i64)> { e.into_iter().filter(|(p, _)| p.len() <= k).collect() };
        let (e1, e2) = (keep(e1), keep(e2));
        let r1 = reduce_to_basis(&e1, k, n).unwrap();
        let again: Vec<(Partition, i64)> = r1.coeffs().iter().map(|(p, c)| (p.clone(), *c)).collect();
        prop_assert_eq!(&reduce_to_basis(&again, k, n).unwrap(), &r1);
        let both: Vec<(Partition, i64)> = e1.iter().chain(&e2).cloned().collect();
        prop_assert_eq!(reduce_to_basis(&both, k, n).unwrap(), r1.plus(&reduce_to_basis(&e2, k, n).unwrap()));
    }

    #[test]
    fn euler_pairing_is_unit_on_the_diagonal_and_bilinear(
        (k, n) in grassmannian(5),
        a in prop::collection::vec(-2i64..=2, 20),
        b in prop::collection::vec(-2i64..=2, 20),
        pick in 0usize..20,
    ) {
        let ring = kring(k, n);
        let basis = ring.basis().to_vec();
        for l in &basis {
            prop_assert_eq!(euler_pairing(l, l, k, n).unwrap(), 1);
        }
        let ca = KClass::from_vector(k, n, &basis, &a[..basis.len()]).unwrap();
        let cb = KClass::from_vector(k, n, &basis, &b[..basis.len()]).unwrap();
        let c = KClass::basis(k, n, &basis[pick % basis.len()]).unwrap();
        let sum = ring.euler_form(&ca.plus(&cb), &c).unwrap();
        prop_assert_eq!(sum, ring.euler_form(&ca, &c).unwrap() + ring.euler_form(&cb, &c).unwrap());
        let sum = ring.euler_form(&c, &ca.plus(&cb)).unwrap();
        prop_assert_eq!(sum, ring.euler_form(&c, &ca).unwrap() + ring.euler_form(&c, &cb).unwrap());
    }

    #[test]
    fn line_bundle_classes_have_the_right_euler_characteristic(n in 2usize..=5, m in -10i64..=10) {
        let ring = kring(1, n);
        let class = ring.schur_v(&[m]).unwrap();
        prop_assert_eq!(ring.chi(&class).unwrap(), flagk_core::kgr::bwb_chi(&[m], 1, n).unwrap());
    }

    #[test]
    fn polynomial_bridge_round_trips((k, n) in grassmannian(5), v in prop::collection::vec(-3i64..=3, 20)) {
        let ring = kring(k, n);
        let c = KClass::from_vector(k, n, ring.basis(), &v[..ring.rank()]).unwrap();
        prop_assert_eq!(kclass_of_sym(&sym_of_kclass(&c).unwrap()).unwrap(), c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn borel_reduction_is_idempotent_linear_and_standard(
        (n, p, q) in (2usize..=4).prop_flat_map(|n| (Just(n), poly(n, 2), poly(n, 2)))
    ) {
        let rp = borel_reduce(&p, n).unwrap();
        prop_assert_eq!(&borel_reduce(&rp, n).unwrap(), &rp);
        let standard = borel_standard_monomials(n);
        prop_assert!(rp.terms().all(|(m, _)| standard.contains(&m.0)));
        let lhs = borel_reduce(&(&p + &q.scale_int(3)), n).unwrap();
        prop_assert_eq!(lhs, &rp + &borel_reduce(&q, n).unwrap().scale_int(3));
    }

    #[test]
    fn demazure_descends_to_the_borel_quotient(
        ((n, i), p) in (2usize..=4).prop_flat_map(|n| (Just(n), 1..n)).prop_flat_map(|(n, i)| (Just((n, i)), poly(n, 2)))
    ) {
        let direct = borel_reduce(&demazure(i, &p).unwrap(), n).unwrap();
        let via = borel_reduce(&demazure(i, &borel_reduce(&p, n).unwrap()).unwrap(), n).unwrap();
        prop_assert_eq!(direct, via);
    }

    #[test]
    fn psi_powers_are_inverse(
        (k, i, plus) in (2usize..=3).prop_flat_map(|n| (weight(n, 4), 1..n, any::<bool>()))
    ) {
        let w = Weight::from(&k);
        let sign = if plus { PsiSign::Plus } else { PsiSign::Minus };
        let word = [Gen::Psi(i, sign, 1), Gen::Psi(i, sign, -1)];
        let op = eval_word(standard_model(), &word, &w).unwrap();
        let check = flagk_core::loopgen::compare_operators("psi_inverse", &op, &KOperator::identity(&w));
        prop_assert!(check.passed(), "{:?}", check.witness);
    }

    #[test]
    fn psi_anticommutes_with_e_and_f(k in (2usize..=3).prop_flat_map(|n| weight(n, 4))) {
        let r = verify_cat_shadows(&k, &[Condition::PsiE, Condition::PsiF]);
        prop_assert!(r.passed(), "{:?}", r.failures().next());
    }

    #[test]
    fn idempotent_pairs_are_complementary(
        (k, i, prime) in (2usize..=3).prop_flat_map(|n| (weight(n, 4), 1..n, any::<bool>()))
    ) {
        let family = if prime { Family::Prime } else { Family::DoublePrime };
        let pair = build_pair(family, i, &k).unwrap();
        let r = verify_complementary(&pair);
        prop_assert!(r.passed(), "{:?}", r.failures().next());
        for index in shift_range(family, i, &k) {
            let direct = build_shifted_pair(family, i, index, &k).unwrap();
            let conj = conjugated_pair(family, i, index, &k).unwrap();
            prop_assert!(flagk_core::loopgen::compare_operators("t", &direct.t, &conj.t).passed());
            prop_assert!(flagk_core::loopgen::compare_operators("s", &direct.s, &conj.s).passed());
        }
    }

    #[test]
    fn idempotent_traces_are_cyclic((k, n) in grassmannian(5), r in -1i64..=0) {
        let comp = Composition::new(vec![k, n - k]).unwrap();
        let w = Weight::from(&comp);
        let t = build_pair(Family::Prime, 1, &comp).unwrap().t;
        let model = standard_model();
        let ef = compose(&[model.e(1, r, &w.add_root(1, -1)).unwrap(), model.f(1, 0, &w).unwrap()]).unwrap();
        for m in [model.psi(1, PsiSign::Plus, 1, &w).unwrap(), ef] {
            let tm = compose(&[t.clone(), m.clone()]).unwrap();
            let mt = compose(&[m, t.clone()]).unwrap();
            prop_assert_eq!(tm.matrix().unwrap().trace(), mt.matrix().unwrap().trace());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn component_split_matches_the_diagonal((k, n) in grassmannian(6)) {
        let split = component_split(k, n).unwrap();
        let r = verify_diagonal_action(k, n);
        prop_assert!(r.passed());
        let diagonal: Vec<i64> = serde_json::from_value(r.params["t_prime_diagonal"].clone()).unwrap();
        let order = box_partitions(n - k, k);
        let fixed: Vec<Partition> = order.iter().zip(&diagonal).filter(|(_, d)| **d == 1).map(|(p, _)| p.clone()).collect();
        prop_assert_eq!(fixed, split.t_generators);
    }

    #[test]
    fn gram_determinants_are_units((k, n) in grassmannian(6), dual in any::<bool>()) {
        let which = if dual { Collection::Dual } else { Collection::Kapranov };
        let det = gram(k, n, which).unwrap().entries.det().unwrap();
        prop_assert!(det == 1.into() || det == (-1).into());
    }
}
