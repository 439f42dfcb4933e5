//! Defective generator models and Hecke actions used to confirm that each
//! verification suite notices a single flipped sign.
#![allow(dead_code)]

use flagk_core::hecke0::{delta_op, DemazureAction, HeckeAction, PolyOperator};
use flagk_core::idemkit::{
    build_pair, verify_abc_with, verify_braid_demazure_with, verify_complementary, Family, IdempotentPair,
};
use flagk_core::kgr::{kring, schur_qdual_class, KClass};
use flagk_core::loopgen::{
    cross_model_check_with, generators_at, standard_model, verify_cat_shadows_with, verify_u_relations_with, Condition,
    GeneratorModel, IndexBounds, KOperator, PsiSign, ShiftSign, Weight,
};
use flagk_core::shapes::Composition;
use flagk_core::sodlab::{
    collection_order, exceptional_order, gram_in_order, verify_diagonal_action_with, verify_word_classes_with,
    Collection,
};
use flagk_core::{IntMatrix, Result, VerificationReport};

/// A single sign defect injected into the geometric model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Defect {
    /// `Psi^+` picks up a global sign.
    PsiPlus,
    /// `F_{i,0}` picks up a global sign.
    FZero,
    /// The matrix of every `E` is negated while its polynomial model is not.
    EMatrix,
}

pub struct Mutant(pub Defect);

impl GeneratorModel for Mutant {
    fn e(&self, i: usize, r: i64, k: &Weight) -> Result<KOperator> {
        let op = standard_model().e(i, r, k)?;
        if self.0 != Defect::EMatrix {
            return Ok(op);
        }
        KOperator::from_parts(
            op.source().clone(),
            op.target().clone(),
            op.tag().to_string(),
            op.matrix().map(|m| m.scale(-1)),
            op.poly().clone(),
        )
    }

    fn f(&self, i: usize, s: i64, k: &Weight) -> Result<KOperator> {
        let op = standard_model().f(i, s, k)?;
        Ok(if self.0 == Defect::FZero && s == 0 {
            op.scaled(-1)
        } else {
            op
        })
    }

    fn psi(&self, i: usize, sign: PsiSign, power: i64, k: &Weight) -> Result<KOperator> {
        let op = standard_model().psi(i, sign, power, k)?;
        Ok(if self.0 == Defect::PsiPlus && sign == PsiSign::Plus {
            op.scaled(-1)
        } else {
            op
        })
    }
}

/// `T_1` acts by `-delta_1`.
pub struct NegatedDemazure(pub DemazureAction);

impl HeckeAction for NegatedDemazure {
    fn num_vars(&self) -> usize {
        self.0.num_vars()
    }

    fn t(&self, i: usize) -> Result<PolyOperator> {
        let d = self.0.t(i)?;
        Ok(if i == 1 { d.scaled(-1) } else { d })
    }

    fn x(&self, j: usize, power: i32) -> Result<PolyOperator> {
        self.0.x(j, power)
    }
}

/// `T_1` acts by `1 - delta_1`, which is still an idempotent.
pub struct ComplementDemazure(pub DemazureAction);

impl HeckeAction for ComplementDemazure {
    fn num_vars(&self) -> usize {
        self.0.num_vars()
    }

    fn t(&self, i: usize) -> Result<PolyOperator> {
        let n = self.0.num_vars();
        if i == 1 {
            Ok(PolyOperator::sum(
                n,
                vec![(1, PolyOperator::identity(n)), (-1, delta_op(1, n)?)],
            ))
        } else {
            self.0.t(i)
        }
    }

    fn x(&self, j: usize, power: i32) -> Result<PolyOperator> {
        self.0.x(j, power)
    }
}

pub fn comp(v: &[usize]) -> Composition {
    Composition::new(v.to_vec()).unwrap()
}

/// One line per suite: whether the injected defect was caught.
pub struct Detection {
    pub suite: &'static str,
    pub defect: &'static str,
    pub caught: bool,
}

fn caught(r: &VerificationReport) -> bool {
    r.failures().count() > 0
}

/// Runs every suite against a defective input and records whether it fails.
pub fn mutation_sweep() -> Vec<Detection> {
    let psi = Mutant(Defect::PsiPlus);
    let f0 = Mutant(Defect::FZero);
    let e_matrix = Mutant(Defect::EMatrix);
    let mut out = Vec::new();
    let mut record = |suite, defect, caught| out.push(Detection { suite, defect, caught });

    record(
        "hecke",
        "T_1 = -delta_1",
        caught(&flagk_core::hecke0::verify_hecke_with(
            &NegatedDemazure(DemazureAction::new(3)),
            1,
            10,
            0,
        )),
    );
    record(
        "u0",
        "shift sign ignored",
        caught(&verify_u_relations_with(
            standard_model(),
            2,
            3,
            IndexBounds::Standard,
            ShiftSign::Ignored,
        )),
    );
    record(
        "u0",
        "Psi+ sign",
        caught(&verify_u_relations_with(
            &psi,
            2,
            3,
            IndexBounds::Standard,
            ShiftSign::Standard,
        )),
    );
    record(
        "cat",
        "shift sign ignored",
        caught(&verify_cat_shadows_with(
            standard_model(),
            &comp(&[1, 2]),
            &Condition::ALL,
            ShiftSign::Ignored,
        )),
    );
    record(
        "cat",
        "Psi+ sign",
        caught(&verify_cat_shadows_with(
            &psi,
            &comp(&[1, 2]),
            &Condition::ALL,
            ShiftSign::Standard,
        )),
    );
    record("idem", "S sign", {
        let pair = build_pair(Family::Prime, 1, &comp(&[1, 2])).unwrap();
        let bad = IdempotentPair {
            s: pair.s.scaled(-1),
            ..pair
        };
        caught(&verify_complementary(&bad))
    });
    record("idem", "Psi+ sign", {
        let pair =
            flagk_core::idemkit::build_pair_with(&psi, Family::Prime, 1, &comp(&[1, 2]), ShiftSign::Standard).unwrap();
        caught(&verify_complementary(&pair))
    });
    record(
        "abc",
        "S shift sign ignored",
        caught(&verify_abc_with(standard_model(), ShiftSign::Ignored, 3, 4)),
    );
    record("braid", "Psi+ sign", caught(&verify_braid_demazure_with(&psi, 3)));
    record("sod_gram", "shuffled order", {
        let mut order = collection_order(2, 4, Collection::Kapranov);
        order.reverse();
        let g = gram_in_order(2, 4, Collection::Kapranov, &order).unwrap();
        !g.entries.is_lower_unitriangular() && exceptional_order(&g).is_some()
    });
    record("sod_dual", "dual bundles in place of quotient bundles", {
        let ring = kring(1, 2);
        let rows: Vec<Vec<i64>> = collection_order(1, 2, Collection::Dual)
            .iter()
            .map(|mu| {
                let sign = if mu.size() % 2 == 0 { 1 } else { -1 };
                let d = schur_qdual_class(mu, 1, 2).unwrap().scaled(sign);
                collection_order(1, 2, Collection::Kapranov)
                    .iter()
                    .map(|l| ring.euler_form(&d, &KClass::basis(1, 2, l).unwrap()).unwrap())
                    .collect()
            })
            .collect();
        !IntMatrix::from_rows(&rows).unwrap().is_signed_permutation()
    });
    record("sod_act", "Psi+ sign", caught(&verify_diagonal_action_with(&psi, 2, 4)));
    record("words", "F_0 sign", caught(&verify_word_classes_with(&f0, 1, 3)));
    record("cross", "E matrix sign", {
        let k = comp(&[1, 2]);
        caught(&cross_model_check_with(
            &e_matrix,
            &k,
            &generators_at(&Weight::from(&k)),
        ))
    });
    out
}
