//! The Kapranov exceptional collection on `Gr(k, N)` and its dual at the
//! level of Euler forms, and the diagonal action of `T'` and `T''` on them.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{FlagkError, Result};
use crate::idemkit::{build_pair, build_pair_with, Family};
use crate::kgr::{euler_pairing, kring, schur_qdual_class, schur_v_class, KClass};
use crate::loopgen::{eval_word, standard_model, Gen, GeneratorModel, ShiftSign, Weight};
use crate::matrix::IntMatrix;
use crate::report::{Check, Level, VerificationReport};
use crate::shapes::{binomial, box_partitions, Composition, Partition};

/// Which collection a Gram matrix is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Collection {
    /// `S_lambda V`, `lambda` in the `k x (N - k)` box.
    Kapranov,
    /// `S_mu Q [-|mu|]` with `Q` the tautological quotient, `mu` in the `(N - k) x k` box.
    Dual,
}

impl Collection {
    pub fn as_str(self) -> &'static str {
        match self {
            Collection::Kapranov => "kapranov",
            Collection::Dual => "dual",
        }
    }
}

/// `entries[a][b] = chi(E_b, E_a)` for the collection in `order`; lower
/// unitriangular exactly when the order is compatible with exceptionality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramMatrix {
    pub which: Collection,
    pub order: Vec<Partition>,
    pub entries: IntMatrix,
}

impl GramMatrix {
    /// CSV with a header row of serialized partitions (`()` for the empty one).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row");
        for p in &self.order {
            out.push_str(&format!(",\"{}\"", label(p)));
        }
        out.push('\n');
        for (p, row) in self.order.iter().zip(self.entries.to_rows()) {
            out.push_str(&format!("\"{}\"", label(p)));
            for v in row {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "collection": self.which.as_str(),
            "order": self.order.iter().map(label).collect::<Vec<_>>(),
            "entries": self.entries.to_rows(),
        })
    }
}

/// `(2,1)`, with `()` for the empty partition.
pub fn label(p: &Partition) -> String {
    if p.is_empty() {
        "()".to_string()
    } else {
        format!("({p})")
    }
}

fn check_grassmannian(k: usize, big_n: usize) -> Result<()> {
    if k == 0 || k >= big_n {
        return Err(FlagkError::Domain(format!(
            "need 1 <= k <= N - 1, got k = {k}, N = {big_n}"
        )));
    }
    Ok(())
}

/// Index set of the collection in an exceptional order: size descending
/// (then lex descending) for the Kapranov collection, the reverse for the dual.
pub fn collection_order(k: usize, big_n: usize, which: Collection) -> Vec<Partition> {
    match which {
        Collection::Kapranov => box_partitions(big_n - k, k),
        Collection::Dual => {
            let mut order = box_partitions(k, big_n - k);
            order.reverse();
            order
        }
    }
}

/// Class of one collection member.
pub fn collection_class(k: usize, big_n: usize, which: Collection, p: &Partition) -> Result<KClass> {
    match which {
        Collection::Kapranov => KClass::basis(k, big_n, p),
        Collection::Dual => {
            let sign = if p.size().is_multiple_of(2) { 1 } else { -1 };
            if !p.fits_box(k, big_n - k) {
                return Err(FlagkError::Domain(format!(
                    "{} is outside P({k}, {})",
                    label(p),
                    big_n - k
                )));
            }
            Ok(kring(k, big_n).schur_q_partition(p).scaled(sign))
        }
    }
}

/// Gram matrix in the default order.
pub fn gram(k: usize, big_n: usize, which: Collection) -> Result<GramMatrix> {
    gram_in_order(k, big_n, which, &collection_order(k, big_n, which))
}

/// Gram matrix in a caller-chosen order.
pub fn gram_in_order(k: usize, big_n: usize, which: Collection, order: &[Partition]) -> Result<GramMatrix> {
    check_grassmannian(k, big_n)?;
    let ring = kring(k, big_n);
    let classes: Vec<KClass> = order
        .iter()
        .map(|p| collection_class(k, big_n, which, p))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<i64>> = (0..order.len())
        .into_par_iter()
        .map(|a| {
            (0..order.len())
                .map(|b| match which {
                    Collection::Kapranov => euler_pairing(&order[b], &order[a], k, big_n),
                    Collection::Dual => ring.euler_form(&classes[b], &classes[a]),
                })
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    Ok(GramMatrix {
        which,
        order: order.to_vec(),
        entries: IntMatrix::from_rows(&rows)?,
    })
}

/// An order in which the Gram matrix is lower unitriangular, found by a
/// topological sort of its off-diagonal support; `None` if there is a cycle
/// or a diagonal entry other than 1.
pub fn exceptional_order(g: &GramMatrix) -> Option<Vec<usize>> {
    let n = g.order.len();
    if g.entries.diagonal().iter().any(|&d| d != 1) {
        return None;
    }
    // entries[a][b] != 0 forces b before a.
    let mut indegree = vec![0usize; n];
    for (a, deg) in indegree.iter_mut().enumerate() {
        *deg = (0..n).filter(|&b| a != b && g.entries.get(a, b) != 0).count();
    }
    let mut placed = vec![false; n];
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let next = (0..n).find(|&a| !placed[a] && indegree[a] == 0)?;
        placed[next] = true;
        out.push(next);
        for a in 0..n {
            if a != next && !placed[a] && g.entries.get(a, next) != 0 {
                indegree[a] -= 1;
            }
        }
    }
    Some(out)
}

/// Unitriangularity, cardinality `binom(N, k)` and determinant `+-1`. When the
/// default order is not unitriangular a compatible order is searched for and
/// reported.
pub fn verify_exceptionality(k: usize, big_n: usize, which: Collection) -> VerificationReport {
    let mut report = VerificationReport::new("sod_exceptional")
        .with_param("k", k)
        .with_param("N", big_n)
        .with_param("collection", which.as_str());
    let g = match gram(k, big_n, which) {
        Ok(g) => g,
        Err(e) => {
            report.push(Check::fail("gram", Level::Matrix, e.to_string()));
            return report;
        }
    };
    let tag = format!("{} k={k} N={big_n}", which.as_str());
    let expected = binomial(big_n as i64, k as i64) as usize;
    report.push(Check::expect(
        format!("cardinality {tag}"),
        Level::Matrix,
        g.order.len() == expected,
        || format!("{} objects, expected {expected}", g.order.len()),
    ));
    report.push(Check::expect(
        format!("diagonal_ones {tag}"),
        Level::Matrix,
        g.entries.diagonal().iter().all(|&d| d == 1),
        || format!("diagonal {:?}", g.entries.diagonal()),
    ));
    let det = g.entries.det().map(|d| d.to_string()).unwrap_or_else(|e| e.to_string());
    report.push(Check::expect(
        format!("determinant_unit {tag}"),
        Level::Matrix,
        det == "1" || det == "-1",
        || format!("determinant {det}"),
    ));
    if g.entries.is_lower_unitriangular() {
        report.push(Check::pass(format!("unitriangular {tag}"), Level::Matrix));
        report = report.with_param("order", "default");
    } else {
        match exceptional_order(&g) {
            Some(perm) => {
                let order: Vec<String> = perm.iter().map(|&a| g.order[a].to_string()).collect();
                report.push(Check::pass(format!("unitriangular {tag}"), Level::Matrix));
                report = report.with_param("order", order);
            }
            None => report.push(Check::fail(
                format!("unitriangular {tag}"),
                Level::Matrix,
                format!("no compatible order; gram {}", g.entries),
            )),
        }
    }
    report
}

/// `P[a][b] = chi(R'_a, R_b)` between the dual collection (rows) and the
/// Kapranov collection (columns), both in default order.
pub fn duality_pairing(k: usize, big_n: usize) -> Result<(Vec<Partition>, Vec<Partition>, IntMatrix)> {
    check_grassmannian(k, big_n)?;
    let ring = kring(k, big_n);
    let dual = collection_order(k, big_n, Collection::Dual);
    let kap = collection_order(k, big_n, Collection::Kapranov);
    let rows: Vec<Vec<i64>> = dual
        .par_iter()
        .map(|mu| {
            let d = collection_class(k, big_n, Collection::Dual, mu)?;
            kap.iter()
                .map(|lambda| ring.euler_form(&d, &KClass::basis(k, big_n, lambda)?))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    Ok((dual, kap, IntMatrix::from_rows(&rows)?))
}

/// How a dual partition corresponds to a Kapranov partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Matching {
    Identity,
    Transpose,
    Other,
}

/// The pairing is a signed permutation; the bijection it defines is
/// reported together with the rule it follows.
pub fn verify_duality(k: usize, big_n: usize) -> VerificationReport {
    let mut report = VerificationReport::new("sod_duality")
        .with_param("k", k)
        .with_param("N", big_n);
    let (dual, kap, m) = match duality_pairing(k, big_n) {
        Ok(x) => x,
        Err(e) => {
            report.push(Check::fail("pairing", Level::Matrix, e.to_string()));
            return report;
        }
    };
    let name = format!("signed_permutation k={k} N={big_n}");
    if !m.is_signed_permutation() {
        report.push(Check::fail(name, Level::Matrix, format!("pairing {m}")));
        return report;
    }
    report.push(Check::pass(name, Level::Matrix));
    let mut pairs = Vec::new();
    let mut signs = Vec::new();
    for (a, mu) in dual.iter().enumerate() {
        let b = (0..kap.len()).find(|&b| m.get(a, b) != 0).expect("one entry per row");
        pairs.push((mu.clone(), kap[b].clone()));
        signs.push(m.get(a, b));
    }
    let matching = if pairs.iter().all(|(mu, l)| &mu.transpose() == l) {
        Matching::Transpose
    } else if pairs.iter().all(|(mu, l)| mu == l) {
        Matching::Identity
    } else {
        Matching::Other
    };
    let listed: Vec<String> = pairs
        .iter()
        .map(|(mu, l)| format!("{}->{}", label(mu), label(l)))
        .collect();
    report
        .with_param("bijection", listed)
        .with_param("signs", signs)
        .with_param("matching", matching)
}

/// `[T']` is diagonal in the Kapranov basis with 1 exactly where
/// `lambda_1 < N - k`, and `[T'']` is diagonal in the dual basis
/// `{[S_mu Q^dual]}` with 1 exactly where `mu_1 < k`.
pub fn verify_diagonal_action(k: usize, big_n: usize) -> VerificationReport {
    verify_diagonal_action_with(standard_model(), k, big_n)
}

pub fn verify_diagonal_action_with(model: &dyn GeneratorModel, k: usize, big_n: usize) -> VerificationReport {
    let mut report = VerificationReport::new("sod_action")
        .with_param("k", k)
        .with_param("N", big_n);
    let result = (|| -> Result<()> {
        check_grassmannian(k, big_n)?;
        let comp = Composition::new(vec![k, big_n - k])?;
        let t1 = build_pair_with(model, Family::Prime, 1, &comp, ShiftSign::Standard)?
            .t
            .matrix()
            .cloned()
            .expect("two-step");
        let kap = collection_order(k, big_n, Collection::Kapranov);
        let expected: Vec<i64> = kap.iter().map(|l| i64::from(l.first() < big_n - k)).collect();
        let name = format!("t_prime_diagonal k={k} N={big_n}");
        report.push(Check::expect(
            &name,
            Level::Matrix,
            t1.is_diagonal() && t1.diagonal() == expected,
            || format!("matrix {t1}, expected diagonal {expected:?}"),
        ));
        report
            .params
            .insert("t_prime_diagonal".into(), serde_json::json!(t1.diagonal()));

        let t2 = build_pair_with(model, Family::DoublePrime, 1, &comp, ShiftSign::Standard)?
            .t
            .matrix()
            .cloned()
            .expect("two-step");
        let ring = kring(k, big_n);
        let dual = collection_order(k, big_n, Collection::Dual);
        let cols: Vec<Vec<i64>> = dual
            .iter()
            .map(|mu| Ok(schur_qdual_class(mu, k, big_n)?.to_vector(ring.basis())))
            .collect::<Result<_>>()?;
        let b = IntMatrix::from_columns(ring.rank(), &cols);
        let det = b.det()?;
        report.push(Check::expect(
            format!("dual_basis_unimodular k={k} N={big_n}"),
            Level::Matrix,
            det.magnitude() == &1u32.into(),
            || format!("determinant {det}"),
        ));
        let diag: Vec<i64> = dual.iter().map(|mu| i64::from(mu.first() < k)).collect();
        let mut d = IntMatrix::zeros(diag.len(), diag.len());
        for (a, v) in diag.iter().enumerate() {
            d.set(a, a, *v);
        }
        let (lhs, rhs) = (t2.mul(&b)?, b.mul(&d)?);
        report.push(Check::expect(
            format!("t_double_prime_diagonal k={k} N={big_n}"),
            Level::Matrix,
            lhs == rhs,
            || format!("T''B = {lhs}, BD = {rhs}"),
        ));
        report
            .params
            .insert("t_double_prime_diagonal".into(), serde_json::json!(diag));
        Ok(())
    })();
    if let Err(e) = result {
        report.push(Check::fail("setup", Level::Matrix, e.to_string()));
    }
    report
}

/// Ranks and generators of the images of `[T']` and `[S']`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSplit {
    pub ranks: (usize, usize),
    pub t_generators: Vec<Partition>,
    pub s_generators: Vec<Partition>,
}

/// Splits the Kapranov basis by `lambda_1 < N - k` (image of `T'`) and
/// `lambda_1 = N - k` (image of `S'`), after checking that `[T']` and `[S']`
/// act on the two sets as identity and zero.
pub fn component_split(k: usize, big_n: usize) -> Result<ComponentSplit> {
    check_grassmannian(k, big_n)?;
    let comp = Composition::new(vec![k, big_n - k])?;
    let pair = build_pair(Family::Prime, 1, &comp)?;
    let (t, s) = (pair.t.matrix().expect("two-step"), pair.s.matrix().expect("two-step"));
    let kap = collection_order(k, big_n, Collection::Kapranov);
    let (mut tg, mut sg) = (Vec::new(), Vec::new());
    for (a, lambda) in kap.iter().enumerate() {
        let col_t = t.column(a);
        let col_s = s.column(a);
        let unit: Vec<i64> = (0..kap.len()).map(|b| i64::from(a == b)).collect();
        let zero = vec![0; kap.len()];
        if lambda.first() < big_n - k {
            if col_t != unit || col_s != zero {
                return Err(FlagkError::Domain(format!("{} is not fixed by T'", label(lambda))));
            }
            tg.push(lambda.clone());
        } else {
            if col_t != zero || col_s != unit {
                return Err(FlagkError::Domain(format!("{} is not fixed by S'", label(lambda))));
            }
            sg.push(lambda.clone());
        }
    }
    let ranks = (t.rank(), s.rank());
    if ranks != (tg.len(), sg.len()) {
        return Err(FlagkError::Domain(format!(
            "ranks {ranks:?} disagree with generator counts"
        )));
    }
    Ok(ComponentSplit {
        ranks,
        t_generators: tg,
        s_generators: sg,
    })
}

/// Component split with the expected ranks `binom(N-1, k)` and `binom(N-1, k-1)`.
pub fn verify_component_split(k: usize, big_n: usize) -> VerificationReport {
    let mut report = VerificationReport::new("sod_split")
        .with_param("k", k)
        .with_param("N", big_n);
    let name = format!("component_ranks k={k} N={big_n}");
    match component_split(k, big_n) {
        Ok(split) => {
            let expected = (
                binomial(big_n as i64 - 1, k as i64) as usize,
                binomial(big_n as i64 - 1, k as i64 - 1) as usize,
            );
            report.push(Check::expect(&name, Level::Matrix, split.ranks == expected, || {
                format!("ranks {:?}, expected {expected:?}", split.ranks)
            }));
            let show = |v: &[Partition]| v.iter().map(label).collect::<Vec<_>>();
            report = report
                .with_param("ranks", split.ranks)
                .with_param("t_generators", show(&split.t_generators))
                .with_param("s_generators", show(&split.s_generators));
        }
        Err(e) => report.push(Check::fail(name, Level::Matrix, e.to_string())),
    }
    report
}

/// `F_{lambda_1} ... F_{lambda_k}` from the point `Gr(0, N)` gives
/// `[S_lambda V]`, and `E_{-mu_1} ... E_{-mu_{N-k}}` from `Gr(N, N)` gives
/// `[S_mu Q^dual]`.
pub fn verify_word_classes(k: usize, big_n: usize) -> VerificationReport {
    verify_word_classes_with(standard_model(), k, big_n)
}

pub fn verify_word_classes_with(model: &dyn GeneratorModel, k: usize, big_n: usize) -> VerificationReport {
    let mut report = VerificationReport::new("sod_words")
        .with_param("k", k)
        .with_param("N", big_n);
    if let Err(e) = check_grassmannian(k, big_n) {
        report.push(Check::fail("setup", Level::Matrix, e.to_string()));
        return report;
    }
    let n = big_n as i64;
    let point_f = Weight::new(vec![0, n]);
    let point_e = Weight::new(vec![n, 0]);
    let mut checks: Vec<Check> = collection_order(k, big_n, Collection::Kapranov)
        .par_iter()
        .map(|lambda| {
            let name = format!("f_word {} k={k} N={big_n}", label(lambda));
            let word: Vec<Gen> = lambda.padded(k).iter().map(|&s| Gen::F(1, s)).collect();
            word_check(model, &name, &word, &point_f, 0, k, || {
                schur_v_class(&lambda.padded(k), k, big_n)
            })
        })
        .collect();
    checks.extend(
        collection_order(k, big_n, Collection::Dual)
            .par_iter()
            .map(|mu| {
                let name = format!("e_word {} k={k} N={big_n}", label(mu));
                let word: Vec<Gen> = mu.padded(big_n - k).iter().map(|&m| Gen::E(1, -m)).collect();
                word_check(model, &name, &word, &point_e, big_n, k, || {
                    schur_qdual_class(mu, k, big_n)
                })
            })
            .collect::<Vec<_>>(),
    );
    for c in checks {
        report.push(c);
    }
    report
}

fn word_check(
    model: &dyn GeneratorModel,
    name: &str,
    word: &[Gen],
    source: &Weight,
    source_k: usize,
    k: usize,
    expected: impl FnOnce() -> Result<KClass>,
) -> Check {
    let result = (|| -> Result<Check> {
        let op = eval_word(model, word, source)?;
        let big_n = source.total();
        let got = op.apply_class(&KClass::one(source_k, big_n))?;
        let want = expected()?;
        debug_assert_eq!(got.k, k);
        Ok(Check::expect(name, Level::Matrix, got == want, || {
            format!("got {got}, expected {want}")
        }))
    })();
    result.unwrap_or_else(|e| Check::fail(name, Level::Matrix, e.to_string()))
}

/// Every Grassmannian check at `(k, N)`.
pub fn verify_sod(k: usize, big_n: usize) -> VerificationReport {
    let mut report = VerificationReport::new("sod").with_param("k", k).with_param("N", big_n);
    for sub in [
        verify_exceptionality(k, big_n, Collection::Kapranov),
        verify_exceptionality(k, big_n, Collection::Dual),
        verify_duality(k, big_n),
        verify_diagonal_action(k, big_n),
        verify_component_split(k, big_n),
        verify_word_classes(k, big_n),
    ] {
        for (key, value) in &sub.params {
            if key != "k" && key != "N" {
                report.params.insert(format!("{}.{key}", sub.suite), value.clone());
            }
        }
        report.absorb("", sub);
    }
    report
}
