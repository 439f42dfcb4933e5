//! Loop generators `E_{i,r}`, `F_{i,s}`, `Psi^{+-}_i` acting on the
//! Grothendieck groups of partial flag varieties, in two models:
//!
//! * the polynomial model: classes on `Fl_k` are Laurent polynomials
//!   symmetric within each block of `k`; block `b` holds the Chern roots of
//!   `V_b / V_{b-1}`;
//! * for two-step weights, integer matrices in the Schur-bundle basis of
//!   `K(Gr(k_1, N))`, built from Borel-Weil-Bott and branching rules.
//!
//! A homological shift `[m]` contributes `(-1)^m` and an exact triangle
//! `A -> B -> C` contributes `[B] = [A] + [C]`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{FlagkError, Result};
use crate::hecke0::{compare_on_inputs, PolyOperator};
use crate::kgr::{kclass_of_sym, kring, sym_of_kclass, KClass, SymClass};
use crate::matrix::IntMatrix;
use crate::polycore::{mul, LaurentPoly};
use crate::report::{Check, Level, VerificationReport};
use crate::shapes::{box_partitions, compositions, horizontal_strips_below, Composition, Partition};

/// A weight of the loop algebra: a signed integer vector. Weights with a
/// negative entry index the zero category.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(entries: Vec<i64>) -> Self {
        Weight(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Number of blocks `n`.
    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `N`, preserved by every generator.
    pub fn total(&self) -> usize {
        self.0.iter().sum::<i64>().max(0) as usize
    }

    /// Entry `i`, 1-based.
    pub fn get(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().any(|&x| x < 0)
    }

    pub fn composition(&self) -> Option<Composition> {
        if self.is_zero() {
            return None;
        }
        Composition::new(self.0.iter().map(|&x| x as usize).collect()).ok()
    }

    /// Adds `sign * alpha_i`, where `alpha_i` is `-1` in slot `i` and `+1` in slot `i + 1`.
    pub fn add_root(&self, i: usize, sign: i64) -> Weight {
        let mut v = self.0.clone();
        v[i - 1] -= sign;
        v[i] += sign;
        Weight(v)
    }

    /// `k_1 + ... + k_i`.
    fn partial_sum(&self, i: usize) -> usize {
        self.0[..i].iter().sum::<i64>() as usize
    }
}

impl From<&Composition> for Weight {
    fn from(c: &Composition) -> Self {
        Weight(c.blocks().iter().map(|&b| b as i64).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PsiSign {
    Plus,
    Minus,
}

/// One generator, applied to a weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    E(usize, i64),
    F(usize, i64),
    /// `(Psi^sign_i)^power`.
    Psi(usize, PsiSign, i64),
}

/// Which index window a generator occurrence may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexBounds {
    /// `-k_i - 1 <= r <= 0`, `0 <= s <= k_{i+1} + 1`.
    Standard,
    /// `-k_i - 2 <= r <= 0`, `0 <= s <= k_{i+1} + 2`.
    Extended,
}

impl IndexBounds {
    fn slack(self) -> i64 {
        match self {
            IndexBounds::Standard => 1,
            IndexBounds::Extended => 2,
        }
    }
}

impl Gen {
    pub fn index(&self) -> usize {
        match *self {
            Gen::E(i, _) | Gen::F(i, _) | Gen::Psi(i, _, _) => i,
        }
    }

    pub fn target(&self, w: &Weight) -> Weight {
        match *self {
            Gen::E(i, _) => w.add_root(i, 1),
            Gen::F(i, _) => w.add_root(i, -1),
            Gen::Psi(..) => w.clone(),
        }
    }

    /// True when the index lies in the window at source `w`. Occurrences on the
    /// zero weight act by zero and are always admissible.
    pub fn legal(&self, w: &Weight, bounds: IndexBounds) -> bool {
        let i = self.index();
        if i == 0 || i >= w.n() {
            return false;
        }
        if w.is_zero() {
            return true;
        }
        let slack = bounds.slack();
        match *self {
            Gen::E(i, r) => -w.get(i) - slack <= r && r <= 0,
            Gen::F(i, s) => 0 <= s && s <= w.get(i + 1) + slack,
            Gen::Psi(..) => true,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gen::E(i, r) => write!(f, "E{i}[{r}]"),
            Gen::F(i, s) => write!(f, "F{i}[{s}]"),
            Gen::Psi(i, PsiSign::Plus, p) => write!(f, "P+{i}^{p}"),
            Gen::Psi(i, PsiSign::Minus, p) => write!(f, "P-{i}^{p}"),
        }
    }
}

/// Exact linear map `K(Fl_source) -> K(Fl_target)`.
#[derive(Clone, Debug)]
pub struct KOperator {
    source: Weight,
    target: Weight,
    tag: String,
    matrix: Option<IntMatrix>,
    poly: PolyOperator,
}

/// Rank of the Schur-bundle basis, or 0 for the zero weight.
fn grass_dim(w: &Weight) -> usize {
    if w.is_zero() {
        0
    } else {
        kring(w.get(1) as usize, w.total()).rank()
    }
}

impl KOperator {
    pub fn zero(source: &Weight, target: &Weight) -> Self {
        let matrix = (source.n() == 2).then(|| IntMatrix::zeros(grass_dim(target), grass_dim(source)));
        KOperator {
            source: source.clone(),
            target: target.clone(),
            tag: "0".into(),
            matrix,
            poly: PolyOperator::zero(source.total()),
        }
    }

    pub fn identity(w: &Weight) -> Self {
        if w.is_zero() {
            return Self::zero(w, w);
        }
        KOperator {
            source: w.clone(),
            target: w.clone(),
            tag: "1".into(),
            matrix: (w.n() == 2).then(|| IntMatrix::identity(grass_dim(w))),
            poly: PolyOperator::identity(w.total()),
        }
    }

    /// Assembles an operator from its parts; the matrix, when present, must
    /// have the basis dimensions of the two weights.
    pub fn from_parts(
        source: Weight,
        target: Weight,
        tag: String,
        matrix: Option<IntMatrix>,
        poly: PolyOperator,
    ) -> Result<Self> {
        if let Some(m) = &matrix {
            if (m.rows(), m.cols()) != (grass_dim(&target), grass_dim(&source)) {
                return Err(FlagkError::Dimension(m.rows(), grass_dim(&target)));
            }
        }
        Ok(KOperator {
            source,
            target,
            tag,
            matrix,
            poly,
        })
    }

    pub fn source(&self) -> &Weight {
        &self.source
    }

    pub fn target(&self) -> &Weight {
        &self.target
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn matrix(&self) -> Option<&IntMatrix> {
        self.matrix.as_ref()
    }

    pub fn poly(&self) -> &PolyOperator {
        &self.poly
    }

    pub fn num_vars(&self) -> usize {
        self.source.total()
    }

    pub fn scaled(&self, c: i64) -> KOperator {
        KOperator {
            source: self.source.clone(),
            target: self.target.clone(),
            tag: format!("{c}*({})", self.tag),
            matrix: self.matrix.as_ref().map(|m| m.scale(c)),
            poly: self.poly.scaled(c),
        }
    }

    /// `sum c_j A_j` over operators with a common source and target.
    pub fn linear_combination(source: &Weight, target: &Weight, terms: &[(i64, KOperator)]) -> Result<KOperator> {
        let mut out = KOperator::zero(source, target);
        let mut tags = Vec::new();
        let mut polys = Vec::new();
        for (c, op) in terms {
            if op.source != *source || op.target != *target {
                return Err(FlagkError::Composition(format!(
                    "term {} maps {} -> {}, expected {} -> {}",
                    op.tag, op.source, op.target, source, target
                )));
            }
            out.matrix = match (&out.matrix, &op.matrix) {
                (Some(a), Some(b)) => Some(a.add(&b.scale(*c))?),
                _ => None,
            };
            tags.push(format!("{c}*({})", op.tag));
            polys.push((*c, op.poly.clone()));
        }
        out.poly = PolyOperator::sum(source.total(), polys);
        if !tags.is_empty() {
            out.tag = tags.join(" + ");
        }
        Ok(out)
    }

    /// Image of a Schur-bundle class under the matrix model.
    pub fn apply_class(&self, c: &KClass) -> Result<KClass> {
        let m = self
            .matrix
            .as_ref()
            .ok_or_else(|| FlagkError::Capability("no matrix model for this weight".into()))?;
        let src = kring(self.source.get(1) as usize, self.source.total());
        let v = m.apply(&c.to_vector(src.basis()));
        let k = self.target.get(1) as usize;
        KClass::from_vector(k, self.target.total(), kring(k, self.target.total()).basis(), &v)
    }

    /// Image of a polynomial-model class.
    pub fn apply_poly(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        self.poly.apply(p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "source": self.source.to_string(),
            "target": self.target.to_string(),
            "tag": self.tag,
            "matrix": self.matrix.as_ref().map(IntMatrix::to_rows),
        })
    }
}

/// `ops[0] o ops[1] o ...`: the last operator acts first, so each operator's
/// source must equal the next operator's target.
pub fn compose(ops: &[KOperator]) -> Result<KOperator> {
    let (first, last) = match (ops.first(), ops.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(FlagkError::Composition("empty composite".into())),
    };
    for pair in ops.windows(2) {
        if pair[0].source != pair[1].target {
            return Err(FlagkError::Composition(format!(
                "{} expects weight {}, got {} from {}",
                pair[0].tag, pair[0].source, pair[1].target, pair[1].tag
            )));
        }
    }
    let source = last.source.clone();
    let target = first.target.clone();
    let mut matrix = first.matrix.clone();
    for op in &ops[1..] {
        matrix = match (matrix, &op.matrix) {
            (Some(a), Some(b)) => Some(a.mul(b)?),
            _ => None,
        };
    }
    let through_zero = ops.iter().any(|o| o.source.is_zero() || o.target.is_zero());
    let poly = if through_zero {
        PolyOperator::zero(source.total())
    } else {
        PolyOperator::compose(source.total(), ops.iter().map(|o| o.poly.clone()).collect())
    };
    let tags: Vec<&str> = ops.iter().map(|o| o.tag.as_str()).filter(|t| *t != "1").collect();
    Ok(KOperator {
        source,
        target,
        tag: if tags.is_empty() { "1".into() } else { tags.join(" ") },
        matrix,
        poly,
    })
}

/// Source of generator operators; alternative implementations let tests
/// inject defects and confirm the suites catch them.
pub trait GeneratorModel: Sync {
    fn e(&self, i: usize, r: i64, k: &Weight) -> Result<KOperator>;
    fn f(&self, i: usize, s: i64, k: &Weight) -> Result<KOperator>;
    fn psi(&self, i: usize, sign: PsiSign, power: i64, k: &Weight) -> Result<KOperator>;

    fn identity(&self, k: &Weight) -> KOperator {
        KOperator::identity(k)
    }

    fn generator(&self, g: Gen, k: &Weight) -> Result<KOperator> {
        match g {
            Gen::E(i, r) => self.e(i, r, k),
            Gen::F(i, s) => self.f(i, s, k),
            Gen::Psi(i, sign, p) => self.psi(i, sign, p, k),
        }
    }
}

/// The geometric model: Fourier-Mukai kernels on correspondences between
/// partial flag varieties, decategorified.
pub struct StandardModel {
    cache: Mutex<HashMap<(Gen, Weight), KOperator>>,
}

/// Shared instance of the geometric model.
pub fn standard_model() -> &'static StandardModel {
    static MODEL: OnceLock<StandardModel> = OnceLock::new();
    MODEL.get_or_init(|| StandardModel {
        cache: Mutex::new(HashMap::new()),
    })
}

fn check_generator(g: Gen, k: &Weight) -> Result<()> {
    let i = g.index();
    if k.n() < 2 || i == 0 || i >= k.n() {
        return Err(FlagkError::IndexRange {
            index: i as i64,
            max: k.n() as i64 - 1,
        });
    }
    if !g.legal(k, IndexBounds::Extended) {
        return Err(FlagkError::Domain(format!(
            "{g} is outside the index window at weight {k}"
        )));
    }
    Ok(())
}

fn parity(m: i64) -> i64 {
    if m.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl StandardModel {
    fn build(&self, g: Gen, k: &Weight) -> Result<KOperator> {
        check_generator(g, k)?;
        let target = g.target(k);
        if k.is_zero() || target.is_zero() {
            let mut z = KOperator::zero(k, &target);
            z.tag = g.to_string();
            return Ok(z);
        }
        let (poly, matrix) = match g {
            Gen::E(i, r) => (poly_e(i, r, k)?, (k.n() == 2).then(|| matrix_e(r, k)).transpose()?),
            Gen::F(i, s) => (poly_f(i, s, k)?, (k.n() == 2).then(|| matrix_f(s, k)).transpose()?),
            Gen::Psi(i, sign, p) => (poly_psi(i, sign, p, k), (k.n() == 2).then(|| matrix_psi(sign, p, k))),
        };
        KOperator::from_parts(k.clone(), target, g.to_string(), matrix, poly)
    }

    fn cached(&self, g: Gen, k: &Weight) -> Result<KOperator> {
        if let Some(hit) = self.cache.lock().expect("cache poisoned").get(&(g, k.clone())) {
            return Ok(hit.clone());
        }
        let op = self.build(g, k)?;
        self.cache
            .lock()
            .expect("cache poisoned")
            .insert((g, k.clone()), op.clone());
        Ok(op)
    }
}

impl GeneratorModel for StandardModel {
    fn e(&self, i: usize, r: i64, k: &Weight) -> Result<KOperator> {
        self.cached(Gen::E(i, r), k)
    }

    fn f(&self, i: usize, s: i64, k: &Weight) -> Result<KOperator> {
        self.cached(Gen::F(i, s), k)
    }

    fn psi(&self, i: usize, sign: PsiSign, power: i64, k: &Weight) -> Result<KOperator> {
        self.cached(Gen::Psi(i, sign, power), k)
    }
}

/// `E_{i,r}`: multiply by `x^r` for the last root of block `i` (the line
/// `V_i / V_i'`), then push forward along the projective bundle that merges
/// it into block `i + 1`: `delta_{s_i}` first, up to `delta_{s_{i+1} - 1}`.
fn poly_e(i: usize, r: i64, k: &Weight) -> Result<PolyOperator> {
    let n = k.total();
    let (si, snext) = (k.partial_sum(i), k.partial_sum(i + 1));
    let mut ops = Vec::new();
    for j in (si..snext).rev() {
        ops.push(PolyOperator::delta(j, n)?);
    }
    ops.push(PolyOperator::x_pow(si, r as i32, n)?);
    Ok(PolyOperator::compose(n, ops))
}

/// `F_{i,s}`: multiply by `x^s` for the first root of block `i + 1`, then
/// merge it into block `i`: `delta_{s_i}` first, down to `delta_{s_{i-1} + 1}`.
fn poly_f(i: usize, s: i64, k: &Weight) -> Result<PolyOperator> {
    let n = k.total();
    let (sprev, si) = (k.partial_sum(i - 1), k.partial_sum(i));
    let mut ops = Vec::new();
    for j in (sprev + 1)..=si {
        ops.push(PolyOperator::delta(j, n)?);
    }
    ops.push(PolyOperator::x_pow(si + 1, s as i32, n)?);
    Ok(PolyOperator::compose(n, ops))
}

/// `(Psi^+_i)^p = (-1)^{p(1 - k_{i+1})} det(V_{i+1}/V_i)^p` and
/// `(Psi^-_i)^p = (-1)^{p(1 - k_i)} det(V_i/V_{i-1})^{-p}`.
fn poly_psi(i: usize, sign: PsiSign, p: i64, k: &Weight) -> PolyOperator {
    let n = k.total();
    let (block, exp, shift) = match sign {
        PsiSign::Plus => (i + 1, p, 1 - k.get(i + 1)),
        PsiSign::Minus => (i, -p, 1 - k.get(i)),
    };
    let mut e = vec![0i32; n];
    for slot in e.iter_mut().take(k.partial_sum(block)).skip(k.partial_sum(block - 1)) {
        *slot = exp as i32;
    }
    PolyOperator::monomial(e, parity(p * shift))
}

fn columns_to_matrix(rows: usize, cols: Vec<Vec<i64>>) -> IntMatrix {
    IntMatrix::from_columns(rows, &cols)
}

/// `F_s : Gr(k, N) -> Gr(k + 1, N)` sends `[S_lambda V]` to `[S_{(s, lambda)} V]`
/// straightened by Borel-Weil-Bott on the fibres `P(V^dual)`.
fn matrix_f(s: i64, k: &Weight) -> Result<IntMatrix> {
    let (k1, n) = (k.get(1) as usize, k.total());
    let (src, dst) = (kring(k1, n), kring(k1 + 1, n));
    let mut cols = Vec::new();
    for lambda in src.basis() {
        let mut w = vec![s];
        w.extend(lambda.padded(k1));
        cols.push(dst.schur_v(&w)?.to_vector(dst.basis()));
    }
    Ok(columns_to_matrix(dst.rank(), cols))
}

/// `E_r : Gr(k, N) -> Gr(k - 1, N)`: branch `S_lambda V` along `V' in V` with
/// line `L = V / V'`, twist by `L^r`, and push forward along `P(C^N / V')`,
/// where `L^m` becomes `S_{(0, ..., 0, m)}(C^N / V')`.
fn matrix_e(r: i64, k: &Weight) -> Result<IntMatrix> {
    let (k1, n) = (k.get(1) as usize, k.total());
    let (src, dst) = (kring(k1, n), kring(k1 - 1, n));
    let rank_q = n - k1 + 1;
    let mut cols = Vec::new();
    for lambda in src.basis() {
        let mut class = dst.zero();
        for mu in horizontal_strips_below(lambda, k1 - 1) {
            let m = (lambda.size() - mu.size()) as i64 + r;
            let mut beta = vec![0i64; rank_q - 1];
            beta.push(m);
            let q = dst.schur_q(&beta)?;
            if q.is_zero() {
                continue;
            }
            let v = dst.schur_v(&mu.padded(k1 - 1))?;
            class.add_scaled(&dst.mul(&v, &q), 1);
        }
        cols.push(class.to_vector(dst.basis()));
    }
    Ok(columns_to_matrix(dst.rank(), cols))
}

/// Both `Psi^+ = det Q` and `(Psi^-)^{-1} = det V` on `Gr(k, N)`, with the shift signs.
fn matrix_psi(sign: PsiSign, p: i64, k: &Weight) -> IntMatrix {
    let (k1, n) = (k.get(1) as usize, k.total());
    let ring = kring(k1, n);
    let shift = match sign {
        PsiSign::Plus => 1 - k.get(2),
        PsiSign::Minus => 1 - k.get(1),
    };
    let twist = ring.det_v_pow(-p);
    let cols = ring
        .basis()
        .iter()
        .map(|lambda| {
            let b = KClass::basis(k1, n, lambda).expect("basis shape");
            ring.mul(&b, &twist).scaled(parity(p * shift)).to_vector(ring.basis())
        })
        .collect();
    columns_to_matrix(ring.rank(), cols)
}

/// `E_{i,r} 1_k` in the geometric model.
pub fn op_e(i: usize, r: i64, k: &Composition) -> Result<KOperator> {
    standard_model().e(i, r, &Weight::from(k))
}

/// `F_{i,s} 1_k` in the geometric model.
pub fn op_f(i: usize, s: i64, k: &Composition) -> Result<KOperator> {
    standard_model().f(i, s, &Weight::from(k))
}

/// `(Psi^sign_i)^power 1_k` in the geometric model.
pub fn op_psi(i: usize, sign: PsiSign, power: i64, k: &Composition) -> Result<KOperator> {
    standard_model().psi(i, sign, power, &Weight::from(k))
}

/// Target weight of a word in functional order (the last letter acts first).
pub fn word_target(word: &[Gen], source: &Weight) -> Weight {
    word.iter().rev().fold(source.clone(), |w, g| g.target(&w))
}

/// True when every letter is admissible at the weight it acts on.
pub fn word_legal(word: &[Gen], source: &Weight, bounds: IndexBounds) -> bool {
    let mut w = source.clone();
    for g in word.iter().rev() {
        if !g.legal(&w, bounds) {
            return false;
        }
        w = g.target(&w);
    }
    true
}

/// Evaluates a word; the empty word is the identity.
pub fn eval_word<M: GeneratorModel + ?Sized>(model: &M, word: &[Gen], source: &Weight) -> Result<KOperator> {
    if word.is_empty() {
        return Ok(model.identity(source));
    }
    let mut ops = Vec::with_capacity(word.len());
    let mut w = source.clone();
    for g in word.iter().rev() {
        let op = model.generator(*g, &w)?;
        w = op.target().clone();
        ops.push(op);
    }
    ops.reverse();
    compose(&ops)
}

/// Signed sum of words.
pub type Terms = Vec<(i64, Vec<Gen>)>;

/// Evaluates a signed sum of words from `source` to `target`.
pub fn eval_terms<M: GeneratorModel + ?Sized>(
    model: &M,
    terms: &[(i64, Vec<Gen>)],
    source: &Weight,
    target: &Weight,
) -> Result<KOperator> {
    let ops: Vec<(i64, KOperator)> = terms
        .iter()
        .map(|(c, w)| Ok((*c, eval_word(model, w, source)?)))
        .collect::<Result<_>>()?;
    KOperator::linear_combination(source, target, &ops)
}

/// Polynomial-model inputs that span the classes of `Fl_k` over the
/// symmetric Laurent ring: products over blocks `b` of monomial symmetric
/// functions `m_lambda` with `lambda` in a `k_b x (N - s_b)` box.
pub fn spanning_family(k: &Composition) -> Vec<LaurentPoly> {
    let n = k.total();
    let sums = k.partial_sums();
    let mut out = vec![LaurentPoly::one(n)];
    for b in 0..k.n() {
        let (start, len) = (sums[b], k.blocks()[b]);
        let shapes = box_partitions(n - sums[b + 1], len);
        let factors: Vec<LaurentPoly> = shapes
            .iter()
            .map(|lambda| monomial_symmetric(lambda, start, len, n))
            .collect();
        out = out
            .iter()
            .flat_map(|p| factors.iter().map(move |q| mul(p, q).expect("same ring")))
            .collect();
    }
    out
}

/// `m_lambda(x_{start+1}, ..., x_{start+len})`.
fn monomial_symmetric(lambda: &Partition, start: usize, len: usize, n: usize) -> LaurentPoly {
    let mut exps: Vec<i32> = lambda.padded(len).iter().map(|&x| x as i32).collect();
    exps.sort_unstable();
    let mut out = LaurentPoly::zero(n);
    loop {
        let mut e = vec![0i32; n];
        e[start..start + len].copy_from_slice(&exps);
        out = &out + &LaurentPoly::monomial_int(e, 1);
        if !next_permutation(&mut exps) {
            return out;
        }
    }
}

fn next_permutation(v: &mut [i32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Exact comparison: matrices when both carry one, otherwise the polynomial
/// model on the spanning family (free ring first, then modulo the Borel ideal).
pub fn compare_operators(name: &str, lhs: &KOperator, rhs: &KOperator) -> Check {
    if lhs.source != rhs.source || lhs.target != rhs.target {
        return Check::fail(
            name,
            Level::FreeRing,
            format!("{} -> {} vs {} -> {}", lhs.source, lhs.target, rhs.source, rhs.target),
        );
    }
    if let (Some(a), Some(b)) = (&lhs.matrix, &rhs.matrix) {
        return Check::expect(name, Level::Matrix, a == b, || format!("lhs {a} rhs {b}"));
    }
    let Some(comp) = lhs.source.composition() else {
        return Check::pass(name, Level::FreeRing);
    };
    if lhs.target.is_zero() {
        return Check::pass(name, Level::FreeRing);
    }
    compare_on_inputs(name, &lhs.poly, &rhs.poly, &spanning_family(&comp))
}

/// How homological shifts decategorify. `Ignored` drops the sign and exists
/// to show that the suites detect the omission.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftSign {
    Standard,
    Ignored,
}

impl ShiftSign {
    /// The factor contributed by a shift `[m]`.
    pub fn factor(self, m: i64) -> i64 {
        match self {
            ShiftSign::Standard => parity(m),
            ShiftSign::Ignored => 1,
        }
    }
}

/// One identity between signed sums of words, both starting at `source`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub source: Weight,
    pub lhs: Terms,
    pub rhs: Terms,
}

impl Instance {
    fn new(name: String, source: &Weight, lhs: Terms, rhs: Terms) -> Self {
        Instance {
            name,
            source: source.clone(),
            lhs,
            rhs,
        }
    }

    fn legal(&self, bounds: IndexBounds) -> bool {
        self.lhs
            .iter()
            .chain(&self.rhs)
            .all(|(_, w)| word_legal(w, &self.source, bounds))
    }

    fn target(&self) -> Weight {
        let word = self
            .lhs
            .first()
            .or(self.rhs.first())
            .map(|(_, w)| w.as_slice())
            .unwrap_or(&[]);
        word_target(word, &self.source)
    }

    pub fn check<M: GeneratorModel + ?Sized>(&self, model: &M) -> Check {
        let target = self.target();
        let sides = eval_terms(model, &self.lhs, &self.source, &target)
            .and_then(|l| Ok((l, eval_terms(model, &self.rhs, &self.source, &target)?)));
        match sides {
            Ok((l, r)) => compare_operators(&self.name, &l, &r),
            Err(e) => Check::fail(&self.name, Level::FreeRing, e.to_string()),
        }
    }
}

fn run_instances<M: GeneratorModel + ?Sized>(model: &M, instances: &[Instance], report: &mut VerificationReport) {
    let checks: Vec<Check> = instances.par_iter().map(|inst| inst.check(model)).collect();
    for c in checks {
        report.push(c);
    }
}

fn index_window(n_total: usize) -> std::ops::RangeInclusive<i64> {
    let b = n_total as i64 + 3;
    -b..=b
}

use Gen::{Psi, E, F};
use PsiSign::{Minus, Plus};

fn sign_name(sign: PsiSign) -> &'static str {
    match sign {
        Plus => "plus",
        Minus => "minus",
    }
}

/// Relation of `j` to `i`: same, next, previous or far.
fn neighbor(i: usize, j: usize) -> &'static str {
    if i == j {
        "same"
    } else if j == i + 1 {
        "next"
    } else if j + 1 == i {
        "prev"
    } else {
        "far"
    }
}

fn label(base: &str, k: &Weight, idx: &[(&str, i64)]) -> String {
    let mut s = format!("{base} k={k}");
    for (n, v) in idx {
        s.push_str(&format!(" {n}={v}"));
    }
    s
}

/// Relations of the loop algebra at source weight `k` (without the `h` generators).
pub fn u_relation_instances(k: &Weight, sh: ShiftSign) -> Vec<Instance> {
    let n = k.n();
    let win: Vec<i64> = index_window(k.total()).collect();
    let mut out = Vec::new();
    let one = |w: Vec<Gen>| vec![(1, w)];
    // Units and Psi.
    for i in 1..n {
        for (sa, pa) in [(Plus, 1), (Plus, -1), (Minus, 1), (Minus, -1)] {
            out.push(Instance::new(
                label(
                    &format!("psi_inverse_{}", sign_name(sa)),
                    k,
                    &[("i", i as i64), ("p", pa)],
                ),
                k,
                one(vec![Psi(i, sa, pa), Psi(i, sa, -pa)]),
                vec![(1, vec![])],
            ));
            for j in 1..n {
                for (sb, pb) in [(Plus, 1), (Plus, -1), (Minus, 1), (Minus, -1)] {
                    if (j, sb, pb) <= (i, sa, pa) {
                        continue;
                    }
                    out.push(Instance::new(
                        label(
                            &format!("psi_commute_{}_{}", sign_name(sa), sign_name(sb)),
                            k,
                            &[("i", i as i64), ("p", pa), ("j", j as i64), ("q", pb)],
                        ),
                        k,
                        one(vec![Psi(i, sa, pa), Psi(j, sb, pb)]),
                        one(vec![Psi(j, sb, pb), Psi(i, sa, pa)]),
                    ));
                }
            }
        }
    }
    for i in 1..n {
        for j in 1..n {
            let (ii, jj) = (i as i64, j as i64);
            let nb = neighbor(i, j);
            for &r in &win {
                for &s in &win {
                    let idx = [("i", ii), ("j", jj), ("r", r), ("s", s)];
                    // e_{i,r} e_{j,s}.
                    let lhs = one(vec![E(i, r), E(j, s)]);
                    let rhs = match nb {
                        "same" => vec![(sh.factor(1), vec![E(i, s + 1), E(i, r - 1)])],
                        "next" => vec![(1, vec![E(j, s), E(i, r)]), (-1, vec![E(j, s - 1), E(i, r + 1)])],
                        "prev" => vec![
                            (1, vec![E(i, r + 1), E(j, s - 1)]),
                            (-1, vec![E(j, s - 1), E(i, r + 1)]),
                        ],
                        _ => one(vec![E(j, s), E(i, r)]),
                    };
                    out.push(Instance::new(label(&format!("ee_{nb}"), k, &idx), k, lhs, rhs));
                    // f_{i,r} f_{j,s}.
                    let lhs = one(vec![F(i, r), F(j, s)]);
                    let rhs = match nb {
                        "same" => vec![(sh.factor(1), vec![F(i, s - 1), F(i, r + 1)])],
                        "next" => vec![
                            (1, vec![F(i, r - 1), F(j, s + 1)]),
                            (-1, vec![F(j, s + 1), F(i, r - 1)]),
                        ],
                        "prev" => vec![(1, vec![F(j, s), F(i, r)]), (-1, vec![F(j, s + 1), F(i, r - 1)])],
                        _ => one(vec![F(j, s), F(i, r)]),
                    };
                    out.push(Instance::new(label(&format!("ff_{nb}"), k, &idx), k, lhs, rhs));
                    // [e_{i,r}, f_{j,s}].
                    let lhs = vec![(1, vec![E(i, r), F(j, s)]), (-1, vec![F(j, s), E(i, r)])];
                    let sum = r + s;
                    let rhs = if i != j {
                        Some(vec![])
                    } else if sum == k.get(i + 1) && sum == -k.get(i) {
                        // k_i = k_{i+1} = 0: both boundary cases apply at once.
                        Some(vec![(1, vec![Psi(i, Plus, 1)]), (-1, vec![Psi(i, Minus, 1)])])
                    } else if sum == k.get(i + 1) {
                        Some(one(vec![Psi(i, Plus, 1)]))
                    } else if sum == -k.get(i) {
                        Some(vec![(-1, vec![Psi(i, Minus, 1)])])
                    } else if -k.get(i) < sum && sum < k.get(i + 1) {
                        Some(vec![])
                    } else {
                        None
                    };
                    if let Some(rhs) = rhs {
                        let base = if i == j { "ef_commutator" } else { "ef_commutator_mixed" };
                        out.push(Instance::new(label(base, k, &idx), k, lhs, rhs));
                    }
                }
                // psi^{+-}_i e_{j,r} and psi^{+-}_i f_{j,r}.
                let idx = [("i", ii), ("j", jj), ("r", r)];
                let (pe, me, pf, mf) = match nb {
                    "same" => (
                        (sh.factor(1), E(j, r + 1)),
                        (sh.factor(1), E(j, r + 1)),
                        (sh.factor(1), F(j, r - 1)),
                        (sh.factor(1), F(j, r - 1)),
                    ),
                    "next" => (
                        (sh.factor(1), E(j, r - 1)),
                        (1, E(j, r)),
                        (sh.factor(1), F(j, r + 1)),
                        (1, F(j, r)),
                    ),
                    "prev" => (
                        (1, E(j, r)),
                        (sh.factor(1), E(j, r - 1)),
                        (1, F(j, r)),
                        (sh.factor(1), F(j, r + 1)),
                    ),
                    _ => ((1, E(j, r)), (1, E(j, r)), (1, F(j, r)), (1, F(j, r))),
                };
                for (sign, g, (c, h)) in [
                    (Plus, E(j, r), pe),
                    (Minus, E(j, r), me),
                    (Plus, F(j, r), pf),
                    (Minus, F(j, r), mf),
                ] {
                    let kind = if matches!(g, E(..)) { "e" } else { "f" };
                    out.push(Instance::new(
                        label(&format!("psi_{}_{kind}_{nb}", sign_name(sign)), k, &idx),
                        k,
                        one(vec![Psi(i, sign, 1), g]),
                        vec![(c, vec![h, Psi(i, sign, 1)])],
                    ));
                }
            }
        }
    }
    out
}

/// Checks the relations of the loop algebra over every weight in `C(n, N)`.
pub fn verify_u_relations(n: usize, big_n: usize, bounds: IndexBounds) -> VerificationReport {
    verify_u_relations_with(standard_model(), n, big_n, bounds, ShiftSign::Standard)
}

pub fn verify_u_relations_with<M: GeneratorModel + ?Sized>(
    model: &M,
    n: usize,
    big_n: usize,
    bounds: IndexBounds,
    sh: ShiftSign,
) -> VerificationReport {
    let mut report = VerificationReport::new("u0")
        .with_param("n", n)
        .with_param("N", big_n)
        .with_param(
            "bounds",
            match bounds {
                IndexBounds::Standard => "standard",
                IndexBounds::Extended => "extended",
            },
        );
    let weights: Vec<Weight> = compositions(n, big_n).iter().map(Weight::from).collect();
    for k in &weights {
        report.push(Check::pass(format!("unit_idempotent k={k}"), Level::FreeRing));
        let id = model.identity(k);
        let c = match compose(&[id.clone(), id.clone()]) {
            Ok(sq) => compare_operators(&format!("unit_idempotent k={k}"), &sq, &id),
            Err(e) => Check::fail(format!("unit_idempotent k={k}"), Level::FreeRing, e.to_string()),
        };
        *report.checks.last_mut().expect("just pushed") = c;
        for l in &weights {
            if l != k {
                let ok = compose(&[model.identity(k), model.identity(l)]).is_err();
                report.push(Check::expect(
                    format!("unit_orthogonal k={k} l={l}"),
                    Level::FreeRing,
                    ok,
                    || "composite of distinct units was accepted".into(),
                ));
            }
        }
    }
    let instances: Vec<Instance> = weights
        .iter()
        .flat_map(|k| u_relation_instances(k, sh))
        .filter(|inst| inst.legal(bounds))
        .collect();
    run_instances(model, &instances, &mut report);
    report
}

/// Families of categorical conditions whose shadows are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// Adjoints of `E` and `F` as `Psi`-conjugates (two-step weights only).
    Adjunction,
    /// `Psi` commute and are invertible.
    PsiInvertible,
    /// Exchange, triangle and far commutation among `E`.
    EE,
    /// Exchange, triangle and far commutation among `F`.
    FF,
    /// `Psi` past `E`.
    PsiE,
    /// `Psi` past `F`.
    PsiF,
    /// `E_i` and `F_j` commute for `i != j`.
    EFMixed,
    /// The `E F` / `F E` triangles.
    EFTriangle,
}

impl Condition {
    pub const ALL: [Condition; 8] = [
        Condition::Adjunction,
        Condition::PsiInvertible,
        Condition::EE,
        Condition::FF,
        Condition::PsiE,
        Condition::PsiF,
        Condition::EFMixed,
        Condition::EFTriangle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::Adjunction => "adjunction",
            Condition::PsiInvertible => "psi_invertible",
            Condition::EE => "ee",
            Condition::FF => "ff",
            Condition::PsiE => "psi_e",
            Condition::PsiF => "psi_f",
            Condition::EFMixed => "ef_mixed",
            Condition::EFTriangle => "ef_triangle",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| FlagkError::Parse(format!("unknown condition {s}")))
    }
}

/// Shadows of the categorical conditions at source weight `k`, except adjunction.
pub fn condition_instances(k: &Weight, conditions: &[Condition], sh: ShiftSign) -> Vec<Instance> {
    let n = k.n();
    let win: Vec<i64> = index_window(k.total()).collect();
    let mut out = Vec::new();
    let one = |w: Vec<Gen>| vec![(1, w)];
    let has = |c: Condition| conditions.contains(&c);
    if has(Condition::PsiInvertible) {
        for inst in u_relation_instances(k, sh) {
            if inst.name.starts_with("psi_inverse") || inst.name.starts_with("psi_commute") {
                out.push(inst);
            }
        }
    }
    for i in 1..n {
        let ii = i as i64;
        for &r in &win {
            for &s in &win {
                let idx = [("i", ii), ("r", r), ("s", s)];
                if has(Condition::EE) {
                    // E_{i,r+1} E_{i,s} vs E_{i,s+1} E_{i,r}.
                    let rhs = match r - s {
                        d if d >= 1 => vec![(sh.factor(-1), vec![E(i, s + 1), E(i, r)])],
                        0 => vec![],
                        _ => vec![(sh.factor(1), vec![E(i, s + 1), E(i, r)])],
                    };
                    out.push(Instance::new(
                        label("ee_exchange", k, &idx),
                        k,
                        one(vec![E(i, r + 1), E(i, s)]),
                        rhs,
                    ));
                    if i + 1 < n {
                        let j = i + 1;
                        out.push(Instance::new(
                            label("ee_triangle", k, &idx),
                            k,
                            one(vec![E(j, s + 1), E(i, r)]),
                            vec![(1, vec![E(j, s), E(i, r + 1)]), (1, vec![E(i, r), E(j, s + 1)])],
                        ));
                    }
                    for j in (i + 2)..n {
                        out.push(Instance::new(
                            label("ee_far_commute", k, &[("i", ii), ("j", j as i64), ("r", r), ("s", s)]),
                            k,
                            one(vec![E(i, r), E(j, s)]),
                            one(vec![E(j, s), E(i, r)]),
                        ));
                    }
                }
                if has(Condition::FF) {
                    // F_{i,r} F_{i,s+1} vs F_{i,s} F_{i,r+1}.
                    let rhs = match r - s {
                        d if d >= 1 => vec![(sh.factor(1), vec![F(i, s), F(i, r + 1)])],
                        0 => vec![],
                        _ => vec![(sh.factor(-1), vec![F(i, s), F(i, r + 1)])],
                    };
                    out.push(Instance::new(
                        label("ff_exchange", k, &idx),
                        k,
                        one(vec![F(i, r), F(i, s + 1)]),
                        rhs,
                    ));
                    if i + 1 < n {
                        let j = i + 1;
                        out.push(Instance::new(
                            label("ff_triangle", k, &idx),
                            k,
                            one(vec![F(i, r), F(j, s + 1)]),
                            vec![(1, vec![F(i, r + 1), F(j, s)]), (1, vec![F(j, s + 1), F(i, r)])],
                        ));
                    }
                    for j in (i + 2)..n {
                        out.push(Instance::new(
                            label("ff_far_commute", k, &[("i", ii), ("j", j as i64), ("r", r), ("s", s)]),
                            k,
                            one(vec![F(i, r), F(j, s)]),
                            one(vec![F(j, s), F(i, r)]),
                        ));
                    }
                }
                if has(Condition::EFMixed) {
                    for j in 1..n {
                        if j != i {
                            out.push(Instance::new(
                                label("ef_mixed_commute", k, &[("i", ii), ("j", j as i64), ("r", r), ("s", s)]),
                                k,
                                one(vec![E(i, r), F(j, s)]),
                                one(vec![F(j, s), E(i, r)]),
                            ));
                        }
                    }
                }
                if has(Condition::EFTriangle) {
                    let (ef, fe) = (vec![E(i, r), F(i, s)], vec![F(i, s), E(i, r)]);
                    let sum = r + s;
                    if degenerate_pair(k, i) {
                        // Handled by a skipped check in the suite.
                    } else if sum == k.get(i + 1) {
                        out.push(Instance::new(
                            label("ef_triangle_plus", k, &idx),
                            k,
                            one(ef),
                            vec![(1, fe), (1, vec![Psi(i, Plus, 1)])],
                        ));
                    } else if sum == -k.get(i) {
                        out.push(Instance::new(
                            label("ef_triangle_minus", k, &idx),
                            k,
                            one(fe),
                            vec![(1, ef), (1, vec![Psi(i, Minus, 1)])],
                        ));
                    } else if -k.get(i) < sum && sum < k.get(i + 1) {
                        out.push(Instance::new(label("ef_commute", k, &idx), k, one(fe), one(ef)));
                    }
                }
            }
            for sign in [Plus, Minus] {
                let sn = sign_name(sign);
                // The shift [-+1] for Psi^{+-}.
                let own = match sign {
                    Plus => sh.factor(-1),
                    Minus => sh.factor(1),
                };
                for j in 1..n {
                    let nb = neighbor(i, j);
                    let idx = [("i", ii), ("j", j as i64), ("r", r)];
                    // The neighbor on the sign's side shifts the index; the other commutes.
                    let toward = matches!((sign, nb), (Plus, "next") | (Minus, "prev"));
                    if has(Condition::PsiE) {
                        let (c, h) = match nb {
                            "same" => (own, E(j, r + 1)),
                            _ if toward => (shift_toward_e(sign, sh), E(j, r - 1)),
                            _ => (1, E(j, r)),
                        };
                        let base = match nb {
                            "same" => "psi_e_shift",
                            "far" => "psi_e_far",
                            _ => "psi_e_neighbor",
                        };
                        out.push(Instance::new(
                            label(&format!("{base}_{sn}"), k, &idx),
                            k,
                            one(vec![Psi(i, sign, 1), E(j, r)]),
                            vec![(c, vec![h, Psi(i, sign, 1)])],
                        ));
                    }
                    if has(Condition::PsiF) {
                        let (c, h) = match nb {
                            "same" => (shift_same_f(sign, sh), F(j, r - 1)),
                            _ if toward => (shift_toward_f(sign, sh), F(j, r + 1)),
                            _ => (1, F(j, r)),
                        };
                        let base = match nb {
                            "same" => "psi_f_shift",
                            "far" => "psi_f_far",
                            _ => "psi_f_neighbor",
                        };
                        out.push(Instance::new(
                            label(&format!("{base}_{sn}"), k, &idx),
                            k,
                            one(vec![Psi(i, sign, 1), F(j, r)]),
                            vec![(c, vec![h, Psi(i, sign, 1)])],
                        ));
                    }
                }
            }
        }
    }
    out
}

/// True when `k_i = k_{i+1} = 0`.
fn degenerate_pair(k: &Weight, i: usize) -> bool {
    k.get(i) == 0 && k.get(i + 1) == 0
}

/// `Psi^{+-}_i E_{i+-1,r} = E_{i+-1,r-1} Psi^{+-}_i [+-1]`.
fn shift_toward_e(sign: PsiSign, sh: ShiftSign) -> i64 {
    match sign {
        Plus => sh.factor(1),
        Minus => sh.factor(-1),
    }
}

/// `Psi^{+-}_i F_{i,r} = F_{i,r-1} Psi^{+-}_i [+-1]`.
fn shift_same_f(sign: PsiSign, sh: ShiftSign) -> i64 {
    match sign {
        Plus => sh.factor(1),
        Minus => sh.factor(-1),
    }
}

/// `Psi^{+-}_i F_{i+-1,s} = F_{i+-1,s+1} Psi^{+-}_i [-+1]`.
fn shift_toward_f(sign: PsiSign, sh: ShiftSign) -> i64 {
    match sign {
        Plus => sh.factor(-1),
        Minus => sh.factor(1),
    }
}

/// Euler form matrix `P[a][b] = chi(e_a, e_b)` on `Gr(k_1, N)`.
pub fn euler_matrix(k: &Weight) -> Result<IntMatrix> {
    let ring = kring(k.get(1) as usize, k.total());
    let basis = ring.basis();
    let mut rows = Vec::with_capacity(basis.len());
    for a in basis {
        let row: Vec<i64> = basis
            .iter()
            .map(|b| crate::kgr::euler_pairing(a, b, ring.k(), ring.big_n()))
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Ok(IntMatrix::zeros(0, 0));
    }
    IntMatrix::from_rows(&rows)
}

/// A generator together with the word claimed to be its right or left
/// adjoint, and the shift exponent of that word.
struct AdjointClaim {
    name: String,
    gen: Gen,
    right: bool,
    word: Vec<Gen>,
    shift: i64,
}

fn adjoint_claims(k: &Weight) -> Vec<AdjointClaim> {
    let (k1, k2) = (k.get(1), k.get(2));
    let mut out = Vec::new();
    for r in index_window(k.total()) {
        out.push(AdjointClaim {
            name: label("adjoint_e_right", k, &[("r", r)]),
            gen: E(1, r),
            right: true,
            word: vec![Psi(1, Plus, r + 1), F(1, k2 + 2), Psi(1, Plus, -r - 2)],
            shift: -r - 1,
        });
        out.push(AdjointClaim {
            name: label("adjoint_e_left", k, &[("r", r)]),
            gen: E(1, r),
            right: false,
            word: vec![Psi(1, Minus, r + k1 - 1), F(1, 0), Psi(1, Minus, -r - k1)],
            shift: r + k1,
        });
        let s = r;
        out.push(AdjointClaim {
            name: label("adjoint_f_right", k, &[("s", s)]),
            gen: F(1, s),
            right: true,
            word: vec![Psi(1, Minus, -s + 1), E(1, -k1 - 2), Psi(1, Minus, s - 2)],
            shift: s - 1,
        });
        out.push(AdjointClaim {
            name: label("adjoint_f_left", k, &[("s", s)]),
            gen: F(1, s),
            right: false,
            word: vec![Psi(1, Plus, -s + k2 - 1), E(1, 0), Psi(1, Plus, s - k2)],
            shift: -s + k2,
        });
    }
    out
}

/// Adjunction shadows on a two-step weight: `A^T P_t = P_s A^R` for right
/// adjoints and `(A^L)^T P_s = P_t A` for left adjoints, with `P` the Euler
/// form matrices.
pub fn adjunction_checks<M: GeneratorModel + ?Sized>(model: &M, k: &Weight, sh: ShiftSign) -> Vec<Check> {
    if k.n() != 2 || k.is_zero() {
        return vec![Check::skipped(
            format!("adjunction k={k}"),
            Level::Matrix,
            "adjunction shadows use the two-step Euler form",
        )];
    }
    let mut out = Vec::new();
    for claim in adjoint_claims(k) {
        if !claim.gen.legal(k, IndexBounds::Standard) {
            continue;
        }
        let target = claim.gen.target(k);
        if target.is_zero() {
            continue;
        }
        let result = (|| -> Result<Check> {
            let a = model.generator(claim.gen, k)?;
            let adj = eval_word(model, &claim.word, &target)?.scaled(sh.factor(claim.shift));
            let (am, bm) = (
                a.matrix.clone().expect("two-step"),
                adj.matrix.clone().expect("two-step"),
            );
            let (ps, pt) = (euler_matrix(k)?, euler_matrix(&target)?);
            let (lhs, rhs) = if claim.right {
                (am.transpose().mul(&pt)?, ps.mul(&bm)?)
            } else {
                (bm.transpose().mul(&ps)?, pt.mul(&am)?)
            };
            Ok(Check::expect(&claim.name, Level::Matrix, lhs == rhs, || {
                let sign = if lhs == rhs.scale(-1) {
                    " (off by a global sign)"
                } else {
                    ""
                };
                format!("lhs {lhs} rhs {rhs}{sign}")
            }))
        })();
        out.push(result.unwrap_or_else(|e| Check::fail(&claim.name, Level::Matrix, e.to_string())));
    }
    out
}

/// Checks the selected condition shadows at one weight.
pub fn verify_cat_shadows(k: &Composition, conditions: &[Condition]) -> VerificationReport {
    verify_cat_shadows_with(standard_model(), k, conditions, ShiftSign::Standard)
}

pub fn verify_cat_shadows_with<M: GeneratorModel + ?Sized>(
    model: &M,
    k: &Composition,
    conditions: &[Condition],
    sh: ShiftSign,
) -> VerificationReport {
    let w = Weight::from(k);
    let names: Vec<&str> = conditions.iter().map(|c| c.name()).collect();
    let mut report = VerificationReport::new("cat")
        .with_param("k", k.to_string())
        .with_param("conditions", names);
    if conditions.contains(&Condition::Adjunction) {
        for c in adjunction_checks(model, &w, sh) {
            report.push(c);
        }
    }
    if conditions.contains(&Condition::EFTriangle) {
        for i in (1..w.n()).filter(|&i| degenerate_pair(&w, i)) {
            report.push(Check::skipped(
                format!("ef_triangle k={w} i={i}"),
                Level::FreeRing,
                "k_i = k_{i+1} = 0: E and F vanish while Psi is invertible, so no triangle can hold",
            ));
        }
    }
    let instances: Vec<Instance> = condition_instances(&w, conditions, sh)
        .into_iter()
        .filter(|inst| inst.legal(IndexBounds::Standard))
        .collect();
    run_instances(model, &instances, &mut report);
    report
}

/// Every condition at every weight of `C(n, N)`.
pub fn verify_cat_shadows_all(n: usize, big_n: usize) -> VerificationReport {
    let mut report = VerificationReport::new("cat").with_param("n", n).with_param("N", big_n);
    for k in compositions(n, big_n) {
        report.absorb("", verify_cat_shadows(&k, &Condition::ALL));
    }
    report
}

/// Every generator admissible at `k` in the standard window, `Psi^{+-1}` included.
pub fn generators_at(k: &Weight) -> Vec<Gen> {
    let mut out = Vec::new();
    for i in 1..k.n() {
        for r in index_window(k.total()) {
            for g in [E(i, r), F(i, r)] {
                if g.legal(k, IndexBounds::Standard) {
                    out.push(g);
                }
            }
        }
        for sign in [Plus, Minus] {
            for p in [1, -1] {
                out.push(Psi(i, sign, p));
            }
        }
    }
    out
}

/// Compares the matrix model with the polynomial model transported through
/// the Schur-polynomial bridge, column by column.
pub fn cross_model_check(k: &Composition, gens: &[Gen]) -> VerificationReport {
    cross_model_check_with(standard_model(), k, gens)
}

pub fn cross_model_check_with<M: GeneratorModel + ?Sized>(
    model: &M,
    k: &Composition,
    gens: &[Gen],
) -> VerificationReport {
    let w = Weight::from(k);
    let mut report = VerificationReport::new("cross").with_param("k", k.to_string());
    if k.n() != 2 {
        report.push(Check::fail("setup", Level::Matrix, "the matrix model needs two blocks"));
        return report;
    }
    for &g in gens {
        let name = format!("cross {g} k={w}");
        let result = (|| -> Result<Check> {
            let op = model.generator(g, &w)?;
            let tgt = op.target().clone();
            if tgt.is_zero() {
                return Ok(Check::pass(&name, Level::Matrix));
            }
            let tcomp = tgt.composition().expect("nonzero");
            let src_ring = kring(k.block(1), k.total());
            for lambda in src_ring.basis() {
                let class = KClass::basis(k.block(1), k.total(), lambda)?;
                let via_matrix = op.apply_class(&class)?;
                let image = op.apply_poly(sym_of_kclass(&class)?.poly())?;
                let via_poly = kclass_of_sym(&SymClass::new(image, tcomp.clone())?)?;
                if via_matrix != via_poly {
                    return Ok(Check::fail(
                        &name,
                        Level::Matrix,
                        format!("on [{lambda}]: matrix {via_matrix}, polynomial {via_poly}"),
                    ));
                }
            }
            Ok(Check::pass(&name, Level::Matrix))
        })();
        report.push(result.unwrap_or_else(|e| Check::fail(&name, Level::Matrix, e.to_string())));
    }
    report
}

/// Cross-model agreement for every generator at every weight of `C(2, N)`.
pub fn verify_cross_model(big_n: usize) -> VerificationReport {
    let mut report = VerificationReport::new("cross").with_param("N", big_n);
    let parts: Vec<VerificationReport> = compositions(2, big_n)
        .par_iter()
        .map(|k| cross_model_check(k, &generators_at(&Weight::from(k))))
        .collect();
    for sub in parts {
        report.absorb("", sub);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(v: &[usize]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    fn class(k: usize, n: usize, terms: &[(&[usize], i64)]) -> KClass {
        KClass::from_coeffs(
            k,
            n,
            terms.iter().map(|(p, c)| (Partition::new(p.to_vec()).unwrap(), *c)),
        )
        .unwrap()
    }

    #[test]
    fn f_on_a_point_gives_the_tautological_class() {
        let f1 = op_f(1, 1, &comp(&[0, 2])).unwrap();
        let img = f1.apply_class(&KClass::one(0, 2)).unwrap();
        assert_eq!(img, class(1, 2, &[(&[1], 1)]));
    }

    #[test]
    fn e_pushes_forward_to_euler_characteristics() {
        let e0 = op_e(1, 0, &comp(&[1, 1])).unwrap();
        assert_eq!(e0.apply_class(&KClass::one(1, 2)).unwrap(), KClass::one(0, 2));
        let taut = class(1, 2, &[(&[1], 1)]);
        assert!(e0.apply_class(&taut).unwrap().is_zero());
    }

    #[test]
    fn psi_plus_twists_by_the_quotient() {
        // [O (x) Q] = 2[O] - [S_1 V] on P^1; the shift 1 - k_2 = 0 adds no sign.
        let p = op_psi(1, Plus, 1, &comp(&[1, 1])).unwrap();
        assert_eq!(
            p.apply_class(&KClass::one(1, 2)).unwrap(),
            class(1, 2, &[(&[], 2), (&[1], -1)])
        );
        let pinv = op_psi(1, Plus, -1, &comp(&[1, 1])).unwrap();
        assert!(compose(&[p, pinv]).unwrap().matrix().unwrap().is_identity());
    }

    #[test]
    fn zero_weight_operators_are_zero_maps() {
        let e = op_e(1, 0, &comp(&[0, 2])).unwrap();
        assert!(e.target().is_zero());
        assert_eq!((e.matrix().unwrap().rows(), e.matrix().unwrap().cols()), (0, 1));
        assert!(e.poly().is_zero());
        let f = standard_model().f(1, 0, e.target()).unwrap();
        assert_eq!(f.target(), &Weight::new(vec![0, 2]));
        let through = compose(&[f, e]).unwrap();
        assert!(through.matrix().unwrap().is_zero());
    }

    #[test]
    fn composition_checks_weights() {
        let e = op_e(1, 0, &comp(&[1, 1])).unwrap();
        assert!(matches!(compose(&[e.clone(), e]), Err(FlagkError::Composition(_))));
        assert!(op_e(1, 1, &comp(&[1, 1])).is_err());
        assert!(op_f(2, 0, &comp(&[1, 1])).is_err());
    }

    #[test]
    fn spanning_family_sizes() {
        assert_eq!(spanning_family(&comp(&[1, 1, 1])).len(), 6);
        assert_eq!(spanning_family(&comp(&[2, 2])).len(), 6);
        assert_eq!(spanning_family(&comp(&[2, 1, 1])).len(), 12);
    }

    #[test]
    fn weights_display_and_roots() {
        let w = Weight::new(vec![1, 1]);
        assert_eq!(w.add_root(1, 1).to_string(), "0,2");
        assert!(w.add_root(1, 1).add_root(1, 1).is_zero());
    }
}
