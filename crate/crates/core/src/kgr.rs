//! Grothendieck groups of Grassmannians in the Schur-bundle basis, the
//! polynomial model of partial flag varieties, and Euler characteristics via
//! Borel-Weil-Bott.
//!
//! On `Gr(k, N)` the tautological subbundle `V` has rank `k` and the quotient
//! `Q = C^N / V` has rank `N - k`. The classes `[S_lambda V]` for `lambda` in
//! the `k x (N-k)` box form a basis; every other Schur class is rewritten into
//! it with the relation `lambda_t(C^N) = lambda_t(V) lambda_t(Q)`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigRational, ToPrimitive};
use serde::Serialize;

use crate::error::{FlagkError, Result};
use crate::polycore::{exact_div, LaurentPoly, Monomial};
use crate::shapes::{
    binomial, box_partitions, gl_dim, lr_expand, skew_ssyt_count, straighten_weight, transpose, Composition, Partition,
};

/// Integer combination of Schur-bundle basis classes on `Gr(k, N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KClass {
    pub k: usize,
    pub big_n: usize,
    coeffs: BTreeMap<Partition, i64>,
}

impl KClass {
    pub fn zero(k: usize, big_n: usize) -> Self {
        KClass {
            k,
            big_n,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis class `[S_lambda V]`.
    pub fn basis(k: usize, big_n: usize, lambda: &Partition) -> Result<Self> {
        Self::from_coeffs(k, big_n, [(lambda.clone(), 1)])
    }

    pub fn one(k: usize, big_n: usize) -> Self {
        Self::basis(k, big_n, &Partition::empty()).expect("empty partition is in every box")
    }

    /// Builds a class from basis coefficients; keys must lie in the box.
    pub fn from_coeffs<I: IntoIterator<Item = (Partition, i64)>>(k: usize, big_n: usize, terms: I) -> Result<Self> {
        let mut out = Self::zero(k, big_n);
        for (p, c) in terms {
            if !p.fits_box(big_n - k, k) {
                return Err(FlagkError::Domain(format!("{p} is outside the {k}x{} box", big_n - k)));
            }
            out.add_term(p, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, p: Partition, c: i64) {
        if c == 0 {
            return;
        }
        match self.coeffs.entry(p) {
            Entry::Occupied(mut o) => {
                let v = o.get().checked_add(c).expect("coefficient overflow");
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, i64> {
        &self.coeffs
    }

    pub fn get(&self, lambda: &Partition) -> i64 {
        self.coeffs.get(lambda).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_scaled(&mut self, other: &KClass, c: i64) {
        assert_eq!(
            (self.k, self.big_n),
            (other.k, other.big_n),
            "classes on different Grassmannians"
        );
        for (p, v) in &other.coeffs {
            self.add_term(p.clone(), v.checked_mul(c).expect("coefficient overflow"));
        }
    }

    pub fn plus(&self, other: &KClass) -> KClass {
        let mut out = self.clone();
        out.add_scaled(other, 1);
        out
    }

    pub fn minus(&self, other: &KClass) -> KClass {
        let mut out = self.clone();
        out.add_scaled(other, -1);
        out
    }

    pub fn scaled(&self, c: i64) -> KClass {
        let mut out = KClass::zero(self.k, self.big_n);
        out.add_scaled(self, c);
        out
    }

    /// Coefficient vector in the given basis order.
    pub fn to_vector(&self, order: &[Partition]) -> Vec<i64> {
        order.iter().map(|p| self.get(p)).collect()
    }

    pub fn from_vector(k: usize, big_n: usize, order: &[Partition], v: &[i64]) -> Result<Self> {
        Self::from_coeffs(k, big_n, order.iter().cloned().zip(v.iter().copied()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term {
            shape: String,
            coeff: i64,
        }
        let terms: Vec<Term> = self
            .coeffs
            .iter()
            .rev()
            .map(|(p, c)| Term {
                shape: p.to_string(),
                coeff: *c,
            })
            .collect();
        serde_json::json!({"k": self.k, "N": self.big_n, "terms": terms})
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().rev().map(|(p, c)| format!("{c}*[{p}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Memoizing calculator for `K(Gr(k, N))`.
pub struct KRing {
    k: usize,
    big_n: usize,
    basis: Vec<Partition>,
    shape_cache: Mutex<HashMap<Partition, KClass>>,
    product_cache: Mutex<HashMap<(Partition, Partition), KClass>>,
    q_cache: Mutex<HashMap<Partition, KClass>>,
    det_v_inv: OnceLock<KClass>,
    det_v: OnceLock<KClass>,
}

/// Shared calculator for `Gr(k, N)`.
pub fn kring(k: usize, big_n: usize) -> Arc<KRing> {
    type Registry = Mutex<HashMap<(usize, usize), Arc<KRing>>>;
    static RINGS: OnceLock<Registry> = OnceLock::new();
    let map = RINGS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().expect("ring registry poisoned");
    guard
        .entry((k, big_n))
        .or_insert_with(|| Arc::new(KRing::new(k, big_n)))
        .clone()
}

impl KRing {
    fn new(k: usize, big_n: usize) -> Self {
        assert!(k <= big_n, "Gr({k},{big_n}) is empty");
        KRing {
            k,
            big_n,
            basis: box_partitions(big_n - k, k),
            shape_cache: Mutex::new(HashMap::new()),
            product_cache: Mutex::new(HashMap::new()),
            q_cache: Mutex::new(HashMap::new()),
            det_v_inv: OnceLock::new(),
            det_v: OnceLock::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn big_n(&self) -> usize {
        self.big_n
    }

    /// Basis shapes in the collection order.
    pub fn basis(&self) -> &[Partition] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn zero(&self) -> KClass {
        KClass::zero(self.k, self.big_n)
    }

    pub fn one(&self) -> KClass {
        KClass::one(self.k, self.big_n)
    }

    /// `[S_lambda V]` for a partition with at most `k` parts, in the basis.
    ///
    /// A first part `m > N - k` is lowered with
    /// `s_lambda = sum_{d=1..N} (-1)^{d+1} C(N, d) s_{(lambda_1 - d, lambda_2, ...)}`,
    /// the Jacobi-Trudi expansion along the first row of the relation
    /// `sum_d (-1)^d e_d(C^N) h_{m-d}(V) = 0` valid for `m > N - k`.
    pub fn reduce_shape(&self, lambda: &Partition) -> KClass {
        if lambda.len() > self.k {
            return self.zero();
        }
        if lambda.first() <= self.big_n - self.k {
            return KClass::basis(self.k, self.big_n, lambda).expect("in box");
        }
        if let Some(hit) = self.shape_cache.lock().expect("cache poisoned").get(lambda) {
            return hit.clone();
        }
        let mut out = self.zero();
        let mut w = lambda.padded(self.k);
        let first = w[0];
        for d in 1..=self.big_n as i64 {
            w[0] = first - d;
            if let Some((sign, dom)) = straighten_weight(&w) {
                if let Some(p) = Partition::from_weight(&dom) {
                    let c = sign as i64 * binomial(self.big_n as i64, d) * if d % 2 == 1 { 1 } else { -1 };
                    out.add_scaled(&self.reduce_shape(&p), c);
                }
            }
        }
        self.shape_cache
            .lock()
            .expect("cache poisoned")
            .insert(lambda.clone(), out.clone());
        out
    }

    /// Reduces a formal combination of Schur symbols of `V`.
    pub fn reduce(&self, expr: &[(Partition, i64)]) -> KClass {
        let mut out = self.zero();
        for (p, c) in expr {
            out.add_scaled(&self.reduce_shape(p), *c);
        }
        out
    }

    /// `[S_alpha V]` for any integer weight of length at most `k`, straightened
    /// as a `GL_k` weight with negative tails absorbed by powers of `det V^-1`.
    pub fn schur_v(&self, alpha: &[i64]) -> Result<KClass> {
        if alpha.len() > self.k {
            if alpha[self.k..].iter().all(|&x| x == 0) {
                return self.schur_v(&alpha[..self.k]);
            }
            return Err(FlagkError::Domain(format!(
                "weight {alpha:?} longer than rank {}",
                self.k
            )));
        }
        let mut w = alpha.to_vec();
        w.resize(self.k, 0);
        let Some((sign, dom)) = straighten_weight(&w) else {
            return Ok(self.zero());
        };
        let shift = -dom.last().copied().unwrap_or(0).min(0);
        let shifted: Vec<i64> = dom.iter().map(|x| x + shift).collect();
        let mut out = self.reduce_shape(&Partition::from_weight(&shifted).expect("dominant, nonnegative"));
        for _ in 0..shift {
            out = self.mul(&out, self.det_v_inv());
        }
        Ok(out.scaled(sign as i64))
    }

    /// `[det V^-1] = [det Q] = [e_{N-k}(Q)]`.
    pub fn det_v_inv(&self) -> &KClass {
        self.det_v_inv.get_or_init(|| {
            let ones = Partition::new(vec![1; self.big_n - self.k]).expect("column shape");
            self.schur_q_partition(&ones)
        })
    }

    /// `[det V]`.
    pub fn det_v(&self) -> &KClass {
        self.det_v.get_or_init(|| {
            let ones = Partition::new(vec![1; self.k]).expect("column shape");
            self.reduce_shape(&ones)
        })
    }

    /// `[det V^p]` for any integer `p`.
    pub fn det_v_pow(&self, p: i64) -> KClass {
        let mut out = self.one();
        let step = if p >= 0 { self.det_v() } else { self.det_v_inv() };
        for _ in 0..p.abs() {
            out = self.mul(&out, step);
        }
        out
    }

    /// `[S_nu Q]` for a partition, from `Q = C^N - V` in the lambda-ring:
    /// `s_nu(C^N - V) = sum_{mu in nu} (-1)^{|mu|} s_{nu/mu}(1^N) s_{mu'}(V)`.
    pub fn schur_q_partition(&self, nu: &Partition) -> KClass {
        if let Some(hit) = self.q_cache.lock().expect("cache poisoned").get(nu) {
            return hit.clone();
        }
        let mut out = self.zero();
        for mu in box_partitions(nu.first(), nu.len()) {
            if !nu.contains(&mu) {
                continue;
            }
            let mu_t = transpose(&mu);
            if mu_t.len() > self.k {
                continue;
            }
            let dim = skew_ssyt_count(nu, &mu, self.big_n) as i64;
            let sign = if mu.size() % 2 == 0 { 1 } else { -1 };
            out.add_scaled(&self.reduce_shape(&mu_t), sign * dim);
        }
        self.q_cache
            .lock()
            .expect("cache poisoned")
            .insert(nu.clone(), out.clone());
        out
    }

    /// `[S_beta Q]` for any integer weight of length at most `N - k`.
    pub fn schur_q(&self, beta: &[i64]) -> Result<KClass> {
        let r = self.big_n - self.k;
        if beta.len() > r {
            if beta[r..].iter().all(|&x| x == 0) {
                return self.schur_q(&beta[..r]);
            }
            return Err(FlagkError::Domain(format!("weight {beta:?} longer than rank {r}")));
        }
        let mut w = beta.to_vec();
        w.resize(r, 0);
        let Some((sign, dom)) = straighten_weight(&w) else {
            return Ok(self.zero());
        };
        let shift = -dom.last().copied().unwrap_or(0).min(0);
        let shifted: Vec<i64> = dom.iter().map(|x| x + shift).collect();
        let base = self.schur_q_partition(&Partition::from_weight(&shifted).expect("dominant"));
        // det Q^-1 = det V.
        let out = self.mul(&base, &self.det_v_pow(shift));
        Ok(out.scaled(sign as i64))
    }

    /// `[S_mu Q^dual]` for `mu` in the `(N-k) x k` box.
    pub fn schur_q_dual(&self, mu: &Partition) -> Result<KClass> {
        let r = self.big_n - self.k;
        if !mu.fits_box(self.k, r) {
            return Err(FlagkError::Domain(format!("{mu} is outside P({}, {r})", self.k)));
        }
        let w: Vec<i64> = mu.padded(r).iter().rev().map(|x| -x).collect();
        self.schur_q(&w)
    }

    /// Product of basis classes, memoized.
    fn basis_product(&self, a: &Partition, b: &Partition) -> KClass {
        let key = if a <= b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        if let Some(hit) = self.product_cache.lock().expect("cache poisoned").get(&key) {
            return hit.clone();
        }
        let expr: Vec<(Partition, i64)> = lr_expand(a, b, self.k)
            .into_iter()
            .map(|(p, c)| (p, c as i64))
            .collect();
        let out = self.reduce(&expr);
        self.product_cache
            .lock()
            .expect("cache poisoned")
            .insert(key, out.clone());
        out
    }

    /// Ring product (tensor product of bundles).
    pub fn mul(&self, a: &KClass, b: &KClass) -> KClass {
        let mut out = self.zero();
        for (p, x) in &a.coeffs {
            for (q, y) in &b.coeffs {
                out.add_scaled(&self.basis_product(p, q), x * y);
            }
        }
        out
    }

    /// Euler characteristic of a class.
    pub fn chi(&self, a: &KClass) -> Result<i64> {
        let mut total = 0i64;
        for (p, c) in &a.coeffs {
            total += c * bwb_chi(&p.padded(self.k), self.k, self.big_n)?;
        }
        Ok(total)
    }

    /// `chi(A, B) = chi(A^dual (x) B)`, bilinear in basis coefficients.
    pub fn euler_form(&self, a: &KClass, b: &KClass) -> Result<i64> {
        let mut total = 0i64;
        for (p, x) in &a.coeffs {
            for (q, y) in &b.coeffs {
                total += x * y * euler_pairing(p, q, self.k, self.big_n)?;
            }
        }
        Ok(total)
    }
}

/// `chi(Gr(k, N), S_nu V)` for an integer weight `nu` of length at most `k`:
/// the `GL_N` weight `(0^{N-k}, nu)` is straightened and the dimension of the
/// resulting representation carries the sign.
pub fn bwb_chi(nu: &[i64], k: usize, big_n: usize) -> Result<i64> {
    if nu.len() > k && nu[k..].iter().any(|&x| x != 0) {
        return Err(FlagkError::Domain(format!("weight {nu:?} longer than rank {k}")));
    }
    let mut w = vec![0i64; big_n - k];
    w.extend((0..k).map(|i| nu.get(i).copied().unwrap_or(0)));
    match straighten_weight(&w) {
        None => Ok(0),
        Some((sign, dom)) => Ok(sign as i64 * gl_dim(&dom, big_n)? as i64),
    }
}

/// `chi(S_lambda V, S_mu V) = chi(S_lambda V^dual (x) S_mu V)` where
/// `S_lambda V^dual = S_{(l1 - lk, ..., l1 - l1)} V (x) det V^{-l1}`.
pub fn euler_pairing(lambda: &Partition, mu: &Partition, k: usize, big_n: usize) -> Result<i64> {
    if lambda.len() > k || mu.len() > k {
        return Err(FlagkError::Domain(format!("{lambda} or {mu} has more than {k} parts")));
    }
    let l1 = lambda.first();
    let comp: Vec<usize> = (0..k).rev().map(|i| l1 - lambda.part(i)).collect();
    let comp = Partition::new(comp).expect("complement is a partition");
    let mut total = 0i64;
    for (nu, c) in lr_expand(&comp, mu, k) {
        let w: Vec<i64> = nu.padded(k).iter().map(|x| x - l1 as i64).collect();
        total += c as i64 * bwb_chi(&w, k, big_n)?;
    }
    Ok(total)
}

/// `[S_lambda V]` for a weight, on `Gr(k, N)`.
pub fn schur_v_class(lambda: &[i64], k: usize, big_n: usize) -> Result<KClass> {
    kring(k, big_n).schur_v(lambda)
}

/// Reduces a formal combination of Schur symbols into the basis.
pub fn reduce_to_basis(expr: &[(Partition, i64)], k: usize, big_n: usize) -> Result<KClass> {
    if let Some((p, _)) = expr.iter().find(|(p, _)| p.len() > k) {
        return Err(FlagkError::Domain(format!("{p} has more than {k} parts")));
    }
    Ok(kring(k, big_n).reduce(expr))
}

/// `[S_mu Q^dual]` on `Gr(k, N)`.
pub fn schur_qdual_class(mu: &Partition, k: usize, big_n: usize) -> Result<KClass> {
    kring(k, big_n).schur_q_dual(mu)
}

/// A Laurent polynomial in `N` variables symmetric within each block of a
/// composition; a class in the polynomial model of `K(Fl_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymClass {
    poly: LaurentPoly,
    comp: Composition,
}

impl SymClass {
    pub fn new(poly: LaurentPoly, comp: Composition) -> Result<Self> {
        if poly.num_vars() != comp.total() {
            return Err(FlagkError::Dimension(poly.num_vars(), comp.total()));
        }
        let sums = comp.partial_sums();
        for b in 0..comp.n() {
            for i in (sums[b] + 1)..sums[b + 1] {
                if !poly.is_invariant(i) {
                    return Err(FlagkError::Symmetry(format!(
                        "{poly} is not invariant under s_{i} for blocks {comp}"
                    )));
                }
            }
        }
        Ok(SymClass { poly, comp })
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn comp(&self) -> &Composition {
        &self.comp
    }
}

/// Schur polynomial `s_alpha(x_{start+1}, ..., x_{start+m})` inside an
/// `N`-variable ring, for a dominant integer weight `alpha` of length `m`,
/// as the bialternant `a_{alpha + rho} / a_rho`.
pub fn schur_poly(alpha: &[i64], start: usize, big_n: usize) -> Result<LaurentPoly> {
    type Key = (Vec<i64>, usize, usize);
    static CACHE: OnceLock<Mutex<HashMap<Key, LaurentPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (alpha.to_vec(), start, big_n);
    if let Some(hit) = cache.lock().expect("cache poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let m = alpha.len();
    if start + m > big_n {
        return Err(FlagkError::Domain(format!(
            "block {start}+{m} exceeds {big_n} variables"
        )));
    }
    if alpha.windows(2).any(|w| w[0] < w[1]) {
        return Err(FlagkError::Domain(format!("weight {alpha:?} is not dominant")));
    }
    let alternant = |w: &[i64]| -> LaurentPoly {
        let mut out = LaurentPoly::zero(big_n);
        for (perm, sign) in permutations(m) {
            let mut e = vec![0i32; big_n];
            for (slot, &src) in perm.iter().enumerate() {
                e[start + slot] = w[src] as i32;
            }
            out.add_term(Monomial(e), BigRational::from_integer(sign.into()));
        }
        out
    };
    let rho: Vec<i64> = (0..m).map(|i| (m - 1 - i) as i64).collect();
    let shifted: Vec<i64> = alpha.iter().zip(&rho).map(|(a, r)| a + r).collect();
    let out = exact_div(&alternant(&shifted), &alternant(&rho))?;
    cache.lock().expect("cache poisoned").insert(key, out.clone());
    Ok(out)
}

/// All permutations of `0..m` with their signs.
fn permutations(m: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    fn rec(i: usize, cur: &mut Vec<usize>, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        if i + 1 >= cur.len() {
            out.push((cur.clone(), sign));
            return;
        }
        for j in i..cur.len() {
            cur.swap(i, j);
            rec(i + 1, cur, if i == j { sign } else { -sign }, out);
            cur.swap(i, j);
        }
    }
    rec(0, &mut cur, 1, &mut out);
    out
}

/// Polynomial-model image of a Grassmannian class: `S_lambda V` becomes the
/// Schur polynomial of the first `k` of `N` variables.
pub fn sym_of_kclass(c: &KClass) -> Result<SymClass> {
    let mut poly = LaurentPoly::zero(c.big_n);
    for (p, v) in &c.coeffs {
        let s = schur_poly(&p.padded(c.k), 0, c.big_n)?;
        poly = &poly + &s.scale_int(*v);
    }
    SymClass::new(poly, Composition::new(vec![c.k, c.big_n - c.k])?)
}

/// Grassmannian class of a two-block symmetric Laurent polynomial: peel off
/// products `s_alpha(first block) s_beta(second block)` from the
/// lexicographically largest monomial, then map each to
/// `[S_alpha V] [S_beta Q]`.
pub fn kclass_of_sym(s: &SymClass) -> Result<KClass> {
    if s.comp.n() != 2 {
        return Err(FlagkError::Domain(format!("{} does not have two blocks", s.comp)));
    }
    let k = s.comp.block(1);
    let big_n = s.comp.total();
    let ring = kring(k, big_n);
    let mut rest = s.poly.clone();
    let mut out = ring.zero();
    while let Some((m, c)) = rest.terms().max_by(|a, b| a.0 .0.cmp(&b.0 .0)) {
        let e = &m.0;
        let alpha: Vec<i64> = e[..k].iter().map(|&x| x as i64).collect();
        let beta: Vec<i64> = e[k..].iter().map(|&x| x as i64).collect();
        if alpha.windows(2).any(|w| w[0] < w[1]) || beta.windows(2).any(|w| w[0] < w[1]) {
            return Err(FlagkError::Symmetry(format!("leading monomial {e:?} is not dominant")));
        }
        if !c.is_integer() {
            return Err(FlagkError::Domain(format!("non-integral coefficient {c}")));
        }
        let ci = c
            .to_integer()
            .to_i64()
            .ok_or_else(|| FlagkError::Capability("coefficient exceeds i64".into()))?;
        let prod = &schur_poly(&alpha, 0, big_n)? * &schur_poly(&beta, k, big_n)?;
        rest = &rest - &prod.scale_int(ci);
        let cls = ring.mul(&ring.schur_v(&alpha)?, &ring.schur_q(&beta)?);
        out.add_scaled(&cls, ci);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn cls(k: usize, n: usize, terms: &[(&[usize], i64)]) -> KClass {
        KClass::from_coeffs(k, n, terms.iter().map(|(p, c)| (part(p), *c))).unwrap()
    }

    #[test]
    fn schur_v_examples() {
        assert_eq!(schur_v_class(&[1], 1, 2).unwrap(), cls(1, 2, &[(&[1], 1)]));
        assert!(schur_v_class(&[0, 1], 2, 4).unwrap().is_zero());
        assert_eq!(schur_v_class(&[2], 1, 2).unwrap(), cls(1, 2, &[(&[1], 2), (&[], -1)]));
        assert_eq!(schur_v_class(&[3], 1, 2).unwrap(), cls(1, 2, &[(&[1], 3), (&[], -2)]));
        assert_eq!(schur_v_class(&[-1], 1, 2).unwrap(), cls(1, 2, &[(&[1], -1), (&[], 2)]));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(
            reduce_to_basis(&[(part(&[1]), 1)], 1, 2).unwrap(),
            cls(1, 2, &[(&[1], 1)])
        );
        assert_eq!(
            reduce_to_basis(&[(part(&[2]), 1)], 1, 2).unwrap(),
            cls(1, 2, &[(&[1], 2), (&[], -1)])
        );
        assert!(reduce_to_basis(&[(part(&[1, 1]), 1)], 1, 2).is_err());
        // On a point, S_lambda of C^N has its dimension.
        assert_eq!(
            reduce_to_basis(&[(part(&[1]), 1)], 3, 3).unwrap(),
            cls(3, 3, &[(&[], 3)])
        );
        assert_eq!(
            reduce_to_basis(&[(part(&[2, 1]), 1)], 3, 3).unwrap(),
            cls(3, 3, &[(&[], 8)])
        );
    }

    #[test]
    fn dual_quotient_examples() {
        assert_eq!(schur_qdual_class(&part(&[]), 1, 2).unwrap(), cls(1, 2, &[(&[], 1)]));
        assert_eq!(schur_qdual_class(&part(&[1]), 1, 2).unwrap(), cls(1, 2, &[(&[1], 1)]));
        assert!(schur_qdual_class(&part(&[2]), 1, 2).is_err());
    }

    #[test]
    fn chi_examples() {
        assert_eq!(bwb_chi(&[], 2, 4).unwrap(), 1);
        assert_eq!(bwb_chi(&[-1], 1, 2).unwrap(), 2);
        assert_eq!(bwb_chi(&[1], 1, 2).unwrap(), 0);
        assert_eq!(euler_pairing(&part(&[]), &part(&[1]), 1, 2).unwrap(), 0);
        assert_eq!(euler_pairing(&part(&[1]), &part(&[]), 1, 2).unwrap(), 2);
    }

    #[test]
    fn model_bridge() {
        let one = KClass::one(1, 2);
        let s = sym_of_kclass(&one).unwrap();
        assert_eq!(s.poly(), &LaurentPoly::one(2));
        assert_eq!(kclass_of_sym(&s).unwrap(), one);
        let v = cls(1, 2, &[(&[1], 1)]);
        let s = sym_of_kclass(&v).unwrap();
        assert_eq!(s.poly(), &LaurentPoly::parse("x1", 2).unwrap());
        assert_eq!(kclass_of_sym(&s).unwrap(), v);
        let sq = SymClass::new(
            LaurentPoly::parse("x1^2", 2).unwrap(),
            Composition::new(vec![1, 1]).unwrap(),
        )
        .unwrap();
        assert_eq!(kclass_of_sym(&sq).unwrap(), cls(1, 2, &[(&[1], 2), (&[], -1)]));
        let bad = SymClass::new(
            LaurentPoly::parse("x1", 2).unwrap(),
            Composition::new(vec![2, 0]).unwrap(),
        );
        assert!(matches!(bad, Err(FlagkError::Symmetry(_))));
    }

    #[test]
    fn schur_polys() {
        let s = schur_poly(&[1, 0], 0, 3).unwrap();
        assert_eq!(s, LaurentPoly::parse("x1 + x2", 3).unwrap());
        let s = schur_poly(&[0, -1], 1, 3).unwrap();
        assert_eq!(s, LaurentPoly::parse("x2^-1 + x3^-1", 3).unwrap());
    }
}
