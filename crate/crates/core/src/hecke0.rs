//! The affine 0-Hecke algebra acting on Laurent polynomials by Demazure
//! operators and multiplications, its relation suite, and normal forms modulo
//! the ideal `<e_i - C(N, i)>` presenting `K(G/B)`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{check_index, FlagkError, Result};
use crate::matrix::IntMatrix;
use crate::polycore::{demazure, mul, rat, LaurentPoly};
use crate::report::{Check, Level, VerificationReport};

/// Largest `N` for which Borel normal forms are computed.
pub const BOREL_MAX_N: usize = 4;

#[derive(Debug)]
enum Node {
    Zero,
    Identity,
    Delta(usize),
    Monomial {
        exps: Vec<i32>,
        coeff: i64,
    },
    Sum(Vec<(i64, PolyOperator)>),
    /// Functional order: the last operator acts first.
    Compose(Vec<PolyOperator>),
}

/// Linear endomorphism of the Laurent ring, as a tree over Demazure
/// operators, signed monomial multiplications, sums and composites.
#[derive(Clone, Debug)]
pub struct PolyOperator {
    num_vars: usize,
    node: Arc<Node>,
}

impl PolyOperator {
    fn wrap(num_vars: usize, node: Node) -> Self {
        PolyOperator {
            num_vars,
            node: Arc::new(node),
        }
    }

    pub fn zero(num_vars: usize) -> Self {
        Self::wrap(num_vars, Node::Zero)
    }

    pub fn identity(num_vars: usize) -> Self {
        Self::wrap(num_vars, Node::Identity)
    }

    pub fn delta(i: usize, num_vars: usize) -> Result<Self> {
        check_index(i as i64, num_vars as i64 - 1)?;
        Ok(Self::wrap(num_vars, Node::Delta(i)))
    }

    /// Multiplication by `coeff * x^exps`.
    pub fn monomial(exps: Vec<i32>, coeff: i64) -> Self {
        let n = exps.len();
        if coeff == 0 {
            return Self::zero(n);
        }
        Self::wrap(n, Node::Monomial { exps, coeff })
    }

    /// Multiplication by `x_j^power`.
    pub fn x_pow(j: usize, power: i32, num_vars: usize) -> Result<Self> {
        check_index(j as i64, num_vars as i64)?;
        let mut e = vec![0; num_vars];
        e[j - 1] = power;
        Ok(Self::monomial(e, 1))
    }

    /// Signed linear combination.
    pub fn sum(num_vars: usize, terms: Vec<(i64, PolyOperator)>) -> Self {
        let terms: Vec<_> = terms.into_iter().filter(|(c, op)| *c != 0 && !op.is_zero()).collect();
        if terms.is_empty() {
            return Self::zero(num_vars);
        }
        Self::wrap(num_vars, Node::Sum(terms))
    }

    /// `ops[0] o ops[1] o ...`; the last operator acts first.
    pub fn compose(num_vars: usize, ops: Vec<PolyOperator>) -> Self {
        if ops.iter().any(PolyOperator::is_zero) {
            return Self::zero(num_vars);
        }
        let ops: Vec<_> = ops.into_iter().filter(|o| !matches!(*o.node, Node::Identity)).collect();
        match ops.len() {
            0 => Self::identity(num_vars),
            1 => ops.into_iter().next().expect("one operator"),
            _ => Self::wrap(num_vars, Node::Compose(ops)),
        }
    }

    pub fn scaled(&self, c: i64) -> Self {
        Self::sum(self.num_vars, vec![(c, self.clone())])
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        matches!(*self.node, Node::Zero)
    }

    pub fn apply(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        if p.num_vars() != self.num_vars {
            return Err(FlagkError::Dimension(self.num_vars, p.num_vars()));
        }
        match &*self.node {
            Node::Zero => Ok(LaurentPoly::zero(self.num_vars)),
            Node::Identity => Ok(p.clone()),
            Node::Delta(i) => demazure(*i, p),
            Node::Monomial { exps, coeff } => {
                let q = p.mul_monomial(exps);
                Ok(if *coeff == 1 { q } else { q.scale_int(*coeff) })
            }
            Node::Sum(terms) => {
                let mut out = LaurentPoly::zero(self.num_vars);
                for (c, op) in terms {
                    out = &out + &op.apply(p)?.scale_int(*c);
                }
                Ok(out)
            }
            Node::Compose(ops) => {
                let mut cur = p.clone();
                for op in ops.iter().rev() {
                    cur = op.apply(&cur)?;
                    if cur.is_zero() {
                        break;
                    }
                }
                Ok(cur)
            }
        }
    }
}

impl fmt::Display for PolyOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.node {
            Node::Zero => write!(f, "0"),
            Node::Identity => write!(f, "1"),
            Node::Delta(i) => write!(f, "d{i}"),
            Node::Monomial { exps, coeff } => write!(f, "{coeff}x{exps:?}"),
            Node::Sum(t) => {
                let parts: Vec<String> = t.iter().map(|(c, o)| format!("{c}*({o})")).collect();
                write!(f, "{}", parts.join(" + "))
            }
            Node::Compose(ops) => {
                let parts: Vec<String> = ops.iter().map(|o| format!("({o})")).collect();
                write!(f, "{}", parts.join(""))
            }
        }
    }
}

/// `delta_i` on `N` variables.
pub fn delta_op(i: usize, num_vars: usize) -> Result<PolyOperator> {
    PolyOperator::delta(i, num_vars)
}

/// Multiplication by `x_j` on `N` variables.
pub fn x_op(j: usize, num_vars: usize) -> Result<PolyOperator> {
    PolyOperator::x_pow(j, 1, num_vars)
}

/// Source of the generators `T_i` and `X_j^p`; swapping the implementation
/// lets tests confirm the harness catches defects.
pub trait HeckeAction: Sync {
    fn num_vars(&self) -> usize;
    fn t(&self, i: usize) -> Result<PolyOperator>;
    fn x(&self, j: usize, power: i32) -> Result<PolyOperator>;
}

/// `T_i` acts by `delta_i`, `X_j` by multiplication with `x_j`.
pub struct DemazureAction {
    num_vars: usize,
}

impl DemazureAction {
    pub fn new(num_vars: usize) -> Self {
        DemazureAction { num_vars }
    }
}

impl HeckeAction for DemazureAction {
    fn num_vars(&self) -> usize {
        self.num_vars
    }

    fn t(&self, i: usize) -> Result<PolyOperator> {
        delta_op(i, self.num_vars)
    }

    fn x(&self, j: usize, power: i32) -> Result<PolyOperator> {
        PolyOperator::x_pow(j, power, self.num_vars)
    }
}

/// Two sides of an operator identity.
pub struct Relation {
    pub name: String,
    pub lhs: PolyOperator,
    pub rhs: PolyOperator,
}

/// Compares two operators on every input: exact equality in the Laurent ring
/// first, and, failing that and when `N <= 4`, equality modulo the Borel ideal.
pub fn compare_on_inputs(name: &str, lhs: &PolyOperator, rhs: &PolyOperator, inputs: &[LaurentPoly]) -> Check {
    let mut diffs = Vec::new();
    for p in inputs {
        let d = match (lhs.apply(p), rhs.apply(p)) {
            (Ok(a), Ok(b)) => &a - &b,
            (Err(e), _) | (_, Err(e)) => {
                return Check::fail(name, Level::FreeRing, format!("input {p}: {e}"));
            }
        };
        if !d.is_zero() {
            diffs.push((p, d));
        }
    }
    let Some((first_input, first_diff)) = diffs.first() else {
        return Check::pass(name, Level::FreeRing);
    };
    let n = first_diff.num_vars();
    if n > BOREL_MAX_N {
        return Check::fail(
            name,
            Level::FreeRing,
            format!("input {first_input}; lhs-rhs = {first_diff}"),
        );
    }
    for (p, d) in &diffs {
        match borel_reduce(d, n) {
            Ok(r) if r.is_zero() => {}
            Ok(r) => {
                return Check::fail(name, Level::ModBorel, format!("input {p}; lhs-rhs reduces to {r}"));
            }
            Err(e) => return Check::fail(name, Level::ModBorel, format!("input {p}: {e}")),
        }
    }
    Check::pass(name, Level::ModBorel)
}

/// Every monomial with exponents in `[-window, window]^N`.
pub fn monomial_window(num_vars: usize, window: i32) -> Vec<LaurentPoly> {
    let mut out = Vec::new();
    let mut e = vec![-window; num_vars];
    loop {
        out.push(LaurentPoly::monomial_int(e.clone(), 1));
        let mut j = 0;
        loop {
            if j == num_vars {
                return out;
            }
            e[j] += 1;
            if e[j] <= window {
                break;
            }
            e[j] = -window;
            j += 1;
        }
    }
}

/// Test inputs: the constant 1, the monomial window, then seeded random sparse
/// Laurent polynomials.
pub fn hecke_inputs(num_vars: usize, window: i32, samples: usize, seed: u64) -> Vec<LaurentPoly> {
    let one = LaurentPoly::one(num_vars);
    let mut out = vec![one.clone()];
    out.extend(monomial_window(num_vars, window).into_iter().filter(|m| *m != one));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        out.push(LaurentPoly::random_sparse(&mut rng, num_vars, 5, window + 1));
    }
    out
}

/// The defining relations of the affine 0-Hecke algebra together with the
/// alternating-sum forms of the two exact triangles relating `T_i`, `X_i`,
/// `X_{i+1}`.
pub fn hecke_relations<H: HeckeAction + ?Sized>(h: &H) -> Result<Vec<Relation>> {
    let n = h.num_vars();
    let comp = |ops: Vec<PolyOperator>| PolyOperator::compose(n, ops);
    let sum = |t: Vec<(i64, PolyOperator)>| PolyOperator::sum(n, t);
    let id = PolyOperator::identity(n);
    let zero = PolyOperator::zero(n);
    let mut rels = Vec::new();
    let mut push = |name: String, lhs: PolyOperator, rhs: PolyOperator| rels.push(Relation { name, lhs, rhs });
    for i in 1..n {
        let t = h.t(i)?;
        let (xi, xj) = (h.x(i, 1)?, h.x(i + 1, 1)?);
        push(
            format!("t_idempotent i={i}"),
            comp(vec![t.clone(), t.clone()]),
            t.clone(),
        );
        push(
            format!("bl_up i={i}"),
            comp(vec![xj.clone(), t.clone()]),
            sum(vec![(1, comp(vec![t.clone(), xi.clone()])), (1, xj.clone())]),
        );
        push(
            format!("bl_down i={i}"),
            comp(vec![xi.clone(), t.clone()]),
            sum(vec![(1, comp(vec![t.clone(), xj.clone()])), (-1, xj.clone())]),
        );
        // Triangles T X_i -> X_{i+1} T -> X_{i+1} and X_i T -> T X_{i+1} -> X_{i+1}.
        push(
            format!("triangle_tx i={i}"),
            sum(vec![
                (1, comp(vec![xj.clone(), t.clone()])),
                (-1, comp(vec![t.clone(), xi.clone()])),
                (-1, xj.clone()),
            ]),
            zero.clone(),
        );
        push(
            format!("triangle_xt i={i}"),
            sum(vec![
                (1, comp(vec![t.clone(), xj.clone()])),
                (-1, comp(vec![xi.clone(), t.clone()])),
                (-1, xj.clone()),
            ]),
            zero.clone(),
        );
        if i + 1 < n {
            let u = h.t(i + 1)?;
            push(
                format!("braid i={i}"),
                comp(vec![t.clone(), u.clone(), t.clone()]),
                comp(vec![u.clone(), t.clone(), u]),
            );
        }
        for j in (i + 2)..n {
            let u = h.t(j)?;
            push(
                format!("t_far_commute i={i} j={j}"),
                comp(vec![t.clone(), u.clone()]),
                comp(vec![u, t.clone()]),
            );
        }
        for j in 1..=n {
            if j != i && j != i + 1 {
                let x = h.x(j, 1)?;
                push(
                    format!("t_x_commute i={i} j={j}"),
                    comp(vec![t.clone(), x.clone()]),
                    comp(vec![x, t.clone()]),
                );
            }
        }
    }
    for j in 1..=n {
        let (x, xinv) = (h.x(j, 1)?, h.x(j, -1)?);
        push(
            format!("x_invertible j={j}"),
            comp(vec![x.clone(), xinv.clone()]),
            id.clone(),
        );
        push(
            format!("x_invertible_left j={j}"),
            comp(vec![xinv, x.clone()]),
            id.clone(),
        );
        for l in (j + 1)..=n {
            let y = h.x(l, 1)?;
            push(
                format!("x_commute j={j} l={l}"),
                comp(vec![x.clone(), y.clone()]),
                comp(vec![y, x.clone()]),
            );
        }
    }
    Ok(rels)
}

/// Checks every relation on the monomial window plus seeded random inputs.
pub fn verify_hecke(num_vars: usize, deg_window: i32, sample_count: usize, seed: u64) -> VerificationReport {
    verify_hecke_with(&DemazureAction::new(num_vars), deg_window, sample_count, seed)
}

pub fn verify_hecke_with<H: HeckeAction + ?Sized>(
    h: &H,
    deg_window: i32,
    sample_count: usize,
    seed: u64,
) -> VerificationReport {
    let n = h.num_vars();
    let mut report = VerificationReport::new("hecke")
        .with_param("N", n)
        .with_param("deg", deg_window)
        .with_param("samples", sample_count)
        .with_param("seed", seed);
    if n < 2 {
        report.push(Check::fail("setup", Level::FreeRing, format!("N = {n} < 2")));
        return report;
    }
    let rels = match hecke_relations(h) {
        Ok(r) => r,
        Err(e) => {
            report.push(Check::fail("setup", Level::FreeRing, e.to_string()));
            return report;
        }
    };
    let inputs = hecke_inputs(n, deg_window, sample_count, seed);
    let checks: Vec<Check> = rels
        .par_iter()
        .map(|r| compare_on_inputs(&r.name, &r.lhs, &r.rhs, &inputs))
        .collect();
    for c in checks {
        report.push(c);
    }
    report
}

/// Lexicographic order with `a_N > a_{N-1} > ... > a_1`.
fn lex_cmp(a: &[i32], b: &[i32]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

fn lex_lead(p: &LaurentPoly) -> Option<(Vec<i32>, BigRational)> {
    p.terms()
        .max_by(|x, y| lex_cmp(&x.0 .0, &y.0 .0))
        .map(|(m, c)| (m.0.clone(), c.clone()))
}

fn divides(a: &[i32], b: &[i32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Full reduction of a polynomial by a list of polynomials under the lex order.
fn reduce_by(p: &LaurentPoly, basis: &[(LaurentPoly, Vec<i32>, BigRational)]) -> LaurentPoly {
    let n = p.num_vars();
    let mut rest = p.clone();
    let mut out = LaurentPoly::zero(n);
    while let Some((m, c)) = lex_lead(&rest) {
        match basis.iter().find(|(_, lm, _)| divides(lm, &m)) {
            Some((g, lm, lc)) => {
                let shift: Vec<i32> = m.iter().zip(lm).map(|(a, b)| a - b).collect();
                let factor = &c / lc;
                rest = &rest - &g.mul_monomial(&shift).scale(&factor);
            }
            None => {
                let t = LaurentPoly::monomial(m, c);
                rest = &rest - &t;
                out = &out + &t;
            }
        }
    }
    out
}

fn with_lead(g: LaurentPoly) -> (LaurentPoly, Vec<i32>, BigRational) {
    let (m, c) = lex_lead(&g).expect("nonzero basis element");
    let g = g.scale(&(rat(1) / &c));
    (g, m, rat(1))
}

/// Basis polynomials with their leading exponents and leading coefficients.
type BorelBasis = Arc<Vec<(LaurentPoly, Vec<i32>, BigRational)>>;

/// Lex Groebner basis of `<e_i - C(N, i) : 1 <= i <= N>`. With `y = a - 1`
/// the ideal is `<e_i(y)>`, whose lex basis is `h_k(y_1, ..., y_{N-k+1})`
/// for `k = 1..N`; translation keeps leading monomials, so these polynomials
/// rewritten in `a` form a basis with leading terms `a_{N-k+1}^k`.
fn borel_basis(n: usize) -> BorelBasis {
    static CACHE: OnceLock<Mutex<HashMap<usize, BorelBasis>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("cache poisoned").get(&n) {
        return hit.clone();
    }
    let y: Vec<LaurentPoly> = (0..n)
        .map(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            &LaurentPoly::monomial_int(e, 1) - &LaurentPoly::one(n)
        })
        .collect();
    let basis: Vec<_> = (1..=n)
        .map(|k| with_lead(complete_homogeneous(&y[..n - k + 1], k, n)))
        .collect();
    let out = Arc::new(basis);
    cache.lock().expect("cache poisoned").insert(n, out.clone());
    out
}

/// `h_k(vars)` for polynomials `vars` in an `n`-variable ring.
fn complete_homogeneous(vars: &[LaurentPoly], k: usize, n: usize) -> LaurentPoly {
    // h_k(v_1..v_m) = h_k(v_1..v_{m-1}) + v_m h_{k-1}(v_1..v_m).
    let mut table = vec![LaurentPoly::zero(n); k + 1];
    table[0] = LaurentPoly::one(n);
    for v in vars {
        for d in 1..=k {
            let add = mul(v, &table[d - 1]).expect("same ring");
            table[d] = &table[d] + &add;
        }
    }
    table[k].clone()
}

/// Normal form modulo `<e_i - C(N, i)>`. Negative exponents are cleared with
/// `e_N = 1` (multiplying by a power of `a_1 ... a_N`), then the polynomial is
/// fully reduced by the lex Groebner basis.
pub fn borel_reduce(p: &LaurentPoly, num_vars: usize) -> Result<LaurentPoly> {
    if num_vars > BOREL_MAX_N {
        return Err(FlagkError::Capability(format!(
            "Borel normal forms are limited to N <= {BOREL_MAX_N}, got {num_vars}"
        )));
    }
    if p.num_vars() != num_vars {
        return Err(FlagkError::Dimension(num_vars, p.num_vars()));
    }
    let lift = -p.min_exponents().into_iter().min().unwrap_or(0).min(0);
    let q = p.mul_monomial(&vec![lift; num_vars]);
    Ok(reduce_by(&q, &borel_basis(num_vars)))
}

/// Standard monomials `a^lambda` with `lambda_i <= N - i`, in a fixed order.
pub fn borel_standard_monomials(num_vars: usize) -> Vec<Vec<i32>> {
    let mut out = vec![Vec::new()];
    for i in 0..num_vars {
        let cap = (num_vars - 1 - i) as i32;
        out = out
            .into_iter()
            .flat_map(|e: Vec<i32>| {
                (0..=cap).map(move |x| {
                    let mut e2 = e.clone();
                    e2.push(x);
                    e2
                })
            })
            .collect();
    }
    out.sort_by(|a, b| {
        let da: i32 = a.iter().sum();
        let db: i32 = b.iter().sum();
        da.cmp(&db).then_with(|| lex_cmp(a, b))
    });
    out
}

/// Matrix of an operator on `K(G/B)` in the standard-monomial basis.
pub fn borel_matrix(op: &PolyOperator) -> Result<IntMatrix> {
    let n = op.num_vars();
    let basis = borel_standard_monomials(n);
    let index: HashMap<&Vec<i32>, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut cols = Vec::with_capacity(basis.len());
    for e in &basis {
        let img = borel_reduce(&op.apply(&LaurentPoly::monomial_int(e.clone(), 1))?, n)?;
        let mut col = vec![0i64; basis.len()];
        for (m, c) in img.terms() {
            let row = index
                .get(&m.0)
                .ok_or_else(|| FlagkError::Domain(format!("{m:?} is not a standard monomial")))?;
            if !c.is_integer() {
                return Err(FlagkError::Domain(format!("non-integral coefficient {c}")));
            }
            col[*row] = num::ToPrimitive::to_i64(&c.to_integer())
                .ok_or_else(|| FlagkError::Capability("entry exceeds i64".into()))?;
        }
        cols.push(col);
    }
    Ok(IntMatrix::from_columns(basis.len(), &cols))
}

/// True when `p` lies in the Borel ideal.
pub fn is_zero_mod_borel(p: &LaurentPoly) -> Result<bool> {
    Ok(borel_reduce(p, p.num_vars())?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::binomial;

    fn p(s: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(s, n).unwrap()
    }

    #[test]
    fn operator_examples() {
        let d = delta_op(1, 2).unwrap();
        assert_eq!(d.apply(&p("x2", 2)).unwrap(), p("x1 + x2", 2));
        assert_eq!(x_op(1, 2).unwrap().apply(&LaurentPoly::one(2)).unwrap(), p("x1", 2));
        // X_1 T_1 = T_1 X_2 - X_2 on the input 1.
        let lhs = PolyOperator::compose(2, vec![x_op(1, 2).unwrap(), d.clone()]);
        let rhs = PolyOperator::sum(
            2,
            vec![
                (1, PolyOperator::compose(2, vec![d.clone(), x_op(2, 2).unwrap()])),
                (-1, x_op(2, 2).unwrap()),
            ],
        );
        let one = LaurentPoly::one(2);
        assert_eq!(lhs.apply(&one).unwrap(), p("x1", 2));
        assert_eq!(rhs.apply(&one).unwrap(), p("x1", 2));
        assert!(delta_op(2, 2).is_err());
        assert!(x_op(3, 2).is_err());
    }

    #[test]
    fn borel_examples() {
        assert_eq!(borel_reduce(&p("x2", 2), 2).unwrap(), p("2 + -1 * x1", 2));
        assert_eq!(borel_reduce(&p("x1^2", 2), 2).unwrap(), p("2 * x1 + -1", 2));
        assert_eq!(borel_reduce(&p("x1 x2", 2), 2).unwrap(), LaurentPoly::one(2));
        assert_eq!(borel_reduce(&p("x1^-1", 2), 2).unwrap(), p("2 + -1 * x1", 2));
        assert!(matches!(borel_reduce(&p("x1", 5), 5), Err(FlagkError::Capability(_))));
    }

    #[test]
    fn standard_monomials_count() {
        for n in 1..=4 {
            let count: usize = (1..=n).product();
            assert_eq!(borel_standard_monomials(n).len(), count);
        }
    }

    #[test]
    fn demazure_matrix_rank_two() {
        // Basis (1, a1): delta_1(1) = 1 and delta_1(a1) = 0.
        let m = borel_matrix(&delta_op(1, 2).unwrap()).unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[vec![1, 0], vec![0, 0]]).unwrap());
    }

    #[test]
    fn elementary_relations_reduce_to_zero() {
        for n in 1..=4usize {
            for i in 1..=n {
                let mut e = LaurentPoly::from_int(n, -binomial(n as i64, i as i64));
                for mask in 0u32..(1 << n) {
                    if mask.count_ones() as usize == i {
                        let exps = (0..n).map(|j| ((mask >> j) & 1) as i32).collect();
                        e = &e + &LaurentPoly::monomial_int(exps, 1);
                    }
                }
                assert!(borel_reduce(&e, n).unwrap().is_zero(), "e_{i} in {n} variables");
            }
        }
    }

    #[test]
    fn demazure_on_second_root() {
        // In the basis (1, a2) the same operator has matrix [[1, 2], [0, 0]].
        let d = delta_op(1, 2).unwrap();
        let image = d.apply(&p("x2", 2)).unwrap();
        assert_eq!(borel_reduce(&image, 2).unwrap(), LaurentPoly::from_int(2, 2));
    }
}
