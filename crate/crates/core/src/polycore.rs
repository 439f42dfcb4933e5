//! Exact sparse Laurent polynomials over the rationals, the symmetric-group
//! action on variables, and isobaric divided differences.
//!
//! Variables are indexed from 1 in the public API (`x1 .. xN`), matching the
//! text format; exponent vectors are stored 0-indexed.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, Zero};
use rand::Rng;

use crate::error::{check_index, FlagkError, Result};

/// Exponent vector of a Laurent monomial, ordered graded-lex: total degree
/// first, then lexicographically with a larger `x1` exponent being larger.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    /// True when every exponent of `self` is at least the matching one of `other`.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse Laurent polynomial in `num_vars` variables with rational
/// coefficients. The term map never stores a zero coefficient, so structural
/// equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

fn int(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

impl LaurentPoly {
    pub fn zero(num_vars: usize) -> Self {
        LaurentPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, int(1))
    }

    pub fn constant(num_vars: usize, c: BigRational) -> Self {
        Self::monomial(vec![0; num_vars], c)
    }

    pub fn from_int(num_vars: usize, c: i64) -> Self {
        Self::constant(num_vars, int(c))
    }

    /// `c * x^exps`.
    pub fn monomial(exps: Vec<i32>, c: BigRational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(Monomial(exps), c);
        p
    }

    /// `c * x^exps` with an integer coefficient.
    pub fn monomial_int(exps: Vec<i32>, c: i64) -> Self {
        Self::monomial(exps, int(c))
    }

    /// The variable `x_j`, 1-indexed.
    pub fn var(num_vars: usize, j: usize) -> Result<Self> {
        check_index(j as i64, num_vars as i64)?;
        let mut e = vec![0; num_vars];
        e[j - 1] = 1;
        Ok(Self::monomial_int(e, 1))
    }

    /// Builds a polynomial from terms, merging repeated monomials.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i32>, BigRational)>,
    {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(FlagkError::Dimension(num_vars, e.len()));
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> BigRational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Largest term in the canonical order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        debug_assert_eq!(m.0.len(), self.num_vars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn add_assign_scaled(&mut self, other: &LaurentPoly, scale: &BigRational) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * scale);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&int(c))
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn mul_monomial(&self, shift: &[i32]) -> Self {
        debug_assert_eq!(shift.len(), self.num_vars);
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    let e = m.0.iter().zip(shift).map(|(a, b)| a + b).collect();
                    (Monomial(e), v.clone())
                })
                .collect(),
        }
    }

    /// Componentwise minimum of the exponents; zeros for the zero polynomial.
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut out: Option<Vec<i32>> = None;
        for m in self.terms.keys() {
            out = Some(match out {
                None => m.0.clone(),
                Some(v) => v.iter().zip(&m.0).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        out.unwrap_or_else(|| vec![0; self.num_vars])
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e >= 0))
    }

    /// True when all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// True when the polynomial is fixed by swapping variables `i` and `i+1`.
    pub fn is_invariant(&self, i: usize) -> bool {
        match act_transposition(i, self) {
            Ok(q) => &q == self,
            Err(_) => false,
        }
    }

    /// Applies `f` to every exponent vector; the map must be injective.
    pub fn map_exponents<F: Fn(&[i32]) -> Vec<i32>>(&self, num_vars: usize, f: F) -> Self {
        let mut out = Self::zero(num_vars);
        for (m, c) in &self.terms {
            out.add_term(Monomial(f(&m.0)), c.clone());
        }
        out
    }

    /// Seeded random sparse Laurent polynomial with exponents in
    /// `[-window, window]` and nonzero integer coefficients in `[-3, 3]`.
    pub fn random_sparse<R: Rng>(rng: &mut R, num_vars: usize, max_terms: usize, window: i32) -> Self {
        let mut p = Self::zero(num_vars);
        let n_terms = rng.gen_range(1..=max_terms.max(1));
        for _ in 0..n_terms {
            let e: Vec<i32> = (0..num_vars).map(|_| rng.gen_range(-window..=window)).collect();
            let mut c: i64 = rng.gen_range(-3..=3);
            if c == 0 {
                c = 1;
            }
            p.add_term(Monomial(e), int(c));
        }
        p
    }

    fn same_dims(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            Err(FlagkError::Dimension(self.num_vars, other.num_vars))
        } else {
            Ok(())
        }
    }
}

/// Product of two polynomials in the same ring.
pub fn mul(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly> {
    p.same_dims(q)?;
    let mut out = LaurentPoly::zero(p.num_vars);
    for (m1, c1) in &p.terms {
        for (m2, c2) in &q.terms {
            let e = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
            out.add_term(Monomial(e), c1 * c2);
        }
    }
    Ok(out)
}

/// Swaps variables `i` and `i+1` (1-indexed).
pub fn act_transposition(i: usize, p: &LaurentPoly) -> Result<LaurentPoly> {
    check_index(i as i64, p.num_vars as i64 - 1)?;
    Ok(LaurentPoly {
        num_vars: p.num_vars,
        terms: p
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.swap(i - 1, i);
                (Monomial(e), c.clone())
            })
            .collect(),
    })
}

/// Exact quotient `p / q` in the Laurent ring.
///
/// Both operands are shifted to honest polynomials, with the monomial content
/// of `q` removed so that no variable divides it; the quotient is then
/// polynomial whenever it exists, and ordinary division by a single divisor
/// either terminates with zero remainder or proves non-divisibility.
pub fn exact_div(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly> {
    p.same_dims(q)?;
    if q.is_zero() {
        return Err(FlagkError::Divisibility("division by zero".into()));
    }
    if p.is_zero() {
        return Ok(LaurentPoly::zero(p.num_vars));
    }
    let mq = q.min_exponents();
    let mp = p.min_exponents();
    let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<_>>();
    let qs = q.mul_monomial(&neg(&mq));
    let mut rem = p.mul_monomial(&neg(&mp));
    let (lm, lc) = {
        let (m, c) = qs.leading_term().expect("nonzero divisor");
        (m.clone(), c.clone())
    };
    let mut quot = LaurentPoly::zero(p.num_vars);
    while let Some((m, c)) = rem.leading_term() {
        if !m.divisible_by(&lm) {
            return Err(FlagkError::Divisibility(format!("{p} by {q}")));
        }
        let e: Vec<i32> = m.0.iter().zip(&lm.0).map(|(a, b)| a - b).collect();
        let t = c / &lc;
        rem.add_assign_scaled(&qs.mul_monomial(&e), &-t.clone());
        quot.add_term(Monomial(e), t);
    }
    let back: Vec<i32> = mp.iter().zip(&mq).map(|(a, b)| a - b).collect();
    Ok(quot.mul_monomial(&back))
}

/// Isobaric divided difference `(x_{i+1} p - x_i s_i p) / (x_{i+1} - x_i)`,
/// evaluated per monomial in closed form.
///
/// For `x_i^a x_{i+1}^b` with `a <= b` the image is
/// `(x_i x_{i+1})^a h_{b-a}(x_i, x_{i+1})`; with `a > b` it is
/// `-(x_i x_{i+1})^{b+1} h_{a-b-2}(x_i, x_{i+1})`, which vanishes when `a = b+1`.
pub fn demazure(i: usize, p: &LaurentPoly) -> Result<LaurentPoly> {
    check_index(i as i64, p.num_vars as i64 - 1)?;
    let (u, v) = (i - 1, i);
    let mut out = LaurentPoly::zero(p.num_vars);
    for (m, c) in &p.terms {
        let (a, b) = (m.0[u], m.0[v]);
        let (base, d, coeff) = if a <= b {
            (a, b - a, c.clone())
        } else if a - b == 1 {
            continue;
        } else {
            (b + 1, a - b - 2, -c.clone())
        };
        for j in 0..=d {
            let mut e = m.0.clone();
            e[u] = base + j;
            e[v] = base + d - j;
            out.add_term(Monomial(e), coeff.clone());
        }
    }
    Ok(out)
}

/// The same operator as [`demazure`], computed literally as an exact quotient.
pub fn demazure_quotient(i: usize, p: &LaurentPoly) -> Result<LaurentPoly> {
    check_index(i as i64, p.num_vars as i64 - 1)?;
    let n = p.num_vars;
    let xi = LaurentPoly::var(n, i)?;
    let xj = LaurentPoly::var(n, i + 1)?;
    let num = &mul(&xj, p)? - &mul(&xi, &act_transposition(i, p)?)?;
    exact_div(&num, &(&xj - &xi))
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.num_vars, rhs.num_vars, "variable count mismatch");
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &int(1));
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.num_vars, rhs.num_vars, "variable count mismatch");
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &int(-1));
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        mul(self, rhs).expect("variable count mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale_int(-1)
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPoly {
    /// Leading term first: `c * x1^e1 ... xN^eN` joined by ` + `; zero is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", fmt_coeff(c))?;
            if self.num_vars > 0 {
                write!(f, " *")?;
                for (j, e) in m.0.iter().enumerate() {
                    write!(f, " x{}^{}", j + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

fn parse_coeff(s: &str) -> Result<BigRational> {
    let bad = || FlagkError::Parse(format!("bad coefficient `{s}`"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

impl LaurentPoly {
    /// Parses the text format with an explicit variable count. Variables may
    /// be omitted from a term, meaning exponent 0.
    pub fn parse(s: &str, num_vars: usize) -> Result<Self> {
        let s = s.trim();
        let mut p = Self::zero(num_vars);
        if s == "0" {
            return Ok(p);
        }
        for term in s.split(" + ") {
            let term = term.trim();
            let (coeff, vars) = match term.split_once('*') {
                Some((c, v)) => (parse_coeff(c)?, v.trim()),
                None if term.starts_with('x') => (int(1), term),
                None => (parse_coeff(term)?, ""),
            };
            let mut e = vec![0i32; num_vars];
            for tok in vars.split_whitespace() {
                let body = tok
                    .strip_prefix('x')
                    .ok_or_else(|| FlagkError::Parse(format!("bad variable `{tok}`")))?;
                let (idx, exp) = match body.split_once('^') {
                    Some((a, b)) => (a, b),
                    None => (body, "1"),
                };
                let idx: usize = idx
                    .parse()
                    .map_err(|_| FlagkError::Parse(format!("bad variable `{tok}`")))?;
                let exp: i32 = exp
                    .parse()
                    .map_err(|_| FlagkError::Parse(format!("bad exponent `{tok}`")))?;
                if idx == 0 || idx > num_vars {
                    return Err(FlagkError::Parse(format!("variable `{tok}` out of range")));
                }
                e[idx - 1] += exp;
            }
            p.add_term(Monomial(e), coeff);
        }
        Ok(p)
    }
}

impl FromStr for LaurentPoly {
    type Err = FlagkError;

    /// Infers the variable count from the largest index present.
    fn from_str(s: &str) -> Result<Self> {
        let n = s
            .split(|c: char| !c.is_ascii_alphanumeric())
            .filter_map(|t| t.strip_prefix('x'))
            .filter_map(|t| t.parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        Self::parse(s, n)
    }
}

/// Rational number helper used across the crate.
pub fn rat(c: i64) -> BigRational {
    int(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(s, n).unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(&p("1 + x1", 1) * &p("1 + -1 * x1", 1), p("1 + -1 * x1^2", 1));
        assert_eq!(&p("x1^-1", 1) * &p("x1", 1), LaurentPoly::one(1));
        assert_eq!(&p("x1 + x2", 2) * &p("x1 x2^-1", 2), p("x1^2 x2^-1 + x1", 2));
        assert!(mul(&LaurentPoly::one(1), &LaurentPoly::one(2)).is_err());
    }

    #[test]
    fn transpositions() {
        assert_eq!(act_transposition(1, &p("x1", 2)).unwrap(), p("x2", 2));
        assert_eq!(act_transposition(1, &p("x1 x2", 2)).unwrap(), p("x1 x2", 2));
        assert_eq!(
            act_transposition(2, &p("x1^2 x2 x3^-1", 3)).unwrap(),
            p("x1^2 x3 x2^-1", 3)
        );
        assert!(act_transposition(0, &p("x1", 2)).is_err());
        assert!(act_transposition(2, &p("x1", 2)).is_err());
    }

    #[test]
    fn division() {
        assert_eq!(
            exact_div(&p("x2^2 + -1 * x1^2", 2), &p("x2 + -1 * x1", 2)).unwrap(),
            p("x1 + x2", 2)
        );
        assert!(exact_div(&LaurentPoly::zero(2), &p("x2 + -1 * x1", 2))
            .unwrap()
            .is_zero());
        assert!(exact_div(&p("x1 x2 + -1 * x1 x2", 2), &p("x2 + -1 * x1", 2))
            .unwrap()
            .is_zero());
        assert_eq!(
            exact_div(&p("x1^-3 x2 + -1 * x1^-2", 2), &p("x2 x1^2 + -1 * x1^3", 2)).unwrap(),
            p("x1^-5", 2)
        );
        assert!(matches!(
            exact_div(&p("x1", 2), &p("x2 + -1 * x1", 2)),
            Err(FlagkError::Divisibility(_))
        ));
    }

    #[test]
    fn demazure_values() {
        assert_eq!(demazure(1, &LaurentPoly::one(2)).unwrap(), LaurentPoly::one(2));
        assert!(demazure(1, &p("x1", 2)).unwrap().is_zero());
        assert_eq!(demazure(1, &p("x2", 2)).unwrap(), p("x1 + x2", 2));
        assert_eq!(demazure(1, &p("x1^3", 2)).unwrap(), p("-1 * x1^2 x2 + -1 * x1 x2^2", 2));
        assert_eq!(demazure(1, &p("x1^-1", 2)).unwrap(), p("x1^-1 + x2^-1", 2));
    }

    #[test]
    fn text_round_trip() {
        let q = p("3/2 * x1^2 x2^-1 + -4 * x2 + 7", 2);
        assert_eq!(q.to_string(), "3/2 * x1^2 x2^-1 + -4 * x1^0 x2^1 + 7 * x1^0 x2^0");
        assert_eq!(LaurentPoly::parse(&q.to_string(), 2).unwrap(), q);
        assert_eq!(LaurentPoly::zero(3).to_string(), "0");
        assert_eq!("x1^2 x3".parse::<LaurentPoly>().unwrap().num_vars(), 3);
        assert!(LaurentPoly::parse("1 * y1", 1).is_err());
    }
}
