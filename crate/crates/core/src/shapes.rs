//! Partitions, compositions, Bott straightening, Littlewood-Richardson
//! coefficients and the GL dimension formula.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, Integer, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{check_index, FlagkError, Result};

/// Weakly decreasing sequence of positive parts (trailing zeros trimmed).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(FlagkError::Domain(format!("{parts:?} is not weakly decreasing")));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Accepts an integer weight if it is weakly decreasing and nonnegative.
    pub fn from_weight(w: &[i64]) -> Option<Self> {
        if w.iter().any(|&x| x < 0) {
            return None;
        }
        Self::new(w.iter().map(|&x| x as usize).collect()).ok()
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of cells.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Part `i` (0-indexed), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn first(&self) -> usize {
        self.part(0)
    }

    /// Parts padded with zeros to length `k`, as signed integers.
    pub fn padded(&self, k: usize) -> Vec<i64> {
        (0..k.max(self.len())).map(|i| self.part(i) as i64).collect()
    }

    pub fn transpose(&self) -> Partition {
        transpose(self)
    }

    /// True when the diagram of `self` contains that of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| other.part(i) <= self.part(i))
    }

    pub fn fits_box(&self, cols: usize, rows: usize) -> bool {
        self.len() <= rows && self.first() <= cols
    }
}

impl fmt::Display for Partition {
    /// Comma-joined parts; the empty partition prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = FlagkError;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| FlagkError::Parse(format!("bad partition `{s}`")))?;
        Partition::new(parts)
    }
}

/// Weight vector `(k_1, ..., k_n)` of nonnegative blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(FlagkError::Domain("composition needs at least one block".into()));
        }
        Ok(Composition(blocks))
    }

    pub fn blocks(&self) -> &[usize] {
        &self.0
    }

    /// Number of blocks.
    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Sum of the blocks.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Block `i`, 1-indexed.
    pub fn block(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// Partial sums `s_0 = 0, s_1 = k_1, ..., s_n = N`.
    pub fn partial_sums(&self) -> Vec<usize> {
        let mut out = vec![0];
        for b in &self.0 {
            out.push(out.last().unwrap() + b);
        }
        out
    }

    pub fn is_full_flag(&self) -> bool {
        self.0.iter().all(|&b| b == 1)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Composition {
    type Err = FlagkError;
    fn from_str(s: &str) -> Result<Self> {
        let blocks = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| FlagkError::Parse(format!("bad composition `{s}`")))?;
        Composition::new(blocks)
    }
}

/// All compositions of `total` into `n` nonnegative blocks, lexicographically.
pub fn compositions(n: usize, total: usize) -> Vec<Composition> {
    fn rec(n: usize, total: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if n == 1 {
            prefix.push(total);
            out.push(Composition(prefix.clone()));
            prefix.pop();
            return;
        }
        for b in 0..=total {
            prefix.push(b);
            rec(n - 1, total - b, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, total, &mut Vec::new(), &mut out);
    }
    out
}

/// `k + sign * alpha_i` with `alpha_i = (0..0, -1, 1, 0..0)`, or `None` when a
/// block goes negative (the zero weight).
pub fn add_root(k: &Composition, i: usize, sign: i32) -> Result<Option<Composition>> {
    check_index(i as i64, k.n() as i64 - 1)?;
    let mut b: Vec<i64> = k.0.iter().map(|&x| x as i64).collect();
    b[i - 1] -= sign as i64;
    b[i] += sign as i64;
    if b.iter().any(|&x| x < 0) {
        return Ok(None);
    }
    Ok(Some(Composition(b.into_iter().map(|x| x as usize).collect())))
}

/// Partitions with first part at most `a` and at most `b` parts, ordered by
/// size descending, then lexicographically descending.
pub fn box_partitions(a: usize, b: usize) -> Vec<Partition> {
    fn rec(max_part: usize, rows_left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        out.push(Partition::new(prefix.clone()).expect("decreasing by construction"));
        if rows_left == 0 {
            return;
        }
        for p in 1..=max_part {
            prefix.push(p);
            rec(p, rows_left - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(a, b, &mut Vec::new(), &mut out);
    out.sort_by(|x, y| y.size().cmp(&x.size()).then_with(|| y.cmp(x)));
    out
}

/// Conjugate partition.
pub fn transpose(lambda: &Partition) -> Partition {
    let cols = lambda.first();
    Partition((0..cols).map(|c| lambda.0.iter().filter(|&&p| p > c).count()).collect())
}

/// Outcome of Bott straightening.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StraightenResult {
    /// `-1`, `0` or `+1`.
    pub sign: i8,
    /// Present exactly when `sign != 0`.
    pub shape: Option<Partition>,
    /// Set when the dominant weight exists but has a negative entry.
    pub non_polynomial: bool,
}

/// Dominant representative of an integer weight under the dot action:
/// add `rho = (m-1, ..., 0)`, sort descending with sign, subtract `rho`.
/// `None` when the shifted weight has a repeated entry.
pub fn straighten_weight(seq: &[i64]) -> Option<(i8, Vec<i64>)> {
    let m = seq.len();
    let mut v: Vec<i64> = seq.iter().enumerate().map(|(i, &x)| x + (m - 1 - i) as i64).collect();
    let mut sign = 1i8;
    // Insertion sort descending, one sign flip per adjacent swap.
    for i in 1..m {
        let mut j = i;
        while j > 0 && v[j - 1] <= v[j] {
            if v[j - 1] == v[j] {
                return None;
            }
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((
        sign,
        v.iter().enumerate().map(|(i, &x)| x - (m - 1 - i) as i64).collect(),
    ))
}

/// Bott's rule restricted to polynomial results: a dominant weight with a
/// negative entry is reported with sign 0 and the `non_polynomial` flag.
pub fn bott_straighten(seq: &[i64]) -> StraightenResult {
    match straighten_weight(seq) {
        None => StraightenResult {
            sign: 0,
            shape: None,
            non_polynomial: false,
        },
        Some((sign, w)) => match Partition::from_weight(&w) {
            Some(p) => StraightenResult {
                sign,
                shape: Some(p),
                non_polynomial: false,
            },
            None => StraightenResult {
                sign: 0,
                shape: None,
                non_polynomial: true,
            },
        },
    }
}

/// Littlewood-Richardson coefficients `c^nu_{lambda mu}` for `nu` with at most
/// `max_len` parts, by enumerating LR tableaux of shape `nu / lambda` and
/// content `mu`.
pub fn lr_expand(lambda: &Partition, mu: &Partition, max_len: usize) -> BTreeMap<Partition, u64> {
    let mut out = BTreeMap::new();
    if lambda.len() > max_len {
        return out;
    }
    let start: Vec<usize> = lambda.padded(max_len).iter().map(|&x| x as usize).collect();
    // rows[r] holds the letters added to row r, left to right.
    let rows: Vec<Vec<usize>> = vec![Vec::new(); max_len];
    lr_rec(mu, 0, start, rows, &mut out);
    out
}

fn lr_rec(mu: &Partition, letter: usize, shape: Vec<usize>, rows: Vec<Vec<usize>>, out: &mut BTreeMap<Partition, u64>) {
    if letter == mu.len() {
        if is_lattice(&rows, mu.len()) {
            let nu = Partition::new(shape).expect("shape stays a partition");
            *out.entry(nu).or_insert(0) += 1;
        }
        return;
    }
    let count = mu.part(letter);
    for new_shape in horizontal_strips_above(&shape, count) {
        let mut rows2 = rows.clone();
        for r in 0..shape.len() {
            for _ in shape[r]..new_shape[r] {
                rows2[r].push(letter);
            }
        }
        if is_lattice(&rows2, letter + 1) {
            lr_rec(mu, letter + 1, new_shape, rows2, out);
        }
    }
}

/// Reverse reading word (rows top to bottom, right to left) is a lattice word.
fn is_lattice(rows: &[Vec<usize>], letters: usize) -> bool {
    let mut counts = vec![0usize; letters.max(1)];
    for row in rows {
        for &l in row.iter().rev() {
            counts[l] += 1;
            if l > 0 && counts[l] > counts[l - 1] {
                return false;
            }
        }
    }
    true
}

/// Shapes (same number of rows) obtained by adding a horizontal strip of
/// `count` cells to `shape`.
pub fn horizontal_strips_above(shape: &[usize], count: usize) -> Vec<Vec<usize>> {
    fn rec(shape: &[usize], r: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if r == shape.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let cap = if r == 0 { usize::MAX } else { shape[r - 1] };
        let room = cap.saturating_sub(shape[r]).min(left);
        for add in 0..=room {
            cur.push(shape[r] + add);
            rec(shape, r + 1, left - add, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(shape, 0, count, &mut Vec::new(), &mut out);
    out
}

/// Partitions `mu` with at most `max_len` parts such that `lambda / mu` is a
/// horizontal strip (`lambda_1 >= mu_1 >= lambda_2 >= mu_2 >= ...`).
pub fn horizontal_strips_below(lambda: &Partition, max_len: usize) -> Vec<Partition> {
    fn rec(lambda: &Partition, r: usize, max_len: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if r == max_len {
            out.push(Partition::new(cur.clone()).expect("interlacing keeps order"));
            return;
        }
        for m in lambda.part(r + 1)..=lambda.part(r) {
            cur.push(m);
            rec(lambda, r + 1, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if lambda.len() <= max_len + 1 {
        rec(lambda, 0, max_len, &mut Vec::new(), &mut out);
    }
    out
}

/// Dimension of the irreducible `GL_n` representation of highest weight `nu`
/// (padded with zeros to length `n`).
pub fn gl_dim(nu: &[i64], n: usize) -> Result<u64> {
    if nu.len() > n {
        return Err(FlagkError::Domain(format!("weight {nu:?} longer than {n}")));
    }
    if nu.windows(2).any(|w| w[0] < w[1]) {
        return Err(FlagkError::Domain(format!("weight {nu:?} is not dominant")));
    }
    let mut v = nu.to_vec();
    v.resize(n, 0);
    if v.windows(2).any(|w| w[0] < w[1]) {
        return Err(FlagkError::Domain(format!("weight {nu:?} is not dominant once padded")));
    }
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..n {
        for j in (i + 1)..n {
            num *= BigInt::from(v[i] - v[j] + (j - i) as i64);
            den *= BigInt::from((j - i) as i64);
        }
    }
    let (q, r) = num.div_rem(&den);
    debug_assert_eq!(r, BigInt::from(0));
    q.to_u64()
        .ok_or_else(|| FlagkError::Capability("dimension exceeds u64".into()))
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

/// Number of semistandard tableaux of skew shape `nu / mu` with entries in
/// `1..=n`, i.e. the skew Schur function evaluated at `n` ones.
pub fn skew_ssyt_count(nu: &Partition, mu: &Partition, n: usize) -> u64 {
    if !nu.contains(mu) {
        return 0;
    }
    let rows = nu.len();
    let target: Vec<usize> = (0..rows).map(|r| nu.part(r)).collect();
    let start: Vec<usize> = (0..rows).map(|r| mu.part(r)).collect();
    let mut layer: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    layer.insert(start, 1);
    for _ in 0..n {
        let mut next: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
        for (shape, c) in &layer {
            let left: usize = target.iter().sum::<usize>() - shape.iter().sum::<usize>();
            for add in 0..=left {
                for s in horizontal_strips_above(shape, add) {
                    if s.iter().zip(&target).all(|(a, b)| a <= b) {
                        *next.entry(s).or_insert(0) += c;
                    }
                }
            }
        }
        layer = next;
    }
    layer.get(&target).copied().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn boxes() {
        assert_eq!(box_partitions(1, 1), vec![part(&[1]), part(&[])]);
        assert_eq!(
            box_partitions(2, 2),
            vec![
                part(&[2, 2]),
                part(&[2, 1]),
                part(&[2]),
                part(&[1, 1]),
                part(&[1]),
                part(&[])
            ]
        );
        assert_eq!(box_partitions(0, 3), vec![part(&[])]);
    }

    #[test]
    fn straightening() {
        assert_eq!(
            bott_straighten(&[2, 1]),
            StraightenResult {
                sign: 1,
                shape: Some(part(&[2, 1])),
                non_polynomial: false
            }
        );
        assert_eq!(bott_straighten(&[0, 1]).sign, 0);
        assert_eq!(
            bott_straighten(&[0, 2]),
            StraightenResult {
                sign: -1,
                shape: Some(part(&[1, 1])),
                non_polynomial: false
            }
        );
        let r = bott_straighten(&[0, -1]);
        assert_eq!((r.sign, r.non_polynomial), (0, true));
        assert_eq!(straighten_weight(&[0, -1]), Some((1, vec![0, -1])));
    }

    #[test]
    fn littlewood_richardson() {
        let m = lr_expand(&part(&[1]), &part(&[1]), 2);
        assert_eq!(m, BTreeMap::from([(part(&[2]), 1), (part(&[1, 1]), 1)]));
        assert_eq!(
            lr_expand(&part(&[2, 1]), &part(&[]), 3),
            BTreeMap::from([(part(&[2, 1]), 1)])
        );
        assert_eq!(
            lr_expand(&part(&[2, 1]), &part(&[1]), 2),
            BTreeMap::from([(part(&[3, 1]), 1), (part(&[2, 2]), 1)])
        );
        assert_eq!(
            lr_expand(&part(&[2, 1]), &part(&[2, 1]), 3).get(&part(&[3, 2, 1])),
            Some(&2)
        );
    }

    #[test]
    fn dimensions() {
        assert_eq!(gl_dim(&[1, 0], 2).unwrap(), 2);
        assert_eq!(gl_dim(&[1, 1], 2).unwrap(), 1);
        assert_eq!(gl_dim(&[2, 1, 0], 3).unwrap(), 8);
        assert_eq!(gl_dim(&[0, -1], 2).unwrap(), 2);
        assert!(gl_dim(&[0, 1], 2).is_err());
    }

    #[test]
    fn conjugation() {
        assert_eq!(transpose(&part(&[2, 1])), part(&[2, 1]));
        assert_eq!(transpose(&part(&[3])), part(&[1, 1, 1]));
        assert_eq!(transpose(&part(&[2, 2, 1])), part(&[3, 2]));
    }

    #[test]
    fn roots() {
        let c = |v: &[usize]| Composition::new(v.to_vec()).unwrap();
        assert_eq!(add_root(&c(&[1, 1]), 1, 1).unwrap(), Some(c(&[0, 2])));
        assert_eq!(add_root(&c(&[0, 2]), 1, 1).unwrap(), None);
        assert_eq!(add_root(&c(&[2, 1, 1]), 2, 1).unwrap(), Some(c(&[2, 0, 2])));
        assert!(add_root(&c(&[2, 1, 1]), 3, 1).is_err());
    }

    #[test]
    fn strips_below() {
        let got = horizontal_strips_below(&part(&[2, 1]), 1);
        assert_eq!(got, vec![part(&[1]), part(&[2])]);
        let got = horizontal_strips_below(&part(&[2, 1]), 2);
        assert_eq!(got.len(), 4);
        assert!(horizontal_strips_below(&part(&[1, 1, 1]), 1).is_empty());
    }

    #[test]
    fn skew_counts() {
        assert_eq!(skew_ssyt_count(&part(&[1]), &part(&[]), 3), 3);
        assert_eq!(skew_ssyt_count(&part(&[2, 1]), &part(&[]), 3), 8);
        assert_eq!(skew_ssyt_count(&part(&[2, 1]), &part(&[1]), 2), 4);
    }

    #[test]
    fn text() {
        assert_eq!(part(&[2, 1]).to_string(), "2,1");
        assert_eq!("2,1".parse::<Partition>().unwrap(), part(&[2, 1]));
        assert_eq!("0".parse::<Partition>().unwrap(), part(&[]));
        assert_eq!("1,2".parse::<Composition>().unwrap().to_string(), "1,2");
        assert!("1,2".parse::<Partition>().is_err());
    }
}
