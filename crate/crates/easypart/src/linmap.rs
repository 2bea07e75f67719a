//! Exact linear maps `T̊_p` and `T_p = N^{-β(p)/2} T̊_p`, Gram matrices,
//! the projections `P_p` and the counting and direct-sum identities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::category::{CategoryTable, Tri};
use crate::par;
use crate::partition::{compose, Color, Partition, UnionFind};
use crate::projective::{dominates, equivalent, is_projective, projective_nc};

pub const ENTRY_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinmapError {
    #[error("N^{exponent} entries exceed the budget of {ENTRY_BUDGET}")]
    DimensionBudgetExceeded { exponent: usize },
    #[error("N must be at least 1")]
    BadN,
    #[error("{0} is not a member of the table")]
    NonMemberPartition(String),
    #[error("{0} is not projective")]
    NotProjective(String),
    #[error("shapes do not compose")]
    NotComposable,
}

/// `N^{e2/2} · M` with an integer matrix `M` (rows: lower multi-indices,
/// columns: upper multi-indices, first index most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledMatrix {
    pub n: u64,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<i64>,
    /// twice the exponent of `N`
    pub e2: i32,
}

fn checked_pow(n: u64, e: usize) -> Result<usize, LinmapError> {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(n);
        if acc > ENTRY_BUDGET {
            return Err(LinmapError::DimensionBudgetExceeded { exponent: e });
        }
    }
    Ok(acc as usize)
}

impl ScaledMatrix {
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn exponent(&self) -> f64 {
        self.e2 as f64 / 2.0
    }

    /// `self ∘ other`.
    pub fn mul(&self, other: &ScaledMatrix) -> ScaledMatrix {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.n, other.n);
        let mut out = vec![0i64; self.rows * other.cols];
        for r in 0..self.rows {
            let row = &mut out[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.entries[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                let orow = &other.entries[k * other.cols..(k + 1) * other.cols];
                for (x, &b) in row.iter_mut().zip(orow) {
                    *x += a * b;
                }
            }
        }
        ScaledMatrix { n: self.n, rows: self.rows, cols: other.cols, entries: out, e2: self.e2 + other.e2 }
    }

    pub fn adjoint(&self) -> ScaledMatrix {
        let mut out = vec![0i64; self.rows * self.cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[c * self.rows + r] = self.entries[r * self.cols + c];
            }
        }
        ScaledMatrix { n: self.n, rows: self.cols, cols: self.rows, entries: out, e2: self.e2 }
    }

    /// Kronecker product; the left factor carries the most significant indices.
    pub fn kron(&self, other: &ScaledMatrix) -> ScaledMatrix {
        let (rows, cols) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = vec![0i64; rows * cols];
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a == 0 {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        out[(r1 * other.rows + r2) * cols + c1 * other.cols + c2] = a * other.get(r2, c2);
                    }
                }
            }
        }
        ScaledMatrix { n: self.n, rows, cols, entries: out, e2: self.e2 + other.e2 }
    }

    pub fn scaled(&self, de2: i32) -> ScaledMatrix {
        ScaledMatrix { e2: self.e2 + de2, ..self.clone() }
    }

    /// Exact equality of the represented matrices.
    pub fn same_map(&self, other: &ScaledMatrix) -> bool {
        if (self.rows, self.cols, self.n) != (other.rows, other.cols, other.n) {
            return false;
        }
        let d = self.e2 - other.e2;
        if d % 2 != 0 {
            // √N is irrational unless N is a square
            let root = (self.n as f64).sqrt().round() as u64;
            if root * root != self.n {
                return self.is_zero() && other.is_zero();
            }
            return rescaled_eq(self, other, root, 1);
        }
        rescaled_eq(self, other, self.n, 2)
    }
}

/// Compare `base^{e_a/step} A` and `base^{e_b/step} B` by moving the smaller
/// exponent to the other side.
fn rescaled_eq(a: &ScaledMatrix, b: &ScaledMatrix, base: u64, step: i32) -> bool {
    let d = (a.e2 - b.e2) / step;
    let (big, small, d) = if d >= 0 { (a, b, d) } else { (b, a, -d) };
    let f = (base as i128).pow(d as u32);
    big.entries.iter().zip(&small.entries).all(|(&x, &y)| x as i128 * f == y as i128)
}

impl Serialize for ScaledMatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = ser.serialize_map(Some(5))?;
        m.serialize_entry("N", &self.n)?;
        m.serialize_entry("rows", &self.rows)?;
        m.serialize_entry("cols", &self.cols)?;
        m.serialize_entry("exponent", &self.exponent())?;
        let rows: Vec<&[i64]> = self.entries.chunks(self.cols.max(1)).collect();
        m.serialize_entry("entries", &rows)?;
        m.end()
    }
}

/// `T̊_p`: entry 1 exactly when every block carries a single index value.
pub fn t_ring(p: &Partition, n: u64) -> Result<ScaledMatrix, LinmapError> {
    if n == 0 {
        return Err(LinmapError::BadN);
    }
    let (k, l) = (p.upper_len(), p.lower_len());
    checked_pow(n, k + l)?;
    let rows = checked_pow(n, l)?;
    let cols = checked_pow(n, k)?;
    let mut entries = vec![0i64; rows * cols];
    let b = p.block_count();
    let mut vals = vec![0u64; b];
    let labels = p.labels();
    loop {
        let mut c = 0usize;
        for &lab in &labels[..k] {
            c = c * n as usize + vals[lab as usize] as usize;
        }
        let mut r = 0usize;
        for &lab in &labels[k..] {
            r = r * n as usize + vals[lab as usize] as usize;
        }
        entries[r * cols + c] = 1;
        // odometer over block values
        let mut i = 0;
        while i < b {
            vals[i] += 1;
            if vals[i] < n {
                break;
            }
            vals[i] = 0;
            i += 1;
        }
        if i == b {
            break;
        }
    }
    Ok(ScaledMatrix { n, rows, cols, entries, e2: 0 })
}

/// `T_p = N^{-β(p)/2} T̊_p`.
pub fn t_norm(p: &Partition, n: u64) -> Result<ScaledMatrix, LinmapError> {
    let beta = p.stats().beta as i32;
    Ok(t_ring(p, n)?.scaled(-beta))
}

pub fn is_partial_isometry(p: &Partition, n: u64) -> Result<bool, LinmapError> {
    let t = t_norm(p, n)?;
    Ok(t.mul(&t.adjoint()).mul(&t).same_map(&t))
}

pub fn is_projection(p: &Partition, n: u64) -> Result<bool, LinmapError> {
    let t = t_norm(p, n)?;
    Ok(t.rows == t.cols && t.mul(&t).same_map(&t) && t.adjoint().same_map(&t))
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctorialityReport {
    pub adjoint: bool,
    pub tensor: bool,
    /// `None` when the pair does not compose
    pub composition: Option<bool>,
    /// twice `rl − (β(p)+β(q)−β(pq))/2`
    pub gamma2: Option<i32>,
    /// whether the opposite sign would also match
    pub opposite_sign_holds: Option<bool>,
}

pub fn check_adjoint(p: &Partition, n: u64) -> Result<bool, LinmapError> {
    Ok(t_norm(&p.adjoint(), n)?.same_map(&t_norm(p, n)?.adjoint()))
}

pub fn check_tensor(p: &Partition, q: &Partition, n: u64) -> Result<bool, LinmapError> {
    Ok(t_norm(&p.tensor(q), n)?.same_map(&t_norm(p, n)?.kron(&t_norm(q, n)?)))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CompositionCheck {
    pub holds: bool,
    /// twice `rl − (β(p)+β(q)−β(pq))/2`
    pub gamma2: i32,
    pub opposite_sign_holds: bool,
}

/// `T_p T_q = N^γ T_{pq}`; `None` when the pair does not compose.
pub fn check_composition(p: &Partition, q: &Partition, n: u64) -> Result<Option<CompositionCheck>, LinmapError> {
    let Ok((pq, rl)) = compose(p, q) else { return Ok(None) };
    let (bp, bq, bpq) = (p.stats().beta as i32, q.stats().beta as i32, pq.stats().beta as i32);
    let gamma2 = 2 * rl as i32 - (bp + bq - bpq);
    let lhs = t_norm(p, n)?.mul(&t_norm(q, n)?);
    let tpq = t_norm(&pq, n)?;
    Ok(Some(CompositionCheck {
        holds: lhs.same_map(&tpq.scaled(gamma2)),
        gamma2,
        opposite_sign_holds: lhs.same_map(&tpq.scaled(-gamma2)),
    }))
}

/// `T_{p*} = T_p*`, `T_{p⊗q} = T_p ⊗ T_q` and `T_p T_q = N^γ T_{pq}`.
pub fn verify_functoriality(p: &Partition, q: &Partition, n: u64) -> Result<FunctorialityReport, LinmapError> {
    let adjoint = check_adjoint(p, n)?;
    let tensor = check_tensor(p, q, n)?;
    let c = check_composition(p, q, n)?;
    Ok(FunctorialityReport {
        adjoint,
        tensor,
        composition: c.map(|c| c.holds),
        gamma2: c.map(|c| c.gamma2),
        opposite_sign_holds: c.map(|c| c.opposite_sign_holds),
    })
}

/// Number of connected components after identifying the blocks of `p` and `q`
/// on their common point set.
pub fn closed_components(p: &Partition, q: &Partition) -> usize {
    let n = p.len();
    let mut uf = UnionFind::new(n);
    for x in [p, q] {
        let mut first = vec![usize::MAX; x.block_count()];
        for (i, &b) in x.labels().iter().enumerate() {
            if first[b as usize] == usize::MAX {
                first[b as usize] = i;
            } else {
                uf.union(first[b as usize], i);
            }
        }
    }
    (0..n).filter(|&i| uf.find(i) == i).count()
}

#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    #[serde(serialize_with = "ser_big")]
    pub gram: Vec<Vec<BigInt>>,
    pub rank: usize,
    pub size: usize,
}

/// Gram matrix `Tr(T̊_q* T̊_p) = N^{components}` and its exact rank.
pub fn gram_rank(ps: &[Partition], n: u64) -> GramReport {
    let gram: Vec<Vec<BigInt>> = par::map_range(ps.len(), |i| {
        ps.iter().map(|q| BigInt::from(n).pow(closed_components(&ps[i], q) as u32)).collect()
    });
    let rank = exact_rank_int(&gram);
    GramReport { size: ps.len(), rank, gram }
}

fn ser_big<S: serde::Serializer>(g: &[Vec<BigInt>], ser: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = ser.serialize_seq(Some(g.len()))?;
    for r in g {
        let row: Vec<serde_json::Value> = r
            .iter()
            .map(|x| match u64::try_from(x) {
                Ok(v) => serde_json::Value::from(v),
                Err(_) => serde_json::Value::from(x.to_string()),
            })
            .collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

const PRIMES: [u64; 2] = [2_305_843_009_213_693_951, 4_611_686_018_427_387_847];

fn mod_rank(m: &[Vec<BigInt>], p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let v = ((x % &pb) + &pb) % &pb;
                    u64::try_from(v).unwrap()
                })
                .collect()
        })
        .collect();
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let powm = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulm(r, b);
            }
            b = mulm(b, b);
            e >>= 1;
        }
        r
    };
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = powm(a[rank][c], p - 2);
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = mulm(a[r][c], inv);
                for cc in c..cols {
                    let sub = mulm(f, a[rank][cc]);
                    a[r][cc] = (a[r][cc] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Fraction-free Gaussian elimination over the integers.
fn bareiss_rank(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, piv);
        for r in rank + 1..rows {
            for cc in c + 1..cols {
                let v = &a[rank][c] * &a[r][cc] - &a[r][c] * &a[rank][cc];
                a[r][cc] = v / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Exact rank. A full rank modulo a prime certifies full rank over ℚ; other
/// cases fall back to fraction-free elimination.
pub fn exact_rank_int(m: &[Vec<BigInt>]) -> usize {
    let full = m.len().min(m.first().map_or(0, |r| r.len()));
    for p in PRIMES {
        if mod_rank(m, p) == full {
            return full;
        }
    }
    bareiss_rank(m)
}

pub type QMatrix = Vec<Vec<BigRational>>;

fn q_from_scaled(t: &ScaledMatrix) -> QMatrix {
    // only even exponents occur for projective partitions
    assert!(t.e2 % 2 == 0);
    let e = t.e2 / 2;
    let f = if e >= 0 {
        BigRational::from_integer(BigInt::from(t.n).pow(e as u32))
    } else {
        BigRational::new(BigInt::one(), BigInt::from(t.n).pow((-e) as u32))
    };
    (0..t.rows)
        .map(|r| (0..t.cols).map(|c| &f * BigRational::from_integer(t.get(r, c).into())).collect())
        .collect()
}

fn q_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let (n, m, k) = (a.len(), b.first().map_or(0, |r| r.len()), b.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut s = BigRational::zero();
                    for t in 0..k {
                        if !a[i][t].is_zero() && !b[t][j].is_zero() {
                            s += &a[i][t] * &b[t][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn q_transpose(a: &QMatrix) -> QMatrix {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Row echelon elimination; returns the rank and the pivot columns.
fn q_pivots(a: &QMatrix) -> (usize, Vec<usize>) {
    let mut a = a.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, piv);
        let inv = a[rank][c].recip();
        for r in rank + 1..rows {
            if !a[r][c].is_zero() {
                let f = &a[r][c] * &inv;
                for cc in c..cols {
                    let sub = &f * &a[rank][cc];
                    a[r][cc] -= sub;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    (rank, pivots)
}

pub fn q_rank(a: &QMatrix) -> usize {
    q_pivots(a).0
}

fn q_inverse(a: &QMatrix) -> QMatrix {
    let n = a.len();
    let mut m: QMatrix = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !m[r][c].is_zero()).expect("singular");
        m.swap(c, piv);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for cc in 0..2 * n {
                    let sub = &f * &m[c][cc];
                    m[r][cc] -= sub;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Orthogonal projection onto the span of the columns of `cols_of`.
pub fn span_projection(dim: usize, cols_of: &[QMatrix]) -> QMatrix {
    let mut b: QMatrix = vec![Vec::new(); dim];
    for m in cols_of {
        for (r, row) in m.iter().enumerate() {
            b[r].extend(row.iter().cloned());
        }
    }
    let (rank, pivots) = q_pivots(&b);
    if rank == 0 {
        return vec![vec![BigRational::zero(); dim]; dim];
    }
    let basis: QMatrix = b.iter().map(|r| pivots.iter().map(|&c| r[c].clone()).collect()).collect();
    let bt = q_transpose(&basis);
    let inv = q_inverse(&q_mul(&bt, &basis));
    q_mul(&q_mul(&basis, &inv), &bt)
}

#[derive(Clone, Debug)]
pub struct Projection {
    pub p: Partition,
    pub matrix: QMatrix,
    pub rank: usize,
    pub dominees: Vec<Partition>,
}

fn q_trace(a: &QMatrix) -> BigRational {
    let mut s = BigRational::zero();
    for (i, r) in a.iter().enumerate() {
        s += &r[i];
    }
    s
}

/// Strictly dominated projective members with the same coloring.
pub fn strict_dominees(table: &CategoryTable, p: &Partition) -> Vec<Partition> {
    projective_nc(p.upper_colors())
        .into_iter()
        .filter(|q| q != p && table.contains(q) && dominates(p, q).unwrap_or(false))
        .collect()
}

/// `P_p = T_p − ⋁_{q≺p} T_q`, the join taken as the projection onto the span
/// of the ranges.
pub fn projection_p(table: &CategoryTable, p: &Partition, n: u64) -> Result<Projection, LinmapError> {
    if !is_projective(p) {
        return Err(LinmapError::NotProjective(p.to_text()));
    }
    if !table.contains(p) {
        return Err(LinmapError::NonMemberPartition(p.to_text()));
    }
    let tp = q_from_scaled(&t_norm(p, n)?);
    let dominees = strict_dominees(table, p);
    let ranges: Vec<QMatrix> = dominees.iter().map(|q| t_ring(q, n).map(|t| q_from_scaled(&t))).collect::<Result<_, _>>()?;
    let join = span_projection(tp.len(), &ranges);
    let matrix: QMatrix = tp
        .iter()
        .zip(&join)
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
        .collect();
    let tr = q_trace(&matrix);
    debug_assert!(tr.is_integer() && !tr.is_negative());
    let rank = tr.to_integer().try_into().unwrap_or(0usize);
    Ok(Projection { p: p.clone(), matrix, rank, dominees })
}

/// Distinct nonzero columns of an integer matrix.
fn distinct_columns(t: &ScaledMatrix) -> Vec<Vec<i64>> {
    let mut cols: Vec<Vec<i64>> = (0..t.cols)
        .map(|c| (0..t.rows).map(|r| t.get(r, c)).collect::<Vec<i64>>())
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect();
    cols.sort();
    cols.dedup();
    cols
}

/// Exact rank of a list of integer vectors. Rows are kept primitive (divided
/// by their gcd) so entries stay small; overflow falls back to big integers.
pub fn integer_rank(vecs: &[Vec<i64>]) -> usize {
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 { a.abs() } else { gcd(b, a % b) }
    }
    let mut rows: Vec<Vec<i128>> = vecs.iter().map(|v| v.iter().map(|&x| x as i128).collect()).collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let (a, b) = (prow[c], row[c]);
            let mut g = 0i128;
            for cc in c..cols {
                let v = a.checked_mul(row[cc]).zip(b.checked_mul(prow[cc])).and_then(|(x, y)| x.checked_sub(y));
                let Some(v) = v else {
                    let big: Vec<Vec<BigInt>> = vecs.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
                    return exact_rank_int(&big);
                };
                row[cc] = v;
                g = gcd(g, v);
            }
            if g > 1 {
                for x in row[c..].iter_mut() {
                    *x /= g;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `rank P_p = rank T_p − dim span{ran T_q : q ≺ p}` without building `P_p`.
pub fn projection_rank(table: &CategoryTable, p: &Partition, n: u64) -> Result<usize, LinmapError> {
    if !is_projective(p) {
        return Err(LinmapError::NotProjective(p.to_text()));
    }
    if !table.contains(p) {
        return Err(LinmapError::NonMemberPartition(p.to_text()));
    }
    let own = distinct_columns(&t_ring(p, n)?).len();
    let mut span = Vec::new();
    for q in strict_dominees(table, p) {
        span.extend(distinct_columns(&t_ring(&q, n)?));
    }
    span.sort();
    span.dedup();
    Ok(own - integer_rank(&span))
}

/// Equivalence classes of the projective members with coloring `w`.
pub fn proj_classes(table: &CategoryTable, w: &[Color]) -> Vec<Vec<Partition>> {
    let ps: Vec<Partition> = projective_nc(w).into_iter().filter(|p| table.contains(p)).collect();
    let mut uf = UnionFind::new(ps.len());
    for a in 0..ps.len() {
        for b in a + 1..ps.len() {
            if equivalent(table, &ps[a], &ps[b]) == Tri::Yes {
                uf.union(a, b);
            }
        }
    }
    let mut classes: std::collections::BTreeMap<usize, Vec<Partition>> = Default::default();
    for (a, p) in ps.iter().enumerate() {
        classes.entry(uf.find(a)).or_default().push(p.clone());
    }
    classes.into_values().collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CountingReport {
    pub members: usize,
    pub class_sizes: Vec<usize>,
    pub sum_of_squares: usize,
    pub holds: bool,
}

/// `|C(w,w)| = Σ n_w(p)²` over the classes of `Proj(w)`.
pub fn verify_counting(table: &CategoryTable, w: &[Color]) -> CountingReport {
    let members = table.members_in(w, w).map(|v| v.len()).unwrap_or(0);
    let class_sizes: Vec<usize> = proj_classes(table, w).iter().map(|c| c.len()).collect();
    let sum_of_squares = class_sizes.iter().map(|n| n * n).sum();
    CountingReport { members, holds: members == sum_of_squares, class_sizes, sum_of_squares }
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectSumReport {
    pub ranks: Vec<(String, usize)>,
    pub total: usize,
    pub expected: usize,
    pub classes_direct: bool,
    pub orthogonal: bool,
    pub holds: bool,
}

fn q_is_zero(a: &QMatrix) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

/// `Σ_{p∈Proj(w)} rank P_p = N^{|w|}`, ranges inside a class in direct sum,
/// and `P_p P_q = 0` across classes.
pub fn verify_direct_sum(table: &CategoryTable, w: &[Color], n: u64) -> Result<DirectSumReport, LinmapError> {
    let classes = proj_classes(table, w);
    let mut ranks = Vec::new();
    let mut projs: Vec<(usize, QMatrix)> = Vec::new();
    let mut classes_direct = true;
    for (ci, class) in classes.iter().enumerate() {
        let ps: Vec<Projection> = class.iter().map(|p| projection_p(table, p, n)).collect::<Result<_, _>>()?;
        let sum: usize = ps.iter().map(|x| x.rank).sum();
        let mut cat: QMatrix = vec![Vec::new(); ps.first().map_or(0, |x| x.matrix.len())];
        for x in &ps {
            for (r, row) in x.matrix.iter().enumerate() {
                cat[r].extend(row.iter().cloned());
            }
        }
        if q_rank(&cat) != sum {
            classes_direct = false;
        }
        for x in ps {
            ranks.push((x.p.to_text(), x.rank));
            projs.push((ci, x.matrix));
        }
    }
    let mut orthogonal = true;
    for a in 0..projs.len() {
        for b in a + 1..projs.len() {
            if projs[a].0 != projs[b].0 && !q_is_zero(&q_mul(&projs[a].1, &projs[b].1)) {
                orthogonal = false;
            }
        }
    }
    let total = ranks.iter().map(|x| x.1).sum();
    let expected = checked_pow(n, w.len())?;
    Ok(DirectSumReport { holds: total == expected && classes_direct && orthogonal, ranks, total, expected, classes_direct, orthogonal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::FamilyTag;
    use crate::partition::colors;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn t_ring_examples() {
        let id = t_ring(&Partition::identity(Color::White), 3).unwrap();
        assert_eq!(id.entries, vec![1, 0, 0, 0, 1, 0, 0, 0, 1]);
        let ds = t_ring(&p("1,1|ww|0;1"), 3).unwrap();
        assert!(ds.entries.iter().all(|&x| x == 1));
        let cap = t_ring(&Partition::cap(Color::White, Color::White), 3).unwrap();
        assert_eq!((cap.rows, cap.cols), (1, 9));
        assert_eq!(cap.entries, vec![1, 0, 0, 0, 1, 0, 0, 0, 1]);
    }

    #[test]
    fn normalization_examples() {
        let b1 = t_norm(&Partition::beta(1), 4).unwrap();
        assert_eq!(b1.e2, -2);
        assert!(b1.mul(&b1).same_map(&b1));
        assert!(is_projection(&Partition::beta(1), 4).unwrap());
        assert!(is_partial_isometry(&Partition::cap(Color::White, Color::Black), 4).unwrap());
        assert!(!is_projection(&Partition::cap(Color::White, Color::Black), 4).unwrap());
        assert!(is_projection(&Partition::identity(Color::White), 4).unwrap());
    }

    #[test]
    fn cap_cup_composition() {
        let cap = Partition::cap(Color::White, Color::White);
        let cup = Partition::cup(Color::White, Color::White);
        let r = verify_functoriality(&cap, &cup, 4).unwrap();
        assert_eq!(r.composition, Some(true));
        assert_eq!(r.gamma2, Some(0));
        let prod = t_ring(&cap, 4).unwrap().mul(&t_ring(&cup, 4).unwrap());
        assert_eq!(prod.entries, vec![4]);
    }

    #[test]
    fn gamma_sign() {
        // p caps a singleton into a through-block: rl = 0, β drops by one
        let q = p("1,2|www|0 2;1");
        let cap = Partition::cap(Color::White, Color::White);
        let r = verify_functoriality(&cap, &q, 4).unwrap();
        assert_eq!(r.gamma2, Some(-1));
        assert_eq!(r.composition, Some(true));
        assert_eq!(r.opposite_sign_holds, Some(false));
    }

    #[test]
    fn gram_examples() {
        let ps = crate::partition::enumerate(&colors("w").unwrap(), &colors("w").unwrap(), true).unwrap();
        let g = gram_rank(&ps, 4);
        let id_first: Vec<Vec<u64>> = g.gram.iter().map(|r| r.iter().map(|x| u64::try_from(x).unwrap()).collect()).collect();
        assert!(id_first == vec![vec![4, 4], vec![4, 16]] || id_first == vec![vec![16, 4], vec![4, 4]]);
        assert_eq!(g.rank, 2);
        let ww = colors("ww").unwrap();
        let ps = crate::partition::enumerate(&ww, &ww, true).unwrap();
        assert!(gram_rank(&ps, 1).rank < ps.len());
        assert_eq!(gram_rank(&ps, 4).rank, ps.len());
        assert_eq!(gram_rank(&ps[..1], 1).rank, 1);
    }

    #[test]
    fn projection_examples() {
        let all = CategoryTable::family(FamilyTag::AllNC, 8).unwrap();
        let id = Partition::identity(Color::White);
        let pr = projection_p(&all, &id, 4).unwrap();
        assert_eq!(pr.rank, 3);
        let quarter = BigRational::new(BigInt::from(3), BigInt::from(4));
        assert_eq!(pr.matrix[0][0], quarter);
        let pairs = CategoryTable::family(FamilyTag::Pairs, 8).unwrap();
        assert_eq!(projection_p(&pairs, &id, 4).unwrap().rank, 4);
    }

    #[test]
    fn counting_and_direct_sum() {
        let all = CategoryTable::family(FamilyTag::AllNC, 8).unwrap();
        let pairs = CategoryTable::family(FamilyTag::Pairs, 8).unwrap();
        let c = verify_counting(&all, &colors("w").unwrap());
        assert_eq!((c.members, c.sum_of_squares), (2, 2));
        let c = verify_counting(&all, &colors("ww").unwrap());
        assert_eq!((c.members, c.sum_of_squares), (14, 14));
        let c = verify_counting(&pairs, &colors("ww").unwrap());
        assert_eq!((c.members, c.sum_of_squares), (2, 2));
        let d = verify_direct_sum(&all, &colors("w").unwrap(), 4).unwrap();
        assert_eq!(d.total, 4);
        assert!(d.holds);
        let d = verify_direct_sum(&all, &colors("ww").unwrap(), 4).unwrap();
        assert!(d.holds, "{d:?}");
        let d = verify_direct_sum(&pairs, &colors("ww").unwrap(), 4).unwrap();
        assert!(d.holds, "{d:?}");
    }

    #[test]
    fn projection_rank_agrees() {
        for tag in [FamilyTag::AllNC, FamilyTag::Pairs, FamilyTag::Unitary, FamilyTag::Cs(2)] {
            let t = CategoryTable::family(tag, 8).unwrap();
            for k in 0..=2 {
                for w in crate::partition::all_words(k) {
                    for p in crate::projective::projective_members(&t, &w) {
                        assert_eq!(projection_rank(&t, &p, 4).unwrap(), projection_p(&t, &p, 4).unwrap().rank, "{tag} {p}");
                    }
                }
            }
        }
        assert_eq!(integer_rank(&[vec![2, 4], vec![1, 2]]), 1);
        assert_eq!(integer_rank(&[vec![2, 4], vec![1, 3]]), 2);
    }

    #[test]
    fn budget() {
        assert!(matches!(t_ring(&Partition::pi(6), 10), Err(LinmapError::DimensionBudgetExceeded { .. })));
    }
}
