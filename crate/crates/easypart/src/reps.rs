//! Dimensions through dilated Chebyshev polynomials, the pushforward of
//! characters to the free symmetric case, length functions and ball growth.

use serde::Serialize;
use thiserror::Error;

use crate::category::{CategoryTable, Tri};
use crate::fusion::{compute_g, compute_j, compute_s, is_g_finite, phi, FusionWord, GClass, SData};
use crate::par;
use crate::partition::Partition;
use crate::projective::{dominates, equivalent, projective_nc};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepsError {
    #[error("representatives of length {k} need {needed} points, beyond the bound {bound}")]
    HorizonTooSmall { k: usize, needed: usize, bound: usize },
    #[error("S(C) or G(C) is infinite within the bound")]
    Infinite,
}

/// `μ_{2t}(√N)`. With `x² = N` every `μ_k(x)` is `a + b·x` with integers
/// `a, b`; the even ones have `b = 0`.
pub fn chebyshev_dim(t: usize, n: u64) -> i128 {
    let n = n as i128;
    let (mut prev, mut cur) = ((1i128, 0i128), (0i128, 1i128));
    if t == 0 {
        return 1;
    }
    for _ in 1..2 * t {
        let next = (cur.1 * n - prev.0, cur.0 - prev.1);
        prev = cur;
        cur = next;
    }
    debug_assert_eq!(cur.1, 0);
    cur.0
}

/// Every noncrossing projective `q ∉ C` with `q ≺ p`.
pub fn r_set_literal(table: &CategoryTable, p: &Partition) -> Vec<Partition> {
    projective_nc(p.upper_colors())
        .into_iter()
        .filter(|q| q != p && !table.contains(q) && dominates(p, q).unwrap_or(false))
        .collect()
}

/// The `q ≺ p` outside the table that no member `r ≺ p` dominates. Those under
/// such an `r` already sit in the range of `T_r` and do not reach `P_p`.
pub fn r_set(table: &CategoryTable, p: &Partition) -> Vec<Partition> {
    let below: Vec<Partition> =
        projective_nc(p.upper_colors()).into_iter().filter(|q| q != p && dominates(p, q).unwrap_or(false)).collect();
    let members: Vec<&Partition> = below.iter().filter(|q| table.contains(q)).collect();
    below
        .iter()
        .filter(|q| !table.contains(q) && !members.iter().any(|r| dominates(r, q).unwrap_or(false)))
        .cloned()
        .collect()
}

/// Through-block counts of `p` and of its `R`-set, sorted.
pub fn character_pushforward(table: &CategoryTable, p: &Partition) -> Vec<usize> {
    let mut ts: Vec<usize> = std::iter::once(p.stats().t).chain(r_set(table, p).iter().map(|q| q.stats().t)).collect();
    ts.sort_unstable();
    ts
}

pub fn dim_general(table: &CategoryTable, p: &Partition, n: u64) -> i128 {
    character_pushforward(table, p).into_iter().map(|t| chebyshev_dim(t, n)).sum()
}

pub fn length(p: &Partition) -> usize {
    p.stats().t
}

/// `ℓ'`: nontrivial one-dimensional classes get length 1.
pub fn length_prime(table: &CategoryTable, p: &Partition) -> usize {
    let t = length(p);
    if t >= 1 || equivalent(table, p, &Partition::empty()) == Tri::Yes {
        t
    } else {
        1
    }
}

pub fn is_proper(table: &CategoryTable) -> Tri {
    let s = compute_s(table);
    if s.class.cardinality().is_none() {
        return Tri::NoWithinBound;
    }
    let j = compute_j(table, s.i);
    let g = compute_g(table, &s, &j);
    is_g_finite(table, &g)
}

#[derive(Clone, Debug, Serialize)]
pub struct IrrepClass {
    pub representative: String,
    pub word: String,
    pub t: usize,
    pub dim: Option<i128>,
    pub one_dim: bool,
}

/// A normal-form candidate `g_0 ⊗ φ(a_1) ⊗ g_1 ⊗ … ⊗ φ(a_k) ⊗ g_k`.
struct Candidate {
    p: Partition,
    word: String,
}

fn candidates(s: &SData, g: &[Partition], k: usize) -> Vec<Candidate> {
    let gname = |i: usize| if i == 0 { String::new() } else { format!("g{i}") };
    let mut out = Vec::new();
    for w in s.words(k) {
        // choices of group element in each of the k+1 gaps
        let gaps = k + 1;
        let total = g.len().pow(gaps as u32);
        for code in 0..total {
            let mut c = code;
            let mut parts = Vec::new();
            let mut name = Vec::new();
            for gap in 0..gaps {
                let gi = c % g.len();
                c /= g.len();
                parts.push(g[gi].clone());
                if gi != 0 {
                    name.push(gname(gi));
                }
                if gap < k {
                    parts.push(phi(s, &FusionWord(vec![w.0[gap]])));
                    name.push(format!("[{}]", s.name(w.0[gap])));
                }
            }
            let word = if name.is_empty() { "e".to_string() } else { name.join("") };
            out.push(Candidate { p: Partition::tensor_all(parts.iter()), word });
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct BallCount {
    pub k: usize,
    pub count: usize,
    pub lower_bound: usize,
    pub upper_bound: usize,
    /// candidate pairs whose equivalence could not be decided
    pub unknown: usize,
    pub classes: Vec<IrrepClass>,
}

fn class_data(table: &CategoryTable) -> Result<(SData, GClass, Vec<Partition>), RepsError> {
    let s = compute_s(table);
    let j = compute_j(table, s.i);
    let g = compute_g(table, &s, &j);
    let elems = g.elements().ok_or(RepsError::Infinite)?;
    if s.class.cardinality().is_none() {
        return Err(RepsError::Infinite);
    }
    Ok((s, g, elems))
}

/// Equivalence classes of length `k` in normal form, with dimensions at `n`
/// when given.
pub fn ball_count(table: &CategoryTable, k: usize, n: Option<u64>) -> Result<BallCount, RepsError> {
    let (s, _g, elems) = class_data(table)?;
    let cands = candidates(&s, &elems, k);
    let needed = cands.iter().map(|c| 2 * c.p.upper_len()).max().unwrap_or(0);
    if !table.is_exact() && needed > table.bound() {
        return Err(RepsError::HorizonTooSmall { k, needed, bound: table.bound() });
    }
    let mut reps: Vec<&Candidate> = Vec::new();
    let mut unknown = 0;
    for c in &cands {
        let verdicts = par::map(&reps, |r| equivalent(table, &r.p, &c.p));
        if verdicts.contains(&Tri::Yes) {
            continue;
        }
        unknown += verdicts.iter().filter(|&&v| v == Tri::Unknown).count();
        reps.push(c);
    }
    let card = s.class.cardinality().unwrap_or(0);
    let gs = elems.len();
    let sk = card.pow(k as u32);
    let classes = reps
        .iter()
        .map(|c| IrrepClass {
            representative: c.p.to_text(),
            word: c.word.clone(),
            t: c.p.stats().t,
            dim: n.map(|n| dim_general(table, &c.p, n)),
            one_dim: c.p.stats().t == 0,
        })
        .collect();
    Ok(BallCount {
        k,
        count: reps.len(),
        lower_bound: gs * sk,
        upper_bound: sk * gs.pow(k as u32 + 1),
        unknown,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{CategorySpec, FamilyTag};
    use crate::partition::Color;

    fn fam(t: FamilyTag) -> CategoryTable {
        CategoryTable::family(t, 8).unwrap()
    }

    #[test]
    fn chebyshev_values() {
        assert_eq!(chebyshev_dim(0, 4), 1);
        assert_eq!(chebyshev_dim(1, 4), 3);
        assert_eq!(chebyshev_dim(2, 4), 5);
        assert_eq!(chebyshev_dim(3, 4), 7);
        // μ_4(x) = x⁴ − 3x² + 1
        assert_eq!(chebyshev_dim(2, 5), 25 - 15 + 1);
    }

    #[test]
    fn r_sets() {
        let id = Partition::identity(Color::White);
        let ds = Partition::from_labels(1, 1, vec![Color::White; 2], &[0, 1]);
        assert_eq!(r_set(&fam(FamilyTag::Pairs), &id), vec![ds.clone()]);
        assert_eq!(r_set(&fam(FamilyTag::Cs(2)), &id), vec![ds]);
        assert!(r_set(&fam(FamilyTag::AllNC), &id).is_empty());
        assert_eq!(character_pushforward(&fam(FamilyTag::Pairs), &id), vec![0, 1]);
        assert_eq!(dim_general(&fam(FamilyTag::Pairs), &id, 4), 4);
        assert_eq!(dim_general(&fam(FamilyTag::AllNC), &id, 4), 3);
        // {01}{23} sits under π_2, which belongs to Cs(3)
        let cs3 = fam(FamilyTag::Cs(3));
        let id2 = id.tensor(&id);
        assert_eq!(r_set_literal(&cs3, &id2).len(), 4);
        assert_eq!(r_set(&cs3, &id2).len(), 3);
        assert_eq!(dim_general(&cs3, &id2, 4), 12);
    }

    #[test]
    fn lengths() {
        let tt = CategoryTable::saturate(CategorySpec::new(vec![Partition::theta(1).tensor(&Partition::theta(1))], 8)).unwrap();
        let b1 = Partition::beta(1);
        assert_eq!(length(&b1), 0);
        assert_eq!(length_prime(&tt, &b1), 1);
        assert_eq!(length_prime(&tt, &Partition::empty()), 0);
        assert_eq!(length(&Partition::pi(2)), 1);
    }

    #[test]
    fn properness() {
        assert_eq!(is_proper(&fam(FamilyTag::Cs(3))), Tri::Yes);
        assert_eq!(is_proper(&fam(FamilyTag::Pairs)), Tri::Yes);
        assert_eq!(is_proper(&fam(FamilyTag::Unitary)), Tri::Yes);
        assert_eq!(is_proper(&fam(FamilyTag::Cinf)), Tri::NoWithinBound);
    }

    #[test]
    fn balls() {
        for k in 0..=3 {
            let b = ball_count(&fam(FamilyTag::Pairs), k, None).unwrap();
            assert_eq!((b.lower_bound, b.count, b.upper_bound), (1, 1, 1));
            let b = ball_count(&fam(FamilyTag::Unitary), k, None).unwrap();
            assert_eq!(b.count, 1 << k);
        }
        let tt = CategoryTable::saturate(CategorySpec::new(vec![Partition::theta(1).tensor(&Partition::theta(1))], 8)).unwrap();
        let b = ball_count(&tt, 0, None).unwrap();
        assert_eq!(b.count, 2);
        let b = ball_count(&tt, 1, None).unwrap();
        assert!(b.lower_bound <= b.count && b.count <= b.upper_bound, "{b:?}");
    }
}
