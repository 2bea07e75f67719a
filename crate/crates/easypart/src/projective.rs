//! Projective partitions: through-block decomposition, equivalence,
//! domination, capping and the tensor factorization into `A`/`B` pieces.

use serde::Serialize;
use thiserror::Error;

use crate::category::{CategoryTable, Tri};
use crate::partition::{compose, compose_unchecked, enumerate_bounded, Color, Partition, PartitionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectiveError {
    #[error("partition {0} is not noncrossing")]
    NotNoncrossing(String),
    #[error("partition {0} is not projective")]
    NotProjective(String),
    #[error("through-block counts differ ({0} vs {1})")]
    ThroughBlockMismatch(usize, usize),
    #[error("colorings differ")]
    ColorMismatch,
    #[error("points {start}..{end} are out of range for a row of {len}")]
    RangeError { start: usize, end: usize, len: usize },
    #[error("expected exactly one through-block, found {0}")]
    NotThroughOne(usize),
    #[error("no elementary form found for {0}")]
    NoElementaryForm(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

pub fn is_projective(p: &Partition) -> bool {
    if p.upper_colors() != p.lower_colors() {
        return false;
    }
    p.adjoint() == *p && compose_unchecked(p, p).0 == *p
}

/// Pairs `(p_l, p_u)` of building partitions with `p = p_l* p_u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectiveData {
    pub p: Partition,
    pub p_u: Partition,
    pub p_l: Partition,
    pub t: usize,
}

/// Keep the points of `rows` (0 = upper, 1 = lower) as the upper row and add
/// one white lower point per through-block, ordered by the first kept point.
fn building_half(p: &Partition, upper: bool) -> Partition {
    let (k, l) = (p.upper_len(), p.lower_len());
    let stats = p.blocks();
    let range: Vec<usize> = if upper { (0..k).collect() } else { (k..k + l).collect() };
    let through: Vec<bool> = stats
        .iter()
        .map(|b| b.iter().any(|&i| i < k) && b.iter().any(|&i| i >= k))
        .collect();
    // through blocks in order of their first kept point
    let mut order: Vec<u8> = Vec::new();
    for &i in &range {
        let b = p.labels()[i];
        if through[b as usize] && !order.contains(&b) {
            order.push(b);
        }
    }
    let mut colors: Vec<Color> = range.iter().map(|&i| p.colors()[i]).collect();
    let mut labels: Vec<u8> = range.iter().map(|&i| p.labels()[i]).collect();
    colors.extend(std::iter::repeat_n(Color::White, order.len()));
    labels.extend(order.iter().copied());
    Partition::from_labels(range.len(), order.len(), colors, &labels)
}

pub fn through_block_decomposition(p: &Partition) -> Result<(Partition, Partition), ProjectiveError> {
    if !p.is_noncrossing() {
        return Err(ProjectiveError::NotNoncrossing(p.to_text()));
    }
    Ok((building_half(p, false), building_half(p, true)))
}

/// Upper building half only.
pub fn upper_building(p: &Partition) -> Partition {
    building_half(p, true)
}

pub fn is_building(b: &Partition) -> bool {
    let k = b.upper_len();
    if b.lower_colors().iter().any(|&c| c != Color::White) {
        return false;
    }
    let mut last_min = None;
    let mut seen = Vec::new();
    for j in k..b.len() {
        let lab = b.labels()[j];
        if seen.contains(&lab) {
            return false;
        }
        seen.push(lab);
        let min_up = (0..k).find(|&i| b.labels()[i] == lab);
        match (min_up, last_min) {
            (None, _) => return false,
            (Some(m), Some(prev)) if m <= prev => return false,
            (Some(m), _) => last_min = Some(m),
        }
    }
    true
}

pub fn projective_data(p: &Partition) -> Result<ProjectiveData, ProjectiveError> {
    if !is_projective(p) {
        return Err(ProjectiveError::NotProjective(p.to_text()));
    }
    let (p_l, p_u) = through_block_decomposition(p)?;
    Ok(ProjectiveData { t: p_u.lower_len(), p: p.clone(), p_u, p_l })
}

/// `r^p_q = q_u* p_u`, so that `r* r = p` and `r r* = q`.
pub fn r_partition(p: &Partition, q: &Partition) -> Result<Partition, ProjectiveError> {
    let pu = upper_building(p);
    let qu = upper_building(q);
    if pu.lower_len() != qu.lower_len() {
        return Err(ProjectiveError::ThroughBlockMismatch(pu.lower_len(), qu.lower_len()));
    }
    Ok(compose_unchecked(&qu.adjoint(), &pu).0)
}

pub fn equivalent(table: &CategoryTable, p: &Partition, q: &Partition) -> Tri {
    if p == q {
        return Tri::Yes;
    }
    match r_partition(p, q) {
        Ok(r) => table.member(&r),
        Err(_) => Tri::NoWithinBound,
    }
}

/// `q ⪯ p`, i.e. `pq = qp = q`.
pub fn dominates(p: &Partition, q: &Partition) -> Result<bool, ProjectiveError> {
    if p.upper_colors() != q.upper_colors() || p.lower_colors() != q.lower_colors() {
        return Err(ProjectiveError::ColorMismatch);
    }
    if p.upper_len() != p.lower_len() {
        return Err(ProjectiveError::NotProjective(p.to_text()));
    }
    Ok(compose_unchecked(p, q).0 == *q && compose_unchecked(q, p).0 == *q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CapRow {
    Upper,
    Lower,
    Symmetric,
}

fn identity_word(cs: &[Color]) -> Partition {
    Partition::tensor_all(cs.iter().map(|&c| Partition::identity(c)).collect::<Vec<_>>().iter())
}

/// Collapse the points `start..start+m` of a row with the one-line block
/// partition `b ∈ P(m, 0)`.
pub fn cap(p: &Partition, row: CapRow, start: usize, b: &Partition) -> Result<Partition, ProjectiveError> {
    let m = b.upper_len();
    if b.lower_len() != 0 {
        return Err(ProjectiveError::Partition(PartitionError::SizeMismatch { lower: b.lower_len(), upper: 0 }));
    }
    let cap_lower = |x: &Partition| -> Result<Partition, ProjectiveError> {
        let cs = x.lower_colors();
        if start + m > cs.len() {
            return Err(ProjectiveError::RangeError { start, end: start + m, len: cs.len() });
        }
        if cs[start..start + m] != *b.upper_colors() {
            return Err(ProjectiveError::ColorMismatch);
        }
        let layer = identity_word(&cs[..start]).tensor(b).tensor(&identity_word(&cs[start + m..]));
        Ok(compose(&layer, x)?.0)
    };
    match row {
        CapRow::Lower => cap_lower(p),
        CapRow::Upper => Ok(cap_lower(&p.adjoint())?.adjoint()),
        CapRow::Symmetric => {
            let once = cap_lower(p)?;
            Ok(cap_lower(&once.adjoint())?.adjoint())
        }
    }
}

/// Split a projective noncrossing partition at every cut no block crosses and
/// group consecutive pieces without through-blocks: `[B0, A1, B1, ..., At, Bt]`.
pub fn factorize(p: &Partition) -> Result<Vec<Partition>, ProjectiveError> {
    if !p.is_noncrossing() {
        return Err(ProjectiveError::NotNoncrossing(p.to_text()));
    }
    if !is_projective(p) {
        return Err(ProjectiveError::NotProjective(p.to_text()));
    }
    let pieces = tensor_pieces(p);
    let mut out = vec![Partition::empty()];
    for piece in pieces {
        if piece.through_blocks() == 0 {
            let last = out.pop().unwrap();
            out.push(last.tensor(&piece));
        } else {
            out.push(piece);
            out.push(Partition::empty());
        }
    }
    Ok(out)
}

/// Maximal tensor splitting of a (k, k) partition.
pub fn tensor_pieces(p: &Partition) -> Vec<Partition> {
    let (k, l) = (p.upper_len(), p.lower_len());
    debug_assert_eq!(k, l);
    let nb = p.block_count();
    // for each block, the range of columns it touches
    let mut lo = vec![usize::MAX; nb];
    let mut hi = vec![0usize; nb];
    for (i, &b) in p.labels().iter().enumerate() {
        let col = if i < k { i } else { i - k };
        lo[b as usize] = lo[b as usize].min(col);
        hi[b as usize] = hi[b as usize].max(col);
    }
    let mut cuts = vec![0usize];
    for c in 1..k {
        if (0..nb).all(|b| !(lo[b] < c && hi[b] >= c)) {
            cuts.push(c);
        }
    }
    cuts.push(k);
    cuts.windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| sub_columns(p, w[0], w[1]))
        .collect()
}

fn sub_columns(p: &Partition, a: usize, b: usize) -> Partition {
    let k = p.upper_len();
    let idx: Vec<usize> = (a..b).chain(k + a..k + b).collect();
    let colors: Vec<Color> = idx.iter().map(|&i| p.colors()[i]).collect();
    let labels: Vec<u8> = idx.iter().map(|&i| p.labels()[i]).collect();
    Partition::from_labels(b - a, b - a, colors, &labels)
}

/// Restriction of the upper row to `a..b` as a one-line partition in P(b-a, 0).
fn upper_segment(p: &Partition, a: usize, b: usize) -> Partition {
    Partition::from_labels(b - a, 0, p.colors()[a..b].to_vec(), &p.labels()[a..b])
}

/// The fillers `b_i` between consecutive points of the distinguished block:
/// the through-block when `t = 1`, the block of the first point when `t = 0`.
pub fn fillers(p: &Partition) -> Vec<Partition> {
    let k = p.upper_len();
    if k == 0 {
        return vec![];
    }
    let t = p.through_blocks();
    let label = if t == 1 {
        let through: Vec<u8> = (0..k).map(|i| p.labels()[i]).filter(|&b| p.labels()[k..].contains(&b)).collect();
        through[0]
    } else {
        p.labels()[0]
    };
    let pos: Vec<usize> = (0..k).filter(|&i| p.labels()[i] == label).collect();
    let mut out = Vec::new();
    if t == 1 {
        out.push(upper_segment(p, 0, pos[0]));
    }
    for w in pos.windows(2) {
        out.push(upper_segment(p, w[0] + 1, w[1]));
    }
    if t == 1 {
        out.push(upper_segment(p, pos[pos.len() - 1] + 1, k));
    }
    out
}

/// `b* b` for a one-line `b`.
pub fn stack(b: &Partition) -> Partition {
    compose_unchecked(&b.adjoint(), b).0
}

/// Cancel neighboring opposite colors until the word is constant or `wb`/`bw`.
pub fn reduce_word(w: &[Color]) -> Vec<Color> {
    let whites = w.iter().filter(|&&c| c == Color::White).count();
    let blacks = w.len() - whites;
    if whites == blacks {
        if w.is_empty() {
            return vec![];
        }
        return vec![w[0], w[0].flip()];
    }
    let c = if whites > blacks { Color::White } else { Color::Black };
    vec![c; whites.abs_diff(blacks)]
}

/// Find `B` with `t(B) = 0` and a one-block `Â` with `A ∼ B ⊗ Â`.
pub fn to_elementary(table: &CategoryTable, a: &Partition) -> Result<(Partition, Partition), ProjectiveError> {
    if !is_projective(a) {
        return Err(ProjectiveError::NotProjective(a.to_text()));
    }
    let t = a.through_blocks();
    if t != 1 {
        return Err(ProjectiveError::NotThroughOne(t));
    }
    if a.block_count() == 1 {
        return Ok((Partition::empty(), a.clone()));
    }
    let k = a.upper_len();
    let through = (0..k).map(|i| a.labels()[i]).find(|b| a.labels()[k..].contains(b)).unwrap();
    let w: Vec<Color> = (0..k).filter(|&i| a.labels()[i] == through).map(|i| a.colors()[i]).collect();
    let fill = fillers(a);
    let mut bs: Vec<Partition> = vec![Partition::tensor_all(fill.iter().map(stack).collect::<Vec<_>>().iter())];
    // the fillers with their singletons removed, then nothing at all
    let trimmed: Vec<Partition> = fill.iter().map(drop_singletons).collect();
    bs.push(Partition::tensor_all(trimmed.iter().map(stack).collect::<Vec<_>>().iter()));
    bs.push(Partition::empty());
    let mut hats = vec![w.clone(), reduce_word(&w)];
    let r = reduce_word(&w);
    if r.len() == 2 && r[0] != r[1] {
        hats.push(vec![r[1], r[0]]);
    }
    let singles = fill.iter().map(|f| f.block_count() - drop_singletons(f).block_count()).sum::<usize>();
    for extra in 1..=singles {
        let mut wider = w.clone();
        wider.extend(std::iter::repeat_n(w[0], extra));
        hats.push(wider);
    }
    for b in &bs {
        for h in &hats {
            if h.is_empty() {
                continue;
            }
            let hat = Partition::one_block(h, h);
            let cand = b.tensor(&hat);
            if equivalent(table, a, &cand) == Tri::Yes {
                return Ok((b.clone(), hat));
            }
        }
    }
    Err(ProjectiveError::NoElementaryForm(a.to_text()))
}

fn drop_singletons(f: &Partition) -> Partition {
    let blocks = f.blocks();
    let keep: Vec<usize> = (0..f.len()).filter(|&i| blocks[f.labels()[i] as usize].len() > 1).collect();
    let colors: Vec<Color> = keep.iter().map(|&i| f.colors()[i]).collect();
    let labels: Vec<u8> = keep.iter().map(|&i| f.labels()[i]).collect();
    Partition::from_labels(keep.len(), 0, colors, &labels)
}

/// A one-line `b` with `b* b` in the table but `b` not: the obstruction to
/// block-stability. Scans sizes up to half the bound.
pub fn find_blockstability_witness(table: &CategoryTable) -> Option<Partition> {
    let half = table.bound() / 2;
    for m in 1..=half {
        for w in crate::partition::all_words(m) {
            for b in enumerate_bounded(&w, &[], table.is_noncrossing(), m).unwrap_or_default() {
                if table.member(&stack(&b)) == Tri::Yes && table.member(&b) == Tri::NoWithinBound {
                    return Some(b);
                }
            }
        }
    }
    None
}

/// Every noncrossing projective partition with coloring `w` on both rows,
/// built as `b* b` from each upper building partition `b`.
pub fn projective_nc(w: &[Color]) -> Vec<Partition> {
    let k = w.len();
    let mut out: Vec<Partition> = crate::partition::nc_sequences(k)
        .iter()
        .flat_map(|seq| {
            let nb = seq.iter().copied().max().map_or(0, |m| m as usize + 1);
            (0u32..1 << nb).filter_map(move |mask| {
                let through: Vec<u8> = (0..nb as u8).filter(|b| mask >> b & 1 == 1).collect();
                let mut colors = w.to_vec();
                colors.extend(std::iter::repeat_n(Color::White, through.len()));
                let mut labels = seq.clone();
                labels.extend(through.iter().copied());
                let b = Partition::from_labels(k, through.len(), colors, &labels);
                // a through-block nested inside another block would cross it
                b.is_noncrossing().then(|| compose_unchecked(&b.adjoint(), &b).0)
            })
        })
        .collect();
    out.sort();
    out
}

/// All projective members with upper coloring `w`.
pub fn projective_members(table: &CategoryTable, w: &[Color]) -> Vec<Partition> {
    projective_nc(w).into_iter().filter(|p| table.contains(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::FamilyTag;
    use crate::partition::colors;

    #[test]
    fn projective_examples() {
        assert!(is_projective(&Partition::pi(3)));
        assert!(is_projective(&Partition::beta(2)));
        assert!(!is_projective(&Partition::cap(Color::White, Color::Black)));
        assert!(is_projective(&Partition::pi0(true)));
    }

    #[test]
    fn decomposition_examples() {
        let id = Partition::identity(Color::White);
        assert_eq!(through_block_decomposition(&id).unwrap(), (id.clone(), id.clone()));
        let (pl, pu) = through_block_decomposition(&Partition::beta(3)).unwrap();
        assert_eq!(pu, Partition::theta(3));
        assert_eq!(pl, Partition::theta(3));
    }

    #[test]
    fn r_partition_examples() {
        let p = Partition::pi(2);
        assert_eq!(r_partition(&p, &p).unwrap(), p);
        assert!(matches!(r_partition(&p, &Partition::beta(1)), Err(ProjectiveError::ThroughBlockMismatch(1, 0))));
    }

    #[test]
    fn equivalence_in_cs() {
        let t = CategoryTable::family(FamilyTag::Cs(3), 8).unwrap();
        for k in 1..5i64 {
            for k2 in 1..5i64 {
                let want = (k - k2) % 3 == 0;
                assert_eq!(equivalent(&t, &Partition::pi(k), &Partition::pi(k2)), Tri::from_bool(want), "{k} {k2}");
            }
        }
    }

    #[test]
    fn pi0_classes_in_c0plus() {
        let t = CategoryTable::family(FamilyTag::C0plus, 8).unwrap();
        assert_eq!(equivalent(&t, &Partition::pi0(true), &Partition::pi0(false)), Tri::NoWithinBound);
        assert_eq!(t.member(&Partition::pi0(false)), Tri::Yes);
    }

    #[test]
    fn domination_examples() {
        let id = Partition::identity(Color::White);
        let ww = id.tensor(&id);
        assert!(dominates(&ww, &Partition::pi(2)).unwrap());
        assert!(!dominates(&Partition::pi(2), &ww).unwrap());
        assert!(dominates(&ww, &ww).unwrap());
        assert_eq!(dominates(&ww, &Partition::pi0(true)), Err(ProjectiveError::ColorMismatch));
    }

    #[test]
    fn capping_theta_pair() {
        for s in 2..5usize {
            let th = Partition::theta(s);
            let black = Partition::one_block(&vec![Color::Black; s], &[]);
            let x = th.tensor(&black);
            let c = cap(&x, CapRow::Upper, s - 1, &Partition::cap(Color::White, Color::Black)).unwrap();
            assert!(crate::category::same_orbit(&c, &Partition::pi(s as i64 - 1)), "{c}");
        }
    }

    #[test]
    fn cancelling_reverse_tensor() {
        let unitary = CategoryTable::family(FamilyTag::Unitary, 4).unwrap();
        let p: Partition = "3,0|wbw|0 2;1".parse().unwrap();
        let mut x = p.reverse().adjoint().tensor(&p);
        while x.upper_len() > 0 {
            let mid = x.upper_len() / 2;
            let cs = x.upper_colors();
            let pair = Partition::cap(cs[mid - 1], cs[mid]);
            assert!(unitary.contains(&pair));
            x = cap(&x, CapRow::Upper, mid - 1, &pair).unwrap();
        }
        assert_eq!(x, Partition::empty());
    }

    #[test]
    fn factorize_examples() {
        let p1 = Partition::pi(1);
        assert_eq!(factorize(&p1).unwrap(), vec![Partition::empty(), p1.clone(), Partition::empty()]);
        let x = Partition::beta(1).tensor(&p1);
        assert_eq!(factorize(&x).unwrap(), vec![Partition::beta(1), p1, Partition::empty()]);
    }

    #[test]
    fn elementary_examples() {
        let t = CategoryTable::family(FamilyTag::AllNC, 8).unwrap();
        assert_eq!(to_elementary(&t, &Partition::pi(2)).unwrap(), (Partition::empty(), Partition::pi(2)));
        // a singleton filler inside the through-block
        let a: Partition = "3,3|wwwwww|0 2 3 5;1;4".parse().unwrap();
        let (b, hat) = to_elementary(&t, &a).unwrap();
        assert_eq!(b.through_blocks(), 0);
        assert_eq!(hat.block_count(), 1);
        assert_eq!(equivalent(&t, &a, &b.tensor(&hat)), Tri::Yes);
        let c0 = CategoryTable::family(FamilyTag::C0plus, 10).unwrap();
        let bal: Partition = "4,4|wbbwwbbw|0 1 2 3 4 5 6 7".parse().unwrap();
        if c0.contains(&bal) {
            let (_, hat) = to_elementary(&c0, &bal).unwrap();
            assert!(hat == Partition::pi0(true) || hat == Partition::pi0(false) || hat == bal);
        }
    }

    #[test]
    fn witness_examples() {
        let all = CategoryTable::family(FamilyTag::AllNC, 6).unwrap();
        assert_eq!(find_blockstability_witness(&all), None);
        let t1 = Partition::theta(1);
        let t = CategoryTable::saturate(crate::category::CategorySpec::new(vec![t1.tensor(&t1)], 6)).unwrap();
        assert_eq!(find_blockstability_witness(&t), Some(t1));
        let cs = CategoryTable::family(FamilyTag::Cs(3), 8).unwrap();
        assert_eq!(find_blockstability_witness(&cs), None);
    }

    #[test]
    fn projective_members_count() {
        let t = CategoryTable::family(FamilyTag::AllNC, 8).unwrap();
        let w = colors("w").unwrap();
        assert_eq!(projective_members(&t, &w).len(), 2);
        for n in 0..4 {
            for w in crate::partition::all_words(n) {
                let slow: Vec<Partition> = crate::partition::enumerate(&w, &w, true).unwrap().into_iter().filter(is_projective).collect();
                assert_eq!(projective_nc(&w), slow);
            }
        }
    }
}
