//! Two-colored (k,l) partitions and the category operations.
//!
//! Points are indexed flat: the upper row is `0..k` and the lower row is
//! `k..k+l`, both read left to right. A partition is stored as a restricted
//! growth string over that index space, so blocks come out sorted by their
//! least element and structural equality is equality of canonical forms.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use crate::par;

/// Enumeration refuses words with more points than this unless told otherwise.
pub const ENUMERATION_BOUND: usize = 8;
const MAX_POINTS: usize = 255;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }

    pub fn from_char(c: char) -> Option<Color> {
        match c {
            'w' | 'W' | '○' => Some(Color::White),
            'b' | 'B' | '●' => Some(Color::Black),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Color::White => 'w',
            Color::Black => 'b',
        }
    }

    /// +1 for white, -1 for black.
    pub fn sign(self) -> i64 {
        match self {
            Color::White => 1,
            Color::Black => -1,
        }
    }
}

/// Parse a `w`/`b` word.
pub fn colors(s: &str) -> Result<Vec<Color>, PartitionError> {
    s.chars()
        .map(|c| Color::from_char(c).ok_or_else(|| PartitionError::Parse(format!("bad color {c:?}"))))
        .collect()
}

pub fn color_word(cs: &[Color]) -> String {
    cs.iter().map(|c| c.to_char()).collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("point {0} appears in more than one block")]
    OverlappingBlocks(usize),
    #[error("point {0} is not covered by any block")]
    UncoveredPoint(usize),
    #[error("index {0} is out of range")]
    BadIndex(usize),
    #[error("empty block")]
    EmptyBlock,
    #[error("lower row of the first factor has {lower} points but the second expects {upper}")]
    SizeMismatch { lower: usize, upper: usize },
    #[error("colors disagree at middle point {0}")]
    ColorMismatch(usize),
    #[error("cannot rotate out of an empty row")]
    EmptyRow,
    #[error("{points} points exceed the bound {bound}")]
    BoundExceeded { points: usize, bound: usize },
    #[error("more than {MAX_POINTS} points")]
    TooLarge,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionStats {
    pub b: usize,
    pub t: usize,
    pub beta: usize,
}

/// The four rotations. Each moves one corner point to the same-side end of the
/// other row and flips its color.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corner {
    UpperLeft,
    UpperRight,
    LowerLeft,
    LowerRight,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PartitionJson", into = "PartitionJson")]
pub struct Partition {
    k: usize,
    l: usize,
    colors: Vec<Color>,
    labels: Vec<u8>,
}

/// Small union-find used by composition and saturation.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn rgs<T: Copy + Eq>(raw: &[T]) -> Vec<u8> {
    let mut seen: Vec<T> = Vec::new();
    raw.iter()
        .map(|x| match seen.iter().position(|y| y == x) {
            Some(i) => i as u8,
            None => {
                seen.push(*x);
                (seen.len() - 1) as u8
            }
        })
        .collect()
}

impl Partition {
    /// Build from row colorings and blocks of flat indices.
    pub fn new(upper: &[Color], lower: &[Color], blocks: &[Vec<usize>]) -> Result<Self, PartitionError> {
        let n = upper.len() + lower.len();
        if n > MAX_POINTS {
            return Err(PartitionError::TooLarge);
        }
        let mut owner = vec![usize::MAX; n];
        for (bi, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(PartitionError::EmptyBlock);
            }
            for &i in b {
                if i >= n {
                    return Err(PartitionError::BadIndex(i));
                }
                if owner[i] != usize::MAX {
                    return Err(PartitionError::OverlappingBlocks(i));
                }
                owner[i] = bi;
            }
        }
        if let Some(i) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(PartitionError::UncoveredPoint(i));
        }
        let mut colors = upper.to_vec();
        colors.extend_from_slice(lower);
        Ok(Partition { k: upper.len(), l: lower.len(), colors, labels: rgs(&owner) })
    }

    /// Build from any labelling of the points (equal labels share a block).
    pub fn from_labels<T: Copy + Eq>(k: usize, l: usize, colors: Vec<Color>, labels: &[T]) -> Self {
        assert_eq!(colors.len(), k + l);
        assert_eq!(labels.len(), k + l);
        assert!(k + l <= MAX_POINTS, "too many points");
        Partition { k, l, colors, labels: rgs(labels) }
    }

    pub fn empty() -> Self {
        Partition { k: 0, l: 0, colors: vec![], labels: vec![] }
    }

    /// One block on all points with the given row colorings.
    pub fn one_block(upper: &[Color], lower: &[Color]) -> Self {
        let n = upper.len() + lower.len();
        let mut c = upper.to_vec();
        c.extend_from_slice(lower);
        Partition::from_labels(upper.len(), lower.len(), c, &vec![0u8; n])
    }

    pub fn identity(c: Color) -> Self {
        Partition::one_block(&[c], &[c])
    }

    /// `π_k` for `k > 0` (white), `π_{-k}` for `k < 0` (black); `π_0` is empty.
    pub fn pi(k: i64) -> Self {
        let c = if k >= 0 { Color::White } else { Color::Black };
        let n = k.unsigned_abs() as usize;
        Partition::one_block(&vec![c; n], &vec![c; n])
    }

    /// `π_{0+}` (colors wb on both rows) or `π_{0-}` (bw).
    pub fn pi0(plus: bool) -> Self {
        let w = if plus { [Color::White, Color::Black] } else { [Color::Black, Color::White] };
        Partition::one_block(&w, &w)
    }

    /// One upper block of `s` white points.
    pub fn theta(s: usize) -> Self {
        Partition::one_block(&vec![Color::White; s], &[])
    }

    /// `β_k = θ_k* θ_k`; negative `k` gives the reversed, all-black version.
    pub fn beta(k: i64) -> Self {
        let n = k.unsigned_abs() as usize;
        let c = if k >= 0 { Color::White } else { Color::Black };
        let mut labels = vec![0u8; n];
        labels.extend(std::iter::repeat_n(1u8, n));
        Partition::from_labels(n, n, vec![c; 2 * n], &labels)
    }

    /// Upper pair partition in P(2,0).
    pub fn cap(a: Color, b: Color) -> Self {
        Partition::one_block(&[a, b], &[])
    }

    /// Lower pair partition in P(0,2).
    pub fn cup(a: Color, b: Color) -> Self {
        Partition::one_block(&[], &[a, b])
    }

    pub fn upper_len(&self) -> usize {
        self.k
    }

    pub fn lower_len(&self) -> usize {
        self.l
    }

    pub fn len(&self) -> usize {
        self.k + self.l
    }

    pub fn is_empty(&self) -> bool {
        self.k + self.l == 0
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn upper_colors(&self) -> &[Color] {
        &self.colors[..self.k]
    }

    pub fn lower_colors(&self) -> &[Color] {
        &self.colors[self.k..]
    }

    /// Block id of every point, in first-occurrence order.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().map(|&x| x as usize + 1).max().unwrap_or(0)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (i, &b) in self.labels.iter().enumerate() {
            out[b as usize].push(i);
        }
        out
    }

    pub fn is_upper(&self, i: usize) -> bool {
        i < self.k
    }

    pub fn stats(&self) -> PartitionStats {
        let b = self.block_count();
        let mut up = vec![false; b];
        let mut low = vec![false; b];
        for (i, &x) in self.labels.iter().enumerate() {
            if i < self.k {
                up[x as usize] = true;
            } else {
                low[x as usize] = true;
            }
        }
        let t = (0..b).filter(|&i| up[i] && low[i]).count();
        PartitionStats { b, t, beta: b - t }
    }

    pub fn through_blocks(&self) -> usize {
        self.stats().t
    }

    pub fn tensor(&self, other: &Partition) -> Partition {
        let off = self.block_count() as u16;
        let (k, l) = (self.k + other.k, self.l + other.l);
        let mut colors = Vec::with_capacity(k + l);
        let mut labels: Vec<u16> = Vec::with_capacity(k + l);
        colors.extend_from_slice(self.upper_colors());
        labels.extend(self.labels[..self.k].iter().map(|&x| x as u16));
        colors.extend_from_slice(other.upper_colors());
        labels.extend(other.labels[..other.k].iter().map(|&x| x as u16 + off));
        colors.extend_from_slice(self.lower_colors());
        labels.extend(self.labels[self.k..].iter().map(|&x| x as u16));
        colors.extend_from_slice(other.lower_colors());
        labels.extend(other.labels[other.k..].iter().map(|&x| x as u16 + off));
        Partition::from_labels(k, l, colors, &labels)
    }

    pub fn tensor_all<'a>(parts: impl IntoIterator<Item = &'a Partition>) -> Partition {
        parts.into_iter().fold(Partition::empty(), |acc, p| acc.tensor(p))
    }

    /// Reflect in the horizontal axis; colors stay with their points.
    pub fn adjoint(&self) -> Partition {
        let order: Vec<usize> = (self.k..self.k + self.l).chain(0..self.k).collect();
        self.reordered(self.l, self.k, &order, &[])
    }

    fn reordered(&self, k: usize, l: usize, order: &[usize], flipped: &[usize]) -> Partition {
        let mut colors: Vec<Color> = order.iter().map(|&i| self.colors[i]).collect();
        for &j in flipped {
            colors[j] = colors[j].flip();
        }
        let labels: Vec<u8> = order.iter().map(|&i| self.labels[i]).collect();
        Partition::from_labels(k, l, colors, &labels)
    }

    pub fn rotate(&self, corner: Corner) -> Result<Partition, PartitionError> {
        let (k, l) = (self.k, self.l);
        match corner {
            Corner::UpperLeft => {
                if k == 0 {
                    return Err(PartitionError::EmptyRow);
                }
                let order: Vec<usize> = (1..k).chain([0]).chain(k..k + l).collect();
                Ok(self.reordered(k - 1, l + 1, &order, &[k - 1]))
            }
            Corner::UpperRight => {
                if k == 0 {
                    return Err(PartitionError::EmptyRow);
                }
                let order: Vec<usize> = (0..k - 1).chain(k..k + l).chain([k - 1]).collect();
                Ok(self.reordered(k - 1, l + 1, &order, &[k + l - 1]))
            }
            Corner::LowerLeft => {
                if l == 0 {
                    return Err(PartitionError::EmptyRow);
                }
                let order: Vec<usize> = [k].into_iter().chain(0..k).chain(k + 1..k + l).collect();
                Ok(self.reordered(k + 1, l - 1, &order, &[0]))
            }
            Corner::LowerRight => {
                if l == 0 {
                    return Err(PartitionError::EmptyRow);
                }
                let order: Vec<usize> = (0..k).chain([k + l - 1]).chain(k..k + l - 1).collect();
                Ok(self.reordered(k + 1, l - 1, &order, &[k]))
            }
        }
    }

    /// One step along the disk boundary keeping the row lengths.
    pub fn rotate_step(&self) -> Partition {
        if self.k > 0 {
            let p = self.rotate(Corner::UpperLeft).unwrap();
            p.rotate(Corner::LowerRight).unwrap()
        } else if self.l > 0 {
            let p = self.rotate(Corner::LowerRight).unwrap();
            p.rotate(Corner::UpperLeft).unwrap()
        } else {
            self.clone()
        }
    }

    /// The bar operation: every point changes row (180 degree turn) and color.
    pub fn reverse(&self) -> Partition {
        let (k, l) = (self.k, self.l);
        let order: Vec<usize> = (k..k + l).rev().chain((0..k).rev()).collect();
        let flipped: Vec<usize> = (0..k + l).collect();
        self.reordered(l, k, &order, &flipped)
    }

    /// Point indices read along the disk boundary: upper row left to right,
    /// then lower row right to left.
    pub fn boundary(&self) -> Vec<usize> {
        (0..self.k).chain((self.k..self.k + self.l).rev()).collect()
    }

    pub fn is_noncrossing(&self) -> bool {
        let seq: Vec<u8> = self.boundary().into_iter().map(|i| self.labels[i]).collect();
        noncrossing_sequence(&seq, self.block_count())
    }

    /// Every block as a standalone partition, keeping rows and colors.
    pub fn blocks_of(&self) -> Vec<Partition> {
        self.blocks()
            .into_iter()
            .map(|b| {
                let up: Vec<Color> = b.iter().filter(|&&i| i < self.k).map(|&i| self.colors[i]).collect();
                let low: Vec<Color> = b.iter().filter(|&&i| i >= self.k).map(|&i| self.colors[i]).collect();
                Partition::one_block(&up, &low)
            })
            .collect()
    }

    /// All points moved to the lower row of a P(0, k+l) partition, keeping the
    /// boundary order. Upper points pass the right corner, so their colors flip.
    pub fn to_lower_line(&self) -> Partition {
        let (k, l) = (self.k, self.l);
        let order: Vec<usize> = (k..k + l).chain((0..k).rev()).collect();
        let flipped: Vec<usize> = (l..k + l).collect();
        self.reordered(0, k + l, &order, &flipped)
    }

    /// All points moved to the upper row of a P(k+l, 0) partition.
    pub fn to_upper_line(&self) -> Partition {
        let (k, l) = (self.k, self.l);
        let order: Vec<usize> = (0..k).chain((k..k + l).rev()).collect();
        let flipped: Vec<usize> = (k..k + l).collect();
        self.reordered(k + l, 0, &order, &flipped)
    }

    /// Interpret a lower-line partition as a morphism with `m` upper points
    /// (the last `m` points, read right to left, go up and flip).
    pub fn lower_line_split(&self, m: usize) -> Partition {
        assert_eq!(self.k, 0);
        let n = self.l;
        assert!(m <= n);
        let order: Vec<usize> = (n - m..n).rev().chain(0..n - m).collect();
        let flipped: Vec<usize> = (0..m).collect();
        self.reordered(m, n - m, &order, &flipped)
    }

    /// Cyclic shift of a one-row partition (colors unchanged).
    pub fn line_shift(&self) -> Partition {
        let n = self.len();
        if n == 0 {
            return self.clone();
        }
        let order: Vec<usize> = (1..n).chain([0]).collect();
        self.reordered(self.k, self.l, &order, &[])
    }

    /// Whether `other` is obtained from `self` by rotations.
    pub fn same_rotation_class(&self, other: &Partition) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let target = other.to_lower_line();
        let mut x = self.to_lower_line();
        for _ in 0..self.len().max(1) {
            if x == target {
                return true;
            }
            x = x.line_shift();
        }
        false
    }

    pub fn to_text(&self) -> String {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        format!("{},{}|{}|{}", self.k, self.l, color_word(&self.colors), blocks.join(";"))
    }

    /// Two rows of circles with a block letter next to every point.
    pub fn render(&self) -> String {
        let glyph = |c: Color| if c == Color::White { '○' } else { '●' };
        let letter = |x: u8| {
            let x = x as u32;
            if x < 26 {
                char::from_u32('a' as u32 + x).unwrap()
            } else {
                '?'
            }
        };
        let width = self.k.max(self.l).max(1);
        let up: String = (0..self.k).map(|i| format!("{} ", glyph(self.colors[i]))).collect();
        let up_l: String = (0..self.k).map(|i| format!("{} ", letter(self.labels[i]))).collect();
        let low: String = (self.k..self.k + self.l).map(|i| format!("{} ", glyph(self.colors[i]))).collect();
        let low_l: String = (self.k..self.k + self.l).map(|i| format!("{} ", letter(self.labels[i]))).collect();
        let t = self.stats().t;
        let rule: String = std::iter::repeat_n("--", width).collect();
        format!(
            "{}\n{}\n{}  t={}\n{}\n{}\n",
            up.trim_end(),
            up_l.trim_end(),
            rule,
            t,
            low_l.trim_end(),
            low.trim_end()
        )
    }
}

/// Stack test on a boundary sequence of labels.
pub(crate) fn noncrossing_sequence(seq: &[u8], nblocks: usize) -> bool {
    let mut remaining = vec![0usize; nblocks];
    for &x in seq {
        remaining[x as usize] += 1;
    }
    let mut opened = vec![false; nblocks];
    let mut stack: Vec<u8> = Vec::new();
    for &x in seq {
        let xi = x as usize;
        if opened[xi] {
            if stack.last() != Some(&x) {
                return false;
            }
        } else {
            opened[xi] = true;
            stack.push(x);
        }
        remaining[xi] -= 1;
        if remaining[xi] == 0 {
            stack.pop();
        }
    }
    true
}

/// `compose(q, p) = qp`: `p` on top, `q` below. Returns the result and the
/// number of closed loops removed from the middle row.
pub fn compose(q: &Partition, p: &Partition) -> Result<(Partition, usize), PartitionError> {
    if p.l != q.k {
        return Err(PartitionError::SizeMismatch { lower: p.l, upper: q.k });
    }
    if let Some(i) = (0..p.l).find(|&i| p.colors[p.k + i] != q.colors[i]) {
        return Err(PartitionError::ColorMismatch(i));
    }
    Ok(compose_unchecked(q, p))
}

pub(crate) fn compose_unchecked(q: &Partition, p: &Partition) -> (Partition, usize) {
    let (k, m, l) = (p.k, p.l, q.l);
    let n = k + m + l;
    let mut uf = UnionFind::new(n + p.block_count() + q.block_count());
    // one extra node per block of p and of q
    let pb = n;
    let qb = n + p.block_count();
    for (i, &b) in p.labels.iter().enumerate() {
        uf.union(i, pb + b as usize);
    }
    for (i, &b) in q.labels.iter().enumerate() {
        let node = if i < m { k + i } else { k + m + (i - m) };
        uf.union(node, qb + b as usize);
    }
    let mut outer_roots: Vec<usize> = Vec::with_capacity(k + l);
    let mut labels = Vec::with_capacity(k + l);
    for i in (0..k).chain(k + m..n) {
        let r = uf.find(i);
        labels.push(r);
        outer_roots.push(r);
    }
    let mut middle_roots: Vec<usize> = (k..k + m).map(|i| uf.find(i)).filter(|r| !outer_roots.contains(r)).collect();
    middle_roots.sort_unstable();
    middle_roots.dedup();
    let mut colors = p.upper_colors().to_vec();
    colors.extend_from_slice(q.lower_colors());
    (Partition::from_labels(k, l, colors, &labels), middle_roots.len())
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |m: &str| PartitionError::Parse(format!("{m} in {s:?}"));
        let parts: Vec<&str> = s.trim().split('|').collect();
        if parts.len() != 3 {
            return Err(bad("expected k,l|COLORS|BLOCKS"));
        }
        let (ks, ls) = parts[0].split_once(',').ok_or_else(|| bad("missing comma"))?;
        let k: usize = ks.trim().parse().map_err(|_| bad("bad k"))?;
        let l: usize = ls.trim().parse().map_err(|_| bad("bad l"))?;
        let cs = colors(parts[1].trim())?;
        if cs.len() != k + l {
            return Err(bad("color word has the wrong length"));
        }
        let mut blocks = Vec::new();
        for b in parts[2].split(';').filter(|b| !b.trim().is_empty()) {
            let idx: Result<Vec<usize>, _> = b.split_whitespace().map(|x| x.parse::<usize>()).collect();
            blocks.push(idx.map_err(|_| bad("bad index"))?);
        }
        Partition::new(&cs[..k], &cs[k..], &blocks)
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    upper: usize,
    lower: usize,
    colors: String,
    blocks: Vec<Vec<usize>>,
}

impl TryFrom<PartitionJson> for Partition {
    type Error = PartitionError;

    fn try_from(j: PartitionJson) -> Result<Self, Self::Error> {
        let cs = colors(&j.colors)?;
        if cs.len() != j.upper + j.lower {
            return Err(PartitionError::Parse("color word has the wrong length".into()));
        }
        Partition::new(&cs[..j.upper], &cs[j.upper..], &j.blocks)
    }
}

impl From<Partition> for PartitionJson {
    fn from(p: Partition) -> Self {
        PartitionJson { upper: p.k, lower: p.l, colors: color_word(&p.colors), blocks: p.blocks() }
    }
}

/// Every (non)crossing partition with upper coloring `w` and lower coloring
/// `w2`, sorted, refusing more than `bound` points.
pub fn enumerate_bounded(
    w: &[Color],
    w2: &[Color],
    noncrossing_only: bool,
    bound: usize,
) -> Result<Vec<Partition>, PartitionError> {
    let (k, l) = (w.len(), w2.len());
    let n = k + l;
    if n > bound {
        return Err(PartitionError::BoundExceeded { points: n, bound });
    }
    let mut colors = w.to_vec();
    colors.extend_from_slice(w2);
    let mut out = if noncrossing_only {
        // labels are generated in boundary order, then moved back to points
        let boundary: Vec<usize> = (0..k).chain((k..n).rev()).collect();
        let seqs = nc_sequences(n);
        par::map(&seqs, |seq| {
            let mut labels = vec![0u8; n];
            for (pos, &pt) in boundary.iter().enumerate() {
                labels[pt] = seq[pos];
            }
            Partition::from_labels(k, l, colors.clone(), &labels)
        })
    } else {
        let seqs = all_rgs(n);
        par::map(&seqs, |seq| Partition::from_labels(k, l, colors.clone(), seq))
    };
    out.sort();
    Ok(out)
}

pub fn enumerate(w: &[Color], w2: &[Color], noncrossing_only: bool) -> Result<Vec<Partition>, PartitionError> {
    enumerate_bounded(w, w2, noncrossing_only, ENUMERATION_BOUND)
}

/// Noncrossing set partitions of `0..n` in sequence order, as label strings.
pub(crate) fn nc_sequences(n: usize) -> Vec<Vec<u8>> {
    // prefixes are split off sequentially, the tails run through `par`
    let depth = n.min(4);
    let mut prefixes = Vec::new();
    let mut seq = Vec::with_capacity(n);
    let mut stack = Vec::new();
    nc_rec(n, depth, &mut seq, &mut stack, 0, &mut |s, st, nb| prefixes.push((s.to_vec(), st.to_vec(), nb)));
    par::flat_map(&prefixes, |(s, st, nb)| {
        let mut out = Vec::new();
        let mut s = s.clone();
        let mut st = st.clone();
        nc_rec(n, n, &mut s, &mut st, *nb, &mut |s, _, _| out.push(s.to_vec()));
        out
    })
}

fn nc_rec(
    n: usize,
    stop: usize,
    seq: &mut Vec<u8>,
    stack: &mut Vec<u8>,
    nblocks: u8,
    emit: &mut dyn FnMut(&[u8], &[u8], u8),
) {
    if seq.len() == stop || seq.len() == n {
        emit(seq, stack, nblocks);
        return;
    }
    // join an open block: everything above it on the stack closes
    for depth in (0..stack.len()).rev() {
        let saved: Vec<u8> = stack[depth + 1..].to_vec();
        let b = stack[depth];
        stack.truncate(depth + 1);
        seq.push(b);
        nc_rec(n, stop, seq, stack, nblocks, emit);
        seq.pop();
        stack.extend_from_slice(&saved);
    }
    // open a new block
    stack.push(nblocks);
    seq.push(nblocks);
    nc_rec(n, stop, seq, stack, nblocks + 1, emit);
    seq.pop();
    stack.pop();
}

fn all_rgs(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(n);
    fn rec(n: usize, seq: &mut Vec<u8>, nb: u8, out: &mut Vec<Vec<u8>>) {
        if seq.len() == n {
            out.push(seq.clone());
            return;
        }
        for b in 0..=nb {
            seq.push(b);
            rec(n, seq, if b == nb { nb + 1 } else { nb }, out);
            seq.pop();
        }
    }
    rec(n, &mut seq, 0, &mut out);
    out
}

/// All `w`/`b` words of length `n`, white before black.
pub fn all_words(n: usize) -> Vec<Vec<Color>> {
    (0..1usize << n)
        .map(|m| (0..n).map(|i| if m >> (n - 1 - i) & 1 == 0 { Color::White } else { Color::Black }).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn make_partition_examples() {
        let id = Partition::new(&colors("w").unwrap(), &colors("w").unwrap(), &[vec![0, 1]]).unwrap();
        assert_eq!(id, Partition::identity(Color::White));
        let w = colors("wb").unwrap();
        assert_eq!(Partition::new(&w, &w, &[vec![0, 1, 2, 3]]).unwrap(), Partition::pi0(true));
        let e = Partition::new(&w, &[], &[vec![0], vec![0, 1]]).unwrap_err();
        assert_eq!(e, PartitionError::OverlappingBlocks(0));
        assert_eq!(Partition::new(&w, &[], &[vec![0]]).unwrap_err(), PartitionError::UncoveredPoint(1));
        assert_eq!(Partition::new(&w, &[], &[vec![0, 5]]).unwrap_err(), PartitionError::BadIndex(5));
    }

    #[test]
    fn text_round_trip() {
        let x = Partition::pi0(true);
        assert_eq!(x.to_text(), "2,2|wbwb|0 1 2 3");
        assert_eq!(p("2,2|wbwb|0 1 2 3"), x);
        assert_eq!(p("0,0||"), Partition::empty());
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"upper":2,"lower":2,"colors":"wbwb","blocks":[[0,1,2,3]]}"#);
        assert_eq!(serde_json::from_str::<Partition>(&j).unwrap(), x);
    }

    #[test]
    fn tensor_and_compose_examples() {
        let id = Partition::identity(Color::White);
        let t = id.tensor(&id);
        assert_eq!(t.blocks(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(id.tensor(&Partition::empty()), id);

        let cap = Partition::cap(Color::White, Color::Black);
        let cup = Partition::cup(Color::White, Color::Black);
        assert_eq!(compose(&cap, &cup).unwrap(), (Partition::empty(), 1));
        assert_eq!(compose(&id, &id).unwrap(), (id.clone(), 0));
        let pi2 = Partition::pi(2);
        assert_eq!(compose(&pi2, &pi2).unwrap(), (pi2.clone(), 0));
        assert!(matches!(compose(&pi2, &id), Err(PartitionError::SizeMismatch { .. })));
        let black = Partition::identity(Color::Black);
        assert_eq!(compose(&black, &id), Err(PartitionError::ColorMismatch(0)));
    }

    #[test]
    fn rotation_examples() {
        let id = Partition::identity(Color::White);
        let r = id.rotate(Corner::UpperLeft).unwrap();
        assert_eq!(r.to_text(), "0,2|bw|0 1");
        assert_eq!(Partition::pi(3).reverse(), Partition::pi(-3));
        assert_eq!(id.reverse(), Partition::identity(Color::Black));
        let th = Partition::theta(3).reverse();
        assert_eq!(th.to_text(), "0,3|bbb|0 1 2");
        assert_eq!(Partition::empty().rotate(Corner::LowerLeft), Err(PartitionError::EmptyRow));
    }

    #[test]
    fn stats_examples() {
        assert_eq!(Partition::identity(Color::White).stats(), PartitionStats { b: 1, t: 1, beta: 0 });
        assert_eq!(Partition::beta(3).stats(), PartitionStats { b: 2, t: 0, beta: 2 });
        let t1 = Partition::theta(1);
        assert_eq!(t1.tensor(&t1).blocks_of(), vec![t1.clone(), t1]);
    }

    #[test]
    fn noncrossing_examples() {
        assert!(!p("2,2|wwww|0 3;1 2").is_noncrossing());
        assert!(p("2,2|wwww|0 2;1 3").is_noncrossing());
        assert!(Partition::pi0(true).is_noncrossing());
        assert!(!p("4,0|wwww|0 2;1 3").is_noncrossing());
    }

    #[test]
    fn enumeration_counts() {
        let w = colors("w").unwrap();
        let ww = colors("ww").unwrap();
        assert_eq!(enumerate(&w, &w, true).unwrap().len(), 2);
        assert_eq!(enumerate(&ww, &ww, true).unwrap().len(), 14);
        assert_eq!(enumerate(&ww, &ww, false).unwrap().len(), 15);
        assert_eq!(enumerate(&[], &[], true).unwrap(), vec![Partition::empty()]);
        let big = vec![Color::White; 5];
        assert!(matches!(enumerate(&big, &big, true), Err(PartitionError::BoundExceeded { .. })));
    }

    #[test]
    fn line_forms() {
        let x = p("2,1|wbw|0 2;1");
        let line = x.to_lower_line();
        assert_eq!(line.upper_len(), 0);
        assert!(x.same_rotation_class(&line));
        assert_eq!(line.lower_line_split(2), x);
        assert_eq!(x.to_upper_line().to_lower_line(), line);
    }
}
