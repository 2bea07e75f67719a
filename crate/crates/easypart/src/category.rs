//! Categories of partitions: closed-form oracles for the named families and a
//! bounded saturation for arbitrary generator sets.
//!
//! Every partition is rotation-equivalent to a one-line partition in P(0, n),
//! so a category is stored as a set of one-line orbit representatives. The
//! saturation starts from the empty partition and repeatedly stacks one layer
//! `|^a ⊗ h ⊗ |^b` under a known line, where `h` runs over every rotated or
//! reflected version of a generator or of an identity.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use thiserror::Error;

use crate::par;
use crate::partition::{enumerate_bounded, nc_sequences, Color, Partition, PartitionError, UnionFind};

pub const DEFAULT_BOUND: usize = 8;
pub const DEFAULT_HARD_CAP: usize = 10;
const CACHE_VERSION: u32 = 1;

/// Three-valued answer. `NoWithinBound` from an oracle-backed table is exact;
/// from a saturated table it only says the partition was not reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tri {
    Yes,
    NoWithinBound,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::NoWithinBound
        }
    }

    pub fn is_yes(self) -> bool {
        self == Tri::Yes
    }

    pub fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::NoWithinBound, _) | (_, Tri::NoWithinBound) => Tri::NoWithinBound,
            (Tri::Yes, Tri::Yes) => Tri::Yes,
            _ => Tri::Unknown,
        }
    }

    pub fn not(self) -> Tri {
        match self {
            Tri::Yes => Tri::NoWithinBound,
            Tri::NoWithinBound => Tri::Yes,
            Tri::Unknown => Tri::Unknown,
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::NoWithinBound => "no",
            Tri::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Error)]
pub enum CategoryError {
    #[error("bound {bound} exceeds the hard cap {cap}")]
    BoundExceeded { bound: usize, cap: usize },
    #[error("no closed-form membership test for family {0}")]
    UnsupportedFamily(FamilyTag),
    #[error("unknown family tag {0:?}")]
    BadFamily(String),
    #[error("generator {gen} has more points than the bound {bound}")]
    GeneratorTooLarge { gen: String, bound: usize },
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache format: {0}")]
    Format(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    AllNC,
    Pairs,
    Unitary,
    Cs(u32),
    Cinf,
    C0plus,
    AllP,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::AllNC => write!(f, "allnc"),
            FamilyTag::Pairs => write!(f, "pairs"),
            FamilyTag::Unitary => write!(f, "unitary"),
            FamilyTag::Cs(s) => write!(f, "cs:{s}"),
            FamilyTag::Cinf => write!(f, "cinf"),
            FamilyTag::C0plus => write!(f, "c0plus"),
            FamilyTag::AllP => write!(f, "allp"),
        }
    }
}

impl FromStr for FamilyTag {
    type Err = CategoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        let tag = match t.as_str() {
            "allnc" | "nc" | "sn+" => FamilyTag::AllNC,
            "pairs" | "on+" => FamilyTag::Pairs,
            "unitary" | "un+" => FamilyTag::Unitary,
            "cinf" | "cs:inf" => FamilyTag::Cinf,
            "c0plus" | "c0+" => FamilyTag::C0plus,
            "allp" => FamilyTag::AllP,
            _ => match t.strip_prefix("cs:") {
                Some(n) => match n.parse::<u32>() {
                    Ok(s) if s >= 1 => FamilyTag::Cs(s),
                    _ => return Err(CategoryError::BadFamily(s.to_string())),
                },
                None => return Err(CategoryError::BadFamily(s.to_string())),
            },
        };
        Ok(tag)
    }
}

impl Serialize for FamilyTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FamilyTag {
    /// Generators of the family as a category of partitions.
    pub fn generators(self) -> Vec<Partition> {
        use Color::*;
        match self {
            FamilyTag::AllNC => vec![Partition::pi(2), Partition::theta(1)],
            FamilyTag::Pairs => vec![Partition::one_block(&[White], &[Black])],
            FamilyTag::Unitary => vec![],
            FamilyTag::Cs(s) => vec![Partition::pi(2), Partition::theta(s as usize)],
            FamilyTag::Cinf => vec![Partition::pi(2)],
            FamilyTag::C0plus => vec![Partition::pi0(true)],
            FamilyTag::AllP => {
                let swap = Partition::from_labels(2, 2, vec![White; 4], &[0u8, 1, 1, 0]);
                vec![Partition::pi(2), Partition::theta(1), swap]
            }
        }
    }

    pub fn has_oracle(self) -> bool {
        self != FamilyTag::C0plus
    }
}

/// Signed color weight of a point: white counts +1 on the upper row and -1 on
/// the lower row, black the opposite. Rotation preserves the block sums.
fn weight(p: &Partition, i: usize) -> i64 {
    let s = p.colors()[i].sign();
    if p.is_upper(i) {
        s
    } else {
        -s
    }
}

fn block_weights(p: &Partition) -> Vec<(usize, i64)> {
    let mut out = vec![(0usize, 0i64); p.block_count()];
    for (i, &b) in p.labels().iter().enumerate() {
        out[b as usize].0 += 1;
        out[b as usize].1 += weight(p, i);
    }
    out
}

/// Exact membership for the families with a combinatorial description.
pub fn oracle_member(tag: FamilyTag, p: &Partition) -> Result<bool, CategoryError> {
    if tag == FamilyTag::AllP {
        return Ok(true);
    }
    if tag == FamilyTag::C0plus {
        return Err(CategoryError::UnsupportedFamily(tag));
    }
    if !p.is_noncrossing() {
        return Ok(false);
    }
    let bw = block_weights(p);
    Ok(match tag {
        FamilyTag::AllNC => true,
        FamilyTag::Pairs => bw.iter().all(|&(n, _)| n == 2),
        FamilyTag::Unitary => bw.iter().all(|&(n, w)| n == 2 && w == 0),
        FamilyTag::Cs(s) => bw.iter().all(|&(_, w)| w.rem_euclid(s as i64) == 0),
        FamilyTag::Cinf => bw.iter().all(|&(_, w)| w == 0),
        FamilyTag::AllP | FamilyTag::C0plus => unreachable!(),
    })
}

#[derive(Clone, Debug)]
pub struct CategorySpec {
    pub generators: Vec<Partition>,
    /// Largest partition kept in the table.
    pub bound: usize,
    /// Largest intermediate line during saturation (at least `bound`).
    pub work_bound: usize,
    pub oracle: Option<FamilyTag>,
    pub hard_cap: usize,
}

impl CategorySpec {
    pub fn new(generators: Vec<Partition>, bound: usize) -> Self {
        CategorySpec { generators, bound, work_bound: bound, oracle: None, hard_cap: DEFAULT_HARD_CAP }
    }

    pub fn family(tag: FamilyTag, bound: usize) -> Self {
        CategorySpec { oracle: Some(tag), ..CategorySpec::new(tag.generators(), bound) }
    }

    pub fn with_work_bound(mut self, w: usize) -> Self {
        self.work_bound = w;
        self
    }

    pub fn with_hard_cap(mut self, cap: usize) -> Self {
        self.hard_cap = cap;
        self
    }

    fn validate(&self) -> Result<(), CategoryError> {
        if self.bound > self.hard_cap {
            return Err(CategoryError::BoundExceeded { bound: self.bound, cap: self.hard_cap });
        }
        if let Some(g) = self.generators.iter().find(|g| g.len() > self.work_bound.max(self.bound)) {
            return Err(CategoryError::GeneratorTooLarge { gen: g.to_text(), bound: self.bound });
        }
        Ok(())
    }

    /// Stable key for the on-disk cache.
    pub fn cache_key(&self) -> String {
        let mut gens: Vec<String> = self.generators.iter().map(|g| canonical_line(&g.to_lower_line()).to_text()).collect();
        gens.sort();
        gens.dedup();
        let mut h = Sha256::new();
        h.update(format!("v{CACHE_VERSION}|{}|{}|{}", self.bound, self.work_bound, gens.join("/")));
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Source {
    Oracle,
    Saturated,
}

/// A category of partitions, either oracle-backed or saturated up to `bound`.
#[derive(Clone, Debug)]
pub struct CategoryTable {
    spec: CategorySpec,
    source: Source,
    lines: HashSet<Partition>,
    noncrossing: bool,
}

/// Orbit representative of a one-line partition under cyclic shifts and
/// reflections.
pub fn canonical_line(x: &Partition) -> Partition {
    debug_assert_eq!(x.upper_len(), 0);
    line_variants(x).into_iter().min().unwrap()
}

/// All cyclic shifts of a line and of its reflection.
pub fn line_variants(x: &Partition) -> Vec<Partition> {
    let n = x.len();
    if n == 0 {
        return vec![x.clone()];
    }
    let refl = reflect_line(x);
    let mut out = Vec::with_capacity(2 * n);
    for base in [x, &refl] {
        let cs = base.colors();
        let ls = base.labels();
        for s in 0..n {
            let colors: Vec<Color> = (0..n).map(|i| cs[(i + s) % n]).collect();
            let labels: Vec<u8> = (0..n).map(|i| ls[(i + s) % n]).collect();
            out.push(Partition::from_labels(0, n, colors, &labels));
        }
    }
    out
}

/// Readable orbit representative: the smallest upper-line version.
pub fn upper_form(x: &Partition) -> Partition {
    line_variants(&x.to_lower_line()).iter().map(|v| v.to_upper_line()).min().unwrap()
}

/// Same orbit under rotations and adjoints.
pub fn same_orbit(p: &Partition, q: &Partition) -> bool {
    p.len() == q.len() && canonical_line(&p.to_lower_line()) == canonical_line(&q.to_lower_line())
}

/// Reversed order with flipped colors: the line form of the adjoint.
pub fn reflect_line(x: &Partition) -> Partition {
    let n = x.len();
    let colors: Vec<Color> = x.colors().iter().rev().map(|c| c.flip()).collect();
    let labels: Vec<u8> = x.labels().iter().rev().copied().collect();
    Partition::from_labels(0, n, colors, &labels)
}

/// Stack `h` (with `h.upper_len()` points) under the first points of line `x`.
fn apply_prefix(x: &Partition, h: &Partition) -> Option<Partition> {
    let (n, m, m2) = (x.len(), h.upper_len(), h.lower_len());
    if m > n || x.colors()[..m] != *h.upper_colors() {
        return None;
    }
    let xb = x.block_count();
    // nodes: x points, h lower points, x blocks, h blocks
    let hb0 = n + m2 + xb;
    let mut uf = UnionFind::new(hb0 + h.block_count());
    for (i, &b) in x.labels().iter().enumerate() {
        uf.union(i, n + m2 + b as usize);
    }
    for (i, &b) in h.labels().iter().enumerate() {
        let node = if i < m { i } else { n + (i - m) };
        uf.union(node, hb0 + b as usize);
    }
    let mut colors = h.lower_colors().to_vec();
    colors.extend_from_slice(&x.colors()[m..]);
    let labels: Vec<usize> = (n..n + m2).chain(m..n).map(|i| uf.find(i)).collect();
    Some(Partition::from_labels(0, n - m + m2, colors, &labels))
}

fn layers(generators: &[Partition]) -> Vec<Partition> {
    let mut lines: Vec<Partition> = generators.iter().map(|g| g.to_lower_line()).collect();
    lines.push(Partition::identity(Color::White).to_lower_line());
    let mut out: HashSet<Partition> = HashSet::new();
    for g in &lines {
        for v in line_variants(g) {
            for m in 0..=v.len() {
                out.insert(v.lower_line_split(m));
            }
        }
    }
    let mut out: Vec<Partition> = out.into_iter().collect();
    out.sort();
    out
}

impl CategoryTable {
    /// Oracle-backed table when the family has one, saturation otherwise.
    pub fn closure(spec: CategorySpec) -> Result<Self, CategoryError> {
        spec.validate()?;
        match spec.oracle {
            Some(tag) if tag.has_oracle() => Ok(CategoryTable {
                noncrossing: tag != FamilyTag::AllP,
                spec,
                source: Source::Oracle,
                lines: HashSet::new(),
            }),
            _ => Self::saturate(spec),
        }
    }

    pub fn family(tag: FamilyTag, bound: usize) -> Result<Self, CategoryError> {
        let mut spec = CategorySpec::family(tag, bound);
        if tag == FamilyTag::C0plus {
            spec.hard_cap = spec.hard_cap.max(bound);
        }
        Self::closure(spec)
    }

    /// Build the table by saturation only, ignoring any oracle.
    pub fn saturate(spec: CategorySpec) -> Result<Self, CategoryError> {
        spec.validate()?;
        let work = spec.work_bound.max(spec.bound);
        let layers = layers(&spec.generators);
        let mut seen: HashSet<Partition> = HashSet::new();
        let start = Partition::empty();
        seen.insert(start.clone());
        let mut frontier = vec![start];
        while !frontier.is_empty() {
            let found: Vec<Partition> = par::flat_map(&frontier, |x| {
                let mut out = Vec::new();
                for v in line_variants(x) {
                    for h in &layers {
                        if v.len() - h.upper_len().min(v.len()) + h.lower_len() > work {
                            continue;
                        }
                        if let Some(y) = apply_prefix(&v, h) {
                            out.push(canonical_line(&y));
                        }
                    }
                }
                out.sort();
                out.dedup();
                out
            });
            let mut next: Vec<Partition> = Vec::new();
            for y in found {
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
            next.sort();
            frontier = next;
        }
        let bound = spec.bound;
        let lines: HashSet<Partition> = seen.into_iter().filter(|x| x.len() <= bound).collect();
        let noncrossing = spec.generators.iter().all(|g| g.is_noncrossing()) && spec.oracle != Some(FamilyTag::AllP);
        Ok(CategoryTable { spec, source: Source::Saturated, lines, noncrossing })
    }

    /// Load from `dir` when a valid cache file exists, else saturate and store.
    pub fn closure_cached(spec: CategorySpec, dir: &Path) -> Result<Self, CategoryError> {
        if matches!(spec.oracle, Some(tag) if tag.has_oracle()) {
            return Self::closure(spec);
        }
        let path = cache_path(&spec, dir);
        if path.exists() {
            match Self::load_cache(&spec, &path) {
                Ok(t) => return Ok(t),
                Err(e) => eprintln!("warning: rebuilding corrupt cache {}: {e}", path.display()),
            }
        }
        let t = Self::saturate(spec)?;
        std::fs::create_dir_all(dir)?;
        std::fs::write(&path, t.to_cache_json()?)?;
        Ok(t)
    }

    fn load_cache(spec: &CategorySpec, path: &Path) -> Result<Self, CategoryError> {
        let text = std::fs::read_to_string(path)?;
        let file: CacheFile = serde_json::from_str(&text)?;
        if file.version != CACHE_VERSION || file.bound != spec.bound {
            return Err(CategoryError::Format(serde::de::Error::custom("version or bound mismatch")));
        }
        let mut want: Vec<Partition> = spec.generators.iter().map(|g| canonical_line(&g.to_lower_line())).collect();
        let mut got: Vec<Partition> = file.generators.iter().map(|g| canonical_line(&g.to_lower_line())).collect();
        want.sort();
        want.dedup();
        got.sort();
        got.dedup();
        if want != got {
            return Err(CategoryError::Format(serde::de::Error::custom("generator mismatch")));
        }
        let lines: HashSet<Partition> = file.members.iter().map(|m| canonical_line(&m.to_lower_line())).collect();
        let noncrossing = spec.generators.iter().all(|g| g.is_noncrossing());
        Ok(CategoryTable { spec: spec.clone(), source: Source::Saturated, lines, noncrossing })
    }

    pub fn to_cache_json(&self) -> Result<String, CategoryError> {
        let mut members: Vec<Partition> = self.lines.iter().cloned().collect();
        members.sort();
        let file = CacheFile {
            version: CACHE_VERSION,
            generators: self.spec.generators.clone(),
            bound: self.spec.bound,
            members,
        };
        Ok(serde_json::to_string(&file)?)
    }

    pub fn spec(&self) -> &CategorySpec {
        &self.spec
    }

    pub fn bound(&self) -> usize {
        self.spec.bound
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn family_tag(&self) -> Option<FamilyTag> {
        self.spec.oracle
    }

    /// Membership answers are exact at every size.
    pub fn is_exact(&self) -> bool {
        self.source == Source::Oracle
    }

    pub fn is_noncrossing(&self) -> bool {
        self.noncrossing
    }

    pub fn member(&self, p: &Partition) -> Tri {
        match self.source {
            Source::Oracle => Tri::from_bool(oracle_member(self.spec.oracle.unwrap(), p).unwrap_or(false)),
            Source::Saturated => {
                if p.len() > self.spec.bound {
                    Tri::Unknown
                } else {
                    Tri::from_bool(self.lines.contains(&canonical_line(&p.to_lower_line())))
                }
            }
        }
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.member(p) == Tri::Yes
    }

    /// All members with upper coloring `w` and lower coloring `w2`.
    pub fn members_in(&self, w: &[Color], w2: &[Color]) -> Result<Vec<Partition>, PartitionError> {
        let all = enumerate_bounded(w, w2, self.noncrossing, w.len() + w2.len())?;
        Ok(all.into_iter().filter(|p| self.contains(p)).collect())
    }

    /// One-line orbit representatives of the members with at most `n` points.
    pub fn line_members(&self, n: usize) -> Vec<Partition> {
        let n = n.min(self.spec.bound);
        let mut out: Vec<Partition> = match self.source {
            Source::Saturated => self.lines.iter().filter(|x| x.len() <= n).cloned().collect(),
            Source::Oracle => {
                let reps: HashSet<Partition> = (0..=n)
                    .flat_map(|k| all_lines(k, self.noncrossing))
                    .filter(|x| self.contains(x))
                    .map(|x| canonical_line(&x))
                    .collect();
                reps.into_iter().collect()
            }
        };
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }

    /// Every block of every member (up to the bound) is a member.
    pub fn is_block_stable(&self) -> BlockStability {
        let members = self.line_members(self.spec.bound);
        let witness = par::find_map_first(&members, |x| {
            let x = upper_form(x);
            x.blocks_of().into_iter().find(|b| self.member(b) != Tri::Yes).map(|b| (x.clone(), b))
        });
        match witness {
            Some((p, b)) => BlockStability { verdict: Tri::NoWithinBound, witness: Some((p, b)), certified: true },
            None => BlockStability { verdict: Tri::Yes, witness: None, certified: self.is_exact() },
        }
    }

    /// With the mixed identity present, recoloring a point preserves membership.
    pub fn is_color_blind(&self) -> Tri {
        self.member(&Partition::one_block(&[Color::White], &[Color::Black]))
    }
}

/// Outcome of a block-stability scan. `certified` is false when the verdict
/// `Yes` only covers members up to the bound.
#[derive(Clone, Debug, Serialize)]
pub struct BlockStability {
    pub verdict: Tri,
    pub witness: Option<(Partition, Partition)>,
    pub certified: bool,
}

/// Every one-line partition of `n` points with every coloring.
pub fn all_lines(n: usize, noncrossing: bool) -> Vec<Partition> {
    let seqs: Vec<Vec<u8>> = if noncrossing {
        nc_sequences(n)
    } else {
        enumerate_bounded(&[], &vec![Color::White; n], false, n)
            .unwrap()
            .into_iter()
            .map(|p| p.labels().to_vec())
            .collect()
    };
    // the lower row is read right to left along the boundary
    let seqs: Vec<Vec<u8>> = seqs.into_iter().map(|s| s.into_iter().rev().collect()).collect();
    let words = crate::partition::all_words(n);
    par::flat_map(&words, |w| seqs.iter().map(|s| Partition::from_labels(0, n, w.clone(), s)).collect())
}

pub fn cache_path(spec: &CategorySpec, dir: &Path) -> PathBuf {
    dir.join(format!("closure-{}.json", &spec.cache_key()[..16]))
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    generators: Vec<Partition>,
    bound: usize,
    members: Vec<Partition>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::colors;

    #[test]
    fn oracle_examples() {
        assert!(oracle_member(FamilyTag::Cs(3), &Partition::theta(6)).unwrap());
        assert!(!oracle_member(FamilyTag::Cs(3), &Partition::theta(4)).unwrap());
        for k in 1..5 {
            assert!(oracle_member(FamilyTag::Cs(3), &Partition::pi(k)).unwrap());
            assert!(oracle_member(FamilyTag::Cs(3), &Partition::pi(-k)).unwrap());
        }
        assert!(!oracle_member(FamilyTag::Pairs, &Partition::pi0(true)).unwrap());
        assert!(oracle_member(FamilyTag::Cinf, &Partition::pi0(true)).unwrap());
        assert!(oracle_member(FamilyTag::C0plus, &Partition::pi0(true)).is_err());
        let cap = Partition::cap(Color::White, Color::Black);
        assert!(oracle_member(FamilyTag::Unitary, &cap).unwrap());
        assert!(!oracle_member(FamilyTag::Unitary, &Partition::cap(Color::White, Color::White)).unwrap());
    }

    #[test]
    fn family_tags_parse() {
        assert_eq!("cs:5".parse::<FamilyTag>().unwrap(), FamilyTag::Cs(5));
        assert_eq!("pairs".parse::<FamilyTag>().unwrap(), FamilyTag::Pairs);
        assert!("cs:0".parse::<FamilyTag>().is_err());
        assert!("bogus".parse::<FamilyTag>().is_err());
        assert_eq!(FamilyTag::Cs(3).to_string(), "cs:3");
    }

    #[test]
    fn canonical_line_is_orbit_invariant() {
        let x: Partition = "0,5|wbbww|0 3;1 2;4".parse().unwrap();
        let c = canonical_line(&x);
        for v in line_variants(&x) {
            assert_eq!(canonical_line(&v), c);
        }
    }

    #[test]
    fn unitary_fragment() {
        let t = CategoryTable::saturate(CategorySpec::new(vec![], 4)).unwrap();
        assert_eq!(t.member(&Partition::pi0(true)), Tri::NoWithinBound);
        assert_eq!(t.member(&Partition::identity(Color::Black)), Tri::Yes);
        assert_eq!(t.member(&Partition::pi(3)), Tri::Unknown);
        for n in 0..=4 {
            for x in all_lines(n, true) {
                let want = oracle_member(FamilyTag::Unitary, &x).unwrap();
                assert_eq!(t.member(&x), Tri::from_bool(want), "{x}");
            }
        }
    }

    #[test]
    fn theta_pair_category() {
        let t1 = Partition::theta(1);
        let spec = CategorySpec::new(vec![t1.tensor(&t1)], 6);
        let t = CategoryTable::saturate(spec).unwrap();
        assert_eq!(t.member(&t1), Tri::NoWithinBound);
        assert_eq!(t.member(&Partition::beta(1)), Tri::Yes);
        let bs = t.is_block_stable();
        assert_eq!(bs.verdict, Tri::NoWithinBound);
        let (p, b) = bs.witness.unwrap();
        assert_eq!(p, t1.tensor(&t1));
        assert_eq!(b, t1);
    }

    #[test]
    fn members_in_counts() {
        let t = CategoryTable::family(FamilyTag::AllNC, 8).unwrap();
        let ww = colors("ww").unwrap();
        assert_eq!(t.members_in(&ww, &ww).unwrap().len(), 14);
        let p = CategoryTable::family(FamilyTag::Pairs, 8).unwrap();
        assert_eq!(p.members_in(&ww, &ww).unwrap().len(), 2);
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("easypart-cache-test-{}", std::process::id()));
        let spec = CategorySpec::new(vec![Partition::pi0(true)], 6);
        let a = CategoryTable::closure_cached(spec.clone(), &dir).unwrap();
        let b = CategoryTable::closure_cached(spec.clone(), &dir).unwrap();
        assert_eq!(a.line_members(6), b.line_members(6));
        std::fs::write(cache_path(&spec, &dir), "{not json").unwrap();
        let c = CategoryTable::closure_cached(spec, &dir).unwrap();
        assert_eq!(a.line_members(6), c.line_members(6));
        std::fs::remove_dir_all(&dir).ok();
    }
}
