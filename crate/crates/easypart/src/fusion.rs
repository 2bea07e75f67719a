//! Labels, the free fusion semiring on words, and the classification data
//! `I`, `S`, `J`, `G` of a noncrossing category.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::category::{CategoryTable, Tri};
use crate::par;
use crate::partition::{all_words, compose_unchecked, Color, Partition, UnionFind};
use crate::projective::{
    equivalent, factorize, find_blockstability_witness, is_projective, projective_nc, to_elementary,
    upper_building, ProjectiveError,
};

/// A one-block projective class, written through its representative index:
/// `K(k)` stands for `π_k`, the marks for `π_{0±}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    K(i64),
    ZeroPlus,
    ZeroMinus,
}

impl Label {
    pub fn conjugate(self) -> Label {
        match self {
            Label::K(k) => Label::K(-k),
            z => z,
        }
    }

    pub fn representative(self) -> Partition {
        match self {
            Label::K(k) => Partition::pi(k),
            Label::ZeroPlus => Partition::pi0(true),
            Label::ZeroMinus => Partition::pi0(false),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::K(k) => write!(f, "{k}"),
            Label::ZeroPlus => f.write_str("0+"),
            Label::ZeroMinus => f.write_str("0-"),
        }
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "0+" | "alpha" => Ok(Label::ZeroPlus),
            "0-" | "beta" => Ok(Label::ZeroMinus),
            "x" | "gamma" => Ok(Label::K(1)),
            "xbar" | "gammabar" => Ok(Label::K(-1)),
            t => match t.parse::<i64>() {
                Ok(0) => Err("label 0 is ambiguous, use 0+ or 0-".into()),
                Ok(k) => Ok(Label::K(k)),
                Err(_) => Err(format!("bad label {t:?}")),
            },
        }
    }
}

/// A word over labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FusionWord(pub Vec<Label>);

impl FusionWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `w̄ = w̄_n … w̄_1`, with letters normalized by `s`.
    pub fn conjugate(&self, s: &SData) -> FusionWord {
        FusionWord(self.0.iter().rev().map(|&l| s.conjugate(l)).collect())
    }
}

impl fmt::Display for FusionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self.0.iter().map(|l| format!("[{l}]")).collect();
        f.write_str(&parts.join(""))
    }
}

impl FromStr for FusionWord {
    type Err = String;

    /// Comma separated labels or the printed `[a][b]` form; `e` or the empty
    /// string is the empty word and a run of `x` letters is that many `[1]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(FusionWord::default());
        }
        if s.chars().all(|c| c == 'x') {
            return Ok(FusionWord(vec![Label::K(1); s.len()]));
        }
        if let Some(body) = s.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            return body.split("][").map(str::parse).collect::<Result<Vec<_>, _>>().map(FusionWord);
        }
        s.split(',').map(str::parse).collect::<Result<Vec<_>, _>>().map(FusionWord)
    }
}

impl Serialize for FusionWord {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(self.0.iter().map(|l| l.to_string()))
    }
}

/// `ℕ[words]`: a multiset of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SemiringElement(pub BTreeMap<FusionWord, u64>);

impl SemiringElement {
    pub fn add_word(&mut self, w: FusionWord, mult: u64) {
        if mult > 0 {
            *self.0.entry(w).or_insert(0) += mult;
        }
    }

    pub fn add(&mut self, other: &SemiringElement) {
        for (w, &m) in &other.0 {
            self.add_word(w.clone(), m);
        }
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn conjugate(&self, s: &SData) -> SemiringElement {
        let mut out = SemiringElement::default();
        for (w, &m) in &self.0 {
            out.add_word(w.conjugate(s), m);
        }
        out
    }

    /// Bilinear extension of [`word_tensor`].
    pub fn tensor(&self, other: &SemiringElement, s: &SData) -> SemiringElement {
        let mut out = SemiringElement::default();
        for (a, &m) in &self.0 {
            for (b, &n) in &other.0 {
                for (w, k) in word_tensor(s, a, b).0 {
                    out.add_word(w, k * m * n);
                }
            }
        }
        out
    }
}

impl fmt::Display for SemiringElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .map(|(w, &m)| if m == 1 { w.to_string() } else { format!("{m}{w}") })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IClass {
    Zstar,
    PlusMinusOne,
}

/// The isomorphism type of `S(C)`. `Zs(None)` means no modulus was found up
/// to the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SClass {
    One,
    PlusMinus,
    Zs(Option<usize>),
    CalS,
}

impl SClass {
    pub fn cardinality(self) -> Option<usize> {
        match self {
            SClass::One => Some(1),
            SClass::PlusMinus => Some(2),
            SClass::CalS => Some(4),
            SClass::Zs(s) => s,
        }
    }
}

impl fmt::Display for SClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SClass::One => f.write_str("{[1]}"),
            SClass::PlusMinus => f.write_str("{[-1],[1]}"),
            SClass::Zs(Some(s)) => write!(f, "Z_{s}"),
            SClass::Zs(None) => f.write_str("Z_inf"),
            SClass::CalS => f.write_str("{alpha,beta,gamma,gammabar}"),
        }
    }
}

impl Serialize for SClass {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut m = ser.serialize_map(None)?;
        match self {
            SClass::One => m.serialize_entry("type", "One")?,
            SClass::PlusMinus => m.serialize_entry("type", "PlusMinus")?,
            SClass::CalS => m.serialize_entry("type", "CalS")?,
            SClass::Zs(s) => {
                m.serialize_entry("type", "Zs")?;
                match s {
                    Some(s) => m.serialize_entry("s", s)?,
                    None => m.serialize_entry("s", "inf")?,
                }
            }
        }
        m.end()
    }
}

/// `S(C)` with its evidence: the bound up to which the modulus was searched.
#[derive(Clone, Debug, Serialize)]
pub struct SData {
    pub class: SClass,
    pub i: IClass,
    pub pi0: Tri,
    pub one_sim_minus_one: Tri,
    pub horizon: usize,
}

impl SData {
    pub fn canonical(&self, l: Label) -> Label {
        match self.class {
            SClass::One => Label::K(1),
            SClass::PlusMinus => match l {
                Label::K(k) if k < 0 => Label::K(-1),
                _ => Label::K(1),
            },
            SClass::CalS => match l {
                Label::K(k) if k > 0 => Label::K(1),
                Label::K(_) => Label::K(-1),
                z => z,
            },
            SClass::Zs(Some(s)) => {
                let s = s as i64;
                let v = match l {
                    Label::K(k) => k,
                    _ => 0,
                };
                Label::K((v - 1).rem_euclid(s) + 1)
            }
            SClass::Zs(None) => match l {
                Label::K(k) => Label::K(k),
                _ => Label::ZeroPlus,
            },
        }
    }

    pub fn conjugate(&self, l: Label) -> Label {
        self.canonical(self.canonical(l).conjugate())
    }

    /// The elements of `S`; for an unbounded modulus only `0`, `±1`, `±2`.
    pub fn labels(&self) -> Vec<Label> {
        match self.class {
            SClass::One => vec![Label::K(1)],
            SClass::PlusMinus => vec![Label::K(1), Label::K(-1)],
            SClass::CalS => vec![Label::K(1), Label::K(-1), Label::ZeroPlus, Label::ZeroMinus],
            SClass::Zs(Some(s)) => (1..=s as i64).map(Label::K).collect(),
            SClass::Zs(None) => vec![Label::K(1), Label::K(-1), Label::K(2), Label::K(-2), Label::ZeroPlus],
        }
    }

    pub fn name(&self, l: Label) -> String {
        match (self.class, self.canonical(l)) {
            (SClass::CalS, Label::ZeroPlus) => "alpha".into(),
            (SClass::CalS, Label::ZeroMinus) => "beta".into(),
            (SClass::CalS, Label::K(1)) => "gamma".into(),
            (SClass::CalS, _) => "gammabar".into(),
            (_, c) => c.to_string(),
        }
    }

    /// Fusion through the closed-form rules; `None` is the empty fusion.
    pub fn fuse(&self, x: Label, y: Label) -> Option<Label> {
        let (x, y) = (self.canonical(x), self.canonical(y));
        match self.class {
            SClass::One | SClass::PlusMinus => None,
            SClass::CalS => {
                use Label::*;
                match (x, y) {
                    (K(1), K(-1)) => Some(ZeroPlus),
                    (K(-1), K(1)) => Some(ZeroMinus),
                    (ZeroPlus, ZeroPlus) => Some(ZeroPlus),
                    (ZeroMinus, ZeroMinus) => Some(ZeroMinus),
                    (K(1), ZeroMinus) | (ZeroPlus, K(1)) => Some(K(1)),
                    (K(-1), ZeroPlus) | (ZeroMinus, K(-1)) => Some(K(-1)),
                    _ => None,
                }
            }
            SClass::Zs(_) => {
                let v = |l: Label| match l {
                    Label::K(k) => k,
                    _ => 0,
                };
                let sum = v(x) + v(y);
                Some(self.canonical(if sum == 0 { Label::ZeroPlus } else { Label::K(sum) }))
            }
        }
    }

    pub fn canonical_word(&self, w: &FusionWord) -> FusionWord {
        FusionWord(w.0.iter().map(|&l| self.canonical(l)).collect())
    }

    /// All words of length `n` over [`SData::labels`].
    pub fn words(&self, n: usize) -> Vec<FusionWord> {
        let labels = self.labels();
        let mut out = vec![FusionWord::default()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w| {
                    labels.iter().map(move |&l| {
                        let mut v = w.0.clone();
                        v.push(l);
                        FusionWord(v)
                    })
                })
                .collect();
        }
        out
    }
}

pub fn compute_i(table: &CategoryTable) -> IClass {
    if table.contains(&Partition::pi(2)) {
        IClass::Zstar
    } else {
        IClass::PlusMinusOne
    }
}

#[cfg(test)]
fn mixed_identity() -> Partition {
    Partition::one_block(&[Color::White], &[Color::Black])
}

pub fn compute_s(table: &CategoryTable) -> SData {
    let pi0 = table.member(&Partition::pi0(true));
    let i = compute_i(table);
    let one_sim_minus_one = equivalent(table, &Partition::pi(1), &Partition::pi(-1));
    let class = if pi0 != Tri::Yes {
        if one_sim_minus_one == Tri::Yes {
            SClass::One
        } else {
            SClass::PlusMinus
        }
    } else if i == IClass::PlusMinusOne {
        SClass::CalS
    } else {
        SClass::Zs((1..=table.bound()).find(|&k| table.contains(&Partition::theta(k))))
    };
    SData { class, i, pi0, one_sim_minus_one, horizon: table.bound() }
}

/// `h_□^k`: `k` nested white pairs on each row.
pub fn h_box(k: usize) -> Partition {
    let n = 2 * k;
    let mut labels = vec![0u8; 2 * n];
    for i in 0..n {
        let pair = i.min(n - 1 - i) as u8;
        labels[i] = pair;
        labels[n + i] = k as u8 + pair;
    }
    Partition::from_labels(n, n, vec![Color::White; 2 * n], &labels)
}

/// `h_⊡^k`: `h_□^k` with the outermost upper and lower pairs merged.
pub fn h_boxdot(k: usize) -> Partition {
    let n = 2 * k;
    let mut labels = h_box(k).labels().to_vec();
    labels[n] = 0;
    labels[2 * n - 1] = 0;
    Partition::from_labels(n, n, vec![Color::White; 2 * n], &labels)
}

fn sandwich(p: &Partition, q: &Partition, k: usize, middle: &Partition) -> Partition {
    let (pu, qu) = (upper_building(p), upper_building(q));
    let (tp, tq) = (pu.lower_len(), qu.lower_len());
    let id = Partition::identity(Color::White);
    let ids = |n: usize| Partition::tensor_all(std::iter::repeat_n(&id, n));
    let mid = ids(tp - k).tensor(middle).tensor(&ids(tq - k));
    let top = pu.tensor(&qu);
    let bottom = pu.adjoint().tensor(&qu.adjoint());
    compose_unchecked(&bottom, &compose_unchecked(&mid, &top).0).0
}

/// `p □^k q`.
pub fn box_k(p: &Partition, q: &Partition, k: usize) -> Partition {
    sandwich(p, q, k, &h_box(k))
}

/// `p ⊡^k q`.
pub fn boxdot_k(p: &Partition, q: &Partition, k: usize) -> Partition {
    sandwich(p, q, k, &h_boxdot(k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TermKind {
    Tensor,
    Box(usize),
    BoxDot(usize),
}

impl fmt::Display for TermKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermKind::Tensor => f.write_str("tensor"),
            TermKind::Box(k) => write!(f, "box{k}"),
            TermKind::BoxDot(k) => write!(f, "boxdot{k}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorTerm {
    pub kind: TermKind,
    pub partition: Partition,
    pub present: Tri,
}

/// The summands of `u_p ⊗ u_q`: `[p⊗q, p□¹q, p⊡¹q, p□²q, …]` with their
/// membership in the table.
pub fn rep_tensor(table: &CategoryTable, p: &Partition, q: &Partition) -> Result<Vec<TensorTerm>, ProjectiveError> {
    for x in [p, q] {
        if !is_projective(x) {
            return Err(ProjectiveError::NotProjective(x.to_text()));
        }
    }
    let t = p.through_blocks().min(q.through_blocks());
    let mut out = vec![TensorTerm { kind: TermKind::Tensor, partition: p.tensor(q), present: Tri::Yes }];
    out[0].present = table.member(&out[0].partition);
    for k in 1..=t {
        for (kind, r) in [(TermKind::Box(k), box_k(p, q, k)), (TermKind::BoxDot(k), boxdot_k(p, q, k))] {
            let present = table.member(&r);
            out.push(TensorTerm { kind, partition: r, present });
        }
    }
    Ok(out)
}

/// `w ⊗ w′ = Σ_{w=az, w′=z̄b} ab + a∗b`.
pub fn word_tensor(s: &SData, w: &FusionWord, w2: &FusionWord) -> SemiringElement {
    let mut out = SemiringElement::default();
    for (_, word) in word_tensor_terms(s, w, w2) {
        if let Some(word) = word {
            out.add_word(word, 1);
        }
    }
    out
}

/// The word predicted for each rep_tensor slot (`None` when the slot is empty).
pub fn word_tensor_terms(s: &SData, w: &FusionWord, w2: &FusionWord) -> Vec<(TermKind, Option<FusionWord>)> {
    let (w, w2) = (s.canonical_word(w), s.canonical_word(w2));
    let (n, m) = (w.len(), w2.len());
    let matches = |j: usize| (0..j).all(|i| w2.0[i] == s.conjugate(w.0[n - 1 - i]));
    let split = |j: usize| (&w.0[..n - j], &w2.0[j..]);
    let concat = |j: usize| {
        let (a, b) = split(j);
        matches(j).then(|| FusionWord(a.iter().chain(b).copied().collect()))
    };
    let fused = |j: usize| {
        let (a, b) = split(j);
        if !matches(j) || a.is_empty() || b.is_empty() {
            return None;
        }
        s.fuse(a[a.len() - 1], b[0]).map(|c| {
            let mut v = a[..a.len() - 1].to_vec();
            v.push(c);
            v.extend_from_slice(&b[1..]);
            FusionWord(v)
        })
    };
    let mut out = vec![(TermKind::Tensor, concat(0))];
    for k in 1..=n.min(m) {
        out.push((TermKind::Box(k), concat(k)));
        out.push((TermKind::BoxDot(k), fused(k - 1)));
    }
    out
}

/// Tensor product of the label representatives.
pub fn phi(s: &SData, w: &FusionWord) -> Partition {
    let reps: Vec<Partition> = w.0.iter().map(|&l| s.canonical(l).representative()).collect();
    Partition::tensor_all(reps.iter())
}

/// Fusion of two labels read off the table: the class of `π_x ⊡ π_y`.
pub fn fuse_direct(table: &CategoryTable, s: &SData, x: Label, y: Label) -> Tri3<Label> {
    let r = boxdot_k(&s.canonical(x).representative(), &s.canonical(y).representative(), 1);
    match table.member(&r) {
        Tri::NoWithinBound => Tri3::Empty,
        Tri::Unknown => Tri3::Unknown,
        Tri::Yes => {
            for l in s.labels() {
                if equivalent(table, &r, &l.representative()) == Tri::Yes {
                    return Tri3::Value(l);
                }
            }
            Tri3::Unknown
        }
    }
}

/// A value, the empty fusion, or no verdict within the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri3<T> {
    Value(T),
    Empty,
    Unknown,
}

impl<T> From<Option<T>> for Tri3<T> {
    fn from(o: Option<T>) -> Self {
        o.map_or(Tri3::Empty, Tri3::Value)
    }
}

/// The fusion equations of the four-element set, in the order of its table.
pub fn cal_s_equations() -> Vec<(Vec<(Label, Label)>, Option<Label>)> {
    use Label::*;
    let (g, gb, a, b) = (K(1), K(-1), ZeroPlus, ZeroMinus);
    vec![
        (vec![(g, gb)], Some(a)),
        (vec![(gb, g)], Some(b)),
        (vec![(a, a)], Some(a)),
        (vec![(b, b)], Some(b)),
        (vec![(g, g), (gb, gb)], None),
        (vec![(a, b), (b, a)], None),
        (vec![(g, a), (gb, b)], None),
        (vec![(g, b), (a, g)], Some(g)),
        (vec![(gb, a), (b, gb)], Some(gb)),
        (vec![(b, g), (a, gb)], None),
    ]
}

/// Checks each fusion equation of the four-element set by direct ⊡ membership.
pub fn verify_cal_s(table: &CategoryTable) -> Vec<(String, bool)> {
    let s = compute_s(table);
    cal_s_equations()
        .into_iter()
        .map(|(pairs, want)| {
            let ok = pairs.iter().all(|&(x, y)| fuse_direct(table, &s, x, y) == Tri3::from(want));
            let lhs: Vec<String> = pairs.iter().map(|&(x, y)| format!("{}*{}", s.name(x), s.name(y))).collect();
            let rhs = want.map_or("empty".to_string(), |l| s.name(l));
            (format!("{} = {}", lhs.join(" = "), rhs), ok)
        })
        .collect()
}

/// Compare rep_tensor of `Φ(w) ⊗ Φ(w′)` with the word product slot by slot.
pub fn tensor_consistency(table: &CategoryTable, s: &SData, w: &FusionWord, w2: &FusionWord) -> Tri {
    let (p, q) = (phi(s, w), phi(s, w2));
    let terms = match rep_tensor(table, &p, &q) {
        Ok(t) => t,
        Err(_) => return Tri::Unknown,
    };
    let predicted = word_tensor_terms(s, w, w2);
    let mut verdict = Tri::Yes;
    for (term, (kind, word)) in terms.iter().zip(predicted) {
        debug_assert_eq!(term.kind, kind);
        let ok = match (term.present, word) {
            (Tri::Unknown, _) => Tri::Unknown,
            (Tri::Yes, Some(word)) => equivalent(table, &term.partition, &phi(s, &word)),
            (Tri::NoWithinBound, None) => Tri::Yes,
            _ => Tri::NoWithinBound,
        };
        verdict = verdict.and(ok);
    }
    verdict
}

/// Every projective member up to `rows` points per row is equivalent to the
/// image of some word.
pub fn phi_surjective(table: &CategoryTable, s: &SData, rows: usize) -> (Tri, Option<Partition>) {
    let ps: Vec<Partition> = (0..=rows)
        .flat_map(all_words)
        .flat_map(|w| projective_nc(&w))
        .filter(|p| table.contains(p))
        .collect();
    let results = par::map(&ps, |p| {
        let mut best = Tri::NoWithinBound;
        for w in s.words(p.through_blocks()) {
            match equivalent(table, p, &phi(s, &w)) {
                Tri::Yes => return Tri::Yes,
                Tri::Unknown => best = Tri::Unknown,
                Tri::NoWithinBound => {}
            }
        }
        best
    });
    let mut verdict = Tri::Yes;
    for (p, r) in ps.iter().zip(results) {
        if r == Tri::NoWithinBound {
            return (Tri::NoWithinBound, Some(p.clone()));
        }
        verdict = verdict.and(r);
    }
    (verdict, None)
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeReport {
    pub verdict: Tri,
    pub witness: Option<Partition>,
    /// no one-line `b` with `b*b` in the table and `b` outside
    pub no_one_dim_witness: Tri,
    pub block_stable: Tri,
    /// Φ respects tensor products on short words and hits every small class
    pub phi_isomorphism: Tri,
    /// every `t = 0` projective member is trivial
    pub no_nontrivial_one_dim: Tri,
    pub agree: bool,
    pub bound: usize,
}

fn t0_members_trivial(table: &CategoryTable, rows: usize) -> (Tri, Option<Partition>) {
    let mut verdict = Tri::Yes;
    for n in 0..=rows {
        for w in all_words(n) {
            for p in projective_nc(&w) {
                if p.through_blocks() != 0 || !table.contains(&p) {
                    continue;
                }
                let e = equivalent(table, &p, &Partition::empty());
                if e == Tri::NoWithinBound {
                    return (e, Some(p));
                }
                verdict = verdict.and(e);
            }
        }
    }
    (verdict, None)
}

/// Block stability and the three conditions equivalent to it.
pub fn is_free(table: &CategoryTable) -> FreeReport {
    let s = compute_s(table);
    let witness = find_blockstability_witness(table);
    let no_witness = Tri::from_bool(witness.is_none());
    let stability = table.is_block_stable();
    let rows = (table.bound() / 2).min(3);
    let mut phi_ok = Tri::Yes;
    'outer: for total in 0..=3usize {
        for a in 0..=total {
            for w in s.words(a) {
                for w2 in s.words(total - a) {
                    phi_ok = phi_ok.and(tensor_consistency(table, &s, &w, &w2));
                    if phi_ok == Tri::NoWithinBound {
                        break 'outer;
                    }
                }
            }
        }
    }
    if phi_ok != Tri::NoWithinBound {
        phi_ok = phi_ok.and(phi_surjective(table, &s, rows).0);
    }
    let (trivial, t0_witness) = t0_members_trivial(table, rows);
    let conds = [no_witness, stability.verdict, phi_ok, trivial];
    let agree = conds.iter().all(|c| c.is_yes()) || conds.iter().all(|c| !c.is_yes());
    FreeReport {
        verdict: stability.verdict,
        witness: witness.or(t0_witness.map(|p| upper_building(&p))),
        no_one_dim_witness: no_witness,
        block_stable: stability.verdict,
        phi_isomorphism: phi_ok,
        no_nontrivial_one_dim: trivial,
        agree,
        bound: table.bound(),
    }
}

/// `J(C)` up to `|k| ≤ bound/2`.
#[derive(Clone, Debug, Serialize)]
pub struct JData {
    pub members: Vec<i64>,
    /// smallest positive element, 0 if none within the horizon
    pub n: i64,
    pub description: String,
}

pub fn compute_j(table: &CategoryTable, i: IClass) -> JData {
    let h = (table.bound() / 2) as i64;
    let members: Vec<i64> = (-h..=h).filter(|&k| table.contains(&Partition::beta(k))).collect();
    let n = members.iter().copied().filter(|&k| k > 0).min().unwrap_or(0);
    let description = match i {
        IClass::Zstar => format!("{n}Z"),
        IClass::PlusMinusOne => {
            let parts: Vec<String> = members.iter().map(|k| k.to_string()).collect();
            format!("{{{}}}", parts.join(","))
        }
    };
    JData { members, n, description }
}

/// `G(C) = ℤ_d`; `order: None` when no finite order was found within the bound.
#[derive(Clone, Debug)]
pub struct GClass {
    pub order: Option<usize>,
    /// `β_k` whose tensor powers realize the group
    pub generator: Option<i64>,
    pub horizon: usize,
}

impl GClass {
    pub fn is_trivial(&self) -> bool {
        self.order == Some(1)
    }

    /// Representatives `β_g^{⊗m}` for `m < d`.
    pub fn elements(&self) -> Option<Vec<Partition>> {
        let d = self.order?;
        let g = self.generator.unwrap_or(0);
        Some((0..d).map(|m| Partition::tensor_all(vec![Partition::beta(g); m].iter())).collect())
    }
}

impl Serialize for GClass {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut m = ser.serialize_map(None)?;
        match self.order {
            Some(d) => m.serialize_entry("order", &d)?,
            None => m.serialize_entry("order", "inf")?,
        }
        if !self.is_trivial() {
            if let Some(g) = self.generator {
                m.serialize_entry("generator", &format!("beta{g}"))?;
            }
        }
        m.end()
    }
}

fn theta_power(s: usize, k: usize) -> Partition {
    Partition::tensor_all(vec![Partition::theta(s); k].iter())
}

pub fn compute_g(table: &CategoryTable, s: &SData, j: &JData) -> GClass {
    let bound = table.bound();
    let horizon = bound;
    match s.i {
        IClass::Zstar => {
            let order = if j.n == 0 {
                Some(1)
            } else {
                match s.class {
                    SClass::Zs(Some(m)) => Some(m / j.n as usize),
                    _ => None,
                }
            };
            GClass { order, generator: Some(j.n), horizon }
        }
        IClass::PlusMinusOne => {
            let gen = if j.members.contains(&1) {
                1
            } else if j.members.contains(&2) {
                2
            } else {
                return GClass { order: Some(1), generator: None, horizon };
            };
            let order = (1..=bound / gen).find(|&k| table.contains(&theta_power(gen, k)));
            GClass { order, generator: Some(gen as i64), horizon }
        }
    }
}

pub fn is_g_finite(table: &CategoryTable, g: &GClass) -> Tri {
    if g.order.is_some() {
        return Tri::Yes;
    }
    let b = table.bound();
    let found = (1..=b).any(|s| (1..=b / s).any(|k| table.contains(&theta_power(s, k))));
    Tri::from_bool(found)
}

/// Injectivity of Φ on words up to `len`: distinct words never map to
/// equivalent partitions.
#[derive(Clone, Debug, Serialize)]
pub struct InjectivityReport {
    pub words: usize,
    pub pairs: usize,
    pub collisions: Vec<(FusionWord, FusionWord)>,
    pub unknown: usize,
    pub verdict: Tri,
}

pub fn phi_injectivity_check(table: &CategoryTable, len: usize) -> InjectivityReport {
    let s = compute_s(table);
    let mut words = 0;
    let mut jobs = Vec::new();
    for n in 0..=len {
        let ws = s.words(n);
        words += ws.len();
        for i in 0..ws.len() {
            for j in i + 1..ws.len() {
                jobs.push((ws[i].clone(), ws[j].clone()));
            }
        }
    }
    let res = par::map(&jobs, |(a, b)| equivalent(table, &phi(&s, a), &phi(&s, b)));
    let mut collisions = Vec::new();
    let mut unknown = 0;
    for ((a, b), r) in jobs.iter().zip(res) {
        match r {
            Tri::Yes => collisions.push((a.clone(), b.clone())),
            Tri::Unknown => unknown += 1,
            Tri::NoWithinBound => {}
        }
    }
    let verdict = if !collisions.is_empty() {
        Tri::NoWithinBound
    } else if unknown > 0 {
        Tri::Unknown
    } else {
        Tri::Yes
    };
    InjectivityReport { words, pairs: jobs.len(), collisions, unknown, verdict }
}

/// The whole classification in the shape emitted by `classify`.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    #[serde(rename = "I")]
    pub i: IClass,
    #[serde(rename = "S")]
    pub s: SClass,
    #[serde(rename = "J")]
    pub j: String,
    #[serde(rename = "G")]
    pub g: GClass,
    pub free: bool,
    pub bound: usize,
}

pub fn classify(table: &CategoryTable) -> Classification {
    let s = compute_s(table);
    let j = compute_j(table, s.i);
    let g = compute_g(table, &s, &j);
    let free = table.is_block_stable().verdict == Tri::Yes;
    Classification { i: s.i, s: s.class, j: j.description, g, free, bound: table.bound() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SubringCase {
    GTrivial,
    OrthogonalTimesZ2,
    CalSWithJ,
    PlusMinusWithJ,
    NotEmbedding,
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubringReport {
    pub case: SubringCase,
    pub beta1: Tri,
    pub beta2: Tri,
    pub theta2: Tri,
    pub one_sim_minus_one: Tri,
    pub s: SClass,
    pub j: String,
    pub phi_tensor: Tri,
}

/// Which alternative of the subring classification the data supports.
pub fn subring_case_report(table: &CategoryTable) -> SubringReport {
    let s = compute_s(table);
    let j = compute_j(table, s.i);
    let g = compute_g(table, &s, &j);
    let mut phi_tensor = Tri::Yes;
    for total in 0..=2usize {
        for a in 0..=total {
            for w in s.words(a) {
                for w2 in s.words(total - a) {
                    phi_tensor = phi_tensor.and(tensor_consistency(table, &s, &w, &w2));
                }
            }
        }
    }
    let beta1 = table.member(&Partition::beta(1));
    let beta2 = table.member(&Partition::beta(2));
    let theta2 = table.member(&Partition::theta(2));
    let case = if phi_tensor == Tri::NoWithinBound {
        SubringCase::NotEmbedding
    } else if g.is_trivial() {
        SubringCase::GTrivial
    } else if beta2 == Tri::Yes || s.one_sim_minus_one == Tri::Yes {
        SubringCase::OrthogonalTimesZ2
    } else if j.members == [-1, 0, 1] {
        match s.class {
            SClass::CalS => SubringCase::CalSWithJ,
            SClass::PlusMinus => SubringCase::PlusMinusWithJ,
            _ => SubringCase::Undetermined,
        }
    } else {
        SubringCase::Undetermined
    };
    SubringReport { case, beta1, beta2, theta2, one_sim_minus_one: s.one_sim_minus_one, s: s.class, j: j.description, phi_tensor }
}

#[derive(Clone, Debug, Serialize)]
pub struct RingGenReport {
    pub classes: usize,
    pub reached: usize,
    pub unreached: Vec<String>,
}

/// Replays the induction on `t`: every class with `t ≤ t_bound` (up to three
/// points per row) splits into members `B_0 ⊗ A_1 ⊗ … ⊗ B_t`, each `A_i` is
/// equivalent to a `t = 0` part times an `S`-label, and each `t = 0` part is a
/// `G`-element.
pub fn ring_generation_verify(table: &CategoryTable, t_bound: usize) -> RingGenReport {
    let s = compute_s(table);
    let j = compute_j(table, s.i);
    let g = compute_g(table, &s, &j);
    let g_elems = g.elements().unwrap_or_else(|| vec![Partition::empty()]);
    let rows = (table.bound() / 2).min(3);
    let ps: Vec<Partition> = (0..=rows)
        .flat_map(all_words)
        .flat_map(|w| projective_nc(&w))
        .filter(|p| p.through_blocks() <= t_bound && table.contains(p))
        .collect();
    // classes by equivalence
    let mut uf = UnionFind::new(ps.len());
    for a in 0..ps.len() {
        for b in a + 1..ps.len() {
            if ps[a].through_blocks() == ps[b].through_blocks() && equivalent(table, &ps[a], &ps[b]) == Tri::Yes {
                uf.union(a, b);
            }
        }
    }
    let mut reps: BTreeMap<usize, usize> = BTreeMap::new();
    for a in 0..ps.len() {
        reps.entry(uf.find(a)).or_insert(a);
    }
    let is_g = |b: &Partition| g_elems.iter().any(|e| equivalent(table, b, e) == Tri::Yes);
    let is_s = |a: &Partition| s.labels().iter().any(|l| equivalent(table, a, &l.representative()) == Tri::Yes);
    let mut unreached = Vec::new();
    for &a in reps.values() {
        let p = &ps[a];
        let ok = factorize(p).is_ok_and(|parts| {
            parts.iter().all(|x| table.contains(x))
                && parts.iter().enumerate().all(|(i, x)| {
                    if i % 2 == 0 {
                        is_g(x)
                    } else {
                        to_elementary(table, x).is_ok_and(|(b, hat)| is_g(&b) && is_s(&hat))
                    }
                })
        });
        if !ok {
            unreached.push(p.to_text());
        }
    }
    RingGenReport { classes: reps.len(), reached: reps.len() - unreached.len(), unreached }
}

/// One-dimensional `t = 0` projective classes are `β_l^{⊗m}` or `β_{-l}^{⊗m}`.
pub fn beta_power(l: i64, m: usize) -> Partition {
    Partition::tensor_all(vec![Partition::beta(l); m].iter())
}
