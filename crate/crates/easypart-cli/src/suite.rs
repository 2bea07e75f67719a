//! Cross-module invariant checks behind `verify`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use easypart::category::{all_lines, CategorySpec};
use easypart::fusion::{compute_s, phi_injectivity_check, tensor_consistency};
use easypart::linmap::{gram_rank, is_partial_isometry, projection_p, verify_counting, verify_direct_sum, verify_functoriality};
use easypart::partition::{all_words, compose, enumerate, Corner};
use easypart::projective::{equivalent, projective_members};
use easypart::reps::{ball_count, dim_general};
use easypart::{CategoryTable, Color, FamilyTag, Partition, Tri};

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failure: Option<String>,
}

struct Acc {
    name: &'static str,
    cases: usize,
    failure: Option<String>,
}

impl Acc {
    fn new(name: &'static str) -> Self {
        Acc { name, cases: 0, failure: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn done(self) -> Check {
        Check { name: self.name.to_string(), passed: self.failure.is_none(), cases: self.cases, failure: self.failure }
    }
}

const SUITES: [&str; 6] = ["partition", "category", "counting", "linmap", "fusion", "reps"];

/// Every partition with at most `max` points, all colorings.
fn all_small(max: usize, noncrossing: bool) -> Vec<Partition> {
    let mut out = Vec::new();
    for n in 0..=max {
        for k in 0..=n {
            for w in all_words(k) {
                for w2 in all_words(n - k) {
                    out.extend(enumerate(&w, &w2, noncrossing).unwrap());
                }
            }
        }
    }
    out
}

fn families(bound: usize) -> Vec<(String, CategoryTable)> {
    [FamilyTag::AllNC, FamilyTag::Pairs, FamilyTag::Cs(2), FamilyTag::Unitary]
        .into_iter()
        .map(|t| (t.to_string(), CategoryTable::family(t, bound).unwrap()))
        .collect()
}

fn partition_suite(seed: u64) -> Vec<Check> {
    let ps = all_small(4, false);
    let mut inv = Acc::new("partition.involutions");
    for p in &ps {
        inv.check(p.adjoint().adjoint() == *p, || format!("adjoint {p}"));
        inv.check(p.reverse().reverse() == *p, || format!("reverse {p}"));
        let mut r = p.clone();
        for _ in 0..p.len() {
            r = r.rotate_step();
        }
        inv.check(r == *p, || format!("rotation {p}"));
        if p.upper_len() > 0 {
            let back = p.rotate(Corner::UpperLeft).and_then(|x| x.rotate(Corner::LowerLeft));
            inv.check(back.as_ref() == Ok(p), || format!("corner round trip {p}"));
        }
    }
    let small = all_small(2, false);
    let mut assoc = Acc::new("partition.tensor_associativity");
    for a in &small {
        for b in &small {
            for c in &small {
                assoc.check(a.tensor(b).tensor(c) == a.tensor(&b.tensor(c)), || format!("{a} {b} {c}"));
            }
        }
    }
    // random composable noncrossing pairs
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nc = Acc::new("partition.compose_noncrossing");
    let mut mid = Acc::new("partition.compose_associativity");
    let nc3 = all_small(6, true);
    let by_upper = |w: &[Color]| -> Vec<&Partition> { nc3.iter().filter(|x| x.upper_colors() == w && x.lower_len() <= 3).collect() };
    for _ in 0..300 {
        let p = nc3.choose(&mut rng).unwrap();
        let qs = by_upper(p.lower_colors());
        let Some(q) = qs.choose(&mut rng) else { continue };
        let (qp, _) = compose(q, p).unwrap();
        nc.check(qp.is_noncrossing(), || format!("{q} ∘ {p}"));
        let rs = by_upper(q.lower_colors());
        if let Some(r) = rs.choose(&mut rng) {
            let left = compose(r, &qp).unwrap();
            let (rq, l1) = compose(r, q).unwrap();
            let right = compose(&rq, p).unwrap();
            mid.check(left.0 == right.0 && left.1 + compose(q, p).unwrap().1 == right.1 + l1, || format!("{r} {q} {p}"));
        }
    }
    vec![inv.done(), assoc.done(), nc.done(), mid.done()]
}

fn category_suite(bound: usize) -> Vec<Check> {
    let mut acc = Acc::new("category.saturation_matches_oracle");
    let b = bound.min(8);
    for tag in [FamilyTag::AllNC, FamilyTag::Pairs, FamilyTag::Unitary, FamilyTag::Cs(2), FamilyTag::Cs(3), FamilyTag::Cinf] {
        let sat = CategoryTable::saturate(CategorySpec::new(tag.generators(), b)).unwrap();
        let orc = CategoryTable::family(tag, b).unwrap();
        for n in 0..=b {
            for x in all_lines(n, true) {
                acc.check(sat.contains(&x) == orc.contains(&x), || format!("{tag}: {x}"));
            }
        }
    }
    let mut eq = Acc::new("projective.equivalence_relation");
    for (name, t) in families(bound) {
        let ps: Vec<Partition> = (0..=2).flat_map(all_words).flat_map(|w| projective_members(&t, &w)).collect();
        for a in &ps {
            eq.check(equivalent(&t, a, a) == Tri::Yes, || format!("{name}: reflexive {a}"));
            for b2 in &ps {
                let ab = equivalent(&t, a, b2);
                eq.check(ab == equivalent(&t, b2, a), || format!("{name}: symmetric {a} {b2}"));
                if ab == Tri::Yes {
                    eq.check(a.stats().t == b2.stats().t, || format!("{name}: t differs {a} {b2}"));
                    for c in &ps {
                        if equivalent(&t, b2, c) == Tri::Yes {
                            eq.check(equivalent(&t, a, c) == Tri::Yes, || format!("{name}: transitive {a} {b2} {c}"));
                        }
                    }
                }
            }
        }
    }
    vec![acc.done(), eq.done()]
}

fn counting_suite(bound: usize) -> Vec<Check> {
    let mut acc = Acc::new("counting.sum_of_squares");
    for (name, t) in families(bound) {
        for n in 0..=2 {
            for w in all_words(n) {
                let r = verify_counting(&t, &w);
                acc.check(r.holds, || format!("{name} {w:?}: {} vs {}", r.members, r.sum_of_squares));
            }
        }
    }
    vec![acc.done()]
}

fn linmap_suite(n: u64, bound: usize) -> Vec<Check> {
    let nc = all_small(4, true);
    let mut iso = Acc::new("linmap.partial_isometry");
    for p in &nc {
        iso.check(is_partial_isometry(p, n).unwrap_or(false), || p.to_text());
    }
    let mut fun = Acc::new("linmap.functoriality");
    let rows2: Vec<&Partition> = nc.iter().filter(|p| p.upper_len() <= 2 && p.lower_len() <= 2).collect();
    for p in &rows2 {
        for q in &rows2 {
            if p.upper_colors() != q.lower_colors() {
                continue;
            }
            match verify_functoriality(p, q, n) {
                Ok(r) => fun.check(r.adjoint && r.tensor && r.composition != Some(false), || format!("{p} ∘ {q}")),
                Err(e) => fun.check(false, || format!("{p} ∘ {q}: {e}")),
            }
        }
    }
    let mut gram = Acc::new("linmap.gram_full_rank");
    for total in 0..=4 {
        for k in 0..=total {
            for w in all_words(k) {
                for w2 in all_words(total - k) {
                    let ps = enumerate(&w, &w2, true).unwrap();
                    let g = gram_rank(&ps, n);
                    gram.check(g.rank == ps.len(), || format!("{w:?} {w2:?}: {} of {}", g.rank, ps.len()));
                }
            }
        }
    }
    let mut ds = Acc::new("linmap.direct_sum");
    for tag in [FamilyTag::AllNC, FamilyTag::Pairs] {
        let t = CategoryTable::family(tag, bound).unwrap();
        for k in 1..=2 {
            for w in all_words(k) {
                match verify_direct_sum(&t, &w, n) {
                    Ok(r) => ds.check(r.holds, || format!("{tag} {w:?}: {} vs {}", r.total, r.expected)),
                    Err(e) => ds.check(false, || format!("{tag} {w:?}: {e}")),
                }
            }
        }
    }
    vec![iso.done(), fun.done(), gram.done(), ds.done()]
}

fn fusion_suite(bound: usize) -> Vec<Check> {
    let mut tc = Acc::new("fusion.tensor_consistency");
    let mut inj = Acc::new("fusion.phi_injectivity");
    for (name, t) in families(bound) {
        let s = compute_s(&t);
        for a in 0..=2 {
            for b in 0..=2 - a {
                for w in s.words(a) {
                    for w2 in s.words(b) {
                        tc.check(tensor_consistency(&t, &s, &w, &w2) == Tri::Yes, || format!("{name}: {w} ⊗ {w2}"));
                    }
                }
            }
        }
        let r = phi_injectivity_check(&t, 2);
        inj.check(r.verdict == Tri::Yes, || format!("{name}: {:?}", r.collisions));
    }
    vec![tc.done(), inj.done()]
}

fn reps_suite(n: u64, bound: usize) -> Vec<Check> {
    let mut dims = Acc::new("reps.dim_equals_rank");
    for (name, t) in families(bound) {
        for k in 0..=2 {
            for w in all_words(k) {
                for p in projective_members(&t, &w) {
                    let rank = projection_p(&t, &p, n).map(|x| x.rank as i128);
                    let d = dim_general(&t, &p, n);
                    dims.check(rank == Ok(d), || format!("{name} {p}: {d} vs {rank:?}"));
                }
            }
        }
    }
    let mut balls = Acc::new("reps.ball_bounds");
    for tag in [FamilyTag::Pairs, FamilyTag::Unitary, FamilyTag::Cs(2)] {
        let t = CategoryTable::family(tag, bound).unwrap();
        for k in 0..=2 {
            match ball_count(&t, k, None) {
                Ok(b) => balls.check(b.lower_bound <= b.count && b.count <= b.upper_bound, || format!("{tag} k={k}: {b:?}")),
                Err(e) => balls.check(false, || format!("{tag} k={k}: {e}")),
            }
        }
    }
    vec![dims.done(), balls.done()]
}

/// Checks on the category chosen with `--family` or `--gen`. Crossing
/// categories at small `N` legitimately fail the Gram check.
fn family_suite(t: &CategoryTable, n: u64) -> Vec<Check> {
    let mut gram = Acc::new("family.gram_full_rank");
    for total in 0..=4.min(t.bound()) {
        for k in 0..=total {
            for w in all_words(k) {
                for w2 in all_words(total - k) {
                    let ps = t.members_in(&w, &w2).unwrap();
                    let g = gram_rank(&ps, n);
                    gram.check(g.rank == ps.len(), || format!("{w:?} {w2:?}: {} of {}", g.rank, ps.len()));
                }
            }
        }
    }
    let mut count = Acc::new("family.sum_of_squares");
    // the identity concerns noncrossing categories only
    let rows = if t.is_noncrossing() { 2.min(t.bound() / 2) } else { 0 };
    for k in 1..=rows {
        for w in all_words(k) {
            let r = verify_counting(t, &w);
            count.check(r.holds, || format!("{w:?}: {} vs {}", r.members, r.sum_of_squares));
        }
    }
    vec![gram.done(), count.done()]
}

pub fn run(suite: &str, n: u64, bound: usize, seed: u64, table: Option<&CategoryTable>) -> Result<Vec<Check>, String> {
    if n < 1 {
        return Err("--N must be at least 1".into());
    }
    if !(4..=12).contains(&bound) {
        return Err(format!("--bound {bound} must lie in 4..=12 for verify"));
    }
    if suite == "family" && table.is_none() {
        return Err("--suite family needs --family or --gen".into());
    }
    let selected: Vec<&str> = match suite {
        "all" => SUITES.iter().copied().chain(table.map(|_| "family")).collect(),
        "family" => vec!["family"],
        s if SUITES.contains(&s) => vec![s],
        s => return Err(format!("--suite {s:?}: expected all, family or one of {}", SUITES.join(", "))),
    };
    let mut out = Vec::new();
    for s in selected {
        out.extend(match s {
            "partition" => partition_suite(seed),
            "category" => category_suite(bound),
            "counting" => counting_suite(bound),
            "linmap" => linmap_suite(n, bound),
            "fusion" => fusion_suite(bound),
            "family" => family_suite(table.expect("checked above"), n),
            _ => reps_suite(n, bound),
        });
    }
    Ok(out)
}
