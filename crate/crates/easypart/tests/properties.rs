use proptest::prelude::*;

use easypart::category::{CategorySpec, CategoryTable, FamilyTag};
use easypart::linmap::{gram_rank, is_partial_isometry, projection_p};
use easypart::partition::{compose, enumerate};
use easypart::projective::{equivalent, projective_members};
use easypart::reps::{ball_count, dim_general};
use easypart::{Color, Partition, Tri};

fn word(bits: u32, n: usize) -> Vec<Color> {
    (0..n).map(|i| if bits >> i & 1 == 1 { Color::Black } else { Color::White }).collect()
}

/// A partition from `upper` to `lower`, picked by `idx` among all of them.
fn pick(upper: &[Color], lower: &[Color], nc: bool, idx: usize) -> Partition {
    let all = enumerate(upper, lower, nc).unwrap();
    all[idx % all.len()].clone()
}

fn any_partition(max_row: usize, nc: bool) -> impl Strategy<Value = Partition> {
    (0..=max_row, 0..=max_row, any::<u32>(), any::<u32>(), any::<usize>())
        .prop_map(move |(k, l, a, b, i)| pick(&word(a, k), &word(b, l), nc, i))
}

/// Composable noncrossing triple `p: a → b`, `q: b → c`, `r: c → d`.
fn nc_chain() -> impl Strategy<Value = (Partition, Partition, Partition)> {
    (0..=3usize, 0..=3usize, 0..=3usize, 0..=3usize, any::<[u32; 4]>(), any::<[usize; 3]>()).prop_map(
        |(a, b, c, d, w, i)| {
            let (wa, wb, wc, wd) = (word(w[0], a), word(w[1], b), word(w[2], c), word(w[3], d));
            (pick(&wa, &wb, true, i[0]), pick(&wb, &wc, true, i[1]), pick(&wc, &wd, true, i[2]))
        },
    )
}

/// Middle-row components of `q ∘ p`, counted by a fresh union-find.
fn loops_oracle(q: &Partition, p: &Partition) -> usize {
    let (k, m, l) = (p.upper_len(), p.lower_len(), q.lower_len());
    // nodes: p upper 0..k, middle k..k+m, q lower k+m..k+m+l
    let n = k + m + l;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(par: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while par[x] != x {
            par[x] = par[par[x]];
            x = par[x];
        }
        x
    }
    let join = |a: usize, b: usize, par: &mut Vec<usize>| {
        let (ra, rb) = (find(par, a), find(par, b));
        par[ra] = rb;
    };
    for (part, map) in [(p, (0..k + m).collect::<Vec<_>>()), (q, (k..n).collect())] {
        for b in part.blocks() {
            for w in b.windows(2) {
                join(map[w[0]], map[w[1]], &mut parent);
            }
        }
    }
    let outer: std::collections::HashSet<usize> =
        (0..k).chain(k + m..n).map(|x| find(&mut parent, x)).collect();
    let mid: std::collections::HashSet<usize> = (k..k + m).map(|x| find(&mut parent, x)).collect();
    mid.difference(&outer).count()
}

fn table(i: usize) -> CategoryTable {
    let tags = [FamilyTag::AllNC, FamilyTag::Pairs, FamilyTag::Unitary, FamilyTag::Cs(2), FamilyTag::Cs(3)];
    CategoryTable::family(tags[i % tags.len()], 8).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn involutions(p in any_partition(3, false)) {
        prop_assert_eq!(p.adjoint().adjoint(), p.clone());
        prop_assert_eq!(p.reverse().reverse(), p.clone());
        let mut r = p.clone();
        for _ in 0..p.len() {
            r = r.rotate_step();
        }
        prop_assert_eq!(r, p);
    }

    #[test]
    fn tensor_associative_with_unit(a in any_partition(2, false), b in any_partition(2, false), c in any_partition(2, false)) {
        prop_assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
        prop_assert_eq!(a.tensor(&Partition::empty()), a.clone());
        prop_assert_eq!(Partition::empty().tensor(&a), a);
    }

    #[test]
    fn composition_closed_and_associative((p, q, r) in nc_chain()) {
        let (qp, l1) = compose(&q, &p).unwrap();
        prop_assert!(qp.is_noncrossing());
        prop_assert_eq!(l1, loops_oracle(&q, &p));
        let (left, l2) = compose(&r, &qp).unwrap();
        let (rq, l3) = compose(&r, &q).unwrap();
        let (right, l4) = compose(&rq, &p).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(l1 + l2, l3 + l4);
    }

    #[test]
    fn loops_match_union_find(p in any_partition(3, false), i in any::<usize>(), l in 0..=3usize, b in any::<u32>()) {
        let q = pick(p.lower_colors(), &word(b, l), false, i);
        prop_assert_eq!(compose(&q, &p).unwrap().1, loops_oracle(&q, &p));
    }

    #[test]
    fn text_and_json_round_trip(p in any_partition(4, false)) {
        let back: Partition = p.to_text().parse().unwrap();
        prop_assert_eq!(&back, &p);
        let json = serde_json::to_string(&p).unwrap();
        let back: Partition = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn maps_are_partial_isometries(p in any_partition(3, true), n in 2u64..=5) {
        prop_assert!(is_partial_isometry(&p, n).unwrap());
    }

    #[test]
    fn gram_is_nonsingular(k in 0..=2usize, l in 0..=2usize, a in any::<u32>(), b in any::<u32>(), n in 4u64..=6) {
        let ps = enumerate(&word(a, k), &word(b, l), true).unwrap();
        prop_assert_eq!(gram_rank(&ps, n).rank, ps.len());
    }

    #[test]
    fn equivalence_symmetric_and_keeps_t(ti in 0..5usize, k in 0..=2usize, a in any::<u32>(), i in any::<usize>(), j in any::<usize>()) {
        let t = table(ti);
        let ps = projective_members(&t, &word(a, k));
        prop_assume!(!ps.is_empty());
        let (p, q) = (&ps[i % ps.len()], &ps[j % ps.len()]);
        let pq = equivalent(&t, p, q);
        prop_assert_eq!(pq, equivalent(&t, q, p));
        if pq == Tri::Yes {
            prop_assert_eq!(p.through_blocks(), q.through_blocks());
        }
    }

    #[test]
    fn dimension_is_rank(ti in 0..5usize, k in 0..=3usize, a in any::<u32>(), i in any::<usize>(), n in 4u64..=5) {
        let t = table(ti);
        let ps = projective_members(&t, &word(a, k));
        prop_assume!(!ps.is_empty());
        let p = &ps[i % ps.len()];
        let rank = projection_p(&t, p, n).unwrap().rank as i128;
        prop_assert_eq!(dim_general(&t, p, n), rank);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn balls_within_bounds(ti in 0..5usize, k in 0..=2usize) {
        let t = table(ti);
        match ball_count(&t, k, None) {
            Ok(b) => prop_assert!(b.lower_bound <= b.count && b.count <= b.upper_bound, "{:?}", b),
            Err(_) => prop_assert_eq!(ti, 0),
        }
    }
}

#[test]
fn sequential_and_parallel_saturation_agree() {
    let gens = vec![Partition::pi(2), Partition::theta(3)];
    let par = CategoryTable::saturate(CategorySpec::new(gens.clone(), 7)).unwrap();
    easypart::par::set_sequential(true);
    let seq = CategoryTable::saturate(CategorySpec::new(gens, 7)).unwrap();
    easypart::par::set_sequential(false);
    assert_eq!(par.line_members(7), seq.line_members(7));
}
