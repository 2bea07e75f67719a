//! Exhaustive scans of structural invariants on small cases.

use easypart::category::{CategorySpec, CategoryTable, FamilyTag};
use easypart::fusion::{beta_power, box_k, boxdot_k, compute_s, word_tensor, FusionWord, SemiringElement};
use easypart::partition::{all_words, compose, enumerate};
use easypart::projective::{equivalent, fillers, is_projective, projective_members, stack, tensor_pieces};
use easypart::reps::{character_pushforward, chebyshev_dim, dim_general, length};
use easypart::{Color, Partition, Tri};

fn nc_with(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for k in 0..=n {
        for w in all_words(k) {
            for w2 in all_words(n - k) {
                out.extend(enumerate(&w, &w2, true).unwrap());
            }
        }
    }
    out
}

fn tables() -> Vec<(String, CategoryTable)> {
    let t1 = Partition::theta(1);
    let mut v: Vec<(String, CategoryTable)> =
        [FamilyTag::AllNC, FamilyTag::Pairs, FamilyTag::Unitary, FamilyTag::Cs(2), FamilyTag::Cs(3), FamilyTag::Cinf]
            .into_iter()
            .map(|t| (t.to_string(), CategoryTable::family(t, 8).unwrap()))
            .collect();
    v.push(("theta pair".into(), CategoryTable::saturate(CategorySpec::new(vec![t1.tensor(&t1)], 8)).unwrap()));
    v
}

fn members_upto(t: &CategoryTable, rows: usize) -> Vec<Partition> {
    (0..=rows).flat_map(all_words).flat_map(|w| projective_members(t, &w)).collect()
}

#[test]
fn star_products_are_projective() {
    for n in 0..=6 {
        for p in nc_with(n) {
            let (r, _) = compose(&p.adjoint(), &p).unwrap();
            assert!(is_projective(&r), "{p}");
        }
    }
}

#[test]
fn projective_iff_star_square() {
    for n in 0..=3 {
        for w in all_words(n) {
            let squares: std::collections::HashSet<Partition> = (0..=3)
                .flat_map(all_words)
                .flat_map(|m| enumerate(&w, &m, true).unwrap())
                .map(|r| compose(&r.adjoint(), &r).unwrap().0)
                .collect();
            for p in enumerate(&w, &w, true).unwrap() {
                assert_eq!(is_projective(&p), squares.contains(&p), "{p}");
            }
        }
    }
}

#[test]
fn rotation_keeps_blocks() {
    for n in 1..=5 {
        for p in nc_with(n) {
            let r = p.rotate_step();
            let mut a: Vec<usize> = p.blocks().iter().map(|b| b.len()).collect();
            let mut b: Vec<usize> = r.blocks().iter().map(|b| b.len()).collect();
            a.sort();
            b.sort();
            assert_eq!(a, b, "{p}");
            assert_eq!(r.is_noncrossing(), p.is_noncrossing());
        }
    }
}

#[test]
fn stacked_fillers_are_members() {
    for (name, t) in tables() {
        for p in members_upto(&t, 4) {
            for piece in tensor_pieces(&p) {
                if piece.through_blocks() > 1 {
                    continue;
                }
                for b in fillers(&piece) {
                    assert_eq!(t.member(&stack(&b)), Tri::Yes, "{name}: filler {b} of {p}");
                }
            }
        }
    }
}

/// A full-depth box that is trivial forces conjugate classes. Mere membership
/// is not enough: with θ1⊗θ1 the box splits as r ⊗ r' with neither factor in C.
#[test]
fn box_at_full_depth_gives_conjugate() {
    let mut split = Vec::new();
    for (name, t) in tables() {
        let ps = members_upto(&t, 3);
        for p in &ps {
            let tp = p.through_blocks();
            if tp == 0 {
                continue;
            }
            for q in ps.iter().filter(|q| q.through_blocks() == tp) {
                if p.upper_len() + q.upper_len() > 5 {
                    continue;
                }
                let r = box_k(p, q, tp);
                if t.member(&r) != Tri::Yes {
                    continue;
                }
                let conj = equivalent(&t, q, &p.reverse());
                if equivalent(&t, &r, &Partition::empty()) == Tri::Yes {
                    assert_eq!(conj, Tri::Yes, "{name}: {p} {q}");
                } else if conj != Tri::Yes {
                    split.push(format!("{name}: {p} {q}"));
                }
            }
        }
    }
    assert!(split.iter().all(|s| s.starts_with("theta pair")), "{split:?}");
    assert!(split.contains(&"theta pair: 1,1|ww|0 1 2,2|bwbw|0 2;1;3".to_string()), "{split:?}");
}

#[test]
fn boxdot_respects_equivalence() {
    for (name, t) in tables() {
        let ps: Vec<Partition> = members_upto(&t, 2).into_iter().filter(|p| p.through_blocks() >= 1).collect();
        for a in &ps {
            for b in &ps {
                let ab = boxdot_k(a, b, 1);
                if t.member(&ab) != Tri::Yes {
                    continue;
                }
                for a2 in ps.iter().filter(|x| equivalent(&t, a, x) == Tri::Yes) {
                    for b2 in ps.iter().filter(|x| equivalent(&t, b, x) == Tri::Yes) {
                        let ab2 = boxdot_k(a2, b2, 1);
                        assert_eq!(t.member(&ab2), Tri::Yes, "{name}: {a2} ⊡ {b2}");
                        assert_eq!(equivalent(&t, &ab, &ab2), Tri::Yes, "{name}: {ab} vs {ab2}");
                    }
                }
            }
        }
    }
}

#[test]
fn one_dimensional_classes_are_beta_powers() {
    for (name, t) in tables() {
        for p in members_upto(&t, 4).into_iter().filter(|p| p.through_blocks() == 0) {
            let hit = (1..=4i64).any(|l| {
                (0..=4usize).any(|m| {
                    [beta_power(l, m), beta_power(-l, m)].iter().any(|b| equivalent(&t, &p, b) == Tri::Yes)
                })
            });
            assert!(hit, "{name}: {p}");
        }
    }
}

#[test]
fn color_blind_tables_ignore_colors() {
    let mixed = Partition::one_block(&[Color::White], &[Color::Black]);
    let t1 = Partition::theta(1);
    let t = CategoryTable::saturate(CategorySpec::new(vec![mixed, t1.tensor(&t1)], 6)).unwrap();
    assert_eq!(t.is_color_blind(), Tri::Yes);
    for x in t.line_members(6) {
        for i in 0..x.len() {
            let mut cs = x.colors().to_vec();
            cs[i] = cs[i].flip();
            let y = Partition::from_labels(x.upper_len(), x.lower_len(), cs, x.labels());
            assert_eq!(t.member(&y), Tri::Yes, "{x} at {i}");
        }
    }
}

#[test]
fn word_tensor_is_associative_and_conjugation_reverses() {
    for (name, t) in tables() {
        let s = compute_s(&t);
        let words: Vec<FusionWord> = (0..=3).flat_map(|n| s.words(n)).collect();
        let single = |w: &FusionWord| {
            let mut e = SemiringElement::default();
            e.add_word(w.clone(), 1);
            e
        };
        for a in words.iter().filter(|w| w.len() <= 1) {
            for b in words.iter().filter(|w| w.len() + a.len() <= 2) {
                for c in words.iter().filter(|w| w.len() + a.len() + b.len() <= 3) {
                    let left = word_tensor(&s, a, b).tensor(&single(c), &s);
                    let right = single(a).tensor(&word_tensor(&s, b, c), &s);
                    assert_eq!(left, right, "{name}: {a} {b} {c}");
                }
            }
        }
        for a in &words {
            for b in words.iter().filter(|w| w.len() + a.len() <= 3) {
                let lhs = word_tensor(&s, a, b).conjugate(&s);
                let rhs = word_tensor(&s, &b.conjugate(&s), &a.conjugate(&s));
                assert_eq!(lhs, rhs, "{name}: {a} {b}");
            }
        }
    }
}

#[test]
fn pushforward_sums_to_dimension_and_length_is_a_class_function() {
    for (name, t) in tables() {
        let ps = members_upto(&t, 3);
        for p in &ps {
            let sum: i128 = character_pushforward(&t, p).into_iter().map(|x| chebyshev_dim(x, 5)).sum();
            assert_eq!(sum, dim_general(&t, p, 5), "{name}: {p}");
            for q in &ps {
                if equivalent(&t, p, q) == Tri::Yes {
                    assert_eq!(length(p), length(q), "{name}: {p} {q}");
                }
            }
        }
    }
}
