use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::fixtures;
use crate::spec::PathSpec;

fn m(cat: &Category, w: &str) -> Morphism {
    cat.parse_word(w).unwrap()
}

fn rendered(cat: &Category, xs: &[Morphism]) -> Vec<String> {
    let mut v: Vec<String> = xs.iter().map(|x| cat.render(x)).collect();
    v.sort();
    v
}

/// `{1, x, c}` under `min` with `1 > x > c`: associative, `c·x = c·1`.
fn zero_table() -> CategorySpec {
    fixtures::explicit_spec(
        &["o"],
        &[("x", "o", "o"), ("c", "o", "o")],
        &[("x", "x", "x"), ("x", "c", "c"), ("c", "x", "c"), ("c", "c", "c")],
    )
}

fn all_cats() -> Vec<Category> {
    vec![fixtures::free(), fixtures::b3(), fixtures::square2(), fixtures::flip(), fixtures::raag(), fixtures::two(), fixtures::z2()]
}

#[test]
fn validation_examples() {
    assert!(fixtures::free().validate().is_valid());
    assert!(fixtures::square2().validate().is_valid());
    let (cat, report) = validate_category(&zero_table()).unwrap();
    let bad = report.first_failure().unwrap();
    assert_eq!(bad.axiom, "left cancellation");
    let w = &bad.verdict.witness;
    assert_eq!(cat.compose(&w[0].1, &w[1].1).unwrap(), cat.compose(&w[0].1, &w[2].1).unwrap());
    assert_ne!(w[1].1, w[2].1);
    assert!(matches!(Category::new(&zero_table()), Err(Error::Invalid(_))));
}

#[test]
fn malformed_payloads_name_the_field() {
    let spec = CategorySpec::GraphPath(PathSpec {
        vertices: vec!["v".into()],
        edges: vec![fixtures::edge("a", "v", "nowhere", 1)],
        squares: vec![],
    });
    match Category::new(&spec) {
        Err(Error::Structural { field, message }) => {
            assert!(field.contains('a'));
            assert!(message.contains("nowhere"));
        }
        other => panic!("{:?}", other),
    }
    let empty = CategorySpec::GraphPath(PathSpec::default());
    assert!(matches!(Category::new(&empty), Err(Error::Structural { .. })));
    let missing_square = CategorySpec::KGraph(PathSpec {
        vertices: vec!["v".into()],
        edges: vec![fixtures::edge("e", "v", "v", 1), fixtures::edge("f", "v", "v", 2)],
        squares: vec![],
    });
    assert!(matches!(Category::new(&missing_square), Err(Error::Invalid(_))));
}

#[test]
fn composition_examples() {
    let free = fixtures::free();
    assert_eq!(free.render(&free.compose(&m(&free, "a"), &m(&free, "b")).unwrap()), "ab");
    assert_eq!(free.compose(&m(&free, "a"), &Morphism::identity(0)).unwrap(), m(&free, "a"));
    let sq = fixtures::square2();
    assert_eq!(sq.render(&sq.compose(&m(&sq, "f"), &m(&sq, "e")).unwrap()), "ef");
    let two = fixtures::two();
    assert!(matches!(two.compose(&m(&two, "e"), &m(&two, "l")), Err(Error::Composability { .. })));
    assert_eq!(two.render(&two.compose(&m(&two, "l"), &m(&two, "e")).unwrap()), "le");
}

#[test]
fn divisibility_examples() {
    let free = fixtures::free();
    assert!(free.left_divides(&m(&free, "a"), &m(&free, "ab")));
    assert!(!free.left_divides(&m(&free, "a"), &m(&free, "b")));
    let b3 = fixtures::b3();
    assert!(b3.left_divides(&m(&b3, "b"), &m(&b3, "aba")));
    assert_eq!(m(&b3, "aba"), m(&b3, "bab"));
}

#[test]
fn mcm_examples() {
    let free = fixtures::free();
    assert!(free.mcm_set(&m(&free, "a"), &m(&free, "b")).unwrap().is_empty());
    let sq = fixtures::square2();
    assert_eq!(rendered(&sq, &sq.mcm_set(&m(&sq, "e"), &m(&sq, "f")).unwrap()), ["ef"]);
    let b3 = fixtures::b3();
    assert_eq!(rendered(&b3, &b3.mcm_set(&m(&b3, "a"), &m(&b3, "b")).unwrap()), ["aba"]);
    let flip = fixtures::flip();
    assert_eq!(flip.mcm_set(&m(&flip, "e1"), &m(&flip, "f1")).unwrap().len(), 2);
}

#[test]
fn ball_examples() {
    let free = fixtures::free();
    assert_eq!(rendered(&free, &free.ball(0, 2).unwrap()), ["1", "a", "aa", "ab", "b", "ba", "bb"]);
    let b3 = fixtures::b3();
    // 2³ words of length 3 with aba = bab identified.
    assert_eq!(b3.ball(0, 3).unwrap().len(), 1 + 2 + 4 + 7);
    let sq = fixtures::square2();
    assert_eq!(rendered(&sq, &sq.ball(0, 2).unwrap()), ["1", "e", "ee", "ef", "f", "ff"]);
}

#[test]
fn alignment_examples() {
    let sq = fixtures::square2();
    assert!(matches!(sq.finite_alignment_probe(3).unwrap().basis, crate::verdict::Basis::Structural(_)));
    assert!(fixtures::free().finite_alignment_probe(5).unwrap().is_holds());
    assert!(fixtures::b3().finite_alignment_probe(4).unwrap().is_holds());
    assert!(fixtures::z2().finite_alignment_probe(2).unwrap().is_holds());
}

#[test]
fn units_in_tables() {
    let z2 = fixtures::z2();
    let u = m(&z2, "u");
    assert!(z2.is_unit(&u));
    assert!(!z2.has_trivial_units());
    assert_eq!(z2.inverse(&u), Some(u.clone()));
    assert!(z2.unit_equivalent(&u, &Morphism::identity(0)));
    assert!(fixtures::b3().has_trivial_units());
}

#[test]
fn render_parse_round_trip() {
    for cat in all_cats() {
        for v in 0..cat.num_objects() {
            for x in cat.ball(v, 3).unwrap() {
                let text = if x.is_identity() && cat.num_objects() > 1 {
                    alloc::format!("1_{}", cat.objects()[x.dst])
                } else {
                    cat.render(&x)
                };
                assert_eq!(cat.parse_word(&text).unwrap(), x);
            }
        }
    }
}

/// Every element found in the ball, with brute-force divisibility and
/// minimal common multiples.
#[test]
fn divisibility_and_mcms_match_search() {
    for cat in all_cats() {
        for v in 0..cat.num_objects() {
            let ball = cat.ball(v, 4).unwrap();
            let small: Vec<&Morphism> = ball.iter().filter(|x| x.len() <= 2).collect();
            let mut everything = Vec::new();
            for w in 0..cat.num_objects() {
                everything.extend(cat.ball(w, 2).unwrap());
            }
            let search = |a: &Morphism, b: &Morphism| {
                a.dst == b.dst && everything.iter().any(|x| x.dst == a.src && cat.compose(a, x).unwrap() == *b)
            };
            for a in &small {
                for b in &ball {
                    if b.len() <= a.len() + 2 || cat.kind() == BackendKind::Explicit {
                        assert_eq!(cat.left_divides(a, b), search(a, b), "{} {}", cat.render(a), cat.render(b));
                    }
                }
                for b in &small {
                    let mcms = cat.mcm_set(a, b).unwrap();
                    for c in &mcms {
                        assert!(cat.left_divides(a, c) && cat.left_divides(b, c));
                    }
                    for x in &ball {
                        if cat.left_divides(a, x) && cat.left_divides(b, x) {
                            assert!(mcms.iter().any(|c| cat.left_divides(c, x)), "uncovered {}", cat.render(x));
                        }
                    }
                    for c in &mcms {
                        for d in &ball {
                            if cat.left_divides(d, c) && !cat.left_divides(c, d) {
                                assert!(!(cat.left_divides(a, d) && cat.left_divides(b, d)), "not minimal");
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn left_cancellation_holds() {
    for cat in all_cats() {
        for v in 0..cat.num_objects() {
            let ball = cat.ball(v, 2).unwrap();
            for c in &ball {
                let mut seen = BTreeMap::new();
                for w in 0..cat.num_objects() {
                    for x in cat.ball(w, 2).unwrap().into_iter().filter(|x| x.dst == c.src) {
                        let cx = cat.compose(c, &x).unwrap();
                        if let Some(prev) = seen.insert(cx, x.clone()) {
                            panic!("{} {} {}", cat.render(c), cat.render(&prev), cat.render(&x));
                        }
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn canonical_words_compose(word in proptest::collection::vec(0usize..3, 0..7), cut in 0usize..7) {
        for cat in [fixtures::b3(), fixtures::raag(), fixtures::flip()] {
            let word: Vec<AtomId> = word.iter().map(|&a| a % cat.atoms().len()).collect();
            let w = if word.is_empty() { Morphism::identity(0) } else { cat.word(&word).unwrap() };
            prop_assert_eq!(cat.class_rep(&w), w.clone());
            let cut = cut.min(word.len());
            let part = |s: &[AtomId]| if s.is_empty() { Morphism::identity(0) } else { cat.word(s).unwrap() };
            let (u, v) = (part(&word[..cut]), part(&word[cut..]));
            prop_assert_eq!(cat.compose(&u, &v).unwrap(), w.clone());
            prop_assert_eq!(cat.atom_len(&w), word.len());
        }
    }
}
