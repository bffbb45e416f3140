use garside_core::cat::validate_category;
use garside_core::garside::standard_family;
use garside_core::invariants::enumerate_pairs;
use garside_core::props::{check_all, Criterion};
use garside_core::spec::{ArtinSpec, CompDecl, EdgeDecl, ExplicitSpec, MorDecl, PathSpec, SquareDecl};
use garside_core::{BackendKind, Category, CategorySpec, Morphism};
use proptest::prelude::*;

fn s(x: &str) -> String {
    x.to_string()
}

fn braid() -> CategorySpec {
    CategorySpec::Artin(ArtinSpec { atoms: vec![s("a"), s("b")], m: vec![(s("a"), s("b"), Some(3))] })
}

fn square() -> CategorySpec {
    CategorySpec::KGraph(PathSpec {
        vertices: vec![s("v")],
        edges: vec![
            EdgeDecl { name: s("e"), src: s("v"), dst: s("v"), color: 1 },
            EdgeDecl { name: s("f"), src: s("v"), dst: s("v"), color: 2 },
        ],
        squares: vec![SquareDecl { first: s("e"), second: s("f"), third: s("f"), fourth: s("e") }],
    })
}

fn fork() -> CategorySpec {
    let mor = |n: &str, a: &str, b: &str| MorDecl { name: s(n), src: s(a), dst: s(b) };
    let comp = |f: &str, g: &str, h: &str| CompDecl { f: s(f), g: s(g), h: s(h) };
    CategorySpec::Explicit(ExplicitSpec {
        objects: vec![s("A"), s("B"), s("C")],
        mors: vec![mor("x", "A", "B"), mor("c", "B", "C"), mor("d", "B", "C"), mor("e", "A", "C")],
        comps: vec![comp("c", "x", "e"), comp("d", "x", "e")],
    })
}

#[test]
fn categories_build_from_plain_specs() {
    let b3 = Category::new(&braid()).unwrap();
    assert_eq!(b3.kind(), BackendKind::Artin);
    assert!(b3.is_right_cancellative());
    let aba = b3.parse_word("aba").unwrap();
    assert_eq!(aba, b3.parse_word("bab").unwrap());

    let sq = Category::new(&square()).unwrap();
    assert_eq!(sq.rank(), 2);
    assert_eq!(sq.degree(&sq.parse_word("ef").unwrap()), Some(vec![1, 1]));

    let fork = Category::new(&fork()).unwrap();
    assert!(!fork.is_right_cancellative());
}

#[test]
fn validation_reports_missing_squares() {
    let CategorySpec::KGraph(mut p) = square() else { unreachable!() };
    p.squares.clear();
    let (_, report) = validate_category(&CategorySpec::KGraph(p)).unwrap();
    assert!(!report.is_valid());
    assert!(report.first_failure().is_some());
}

#[test]
fn every_backend_supports_classification_and_criteria() {
    for spec in [braid(), square(), fork()] {
        let cat = Category::new(&spec).unwrap();
        let fam = standard_family(&cat).unwrap();
        let lat = enumerate_pairs(&fam, 3).unwrap();
        assert!(!lat.pairs.is_empty());
        assert!(lat.in_boundary[0], "the empty pair lies in every boundary");
        let reports = check_all(&cat, 2).unwrap();
        assert_eq!(reports.len(), Criterion::ALL.len());
    }
}

proptest! {
    #[test]
    fn normal_forms_multiply_back(word in prop::collection::vec(0usize..2, 1..12)) {
        let cat = Category::new(&braid()).unwrap();
        let fam = standard_family(&cat).unwrap();
        let m = cat.word(&word).unwrap();
        let nf = fam.normal_form(&m).unwrap();
        prop_assert_eq!(fam.product(&nf), m.clone());
        prop_assert_eq!(fam.is_normal(&nf.letters).unwrap(), None);
        prop_assert_eq!(fam.normal_decompose(&m).unwrap(), nf);
    }

    #[test]
    fn identities_are_neutral(word in prop::collection::vec(0usize..2, 0..8)) {
        let cat = Category::new(&braid()).unwrap();
        let m = if word.is_empty() { Morphism::identity(0) } else { cat.word(&word).unwrap() };
        let id = cat.identity(0);
        prop_assert_eq!(cat.compose(&id, &m).unwrap(), m.clone());
        prop_assert_eq!(cat.compose(&m, &id).unwrap(), m);
    }
}
