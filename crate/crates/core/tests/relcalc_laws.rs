mod common;

use common::*;
use proptest::prelude::*;
use wildwords::relcalc::{
    e_normal_form, e_related, fe_equivalent, fx_invert, fx_multiply, product_view_equal,
    quotient_word, EquivRelation, EventuallyPeriodic, Point, RelError, XLetter, XWord,
};
use wildwords::word::Sign;

const ATOMS: [&str; 5] = ["a", "b", "c", "d", "f"];

fn xletter(atom: usize, inverse: bool) -> XLetter {
    XLetter::new(
        Point::atom(ATOMS[atom]),
        if inverse { Sign::Neg } else { Sign::Pos },
    )
}

fn xword(letters: &[usize]) -> XWord {
    XWord::new(
        letters
            .iter()
            .map(|&d| xletter(d / 2, d % 2 == 1))
            .collect(),
    )
}

fn concat(parts: &[&XWord]) -> XWord {
    XWord::new(
        parts
            .iter()
            .flat_map(|w| w.letters().iter().cloned())
            .collect(),
    )
}

/// A partition of the five atoms given by a block label per atom.
fn relation(labels: &[usize]) -> EquivRelation {
    let blocks: Vec<Vec<&str>> = (0..ATOMS.len())
        .map(|b| {
            (0..ATOMS.len())
                .filter(|&i| labels[i] == b)
                .map(|i| ATOMS[i])
                .collect::<Vec<_>>()
        })
        .filter(|b| !b.is_empty())
        .collect();
    EquivRelation::finite_partition(blocks).unwrap()
}

fn relation_strategy() -> impl Strategy<Value = EquivRelation> {
    prop::collection::vec(0usize..3, 5).prop_map(|l| relation(&l))
}

fn xword_strategy(max_len: usize) -> impl Strategy<Value = XWord> {
    prop::collection::vec(0usize..10, 0..=max_len).prop_map(|l| xword(&l))
}

fn abc() -> EquivRelation {
    EquivRelation::finite_partition([vec!["a", "b"], vec!["c"]]).unwrap()
}

#[test]
fn agrees_with_congruence_closure_on_short_words() {
    // a ~ b, c alone; closure over words of length <= 6, queries of length <= 3.
    let oracle = CongruenceOracle::new(&[0, 0, 1], 6);
    let e = abc();
    let words: Vec<Vec<usize>> = (0..=3)
        .flat_map(|n| oracle.words(n).collect::<Vec<_>>())
        .collect();
    for u in &words {
        for v in &words {
            let expected = oracle.class_of(u) == oracle.class_of(v);
            assert_eq!(
                fe_equivalent(&e, &xword(u), &xword(v)).unwrap(),
                expected,
                "{u:?} {v:?}"
            );
        }
    }
}

#[test]
fn reduced_words_in_unrelated_atoms_are_nontrivial() {
    let e = abc();
    // letters a, a~, c, c~ as 0, 1, 4, 5
    let alphabet = [0usize, 1, 4, 5];
    let mut words = vec![vec![]];
    for _ in 0..6 {
        words = words
            .iter()
            .flat_map(|w: &Vec<usize>| alphabet.iter().map(move |&d| [w.clone(), vec![d]].concat()))
            .collect();
        for w in &words {
            let reduced = w.windows(2).all(|p| p[0] / 2 != p[1] / 2 || p[0] == p[1]);
            if reduced {
                assert!(
                    !fe_equivalent(&e, &xword(w), &XWord::empty()).unwrap(),
                    "{w:?}"
                );
            }
        }
    }
}

#[test]
fn e0_examples_and_universe() {
    let s = |p: &str, q: &str| Point::Seq(EventuallyPeriodic::parse(p, q).unwrap());
    let e = EquivRelation::E0;
    let w1 = XWord::new(vec![
        XLetter::new(s("0", "1"), Sign::Pos),
        XLetter::new(s("1", "1"), Sign::Neg),
    ]);
    assert!(fe_equivalent(&e, &w1, &XWord::empty()).unwrap());
    assert_eq!(quotient_word(&e, &w1), Err(RelError::NoCanonicalRep));
    let atom = XWord::new(vec![XLetter::new(Point::atom("a"), Sign::Pos)]);
    assert!(matches!(
        fe_equivalent(&e, &atom, &atom),
        Err(RelError::UniverseMismatch(_))
    ));
}

fn ep_strategy() -> impl Strategy<Value = EventuallyPeriodic> {
    (
        prop::collection::vec(any::<bool>(), 0..5),
        prop::collection::vec(any::<bool>(), 1..5),
    )
        .prop_map(|(p, q)| EventuallyPeriodic::new(p, q).unwrap())
}

/// Raw bits, computed from the unnormalized description.
fn raw_bit(prefix: &[bool], period: &[bool], i: usize) -> bool {
    if i < prefix.len() {
        prefix[i]
    } else {
        period[(i - prefix.len()) % period.len()]
    }
}

proptest! {
    #[test]
    fn equivalence_axioms(e in relation_strategy(), u in xword_strategy(6), v in xword_strategy(6), w in xword_strategy(6)) {
        prop_assert!(fe_equivalent(&e, &u, &u).unwrap());
        let uv = fe_equivalent(&e, &u, &v).unwrap();
        prop_assert_eq!(uv, fe_equivalent(&e, &v, &u).unwrap());
        if uv && fe_equivalent(&e, &v, &w).unwrap() {
            prop_assert!(fe_equivalent(&e, &u, &w).unwrap());
        }
    }

    #[test]
    fn congruence(e in relation_strategy(), u in xword_strategy(5), x in xword_strategy(4), y in xword_strategy(4), idx in 0usize..5) {
        // u and u with one letter swapped for a related point are equivalent,
        // and stay so under multiplication on both sides.
        let mut letters = u.letters().to_vec();
        if let Some(l) = letters.get_mut(idx) {
            let other = ATOMS.iter().map(|a| Point::atom(*a)).find(|p| p != &l.point && e_related(&e, p, &l.point).unwrap());
            if let Some(p) = other {
                l.point = p;
            }
        }
        let v = XWord::new(letters);
        prop_assert!(fe_equivalent(&e, &u, &v).unwrap());
        prop_assert!(fe_equivalent(&e, &concat(&[&x, &u, &y]), &concat(&[&x, &v, &y])).unwrap());
        prop_assert!(fe_equivalent(&e, &fx_multiply(&x, &u), &fx_multiply(&x, &v)).unwrap());
        prop_assert!(fe_equivalent(&e, &fx_multiply(&u, &fx_invert(&v)), &XWord::empty()).unwrap());
    }

    #[test]
    fn normal_forms_are_normal_and_equivalent(e in relation_strategy(), u in xword_strategy(10)) {
        let nf = e_normal_form(&e, &u).unwrap().to_xword();
        for p in nf.letters().windows(2) {
            prop_assert!(!(p[0].sign != p[1].sign && e_related(&e, &p[0].point, &p[1].point).unwrap()));
        }
        prop_assert!(fe_equivalent(&e, &u, &nf).unwrap());
        prop_assert_eq!(e_normal_form(&e, &nf).unwrap().to_xword(), nf.clone());
        prop_assert!(product_view_equal(&e, &nf, &nf).unwrap());
    }

    #[test]
    fn product_view_and_quotient_agree(e in relation_strategy(), u in xword_strategy(6), v in xword_strategy(6)) {
        let expected = fe_equivalent(&e, &u, &v).unwrap();
        let nu = e_normal_form(&e, &u).unwrap().to_xword();
        let nv = e_normal_form(&e, &v).unwrap().to_xword();
        prop_assert_eq!(product_view_equal(&e, &nu, &nv).unwrap(), expected);
        prop_assert_eq!(quotient_word(&e, &u).unwrap() == quotient_word(&e, &v).unwrap(), expected);
    }

    #[test]
    fn sequences_normalize_faithfully(p in prop::collection::vec(any::<bool>(), 0..6), q in prop::collection::vec(any::<bool>(), 1..6)) {
        let s = EventuallyPeriodic::new(p.clone(), q.clone()).unwrap();
        for i in 0..40 {
            prop_assert_eq!(s.bit(i), raw_bit(&p, &q, i));
        }
    }

    #[test]
    fn eventual_agreement_matches_tail_comparison(a in ep_strategy(), b in ep_strategy()) {
        // After both prefixes, agreement over one common period decides it.
        let start = a.prefix().len().max(b.prefix().len());
        let window = a.period().len() * b.period().len();
        let agree = (start..start + window).all(|i| a.bit(i) == b.bit(i));
        prop_assert_eq!(a.eventually_agrees(&b), agree);
        let (pa, pb) = (Point::Seq(a.clone()), Point::Seq(b.clone()));
        prop_assert_eq!(e_related(&EquivRelation::E0, &pa, &pb).unwrap(), agree);
    }
}
