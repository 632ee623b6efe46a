use super::*;
use crate::algebra::FiniteAlgebra;
use crate::commutator::{CommutatorTable, Method};
use crate::error::Error;
use crate::harness::fixtures;
use crate::limits::Budget;
use crate::partition::Partition;

fn table(a: FiniteAlgebra) -> CommutatorTable {
    CommutatorTable::build(a, Method::Oracle, &Budget::unlimited()).unwrap()
}

fn idx(t: &CommutatorTable, blocks: &[Vec<usize>]) -> usize {
    let n = t.algebra().size();
    t.lattice().index_of(&Partition::from_blocks(n, blocks)).unwrap()
}

fn s3_theta(t: &CommutatorTable) -> usize {
    idx(t, &[vec![0, 4, 5], vec![1, 2, 3]])
}

#[test]
fn monolith_examples() {
    let z4 = table(fixtures::z4());
    assert_eq!(monolith(z4.lattice()).unwrap(), idx(&z4, &[vec![0, 2], vec![1, 3]]));
    let v4 = table(fixtures::v4());
    assert!(matches!(
        monolith(v4.lattice()),
        Err(Error::NotSubdirectlyIrreducible { atoms: 3 })
    ));
    let l2 = table(fixtures::l2());
    assert_eq!(monolith(l2.lattice()).unwrap(), l2.lattice().one());
}

#[test]
fn neutrabelian_si_examples() {
    let z4 = table(fixtures::z4());
    let v = is_neutrabelian_si(&z4).unwrap();
    assert!(v.holds());
    assert_eq!(v.centralizer, z4.lattice().one());

    let s3 = table(fixtures::s3());
    let v = is_neutrabelian_si(&s3).unwrap();
    let one = s3.lattice().one();
    match v.failure {
        Some(SiFailure::NeutralElsewhere { alpha, beta, commutator }) => {
            assert_eq!((alpha, beta), (one, one));
            assert_eq!(commutator, s3_theta(&s3));
        }
        other => panic!("unexpected {other:?}"),
    }

    let l2 = table(fixtures::l2());
    let v = is_neutrabelian_si(&l2).unwrap();
    assert!(v.holds());
    assert_eq!(v.centralizer, 0);

    assert!(is_neutrabelian_si(&table(fixtures::v4())).is_err());
}

#[test]
fn neut_char_examples() {
    let z4 = table(fixtures::z4());
    let c = neut_char_si(&z4).unwrap();
    assert!(c.holds());
    assert_eq!(c.radical, z4.lattice().one());

    let s3 = table(fixtures::s3());
    let c = neut_char_si(&s3).unwrap();
    assert!(!c.radical_abelian);
    assert!(!c.holds());

    let l2 = table(fixtures::l2());
    let c = neut_char_si(&l2).unwrap();
    assert!(c.holds());
    assert_eq!(c.radical, 0);
}

#[test]
fn neutrabelian_examples() {
    let b = Budget::unlimited();
    for path in [QuotientPath::Interval, QuotientPath::Reconstruct] {
        assert!(is_neutrabelian(&table(fixtures::z4()), path, &b).unwrap().holds);
        assert!(is_neutrabelian(&table(fixtures::v4()), path, &b).unwrap().holds);
        assert!(is_neutrabelian(&table(fixtures::triv1()), path, &b).unwrap().holds);
        let v = is_neutrabelian(&table(fixtures::s3()), path, &b).unwrap();
        assert!(!v.holds);
        assert_eq!(v.failure.unwrap().delta, 0);
    }
}

#[test]
fn relevant_triple_examples() {
    let z4 = table(fixtures::z4());
    let mu = idx(&z4, &[vec![0, 2], vec![1, 3]]);
    let one = z4.lattice().one();
    assert_eq!(
        relevant_triples(&z4).unwrap(),
        vec![
            RelevantTriple { delta: 0, theta: mu, nu: one },
            RelevantTriple { delta: mu, theta: one, nu: one },
        ]
    );
    assert!(relevant_triples(&table(fixtures::l2())).unwrap().is_empty());

    let s3 = table(fixtures::s3());
    let th = s3_theta(&s3);
    let one = s3.lattice().one();
    assert_eq!(
        relevant_triples(&s3).unwrap(),
        vec![
            RelevantTriple { delta: 0, theta: th, nu: th },
            RelevantTriple { delta: th, theta: one, nu: one },
        ]
    );
}

#[test]
fn split_examples() {
    let z4 = table(fixtures::z4());
    let t = relevant_triples(&z4).unwrap()[0];
    let c = find_split_at_zero(&z4, t, SplitMode::Exhaustive).unwrap().unwrap();
    assert_eq!((c.alpha, c.beta), (z4.lattice().one(), 0));

    let s3 = table(fixtures::s3());
    let t = relevant_triples(&s3).unwrap()[1];
    assert!(find_split_at_zero(&s3, t, SplitMode::Exhaustive).unwrap().is_none());
    assert!(find_split_at_zero(&s3, t, SplitMode::Guided).unwrap().is_none());

    let v4 = table(fixtures::v4());
    let l = v4.lattice();
    for t in relevant_triples(&v4).unwrap() {
        let c = find_split_at_zero(&v4, t, SplitMode::Exhaustive).unwrap().unwrap();
        if l.atoms().contains(&t.delta) {
            assert!(l.atoms().contains(&c.alpha));
            assert_ne!(c.alpha, t.delta);
            assert_eq!(c.beta, t.delta);
        }
    }
}

#[test]
fn split_verdict_examples() {
    for mode in [SplitMode::Exhaustive, SplitMode::Guided] {
        assert!(centralizers_split_at_zero(&table(fixtures::z4()), mode).unwrap().holds);
        assert!(centralizers_split_at_zero(&table(fixtures::v4()), mode).unwrap().holds);
        assert!(centralizers_split_at_zero(&table(fixtures::l2()), mode).unwrap().holds);
        let s3 = table(fixtures::s3());
        let v = centralizers_split_at_zero(&s3, mode).unwrap();
        assert!(!v.holds);
        assert_eq!(v.failure.unwrap().delta, s3_theta(&s3));
    }
}

#[test]
fn transfer_examples() {
    for a in [fixtures::z4(), fixtures::s3(), fixtures::l2()] {
        assert!(transfer_check(&table(a)).unwrap().holds);
    }
}

#[test]
fn transfer_rejects_nonabelian_then_abelian() {
    let a = fixtures::twisted_pixley();
    assert!(a.basic_maltsev_operation().is_some());
    let t = CommutatorTable::build(a, Method::Delta, &Budget::unlimited()).unwrap();
    assert_eq!(t.lattice().len(), 3);
    let v = transfer_check(&t).unwrap();
    assert_eq!(v.witness, Some([0, 1, 2]));
    let b = Budget::unlimited();
    let e = verify_equivalence(&t, true, SplitMode::Exhaustive, &b).unwrap();
    assert!(e.agree && !e.neutrabelian.holds);
}

#[test]
fn lemma_suite_examples() {
    let b = Budget::unlimited();
    for a in [fixtures::z4(), fixtures::v4()] {
        let cm = cm_status(&a, false, &b);
        let t = CommutatorTable::build(a, method_for(&cm), &b).unwrap();
        let r = lemma_invariant_suite(&t, &cm, &b).unwrap();
        assert!(r.all_passed(), "{r:?}");
    }
    let s3 = fixtures::s3();
    let cm = cm_status(&s3, false, &b);
    let t = CommutatorTable::build(s3, method_for(&cm), &b).unwrap();
    assert!(matches!(lemma_invariant_suite(&t, &cm, &b), Err(Error::GateNotMet(_))));
}

/// Evaluates a prefix term over `x, y, z` in `a`.
fn eval_term(a: &FiniteAlgebra, term: &str, env: [usize; 3]) -> usize {
    fn parse<'s>(a: &FiniteAlgebra, s: &'s str, env: [usize; 3]) -> (usize, &'s str) {
        let end = s.find(['(', ',', ')']).unwrap_or(s.len());
        let (name, rest) = s.split_at(end);
        match name {
            "x" => return (env[0], rest),
            "y" => return (env[1], rest),
            "z" => return (env[2], rest),
            _ => {}
        }
        let op = a.operation(name).unwrap_or_else(|| panic!("unknown symbol {name}"));
        let mut args = Vec::new();
        let mut rest = rest;
        if let Some(r) = rest.strip_prefix('(') {
            rest = r;
            loop {
                let (v, r) = parse(a, rest, env);
                args.push(v);
                match r.as_bytes()[0] {
                    b',' => rest = &r[1..],
                    b')' => {
                        rest = &r[1..];
                        break;
                    }
                    _ => panic!("bad term"),
                }
            }
        }
        (a.evaluate(op, &args).unwrap(), rest)
    }
    let (v, rest) = parse(a, term, env);
    assert!(rest.is_empty());
    v
}

fn check_maltsev(a: &FiniteAlgebra, term: &str) {
    let n = a.size();
    for x in 0..n {
        for y in 0..n {
            assert_eq!(eval_term(a, term, [x, y, y]), x, "{term}");
            assert_eq!(eval_term(a, term, [y, y, x]), x, "{term}");
        }
    }
}

#[test]
fn maltsev_examples() {
    let b = Budget::unlimited();
    for a in [fixtures::z4(), fixtures::s3(), fixtures::z2(), fixtures::v4()] {
        match maltsev_term_exists(&a, &b) {
            MaltsevStatus::Exists { term } => check_maltsev(&a, &term),
            other => panic!("{}: {other:?}", a.name()),
        }
    }
    assert_eq!(maltsev_term_exists(&fixtures::sl2(), &b), MaltsevStatus::Absent);
    assert_eq!(maltsev_term_exists(&fixtures::l2(), &b), MaltsevStatus::Absent);
    assert_eq!(
        maltsev_term_exists(&fixtures::triv1(), &b),
        MaltsevStatus::Exists { term: "x".into() }
    );
}

#[test]
fn maltsev_cap_is_unknown() {
    let mut b = Budget::unlimited();
    b.limits.max_closure = 3;
    assert!(matches!(
        maltsev_term_exists(&fixtures::s3(), &b),
        MaltsevStatus::Unknown { .. }
    ));
}

#[test]
fn hereditary_and_dualizability_examples() {
    let b = Budget::unlimited();
    let z4 = fixtures::z4();
    let h = hereditary_neutrabelian(&z4, Method::Delta, &b).unwrap();
    assert!(h.holds);
    assert_eq!(h.subalgebras, 3);
    assert_eq!(dualizability_verdict(&cm_status(&z4, false, &b), true), Dualizability::Dualizable);

    let s3 = fixtures::s3();
    let h = hereditary_neutrabelian(&s3, Method::Delta, &b).unwrap();
    assert!(!h.holds);
    assert_eq!(h.failing_subuniverse.unwrap().len(), 6);
    assert_eq!(
        dualizability_verdict(&cm_status(&s3, false, &b), false),
        Dualizability::NotByThisCriterion
    );

    let t = fixtures::triv1();
    assert!(hereditary_neutrabelian(&t, Method::Delta, &b).unwrap().holds);
    assert_eq!(dualizability_verdict(&cm_status(&t, false, &b), true), Dualizability::Dualizable);
}

#[test]
fn equivalence_examples() {
    let b = Budget::unlimited();
    for (a, expect) in [(fixtures::z4(), true), (fixtures::s3(), false), (fixtures::v4(), true)] {
        let t = CommutatorTable::build(a, Method::Delta, &b).unwrap();
        let e = verify_equivalence(&t, true, SplitMode::Exhaustive, &b).unwrap();
        assert!(e.agree);
        assert!(e.dump.is_none());
        assert_eq!(e.neutrabelian.holds, expect);
    }
}

#[test]
fn report_flags_and_json() {
    let b = Budget::unlimited();
    let opts = AnalysisOptions {
        hereditary: true,
        ..Default::default()
    };
    let r = analyze(&fixtures::sl2(), opts, &b).unwrap();
    assert!(!r.cm_certified);
    assert_eq!(r.theorem, TheoremStatus::Uncertified);
    assert_eq!(r.method, Method::Oracle);

    let r = analyze(&fixtures::l2(), opts, &b).unwrap();
    assert!(r.neutrabelian.holds && r.split.holds);
    assert_eq!(r.dualizability, Some(Dualizability::Unknown));

    let r = analyze(&fixtures::z4(), opts, &b).unwrap();
    assert_eq!(r.theorem, TheoremStatus::Agree);
    let back: AnalysisReport = serde_json::from_str(&r.to_json_line()).unwrap();
    assert_eq!(back, r);
    assert!(r.to_string().contains("dualizable"));
}
