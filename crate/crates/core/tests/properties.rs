//! Property tests over generated formulas, types and values.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use herbrand::conversions::{convert, Direction};
use herbrand::interpretation::{translate, translate_down, translate_up};
use herbrand::orders::{preceq, sqsubseteq, subset};
use herbrand::semantics::{cardinality, parse_value, Bound, Model, Value};
use herbrand::syntax::{parse_formula, parse_target, parse_type, print_formula, print_target, Formula, Term};
use herbrand::types::{up_types, FiniteType, Presentation};
use herbrand::verifier::{default_corpus, run_suite, Config, PropertyId};

const VARS: [&str; 4] = ["x", "y", "z", "w"];

fn model(k: u32) -> Model {
    Model::new(Bound::new(k, 4096, 0).unwrap()).unwrap()
}

fn nat() -> FiniteType {
    FiniteType::Nat
}

fn arb_type() -> impl Strategy<Value = FiniteType> {
    Just(FiniteType::Nat).prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(FiniteType::star),
            (inner.clone(), inner).prop_map(|(d, c)| FiniteType::arrow(d, c)),
        ]
    })
}

/// Types whose bounded interpretation is small enough to sample at k = 1.
fn small_type() -> impl Strategy<Value = FiniteType> {
    arb_type().prop_filter("small", |t| cardinality(t, 1).is_some_and(|n| n <= 1 << 12))
}

fn arb_nat_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        (0u64..3).prop_map(Term::Nat),
        prop::sample::select(VARS.to_vec()).prop_map(Term::var),
    ];
    leaf.prop_recursive(2, 4, 1, |inner| inner.prop_map(Term::succ))
}

fn arb_formula() -> impl Strategy<Value = Formula> {
    let atom = prop_oneof![
        (arb_nat_term(), arb_nat_term()).prop_map(|(a, b)| Formula::Eq(a, b)),
        arb_nat_term().prop_map(|t| Formula::St(nat(), t)),
        Just(Formula::False),
    ];
    atom.prop_recursive(3, 12, 2, |inner| {
        let var = prop::sample::select(VARS.to_vec());
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (var.clone(), inner.clone()).prop_map(|(v, b)| Formula::Forall(v.into(), nat(), Box::new(b))),
            (var.clone(), inner.clone()).prop_map(|(v, b)| Formula::Exists(v.into(), nat(), Box::new(b))),
            (var.clone(), inner.clone()).prop_map(|(v, b)| Formula::ForallSt(v.into(), nat(), Box::new(b))),
            (var, inner).prop_map(|(v, b)| Formula::ExistsSt(v.into(), nat(), Box::new(b))),
        ]
    })
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Samples a tuple, or `None` when some component is over budget.
fn sample_tuple(tys: &[FiniteType], m: &Model, seed: u64) -> Option<Vec<Value>> {
    let mut r = rng(seed);
    tys.iter().map(|t| m.sample(t, &mut r).ok()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn type_print_parse(t in arb_type()) {
        prop_assert_eq!(parse_type(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn formula_print_parse(a in arb_formula()) {
        let text = print_formula(&a);
        let back = parse_formula(&text).unwrap();
        prop_assert!(back.alpha_eq(&a), "{} reparsed as {}", text, print_formula(&back));
        prop_assert_eq!(print_formula(&back), text);
    }

    #[test]
    fn translation_print_parse(a in arb_formula(), down in any::<bool>()) {
        let p = if down { Presentation::Down } else { Presentation::Up };
        let body = translate(&a, p).body;
        let text = print_target(&body);
        prop_assert_eq!(print_target(&parse_target(&text).unwrap()), text);
    }

    #[test]
    fn translation_variables_match_types(a in arb_formula()) {
        let up = translate_up(&a);
        let (tp, tn) = up_types(&a);
        prop_assert_eq!(up.positive_types(), tp.0);
        prop_assert_eq!(up.negative_types(), tn.0);
        let down = translate_down(&a);
        prop_assert_eq!(down.positive.len(), up.positive.len());
    }

    #[test]
    fn value_print_parse(t in small_type(), seed in any::<u64>()) {
        let m = model(1);
        let v = m.sample(&t, &mut rng(seed)).unwrap();
        prop_assert_eq!(parse_value(&v.to_string(), &t, &m).unwrap(), v);
    }

    #[test]
    fn conversions_are_type_sound(a in arb_formula(), seed in any::<u64>()) {
        let m = model(1);
        for dir in Direction::ALL {
            let (ins, outs) = dir.signature(&a);
            let Some(input) = sample_tuple(&ins, &m, seed) else { continue };
            match convert(dir, &a, &input, &m) {
                Ok(out) => prop_assert!(m.check_tuple(&out, &outs).is_ok(), "{} of {}", dir, print_formula(&a)),
                Err(e) => prop_assert!(e.is_budget(), "{}: {}", dir, e),
            }
        }
    }

    #[test]
    fn down_up_down_is_down(a in arb_formula(), seed in any::<u64>()) {
        let m = model(1);
        let (ins, _) = Direction::DownPos.signature(&a);
        let Some(r) = sample_tuple(&ins, &m, seed) else { return Ok(()) };
        let Ok(d) = convert(Direction::DownPos, &a, &r, &m) else { return Ok(()) };
        let Ok(back) = convert(Direction::UpPos, &a, &d, &m) else { return Ok(()) };
        let Ok(dd) = convert(Direction::DownPos, &a, &back, &m) else { return Ok(()) };
        prop_assert_eq!(dd, d);
    }

    #[test]
    fn preceq_is_a_partial_order(t in small_type().prop_filter("star", FiniteType::is_star_type), seed in any::<u64>()) {
        let m = model(1);
        let mut r = rng(seed);
        let x = m.sample(&t, &mut r).unwrap();
        let y = m.sample(&t, &mut r).unwrap();
        let z = m.sample(&t, &mut r).unwrap();
        prop_assert!(preceq(&t, &x, &x).unwrap());
        if preceq(&t, &x, &y).unwrap() && preceq(&t, &y, &z).unwrap() {
            prop_assert!(preceq(&t, &x, &z).unwrap());
        }
        if preceq(&t, &x, &y).unwrap() && preceq(&t, &y, &x).unwrap() {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn subset_implies_sq(a in arb_formula(), seed in any::<u64>()) {
        let m = model(1);
        let (tys, _) = up_types(&a);
        let Some(x) = sample_tuple(&tys.0, &m, seed) else { return Ok(()) };
        let Some(extra) = sample_tuple(&tys.0, &m, seed ^ 1) else { return Ok(()) };
        let y: Vec<Value> = x.iter().zip(&extra).map(|(p, q)| p.union(q).unwrap()).collect();
        prop_assert!(subset(&x, &y).unwrap());
        match sqsubseteq(&a, &x, &y, &m) {
            Ok(b) => prop_assert!(b, "{}", print_formula(&a)),
            Err(e) => prop_assert!(e.is_budget(), "{}", e),
        }
        match sqsubseteq(&a, &x, &x, &m) {
            Ok(b) => prop_assert!(b),
            Err(e) => prop_assert!(e.is_budget(), "{}", e),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn suite_is_deterministic(seed in any::<u64>(), idx in 0usize..13) {
        let corpus = vec![default_corpus().swap_remove(idx)];
        let cfg = Config {
            bound: Bound::new(2, 4096, seed).unwrap(),
            samples: 32,
            mutation: None,
            ids: PropertyId::ALL.to_vec(),
        };
        let strip = |rs: Vec<herbrand::verifier::Report>| {
            rs.into_iter().map(|mut r| { r.elapsed_ms = 0; serde_json::to_string(&r).unwrap() }).collect::<Vec<_>>()
        };
        let a = strip(run_suite(&corpus, &cfg).unwrap());
        let b = strip(run_suite(&corpus, &cfg).unwrap());
        prop_assert_eq!(a, b);
    }
}
