//! Running example checked against a hand-coded model that shares no code with the library.

use std::collections::BTreeSet;

use herbrand::conversions::{down_pos, up_pos};
use herbrand::interpretation::{is_witness, translate_down, translate_up, WitnessOptions};
use herbrand::orders::{preceq, sqsubseteq, subset};
use herbrand::semantics::{Bound, Model, Value};
use herbrand::syntax::{parse_formula, parse_type};
use herbrand::types::{down_types, up_types, TypeTuple};
use herbrand::verifier::default_corpus;

const RUNNING: &str = "forall^st n:N. exists^st m:N. n = m";

/// A function `N -> N*`, indexed by argument `0..=k`.
type Fun = Vec<BTreeSet<u32>>;

fn model(k: u32) -> Model {
    Model::new(Bound::new(k, 1 << 16, 0).unwrap()).unwrap()
}

fn nonempty_subsets(k: u32) -> Vec<BTreeSet<u32>> {
    (1u32..1 << (k + 1))
        .map(|mask| (0..=k).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

fn all_funs(k: u32) -> Vec<Fun> {
    let subs = nonempty_subsets(k);
    let mut out: Vec<Fun> = vec![vec![]];
    for _ in 0..=k {
        out = out
            .into_iter()
            .flat_map(|f| {
                subs.iter().map(move |s| {
                    let mut g = f.clone();
                    g.push(s.clone());
                    g
                })
            })
            .collect();
    }
    out
}

/// Non-empty sets of functions with at most `max` members.
fn fun_sets(funs: &[Fun], max: usize) -> Vec<Vec<Fun>> {
    fn go(funs: &[Fun], start: usize, max: usize, cur: &mut Vec<Fun>, out: &mut Vec<Vec<Fun>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..funs.len() {
            cur.push(funs[i].clone());
            go(funs, i + 1, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(funs, 0, max, &mut Vec::new(), &mut out);
    out
}

fn set_val(s: &BTreeSet<u32>) -> Value {
    Value::set(s.iter().map(|&n| Value::Nat(n)).collect()).unwrap()
}

fn fun_val(f: &Fun) -> Value {
    Value::fun_sorted(f.iter().enumerate().map(|(n, s)| (Value::Nat(n as u32), set_val(s))).collect())
}

fn funs_val(t: &[Fun]) -> Value {
    Value::set(t.iter().map(fun_val).collect()).unwrap()
}

fn up_witness(t: &[Fun]) -> bool {
    (0..t[0].len()).all(|n| t.iter().any(|f| f[n].contains(&(n as u32))))
}

fn down_witness(g: &Fun) -> bool {
    g.iter().enumerate().all(|(n, s)| s.contains(&(n as u32)))
}

fn flatten(t: &[Fun]) -> Fun {
    (0..t[0].len())
        .map(|n| t.iter().flat_map(|f| f[n].iter().copied()).collect())
        .collect()
}

fn sq(a: &[Fun], b: &[Fun]) -> bool {
    let (fa, fb) = (flatten(a), flatten(b));
    fa.iter().zip(&fb).all(|(x, y)| x.is_subset(y))
}

fn pointwise(f: &Fun, g: &Fun) -> bool {
    f.iter().zip(g).all(|(x, y)| x.is_subset(y))
}

fn members(t: &[Fun]) -> BTreeSet<&Fun> {
    t.iter().collect()
}

#[test]
fn witness_checks_agree() {
    let a = parse_formula(RUNNING).unwrap();
    let (up, down) = (translate_up(&a), translate_down(&a));
    let opts = WitnessOptions::default();
    for k in [1, 2] {
        let m = model(k);
        let funs = all_funs(k);
        assert_eq!(funs.len(), ((1usize << (k + 1)) - 1).pow(k + 1));
        for g in &funs {
            let got = is_witness(&down, &[fun_val(g)], &m, &opts).unwrap();
            assert_eq!(got.holds, down_witness(g), "down witness {g:?}");
        }
        for t in fun_sets(&funs, 2) {
            let got = is_witness(&up, &[funs_val(&t)], &m, &opts).unwrap();
            assert_eq!(got.holds, up_witness(&t), "up witness {t:?}");
        }
    }
}

#[test]
fn conversions_agree() {
    let a = parse_formula(RUNNING).unwrap();
    for k in [1, 2] {
        let m = model(k);
        let funs = all_funs(k);
        for t in fun_sets(&funs, 2) {
            let got = down_pos(&a, &[funs_val(&t)], &m).unwrap();
            assert_eq!(got, vec![fun_val(&flatten(&t))]);
        }
        for g in &funs {
            let got = up_pos(&a, &[fun_val(g)], &m).unwrap();
            assert_eq!(got, vec![funs_val(std::slice::from_ref(g))]);
        }
    }
}

#[test]
fn orders_agree() {
    let a = parse_formula(RUNNING).unwrap();
    let k = 1;
    let m = model(k);
    let funs = all_funs(k);
    let sets = fun_sets(&funs, 3);
    let vals: Vec<Value> = sets.iter().map(|t| funs_val(t)).collect();
    for (x, vx) in sets.iter().zip(&vals) {
        for (y, vy) in sets.iter().zip(&vals) {
            let want_sq = sq(x, y);
            assert_eq!(sqsubseteq(&a, &[vx.clone()], &[vy.clone()], &m).unwrap(), want_sq, "{x:?} ⊑ {y:?}");
            let want_sub = members(x).is_subset(&members(y));
            assert_eq!(subset(&[vx.clone()], &[vy.clone()]).unwrap(), want_sub);
        }
    }
    let ty = parse_type("N -> N*").unwrap();
    for f in &funs {
        for g in &funs {
            assert_eq!(preceq(&ty, &fun_val(f), &fun_val(g)).unwrap(), pointwise(f, g));
        }
    }
}

#[test]
fn fixed_pair_both_ways() {
    let a = parse_formula(RUNNING).unwrap();
    let k = 2;
    let m = model(k);
    let id: Fun = (0..=k).map(|n| BTreeSet::from([n])).collect();
    let next: Fun = (0..=k).map(|n| BTreeSet::from([(n + 1).min(k)])).collect();
    let both: Fun = (0..=k).map(|n| BTreeSet::from([n, (n + 1).min(k)])).collect();
    let t1 = vec![id.clone(), next.clone()];
    let t2 = vec![both.clone()];
    assert!(sq(&t1, &t2) && sq(&t2, &t1));
    assert!(!members(&t1).is_subset(&members(&t2)) && !members(&t2).is_subset(&members(&t1)));
    let (v1, v2) = (funs_val(&t1), funs_val(&t2));
    assert!(sqsubseteq(&a, &[v1.clone()], &[v2.clone()], &m).unwrap());
    assert!(sqsubseteq(&a, &[v2.clone()], &[v1.clone()], &m).unwrap());
    assert!(!subset(&[v1.clone()], &[v2.clone()]).unwrap());
    assert!(!subset(&[v2], &[v1]).unwrap());
    assert!(up_witness(&t1) && up_witness(&t2) && up_witness(&[id]));
    assert!(!up_witness(&[next]));
}

#[test]
fn corpus_types_by_hand() {
    let table = [
        ("00_running", "(N -> N*)*", "N", "N -> N*", "N"),
        ("01_st", "N*", "()", "N*", "()"),
        ("02_eq", "()", "()", "()", "()"),
        ("03_exists_st", "N*", "()", "N*", "()"),
        ("04_forall_st", "(N -> N*)*", "N", "N -> N*", "N"),
        ("05_impl_exists", "(N* -> N*)*", "N*", "N* -> N*", "N*"),
        ("06_forall_exists_st", "N*", "()", "N*", "()"),
        ("07_ncr", "(N* -> N**)*", "N*", "N* -> N**", "N*"),
        ("08_us", "(N*** -> N*)*", "N***", "N** -> N*", "N**"),
        ("09_and", "N*, N*", "()", "N*, N*", "()"),
        ("10_exists_internal", "()", "N*", "()", "N*"),
        ("11_impl_neg", "N**", "()", "N*", "()"),
        ("12_impl_forall_st", "(N* -> (N -> N*)*)*", "N*, N", "N* -> N -> N*", "N*, N"),
    ];
    let corpus = default_corpus();
    assert_eq!(corpus.len(), table.len());
    let show = |t: TypeTuple| t.to_string();
    for (e, (name, up_p, up_n, down_p, down_n)) in corpus.iter().zip(table) {
        assert_eq!(e.name, name);
        let (up, un) = up_types(&e.formula);
        let (dp, dn) = down_types(&e.formula);
        assert_eq!((show(up), show(un)), (up_p.to_string(), up_n.to_string()), "{name} up");
        assert_eq!((show(dp), show(dn)), (down_p.to_string(), down_n.to_string()), "{name} down");
    }
}
