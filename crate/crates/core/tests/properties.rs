mod common;

use common::{random_flow_document, w_valid};
use ncat::axioms::check_globularity_on;
use ncat::functors::{check_functor_laws, ind, FunctorTarget, IndEnv};
use ncat::morse::cell::{normalize_cell, x_closure, XCategory, XCell};
use ncat::morse::label::{normalize, rewrite_steps, Label};
use ncat::morse::{validate_flow_data, FlowData};
use ncat::torus::torus_flow_data;
use ncat::w::{random_cell, random_composable_pair};
use ncat::{Category, WCell};
use proptest::prelude::*;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn label_strategy() -> impl Strategy<Value = Label> {
    let leaf = prop::sample::select(vec!["a", "b", "c", "d"]).prop_map(Label::atom);
    leaf.prop_recursive(4, 24, 4, |inner| {
        prop_oneof![
            inner.clone().prop_map(Label::pt),
            prop::collection::vec(inner, 2..4).prop_map(Label::Seq),
        ]
    })
}

/// Applies randomly chosen rewrite steps until none applies.
fn random_walk(label: &Label, rng: &mut ChaCha8Rng) -> Label {
    let mut current = label.clone();
    loop {
        let steps = rewrite_steps(&current);
        match steps.choose(rng) {
            Some(next) => current = next.clone(),
            None => return current,
        }
    }
}

fn env_abcd() -> IndEnv {
    let mut env = IndEnv::default();
    for (id, i) in [("a", 3), ("b", 1), ("c", 0), ("d", 2)] {
        env.insert(id, i);
    }
    env
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn w_composites_are_cells(seed in any::<u64>(), level in 1usize..=4, bound in 0u32..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = (seed as usize) % level;
        let (c, a) = random_composable_pair(&mut rng, level, p, bound);
        prop_assert!(c.composable_after(p, &a));
        let ca = c.compose_after(p, &a).unwrap();
        prop_assert!(w_valid(ca.head(), ca.spine()));
        prop_assert_eq!(WCell::new(ca.head(), ca.spine().to_vec()), Ok(ca));
    }

    #[test]
    fn w_random_cells_are_globular(seed in any::<u64>(), level in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_cell(&mut rng, level, 5);
        prop_assert!(w_valid(x.head(), x.spine()));
        let (s, t) = (x.source().unwrap(), x.target().unwrap());
        prop_assert_eq!(s.source().unwrap(), t.source().unwrap());
        prop_assert_eq!(s.target().unwrap(), t.target().unwrap());
    }

    #[test]
    fn label_normalize_is_idempotent(l in label_strategy()) {
        let n = normalize(&l);
        prop_assert_eq!(normalize(&n), n.clone());
        prop_assert!(n.is_normal());
    }

    #[test]
    fn label_rewriting_is_confluent(l in label_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let want = normalize(&l);
        for _ in 0..4 {
            prop_assert_eq!(random_walk(&l, &mut rng), want.clone());
        }
    }

    #[test]
    fn ind_is_invariant_under_rewrites(l in label_strategy()) {
        let env = env_abcd();
        let i = ind(&l, &env).unwrap();
        for step in rewrite_steps(&l) {
            prop_assert_eq!(ind(&step, &env).unwrap(), i);
        }
        prop_assert_eq!(ind(&normalize(&l), &env).unwrap(), i);
    }

    #[test]
    fn random_flow_data_satisfies_the_functor_laws(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fd = FlowData::from_document(random_flow_document(&mut rng)).unwrap();
        let report = validate_flow_data(&fd);
        prop_assert!(report.passed(), "{}", report);
        let env = IndEnv::from_flow_data(&fd);
        for target in [FunctorTarget::G, FunctorTarget::F] {
            let laws = check_functor_laws(&fd, &env, fd.max_level(), target);
            prop_assert!(laws.passed(), "{}", laws);
        }
    }

    #[test]
    fn random_flow_data_is_globular(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fd = FlowData::from_document(random_flow_document(&mut rng)).unwrap();
        let closure = x_closure(&fd, fd.max_level(), 5_000);
        let cat = XCategory::new(fd);
        let sample: Vec<XCell> = closure.all().cloned().collect();
        let report = check_globularity_on(&cat, &sample);
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn flow_documents_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fd = FlowData::from_document(random_flow_document(&mut rng)).unwrap();
        let again = FlowData::parse(&fd.to_json()).unwrap();
        prop_assert_eq!(again.to_json(), fd.to_json());
    }
}

#[test]
fn normalize_cell_is_idempotent_on_the_torus_closure() {
    let fd = torus_flow_data();
    let closure = x_closure(&fd, 2, 10_000);
    let cat = XCategory::new(fd);
    for cell in closure.all() {
        let n = normalize_cell(cell);
        assert_eq!(&n, cell, "closure cells are normal");
        assert_eq!(cat.normalize(&n), n);
        for l in 0..cell.level() {
            let (s, t) = cell.entry(l);
            assert!(s.is_normal() && t.is_normal());
        }
    }
}

/// Every tuple with entries `<= bound`, filtered by the independent predicate.
fn brute_force_cells(level: usize, bound: u32) -> Vec<WCell> {
    let width = 1 + 2 * level;
    let base = bound as usize + 1;
    let mut out = Vec::new();
    for code in 0..base.pow(width as u32) {
        let mut digits = (0..width).map(|k| (code / base.pow(k as u32) % base) as u32);
        let head = digits.next().unwrap();
        let spine: Vec<(u32, u32)> = (0..level)
            .map(|_| (digits.next().unwrap(), digits.next().unwrap()))
            .collect();
        if w_valid(head, &spine) {
            out.push(WCell::new(head, spine).unwrap());
        }
    }
    out.sort();
    out
}

#[test]
fn w_enumeration_matches_brute_force() {
    for level in 0..=3 {
        for bound in 0..=3 {
            assert_eq!(
                ncat::w::enumerate(level, bound),
                brute_force_cells(level, bound),
                "level {level} bound {bound}"
            );
        }
    }
}
