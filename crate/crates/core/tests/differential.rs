use minterval::oracle::{self, check_read_bounds, gen};
use minterval::stream::{materialize, profile, VecStream};
use minterval::{BoxStream, Interval, OperatorKind, Options};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn streams(inputs: &[Vec<Interval>]) -> Vec<BoxStream<'static>> {
    inputs
        .iter()
        .map(|l| Box::new(VecStream::new(l.clone())) as BoxStream<'static>)
        .collect()
}

fn singletons(inputs: &[Vec<Interval>]) -> bool {
    inputs.iter().flatten().all(|iv| iv.length() == 1)
}

fn kinds(rng: &mut ChaCha8Rng) -> [OperatorKind; 6] {
    [
        OperatorKind::Or,
        OperatorKind::And,
        OperatorKind::Block,
        OperatorKind::OrderedAnd,
        OperatorKind::LowPass(rng.gen_range(1..=6)),
        OperatorKind::Difference,
    ]
}

#[test]
fn operators_match_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..1500 {
        for kind in kinds(&mut rng) {
            let inputs = gen::inputs(&mut rng, kind, 5, 10, 48);
            let expected = oracle::oracle(kind, &inputs);
            let got = materialize(kind.build(streams(&inputs), Options::default())).unwrap();
            assert_eq!(got, expected, "case {case} {kind} on {inputs:?}");
        }
    }
}

#[test]
fn fast_paths_match_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1500 {
        for kind in [OperatorKind::Block, OperatorKind::OrderedAnd] {
            let inputs = gen::inputs(&mut rng, kind, 5, 10, 48);
            let options = Options {
                fast_paths: true,
                singleton_inputs: singletons(&inputs),
            };
            let got = materialize(kind.build(streams(&inputs), options)).unwrap();
            assert_eq!(got, oracle::oracle(kind, &inputs), "{kind} on {inputs:?}");
        }
    }
}

#[test]
fn read_bounds_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut max_and_slack = 0;
    for _ in 0..800 {
        for kind in kinds(&mut rng) {
            let inputs = gen::inputs(&mut rng, kind, 4, 8, 40);
            let prof = profile(|s| kind.build(s, Options::default()), &inputs);
            let report = check_read_bounds(&prof, &inputs, kind);
            assert!(report.passed(), "{report}inputs {inputs:?}");
            if kind == OperatorKind::And {
                max_and_slack = max_and_slack.max(report.max_slack);
            }
        }
    }
    assert!(max_and_slack <= 1);
}

#[test]
fn optimizations_never_read_more() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..1500 {
        for kind in [OperatorKind::Block, OperatorKind::OrderedAnd] {
            let inputs = gen::inputs(&mut rng, kind, 5, 10, 48);
            let fast = Options {
                fast_paths: true,
                singleton_inputs: singletons(&inputs),
            };
            let plain = profile(|s| kind.build(s, Options::default()), &inputs);
            let opt = profile(|s| kind.build(s, fast), &inputs);
            assert_eq!(plain.outputs, opt.outputs);
            for (a, b) in opt.rho.iter().zip(&plain.rho) {
                assert!(
                    a.iter().zip(b).all(|(x, y)| x <= y),
                    "{kind}: {a:?} > {b:?} on {inputs:?}"
                );
            }
            // the tail after the last output may differ, but never past one terminal read per list
            for (reads, list) in opt.final_reads.iter().zip(&inputs) {
                assert!(*reads <= list.len() as u64 + 1);
            }
        }
    }
}

#[test]
fn checked_operators_are_transparent() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..500 {
        for kind in kinds(&mut rng) {
            let inputs = gen::inputs(&mut rng, kind, 4, 6, 32);
            let bare = profile(|s| kind.build(s, Options::default()), &inputs);
            let checked = profile(|s| kind.build_checked(s, Options::default()), &inputs);
            assert_eq!(bare.outputs, checked.outputs, "{kind}");
            assert_eq!(bare.rho, checked.rho, "{kind} on {inputs:?}");
            let certain_empty = match kind {
                OperatorKind::Or => inputs.iter().all(Vec::is_empty),
                OperatorKind::LowPass(_) | OperatorKind::Difference => inputs[0].is_empty(),
                _ => inputs.iter().any(Vec::is_empty),
            };
            if certain_empty {
                assert!(
                    checked.final_reads.iter().all(|&r| r <= 1),
                    "{kind}: {:?}",
                    checked.final_reads
                );
            }
        }
    }
}

#[test]
fn or_sorts_singleton_lists() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let mut values: Vec<i64> = (0..2000).map(|_| rng.gen_range(0..1_000_000)).collect();
    values.sort_unstable();
    values.dedup();
    let mut shuffled = values.clone();
    for i in (1..shuffled.len()).rev() {
        shuffled.swap(i, rng.gen_range(0..=i));
    }
    let inputs: Vec<Vec<Interval>> = shuffled.iter().map(|&v| vec![Interval::point(v)]).collect();
    let out = materialize(OperatorKind::Or.build(streams(&inputs), Options::default())).unwrap();
    let sorted: Vec<i64> = out.iter().map(|iv| iv.left().finite().unwrap()).collect();
    assert_eq!(sorted, values);
}

fn antichain_strategy() -> impl Strategy<Value = Vec<Interval>> {
    prop::collection::vec((0i64..40, 1i64..5), 0..10).prop_map(|raw| {
        let ivs: Vec<Interval> = raw.into_iter().map(|(l, w)| Interval::new(l, l + w - 1)).collect();
        oracle::minimal_filter(&ivs)
    })
}

proptest! {
    #[test]
    fn and_is_commutative(a in antichain_strategy(), b in antichain_strategy(), c in antichain_strategy()) {
        let run = |lists: Vec<Vec<Interval>>| {
            materialize(OperatorKind::And.build(streams(&lists), Options::default())).unwrap()
        };
        let abc = run(vec![a.clone(), b.clone(), c.clone()]);
        prop_assert_eq!(&abc, &run(vec![c.clone(), a.clone(), b.clone()]));
        prop_assert_eq!(&abc, &run(vec![b, c, a]));
    }

    #[test]
    fn or_is_idempotent(a in antichain_strategy()) {
        let out = materialize(OperatorKind::Or.build(streams(&[a.clone(), a.clone()]), Options::default())).unwrap();
        prop_assert_eq!(out, a);
    }

    #[test]
    fn difference_by_self_is_empty(a in antichain_strategy()) {
        let out = materialize(OperatorKind::Difference.build(streams(&[a.clone(), a]), Options::default())).unwrap();
        prop_assert!(out.is_empty());
    }
}
