//! Temporary exploration (deleted before finalizing).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treedist::learner::{id3_global, LearnerConfig, Mode};
use treedist::measures::{evaluate, gini_impurity, MeasureId};
use treedist::tree::detect_redundant_splits;
use treedist::{Clustering, LabeledDataset};

fn random_clustering(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Clustering {
    let membership: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
    Clustering::from_labels(&membership, k).unwrap()
}

#[test]
#[ignore]
fn gini_triangle_violation_search() {
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tri = 0;
        let mut sym = 0;
        let mut ident = 0;
        for _ in 0..1000 {
            let n = rng.random_range(2..=12);
            let k = rng.random_range(1..=4);
            let a = random_clustering(&mut rng, n, k);
            let b = random_clustering(&mut rng, n, k);
            let c = random_clustering(&mut rng, n, k);
            let dab = gini_impurity(&a, &b).unwrap().value;
            let dbc = gini_impurity(&b, &c).unwrap().value;
            let dac = gini_impurity(&a, &c).unwrap().value;
            if dac > dab + dbc + 1e-9 {
                tri += 1;
            }
            let dba = gini_impurity(&b, &a).unwrap().value;
            if (dab - dba).abs() > 1e-9 {
                sym += 1;
            }
            if dab <= 1e-12 && a != b {
                ident += 1;
            }
        }
        println!("seed {seed}: triangle={tri} symmetry={sym} identity={ident}");
    }
}

fn grid_dataset() -> LabeledDataset {
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for i in 1..=7i32 {
        for j in 1..=7i32 {
            rows.push(vec![i as f64 - 0.5, j as f64 - 0.5]);
            let blue = (i == 4 && j == 1) || (i > 4 && j > 1) || (i > 3 && j > 4);
            labels.push(usize::from(blue));
        }
    }
    LabeledDataset::from_rows(rows, labels, 2).unwrap()
}

#[test]
#[ignore]
fn grid_global_redundancy() {
    let d = grid_dataset();
    for rule in [
        treedist::LabelRule::Majority,
        treedist::LabelRule::Exhaustive,
    ] {
        for m in MeasureId::ALL {
            let mut cfg = LearnerConfig::new(treedist::SelectionMeasure::Table(m), Mode::Global);
            cfg.global_label_rule = rule;
            let (t, trace) = id3_global(&d, &d.all_rows(), &cfg).unwrap();
            let final_red = detect_redundant_splits(&t);
            let states = treedist::learner::replay(&trace).unwrap();
            let mid: Vec<usize> = states
                .iter()
                .enumerate()
                .filter(|(_, s)| !detect_redundant_splits(s).is_empty())
                .map(|(i, _)| i)
                .collect();
            println!(
                "{rule:?} {m}: size={} steps={} final_red={:?} mid_red_states={:?} acc={}",
                t.size(),
                trace.steps.len(),
                final_red,
                mid,
                t.train_accuracy(&d, &d.all_rows()).unwrap()
            );
        }
    }
}

fn test_accuracy(t: &treedist::DecisionTree, d: &LabeledDataset, rows: &[usize]) -> f64 {
    let hits = rows
        .iter()
        .filter(|&&r| t.predict(d.row(r)).unwrap() == d.label(r))
        .count();
    hits as f64 / rows.len() as f64
}

#[test]
#[ignore]
fn iris_accuracy_vs_trainsize() {
    let d = treedist::data::load_csv(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/iris.csv"))
        .unwrap();
    for mode in [Mode::Local, Mode::Global] {
        for size in [20usize, 60, 120] {
            let mut acc = 0.0;
            let reps = 50;
            for rep in 0..reps {
                let spec = treedist::data::SplitSpec {
                    test_fraction: 0.1,
                    train_size: Some(size),
                    seed: 1000 + rep,
                };
                let (train, test) = treedist::data::split_train_test(&d, &spec).unwrap();
                let cfg = LearnerConfig::new("gini".parse().unwrap(), mode);
                let (t, _) = treedist::learner::train(&d, &train, &cfg).unwrap();
                acc += test_accuracy(&t, &d, &test);
            }
            println!("{mode} size={size}: mean test acc = {:.4}", acc / reps as f64);
        }
    }
}

#[test]
#[ignore]
fn noisy_iris_curves() {
    let d = treedist::data::load_csv(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/iris.csv"))
        .unwrap();
    let reps = 100u64;
    for mode in [Mode::Local, Mode::Global] {
        let mut finals = 0.0;
        let mut curves: Vec<(f64, usize)> = Vec::new();
        for rep in 0..reps {
            let spec = treedist::data::SplitSpec {
                test_fraction: 0.1,
                train_size: None,
                seed: 2000 + rep,
            };
            let (train, test) = treedist::data::split_train_test(&d, &spec).unwrap();
            let noisy = treedist::data::inject_label_noise(&d, 0.5, 3000 + rep).unwrap();
            // Noise restricted to train rows: take noisy labels on train only.
            let mut labels = d.labels().to_vec();
            for &r in &train {
                labels[r] = noisy.label(r);
            }
            let nd = d.with_labels(labels).unwrap();
            let cfg = LearnerConfig::new("gini".parse().unwrap(), mode);
            let (t, trace) = treedist::learner::train(&nd, &train, &cfg).unwrap();
            let states = treedist::learner::replay(&trace).unwrap();
            for (i, s) in states.iter().enumerate() {
                let a = test_accuracy(s, &d, &test);
                if curves.len() <= i {
                    curves.push((0.0, 0));
                }
                curves[i].0 += a;
                curves[i].1 += 1;
            }
            finals += test_accuracy(&t, &d, &test);
        }
        let peak_active = curves
            .iter()
            .map(|&(s, c)| s / c as f64)
            .fold(f64::NEG_INFINITY, f64::max);
        println!(
            "{mode}: final mean test acc = {:.4}, peak (active-run mean) = {:.4}, max steps = {}",
            finals / reps as f64,
            peak_active,
            curves.len() - 1
        );
    }
}

#[test]
#[ignore]
fn blobs_consistency_timing() {
    let d = gen_blobs_data();
    let start = std::time::Instant::now();
    for mode in [Mode::Local, Mode::Global, Mode::Glocal] {
        for m in MeasureId::ALL {
            let t0 = std::time::Instant::now();
            let cfg = LearnerConfig::new(treedist::SelectionMeasure::Table(m), mode);
            let (t, _) = treedist::learner::train(&d, &d.all_rows(), &cfg).unwrap();
            let acc = t.train_accuracy(&d, &d.all_rows()).unwrap();
            println!(
                "{mode} {m}: size={} acc={} in {:?}",
                t.size(),
                acc,
                t0.elapsed()
            );
            assert_eq!(acc, 1.0);
        }
    }
    println!("total {:?}", start.elapsed());
}

fn gen_blobs_data() -> LabeledDataset {
    treedist::data::gen_blobs(2000, 3, 3, 1.0, 77).unwrap()
}

#[test]
#[ignore]
fn random_tree_global_redundancy_check() {
    let spec = treedist::data::RandomTreeSpec {
        target_size: 9,
        n_features: 6,
        n_classes: 4,
        n_samples: 500,
        seed: 10_000 + 9 * 1000,
    };
    let (_, d) = treedist::data::gen_random_tree(&spec).unwrap();
    for m in ["gain", "gini", "nvi", "jaccard"] {
        let cfg = LearnerConfig::new(m.parse().unwrap(), Mode::Global);
        let (t, _) = treedist::learner::train(&d, &d.all_rows(), &cfg).unwrap();
        let red = detect_redundant_splits(&t);
        let merged = treedist::tree::merge_redundant_splits(&t);
        println!(
            "{m}: size={} redundant_branches={} merged_size={}",
            t.size(),
            red.len(),
            merged.size()
        );
    }
}

#[test]
#[ignore]
fn size_vs_minimal_preview() {
    let measures = ["gain", "gini", "nvi"];
    let start = std::time::Instant::now();
    for target in [5usize, 9, 13] {
        let mut sums: std::collections::BTreeMap<(String, String), f64> = Default::default();
        let reps = 20;
        let mut discards = 0;
        for rep in 0..reps {
            let mut attempt = 0u64;
            'retry: loop {
                let spec = treedist::data::RandomTreeSpec {
                    target_size: target,
                    n_features: 6,
                    n_classes: 4,
                    n_samples: 500,
                    seed: 10_000 + target as u64 * 1000 + rep * 50 + attempt,
                };
                let (_orig, d) = treedist::data::gen_random_tree(&spec).unwrap();
                let mut sizes = vec![];
                for mode in [Mode::Local, Mode::Global] {
                    for m in measures {
                        let cfg = LearnerConfig::new(m.parse().unwrap(), mode);
                        let (t, _) = treedist::learner::train(&d, &d.all_rows(), &cfg).unwrap();
                        sizes.push((mode.to_string(), m.to_string(), t.size()));
                    }
                }
                if sizes.iter().any(|(_, _, s)| *s < target) {
                    discards += 1;
                    attempt += 1;
                    continue 'retry;
                }
                for (mode, m, s) in sizes {
                    *sums.entry((mode, m)).or_default() += s as f64;
                }
                break;
            }
        }
        println!("target={target} (discards={discards}):");
        for ((mode, m), sum) in &sums {
            println!("  {mode} {m}: mean size {:.2}", sum / reps as f64);
        }
    }
    println!("elapsed {:?}", start.elapsed());
}

#[test]
#[ignore]
fn gini_triangle_exhaustive_small() {
    // All clustering triples over n <= 5 instances with k = l = 2..3 parts.
    for n in 2..=5usize {
        for k in 2..=3usize {
            let total = k.pow(n as u32);
            let clusterings: Vec<Clustering> = (0..total)
                .map(|code| {
                    let mut membership = vec![0usize; n];
                    let mut c = code;
                    for slot in membership.iter_mut() {
                        *slot = c % k;
                        c /= k;
                    }
                    Clustering::from_labels(&membership, k).unwrap()
                })
                .collect();
            let mut worst = f64::NEG_INFINITY;
            for a in &clusterings {
                for b in &clusterings {
                    let dab = gini_impurity(a, b).unwrap().value;
                    for c in &clusterings {
                        let dbc = gini_impurity(b, c).unwrap().value;
                        let dac = gini_impurity(a, c).unwrap().value;
                        worst = worst.max(dac - dab - dbc);
                    }
                }
            }
            println!("n={n} k={k}: worst triangle slack = {worst:.6}");
        }
    }
}

#[test]
#[ignore]
fn grid_local_first_thresholds() {
    let d = grid_dataset();
    for m in MeasureId::ALL {
        let cfg = LearnerConfig::new(treedist::SelectionMeasure::Table(m), Mode::Local);
        let (t, trace) = treedist::learner::id3_local(&d, &d.all_rows(), &cfg).unwrap();
        println!(
            "{m}: first=({},{}) size={} acc={}",
            trace.steps[0].criterion.feature,
            trace.steps[0].criterion.threshold,
            t.size(),
            t.train_accuracy(&d, &d.all_rows()).unwrap()
        );
    }
}

#[test]
#[ignore]
fn seven_points_local_thresholds() {
    let labels = vec![0, 0, 0, 1, 0, 0, 0];
    let rows: Vec<Vec<f64>> = (0..7).map(|i| vec![i as f64 + 0.5]).collect();
    let d = LabeledDataset::from_rows(rows, labels, 2).unwrap();
    for m in MeasureId::ALL {
        let cfg = LearnerConfig::new(treedist::SelectionMeasure::Table(m), Mode::Local);
        let (_, trace) = treedist::learner::id3_local(&d, &d.all_rows(), &cfg).unwrap();
        println!("{m}: first threshold={}", trace.steps[0].criterion.threshold);
    }
    // Also evaluate each threshold for information gain to sanity-check.
    let y = d.label_clustering(&d.all_rows()).unwrap();
    for r in 1..=6 {
        let membership: Vec<usize> = (0..7).map(|i| usize::from(i as f64 + 0.5 > r as f64)).collect();
        let split = Clustering::from_labels(&membership, 2).unwrap();
        print!("r={r}:");
        for m in MeasureId::ALL {
            if m.permutation_invariant() {
                print!(" {m}={:.4}", evaluate(m, &y, &split).unwrap());
            }
        }
        println!();
    }
}
