use dst_core::combine::by_definition;
use dst_core::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random BBA with a random number of focal sets; `allow_empty` controls
/// whether `∅` may carry mass.
fn random_bba(rng: &mut impl Rng, n: usize, allow_empty: bool) -> MassFunction {
    let frame = Frame::numbered(n).unwrap();
    let size = frame.size();
    let focal = rng.random_range(1..=size.min(12));
    let mut v = vec![0.0; size];
    for _ in 0..focal {
        let lo = if allow_empty { 0 } else { 1 };
        let f = rng.random_range(lo..size);
        v[f] += rng.random::<f64>() + 1e-3;
    }
    let total: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= total);
    MassFunction::from_dense(frame, v).unwrap()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn fast_transforms_match_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for trial in 0..200 {
        let n = 1 + trial % 8;
        let m = random_bba(&mut rng, n, trial % 3 == 0);
        let f = m.frame();
        let mbel = build_matrix(MatrixKind::Bel, f, None).unwrap();
        let mpl = build_matrix(MatrixKind::Pl, f, None).unwrap();
        let mq = build_matrix(MatrixKind::Q, f, None).unwrap();
        let mb = build_matrix(MatrixKind::B, f, None).unwrap();
        worst = worst
            .max(max_diff(bel_from_mass(&m).values(), &mbel.mul_vec(m.masses()).unwrap()))
            .max(max_diff(pl_from_mass(&m).values(), &mpl.mul_vec(m.masses()).unwrap()))
            .max(max_diff(q_from_mass(&m).values(), &mq.mul_vec(m.masses()).unwrap()))
            .max(max_diff(b_from_mass(&m).values(), &mb.mul_vec(m.masses()).unwrap()));
    }
    assert!(worst <= 1e-12, "max deviation {worst}");
}

#[test]
fn mobius_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for trial in 0..100 {
        let m = random_bba(&mut rng, 1 + trial % 8, true);
        let back = mass_from_q(&q_from_mass(&m)).unwrap();
        assert!(max_diff(back.masses(), m.masses()) <= 1e-10);
    }
}

#[test]
fn bel_pl_duality_on_normal_bbas() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for trial in 0..100 {
        let m = random_bba(&mut rng, 1 + trial % 7, false);
        let bel = bel_from_mass(&m);
        let pl = pl_from_mass(&m);
        let n = m.n();
        for f in 0..m.frame().size() {
            let comp = FocalIndex::from(f).complement(n);
            assert!((pl.values()[f] - (1.0 - bel.get(comp))).abs() <= 1e-12);
        }
    }
}

#[test]
fn belief_vector_orderings() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for trial in 0..50 {
        let m = random_bba(&mut rng, 1 + trial % 5, true);
        let bel = bel_from_mass(&m);
        let q = q_from_mass(&m);
        assert_eq!(bel.values()[0], 0.0);
        assert!((q.values()[0] - 1.0).abs() < 1e-12);
        let size = m.frame().size();
        for g in 0..size {
            for f in 0..size {
                if g & f == g {
                    assert!(bel.values()[g] <= bel.values()[f] + 1e-12);
                    assert!(q.values()[f] <= q.values()[g] + 1e-12);
                }
            }
        }
    }
}

#[test]
fn combination_triple_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for trial in 0..100 {
        let n = 1 + trial % 5;
        let m1 = random_bba(&mut rng, n, trial % 2 == 0);
        let m2 = random_bba(&mut rng, n, trial % 4 == 0);
        let def = by_definition::conjunctive(&m1, &m2).unwrap();
        let fast = combine_conjunctive(&m1, &m2).unwrap();
        let mat = specialization_matrix(&m1).unwrap().mul_vec(m2.masses()).unwrap();
        assert!(max_diff(def.masses(), fast.masses()) <= 1e-10);
        assert!(max_diff(def.masses(), &mat) <= 1e-10);

        let def = by_definition::disjunctive(&m1, &m2).unwrap();
        let fast = combine_disjunctive(&m1, &m2).unwrap();
        let mat = generalization_matrix(&m1).unwrap().mul_vec(m2.masses()).unwrap();
        assert!(max_diff(def.masses(), fast.masses()) <= 1e-10);
        assert!(max_diff(def.masses(), &mat) <= 1e-10);
    }
}

#[test]
fn combination_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for trial in 0..60 {
        let n = 1 + trial % 5;
        let a = random_bba(&mut rng, n, false);
        let b = random_bba(&mut rng, n, false);
        let c = random_bba(&mut rng, n, false);
        for rule in [combine_conjunctive, combine_disjunctive] {
            let ab = rule(&a, &b).unwrap();
            let ba = rule(&b, &a).unwrap();
            assert!(max_diff(ab.masses(), ba.masses()) <= 1e-10);
            let left = rule(&ab, &c).unwrap();
            let right = rule(&a, &rule(&b, &c).unwrap()).unwrap();
            assert!(max_diff(left.masses(), right.masses()) <= 1e-9);
        }
        if let (Ok(ab), Ok(ba)) = (combine_dempster(&a, &b), combine_dempster(&b, &a)) {
            assert!(max_diff(ab.masses(), ba.masses()) <= 1e-10);
        }
    }
}

#[test]
fn probability_transforms_sum_to_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for trial in 0..100 {
        let m = random_bba(&mut rng, 1 + trial % 6, trial % 2 == 0);
        if let Ok(p) = betp(&m) {
            assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
        }
        if let Ok(p) = pl_p(&m) {
            assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
        }
    }
}

#[test]
fn plausibility_transform_is_combination_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let mut checked = 0;
    while checked < 50 {
        let n = 1 + checked % 5;
        let m1 = random_bba(&mut rng, n, false);
        let m2 = random_bba(&mut rng, n, false);
        let Ok(joint) = combine_dempster(&m1, &m2) else { continue };
        let (p1, p2) = (pl_p(&m1).unwrap(), pl_p(&m2).unwrap());
        let prod: Vec<f64> = p1.iter().zip(&p2).map(|(a, b)| a * b).collect();
        let total: f64 = prod.iter().sum();
        if total <= 0.0 {
            continue;
        }
        let expected: Vec<f64> = prod.iter().map(|x| x / total).collect();
        assert!(max_diff(&pl_p(&joint).unwrap(), &expected) <= 1e-9);
        checked += 1;
    }
}

#[test]
fn jaccard_kernel_is_positive_semidefinite() {
    for n in 1..=6 {
        let frame = Frame::numbered(n).unwrap();
        let de = build_matrix(MatrixKind::Jaccard, &frame, None).unwrap();
        let dim = frame.size();
        let mat = nalgebra::DMatrix::from_row_slice(dim, dim, de.entries());
        let eig = mat.symmetric_eigen();
        let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        assert!(min >= -1e-9, "n={n}: min eigenvalue {min}");
    }
}

#[test]
fn fb_entropy_of_vacuous_exceeds_uniform() {
    for n in 1..=10 {
        let vac = MassFunction::vacuous(Frame::numbered(n).unwrap());
        let h = fb_entropy(&vac).unwrap();
        let expected = (((1u64 << n) - 1) as f64).log2();
        assert!((h - expected).abs() <= 1e-10);
        if n >= 2 {
            assert!(h > (n as f64).log2());
        }
    }
}

fn bba_strategy() -> impl Strategy<Value = MassFunction> {
    (1usize..=5).prop_flat_map(|n| (Just(n), prop::collection::vec(0.0f64..1.0, 1 << n))).prop_filter_map(
        "zero total",
        |(n, mut v)| {
            let total: f64 = v.iter().sum();
            if total < 1e-6 {
                return None;
            }
            v.iter_mut().for_each(|x| *x /= total);
            MassFunction::from_dense(Frame::numbered(n).unwrap(), v).ok()
        },
    )
}

proptest! {
    #[test]
    fn jousselme_is_a_bounded_symmetric_distance(
        (a, b) in (1usize..=5).prop_flat_map(|n| {
            let s = move || prop::collection::vec(0.0f64..1.0, 1 << n);
            (s(), s()).prop_filter_map("zero total", move |(mut x, mut y)| {
                let tx: f64 = x.iter().sum();
                let ty: f64 = y.iter().sum();
                if tx < 1e-6 || ty < 1e-6 { return None; }
                x.iter_mut().for_each(|v| *v /= tx);
                y.iter_mut().for_each(|v| *v /= ty);
                let f = Frame::numbered(n).unwrap();
                Some((MassFunction::from_dense(f.clone(), x).ok()?, MassFunction::from_dense(f, y).ok()?))
            })
        })
    ) {
        let dab = jousselme_distance(&a, &b).unwrap();
        let dba = jousselme_distance(&b, &a).unwrap();
        prop_assert!((dab - dba).abs() <= 1e-12);
        prop_assert!(dab <= 1.0 + 1e-12);
        prop_assert_eq!(jousselme_distance(&a, &a).unwrap(), 0.0);
        let fb = fb_inner_product(&a, &b).unwrap();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&fb));
    }

    #[test]
    fn fbba_preserves_total_mass(m in bba_strategy()) {
        let f = fbba(&m).unwrap();
        prop_assert!((f.masses().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert!((fb_inner_product(&m, &m).unwrap() - 1.0).abs() <= 1e-12);
    }
}
