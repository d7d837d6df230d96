mod common;

use common::*;
use kernel_calculus::*;
use proptest::prelude::*;
use rand::Rng;

const TOL: f64 = 1e-9;

fn relative_gap(a: &Matrix, b: &Matrix) -> f64 {
    let scale = a.iter().flatten().fold(1.0_f64, |s, v| s.max(v.abs()));
    max_abs_diff(a, b) / scale
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn star_is_associative(seed in any::<u64>(), n in 1usize..12) {
        let mut r = rng(seed);
        let (a, b, c) = (
            random_kernel(&mut r, n, -2.0, 2.0),
            random_kernel(&mut r, n, -2.0, 2.0),
            random_kernel(&mut r, n, -2.0, 2.0),
        );
        let m = random_measure(&mut r, a.points());
        let left = star(&star(&a, &b, &m).unwrap(), &c, &m).unwrap();
        let right = star(&a, &star(&b, &c, &m).unwrap(), &m).unwrap();
        prop_assert!(relative_gap(&rows(&left), &rows(&right)) <= 1e-12);
    }

    #[test]
    fn act_is_the_operator_matrix(seed in any::<u64>(), n in 1usize..12) {
        let mut r = rng(seed);
        let k = random_kernel(&mut r, n, -2.0, 2.0);
        let m = random_measure(&mut r, k.points());
        let f: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..1.0)).collect();
        let out = act(&k, &RealFunction::new(k.points().clone(), f.clone()).unwrap(), &m).unwrap();
        let column: Matrix = f.iter().map(|v| vec![*v]).collect();
        let expected = matmul(&rows(&t_matrix(&k, &m).unwrap()), &column);
        for x in 0..n {
            prop_assert!((out.get(x) - expected[x][0]).abs() <= 1e-12);
        }
        let hs: f64 = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| k[(x, y)].powi(2) * m.weights()[x] * m.weights()[y])
            .sum::<f64>()
            .sqrt();
        prop_assert!((hs_norm(&k, &m).unwrap() - hs).abs() <= 1e-12);
    }

    #[test]
    fn embedding_geometry(seed in any::<u64>(), n in 1usize..16) {
        let mut r = rng(seed);
        let k = random_kernel(&mut r, n, 0.0, 3.0);
        let m = random_measure(&mut r, k.points());
        let (emb, rho_k) = canonical_embedding(&k, &m).unwrap();
        let kk = star(&k, &transpose(&k), &m).unwrap();
        let km = rows(&k);
        for x in 0..n {
            // ⟨ι(x), ι(y)⟩ is the μ-weighted inner product of rows.
            for y in 0..n {
                let dot: f64 = emb.coords[x].iter().zip(&emb.coords[y]).map(|(a, b)| a * b).sum();
                let weighted: f64 = (0..n).map(|z| km[x][z] * km[y][z] * m.weights()[z]).sum();
                prop_assert!((dot - weighted).abs() <= 1e-12);
                prop_assert!((rho_k[(x, y)] - weighted_row_distance(&km, m.weights(), x, y)).abs() <= 1e-12);
            }
            prop_assert!(kk[(x, x)] >= 0.0);
        }
    }

    #[test]
    fn rho_of_a_distance(seed in any::<u64>(), n in 1usize..16) {
        let mut r = rng(seed);
        let d = hat(&random_kernel(&mut r, n, 0.0, 5.0)).unwrap();
        let m = random_measure(&mut r, d.points());
        let rd = rows(&rho(&d, &m).unwrap());
        let dm = rows(&d);
        for x in 0..n {
            for y in 0..n {
                prop_assert!(rd[x][y] <= dm[x][y].max(dm[y][x]) + TOL);
            }
        }
    }

    #[test]
    fn metric_embeddings(seed in any::<u64>(), n in 2usize..16) {
        let mut r = rng(seed);
        let d = random_metric(&mut r, n);
        let m = random_measure(&mut r, d.points());
        let rd = rows(&rho(&d, &m).unwrap());
        let dd = rows(&rho(&star(&d, &d, &m).unwrap(), &m).unwrap());
        let dm = rows(&d);
        let diam = d.max_entry();
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    prop_assert!(rd[x][y] > 0.0);
                    prop_assert!(dd[x][y] > 0.0);
                }
                prop_assert!(dd[x][y] <= diam * dm[x][y] + TOL);
                for yp in 0..n {
                    prop_assert!((rd[x][y] - rd[x][yp]).abs() <= dm[y][yp] + TOL);
                }
            }
        }
    }

    #[test]
    fn j_norm_bound(seed in any::<u64>(), n in 2usize..12) {
        let mut r = rng(seed);
        let d = random_metric(&mut r, n);
        let m = random_measure(&mut r, d.points());
        let samples: Vec<RealFunction> = (0..8)
            .map(|_| RealFunction::new(d.points().clone(), (0..n).map(|_| r.gen_range(-3.0..3.0)).collect()).unwrap())
            .collect();
        let c = j_norm_check(&d, &m, &samples, TOL).unwrap();
        prop_assert!(c.holds, "{:?}", c);
        prop_assert_eq!(c.factor, d.max_entry().max(1.0));
    }

    #[test]
    fn z_rho_on_symmetric_kernels(seed in any::<u64>(), n in 1usize..24) {
        let mut r = rng(seed);
        let k = kernel(random_symmetric(&mut r, n, 0.0, 4.0));
        let m = random_measure(&mut r, k.points());
        prop_assert!(verify_z_rho(&k, &m, TOL).unwrap() <= 1e-12 * 16.0);
    }
}

#[test]
fn rejects_bad_measures() {
    let p = PointSet::numbered(3).unwrap();
    assert!(matches!(
        MeasuredSpace::new(p.clone(), vec![0.5, 0.5, 0.0]),
        Err(Error::InvalidMeasure(_))
    ));
    assert!(matches!(
        MeasuredSpace::new(p.clone(), vec![0.5, 0.6, 0.1]),
        Err(Error::InvalidMeasure(_))
    ));
    assert!(MeasuredSpace::new(p, vec![0.2, 0.3, 0.5]).is_ok());
}

#[test]
fn z_rho_needs_symmetry() {
    let k = kernel(vec![vec![0.0, 1.0], vec![2.0, 0.0]]);
    let m = MeasuredSpace::uniform(k.points().clone());
    assert!(matches!(
        verify_z_rho(&k, &m, TOL),
        Err(Error::Precondition { .. })
    ));
}

#[test]
fn reflection_is_an_isometry_of_the_circle() {
    let n = 12;
    let f = fixture(FixtureKind::Circle, n, FixtureMetric::Chord).unwrap();
    let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    assert!(
        check_measure_preserving_isometry(&f.kernel, &f.space, &reflection, 1e-12)
            .unwrap()
            .holds
    );
    assert!(!orbit_transitive(&[reflection], n).unwrap());
    let swap: Vec<usize> = (0..n).map(|i| if i < 2 { 1 - i } else { i }).collect();
    let c = check_measure_preserving_isometry(&f.kernel, &f.space, &swap, 1e-12).unwrap();
    assert!(!c.holds && c.witness.is_some());
}
