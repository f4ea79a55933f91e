use geocontact::point_process::*;
use geocontact::stats::{ks_one_sample, mean_and_stderr};
use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

#[test]
fn degenerate_volume_is_empty() {
    let d = SpatialDomain::new(1, 0.0, Boundary::Free).unwrap();
    assert!(sample_point_cloud(d, 7).is_empty());
}

#[test]
fn poisson_count_mean() {
    let d = SpatialDomain::new(1, 1000.0, Boundary::Free).unwrap();
    let counts: Vec<f64> = (0..500).map(|s| sample_point_cloud(d, s).len() as f64).collect();
    let (m, _) = mean_and_stderr(&counts);
    let band = 3.0 * (1000.0f64 / 500.0).sqrt();
    assert!((m - 1000.0).abs() <= band, "mean count {m}");
}

#[test]
fn marks_are_uniform() {
    let d = SpatialDomain::new(2, 100.0, Boundary::Free).unwrap();
    let cloud = sample_point_cloud(d, 11);
    let ks = ks_one_sample(cloud.marks(), |x| x.clamp(0.0, 1.0));
    assert!(ks.p_value > 0.01, "{ks:?}");
}

#[test]
fn positions_stay_inside_the_box() {
    let d = SpatialDomain::new(3, 8.0, Boundary::Torus).unwrap();
    let cloud = sample_point_cloud(d, 3);
    for v in cloud.vertices() {
        assert!(v.position.iter().all(|x| (-4.0..=4.0).contains(x)));
        assert!(v.mark > 0.0 && v.mark < 1.0);
    }
}

#[test]
fn sampling_is_deterministic() {
    let d = SpatialDomain::new(2, 30.0, Boundary::Torus).unwrap();
    let a = sample_point_cloud(d, 99);
    let b = sample_point_cloud(d, 99);
    assert_eq!(a.len(), b.len());
    assert_eq!(a.marks(), b.marks());
    for i in 0..a.len() {
        assert_eq!(a.position(i), b.position(i));
    }
    let c = sample_point_cloud(d, 100);
    assert_ne!(a.marks(), c.marks());
}

#[test]
fn quadrants_are_homogeneous() {
    // Given the total, the 4 quadrant counts are multinomial; the summed
    // Pearson statistic over 200 clouds is chi-square with 600 dof.
    let d = SpatialDomain::new(2, 20.0, Boundary::Free).unwrap();
    let mut stat = 0.0;
    let mut dof = 0.0;
    for seed in 0..200 {
        let cloud = sample_point_cloud(d, seed);
        if cloud.is_empty() {
            continue;
        }
        let mut c = [0.0f64; 4];
        for v in cloud.vertices() {
            let q = usize::from(v.position[0] >= 0.0) + 2 * usize::from(v.position[1] >= 0.0);
            c[q] += 1.0;
        }
        let e = cloud.len() as f64 / 4.0;
        stat += c.iter().map(|x| (x - e) * (x - e) / e).sum::<f64>();
        dof += 3.0;
    }
    let p = 1.0 - ChiSquared::new(dof).unwrap().cdf(stat);
    assert!(p > 0.01, "chi-square {stat} on {dof} dof, p = {p}");
}

#[test]
fn palm_origin_examples() {
    let d = SpatialDomain::new(2, 0.0, Boundary::Free).unwrap();
    let zero = sample_point_cloud(d, 1);
    let one = add_palm_origin(zero, 5).unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!(one.position(0), &[0.0, 0.0]);

    let d = SpatialDomain::new(2, 10.0, Boundary::Torus).unwrap();
    let cloud = sample_point_cloud(d, 2);
    let n = cloud.len();
    let palm = add_palm_origin(cloud, 3).unwrap();
    assert_eq!(palm.len(), n + 1);
    let o = palm.palm_origin().unwrap();
    assert_eq!(palm.position(o), &[0.0, 0.0]);
    assert!(add_palm_origin(palm, 4).is_err());
}

#[test]
fn palm_mark_is_uniform() {
    let d = SpatialDomain::new(1, 0.0, Boundary::Free).unwrap();
    let marks: Vec<f64> = (0..10_000u64)
        .map(|s| {
            let c = add_palm_origin(sample_point_cloud(d, s), s).unwrap();
            c.mark(c.palm_origin().unwrap())
        })
        .collect();
    let ks = ks_one_sample(&marks, |x| x.clamp(0.0, 1.0));
    assert!(ks.p_value > 0.01, "{ks:?}");
}

#[test]
fn fixed_palm_mark() {
    let d = SpatialDomain::new(1, 5.0, Boundary::Free).unwrap();
    let c = add_palm_origin_with_mark(sample_point_cloud(d, 1), 0.25).unwrap();
    assert_eq!(c.mark(c.palm_origin().unwrap()), 0.25);
}

#[test]
fn distance_examples() {
    let free = SpatialDomain::new(1, 10.0, Boundary::Free).unwrap();
    let torus = SpatialDomain::new(1, 10.0, Boundary::Torus).unwrap();
    assert_eq!(distance(&free, &[-4.5], &[4.5]), 9.0);
    assert!((distance(&torus, &[-4.5], &[4.5]) - 1.0).abs() < 1e-12);
    assert_eq!(distance(&free, &[1.5], &[1.5]), 0.0);
    assert_eq!(distance(&torus, &[1.5], &[1.5]), 0.0);
}

#[test]
fn rejects_bad_domains() {
    assert!(SpatialDomain::new(0, 1.0, Boundary::Free).is_err());
    assert!(SpatialDomain::new(1, -1.0, Boundary::Free).is_err());
}

fn point(d: usize, l: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-l / 2.0..l / 2.0, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn torus_distance_is_a_metric(a in point(2, 7.0), b in point(2, 7.0), c in point(2, 7.0)) {
        let t = SpatialDomain::new(2, 7.0, Boundary::Torus).unwrap();
        let f = SpatialDomain::new(2, 7.0, Boundary::Free).unwrap();
        let ab = distance(&t, &a, &b);
        prop_assert!((ab - distance(&t, &b, &a)).abs() <= 1e-12);
        prop_assert!(ab <= distance(&t, &a, &c) + distance(&t, &c, &b) + 1e-12);
        prop_assert!(ab <= distance(&f, &a, &b) + 1e-12);
        for i in 0..2 {
            prop_assert!(t.axis_gap(a[i], b[i]) <= (a[i] - b[i]).abs() + 1e-12);
        }
    }
}
