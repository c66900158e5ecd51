mod common;

use common::*;
use kirwan_core::cohomology::strictly_semistable_support;
use kirwan_core::*;
use num_traits::Signed;
use proptest::prelude::*;
use rand::Rng;

fn arb_vector(rank: usize) -> impl Strategy<Value = RationalVector> {
    prop::collection::vec((-6i64..=6, 1i64..=3), rank)
        .prop_map(|c| RationalVector::new(c.into_iter().map(|(n, d)| qf(n, d)).collect()))
}

fn arb_points() -> impl Strategy<Value = Vec<RationalVector>> {
    (1usize..=3).prop_flat_map(|r| prop::collection::vec(arb_vector(r), 1..=6))
}

fn arb_system() -> impl Strategy<Value = WeightSystem> {
    (1usize..=2).prop_flat_map(|r| {
        prop::collection::vec(prop::collection::vec(-4i64..=4, r), 1..=5).prop_map(|ws| {
            WeightSystem::with_identity(ws.iter().map(|w| v(w)).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn min_norm_is_optimal(pts in arb_points()) {
        let ip = InnerProduct::identity(pts[0].rank());
        let p = min_norm_point(&pts, &ip).unwrap();
        for x in &pts {
            prop_assert!(!ip.dot(&p, &(x - &p)).is_negative());
        }
        prop_assert_eq!(&p, &face_enumeration_min_norm(&pts, &ip));
        prop_assert_eq!(p, min_norm_point(&pts, &ip).unwrap());
    }

    #[test]
    fn hull_position_matches_min_norm(pts in arb_points()) {
        let ip = InnerProduct::identity(pts[0].rank());
        let p = min_norm_point(&pts, &ip).unwrap();
        match hull_position_of_origin(&pts).unwrap() {
            HullPosition::Interior => prop_assert!(p.is_zero()),
            HullPosition::Outside => prop_assert!(!p.is_zero()),
            HullPosition::Boundary => prop_assert!(p.is_zero()),
        }
    }

    #[test]
    fn ray_window_grows_with_hull(pts in arb_points(), extra in arb_vector(3)) {
        let r = pts[0].rank();
        let extra = RationalVector::new(extra.coords()[..r].to_vec());
        let dir = RationalVector::new((0..r).map(|i| q(i as i64 + 1)).collect());
        let before = ray_hull_window(&dir, &pts).unwrap();
        let mut more = pts.clone();
        more.push(extra);
        let after = ray_hull_window(&dir, &more).unwrap();
        if let Some(b) = before {
            let a = after.expect("window cannot vanish");
            prop_assert!(a.lo <= b.lo && b.hi <= a.hi);
        }
    }

    #[test]
    fn moment_value_in_support_hull(ws in arb_system(), raw in prop::collection::vec(0i64..=5, 5)) {
        let mut masses: Vec<Q> = raw[..ws.len()].iter().map(|&x| q(x)).collect();
        masses[0] += q(1);
        let p = PointSample::normalized(masses).unwrap();
        let mu = moment_value(&ws, &p);
        let pts = ws.support_weights(&p.support());
        prop_assert!(kirwan_core::geometry::hull_contains(&pts, &mu));
    }

    #[test]
    fn load_inverts_serialize(ws in arb_system()) {
        let text = serialize_action(&ws, None);
        let (back, rd) = load_action(&text).unwrap();
        prop_assert_eq!(back, ws);
        prop_assert!(rd.is_none());
    }

    #[test]
    fn stratum_invariants(ws in arb_system()) {
        let ip = ws.ip();
        for si in index_set(&ws, None).unwrap() {
            prop_assert!(si.z_support.is_subset(&si.y_support));
            prop_assert_eq!(si.fiber_dim, si.y_support.len() - si.z_support.len());
            prop_assert_eq!(
                min_norm_point(&ws.support_weights(&si.z_support), ip).unwrap(),
                si.beta.clone()
            );
            for i in si.y_support.iter() {
                prop_assert!(ip.dot(ws.weight(i), &si.beta) >= si.norm_sq);
            }
        }
    }

    #[test]
    fn classification_agrees_with_partition(ws in arb_system()) {
        let part = strata_partition(&ws).unwrap();
        let betas: Vec<RationalVector> =
            index_set(&ws, None).unwrap().into_iter().map(|s| s.beta).collect();
        prop_assert_eq!(part.len(), (1usize << ws.len()) - 1);
        for (s, beta) in &part {
            let class = classify_support(s, &ws);
            prop_assert_eq!(&class.beta(ws.rank()), beta);
            prop_assert_eq!(
                matches!(class, StabilityClass::Semistable | StabilityClass::Stable),
                beta.is_zero()
            );
            prop_assert!(betas.contains(beta));
        }
    }

    #[test]
    fn series_ring_axioms(
        a in prop::collection::vec(-3i64..=3, 0..5), ea in 0u32..3,
        b in prop::collection::vec(-3i64..=3, 0..5), eb in 0u32..3,
        c in prop::collection::vec(-3i64..=3, 0..5), ec in 0u32..3,
        d in 0usize..3,
    ) {
        let s = |x: &Vec<i64>, e| PoincareSeries::new(Polynomial::new(x.clone()), e);
        let (a, b, c) = (s(&a, ea), s(&b, eb), s(&c, ec));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a - &a, PoincareSeries::zero());
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!((&a + &b).shift(d), &a.shift(d) + &b.shift(d));
        let n = 6;
        let sum: Vec<i64> = a.expand(n).iter().zip(b.expand(n)).map(|(x, y)| x + y).collect();
        prop_assert_eq!((&a + &b).expand(n), sum);
    }
}

#[test]
fn semistable_series_nonnegative() {
    let mut r = rng(11);
    for _ in 0..60 {
        let ws = random_system(&mut r, 3, 6);
        let s = semistable_series(&ws).unwrap();
        assert!(
            s.expand(ws.dim()).iter().all(|&c| c >= 0),
            "{:?}: {s}",
            ws.weights()
        );
    }
}

#[test]
fn betti_matches_h_vector() {
    let mut r = rng(12);
    let mut compared = 0;
    while compared < 40 {
        let ws = random_system(&mut r, 2, 6);
        let Ok(betti) = quotient_betti(&ws) else {
            continue;
        };
        let ss: Vec<Vec<usize>> = ws
            .full_support()
            .subsets()
            .filter(|s| hull_position_of_origin(&ws.support_weights(s)).unwrap() != HullPosition::Outside)
            .map(|s| s.indices().to_vec())
            .collect();
        assert_eq!(betti.coeffs(), h_vector_betti(&ws, &ss), "{:?}", ws.weights());
        if !betti.coeffs().is_empty() {
            assert!(betti.is_palindromic());
            assert_eq!(betti.coeffs()[0], 1);
        }
        compared += 1;
    }
}

#[test]
fn strictly_semistable_reported() {
    let ws = WeightSystem::with_identity(vec![v(&[1, 0]), v(&[-1, 0])]).unwrap();
    assert!(strictly_semistable_support(&ws).is_some());
    assert!(matches!(
        quotient_betti(&ws),
        Err(CohomologyError::StrictlySemistable(_))
    ));
}

#[test]
fn index_set_with_roots_matches_oracle() {
    let rd = type_a(2);
    let mut r = rng(13);
    for _ in 0..15 {
        let n = r.random_range(1..=4);
        let ws = WeightSystem::with_identity(
            (0..n)
                .map(|_| v(&[r.random_range(-3..=3), r.random_range(-3..=3), r.random_range(-3..=3)]))
                .collect(),
        )
        .unwrap();
        let got: Vec<RationalVector> = match index_set(&ws, Some(&rd)) {
            Ok(b) => b.into_iter().map(|s| s.beta).collect(),
            Err(StrataError::NegativeCodim(_)) => continue,
            Err(e) => panic!("{e}"),
        };
        assert_eq!(got, brute_force_index_set(&ws, Some(&rd)));
    }
}

#[test]
fn window_soundness_and_compactness() {
    let mut r = rng(14);
    let mut seen = 0;
    for _ in 0..80 {
        let ws = random_system(&mut r, 2, 5);
        for si in index_set(&ws, None).unwrap() {
            if si.beta.is_zero() {
                continue;
            }
            let w = epsilon_window(&si, &ws).unwrap();
            let ys = ws.support_weights(&si.y_support);
            for eps in [qf(1, 7), q(1), q(3)] {
                let rep = unstable_quotient(&si, &ws, &eps).unwrap();
                let lvl = &eps + q(1);
                let inside = ray_hull_window(&si.beta, &ys)
                    .unwrap()
                    .is_some_and(|iv| iv.contains(&lvl));
                assert_eq!(rep.nonempty, inside);
                if rep.locally_free && rep.nonempty {
                    let b = rep.betti.as_ref().unwrap();
                    assert!(b.is_palindromic() && b.coeffs()[0] == 1);
                }
            }
            let Some(eps_max) = w.eps_max else {
                assert!(w.empty_for_all_eps);
                continue;
            };
            let samples: Vec<Q> = [qf(1, 5), qf(1, 2), qf(4, 5)]
                .into_iter()
                .map(|f| &eps_max * f)
                .collect();
            let reports: Vec<QuotientReport> = samples
                .iter()
                .map(|e| unstable_quotient(&si, &ws, e).unwrap())
                .collect();
            assert!(reports.windows(2).all(|p| p[0].same_quotient(&p[1])));
            for s in &reports[0].semistable_supports {
                assert_eq!(
                    classify_support(s, &ws),
                    StabilityClass::Unstable(si.beta.clone())
                );
            }
            // Shifted weights keep the half-space bound at the level hyperplane.
            let ip = ws.ip();
            for i in si.y_support.iter() {
                assert!(ip.dot(ws.weight(i), &si.beta) >= si.norm_sq);
            }
            seen += 1;
        }
    }
    assert!(seen > 10);
}

#[test]
fn sweep_properties() {
    let mut r = rng(15);
    for rd in [type_a(2), type_a(3), type_b2()] {
        let k = rd.simple_roots().len();
        let pds: Vec<ParabolicData> = (0u32..1 << k)
            .map(|m| ParabolicData::new(rd.clone(), (0..k).filter(|i| m >> i & 1 == 1).collect()).unwrap())
            .collect();
        for _ in 0..40 {
            let xi = RationalVector::new(
                (0..rd.rank()).map(|_| random_rational(&mut r, -4, 4, 2)).collect(),
            );
            for (m, pd) in pds.iter().enumerate() {
                let (rep, word) = dominant_representative(&xi, pd).unwrap();
                for &a in pd.sp() {
                    assert!(!rd.ip().dot(&rep, &rd.simple_roots()[a]).is_negative());
                }
                let mut back = rep.clone();
                for &label in word.iter().rev() {
                    back = rd.reflect(&back, &rd.simple_roots()[label - 1]);
                }
                assert_eq!(back, xi);

                let member = in_sweep_cone(&xi, pd).unwrap();
                if m == 0 {
                    assert_eq!(member, chamber_membership(&xi, &rd).unwrap());
                }
                if m == pds.len() - 1 {
                    assert!(member);
                }
                for (m2, pd2) in pds.iter().enumerate() {
                    if m & m2 == m && member {
                        assert!(in_sweep_cone(&xi, pd2).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn b2_long_root_parabolic_agrees() {
    let rd = type_b2();
    let pd = ParabolicData::new(rd.clone(), vec![0]).unwrap();
    let mut r = rng(16);
    for _ in 0..20 {
        let xi = RationalVector::new((0..2).map(|_| random_rational(&mut r, -3, 3, 4)).collect());
        assert_eq!(
            in_sweep_cone(&xi, &pd).unwrap(),
            brute_force_sweep(&xi, &pd).unwrap()
        );
    }
}

#[test]
fn face_data_consistent_with_sweep_interior() {
    let rd = type_a(2);
    for sp in [vec![], vec![0], vec![1], vec![0, 1]] {
        let pd = ParabolicData::new(rd.clone(), sp.clone()).unwrap();
        for xi in [v(&[2, 1, 0]), v(&[1, 1, 0]), v(&[1, 0, 0]), v(&[1, 1, 1])] {
            let f = face_data(&xi, &pd).unwrap();
            assert_eq!(f.stabilizer_is_torus, f.face_equations.is_empty());
            for e in &f.face_equations {
                assert!(!pd.in_parabolic(e));
                assert!(f.vanishing_roots.contains(e));
            }
            if sp.len() == 2 {
                assert!(f.stabilizer_is_torus, "full parabolic absorbs every wall");
            }
        }
    }
}
