use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::rational::{int, rat, Point, Rational};
use crate::testing::*;

fn wall_with(x: &ToricVariety, rays: &[usize]) -> Wall {
    x.walls().iter().find(|w| w.rays == rays).unwrap().clone()
}

#[test]
fn p2_validates() {
    let x = p2();
    assert_eq!(x.dim(), 2);
    assert!(x.is_fano());
    assert!(x.is_projective_space());
}

#[test]
fn missing_cone_is_incomplete() {
    let fan = Fan::new(
        "broken",
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
        vec![vec![0, 1], vec![1, 2]],
    );
    assert!(matches!(fan.validate(), Err(Error::NotComplete { .. })));
}

#[test]
fn non_unimodular_cone_rejected() {
    let fan = Fan::new(
        "bad",
        2,
        vec![vec![1, 0], vec![1, 2], vec![-1, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 0]],
    );
    assert_eq!(
        fan.validate().unwrap_err(),
        Error::NotSmooth { cone: 0, det: 2 }
    );
}

#[test]
fn structural_errors() {
    let nonprim = Fan::new(
        "x",
        2,
        vec![vec![2, 0], vec![0, 1], vec![-1, -1]],
        vec![vec![0, 1]],
    );
    assert!(matches!(
        nonprim.validate(),
        Err(Error::NonPrimitiveRay { index: 0, .. })
    ));
    let dup = Fan::new("x", 2, vec![vec![1, 0], vec![1, 0]], vec![vec![0, 1]]);
    assert_eq!(
        dup.validate().unwrap_err(),
        Error::DuplicateRay {
            first: 0,
            second: 1
        }
    );
    let flat = Fan::new("x", 2, vec![vec![1, 0], vec![-1, 0]], vec![vec![0, 1]]);
    assert_eq!(
        flat.validate().unwrap_err(),
        Error::NotSimplicial { cone: 0 }
    );
    // Consecutive cones are unimodular and every wall separates its two cones,
    // but the cycle winds twice around the origin.
    let twice: Vec<[i64; 2]> = vec![
        [1, 0],
        [-3, 1],
        [-1, 0],
        [-3, -1],
        [-2, -1],
        [-3, -2],
        [2, 1],
        [1, 1],
        [0, 1],
        [-1, -1],
    ];
    let k = twice.len();
    let fan = Fan::new(
        "x",
        2,
        twice.iter().map(|r| r.to_vec()).collect(),
        (0..k).map(|i| vec![i, (i + 1) % k]).collect(),
    );
    assert!(matches!(
        fan.validate(),
        Err(Error::OverlappingCones { .. })
    ));
}

#[test]
fn anticanonical_and_polytopes() {
    let x = f1();
    let k = TDivisor::anticanonical(&x);
    assert_eq!(k.coeffs(), &[int(1), int(1), int(1), int(1)]);
    let verts = k.section_polytope().vertices().unwrap().to_vec();
    let expected: Vec<Point> = [[-1, -1], [-1, 1], [0, -1], [2, 1]]
        .iter()
        .map(|v| Point::from_ints(v))
        .collect();
    assert_eq!(verts, expected);
    let o1 = TDivisor::from_ints(p2(), &[0, 0, 1]).unwrap();
    assert!(o1
        .section_polytope()
        .equals(&crate::Polytope::standard_simplex(2))
        .unwrap());
    let zero = TDivisor::zero(&x);
    assert_eq!(
        zero.section_polytope().vertices().unwrap(),
        &[Point::zero(2)]
    );
    assert_eq!(zero.vol().unwrap(), int(0));
}

#[test]
fn seeded_vertices_match_enumeration() {
    for x in surfaces() {
        let k = TDivisor::anticanonical(&x);
        let seeded = k.section_polytope();
        let plain = crate::Polytope::new(2, seeded.halfspaces().to_vec()).unwrap();
        assert_eq!(
            seeded.vertices().unwrap(),
            plain.vertices().unwrap(),
            "{}",
            x.name()
        );
    }
}

#[test]
fn anticanonical_degrees() {
    let expected = [9, 8, 8, 7, 6];
    for (x, d) in surfaces().into_iter().zip(expected) {
        assert_eq!(
            TDivisor::anticanonical(&x).vol().unwrap(),
            int(d),
            "{}",
            x.name()
        );
        assert!(x.is_fano());
    }
    assert_eq!(
        TDivisor::from_ints(p2(), &[0, 0, 1])
            .unwrap()
            .vol()
            .unwrap(),
        int(1)
    );
}

#[test]
fn wall_relations() {
    let x = p2();
    assert_eq!(x.walls().len(), 3);
    assert!(x.walls().iter().all(|w| w.relation == [1]));
    let f = f1();
    let w = wall_with(&f, &[1]);
    assert_eq!(w.relation, [-1]);
    assert_eq!((w.cone_a, w.cone_b), (0, 1));
    assert_eq!(TDivisor::anticanonical(&f).intersect(&w), int(1));
    let q = p1xp1();
    assert_eq!(q.walls().len(), 4);
    assert!(q.walls().iter().all(|w| w.relation == [0]));
    for x in surfaces() {
        for w in x.walls() {
            let sum: Vec<i64> = (0..2)
                .map(|k| {
                    x.rays()[w.ray_a][k]
                        + x.rays()[w.ray_b][k]
                        + w.rays
                            .iter()
                            .zip(&w.relation)
                            .map(|(&r, &b)| b * x.rays()[r][k])
                            .sum::<i64>()
                })
                .collect();
            assert_eq!(sum, [0, 0]);
        }
    }
}

#[test]
fn intersection_numbers() {
    let o1 = TDivisor::from_ints(p2(), &[0, 0, 1]).unwrap();
    assert!(o1.wall_numbers().iter().all(|v| *v == int(1)));
    let zero = TDivisor::zero(&f1());
    assert!(zero.wall_numbers().iter().all(|v| *v == int(0)));
}

#[test]
fn positivity_predicates() {
    let f = f1();
    assert!(TDivisor::anticanonical(&f).is_ample());
    let fiber = TDivisor::from_ints(f.clone(), &[1, 0, 0, 0]).unwrap();
    assert!(fiber.is_nef() && !fiber.is_ample());
    assert!(!fiber.is_big().unwrap());
    // u_1 = u_0 + u_2, so D_1 is the (-1)-curve.
    let exceptional = TDivisor::from_ints(f.clone(), &[0, 1, 0, 0]).unwrap();
    assert_eq!(
        exceptional.wall_numbers(),
        vec![int(1), int(-1), int(1), int(0)]
    );
    assert!(!exceptional.is_nef());
    let neg = TDivisor::from_ints(p2(), &[-1, 0, 0]).unwrap();
    assert!(!neg.is_nef());
}

#[test]
fn f1_fiber_heavy_class_is_not_ample_in_this_ray_order() {
    let d = TDivisor::from_ints(f1(), &[0, 1, 0, 2]).unwrap();
    assert_eq!(d.wall_numbers(), vec![int(3), int(-1), int(3), int(2)]);
    assert!(!d.is_ample());
    let e = TDivisor::from_ints(f1(), &[4, 1, 0, 0]).unwrap();
    assert_eq!(e.wall_numbers(), vec![int(1), int(3), int(1), int(4)]);
    assert!(e.is_ample());
}

#[test]
fn blowup_of_p2_is_f1() {
    let b = Blowup::new(&p2(), 0).unwrap();
    assert_eq!(b.variety().rays().last().unwrap(), &vec![1, 1]);
    assert!(b.variety().is_isomorphic(&f1()));
    assert!(!b.variety().is_isomorphic(&p1xp1()));
    assert!(f1().is_isomorphic(&f1()));
}

#[test]
fn three_point_blowup_is_valid() {
    let mut x = p2();
    for _ in 0..3 {
        // Next fixed point of the original P^2 that is still untouched.
        let cone = x
            .cones()
            .iter()
            .position(|c| c.iter().all(|&r| r < 3))
            .unwrap();
        x = Blowup::new(&x, cone).unwrap().variety().clone();
    }
    assert_eq!(x.num_rays(), 6);
    assert!(x.is_isomorphic(&bl3()));
}

#[test]
fn pullback_and_exceptional() {
    let x = p2();
    let o1 = TDivisor::from_ints(x.clone(), &[0, 0, 1]).unwrap();
    let b = Blowup::new(&x, 0).unwrap();
    let pulled = b.pullback(&o1).unwrap();
    assert!(pulled
        .section_polytope()
        .equals(&o1.section_polytope())
        .unwrap());
    assert_eq!(pulled.vol().unwrap(), int(1));
    let e = b.exceptional();
    for x in [int(0), rat(1, 4), rat(1, 2), int(1)] {
        let d = pulled.sub(&e.scale(&x)).unwrap();
        assert_eq!(d.vol().unwrap(), int(1) - &x * &x);
    }
    assert!(matches!(
        b.pullback(&TDivisor::anticanonical(&f1())),
        Err(Error::VarietyMismatch)
    ));
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-6i64..=12, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn surface_and_divisor() -> impl Strategy<Value = TDivisor> {
    (0usize..5, proptest::collection::vec(coeff(), 6)).prop_map(|(i, c)| {
        let x = surfaces()[i].clone();
        let n = x.num_rays();
        TDivisor::new(x, c[..n].to_vec()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn volume_is_homogeneous(d in surface_and_divisor(), c in (1i64..=7, 1i64..=5)) {
        let c = rat(c.0, c.1);
        prop_assume!(d.section_polytope().vertices().is_ok());
        prop_assert_eq!(d.scale(&c).vol().unwrap(), d.vol().unwrap() * &c * &c);
    }

    #[test]
    fn positivity_chain(d in surface_and_divisor()) {
        if d.is_ample() {
            prop_assert!(d.is_nef());
            prop_assert!(d.is_big().unwrap());
        }
        if d.is_nef() {
            prop_assert!(!d.section_polytope().is_empty().unwrap());
        }
    }

    #[test]
    fn class_functions_ignore_linear_equivalence(d in surface_and_divisor(), m in (-3i64..=3, -3i64..=3, 1i64..=3)) {
        let shift = Point(vec![rat(m.0, m.2), rat(m.1, m.2)]);
        let e = d.shift(&shift);
        prop_assert_eq!(e.wall_numbers(), d.wall_numbers());
        prop_assert_eq!(e.vol().unwrap(), d.vol().unwrap());
        prop_assert_eq!(e.is_big().unwrap(), d.is_big().unwrap());
    }

    #[test]
    fn blowup_volume_drops_continuously(i in 0usize..5, cone in 0usize..6, xs in proptest::collection::vec((0i64..=24, 1i64..=4), 4)) {
        let x = surfaces()[i].clone();
        let cone = cone % x.cones().len();
        let b = Blowup::new(&x, cone).unwrap();
        let k = TDivisor::anticanonical(&x);
        let pulled = b.pullback(&k).unwrap();
        prop_assert_eq!(pulled.vol().unwrap(), k.vol().unwrap());
        let mut ts: Vec<Rational> = xs.iter().map(|&(p, q)| rat(p, q)).collect();
        ts.sort();
        let vols: Vec<Rational> = ts.iter().map(|t| pulled.sub(&b.exceptional().scale(t)).unwrap().vol().unwrap()).collect();
        prop_assert!(vols.windows(2).all(|w| w[0] >= w[1]));
    }
}
