use bern_core::bernoulli::{bernoulli_polynomial, bernoulli_value};
use bern_core::enclosure::{cos_turns, sin_turns, trig_enclosure, RationalInterval, TrigFn};
use bern_core::exact::{from_int, rat, Poly, Rational};
use bern_core::inequalities::default_grid;
use bern_core::roots::{count_roots, isolate_roots};
use num_traits::{One, Signed};
use proptest::prelude::*;

fn rational(max_num: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (-max_num..=max_num, 1..=max_den).prop_map(|(p, q)| rat(p, q))
}

fn sign(n: u32) -> Rational {
    if n.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Products of linear factors with distinct small rational roots.
fn split_poly() -> impl Strategy<Value = (Poly, Vec<Rational>)> {
    prop::collection::btree_set((-40i64..=40, 1i64..=8), 1..6).prop_map(|set| {
        let mut roots: Vec<Rational> = set.into_iter().map(|(p, q)| rat(p, q)).collect();
        roots.sort();
        roots.dedup();
        let p = roots
            .iter()
            .fold(Poly::constant(Rational::one()), |acc, r| {
                &acc * &Poly::linear_root(r)
            });
        (p, roots)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mirror_symmetry(n in 0u32..40, t in rational(50, 50)) {
        let lhs = bernoulli_value(n, &(Rational::one() - &t));
        prop_assert_eq!(lhs, sign(n) * bernoulli_value(n, &t));
    }

    #[test]
    fn derivative_identity(n in 1u32..40, t in rational(20, 20)) {
        let d = bernoulli_polynomial(n).derivative().eval(&t);
        prop_assert_eq!(d, from_int(n) * bernoulli_value(n - 1, &t));
    }

    #[test]
    fn unit_step_difference(n in 1u32..30, t in rational(20, 20)) {
        let diff = bernoulli_value(n, &(&t + Rational::one())) - bernoulli_value(n, &t);
        prop_assert_eq!(diff, from_int(n) * num_traits::Pow::pow(&t, n - 1));
    }

    #[test]
    fn mirror_on_sixteen_point_grid(n in 0u32..30, k in 1u32..16) {
        let grid: Vec<Rational> = (1..16).map(|j| rat(j, 16)).collect();
        let t = &grid[(k - 1) as usize];
        let mirrored = Rational::one() - t;
        prop_assert!(grid.contains(&mirrored));
        prop_assert_eq!(bernoulli_value(n, &mirrored), sign(n) * bernoulli_value(n, t));
        // the suite grid holds the left halves of these points
        let left = default_grid(8);
        prop_assert!(*t >= rat(1, 2) || left.contains(t));
    }

    #[test]
    fn sturm_count_matches_isolation((p, roots) in split_poly(), a in rational(6, 4), w in 1i64..40) {
        let b = &a + rat(w, 4);
        let inside = roots.iter().filter(|r| **r > a && **r < b).count();
        if roots.iter().any(|r| *r == a || *r == b) {
            return Ok(());
        }
        prop_assert_eq!(count_roots(&p, &a, &b).unwrap(), inside);
        let boxes = isolate_roots(&p, &a, &b, &rat(1, 1 << 20)).unwrap();
        prop_assert_eq!(boxes.len(), inside);
        for (iv, r) in boxes.iter().zip(roots.iter().filter(|r| **r > a && **r < b)) {
            prop_assert!(iv.lo <= *r && *r <= iv.hi);
        }
    }

    #[test]
    fn interval_arithmetic_contains_exact(
        x in rational(100, 30), y in rational(100, 30),
        rx in 0i64..10, ry in 0i64..10,
    ) {
        let ix = RationalInterval::new(&x - rat(rx, 7), &x + rat(rx, 11));
        let iy = RationalInterval::new(&y - rat(ry, 13), &y + rat(ry, 5));
        prop_assert!((&ix + &iy).contains(&(&x + &y)));
        prop_assert!((&ix - &iy).contains(&(&x - &y)));
        prop_assert!((&ix * &iy).contains(&(&x * &y)));
        if let Ok(q) = ix.div(&iy) {
            prop_assert!(q.contains(&(&x / &y)));
        }
    }

    #[test]
    fn polynomial_enclosure_contains_values(n in 0u32..25, t in rational(40, 40), r in 0i64..5) {
        let p = bernoulli_polynomial(n);
        let iv = RationalInterval::new(&t - rat(r, 64), &t + rat(r, 32));
        let enclosure = iv.eval_poly(&p);
        for s in [iv.lo().clone(), t.clone(), iv.hi().clone()] {
            prop_assert!(enclosure.contains(&p.eval(&s)));
        }
    }

    #[test]
    fn pythagorean_identity(t in rational(200, 97), bits in 16u32..160) {
        let s = sin_turns(&t, bits).unwrap();
        let c = cos_turns(&t, bits).unwrap();
        let sum = &s.powi(2) + &c.powi(2);
        prop_assert!(sum.contains(&Rational::one()));
        prop_assert!(s.width() <= rat(1, 1i64 << 14));
    }

    #[test]
    fn sine_is_odd(x in rational(500, 61), bits in 16u32..120) {
        let p = trig_enclosure(TrigFn::Sin, &RationalInterval::point(x.clone()), bits).unwrap();
        let m = trig_enclosure(TrigFn::Sin, &RationalInterval::point(-x), bits).unwrap();
        prop_assert!((-&m).intersect(&p).is_some());
        prop_assert!(p.width().abs() <= rat(1, 1i64 << 14));
    }
}
