use proptest::prelude::*;

use ordlift::causal::{check_bounds, check_monotone_height, iota, CausalCoverInstance, CircleCover};
use ordlift::circle::sample::Sampler;
use ordlift::circle::{sigma, CircleElement, Kind, LiftedPoint};
use ordlift::num::{q, qi, Interval};
use ordlift::order::{growth_en, CircleOrder, IntegerOrder, OrderOracle, DEFAULT_POWER_CAP};
use ordlift::surface::sample::WordSampler;
use ordlift::surface::{example_hyperbolization, lift_evaluate, parse_rep, rep_to_text, SurfaceData, SurfaceRep};

fn kind() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::Pl), Just(Kind::Moebius)]
}

fn tol() -> ordlift::num::Q {
    q(1, 1000)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn euler_cocycle(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (a, b, c) = (s.rational_sl2(), s.rational_sl2(), s.rational_sl2());
        let v = [sigma(&a, &b), sigma(&a.mul(&b), &c), sigma(&b, &c), sigma(&a, &b.mul(&c))];
        prop_assert!(v.iter().all(|x| (0..=1).contains(x)), "{v:?}");
        prop_assert_eq!(v[0] + v[1], v[2] + v[3]);
        // the same value from composing lifts of the origin
        let o = LiftedPoint::origin();
        prop_assert_eq!(v[0], a.lift(&b.lift(&o)).turn - a.mul(&b).lift(&o).turn);
    }

    #[test]
    fn tau_homogeneous(seed in any::<u64>(), k in 1i64..4) {
        let mut s = Sampler::new(seed);
        let g = s.element(Kind::Moebius);
        let t = g.translation_number(&tol())?;
        let tk = g.power(k)?.translation_number(&tol())?;
        prop_assert!(tk.intersects(&t.scale(&qi(k))), "tau(g^{k}) = {tk}, tau(g) = {t}");
        let inv = g.inverse()?.translation_number(&tol())?;
        prop_assert!(inv.intersects(&t.scale(&qi(-1))));
    }

    #[test]
    fn tau_defect_at_most_one(seed in any::<u64>(), kind in kind()) {
        let mut s = Sampler::new(seed);
        let (g, h) = (s.element(kind), s.element(kind));
        let d = g.compose(&h)?.translation_number(&tol())? - g.translation_number(&tol())? - h.translation_number(&tol())?;
        prop_assert!(d.intersects(&Interval::new(qi(-1), qi(1))), "defect enclosure {d}");
    }

    #[test]
    fn integer_growth_subadditive(g in 1i64..20, h in -40i64..40, m in 1i64..8, n in 1i64..8) {
        let e = |k| growth_en(&IntegerOrder, &g, &h, k, DEFAULT_POWER_CAP).unwrap().e_n;
        prop_assert!(e(m + n) <= e(m) + e(n));
        // E_n is the ray above ceil(n h / g)
        prop_assert_eq!(e(n), (n * h).div_euclid(g) + i64::from((n * h).rem_euclid(g) != 0));
    }

    #[test]
    fn circle_growth_subadditive(seed in any::<u64>(), m in 1i64..4, n in 1i64..4) {
        let mut s = Sampler::new(seed);
        let g = s.above_by(Kind::Moebius, 0);
        let h = s.element(Kind::Moebius);
        let order = CircleOrder::pointwise(Kind::Moebius);
        let e = |k| growth_en(&order, &g, &h, k, DEFAULT_POWER_CAP).map(|r| r.e_n);
        prop_assert!(e(m + n)? <= e(m)? + e(n)?);
    }

    #[test]
    fn q_order_is_conjugation_invariant(seed in any::<u64>(), kind in kind(), q0 in 0i64..3) {
        let mut s = Sampler::new(seed);
        let order = CircleOrder::q_order(kind, q0);
        let (h, k) = (s.element(kind), s.element(kind));
        let p = s.above_by(kind, q0);
        prop_assert!(order.is_positive(&p)?);
        let g = h.compose(&p)?;
        prop_assert!(order.succeq(&g, &h)?);
        prop_assert!(order.succeq(&k.compose(&g)?, &k.compose(&h)?)?);
        prop_assert!(order.succeq(&g.compose(&k)?, &h.compose(&k)?)?);
    }

    #[test]
    fn large_tau_is_positive(seed in any::<u64>(), kind in kind(), q0 in 0i64..3) {
        let mut s = Sampler::new(seed);
        let g = CircleElement::translation(qi(q0 + 2), kind)?.compose(&s.element(kind))?;
        let t = g.translation_number(&tol())?;
        if t.lo() >= &qi(q0 + 1) {
            prop_assert!(CircleOrder::q_order(kind, q0).is_positive(&g)?, "{g} with tau {t}");
        }
        // positives of the strict order <=_q have tau >= q
        let p = s.above_by(kind, q0);
        prop_assert!(p.translation_number(&tol())?.hi() >= &qi(q0));
    }

    #[test]
    fn text_form_round_trips(seed in any::<u64>(), kind in kind()) {
        let g = Sampler::new(seed).element(kind);
        let back: CircleElement = g.to_string().parse()?;
        prop_assert_eq!(back, g);
    }

    #[test]
    fn windings_do_not_change_commutator_lifts(seed in any::<u64>(), wa in -3i64..4, wb in -3i64..4) {
        let rep = SurfaceRep::modular_torus();
        let moved = rep.with_windings(&[wa, wb])?;
        for w in WordSampler::new(seed, 2).commutator_words(4, 12)? {
            prop_assert_eq!(lift_evaluate(&rep, &w)?, lift_evaluate(&moved, &w)?);
        }
    }

    #[test]
    fn rep_text_round_trips(seed in any::<u64>(), genus in 0u32..3, boundary in 1u32..3) {
        prop_assume!(2 * genus + boundary >= 3);
        let rep = example_hyperbolization(&SurfaceData::new(genus, boundary)?)?;
        let words = WordSampler::new(seed, rep.surface.rank()).commutator_words(3, 10)?;
        let (back, back_words) = parse_rep(&rep_to_text(&rep, &words))?;
        prop_assert_eq!(back.matrices(), rep.matrices());
        prop_assert_eq!(back.reference, rep.reference);
        prop_assert_eq!(back_words, words);
    }

    #[test]
    fn causal_bounds_hold(seed in any::<u64>(), kind in kind(), k in -5i64..6) {
        let mut s = Sampler::new(seed);
        let cover = CircleCover::new(kind);
        let sample = [(s.element(kind), s.element(kind), cover.sample_point(&mut s), cover.sample_point(&mut s), k)];
        let r = check_bounds(&cover, &sample)?;
        prop_assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn iota_is_the_ceiling(seed in any::<u64>(), kind in kind()) {
        let mut s = Sampler::new(seed);
        let cover = CircleCover::new(kind);
        let (x, y) = (cover.sample_point(&mut s), cover.sample_point(&mut s));
        prop_assert_eq!(iota(&cover, &x, &y)?, cover.iota_closed_form(&x, &y)?);
        // deck equivariance in both arguments
        prop_assert_eq!(iota(&cover, &cover.deck(&x, 2)?, &y)?, iota(&cover, &x, &y)? + 2);
        prop_assert_eq!(iota(&cover, &x, &cover.deck(&y, 1)?)?, iota(&cover, &x, &y)? - 1);
    }

    #[test]
    fn height_is_monotone(seed in any::<u64>(), kind in kind()) {
        let mut s = Sampler::new(seed);
        let cover = CircleCover::new(kind);
        let pairs: Vec<_> = (0..8).map(|_| (cover.sample_point(&mut s), cover.sample_point(&mut s))).collect();
        let (comparable, bad) = check_monotone_height(&cover, &pairs)?;
        prop_assert!(comparable >= 8);
        prop_assert!(bad.is_empty(), "{bad:?}");
    }
}

#[cfg(feature = "lagrangian")]
mod lagrangian {
    use super::*;
    use ordlift::causal::lagrangian::LagrangianCover;
    use ordlift::causal::Causal;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    proptest! {
        #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

        #[test]
        fn leq_is_a_partial_order(seed in any::<u64>(), n in 1usize..4) {
            let cover = LagrangianCover::new(n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (x, y, z) = (cover.sample_point(&mut rng), cover.sample_point(&mut rng), cover.sample_point(&mut rng));
            prop_assert_eq!(cover.leq(&x, &x)?, Causal::Leq);
            prop_assert_eq!(cover.leq(&x, &cover.deck(&x, 1)?)?, Causal::Leq);
            if cover.leq(&x, &y)? == Causal::Leq && cover.leq(&y, &x)? == Causal::Leq {
                let (hx, hy) = (cover.height(&x)?, cover.height(&y)?);
                prop_assert!((hx.approx() - hy.approx()).abs() < 1e-6, "{x} and {y}");
            }
            if cover.leq(&x, &y)? == Causal::Leq && cover.leq(&y, &z)? == Causal::Leq {
                prop_assert_ne!(cover.leq(&x, &z)?, Causal::NotLeq);
            }
        }

        #[test]
        fn deck_translates_height(seed in any::<u64>(), n in 1usize..4, k in -3i64..4) {
            let cover = LagrangianCover::new(n)?;
            let x = cover.sample_point(&mut ChaCha8Rng::seed_from_u64(seed));
            let shifted = cover.height(&cover.deck(&x, k)?)?.approx();
            prop_assert!((shifted - cover.height(&x)?.approx() - k as f64).abs() < 1e-9);
        }
    }
}
