use std::sync::Arc;

use proptest::prelude::*;
use tiltver::g1t::G1T;
use tiltver::simples::{DecompTable, SimpleChars};
use tiltver::{AlcoveContext, CharRing, Character, Expansion, RootDatum, Weight};

const TYPES: [&str; 4] = ["A2", "B2", "C2", "G2"];

fn datum(t: &str) -> Arc<RootDatum> {
    RootDatum::from_label(t).unwrap()
}

fn g1t(t: &str, p: i64) -> G1T {
    let d = datum(t);
    let ctx = AlcoveContext::new(d.clone(), p, 1).unwrap();
    let s = SimpleChars::new(ctx.clone(), Arc::new(CharRing::new(d)), DecompTable::builtin(&ctx));
    G1T::new(Arc::new(s)).unwrap()
}

fn small_prime() -> impl Strategy<Value = i64> {
    prop::sample::select(vec![2i64, 3, 5])
}

fn rank2_type() -> impl Strategy<Value = &'static str> {
    prop::sample::select(TYPES.to_vec())
}

fn dominant(max: i64) -> impl Strategy<Value = Weight> {
    (0..=max, 0..=max).prop_map(|(a, b)| Weight::new(&[a, b]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weyl_basis_round_trip(t in rank2_type(), l in dominant(5)) {
        let ring = CharRing::new(datum(t));
        let chi = ring.weyl_character(&l);
        prop_assert_eq!(ring.expand_weyl_basis(&chi).unwrap(), Expansion::from([(l.clone(), 1)]));
        prop_assert_eq!(chi.dimension() as i128, ring.datum().weyl_dimension(&l));
        prop_assert!(chi.is_invariant());
    }

    #[test]
    fn orbit_basis_round_trip(t in rank2_type(), a in dominant(4), b in dominant(4)) {
        let ring = CharRing::new(datum(t));
        let c = ring.weyl_character(&a).plus(&ring.weyl_character(&b).scaled(-3));
        prop_assert_eq!(ring.from_orbit_expansion(&c.expand_orbit_basis().unwrap()).unwrap(), c);
    }

    #[test]
    fn products_commute_and_divide(t in rank2_type(), a in dominant(3), b in dominant(3)) {
        let ring = CharRing::new(datum(t));
        let (x, y) = (ring.weyl_character(&a), ring.weyl_character(&b));
        let xy = x.multiply(&y).unwrap();
        prop_assert_eq!(&xy, &y.multiply(&x).unwrap());
        prop_assert_eq!(xy.dimension(), x.dimension() * y.dimension());
        prop_assert_eq!(xy.exact_divide(&y).unwrap(), x.clone());
        prop_assert_eq!(ring.from_weyl_expansion(&ring.weyl_times(&a, &y)), xy);
    }

    #[test]
    fn dual_is_an_involution(t in rank2_type(), a in dominant(4)) {
        let ring = CharRing::new(datum(t));
        let c = ring.weyl_character(&a).translate(&Weight::new(&[1, -2]));
        prop_assert_eq!(c.dual_involution().dual_involution(), c);
    }

    #[test]
    fn canonical_text_round_trip(t in rank2_type(), a in dominant(4), k in -5i64..5) {
        let d = datum(t);
        let ring = CharRing::new(d.clone());
        let c = ring.weyl_character(&a).scaled(k).plus(&Character::monomial(&d, Weight::new(&[-1, 3]), 2));
        prop_assert_eq!(Character::from_canonical_text(&d, &c.to_canonical_text()).unwrap(), c);
    }

    #[test]
    fn p_adic_split_recombines(w in (-40i64..40, -40i64..40), p in small_prime()) {
        let w = Weight::new(&[w.0, w.1]);
        let (w0, w1) = w.p_adic_split(p);
        prop_assert!(w0.is_restricted(p));
        prop_assert_eq!(w0 + w1.scale(p), w);
    }

    #[test]
    fn linkage_implies_dominance(t in rank2_type(), p in small_prime(), l in dominant(12)) {
        let ctx = AlcoveContext::new(datum(t), p, 1).unwrap();
        for m in ctx.strong_linkage_down(&l) {
            prop_assert!(ctx.datum.le(&m, &l));
            prop_assert!(ctx.is_linked_below(&m, &l));
        }
    }

    #[test]
    fn simples_are_bounded_by_weyl(t in rank2_type(), p in small_prime(), l in dominant(6)) {
        let g = g1t(t, p);
        let ring = g.ring().clone();
        let s = g.simples().simple_char(&l).unwrap();
        prop_assert!(s.is_invariant() && s.is_nonnegative());
        prop_assert_eq!(s.coeff(&l), 1);
        prop_assert!(s.dimension() as i128 <= ring.datum().weyl_dimension(&l));
        prop_assert!(ring.weyl_character(&l).minus(&s).is_nonnegative());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn baby_verma_dimension(t in rank2_type(), p in small_prime(), mu in (-9i64..9, -9i64..9)) {
        let g = g1t(t, p);
        let n = g.datum().positive_roots().len() as u32;
        prop_assert_eq!(g.baby_verma(&Weight::new(&[mu.0, mu.1])).dimension(), p.pow(n));
    }

    #[test]
    fn baby_verma_recomposes(t in prop::sample::select(vec!["A2", "B2"]), p in small_prime(), mu in (-6i64..6, -6i64..6)) {
        let g = g1t(t, p);
        let z = g.baby_verma(&Weight::new(&[mu.0, mu.1]));
        let mut back = Character::zero(g.datum());
        for ((l0, l1), k) in g.decompose_g1t(&z).unwrap() {
            back.add_scaled(&g.g1t_simple_char(&l0, &l1).unwrap(), k);
        }
        prop_assert_eq!(back, z);
    }

    #[test]
    fn qhat_is_steinberg_divisible(t in rank2_type(), p in prop::sample::select(vec![2i64, 3]), l in (0i64..3, 0i64..3)) {
        let g = g1t(t, p);
        let l = Weight::new(&[l.0 % p, l.1 % p]);
        let q = g.qhat_char(&l).unwrap();
        prop_assert!(q.is_invariant() && q.is_nonnegative());
        prop_assert!(q.exact_divide(&g.steinberg()).is_ok());
        let index = g.ctx().shifted_linkage_index(&l);
        for (m, c) in g.a_coefficients(&l).unwrap() {
            prop_assert!(c > 0 && index.contains(&m));
        }
    }
}
