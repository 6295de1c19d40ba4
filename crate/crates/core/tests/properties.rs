use proptest::prelude::*;

use skew_closed::bridge::{self, i2nf, nf2i};
use skew_closed::coherence::{decide_eq, Verdict};
use skew_closed::focused::{check_foc, emb_i, emb_nd_i, focus, hered};
use skew_closed::gen::{Gen, StoupReq};
use skew_closed::model::{self, ModelSpec};
use skew_closed::nat_ded::check_nd;
use skew_closed::normal_nd::{check_nf, emb_nf, nbe};
use skew_closed::parse_sequent;
use skew_closed::seq_calc::{self, check_seq};
use skew_closed::syntax::print_sequent;

const ATOMS: [&str; 3] = ["X", "Y", "Z"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sequent_print_parse(seed in any::<u64>()) {
        let mut g = Gen::new(seed, &ATOMS);
        let s = g.sequent(StoupReq::Any, 0, 4, 3);
        prop_assert_eq!(parse_sequent(&print_sequent(&s)).unwrap(), s);
    }

    #[test]
    fn focus_is_idempotent(seed in any::<u64>()) {
        let mut g = Gen::new(seed, &ATOMS);
        let s = g.inhabited_sequent(StoupReq::Any, 0, 3, 3);
        let f = g.seq(&s);
        check_seq(&f, &s).unwrap();
        let n = focus(&f, &s);
        check_foc(&n, &s).unwrap();
        prop_assert_eq!(focus(&emb_i(&n), &s), n);
    }

    #[test]
    fn focused_derivations_are_fixed(seed in any::<u64>()) {
        let mut g = Gen::new(seed, &ATOMS);
        let s = g.inhabited_sequent(StoupReq::Any, 0, 3, 3);
        let d = g.foc(&s);
        prop_assert_eq!(&focus(&emb_i(&d), &s), &d);
        prop_assert_eq!(&hered(&emb_nd_i(&d, &s), &s), &d);
        let n = i2nf(&d);
        check_nf(&n, &s).unwrap();
        prop_assert_eq!(nbe(&emb_nf(&n, &s), &s), n);
    }

    #[test]
    fn normalizers_agree(seed in any::<u64>()) {
        let mut g = Gen::new(seed, &ATOMS);
        let s = g.inhabited_sequent(StoupReq::Any, 0, 3, 3);
        let d = g.nd(&s, 12);
        check_nd(&d, &s).unwrap();
        prop_assert_eq!(nf2i(&nbe(&d, &s)), hered(&d, &s));
    }

    #[test]
    fn sound_then_cmplt_preserves_normal_form(seed in any::<u64>()) {
        let mut g = Gen::new(seed, &ATOMS);
        let s = g.inhabited_sequent(StoupReq::Any, 0, 3, 2);
        let f = g.seq(&s);
        let d = bridge::sound(&f, &s);
        let (back, t) = bridge::cmplt(&d, &s.context).unwrap();
        prop_assert_eq!(&t, &s);
        prop_assert_eq!(focus(&back, &s), focus(&f, &s));
    }

    #[test]
    fn pass_act_round_trip(seed in any::<u64>()) {
        let mut g = Gen::new(seed, &ATOMS);
        let s = g.inhabited_sequent(StoupReq::Full, 0, 3, 2);
        let f = g.seq(&s);
        prop_assert_eq!(seq_calc::act(&seq_calc::pass(f.clone())).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn equal_derivations_agree_in_models(seed in any::<u64>()) {
        let mut g = Gen::new(seed, &ATOMS);
        let s = g.inhabited_sequent(StoupReq::Any, 0, 0, 2);
        let a = g.cat(&s.stoup, &s.succedent, 3);
        let b = g.cat(&s.stoup, &s.succedent, 3);
        let spec = ModelSpec::plain(&[("X", 3), ("Y", 3), ("Z", 3)]).unwrap();
        let Ok(agree) = model::models_agree(&spec, &a, &b) else { return Ok(()) };
        if decide_eq(&a, &b).unwrap() == Verdict::Equal {
            prop_assert!(agree, "{} and {} are equal but differ in the model", a, b);
        }
    }
}
