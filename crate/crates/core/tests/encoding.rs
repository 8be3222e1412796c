use std::collections::HashSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use consfree::encoding::{bit_decode, bit_encode, decode_term, encode_term, encode_trs, Decoded, InterpreterSignature, SymbolTable};
use consfree::harness::{gen_object_trs, GenParams};
use consfree::syntax::{parse_trs, print_term, SourceFile};
use consfree::{SimpleType, Term, Trs};

/// A ground first-order term over all symbols of `trs`.
fn ground_term(rng: &mut ChaCha8Rng, trs: &Trs, ty: &SimpleType, depth: usize) -> Term {
    let syms: Vec<_> = trs
        .symbols()
        .iter()
        .filter(|s| &s.decl().result_type == ty && (depth > 0 || s.arity() == 0))
        .collect();
    let s = match syms.choose(rng) {
        Some(s) => *s,
        None => trs
            .constructors()
            .find(|c| &c.decl().result_type == ty && c.arity() == 0)
            .expect("nullary constructor"),
    };
    let args = s
        .decl()
        .arg_types
        .iter()
        .map(|t| ground_term(rng, trs, t, depth.saturating_sub(1)))
        .collect();
    Term::fun(s.clone(), args)
}

proptest! {
    #[test]
    fn bits_round_trip(i in 1u64..) {
        let t = bit_encode(i).unwrap();
        prop_assert_eq!(bit_decode(&t).unwrap(), i);
        let sig = InterpreterSignature::get();
        prop_assert_eq!(t.head_symbol(), Some(&sig.one));
        prop_assert!(t.is_data());
    }

    #[test]
    fn terms_round_trip(seed in any::<u64>()) {
        let trs = gen_object_trs(&GenParams { seed, ..GenParams::default() });
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = SymbolTable::new(&trs);
        let sort = SimpleType::Base(trs.sorts().choose(&mut rng).unwrap().clone());
        let depth = rng.gen_range(0..5);
        let t = ground_term(&mut rng, &trs, &sort, depth);
        let enc = encode_term(&t, &table).unwrap();
        prop_assert_eq!(decode_term(&enc, &table).unwrap(), Decoded::Term(t.clone()));
        prop_assert_eq!(enc.is_data(), true);
    }

    #[test]
    fn rule_lists_encode(seed in any::<u64>()) {
        let trs = gen_object_trs(&GenParams { seed, ..GenParams::default() });
        let enc = encode_trs(&trs).unwrap();
        let sig = InterpreterSignature::get();
        let mut n = 0;
        let mut cur = enc;
        while cur.head_symbol() == Some(&sig.rule) {
            n += 1;
            let l = &cur.args()[0];
            prop_assert_eq!(l.head_symbol(), Some(&sig.fun));
            cur = cur.args()[2].clone();
        }
        prop_assert_eq!(cur.head_symbol(), Some(&sig.empty));
        prop_assert_eq!(n, trs.rules().len());
    }
}

#[test]
fn distinct_terms_have_distinct_encodings() {
    let trs = gen_object_trs(&GenParams { seed: 11, ..GenParams::default() });
    let table = SymbolTable::new(&trs);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut terms = HashSet::new();
    let mut encodings = HashSet::new();
    for _ in 0..2_000 {
        let sort = SimpleType::Base(trs.sorts().choose(&mut rng).unwrap().clone());
        let t = ground_term(&mut rng, &trs, &sort, 4);
        let e = encode_term(&t, &table).unwrap();
        // Ground encodings are closed, so α-equality is syntactic equality.
        if terms.insert(t) {
            assert!(encodings.insert(e));
        }
    }
    assert!(terms.len() > 100);
}

#[test]
fn variables_are_numbered_by_first_occurrence() {
    let src = "sort o; cons c : [o * o] => o; fun f : [o * o] => o; rule f(y, c(x, z)) -> c(x, z);";
    let trs = parse_trs(&SourceFile::new("v.trs", src)).unwrap();
    let enc = print_term(&encode_trs(&trs).unwrap());
    // y = 1, x = 2, z = 3.
    assert!(enc.contains("Var(1(eps)) :: Fun(1(eps), Var(1(0(eps))) :: Var(1(1(eps))) :: [])"), "{enc}");
}

#[test]
fn higher_order_rules_are_rejected() {
    let src = "sort o; cons a : o; fun k : [o] => o => o; rule k(x) -> \\y:o. x;";
    let trs = parse_trs(&SourceFile::new("h.trs", src)).unwrap();
    assert!(encode_trs(&trs).is_err());
}
