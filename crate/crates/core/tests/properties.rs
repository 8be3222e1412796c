use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use consfree::analysis::{check_b_safe, compute_b};
use consfree::engine::{normalize, EngineError, normalize_stepwise, normalize_traced, pick_redex, Status};
use consfree::harness::{gen_object_trs, gen_start_term, GenParams};
use consfree::syntax::{parse_term, parse_trs, print_term, print_trs, SourceFile};
use consfree::term::substitute;
use consfree::{alpha_eq, apply_subst, is_data_term, Name, SimpleType, Subst, Term, TermKind, Trs};

/// Cons-free, orthogonal and of order 2.
const HIGHER: &str = "
sort o;
cons a : o;
cons b : [o] => o;
fun ap : [o => o * o] => o;
fun twice : [o => o * o] => o;
fun f : [o] => o;
fun k : [o] => o => o;
rule ap(F, x) -> F(x);
rule twice(F, x) -> F(F(x));
rule f(a) -> a;
rule f(b(x)) -> f(x);
rule k(x) -> \\y:o. x;
";

fn higher() -> Trs {
    parse_trs(&SourceFile::new("higher.trs", HIGHER)).unwrap()
}

/// Builds new data, so B-safety can fail.
const BUILDING: &str = "
sort o;
cons a : o;
cons b : [o] => o;
fun ap : [o => o * o] => o;
fun grow : [o] => o;
rule ap(F, x) -> F(x);
rule grow(x) -> b(b(x));
";

/// A random closed term of type `ty` over `trs`.
fn gen_term(rng: &mut ChaCha8Rng, trs: &Trs, ty: &SimpleType, depth: usize, scope: &mut Vec<(Name, SimpleType)>) -> Term {
    let vars: Vec<(Name, SimpleType)> = scope.iter().filter(|(_, t)| t == ty).cloned().collect();
    if !vars.is_empty() && (depth == 0 || rng.gen_bool(0.3)) {
        let (n, t) = vars.choose(rng).unwrap().clone();
        return Term::var_named(n, t);
    }
    if let Some((dom, cod)) = ty.as_arrow() {
        let producers: Vec<_> = trs.symbols().iter().filter(|s| &s.decl().result_type == ty).collect();
        if depth > 0 && !producers.is_empty() && rng.gen_bool(0.3) {
            let s = producers.choose(rng).unwrap();
            let args = s.decl().arg_types.iter().map(|t| gen_term(rng, trs, t, depth - 1, scope)).collect();
            return Term::fun((*s).clone(), args);
        }
        let binder: Name = Name::from(format!("v{}", scope.len()).as_str());
        scope.push((binder.clone(), dom.clone()));
        let body = gen_term(rng, trs, cod, depth.saturating_sub(1), scope);
        scope.pop();
        return Term::abs_named(binder, dom.clone(), body);
    }
    let syms: Vec<_> = trs
        .symbols()
        .iter()
        .filter(|s| &s.decl().result_type == ty && (depth > 0 || s.arity() == 0))
        .collect();
    if depth > 0 && rng.gen_bool(0.2) {
        let arrow = SimpleType::arrow(ty.clone(), ty.clone());
        let fun = gen_term(rng, trs, &arrow, depth - 1, scope);
        let arg = gen_term(rng, trs, ty, depth - 1, scope);
        return Term::app(fun, arg);
    }
    let s = syms.choose(rng).unwrap();
    let args = s.decl().arg_types.iter().map(|t| gen_term(rng, trs, t, depth - 1, scope)).collect();
    Term::fun((*s).clone(), args)
}

fn higher_term(seed: u64) -> (Trs, Term) {
    let trs = higher();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = gen_term(&mut rng, &trs, &SimpleType::base("o"), 4, &mut Vec::new());
    (trs, t)
}

fn first_order(seed: u64) -> (Trs, Term) {
    let p = GenParams { seed, ..GenParams::default() };
    let trs = gen_object_trs(&p);
    let start = gen_start_term(&trs, &p);
    (trs, start)
}

/// Renames every binder, which must give an α-equal term.
fn rename_binders(t: &Term, suffix: &str) -> Term {
    match t.kind() {
        TermKind::Var { .. } => t.clone(),
        TermKind::App(s, u) => Term::app(rename_binders(s, suffix), rename_binders(u, suffix)),
        TermKind::Fun(f, args) => Term::fun(f.clone(), args.iter().map(|a| rename_binders(a, suffix)).collect()),
        TermKind::Abs { binder, ty, body } => {
            let fresh: Name = Name::from(format!("{binder}{suffix}").as_str());
            let body = substitute(body, &Subst::singleton(binder.clone(), Term::var_named(fresh.clone(), ty.clone())));
            Term::abs_named(fresh, ty.clone(), rename_binders(&body, suffix))
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn alpha_eq_is_an_equivalence(seed in any::<u64>()) {
        let (_, t) = higher_term(seed);
        let r = rename_binders(&t, "q");
        prop_assert!(alpha_eq(&t, &t));
        prop_assert!(alpha_eq(&t, &r));
        prop_assert!(alpha_eq(&r, &t));
        let r2 = rename_binders(&r, "w");
        prop_assert!(alpha_eq(&t, &r2));
    }

    #[test]
    fn identity_substitution(seed in any::<u64>()) {
        let (trs, t) = higher_term(seed);
        let o = SimpleType::base("o");
        let x = Term::var("x", o.clone());
        // Put a free x under the binders, then substitute it by itself.
        let open = Term::fun(trs.symbol("ap").unwrap().clone(), vec![Term::abs("z", o.clone(), x.clone()), t]);
        let id = Subst::singleton(Name::from("x"), x);
        prop_assert!(alpha_eq(&apply_subst(&open, &id).unwrap(), &open));
    }

    #[test]
    fn substitution_preserves_types(seed in any::<u64>()) {
        let (trs, t) = higher_term(seed);
        let o = SimpleType::base("o");
        let open = Term::fun(trs.symbol("f").unwrap().clone(), vec![Term::var("x", o.clone())]);
        let out = apply_subst(&open, &Subst::singleton(Name::from("x"), t)).unwrap();
        prop_assert_eq!(out.type_of().unwrap(), o);
        prop_assert!(out.is_closed());
    }

    #[test]
    fn print_parse_round_trip(seed in any::<u64>()) {
        let (trs, t) = higher_term(seed);
        let back = parse_term(&print_term(&t), &trs).unwrap();
        prop_assert!(alpha_eq(&t, &back), "{} vs {}", t, back);
    }

    #[test]
    fn generated_systems_round_trip(seed in any::<u64>()) {
        let (trs, start) = first_order(seed);
        let text = print_trs(&trs);
        let back = parse_trs(&SourceFile::new("g.trs", text.as_str())).unwrap();
        prop_assert_eq!(print_trs(&back), text);
        let s = parse_term(&print_term(&start), &back).unwrap();
        prop_assert_eq!(print_term(&s), print_term(&start));
    }

    #[test]
    fn b_sets_are_subterm_closed(seed in any::<u64>()) {
        let (trs, start) = first_order(seed);
        let b = compute_b(&start, &trs);
        prop_assert!(b.is_subterm_closed());
        prop_assert!(b.iter().all(is_data_term));
        prop_assert!(check_b_safe(&start, &b));
    }

    #[test]
    fn normalization_is_deterministic(seed in any::<u64>()) {
        let (trs, start) = first_order(seed);
        let a = normalize_traced(&trs, &start, 5_000, None);
        let b = normalize_traced(&trs, &start, 5_000, None);
        prop_assert_eq!(a.0, b.0);
        prop_assert_eq!(a.1, b.1);
    }

    #[test]
    fn fast_engine_matches_the_definition(seed in any::<u64>()) {
        for (trs, start) in [first_order(seed), higher_term(seed)] {
            let fast = normalize_traced(&trs, &start, 2_000, None);
            let slow = normalize_stepwise(&trs, &start, 2_000, None);
            prop_assert_eq!(fast.0.steps.len(), slow.0.steps.len());
            for (x, y) in fast.0.steps.iter().zip(&slow.0.steps) {
                prop_assert_eq!(&x.position, &y.position);
                prop_assert_eq!(x.rule, y.rule);
                prop_assert!(alpha_eq(&x.term, &y.term));
            }
            prop_assert_eq!(fast.0.status, slow.0.status);
            // Consecutive trace terms differ by the recorded step.
            let mut prev = start.clone();
            for s in &fast.0.steps {
                let (next, pos, rule) = consfree::engine::rewrite_step_at(&trs, &prev).unwrap();
                prop_assert_eq!(&pos, &s.position);
                prop_assert_eq!(rule, s.rule);
                prop_assert!(alpha_eq(&next, &s.term));
                prev = s.term.clone();
            }
        }
    }

    #[test]
    fn normal_forms_have_no_redex(seed in any::<u64>()) {
        for (trs, start) in [first_order(seed), higher_term(seed)] {
            if let Ok(n) = normalize(&trs, &start, 5_000, None) {
                prop_assert_eq!(pick_redex(&n.term, &trs), None);
            }
        }
    }

    #[test]
    fn more_fuel_gives_the_same_result(seed in any::<u64>()) {
        let (trs, start) = first_order(seed);
        if let Ok(a) = normalize(&trs, &start, 2_000, None) {
            let b = normalize(&trs, &start, 4_000, None).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn cons_free_reduction_stays_b_safe(seed in any::<u64>()) {
        for (trs, start) in [first_order(seed), higher_term(seed)] {
            let b = compute_b(&start, &trs);
            prop_assume!(check_b_safe(&start, &b));
            let fast = normalize_traced(&trs, &start, 2_000, Some(&b));
            prop_assert!(fast.0.status == Status::FuelExhausted || fast.1.is_ok(), "{:?}", fast.1);
            for s in &fast.0.steps {
                prop_assert!(check_b_safe(&s.term, &b));
            }
        }
    }

    #[test]
    fn incremental_b_check_matches_full_check(seed in any::<u64>()) {
        let trs = parse_trs(&SourceFile::new("building.trs", BUILDING)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let start = gen_term(&mut rng, &trs, &SimpleType::base("o"), 4, &mut Vec::new());
        let b = compute_b(&start, &trs);
        let fast = normalize(&trs, &start, 2_000, Some(&b));
        let slow = normalize_stepwise(&trs, &start, 2_000, Some(&b)).1;
        match (&fast, &slow) {
            (Err(EngineError::BSafetyViolation { step: x, .. }), Err(EngineError::BSafetyViolation { step: y, .. })) => {
                prop_assert_eq!(x, y)
            }
            _ => prop_assert_eq!(fast, slow),
        }
    }
}
