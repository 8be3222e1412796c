//! Checks the interpreter program's helper functions against meta-level
//! computations on the object system, at every point where they fire during
//! real interpreted runs.

use std::cell::RefCell;
use std::collections::HashMap;

use consfree::encoding::{bit_decode, bit_encode, decode_term, Decoded, InterpreterSignature, SymbolTable};
use consfree::engine::{normalize, Normalizer, StepRule};
use consfree::harness::{bottom_corpus, golden_corpus, random_cases, DiffCase, GenParams};
use consfree::interpreter::{build_q, simulate_term};
use consfree::syntax::{parse_trs, print_term, print_trs, SourceFile};
use consfree::{alpha_eq, Term, TermKind};

const FUEL: u64 = 10_000_000;

fn rule_index(name: &str, first_arg_head: &str) -> usize {
    let q = build_q();
    q.trs()
        .rules()
        .iter()
        .find(|r| {
            r.head().name() == name
                && r.lhs().args()[0].head_symbol().map(|s| s.name()) == Some(first_arg_head)
        })
        .unwrap_or_else(|| panic!("no {name} rule on {first_arg_head}"))
        .index()
}

fn sole_rule_index(name: &str) -> usize {
    let q = build_q();
    let mut it = q.trs().rules().iter().filter(|r| r.head().name() == name);
    let r = it.next().unwrap();
    assert!(it.next().is_none());
    r.index()
}

/// Object-level value of an encoded term under a variable assignment.
#[derive(Debug, Clone, PartialEq)]
enum MetaVal {
    /// Encoded data normal form.
    Data(Term),
    NonData,
    /// Non-data only because of a defined symbol without rules, which the
    /// encoding cannot tell from a constructor. Holds the encoding.
    RulelessData(Term),
    /// Depends on a non-data value we cannot rebuild.
    Unknown,
}

struct Meta<'a> {
    case: &'a DiffCase,
    cache: HashMap<(Term, u64), Option<Term>>,
}

impl<'a> Meta<'a> {
    /// `γ ⟨i⟩`: encoded data, or `None` for bot.
    fn lookup(&mut self, gamma: &Term, code: u64) -> Option<Term> {
        let key = (gamma.clone(), code);
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let q = build_q();
        let app = Term::app(gamma.clone(), bit_encode(code).unwrap());
        let v = normalize(q.trs(), &app, FUEL, None).unwrap().term;
        let sig = InterpreterSignature::get();
        let out = if v.head_symbol() == Some(&sig.bot) { None } else { Some(v) };
        self.cache.insert(key, out.clone());
        out
    }

    fn codes(w: &Term, out: &mut Vec<u64>) {
        let sig = InterpreterSignature::get();
        if w.head_symbol() == Some(&sig.var) {
            out.push(bit_decode(&w.args()[0]).unwrap());
        }
        for c in w.children() {
            Self::codes(c, out);
        }
    }

    fn plug(w: &Term, values: &HashMap<u64, Term>) -> Term {
        let sig = InterpreterSignature::get();
        if w.head_symbol() == Some(&sig.var) {
            return values[&bit_decode(&w.args()[0]).unwrap()].clone();
        }
        match w.kind() {
            TermKind::Fun(f, args) => Term::fun(f.clone(), args.iter().map(|a| Self::plug(a, values)).collect()),
            _ => w.clone(),
        }
    }

    /// `nf(w γ)` computed by the oracle on the object system.
    fn value(&mut self, w: &Term, gamma: &Term) -> MetaVal {
        let sig = InterpreterSignature::get();
        let mut codes = Vec::new();
        Self::codes(w, &mut codes);
        let mut values = HashMap::new();
        for c in codes {
            match self.lookup(gamma, c) {
                Some(v) => {
                    values.insert(c, v);
                }
                None if w.head_symbol() == Some(&sig.var) => return MetaVal::NonData,
                None => return MetaVal::Unknown,
            }
        }
        let ground = Self::plug(w, &values);
        let table = SymbolTable::new(&self.case.trs);
        let Decoded::Term(obj) = decode_term(&ground, &table).unwrap() else {
            panic!("plugged term decodes to bot")
        };
        let nf = normalize(&self.case.trs, &obj, FUEL, None).unwrap().term;
        let ruleless = |t: &Term| {
            let mut only = true;
            t.for_each_subterm(&mut |s| {
                if let Some(f) = s.head_symbol() {
                    only &= f.is_constructor() || self.case.trs.rules_for(f).next().is_none();
                }
            });
            only
        };
        if nf.is_data() {
            MetaVal::Data(consfree::encoding::encode_term(&nf, &table).unwrap())
        } else if ruleless(&nf) {
            MetaVal::RulelessData(consfree::encoding::encode_term(&nf, &table).unwrap())
        } else {
            MetaVal::NonData
        }
    }
}

/// Does encoded data `v` match the encoded linear pattern `p`?
fn matches_encoded(p: &Term, v: &Term) -> bool {
    let sig = InterpreterSignature::get();
    if p.head_symbol() == Some(&sig.var) {
        return true;
    }
    match (p.kind(), v.kind()) {
        (TermKind::Fun(f, ps), TermKind::Fun(g, vs)) => {
            f == g && ps.len() == vs.len() && ps.iter().zip(vs).all(|(a, b)| matches_encoded(a, b))
        }
        _ => false,
    }
}

fn list_items(t: &Term) -> Vec<Term> {
    let sig = InterpreterSignature::get();
    let mut out = Vec::new();
    let mut cur = t.clone();
    while cur.head_symbol() == Some(&sig.cons) {
        out.push(cur.args()[0].clone());
        cur = cur.args()[1].clone();
    }
    out
}

#[derive(Default, Debug)]
struct Tally {
    match_checked: usize,
    match_skipped: usize,
    subst_checked: usize,
    subst_skipped: usize,
}

fn validate(case: &DiffCase, tally: &mut Tally) {
    let q = build_q();
    let test2_hit = rule_index("test2", "bot");
    let test2_miss = rule_index("test2", "Var");
    let substitute = sole_rule_index("substitute");
    let input = simulate_term(&case.trs, &case.start).unwrap();
    let redexes = RefCell::new(Vec::new());
    Normalizer::new(q.trs())
        .fuel(FUEL)
        .observe(|e| {
            if let StepRule::Rule(i) = e.rule {
                if i == test2_hit || i == test2_miss || i == substitute {
                    redexes.borrow_mut().push((i, e.redex.clone()));
                }
            }
        })
        .run(&input)
        .unwrap();
    let mut meta = Meta {
        case,
        cache: HashMap::new(),
    };
    let sig = InterpreterSignature::get();
    let context = || format!("{}\nstart {}", print_trs(&case.trs), print_term(&case.start));
    for (rule, redex) in redexes.into_inner() {
        let args = redex.args();
        if rule == substitute {
            // substitute(w, γ, bs, R) must yield ⟨nf(wγ)⟩ or bot.
            let expected = meta.value(&args[0], &args[1]);
            if expected == MetaVal::Unknown {
                tally.subst_skipped += 1;
                continue;
            }
            let got = normalize(q.trs(), &redex, FUEL, None).unwrap().term;
            match expected {
                MetaVal::Data(d) => assert!(alpha_eq(&got, &d), "substitute gave {got}, expected {d}\n{}", context()),
                MetaVal::NonData => assert_eq!(got.head_symbol(), Some(&sig.bot), "{}", context()),
                MetaVal::RulelessData(d) => assert!(
                    alpha_eq(&got, &d) || got.head_symbol() == Some(&sig.bot),
                    "{}",
                    context()
                ),
                MetaVal::Unknown => unreachable!(),
            }
            tally.subst_checked += 1;
            continue;
        }
        // test2(δ ▷, δ, w, γ, ℓ, r, tl, R, bs)
        let (w, gamma, l) = (&args[2], &args[3], &args[4]);
        let same_head = w.args()[0] == l.args()[0];
        let mut expected = Some(same_head);
        if same_head {
            for (wi, li) in list_items(&w.args()[1]).iter().zip(list_items(&l.args()[1])) {
                let ok = match meta.value(wi, gamma) {
                    MetaVal::Data(d) => Some(matches_encoded(&li, &d)),
                    MetaVal::NonData => Some(li.head_symbol() == Some(&sig.var)),
                    MetaVal::RulelessData(d) => Some(matches_encoded(&li, &d)),
                    MetaVal::Unknown if li.head_symbol() == Some(&sig.var) => Some(true),
                    MetaVal::Unknown => None,
                };
                match ok {
                    Some(true) => {}
                    Some(false) => {
                        expected = Some(false);
                        break;
                    }
                    None => expected = None,
                }
            }
        }
        match expected {
            Some(m) => {
                assert_eq!(rule == test2_hit, m, "match of {} against {}\n{}", w, l, context());
                tally.match_checked += 1;
            }
            None => tally.match_skipped += 1,
        }
    }
}

fn all_cases() -> Vec<DiffCase> {
    let mut cases = Vec::new();
    for entry in golden_corpus().into_iter().chain(bottom_corpus()) {
        cases.extend(entry.cases());
    }
    cases.extend(random_cases(&GenParams { seed: 3, ..GenParams::default() }, 40));
    cases
}

#[test]
fn match_and_substitute_agree_with_the_object_system() {
    let mut tally = Tally::default();
    for case in all_cases() {
        validate(&case, &mut tally);
    }
    println!("{tally:?}");
    assert!(tally.match_checked > 200, "{tally:?}");
    assert!(tally.subst_checked > 20, "{tally:?}");
}

#[test]
fn eqbits_on_short_bitstrings() {
    let q = build_q();
    let sig = InterpreterSignature::get();
    let strings = |len: usize| -> Vec<(String, Term)> {
        (0..1u32 << len)
            .map(|bits| {
                let mut s = String::new();
                let mut t = Term::constant(sig.eps.clone());
                for k in 0..len {
                    let one = bits >> k & 1 == 1;
                    s.insert(0, if one { '1' } else { '0' });
                    t = Term::fun(if one { sig.one.clone() } else { sig.zero.clone() }, vec![t]);
                }
                (s, t)
            })
            .collect()
    };
    let all: Vec<_> = (0..=3).flat_map(strings).collect();
    let yes = q.symbol("true");
    for (a, ta) in &all {
        for (b, tb) in &all {
            let r = normalize(q.trs(), &q.eqbits(ta.clone(), tb.clone()), 100, None).unwrap();
            assert_eq!(r.term.head_symbol() == Some(yes), a == b, "{a} vs {b}");
        }
    }
}

#[test]
fn exported_program_round_trips() {
    let q = build_q();
    let reparsed = parse_trs(&SourceFile::new("q.trs", q.source())).unwrap();
    assert_eq!(reparsed.rules().len(), q.trs().rules().len());
    for (a, b) in reparsed.rules().iter().zip(q.trs().rules()) {
        assert!(alpha_eq(a.lhs(), b.lhs()) && alpha_eq(a.rhs(), b.rhs()));
    }
    let printed = parse_trs(&SourceFile::new("q.trs", print_trs(q.trs()))).unwrap();
    for (a, b) in printed.rules().iter().zip(q.trs().rules()) {
        assert!(alpha_eq(a.lhs(), b.lhs()) && alpha_eq(a.rhs(), b.rhs()));
    }
}

#[test]
fn match_binds_functional_variables() {
    // test2(bot, δ, …) with δ an abstraction is matched by binding δ whole.
    let q = build_q();
    let rule = q.trs().rules().iter().find(|r| r.head().name() == "test2").unwrap();
    let sig = InterpreterSignature::get();
    let bits = consfree::SimpleType::base("bitstring");
    let delta = Term::abs("z", bits, sig.bottom());
    let mut args: Vec<Term> = rule.lhs().args().to_vec();
    args[1] = delta.clone();
    for a in args.iter_mut().skip(2) {
        *a = match a.type_of().unwrap().to_string().as_str() {
            "term" => sig.bottom(),
            "rules" => Term::constant(sig.empty.clone()),
            "termlist" => Term::constant(sig.nil.clone()),
            _ => delta.clone(),
        };
    }
    let subject = Term::fun(rule.head().clone(), args);
    let m = consfree::engine::match_pattern(rule.lhs(), &subject).into_option().unwrap();
    assert!(alpha_eq(m.get("delta").unwrap(), &delta));
}
