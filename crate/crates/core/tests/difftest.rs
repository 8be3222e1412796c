use std::sync::Arc;

use consfree::harness::{
    bottom_corpus, difftest_with, golden_corpus, run_cases, DiffCase, DiffOptions, Execution, GenParams,
    InterpResult, OracleResult, Verdict,
};
use consfree::syntax::{parse_term, parse_trs, SourceFile};

fn seeds() -> impl Iterator<Item = u64> {
    [42, 7, 1234].into_iter()
}

#[test]
fn interpreter_steps_dominate_oracle_steps() {
    for seed in seeds() {
        let p = GenParams {
            seed,
            ..GenParams::default()
        };
        let r = difftest_with(&p, 60, &DiffOptions::default(), true, Execution::Parallel);
        assert_eq!(r.disagreements(), 0, "{}", r.to_text());
        for c in r.cases.iter().filter(|c| c.verdict == Verdict::Agree) {
            assert!(c.interp_steps >= c.oracle_steps, "{}: {} < {}", c.id, c.interp_steps, c.oracle_steps);
        }
    }
}

#[test]
fn golden_corpus_agrees_on_data() {
    let cases: Vec<DiffCase> = golden_corpus().iter().flat_map(|e| e.cases()).collect();
    assert!(cases.len() >= 20);
    let r = run_cases(&cases, &DiffOptions::default(), Execution::Sequential, Vec::new());
    for c in &r.cases {
        assert_eq!(c.verdict, Verdict::Agree, "{}", c.id);
        assert!(matches!(c.oracle, OracleResult::Data(_)), "{}", c.id);
    }
}

#[test]
fn bottom_corpus_agrees_on_bot() {
    let cases: Vec<DiffCase> = bottom_corpus().iter().flat_map(|e| e.cases()).collect();
    let r = run_cases(&cases, &DiffOptions::default(), Execution::Sequential, Vec::new());
    for c in &r.cases {
        assert_eq!(c.verdict, Verdict::Agree, "{}", c.id);
        assert!(matches!(c.oracle, OracleResult::NonData(_)), "{}", c.id);
        assert_eq!(c.interp, InterpResult::Bottom, "{}", c.id);
    }
}

#[test]
fn symbol_without_rules_gives_bot() {
    let src = "sort o; cons c : o; fun f : [o] => o; fun g : [o] => o; rule f(c) -> g(c);";
    let trs = Arc::new(parse_trs(&SourceFile::new("f.trs", src)).unwrap());
    let start = parse_term("f(c)", &trs).unwrap();
    let case = DiffCase {
        id: "ruleless".into(),
        trs,
        start,
    };
    let r = run_cases(&[case], &DiffOptions::default(), Execution::Sequential, Vec::new());
    let c = &r.cases[0];
    assert!(matches!(&c.oracle, OracleResult::NonData(t) if t.to_string() == "g(c)"), "{:?}", c.oracle);
    assert_eq!(c.interp, InterpResult::Bottom);
    assert_eq!(c.verdict, Verdict::Agree);
}

#[test]
fn low_fuel_is_inconclusive_not_disagree() {
    let p = GenParams {
        seed: 42,
        ..GenParams::default()
    };
    let opts = DiffOptions {
        fuel_oracle: 3,
        fuel_interp: 50,
        assert_b_safe: true,
    };
    let r = difftest_with(&p, 40, &opts, true, Execution::Parallel);
    assert_eq!(r.disagreements(), 0, "{}", r.to_text());
    assert!(r.inconclusive() > 0);
    assert!(r.to_text().contains("fuel-oracle=3 fuel-interp=50"));
}

#[test]
fn report_header_states_the_weakening() {
    let p = GenParams {
        seed: 1,
        ..GenParams::default()
    };
    let text = difftest_with(&p, 2, &DiffOptions::default(), false, Execution::Sequential).to_text();
    let header: Vec<&str> = text.lines().take_while(|l| l.starts_with("# ")).collect();
    assert_eq!(header.len(), 4, "{text}");
    assert!(header[3].contains("only normal forms are compared"));
    assert!(text.lines().last().unwrap().starts_with("summary: cases=2 "));
}
