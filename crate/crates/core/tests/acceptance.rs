//! Reproduction checks, one line per criterion.

mod common;

use std::time::{Duration, Instant};

use common::{corpus, f, options};
use delag::derivative::{translate_derivative, Polarity};
use delag::fairness::translate_gf;
use delag::oracle::{
    automata_agree_on_lassos, equiv_on_lassos, find_lasso, formulas_agree_on_lassos,
};
use delag::patterns::{good_leaf_sets, phi_h, phi_r};
use delag::product::{ComponentKind, Slot};
use delag::rewrite::Rule;
use delag::translate::translate_product;
use delag::{translate, Acceptance, Construction, Formula, Tela, TranslateOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Check = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    ensure(start.elapsed() < limit, || {
        format!("took {:?}, limit {limit:?}", start.elapsed())
    })
}

fn fig2a() -> Outcome {
    let start = Instant::now();
    let body = f("a1 & X a2");
    for aut in [
        translate_gf(&body).map_err(|e| e.to_string())?,
        translate(&f("G F (a1 & X a2)"), &options()).map_err(|e| e.to_string())?,
    ] {
        ensure(aut.state_count() == 2, || {
            format!("{} states", aut.state_count())
        })?;
        ensure(
            aut.mark_count() == 1 && aut.acceptance() == &Acceptance::Inf(0),
            || format!("acceptance {}", aut.acceptance()),
        )?;
        // State 1 is the buffer {a1}: the one reached by reading a1.
        let a1 = aut.edge(0, 0b01).target;
        ensure(a1 != aut.initial(), || {
            "reading a1 does not change the buffer".into()
        })?;
        for q in 0..2 {
            for l in 0..4u32 {
                let marked = aut.edge(q, l).marks.contains(0);
                let expected = q == a1 && l & 0b10 != 0;
                ensure(marked == expected, || {
                    format!("state {q} letter {l}: marked {marked}")
                })?;
            }
        }
    }
    within(start, Duration::from_secs(1))
}

fn fig2b() -> Outcome {
    let start = Instant::now();
    let d = translate_derivative(&f("F (b1 & F b2)"), Polarity::Cosafety, 1000)
        .map_err(|e| e.to_string())?;
    ensure(d.tela.state_count() == 3, || {
        format!("{} states", d.tela.state_count())
    })?;
    let trap = d.accepting_trap.ok_or("no accepting trap")?;
    ensure(
        d.tela
            .edges(trap)
            .iter()
            .all(|e| e.target == trap && e.marks.contains(0)),
        || "trap is not an accepting sink".into(),
    )?;
    within(start, Duration::from_secs(1))
}

fn fig3() -> Outcome {
    let start = Instant::now();
    let p = translate_product(&f("G F (a1 & X a2) & F (b1 & F b2)"), &options())
        .map_err(|e| e.to_string())?;
    ensure(p.tela.state_count() == 4, || {
        format!("{} states", p.tela.state_count())
    })?;
    let fair = p
        .components
        .iter()
        .position(|c| c.is_fairness())
        .ok_or("no fairness component")?;
    let cos = p
        .components
        .iter()
        .position(|c| c.kind == ComponentKind::Cosafety)
        .ok_or("no cosafety component")?;
    for s in &p.states {
        let held = s.slots[fair] == Slot::Hold;
        let accepted = s.slots[cos] == Slot::Acc;
        ensure(held != accepted, || format!("state {s:?}"))?;
    }
    within(start, Duration::from_secs(1))
}

fn table3() -> Outcome {
    let start = Instant::now();
    for n in 0..8 {
        let aut = translate(&phi_r(n), &options()).map_err(|e| e.to_string())?;
        ensure(aut.state_count() == 1, || {
            format!("n={n}: {} states", aut.state_count())
        })?;
        ensure(aut.acceptance_size() == 2 * (n + 1), || {
            format!("n={n}: acceptance size {}", aut.acceptance_size())
        })?;
    }
    within(start, Duration::from_secs(5))
}

fn table4() -> Outcome {
    let start = Instant::now();
    for n in 0..8 {
        let aut = translate(&phi_h(n), &options()).map_err(|e| e.to_string())?;
        ensure(aut.state_count() == 1 << n, || {
            format!("n={n}: {} states", aut.state_count())
        })?;
        ensure(aut.acceptance_size() == n + 1, || {
            format!("n={n}: acceptance size {}", aut.acceptance_size())
        })?;
    }
    within(start, Duration::from_secs(30))
}

fn leaf_sets() -> Outcome {
    let start = Instant::now();
    for n in 0..=8 {
        let count = good_leaf_sets(&phi_r(n)).len();
        ensure(count >= 1 << (n / 2), || {
            format!("n={n}: {count} good leaf sets")
        })?;
    }
    within(start, Duration::from_secs(10))
}

fn oracle_suite() -> Outcome {
    let start = Instant::now();
    let corpus = corpus();
    ensure(corpus.len() >= 20, || {
        format!("corpus has {} formulas", corpus.len())
    })?;
    for phi in &corpus {
        let aut = translate(phi, &options()).map_err(|e| format!("{phi}: {e}"))?;
        if let Some(cex) = equiv_on_lassos(phi, &aut, 2, 3) {
            return Err(format!("{phi}: disagreement on {cex}"));
        }
    }
    within(start, Duration::from_secs(300))
}

fn variants(phi: &Formula) -> Result<Vec<(&'static str, Tela)>, String> {
    let base = options();
    let with = |name, o: TranslateOptions| {
        translate(phi, &o)
            .map(|t| (name, t))
            .map_err(|e| format!("{phi} {name}: {e}"))
    };
    Ok(vec![
        with("enhanced", base.clone())?,
        with(
            "standard",
            TranslateOptions {
                construction: Construction::Standard,
                ..base.clone()
            },
        )?,
        with(
            "local history",
            TranslateOptions {
                global_history: false,
                ..base.clone()
            },
        )?,
        with(
            "piggyback",
            TranslateOptions {
                piggyback: true,
                ..base.clone()
            },
        )?,
        with(
            "standard piggyback",
            TranslateOptions {
                construction: Construction::Standard,
                piggyback: true,
                ..base
            },
        )?,
    ])
}

fn cross_checks() -> Outcome {
    for phi in &corpus() {
        let autos = variants(phi)?;
        let (_, reference) = &autos[0];
        for (name, aut) in &autos[1..] {
            if let Some(cex) = automata_agree_on_lassos(reference, aut, 2, 3) {
                return Err(format!("{phi}: enhanced and {name} differ on {cex}"));
            }
        }
        let complement = reference.complement();
        if let Some(cex) = find_lasso(reference.ap(), 2, 3, |s, c| {
            reference.accepts_letters(s, c) != complement.accepts_letters(s, c)
        }) {
            return Err(format!("{phi}: complement overlaps on {cex}"));
        }
    }
    Ok(())
}

fn random_ltl_x(rng: &mut ChaCha8Rng, depth: usize) -> Formula {
    let atoms = ["p", "q"];
    if depth == 0 || rng.gen_bool(0.3) {
        return Formula::literal(atoms[rng.gen_range(0..2)], rng.gen_bool(0.7));
    }
    match rng.gen_range(0..3) {
        0 => Formula::next(random_ltl_x(rng, depth - 1)),
        1 => Formula::and([random_ltl_x(rng, depth - 1), random_ltl_x(rng, depth - 1)]),
        _ => Formula::or([random_ltl_x(rng, depth - 1), random_ltl_x(rng, depth - 1)]),
    }
}

fn rewrite_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rules: Vec<Rule> = Rule::NORMAL_FORM
        .into_iter()
        .chain([Rule::GfUntil, Rule::FgUntil])
        .collect();
    for rule in rules {
        let mut applied = 0;
        let mut tries = 0;
        while applied < 50 {
            tries += 1;
            ensure(tries < 5000, || {
                format!("{rule:?}: only {applied} instances")
            })?;
            let lhs = rule.instantiate(&random_ltl_x(&mut rng, 3), &random_ltl_x(&mut rng, 3));
            let Some(rhs) = rule.apply(&lhs) else {
                continue;
            };
            applied += 1;
            if let Some(cex) = formulas_agree_on_lassos(&lhs, &rhs, 2, 3) {
                return Err(format!("{rule:?}: {lhs} vs {rhs} on {cex}"));
            }
        }
    }
    Ok(())
}

fn main() {
    let checks: [Check; 9] = [
        ("buffer automaton for GF(a1 & X a2)", fig2a),
        ("derivative automaton for F(b1 & F b2)", fig2b),
        ("enhanced product of the running example", fig3),
        ("acceptance sizes of the alternating pattern", table3),
        ("sizes of the history pattern", table4),
        ("good leaf set lower bound", leaf_sets),
        ("oracle equivalence on the corpus", oracle_suite),
        ("construction cross-checks", cross_checks),
        ("rewrite rule soundness", rewrite_soundness),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in checks.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {}: pass ({name})", i + 1),
            Err(e) => {
                println!("criterion {}: FAIL ({name}): {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
