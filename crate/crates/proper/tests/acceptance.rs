//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line, even under plain
//! `cargo test`.

#[path = "../../core/tests/support/oracles.rs"]
mod oracles;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use proper::{gen_random, load_model, save_model, GenConfig};
use proper_core::formula::random_formula;
use proper_core::lazy::{periodic_extension, properize_countable, LazyModel, PeriodicState};
use proper_core::semantics::extension_flags;
use proper_core::{
    bounded_bisimilar, check_bounded_morphism, check_property, coarsest_bisimulation, explore, is_proper,
    partition_blocks, properize_finite, Formula, FrameProperty, ProperizeError, RelationalStructure,
};

use FrameProperty::*;

const CLOSURES: [&[FrameProperty]; 8] = [
    &[],
    &[Reflexive],
    &[Symmetric],
    &[Transitive],
    &[Serial],
    &[Euclidean],
    &[Reflexive, Symmetric, Transitive],
    &[Serial, Transitive, Euclidean],
];
const DENSITIES: [f64; 4] = [0.0, 0.3, 0.7, 1.0];

struct Sample {
    cfg: GenConfig,
    model: RelationalStructure,
}

// 500 models cycling agents fastest, then size, then density; closure sets
// rotate independently so every combination family appears.
fn corpus() -> Vec<Sample> {
    (0..500u64)
        .map(|i| {
            let cfg = GenConfig {
                states: 1 + (i as usize / 3) % 8,
                agents: 2 + i as usize % 3,
                density: DENSITIES[(i as usize / 24) % 4],
                props: 1 + i as usize % 2,
                close: CLOSURES[(i as usize / 5) % CLOSURES.len()].to_vec(),
                seed: 0x5eed_0000 + i,
            };
            let model = gen_random(&cfg).expect("corpus parameters are valid");
            Sample { cfg, model }
        })
        .collect()
}

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn properness(corpus: &[Sample]) -> Outcome {
    let t = Instant::now();
    let mut runs = 0;
    for (i, s) in corpus.iter().enumerate() {
        for k in 1..=s.model.n_agents() {
            let (p, _) = properize_finite(&s.model, k).map_err(|e| format!("model {i}: {e}"))?;
            ensure(is_proper(p.model()), || format!("model {i}, skew agent {k}: not proper"))?;
            runs += 1;
        }
    }
    within(t.elapsed(), Duration::from_secs(30))?;
    Ok(format!("{runs} properizations in {:.2?}", t.elapsed()))
}

fn partition(corpus: &[Sample]) -> Outcome {
    for (i, s) in corpus.iter().enumerate() {
        let m = s.model.len();
        let (p, pi) = properize_finite(&s.model, 1).unwrap();
        let blocks = partition_blocks(&p);
        ensure(blocks.len() == m, || format!("model {i}: {} blocks, expected {m}", blocks.len()))?;
        ensure(blocks.is_partition_of(m * m), || format!("model {i}: blocks do not partition the carrier"))?;
        for (l, block) in blocks.blocks().iter().enumerate() {
            let mut images: Vec<usize> = block.iter().map(|&x| pi.apply(x)).collect();
            images.sort_unstable();
            ensure(images == (0..m).collect::<Vec<_>>(), || {
                format!("model {i}: projection not bijective on block {l}")
            })?;
        }
    }
    Ok(format!("{} models", corpus.len()))
}

fn morphism(corpus: &[Sample]) -> Outcome {
    for (i, s) in corpus.iter().enumerate() {
        for k in 1..=s.model.n_agents() {
            let (p, pi) = properize_finite(&s.model, k).unwrap();
            let report = check_bounded_morphism(p.model(), &s.model, &pi, true).map_err(|e| e.to_string())?;
            ensure(report.passes(), || format!("model {i}, skew agent {k}: {report:?}"))?;
        }
    }
    Ok(format!("{} models, every skew agent", corpus.len()))
}

fn bisimilarity(corpus: &[Sample]) -> Outcome {
    let mut instances = 0;
    for (i, s) in corpus.iter().enumerate().filter(|(_, s)| s.model.len() <= 6) {
        let (p, _) = properize_finite(&s.model, 1).unwrap();
        let (union, inl, inr) = p.model().disjoint_union(&s.model).map_err(|e| e.to_string())?;
        let engine = coarsest_bisimulation(&union);
        let oracle = oracles::classes(&oracles::naive_bisimulation(&union));
        ensure(engine.blocks() == oracle.as_slice(), || format!("model {i}: engine and oracle disagree"))?;
        for ix in 0..p.model().len() {
            let base = p.point(ix).base;
            ensure(engine.same_block(inl.apply(ix), inr.apply(base)), || {
                format!("model {i}: {} not bisimilar to {}", p.model().state_name(ix), s.model.state_name(base))
            })?;
        }
        instances += 1;
    }
    Ok(format!("{instances} models with m <= 6"))
}

fn modal_equivalence(corpus: &[Sample]) -> Outcome {
    let mut checks = 0;
    for (i, s) in corpus.iter().enumerate().step_by(5).take(100) {
        let (p, _) = properize_finite(&s.model, 1).unwrap();
        let mut pool: Vec<String> = s.model.valuation().keys().cloned().collect();
        pool.push("absent".into());
        for j in 0..100u64 {
            let f = random_formula(s.model.n_agents(), &pool, 5, 16, (i as u64) << 16 | j).unwrap();
            let here = extension_flags(p.model(), &f).map_err(|e| e.to_string())?;
            let there = extension_flags(&s.model, &f).map_err(|e| e.to_string())?;
            for ix in 0..p.model().len() {
                ensure(here[ix] == there[p.point(ix).base], || {
                    format!("model {i}: `{f}` differs at {}", p.model().state_name(ix))
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} state/formula checks"))
}

fn preservation() -> Outcome {
    for prop in FrameProperty::ALL {
        for i in 0..100u64 {
            let cfg = GenConfig {
                states: 1 + i as usize % 6,
                agents: 2 + i as usize % 3,
                density: DENSITIES[(i as usize / 6) % 4],
                props: 1,
                close: vec![prop],
                seed: 0xc105e + i,
            };
            let m = gen_random(&cfg).unwrap();
            let skew = 1 + i as usize % cfg.agents;
            let (p, _) = properize_finite(&m, skew).unwrap();
            for a in 1..=cfg.agents {
                let v = check_property(p.model(), a, prop).unwrap();
                ensure(v.is_none(), || format!("{prop}, model {i}, agent {a} (skew {skew}): {v:?}"))?;
            }
        }
    }
    Ok("5 properties x 100 models".into())
}

fn countable(corpus: &[Sample]) -> Outcome {
    let t = Instant::now();
    let mut interior = 0;
    for (i, s) in corpus.iter().enumerate().step_by(10).take(50) {
        let m = &s.model;
        let pc = properize_countable(periodic_extension(m), 1).map_err(|e| e.to_string())?;
        let x = i % m.len();
        let origin = PeriodicState { base: x, copy: 0 };
        let w = explore(&pc, (origin, origin), 4).map_err(|e| e.to_string())?;
        let inner: Vec<usize> = w.interior().collect();
        for (n, &a) in inner.iter().enumerate() {
            for &b in &inner[n + 1..] {
                let all = (1..=m.n_agents()).all(|ag| pc.related(ag, &w.states[a], &w.states[b]));
                ensure(!all, || {
                    format!("model {i}: {} and {} related by all", pc.label(&w.states[a]), pc.label(&w.states[b]))
                })?;
            }
            for t in pc.successors(1, &w.states[a]) {
                ensure(pc.offset(&w.states[a]) == pc.offset(&t), || {
                    format!("model {i}: offset broken at {}", pc.label(&t))
                })?;
            }
        }
        interior += inner.len();
        let start = w.model.state_name(0).to_string();
        let ok = bounded_bisimilar(&w.model, &start, m, m.state_name(x), 4).map_err(|e| e.to_string())?;
        ensure(ok, || format!("model {i}: window not 4-bisimilar to {}", m.state_name(x)))?;
    }
    within(t.elapsed(), Duration::from_secs(60))?;
    Ok(format!("50 windows, {interior} interior states, {:.2?}", t.elapsed()))
}

fn cardinality(corpus: &[Sample]) -> Outcome {
    for (i, s) in corpus.iter().enumerate() {
        let (p, _) = properize_finite(&s.model, 1).unwrap();
        let m = s.model.len();
        ensure(p.model().len() == m * m, || format!("model {i}: {} states, expected {}", p.model().len(), m * m))?;
    }
    Ok(format!("{} models", corpus.len()))
}

fn single_agent_guard() -> Outcome {
    for i in 0..50u64 {
        let cfg = GenConfig {
            states: 1 + i as usize % 8,
            agents: 1,
            density: DENSITIES[i as usize % 4],
            props: 1,
            close: CLOSURES[i as usize % CLOSURES.len()].to_vec(),
            seed: 0x0e + i,
        };
        let m = gen_random(&cfg).unwrap();
        ensure(matches!(properize_finite(&m, 1), Err(ProperizeError::SingleAgent)), || format!("finite, model {i}"))?;
        ensure(matches!(properize_countable(periodic_extension(&m), 1), Err(ProperizeError::SingleAgent)), || {
            format!("countable, model {i}")
        })?;
    }
    Ok("50 single-agent models, both constructions".into())
}

fn round_trips(corpus: &[Sample]) -> Outcome {
    let pool: Vec<String> = ["p", "q", "r2", "long_name"].map(String::from).to_vec();
    for j in 0..1000u64 {
        let f = random_formula(1 + j as usize % 4, &pool, 6, 1 + j as usize % 30, 0xf0 + j).unwrap();
        let text = f.to_string();
        let back: Formula = text.parse().map_err(|e| format!("`{text}`: {e}"))?;
        ensure(back == f, || format!("`{text}` reparsed as {}", back.to_tree_string()))?;
        ensure(back.to_string() == text, || format!("`{text}` printed differently"))?;
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (i, s) in corpus.iter().enumerate() {
        let path = dir.path().join(format!("m{i}.json"));
        save_model(&s.model, &path).map_err(|e| e.to_string())?;
        let back = load_model(&path).map_err(|e| format!("model {i}: {e}"))?;
        ensure(back == s.model, || format!("model {i} ({:?}) changed on reload", s.cfg))?;
        ensure(back.states() == s.model.states(), || format!("model {i}: state order changed"))?;
    }
    Ok(format!("1000 formulas, {} models", corpus.len()))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: [Criterion<'_>; 10] = [
        ("properness", Box::new(|| properness(&corpus))),
        ("offset blocks", Box::new(|| partition(&corpus))),
        ("bounded morphism", Box::new(|| morphism(&corpus))),
        ("bisimilarity", Box::new(|| bisimilarity(&corpus))),
        ("modal equivalence", Box::new(|| modal_equivalence(&corpus))),
        ("frame property preservation", Box::new(preservation)),
        ("countable construction", Box::new(|| countable(&corpus))),
        ("cardinality", Box::new(|| cardinality(&corpus))),
        ("single-agent guard", Box::new(single_agent_guard)),
        ("round trips", Box::new(|| round_trips(&corpus))),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS  {:>2} {name}: {detail}", n + 1),
            Err(why) => {
                println!("FAIL  {:>2} {name}: {why}", n + 1);
                failed += 1;
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
