//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with
//! status 1 if any criterion fails.

use std::time::Instant;

use kobdd::analysis::{
    check_bound_det, check_bound_nondet, count_subfunctions_min, count_subfunctions_order, CountMode, CutRange,
    Partition,
};
use kobdd::bits::all_inputs;
use kobdd::constructions::{build_eqs_kobdd, build_saf_2kobdd, eqs_width_bound, saf_width_bound};
use kobdd::functions::{eqs_eval, SafParameters, StepMode};
use kobdd::generate::{bounded_error_program, random_input, random_program, GenConfig};
use kobdd::harness::{diff_eval, diff_fns, DiffMode};
use kobdd::protocols::{
    beta_close, beta_close_matrix, compile_protocol, matrix_accept, perturb_protocol, protocol_matrices, transfer_beta,
    weaken_protocol, AutomataProtocol, RatMatrix,
};
use kobdd::transforms::{decompose, simulate_as_nobdd};
use kobdd::{BranchingProgram, EvalResult, Mode, Outcome, Rational};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

// Population sizes and tolerances.
const EQS_WIDTH_LIMIT: usize = 42;
const SAF_RANDOM_INPUTS: usize = 100_000;
const SAF_PLANTED_INPUTS: usize = 1_000;
const PROGRAMS_PER_SHAPE: usize = 200;
const TRANSFORM_MAX_N: usize = 10;
const PROTOCOL_PROGRAMS: usize = 500;
const PROTOCOL_MAX_N: usize = 8;
const BETA_INSTANCES: usize = 10_000;
const BETA_MAX_POWER: u32 = 5;
const BETA_MAX_SIZE: usize = 8;
const WEAK_PROTOCOLS: usize = 500;
const PERTURBED_PAIRS: usize = 100;
const CORPUS_FILES: usize = 50;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn rng_for(stream: u64, i: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(stream.wrapping_mul(1_000_003).wrapping_add(i as u64))
}

fn delta() -> Rational {
    Rational::new(1.into(), 4.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn errs<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// The `(k, w)` populations shared by criteria 3 to 6.
fn transform_population(mode: Mode, stream: u64) -> Vec<(usize, usize, BranchingProgram)> {
    let mut shapes = Vec::new();
    for k in 1..=3 {
        for w in 2..=3 {
            shapes.push((k, w));
        }
    }
    shapes
        .into_par_iter()
        .flat_map_iter(|(k, w)| {
            (0..PROGRAMS_PER_SHAPE).map(move |i| {
                let mut rng = rng_for(stream + (k * 10 + w) as u64, i);
                let n = rng.gen_range(2..=TRANSFORM_MAX_N);
                (k, w, random_program(&mut rng, &GenConfig::new(mode, n, k, w)).unwrap())
            })
        })
        .collect()
}

fn criterion_1() -> Check {
    let mut widths = Vec::new();
    for n in [8, 12, 16] {
        let p = errs(build_eqs_kobdd(4, n))?;
        let v = errs(diff_fns(
            n,
            DiffMode::Exhaustive,
            |x| p.evaluate(x),
            |x| Ok(EvalResult::Bit(eqs_eval(4, x)?)),
        ))?;
        ensure(v.is_equivalent(), || format!("n={n}: {v:?}"))?;
        let w = p.width();
        ensure(w <= EQS_WIDTH_LIMIT && w <= eqs_width_bound(4), || {
            format!("n={n}: width {w}")
        })?;
        widths.push(w);
    }
    Ok(format!(
        "k=4, n in {{8,12,16}} exhaustive, widths {widths:?} <= {EQS_WIDTH_LIMIT}"
    ))
}

fn saf_case(params: &SafParameters, exhaustive: bool, seed: u64) -> Result<usize, String> {
    let p = errs(build_saf_2kobdd(params))?;
    let n = params.n();
    let oracle = |x: &[bool]| Ok(EvalResult::Bit(params.eval(x)?));
    let mode = if exhaustive {
        DiffMode::Exhaustive
    } else {
        DiffMode::Sample {
            samples: SAF_RANDOM_INPUTS,
            seed,
        }
    };
    let v = errs(diff_fns(n, mode, |x| p.evaluate(x), oracle))?;
    ensure(v.is_equivalent(), || {
        format!("(k,w,n)=({},{},{n}): {v:?}", params.k(), params.w())
    })?;
    if !exhaustive {
        let bad = (0..SAF_PLANTED_INPUTS).into_par_iter().find_first(|&i| {
            let mut rng = rng_for(seed, i);
            let value = Some(rng.gen_range(0..params.w()));
            let chain = params.planted_chain(&mut rng, value).unwrap();
            p.evaluate_bit(&chain.input).unwrap() != params.eval(&chain.input).unwrap()
        });
        ensure(bad.is_none(), || format!("planted chain {bad:?} differs"))?;
    }
    Ok(p.width())
}

fn criterion_2() -> Check {
    let mut notes = Vec::new();
    for (k, w, exhaustive) in [(1, 1, true), (2, 1, true), (2, 2, false)] {
        let n = if exhaustive { SafParameters::min_n(k, w) } else { 64 };
        for mode in [StepMode::Strict, StepMode::Literal] {
            let params = errs(SafParameters::new(k, w, n))?.with_mode(mode);
            let width = saf_case(&params, exhaustive, 17)?;
            if mode == StepMode::Strict {
                ensure(width <= saf_width_bound(w), || {
                    format!("(k,w,n)=({k},{w},{n}) strict width {width} > {}", saf_width_bound(w))
                })?;
                notes.push(format!("({k},{w},{n}) w={width}"));
            }
        }
    }
    Ok(format!(
        "strict and literal Step1 equivalent; strict widths {}",
        notes.join(", ")
    ))
}

fn criterion_3(nd: &[(usize, usize, BranchingProgram)]) -> Check {
    let max_traces = nd
        .par_iter()
        .map(|(k, _, p)| -> Result<usize, String> {
            let w = p.width();
            let d = errs(decompose(p))?;
            let bound = w.pow(*k as u32 - 1);
            ensure(d.traces.len() <= bound, || {
                format!("{} traces > w^(k-1) = {bound}", d.traces.len())
            })?;
            ensure(d.max_term_width() <= w, || "factor wider than w".into())?;
            let v = errs(diff_fns(
                p.n(),
                DiffMode::Exhaustive,
                |x| p.evaluate(x),
                |x| Ok(EvalResult::Bit(d.eval(x)?)),
            ))?;
            ensure(v.is_equivalent(), || {
                format!("decomposition differs: {v:?}\n{}", p.to_bpv1())
            })?;
            Ok(d.traces.len())
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    Ok(format!("{} programs, max trace count {max_traces}", nd.len()))
}

fn criterion_4(nd: &[(usize, usize, BranchingProgram)]) -> Check {
    let widest = nd
        .par_iter()
        .map(|(k, _, p)| -> Result<(usize, usize), String> {
            let w = p.width();
            let s = errs(simulate_as_nobdd(p))?;
            let bound = w.pow(2 * *k as u32 - 1);
            let sw = s.program.width();
            ensure(s.program.k() == 1 && s.program.mode() == Mode::Nondeterministic, || {
                "not a NOBDD".into()
            })?;
            ensure(sw <= bound && s.construction_width <= bound, || {
                format!("width {sw} / {} > w^(2k-1) = {bound}", s.construction_width)
            })?;
            let v = errs(diff_eval(p, &s.program, DiffMode::Exhaustive))?;
            ensure(v.is_equivalent(), || format!("simulation differs: {v:?}"))?;
            Ok((sw, bound))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .max()
        .unwrap_or((0, 0));
    Ok(format!(
        "{} programs, widest simulation {} (bound {})",
        nd.len(),
        widest.0,
        widest.1
    ))
}

fn subfunction_bound_check(
    pop: &[(usize, usize, BranchingProgram)],
    check: fn(u64, usize, usize) -> bool,
) -> Result<(usize, u64), String> {
    let counts = pop
        .par_iter()
        .map(|(k, _, p)| -> Result<u64, String> {
            let tt = errs(p.truth_table())?;
            let c = errs(count_subfunctions_order(&tt, p.order(), CutRange::All))?;
            ensure(check(c.max, *k, p.width()), || {
                format!("N = {} exceeds the bound for\n{}", c.max, p.to_bpv1())
            })?;
            Ok(c.max)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((counts.len(), counts.into_iter().max().unwrap_or(0)))
}

fn criterion_5(det: &[(usize, usize, BranchingProgram)]) -> Check {
    let (n, max) = subfunction_bound_check(det, |c, k, w| check_bound_det(c, k, w).holds)?;
    Ok(format!("{n} deterministic programs, 0 violations, max N^theta {max}"))
}

fn criterion_6(nd: &[(usize, usize, BranchingProgram)]) -> Check {
    let (n, max) = subfunction_bound_check(nd, |c, k, w| check_bound_nondet(c, k, w).holds)?;
    Ok(format!(
        "{n} nondeterministic programs, 0 violations, max N^theta {max}"
    ))
}

fn protocol_population() -> Vec<(BranchingProgram, AutomataProtocol)> {
    (0..PROTOCOL_PROGRAMS)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(7, i);
            let mode = [Mode::Deterministic, Mode::Nondeterministic, Mode::Probabilistic][i % 3];
            let n = rng.gen_range(2..=PROTOCOL_MAX_N);
            let k = rng.gen_range(1..=3);
            let w = rng.gen_range(2..=3);
            let p = random_program(&mut rng, &GenConfig::new(mode, n, k, w)).unwrap();
            let cut = rng.gen_range(1..n);
            let r = compile_protocol(&p, &Partition::from_order(p.order(), cut).unwrap()).unwrap();
            (p, r)
        })
        .collect()
}

fn criterion_7(pop: &[(BranchingProgram, AutomataProtocol)]) -> Check {
    let checked = pop
        .par_iter()
        .map(|(p, r)| -> Result<usize, String> {
            for x in all_inputs(p.n()) {
                let a = errs(p.evaluate(&x))?;
                let b = errs(r.run(&x))?;
                ensure(a == b, || format!("program {a:?} vs protocol {b:?}\n{}", p.to_bpv1()))?;
            }
            Ok(1 << p.n())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(format!(
        "{} programs, {} inputs, exact agreement",
        pop.len(),
        checked.iter().sum::<usize>()
    ))
}

fn criterion_8(pop: &[(BranchingProgram, AutomataProtocol)]) -> Check {
    let checked = pop
        .par_iter()
        .map(|(p, r)| -> Result<usize, String> {
            for x in all_inputs(p.n()) {
                let a = errs(r.run(&x))?;
                let b = errs(protocol_matrices(r, &x).and_then(|pm| matrix_accept(&pm)))?;
                ensure(a == b, || format!("run {a:?} vs matrix {b:?}"))?;
            }
            Ok(1 << p.n())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(format!(
        "{} protocols, {} inputs, 0 discrepancies",
        pop.len(),
        checked.iter().sum::<usize>()
    ))
}

fn small_ratio(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rational {
    Rational::new(rng.gen_range(lo..=hi).into(), den.into())
}

/// A value `β`-close to `a`: zero stays zero, otherwise scaled by `[1/β, β]`.
fn close_to(rng: &mut ChaCha8Rng, a: &Rational, beta: &Rational) -> Rational {
    if a.is_zero() {
        return Rational::zero();
    }
    let t = small_ratio(rng, 0, 16, 16);
    let f = Rational::one() + (beta - Rational::one()) * t;
    if rng.gen() {
        a * f
    } else {
        a / f
    }
}

fn random_beta(rng: &mut ChaCha8Rng) -> Rational {
    Rational::one() + small_ratio(rng, 0, 8, 4)
}

fn random_nonneg(rng: &mut ChaCha8Rng) -> Rational {
    if rng.gen_ratio(1, 5) {
        Rational::zero()
    } else {
        let den = rng.gen_range(1..=7);
        small_ratio(rng, 1, 20, den)
    }
}

fn criterion_9() -> Check {
    type Prop = fn(&mut ChaCha8Rng) -> Result<bool, String>;
    let props: [(&str, Prop); 4] = [
        ("sum", |rng| {
            let beta = random_beta(rng);
            let (a1, a2) = (random_nonneg(rng), random_nonneg(rng));
            let (b1, b2) = (close_to(rng, &a1, &beta), close_to(rng, &a2, &beta));
            errs(beta_close(&(a1 + a2), &(b1 + b2), &beta))
        }),
        ("product", |rng| {
            let beta = random_beta(rng);
            let (a1, a2) = (random_nonneg(rng), random_nonneg(rng));
            let (b1, b2) = (close_to(rng, &a1, &beta), close_to(rng, &a2, &beta));
            errs(beta_close(&(a1 * a2), &(b1 * b2), &(&beta * &beta)))
        }),
        ("scalar", |rng| {
            let beta = random_beta(rng);
            let (a, c) = (random_nonneg(rng), random_nonneg(rng));
            let b = close_to(rng, &a, &beta);
            errs(beta_close(&(&c * a), &(c * b), &beta))
        }),
        ("matrix power", |rng| {
            let beta = random_beta(rng);
            let size = rng.gen_range(1..=BETA_MAX_SIZE);
            let z = rng.gen_range(1..=BETA_MAX_POWER);
            let mut b1 = RatMatrix::zeros(size, size);
            let mut b2 = RatMatrix::zeros(size, size);
            for i in 0..size {
                for j in 0..size {
                    let a = if rng.gen_ratio(1, 3) {
                        Rational::zero()
                    } else {
                        small_ratio(rng, 1, 4, 4)
                    };
                    let b = close_to(rng, &a, &beta);
                    b1.set(i, j, a);
                    b2.set(i, j, b);
                }
            }
            if !errs(beta_close_matrix(&b1, &b2, &beta))? {
                return Err("generator produced a non-close pair".into());
            }
            let bz = num_traits::pow(beta, z as usize);
            errs(beta_close_matrix(&errs(b1.pow(z))?, &errs(b2.pow(z))?, &bz))
        }),
    ];
    for (p, (name, prop)) in props.iter().enumerate() {
        let bad = (0..BETA_INSTANCES)
            .into_par_iter()
            .map(|i| prop(&mut rng_for(900 + p as u64, i)).map(|ok| (!ok).then_some(i)))
            .find_first(|r| !matches!(r, Ok(None)));
        if let Some(r) = bad {
            return Err(format!("{name}: {r:?}"));
        }
    }
    // Boundary cases.
    let zero = Rational::zero;
    let one = Rational::one;
    let two = || Rational::from_integer(2.into());
    let cases = [
        (errs(beta_close(&zero(), &zero(), &one()))?, true),
        (errs(beta_close(&zero(), &one(), &two()))?, false),
        (errs(beta_close(&one(), &one(), &one()))?, true),
        (errs(beta_close(&one(), &two(), &one()))?, false),
        (errs(beta_close(&one(), &two(), &two()))?, true),
        (
            beta_close(&one(), &one(), &Rational::new(1.into(), 2.into())).is_err(),
            true,
        ),
    ];
    ensure(cases.iter().all(|(got, want)| got == want), || {
        format!("boundary cases {cases:?}")
    })?;
    Ok(format!(
        "4 x {BETA_INSTANCES} instances (z <= {BETA_MAX_POWER}, size <= {BETA_MAX_SIZE}), boundary cases ok"
    ))
}

fn criterion_10() -> Check {
    let delta = delta();
    let half_delta = &delta / Rational::from_integer(2.into());
    let changed = (0..WEAK_PROTOCOLS)
        .into_par_iter()
        .map(|i| -> Result<bool, String> {
            let mut rng = rng_for(10, i);
            let n = rng.gen_range(2..=PROTOCOL_MAX_N);
            let k = rng.gen_range(1..=3);
            let w = rng.gen_range(2..=3);
            let mut cfg = GenConfig::new(Mode::Probabilistic, n, k, w);
            cfg.delta = Some(delta.clone());
            let p = errs(random_program(&mut rng, &cfg))?;
            let r = errs(compile_protocol(
                &p,
                &Partition::from_order(p.order(), rng.gen_range(1..n)).unwrap(),
            ))?;
            let weak = errs(weaken_protocol(&r, &delta))?;
            for x in all_inputs(n) {
                let a = errs(r.run(&x))?;
                let b = errs(weak.run(&x))?;
                let gap = a.probability().unwrap() - b.probability().unwrap();
                let gap = if gap < Rational::zero() { -gap } else { gap };
                ensure(gap <= half_delta, || format!("gap {gap} on {x:?}"))?;
            }
            Ok(weak != r)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let truncated = changed.iter().filter(|&&c| c).count();
    Ok(format!(
        "{WEAK_PROTOCOLS} protocols ({truncated} with truncated entries), gap <= delta/2 everywhere"
    ))
}

fn criterion_11() -> Check {
    let delta = delta();
    let half_delta = &delta / Rational::from_integer(2.into());
    let results = (0..PERTURBED_PAIRS)
        .into_par_iter()
        .map(|i| -> Result<bool, String> {
            let mut rng = rng_for(11, i);
            let n = rng.gen_range(2..=PROTOCOL_MAX_N);
            let k = rng.gen_range(1..=3);
            let w = rng.gen_range(2..=3);
            let mut cfg = GenConfig::new(Mode::Probabilistic, n, k, w);
            cfg.delta = Some(delta.clone());
            let p = errs(bounded_error_program(&mut rng, &cfg))?;
            let r = errs(compile_protocol(
                &p,
                &Partition::from_order(p.order(), rng.gen_range(1..n)).unwrap(),
            ))?;
            let beta = errs(transfer_beta(&delta, k))?;
            let total = num_traits::pow(beta.clone(), 2 * k - 1);
            let r2 = errs(perturb_protocol(&r, &beta, &mut rng))?;
            for x in all_inputs(n) {
                let a = errs(r.run(&x))?;
                let b = errs(r2.run(&x))?;
                let (pa, pb) = (a.probability().unwrap(), b.probability().unwrap());
                ensure(errs(beta_close(pa, pb, &total))?, || {
                    format!("{pa} and {pb} not beta^(2k-1)-close")
                })?;
                let kept = match a {
                    EvalResult::Probability { outcome, .. } => Outcome::classify(pb, &half_delta) == outcome,
                    EvalResult::Bit(_) => false,
                };
                ensure(kept, || format!("classification changed on {x:?}: {pa} -> {pb}"))?;
            }
            Ok(r2 != r)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let nontrivial = results.iter().filter(|&&c| c).count();
    Ok(format!(
        "{PERTURBED_PAIRS} pairs ({nontrivial} changed), all beta^(2k-1)-close, outcomes kept at margin delta/2"
    ))
}

fn corpus() -> Vec<(String, String)> {
    let mut files = Vec::new();
    for n in [8, 12] {
        files.push((format!("eqs_{n}.bp"), build_eqs_kobdd(4, n).unwrap().to_bpv1()));
    }
    for (k, w) in [(1, 1), (2, 1)] {
        let params = SafParameters::new(k, w, SafParameters::min_n(k, w)).unwrap();
        files.push((format!("saf_{k}_{w}.bp"), build_saf_2kobdd(&params).unwrap().to_bpv1()));
    }
    let mut i = 0;
    while files.len() < CORPUS_FILES {
        let mut rng = rng_for(12, i);
        let mode = [Mode::Deterministic, Mode::Nondeterministic, Mode::Probabilistic][i % 3];
        let n = rng.gen_range(2..=6);
        let k = rng.gen_range(1..=3);
        let p = random_program(&mut rng, &GenConfig::new(mode, n, k, 3)).unwrap();
        let text = match i % 4 {
            0 => p.to_bpv1(),
            1 if mode != Mode::Probabilistic => simulate_as_nobdd(&p).unwrap().program.to_bpv1(),
            _ => compile_protocol(&p, &Partition::from_order(p.order(), rng.gen_range(1..n)).unwrap())
                .unwrap()
                .to_cpv1(),
        };
        let ext = if text.starts_with("CPv1") { "cp" } else { "bp" };
        files.push((format!("file_{i:02}.{ext}"), text));
        i += 1;
    }
    files
}

fn reparse(text: &str) -> Result<String, String> {
    if text.starts_with("CPv1") {
        errs(AutomataProtocol::from_cpv1(text)).map(|r| r.to_cpv1())
    } else {
        errs(BranchingProgram::from_bpv1(text)).map(|p| p.to_bpv1())
    }
}

fn criterion_12() -> Check {
    let dir = std::env::temp_dir().join(format!("kobdd-acceptance-{}", std::process::id()));
    errs(std::fs::create_dir_all(&dir))?;
    let files = corpus();
    let result = (|| {
        for (name, text) in &files {
            let path = dir.join(name);
            errs(std::fs::write(&path, text))?;
            let read = errs(std::fs::read_to_string(&path))?;
            let once = reparse(&read)?;
            ensure(once == *text && reparse(&once)? == once, || {
                format!("{name} does not round-trip")
            })?;
        }
        ensure(corpus() == files, || "corpus generation is not deterministic".into())?;

        let tt = errs(
            random_program(&mut rng_for(12, 99), &GenConfig::new(Mode::Nondeterministic, 7, 2, 3))
                .and_then(|p| p.truth_table()),
        )?;
        let sampled = CountMode::Sampled { samples: 20, seed: 42 };
        let r1 = errs(count_subfunctions_min(&tt, sampled, CutRange::All))?;
        let r2 = errs(count_subfunctions_min(&tt, sampled, CutRange::All))?;
        ensure(r1 == r2, || "sampled count reports differ for one seed".into())?;

        let cfg = GenConfig::new(Mode::Probabilistic, 6, 2, 3);
        let p1 = errs(bounded_error_program(&mut rng_for(12, 7), &cfg))?;
        let p2 = errs(bounded_error_program(&mut rng_for(12, 7), &cfg))?;
        ensure(p1.to_bpv1() == p2.to_bpv1(), || {
            "program generation differs for one seed".into()
        })?;
        let r = errs(compile_protocol(&p1, &Partition::from_order(p1.order(), 3).unwrap()))?;
        let beta = Rational::new(9.into(), 8.into());
        let q1 = errs(perturb_protocol(&r, &beta, &mut rng_for(12, 8)))?;
        let q2 = errs(perturb_protocol(&r, &beta, &mut rng_for(12, 8)))?;
        ensure(q1.to_cpv1() == q2.to_cpv1(), || {
            "perturbation differs for one seed".into()
        })?;
        let x1 = random_input(&mut rng_for(12, 9), 64);
        let x2 = random_input(&mut rng_for(12, 9), 64);
        ensure(x1 == x2, || "input sampling differs for one seed".into())?;
        Ok(format!(
            "{} files round-trip byte-identically, seeded reports reproducible",
            files.len()
        ))
    })();
    let _ = std::fs::remove_dir_all(&dir);
    result
}

fn main() {
    let start = Instant::now();
    let det = transform_population(Mode::Deterministic, 3000);
    let nd = transform_population(Mode::Nondeterministic, 4000);
    let protocols = protocol_population();

    let criteria: Vec<Criterion> = vec![
        ("EQS construction", Box::new(criterion_1)),
        ("SAF construction", Box::new(criterion_2)),
        ("decomposition", Box::new(|| criterion_3(&nd))),
        ("NOBDD simulation", Box::new(|| criterion_4(&nd))),
        ("deterministic subfunction bound", Box::new(|| criterion_5(&det))),
        ("nondeterministic subfunction bound", Box::new(|| criterion_6(&nd))),
        ("protocol equivalence", Box::new(|| criterion_7(&protocols))),
        ("matrix form", Box::new(|| criterion_8(&protocols))),
        ("beta-closeness algebra", Box::new(criterion_9)),
        ("weak protocol", Box::new(criterion_10)),
        ("closeness transfer", Box::new(criterion_11)),
        ("round-trips and determinism", Box::new(criterion_12)),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("[PASS] criterion {}: {name}: {detail} ({:.1?})", i + 1, t.elapsed()),
            Err(why) => {
                failures += 1;
                println!("[FAIL] criterion {}: {name}: {why} ({:.1?})", i + 1, t.elapsed());
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1?}",
        criteria.len() - failures,
        criteria.len(),
        start.elapsed()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
