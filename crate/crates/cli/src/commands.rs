use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use kobdd::analysis::{
    check_bound_det, check_bound_nondet, check_bound_prob, count_subfunctions_min, count_subfunctions_order, CountMode,
    CutRange, ProbConstants, Verdict,
};
use kobdd::bits::{format_bits, index_to_bits, parse_bits};
use kobdd::constructions::{build_eqs, build_saf_2kobdd};
use kobdd::functions::{Eqs, SafParameters, StepMode, TruthTable};
use kobdd::harness::{diff_eval, diff_fns, DiffMode, DiffVerdict};
use kobdd::protocols::{compile_protocol, matrix_accept, protocol_matrices, weaken_protocol, AutomataProtocol};
use kobdd::rational::{format_ratio, parse_ratio_strict};
use kobdd::transforms::{decompose, simulate_as_nobdd};
use kobdd::{BranchingProgram, EvalResult, Mode, Rational};
use rayon::prelude::*;

use crate::report::{self, BoundColumn};
use crate::{
    AnalyzeCmd, BoundClass, BuildCmd, Cli, Command, CountModeArg, FnCmd, FnName, FnParams, FnSource, Format,
    ProtocolCmd, SafArgs, ScanArgs, TransformCmd,
};

const DEFAULT_SAMPLES: usize = 10_000;

/// Runs one command; `Ok(false)` is a validation or equivalence failure.
pub fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Build(cmd) => build(cmd),
        Command::Validate { input } => validate(input),
        Command::Eval { input, bits, all } => {
            let p = read_program(input)?;
            if *all {
                if p.n() > cli.exhaustive_limit {
                    bail!("n = {} exceeds the exhaustive limit {}", p.n(), cli.exhaustive_limit);
                }
                let lines = (0..1u64 << p.n())
                    .into_par_iter()
                    .map(|i| {
                        let x = index_to_bits(i, p.n());
                        Ok(format!("{} {}", format_bits(&x), show(&p.evaluate(&x)?)))
                    })
                    .collect::<kobdd::Result<Vec<_>>>()?;
                for line in lines {
                    println!("{line}");
                }
            } else {
                let x = parse_bits(bits.as_deref().unwrap_or_default())?;
                println!("{}", show(&p.evaluate(&x)?));
            }
            Ok(true)
        }
        Command::Metrics { input } => {
            let p = read_program(input)?;
            let m = p.metrics();
            match cli.format {
                Format::Text => {
                    println!("mode {}\nn {}\nk {}", p.mode().tag(), p.n(), p.k());
                    println!("width {}\nsize {}\nlength {}", m.width, m.size, m.length);
                }
                Format::Csv => {
                    println!("mode,n,k,width,size,length");
                    println!(
                        "{},{},{},{},{},{}",
                        p.mode().tag(),
                        p.n(),
                        p.k(),
                        m.width,
                        m.size,
                        m.length
                    );
                }
            }
            Ok(true)
        }
        Command::Transform(cmd) => transform(cmd),
        Command::Protocol(cmd) => protocol(cli, cmd),
        Command::Analyze(cmd) => analyze(cli, cmd),
        Command::Check { class, args } => check(cli, *class, args),
        Command::DiffEval { left, right, scan } => {
            let a = read_program(left)?;
            let b = read_program(right)?;
            let mode = scan_mode(cli, scan, a.n())?;
            report_diff(diff_eval(&a, &b, mode)?)
        }
        Command::Function(FnCmd::Eval {
            function,
            params,
            strict,
            bits,
            table,
        }) => {
            let f = named_function(*function, params, *strict)?;
            if *table {
                print!("{}", TruthTable::try_from_fn(f.n, |x| (f.eval)(x))?.to_hex());
            } else {
                let x = parse_bits(bits.as_deref().unwrap_or_default())?;
                if x.len() != f.n {
                    bail!("--input has {} bits, the function takes {}", x.len(), f.n);
                }
                println!("{}", (f.eval)(&x)? as u8);
            }
            Ok(true)
        }
    }
}

fn show(r: &EvalResult) -> String {
    match r {
        EvalResult::Bit(b) => (*b as u8).to_string(),
        EvalResult::Probability { value, outcome } => {
            format!("{} {}", format_ratio(value), format!("{outcome:?}").to_lowercase())
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_program(path: &Path) -> Result<BranchingProgram> {
    let p = BranchingProgram::from_bpv1(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))?;
    p.checked().with_context(|| format!("validating {}", path.display()))
}

fn read_protocol(path: &Path) -> Result<AutomataProtocol> {
    AutomataProtocol::from_cpv1(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_rational(flag: &str, s: &str) -> Result<Rational> {
    parse_ratio_strict(s).map_err(|m| anyhow::anyhow!("{flag}: {m}"))
}

/// The given seed or a fresh one; printed to stderr.
fn seed_or_fresh(seed: Option<u64>) -> u64 {
    let seed = seed.unwrap_or_else(rand::random);
    eprintln!("seed: {seed}");
    seed
}

fn scan_mode(cli: &Cli, scan: &ScanArgs, n: usize) -> Result<DiffMode> {
    let exhaustive = match scan.samples {
        Some(_) => false,
        None if n <= cli.exhaustive_limit => true,
        None => {
            eprintln!(
                "warning: n = {n} exceeds the exhaustive limit {}; sampling {DEFAULT_SAMPLES} inputs",
                cli.exhaustive_limit
            );
            false
        }
    };
    if exhaustive {
        return Ok(DiffMode::Exhaustive);
    }
    Ok(DiffMode::Sample {
        samples: scan.samples.unwrap_or(DEFAULT_SAMPLES),
        seed: seed_or_fresh(scan.seed),
    })
}

fn report_diff(verdict: DiffVerdict) -> Result<bool> {
    match verdict {
        DiffVerdict::Equivalent { checked } => {
            println!("equivalent on {checked} inputs");
            Ok(true)
        }
        DiffVerdict::Differ(c) => {
            println!("counterexample {c}");
            Ok(false)
        }
    }
}

fn saf_params(a: &SafArgs) -> Result<SafParameters> {
    let p = if a.relaxed {
        SafParameters::relaxed(a.k, a.w, a.n)?
    } else {
        SafParameters::new(a.k, a.w, a.n)?
    };
    Ok(p.with_mode(if a.strict { StepMode::Strict } else { StepMode::Literal }))
}

fn build(cmd: &BuildCmd) -> Result<bool> {
    let (p, output) = match cmd {
        BuildCmd::Eqs { k, n, relaxed, output } => {
            let params = if *relaxed {
                Eqs::relaxed(*k, *n)?
            } else {
                Eqs::new(*k, *n)?
            };
            (build_eqs(&params)?, output)
        }
        BuildCmd::Saf { params, output } => (build_saf_2kobdd(&saf_params(params)?)?, output),
    };
    emit(output.as_deref(), &p.to_bpv1())?;
    Ok(true)
}

fn validate(path: &Path) -> Result<bool> {
    let parsed = BranchingProgram::from_bpv1(&read_text(path)?);
    let p = match parsed {
        Ok(p) => p,
        Err(e) => {
            println!("invalid: {e}");
            return Ok(false);
        }
    };
    let report = p.validate();
    if report.is_empty() {
        println!("valid");
        Ok(true)
    } else {
        for v in &report.violations {
            match v.level {
                Some(l) => println!("{} (level {l}): {}", v.kind.name(), v.message),
                None => println!("{}: {}", v.kind.name(), v.message),
            }
        }
        Ok(false)
    }
}

fn transform(cmd: &TransformCmd) -> Result<bool> {
    match cmd {
        TransformCmd::Decompose { input, output } => {
            let p = read_program(input)?;
            let d = decompose(&p)?;
            let manifest = d.to_manifest(|j, i| format!("t{j}_l{i}.bp"));
            fs::create_dir_all(output).with_context(|| format!("creating {}", output.display()))?;
            for (name, text) in &manifest.files {
                emit(Some(&output.join(name)), text)?;
            }
            emit(Some(&output.join("manifest.dec")), &manifest.text)?;
            println!("{} traces, {} factor files", d.traces.len(), manifest.files.len());
        }
        TransformCmd::Simulate { input, output } => {
            let p = read_program(input)?;
            let s = simulate_as_nobdd(&p)?;
            emit(output.as_deref(), &s.program.to_bpv1())?;
            if output.is_some() {
                println!(
                    "{} traces, width {} (product width {})",
                    s.traces.len(),
                    s.program.width(),
                    s.construction_width
                );
            }
        }
    }
    Ok(true)
}

fn protocol(cli: &Cli, cmd: &ProtocolCmd) -> Result<bool> {
    match cmd {
        ProtocolCmd::Compile { input, cut, output } => {
            let p = read_program(input)?;
            let partition = kobdd::analysis::Partition::from_order(p.order(), *cut)?;
            emit(output.as_deref(), &compile_protocol(&p, &partition)?.to_cpv1())?;
            Ok(true)
        }
        ProtocolCmd::Run { input, bits } => {
            let r = read_protocol(input)?;
            println!("{}", show(&r.run(&parse_bits(bits)?)?));
            Ok(true)
        }
        ProtocolCmd::Weaken { input, delta, output } => {
            let r = read_protocol(input)?;
            let delta = parse_rational("--delta", delta)?;
            emit(output.as_deref(), &weaken_protocol(&r, &delta)?.to_cpv1())?;
            Ok(true)
        }
        ProtocolCmd::CheckMatrix { input, scan } => {
            let r = read_protocol(input)?;
            let n = r.partition.n();
            let mode = scan_mode(cli, scan, n)?;
            report_diff(diff_fns(
                n,
                mode,
                |x| r.run(x),
                |x| matrix_accept(&protocol_matrices(&r, x)?),
            )?)
        }
    }
}

type Oracle = Box<dyn Fn(&[bool]) -> kobdd::Result<bool> + Sync>;

/// A named function with its arity.
struct NamedFn {
    n: usize,
    eval: Oracle,
}

fn need(value: Option<usize>, flag: &str) -> Result<usize> {
    value.with_context(|| format!("{flag} is required for this function"))
}

fn named_function(name: FnName, params: &FnParams, strict: bool) -> Result<NamedFn> {
    Ok(match name {
        FnName::Eqs => {
            let eqs = Eqs::new(need(params.d, "--d")?, need(params.n, "--n")?)?;
            NamedFn {
                n: eqs.n(),
                eval: Box::new(move |x| eqs.eval(x)),
            }
        }
        FnName::Saf => {
            let args = SafArgs {
                k: need(params.k, "--k")?,
                w: need(params.w, "--w")?,
                n: need(params.n, "--n")?,
                strict,
                relaxed: false,
            };
            let p = saf_params(&args)?;
            NamedFn {
                n: p.n(),
                eval: Box::new(move |x| p.eval(x)),
            }
        }
        FnName::Parity | FnName::And | FnName::Or | FnName::Majority => {
            let n = need(params.n, "--n")?;
            let eval: Oracle = match name {
                FnName::Parity => Box::new(|x| Ok(x.iter().filter(|&&b| b).count() % 2 == 1)),
                FnName::And => Box::new(|x| Ok(x.iter().all(|&b| b))),
                FnName::Or => Box::new(|x| Ok(x.iter().any(|&b| b))),
                _ => Box::new(|x| Ok(2 * x.iter().filter(|&&b| b).count() > x.len())),
            };
            NamedFn { n, eval }
        }
    })
}

fn source_table(source: &FnSource, params: &FnParams) -> Result<(TruthTable, Option<BranchingProgram>)> {
    if let Some(path) = &source.input {
        let p = read_program(path)?;
        return Ok((p.truth_table()?, Some(p)));
    }
    if let Some(path) = &source.table {
        return Ok((TruthTable::from_hex(&read_text(path)?)?, None));
    }
    let f = named_function(source.function.expect("clap enforces one source"), params, false)?;
    Ok((TruthTable::try_from_fn(f.n, |x| (f.eval)(x))?, None))
}

fn bound_class_of(mode: Mode) -> BoundClass {
    match mode {
        Mode::Deterministic => BoundClass::Det,
        Mode::Nondeterministic => BoundClass::Nd,
        Mode::Probabilistic => BoundClass::Prob,
    }
}

fn analyze(cli: &Cli, cmd: &AnalyzeCmd) -> Result<bool> {
    let AnalyzeCmd::Count {
        source,
        params,
        mode,
        samples,
        seed,
        strict_cuts,
        bound,
        bound_k,
        bound_w,
        delta,
    } = cmd;
    let (tt, program) = source_table(source, params)?;
    let range = if *strict_cuts { CutRange::Strict } else { CutRange::All };
    let count_mode = match mode {
        CountModeArg::Exact => CountMode::Exact,
        CountModeArg::Sampled => CountMode::Sampled {
            samples: *samples,
            seed: seed_or_fresh(*seed),
        },
    };
    let report = count_subfunctions_min(&tt, count_mode, range)?;
    let class = bound.or(program.as_ref().map(|p| bound_class_of(p.mode())));
    let column = match class {
        None => None,
        Some(class) => {
            let k = bound_k.or(program.as_ref().map(BranchingProgram::k));
            let w = bound_w.or(program.as_ref().map(BranchingProgram::width));
            let (Some(k), Some(w)) = (k, w) else {
                bail!("--bound needs --bound-k and --bound-w without a program");
            };
            let delta = match delta {
                Some(d) => Some(parse_rational("--delta", d)?),
                None => program.as_ref().and_then(|p| p.delta().cloned()),
            };
            Some(BoundColumn::new(class, k, w, delta)?)
        }
    };
    let mut all_hold = true;
    let rows = report
        .rows
        .iter()
        .map(|r| {
            let cell = column.as_ref().map(|c| c.judge(r.n_theta)).transpose()?;
            if let Some((_, false)) = cell {
                all_hold = false;
            }
            Ok((r, cell))
        })
        .collect::<Result<Vec<_>>>()?;
    report::print_count(cli.format, &report, &rows);
    Ok(all_hold)
}

fn check(cli: &Cli, class: BoundClass, args: &crate::CheckArgs) -> Result<bool> {
    let (count, k, w, program_delta) = match (&args.input, args.count) {
        (Some(path), _) => {
            let p = read_program(path)?;
            let tt = p.truth_table()?;
            let c = count_subfunctions_order(&tt, p.order(), CutRange::All)?;
            (
                c.max,
                args.k.unwrap_or(p.k()),
                args.w.unwrap_or(p.width()),
                p.delta().cloned(),
            )
        }
        (None, Some(count)) => (count, args.k.expect("clap"), args.w.expect("clap"), None),
        (None, None) => bail!("either --file or --count is required"),
    };
    let (bound, verdict) = match class {
        BoundClass::Det => {
            let c = check_bound_det(count, k, w);
            (
                c.bound.to_string(),
                if c.holds { Verdict::Holds } else { Verdict::Violated },
            )
        }
        BoundClass::Nd => {
            let c = check_bound_nondet(count, k, w);
            (
                c.bound.to_string(),
                if c.holds { Verdict::Holds } else { Verdict::Violated },
            )
        }
        BoundClass::Prob => {
            let delta = match &args.delta {
                Some(d) => parse_rational("--delta", d)?,
                None => program_delta.context("--delta is required")?,
            };
            let constants = match (&args.c1, &args.c2) {
                (Some(c1), Some(c2)) => ProbConstants::User {
                    c1: parse_rational("--c1", c1)?,
                    c2: parse_rational("--c2", c2)?,
                },
                _ => ProbConstants::Explicit,
            };
            let c = check_bound_prob(count, k, w, &delta, &constants)?;
            (format!("2^{:.4}", c.log2_bound_approx()), c.verdict)
        }
    };
    let word = report::verdict_word(verdict);
    match cli.format {
        Format::Text => println!("N={count} k={k} w={w} bound={bound} {word}"),
        Format::Csv => println!("count,k,w,bound,verdict\n{count},{k},{w},{bound},{word}"),
    }
    Ok(verdict == Verdict::Holds)
}
