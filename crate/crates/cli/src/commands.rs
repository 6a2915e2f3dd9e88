//! Subcommand implementations.

use crate::io::{load_graph, render_graph, save_graph, GraphFormat};
use crate::render;
use crate::{BackendArg, BaseArg, BenchArgs, EpsArg, FormatArg, GenArgs, HuntArgs, KindArg, RunFlags, TestArgs};

use isoperturb::engine::{self, EngineConfig, EpsMode, Outcome, RejectReason, Verdict};
use isoperturb::graph::{generate, generate_permuted_pair, rewire, GraphKind, Permutation};
use isoperturb::oracle;
use isoperturb::run;

use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

type CmdResult = Result<ExitCode, Box<dyn Error>>;

fn engine_config(flags: &RunFlags) -> EngineConfig {
    EngineConfig {
        backend: match flags.backend {
            BackendArg::Exact => engine::BackendKind::Exact,
            BackendArg::Bigfloat => engine::BackendKind::BigFloat,
        },
        eps_mode: match flags.eps {
            EpsArg::Adaptive => EpsMode::Adaptive,
            EpsArg::Paper => EpsMode::TenthStep,
        },
        mantissa_bits: flags.mantissa_bits,
        sweep_policy: engine::SweepPolicy::Auto,
    }
}

fn write_output(flags: &RunFlags, content: &str) -> Result<(), Box<dyn Error>> {
    match &flags.out {
        Some(path) => {
            fs::write(path, content)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn outcome_exit(outcome: &Outcome) -> ExitCode {
    if outcome.is_isomorphic() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

pub fn run_test(args: &TestArgs, trace: bool) -> CmdResult {
    let ga = load_graph(&args.file_a)?;
    let gb = load_graph(&args.file_b)?;
    let cfg = engine_config(&args.flags);
    let outcome = run(&ga, &gb, &cfg)?;
    let content = match (args.flags.format, trace) {
        (FormatArg::JsonLines, _) => render::json_lines(&outcome, args.flags.timings),
        (FormatArg::Human, false) => render::human_summary(&outcome),
        (FormatArg::Human, true) => render::human_trace(&outcome),
    };
    write_output(&args.flags, &content)?;
    Ok(outcome_exit(&outcome))
}

fn base_kind(args: &GenArgs, base: BaseArg) -> Result<GraphKind, String> {
    match base {
        BaseArg::Complete => {
            let n = args.n.ok_or("--n is required for complete graphs")?;
            Ok(GraphKind::Complete { n })
        }
        BaseArg::Gnp => {
            let n = args.n.ok_or("--n is required for gnp graphs")?;
            Ok(GraphKind::Gnp {
                n,
                prob: args.prob.unwrap_or(0.5),
            })
        }
        BaseArg::Torus => {
            let rows = args.rows.ok_or("--rows is required for torus graphs")?;
            let cols = args.cols.ok_or("--cols is required for torus graphs")?;
            Ok(GraphKind::Torus { rows, cols })
        }
    }
}

/// Splits a pair prefix into (stem, extension), defaulting to .el.
fn pair_paths(prefix: &Path) -> (PathBuf, String) {
    match prefix.extension().and_then(|e| e.to_str()) {
        Some(ext @ ("el" | "g6")) => (prefix.with_extension(""), ext.to_string()),
        _ => (prefix.to_path_buf(), "el".to_string()),
    }
}

pub fn run_gen(args: &GenArgs) -> CmdResult {
    match args.kind {
        KindArg::Complete | KindArg::Gnp | KindArg::Torus => {
            let base = match args.kind {
                KindArg::Complete => BaseArg::Complete,
                KindArg::Gnp => BaseArg::Gnp,
                _ => BaseArg::Torus,
            };
            let kind = base_kind(args, base)?;
            let g = generate(&kind, args.seed)?;
            match &args.out {
                Some(path) => save_graph(&g, path)?,
                None => print!("{}", render_graph(&g, GraphFormat::EdgeList)),
            }
            Ok(ExitCode::SUCCESS)
        }
        KindArg::Pair => {
            let kind = base_kind(args, args.base)?;
            let (g, h, p) = generate_permuted_pair(&kind, args.seed)?;
            let prefix = args
                .out
                .as_ref()
                .ok_or("--out PREFIX is required for --kind pair")?;
            let (stem, ext) = pair_paths(prefix);
            let path_a = stem.with_extension(format!("a.{ext}"));
            let path_b = stem.with_extension(format!("b.{ext}"));
            save_graph(&g, &path_a)?;
            save_graph(&h, &path_b)?;
            println!("wrote {} and {}", path_a.display(), path_b.display());
            println!("mapping: {p}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn hunt_family(family: BaseArg, n: u32, prob: f64) -> Result<GraphKind, String> {
    match family {
        BaseArg::Complete => Ok(GraphKind::Complete { n }),
        BaseArg::Gnp => Ok(GraphKind::Gnp { n, prob }),
        BaseArg::Torus => {
            let side = (n as f64).sqrt() as u32;
            if side * side != n || side < 3 {
                return Err(format!(
                    "torus family needs a perfect-square vertex count >= 9, got {n}"
                ));
            }
            Ok(GraphKind::Torus {
                rows: side,
                cols: side,
            })
        }
    }
}

pub fn run_hunt(args: &HuntArgs) -> CmdResult {
    if args.n > 10 {
        return Err("oracle cap is 10 vertices; use --n 10 or smaller".into());
    }
    let cfg = engine_config(&args.flags);
    let mut both_iso = 0u32;
    let mut both_not = 0u32;
    let mut counterexamples = 0u32;
    let mut demotions = 0u32;
    let mut false_positives = 0u32;
    let mut dumped: Vec<PathBuf> = Vec::new();

    for i in 0..args.count {
        let pair_seed = args.seed.wrapping_add(i as u64);
        let kind = hunt_family(args.family, args.n, 0.5)?;
        let (ga, gb) = if i % 2 == 0 {
            let (g, h, _) = generate_permuted_pair(&kind, pair_seed)?;
            (g, h)
        } else {
            let g = generate(&kind, pair_seed)?;
            let h = rewire(&g, pair_seed ^ 0xdead_beef, 2);
            let p = Permutation::random(g.vertex_count(), pair_seed ^ 0x5ee5);
            (g, h.permute(&p).expect("sizes match"))
        };

        let engine_outcome = run(&ga, &gb, &cfg)?;
        let oracle_perm = oracle::brute_force_iso(&ga, &gb);

        match (engine_outcome.is_isomorphic(), oracle_perm.is_some()) {
            (true, true) => both_iso += 1,
            (false, false) => both_not += 1,
            (true, false) => false_positives += 1,
            (false, true) => {
                let demoted = matches!(
                    engine_outcome.verdict,
                    Verdict::NotIsomorphicOrUnreconstructible {
                        reason: RejectReason::MappingVerificationFailed,
                        ..
                    }
                );
                if demoted {
                    demotions += 1;
                } else {
                    counterexamples += 1;
                }
                fs::create_dir_all(&args.dump_dir)?;
                let path_a = args.dump_dir.join(format!("counterexample_{i}_a.el"));
                let path_b = args.dump_dir.join(format!("counterexample_{i}_b.el"));
                save_graph(&ga, &path_a)?;
                save_graph(&gb, &path_b)?;
                dumped.push(path_a);
                dumped.push(path_b);
            }
        }
    }

    let disagreements = counterexamples + demotions + false_positives;
    let report = format!(
        "pairs: {}\nagree isomorphic: {both_iso}\nagree non-isomorphic: {both_not}\n\
         reconstructibility counterexamples: {counterexamples}\n\
         internal demotions (verification gate): {demotions}\n\
         false positives: {false_positives}\n",
        args.count
    );
    write_output(&args.flags, &report)?;
    for p in &dumped {
        eprintln!("dumped {}", p.display());
    }
    Ok(if disagreements == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

pub fn run_bench(args: &BenchArgs) -> CmdResult {
    let cfg = engine_config(&args.flags);
    let mut csv = String::from(
        "family,n,seed,backend,verdict,verified,n0_iterations,avg_sweeps_per_solve,wall_ms\n",
    );
    for &n in &args.sizes {
        let kind = hunt_family(args.family, n, 0.5)?;
        let (ga, gb, _) = generate_permuted_pair(&kind, args.seed)?;
        let t0 = Instant::now();
        let outcome = run(&ga, &gb, &cfg)?;
        let wall_ms = t0.elapsed().as_millis();
        let verdict = if outcome.is_isomorphic() { "iso" } else { "not" };
        let verified = outcome
            .mapping()
            .map(|p| engine::verify_mapping(&ga, &gb, &p))
            .unwrap_or(false);
        let n0 = outcome.iterations.len();
        let avg_sweeps = if n0 == 0 {
            0.0
        } else {
            outcome.iterations.iter().map(|it| it.sweeps as f64).sum::<f64>() / n0 as f64
        };
        let family = match args.family {
            BaseArg::Complete => "complete",
            BaseArg::Gnp => "gnp",
            BaseArg::Torus => "torus",
        };
        let backend = match args.flags.backend {
            BackendArg::Exact => "exact",
            BackendArg::Bigfloat => "bigfloat",
        };
        csv.push_str(&format!(
            "{family},{n},{},{backend},{verdict},{verified},{n0},{avg_sweeps:.1},{wall_ms}\n",
            args.seed
        ));
    }
    write_output(&args.flags, &csv)?;
    Ok(ExitCode::SUCCESS)
}
