//! Command-line front end: check threadability, plan and export motions,
//! generate chains, and run the sampled 3D check.
//!
//! Exit codes: 0 threadable / output written, 1 not threadable (witness on
//! stdout as edge index plus exact rational parameter), 2 invalid input,
//! 3 internal error (including oracle disagreement under --oracle).
//! Diagnostics go to standard error; results to standard output.

use clap::{Parser, Subcommand};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use threadkit::io::{parse_chain, write_atomic, write_chain, AnyChain, DocError};
use threadkit::{
    decide, decide3_sampled, export_frames_json, export_svg_frames, format_scalar, gen_fan,
    gen_monotone, gen_random_simple, growing_pass, lift, oracle_decide, plan, rotation_cost,
    Chain2, Chain3, ChainParam, MotionPlan, PassDirection, Verdict,
};

const EXIT_OK: u8 = 0;
const EXIT_NOT_THREADABLE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "threadkit",
    version,
    about = "Decide whether an open polygonal chain threads through a point-hole, \
             and synthesize the motion"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide threadability of one or more 2D chain files (checked
    /// concurrently; exit code is the worst over all files).
    Check {
        /// Chain documents to check.
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Re-run the quadratic reference decision and fail (exit 3) on any
        /// disagreement with the fast one.
        #[arg(long)]
        oracle: bool,
        /// Print growing-pass event counts per file.
        #[arg(long)]
        events: bool,
        /// Write the threadability certificate (per-interval anchors and
        /// normal arcs) as JSON. Single file only.
        #[arg(long, value_name = "OUT")]
        certificate: Option<PathBuf>,
    },
    /// Plan the threading motion of a 2D chain and export frames.
    Plan {
        file: PathBuf,
        /// Number of frames to export.
        #[arg(long, default_value_t = 24)]
        frames: usize,
        /// Directory for per-frame SVG snapshots.
        #[arg(long, value_name = "DIR")]
        svg: Option<PathBuf>,
        /// Path for the JSON frame set.
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Generate example chains (THREADKIT_SEED overrides any --seed).
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
    /// Sampled threadability check of a 3D chain (2D files are lifted to
    /// z = 0). A failure is a proof; success is evidence at the samples.
    Check3d {
        file: PathBuf,
        /// Interior samples per edge, in addition to every vertex.
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Total rotation cost of the planned motion, in radians.
    Cost { file: PathBuf },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Strictly y-monotone random chain (always threadable).
    Monotone {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Fan of spikes alternating between two radii.
    Fan {
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, default_value_t = 1.0)]
        r_inner: f64,
        #[arg(long, default_value_t = 10.0)]
        r_outer: f64,
        #[arg(long, default_value_t = std::f64::consts::PI / 40.0)]
        delta: f64,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Uniform random simple chain.
    Random {
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("threadkit: {e:#}");
            classify(&e)
        }
    };
    ExitCode::from(code)
}

/// Maps error chains to the documented exit codes: anything rooted in bad
/// input is 2, the rest is 3.
fn classify(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(doc) = cause.downcast_ref::<DocError>() {
            return match doc {
                DocError::Io(_) | DocError::Schema(_) | DocError::Validation(_) => EXIT_INVALID,
            };
        }
        if cause.downcast_ref::<threadkit::GenError>().is_some() {
            return EXIT_INVALID;
        }
        if cause.downcast_ref::<Disagreement>().is_some() {
            return EXIT_INTERNAL;
        }
    }
    EXIT_INTERNAL
}

#[derive(Debug, thiserror::Error)]
#[error("oracle disagreement: {0}")]
struct Disagreement(String);

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.cmd {
        Cmd::Check {
            files,
            oracle,
            events,
            certificate,
        } => check_cmd(&files, oracle, events, certificate.as_deref()),
        Cmd::Plan {
            file,
            frames,
            svg,
            json,
        } => plan_cmd(&file, frames, svg.as_deref(), json.as_deref()),
        Cmd::Gen { what } => gen_cmd(what),
        Cmd::Check3d { file, samples } => check3d_cmd(&file, samples),
        Cmd::Cost { file } => cost_cmd(&file),
    }
}

fn load_chain2(path: &Path) -> anyhow::Result<Chain2> {
    match parse_chain(path).map_err(|e| anyhow::Error::new(e).context(path.display().to_string()))?
    {
        AnyChain::Planar(c) => Ok(c),
        AnyChain::Spatial(_) => Err(anyhow::Error::new(DocError::Schema(
            "this command needs a 2-dimensional chain".into(),
        ))
        .context(path.display().to_string())),
    }
}

fn load_chain3(path: &Path) -> anyhow::Result<Chain3> {
    match parse_chain(path).map_err(|e| anyhow::Error::new(e).context(path.display().to_string()))?
    {
        AnyChain::Planar(c) => Ok(lift(&c)),
        AnyChain::Spatial(c) => Ok(c),
    }
}

fn witness_line(v: &Verdict) -> String {
    match &v.witness {
        Some(w) => format!(
            "not threadable; first failure at edge {}, t={}",
            w.param.edge,
            format_scalar(&w.param.t)
        ),
        None => "not threadable".to_string(),
    }
}

fn check_one(path: &Path, oracle: bool, events: bool) -> anyhow::Result<(String, u8)> {
    let c = load_chain2(path)?;
    let v = decide(&c);
    let mut out = String::new();
    let code = if v.threadable {
        let _ = writeln!(out, "{}: threadable", path.display());
        EXIT_OK
    } else {
        let _ = writeln!(out, "{}: {}", path.display(), witness_line(&v));
        EXIT_NOT_THREADABLE
    };
    if oracle {
        let o = oracle_decide(&c);
        if o.threadable != v.threadable {
            return Err(anyhow::Error::new(Disagreement(format!(
                "{}: fast={} oracle={}",
                path.display(),
                witness_line(&v),
                witness_line(&o)
            ))));
        }
        let _ = writeln!(out, "{}: oracle agrees", path.display());
    }
    if events {
        let fwd = growing_pass(&c, PassDirection::Forward);
        let bwd = growing_pass(&c, PassDirection::Backward);
        let _ = writeln!(
            out,
            "{}: events forward={} backward={}",
            path.display(),
            fwd.events.len(),
            bwd.events.len()
        );
    }
    Ok((out, code))
}

fn check_cmd(
    files: &[PathBuf],
    oracle: bool,
    events: bool,
    certificate: Option<&Path>,
) -> anyhow::Result<u8> {
    if certificate.is_some() && files.len() != 1 {
        anyhow::bail!("--certificate needs exactly one input file");
    }
    let mut results: Vec<anyhow::Result<(String, u8)>> = Vec::with_capacity(files.len());
    std::thread::scope(|s| {
        let handles: Vec<_> = files
            .iter()
            .map(|f| s.spawn(move || check_one(f, oracle, events)))
            .collect();
        for h in handles {
            results.push(h.join().expect("checker thread panicked"));
        }
    });
    let mut code = EXIT_OK;
    for r in results {
        let (out, c) = r?;
        print!("{out}");
        code = code.max(c);
    }
    if let Some(cert_path) = certificate {
        let c = load_chain2(&files[0])?;
        let v = decide(&c);
        write_atomic(cert_path, certificate_json(&v).as_bytes())
            .map_err(|e| anyhow::Error::new(e).context("writing certificate"))?;
        eprintln!("certificate written to {}", cert_path.display());
    }
    Ok(code)
}

fn param_json(p: &ChainParam) -> String {
    format!(
        "{{\"edge\": {}, \"t\": \"{}\"}}",
        p.edge,
        format_scalar(&p.t)
    )
}

/// Certificate as JSON: per interval the parameter range, the hull anchor
/// vertices its butterfly construction rests on, and the admissible normal
/// arcs at both ends (exact rational direction components).
fn certificate_json(v: &Verdict) -> String {
    let mut out = String::new();
    out.push_str("{\n  \"schema\": \"threadkit/certificate-v1\",\n");
    let _ = writeln!(out, "  \"threadable\": {},", v.threadable);
    match &v.certificate {
        None => out.push_str("  \"intervals\": []\n"),
        Some(ivs) => {
            out.push_str("  \"intervals\": [\n");
            let rows: Vec<String> = ivs
                .iter()
                .map(|iv| {
                    let arc = |a: &threadkit::NormalArc| {
                        format!(
                            "{{\"lo\": [\"{}\", \"{}\"], \"hi\": [\"{}\", \"{}\"]}}",
                            format_scalar(&a.lo().dx),
                            format_scalar(&a.lo().dy),
                            format_scalar(&a.hi().dx),
                            format_scalar(&a.hi().dy)
                        )
                    };
                    format!(
                        "    {{\"lo\": {}, \"hi\": {}, \"prefix_anchors\": [{}, {}], \"suffix_anchors\": [{}, {}], \"arc_lo\": {}, \"arc_hi\": {}}}",
                        param_json(&iv.lo),
                        param_json(&iv.hi),
                        iv.prefix.0,
                        iv.prefix.1,
                        iv.suffix.0,
                        iv.suffix.1,
                        arc(&iv.arc_lo),
                        arc(&iv.arc_hi)
                    )
                })
                .collect();
            out.push_str(&rows.join(",\n"));
            out.push_str("\n  ]\n");
        }
    }
    out.push_str("}\n");
    out
}

fn plan_for(path: &Path) -> anyhow::Result<(Chain2, Option<MotionPlan>)> {
    let c = load_chain2(path)?;
    match plan(&c) {
        Ok(p) => Ok((c, Some(p))),
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            Ok((c, None))
        }
    }
}

fn plan_cmd(
    file: &Path,
    frames: usize,
    svg: Option<&Path>,
    json: Option<&Path>,
) -> anyhow::Result<u8> {
    if svg.is_none() && json.is_none() {
        anyhow::bail!("plan needs --svg DIR or --json OUT (or both)");
    }
    if frames == 0 {
        anyhow::bail!("--frames must be at least 1");
    }
    let (_, p) = plan_for(file)?;
    let Some(p) = p else {
        return Ok(EXIT_NOT_THREADABLE);
    };
    if let Some(dir) = svg {
        let paths = export_svg_frames(&p, frames, dir)
            .map_err(|e| anyhow::Error::new(e).context("exporting SVG frames"))?;
        println!("wrote {} SVG frames to {}", paths.len(), dir.display());
    }
    if let Some(out) = json {
        export_frames_json(&p, frames, out)
            .map_err(|e| anyhow::Error::new(e).context("exporting JSON frames"))?;
        println!("wrote {frames} frames to {}", out.display());
    }
    Ok(EXIT_OK)
}

/// THREADKIT_SEED, when set, overrides any seed given on the command line.
fn effective_seed(cli_seed: u64) -> anyhow::Result<u64> {
    match std::env::var("THREADKIT_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| anyhow::anyhow!("THREADKIT_SEED must be an integer, got {s:?}")),
        Err(_) => Ok(cli_seed),
    }
}

fn gen_cmd(what: GenCmd) -> anyhow::Result<u8> {
    let (chain, name, out) = match what {
        GenCmd::Monotone { n, seed, out } => {
            let seed = effective_seed(seed)?;
            (
                gen_monotone(n, seed)?,
                format!("monotone-n{n}-s{seed}"),
                out,
            )
        }
        GenCmd::Fan {
            k,
            r_inner,
            r_outer,
            delta,
            out,
        } => (
            gen_fan(k, r_inner, r_outer, delta)?,
            format!("fan-k{k}"),
            out,
        ),
        GenCmd::Random { n, seed, out } => {
            let seed = effective_seed(seed)?;
            (
                gen_random_simple(n, seed)?,
                format!("random-n{n}-s{seed}"),
                out,
            )
        }
    };
    write_chain(&AnyChain::Planar(chain), Some(&name), &out)
        .map_err(|e| anyhow::Error::new(e).context("writing generated chain"))?;
    println!("wrote {name} to {}", out.display());
    Ok(EXIT_OK)
}

fn check3d_cmd(file: &Path, samples: usize) -> anyhow::Result<u8> {
    if samples == 0 {
        anyhow::bail!("--samples must be at least 1");
    }
    let c = load_chain3(file)?;
    let v = decide3_sampled(&c, samples);
    if v.threadable_at_samples {
        println!(
            "{}: threadable at all {} checked parameters (sampled check: evidence, not proof)",
            file.display(),
            v.checked_params.len()
        );
        Ok(EXIT_OK)
    } else {
        let w = v.witness.expect("failing sampled check carries a witness");
        println!(
            "{}: not threadable; empty butterfly at edge {}, t={}",
            file.display(),
            w.edge,
            format_scalar(&w.t)
        );
        Ok(EXIT_NOT_THREADABLE)
    }
}

fn cost_cmd(file: &Path) -> anyhow::Result<u8> {
    let (_, p) = plan_for(file)?;
    let Some(p) = p else {
        return Ok(EXIT_NOT_THREADABLE);
    };
    println!("total rotation: {:.9} rad", rotation_cost(&p, 64));
    Ok(EXIT_OK)
}
