use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use qsynd::code::{css_validate, degree_summary, hgp_rep3, lifted_product, lp_tanner, tanner_base, CssCode};
use qsynd::decoder::{decode_traced, prior_llrs, DecoderConfig, DecoderMode, PriorMode, TRACE_CSV_HEADER};
use qsynd::gf2::io::{read_alist, write_alist};
use qsynd::harness::{classify, run_experiment, write_csv, ExperimentConfig, PreparedCode};
use qsynd::noise::{
    observe_syndrome, sample_depolarizing, write_observation_csv, OBSERVATION_CSV_HEADER,
};
use qsynd::{BitVector, PauliErrorVector, QcBaseMatrix};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "qsynd", version, about = "Soft-syndrome min-sum decoding of quantum LDPC codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a lifted-product code and write its stabilizer matrices as alist files.
    BuildCode(BuildCodeArgs),
    /// Check a CSS code and print its parameters and degree profile.
    Validate(CodeArgs),
    /// Decode a single error instance on both sides and classify the outcome.
    DecodeOne(DecodeOneArgs),
    /// Run a Monte-Carlo sweep from a JSON config and write the results as CSV.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct BuildCodeArgs {
    /// Use the built-in Tanner base for both factors.
    #[arg(long, conflicts_with_all = ["base_a", "base_b"])]
    tanner: bool,
    /// First base matrix (JSON).
    #[arg(long, requires = "base_b")]
    base_a: Option<PathBuf>,
    /// Second base matrix (JSON).
    #[arg(long, requires = "base_a")]
    base_b: Option<PathBuf>,
    /// Output directory for `hx.alist` and `hz.alist`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Clone)]
struct CodeArgs {
    /// Built-in code: `lp_tanner` or `hgp_rep3`.
    #[arg(long)]
    builtin: Option<String>,
    /// Lifted product of the Tanner base with itself.
    #[arg(long)]
    tanner: bool,
    #[arg(long, requires = "base_b")]
    base_a: Option<PathBuf>,
    #[arg(long, requires = "base_a")]
    base_b: Option<PathBuf>,
    /// H_X in alist form.
    #[arg(long, requires = "hz")]
    hx: Option<PathBuf>,
    /// H_Z in alist form.
    #[arg(long, requires = "hx")]
    hz: Option<PathBuf>,
}

impl CodeArgs {
    fn build(&self) -> Result<CssCode> {
        let sources = [
            self.builtin.is_some(),
            self.tanner,
            self.base_a.is_some(),
            self.hx.is_some(),
        ];
        if sources.iter().filter(|&&s| s).count() != 1 {
            bail!("give exactly one of --builtin, --tanner, --base-a/--base-b, --hx/--hz");
        }
        if let Some(name) = &self.builtin {
            return match name.as_str() {
                "lp_tanner" => Ok(lp_tanner()),
                "hgp_rep3" => Ok(hgp_rep3()),
                other => bail!("unknown builtin code {other:?}"),
            };
        }
        if self.tanner {
            return Ok(lp_tanner());
        }
        if let (Some(a), Some(b)) = (&self.base_a, &self.base_b) {
            return Ok(lifted_product(&read_base(a)?, &read_base(b)?)?);
        }
        let (hx, hz) = (self.hx.as_ref().unwrap(), self.hz.as_ref().unwrap());
        let h_x = read_alist(hx).with_context(|| format!("reading {}", hx.display()))?;
        let h_z = read_alist(hz).with_context(|| format!("reading {}", hz.display()))?;
        let name = hx.file_stem().map_or("alist".into(), |s| s.to_string_lossy().into_owned());
        Ok(CssCode::new(name, h_x, h_z)?)
    }
}

fn read_base(path: &Path) -> Result<QcBaseMatrix> {
    QcBaseMatrix::read(path).with_context(|| format!("reading base matrix {}", path.display()))
}

#[derive(Args)]
struct DecoderArgs {
    #[arg(long, default_value = "soft")]
    mode: DecoderMode,
    #[arg(long, default_value_t = 0.75)]
    beta: f64,
    #[arg(long, default_value_t = 5.0)]
    gamma_cutoff: f64,
    #[arg(long, default_value_t = 100)]
    l_max: usize,
    #[arg(long, default_value_t = qsynd::noise::DEFAULT_LLR_SAT)]
    llr_sat: f64,
    /// Prior flip probability: `marginal` (2p/3) or `bernoulli` (p).
    #[arg(long, default_value = "marginal")]
    prior: String,
    /// Soft check updates read the evolving syndrome beliefs.
    #[arg(long)]
    evolving_check_inputs: bool,
}

impl DecoderArgs {
    fn config(&self) -> Result<DecoderConfig> {
        let prior_mode = match self.prior.as_str() {
            "marginal" | "depolarizing_marginal" => PriorMode::DepolarizingMarginal,
            "bernoulli" => PriorMode::Bernoulli,
            other => bail!("unknown prior {other:?}"),
        };
        let cfg = DecoderConfig {
            mode: self.mode,
            beta: self.beta,
            gamma_cutoff: self.gamma_cutoff,
            l_max: self.l_max,
            llr_sat: self.llr_sat,
            prior_mode,
            evolving_check_inputs: self.evolving_check_inputs,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct DecodeOneArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// File holding the error as a Pauli string over I, X, Y, Z.
    #[arg(long, conflicts_with = "weight")]
    error: Option<PathBuf>,
    /// Sample a uniformly placed error of this weight with random X/Y/Z types.
    #[arg(long)]
    weight: Option<usize>,
    /// Seed for error sampling and syndrome noise.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Depolarizing probability for the prior, and for sampling when no error is given.
    #[arg(long, default_value_t = 0.05)]
    p: f64,
    #[arg(long, default_value_t = 0.0)]
    sigma: f64,
    #[command(flatten)]
    decoder: DecoderArgs,
    /// Write per-iteration edge messages as CSV.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Write the noisy syndrome observations as CSV.
    #[arg(long)]
    dump_noise: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Overrides the config's master seed.
    #[arg(long, env = "QSYND_SEED")]
    seed: Option<u64>,
}

fn build_code(args: &BuildCodeArgs) -> Result<ExitCode> {
    let code = if args.tanner {
        let t = tanner_base();
        lifted_product(&t, &t)?
    } else {
        match (&args.base_a, &args.base_b) {
            (Some(a), Some(b)) => lifted_product(&read_base(a)?, &read_base(b)?)?,
            _ => bail!("give --tanner or both --base-a and --base-b"),
        }
    };
    let report = css_validate(&code);
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    write_alist(args.out.join("hx.alist"), &code.h_x)?;
    write_alist(args.out.join("hz.alist"), &code.h_z)?;
    println!(
        "n={} k={} css={}",
        report.n,
        report.k,
        if report.passed() { "ok" } else { "fail" }
    );
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn validate(args: &CodeArgs) -> Result<ExitCode> {
    let code = args.build()?;
    let r = css_validate(&code);
    println!("code={}", code.name);
    println!("n={} k={} rank_x={} rank_z={}", r.n, r.k, r.rank_x, r.rank_z);
    println!(
        "h_x: {}x{} row_degree={} col_degree={}",
        code.h_x.rows(),
        code.h_x.cols(),
        degree_summary(&r.hx_row_degrees),
        degree_summary(&r.hx_col_degrees)
    );
    println!(
        "h_z: {}x{} row_degree={} col_degree={}",
        code.h_z.rows(),
        code.h_z.cols(),
        degree_summary(&r.hz_row_degrees),
        degree_summary(&r.hz_col_degrees)
    );
    if r.passed() {
        println!("css=ok");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("css=fail offending_pairs={}", r.offending_pairs.len());
        for (i, j) in r.offending_pairs.iter().take(20) {
            println!("  x_row={i} z_row={j}");
        }
        Ok(ExitCode::FAILURE)
    }
}

fn random_weight_error(n: usize, weight: usize, rng: &mut ChaCha8Rng) -> Result<PauliErrorVector> {
    if weight > n {
        bail!("error weight {weight} exceeds n = {n}");
    }
    let mut e = PauliErrorVector::identity(n);
    for j in sample(rng, n, weight) {
        match rng.random_range(0..3) {
            0 => e.e_x.set(j, true),
            1 => e.e_z.set(j, true),
            _ => {
                e.e_x.set(j, true);
                e.e_z.set(j, true);
            }
        }
    }
    Ok(e)
}

fn support_list(v: &BitVector) -> String {
    let s: Vec<String> = v.iter_ones().map(|j| j.to_string()).collect();
    if s.is_empty() {
        "-".into()
    } else {
        s.join(",")
    }
}

fn write_prefixed(out: &mut impl Write, prefix: &str, csv: &[u8]) -> Result<()> {
    for line in String::from_utf8_lossy(csv).lines() {
        writeln!(out, "{prefix},{line}")?;
    }
    Ok(())
}

fn decode_one(args: &DecodeOneArgs) -> Result<ExitCode> {
    let config = args.decoder.config()?;
    let noise = qsynd::NoiseParams::new(args.p, args.sigma)?;
    let prepared = PreparedCode::new(args.code.build()?);
    let n = prepared.code.n;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let error = match (&args.error, args.weight) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            PauliErrorVector::from_pauli_string(&text)?
        }
        (None, Some(w)) => random_weight_error(n, w, &mut rng)?,
        (None, None) => sample_depolarizing(n, noise.p, &mut rng),
    };
    if error.n() != n {
        bail!("error has {} qubits but the code has n = {n}", error.n());
    }
    let sigma = if config.mode == DecoderMode::Perfect { 0.0 } else { noise.sigma };
    let s_x = prepared.x_graph.syndrome(&error.e_x);
    let s_z = prepared.z_graph.syndrome(&error.e_z);
    let obs_x = observe_syndrome::<f64, _>(&s_x, sigma, config.llr_sat, &mut rng);
    let obs_z = observe_syndrome::<f64, _>(&s_z, sigma, config.llr_sat, &mut rng);
    if let Some(path) = &args.dump_noise {
        let mut out = BufWriter::new(fs::File::create(path)?);
        writeln!(out, "side,{OBSERVATION_CSV_HEADER}")?;
        for (side, obs) in [("x", &obs_x), ("z", &obs_z)] {
            let mut buf = Vec::new();
            write_observation_csv(&mut buf, 0, obs)?;
            write_prefixed(&mut out, side, &buf)?;
        }
    }
    let prior: Vec<f64> = prior_llrs(n, noise.p, config.prior_mode, config.llr_sat);
    let mut trace_x = Vec::new();
    let mut trace_z = Vec::new();
    let tracing = args.trace.is_some();
    let rx = decode_traced(
        &prepared.x_graph,
        &prior,
        &obs_x,
        &config,
        tracing.then_some(&mut trace_x as &mut dyn Write),
    )?;
    let rz = decode_traced(
        &prepared.z_graph,
        &prior,
        &obs_z,
        &config,
        tracing.then_some(&mut trace_z as &mut dyn Write),
    )?;
    if let Some(path) = &args.trace {
        let mut out = BufWriter::new(fs::File::create(path)?);
        writeln!(out, "side,{TRACE_CSV_HEADER}")?;
        write_prefixed(&mut out, "x", &trace_x)?;
        write_prefixed(&mut out, "z", &trace_z)?;
    }
    let class = classify(&prepared, &error, &rx.x_hat, &rz.x_hat)?;
    println!("code={} n={n} mode={} sigma={sigma}", prepared.code.name, config.mode);
    println!("error_weight={}", error.weight());
    println!("x_hat_x={}", support_list(&rx.x_hat));
    println!("x_hat_z={}", support_list(&rz.x_hat));
    println!("converged_x={} iterations_x={}", rx.converged, rx.iterations);
    println!("converged_z={} iterations_z={}", rz.converged, rz.iterations);
    println!("classification={class}");
    Ok(ExitCode::SUCCESS)
}

fn sweep(args: &SweepArgs) -> Result<ExitCode> {
    let mut config = ExperimentConfig::read(&args.config)
        .with_context(|| format!("loading {}", args.config.display()))?;
    if let Some(seed) = args.seed {
        config.master_seed = seed;
    }
    let base_dir = args.config.parent().unwrap_or(Path::new("."));
    let code = config.build_code(base_dir)?;
    let prepared = PreparedCode::new(code);
    eprintln!(
        "code={} n={} k={} grid={} points",
        prepared.code.name,
        prepared.code.n,
        prepared.code.k,
        config.p_grid.len() * config.sigma_grid.len() * config.modes.len()
    );
    let rows = run_experiment::<f64>(&config, &prepared, args.workers, &mut |pr| {
        eprintln!(
            "mode={} p={} sigma={} trials={} logical_errors={} ler={:.3e}",
            pr.mode,
            pr.p,
            pr.sigma,
            pr.trials,
            pr.logical_errors,
            pr.logical_errors as f64 / pr.trials.max(1) as f64
        );
    })?;
    let mut out = BufWriter::new(
        fs::File::create(&args.out).with_context(|| format!("creating {}", args.out.display()))?,
    );
    write_csv(&mut out, &rows)?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::BuildCode(a) => build_code(a),
        Command::Validate(a) => validate(a),
        Command::DecodeOne(a) => decode_one(a),
        Command::Sweep(a) => sweep(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
