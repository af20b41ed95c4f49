//! Command-line surface for the network convolutional code toolkit.
//!
//! Exit codes: 0 on success, 1 when an input fails validation (bad network
//! structure, singular matrices, unusable codes), 2 on usage errors
//! (unparseable arguments, malformed JSON or polynomial text).

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use cnecc::convcode::{free_distance, slope, slope_bound_check, CodeError, ConvCode};
use cnecc::gf2::BinMatrix;
use cnecc::network::{self, Network, NetworkCode, NetworkError};
use cnecc::sim::{LaneSpec, SimConfig, SimError, Simulator};
use cnecc::spectrum::{
    compute_spectrum, dominance_curves, empirical_threshold, exact_dist, proposition_threshold,
    Side, SpectrumError,
};
use cnecc::transfer::{ber_bound, TransferError};

#[derive(Parser)]
#[command(name = "cnecc", version, about = "Convolutional codes over binary network-coded channels: analysis, bounds, and simulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Input,
    Output,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Input => Side::Input,
            SideArg::Output => Side::Output,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SidesArg {
    Input,
    Output,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the builtin 9-edge butterfly network with its binary network code as JSON
    Butterfly {
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print transfer matrices and validation diagnostics for a network ("-" reads stdin)
    NetInfo {
        net: String,
        #[arg(long)]
        json: bool,
    },
    /// Structural metrics of a generator matrix: degrees, free distance, slope
    CodeAnalyze {
        /// Rows of ascending coefficient lists, e.g. "[[[1,1,1],[1,0,1]]]"
        code: String,
        #[arg(long)]
        json: bool,
    },
    /// Tabulate how many weight-i edge errors produce each sink error
    ErrorSpectrum {
        net: String,
        #[arg(long)]
        sink: String,
        /// Enumerate error vectors up to this weight (default: all weights)
        #[arg(long)]
        max_weight: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Single-edge dominance thresholds per sink, with mass curves as CSV
    PeThreshold {
        net: String,
        #[arg(long, default_value_t = 10.0)]
        lambda: f64,
        /// Restrict to one sink (default: all sinks)
        #[arg(long)]
        sink: Option<String>,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write single/multi edge mass curves to this CSV file
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Grid for the CSV curves
        #[arg(long, default_value = "0.0001:0.4:log60")]
        curve_pe: String,
    },
    /// Analytical BER upper bound over a p_e grid
    BerBound {
        net: String,
        /// Input-code generator matrix text
        code: String,
        #[arg(long)]
        sink: String,
        /// Grid: "a:b:step", "a:b:logN", comma list, or a single value
        #[arg(long)]
        pe_grid: String,
        #[arg(long, value_enum, default_value = "input")]
        side: SideArg,
        #[arg(long, default_value_t = 1e-4)]
        epsilon: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo BER curves with hard-decision Viterbi decoding
    BerSim {
        net: String,
        #[arg(long)]
        code: String,
        /// Comma-separated sink names
        #[arg(long)]
        sinks: String,
        #[arg(long, value_enum, default_value = "input")]
        side: SidesArg,
        /// Grid: "a:b:step", "a:b:logN", comma list, or a single value
        #[arg(long)]
        pe: String,
        /// Frames per grid point
        #[arg(long, default_value_t = 2000)]
        trials: u64,
        /// Information blocks per frame
        #[arg(long, default_value_t = 1000)]
        frame_len: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Stop decoding a lane at a point once it has this many bit errors
        #[arg(long, default_value_t = 200)]
        max_errors: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Validation(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> CliError {
        CliError::Usage(msg.into())
    }
}

impl From<NetworkError> for CliError {
    fn from(e: NetworkError) -> CliError {
        match e {
            NetworkError::BadFile(_) | NetworkError::DuplicateEdge(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> CliError {
        match e {
            CodeError::BadGenerator(_) => CliError::Usage(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> CliError {
        match e {
            SpectrumError::BadWeight { .. }
            | SpectrumError::BadLambda(_)
            | SpectrumError::BadProbability(_) => CliError::Usage(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<TransferError> for CliError {
    fn from(e: TransferError) -> CliError {
        match e {
            TransferError::InvalidInput(_) => CliError::Usage(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> CliError {
        match e {
            SimError::BadProbability(_) | SimError::EmptyConfig => CliError::Usage(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Everything needed to reproduce a run, written next to file outputs.
#[derive(Serialize)]
struct RunManifest {
    subcommand: String,
    tool_version: String,
    config: serde_json::Value,
    seed: Option<u64>,
    timestamp_unix: u64,
    input_digests: BTreeMap<String, String>,
}

impl RunManifest {
    fn new(subcommand: &str, config: serde_json::Value, seed: Option<u64>) -> RunManifest {
        RunManifest {
            subcommand: subcommand.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            seed,
            timestamp_unix: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            input_digests: BTreeMap::new(),
        }
    }

    fn digest(&mut self, name: &str, bytes: &[u8]) {
        self.input_digests
            .insert(name.to_string(), sha256_hex(bytes));
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes an artifact and its sibling manifest, or prints to stdout when no
/// path was given (no manifest in that case).
fn emit(out: Option<&Path>, contents: &str, manifest: &RunManifest) -> Result<(), CliError> {
    match out {
        None => {
            print!("{contents}");
            Ok(())
        }
        Some(path) => {
            fs::write(path, contents)
                .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display())))?;
            let mpath = manifest_path(path);
            let body = serde_json::to_string_pretty(manifest).expect("manifest serializes");
            fs::write(&mpath, body)
                .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", mpath.display())))?;
            Ok(())
        }
    }
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    out.with_file_name(name)
}

fn read_net_arg(arg: &str) -> Result<(String, Network, NetworkCode), CliError> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::usage(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(arg)
            .map_err(|e| CliError::usage(format!("cannot read {arg}: {e}")))?
    };
    let (net, code) = network::from_json(&text)?;
    Ok((text, net, code))
}

/// Accepts the full nested form `[[...row...], ...]` and the single-row
/// shorthand `[[1,1],[1]]`.
fn parse_code_arg(text: &str) -> Result<ConvCode, CliError> {
    match ConvCode::parse(text) {
        Ok(code) => Ok(code),
        Err(full_err) => {
            if let Ok(row) = serde_json::from_str::<Vec<Vec<u8>>>(text) {
                let wrapped = serde_json::to_string(&vec![row]).expect("serializes");
                return ConvCode::parse(&wrapped).map_err(CliError::from);
            }
            Err(full_err.into())
        }
    }
}

fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = |msg: String| CliError::usage(format!("cannot parse grid {text:?}: {msg}"));
    let parse_num =
        |s: &str| s.trim().parse::<f64>().map_err(|e| bad(format!("{s:?}: {e}")));
    let parts: Vec<&str> = text.split(':').collect();
    let grid = match parts.as_slice() {
        [single] => {
            if single.contains(',') {
                single
                    .split(',')
                    .map(parse_num)
                    .collect::<Result<Vec<_>, _>>()?
            } else {
                vec![parse_num(single)?]
            }
        }
        [start, end, spec] => {
            let a = parse_num(start)?;
            let b = parse_num(end)?;
            if let Some(n) = spec.strip_prefix("log") {
                let n: usize = n.parse().map_err(|e| bad(format!("log count: {e}")))?;
                if n < 2 || a <= 0.0 || b <= a {
                    return Err(bad("log grid needs n >= 2 and 0 < a < b".into()));
                }
                let ratio = (b / a).powf(1.0 / (n - 1) as f64);
                (0..n).map(|i| a * ratio.powi(i as i32)).collect()
            } else {
                let step = parse_num(spec)?;
                if step <= 0.0 || b < a {
                    return Err(bad("need step > 0 and a <= b".into()));
                }
                let count = ((b - a) / step + 1e-9).floor() as usize + 1;
                (0..count).map(|i| a + i as f64 * step).collect()
            }
        }
        _ => return Err(bad("expected VALUE, a,b,c, a:b:step, or a:b:logN".into())),
    };
    for &p in &grid {
        if !(0.0..0.5).contains(&p) {
            return Err(CliError::usage(format!(
                "edge error probability {p} outside [0, 0.5)"
            )));
        }
    }
    if grid.is_empty() {
        return Err(bad("empty grid".into()));
    }
    Ok(grid)
}

fn matrix_lines(m: &BinMatrix, indent: &str) -> String {
    m.to_rows()
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            format!("{indent}[{}]", cells.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn y_label(y: u32, n: usize) -> String {
    let bits: Vec<String> = (0..n).map(|j| ((y >> j) & 1).to_string()).collect();
    format!("[{}]", bits.join(","))
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Butterfly { out } => {
            let (net, code) = network::butterfly();
            let text = network::to_json(&net, &code) + "\n";
            let manifest = RunManifest::new("butterfly", serde_json::json!({}), None);
            emit(out.as_deref(), &text, &manifest)
        }
        Command::NetInfo { net, json } => net_info(&net, json),
        Command::CodeAnalyze { code, json } => code_analyze(&code, json),
        Command::ErrorSpectrum {
            net,
            sink,
            max_weight,
            json,
        } => error_spectrum(&net, &sink, max_weight, json),
        Command::PeThreshold {
            net,
            lambda,
            sink,
            out,
            csv,
            curve_pe,
        } => pe_threshold(&net, lambda, sink.as_deref(), out.as_deref(), csv.as_deref(), &curve_pe),
        Command::BerBound {
            net,
            code,
            sink,
            pe_grid,
            side,
            epsilon,
            out,
        } => ber_bound_cmd(&net, &code, &sink, &pe_grid, side.into(), epsilon, out.as_deref()),
        Command::BerSim {
            net,
            code,
            sinks,
            side,
            pe,
            trials,
            frame_len,
            seed,
            max_errors,
            out,
        } => ber_sim_cmd(
            &net, &code, &sinks, side, &pe, trials, frame_len, seed, max_errors, out.as_deref(),
        ),
    }
}

fn net_info(net_arg: &str, json: bool) -> Result<(), CliError> {
    let (_, net, code) = read_net_arg(net_arg)?;
    let diag = network::validate(&net, &code);
    let tf = network::compute_transfer(&net, &code).ok();

    if json {
        let report = serde_json::json!({
            "n": net.n,
            "num_edges": net.num_edges(),
            "source": net.source,
            "sinks": net.sinks,
            "checks": diag.checks,
            "F": tf.as_ref().map(|t| t.f.to_rows()),
            "M": tf.as_ref().map(|t| {
                t.sinks()
                    .map(|s| (s.clone(), t.transfer_matrix(s).unwrap().to_rows()))
                    .collect::<BTreeMap<_, _>>()
            }),
        });
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!(
            "network: n={}, |E|={}, source={}, sinks=[{}]",
            net.n,
            net.num_edges(),
            net.source,
            net.sinks.join(", ")
        );
        println!("validation:");
        for check in &diag.checks {
            let mark = if check.pass { "ok  " } else { "FAIL" };
            println!("  [{mark}] {}: {}", check.name, check.detail);
        }
        if let Some(tf) = &tf {
            println!("F =\n{}", matrix_lines(&tf.f, "  "));
            for sink in tf.sinks() {
                println!(
                    "M_{sink} =\n{}",
                    matrix_lines(tf.transfer_matrix(sink).unwrap(), "  ")
                );
            }
        }
    }
    if diag.all_pass() {
        Ok(())
    } else {
        Err(CliError::Validation("network validation failed".into()))
    }
}

fn code_analyze(code_arg: &str, json: bool) -> Result<(), CliError> {
    let code = parse_code_arg(code_arg)?;
    let metrics = if code.is_minimal_basic() {
        let d = free_distance(&code)?;
        let s = slope(&code)?;
        let bound = if code.degree() >= 1 {
            Some(slope_bound_check(&code)?)
        } else {
            None
        };
        Some((d, s, bound))
    } else {
        None
    };

    if json {
        let report = serde_json::json!({
            "b": code.input_size(),
            "c": code.output_size(),
            "row_degrees": code.row_degrees(),
            "degree": code.degree(),
            "nu_max": code.nu_max(),
            "minimal_basic": code.is_minimal_basic(),
            "free_distance": metrics.as_ref().map(|(d, _, _)| *d),
            "slope": metrics.as_ref().map(|(_, s, _)| s.map(|r| r.to_string())),
            "slope_bound": metrics.as_ref().and_then(|(_, _, b)| {
                b.as_ref().map(|b| serde_json::json!({
                    "bound": b.bound.to_string(),
                    "pass": b.satisfied,
                }))
            }),
        });
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
        return Ok(());
    }

    let rows: Vec<String> = (0..code.input_size())
        .map(|r| {
            let entries: Vec<String> = (0..code.output_size())
                .map(|c| code.generator().get(r, c).to_string())
                .collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    println!("generator: {}", rows.join(" ; "));
    println!(
        "rate: {}/{}  row degrees: {:?}  degree: {}  nu_max: {}",
        code.input_size(),
        code.output_size(),
        code.row_degrees(),
        code.degree(),
        code.nu_max()
    );
    println!("minimal-basic: {}", code.is_minimal_basic());
    match metrics {
        None => {
            println!("free distance / slope: skipped (not minimal-basic)");
        }
        Some((d, s, bound)) => {
            println!("free distance: {d}");
            match s {
                Some(s) => println!("slope: {s}"),
                None => println!("slope: inf (no cycles outside the zero state)"),
            }
            if let Some(b) = bound {
                println!(
                    "slope bound 1/(degree+1) = {}: {} ({} >= {})",
                    b.bound,
                    if b.satisfied { "pass" } else { "FAIL" },
                    b.slope,
                    b.bound
                );
            }
        }
    }
    Ok(())
}

fn error_spectrum(
    net_arg: &str,
    sink: &str,
    max_weight: Option<usize>,
    json: bool,
) -> Result<(), CliError> {
    let (_, net, code) = read_net_arg(net_arg)?;
    let tf = network::compute_transfer(&net, &code)?;
    let max_weight = max_weight.unwrap_or(net.num_edges());
    let spec = compute_spectrum(&tf, sink, max_weight)?;

    if json {
        let rows: Vec<serde_json::Value> = (0..=spec.max_weight)
            .map(|w| {
                let counts: BTreeMap<String, u64> = spec
                    .weight_row(w)
                    .iter()
                    .enumerate()
                    .map(|(y, &c)| (y_label(y as u32, spec.n), c as u64))
                    .collect();
                serde_json::json!({"weight": w, "counts": counts})
            })
            .collect();
        let report = serde_json::json!({
            "sink": spec.sink,
            "num_edges": spec.num_edges,
            "n": spec.n,
            "max_weight": spec.max_weight,
            "rows": rows,
        });
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
        return Ok(());
    }

    println!(
        "sink {} error spectrum (|E| = {}, counts of weight-i edge errors per sink error)",
        spec.sink, spec.num_edges
    );
    let labels: Vec<String> = (0..1u32 << spec.n).map(|y| y_label(y, spec.n)).collect();
    println!("weight  {}", labels.join("  "));
    for w in 0..=spec.max_weight {
        let cells: Vec<String> = spec
            .weight_row(w)
            .iter()
            .map(|c| format!("{c:>width$}", width = labels[0].len()))
            .collect();
        println!("{w:>6}  {}", cells.join("  "));
    }
    Ok(())
}

fn pe_threshold(
    net_arg: &str,
    lambda: f64,
    only_sink: Option<&str>,
    out: Option<&Path>,
    csv: Option<&Path>,
    curve_pe: &str,
) -> Result<(), CliError> {
    let (net_text, net, code) = read_net_arg(net_arg)?;
    let tf = network::compute_transfer(&net, &code)?;
    let sinks: Vec<String> = match only_sink {
        Some(s) => vec![s.to_string()],
        None => net.sinks.clone(),
    };

    let mut reports = Vec::new();
    for sink in &sinks {
        let spec = compute_spectrum(&tf, sink, net.num_edges())?;
        let report = empirical_threshold(&spec, lambda)?;
        reports.push((spec, report));
    }

    let overall = reports
        .iter()
        .filter_map(|(_, r)| r.min_threshold)
        .min_by(f64::total_cmp);
    let report_json = serde_json::json!({
        "lambda": lambda,
        "proposition_bound": proposition_threshold(net.num_edges(), lambda)?,
        "overall_min_threshold": overall,
        "sinks": reports.iter().map(|(spec, r)| serde_json::json!({
            "sink": r.sink,
            "min_threshold": r.min_threshold,
            "per_y": r.per_y.iter().map(|t| serde_json::json!({
                "y": y_label(t.y, spec.n),
                "single_edge_count": t.single_edge_count as u64,
                "threshold": t.threshold,
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });

    let config = serde_json::json!({
        "net": net_arg, "lambda": lambda, "sink": only_sink, "curve_pe": curve_pe,
    });
    let mut manifest = RunManifest::new("pe-threshold", config.clone(), None);
    manifest.digest("net", net_text.as_bytes());

    let body = serde_json::to_string_pretty(&report_json).unwrap() + "\n";
    emit(out, &body, &manifest)?;

    if let Some(csv_path) = csv {
        let grid = parse_grid(curve_pe)?;
        let mut lines = String::new();
        lines.push_str(&format!("# lambda={lambda}\n"));
        lines.push_str(&format!("# net_digest={}\n", sha256_hex(net_text.as_bytes())));
        lines.push_str("sink,y,p_e,single_edge_mass,lambda_multi_edge_mass\n");
        for (spec, _) in &reports {
            for point in dominance_curves(spec, lambda, &grid)? {
                lines.push_str(&format!(
                    "{},{},{},{},{}\n",
                    spec.sink,
                    y_label(point.y, spec.n).replace(',', " "),
                    point.p_e,
                    point.single_edge_mass,
                    point.lambda_multi_edge_mass
                ));
            }
        }
        let mut csv_manifest = RunManifest::new("pe-threshold", config, None);
        csv_manifest.digest("net", net_text.as_bytes());
        emit(Some(csv_path), &lines, &csv_manifest)?;
    }
    Ok(())
}

fn ber_bound_cmd(
    net_arg: &str,
    code_arg: &str,
    sink: &str,
    pe_grid: &str,
    side: Side,
    epsilon: f64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let (net_text, net, netcode) = read_net_arg(net_arg)?;
    let code = parse_code_arg(code_arg)?;
    let tf = network::compute_transfer(&net, &netcode)?;
    let m = tf
        .transfer_matrix(sink)
        .ok_or_else(|| CliError::usage(format!("unknown sink {sink}")))?
        .clone();
    let spec = compute_spectrum(&tf, sink, net.num_edges())?;
    let grid = parse_grid(pe_grid)?;

    let mut lines = String::new();
    lines.push_str(&format!("# sink={sink} side={side} epsilon={epsilon}\n"));
    lines.push_str(&format!("# code={code_arg}\n"));
    lines.push_str(&format!("# net_digest={}\n", sha256_hex(net_text.as_bytes())));
    lines.push_str("p_e,bound,diverged\n");
    for &p_e in &grid {
        let dist = exact_dist(&spec, p_e, side, &m)?;
        let bound = ber_bound(&code, &dist, epsilon)?;
        match bound.bound {
            Some(v) => lines.push_str(&format!("{p_e},{v},false\n")),
            None => lines.push_str(&format!("{p_e},,true\n")),
        }
    }

    let config = serde_json::json!({
        "net": net_arg, "code": code_arg, "sink": sink,
        "pe_grid": pe_grid, "side": side.to_string(), "epsilon": epsilon,
    });
    let mut manifest = RunManifest::new("ber-bound", config, None);
    manifest.digest("net", net_text.as_bytes());
    emit(out, &lines, &manifest)
}

#[allow(clippy::too_many_arguments)]
fn ber_sim_cmd(
    net_arg: &str,
    code_arg: &str,
    sinks_arg: &str,
    side: SidesArg,
    pe: &str,
    trials: u64,
    frame_len: usize,
    seed: u64,
    max_errors: u64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let (net_text, net, netcode) = read_net_arg(net_arg)?;
    let code = parse_code_arg(code_arg)?;
    let grid = parse_grid(pe)?;

    let mut lanes = Vec::new();
    for sink in sinks_arg.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let sides: &[Side] = match side {
            SidesArg::Input => &[Side::Input],
            SidesArg::Output => &[Side::Output],
            SidesArg::Both => &[Side::Input, Side::Output],
        };
        for &s in sides {
            lanes.push(LaneSpec {
                sink: sink.to_string(),
                side: s,
            });
        }
    }
    if lanes.is_empty() {
        return Err(CliError::usage("no sinks given"));
    }

    let cfg = SimConfig {
        pe_grid: grid,
        trials,
        frame_len,
        seed,
        max_errors,
    };
    let config = serde_json::json!({
        "net": net_arg, "code": code_arg, "sinks": sinks_arg,
        "side": match side { SidesArg::Input => "input", SidesArg::Output => "output", SidesArg::Both => "both" },
        "pe": pe, "trials": trials, "frame_len": frame_len,
        "seed": seed, "max_errors": max_errors,
    });
    let config_digest = sha256_hex(serde_json::to_string(&config).unwrap().as_bytes());

    let sim = Simulator::new(&net, &netcode, &code, &lanes, cfg)?;
    let curves = sim.run_sweep()?;

    let mut lines = String::new();
    lines.push_str(&format!("# seed={seed}\n"));
    lines.push_str(&format!("# code={code_arg}\n"));
    lines.push_str(&format!("# net_digest={}\n", sha256_hex(net_text.as_bytes())));
    lines.push_str(&format!("# config_digest={config_digest}\n"));
    lines.push_str("sink,side,p_e,bits,bit_errors,ber,ci95\n");
    for curve in &curves {
        for p in &curve.points {
            lines.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                curve.sink, curve.side, p.p_e, p.bits, p.bit_errors, p.ber, p.ci95
            ));
        }
    }

    let mut manifest = RunManifest::new("ber-sim", config, Some(seed));
    manifest.digest("net", net_text.as_bytes());
    manifest.digest("code", code_arg.as_bytes());
    emit(out, &lines, &manifest)
}
