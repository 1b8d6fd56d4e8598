use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use toric_apolarity::apolarity::{ApolarForm, DegreeBox};
use toric_apolarity::bounds::{best_bounds, bound_report, catalecticant, BoundReport};
use toric_apolarity::ideals::{cactus_certificate, length_estimate, IdealGens, LengthEstimate};
use toric_apolarity::linalg::DEFAULT_PRIME;
use toric_apolarity::ring::{GradedRing, Side};
use toric_apolarity::secant::{self, Chart, DEFAULT_TRIALS};
use toric_apolarity::syntax::{self, format_rational};
use toric_apolarity::{fixtures, Error, FanModel, Rational};

#[derive(Parser)]
#[command(name = "toric-apolarity", version, about = "Multigraded apolarity on simplicial toric varieties")]
struct Cli {
    /// Output style: aligned text or one JSON record per line.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Records,
}

#[derive(Args)]
struct FanArg {
    /// Fan file (TOML), or the name of a bundled surface.
    fan: PathBuf,
}

#[derive(Args)]
struct LengthOpts {
    /// Class of an ample Cartier divisor, e.g. `1,1` or `3;0`.
    #[arg(long, allow_hyphen_values = true)]
    ample: String,
    #[arg(long, default_value_t = toric_apolarity::ideals::DEFAULT_WINDOW)]
    window: usize,
    #[arg(long = "max-k", default_value_t = toric_apolarity::ideals::DEFAULT_MAX_K)]
    max_k: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Class group and the degree of every variable.
    Classgroup {
        #[command(flatten)]
        fan: FanArg,
    },
    /// Monomial basis of one graded piece.
    Basis {
        #[command(flatten)]
        fan: FanArg,
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        /// List monomials of S instead of T.
        #[arg(long)]
        primal: bool,
    },
    /// Hilbert function of the apolar algebra over a box of degrees.
    Hilbert {
        #[command(flatten)]
        fan: FanArg,
        #[arg(long)]
        form: String,
        #[arg(long = "box", allow_hyphen_values = true)]
        degrees: String,
    },
    /// One catalecticant matrix and the bounds it gives.
    Cat {
        #[command(flatten)]
        fan: FanArg,
        #[arg(long)]
        form: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Print the matrix entries.
        #[arg(long)]
        matrix: bool,
    },
    /// Best catalecticant bounds over a box of degrees.
    Bounds {
        #[command(flatten)]
        fan: FanArg,
        #[arg(long)]
        form: String,
        #[arg(long = "box", allow_hyphen_values = true)]
        degrees: String,
    },
    /// Whether an ideal lies in the apolar ideal of a form.
    Contains {
        #[command(flatten)]
        fan: FanArg,
        #[arg(long)]
        form: String,
        /// Comma-separated generators.
        #[arg(long)]
        ideal: String,
    },
    /// Length of the scheme cut out by an ideal.
    Length {
        #[command(flatten)]
        fan: FanArg,
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        opts: LengthOpts,
    },
    /// Containment plus length, giving an upper bound for the cactus rank.
    CactusCert {
        #[command(flatten)]
        fan: FanArg,
        #[arg(long)]
        form: String,
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        opts: LengthOpts,
        /// Assert the scheme is reduced, which also bounds the rank.
        #[arg(long)]
        reduced: bool,
    },
    /// Checks an exact decomposition read from a terms file.
    DecomposeCheck {
        #[command(flatten)]
        fan: FanArg,
        #[arg(long)]
        form: String,
        #[arg(long)]
        terms: PathBuf,
    },
    /// Checks a family whose limit is the form.
    LimitCert {
        #[command(flatten)]
        fan: FanArg,
        #[arg(long)]
        form: String,
        #[arg(long)]
        family: PathBuf,
    },
    /// Random tangent-space rank probe for a secant variety.
    Terracini {
        #[command(flatten)]
        fan: FanArg,
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        #[arg(short = 'r')]
        points: usize,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coordinates pinned to 1, comma-separated.
        #[arg(long)]
        pin: Option<String>,
    },
    /// Determinant of the stacked tangent matrix at given parameters.
    DetCheck {
        #[command(flatten)]
        fan: FanArg,
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        #[arg(short = 'r')]
        points: usize,
        /// Chart parameters point by point, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// Work over Z/p instead of Q.
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        pin: Option<String>,
    },
}

const EXACT: &str = "exact";
const MODP: &str = "mod-p lower bound";
const HEURISTIC: &str = "heuristic-stabilized";

#[derive(Default)]
struct Report {
    lines: Vec<String>,
    records: Vec<Value>,
    refused: bool,
}

impl Report {
    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn record(&mut self, v: Value) {
        self.records.push(v);
    }
}

fn load_fan(arg: &FanArg) -> Result<Arc<FanModel>, Error> {
    let path: &Path = &arg.fan;
    let fan = if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        FanModel::from_toml(&text)?
    } else {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
        fixtures::by_name(stem).ok_or_else(|| Error::Input(format!("{}: no such file or bundled fan", path.display())))?
    };
    Ok(Arc::new(fan))
}

fn load_ring(arg: &FanArg) -> Result<Arc<GradedRing>, Error> {
    Ok(Arc::new(GradedRing::new(load_fan(arg)?)?))
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn chart(fan: &FanModel, pin: &Option<String>) -> Result<Option<Chart>, Error> {
    match pin {
        None => Ok(None),
        Some(s) => {
            let names: Vec<&str> = s.split(',').map(str::trim).filter(|n| !n.is_empty()).collect();
            Ok(Some(Chart::pinning(fan, &names)?))
        }
    }
}

fn bound_line(r: &BoundReport) -> String {
    let cactus = match r.cactus {
        Some(v) => format!("cactus >= {v}"),
        None => format!("cactus suppressed ({} is not Cartier)", r.beta),
    };
    format!("bounds at {}: border >= {}, rank >= {}, {}", r.beta, r.border, r.rank_bound, cactus)
}

fn bound_record(command: &str, r: &BoundReport) -> Value {
    json!({
        "record": command,
        "beta": r.beta,
        "catalecticant_rank": r.rank,
        "cartier": r.cartier,
        "border_lower": r.border,
        "rank_lower": r.rank_bound,
        "cactus_lower": r.cactus,
        "provenance": EXACT,
    })
}

fn length_lines(est: &LengthEstimate) -> Vec<String> {
    let samples: Vec<String> = est.samples.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    let status = if est.stabilized {
        format!("length {} ({HEURISTIC}, window {})", est.value, est.window)
    } else {
        format!("not stabilized; last value {} (window {})", est.value, est.window)
    };
    vec![status, format!("dim (S/I)_(k*ample): {}", samples.join(" "))]
}

fn length_record(est: &LengthEstimate) -> Value {
    json!({
        "record": "length",
        "value": est.value,
        "stabilized": est.stabilized,
        "window": est.window,
        "samples": est.samples,
        "provenance": HEURISTIC,
        "validity": "valid if the scheme is zero-dimensional and I is saturated in high degrees",
    })
}

fn run(cmd: Command) -> Result<Report, Error> {
    let mut rep = Report::default();
    match cmd {
        Command::Classgroup { fan } => {
            let fan = load_fan(&fan)?;
            let degs: Vec<String> =
                fan.var_names().iter().zip(fan.var_degrees()).map(|(n, d)| format!("{n}={d}")).collect();
            rep.line(format!("Cl = {}; deg {}", fan.class_group(), degs.join(" ")));
            rep.line(format!("complete: {}; smooth: {}", fan.check_complete(), fan.is_smooth()));
            let table: serde_json::Map<String, Value> =
                fan.var_names().iter().zip(fan.var_degrees()).map(|(n, d)| (n.clone(), json!(d))).collect();
            rep.record(json!({
                "record": "classgroup",
                "group": fan.class_group(),
                "degrees": table,
                "completeness": fan.check_complete(),
                "smooth": fan.is_smooth(),
                "provenance": EXACT,
            }));
        }
        Command::Basis { fan, degree, primal } => {
            let ring = load_ring(&fan)?;
            let alpha = ring.fan().parse_degree(&degree)?;
            let side = if primal { Side::Primal } else { Side::Dual };
            let names = if primal { ring.fan().var_names() } else { ring.fan().dual_names() };
            let monos: Vec<String> = ring
                .basis(&alpha)
                .monomials()
                .iter()
                .map(|m| {
                    let e: Vec<i64> = m.0.iter().map(|&x| x as i64).collect();
                    let s = syntax::format_monomial(&e, names);
                    if s.is_empty() { "1".to_string() } else { s }
                })
                .collect();
            rep.line(format!("dim {}: {}", monos.len(), monos.join(", ")));
            rep.record(json!({
                "record": "basis",
                "degree": alpha,
                "side": side,
                "dim": monos.len(),
                "monomials": monos,
                "provenance": EXACT,
            }));
        }
        Command::Hilbert { fan, form, degrees } => {
            let ring = load_ring(&fan)?;
            let f = ApolarForm::parse(Arc::clone(&ring), &form)?;
            let bx = DegreeBox::parse(ring.fan().class_group(), &degrees)?;
            let grid = f.hilbert_grid(&bx);
            let group = ring.fan().class_group();
            if group.free_rank() == 2 && group.torsion_orders().is_empty() {
                let r = bx.free_ranges();
                let header: Vec<String> = (r[0].0..=r[0].1).map(|i| format!("{i:>3}")).collect();
                rep.line(format!("  b\\a{}", header.join("")));
                for (j, row) in (r[1].0..=r[1].1).zip(grid.rows_2d(&bx)) {
                    let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
                    rep.line(format!("{j:>4} {}", cells.join("")));
                }
            } else {
                for (d, v) in &grid.values {
                    rep.line(format!("H{d} = {v}"));
                }
            }
            for (d, v) in &grid.values {
                rep.record(json!({"record": "hilbert", "degree": d, "value": v, "provenance": EXACT}));
            }
            let sym = f.check_symmetry(&bx);
            match &sym.witness {
                None => rep.line(format!("symmetry: PASS ({} degrees)", sym.checked)),
                Some((d, a, b)) => {
                    rep.line(format!("symmetry: FAIL at {d}: {a} vs {b}"));
                    rep.refused = true;
                }
            }
            rep.record(json!({
                "record": "symmetry",
                "symmetric": sym.symmetric,
                "checked": sym.checked,
                "witness": sym.witness.as_ref().map(|(d, _, _)| d.to_string()),
                "provenance": EXACT,
            }));
        }
        Command::Cat { fan, form, beta, matrix } => {
            let ring = load_ring(&fan)?;
            let f = ApolarForm::parse(Arc::clone(&ring), &form)?;
            let beta = ring.fan().parse_degree(&beta)?;
            let c = catalecticant(&f, &beta, Some(DEFAULT_PRIME));
            rep.line(format!("C_F^{}: {} x {}, rank {} ({EXACT})", beta, c.rows.len(), c.cols.len(), c.rank));
            if matrix {
                for row in &c.entries {
                    let cells: Vec<String> = row.iter().map(|x| format!("{:>4}", format_rational(x))).collect();
                    rep.line(cells.join(""));
                }
            }
            let b = bound_report(&f, &beta);
            rep.line(bound_line(&b));
            let mut r = bound_record("cat", &b);
            r["rows"] = json!(c.rows.len());
            r["cols"] = json!(c.cols.len());
            rep.record(r);
        }
        Command::Bounds { fan, form, degrees } => {
            let ring = load_ring(&fan)?;
            let f = ApolarForm::parse(Arc::clone(&ring), &form)?;
            let bx = DegreeBox::parse(ring.fan().class_group(), &degrees)?;
            let best = best_bounds(&f, &bx);
            for (kind, b) in [("border", &best.border), ("rank", &best.rank), ("cactus", &best.cactus)] {
                match b {
                    Some(b) => rep.line(format!("{kind} >= {} at {}", b.value, b.beta)),
                    None => rep.line(format!("{kind}: no Cartier degree in the box")),
                }
                rep.record(json!({
                    "record": "best_bound",
                    "kind": kind,
                    "value": b.as_ref().map(|b| b.value),
                    "beta": b.as_ref().map(|b| b.beta.to_string()),
                    "provenance": EXACT,
                }));
            }
        }
        Command::Contains { fan, form, ideal } => {
            let ring = load_ring(&fan)?;
            let f = ApolarForm::parse(Arc::clone(&ring), &form)?;
            let i = IdealGens::parse_list(&ring, &ideal)?;
            let holds = f.apolar_contains(&i)?;
            rep.line(format!("I in F^perp: {holds}"));
            rep.refused = !holds;
            rep.record(json!({"record": "contains", "holds": holds, "provenance": EXACT}));
        }
        Command::Length { fan, ideal, opts } => {
            let ring = load_ring(&fan)?;
            let i = IdealGens::parse_list(&ring, &ideal)?;
            let ample = ring.fan().parse_degree(&opts.ample)?;
            let est = length_estimate(&ring, &i, &ample, opts.window, opts.max_k)?;
            for l in length_lines(&est) {
                rep.line(l);
            }
            rep.record(length_record(&est));
        }
        Command::CactusCert { fan, form, ideal, opts, reduced } => {
            let ring = load_ring(&fan)?;
            let f = ApolarForm::parse(Arc::clone(&ring), &form)?;
            let i = IdealGens::parse_list(&ring, &ideal)?;
            let ample = ring.fan().parse_degree(&opts.ample)?;
            let cert = cactus_certificate(&f, &i, &ample, opts.window, opts.max_k, reduced)?;
            rep.line(format!("containment: I in F^perp ({EXACT})"));
            for l in length_lines(&cert.length) {
                rep.line(l);
            }
            match cert.cactus_bound {
                Some(v) => rep.line(format!("cr(F) <= {v}")),
                None => {
                    rep.line("no bound: length did not stabilize");
                    rep.refused = true;
                }
            }
            if let Some(v) = cert.rank_bound {
                rep.line(format!("r(F) <= {v} (scheme asserted reduced)"));
            }
            rep.record(json!({
                "record": "cactus_certificate",
                "containment": true,
                "length": cert.length.value,
                "stabilized": cert.length.stabilized,
                "cactus_upper": cert.cactus_bound,
                "rank_upper": cert.rank_bound,
                "reduced_asserted": cert.reduced_asserted,
                "provenance": HEURISTIC,
            }));
        }
        Command::DecomposeCheck { fan, form, terms } => {
            let ring = load_ring(&fan)?;
            let f = ApolarForm::parse(Arc::clone(&ring), &form)?;
            let terms = secant::parse_terms_file(ring.fan(), &read(&terms)?)?;
            let check = secant::verify_decomposition(&f, &terms)?;
            let residual = check.residual.to_text(ring.fan());
            rep.line(format!("decomposition holds: {}", check.holds));
            rep.line(format!("residual: {residual}"));
            rep.refused = !check.holds;
            rep.record(json!({
                "record": "decomposition",
                "holds": check.holds,
                "points": terms.len(),
                "residual": residual,
                "provenance": EXACT,
            }));
        }
        Command::LimitCert { fan, form, family } => {
            let ring = load_ring(&fan)?;
            let f = ApolarForm::parse(Arc::clone(&ring), &form)?;
            let fam = secant::parse_family_file(ring.fan(), &read(&family)?)?;
            let cert = secant::limit_certificate(&f, &fam)?;
            match cert.reason {
                None => rep.line(format!("VALID: br(F) <= {}", cert.points)),
                Some(r) => {
                    rep.line(format!("INVALID: {r}"));
                    rep.refused = true;
                }
            }
            rep.line(format!("residue: {}", cert.residue_text));
            rep.record(json!({
                "record": "limit_certificate",
                "valid": cert.valid,
                "reason": cert.reason,
                "points": cert.points,
                "residue": cert.residue_text,
                "provenance": EXACT,
            }));
        }
        Command::Terracini { fan, degree, points, prime, trials, seed, pin } => {
            let ring = load_ring(&fan)?;
            let alpha = ring.fan().parse_degree(&degree)?;
            let chart = chart(ring.fan(), &pin)?;
            let t = secant::terracini_probe(&ring, &alpha, points, prime, seed, trials, chart)?;
            let pinned: Vec<&str> = (0..ring.fan().num_rays())
                .filter(|i| !t.chart.free.contains(i))
                .map(|i| ring.fan().dual_names()[i].as_str())
                .collect();
            rep.line(format!("rank {} over Z/{} ({MODP})", t.rank, t.prime));
            rep.line(format!(
                "dim sigma_{} >= {}; expected {}; fills P^{}: {}",
                t.points,
                t.dim_estimate,
                t.expected_dim,
                t.ambient as i64 - 1,
                if t.fills_space { "yes" } else { "not shown" }
            ));
            rep.line(format!("seed {}, trials {}, ranks {:?}, pinned {}", t.seed, t.trial_ranks.len(), t.trial_ranks, pinned.join(",")));
            rep.line("assumes the class is basepoint free");
            rep.record(json!({
                "record": "terracini",
                "degree": alpha,
                "points": t.points,
                "prime": t.prime,
                "seed": t.seed,
                "trial_ranks": t.trial_ranks,
                "rank": t.rank,
                "dim_lower": t.dim_estimate,
                "expected_dim": t.expected_dim,
                "ambient_dim": t.ambient as i64 - 1,
                "fills_space": t.fills_space,
                "pinned": pinned,
                "provenance": MODP,
            }));
        }
        Command::DetCheck { fan, degree, points, at, prime, pin } => {
            let ring = load_ring(&fan)?;
            let alpha = ring.fan().parse_degree(&degree)?;
            let chart = chart(ring.fan(), &pin)?;
            let values = at
                .split(',')
                .map(|s| {
                    let t = syntax::parse_terms(s, &[], false)?;
                    Ok(t.get(&Vec::new()).cloned().unwrap_or_else(|| Rational::from_integer(0.into())))
                })
                .collect::<Result<Vec<Rational>, Error>>()?;
            let det = secant::terracini_determinant_check(&ring, &alpha, points, &values, prime, chart)?;
            rep.line(det.to_string());
            let field = match prime {
                Some(p) => format!("Z/{p}"),
                None => "Q".to_string(),
            };
            rep.record(json!({
                "record": "determinant",
                "degree": alpha,
                "points": points,
                "field": field,
                "value": det.to_string(),
                "provenance": EXACT,
            }));
        }
    }
    Ok(rep)
}

fn exit_code(e: &Error) -> u8 {
    match e.name() {
        "NoCertificate" | "InvalidCertificate" | "NotCartier" | "ContainmentFailed" | "DegenerateSample"
        | "PointInIrrelevantLocus" | "NonSquare" => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    match run(cli.command) {
        Ok(rep) => {
            match format {
                Format::Table => rep.lines.iter().for_each(|l| println!("{l}")),
                Format::Records => rep.records.iter().for_each(|r| println!("{r}")),
            }
            ExitCode::from(u8::from(rep.refused))
        }
        Err(e) => {
            if format == Format::Records {
                println!("{}", json!({"record": "error", "error": e.name(), "message": e.to_string()}));
            }
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
