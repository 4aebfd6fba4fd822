use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use z4oa::io::{parse_array, parse_binary_code, parse_generators, tsv};
use z4oa::ring::{annihilator, annihilator_size_violation, enumerate_ideals, property_plus_violation};
use z4oa::{
    exhaustive_small_sweep, gray_image, hamming_weight_enumerator, lee_weight_enumerator, random_z4_sweep,
    search_pairs, strength, BigEnumerator, BinaryCode, Error, FiniteRing, OaReport, PairTable, RingCode, SearchConfig,
    SweepOutcome, Z4Code,
};

#[derive(Parser)]
#[command(name = "z4oa", version, about = "Z4 codes, Gray images and orthogonal-array strength")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Sizes, weights, dual, strengths and enumerators of a code.
    Analyze(CodeArgs),
    /// Exhaustive and random verification sweeps.
    Verify(VerifyArgs),
    /// Search for attainable (Str(C), Str(C')) pairs.
    SearchPairs(SearchArgs),
    /// Strength and index of an array file.
    Oa { file: PathBuf },
    /// Gray image of a Z4 code, or linearity of a binary code file.
    Gray {
        file: PathBuf,
        /// Treat the file as a list of binary codewords.
        #[arg(long)]
        binary: bool,
    },
    /// Dual code of a generator matrix.
    Dual(CodeArgs),
    /// Ideals, annihilators and structural properties of a ring.
    RingCheck {
        #[arg(long)]
        ring: String,
    },
}

#[derive(Args)]
struct CodeArgs {
    /// Generator matrix file.
    file: PathBuf,
    #[arg(long, default_value = "Z4")]
    ring: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Ring to sweep; repeat for several. Defaults to Z4, Z6 and R8.
    #[arg(long)]
    ring: Vec<String>,
    /// Longest code length in the exhaustive sweep (default 3 for Z4, 2 otherwise).
    #[arg(long)]
    max_n: Option<usize>,
    /// Most generators per code in the exhaustive sweep (default 2 for Z4, unbounded otherwise).
    #[arg(long)]
    max_generators: Option<usize>,
    /// Number of random standard-form Z4 codes.
    #[arg(long, default_value_t = 200)]
    random: usize,
    /// Longest random code.
    #[arg(long, default_value_t = 6)]
    random_max_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 4)]
    max_n: usize,
    /// Random codes per shape (n, k1, k2).
    #[arg(long, default_value_t = 32)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enumerate every standard form up to this length instead of sampling.
    #[arg(long, default_value_t = 0)]
    exhaustive_n: usize,
    /// Re-check the witnesses of a previously written JSON table.
    #[arg(long, value_name = "FILE")]
    revalidate: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Outcome {
    report: String,
    ok: bool,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn with_file<T>(path: &Path, r: z4oa::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match Failure::from(e) {
        Failure::Usage(m) => Failure::Usage(format!("{}: {m}", path.display())),
        b => b,
    })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn kv(rows: &[(&str, String)]) -> String {
    tsv(&["field", "value"], rows.iter().map(|(k, v)| vec![k.to_string(), v.clone()]))
}

fn word_list<W: ToString>(words: impl IntoIterator<Item = W>) -> String {
    words.into_iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",")
}

fn elem_row(row: &[u8]) -> String {
    row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

fn load_code(args: &CodeArgs) -> Result<(FiniteRing, usize, Vec<Vec<u8>>), Failure> {
    let ring = FiniteRing::parse(&args.ring)?;
    let (n, rows) = with_file(&args.file, parse_generators(&read(&args.file)?))?;
    Ok((ring, n, rows))
}

fn is_z4(ring: &FiniteRing) -> bool {
    FiniteRing::zn(4).map(|z| &z == ring).unwrap_or(false)
}

#[derive(Serialize)]
struct Z4Analysis {
    n: usize,
    size: usize,
    k1: usize,
    k2: usize,
    min_hamming_weight: usize,
    min_lee_weight: usize,
    dual_generators: Vec<String>,
    dual_min_hamming_weight: usize,
    dual_min_lee_weight: usize,
    strength: OaReport,
    gray_strength: OaReport,
    gray_linear: bool,
    hamming_enumerator: BigEnumerator,
    lee_enumerator: BigEnumerator,
}

#[derive(Serialize)]
struct RingAnalysis {
    ring: String,
    n: usize,
    size: usize,
    min_hamming_weight: usize,
    dual_generators: Vec<String>,
    dual_size: usize,
    dual_min_hamming_weight: usize,
    strength: OaReport,
    hamming_enumerator: BigEnumerator,
}

fn analyze(args: &CodeArgs, format: Format) -> Result<Outcome, Failure> {
    let (ring, n, rows) = load_code(args)?;
    let report = if is_z4(&ring) {
        let c = with_file(&args.file, Z4Code::from_rows(n, &rows))?;
        let dual = c.dual()?;
        let image = gray_image(&c);
        let (k1, k2) = c.type_exponents();
        let a = Z4Analysis {
            n,
            size: c.size(),
            k1,
            k2,
            min_hamming_weight: c.min_hamming_weight(),
            min_lee_weight: c.min_lee_weight(),
            dual_generators: dual.generators().iter().map(|g| g.to_string()).collect(),
            dual_min_hamming_weight: dual.min_hamming_weight(),
            dual_min_lee_weight: dual.min_lee_weight(),
            strength: strength(&c.to_array())?,
            gray_strength: strength(&image.to_array())?,
            gray_linear: image.is_linear(),
            hamming_enumerator: hamming_weight_enumerator(&c),
            lee_enumerator: lee_weight_enumerator(&c),
        };
        match format {
            Format::Json => json(&a),
            Format::Tsv => kv(&[
                ("n", a.n.to_string()),
                ("size", a.size.to_string()),
                ("type", format!("4^{} 2^{}", a.k1, a.k2)),
                ("min_hamming_weight", a.min_hamming_weight.to_string()),
                ("min_lee_weight", a.min_lee_weight.to_string()),
                ("dual_generators", a.dual_generators.join(",")),
                ("dual_min_hamming_weight", a.dual_min_hamming_weight.to_string()),
                ("dual_min_lee_weight", a.dual_min_lee_weight.to_string()),
                ("strength", a.strength.strength.to_string()),
                ("gray_strength", a.gray_strength.strength.to_string()),
                ("gray_linear", a.gray_linear.to_string()),
                ("hamming_enumerator", a.hamming_enumerator.to_string()),
                ("lee_enumerator", a.lee_enumerator.to_string()),
            ]),
        }
    } else {
        let c = with_file(&args.file, RingCode::from_generators(&ring, n, &rows))?;
        let dual = c.dual()?;
        let a = RingAnalysis {
            ring: ring.name().to_string(),
            n,
            size: c.size(),
            min_hamming_weight: c.min_hamming_weight(),
            dual_generators: dual.generators().iter().map(|g| elem_row(g)).collect(),
            dual_size: dual.size(),
            dual_min_hamming_weight: dual.min_hamming_weight(),
            strength: strength(&c.to_array())?,
            hamming_enumerator: hamming_weight_enumerator(&c),
        };
        match format {
            Format::Json => json(&a),
            Format::Tsv => kv(&[
                ("ring", a.ring.clone()),
                ("n", a.n.to_string()),
                ("size", a.size.to_string()),
                ("min_hamming_weight", a.min_hamming_weight.to_string()),
                ("dual_generators", a.dual_generators.join(",")),
                ("dual_size", a.dual_size.to_string()),
                ("dual_min_hamming_weight", a.dual_min_hamming_weight.to_string()),
                ("strength", a.strength.strength.to_string()),
                ("hamming_enumerator", a.hamming_enumerator.to_string()),
            ]),
        }
    };
    Ok(Outcome { report, ok: true })
}

fn sweep_tsv(out: &mut String, s: &SweepOutcome) {
    let _ = writeln!(out, "# {}", s.label);
    let _ = writeln!(out, "# codes={} checks={} failures={}", s.codes_checked, s.checks_run, s.failures.len());
    for (name, count) in &s.counts {
        let _ = writeln!(out, "# {name}: {count} checks");
    }
    if s.hypothesis_not_met > 0 {
        let _ = writeln!(
            out,
            "# hypothesis not met on {} checks; identity fails on {} codes",
            s.hypothesis_not_met,
            s.dual_size_counterexamples.len()
        );
    }
    let mut rows = s.failures.iter().collect::<Vec<_>>();
    rows.extend(&s.first_hypothesis_flag);
    rows.extend(&s.weak_bound_witness);
    if !rows.is_empty() {
        out.push_str(z4oa::TheoremReport::TSV_HEADER);
        out.push('\n');
        for r in rows {
            out.push_str(&r.tsv_row());
            out.push('\n');
        }
    }
}

fn verify(args: &VerifyArgs, format: Format) -> Result<Outcome, Failure> {
    let specs = if args.ring.is_empty() { vec!["Z4".into(), "Z6".into(), "R8".into()] } else { args.ring.clone() };
    let rings = specs.iter().map(|s| FiniteRing::parse(s)).collect::<z4oa::Result<Vec<_>>>()?;
    let mut outcomes = Vec::new();
    for ring in &rings {
        let z4 = is_z4(ring);
        let n_max = args.max_n.unwrap_or(if z4 { 3 } else { 2 });
        let gens = args.max_generators.or(if z4 { Some(2) } else { None });
        outcomes.push(exhaustive_small_sweep(ring, n_max, gens)?);
    }
    if args.random > 0 && rings.iter().any(is_z4) {
        outcomes.push(random_z4_sweep(args.random, args.random_max_n, args.seed)?);
    }
    let ok = outcomes.iter().all(SweepOutcome::all_passed);
    let report = match format {
        Format::Json => json(&outcomes),
        Format::Tsv => {
            let mut out = String::new();
            for s in &outcomes {
                sweep_tsv(&mut out, s);
            }
            let _ = writeln!(out, "# overall: {}", if ok { "pass" } else { "FAIL" });
            out
        }
    };
    Ok(Outcome { report, ok })
}

fn search(args: &SearchArgs, format: Format) -> Result<Outcome, Failure> {
    if let Some(path) = &args.revalidate {
        let table: PairTable =
            serde_json::from_str(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let bad = table.revalidate()?;
        let report = match format {
            Format::Json => json(&bad),
            Format::Tsv => {
                let mut out = format!("# {} recorded pairs, {} mismatches\n", table.found_pairs().len(), bad.len());
                for (t, tg) in &bad {
                    let _ = writeln!(out, "mismatch\t{t}\t{tg}");
                }
                out
            }
        };
        return Ok(Outcome { report, ok: bad.is_empty() });
    }
    let config = SearchConfig {
        n_max: args.max_n,
        samples_per_shape: args.samples,
        seed: args.seed,
        exhaustive_n: args.exhaustive_n,
    };
    let table = search_pairs(&config)?;
    let ok = table.out_of_bounds.is_empty();
    let report = match format {
        Format::Json => json(&table),
        Format::Tsv => {
            let mut out = table.to_tsv();
            for e in &table.out_of_bounds {
                let _ = writeln!(out, "# out of bounds: ({}, {})", e.t, e.t_gray);
            }
            out
        }
    };
    Ok(Outcome { report, ok })
}

fn oa(file: &Path, format: Format) -> Result<Outcome, Failure> {
    let a = with_file(file, parse_array(&read(file)?))?;
    let r = strength(&a)?;
    let report = match format {
        Format::Json => json(&r),
        Format::Tsv => {
            let mut rows = vec![("strength", r.strength.to_string()), ("index", r.index.to_string())];
            if let Some(w) = &r.witness {
                rows.push(("witness_columns", word_list(&w.columns)));
                rows.push(("witness_tuple", word_list(&w.tuple)));
                rows.push(("witness_count", format!("{} (expected {}/{})", w.observed, w.rows, w.cells)));
            }
            kv(&rows)
        }
    };
    Ok(Outcome { report, ok: true })
}

#[derive(Serialize)]
struct GrayReport {
    length: usize,
    size: usize,
    linear: bool,
    words: Vec<String>,
}

fn gray_cmd(file: &Path, binary: bool, format: Format) -> Result<Outcome, Failure> {
    let text = read(file)?;
    let code: BinaryCode = if binary {
        with_file(file, parse_binary_code(&text))?
    } else {
        let (n, rows) = with_file(file, parse_generators(&text))?;
        gray_image(&with_file(file, Z4Code::from_rows(n, &rows))?)
    };
    let r = GrayReport {
        length: code.length(),
        size: code.size(),
        linear: code.is_linear(),
        words: code.words().map(|w| w.to_string()).collect(),
    };
    let report = match format {
        Format::Json => json(&r),
        Format::Tsv => {
            let mut out = format!("# length={} size={} linear={}\n", r.length, r.size, r.linear);
            for w in &r.words {
                out.push_str(w);
                out.push('\n');
            }
            out
        }
    };
    Ok(Outcome { report, ok: true })
}

#[derive(Serialize)]
struct DualReport {
    ring: String,
    n: usize,
    size: usize,
    dual_size: usize,
    dual_generators: Vec<Vec<u8>>,
}

fn dual_cmd(args: &CodeArgs, format: Format) -> Result<Outcome, Failure> {
    let (ring, n, rows) = load_code(args)?;
    let r = if is_z4(&ring) {
        let c = with_file(&args.file, Z4Code::from_rows(n, &rows))?;
        let d = c.dual()?;
        DualReport {
            ring: ring.name().into(),
            n,
            size: c.size(),
            dual_size: d.size(),
            dual_generators: d.generators().iter().map(|g| g.symbols().to_vec()).collect(),
        }
    } else {
        let c = with_file(&args.file, RingCode::from_generators(&ring, n, &rows))?;
        let d = c.dual()?;
        DualReport {
            ring: ring.name().into(),
            n,
            size: c.size(),
            dual_size: d.size(),
            dual_generators: d.generators().to_vec(),
        }
    };
    let report = match format {
        Format::Json => json(&r),
        Format::Tsv => {
            let mut out = format!("# {} n={} |C|={} |dual|={}\n", r.ring, r.n, r.size, r.dual_size);
            for g in &r.dual_generators {
                out.push_str(&elem_row(g));
                out.push('\n');
            }
            out
        }
    };
    Ok(Outcome { report, ok: true })
}

#[derive(Serialize)]
struct IdealRow {
    ideal: Vec<String>,
    annihilator: Vec<String>,
}

#[derive(Serialize)]
struct RingReport {
    ring: String,
    order: usize,
    elements: Vec<String>,
    ideals: Vec<IdealRow>,
    property_plus: bool,
    annihilator_sizes_match: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    annihilator_size_violation: Option<IdealRow>,
}

fn ring_check(spec: &str, format: Format) -> Result<Outcome, Failure> {
    let ring = FiniteRing::parse(spec)?;
    let ideals = enumerate_ideals(&ring)?
        .iter()
        .map(|i| Ok(IdealRow { ideal: i.labels(&ring), annihilator: annihilator(&ring, i)?.labels(&ring) }))
        .collect::<z4oa::Result<Vec<_>>>()?;
    let violation = annihilator_size_violation(&ring)?
        .map(|(i, a)| IdealRow { ideal: i.labels(&ring), annihilator: a.labels(&ring) });
    let r = RingReport {
        ring: ring.name().into(),
        order: ring.order(),
        elements: ring.elements().map(|e| ring.label(e).to_string()).collect(),
        ideals,
        property_plus: property_plus_violation(&ring)?.is_none(),
        annihilator_sizes_match: violation.is_none(),
        annihilator_size_violation: violation,
    };
    let report = match format {
        Format::Json => json(&r),
        Format::Tsv => {
            let mut out = format!(
                "# {} order={} property_plus={} annihilator_sizes_match={}\n",
                r.ring, r.order, r.property_plus, r.annihilator_sizes_match
            );
            if let Some(v) = &r.annihilator_size_violation {
                let _ = writeln!(
                    out,
                    "# |ann(I)| != |R|/|I| for I={{{}}}: ann(I)={{{}}}",
                    v.ideal.join(","),
                    v.annihilator.join(",")
                );
            }
            out.push_str(&tsv(
                &["ideal", "size", "annihilator", "annihilator_size"],
                r.ideals.iter().map(|row| {
                    vec![
                        format!("{{{}}}", row.ideal.join(",")),
                        row.ideal.len().to_string(),
                        format!("{{{}}}", row.annihilator.join(",")),
                        row.annihilator.len().to_string(),
                    ]
                }),
            ));
            out
        }
    };
    Ok(Outcome { report, ok: true })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Analyze(a) => analyze(a, cli.format),
        Command::Verify(a) => verify(a, cli.format),
        Command::SearchPairs(a) => search(a, cli.format),
        Command::Oa { file } => oa(file, cli.format),
        Command::Gray { file, binary } => gray_cmd(file, *binary, cli.format),
        Command::Dual(a) => dual_cmd(a, cli.format),
        Command::RingCheck { ring } => ring_check(ring, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &outcome.report).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{}", outcome.report);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("budget exceeded: {m}");
            ExitCode::from(3)
        }
    }
}
