//! Command-line front end: run a verifier over a graph6 corpus and write
//! one JSON certificate record per line.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use sepkit::verify::{run_corpus, validate_record, CertificateRecord, CorpusEntry, Job, TheoremId, VerifyOptions};

#[derive(Parser)]
#[command(name = "sepkit", version, about = "Certifying verifiers for special separations in 5-connected graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// 5-separations with a planar apex side.
    ApexSide(RunArgs),
    /// 5-separations whose cut contains a triangle.
    TriangleCut(RunArgs),
    /// 6-separations with a triangle in the cut and a minimal first side.
    SixCut(RunArgs),
    /// Graphs with a vertex whose deletion leaves a planar graph.
    ApexVertex(RunArgs),
    /// Edges or triangles contracting to a 5-connected planar graph.
    Contraction(RunArgs),
    /// The constructive TK5 through a gadget separation.
    Gadget(RunArgs),
    /// Plain TK5 search.
    Tk5(RunArgs),
    /// Re-check a certificate stream.
    Validate {
        /// JSON-lines file (stdin if omitted).
        input: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// graph6 file, one graph per line (stdin if omitted).
    input: Option<PathBuf>,
    /// Step budget of each TK5 search.
    #[arg(long, default_value_t = VerifyOptions::default().tk5_budget)]
    budget: u64,
    /// Skip graphs with more vertices.
    #[arg(long)]
    max_n: Option<usize>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Write certificate records here instead of stdout.
    #[arg(long)]
    certificates: Option<PathBuf>,
    /// Vertex cap of the TK5 oracle.
    #[arg(long, default_value_t = VerifyOptions::default().tk5_cap)]
    tk5_cap: usize,
    /// Vertex cap of exhaustive separation searches.
    #[arg(long, default_value_t = VerifyOptions::default().search_cap)]
    search_cap: usize,
}

fn read_input(path: &Option<PathBuf>) -> io::Result<String> {
    let mut s = String::new();
    match path {
        Some(p) => File::open(p)?.read_to_string(&mut s)?,
        None => io::stdin().read_to_string(&mut s)?,
    };
    Ok(s)
}

fn run(theorem: TheoremId, args: &RunArgs) -> io::Result<u8> {
    let input = read_input(&args.input)?;
    let job = Job {
        theorem,
        opts: VerifyOptions { tk5_budget: args.budget, tk5_cap: args.tk5_cap, search_cap: args.search_cap },
        max_n: args.max_n,
    };
    let start = Instant::now();
    let (entries, summary) = run_corpus(&input, &job, args.jobs);
    let elapsed = start.elapsed();
    let mut out: Box<dyn Write> = match &args.certificates {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    for e in &entries {
        match e {
            CorpusEntry::Record(r) => writeln!(out, "{}", serde_json::to_string(r).expect("records serialize"))?,
            CorpusEntry::ParseError { line, message } => eprintln!("line {line}: {message}"),
            CorpusEntry::Skipped { .. } => {}
        }
    }
    out.flush()?;
    eprintln!("{}: {} graphs, {} parse errors, {} skipped, {:.3}s", theorem.name(), summary.graphs, summary.parse_errors, summary.skipped, elapsed.as_secs_f64());
    for (k, c) in &summary.histogram {
        eprintln!("  {k:<24} {c}");
    }
    Ok(summary.exit_code() as u8)
}

fn validate(path: &Option<PathBuf>) -> io::Result<u8> {
    let input = read_input(path)?;
    let (mut ok, mut bad) = (0usize, 0usize);
    for (i, line) in input.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let res = serde_json::from_str::<CertificateRecord>(line).map_err(|e| e.to_string()).and_then(|r| validate_record(&r));
        match res {
            Ok(()) => ok += 1,
            Err(e) => {
                bad += 1;
                eprintln!("line {}: {e}", i + 1);
            }
        }
    }
    eprintln!("{ok} valid, {bad} invalid");
    Ok(u8::from(bad > 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::ApexSide(a) => run(TheoremId::ApexSide, a),
        Command::TriangleCut(a) => run(TheoremId::TriangleCut, a),
        Command::SixCut(a) => run(TheoremId::SixCut, a),
        Command::ApexVertex(a) => run(TheoremId::ApexVertex, a),
        Command::Contraction(a) => run(TheoremId::Contraction, a),
        Command::Gadget(a) => run(TheoremId::Gadget, a),
        Command::Tk5(a) => run(TheoremId::Tk5, a),
        Command::Validate { input } => validate(input),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
