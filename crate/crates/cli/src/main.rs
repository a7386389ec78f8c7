use std::fmt;
use std::fs;
use std::io::{self, Read};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use wordrep::catalog::catalog;
use wordrep::cobip::{is_semi_transitive_cobip, sweep_graph};
use wordrep::constructions::Family;
use wordrep::graph::{parse_graph, write_graph, CoBipartitePartition, Graph};
use wordrep::orientation::{
    bounded_representation_number, enumerate_acyclic_orientations, find_noncomparability_witness,
    find_semi_transitive_orientation_capped, find_uniform_word, is_comparability_capped, Orientation, Witness,
    DEFAULT_VERTEX_CAP, REPNUM_MAX_K,
};
use wordrep::Word;

#[derive(Parser)]
#[command(name = "wordrep", version, about = "Word-representability toolkit for small graphs")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build a representing word for a graph family and verify it.
    Construct(ConstructArgs),
    /// Check whether a word represents a graph.
    Verify {
        graph: PathBuf,
        word: PathBuf,
    },
    /// Decide word-representability by semi-transitive orientation search.
    Representable {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        max_vertices: usize,
    },
    /// Compare the co-bipartite structural test with the generic shortcut test.
    Characterize(CharacterizeArgs),
    /// Write the witness and family graphs to a directory with a checksum manifest.
    Catalog {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        family: Option<String>,
        /// Family parameter range, e.g. `2..5` or `4`.
        #[arg(long, default_value = "2..5", value_parser = parse_range)]
        n: RangeInclusive<usize>,
    },
    /// Smallest k <= max-k with a k-uniform representing word.
    Repnum {
        graph: PathBuf,
        #[arg(long, default_value_t = REPNUM_MAX_K)]
        max_k: usize,
    },
    /// Transitive orientation search, with an odd-walk witness on failure.
    Comparability {
        graph: PathBuf,
        #[arg(long, default_value_t = 9)]
        max_walk: usize,
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        max_vertices: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    ComplementPath,
    ComplementCycle,
    Crown,
    CobipK2,
    CobipK3,
}

#[derive(Args)]
struct ConstructArgs {
    family: FamilyName,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Odd path (drops the last primed vertex).
    #[arg(long)]
    odd: bool,
    /// Comma list `label:class`, classes like `N12` or `N1b23`.
    #[arg(long)]
    profile: Option<String>,
    /// Also write the word and the graph next to this path (`.word`, `.graph`).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CharacterizeArgs {
    graph: PathBuf,
    /// Check a single orientation (lines `a -> b`) instead of sweeping.
    #[arg(long)]
    orientation: Option<PathBuf>,
    #[arg(long, default_value_t = 200_000)]
    sample_bound: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    /// Write disagreeing orientations here as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<wordrep::Error> for CliError {
    fn from(e: wordrep::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError(e.to_string())
    }
}

type Outcome = Result<bool, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(args) => cmd_construct(args, cli.format),
        Command::Verify { graph, word } => cmd_verify(&graph, &word, cli.format),
        Command::Representable { graph, max_vertices } => cmd_representable(&graph, max_vertices, cli.format),
        Command::Characterize(args) => cmd_characterize(args, cli.format),
        Command::Catalog { out, family, n } => cmd_catalog(&out, family.as_deref(), n, cli.format),
        Command::Repnum { graph, max_k } => cmd_repnum(&graph, max_k, cli.format),
        Command::Comparability {
            graph,
            max_walk,
            max_vertices,
        } => cmd_comparability(&graph, max_walk, max_vertices, cli.format),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad number `{t}`: {e}"));
    let r = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => num(s)?..=num(s)?,
    };
    if r.is_empty() {
        return Err(format!("empty range `{s}`"));
    }
    Ok(r)
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<(Graph, Option<CoBipartitePartition>), CliError> {
    Ok(parse_graph(&read_input(path)?)?)
}

fn emit(format: Format, value: &Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("json")),
        Format::Text => print!("{}", text()),
    }
}

fn arcs_json(o: &Orientation<'_>) -> Value {
    json!(o.labeled_arcs())
}

fn need(v: Option<usize>, flag: &str) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError(format!("--{flag} is required for this family")))
}

fn cmd_construct(args: ConstructArgs, format: Format) -> Outcome {
    let profile = || {
        args.profile
            .clone()
            .ok_or_else(|| CliError("--profile is required for this family".into()))
    };
    let family = match args.family {
        FamilyName::ComplementPath => Family::ComplementPath {
            n: need(args.n, "n")?,
            even: !args.odd,
        },
        FamilyName::ComplementCycle => Family::ComplementCycle { n: need(args.n, "n")? },
        FamilyName::Crown => Family::Crown {
            n: need(args.n, "n")?,
            k: need(args.k, "k")?,
        },
        FamilyName::CobipK2 => Family::CobipK2 { profile: profile()? },
        FamilyName::CobipK3 => Family::CobipK3 { profile: profile()? },
    };
    let c = family.build()?;
    let report = c.word.represents(&c.graph)?;
    if let Some(out) = &args.out {
        fs::write(out.with_extension("word"), format!("{}\n", c.word))?;
        let partition = c.partition.masks(&c.graph).ok().map(|_| &c.partition);
        fs::write(out.with_extension("graph"), write_graph(&c.graph, partition))?;
    }
    let mut params = serde_json::to_value(&family).expect("json");
    params.as_object_mut().expect("object").remove("family");
    let envelope = json!({
        "family": family.name(),
        "params": params,
        "word": c.word.to_string(),
        "length": c.word.len(),
        "uniformity": c.word.uniformity(),
        "verified": report.ok,
        "violations": report.violations,
    });
    emit(format, &envelope, || format!("{}\nverified: {}\n", c.word, report.ok));
    Ok(report.ok)
}

fn cmd_verify(graph: &Path, word: &Path, format: Format) -> Outcome {
    let (g, _) = read_graph(graph)?;
    let w = Word::parse(&read_input(word)?);
    let report = w.represents(&g)?;
    emit(format, &serde_json::to_value(&report).expect("json"), || {
        let mut s = format!("represents: {}\n", report.ok);
        for v in &report.violations {
            let what = if v.expected { "should alternate" } else { "should not alternate" };
            s.push_str(&format!("{} {}: {} (restriction {})\n", v.x, v.y, what, v.restriction));
        }
        s
    });
    Ok(report.ok)
}

fn cmd_representable(path: &Path, cap: usize, format: Format) -> Outcome {
    let (g, _) = read_graph(path)?;
    let found = find_semi_transitive_orientation_capped(&g, cap)?;
    let value = match &found {
        Some(o) => json!({ "representable": true, "orientation": arcs_json(o) }),
        None => {
            let count = enumerate_acyclic_orientations(&g, cap)?.count();
            json!({
                "representable": false,
                "witnessSummary": format!("each of the {count} acyclic orientations has a shortcut"),
            })
        }
    };
    emit(format, &value, || match &found {
        Some(o) => format!("representable: true\n{}", o.to_text()),
        None => "representable: false\n".into(),
    });
    Ok(found.is_some())
}

fn partition_for(g: &Graph, given: Option<CoBipartitePartition>) -> Result<CoBipartitePartition, CliError> {
    match given {
        Some(p) => Ok(p),
        None => CoBipartitePartition::detect(g)
            .ok_or_else(|| CliError("graph is not co-bipartite (no cliqueA/cliqueB lines and no split found)".into())),
    }
}

fn cmd_characterize(args: CharacterizeArgs, format: Format) -> Outcome {
    let (g, given) = read_graph(&args.graph)?;
    let partition = partition_for(&g, given)?;
    partition.masks(&g)?;

    if let Some(path) = &args.orientation {
        let o = Orientation::parse(&g, &read_input(path)?)?;
        let generic = o.is_semi_transitive();
        let report = is_semi_transitive_cobip(&o, &partition)?;
        let agree = generic == report.semi_transitive;
        let value = json!({ "generic": generic, "cobip": report, "agree": agree });
        emit(format, &value, || {
            let stage = report.failed_stage.map_or("none", |s| s.as_str());
            format!(
                "generic: {generic}\ncobip: {} (failed stage: {stage})\n",
                report.semi_transitive
            )
        });
        return Ok(agree);
    }

    let workers = args.workers.map_or_else(
        || std::thread::available_parallelism().map_or(1, |n| n.get()),
        |w| w as usize,
    );
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let summary = pool.install(|| sweep_graph(&g, &partition, args.sample_bound, &mut rng))?;

    if let Some(out) = &args.out {
        fs::write(out, serde_json::to_string_pretty(&summary.disagreements).expect("json"))?;
    }
    let stages = ["clique-transitivity", "typing", "lemma41", "lemma42", "lemma43"];
    let by_stage: serde_json::Map<String, Value> =
        stages.iter().zip(summary.failed_by_stage).map(|(s, c)| (s.to_string(), json!(c))).collect();
    let value = json!({
        "vertices": g.len(),
        "partition": partition,
        "orientations": summary.orientations,
        "sampled": summary.sampled,
        "seed": summary.sampled.then_some(args.seed),
        "semiTransitiveGeneric": summary.semi_transitive_generic,
        "semiTransitiveCobip": summary.semi_transitive_cobip,
        "failedByStage": by_stage,
        "disagreementCount": summary.disagreements.len(),
        "disagreements": summary.disagreements,
    });
    emit(format, &value, || {
        let mut s = format!(
            "orientations: {}{}\nsemi-transitive (generic): {}\nsemi-transitive (cobip): {}\ndisagreements: {}\n",
            summary.orientations,
            if summary.sampled { format!(" (sampled, seed {})", args.seed) } else { String::new() },
            summary.semi_transitive_generic,
            summary.semi_transitive_cobip,
            summary.disagreements.len()
        );
        for (stage, count) in stages.iter().zip(summary.failed_by_stage) {
            s.push_str(&format!("failed at {stage}: {count}\n"));
        }
        s
    });
    Ok(summary.disagreements.is_empty())
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn cmd_catalog(out: &Path, family: Option<&str>, n: RangeInclusive<usize>, format: Format) -> Outcome {
    let entries = catalog(family, n)?;
    fs::create_dir_all(out)?;
    let mut manifest = Vec::new();
    for e in &entries {
        let mut files = Vec::new();
        let graph_file = format!("{}.graph", e.name);
        let text = write_graph(&e.graph, Some(&e.partition));
        fs::write(out.join(&graph_file), &text)?;
        files.push(json!({ "path": graph_file, "sha256": sha256_hex(text.as_bytes()) }));
        if let Some(w) = &e.word {
            let word_file = format!("{}.word", e.name);
            let text = format!("{w}\n");
            fs::write(out.join(&word_file), &text)?;
            files.push(json!({ "path": word_file, "sha256": sha256_hex(text.as_bytes()) }));
        }
        manifest.push(json!({
            "name": e.name,
            "family": e.family,
            "params": e.params,
            "vertices": e.graph.len(),
            "edges": e.graph.edge_count(),
            "files": files,
        }));
    }
    let manifest = json!({ "entries": manifest });
    fs::write(out.join("manifest.json"), serde_json::to_string_pretty(&manifest).expect("json") + "\n")?;
    emit(format, &manifest, || {
        entries
            .iter()
            .map(|e| format!("{} {} vertices {} edges\n", e.name, e.graph.len(), e.graph.edge_count()))
            .collect()
    });
    Ok(true)
}

fn cmd_repnum(path: &Path, max_k: usize, format: Format) -> Outcome {
    let (g, _) = read_graph(path)?;
    let k = bounded_representation_number(&g, max_k)?;
    let word = match k {
        Some(k) => find_uniform_word(&g, k)?,
        None => None,
    };
    let value = json!({
        "representationNumber": k,
        "maxK": max_k,
        "word": word.as_ref().map(|w| w.to_string()),
    });
    emit(format, &value, || match (&k, &word) {
        (Some(k), Some(w)) => format!("representation number: {k}\n{w}\n"),
        _ => format!("no uniform representing word with k <= {max_k}\n"),
    });
    Ok(k.is_some())
}

fn cmd_comparability(path: &Path, max_walk: usize, cap: usize, format: Format) -> Outcome {
    let (g, _) = read_graph(path)?;
    if max_walk < 5 || max_walk % 2 == 0 {
        return Err(CliError(format!("--max-walk must be odd and at least 5, got {max_walk}")));
    }
    let found = is_comparability_capped(&g, cap)?;
    let (value, text) = match &found {
        Some(o) => (
            json!({ "comparability": true, "orientation": arcs_json(o) }),
            format!("comparability: true\n{}", o.to_text()),
        ),
        None => {
            let walk = find_noncomparability_witness(&g, max_walk)?;
            let text = match &walk {
                Some(w) => format!("comparability: false\nodd walk: {}\n", w.vertices.join(" ")),
                None => format!("comparability: false\nno chordless odd walk up to length {max_walk}\n"),
            };
            (
                json!({ "comparability": false, "witness": walk.map(Witness::from) }),
                text,
            )
        }
    };
    emit(format, &value, || text);
    Ok(found.is_some())
}
