//! `modtag` — batch front end for the modality taggers.
//!
//! Every subcommand reads line-oriented input (a file or standard input),
//! writes data to standard output or `--output`, and sends diagnostics to
//! standard error. Bundled data is used for any file not given.

mod pipeline;

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use modtag::eval::{agreement_report, precision_report, SentenceAnnotation, TokenAnnotation};
use modtag::lexicon::Lexicon;
use modtag::rules::{compile_ruleset, read_rules, write_rules, SubcatMap, TemplateCatalog};
use modtag::tagger::read_standoff;
use modtag::Rule;

use pipeline::{run_lines, StringJob, TreeJob};

#[derive(Parser, Debug)]
#[command(name = "modtag", version, about = "Rule-based modality trigger and target tagging")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tag `word/POS` sentences, one per line.
    TagString(TagArgs),
    /// Tag S-expression parse trees, one per line.
    TagTree(TagArgs),
    /// Compile the lexicon into tree rules.
    Compile(DataArgs),
    /// Sentence-level agreement between two standoff files.
    Agree(ReportArgs),
    /// Precision of an emitted standoff file against a gold one.
    Precision(ReportArgs),
}

#[derive(Args, Debug, Clone)]
struct DataArgs {
    /// Modality lexicon (default: bundled seed lexicon).
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Template catalog (default: bundled).
    #[arg(long)]
    templates: Option<PathBuf>,
    /// Subcategorization map (default: bundled).
    #[arg(long = "subcat-map")]
    subcat_map: Option<PathBuf>,
    /// Write output here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct TagArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Compiled rules file; compiled from the lexicon when absent.
    #[arg(long)]
    rules: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Tag trees as given instead of flattening them first.
    #[arg(long)]
    no_flatten: bool,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
    /// Input file (default: standard input).
    input: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct ReportArgs {
    /// First standoff file (emitted tags, for precision).
    first: PathBuf,
    /// Second standoff file (gold tags, for precision).
    second: PathBuf,
    /// Write `key=value` lines instead of the aligned table.
    #[arg(long)]
    kv: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Inline,
    Tree,
    Standoff,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::TagString(args) => tag_string(args),
        Command::TagTree(args) => tag_tree(args),
        Command::Compile(args) => compile(args),
        Command::Agree(args) => agree(args),
        Command::Precision(args) => precision(args),
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    let f = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(BufReader::new(f))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn input(path: Option<&Path>) -> Result<Box<dyn BufRead>> {
    Ok(match path {
        Some(p) => Box::new(open(p)?),
        None => Box::new(io::stdin().lock()),
    })
}

fn subcat_map(args: &DataArgs) -> Result<SubcatMap> {
    match &args.subcat_map {
        Some(p) => SubcatMap::parse(open(p)?).with_context(|| format!("in {}", p.display())),
        None => Ok(SubcatMap::bundled()),
    }
}

fn templates(args: &DataArgs) -> Result<TemplateCatalog> {
    match &args.templates {
        Some(p) => TemplateCatalog::parse(open(p)?).with_context(|| format!("in {}", p.display())),
        None => Ok(TemplateCatalog::bundled()),
    }
}

/// Load and expand the lexicon.
fn lexicon(args: &DataArgs, map: &SubcatMap) -> Result<Lexicon> {
    let lex = match &args.lexicon {
        Some(p) => Lexicon::parse(open(p)?, map).with_context(|| format!("in {}", p.display()))?,
        None => Lexicon::seed(),
    };
    Ok(lex.expand())
}

/// Check every named file up front so a bad path fails before any work.
fn check_paths<'a>(paths: impl IntoIterator<Item = &'a Option<PathBuf>>) -> Result<()> {
    for p in paths.into_iter().flatten() {
        if !p.is_file() {
            bail!("no such file: {}", p.display());
        }
    }
    Ok(())
}

fn tag_string(args: TagArgs) -> Result<()> {
    let d = &args.data;
    check_paths([&d.lexicon, &d.subcat_map, &args.input])?;
    let format = match args.format.unwrap_or(Format::Inline) {
        Format::Tree => bail!("tag-string writes `inline` or `standoff`, not `tree`"),
        f => f,
    };
    let map = subcat_map(d)?;
    let job = StringJob {
        lexicon: lexicon(d, &map)?,
        format,
    };
    let mut out = output(d.output.as_deref())?;
    run_lines(input(args.input.as_deref())?, &mut out, args.jobs.into(), &job)?;
    out.flush()?;
    Ok(())
}

fn tree_rules(args: &TagArgs) -> Result<Vec<Rule>> {
    if let Some(p) = &args.rules {
        return read_rules(open(p)?).with_context(|| format!("in {}", p.display()));
    }
    let d = &args.data;
    let map = subcat_map(d)?;
    let compiled = compile_ruleset(&lexicon(d, &map)?, &templates(d)?, &map)?;
    for e in &compiled.summary.skipped_entries {
        eprintln!("warning: no applicable template for {e}");
    }
    Ok(compiled.rules)
}

fn tag_tree(args: TagArgs) -> Result<()> {
    let d = &args.data;
    check_paths([&d.lexicon, &d.subcat_map, &d.templates, &args.rules, &args.input])?;
    let format = match args.format.unwrap_or(Format::Tree) {
        Format::Inline => bail!("tag-tree writes `tree` or `standoff`, not `inline`"),
        f => f,
    };
    let job = TreeJob {
        rules: tree_rules(&args)?,
        flatten: !args.no_flatten,
        format,
    };
    let mut out = output(d.output.as_deref())?;
    run_lines(input(args.input.as_deref())?, &mut out, args.jobs.into(), &job)?;
    out.flush()?;
    Ok(())
}

fn compile(args: DataArgs) -> Result<()> {
    check_paths([&args.lexicon, &args.subcat_map, &args.templates])?;
    let map = subcat_map(&args)?;
    let catalog = templates(&args)?;
    map.validate(&catalog)?;
    let compiled = compile_ruleset(&lexicon(&args, &map)?, &catalog, &map)?;
    let mut out = output(args.output.as_deref())?;
    out.write_all(write_rules(&compiled.rules).as_bytes())?;
    out.flush()?;
    eprint!("{}", compiled.summary);
    Ok(())
}

fn read_pair(args: &ReportArgs) -> Result<(Vec<modtag::tagger::StandoffSentence>, Vec<modtag::tagger::StandoffSentence>)> {
    let a = read_standoff(open(&args.first)?).with_context(|| format!("in {}", args.first.display()))?;
    let b = read_standoff(open(&args.second)?).with_context(|| format!("in {}", args.second.display()))?;
    Ok((a, b))
}

fn agree(args: ReportArgs) -> Result<()> {
    let (a, b) = read_pair(&args)?;
    let a: Vec<_> = a.iter().map(SentenceAnnotation::from_standoff).collect();
    let b: Vec<_> = b.iter().map(SentenceAnnotation::from_standoff).collect();
    let report = agreement_report(&a, &b)?;
    let mut out = output(args.output.as_deref())?;
    if args.kv {
        write!(out, "{}", report.key_values())?;
    } else {
        writeln!(out, "{report}")?;
    }
    for l in report.labels.iter().filter(|l| l.kappa.value.is_none()) {
        eprintln!(
            "warning: kappa undefined for {} (chance agreement is 1)",
            modtag::ModalityTag::new(l.role, l.label)
        );
    }
    out.flush()?;
    Ok(())
}

fn precision(args: ReportArgs) -> Result<()> {
    let (e, g) = read_pair(&args)?;
    let e: Vec<_> = e.iter().map(TokenAnnotation::from_standoff).collect();
    let g: Vec<_> = g.iter().map(TokenAnnotation::from_standoff).collect();
    let report = precision_report(&e, &g)?;
    if report.precision.is_none() {
        eprintln!("warning: no tags emitted; precision undefined");
    }
    let mut out = output(args.output.as_deref())?;
    if args.kv {
        write!(out, "{}", report.key_values())?;
    } else {
        writeln!(out, "{report}")?;
    }
    out.flush()?;
    Ok(())
}
