//! Chunked, order-preserving parallel processing of input lines.

use std::io::{BufRead, Write};

use anyhow::{anyhow, Context, Result};
use rayon::prelude::*;

use modtag::lexicon::Lexicon;
use modtag::tagger::{render_inline, tag_string, tag_tree_traced, write_standoff};
use modtag::token::parse_tagged_line;
use modtag::tree::parse_sexpr;
use modtag::Rule;

use crate::Format;

/// Lines read per parallel batch, per worker.
const CHUNK_PER_JOB: usize = 512;

/// Result of processing one line: output text and diagnostics.
pub struct Processed {
    pub text: String,
    pub warnings: Vec<String>,
}

/// Work applied to each input line. `id` is the 1-based line number.
pub trait LineJob: Sync {
    fn process(&self, id: usize, line: &str) -> Result<Processed>;
}

/// Stream `input` through `job`, `jobs` lines at a time in parallel, writing
/// results in input order. Stops at the first failing line.
pub fn run_lines(input: impl BufRead, out: &mut dyn Write, jobs: usize, job: &dyn LineJob) -> Result<()> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .context("cannot start worker threads")?;
    let chunk = CHUNK_PER_JOB * jobs;
    let mut lines = input.lines().enumerate();
    loop {
        let mut batch = Vec::with_capacity(chunk);
        for (i, line) in lines.by_ref().take(chunk) {
            batch.push((i + 1, line.with_context(|| format!("reading line {}", i + 1))?));
        }
        if batch.is_empty() {
            return Ok(());
        }
        let results: Vec<Result<Processed>> = pool.install(|| {
            batch
                .par_iter()
                .map(|(id, line)| job.process(*id, line).with_context(|| format!("line {id}")))
                .collect()
        });
        for r in results {
            let p = r?;
            for w in &p.warnings {
                eprintln!("warning: {w}");
            }
            out.write_all(p.text.as_bytes())?;
        }
    }
}

pub struct StringJob {
    pub lexicon: Lexicon,
    pub format: Format,
}

impl LineJob for StringJob {
    fn process(&self, id: usize, line: &str) -> Result<Processed> {
        let tokens = parse_tagged_line(line)?;
        let tagged = tag_string(&tokens, &self.lexicon);
        let warnings = tagged
            .targetless()
            .map(|r| format!("line {id}: trigger {} at token {} has no target", r.entry_id, r.head))
            .collect();
        let text = match self.format {
            Format::Standoff => write_standoff(id, &tagged.tag_rows()),
            _ => render_inline(&tagged.sentence) + "\n",
        };
        Ok(Processed { text, warnings })
    }
}

pub struct TreeJob {
    pub rules: Vec<Rule>,
    pub flatten: bool,
    pub format: Format,
}

impl LineJob for TreeJob {
    fn process(&self, id: usize, line: &str) -> Result<Processed> {
        if line.trim().is_empty() {
            let text = match self.format {
                Format::Standoff => write_standoff(id, &[]),
                _ => "\n".to_string(),
            };
            return Ok(Processed { text, warnings: Vec::new() });
        }
        let tree = parse_sexpr(line).map_err(|e| anyhow!("{e}"))?;
        let tree = if self.flatten { tree.flatten() } else { tree };
        let traced = tag_tree_traced(&tree, &self.rules);
        let text = match self.format {
            Format::Standoff => write_standoff(id, &traced.tag_rows()),
            _ => format!("{}\n", traced.tree),
        };
        Ok(Processed { text, warnings: Vec::new() })
    }
}
