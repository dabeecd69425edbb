use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use urdu_opinion::config::Settings;
use urdu_opinion::corpus::{self, CorpusBatch};
use urdu_opinion::pipeline::{self, PipelineError};
use urdu_opinion::rating::{render_chart, ChartFormat, RatingError};

#[derive(Parser)]
#[command(
    name = "urdu-opinion",
    version,
    about = "Opinion mining for Roman Urdu product comments"
)]
struct Cli {
    /// Flat key=value config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct Common {
    /// Extra `key=value` settings, applied after the config file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Args)]
struct IoArgs {
    /// Input corpus (line-delimited JSON).
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Output corpus; standard output when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Skip malformed input lines instead of aborting.
    #[arg(long)]
    lenient: bool,
}

#[derive(Args)]
struct LexiconArgs {
    #[arg(long)]
    tag_lexicon: Option<PathBuf>,
    #[arg(long)]
    opinion_lexicon: Option<PathBuf>,
    /// Keyword list for the advertisement detector, one per line.
    #[arg(long)]
    noise_keywords: Option<PathBuf>,
    /// aggregate (default) or per-sentence.
    #[arg(long)]
    mode: Option<String>,
    /// Keep the lexical polarity of comments flagged as advertisements.
    #[arg(long)]
    no_noise_filter: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Extract comments from product pages.
    Crawl {
        #[arg(long)]
        start_url: Option<String>,
        #[arg(long)]
        product_id: Option<String>,
        #[arg(long)]
        comment_selector: Option<String>,
        #[arg(long)]
        text_selector: Option<String>,
        #[arg(long)]
        next_page_selector: Option<String>,
        #[arg(long)]
        page_limit: Option<usize>,
        /// `url<TAB>file` map served instead of the network.
        #[arg(long)]
        fixture_map: Option<PathBuf>,
        /// Fetch pages over HTTP.
        #[arg(long)]
        network: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Add English translations to a corpus.
    Translate {
        #[command(flatten)]
        io: IoArgs,
        /// offline or remote.
        #[arg(long)]
        translator: Option<String>,
        #[arg(long)]
        gloss_dictionary: Option<PathBuf>,
        #[arg(long)]
        endpoint_url: Option<String>,
        /// Name of the environment variable holding the API key.
        #[arg(long)]
        api_key_env: Option<String>,
        #[arg(long)]
        batch_size: Option<usize>,
        /// Retranslate comments that already carry a translation.
        #[arg(long)]
        retranslate: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Attach polarity predictions to a corpus.
    Classify {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        lex: LexiconArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Summarize a classified corpus per product.
    Rate {
        #[arg(long, short)]
        input: Option<PathBuf>,
        /// Directory for summaries.jsonl and charts; prints to stdout otherwise.
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// svg_bar, svg_pie or ascii (stdout mode only).
        #[arg(long, default_value = "ascii")]
        format: String,
        #[command(flatten)]
        common: Common,
    },
    /// Compare predictions with gold labels.
    Eval {
        #[arg(long, short)]
        input: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Require the predicted sign to match for a true positive.
        #[arg(long)]
        strict_match: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run every stage and write reports to the output directory.
    Pipeline {
        #[arg(long, short)]
        input: Option<PathBuf>,
        #[arg(long)]
        output_dir: Option<PathBuf>,
        #[command(flatten)]
        lex: LexiconArgs,
        #[arg(long)]
        gloss_dictionary: Option<PathBuf>,
        #[arg(long)]
        translator: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

struct Overrides<'a>(&'a mut Settings);

impl Overrides<'_> {
    fn text(&mut self, key: &str, v: &Option<String>) -> Result<(), PipelineError> {
        if let Some(v) = v {
            self.0.set(key, v, None)?;
        }
        Ok(())
    }

    fn path(&mut self, key: &str, v: &Option<PathBuf>) -> Result<(), PipelineError> {
        if let Some(v) = v {
            self.0.set(key, &v.to_string_lossy(), None)?;
        }
        Ok(())
    }

    fn flag(&mut self, key: &str, on: bool, value: &str) -> Result<(), PipelineError> {
        if on {
            self.0.set(key, value, None)?;
        }
        Ok(())
    }

    fn common(&mut self, c: &Common) -> Result<(), PipelineError> {
        for kv in &c.set {
            let (k, v) =
                kv.split_once('=')
                    .ok_or_else(|| urdu_opinion::config::ConfigError::Syntax {
                        path: "--set".into(),
                        line: 1,
                    })?;
            self.0.set(k.trim(), v.trim(), None)?;
        }
        Ok(())
    }

    fn lexicons(&mut self, l: &LexiconArgs) -> Result<(), PipelineError> {
        self.path("tag_lexicon", &l.tag_lexicon)?;
        self.path("opinion_lexicon", &l.opinion_lexicon)?;
        self.path("noise_keywords", &l.noise_keywords)?;
        self.text("mode", &l.mode)?;
        self.flag("noise_filter", l.no_noise_filter, "false")
    }

    fn io(&mut self, io: &IoArgs) -> Result<(), PipelineError> {
        self.path("corpus", &io.input)?;
        self.flag("strict_load", io.lenient, "false")
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), PipelineError> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| PipelineError::Data {
            stage: "write",
            item: Some(p.display().to_string()),
            message: format!("{}: {e}", p.display()),
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| PipelineError::Data {
                    stage: "write",
                    item: None,
                    message: e.to_string(),
                })
        }
    }
}

fn emit_corpus(output: Option<&Path>, batch: &CorpusBatch) -> Result<(), PipelineError> {
    let mut text = String::new();
    for c in &batch.comments {
        text.push_str(&corpus::format_comment_record(c));
        text.push('\n');
    }
    emit(output, &text)
}

fn input_batch(settings: &Settings) -> Result<CorpusBatch, PipelineError> {
    settings.check_files()?;
    let path = settings
        .corpus
        .as_deref()
        .ok_or(urdu_opinion::config::ConfigError::Missing(
            "corpus (--input)",
        ))?;
    pipeline::load(path, settings.strict_load)
}

fn run(cli: Cli) -> Result<(), PipelineError> {
    let mut settings = match &cli.config {
        Some(p) => Settings::from_file(p)?,
        None => Settings::default(),
    };
    let mut o = Overrides(&mut settings);
    match &cli.command {
        Command::Crawl {
            start_url,
            product_id,
            comment_selector,
            text_selector,
            next_page_selector,
            page_limit,
            fixture_map,
            network,
            output,
            common,
        } => {
            o.text("start_url", start_url)?;
            o.text("product_id", product_id)?;
            o.text("comment_selector", comment_selector)?;
            o.text("text_selector", text_selector)?;
            o.text("next_page_selector", next_page_selector)?;
            o.text("page_limit", &page_limit.map(|n| n.to_string()))?;
            o.path("fixture_map", fixture_map)?;
            o.flag("fetcher", *network, "network")?;
            o.common(common)?;
            settings.check_files()?;
            let batch = pipeline::crawl(&settings)?;
            log::info!("crawled {} comments", batch.len());
            emit_corpus(output.as_deref(), &batch)
        }
        Command::Translate {
            io,
            translator,
            gloss_dictionary,
            endpoint_url,
            api_key_env,
            batch_size,
            retranslate,
            common,
        } => {
            o.io(io)?;
            o.text("translator", translator)?;
            o.path("gloss_dictionary", gloss_dictionary)?;
            o.text("endpoint_url", endpoint_url)?;
            o.text("api_key_env", api_key_env)?;
            o.text("batch_size", &batch_size.map(|n| n.to_string()))?;
            o.flag("skip_translated", *retranslate, "false")?;
            o.common(common)?;
            let batch = input_batch(&settings)?;
            let out = pipeline::translate(&batch, &settings)?;
            emit_corpus(io.output.as_deref(), &out)
        }
        Command::Classify { io, lex, common } => {
            o.io(io)?;
            o.lexicons(lex)?;
            o.common(common)?;
            let batch = input_batch(&settings)?;
            let classifier = pipeline::build_classifier(&settings)?;
            let (out, _) = pipeline::classify(&batch, &classifier);
            emit_corpus(io.output.as_deref(), &out)
        }
        Command::Rate {
            input,
            output_dir,
            format,
            common,
        } => {
            o.path("corpus", input)?;
            o.path("output_dir", output_dir)?;
            o.common(common)?;
            let batch = input_batch(&settings)?;
            let cls = pipeline::stored_classifications(&batch)?;
            let summaries = pipeline::summarize(&batch, &cls)?;
            match &settings.output_dir {
                Some(dir) => pipeline::write_ratings(dir, &summaries).map(|_| ()),
                None => {
                    let f: ChartFormat = format.parse().map_err(|e: RatingError| {
                        urdu_opinion::config::ConfigError::InvalidValue {
                            key: "format".into(),
                            reason: e.to_string(),
                        }
                    })?;
                    let text: String = summaries.iter().map(|s| render_chart(s, f)).collect();
                    emit(None, &text)
                }
            }
        }
        Command::Eval {
            input,
            output,
            strict_match,
            common,
        } => {
            o.path("corpus", input)?;
            o.flag("strict_match", *strict_match, "true")?;
            o.common(common)?;
            let batch = input_batch(&settings)?;
            let report = pipeline::evaluate(&batch, &settings)?;
            emit(output.as_deref(), &(report.to_json_pretty() + "\n"))
        }
        Command::Pipeline {
            input,
            output_dir,
            lex,
            gloss_dictionary,
            translator,
            common,
        } => {
            o.path("corpus", input)?;
            o.path("output_dir", output_dir)?;
            o.lexicons(lex)?;
            o.path("gloss_dictionary", gloss_dictionary)?;
            o.text("translator", translator)?;
            o.common(common)?;
            let outcome = pipeline::run_pipeline(&settings)?;
            for s in &outcome.summaries {
                eprintln!(
                    "{}: {} positive / {} negative / {} neutral of {}",
                    s.product_id, s.n_positive, s.n_negative, s.n_neutral, s.total
                );
            }
            if let Some(e) = &outcome.evaluation {
                eprintln!(
                    "precision {} recall {} f {} | average deviation {}",
                    e.metrics.precision, e.metrics.recall, e.metrics.f_measure, e.deviation.average
                );
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
