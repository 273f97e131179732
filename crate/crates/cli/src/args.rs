use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "stancekit", version, about = "Stance classification experiments on tweet corpora")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic tweet stream and labels with planted structure.
    Synth(SynthArgs),
    /// Merge tweet files, optionally keeping keyword matches and active users.
    Ingest(IngestArgs),
    /// Draw an activity-stratified user sample for annotation.
    Sample(SampleArgs),
    /// Rank tokens by seed co-occurrence and cut a feature space.
    Discover(DiscoverArgs),
    /// Train the topic model used for term selection.
    LdaTrain(LdaTrainArgs),
    /// Turn labeled user documents into a feature matrix.
    Featurize(FeaturizeArgs),
    /// Fit a classifier on a feature matrix.
    Train(TrainArgs),
    /// Stratified cross-validation of one configuration.
    Cv(CvArgs),
    /// Cross-validate a grid of feature kinds, sizes and classifiers.
    Sweep(SweepArgs),
    /// Score the seed-hashtag vote baseline.
    Baseline(BaselineArgs),
    /// Print metrics for saved confusion matrices.
    Report(ReportArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Synth(_) => "synth",
            Command::Ingest(_) => "ingest",
            Command::Sample(_) => "sample",
            Command::Discover(_) => "discover",
            Command::LdaTrain(_) => "lda-train",
            Command::Featurize(_) => "featurize",
            Command::Train(_) => "train",
            Command::Cv(_) => "cv",
            Command::Sweep(_) => "sweep",
            Command::Baseline(_) => "baseline",
            Command::Report(_) => "report",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SeedArgs {
    /// Yes-side seed hashtags.
    #[arg(long, value_delimiter = ',', default_value = "#EVET,#Evet,#evet")]
    pub seeds_yes: Vec<String>,
    /// No-side seed hashtags.
    #[arg(long, value_delimiter = ',', default_value = "#HAYIR,#Hayır,#hayır")]
    pub seeds_no: Vec<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CorpusArgs {
    /// Tweet stream files (JSON lines); several are merged by time.
    #[arg(long, required = true, value_delimiter = ',')]
    pub corpus: Vec<PathBuf>,
    /// Tab-separated `user<TAB>label` file.
    #[arg(long)]
    pub labels: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LdaArgs {
    #[arg(long, default_value_t = 10)]
    pub topics: usize,
    /// Gibbs sweeps.
    #[arg(long, default_value_t = 400)]
    pub iterations: usize,
    #[arg(long, default_value_t = 100_000)]
    pub dict_size: usize,
    /// Documents sampled for training.
    #[arg(long, default_value_t = 100_000)]
    pub sample_size: usize,
    /// Document-topic prior; defaults to 50 / topics.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    pub beta: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LearnerArgs {
    /// SVM cost.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// SVM stopping tolerance on the projected gradient.
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    #[arg(long, default_value_t = 200)]
    pub max_epochs: usize,
    /// Minimum instances on each side of a tree split.
    #[arg(long, default_value_t = 2)]
    pub min_leaf: usize,
    #[arg(long)]
    pub max_depth: Option<usize>,
    #[arg(long, default_value_t = 100)]
    pub trees: usize,
    /// Features examined per forest split; defaults to ceil(sqrt(dim)).
    #[arg(long)]
    pub features_per_split: Option<usize>,
    /// Grow forest trees on the full training set instead of bootstraps.
    #[arg(long)]
    pub no_bootstrap: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 2000)]
    pub users: usize,
    /// Yes, No and Ambiguous fractions.
    #[arg(long, value_delimiter = ',', default_value = "0.413,0.391,0.196")]
    pub proportions: Vec<f64>,
    #[arg(long, default_value_t = 10)]
    pub tweets_min: usize,
    #[arg(long, default_value_t = 30)]
    pub tweets_max: usize,
    #[arg(long, default_value_t = 5)]
    pub words_min: usize,
    #[arg(long, default_value_t = 12)]
    pub words_max: usize,
    #[arg(long, default_value_t = 200)]
    pub vocab_per_class: usize,
    #[arg(long, default_value_t = 1000)]
    pub shared_vocab: usize,
    #[arg(long, default_value_t = 0.3)]
    pub class_word_rate: f64,
    #[arg(long, default_value_t = 20)]
    pub hashtags_per_class: usize,
    #[arg(long, default_value_t = 0.4)]
    pub hashtag_rate: f64,
    #[arg(long, default_value_t = 0.7)]
    pub seed_rate: f64,
    #[arg(long, default_value_t = 0.2)]
    pub injection_rate: f64,
    #[arg(long, default_value_t = 3)]
    pub spam_topics: usize,
    #[arg(long, default_value_t = 0)]
    pub noise_vocab: usize,
    #[arg(long, default_value_t = 0.0)]
    pub noise_word_rate: f64,
    #[arg(long, default_value_t = 0)]
    pub noise_words_per_user: usize,
    #[arg(long, default_value_t = 0.5)]
    pub retweet_rate: f64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IngestArgs {
    /// Input tweet files (JSON lines).
    #[arg(long, required = true, value_delimiter = ',')]
    pub corpus: Vec<PathBuf>,
    /// Keep tweets whose case-folded text contains any of these keywords.
    #[arg(long, value_delimiter = ',')]
    pub keywords: Vec<String>,
    /// Keep only tweets by users with at least this many retweets.
    #[arg(long, default_value_t = 0)]
    pub min_retweets: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SampleArgs {
    #[arg(long, required = true, value_delimiter = ',')]
    pub corpus: Vec<PathBuf>,
    /// Users to draw.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub strata: usize,
    /// Activity threshold applied before sampling.
    #[arg(long, default_value_t = 10)]
    pub min_retweets: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DiscoverArgs {
    #[arg(long, required = true, value_delimiter = ',')]
    pub corpus: Vec<PathBuf>,
    /// Restrict discovery to labeled users' tweets.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    #[command(flatten)]
    pub seeds: SeedArgs,
    /// `hashtag` or `bow`.
    #[arg(long, default_value = "hashtag")]
    pub features: String,
    /// Tokens kept per side.
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LdaTrainArgs {
    #[command(flatten)]
    pub data: CorpusArgs,
    #[command(flatten)]
    pub lda: LdaArgs,
    /// Also write the union of each topic's top-k terms as a feature space.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FeaturizeArgs {
    #[command(flatten)]
    pub data: CorpusArgs,
    #[command(flatten)]
    pub seeds: SeedArgs,
    /// `hashtag`, `bow`, `tfidf` or `lda`.
    #[arg(long)]
    pub features: String,
    /// Feature size; required unless `--space` is given.
    #[arg(long)]
    pub k: Option<usize>,
    /// Use a saved feature space instead of fitting one.
    #[arg(long)]
    pub space: Option<PathBuf>,
    #[command(flatten)]
    pub lda: LdaArgs,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TrainArgs {
    /// Feature matrix written by `featurize`.
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long, default_value = "svm")]
    pub classifier: String,
    #[command(flatten)]
    pub learner: LearnerArgs,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CvArgs {
    #[command(flatten)]
    pub data: CorpusArgs,
    #[command(flatten)]
    pub seeds: SeedArgs,
    #[arg(long)]
    pub features: String,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value = "svm")]
    pub classifier: String,
    #[arg(long, default_value_t = 10)]
    pub folds: usize,
    #[command(flatten)]
    pub learner: LearnerArgs,
    #[command(flatten)]
    pub lda: LdaArgs,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    #[command(flatten)]
    pub data: CorpusArgs,
    #[command(flatten)]
    pub seeds: SeedArgs,
    /// Feature kinds, plus `baseline` for the seed-vote row.
    #[arg(long, value_delimiter = ',', default_value = "hashtag,bow,tfidf,lda,baseline")]
    pub features: Vec<String>,
    /// Sizes for every kind; each kind's standard grid when omitted.
    #[arg(long, value_delimiter = ',')]
    pub k_grid: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "svm")]
    pub classifier: Vec<String>,
    #[arg(long, default_value_t = 10)]
    pub folds: usize,
    #[command(flatten)]
    pub learner: LearnerArgs,
    #[command(flatten)]
    pub lda: LdaArgs,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads for grid cells; all cores when omitted.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BaselineArgs {
    #[command(flatten)]
    pub data: CorpusArgs,
    #[command(flatten)]
    pub seeds: SeedArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ReportArgs {
    /// Confusion matrix files (three rows of three counts).
    #[arg(long = "matrix", required = true, value_delimiter = ',')]
    pub matrices: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
