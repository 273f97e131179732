//! One function per subcommand. Each records the files it touches in a
//! [`RunLog`] as it goes, so a failed run still reports what it read.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use stancekit::corpus::{
    build_user_documents, filter_active_users, generate_synthetic_corpus, read_labels_path, read_tweet_files,
    retweet_counts, stratified_sample_by_activity, text::fold_case, write_labels, write_tweets, Tweet,
};
use stancekit::discovery::{
    assign_disjoint, index_tweets, read_feature_space, score_candidates, write_feature_space, RankedFeatureList,
    TokenKind,
};
use stancekit::eval::{
    evaluate_baseline, run_sweep, stratified_folds, FeatureSpec, Featurizer, FittedRanking, PreparedFolds, SweepPlan,
};
use stancekit::features::{
    document_terms, lda_feature_space, lda_train, read_feature_matrix, write_feature_matrix, write_topic_terms,
    FeatureMatrix, LdaConfig,
};
use stancekit::learn::write_model;
use stancekit::{
    Classifier, ClassifierKind, ConfusionMatrix, Error, FeatureKind, LabeledCorpus, SeedSets, SynthConfig, TrainConfig,
};

use crate::args::*;

/// Failure of a subcommand, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flag values that parsing could not catch.
    Usage(String),
    /// Errors from the pipeline itself.
    Data(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Data(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Data(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(Error::Io(e))
    }
}

type CliResult<T = ()> = Result<T, CliError>;

#[derive(Debug, Default)]
pub struct RunLog {
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    pub seed: Option<u64>,
    pub out_dir: Option<PathBuf>,
}

impl RunLog {
    fn seed(&mut self, requested: Option<u64>) -> u64 {
        let seed = requested.unwrap_or_else(|| {
            let s = rand::random::<u64>();
            eprintln!("seed: {s}");
            s
        });
        self.seed = Some(seed);
        seed
    }

    fn out_dir(&mut self, dir: &Path) -> CliResult<PathBuf> {
        fs::create_dir_all(dir)?;
        self.out_dir = Some(dir.to_path_buf());
        Ok(dir.to_path_buf())
    }

    fn create(&mut self, path: PathBuf) -> CliResult<BufWriter<File>> {
        let file = File::create(&path)?;
        self.outputs.push(path);
        Ok(BufWriter::new(file))
    }

    fn write_text(&mut self, path: PathBuf, text: &str) -> CliResult {
        let mut w = self.create(path)?;
        w.write_all(text.as_bytes())?;
        w.flush()?;
        Ok(())
    }
}

fn feature_kind(s: &str) -> CliResult<FeatureKind> {
    s.parse().map_err(|_| CliError::Usage(format!("--features: unknown feature kind {s:?}")))
}

fn classifier_kind(s: &str) -> CliResult<ClassifierKind> {
    s.parse().map_err(|_| CliError::Usage(format!("--classifier: unknown classifier {s:?}")))
}

fn seed_sets(a: &SeedArgs) -> CliResult<SeedSets> {
    SeedSets::new(a.seeds_yes.iter().cloned(), a.seeds_no.iter().cloned()).map_err(|e| CliError::Usage(e.to_string()))
}

fn read_tweets(paths: &[PathBuf], log: &mut RunLog) -> CliResult<Vec<Tweet>> {
    log.inputs.extend(paths.iter().cloned());
    Ok(read_tweet_files(paths)?)
}

fn load_corpus(a: &CorpusArgs, log: &mut RunLog) -> CliResult<LabeledCorpus> {
    let tweets = read_tweets(&a.corpus, log)?;
    log.inputs.push(a.labels.clone());
    let labels = read_labels_path(&a.labels)?;
    Ok(build_user_documents(&tweets, &labels)?)
}

fn lda_config(a: &LdaArgs, seed: u64) -> LdaConfig {
    LdaConfig {
        n_topics: a.topics,
        iterations: a.iterations,
        dict_size: a.dict_size,
        sample_size: a.sample_size,
        alpha: a.alpha.unwrap_or(50.0 / a.topics.max(1) as f64),
        beta: a.beta,
        rng_seed: seed,
    }
}

fn train_config(kind: ClassifierKind, a: &LearnerArgs, seed: u64) -> TrainConfig {
    TrainConfig {
        kind,
        c: a.c,
        tol: a.tol,
        max_epochs: a.max_epochs,
        min_leaf: a.min_leaf,
        max_depth: a.max_depth,
        n_trees: a.trees,
        features_per_split: a.features_per_split,
        bootstrap: !a.no_bootstrap,
        rng_seed: seed,
    }
}

fn metrics_text(m: &ConfusionMatrix) -> CliResult<String> {
    let mut s = format!("accuracy\t{:.6}\n", m.accuracy()?);
    for (label, metrics) in stancekit::ClassLabel::ALL.iter().zip(m.per_class_metrics()) {
        let fmt = |v: Option<f64>| v.map_or("undefined".to_string(), |x| format!("{x:.6}"));
        s.push_str(&format!("{label}\tprecision\t{}\trecall\t{}\n", fmt(metrics.precision), fmt(metrics.recall)));
    }
    Ok(s)
}

pub fn synth(a: &SynthArgs, log: &mut RunLog) -> CliResult {
    let seed = log.seed(a.seed);
    let proportions: [f64; 3] = a
        .proportions
        .as_slice()
        .try_into()
        .map_err(|_| CliError::Usage("--proportions takes exactly three values".into()))?;
    let cfg = SynthConfig {
        n_users: a.users,
        class_proportions: proportions,
        tweets_per_user: (a.tweets_min, a.tweets_max),
        words_per_tweet: (a.words_min, a.words_max),
        vocab_per_class: a.vocab_per_class,
        shared_vocab: a.shared_vocab,
        class_word_rate: a.class_word_rate,
        hashtags_per_class: a.hashtags_per_class,
        hashtag_rate: a.hashtag_rate,
        seed_rate: a.seed_rate,
        injection_rate: a.injection_rate,
        spam_topics: a.spam_topics,
        noise_vocab: a.noise_vocab,
        noise_word_rate: a.noise_word_rate,
        noise_words_per_user: a.noise_words_per_user,
        retweet_rate: a.retweet_rate,
        rng_seed: seed,
    };
    let synthetic = generate_synthetic_corpus(&cfg)?;
    let dir = log.out_dir(&a.out)?;
    let mut w = log.create(dir.join("tweets.jsonl"))?;
    write_tweets(&mut w, &synthetic.tweets)?;
    w.flush()?;
    let mut w = log.create(dir.join("labels.tsv"))?;
    write_labels(&mut w, &synthetic.labels)?;
    w.flush()?;
    let planted = serde_json::to_string_pretty(&synthetic.planted).map_err(|e| CliError::Data(Error::Io(e.into())))?;
    log.write_text(dir.join("planted.json"), &(planted + "\n"))?;
    println!("{} tweets from {} users", synthetic.tweets.len(), synthetic.labels.len());
    Ok(())
}

pub fn ingest(a: &IngestArgs, log: &mut RunLog) -> CliResult {
    let mut tweets = read_tweets(&a.corpus, log)?;
    let total = tweets.len();
    if !a.keywords.is_empty() {
        let keywords: Vec<String> = a.keywords.iter().map(|k| fold_case(k)).collect();
        tweets.retain(|t| {
            let text = fold_case(&t.text);
            keywords.iter().any(|k| text.contains(k.as_str()))
        });
    }
    if a.min_retweets > 0 {
        let active = filter_active_users(&tweets, a.min_retweets);
        tweets.retain(|t| active.contains(&t.user_id));
    }
    let dir = log.out_dir(&a.out)?;
    let mut w = log.create(dir.join("tweets.jsonl"))?;
    write_tweets(&mut w, &tweets)?;
    w.flush()?;
    println!("kept {} of {} tweets", tweets.len(), total);
    Ok(())
}

pub fn sample(a: &SampleArgs, log: &mut RunLog) -> CliResult {
    let seed = log.seed(a.seed);
    let tweets = read_tweets(&a.corpus, log)?;
    let active = filter_active_users(&tweets, a.min_retweets);
    let stats: BTreeMap<String, usize> =
        retweet_counts(&tweets).into_iter().filter(|(u, _)| active.contains(u)).collect();
    let picked = stratified_sample_by_activity(&stats, a.n, a.strata, seed)?;
    let dir = log.out_dir(&a.out)?;
    let mut body = String::new();
    for user in &picked {
        body.push_str(&format!("{user}\t{}\n", stats[user]));
    }
    log.write_text(dir.join("sample.tsv"), &body)?;
    println!("sampled {} of {} active users", picked.len(), stats.len());
    Ok(())
}

fn write_ranked(log: &mut RunLog, path: PathBuf, list: &RankedFeatureList) -> CliResult {
    let mut body = String::new();
    for (rank, (token, score)) in list.entries().iter().enumerate() {
        body.push_str(&format!("{}\t{token}\t{score:.17}\n", rank + 1));
    }
    log.write_text(path, &body)
}

pub fn discover(a: &DiscoverArgs, log: &mut RunLog) -> CliResult {
    let seeds = seed_sets(&a.seeds)?;
    let kind = feature_kind(&a.features)?;
    let token_kind = match kind {
        FeatureKind::Hashtag => TokenKind::Hashtag,
        FeatureKind::Bow => TokenKind::Word,
        _ => return Err(CliError::Usage("discover supports --features hashtag or bow".into())),
    };
    let tweets = read_tweets(&a.corpus, log)?;
    let index = match &a.labels {
        Some(path) => {
            log.inputs.push(path.clone());
            let corpus = build_user_documents(&tweets, &read_labels_path(path)?)?;
            index_tweets(corpus.tweets(), &seeds, token_kind)?
        }
        None => index_tweets(&tweets, &seeds, token_kind)?,
    };
    let (yes, no) = score_candidates(&index);
    let (yes, no) = assign_disjoint(&yes, &no, &seeds);
    let space = stancekit::discovery::build_feature_space(&yes, &no, a.k, kind);
    let dir = log.out_dir(&a.out)?;
    write_ranked(log, dir.join("ranked_yes.tsv"), &yes)?;
    write_ranked(log, dir.join("ranked_no.tsv"), &no)?;
    let mut w = log.create(dir.join("features.tsv"))?;
    write_feature_space(&mut w, &space, &seeds)?;
    w.flush()?;
    println!("{} yes and {} no candidates; feature space of {}", yes.len(), no.len(), space.len());
    Ok(())
}

pub fn lda_train_cmd(a: &LdaTrainArgs, log: &mut RunLog) -> CliResult {
    let seed = log.seed(a.seed);
    let corpus = load_corpus(&a.data, log)?;
    let model = lda_train(&corpus, &lda_config(&a.lda, seed))?;
    let dir = log.out_dir(&a.out)?;
    let mut w = log.create(dir.join("topics.json"))?;
    write_topic_terms(&mut w, &model.topics)?;
    w.flush()?;
    if let Some(k) = a.k {
        let space = lda_feature_space(&model.topics, k);
        let mut w = log.create(dir.join("features.tsv"))?;
        write_feature_space(&mut w, &space, &SeedSets::default())?;
        w.flush()?;
    }
    let mut body = String::new();
    for t in 0..model.topics.n_topics {
        let terms: Vec<&str> = model.topics.top_terms(t, 10).into_iter().map(|(term, _)| term).collect();
        body.push_str(&format!("{t}\t{}\n", terms.join(" ")));
    }
    print!("{body}");
    Ok(())
}

pub fn featurize(a: &FeaturizeArgs, log: &mut RunLog) -> CliResult {
    let seed = log.seed(a.seed);
    let seeds = seed_sets(&a.seeds)?;
    let kind = feature_kind(&a.features)?;
    let corpus = load_corpus(&a.data, log)?;
    let space = match (&a.space, a.k) {
        (Some(path), _) => {
            log.inputs.push(path.clone());
            let (space, _) = read_feature_space(BufReader::new(File::open(path)?))?;
            if space.kind() != kind {
                return Err(CliError::Usage(format!(
                    "--space holds a {} space but --features is {}",
                    space.kind().as_str(),
                    kind.as_str()
                )));
            }
            space
        }
        (None, Some(k)) => {
            let spec = FeatureSpec { kind, seeds: seeds.clone(), lda: lda_config(&a.lda, seed) };
            FittedRanking::fit(&spec, &corpus)?.space(kind, k)
        }
        (None, None) => return Err(CliError::Usage("featurize needs --k or --space".into())),
    };
    let terms: Vec<Vec<String>> = corpus.documents().iter().map(|d| document_terms(d, kind)).collect();
    let term_refs: Vec<&[String]> = terms.iter().map(Vec::as_slice).collect();
    let featurizer = Featurizer::new(space, &term_refs)?;
    let rows = corpus
        .documents()
        .iter()
        .zip(&terms)
        .map(|(d, t)| (d.user_id().to_string(), featurizer.vectorize_terms(t), d.label()))
        .collect();
    let matrix = FeatureMatrix::new(featurizer.space.len(), rows)?;
    let dir = log.out_dir(&a.out)?;
    let mut w = log.create(dir.join("features.tsv"))?;
    write_feature_space(&mut w, &featurizer.space, &seeds)?;
    w.flush()?;
    let mut w = log.create(dir.join("matrix.tsv"))?;
    write_feature_matrix(&mut w, &matrix)?;
    w.flush()?;
    println!("{} users x {} features", matrix.len(), matrix.dimension());
    Ok(())
}

pub fn train(a: &TrainArgs, log: &mut RunLog) -> CliResult {
    let seed = log.seed(a.seed);
    let kind = classifier_kind(&a.classifier)?;
    log.inputs.push(a.matrix.clone());
    let matrix = read_feature_matrix(BufReader::new(File::open(&a.matrix)?))?;
    let model = Classifier::train(&matrix, &train_config(kind, &a.learner, seed))?;
    let mut training = ConfusionMatrix::default();
    for (_, v, truth) in matrix.rows() {
        training.record(*truth, model.predict(v)?);
    }
    let dir = log.out_dir(&a.out)?;
    let mut w = log.create(dir.join("model.json"))?;
    write_model(&mut w, &model)?;
    w.flush()?;
    println!("training accuracy {:.6}", training.accuracy()?);
    Ok(())
}

pub fn cv(a: &CvArgs, log: &mut RunLog) -> CliResult {
    let seed = log.seed(a.seed);
    let seeds = seed_sets(&a.seeds)?;
    let kind = feature_kind(&a.features)?;
    let classifier = classifier_kind(&a.classifier)?;
    let corpus = load_corpus(&a.data, log)?;
    let folds = stratified_folds(&corpus, a.folds, seed)?;
    let spec = FeatureSpec { kind, seeds, lda: lda_config(&a.lda, seed) };
    let prepared = PreparedFolds::new(&corpus, &spec, &folds)?;
    let matrix = prepared.evaluate_classifier(a.k, &train_config(classifier, &a.learner, seed))?;
    let metrics = metrics_text(&matrix)?;
    if let Some(out) = &a.out {
        let dir = log.out_dir(out)?;
        let stem = format!("{}_{}_{}", kind.as_str(), a.k, classifier.as_str());
        log.write_text(dir.join(format!("{stem}.cm")), &matrix.to_string())?;
        log.write_text(dir.join(format!("{stem}.metrics.tsv")), &metrics)?;
    }
    print!("{matrix}{metrics}");
    Ok(())
}

pub fn sweep(a: &SweepArgs, log: &mut RunLog) -> CliResult {
    let seed = log.seed(a.seed);
    let seeds = seed_sets(&a.seeds)?;
    let mut grids = Vec::new();
    let mut include_baseline = false;
    for name in &a.features {
        if name == stancekit::eval::BASELINE {
            include_baseline = true;
            continue;
        }
        let kind = feature_kind(name)?;
        let grid = if a.k_grid.is_empty() { kind.default_k_grid().to_vec() } else { a.k_grid.clone() };
        grids.push((kind, grid));
    }
    let classifiers = a.classifier.iter().map(|c| classifier_kind(c)).collect::<CliResult<Vec<_>>>()?;
    let plan = SweepPlan {
        grids,
        classifiers,
        include_baseline,
        seeds,
        lda: lda_config(&a.lda, seed),
        train: train_config(ClassifierKind::Svm, &a.learner, seed),
    };
    let corpus = load_corpus(&a.data, log)?;
    let folds = stratified_folds(&corpus, a.folds, seed)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = a.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build().map_err(|e| CliError::Usage(e.to_string()))?;
    let result = pool.install(|| run_sweep(&corpus, &plan, &folds))?;
    let dir = log.out_dir(&a.out)?;
    log.outputs.extend(result.write_report(&dir)?);
    print!("{}", result.summary_csv());
    Ok(())
}

pub fn baseline(a: &BaselineArgs, log: &mut RunLog) -> CliResult {
    let seeds = seed_sets(&a.seeds)?;
    let corpus = load_corpus(&a.data, log)?;
    let matrix = evaluate_baseline(&corpus, &seeds);
    let metrics = metrics_text(&matrix)?;
    if let Some(out) = &a.out {
        let dir = log.out_dir(out)?;
        log.write_text(dir.join("baseline_0_baseline.cm"), &matrix.to_string())?;
        log.write_text(dir.join("baseline.metrics.tsv"), &metrics)?;
    }
    print!("{matrix}{metrics}");
    Ok(())
}

pub fn report(a: &ReportArgs, log: &mut RunLog) -> CliResult {
    let mut body = String::from("matrix\taccuracy\tyes_precision\tyes_recall\tno_precision\tno_recall\tambiguous_precision\tambiguous_recall\n");
    for path in &a.matrices {
        log.inputs.push(path.clone());
        let m: ConfusionMatrix = fs::read_to_string(path)?.parse()?;
        body.push_str(&format!("{}\t{:.6}", path.display(), m.accuracy()?));
        for metrics in m.per_class_metrics() {
            for v in [metrics.precision, metrics.recall] {
                body.push_str(&v.map_or("\tundefined".to_string(), |x| format!("\t{x:.6}")));
            }
        }
        body.push('\n');
    }
    if let Some(out) = &a.out {
        let dir = log.out_dir(out)?;
        log.write_text(dir.join("report.tsv"), &body)?;
    }
    print!("{body}");
    Ok(())
}
