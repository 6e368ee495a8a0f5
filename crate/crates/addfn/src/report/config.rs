//! Experiment configuration: CLI flags, optional flat key=value config file
//! (flags override the file), and the canonical hash used in report metadata.

use crate::additive::{self, AdditiveFunctionSpec};
use crate::error::{Error, Result};
use clap::Args;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl OutputFormat {
    fn parse(s: &str) -> Result<OutputFormat> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Parse(format!("unknown format `{other}` (csv|json)"))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        }
    }
}

/// Shared command-line flags (every subcommand takes the same set).
#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// Flat key=value config file; explicit flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Function: omega | bigomega | clog:<float> | erdos:<prime> | file:<path>
    #[arg(long)]
    pub g: Option<String>,
    /// Scale(s), comma-separated; scientific notation accepted (1e6).
    #[arg(long)]
    pub x: Option<String>,
    /// Window length(s), comma-separated.
    #[arg(long)]
    pub h: Option<String>,
    /// Tail-functional epsilon grid, comma-separated.
    #[arg(long)]
    pub epsilon: Option<String>,
    /// Generic small parameter (affine-fit exponent, split threshold).
    #[arg(long)]
    pub delta: Option<f64>,
    /// Sieve-band parameter eta in (0, 1/12).
    #[arg(long)]
    pub eta: Option<f64>,
    /// Almost-everywhere comparison threshold.
    #[arg(long)]
    pub theta: Option<f64>,
    /// Output format: csv | json.
    #[arg(long)]
    pub format: Option<String>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (0 = library default).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Segment size for sieved scans.
    #[arg(long = "segment-size")]
    pub segment_size: Option<usize>,
    /// Also emit a static SVG plot next to --out.
    #[arg(long)]
    pub plot: bool,
    /// Seed for property sampling (dualtk pm1 sequence, divisor-bound samples).
    #[arg(long)]
    pub seed: Option<u64>,
    /// dualtk sequence: ones | erdos:<prime> | pm1.
    #[arg(long)]
    pub a: Option<String>,
    /// Sparse-set file (newline-delimited integers) for the sparse command.
    #[arg(long = "sparse-file")]
    pub sparse_file: Option<PathBuf>,
    /// Twist parameter t for the pretentious command.
    #[arg(long)]
    pub t: Option<f64>,
    /// Minimization range T for the pretentious command.
    #[arg(long = "big-t")]
    pub big_t: Option<f64>,
    /// l2 bound exponent gamma (existence-only constant).
    #[arg(long)]
    pub gamma: Option<f64>,
}

/// Fully resolved configuration; invariant: a fixed config (including
/// threads) produces byte-identical artifacts.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub g: String,
    pub x_list: Vec<u64>,
    pub h_list: Vec<u64>,
    pub epsilon_list: Vec<f64>,
    pub delta: f64,
    pub eta: f64,
    pub theta: f64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub threads: usize,
    pub segment_size: usize,
    pub plot: bool,
    pub seed: u64,
    pub a_seq: String,
    pub sparse_file: Option<PathBuf>,
    pub t: f64,
    pub big_t: f64,
    pub gamma: Option<f64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            g: "omega".into(),
            x_list: vec![1_000_000],
            h_list: vec![10, 100, 1000],
            epsilon_list: vec![0.5, 0.4, 0.25, 0.1],
            delta: 0.25,
            eta: 0.05,
            theta: 0.1,
            format: OutputFormat::Json,
            out: None,
            threads: 0,
            segment_size: crate::sieve::DEFAULT_SEGMENT_SIZE,
            plot: false,
            seed: 0,
            a_seq: "ones".into(),
            sparse_file: None,
            t: 0.1,
            big_t: 5.0,
            gamma: None,
        }
    }
}

fn parse_scale(s: &str) -> Result<u64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad numeric value `{s}`: {e}")))?;
    if !v.is_finite() || !(1.0..=1e12).contains(&v) {
        return Err(Error::Parse(format!("scale `{s}` outside [1, 1e12]")));
    }
    Ok(v.round() as u64)
}

fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_scale)
        .collect()
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad float `{t}`: {e}")))
        })
        .collect()
}

impl ExperimentConfig {
    /// Resolves config-file values first, then applies explicit flags on top.
    pub fn from_args(args: &CommonArgs) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::default();
        if let Some(path) = &args.config {
            cfg.apply_file(path)?;
        }
        if let Some(g) = &args.g {
            cfg.g = g.clone();
        }
        if let Some(x) = &args.x {
            cfg.x_list = parse_u64_list(x)?;
        }
        if let Some(h) = &args.h {
            cfg.h_list = parse_u64_list(h)?;
        }
        if let Some(e) = &args.epsilon {
            cfg.epsilon_list = parse_f64_list(e)?;
        }
        if let Some(v) = args.delta {
            cfg.delta = v;
        }
        if let Some(v) = args.eta {
            cfg.eta = v;
        }
        if let Some(v) = args.theta {
            cfg.theta = v;
        }
        if let Some(f) = &args.format {
            cfg.format = OutputFormat::parse(f)?;
        }
        if let Some(o) = &args.out {
            cfg.out = Some(o.clone());
        }
        if let Some(v) = args.threads {
            cfg.threads = v;
        }
        if let Some(v) = args.segment_size {
            if v == 0 {
                return Err(Error::Parse("segment-size must be positive".into()));
            }
            cfg.segment_size = v;
        }
        if args.plot {
            cfg.plot = true;
        }
        if let Some(v) = args.seed {
            cfg.seed = v;
        }
        if let Some(a) = &args.a {
            cfg.a_seq = a.clone();
        }
        if let Some(p) = &args.sparse_file {
            cfg.sparse_file = Some(p.clone());
        }
        if let Some(v) = args.t {
            cfg.t = v;
        }
        if let Some(v) = args.big_t {
            cfg.big_t = v;
        }
        if let Some(v) = args.gamma {
            cfg.gamma = Some(v);
        }
        if cfg.x_list.is_empty() {
            return Err(Error::Parse("at least one scale --x is required".into()));
        }
        Ok(cfg)
    }

    fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!("config line {}: expected key=value", lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            let bad = |e: String| Error::Parse(format!("config line {}: {e}", lineno + 1));
            match key {
                "g" => self.g = value.to_string(),
                "x" => self.x_list = parse_u64_list(value).map_err(|e| bad(e.to_string()))?,
                "h" => self.h_list = parse_u64_list(value).map_err(|e| bad(e.to_string()))?,
                "epsilon" => {
                    self.epsilon_list = parse_f64_list(value).map_err(|e| bad(e.to_string()))?
                }
                "delta" => self.delta = value.parse().map_err(|e| bad(format!("{e}")))?,
                "eta" => self.eta = value.parse().map_err(|e| bad(format!("{e}")))?,
                "theta" => self.theta = value.parse().map_err(|e| bad(format!("{e}")))?,
                "format" => self.format = OutputFormat::parse(value)?,
                "out" => self.out = Some(PathBuf::from(value)),
                "threads" => self.threads = value.parse().map_err(|e| bad(format!("{e}")))?,
                "segment-size" => {
                    self.segment_size = value.parse().map_err(|e| bad(format!("{e}")))?
                }
                "plot" => self.plot = value.parse().map_err(|e| bad(format!("{e}")))?,
                "seed" => self.seed = value.parse().map_err(|e| bad(format!("{e}")))?,
                "a" => self.a_seq = value.to_string(),
                "sparse-file" => self.sparse_file = Some(PathBuf::from(value)),
                "t" => self.t = value.parse().map_err(|e| bad(format!("{e}")))?,
                "big-t" => self.big_t = value.parse().map_err(|e| bad(format!("{e}")))?,
                "gamma" => self.gamma = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
                other => return Err(bad(format!("unknown key `{other}`"))),
            }
        }
        Ok(())
    }

    /// Builds the additive function named by `--g`.
    pub fn function(&self) -> Result<AdditiveFunctionSpec> {
        parse_function(&self.g)
    }

    /// Canonical, order-fixed rendering of every computation-relevant field
    /// (the output destination is excluded: where an artifact lands does not
    /// change what was computed).
    pub fn canonical_string(&self) -> String {
        let join_u = |v: &[u64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let join_f = |v: &[f64]| {
            v.iter()
                .map(|x| format!("{x:e}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut s = String::new();
        s.push_str(&format!("a={}\n", self.a_seq));
        s.push_str(&format!("big-t={:e}\n", self.big_t));
        s.push_str(&format!("delta={:e}\n", self.delta));
        s.push_str(&format!("epsilon={}\n", join_f(&self.epsilon_list)));
        s.push_str(&format!("eta={:e}\n", self.eta));
        s.push_str(&format!("format={}\n", self.format.as_str()));
        s.push_str(&format!("g={}\n", self.g));
        s.push_str(&format!(
            "gamma={}\n",
            self.gamma.map(|v| format!("{v:e}")).unwrap_or_default()
        ));
        s.push_str(&format!("h={}\n", join_u(&self.h_list)));
        s.push_str(&format!("plot={}\n", self.plot));
        s.push_str(&format!("seed={}\n", self.seed));
        s.push_str(&format!("segment-size={}\n", self.segment_size));
        s.push_str(&format!(
            "sparse-file={}\n",
            self.sparse_file
                .as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_default()
        ));
        s.push_str(&format!("t={:e}\n", self.t));
        s.push_str(&format!("theta={:e}\n", self.theta));
        s.push_str(&format!("threads={}\n", self.threads));
        s.push_str(&format!("x={}\n", join_u(&self.x_list)));
        s
    }

    pub fn config_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.canonical_string().as_bytes());
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// `omega | bigomega | clog:<float> | erdos:<prime> | file:<path>`.
pub fn parse_function(spec: &str) -> Result<AdditiveFunctionSpec> {
    match spec {
        "omega" => Ok(additive::omega()),
        "bigomega" => Ok(additive::big_omega()),
        other => {
            if let Some(c) = other.strip_prefix("clog:") {
                let c: f64 = c
                    .parse()
                    .map_err(|e| Error::Parse(format!("clog parameter: {e}")))?;
                additive::c_log(c)
            } else if let Some(p) = other.strip_prefix("erdos:") {
                let p: u64 = p
                    .parse()
                    .map_err(|e| Error::Parse(format!("erdos parameter: {e}")))?;
                additive::erdos_counterexample(p)
            } else if let Some(path) = other.strip_prefix("file:") {
                additive::from_file(Path::new(path))
            } else {
                Err(Error::Parse(format!(
                    "unknown function `{other}` (omega | bigomega | clog:<c> | erdos:<p> | file:<path>)"
                )))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn flag_parsing_and_defaults() {
        let args = CommonArgs {
            g: Some("clog:2.5".into()),
            x: Some("1e4,20000".into()),
            h: Some("10,50".into()),
            ..Default::default()
        };
        let cfg = ExperimentConfig::from_args(&args).unwrap();
        assert_eq!(cfg.x_list, vec![10_000, 20_000]);
        assert_eq!(cfg.h_list, vec![10, 50]);
        assert_eq!(cfg.segment_size, crate::sieve::DEFAULT_SEGMENT_SIZE);
        assert!(cfg.function().is_ok());
    }

    #[test]
    fn config_file_with_flag_override() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "g=bigomega\nx=1000\nseed=9\n# comment\nthreads=2").unwrap();
        let args = CommonArgs {
            config: Some(f.path().to_path_buf()),
            x: Some("2e3".into()),
            ..Default::default()
        };
        let cfg = ExperimentConfig::from_args(&args).unwrap();
        assert_eq!(cfg.g, "bigomega");
        assert_eq!(cfg.x_list, vec![2000]); // flag wins
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.threads, 2);
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let cfg = ExperimentConfig::default();
        let h1 = cfg.config_hash();
        let h2 = cfg.config_hash();
        assert_eq!(h1, h2);
        let mut cfg2 = cfg.clone();
        cfg2.seed = 1;
        assert_ne!(h1, cfg2.config_hash());
    }

    #[test]
    fn function_grammar() {
        assert!(parse_function("omega").is_ok());
        assert!(parse_function("bigomega").is_ok());
        assert!(parse_function("clog:3.5").is_ok());
        assert!(parse_function("erdos:101").is_ok());
        assert!(parse_function("erdos:100").is_err()); // not prime
        assert!(parse_function("mystery").is_err());
    }

    #[test]
    fn bad_inputs_are_parse_errors() {
        let args = CommonArgs {
            x: Some("nope".into()),
            ..Default::default()
        };
        assert!(matches!(
            ExperimentConfig::from_args(&args),
            Err(Error::Parse(_))
        ));
        let args = CommonArgs {
            format: Some("yaml".into()),
            ..Default::default()
        };
        assert!(ExperimentConfig::from_args(&args).is_err());
    }
}
