//! Flat `key=value` run configuration.

use std::fmt::Write as _;
use std::path::PathBuf;

use harmsum_core::Fq;
use sha2::{Digest, Sha256};

use crate::CliError;

pub const DEFAULT_BUDGET: f64 = 1e8;

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub p: u32,
    pub e: u32,
    /// Field modulus, constant-first.
    pub f: Vec<u8>,
    /// Subcommand path such as `verify h-grid`.
    pub command: String,
    pub s: Vec<usize>,
    pub d_lo: Option<usize>,
    pub d_hi: Option<usize>,
    pub maxdeg: Option<usize>,
    pub n_max: Option<u64>,
    pub s_max: Option<usize>,
    pub budget: f64,
    pub out_dir: PathBuf,
    pub cache_dir: PathBuf,
    pub threads: usize,
    pub force: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: 2,
            e: 1,
            f: vec![0, 1],
            command: String::new(),
            s: Vec::new(),
            d_lo: None,
            d_hi: None,
            maxdeg: None,
            n_max: None,
            s_max: None,
            budget: DEFAULT_BUDGET,
            out_dir: PathBuf::from("harmsum-out"),
            cache_dir: PathBuf::from("harmsum-cache"),
            threads: 1,
            force: false,
        }
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>, CliError> {
    if v.trim().is_empty() {
        return Ok(Vec::new());
    }
    v.split(',').map(|x| x.trim().parse().map_err(|_| CliError::Usage(format!("{key}: bad entry {x:?}")))).collect()
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.trim().parse().map_err(|_| CliError::Usage(format!("{key}: cannot parse {v:?}")))
}

impl RunConfig {
    pub fn field(&self) -> Result<Fq, CliError> {
        let fq = Fq::new(self.p, &self.f).map_err(|e| CliError::Usage(e.to_string()))?;
        if fq.e() != self.e {
            return Err(CliError::Usage(format!("e = {} but f has degree {}", self.e, fq.e())));
        }
        Ok(fq)
    }

    /// Switch to the default field of order q.
    pub fn set_q(&mut self, q: u32) -> Result<(), CliError> {
        let fq = Fq::with_order(q).map_err(|e| CliError::Usage(format!("q = {q}: {e}")))?;
        self.p = fq.p();
        self.e = fq.e();
        self.f = fq.modulus().to_vec();
        Ok(())
    }

    /// Keys that determine results; paths, threads and the override flag are excluded.
    fn semantic_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p={}", self.p);
        let _ = writeln!(out, "e={}", self.e);
        let _ = writeln!(out, "f={}", join(&self.f));
        let _ = writeln!(out, "command={}", self.command);
        let _ = writeln!(out, "s={}", join(&self.s));
        for (k, v) in [("d_lo", self.d_lo), ("d_hi", self.d_hi), ("maxdeg", self.maxdeg), ("s_max", self.s_max)] {
            if let Some(v) = v {
                let _ = writeln!(out, "{k}={v}");
            }
        }
        if let Some(n) = self.n_max {
            let _ = writeln!(out, "n_max={n}");
        }
        let _ = writeln!(out, "budget={}", self.budget);
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = self.semantic_text();
        let _ = writeln!(out, "out_dir={}", self.out_dir.display());
        let _ = writeln!(out, "cache_dir={}", self.cache_dir.display());
        let _ = writeln!(out, "threads={}", self.threads);
        let _ = writeln!(out, "force={}", self.force);
        out
    }

    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.semantic_text().as_bytes()))
    }

    /// Parse `key=value` lines over the defaults; `#` starts a comment. A `q=` line
    /// selects the default field of that order.
    pub fn parse(text: &str) -> Result<RunConfig, CliError> {
        let mut c = RunConfig::default();
        let mut field_set = false;
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", no + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            let opt = |v: &str| -> Result<Option<usize>, CliError> {
                if v.is_empty() {
                    Ok(None)
                } else {
                    num(k, v).map(Some)
                }
            };
            match k {
                "q" => {
                    if field_set {
                        return Err(CliError::Usage("q= conflicts with p=/e=/f=".into()));
                    }
                    c.set_q(num(k, v)?)?
                }
                "p" => {
                    c.p = num(k, v)?;
                    field_set = true;
                }
                "e" => {
                    c.e = num(k, v)?;
                    field_set = true;
                }
                "f" => {
                    c.f = list(k, v)?;
                    field_set = true;
                }
                "command" => c.command = v.to_string(),
                "s" => c.s = list(k, v)?,
                "d_lo" => c.d_lo = opt(v)?,
                "d_hi" => c.d_hi = opt(v)?,
                "maxdeg" => c.maxdeg = opt(v)?,
                "s_max" => c.s_max = opt(v)?,
                "n_max" => c.n_max = opt(v)?.map(|n| n as u64),
                "budget" => c.budget = num(k, v)?,
                "out_dir" => c.out_dir = PathBuf::from(v),
                "cache_dir" => c.cache_dir = PathBuf::from(v),
                "threads" => c.threads = num(k, v)?,
                "force" => c.force = num(k, v)?,
                _ => return Err(CliError::Usage(format!("config line {}: unknown key {k:?}", no + 1))),
            }
        }
        Ok(c)
    }
}
