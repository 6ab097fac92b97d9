//! Result bundles: a deterministic text report plus named artifacts, with timing kept apart.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Duration;

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Finding,
    Fail,
}

impl Status {
    pub fn tag(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Finding => "finding",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub status: Status,
    pub name: String,
    /// Coordinates such as `q=3 s=5 d=4`.
    pub at: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct ResultBundle {
    pub command: String,
    pub config_hash: String,
    pub config_text: String,
    pub checks: Vec<Check>,
    /// (file name, contents)
    pub artifacts: Vec<(String, String)>,
    pub notes: Vec<String>,
    pub incomplete: Option<String>,
    pub timing: Vec<(String, Duration)>,
}

impl ResultBundle {
    pub fn new(cfg: &RunConfig) -> ResultBundle {
        let text = cfg.to_text();
        // paths and thread count are not part of the result
        let config_text = text
            .lines()
            .filter(|l| !["out_dir=", "cache_dir=", "threads=", "force="].iter().any(|k| l.starts_with(k)))
            .map(|l| format!("{l}\n"))
            .collect();
        ResultBundle { command: cfg.command.clone(), config_hash: cfg.hash(), config_text, ..Default::default() }
    }

    pub fn check(&mut self, status: Status, name: &str, at: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(Check { status, name: name.into(), at: at.into(), detail: detail.into() });
    }

    pub fn pass_if(&mut self, ok: bool, name: &str, at: impl Into<String>, detail: impl Into<String>) {
        self.check(if ok { Status::Pass } else { Status::Fail }, name, at, detail);
    }

    pub fn artifact(&mut self, name: impl Into<String>, body: impl Into<String>) {
        self.artifacts.push((name.into(), body.into()));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn worst(&self) -> Status {
        self.checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass)
    }

    /// 0 pass, 1 hard failure, 2 finding, 3 incomplete.
    pub fn exit_code(&self) -> u8 {
        match self.worst() {
            Status::Fail => 1,
            _ if self.incomplete.is_some() => 3,
            Status::Finding => 2,
            Status::Pass => 0,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::from("harmsum-bundle\n");
        let _ = writeln!(out, "command={}", self.command);
        let _ = writeln!(out, "config_sha256={}", self.config_hash);
        let status = match (&self.incomplete, self.worst()) {
            (_, Status::Fail) => "fail",
            (Some(_), _) => "incomplete",
            (None, s) => s.tag(),
        };
        let _ = writeln!(out, "status={status}");
        if let Some(why) = &self.incomplete {
            let _ = writeln!(out, "incomplete={why}");
        }
        let count = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        let _ = writeln!(
            out,
            "checks={} pass={} finding={} fail={}",
            self.checks.len(),
            count(Status::Pass),
            count(Status::Finding),
            count(Status::Fail)
        );
        out.push_str("[config]\n");
        out.push_str(&self.config_text);
        out.push_str("[checks]\n");
        for c in &self.checks {
            let _ = writeln!(out, "{}\t{}\t{}\t{}", c.status.tag(), c.name, c.at, c.detail);
        }
        if !self.notes.is_empty() {
            out.push_str("[notes]\n");
            for n in &self.notes {
                let _ = writeln!(out, "{n}");
            }
        }
        out.push_str("[artifacts]\n");
        for (name, body) in &self.artifacts {
            let _ = writeln!(out, "{name}\tbytes={}", body.len());
        }
        out
    }

    pub fn render_timing(&self) -> String {
        let mut out = String::from("[timing]\n");
        for (k, d) in &self.timing {
            let _ = writeln!(out, "{k}\t{:.3}s", d.as_secs_f64());
        }
        out
    }

    pub fn write(&self, dir: &Path) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("bundle.txt"), self.render())?;
        fs::write(dir.join("timing.txt"), self.render_timing())?;
        for (name, body) in &self.artifacts {
            fs::write(dir.join(name), body)?;
        }
        Ok(())
    }
}
