//! Write-once text cache for H_s, one file per (q, f, s).
//!
//! ```text
//! harmsum-h-cache
//! version=1
//! p=3
//! ...
//! sha256=<digest of everything after the --- line>
//! ---
//! Y^0
//! 0,0,1,1,1 : 0,1
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::carlitz::Carlitz;
use crate::error::{Error, Result};
use crate::fq::Fq;
use crate::hpoly::interp::HOLDOUTS;
use crate::hpoly::{h_row, HParams, HPolynomial, Route, RowMode};
use crate::poly::PolyA;
use crate::sums::SymTPoly;

pub const CACHE_VERSION: u32 = 1;
const MAGIC: &str = "harmsum-h-cache";

/// Sign of H_q under the normalization F_d(1;s) = Π_{s,d}·H_s(θ^{q^{d−m}}).
pub const H_Q_SIGN: &str = "+1";

fn body(h: &HPolynomial, fq: &Fq) -> String {
    let mut out = String::new();
    for (i, slice) in h.slices.iter().enumerate() {
        out.push_str(&format!("Y^{i}\n"));
        for (lam, c) in slice.classes() {
            let ks: Vec<String> = lam.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("{} : {}\n", ks.join(","), c.emit(fq)));
        }
    }
    out
}

fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn serialize(h: &HPolynomial, fq: &Fq) -> String {
    let p = h.params;
    let b = body(h, fq);
    let header = [
        MAGIC.to_string(),
        format!("version={CACHE_VERSION}"),
        format!("p={}", fq.p()),
        format!("e={}", fq.e()),
        format!("f={}", fq.modulus_string()),
        format!("q={}", p.q),
        format!("s={}", p.s),
        format!("m={}", p.m),
        format!("mu={}", p.mu),
        format!("route={}", h.route.name()),
        format!("sign={H_Q_SIGN}"),
        format!("slices={}", h.slices.len()),
        format!("sha256={}", digest(&b)),
    ];
    format!("{}\n---\n{b}", header.join("\n"))
}

fn field<'a>(header: &'a [(&'a str, &'a str)], key: &str) -> Result<&'a str> {
    header
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| Error::Parse(format!("cache header lacks `{key}`")))
}

fn num<T: std::str::FromStr>(header: &[(&str, &str)], key: &str) -> Result<T> {
    field(header, key)?.parse().map_err(|_| Error::Parse(format!("bad `{key}` in cache header")))
}

/// Parse and check a cache document against the field it is loaded into.
pub fn parse(text: &str, fq: &Fq) -> Result<HPolynomial> {
    let (head, b) = text.split_once("\n---\n").ok_or_else(|| Error::Parse("cache lacks the --- separator".into()))?;
    let mut lines = head.lines();
    if lines.next() != Some(MAGIC) {
        return Err(Error::Parse("not an H cache file".into()));
    }
    let header: Vec<(&str, &str)> = lines
        .map(|l| l.split_once('=').ok_or_else(|| Error::Parse(format!("bad header line `{l}`"))))
        .collect::<Result<_>>()?;
    if digest(b) != field(&header, "sha256")? {
        return Err(Error::CacheConflict("content hash does not match".into()));
    }
    if num::<u32>(&header, "version")? != CACHE_VERSION {
        return Err(Error::CacheConflict("cache version differs".into()));
    }
    if num::<u32>(&header, "p")? != fq.p()
        || num::<u32>(&header, "e")? != fq.e()
        || field(&header, "f")? != fq.modulus_string()
    {
        return Err(Error::CacheConflict("cache was written for another field".into()));
    }
    if field(&header, "sign")? != H_Q_SIGN {
        return Err(Error::CacheConflict("cache uses another sign normalization".into()));
    }
    let params = HParams::new(num(&header, "q")?, num(&header, "s")?)?;
    if num::<usize>(&header, "m")? != params.m || num::<usize>(&header, "mu")? != params.mu {
        return Err(Error::Parse("m, mu disagree with q, s".into()));
    }
    let route = match field(&header, "route")? {
        "universal" => Route::Universal,
        "vandermonde" => Route::Vandermonde,
        r => return Err(Error::Parse(format!("unknown route `{r}`"))),
    };
    let mut slices: Vec<SymTPoly> = Vec::new();
    for line in b.lines() {
        if let Some(i) = line.strip_prefix("Y^") {
            if i.parse::<usize>().ok() != Some(slices.len()) {
                return Err(Error::Parse(format!("slice `{line}` out of order")));
            }
            slices.push(SymTPoly::zero(params.s));
            continue;
        }
        let (k, c) = line.split_once(" : ").ok_or_else(|| Error::Parse(format!("bad record `{line}`")))?;
        let lam = k
            .split(',')
            .map(|x| x.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{line}`"))))
            .collect::<Result<Vec<_>>>()?;
        if lam.len() != params.s || lam.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Parse(format!("`{k}` is not a sorted class of length {}", params.s)));
        }
        let slice = slices.last_mut().ok_or_else(|| Error::Parse("record before the first slice".into()))?;
        slice.add_class(&lam, &PolyA::parse(c, fq)?, fq);
    }
    if slices.len() != num::<usize>(&header, "slices")? {
        return Err(Error::Parse("slice count differs from header".into()));
    }
    Ok(HPolynomial { params, slices, route })
}

/// Result of a store request.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stored {
    Written,
    /// An identical file was already present.
    Unchanged,
    Overwritten,
}

pub struct HCache {
    dir: PathBuf,
}

impl HCache {
    pub fn new(dir: impl Into<PathBuf>) -> HCache {
        HCache { dir: dir.into() }
    }
    pub fn dir(&self) -> &Path {
        &self.dir
    }
    pub fn path(&self, fq: &Fq, s: usize) -> PathBuf {
        let f = fq.modulus_string().replace([',', ' '], "_");
        self.dir.join(format!("h_q{}_f{f}_s{s}.txt", fq.q()))
    }
    /// Write H; a differing file already on disk is a conflict unless `overwrite`.
    pub fn store(&self, h: &HPolynomial, fq: &Fq, overwrite: bool) -> Result<Stored> {
        let path = self.path(fq, h.s());
        let text = serialize(h, fq);
        let mut outcome = Stored::Written;
        if path.exists() {
            let old = fs::read_to_string(&path)?;
            let same = parse(&old, fq).map(|o| o.slices == h.slices).unwrap_or(false);
            if same {
                return Ok(Stored::Unchanged);
            }
            if !overwrite {
                return Err(Error::CacheConflict(format!("{} holds a different H_{}", path.display(), h.s())));
            }
            outcome = Stored::Overwritten;
        }
        fs::create_dir_all(&self.dir)?;
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, text)?;
        fs::rename(&tmp, &path)?;
        Ok(outcome)
    }
    /// Load H_s if cached, after checking its hash and re-deriving the first holdout row.
    pub fn load(&self, c: &Carlitz, s: usize) -> Result<Option<HPolynomial>> {
        let fq = c.fq();
        let path = self.path(fq, s);
        if !path.exists() {
            return Ok(None);
        }
        let h = parse(&fs::read_to_string(&path)?, fq)?;
        if h.s() != s {
            return Err(Error::CacheConflict(format!("{} describes s = {}", path.display(), h.s())));
        }
        let p = h.params;
        let d = p.m + p.mu + HOLDOUTS - 1;
        let row = h_row(c, s, d, RowMode::Auto)?;
        if row.h != h.eval_frobenius(d - p.m, fq) {
            return Err(Error::CacheConflict(format!("cached H_{s} fails the holdout row d = {d}")));
        }
        Ok(Some(h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpoly::h_universal;

    #[test]
    fn round_trip_and_write_once() {
        let fq = Fq::with_order(3).unwrap();
        let c = Carlitz::new(&fq);
        let h = h_universal(&fq, 5).unwrap();
        assert_eq!(parse(&serialize(&h, &fq), &fq).unwrap(), h);
        let dir = tempfile::tempdir().unwrap();
        let cache = HCache::new(dir.path());
        assert_eq!(cache.store(&h, &fq, false).unwrap(), Stored::Written);
        assert_eq!(cache.store(&h, &fq, false).unwrap(), Stored::Unchanged);
        assert_eq!(cache.load(&c, 5).unwrap(), Some(h.clone()));
        let mut other = h.clone();
        other.slices[0] = other.slices[0].map(|x| x.shift(1));
        assert!(matches!(cache.store(&other, &fq, false), Err(Error::CacheConflict(_))));
        assert_eq!(cache.store(&other, &fq, true).unwrap(), Stored::Overwritten);
        assert!(matches!(cache.load(&c, 5), Err(Error::CacheConflict(_))));
    }

    #[test]
    fn tampering_is_detected() {
        let fq = Fq::with_order(2).unwrap();
        let h = h_universal(&fq, 3).unwrap();
        let text = serialize(&h, &fq);
        let bad = text.replacen(" : 1", " : 0,1", 1);
        assert!(matches!(parse(&bad, &fq), Err(Error::CacheConflict(_))));
        assert!(matches!(parse(&text, &Fq::with_order(4).unwrap()), Err(Error::CacheConflict(_))));
    }
}
