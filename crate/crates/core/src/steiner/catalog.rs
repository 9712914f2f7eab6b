//! The STS catalog: enumeration results, their on-disk cache and its format.
//!
//! A catalog file is a one-line JSON header
//! `{"k": k, "count": s_k, "generator": "..."}` followed by one `.h3`
//! block per system, blocks separated by lines consisting of `---`.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_classes, EnumStats, DEFAULT_MAX_K};
use super::{is_sts, SteinerTripleSystem};
use crate::budget::Budget;
use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::hypergraph::io::{parse_h3, write_h3};

/// Identifies the code that produced a catalog; bump the suffix when the
/// enumerator or canonical form changes.
pub const GENERATOR: &str = concat!("cancellative-core ", env!("CARGO_PKG_VERSION"), " sts-enum/1");

/// Published counts of isomorphism classes of STS(k), used to validate
/// cached catalogs.
pub const KNOWN_COUNTS: [(usize, usize); 6] = [(1, 1), (3, 1), (7, 1), (9, 1), (13, 2), (15, 80)];

pub fn known_count(k: usize) -> Option<usize> {
    KNOWN_COUNTS.iter().find(|&&(kk, _)| kk == k).map(|&(_, c)| c)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
struct Header {
    k: usize,
    count: usize,
    generator: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    created_unix: Option<u64>,
}

/// Pairwise non-isomorphic representatives, in increasing canonical form.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub k: usize,
    pub systems: Vec<SteinerTripleSystem>,
    pub generator: String,
    pub created_unix: Option<u64>,
    /// where the catalog came from
    pub source: CatalogSource,
    /// automorphism group orders, aligned with `systems`
    pub automorphisms: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CatalogSource {
    Built,
    Enumerated { leaves: u64, nodes: u64 },
    Cache(PathBuf),
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.systems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.systems.is_empty()
    }

    /// `Σ k!/|Aut(S)|`: the number of labeled systems on `0..k` the catalog
    /// accounts for. Equals the true labeled count iff the catalog is complete.
    pub fn labeled_mass(&self) -> u128 {
        let fact: u128 = (1..=self.k as u128).product();
        self.automorphisms.iter().map(|&a| fact / a as u128).sum()
    }

    pub fn to_text(&self) -> String {
        let header = Header {
            k: self.k,
            count: self.systems.len(),
            generator: self.generator.clone(),
            created_unix: self.created_unix,
        };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for (i, s) in self.systems.iter().enumerate() {
            if i > 0 {
                out.push_str("---\n");
            }
            out.push_str(&write_h3(s.system()));
        }
        out
    }

    /// Parses and fully revalidates: each block is an STS(k), the header
    /// count matches, blocks are canonical, distinct and sorted.
    pub fn from_text(text: &str) -> Result<Catalog> {
        let (first, rest) = text.split_once('\n').unwrap_or((text, ""));
        let header: Header = serde_json::from_str(first)?;
        let mut systems = Vec::new();
        let mut block = String::new();
        let flush = |block: &mut String, systems: &mut Vec<SteinerTripleSystem>| -> Result<()> {
            if !block.trim().is_empty() {
                systems.push(SteinerTripleSystem::new(parse_h3(block)?)?);
            }
            block.clear();
            Ok(())
        };
        for line in rest.lines() {
            if line.trim() == "---" {
                flush(&mut block, &mut systems)?;
            } else {
                block.push_str(line);
                block.push('\n');
            }
        }
        flush(&mut block, &mut systems)?;
        if systems.len() != header.count {
            return Err(Error::CatalogUnavailable(format!(
                "header announces {} systems, file has {}",
                header.count,
                systems.len()
            )));
        }
        let mut prev: Option<CanonicalForm> = None;
        for s in &systems {
            if s.k() != header.k || !is_sts(s.system()) {
                return Err(Error::CatalogUnavailable(format!("entry is not an STS({})", header.k)));
            }
            let form = canonical_form(s.system());
            if form.edges != s.system().edges() {
                return Err(Error::CatalogUnavailable("entry is not in canonical form".into()));
            }
            if prev.as_ref().is_some_and(|p| *p >= form) {
                return Err(Error::CatalogUnavailable("entries not strictly increasing".into()));
            }
            prev = Some(form);
        }
        let automorphisms = systems.iter().map(|s| s.automorphism_count()).collect();
        Ok(Catalog {
            k: header.k,
            systems,
            generator: header.generator,
            created_unix: header.created_unix,
            source: CatalogSource::Built,
            automorphisms,
        })
    }
}

#[derive(Clone, Debug)]
pub struct CatalogOptions {
    pub cache_dir: Option<PathBuf>,
    /// read and write the cache (when `cache_dir` is set)
    pub use_cache: bool,
    /// largest `k` enumerated without complaint
    pub max_k: usize,
    pub budget: Budget,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        CatalogOptions {
            cache_dir: None,
            use_cache: true,
            max_k: DEFAULT_MAX_K,
            budget: Budget::unlimited(),
        }
    }
}

pub fn cache_path(dir: &Path, k: usize) -> PathBuf {
    dir.join(format!("sts-{k}.cat"))
}

/// Writes to a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.tmp{}",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("catalog"),
        std::process::id()
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn load_cached(path: &Path, k: usize) -> Option<Catalog> {
    let text = fs::read_to_string(path).ok()?;
    let mut cat = Catalog::from_text(&text).ok()?;
    let count_ok = known_count(k).is_none_or(|c| c == cat.len());
    if cat.k != k || cat.generator != GENERATOR || !count_ok {
        return None;
    }
    cat.source = CatalogSource::Cache(path.to_path_buf());
    Some(cat)
}

/// Isomorph-free catalog of STS(k), from the cache when a valid one exists.
pub fn enumerate_sts(k: usize, opts: &CatalogOptions) -> Result<Catalog> {
    if !super::sts_exists(k) {
        return Err(Error::NoStsExists(k));
    }
    if k > opts.max_k {
        return Err(Error::Budget(format!(
            "STS({k}) enumeration is above the limit k <= {}",
            opts.max_k
        )));
    }
    let cache = opts.cache_dir.as_ref().filter(|_| opts.use_cache).map(|d| cache_path(d, k));
    if let Some(p) = &cache {
        if let Some(cat) = load_cached(p, k) {
            return Ok(cat);
        }
    }
    let (classes, EnumStats { leaves, nodes }) = enumerate_classes(k, &opts.budget)?;
    let mut systems = Vec::with_capacity(classes.len());
    let mut automorphisms = Vec::with_capacity(classes.len());
    for c in classes {
        systems.push(SteinerTripleSystem::new(c.form.to_system())?);
        automorphisms.push(c.automorphisms);
    }
    let cat = Catalog {
        k,
        systems,
        generator: GENERATOR.to_string(),
        created_unix: SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs()),
        source: CatalogSource::Enumerated { leaves, nodes },
        automorphisms,
    };
    if let Some(p) = &cache {
        write_atomic(p, &cat.to_text())?;
    }
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_cache() {
        let dir = tempfile::tempdir().unwrap();
        let opts = CatalogOptions {
            cache_dir: Some(dir.path().to_path_buf()),
            ..Default::default()
        };
        let a = enumerate_sts(9, &opts).unwrap();
        assert!(matches!(a.source, CatalogSource::Enumerated { .. }));
        assert_eq!(a.len(), 1);
        assert_eq!(a.labeled_mass(), 840);
        let b = enumerate_sts(9, &opts).unwrap();
        assert!(matches!(b.source, CatalogSource::Cache(_)));
        assert_eq!(a.systems, b.systems);

        // a corrupted cache is ignored and rewritten
        let p = cache_path(dir.path(), 9);
        fs::write(&p, "{\"k\":9,\"count\":1,\"generator\":\"x\"}\n3 1\n0 1 2\n").unwrap();
        let c = enumerate_sts(9, &opts).unwrap();
        assert!(matches!(c.source, CatalogSource::Enumerated { .. }));
        assert!(load_cached(&p, 9).is_some());
    }

    #[test]
    fn text_format() {
        let cat = enumerate_sts(7, &CatalogOptions::default()).unwrap();
        let text = cat.to_text();
        assert!(text.starts_with("{\"k\":7,\"count\":1,\"generator\":"));
        let back = Catalog::from_text(&text).unwrap();
        assert_eq!(back.systems, cat.systems);
        assert!(Catalog::from_text("{\"k\":7,\"count\":2,\"generator\":\"g\"}\n").is_err());
        assert!(enumerate_sts(19, &CatalogOptions::default()).unwrap_err().is_budget());
        assert!(matches!(enumerate_sts(5, &CatalogOptions::default()), Err(Error::NoStsExists(5))));
    }
}
