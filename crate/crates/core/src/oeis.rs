//! Offline-first OEIS lookup.
//!
//! A [`FixtureStore`] holds entries bundled with the crate, optionally
//! overlaid by a directory of `<A-number>.json` files. Network lookups go to
//! the OEIS JSON search endpoint (`$OEIS_BASE_URL/search?q=..&fmt=json`,
//! default `https://oeis.org`) and fetched entries are written through to the
//! store.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::{Mutex, RwLock};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::seqio::{self, decimal_strings};
use crate::{Error, IntSeq, Result};

pub const DEFAULT_BASE_URL: &str = "https://oeis.org";
pub const BASE_URL_ENV: &str = "OEIS_BASE_URL";
pub const FIXTURES_ENV: &str = "CATKIT_FIXTURES";

const BUNDLED: &[&str] = &[
    include_str!("../fixtures/A000108.json"),
    include_str!("../fixtures/A121988.json"),
];

// One network request in flight per process.
static NETWORK: Mutex<()> = Mutex::new(());

/// An A-number such as `A121988`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ANumber(String);

impl ANumber {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl FromStr for ANumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let valid =
            s.len() == 7 && s.starts_with('A') && s[1..].bytes().all(|b| b.is_ascii_digit());
        if valid {
            Ok(ANumber(s.to_string()))
        } else {
            Err(Error::domain(format!(
                "`{s}` is not an A-number (A followed by 6 digits)"
            )))
        }
    }
}

impl std::fmt::Display for ANumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OeisEntry {
    pub a_number: String,
    pub name: String,
    #[serde(with = "decimal_strings")]
    pub terms: IntSeq,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl OeisEntry {
    fn validated(self) -> Result<Self> {
        self.a_number.parse::<ANumber>()?;
        if self.terms.is_empty() {
            return Err(Error::InvalidInput(format!(
                "{} has no terms",
                self.a_number
            )));
        }
        Ok(self)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Source {
    #[default]
    Fixtures,
    Network,
}

impl FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixtures" => Ok(Source::Fixtures),
            "network" => Ok(Source::Network),
            other => Err(Error::InvalidInput(format!("unknown source `{other}`"))),
        }
    }
}

/// Entries keyed by A-number. Reads share a lock; inserts take it exclusively.
#[derive(Debug)]
pub struct FixtureStore {
    dir: Option<PathBuf>,
    entries: RwLock<BTreeMap<String, OeisEntry>>,
}

impl FixtureStore {
    /// Only the entries compiled into the crate.
    pub fn bundled() -> Self {
        let entries = BUNDLED
            .iter()
            .map(|doc| {
                let entry: OeisEntry =
                    serde_json::from_str(doc).expect("bundled fixture is valid JSON");
                (entry.a_number.clone(), entry)
            })
            .collect();
        FixtureStore {
            dir: None,
            entries: RwLock::new(entries),
        }
    }

    /// Bundled entries overlaid by every `*.json` file in `dir`. The
    /// directory is created if missing and receives write-through entries.
    pub fn with_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)?;
        let store = FixtureStore::bundled();
        {
            let mut entries = store.entries.write().expect("fixture lock poisoned");
            let mut files: Vec<PathBuf> = fs::read_dir(&dir)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            files.sort();
            for file in files {
                let entry: OeisEntry = serde_json::from_str(&fs::read_to_string(&file)?)?;
                let entry = entry.validated()?;
                entries.insert(entry.a_number.clone(), entry);
            }
        }
        Ok(FixtureStore {
            dir: Some(dir),
            ..store
        })
    }

    /// Uses `$CATKIT_FIXTURES` when set, otherwise only bundled entries.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(FIXTURES_ENV) {
            Some(dir) => FixtureStore::with_dir(dir),
            None => Ok(FixtureStore::bundled()),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn get(&self, a_number: &ANumber) -> Option<OeisEntry> {
        self.entries
            .read()
            .expect("fixture lock poisoned")
            .get(a_number.as_str())
            .cloned()
    }

    /// Entries containing `terms` as a contiguous run, in A-number order.
    pub fn search(&self, terms: &IntSeq) -> Vec<OeisEntry> {
        self.entries
            .read()
            .expect("fixture lock poisoned")
            .values()
            .filter(|e| e.terms.contains_run(terms.terms()))
            .cloned()
            .collect()
    }

    /// Stores an entry, writing `<A-number>.json` when backed by a directory.
    pub fn insert(&self, entry: OeisEntry) -> Result<()> {
        let entry = entry.validated()?;
        let mut entries = self.entries.write().expect("fixture lock poisoned");
        if let Some(dir) = &self.dir {
            let doc = serde_json::to_string_pretty(&entry)?;
            fs::write(dir.join(format!("{}.json", entry.a_number)), doc + "\n")?;
        }
        entries.insert(entry.a_number.clone(), entry);
        Ok(())
    }
}

/// Blocking client for the OEIS JSON search endpoint.
#[derive(Clone, Debug)]
pub struct NetworkClient {
    base_url: String,
    timeout: Duration,
}

impl NetworkClient {
    pub fn new(base_url: impl Into<String>) -> Self {
        NetworkClient {
            base_url: base_url.into().trim_end_matches('/').to_string(),
            timeout: Duration::from_secs(15),
        }
    }

    pub fn from_env() -> Self {
        NetworkClient::new(
            std::env::var(BASE_URL_ENV).unwrap_or_else(|_| DEFAULT_BASE_URL.to_string()),
        )
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    pub fn base_url(&self) -> &str {
        &self.base_url
    }

    /// Runs one search query and returns the parsed results.
    pub fn search(&self, query: &str) -> Result<Vec<OeisEntry>> {
        let _guard = NETWORK.lock().unwrap_or_else(|p| p.into_inner());
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(self.timeout))
            .build()
            .into();
        let url = format!("{}/search", self.base_url);
        let body = agent
            .get(&url)
            .query("q", query)
            .query("fmt", "json")
            .call()
            .and_then(|mut resp| resp.body_mut().read_to_string())
            .map_err(|e| Error::Network(format!("{url}: {e}")))?;
        parse_search_response(&body)
    }
}

#[derive(Deserialize)]
struct RawResult {
    number: u64,
    #[serde(default)]
    name: String,
    #[serde(default)]
    data: String,
}

/// Accepts both the bare-array response and the older `{"results": [...]}`
/// envelope; `null` means no results.
pub fn parse_search_response(body: &str) -> Result<Vec<OeisEntry>> {
    let value: serde_json::Value = serde_json::from_str(body)?;
    let results = match value {
        serde_json::Value::Null => return Ok(Vec::new()),
        serde_json::Value::Object(mut obj) => obj.remove("results").unwrap_or_default(),
        other => other,
    };
    if results.is_null() {
        return Ok(Vec::new());
    }
    let raw: Vec<RawResult> = serde_json::from_value(results)?;
    raw.into_iter()
        .map(|r| {
            Ok(OeisEntry {
                a_number: format!("A{:06}", r.number),
                name: r.name,
                terms: seqio::parse_csv(&r.data)?,
                provenance: None,
            })
        })
        .collect()
}

/// Fixture store plus network client.
#[derive(Debug)]
pub struct Oeis {
    store: FixtureStore,
    client: NetworkClient,
}

impl Oeis {
    pub fn new(store: FixtureStore, client: NetworkClient) -> Self {
        Oeis { store, client }
    }

    pub fn store(&self) -> &FixtureStore {
        &self.store
    }

    pub fn search_by_terms(&self, terms: &IntSeq, source: Source) -> Result<Vec<OeisEntry>> {
        if terms.is_empty() {
            return Err(Error::domain("search needs at least one term"));
        }
        match source {
            Source::Fixtures => Ok(self.store.search(terms)),
            Source::Network => Ok(self
                .client
                .search(&terms.to_string())?
                .into_iter()
                .filter(|e| e.terms.contains_run(terms.terms()))
                .collect()),
        }
    }

    pub fn fetch(&self, a_number: &str, source: Source) -> Result<OeisEntry> {
        let id: ANumber = a_number.parse()?;
        match source {
            Source::Fixtures => self
                .store
                .get(&id)
                .ok_or_else(|| Error::NotFound(format!("{id} is not in the fixture store"))),
            Source::Network => {
                let entry = self
                    .client
                    .search(&format!("id:{id}"))?
                    .into_iter()
                    .find(|e| e.a_number == id.as_str())
                    .ok_or_else(|| Error::NotFound(format!("OEIS has no entry {id}")))?;
                self.store.insert(entry.clone())?;
                Ok(entry)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn offline() -> Oeis {
        // Unroutable base URL; fixtures mode must never touch it.
        Oeis::new(
            FixtureStore::bundled(),
            NetworkClient::new("http://127.0.0.1:9"),
        )
    }

    #[test]
    fn a_numbers() {
        assert!("A121988".parse::<ANumber>().is_ok());
        for bad in ["A12", "B121988", "A12198x", "A1219880", ""] {
            assert!(
                matches!(bad.parse::<ANumber>(), Err(Error::Domain(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn fixture_search() {
        let oeis = offline();
        let hits = oeis
            .search_by_terms(&IntSeq::from_u64s(&[1, 2, 6, 21, 80]), Source::Fixtures)
            .unwrap();
        assert!(hits.iter().any(|e| e.a_number == "A121988"));

        let hits = oeis
            .search_by_terms(&IntSeq::from_u64s(&[1, 1, 2, 5, 14]), Source::Fixtures)
            .unwrap();
        assert!(hits.iter().any(|e| e.a_number == "A000108"));

        assert!(oeis
            .search_by_terms(&IntSeq::from_u64s(&[9; 8]), Source::Fixtures)
            .unwrap()
            .is_empty());
        assert!(oeis
            .search_by_terms(&IntSeq::default(), Source::Fixtures)
            .is_err());
    }

    #[test]
    fn fixture_fetch() {
        let oeis = offline();
        let entry = oeis.fetch("A121988", Source::Fixtures).unwrap();
        assert_eq!(
            entry.terms.terms()[..5],
            IntSeq::from_u64s(&[1, 2, 6, 21, 80]).terms()[..]
        );
        assert!(entry.name.contains("multiplihedron"));
        assert!(matches!(
            oeis.fetch("A12", Source::Fixtures),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            oeis.fetch("A12", Source::Network),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            oeis.fetch("A999999", Source::Fixtures),
            Err(Error::NotFound(_))
        ));
    }

    #[test]
    fn response_shapes() {
        let array = r#"[{"number":121988,"name":"x","data":"1,2,6"}]"#;
        let envelope = r#"{"greeting":"hi","results":[{"number":45,"name":"y","data":"0,1,1,2"}]}"#;
        assert_eq!(parse_search_response(array).unwrap()[0].a_number, "A121988");
        assert_eq!(
            parse_search_response(envelope).unwrap()[0].terms,
            IntSeq::from_u64s(&[0, 1, 1, 2])
        );
        assert!(parse_search_response("null").unwrap().is_empty());
        assert!(parse_search_response(r#"{"results":null}"#)
            .unwrap()
            .is_empty());
        assert!(parse_search_response("<html>").is_err());
    }

    #[test]
    fn directory_overlay_and_write_through() {
        let dir = tempfile::tempdir().unwrap();
        let store = FixtureStore::with_dir(dir.path()).unwrap();
        let entry = OeisEntry {
            a_number: "A000045".into(),
            name: "Fibonacci numbers".into(),
            terms: IntSeq::from_u64s(&[0, 1, 1, 2, 3, 5, 8]),
            provenance: None,
        };
        store.insert(entry.clone()).unwrap();
        assert!(dir.path().join("A000045.json").exists());

        let reopened = FixtureStore::with_dir(dir.path()).unwrap();
        assert_eq!(reopened.get(&"A000045".parse().unwrap()), Some(entry));
        assert!(reopened.get(&"A121988".parse().unwrap()).is_some());

        let bad = OeisEntry {
            a_number: "A1".into(),
            name: String::new(),
            terms: IntSeq::from_u64s(&[1]),
            provenance: None,
        };
        assert!(store.insert(bad).is_err());
    }

    #[test]
    fn unreachable_network_is_a_network_error() {
        let oeis = Oeis::new(
            FixtureStore::bundled(),
            NetworkClient::new("http://127.0.0.1:9").with_timeout(Duration::from_secs(2)),
        );
        assert!(matches!(
            oeis.fetch("A121988", Source::Network),
            Err(Error::Network(_))
        ));
    }
}
