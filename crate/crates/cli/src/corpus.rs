//! Worked-example corpus: algebra files with expected invariants, checked
//! by running the command-line front end on each entry.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::report::parse_result;
use crate::run;

#[derive(Clone, Debug, Deserialize)]
pub struct Manifest {
    #[serde(rename = "entry")]
    pub entries: Vec<CorpusEntry>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub file: String,
    pub dim: usize,
    pub loewy: usize,
    /// A number, `infinite`, or `>cap`.
    pub gldim: String,
    /// Coxeter polynomial coefficients, lowest first, or `undefined`.
    pub coxeter: String,
    /// Known to be iterated tilted of Dynkin type.
    #[serde(default)]
    pub tilted_dynkin: bool,
    pub census: Option<CensusExpectation>,
    pub verdict: Option<VerdictExpectation>,
    /// How the expected values were obtained independently.
    pub oracle: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CensusExpectation {
    pub width_cap: usize,
    pub mult_cap: usize,
    pub count: usize,
}

#[derive(Clone, Debug, Deserialize)]
pub struct VerdictExpectation {
    pub width_cap: usize,
    pub mult_cap: usize,
    pub verdict: String,
    pub reason: Option<String>,
}

pub fn load_manifest(path: &Path) -> Result<Manifest, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// The corpus directory shipped with the repository.
pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn result_of(args: &[String]) -> Result<(i32, Vec<(String, String)>), String> {
    let out = run(args);
    if out.code > 2 {
        return Err(format!("{} exited with {}: {}", args.join(" "), out.code, out.stderr.trim()));
    }
    Ok((out.code, parse_result(&out.stdout)))
}

fn get<'a>(kv: &'a [(String, String)], key: &str) -> &'a str {
    kv.iter().find(|(k, _)| k == key).map_or("", |(_, v)| v.as_str())
}

/// Check one entry; returns a list of mismatches (empty when all expected
/// values are reproduced). `with_census` also runs census and verdicts.
pub fn check_entry(dir: &Path, e: &CorpusEntry, with_census: bool) -> Result<Vec<String>, String> {
    let file = dir.join(&e.file).display().to_string();
    let mut bad = Vec::new();
    let mut expect = |what: &str, want: String, got: &str| {
        if want != got {
            bad.push(format!("{}: {what} expected {want}, got {got}", e.name));
        }
    };
    let (_, kv) = result_of(&["derizero".into(), "algebra".into(), file.clone()])?;
    expect("dim", e.dim.to_string(), get(&kv, "dim"));
    expect("loewy_length", e.loewy.to_string(), get(&kv, "loewy_length"));
    expect("gldim", e.gldim.clone(), get(&kv, "gldim"));
    expect("coxeter", e.coxeter.clone(), get(&kv, "coxeter"));
    if !with_census {
        return Ok(bad);
    }
    if let Some(c) = &e.census {
        let args = vec![
            "derizero".into(),
            "census".into(),
            file.clone(),
            "--width-cap".into(),
            c.width_cap.to_string(),
            "--mult-cap".into(),
            c.mult_cap.to_string(),
        ];
        let (_, kv) = result_of(&args)?;
        expect("census count", c.count.to_string(), get(&kv, "count"));
    }
    if let Some(v) = &e.verdict {
        let args = vec![
            "derizero".into(),
            "derdim".into(),
            "decide".into(),
            file.clone(),
            "--width-cap".into(),
            v.width_cap.to_string(),
            "--mult-cap".into(),
            v.mult_cap.to_string(),
        ];
        let (code, kv) = result_of(&args)?;
        expect("verdict", v.verdict.clone(), get(&kv, "verdict"));
        let want_code = match v.verdict.as_str() {
            "Zero" => 0,
            "Positive" => 1,
            _ => 2,
        };
        expect("exit code", want_code.to_string(), &code.to_string());
        if let Some(r) = &v.reason {
            expect("reason", r.clone(), get(&kv, "reason"));
        }
    }
    Ok(bad)
}
