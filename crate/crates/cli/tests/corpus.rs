use derizero_cli::corpus::{check_entry, default_dir, load_manifest};

#[test]
fn corpus_invariants() {
    let dir = default_dir();
    let m = load_manifest(&dir.join("manifest.toml")).unwrap();
    assert!(m.entries.len() >= 20);
    let mut bad = Vec::new();
    for e in &m.entries {
        bad.extend(check_entry(&dir, e, false).unwrap());
    }
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn corpus_census_and_verdicts() {
    let dir = default_dir();
    let m = load_manifest(&dir.join("manifest.toml")).unwrap();
    let mut bad = Vec::new();
    for e in &m.entries {
        bad.extend(check_entry(&dir, e, true).unwrap());
    }
    assert!(bad.is_empty(), "{bad:#?}");
}

/// Tilted Dynkin entries never get Positive; entries with a Positive
/// expectation are never marked tilted.
#[test]
fn verdicts_are_one_sided() {
    let dir = default_dir();
    let m = load_manifest(&dir.join("manifest.toml")).unwrap();
    for e in &m.entries {
        if let Some(v) = &e.verdict {
            if e.tilted_dynkin {
                assert_ne!(v.verdict, "Positive", "{}", e.name);
            } else {
                assert_ne!(v.verdict, "Zero", "{}", e.name);
            }
        }
    }
    // Larger tilted entries are out of reach at default caps; the verdict
    // at small caps must still not be Positive.
    let e = m.entries.iter().find(|e| e.name == "ka4_rad2").unwrap();
    let file = dir.join(&e.file).display().to_string();
    let out = derizero_cli::run(["derizero", "derdim", "decide", &file, "--width-cap", "2", "--mult-cap", "2"]);
    assert!(out.code == 0 || out.code == 2, "{}{}", out.stdout, out.stderr);
}
