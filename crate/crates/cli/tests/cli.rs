use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn wordrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wordrep")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout));
    })
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const K2: &str = "vertices: 1 2\n1 2\n";
const CO_P4: &str = "vertices: 1 2 1' 2'\n1 2\n1' 2'\n1 2'\n";
const T2BAR: &str = "\
vertices: 1 2 3 4 5 6 7
1 2
1 3
1 4
2 3
2 4
3 4
5 6
5 7
6 7
1 6
1 7
2 5
2 7
3 5
3 6
cliqueA: 1 2 3 4
cliqueB: 5 6 7
";

#[test]
fn construct_families() {
    let out = wordrep(&["construct", "complement-path", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["word"].as_str().unwrap().split(' ').count(), 12);
    assert_eq!(v["verified"], true);

    let v = json(&wordrep(&["construct", "crown", "--n", "3", "--k", "0"]));
    assert_eq!(v["length"], 18);
    assert_eq!(v["uniformity"], 3);

    let out = wordrep(&["--format", "text", "construct", "cobip-k2", "--profile", "a:N12"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().next(), Some("a 1 2 a 1 2"));

    let v = json(&wordrep(&["construct", "cobip-k3", "--profile", "a:N1b23,b:N12b3"]));
    assert_eq!(v["verified"], true);
}

#[test]
fn construct_rejects_bad_params() {
    assert_eq!(wordrep(&["construct", "crown", "--n", "3", "--k", "3"]).status.code(), Some(2));
    assert_eq!(wordrep(&["construct", "crown", "--n", "3"]).status.code(), Some(2));
    assert_eq!(wordrep(&["construct", "cobip-k3", "--profile", "a:N123"]).status.code(), Some(2));
    assert_eq!(wordrep(&["construct", "nonsense"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "co_p4.graph", CO_P4);
    let good = write(dir.path(), "good.word", "1 2 1' 2' 1' 1 2' 2\n");
    assert_eq!(wordrep(&["verify", &g, &good]).status.code(), Some(0));

    let k2 = write(dir.path(), "k2.graph", K2);
    let bad = write(dir.path(), "bad.word", "1 1 2 2");
    let out = wordrep(&["verify", &k2, &bad]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["violations"][0]["x"], "1");
    assert_eq!(v["violations"][0]["y"], "2");

    let alien = write(dir.path(), "alien.word", "1 2 3");
    assert_eq!(wordrep(&["verify", &k2, &alien]).status.code(), Some(2));
    assert_eq!(wordrep(&["verify", "/nonexistent.graph", &alien]).status.code(), Some(2));
}

#[test]
fn representable() {
    let dir = tempfile::tempdir().unwrap();
    let t2 = write(dir.path(), "t2.graph", T2BAR);
    let out = wordrep(&["representable", &t2]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["representable"], false);

    let k5 = "vertices: a b c d e\na b\na c\na d\na e\nb c\nb d\nb e\nc d\nc e\nd e\n";
    let k5 = write(dir.path(), "k5.graph", k5);
    let out = wordrep(&["representable", &k5]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["orientation"].as_array().unwrap().len(), 10);

    // co-C8 via the catalog
    let cat = dir.path().join("cat");
    wordrep(&["catalog", "--out", cat.to_str().unwrap(), "--family", "complement-cycle", "--n", "4"]);
    let out = wordrep(&["representable", cat.join("co-cycle-4.graph").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    assert_eq!(wordrep(&["representable", &t2, "--max-vertices", "6"]).status.code(), Some(2));
}

#[test]
fn characterize_sweeps() {
    let dir = tempfile::tempdir().unwrap();
    let t2 = write(dir.path(), "t2.graph", T2BAR);
    let out = wordrep(&["characterize", &t2, "--workers", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["semiTransitiveGeneric"], 0);
    assert_eq!(v["semiTransitiveCobip"], 0);
    assert_eq!(v["disagreementCount"], 0);

    // K3 + K3 joined completely: every orientation is transitive
    let k6 = "vertices: a b c d e f\na b\na c\na d\na e\na f\nb c\nb d\nb e\nb f\nc d\nc e\nc f\nd e\nd f\ne f\ncliqueA: a b c\ncliqueB: d e f\n";
    let k6 = write(dir.path(), "k6.graph", k6);
    let v = json(&wordrep(&["characterize", &k6]));
    assert_eq!(v["orientations"], 720);
    assert_eq!(v["semiTransitiveCobip"], 720);

    // co-C6, partition detected automatically
    let cat = dir.path().join("cat");
    wordrep(&["catalog", "--out", cat.to_str().unwrap(), "--family", "complement-cycle", "--n", "3"]);
    let text = fs::read_to_string(cat.join("co-cycle-3.graph")).unwrap();
    let bare: String = text.lines().filter(|l| !l.starts_with("clique")).map(|l| format!("{l}\n")).collect();
    let co_c6 = write(dir.path(), "co_c6.graph", &bare);
    let v = json(&wordrep(&["characterize", &co_c6]));
    assert!(v["semiTransitiveGeneric"].as_u64().unwrap() > 0);
    assert_eq!(v["disagreementCount"], 0);

    // sampling kicks in above the bound and is seed-reproducible
    let a = json(&wordrep(&["characterize", &co_c6, "--sample-bound", "50", "--seed", "7"]));
    let b = json(&wordrep(&["characterize", &co_c6, "--sample-bound", "50", "--seed", "7", "--workers", "1"]));
    assert_eq!(a["sampled"], true);
    assert_eq!(a["seed"], 7);
    assert_eq!(a, b);

    let p5 = write(dir.path(), "c5.graph", "vertices: a b c d e\na b\nb c\nc d\nd e\ne a\n");
    assert_eq!(wordrep(&["characterize", &p5]).status.code(), Some(2));
}

#[test]
fn characterize_single_orientation() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(
        dir.path(),
        "sq.graph",
        "vertices: x y s t\nx y\ns t\ns x\ny t\ncliqueA: x y\ncliqueB: s t\n",
    );
    let o = write(dir.path(), "sq.orient", "x -> y\ns -> t\ns -> x\ny -> t\n");
    let out = wordrep(&["characterize", &g, "--orientation", &o]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["generic"], false);
    assert_eq!(v["cobip"]["failedStage"], "lemma42");
}

#[test]
fn catalog_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&a, &b] {
        assert_eq!(wordrep(&["catalog", "--out", d.to_str().unwrap()]).status.code(), Some(0));
    }
    let manifest = fs::read_to_string(a.join("manifest.json")).unwrap();
    assert_eq!(manifest, fs::read_to_string(b.join("manifest.json")).unwrap());
    let v: Value = serde_json::from_str(&manifest).unwrap();
    let entries = v["entries"].as_array().unwrap();
    let t1 = entries.iter().find(|e| e["name"] == "T1bar").unwrap();
    assert_eq!((t1["vertices"].as_u64(), t1["edges"].as_u64()), (Some(7), Some(12)));
    for e in entries {
        for f in e["files"].as_array().unwrap() {
            let name = f["path"].as_str().unwrap();
            assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap());
        }
    }

    let c = dir.path().join("c");
    wordrep(&["catalog", "--out", c.to_str().unwrap(), "--family", "crown", "--n", "2..5"]);
    let v: Value = serde_json::from_str(&fs::read_to_string(c.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 2 + 3 + 4 + 5);
    assert_eq!(wordrep(&["catalog", "--out", c.to_str().unwrap(), "--family", "zzz"]).status.code(), Some(2));
}

#[test]
fn repnum_and_comparability() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("cat");
    wordrep(&["catalog", "--out", cat.to_str().unwrap(), "--family", "crown", "--n", "3"]);
    let prism = cat.join("crown-3-0.graph");
    let prism = prism.to_str().unwrap();

    let out = wordrep(&["repnum", prism]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["representationNumber"], 3);
    let out = wordrep(&["repnum", prism, "--max-k", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["representationNumber"].is_null());
    assert_eq!(wordrep(&["repnum", prism, "--max-k", "4"]).status.code(), Some(2));

    let out = wordrep(&["comparability", prism]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["witness"]["type"], "odd-walk");
    assert_eq!(wordrep(&["comparability", prism, "--max-walk", "8"]).status.code(), Some(2));

    let g = write(dir.path(), "co_p4.graph", CO_P4);
    let out = wordrep(&["comparability", &g]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["comparability"], true);
}
