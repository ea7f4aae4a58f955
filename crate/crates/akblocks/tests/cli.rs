//! End-to-end tests of the command-line front end through `cli::run`.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;

use akblocks::blocks::{block_of, same_weyl_orbit};
use akblocks::cli::{class_id, run, SCHEMA, VERSION};
use akblocks::multipartition::ChargedMultipartition;
use akblocks::scopes::{orbit_class_count, scopes_vector};
use serde_json::Value;

const WORKED_MP: &str = "[[3,2,1,1,1,1],[4,2,1],[2,2,1],[1]]";

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("akblocks").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = invoke(args);
    assert_eq!(code, 0, "stderr: {err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], SCHEMA);
    assert_eq!(v["version"], VERSION);
    v
}

fn ints(v: &Value) -> Vec<i64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_i64().unwrap())
        .collect()
}

#[test]
fn worked_example_moving_vector() {
    let v = json(&[
        "mv", "--e", "5", "--l", "4", "--charge", "1,3,3,6", "--mp", WORKED_MP,
    ]);
    assert_eq!(ints(&v["result"]["mv"]), [0, 1, 0, 1]);
    assert_eq!(ints(&v["result"]["duality_charge"]), [0, 6, 1, 4, 2]);
    assert_eq!(ints(&v["result"]["canonical_mv"]), [1, 0, 1, 0]);
}

#[test]
fn worked_example_scopes() {
    let v = json(&[
        "scopes", "--e", "5", "--l", "4", "--charge", "1,3,3,6", "--mp", WORKED_MP,
    ]);
    let r = &v["result"];
    assert_eq!(ints(&r["scopes_vector"]), [3, 3, 2, 1, 1]);
    assert_eq!(ints(&r["y"]), [0, 1, 0, 1, 0]);
    assert_eq!(ints(&r["z"]), [1, 3, 2, 1, 3]);
    assert_eq!(
        (r["frak_y"].as_i64(), r["j_b"].as_i64()),
        (Some(0), Some(2))
    );
}

#[test]
fn empty_partition_block() {
    let v = json(&[
        "block", "--e", "2", "--l", "1", "--charge", "0", "--mp", "[[ ]]",
    ]);
    assert_eq!(v["result"]["weight"], 0);
    assert_eq!(v["result"]["core_threshold"], 0);
    assert_eq!(ints(&v["result"]["core_excess"]), Vec::<i64>::new());
}

#[test]
fn text_output_renders_matrices() {
    let (code, out, _) = invoke(&[
        "decomp", "--e", "2", "--l", "1", "--charge", "0", "--mp", "[[2]]", "--output", "text",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("((1,1))  v"), "{out}");
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 6] = [
        (
            &[
                "block", "--e", "1", "--l", "1", "--charge", "0", "--mp", "[[]]",
            ],
            2,
        ),
        (
            &[
                "block", "--e", "2", "--l", "2", "--charge", "0", "--mp", "[[]]",
            ],
            2,
        ),
        (
            &[
                "block", "--e", "2", "--l", "1", "--charge", "0", "--mp", "[[1,2]]",
            ],
            2,
        ),
        (&["frobnicate"], 2),
        (
            &[
                "scopes", "--e", "2", "--l", "1", "--charge", "0", "--mp", "[[2]]",
            ],
            4,
        ),
        (
            &[
                "simples", "--e", "2", "--l", "1", "--charge", "0", "--mp", "[[2]]",
            ],
            4,
        ),
    ];
    for (args, expected) in cases {
        let (code, _, err) = invoke(args);
        assert_eq!(code, expected, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
    let (code, out, _) = invoke(&[
        "enumerate",
        "--e",
        "2",
        "--l",
        "2",
        "--charge",
        "0,1",
        "--n",
        "6",
        "--budget",
        "3",
    ]);
    assert_eq!(code, 3);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["truncated"], true);
    let (code, out, _) = invoke(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.contains(VERSION));
}

#[test]
fn enumerate_lists_members_with_kleshchev_flags() {
    let v = json(&[
        "enumerate",
        "--e",
        "2",
        "--l",
        "1",
        "--charge",
        "0",
        "--mp",
        "[[4]]",
    ]);
    let members = v["result"]["members"].as_array().unwrap();
    assert_eq!(members.len(), 5);
    let regular = members.iter().filter(|m| m["kleshchev"] == true).count();
    assert_eq!(regular, 2);
}

fn atlas(dir: &std::path::Path, n: &str, n_max: &str) -> (i32, Vec<String>) {
    let d = dir.to_str().unwrap();
    let (code, _, _) = invoke(&[
        "atlas",
        "--e",
        "2",
        "--l",
        "2",
        "--charge",
        "0,1",
        "--n",
        n,
        "--n-max",
        n_max,
        "--out-dir",
        d,
    ]);
    let mut names: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    (code, names)
}

#[test]
fn atlas_is_deterministic_and_classes_match_orbit_counts() {
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    let (c1, names) = atlas(first.path(), "0", "4");
    let (c2, again) = atlas(second.path(), "0", "4");
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(names, again);
    assert!(!names.is_empty());
    assert!(names.iter().all(|n| n.ends_with(".json")));
    for name in &names {
        let a = fs::read(first.path().join(name)).unwrap();
        assert_eq!(a, fs::read(second.path().join(name)).unwrap(), "{name}");
    }

    let mut cores = Vec::new();
    for name in &names {
        let doc: Value =
            serde_json::from_slice(&fs::read(first.path().join(name)).unwrap()).unwrap();
        assert_eq!(doc["version"], VERSION);
        let r = &doc["result"];
        if r["block"]["core_block"] != true {
            continue;
        }
        let comps: Vec<Vec<usize>> = serde_json::from_value(r["representative"].clone()).unwrap();
        let lm = ChargedMultipartition::from_parts(&comps, &[0, 1], 2).unwrap();
        let b = block_of(&lm).unwrap();
        assert_eq!(
            r["scopes_class"],
            class_id(b.mv(), &scopes_vector(&b).unwrap())
        );
        cores.push(b);
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for (i, b) in cores.iter().enumerate() {
        match orbits
            .iter_mut()
            .find(|o| same_weyl_orbit(&cores[o[0]], b).unwrap())
        {
            Some(o) => o.push(i),
            None => orbits.push(vec![i]),
        }
    }
    for orbit in orbits {
        let rep = &cores[orbit[0]];
        let mut reachable: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut frontier = vec![rep.clone()];
        let mut seen: BTreeMap<String, ()> = BTreeMap::new();
        for _ in 0..=8 {
            let mut next = Vec::new();
            for b in frontier {
                if seen.insert(format!("{:?}", b.key()), ()).is_some() {
                    continue;
                }
                reachable.insert(scopes_vector(&b).unwrap());
                next.extend((0..b.e()).map(|j| b.s_action(j).unwrap()));
            }
            frontier = next;
        }
        assert_eq!(reachable.len() as u128, orbit_class_count(rep).unwrap());
        for &i in &orbit {
            assert!(reachable.contains(&scopes_vector(&cores[i]).unwrap()));
        }
    }
}

#[test]
fn empty_range_gives_empty_atlas() {
    let dir = tempfile::tempdir().unwrap();
    let (code, names) = atlas(dir.path(), "3", "2");
    assert_eq!(code, 0);
    assert!(names.is_empty());
}
