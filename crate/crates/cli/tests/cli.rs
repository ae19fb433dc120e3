use std::path::PathBuf;

use cvxcli::format::{InstanceFile, Kind};
use cvxcore::corpus::coarse_eps;
use cvxcore::vopt::{o_set_membership, vp_certificate_at};

fn cvx(args: &str) -> (i32, String) {
    cvx_args(args.split_whitespace().map(String::from).collect())
}

fn cvx_args(args: Vec<String>) -> (i32, String) {
    cvxcli::run(std::iter::once("cvx".to_string()).chain(args))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cvxcli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn value<'a>(out: &'a str, key: &str) -> Option<&'a str> {
    out.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix('='))
}

/// Every case in `golden/cases.txt`: name, expected exit code, arguments.
#[test]
fn golden_transcripts() {
    let cases = std::fs::read_to_string("tests/golden/cases.txt").unwrap();
    let mut n = 0;
    for line in cases.lines() {
        let mut f = line.split('\t');
        let (name, code, args) = (f.next().unwrap(), f.next().unwrap(), f.next().unwrap());
        let expected = std::fs::read_to_string(format!("tests/golden/{name}.out")).unwrap();
        let (c, out) = cvx(args);
        assert_eq!(out, expected, "{name}");
        assert_eq!(c.to_string(), code, "{name}");
        n += 1;
    }
    assert!(n >= 16);
}

#[test]
fn worked_examples() {
    let (c, out) = cvx("set interior tests/fixtures/plus.json --point 0,0");
    assert_eq!((c, value(&out, "interior")), (0, Some("true")));
    let (c, out) = cvx("vop diagram tests/fixtures/inst42.json");
    assert_eq!((c, value(&out, "violations")), (0, Some("0")));
    let (c, out) = cvx("sep proper tests/fixtures/touching.json");
    assert_eq!(c, 2);
    assert!(value(&out, "error").unwrap().contains("not disjoint"));
}

#[test]
fn fixtures_round_trip() {
    let mut n = 0;
    for entry in std::fs::read_dir("tests/fixtures").unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let file = InstanceFile::parse(&text).unwrap();
        assert_eq!(file.serialize(), text, "{}", path.display());
        n += 1;
    }
    assert!(n >= 6);
}

#[test]
fn generated_round_trip() {
    for seed in 0..100u64 {
        let args = match seed % 7 {
            0 => format!("gen --kind set --seed {seed} --dim 1"),
            1 => format!("gen --kind set --seed {seed} --dim 3"),
            2 => format!("gen --kind sep --pair proper --seed {seed}"),
            3 => format!("gen --kind sep --pair strong --seed {seed}"),
            4 => format!("gen --kind sep --pair cones --seed {seed}"),
            5 => format!("gen --kind sep --pair sandwich --seed {seed}"),
            _ => format!("gen --kind vop --seed {seed}"),
        };
        let (c, text) = cvx(&args);
        assert_eq!(c, 0, "{args}");
        let file = InstanceFile::parse(&text).unwrap_or_else(|e| panic!("{args}: {e}"));
        assert_eq!(file.serialize(), text, "{args}");
        let path = scratch(&format!("gen{seed}.json"));
        std::fs::write(&path, &text).unwrap();
        let (c, out) = cvx(&format!("check {}", path.display()));
        assert_eq!((c, value(&out, "canonical")), (0, Some("true")), "{args}\n{out}");
    }
}

#[test]
fn gen_is_deterministic() {
    assert_eq!(cvx("gen --kind vop --seed 42"), cvx("gen --kind vop --seed 42"));
    assert_eq!(cvx("gen --kind sep --pair strong --seed 5"), cvx("gen --kind sep --pair strong --seed 5"));
    let (c, text) = cvx("gen --kind set --seed 7 --dim 2");
    assert_eq!(c, 0);
    let file = InstanceFile::parse(&text).unwrap();
    assert_eq!((file.kind, file.dim), (Kind::Set, 2));
    assert_eq!(file.serialize(), text);
    assert_ne!(cvx("gen --kind vop --seed 42").1, cvx("gen --kind vop --seed 43").1);
}

#[test]
fn coarse_gen_certifies_at_one_eighth() {
    let (c, text) = cvx("gen --kind vop --coarse --seed 9");
    assert_eq!(c, 0);
    let inst = InstanceFile::parse(&text).unwrap().vop().unwrap();
    let mut certified = 0;
    for y in inst.image.generators() {
        if o_set_membership(&inst, y).unwrap().o_ss.is_yes() {
            assert!(vp_certificate_at(&inst, y, &coarse_eps()).unwrap().is_some(), "{y}");
            certified += 1;
        }
    }
    assert!(certified > 0);
}

/// `set interior` as a set, then `set member` on it, against the pointwise query.
#[test]
fn interior_set_agrees_with_pointwise() {
    for seed in [3u64, 11] {
        let (_, text) = cvx(&format!("gen --kind set --seed {seed} --dim 2"));
        let src = scratch(&format!("cross{seed}.json"));
        std::fs::write(&src, &text).unwrap();
        let (_, out) = cvx(&format!("set interior {}", src.display()));
        let block = value(&out, "set").unwrap();
        let cor = scratch(&format!("cross{seed}-cor.json"));
        std::fs::write(&cor, format!("{{\"format\":\"cvx\",\"version\":1,\"kind\":\"set\",\"dim\":2}}\n{block}\n"))
            .unwrap();
        for i in -6..=6 {
            for j in [-4, -1, 0, 3, 5] {
                let p = format!("{i}/2,{j}/2");
                let (c1, direct) = cvx(&format!("set interior {} --point {p}", src.display()));
                let (c2, member) = cvx(&format!("set member {} --point {p}", cor.display()));
                assert_eq!(value(&direct, "interior"), value(&member, "member"), "seed {seed} at {p}");
                assert_eq!(c1, c2);
            }
        }
    }
}

#[test]
fn exit_codes() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"format\":\"cvx\",\"version\":1,\"kind\":\"set\",\"dim\":2}\n{\"block\":\"set\",\"name\":1}\n")
        .unwrap();
    let (c, out) = cvx(&format!("set convex {}", bad.display()));
    assert_eq!(c, 2);
    assert!(value(&out, "error").unwrap().contains("line 2, column"), "{out}");

    let floats = scratch("floats.json");
    std::fs::write(&floats, "{\"format\":\"cvx\",\"version\":1,\"kind\":\"sep\",\"dim\":1}\n{\"block\":\"vector\",\"name\":\"k\",\"v\":[0.5]}\n")
        .unwrap();
    assert_eq!(cvx(&format!("check {}", floats.display())).0, 2);

    assert_eq!(cvx("set convex tests/fixtures/missing.json").0, 2);
    assert_eq!(cvx("set convex tests/fixtures/worked.json").0, 2);
    assert_eq!(cvx("set member tests/fixtures/plus.json --point 0,0,0").0, 2);
    assert_eq!(cvx("set frobnicate tests/fixtures/plus.json").0, 2);
    assert_eq!(cvx("gen --kind set --seed 1 --dim 9").0, 2);
    assert_eq!(cvx("--help").0, 0);

    assert_eq!(cvx("set member tests/fixtures/plus.json --point 0,0").0, 0);
    assert_eq!(cvx("set member tests/fixtures/plus.json --point 4,4").0, 1);
    assert_eq!(cvx("set vcl tests/fixtures/plus.json --point 3,1").0, 0);
    assert_eq!(cvx("set basis tests/fixtures/plus.json").0, 1);
    assert_eq!(cvx("sep gerstewitz tests/fixtures/gerst.json").0, 0);
}

#[test]
fn hypothesis_violations_exit_two() {
    // A closed segment has no core
    let seg = scratch("segment.json");
    std::fs::write(
        &seg,
        concat!(
            "{\"format\":\"cvx\",\"version\":1,\"kind\":\"sep\",\"dim\":2}\n",
            "{\"block\":\"set\",\"name\":\"A\",\"cells\":[[{\"a\":[\"0\",\"1\"],\"rel\":\"eq\",\"b\":\"0\"},{\"a\":[\"1\",\"0\"],\"rel\":\"le\",\"b\":\"1\"},{\"a\":[\"-1\",\"0\"],\"rel\":\"le\",\"b\":\"0\"}]]}\n",
            "{\"block\":\"set\",\"name\":\"B\",\"cells\":[[{\"a\":[\"1\",\"0\"],\"rel\":\"le\",\"b\":\"-1\"}]]}\n",
        ),
    )
    .unwrap();
    let (c, out) = cvx(&format!("sep proper {}", seg.display()));
    assert_eq!(c, 2);
    assert!(value(&out, "error").unwrap().contains("cor(A) is empty"), "{out}");
}
