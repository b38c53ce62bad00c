use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command as Process, Stdio};

use involutive::completion::{
    groebner_oracle, minimal_involutive_basis, verify_involutive, CompletionOptions, InvolutiveBasis,
};
use involutive::diffpoly::{LinearDiffPoly, Names, Ranking, Scheme, Tiebreak};
use involutive::monomial::DivisionKind;
use involutive::symmetry::VectorFieldAnsatz;
use involutive_cli::parse::{parse_linear, parse_problem};
use involutive_cli::{execute, CliError, Command, Flags};
use serde_json::Value;

fn problem(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(name)
}

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_involutive"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn path(name: &str) -> String {
    problem(name).display().to_string()
}

fn file() -> PathBuf {
    PathBuf::from("-")
}

fn read(name: &str) -> String {
    std::fs::read_to_string(problem(name)).unwrap()
}

#[test]
fn parse_errors_carry_positions() {
    let err = |text: &str| match execute(&Command::Complete { file: file() }, text, &Flags::default()) {
        Err(CliError::Parse(e)) => e,
        Err(e) => panic!("unexpected error {e}"),
        Ok(_) => panic!("accepted {text:?}"),
    };
    let e = err("vars: x1 x2 x3\nfuncs: y\n");
    assert_eq!(e.msg, "no equations");
    let e = err("vars: x1 x2 x3\nfuncs: y\neq: D[y,{1,0}]\n");
    assert_eq!((e.line, e.col), (3, 9));
    assert!(e.msg.contains("expected 3"), "{}", e.msg);
    let e = err("vars: x1 x2\nfuncs: y\neq: D[y,x1] + z\n");
    assert_eq!(e.to_string(), "line 3, column 15: unknown identifier `z`");
    let e = err("vars: x1 x2\nfuncs: y\neq: D[y,x1] + (x2\n");
    assert_eq!(e.line, 3);
}

#[test]
fn exit_codes() {
    let (code, out, _) = bin(&["complete", &path("janet.txt")]);
    assert_eq!(code, 0);
    assert!(out.contains("basis (7 elements):"), "{out}");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "vars: x1 x2 x3\nfuncs: y\neq: D[y,{1,0}]\n").unwrap();
    let (code, _, err) = bin(&["complete", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 3, column 9"), "{err}");

    let (code, _, err) = bin(&["complete", dir.path().join("missing.txt").to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("cannot read"), "{err}");

    let (code, _, _) = bin(&["complete", "--division", "nonsense", &path("janet.txt")]);
    assert_eq!(code, 1);

    let (code, out, _) = bin(&["monomial", "--cap", "100", &path("example1.txt")]);
    assert_eq!(code, 2);
    assert!(out.contains("cap exceeded after 100 steps"), "{out}");

    // the ideal of y_{x1 x2} has no finite Pommaret basis
    let cross = dir.path().join("cross.txt");
    std::fs::write(&cross, "vars: x1 x2\nfuncs: y\neq: D[y,x1,x2]\n").unwrap();
    let (code, out, _) = bin(&[
        "complete",
        "--division",
        "pommaret",
        "--cap",
        "20",
        cross.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(
        out.starts_with("cap exceeded after 20 prolongation examinations"),
        "{out}"
    );
    assert!(out.contains("partial system:"));
    let (code, _, _) = bin(&["complete", "--division", "janet", cross.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn reads_standard_input() {
    let mut child = Process::new(env!("CARGO_BIN_EXE_involutive"))
        .args(["hilbert", "--s", "8", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(read("janet.txt").as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("HF(8) = 12\n"), "{text}");
    assert!(text.contains("HP(s) = 12\n"), "{text}");
    assert!(text.contains("dimension: 12\n"), "{text}");
}

#[test]
fn verify_lewy() {
    let (code, out, _) = bin(&["verify", &path("lewy.txt")]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "janet: involutive: true\npommaret: involutive: true\nlexinduced: involutive: true\n"
    );
    let (_, out, _) = bin(&["verify", "--division", "janet", &path("janet.txt")]);
    assert_eq!(out, "janet: involutive: false\n");
}

#[test]
fn json_report() {
    let (code, out, _) = bin(&["hilbert", "--json", &path("janet.txt")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "hilbert");
    assert_eq!(v["options"]["division"], "janet");
    assert_eq!(v["options"]["ranking"], "grlex");
    assert_eq!(v["options"]["cap"], 10000);
    let elements = v["basis"]["elements"].as_array().unwrap();
    assert_eq!(elements.len(), 7);
    let first = &elements[5];
    assert_eq!(first["text"], "D[y,{2,0,0}] - x2*D[y,{0,0,2}]");
    assert_eq!(first["constant"], "0");
    assert_eq!(first["terms"][1]["coefficient"], "-x2");
    assert_eq!(first["terms"][1]["index"], serde_json::json!([0, 0, 2]));
    assert_eq!(first["multiplicative"], serde_json::json!(["x1", "x2", "x3"]));
    assert!(v["basis"]["stats"]["prolongations"].as_u64().unwrap() > 0);
    assert!(v["timing_ms"].is_number());
    assert_eq!(v["hilbert"]["hp_coefficients"], serde_json::json!(["12"]));
    assert_eq!(v["dimension"]["finite"], 12);
    assert!(v.get("ivp").is_none());
}

#[test]
fn json_and_text_agree() {
    for (cmd, name) in [
        ("complete", "janet.txt"),
        ("complete", "four_var.txt"),
        ("symmetry", "harry_dym.txt"),
    ] {
        let (_, text, _) = bin(&[cmd, &path(name)]);
        let (_, json, _) = bin(&[cmd, "--json", &path(name)]);
        let v: Value = serde_json::from_str(&json).unwrap();
        let from_json: Vec<String> = v["basis"]["elements"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| e["text"].as_str().unwrap().to_string())
            .collect();
        let start = text.find("basis (").unwrap();
        let from_text: Vec<String> = text[start..]
            .lines()
            .skip(1)
            .take(from_json.len())
            .map(|l| l.trim().split("    [mult").next().unwrap().to_string())
            .collect();
        assert_eq!(from_text, from_json, "{cmd} {name}");
    }
}

fn symmetry_names() -> Names {
    VectorFieldAnsatz::new(vec!["t".into(), "x".into()], vec!["y".into()]).names()
}

fn symmetry_ranking() -> Ranking {
    Ranking::with_orders(Scheme::DegRevLex, vec![2, 1, 0], vec![0, 1, 2], Tiebreak::TermFirst).unwrap()
}

#[test]
fn printed_bases_round_trip() {
    let linear = ["janet.txt", "four_var.txt", "lewy.txt"];
    let symmetric = ["diffusion.txt", "harry_dym.txt", "transport.txt"];
    for name in linear.iter().chain(&symmetric) {
        let p = parse_problem(&read(name)).unwrap();
        let is_sym = symmetric.contains(name);
        let names = if is_sym { symmetry_names() } else { p.names.clone() };
        let cmd = if is_sym {
            Command::Symmetry { file: file() }
        } else {
            Command::Complete { file: file() }
        };
        for d in DivisionKind::ALL {
            // coordinates are not generic enough for a finite Pommaret basis
            if *name == "transport.txt" && d == DivisionKind::Pommaret {
                continue;
            }
            let flags = Flags {
                division: Some(d),
                ..Flags::default()
            };
            let o = execute(&cmd, &read(name), &flags).unwrap();
            let mut printed: Vec<String> = o.report.basis.unwrap().elements.into_iter().map(|e| e.text).collect();
            printed.extend(o.report.system.unwrap_or_default());
            let r = if is_sym {
                symmetry_ranking()
            } else {
                Ranking::new(Scheme::GrLex, p.nvars(), p.nfuncs(), Tiebreak::TermFirst)
            };
            for line in printed {
                let q = parse_linear(&line, &names).unwrap();
                assert_eq!(q.display_with(&names, &r).to_string(), line, "{name}");
                let again = parse_linear(&q.display_with(&names, &r).to_string(), &names).unwrap();
                assert_eq!(again, q);
            }
        }
    }
}

fn complete(eqs: &[LinearDiffPoly], kind: DivisionKind) -> InvolutiveBasis {
    minimal_involutive_basis(eqs, &CompletionOptions::new(kind, symmetry_ranking())).unwrap()
}

fn generated(name: &str) -> Vec<LinearDiffPoly> {
    let o = execute(&Command::Symmetry { file: file() }, &read(name), &Flags::default()).unwrap();
    let names = symmetry_names();
    o.report
        .system
        .unwrap()
        .iter()
        .map(|l| parse_linear(l, &names).unwrap())
        .collect()
}

#[test]
fn listed_determining_systems_generate_the_same_ideal() {
    let names = symmetry_names();
    let parse = |ls: &[&str]| -> Vec<LinearDiffPoly> { ls.iter().map(|l| parse_linear(l, &names).unwrap()).collect() };
    let diffusion = parse(&[
        "D[xi1,{0,0,2}]",
        "D[xi2,{0,0,2}]",
        "t*D[eta,{0,0,2}] - 2*t*D[xi2,{0,1,1}] - 2*y*D[xi2,{0,0,1}]",
        "D[xi1,{0,0,1}]",
        "2*t^2*D[eta,{0,1,1}] - t^2*D[xi2,{0,2,0}] - y*t*D[xi2,{0,1,0}] + t*D[xi2,{1,0,0}] + y*xi1 - t*eta",
        "t*D[eta,{0,2,0}] - y*D[eta,{0,1,0}] - D[eta,{1,0,0}]",
        "t^2*D[xi1,{0,2,0}] - y*t*D[xi1,{0,1,0}] + 2*t*D[xi2,{0,1,0}] - t*D[xi1,{1,0,0}] - xi1",
        "t*D[xi1,{0,1,1}] + D[xi2,{0,0,1}]",
        "D[xi1,{0,1,0}]",
    ]);
    let harry_dym = parse(&[
        "D[xi1,{0,0,1}]",
        "D[xi1,{0,1,0}]",
        "D[xi2,{0,0,1}]",
        "D[eta,{0,0,2}]",
        "D[eta,{0,1,1}] - D[xi2,{0,2,0}]",
        "D[eta,{1,0,0}] - y^3*D[eta,{0,3,0}]",
        "3*y^3*D[eta,{0,2,1}] + D[xi2,{1,0,0}] - y^3*D[xi2,{0,3,0}]",
        "y*D[xi1,{1,0,0}] - 3*y*D[xi2,{0,1,0}] + 3*eta",
    ]);
    for (listed, file) in [(diffusion, "diffusion.txt"), (harry_dym, "harry_dym.txt")] {
        for kind in [DivisionKind::Janet, DivisionKind::Pommaret] {
            assert_eq!(
                complete(&listed, kind).elements,
                complete(&generated(file), kind).elements,
                "{file} {kind}"
            );
        }
    }
}

#[test]
fn listed_lexinduced_set_is_not_involutive() {
    let p = parse_problem(&read("janet.txt")).unwrap();
    let listed: Vec<LinearDiffPoly> = [
        "D[y,{2,1,0}] - D[y,{0,0,2}]",
        "D[y,{2,0,3}]",
        "D[y,{2,0,2}]",
        "D[y,{2,0,1}] - x2*D[y,{0,0,3}]",
        "D[y,{2,0,0}] - x2*D[y,{0,0,2}]",
        "D[y,{0,2,1}]",
        "D[y,{0,2,0}]",
        "D[y,{0,1,3}]",
        "D[y,{0,1,2}]",
        "D[y,{0,0,4}]",
    ]
    .iter()
    .map(|l| parse_linear(l, &p.names).unwrap())
    .collect();
    let r = Ranking::new(Scheme::GrLex, 3, 1, Tiebreak::TermFirst);
    assert!(groebner_oracle(&listed, &r));
    for kind in DivisionKind::ALL {
        let b = InvolutiveBasis::from_elements(&listed, CompletionOptions::new(kind, r.clone())).unwrap();
        assert!(!verify_involutive(&b), "{kind}");
    }
    // the computed basis adds exactly the x3-prolongation of the first element
    let done = minimal_involutive_basis(&listed, &CompletionOptions::new(DivisionKind::LexInduced, r.clone())).unwrap();
    let extra: Vec<&LinearDiffPoly> = done.elements.iter().filter(|q| !listed.contains(q)).collect();
    assert_eq!(extra, vec![&listed[0].differentiate(2)]);
}

#[test]
fn trace_lines() {
    let (code, out, _) = bin(&["complete", "--trace", &path("janet.txt")]);
    assert_eq!(code, 0);
    let trace: Vec<&str> = out.lines().skip_while(|l| *l != "trace:").skip(1).collect();
    assert_eq!(trace.len(), 10, "{out}");
    let (_, json, _) = bin(&["complete", "--trace", "--json", &path("janet.txt")]);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["trace"].as_array().unwrap().len(), 10);
}

#[test]
fn criterion_flag_changes_work_not_result() {
    let (_, on, _) = bin(&["complete", "--json", &path("janet.txt")]);
    let (_, off, _) = bin(&["complete", "--json", "--criterion", "off", &path("janet.txt")]);
    let (on, off): (Value, Value) = (serde_json::from_str(&on).unwrap(), serde_json::from_str(&off).unwrap());
    assert_eq!(on["basis"]["elements"], off["basis"]["elements"]);
    assert!(on["basis"]["stats"]["nf_calls"].as_u64() < off["basis"]["stats"]["nf_calls"].as_u64());
}

#[test]
fn symmetry_report() {
    let (code, out, _) = bin(&["symmetry", &path("harry_dym.txt")]);
    assert_eq!(code, 0);
    assert!(out.contains("basis (10 elements):"));
    assert!(out.ends_with("dimension: 5\n"), "{out}");
    let (_, out, _) = bin(&["symmetry", &path("transport.txt")]);
    assert!(out.contains("dimension: infinite"), "{out}");
}
