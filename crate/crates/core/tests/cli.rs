use std::path::Path;
use std::process::{Command, Output};

fn borwein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_borwein"))
        .args(args)
        .env_remove("BORWEIN_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_golden() {
    let o = borwein(&["expand", "--p", "3", "--s", "1", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "i,a_i\n0,1\n1,-1\n2,-1\n3,1\n");

    let o = borwein(&["expand", "--s", "2", "--n", "1", "--format", "jsonl"]);
    assert_eq!(
        stdout(&o),
        "{\"i\":0,\"a_i\":1}\n{\"i\":1,\"a_i\":-2}\n{\"i\":2,\"a_i\":-1}\n{\"i\":3,\"a_i\":4}\n\
         {\"i\":4,\"a_i\":-1}\n{\"i\":5,\"a_i\":-2}\n{\"i\":6,\"a_i\":1}\n"
    );
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["expand", "--n", "0"][..],
        &["expand", "--p", "4", "--n", "1"],
        &["expand", "--n", "1", "--n-max", "3"],
        &["sum", "--d", "0"],
        &["sweep", "--q", "4"],
        &["frobnicate"],
        &["expand", "--n", "40", "--max-degree", "1000"],
    ] {
        let o = borwein(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty() || !stdout(&o).contains(",1\n"), "{args:?}");
    }
}

#[test]
fn degree_cap_message() {
    let o = borwein(&["expand", "--n", "40", "--max-degree", "1000"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("degree 4800 exceeds the cap 1000"), "{err}");
}

#[test]
fn sum_golden() {
    let o = borwein(&["sum", "--n", "1"]);
    assert_eq!(
        stdout(&o),
        "p,s,n,d,b,S\n3,1,1,6,0,1\n3,1,1,6,1,-1\n3,1,1,6,2,-1\n3,1,1,6,3,1\n3,1,1,6,4,0\n3,1,1,6,5,0\n"
    );
    let o = borwein(&["sum", "--n", "1", "--d", "3", "--b", "1"]);
    assert_eq!(stdout(&o), "p,s,n,d,b,S\n3,1,1,3,1,-1\n");
}

#[test]
fn decompose_golden() {
    let o = borwein(&["decompose", "--n", "1"]);
    assert_eq!(stdout(&o), "class,j,coeff\n0,0,1\n0,1,1\n1,0,1\n2,0,1\n");
}

#[test]
fn verify_grid_passes() {
    let o = borwein(&["verify", "--p", "3,5", "--s", "1,2", "--n-max", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("p,s,n,b,S,main_num,main_den,within_bound,dense,nd_fold,nd_char,nd_brute")
    );
    // sum over the grid of 2pn residues
    let expected: u64 = [3u64, 5]
        .iter()
        .flat_map(|&p| [1u64, 2].into_iter().flat_map(move |_| (1..=4).map(move |n| 2 * p * n)))
        .sum();
    assert_eq!(lines.clone().count() as u64, expected);
    assert!(lines.all(|l| l.contains(",true,") && !l.contains("fail")));
}

#[test]
fn verify_skips_brute_column_beyond_guard() {
    let o = borwein(&["verify", "--p", "7", "--s", "2", "--n", "2", "--b", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",true,ok,ok,ok,skip"));
}

#[test]
fn verify_empty_grid() {
    let o = borwein(&["verify", "--n-max", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn sieve_test_is_deterministic() {
    let a = borwein(&["sieve-test", "--seed", "17"]);
    let b = borwein(&["sieve-test", "--seed", "17"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.lines().filter(|l| l.starts_with("li_wan,")).count() >= 100);
    assert!(text.lines().any(|l| l.starts_with("root_product,p=23 r=22,")));
    assert!(!text.contains(",false\n"));
    let c = borwein(&["sieve-test", "--seed", "18"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn sweep_table() {
    let o = borwein(&["sweep", "--n-max", "10", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 10);
    for (i, row) in rows.iter().enumerate() {
        assert!(row.starts_with(&format!("3,1,{},", i + 1)));
        assert!(!row.contains("fail"), "{row}");
    }
    // n = 4, q = 2: bound 2 * 1 * 3^1 / 2 = 3
    assert!(rows[3].contains(",3,3.0000000000000000000000000000000000000,"));
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_borwein"))
        .args(["sum", "--n", "2", "--format", "jsonl"])
        .env("BORWEIN_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(dir.path().join("sum.jsonl")).unwrap();
    assert_eq!(written.lines().count(), 12);
    assert!(written.starts_with("{\"p\":3,\"s\":1,\"n\":2,\"d\":12,\"b\":0,\"S\":"));
}

#[test]
fn out_flag_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("grid.conf");
    std::fs::write(&conf, "p=5\ns=2\nn=1\nformat=jsonl\n").unwrap();
    let out = dir.path().join("nested/report.csv");
    let o = borwein(&[
        "sum",
        "--config",
        conf.to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(Path::new(&out)).unwrap();
    assert!(text.starts_with("p,s,n,d,b,S\n5,2,1,10,0,"));
    assert_eq!(text.lines().count(), 11);
}
