use std::process::{Command, Output};

use xorlin::codes::{self, CodeFamily};
use xorlin::gf2::BitMatrix;

fn xorlin(args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xorlin"))
        .args(args.split_whitespace())
        .output()
        .expect("spawn xorlin")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn optimized_hamming_stats() {
    let o = xorlin("circuit hamming 3 --optimize --stats");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "size=5 depth=2\n");
}

#[test]
fn encode_hadamard() {
    let o = xorlin("encode hadamard 3 --msg 100");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "00001111\n");
    let o = xorlin("encode hadamard 3 --msg 0x4");
    assert_eq!(stdout(&o), "00001111\n");
}

#[test]
fn bounds_with_search() {
    let o = xorlin("verify bounds sys-punct-hadamard 2 --search");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "lower=2 achieved=2 searched=2 tight=yes\n");
}

#[test]
fn matrices_parse_back() {
    let o = xorlin("matrix shortened-hamming 4 --pcm");
    assert!(o.status.success());
    let h = BitMatrix::from_text(&stdout(&o)).unwrap();
    assert_eq!(h, codes::parity_check(CodeFamily::ShortenedHamming, 4).unwrap());
    let o = xorlin("matrix ext-hamming 4");
    let g = BitMatrix::from_text(&stdout(&o)).unwrap();
    assert_eq!(g.mul(&codes::pcm_ext_hamming(4).unwrap().transpose()).unwrap(), BitMatrix::zeros(11, 5));
}

#[test]
fn exit_status() {
    assert_eq!(xorlin("").status.code(), Some(2));
    assert_eq!(xorlin("encode hadamard x --msg 1").status.code(), Some(2));
    let o = xorlin("encode hadamard 3 --msg 0x10");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("does not fit"));
    assert_eq!(xorlin("--version").status.code(), Some(0));
}

#[test]
fn dot_file_written() {
    let path = std::env::temp_dir().join(format!("xorlin-it-{}.dot", std::process::id()));
    let o = xorlin(&format!("circuit punct-hadamard 3 --dot {}", path.display()));
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.contains("shape=box"));
    assert!(stdout(&o).ends_with("size=7 depth=3\n"));
}
