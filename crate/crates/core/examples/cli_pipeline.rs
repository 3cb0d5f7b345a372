//! Drive the `clgd` binary end to end: synth, register, eval.
//!
//! Build the binary first (`cargo build --release`); the example looks for it
//! next to itself or at `$CLGD_BIN`.

use std::path::PathBuf;
use std::process::Command;

fn binary() -> Option<PathBuf> {
    if let Ok(p) = std::env::var("CLGD_BIN") {
        return Some(PathBuf::from(p));
    }
    let exe = std::env::current_exe().ok()?;
    let candidate = exe.parent()?.parent()?.join("clgd");
    candidate.exists().then_some(candidate)
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let Some(bin) = binary() else {
        println!("clgd binary not found; run `cargo build` first");
        return Ok(());
    };
    let dir = std::env::temp_dir().join(format!("clgd-cli-{}", std::process::id()));
    let s = |p: &str| dir.join(p).display().to_string();
    let run = |args: &[&str]| -> Result<String, Box<dyn std::error::Error>> {
        let out = Command::new(&bin).args(args).output()?;
        if !out.status.success() {
            return Err(String::from_utf8_lossy(&out.stderr).into_owned().into());
        }
        Ok(String::from_utf8(out.stdout)?)
    };

    print!("{}", run(&["synth", "--kind", "two-objects", "--n", "400", "--seed", "9",
        "--random-rotation", "30", "--random-translation", "0.3", "--out-dir", &s("")])?);
    print!("dist (clgd): {}", run(&["dist", "--a", &s("src.xyz"), "--b", &s("tgt.xyz")])?);
    print!("{}", run(&["register", "--src", &s("src.xyz"), "--tgt", &s("tgt.xyz"), "--iters", "300",
        "--out", &s("reg.json")])?);
    print!("{}", run(&["eval", "--pred", &s("reg.json"), "--gt", &s("gt.json")])?);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
