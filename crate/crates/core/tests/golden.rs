//! The checked-in scripts under `proofs/` are exactly what the generators
//! print. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

use ha0w::grid::Grid;
use ha0w::kernel::{
    check_script, prove_cong_arg, prove_cong_fun, prove_eq_refl, prove_eq_sym, prove_eq_trans,
    prove_obs, to_script, Theorem,
};

fn theorems() -> Vec<Theorem> {
    let grid = Grid::Small;
    let mut out = Vec::new();
    for p in grid.tuples(2) {
        out.push(prove_cong_arg(&p[0], &p[1]).unwrap());
        out.push(prove_cong_fun(&p[0], &p[1]).unwrap());
    }
    for s in grid.types() {
        out.push(prove_eq_refl(&s).unwrap());
        out.push(prove_eq_sym(&s).unwrap());
        out.push(prove_eq_trans(&s).unwrap());
    }
    for s in grid.higher_types() {
        out.push(prove_obs(&s).unwrap());
    }
    out
}

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("proofs")
}

#[test]
fn golden_scripts() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut stale = Vec::new();
    for t in theorems() {
        let text = to_script(&t.derivation).unwrap();
        let path = dir().join(format!("{}.proof", t.name));
        if update {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(on_disk) if on_disk == text => {}
            _ => stale.push(t.name.clone()),
        }
    }
    assert!(stale.is_empty(), "stale golden scripts (rerun with UPDATE_GOLDEN=1): {:?}", stale);
}

#[test]
fn every_golden_script_checks() {
    let mut n = 0;
    for entry in std::fs::read_dir(dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("proof") {
            continue;
        }
        let report = check_script(&std::fs::read_to_string(&path).unwrap())
            .unwrap_or_else(|e| panic!("{}: {}", path.display(), e));
        assert!(report.goal.is_some(), "{} has no goal", path.display());
        n += 1;
    }
    assert!(n >= 47, "only {} scripts", n);
}

#[test]
fn named_script_exists() {
    assert!(dir().join("cong_arg_0_arrow00.proof").exists());
}
