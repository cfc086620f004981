use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn slweno(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slweno"))
        .args(args)
        .env_remove("SLWENO_OUTPUT_DIR")
        .output()
        .expect("spawn slweno")
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = fs::remove_dir_all(&dir);
    dir
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn list_presets_names_all_twelve() {
    let o = slweno(&["list-presets"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let names: Vec<&str> = text.lines().filter_map(|l| l.split_whitespace().next()).collect();
    assert_eq!(names.len(), 12);
    for p in ["advect_sin4", "vp_smooth", "landau_strong", "keen_A", "ion_acoustic"] {
        assert!(names.contains(&p), "{p}");
    }
}

#[test]
fn configuration_errors_exit_with_code_two() {
    let cases: [&[&str]; 5] = [
        &["run", "no_such_preset"],
        &["run"],
        &["run", "advect_sin4", "-o", "nx=abc"],
        &["converge", "advect_sin4", "--meshes", "40,60"],
        &["converge", "landau_strong", "--meshes", "16,32"],
    ];
    for args in cases {
        let o = slweno(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).starts_with("error:"), "{args:?}");
    }
    let o = slweno(&["run", "advect_sin4", "-o", "no_such_key=1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no_such_key"));
}

#[test]
fn run_writes_series_and_manifest_that_reproduces_it() {
    let a = scratch("run_a");
    let b = scratch("run_b");
    let o = slweno(&[
        "run",
        "landau_strong",
        "-o",
        "nx=16",
        "-o",
        "nv=32",
        "-o",
        "t_final=2",
        "-o",
        "snapshot_times=1",
        "--output",
        a.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let series = fs::read_to_string(a.join("series.csv")).unwrap();
    let header: Vec<&str> = series.lines().next().unwrap().split(',').collect();
    for col in ["t", "e_l2", "e_max", "rel_l1", "rel_l2", "rel_kinetic", "rel_entropy", "f_min"] {
        assert!(header.contains(&col), "{col}");
    }
    let last: Vec<f64> = series.lines().last().unwrap().split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(last[0], 2.0);
    assert!(a.join("f_t1.000000.dat").exists());

    let manifest = a.join("manifest.txt");
    let o = slweno(&["run", "--config", manifest.to_str().unwrap(), "--output", b.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(series, fs::read_to_string(b.join("series.csv")).unwrap());
}

#[test]
fn converge_prints_table_and_csv() {
    let dir = scratch("converge");
    let o = slweno(&["converge", "advect_sin4", "--meshes", "20,40", "--output", dir.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let table = String::from_utf8(o.stdout).unwrap();
    assert_eq!(table.lines().count(), 3);
    let csv = fs::read_to_string(dir.join("convergence.csv")).unwrap();
    assert!(csv.starts_with("n,l1_error,l1_order"));
    assert_eq!(csv.lines().count(), 3);
}
