use std::path::PathBuf;
use std::process::Command;

/// A CLI invocation whose stdout is pinned in `tests/golden/<name>.out`.
pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const CASES: &[GoldenCase] = &[
    GoldenCase {
        name: "gb_binomial",
        args: &["gb", "--field", "p=2", "--vars", "x1,x2,T1,T2", "--gens", "x1^2*T2 - x2*T1"],
        exit: 0,
    },
    GoldenCase {
        name: "gb_lex_json",
        args: &["gb", "--vars", "x,y", "--order", "lex", "--gens", "x^2 - y; y^2 - x", "--format", "json"],
        exit: 0,
    },
    GoldenCase {
        name: "member",
        args: &["member", "--field", "p=2", "--vars", "x3,x4,U", "--gens", "x3, U*x3^2 - x4^4", "--poly", "x4^2"],
        exit: 0,
    },
    GoldenCase { name: "saturate", args: &["saturate", "--vars", "x,y", "--gens", "x*y", "--by", "x"], exit: 0 },
    GoldenCase { name: "intersect", args: &["intersect", "--vars", "x,y", "--gens", "x", "--with", "y"], exit: 0 },
    GoldenCase {
        name: "eliminate",
        args: &["eliminate", "--vars", "x,y", "--gens", "y - x^2, x - 1", "--eliminate", "x"],
        exit: 0,
    },
    GoldenCase {
        name: "fitting",
        args: &["fitting", "--vars", "a,b", "--matrix", "a, 0; 0, b", "--index", "1"],
        exit: 0,
    },
    GoldenCase {
        name: "kaehler",
        args: &["kaehler", "--field", "p=2", "--vars", "x1,x2,T1,T2", "--gens", "x1^2*T2 - x2*T1", "--index", "3"],
        exit: 0,
    },
    GoldenCase {
        name: "rees_print",
        args: &["rees", "print", "--p", "2", "--n", "3", "--s", "1", "--l", "2", "--v", "2,2,1"],
        exit: 0,
    },
    GoldenCase {
        name: "rees_chart",
        args: &["rees", "chart", "--p", "3", "--n", "3", "--s", "1", "--l", "1", "--v", "3,1,1", "--r", "3"],
        exit: 0,
    },
    GoldenCase {
        name: "rees_micali",
        args: &["rees", "micali", "--p", "2", "--n", "3", "--s", "1", "--l", "2", "--v", "2,2,1", "--format", "json"],
        exit: 0,
    },
    GoldenCase {
        name: "thm41_json",
        args: &[
            "verify", "thm41", "--p", "2", "--n", "3", "--s", "1", "--l", "2", "--v", "2,2,1", "--policy", "corrected",
            "--format", "json", "--no-timing",
        ],
        exit: 0,
    },
    GoldenCase {
        name: "thm41_paper_index",
        args: &[
            "verify", "thm41", "--p", "2", "--n", "3", "--s", "2", "--l", "2", "--v", "2,1", "--policy", "paper",
            "--format", "json", "--no-timing",
        ],
        exit: 1,
    },
    GoldenCase {
        name: "cor42",
        args: &["verify", "cor42", "--p", "3", "--n", "3", "--s", "1", "--l", "1", "--v", "3,1,1", "--no-timing"],
        exit: 0,
    },
    GoldenCase {
        name: "image",
        args: &["verify", "image", "--p", "2", "--n", "4", "--s", "2", "--l", "3", "--v", "2,2,1", "--no-timing"],
        exit: 0,
    },
    GoldenCase { name: "nonnormal", args: &["verify", "nonnormal", "--p", "2"], exit: 0 },
    GoldenCase {
        name: "grid_json",
        args: &["verify", "grid", "--grid", "grids/default.grid", "--format", "json", "--no-timing", "--workers", "4"],
        exit: 0,
    },
    GoldenCase { name: "props", args: &["verify", "props", "--gb-cases", "20", "--fitting-cases", "10", "--derivative-cases", "20"], exit: 0 },
    GoldenCase {
        name: "invalid_params",
        args: &["verify", "thm41", "--p", "2", "--n", "3", "--s", "1", "--l", "3", "--v", "2,2,2"],
        exit: 2,
    },
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn golden_path(case: &GoldenCase) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{}.out", case.name))
}

/// Runs the binary from the crate directory; returns (exit code, stdout).
pub fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_fitt")).args(args).current_dir(crate_dir()).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}
