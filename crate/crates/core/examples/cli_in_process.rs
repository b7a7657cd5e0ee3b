//! Drive the command-line interface without spawning a process.

fn main() {
    let args = ["rankgen", "asym", "--what", "rk", "--k", "3", "--format", "csv"];
    let outcome = rankgen::cli::run(args.iter().map(std::ffi::OsString::from), |key| {
        (key == "RANKGEN_TOL").then(|| "1e-8".to_string())
    });
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    println!("exit code {}", outcome.code);
}
