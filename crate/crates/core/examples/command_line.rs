// Drives the command line front end in process.
//
// ```bash
// cargo run --example command_line
// ```

use fmlattice::cli::{run_from, Outcome};

pub fn run_example() -> Result<Vec<(Vec<&'static str>, Outcome)>, String> {
    let calls: Vec<Vec<&'static str>> = vec![
        vec!["fmlattice", "lattice-info", "--gram", r#"{"name": "L_n", "params": [10]}"#],
        vec!["fmlattice", "genus", "--gram", "[[24,-3],[-3,10]]", "--h-filter"],
        vec!["fmlattice", "count-fm", "--gram", "[[24,-3],[-3,10]]"],
        vec!["fmlattice", "count-fm", "--gram", "[[12,-3],[-3,6]]"],
        vec!["fmlattice", "count-fm", "--gram", "[[12,-3],[-3,6]]", "--general-path", "--format", "json"],
        vec!["fmlattice", "self-check", "--seed", "7", "--cases", "20"],
    ];
    Ok(calls.into_iter().map(|c| (c.clone(), run_from(c))).collect())
}

#[allow(dead_code)]
fn main() -> Result<(), String> {
    for (args, out) in run_example()? {
        println!("$ {}", args.join(" "));
        print!("{}{}", out.stdout, out.stderr);
        println!("[exit {}]\n", out.code);
    }
    Ok(())
}
