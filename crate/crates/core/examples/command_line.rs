// Driving the command-line interface in-process.

use branecalc::cli::run;

pub fn run_example() -> branecalc::Result<()> {
    let model = "model S6\ngenerator x 6\ngenerator y 11\nd y = x^2\n";
    for args in [
        vec!["branecalc", "check", "-"],
        vec!["branecalc", "verify", "-", "--k", "4", "--max-degree", "16"],
        vec![
            "branecalc",
            "brane",
            "-",
            "--k",
            "2",
            "--op",
            "coproduct",
            "--max-degree",
            "8",
            "--format",
            "json",
        ],
    ] {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.clone(), &mut model.as_bytes(), &mut out, &mut err);
        println!("$ {} < s6.model  (exit {code})", args.join(" "));
        print!("{}", String::from_utf8_lossy(&out));
        assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("command line example");
}
