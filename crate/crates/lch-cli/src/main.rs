use std::io::Write;

fn main() {
    let mut stdin = std::io::stdin().lock();
    let outcome = lch_cli::run(std::env::args(), &mut stdin);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    let _ = std::io::stderr().flush();
    std::process::exit(outcome.code);
}
