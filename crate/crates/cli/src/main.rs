use std::io::{stderr, stdout};

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let code = sylowlab::run(&argv, &mut stdout(), &mut stderr());
    std::process::exit(code);
}
