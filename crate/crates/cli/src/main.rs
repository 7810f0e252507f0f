use std::io;

fn main() {
    let code = walk_cli::run_main(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}
