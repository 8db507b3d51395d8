use std::io;

fn main() {
    let status = imgcipher::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(status);
}
