use clap::Parser;

fn main() {
    let cli = quatpoly::cli::Cli::parse();
    std::process::exit(quatpoly::cli::run(cli));
}
