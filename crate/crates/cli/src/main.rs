use clap::Parser;

fn main() {
    let cli = b0lab_cli::Cli::parse();
    let code = b0lab_cli::run(cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
