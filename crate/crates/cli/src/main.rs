use clap::Parser;

fn main() {
    let cli = dtcsp_cli::Cli::parse();
    let code = dtcsp_cli::run(cli, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
