use clap::error::ErrorKind;
use clap::Parser;

fn main() {
    let cli = match abvass_cli::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => abvass_cli::commands::EXIT_USAGE,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    std::process::exit(abvass_cli::run(cli));
}
