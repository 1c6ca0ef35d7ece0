use clap::Parser;

use bhzeta_cli::{render_text, run, Cli, EXIT_INPUT};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report is JSON"));
            } else {
                print!("{}", render_text(&report));
            }
            std::process::exit(report.exit_status);
        }
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(EXIT_INPUT);
        }
    }
}
