use std::process::ExitCode;

fn main() -> ExitCode {
    let depth = std::env::var(dualis_cli::DEPTH_ENV).ok();
    let code = dualis_cli::run(
        std::env::args_os(),
        depth,
        &mut std::io::stdin().lock(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
