use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let stdin = std::io::stdin();
    let (code, serve) = wortart_cli::run(&args, &mut stdin.lock(), &mut std::io::stdout(), &mut std::io::stderr());
    let _ = std::io::stdout().flush();
    let code = match serve {
        None => code,
        Some(cfg) => {
            let rt = tokio::runtime::Runtime::new().expect("tokio runtime");
            match rt.block_on(wortart_cli::server::serve(cfg)) {
                Ok(()) => 0,
                Err(f) => {
                    eprintln!("wortart: {}", f.message());
                    f.exit_code()
                }
            }
        }
    };
    std::process::exit(code);
}
