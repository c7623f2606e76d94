fn main() {
    std::process::exit(aquasynth_cli::run(std::env::args_os()));
}
