fn main() {
    std::process::exit(leray_lab::cli::run(std::env::args_os()));
}
