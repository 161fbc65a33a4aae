fn main() {
    std::process::exit(incidence_toric::cli::run(std::env::args_os()));
}
