fn main() {
    std::process::exit(semitoric::cli::run());
}
