fn main() {
    std::process::exit(corpuskit::cli::run(std::env::args_os()));
}
