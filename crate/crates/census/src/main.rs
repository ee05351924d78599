fn main() {
    std::process::exit(gsp_census::cli::run(std::env::args_os()));
}
