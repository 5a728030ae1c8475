fn main() {
    std::process::exit(gsn_workbench::cli::run());
}
