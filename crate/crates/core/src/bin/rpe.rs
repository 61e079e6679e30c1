fn main() {
    std::process::exit(rpe_lab::cli::main_from_env());
}
