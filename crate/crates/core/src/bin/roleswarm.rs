fn main() -> std::process::ExitCode {
    roleswarm::cli::main()
}
