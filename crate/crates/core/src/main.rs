fn main() -> std::process::ExitCode {
    bwmj::cli::main()
}
