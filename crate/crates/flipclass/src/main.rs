fn main() -> std::process::ExitCode {
    flipclass::cli::main()
}
