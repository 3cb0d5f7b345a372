fn main() -> std::process::ExitCode {
    clgd::cli::main()
}
