fn main() -> std::process::ExitCode {
    tged::cli::main()
}
