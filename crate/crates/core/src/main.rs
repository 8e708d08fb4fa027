fn main() -> std::process::ExitCode {
    nhqc_ion::cli::main()
}
