fn main() -> std::process::ExitCode {
    treelike::cli::main()
}
