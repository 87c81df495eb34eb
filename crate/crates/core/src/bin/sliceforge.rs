fn main() {
    std::process::exit(sliceforge::cli::main_exit());
}
