fn main() {
    std::process::exit(adm_core::harness::main_with_args(std::env::args_os()));
}
