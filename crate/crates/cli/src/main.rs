fn main() {
    std::process::exit(siftsphere_cli::run(std::env::args_os()));
}
