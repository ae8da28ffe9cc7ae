fn main() {
    std::process::exit(halfdisk_cli::run(std::env::args_os()));
}
