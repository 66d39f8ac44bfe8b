fn main() {
    std::process::exit(berezin::cli::main_entry());
}
