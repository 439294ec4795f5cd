fn main() {
    let code = invariant_algebra::cli::dispatch(std::env::args_os());
    std::process::exit(code);
}
