fn main() {
    println!("weber-cm: CLI wiring arrives with the report module");
}
