fn main() {
    // placeholder until the harness lands
}
