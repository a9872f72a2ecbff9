fn main() {
    // populated once the numeric kernels land
}
