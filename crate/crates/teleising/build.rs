fn main() {
    // System OpenBLAS bundles LAPACK (dsyevd_/zheevd_/dgeev_); see src/lapack.rs.
    println!("cargo:rustc-link-lib=dylib=openblas");
}
