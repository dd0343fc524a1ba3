//! Thin FFI wrappers over the LAPACK routines bundled with system OpenBLAS.
//!
//! Matrices are passed row-major. For the symmetric/Hermitian drivers that is
//! harmless: a real symmetric matrix equals its transpose, and the transpose of
//! a Hermitian matrix is its conjugate, which has the same (real) spectrum.
//! Eigenvectors returned by `sym_eigen` are therefore rows of the output array.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::os::raw::c_char;

extern "C" {
    fn dsyevd_(
        jobz: *const c_char,
        uplo: *const c_char,
        n: *const i32,
        a: *mut f64,
        lda: *const i32,
        w: *mut f64,
        work: *mut f64,
        lwork: *const i32,
        iwork: *mut i32,
        liwork: *const i32,
        info: *mut i32,
    );
    fn zheevd_(
        jobz: *const c_char,
        uplo: *const c_char,
        n: *const i32,
        a: *mut Complex64,
        lda: *const i32,
        w: *mut f64,
        work: *mut Complex64,
        lwork: *const i32,
        rwork: *mut f64,
        lrwork: *const i32,
        iwork: *mut i32,
        liwork: *const i32,
        info: *mut i32,
    );
    fn dgeev_(
        jobvl: *const c_char,
        jobvr: *const c_char,
        n: *const i32,
        a: *mut f64,
        lda: *const i32,
        wr: *mut f64,
        wi: *mut f64,
        vl: *mut f64,
        ldvl: *const i32,
        vr: *mut f64,
        ldvr: *const i32,
        work: *mut f64,
        lwork: *const i32,
        info: *mut i32,
    );
}

fn check(routine: &'static str, info: i32) -> Result<()> {
    if info == 0 {
        Ok(())
    } else {
        Err(Error::Lapack { routine, info })
    }
}

/// Eigenvalues (ascending) of a real symmetric `n x n` matrix; `a` is destroyed.
pub fn sym_eigenvalues(a: &mut [f64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    let mut w = vec![0.0; n];
    dsyevd_driver(b'N', a, n, &mut w)?;
    Ok(w)
}

/// Eigenvalues and eigenvectors of a real symmetric matrix. On return `a`
/// holds the eigenvectors as rows (row i pairs with eigenvalue w[i]).
pub fn sym_eigen(a: &mut [f64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    let mut w = vec![0.0; n];
    dsyevd_driver(b'V', a, n, &mut w)?;
    Ok(w)
}

fn dsyevd_driver(jobz: u8, a: &mut [f64], n: usize, w: &mut [f64]) -> Result<()> {
    let nn = n as i32;
    let mut info = 0i32;
    let (mut wq, mut iwq) = ([0.0f64], [0i32]);
    unsafe {
        dsyevd_(
            &(jobz as c_char),
            &(b'L' as c_char),
            &nn,
            a.as_mut_ptr(),
            &nn,
            w.as_mut_ptr(),
            wq.as_mut_ptr(),
            &(-1i32),
            iwq.as_mut_ptr(),
            &(-1i32),
            &mut info,
        );
    }
    check("dsyevd (workspace query)", info)?;
    let lwork = wq[0] as i32;
    let liwork = iwq[0];
    let mut work = vec![0.0f64; lwork.max(1) as usize];
    let mut iwork = vec![0i32; liwork.max(1) as usize];
    unsafe {
        dsyevd_(
            &(jobz as c_char),
            &(b'L' as c_char),
            &nn,
            a.as_mut_ptr(),
            &nn,
            w.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            iwork.as_mut_ptr(),
            &liwork,
            &mut info,
        );
    }
    check("dsyevd", info)
}

/// Eigenvalues (ascending) of a complex Hermitian `n x n` matrix; `a` is destroyed.
pub fn herm_eigenvalues(a: &mut [Complex64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    let nn = n as i32;
    let mut w = vec![0.0; n];
    let mut info = 0i32;
    let (mut wq, mut rwq, mut iwq) = ([Complex64::new(0.0, 0.0)], [0.0f64], [0i32]);
    unsafe {
        zheevd_(
            &(b'N' as c_char),
            &(b'L' as c_char),
            &nn,
            a.as_mut_ptr(),
            &nn,
            w.as_mut_ptr(),
            wq.as_mut_ptr(),
            &(-1i32),
            rwq.as_mut_ptr(),
            &(-1i32),
            iwq.as_mut_ptr(),
            &(-1i32),
            &mut info,
        );
    }
    check("zheevd (workspace query)", info)?;
    let lwork = wq[0].re as i32;
    let lrwork = rwq[0] as i32;
    let liwork = iwq[0];
    let mut work = vec![Complex64::new(0.0, 0.0); lwork.max(1) as usize];
    let mut rwork = vec![0.0f64; lrwork.max(1) as usize];
    let mut iwork = vec![0i32; liwork.max(1) as usize];
    unsafe {
        zheevd_(
            &(b'N' as c_char),
            &(b'L' as c_char),
            &nn,
            a.as_mut_ptr(),
            &nn,
            w.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            rwork.as_mut_ptr(),
            &lrwork,
            iwork.as_mut_ptr(),
            &liwork,
            &mut info,
        );
    }
    check("zheevd", info)?;
    Ok(w)
}

/// Eigenvalues of a real general (non-symmetric) `n x n` matrix; `a` is destroyed.
///
/// Row-major input means LAPACK sees the transpose, which has the same spectrum.
pub fn real_eigenvalues(a: &mut [f64], n: usize) -> Result<Vec<Complex64>> {
    assert_eq!(a.len(), n * n);
    let nn = n as i32;
    let mut wr = vec![0.0f64; n];
    let mut wi = vec![0.0f64; n];
    let mut info = 0i32;
    let mut wq = [0.0f64];
    unsafe {
        dgeev_(
            &(b'N' as c_char),
            &(b'N' as c_char),
            &nn,
            a.as_mut_ptr(),
            &nn,
            wr.as_mut_ptr(),
            wi.as_mut_ptr(),
            std::ptr::null_mut(),
            &nn,
            std::ptr::null_mut(),
            &nn,
            wq.as_mut_ptr(),
            &(-1i32),
            &mut info,
        );
    }
    check("dgeev (workspace query)", info)?;
    let lwork = wq[0] as i32;
    let mut work = vec![0.0f64; lwork.max(1) as usize];
    unsafe {
        dgeev_(
            &(b'N' as c_char),
            &(b'N' as c_char),
            &nn,
            a.as_mut_ptr(),
            &nn,
            wr.as_mut_ptr(),
            wi.as_mut_ptr(),
            std::ptr::null_mut(),
            &nn,
            std::ptr::null_mut(),
            &nn,
            work.as_mut_ptr(),
            &lwork,
            &mut info,
        );
    }
    check("dgeev", info)?;
    Ok(wr
        .into_iter()
        .zip(wi)
        .map(|(re, im)| Complex64::new(re, im))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_eigenvalues_2x2() {
        let mut a = vec![2.0, 1.0, 1.0, 2.0];
        let w = sym_eigenvalues(&mut a, 2).unwrap();
        assert!((w[0] - 1.0).abs() < 1e-12 && (w[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn sym_eigen_vectors_are_rows() {
        // [[0,1],[1,0]] -> eigenpairs (-1, (1,-1)/sqrt2), (+1, (1,1)/sqrt2)
        let mut a = vec![0.0, 1.0, 1.0, 0.0];
        let w = sym_eigen(&mut a, 2).unwrap();
        assert!((w[0] + 1.0).abs() < 1e-12 && (w[1] - 1.0).abs() < 1e-12);
        let r0 = [a[0], a[1]];
        assert!((r0[0] + r0[1]).abs() < 1e-12, "row 0 should be (1,-1)/sqrt2 up to sign");
    }

    #[test]
    fn herm_eigenvalues_2x2() {
        // [[1, i],[-i, 1]] -> {0, 2}
        let mut a = vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(1.0, 0.0),
        ];
        let w = herm_eigenvalues(&mut a, 2).unwrap();
        assert!(w[0].abs() < 1e-12 && (w[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn real_eigenvalues_rotation() {
        // [[0,1],[-1,0]] -> +-i
        let mut a = vec![0.0, 1.0, -1.0, 0.0];
        let mut w = real_eigenvalues(&mut a, 2).unwrap();
        w.sort_by(|p, q| p.im.partial_cmp(&q.im).unwrap());
        assert!((w[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((w[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }
}
