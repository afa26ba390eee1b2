//! Dense complex Hermitian linear algebra: storage, Jacobi eigensolver,
//! numerical rank, Moore-Penrose pseudoinverse and range projectors.

mod eigen;
mod hermitian;
mod matrix;
mod tolerance;

pub(crate) use eigen::{herm_pinv, herm_rank, jacobi_eig};
pub use eigen::{
    hermitian_eig, is_psd, numerical_rank, pinv, range_projector, EigenDecomposition, MAX_SWEEPS,
    OFFDIAG_RTOL,
};
pub use hermitian::{HermitianMatrix, ASYMMETRY_RTOL};
pub use matrix::{CMatrix, C64};
pub use tolerance::{
    TolerancePolicy, FISCHER_RTOL, MAXIMALITY_RTOL, PINV_RTOL, SCHUR_DET_RTOL, ZERO_PATTERN_RTOL,
};

/// Relative Frobenius distance `‖a − b‖ / max(‖a‖, ‖b‖)`; zero when both vanish.
pub fn relative_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    let scale = a.frobenius_norm().max(b.frobenius_norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).frobenius_norm() / scale
    }
}

/// Largest relative residual among the four Penrose conditions for `hp` as
/// the pseudoinverse of `h`.
pub fn penrose_residual(h: &CMatrix, hp: &CMatrix) -> f64 {
    let hhp = h * hp;
    let hph = hp * h;
    [
        relative_distance(&(&hhp * h), h),
        relative_distance(&(&hph * hp), hp),
        relative_distance(&hhp.adjoint(), &hhp),
        relative_distance(&hph.adjoint(), &hph),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}
