#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace mzm {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

struct Tolerances {
    double hermitian = 1e-12;
    double norm_drift = 1e-6;
};

class NumericsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Eigenvalues ascending, eigenvectors as orthonormal columns.
struct SpectralDecomposition {
    RVec eigenvalues;
    CMat eigenvectors;

    CMat reconstruct() const;
};

// Largest |H_ij - conj(H_ji)|.
double hermitian_asymmetry(const CMat& H);

SpectralDecomposition eigh(const CMat& H, const Tolerances& tol = {});

// exp(-i s H) through the spectral decomposition.
CMat unitary_exp(const CMat& H, double s, const Tolerances& tol = {});
CMat unitary_exp(const SpectralDecomposition& sd, double s);

// out = H(t) * in
using TimeDependentOp = std::function<void(double t, const CVec& in, CVec& out)>;

struct PropagationResult {
    CVec psi;
    double norm_drift = 0.0;
    bool warning = false;
};

// Classical RK4 for i dpsi/dt = H(t) psi on [0, t_final].
PropagationResult rk4_propagate(const TimeDependentOp& H_of_t, const CVec& psi0, double t_final,
                                long steps, const Tolerances& tol = {});

// Uniform periodic grid on [0, 2pi): theta_n = 2 pi n / N.
RVec periodic_grid(int N);

}  // namespace mzm
