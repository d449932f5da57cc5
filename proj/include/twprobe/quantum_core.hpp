// Dense complex linear algebra, Lindblad integration, channel application and
// steady-state solving for few-level systems. Dimensions are capped at 16;
// the largest space used anywhere is the atom (x) field-mode slice space of
// the coherent-beam oracle.
//
// Conventions: qubit basis index 0 = |e> (sigma_z = +1), index 1 = |g>.
// All rates are relative to a caller-chosen base unit; nothing in here
// converts units.
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "twprobe/errors.hpp"

namespace twprobe {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr int kMaxDim = 16;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenvalueTol = 1e-10;
inline constexpr double kTraceDriftAbort = 1e-6;

// Two-level operators (qubit basis: index 0 = |e>, index 1 = |g>).
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();
Matrix sigma_plus();
Matrix sigma_minus();
Vector ket_e();
Vector ket_g();
Vector ket_plus();

// Truncated ladder operator on n_levels Fock states |0..n_levels-1>.
Matrix annihilation(int n_levels);

// Truncated coherent state; not renormalized, so the caller can audit the
// tail weight lost to truncation.
Vector coherent_state(Complex alpha, int n_levels);

Matrix kron(const Matrix& a, const Matrix& b);

// Trace over the second factor of a dim_first (x) dim_second product space.
Matrix partial_trace_second(const Matrix& joint, int dim_first, int dim_second);

bool all_finite(const Matrix& m);
double hermiticity_defect(const Matrix& m);

// Hermitian, unit-trace, positive semidefinite (within tolerances) state.
// Validates on construction and is immutable afterwards.
class DensityMatrix {
  public:
    explicit DensityMatrix(Matrix m);
    static DensityMatrix pure(const Vector& ket);

    const Matrix& m() const { return mat_; }
    int dim() const { return static_cast<int>(mat_.rows()); }
    double population(int i) const { return mat_(i, i).real(); }
    Complex coherence(int i, int j) const { return mat_(i, j); }
    double expectation(const Matrix& hermitian_op) const;
    double min_eigenvalue() const;

  private:
    Matrix mat_;
};

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Hamiltonian part (H/hbar, units of rate) plus jump operators, each already
// scaled by sqrt(rate).
struct LindbladGenerator {
    Matrix hamiltonian;
    std::vector<Matrix> jumps;

    LindbladGenerator(Matrix h, std::vector<Matrix> jump_ops);
    int dim() const { return static_cast<int>(hamiltonian.rows()); }
};

// drho/dt = -i[H,rho] + sum_L ( L rho L^dag - 1/2 {L^dag L, rho} )
Matrix lindblad_rhs(const Matrix& rho, const LindbladGenerator& gen);

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
};

// Fixed-step classical 4th-order integration of the master equation.
// Samples are validated against the DensityMatrix invariants; trace drift
// beyond kTraceDriftAbort aborts with a step-size diagnostic.
Trajectory evolve_lindblad(const DensityMatrix& rho0, const LindbladGenerator& gen,
                           double t_final, double step, long sample_every = 1);

// Dense null-space solve of the vectorized Liouvillian. Throws
// NonUniqueSteadyState when the null space is degenerate.
DensityMatrix steady_state(const LindbladGenerator& gen);

// Kraus channel application. apply_channel requires sum K^dag K = 1 within
// 1e-10; apply_kraus is the explicit opt-out for trace-decreasing maps
// (non-Hermitian evolution) and performs no completeness check.
DensityMatrix apply_channel(const DensityMatrix& rho, const std::vector<Matrix>& kraus);
Matrix apply_kraus(const Matrix& rho, const std::vector<Matrix>& kraus);

// exp(scale * m) by scaling-and-squaring with a Pade kernel.
Matrix expm(const Matrix& m, Complex scale = Complex{1.0, 0.0});

} // namespace twprobe
