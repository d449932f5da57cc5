#include "twprobe/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace twprobe {

namespace {

const Complex kI{0.0, 1.0};

void require_square(const Matrix& m, const char* who) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        std::ostringstream os;
        os << who << ": matrix must be square and non-empty, got " << m.rows() << "x" << m.cols();
        throw std::invalid_argument(os.str());
    }
}

void require_dim_cap(Eigen::Index dim, const char* who) {
    if (dim > kMaxDim) {
        std::ostringstream os;
        os << who << ": dimension " << dim << " exceeds the hard cap " << kMaxDim;
        throw std::invalid_argument(os.str());
    }
}

} // namespace

Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix sigma_plus() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1;
    return m;
}

Matrix sigma_minus() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1;
    return m;
}

Vector ket_e() {
    Vector v = Vector::Zero(2);
    v(0) = 1;
    return v;
}

Vector ket_g() {
    Vector v = Vector::Zero(2);
    v(1) = 1;
    return v;
}

Vector ket_plus() {
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return v;
}

Matrix annihilation(int n_levels) {
    if (n_levels < 1) throw std::invalid_argument("annihilation: need at least one level");
    Matrix a = Matrix::Zero(n_levels, n_levels);
    for (int n = 1; n < n_levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Vector coherent_state(Complex alpha, int n_levels) {
    if (n_levels < 1) throw std::invalid_argument("coherent_state: need at least one level");
    Vector c(n_levels);
    c(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < n_levels; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    return c;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix partial_trace_second(const Matrix& joint, int dim_first, int dim_second) {
    if (joint.rows() != static_cast<Eigen::Index>(dim_first) * dim_second || joint.rows() != joint.cols())
        throw std::invalid_argument("partial_trace_second: dimension mismatch");
    Matrix out = Matrix::Zero(dim_first, dim_first);
    for (int i = 0; i < dim_first; ++i)
        for (int j = 0; j < dim_first; ++j)
            for (int b = 0; b < dim_second; ++b)
                out(i, j) += joint(i * dim_second + b, j * dim_second + b);
    return out;
}

bool all_finite(const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(Matrix m) : mat_(std::move(m)) {
    require_square(mat_, "DensityMatrix");
    require_dim_cap(mat_.rows(), "DensityMatrix");
    if (!all_finite(mat_)) throw NumericError("DensityMatrix: non-finite entries");
    const double herm = hermiticity_defect(mat_);
    if (herm > kHermitianTol) {
        std::ostringstream os;
        os << "DensityMatrix: Hermiticity defect " << herm << " exceeds " << kHermitianTol;
        throw NumericError(os.str());
    }
    const Complex tr = mat_.trace();
    if (std::abs(tr - 1.0) > kTraceTol) {
        std::ostringstream os;
        os << "DensityMatrix: trace " << tr << " deviates from 1 by more than " << kTraceTol;
        throw NumericError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (mat_ + mat_.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kEigenvalueTol) {
        std::ostringstream os;
        os << "DensityMatrix: eigenvalue " << es.eigenvalues().minCoeff() << " below -" << kEigenvalueTol;
        throw NumericError(os.str());
    }
}

DensityMatrix DensityMatrix::pure(const Vector& ket) {
    const double n = ket.norm();
    if (n == 0.0) throw std::invalid_argument("DensityMatrix::pure: zero vector");
    Vector k = ket / n;
    return DensityMatrix(k * k.adjoint());
}

double DensityMatrix::expectation(const Matrix& hermitian_op) const {
    return (hermitian_op * mat_).trace().real();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (mat_ + mat_.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
    Matrix d = a.m() - b.m();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

LindbladGenerator::LindbladGenerator(Matrix h, std::vector<Matrix> jump_ops)
    : hamiltonian(std::move(h)), jumps(std::move(jump_ops)) {
    require_square(hamiltonian, "LindbladGenerator");
    require_dim_cap(hamiltonian.rows(), "LindbladGenerator");
    if (!all_finite(hamiltonian)) throw NumericError("LindbladGenerator: non-finite Hamiltonian");
    const double herm = hermiticity_defect(hamiltonian);
    if (herm > kHermitianTol) {
        std::ostringstream os;
        os << "LindbladGenerator: Hamiltonian Hermiticity defect " << herm;
        throw std::invalid_argument(os.str());
    }
    for (const Matrix& L : jumps) {
        require_square(L, "LindbladGenerator jump");
        if (L.rows() != hamiltonian.rows())
            throw std::invalid_argument("LindbladGenerator: jump dimension differs from Hamiltonian");
        if (!all_finite(L)) throw NumericError("LindbladGenerator: non-finite jump operator");
    }
}

Matrix lindblad_rhs(const Matrix& rho, const LindbladGenerator& gen) {
    Matrix d = -kI * (gen.hamiltonian * rho - rho * gen.hamiltonian);
    for (const Matrix& L : gen.jumps) {
        const Matrix LdL = L.adjoint() * L;
        d += L * rho * L.adjoint() - 0.5 * (LdL * rho + rho * LdL);
    }
    return d;
}

namespace {

// One classical RK4 step of the master equation.
Matrix rk4_step(const Matrix& rho, const LindbladGenerator& gen, double h) {
    const Matrix k1 = lindblad_rhs(rho, gen);
    const Matrix k2 = lindblad_rhs(rho + 0.5 * h * k1, gen);
    const Matrix k3 = lindblad_rhs(rho + 0.5 * h * k2, gen);
    const Matrix k4 = lindblad_rhs(rho + h * k3, gen);
    return rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void check_sample(const Matrix& rho, double t, double step) {
    // Physical density-matrix entries are bounded by 1; anything far beyond
    // that is a diverged integration even while the trace still cancels.
    const bool finite = all_finite(rho);
    const bool diverged = !finite || rho.cwiseAbs().maxCoeff() > 1e3;
    const double drift =
        finite ? std::abs(rho.trace() - Complex{1.0, 0.0}) : std::numeric_limits<double>::infinity();
    if (diverged || drift > kTraceDriftAbort) {
        std::ostringstream os;
        os << "evolve_lindblad: " << (diverged ? "integration diverged" : "trace drift exceeded")
           << " (|trace - 1| = " << drift << ") at t = " << t << "; step " << step
           << " is too large";
        throw NumericError(os.str());
    }
}

} // namespace

Trajectory evolve_lindblad(const DensityMatrix& rho0, const LindbladGenerator& gen,
                           double t_final, double step, long sample_every) {
    if (step <= 0) throw std::invalid_argument("evolve_lindblad: step must be positive");
    if (t_final < 0) throw std::invalid_argument("evolve_lindblad: t_final must be non-negative");
    if (sample_every < 1) throw std::invalid_argument("evolve_lindblad: sample_every must be >= 1");
    if (rho0.dim() != gen.dim()) throw std::invalid_argument("evolve_lindblad: dimension mismatch");

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(rho0);
    if (t_final == 0.0) return traj;

    // Full steps of the requested size plus one shorter final step when
    // t_final is not commensurate with the step.
    long n_full = static_cast<long>(std::floor(t_final / step + 1e-9));
    double rem = t_final - static_cast<double>(n_full) * step;
    if (rem <= step * 1e-9) rem = 0.0;

    Matrix rho = rho0.m();
    for (long k = 1; k <= n_full; ++k) {
        rho = rk4_step(rho, gen, step);
        const bool last = (k == n_full) && rem == 0.0;
        if (k % sample_every == 0 || last) {
            const double t = static_cast<double>(k) * step;
            check_sample(rho, t, step);
            if (t > traj.times.back()) {
                traj.times.push_back(t);
                traj.states.emplace_back(rho);
            }
        }
    }
    if (rem > 0.0) {
        rho = rk4_step(rho, gen, rem);
        check_sample(rho, t_final, step);
        traj.times.push_back(t_final);
        traj.states.emplace_back(rho);
    }
    return traj;
}

DensityMatrix steady_state(const LindbladGenerator& gen) {
    const int d = gen.dim();
    const int d2 = d * d;
    const Matrix id = Matrix::Identity(d, d);

    // Column-stacking convention: vec(A X B) = (B^T kron A) vec(X).
    Matrix liouvillian = -kI * (kron(id, gen.hamiltonian) - kron(gen.hamiltonian.transpose(), id));
    for (const Matrix& L : gen.jumps) {
        const Matrix LdL = L.adjoint() * L;
        liouvillian += kron(L.conjugate(), L);
        liouvillian -= 0.5 * kron(id, LdL);
        liouvillian -= 0.5 * kron(LdL.transpose(), id);
    }

    Eigen::JacobiSVD<Matrix> svd(liouvillian, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double tol = std::max(sv(0), 1.0) * 1e-10;
    int null_dim = 0;
    for (int i = 0; i < d2; ++i)
        if (sv(i) < tol) ++null_dim;
    if (null_dim != 1) {
        std::ostringstream os;
        os << "steady_state: non-unique steady state (null space dimension " << null_dim << ")";
        throw NonUniqueSteadyState(os.str());
    }

    Vector v = svd.matrixV().col(d2 - 1);
    Matrix rho = Eigen::Map<Matrix>(v.data(), d, d);
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-8) throw NumericError("steady_state: traceless null vector");
    rho /= tr;
    rho = 0.5 * (rho + rho.adjoint()).eval();

    const double residual = lindblad_rhs(rho, gen).cwiseAbs().maxCoeff();
    if (residual > 1e-10) {
        std::ostringstream os;
        os << "steady_state: residual " << residual << " exceeds 1e-10";
        throw NumericError(os.str());
    }
    return DensityMatrix(rho);
}

Matrix apply_kraus(const Matrix& rho, const std::vector<Matrix>& kraus) {
    require_square(rho, "apply_kraus");
    if (kraus.empty()) throw std::invalid_argument("apply_kraus: empty Kraus set");
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const Matrix& K : kraus) {
        if (K.rows() != rho.rows() || K.cols() != rho.cols())
            throw std::invalid_argument("apply_kraus: operator dimension mismatch");
        out += K * rho * K.adjoint();
    }
    return out;
}

DensityMatrix apply_channel(const DensityMatrix& rho, const std::vector<Matrix>& kraus) {
    if (kraus.empty()) throw std::invalid_argument("apply_channel: empty Kraus set");
    Matrix completeness = Matrix::Zero(rho.dim(), rho.dim());
    for (const Matrix& K : kraus) {
        if (K.rows() != rho.dim() || K.cols() != rho.dim())
            throw std::invalid_argument("apply_channel: operator dimension mismatch");
        completeness += K.adjoint() * K;
    }
    const double defect = (completeness - Matrix::Identity(rho.dim(), rho.dim())).cwiseAbs().maxCoeff();
    if (defect > 1e-10) {
        std::ostringstream os;
        os << "apply_channel: Kraus completeness defect " << defect
           << "; use apply_kraus for trace-decreasing maps";
        throw std::invalid_argument(os.str());
    }
    return DensityMatrix(apply_kraus(rho.m(), kraus));
}

Matrix expm(const Matrix& m, Complex scale) {
    require_square(m, "expm");
    require_dim_cap(m.rows(), "expm");
    if (!all_finite(m)) throw NumericError("expm: non-finite entries");
    return Matrix(scale * m).exp();
}

} // namespace twprobe
