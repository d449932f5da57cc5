#include "twprobe/faraday_qnd.hpp"

#include <cmath>
#include <sstream>

namespace twprobe {

FaradayConfig FaradayConfig::make(double chi, double alpha_sq, double dt) {
    FaradayConfig cfg;
    cfg.chi = chi;
    cfg.alpha_sq = alpha_sq;
    cfg.dt = dt;
    const double s = std::sin(chi);
    cfg.kappa = alpha_sq * s * s / dt;
    cfg.validate();
    return cfg;
}

void FaradayConfig::validate() const {
    if (!std::isfinite(chi)) throw ConfigError("FaradayConfig: chi must be finite");
    if (!(alpha_sq >= 0)) throw ConfigError("FaradayConfig: alpha_sq must be >= 0");
    if (!(dt > 0)) throw ConfigError("FaradayConfig: dt must be > 0");
    if (!(kappa >= 0)) throw ConfigError("FaradayConfig: kappa must be >= 0");
    // Small-angle bookkeeping: kappa*dt must agree with |alpha|^2 sin^2 chi
    // to within the chi^2/3 slack between chi^2 and sin^2 chi.
    const double s = std::sin(chi);
    const double exact = alpha_sq * s * s;
    const double kdt = kappa * dt;
    if (kdt > 0) {
        const double rel = std::abs(kdt - exact) / kdt;
        if (rel > chi * chi / 3.0 + 1e-12) {
            std::ostringstream os;
            os << "FaradayConfig: kappa*dt = " << kdt << " inconsistent with |alpha|^2 sin^2 chi = "
               << exact << " (relative " << rel << ")";
            throw ConfigError(os.str());
        }
    } else if (exact > 0) {
        throw ConfigError("FaradayConfig: kappa = 0 but |alpha|^2 sin^2 chi > 0");
    }
}

std::vector<std::string> FaradayConfig::regime_notes() const {
    std::vector<std::string> notes;
    const double per_slice = chi * chi * alpha_sq;
    if (per_slice > 1e-3) {
        std::ostringstream os;
        os << "chi^2 |alpha|^2 = " << per_slice
           << " per slice exceeds 1e-3; perturbative map truncation is above test tolerances";
        notes.push_back(os.str());
    }
    if (alpha_sq > 0.1) {
        std::ostringstream os;
        os << "|alpha|^2 = " << alpha_sq << " is not << 1; the perturbative expansion is strained";
        notes.push_back(os.str());
    }
    return notes;
}

namespace {

void require_qubit(const DensityMatrix& rho, const char* who) {
    if (rho.dim() != 2) {
        std::ostringstream os;
        os << who << ": requires a qubit state, got dimension " << rho.dim();
        throw std::invalid_argument(os.str());
    }
}

} // namespace

DensityMatrix exact_slice_map(const DensityMatrix& rho, const FaradayConfig& cfg) {
    require_qubit(rho, "exact_slice_map");
    cfg.validate();
    const double s = std::sin(cfg.chi);
    const double factor = std::exp(-2.0 * cfg.alpha_sq * s * s);
    Matrix m = rho.m();
    m(0, 1) *= factor;
    m(1, 0) *= factor;
    return DensityMatrix(std::move(m));
}

DensityMatrix perturbative_slice_map(const DensityMatrix& rho, const FaradayConfig& cfg) {
    require_qubit(rho, "perturbative_slice_map");
    cfg.validate();
    // For a qubit sin(chi sz) = sin(chi) sz and cos(chi sz) = cos(chi) 1.
    const Matrix sin_op = std::sin(cfg.chi) * sigma_z();
    const Matrix cos_op = std::cos(cfg.chi) * Matrix::Identity(2, 2);
    Matrix m = rho.m() + cfg.alpha_sq * (-rho.m() + sin_op * rho.m() * sin_op.adjoint() +
                                         cos_op * rho.m() * cos_op.adjoint());
    return DensityMatrix(std::move(m));
}

std::vector<Matrix> slice_kraus_ops(const FaradayConfig& cfg) {
    cfg.validate();
    const double s = std::sin(cfg.chi);
    const double f = std::exp(-2.0 * cfg.alpha_sq * s * s);
    return {std::sqrt(0.5 * (1.0 + f)) * Matrix::Identity(2, 2),
            std::sqrt(0.5 * (1.0 - f)) * sigma_z()};
}

LindbladGenerator build_dephasing_generator(double kappa) {
    if (!(kappa >= 0)) throw ConfigError("build_dephasing_generator: kappa must be >= 0");
    std::vector<Matrix> jumps;
    if (kappa > 0) jumps.push_back(std::sqrt(kappa) * sigma_z());
    return LindbladGenerator(Matrix::Zero(2, 2), std::move(jumps));
}

} // namespace twprobe
