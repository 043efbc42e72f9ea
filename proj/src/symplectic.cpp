#include "rubin/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace rubin::symplectic {

namespace {

// coth(x) for x > 0; x = +inf (T = 0) gives 1 exactly.
double coth(double x) {
    return 1.0 / std::tanh(x);
}

void require_symmetric(const Eigen::MatrixXd& m, const char* who) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument(std::string(who) + ": matrix not symmetric");
    }
}

}  // namespace

NormalModes::NormalModes(const QuadraticHamiltonian& H) {
    const int n = H.n_modes();
    if (n < 1) throw std::invalid_argument("NormalModes: empty Hamiltonian");
    if (H.potential.rows() != n || H.potential.cols() != n)
        throw std::invalid_argument("NormalModes: potential/mass size mismatch");
    require_symmetric(H.potential, "NormalModes");
    if ((H.masses.array() <= 0.0).any())
        throw std::invalid_argument("NormalModes: masses must be > 0");

    sqrt_mass = H.masses.array().sqrt();
    inv_sqrt_mass = sqrt_mass.cwiseInverse();

    Eigen::MatrixXd K = inv_sqrt_mass.asDiagonal() * H.potential * inv_sqrt_mass.asDiagonal();
    K = 0.5 * (K + K.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("NormalModes: eigendecomposition failed");
    if (es.eigenvalues().minCoeff() <= 0.0) {
        std::ostringstream os;
        os << "NormalModes: Hamiltonian not positive definite (min eigenvalue "
           << es.eigenvalues().minCoeff() << ")";
        throw std::invalid_argument(os.str());
    }
    omega = es.eigenvalues().array().sqrt();
    U = es.eigenvectors();
}

Eigen::MatrixXd symplectic_form(int n_modes) {
    if (n_modes < 1) throw std::invalid_argument("symplectic_form: n_modes must be >= 1");
    Eigen::MatrixXd Om = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        Om(2 * k, 2 * k + 1) = 1.0;
        Om(2 * k + 1, 2 * k) = -1.0;
    }
    return Om;
}

CovarianceMatrix thermal_covariance(const NormalModes& modes, double T,
                                    double hbar, double k_B) {
    if (!(T >= 0.0)) throw std::invalid_argument("thermal_covariance: T must be >= 0");
    const int n = modes.n_modes();

    Eigen::VectorXd occ(n);
    for (int k = 0; k < n; ++k) {
        const double w = modes.omega(k);
        const double x = (T > 0.0) ? hbar * w / (2.0 * k_B * T)
                                   : std::numeric_limits<double>::infinity();
        occ(k) = (x > 700.0) ? 1.0 : coth(x);
    }

    const Eigen::VectorXd cq = 0.5 * hbar * occ.array() / modes.omega.array();
    const Eigen::VectorXd cp = 0.5 * hbar * occ.array() * modes.omega.array();

    Eigen::MatrixXd Gx = modes.U * cq.asDiagonal() * modes.U.transpose();
    Gx = modes.inv_sqrt_mass.asDiagonal() * Gx * modes.inv_sqrt_mass.asDiagonal();
    Eigen::MatrixXd Gp = modes.U * cp.asDiagonal() * modes.U.transpose();
    Gp = modes.sqrt_mass.asDiagonal() * Gp * modes.sqrt_mass.asDiagonal();

    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            G(2 * i, 2 * j) = Gx(i, j);
            G(2 * i + 1, 2 * j + 1) = Gp(i, j);
        }
    G = 0.5 * (G + G.transpose()).eval();
    return CovarianceMatrix{std::move(G)};
}

CovarianceMatrix thermal_covariance(const QuadraticHamiltonian& H, double T,
                                    double hbar, double k_B) {
    return thermal_covariance(NormalModes(H), T, hbar, k_B);
}

CovarianceMatrix ground_state_covariance(double M, double omega_S, double hbar) {
    if (!(M > 0.0) || !(omega_S > 0.0))
        throw std::invalid_argument("ground_state_covariance: M, omega_S must be > 0");
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2, 2);
    g(0, 0) = hbar / (2.0 * M * omega_S);
    g(1, 1) = M * hbar * omega_S / 2.0;
    return CovarianceMatrix{std::move(g)};
}

CovarianceMatrix direct_sum(const CovarianceMatrix& a, const CovarianceMatrix& b) {
    const auto ra = a.data.rows(), rb = b.data.rows();
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(ra + rb, ra + rb);
    g.topLeftCorner(ra, ra) = a.data;
    g.bottomRightCorner(rb, rb) = b.data;
    return CovarianceMatrix{std::move(g)};
}

Eigen::MatrixXd symplectic_propagator(const NormalModes& modes, double t) {
    const int n = modes.n_modes();
    const Eigen::ArrayXd wt = modes.omega.array() * t;
    const Eigen::VectorXd c = wt.cos();
    const Eigen::VectorXd s = wt.sin();

    // x(t) = Mi U cos(Wt) U^T Ms x0 + Mi U W^{-1} sin(Wt) U^T Mi p0
    // p(t) = -Ms U W sin(Wt) U^T Ms x0 + Ms U cos(Wt) U^T Mi p0
    const auto& Ms = modes.sqrt_mass;
    const auto& Mi = modes.inv_sqrt_mass;
    const Eigen::MatrixXd Ucos = modes.U * c.asDiagonal() * modes.U.transpose();
    const Eigen::MatrixXd Usw =
        modes.U * (s.array() / modes.omega.array()).matrix().asDiagonal() * modes.U.transpose();
    const Eigen::MatrixXd Uws =
        modes.U * (s.array() * modes.omega.array()).matrix().asDiagonal() * modes.U.transpose();

    const Eigen::MatrixXd Sxx = Mi.asDiagonal() * Ucos * Ms.asDiagonal();
    const Eigen::MatrixXd Sxp = Mi.asDiagonal() * Usw * Mi.asDiagonal();
    const Eigen::MatrixXd Spx = -(Ms.asDiagonal() * Uws * Ms.asDiagonal());
    const Eigen::MatrixXd Spp = Ms.asDiagonal() * Ucos * Mi.asDiagonal();

    Eigen::MatrixXd S(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            S(2 * i, 2 * j) = Sxx(i, j);
            S(2 * i, 2 * j + 1) = Sxp(i, j);
            S(2 * i + 1, 2 * j) = Spx(i, j);
            S(2 * i + 1, 2 * j + 1) = Spp(i, j);
        }
    return S;
}

CovarianceMatrix evolve(const CovarianceMatrix& gamma0, const NormalModes& modes, double t) {
    if (gamma0.n_modes() != modes.n_modes())
        throw std::invalid_argument("evolve: mode count mismatch");
    if (!(t >= 0.0)) throw std::invalid_argument("evolve: t must be >= 0");
    const Eigen::MatrixXd S = symplectic_propagator(modes, t);
    Eigen::MatrixXd g = S * gamma0.data * S.transpose();
    g = 0.5 * (g + g.transpose()).eval();
    return CovarianceMatrix{std::move(g)};
}

CovarianceMatrix evolve(const CovarianceMatrix& gamma0, const QuadraticHamiltonian& H, double t) {
    return evolve(gamma0, NormalModes(H), t);
}

SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& gamma) {
    require_symmetric(gamma.data, "symplectic_eigenvalues");
    const int n = gamma.n_modes();
    const Eigen::MatrixXd A = symplectic_form(n) * gamma.data;

    Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("symplectic_eigenvalues: eigensolver failed");

    const Eigen::VectorXcd ev = es.eigenvalues();
    const double max_mod = ev.cwiseAbs().maxCoeff();

    std::vector<double> nus;
    nus.reserve(n);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev(i).real()) > 1e-6 * max_mod) {
            std::ostringstream os;
            os << "symplectic_eigenvalues: eigenvalue " << ev(i)
               << " has non-negligible real part (max modulus " << max_mod << ")";
            throw std::runtime_error(os.str());
        }
        if (ev(i).imag() > 0.0) nus.push_back(ev(i).imag());
    }
    if (static_cast<int>(nus.size()) != n)
        throw std::runtime_error("symplectic_eigenvalues: conjugate pairing failed");
    std::sort(nus.begin(), nus.end());
    return SymplecticSpectrum{std::move(nus)};
}

SymplecticSpectrum symplectic_eigenvalues_symmetric(const CovarianceMatrix& gamma) {
    require_symmetric(gamma.data, "symplectic_eigenvalues_symmetric");
    const int n = gamma.n_modes();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma.data);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument(
            "symplectic_eigenvalues_symmetric: covariance not positive definite");
    const Eigen::MatrixXd root = es.operatorSqrt();

    const std::complex<double> iunit(0.0, 1.0);
    Eigen::MatrixXcd Herm = iunit * (root * symplectic_form(n) * root);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hs(Herm, Eigen::EigenvaluesOnly);
    if (hs.info() != Eigen::Success)
        throw std::runtime_error("symplectic_eigenvalues_symmetric: eigensolver failed");

    std::vector<double> nus;
    nus.reserve(n);
    for (Eigen::Index i = 0; i < hs.eigenvalues().size(); ++i)
        if (hs.eigenvalues()(i) > 0.0) nus.push_back(hs.eigenvalues()(i));
    if (static_cast<int>(nus.size()) != n)
        throw std::runtime_error("symplectic_eigenvalues_symmetric: pairing failed");
    std::sort(nus.begin(), nus.end());
    return SymplecticSpectrum{std::move(nus)};
}

double min_symplectic_eigenvalue(const CovarianceMatrix& gamma) {
    return symplectic_eigenvalues(gamma).min();
}

CovarianceMatrix partial_transpose_system(const CovarianceMatrix& gamma) {
    if (gamma.n_modes() < 2)
        throw std::invalid_argument("partial_transpose_system: need at least 2 modes");
    CovarianceMatrix out{gamma.data};
    out.data.row(1) *= -1.0;
    out.data.col(1) *= -1.0;
    return out;
}

bool is_physical(const CovarianceMatrix& gamma, double hbar, double tol) {
    return min_symplectic_eigenvalue(gamma) >= 0.5 * hbar - tol;
}

double mean_energy(const CovarianceMatrix& gamma, const QuadraticHamiltonian& H) {
    const int n = H.n_modes();
    if (gamma.n_modes() != n) throw std::invalid_argument("mean_energy: mode count mismatch");
    double e = 0.0;
    for (int i = 0; i < n; ++i) {
        e += 0.5 * gamma.data(2 * i + 1, 2 * i + 1) / H.masses(i);
        for (int j = 0; j < n; ++j)
            e += 0.5 * H.potential(i, j) * gamma.data(2 * i, 2 * j);
    }
    return e;
}

}  // namespace rubin::symplectic
