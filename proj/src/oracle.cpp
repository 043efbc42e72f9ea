#include "rubin/oracle.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace rubin::oracle {

namespace {

using cplx = std::complex<double>;
using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

double coth(double x) {
    return 1.0 / std::tanh(x);
}

double im_chi(const thermo::OhmicParams& p, double w) {
    // factored difference keeps full precision across the resonance
    const double detune = (p.omega_S - w) * (p.omega_S + w);
    const cplx den =
        p.M * (detune - cplx(0.0, 1.0) * p.gamma * w * p.Gamma_D / cplx(p.Gamma_D, -w));
    return (1.0 / den).imag();
}

}  // namespace

QuadratureResult quadrature_integrals(const QuadratureIntegralSpec& spec) {
    const thermo::OhmicParams& p = spec.params;
    if (!(p.T > 0.0)) throw std::domain_error("quadrature_integrals: T must be > 0");
    if (!(p.gamma > 0.0))
        throw std::domain_error(
            "quadrature_integrals: gamma must be > 0 (the undamped spectrum is a delta line)");
    if (!(spec.rel_tol <= 1e-8) || !(spec.rel_tol > 0.0))
        throw std::domain_error("quadrature_integrals: rel_tol must be in (0, 1e-8]");

    const double auto_max = 50.0 * std::max(p.omega_S, p.Gamma_D);
    const double wmax = (spec.omega_max > 0.0) ? spec.omega_max : auto_max;
    if (wmax < auto_max)
        throw std::domain_error("quadrature_integrals: omega_max below 50*max(omega_S, Gamma_D)");

    auto fq = [&](double w) { return coth(p.hbar * w / (2.0 * p.k_B * p.T)) * im_chi(p, w); };
    auto fp = [&](double w) { return w * w * fq(w); };

    // Panel boundaries: the two frequency scales, a geometric cascade of
    // brackets around the resonance (its width shrinks linearly with gamma,
    // so the cascade keeps each panel's dynamic range bounded), and the
    // cutoff. The resonance itself stays interior to the innermost panel.
    const double gamma_eff = p.gamma * p.Gamma_D * p.Gamma_D /
                             (p.Gamma_D * p.Gamma_D + p.omega_S * p.omega_S);
    auto integrate_with_cascade = [&](double factor) {
        std::vector<double> cuts = {0.0, p.Gamma_D, wmax};
        double d = 30.0 * gamma_eff;
        if (!(d > 0.0 && d < 0.5 * p.omega_S)) cuts.push_back(p.omega_S);
        for (; d > 0.0 && d < 0.5 * p.omega_S; d *= factor) {
            cuts.push_back(p.omega_S - d);
            cuts.push_back(p.omega_S + d);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                                  [&](double c) { return c < 0.0 || c > wmax; }),
                   cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        std::pair<double, double> acc{0.0, 0.0};
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            acc.first += GK::integrate(fq, cuts[i], cuts[i + 1], 10, spec.rel_tol);
            acc.second += GK::integrate(fp, cuts[i], cuts[i + 1], 10, spec.rel_tol);
        }
        // tail, mapped to u = 1/w
        acc.first += GK::integrate([&](double u) { return fq(1.0 / u) / (u * u); }, 0.0,
                                   1.0 / wmax, 15, spec.rel_tol);
        acc.second += GK::integrate([&](double u) { return fp(1.0 / u) / (u * u); }, 0.0,
                                    1.0 / wmax, 15, spec.rel_tol);
        return acc;
    };

    // Convergence gate: agreement between two unrelated panelizations (the
    // library's own error estimate saturates far above the true error on
    // narrow resonance panels).
    const auto a = integrate_with_cascade(8.0);
    const auto b = integrate_with_cascade(5.0);
    const double gate = std::max(10.0 * spec.rel_tol, 1e-9);
    if (std::abs(a.first - b.first) > gate * std::abs(a.first) ||
        std::abs(a.second - b.second) > gate * std::abs(a.second)) {
        std::ostringstream os;
        os << "quadrature_integrals: panelizations disagree (relative "
           << std::abs(a.first - b.first) / std::abs(a.first) << ", "
           << std::abs(a.second - b.second) / std::abs(a.second) << ")";
        throw std::runtime_error(os.str());
    }

    return QuadratureResult{p.hbar / std::numbers::pi * a.first,
                            p.hbar * p.M * p.M / std::numbers::pi * a.second};
}

namespace {

// Orthonormal Hermite functions h_0..h_nmax evaluated at the points u.
Eigen::MatrixXd hermite_functions(const Eigen::VectorXd& u, int nmax) {
    const auto n_pts = u.size();
    Eigen::MatrixXd H(n_pts, nmax + 1);
    const double norm0 = std::pow(std::numbers::pi, -0.25);
    H.col(0) = (-0.5 * u.array().square()).exp() * norm0;
    if (nmax >= 1) H.col(1) = std::sqrt(2.0) * u.array() * H.col(0).array();
    for (int n = 2; n <= nmax; ++n)
        H.col(n) = std::sqrt(2.0 / n) * u.array() * H.col(n - 1).array() -
                   std::sqrt((n - 1.0) / n) * H.col(n - 2).array();
    return H;
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x(i) = -z;
        x(n - 1 - i) = z;
        w(i) = w(n - 1 - i) = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

}  // namespace

double fock_negativity(const FockOracleSpec& spec) {
    const model::ModelParams& p = spec.params;
    if (p.N != 1) throw std::domain_error("fock_negativity: requires N = 1");
    if (spec.cutoff < 20) throw std::domain_error("fock_negativity: cutoff must be >= 20");

    const model::QuadraticHamiltonian H = model::full_hamiltonian(p);
    const double hbar = p.hbar;

    // ground-state width matrix A (psi ~ exp(-x^T A x / 2 hbar)):
    // A = D^{1/2} sqrt(D^{-1/2} V D^{-1/2}) D^{1/2}
    const Eigen::Vector2d sm = H.masses.array().sqrt();
    Eigen::Matrix2d K = H.potential.array() / (sm * sm.transpose()).array();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(K);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::domain_error("fock_negativity: Hamiltonian not positive definite");
    Eigen::Matrix2d A = es.operatorSqrt();
    A = (A.array() * (sm * sm.transpose()).array()).matrix();

    // local expansion bases: (M, omega_S) and (m, omega_eff)
    const double omega_eff =
        std::sqrt((p.m * p.omega_B * p.omega_B + 2.0 * p.f()) / p.m);
    const double mus[2] = {p.M, p.m};
    const double oms[2] = {p.omega_S, omega_eff};

    const Eigen::Matrix2d Ainv = A.inverse();
    const int K1 = spec.cutoff + 1;

    Eigen::MatrixXd phi[2];
    Eigen::VectorXd xg[2], wg[2];
    for (int axis = 0; axis < 2; ++axis) {
        const double basis_scale = std::sqrt(hbar / (mus[axis] * oms[axis]));
        const double state_scale = std::sqrt(hbar * Ainv(axis, axis));
        const double L = 12.0 * std::max(basis_scale, state_scale);
        Eigen::VectorXd x1, w1;
        gauss_legendre(spec.quad_nodes, x1, w1);
        xg[axis] = L * x1;
        wg[axis] = L * w1;
        const Eigen::VectorXd u = xg[axis] / basis_scale;
        phi[axis] = hermite_functions(u, spec.cutoff) / std::sqrt(basis_scale);
    }

    // coefficient matrix C(n1, n2) = <n1 n2 | psi>
    Eigen::MatrixXd psi(spec.quad_nodes, spec.quad_nodes);
    const double norm = std::pow(A.determinant(), 0.25) / std::sqrt(std::numbers::pi * hbar);
    for (int i = 0; i < spec.quad_nodes; ++i)
        for (int j = 0; j < spec.quad_nodes; ++j) {
            const double x = xg[0](i), y = xg[1](j);
            const double quad = A(0, 0) * x * x + 2.0 * A(0, 1) * x * y + A(1, 1) * y * y;
            psi(i, j) = norm * std::exp(-quad / (2.0 * hbar)) * wg[0](i) * wg[1](j);
        }
    const Eigen::MatrixXd C = phi[0].transpose() * psi * phi[1];

    const double tail = 1.0 - C.squaredNorm();
    if (tail > 1e-8) {
        std::ostringstream os;
        os << "fock_negativity: cutoff too small, occupation tail " << tail;
        throw std::runtime_error(os.str());
    }

    // rho^{T_S}[(m1 m2), (n1 n2)] = C(n1, m2) C(m1, n2)
    Eigen::MatrixXd rho_pt(K1 * K1, K1 * K1);
    for (int m1 = 0; m1 < K1; ++m1)
        for (int m2 = 0; m2 < K1; ++m2)
            for (int n1 = 0; n1 < K1; ++n1)
                for (int n2 = 0; n2 < K1; ++n2)
                    rho_pt(m1 * K1 + m2, n1 * K1 + n2) = C(n1, m2) * C(m1, n2);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rs(rho_pt, Eigen::EigenvaluesOnly);
    double neg = 0.0;
    for (Eigen::Index i = 0; i < rs.eigenvalues().size(); ++i)
        if (rs.eigenvalues()(i) < 0.0) neg -= rs.eigenvalues()(i);
    return neg;
}

}  // namespace rubin::oracle
