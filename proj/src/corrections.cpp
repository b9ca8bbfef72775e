#include "robinspec/corrections.hpp"

namespace robinspec::corrections {

namespace {

std::vector<double> checked_jet(std::span<const double> jet) {
    if (jet.size() < 3) fail(ErrorCode::JetTooShort, "need at least kappa, kappa', kappa''");
    std::vector<double> j(jet.begin(), jet.end());
    double scale = std::max({1.0, std::abs(j[0]), std::abs(j[2])});
    if (std::abs(j[1]) > 1e-8 * scale) fail(ErrorCode::InvalidArgument, "kappa'(0) must vanish at the maximum");
    if (!(j[2] < 0.0)) fail(ErrorCode::DegenerateMaximum, "kappa''(0) must be negative");
    j[1] = 0.0;
    return j;
}

}  // namespace

CorrectionResult compute_corrections(std::span<const double> kappa_jet, int n, int M, bool exact) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "level index starts at 1");
    auto jet = checked_jet(kappa_jet);
    CorrectionResult res;
    res.n = n;
    res.M = M;
    res.exact = exact;
    res.omega = std::sqrt(-jet[2] / 2.0);
    if (!exact) {
        auto ops = build_operator_series<double>(jet, M);
        auto f = basis::HermiteVector::ground(res.omega, n);
        auto st = run_iteration(ops, f, n, M);
        res.zeta = st.zeta;
        res.m = st.m;
        return res;
    }
    std::vector<QuadRational> qjet;
    for (double v : jet) qjet.emplace_back(rationalize(v));
    mpq_class d = -qjet[2].a() / 2;
    QuadRational::Field field(d);
    QuadRational om = QuadRational::omega();
    auto ops = build_operator_series<QuadRational>(qjet, M);
    auto f = basis::GaussPoly<QuadRational>::ground(om, n);
    auto st = run_iteration(ops, f, n, M);
    for (const auto& z : st.zeta) {
        res.zeta.push_back(z.to_double());
        res.zeta_exact.push_back(z.str());
        res.zeta_zero.push_back(z.is_zero());
    }
    for (const auto& z : st.m) res.m.push_back(z.to_double());
    return res;
}

}  // namespace robinspec::corrections
